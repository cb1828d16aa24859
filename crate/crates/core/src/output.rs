//! Serialization of arrangement graphs and presentations: JSON (with a
//! reader for round trips), DOT and SVG.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, ArrangementGraph, ChamberLabel, Edge, RestrictedHyperplane};
use crate::coxeter::CoxeterSystem;
use crate::diagram::{CoxeterDiagram, NodeSet};
use crate::garside::{ArtinElement, GarsideElement};
use crate::presentation::{GroupPresentation, GroupoidPresentation, PresentationKind};
use crate::{Error, Result};

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct ChamberJson {
    pub x: Vec<String>,
    #[serde(rename = "I")]
    pub i: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct EdgeJson {
    pub from: usize,
    pub a: String,
    pub to: usize,
    pub v: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct BoundaryJson {
    pub chamber: usize,
    pub a: String,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct HyperplaneJson {
    /// Coefficients on the simple roots outside `J`, first nonzero one 1.
    pub normal: Vec<String>,
    /// Number of positive J-roots cutting the hyperplane; absent for a ball.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub multiplicity: Option<usize>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct GraphJson {
    pub diagram: serde_json::Value,
    #[serde(rename = "J")]
    pub j: Vec<String>,
    pub radius: Option<usize>,
    pub saturated: bool,
    pub chambers: Vec<ChamberJson>,
    pub edges: Vec<EdgeJson>,
    pub boundary: Vec<BoundaryJson>,
    pub hyperplanes: Vec<HyperplaneJson>,
}

fn word_names(d: &CoxeterDiagram, word: &[usize]) -> Vec<String> {
    word.iter().map(|&i| d.name(i).to_string()).collect()
}

fn parse_word(d: &CoxeterDiagram, names: &[String]) -> Result<Vec<usize>> {
    names
        .iter()
        .map(|n| {
            d.index_of(n)
                .ok_or_else(|| Error::Parse(format!("unknown node {n:?}")))
        })
        .collect()
}

fn parse_set(d: &CoxeterDiagram, names: &[String]) -> Result<NodeSet> {
    Ok(parse_word(d, names)?.into_iter().collect())
}

/// Hyperplanes for output: the full `ℋ_J` with multiplicities in finite
/// type, the walls met by the ball otherwise.
pub fn graph_hyperplanes(
    arr: &Arrangement<'_>,
    graph: &ArrangementGraph,
) -> Result<Vec<(RestrictedHyperplane, Option<usize>)>> {
    if arr.system().is_finite_type() {
        Ok(arr
            .hyperplanes()?
            .into_iter()
            .map(|(h, m)| (h, Some(m)))
            .collect())
    } else {
        Ok(arr
            .hyperplanes_of_graph(graph)?
            .into_iter()
            .map(|h| (h, None))
            .collect())
    }
}

pub fn graph_to_json(arr: &Arrangement<'_>, graph: &ArrangementGraph) -> Result<GraphJson> {
    let d = arr.system().diagram();
    let outside: Vec<usize> = d.all_nodes().difference(graph.j).iter().collect();
    let hyperplanes = graph_hyperplanes(arr, graph)?
        .into_iter()
        .map(|(h, multiplicity)| HyperplaneJson {
            normal: outside
                .iter()
                .map(|&k| h.functional().coords()[k].to_string())
                .collect(),
            multiplicity,
        })
        .collect();
    Ok(GraphJson {
        diagram: serde_json::from_str(&d.to_json()).map_err(|e| Error::Internal(e.to_string()))?,
        j: d.node_names(graph.j),
        radius: graph.radius,
        saturated: graph.saturated,
        chambers: graph
            .chambers
            .iter()
            .map(|c| ChamberJson {
                x: word_names(d, c.x.word()),
                i: d.node_names(c.i),
            })
            .collect(),
        edges: graph
            .edges
            .iter()
            .map(|e| EdgeJson {
                from: e.from,
                a: d.name(e.node).to_string(),
                to: e.to,
                v: word_names(d, e.element.word()),
            })
            .collect(),
        boundary: graph
            .boundary
            .iter()
            .map(|&(c, a)| BoundaryJson {
                chamber: c,
                a: d.name(a).to_string(),
            })
            .collect(),
        hyperplanes,
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Reads a graph file, returning the diagram it was computed for and the
/// graph. Labels and crossing elements are taken as given; `verify` checks
/// them.
pub fn graph_from_json(text: &str) -> Result<(CoxeterSystem, ArrangementGraph)> {
    let file: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let diagram = CoxeterDiagram::from_json(&file.diagram.to_string())?;
    let system = CoxeterSystem::new(diagram);
    let graph = graph_from_parts(&system, &file)?;
    Ok((system, graph))
}

pub fn graph_from_parts(system: &CoxeterSystem, file: &GraphJson) -> Result<ArrangementGraph> {
    let d = system.diagram();
    let j = parse_set(d, &file.j)?;
    let chambers = file
        .chambers
        .iter()
        .map(|c| {
            Ok(ChamberLabel::new(
                system.from_word(&parse_word(d, &c.x)?),
                parse_set(d, &c.i)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let n = chambers.len();
    let in_range = |k: usize| {
        if k < n {
            Ok(k)
        } else {
            Err(Error::Parse(format!("chamber index {k} out of range")))
        }
    };
    let node = |name: &str| {
        d.index_of(name)
            .ok_or_else(|| Error::Parse(format!("unknown node {name:?}")))
    };
    let edges = file
        .edges
        .iter()
        .map(|e| {
            Ok(Edge {
                from: in_range(e.from)?,
                node: node(&e.a)?,
                to: in_range(e.to)?,
                element: system.from_word(&parse_word(d, &e.v)?),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let boundary = file
        .boundary
        .iter()
        .map(|b| Ok((in_range(b.chamber)?, node(&b.a)?)))
        .collect::<Result<Vec<_>>>()?;
    ArrangementGraph::from_parts(j, chambers, edges, boundary, file.radius, file.saturated)
}

fn chamber_text(d: &CoxeterDiagram, c: &ChamberLabel) -> String {
    format!("{} | {}", d.format_word(c.x.word()), d.format_set(c.i))
}

/// Undirected adjacency graph; each crossing pair appears once, boundary
/// walls as dashed stubs.
pub fn graph_to_dot(arr: &Arrangement<'_>, graph: &ArrangementGraph) -> String {
    let d = arr.system().diagram();
    let mut s = String::new();
    let _ = writeln!(s, "graph chambers {{");
    let _ = writeln!(s, "  node [shape=box, fontname=\"monospace\"];");
    for (k, c) in graph.chambers.iter().enumerate() {
        let _ = writeln!(s, "  c{k} [label=\"{}\"];", chamber_text(d, c));
    }
    for e in &graph.edges {
        let back = graph
            .edges_from(e.to)
            .find(|f| f.to == e.from)
            .map(|f| (f.to, f.node));
        // Emit each pair once, from the smaller endpoint.
        if e.from > e.to || (e.from == e.to && back.is_some_and(|(_, n)| n < e.node)) {
            continue;
        }
        let _ = writeln!(
            s,
            "  c{} -- c{} [label=\"{}: {}\"];",
            e.from,
            e.to,
            d.name(e.node),
            d.format_word(e.element.word())
        );
    }
    for &(c, a) in &graph.boundary {
        let name = d.name(a);
        let _ = writeln!(s, "  w{c}_{name} [shape=point, label=\"\"];");
        let _ = writeln!(
            s,
            "  c{c} -- w{c}_{name} [style=dashed, label=\"{name}: boundary\"];"
        );
    }
    let _ = writeln!(s, "}}");
    s
}

/// The SVG picture of a two-dimensional `Θ_J` in the coordinates
/// `(φ(α_p), φ(α_q))` for the two nodes `p < q` outside `J`.
pub fn graph_to_svg(arr: &Arrangement<'_>, graph: &ArrangementGraph) -> Result<String> {
    if arr.dimension() != 2 {
        return Err(Error::Precondition(format!(
            "the picture needs dim Θ_J = 2, found {}",
            arr.dimension()
        )));
    }
    let d = arr.system().diagram();
    let outside: Vec<usize> = d.all_nodes().difference(graph.j).iter().collect();
    let (p, q) = (outside[0], outside[1]);
    const SIZE: f64 = 400.0;
    const R: f64 = 180.0;
    let centre = SIZE / 2.0;
    let screen = |x: f64, y: f64| (centre + R * x, centre - R * y);
    let round = |v: f64| (v * 1e6).round() / 1e6;
    let unit = |x: f64, y: f64| {
        let n = round((x * x + y * y).sqrt());
        (round(x / n), round(y / n))
    };
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    let _ = writeln!(
        s,
        "  <circle cx=\"{centre}\" cy=\"{centre}\" r=\"{R}\" fill=\"none\" stroke=\"#bbbbbb\"/>"
    );
    // Chamber sectors, shaded.
    let _ = writeln!(s, "  <g fill=\"#dde8f4\" stroke=\"none\">");
    let mut labels = Vec::new();
    for c in &graph.chambers {
        let phi = arr.sample_point(c)?;
        let (px, py) = (phi.coords()[p].approximate(), phi.coords()[q].approximate());
        let walls: Vec<(f64, f64)> = d
            .all_nodes()
            .difference(c.i)
            .iter()
            .map(|a| {
                let h = arr.wall(c, a)?;
                let f = h.functional().coords();
                Ok((f[p].approximate(), f[q].approximate()))
            })
            .collect::<Result<_>>()?;
        let mut rays = Vec::new();
        for (k, &(fx, fy)) in walls.iter().enumerate() {
            let (gx, gy) = walls[1 - k];
            let (mut dx, mut dy) = (-fy, fx);
            let sign = (gx * px + gy * py).signum();
            if (gx * dx + gy * dy).signum() != sign {
                dx = -dx;
                dy = -dy;
            }
            rays.push(unit(dx, dy));
        }
        let (a, b) = (rays[0], rays[1]);
        let (ax, ay) = screen(a.0, a.1);
        let (bx, by) = screen(b.0, b.1);
        // Screen y points down, so a positive cross product turns clockwise.
        let cross = (ax - centre) * (by - centre) - (ay - centre) * (bx - centre);
        let sweep = u8::from(cross > 0.0);
        let _ = writeln!(
            s,
            "    <path d=\"M {centre:.3} {centre:.3} L {ax:.3} {ay:.3} A {R} {R} 0 0 {sweep} {bx:.3} {by:.3} Z\"/>"
        );
        let (ux, uy) = unit(px, py);
        let (lx, ly) = screen(0.72 * ux, 0.72 * uy);
        labels.push((lx, ly, chamber_text(d, c)));
    }
    let _ = writeln!(s, "  </g>");
    let _ = writeln!(s, "  <g stroke=\"#333333\" stroke-width=\"1.2\">");
    for (h, _) in graph_hyperplanes(arr, graph)? {
        let f = h.functional().coords();
        let (dx, dy) = unit(-f[q].approximate(), f[p].approximate());
        let (x1, y1) = screen(dx, dy);
        let (x2, y2) = screen(-dx, -dy);
        let _ = writeln!(
            s,
            "    <line x1=\"{x1:.3}\" y1=\"{y1:.3}\" x2=\"{x2:.3}\" y2=\"{y2:.3}\"/>"
        );
    }
    let _ = writeln!(s, "  </g>");
    let _ = writeln!(
        s,
        "  <g font-family=\"monospace\" font-size=\"10\" text-anchor=\"middle\">"
    );
    for (x, y, text) in labels {
        let _ = writeln!(s, "    <text x=\"{x:.3}\" y=\"{y:.3}\">{text}</text>");
    }
    let _ = writeln!(s, "  </g>");
    let _ = writeln!(s, "</svg>");
    Ok(s)
}

#[derive(Debug, Serialize)]
pub struct GroupoidGeneratorJson {
    pub label: String,
    pub source: usize,
    pub target: usize,
    pub a: String,
    /// One canonical word for a Coxeter payload, the Garside factors for an
    /// Artin payload.
    pub payload: Vec<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct GroupoidJson {
    pub kind: PresentationKind,
    pub objects: Vec<Vec<String>>,
    pub base: usize,
    pub generators: Vec<GroupoidGeneratorJson>,
    /// Relations as pairs of generator-label lists.
    pub relations: Vec<(Vec<String>, Vec<String>)>,
}

#[derive(Debug, Serialize)]
pub struct GroupJson {
    pub generators: Vec<String>,
    /// Each generator as a loop of groupoid generators, `x^-1` for inverses.
    pub loops: Vec<String>,
    pub relators: Vec<String>,
}

pub fn groupoid_to_json(d: &CoxeterDiagram, p: &GroupoidPresentation) -> GroupoidJson {
    let label = |k: &usize| p.generators[*k].label.clone();
    GroupoidJson {
        kind: p.kind,
        objects: p.objects.iter().map(|&o| d.node_names(o)).collect(),
        base: p.base,
        generators: p
            .generators
            .iter()
            .map(|g| GroupoidGeneratorJson {
                label: g.label.clone(),
                source: g.source,
                target: g.target,
                a: d.name(g.node).to_string(),
                payload: g.payload.iter().map(|w| word_names(d, w)).collect(),
            })
            .collect(),
        relations: p
            .relations
            .iter()
            .map(|(l, r)| (l.iter().map(label).collect(), r.iter().map(label).collect()))
            .collect(),
    }
}

/// A vertex-group presentation, its generators named `t1, t2, …`.
pub fn group_to_json(
    groupoid: &GroupoidPresentation,
    group: &GroupPresentation,
    loops: &[Vec<i32>],
) -> GroupJson {
    let labels = GroupPresentation {
        generators: groupoid.generators.iter().map(|g| g.label.clone()).collect(),
        relators: Vec::new(),
    };
    GroupJson {
        generators: group.generators.clone(),
        loops: loops.iter().map(|l| labels.word_string(l)).collect(),
        relators: group.relator_strings(),
    }
}

/// Garside factors as lists of node names.
pub fn garside_to_json(d: &CoxeterDiagram, x: &GarsideElement) -> Vec<Vec<String>> {
    x.factor_words().iter().map(|w| word_names(d, w)).collect()
}

#[derive(Debug, Serialize)]
pub struct ArtinJson {
    pub delta_power: i64,
    pub factors: Vec<Vec<String>>,
}

pub fn artin_to_json(d: &CoxeterDiagram, x: &ArtinElement) -> ArtinJson {
    ArtinJson {
        delta_power: x.delta_power(),
        factors: garside_to_json(d, x.positive_part()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::catalogue;

    fn set(v: &[usize]) -> NodeSet {
        v.iter().copied().collect()
    }

    #[test]
    fn json_round_trip_is_stable() {
        for (d, j, r) in [
            (catalogue::a(3), set(&[1]), None),
            (catalogue::b(3), NodeSet::EMPTY, None),
            (catalogue::affine_a2(), set(&[0]), Some(3)),
        ] {
            let w = CoxeterSystem::new(d);
            let arr = Arrangement::new(&w, j).unwrap();
            let g = arr.enumerate(r).unwrap();
            let text = to_json_string(&graph_to_json(&arr, &g).unwrap()).unwrap();
            let (w2, g2) = graph_from_json(&text).unwrap();
            assert_eq!(g2.chambers, g.chambers);
            let arr2 = Arrangement::new(&w2, j).unwrap();
            let again = to_json_string(&graph_to_json(&arr2, &g2).unwrap()).unwrap();
            assert_eq!(again, text);
        }
    }

    #[test]
    fn svg_of_a3_mod_2_has_three_lines_and_six_sectors() {
        let w = CoxeterSystem::new(catalogue::a(3));
        let arr = Arrangement::new(&w, set(&[1])).unwrap();
        let g = arr.enumerate(None).unwrap();
        let svg = graph_to_svg(&arr, &g).unwrap();
        assert_eq!(svg.matches("<line").count(), 3);
        assert_eq!(svg.matches("<path").count(), 6);
        assert_eq!(svg.matches("<text").count(), 6);
    }

    #[test]
    fn svg_rejects_other_dimensions() {
        let w = CoxeterSystem::new(catalogue::a(3));
        let arr = Arrangement::new(&w, NodeSet::EMPTY).unwrap();
        let g = arr.enumerate(None).unwrap();
        assert!(graph_to_svg(&arr, &g).is_err());
    }

    #[test]
    fn dot_marks_boundary_walls() {
        let w = CoxeterSystem::new(catalogue::affine_a2());
        let arr = Arrangement::new(&w, set(&[0])).unwrap();
        let g = arr.enumerate(Some(2)).unwrap();
        let dot = graph_to_dot(&arr, &g);
        assert_eq!(dot.matches("boundary").count(), g.boundary.len());
        let pairs = g.edges.len() / 2;
        assert!(dot.matches(" -- c").count() >= pairs);
    }
}
