//! The reduced ribbon groupoid of a finite-type Artin monoid: generators
//! `μ_{a,I} = Δ_I⁻¹Δ_{I+a}`, lcm-completion relations, the map `π̄` to the
//! Brink–Howlett groupoid and the kernel `N(P,J)`.

use std::collections::HashMap;

use crate::arrangement::{Arrangement, ArrangementGraph};
use crate::coxeter::GroupElement;
use crate::diagram::NodeSet;
use crate::garside::{ArtinElement, Garside, GarsideElement};
use crate::groupoid::{all_rank_two_lcms, generator_index, groupoid_generators, objects_of, RankTwoLcm, Step};
use crate::paths::{chambers_along, Path};
use crate::presentation::{
    decode, reidemeister_schreier, GroupPresentation, GroupoidPresentation, Letter,
    PresentationKind, VertexGroup,
};
use crate::{Error, Result};

/// `μ_{a,I}` as the positive lift of `v_{a,I}`, checked against the left
/// quotient of `Δ_{I+a}` by `Δ_I`.
pub fn mu(arr: &Arrangement<'_>, garside: &Garside<'_>, i: NodeSet, a: usize) -> Result<GarsideElement> {
    let (_, v) = arr
        .crossing(i, a)?
        .ok_or_else(|| Error::Internal("finite type has no boundary walls".into()))?;
    let lift = garside.positive_lift(&v);
    let quotient = garside
        .left_quotient(&garside.delta(i)?, &garside.delta(i.with(a))?)?
        .ok_or_else(|| Error::Internal("Δ_I does not left-divide Δ_{I+a}".into()))?;
    if quotient != lift {
        return Err(Error::Internal(format!(
            "μ at ({i:?}, {a}) differs from the lift of v_(a,I)"
        )));
    }
    Ok(lift)
}

/// The ribbon groupoid presentation with the Garside payload of each
/// generator and the `W`-element it maps to.
#[derive(Clone, Debug)]
pub struct RibbonPresentation {
    pub groupoid: GroupoidPresentation,
    pub mus: Vec<GarsideElement>,
    pub images: Vec<GroupElement>,
    pub lcms: Vec<RankTwoLcm>,
}

fn product_along(garside: &Garside<'_>, mus: &[GarsideElement], path: &[usize]) -> GarsideElement {
    garside.product(path.iter().map(|&k| &mus[k]))
}

/// Generators `μ_{a,I}` over all associates, and for each `(I, {a,b})` the
/// lifts of the two standard expressions of `v_{a,b,I}` as a relation. No
/// involution relations are imposed.
pub fn ribbon_presentation(
    arr: &Arrangement<'_>,
    garside: &Garside<'_>,
    graph: &ArrangementGraph,
) -> Result<RibbonPresentation> {
    let objects = objects_of(graph);
    let mut generators = Vec::new();
    let mut mus = Vec::new();
    let mut images = Vec::new();
    for (mut g, v) in groupoid_generators(arr, &objects, "mu")? {
        let m = mu(arr, garside, objects[g.source], g.node)?;
        g.payload = m.factor_words();
        generators.push(g);
        mus.push(m);
        images.push(v);
    }
    let lcms = all_rank_two_lcms(arr, &objects)?;
    let side = |steps: &[Step]| -> Result<Vec<usize>> {
        steps
            .iter()
            .map(|s| generator_index(&generators, &objects, s))
            .collect()
    };
    let mut relations = Vec::new();
    for l in &lcms {
        let (lhs, rhs) = (side(&l.first)?, side(&l.second)?);
        let (x, y) = (product_along(garside, &mus, &lhs), product_along(garside, &mus, &rhs));
        if x != y {
            return Err(Error::Internal(format!(
                "lcm expressions at ({:?}, {}, {}) differ in the monoid",
                l.source, l.a, l.b
            )));
        }
        relations.push((lhs, rhs));
    }
    let groupoid = GroupoidPresentation {
        kind: PresentationKind::Artin,
        objects,
        base: 0,
        generators,
        relations,
    };
    groupoid.validate()?;
    Ok(RibbonPresentation {
        groupoid,
        mus,
        images,
        lcms,
    })
}

/// Evaluates a signed groupoid word in `W`.
pub fn evaluate_in_w(arr: &Arrangement<'_>, images: &[GroupElement], word: &[Letter]) -> GroupElement {
    let w = arr.system();
    word.iter().fold(w.identity(), |acc, &l| {
        let (g, inv) = decode(l);
        if inv {
            w.mul(&acc, &w.inverse(&images[g]))
        } else {
            w.mul(&acc, &images[g])
        }
    })
}

/// Evaluates a signed groupoid word in the Artin group.
pub fn evaluate_in_a(garside: &Garside<'_>, mus: &[GarsideElement], word: &[Letter]) -> ArtinElement {
    word.iter().fold(garside.group_identity(), |acc, &l| {
        let (g, inv) = decode(l);
        let x = garside.from_positive(&mus[g]);
        let x = if inv { garside.group_inverse(&x) } else { x };
        garside.group_mul(&acc, &x)
    })
}

/// `π̄` on generators is `μ_{a,I} ↦ v_{a,I}`; checks that every ribbon
/// relation holds in `W` after applying it.
pub fn pi_bar_check(arr: &Arrangement<'_>, ribbon: &RibbonPresentation) -> Result<()> {
    let w = arr.system();
    for (lhs, rhs) in &ribbon.groupoid.relations {
        let eval = |p: &[usize]| w.product(p.iter().map(|&k| &ribbon.images[k]));
        if eval(lhs) != eval(rhs) {
            return Err(Error::Internal("a ribbon relation fails in W".into()));
        }
    }
    Ok(())
}

/// `N(P,J)` by Reidemeister–Schreier over `π̄⁻¹(1)` in the vertex group of
/// the ribbon groupoid.
#[derive(Clone, Debug)]
pub struct KernelPresentation {
    pub vertex_group: VertexGroup,
    /// `N_J` in shortlex order; coset `c` is `N_J[c]`.
    pub quotient: Vec<GroupElement>,
    /// `π̄` of each vertex-group generator.
    pub generator_images: Vec<GroupElement>,
    pub presentation: GroupPresentation,
    /// Kernel generators as Artin group elements.
    pub generators: Vec<ArtinElement>,
    /// Transversal words (in vertex-group generators) and their images.
    pub transversal: Vec<Vec<Letter>>,
}

pub fn kernel_presentation(
    arr: &Arrangement<'_>,
    garside: &Garside<'_>,
    ribbon: &RibbonPresentation,
    group_limit: usize,
) -> Result<KernelPresentation> {
    let w = arr.system();
    let vertex_group = ribbon.groupoid.vertex_group()?;
    let quotient = arr.normaliser_quotient(group_limit)?;
    let index: HashMap<GroupElement, usize> = quotient
        .iter()
        .enumerate()
        .map(|(k, x)| (x.clone(), k))
        .collect();
    let generator_images: Vec<GroupElement> = vertex_group
        .loops
        .iter()
        .map(|l| evaluate_in_w(arr, &ribbon.images, l))
        .collect();
    let action: Vec<Vec<usize>> = quotient
        .iter()
        .map(|c| {
            generator_images
                .iter()
                .map(|g| {
                    index.get(&w.mul(c, g)).copied().ok_or_else(|| {
                        Error::Internal("a loop image does not permute the J-simples".into())
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let sub = reidemeister_schreier(&vertex_group.presentation, &action)?;
    let loop_values: Vec<ArtinElement> = vertex_group
        .loops
        .iter()
        .map(|l| evaluate_in_a(garside, &ribbon.mus, l))
        .collect();
    let generators: Vec<ArtinElement> = sub
        .words
        .iter()
        .map(|word| {
            word.iter().fold(garside.group_identity(), |acc, &l| {
                let (g, inv) = decode(l);
                let x = if inv {
                    garside.group_inverse(&loop_values[g])
                } else {
                    loop_values[g].clone()
                };
                garside.group_mul(&acc, &x)
            })
        })
        .collect();
    for g in &generators {
        if !garside.group_pi(g).is_identity() {
            return Err(Error::Internal(format!("kernel generator {g:?} is not pure")));
        }
    }
    Ok(KernelPresentation {
        vertex_group,
        quotient,
        generator_images,
        presentation: sub.presentation,
        generators,
        transversal: sub.transversal,
    })
}

/// `𝒢(p)`: the product of the `μ` payloads along a positive path.
pub fn functor_g(
    arr: &Arrangement<'_>,
    garside: &Garside<'_>,
    graph: &ArrangementGraph,
    path: &Path,
) -> Result<GarsideElement> {
    let along = chambers_along(graph, path)?;
    let mut acc = garside.identity();
    for (k, &a) in path.nodes.iter().enumerate() {
        let m = mu(arr, garside, graph.chambers[along[k]].i, a)?;
        acc = garside.mul(&acc, &m);
    }
    Ok(acc)
}
