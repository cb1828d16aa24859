//! `titscone`: chambers, presentations, verification reports and pictures
//! for Tits cone intersections.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use titscone_core::diagram::catalogue;
use titscone_core::garside::Garside;
use titscone_core::groupoid::bh_presentation;
use titscone_core::output::{
    artin_to_json, graph_from_json, graph_to_dot, graph_to_json, graph_to_svg, group_to_json,
    groupoid_to_json, to_json_string,
};
use titscone_core::ribbon::{kernel_presentation, pi_bar_check, ribbon_presentation};
use titscone_core::verify::{verify, Suite, VerifyConfig};
use titscone_core::{Arrangement, ArrangementGraph, CoxeterDiagram, CoxeterSystem, Error};

#[derive(Parser)]
#[command(name = "titscone", version, about = "Chambers and normaliser groupoids of Tits cone intersections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the chambers of Cone(J) and their wall crossings.
    Chambers {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Presentations of N(W,J), N(A,J) or the pure kernel N(P,J).
    Presentation {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Target::Coxeter)]
        target: Target,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the invariant suites; exits with 1 if any check fails.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Check a chamber graph previously written by `chambers` instead
        /// of enumerating one.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a two-dimensional Cone(J) as SVG.
    Svg {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Input {
    /// Diagram JSON file, or a catalogue name such as `A3`, `B3`, `H4`,
    /// `I2(5)`, `~A2`.
    #[arg(long)]
    diagram: Option<String>,
    /// Comma-separated node names.
    #[arg(long = "J", default_value = "")]
    j: String,
    /// Wall-crossing radius; required unless the diagram is of finite type.
    #[arg(long)]
    radius: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Svg,
    Gap,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Coxeter,
    Artin,
    Kernel,
}

/// Bad input: unreadable files, malformed diagrams, unknown nodes.
#[derive(Debug)]
struct Validation(String);

impl std::fmt::Display for Validation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Validation {}

/// `dim Θ_J ≠ 2` for the picture.
#[derive(Debug)]
struct WrongDimension(usize);

impl std::fmt::Display for WrongDimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "the picture needs dim Θ_J = 2, found {}", self.0)
    }
}

impl std::error::Error for WrongDimension {}

/// Report written but some check failed.
#[derive(Debug)]
struct ChecksFailed;

impl std::fmt::Display for ChecksFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("some checks failed")
    }
}

impl std::error::Error for ChecksFailed {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<ChecksFailed>().is_some() {
        return 1;
    }
    if err.downcast_ref::<Validation>().is_some() {
        return 2;
    }
    if err.downcast_ref::<WrongDimension>().is_some() {
        return 5;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::Parse(_) | Error::InvalidDiagram(_) | Error::InvalidNodes(_)) => 2,
        Some(Error::RadiusRequired) => 3,
        Some(Error::NotFiniteType) => 4,
        _ => 1,
    }
}

fn load_diagram(spec: Option<&str>) -> Result<CoxeterDiagram> {
    let spec = spec.ok_or_else(|| Validation("--diagram is required".into()))?;
    let path = std::path::Path::new(spec);
    if path.exists() {
        let text = fs::read_to_string(path)
            .map_err(|e| Validation(format!("cannot read {spec}: {e}")))?;
        return Ok(CoxeterDiagram::from_json(&text)?);
    }
    catalogue::by_name(spec)
        .ok_or_else(|| Validation(format!("{spec} is neither a file nor a known diagram")).into())
}

fn write_output(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn enumerate(arr: &Arrangement<'_>, radius: Option<usize>) -> Result<ArrangementGraph> {
    Ok(arr.enumerate(radius)?)
}

fn chambers(input: &Input, format: Format, out: Option<&PathBuf>) -> Result<()> {
    let w = CoxeterSystem::new(load_diagram(input.diagram.as_deref())?);
    let j = w.diagram().parse_node_set(&input.j)?;
    let arr = Arrangement::new(&w, j)?;
    if format == Format::Svg {
        return svg(input, out);
    }
    let graph = enumerate(&arr, input.radius)?;
    let text = match format {
        Format::Json => to_json_string(&graph_to_json(&arr, &graph)?)?,
        Format::Dot => graph_to_dot(&arr, &graph),
        _ => bail!(Validation("chambers supports --format json, dot or svg".into())),
    };
    write_output(out, &text)
}

fn presentation(input: &Input, target: Target, format: Format, out: Option<&PathBuf>) -> Result<()> {
    let w = CoxeterSystem::new(load_diagram(input.diagram.as_deref())?);
    let d = w.diagram();
    let j = d.parse_node_set(&input.j)?;
    if !matches!(format, Format::Json | Format::Gap) {
        bail!(Validation("presentation supports --format json or gap".into()));
    }
    if target != Target::Coxeter && !w.is_finite_type() {
        return Err(Error::NotFiniteType.into());
    }
    let arr = Arrangement::new(&w, j)?;
    let graph = enumerate(&arr, input.radius)?;
    let text = match target {
        Target::Coxeter => {
            let p = bh_presentation(&arr, &graph)?;
            let vg = p.vertex_group()?;
            match format {
                Format::Gap => vg.presentation.to_gap(),
                _ => to_json_string(&json!({
                    "groupoid": groupoid_to_json(d, &p),
                    "vertex_group": group_to_json(&p, &vg.presentation, &vg.loops),
                }))?,
            }
        }
        Target::Artin | Target::Kernel => {
            let garside = Garside::new(&w)?;
            let ribbon = ribbon_presentation(&arr, &garside, &graph)?;
            pi_bar_check(&arr, &ribbon)?;
            let vg = ribbon.groupoid.vertex_group()?;
            if target == Target::Artin {
                match format {
                    Format::Gap => vg.presentation.to_gap(),
                    _ => to_json_string(&json!({
                        "groupoid": groupoid_to_json(d, &ribbon.groupoid),
                        "vertex_group": group_to_json(&ribbon.groupoid, &vg.presentation, &vg.loops),
                    }))?,
                }
            } else {
                let k = kernel_presentation(&arr, &garside, &ribbon, 1_000_000)?;
                match format {
                    Format::Gap => k.presentation.to_gap(),
                    _ => to_json_string(&json!({
                        "vertex_group": group_to_json(&ribbon.groupoid, &vg.presentation, &vg.loops),
                        "quotient_order": k.quotient.len(),
                        "kernel": {
                            "generators": k.presentation.generators,
                            "relators": k.presentation.relator_strings(),
                            "elements": k.generators.iter().map(|g| artin_to_json(d, g)).collect::<Vec<_>>(),
                        },
                    }))?,
                }
            }
        }
    };
    write_output(out, &text)
}

fn verify_cmd(
    input: &Input,
    suite: &str,
    seed: u64,
    graph: Option<&PathBuf>,
    out: Option<&PathBuf>,
) -> Result<()> {
    let suite: Suite = suite.parse()?;
    let config = VerifyConfig {
        suite,
        seed,
        ..VerifyConfig::default()
    };
    let report = match graph {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Validation(format!("cannot read {}: {e}", path.display())))?;
            let (w, g) = graph_from_json(&text)?;
            let arr = Arrangement::new(&w, g.j)?;
            verify(&arr, &g, &config)
        }
        None => {
            let w = CoxeterSystem::new(load_diagram(input.diagram.as_deref())?);
            let j = w.diagram().parse_node_set(&input.j)?;
            let arr = Arrangement::new(&w, j)?;
            let g = enumerate(&arr, input.radius)?;
            verify(&arr, &g, &config)
        }
    };
    write_output(out, &to_json_string(&report)?)?;
    if !report.passed {
        return Err(ChecksFailed.into());
    }
    Ok(())
}

fn svg(input: &Input, out: Option<&PathBuf>) -> Result<()> {
    let w = CoxeterSystem::new(load_diagram(input.diagram.as_deref())?);
    let j = w.diagram().parse_node_set(&input.j)?;
    let arr = Arrangement::new(&w, j)?;
    if arr.dimension() != 2 {
        return Err(WrongDimension(arr.dimension()).into());
    }
    let graph = enumerate(&arr, input.radius)?;
    write_output(out, &graph_to_svg(&arr, &graph)?)
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("TITSCONE_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| Validation(format!("TITSCONE_THREADS={v} is not a number")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the thread pool")?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    configure_threads()?;
    match &cli.command {
        Command::Chambers { input, format, out } => chambers(input, *format, out.as_ref()),
        Command::Presentation {
            input,
            target,
            format,
            out,
        } => presentation(input, *target, *format, out.as_ref()),
        Command::Verify {
            input,
            suite,
            seed,
            graph,
            out,
        } => verify_cmd(input, suite, *seed, graph.as_ref(), out.as_ref()),
        Command::Svg { input, out } => svg(input, out.as_ref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let code = exit_code(&e);
            if code != 1 || e.downcast_ref::<ChecksFailed>().is_none() {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(code)
        }
    }
}
