//! `planewheel` command-line front end.
//!
//! Exit codes: 0 success, 1 verdict mismatch or failed verification, 2 usage
//! or input error, 3 search limit reached.

mod render;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use planewheel::doublestar::{
    bad_halfplanes, criterion_large_families, criterion_small_families, empty_triple, tree_nonpartition_criterion,
};
use planewheel::enumerate_k3::{enumerate_case, BaseCase};
use planewheel::partition::{structural_audit, Mode, Partition};
use planewheel::solver::{decide_theorem, export_lp, solve, SolveConfig, Status};
use planewheel::wheelgeom::{canonicalize, realize_coordinates, PointSet, WheelModel};
use serde_json::json;

#[derive(Parser)]
#[command(name = "planewheel", version, about = "Plane partitions of complete geometric graphs on wheel point sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a wheel model, its exact coordinates, or the canonical model of a point set.
    Generate {
        #[command(flatten)]
        model: ModelArgs,
        /// Canonicalize a point set JSON file instead.
        #[arg(long, conflicts_with_all = ["bw", "gw", "model"])]
        points: Option<PathBuf>,
        /// Emit exact coordinates rather than the combinatorial model.
        #[arg(long)]
        coords: bool,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Decide whether a partition exists.
    Solve {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        flags: SolveFlags,
        #[arg(long, value_enum)]
        expect: Option<Expect>,
        /// Outcome JSON destination (default stdout).
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Also write the witness partition JSON here on SAT.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Enumerate the spanning tree partitions of BW_{k,3}.
    Enumerate {
        #[arg(long)]
        k: usize,
        /// Restrict to one base case: 1, 2a or 2b.
        #[arg(long)]
        case: Option<BaseCase>,
        #[arg(long, value_enum, default_value = "count")]
        emit: Emit,
        /// File for `json`, directory for `svg`.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Validate and audit a partition JSON file.
    Verify {
        #[arg(long)]
        partition: PathBuf,
        #[arg(long, value_enum, default_value = "spanning-tree")]
        mode: ModeArg,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Print predicted verdicts and the double star criteria.
    Criteria {
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Write the binary program in LP format.
    ExportLp {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        flags: SolveFlags,
        /// Number of colors; must equal n.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Draw a partition: one SVG per class plus an overview.
    Render {
        #[arg(long)]
        partition: PathBuf,
        /// Output directory.
        #[arg(long, short)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct ModelArgs {
    /// Bumpy wheel with K groups of L vertices.
    #[arg(long, num_args = 2, value_names = ["K", "L"], conflicts_with_all = ["gw", "model"])]
    bw: Option<Vec<usize>>,
    /// Generalized wheel with comma separated group sizes.
    #[arg(long, value_delimiter = ',', conflicts_with = "model")]
    gw: Option<Vec<usize>>,
    /// Model JSON file.
    #[arg(long)]
    model: Option<PathBuf>,
}

impl ModelArgs {
    fn load(&self) -> Result<WheelModel> {
        if let Some(bw) = &self.bw {
            return Ok(WheelModel::bumpy(bw[0], bw[1])?);
        }
        if let Some(gw) = &self.gw {
            return Ok(WheelModel::generalized(gw)?);
        }
        if let Some(path) = &self.model {
            return read_json(path);
        }
        bail!("one of --bw, --gw or --model is required")
    }
}

#[derive(Args)]
struct SolveFlags {
    #[arg(long, value_enum, default_value = "subgraph")]
    mode: ModeArg,
    /// Require 2n - 1 edges per class (implied by the tree modes).
    #[arg(long)]
    class_size: bool,
    /// Forbid monochromatic triangles.
    #[arg(long)]
    triangle: bool,
    #[arg(long, env = "PLANEWHEEL_NODE_LIMIT")]
    node_limit: Option<u64>,
    /// Seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    width: usize,
    #[arg(long)]
    no_symmetry: bool,
    #[arg(long, default_value_t = 4)]
    split_depth: usize,
}

impl SolveFlags {
    fn config(&self) -> SolveConfig {
        let mut cfg = SolveConfig::new(self.mode.into());
        cfg.enforce_class_size |= self.class_size;
        cfg.enforce_triangle = self.triangle;
        cfg.node_limit = self.node_limit;
        cfg.time_limit_secs = self.time_limit;
        cfg.seed = self.seed;
        cfg.parallel_width = self.width.max(1);
        cfg.symmetry_breaking = !self.no_symmetry;
        cfg.split_depth = self.split_depth;
        cfg
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Subgraph,
    SpanningTree,
    DoubleStar,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Subgraph => Mode::Subgraph,
            ModeArg::SpanningTree => Mode::SpanningTree,
            ModeArg::DoubleStar => Mode::DoubleStar,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Expect {
    Sat,
    Unsat,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Count,
    Json,
    Svg,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn pretty<T: serde::Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Generate { model, points, coords, out } => {
            let model = match points {
                Some(path) => {
                    let ps: PointSet = read_json(&path)?;
                    canonicalize(&ps)?.model
                }
                None => model.load()?,
            };
            let text = if coords { pretty(&realize_coordinates(&model)?)? } else { pretty(&model)? };
            emit(out.as_deref(), &text)?;
            Ok(0)
        }
        Command::Solve { model, flags, expect, out, witness } => {
            let model = model.load()?;
            let outcome = solve(&model, &flags.config())?;
            emit(out.as_deref(), &pretty(&outcome)?)?;
            if let (Some(path), Some(p)) = (&witness, &outcome.witness) {
                emit(Some(path), &pretty(p)?)?;
            }
            Ok(match (outcome.status, expect) {
                (Status::Limit, _) => 3,
                (Status::Sat, Some(Expect::Unsat)) | (Status::Unsat, Some(Expect::Sat)) => 1,
                _ => 0,
            })
        }
        Command::Enumerate { k, case, emit: kind, out } => {
            let parts = enumerate_case(k, case)?;
            match kind {
                Emit::Count => emit(out.as_deref(), &format!("{}\n", parts.count()))?,
                Emit::Json => {
                    let mut text = String::new();
                    for p in parts {
                        text += &serde_json::to_string(&p)?;
                        text.push('\n');
                    }
                    emit(out.as_deref(), &text)?;
                }
                Emit::Svg => {
                    let dir = out.context("--emit svg needs --out DIR")?;
                    fs::create_dir_all(&dir)?;
                    for (i, p) in parts.enumerate() {
                        fs::write(dir.join(format!("partition_{i:05}.svg")), render::overview(&p))?;
                    }
                }
            }
            Ok(0)
        }
        Command::Verify { partition, mode, out } => {
            let p: Partition = read_json(&partition)?;
            let report = structural_audit(&p, mode.into());
            emit(out.as_deref(), &pretty(&report)?)?;
            Ok(if report.ok() { 0 } else { 1 })
        }
        Command::Criteria { model } => {
            let model = model.load()?;
            let ps = realize_coordinates(&model)?;
            let hs = bad_halfplanes(&model, &ps);
            let triple = empty_triple(&hs).map(|(i, j, k)| [hs[i].edge, hs[j].edge, hs[k].edge]);
            let report = json!({
                "model": model,
                "verdicts": decide_theorem(&model),
                "small_families": criterion_small_families(&model),
                "large_families": criterion_large_families(&model),
                "tree_nonpartition": tree_nonpartition_criterion(&model),
                "bad_halfplanes": hs.iter().map(|h| h.edge).collect::<Vec<_>>(),
                "empty_triple": triple,
            });
            emit(None, &pretty(&report)?)?;
            Ok(0)
        }
        Command::ExportLp { model, flags, m, out } => {
            let model = model.load()?;
            if let Some(m) = m {
                if m != model.n() {
                    bail!("--m {m} differs from n = {}; only m = n is supported", model.n());
                }
            }
            emit(out.as_deref(), &export_lp(&model, &flags.config()))?;
            Ok(0)
        }
        Command::Render { partition, out } => {
            let p: Partition = read_json(&partition)?;
            fs::create_dir_all(&out)?;
            fs::write(out.join("overview.svg"), render::overview(&p))?;
            for c in 0..p.m() {
                fs::write(out.join(format!("class_{c}.svg")), render::class(&p, c))?;
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
