//! Command-line front end.
//!
//! Exit codes: 0 feasible / true, 1 infeasible / false, 2 input error,
//! 3 disagreement with the brute-force oracle under `--oracle`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::cperm::{rep_ext_cperm, sunflower_cperm};
use crate::error::{Error, Result};
use crate::generate;
use crate::graph::{is_transitive, Graph, SunflowerInstance};
use crate::io::*;
use crate::mdecomp::MdTree;
use crate::oracle;
use crate::orient::{orient_ext, recognize_comparability};
use crate::perm::{rep_ext_perm, sunflower_perm};
use crate::reductions::{to_simorient, TotalOrderingInstance};
use crate::simorient::sim_orient;
use crate::PartialOrientation;

pub const FEASIBLE: i32 = 0;
pub const INFEASIBLE: i32 = 1;
pub const INPUT_ERROR: i32 = 2;
pub const ORACLE_MISMATCH: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "simrep", version, about = "Transitive orientation extension and simultaneous representations")]
pub struct Cli {
    /// Write result files into this directory instead of printing them.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Cross-check the answer against brute-force enumeration (small inputs only).
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Report wall time on stderr.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether a graph is a comparability graph.
    Recognize { graph: PathBuf },
    /// Print the modular decomposition tree.
    Md { graph: PathBuf },
    /// Extend a partial orientation to a transitive orientation.
    OrientExt { graph: PathBuf, partial: PathBuf },
    /// Simultaneous transitive orientation of a sunflower instance.
    SimOrient { manifest: PathBuf },
    /// Extend a partial permutation diagram.
    RepExtPerm { graph: PathBuf, partial: PathBuf },
    /// Simultaneous permutation diagrams of a sunflower instance.
    SimRepPerm { manifest: PathBuf },
    /// Extend a partial circular permutation diagram.
    RepExtCperm { graph: PathBuf, partial: PathBuf },
    /// Simultaneous circular permutation diagrams of a sunflower instance.
    SimRepCperm { manifest: PathBuf },
    /// Reduce a TotalOrdering instance to a list of graphs.
    ReduceTotalordering { instance: PathBuf },
    /// Generate a random instance.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
}

#[derive(Subcommand, Debug)]
pub enum GenerateKind {
    /// A random permutation graph with about `m` edges.
    Perm {
        #[arg(long, default_value_t = 1000)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// A feasible sunflower instance with `r` inputs and about `m` edges.
    Sunflower {
        #[arg(long, default_value_t = 1000)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// A random TotalOrdering instance.
    Totalordering {
        #[arg(long, default_value_t = 5)]
        k: usize,
        #[arg(long, default_value_t = 4)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Named result files; printed or written to `--out`.
struct Output {
    status: i32,
    message: String,
    files: Vec<(String, String)>,
}

impl Output {
    fn yes(message: impl Into<String>, files: Vec<(String, String)>) -> Output {
        Output { status: FEASIBLE, message: message.into(), files }
    }

    fn no(message: impl Into<String>) -> Output {
        Output { status: INFEASIBLE, message: message.into(), files: Vec::new() }
    }
}

struct Ctx {
    oracle: bool,
}

impl Ctx {
    /// Compares feasibility with the oracle's answer.
    fn check(&self, fast: bool, brute: impl FnOnce() -> Result<bool>) -> Result<Option<String>> {
        if !self.oracle {
            return Ok(None);
        }
        let slow = brute()?;
        Ok((fast != slow).then(|| format!("ORACLE-MISMATCH fast={fast} brute={slow}")))
    }
}

/// Runs the CLI on `argv`, writing to the given streams; returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { INPUT_ERROR } else { FEASIBLE };
            let text = e.render().to_string();
            if code == FEASIBLE {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    let start = Instant::now();
    let ctx = Ctx { oracle: cli.oracle };
    let result = dispatch(&cli.command, &ctx);
    let elapsed = start.elapsed();
    let code = match result {
        Ok(Err(mismatch)) => {
            let _ = writeln!(stderr, "{mismatch}");
            ORACLE_MISMATCH
        }
        Ok(Ok(out)) => match emit(&out, cli.out.as_deref(), stdout) {
            Ok(()) => out.status,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                INPUT_ERROR
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            INPUT_ERROR
        }
    };
    if cli.timing {
        let _ = writeln!(stderr, "time {:.3} ms", elapsed.as_secs_f64() * 1e3);
    }
    code
}

fn emit(out: &Output, dir: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    let io_err = |e: std::io::Error| Error::Invalid(e.to_string());
    if !out.message.is_empty() {
        writeln!(stdout, "{}", out.message).map_err(io_err)?;
    }
    match dir {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| Error::Invalid(format!("{}: {e}", dir.display())))?;
            for (name, body) in &out.files {
                let p = dir.join(name);
                fs::write(&p, body).map_err(|e| Error::Invalid(format!("{}: {e}", p.display())))?;
                writeln!(stdout, "wrote {}", p.display()).map_err(io_err)?;
            }
        }
        None if out.files.len() == 1 => write!(stdout, "{}", out.files[0].1).map_err(io_err)?,
        None => {
            for (name, body) in &out.files {
                write!(stdout, "== {name}\n{body}").map_err(io_err)?;
            }
        }
    }
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn located<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

type Answer = std::result::Result<Output, String>;

fn dispatch(cmd: &Command, ctx: &Ctx) -> Result<Answer> {
    match cmd {
        Command::Recognize { graph } => recognize(&load_graph(graph)?, ctx),
        Command::Md { graph } => {
            let g = load_graph(graph)?;
            let t = MdTree::build(&g)?;
            Ok(Ok(Output::yes("", vec![("md.txt".into(), t.dump(&g))])))
        }
        Command::OrientExt { graph, partial } => {
            let g = load_graph(graph)?;
            let w = located(partial, parse_partial_orientation(&g, &read(partial)?))?;
            orient_ext_cmd(&g, &w, ctx)
        }
        Command::SimOrient { manifest } => sim_orient_cmd(&load_sunflower(manifest)?, ctx),
        Command::RepExtPerm { graph, partial } => {
            let g = load_graph(graph)?;
            let d = located(partial, parse_perm_diagram(&g, &read(partial)?))?;
            let fast = match rep_ext_perm(&g, &d) {
                Err(Error::PartialMismatch(m)) => return Ok(Ok(Output::no(format!("INFEASIBLE partial-mismatch {m}")))),
                r => r?,
            };
            if let Some(m) = ctx.check(fast.is_some(), || Ok(oracle::rep_ext_perm_brute(&g, &d)?.is_some()))? {
                return Ok(Err(m));
            }
            Ok(Ok(match fast {
                Some(full) => Output::yes("", vec![("diagram.txt".into(), write_perm_diagram(&g, &full))]),
                None => Output::no("INFEASIBLE no-extension"),
            }))
        }
        Command::SimRepPerm { manifest } => {
            let inst = load_sunflower(manifest)?;
            let fast = sunflower_perm(&inst)?;
            if let Some(m) = ctx.check(fast.is_ok(), || Ok(oracle::sunflower_perm_brute(&inst)?.is_some()))? {
                return Ok(Err(m));
            }
            Ok(Ok(match fast {
                Ok(ds) => Output::yes("", per_input(&inst, "diagram", |g, i| write_perm_diagram(g, &ds[i]))),
                Err(e) => Output::no(format!("INFEASIBLE {e}")),
            }))
        }
        Command::RepExtCperm { graph, partial } => {
            let g = load_graph(graph)?;
            let c = located(partial, parse_cperm_diagram(&g, &read(partial)?))?;
            let fast = match rep_ext_cperm(&g, &c) {
                Err(Error::PartialMismatch(m)) => return Ok(Ok(Output::no(format!("INFEASIBLE partial-mismatch {m}")))),
                r => r?,
            };
            if let Some(m) = ctx.check(fast.is_some(), || Ok(oracle::rep_ext_cperm_brute(&g, &c)?.is_some()))? {
                return Ok(Err(m));
            }
            Ok(Ok(match fast {
                Some(full) => Output::yes("", vec![("diagram.txt".into(), write_cperm_diagram(&g, &full))]),
                None => Output::no("INFEASIBLE no-extension"),
            }))
        }
        Command::SimRepCperm { manifest } => {
            let inst = load_sunflower(manifest)?;
            let fast = sunflower_cperm(&inst)?;
            if let Some(m) = ctx.check(fast.is_ok(), || Ok(oracle::sunflower_cperm_brute(&inst)?.is_some()))? {
                return Ok(Err(m));
            }
            Ok(Ok(match fast {
                Ok(cs) => Output::yes("", per_input(&inst, "diagram", |g, i| write_cperm_diagram(g, &cs[i]))),
                Err(e) => Output::no(format!("INFEASIBLE {e}")),
            }))
        }
        Command::ReduceTotalordering { instance } => {
            let inst = located(instance, parse_total_ordering(&read(instance)?))?;
            let direct = crate::reductions::solve_brute(&inst).is_some();
            if let Some(m) = ctx.check(direct, || Ok(crate::reductions::reduced_brute(&inst)?.is_some()))? {
                return Ok(Err(m));
            }
            Ok(Ok(reduce(&inst)))
        }
        Command::Generate { kind } => Ok(Ok(generate_cmd(kind))),
    }
}

fn recognize(g: &Graph, ctx: &Ctx) -> Result<Answer> {
    let fast = recognize_comparability(g);
    if let Some(m) = ctx.check(fast, || Ok(!oracle::enum_transitive_orientations(g)?.is_empty()))? {
        return Ok(Err(m));
    }
    Ok(Ok(if fast {
        let o = orient_ext(g, &PartialOrientation::empty()).expect("comparability graph");
        Output::yes("COMPARABILITY", vec![("orientation.txt".into(), write_orientation(g, &o))])
    } else {
        Output::no("NOT-COMPARABILITY")
    }))
}

fn orient_ext_cmd(g: &Graph, w: &PartialOrientation, ctx: &Ctx) -> Result<Answer> {
    let fast = orient_ext(g, w);
    if let Some(m) = ctx.check(fast.is_ok(), || Ok(!oracle::extensions(g, w)?.is_empty()))? {
        return Ok(Err(m));
    }
    Ok(Ok(match fast {
        Ok(o) => {
            assert!(is_transitive(g, &o) && o.extends(w));
            Output::yes("", vec![("orientation.txt".into(), write_orientation(g, &o))])
        }
        Err(e) => Output::no(format!("INFEASIBLE {}", e.describe(g))),
    }))
}

fn sim_orient_cmd(inst: &SunflowerInstance, ctx: &Ctx) -> Result<Answer> {
    let fast = sim_orient(inst)?;
    if let Some(m) = ctx.check(fast.is_ok(), || Ok(oracle::sim_orient_brute(inst)?.is_some()))? {
        return Ok(Err(m));
    }
    Ok(Ok(match fast {
        Ok(os) => Output::yes("", per_input(inst, "orientation", |g, i| write_orientation(g, &os[i]))),
        Err(e) => Output::no(format!("INFEASIBLE {e}")),
    }))
}

fn per_input(
    inst: &SunflowerInstance,
    kind: &str,
    body: impl Fn(&Graph, usize) -> String,
) -> Vec<(String, String)> {
    inst.inputs.iter().enumerate().map(|(i, g)| (format!("G{}.{kind}", i + 1), body(g, i))).collect()
}

fn graph_files(prefix: &str, graphs: &[Graph]) -> (Vec<(String, String)>, Manifest) {
    let mut files = Vec::new();
    let mut m = Manifest::default();
    for (i, g) in graphs.iter().enumerate() {
        let name = format!("{prefix}{i}.graph");
        files.push((name.clone(), write_graph(g)));
        m.graphs.push(name.into());
    }
    (files, m)
}

fn reduce(inst: &TotalOrderingInstance) -> Output {
    let (mut files, m) = graph_files("G", &to_simorient(inst));
    files.push(("instance.manifest".into(), write_manifest(&m)));
    Output::yes("", files)
}

fn generate_cmd(kind: &GenerateKind) -> Output {
    match *kind {
        GenerateKind::Perm { m, seed } => {
            Output::yes("", vec![("graph.graph".into(), write_graph(&generate::scaling_graph(seed, m)))])
        }
        GenerateKind::Sunflower { m, r, seed } => {
            let inst = generate::scaling_sunflower(seed, m, r);
            let mut files = vec![("H.graph".to_string(), write_graph(&inst.shared))];
            let mut man = Manifest { shared: Some("H.graph".into()), ..Default::default() };
            for (i, g) in inst.inputs.iter().enumerate() {
                let name = format!("G{}.graph", i + 1);
                files.push((name.clone(), write_graph(g)));
                man.inputs.push(name.into());
            }
            files.push(("instance.manifest".into(), write_manifest(&man)));
            Output::yes("", files)
        }
        GenerateKind::Totalordering { k, t, seed } => {
            let inst = generate::random_total_ordering(seed, k.max(3), t);
            Output::yes("", vec![("instance.to".into(), write_total_ordering(&inst))])
        }
    }
}
