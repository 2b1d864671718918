//! `k3lab` command-line front end.

mod render;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use k3lab::elliptic::{base_change, quadratic_twist, report_with_torsion, two_isogeny, two_isogeny_point, WModel};
use k3lab::harness::{self, Status, DEFAULT_SEED};
use k3lab::lattice::{disc_form, enhance, lattice_from_json, nikulin_report, parse_lattice_expr, same_invariants, GramLattice, DISC_ORDER_BOUND};
use k3lab::ns::{
    action_from_json, anti_invariant, beauville_verdict, enriques_fixed_point_check, frame_from_fibration, height, invariant, FibrationData,
    NSFrame,
};
use k3lab::{Error, Result};
use num_bigint::BigInt;
use render::Format;

#[derive(Parser)]
#[command(name = "k3lab", version, about = "Exact lattice, elliptic-surface and Enriques-involution computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy, Default)]
struct Output {
    /// Emit JSON.
    #[arg(long, conflicts_with = "md", global = true)]
    json: bool,
    /// Emit markdown.
    #[arg(long, global = true)]
    md: bool,
}

impl Output {
    fn format(self, default: Format) -> Format {
        match (self.json, self.md) {
            (true, _) => Format::Json,
            (_, true) => Format::Markdown,
            _ => default,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Lattice files or expressions such as `U(2)+E8(-1)+<-6>`.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Weierstrass model files.
    #[command(subcommand)]
    Fibration(FibrationCmd),
    /// Néron–Severi frame files and involutions.
    #[command(subcommand)]
    Frame(FrameCmd),
    /// Run verification scenarios.
    Verify {
        /// `all`, a number such as `S7` or `7`, or a scenario id.
        #[arg(default_value = "all")]
        scenario: String,
        /// Seed in hex; overrides K3LAB_SEED.
        #[arg(long)]
        seed: Option<String>,
        /// Include the optional scenarios in `all`.
        #[arg(long)]
        optional: bool,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Rank, signature, determinant and discriminant form.
    Info {
        lattice: String,
        #[command(flatten)]
        out: Output,
    },
    /// Compare two lattices by rank, signature and discriminant form.
    Compare {
        first: String,
        second: String,
        #[command(flatten)]
        out: Output,
    },
    /// Orthogonal complement of a primitive vector of negative square.
    Enhance {
        lattice: String,
        /// Coordinates, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
enum FibrationCmd {
    /// Singular fibers, Euler number, trivial lattice and torsion.
    Analyze {
        model: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Quadratic twist by a squarefree polynomial in the base variable.
    Twist {
        model: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        by: String,
        #[command(flatten)]
        out: Output,
    },
    /// Pull back along `t -> f(t)`.
    Basechange {
        model: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        by: String,
        #[command(flatten)]
        out: Output,
    },
    /// Quotient of `y^2 = x(x^2 + a x + b)` by `(0, 0)`.
    Isogeny {
        model: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
enum FrameCmd {
    /// Gram matrix and invariants of a frame file.
    Build {
        frame: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Matrix of an action file and its eigenlattices.
    Act {
        frame: PathBuf,
        action: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Mod-4 test on the anti-invariant part and the fixed-point check.
    Brauer {
        frame: PathBuf,
        action: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

/// A path to a lattice file, or a lattice expression.
fn load_lattice(arg: &str) -> Result<GramLattice> {
    let p = Path::new(arg);
    if p.is_file() {
        lattice_from_json(&read_json(p)?)
    } else {
        parse_lattice_expr(arg)
    }
}

fn lattice_summary(l: &GramLattice) -> Result<Value> {
    let (pos, neg, zero) = l.signature();
    let mut v = json!({
        "rank": l.rank(),
        "signature": [pos, neg, zero],
        "det": l.det().to_string(),
        "even": l.is_even(),
    });
    if let Some(name) = &l.label {
        v["name"] = json!(name);
    }
    if l.is_even() && !l.det().eq(&BigInt::from(0)) {
        let d = disc_form(l)?;
        v["disc_group"] = json!(d.factors.iter().map(ToString::to_string).collect::<Vec<_>>());
        v["disc_q"] = json!(d.q.iter().map(ToString::to_string).collect::<Vec<_>>());
        v["unique_in_genus"] = json!(nikulin_report(l).to_string());
    }
    Ok(v)
}

fn lattice(cmd: LatticeCmd) -> Result<(Value, Format, bool)> {
    match cmd {
        LatticeCmd::Info { lattice, out } => Ok((lattice_summary(&load_lattice(&lattice)?)?, out.format(Format::Text), true)),
        LatticeCmd::Compare { first, second, out } => {
            let (a, b) = (load_lattice(&first)?, load_lattice(&second)?);
            let same = same_invariants(&a, &b)?;
            let v = json!({
                "isometric-by-invariants": same,
                "first": lattice_summary(&a)?,
                "second": lattice_summary(&b)?,
                "disc_order_bound": DISC_ORDER_BOUND,
            });
            Ok((v, out.format(Format::Text), true))
        }
        LatticeCmd::Enhance { lattice, vector, out } => {
            let l = load_lattice(&lattice)?;
            let v = vector
                .split(',')
                .map(|s| s.trim().parse::<BigInt>().map_err(|e| Error::Input(format!("`{s}`: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            let e = enhance(&l, &v)?;
            let comp = e.complement.lattice();
            let out_v = json!({
                "v_square": e.v_square.to_string(),
                "divisibility": e.divisibility.to_string(),
                "disc_q": e.disc_q.to_string(),
                "complement": lattice_summary(&comp)?,
                "complement_gram": comp.gram.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
            });
            Ok((out_v, out.format(Format::Json), true))
        }
    }
}

fn load_model(path: &Path) -> Result<(WModel, Vec<String>, Vec<k3lab::elliptic::Section>)> {
    let spec = WModel::from_json(&read_json(path)?)?;
    let m = spec.model.specialized()?;
    let tors = spec.torsion.iter().map(|p| spec.model.specialize_section(p)).collect::<Result<Vec<_>>>()?;
    Ok((m, spec.vars, tors))
}

fn parse_in(text: &str, vars: &[String]) -> Result<k3lab::arith::RatFunc> {
    let v: Vec<&str> = vars.iter().map(String::as_str).collect();
    k3lab::arith::parse_expr(text, &v)
}

fn model_json(w: &WModel) -> Value {
    json!({"a1": w.a[0].to_string(), "a2": w.a[1].to_string(), "a3": w.a[2].to_string(), "a4": w.a[3].to_string(), "a6": w.a[4].to_string(), "vars": [w.base.clone()]})
}

fn fibration(cmd: FibrationCmd) -> Result<(Value, Format, bool)> {
    match cmd {
        FibrationCmd::Analyze { model, out } => {
            let (m, _, tors) = load_model(&model)?;
            Ok((json!(report_with_torsion(&m, &tors)?), out.format(Format::Json), true))
        }
        FibrationCmd::Twist { model, by, out } => {
            let (m, vars, _) = load_model(&model)?;
            let t = quadratic_twist(&m, &parse_in(&by, &vars)?)?;
            Ok((json!({"model": model_json(&t), "report": report_with_torsion(&t, &[])?}), out.format(Format::Json), true))
        }
        FibrationCmd::Basechange { model, by, out } => {
            let (m, vars, _) = load_model(&model)?;
            let b = base_change(&m, &parse_in(&by, &vars)?)?;
            Ok((json!({"model": model_json(&b), "report": report_with_torsion(&b, &[])?}), out.format(Format::Json), true))
        }
        FibrationCmd::Isogeny { model, out } => {
            let (m, _, tors) = load_model(&model)?;
            let i = two_isogeny(&m)?;
            let images = tors.iter().map(|p| two_isogeny_point(&m, p)).collect::<Result<Vec<_>>>()?;
            Ok((json!({"model": model_json(&i), "report": report_with_torsion(&i, &images)?}), out.format(Format::Json), true))
        }
    }
}

fn load_frame(path: &Path) -> Result<NSFrame> {
    frame_from_fibration(&FibrationData::from_json(&read_json(path)?)?)
}

fn frame(cmd: FrameCmd) -> Result<(Value, Format, bool)> {
    match cmd {
        FrameCmd::Build { frame, out } => {
            let f = load_frame(&frame)?;
            let heights = f
                .sections()
                .iter()
                .filter(|s| s.as_str() != "O")
                .map(|s| Ok((s.clone(), json!(height(&f, &f.class(s)?)?.to_string()))))
                .collect::<Result<serde_json::Map<_, _>>>()?;
            let v = json!({
                "labels": f.labels,
                "gram": f.gram.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "lattice": lattice_summary(&f.lattice())?,
                "heights": heights,
            });
            Ok((v, out.format(Format::Json), true))
        }
        FrameCmd::Act { frame, action, out } => {
            let f = load_frame(&frame)?;
            let m = action_from_json(&f, &read_json(&action)?)?;
            let mut v = json!({
                "matrix": m.matrix.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "preserves_form": m.preserves(&f.gram),
                "involution": m.is_involution(),
            });
            if m.is_involution() {
                v["invariant"] = lattice_summary(&invariant(&f, &m)?.lattice())?;
                v["anti_invariant"] = lattice_summary(&anti_invariant(&f, &m)?.lattice())?;
            }
            Ok((v, out.format(Format::Json), true))
        }
        FrameCmd::Brauer { frame, action, out } => {
            let f = load_frame(&frame)?;
            let m = action_from_json(&f, &read_json(&action)?)?;
            let v = json!({
                "verdict": beauville_verdict(&f, &m)?,
                "anti_invariant": lattice_summary(&anti_invariant(&f, &m)?.lattice())?,
                "fixed_point_free": enriques_fixed_point_check(&f, &m)?,
            });
            Ok((v, out.format(Format::Text), true))
        }
    }
}

fn parse_seed(s: &str) -> Result<u64> {
    let t = s.trim();
    let t = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")).unwrap_or(t);
    u64::from_str_radix(t, 16).map_err(|e| Error::Input(format!("seed `{s}`: {e}")))
}

enum Failure {
    Usage(String),
    Runtime(String),
}

fn verify(scenario: &str, seed: Option<String>, optional: bool, out: Output) -> std::result::Result<(String, bool), Failure> {
    let seed = match seed.or_else(|| std::env::var("K3LAB_SEED").ok()) {
        Some(s) => parse_seed(&s).map_err(|e| Failure::Usage(e.to_string()))?,
        None => DEFAULT_SEED,
    };
    let verdicts = harness::run(scenario, seed, optional).map_err(|e| match e {
        Error::UnknownScenario(_) => Failure::Usage(e.to_string()),
        e => Failure::Runtime(e.to_string()),
    })?;
    let ok = verdicts.iter().all(|v| v.status != Status::Fail);
    let text = match out.format(Format::Markdown) {
        Format::Json => serde_json::to_string_pretty(&harness::to_json(&verdicts)).expect("serializable"),
        _ => harness::to_markdown(&verdicts),
    };
    Ok((text, ok))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = match cli.command {
        Command::Verify { scenario, seed, optional, out } => verify(&scenario, seed, optional, out),
        Command::Lattice(c) => lattice(c).map(render::finish).map_err(|e| Failure::Runtime(e.to_string())),
        Command::Fibration(c) => fibration(c).map(render::finish).map_err(|e| Failure::Runtime(e.to_string())),
        Command::Frame(c) => frame(c).map(render::finish).map_err(|e| Failure::Runtime(e.to_string())),
    };
    match outcome {
        Ok((text, ok)) => {
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout().lock(), "{}", text.trim_end());
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
