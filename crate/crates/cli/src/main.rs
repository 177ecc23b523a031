//! `hahnsat`: evaluate series, realize cuts and run the saturation suites.

use std::fs::File;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use hahnsat_core::coeff::CoeffField;
use hahnsat_core::cut::{classify_cut, realize_cut, Ambient, CutProblem, SampleConfig};
use hahnsat_core::harness::{run_suite, Eta0Order, SuiteConfig, SUITES};
use hahnsat_core::pseudo::check_pseudo_cauchy;
use hahnsat_core::report::{self, ReportWriter};
use hahnsat_core::series::{Precision, Series, Val};
use hahnsat_core::{Error, ExpVec};

mod workspace;

use workspace::Workspace;

#[derive(Parser, Debug)]
#[command(name = "hahnsat", version, about = "Exact Hahn series and cut realization workbench")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Ambient dimension n of the value group Q^n.
    #[arg(long, global = true)]
    dim: Option<usize>,
    /// Coefficient field: q or qsqrt2.
    #[arg(long, global = true)]
    coeff: Option<CoeffField>,
    /// Relative precision target, e.g. "(6, 0)".
    #[arg(long, global = true)]
    precision: Option<ExpVec>,
    /// Maximum number of expansion terms for inverses and roots.
    #[arg(long, global = true)]
    max_terms: Option<usize>,
    /// Write a structured report to this file.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Workspace file with header and bindings.
    #[arg(long, global = true)]
    workspace: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression and print its value, sign and residue.
    Eval { expr: String },
    /// Bind a name in the workspace file.
    Let { name: String, expr: String },
    /// Add fresh coordinates to the workspace ambient dimension.
    Extend {
        #[arg(default_value_t = 1)]
        k: usize,
    },
    /// Classify the cut of x0 over the substructure generated by gens.
    Classify(CutArgs),
    /// Classify and construct a realizer.
    Realize {
        #[command(flatten)]
        cut: CutArgs,
        /// Deepening retries on ambiguity.
        #[arg(long, default_value_t = 1)]
        retries: usize,
    },
    /// Check a pseudo-Cauchy sequence and build a pseudo-limit.
    Seq {
        /// Elements separated by ';'.
        elems: String,
        #[arg(long, default_value_t = 100)]
        kmax: u64,
    },
    /// Run a saturation suite.
    Suite {
        name: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value_t = 100)]
        kmax: u64,
        /// Order for eta0: lex, gamma or rational.
        #[arg(long, default_value = "lex")]
        order: Eta0Order,
    },
}

#[derive(Args, Debug)]
struct CutArgs {
    /// Generators separated by ';' (may be empty).
    #[arg(long, default_value = "")]
    gens: String,
    /// The ambient element whose cut is realized.
    #[arg(long)]
    x0: String,
    #[arg(long, default_value_t = 1)]
    depth: usize,
    /// Sample size cap.
    #[arg(long, default_value_t = SampleConfig::DEFAULT_CAP)]
    cap: usize,
    /// Coefficient field of the sampled substructure; defaults to --coeff.
    /// x0 itself may use the full ambient field.
    #[arg(long)]
    sample_coeff: Option<CoeffField>,
}

/// Exit statuses.
const EXIT_ASSERTION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PRECISION: u8 = 3;

enum Failure {
    Core(Error),
    Usage(String),
    Assertion(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<(), Failure>;

/// Expected negative results are reported and exit 0.
fn is_expected_negative(e: &Error) -> bool {
    matches!(
        e,
        Error::EqualityDetected(_)
            | Error::NoWitness(_)
            | Error::AmbiguousAtDepth { .. }
            | Error::NotPseudoCauchy { .. }
            | Error::SequenceTooShort { .. }
    )
}

fn exit_code(e: &Error) -> u8 {
    match e {
        _ if e.is_precision() => EXIT_PRECISION,
        Error::ClaimViolation(_) | Error::SeparationFailure(_) | Error::ResidueCollision(_) => EXIT_ASSERTION,
        _ if is_expected_negative(e) => 0,
        _ => EXIT_USAGE,
    }
}

struct Session {
    ws: Workspace,
    ws_path: Option<PathBuf>,
    report: Option<ReportWriter<File>>,
    max_terms_given: bool,
}

impl Session {
    fn open(g: &Global) -> Result<Self, Failure> {
        let mut ws = match &g.workspace {
            Some(p) if p.exists() => Workspace::load(p)?,
            _ => Workspace::new(g.dim.unwrap_or(1), CoeffField::default(), Precision::order(g.dim.unwrap_or(1), 6)),
        };
        if let Some(d) = g.dim {
            if d < ws.dim {
                return Err(Failure::Usage(format!(
                    "--dim {d} is below the workspace dimension {}",
                    ws.dim
                )));
            }
            ws.extend_to(d);
        }
        if let Some(f) = g.coeff {
            ws.field = f;
        }
        if let Some(p) = &g.precision {
            ws.precision.target = p.pad_to(ws.dim);
        }
        if let Some(m) = g.max_terms {
            ws.precision.max_terms = m.max(1);
        }
        let report = match &g.report {
            Some(p) => Some(ReportWriter::new(File::create(p)?)?),
            None => None,
        };
        Ok(Session {
            ws,
            ws_path: g.workspace.clone(),
            report,
            max_terms_given: g.max_terms.is_some(),
        })
    }

    fn record(&mut self, command: &str, config: Value, result: Value) -> Outcome {
        if let Some(w) = &mut self.report {
            w.record(command, config, result)?;
        }
        Ok(())
    }

    fn base_config(&self) -> Value {
        json!({
            "dim": self.ws.dim,
            "coeff": self.ws.field.name(),
            "precision": report::precision(&self.ws.precision),
        })
    }

    fn save_workspace(&self) -> Outcome {
        match &self.ws_path {
            Some(p) => Ok(self.ws.save(p)?),
            None => Err(Failure::Usage("this command needs --workspace".into())),
        }
    }

    fn list(&self, src: &str) -> Result<Vec<Series>, Failure> {
        src.split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| self.ws.parse(s).map_err(Failure::from))
            .collect()
    }

    fn problem(&self, c: &CutArgs) -> Result<CutProblem, Failure> {
        let gens = self.list(&c.gens)?;
        let x0 = self.ws.parse(&c.x0)?;
        let field = c.sample_coeff.unwrap_or(self.ws.field);
        let mut cfg = SampleConfig::new(c.depth, self.ws.dim).with_field(field);
        cfg.precision = self.ws.precision.clone();
        cfg.cap = c.cap.max(1);
        Ok(CutProblem::new(gens, x0, cfg))
    }

    fn cut_config(&self, c: &CutArgs) -> Value {
        let mut cfg = self.base_config();
        cfg["gens"] = json!(c.gens);
        cfg["x0"] = json!(c.x0);
        cfg["depth"] = json!(c.depth);
        cfg["cap"] = json!(c.cap);
        cfg["sample_coeff"] = json!(c.sample_coeff.unwrap_or(self.ws.field).name());
        cfg
    }
}

fn describe(s: &Series) -> Vec<String> {
    let mut lines = vec![s.to_string()];
    match s.valuation() {
        Ok(Val::Infinity) => lines.push("value: inf".into()),
        Ok(Val::Finite(v)) => lines.push(format!("value: {v}")),
        Err(e) => lines.push(format!("value: {e}")),
    }
    match s.signum() {
        Ok(o) => lines.push(format!("sign: {}", o as i8)),
        Err(e) => lines.push(format!("sign: {e}")),
    }
    if let Ok(r) = s.residue() {
        lines.push(format!("residue: {r}"));
    }
    lines
}

fn eval(sess: &mut Session, expr: &str) -> Outcome {
    let s = sess.ws.parse(expr)?;
    for l in describe(&s) {
        println!("{l}");
    }
    let mut cfg = sess.base_config();
    cfg["expr"] = json!(expr);
    let result = json!({
        "series": s.to_string(),
        "value": s.valuation().ok().map(|v| v.to_string()),
        "sign": s.signum().ok().map(|o| o as i8),
        "residue": s.residue().ok().map(|r| r.to_string()),
    });
    sess.record("eval", cfg, result)
}

fn classify(sess: &mut Session, c: &CutArgs) -> Outcome {
    let p = sess.problem(c)?;
    let cfg = sess.cut_config(c);
    let an = match classify_cut(&p) {
        Ok(an) => an,
        Err(e) if is_expected_negative(&e) => {
            println!("result: {e}");
            sess.record("classify", cfg, json!({ "error": e.to_string() }))?;
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    println!("case: {}", an.case);
    for st in &an.ladder {
        println!("depth {}: {} samples, max v(d - x0) = {}", st.depth, st.sample_size, st.max_delta);
    }
    if an.case != hahnsat_core::cut::CutCase::ImmediateTranscendental {
        println!("d0 = {}", an.d0);
        println!("gamma = {}", an.gamma);
    }
    sess.record("classify", cfg, report::analysis(&an))
}

fn realize(sess: &mut Session, c: &CutArgs, retries: usize) -> Outcome {
    let p = sess.problem(c)?;
    let cfg = sess.cut_config(c);
    let mut amb = Ambient::new(sess.ws.dim);
    let start = Instant::now();
    let rep = match realize_cut(&p, &mut amb, retries) {
        Ok(r) => r,
        Err(e) if is_expected_negative(&e) => {
            println!("result: {e}");
            sess.record("realize", cfg, json!({ "error": e.to_string() }))?;
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    println!("case: {}", rep.case);
    println!("realizer: {}", rep.realizer);
    println!("depth: {}", rep.depth);
    println!("separates {} sampled elements below and {} above", rep.below, rep.above);
    for ch in &rep.checks {
        println!("  checked {} on {}", ch.name, ch.count);
    }
    if amb.dim() > sess.ws.dim {
        println!("ambient extended to dimension {}", amb.dim());
        if sess.ws_path.is_some() {
            sess.ws.extend_to(amb.dim());
            sess.save_workspace()?;
        }
    }
    println!("time: {:.3}s", start.elapsed().as_secs_f64());
    sess.record("realize", cfg, report::realization(&rep))
}

fn seq(sess: &mut Session, elems: &str, kmax: u64) -> Outcome {
    let xs = sess.list(elems)?;
    let mut cfg = sess.base_config();
    cfg["elems"] = json!(elems);
    cfg["kmax"] = json!(kmax);
    let s = match check_pseudo_cauchy(&xs) {
        Ok(s) => s,
        Err(e) if is_expected_negative(&e) => {
            println!("result: {e}");
            sess.record("seq", cfg, json!({ "error": e.to_string() }))?;
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    let gammas: Vec<String> = s.gammas().iter().map(|g| g.to_string()).collect();
    println!("pseudo-Cauchy, gammas: {}", gammas.join(" < "));
    let lim = s.construct_pseudo_limit();
    let is_lim = s.is_pseudo_limit(&lim)?;
    let frag = s.limit_type_fragment(kmax);
    let holds = frag.holds(&lim)?;
    println!("pseudo-limit: {lim}");
    println!("is pseudo-limit: {is_lim}");
    println!("type fragment (n <= {kmax}) holds: {holds}");
    sess.record(
        "seq",
        cfg,
        json!({ "gammas": gammas, "pseudo_limit": lim.to_string(), "is_pseudo_limit": is_lim, "fragment_holds": holds }),
    )?;
    if is_lim && holds {
        Ok(())
    } else {
        Err(Failure::Assertion(format!("{lim} failed its own checks")))
    }
}

#[allow(clippy::too_many_arguments)]
fn suite(sess: &mut Session, name: &str, seed: u64, trials: usize, depth: usize, kmax: u64, order: Eta0Order) -> Outcome {
    let mut precision = sess.ws.precision.clone();
    if !sess.max_terms_given {
        precision.max_terms = SuiteConfig::SUITE_MAX_TERMS;
    }
    let cfg = SuiteConfig {
        seed,
        trials: trials.max(1),
        depth: depth.max(1),
        n: sess.ws.dim,
        k_max: kmax.max(1),
        precision,
    };
    let rep = run_suite(name, &cfg, order)
        .ok_or_else(|| Failure::Usage(format!("unknown suite {name:?}; known: {}", SUITES.join(", "))))?;
    println!("suite {}: {} passed, {} failed", rep.name, rep.passed, rep.failed);
    for (tag, n) in &rep.tagged {
        println!("  {tag}: {n}");
    }
    for note in &rep.notes {
        println!("  note: {note}");
    }
    for (i, c) in &rep.counterexamples {
        println!("  counterexample (trial {i}): {c}");
    }
    println!("time: {:.3}s", rep.wall_time.as_secs_f64());
    let mut config = report::suite_config(&cfg);
    config["order"] = json!(order.name());
    sess.record("suite", config, report::suite(&rep))?;
    if rep.ok() {
        Ok(())
    } else {
        Err(Failure::Assertion(format!("{} trials failed", rep.failed)))
    }
}

fn run(cli: Cli) -> Outcome {
    let mut sess = Session::open(&cli.global)?;
    match cli.command {
        Command::Eval { expr } => eval(&mut sess, &expr),
        Command::Let { name, expr } => {
            let s = sess.ws.parse(&expr)?;
            sess.ws.bind(&name, s.clone());
            sess.save_workspace()?;
            println!("{name} = {s}");
            Ok(())
        }
        Command::Extend { k } => {
            let mut amb = Ambient::new(sess.ws.dim);
            let d = hahnsat_core::cut::extend_ambient(&mut amb, k);
            sess.ws.extend_to(d);
            sess.save_workspace()?;
            println!("dimension: {d}");
            Ok(())
        }
        Command::Classify(c) => classify(&mut sess, &c),
        Command::Realize { cut, retries } => realize(&mut sess, &cut, retries),
        Command::Seq { elems, kmax } => seq(&mut sess, &elems, kmax),
        Command::Suite {
            name,
            seed,
            trials,
            depth,
            kmax,
            order,
        } => suite(&mut sess, &name, seed, trials, depth, kmax, order),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(()) => 0,
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Assertion(m)) => {
            eprintln!("assertion failed: {m}");
            EXIT_ASSERTION
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    };
    let _ = std::io::stdout().flush();
    ExitCode::from(code)
}
