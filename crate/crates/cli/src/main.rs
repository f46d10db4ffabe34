use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ptasynth::algebra::{parse_rational, rational_string};
use ptasynth::decomposition::sample_json;
use ptasynth::feasibility::feasible_with_reset;
use ptasynth::model::metrics::thresholds;
use ptasynth::model::parse::{parse_model, parse_property, parse_run, parse_state_property};
use ptasynth::model::render::render_model;
use ptasynth::selftest::{selftest, Scale};
use ptasynth::semantics::{grid_oracle, reach, replay_run};
use ptasynth::synthesis::{decompose_model, enumerate_runs, run_region, synthesize};
use ptasynth::transforms::{alpha_transform, beta_encoded, beta_transform, negate_property};
use ptasynth::two_clock::{
    find_onep3_indices, find_onep5_indices, find_onep6_index, find_pigeonhole_pair, no_reset_threshold_check,
    parse_trace, periodicity_probe, pigeonhole_premises, revalidate, trace_of, validate_two_one, Lemma,
};
use ptasynth::{Error, ParamDomain, ParamPoint, ParameterValuation, Pta, Quantifier, SyntacticRun, SystemProperty, TimeDomain};

#[derive(Parser)]
#[command(name = "ptasynth", version, about = "Parameter synthesis for parametric timed automata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a model (and optionally a property) and print it normalized
    Parse {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        prop: Option<PathBuf>,
    },
    /// Print the guard-only (beta) or property-encoded (alpha) form of a run
    Transform {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        run: PathBuf,
        /// State property file, for the alpha encoding
        #[arg(long)]
        prop: Option<PathBuf>,
    },
    /// Decide a property at one parameter valuation
    Check {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        prop: PathBuf,
        #[command(flatten)]
        set: SetArgs,
    },
    /// Decide a property on an integer grid
    Oracle {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        prop: PathBuf,
        /// `p=lo..hi`, one per parameter
        #[arg(long, required = true)]
        grid: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Feasibility of a syntactic run at one parameter valuation
    Feasible {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        run: PathBuf,
        #[command(flatten)]
        set: SetArgs,
    },
    /// List syntactic runs up to a length
    Runs {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
    },
    /// Parameter region where a run reaches a state property
    RunRegion {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        run: PathBuf,
        /// State property file
        #[arg(long)]
        prop: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cells of the parameter space with samples and signs
    Decompose {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        prop: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Feasible parameter region; exit 3 when it is empty
    Synth {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        prop: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Two-clock one-parameter analyses: thresholds, atom forms, probes
    Analyze2 {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        prop: PathBuf,
        #[arg(long, default_value_t = 3)]
        probe_horizon: u64,
        /// Also run the reset-free threshold check on this run
        #[arg(long)]
        run: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a stored trace against a structural lemma
    ScanRun {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        lemma: String,
        /// Property used for the thresholds (default `EF true`)
        #[arg(long)]
        prop: Option<PathBuf>,
    },
    /// Run the randomized agreement suites
    Selftest {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long, value_enum)]
    time: Option<TimeArg>,
    #[arg(long, value_enum)]
    param_domain: Option<DomainArg>,
    /// Allow overrides that contradict the model's declarations
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct SetArgs {
    /// `name=value`, one per parameter
    #[arg(long = "set")]
    set: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TimeArg {
    Nat,
    Dense,
}

#[derive(Clone, Copy, ValueEnum)]
enum DomainArg {
    Real,
    Int,
    Nat,
}

/// Exit status with a message for the error stream.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Out = Result<ExitCode, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_json(path: &Option<PathBuf>, v: &Value) -> Result<(), Failure> {
    if let Some(p) = path {
        let text = serde_json::to_string_pretty(v).expect("json") + "\n";
        fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

impl ModelArgs {
    fn load(&self) -> Result<Pta, Failure> {
        let mut pta = parse_model(&read(&self.model)?).map_err(|e| Failure::Usage(format!("{}: {e}", self.model.display())))?;
        if let Some(t) = self.time {
            let t = match t {
                TimeArg::Nat => TimeDomain::Nat,
                TimeArg::Dense => TimeDomain::Dense,
            };
            if t != pta.time_domain && pta.time_domain != TimeDomain::default() && !self.force {
                return Err(Failure::Usage(format!("model declares time={}; pass --force to override", pta.time_domain)));
            }
            pta.time_domain = t;
        }
        if let Some(d) = self.param_domain {
            let d = match d {
                DomainArg::Real => ParamDomain::Real,
                DomainArg::Int => ParamDomain::Int,
                DomainArg::Nat => ParamDomain::Nat,
            };
            if d != pta.param_domain && pta.param_domain != ParamDomain::default() && !self.force {
                return Err(Failure::Usage(format!("model declares param={}; pass --force to override", pta.param_domain)));
            }
            pta.param_domain = d;
        }
        Ok(pta)
    }
}

fn load_prop(path: &Path, pta: &Pta) -> Result<SystemProperty, Failure> {
    parse_property(read(path)?.trim(), pta).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_run(path: &Path, pta: &Pta) -> Result<SyntacticRun, Failure> {
    let tau = SyntacticRun::new(parse_run(&read(path)?)?);
    tau.validate(pta)?;
    Ok(tau)
}

fn valuation(pta: &Pta, set: &SetArgs) -> Result<ParameterValuation, Failure> {
    let mut pairs = Vec::new();
    for s in &set.set {
        let (k, v) = s.split_once('=').ok_or_else(|| Failure::Usage(format!("`{s}`: expected name=value")))?;
        let v = parse_rational(v.trim()).ok_or_else(|| Failure::Usage(format!("`{v}` is not a rational number")))?;
        pairs.push((k.trim().to_string(), v));
    }
    Ok(pta.valuation(&pairs)?)
}

fn grid(pta: &Pta, specs: &[String]) -> Result<Vec<ParameterValuation>, Failure> {
    let mut ranges = vec![None; pta.params.len()];
    for s in specs {
        let bad = || Failure::Usage(format!("`{s}`: expected name=lo..hi"));
        let (k, r) = s.split_once('=').ok_or_else(bad)?;
        let (lo, hi) = r.split_once("..").ok_or_else(bad)?;
        let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
        let id = pta.param_id(k.trim()).ok_or_else(|| Failure::Usage(format!("unknown parameter `{}`", k.trim())))?;
        ranges[id.0] = Some((lo, hi));
    }
    let mut points = vec![Vec::new()];
    for (k, r) in ranges.iter().enumerate() {
        let (lo, hi) = r.ok_or_else(|| Failure::Usage(format!("no grid for parameter `{}`", pta.params[k])))?;
        points = points
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (lo..=hi).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    Ok(points.iter().map(|v| ParameterValuation::ints(v)).collect())
}

fn cmd_parse(model: &ModelArgs, prop: &Option<PathBuf>) -> Out {
    let pta = model.load()?;
    print!("{}", render_model(&pta));
    println!(
        "# {} clocks, {} parameters, {} locations, {} transitions, time={} param={}",
        pta.clocks.len(),
        pta.params.len(),
        pta.locations.len(),
        pta.transitions.len(),
        pta.time_domain,
        pta.param_domain
    );
    if let Some(p) = prop {
        let psi = load_prop(p, &pta)?;
        println!("# property: {}", psi.render(&pta.clocks, &pta.params, &pta.loc_names()));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_transform(model: &ModelArgs, run: &Path, prop: &Option<PathBuf>) -> Out {
    let pta = model.load()?;
    let tau = load_run(run, &pta)?;
    match prop {
        None => println!("{}", beta_transform(&pta, &tau)?.render()),
        Some(p) => {
            let phi = parse_state_property(read(p)?.trim(), &pta)?;
            for (k, e) in alpha_transform(&pta, &tau, &phi)?.iter().enumerate() {
                println!("# disjunct {k}");
                println!("{}", beta_encoded(&pta, e)?.render());
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(model: &ModelArgs, prop: &Path, set: &SetArgs) -> Out {
    let pta = model.load()?;
    let psi = load_prop(prop, &pta)?;
    let g = valuation(&pta, set)?;
    let point = ParamPoint::Rational(g.clone());
    let (target, negate) = match psi.quantifier {
        Quantifier::ExistsEventually => (psi.phi.clone(), false),
        Quantifier::ForallAlways => (negate_property(&psi.phi), true),
    };
    let v = reach(&pta, &point, &target, pta.time_domain)?;
    let holds = v.reachable != negate;
    println!("{}", if holds { "sat" } else { "unsat" });
    if let Some(w) = &v.witness {
        if !replay_run(&pta, &g, w) {
            return Err(Failure::Internal("witness does not replay".into()));
        }
        println!("{} trace:", if negate { "counterexample" } else { "witness" });
        println!("{}", w.render(&pta));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle(model: &ModelArgs, prop: &Path, specs: &[String], out: &Option<PathBuf>) -> Out {
    let pta = model.load()?;
    let psi = load_prop(prop, &pta)?;
    let points = grid(&pta, specs)?;
    let table = grid_oracle(&pta, &psi, &points, pta.time_domain)?;
    println!("{}\tverdict", pta.params.join("\t"));
    let mut map = serde_json::Map::new();
    for (g, v) in &table {
        let cells: Vec<String> = g.0.iter().map(rational_string).collect();
        println!("{}\t{}", cells.join("\t"), if *v { "T" } else { "F" });
        map.insert(cells.join(","), json!(v));
    }
    let doc = json!({ "params": pta.params, "verdicts": map });
    println!("{doc}");
    write_json(out, &doc)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_feasible(model: &ModelArgs, run: &Path, set: &SetArgs) -> Out {
    let pta = model.load()?;
    let tau = load_run(run, &pta)?;
    let g = valuation(&pta, set)?;
    let beta = beta_transform(&pta, &tau)?;
    let res = feasible_with_reset(&beta, &g)?;
    println!("{}", if res.feasible { "feasible" } else { "infeasible" });
    if let Some((i, j)) = res.failing_pair {
        println!("failing pair: ({i}, {j})");
    }
    if let Some(w) = &res.witness {
        if !replay_run(&pta, &g, w) {
            return Err(Failure::Internal("witness does not replay on the model".into()));
        }
        println!("witness trace:");
        println!("{}", w.render(&pta));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_runs(model: &ModelArgs, max_len: usize) -> Out {
    let pta = model.load()?;
    for tau in enumerate_runs(&pta, max_len) {
        let idx: Vec<String> = tau.edges.iter().map(|e| e.to_string()).collect();
        println!("{}\t{}", idx.join(" "), tau.render(&pta));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_run_region(model: &ModelArgs, run: &Path, prop: &Path, out: &Option<PathBuf>) -> Out {
    let pta = model.load()?;
    let tau = load_run(run, &pta)?;
    let phi = parse_state_property(read(prop)?.trim(), &pta)?;
    let region = run_region(&pta, &tau, &phi)?;
    print!("{}", region.summary());
    write_json(out, &region.to_json())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_decompose(model: &ModelArgs, prop: &Path, out: &Option<PathBuf>) -> Out {
    let pta = model.load()?;
    let psi = load_prop(prop, &pta)?;
    let d = decompose_model(&pta, &psi)?;
    println!("method {}, {} cells", d.method.name(), d.cells.len());
    for c in &d.cells {
        println!("{:<8} sample {}", c.kind_name(), sample_json(&c.sample));
    }
    let doc = d.to_json(&pta.params);
    println!("{doc}");
    write_json(out, &doc)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_synth(model: &ModelArgs, prop: &Path, out: &Option<PathBuf>) -> Out {
    let pta = model.load()?;
    let psi = load_prop(prop, &pta)?;
    let region = synthesize(&pta, &psi)?;
    print!("{}", region.summary());
    let doc = region.to_json();
    match out {
        Some(_) => write_json(out, &doc)?,
        None => println!("{doc}"),
    }
    Ok(if region.is_empty() { ExitCode::from(3) } else { ExitCode::SUCCESS })
}

fn cmd_analyze2(model: &ModelArgs, prop: &Path, horizon: u64, run: &Option<PathBuf>, out: &Option<PathBuf>) -> Out {
    let pta = model.load()?;
    let psi = load_prop(prop, &pta)?;
    let (s0, s1) = thresholds(&pta, &psi)?;
    println!("S0 = {s0}, S1 = {s1}");
    let two = match validate_two_one(&pta) {
        Ok(t) => {
            println!("atom forms: ok");
            t
        }
        Err(v) => {
            print!("atom forms: rejected\n{v}");
            return Ok(ExitCode::from(2));
        }
    };
    let probe = periodicity_probe(&two, &psi, horizon)?;
    let pattern: String = probe.verdicts.iter().map(|v| if *v { 'T' } else { 'F' }).collect();
    println!("periodicity probe [{}] horizon {}: {pattern}", probe.label, probe.horizon);
    match probe.period {
        Some((t1, c)) => println!("  period: T1 = {t1}, c = {c}"),
        None => println!("  period: none"),
    }
    match probe.progression {
        Some((t1, c)) => println!("  progression T1 + kc all true: T1 = {t1}, c = {c}"),
        None => println!("  progression: none"),
    }
    if let Some(w) = &probe.counterexample {
        println!("  counterexample: {w}");
    }
    let mut doc = json!({ "s0": s0, "s1": s1, "probe": probe });
    if let Some(r) = run {
        let tau = load_run(r, &pta)?;
        let rep = no_reset_threshold_check(&two, &tau)?;
        println!(
            "reset-free threshold check: samples {:?}, all equal {}, premise violation {:?}",
            rep.samples, rep.all_equal, rep.premise_violation
        );
        doc["threshold_check"] = serde_json::to_value(&rep).expect("json");
    }
    write_json(out, &doc)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_scan_run(model: &ModelArgs, trace: &Path, lemma: &str, prop: &Option<PathBuf>) -> Out {
    let pta = model.load()?;
    let lemma = Lemma::parse(lemma).ok_or_else(|| Failure::Usage(format!("unknown lemma `{lemma}`")))?;
    let two = validate_two_one(&pta).map_err(Error::from)?;
    let psi = match prop {
        Some(p) => load_prop(p, &pta)?,
        None => SystemProperty::ef(ptasynth::StateProperty::True),
    };
    let (s0, s1) = thresholds(&pta, &psi)?;
    let (gamma, run) = parse_trace(&read(trace)?)?;
    let tr = trace_of(&pta, &gamma, &run)?;
    println!("S0 = {s0}, S1 = {s1}, length {}", tr.len());
    let found = match lemma {
        Lemma::OneP3 => find_onep3_indices(&two, &tr, s0),
        Lemma::OneP5 => find_onep5_indices(&two, &tr, s0),
        Lemma::OneP6 => find_onep6_index(&two, &tr, s0),
        Lemma::OneP4 => {
            let g = gamma.0.first().filter(|v| v.is_integer()).and_then(|v| num_u64(v));
            if let Some(g) = g {
                let prem = pigeonhole_premises(&two, &tr, g, s1)?;
                println!("premises: {}", serde_json::to_string(&prem).expect("json"));
            }
            find_pigeonhole_pair(&two, &tr)
        }
    };
    match found {
        Some(w) => {
            if !revalidate(&two, &tr, s0, &w) {
                return Err(Failure::Internal(format!("witness {:?} does not re-validate", w.indices)));
            }
            println!("witness {:?}", w.indices);
            for c in &w.clauses {
                println!("  {c}");
            }
            println!("{}", serde_json::to_string(&w).expect("json"));
        }
        None => println!("no witness (hypothesis not met or no index satisfies every clause)"),
    }
    Ok(ExitCode::SUCCESS)
}

fn num_u64(v: &ptasynth::algebra::Rational) -> Option<u64> {
    use num_traits::ToPrimitive;
    v.to_integer().to_u64()
}

fn cmd_selftest(seed: u64, quick: bool) -> Out {
    let report = selftest(seed, if quick { Scale::QUICK } else { Scale::DEFAULT });
    print!("{}", report.render());
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(4) })
}

fn configure_threads() {
    if let Some(n) = std::env::var("PTASYNTH_THREADS").ok().and_then(|s| s.trim().parse::<usize>().ok()) {
        // an already-initialized pool keeps its size
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    configure_threads();
    let res = match &cli.command {
        Command::Parse { model, prop } => cmd_parse(model, prop),
        Command::Transform { model, run, prop } => cmd_transform(model, run, prop),
        Command::Check { model, prop, set } => cmd_check(model, prop, set),
        Command::Oracle { model, prop, grid, out } => cmd_oracle(model, prop, grid, out),
        Command::Feasible { model, run, set } => cmd_feasible(model, run, set),
        Command::Runs { model, max_len } => cmd_runs(model, *max_len),
        Command::RunRegion { model, run, prop, out } => cmd_run_region(model, run, prop, out),
        Command::Decompose { model, prop, out } => cmd_decompose(model, prop, out),
        Command::Synth { model, prop, out } => cmd_synth(model, prop, out),
        Command::Analyze2 { model, prop, probe_horizon, run, out } => cmd_analyze2(model, prop, *probe_horizon, run, out),
        Command::ScanRun { model, trace, lemma, prop } => cmd_scan_run(model, trace, lemma, prop),
        Command::Selftest { seed, quick } => cmd_selftest(*seed, *quick),
    };
    match res {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(4)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_spec() {
        let pta = parse_model("clocks: x\nparams: p, q\nloc a init inv: true").unwrap();
        let g = grid(&pta, &["q=0..1".into(), "p=2..3".into()]).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g[1], ParameterValuation::ints(&[2, 1]));
        assert!(grid(&pta, &["p=0..1".into()]).is_err());
    }

    #[test]
    fn cli_shape() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
