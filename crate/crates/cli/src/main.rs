//! Batch front end: reads a JSON job, runs the requested tasks and writes
//! `report.json` and `summary.txt`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context as _;
use ccoh::abelian::groups_isomorphic;
use ccoh::completion::compare::{ComparisonReport, SquareReport};
use ccoh::completion::connecting::{LesReport, ShortExact};
use ccoh::completion::{classical_tate_cyclic, Construction, Context, SequencePrefix};
use ccoh::job::{parse_job, Job, Task};
use ccoh::module::ModuleRef;
use clap::Parser;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "ccoh", about = "Completed Ext and complete cohomology of finite groups")]
struct Args {
    /// JSON job description.
    #[arg(long)]
    job: PathBuf,
    /// Output directory for report.json and summary.txt.
    #[arg(long, default_value = "ccoh-out")]
    out: PathBuf,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Directory for persisted resolutions.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Drop the connecting-map signs (sign regression).
    #[arg(long)]
    unsigned: bool,
    /// Add the cyclic oracle column to computed values.
    #[arg(long)]
    oracle: bool,
}

#[derive(Serialize)]
struct Cell {
    module: String,
    degree: i64,
    construction: String,
    value: Option<String>,
    invariants: Option<Vec<String>>,
    stable_at: Option<usize>,
    oracle: Option<String>,
    matches_oracle: Option<bool>,
    error: Option<String>,
}

#[derive(Serialize)]
struct CompareEntry {
    module: String,
    report: Option<ComparisonReport>,
    error: Option<String>,
}

#[derive(Serialize)]
struct LesEntry {
    report: Option<LesReport>,
    squares: Vec<SquareReport>,
    error: Option<String>,
}

#[derive(Serialize)]
struct SignRegression {
    signed_compatible: bool,
    unsigned_failures: usize,
    witness: Option<String>,
    passed: bool,
}

#[derive(Serialize, Default)]
struct Report {
    group: String,
    order: usize,
    ring: String,
    argument: String,
    degrees: (i64, i64),
    unsigned: bool,
    compute: Option<Vec<Cell>>,
    compare: Option<Vec<CompareEntry>>,
    les: Option<Vec<(String, LesEntry)>>,
    sign_regression: Option<SignRegression>,
    failures: Vec<String>,
    passed: bool,
}

fn prefixes(job: &Job) -> Vec<SequencePrefix> {
    job.constructions.iter().filter_map(|c| if let Construction::Ta(a) = c { Some(a.clone()) } else { None }).collect()
}

fn make_context(job: &Job, args: &Args) -> Context {
    let mut ctx = match &args.cache_dir {
        Some(d) => Context::with_cache_dir(d),
        None => Context::default(),
    };
    ctx.bound = job.bound;
    ctx.vogel_width = job.vogel_width;
    if args.unsigned {
        ctx = ctx.unsigned();
    }
    ctx
}

fn oracle_value(job: &Job, b: &ModuleRef, n: i64) -> Option<ccoh::AbGroup> {
    let cyclic = job.group.order() == 1 || job.group.cyclic_generator().is_some();
    let trivial = ccoh::completion::trivial_argument(b).ok()?;
    if !cyclic || !job.argument.same_as(&trivial) {
        return None;
    }
    classical_tate_cyclic(job.group.order(), b, n).ok()
}

fn compute(job: &Job, ctx: &Context, with_oracle: bool, failures: &mut Vec<String>) -> Vec<Cell> {
    let mut tasks = Vec::new();
    for name in &job.coefficients {
        for n in job.degree_range() {
            for c in &job.constructions {
                tasks.push((name.clone(), n, c.clone()));
            }
        }
    }
    let cells: Vec<Cell> = tasks
        .par_iter()
        .map(|(name, n, kind)| {
            let b = job.module(name).expect("validated module");
            let oracle = if with_oracle { oracle_value(job, b, *n) } else { None };
            match ctx.complete(kind, &job.argument, b, *n) {
                Ok(g) => Cell {
                    module: name.clone(),
                    degree: *n,
                    construction: kind.name(),
                    value: Some(g.value.describe()),
                    invariants: Some(g.value.normalized().moduli().iter().map(|m| m.to_string()).collect()),
                    stable_at: Some(g.stable_at()),
                    matches_oracle: oracle.as_ref().map(|o| groups_isomorphic(o, &g.value)),
                    oracle: oracle.map(|o| o.describe()),
                    error: None,
                },
                Err(e) => Cell {
                    module: name.clone(),
                    degree: *n,
                    construction: kind.name(),
                    value: None,
                    invariants: None,
                    stable_at: None,
                    oracle: oracle.map(|o| o.describe()),
                    matches_oracle: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    for c in &cells {
        let at = format!("{} n={} {}", c.module, c.degree, c.construction);
        if let Some(e) = &c.error {
            failures.push(format!("compute {at}: {e}"));
        }
        if c.matches_oracle == Some(false) {
            failures.push(format!("oracle {at}: {} vs {}", c.value.as_deref().unwrap_or("?"), c.oracle.as_deref().unwrap_or("?")));
        }
    }
    if job.has(Task::Oracle) && oracle_value(job, job.module(&job.coefficients[0]).expect("validated module"), job.degrees.0).is_none() {
        failures.push("oracle: the cyclic oracle needs a cyclic group and the trivial argument".into());
    }
    cells
}

fn compare(job: &Job, ctx: &Context, failures: &mut Vec<String>) -> Vec<CompareEntry> {
    let pre = prefixes(job);
    let mut tasks = Vec::new();
    for name in &job.coefficients {
        for n in job.degree_range() {
            tasks.push((name.clone(), n));
        }
    }
    let entries: Vec<CompareEntry> = tasks
        .par_iter()
        .map(|(name, n)| {
            let b = job.module(name).expect("validated module");
            match ctx.compare_constructions(&job.argument, b, *n, &pre) {
                Ok(r) => CompareEntry { module: name.clone(), report: Some(r), error: None },
                Err(e) => CompareEntry { module: name.clone(), report: None, error: Some(format!("degree {n}: {e}")) },
            }
        })
        .collect();
    for e in &entries {
        if let Some(err) = &e.error {
            failures.push(format!("compare {}: {err}", e.module));
        }
        if let Some(r) = &e.report {
            for c in r.failures() {
                failures.push(format!("compare {} n={}: {} ({})", e.module, r.degree, c.name, c.detail));
            }
        }
    }
    entries
}

fn les(job: &Job, ctx: &Context, failures: &mut Vec<String>) -> anyhow::Result<Vec<(String, LesEntry)>> {
    let spec = job.ses.as_ref().expect("validated ses");
    let ses = ShortExact::new(ctx, &spec.f, &spec.g)?;
    let pre = prefixes(job);
    let entries: Vec<(String, LesEntry)> = job
        .constructions
        .par_iter()
        .map(|kind| {
            let entry = match ctx.verify_les(kind, &job.argument, &ses, job.degrees.0, job.degrees.1) {
                Ok(r) => LesEntry { report: Some(r), squares: Vec::new(), error: None },
                Err(e) => LesEntry { report: None, squares: Vec::new(), error: Some(e.to_string()) },
            };
            (kind.name(), entry)
        })
        .collect();
    let mut entries = entries;
    let squares: Vec<Result<SquareReport, String>> =
        job.degree_range().collect::<Vec<_>>().par_iter().map(|&n| ctx.connecting_squares(&job.argument, &ses, n, &pre).map_err(|e| format!("degree {n}: {e}"))).collect();
    let mut square_reports = Vec::new();
    for s in squares {
        match s {
            Ok(r) => {
                for c in r.checks.iter().filter(|c| !c.passed) {
                    failures.push(format!("square degree {}: {} ({})", r.degree, c.name, c.detail));
                }
                square_reports.push(r);
            }
            Err(e) => failures.push(format!("squares {e}")),
        }
    }
    for (name, e) in &entries {
        if let Some(err) = &e.error {
            failures.push(format!("les {name}: {err}"));
        }
        if let Some(r) = &e.report {
            for n in r.nodes.iter().filter(|n| !n.exact) {
                failures.push(format!("les {name}: not exact at {} in degree {}", n.node, n.degree));
            }
            for s in &r.stage_failures {
                failures.push(format!("les {name}: {} incompatible in degree {} at stage {}", s.map, s.degree, s.stage));
            }
        }
    }
    entries.push(("squares".into(), LesEntry { report: None, squares: square_reports, error: None }));
    Ok(entries)
}

fn sign_regression(job: &Job, failures: &mut Vec<String>) -> anyhow::Result<SignRegression> {
    let spec = job.ses.as_ref().expect("validated ses");
    let signed = fresh_context(job);
    let unsigned = fresh_context(job).unsigned();
    let (s_ses, u_ses) = (ShortExact::new(&signed, &spec.f, &spec.g)?, ShortExact::new(&unsigned, &spec.f, &spec.g)?);
    let mut signed_ok = true;
    let mut count = 0;
    let mut witness = None;
    for kind in [Construction::Resolution, Construction::Naive] {
        let r = signed.verify_les(&kind, &job.argument, &s_ses, job.degrees.0, job.degrees.1)?;
        signed_ok &= r.compatible();
        let u = unsigned.verify_les(&kind, &job.argument, &u_ses, job.degrees.0, job.degrees.1)?;
        count += u.stage_failures.len();
        if let (None, Some(s)) = (&witness, u.stage_failures.first()) {
            witness = Some(format!("{}, {kind}, {} in degree {} at stage {}", spec.label, s.map, s.degree, s.stage));
        }
    }
    let passed = signed_ok && count > 0;
    if !passed {
        failures.push(format!("sign-regression: signed compatible {signed_ok}, unsigned failures {count}"));
    }
    Ok(SignRegression { signed_compatible: signed_ok, unsigned_failures: count, witness, passed })
}

fn fresh_context(job: &Job) -> Context {
    let mut ctx = Context::default();
    ctx.bound = job.bound;
    ctx.vogel_width = job.vogel_width;
    ctx
}

fn summary(report: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "group {} (order {}), ring {}, argument {}, degrees {}..={}", report.group, report.order, report.ring, report.argument, report.degrees.0, report.degrees.1);
    if let Some(cells) = &report.compute {
        let _ = writeln!(s, "\n[compute]");
        for c in cells {
            let v = c.value.clone().or_else(|| c.error.clone().map(|e| format!("error: {e}"))).unwrap_or_default();
            let o = c.oracle.as_ref().map(|o| format!("  oracle {o}")).unwrap_or_default();
            let _ = writeln!(s, "{:>8} n={:>3} {:<18} {v}{o}", c.module, c.degree, c.construction);
        }
    }
    if let Some(entries) = &report.compare {
        let _ = writeln!(s, "\n[compare]");
        for e in entries {
            match &e.report {
                Some(r) => {
                    let _ = writeln!(s, "{:>8} n={:>3} {}/{} checks passed", e.module, r.degree, r.checks.iter().filter(|c| c.passed).count(), r.checks.len());
                }
                None => {
                    let _ = writeln!(s, "{:>8} error: {}", e.module, e.error.as_deref().unwrap_or(""));
                }
            }
        }
    }
    if let Some(entries) = &report.les {
        let _ = writeln!(s, "\n[les]");
        for (name, e) in entries {
            if let Some(r) = &e.report {
                let _ = writeln!(s, "{name:<18} exact {} compatible {}", r.exact(), r.compatible());
            } else if let Some(err) = &e.error {
                let _ = writeln!(s, "{name:<18} error: {err}");
            } else {
                let ok = e.squares.iter().all(|r| r.passed());
                let _ = writeln!(s, "{name:<18} {} degrees, all commute {ok}", e.squares.len());
            }
        }
    }
    if let Some(r) = &report.sign_regression {
        let _ = writeln!(s, "\n[sign-regression]\nsigned compatible {}, unsigned failures {}, witness {}", r.signed_compatible, r.unsigned_failures, r.witness.as_deref().unwrap_or("none"));
    }
    let _ = writeln!(s, "\n{}", if report.passed { "PASS" } else { "FAIL" });
    for f in &report.failures {
        let _ = writeln!(s, "  {f}");
    }
    s
}

fn run(job: &Job, args: &Args) -> anyhow::Result<Report> {
    let ctx = make_context(job, args);
    let mut report = Report {
        group: job.group.label.clone(),
        order: job.group.order(),
        ring: job.ring.label(),
        argument: job.argument.label().to_string(),
        degrees: job.degrees,
        unsigned: args.unsigned,
        ..Default::default()
    };
    let mut failures = Vec::new();
    let timer = Instant::now();
    if job.has(Task::Compute) || job.has(Task::Oracle) {
        report.compute = Some(compute(job, &ctx, args.oracle || job.has(Task::Oracle), &mut failures));
    }
    if job.has(Task::Compare) {
        report.compare = Some(compare(job, &ctx, &mut failures));
    }
    if job.has(Task::Les) {
        report.les = Some(les(job, &ctx, &mut failures)?);
    }
    if job.has(Task::SignRegression) {
        report.sign_regression = Some(sign_regression(job, &mut failures)?);
    }
    ctx.persist().context("persisting the resolution cache")?;
    eprintln!("finished in {:.2}s", timer.elapsed().as_secs_f64());
    report.passed = failures.is_empty();
    report.failures = failures;
    Ok(report)
}

fn write_outputs(out: &Path, report: &Report) -> anyhow::Result<()> {
    std::fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let json = serde_json::to_string_pretty(report)?;
    std::fs::write(out.join("report.json"), json + "\n")?;
    std::fs::write(out.join("summary.txt"), summary(report))?;
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match std::fs::read_to_string(&args.job) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read job {}: {e}", args.job.display());
            return ExitCode::from(2);
        }
    };
    let job = match parse_job(&text) {
        Ok(j) => j,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if args.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(args.jobs).build_global() {
            eprintln!("error: --jobs: {e}");
            return ExitCode::from(2);
        }
    }
    let report = match run(&job, &args) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    if let Err(e) = write_outputs(&args.out, &report) {
        eprintln!("error: {e:#}");
        return ExitCode::from(1);
    }
    print!("{}", summary(&report));
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
