//! Command-line front end. Every command produces a [`Report`]; `run` parses
//! arguments, renders the report and returns the process exit code:
//! 0 on success, 1 when a verification fails, 2 on a usage error.

pub mod cache;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub use report::{Report, Table, REPORT_SCHEMA};

use crate::arc_ring::{verify_ring, ArcRing, MAX_N};
use crate::braid::verify_null_homotopy;
use crate::center::{center_basis, central_x, is_central, total_order_independence, verify_presentation_iso, verify_symmetric_action};
use crate::combinatorics::{arrows, binomial, bottom_arc_count, enumerate_matchings, matching_graph, ArrowPoset};
use crate::error::{Error, Result};
use crate::presentations::{ideal_r1, quotient_graded_ranks, verify_springer};

/// Largest `n` accepted by `matchings`.
pub const MATCHINGS_MAX_N: usize = 10;
/// Largest `n` accepted by `betti`.
pub const BETTI_MAX_N: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "arcring", version, about = "Arc rings, their centers and the (n,n) Springer cohomology over the integers")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Directory for cached rings.
    #[arg(long, global = true, env = "ARCRING_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Add wall-clock duration to the report.
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List crossingless matchings, optionally with arrows, order and arc graphs.
    Matchings {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        arrows: bool,
        #[arg(long)]
        order: bool,
        #[arg(long)]
        graph: bool,
    },
    /// Run verification suites; with no suite flag every suite runs.
    Verify(VerifyArgs),
    /// Graded ranks and lattice basis of the center.
    Center {
        #[arg(long)]
        n: usize,
        /// Include the basis elements.
        #[arg(long)]
        basis: bool,
    },
    /// Graded ranks of the quotient by the first presentation.
    Betti {
        #[arg(long)]
        n: usize,
    },
    /// Multiplication table of the arc ring in its basis.
    Multable {
        #[arg(long)]
        n: usize,
    },
    /// Null-homotopy reports for one `i` or all of them.
    Homotopy {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: Option<usize>,
    },
    /// Build or load the cached ring.
    Cache {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub all: bool,
    #[arg(long)]
    pub ring: bool,
    #[arg(long)]
    pub center: bool,
    #[arg(long)]
    pub springer: bool,
    #[arg(long)]
    pub iso: bool,
    #[arg(long)]
    pub homotopy: bool,
    #[arg(long)]
    pub symmetric: bool,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random triples or pairs for sampled checks.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
}

enum Failure {
    Usage(String),
    Internal(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Capacity { .. } | Error::OutOfRange { .. } => Failure::Usage(e.to_string()),
            e => Failure::Internal(e),
        }
    }
}

type CmdResult = std::result::Result<Report, Failure>;

/// Parses `args` (program name first), runs the command and writes the report
/// to `out` and warnings to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut warnings = Vec::new();
    let start = Instant::now();
    let result = execute(&cli, &mut warnings);
    for w in &warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    match result {
        Ok(mut report) => {
            if cli.timings {
                report.duration_ms = Some(start.elapsed().as_millis() as u64);
            }
            if cli.format == Format::Csv && report.table.headers.is_empty() {
                let _ = writeln!(err, "error: {} has no csv rendering", report.command);
                return 2;
            }
            let _ = out.write_all(report.render(cli.format).as_bytes());
            if report.pass {
                0
            } else {
                1
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Internal(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn execute(cli: &Cli, warnings: &mut Vec<String>) -> CmdResult {
    let ring = |n: usize, warnings: &mut Vec<String>| -> std::result::Result<ArcRing, Failure> {
        check_range(n, 1, MAX_N)?;
        Ok(cache::load_or_build(cli.cache_dir.as_deref(), n, warnings)?.0)
    };
    match &cli.command {
        &Command::Matchings { n, arrows, order, graph } => matchings(n, arrows, order, graph, warnings),
        Command::Verify(args) => verify(&ring(args.n, warnings)?, args),
        &Command::Center { n, basis } => center(&ring(n, warnings)?, basis),
        &Command::Betti { n } => betti(n),
        &Command::Multable { n } => multable(&ring(n, warnings)?),
        &Command::Homotopy { n, i } => homotopy(&ring(n, warnings)?, i),
        &Command::Cache { n } => {
            let Some(dir) = cli.cache_dir.as_deref() else {
                return Err(Failure::Usage("cache needs --cache-dir or ARCRING_CACHE_DIR".into()));
            };
            check_range(n, 1, MAX_N)?;
            let (ring, status) = cache::load_or_build(Some(dir), n, warnings)?;
            let path = cache::cache_path(dir, n);
            let results = json!({
                "status": status,
                "path": path.display().to_string(),
                "cache_schema": cache::CACHE_SCHEMA,
                "dimension": ring.dimension(),
            });
            let mut table = Table::new(vec!["key", "value"]);
            table.push(["status", json!(status).as_str().unwrap_or_default()]);
            table.push(["dimension".to_string(), ring.dimension().to_string()]);
            Ok(Report::new("cache", json!({"n": n}), results, true, table))
        }
    }
}

fn check_range(n: usize, low: usize, high: usize) -> std::result::Result<(), Failure> {
    if n < low || n > high {
        return Err(Failure::Usage(format!("n = {n} is outside {low}..={high}")));
    }
    Ok(())
}

fn matchings(n: usize, with_arrows: bool, with_order: bool, with_graph: bool, warnings: &mut Vec<String>) -> CmdResult {
    check_range(n, 0, MATCHINGS_MAX_N)?;
    if n == 0 {
        warnings.push("n = 0 has only the empty matching".into());
    }
    let all = enumerate_matchings(n);
    let mut results = json!({ "count": all.len(), "matchings": all });
    let mut table = Table::new(vec!["index", "matching", "bottom_arcs"]);
    for (k, a) in all.iter().enumerate() {
        table.push([k.to_string(), a.to_string(), bottom_arc_count(a).to_string()]);
    }
    if with_arrows {
        let list = arrows(n);
        results["arrow_count"] = json!(list.len());
        results["arrows"] = json!(list);
    }
    if with_order {
        results["order"] = json!(ArrowPoset::new(n).total_order()?);
    }
    if with_graph {
        let graphs: Vec<Value> = all
            .iter()
            .map(|a| {
                let g = matching_graph(a);
                json!({ "matching": a, "edges": g.edges, "marks": g.marks, "components": g.component_count() })
            })
            .collect();
        results["graphs"] = json!(graphs);
    }
    let parameters = json!({ "n": n, "arrows": with_arrows, "order": with_order, "graph": with_graph });
    Ok(Report::new("matchings", parameters, results, true, table))
}

fn verify(ring: &ArcRing, args: &VerifyArgs) -> CmdResult {
    let n = ring.n();
    let none = !(args.ring || args.center || args.springer || args.iso || args.homotopy || args.symmetric);
    let all = args.all || none;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut results = serde_json::Map::new();
    let mut table = Table::new(vec!["check", "pass"]);
    let mut pass = true;
    let mut record = |name: &str, value: Value, ok: bool| {
        table.push([name.to_string(), ok.to_string()]);
        results.insert(name.to_string(), value);
        pass &= ok;
    };
    if all || args.ring {
        let r = verify_ring(ring, args.samples, &mut rng)?;
        record("ring", json!(r), r.pass);
    }
    if all || args.center {
        let (value, ok) = center_check(ring)?;
        record("center", value, ok);
    }
    if all || args.springer {
        let r = verify_springer(n)?;
        record("springer", json!(r), r.pass);
    }
    if all || args.iso {
        let r = verify_presentation_iso(ring)?;
        record("iso", json!(r), r.pass);
    }
    if all || args.homotopy {
        let reports = (1..2 * n).map(|i| verify_null_homotopy(ring, i)).collect::<Result<Vec<_>>>()?;
        let ok = reports.iter().all(|r| r.pass);
        record("homotopy", json!(reports), ok);
    }
    if all || args.symmetric {
        let r = verify_symmetric_action(ring, args.samples.min(200), &mut rng)?;
        record("symmetric", json!(r), r.pass);
    }
    let parameters = json!({
        "n": n,
        "all": all,
        "ring": all || args.ring,
        "center": all || args.center,
        "springer": all || args.springer,
        "iso": all || args.iso,
        "homotopy": all || args.homotopy,
        "symmetric": all || args.symmetric,
        "seed": args.seed,
        "samples": args.samples,
    });
    Ok(Report::new("verify", parameters, Value::Object(results), pass, table))
}

fn center_check(ring: &ArcRing) -> Result<(Value, bool)> {
    let n = ring.n();
    let center = center_basis(ring)?;
    let expected = binomial(2 * n, n) as usize;
    let xs = (1..=2 * n).map(|i| central_x(ring, i)).collect::<Result<Vec<_>>>()?;
    let mut generators_central = true;
    let mut generators_commute = true;
    for x in &xs {
        generators_central &= is_central(ring, x)?;
        for y in &xs {
            generators_commute &= ring.multiply(x, y)? == ring.multiply(y, x)?;
        }
    }
    let extensions = ArrowPoset::new(n).linear_extensions(3);
    let order_independent = total_order_independence(n, &extensions)?;
    let ok = center.rank() == expected && generators_central && generators_commute && order_independent;
    let value = json!({
        "rank": center.rank(),
        "expected_rank": expected,
        "graded_ranks": center.graded_ranks(),
        "generators_central": generators_central,
        "generators_commute": generators_commute,
        "orders_compared": extensions.len(),
        "order_independent": order_independent,
        "pass": ok,
    });
    Ok((value, ok))
}

fn graded_table(ranks: &[usize]) -> (Value, Table) {
    let mut table = Table::new(vec!["degree", "rank"]);
    let rows: Vec<Value> = ranks
        .iter()
        .enumerate()
        .map(|(k, &r)| {
            table.push([2 * k, r]);
            json!({ "degree": 2 * k, "rank": r })
        })
        .collect();
    (json!(rows), table)
}

fn center(ring: &ArcRing, with_basis: bool) -> CmdResult {
    let center = center_basis(ring)?;
    let (graded, table) = graded_table(&center.graded_ranks());
    let mut results = json!({ "rank": center.rank(), "graded_ranks": graded });
    if with_basis {
        results["basis"] = json!(center.by_degree);
    }
    Ok(Report::new("center", json!({ "n": ring.n(), "basis": with_basis }), results, true, table))
}

fn betti(n: usize) -> CmdResult {
    check_range(n, 1, BETTI_MAX_N)?;
    let ranks = quotient_graded_ranks(&ideal_r1(n)?)?;
    let vanishing_above_n = ranks[n + 1..].iter().all(|&r| r == 0);
    let (graded, table) = graded_table(&ranks[..=n]);
    let results = json!({
        "total": ranks.iter().sum::<usize>(),
        "graded_ranks": graded,
        "vanishing_above_n": vanishing_above_n,
    });
    Ok(Report::new("betti", json!({ "n": n }), results, vanishing_above_n, table))
}

fn multable(ring: &ArcRing) -> CmdResult {
    let products = ring.multiplication_table()?;
    let mut table = Table::new(vec!["left", "right", "result", "coeff"]);
    for &(i, j, k, c) in &products {
        table.push([i as i64, j as i64, k as i64, c]);
    }
    let results = json!({
        "dimension": ring.dimension(),
        "basis": ring.basis(),
        "products": products,
    });
    Ok(Report::new("multable", json!({ "n": ring.n() }), results, true, table))
}

fn homotopy(ring: &ArcRing, i: Option<usize>) -> CmdResult {
    let n = ring.n();
    let indices: Vec<usize> = match i {
        Some(i) => {
            check_range(i, 1, 2 * n - 1)?;
            vec![i]
        }
        None => (1..2 * n).collect(),
    };
    let reports = indices.iter().map(|&i| verify_null_homotopy(ring, i)).collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(vec!["i", "endomorphism", "chain_map", "sign", "checked_vectors"]);
    for r in &reports {
        for c in &r.checks {
            let sign = c.sign.map_or("none".to_string(), |s| s.to_string());
            table.push([r.i.to_string(), c.endomorphism.clone(), c.chain_map.to_string(), sign, c.checked_vectors.to_string()]);
        }
    }
    let pass = reports.iter().all(|r| r.pass);
    Ok(Report::new("homotopy", json!({ "n": n, "i": i }), json!(reports), pass, table))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["arcring"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn json_of(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn matchings_examples() {
        let (code, out, _) = call(&["matchings", "--n", "2", "--arrows"]);
        let v = json_of(&out);
        assert_eq!(code, 0);
        assert_eq!((v["results"]["count"].as_u64(), v["results"]["arrow_count"].as_u64()), (Some(2), Some(1)));
        assert_eq!(v["results"]["arrows"], json!([[[[1, 2], [3, 4]], [[1, 4], [2, 3]]]]));
        assert_eq!(json_of(&call(&["matchings", "--n", "1"]).1)["results"]["count"], 1);
        let (code, out, err) = call(&["matchings", "--n", "0"]);
        assert_eq!(code, 0);
        assert_eq!(json_of(&out)["results"]["matchings"], json!([[]]));
        assert!(err.starts_with("warning:"));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["matchings", "--n", "11"]).0, 2);
        assert_eq!(call(&["center", "--n", "0"]).0, 2);
        assert_eq!(call(&["verify"]).0, 2);
        assert_eq!(call(&["bogus"]).0, 2);
        assert_eq!(call(&["homotopy", "--n", "1", "--i", "2"]).0, 2);
        assert_eq!(call(&["verify", "--n", "1", "--format", "csv", "--center"]).0, 0);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn verify_small() {
        let (code, out, _) = call(&["verify", "--n", "2", "--all"]);
        let v = json_of(&out);
        assert_eq!(code, 0, "{out}");
        assert_eq!(v["results"]["center"]["rank"], 6);
        assert_eq!(v["schema"], REPORT_SCHEMA);
        let (code, out, _) = call(&["verify", "--n", "1", "--homotopy"]);
        assert_eq!(code, 0);
        assert_eq!(json_of(&out)["results"]["homotopy"][0]["checks"][0]["sign"], -1);
    }

    #[test]
    fn tables() {
        assert_eq!(call(&["betti", "--n", "2", "--format", "csv"]).1, "degree,rank\n0,1\n2,3\n4,2\n");
        assert_eq!(call(&["center", "--n", "2", "--format", "csv"]).1, "degree,rank\n0,1\n2,3\n4,2\n");
        let out = call(&["multable", "--n", "1", "--format", "csv"]).1;
        assert_eq!(out, "left,right,result,coeff\n0,0,0,1\n0,1,1,1\n1,0,1,1\n");
        let out = call(&["homotopy", "--n", "1", "--format", "text"]).1;
        assert!(out.starts_with("homotopy (pass)\n"));
    }

    #[test]
    fn output_is_deterministic() {
        let a = call(&["verify", "--n", "2", "--seed", "9"]);
        let b = call(&["verify", "--n", "2", "--seed", "9"]);
        assert_eq!(a, b);
        let timed = json_of(&call(&["--timings", "betti", "--n", "1"]).1);
        assert!(timed["duration_ms"].is_u64());
    }
}
