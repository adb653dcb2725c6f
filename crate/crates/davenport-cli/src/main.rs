//! Command line front end: parses groups and weight sets, runs the bounds
//! dispatcher, the exhaustive search, the tabulator, and the certificate
//! verifier, and prints JSON (default) or plain text (`--pretty`).
//!
//! Exit codes: 0 success, 1 certificate invalid, 2 unusable input,
//! 3 search stopped before exhausting (budget or size).

use std::io::Read;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};

use davenport::bounds::{davenport_bounds, BoundsReport, Value};
use davenport::certificate::{Certificate, Verification};
use davenport::group::{parse_group, AbelianGroup};
use davenport::report::{run_table, TableOptions, TableRow};
use davenport::search::{max_dissociated, SearchConfig, SearchResult};
use davenport::weights::{parse_weights, WeightSet, WeightSpec};
use davenport::Error;

#[derive(Parser)]
#[command(
    name = "davenport",
    version,
    about = "Weighted Davenport constants of finite abelian groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Describe a group's canonical structure
    Info {
        /// Group, e.g. "C3*C3*C9" or "[3,3,9]"
        group: String,
        #[arg(long)]
        pretty: bool,
    },
    /// Compute certified bounds for a (group, weights) pair
    Bounds {
        group: String,
        /// Weights: "pm", "full", or "set:1,-1,5"
        #[arg(default_value = "pm")]
        weights: String,
        #[arg(long)]
        pretty: bool,
    },
    /// Settle a pair exactly, searching when the rules leave a gap
    Exact {
        group: String,
        #[arg(default_value = "pm")]
        weights: String,
        #[arg(long)]
        pretty: bool,
        /// Search node budget
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        max_depth: Option<usize>,
    },
    /// Run the exhaustive dissociated-sequence search directly
    Search {
        group: String,
        #[arg(default_value = "pm")]
        weights: String,
        #[arg(long)]
        pretty: bool,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        max_depth: Option<usize>,
        /// Restrict root elements to orbit representatives (sound for the
        /// maximum length; the witness may change)
        #[arg(long)]
        symmetric_reduction: bool,
    },
    /// Tabulate plus-minus values for all groups up to an order
    Table {
        max_order: u64,
        /// Try to settle bracketed rows by search
        #[arg(long)]
        resolve: bool,
        /// Tab-separated output instead of JSON
        #[arg(long)]
        tsv: bool,
        #[arg(long, default_value_t = 256)]
        resolve_cap: usize,
        #[arg(long, default_value_t = 256)]
        defend_cap: usize,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Check a certificate file ("-" reads stdin)
    Verify {
        path: String,
        #[arg(long)]
        pretty: bool,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn threads_from(flag: Option<usize>) -> Option<usize> {
    flag.or_else(|| std::env::var("DAVENPORT_THREADS").ok()?.parse().ok())
}

fn parse_pair(group: &str, weights: &str) -> anyhow::Result<(AbelianGroup, WeightSpec)> {
    let g = parse_group(group).with_context(|| format!("group {group:?}"))?;
    let w = parse_weights(weights).with_context(|| format!("weights {weights:?}"))?;
    Ok((g, w))
}

fn run() -> anyhow::Result<ExitCode> {
    match Cli::parse().command {
        Command::Info { group, pretty } => {
            let g = parse_group(&group).with_context(|| format!("group {group:?}"))?;
            print_info(&g, pretty);
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds { group, weights, pretty } => {
            let (g, w) = parse_pair(&group, &weights)?;
            let report = davenport_bounds(&g, &w)?;
            print_report(&report, pretty);
            Ok(ExitCode::SUCCESS)
        }
        Command::Exact { group, weights, pretty, budget, threads, max_depth } => {
            let (g, w) = parse_pair(&group, &weights)?;
            let report = davenport_bounds(&g, &w)?;
            run_exact(report, pretty, budget, threads_from(threads), max_depth)
        }
        Command::Search {
            group,
            weights,
            pretty,
            budget,
            threads,
            max_depth,
            symmetric_reduction,
        } => {
            let (g, w) = parse_pair(&group, &weights)?;
            let mut config = SearchConfig {
                symmetric_reduction,
                threads: threads_from(threads),
                max_depth,
                ..SearchConfig::default()
            };
            if let Some(nodes) = budget {
                config.node_budget = nodes;
            }
            run_search(&g, &w, &config, pretty)
        }
        Command::Table { max_order, resolve, tsv, resolve_cap, defend_cap, threads } => {
            let mut options = TableOptions {
                resolve,
                resolve_order_cap: resolve_cap,
                defend_order_cap: defend_cap,
                ..TableOptions::default()
            };
            options.search.threads = threads_from(threads);
            let rows = run_table(max_order, &options)?;
            if tsv {
                print_tsv(&rows);
            } else {
                println!("{}", serde_json::to_string_pretty(&rows)?);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { path, pretty } => run_verify(&path, pretty),
    }
}

fn print_info(g: &AbelianGroup, pretty: bool) {
    if pretty {
        println!("group:        {g}");
        println!("order:        {}", g.order());
        println!("exponent:     {}", g.exponent());
        println!("rank:         {}", g.rank());
        println!("total rank:   {}", g.total_rank());
        println!("prime powers: {:?}", g.prime_powers());
        return;
    }
    let value = serde_json::json!({
        "display": g.to_string(),
        "moduli": g.moduli(),
        "order": g.order().to_string(),
        "exponent": g.exponent(),
        "rank": g.rank(),
        "total_rank": g.total_rank(),
        "prime_powers": g.prime_powers(),
    });
    println!("{}", serde_json::to_string_pretty(&value).expect("info serializes"));
}

fn print_report(report: &BoundsReport, pretty: bool) {
    if !pretty {
        println!(
            "{}",
            serde_json::to_string_pretty(report).expect("report serializes")
        );
        return;
    }
    println!(
        "group:    {} (order {}, exponent {})",
        report.group,
        report.group.order(),
        report.group.exponent()
    );
    println!("weights:  {}", report.weights);
    if report.divisor > 1 {
        println!(
            "reduced:  {} with weights {} (divisor {})",
            report.normalized_group, report.normalized_weights, report.divisor
        );
    }
    println!("value:    {} ({})", report.value, report.method);
    match &report.e_value {
        Some(e) => println!("e-value:  {e}"),
        None => println!("e-value:  unavailable (order out of native range)"),
    }
    if let Some(parts) = &report.star_decomposition {
        println!("star via: {parts:?}");
    }
    match &report.certificate {
        Some(cert) => println!("witness:  {} elements (verified)", cert.length()),
        None => println!("witness:  none attached"),
    }
}

fn run_exact(
    report: BoundsReport,
    pretty: bool,
    budget: Option<u64>,
    threads: Option<usize>,
    max_depth: Option<usize>,
) -> anyhow::Result<ExitCode> {
    if report.value.is_exact() {
        print_report(&report, pretty);
        return Ok(ExitCode::SUCCESS);
    }
    let mut config = SearchConfig {
        symmetric_reduction: true,
        threads,
        max_depth,
        ..SearchConfig::default()
    };
    if let Some(nodes) = budget {
        config.node_budget = nodes;
    }
    let ng = report.normalized_group.clone();
    let nw = report.normalized_weights.clone();
    let p = ng.as_product()?;
    let set = WeightSet::from_spec(&nw, p.exponent())?;
    let outcome = match max_dissociated(&p, &set, &config) {
        Ok(result) => result,
        Err(Error::OrderCap { order, cap }) => {
            print_report(&report, pretty);
            eprintln!("search skipped: order {order} exceeds the search cap {cap}");
            return Ok(ExitCode::from(3));
        }
        Err(e) => return Err(e.into()),
    };
    if !outcome.exhausted {
        print_report(&report, pretty);
        eprintln!(
            "search stopped after {} nodes without exhausting; raise --budget",
            outcome.nodes
        );
        return Ok(ExitCode::from(3));
    }
    let settled = outcome.max_len + 1;
    let (lower, upper) = (report.value.lower(), report.value.upper());
    if settled < lower || settled > upper {
        bail!(
            "search settled {settled} outside the certified range [{lower}, {upper}]; \
             this is a bug"
        );
    }
    let mut upgraded = report;
    upgraded.value = Value::exact(settled);
    upgraded.method = "exhausted-search";
    upgraded.e_value = upgraded
        .group
        .small_order()
        .and_then(|order| upgraded.value.shifted(order - 1));
    upgraded.certificate = witness_certificate(&ng, &nw, &outcome)?;
    print_report(&upgraded, pretty);
    Ok(ExitCode::SUCCESS)
}

/// Rebuilds the search witness as a standalone verified certificate.
fn witness_certificate(
    g: &AbelianGroup,
    weights: &WeightSpec,
    outcome: &SearchResult,
) -> anyhow::Result<Option<Certificate>> {
    if outcome.witness.is_empty() {
        return Ok(None);
    }
    let p = g.as_product()?;
    let elements = outcome
        .witness
        .iter()
        .map(|&idx| Ok(p.element_at(idx)?.coords().to_vec()))
        .collect::<davenport::Result<Vec<_>>>()?;
    let cert = Certificate::new(
        p.radices(),
        weights.clone(),
        elements,
        Some("exhaustive search witness".to_string()),
    );
    match cert.verify()? {
        Verification::Valid { .. } => Ok(Some(cert)),
        Verification::Invalid { violation } => {
            bail!("search produced a non-dissociated witness ({violation}); this is a bug")
        }
    }
}

fn run_search(
    g: &AbelianGroup,
    spec: &WeightSpec,
    config: &SearchConfig,
    pretty: bool,
) -> anyhow::Result<ExitCode> {
    let p = g.as_product()?;
    let set = WeightSet::from_spec(spec, p.exponent())?;
    let outcome = max_dissociated(&p, &set, config)?;
    let certificate = witness_certificate(g, spec, &outcome)?;
    if pretty {
        println!("max length:  {}", outcome.max_len);
        println!("exhausted:   {}", outcome.exhausted);
        println!("nodes:       {}", outcome.nodes);
        println!("depth cap:   {}", outcome.depth_cap);
        let witness: Vec<String> = outcome
            .witness
            .iter()
            .map(|&idx| p.element_at(idx).expect("witness index").to_string())
            .collect();
        println!("witness:     [{}]", witness.join(", "));
    } else {
        let value = serde_json::json!({
            "max_len": outcome.max_len,
            "exhausted": outcome.exhausted,
            "nodes": outcome.nodes,
            "budget_exhausted": outcome.budget_exhausted,
            "depth_cap": outcome.depth_cap,
            "witness_indices": outcome.witness,
            "certificate": certificate,
        });
        println!("{}", serde_json::to_string_pretty(&value)?);
    }
    if outcome.budget_exhausted {
        eprintln!("node budget exhausted before the search completed");
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}

fn print_tsv(rows: &[TableRow]) {
    println!("group\torder\tchain\tstar\tupper\tvalue\tmethod\tdefended");
    for row in rows {
        let group = AbelianGroup::new(&row.moduli).expect("tabulated moduli are canonical");
        println!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            group, row.order, row.chain, row.star, row.upper, row.value, row.method, row.defended
        );
    }
}

fn run_verify(path: &str, pretty: bool) -> anyhow::Result<ExitCode> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .context("reading stdin")?;
        buf
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?
    };
    let cert = Certificate::from_json(&text)?;
    match cert.verify()? {
        Verification::Valid { length } => {
            if pretty {
                println!("valid: {length} elements are dissociated");
            } else {
                let value = serde_json::json!({ "status": "valid", "length": length });
                println!("{}", serde_json::to_string_pretty(&value)?);
            }
            Ok(ExitCode::SUCCESS)
        }
        Verification::Invalid { violation } => {
            if pretty {
                println!("invalid: {violation}");
            } else {
                let value = serde_json::json!({ "status": "invalid", "violation": violation });
                println!("{}", serde_json::to_string_pretty(&value)?);
            }
            Ok(ExitCode::from(1))
        }
    }
}
