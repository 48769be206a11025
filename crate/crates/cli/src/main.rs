//! Command-line front end: enumerate admissible pairs, analyze single
//! members, batch-audit ranges, run the arc-stabilizer probe, export graphs
//! and print the relation audit.
//!
//! Exit codes: 0 success, 1 usage error, 2 claim-check failure, 3 budget
//! exhaustion in a required stage. `HALFTRANS_THREADS` bounds the audit
//! worker pool.

use clap::{Args, Parser, Subcommand, ValueEnum};
use halftrans::analysis::{self, AnalyzeOptions, AuditOptions, AuditRow};
use halftrans::aut;
use halftrans::canon::DEFAULT_SEARCH_BUDGET;
use halftrans::graph::{export, ExportFormat, GammaGraph};
use halftrans::modular;
use rayon::prelude::*;
use std::io::Write;
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_CLAIM_FAILED: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "halftrans",
    about = "Construction, invariants and automorphism analysis of the tetravalent graphs Gamma(n,a) on Z_n x Z_3",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List the canonical admissible pairs (n, a, b) with n up to --max-n
    Enumerate {
        #[arg(long, value_name = "N")]
        max_n: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
        /// Shorthand for --format json
        #[arg(long)]
        json: bool,
    },
    /// Full analysis of one pair; prints a JSON report
    Analyze {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        skip_aut: bool,
        #[arg(long)]
        skip_hamiltonian: bool,
        /// Node-expansion budget for both the Hamiltonian and the
        /// automorphism searches
        #[arg(long, value_name = "NODES")]
        budget: Option<u64>,
    },
    /// Check the proven facts for every admissible pair up to --max-n
    Audit {
        #[arg(long, value_name = "N")]
        max_n: u64,
        /// Skip the automorphism stage entirely
        #[arg(long)]
        skip_aut: bool,
        /// Upper n bound for the automorphism stage
        #[arg(long, value_name = "N", default_value_t = 60)]
        aut_max: u64,
        #[arg(long, value_name = "NODES")]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
        #[arg(long)]
        json: bool,
        /// Checker sanity mode: inject an edge defect into this n's graphs
        #[arg(long, value_name = "N", hide = true)]
        corrupt: Option<u64>,
    },
    /// Search for an automorphism fixing (0,0) and mapping (b,1) to (1,2)
    Probe {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_name = "NODES")]
        budget: Option<u64>,
    },
    /// Write the graph in graph6, DOT or JSON edge-list form
    Export {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_name = "FMT")]
        format: String,
        #[arg(long, value_name = "PATH")]
        out: std::path::PathBuf,
    },
    /// Audit the thirteen relations for one pair
    Relations {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    a: u64,
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("HALFTRANS_THREADS") {
        match threads.parse::<usize>() {
            Ok(k) if k > 0 => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(k)
                    .build_global();
            }
            _ => {
                eprintln!("error: HALFTRANS_THREADS must be a positive integer");
                return ExitCode::from(EXIT_USAGE);
            }
        }
    }
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Enumerate { max_n, format, json } => cmd_enumerate(max_n, pick(format, json)),
        Command::Analyze {
            pair,
            skip_aut,
            skip_hamiltonian,
            budget,
        } => cmd_analyze(pair, skip_aut, skip_hamiltonian, budget),
        Command::Audit {
            max_n,
            skip_aut,
            aut_max,
            budget,
            format,
            json,
            corrupt,
        } => cmd_audit(max_n, skip_aut, aut_max, budget, pick(format, json), corrupt),
        Command::Probe { pair, budget } => cmd_probe(pair, budget),
        Command::Export { pair, format, out } => cmd_export(pair, &format, &out),
        Command::Relations { pair, format, json } => cmd_relations(pair, pick(format, json)),
    };
    ExitCode::from(code)
}

fn pick(format: TableFormat, json: bool) -> TableFormat {
    if json {
        TableFormat::Json
    } else {
        format
    }
}

fn usage_error(msg: &str) -> u8 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn cmd_enumerate(max_n: u64, format: TableFormat) -> u8 {
    if max_n > 10_000 {
        return usage_error("--max-n must be at most 10000");
    }
    let pairs = match analysis::enumerate_pairs(max_n) {
        Ok(p) => p,
        Err(e) => return usage_error(&e.to_string()),
    };
    match format {
        TableFormat::Csv => {
            println!("n,a,b");
            for p in &pairs {
                println!("{},{},{}", p.n, p.a, p.b);
            }
        }
        TableFormat::Json => {
            let rows: Vec<serde_json::Value> = pairs
                .iter()
                .map(|p| serde_json::json!({"n": p.n, "a": p.a, "b": p.b}))
                .collect();
            println!("{}", serde_json::to_string_pretty(&rows).unwrap());
        }
    }
    EXIT_OK
}

fn cmd_analyze(
    pair: PairArgs,
    skip_aut: bool,
    skip_hamiltonian: bool,
    budget: Option<u64>,
) -> u8 {
    let mut opts = AnalyzeOptions {
        skip_aut,
        skip_hamiltonian,
        ..AnalyzeOptions::default()
    };
    if let Some(b) = budget {
        opts.aut_budget = b;
        opts.hamiltonian_budget = b;
    }
    let report = match analysis::analyze(pair.n, pair.a, &opts) {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    let claims = analysis::check_report_claims(&report);
    let mut failed = false;
    for c in &claims {
        if !c.pass {
            failed = true;
        }
        eprintln!(
            "claim {:<32} {} ({})",
            c.name,
            if c.pass { "PASS" } else { "FAIL" },
            c.detail
        );
    }
    if failed {
        EXIT_CLAIM_FAILED
    } else if analysis::budget_exhausted(&report) {
        EXIT_BUDGET
    } else {
        EXIT_OK
    }
}

fn cmd_audit(
    max_n: u64,
    skip_aut: bool,
    aut_max: u64,
    budget: Option<u64>,
    format: TableFormat,
    corrupt: Option<u64>,
) -> u8 {
    if max_n > 200 {
        return usage_error("--max-n must be at most 200 for audit");
    }
    let opts = AuditOptions {
        aut_max_n: aut_max,
        skip_aut,
        aut_budget: budget.unwrap_or(DEFAULT_SEARCH_BUDGET),
        corrupt_n: corrupt,
    };
    let pairs = match analysis::enumerate_pairs(max_n) {
        Ok(p) => p,
        Err(e) => return usage_error(&e.to_string()),
    };
    let rows: Result<Vec<AuditRow>, _> = pairs
        .par_iter()
        .map(|&p| analysis::audit_pair(p, &opts))
        .collect();
    let rows = match rows {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };
    match format {
        TableFormat::Csv => {
            println!("n,a,b,girth,odd_girth,bipartite,chromatic,has_4cycle,has_6cycle,class,aut_order,result");
            for r in &rows {
                println!(
                    "{},{},{},{},{},{},{},{},{},{},{},{}",
                    r.pair.n,
                    r.pair.a,
                    r.pair.b,
                    r.girth,
                    r.odd_girth.map_or("-".into(), |g| g.to_string()),
                    r.bipartite,
                    r.chromatic,
                    r.has_4cycle,
                    r.has_6cycle,
                    r.classification
                        .map_or("-".into(), |c| c.to_string()),
                    r.aut_order.map_or("-".into(), |o| o.to_string()),
                    if r.pass { "PASS" } else { "FAIL" }
                );
                for f in &r.failures {
                    eprintln!("  n={} a={}: {}", r.pair.n, r.pair.a, f);
                }
            }
        }
        TableFormat::Json => {
            println!("{}", serde_json::to_string_pretty(&rows).unwrap());
        }
    }
    let failures = rows.iter().filter(|r| !r.pass).count();
    let budget_hit = rows.iter().any(|r| r.aut_budget_exceeded);
    eprintln!(
        "audit: {} pairs, {} failures",
        rows.len(),
        failures
    );
    if failures > 0 {
        EXIT_CLAIM_FAILED
    } else if budget_hit {
        EXIT_BUDGET
    } else {
        EXIT_OK
    }
}

fn cmd_probe(pair: PairArgs, budget: Option<u64>) -> u8 {
    let g = match GammaGraph::build(pair.n, pair.a) {
        Ok(g) => g,
        Err(e) => return usage_error(&e.to_string()),
    };
    match aut::arc_stabilizer_probe_direct(&g, budget.unwrap_or(DEFAULT_SEARCH_BUDGET)) {
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_BUDGET
        }
        Ok(Some(witness)) => {
            println!("true");
            println!("witness: {}", aut::cycles_on_vertices(&g, &witness));
            EXIT_OK
        }
        Ok(None) => {
            println!("false");
            EXIT_OK
        }
    }
}

fn cmd_export(pair: PairArgs, format: &str, out: &std::path::Path) -> u8 {
    let format = match ExportFormat::parse(format) {
        Some(f) => f,
        None => return usage_error("format must be one of graph6, dot, json"),
    };
    let g = match GammaGraph::build(pair.n, pair.a) {
        Ok(g) => g,
        Err(e) => return usage_error(&e.to_string()),
    };
    let bytes = match export(&g, format) {
        Ok(b) => b,
        Err(e) => return usage_error(&e.to_string()),
    };
    if let Err(e) = std::fs::File::create(out).and_then(|mut f| f.write_all(&bytes)) {
        return usage_error(&format!("cannot write {}: {e}", out.display()));
    }
    println!(
        "wrote {}: {} vertices, {} edges",
        out.display(),
        g.vertex_count(),
        g.edge_count()
    );
    EXIT_OK
}

fn cmd_relations(pair: PairArgs, format: TableFormat) -> u8 {
    let canonical = match canonical_orientation(pair.n, pair.a) {
        Ok(a) => a,
        Err(msg) => return usage_error(&msg),
    };
    let entries = match modular::audit_relations(pair.n, canonical) {
        Ok(e) => e,
        Err(e) => return usage_error(&e.to_string()),
    };
    match format {
        TableFormat::Csv => {
            println!("relation_id,expression,lhs_value,holds");
            for e in &entries {
                println!(
                    "{},{},{},{}",
                    e.relation_id,
                    modular::RELATION_NAMES[(e.relation_id - 1) as usize],
                    e.lhs_value,
                    e.holds
                );
            }
        }
        TableFormat::Json => {
            println!("{}", serde_json::to_string_pretty(&entries).unwrap());
        }
    }
    EXIT_OK
}

fn canonical_orientation(n: u64, a: u64) -> Result<u64, String> {
    if !modular::is_order3_unit(n, a) {
        return Err(format!("({n}, {a}) is not admissible"));
    }
    Ok(a.min(modular::mul_mod(a, a, n)))
}
