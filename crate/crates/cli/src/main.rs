use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use zslab_core::cache::ResultsCache;
use zslab_core::invariants::{compute, enumerate_free_sequences, extremal_family, FamilyId, Invariant, InvariantOptions};
use zslab_core::literal::{format_element, load_group, parse_sequence};
use zslab_core::products::{verify_certificate, Certificate, Detector, Mode};
use zslab_core::search::SearchConfig;
use zslab_core::sequence::{Sequence, DEFAULT_STATE_CAP};
use zslab_core::smooth::{all_smooth_witnesses, smooth_witness};
use zslab_core::theorems::{parse_n_list, run_check, CheckParams, Status, CHECK_IDS};
use zslab_core::{Error, FiniteGroup};

#[derive(Debug, Parser)]
#[command(name = "zslab", version, about = "Zero-sum invariants of small finite groups")]
struct Cli {
    /// Worker threads (defaults to the number of logical CPUs).
    #[arg(long, global = true, env = "ZSLAB_JOBS", value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,

    /// Results cache file for `invariant`.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    /// Search node budget.
    #[arg(long, global = true, default_value_t = zslab_core::search::DEFAULT_NODE_CAP, value_parser = clap::value_parser!(u64).range(1..))]
    node_cap: u64,

    /// Sub-multiset budget per product-set computation.
    #[arg(long, global = true, default_value_t = DEFAULT_STATE_CAP, value_parser = clap::value_parser!(u64).range(1..))]
    state_cap: u64,

    /// Wall-clock budget per search, in seconds.
    #[arg(long, global = true)]
    time_limit: Option<f64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Group structure
    Group {
        #[command(subcommand)]
        command: GroupCommand,
    },
    /// Sequence queries
    Seq {
        #[command(subcommand)]
        command: SeqCommand,
    },
    /// Compute d, eta, ti, k or K
    Invariant {
        #[command(flatten)]
        group: GroupArg,
        /// One of d, eta, ti, k, K
        invariant: String,
        /// Keep one witness per automorphism orbit
        #[arg(long)]
        reduce: bool,
    },
    /// List an explicit extremal family
    Extremal {
        #[command(flatten)]
        group: GroupArg,
        /// cyclic_ti, dihedral_d, dihedral_eta, dihedral_ti, dicyclic_d, dicyclic_eta or dicyclic_ti
        family: String,
        /// Also enumerate the free sequences of the same length and compare the sets
        #[arg(long)]
        compare: bool,
    },
    /// Run registered checks
    Verify {
        /// Check IDs (C1 … C9) or `all`
        #[arg(required = true)]
        checks: Vec<String>,
        /// Parameter list such as `3..12` or `8,9,16`
        #[arg(long)]
        n: Option<String>,
        /// Group descriptors for C9, comma separated
        #[arg(long)]
        groups: Option<String>,
        /// Random samples per instance
        #[arg(long)]
        samples: Option<u64>,
        /// Largest dicyclic n for which C7c computes the full ti
        #[arg(long)]
        full_ti_up_to: Option<u64>,
        /// Also write the reports to this file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certificates
    Cert {
        #[command(subcommand)]
        command: CertCommand,
    },
}

#[derive(Debug, Args)]
struct GroupArg {
    /// C<n>, D<n>, Q<n> or T:<path>
    #[arg(long)]
    group: String,
}

#[derive(Debug, Subcommand)]
enum GroupCommand {
    /// Orders, exponent and presentations
    Info {
        #[command(flatten)]
        group: GroupArg,
        /// Print the Cayley table file instead
        #[arg(long)]
        table: bool,
    },
}

#[derive(Debug, Subcommand)]
enum SeqCommand {
    /// Product-one, short and tiny verdicts with certificates
    Check {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        seq: String,
    },
    /// Smoothness over a cyclic group
    Smooth {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        seq: String,
        /// Every generator, not only the first
        #[arg(long)]
        all: bool,
    },
}

#[derive(Debug, Subcommand)]
enum CertCommand {
    /// Check a certificate against a sequence
    Verify {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        seq: String,
        /// Certificate JSON, inline or `@path`
        #[arg(long)]
        cert: String,
    },
}

enum Failure {
    Usage(String),
    Core(Error),
    /// Output was produced; exit with this code.
    Exit(u8, Output),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::StateSpaceCapExceeded { .. } | Error::BudgetExceeded { .. } | Error::CapExceeded { .. } | Error::TooLong { .. } => 3,
        _ => 2,
    }
}

/// A command result: JSON document plus a flat table for csv and text.
struct Output {
    json: Value,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Output {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("json") + "\n",
            Format::Csv => {
                let mut s = self.header.join(",") + "\n";
                for r in &self.rows {
                    s += &r.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(",");
                    s.push('\n');
                }
                s
            }
            Format::Text => {
                let mut s = String::new();
                for r in &self.rows {
                    let line: Vec<String> = self.header.iter().zip(r).map(|(h, c)| format!("{h}={c}")).collect();
                    s += &line.join("  ");
                    s.push('\n');
                }
                s
            }
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn search_config(cli: &Cli) -> SearchConfig {
    SearchConfig {
        node_cap: cli.node_cap,
        time_limit: cli.time_limit.map(Duration::from_secs_f64),
        ..Default::default()
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // only fails if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs as usize).build_global();
    }
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.render(cli.format));
            ExitCode::SUCCESS
        }
        Err(Failure::Exit(code, out)) => {
            print!("{}", out.render(cli.format));
            ExitCode::from(code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Group {
            command: GroupCommand::Info { group, table },
        } => group_info(&load_group(&group.group)?, *table),
        Command::Seq {
            command: SeqCommand::Check { group, seq },
        } => {
            let g = load_group(&group.group)?;
            seq_check(cli, &g, &parse_sequence(&g, seq)?)
        }
        Command::Seq {
            command: SeqCommand::Smooth { group, seq, all },
        } => {
            let g = load_group(&group.group)?;
            seq_smooth(&g, &parse_sequence(&g, seq)?, *all)
        }
        Command::Invariant { group, invariant, reduce } => {
            let g = load_group(&group.group)?;
            let inv: Invariant = invariant.parse()?;
            invariant_cmd(cli, &g, inv, *reduce)
        }
        Command::Extremal { group, family, compare } => {
            let g = load_group(&group.group)?;
            extremal_cmd(cli, &g, family.parse()?, *compare)
        }
        Command::Verify {
            checks,
            n,
            groups,
            samples,
            full_ti_up_to,
            out,
        } => {
            let params = CheckParams {
                ns: n.as_deref().map(parse_n_list).transpose()?,
                groups: groups.as_ref().map(|g| g.split(',').map(|s| s.trim().to_string()).collect()),
                seed: cli.seed,
                samples: *samples,
                full_ti_up_to: *full_ti_up_to,
                search: search_config(cli),
                state_cap: cli.state_cap,
            };
            verify_cmd(checks, &params, out.as_ref())
        }
        Command::Cert {
            command: CertCommand::Verify { group, seq, cert },
        } => {
            let g = load_group(&group.group)?;
            let s = parse_sequence(&g, seq)?;
            let text = match cert.strip_prefix('@') {
                Some(path) => std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?,
                None => cert.clone(),
            };
            cert_verify(&g, &s, &Certificate::from_json(&g, &text)?)
        }
    }
}

fn group_info(g: &FiniteGroup, table: bool) -> Result<Output, Failure> {
    if table {
        let t = g.to_table_file();
        let rows = t.table.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        return Ok(Output {
            json: serde_json::to_value(&t).expect("table serializes"),
            header: vec![],
            rows,
        });
    }
    let elements: Vec<Value> = g
        .elements()
        .map(|x| {
            json!({
                "element": format_element(g, x),
                "order": g.order_of(x),
                "inverse": format_element(g, g.inverse(x)),
            })
        })
        .collect();
    let mut presentations = serde_json::Map::new();
    for f in [
        zslab_core::group::PresentationFamily::CyclicGenerator,
        zslab_core::group::PresentationFamily::DihedralPair,
        zslab_core::group::PresentationFamily::DicyclicPair,
    ] {
        let count = g.presentations(f).map(|p| p.len()).unwrap_or(0);
        presentations.insert(f.to_string(), json!(count));
    }
    let json = json!({
        "group": g.name(),
        "order": g.order(),
        "exponent": g.exponent(),
        "max_order": g.max_order(),
        "abelian": g.is_abelian(),
        "presentations": presentations,
        "elements": elements,
    });
    let rows = g
        .elements()
        .map(|x| vec![format_element(g, x), g.order_of(x).to_string(), format_element(g, g.inverse(x))])
        .collect();
    Ok(Output {
        json,
        header: vec!["element", "order", "inverse"],
        rows,
    })
}

fn seq_check(cli: &Cli, g: &FiniteGroup, s: &Sequence<'_>) -> Result<Output, Failure> {
    let det = Detector::new(cli.state_cap);
    let mut certs = serde_json::Map::new();
    let mut rows = Vec::new();
    for mode in [Mode::Any, Mode::Short, Mode::Tiny] {
        let cert = det.find_product_one_subsequence(s, mode)?;
        let free = cert.is_none();
        let label = match mode {
            Mode::Any => "product-one-free",
            Mode::Short => "short-free",
            Mode::Tiny => "tiny-free",
        };
        rows.push(vec![
            label.to_string(),
            free.to_string(),
            cert.as_ref().map(|c| c.to_json(g).to_string()).unwrap_or_default(),
        ]);
        certs.insert(
            mode.to_string(),
            json!({
                label: free,
                "certificate": cert.map(|c| c.to_json(g)),
            }),
        );
    }
    let product_one = if s.is_empty() { false } else { det.is_product_one(s)? };
    let mut json = json!({
        "group": g.name(),
        "sequence": s.to_literal(),
        "length": s.len(),
        "cross": s.cross_number(),
        "product_one": product_one,
        "verdicts": certs,
    });
    if g.max_order() == g.order() && g.order() >= 2 && !s.is_empty() {
        let w = smooth_witness(s)?;
        rows.push(vec!["smooth".into(), w.is_some().to_string(), w.as_ref().map(|w| w.to_json(g).to_string()).unwrap_or_default()]);
        json["smooth"] = w.map(|w| w.to_json(g)).unwrap_or(Value::Null);
    }
    Ok(Output {
        json,
        header: vec!["property", "holds", "detail"],
        rows,
    })
}

fn seq_smooth(g: &FiniteGroup, s: &Sequence<'_>, all: bool) -> Result<Output, Failure> {
    let witnesses = if all {
        all_smooth_witnesses(s)?
    } else {
        smooth_witness(s)?.into_iter().collect()
    };
    let rows = witnesses
        .iter()
        .map(|w| {
            vec![
                format_element(g, w.generator),
                w.exponent_sum.to_string(),
                w.exponents.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" "),
            ]
        })
        .collect();
    let list: Vec<Value> = witnesses.iter().map(|w| w.to_json(g)).collect();
    let json = if all {
        json!({"group": g.name(), "sequence": s.to_literal(), "smooth": !list.is_empty(), "witnesses": list})
    } else {
        json!({"group": g.name(), "sequence": s.to_literal(), "smooth": !list.is_empty(), "witness": list.first()})
    };
    Ok(Output {
        json,
        header: vec!["generator", "exponent_sum", "exponents"],
        rows,
    })
}

fn invariant_cmd(cli: &Cli, g: &FiniteGroup, inv: Invariant, reduce: bool) -> Result<Output, Failure> {
    let flags = if reduce { "reduce" } else { "" };
    let mut cache = cli.cache.as_ref().map(ResultsCache::open).transpose()?;
    let cached = match &cache {
        Some(c) => c.get(g, inv, flags)?,
        None => None,
    };
    let result = match cached {
        Some(r) => r,
        None => {
            let opts = InvariantOptions {
                search: search_config(cli),
                reduce_by_automorphisms: reduce,
            };
            let r = compute(g, inv, &opts)?;
            if let Some(c) = cache.as_mut() {
                c.insert(g, &r, flags);
                c.save()?;
            }
            r
        }
    };
    let json = result.to_json(g);
    let rows = vec![vec![
        g.name(),
        inv.to_string(),
        result.value.to_string(),
        result.exhaustive.to_string(),
        result.nodes.to_string(),
        result.witnesses.len().to_string(),
    ]];
    let out = Output {
        json,
        header: vec!["group", "invariant", "value", "exhaustive", "nodes", "witnesses"],
        rows,
    };
    if !result.exhaustive {
        return Err(Failure::Exit(3, out));
    }
    Ok(out)
}

fn extremal_cmd(cli: &Cli, g: &FiniteGroup, family: FamilyId, compare: bool) -> Result<Output, Failure> {
    let seqs = extremal_family(g, family)?;
    let lits: Vec<String> = seqs
        .iter()
        .map(|s| Sequence::from_elements(g, s.iter().copied()).map(|s| s.to_literal()))
        .collect::<Result<_, _>>()?;
    let mut json = json!({
        "group": g.name(),
        "family": family.to_string(),
        "property": family.property().as_str(),
        "count": lits.len(),
        "sequences": lits,
    });
    let mut code = 0;
    if compare {
        let len = seqs.first().map_or(0, |s| s.len());
        let found = enumerate_free_sequences(g, family.property(), len, false, &search_config(cli))?;
        if !found.stats.exhaustive {
            code = 3;
        } else if found.sequences != seqs {
            code = 1;
        }
        json["enumerated_count"] = json!(found.sequences.len());
        json["exhaustive"] = json!(found.stats.exhaustive);
        json["sets_equal"] = json!(found.sequences == seqs);
    }
    let rows = lits.iter().map(|l| vec![family.to_string(), l.clone()]).collect();
    let out = Output {
        json,
        header: vec!["family", "sequence"],
        rows,
    };
    if code != 0 {
        return Err(Failure::Exit(code, out));
    }
    Ok(out)
}

fn verify_cmd(checks: &[String], params: &CheckParams, out: Option<&PathBuf>) -> Result<Output, Failure> {
    let ids: Vec<String> = if checks.iter().any(|c| c.eq_ignore_ascii_case("all")) {
        CHECK_IDS.iter().map(|s| s.to_string()).collect()
    } else {
        checks.to_vec()
    };
    let mut reports = Vec::new();
    for id in &ids {
        reports.push(run_check(id, params)?);
    }
    let mut rows = Vec::new();
    for r in &reports {
        for d in &r.details {
            rows.push(vec![
                r.check.clone(),
                d.instance.clone(),
                serde_json::to_value(d.verdict).expect("verdict").as_str().unwrap_or_default().to_string(),
                d.observed.to_string(),
                d.expected.to_string(),
                d.witness.clone().unwrap_or_default(),
            ]);
        }
    }
    let failed = reports.iter().any(|r| r.status == Status::Fail);
    let json = if reports.len() == 1 {
        serde_json::to_value(&reports[0]).expect("report")
    } else {
        serde_json::to_value(&reports).expect("reports")
    };
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(&json).expect("json") + "\n";
        std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    let output = Output {
        json,
        header: vec!["check", "instance", "verdict", "observed", "expected", "witness"],
        rows,
    };
    if failed {
        return Err(Failure::Exit(1, output));
    }
    Ok(output)
}

fn cert_verify(g: &FiniteGroup, s: &Sequence<'_>, cert: &Certificate) -> Result<Output, Failure> {
    let verdict = verify_certificate(g, s, cert);
    let reason = verdict.err().map(|r| r.to_string());
    let json = json!({
        "group": g.name(),
        "sequence": s.to_literal(),
        "valid": verdict.is_ok(),
        "reason": reason,
    });
    let out = Output {
        json,
        header: vec!["valid", "reason"],
        rows: vec![vec![verdict.is_ok().to_string(), reason.unwrap_or_default()]],
    };
    if verdict.is_err() {
        return Err(Failure::Exit(1, out));
    }
    Ok(out)
}
