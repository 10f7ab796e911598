//! `cgk` command line: count, list, construct, identify and verify groups
//! whose Sylow subgroups are all cyclic.

use cgk::arith::FactoredInt;
use cgk::counting::count_by_cluster;
use cgk::structure::{
    descriptor_to_metacyclic, descriptor_to_presentation, presentation_to_descriptor,
};
use cgk::{
    all_groups, clusters_for, count_breakdown, group_by_id, id_of_descriptor, id_of_metacyclic,
    id_of_permutation_group, verify_range, CGroupDescriptor, ConcreteOptions, MetacyclicParams,
    PcPresentation, PermutationGroup,
};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

type AnyError = Box<dyn std::error::Error>;

#[derive(Parser)]
#[command(
    name = "cgk",
    version,
    about = "Count, list, construct and identify finite groups whose Sylow subgroups are all cyclic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count the groups of one order, broken down by acting divisor
    Count {
        /// group order, decimal or factored like 2^2*3*5*13
        #[arg(value_name = "N", required_unless_present = "factored", conflicts_with = "factored")]
        n: Option<FactoredInt>,
        /// the order in factored form, bypassing factorization
        #[arg(long, value_name = "FACTORS")]
        factored: Option<FactoredInt>,
        /// machine-readable output
        #[arg(long)]
        json: bool,
    },
    /// List the groups of one order in canonical order
    List {
        /// group order, decimal or factored
        #[arg(value_name = "N")]
        n: FactoredInt,
        #[arg(long, value_enum, default_value_t = Format::Metacyclic)]
        format: Format,
        /// stop after this many groups
        #[arg(long, value_name = "K")]
        limit: Option<u128>,
    },
    /// Construct the group with id (n, i)
    Get {
        /// group order, decimal or factored
        #[arg(value_name = "N")]
        n: FactoredInt,
        /// position in the canonical order, starting at 1
        #[arg(value_name = "I")]
        i: u128,
        #[arg(long, value_enum, default_value_t = Format::Metacyclic)]
        format: Format,
    },
    /// Identify a group: report its id (n, i)
    #[command(group(ArgGroup::new("input").required(true).args(["metacyclic", "perm", "pc"])))]
    Id {
        /// metacyclic parameters a,b,r
        #[arg(long, value_name = "a,b,r")]
        metacyclic: Option<String>,
        /// JSON file {"degree": d, "generators": [...]} with 1-based image
        /// arrays or cycle strings like "(1,2,3)(4,5)"
        #[arg(long, value_name = "FILE")]
        perm: Option<PathBuf>,
        /// JSON file {"generators": [[p, order], ...],
        /// "conjugation_relations": [[i, j, t], ...]} with 1-based indices
        #[arg(long, value_name = "FILE")]
        pc: Option<PathBuf>,
        /// largest accepted permutation degree (env CGK_DEGREE_BOUND; default 5000)
        #[arg(long, value_name = "D")]
        degree_bound: Option<usize>,
        /// seed for the randomized self-check on permutation input
        #[arg(long, value_name = "S")]
        seed: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Show the canonical cluster order for one order and acting pair (d, m)
    Clusters {
        /// group order, decimal or factored
        #[arg(value_name = "N")]
        n: FactoredInt,
        /// acting divisor of n
        #[arg(long, value_name = "D")]
        d: FactoredInt,
        /// order of the acting automorphism
        #[arg(long, value_name = "M")]
        m: u128,
        #[arg(long)]
        json: bool,
    },
    /// Cross-check a range of orders against brute-force search
    Verify {
        /// inclusive order range, e.g. 1..2000
        #[arg(value_name = "A..B")]
        range: String,
        /// worker threads (default: all cores)
        #[arg(long, value_name = "J")]
        jobs: Option<usize>,
        /// seed for the randomized twist checks
        #[arg(long, value_name = "S")]
        seed: Option<u64>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    /// metacyclic parameters, e.g. "a=4 b=3 r=2"
    Metacyclic,
    /// polycyclic presentation, e.g. "<g1, g2 | g1^4, g2^3, g2^g1 = g2^2>"
    Pc,
    /// one JSON object per group
    Json,
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<(), AnyError> {
    match command {
        Command::Count { n, factored, json } => {
            let n = n.or(factored).expect("one of the two is present");
            let breakdown = count_breakdown(&n)?;
            if json {
                let by_divisor: Vec<_> = breakdown
                    .by_divisor
                    .iter()
                    .map(|(d, c)| json!({"d": d.value().to_string(), "count": json_u128(*c)}))
                    .collect();
                println!(
                    "{}",
                    json!({
                        "n": n.value().to_string(),
                        "factored": n.to_string(),
                        "by_divisor": by_divisor,
                        "total": json_u128(breakdown.total),
                    })
                );
            } else {
                println!("n = {} = {}", n.value(), n);
                for (d, c) in &breakdown.by_divisor {
                    println!("  d={}: {c}", d.value());
                }
                println!("total: {}", breakdown.total);
            }
        }
        Command::List { n, format, limit } => {
            let limit = limit.unwrap_or(u128::MAX);
            for (idx, item) in all_groups(&n)?.enumerate() {
                let i = idx as u128 + 1;
                if i > limit {
                    break;
                }
                let desc = item?;
                match format {
                    Format::Metacyclic => {
                        println!("n={} i={i}  {}", n.value(), descriptor_to_metacyclic(&desc)?)
                    }
                    Format::Pc => {
                        println!("n={} i={i}  {}", n.value(), descriptor_to_presentation(&desc)?)
                    }
                    Format::Json => println!("{}", group_json(&n, i, &desc)?),
                }
            }
        }
        Command::Get { n, i, format } => {
            let desc = group_by_id(&n, i)?;
            match format {
                Format::Metacyclic => println!("{}", descriptor_to_metacyclic(&desc)?),
                Format::Pc => println!("{}", descriptor_to_presentation(&desc)?),
                Format::Json => println!("{}", group_json(&n, i, &desc)?),
            }
        }
        Command::Id { metacyclic, perm, pc, degree_bound, seed, json } => {
            let id = if let Some(text) = metacyclic {
                id_of_metacyclic(&parse_metacyclic(&text)?)?
            } else if let Some(path) = perm {
                let group = PermutationGroup::from_json(&std::fs::read_to_string(&path)?)?;
                id_of_permutation_group(&group, &concrete_options(degree_bound, seed)?)?
            } else if let Some(path) = pc {
                let pres = parse_pc_file(&std::fs::read_to_string(&path)?)?;
                id_of_descriptor(&presentation_to_descriptor(&pres)?)?
            } else {
                unreachable!("the argument group requires one input");
            };
            if json {
                println!("{}", serde_json::to_string(&id)?);
            } else {
                println!("{id}");
            }
        }
        Command::Clusters { n, d, m, json } => {
            let clusters = clusters_for(&n, &d, m)?;
            if json {
                let rows = clusters
                    .iter()
                    .map(|c| {
                        let triples: Vec<_> = c
                            .triples()
                            .iter()
                            .map(|t| json!([json_u128(t.p), json_u128(t.q), t.e]))
                            .collect();
                        Ok(json!({"triples": triples, "count": json_u128(count_by_cluster(c)?)}))
                    })
                    .collect::<Result<Vec<_>, AnyError>>()?;
                println!("{}", serde_json::Value::from(rows));
            } else {
                for (idx, c) in clusters.iter().enumerate() {
                    let triples: Vec<String> = c
                        .triples()
                        .iter()
                        .map(|t| format!("({},{},{})", t.p, t.q, t.e))
                        .collect();
                    println!(
                        "{}: {{{}}}  count={}",
                        idx + 1,
                        triples.join(", "),
                        count_by_cluster(c)?
                    );
                }
            }
        }
        Command::Verify { range, jobs, seed, json } => {
            let (lo, hi) = parse_range(&range)?;
            let reports = match jobs {
                Some(jobs) => rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs)
                    .build()?
                    .install(|| verify_range(lo, hi, seed)),
                None => verify_range(lo, hi, seed),
            };
            let failed = reports.iter().filter(|r| !r.passed()).count();
            if json {
                println!("{}", serde_json::to_string(&reports)?);
            } else {
                for report in reports.iter().filter(|r| !r.passed()) {
                    println!(
                        "n={}: FAIL {}",
                        report.n,
                        report.counterexample.as_deref().unwrap_or("(no detail)")
                    );
                }
                println!("verified {lo}..{hi}: {} orders, {failed} failed", reports.len());
            }
            if failed > 0 {
                return Err(format!("{failed} of {} orders failed verification", reports.len()).into());
            }
        }
    }
    Ok(())
}

/// JSON number when it fits, decimal string beyond that.
fn json_u128(v: u128) -> serde_json::Value {
    match u64::try_from(v) {
        Ok(small) => serde_json::Value::from(small),
        Err(_) => serde_json::Value::from(v.to_string()),
    }
}

fn group_json(n: &FactoredInt, i: u128, desc: &CGroupDescriptor) -> Result<String, AnyError> {
    let params = descriptor_to_metacyclic(desc)?;
    let pres = descriptor_to_presentation(desc)?;
    let generators: Vec<_> = pres
        .generators
        .iter()
        .map(|&(p, order)| json!([json_u128(p), json_u128(order)]))
        .collect();
    let relations: Vec<_> = pres
        .relations
        .iter()
        .map(|&(i, j, t)| json!([i, j, json_u128(t)]))
        .collect();
    Ok(json!({
        "n": n.value().to_string(),
        "i": json_u128(i),
        "metacyclic": {
            "a": params.a.to_string(),
            "b": params.b.to_string(),
            "r": params.r.to_string(),
        },
        "presentation": {
            "generators": generators,
            "conjugation_relations": relations,
        },
    })
    .to_string())
}

fn parse_metacyclic(text: &str) -> Result<MetacyclicParams, AnyError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [a, b, r] = parts.as_slice() else {
        return Err(format!("--metacyclic wants three values a,b,r, got {text:?}").into());
    };
    let parse = |name: &str, s: &str| -> Result<BigUint, AnyError> {
        s.parse().map_err(|_| format!("bad value {s:?} for {name}").into())
    };
    Ok(MetacyclicParams::new(parse("a", a)?, parse("b", b)?, parse("r", r)?))
}

fn concrete_options(
    degree_bound: Option<usize>,
    seed: Option<u64>,
) -> Result<ConcreteOptions, AnyError> {
    let mut options = ConcreteOptions::default();
    if let Ok(text) = std::env::var("CGK_DEGREE_BOUND") {
        options.degree_bound = text
            .trim()
            .parse()
            .map_err(|_| format!("CGK_DEGREE_BOUND {text:?} is not a positive integer"))?;
    }
    if let Some(bound) = degree_bound {
        options.degree_bound = bound;
    }
    if let Some(seed) = seed {
        options.seed = seed;
    }
    Ok(options)
}

/// Accept integers as JSON numbers or as decimal strings (for values
/// beyond what JSON numbers carry exactly).
#[derive(serde::Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Number(u64),
    Text(String),
}

impl JsonInt {
    fn value(&self) -> Result<u128, AnyError> {
        match self {
            JsonInt::Number(v) => Ok(*v as u128),
            JsonInt::Text(s) => Ok(s.trim().parse()?),
        }
    }
}

fn parse_pc_file(text: &str) -> Result<PcPresentation, AnyError> {
    #[derive(serde::Deserialize)]
    struct File {
        generators: Vec<(JsonInt, JsonInt)>,
        #[serde(default)]
        conjugation_relations: Vec<(usize, usize, JsonInt)>,
    }
    let file: File = serde_json::from_str(text)?;
    Ok(PcPresentation {
        generators: file
            .generators
            .iter()
            .map(|(p, order)| Ok((p.value()?, order.value()?)))
            .collect::<Result<_, AnyError>>()?,
        relations: file
            .conjugation_relations
            .iter()
            .map(|(i, j, t)| Ok((*i, *j, t.value()?)))
            .collect::<Result<_, AnyError>>()?,
    })
}

fn parse_range(text: &str) -> Result<(u64, u64), AnyError> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| format!("range {text:?} should look like 1..2000"))?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: u64 = lo.trim().parse().map_err(|_| format!("bad range start {lo:?}"))?;
    let hi: u64 = hi.trim().parse().map_err(|_| format!("bad range end {hi:?}"))?;
    if lo > hi {
        return Err(format!("range {text:?} is empty").into());
    }
    Ok((lo, hi))
}
