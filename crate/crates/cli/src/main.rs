use std::collections::HashMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use schubert::base::WeylBase;
use schubert::bounds::{
    chain_corollary_check, construct_witness_family, defining_set_lower_bound, feedback_free_min_set,
    variety_equation_count,
};
use schubert::cells::{cell_description_general, describe, variety_equations};
use schubert::flags::{random_cell_point, Flag};
use schubert::patterns::{
    bitstring, element_name, generic_pattern, parse_bitstring, pattern_poset, realizable_restricted_patterns,
    VanishingPattern,
};
use schubert::plucker::{
    economical_indices, is_economical_ordering, orbit_size, roots_r, PluckerSpace, WeightId, WeightOrdering,
};
use schubert::recognition::{
    build_decision_tree, recognize_type_a, Oracle, PatternOracle, QueryLog, Recognizer, TreeStrategy,
};
use schubert::{Error, Perm, TypeAGroup, WeylElement};

#[derive(Parser)]
#[command(
    name = "schubert",
    version,
    about = "Schubert cell descriptions and recognition from Plücker vanishing patterns"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Dot,
}

#[derive(Args)]
struct Common {
    /// Root system, e.g. A3, B4, D4, G2.
    #[arg(long, short)]
    group: String,
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Equations and inequations cutting out a Schubert cell.
    Describe {
        #[command(flatten)]
        common: Common,
        /// Element: one-line permutation in type A, or a word like s1.s2.
        #[arg(long)]
        w: String,
        /// Use the level-by-level description for this ordering of the
        /// fundamental weights, e.g. 1,3,2,4.
        #[arg(long)]
        ordering: Option<String>,
    },
    /// Equations cutting out a Schubert variety.
    DescribeVariety {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        w: String,
    },
    /// Recognizes the cell of a flag or a vanishing pattern by querying
    /// coordinates one at a time.
    #[command(group(ArgGroup::new("input").required(true).args(["flag", "pattern", "bits", "generic"])))]
    Recognize {
        #[command(flatten)]
        common: Common,
        /// Matrix of a flag (JSON or CSV), type A only.
        #[arg(long)]
        flag: Option<PathBuf>,
        /// JSON object mapping coordinates to 0/1; coordinates that are
        /// never queried may be omitted.
        #[arg(long)]
        pattern: Option<PathBuf>,
        /// Full pattern as a bit string in weight order.
        #[arg(long)]
        bits: Option<String>,
        /// Use the generic pattern of this element.
        #[arg(long)]
        generic: Option<String>,
        /// Use the level-by-level procedure even in type A.
        #[arg(long)]
        general: bool,
        /// Query the last candidate too and reject all-zero levels.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        ordering: Option<String>,
    },
    /// Decision tree of the recognition procedure.
    Tree {
        #[command(flatten)]
        common: Common,
        /// Minimum-depth tree over acceptable vectors instead of the
        /// procedure's tree.
        #[arg(long)]
        optimal: bool,
    },
    /// Base of the Bruhat order and the coordinates recognizing generic
    /// patterns.
    Base {
        #[command(flatten)]
        common: Common,
    },
    /// Realizable vanishing patterns on a set of coordinates, grouped by cell.
    PatternsPoset {
        #[command(flatten)]
        common: Common,
        /// Comma-separated coordinates; defaults to p2,p3,p13,p23 for A2.
        #[arg(long)]
        coords: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Lower bounds on defining sets and feedback-free recognition in type A.
    #[command(group(ArgGroup::new("which").required(true).args(["witness", "feedback_free", "defining", "chain"])))]
    Bounds {
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
        /// Witness family for n = 4k.
        #[arg(long)]
        witness: Option<usize>,
        /// Smallest coordinate sets recognizing cells without feedback.
        #[arg(long)]
        feedback_free: Option<usize>,
        /// Hitting-set lower bound for the variety of a permutation.
        #[arg(long)]
        defining: Option<String>,
        /// Saturated chain from the block longest element of S_4k.
        #[arg(long)]
        chain: Option<usize>,
    },
    /// Economical fundamental weights and orderings.
    Economical {
        #[command(flatten)]
        common: Common,
    },
    /// A random point of a type A Schubert cell.
    Sample {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        w: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::Parse(_)) => 2,
        Some(Error::Unsupported { .. } | Error::TooLarge { .. } | Error::WrongType { .. }) => 3,
        _ => 1,
    }
}

fn space(common: &Common) -> anyhow::Result<PluckerSpace> {
    Ok(PluckerSpace::from_name(&common.group)?)
}

fn no_dot(format: Format, what: &str) -> anyhow::Result<()> {
    if format == Format::Dot {
        return Err(Error::Parse(format!("dot output is not available for {what}")).into());
    }
    Ok(())
}

fn pretty(v: Value) -> String {
    serde_json::to_string_pretty(&v).expect("json")
}

fn coordinates(space: &PluckerSpace, ids: &[WeightId]) -> String {
    ids.iter().map(|&id| space.format_coordinate(id)).collect::<Vec<_>>().join(", ")
}

fn element_json(space: &PluckerSpace, w: WeylElement) -> Value {
    let g = space.group();
    let mut v = json!({"word": g.format_word(w), "length": g.length(w)});
    if g.check_type_a().is_ok() {
        v["perm"] = json!(g.to_perm(w).to_string());
    }
    v
}

fn parse_ordering(space: &PluckerSpace, s: &str) -> anyhow::Result<WeightOrdering> {
    let nodes = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("invalid ordering {s:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let ord = WeightOrdering::from_one_based(&nodes)?;
    if ord.rank() != space.rank() {
        return Err(Error::Parse(format!("ordering {s:?} does not have {} entries", space.rank())).into());
    }
    Ok(ord)
}

/// An oracle over a partial map; querying an absent coordinate is an error.
struct MapOracle<'a> {
    space: &'a PluckerSpace,
    bits: HashMap<WeightId, bool>,
}

impl Oracle for MapOracle<'_> {
    fn query(&mut self, id: WeightId) -> schubert::Result<bool> {
        self.bits
            .get(&id)
            .copied()
            .ok_or_else(|| Error::Parse(format!("pattern has no bit for {}", self.space.format_coordinate(id))))
    }
}

fn read_map<'a>(space: &'a PluckerSpace, path: &PathBuf) -> anyhow::Result<MapOracle<'a>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    let map = value.as_object().ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
    let mut bits = HashMap::new();
    for (key, v) in map {
        let bit = match v {
            Value::Bool(b) => *b,
            Value::Number(x) if x.as_u64() == Some(0) => false,
            Value::Number(x) if x.as_u64() == Some(1) => true,
            other => return Err(Error::Parse(format!("invalid bit {other} for {key}")).into()),
        };
        bits.insert(space.parse(key)?, bit);
    }
    Ok(MapOracle { space, bits })
}

fn run(command: Command) -> anyhow::Result<String> {
    match command {
        Command::Describe { common, w, ordering } => {
            no_dot(common.format, "describe")?;
            let space = space(&common)?;
            let w = space.parse_element(&w)?;
            let d = match ordering {
                Some(o) => cell_description_general(&space, w, &parse_ordering(&space, &o)?),
                None => describe(&space, w)?,
            };
            Ok(match common.format {
                Format::Json => pretty(d.to_json(&space)),
                _ => d.render(&space),
            })
        }
        Command::DescribeVariety { common, w } => {
            no_dot(common.format, "describe-variety")?;
            let space = space(&common)?;
            let w = space.parse_element(&w)?;
            let d = variety_equations(&space, w);
            Ok(match common.format {
                Format::Json => pretty(d.to_json(&space)),
                _ => d.render(&space),
            })
        }
        Command::Recognize { common, flag, pattern, bits, generic, general, strict, ordering } => {
            no_dot(common.format, "recognize")?;
            let space = space(&common)?;
            let flag = flag
                .map(|p| -> anyhow::Result<Flag> {
                    let text = fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
                    Ok(Flag::parse(&text)?)
                })
                .transpose()?;
            let full: Option<VanishingPattern> = match (&flag, bits, generic) {
                (Some(f), _, _) => Some(f.vanishing_pattern(&space)?),
                (_, Some(b), _) => {
                    let b = parse_bitstring(&b)?;
                    if b.len() != space.len() {
                        return Err(Error::Parse(format!("expected {} bits, got {}", space.len(), b.len())).into());
                    }
                    Some(VanishingPattern::from_bits(b))
                }
                (_, _, Some(g)) => Some(generic_pattern(&space, space.parse_element(&g)?)),
                _ => None,
            };
            let mut map_oracle = match &pattern {
                Some(p) => Some(read_map(&space, p)?),
                None => None,
            };
            let mut full_oracle = full.as_ref().map(PatternOracle::new);
            let oracle: &mut dyn Oracle = match (&mut full_oracle, &mut map_oracle) {
                (Some(o), _) => o,
                (_, Some(o)) => o,
                _ => unreachable!("clap requires one input"),
            };
            let type_a = space.group().check_type_a().is_ok();
            let (w, log): (WeylElement, QueryLog) = if type_a && !general && !strict && ordering.is_none() {
                let (p, log) = recognize_type_a(&space, oracle)?;
                (space.group().from_perm(&p)?, log)
            } else {
                let ord = match ordering {
                    Some(o) => parse_ordering(&space, &o)?,
                    None => WeightOrdering::standard(space.datum()),
                };
                let mut rec = Recognizer::new(&space, ord)?;
                if strict {
                    rec = rec.strict();
                }
                let r = rec.recognize(oracle)?;
                (r.w, r.log)
            };
            Ok(match common.format {
                Format::Json => pretty(json!({
                    "w": element_json(&space, w),
                    "queries": log.count(),
                    "log": log.to_json(&space),
                })),
                _ => format!(
                    "w = {}; queries = {} ({})",
                    element_name(&space, w),
                    log.count(),
                    coordinates(&space, &log.weights())
                ),
            })
        }
        Command::Tree { common, optimal } => {
            let space = space(&common)?;
            let strategy = if optimal { TreeStrategy::Optimal } else { TreeStrategy::Algorithmic };
            let tree = build_decision_tree(&space, strategy)?;
            let name = if optimal { "optimal" } else { "algorithmic" };
            let root = tree.root_query().map(|id| space.format_coordinate(id)).unwrap_or_else(|| "-".into());
            Ok(match common.format {
                Format::Dot => tree.to_dot(&space),
                Format::Json => pretty(json!({
                    "strategy": name,
                    "depth": tree.depth(),
                    "root": root,
                    "paths": tree.paths().iter().map(|(path, w)| json!({
                        "queries": path.iter().map(|&(id, b)| format!("{}={}", space.format_coordinate(id), b as u8)).collect::<Vec<_>>(),
                        "w": element_name(&space, *w),
                    })).collect::<Vec<_>>(),
                })),
                Format::Plain => {
                    let mut out = format!("strategy = {name}; depth = {}; root = {root}\n", tree.depth());
                    for (path, w) in tree.paths() {
                        let q: Vec<String> = path
                            .iter()
                            .map(|&(id, b)| format!("{}={}", space.format_coordinate(id), b as u8))
                            .collect();
                        out.push_str(&format!("{}: {}\n", element_name(&space, w), q.join(", ")));
                    }
                    out
                }
            })
        }
        Command::Base { common } => {
            no_dot(common.format, "base")?;
            let space = space(&common)?;
            let base = WeylBase::new(&space)?;
            Ok(match common.format {
                Format::Json => pretty(json!({
                    "size": base.len(),
                    "minimal": base.is_minimal(),
                    "elements": base.to_json(),
                })),
                _ => {
                    let g = space.group();
                    let type_a = g.check_type_a().is_ok();
                    let mut out = String::new();
                    for (b, &id) in base.elements.iter().zip(&base.weights) {
                        let name = if type_a {
                            format!("{} {}", g.to_perm(b.element), g.format_word(b.element))
                        } else {
                            g.format_word(b.element)
                        };
                        out.push_str(&format!("{} {}\n", space.format_coordinate(id), name));
                    }
                    out
                }
            })
        }
        Command::PatternsPoset { common, coords, seed } => {
            let space = space(&common)?;
            let coords = match coords {
                Some(c) => c.split(',').map(|t| space.parse(t)).collect::<Result<Vec<_>, _>>()?,
                None if common.group == "A2" => {
                    ["2", "3", "13", "23"].iter().map(|t| space.parse(t)).collect::<Result<Vec<_>, _>>()?
                }
                None => bail!(Error::Parse("--coords is required outside A2".into())),
            };
            let set = realizable_restricted_patterns(&space, &coords, seed)?;
            let poset = pattern_poset(&set);
            Ok(match common.format {
                Format::Dot => poset.to_dot(&space),
                Format::Json => pretty(poset.to_json(&space)),
                Format::Plain => {
                    let mut out = format!(
                        "coords = {}; patterns = {}; covers = {}; {}\n",
                        coordinates(&space, &coords),
                        poset.vertices.len(),
                        poset.covers.len(),
                        if set.certified { "complete" } else { "sampled" }
                    );
                    for v in &poset.vertices {
                        let cells: Vec<String> = v.cells.iter().map(|&w| element_name(&space, w)).collect();
                        out.push_str(&format!("{} {}\n", bitstring(&v.bits), cells.join(" ")));
                    }
                    out
                }
            })
        }
        Command::Bounds { format, witness, feedback_free, defining, chain } => {
            no_dot(format, "bounds")?;
            let json_out = format == Format::Json;
            if let Some(k) = witness {
                let fam = construct_witness_family(k)?;
                return Ok(if json_out {
                    pretty(fam.to_json())
                } else {
                    format!(
                        "k = {k}; n = {}; w = {}; |U| = {}; max coverage = {}; lower bound = {}; codimension = {}",
                        fam.n(),
                        fam.w,
                        fam.members.len(),
                        fam.max_coverage(),
                        fam.lower_bound(),
                        fam.codimension()
                    )
                });
            }
            if let Some(n) = feedback_free {
                let f = feedback_free_min_set(n)?;
                return Ok(if json_out {
                    pretty(f.to_json())
                } else {
                    let fmt = |set: &Vec<schubert::Subset>| {
                        set.iter().map(|s| format!("p{s}")).collect::<Vec<_>>().join(", ")
                    };
                    let mut out = format!(
                        "n = {n}; size = {}; lower bound = {}; minimum sets = {}\n",
                        f.size,
                        f.lower_bound,
                        f.minima.len()
                    );
                    if let Some(full) = &f.full_minima {
                        out.push_str(&format!("separating every realizable pattern: {}\n", full.len()));
                        for set in full {
                            out.push_str(&format!("  {}\n", fmt(set)));
                        }
                    } else if let Some(first) = f.minima.first() {
                        out.push_str(&format!("example: {}\n", fmt(first)));
                    }
                    out
                });
            }
            if let Some(w) = defining {
                let p = Perm::parse(&w)?;
                let bound = defining_set_lower_bound(&p)?;
                let space = PluckerSpace::from_name(&format!("A{}", p.n() - 1))?;
                let upper = variety_equation_count(&space, space.group().from_perm(&p)?);
                return Ok(if json_out {
                    let mut v = bound.to_json();
                    v["upper_bound"] = json!(upper);
                    pretty(v)
                } else {
                    let cert: Vec<String> = bound.certificate.iter().map(|s| format!("p{s}")).collect();
                    format!("w = {p}; lower bound = {} ({}); upper bound = {upper}", bound.bound, cert.join(", "))
                });
            }
            let k = chain.expect("clap requires one bound");
            let report = chain_corollary_check(k)?;
            Ok(if json_out {
                pretty(report.to_json())
            } else {
                let chain: Vec<String> = report.chain.iter().map(|p| p.to_string()).collect();
                format!(
                    "k = {k}; steps = {}; per-step bound = {}; chain = {}",
                    report.steps(),
                    report.per_step_bound,
                    chain.join(" < ")
                )
            })
        }
        Command::Economical { common } => {
            no_dot(common.format, "economical")?;
            let space = space(&common)?;
            let datum = space.datum();
            let all: Vec<usize> = (0..datum.rank()).collect();
            let economical = economical_indices(datum);
            let standard = WeightOrdering::standard(datum);
            let standard_ok = is_economical_ordering(datum, &standard);
            let rows: Vec<(usize, usize, usize)> =
                all.iter().map(|&i| (i + 1, roots_r(datum, i).len(), orbit_size(datum, i, &all))).collect();
            Ok(match common.format {
                Format::Json => pretty(json!({
                    "group": datum.name(),
                    "economical": economical.iter().map(|i| i + 1).collect::<Vec<_>>(),
                    "nodes": rows.iter().map(|&(i, r, o)| json!({"node": i, "roots": r, "orbit": o})).collect::<Vec<_>>(),
                    "standard_ordering": standard.to_string(),
                    "standard_is_economical": standard_ok,
                })),
                _ => {
                    let mut out = String::new();
                    for &(i, r, o) in &rows {
                        let tag = if r + 1 == o { "economical" } else { "not economical" };
                        out.push_str(&format!("w{i}: |R| = {r}, orbit = {o}, {tag}\n"));
                    }
                    out.push_str(&format!(
                        "standard ordering {standard}: {}\n",
                        if standard_ok { "economical" } else { "not economical" }
                    ));
                    out
                }
            })
        }
        Command::Sample { common, w, seed } => {
            no_dot(common.format, "sample")?;
            let space = space(&common)?;
            let w = space.parse_element(&w)?;
            let p = space.group().to_perm(w);
            let flag = random_cell_point(&space, &p, seed)?;
            Ok(match common.format {
                Format::Json => pretty(flag.to_json()),
                _ => flag.to_string(),
            })
        }
    }
}
