//! Command-line surface over the ordchrom library: classify patterns,
//! derive and render bound certificates, color avoiders, run the structure
//! detectors, build the lower-bound constructions, and query the exhaustive
//! small-scale oracle.

use std::fs;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::json;

use ordchrom::alternation::is_monotonically_alternating;
use ordchrom::bounds::{classify, derive_upper_bound, Classification};
use ordchrom::color::color_avoider;
use ordchrom::constructions::{
    complete_graph, shift_graph, spindle, spiral_path, tutte_step, DEFAULT_VERTEX_CAP,
};
use ordchrom::embed::{find_all_embeddings, find_embedding};
use ordchrom::graph::Edge;
use ordchrom::oracle::{
    chromatic_number, count_orderings, distinct_orderings, extremal_number, max_chi_avoiders,
};
use ordchrom::patterns::{find_bonnet, find_crossing, find_cycle, find_tangled_path};
use ordchrom::patterns::{PatternWitness, DEFAULT_PATH_BUDGET};
use ordchrom::{Error, OrderedGraph};

#[derive(Parser)]
#[command(
    name = "ordchrom",
    version,
    about = "Ordered graphs with a forbidden ordered subgraph",
    after_help = "Graphs are written as \"OG n: u-v, u-v, ...\" with vertices 1..=n in their \
                  integer order; --graph and --pattern accept that form inline or the path of \
                  a file containing it. The exact-chromatic search budget can be raised with \
                  the ORDCHROM_NODE_BUDGET environment variable."
)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphArg {
    /// Ordered graph, inline ("OG 4: 1-2, 2-3") or a file path.
    #[arg(long, value_name = "SPEC")]
    graph: String,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a pattern: infinite, finite with certified bounds, or unknown.
    Classify(GraphArg),
    /// Derive the smallest certified upper bound and print the chain.
    Bound(GraphArg),
    /// Properly color a host that avoids the pattern, within the certified bound.
    Color {
        /// Pattern whose certificate drives the coloring.
        #[arg(long, value_name = "SPEC")]
        pattern: String,
        /// Host graph; must avoid the pattern.
        #[arg(long, value_name = "SPEC")]
        graph: String,
    },
    /// Search a graph for the structures that force an infinite supremum.
    Detect(GraphArg),
    /// Print the segment decomposition and the interval chromatic number.
    Segments(GraphArg),
    /// Test a tree for monotone alternation; print the split or the failures.
    Monoalt(GraphArg),
    /// Build one of the named benchmark graphs.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Find order-preserving copies of a pattern inside a host.
    Embed {
        #[arg(long, value_name = "SPEC")]
        pattern: String,
        #[arg(long, value_name = "SPEC")]
        graph: String,
        /// List every copy instead of the lexicographically first.
        #[arg(long)]
        all: bool,
    },
    /// Exhaustive small-scale searches: ground truth to check bounds against.
    Oracle {
        #[command(subcommand)]
        op: OracleOp,
    },
    /// Classify every ordering of the seven forests with at most three edges.
    Table,
}

#[derive(Subcommand)]
enum ConstructKind {
    /// Complete graph on n vertices.
    Complete {
        #[arg(long)]
        n: usize,
    },
    /// Shift graph: the 2-subsets of 1..=n in lexicographic order, with
    /// {a,b} adjacent to {b,c}.
    Shift {
        #[arg(long)]
        n: usize,
    },
    /// Inward-spiral path on k vertices (traversal 1, k, 2, k-1, ...).
    Spiral {
        #[arg(long)]
        k: usize,
    },
    /// Overlapping cliques needing k colors while avoiding the spiral path.
    Spindle {
        #[arg(long)]
        k: usize,
    },
    /// Blow-up of a base avoider along a minimal tangled path: still avoids
    /// the path, not (k-1)-colorable once the base needs k-1 colors.
    Tutte {
        /// Minimal tangled path to keep avoiding.
        #[arg(long, value_name = "SPEC")]
        pattern: String,
        /// Base avoider to blow up.
        #[arg(long, value_name = "SPEC")]
        base: String,
        #[arg(long)]
        k: usize,
        /// Refuse to build graphs with more vertices than this.
        #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
        cap: u64,
    },
}

#[derive(Subcommand)]
enum OracleOp {
    /// Exact chromatic number with a lower-bound certificate.
    Chi(GraphArg),
    /// Maximum chromatic number over hosts on n vertices avoiding the pattern.
    Maxchi {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        n: usize,
        /// Fail unless the search enumerated every host.
        #[arg(long, conflicts_with = "heuristic")]
        exhaustive: bool,
        /// Accept a seeded random sample (lower bound only) for n > 7.
        #[arg(long)]
        heuristic: bool,
    },
    /// Maximum edge count over hosts on n vertices avoiding the pattern.
    Extremal {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "heuristic")]
        exhaustive: bool,
        #[arg(long)]
        heuristic: bool,
    },
    /// Count and list the distinct vertex orderings of an unordered graph,
    /// given as an edge list in the OG form (vertex numbers are labels only).
    Orderings(GraphArg),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn load_graph(spec: &str) -> Result<OrderedGraph> {
    let trimmed = spec.trim();
    if trimmed.starts_with("OG") {
        return Ok(OrderedGraph::parse(trimmed)?);
    }
    let text = fs::read_to_string(trimmed)
        .with_context(|| format!("cannot read graph file {trimmed}"))?;
    OrderedGraph::parse(text.trim()).with_context(|| format!("in file {trimmed}"))
}

fn edge_list(edges: &[Edge]) -> String {
    let parts: Vec<String> = edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
    parts.join(", ")
}

fn describe_witness(w: &PatternWitness) -> String {
    match w {
        PatternWitness::Cycle { vertices } => format!("cycle through {vertices:?}"),
        PatternWitness::Crossing { first, second } => {
            format!("crossing edges {}-{} and {}-{}", first.0, first.1, second.0, second.1)
        }
        PatternWitness::Bonnet { member, image } => {
            format!("bonnet {} at {image:?}", member.name())
        }
        PatternWitness::TangledPath(t) => format!(
            "tangled path {:?} split at {} ({}-{} crossing {}-{})",
            t.path, t.split_vertex, t.left_edge.0, t.left_edge.1, t.right_edge.0, t.right_edge.1
        ),
    }
}

fn run(cli: Cli) -> Result<()> {
    let json = cli.json;
    match cli.command {
        Command::Classify(arg) => {
            let g = load_graph(&arg.graph)?;
            let c = classify(&g)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "pattern": g.to_string(),
                        "classification": c,
                    }))?
                );
                return Ok(());
            }
            println!("pattern: {g}");
            println!("verdict: {}", c.verdict());
            match c {
                Classification::Infinite { witness } => {
                    println!("witness: {}", describe_witness(&witness));
                }
                Classification::Finite { lower, upper, derivation } => {
                    println!("lower: {lower}");
                    println!("upper: {upper}");
                    print!("derivation:\n{}", derivation.render());
                }
                Classification::Unknown { diagnosis } => {
                    println!("diagnosis: {diagnosis}");
                }
            }
        }
        Command::Bound(arg) => {
            let g = load_graph(&arg.graph)?;
            let d = derive_upper_bound(&g)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "pattern": g.to_string(),
                        "derivation": d,
                    }))?
                );
                return Ok(());
            }
            match d {
                Some(d) => print!("{}", d.render()),
                None => println!("no terminating reduction chain for {g}"),
            }
        }
        Command::Color { pattern, graph } => {
            let h = load_graph(&pattern)?;
            let g = load_graph(&graph)?;
            let Classification::Finite { upper, derivation, .. } = classify(&h)? else {
                bail!("pattern {h} has no certified finite bound; nothing to color against");
            };
            let colors = color_avoider(&h, &g, &derivation)?;
            let used = colors.iter().max().map_or(0, |m| m + 1);
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "pattern": h.to_string(),
                        "host": g.to_string(),
                        "bound": upper.to_string(),
                        "coloring": colors,
                        "used": used,
                    }))?
                );
                return Ok(());
            }
            println!("pattern: {h}");
            println!("host: {g}");
            println!("bound: {upper}");
            let rendered: Vec<String> = colors.iter().map(|c| c.to_string()).collect();
            println!("coloring: {}", rendered.join(" "));
            println!("colors used: {used}");
        }
        Command::Detect(arg) => {
            let g = load_graph(&arg.graph)?;
            let cycle = find_cycle(&g);
            let crossing = find_crossing(&g);
            let bonnet = find_bonnet(&g);
            let tangled = match find_tangled_path(&g, DEFAULT_PATH_BUDGET) {
                Ok(t) => Ok(t),
                Err(Error::BudgetExhausted { explored }) => Err(explored),
                Err(e) => return Err(e.into()),
            };
            let forces_infinite = cycle.is_some()
                || bonnet.is_some()
                || matches!(tangled, Ok(Some(_)));
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "graph": g.to_string(),
                        "cycle": cycle,
                        "crossing": crossing,
                        "bonnet": bonnet.as_ref().map(|(id, e)| json!({
                            "member": id.name(),
                            "image": e.image(),
                        })),
                        "tangled": match &tangled {
                            Ok(t) => json!(t),
                            Err(explored) => json!({ "budget_exhausted_after": explored }),
                        },
                        "forces_infinite": forces_infinite,
                    }))?
                );
                return Ok(());
            }
            println!("graph: {g}");
            match cycle {
                Some(v) => println!("cycle: {v:?}"),
                None => println!("cycle: none"),
            }
            match crossing {
                Some((e, f)) => println!("crossing: {}-{} and {}-{}", e.0, e.1, f.0, f.1),
                None => println!("crossing: none"),
            }
            match bonnet {
                Some((id, e)) => println!("bonnet: {} at {:?}", id.name(), e.image()),
                None => println!("bonnet: none"),
            }
            match tangled {
                Ok(Some(t)) => println!(
                    "tangled path: {:?} split at {}",
                    t.path, t.split_vertex
                ),
                Ok(None) => println!("tangled path: none"),
                Err(explored) => {
                    println!("tangled path: undecided, search budget hit after {explored} paths")
                }
            }
            println!(
                "forces infinite supremum: {}",
                if forces_infinite { "yes" } else { "no" }
            );
        }
        Command::Segments(arg) => {
            let g = load_graph(&arg.graph)?;
            let d = g.segments()?;
            let (k, intervals) = g.interval_chromatic_number();
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "graph": g.to_string(),
                        "decomposition": d,
                        "interval_chromatic_number": k,
                        "intervals": intervals,
                    }))?
                );
                return Ok(());
            }
            println!("graph: {g}");
            println!("inner cuts: {:?}", d.inner_cuts);
            println!("segments:");
            for s in &d.segments {
                if s.edges.is_empty() {
                    println!("  [{}, {}]: (no edges)", s.lo, s.hi);
                } else {
                    println!("  [{}, {}]: {}", s.lo, s.hi, edge_list(&s.edges));
                }
            }
            println!("interval chromatic number: {k} (intervals {intervals:?})");
        }
        Command::Monoalt(arg) => {
            let t = load_graph(&arg.graph)?;
            let r = is_monotonically_alternating(&t)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "tree": t.to_string(),
                        "result": r,
                    }))?
                );
                return Ok(());
            }
            println!("tree: {t}");
            match &r.split {
                Some(s) => {
                    println!("monotonically alternating: yes");
                    println!("split after position: {}", s.p);
                    println!("left edges: {}", edge_list(&s.s_left));
                    println!("right edges: {}", edge_list(&s.s_right));
                }
                None => {
                    println!("monotonically alternating: no");
                    for (p, f) in &r.failures {
                        println!("  split {p}: {f:?}");
                    }
                }
            }
        }
        Command::Construct { kind } => return construct(kind, json),
        Command::Embed { pattern, graph, all } => {
            let h = load_graph(&pattern)?;
            let g = load_graph(&graph)?;
            let found: Vec<Vec<usize>> = if all {
                find_all_embeddings(&h, &g).iter().map(|e| e.image().to_vec()).collect()
            } else {
                find_embedding(&h, &g).map(|e| e.image().to_vec()).into_iter().collect()
            };
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "pattern": h.to_string(),
                        "host": g.to_string(),
                        "embeddings": found,
                    }))?
                );
                return Ok(());
            }
            println!("pattern: {h}");
            println!("host: {g}");
            if found.is_empty() {
                println!("no copy of the pattern in the host");
            } else {
                for image in found {
                    println!("embedding: {image:?}");
                }
            }
        }
        Command::Oracle { op } => return oracle(op, json),
        Command::Table => return table(json),
    }
    Ok(())
}

fn construct(kind: ConstructKind, json: bool) -> Result<()> {
    let (name, g, extra) = match kind {
        ConstructKind::Complete { n } => (format!("complete({n})"), complete_graph(n)?, None),
        ConstructKind::Shift { n } => (format!("shift({n})"), shift_graph(n)?, None),
        ConstructKind::Spiral { k } => (format!("spiral({k})"), spiral_path(k)?, None),
        ConstructKind::Spindle { k } => {
            let (g, avoided) = spindle(k)?;
            (format!("spindle({k})"), g, Some(("avoids", avoided)))
        }
        ConstructKind::Tutte { pattern, base, k, cap } => {
            let p = load_graph(&pattern)?;
            let b = load_graph(&base)?;
            let t = tutte_step(&p, &b, k, cap)?;
            assert!(t.verify_structure(), "emitted blow-up failed its structure check");
            if json {
                println!("{}", serde_json::to_string_pretty(&t)?);
                return Ok(());
            }
            println!("tutte step: base {b} along {p} at k = {k}");
            println!(
                "blocks: {} copies of the base, right block of {} independent vertices",
                t.m_blocks, t.n_right
            );
            println!("vertices: {}", t.graph.n());
            println!("graph: {}", t.graph);
            return Ok(());
        }
    };
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "name": name,
                "graph": g,
                "avoids": extra.as_ref().map(|(_, h)| h.to_string()),
            }))?
        );
        return Ok(());
    }
    println!("{name}: {} vertices, {} edges", g.n(), g.edges().len());
    println!("graph: {g}");
    if let Some((label, h)) = extra {
        println!("{label}: {h}");
    }
    Ok(())
}

fn oracle(op: OracleOp, json: bool) -> Result<()> {
    match op {
        OracleOp::Chi(arg) => {
            let g = load_graph(&arg.graph)?;
            let r = chromatic_number(&g)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&r)?);
                return Ok(());
            }
            println!("graph: {g}");
            println!("chi: {}", r.chi);
            let rendered: Vec<String> = r.coloring.iter().map(|c| c.to_string()).collect();
            println!("coloring: {}", rendered.join(" "));
            match r.certificate {
                ordchrom::oracle::ChiCertificate::Clique { vertices } => {
                    println!("certificate: clique {vertices:?}")
                }
                ordchrom::oracle::ChiCertificate::RefutedColors { colors, nodes } => {
                    println!("certificate: {colors} colors refuted after {nodes} nodes")
                }
            }
        }
        OracleOp::Maxchi { graph, n, exhaustive, .. } => {
            let h = load_graph(&graph.graph)?;
            let r = max_chi_avoiders(&h, n)?;
            report_search(r, exhaustive, json)?;
        }
        OracleOp::Extremal { graph, n, exhaustive, .. } => {
            let h = load_graph(&graph.graph)?;
            let r = extremal_number(&h, n)?;
            report_search(r, exhaustive, json)?;
        }
        OracleOp::Orderings(arg) => {
            let g = load_graph(&arg.graph)?;
            let count = count_orderings(g.n(), g.edges())?;
            let orderings = distinct_orderings(g.n(), g.edges())?;
            if json {
                let listed: Vec<String> = orderings.iter().map(|o| o.to_string()).collect();
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "edge_list": g.to_string(),
                        "count": count,
                        "orderings": listed,
                    }))?
                );
                return Ok(());
            }
            println!("edge list: {g}");
            println!("orderings: {count}");
            for o in orderings {
                println!("  {o}");
            }
        }
    }
    Ok(())
}

fn report_search(r: ordchrom::oracle::SearchReport, require_exhaustive: bool, json: bool) -> Result<()> {
    if require_exhaustive && !r.exhaustive {
        bail!(
            "search on n = {} was a sampled lower bound; exhaustive mode stops at n = 7",
            r.n
        );
    }
    if json {
        println!("{}", serde_json::to_string_pretty(&r)?);
        return Ok(());
    }
    println!("pattern: {}", r.pattern);
    println!("n: {}", r.n);
    println!("value: {}", r.value);
    println!("witness: {}", r.witness);
    println!("examined: {}", r.examined);
    println!("exhaustive: {}", r.exhaustive);
    println!("millis: {}", r.millis);
    Ok(())
}

/// The seven forests with at most three edges.
const FORESTS: [(&str, usize, &[(usize, usize)]); 7] = [
    ("P2", 2, &[(1, 2)]),
    ("S2", 3, &[(1, 2), (1, 3)]),
    ("M2", 4, &[(1, 2), (3, 4)]),
    ("S3", 4, &[(1, 2), (1, 3), (1, 4)]),
    ("P4", 4, &[(1, 2), (2, 3), (3, 4)]),
    ("S2+P2", 5, &[(1, 2), (1, 3), (4, 5)]),
    ("M3", 6, &[(1, 2), (3, 4), (5, 6)]),
];

fn table(json: bool) -> Result<()> {
    let mut rows = Vec::new();
    for (forest, n, edges) in FORESTS {
        let orderings = distinct_orderings(n, edges)?;
        let mut seen: Vec<OrderedGraph> = Vec::new();
        for h in &orderings {
            if seen.contains(h) {
                continue;
            }
            let rev = h.reverse();
            let mirrored = rev != *h;
            seen.push(h.clone());
            seen.push(rev);
            rows.push((forest, h.clone(), mirrored, classify(h)?));
        }
    }
    if json {
        let payload: Vec<serde_json::Value> = rows
            .iter()
            .map(|(forest, h, mirrored, c)| {
                json!({
                    "forest": forest,
                    "pattern": h.to_string(),
                    "covers_mirror": mirrored,
                    "classification": c,
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&payload)?);
        return Ok(());
    }
    let mut current = "";
    for (forest, h, mirrored, c) in &rows {
        if *forest != current {
            current = forest;
            let (_, n, edges) = FORESTS.iter().find(|(f, ..)| f == forest).unwrap();
            let count = count_orderings(*n, edges)?;
            let noun = if count == 1 { "ordering" } else { "orderings" };
            println!("== {forest}: {count} {noun} ==");
        }
        let value = match c {
            Classification::Infinite { witness } => match witness {
                PatternWitness::Cycle { .. } => "infinite (cycle)".into(),
                PatternWitness::Crossing { .. } => "infinite (crossing)".into(),
                PatternWitness::Bonnet { member, .. } => {
                    format!("infinite (bonnet {})", member.name())
                }
                PatternWitness::TangledPath(_) => "infinite (tangled path)".into(),
            },
            Classification::Finite { lower, upper, .. } => {
                if BigUint::from(*lower) == *upper {
                    format!("f = {lower}")
                } else {
                    format!("{lower} <= f <= {upper}")
                }
            }
            Classification::Unknown { .. } => "open".into(),
        };
        println!("  {:<24} {} {value}", h.to_string(), if *mirrored { "*" } else { " " });
    }
    println!();
    println!("*  the value covers the ordering and its mirror image");
    println!("f = v rows are exact: the certified upper bound meets the clique lower bound.");
    println!("Ranged rows are engine-certified upper bounds only; no exact value is asserted.");
    Ok(())
}
