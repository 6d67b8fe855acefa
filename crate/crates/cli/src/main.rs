use std::path::{Path, PathBuf};
use std::process::ExitCode;

use acquaintance::ac_one::{
    deterministic_strategy, randomized_strategy, structure_audit, AcOneError, AcOnePartition, StructureAudit,
};
use acquaintance::bounds::{full_report, report_with_separator, BoundsReport};
use acquaintance::dynamics::{
    read_strategy, verify_acquaintance, write_strategy, Strategy, StrategyFormatError, StrategyMeta,
};
use acquaintance::exact::{exact_ac_with_cap, ExactOutcome, DEFAULT_VERTEX_CAP};
use acquaintance::graph::{generate, long_path, read_graph, write_graph, FamilySpec, Graph};
use acquaintance::hardness::{format_coloring, plant_equicolorable, read_coloring, reduce, ColoredGraph};
use acquaintance::strategies::{
    best_strategy, binary_tree_strategy, clique_ring_strategy, complete_bipartite_strategy, detect_family,
    dfs_baseline, hamiltonian_strategy, long_path_strategy, max_degree_strategy, octopus_strategy, path_strategy,
    DetectedFamily, OctopusMode, LONG_PATH_EFFORT,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

/// Version of every `--json` report.
const REPORT_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "acq", version, about = "Acquaintance time of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph from a named family.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        /// Comma-separated family parameters, e.g. `4` or `3,5` or `20,0.3`.
        #[arg(long, value_delimiter = ',', required = true)]
        params: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Where to write the planted coloring (`plant` only).
        #[arg(long)]
        coloring: Option<PathBuf>,
    },
    /// Certified lower bounds.
    Bounds {
        graph: PathBuf,
        /// Use this separator for the bottleneck bound instead of searching.
        #[arg(long, value_delimiter = ',')]
        separator: Option<Vec<usize>>,
        #[arg(long)]
        json: bool,
    },
    /// Build a strategy.
    Strat {
        #[arg(long, value_enum, default_value = "auto")]
        method: Method,
        graph: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Octopus construction; the shorter of the two by default.
        #[arg(long, value_enum)]
        octopus_mode: Option<OctopusChoice>,
        /// Seed for the path search used by `ham` and `longpath`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Check that a strategy makes every pair of agents meet.
    Verify {
        graph: PathBuf,
        strategy: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Exact acquaintance time of a small graph.
    Exact {
        graph: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_rounds: usize,
        #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
        cap: usize,
        /// Write the optimal witness here.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Algorithms for graphs of acquaintance time one.
    Ac1 {
        #[arg(long, value_enum, default_value = "audit")]
        mode: Ac1Mode,
        graph: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// `c` of the deterministic algorithm.
        #[arg(long, default_value_t = 1)]
        c: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Double rounds per group pair before a restart.
        #[arg(long)]
        round_cap: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Build the reduction graph and its witness from an equitable coloring.
    Reduce {
        #[arg(long)]
        t: usize,
        /// Coloring file: header `n K`, then one colour per vertex.
        coloring: PathBuf,
        /// The colored graph.
        #[arg(long)]
        graph: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        witness: PathBuf,
    },
    /// Necessary conditions for acquaintance time one.
    Audit {
        graph: PathBuf,
        /// JSON `{"pairs": [[a, b], ...], "rest": [...]}` to check as well.
        #[arg(long)]
        partition: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Path,
    Cycle,
    Complete,
    #[value(alias = "kbip")]
    CompleteBipartite,
    Hypercube,
    #[value(alias = "tree")]
    BinaryTree,
    Barbell,
    #[value(alias = "ring")]
    CliqueRing,
    Octopus,
    Gnp,
    /// Random graph with a planted equitable coloring: `n,K,p`.
    Plant,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    Path,
    Ham,
    Tree,
    Kbip,
    Ring,
    Octopus,
    Longpath,
    Maxdeg,
    Baseline,
}

#[derive(Clone, Copy, ValueEnum)]
enum OctopusChoice {
    Pairs,
    Center,
}

#[derive(Clone, Copy, ValueEnum)]
enum Ac1Mode {
    Audit,
    Det,
    Rand,
}

/// Exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok = 0,
    Negative = 1,
    Usage = 2,
    AtLeastTwo = 3,
}

struct Failure {
    status: Status,
    msg: String,
}

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure {
        status: Status::Usage,
        msg: msg.to_string(),
    }
}

type Outcome = Result<Status, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = match run(cli.command) {
        Ok(s) => s,
        Err(f) => {
            eprintln!("acq: {}", f.msg);
            f.status
        }
    };
    ExitCode::from(status as u8)
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Gen {
            family,
            params,
            seed,
            output,
            coloring,
        } => gen(family, &params, seed, output.as_deref(), coloring.as_deref()),
        Command::Bounds { graph, separator, json } => bounds(&load(&graph)?, separator.as_deref(), json),
        Command::Strat {
            method,
            graph,
            output,
            octopus_mode,
            seed,
            json,
        } => strat(method, &load(&graph)?, output.as_deref(), octopus_mode, seed, json),
        Command::Verify { graph, strategy, json } => verify(&load(&graph)?, &strategy, json),
        Command::Exact {
            graph,
            max_rounds,
            cap,
            output,
            json,
        } => exact(&load(&graph)?, max_rounds, cap, output.as_deref(), json),
        Command::Ac1 {
            mode,
            graph,
            output,
            c,
            seed,
            round_cap,
            json,
        } => ac1(mode, &load(&graph)?, output.as_deref(), c, seed, round_cap, json),
        Command::Reduce {
            t,
            coloring,
            graph,
            output,
            witness,
        } => reduce_cmd(t, &coloring, &load(&graph)?, &output, &witness),
        Command::Audit { graph, partition, json } => audit(&load(&graph)?, partition.as_deref(), json),
    }
}

fn load(path: &Path) -> Result<Graph, Failure> {
    read_graph(path).map_err(usage)
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_json(mut v: Value) {
    v["format_version"] = json!(REPORT_VERSION);
    println!("{v}");
}

fn param<T: std::str::FromStr>(params: &[String], i: usize) -> Result<T, Failure> {
    let raw = params
        .get(i)
        .ok_or_else(|| usage(format!("missing parameter {}", i + 1)))?;
    raw.trim().parse().map_err(|_| usage(format!("bad parameter `{raw}`")))
}

fn gen(family: Family, params: &[String], seed: u64, output: Option<&Path>, coloring: Option<&Path>) -> Outcome {
    let count = match family {
        Family::CompleteBipartite | Family::CliqueRing | Family::Octopus | Family::Gnp => 2,
        Family::Plant => 3,
        _ => 1,
    };
    if params.len() != count {
        return Err(usage(format!("expected {count} parameter(s), got {}", params.len())));
    }
    if coloring.is_some() && !matches!(family, Family::Plant) {
        return Err(usage("--coloring only applies to --family plant"));
    }
    let spec = match family {
        Family::Path => FamilySpec::Path(param(params, 0)?),
        Family::Cycle => FamilySpec::Cycle(param(params, 0)?),
        Family::Complete => FamilySpec::Complete(param(params, 0)?),
        Family::CompleteBipartite => FamilySpec::CompleteBipartite(param(params, 0)?, param(params, 1)?),
        Family::Hypercube => FamilySpec::Hypercube(param(params, 0)?),
        Family::BinaryTree => FamilySpec::BinaryTree(param(params, 0)?),
        Family::Barbell => FamilySpec::Barbell(param(params, 0)?),
        Family::CliqueRing => FamilySpec::CliqueRing(param(params, 0)?, param(params, 1)?),
        Family::Octopus => FamilySpec::Octopus(param(params, 0)?, param(params, 1)?),
        Family::Gnp => FamilySpec::Gnp(param(params, 0)?, param(params, 1)?, seed),
        Family::Plant => {
            let cg = plant_equicolorable(param(params, 0)?, param(params, 1)?, param(params, 2)?, seed)
                .map_err(|e| usage(format!("{e:?}")))?;
            if let Some(path) = coloring {
                write_out(Some(path), &format_coloring(&cg))?;
            }
            write_out(output, &write_graph(cg.graph()))?;
            return Ok(Status::Ok);
        }
    };
    let g = generate(&spec).map_err(usage)?;
    write_out(output, &write_graph(&g))?;
    Ok(Status::Ok)
}

fn bounds(g: &Graph, separator: Option<&[usize]>, json: bool) -> Outcome {
    let report: BoundsReport = match separator {
        Some(sep) => report_with_separator(g, sep),
        None => full_report(g),
    }
    .map_err(usage)?;
    if json {
        print_json(serde_json::to_value(&report).expect("plain data"));
    } else {
        println!("diameter_bound {}", report.diameter_bound);
        println!("edge_bound {}", report.edge_bound);
        if let Some(b) = &report.bottleneck {
            let sep: Vec<String> = b.separator.iter().map(usize::to_string).collect();
            println!("bottleneck {} separator {}", b.bound, sep.join(","));
        }
        println!("best_lower {}", report.best_lower);
    }
    Ok(Status::Ok)
}

fn family_mismatch(method: &str) -> Failure {
    usage(format!(
        "graph is not in the numbering produced by `gen` for method `{method}`"
    ))
}

fn strat(
    method: Method,
    g: &Graph,
    output: Option<&Path>,
    octopus: Option<OctopusChoice>,
    seed: u64,
    json: bool,
) -> Outcome {
    let fail = |e: acquaintance::strategies::StrategyError| usage(e);
    let detected = detect_family(g);
    let (s, generator, params): (Strategy, String, Value) = match method {
        Method::Auto => {
            let best = best_strategy(g).map_err(fail)?;
            (best.strategy, best.generator, json!({}))
        }
        Method::Path => match detected {
            Some(DetectedFamily::Path(n)) => (path_strategy(n), "path".into(), json!({ "n": n })),
            _ => return Err(family_mismatch("path")),
        },
        Method::Tree => match detected {
            Some(DetectedFamily::BinaryTree(d)) => (
                binary_tree_strategy(d).map_err(fail)?,
                "binary_tree".into(),
                json!({ "depth": d }),
            ),
            _ => return Err(family_mismatch("tree")),
        },
        Method::Kbip => match detected {
            Some(DetectedFamily::CompleteBipartite(r)) => (
                complete_bipartite_strategy(r).map_err(fail)?,
                "complete_bipartite".into(),
                json!({ "r": r }),
            ),
            _ => return Err(family_mismatch("kbip")),
        },
        Method::Ring => match detected {
            Some(DetectedFamily::CliqueRing(r, l)) => (
                clique_ring_strategy(r, l).map_err(fail)?,
                "clique_ring".into(),
                json!({ "r": r, "l": l }),
            ),
            _ => return Err(family_mismatch("ring")),
        },
        Method::Octopus => match detected {
            Some(DetectedFamily::Octopus(r, l)) => {
                let pick = |mode| octopus_strategy(r, l, mode).map_err(fail);
                let (s, name) = match octopus {
                    Some(OctopusChoice::Pairs) => (pick(OctopusMode::Pairs)?, "pairs"),
                    Some(OctopusChoice::Center) => (pick(OctopusMode::Center)?, "center"),
                    None => {
                        let (a, b) = (pick(OctopusMode::Pairs)?, pick(OctopusMode::Center)?);
                        if a.len() <= b.len() {
                            (a, "pairs")
                        } else {
                            (b, "center")
                        }
                    }
                };
                (s, "octopus".into(), json!({ "r": r, "l": l, "mode": name }))
            }
            _ => return Err(family_mismatch("octopus")),
        },
        Method::Ham => {
            let path = long_path(g, LONG_PATH_EFFORT, seed);
            if path.len() != g.n() {
                return Err(usage(format!(
                    "no Hamiltonian path found (longest found has {} vertices)",
                    path.len()
                )));
            }
            (
                hamiltonian_strategy(g, &path).map_err(fail)?,
                "hamiltonian".into(),
                json!({ "path": path }),
            )
        }
        Method::Longpath => {
            let path = long_path(g, LONG_PATH_EFFORT, seed);
            (
                long_path_strategy(g, &path).map_err(fail)?,
                "long_path".into(),
                json!({ "path_vertices": path.len(), "seed": seed }),
            )
        }
        Method::Maxdeg => (max_degree_strategy(g).map_err(fail)?, "max_degree".into(), json!({})),
        Method::Baseline => (dfs_baseline(g).map_err(fail)?, "dfs_baseline".into(), json!({})),
    };
    let verdict = verify_acquaintance(g, &s).map_err(usage)?;
    if !verdict.ok {
        return Err(Failure {
            status: Status::Negative,
            msg: format!("{generator} strategy leaves {} pairs unmet", verdict.missing.len()),
        });
    }
    let text = write_strategy(
        &s,
        Some(StrategyMeta {
            generator: generator.clone(),
            params,
        }),
    );
    match output {
        Some(_) => {
            write_out(output, &text)?;
            if json {
                print_json(json!({ "generator": generator, "rounds": s.len() }));
            } else {
                println!("{generator}: {} rounds", s.len());
            }
        }
        None => write_out(None, &text)?,
    }
    Ok(Status::Ok)
}

fn verify(g: &Graph, path: &Path, json: bool) -> Outcome {
    let s = match read_strategy(path, g) {
        Ok((s, _)) => s,
        Err(StrategyFormatError::Invalid(e)) => {
            if json {
                print_json(json!({ "witness": false, "error": e.to_string() }));
            } else {
                println!("not a witness: {e}");
            }
            return Ok(Status::Negative);
        }
        Err(e) => return Err(usage(e)),
    };
    let v = verify_acquaintance(g, &s).map_err(usage)?;
    if json {
        print_json(json!({
            "witness": v.ok,
            "rounds": s.len(),
            "missing": v.missing,
        }));
    } else if v.ok {
        println!("witness: {} rounds", s.len());
    } else {
        let shown: Vec<String> = v.missing.iter().take(10).map(|(a, b)| format!("{a}-{b}")).collect();
        println!(
            "not a witness: {} pairs never meet ({})",
            v.missing.len(),
            shown.join(" ")
        );
    }
    Ok(if v.ok { Status::Ok } else { Status::Negative })
}

fn exact(g: &Graph, max_rounds: usize, cap: usize, output: Option<&Path>, json: bool) -> Outcome {
    match exact_ac_with_cap(g, max_rounds, cap).map_err(usage)? {
        ExactOutcome::Solved { value, witness } => {
            if let Some(p) = output {
                let meta = StrategyMeta {
                    generator: "exact".into(),
                    params: json!({ "value": value }),
                };
                write_out(Some(p), &write_strategy(&witness, Some(meta)))?;
            }
            if json {
                print_json(json!({ "solved": true, "value": value }));
            } else {
                println!("{value}");
            }
            Ok(Status::Ok)
        }
        ExactOutcome::Exceeded { max_rounds } => {
            if json {
                print_json(json!({ "solved": false, "max_rounds": max_rounds }));
            } else {
                println!("> {max_rounds}");
            }
            Ok(Status::Negative)
        }
    }
}

fn ac_one_failure(e: AcOneError, json: bool) -> Outcome {
    match e {
        AcOneError::AtLeastTwo(cert) => {
            if json {
                print_json(json!({ "at_least_two": true, "certificate": cert }));
            } else {
                println!("acquaintance time is at least 2: {cert}");
            }
            Ok(Status::AtLeastTwo)
        }
        AcOneError::RestartsExhausted { .. } => Err(Failure {
            status: Status::Negative,
            msg: e.to_string(),
        }),
        other => Err(usage(other)),
    }
}

fn ac1(
    mode: Ac1Mode,
    g: &Graph,
    output: Option<&Path>,
    c: usize,
    seed: u64,
    round_cap: Option<usize>,
    json: bool,
) -> Outcome {
    let (s, meta) = match mode {
        Ac1Mode::Audit => {
            let a = structure_audit(g, None).map_err(usage)?;
            return match a.certificate() {
                Some(cert) => ac_one_failure(AcOneError::AtLeastTwo(cert), json),
                None => {
                    print_audit(&a, json);
                    Ok(Status::Ok)
                }
            };
        }
        Ac1Mode::Det => match deterministic_strategy(g, c) {
            Ok(s) => (s, json!({ "c": c })),
            Err(e) => return ac_one_failure(e, json),
        },
        Ac1Mode::Rand => match randomized_strategy(g, seed, round_cap) {
            Ok(run) => (run.strategy, json!({ "seed": run.seed, "restarts": run.restarts })),
            Err(e) => return ac_one_failure(e, json),
        },
    };
    let generator = match mode {
        Ac1Mode::Det => "ac1_deterministic",
        _ => "ac1_randomized",
    };
    let text = write_strategy(
        &s,
        Some(StrategyMeta {
            generator: generator.into(),
            params: meta.clone(),
        }),
    );
    match output {
        Some(_) => {
            write_out(output, &text)?;
            if json {
                print_json(json!({ "generator": generator, "rounds": s.len(), "params": meta }));
            } else {
                println!("{generator}: {} rounds", s.len());
            }
        }
        None => write_out(None, &text)?,
    }
    Ok(Status::Ok)
}

fn reduce_cmd(t: usize, coloring: &Path, g: &Graph, output: &Path, witness: &Path) -> Outcome {
    let (k, colors) = read_coloring(coloring).map_err(|e| usage(format!("{e:?}")))?;
    let cg = ColoredGraph::new(g.clone(), k, colors).map_err(|e| usage(format!("{e:?}")))?;
    let (h, w) = reduce(&cg, t).map_err(|e| usage(format!("{e:?}")))?;
    write_out(Some(output), &write_graph(&h))?;
    let meta = StrategyMeta {
        generator: "reduce".into(),
        params: json!({ "t": t, "k": k }),
    };
    write_out(Some(witness), &write_strategy(&w, Some(meta)))?;
    println!(
        "reduction graph: {} vertices, {} edges; witness: {} rounds",
        h.n(),
        h.m(),
        w.len()
    );
    Ok(Status::Ok)
}

fn print_audit(a: &StructureAudit, json: bool) {
    if json {
        let mut v = serde_json::to_value(a).expect("plain data");
        v["passed"] = json!(a.passed());
        print_json(v);
        return;
    }
    let mark = |ok: bool| if ok { "ok" } else { "FAIL" };
    println!("vertices {} edges {}", a.n, a.edges);
    println!("edge_count {}", mark(a.edge_count_ok));
    println!("high_degree {} ({})", mark(a.high_degree_ok), a.high_degree_count);
    println!(
        "perfect_matching {} (maximum {})",
        mark(a.perfect_matching_ok),
        a.max_matching
    );
    match a.neighbourhood_violation {
        Some((u, v)) => println!("neighbourhood FAIL ({u}, {v})"),
        None => println!("neighbourhood ok"),
    }
    if let Some(p) = &a.partition {
        match &p.violation {
            Some(v) => println!("partition FAIL (item {}: {v:?})", v.item()),
            None => println!("partition ok"),
        }
        println!("partition degree_sum {}", mark(p.degree_sum_ok));
        println!("partition rest_degree {}", mark(p.rest_degree_ok));
    }
    println!("{}", if a.passed() { "passed" } else { "failed" });
}

fn audit(g: &Graph, partition: Option<&Path>, json: bool) -> Outcome {
    let p: Option<AcOnePartition> = match partition {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            Some(serde_json::from_str(&text).map_err(|e| usage(format!("partition: {e}")))?)
        }
        None => None,
    };
    let a = structure_audit(g, p.as_ref()).map_err(usage)?;
    print_audit(&a, json);
    let partition_ok = a
        .partition
        .as_ref()
        .is_none_or(|p| p.violation.is_none() && p.degree_sum_ok && p.rest_degree_ok);
    Ok(if a.passed() && partition_ok {
        Status::Ok
    } else {
        Status::Negative
    })
}
