//! Acceptance criteria, one line per criterion.
//!
//! Run with `cargo test -p enumfpt-core --test acceptance`.

use std::collections::{BTreeSet, HashSet};
use std::process::ExitCode;
use std::time::Instant;

use enumfpt::framework::{
    run_union, BoundedTreeAdapter, FlashlightAdapter, OutputPosition, UnionEvent, UnionSpec,
};
use enumfpt::harness::{
    default_enumerator, equivalence_suite, generate, loglog_slope, matching_graph, measure, trial_params,
    TrialLimits,
};
use enumfpt::problems::closest_string::{enumerate_closest_strings, ClosestStringAdapter};
use enumfpt::problems::fvst::{enumerate_fvst, FvstAdapter, GfvstNode};
use enumfpt::problems::hash_family::{binomial, build_hash_family, verify_family, Verification};
use enumfpt::problems::ilp::{enumerate_ilp, IlpAdapter, IlpNode};
use enumfpt::problems::longest_path::{enumerate_longest_paths, LongestPathSpec};
use enumfpt::problems::steiner::{enumerate_steiner_trees, SteinerSolver};
use enumfpt::problems::vertex_cover::{enumerate_vertex_covers, VertexCoverSpec};
use enumfpt::stream::{vec_stream, BoxStream};
use enumfpt::{collect_all, Instance, ProblemKind, Solution};

const TRIALS: usize = 200;
const SEED: u64 = 2024;

type Outcome = Result<String, String>;

fn oracle_equivalence() -> Outcome {
    let mut notes = Vec::new();
    for kind in ProblemKind::ALL {
        let report = equivalence_suite(kind, TRIALS, SEED, TrialLimits::default_for(kind), default_enumerator);
        if !report.pass() {
            return Err(format!("{kind}: {:?}", report.first_mismatch));
        }
        notes.push(format!("{kind} {}/{} ({} solutions)", report.passed, report.trials, report.solutions_compared));
    }
    Ok(notes.join(", "))
}

fn fvst_branching() -> Outcome {
    let mut expanded = 0;
    for trial in 0..TRIALS as u64 {
        let (params, k) = trial_params(ProblemKind::Fvst, TrialLimits::default_for(ProblemKind::Fvst), trial);
        let Instance::Tournament(t) = generate(ProblemKind::Fvst, &params, trial) else { unreachable!() };
        let adapter = FvstAdapter::new(&t, k);
        let mut stack: Vec<(GfvstNode, usize)> = vec![(adapter.root(), 0)];
        while let Some((node, depth)) = stack.pop() {
            if depth > k {
                return Err(format!("trial {trial}: node at depth {depth} > k={k}"));
            }
            if adapter.measure(&node) == 0 {
                continue;
            }
            expanded += 1;
            let children = adapter.split(&node);
            if children.len() > 7 {
                return Err(format!("trial {trial}: {} children", children.len()));
            }
            stack.extend(children.into_iter().map(|c| (c, depth + 1)));
        }
        let mut run = enumerate_fvst(&adapter, true);
        collect_all(&mut run).map_err(|e| e.to_string())?;
        let stats = run.stats();
        if stats.max_children > 7 || stats.max_depth > k {
            return Err(format!("trial {trial}: run stats {stats:?} with k={k}"));
        }
    }
    Ok(format!("{expanded} expanded nodes, all ≤ 7 children and depth ≤ k"))
}

fn ilp_arity() -> Outcome {
    let mut explored = 0;
    for trial in 0..TRIALS as u64 {
        let (params, _) = trial_params(ProblemKind::Ilp, TrialLimits::default_for(ProblemKind::Ilp), trial);
        let Instance::Ilp(sys) = generate(ProblemKind::Ilp, &params, trial) else { unreachable!() };
        let adapter = IlpAdapter::new(&sys);
        let mut stack: Vec<IlpNode> = vec![adapter.root()];
        while let Some(node) = stack.pop() {
            explored += 1;
            if node.max_extra_per_variable() > 2 {
                return Err(format!("trial {trial}: node with {} extra bounds", node.max_extra_per_variable()));
            }
            let Some(s) = adapter.find_solution(&node) else { continue };
            let unpruned = adapter.split_unpruned(&node, &s);
            if unpruned.len() != 2 * sys.k() {
                return Err(format!("trial {trial}: {} children for k={}", unpruned.len(), sys.k()));
            }
            stack.extend(adapter.split(&node, &s));
        }
    }
    Ok(format!("{explored} explored nodes, 2k children each, ≤ 2 extra bounds per variable"))
}

struct Fixture {
    streams: Vec<Vec<&'static str>>,
}

impl UnionSpec for Fixture {
    fn identifiers(&self) -> usize {
        self.streams.len()
    }

    fn stream_for<'a>(&'a self, id: usize) -> BoxStream<'a> {
        vec_stream(self.streams[id].iter().map(|s| Solution::from(*s)).collect())
    }

    fn member(&self, id: usize, solution: &Solution) -> bool {
        self.streams[id].contains(&solution.as_str())
    }
}

fn union_trace() -> Outcome {
    let fixture = Fixture { streams: vec![vec!["A", "B"], vec!["B", "C"]] };
    let mut run = run_union(&fixture, true).with_trace();
    let out = collect_all(&mut run).map_err(|e| e.to_string())?;
    let expected = vec![
        UnionEvent::Emitted { stream: 0, solution: "A".into() },
        UnionEvent::Deferred { stream: 0, owner: 1, solution: "B".into() },
        UnionEvent::Emitted { stream: 1, solution: "B".into() },
        UnionEvent::Emitted { stream: 1, solution: "C".into() },
    ];
    if run.trace() != expected.as_slice() || out != ["A", "B", "C"].map(Solution::from) {
        return Err(format!("trace {:?}", run.trace()));
    }
    let mut total = 0;
    for trial in 0..TRIALS as u64 {
        let limits = TrialLimits::default_for(ProblemKind::LongestPath);
        let (params, k) = trial_params(ProblemKind::LongestPath, limits, trial);
        let Instance::Graph(g) = generate(ProblemKind::LongestPath, &params, trial) else { unreachable!() };
        let spec = LongestPathSpec::new(&g, k).map_err(|e| e.to_string())?;
        let out = collect_all(&mut enumerate_longest_paths(&spec, false)).map_err(|e| e.to_string())?;
        let distinct: HashSet<_> = out.iter().collect();
        if distinct.len() != out.len() {
            return Err(format!("trial {trial}: {} outputs, {} distinct", out.len(), distinct.len()));
        }
        total += out.len();
    }
    Ok(format!("fixture trace A/B/C reproduced; {total} paths over {TRIALS} instances, no duplicates"))
}

fn hash_family_perfectness() -> Outcome {
    let mut checked = 0;
    for n in 1..=24 {
        for k in 1..=n.min(6) {
            let family = match build_hash_family(n, k) {
                Ok(f) => f,
                Err(e) if binomial(n, k) > 1_000_000 => {
                    let _ = e;
                    continue;
                }
                Err(e) => return Err(format!("n={n} k={k}: {e}")),
            };
            if binomial(n, k) <= 1_000_000 {
                match verify_family(n, k, &family.colorings) {
                    Ok(Verification::Exhaustive) => checked += 1,
                    Ok(v) => return Err(format!("n={n} k={k}: verification {v:?} not exhaustive")),
                    Err(e) => return Err(format!("n={n} k={k}: {e}")),
                }
            }
        }
    }
    Ok(format!("{checked} families verified exhaustively"))
}

fn matching_family() -> Outcome {
    let mut points = Vec::new();
    for m in 4..=14 {
        let g = matching_graph(m);
        let spec = VertexCoverSpec::new(&g);
        let report = measure(&mut enumerate_vertex_covers(&spec, m, false), None).map_err(|e| e.to_string())?;
        if report.solution_count != 1 << m {
            return Err(format!("m={m}: {} covers, expected {}", report.solution_count, 1u64 << m));
        }
        points.push((m as f64, report.max_delay_ns as f64));
    }
    let slope = loglog_slope(&points).unwrap_or(f64::NAN);
    let note = if slope <= 4.0 { "within 4" } else { "above 4, advisory only" };
    Ok(format!("counts 2^m for m=4..14; max-delay log-log slope {slope:.2} ({note})"))
}

fn steiner_provenance() -> Outcome {
    let mut total = 0;
    for trial in 0..TRIALS as u64 {
        let (params, _) = trial_params(ProblemKind::Steiner, TrialLimits::default_for(ProblemKind::Steiner), trial);
        let Instance::Graph(g) = generate(ProblemKind::Steiner, &params, trial) else { unreachable!() };
        let solver = SteinerSolver::new(&g).map_err(|e| e.to_string())?;
        // verify mode checks every output's weight against T[K, v_k, 0]
        let out = collect_all(&mut enumerate_steiner_trees(&solver, true)).map_err(|e| format!("trial {trial}: {e}"))?;
        let distinct: HashSet<_> = out.iter().collect();
        if distinct.len() != out.len() {
            return Err(format!("trial {trial}: duplicate trees"));
        }
        let weight = |s: &Solution| -> u64 {
            let edges = enumfpt::instances::canonical::decode_edges(s.as_str()).unwrap_or_default();
            edges.iter().map(|&(u, v)| g.edges().iter().position(|&e| e == (u, v) || e == (v, u)).map_or(0, |i| g.weight(i))).sum()
        };
        if let Some(bad) = out.iter().find(|s| weight(s) != solver.optimum()) {
            return Err(format!("trial {trial}: {bad} weighs {} not {}", weight(bad), solver.optimum()));
        }
        total += out.len();
    }
    let g = enumfpt::instances::UndirectedGraph::weighted(5, &[(0, 1), (1, 2), (2, 3), (1, 4), (4, 2)], vec![1, 2, 1, 1, 1])
        .and_then(|g| g.with_terminals(vec![0, 3]))
        .map_err(|e| e.to_string())?;
    let solver = SteinerSolver::new(&g).map_err(|e| e.to_string())?;
    let out = collect_all(&mut enumerate_steiner_trees(&solver, true)).map_err(|e| e.to_string())?;
    if out.len() != 2 || solver.optimum() != 4 {
        return Err(format!("two-route example gave {out:?} at weight {}", solver.optimum()));
    }
    Ok(format!("{total} trees over {TRIALS} instances, no duplicates, all at table optimum; two-route example: 2 trees of weight 4"))
}

fn output_parity() -> Outcome {
    let mut events = 0;
    let mut seen_positions = BTreeSet::new();
    for trial in 0..TRIALS as u64 {
        let (params, _) = trial_params(ProblemKind::Ilp, TrialLimits::default_for(ProblemKind::Ilp), trial);
        let Instance::Ilp(sys) = generate(ProblemKind::Ilp, &params, trial) else { unreachable!() };
        let adapter = IlpAdapter::new(&sys);
        let mut run = enumerate_ilp(&adapter, true).with_trace();
        collect_all(&mut run).map_err(|e| e.to_string())?;
        for ev in run.trace() {
            let expected = if ev.depth % 2 == 0 { OutputPosition::BeforeChildren } else { OutputPosition::AfterChildren };
            if ev.position != expected {
                return Err(format!("trial {trial}: {ev:?}"));
            }
            seen_positions.insert(format!("{:?}", ev.position));
            events += 1;
        }
    }
    if seen_positions.len() != 2 {
        return Err(format!("only saw {seen_positions:?}"));
    }
    Ok(format!("{events} outputs, before children at even depth and after at odd depth"))
}

fn flashlight_soundness() -> Outcome {
    let mut worst = 0;
    let mut verified = 0;
    for trial in 0..TRIALS as u64 {
        let limits = TrialLimits::default_for(ProblemKind::ClosestString);
        let (params, k) = trial_params(ProblemKind::ClosestString, limits, trial);
        let Instance::Strings(set) = generate(ProblemKind::ClosestString, &params, trial) else { unreachable!() };
        let adapter = ClosestStringAdapter::new(&set, k);
        let mut run = enumerate_closest_strings(&adapter, true);
        let out = collect_all(&mut run).map_err(|e| format!("trial {trial}: {e}"))?;
        let stats = run.stats();
        if adapter.has_solution(&adapter.root()) == out.is_empty() {
            return Err(format!("trial {trial}: root decision disagrees with output"));
        }
        if stats.verified_nodes + 1 != stats.nodes {
            return Err(format!("trial {trial}: {} of {} nodes checked", stats.verified_nodes, stats.nodes));
        }
        let bound = 2 * set.len() as u64 * set.alphabet().len() as u64;
        if stats.max_calls_between_outputs > bound {
            return Err(format!("trial {trial}: {} calls between outputs > {bound}", stats.max_calls_between_outputs));
        }
        worst = worst.max(stats.max_calls_between_outputs);
        verified += stats.verified_nodes;
    }
    Ok(format!("{verified} expanded nodes decided solvable; at most {worst} calls between outputs"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("oracle equivalence", oracle_equivalence),
        ("fvst branching bound", fvst_branching),
        ("ilp split arity", ilp_arity),
        ("union dedup trace", union_trace),
        ("hash family perfectness", hash_family_perfectness),
        ("vertex cover matching family", matching_family),
        ("steiner unique provenance", steiner_provenance),
        ("alternative output parity", output_parity),
        ("flashlight soundness", flashlight_soundness),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(note) => println!("criterion {}: PASS {name} [{secs:.1}s] {note}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name} [{secs:.1}s] {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
