//! Delay measurement, seeded instance generation and the oracle
//! equivalence driver.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::EnumError;
use crate::instances::{write_instance, IlpSystem, Instance, ProblemKind, StringSet, Tournament, UndirectedGraph};
use crate::oracle::brute_force;
use crate::problems::prepare;
use crate::stream::{Solution, SolutionStream};

/// Timing of one run. Delays cover the stretch before the first solution
/// and the stretch after the last one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DelayReport {
    pub solution_count: usize,
    pub first_solution_ns: u64,
    pub max_delay_ns: u64,
    pub mean_delay_ns: u64,
    pub post_last_ns: u64,
    /// Nanoseconds since the start at which each solution arrived.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub timestamps: Vec<u64>,
}

impl DelayReport {
    fn from_timestamps(timestamps: Vec<u64>, end: u64) -> Self {
        let mut prev = 0;
        let mut max = 0;
        for &t in timestamps.iter().chain(std::iter::once(&end)) {
            max = max.max(t - prev);
            prev = t;
        }
        let intervals = timestamps.len() as u64 + 1;
        DelayReport {
            solution_count: timestamps.len(),
            first_solution_ns: timestamps.first().copied().unwrap_or(end),
            max_delay_ns: max,
            mean_delay_ns: end / intervals,
            post_last_ns: end - timestamps.last().copied().unwrap_or(0),
            timestamps,
        }
    }
}

/// Pulls `stream` to exhaustion (or `limit` solutions), timestamping each.
pub fn measure<S: SolutionStream + ?Sized>(stream: &mut S, limit: Option<usize>) -> Result<DelayReport, EnumError> {
    measure_with(stream, limit, |_, _| {})
}

/// As [`measure`], handing each solution and its timestamp to `sink`.
pub fn measure_with<S: SolutionStream + ?Sized>(
    stream: &mut S,
    limit: Option<usize>,
    mut sink: impl FnMut(&Solution, u64),
) -> Result<DelayReport, EnumError> {
    let start = Instant::now();
    let mut stamps = Vec::new();
    while limit.is_none_or(|l| stamps.len() < l) {
        match stream.next_solution()? {
            Some(s) => {
                let t = start.elapsed().as_nanos() as u64;
                sink(&s, t);
                stamps.push(t);
            }
            None => break,
        }
    }
    let end = start.elapsed().as_nanos() as u64;
    Ok(DelayReport::from_timestamps(stamps, end))
}

/// Size knobs for [`generate`]. `n` is the vertex count, the number of
/// strings, or the number of ILP variables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    pub n: usize,
    /// Edge probability for graphs.
    pub p: f64,
    pub alphabet: usize,
    pub length: usize,
    /// ILP box width: each variable ranges over at most this many values.
    pub width: i64,
    pub rows: usize,
    /// ILP coefficients lie in `-coef..=coef`.
    pub coef: i64,
    pub max_weight: u64,
    pub terminals: usize,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams { n: 6, p: 0.5, alphabet: 2, length: 4, width: 4, rows: 2, coef: 3, max_weight: 3, terminals: 3 }
    }
}

/// Upper limits for randomly drawn trial sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialLimits {
    pub max_n: usize,
    pub max_k: usize,
}

impl TrialLimits {
    /// Sizes the oracle handles comfortably.
    pub fn default_for(kind: ProblemKind) -> Self {
        match kind {
            ProblemKind::Fvst => TrialLimits { max_n: 7, max_k: 3 },
            ProblemKind::ClosestString => TrialLimits { max_n: 4, max_k: 6 },
            ProblemKind::Ilp => TrialLimits { max_n: 3, max_k: 0 },
            ProblemKind::LongestPath => TrialLimits { max_n: 8, max_k: 4 },
            ProblemKind::VertexCover => TrialLimits { max_n: 8, max_k: 8 },
            ProblemKind::Steiner => TrialLimits { max_n: 9, max_k: 0 },
        }
    }
}

fn graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// A deterministic pseudo-random instance of the input type of `kind`.
pub fn generate(kind: ProblemKind, params: &GenParams, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = params.n;
    match kind {
        ProblemKind::Fvst => {
            let mut arcs = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    arcs.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
                }
            }
            Instance::Tournament(Tournament::from_arcs(n, &arcs).expect("complete orientation"))
        }
        ProblemKind::LongestPath | ProblemKind::VertexCover => {
            Instance::Graph(UndirectedGraph::new(n, &graph(&mut rng, n, params.p)).expect("simple graph"))
        }
        ProblemKind::ClosestString => {
            let sigma = params.alphabet.clamp(1, 26);
            let alphabet: Vec<char> = ('a'..='z').take(sigma).collect();
            let center: Vec<usize> = (0..params.length).map(|_| rng.gen_range(0..sigma)).collect();
            let words: Vec<String> = (0..n)
                .map(|_| {
                    let flips = rng.gen_range(0..=params.length);
                    let mut w = center.clone();
                    for _ in 0..flips {
                        let i = rng.gen_range(0..params.length);
                        w[i] = rng.gen_range(0..sigma);
                    }
                    w.iter().map(|&c| alphabet[c]).collect()
                })
                .collect();
            let refs: Vec<&str> = words.iter().map(String::as_str).collect();
            Instance::Strings(StringSet::new(alphabet, params.length, &refs).expect("valid strings"))
        }
        ProblemKind::Ilp => {
            let width = params.width.max(1);
            let bounds: Vec<Option<(i64, i64)>> = (0..n)
                .map(|_| {
                    let lo = rng.gen_range(-width..=0);
                    let w = rng.gen_range(0..=width);
                    Some((lo, lo + w - 1))
                })
                .collect();
            let c = params.coef.max(0);
            let rows = (0..params.rows)
                .map(|_| {
                    let a: Vec<i64> = (0..n).map(|_| rng.gen_range(-c..=c)).collect();
                    (a, rng.gen_range(-c..=2 * c + 1))
                })
                .collect();
            Instance::Ilp(IlpSystem::new(n, rows, bounds).expect("boxed system"))
        }
        ProblemKind::Steiner => {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
            for i in 1..n {
                let (a, b) = (order[i], order[rng.gen_range(0..i)]);
                edges.insert((a.min(b), a.max(b)));
            }
            edges.extend(graph(&mut rng, n, params.p));
            let edges: Vec<_> = edges.into_iter().collect();
            let weights = edges.iter().map(|_| rng.gen_range(1..=params.max_weight.max(1))).collect();
            let mut terminals: Vec<usize> = (0..n).collect();
            terminals.shuffle(&mut rng);
            terminals.truncate(params.terminals.min(n));
            terminals.sort_unstable();
            let g = UndirectedGraph::weighted(n, &edges, weights).expect("simple graph");
            Instance::Graph(g.with_terminals(terminals).expect("distinct terminals"))
        }
    }
}

/// Draws trial sizes and a parameter within `limits` for trial `seed`.
pub fn trial_params(kind: ProblemKind, limits: TrialLimits, seed: u64) -> (GenParams, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_cafe);
    let mut p = GenParams::default();
    let max_n = limits.max_n.max(1);
    let k;
    match kind {
        ProblemKind::Fvst => {
            p.n = rng.gen_range(1..=max_n);
            k = rng.gen_range(0..=limits.max_k);
        }
        ProblemKind::ClosestString => {
            p.n = rng.gen_range(1..=max_n);
            p.alphabet = rng.gen_range(2..=3);
            p.length = rng.gen_range(1..=limits.max_k.max(1));
            k = rng.gen_range(0..=p.length);
        }
        ProblemKind::Ilp => {
            p.n = rng.gen_range(1..=max_n);
            p.width = 8;
            p.rows = rng.gen_range(0..=3);
            k = p.n;
        }
        ProblemKind::LongestPath => {
            p.n = rng.gen_range(1..=max_n);
            p.p = rng.gen_range(0.2..0.8);
            k = rng.gen_range(1..=limits.max_k.max(1));
        }
        ProblemKind::VertexCover => {
            p.n = rng.gen_range(0..=max_n);
            p.p = rng.gen_range(0.1..0.6);
            k = rng.gen_range(0..=limits.max_k.min(p.n));
        }
        ProblemKind::Steiner => {
            p.n = rng.gen_range(2..=max_n.max(2));
            p.p = rng.gen_range(0.1..0.4);
            p.max_weight = rng.gen_range(1..=3);
            p.terminals = rng.gen_range(1..=4.min(p.n));
            k = 0;
        }
    }
    (p, k)
}

/// One disagreement between an enumerator and the oracle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mismatch {
    pub problem: String,
    pub trial: usize,
    pub seed: u64,
    pub k: usize,
    pub params: GenParams,
    pub instance: String,
    pub missing: Vec<String>,
    pub duplicate: Vec<String>,
    pub extraneous: Vec<String>,
    /// Set when the enumerator failed outright.
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub problem: String,
    pub trials: usize,
    pub passed: usize,
    pub solutions_compared: usize,
    pub first_mismatch: Option<Mismatch>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.first_mismatch.is_none() && self.passed == self.trials
    }
}

/// The library enumerator with verification enabled.
pub fn default_enumerator(instance: &Instance, kind: ProblemKind, k: usize) -> Result<Vec<Solution>, String> {
    let prepared = prepare(instance, kind, k).map_err(|e| e.to_string())?;
    let mut stream = prepared.stream(true);
    crate::stream::collect_all(&mut stream).map_err(|e| e.to_string())
}

/// Compares `enumerate` against the oracle on `trials` seeded instances.
/// Stops at the first mismatch.
pub fn equivalence_suite<F>(kind: ProblemKind, trials: usize, seed: u64, limits: TrialLimits, enumerate: F) -> SuiteReport
where
    F: Fn(&Instance, ProblemKind, usize) -> Result<Vec<Solution>, String>,
{
    let mut report =
        SuiteReport { problem: kind.to_string(), trials, passed: 0, solutions_compared: 0, first_mismatch: None };
    for trial in 0..trials {
        let trial_seed = seed.wrapping_mul(1_000_003).wrapping_add(trial as u64);
        let (params, k) = trial_params(kind, limits, trial_seed);
        let instance = generate(kind, &params, trial_seed);
        let mismatch = |missing, duplicate, extraneous, error| Mismatch {
            problem: kind.to_string(),
            trial,
            seed: trial_seed,
            k,
            params: params.clone(),
            instance: write_instance(&instance),
            missing,
            duplicate,
            extraneous,
            error,
        };
        let expected = match brute_force(&instance, kind, k) {
            Ok(set) => set,
            Err(e) => {
                report.first_mismatch = Some(mismatch(vec![], vec![], vec![], Some(format!("oracle: {e}"))));
                return report;
            }
        };
        let got = match enumerate(&instance, kind, k) {
            Ok(v) => v,
            Err(e) => {
                report.first_mismatch = Some(mismatch(vec![], vec![], vec![], Some(e)));
                return report;
            }
        };
        let mut counts: BTreeMap<&Solution, usize> = BTreeMap::new();
        for s in &got {
            *counts.entry(s).or_default() += 1;
        }
        let as_strings = |it: &mut dyn Iterator<Item = &Solution>| it.map(|s| s.as_str().to_string()).collect::<Vec<_>>();
        let missing = as_strings(&mut expected.iter().filter(|s| !counts.contains_key(s)));
        let duplicate = as_strings(&mut counts.iter().filter(|(_, &c)| c > 1).map(|(s, _)| *s));
        let extraneous = as_strings(&mut counts.keys().copied().filter(|s| !expected.contains(*s)));
        report.solutions_compared += got.len();
        if missing.is_empty() && duplicate.is_empty() && extraneous.is_empty() {
            report.passed += 1;
        } else {
            report.first_mismatch = Some(mismatch(missing, duplicate, extraneous, None));
            return report;
        }
    }
    report
}

/// A perfect matching on `2m` vertices.
pub fn matching_graph(m: usize) -> UndirectedGraph {
    let edges: Vec<_> = (0..m).map(|i| (2 * i, 2 * i + 1)).collect();
    UndirectedGraph::new(2 * m, &edges).expect("matching")
}

/// One line of benchmark output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub problem: String,
    pub seed: u64,
    pub params: serde_json::Value,
    pub count: usize,
    pub first_ns: u64,
    pub max_ns: u64,
    pub mean_ns: u64,
    pub pass: bool,
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> =
        points.iter().filter(|(x, y)| *x > 0.0 && *y > 0.0).map(|(x, y)| (x.ln(), y.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
