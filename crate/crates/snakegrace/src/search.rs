//! Brute-force oracles: exhaustive enumeration of (near) graceful
//! labellings of small graphs, searches for useful cycles, and the
//! exhaustive C_10 nonexistence analysis.
//!
//! All searches are deterministic backtracking with bitset pruning over
//! vertex and edge labels. Cycle searches quotient rotations and
//! reflections by anchoring label 0 at position 0 and orienting so the
//! label after the anchor is smaller than the label before it; graceful
//! enumerations additionally report each complement pair once. Top-level
//! branches are independent, so they run under rayon when the `parallel`
//! feature is on; results are merged in branch order either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::builder::BuiltSnake;
use crate::error::SearchError;
use crate::topology::LabelledGraph;
use crate::verifier::Classification;

/// How to explore disjoint top-level branches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Rayon over top-level branches. Falls back to sequential when the
    /// `parallel` feature is disabled.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

fn map_branches<B, R, F>(exec: Execution, branches: Vec<B>, f: F) -> Vec<R>
where
    B: Send,
    R: Send,
    F: Fn(B) -> R + Sync + Send,
{
    match exec {
        Execution::Sequential => branches.into_iter().map(f).collect(),
        Execution::Parallel => {
            #[cfg(feature = "parallel")]
            {
                branches.into_par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                branches.into_iter().map(f).collect()
            }
        }
    }
}

/// 256-bit set indexed by label value.
#[derive(Clone, Copy, Default)]
struct Bits([u64; 4]);

impl Bits {
    #[inline]
    fn set(&mut self, i: u64) {
        self.0[(i / 64) as usize] |= 1 << (i % 64);
    }
    #[inline]
    fn clear(&mut self, i: u64) {
        self.0[(i / 64) as usize] &= !(1 << (i % 64));
    }
    #[inline]
    fn test(&self, i: u64) -> bool {
        self.0[(i / 64) as usize] >> (i % 64) & 1 == 1
    }
}

const BITS_CAP: u64 = 256;

// ============================================================================
// Cycle label search
// ============================================================================

/// A constrained cycle-labelling search: which vertex labels may appear,
/// which edge label set must appear exactly, and optional required cyclic
/// distances between pairs of labels.
#[derive(Debug, Clone)]
pub struct SearchProblem {
    pub cycle_len: usize,
    pub allowed: Vec<u64>,
    pub required_edges: Vec<u64>,
    pub forbidden: Vec<u64>,
    pub distance_constraints: Vec<(u64, u64, u64)>,
}

impl SearchProblem {
    pub fn new(cycle_len: usize, allowed: Vec<u64>, required_edges: Vec<u64>) -> Self {
        SearchProblem {
            cycle_len,
            allowed,
            required_edges,
            forbidden: Vec::new(),
            distance_constraints: Vec::new(),
        }
    }
}

fn cyclic_distance(len: usize, a: usize, b: usize) -> u64 {
    let fwd = (b + len - a) % len;
    fwd.min(len - fwd) as u64
}

fn distances_ok(labels: &[u64], constraints: &[(u64, u64, u64)]) -> bool {
    constraints.iter().all(|&(a, b, d)| {
        let pa = labels.iter().position(|&l| l == a);
        let pb = labels.iter().position(|&l| l == b);
        match (pa, pb) {
            (Some(pa), Some(pb)) => cyclic_distance(labels.len(), pa, pb) == d,
            _ => false,
        }
    })
}

/// All cycle labellings satisfying the problem, up to rotation and
/// reflection: label 0 is anchored at position 0 and the orientation with
/// the smaller label at position 1 is kept. Solutions come out in
/// lexicographic order.
pub fn solve_cycle(
    problem: &SearchProblem,
    limit: Option<usize>,
    exec: Execution,
) -> Vec<Vec<u64>> {
    let l = problem.cycle_len;
    assert!(l >= 3);
    let mut allowed: Vec<u64> = problem
        .allowed
        .iter()
        .copied()
        .filter(|v| !problem.forbidden.contains(v))
        .collect();
    allowed.sort_unstable();
    allowed.dedup();
    assert!(
        allowed.iter().all(|&v| v < BITS_CAP)
            && problem.required_edges.iter().all(|&e| e < BITS_CAP),
        "labels beyond the search engine's bitset capacity"
    );
    if problem.required_edges.len() != l || !allowed.contains(&0) {
        // Anchoring needs 0; every search in this crate forces it through
        // the top edge label.
        return Vec::new();
    }
    let mut required = Bits::default();
    for &e in &problem.required_edges {
        required.set(e);
    }

    struct Ctx<'a> {
        l: usize,
        allowed: &'a [u64],
        required: Bits,
        constraints: &'a [(u64, u64, u64)],
        limit: usize,
    }

    fn dfs(
        ctx: &Ctx,
        labels: &mut Vec<u64>,
        used: &mut Bits,
        edges: &mut Bits,
        out: &mut Vec<Vec<u64>>,
    ) {
        if out.len() >= ctx.limit {
            return;
        }
        let pos = labels.len();
        if pos == ctx.l {
            if distances_ok(labels, ctx.constraints) {
                out.push(labels.clone());
            }
            return;
        }
        let last = pos + 1 == ctx.l;
        for &cand in ctx.allowed {
            if used.test(cand) {
                continue;
            }
            // Reflection canonical form: labels[1] < labels[l-1].
            if last && cand <= labels[1] {
                continue;
            }
            let step = cand.abs_diff(labels[pos - 1]);
            if !ctx.required.test(step) || edges.test(step) {
                continue;
            }
            let closing = if last {
                let c = cand.abs_diff(labels[0]);
                if c == step || !ctx.required.test(c) || edges.test(c) {
                    continue;
                }
                Some(c)
            } else {
                None
            };
            labels.push(cand);
            used.set(cand);
            edges.set(step);
            if let Some(c) = closing {
                edges.set(c);
            }
            dfs(ctx, labels, used, edges, out);
            if let Some(c) = closing {
                edges.clear(c);
            }
            edges.clear(step);
            used.clear(cand);
            labels.pop();
        }
    }

    let limit_n = limit.unwrap_or(usize::MAX);
    let ctx = Ctx {
        l,
        allowed: &allowed,
        required,
        constraints: &problem.distance_constraints,
        limit: limit_n,
    };
    // Branch on the label at position 1.
    let branches: Vec<u64> = allowed
        .iter()
        .copied()
        .filter(|&first| first != 0 && required.test(first))
        .collect();
    let chunks = map_branches(exec, branches, |first| {
        let mut labels = vec![0, first];
        let mut used = Bits::default();
        used.set(0);
        used.set(first);
        let mut edges = Bits::default();
        edges.set(first);
        let mut out = Vec::new();
        dfs(&ctx, &mut labels, &mut used, &mut edges, &mut out);
        out
    });
    let mut out: Vec<Vec<u64>> = chunks.into_iter().flatten().collect();
    out.truncate(limit_n);
    out
}

// ============================================================================
// Graceful enumeration of small graphs
// ============================================================================

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Graceful,
    NearOmitM,
    NearClassic,
}

impl Mode {
    pub fn classification(self) -> Classification {
        match self {
            Mode::Graceful => Classification::Graceful,
            Mode::NearOmitM => Classification::NearGracefulOmitM,
            Mode::NearClassic => Classification::NearGracefulClassic,
        }
    }

    /// (allowed vertex labels, exact edge label set) for edge count m.
    fn windows(self, m: u64) -> (Vec<u64>, Vec<u64>) {
        match self {
            Mode::Graceful => ((0..=m).collect(), (1..=m).collect()),
            Mode::NearOmitM => (
                (0..=m + 1).filter(|&v| v != m).collect(),
                (1..=m + 1).filter(|&e| e != m).collect(),
            ),
            Mode::NearClassic => ((0..=m + 1).collect(), (1..=m).collect()),
        }
    }
}

/// Which symmetries the reported labellings are quotiented by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quotient {
    None,
    Complement,
    Dihedral,
    DihedralComplement,
}

/// Result of an exhaustive enumeration. Labellings are vertex-id indexed.
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub labellings: Vec<Vec<u64>>,
    pub quotient: Quotient,
}

/// Vertex ids around the cycle when the graph is a single cycle.
fn cycle_order(g: &LabelledGraph) -> Option<Vec<usize>> {
    if g.cycles().len() == 1 && g.cycles()[0].len() == g.vertex_count() {
        return Some(g.cycles()[0].clone());
    }
    if g.vertex_count() < 3 || g.edge_count() != g.vertex_count() as u64 || !g.is_connected() {
        return None;
    }
    let adj = g.adjacency();
    if adj.iter().any(|nb| nb.len() != 2) {
        return None;
    }
    let mut order = vec![0usize];
    let mut prev = 0usize;
    let mut cur = adj[0][0];
    while cur != 0 {
        order.push(cur);
        let next = adj[cur].iter().copied().find(|&w| w != prev).unwrap();
        prev = cur;
        cur = next;
    }
    Some(order)
}

/// Dihedral canonical form of a cycle labelling containing 0: rotate 0 to
/// the front, orient with the smaller neighbor second.
fn canonical_cycle_seq(seq: &[u64]) -> Vec<u64> {
    let l = seq.len();
    let z = seq.iter().position(|&v| v == 0).expect("0 present");
    let fwd: Vec<u64> = (0..l).map(|i| seq[(z + i) % l]).collect();
    let rev: Vec<u64> = (0..l).map(|i| seq[(z + l - i) % l]).collect();
    if fwd[1] < rev[1] {
        fwd
    } else {
        rev
    }
}

/// Exhaustively enumerates labellings of `g` in the given mode.
///
/// Single cycles are quotiented by rotation and reflection; graceful modes
/// are additionally quotiented by the complement pairing f <-> m - f
/// (reported once, smaller canonical form kept). Near modes report all
/// representatives: the near complement is not mode-preserving in general.
pub fn enumerate_graceful(
    g: &LabelledGraph,
    mode: Mode,
    limit: Option<usize>,
    exec: Execution,
) -> Result<Enumeration, SearchError> {
    let m = g.edge_count();
    if m > 40 {
        return Err(SearchError::TooLarge(format!(
            "enumeration bound is 40 edges, graph has {m}"
        )));
    }
    if !g.is_connected() {
        return Err(SearchError::TooLarge("graph must be connected".into()));
    }
    if let Some(order) = cycle_order(g) {
        if mode != Mode::NearClassic {
            let (allowed, required) = mode.windows(m);
            let problem = SearchProblem::new(order.len(), allowed, required);
            let mut seqs = solve_cycle(&problem, limit, exec);
            let quotient = if mode == Mode::Graceful {
                seqs.retain(|f| {
                    let comp: Vec<u64> = f.iter().map(|&v| m - v).collect();
                    *f <= canonical_cycle_seq(&comp)
                });
                Quotient::DihedralComplement
            } else {
                Quotient::Dihedral
            };
            let labellings = seqs
                .into_iter()
                .map(|seq| {
                    let mut byid = vec![0u64; g.vertex_count()];
                    for (p, &v) in order.iter().enumerate() {
                        byid[v] = seq[p];
                    }
                    byid
                })
                .collect();
            return Ok(Enumeration {
                labellings,
                quotient,
            });
        }
    }
    enumerate_general(g, mode, limit, exec)
}

fn enumerate_general(
    g: &LabelledGraph,
    mode: Mode,
    limit: Option<usize>,
    exec: Execution,
) -> Result<Enumeration, SearchError> {
    let m = g.edge_count();
    let n = g.vertex_count();
    let adj = g.adjacency();
    // BFS order so every vertex after the first touches a labelled one.
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    let rank: Vec<usize> = {
        let mut r = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            r[v] = i;
        }
        r
    };
    let earlier: Vec<Vec<usize>> = order
        .iter()
        .enumerate()
        .map(|(i, &v)| adj[v].iter().copied().filter(|&w| rank[w] < i).collect())
        .collect();

    let (allowed, required_list) = mode.windows(m);
    let mut required = Bits::default();
    for &e in &required_list {
        required.set(e);
    }
    let pair = mode == Mode::Graceful;

    struct Ctx<'a> {
        n: usize,
        m: u64,
        order: &'a [usize],
        earlier: &'a [Vec<usize>],
        allowed: &'a [u64],
        required: Bits,
        pair: bool,
        limit: usize,
    }

    // cmp: lexicographic state of f versus its complement m - f.
    #[derive(Clone, Copy, PartialEq)]
    enum Cmp {
        Undecided,
        Keep,
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        ctx: &Ctx,
        i: usize,
        by_id: &mut Vec<u64>,
        used: &mut Bits,
        edges: &mut Bits,
        cmp: Cmp,
        out: &mut Vec<Vec<u64>>,
    ) {
        if out.len() >= ctx.limit {
            return;
        }
        if i == ctx.n {
            out.push(by_id.clone());
            return;
        }
        let v = ctx.order[i];
        'cand: for &cand in ctx.allowed {
            if used.test(cand) {
                continue;
            }
            let next_cmp = if ctx.pair && cmp == Cmp::Undecided {
                let mirror = ctx.m - cand;
                if cand > mirror {
                    continue;
                }
                if cand < mirror {
                    Cmp::Keep
                } else {
                    Cmp::Undecided
                }
            } else {
                cmp
            };
            let mut added: Vec<u64> = Vec::with_capacity(ctx.earlier[i].len());
            for &w in &ctx.earlier[i] {
                let e = cand.abs_diff(by_id[w]);
                if !ctx.required.test(e) || edges.test(e) {
                    for &a in &added {
                        edges.clear(a);
                    }
                    continue 'cand;
                }
                edges.set(e);
                added.push(e);
            }
            by_id[v] = cand;
            used.set(cand);
            dfs(ctx, i + 1, by_id, used, edges, next_cmp, out);
            used.clear(cand);
            for &a in &added {
                edges.clear(a);
            }
        }
    }

    let limit_n = limit.unwrap_or(usize::MAX);
    let ctx = Ctx {
        n,
        m,
        order: &order,
        earlier: &earlier,
        allowed: &allowed,
        required,
        pair,
        limit: limit_n,
    };
    let branches: Vec<u64> = allowed
        .iter()
        .copied()
        .filter(|&first| !pair || first <= m - first)
        .collect();
    let chunks = map_branches(exec, branches, |first| {
        let mut by_id = vec![0u64; n];
        by_id[order[0]] = first;
        let mut used = Bits::default();
        used.set(first);
        let mut out = Vec::new();
        let cmp = if pair && first < m - first {
            Cmp::Keep
        } else {
            Cmp::Undecided
        };
        dfs(
            &ctx,
            1,
            &mut by_id,
            &mut used,
            &mut Bits::default(),
            cmp,
            &mut out,
        );
        out
    });
    let mut labellings: Vec<Vec<u64>> = chunks.into_iter().flatten().collect();
    labellings.truncate(limit_n);
    Ok(Enumeration {
        labellings,
        quotient: if pair {
            Quotient::Complement
        } else {
            Quotient::None
        },
    })
}

// ============================================================================
// Useful-cycle search
// ============================================================================

/// Exhaustive search for cycles passing the useful-cycle predicate.
pub fn search_useful(
    spec: &crate::cycles::UsefulCycleSpec,
    limit: Option<usize>,
    exec: Execution,
) -> Result<Vec<Vec<u64>>, SearchError> {
    if spec.t > 24 || spec.s > 6 {
        return Err(SearchError::TooLarge(format!(
            "useful-cycle search bound is t <= 24, s <= 6; got t = {}, s = {}",
            spec.t, spec.s
        )));
    }
    let t = spec.t;
    let st = spec.s * spec.t;
    let (low_max, high_min, landmark) = match spec.parity {
        crate::cycles::Parity::Even => (t / 2 - 1, st - t / 2, t / 2 - 1),
        crate::cycles::Parity::Odd => (t / 2, st - t / 2 + 1, st - t / 2 + 1),
    };
    let allowed: Vec<u64> = (0..=low_max).chain(high_min..=st).collect();
    let required: Vec<u64> = (st - t + 1..=st).collect();
    let mut problem = SearchProblem::new(t as usize, allowed, required);
    problem.distance_constraints.push((0, landmark, spec.d));
    Ok(solve_cycle(&problem, limit, exec))
}

// ============================================================================
// C_10 nonexistence
// ============================================================================

/// Reading of "uses the labels" in the exhaustive C_10 claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interpretation {
    /// Labels are drawn from the two windows (injectively).
    DrawFrom,
    /// Every listed label must appear. The windows list 11 labels against
    /// 10 vertices, so this reading is empty by counting alone; it is kept
    /// because the sentence admits it.
    UseAll,
}

/// The candidate labellings behind the C_10 claim at scale s: vertex labels
/// from [0,5] and [10s-5, 10s+1] minus {10s}, label 1 excluded unless
/// `allow_one`, edge labels exactly the near graceful top window
/// [10s-9, 10s+1] minus {10s}.
pub fn c10_search(s: u64, allow_one: bool, exec: Execution) -> Result<Vec<Vec<u64>>, SearchError> {
    if !(1..=4).contains(&s) {
        return Err(SearchError::TooLarge(format!(
            "C_10 analysis bound is s <= 4, got {s}"
        )));
    }
    let st = 10 * s;
    let allowed: Vec<u64> = (0..=5)
        .filter(|&v| allow_one || v != 1)
        .chain((st - 5..=st + 1).filter(|&v| v != st))
        .collect();
    let required: Vec<u64> = (st - 9..=st + 1).filter(|&e| e != st).collect();
    let problem = SearchProblem::new(10, allowed, required);
    Ok(solve_cycle(&problem, None, exec))
}

/// True when no labelling of C_10 exists under the given interpretation of
/// the exhaustive claim.
pub fn c10_nonexistence(
    s: u64,
    interpretation: Interpretation,
    exec: Execution,
) -> Result<bool, SearchError> {
    let solutions = c10_search(s, false, exec)?;
    let empty = match interpretation {
        Interpretation::DrawFrom => solutions.is_empty(),
        Interpretation::UseAll => {
            let st = 10 * s;
            let all: Vec<u64> = (0..=5)
                .filter(|&v| v != 1)
                .chain((st - 5..=st + 1).filter(|&v| v != st))
                .collect();
            solutions
                .iter()
                .filter(|sol| all.iter().all(|v| sol.contains(v)))
                .count()
                == 0
        }
    };
    Ok(empty)
}

// ============================================================================
// Cross-validation of builder output
// ============================================================================

/// Confirms that a builder's labelling appears in the exhaustive
/// enumeration of its own graph and mode (up to the enumeration's
/// symmetry quotient).
pub fn cross_validate(built: &BuiltSnake, exec: Execution) -> Result<bool, SearchError> {
    let g = &built.graph;
    let m = g.edge_count();
    if m > 24 {
        return Err(SearchError::TooLarge(format!(
            "cross-validation bound is 24 edges, graph has {m}"
        )));
    }
    let mode = match built.report.classification {
        Classification::Graceful => Mode::Graceful,
        Classification::NearGracefulOmitM => Mode::NearOmitM,
        Classification::NearGracefulClassic => Mode::NearClassic,
        Classification::Invalid => return Ok(false),
    };
    let enumeration = enumerate_graceful(g, mode, None, exec)?;
    let f: Vec<u64> = (0..g.vertex_count()).map(|v| g.label(v).unwrap()).collect();

    if let Some(order) = cycle_order(g) {
        if mode != Mode::NearClassic {
            // Canonicalize the builder's labelling the way the cycle
            // enumerator does.
            let seq: Vec<u64> = order.iter().map(|&v| f[v]).collect();
            let mut reps = vec![canonical_cycle_seq(&seq)];
            if mode == Mode::Graceful {
                let comp: Vec<u64> = seq.iter().map(|&v| m - v).collect();
                reps.push(canonical_cycle_seq(&comp));
            }
            let to_id = |cs: &Vec<u64>| {
                let mut byid = vec![0u64; g.vertex_count()];
                for (p, &v) in order.iter().enumerate() {
                    byid[v] = cs[p];
                }
                byid
            };
            return Ok(reps
                .iter()
                .map(to_id)
                .any(|cand| enumeration.labellings.contains(&cand)));
        }
    }
    let mut candidates = vec![f.clone()];
    if mode == Mode::Graceful {
        candidates.push(f.iter().map(|&v| m - v).collect());
    }
    Ok(candidates
        .iter()
        .any(|cand| enumeration.labellings.contains(cand)))
}
