//! Cyclic snake structure: shapes, labelled graphs, and the tuple text format.
//!
//! A cyclic snake is a connected graph whose block-cutpoint graph is a path
//! and whose blocks are cycles. A snake is described by its cycle lengths plus
//! a "string": the sequence of distances between consecutive cut vertices,
//! measured inside the cycle that carries both.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::TopologyError;

/// The combinatorial shape of a snake: cycle lengths plus attachment string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnakeShape {
    cycle_lengths: Vec<usize>,
    string: Vec<u64>,
}

impl SnakeShape {
    /// Builds a shape, checking the string against the cycle lengths.
    ///
    /// A snake with `k` cycles carries `k - 2` string entries (none for
    /// `k <= 2`), and entry `d_i` must satisfy `1 <= d_i <= L/2` where `L`
    /// is the length of the cycle containing cut vertices `i` and `i+1`,
    /// i.e. cycle `i + 1` (0-based: `cycle_lengths[i + 1]`).
    pub fn new(cycle_lengths: Vec<usize>, string: Vec<u64>) -> Result<Self, TopologyError> {
        let k = cycle_lengths.len();
        assert!(
            cycle_lengths.iter().all(|&l| l >= 3),
            "cycle lengths must be >= 3"
        );
        let expected = k.saturating_sub(2);
        if string.len() != expected {
            return Err(TopologyError::StringLengthMismatch {
                got: string.len(),
                expected,
                cycles: k,
            });
        }
        for (i, &d) in string.iter().enumerate() {
            // Cut vertices i and i+1 (1-based) both lie on cycle i+1 (0-based index i+1).
            let cycle_len = cycle_lengths[i + 1];
            let max = (cycle_len / 2) as u64;
            if d < 1 || d > max {
                return Err(TopologyError::StringEntryOutOfRange {
                    index: i + 1,
                    entry: d,
                    max,
                    cycle_len,
                });
            }
        }
        Ok(SnakeShape {
            cycle_lengths,
            string,
        })
    }

    /// Shape of a uniform snake `kC_n`.
    pub fn uniform(n: usize, k: usize, string: Vec<u64>) -> Result<Self, TopologyError> {
        Self::new(vec![n; k], string)
    }

    pub fn cycle_lengths(&self) -> &[usize] {
        &self.cycle_lengths
    }

    pub fn string(&self) -> &[u64] {
        &self.string
    }

    pub fn cycle_count(&self) -> usize {
        self.cycle_lengths.len()
    }

    pub fn edge_count(&self) -> u64 {
        self.cycle_lengths.iter().map(|&l| l as u64).sum()
    }
}

/// A graph with an optional integer labelling.
///
/// When built as a snake, the cycle decomposition is retained: `cycles[i]`
/// lists vertex ids around cycle `i` in traversal order, which is also the
/// order used for tuple emission. Vertex ids are dense and assigned
/// cycle-by-cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    labels: Vec<Option<u64>>,
    cycles: Vec<Vec<usize>>,
    cut_vertices: Vec<usize>,
    /// Marks carried by the tuple form beyond structural cut vertices
    /// (a lone table row keeps its overline through a parse/emit round trip).
    extra_marks: Vec<(usize, usize)>,
}

impl LabelledGraph {
    /// General graph from an edge list; no cycle structure.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Self {
        let mut es: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(u, v)| if u <= v { (u, v) } else { (v, u) })
            .collect();
        es.sort_unstable();
        es.dedup();
        LabelledGraph {
            vertex_count,
            edges: es,
            labels: vec![None; vertex_count],
            cycles: Vec::new(),
            cut_vertices: Vec::new(),
            extra_marks: Vec::new(),
        }
    }

    /// Snake graph from per-cycle label sequences.
    ///
    /// `joins[i] = (exit, entry)`: position `exit` of cycle `i` is identified
    /// with position `entry` of cycle `i + 1`. Labels land on the vertices in
    /// sequence order.
    pub fn from_cycle_labels(
        cycle_labels: &[Vec<u64>],
        joins: &[(usize, usize)],
    ) -> Result<Self, TopologyError> {
        assert_eq!(joins.len() + 1, cycle_labels.len().max(1));
        let mut vertex_ids: Vec<Vec<usize>> = Vec::with_capacity(cycle_labels.len());
        let mut labels: Vec<u64> = Vec::new();
        let mut cuts = Vec::new();
        for (i, cyc) in cycle_labels.iter().enumerate() {
            let mut ids = Vec::with_capacity(cyc.len());
            for (pos, &lab) in cyc.iter().enumerate() {
                let shared = if i > 0 && pos == joins[i - 1].1 {
                    Some(vertex_ids[i - 1][joins[i - 1].0])
                } else {
                    None
                };
                match shared {
                    Some(id) => {
                        if labels[id] != lab {
                            return Err(TopologyError::CutMismatch(format!(
                                "cycle {} expects cut label {}, previous cycle has {}",
                                i + 1,
                                lab,
                                labels[id]
                            )));
                        }
                        cuts.push(id);
                        ids.push(id);
                    }
                    None => {
                        ids.push(labels.len());
                        labels.push(lab);
                    }
                }
            }
            vertex_ids.push(ids);
        }
        let mut edges = Vec::new();
        for ids in &vertex_ids {
            let l = ids.len();
            for p in 0..l {
                let (u, v) = (ids[p], ids[(p + 1) % l]);
                edges.push(if u <= v { (u, v) } else { (v, u) });
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(LabelledGraph {
            vertex_count: labels.len(),
            edges,
            labels: labels.into_iter().map(Some).collect(),
            cycles: vertex_ids,
            cut_vertices: cuts,
            extra_marks: Vec::new(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> u64 {
        self.edges.len() as u64
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn cut_vertices(&self) -> &[usize] {
        &self.cut_vertices
    }

    /// Index of the first cycle containing `v`, when the graph carries a
    /// cycle decomposition.
    pub fn cycle_membership(&self, v: usize) -> Option<usize> {
        self.cycles.iter().position(|ids| ids.contains(&v))
    }

    pub fn label(&self, v: usize) -> Option<u64> {
        self.labels[v]
    }

    pub fn labels(&self) -> &[Option<u64>] {
        &self.labels
    }

    pub fn set_label(&mut self, v: usize, label: u64) {
        self.labels[v] = Some(label);
    }

    pub fn set_extra_mark(&mut self, cycle: usize, pos: usize) {
        self.extra_marks.push((cycle, pos));
    }

    /// Attaches a cycle decomposition and cut list to a graph assembled
    /// from raw edges (used by the graft builder).
    pub fn with_cycles(mut self, cycles: Vec<Vec<usize>>, cuts: Vec<usize>) -> Self {
        self.cycles = cycles;
        self.cut_vertices = cuts;
        self
    }

    /// All vertices labelled?
    pub fn fully_labelled(&self) -> bool {
        self.labels.iter().all(Option::is_some)
    }

    /// Vertex carrying `label`, if any.
    pub fn find_label(&self, label: u64) -> Option<usize> {
        self.labels.iter().position(|&l| l == Some(label))
    }

    /// Per-cycle label sequences (requires full labelling and cycle structure).
    pub fn cycle_labels(&self) -> Vec<Vec<u64>> {
        self.cycles
            .iter()
            .map(|ids| ids.iter().map(|&v| self.labels[v].unwrap()).collect())
            .collect()
    }

    /// Graph distance between two vertices (BFS).
    pub fn distance(&self, a: usize, b: usize) -> Option<usize> {
        if a == b {
            return Some(0);
        }
        let adj = self.adjacency();
        let mut dist = vec![usize::MAX; self.vertex_count];
        let mut queue = std::collections::VecDeque::new();
        dist[a] = 0;
        queue.push_back(a);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    if w == b {
                        return Some(dist[w]);
                    }
                    queue.push_back(w);
                }
            }
        }
        None
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.vertex_count
    }
}

/// Builds the unlabelled snake graph realizing `shape`.
///
/// Orientation is canonical: every cycle is traversed in one fixed direction
/// and each new cycle is attached on the same side, so one representative per
/// string is produced. The next attachment point inside cycle `i + 1` sits at
/// distance `d_i` forward of the entry cut.
pub fn build_snake(shape: &SnakeShape) -> Result<LabelledGraph, TopologyError> {
    let k = shape.cycle_count();
    let cycle_labels: Vec<Vec<u64>> = shape
        .cycle_lengths()
        .iter()
        .map(|&l| vec![0u64; l])
        .collect();
    // Joins: cycle i+1 enters at position 0; the exit from cycle i is at
    // distance d forward of its own entry, where d is the string entry
    // (or anywhere for the first join; position 0 of cycle 1 is used).
    let mut joins = Vec::with_capacity(k.saturating_sub(1));
    for i in 0..k.saturating_sub(1) {
        let exit = if i == 0 {
            0
        } else {
            shape.string()[i - 1] as usize
        };
        joins.push((exit, 0usize));
    }
    let mut g = LabelledGraph::from_cycle_labels(&cycle_labels, &joins)?;
    for l in g.labels.iter_mut() {
        *l = None;
    }
    Ok(g)
}

/// Recovers the string of a snake.
///
/// When the graph retains its cycle decomposition the stored traversal order
/// is used, so `recover_string(build_snake(s)) == s.string()` exactly. For a
/// bare edge list the decomposition is derived from biconnected components
/// and the lexicographically smaller direction is returned.
pub fn recover_string(g: &LabelledGraph) -> Result<Vec<u64>, TopologyError> {
    let blocks = validate_snake(g)?;
    if !g.cycles.is_empty() {
        // Stored decomposition: string entry i = distance between entry and
        // exit cuts inside cycle i+1.
        let k = g.cycles.len();
        let mut string = Vec::new();
        for i in 1..k.saturating_sub(1) {
            let cyc = &g.cycles[i];
            let entry = g.cut_vertices[i - 1];
            let exit = g.cut_vertices[i];
            string.push(cycle_distance(cyc, entry, exit) as u64);
        }
        return Ok(string);
    }
    // Derived path of blocks.
    let mut string = Vec::new();
    let interior = &blocks[1..blocks.len().saturating_sub(1).max(1)];
    for (cyc, entry, exit) in interior {
        string.push(cycle_distance(cyc, entry.unwrap(), exit.unwrap()) as u64);
    }
    let rev: Vec<u64> = string.iter().rev().copied().collect();
    Ok(string.clone().min(rev))
}

fn cycle_distance(cycle: &[usize], a: usize, b: usize) -> usize {
    let pa = cycle.iter().position(|&v| v == a).unwrap();
    let pb = cycle.iter().position(|&v| v == b).unwrap();
    let l = cycle.len();
    let fwd = (pb + l - pa) % l;
    fwd.min(l - fwd)
}

/// Checks the snake property and returns the blocks as cycles in path order,
/// each with its entry and exit cut vertex (None at the ends).
#[allow(clippy::type_complexity)]
fn validate_snake(
    g: &LabelledGraph,
) -> Result<Vec<(Vec<usize>, Option<usize>, Option<usize>)>, TopologyError> {
    if g.vertex_count == 0 {
        return Err(TopologyError::NotASnake("empty graph".into()));
    }
    if !g.is_connected() {
        return Err(TopologyError::NotASnake("graph is not connected".into()));
    }
    let blocks = biconnected_components(g);
    // Every block must be a simple cycle: as many edges as vertices.
    let mut block_vertices: Vec<BTreeSet<usize>> = Vec::new();
    for edges in &blocks {
        let vs: BTreeSet<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        if edges.len() != vs.len() || vs.len() < 3 {
            return Err(TopologyError::NotASnake(format!(
                "block with {} vertices and {} edges is not a cycle",
                vs.len(),
                edges.len()
            )));
        }
        block_vertices.push(vs);
    }
    // Cut vertices: in more than one block.
    let mut membership = vec![0usize; g.vertex_count];
    for vs in &block_vertices {
        for &v in vs {
            membership[v] += 1;
        }
    }
    let cuts: Vec<usize> = (0..g.vertex_count).filter(|&v| membership[v] > 1).collect();
    if cuts.iter().any(|&v| membership[v] != 2) {
        return Err(TopologyError::NotASnake(
            "a cut vertex joins more than two blocks".into(),
        ));
    }
    if cuts.len() + 1 != blocks.len() {
        return Err(TopologyError::NotASnake(
            "block-cutpoint graph is not a path".into(),
        ));
    }
    // Each block sees at most two cuts; at most two blocks see exactly one.
    let cuts_per_block: Vec<Vec<usize>> = block_vertices
        .iter()
        .map(|vs| cuts.iter().copied().filter(|c| vs.contains(c)).collect())
        .collect();
    if cuts_per_block.iter().any(|c| c.len() > 2) {
        return Err(TopologyError::NotASnake(
            "a block carries more than two cut vertices".into(),
        ));
    }
    // Walk the path from one end block.
    let k = blocks.len();
    if k == 1 {
        return Ok(vec![(order_cycle(&blocks[0]), None, None)]);
    }
    let start = cuts_per_block
        .iter()
        .position(|c| c.len() == 1)
        .ok_or_else(|| TopologyError::NotASnake("no end block found".into()))?;
    let mut order = Vec::with_capacity(k);
    let mut used = vec![false; k];
    let mut current = start;
    let mut entry_cut: Option<usize> = None;
    loop {
        used[current] = true;
        let exit_cut = cuts_per_block[current]
            .iter()
            .copied()
            .find(|&c| Some(c) != entry_cut);
        order.push((order_cycle(&blocks[current]), entry_cut, exit_cut));
        let Some(exit) = exit_cut else { break };
        let next = (0..k).find(|&b| !used[b] && cuts_per_block[b].contains(&exit));
        match next {
            Some(b) => {
                entry_cut = Some(exit);
                current = b;
            }
            None => break,
        }
    }
    if order.len() != k {
        return Err(TopologyError::NotASnake(
            "block-cutpoint graph is not a path".into(),
        ));
    }
    Ok(order)
}

/// Vertices of a cycle block in traversal order.
fn order_cycle(edges: &[(usize, usize)]) -> Vec<usize> {
    let mut adj: std::collections::HashMap<usize, Vec<usize>> = std::collections::HashMap::new();
    for &(u, v) in edges {
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    let start = edges[0].0;
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = adj[&start][0];
    while cur != start {
        order.push(cur);
        let next = adj[&cur].iter().copied().find(|&w| w != prev).unwrap();
        prev = cur;
        cur = next;
    }
    order
}

/// Biconnected components via iterative Hopcroft-Tarjan; returns edge sets.
fn biconnected_components(g: &LabelledGraph) -> Vec<Vec<(usize, usize)>> {
    let n = g.vertex_count;
    let adj = g.adjacency();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0usize;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // Frame: (vertex, parent, next neighbor index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(&mut (u, parent, ref mut idx)) = stack.last_mut() {
            if *idx < adj[u].len() {
                let w = adj[u][*idx];
                *idx += 1;
                if disc[w] == usize::MAX {
                    edge_stack.push((u, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, u, 0));
                } else if w != parent && disc[w] < disc[u] {
                    edge_stack.push((u, w));
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&mut (p, _, _)) = stack.last_mut() {
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        // p separates u's subtree; pop one component.
                        let mut comp = Vec::new();
                        while let Some(&(a, b)) = edge_stack.last() {
                            edge_stack.pop();
                            comp.push((a, b));
                            if (a, b) == (p, u) {
                                break;
                            }
                        }
                        out.push(comp);
                    }
                }
            }
        }
    }
    out
}

// ============================================================================
// Tuple text format
// ============================================================================

/// One cycle of a tuple form: labels with cut marks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleCycle {
    pub entries: Vec<(u64, bool)>,
}

/// The n-tuple notation for snake labellings, one tuple per cycle, `*` marking cut
/// vertices: `(8, 5, 10, 3*, 7, 6); (3*, 12, 0, 11, 1, 9)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleForm {
    pub cycles: Vec<TupleCycle>,
}

impl TupleForm {
    /// Parses tuple text. Whitespace after commas is optional.
    pub fn parse(text: &str) -> Result<Self, TopologyError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(TopologyError::MalformedTuple("empty input".into()));
        }
        let mut cycles = Vec::new();
        for part in text.split(';') {
            let part = part.trim();
            let inner = part
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| {
                    TopologyError::MalformedTuple(format!("expected (…) around \"{part}\""))
                })?;
            let mut entries = Vec::new();
            for item in inner.split(',') {
                let item = item.trim();
                let (num, marked) = match item.strip_suffix('*') {
                    Some(rest) => (rest.trim(), true),
                    None => (item, false),
                };
                let value: u64 = num
                    .parse()
                    .map_err(|_| TopologyError::MalformedTuple(format!("bad label \"{item}\"")))?;
                entries.push((value, marked));
            }
            if entries.len() < 3 {
                return Err(TopologyError::MalformedTuple(
                    "a cycle needs at least 3 labels".into(),
                ));
            }
            cycles.push(TupleCycle { entries });
        }
        Ok(TupleForm { cycles })
    }

    /// Renders tuple text with a single space after each comma.
    pub fn emit(&self) -> String {
        let mut out = String::new();
        for (i, cyc) in self.cycles.iter().enumerate() {
            if i > 0 {
                out.push_str("; ");
            }
            out.push('(');
            for (j, &(value, marked)) in cyc.entries.iter().enumerate() {
                if j > 0 {
                    out.push_str(", ");
                }
                let _ = write!(out, "{value}");
                if marked {
                    out.push('*');
                }
            }
            out.push(')');
        }
        out
    }

    /// Glues the tuples into a labelled snake and recovers its shape.
    ///
    /// Consecutive cycles must share exactly one marked label.
    pub fn to_graph(&self) -> Result<(SnakeShape, LabelledGraph), TopologyError> {
        let k = self.cycles.len();
        let mut cycle_labels = Vec::with_capacity(k);
        let mut joins = Vec::new();
        for (i, cyc) in self.cycles.iter().enumerate() {
            let labels: Vec<u64> = cyc.entries.iter().map(|&(v, _)| v).collect();
            if i > 0 {
                let prev = &self.cycles[i - 1];
                let prev_marked: BTreeSet<u64> = prev
                    .entries
                    .iter()
                    .filter(|&&(_, m)| m)
                    .map(|&(v, _)| v)
                    .collect();
                let shared: Vec<u64> = cyc
                    .entries
                    .iter()
                    .filter(|&&(v, m)| m && prev_marked.contains(&v))
                    .map(|&(v, _)| v)
                    .collect();
                if shared.len() != 1 {
                    return Err(TopologyError::CutMismatch(format!(
                        "cycles {i} and {} share {} marked labels, expected exactly 1",
                        i + 1,
                        shared.len()
                    )));
                }
                let cut = shared[0];
                let exit = prev
                    .entries
                    .iter()
                    .position(|&(v, m)| m && v == cut)
                    .unwrap();
                let entry = cyc
                    .entries
                    .iter()
                    .position(|&(v, m)| m && v == cut)
                    .unwrap();
                joins.push((exit, entry));
            }
            cycle_labels.push(labels);
        }
        let mut g = LabelledGraph::from_cycle_labels(&cycle_labels, &joins)?;
        // Preserve marks that are not structural cuts.
        for (ci, cyc) in self.cycles.iter().enumerate() {
            for (pos, &(_, marked)) in cyc.entries.iter().enumerate() {
                if marked && !g.cut_vertices.contains(&g.cycles[ci][pos]) {
                    g.extra_marks.push((ci, pos));
                }
            }
        }
        let string = recover_string(&g)?;
        let lengths: Vec<usize> = g.cycles.iter().map(Vec::len).collect();
        let shape = SnakeShape::new(lengths, string)?;
        Ok((shape, g))
    }

    /// Tuple form of a labelled snake, marking structural cuts plus any
    /// preserved extra marks.
    pub fn from_graph(g: &LabelledGraph) -> Result<Self, TopologyError> {
        if g.cycles.is_empty() {
            return Err(TopologyError::NotASnake(
                "graph has no cycle decomposition".into(),
            ));
        }
        if !g.fully_labelled() {
            return Err(TopologyError::MalformedTuple(
                "graph is not fully labelled".into(),
            ));
        }
        let cut_set: BTreeSet<usize> = g.cut_vertices.iter().copied().collect();
        let cycles = g
            .cycles
            .iter()
            .enumerate()
            .map(|(ci, ids)| TupleCycle {
                entries: ids
                    .iter()
                    .enumerate()
                    .map(|(pos, &v)| {
                        let marked = cut_set.contains(&v) || g.extra_marks.contains(&(ci, pos));
                        (g.labels[v].unwrap(), marked)
                    })
                    .collect(),
            })
            .collect();
        Ok(TupleForm { cycles })
    }
}

/// Parses tuple text straight to a shape and labelled graph.
pub fn parse_tuple_form(text: &str) -> Result<(SnakeShape, LabelledGraph), TopologyError> {
    TupleForm::parse(text)?.to_graph()
}

/// Emits a labelled snake as tuple text.
pub fn emit_tuple_form(g: &LabelledGraph) -> Result<String, TopologyError> {
    Ok(TupleForm::from_graph(g)?.emit())
}
