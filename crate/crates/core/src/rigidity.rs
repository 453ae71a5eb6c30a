//! The two-dimensional generic rigidity matroid: Laman independence via the
//! (2,3)-pebble game, rank, circuits, pseudocircuits and coupled spanning trees.

use serde_json::json;

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph, Multigraph};

/// Default cap on `|E|` for circuit enumeration.
pub const DEFAULT_EDGE_CAP: usize = 24;

/// Up to this many edges circuits are found by filtering every edge subset.
pub const SUBSET_FILTER_LIMIT: usize = 16;

/// Incremental (2,3)-pebble game. Every vertex starts with two pebbles; an
/// edge is accepted when four pebbles can be gathered on its endpoints, and
/// is then covered by one of them. Works for multigraphs as well.
#[derive(Clone, Debug)]
pub struct PebbleGame {
    pebbles: Vec<u8>,
    out: Vec<Vec<usize>>,
}

impl PebbleGame {
    pub fn new(n: usize) -> Self {
        PebbleGame {
            pebbles: vec![2; n],
            out: vec![Vec::new(); n],
        }
    }

    /// Tries to insert edge `uv`; returns whether it is independent of the
    /// edges accepted so far.
    pub fn try_add(&mut self, u: usize, v: usize) -> bool {
        debug_assert_ne!(u, v);
        while self.pebbles[u] + self.pebbles[v] < 4 {
            if self.pebbles[u] < 2 && self.fetch_pebble(u, v) {
                continue;
            }
            if self.pebbles[v] < 2 && self.fetch_pebble(v, u) {
                continue;
            }
            return false;
        }
        self.pebbles[u] -= 1;
        self.out[u].push(v);
        true
    }

    /// Moves a free pebble to `root` along a directed path avoiding `keep`,
    /// reversing the path.
    fn fetch_pebble(&mut self, root: usize, keep: usize) -> bool {
        let n = self.pebbles.len();
        let mut parent = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        seen[keep] = true;
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            for i in 0..self.out[x].len() {
                let y = self.out[x][i];
                if seen[y] {
                    continue;
                }
                seen[y] = true;
                parent[y] = x;
                if self.pebbles[y] > 0 {
                    let mut cur = y;
                    while cur != root {
                        let p = parent[cur];
                        let pos = self.out[p]
                            .iter()
                            .position(|&w| w == cur)
                            .expect("path edge");
                        self.out[p].swap_remove(pos);
                        self.out[cur].push(p);
                        cur = p;
                    }
                    self.pebbles[y] -= 1;
                    self.pebbles[root] += 1;
                    return true;
                }
                stack.push(y);
            }
        }
        false
    }
}

/// Greedy basis of `f`: the edges the pebble game accepts, in edge order.
pub fn pebble_basis(g: &Graph, f: EdgeSet) -> EdgeSet {
    let mut game = PebbleGame::new(g.num_vertices());
    EdgeSet::from_indices(f.iter().filter(|&e| {
        let (u, v) = g.edge(e);
        game.try_add(u, v)
    }))
}

/// Laman independence of `f` by the pebble game.
pub fn laman_independent(g: &Graph, f: EdgeSet) -> bool {
    let mut game = PebbleGame::new(g.num_vertices());
    f.iter().all(|e| {
        let (u, v) = g.edge(e);
        game.try_add(u, v)
    })
}

/// Largest edge-subset size for [`laman_exhaustive`].
pub const EXHAUSTIVE_EDGE_LIMIT: usize = 16;

/// Laman's condition checked literally: every nonempty `F' ⊆ f` satisfies
/// `|F'| ≤ 2|V(F')| − 3`.
pub fn laman_exhaustive(g: &Graph, f: EdgeSet) -> Result<bool> {
    let members: Vec<usize> = f.iter().collect();
    if members.len() > EXHAUSTIVE_EDGE_LIMIT {
        return Err(Error::TooLarge {
            what: "edge subset for exhaustive Laman check",
            size: members.len(),
            cap: EXHAUSTIVE_EDGE_LIMIT,
        });
    }
    for sub in 1u64..1 << members.len() {
        let sub_set = EdgeSet::from_indices(
            members
                .iter()
                .enumerate()
                .filter(|(i, _)| sub >> i & 1 == 1)
                .map(|(_, &e)| e),
        );
        if sub_set.len() + 3 > 2 * g.support_size(sub_set) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Laman's condition over vertex subsets: for every `W` with `|W| ≥ 2`, the
/// edges of `f` inside `W` number at most `2|W| − 3`. Equivalent to the edge
/// subset form since enlarging `F'` to all of `f` inside `V(F')` only
/// tightens the count.
pub fn laman_by_vertex_subsets(g: &Graph, f: EdgeSet) -> bool {
    let n = g.num_vertices();
    assert!(n <= 24, "vertex-subset oracle limited to 24 vertices");
    (0u64..1 << n)
        .filter(|w| w.count_ones() >= 2)
        .all(|w| g.induced_edges(w).intersection(f).len() + 3 <= 2 * w.count_ones() as usize)
}

/// Matroid rank of `f`.
pub fn rigidity_rank(g: &Graph, f: EdgeSet) -> usize {
    pebble_basis(g, f).len()
}

/// Whether `E` spans the rigidity matroid on `V`, i.e. has rank `2|V| − 3`.
pub fn is_rigid(g: &Graph) -> Result<bool> {
    let n = g.num_vertices();
    if n < 2 {
        return Err(Error::InvalidGraph(
            "rigidity needs at least two vertices".into(),
        ));
    }
    Ok(rigidity_rank(g, g.all_edges()) == 2 * n - 3)
}

/// `f` is a rigidity circuit: `|f| = 2|V(f)| − 2` and deleting any one edge
/// leaves a Laman-independent set.
pub fn is_circuit(g: &Graph, f: EdgeSet) -> bool {
    !f.is_empty()
        && f.len() + 2 == 2 * g.support_size(f)
        && f.iter().all(|e| laman_independent(g, f.without(e)))
}

pub fn is_rigidity_circuit(g: &Graph) -> bool {
    is_circuit(g, g.all_edges())
}

/// The unique circuit inside `independent ∪ {e}`, found by deleting every
/// edge whose removal keeps the set dependent. `None` if `e` is independent
/// of `independent`.
pub fn fundamental_circuit(g: &Graph, independent: EdgeSet, e: usize) -> Option<EdgeSet> {
    let mut c = independent.with(e);
    if laman_independent(g, c) {
        return None;
    }
    for x in independent.iter() {
        let smaller = c.without(x);
        if !laman_independent(g, smaller) {
            c = smaller;
        }
    }
    Some(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CircuitStrategy {
    /// Subset filtering up to [`SUBSET_FILTER_LIMIT`] edges, backtracking above.
    Auto,
    /// Test every edge subset with the circuit predicate.
    SubsetFilter,
    /// Grow independent sets in edge order; each dependent extension `I + e`
    /// that is itself a circuit is emitted. Every circuit is reached exactly
    /// once, through its members below its largest edge.
    Backtrack,
}

/// All rigidity circuits of `g`, sorted by bitmask.
pub fn rigidity_circuits(g: &Graph, cap: usize) -> Result<Vec<EdgeSet>> {
    rigidity_circuits_with(g, cap, CircuitStrategy::Auto)
}

pub fn rigidity_circuits_with(
    g: &Graph,
    cap: usize,
    strategy: CircuitStrategy,
) -> Result<Vec<EdgeSet>> {
    let m = g.num_edges();
    if m > cap {
        return Err(Error::TooLarge {
            what: "edge count for circuit enumeration",
            size: m,
            cap,
        });
    }
    let strategy = match strategy {
        CircuitStrategy::Auto if m <= SUBSET_FILTER_LIMIT => CircuitStrategy::SubsetFilter,
        CircuitStrategy::Auto => CircuitStrategy::Backtrack,
        s => s,
    };
    let mut out = Vec::new();
    match strategy {
        CircuitStrategy::SubsetFilter => {
            if m > SUBSET_FILTER_LIMIT + 8 {
                return Err(Error::TooLarge {
                    what: "edge count for subset filtering",
                    size: m,
                    cap: SUBSET_FILTER_LIMIT + 8,
                });
            }
            // K4 is the smallest circuit
            for bits in 0u64..1 << m {
                let f = EdgeSet(bits);
                if f.len() >= 6 && f.len() + 2 == 2 * g.support_size(f) && is_circuit(g, f) {
                    out.push(f);
                }
            }
        }
        _ => {
            let game = PebbleGame::new(g.num_vertices());
            circuits_rec(g, 0, EdgeSet::EMPTY, &game, &mut out);
            out.sort();
        }
    }
    Ok(out)
}

fn circuits_rec(
    g: &Graph,
    start: usize,
    current: EdgeSet,
    game: &PebbleGame,
    out: &mut Vec<EdgeSet>,
) {
    for e in start..g.num_edges() {
        let (u, v) = g.edge(e);
        let mut next = game.clone();
        if next.try_add(u, v) {
            circuits_rec(g, e + 1, current.with(e), &next, out);
        } else if is_circuit(g, current.with(e)) {
            out.push(current.with(e));
        }
    }
}

/// Independence, rank and rigidity of a whole edge set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidityReport {
    pub independent: bool,
    pub rank: usize,
    pub rigid: bool,
    /// A circuit of `E`, present exactly when `E` is dependent.
    pub violating_set: Option<EdgeSet>,
}

impl RigidityReport {
    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        json!({
            "independent": self.independent,
            "rank": self.rank,
            "rigid": self.rigid,
            "violating_set": self.violating_set.map(|f| g.edge_pairs(f)),
        })
    }
}

pub fn rigidity_report(g: &Graph) -> RigidityReport {
    let all = g.all_edges();
    let basis = pebble_basis(g, all);
    let n = g.num_vertices();
    let violating_set = all
        .difference(basis)
        .iter()
        .next()
        .and_then(|e| fundamental_circuit(g, basis.intersection(EdgeSet::full(e)), e));
    RigidityReport {
        independent: basis == all,
        rank: basis.len(),
        rigid: n < 2 || basis.len() == 2 * n - 3,
        violating_set,
    }
}

/// Two edge-disjoint spanning trees of `V(E)` whose union is `E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoTreeDecomposition {
    pub tree_a: EdgeSet,
    pub tree_b: EdgeSet,
}

/// All coupled spanning trees: `T` with both `T` and `E ∖ T` spanning trees
/// of `V(E)`. Empty when `E` is not a pseudocircuit.
pub fn coupled_spanning_trees(g: &Graph) -> Vec<EdgeSet> {
    let all = g.all_edges();
    let support = g.edge_subgraph(all);
    let n = support.num_vertices();
    if all.is_empty() || all.len() + 2 != 2 * n || !support.is_connected() {
        return Vec::new();
    }
    // edge indices of `support` coincide with those of `g`
    let mut out = Vec::new();
    support
        .for_each_spanning_tree(|t| {
            if support.is_forest(all.difference(t)) {
                out.push(t);
            }
        })
        .expect("support is connected");
    out
}

/// A 2-tree decomposition witness, if `E` is a rigidity pseudocircuit.
pub fn is_pseudocircuit(g: &Graph) -> Option<TwoTreeDecomposition> {
    let all = g.all_edges();
    coupled_spanning_trees(g)
        .first()
        .map(|&t| TwoTreeDecomposition {
            tree_a: t,
            tree_b: all.difference(t),
        })
}

/// Multigraph pseudocircuit: `|E| = 2|V| − 2` and `|F| ≤ 2|V(F)| − 2` for
/// every nonempty sub-multiset `F`. Only vertex subsets are enumerated, with
/// all parallel copies inside each, since fewer copies never tighten the count.
pub fn is_multigraph_pseudocircuit(m: &Multigraph) -> bool {
    let n = m.num_vertices();
    assert!(
        n <= 24,
        "multigraph pseudocircuit check limited to 24 vertices"
    );
    if m.num_edges() + 2 != 2 * n {
        return false;
    }
    (0u64..1 << n)
        .filter(|w| w.count_ones() >= 2)
        .all(|w| m.induced_count(w) + 2 <= 2 * w.count_ones() as usize)
}

/// Whether the sub-multigraph inside `vmask` is (2,3)-sparse, i.e. contains
/// no multigraph pseudocircuit.
pub fn multigraph_sparse_within(m: &Multigraph, vmask: u64) -> bool {
    let mut game = PebbleGame::new(m.num_vertices());
    for ((u, v), mult) in m.pairs() {
        if vmask >> u & 1 == 0 || vmask >> v & 1 == 0 {
            continue;
        }
        for _ in 0..mult {
            if !game.try_add(u, v) {
                return false;
            }
        }
    }
    true
}
