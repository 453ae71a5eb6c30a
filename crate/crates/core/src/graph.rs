//! Simple graphs, multigraphs and edge sets.
//!
//! Vertices carry arbitrary string ids and are numbered densely in order of
//! first appearance. Edges are stored as `(u, v)` with `u < v` in dense
//! indices and kept sorted lexicographically; that order is the global edge
//! order behind every [`EdgeSet`] bitmask and every polynomial variable.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Largest vertex or edge count representable by the bitmask types.
pub const MAX_BITS: usize = 64;

/// A subset of the edges of some ambient graph, as a bitmask over its edge order.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeSet(pub u64);

impl EdgeSet {
    pub const EMPTY: EdgeSet = EdgeSet(0);

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            EdgeSet(u64::MAX)
        } else {
            EdgeSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(e: usize) -> Self {
        EdgeSet(1u64 << e)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(EdgeSet::EMPTY, |s, e| s.with(e))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: usize) -> bool {
        e < 64 && self.0 >> e & 1 == 1
    }

    pub fn with(self, e: usize) -> Self {
        EdgeSet(self.0 | 1u64 << e)
    }

    pub fn without(self, e: usize) -> Self {
        EdgeSet(self.0 & !(1u64 << e))
    }

    pub fn union(self, other: Self) -> Self {
        EdgeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        EdgeSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        EdgeSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Member indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let e = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(e)
            }
        })
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Union-find over dense indices.
#[derive(Clone, Debug)]
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// A finite simple graph: no loops, no parallel edges.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    ids: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(V={:?}, E=[", self.ids)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.edge_label_of(*e))?;
        }
        write!(f, "])")
    }
}

#[derive(Serialize)]
struct GraphJson<'a> {
    vertices: &'a [String],
    edges: Vec<[&'a str; 2]>,
}

impl Graph {
    /// Builds a graph from vertex ids and dense-index edges. Duplicate edges
    /// collapse; loops and out-of-range endpoints are rejected.
    pub fn new<I>(ids: Vec<String>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = ids.len();
        if n > MAX_BITS {
            return Err(Error::TooLarge {
                what: "vertex count",
                size: n,
                cap: MAX_BITS,
            });
        }
        let mut seen = HashMap::new();
        for (i, id) in ids.iter().enumerate() {
            if seen.insert(id.as_str(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex id {id}")));
            }
        }
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) has an undeclared endpoint"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {}", ids[u])));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        list.dedup();
        if list.len() > MAX_BITS {
            return Err(Error::TooLarge {
                what: "edge count",
                size: list.len(),
                cap: MAX_BITS,
            });
        }
        Ok(Graph { ids, edges: list })
    }

    /// Builds a graph from id pairs; vertices are numbered by first appearance.
    pub fn from_pairs(pairs: &[(&str, &str)]) -> Result<Self> {
        let mut ids: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut intern = |s: &str| -> usize {
            if let Some(&i) = index.get(s) {
                return i;
            }
            ids.push(s.to_string());
            index.insert(s.to_string(), ids.len() - 1);
            ids.len() - 1
        };
        let edges: Vec<(usize, usize)> =
            pairs.iter().map(|(a, b)| (intern(a), intern(b))).collect();
        Graph::new(ids, edges)
    }

    /// Complete graph on ids `1..=n`.
    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(numbered_ids(1, n), edges).expect("complete graph within caps")
    }

    /// The polygon `1, 2, .., n, 1`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a polygon needs at least three vertices");
        let edges = (0..n).map(|i| (i, (i + 1) % n));
        Graph::new(numbered_ids(1, n), edges).expect("cycle within caps")
    }

    /// The path `1 - 2 - .. - n`.
    pub fn path(n: usize) -> Self {
        let edges = (1..n).map(|i| (i - 1, i));
        Graph::new(numbered_ids(1, n), edges).expect("path within caps")
    }

    /// The `r`-wheel: hub `0` joined to every vertex of the rim polygon `1..=r`.
    pub fn wheel(r: usize) -> Self {
        assert!(r >= 3, "a wheel needs a rim of at least three vertices");
        let spokes = (1..=r).map(|i| (0, i));
        let rim = (1..=r).map(move |i| (i, i % r + 1));
        Graph::new(numbered_ids(0, r + 1), spokes.chain(rim)).expect("wheel within caps")
    }

    pub fn num_vertices(&self) -> usize {
        self.ids.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|s| s == id)
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// Edge index by vertex ids.
    pub fn edge_by_ids(&self, a: &str, b: &str) -> Option<usize> {
        self.edge_index(self.vertex_index(a)?, self.vertex_index(b)?)
    }

    /// Edge set from id pairs; panics on an unknown edge. Convenient in tests.
    pub fn edge_set(&self, pairs: &[(&str, &str)]) -> EdgeSet {
        EdgeSet::from_indices(pairs.iter().map(|(a, b)| {
            self.edge_by_ids(a, b)
                .unwrap_or_else(|| panic!("no edge {a}{b} in graph"))
        }))
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::full(self.edges.len())
    }

    /// Name of an edge built from its endpoint ids, e.g. `12` or `10,11`.
    pub fn edge_label(&self, e: usize) -> String {
        self.edge_label_of(self.edges[e])
    }

    fn edge_label_of(&self, (u, v): (usize, usize)) -> String {
        let (a, b) = (&self.ids[u], &self.ids[v]);
        if a.chars().count() == 1 && b.chars().count() == 1 {
            format!("{a}{b}")
        } else {
            format!("{a},{b}")
        }
    }

    /// Vertex support `V(F)` as a bitmask.
    pub fn vertex_mask(&self, f: EdgeSet) -> u64 {
        f.iter().fold(0u64, |m, e| {
            let (u, v) = self.edges[e];
            m | 1 << u | 1 << v
        })
    }

    /// `|V(F)|`.
    pub fn support_size(&self, f: EdgeSet) -> usize {
        self.vertex_mask(f).count_ones() as usize
    }

    /// Edges with both endpoints in the vertex mask.
    pub fn induced_edges(&self, vmask: u64) -> EdgeSet {
        EdgeSet::from_indices(
            self.edges
                .iter()
                .enumerate()
                .filter(|(_, &(u, v))| vmask >> u & 1 == 1 && vmask >> v & 1 == 1)
                .map(|(i, _)| i),
        )
    }

    /// Valence of `v` in the edge set `f`.
    pub fn degree_in(&self, v: usize, f: EdgeSet) -> usize {
        f.iter()
            .filter(|&e| {
                let (a, b) = self.edges[e];
                a == v || b == v
            })
            .count()
    }

    /// Same vertices, edges restricted to `f`.
    pub fn spanning_subgraph(&self, f: EdgeSet) -> Graph {
        Graph {
            ids: self.ids.clone(),
            edges: f.iter().map(|e| self.edges[e]).collect(),
        }
    }

    /// The graph `(V(F), F)`. Vertex order is inherited, so the subgraph's
    /// edge `j` is the `j`-th member of `f` in this graph's order.
    pub fn edge_subgraph(&self, f: EdgeSet) -> Graph {
        let mask = self.vertex_mask(f);
        let mut relabel = vec![usize::MAX; self.ids.len()];
        let mut ids = Vec::new();
        for v in 0..self.ids.len() {
            if mask >> v & 1 == 1 {
                relabel[v] = ids.len();
                ids.push(self.ids[v].clone());
            }
        }
        let edges = f
            .iter()
            .map(|e| {
                let (u, v) = self.edges[e];
                (relabel[u], relabel[v])
            })
            .collect();
        Graph { ids, edges }
    }

    /// The subgraph induced on the vertex mask, vertex order inherited.
    pub fn induced_subgraph(&self, vmask: u64) -> Graph {
        let mut relabel = vec![usize::MAX; self.ids.len()];
        let mut ids = Vec::new();
        for v in 0..self.ids.len() {
            if vmask >> v & 1 == 1 {
                relabel[v] = ids.len();
                ids.push(self.ids[v].clone());
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| vmask >> u & 1 == 1 && vmask >> v & 1 == 1)
            .map(|&(u, v)| (relabel[u], relabel[v]))
            .collect();
        Graph { ids, edges }
    }

    /// Connected components of `(V, F)` as sorted vertex lists, ordered by least vertex.
    pub fn components_of(&self, f: EdgeSet) -> Vec<Vec<usize>> {
        let mut dsu = DisjointSets::new(self.ids.len());
        for e in f.iter() {
            let (u, v) = self.edges[e];
            dsu.union(u, v);
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..self.ids.len() {
            let r = dsu.find(v);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.spans_connected(self.all_edges())
    }

    /// Whether `(V, F)` is connected.
    pub fn spans_connected(&self, f: EdgeSet) -> bool {
        let n = self.ids.len();
        if n <= 1 {
            return true;
        }
        let mut dsu = DisjointSets::new(n);
        let mut joined = 1;
        for e in f.iter() {
            let (u, v) = self.edges[e];
            if dsu.union(u, v) {
                joined += 1;
            }
        }
        joined == n
    }

    /// Whether `(V, F)` has no cycle.
    pub fn is_forest(&self, f: EdgeSet) -> bool {
        let mut dsu = DisjointSets::new(self.ids.len());
        f.iter().all(|e| {
            let (u, v) = self.edges[e];
            dsu.union(u, v)
        })
    }

    /// Whether `t` is a spanning tree of `V`.
    pub fn is_spanning_tree(&self, t: EdgeSet) -> bool {
        let n = self.ids.len();
        n > 0 && t.len() == n - 1 && self.is_forest(t)
    }

    /// Whether `t` is a spanning tree of the vertex set `mask`.
    pub fn is_tree_on(&self, t: EdgeSet, mask: u64) -> bool {
        let n = mask.count_ones() as usize;
        n > 0
            && t.len() == n - 1
            && self.vertex_mask(t) & !mask == 0
            && (n == 1 || self.vertex_mask(t) == mask)
            && self.is_forest(t)
    }

    /// Breadth-first spanning forest rooted at the least vertex of each component.
    pub fn bfs_forest(&self) -> EdgeSet {
        let n = self.ids.len();
        let adj = self.adjacency(self.all_edges());
        let mut seen = vec![false; n];
        let mut tree = EdgeSet::EMPTY;
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &(w, e) in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        tree = tree.with(e);
                        queue.push_back(w);
                    }
                }
            }
        }
        tree
    }

    /// Adjacency lists `(neighbour, edge index)` restricted to `f`.
    pub fn adjacency(&self, f: EdgeSet) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.ids.len()];
        for e in f.iter() {
            let (u, v) = self.edges[e];
            adj[u].push((v, e));
            adj[v].push((u, e));
        }
        adj
    }

    /// Every spanning tree exactly once, by contraction and deletion: an
    /// edge joining two contracted vertices is deleted, a bridge of the
    /// remaining graph is contracted, any other edge branches both ways.
    pub fn spanning_trees(&self) -> Result<Vec<EdgeSet>> {
        let mut out = Vec::new();
        self.for_each_spanning_tree(|t| out.push(t))?;
        Ok(out)
    }

    pub fn for_each_spanning_tree<F: FnMut(EdgeSet)>(&self, mut visit: F) -> Result<()> {
        if self.ids.is_empty() || !self.is_connected() {
            return Err(Error::NotConnected);
        }
        let dsu = DisjointSets::new(self.ids.len());
        self.trees_rec(0, EdgeSet::EMPTY, self.all_edges(), dsu, &mut visit);
        Ok(())
    }

    fn trees_rec<F: FnMut(EdgeSet)>(
        &self,
        k: usize,
        chosen: EdgeSet,
        available: EdgeSet,
        mut dsu: DisjointSets,
        visit: &mut F,
    ) {
        if chosen.len() + 1 == self.ids.len() {
            visit(chosen);
            return;
        }
        if k == self.edges.len() {
            return;
        }
        let (u, v) = self.edges[k];
        if dsu.find(u) == dsu.find(v) {
            self.trees_rec(k + 1, chosen, available.without(k), dsu, visit);
            return;
        }
        let bridge = !self.spans_connected(available.without(k));
        if !bridge {
            self.trees_rec(k + 1, chosen, available.without(k), dsu.clone(), visit);
        }
        dsu.union(u, v);
        self.trees_rec(k + 1, chosen.with(k), available, dsu, visit);
    }

    /// Parses edge-list text: one `u v` pair per line, or a lone `v` to declare
    /// an isolated vertex. Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut ids: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            for tok in &tokens {
                if !tok
                    .chars()
                    .all(|c| c.is_alphanumeric() || "_.-".contains(c))
                {
                    return Err(Error::Parse {
                        line,
                        message: format!("malformed vertex id {tok:?}"),
                    });
                }
            }
            let mut intern = |s: &str| -> usize {
                *index.entry(s.to_string()).or_insert_with(|| {
                    ids.push(s.to_string());
                    ids.len() - 1
                })
            };
            match tokens.as_slice() {
                [v] => {
                    intern(v);
                }
                [a, b] => {
                    if a == b {
                        return Err(Error::Loop {
                            line,
                            vertex: a.to_string(),
                        });
                    }
                    let (u, v) = (intern(a), intern(b));
                    edges.push((u, v));
                }
                _ => {
                    return Err(Error::Parse {
                        line,
                        message: format!("expected `u v` or `v`, found {} tokens", tokens.len()),
                    })
                }
            }
        }
        Graph::new(ids, edges)
    }

    /// Edge-list text that [`Graph::parse`] reads back to an equal graph.
    /// Vertices that would otherwise appear out of order are declared alone
    /// just before they are needed.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let mut next = 0;
        for &(u, v) in &self.edges {
            // the edge line itself introduces u then v; anything else unseen
            // below v has to be declared first, and then u and v with it
            let natural = (next == u && v == u + 1) || (u < next && v == next) || v < next;
            if !natural {
                for id in &self.ids[next..=v] {
                    out.push_str(id);
                    out.push('\n');
                }
            }
            next = next.max(v + 1);
            out.push_str(&format!("{} {}\n", self.ids[u], self.ids[v]));
        }
        for id in &self.ids[next..] {
            out.push_str(id);
            out.push('\n');
        }
        out
    }

    /// Edges of `f` as id pairs.
    pub fn edge_pairs(&self, f: EdgeSet) -> Vec<[String; 2]> {
        f.iter()
            .map(|e| {
                let (u, v) = self.edges[e];
                [self.ids[u].clone(), self.ids[v].clone()]
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let json = GraphJson {
            vertices: &self.ids,
            edges: self
                .edges
                .iter()
                .map(|&(u, v)| [self.ids[u].as_str(), self.ids[v].as_str()])
                .collect(),
        };
        serde_json::to_value(json).expect("graph serializes")
    }
}

/// Number of spanning trees by the matrix-tree theorem: the determinant of
/// the Laplacian with the first row and column removed, by fraction-free
/// Bareiss elimination. Zero for disconnected graphs.
pub fn spanning_tree_count(g: &Graph) -> num_bigint::BigInt {
    use num_bigint::BigInt;
    use num_traits::{One, Zero};
    let n = g.num_vertices();
    if n <= 1 {
        return BigInt::from(usize::from(n == 1));
    }
    let k = n - 1;
    let mut lap = vec![vec![BigInt::zero(); k]; k];
    for &(u, v) in g.edges() {
        for (a, b) in [(u, v), (v, u)] {
            if a > 0 {
                lap[a - 1][a - 1] += 1;
                if b > 0 {
                    lap[a - 1][b - 1] -= 1;
                }
            }
        }
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for i in 0..k {
        if lap[i][i].is_zero() {
            match (i + 1..k).find(|&r| !lap[r][i].is_zero()) {
                Some(r) => {
                    lap.swap(i, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for r in i + 1..k {
            for c in i + 1..k {
                let val = (&lap[r][c] * &lap[i][i] - &lap[r][i] * &lap[i][c]) / &prev;
                lap[r][c] = val;
            }
        }
        prev = lap[i][i].clone();
    }
    sign * prev
}

/// A spanning tree chosen by Kruskal's algorithm over a random edge order.
pub fn random_spanning_tree<R: rand::Rng>(g: &Graph, rng: &mut R) -> Result<EdgeSet> {
    use rand::seq::SliceRandom;
    if g.num_vertices() == 0 || !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let mut order: Vec<usize> = (0..g.num_edges()).collect();
    order.shuffle(rng);
    let mut dsu = DisjointSets::new(g.num_vertices());
    Ok(EdgeSet::from_indices(order.into_iter().filter(|&e| {
        let (u, v) = g.edge(e);
        dsu.union(u, v)
    })))
}

fn numbered_ids(start: usize, count: usize) -> Vec<String> {
    (start..start + count).map(|i| i.to_string()).collect()
}

/// A loopless multigraph; edges carry positive multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    labels: Vec<String>,
    edges: BTreeMap<(usize, usize), usize>,
}

impl Multigraph {
    pub fn new<I>(labels: Vec<String>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = labels.len();
        if n > MAX_BITS {
            return Err(Error::TooLarge {
                what: "vertex count",
                size: n,
                cap: MAX_BITS,
            });
        }
        let mut map = BTreeMap::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) has an undeclared endpoint"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {}", labels[u])));
            }
            *map.entry((u.min(v), u.max(v))).or_insert(0) += 1;
        }
        Ok(Multigraph { labels, edges: map })
    }

    pub fn from_graph(g: &Graph) -> Self {
        Multigraph::new(g.ids.clone(), g.edges.iter().copied())
            .expect("graph is a valid multigraph")
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    /// Total edge count, with multiplicity.
    pub fn num_edges(&self) -> usize {
        self.edges.values().sum()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.edges.get(&(u.min(v), u.max(v))).copied().unwrap_or(0)
    }

    /// Distinct vertex pairs with their multiplicities.
    pub fn pairs(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.edges.iter().map(|(&k, &m)| (k, m))
    }

    /// Number of edges (with multiplicity) inside the vertex mask.
    pub fn induced_count(&self, vmask: u64) -> usize {
        self.edges
            .iter()
            .filter(|(&(u, v), _)| vmask >> u & 1 == 1 && vmask >> v & 1 == 1)
            .map(|(_, &m)| m)
            .sum()
    }

    /// The simple graph on the same vertices with one edge per adjacent pair.
    pub fn underlying_simple(&self) -> Graph {
        Graph::new(self.labels.clone(), self.edges.keys().copied())
            .expect("underlying simple graph within caps")
    }
}

/// The quotient `G/A` together with the number of intra-block edges it drops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub multigraph: Multigraph,
    pub dropped: usize,
}

/// Collapses each block of `a` to a single vertex. Every edge of `g` between
/// distinct blocks becomes one parallel copy; intra-block edges are dropped.
pub fn quotient(g: &Graph, a: &Partition) -> Result<Quotient> {
    if a.ground_size() != g.num_vertices() {
        return Err(Error::GroundSetMismatch(a.ground_size(), g.num_vertices()));
    }
    let labels = a
        .blocks()
        .iter()
        .map(|block| {
            if block.len() == 1 {
                g.vertex_id(block[0]).to_string()
            } else {
                let names: Vec<&str> = block.iter().map(|&v| g.vertex_id(v)).collect();
                format!("{{{}}}", names.join(","))
            }
        })
        .collect();
    let mut cross = Vec::new();
    let mut dropped = 0;
    for &(u, v) in g.edges() {
        let (bu, bv) = (a.block_of(u), a.block_of(v));
        if bu == bv {
            dropped += 1;
        } else {
            cross.push((bu, bv));
        }
    }
    Ok(Quotient {
        multigraph: Multigraph::new(labels, cross)?,
        dropped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4_with_ear() -> Graph {
        Graph::parse("1 2\n2 3\n3 4\n4 5\n1 3\n1 4\n2 4\n3 5").unwrap()
    }

    #[test]
    fn parse_simple() {
        let g = Graph::parse("1 2\n2 3").unwrap();
        assert_eq!(g.ids(), ["1", "2", "3"]);
        assert_eq!(g.edges(), [(0, 1), (1, 2)]);
    }

    #[test]
    fn parse_rejects_loop() {
        assert!(matches!(
            Graph::parse("1 1"),
            Err(Error::Loop { line: 1, .. })
        ));
    }

    #[test]
    fn parse_reports_line_of_malformed_token() {
        let err = Graph::parse("1 2\n\n2 3 4\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = Graph::parse("# header\n1 {2}\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn parse_comments_duplicates_and_isolated() {
        let g = Graph::parse("# a comment\n1 2 # trailing\n2 1\n\n7\n").unwrap();
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.num_edges(), 1);
        assert_eq!(g.vertex_id(2), "7");
        assert_eq!(Graph::parse(&g.to_edge_list()).unwrap(), g);
        let ids = ["a", "b", "c", "d", "e"].map(String::from).to_vec();
        let h = Graph::new(ids, [(0, 3), (1, 2)]).unwrap();
        assert_eq!(Graph::parse(&h.to_edge_list()).unwrap(), h);
    }

    #[test]
    fn parse_k4_with_ear() {
        let g = k4_with_ear();
        assert_eq!(g.num_vertices(), 5);
        let labels: Vec<String> = (0..g.num_edges()).map(|e| g.edge_label(e)).collect();
        assert_eq!(labels, ["12", "13", "14", "23", "24", "34", "35", "45"]);
    }

    #[test]
    fn json_shape() {
        let g = Graph::parse("a b\nb c").unwrap();
        assert_eq!(
            g.to_json().to_string(),
            r#"{"vertices":["a","b","c"],"edges":[["a","b"],["b","c"]]}"#
        );
    }

    #[test]
    fn spanning_tree_counts() {
        assert_eq!(Graph::complete(3).spanning_trees().unwrap().len(), 3);
        assert_eq!(Graph::complete(4).spanning_trees().unwrap().len(), 16);
        assert_eq!(Graph::cycle(4).spanning_trees().unwrap().len(), 4);
        assert_eq!(Graph::path(5).spanning_trees().unwrap().len(), 1);
        assert_eq!(
            Graph::complete(1).spanning_trees().unwrap(),
            [EdgeSet::EMPTY]
        );
    }

    #[test]
    fn matrix_tree_counts_match_enumeration() {
        for g in [
            Graph::complete(4),
            Graph::complete(5),
            Graph::wheel(4),
            Graph::cycle(6),
            k4_with_ear(),
        ] {
            let listed = g.spanning_trees().unwrap();
            assert_eq!(
                spanning_tree_count(&g),
                num_bigint::BigInt::from(listed.len())
            );
            assert!(listed.iter().all(|&t| g.is_spanning_tree(t)));
        }
        let split = Graph::parse("1 2\n3 4").unwrap();
        assert_eq!(spanning_tree_count(&split), num_bigint::BigInt::from(0));
    }

    #[test]
    fn spanning_trees_need_connectivity() {
        let g = Graph::parse("1 2\n3 4").unwrap();
        assert_eq!(g.spanning_trees(), Err(Error::NotConnected));
    }

    #[test]
    fn quotient_examples() {
        let k4 = Graph::complete(4);
        let q = quotient(&k4, &Partition::discrete(4)).unwrap();
        assert_eq!(q.dropped, 0);
        assert_eq!(q.multigraph.num_edges(), 6);
        assert!(q.multigraph.pairs().all(|(_, m)| m == 1));

        let a = Partition::from_blocks(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let q = quotient(&k4, &a).unwrap();
        assert_eq!(q.dropped, 2);
        assert_eq!(q.multigraph.num_vertices(), 2);
        assert_eq!(q.multigraph.multiplicity(0, 1), 4);

        let g = k4_with_ear();
        let a = Partition::from_blocks(5, &[vec![0, 1, 2, 3], vec![4]]).unwrap();
        let q = quotient(&g, &a).unwrap();
        assert_eq!(q.dropped, 6);
        assert_eq!(q.multigraph.multiplicity(0, 1), 2);
        assert_eq!(q.multigraph.labels(), ["{1,2,3,4}", "5"]);
    }

    #[test]
    fn edge_subgraph_preserves_order() {
        let g = k4_with_ear();
        let f = g.edge_set(&[("3", "5"), ("4", "5"), ("1", "2")]);
        let h = g.edge_subgraph(f);
        assert_eq!(h.ids(), ["1", "2", "3", "4", "5"]);
        let labels: Vec<String> = (0..h.num_edges()).map(|e| h.edge_label(e)).collect();
        assert_eq!(labels, ["12", "35", "45"]);
    }

    #[test]
    fn wheel_shape() {
        let w = Graph::wheel(4);
        assert_eq!(w.num_vertices(), 5);
        assert_eq!(w.num_edges(), 8);
        assert_eq!(w.degree_in(0, w.all_edges()), 4);
    }
}
