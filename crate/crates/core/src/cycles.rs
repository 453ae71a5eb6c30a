//! Oriented edges, fundamental cycles of a spanning tree, and the cycle and
//! slope matrices built from them.
//!
//! Every edge `ab` is oriented `a → b` with `a` the earlier vertex. For a
//! spanning tree `T` and a non-tree edge `e = v → w`, the fundamental cycle is
//! `z_T(e) = −e + Σ_{f∈T} c_{ef} f`, where the tree path from `v` to `w`
//! traverses `f` along (`+1`) or against (`−1`) its orientation.

use std::collections::{BTreeMap, VecDeque};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph};
use crate::poly::MultilinearPoly;

/// `(tail, head)` per edge, indexed like the graph's edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation(pub Vec<(usize, usize)>);

pub fn default_orientation(g: &Graph) -> Orientation {
    Orientation(g.edges().to_vec())
}

/// An integer 1-chain: edge index to nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SignedEdgeVector(pub BTreeMap<usize, i64>);

impl SignedEdgeVector {
    pub fn coefficient(&self, e: usize) -> i64 {
        self.0.get(&e).copied().unwrap_or(0)
    }

    pub fn support(&self) -> EdgeSet {
        EdgeSet::from_indices(self.0.keys().copied())
    }

    /// Signed endpoint sums: `+c` at each head, `−c` at each tail.
    pub fn boundary(&self, n: usize, orientation: &Orientation) -> Vec<i64> {
        let mut b = vec![0; n];
        for (&e, &c) in &self.0 {
            let (tail, head) = orientation.0[e];
            b[head] += c;
            b[tail] -= c;
        }
        b
    }

    pub fn is_cycle(&self, n: usize, orientation: &Orientation) -> bool {
        self.boundary(n, orientation).iter().all(|&x| x == 0)
    }
}

/// A spanning forest rooted at the least vertex of each component, with
/// parent pointers and depths for path queries.
pub(crate) struct RootedForest {
    parent: Vec<Option<(usize, usize)>>,
    depth: Vec<usize>,
}

impl RootedForest {
    pub(crate) fn new(g: &Graph, forest: EdgeSet) -> Self {
        let n = g.num_vertices();
        let adj = g.adjacency(forest);
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut seen = vec![false; n];
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &(w, e) in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = Some((u, e));
                        depth[w] = depth[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        RootedForest { parent, depth }
    }

    /// Directed steps `(from, to, edge)` of the tree path from `a` to `b`,
    /// which must lie in one component.
    pub(crate) fn path(&self, a: usize, b: usize) -> Vec<(usize, usize, usize)> {
        let (mut x, mut y) = (a, b);
        let mut up = Vec::new();
        let mut down = Vec::new();
        while x != y {
            if self.depth[x] >= self.depth[y] {
                let (p, e) = self.parent[x].expect("vertices share a component");
                up.push((x, p, e));
                x = p;
            } else {
                let (p, e) = self.parent[y].expect("vertices share a component");
                down.push((p, y, e));
                y = p;
            }
        }
        up.extend(down.into_iter().rev());
        up
    }

    /// The fundamental cycle of `e` with respect to this forest.
    pub(crate) fn cycle(&self, g: &Graph, e: usize) -> SignedEdgeVector {
        let (v, w) = g.edge(e);
        let mut coeffs = BTreeMap::new();
        coeffs.insert(e, -1);
        for (from, to, f) in self.path(v, w) {
            let sign = if g.edge(f) == (from, to) { 1 } else { -1 };
            coeffs.insert(f, sign);
        }
        SignedEdgeVector(coeffs)
    }
}

fn require_spanning_tree(g: &Graph, t: EdgeSet) -> Result<()> {
    if !t.is_subset(g.all_edges()) || !g.is_spanning_tree(t) {
        return Err(Error::NotSpanningTree(format!("{t:?}")));
    }
    Ok(())
}

/// The cycle `z_T(e)` for a non-tree edge `e`.
pub fn fundamental_cycle(g: &Graph, t: EdgeSet, e: usize) -> Result<SignedEdgeVector> {
    require_spanning_tree(g, t)?;
    if t.contains(e) {
        return Err(Error::EdgeInTree(e));
    }
    if e >= g.num_edges() {
        return Err(Error::InvalidGraph(format!("no edge with index {e}")));
    }
    Ok(RootedForest::new(g, t).cycle(g, e))
}

/// `C_T = [c_{ef}]`, rows indexed by `S = E ∖ T`, columns by `T`, both in edge order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleMatrix {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub entries: Vec<Vec<i64>>,
}

impl CycleMatrix {
    /// Integer product `self · other`; `self.cols` must equal `other.rows`.
    pub fn mul(&self, other: &CycleMatrix) -> Vec<Vec<i64>> {
        assert_eq!(self.cols, other.rows, "inner index sets differ");
        self.entries
            .iter()
            .map(|row| {
                (0..other.cols.len())
                    .map(|j| row.iter().zip(&other.entries).map(|(a, r)| a * r[j]).sum())
                    .collect()
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!(self.entries)
    }
}

pub fn cycle_matrix(g: &Graph, t: EdgeSet) -> Result<CycleMatrix> {
    require_spanning_tree(g, t)?;
    let forest = RootedForest::new(g, t);
    let s = g.all_edges().difference(t);
    let cols: Vec<usize> = t.iter().collect();
    let entries = s
        .iter()
        .map(|e| {
            let z = forest.cycle(g, e);
            cols.iter().map(|&f| z.coefficient(f)).collect()
        })
        .collect();
    Ok(CycleMatrix {
        rows: s.iter().collect(),
        cols,
        entries,
    })
}

/// Checks `C_T · C_S = I` for a coupled tree `t` with complement `S`.
pub fn verify_inverse(g: &Graph, t: EdgeSet) -> Result<bool> {
    let s = g.all_edges().difference(t);
    require_spanning_tree(g, t)?;
    if !g.is_spanning_tree(s) {
        return Err(Error::NotSpanningTree(format!("complement {s:?}")));
    }
    let ct = cycle_matrix(g, t)?;
    let cs = cycle_matrix(g, s)?;
    let product = ct.mul(&cs);
    Ok(product
        .iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, &x)| x == i64::from(i == j))))
}

/// `M_T = [c_{ef} (m_e − m_f)]`, rows `S`, columns `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeMatrix {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub entries: Vec<Vec<MultilinearPoly>>,
}

impl SlopeMatrix {
    pub fn to_json(&self, g: &Graph) -> Value {
        json!(self
            .entries
            .iter()
            .map(|row| row.iter().map(|p| p.pretty(g)).collect::<Vec<_>>())
            .collect::<Vec<_>>())
    }
}

pub fn slope_matrix(g: &Graph, t: EdgeSet) -> Result<SlopeMatrix> {
    let c = cycle_matrix(g, t)?;
    let entries = c
        .rows
        .iter()
        .zip(&c.entries)
        .map(|(&e, row)| {
            c.cols
                .iter()
                .zip(row)
                .map(|(&f, &coeff)| {
                    MultilinearPoly::var(e)
                        .sub(&MultilinearPoly::var(f))
                        .scale(&coeff.into())
                })
                .collect()
        })
        .collect();
    Ok(SlopeMatrix {
        rows: c.rows,
        cols: c.cols,
        entries,
    })
}
