//! Cellules of the picture space and its irreducible components.
//!
//! A cellule is indexed by the coincidence pattern of the vertex points,
//! i.e. a partition `A` of `V`. Its dimension is `2s + q` where `s` is the
//! number of blocks and `q` the number of edges inside blocks, whose lines
//! are free to turn about the shared point. Containment of one cellule in
//! the closure of another is decided combinatorially from rigidity data.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{quotient, EdgeSet, Graph};
use crate::partition::{all_partitions, Partition};
use crate::rigidity::{laman_independent, multigraph_sparse_within, rigidity_circuits};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cellule {
    pub partition: Partition,
    pub dimension: usize,
    pub collapsed_edges: EdgeSet,
}

pub fn cellule(g: &Graph, a: &Partition) -> Result<Cellule> {
    if a.ground_size() != g.num_vertices() {
        return Err(Error::GroundSetMismatch(a.ground_size(), g.num_vertices()));
    }
    let collapsed_edges = EdgeSet::from_indices(
        g.edges()
            .iter()
            .enumerate()
            .filter(|(_, &(u, v))| a.same_block(u, v))
            .map(|(e, _)| e),
    );
    Ok(Cellule {
        partition: a.clone(),
        dimension: 2 * a.num_blocks() + collapsed_edges.len(),
        collapsed_edges,
    })
}

/// Whether every vertex of `V(f)` lies in a single block of `a`.
pub fn collapses(g: &Graph, a: &Partition, f: EdgeSet) -> bool {
    let mut blocks = f.iter().flat_map(|e| {
        let (u, v) = g.edge(e);
        [a.block_of(u), a.block_of(v)]
    });
    match blocks.next() {
        None => true,
        Some(first) => blocks.all(|b| b == first),
    }
}

/// The cellule of `a` lies in the picture variety iff `a` collapses no
/// rigidity circuit of `g`.
pub fn cellule_in_picture_variety(g: &Graph, a: &Partition, edge_cap: usize) -> Result<bool> {
    if a.ground_size() != g.num_vertices() {
        return Err(Error::GroundSetMismatch(a.ground_size(), g.num_vertices()));
    }
    Ok(rigidity_circuits(g, edge_cap)?
        .into_iter()
        .all(|c| !collapses(g, a, c)))
}

/// Whether the cellule of `b` lies in the closure of the cellule of `a`:
/// `a ⪯ b`, and `b / a` collapses no multigraph pseudocircuit of the
/// quotient multigraph `G / a`.
///
/// A sub-multigraph contains a pseudocircuit exactly when it violates the
/// (2,3) count somewhere (a minimal violator is a pseudocircuit), so each
/// block of `b / a` is tested with the pebble game on the edges inside it.
pub fn closure_contains(g: &Graph, a: &Partition, b: &Partition) -> Result<bool> {
    if a.ground_size() != g.num_vertices() {
        return Err(Error::GroundSetMismatch(a.ground_size(), g.num_vertices()));
    }
    if !a.refines(b)? {
        return Ok(false);
    }
    let q = quotient(g, a)?.multigraph;
    let b_over_a = a.quotient_by(b)?;
    Ok(b_over_a
        .block_masks()
        .into_iter()
        .filter(|m| m.count_ones() >= 2)
        .all(|m| multigraph_sparse_within(&q, m)))
}

/// The same relation through the separate conditions: refinement, no
/// rigidity circuit of the simple quotient collapsed by `b / a`, and at most
/// one edge of `g` between two `a`-blocks sharing a `b`-block.
pub fn closure_contains_by_conditions(
    g: &Graph,
    a: &Partition,
    b: &Partition,
    edge_cap: usize,
) -> Result<bool> {
    if !a.refines(b)? {
        return Ok(false);
    }
    let q = quotient(g, a)?.multigraph;
    let b_over_a = a.quotient_by(b)?;
    let parallel_ok = q
        .pairs()
        .all(|((i, j), mult)| mult <= 1 || !b_over_a.same_block(i, j));
    if !parallel_ok {
        return Ok(false);
    }
    let simple = q.underlying_simple();
    Ok(rigidity_circuits(&simple, edge_cap)?
        .into_iter()
        .all(|c| !collapses(&simple, &b_over_a, c)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub partition: Partition,
    pub dimension: usize,
    /// The discrete partition, whose cellule closure is the picture variety.
    pub is_picture_variety: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    pub components: Vec<Component>,
    pub cm_certificate: bool,
}

impl ComponentReport {
    pub fn partitions(&self) -> Vec<&Partition> {
        self.components.iter().map(|c| &c.partition).collect()
    }

    pub fn to_json(&self, g: &Graph) -> Value {
        let components: Vec<Value> = self
            .components
            .iter()
            .map(|c| {
                let blocks: Vec<Vec<&str>> = c
                    .partition
                    .blocks()
                    .iter()
                    .map(|b| b.iter().map(|&v| g.vertex_id(v)).collect())
                    .collect();
                json!({ "blocks": blocks, "dim": c.dimension })
            })
            .collect();
        json!({ "components": components, "cm_certificate": self.cm_certificate })
    }
}

/// Partitions of `V(g)` maximal in the closure order, found by testing each
/// partition against all of its proper refinements.
pub fn maximal_partitions(g: &Graph, partition_cap: usize) -> Result<Vec<Partition>> {
    let mut out = Vec::new();
    for a in all_partitions(g.num_vertices(), partition_cap)? {
        let mut covered = false;
        for finer in a.refinements() {
            if finer != a && closure_contains(g, &finer, &a)? {
                covered = true;
                break;
            }
        }
        if !covered {
            out.push(a);
        }
    }
    Ok(out)
}

fn component_order(a: &Component, b: &Component) -> std::cmp::Ordering {
    b.partition
        .num_blocks()
        .cmp(&a.partition.num_blocks())
        .then_with(|| a.partition.cmp(&b.partition))
}

/// Irreducible components of the picture space, each the closure of a
/// maximal cellule. Connected components of `g` are handled separately and
/// combined by product, so no maximal partition merges vertices across them.
pub fn irreducible_components(g: &Graph, partition_cap: usize) -> Result<ComponentReport> {
    let n = g.num_vertices();
    let mut combos: Vec<Vec<usize>> = vec![vec![0; n]];
    let mut next_label = vec![0usize];
    for verts in g.components_of(g.all_edges()) {
        let mask = verts.iter().fold(0u64, |m, &v| m | 1 << v);
        let h = g.induced_subgraph(mask);
        let local = maximal_partitions(&h, partition_cap)?;
        let mut grown = Vec::new();
        let mut grown_next = Vec::new();
        for (labels, &offset) in combos.iter().zip(&next_label) {
            for p in &local {
                let mut l = labels.clone();
                for (i, &v) in verts.iter().enumerate() {
                    l[v] = offset + p.block_of(i);
                }
                grown.push(l);
                grown_next.push(offset + p.num_blocks());
            }
        }
        combos = grown;
        next_label = grown_next;
    }
    let mut components = combos
        .iter()
        .map(|labels| {
            let partition = Partition::from_labels(labels);
            let dimension = cellule(g, &partition)?.dimension;
            Ok(Component {
                is_picture_variety: partition.is_discrete(),
                partition,
                dimension,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    components.sort_by(component_order);
    Ok(ComponentReport {
        components,
        cm_certificate: cm_certificate(g),
    })
}

/// The same components by testing every partition of `V` against all of its
/// refinements, with no splitting into connected components.
pub fn irreducible_components_direct(g: &Graph, partition_cap: usize) -> Result<ComponentReport> {
    let mut components = maximal_partitions(g, partition_cap)?
        .into_iter()
        .map(|partition| {
            let dimension = cellule(g, &partition)?.dimension;
            Ok(Component {
                is_picture_variety: partition.is_discrete(),
                partition,
                dimension,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    components.sort_by(component_order);
    Ok(ComponentReport {
        components,
        cm_certificate: cm_certificate(g),
    })
}

/// Sufficient certificate for Cohen–Macaulayness of the picture variety:
/// `E` is rigidity-independent. `false` asserts nothing.
pub fn cm_certificate(g: &Graph) -> bool {
    laman_independent(g, g.all_edges())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::DEFAULT_PARTITION_CAP;
    use crate::rigidity::DEFAULT_EDGE_CAP;

    #[test]
    fn cellule_dimensions() {
        let k4 = Graph::complete(4);
        assert_eq!(
            cellule(&k4, &Partition::indiscrete(4)).unwrap().dimension,
            8
        );
        assert_eq!(cellule(&k4, &Partition::discrete(4)).unwrap().dimension, 8);
        let k2 = Graph::complete(2);
        assert_eq!(
            cellule(&k2, &Partition::indiscrete(2)).unwrap().dimension,
            3
        );
        assert!(cellule(&k2, &Partition::discrete(3)).is_err());
    }

    #[test]
    fn collapse_examples() {
        let g = Graph::parse("1 2\n2 3\n3 4\n4 5\n1 3\n1 4\n2 4\n3 5").unwrap();
        let k4_edges = g.induced_edges(0b01111);
        assert!(collapses(&g, &Partition::indiscrete(5), g.all_edges()));
        assert!(!collapses(
            &g,
            &Partition::discrete(5),
            EdgeSet::singleton(0)
        ));
        let a = Partition::from_blocks(5, &[vec![0, 1, 2, 3], vec![4]]).unwrap();
        assert!(collapses(&g, &a, k4_edges));
        assert!(!collapses(&g, &a, g.all_edges()));
    }

    #[test]
    fn containment_in_picture_variety() {
        let k4 = Graph::complete(4);
        assert!(
            !cellule_in_picture_variety(&k4, &Partition::indiscrete(4), DEFAULT_EDGE_CAP).unwrap()
        );
        assert!(
            cellule_in_picture_variety(&k4, &Partition::discrete(4), DEFAULT_EDGE_CAP).unwrap()
        );
        let c4 = Graph::cycle(4);
        assert!(
            cellule_in_picture_variety(&c4, &Partition::indiscrete(4), DEFAULT_EDGE_CAP).unwrap()
        );
    }

    #[test]
    fn closure_examples() {
        let k4 = Graph::complete(4);
        let (d, i) = (Partition::discrete(4), Partition::indiscrete(4));
        assert!(closure_contains(&k4, &d, &d).unwrap());
        assert!(closure_contains(&k4, &i, &i).unwrap());
        assert!(!closure_contains(&k4, &d, &i).unwrap());
        assert!(!closure_contains(&k4, &i, &d).unwrap());
        let k2 = Graph::complete(2);
        assert!(closure_contains(&k2, &Partition::discrete(2), &Partition::indiscrete(2)).unwrap());
    }

    #[test]
    fn component_examples() {
        let k4 = irreducible_components(&Graph::complete(4), DEFAULT_PARTITION_CAP).unwrap();
        assert_eq!(
            k4.partitions(),
            [&Partition::discrete(4), &Partition::indiscrete(4)]
        );
        assert!(k4.components.iter().all(|c| c.dimension == 8));
        assert!(k4.components[0].is_picture_variety);
        assert!(!k4.cm_certificate);
        assert_eq!(
            k4.to_json(&Graph::complete(4)).to_string(),
            r#"{"components":[{"blocks":[["1"],["2"],["3"],["4"]],"dim":8},{"blocks":[["1","2","3","4"]],"dim":8}],"cm_certificate":false}"#
        );

        let c4 = irreducible_components(&Graph::cycle(4), DEFAULT_PARTITION_CAP).unwrap();
        assert_eq!(c4.partitions(), [&Partition::discrete(4)]);
        assert_eq!(c4.components[0].dimension, 8);
        assert!(c4.cm_certificate);

        let w4 = irreducible_components(&Graph::wheel(4), DEFAULT_PARTITION_CAP).unwrap();
        assert_eq!(
            w4.partitions(),
            [&Partition::discrete(5), &Partition::indiscrete(5)]
        );
        assert!(w4.components.iter().all(|c| c.dimension == 10));
    }

    #[test]
    fn cm_certificates() {
        assert!(cm_certificate(&Graph::cycle(4)));
        assert!(!cm_certificate(&Graph::complete(4)));
        assert!(cm_certificate(&Graph::path(6)));
        assert!(cm_certificate(
            &Graph::parse("1 2\n1 3\n1 4\n4 5\n4 6").unwrap()
        ));
    }

    #[test]
    fn product_over_connected_components_matches_direct() {
        let graphs = [
            "1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n5 6\n",
            "1 2\n3 4\n",
            "1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n5\n",
        ];
        for text in graphs {
            let g = Graph::parse(text).unwrap();
            let split = irreducible_components(&g, DEFAULT_PARTITION_CAP).unwrap();
            let direct = irreducible_components_direct(&g, DEFAULT_PARTITION_CAP).unwrap();
            assert_eq!(split, direct, "{text}");
        }
    }
}
