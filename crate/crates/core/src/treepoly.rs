//! Tree polynomials `τ(G) = det M_T` and the ideal generators they provide.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cycles::slope_matrix;
use crate::error::{Error, Result};
use crate::field::{Fp, DEFAULT_PRIME};
use crate::graph::{random_spanning_tree, spanning_tree_count, EdgeSet, Graph};
use crate::poly::{determinant, DivisionOutcome, MultilinearPoly};
use crate::rigidity::{coupled_spanning_trees, is_rigidity_circuit, rigidity_circuits};

/// Above this many spanning trees, tree-choice independence is sampled.
pub const EXHAUSTIVE_TREE_LIMIT: usize = 1000;
pub const SAMPLED_TREES: usize = 20;

/// `det M_T` for the given spanning tree, without sign normalization.
pub fn slope_determinant(g: &Graph, t: EdgeSet) -> Result<MultilinearPoly> {
    let m = slope_matrix(g, t)?;
    if m.rows.len() != m.cols.len() {
        return Err(Error::TreePolyUndefined(format!(
            "slope matrix is {}x{}, not square",
            m.rows.len(),
            m.cols.len()
        )));
    }
    determinant(&m.entries)
}

fn check_defined(g: &Graph) -> Result<()> {
    let n = g.num_vertices();
    if n < 2 {
        return Err(Error::TreePolyUndefined(
            "needs at least two vertices".into(),
        ));
    }
    if g.num_edges() + 2 != 2 * n {
        return Err(Error::TreePolyUndefined(format!(
            "|E| = {} but 2|V| - 2 = {}",
            g.num_edges(),
            2 * n - 2
        )));
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    Ok(())
}

/// The tree polynomial of a connected graph with `|E| = 2|V| − 2`, taken on
/// the breadth-first tree from the least vertex and normalized so its
/// smallest monomial has a positive coefficient. Zero exactly when `g` is not
/// a rigidity pseudocircuit.
pub fn tree_polynomial(g: &Graph) -> Result<MultilinearPoly> {
    check_defined(g)?;
    Ok(slope_determinant(g, g.bfs_forest())?.sign_normalized())
}

/// Checks the tree-polynomial structure theorem on `g`: the monomials of
/// `τ(g)` are exactly the coupled spanning trees, every coefficient is ±1,
/// and `ε(E ∖ T) = (−1)^{n−1} ε(T)`.
pub fn verify_tree_theorem(g: &Graph) -> Result<bool> {
    let tau = tree_polynomial(g)?;
    let cpl: BTreeSet<EdgeSet> = coupled_spanning_trees(g).into_iter().collect();
    let supports: BTreeSet<EdgeSet> = tau.terms().map(|(m, _)| m).collect();
    if supports != cpl {
        return Ok(false);
    }
    if !tau.terms().all(|(_, c)| c.abs().is_one()) {
        return Ok(false);
    }
    let all = g.all_edges();
    let parity = if g.num_vertices() % 2 == 1 { 1 } else { -1 };
    let ok = tau
        .terms()
        .all(|(t, c)| tau.coefficient(all.difference(t)) == c * BigInt::from(parity));
    Ok(ok)
}

/// Whether `det M_T` agrees up to sign over every spanning tree, or over a
/// seeded sample of [`SAMPLED_TREES`] trees when there are more than
/// [`EXHAUSTIVE_TREE_LIMIT`].
pub fn tree_choice_independence(g: &Graph, seed: u64) -> Result<bool> {
    check_defined(g)?;
    let reference = slope_determinant(g, g.bfs_forest())?;
    let count = spanning_tree_count(g);
    let trees = if count <= BigInt::from(EXHAUSTIVE_TREE_LIMIT) {
        g.spanning_trees()?
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..SAMPLED_TREES)
            .map(|_| random_spanning_tree(g, &mut rng))
            .collect::<Result<_>>()?
    };
    for t in trees {
        if !slope_determinant(g, t)?.eq_up_to_sign(&reference) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `τ` of the subgraph `(V(C), C)`, with variables named by `g`'s edges.
pub fn subgraph_tree_polynomial(g: &Graph, c: EdgeSet) -> Result<MultilinearPoly> {
    let h = g.edge_subgraph(c);
    let map: Vec<usize> = c.iter().collect();
    Ok(tree_polynomial(&h)?.remap(&map))
}

/// Randomized divisibility test at `trials` points of `F_prime`.
///
/// If `d | p` then `p / d` involves no variable of `d`, so for two points
/// that agree off `vars(d)` and keep `d` nonzero,
/// `p(x₁, y)·d(x₂) = p(x₂, y)·d(x₁)`. When `d ∤ p` that identity is a nonzero
/// polynomial of degree at most `deg p + deg d`, and a uniform point
/// satisfies it with probability at most `(deg p + deg d) / prime`.
pub fn divides_randomized(
    d: &MultilinearPoly,
    p: &MultilinearPoly,
    prime: u64,
    trials: usize,
    seed: u64,
) -> Result<bool> {
    if prime <= 1 << 30 {
        return Err(Error::InvalidPrime(
            prime,
            "divisibility needs a prime above 2^30".into(),
        ));
    }
    let field = Fp::new(prime)?;
    if d.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    let dvars = d.variables();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample =
        |rng: &mut ChaCha8Rng| -> Vec<u64> { (0..64).map(|_| rng.gen_range(0..prime)).collect() };
    for _ in 0..trials {
        let base = sample(&mut rng);
        let point = |rng: &mut ChaCha8Rng| -> Option<(Vec<u64>, u64)> {
            for _ in 0..64 {
                let mut x = base.clone();
                for e in dvars.iter() {
                    x[e] = rng.gen_range(0..prime);
                }
                let dv = d.eval_mod(field, &x);
                if dv != 0 {
                    return Some((x, dv));
                }
            }
            None
        };
        let (Some((x1, d1)), Some((x2, d2))) = (point(&mut rng), point(&mut rng)) else {
            // d vanishing at 64 random points is a sampling failure, not evidence
            continue;
        };
        let lhs = field.mul(p.eval_mod(field, &x1), d2);
        let rhs = field.mul(p.eval_mod(field, &x2), d1);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Divisibility over the rationals: exact division when it succeeds, the
/// randomized test otherwise.
pub fn divides(
    d: &MultilinearPoly,
    p: &MultilinearPoly,
    prime: u64,
    trials: usize,
) -> Result<bool> {
    if d.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    if let DivisionOutcome::Quotient(_) = MultilinearPoly::exact_div(p, d)? {
        return Ok(true);
    }
    divides_randomized(d, p, prime, trials, 0)
}

/// Default prime and trial count for [`divides`].
pub fn divides_default(d: &MultilinearPoly, p: &MultilinearPoly) -> Result<bool> {
    divides(d, p, DEFAULT_PRIME, 20)
}

/// Irreducibility of `τ(g)` read off the structure theorem: it holds exactly
/// when `g` is a rigidity circuit. No factorization is attempted.
pub fn tree_polynomial_irreducible(g: &Graph) -> bool {
    is_rigidity_circuit(g)
}

/// One `(C, τ(C))` per rigidity circuit `C` of `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealGenerators {
    pub generators: Vec<(EdgeSet, MultilinearPoly)>,
}

impl IdealGenerators {
    pub fn to_json(&self, g: &Graph) -> Value {
        json!({
            "generators": self
                .generators
                .iter()
                .map(|(c, p)| json!({
                    "circuit": g.edge_pairs(*c),
                    "degree": p.degree(),
                    "polynomial": p.to_json(g),
                }))
                .collect::<Vec<_>>()
        })
    }
}

pub fn ideal_generators(g: &Graph, cap: usize) -> Result<IdealGenerators> {
    let generators = rigidity_circuits(g, cap)?
        .into_iter()
        .map(|c| Ok((c, subgraph_tree_polynomial(g, c)?)))
        .collect::<Result<_>>()?;
    Ok(IdealGenerators { generators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rigidity::DEFAULT_EDGE_CAP;

    #[test]
    fn undefined_inputs() {
        assert!(matches!(
            tree_polynomial(&Graph::cycle(4)),
            Err(Error::TreePolyUndefined(_))
        ));
        // K5 plus an isolated vertex: 10 = 2*6 - 2 edges but disconnected
        let mut text = Graph::complete(5).to_edge_list();
        text.push_str("6\n");
        let g = Graph::parse(&text).unwrap();
        assert_eq!(g.num_edges() + 2, 2 * g.num_vertices());
        assert_eq!(tree_polynomial(&g), Err(Error::NotConnected));
    }

    #[test]
    fn k4_tree_polynomial() {
        let tau = tree_polynomial(&Graph::complete(4)).unwrap();
        assert_eq!(tau.num_terms(), 12);
        assert!(tau.is_homogeneous());
        assert_eq!(tau.degree(), Some(3));
        assert!(tau.terms().all(|(_, c)| c.abs().is_one()));
    }

    #[test]
    fn add_doubles_coefficients() {
        let tau = tree_polynomial(&Graph::complete(4)).unwrap();
        let twice = tau.add(&tau);
        assert_eq!(twice.num_terms(), 12);
        assert!(twice.terms().all(|(_, c)| c.abs() == BigInt::from(2)));
    }

    #[test]
    fn ideal_generator_counts() {
        let k4 = Graph::complete(4);
        let ig = ideal_generators(&k4, DEFAULT_EDGE_CAP).unwrap();
        assert_eq!(ig.generators.len(), 1);
        assert_eq!(ig.generators[0].1, tree_polynomial(&k4).unwrap());
        assert!(ideal_generators(&Graph::cycle(4), DEFAULT_EDGE_CAP)
            .unwrap()
            .generators
            .is_empty());
        let k5 = Graph::complete(5);
        let ig = ideal_generators(&k5, DEFAULT_EDGE_CAP).unwrap();
        assert_eq!(ig.generators.len(), 20);
        for (c, p) in &ig.generators {
            assert_eq!(p.degree(), Some(k5.support_size(*c) - 1));
            assert!(matches!(p.degree(), Some(3) | Some(4)));
        }
    }

    #[test]
    fn divides_rejects_bad_inputs() {
        let tau = tree_polynomial(&Graph::complete(4)).unwrap();
        assert_eq!(
            divides(&MultilinearPoly::zero(), &tau, DEFAULT_PRIME, 5),
            Err(Error::ZeroDivisor)
        );
        assert!(matches!(
            divides_randomized(&tau, &tau, 65_537, 5, 0),
            Err(Error::InvalidPrime(..))
        ));
    }

    #[test]
    fn irreducibility_predicate() {
        assert!(tree_polynomial_irreducible(&Graph::wheel(5)));
        assert!(!tree_polynomial_irreducible(
            &Graph::parse("1 2\n2 3\n3 4\n4 5\n1 3\n1 4\n2 4\n3 5").unwrap()
        ));
    }
}
