//! Randomized checks over `F_p` of identities that hold on pictures: the
//! incidence equations, the polygon relations, vanishing of tree
//! polynomials on slopes, and agreement of the slope, length and
//! combinatorial rigidity ranks.
//!
//! Every identity tested is a polynomial identity over the integers. A
//! nonzero polynomial of degree `d` vanishes at a uniform point of `F_p^k`
//! with probability at most `d / p` (Schwartz–Zippel), which is the only
//! bound relied on here.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cycles::RootedForest;
use crate::error::{Error, Result};
use crate::field::Fp;
use crate::graph::{EdgeSet, Graph};
use crate::rigidity::{rigidity_rank, DEFAULT_EDGE_CAP};
use crate::treepoly::ideal_generators;

/// Jacobian ranks are the maximum over this many independent points.
pub const RANK_SEEDS: u64 = 3;
/// Random edge subsets tested by [`matroid_equality_check`] besides `E`.
pub const RANDOM_SUBSETS: usize = 20;
pub const DEFAULT_SAMPLES: usize = 100;

/// Seed for the `index`-th independent task derived from `seed`: one
/// splitmix64 step applied to `seed + (index + 1)·γ`, `γ` the 64-bit golden
/// ratio increment.
pub fn task_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add((index.wrapping_add(1)).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A picture over `F_p`: points `(x_v, y_v)` and, for each edge, the line
/// `y = m_e x + b_e` through both endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PictureSample {
    pub prime: u64,
    pub x: Vec<u64>,
    pub y: Vec<u64>,
    pub m: Vec<u64>,
    pub b: Vec<u64>,
}

impl PictureSample {
    /// Whether both endpoints of every edge lie on its line.
    pub fn satisfies_incidences(&self, g: &Graph) -> bool {
        let f = field_unchecked(self.prime);
        g.edges().iter().enumerate().all(|(e, &(v, w))| {
            [v, w]
                .iter()
                .all(|&u| self.y[u] == f.add(f.mul(self.m[e], self.x[u]), self.b[e]))
        })
    }
}

fn field_unchecked(p: u64) -> Fp {
    Fp::new(p).expect("sample primes are validated on construction")
}

fn field_for(g: &Graph, p: u64) -> Result<Fp> {
    let field = Fp::new(p)?;
    let n = g.num_vertices() as u128;
    if (p as u128) <= 8 * n * n {
        return Err(Error::InvalidPrime(
            p,
            format!("must exceed 8|V|^2 = {}", 8 * n * n),
        ));
    }
    Ok(field)
}

fn sample_points(g: &Graph, field: Fp, rng: &mut ChaCha8Rng) -> (Vec<u64>, Vec<u64>) {
    let n = g.num_vertices();
    let p = field.modulus();
    loop {
        let x: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        let y: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        let edges_ok = g.edges().iter().all(|&(v, w)| x[v] != x[w]);
        let distinct = (0..n).all(|i| (i + 1..n).all(|j| (x[i], y[i]) != (x[j], y[j])));
        if edges_ok && distinct {
            return (x, y);
        }
    }
}

fn picture_from_points(g: &Graph, field: Fp, x: Vec<u64>, y: Vec<u64>) -> PictureSample {
    let mut m = Vec::with_capacity(g.num_edges());
    let mut b = Vec::with_capacity(g.num_edges());
    for &(v, w) in g.edges() {
        let slope = field.div(field.sub(y[w], y[v]), field.sub(x[w], x[v]));
        m.push(slope);
        b.push(field.sub(y[v], field.mul(slope, x[v])));
    }
    PictureSample {
        prime: field.modulus(),
        x,
        y,
        m,
        b,
    }
}

/// A uniformly random generic picture: vertex points pairwise distinct and
/// distinct x-coordinates along every edge, with the slopes and intercepts
/// they determine. Requires an odd prime `p > 8|V|²`.
pub fn random_generic_picture(g: &Graph, p: u64, seed: u64) -> Result<PictureSample> {
    let field = field_for(g, p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (x, y) = sample_points(g, field, &mut rng);
    Ok(picture_from_points(g, field, x, y))
}

/// Whether `Σ c_f m_f (x_tail(f) − x_head(f)) = 0` around every fundamental
/// cycle of a spanning forest. These cycles generate the cycle space, so this
/// covers every polygon of `g`.
pub fn check_polygon_relations(g: &Graph, s: &PictureSample) -> bool {
    let field = field_unchecked(s.prime);
    let forest = g.bfs_forest();
    let rooted = RootedForest::new(g, forest);
    g.all_edges().difference(forest).iter().all(|e| {
        let z = rooted.cycle(g, e);
        let total = z.0.iter().fold(0, |acc, (&f, &c)| {
            let (a, b) = g.edge(f);
            let term = field.mul(s.m[f], field.sub(s.x[a], s.x[b]));
            field.add(acc, field.mul(field.from_i64(c), term))
        });
        total == 0
    })
}

/// Whether every ideal generator `τ(C)` vanishes at the slopes of `samples`
/// random generic pictures. Sample `i` is drawn from `task_seed(seed, i)`.
pub fn check_ideal_vanishing(g: &Graph, samples: usize, p: u64, seed: u64) -> Result<bool> {
    let field = field_for(g, p)?;
    let generators = ideal_generators(g, DEFAULT_EDGE_CAP)?.generators;
    for i in 0..samples {
        let s = random_generic_picture(g, p, task_seed(seed, i as u64))?;
        if generators
            .iter()
            .any(|(_, tau)| tau.eval_mod(field, &s.m) != 0)
        {
            return Ok(false);
        }
    }
    Ok(true)
}

fn rank_rows<F>(g: &Graph, f: EdgeSet, p: u64, seed: u64, row: F) -> Result<usize>
where
    F: Fn(Fp, &PictureSample, usize) -> Vec<u64>,
{
    let field = field_for(g, p)?;
    let mut best = 0;
    for k in 0..RANK_SEEDS {
        let s = random_generic_picture(g, p, task_seed(seed, k))?;
        let matrix: Vec<Vec<u64>> = f.iter().map(|e| row(field, &s, e)).collect();
        best = best.max(field.rank(&matrix));
    }
    Ok(best)
}

/// Rank over `F_p` of the Jacobian of the slopes `m_{vw}` of the edges in
/// `f` with respect to `(x, y)`, maximized over [`RANK_SEEDS`] points.
pub fn slope_jacobian_rank_of(g: &Graph, f: EdgeSet, p: u64, seed: u64) -> Result<usize> {
    let n = g.num_vertices();
    rank_rows(g, f, p, seed, |field, s, e| {
        let (v, w) = g.edge(e);
        let inv = field.inv(field.sub(s.x[w], s.x[v]));
        let dm = field.mul(s.m[e], inv);
        let mut row = vec![0; 2 * n];
        row[w] = field.neg(dm);
        row[v] = dm;
        row[n + w] = inv;
        row[n + v] = field.neg(inv);
        row
    })
}

pub fn slope_jacobian_rank(g: &Graph, p: u64, seed: u64) -> Result<usize> {
    slope_jacobian_rank_of(g, g.all_edges(), p, seed)
}

/// Rank of the rigidity matrix (derivatives of squared edge lengths) of the
/// edges in `f`, maximized over [`RANK_SEEDS`] points.
pub fn length_jacobian_rank_of(g: &Graph, f: EdgeSet, p: u64, seed: u64) -> Result<usize> {
    let n = g.num_vertices();
    rank_rows(g, f, p, seed, |field, s, e| {
        let (v, w) = g.edge(e);
        let dx = field.add(field.sub(s.x[v], s.x[w]), field.sub(s.x[v], s.x[w]));
        let dy = field.add(field.sub(s.y[v], s.y[w]), field.sub(s.y[v], s.y[w]));
        let mut row = vec![0; 2 * n];
        row[v] = dx;
        row[w] = field.neg(dx);
        row[n + v] = dy;
        row[n + w] = field.neg(dy);
        row
    })
}

pub fn length_jacobian_rank(g: &Graph, p: u64, seed: u64) -> Result<usize> {
    length_jacobian_rank_of(g, g.all_edges(), p, seed)
}

/// The three ranks of `f`: combinatorial, slope Jacobian, length Jacobian.
pub fn ranks_of(g: &Graph, f: EdgeSet, p: u64, seed: u64) -> Result<[usize; 3]> {
    Ok([
        rigidity_rank(g, f),
        slope_jacobian_rank_of(g, f, p, seed)?,
        length_jacobian_rank_of(g, f, p, seed)?,
    ])
}

/// Whether the three ranks agree on `E` and on [`RANDOM_SUBSETS`] random
/// edge subsets, each edge kept with probability one half.
pub fn matroid_equality_check(g: &Graph, p: u64, seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut subsets = vec![g.all_edges()];
    for _ in 0..RANDOM_SUBSETS {
        subsets.push(EdgeSet::from_indices(
            g.all_edges().iter().filter(|_| rng.gen_bool(0.5)),
        ));
    }
    for (i, f) in subsets.into_iter().enumerate() {
        let [r, s, l] = ranks_of(g, f, p, task_seed(seed, i as u64))?;
        if r != s || s != l {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub vanishing: bool,
    pub polygons: bool,
    pub combinatorial: usize,
    pub slope: usize,
    pub length: usize,
    pub matroids_agree: bool,
    pub seed: u64,
    pub prime: u64,
}

impl VerifyReport {
    pub fn to_json(&self) -> Value {
        json!({
            "vanishing": self.vanishing,
            "ranks": {
                "combinatorial": self.combinatorial,
                "slope": self.slope,
                "length": self.length,
            },
            "seed": self.seed,
            "prime": self.prime,
        })
    }
}

/// Runs the whole suite on `g`.
pub fn verify_graph(g: &Graph, samples: usize, p: u64, seed: u64) -> Result<VerifyReport> {
    let vanishing = check_ideal_vanishing(g, samples, p, seed)?;
    let mut polygons = true;
    for i in 0..samples {
        let s = random_generic_picture(g, p, task_seed(seed, i as u64))?;
        polygons &= check_polygon_relations(g, &s) && s.satisfies_incidences(g);
    }
    let [combinatorial, slope, length] = ranks_of(g, g.all_edges(), p, seed)?;
    Ok(VerifyReport {
        vanishing,
        polygons,
        combinatorial,
        slope,
        length,
        matroids_agree: matroid_equality_check(g, p, seed)?,
        seed,
        prime: p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::DEFAULT_PRIME;
    use crate::treepoly::tree_polynomial;

    #[test]
    fn samples_are_pictures() {
        let k2 = Graph::complete(2);
        let s = random_generic_picture(&k2, DEFAULT_PRIME, 7).unwrap();
        assert!(s.satisfies_incidences(&k2));
        assert_eq!(s, random_generic_picture(&k2, DEFAULT_PRIME, 7).unwrap());
        let k6 = Graph::complete(6);
        let s = random_generic_picture(&k6, DEFAULT_PRIME, 1).unwrap();
        assert_eq!(s.m.len(), 15);
        assert!(s.satisfies_incidences(&k6));
    }

    #[test]
    fn prime_requirements() {
        let k4 = Graph::complete(4);
        assert!(random_generic_picture(&k4, 65_536, 0).is_err());
        assert!(random_generic_picture(&k4, 65_537, 0).is_ok());
    }

    #[test]
    fn polygon_relations() {
        let g = Graph::complete(5);
        let mut s = random_generic_picture(&g, DEFAULT_PRIME, 3).unwrap();
        assert!(check_polygon_relations(&g, &s));
        s.m[4] = (s.m[4] + 1) % s.prime;
        assert!(!check_polygon_relations(&g, &s));
        let tree = Graph::path(5);
        let s = random_generic_picture(&tree, DEFAULT_PRIME, 3).unwrap();
        assert!(check_polygon_relations(&tree, &s));
    }

    #[test]
    fn vanishing_on_pictures_only() {
        let k4 = Graph::complete(4);
        assert!(check_ideal_vanishing(&k4, 100, DEFAULT_PRIME, 0).unwrap());
        let field = Fp::new(DEFAULT_PRIME).unwrap();
        let tau = tree_polynomial(&k4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let slopes: Vec<u64> = (0..6).map(|_| rng.gen_range(0..DEFAULT_PRIME)).collect();
        assert_ne!(tau.eval_mod(field, &slopes), 0);
    }

    #[test]
    fn jacobian_ranks() {
        let p = DEFAULT_PRIME;
        for (g, r) in [
            (Graph::complete(2), 1),
            (Graph::complete(4), 5),
            (Graph::cycle(4), 4),
            (Graph::wheel(4), 7),
        ] {
            assert_eq!(slope_jacobian_rank(&g, p, 0).unwrap(), r);
            assert_eq!(length_jacobian_rank(&g, p, 0).unwrap(), r);
        }
    }

    #[test]
    fn matroid_equality() {
        let k4_with_ear = Graph::parse("1 2\n2 3\n3 4\n4 5\n1 3\n1 4\n2 4\n3 5").unwrap();
        assert!(matroid_equality_check(&Graph::complete(4), DEFAULT_PRIME, 0).unwrap());
        assert!(matroid_equality_check(&k4_with_ear, DEFAULT_PRIME, 0).unwrap());
        assert_eq!(
            ranks_of(&k4_with_ear, k4_with_ear.all_edges(), DEFAULT_PRIME, 0).unwrap(),
            [7, 7, 7]
        );
    }

    #[test]
    fn report_json_is_reproducible() {
        let g = Graph::complete(4);
        let a = verify_graph(&g, 10, DEFAULT_PRIME, 5).unwrap();
        let b = verify_graph(&g, 10, DEFAULT_PRIME, 5).unwrap();
        assert_eq!(a.to_json().to_string(), b.to_json().to_string());
        assert!(a.vanishing && a.polygons && a.matroids_agree);
        assert_eq!(
            a.to_json().to_string(),
            format!(
                r#"{{"vanishing":true,"ranks":{{"combinatorial":5,"slope":5,"length":5}},"seed":5,"prime":{DEFAULT_PRIME}}}"#
            )
        );
    }
}
