//! Random valid graph manifolds, for tests and demonstrations.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{BundlePiece, Edge, Endpoint, GluingMatrix, GraphManifold};

#[derive(Debug, Clone)]
pub struct RandomGraphSpec {
    pub pieces: RangeInclusive<usize>,
    pub genus: RangeInclusive<i64>,
    /// Every piece gets at least this many boundary tori (1 or 2).
    pub min_boundary: usize,
    pub max_boundary: usize,
    /// Attempts at adding edges beyond the spanning tree or cycle.
    pub extra_edges: usize,
    /// Restrict gluing matrices to `J` and `-J`.
    pub pm_j_only: bool,
}

impl Default for RandomGraphSpec {
    fn default() -> Self {
        RandomGraphSpec {
            pieces: 2..=5,
            genus: 2..=4,
            min_boundary: 1,
            max_boundary: 4,
            extra_edges: 2,
            pm_j_only: false,
        }
    }
}

/// A random determinant -1 matrix with non-zero upper-right entry: `J` times
/// a short word in the elementary shears.
pub fn random_gluing_matrix<R: Rng + ?Sized>(rng: &mut R) -> GluingMatrix {
    loop {
        let mut m = GluingMatrix::J.0;
        for _ in 0..rng.gen_range(0..=3) {
            let k = rng.gen_range(-3..=3);
            let [[a, b], [c, d]] = m;
            m = if rng.gen_bool(0.5) {
                [[a, a * k + b], [c, c * k + d]]
            } else {
                [[a + b * k, b], [c + d * k, d]]
            };
        }
        if rng.gen_bool(0.5) {
            m = [[-m[0][0], -m[0][1]], [-m[1][0], -m[1][1]]];
        }
        if m[0][1] != 0 {
            return GluingMatrix(m);
        }
    }
}

/// A random connected graph satisfying every validation rule.
///
/// With `min_boundary >= 2` the underlying graph starts from a Hamiltonian
/// cycle (two parallel edges for two pieces), otherwise from a random tree.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, spec: &RandomGraphSpec) -> GraphManifold {
    let n = rng.gen_range(spec.pieces.clone()).max(2);
    let ids: Vec<String> = (0..n).map(|i| format!("P{i}")).collect();
    let mut degree = vec![0usize; n];
    let mut pairs: Vec<(usize, usize)> = Vec::new();

    if spec.min_boundary >= 2 {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        for i in 0..n {
            pairs.push((order[i], order[(i + 1) % n]));
        }
    } else {
        for v in 1..n {
            let candidates: Vec<usize> = (0..v).filter(|&u| degree[u] < spec.max_boundary).collect();
            let u = *candidates.choose(rng).unwrap_or(&(v - 1));
            pairs.push((u, v));
            degree[u] += 1;
            degree[v] += 1;
        }
    }
    if spec.min_boundary >= 2 {
        for &(u, v) in &pairs {
            degree[u] += 1;
            degree[v] += 1;
        }
    }
    for _ in 0..spec.extra_edges {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v && degree[u] < spec.max_boundary && degree[v] < spec.max_boundary {
            pairs.push((u, v));
            degree[u] += 1;
            degree[v] += 1;
        }
    }

    let mut next_slot = vec![0usize; n];
    let mut edges = Vec::with_capacity(pairs.len());
    for (u, v) in pairs {
        let (tail, head) = if rng.gen_bool(0.5) { (u, v) } else { (v, u) };
        let matrix = if spec.pm_j_only {
            *[GluingMatrix::J, GluingMatrix::MINUS_J].choose(rng).unwrap()
        } else {
            random_gluing_matrix(rng)
        };
        let t = Endpoint::new(ids[tail].clone(), next_slot[tail]);
        next_slot[tail] += 1;
        let h = Endpoint::new(ids[head].clone(), next_slot[head]);
        next_slot[head] += 1;
        edges.push(Edge::new(t, h, matrix));
    }

    let pieces = ids
        .iter()
        .zip(&next_slot)
        .map(|(id, &slots)| BundlePiece {
            id: id.clone(),
            genus: rng.gen_range(spec.genus.clone()),
            boundary_count: slots as i64,
        })
        .collect();
    GraphManifold::new(pieces, edges).canonicalized()
}
