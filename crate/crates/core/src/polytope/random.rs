use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{PolytopeError, VPolytope};
use crate::exact::{det_exact, IntMat, IntVec};

const MAX_ATTEMPTS: usize = 1000;

fn sample_point(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> IntVec {
    IntVec::from_i64(&(0..dim).map(|_| rng.random_range(-bound..=bound)).collect::<Vec<_>>())
}

/// `count` uniform points of `[-bound, bound]^dim` (plus their negations when
/// `symmetric`), resampled until the hull is full-dimensional.
pub fn random_lattice_polytope(
    dim: usize,
    bound: i64,
    count: usize,
    seed: u64,
    symmetric: bool,
) -> Result<VPolytope, PolytopeError> {
    let min_count = if symmetric { dim } else { dim + 1 };
    if dim < 2 || bound < 1 || count < min_count {
        return Err(PolytopeError::InvalidParameter(format!(
            "need dim >= 2, box >= 1, count >= {min_count} (got dim={dim}, box={bound}, count={count})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let mut points: Vec<IntVec> = (0..count).map(|_| sample_point(&mut rng, dim, bound)).collect();
        if symmetric {
            let neg: Vec<IntVec> = points.iter().map(|p| -p).collect();
            points.extend(neg);
        }
        match VPolytope::new(dim, points) {
            Ok(p) => return Ok(p),
            Err(PolytopeError::NotFullDimensional { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(PolytopeError::RetriesExhausted(MAX_ATTEMPTS))
}

/// Per-sample seeds for a corpus of `n` members drawn from one master seed.
pub fn corpus_seeds(seed: u64, n: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.random()).collect()
}

/// `dim` linearly independent integer vectors from `[-bound, bound]^dim`.
pub fn random_cross_generators(dim: usize, bound: i64, seed: u64) -> Result<Vec<IntVec>, PolytopeError> {
    if dim < 1 || bound < 1 {
        return Err(PolytopeError::InvalidParameter(format!("need dim >= 1, box >= 1 (got {dim}, {bound})")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let vs: Vec<IntVec> = (0..dim).map(|_| sample_point(&mut rng, dim, bound)).collect();
        let det = det_exact(&IntMat::from_vecs(&vs).expect("square"))?;
        if det != 0.into() {
            return Ok(vs);
        }
    }
    Err(PolytopeError::RetriesExhausted(MAX_ATTEMPTS))
}
