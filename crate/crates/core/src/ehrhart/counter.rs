use num_integer::Integer;
use num_traits::ToPrimitive;

use super::EhrhartError;
use crate::exact::IntVec;
use crate::polytope::{HRep, VPolytope};

struct Level {
    normals: Vec<Vec<i64>>,
    offsets: Vec<i64>,
}

/// Lattice-point counter for the dilates `kP`.
///
/// Coordinates are enumerated one at a time; the admissible range of
/// coordinate `j` comes from the facets of the projection of `kP` onto the
/// first `j` coordinates, so only prefixes that extend to points of `kP`
/// are ever visited. Projections of interiors are interiors of projections,
/// which makes the same scheme exact for strict counting.
pub struct LatticeCounter {
    levels: Vec<Level>,
}

fn level_from(hrep: &HRep) -> Result<Level, EhrhartError> {
    let mut normals = Vec::with_capacity(hrep.facets.len());
    let mut offsets = Vec::with_capacity(hrep.facets.len());
    for f in &hrep.facets {
        normals.push(f.normal.to_i64().ok_or(EhrhartError::Overflow)?);
        offsets.push(f.offset.to_i64().ok_or(EhrhartError::Overflow)?);
    }
    Ok(Level { normals, offsets })
}

impl LatticeCounter {
    pub fn new(p: &VPolytope) -> Result<Self, EhrhartError> {
        Self::with_facets(p, &p.facets())
    }

    pub fn with_facets(p: &VPolytope, hrep: &HRep) -> Result<Self, EhrhartError> {
        let d = p.dim();
        let mut levels = Vec::with_capacity(d);
        for j in 1..d {
            let proj: Vec<IntVec> = p.generators().iter().map(|g| IntVec::new(g[..j].to_vec())).collect();
            let q = VPolytope::new(j, proj).expect("projection of a full-dimensional polytope");
            levels.push(level_from(&q.facets())?);
        }
        levels.push(level_from(hrep)?);
        Ok(LatticeCounter { levels })
    }

    /// Number of lattice points in `kP`, or in its interior when `strict`.
    pub fn count(&self, k: u64, strict: bool) -> u64 {
        let k = i64::try_from(k).expect("dilation factor fits i64");
        let mut prefix = Vec::with_capacity(self.levels.len());
        self.descend(&mut prefix, k, strict)
    }

    fn range(&self, prefix: &[i64], k: i64, strict: bool) -> Option<(i64, i64)> {
        let level = &self.levels[prefix.len()];
        let j = prefix.len();
        let (mut lo, mut hi) = (i64::MIN, i64::MAX);
        for (a, &b) in level.normals.iter().zip(&level.offsets) {
            let rhs = k * b - a[..j].iter().zip(prefix).map(|(x, y)| x * y).sum::<i64>();
            let c = a[j];
            // need c*x <= rhs, or c*x < rhs (i.e. c*x <= rhs - 1) when strict
            let rhs = if strict { rhs - 1 } else { rhs };
            match c.signum() {
                1 => hi = hi.min(Integer::div_floor(&rhs, &c)),
                -1 => lo = lo.max(Integer::div_ceil(&rhs, &c)),
                _ => {
                    if rhs < 0 {
                        return None;
                    }
                }
            }
        }
        debug_assert!(lo > i64::MIN && hi < i64::MAX, "bounded polytope");
        (lo <= hi).then_some((lo, hi))
    }

    fn descend(&self, prefix: &mut Vec<i64>, k: i64, strict: bool) -> u64 {
        let Some((lo, hi)) = self.range(prefix, k, strict) else {
            return 0;
        };
        if prefix.len() + 1 == self.levels.len() {
            return (hi - lo + 1).to_u64().expect("nonnegative width");
        }
        let mut total = 0;
        for x in lo..=hi {
            prefix.push(x);
            total += self.descend(prefix, k, strict);
            prefix.pop();
        }
        total
    }
}
