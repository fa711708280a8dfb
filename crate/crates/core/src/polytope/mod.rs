//! Lattice polytopes given by integer generators, their facet descriptions,
//! and the construction algebra used to build the named families.

mod construct;
mod hull;
mod random;

use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{affine_rank, det_exact, factorial, rank_exact, ExactError, Int, IntMat, IntVec, Rat};

pub use construct::ConstructionExpr;
pub use random::{corpus_seeds, random_cross_generators, random_lattice_polytope};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("polytope needs at least one generator")]
    Empty,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("generators span an affine space of dimension {rank}, expected {dim}")]
    NotFullDimensional { rank: usize, dim: usize },
    #[error("could not sample a full-dimensional polytope after {0} attempts")]
    RetriesExhausted(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Full-dimensional lattice polytope `conv(generators)` in `Z^dim`.
///
/// Generators need not be vertices; duplicates are dropped on construction,
/// keeping the first occurrence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPolytope")]
pub struct VPolytope {
    dim: usize,
    generators: Vec<IntVec>,
}

#[derive(Deserialize)]
struct RawPolytope {
    dim: usize,
    generators: Vec<IntVec>,
}

impl TryFrom<RawPolytope> for VPolytope {
    type Error = PolytopeError;
    fn try_from(raw: RawPolytope) -> Result<Self, Self::Error> {
        VPolytope::new(raw.dim, raw.generators)
    }
}

impl VPolytope {
    pub fn new(dim: usize, generators: Vec<IntVec>) -> Result<Self, PolytopeError> {
        if generators.is_empty() {
            return Err(PolytopeError::Empty);
        }
        if let Some(g) = generators.iter().find(|g| g.len() != dim) {
            return Err(PolytopeError::DimensionMismatch { expected: dim, got: g.len() });
        }
        let mut seen = HashSet::new();
        let generators: Vec<IntVec> = generators.into_iter().filter(|g| seen.insert(g.clone())).collect();
        let rank = affine_rank(&generators);
        if rank != dim {
            return Err(PolytopeError::NotFullDimensional { rank, dim });
        }
        Ok(VPolytope { dim, generators })
    }

    pub fn from_i64(dim: usize, generators: &[&[i64]]) -> Result<Self, PolytopeError> {
        Self::new(dim, generators.iter().map(|g| IntVec::from_i64(g)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[IntVec] {
        &self.generators
    }

    pub fn facets(&self) -> HRep {
        hull::facets(self.dim, &self.generators)
    }

    pub fn dilate(&self, k: &Int) -> Result<VPolytope, PolytopeError> {
        VPolytope::new(self.dim, self.generators.iter().map(|g| g.scale(k)).collect())
    }

    pub fn negate(&self) -> VPolytope {
        VPolytope { dim: self.dim, generators: self.generators.iter().map(|g| -g).collect() }
    }

    /// Generators that are vertices, sorted.
    pub fn vertices(&self, hrep: &HRep) -> Vec<IntVec> {
        let mut out: Vec<IntVec> = self
            .generators
            .iter()
            .filter(|g| {
                let normals: Vec<&IntVec> =
                    hrep.facets.iter().filter(|f| f.is_tight(g)).map(|f| &f.normal).collect();
                normals.len() >= self.dim
                    && rank_exact(&IntMat::from_vecs(normals).expect("uniform length")) == self.dim
            })
            .cloned()
            .collect();
        out.sort();
        out
    }

    /// Polytope restricted to its vertex set.
    pub fn vertex_polytope(&self) -> VPolytope {
        let verts = self.vertices(&self.facets());
        VPolytope { dim: self.dim, generators: verts }
    }

    /// Simplices (as vertex index tuples into `vertex_polytope().generators()`)
    /// of a pulling triangulation.
    pub fn triangulate(&self) -> (VPolytope, Vec<Vec<usize>>) {
        let hrep = self.facets();
        let vp = VPolytope { dim: self.dim, generators: self.vertices(&hrep) };
        let lattice = FaceLattice::new(&vp, &hrep);
        let all = lattice.full();
        let simplices = lattice.triangulate(&all, self.dim);
        (vp, simplices)
    }

    /// Exact volume from a triangulation (independent of any counting).
    pub fn volume(&self) -> Rat {
        let (vp, simplices) = self.triangulate();
        let g = vp.generators();
        let total: Int = simplices
            .iter()
            .map(|s| {
                let base = &g[s[0]];
                let m = IntMat::from_rows(s[1..].iter().map(|&i| (&g[i] - base).into_inner()).collect())
                    .expect("square simplex matrix");
                det_exact(&m).expect("square").abs()
            })
            .sum();
        Rat::new(total, factorial(self.dim as u32))
    }

    pub fn is_centrally_symmetric(&self) -> bool {
        let verts = self.vertices(&self.facets());
        let mut neg: Vec<IntVec> = verts.iter().map(|v| -v).collect();
        neg.sort();
        verts == neg
    }
}

/// Facet inequality `normal · x <= offset` with primitive outward normal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HFacet {
    pub normal: IntVec,
    #[serde(with = "serde_int")]
    pub offset: Int,
}

impl HFacet {
    pub fn slack(&self, x: &IntVec) -> Int {
        &self.offset - self.normal.dot(x)
    }

    pub fn is_tight(&self, x: &IntVec) -> bool {
        self.slack(x).is_zero()
    }
}

mod serde_int {
    use super::Int;
    use num_traits::ToPrimitive;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Int, s: S) -> Result<S::Ok, S::Error> {
        match x.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&x.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        Ok(Int::from(i64::deserialize(d)?))
    }
}

/// Canonical, irredundant facet description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HRep {
    pub dim: usize,
    pub facets: Vec<HFacet>,
}

impl HRep {
    pub(crate) fn canonical(dim: usize, mut facets: Vec<HFacet>) -> HRep {
        facets.sort();
        facets.dedup();
        HRep { dim, facets }
    }

    pub fn contains(&self, x: &IntVec, strict: bool) -> Result<bool, PolytopeError> {
        if x.len() != self.dim {
            return Err(PolytopeError::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        Ok(self.facets.iter().all(|f| {
            let s = f.slack(x);
            if strict {
                s.is_positive()
            } else {
                !s.is_negative()
            }
        }))
    }

    pub fn dilate(&self, k: &Int) -> HRep {
        HRep {
            dim: self.dim,
            facets: self
                .facets
                .iter()
                .map(|f| HFacet { normal: f.normal.clone(), offset: &f.offset * k })
                .collect(),
        }
    }
}

/// Facet/vertex incidences of a polytope, used to walk its faces.
pub(crate) struct FaceLattice<'a> {
    vertices: &'a [IntVec],
    incidence: Vec<FixedBitSet>,
}

impl<'a> FaceLattice<'a> {
    /// `vp` must be given by its vertices.
    pub(crate) fn new(vp: &'a VPolytope, hrep: &HRep) -> Self {
        let n = vp.generators.len();
        let incidence = hrep
            .facets
            .iter()
            .map(|f| {
                let mut bits = FixedBitSet::with_capacity(n);
                for (i, v) in vp.generators.iter().enumerate() {
                    bits.set(i, f.is_tight(v));
                }
                bits
            })
            .collect();
        FaceLattice { vertices: &vp.generators, incidence }
    }

    pub(crate) fn full(&self) -> FixedBitSet {
        let mut all = FixedBitSet::with_capacity(self.vertices.len());
        all.insert_range(..);
        all
    }

    pub(crate) fn facet(&self, i: usize) -> &FixedBitSet {
        &self.incidence[i]
    }

    fn face_dim(&self, face: &FixedBitSet) -> usize {
        affine_rank(face.ones().map(|i| &self.vertices[i]))
    }

    /// Pulling triangulation of `face` (of dimension `dim`) from its
    /// lexicographically smallest vertex.
    pub(crate) fn triangulate(&self, face: &FixedBitSet, dim: usize) -> Vec<Vec<usize>> {
        let apex = face
            .ones()
            .min_by(|&a, &b| self.vertices[a].cmp(&self.vertices[b]))
            .expect("nonempty face");
        if dim == 0 {
            return vec![vec![apex]];
        }
        let mut subfaces: Vec<FixedBitSet> = Vec::new();
        for inc in &self.incidence {
            let mut sub = face.clone();
            sub.intersect_with(inc);
            if sub.contains(apex) || sub == *face || subfaces.contains(&sub) {
                continue;
            }
            if sub.count_ones(..) >= dim && self.face_dim(&sub) == dim - 1 {
                subfaces.push(sub);
            }
        }
        let mut out = Vec::new();
        for sub in &subfaces {
            for mut simplex in self.triangulate(sub, dim - 1) {
                simplex.insert(0, apex);
                out.push(simplex);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn facet(normal: &[i64], offset: i64) -> HFacet {
        HFacet { normal: IntVec::from_i64(normal), offset: int(offset) }
    }

    #[test]
    fn standard_simplex_facets() {
        let p = ConstructionExpr::StdSimplex(3).build().unwrap();
        let h = p.facets();
        let expected = HRep::canonical(
            3,
            vec![facet(&[-1, 0, 0], 0), facet(&[0, -1, 0], 0), facet(&[0, 0, -1], 0), facet(&[1, 1, 1], 1)],
        );
        assert_eq!(h, expected);
    }

    #[test]
    fn symmetric_square_facets() {
        let h = ConstructionExpr::SymCube(2).build().unwrap().facets();
        assert_eq!(
            h.facets,
            vec![facet(&[-1, 0], 1), facet(&[0, -1], 1), facet(&[0, 1], 1), facet(&[1, 0], 1)]
        );
    }

    #[test]
    fn cross_polytope_facets() {
        let h = ConstructionExpr::CrossPolytope(3).build().unwrap().facets();
        assert_eq!(h.facets.len(), 8);
        for f in &h.facets {
            assert!(f.normal.iter().all(|x| x.abs() == int(1)));
            assert_eq!(f.offset, int(1));
        }
    }

    #[test]
    fn membership() {
        let h = ConstructionExpr::SymCube(2).build().unwrap().facets();
        let corner = IntVec::from_i64(&[1, 1]);
        assert!(h.contains(&corner, false).unwrap());
        assert!(!h.contains(&corner, true).unwrap());
        assert!(h.contains(&IntVec::from_i64(&[0, 0]), true).unwrap());
        assert!(matches!(
            h.contains(&IntVec::from_i64(&[0, 0, 0]), false),
            Err(PolytopeError::DimensionMismatch { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn rejects_degenerate_input() {
        let err = VPolytope::from_i64(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]).unwrap_err();
        assert_eq!(err, PolytopeError::NotFullDimensional { rank: 2, dim: 3 });
        assert_eq!(VPolytope::new(2, vec![]).unwrap_err(), PolytopeError::Empty);
        assert!(matches!(
            VPolytope::from_i64(2, &[&[0, 0], &[1, 0, 0]]),
            Err(PolytopeError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn duplicates_dropped() {
        let p = VPolytope::from_i64(1, &[&[0], &[2], &[0], &[1]]).unwrap();
        assert_eq!(p.generators().len(), 3);
    }

    #[test]
    fn non_vertex_generators_filtered() {
        let p = VPolytope::from_i64(2, &[&[-1, -1], &[1, -1], &[1, 1], &[-1, 1], &[0, 0], &[1, 0]]).unwrap();
        assert_eq!(p.vertex_polytope().generators().len(), 4);
        assert!(p.is_centrally_symmetric());
    }

    #[test]
    fn symmetry_detection() {
        assert!(ConstructionExpr::SymCube(3).build().unwrap().is_centrally_symmetric());
        assert!(!ConstructionExpr::StdSimplex(3).build().unwrap().is_centrally_symmetric());
        assert!(ConstructionExpr::Box { l: 2, d: 2 }.build().unwrap().is_centrally_symmetric());
        // symmetric point set up to a translate is not o-symmetric
        let shifted = VPolytope::from_i64(2, &[&[0, 0], &[2, 0], &[0, 2], &[2, 2]]).unwrap();
        assert!(!shifted.is_centrally_symmetric());
    }

    #[test]
    fn triangulation_volumes() {
        assert_eq!(ConstructionExpr::SymCube(3).build().unwrap().volume(), rat(8, 1));
        assert_eq!(ConstructionExpr::CrossPolytope(4).build().unwrap().volume(), rat(16, 24));
        assert_eq!(ConstructionExpr::T { m: 3, d: 5 }.build().unwrap().volume(), rat(3, 120));
        let hex = VPolytope::from_i64(2, &[&[1, 0], &[0, 1], &[-1, 1], &[-1, 0], &[0, -1], &[1, -1]]).unwrap();
        assert_eq!(hex.volume(), rat(3, 1));
    }

    #[test]
    fn dilated_facets_scale_offsets() {
        let p = ConstructionExpr::T { m: 2, d: 3 }.build().unwrap();
        let h = p.facets();
        let h3 = p.dilate(&int(3)).unwrap().facets();
        assert_eq!(h.dilate(&int(3)), h3);
    }
}
