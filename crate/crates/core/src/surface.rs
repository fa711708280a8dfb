//! Exact facet areas, lattice surface area, Euclidean surface area as a sum
//! of square roots, and the surface-area minimality checks.

use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{det_exact, factorial, fmt_rat, rat_to_f64, Int, IntMat, IntVec, Rat};
use crate::polytope::{FaceLattice, HFacet, PolytopeError, VPolytope};
use crate::report::Verdict;

/// Relative tolerance for numeric surface comparisons.
pub const REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("expected {expected} generators in dimension {expected}, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error("generators are linearly dependent")]
    Dependent,
    #[error("facet area {0} is not a positive multiple of 1/(d-1)!")]
    NonIntegralFacet(String),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

/// Exact value `sum_i q_i sqrt(n_i)` with square-free, distinct, ascending `n_i`
/// and nonzero `q_i`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SqrtSum {
    terms: Vec<(Rat, u64)>,
}

fn split_square(n: u64) -> (u64, u64) {
    let (mut out, mut rest) = (1u64, n);
    let mut p = 2u64;
    while p * p <= rest {
        while rest % (p * p) == 0 {
            rest /= p * p;
            out *= p;
        }
        p += 1;
    }
    (out, rest)
}

impl SqrtSum {
    pub fn zero() -> Self {
        SqrtSum { terms: Vec::new() }
    }

    pub fn rational(q: Rat) -> Self {
        Self::term(q, 1)
    }

    /// `q * sqrt(n)`.
    pub fn term(q: Rat, n: u64) -> Self {
        Self::from_terms([(q, n)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Rat, u64)>) -> Self {
        let mut acc: Vec<(Rat, u64)> = Vec::new();
        for (q, n) in terms {
            if n == 0 || q.is_zero() {
                continue;
            }
            let (outer, inner) = split_square(n);
            let q = q * Rat::from_integer(outer.into());
            match acc.iter_mut().find(|(_, m)| *m == inner) {
                Some((c, _)) => *c += q,
                None => acc.push((q, inner)),
            }
        }
        acc.retain(|(q, _)| !q.is_zero());
        acc.sort_by_key(|&(_, n)| n);
        SqrtSum { terms: acc }
    }

    pub fn terms(&self) -> &[(Rat, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &SqrtSum) -> SqrtSum {
        Self::from_terms(self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn scale(&self, k: &Rat) -> SqrtSum {
        Self::from_terms(self.terms.iter().map(|(q, n)| (q * k, *n)))
    }

    pub fn to_f64(&self) -> f64 {
        self.terms.iter().map(|(q, n)| rat_to_f64(q) * (*n as f64).sqrt()).sum()
    }
}

impl std::iter::Sum for SqrtSum {
    fn sum<I: Iterator<Item = SqrtSum>>(iter: I) -> Self {
        SqrtSum::from_terms(iter.flat_map(|s| s.terms))
    }
}

impl fmt::Display for SqrtSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (q, n)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match (*n, q.is_one()) {
                (1, _) => write!(f, "{}", fmt_rat(q))?,
                (_, true) => write!(f, "sqrt({n})")?,
                _ => write!(f, "{}*sqrt({n})", fmt_rat(q))?,
            }
        }
        Ok(())
    }
}

impl Serialize for SqrtSum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            q: String,
            n: u64,
        }
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (q, n) in &self.terms {
            seq.serialize_element(&Term { q: fmt_rat(q), n: *n })?;
        }
        seq.end()
    }
}

/// Area data of one facet `F` with primitive normal `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FacetArea {
    pub facet: HFacet,
    /// `vol_{d-1}(F) / ||a||`
    #[serde(with = "crate::exact::serde_rat")]
    pub lattice_area: Rat,
    /// `vol_{d-1}(F)`
    pub euclid_area: SqrtSum,
    /// `lattice_area * (d-1)!`
    pub k: u64,
}

/// Per-facet areas from a fan triangulation of each facet. A facet simplex
/// with edge matrix `U` contributes `|det[U | a]| / ((d-1)! ||a||^2)`.
pub fn facet_areas(p: &VPolytope) -> Result<Vec<FacetArea>, SurfaceError> {
    let d = p.dim();
    let hrep = p.facets();
    let vp = VPolytope::new(d, p.vertices(&hrep))?;
    let lattice = FaceLattice::new(&vp, &hrep);
    let verts = vp.generators();
    let ridge_fact = factorial(d as u32 - 1);
    hrep.facets
        .iter()
        .enumerate()
        .map(|(idx, facet)| {
            let norm_sq = facet.normal.norm_sq();
            let total: Int = lattice
                .triangulate(lattice.facet(idx), d - 1)
                .iter()
                .map(|s| {
                    let base = &verts[s[0]];
                    let mut rows: Vec<Vec<Int>> = s[1..].iter().map(|&i| (&verts[i] - base).into_inner()).collect();
                    rows.push(facet.normal.entries().to_vec());
                    det_exact(&IntMat::from_rows(rows).expect("square")).expect("square").abs()
                })
                .sum();
            let lattice_area = Rat::new(total, &ridge_fact * &norm_sq);
            let k_rat = &lattice_area * Rat::from_integer(ridge_fact.clone());
            let k = k_rat
                .is_integer()
                .then(|| k_rat.to_integer().to_u64())
                .flatten()
                .filter(|&k| k >= 1)
                .ok_or_else(|| SurfaceError::NonIntegralFacet(fmt_rat(&lattice_area)))?;
            let n = norm_sq.to_u64().expect("normal norm fits u64");
            let euclid_area = SqrtSum::term(lattice_area.clone(), n);
            Ok(FacetArea { facet: facet.clone(), lattice_area, euclid_area, k })
        })
        .collect()
}

/// `(1/2) sum_F vol_{d-1}(F) / det(aff F ∩ Z^d)`, which equals `g_{d-1}`.
pub fn lattice_surface(p: &VPolytope) -> Result<Rat, SurfaceError> {
    let areas = facet_areas(p)?;
    Ok(lattice_surface_of(&areas))
}

pub fn lattice_surface_of(areas: &[FacetArea]) -> Rat {
    areas.iter().map(|a| a.lattice_area.clone()).sum::<Rat>() / Rat::from_integer(2.into())
}

pub fn euclid_surface(p: &VPolytope) -> Result<SqrtSum, SurfaceError> {
    Ok(facet_areas(p)?.into_iter().map(|a| a.euclid_area).sum())
}

/// `sum_i k_i a_i` over outward primitive facet normals; zero for every polytope.
pub fn minkowski_sum(areas: &[FacetArea]) -> IntVec {
    let d = areas.first().map_or(0, |a| a.facet.normal.len());
    areas
        .iter()
        .fold(IntVec::zeros(d), |acc, a| &acc + &a.facet.normal.scale(&Int::from(a.k)))
}

/// `F(C_d^*) = (2^d/d!) d^{3/2}`.
pub fn cross_polytope_surface(d: usize) -> SqrtSum {
    let q = Rat::new(Int::from(1u64 << d) * Int::from(d), factorial(d as u32));
    SqrtSum::term(q, d as u64)
}

/// `F(T_d) = (d + sqrt(d)) / (d-1)!`.
pub fn simplex_surface(d: usize) -> SqrtSum {
    let f = factorial(d as u32 - 1);
    SqrtSum::from_terms([(Rat::new(Int::from(d), f.clone()), 1), (Rat::new(Int::one(), f), d as u64)])
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsoReport {
    pub dim: usize,
    pub ratio: f64,
    pub bound: f64,
    pub relative_slack: f64,
    pub verdict: Verdict,
}

fn numeric_verdict(actual: f64, bound: f64) -> (f64, Verdict) {
    let rel = (actual - bound) / bound;
    let verdict = if rel.abs() <= REL_TOL {
        Verdict::Equality
    } else if rel > 0.0 {
        Verdict::Holds
    } else {
        Verdict::Violated
    };
    (rel, verdict)
}

/// Compares `F(C)^d / vol(C)^{d-1}` for `C = conv{±v_i}` with `(2^d/d!) d^{3d/2}`.
pub fn iso_ratio_check(generators: &[IntVec]) -> Result<IsoReport, SurfaceError> {
    let d = generators.first().map_or(0, |v| v.len());
    if d == 0 || generators.len() != d {
        return Err(SurfaceError::WrongCount { expected: d, got: generators.len() });
    }
    let det = det_exact(&IntMat::from_vecs(generators).map_err(PolytopeError::from)?).map_err(PolytopeError::from)?;
    if det.is_zero() {
        return Err(SurfaceError::Dependent);
    }
    let mut pts: Vec<IntVec> = generators.to_vec();
    pts.extend(generators.iter().map(|v| -v));
    let cross = VPolytope::new(d, pts)?;
    let surface = euclid_surface(&cross)?.to_f64();
    let unit = Rat::new(Int::from(1u64 << d), factorial(d as u32));
    let volume = rat_to_f64(&(&unit * Rat::from_integer(det.abs())));
    let df = d as f64;
    let ratio = surface.powi(d as i32) / volume.powi(d as i32 - 1);
    let bound = rat_to_f64(&unit) * df.powf(1.5 * df);
    let (relative_slack, verdict) = numeric_verdict(ratio, bound);
    Ok(IsoReport { dim: d, ratio, bound, relative_slack, verdict })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurfaceMinReport {
    pub dim: usize,
    pub symmetric: bool,
    pub surface: SqrtSum,
    pub bound: SqrtSum,
    pub surface_value: f64,
    pub bound_value: f64,
    pub relative_slack: f64,
    /// Within tolerance of the bound without matching it term by term.
    pub near_equality: bool,
    pub verdict: Verdict,
}

/// `F(P) >= F(C_d^*)` when `P = -P`, otherwise `F(P) >= F(T_d)`.
/// Equality is reported only on an exact symbolic match.
pub fn prop110_check(p: &VPolytope) -> Result<SurfaceMinReport, SurfaceError> {
    let d = p.dim();
    let symmetric = p.is_centrally_symmetric();
    let surface = euclid_surface(p)?;
    let bound = if symmetric { cross_polytope_surface(d) } else { simplex_surface(d) };
    let (surface_value, bound_value) = (surface.to_f64(), bound.to_f64());
    let (relative_slack, numeric) = numeric_verdict(surface_value, bound_value);
    let exact = surface == bound;
    let verdict = match (exact, numeric) {
        (true, _) => Verdict::Equality,
        (false, Verdict::Violated) => Verdict::Violated,
        (false, _) => Verdict::Holds,
    };
    Ok(SurfaceMinReport {
        dim: d,
        symmetric,
        surface,
        bound,
        surface_value,
        bound_value,
        relative_slack,
        near_equality: !exact && numeric == Verdict::Equality,
        verdict,
    })
}

/// `a` is the gcd-free normal; `||a||^2 >= 1` with equality only for unit vectors.
pub fn normal_norms_sq(areas: &[FacetArea]) -> Vec<Int> {
    areas.iter().map(|a| a.facet.normal.norm_sq()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat, rat_int};
    use crate::polytope::ConstructionExpr as E;

    #[test]
    fn sqrt_sum_canonical() {
        let s = SqrtSum::from_terms([(rat(1, 2), 12), (rat(1, 1), 3), (rat(2, 1), 4)]);
        assert_eq!(s.terms(), &[(rat(4, 1), 1), (rat(2, 1), 3)]);
        assert_eq!(SqrtSum::from_terms(s.terms().iter().cloned()), s);
        assert_eq!(SqrtSum::from_terms([(rat(1, 1), 2), (rat(-1, 1), 2)]), SqrtSum::zero());
        assert_eq!(s.to_string(), "4 + 2*sqrt(3)");
    }

    #[test]
    fn sqrt_sum_numeric() {
        for d in 2..=8 {
            let s = simplex_surface(d);
            let direct = (d as f64 + (d as f64).sqrt()) / rat_to_f64(&rat_int(factorial(d as u32 - 1)));
            assert!((s.to_f64() - direct).abs() <= 1e-12 * direct);
        }
    }

    #[test]
    fn simplex_areas() {
        for d in 2..=5 {
            let areas = facet_areas(&E::StdSimplex(d).build().unwrap()).unwrap();
            assert_eq!(areas.len(), d + 1);
            let f = rat_int(factorial(d as u32 - 1));
            for a in &areas {
                assert_eq!(a.lattice_area, Rat::one() / &f);
                assert_eq!(a.k, 1);
                let n = if a.facet.offset == int(1) { d as u64 } else { 1 };
                assert_eq!(a.euclid_area, SqrtSum::term(Rat::one() / &f, n));
            }
        }
    }

    #[test]
    fn cross_areas() {
        for d in 2..=4 {
            let areas = facet_areas(&E::CrossPolytope(d).build().unwrap()).unwrap();
            assert_eq!(areas.len(), 1 << d);
            assert!(areas.iter().all(|a| a.lattice_area == Rat::one() / rat_int(factorial(d as u32 - 1))));
        }
    }

    #[test]
    fn cube_areas() {
        let areas = facet_areas(&E::SymCube(3).build().unwrap()).unwrap();
        assert_eq!(areas.len(), 6);
        assert!(areas.iter().all(|a| a.euclid_area == SqrtSum::rational(rat(4, 1))));
    }

    #[test]
    fn lattice_surfaces() {
        assert_eq!(lattice_surface(&E::CrossPolytope(4).build().unwrap()).unwrap(), rat(4, 3));
        assert_eq!(lattice_surface(&E::StdSimplex(4).build().unwrap()).unwrap(), rat(5, 12));
        assert_eq!(lattice_surface(&E::SymCube(2).build().unwrap()).unwrap(), rat(4, 1));
    }

    #[test]
    fn euclid_surfaces() {
        let t3 = euclid_surface(&E::StdSimplex(3).build().unwrap()).unwrap();
        assert_eq!(t3, SqrtSum::from_terms([(rat(3, 2), 1), (rat(1, 2), 3)]));
        assert_eq!(euclid_surface(&E::CrossPolytope(3).build().unwrap()).unwrap(), SqrtSum::term(rat(4, 1), 3));
        assert_eq!(euclid_surface(&E::StdSimplex(4).build().unwrap()).unwrap(), SqrtSum::rational(rat(1, 1)));
        for d in 1..=4usize {
            let expected = SqrtSum::rational(rat_int(Int::from(2 * d) * Int::from(1u64 << (d - 1))));
            assert_eq!(euclid_surface(&E::SymCube(d).build().unwrap()).unwrap(), expected);
        }
    }

    #[test]
    fn minkowski_relation() {
        for e in [E::T { m: 3, d: 3 }, E::CrossOdd { l: 2, d: 3 }, E::prism(E::StdSimplex(2), 2), E::S { m: 4, d: 4 }] {
            let areas = facet_areas(&e.build().unwrap()).unwrap();
            assert!(minkowski_sum(&areas).is_zero(), "{e}");
        }
    }

    #[test]
    fn iso_equality_cases() {
        for d in 2..=5 {
            for s in 1..=2 {
                let gens: Vec<IntVec> = (0..d).map(|i| IntVec::unit(d, i).scale(&int(s))).collect();
                let r = iso_ratio_check(&gens).unwrap();
                assert_eq!(r.verdict, Verdict::Equality, "d={d} scale={s}: {r:?}");
            }
        }
        let skew = [IntVec::from_i64(&[1, 0, 0]), IntVec::from_i64(&[1, 1, 0]), IntVec::from_i64(&[0, 0, 1])];
        assert_eq!(iso_ratio_check(&skew).unwrap().verdict, Verdict::Holds);
        let dep = [IntVec::from_i64(&[1, 0]), IntVec::from_i64(&[2, 0])];
        assert_eq!(iso_ratio_check(&dep).unwrap_err(), SurfaceError::Dependent);
    }

    #[test]
    fn surface_minima() {
        for d in 2..=5 {
            let c = prop110_check(&E::CrossPolytope(d).build().unwrap()).unwrap();
            assert!(c.symmetric);
            assert_eq!(c.verdict, Verdict::Equality);
            let t = prop110_check(&E::StdSimplex(d).build().unwrap()).unwrap();
            assert!(!t.symmetric);
            assert_eq!(t.verdict, Verdict::Equality);
        }
        let cube = prop110_check(&E::SymCube(3).build().unwrap()).unwrap();
        assert_eq!(cube.verdict, Verdict::Holds);
    }
}
