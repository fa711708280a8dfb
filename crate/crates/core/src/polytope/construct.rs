use std::fmt;

use num_traits::{One, Zero};

use super::{PolytopeError, VPolytope};
use crate::exact::{Int, IntVec};

/// Expression tree over the named lattice-polytope families and the
/// join / prism / pyramid / dilate operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructionExpr {
    /// `conv{o, e_1, e_1+e_2, e_2+e_3, ..., e_{d-2}+e_{d-1}, e_{d-1}+m e_d}`
    T { m: u64, d: usize },
    /// `conv{o, e_1, ..., e_{d-1}, m e_d}`
    S { m: u64, d: usize },
    StdSimplex(usize),
    /// `[0,1]^d`
    UnitCube(usize),
    /// `[-1,1]^d`
    SymCube(usize),
    /// `conv{±e_i}`
    CrossPolytope(usize),
    /// `conv{±l e_1, ±e_i : i >= 2}`, with `2l-1` interior points
    CrossOdd { l: u64, d: usize },
    /// `{|x_1| <= l, |x_i| <= 1}`
    Box { l: u64, d: usize },
    Explicit(VPolytope),
    Join(Box<ConstructionExpr>, Box<ConstructionExpr>),
    /// `Q × [0, m]`
    Prism(Box<ConstructionExpr>, u64),
    /// `conv{Q × {0}, e_{d+1}}`
    Pyramid(Box<ConstructionExpr>),
    Dilate(Box<ConstructionExpr>, u64),
}

use ConstructionExpr as E;

fn point(d: usize, entries: impl IntoIterator<Item = (usize, i64)>) -> IntVec {
    let mut v = vec![Int::zero(); d];
    for (i, x) in entries {
        v[i] += x;
    }
    IntVec::new(v)
}

fn positive(name: &str, v: u64) -> Result<(), PolytopeError> {
    if v == 0 {
        Err(PolytopeError::InvalidParameter(format!("{name} must be a positive integer")))
    } else {
        Ok(())
    }
}

fn sign_vectors(d: usize) -> impl Iterator<Item = Vec<i64>> {
    (0..1u64 << d).map(move |mask| (0..d).map(|i| if mask >> i & 1 == 1 { 1 } else { -1 }).collect())
}

impl ConstructionExpr {
    pub fn join(a: ConstructionExpr, b: ConstructionExpr) -> Self {
        E::Join(Box::new(a), Box::new(b))
    }

    pub fn prism(a: ConstructionExpr, m: u64) -> Self {
        E::Prism(Box::new(a), m)
    }

    pub fn pyramid(a: ConstructionExpr) -> Self {
        E::Pyramid(Box::new(a))
    }

    pub fn dilate(a: ConstructionExpr, k: u64) -> Self {
        E::Dilate(Box::new(a), k)
    }

    /// `conv{T^(m)_4, e_5, ..., e_d}`, the iterated pyramid over `T(m,4)`.
    pub fn t_tilde(m: u64, d: usize) -> Self {
        assert!(d >= 4, "T-tilde needs d >= 4");
        (4..d).fold(E::T { m, d: 4 }, |acc, _| E::pyramid(acc))
    }

    pub fn dim(&self) -> usize {
        match self {
            E::T { d, .. }
            | E::S { d, .. }
            | E::StdSimplex(d)
            | E::UnitCube(d)
            | E::SymCube(d)
            | E::CrossPolytope(d)
            | E::CrossOdd { d, .. }
            | E::Box { d, .. } => *d,
            E::Explicit(p) => p.dim(),
            E::Join(a, b) => a.dim() + b.dim() + 1,
            E::Prism(a, _) | E::Pyramid(a) => a.dim() + 1,
            E::Dilate(a, _) => a.dim(),
        }
    }

    pub fn build(&self) -> Result<VPolytope, PolytopeError> {
        if self.dim() == 0 {
            return Err(PolytopeError::InvalidParameter("dimension must be positive".into()));
        }
        match self {
            &E::T { m, d } => {
                positive("m", m)?;
                let mut g = vec![point(d, [])];
                if d >= 2 {
                    g.push(point(d, [(0, 1)]));
                }
                for j in 0..d.saturating_sub(2) {
                    g.push(point(d, [(j, 1), (j + 1, 1)]));
                }
                let mut last = point(d, [(d - 1, m as i64)]);
                if d >= 2 {
                    last = point(d, [(d - 2, 1), (d - 1, m as i64)]);
                }
                g.push(last);
                VPolytope::new(d, g)
            }
            &E::S { m, d } => {
                positive("m", m)?;
                let mut g = vec![point(d, [])];
                g.extend((0..d - 1).map(|i| point(d, [(i, 1)])));
                g.push(point(d, [(d - 1, m as i64)]));
                VPolytope::new(d, g)
            }
            &E::StdSimplex(d) => E::S { m: 1, d }.build(),
            &E::UnitCube(d) => VPolytope::new(
                d,
                sign_vectors(d).map(|s| IntVec::from_i64(&s.iter().map(|&x| (x + 1) / 2).collect::<Vec<_>>())).collect(),
            ),
            &E::SymCube(d) => E::Box { l: 1, d }.build(),
            &E::CrossPolytope(d) => E::CrossOdd { l: 1, d }.build(),
            &E::CrossOdd { l, d } => {
                positive("l", l)?;
                let mut g = Vec::with_capacity(2 * d);
                for i in 0..d {
                    let len = if i == 0 { l as i64 } else { 1 };
                    g.push(point(d, [(i, len)]));
                    g.push(point(d, [(i, -len)]));
                }
                VPolytope::new(d, g)
            }
            &E::Box { l, d } => {
                positive("l", l)?;
                VPolytope::new(
                    d,
                    sign_vectors(d)
                        .map(|mut s| {
                            s[0] *= l as i64;
                            IntVec::from_i64(&s)
                        })
                        .collect(),
                )
            }
            E::Explicit(p) => Ok(p.clone()),
            E::Join(a, b) => {
                let (p, q) = (a.build()?, b.build()?);
                let (dp, dq) = (p.dim(), q.dim());
                let mut g = Vec::with_capacity(p.generators().len() + q.generators().len());
                for x in p.generators() {
                    let mut v = x.entries().to_vec();
                    v.extend(std::iter::repeat_n(Int::zero(), dq + 1));
                    g.push(IntVec::new(v));
                }
                for y in q.generators() {
                    let mut v = vec![Int::zero(); dp];
                    v.extend_from_slice(y.entries());
                    v.push(Int::one());
                    g.push(IntVec::new(v));
                }
                VPolytope::new(dp + dq + 1, g)
            }
            E::Prism(a, m) => {
                positive("m", *m)?;
                let q = a.build()?;
                let height = Int::from(*m);
                let mut g = Vec::with_capacity(2 * q.generators().len());
                for x in q.generators() {
                    g.push(x.concat(&[Int::zero()]));
                    g.push(x.concat(std::slice::from_ref(&height)));
                }
                VPolytope::new(q.dim() + 1, g)
            }
            E::Pyramid(a) => {
                let q = a.build()?;
                let d = q.dim() + 1;
                let mut g: Vec<IntVec> = q.generators().iter().map(|x| x.concat(&[Int::zero()])).collect();
                g.push(IntVec::unit(d, d - 1));
                VPolytope::new(d, g)
            }
            E::Dilate(a, k) => {
                positive("k", *k)?;
                a.build()?.dilate(&Int::from(*k))
            }
        }
    }
}

impl fmt::Display for ConstructionExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            E::T { m, d } => write!(f, "T({m},{d})"),
            E::S { m, d } => write!(f, "S({m},{d})"),
            E::StdSimplex(d) => write!(f, "simplex({d})"),
            E::UnitCube(d) => write!(f, "unitcube({d})"),
            E::SymCube(d) => write!(f, "symcube({d})"),
            E::CrossPolytope(d) => write!(f, "cross({d})"),
            E::CrossOdd { l, d } => write!(f, "crossodd({l},{d})"),
            E::Box { l, d } => write!(f, "box({l},{d})"),
            E::Explicit(p) => write!(f, "explicit[dim={},n={}]", p.dim(), p.generators().len()),
            E::Join(a, b) => write!(f, "join({a},{b})"),
            E::Prism(a, m) => write!(f, "prism({a},{m})"),
            E::Pyramid(a) => write!(f, "pyr({a})"),
            E::Dilate(a, k) => write!(f, "dilate({a},{k})"),
        }
    }
}
