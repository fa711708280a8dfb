//! Lattice-point counting, Ehrhart polynomials and h*-vectors.
//!
//! The h*-vector is the coefficient vector of `G_P` in the binomial basis
//! `binom(z+d-i, d)`. It is extracted twice, by the alternating sum
//! `a_j = sum_i (-1)^i binom(d+1,i) G_P(j-i)` and by forward substitution in
//! the (unit lower triangular) binomial basis, and the two must agree.

mod counter;
pub mod numbers;

use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{binomial, factorial, serde_rat_vec, solve_exact, ExactError, Int, Rat, RatPoly};
use crate::polytope::VPolytope;

pub use counter::LatticeCounter;
pub use numbers::{c_coeff, eulerian, m_coeff, stirling1, CoeffError, CoeffTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EhrhartError {
    #[error("coordinates too large for the enumeration kernel")]
    Overflow,
    #[error("h* extraction disagrees between alternating sum {alternating:?} and triangular solve {triangular:?}")]
    BasisMismatch { alternating: Vec<Int>, triangular: Vec<Int> },
    #[error("negative h* coefficient a_{index} = {value}")]
    Negative { index: usize, value: Int },
    #[error("need {expected} values, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("h* vector of length {len} does not fit dimension {dim}")]
    TooLong { len: usize, dim: usize },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Number of lattice points in `kP` (interior only when `strict`).
pub fn count(p: &VPolytope, k: u64, strict: bool) -> Result<u64, EhrhartError> {
    Ok(LatticeCounter::new(p)?.count(k, strict))
}

/// `G_P(k) = sum_i g_i k^i`, the Ehrhart polynomial of a `dim`-dimensional polytope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EhrhartPoly {
    pub dim: usize,
    #[serde(with = "serde_rat_vec")]
    pub coeffs: Vec<Rat>,
}

impl EhrhartPoly {
    /// Interpolates the counts `G(0), ..., G(d)`.
    pub fn from_counts(dim: usize, counts: &[u64]) -> Result<Self, EhrhartError> {
        if counts.len() != dim + 1 {
            return Err(EhrhartError::WrongLength { expected: dim + 1, got: counts.len() });
        }
        let vandermonde: Vec<Vec<Rat>> = (0..=dim)
            .map(|k| (0..=dim).map(|i| Rat::from_integer(Int::from(k).pow(i as u32))).collect())
            .collect();
        let rhs: Vec<Rat> = counts.iter().map(|&c| Rat::from_integer(c.into())).collect();
        let coeffs = solve_exact(&vandermonde, &rhs)?;
        Ok(EhrhartPoly { dim, coeffs })
    }

    pub fn coeff(&self, i: usize) -> &Rat {
        &self.coeffs[i]
    }

    pub fn eval(&self, k: i64) -> Rat {
        self.as_poly().eval(&Rat::from_integer(k.into()))
    }

    pub fn as_poly(&self) -> RatPoly {
        RatPoly::new(self.coeffs.clone())
    }

    pub fn volume(&self) -> &Rat {
        &self.coeffs[self.dim]
    }
}

pub fn ehrhart_poly(p: &VPolytope) -> Result<EhrhartPoly, EhrhartError> {
    let counter = LatticeCounter::new(p)?;
    let counts: Vec<u64> = (0..=p.dim() as u64).map(|k| counter.count(k, false)).collect();
    EhrhartPoly::from_counts(p.dim(), &counts)
}

/// Numerator `a_0 + a_1 z + ... + a_d z^d` of the Ehrhart series of a
/// `dim`-dimensional lattice polytope.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HStar {
    pub dim: usize,
    pub coeffs: Vec<i64>,
}

impl HStar {
    /// Pads `coeffs` with zeros to length `dim + 1`.
    pub fn new(dim: usize, coeffs: &[i64]) -> Result<Self, EhrhartError> {
        let mut coeffs = coeffs.to_vec();
        while coeffs.len() > dim + 1 && coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.len() > dim + 1 {
            return Err(EhrhartError::TooLong { len: coeffs.len(), dim });
        }
        coeffs.resize(dim + 1, 0);
        Ok(HStar { dim, coeffs })
    }

    pub fn a(&self, i: isize) -> i64 {
        if i < 0 {
            return 0;
        }
        self.coeffs.get(i as usize).copied().unwrap_or(0)
    }

    /// Degree of the h*-polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|&a| a != 0).unwrap_or(0)
    }

    pub fn sum(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// `G_P(k) = sum_i a_i binom(k+d-i, d)`.
    pub fn ehrhart_value(&self, k: i64) -> Int {
        let d = self.dim as i64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &a)| Int::from(a) * binomial(k + d - i as i64, self.dim as u32))
            .sum()
    }

    pub fn to_ehrhart_poly(&self) -> Result<EhrhartPoly, EhrhartError> {
        let values: Vec<Rat> = (0..=self.dim as i64).map(|k| Rat::from_integer(self.ehrhart_value(k))).collect();
        let vandermonde: Vec<Vec<Rat>> = (0..=self.dim)
            .map(|k| (0..=self.dim).map(|i| Rat::from_integer(Int::from(k).pow(i as u32))).collect())
            .collect();
        Ok(EhrhartPoly { dim: self.dim, coeffs: solve_exact(&vandermonde, &values)? })
    }
}

impl std::fmt::Display for HStar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `(sum_i a_i) / d!`.
pub fn volume(h: &HStar) -> Rat {
    Rat::new(Int::from(h.sum()), factorial(h.dim as u32))
}

fn alternating_sum(dim: usize, values: &[Int]) -> Vec<Int> {
    (0..=dim)
        .map(|j| {
            (0..=j)
                .map(|i| {
                    let t = binomial(dim as i64 + 1, i as u32) * &values[j - i];
                    if i % 2 == 0 {
                        t
                    } else {
                        -t
                    }
                })
                .sum()
        })
        .collect()
}

fn triangular_solve(dim: usize, values: &[Int]) -> Vec<Int> {
    // row k: G(k) = sum_{i<=k} a_i binom(k+d-i, d), diagonal entries binom(d,d) = 1
    let mut a: Vec<Int> = Vec::with_capacity(dim + 1);
    for (k, value) in values.iter().enumerate().take(dim + 1) {
        let known: Int = (0..k)
            .map(|i| &a[i] * binomial((k + dim - i) as i64, dim as u32))
            .sum();
        a.push(value - known);
    }
    a
}

/// h*-vector from the values `G_P(0), ..., G_P(d)`.
pub fn hstar_from_values(dim: usize, values: &[Int]) -> Result<HStar, EhrhartError> {
    if values.len() != dim + 1 {
        return Err(EhrhartError::WrongLength { expected: dim + 1, got: values.len() });
    }
    let alternating = alternating_sum(dim, values);
    let triangular = triangular_solve(dim, values);
    if alternating != triangular {
        return Err(EhrhartError::BasisMismatch { alternating, triangular });
    }
    if let Some((index, value)) = alternating.iter().enumerate().find(|(_, a)| a.is_negative()) {
        return Err(EhrhartError::Negative { index, value: value.clone() });
    }
    let coeffs = alternating
        .iter()
        .map(|a| a.to_i64().ok_or(EhrhartError::Overflow))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(HStar { dim, coeffs })
}

pub fn hstar_from_counts(p: &VPolytope) -> Result<HStar, EhrhartError> {
    let counter = LatticeCounter::new(p)?;
    let values: Vec<Int> = (0..=p.dim() as u64).map(|k| Int::from(counter.count(k, false))).collect();
    hstar_from_values(p.dim(), &values)
}

/// Everything the counting kernel knows about one polytope.
#[derive(Clone, Debug)]
pub struct EhrhartData {
    pub counts: Vec<u64>,
    pub interior_counts: Vec<u64>,
    pub poly: EhrhartPoly,
    pub hstar: HStar,
}

impl EhrhartData {
    pub fn lattice_points(&self) -> u64 {
        self.counts[1]
    }

    pub fn interior_points(&self) -> u64 {
        self.interior_counts[1]
    }
}

/// Counts `kP` and `int(kP)` for `k = 0..=d` and derives `G_P` and h*.
pub fn analyze(p: &VPolytope) -> Result<EhrhartData, EhrhartError> {
    let counter = LatticeCounter::new(p)?;
    let d = p.dim() as u64;
    let counts: Vec<u64> = (0..=d).map(|k| counter.count(k, false)).collect();
    let interior_counts: Vec<u64> = (0..=d).map(|k| counter.count(k, true)).collect();
    let poly = EhrhartPoly::from_counts(p.dim(), &counts)?;
    let values: Vec<Int> = counts.iter().map(|&c| Int::from(c)).collect();
    let hstar = hstar_from_values(p.dim(), &values)?;
    Ok(EhrhartData { counts, interior_counts, poly, hstar })
}
