//! h*-level transforms: join, dilation, prism, and the closed forms for
//! cubes and boxes.

use serde::Serialize;
use thiserror::Error;

use crate::ehrhart::{eulerian, hstar_from_values, EhrhartError, HStar};
use crate::exact::{binomial, Int};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Ehrhart(#[from] EhrhartError),
}

/// Outcome of checking a transform against brute-force counting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesTransformReport {
    pub inputs: Vec<HStar>,
    pub transform: String,
    pub output: HStar,
    pub oracle: HStar,
    pub agree: bool,
}

impl SeriesTransformReport {
    pub fn new(transform: impl Into<String>, inputs: Vec<HStar>, output: HStar, oracle: HStar) -> Self {
        let agree = output == oracle;
        SeriesTransformReport { inputs, transform: transform.into(), output, oracle, agree }
    }
}

/// The Ehrhart series of a join is the product of the two series; with the
/// denominators `(1-z)^{p+1}(1-z)^{q+1} = (1-z)^{p+q+2}` this is the product
/// of the numerators.
pub fn join_hstar(p: &HStar, q: &HStar) -> HStar {
    let dim = p.dim + q.dim + 1;
    let mut coeffs = vec![0i64; dim + 1];
    for (i, a) in p.coeffs.iter().enumerate() {
        for (j, b) in q.coeffs.iter().enumerate() {
            coeffs[i + j] += a * b;
        }
    }
    HStar { dim, coeffs }
}

/// h* of `kP`.
///
/// Averaging `Ehr_P(ζ^i z^{1/k})` over the k-th roots of unity keeps exactly
/// the terms `G_P(m) w^m` with `k | m`, so `Ehr_{kP}(z) = sum_m G_P(km) z^m`.
/// That multisection is carried out directly on `G_P`, recovered from h* in
/// the binomial basis, without any complex arithmetic.
pub fn dilate_hstar(h: &HStar, k: u64) -> Result<HStar, SeriesError> {
    if k < 1 {
        return Err(SeriesError::InvalidParameter("dilation factor must be >= 1".into()));
    }
    let k = k as i64;
    let values: Vec<Int> = (0..=h.dim as i64).map(|m| h.ehrhart_value(k * m)).collect();
    Ok(hstar_from_values(h.dim, &values)?)
}

/// h* of the prism `Q × [0, m]`:
/// `a_i(P) = (m i + 1) a_i(Q) + (m(d-i+1) - 1) a_{i-1}(Q)` with `d = dim Q + 1`.
pub fn prism_hstar(q: &HStar, m: u64) -> Result<HStar, SeriesError> {
    if m < 1 {
        return Err(SeriesError::InvalidParameter("prism height must be >= 1".into()));
    }
    let m = m as i64;
    let d = q.dim as i64 + 1;
    let coeffs = (0..=d)
        .map(|i| {
            let cur = if i < d { q.a(i as isize) } else { 0 };
            (m * i + 1) * cur + (m * (d - i + 1) - 1) * q.a(i as isize - 1)
        })
        .collect();
    Ok(HStar { dim: d as usize, coeffs })
}

/// h* of `C_d = [-1,1]^d`: `a_i = sum_j binom(d+1, j) A(d, 2i+1-j)`.
pub fn cube_hstar(d: usize) -> Result<HStar, SeriesError> {
    if d < 1 {
        return Err(SeriesError::InvalidParameter("cube dimension must be >= 1".into()));
    }
    let n = d as u32;
    let coeffs = (0..=d as i64)
        .map(|i| {
            let a: Int = (0..=d as i64 + 1)
                .map(|j| binomial(d as i64 + 1, j as u32) * eulerian(n, 2 * i + 1 - j))
                .sum();
            i64::try_from(a).expect("cube h* fits i64")
        })
        .collect();
    Ok(HStar { dim: d, coeffs })
}

/// h* of the box `Q_d(2l-1) = {|x_1| <= l, |x_i| <= 1}`, a prism of height
/// `2l` over `C_{d-1}`.
pub fn box_hstar(l: u64, d: usize) -> Result<HStar, SeriesError> {
    if l < 1 || d < 2 {
        return Err(SeriesError::InvalidParameter(format!("box needs l >= 1 and d >= 2 (got l={l}, d={d})")));
    }
    let base = cube_hstar(d - 1)?;
    let l = l as i64;
    let d = d as i64;
    let coeffs = (0..=d)
        .map(|i| {
            let cur = if i < d { base.a(i as isize) } else { 0 };
            (2 * l * i + 1) * cur + (2 * l * (d - i + 1) - 1) * base.a(i as isize - 1)
        })
        .collect();
    Ok(HStar { dim: d as usize, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(dim: usize, c: &[i64]) -> HStar {
        HStar::new(dim, c).unwrap()
    }

    #[test]
    fn joins() {
        assert_eq!(join_hstar(&h(1, &[1, 2]), &h(1, &[1, 0])), h(3, &[1, 2]));
        assert_eq!(join_hstar(&h(3, &[1, 0, 1]), &h(1, &[1, 2])), h(5, &[1, 2, 1, 2]));
        // joining with a point is a pyramid
        let t = h(4, &[1, 0, 2]);
        assert_eq!(join_hstar(&t, &h(0, &[1])), h(5, &[1, 0, 2]));
    }

    #[test]
    fn dilations() {
        let sq = h(2, &[1, 1, 0]);
        assert_eq!(dilate_hstar(&sq, 1).unwrap(), sq);
        assert_eq!(dilate_hstar(&sq, 2).unwrap(), h(2, &[1, 6, 1]));
        assert_eq!(dilate_hstar(&h(1, &[1, 0]), 2).unwrap(), h(1, &[1, 1]));
        assert!(dilate_hstar(&sq, 0).is_err());
    }

    #[test]
    fn prisms() {
        assert_eq!(prism_hstar(&h(1, &[1, 0]), 1).unwrap(), h(2, &[1, 1, 0]));
        // [0,1] x [0,3]: 8 lattice points, a_1 = 8 - 3
        assert_eq!(prism_hstar(&h(1, &[1, 0]), 3).unwrap(), h(2, &[1, 5, 0]));
        assert!(prism_hstar(&h(1, &[1, 0]), 0).is_err());
    }

    #[test]
    fn cubes_and_boxes() {
        assert_eq!(cube_hstar(1).unwrap(), h(1, &[1, 1]));
        assert_eq!(cube_hstar(2).unwrap(), h(2, &[1, 6, 1]));
        assert_eq!(cube_hstar(3).unwrap(), h(3, &[1, 23, 23, 1]));
        assert_eq!(cube_hstar(4).unwrap(), h(4, &[1, 76, 230, 76, 1]));
        assert_eq!(box_hstar(2, 2).unwrap(), h(2, &[1, 12, 3]));
        for d in 2..=5 {
            assert_eq!(box_hstar(1, d).unwrap(), cube_hstar(d).unwrap());
        }
        assert!(box_hstar(0, 2).is_err());
        assert!(box_hstar(1, 1).is_err());
    }

    #[test]
    fn dilation_is_multiplicative() {
        for base in [h(2, &[1, 1, 0]), h(3, &[1, 0, 1, 0]), h(4, &[1, 0, 2, 0, 0]), h(3, &[1, 4, 1, 0])] {
            for k1 in 1..=3 {
                for k2 in 1..=3 {
                    let twice = dilate_hstar(&dilate_hstar(&base, k1).unwrap(), k2).unwrap();
                    assert_eq!(twice, dilate_hstar(&base, k1 * k2).unwrap());
                }
            }
        }
    }
}
