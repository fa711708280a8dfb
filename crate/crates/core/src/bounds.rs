//! Inequality verifiers for Ehrhart and h* coefficients, plus the degree-2
//! witness construction.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::ehrhart::{c_coeff, m_coeff, stirling1, CoeffError, EhrhartPoly, HStar};
use crate::exact::{binomial, factorial, harmonic, int, rat_int, Int, Rat};
use crate::polytope::{PolytopeError, VPolytope};
use crate::report::{BoundEntry, BoundReport, Verdict};
use crate::surface::{lattice_surface, SurfaceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("{0}")]
    Inadmissible(String),
    #[error("polytope is not centrally symmetric")]
    NotSymmetric,
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

fn sign(e: usize) -> Int {
    if e.is_multiple_of(2) {
        Int::one()
    } else {
        -Int::one()
    }
}

fn check_range(d: usize, i: usize) -> Result<(), BoundError> {
    if d < 3 || i < 1 || i + 1 > d {
        return Err(BoundError::OutOfRange(format!("need d >= 3 and 1 <= i <= d-1 (got d={d}, i={i})")));
    }
    Ok(())
}

fn thm11_braces(d: usize, i: usize, vol: &Rat) -> Result<Rat, BoundError> {
    check_range(d, i)?;
    let df = rat_int(factorial(d as u32));
    let st = sign(d - i) * stirling1(d as u32 + 1, i as u32 + 1)?;
    let m = m_coeff(d as u32, i as u32)?;
    Ok(rat_int(st) + (&df * vol - Rat::one()) * rat_int(m))
}

/// `g_i(P) >= (1/d!) {(-1)^{d-i} stirl(d+1,i+1) + (d! vol - 1) M_{i,d}}`.
pub fn thm11_lower(d: usize, i: usize, vol: &Rat) -> Result<Rat, BoundError> {
    Ok(thm11_braces(d, i, vol)? / rat_int(factorial(d as u32)))
}

/// Sharpened lower bound using `G(P)`, valid whenever `M_{i,d} < 0`, i.e. for
/// every admissible `(i, d)` except `(2, 3)`.
pub fn thm11_improved_lower(d: usize, i: usize, vol: &Rat, lattice_points: u64) -> Result<Rat, BoundError> {
    check_range(d, i)?;
    if (i, d) == (2, 3) {
        return Err(BoundError::OutOfRange("the improved bound excludes (i, d) = (2, 3)".into()));
    }
    let extra = Int::from(2 * lattice_points) - Int::from(2 * (d as u64 + 1));
    Ok((thm11_braces(d, i, vol)? + rat_int(extra)) / rat_int(factorial(d as u32)))
}

/// Specialized lower bounds on `g_1`, `g_2` and `g_{d-2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corollary12 {
    pub g1: Rat,
    pub g2: Rat,
    pub g_dm2: Rat,
}

pub fn corollary12_bounds(d: usize, vol: &Rat) -> Result<Corollary12, BoundError> {
    check_range(d, 1)?;
    let n = d as u32;
    let df = rat_int(factorial(n));
    let scaled = &df * vol;
    let g1 = harmonic(n - 2) + Rat::new(int(2), Int::from(d - 1)) - rat_int(factorial(n - 2)) * vol;
    let g2 = {
        let s = sign(d);
        let inner = &s * factorial(n - 2) + stirling1(n - 1, 2)?;
        rat_int(s) / &df * (rat_int(stirling1(n + 1, 3)?) + rat_int(inner) * (&scaled - Rat::one()))
    };
    let dd = Int::from(d);
    let g_dm2 = if d % 2 == 1 {
        let lead = Rat::new((&dd - 1) * &dd * (&dd + 1), int(24));
        lead / &df * (rat_int(int(3) * (&dd + 1)) - &scaled)
    } else {
        let lead = Rat::new((&dd - 1) * &dd, int(24));
        lead / &df * (rat_int(int(3) * &dd * (&dd + 2)) - rat_int(&dd - 2) * &scaled)
    };
    Ok(Corollary12 { g1, g2, g_dm2 })
}

/// `g_i(P) <= (-1)^{d-i} stirl(d,i) vol + (-1)^{d-i-1} stirl(d,i+1)/(d-1)!`.
pub fn bm_upper(d: usize, i: usize, vol: &Rat) -> Result<Rat, BoundError> {
    if d < 2 || i < 1 || i + 1 > d {
        return Err(BoundError::OutOfRange(format!("need 1 <= i <= d-1 (got d={d}, i={i})")));
    }
    let n = d as u32;
    let a = rat_int(sign(d - i) * stirling1(n, i as u32)?) * vol;
    let b = Rat::new(sign(d - i - 1) * stirling1(n, i as u32 + 1)?, factorial(n - 1));
    Ok(a + b)
}

/// `g_{d-1}(P) >= (d+1) / (2 (d-1)!)`.
pub fn surface_lower(d: usize) -> Rat {
    Rat::new(Int::from(d + 1), int(2) * factorial(d as u32 - 1))
}

/// Closed forms of `M_{r,d}` for `r ∈ {0, 1, 2, d-2, d-1, d}`.
pub fn m_closed_form(d: usize, r: usize) -> Option<Int> {
    if d < 3 || r > d {
        return None;
    }
    let n = d as u32;
    let dd = Int::from(d);
    Some(match r {
        0 => Int::zero(),
        r if r == d => Int::one(),
        1 => -factorial(n - 2),
        2 => factorial(n - 2) + sign(d) * stirling1(n - 1, 2).ok()?,
        r if r == d - 1 => -(&dd * (&dd - 3u32)) / 2u32,
        r if r == d - 2 => {
            let b = if d % 2 == 1 { binomial(d as i64 + 1, 3) } else { binomial(d as i64, 3) };
            -b / 4
        }
        _ => return None,
    })
}

/// Sandwich data for one polytope. `vol` and the `g_i` come from its Ehrhart polynomial.
pub fn thm11_report(desc: &str, poly: &EhrhartPoly) -> Result<BoundReport, BoundError> {
    let d = poly.dim;
    let vol = poly.volume();
    let entries = (1..d)
        .map(|i| Ok(BoundEntry::lower(i, thm11_lower(d, i, vol)?, poly.coeff(i).clone())))
        .collect::<Result<_, BoundError>>()?;
    Ok(BoundReport::new("thm11", desc, d, entries))
}

pub fn thm11_improved_report(desc: &str, poly: &EhrhartPoly, lattice_points: u64) -> Result<BoundReport, BoundError> {
    let d = poly.dim;
    let vol = poly.volume();
    let entries = (1..d)
        .filter(|&i| (i, d) != (2, 3))
        .map(|i| Ok(BoundEntry::lower(i, thm11_improved_lower(d, i, vol, lattice_points)?, poly.coeff(i).clone())))
        .collect::<Result<_, BoundError>>()?;
    Ok(BoundReport::new("thm11-improved", desc, d, entries))
}

pub fn corollary12_report(desc: &str, poly: &EhrhartPoly) -> Result<BoundReport, BoundError> {
    let d = poly.dim;
    let c = corollary12_bounds(d, poly.volume())?;
    let mut entries = vec![BoundEntry::lower(1, c.g1, poly.coeff(1).clone())];
    entries.push(BoundEntry::lower(2, c.g2, poly.coeff(2).clone()));
    if d - 2 > 2 {
        entries.push(BoundEntry::lower(d - 2, c.g_dm2, poly.coeff(d - 2).clone()));
    }
    Ok(BoundReport::new("corollary12", desc, d, entries))
}

pub fn bm_upper_report(desc: &str, poly: &EhrhartPoly) -> Result<BoundReport, BoundError> {
    let d = poly.dim;
    let entries = (1..d)
        .map(|i| Ok(BoundEntry::upper(i, bm_upper(d, i, poly.volume())?, poly.coeff(i).clone())))
        .collect::<Result<_, BoundError>>()?;
    Ok(BoundReport::new("bm-upper", desc, d, entries))
}

pub fn eq15_report(desc: &str, poly: &EhrhartPoly) -> BoundReport {
    let d = poly.dim;
    BoundReport::new("eq15", desc, d, vec![BoundEntry::lower(d - 1, surface_lower(d), poly.coeff(d - 1).clone())])
}

/// `a_i >= a_1` for `1 <= i <= deg - 1`. The inequality is a theorem only when
/// `a_d > 0`; violations without that hypothesis are reported as confirmed
/// counterexamples.
pub fn hibi_check(h: &HStar) -> BoundReport {
    let deg = h.degree();
    let a1 = rat_int(h.a(1));
    let entries: Vec<BoundEntry> =
        (1..deg).map(|i| BoundEntry::lower(i, a1.clone(), rat_int(h.a(i as isize)))).collect();
    let hypothesis = h.a(h.dim as isize) > 0;
    let violated: Vec<usize> = entries.iter().filter(|e| e.verdict == Verdict::Violated).map(|e| e.index).collect();
    let mut report = BoundReport::new("hibi", h.to_string(), h.dim, entries)
        .with_note(format!("deg: {deg}"))
        .with_note(format!("hypothesis a_d > 0: {hypothesis}"));
    if !violated.is_empty() {
        let list: Vec<String> = violated.iter().map(|i| i.to_string()).collect();
        report = report.with_note(format!("violated-at: {}", list.join(",")));
        if !hypothesis {
            report.verdict = Verdict::CounterexampleConfirmed;
        }
    }
    report
}

/// Name of the violated degree-2 inequality, if any.
pub fn treutlein_violation(a1: u64, a2: u64) -> Option<String> {
    match a2 {
        0 => Some("a_2 ≥ 1 violated (degree must be 2)".into()),
        1 if a1 > 7 => Some("a_1 ≤ 7 violated".into()),
        a2 if a2 >= 2 && a1 > 3 * a2 + 3 => Some(format!("a_1 ≤ 3·a_2+3 = {} violated", 3 * a2 + 3)),
        _ => None,
    }
}

pub fn treutlein_check(a1: u64, a2: u64) -> bool {
    treutlein_violation(a1, a2).is_none()
}

/// Lattice polytope with h* = `(1, a1, a2)`.
///
/// `(7, 1)` is the triangle `conv{0, 3e_1, 3e_2}`; for `a2 < a1` a pentagon
/// with `a2` interior points; otherwise a tetrahedron with `a1` extra points
/// on one edge.
pub fn degree2_witness(a1: u64, a2: u64) -> Result<VPolytope, BoundError> {
    if let Some(msg) = treutlein_violation(a1, a2) {
        return Err(BoundError::Inadmissible(msg));
    }
    let (a1, a2) = (a1 as i64, a2 as i64);
    let p = if (a1, a2) == (7, 1) {
        VPolytope::from_i64(2, &[&[0, 0], &[3, 0], &[0, 3]])?
    } else if a2 < a1 {
        let m = a2;
        let l = (a1 - a2 - 1).min(m + 1);
        let k = a1 - a2 - 1 - l;
        VPolytope::from_i64(2, &[&[0, 0], &[l, 0], &[m + 1, 1], &[0, 2], &[k, 2]])?
    } else {
        let (l, m) = (a1, a2);
        VPolytope::from_i64(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, -l], &[1, 1, m + 1]])?
    };
    Ok(p)
}

/// `g_{d-1}(P) >= 2^{d-1}/(d-1)!` for centrally symmetric `P`.
pub fn stanley_symmetric_check(desc: &str, p: &VPolytope) -> Result<BoundReport, BoundError> {
    if !p.is_centrally_symmetric() {
        return Err(BoundError::NotSymmetric);
    }
    let d = p.dim();
    let bound = Rat::new(Int::from(1u64 << (d - 1)), factorial(d as u32 - 1));
    let actual = lattice_surface(p)?;
    Ok(BoundReport::new("stanley-sym", desc, d, vec![BoundEntry::lower(d - 1, bound, actual)]))
}

/// Report-only probe of `a_i + a_{d-i} >= binom(d,i) (a_d + 1)` for symmetric polytopes.
pub fn conjecture_probe_bhw(h: &HStar) -> BoundReport {
    let d = h.dim;
    let ad1 = Int::from(h.a(d as isize) + 1);
    let entries = (1..d)
        .map(|i| {
            let bound = rat_int(binomial(d as i64, i as u32) * &ad1);
            let actual = rat_int(h.a(i as isize) + h.a((d - i) as isize));
            BoundEntry::lower(i, bound, actual).probe()
        })
        .collect();
    BoundReport::new("bhw-probe", h.to_string(), d, entries).with_note("hypothesis: symmetric")
}

/// Checks the `C^d_{r,i}` identities used by the bounds: reflection symmetry,
/// nonpositivity of `M_{r,d}` and the recursion in `d`. Returns the first failure.
pub fn coefficient_identities(d: usize) -> Result<(), String> {
    let n = d as u32;
    for r in 0..=n {
        for i in 0..n as i64 {
            let lhs = c_coeff(n, r, i).map_err(|e| e.to_string())?;
            let rhs = sign(d - r as usize) * c_coeff(n, r, n as i64 - 1 - i).map_err(|e| e.to_string())?;
            if lhs != rhs {
                return Err(format!("symmetry fails at d={d}, r={r}, i={i}"));
            }
        }
        if n >= 2 && r >= 1 {
            for i in -2..=n as i64 + 2 {
                let lhs = c_coeff(n, r, i).map_err(|e| e.to_string())?;
                let lower = if r < n { c_coeff(n - 1, r, i).map_err(|e| e.to_string())? } else { Int::zero() };
                let rhs = Int::from(i - n as i64 + 1) * lower + c_coeff(n - 1, r - 1, i).map_err(|e| e.to_string())?;
                if lhs != rhs {
                    return Err(format!("recursion fails at d={d}, r={r}, i={i}"));
                }
            }
        }
    }
    if d >= 3 {
        for r in 1..n {
            let m = m_coeff(n, r).map_err(|e| e.to_string())?;
            let zero_ok = (d, r) == (3, 2);
            if m.is_positive() || (m.is_zero() && !zero_ok) || (zero_ok && !m.is_zero()) {
                return Err(format!("sign of M_{{{r},{d}}} = {m} is wrong"));
            }
        }
    }
    Ok(())
}
