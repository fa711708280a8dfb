//! Stirling numbers of the first kind, Eulerian numbers, and the coefficients
//! `C^d_{r,i}` of `(z+i)(z+i-1)...(z+i-(d-1))` with their minima `M_{r,d}`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{binomial, Int};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("index out of range: {0}")]
    OutOfRange(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Key {
    Stirling(u32, u32),
    Eulerian(u32, i64),
    C(u32, u32, i64),
    M(u32, u32),
}

/// Memo table shared between threads. Values are pure functions of their
/// key, so a lost race only recomputes the same entry.
#[derive(Default)]
pub struct CoeffTable {
    cache: RwLock<HashMap<Key, Int>>,
}

impl CoeffTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.cache.read().expect("coefficient cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn memo(&self, key: Key, compute: impl FnOnce() -> Int) -> Int {
        if let Some(v) = self.cache.read().expect("coefficient cache poisoned").get(&key) {
            return v.clone();
        }
        let v = compute();
        self.cache
            .write()
            .expect("coefficient cache poisoned")
            .entry(key)
            .or_insert(v)
            .clone()
    }

    /// Signed Stirling number of the first kind: the coefficient of `z^k`
    /// in `z(z-1)...(z-n+1)`.
    pub fn stirling1(&self, n: u32, k: u32) -> Result<Int, CoeffError> {
        if k > n {
            return Err(CoeffError::OutOfRange(format!("stirl({n},{k}) needs k <= n")));
        }
        Ok(self.memo(Key::Stirling(n, k), || {
            let coeffs = falling_product(0, n);
            coeffs[k as usize].clone()
        }))
    }

    /// `A(n,j) = sum_{k=0}^{j} (-1)^k C(n+1,k) (j-k)^n`, zero outside `0..=n`.
    pub fn eulerian(&self, n: u32, j: i64) -> Int {
        if j < 0 || j > n as i64 {
            return Int::zero();
        }
        self.memo(Key::Eulerian(n, j), || {
            (0..=j)
                .map(|k| {
                    let term = binomial(n as i64 + 1, k as u32) * Int::from(j - k).pow(n);
                    if k % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum()
        })
    }

    /// Coefficient of `z^r` in `(z+i)(z+i-1)...(z+i-(d-1)) = d! binom(z+i, d)`.
    pub fn c_coeff(&self, d: u32, r: u32, i: i64) -> Result<Int, CoeffError> {
        if r > d {
            return Err(CoeffError::OutOfRange(format!("C^{d}_{{{r},{i}}} needs r <= d")));
        }
        Ok(self.memo(Key::C(d, r, i), || falling_product(i, d)[r as usize].clone()))
    }

    /// `M_{r,d} = min { C^d_{r,i} : 1 <= i <= d-2 }`.
    pub fn m_coeff(&self, d: u32, r: u32) -> Result<Int, CoeffError> {
        if d < 3 {
            return Err(CoeffError::OutOfRange(format!("M_{{{r},{d}}} needs d >= 3")));
        }
        if r > d {
            return Err(CoeffError::OutOfRange(format!("M_{{{r},{d}}} needs r <= d")));
        }
        let mut vals = Vec::with_capacity(d as usize - 2);
        for i in 1..=(d as i64 - 2) {
            vals.push(self.c_coeff(d, r, i)?);
        }
        Ok(self.memo(Key::M(d, r), || vals.into_iter().min().expect("d >= 3")))
    }
}

/// Coefficients (ascending) of `prod_{j=0}^{n-1} (z + shift - j)`.
fn falling_product(shift: i64, n: u32) -> Vec<Int> {
    let mut coeffs = vec![Int::one()];
    for j in 0..n as i64 {
        let c = Int::from(shift - j);
        let mut next = vec![Int::zero(); coeffs.len() + 1];
        for (t, a) in coeffs.iter().enumerate() {
            next[t + 1] += a;
            next[t] += a * &c;
        }
        coeffs = next;
    }
    coeffs
}

fn global() -> &'static CoeffTable {
    static TABLE: OnceLock<CoeffTable> = OnceLock::new();
    TABLE.get_or_init(CoeffTable::new)
}

pub fn stirling1(n: u32, k: u32) -> Result<Int, CoeffError> {
    global().stirling1(n, k)
}

pub fn eulerian(n: u32, j: i64) -> Int {
    global().eulerian(n, j)
}

pub fn c_coeff(d: u32, r: u32, i: i64) -> Result<Int, CoeffError> {
    global().c_coeff(d, r, i)
}

pub fn m_coeff(d: u32, r: u32) -> Result<Int, CoeffError> {
    global().m_coeff(d, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{factorial, harmonic, int, Rat};

    #[test]
    fn stirling_small() {
        assert_eq!(stirling1(3, 1).unwrap(), int(2));
        assert_eq!(stirling1(3, 2).unwrap(), int(-3));
        assert_eq!(stirling1(3, 3).unwrap(), int(1));
        assert_eq!(stirling1(3, 0).unwrap(), int(0));
        assert!(stirling1(2, 3).is_err());
    }

    #[test]
    fn stirling_closed_forms() {
        // stirl(5,2) = (-1)^5 4! H_4 = -50
        assert_eq!(stirling1(5, 2).unwrap(), int(-50));
        // stirl(6,4) = (17/4) binom(6,3) = 85
        assert_eq!(stirling1(6, 4).unwrap(), int(85));
        for d in 1..=10u32 {
            let lhs = Rat::from_integer(stirling1(d + 1, 2).unwrap());
            let sign = if (d + 1) % 2 == 0 { 1 } else { -1 };
            assert_eq!(lhs, Rat::from_integer(int(sign) * factorial(d)) * harmonic(d), "d={d}");
        }
    }

    /// Eulerian numbers by descent counts over all permutations.
    fn eulerian_by_descents(n: usize, j: i64) -> i64 {
        fn perms(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
            if k == items.len() {
                out.push(items.clone());
                return;
            }
            for i in k..items.len() {
                items.swap(k, i);
                perms(items, k + 1, out);
                items.swap(k, i);
            }
        }
        let mut all = Vec::new();
        perms(&mut (1..=n).collect(), 0, &mut all);
        all.iter()
            .filter(|p| p.windows(2).filter(|w| w[0] > w[1]).count() as i64 == j - 1)
            .count() as i64
    }

    #[test]
    fn eulerian_matches_descents() {
        assert_eq!(eulerian(3, 2), int(4));
        for n in 1..=6u32 {
            for j in 0..=n as i64 {
                assert_eq!(eulerian(n, j), int(eulerian_by_descents(n as usize, j)), "A({n},{j})");
            }
        }
        assert_eq!(eulerian(2, 5), int(0));
        assert_eq!(eulerian(2, -1), int(0));
    }

    #[test]
    fn eulerian_row_sums() {
        for n in 1..=8u32 {
            assert_eq!(eulerian(n, 1), int(1));
            let s: Int = (0..=n as i64).map(|j| eulerian(n, j)).sum();
            assert_eq!(s, factorial(n));
        }
    }

    #[test]
    fn c_coefficients() {
        for d in 1..=8u32 {
            for i in -3..=10 {
                assert_eq!(c_coeff(d, d, i).unwrap(), int(1));
            }
            for i in 0..d as i64 {
                assert_eq!(c_coeff(d, 0, i).unwrap(), int(0));
            }
        }
        assert_eq!(c_coeff(5, 1, 3).unwrap(), int(-6));
        assert!(c_coeff(3, 4, 0).is_err());
    }

    #[test]
    fn m_coefficients() {
        assert_eq!(m_coeff(5, 1).unwrap(), int(-6));
        assert_eq!(m_coeff(5, 4).unwrap(), int(-5));
        assert_eq!(m_coeff(5, 3).unwrap(), int(-5));
        assert_eq!(m_coeff(3, 2).unwrap(), int(0));
        assert!(m_coeff(2, 1).is_err());
    }

    #[test]
    fn table_is_shareable() {
        let table = CoeffTable::new();
        std::thread::scope(|s| {
            for t in 0..4 {
                let table = &table;
                s.spawn(move || {
                    for d in 3..=8u32 {
                        for r in 0..=d {
                            let v = table.m_coeff(d, r).unwrap();
                            assert_eq!(v, m_coeff(d, r).unwrap(), "thread {t}");
                        }
                    }
                });
            }
        });
        assert!(!table.is_empty());
    }
}
