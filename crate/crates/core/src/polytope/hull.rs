//! Facet enumeration by the double description method on the homogenized
//! cone of valid inequalities.
//!
//! A generator `v` contributes the constraint `c·v + b >= 0` on `(c, b)`; the
//! extreme rays of that cone are exactly the facets `-c·x <= b`.

use fixedbitset::FixedBitSet;
use num_traits::{One, Signed, Zero};

use super::{HFacet, HRep};
use crate::exact::{rank_exact, reduce_by_gcd, solve_exact, Int, IntMat, IntVec, Rat};

struct Ray {
    coords: Vec<Int>,
    tight: FixedBitSet,
}

fn eval(row: &[Int], ray: &[Int]) -> Int {
    row.iter().zip(ray).map(|(a, b)| a * b).sum()
}

/// Caller guarantees the generators are full-dimensional.
pub(super) fn facets(dim: usize, generators: &[IntVec]) -> HRep {
    let n = generators.len();
    let width = dim + 1;
    let rows: Vec<Vec<Int>> = generators
        .iter()
        .map(|g| {
            let mut r = g.entries().to_vec();
            r.push(Int::one());
            r
        })
        .collect();

    // greedy basis of independent rows
    let mut basis: Vec<usize> = Vec::with_capacity(width);
    for i in 0..n {
        basis.push(i);
        let m = IntMat::from_rows(basis.iter().map(|&j| rows[j].clone()).collect()).expect("uniform rows");
        if rank_exact(&m) < basis.len() {
            basis.pop();
        }
        if basis.len() == width {
            break;
        }
    }
    assert_eq!(basis.len(), width, "generators must be full-dimensional");

    // initial rays: columns of the inverse of the basis matrix
    let basis_rows: Vec<Vec<Rat>> = basis
        .iter()
        .map(|&j| rows[j].iter().cloned().map(Rat::from_integer).collect())
        .collect();
    let mut rays: Vec<Ray> = (0..width)
        .map(|col| {
            let rhs: Vec<Rat> = (0..width).map(|r| if r == col { Rat::one() } else { Rat::zero() }).collect();
            let x = solve_exact(&basis_rows, &rhs).expect("independent basis");
            let lcm = x.iter().fold(Int::one(), |l, q| num_integer::lcm(l, q.denom().clone()));
            let mut coords: Vec<Int> = x.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
            reduce_by_gcd(&mut coords);
            let mut tight = FixedBitSet::with_capacity(n);
            for (r, &j) in basis.iter().enumerate() {
                tight.set(j, r != col);
            }
            Ray { coords, tight }
        })
        .collect();

    let mut in_basis = FixedBitSet::with_capacity(n);
    basis.iter().for_each(|&j| in_basis.insert(j));

    for i in (0..n).filter(|&i| !in_basis.contains(i)) {
        let values: Vec<Int> = rays.iter().map(|r| eval(&rows[i], &r.coords)).collect();
        let plus: Vec<usize> = (0..rays.len()).filter(|&r| values[r].is_positive()).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&r| values[r].is_negative()).collect();
        if minus.is_empty() {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.tight.insert(i);
                }
            }
            continue;
        }

        let mut fresh = Vec::new();
        for &p in &plus {
            for &m in &minus {
                let mut common = rays[p].tight.clone();
                common.intersect_with(&rays[m].tight);
                if common.count_ones(..) + 2 < width {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(r, ray)| r == p || r == m || !common.is_subset(&ray.tight));
                if !adjacent {
                    continue;
                }
                let vp = &values[p];
                let vm = -&values[m];
                let mut coords: Vec<Int> = rays[m]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(cm, cp)| vp * cm + &vm * cp)
                    .collect();
                reduce_by_gcd(&mut coords);
                common.insert(i);
                fresh.push(Ray { coords, tight: common });
            }
        }

        let mut kept = Vec::with_capacity(rays.len() + fresh.len());
        for (mut ray, v) in rays.into_iter().zip(values) {
            if v.is_negative() {
                continue;
            }
            if v.is_zero() {
                ray.tight.insert(i);
            }
            kept.push(ray);
        }
        kept.extend(fresh);
        rays = kept;
    }

    let facets = rays
        .into_iter()
        .filter_map(|ray| {
            let mut normal: Vec<Int> = ray.coords[..dim].iter().map(|c| -c).collect();
            if normal.iter().all(Zero::is_zero) {
                return None;
            }
            reduce_by_gcd(&mut normal);
            let normal = IntVec::new(normal);
            let on = ray.tight.ones().next().expect("facet touches a generator");
            let offset = normal.dot(&generators[on]);
            Some(HFacet { normal, offset })
        })
        .collect();
    HRep::canonical(dim, facets)
}
