//! All biquandle 2-cocycles with values in a prime field, as the null space of
//! the cocycle and degeneracy conditions.

use super::{each_tuple, BiquandleCocycle, CocycleTable, FiniteAbelianGroup};
use crate::algebra::FiniteBiquandle;
use crate::{Error, Result};

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn inverse_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and small
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Reduced row echelon form in place; returns the pivot columns.
fn row_reduce(rows: &mut Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(found) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, found);
        let inv = inverse_mod(rows[r][c], p);
        for v in rows[r].iter_mut() {
            *v = *v * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                let pivot = rows[r].clone();
                for (v, &w) in rows[i].iter_mut().zip(&pivot).take(cols) {
                    *v = (*v + (p - f) * w) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

#[derive(Clone, Debug)]
pub struct CocycleSpace {
    pub p: u64,
    pub n: usize,
    pub basis: Vec<Vec<u64>>,
    algebra: FiniteBiquandle,
}

impl CocycleSpace {
    pub fn new(x: &FiniteBiquandle, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Cocycle(format!("coefficients must be a prime field, got Z/{p}")));
        }
        let n = x.order();
        let cols = n * n;
        let idx = |a: usize, b: usize| a * n + b;
        let mut rows = Vec::new();
        for y in 0..n {
            let mut r = vec![0; cols];
            r[idx(y, y)] = 1;
            rows.push(r);
        }
        each_tuple(n, 3, |t| {
            let (x1, x2, x3) = (t[0], t[1], t[2]);
            let mut r = vec![0u64; cols];
            let mut add = |c: usize, s: i64| r[c] = (r[c] as i64 + s).rem_euclid(p as i64) as u64;
            add(idx(x2, x3), 1);
            add(idx(x.over(x2, x1), x.over(x3, x1)), -1);
            add(idx(x1, x3), -1);
            add(idx(x.under(x1, x2), x.over(x3, x2)), 1);
            add(idx(x1, x2), 1);
            add(idx(x.under(x1, x3), x.under(x2, x3)), -1);
            if r.iter().any(|&v| v != 0) {
                rows.push(r);
            }
        });
        let pivots = row_reduce(&mut rows, cols, p);
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = vec![0u64; cols];
                v[f] = 1;
                for (row, &pc) in rows.iter().zip(&pivots) {
                    v[pc] = (p - row[f]) % p;
                }
                v
            })
            .collect();
        Ok(CocycleSpace { p, n, basis, algebra: x.clone() })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `p^dim`, or `None` if it does not fit.
    pub fn size(&self) -> Option<u128> {
        (self.p as u128).checked_pow(self.dim() as u32)
    }

    /// The cocycle with coordinates given by the base-`p` digits of `index`,
    /// least significant digit on the first basis vector.
    pub fn element(&self, mut index: u128) -> BiquandleCocycle {
        let mut v = vec![0u64; self.n * self.n];
        for b in &self.basis {
            let c = (index % self.p as u128) as u64;
            index /= self.p as u128;
            for (x, &y) in v.iter_mut().zip(b) {
                *x = (*x + c * y) % self.p;
            }
        }
        let t = CocycleTable::new(2, self.n, FiniteAbelianGroup::cyclic(self.p), v).expect("sized table");
        BiquandleCocycle::new(t, &self.algebra).expect("null space vectors are cocycles")
    }

    /// Every cocycle when there are at most `cap`, otherwise the ones at
    /// indices `⌊k·N/cap⌋` for `k < cap`.
    pub fn select(&self, cap: usize) -> Vec<BiquandleCocycle> {
        let total = self.size().unwrap_or(u128::MAX);
        if total <= cap as u128 {
            (0..total).map(|i| self.element(i)).collect()
        } else {
            (0..cap as u128).map(|k| self.element(k * total / cap as u128)).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{census, dihedral, quandle_as_biquandle, trivial_quandle};
    use crate::cocycle::check_biquandle_cocycle;

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(3) && is_prime(7));
        assert!(!is_prime(1) && !is_prime(4) && !is_prime(9));
        assert!(CocycleSpace::new(&quandle_as_biquandle(&dihedral(3)), 4).is_err());
    }

    #[test]
    fn trivial_quandle_space_is_everything_off_diagonal() {
        // every off-diagonal table is a cocycle over a trivial quandle
        let x = quandle_as_biquandle(&trivial_quandle(3));
        let s = CocycleSpace::new(&x, 2).unwrap();
        assert_eq!(s.dim(), 6);
        assert_eq!(s.select(200).len(), 64);
    }

    #[test]
    fn dihedral_three_space() {
        // coboundaries of non-constant η over Z/3 already give dimension 2
        let x = quandle_as_biquandle(&dihedral(3));
        let s = CocycleSpace::new(&x, 3).unwrap();
        assert!(s.dim() >= 2);
    }

    #[test]
    fn selected_cocycles_pass_the_exhaustive_check() {
        for x in census(3).into_iter().take(10) {
            for p in [2, 3] {
                let s = CocycleSpace::new(&x, p).unwrap();
                let picked = s.select(5);
                assert!(picked.len() <= 5);
                for th in picked {
                    assert!(check_biquandle_cocycle(th.table(), &x).unwrap().passed);
                }
            }
        }
    }

    #[test]
    fn capped_selection_is_deterministic_and_spread() {
        let x = quandle_as_biquandle(&trivial_quandle(3));
        let s = CocycleSpace::new(&x, 3).unwrap();
        assert_eq!(s.size(), Some(729));
        let a = s.select(200);
        assert_eq!(a.len(), 200);
        assert_eq!(a, s.select(200));
        assert_eq!(a[1], s.element(3));
    }
}
