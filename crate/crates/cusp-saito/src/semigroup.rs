//! The numerical semigroup generated by two coprime integers.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The semigroup `n·N + m·N` with `2 <= n < m` coprime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CuspSemigroup {
    pub n: i64,
    pub m: i64,
    pub conductor: i64,
}

/// Largest generator accepted; keeps every product used downstream inside `i64`.
pub const MAX_GENERATOR: i64 = 1 << 20;

impl CuspSemigroup {
    /// Builds the semigroup, checking the cusp conditions.
    ///
    /// ```
    /// use cusp_saito::semigroup::CuspSemigroup;
    /// assert_eq!(CuspSemigroup::new(7, 36).unwrap().conductor, 210);
    /// assert!(CuspSemigroup::new(7, 14).is_err());
    /// ```
    pub fn new(n: i64, m: i64) -> Result<Self> {
        if n < 2 || n >= m || m > MAX_GENERATOR {
            return Err(Error::NotCusp { n, m });
        }
        if n.gcd(&m) != 1 {
            return Err(Error::NotCoprime { n, m });
        }
        Ok(CuspSemigroup { n, m, conductor: (n - 1) * (m - 1) })
    }

    /// The product `nm`, the weight where initial parts stop being single monomials.
    pub fn nm(&self) -> i64 {
        self.n * self.m
    }

    /// Canonical representation `k = n·i + m·j` with `0 <= j < n`, if `k` lies in the semigroup.
    pub fn membership(&self, k: i64) -> Option<(i64, i64)> {
        if k < 0 {
            return None;
        }
        // m·j ≡ k (mod n) fixes j uniquely in [0, n).
        let j = (k.rem_euclid(self.n) * self.m_inverse_mod_n()).rem_euclid(self.n);
        let rest = k - self.m * j;
        if rest >= 0 {
            Some((rest / self.n, j))
        } else {
            None
        }
    }

    pub fn contains(&self, k: i64) -> bool {
        self.membership(k).is_some()
    }

    /// Inverse of `m` modulo `n`.
    pub fn m_inverse_mod_n(&self) -> i64 {
        let e = self.m.extended_gcd(&self.n);
        e.x.rem_euclid(self.n)
    }

    /// All gaps, in increasing order.
    pub fn gap_set(&self) -> Vec<i64> {
        (0..self.conductor).filter(|&k| !self.contains(k)).collect()
    }

    /// The largest gap `nm - n - m`.
    pub fn frobenius(&self) -> i64 {
        self.conductor - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(g: &CuspSemigroup, k: i64) -> bool {
        (0..=k / g.n.max(1)).any(|i| {
            let r = k - i * g.n;
            r >= 0 && r % g.m == 0
        })
    }

    #[test]
    fn examples() {
        let g = CuspSemigroup::new(7, 36).unwrap();
        assert_eq!(g.conductor, 210);
        assert_eq!(g.membership(43), Some((1, 1)));
        assert_eq!(g.membership(209), None);
        assert_eq!(g.membership(144), Some((0, 4)));
        assert_eq!(g.frobenius(), 209);
        assert_eq!(g.gap_set().len(), 105);
        assert_eq!(CuspSemigroup::new(2, 3).unwrap().conductor, 2);
        assert_eq!(CuspSemigroup::new(2, 3).unwrap().gap_set(), vec![1]);
        let g57 = CuspSemigroup::new(5, 7).unwrap();
        assert_eq!(g57.frobenius(), 23);
        let gaps = g57.gap_set();
        assert_eq!(gaps.len(), 12);
        assert!(gaps.contains(&23));
        assert_eq!(CuspSemigroup::new(7, 14), Err(Error::NotCoprime { n: 7, m: 14 }));
        assert!(matches!(CuspSemigroup::new(5, 3), Err(Error::NotCusp { .. })));
        assert!(matches!(CuspSemigroup::new(1, 3), Err(Error::NotCusp { .. })));
    }

    #[test]
    fn membership_matches_brute_force() {
        for (n, m) in [(2, 3), (5, 7), (7, 36), (5, 11), (3, 10)] {
            let g = CuspSemigroup::new(n, m).unwrap();
            for k in -3..=3 * g.conductor {
                assert_eq!(g.membership(k).is_some(), brute(&g, k), "k={k}");
                if let Some((i, j)) = g.membership(k) {
                    assert!(i >= 0 && (0..n).contains(&j));
                    assert_eq!(n * i + m * j, k);
                }
            }
            assert!(!g.contains(g.conductor - 1));
        }
    }
}
