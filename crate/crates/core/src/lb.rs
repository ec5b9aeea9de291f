//! The LB lower bound on crepant-curve degrees.

use crate::arith::{self, nu};
use crate::basket;
use thiserror::Error;

pub const PRIMES: [u64; 9] = [2, 3, 5, 7, 11, 13, 17, 19, 23];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LbError {
    #[error("{0} is not a prime at most 23")]
    BadPrime(u64),
    #[error("N must be at least 2, got {0}")]
    BadN(u64),
}

/// `R_X` with its valuation counts precomputed.
#[derive(Debug, Clone)]
pub struct LbContext {
    r: Vec<u64>,
    rx: u64,
    // counts[i][e] = #{r : ν_{PRIMES[i]}(r) = e}
    counts: Vec<[usize; 6]>,
}

impl LbContext {
    pub fn new(r: &[u64]) -> Self {
        let mut r = r.to_vec();
        r.sort();
        let counts = PRIMES
            .iter()
            .map(|&p| {
                let mut c = [0usize; 6];
                for &x in &r {
                    let e = nu(x, p) as usize;
                    if e < 6 {
                        c[e] += 1;
                    }
                }
                c
            })
            .collect();
        LbContext { rx: basket::gorenstein_index_of(&r), r, counts }
    }

    pub fn r(&self) -> &[u64] {
        &self.r
    }

    pub fn rx(&self) -> u64 {
        self.rx
    }

    fn n(&self, p: u64, e: usize) -> usize {
        let i = PRIMES.iter().position(|&q| q == p).expect("prime ≤ 23");
        self.counts[i][e]
    }

    fn multiplicity(&self, v: u64) -> usize {
        self.r.iter().filter(|&&x| x == v).count()
    }

    pub fn f_p(&self, p: u64, n: u64) -> Result<u64, LbError> {
        if !PRIMES.contains(&p) {
            return Err(LbError::BadPrime(p));
        }
        if n < 2 {
            return Err(LbError::BadN(n));
        }
        let m = n - 1;
        let threshold = |k: usize| k as u64 + 1 + arith::indicator((k as u64 + 2) % p == 0);
        Ok(match p {
            2 => self.f_2(n),
            3 => {
                let (n9, n3) = (self.n(3, 2), self.n(3, 1));
                if n9 > 0 && m >= 3 {
                    if m >= threshold(n3) { 9 } else { 3 }
                } else if n9 == 0 && n3 > 0 && m >= threshold(n3) {
                    3
                } else {
                    1
                }
            }
            _ => {
                let np = self.n(p, 1);
                if np > 0 && m >= threshold(np) { p } else { 1 }
            }
        })
    }

    fn f_2(&self, n: u64) -> u64 {
        let e = nu(self.rx, 2);
        if e == 0 || n == 2 {
            return 1;
        }
        let m = n - 1;
        let (n2, n4, n8, n16) = (self.n(2, 1), self.n(2, 2), self.n(2, 3), self.n(2, 4));
        let floor2 = |k: usize| 2 * (k as u64 / 2) + 2;
        if n16 == 1 {
            if n8 != 0 { 2 } else if n4 != 0 { 4 } else { 8 }
        } else if n8 == 2 {
            if n4 != 0 { 2 } else if n2 != 0 { 4 } else { 8 }
        } else if n16 == 0 && n8 <= 1 && n4 + n8 > 0 && m >= floor2(n4) {
            let c4 = self.multiplicity(4);
            if (n4 <= 1 && m >= floor2(n2 + n8))
                || (n4 == 2 && c4 >= 2 && m >= floor2(n2 + n8 + 2))
                || (n4 == 3 && c4 >= 3 && n2 == 0 && n8 == 0)
            {
                1 << e
            } else {
                1 << (e - 1)
            }
        } else if n16 == 0 && n8 == 0 && n4 == 2 && (m == 2 || m == 3) {
            2
        } else if n16 == 0 && n8 == 0 && n4 == 0 && ((n2 > 0 && n2 <= 2) || (n2 > 2 && m >= floor2(n2))) {
            2
        } else {
            1
        }
    }

    pub fn lb(&self, n: u64) -> Result<u64, LbError> {
        if n < 2 {
            return Err(LbError::BadN(n));
        }
        PRIMES.iter().map(|&p| self.f_p(p, n)).product()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_p_examples() {
        assert_eq!(LbContext::new(&[5]).f_p(5, 3), Ok(5));
        assert_eq!(LbContext::new(&[2, 4, 4, 7]).f_p(2, 3), Ok(2));
        assert_eq!(LbContext::new(&[5, 7]).f_p(11, 9), Ok(1));
        assert_eq!(LbContext::new(&[5]).f_p(29, 3), Err(LbError::BadPrime(29)));
    }

    #[test]
    fn lb_examples() {
        assert_eq!(LbContext::new(&[3, 3]).lb(5), Ok(3));
        assert_eq!(LbContext::new(&[3, 3]).lb(2), Ok(1));
        assert_eq!(LbContext::new(&[5]).lb(7), Ok(5));
        assert_eq!(LbContext::new(&[2, 4, 4, 7]).lb(3), Ok(14));
        assert_eq!(LbContext::new(&[5]).lb(1), Err(LbError::BadN(1)));
    }

    #[test]
    fn lb_of_a_ninefold_point() {
        let c = LbContext::new(&[2, 2, 9]);
        assert_eq!(c.lb(5), Ok(18));
        assert_eq!(c.lb(3), Ok(2));
    }

    #[test]
    fn many_twos_fall_through_to_one() {
        // n₂ = 6 and N − 1 = 3 < 8: neither branch of the n₄ = 0 case applies
        let c = LbContext::new(&[2, 2, 2, 2, 2, 2, 3]);
        assert_eq!(c.f_p(2, 4), Ok(1));
        assert_eq!(c.f_p(2, 9), Ok(2));
    }
}
