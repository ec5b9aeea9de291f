//! Weighted projective 3-spaces as a monomial-counting oracle.

use crate::arith::{self, rat, Rational};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WpsError {
    #[error("weights must be positive")]
    NonPositive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightedP3 {
    pub weights: [u64; 4],
}

impl WeightedP3 {
    pub fn new(weights: [u64; 4]) -> Result<Self, WpsError> {
        if weights.contains(&0) {
            return Err(WpsError::NonPositive);
        }
        Ok(WeightedP3 { weights })
    }

    /// gcd of every three weights is 1.
    pub fn is_well_formed(&self) -> bool {
        let w = self.weights;
        (0..4).all(|skip| {
            let g = (0..4).filter(|&i| i != skip).fold(0, |g, i| arith::gcd(g, w[i]));
            g == 1
        })
    }

    /// Number of monomials of weighted degree `s`.
    pub fn h0(&self, s: u64) -> u64 {
        self.h0_table(s)[s as usize]
    }

    /// `h0(t)` for every `0 ≤ t ≤ smax`.
    pub fn h0_table(&self, smax: u64) -> Vec<u64> {
        let n = smax as usize;
        let mut dp = vec![0u64; n + 1];
        dp[0] = 1;
        for &w in &self.weights {
            let w = w as usize;
            for t in w..=n {
                dp[t] += dp[t - w];
            }
        }
        dp
    }

    pub fn anticanonical_degree(&self) -> u64 {
        self.weights.iter().sum()
    }

    /// `(Σw)³ / Πw`.
    pub fn anticanonical_volume(&self) -> Rational {
        let s = self.anticanonical_degree() as i64;
        let p: i64 = self.weights.iter().map(|&w| w as i64).product();
        rat(s * s * s, p)
    }
}

impl std::str::FromStr for WeightedP3 {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let v: Vec<u64> = s
            .split(',')
            .map(|x| x.trim().parse::<u64>().map_err(|e| format!("bad weight {x:?}: {e}")))
            .collect::<Result<_, _>>()?;
        let w: [u64; 4] = v.try_into().map_err(|v: Vec<u64>| format!("expected 4 weights, got {}", v.len()))?;
        WeightedP3::new(w).map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h0_examples() {
        let p = WeightedP3::new([5, 6, 22, 33]).unwrap();
        assert_eq!(p.h0(22), 2);
        assert_eq!(p.h0(0), 1);
        assert_eq!(p.h0(1), 0);
        assert!(p.is_well_formed());
    }

    #[test]
    fn degrees_and_volumes() {
        assert_eq!(WeightedP3::new([5, 6, 22, 33]).unwrap().anticanonical_degree(), 66);
        assert_eq!(WeightedP3::new([3, 5, 11, 19]).unwrap().anticanonical_degree(), 38);
        assert_eq!(WeightedP3::new([5, 8, 9, 11]).unwrap().anticanonical_degree(), 33);
        assert_eq!(WeightedP3::new([5, 6, 22, 33]).unwrap().anticanonical_volume(), rat(66, 5));
        assert_eq!(WeightedP3::new([1, 1, 1, 1]).unwrap().anticanonical_volume(), rat(64, 1));
        assert_eq!(WeightedP3::new([1, 1, 1, 2]).unwrap().anticanonical_volume(), rat(125, 2));
    }

    #[test]
    fn parsing() {
        assert_eq!("5,6,22,33".parse::<WeightedP3>().unwrap().weights, [5, 6, 22, 33]);
        assert!("5,6,22".parse::<WeightedP3>().is_err());
        assert!("5,0,22,1".parse::<WeightedP3>().is_err());
        assert!(!WeightedP3::new([2, 4, 6, 1]).unwrap().is_well_formed());
    }
}
