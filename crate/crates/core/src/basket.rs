//! Reid baskets and their derived invariants.

use crate::arith::{self, Rational};
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Largest admissible point index: `r − 1/r < 24` forces `r ≤ 24`.
pub const MAX_R: u64 = 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BasketError {
    #[error("invalid orbifold point ({r},{b})")]
    InvalidPoint { r: u64, b: u64 },
    #[error("multiset {0:?} is not admissible")]
    NotAdmissible(Vec<u64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbifoldPoint {
    pub r: u64,
    pub b: u64,
}

impl OrbifoldPoint {
    pub fn new(r: u64, b: u64) -> Result<Self, BasketError> {
        if r < 2 || b == 0 || 2 * b > r || r.gcd(&b) != 1 {
            return Err(BasketError::InvalidPoint { r, b });
        }
        Ok(OrbifoldPoint { r, b })
    }
}

impl Serialize for OrbifoldPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.r, self.b].serialize(s)
    }
}

impl<'de> Deserialize<'de> for OrbifoldPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [r, b] = <[u64; 2]>::deserialize(d)?;
        OrbifoldPoint::new(r, b).map_err(serde::de::Error::custom)
    }
}

/// Canonically sorted multiset of orbifold points.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct Basket {
    points: Vec<OrbifoldPoint>,
}

impl<'de> Deserialize<'de> for Basket {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Basket::new(Vec::<OrbifoldPoint>::deserialize(d)?))
    }
}

impl Basket {
    pub fn new(mut points: Vec<OrbifoldPoint>) -> Self {
        points.sort();
        Basket { points }
    }

    pub fn from_pairs(pairs: &[(u64, u64)]) -> Result<Self, BasketError> {
        let pts = pairs.iter().map(|&(r, b)| OrbifoldPoint::new(r, b)).collect::<Result<_, _>>()?;
        Ok(Basket::new(pts))
    }

    pub fn points(&self) -> &[OrbifoldPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn indices(&self) -> Vec<u64> {
        self.points.iter().map(|p| p.r).collect()
    }

    pub fn gorenstein_index(&self) -> u64 {
        gorenstein_index_of(&self.indices())
    }

    /// Number of points with the given `(r, b)`.
    pub fn count(&self, r: u64, b: u64) -> usize {
        self.points.iter().filter(|p| p.r == r && p.b == b).count()
    }

    /// Whether `other` is a sub-multiset of this basket.
    pub fn contains(&self, other: &Basket) -> bool {
        let mut rest = self.points.clone();
        for p in &other.points {
            match rest.iter().position(|q| q == p) {
                Some(i) => {
                    rest.remove(i);
                }
                None => return false,
            }
        }
        true
    }
}

impl fmt::Display for Basket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.points.len() {
            let p = self.points[i];
            let k = self.points[i..].iter().take_while(|&&q| q == p).count();
            if k > 1 {
                parts.push(format!("{}x({},{})", k, p.r, p.b));
            } else {
                parts.push(format!("({},{})", p.r, p.b));
            }
            i += k;
        }
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub fn gorenstein_index_of(rs: &[u64]) -> u64 {
    rs.iter().fold(1, |acc, &r| acc.lcm(&r))
}

/// `Σ (r − 1/r)`.
pub fn weight(rs: &[u64]) -> Rational {
    rs.iter().map(|&r| arith::rat((r * r - 1) as i64, r as i64)).sum()
}

pub fn is_admissible(rs: &[u64]) -> bool {
    rs.iter().all(|&r| (2..=MAX_R).contains(&r)) && weight(rs) < arith::int(24)
}

/// `r_X · (24 − Σ(r − 1/r))`.
pub fn rx_c2c1(rs: &[u64]) -> Result<Rational, BasketError> {
    if !is_admissible(rs) {
        return Err(BasketError::NotAdmissible(rs.to_vec()));
    }
    let rx = gorenstein_index_of(rs);
    Ok(arith::int(rx as i64) * (arith::int(24) - weight(rs)))
}

/// Integer form of [`rx_c2c1`]; each `r` divides `r_X`.
pub fn rx_c2c1_int(rs: &[u64]) -> Result<u64, BasketError> {
    if !is_admissible(rs) {
        return Err(BasketError::NotAdmissible(rs.to_vec()));
    }
    let rx = gorenstein_index_of(rs);
    let sub: u64 = rs.iter().map(|&r| (r * r - 1) * (rx / r)).sum();
    Ok(24 * rx - sub)
}

/// Count of `r ∈ R` with `ν_p(r) = e`.
pub fn n_count(rs: &[u64], p: u64, e: u32) -> usize {
    rs.iter().filter(|&&r| arith::nu(r, p) == e).count()
}

/// Every admissible multiset, sorted ascending within and lexicographically across.
pub fn enumerate_r() -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    // weights scaled by lcm(2..=24) keep the recursion in integers
    let l = (2..=MAX_R).fold(1u64, |a, r| a.lcm(&r));
    let w = |r: u64| (r * r - 1) * (l / r);
    fn rec(start: u64, cur: &mut Vec<u64>, s: u64, cap: u64, w: &dyn Fn(u64) -> u64, out: &mut Vec<Vec<u64>>) {
        out.push(cur.clone());
        for r in start..=MAX_R {
            let t = s + w(r);
            if t < cap {
                cur.push(r);
                rec(r, cur, t, cap, w, out);
                cur.pop();
            }
        }
    }
    rec(2, &mut cur, 0, 24 * l, &w, &mut out);
    out.sort();
    out
}

/// Units `b` with `0 < b ≤ r/2` and `gcd(b, r) = 1`.
pub fn half_units(r: u64) -> Vec<u64> {
    (1..=r / 2).filter(|&b| b.gcd(&r) == 1).collect()
}

/// All baskets over `R`, each multiset once, in canonical order.
pub fn enumerate_baskets(rs: &[u64]) -> Vec<Basket> {
    let mut distinct: Vec<(u64, usize)> = Vec::new();
    let mut sorted = rs.to_vec();
    sorted.sort();
    for r in sorted {
        match distinct.last_mut() {
            Some((q, k)) if *q == r => *k += 1,
            _ => distinct.push((r, 1)),
        }
    }
    let mut acc: Vec<Vec<OrbifoldPoint>> = vec![Vec::new()];
    for (r, k) in distinct {
        let units = half_units(r);
        let choices = multichoose(&units, k);
        let mut next = Vec::with_capacity(acc.len() * choices.len());
        for a in &acc {
            for c in &choices {
                let mut v = a.clone();
                v.extend(c.iter().map(|&b| OrbifoldPoint { r, b }));
                next.push(v);
            }
        }
        acc = next;
    }
    let mut out: Vec<Basket> = acc.into_iter().map(Basket::new).collect();
    out.sort();
    out
}

fn multichoose(items: &[u64], k: usize) -> Vec<Vec<u64>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in multichoose(&items[i..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// `Σ b(r − b)/(2r)` over the basket.
pub fn basket_sigma(b: &Basket) -> Rational {
    b.points()
        .iter()
        .map(|p| arith::rat((p.b * (p.r - p.b)) as i64, 2 * p.r as i64))
        .sum()
}

/// Integrality of `½c₁³ + 3 − Σ b(r−b)/(2r)`.
pub fn rr_fano_integral(b: &Basket, c1cubed: &Rational) -> bool {
    let v = c1cubed / arith::int(2) + arith::int(3) - basket_sigma(b);
    v.is_integer()
}

/// `S_B = Σ b(r−b)·(r_X/r)`; integrality above is `c13 ≡ S_B − 6r_X (mod 2r_X)`.
pub fn rr_fano_residue(b: &Basket, rx: u64) -> u64 {
    let s: u64 = b.points().iter().map(|p| p.b * (p.r - p.b) * (rx / p.r)).sum();
    let m = 2 * rx;
    ((s % m) + m - (6 * rx) % m) % m
}
