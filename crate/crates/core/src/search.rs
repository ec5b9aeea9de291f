//! The three-step candidate search over `(R_X, q, J_A, r_Xc₁³)` and baskets.

use crate::arith::{self, int, rat, Rational};
use crate::basket::{self, Basket, BasketError};
use crate::lb::{LbContext, LbError};
use crate::rr;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `q > q_min`.
    Greater,
    /// `q = q_min`.
    Equal,
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "greater" => Ok(Mode::Greater),
            "equal" => Ok(Mode::Equal),
            _ => Err(format!("unknown mode {s:?}; expected greater or equal")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub q_min: u64,
    pub mode: Mode,
    pub workers: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { q_min: 66, mode: Mode::Greater, workers: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("q_min must be at least 6, got {0}")]
    QMinTooSmall(u64),
    #[error("worker count must be positive")]
    NoWorkers,
    #[error("thread pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Basket(#[from] BasketError),
    #[error(transparent)]
    Lb(#[from] LbError),
    #[error("invalid candidate: {0}")]
    Invalid(String),
}

/// A Step-2 tuple before the ∇ test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Precursor {
    pub basket: Basket,
    pub q: u64,
    pub j_a: u64,
    pub rxc13: u64,
    pub rxc2c1: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub basket: Basket,
    pub q: u64,
    pub j_a: u64,
    pub r_x: u64,
    pub rxc13: u64,
    pub rxc2c1: u64,
    pub prime_powers: Vec<u64>,
    pub lb_values: Vec<u64>,
    #[serde(with = "arith::serde_rational")]
    pub nabla: Rational,
    pub nabla_display: String,
}

impl Candidate {
    /// Attaches derived columns without filtering.
    pub fn from_data(basket: Basket, q: u64, j_a: u64, rxc13: u64) -> Result<Self, SearchError> {
        if q == 0 || j_a == 0 {
            return Err(SearchError::Invalid("q and J_A must be positive".into()));
        }
        let rs = basket.indices();
        let rxc2c1 = basket::rx_c2c1_int(&rs)?;
        let ctx = LbContext::new(&rs);
        let prime_powers = if j_a > 1 { arith::prime_power_parts(j_a) } else { vec![] };
        let lb_values = prime_powers.iter().map(|&n| ctx.lb(n)).collect::<Result<_, _>>()?;
        let nabla = rr::nabla(q, rxc13, rxc2c1);
        Ok(Candidate {
            r_x: basket.gorenstein_index(),
            nabla_display: rr::display_hundredths(&nabla),
            basket,
            q,
            j_a,
            rxc13,
            rxc2c1,
            prime_powers,
            lb_values,
            nabla,
        })
    }

    /// `Σ (p^a − 1/p^a)·LB(p^a)`.
    pub fn curve_budget(&self) -> Rational {
        self.prime_powers
            .iter()
            .zip(&self.lb_values)
            .map(|(&n, &l)| rat((n * n - 1) as i64, n as i64) * int(l as i64))
            .sum()
    }

    /// Re-checks every defining condition independently of the search loops.
    pub fn verify(&self) -> Result<(), String> {
        let rs = self.basket.indices();
        if !basket::is_admissible(&rs) {
            return Err("basket indices not admissible".into());
        }
        let rx = basket::gorenstein_index_of(&rs);
        if rx != self.r_x {
            return Err(format!("r_X is {rx}, not {}", self.r_x));
        }
        if basket::rx_c2c1(&rs).map_err(|e| e.to_string())? != int(self.rxc2c1 as i64) {
            return Err("r_Xc2c1 mismatch".into());
        }
        if self.q % self.j_a != 0 {
            return Err("J_A does not divide q".into());
        }
        if (self.j_a as u128 * self.rxc13 as u128) % (self.q as u128 * self.q as u128) != 0 {
            return Err("q² does not divide J_A·r_Xc1³".into());
        }
        let c13 = rat(self.rxc13 as i64, rx as i64);
        if !basket::rr_fano_integral(&self.basket, &c13) {
            return Err("Riemann–Roch integrality fails".into());
        }
        if self.q > self.rxc13 {
            return Err("q exceeds r_Xc1³".into());
        }
        let q = self.q as i64;
        if rat(q * q + 2 * q - 4, 4 * q * q) * int(self.rxc13 as i64) > int(self.rxc2c1 as i64) {
            return Err("Kawamata–Miyaoka inequality fails".into());
        }
        if self.nabla != rr::nabla(self.q, self.rxc13, self.rxc2c1) {
            return Err("∇ mismatch".into());
        }
        let expect = if self.j_a > 1 { arith::prime_power_parts(self.j_a) } else { vec![] };
        if expect != self.prime_powers {
            return Err("prime powers do not factor J_A".into());
        }
        if self.nabla < self.curve_budget() {
            return Err("∇ below the crepant-curve bound".into());
        }
        Ok(())
    }

    fn key(&self) -> (&Basket, u64, u64) {
        (&self.basket, self.q, self.j_a)
    }
}

/// Admissible `R_X` with `4·r_Xc₂c₁ > q_min`.
pub fn step1(q_min: u64) -> Vec<(Vec<u64>, u64)> {
    basket::enumerate_r()
        .into_iter()
        .filter_map(|r| {
            let c = basket::rx_c2c1_int(&r).ok()?;
            (4 * c > q_min).then_some((r, c))
        })
        .collect()
}

// (q, J_A, r_Xc₁³) triples passing the divisibility and Kawamata–Miyaoka filters.
fn numeric_triples(rxc2c1: u64, q_min: u64, mode: Mode) -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    // q ≤ r_Xc₁³ ≤ 4q²·c/(q²+2q−4) forces q·(q²+2q−4) ≤ 4q²c, so q < 4c
    let qs: Vec<u64> = match mode {
        Mode::Greater => ((q_min + 1)..=4 * rxc2c1).collect(),
        Mode::Equal => vec![q_min],
    };
    for q in qs {
        let d = q * q + 2 * q - 4;
        let top = 4 * q * q * rxc2c1;
        if q * d > top {
            continue;
        }
        for j in arith::divisors(q) {
            // q² | J·r_Xc₁³ with J | q means r_Xc₁³ = m·q²/J
            let step = q * q / j;
            let m_min = q.div_ceil(step).max(1);
            let m_max = top / (d * step);
            for m in m_min..=m_max {
                out.push((q, j, m * step));
            }
        }
    }
    out
}

/// Step 2: all `(basket, q, J_A, r_Xc₁³)` meeting the divisibility, integrality and KM filters.
pub fn step2(r: &[u64], rxc2c1: u64, q_min: u64, mode: Mode) -> Vec<Precursor> {
    let rx = basket::gorenstein_index_of(r);
    let baskets = basket::enumerate_baskets(r);
    let residues: Vec<u64> = baskets.iter().map(|b| basket::rr_fano_residue(b, rx)).collect();
    let mut out = Vec::new();
    for (q, j_a, rxc13) in numeric_triples(rxc2c1, q_min, mode) {
        for (b, &res) in baskets.iter().zip(&residues) {
            if rxc13 % (2 * rx) == res {
                out.push(Precursor { basket: b.clone(), q, j_a, rxc13, rxc2c1 });
            }
        }
    }
    out
}

/// Step 3: attach LB data and keep the precursor iff ∇ covers the crepant-curve bound.
pub fn step3(p: &Precursor) -> Option<Candidate> {
    let c = Candidate::from_data(p.basket.clone(), p.q, p.j_a, p.rxc13).ok()?;
    (c.nabla >= c.curve_budget()).then_some(c)
}

// Steps 2 and 3 fused for one R: the ∇ test runs before baskets are expanded.
fn search_r(r: &[u64], rxc2c1: u64, q_min: u64, mode: Mode) -> Result<Vec<Candidate>, SearchError> {
    let rx = basket::gorenstein_index_of(r);
    let ctx = LbContext::new(r);
    let mut baskets: Option<Vec<(Basket, u64)>> = None;
    let mut out = Vec::new();
    for (q, j_a, rxc13) in numeric_triples(rxc2c1, q_min, mode) {
        let nabla = rr::nabla(q, rxc13, rxc2c1);
        let pp = if j_a > 1 { arith::prime_power_parts(j_a) } else { vec![] };
        let mut budget = Rational::from_integer(0.into());
        let mut lbs = Vec::with_capacity(pp.len());
        for &n in &pp {
            let l = ctx.lb(n)?;
            budget += rat((n * n - 1) as i64, n as i64) * int(l as i64);
            lbs.push(l);
        }
        if nabla < budget {
            continue;
        }
        let bs = baskets.get_or_insert_with(|| {
            basket::enumerate_baskets(r).into_iter().map(|b| {
                let res = basket::rr_fano_residue(&b, rx);
                (b, res)
            }).collect()
        });
        for (b, res) in bs.iter() {
            if rxc13 % (2 * rx) == *res {
                out.push(Candidate {
                    basket: b.clone(),
                    q,
                    j_a,
                    r_x: rx,
                    rxc13,
                    rxc2c1,
                    prime_powers: pp.clone(),
                    lb_values: lbs.clone(),
                    nabla_display: rr::display_hundredths(&nabla),
                    nabla: nabla.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// The full search, partitioned over Step-1 outputs and canonically sorted.
pub fn run_search(cfg: &SearchConfig) -> Result<Vec<Candidate>, SearchError> {
    if cfg.q_min < 6 {
        return Err(SearchError::QMinTooSmall(cfg.q_min));
    }
    if cfg.workers == 0 {
        return Err(SearchError::NoWorkers);
    }
    let units = step1(cfg.q_min);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| SearchError::Pool(e.to_string()))?;
    let parts: Vec<Vec<Candidate>> = pool.install(|| {
        units
            .par_iter()
            .map(|(r, c)| search_r(r, *c, cfg.q_min, cfg.mode))
            .collect::<Result<_, _>>()
    })?;
    let mut all: Vec<Candidate> = parts.into_iter().flatten().collect();
    all.sort_by(|a, b| a.key().cmp(&b.key()));
    all.dedup_by(|a, b| a.key() == b.key());
    Ok(all)
}
