//! Du Val (ADE) lattice data: Cartan matrices, class groups and the
//! integral-multiplicity test.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DuValType {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DuValError {
    #[error("invalid Du Val type {0}")]
    Invalid(String),
    #[error("pairing vector has length {got}, expected {expected}")]
    Length { got: usize, expected: usize },
}

/// Pairing vector of a Weil divisor with the exceptional curves.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeilClass {
    pub pairing: Vec<i64>,
}

impl WeilClass {
    pub fn new(pairing: Vec<i64>) -> Self {
        WeilClass { pairing }
    }
}

impl DuValType {
    pub fn validate(self) -> Result<Self, DuValError> {
        match self {
            DuValType::A(n) if n >= 1 => Ok(self),
            DuValType::D(m) if m >= 4 => Ok(self),
            DuValType::E6 | DuValType::E7 | DuValType::E8 => Ok(self),
            _ => Err(DuValError::Invalid(self.to_string())),
        }
    }

    pub fn rank(self) -> usize {
        match self {
            DuValType::A(n) => n,
            DuValType::D(m) => m,
            DuValType::E6 => 6,
            DuValType::E7 => 7,
            DuValType::E8 => 8,
        }
    }

    /// `(e, e', g, j)`. `g` is tabulated, not derived.
    pub fn invariants(self) -> (u64, u64, u64, u64) {
        match self {
            DuValType::A(n) => {
                let n = n as u64 + 1;
                (n, n, n, n)
            }
            DuValType::D(m) => {
                let m = m as u64;
                (m + 1, m, 4 * m - 8, 4)
            }
            DuValType::E6 => (7, 6, 24, 3),
            DuValType::E7 => (8, 7, 48, 2),
            DuValType::E8 => (9, 8, 120, 1),
        }
    }

    fn edges(self) -> Vec<(usize, usize)> {
        match self {
            DuValType::A(n) => (1..n).map(|i| (i - 1, i)).collect(),
            DuValType::D(m) => {
                let mut e: Vec<_> = (1..m - 1).map(|i| (i - 1, i)).collect();
                e.push((m - 3, m - 1));
                e
            }
            // Bourbaki labels 1..=k, shifted to 0-based: 1-3, 3-4, 4-5, 5-6, 6-7, 7-8, 2-4.
            DuValType::E6 | DuValType::E7 | DuValType::E8 => {
                let k = self.rank();
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((2..k - 1).map(|i| (i, i + 1)));
                e
            }
        }
    }

    pub fn cartan_matrix(self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut m = vec![vec![0i64; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = -2;
        }
        for (a, b) in self.edges() {
            m[a][b] = 1;
            m[b][a] = 1;
        }
        m
    }

    /// Invariant factors of the Cartan cokernel, dropping the trivial ones.
    pub fn class_group(self) -> Vec<u64> {
        smith(&self.cartan_matrix())
            .diag
            .into_iter()
            .filter(|&d| d != 1)
            .collect()
    }

    pub fn class_group_order(self) -> u64 {
        self.class_group().iter().product()
    }

    /// One representative pairing vector per class, found by walking unit vectors.
    pub fn classes(self) -> Vec<WeilClass> {
        let snf = smith(&self.cartan_matrix());
        let n = self.rank();
        let key = |x: &[i64]| snf.class_key(x);
        let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
        let zero = vec![0i64; n];
        seen.insert(key(&zero), zero.clone());
        let mut queue = VecDeque::from([zero]);
        while let Some(x) = queue.pop_front() {
            for i in 0..n {
                let mut y = x.clone();
                y[i] += 1;
                let k = key(&y);
                if !seen.contains_key(&k) {
                    seen.insert(k, y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut out: Vec<_> = seen.into_values().map(WeilClass::new).collect();
        out.sort_by(|a, b| {
            let sa: i64 = a.pairing.iter().sum();
            let sb: i64 = b.pairing.iter().sum();
            sa.cmp(&sb).then_with(|| a.pairing.cmp(&b.pairing))
        });
        out
    }

    pub fn is_trivial_class(self, c: &WeilClass) -> Result<bool, DuValError> {
        self.check_len(c)?;
        let snf = smith(&self.cartan_matrix());
        Ok(snf.class_key(&c.pairing).iter().all(|&v| v == 0))
    }

    /// Multiplicities `a` with `π*D = D' + Σ aᵢEᵢ`, i.e. `C·a = −x`.
    pub fn multiplicities(self, c: &WeilClass) -> Result<Vec<Ratio<i128>>, DuValError> {
        self.check_len(c)?;
        let m = self.cartan_matrix();
        let rhs: Vec<Ratio<i128>> = c.pairing.iter().map(|&v| Ratio::from(-(v as i128))).collect();
        Ok(solve(&m, rhs))
    }

    pub fn has_integral_multiplicity(self, c: &WeilClass) -> Result<bool, DuValError> {
        Ok(self.multiplicities(c)?.iter().any(|a| a.is_integer()))
    }

    fn check_len(self, c: &WeilClass) -> Result<(), DuValError> {
        if c.pairing.len() != self.rank() {
            return Err(DuValError::Length { got: c.pairing.len(), expected: self.rank() });
        }
        Ok(())
    }
}

impl fmt::Display for DuValType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DuValType::A(n) => write!(f, "A{n}"),
            DuValType::D(m) => write!(f, "D{m}"),
            DuValType::E6 => write!(f, "E6"),
            DuValType::E7 => write!(f, "E7"),
            DuValType::E8 => write!(f, "E8"),
        }
    }
}

impl FromStr for DuValType {
    type Err = DuValError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DuValError::Invalid(s.to_string());
        let s = s.trim();
        let (head, tail) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let n: usize = tail.trim_start_matches('_').parse().map_err(|_| bad())?;
        let t = match (head.to_ascii_uppercase().as_str(), n) {
            ("A", n) => DuValType::A(n),
            ("D", n) => DuValType::D(n),
            ("E", 6) => DuValType::E6,
            ("E", 7) => DuValType::E7,
            ("E", 8) => DuValType::E8,
            _ => return Err(bad()),
        };
        t.validate().map_err(|_| bad())
    }
}

/// `U·M·V = diag(d)` with only `U` kept; enough to read off class keys.
struct Smith {
    u: Vec<Vec<i128>>,
    diag: Vec<u64>,
}

impl Smith {
    fn class_key(&self, x: &[i64]) -> Vec<i64> {
        self.u
            .iter()
            .zip(&self.diag)
            .map(|(row, &d)| {
                let v: i128 = row.iter().zip(x).map(|(a, &b)| a * b as i128).sum();
                if d == 0 { v as i64 } else { v.rem_euclid(d as i128) as i64 }
            })
            .collect()
    }
}

fn smith(m: &[Vec<i64>]) -> Smith {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let mut u: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect();
    for t in 0..n {
        loop {
            // pivot: smallest nonzero |entry| in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap(t, pi);
            u.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..n {
                let f = a[i][t].div_euclid(p);
                if f != 0 {
                    for j in t..n {
                        a[i][j] -= f * a[t][j];
                    }
                    for j in 0..n {
                        u[i][j] -= f * u[t][j];
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..n {
                let f = a[t][j].div_euclid(p);
                if f != 0 {
                    for row in a.iter_mut() {
                        row[j] -= f * row[t];
                    }
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // divisibility condition on the trailing block
            let bad = (t + 1..n).flat_map(|i| (t + 1..n).map(move |j| (i, j))).find(|&(i, j)| a[i][j] % p != 0);
            match bad {
                Some((i, _)) => {
                    for j in t..n {
                        a[t][j] += a[i][j];
                    }
                    for j in 0..n {
                        u[t][j] += u[i][j];
                    }
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for j in t..n {
                a[t][j] = -a[t][j];
            }
            for j in 0..n {
                u[t][j] = -u[t][j];
            }
        }
    }
    let diag = (0..n).map(|i| a[i][i].unsigned_abs() as u64).collect();
    Smith { u, diag }
}

fn solve(m: &[Vec<i64>], rhs: Vec<Ratio<i128>>) -> Vec<Ratio<i128>> {
    let n = m.len();
    let mut a: Vec<Vec<Ratio<i128>>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r: Vec<_> = row.iter().map(|&v| Ratio::from(v as i128)).collect();
            r.push(b);
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| a[r][c] != Ratio::from(0)).expect("Cartan matrix is nondegenerate");
        a.swap(c, p);
        let piv = a[c][c];
        for v in a[c].iter_mut() {
            *v /= piv;
        }
        for r in 0..n {
            if r != c && a[r][c] != Ratio::from(0) {
                let f = a[r][c];
                for k in c..=n {
                    let d = f * a[c][k];
                    a[r][k] -= d;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n]).collect()
}

pub fn determinant(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    let mut a: Vec<Vec<Ratio<i128>>> = m.iter().map(|r| r.iter().map(|&v| Ratio::from(v as i128)).collect()).collect();
    let mut det = Ratio::from(1i128);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| a[r][c] != Ratio::from(0)) else { return 0 };
        if p != c {
            a.swap(c, p);
            det = -det;
        }
        det *= a[c][c];
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                let d = f * a[c][k];
                a[r][k] -= d;
            }
        }
    }
    det.to_integer()
}
