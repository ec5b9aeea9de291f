//! The 36 candidates with their proof groups.

use crate::basket::Basket;
use crate::search::Candidate;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Group {
    A,
    B,
    #[serde(rename = "C-")]
    CMinus,
    #[serde(rename = "C+")]
    CPlus,
}

impl std::fmt::Display for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Group::A => "A",
            Group::B => "B",
            Group::CMinus => "C-",
            Group::CPlus => "C+",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaseData {
    pub id: u32,
    pub basket: &'static [(u64, u64)],
    pub q: u64,
    pub j_a: u64,
    pub rxc13: u64,
    pub group: Group,
}

use Group::*;

pub const CASES: [CaseData; 36] = [
    CaseData { id: 1, basket: &[(5, 1)], q: 84, j_a: 84, rxc13: 84, group: A },
    CaseData { id: 2, basket: &[(3, 1), (3, 1)], q: 70, j_a: 70, rxc13: 70, group: A },
    CaseData { id: 3, basket: &[(3, 1), (11, 3)], q: 70, j_a: 10, rxc13: 490, group: CPlus },
    CaseData { id: 4, basket: &[(3, 1), (11, 5)], q: 80, j_a: 10, rxc13: 640, group: CMinus },
    CaseData { id: 5, basket: &[(5, 1), (7, 2)], q: 72, j_a: 18, rxc13: 288, group: A },
    CaseData { id: 6, basket: &[(5, 1), (11, 1)], q: 72, j_a: 6, rxc13: 864, group: CPlus },
    CaseData { id: 7, basket: &[(5, 1), (11, 2)], q: 78, j_a: 6, rxc13: 1014, group: CMinus },
    CaseData { id: 8, basket: &[(5, 2), (11, 3)], q: 84, j_a: 6, rxc13: 1176, group: CMinus },
    CaseData { id: 9, basket: &[(2, 1), (2, 1), (3, 1)], q: 70, j_a: 70, rxc13: 70, group: A },
    CaseData { id: 10, basket: &[(2, 1), (2, 1), (9, 4)], q: 70, j_a: 10, rxc13: 490, group: B },
    CaseData { id: 11, basket: &[(2, 1), (5, 2), (11, 5)], q: 69, j_a: 3, rxc13: 1587, group: CPlus },
    CaseData { id: 12, basket: &[(3, 1), (5, 1), (11, 1)], q: 82, j_a: 2, rxc13: 3362, group: CMinus },
    CaseData { id: 13, basket: &[(3, 1), (5, 1), (11, 4)], q: 68, j_a: 2, rxc13: 2312, group: CPlus },
    CaseData { id: 14, basket: &[(3, 1), (5, 2), (11, 2)], q: 76, j_a: 2, rxc13: 2888, group: CMinus },
    CaseData { id: 15, basket: &[(3, 1), (5, 2), (11, 5)], q: 74, j_a: 2, rxc13: 2738, group: CMinus },
    CaseData { id: 16, basket: &[(3, 1), (6, 1), (7, 2)], q: 75, j_a: 15, rxc13: 375, group: A },
    CaseData { id: 17, basket: &[(4, 1), (5, 1), (5, 2)], q: 75, j_a: 15, rxc13: 375, group: A },
    CaseData { id: 18, basket: &[(5, 1), (5, 2), (7, 3)], q: 90, j_a: 30, rxc13: 270, group: A },
    CaseData { id: 19, basket: &[(2, 1), (2, 1), (3, 1), (5, 2)], q: 98, j_a: 14, rxc13: 686, group: A },
    CaseData { id: 20, basket: &[(2, 1), (3, 1), (5, 1), (6, 1)], q: 72, j_a: 6, rxc13: 864, group: B },
    CaseData { id: 21, basket: &[(2, 1), (3, 1), (5, 1), (11, 2)], q: 67, j_a: 1, rxc13: 4489, group: CPlus },
    CaseData { id: 22, basket: &[(2, 1), (3, 1), (5, 2), (11, 1)], q: 71, j_a: 1, rxc13: 5041, group: CPlus },
    CaseData { id: 23, basket: &[(2, 1), (4, 1), (4, 1), (7, 2)], q: 72, j_a: 12, rxc13: 432, group: B },
    CaseData { id: 24, basket: &[(3, 1), (3, 1), (3, 1), (5, 1)], q: 72, j_a: 12, rxc13: 432, group: B },
    CaseData { id: 25, basket: &[(3, 1), (3, 1), (3, 1), (5, 2)], q: 84, j_a: 42, rxc13: 168, group: A },
    CaseData { id: 26, basket: &[(3, 1), (3, 1), (3, 1), (7, 1)], q: 90, j_a: 30, rxc13: 270, group: A },
    CaseData { id: 27, basket: &[(3, 1), (5, 2), (6, 1), (7, 1)], q: 69, j_a: 3, rxc13: 1587, group: B },
    CaseData { id: 28, basket: &[(3, 1), (5, 2), (6, 1), (7, 3)], q: 81, j_a: 3, rxc13: 2187, group: A },
    CaseData { id: 29, basket: &[(2, 1), (2, 1), (2, 1), (2, 1), (5, 1)], q: 84, j_a: 42, rxc13: 168, group: A },
    CaseData { id: 30, basket: &[(2, 1), (2, 1), (2, 1), (2, 1), (7, 1)], q: 72, j_a: 12, rxc13: 432, group: A },
    CaseData { id: 31, basket: &[(2, 1), (2, 1), (2, 1), (2, 1), (7, 1)], q: 80, j_a: 20, rxc13: 320, group: A },
    CaseData { id: 32, basket: &[(3, 1), (3, 1), (3, 1), (5, 1), (7, 1)], q: 78, j_a: 6, rxc13: 1014, group: B },
    CaseData { id: 33, basket: &[(3, 1), (3, 1), (3, 1), (5, 1), (7, 2)], q: 72, j_a: 6, rxc13: 864, group: B },
    CaseData { id: 34, basket: &[(3, 1), (3, 1), (3, 1), (5, 1), (7, 2)], q: 72, j_a: 12, rxc13: 864, group: A },
    CaseData { id: 35, basket: &[(2, 1), (2, 1), (2, 1), (2, 1), (5, 1), (7, 3)], q: 68, j_a: 4, rxc13: 1156, group: B },
    CaseData { id: 36, basket: &[(2, 1), (2, 1), (2, 1), (2, 1), (2, 1), (2, 1), (3, 1)], q: 70, j_a: 70, rxc13: 70, group: B },
];

pub fn case(id: u32) -> Option<&'static CaseData> {
    CASES.iter().find(|c| c.id == id)
}

pub fn ids(group: Group) -> Vec<u32> {
    CASES.iter().filter(|c| c.group == group).map(|c| c.id).collect()
}

impl CaseData {
    pub fn basket(&self) -> Basket {
        Basket::from_pairs(self.basket).expect("valid table basket")
    }

    pub fn candidate(&self) -> Candidate {
        Candidate::from_data(self.basket(), self.q, self.j_a, self.rxc13).expect("valid table row")
    }
}

/// Case id of a candidate keyed by `(basket, q, J_A, r_Xc₁³)`.
pub fn identify(c: &Candidate) -> Option<u32> {
    CASES
        .iter()
        .find(|d| d.q == c.q && d.j_a == c.j_a && d.rxc13 == c.rxc13 && d.basket() == c.basket)
        .map(|d| d.id)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_partition_the_table() {
        assert_eq!(ids(Group::A).len(), 15);
        assert_eq!(ids(Group::B).len(), 9);
        assert_eq!(ids(Group::CMinus).len(), 6);
        assert_eq!(ids(Group::CPlus).len(), 6);
        for c in &CASES {
            c.candidate().verify().unwrap();
            assert_eq!(identify(&c.candidate()), Some(c.id));
        }
    }
}
