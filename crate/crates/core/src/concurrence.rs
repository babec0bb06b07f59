//! Bipartition concurrences `C = sqrt(2(1 - Tr ρ²))` over the seven cuts of
//! four qubits, and the polygon/triangle inequality slacks between them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::state::{coefficient_matrix, partial_trace, purity, Bipartition, PureState4, Qubit};

/// The three two-vs-two cuts, named by the side containing qubit 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TwoTwoCut {
    #[serde(rename = "12|34")]
    C12_34,
    #[serde(rename = "13|24")]
    C13_24,
    #[serde(rename = "14|23")]
    C14_23,
}

impl TwoTwoCut {
    pub const ALL: [TwoTwoCut; 3] = [TwoTwoCut::C12_34, TwoTwoCut::C13_24, TwoTwoCut::C14_23];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn bipartition(self) -> Bipartition {
        Bipartition::CANONICAL[4 + self.index()]
    }

    /// The cut that puts `p` and `q` on the same side.
    pub fn separating(p: Qubit, q: Qubit) -> TwoTwoCut {
        let b = Bipartition::pair(p, q);
        TwoTwoCut::ALL
            .into_iter()
            .find(|c| c.bipartition() == b)
            .expect("every pair cut is one of the three canonical 2|2 cuts")
    }

    /// The qubit sharing a side with qubit 1.
    pub fn partner_of_first(self) -> Qubit {
        Qubit::ALL[self.index() + 1]
    }
}

impl fmt::Display for TwoTwoCut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TwoTwoCut::C12_34 => "12|34",
            TwoTwoCut::C13_24 => "13|24",
            TwoTwoCut::C14_23 => "14|23",
        })
    }
}

/// The four `C_i` and three `C_{ij|kl}` of a state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "ProfileJson", into = "ProfileJson")]
pub struct ConcurrenceProfile {
    pub c_one: [f64; 4],
    pub c_two: [f64; 3],
}

impl ConcurrenceProfile {
    pub fn one(&self, q: Qubit) -> f64 {
        self.c_one[q.index()]
    }

    pub fn two(&self, cut: TwoTwoCut) -> f64 {
        self.c_two[cut.index()]
    }

    /// All seven entries, one-vs-three first.
    pub fn entries(&self) -> [f64; 7] {
        let mut out = [0.0; 7];
        out[..4].copy_from_slice(&self.c_one);
        out[4..].copy_from_slice(&self.c_two);
        out
    }

    pub fn min(&self) -> f64 {
        self.entries().into_iter().fold(f64::INFINITY, f64::min)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("profile serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct ProfileJson {
    c1: f64,
    c2: f64,
    c3: f64,
    c4: f64,
    c12_34: f64,
    c13_24: f64,
    c14_23: f64,
}

impl From<ProfileJson> for ConcurrenceProfile {
    fn from(p: ProfileJson) -> Self {
        ConcurrenceProfile {
            c_one: [p.c1, p.c2, p.c3, p.c4],
            c_two: [p.c12_34, p.c13_24, p.c14_23],
        }
    }
}

impl From<ConcurrenceProfile> for ProfileJson {
    fn from(p: ConcurrenceProfile) -> Self {
        let [c1, c2, c3, c4] = p.c_one;
        let [c12_34, c13_24, c14_23] = p.c_two;
        ProfileJson {
            c1,
            c2,
            c3,
            c4,
            c12_34,
            c13_24,
            c14_23,
        }
    }
}

/// `sqrt(2(1 - Tr ρ²))` for the kept side of `cut`.
///
/// `1 - Tr ρ²` is evaluated as twice the summed squared 2×2 minors of the
/// coefficient matrix rather than by subtracting the purity from one, so that
/// locally rotated product states give concurrences at rounding level
/// (~1e-16) instead of ~1e-8.
pub fn bipartition_concurrence(state: &PureState4, cut: Bipartition) -> Result<f64> {
    let (rows, cols, m) = coefficient_matrix(state, cut)?;
    let mut sum = 0.0;
    for i in 0..rows {
        for j in i + 1..rows {
            for k in 0..cols {
                for l in k + 1..cols {
                    let minor =
                        m[i * cols + k] * m[j * cols + l] - m[i * cols + l] * m[j * cols + k];
                    sum += minor.norm_sqr();
                }
            }
        }
    }
    Ok(2.0 * sum.sqrt())
}

/// The same quantity through the reduced density matrix and its purity.
pub fn concurrence_via_purity(state: &PureState4, cut: Bipartition) -> Result<f64> {
    let rho = partial_trace(state, cut)?;
    let p = purity(&rho)?;
    Ok((2.0 * (1.0 - p)).max(0.0).sqrt())
}

pub fn concurrence_profile(state: &PureState4) -> Result<ConcurrenceProfile> {
    let mut c_one = [0.0; 4];
    for q in Qubit::ALL {
        c_one[q.index()] = bipartition_concurrence(state, Bipartition::single(q))?;
    }
    let mut c_two = [0.0; 3];
    for cut in TwoTwoCut::ALL {
        c_two[cut.index()] = bipartition_concurrence(state, cut.bipartition())?;
    }
    Ok(ConcurrenceProfile { c_one, c_two })
}

/// Signed slacks of the polygon inequality on the `C_i` and the triangle
/// inequality on the `C_{ij|kl}`. Nonnegative slacks mean the inequality holds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InequalityResiduals {
    /// `sum_{k != i} C_k - C_i`, indexed by qubit.
    pub polygon: [f64; 4],
    /// Sum of the other two 2|2 concurrences minus this one, indexed by cut.
    pub triangle: [f64; 3],
}

impl InequalityResiduals {
    pub fn min_polygon(&self) -> f64 {
        self.polygon.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn min_triangle(&self) -> f64 {
        self.triangle.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

pub fn inequality_residuals(profile: &ConcurrenceProfile) -> InequalityResiduals {
    let sum_one: f64 = profile.c_one.iter().sum();
    let sum_two: f64 = profile.c_two.iter().sum();
    InequalityResiduals {
        polygon: profile.c_one.map(|c| sum_one - 2.0 * c),
        triangle: profile.c_two.map(|c| sum_two - 2.0 * c),
    }
}
