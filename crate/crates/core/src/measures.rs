//! Genuine-entanglement measures: the tetrahedron volume, the minimum
//! bipartition concurrence (GMC), and a separability classifier.

use serde::{Deserialize, Serialize};

use crate::concurrence::{
    concurrence_profile, inequality_residuals, ConcurrenceProfile, TwoTwoCut,
};
use crate::error::{Error, Result};
use crate::state::{partial_trace, Bipartition, ComplexAmp, PureState4, Qubit};
use crate::tetra::{build_edges, tetra_report, TetraEdges, TetraReport, TetraStatus, EPS_ZERO};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub profile: ConcurrenceProfile,
    pub edges: TetraEdges,
    pub tetra: TetraReport,
    pub gmc: f64,
    pub label: ClassLabel,
}

impl MeasureReport {
    /// Tetrahedron volume; `None` only if the edge set was unrealizable.
    pub fn volume(&self) -> Option<f64> {
        self.tetra.volume
    }

    pub fn is_finding(&self) -> bool {
        self.tetra.status == TetraStatus::Infeasible
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Profile, tetrahedron and classification of a state at the default thresholds.
pub fn v1234(state: &PureState4) -> Result<MeasureReport> {
    let profile = concurrence_profile(state)?;
    let edges = build_edges(&profile);
    let tetra = tetra_report(&edges, EPS_ZERO);
    let label = classify_profile(state, &profile, EPS_ZERO)?;
    Ok(MeasureReport {
        gmc: profile.min(),
        profile,
        edges,
        tetra,
        label,
    })
}

pub fn gmc(state: &PureState4) -> Result<f64> {
    Ok(concurrence_profile(state)?.min())
}

/// Entanglement class of the three qubits left after a single qubit factors out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ResidualClass {
    Ghz,
    W,
}

/// What triggered a biseparability decision.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Witness {
    ZeroConcurrence(f64),
    TriangleSlack(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class")]
pub enum ClassLabel {
    GenuineME {
        min_concurrence: f64,
    },
    OneVsThreeProduct {
        qubit: Qubit,
        concurrence: f64,
        residual: ResidualClass,
        three_tangle: f64,
    },
    TwoTwoBiseparable {
        cut: TwoTwoCut,
        witness: Witness,
    },
    TwoEprPairs {
        cut: TwoTwoCut,
        concurrence: f64,
    },
    FullySeparable {
        max_concurrence: f64,
    },
}

impl ClassLabel {
    pub fn is_genuine(&self) -> bool {
        matches!(self, ClassLabel::GenuineME { .. })
    }
}

pub fn classify(state: &PureState4, eps: f64) -> Result<ClassLabel> {
    let profile = concurrence_profile(state)?;
    classify_profile(state, &profile, eps)
}

fn classify_profile(
    state: &PureState4,
    profile: &ConcurrenceProfile,
    eps: f64,
) -> Result<ClassLabel> {
    if !(eps > 0.0 && eps <= 1e-3) {
        return Err(Error::EpsOutOfRange(eps));
    }
    let entries = profile.entries();
    if entries.iter().all(|c| *c <= eps) {
        return Ok(ClassLabel::FullySeparable {
            max_concurrence: entries.into_iter().fold(0.0, f64::max),
        });
    }

    let zeros: Vec<Qubit> = Qubit::ALL
        .into_iter()
        .filter(|q| profile.one(*q) <= eps)
        .collect();
    let weakest_cut = TwoTwoCut::ALL
        .into_iter()
        .min_by(|a, b| profile.two(*a).total_cmp(&profile.two(*b)))
        .expect("three cuts");

    match zeros.len() {
        1 => {
            let qubit = zeros[0];
            let three_tangle = residual_three_tangle(state, qubit)?;
            let residual = if three_tangle > eps {
                ResidualClass::Ghz
            } else {
                ResidualClass::W
            };
            return Ok(ClassLabel::OneVsThreeProduct {
                qubit,
                concurrence: profile.one(qubit),
                residual,
                three_tangle,
            });
        }
        // two or more single qubits factor out: the state splits across a 2|2 cut as well
        n if n >= 2 => {
            return Ok(ClassLabel::TwoTwoBiseparable {
                cut: weakest_cut,
                witness: Witness::ZeroConcurrence(profile.two(weakest_cut)),
            });
        }
        _ => {}
    }

    if profile.two(weakest_cut) <= eps {
        return Ok(ClassLabel::TwoEprPairs {
            cut: weakest_cut,
            concurrence: profile.two(weakest_cut),
        });
    }

    let slacks = inequality_residuals(profile).triangle;
    if let Some(cut) = TwoTwoCut::ALL
        .into_iter()
        .filter(|c| slacks[c.index()] <= eps)
        .min_by(|a, b| slacks[a.index()].total_cmp(&slacks[b.index()]))
    {
        return Ok(ClassLabel::TwoTwoBiseparable {
            cut,
            witness: Witness::TriangleSlack(slacks[cut.index()]),
        });
    }

    Ok(ClassLabel::GenuineME {
        min_concurrence: profile.min(),
    })
}

/// Three-tangle of the state left on the other qubits once `qubit` is
/// projected onto the dominant eigenvector of its marginal.
fn residual_three_tangle(state: &PureState4, qubit: Qubit) -> Result<f64> {
    let rho = partial_trace(state, Bipartition::single(qubit))?;
    let (a, b, d) = (rho.get(0, 0).re, rho.get(0, 1), rho.get(1, 1).re);
    let phi = if b.norm() > 1e-15 {
        let lambda = (a + d) / 2.0 + (((a - d) / 2.0).powi(2) + b.norm_sqr()).sqrt();
        let v = [b, ComplexAmp::new(lambda - a, 0.0)];
        let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        [v[0] / n, v[1] / n]
    } else if a >= d {
        [ComplexAmp::new(1.0, 0.0), ComplexAmp::new(0.0, 0.0)]
    } else {
        [ComplexAmp::new(0.0, 0.0), ComplexAmp::new(1.0, 0.0)]
    };

    let rest: Vec<Qubit> = Qubit::ALL.into_iter().filter(|q| *q != qubit).collect();
    let mut chi = [ComplexAmp::new(0.0, 0.0); 8];
    for (i, amp) in state.amps().iter().enumerate() {
        let s = i >> qubit.bit() & 1;
        let mut j = 0;
        for (pos, q) in rest.iter().enumerate() {
            if i >> q.bit() & 1 == 1 {
                j |= 1 << (2 - pos);
            }
        }
        chi[j] += phi[s].conj() * amp;
    }
    let n: f64 = chi.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    for c in chi.iter_mut() {
        *c /= n;
    }
    Ok(three_tangle(&chi))
}

/// `4 |hyperdet|` of a normalized three-qubit state.
pub fn three_tangle(c: &[ComplexAmp; 8]) -> f64 {
    let d1 = c[0] * c[0] * c[7] * c[7]
        + c[1] * c[1] * c[6] * c[6]
        + c[2] * c[2] * c[5] * c[5]
        + c[4] * c[4] * c[3] * c[3];
    let d2 = c[0] * c[7] * c[3] * c[4]
        + c[0] * c[7] * c[5] * c[2]
        + c[0] * c[7] * c[6] * c[1]
        + c[3] * c[4] * c[5] * c[2]
        + c[3] * c[4] * c[6] * c[1]
        + c[5] * c[2] * c[6] * c[1];
    let d3 = c[0] * c[6] * c[5] * c[3] + c[7] * c[1] * c[2] * c[4];
    4.0 * (d1 - 2.0 * d2 + 4.0 * d3).norm()
}
