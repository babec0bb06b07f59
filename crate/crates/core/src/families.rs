//! Representative states of the nine SLOCC families of four qubits, the
//! published closed-form concurrences for each (kept as audited data), and
//! the named comparison states.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::concurrence::concurrence_profile;
use crate::error::{Error, Result};
use crate::state::{ComplexAmp, PureState4};

/// Tolerance for closed-form versus engine agreement.
pub const AUDIT_TOL: f64 = 1e-9;

/// Default parameter range and grid steps for family sweeps.
pub const GRID_START: f64 = 0.0;
pub const GRID_STOP: f64 = 3.0;
pub const ONE_PARAM_STEP: f64 = 0.05;
pub const TWO_PARAM_STEP: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `L_{0_{3⊕1̄}0_{3⊕1̄}}`
    F1,
    /// `L_{0_{7⊕1̄}}`
    F2,
    /// `L_{0_{5⊕3̄}}`
    F3,
    /// `L_{a_2 0_{3⊕1̄}}`
    F4,
    /// `L_{a_4}`
    F5,
    /// `L_{a_2 b_2}`
    F6,
    /// `L_{a b_3}`
    F7,
    /// `L_{a b c_2}`
    F8,
    /// `G_{abcd}`
    F9,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::F1,
        Family::F2,
        Family::F3,
        Family::F4,
        Family::F5,
        Family::F6,
        Family::F7,
        Family::F8,
        Family::F9,
    ];

    pub fn arity(self) -> usize {
        match self {
            Family::F1 | Family::F2 | Family::F3 => 0,
            Family::F4 | Family::F5 => 1,
            Family::F6 | Family::F7 => 2,
            Family::F8 => 3,
            Family::F9 => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::F1 => "F1",
            Family::F2 => "F2",
            Family::F3 => "F3",
            Family::F4 => "F4",
            Family::F5 => "F5",
            Family::F6 => "F6",
            Family::F7 => "F7",
            Family::F8 => "F8",
            Family::F9 => "F9",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// A family with its real parameters `a, b, c, d` (only as many as it takes).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub params: Vec<f64>,
}

impl FamilySpec {
    pub fn new(family: Family, params: &[f64]) -> Result<Self> {
        if params.len() != family.arity() {
            return Err(Error::Arity {
                family: family.name(),
                expected: family.arity(),
                got: params.len(),
            });
        }
        Ok(FamilySpec {
            family,
            params: params.to_vec(),
        })
    }

    fn p(&self, i: usize) -> f64 {
        self.params[i]
    }

    /// Unnormalized ket terms as displayed for the family.
    fn terms(&self) -> Vec<(ComplexAmp, &'static str)> {
        let r = |x: f64| ComplexAmp::new(x, 0.0);
        let i = |x: f64| ComplexAmp::new(0.0, x);
        match self.family {
            Family::F1 => vec![(r(1.0), "0000"), (r(1.0), "0111")],
            Family::F2 => vec![
                (r(1.0), "0000"),
                (r(1.0), "1011"),
                (r(1.0), "1101"),
                (r(1.0), "1110"),
            ],
            Family::F3 => vec![
                (r(1.0), "0000"),
                (r(1.0), "0101"),
                (r(1.0), "1000"),
                (r(1.0), "1110"),
            ],
            Family::F4 => {
                let a = self.p(0);
                vec![
                    (r(a), "0000"),
                    (r(a), "1111"),
                    (r(1.0), "0011"),
                    (r(1.0), "0101"),
                    (r(1.0), "0110"),
                ]
            }
            Family::F5 => {
                let a = self.p(0);
                vec![
                    (r(a), "0000"),
                    (r(a), "0101"),
                    (r(a), "1010"),
                    (r(a), "1111"),
                    (i(1.0), "0001"),
                    (r(1.0), "0110"),
                    (i(-1.0), "1011"),
                ]
            }
            Family::F6 => {
                let (a, b) = (self.p(0), self.p(1));
                vec![
                    (r(a), "0000"),
                    (r(a), "1111"),
                    (r(b), "0101"),
                    (r(b), "1010"),
                    (r(1.0), "0110"),
                    (r(1.0), "0011"),
                ]
            }
            Family::F7 => {
                let (a, b) = (self.p(0), self.p(1));
                let s = std::f64::consts::FRAC_1_SQRT_2;
                vec![
                    (r(a), "0000"),
                    (r(a), "1111"),
                    (r((a + b) / 2.0), "0101"),
                    (r((a + b) / 2.0), "1010"),
                    (r((a - b) / 2.0), "0110"),
                    (r((a - b) / 2.0), "1001"),
                    (i(s), "0001"),
                    (i(s), "0010"),
                    (i(s), "0111"),
                    (i(s), "1011"),
                ]
            }
            Family::F8 => {
                let (a, b, c) = (self.p(0), self.p(1), self.p(2));
                vec![
                    (r((a + b) / 2.0), "0000"),
                    (r((a + b) / 2.0), "1111"),
                    (r((a - b) / 2.0), "0011"),
                    (r((a - b) / 2.0), "1100"),
                    (r(c), "0101"),
                    (r(c), "1010"),
                    (r(1.0), "0110"),
                ]
            }
            Family::F9 => {
                let (a, b, c, d) = (self.p(0), self.p(1), self.p(2), self.p(3));
                vec![
                    (r((a + d) / 2.0), "0000"),
                    (r((a + d) / 2.0), "1111"),
                    (r((a - d) / 2.0), "0011"),
                    (r((a - d) / 2.0), "1100"),
                    (r((b + c) / 2.0), "0101"),
                    (r((b + c) / 2.0), "1010"),
                    (r((b - c) / 2.0), "0110"),
                    (r((b - c) / 2.0), "1001"),
                ]
            }
        }
    }

    /// The printed normalization prefactor of the family ket.
    pub fn printed_norm_factor(&self) -> f64 {
        let sq = |x: f64| x * x;
        let inv_sqrt = |x: f64| 1.0 / x.sqrt();
        match self.family {
            Family::F1 => std::f64::consts::FRAC_1_SQRT_2,
            Family::F2 | Family::F3 => 0.5,
            Family::F4 => inv_sqrt(2.0 * sq(self.p(0)) + 3.0),
            Family::F5 => inv_sqrt(4.0 * sq(self.p(0)) + 3.0),
            Family::F6 => inv_sqrt(2.0 * (1.0 + sq(self.p(0)) + sq(self.p(1)))),
            Family::F7 => inv_sqrt(3.0 * sq(self.p(0)) + sq(self.p(1)) + 2.0),
            Family::F8 => inv_sqrt(1.0 + sq(self.p(0)) + sq(self.p(1)) + 2.0 * sq(self.p(2))),
            Family::F9 => {
                let (a, b, c, d) = (self.p(0), self.p(1), self.p(2), self.p(3));
                inv_sqrt(a * a + a * b + 1.5 * b * b + c * c - a * d + d * d / 2.0)
            }
        }
    }

    /// Concurrences from the published closed forms, in profile order
    /// `C1..C4, C12|34, C13|24, C14|23`. `None` where no formula is given.
    pub fn closed_form_values(&self) -> [Option<f64>; 7] {
        let h3 = 3f64.sqrt() / 2.0;
        let h5 = 5f64.sqrt() / 2.0;
        let s2 = std::f64::consts::SQRT_2;
        let all = |one: [f64; 4], two: [f64; 3]| {
            [
                Some(one[0]),
                Some(one[1]),
                Some(one[2]),
                Some(one[3]),
                Some(two[0]),
                Some(two[1]),
                Some(two[2]),
            ]
        };
        match self.family {
            Family::F1 => [Some(0.0), Some(1.0), Some(1.0), Some(1.0), None, None, None],
            Family::F2 => all([h3, 1.0, 1.0, 1.0], [h5, h5, h5]),
            Family::F3 => all([h3, h3, 1.0, h3], [h5, 1.0, 1.0]),
            Family::F4 => {
                let a2 = self.p(0).powi(2);
                let n = 2.0 * a2 + 3.0;
                let c1 = (4.0 * a2 * (a2 + 3.0)).sqrt() / n;
                let ci = 2.0 * (a2 * a2 + 3.0 * a2 + 2.0).sqrt() / n;
                let cij = 2.0 * (a2 * a2 + 4.0 * a2 + 2.0).sqrt() / n;
                all([c1, ci, ci, ci], [cij, cij, cij])
            }
            Family::F5 => {
                let a2 = self.p(0).powi(2);
                let n = 4.0 * a2 + 3.0;
                let c1 = (8.0 * (2.0 * a2 * a2 + 7.0 * a2 + 2.0)).sqrt() / n;
                let c3 = (8.0 * (2.0 * a2 * a2 + 7.0 * a2 + 1.0)).sqrt() / n;
                let c12 = (4.0 * (6.0 * a2 * a2 + 14.0 * a2 + 3.0)).sqrt() / n;
                let c13 = (8.0 * (6.0 * a2 + 1.0)).sqrt() / n;
                all([c1, c1, c3, c3], [c12, c13, c12])
            }
            Family::F6 => {
                let (a2, b2) = (self.p(0).powi(2), self.p(1).powi(2));
                let n = a2 + b2 + 1.0;
                let c1 = (2.0 * a2 * (b2 + 1.0) + a2 * a2 + b2 * (b2 + 2.0)).sqrt() / n;
                let c12 = (a2 * (4.0 * b2 + 2.0) + a2 * a2 + (b2 + 1.0).powi(2)).sqrt() / n;
                let c13 = (-2.0 * a2 * (b2 - 2.0) + a2 * a2 + b2 * (b2 + 4.0)).sqrt() / n;
                all([c1, c1, 1.0, 1.0], [c12, c13, c12])
            }
            Family::F7 => {
                let (a, b) = (self.p(0), self.p(1));
                let (a2, b2) = (a * a, b * b);
                let n = 3.0 * a2 + b2 + 2.0;
                let ci =
                    (a2 * (6.0 * b2 + 44.0) + 9.0 * a2 * a2 + b2 * b2 + 12.0 * b2 + 3.0).sqrt() / n;
                let c12 =
                    (4.0 * (a2 * (3.0 * b2 + 10.0) + 3.0 * a2 * a2 + 2.0 * b2 + 1.0)).sqrt() / n;
                let m11 = a2 * (6.0 * b2 + 88.0) + 15.0 * a2 * a2 + 3.0 * b2 * b2 + 24.0 * b2 + 8.0;
                let t = 24.0 * a2 * a * b - 16.0 * a * b;
                let c13 = (m11 - t).sqrt() / (s2 * n);
                let c14 = (m11 + t).sqrt() / (s2 * n);
                all([ci; 4], [c12, c13, c14])
            }
            Family::F8 => {
                let (a, b, c) = (self.p(0), self.p(1), self.p(2));
                let (a2, b2, c2) = (a * a, b * b, c * c);
                let m12 = b2 + 2.0 * c2 + 1.0;
                let n12 = c2 + 1.0;
                let l12 = a2 * a2 + b2 * b2;
                let o12 = 2.0 * a2 * (m12 + 1.0) + 4.0 * b2 * n12 + 8.0 * c2 * (n12 + 1.0);
                let n = a2 + b2 + 2.0 * c2 + 1.0;
                let ci = (2.0 * a2 * m12 + 2.0 * b2 * (c2 + n12) + 4.0 * c2 * n12 + l12).sqrt() / n;
                let c12 = (4.0 * (a2 * m12 + b2 * (c2 + n12) + c2 * c2)).sqrt() / n;
                let t = 8.0 * a * b * (c2 + n12);
                let c13 = (o12 + t + 3.0 * l12).sqrt() / (s2 * n);
                let c14 = (o12 - t + 3.0 * l12).sqrt() / (s2 * n);
                all([ci; 4], [c12, c13, c14])
            }
            Family::F9 => {
                let (a, b, c, d) = (self.p(0), self.p(1), self.p(2), self.p(3));
                let (a2, b2, c2, d2) = (a * a, b * b, c * c, d * d);
                let n = 2.0 * a2 + 2.0 * a * b - 2.0 * a * d + 3.0 * b2 + 2.0 * c2 + d2;
                // "ad^2" read as a*d^2
                let m22 = 8.0 * a2 * a * b
                    + 2.0 * a2 * a2
                    + 4.0 * a * d2
                    + 8.0 * b2 * c2
                    + 7.0 * b2 * b2
                    + 2.0 * c2 * c2
                    + 2.0 * b2 * d2
                    - d2 * d2;
                let s = 3.0 * b2 + 2.0 * c2 + d2;
                let n22 = 4.0 * a2 * (-2.0 * a * d + 3.0 * b2 + c2) - 4.0 * a * d * s;
                let l22 = -2.0 * a * d + s;
                let m32 = 8.0 * a2 * a * b
                    + 4.0 * a * d2
                    + 12.0 * b2 * c2
                    + 6.0 * b2 * d2
                    + 5.0 * b2 * b2
                    + 4.0 * c2 * d2
                    - 3.0 * d2 * d2;
                let n32 = 4.0 * a * b * l22 - 4.0 * a * d * s;
                let m42 =
                    8.0 * a2 * a * b + 3.0 * a2 * a2 + 4.0 * a * d2 + 6.0 * b2 * c2 + 8.0 * b2 * b2
                        - 2.0 * c2 * d2
                        + 3.0 * c2 * c2;
                let n42 = 2.0 * a2 * (4.0 * a * d - 5.0 * b2 - c2 + d2) + 4.0 * a * d * s;
                let l42 = 4.0 * a * b * l22;
                let ci = (2.0 * (m22 + n22 + 4.0 * a * b * l22)).sqrt() / n;
                let c12 = (2.0 * (m32 + n32 + 4.0 * a2 * (l22 + b2))).sqrt() / n;
                let c13 = (2.0 * (m42 - n42 + l42 - 24.0 * a * b * c * d)).sqrt() / n;
                let c14 = (2.0 * (m42 - n42 + l42 + 24.0 * a * b * c * d)).sqrt() / n;
                all([ci; 4], [c12, c13, c14])
            }
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        for (name, v) in ["a", "b", "c", "d"].iter().zip(&self.params) {
            write!(f, " {name}={v}")?;
        }
        Ok(())
    }
}

/// A family state with both normalization constants.
#[derive(Debug, Clone)]
pub struct FamilyState {
    pub state: PureState4,
    /// `1/|L|` actually applied.
    pub direct_norm_factor: f64,
    /// Prefactor as printed for the family.
    pub printed_norm_factor: f64,
}

impl FamilyState {
    pub fn norm_mismatch(&self) -> f64 {
        (self.direct_norm_factor - self.printed_norm_factor).abs()
    }
}

pub fn family_state(spec: &FamilySpec) -> Result<FamilyState> {
    let mut amps = [ComplexAmp::new(0.0, 0.0); 16];
    for (c, ket) in spec.terms() {
        amps[usize::from_str_radix(ket, 2).expect("static ket")] += c;
    }
    let (state, direct_norm_factor) = PureState4::normalize(amps)?;
    Ok(FamilyState {
        state: state.with_label(spec.to_string()),
        direct_norm_factor,
        printed_norm_factor: spec.printed_norm_factor(),
    })
}

pub const PROFILE_ENTRY_NAMES: [&str; 7] = ["C1", "C2", "C3", "C4", "C12|34", "C13|24", "C14|23"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditEntry {
    pub entry: &'static str,
    pub closed_form: Option<f64>,
    pub engine: f64,
    /// `None` when no closed form exists for the entry.
    pub agree: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedFormAudit {
    pub spec: FamilySpec,
    pub entries: Vec<AuditEntry>,
    pub direct_norm_factor: f64,
    pub printed_norm_factor: f64,
}

impl ClosedFormAudit {
    pub fn all_agree(&self) -> bool {
        self.entries.iter().all(|e| e.agree != Some(false))
    }

    pub fn disagreements(&self) -> impl Iterator<Item = &AuditEntry> {
        self.entries.iter().filter(|e| e.agree == Some(false))
    }

    pub fn entry(&self, name: &str) -> Option<&AuditEntry> {
        self.entries.iter().find(|e| e.entry == name)
    }
}

/// Compares every published closed form against the partial-trace engine.
pub fn closed_form_profile(spec: &FamilySpec) -> Result<ClosedFormAudit> {
    let fs = family_state(spec)?;
    let engine = concurrence_profile(&fs.state)?.entries();
    let entries = spec
        .closed_form_values()
        .into_iter()
        .zip(engine)
        .zip(PROFILE_ENTRY_NAMES)
        .map(|((closed_form, engine), entry)| AuditEntry {
            entry,
            closed_form,
            engine,
            agree: closed_form.map(|c| (c - engine).abs() <= AUDIT_TOL),
        })
        .collect();
    Ok(ClosedFormAudit {
        spec: spec.clone(),
        entries,
        direct_norm_factor: fs.direct_norm_factor,
        printed_norm_factor: fs.printed_norm_factor,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Benchmark {
    PsiA,
    PsiB,
    PsiC,
    PsiD,
    Ghz4,
}

impl Benchmark {
    pub const ALL: [Benchmark; 5] = [
        Benchmark::PsiA,
        Benchmark::PsiB,
        Benchmark::PsiC,
        Benchmark::PsiD,
        Benchmark::Ghz4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Benchmark::PsiA => "psiA",
            Benchmark::PsiB => "psiB",
            Benchmark::PsiC => "psiC",
            Benchmark::PsiD => "psiD",
            Benchmark::Ghz4 => "ghz4",
        }
    }
}

impl FromStr for Benchmark {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Benchmark::ALL
            .into_iter()
            .find(|b| b.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownBenchmark(s.to_string()))
    }
}

/// `a² = (51 + 5√113)/32` for the F5 comparison state.
pub fn psi_d_parameter() -> f64 {
    ((51.0 + 5.0 * 113f64.sqrt()) / 32.0).sqrt()
}

pub fn benchmark_state(which: Benchmark) -> PureState4 {
    let fam = |family, params: &[f64]| {
        family_state(&FamilySpec::new(family, params).expect("fixed arity"))
            .expect("benchmark parameters give a nonzero state")
            .state
    };
    let state = match which {
        Benchmark::PsiA => fam(Family::F2, &[]),
        Benchmark::PsiB => fam(Family::F3, &[]),
        Benchmark::PsiC => fam(Family::F4, &[1.0]),
        Benchmark::PsiD => fam(Family::F5, &[psi_d_parameter()]),
        Benchmark::Ghz4 => PureState4::from_kets(&[
            (ComplexAmp::new(1.0, 0.0), "0000"),
            (ComplexAmp::new(1.0, 0.0), "1111"),
        ])
        .expect("nonzero"),
    };
    state.with_label(which.name())
}

/// Named parameter subfamilies analyzed case by case for F8 and F9.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subfamily {
    /// F8 with `c = 0`, `(a, b) != (0, 0)`.
    F8CZero,
    /// F8 with `abc != 0`.
    F8AllNonzero,
    /// F8 with `c != 0`, `ab = 0`.
    F8CNonzeroAbZero,
    /// F9 with two parameters zero and the other two nonzero.
    F9TwoZero,
    /// F9 with `x = ±y != 0` and `u = ±v != 0` over a pairing of `a, b, c, d`.
    F9PairedSigns,
    /// F9 with `a = ±d != 0, b != ±c` or `b = ±c != 0, a != ±d`.
    F9OnePair,
    /// F9 with pairwise distinct magnitudes.
    F9Generic,
    /// F9 with `a = -d`, `b = c`, `d != c`, both nonzero.
    F9AMinusDBEqC,
}

impl Subfamily {
    pub fn family(self) -> Family {
        match self {
            Subfamily::F8CZero | Subfamily::F8AllNonzero | Subfamily::F8CNonzeroAbZero => {
                Family::F8
            }
            _ => Family::F9,
        }
    }

    /// Parameter points of the subfamily built from the grid values `values`.
    /// Zero entries of `values` are skipped wherever a parameter must be nonzero.
    pub fn points(self, values: &[f64]) -> Vec<FamilySpec> {
        let nz: Vec<f64> = values.iter().copied().filter(|v| *v != 0.0).collect();
        let distinct = |x: f64, y: f64| (x.abs() - y.abs()).abs() > 1e-12;
        let mut out: Vec<Vec<f64>> = Vec::new();
        match self {
            Subfamily::F8CZero => {
                for &a in values {
                    for &b in values {
                        if a != 0.0 || b != 0.0 {
                            out.push(vec![a, b, 0.0]);
                        }
                    }
                }
            }
            Subfamily::F8AllNonzero => {
                for &a in &nz {
                    for &b in &nz {
                        for &c in &nz {
                            out.push(vec![a, b, c]);
                        }
                    }
                }
            }
            Subfamily::F8CNonzeroAbZero => {
                for &c in &nz {
                    for &x in values {
                        out.push(vec![x, 0.0, c]);
                        if x != 0.0 {
                            out.push(vec![0.0, x, c]);
                        }
                    }
                }
            }
            Subfamily::F9TwoZero => {
                for zero_pair in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
                    let free: Vec<usize> = (0..4)
                        .filter(|i| *i != zero_pair.0 && *i != zero_pair.1)
                        .collect();
                    for &z in &nz {
                        for &u in &nz {
                            let mut p = vec![0.0; 4];
                            p[free[0]] = z;
                            p[free[1]] = u;
                            out.push(p);
                        }
                    }
                }
            }
            Subfamily::F9PairedSigns => {
                for [(x, y), (u, v)] in [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]] {
                    for s1 in [1.0, -1.0] {
                        for s2 in [1.0, -1.0] {
                            for &p in &nz {
                                for &q in &nz {
                                    let mut params = vec![0.0; 4];
                                    params[y] = p;
                                    params[x] = s1 * p;
                                    params[v] = q;
                                    params[u] = s2 * q;
                                    out.push(params);
                                }
                            }
                        }
                    }
                }
            }
            Subfamily::F9OnePair => {
                for s in [1.0, -1.0] {
                    for &p in &nz {
                        for &x in values {
                            for &y in values {
                                if distinct(x, y) {
                                    out.push(vec![s * p, x, y, p]);
                                    out.push(vec![x, s * p, p, y]);
                                }
                            }
                        }
                    }
                }
            }
            Subfamily::F9Generic => {
                let n = nz.len();
                for i in 0..n {
                    for j in i + 1..n {
                        for k in j + 1..n {
                            for l in k + 1..n {
                                out.push(vec![nz[i], nz[j], nz[k], nz[l]]);
                            }
                        }
                    }
                }
            }
            Subfamily::F9AMinusDBEqC => {
                for &c in &nz {
                    for &d in &nz {
                        if (d - c).abs() > 1e-12 {
                            out.push(vec![-d, c, c, d]);
                        }
                    }
                }
            }
        }
        out.into_iter()
            .map(|p| FamilySpec::new(self.family(), &p).expect("generator arity"))
            .collect()
    }
}

/// `start, start+step, ...` up to `stop` inclusive, rounded to 12 decimals so
/// that e.g. `0.1 * 3` prints as `0.3`.
pub fn grid(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    (0..=n)
        .map(|i| {
            let x = start + i as f64 * step;
            (x * 1e12).round() / 1e12
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concurrence::concurrence_profile;
    use approx::assert_abs_diff_eq;

    #[test]
    fn arity_checked() {
        assert!(FamilySpec::new(Family::F4, &[]).is_err());
        assert!(FamilySpec::new(Family::F2, &[1.0]).is_err());
        assert!(FamilySpec::new(Family::F9, &[1.0, 2.0, 3.0, 4.0]).is_ok());
        assert_eq!("f6".parse::<Family>().unwrap(), Family::F6);
        assert!("F10".parse::<Family>().is_err());
    }

    #[test]
    fn f2_is_psi2() {
        let fs = family_state(&FamilySpec::new(Family::F2, &[]).unwrap()).unwrap();
        for i in [0, 11, 13, 14] {
            assert_abs_diff_eq!(fs.state.amps()[i].re, 0.5, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(fs.direct_norm_factor, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(fs.norm_mismatch(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn f4_at_zero_factors_qubit_one() {
        let fs = family_state(&FamilySpec::new(Family::F4, &[0.0]).unwrap()).unwrap();
        let p = concurrence_profile(&fs.state).unwrap();
        assert_abs_diff_eq!(p.c_one[0], 0.0, epsilon = 1e-12);
        for c in &p.c_one[1..] {
            assert_abs_diff_eq!(*c, 8f64.sqrt() / 3.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn printed_norms_match_except_f9() {
        for (family, params) in [
            (Family::F4, vec![1.3]),
            (Family::F5, vec![0.7]),
            (Family::F6, vec![0.4, 2.0]),
            (Family::F7, vec![1.1, -0.3]),
            (Family::F8, vec![0.2, 1.5, 0.9]),
        ] {
            let fs = family_state(&FamilySpec::new(family, &params).unwrap()).unwrap();
            assert_abs_diff_eq!(fs.norm_mismatch(), 0.0, epsilon = 1e-14);
        }
        let fs =
            family_state(&FamilySpec::new(Family::F9, &[1.0, 2.0, 0.5, 0.3]).unwrap()).unwrap();
        assert!(fs.norm_mismatch() > 1e-3);
    }

    #[test]
    fn f5_audit_flags_c1() {
        let audit = closed_form_profile(&FamilySpec::new(Family::F5, &[1.0]).unwrap()).unwrap();
        let c1 = audit.entry("C1").unwrap();
        assert_abs_diff_eq!(c1.closed_form.unwrap(), 88f64.sqrt() / 7.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c1.engine, 0.98974, epsilon = 1e-5);
        assert_eq!(c1.agree, Some(false));
        assert!(!audit.all_agree());
    }

    #[test]
    fn f1_audit_has_gaps() {
        let audit = closed_form_profile(&FamilySpec::new(Family::F1, &[]).unwrap()).unwrap();
        assert!(audit.all_agree());
        assert_eq!(audit.entry("C12|34").unwrap().agree, None);
    }

    #[test]
    fn f6_origin_is_product() {
        let fs = family_state(&FamilySpec::new(Family::F6, &[0.0, 0.0]).unwrap()).unwrap();
        let p = concurrence_profile(&fs.state).unwrap();
        assert_abs_diff_eq!(p.c_one[0], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.c_one[1], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.c_one[2], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn benchmarks() {
        assert_abs_diff_eq!(psi_d_parameter().powi(2), 3.2547103, epsilon = 1e-7);
        let c = benchmark_state(Benchmark::PsiC);
        let h = 1.0 / 5f64.sqrt();
        for i in [0, 15, 3, 5, 6] {
            assert_abs_diff_eq!(c.amps()[i].re, h, epsilon = 1e-15);
        }
        assert_eq!("psiD".parse::<Benchmark>().unwrap(), Benchmark::PsiD);
        assert!("psiE".parse::<Benchmark>().is_err());
    }

    #[test]
    fn grid_endpoints() {
        let g = grid(0.0, 3.0, 0.05);
        assert_eq!(g.len(), 61);
        assert_eq!(g[60], 3.0);
        assert_eq!(grid(0.1, 3.0, 0.1).len(), 30);
        assert_eq!(grid(1.0, 1.0, 0.1), vec![1.0]);
    }

    #[test]
    fn subfamily_points_respect_conditions() {
        let v = grid(0.0, 1.0, 0.5);
        for s in Subfamily::F9AMinusDBEqC.points(&v) {
            let p = &s.params;
            assert_eq!(p[0], -p[3]);
            assert_eq!(p[1], p[2]);
            assert!(p[2] != 0.0 && p[3] != p[2]);
        }
        assert!(Subfamily::F8CZero
            .points(&v)
            .iter()
            .all(|s| s.params[2] == 0.0));
        assert_eq!(Subfamily::F8CZero.points(&v).len(), 8);
        assert!(!Subfamily::F9Generic.points(&grid(0.5, 2.5, 0.5)).is_empty());
    }
}
