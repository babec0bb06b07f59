//! Four-qubit pure states, bipartitions and reduced density matrices.
//!
//! Basis ordering: amplitude index `8*q1 + 4*q2 + 2*q3 + q4`, so qubit 1 is the
//! most significant bit.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ComplexAmp = Complex64;

pub const DIM: usize = 16;

/// Tolerance on the unit norm of a constructed state.
pub const NORM_TOL: f64 = 1e-12;

/// Largest amount a purity may be clamped into `[1/dim, 1]` before it is
/// treated as an invalid density input.
pub const PURITY_CLAMP_TOL: f64 = 1e-10;

/// A qubit label in `1..=4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Qubit(u8);

impl Qubit {
    pub const ALL: [Qubit; 4] = [Qubit(1), Qubit(2), Qubit(3), Qubit(4)];

    pub fn new(label: u8) -> Option<Self> {
        (1..=4).contains(&label).then_some(Qubit(label))
    }

    pub fn label(self) -> u8 {
        self.0
    }

    /// Zero-based position, `0` for qubit 1.
    pub fn index(self) -> usize {
        usize::from(self.0 - 1)
    }

    /// Bit of the basis index that carries this qubit.
    pub fn bit(self) -> usize {
        3 - self.index()
    }

    fn mask(self) -> u8 {
        1 << self.index()
    }
}

impl fmt::Display for Qubit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A cut of the four qubits into the `keep` side and the rest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bipartition {
    // bit i set <=> qubit i+1 is kept
    keep: u8,
}

impl Bipartition {
    /// The seven canonical cuts: `{1},{2},{3},{4},{1,2},{1,3},{1,4}`.
    pub const CANONICAL: [Bipartition; 7] = [
        Bipartition { keep: 0b0001 },
        Bipartition { keep: 0b0010 },
        Bipartition { keep: 0b0100 },
        Bipartition { keep: 0b1000 },
        Bipartition { keep: 0b0011 },
        Bipartition { keep: 0b0101 },
        Bipartition { keep: 0b1001 },
    ];

    pub fn new(keep: &[u8]) -> Result<Self> {
        let mut mask = 0u8;
        for &label in keep {
            let q = Qubit::new(label).ok_or_else(|| Error::InvalidCut(keep.to_vec()))?;
            mask |= q.mask();
        }
        if mask == 0 || mask == 0b1111 {
            return Err(Error::InvalidCut(keep.to_vec()));
        }
        Ok(Bipartition { keep: mask })
    }

    pub fn single(q: Qubit) -> Self {
        Bipartition { keep: q.mask() }
    }

    /// The cut with `p` and `q` on one side, in canonical orientation.
    pub fn pair(p: Qubit, q: Qubit) -> Self {
        assert_ne!(p, q, "pair cut needs two distinct qubits");
        Bipartition {
            keep: p.mask() | q.mask(),
        }
        .canonical()
    }

    pub fn kept(self) -> Vec<Qubit> {
        Qubit::ALL
            .into_iter()
            .filter(|q| self.keep & q.mask() != 0)
            .collect()
    }

    pub fn traced(self) -> Vec<Qubit> {
        self.complement().kept()
    }

    pub fn complement(self) -> Self {
        Bipartition {
            keep: !self.keep & 0b1111,
        }
    }

    pub fn size(self) -> usize {
        self.keep.count_ones() as usize
    }

    pub fn is_canonical(self) -> bool {
        match self.size() {
            1 => true,
            2 => self.keep & 1 != 0,
            _ => false,
        }
    }

    /// Same cut, oriented so that the kept side is the canonical one.
    pub fn canonical(self) -> Self {
        if self.is_canonical() {
            self
        } else {
            self.complement()
        }
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in self.kept() {
            write!(f, "{q}")?;
        }
        f.write_str("|")?;
        for q in self.traced() {
            write!(f, "{q}")?;
        }
        Ok(())
    }
}

/// A normalized four-qubit pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState4 {
    amps: [ComplexAmp; DIM],
    label: Option<String>,
}

impl PureState4 {
    /// Normalizes `amps` and returns the state with the factor `1/|amps|`
    /// that was applied.
    pub fn normalize(amps: [ComplexAmp; DIM]) -> Result<(Self, f64)> {
        for (k, a) in amps.iter().enumerate() {
            if !a.re.is_finite() || !a.im.is_finite() {
                return Err(Error::NonFinite(k));
            }
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroNorm);
        }
        let factor = 1.0 / norm;
        let mut out = amps;
        for a in out.iter_mut() {
            *a *= factor;
        }
        Ok((
            PureState4 {
                amps: out,
                label: None,
            },
            factor,
        ))
    }

    pub fn new(amps: [ComplexAmp; DIM]) -> Result<Self> {
        Self::normalize(amps).map(|(s, _)| s)
    }

    /// Builds a state from `(coefficient, "q1q2q3q4")` terms, e.g. `(1.0, "0110")`.
    pub fn from_kets(terms: &[(ComplexAmp, &str)]) -> Result<Self> {
        let mut amps = [ComplexAmp::new(0.0, 0.0); DIM];
        for (c, ket) in terms {
            let idx = usize::from_str_radix(ket, 2)
                .ok()
                .filter(|_| ket.len() == 4)
                .ok_or_else(|| Error::Malformed(format!("bad ket {ket:?}")))?;
            amps[idx] += *c;
        }
        Self::new(amps)
    }

    pub fn basis(index: usize) -> Self {
        let mut amps = [ComplexAmp::new(0.0, 0.0); DIM];
        amps[index] = ComplexAmp::new(1.0, 0.0);
        PureState4 { amps, label: None }
    }

    pub fn amps(&self) -> &[ComplexAmp; DIM] {
        &self.amps
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Applies `u[0] ⊗ u[1] ⊗ u[2] ⊗ u[3]`, each a row-major 2×2 matrix.
    pub fn apply_local(&self, u: &[[ComplexAmp; 4]; 4]) -> Self {
        let mut amps = self.amps;
        for q in Qubit::ALL {
            let m = &u[q.index()];
            let bit = 1 << q.bit();
            for i in 0..DIM {
                if i & bit == 0 {
                    let (a0, a1) = (amps[i], amps[i | bit]);
                    amps[i] = m[0] * a0 + m[1] * a1;
                    amps[i | bit] = m[2] * a0 + m[3] * a1;
                }
            }
        }
        PureState4 {
            amps,
            label: self.label.clone(),
        }
    }

    /// Relabels qubits: qubit `q` of `self` becomes qubit `perm[q-1]` of the result.
    pub fn permute_qubits(&self, perm: [Qubit; 4]) -> Self {
        let mut amps = [ComplexAmp::new(0.0, 0.0); DIM];
        for (i, a) in self.amps.iter().enumerate() {
            let mut j = 0;
            for q in Qubit::ALL {
                if i >> q.bit() & 1 == 1 {
                    j |= 1 << perm[q.index()].bit();
                }
            }
            amps[j] = *a;
        }
        PureState4 {
            amps,
            label: self.label.clone(),
        }
    }

    pub fn to_document(&self) -> StateDocument {
        StateDocument {
            amplitudes: self.amps.iter().map(|a| [a.re, a.im]).collect(),
            label: self.label.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("state document serializes")
    }
}

/// On-disk state format: `{"amplitudes": [[re, im] x 16], "label": "..."}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDocument {
    pub amplitudes: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// Result of [`parse_state`]: the normalized state and the factor applied.
#[derive(Debug, Clone)]
pub struct ParsedState {
    pub state: PureState4,
    pub norm_factor: f64,
}

pub fn parse_state(text: &str) -> Result<ParsedState> {
    let doc: StateDocument =
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    if doc.amplitudes.len() != DIM {
        return Err(Error::WrongLength(doc.amplitudes.len()));
    }
    let mut amps = [ComplexAmp::new(0.0, 0.0); DIM];
    for (a, [re, im]) in amps.iter_mut().zip(&doc.amplitudes) {
        *a = ComplexAmp::new(*re, *im);
    }
    let (mut state, norm_factor) = PureState4::normalize(amps)?;
    state.label = doc.label;
    Ok(ParsedState { state, norm_factor })
}

/// Reduced density matrix on the kept side of a cut, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedDensity {
    dim: usize,
    entries: Vec<ComplexAmp>,
}

impl ReducedDensity {
    pub fn from_entries(dim: usize, entries: Vec<ComplexAmp>) -> Self {
        assert_eq!(entries.len(), dim * dim);
        ReducedDensity { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[ComplexAmp] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> ComplexAmp {
        self.entries[row * self.dim + col]
    }

    pub fn trace(&self) -> ComplexAmp {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }
}

/// Amplitudes reshaped as a `2^|kept| x 2^|traced|` matrix, row-major, with
/// the lowest-labelled qubit most significant on each side.
pub fn coefficient_matrix(
    state: &PureState4,
    cut: Bipartition,
) -> Result<(usize, usize, Vec<ComplexAmp>)> {
    if !cut.is_canonical() {
        return Err(Error::NonCanonicalCut(cut.to_string()));
    }
    let kept = cut.kept();
    let traced = cut.traced();
    let rows = 1 << kept.len();
    let cols = 1 << traced.len();
    let mut m = vec![ComplexAmp::new(0.0, 0.0); rows * cols];
    for (i, amp) in state.amps().iter().enumerate() {
        let sub = |side: &[Qubit]| {
            side.iter()
                .fold(0usize, |acc, q| (acc << 1) | (i >> q.bit() & 1))
        };
        m[sub(&kept) * cols + sub(&traced)] = *amp;
    }
    Ok((rows, cols, m))
}

/// `Tr_rest |ψ⟩⟨ψ|` on the kept qubits of a canonical cut.
pub fn partial_trace(state: &PureState4, cut: Bipartition) -> Result<ReducedDensity> {
    let (dim, env, m) = coefficient_matrix(state, cut)?;
    let mut entries = vec![ComplexAmp::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        for j in i..dim {
            let s: ComplexAmp = (0..env)
                .map(|r| m[i * env + r] * m[j * env + r].conj())
                .sum();
            entries[i * dim + j] = s;
            entries[j * dim + i] = s.conj();
        }
    }
    Ok(ReducedDensity { dim, entries })
}

/// `Tr(ρ²)` as the squared Frobenius norm, clamped into `[1/dim, 1]`.
pub fn purity(rho: &ReducedDensity) -> Result<f64> {
    let raw: f64 = rho.entries.iter().map(|z| z.norm_sqr()).sum();
    let lower = 1.0 / rho.dim as f64;
    if !raw.is_finite() || raw < lower - PURITY_CLAMP_TOL || raw > 1.0 + PURITY_CLAMP_TOL {
        return Err(Error::InvalidDensity { purity: raw, lower });
    }
    Ok(raw.clamp(lower, 1.0))
}
