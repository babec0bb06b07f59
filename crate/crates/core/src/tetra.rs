//! The concurrence tetrahedron.
//!
//! Vertex layout: the apex stands for the dropped qubit (largest `C_i`), the
//! three base vertices for the kept qubits. The apex edge to kept qubit `q`
//! has length `C_q`; the base edge between kept qubits `p` and `q` has the
//! length of the 2|2 concurrence of the cut `{p,q}|rest`.

use serde::{Deserialize, Serialize};

use crate::concurrence::{ConcurrenceProfile, TwoTwoCut};
use crate::error::{Error, Result};
use crate::state::Qubit;

/// Heron radicand at or below this marks the base triangle as degenerate.
pub const HERON_TOL: f64 = 1e-12;

/// Tolerance on Cayley-Menger determinants, triangle slacks and volume radicands.
pub const FEASIBILITY_TOL: f64 = 1e-9;

/// Default threshold below which an apex edge counts as zero.
pub const EPS_ZERO: f64 = 1e-9;

// Profile values this close to the maximum count as tied for the dropped qubit.
const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ApexEdge {
    pub qubit: Qubit,
    pub length: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BaseEdge {
    pub feet: (Qubit, Qubit),
    pub cut: TwoTwoCut,
    pub length: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TetraEdges {
    #[serde(rename = "dropped_qubit")]
    pub dropped: Qubit,
    /// Sorted ascending by length: `u <= v <= w`.
    pub apex: [ApexEdge; 3],
    /// Feet in ascending label order: `(k0,k1)`, `(k0,k2)`, `(k1,k2)`.
    pub base: [BaseEdge; 3],
}

impl TetraEdges {
    /// Assembles edges for a given dropped qubit. `apex` holds the apex edge
    /// lengths of the kept qubits in ascending label order, `base` the
    /// lengths for the feet pairs `(k0,k1)`, `(k0,k2)`, `(k1,k2)`.
    pub fn from_lengths(dropped: Qubit, apex: [f64; 3], base: [f64; 3]) -> Self {
        let kept = kept_qubits(dropped);
        let mut apex_edges = [0, 1, 2].map(|i| ApexEdge {
            qubit: kept[i],
            length: apex[i],
        });
        apex_edges.sort_by(|x, y| x.length.total_cmp(&y.length).then(x.qubit.cmp(&y.qubit)));
        let pairs = [(0, 1), (0, 2), (1, 2)];
        let base_edges = [0, 1, 2].map(|i| {
            let (a, b) = pairs[i];
            BaseEdge {
                feet: (kept[a], kept[b]),
                cut: TwoTwoCut::separating(kept[a], kept[b]),
                length: base[i],
            }
        });
        TetraEdges {
            dropped,
            apex: apex_edges,
            base: base_edges,
        }
    }

    pub fn kept(&self) -> [Qubit; 3] {
        kept_qubits(self.dropped)
    }

    /// Apex lengths by kept qubit in label order, and base lengths by feet pair.
    pub fn raw(&self) -> Raw {
        let kept = self.kept();
        let mut apex = [0.0; 3];
        for e in &self.apex {
            let i = kept
                .iter()
                .position(|q| *q == e.qubit)
                .expect("apex foot is kept");
            apex[i] = e.length;
        }
        Raw {
            apex,
            base: self.base.map(|b| b.length),
        }
    }

    /// Base edge joining the feet of two apex edges.
    pub fn base_between(&self, p: Qubit, q: Qubit) -> f64 {
        self.base
            .iter()
            .find(|b| b.feet == (p, q) || b.feet == (q, p))
            .map(|b| b.length)
            .expect("both feet are kept qubits")
    }

    pub fn base_lengths(&self) -> [f64; 3] {
        self.base.map(|b| b.length)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = *self;
        for e in &mut out.apex {
            e.length *= factor;
        }
        for e in &mut out.base {
            e.length *= factor;
        }
        out
    }
}

/// Six lengths in fixed vertex order, independent of the `u <= v <= w` sort.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Raw {
    pub apex: [f64; 3],
    /// `b01`, `b02`, `b12` between base vertices.
    pub base: [f64; 3],
}

impl Raw {
    fn get(&self, i: usize) -> f64 {
        if i < 3 {
            self.apex[i]
        } else {
            self.base[i - 3]
        }
    }

    fn with(&self, i: usize, value: f64) -> Self {
        let mut out = *self;
        if i < 3 {
            out.apex[i] = value;
        } else {
            out.base[i - 3] = value;
        }
        out
    }

    /// `144 V²` from the three-edges-at-a-vertex formula.
    pub fn volume_radicand(&self) -> f64 {
        let [a0, a1, a2] = self.apex.map(|x| x * x);
        let [b01, b02, b12] = self.base.map(|x| x * x);
        let x0 = a1 + a2 - b12;
        let x1 = a0 + a2 - b02;
        let x2 = a0 + a1 - b01;
        4.0 * a0 * a1 * a2 - a0 * x0 * x0 - a1 * x1 * x1 - a2 * x2 * x2 + x0 * x1 * x2
    }

    pub fn cayley_menger(&self) -> f64 {
        let [a0, a1, a2] = self.apex.map(|x| x * x);
        let [b01, b02, b12] = self.base.map(|x| x * x);
        determinant([
            [0.0, 1.0, 1.0, 1.0, 1.0],
            [1.0, 0.0, a0, a1, a2],
            [1.0, a0, 0.0, b01, b02],
            [1.0, a1, b01, 0.0, b12],
            [1.0, a2, b02, b12, 0.0],
        ])
    }
}

fn kept_qubits(dropped: Qubit) -> [Qubit; 3] {
    let mut kept = [dropped; 3];
    let mut i = 0;
    for q in Qubit::ALL {
        if q != dropped {
            kept[i] = q;
            i += 1;
        }
    }
    kept
}

/// Gaussian elimination with partial pivoting.
fn determinant<const N: usize>(mut m: [[f64; N]; N]) -> f64 {
    let mut det = 1.0;
    for col in 0..N {
        let pivot = (col..N)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap_or(col);
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        let (top, rest) = m.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in rest.iter_mut() {
            let factor = row[col] / pivot_row[col];
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= factor * p;
            }
        }
    }
    det
}

pub fn build_edges(profile: &ConcurrenceProfile) -> TetraEdges {
    let max = profile
        .c_one
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let dropped = Qubit::ALL
        .into_iter()
        .rev()
        .find(|q| profile.one(*q) >= max - TIE_TOL)
        .expect("some qubit attains the maximum");
    let kept = kept_qubits(dropped);
    let apex = kept.map(|q| profile.one(q));
    let base =
        [(0, 1), (0, 2), (1, 2)].map(|(a, b)| profile.two(TwoTwoCut::separating(kept[a], kept[b])));
    TetraEdges::from_lengths(dropped, apex, base)
}

fn triangle_slacks(base: [f64; 3]) -> [f64; 3] {
    let [a, b, c] = base;
    [b + c - a, a + c - b, a + b - c]
}

fn heron_radicand(base: [f64; 3]) -> (f64, f64) {
    let p = base.iter().sum::<f64>() / 2.0;
    let [a, b, c] = base;
    (p * (p - a) * (p - b) * (p - c), p)
}

/// Apex-edge sum, base semiperimeter and circumradius, and `G = H - 3R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LemmaGap {
    #[serde(rename = "H")]
    pub h: f64,
    #[serde(rename = "p")]
    pub p_semi: f64,
    #[serde(rename = "R")]
    pub r: f64,
    #[serde(rename = "G")]
    pub g: f64,
}

pub fn lemma_gap(edges: &TetraEdges) -> Result<LemmaGap> {
    let base = edges.base_lengths();
    let (radicand, p) = heron_radicand(base);
    if radicand <= HERON_TOL {
        let slack = triangle_slacks(base)
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        return Err(Error::DegenerateBase { radicand, slack });
    }
    let h: f64 = edges.apex.iter().map(|e| e.length).sum();
    let r = base.iter().product::<f64>() / (4.0 * radicand.sqrt());
    Ok(LemmaGap {
        h,
        p_semi: p,
        r,
        g: h - 3.0 * r,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CmVolume {
    pub cm_det: f64,
    pub volume: f64,
}

/// Volume from the bordered squared-distance determinant, `288 V² = det`.
pub fn cm_volume(edges: &TetraEdges) -> Result<CmVolume> {
    let cm_det = edges.raw().cayley_menger();
    if cm_det < -FEASIBILITY_TOL {
        return Err(Error::Infeasible { cm_det });
    }
    Ok(CmVolume {
        cm_det,
        volume: (cm_det.max(0.0) / 288.0).sqrt(),
    })
}

/// Intermediates of the closed-form volume, named after the sorted apex edges:
/// `D = v² + w² - b(v,w)²`, `E = u² + w² - b(u,w)²`, `F = u² + v² - b(u,v)²`
/// where `b(x,y)` is the base edge joining the feet of `x` and `y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedForm {
    pub d: f64,
    pub e: f64,
    pub f: f64,
    pub radicand: f64,
    pub volume: f64,
}

fn closed_form_terms(edges: &TetraEdges) -> (f64, f64, f64, f64) {
    let [u, v, w] = edges.apex;
    let b = |x: ApexEdge, y: ApexEdge| edges.base_between(x.qubit, y.qubit);
    let (u2, v2, w2) = (u.length.powi(2), v.length.powi(2), w.length.powi(2));
    let d = v2 + w2 - b(v, w).powi(2);
    let e = u2 + w2 - b(u, w).powi(2);
    let f = u2 + v2 - b(u, v).powi(2);
    let radicand = 4.0 * u2 * v2 * w2 - u2 * d * d - v2 * e * e - w2 * f * f + d * e * f;
    (d, e, f, radicand)
}

pub fn closed_form_volume(edges: &TetraEdges) -> Result<ClosedForm> {
    let (d, e, f, radicand) = closed_form_terms(edges);
    if radicand < -FEASIBILITY_TOL {
        return Err(Error::NegativeRadicand(radicand));
    }
    Ok(ClosedForm {
        d,
        e,
        f,
        radicand,
        volume: radicand.max(0.0).sqrt() / 12.0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TetraStatus {
    Ok,
    Degenerate,
    Infeasible,
}

impl TetraStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            TetraStatus::Ok => "ok",
            TetraStatus::Degenerate => "degenerate",
            TetraStatus::Infeasible => "infeasible",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TetraReport {
    #[serde(rename = "H")]
    pub h: f64,
    #[serde(rename = "p")]
    pub p_semi: f64,
    /// `None` when the base triangle is degenerate.
    #[serde(rename = "R")]
    pub r: Option<f64>,
    #[serde(rename = "G")]
    pub g: Option<f64>,
    #[serde(rename = "D")]
    pub d: f64,
    #[serde(rename = "E")]
    pub e: f64,
    #[serde(rename = "F")]
    pub f: f64,
    pub cm_det: f64,
    pub feasible: bool,
    /// Zero for degenerate tetrahedra, `None` when infeasible.
    pub volume: Option<f64>,
    pub status: TetraStatus,
}

/// Runs every geometric check on the edges. Never fails: degeneracy and
/// infeasibility are reported through `status`.
pub fn tetra_report(edges: &TetraEdges, eps_zero: f64) -> TetraReport {
    let base = edges.base_lengths();
    let (d, e, f, _) = closed_form_terms(edges);
    let cm_det = edges.raw().cayley_menger();
    let slack_ok = triangle_slacks(base).iter().all(|s| *s >= -FEASIBILITY_TOL);
    let feasible = slack_ok && cm_det >= -FEASIBILITY_TOL;
    let gap = lemma_gap(edges).ok();
    let h = edges.apex.iter().map(|e| e.length).sum();
    let apex_zero = edges.apex.iter().any(|e| e.length <= eps_zero);

    let (status, volume) = if apex_zero || gap.is_none() {
        (TetraStatus::Degenerate, Some(0.0))
    } else if !feasible {
        (TetraStatus::Infeasible, None)
    } else {
        (TetraStatus::Ok, Some((cm_det.max(0.0) / 288.0).sqrt()))
    };

    TetraReport {
        h,
        p_semi: base.iter().sum::<f64>() / 2.0,
        r: gap.map(|g| g.r),
        g: gap.map(|g| g.g),
        d,
        e,
        f,
        cm_det,
        feasible,
        volume,
        status,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ApexPartial {
    pub qubit: Qubit,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasePartial {
    pub feet: (Qubit, Qubit),
    pub cut: TwoTwoCut,
    pub value: f64,
}

/// Partial derivatives of the volume in each edge length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeGradient {
    /// In `u, v, w` order.
    pub apex: [ApexPartial; 3],
    /// In the same order as [`TetraEdges::base`].
    pub base: [BasePartial; 3],
}

impl EdgeGradient {
    pub fn values(&self) -> [f64; 6] {
        [
            self.apex[0].value,
            self.apex[1].value,
            self.apex[2].value,
            self.base[0].value,
            self.base[1].value,
            self.base[2].value,
        ]
    }

    pub fn min(&self) -> f64 {
        self.values().into_iter().fold(f64::INFINITY, f64::min)
    }
}

/// Central differences of the closed-form volume with step `1e-6·max(1, edge)`.
pub fn volume_gradient(edges: &TetraEdges) -> Result<EdgeGradient> {
    let gap = lemma_gap(edges)?;
    debug_assert!(gap.r.is_finite());
    cm_volume(edges)?;

    let raw = edges.raw();
    let volume_at = |r: Raw, edge: usize| -> Result<f64> {
        let rad = r.volume_radicand();
        if rad < -FEASIBILITY_TOL {
            return Err(Error::InfeasibleStencil { edge });
        }
        Ok(rad.max(0.0).sqrt() / 12.0)
    };

    let mut partials = [0.0; 6];
    for (i, slot) in partials.iter_mut().enumerate() {
        let x = raw.get(i);
        let h = 1e-6 * x.max(1.0);
        let plus = volume_at(raw.with(i, x + h), i)?;
        let minus = volume_at(raw.with(i, x - h), i)?;
        *slot = (plus - minus) / (2.0 * h);
    }

    let kept = edges.kept();
    let apex = edges.apex.map(|e| {
        let i = kept
            .iter()
            .position(|q| *q == e.qubit)
            .expect("apex foot is kept");
        ApexPartial {
            qubit: e.qubit,
            value: partials[i],
        }
    });
    let mut k = 3;
    let base = edges.base.map(|b| {
        let p = BasePartial {
            feet: b.feet,
            cut: b.cut,
            value: partials[k],
        };
        k += 1;
        p
    });
    Ok(EdgeGradient { apex, base })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn q(label: u8) -> Qubit {
        Qubit::new(label).unwrap()
    }

    fn psi2_edges() -> TetraEdges {
        let h5 = 5f64.sqrt() / 2.0;
        build_edges(&ConcurrenceProfile {
            c_one: [3f64.sqrt() / 2.0, 1.0, 1.0, 1.0],
            c_two: [h5, h5, h5],
        })
    }

    fn psi3_edges() -> TetraEdges {
        let h3 = 3f64.sqrt() / 2.0;
        build_edges(&ConcurrenceProfile {
            c_one: [h3, h3, 1.0, h3],
            c_two: [5f64.sqrt() / 2.0, 1.0, 1.0],
        })
    }

    fn regular() -> TetraEdges {
        TetraEdges::from_lengths(q(4), [1.0; 3], [1.0; 3])
    }

    #[test]
    fn determinant_small() {
        assert_abs_diff_eq!(determinant([[2.0, 1.0], [1.0, 3.0]]), 5.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            determinant([[0.0, 1.0, 2.0], [1.0, 0.0, 3.0], [4.0, -3.0, 8.0]]),
            -2.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn psi2_edges_layout() {
        let e = psi2_edges();
        assert_eq!(e.dropped, q(4));
        assert_eq!(e.apex.map(|a| a.qubit), [q(1), q(2), q(3)]);
        assert_abs_diff_eq!(e.apex[0].length, 3f64.sqrt() / 2.0, epsilon = 1e-15);
        assert_eq!(e.base[2].feet, (q(2), q(3)));
        assert_eq!(e.base[2].cut, TwoTwoCut::C14_23);
    }

    #[test]
    fn ghz_tie_break() {
        let e = build_edges(&ConcurrenceProfile {
            c_one: [1.0; 4],
            c_two: [1.0; 3],
        });
        assert_eq!(e.dropped, q(4));
        assert!(e.apex.iter().all(|a| a.length == 1.0));
        assert!(e.base.iter().all(|b| b.length == 1.0));
    }

    #[test]
    fn psi3_drops_qubit_three() {
        let e = psi3_edges();
        assert_eq!(e.dropped, q(3));
        let mut feet = e.apex.map(|a| a.qubit);
        feet.sort();
        assert_eq!(feet, [q(1), q(2), q(4)]);
        assert_eq!(e.base_between(q(1), q(2)), 5f64.sqrt() / 2.0);
        assert_eq!(e.base_between(q(1), q(4)), 1.0);
        assert_eq!(e.base_between(q(2), q(4)), 1.0);
    }

    #[test]
    fn gap_values() {
        assert_abs_diff_eq!(lemma_gap(&psi2_edges()).unwrap().g, 0.92953, epsilon = 1e-4);
        assert_abs_diff_eq!(lemma_gap(&psi3_edges()).unwrap().g, 0.78904, epsilon = 1e-4);

        // apex at the circumcenter of an equilateral base
        let s = 1.7;
        let e = TetraEdges::from_lengths(q(4), [s / 3f64.sqrt(); 3], [s; 3]);
        assert_abs_diff_eq!(lemma_gap(&e).unwrap().g, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(cm_volume(&e).unwrap().volume, 0.0, epsilon = 1e-7);
    }

    #[test]
    fn degenerate_base_signal() {
        let e = TetraEdges::from_lengths(q(4), [1.0; 3], [1.0, 2.0, 1.0]);
        match lemma_gap(&e) {
            Err(Error::DegenerateBase { radicand, slack }) => {
                assert_abs_diff_eq!(radicand, 0.0, epsilon = 1e-15);
                assert_abs_diff_eq!(slack, 0.0, epsilon = 1e-15);
            }
            other => panic!("expected degeneracy, got {other:?}"),
        }
    }

    #[test]
    fn regular_volume() {
        let v = 2f64.sqrt() / 12.0;
        assert_abs_diff_eq!(cm_volume(&regular()).unwrap().volume, v, epsilon = 1e-15);
        let cf = closed_form_volume(&regular()).unwrap();
        assert_eq!((cf.d, cf.e, cf.f), (1.0, 1.0, 1.0));
        assert_abs_diff_eq!(cf.volume, v, epsilon = 1e-15);
    }

    #[test]
    fn psi2_closed_form() {
        let cf = closed_form_volume(&psi2_edges()).unwrap();
        assert_abs_diff_eq!(cf.d, 0.75, epsilon = 1e-15);
        assert_abs_diff_eq!(cf.e, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(cf.f, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(cf.radicand, 2.265625, epsilon = 1e-12);
        assert_abs_diff_eq!(cf.volume, 0.1254, epsilon = 5e-4);
        assert_abs_diff_eq!(
            cm_volume(&psi2_edges()).unwrap().volume,
            cf.volume,
            epsilon = 1e-10
        );
    }

    #[test]
    fn psi3_closed_form() {
        let cf = closed_form_volume(&psi3_edges()).unwrap();
        let mut def = [cf.d, cf.e, cf.f];
        def.sort_by(f64::total_cmp);
        assert_abs_diff_eq!(def[0], 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(def[1], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(def[2], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(cf.volume, 0.0960, epsilon = 5e-4);
    }

    #[test]
    fn infeasible_edges() {
        // apex edges far too short to reach a unit base
        let e = TetraEdges::from_lengths(q(4), [0.1; 3], [1.0; 3]);
        assert!(matches!(cm_volume(&e), Err(Error::Infeasible { .. })));
        assert!(matches!(
            closed_form_volume(&e),
            Err(Error::NegativeRadicand(_))
        ));
        let r = tetra_report(&e, EPS_ZERO);
        assert!(!r.feasible);
        assert_eq!(r.status, TetraStatus::Infeasible);
        assert_eq!(r.volume, None);
    }

    #[test]
    fn gradient_psi2() {
        let g = volume_gradient(&psi2_edges()).unwrap();
        assert_abs_diff_eq!(g.apex[0].value, 0.1049, epsilon = 3e-4);
        assert_abs_diff_eq!(g.apex[1].value, 0.0692, epsilon = 3e-4);
        assert_abs_diff_eq!(g.apex[2].value, 0.0692, epsilon = 3e-4);
        let mut base = g.base.map(|b| b.value);
        base.sort_by(f64::total_cmp);
        for (got, want) in base.iter().zip([0.0387, 0.0387, 0.0542]) {
            assert_abs_diff_eq!(*got, want, epsilon = 3e-4);
        }
    }

    #[test]
    fn gradient_regular_symmetric() {
        let g = volume_gradient(&regular()).unwrap().values();
        for x in g {
            assert_abs_diff_eq!(x, g[0], epsilon = 1e-8);
        }
    }

    #[test]
    fn report_statuses() {
        let r = tetra_report(&psi2_edges(), EPS_ZERO);
        assert_eq!(r.status, TetraStatus::Ok);
        assert!(r.feasible);
        assert_abs_diff_eq!(r.cm_det, 288.0 * r.volume.unwrap().powi(2), epsilon = 1e-12);

        let flat = TetraEdges::from_lengths(q(4), [0.0, 1.0, 1.0], [1.0; 3]);
        let r = tetra_report(&flat, EPS_ZERO);
        assert_eq!(r.status, TetraStatus::Degenerate);
        assert_eq!(r.volume, Some(0.0));
        assert!(r.cm_det <= FEASIBILITY_TOL);
    }

    #[test]
    fn report_json_fields() {
        let v: serde_json::Value =
            serde_json::to_value(tetra_report(&regular(), EPS_ZERO)).unwrap();
        for key in [
            "H", "p", "R", "G", "D", "E", "F", "cm_det", "feasible", "volume",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
    }
}
