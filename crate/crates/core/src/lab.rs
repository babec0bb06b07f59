//! Parameter sweeps over the family grids and seeded randomized campaigns.

use std::io::Write;
use std::str::FromStr;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::concurrence::{concurrence_profile, inequality_residuals, TwoTwoCut};
use crate::error::{Error, Result};
use crate::families::{
    benchmark_state, closed_form_profile, family_state, grid, Benchmark, Family, FamilySpec,
};
use crate::state::{ComplexAmp, PureState4, DIM};
use crate::tetra::{
    build_edges, closed_form_volume, tetra_report, volume_gradient, TetraStatus, EPS_ZERO,
    FEASIBILITY_TOL,
};

/// Environment variable capping the worker threads used by sweeps and scans.
pub const THREADS_ENV: &str = "TETRA_GME_THREADS";

/// Formats with 17 significant digits.
pub fn fmt17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        String::new()
    }
}

/// Runs `f` on a pool honoring [`THREADS_ENV`].
pub fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(0);
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamRange {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl ParamRange {
    pub fn point(x: f64) -> Self {
        ParamRange {
            start: x,
            stop: x,
            step: 1.0,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        grid(self.start, self.stop, self.step)
    }
}

impl FromStr for ParamRange {
    type Err = Error;

    /// `start:stop:step`, or a single number for a fixed value.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidRange(s.to_string());
        let parts: Vec<f64> = s
            .split(':')
            .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let r = match parts.as_slice() {
            [x] => ParamRange::point(*x),
            [start, stop, step] => ParamRange {
                start: *start,
                stop: *stop,
                step: *step,
            },
            _ => return Err(bad()),
        };
        let finite = r.start.is_finite() && r.stop.is_finite() && r.step.is_finite();
        if !finite || r.step <= 0.0 || r.start > r.stop {
            return Err(bad());
        }
        Ok(r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    G,
    Volume,
    Gradient,
    Audit,
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "g" => Ok(Quantity::G),
            "volume" => Ok(Quantity::Volume),
            "gradient" => Ok(Quantity::Gradient),
            "audit" => Ok(Quantity::Audit),
            _ => Err(Error::InvalidSweep(format!("unknown quantity {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SweepTarget {
    Family(Family),
    Benchmark(Benchmark),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub target: SweepTarget,
    /// One range per family parameter, in `a, b, c, d` order.
    pub ranges: Vec<ParamRange>,
    pub quantity: Quantity,
}

impl SweepConfig {
    pub fn family(family: Family, ranges: Vec<ParamRange>, quantity: Quantity) -> Self {
        SweepConfig {
            target: SweepTarget::Family(family),
            ranges,
            quantity,
        }
    }

    /// All grid points, last parameter varying fastest.
    pub fn points(&self) -> Result<Vec<Vec<f64>>> {
        match &self.target {
            SweepTarget::Benchmark(_) => {
                if !self.ranges.is_empty() {
                    return Err(Error::InvalidSweep(
                        "benchmark states take no parameters".into(),
                    ));
                }
                Ok(vec![vec![]])
            }
            SweepTarget::Family(f) => {
                if self.ranges.len() != f.arity() {
                    return Err(Error::Arity {
                        family: f.name(),
                        expected: f.arity(),
                        got: self.ranges.len(),
                    });
                }
                let mut points = vec![vec![]];
                for r in &self.ranges {
                    let vals = r.values();
                    points = points
                        .into_iter()
                        .flat_map(|p| {
                            vals.iter().map(move |v| {
                                let mut q = p.clone();
                                q.push(*v);
                                q
                            })
                        })
                        .collect();
                }
                Ok(points)
            }
        }
    }

    fn state_at(&self, params: &[f64]) -> Result<PureState4> {
        match &self.target {
            SweepTarget::Benchmark(b) => Ok(benchmark_state(*b)),
            SweepTarget::Family(f) => Ok(family_state(&FamilySpec::new(*f, params)?)?.state),
        }
    }
}

pub const PARAM_NAMES: [&str; 4] = ["a", "b", "c", "d"];

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub params: Vec<f64>,
    pub status: TetraStatus,
    /// One value per quantity column; `None` where undefined at this point.
    pub values: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub param_names: Vec<&'static str>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| *c == name)
    }

    /// Minimum of a column over rows with status `ok`.
    pub fn min_ok(&self, name: &str) -> Option<f64> {
        let c = self.column(name)?;
        self.rows
            .iter()
            .filter(|r| r.status == TetraStatus::Ok)
            .filter_map(|r| r.values[c])
            .reduce(f64::min)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header: Vec<&str> = self.param_names.clone();
        header.push("status");
        header.extend(self.columns.iter().copied());
        w.write_record(&header)?;
        for row in &self.rows {
            let mut rec: Vec<String> = row.params.iter().map(|p| fmt17(*p)).collect();
            rec.push(row.status.as_str().to_string());
            rec.extend(row.values.iter().map(|v| v.map(fmt17).unwrap_or_default()));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}

pub const G_COLUMNS: [&str; 3] = ["H", "R", "G"];
pub const VOLUME_COLUMNS: [&str; 3] = ["volume", "volume_closed_form", "cm_det"];
/// Apex partials in `u, v, w` order, base partials by the cut each base edge measures.
pub const GRADIENT_COLUMNS: [&str; 6] = [
    "dV_du",
    "dV_dv",
    "dV_dw",
    "dV_dC12_34",
    "dV_dC13_24",
    "dV_dC14_23",
];

/// One audit CSV line: `family, params, entry, paper_value, engine_value, agree`.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditRow {
    pub spec: FamilySpec,
    pub entry: &'static str,
    pub closed_form: Option<f64>,
    pub engine: f64,
    pub agree: Option<bool>,
}

pub fn write_audit_csv<W: Write>(rows: &[AuditRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "family",
        "params",
        "entry",
        "paper_value",
        "engine_value",
        "agree",
    ])?;
    for r in rows {
        let params = r
            .spec
            .params
            .iter()
            .map(|p| fmt17(*p))
            .collect::<Vec<_>>()
            .join(";");
        let agree = match r.agree {
            Some(true) => "true",
            Some(false) => "false",
            None => "na",
        };
        w.write_record([
            r.spec.family.name().to_string(),
            params,
            r.entry.to_string(),
            r.closed_form.map(fmt17).unwrap_or_default(),
            fmt17(r.engine),
            agree.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub enum SweepOutput {
    Table(SweepTable),
    Audit(Vec<AuditRow>),
}

impl SweepOutput {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        match self {
            SweepOutput::Table(t) => t.write_csv(out),
            SweepOutput::Audit(rows) => write_audit_csv(rows, out),
        }
    }

    pub fn table(&self) -> Option<&SweepTable> {
        match self {
            SweepOutput::Table(t) => Some(t),
            SweepOutput::Audit(_) => None,
        }
    }
}

fn sweep_row(config: &SweepConfig, params: Vec<f64>) -> SweepRow {
    let quantity_width = match config.quantity {
        Quantity::G => G_COLUMNS.len(),
        Quantity::Volume => VOLUME_COLUMNS.len(),
        Quantity::Gradient => GRADIENT_COLUMNS.len(),
        Quantity::Audit => 0,
    };
    let state = match config.state_at(&params) {
        Ok(s) => s,
        // zero-norm parameter combinations have no tetrahedron at all
        Err(_) => {
            return SweepRow {
                params,
                status: TetraStatus::Degenerate,
                values: vec![None; quantity_width],
            }
        }
    };
    let profile = concurrence_profile(&state).expect("canonical cuts");
    let edges = build_edges(&profile);
    let report = tetra_report(&edges, EPS_ZERO);
    let mut status = report.status;

    let values = match config.quantity {
        Quantity::G => vec![Some(report.h), report.r, report.g],
        Quantity::Volume => {
            let cf = closed_form_volume(&edges).ok().map(|c| c.volume);
            vec![report.volume, cf, Some(report.cm_det)]
        }
        Quantity::Gradient => {
            if status == TetraStatus::Ok {
                match volume_gradient(&edges) {
                    Ok(g) => {
                        let mut v: Vec<Option<f64>> =
                            g.apex.iter().map(|p| Some(p.value)).collect();
                        let mut by_cut = [None; 3];
                        for b in g.base {
                            by_cut[b.cut.index()] = Some(b.value);
                        }
                        v.extend(by_cut);
                        v
                    }
                    Err(_) => {
                        status = TetraStatus::Infeasible;
                        vec![None; quantity_width]
                    }
                }
            } else {
                vec![None; quantity_width]
            }
        }
        Quantity::Audit => unreachable!("audit sweeps are handled separately"),
    };
    SweepRow {
        params,
        status,
        values,
    }
}

/// Evaluates the configured quantity at every grid point. Rows come back in
/// grid order regardless of how they were scheduled.
pub fn sweep(config: &SweepConfig) -> Result<SweepOutput> {
    let points = config.points()?;
    let param_names = PARAM_NAMES[..points[0].len()].to_vec();

    if config.quantity == Quantity::Audit {
        let SweepTarget::Family(family) = config.target else {
            return Err(Error::InvalidSweep("audits need a family target".into()));
        };
        let audits: Vec<Result<Vec<AuditRow>>> = with_pool(|| {
            points
                .par_iter()
                .map(|p| {
                    let spec = FamilySpec::new(family, p)?;
                    let audit = closed_form_profile(&spec)?;
                    Ok(audit
                        .entries
                        .into_iter()
                        .map(|e| AuditRow {
                            spec: spec.clone(),
                            entry: e.entry,
                            closed_form: e.closed_form,
                            engine: e.engine,
                            agree: e.agree,
                        })
                        .collect())
                })
                .collect()
        });
        let mut rows = Vec::new();
        for a in audits {
            match a {
                Ok(r) => rows.extend(r),
                Err(Error::ZeroNorm) => {}
                Err(e) => return Err(e),
            }
        }
        return Ok(SweepOutput::Audit(rows));
    }

    let columns = match config.quantity {
        Quantity::G => G_COLUMNS.to_vec(),
        Quantity::Volume => VOLUME_COLUMNS.to_vec(),
        Quantity::Gradient => GRADIENT_COLUMNS.to_vec(),
        Quantity::Audit => unreachable!(),
    };
    let rows = with_pool(|| {
        points
            .into_par_iter()
            .map(|p| sweep_row(config, p))
            .collect()
    });
    Ok(SweepOutput::Table(SweepTable {
        param_names,
        columns,
        rows,
    }))
}

/// Haar-random state for sample `index` under root `seed`: normalized
/// standard complex Gaussian amplitudes from a ChaCha stream keyed by the index.
pub fn haar_state(seed: u64, index: u64) -> PureState4 {
    let mut rng = sample_rng(seed, index);
    let mut amps = [ComplexAmp::new(0.0, 0.0); DIM];
    for a in amps.iter_mut() {
        *a = ComplexAmp::new(
            StandardNormal.sample(&mut rng),
            StandardNormal.sample(&mut rng),
        );
    }
    PureState4::new(amps).expect("gaussian vector is nonzero")
}

fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Haar-random 2×2 unitary, row-major.
pub fn haar_unitary2<R: rand::Rng>(rng: &mut R) -> [Complex64; 4] {
    let mut g = || Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng));
    let (a, c) = (g(), g());
    let (b, d) = (g(), g());
    // Gram-Schmidt on the columns (a, c) and (b, d)
    let n0 = (a.norm_sqr() + c.norm_sqr()).sqrt();
    let (a, c) = (a / n0, c / n0);
    let proj = a.conj() * b + c.conj() * d;
    let (b, d) = (b - proj * a, d - proj * c);
    let n1 = (b.norm_sqr() + d.norm_sqr()).sqrt();
    [a, b / n1, c, d / n1]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Polygon,
    Triangle,
    Feasibility,
}

/// A sample that broke one of the scanned inequalities, with its amplitudes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub kind: ViolationKind,
    pub index: u64,
    pub value: f64,
    pub amplitudes: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extrema {
    pub min_polygon_slack: f64,
    pub min_triangle_slack: f64,
    pub min_cm_det: f64,
    pub min_volume: f64,
    pub max_volume: f64,
    pub min_gmc: f64,
    pub max_gmc: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub count: u64,
    pub seed: u64,
    pub polygon_violations: usize,
    pub triangle_violations: usize,
    pub feasibility_failures: usize,
    /// Samples with a negative volume partial. Tetrahedron volume is not
    /// monotone in its edges in general, so this is a tally, not a violation.
    pub negative_gradient_samples: usize,
    pub degenerate_samples: usize,
    pub extrema: Extrema,
    pub counterexamples: Vec<Counterexample>,
}

impl ScanReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scan report serializes")
    }
}

struct Sample {
    min_polygon: f64,
    min_triangle: f64,
    cm_det: f64,
    status: TetraStatus,
    volume: Option<f64>,
    gmc: f64,
    negative_gradient: bool,
    amps: Vec<[f64; 2]>,
}

fn scan_one(seed: u64, index: u64) -> Sample {
    let state = haar_state(seed, index);
    let profile = concurrence_profile(&state).expect("canonical cuts");
    let res = inequality_residuals(&profile);
    let edges = build_edges(&profile);
    let report = tetra_report(&edges, EPS_ZERO);
    let negative_gradient = report.status == TetraStatus::Ok
        && volume_gradient(&edges)
            .map(|g| g.min() < 0.0)
            .unwrap_or(false);
    Sample {
        min_polygon: res.min_polygon(),
        min_triangle: res.min_triangle(),
        cm_det: report.cm_det,
        status: report.status,
        volume: report.volume,
        gmc: profile.min(),
        negative_gradient,
        amps: state.to_document().amplitudes,
    }
}

/// Samples `count` Haar-random states and checks the polygon and triangle
/// inequalities and tetrahedron realizability on each.
pub fn random_scan(count: u64, seed: u64) -> Result<ScanReport> {
    if count == 0 {
        return Err(Error::InvalidSweep("count must be at least 1".into()));
    }
    let samples: Vec<Sample> = with_pool(|| {
        (0..count)
            .into_par_iter()
            .map(|i| scan_one(seed, i))
            .collect()
    });

    let mut report = ScanReport {
        count,
        seed,
        polygon_violations: 0,
        triangle_violations: 0,
        feasibility_failures: 0,
        negative_gradient_samples: 0,
        degenerate_samples: 0,
        extrema: Extrema {
            min_polygon_slack: f64::INFINITY,
            min_triangle_slack: f64::INFINITY,
            min_cm_det: f64::INFINITY,
            min_volume: f64::INFINITY,
            max_volume: f64::NEG_INFINITY,
            min_gmc: f64::INFINITY,
            max_gmc: f64::NEG_INFINITY,
        },
        counterexamples: Vec::new(),
    };
    for (index, s) in (0..count).zip(samples) {
        let ex = &mut report.extrema;
        ex.min_polygon_slack = ex.min_polygon_slack.min(s.min_polygon);
        ex.min_triangle_slack = ex.min_triangle_slack.min(s.min_triangle);
        ex.min_cm_det = ex.min_cm_det.min(s.cm_det);
        ex.min_gmc = ex.min_gmc.min(s.gmc);
        ex.max_gmc = ex.max_gmc.max(s.gmc);
        if let Some(v) = s.volume {
            ex.min_volume = ex.min_volume.min(v);
            ex.max_volume = ex.max_volume.max(v);
        }
        if s.status == TetraStatus::Degenerate {
            report.degenerate_samples += 1;
        }
        if s.negative_gradient {
            report.negative_gradient_samples += 1;
        }

        let mut record = |kind, value| {
            report.counterexamples.push(Counterexample {
                kind,
                index,
                value,
                amplitudes: s.amps.clone(),
            })
        };
        if s.min_polygon < -FEASIBILITY_TOL {
            record(ViolationKind::Polygon, s.min_polygon);
        }
        if s.min_triangle < -FEASIBILITY_TOL {
            record(ViolationKind::Triangle, s.min_triangle);
        }
        if s.cm_det < -FEASIBILITY_TOL || s.status == TetraStatus::Infeasible {
            record(ViolationKind::Feasibility, s.cm_det);
        }
    }
    for c in &report.counterexamples {
        match c.kind {
            ViolationKind::Polygon => report.polygon_violations += 1,
            ViolationKind::Triangle => report.triangle_violations += 1,
            ViolationKind::Feasibility => report.feasibility_failures += 1,
        }
    }
    Ok(report)
}

/// Largest change under random local unitaries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LuDeviation {
    pub max_concurrence: f64,
    pub max_volume: f64,
}

impl LuDeviation {
    pub fn max(&self) -> f64 {
        self.max_concurrence.max(self.max_volume)
    }
}

pub fn lu_invariance(state: &PureState4, trials: usize, seed: u64) -> Result<LuDeviation> {
    if trials == 0 {
        return Err(Error::InvalidSweep("trials must be at least 1".into()));
    }
    let reference = concurrence_profile(state)?;
    let ref_volume = tetra_report(&build_edges(&reference), EPS_ZERO).volume;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = LuDeviation {
        max_concurrence: 0.0,
        max_volume: 0.0,
    };
    for _ in 0..trials {
        let u = [(); 4].map(|_| haar_unitary2(&mut rng));
        let rotated = state.apply_local(&u);
        let profile = concurrence_profile(&rotated)?;
        for (x, y) in profile.entries().iter().zip(reference.entries()) {
            out.max_concurrence = out.max_concurrence.max((x - y).abs());
        }
        let volume = tetra_report(&build_edges(&profile), EPS_ZERO).volume;
        let dv = match (volume, ref_volume) {
            (Some(v), Some(r)) => (v - r).abs(),
            (None, None) => 0.0,
            _ => f64::INFINITY,
        };
        out.max_volume = out.max_volume.max(dv);
    }
    Ok(out)
}

/// Base partial for a given cut, if that cut is a base edge.
pub fn gradient_for_cut(row: &SweepRow, table: &SweepTable, cut: TwoTwoCut) -> Option<f64> {
    let name = GRADIENT_COLUMNS[3 + cut.index()];
    table.column(name).and_then(|c| row.values[c])
}
