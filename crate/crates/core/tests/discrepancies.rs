//! Every listed discrepancy is reproduced by the engine.

use tetra_gme::discrepancies::{find, KNOWN};
use tetra_gme::families::{closed_form_profile, Subfamily};
use tetra_gme::lab::{sweep, ParamRange, Quantity, SweepConfig, GRADIENT_COLUMNS};
use tetra_gme::tetra::lemma_gap;
use tetra_gme::*;

fn engine(id: &str) -> f64 {
    find(id).unwrap().engine
}

fn profile(b: Benchmark) -> ConcurrenceProfile {
    concurrence_profile(&benchmark_state(b)).unwrap()
}

#[test]
fn ids_are_unique() {
    for (i, d) in KNOWN.iter().enumerate() {
        assert!(KNOWN[i + 1..].iter().all(|e| e.id != d.id));
        assert!((d.reference - d.engine).abs() > 1e-6, "{}", d.id);
    }
}

#[test]
fn psi_b_single_qubit_entries() {
    let p = profile(Benchmark::PsiB);
    assert!((p.c_one[1] - engine("psiB-c2")).abs() < 1e-12);
    assert!((p.c_one[2] - engine("psiB-c3")).abs() < 1e-12);
    let audit = closed_form_profile(&FamilySpec::new(Family::F3, &[]).unwrap()).unwrap();
    let off: Vec<_> = audit.disagreements().map(|e| e.entry).collect();
    assert_eq!(off, ["C2", "C3"]);
    assert!((audit.entry("C3").unwrap().engine - engine("f3-closed-forms")).abs() < 1e-12);
}

#[test]
fn psi_b_gap() {
    let g = lemma_gap(&build_edges(&profile(Benchmark::PsiB)))
        .unwrap()
        .g;
    assert!((g - engine("g-psi3")).abs() < 1e-6);
}

#[test]
fn psi_d_volume() {
    let v = v1234(&benchmark_state(Benchmark::PsiD))
        .unwrap()
        .volume()
        .unwrap();
    assert!((v - engine("volume-psiD")).abs() < 1e-6);
}

#[test]
fn f5_closed_form() {
    let audit = closed_form_profile(&FamilySpec::new(Family::F5, &[1.0]).unwrap()).unwrap();
    let c1 = audit.entry("C1").unwrap();
    let d = find("f5-closed-forms").unwrap();
    assert!((c1.closed_form.unwrap() - d.reference).abs() < 1e-6);
    assert!((c1.engine - d.engine).abs() < 1e-6);
}

#[test]
fn f9_norm() {
    let fs = family_state(&FamilySpec::new(Family::F9, &[1.0, 2.0, 0.5, 0.3]).unwrap()).unwrap();
    let d = find("f9-norm").unwrap();
    assert!((fs.printed_norm_factor - d.reference).abs() < 1e-6);
    assert!((fs.direct_norm_factor - d.engine).abs() < 1e-6);
}

#[test]
fn f9_equal_parameters() {
    let s = family_state(&FamilySpec::new(Family::F9, &[0.7; 4]).unwrap())
        .unwrap()
        .state;
    let r = v1234(&s).unwrap();
    for c in r.profile.c_one {
        assert!((c - engine("f9-epr-apex")).abs() < 1e-12);
    }
    assert_eq!(r.volume(), Some(0.0));
}

#[test]
fn f6_gap_near_origin() {
    let cfg = SweepConfig::family(
        Family::F6,
        vec!["0.1:3:0.1".parse().unwrap(), "0.1:3:0.1".parse().unwrap()],
        Quantity::G,
    );
    let t = sweep(&cfg).unwrap();
    let min = t.table().unwrap().min_ok("G").unwrap();
    assert!((min - engine("g-psi6-origin")).abs() < 1e-6);
}

#[test]
fn f7_gradient_sign() {
    let r = "0:3:0.1".parse::<ParamRange>().unwrap();
    let t = sweep(&SweepConfig::family(
        Family::F7,
        vec![r, r],
        Quantity::Gradient,
    ))
    .unwrap();
    let t = t.table().unwrap();
    let min = GRADIENT_COLUMNS
        .iter()
        .filter_map(|c| t.min_ok(c))
        .fold(f64::INFINITY, f64::min);
    assert!((min - engine("gradient-sign")).abs() < 1e-5, "{min}");
    assert!(Subfamily::F8CZero.family() == Family::F8);
}
