#![allow(dead_code)]

use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tetra_gme::lab::haar_unitary2;
use tetra_gme::PureState4;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Random normalized state; rejects near-zero draws.
pub fn any_state() -> impl Strategy<Value = PureState4> {
    prop::array::uniform32(-1.0f64..1.0).prop_filter_map("nonzero", |x| {
        let mut amps = [c(0.0, 0.0); 16];
        for (k, a) in amps.iter_mut().enumerate() {
            *a = c(x[2 * k], x[2 * k + 1]);
        }
        let n: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        (n > 1e-3).then(|| PureState4::new(amps).unwrap())
    })
}

pub fn any_qubit_state() -> impl Strategy<Value = [Complex64; 2]> {
    prop::array::uniform4(-1.0f64..1.0).prop_filter_map("nonzero", |x| {
        let n = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        (n > 1e-3).then(|| [c(x[0] / n, x[1] / n), c(x[2] / n, x[3] / n)])
    })
}

pub fn three_qubit_state() -> impl Strategy<Value = [Complex64; 8]> {
    prop::array::uniform16(-1.0f64..1.0).prop_filter_map("nonzero", |x| {
        let n = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        (n > 1e-3).then(|| std::array::from_fn(|k| c(x[2 * k] / n, x[2 * k + 1] / n)))
    })
}

/// `phi` on qubit 1 times `chi` on qubits 2-4.
pub fn product_1_234(phi: [Complex64; 2], chi: [Complex64; 8]) -> PureState4 {
    let mut amps = [c(0.0, 0.0); 16];
    for i in 0..2 {
        for j in 0..8 {
            amps[8 * i + j] = phi[i] * chi[j];
        }
    }
    PureState4::new(amps).unwrap()
}

pub fn random_locals(seed: u64) -> [[Complex64; 4]; 4] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    [(); 4].map(|_| haar_unitary2(&mut rng))
}

pub fn ket(terms: &[&str]) -> PureState4 {
    let t: Vec<_> = terms.iter().map(|k| (c(1.0, 0.0), *k)).collect();
    PureState4::from_kets(&t).unwrap()
}
