use nalgebra::{DMatrix, SymmetricEigen};

use callebaut::matcore::{sym_eigen, SymMatrix};
use callebaut::sampler::derive_rng;

fn random_symmetric(d: usize, seed: u64) -> SymMatrix {
    let mut rng = derive_rng(seed, d as u64);
    let raw: Vec<f64> = (0..d * d).map(|_| rng.gaussian()).collect();
    SymMatrix::from_row_major(d, raw).unwrap()
}

#[test]
fn eigenvalues_agree_with_nalgebra() {
    for seed in 0..40 {
        for d in [1, 2, 3, 5, 8, 16, 32] {
            let m = random_symmetric(d, seed);
            let ours = sym_eigen(&m).unwrap();
            let theirs = SymmetricEigen::new(DMatrix::from_row_slice(d, d, m.as_slice()));
            let mut reference: Vec<f64> = theirs.eigenvalues.iter().copied().collect();
            reference.sort_by(f64::total_cmp);
            let scale = m.frobenius_norm().max(1.0);
            for (a, b) in ours.eigenvalues.iter().zip(&reference) {
                assert!((a - b).abs() <= 1e-12 * scale, "d = {d}, seed = {seed}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn eigenvectors_diagonalise() {
    for seed in 0..20 {
        let m = random_symmetric(12, seed);
        let e = sym_eigen(&m).unwrap();
        let v = DMatrix::from_row_slice(12, 12, e.eigenvectors.as_slice());
        let a = DMatrix::from_row_slice(12, 12, m.as_slice());
        let d = v.transpose() * a * &v;
        for i in 0..12 {
            for j in 0..12 {
                let expected = if i == j { e.eigenvalues[i] } else { 0.0 };
                assert!((d[(i, j)] - expected).abs() <= 1e-12 * m.frobenius_norm());
            }
        }
    }
}
