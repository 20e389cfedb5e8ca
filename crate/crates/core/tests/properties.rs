use proptest::prelude::*;

use callebaut::inequalities::{evaluate_inequality, IneqId, Params, Variant};
use callebaut::matcore::{compress, geo_mean, hadamard, kron, loewner_gap, spectral_pow, sym_eigen, Matrix, SymMatrix, DEFAULT_TOL};
use callebaut::oracle::diagonal_equivalence;
use callebaut::sampler::{derive_rng, sample_family, spd_in_band, FamilyInstance, SpectralBand};
use callebaut::scalarcore::{
    chain_callebaut, kantorovich, lemma_four_term, lemma_sum, lemma_ttt1, rev_sum, rev_ttt, rev_young, young_classical,
    young_wu_zhao, young_zuo, ExponentPair, ScalarParams,
};

fn bands() -> Vec<SpectralBand> {
    [[1.0, 1.0, 4.0, 4.0], [0.5, 1.0, 2.0, 8.0], [0.1, 0.2, 5.0, 10.0]]
        .iter()
        .map(|b| SpectralBand::new(b[0], b[1], b[2], b[3]).unwrap())
        .collect()
}

/// `(s, t)` on the step-1/16 grid over both branches.
fn grid_pair() -> impl Strategy<Value = (f64, f64)> {
    prop_oneof![
        (9u32..=16).prop_flat_map(|i| (Just(i), i..=16u32)),
        (0u32..=7).prop_flat_map(|i| (Just(i), 0..=i)),
    ]
    .prop_map(|(i, j)| (i as f64 / 16.0, j as f64 / 16.0))
}

fn family(seed: u64, n: usize, d: usize, band: usize) -> FamilyInstance {
    sample_family(n, d, &bands()[band], &mut derive_rng(seed, 0), false).unwrap()
}

fn to_matrix(m: &SymMatrix) -> Matrix {
    Matrix::from_row_major(m.dim(), m.as_slice().to_vec()).unwrap()
}

fn log_uniform() -> impl Strategy<Value = f64> {
    (-3.0f64..3.0).prop_map(|e| 10f64.powf(e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn kantorovich_is_symmetric(x in log_uniform()) {
        let (k, k_inv) = (kantorovich(x).unwrap(), kantorovich(1.0 / x).unwrap());
        prop_assert!((k - k_inv).abs() <= 1e-15 * k.max(1.0) * 4.0);
        prop_assert!(k >= 1.0);
    }

    #[test]
    fn scalar_statements_hold(a in log_uniform(), b in log_uniform(), nu in 0.0f64..1.0) {
        prop_assume!((nu - 0.5).abs() >= 1e-6);
        let p = ScalarParams::new(a, b, nu).unwrap();
        let floor = -1e-12 * (a + b);
        prop_assert!(young_classical(&p) >= floor);
        prop_assert!(young_zuo(&p) >= floor);
        prop_assert!(young_wu_zhao(&p).unwrap() >= floor);
        prop_assert!(lemma_sum(&p).unwrap() >= floor);
        prop_assert!(rev_young(&p).unwrap() >= floor);
        prop_assert!(rev_sum(&p).unwrap() >= floor);
        if nu > 0.0 {
            prop_assert!(lemma_four_term(&p).unwrap() >= floor);
            prop_assert!(lemma_ttt1(a, nu).unwrap() >= -1e-12 * (a + 1.0 / a));
        }
        if nu < 0.5 {
            prop_assert!(rev_ttt(a, nu).unwrap() >= -1e-12 * (a + 1.0 / a));
        }
    }

    #[test]
    fn wu_zhao_is_tight_at_quarters(a in log_uniform(), b in log_uniform()) {
        for nu in [0.25, 0.75] {
            let g = young_wu_zhao(&ScalarParams::new(a, b, nu).unwrap()).unwrap();
            prop_assert!(g.abs() <= 1e-12 * (a + b), "nu = {}: {}", nu, g);
        }
    }

    #[test]
    fn callebaut_chain_holds(
        xs in prop::collection::vec((1e-3f64..1e3, 1e-3f64..1e3), 1..=6),
        (s, t) in grid_pair(),
    ) {
        let (x, y): (Vec<f64>, Vec<f64>) = xs.into_iter().unzip();
        let pair = ExponentPair::new(s, t).unwrap();
        let scale: f64 = x.iter().sum::<f64>() * y.iter().sum::<f64>();
        for g in chain_callebaut(&x, &y, &pair).unwrap() {
            prop_assert!(g >= -1e-12 * scale);
        }
        if s == t {
            prop_assert!(chain_callebaut(&x, &y, &pair).unwrap()[1].abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn compress_of_kron_is_hadamard(seed in any::<u64>(), d in 1usize..=6) {
        let mut rng = derive_rng(seed, 1);
        let a = spd_in_band(d, 0.5, 3.0, &mut rng, false).unwrap();
        let b = spd_in_band(d, 0.1, 9.0, &mut rng, false).unwrap();
        prop_assert_eq!(compress(&kron(&a, &b).unwrap(), d).unwrap(), hadamard(&a, &b).unwrap());
    }

    #[test]
    fn square_root_squares_back(seed in any::<u64>(), d in 1usize..=8) {
        let a = spd_in_band(d, 0.01, 100.0, &mut derive_rng(seed, 2), false).unwrap();
        let r = to_matrix(&spectral_pow(&a, 0.5).unwrap());
        let sq = r.matmul(&r);
        let err = sq.as_slice().iter().zip(a.as_slice()).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
        prop_assert!(err <= 1e-9 * a.frobenius_norm());
    }

    #[test]
    fn mean_of_equal_operators(seed in any::<u64>(), d in 1usize..=4, alpha in 0.0f64..=1.0) {
        let a = spd_in_band(d, 0.2, 5.0, &mut derive_rng(seed, 3), false).unwrap();
        let g = geo_mean(&a, &a, alpha).unwrap();
        let err = (&g - &a).max_abs();
        prop_assert!(err <= 1e-10 * a.max_abs());
    }

    #[test]
    fn mean_is_symmetric_in_weights(seed in any::<u64>(), d in 1usize..=4, alpha in 0.0f64..=1.0) {
        // A #_α B = B #_{1−α} A
        let mut rng = derive_rng(seed, 4);
        let a = spd_in_band(d, 0.2, 5.0, &mut rng, false).unwrap();
        let b = spd_in_band(d, 0.5, 2.0, &mut rng, false).unwrap();
        let lhs = geo_mean(&a, &b, alpha).unwrap();
        let rhs = geo_mean(&b, &a, 1.0 - alpha).unwrap();
        prop_assert!((&lhs - &rhs).max_abs() <= 1e-9 * lhs.max_abs());
    }

    #[test]
    fn band_containment(seed in any::<u64>(), n in 1usize..=3, d in 1usize..=4, band in 0usize..3, pin in any::<bool>()) {
        let b = bands()[band];
        let f = sample_family(n, d, &b, &mut derive_rng(seed, 5), pin).unwrap();
        for m in &f.a_list {
            let e = sym_eigen(m).unwrap();
            prop_assert!(e.min_eigenvalue() >= b.a_min() * (1.0 - 1e-12) && e.max_eigenvalue() <= b.a_max() * (1.0 + 1e-12));
        }
        for m in &f.b_list {
            let e = sym_eigen(m).unwrap();
            prop_assert!(e.min_eigenvalue() >= b.b_min() * (1.0 - 1e-12) && e.max_eigenvalue() <= b.b_max() * (1.0 + 1e-12));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn chain_34rf_holds(seed in any::<u64>(), n in 1usize..=3, d in 1usize..=4, band in 0usize..3, (s, t) in grid_pair()) {
        let r = evaluate_inequality(IneqId::Chain34rf, &family(seed, n, d, band), &Params::Pair { s, t }, Variant::PaperLiteral, DEFAULT_TOL).unwrap();
        prop_assert!(r.satisfied(), "{:?}", r.links);
    }

    #[test]
    fn kantorovich_free_statements_hold(seed in any::<u64>(), n in 1usize..=3, d in 1usize..=4, band in 0usize..3, (s, t) in grid_pair()) {
        let inst = family(seed, n, d, band);
        for id in [IneqId::MojMo, IneqId::HadMaman2, IneqId::CorBjIdentity] {
            let r = evaluate_inequality(id, &inst, &Params::Pair { s, t }, Variant::PaperLiteral, DEFAULT_TOL).unwrap();
            prop_assert!(r.satisfied(), "{}: {:?}", id, r.links);
        }
    }

    #[test]
    fn wada_holds(seed in any::<u64>(), d in 1usize..=4, band in 0usize..3, k in 0u32..=8) {
        let r = evaluate_inequality(IneqId::Wada, &family(seed, 1, d, band), &Params::Alpha { alpha: k as f64 / 8.0 }, Variant::PaperLiteral, DEFAULT_TOL).unwrap();
        prop_assert!(r.satisfied(), "{:?}", r.links);
    }

    #[test]
    fn repaired_forms_hold(seed in any::<u64>(), n in 1usize..=3, d in 1usize..=4, band in 0usize..3, (s, t) in grid_pair()) {
        let inst = family(seed, n, d, band);
        let pair_inst = family(seed, 1, d, band);
        let p = Params::Pair { s, t };
        for id in [IneqId::HadMaman, IneqId::RevHadMainth, IneqId::PropHbounds] {
            prop_assert!(evaluate_inequality(id, &inst, &p, Variant::Repaired, DEFAULT_TOL).unwrap().satisfied(), "{}", id);
        }
        for id in [IneqId::TensorTool, IneqId::RevTensorDear] {
            prop_assert!(evaluate_inequality(id, &pair_inst, &p, Variant::Repaired, DEFAULT_TOL).unwrap().satisfied(), "{}", id);
        }
        if t == 1.0 {
            prop_assert!(evaluate_inequality(IneqId::RevT1Remark, &inst, &p, Variant::Repaired, DEFAULT_TOL).unwrap().satisfied());
        }
        if s != t {
            let chain = Params::Chain { alpha: 2.0 * t - 1.0, beta: 2.0 * s - 1.0 };
            prop_assert!(evaluate_inequality(IneqId::ProofChain, &pair_inst, &chain, Variant::PaperLiteral, DEFAULT_TOL).unwrap().satisfied());
        }
    }

    #[test]
    fn had_maman_is_scale_covariant(seed in any::<u64>(), n in 1usize..=3, d in 1usize..=4, band in 0usize..3, (s, t) in grid_pair()) {
        let inst = family(seed, n, d, band);
        let scaled = inst.scaled(10.0).unwrap();
        let p = Params::Pair { s, t };
        for v in [Variant::PaperLiteral, Variant::Repaired] {
            let r1 = evaluate_inequality(IneqId::HadMaman, &inst, &p, v, DEFAULT_TOL).unwrap();
            let r10 = evaluate_inequality(IneqId::HadMaman, &scaled, &p, v, DEFAULT_TOL).unwrap();
            prop_assert!((r10.rhs_norm - 100.0 * r1.rhs_norm).abs() <= 1e-10 * r10.rhs_norm);
            prop_assert!((r10.min_gap - 100.0 * r1.min_gap).abs() <= 1e-9 * r10.rhs_norm);
            if r1.gap.rel_gap.abs() > 1e-8 {
                prop_assert_eq!(r1.satisfied(), r10.satisfied());
            }
        }
    }

    #[test]
    fn diagonal_instances_match_scalar_forms(seed in any::<u64>(), n in 1usize..=3, d in 1usize..=4, band in 0usize..3, (s, t) in grid_pair()) {
        let b = bands()[band];
        let mut rng = derive_rng(seed, 6);
        let mut draw = |lo: f64, hi: f64| SymMatrix::diagonal(&(0..d).map(|_| rng.uniform(lo, hi)).collect::<Vec<_>>());
        let (mut a, mut bl) = (Vec::new(), Vec::new());
        for _ in 0..n {
            a.push(draw(b.a_min(), b.a_max()));
            bl.push(draw(b.b_min(), b.b_max()));
        }
        let inst = FamilyInstance::new(a, bl, Some(b)).unwrap();
        let p = Params::Pair { s, t };
        for id in [IneqId::Chain34rf, IneqId::MojMo, IneqId::HadMaman, IneqId::HadMaman2, IneqId::CorBjIdentity, IneqId::RevHadMainth, IneqId::PropHbounds] {
            for &v in id.variants() {
                let scale = evaluate_inequality(id, &inst, &p, v, DEFAULT_TOL).unwrap().links.iter().map(|l| l.rhs_norm).fold(1.0, f64::max);
                let err = diagonal_equivalence(id, &inst, &p, v).unwrap();
                prop_assert!(err <= 1e-10 * scale, "{}/{}: {} (scale {})", id, v, err, scale);
            }
        }
    }
}

#[test]
fn exponent_pair_r_prime_vanishes_at_endpoints() {
    for s in [0.625, 0.75, 1.0, 0.0, 0.25, 0.375] {
        assert_eq!(ExponentPair::new(s, s).unwrap().r_prime, 0.0);
    }
    assert!(ExponentPair::new(0.5, 0.75).is_err());
    assert!(ExponentPair::new(0.75, 0.5).is_err());
}

#[test]
fn loewner_gap_of_sampled_identity_difference() {
    let a = spd_in_band(4, 1.0, 2.0, &mut derive_rng(1, 1), true).unwrap();
    let g = loewner_gap(&a, &(&a + &SymMatrix::identity(4)), DEFAULT_TOL).unwrap();
    assert!((g.min_eig - 1.0).abs() < 1e-12);
}
