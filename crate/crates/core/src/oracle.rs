//! Independent cross-checks of the matrix path.
//!
//! On diagonal instances every mean, power and product acts entrywise, so
//! each link of each statement collapses to scalar closed forms. This module
//! evaluates those forms directly, with compensated sums and powers through
//! `exp`/`ln` (Newton-corrected square roots for half exponents), and
//! compares them with [`build_links`]. It also owns the built-in catalog of
//! witnesses and their replay.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inequalities::{build_links, evaluate_inequality, IneqId, Params, Variant};
use crate::matcore::SymMatrix;
use crate::report::ReportRecord;
use crate::sampler::{FamilyInstance, SpectralBand};
use crate::scalarcore::{callebaut_chain_terms, kantorovich, neumaier_sum, ExponentPair};

/// `x^p`, with a Newton step on the square root for `p = ±1/2`.
fn opow(x: f64, p: f64) -> f64 {
    if p == 0.0 {
        1.0
    } else if p.abs() == 0.5 {
        let r = x.sqrt();
        let r = 0.5 * (r + x / r);
        if p > 0.0 {
            r
        } else {
            1.0 / r
        }
    } else {
        (p * x.ln()).exp()
    }
}

/// `K(x)^p` through the oracle power.
fn kpow(x: f64, p: f64) -> Result<f64> {
    Ok(opow(kantorovich(x)?, p))
}

/// Scalar value of one link at one diagonal position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarLink {
    pub lhs: f64,
    pub rhs: f64,
}

impl ScalarLink {
    fn new(lhs: f64, rhs: f64) -> Self {
        ScalarLink { lhs, rhs }
    }

    pub fn gap(&self) -> f64 {
        self.rhs - self.lhs
    }
}

fn lin(terms: &[(f64, f64)]) -> f64 {
    neumaier_sum(terms.iter().map(|(c, x)| c * x))
}

/// `Σ x^{1−α} y^α · Σ x^α y^{1−α}`.
fn h_scalar(x: &[f64], y: &[f64], alpha: f64) -> f64 {
    let left = neumaier_sum(x.iter().zip(y).map(|(&a, &b)| opow(a, 1.0 - alpha) * opow(b, alpha)));
    let right = neumaier_sum(x.iter().zip(y).map(|(&a, &b)| opow(a, alpha) * opow(b, 1.0 - alpha)));
    left * right
}

/// `Σ x^{1−α} · Σ x^α`.
fn p_scalar(x: &[f64], alpha: f64) -> f64 {
    neumaier_sum(x.iter().map(|&a| opow(a, 1.0 - alpha))) * neumaier_sum(x.iter().map(|&a| opow(a, alpha)))
}

/// `a^α b^{1−α} + a^{1−α} b^α`.
fn t_scalar(a: f64, b: f64, alpha: f64) -> f64 {
    opow(a, alpha) * opow(b, 1.0 - alpha) + opow(a, 1.0 - alpha) * opow(b, alpha)
}

fn four_term_scalar(pair: &ExponentPair, f: impl Fn(f64) -> f64) -> Vec<ScalarLink> {
    let q = (3.0 - 2.0 * pair.s) / 4.0;
    let (f_half, f_s, f_t, f_q) = (f(0.5), f(pair.s), f(pair.t), f(q));
    let lhs = lin(&[(1.0 + pair.c_mid, f_s), (-pair.c_mid, f_half), (pair.r_prime, f_s), (pair.r_prime, f_half), (-2.0 * pair.r_prime, f_q)]);
    vec![
        ScalarLink::new(lhs, f_t),
        ScalarLink::new(2.0 * f_q, f_s + f_half),
        ScalarLink::new(pair.c_mid * f_half, pair.c_mid * f_s),
    ]
}

fn need_band(band: Option<&SpectralBand>) -> Result<&SpectralBand> {
    band.ok_or_else(|| Error::Hypothesis("statement needs a spectral band".into()))
}

/// Scalar links of a Hadamard-sum statement at one diagonal position, with
/// `x_j`, `y_j` the `k`-th diagonal entries of `A_j`, `B_j`.
pub fn hadamard_scalar_links(
    id: IneqId,
    x: &[f64],
    y: &[f64],
    params: &Params,
    variant: Variant,
    band: Option<&SpectralBand>,
) -> Result<Vec<ScalarLink>> {
    let pair = params.exponent_pair()?;
    let repaired = variant == Variant::Repaired;
    let h = |alpha: f64| h_scalar(x, y, alpha);
    let v = pair.half_distance();
    let printed = |band: &SpectralBand| kantorovich(opow(band.h(), 2.0 * pair.t - 1.0));
    Ok(match id {
        IneqId::Chain34rf => {
            let c = callebaut_chain_terms(x, y, &pair)?;
            vec![ScalarLink::new(c[0], c[1]), ScalarLink::new(c[1], c[2]), ScalarLink::new(c[2], c[3])]
        }
        IneqId::MojMo => {
            let c = (pair.t - pair.s) / (pair.s - 0.5);
            let (h_half, h_s) = (h(0.5), h(pair.s));
            let middle = lin(&[(1.0 + c, h_s), (-c, h_half)]);
            vec![ScalarLink::new(h_s, middle), ScalarLink::new(middle, h(pair.t))]
        }
        IneqId::HadMaman => {
            let band = need_band(band)?;
            let k = if repaired { 1.0 } else { opow(printed(band)?, pair.r_prime) };
            let h_t = h(pair.t);
            vec![ScalarLink::new(lin(&[(k, h(pair.s)), (pair.c_mid, h_t), (-pair.c_mid, h(0.5))]), h_t)]
        }
        IneqId::HadMaman2 => four_term_scalar(&pair, h),
        IneqId::CorBjIdentity => four_term_scalar(&pair, |alpha| p_scalar(x, alpha)),
        IneqId::RevHadMainth => {
            let band = need_band(band)?;
            let (k, c) =
                if repaired { (1.0, pair.c_rev_repair) } else { (opow(printed(band)?, -pair.r_prime), pair.c_rev_paper) };
            let h_t = h(pair.t);
            vec![ScalarLink::new(h_t, lin(&[(k, h(pair.s)), (c, h_t), (-c, h(0.5))]))]
        }
        IneqId::RevT1Remark => {
            let band = need_band(band)?;
            let s = pair.s;
            let r_prime = (2.0 - 2.0 * s).min(2.0 * s - 1.0);
            let (k, c) = if repaired { (1.0, 2.0 * s) } else { (kpow(band.h(), -r_prime)?, 2.0 * s - 1.0) };
            let h_0 = neumaier_sum(x.iter().copied()) * neumaier_sum(y.iter().copied());
            vec![ScalarLink::new(h_0, lin(&[(k, h(s)), (c, h_0), (-c, h(0.5))]))]
        }
        IneqId::PropHbounds => {
            let band = need_band(band)?;
            let (h_s, h_t) = (h(pair.s), h(pair.t));
            if repaired {
                let r = opow(band.cross_ratio(), v);
                let d_max = r + 1.0 / r - 2.0;
                vec![
                    ScalarLink::new(h_s, h_t),
                    ScalarLink::new(h_t, lin(&[(1.0, h_s), (pair.c_rev_repair * d_max / 2.0, h(0.5))])),
                ]
            } else {
                let term = |z: f64| {
                    let d = opow(z, 0.5) - opow(z, -0.5);
                    d * d
                };
                let k = printed(band)?;
                vec![
                    ScalarLink::new(lin(&[(opow(k, pair.r_prime), h_s), (pair.c_mid, term(band.h()))]), h_t),
                    ScalarLink::new(h_t, lin(&[(opow(k, -pair.r_prime), h_s), (pair.c_rev_paper, term(band.h_prime()))])),
                ]
            }
        }
        _ => return Err(Error::Domain(format!("{id} is not a Hadamard-sum statement"))),
    })
}

/// Scalar links of a pair statement at tensor position `(i, k)`, where `a`
/// is the `i`-th diagonal entry of `A`, `b` the `k`-th of `B`, and
/// `(a2, b2)` the entries `A_kk`, `B_ii` needed by the symmetric products.
#[allow(clippy::too_many_arguments)]
fn tensor_scalar_links(
    id: IneqId,
    (ai, bi): (f64, f64),
    (ak, bk): (f64, f64),
    params: &Params,
    variant: Variant,
    band: Option<&SpectralBand>,
) -> Result<Vec<ScalarLink>> {
    let repaired = variant == Variant::Repaired;
    Ok(match id {
        IneqId::Wada => {
            let alpha = params.alpha()?;
            let g = |a: f64, b: f64, w: f64| opow(a, 1.0 - w) * opow(b, w);
            let lower = g(ai, bi, 0.5) * g(ak, bk, 0.5);
            let middle = 0.5 * (g(ai, bi, alpha) * g(ak, bk, 1.0 - alpha) + g(ai, bi, 1.0 - alpha) * g(ak, bk, alpha));
            let top = 0.5 * (ai * bk + bi * ak);
            vec![ScalarLink::new(lower, middle), ScalarLink::new(middle, top)]
        }
        IneqId::TensorTool | IneqId::RevTensorDear => {
            let pair = params.exponent_pair()?;
            let band = need_band(band)?;
            let exponent = if repaired { pair.half_distance() } else { 2.0 * pair.t - 1.0 };
            let k = kantorovich(opow(band.h(), exponent))?;
            let (t_s, t_t) = (t_scalar(ai, bk, pair.s), t_scalar(ai, bk, pair.t));
            let half = 2.0 * opow(ai, 0.5) * opow(bk, 0.5);
            if id == IneqId::TensorTool {
                vec![ScalarLink::new(lin(&[(opow(k, pair.r_prime), t_s), (pair.c_mid, t_t), (-pair.c_mid, half)]), t_t)]
            } else {
                let c = if repaired { pair.c_rev_repair } else { pair.c_rev_paper };
                vec![ScalarLink::new(t_t, lin(&[(opow(k, -pair.r_prime), t_s), (c, t_t), (-c, half)]))]
            }
        }
        IneqId::ProofChain => {
            let p = params.proof_chain()?;
            let band = need_band(band)?;
            let kc = kpow(opow(band.h(), p.alpha), p.r_prime())?;
            let w = 1.0 - p.mu;
            let step = |x: f64, x_mu: f64, x_neg_mu: f64| {
                let rhs = x + 1.0 / x;
                ScalarLink::new(lin(&[(kc, x_mu), (kc, x_neg_mu), (w, rhs), (-2.0 * w, 1.0)]), rhs)
            };
            let x = opow(ai, p.alpha) * opow(bk, -p.alpha);
            let spectral = step(x, opow(x, p.mu), opow(x, -p.mu));
            let tensor = step(x, opow(ai, p.beta) * opow(bk, -p.beta), opow(ai, -p.beta) * opow(bk, p.beta));
            let pk = |pa: f64, pb: f64| opow(ai, pa) * opow(bk, pb);
            let c_rhs = pk(1.0 + p.alpha, 1.0 - p.alpha) + pk(1.0 - p.alpha, 1.0 + p.alpha);
            let c_mu = pk(1.0 + p.beta, 1.0 - p.beta) + pk(1.0 - p.beta, 1.0 + p.beta);
            let congruence = ScalarLink::new(lin(&[(kc, c_mu), (w, c_rhs), (-2.0 * w, ai * bk)]), c_rhs);
            vec![spectral, tensor, congruence]
        }
        _ => return Err(Error::Domain(format!("{id} is not a pair statement"))),
    })
}

/// Scalar links of `id` on a diagonal instance, one vector of links per
/// diagonal position of the statement's operator space.
///
/// For pair statements, positions follow the tensor ordering `i·d + k`,
/// except the spectral link of the proof chain, whose positions follow the
/// ascending eigenvalue ordering.
pub fn scalar_links(id: IneqId, inst: &FamilyInstance, params: &Params, variant: Variant) -> Result<Vec<Vec<ScalarLink>>> {
    if !inst.is_diagonal() {
        return Err(Error::Shape("the scalar path needs diagonal matrices".into()));
    }
    let d = inst.dim();
    let band = inst.band.as_ref();
    if id.is_hadamard_statement() {
        return (0..d)
            .map(|k| {
                let x: Vec<f64> = inst.a_list.iter().map(|m| m.get(k, k)).collect();
                let y: Vec<f64> = inst.b_list.iter().map(|m| m.get(k, k)).collect();
                hadamard_scalar_links(id, &x, &y, params, variant, band)
            })
            .collect();
    }
    let (a, b) = (inst.a_list[0].diag(), inst.b_list[0].diag());
    let mut out = Vec::with_capacity(d * d);
    for i in 0..d {
        for k in 0..d {
            out.push(tensor_scalar_links(id, (a[i], b[i]), (a[k], b[k]), params, variant, band)?);
        }
    }
    if id == IneqId::ProofChain {
        let (mut sa, mut sb) = (a.clone(), b.clone());
        sa.sort_by(f64::total_cmp);
        sb.sort_by(f64::total_cmp);
        for i in 0..d {
            for k in 0..d {
                let sorted = tensor_scalar_links(id, (sa[i], sb[i]), (sa[k], sb[k]), params, variant, band)?;
                out[i * d + k][0] = sorted[0];
            }
        }
    }
    Ok(out)
}

fn max_off_diagonal(m: &SymMatrix) -> f64 {
    let d = m.dim();
    let mut worst = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                worst = worst.max(m.get(i, j).abs());
            }
        }
    }
    worst
}

/// Largest absolute discrepancy between the matrix path and the scalar path
/// over every link, side and diagonal entry, including any off-diagonal mass
/// produced by the matrix path.
pub fn diagonal_equivalence(id: IneqId, inst: &FamilyInstance, params: &Params, variant: Variant) -> Result<f64> {
    let scalar = scalar_links(id, inst, params, variant)?;
    let links = build_links(id, inst, params, variant)?;
    let mut worst = 0.0f64;
    for (l, link) in links.iter().enumerate() {
        worst = worst.max(max_off_diagonal(&link.lhs)).max(max_off_diagonal(&link.rhs));
        for (k, entry) in scalar.iter().enumerate() {
            worst = worst.max((link.lhs.get(k, k) - entry[l].lhs).abs());
            worst = worst.max((link.rhs.get(k, k) - entry[l].rhs).abs());
        }
    }
    Ok(worst)
}

/// Gap of `id` on a diagonal instance by the scalar path alone: the smallest
/// `rhs − lhs` over links and positions.
pub fn scalar_gap_of(id: IneqId, inst: &FamilyInstance, params: &Params, variant: Variant) -> Result<f64> {
    Ok(scalar_links(id, inst, params, variant)?
        .iter()
        .flatten()
        .map(ScalarLink::gap)
        .fold(f64::INFINITY, f64::min))
}

/// A recorded instance together with the gap it must reproduce.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessRecord {
    #[serde(flatten)]
    pub record: ReportRecord,
    pub expected_gap: f64,
    pub tolerance: f64,
}

impl WitnessRecord {
    pub fn label(&self) -> String {
        format!("{}/{}", self.record.id, self.record.variant)
    }

    fn instance(&self) -> Result<&FamilyInstance> {
        self.record.witness.as_ref().ok_or_else(|| Error::Shape(format!("{} carries no instance", self.label())))
    }
}

/// Replay verdict for one record.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReplayOutcome {
    pub label: String,
    pub expected_gap: f64,
    pub tolerance: f64,
    pub matrix_gap: Option<f64>,
    /// Absent for non-diagonal instances.
    pub scalar_gap: Option<f64>,
    pub passed: bool,
    pub error: Option<String>,
}

fn witness_instance() -> FamilyInstance {
    let band = SpectralBand::new(1.0, 1.0, 4.0, 4.0).expect("valid band");
    FamilyInstance::pair(SymMatrix::scalar(4.0), SymMatrix::scalar(1.0), Some(band)).expect("valid pair")
}

/// The recorded 1×1 witnesses: `A = [4]`, `B = [1]`, band `(1, 1, 4, 4)`,
/// `(s, t) = (3/4, 1)`.
pub fn builtin_catalog() -> Vec<WitnessRecord> {
    let sqrt2 = std::f64::consts::SQRT_2;
    let entries: [(IneqId, Variant, f64, f64); 12] = [
        (IneqId::TensorTool, Variant::PaperLiteral, 4.5 - 3.75 * sqrt2, 1e-6),
        (IneqId::TensorTool, Variant::Repaired, 0.0, 1e-9),
        (IneqId::HadMaman, Variant::PaperLiteral, -1.0, 1e-9),
        (IneqId::HadMaman, Variant::Repaired, 0.0, 1e-9),
        (IneqId::RevTensorDear, Variant::PaperLiteral, 2.4 * sqrt2 - 4.5, 1e-6),
        (IneqId::RevTensorDear, Variant::Repaired, 0.5, 1e-9),
        (IneqId::RevHadMainth, Variant::PaperLiteral, -0.8, 1e-9),
        (IneqId::RevHadMainth, Variant::Repaired, 0.0, 1e-9),
        (IneqId::RevT1Remark, Variant::PaperLiteral, -0.8, 1e-9),
        (IneqId::RevT1Remark, Variant::Repaired, 0.0, 1e-9),
        (IneqId::PropHbounds, Variant::PaperLiteral, -2.125, 1e-9),
        (IneqId::PropHbounds, Variant::Repaired, 0.0, 1e-9),
    ];
    let inst = witness_instance();
    let params = Params::Pair { s: 0.75, t: 1.0 };
    entries
        .into_iter()
        .map(|(id, variant, expected_gap, tolerance)| {
            let report =
                evaluate_inequality(id, &inst, &params, variant, crate::matcore::DEFAULT_TOL).expect("built-in witness evaluates");
            let mut record = ReportRecord::from_report(&report, 0, 0);
            record.witness = Some(inst.clone());
            WitnessRecord { record, expected_gap, tolerance }
        })
        .collect()
}

fn replay_one(w: &WitnessRecord) -> Result<(f64, Option<f64>)> {
    let inst = w.instance()?;
    let (id, variant, params) = (w.record.id, w.record.variant, &w.record.params);
    let matrix = evaluate_inequality(id, inst, params, variant, crate::matcore::DEFAULT_TOL)?.min_gap;
    let scalar = if inst.is_diagonal() { Some(scalar_gap_of(id, inst, params, variant)?) } else { None };
    Ok((matrix, scalar))
}

/// Re-evaluates every record through the matrix path and, for diagonal
/// instances, the scalar path; both must land within the record's tolerance.
pub fn replay_witnesses(catalog: &[WitnessRecord]) -> Vec<ReplayOutcome> {
    catalog
        .iter()
        .map(|w| {
            let within = |g: f64| (g - w.expected_gap).abs() <= w.tolerance;
            let (matrix_gap, scalar_gap, error) = match replay_one(w) {
                Ok((m, s)) => (Some(m), s, None),
                Err(e) => (None, None, Some(e.to_string())),
            };
            let passed = error.is_none() && matrix_gap.is_some_and(within) && scalar_gap.is_none_or(within);
            ReplayOutcome {
                label: w.label(),
                expected_gap: w.expected_gap,
                tolerance: w.tolerance,
                matrix_gap,
                scalar_gap,
                passed,
                error,
            }
        })
        .collect()
}
