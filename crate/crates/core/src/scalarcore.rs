//! Kantorovich constant, exponent bookkeeping and the scalar inequalities.
//!
//! Every statement is evaluated as a signed gap `RHS − LHS`: a nonnegative
//! gap certifies the instance. All gaps are accumulated with Neumaier
//! summation so that equality cases land at rounding-noise level.

use serde::{Deserialize, Serialize};

use crate::band::SpectralBand;
use crate::error::{Error, Result};

/// Exclusion radius around the removed points `t = 1/2` and `ν = 1/2`.
pub const DELTA_HALF: f64 = 1e-6;

/// Kantorovich constant `K(x, 2) = (x + 1)² / (4x)`.
pub fn kantorovich(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("Kantorovich constant needs x > 0, got {x}")));
    }
    Ok((x + 1.0) * (x + 1.0) / (4.0 * x))
}

/// Minimum of `K(·, 2)` over `[lo, hi]`.
///
/// `K` decreases on `(0, 1]` and increases on `[1, ∞)`, so the minimum is 1
/// whenever the interval straddles 1 and an endpoint value otherwise.
pub fn kantorovich_min_over_interval(lo: f64, hi: f64) -> Result<f64> {
    if !(lo > 0.0) || lo > hi {
        return Err(Error::Domain(format!("need 0 < lo <= hi, got [{lo}, {hi}]")));
    }
    if lo <= 1.0 && 1.0 <= hi {
        return Ok(1.0);
    }
    Ok(kantorovich(lo)?.min(kantorovich(hi)?))
}

/// Neumaier-compensated sum.
pub fn neumaier_sum<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for x in terms {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Young-type parameters `(a, b, ν)` with `r = min{ν, 1−ν}`,
/// `r′ = min{2r, 1−2r}` and `nu_max = max{ν, 1−ν}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarParams {
    pub a: f64,
    pub b: f64,
    pub nu: f64,
    pub r: f64,
    pub r_prime: f64,
    pub nu_max: f64,
}

impl ScalarParams {
    pub fn new(a: f64, b: f64, nu: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
            return Err(Error::Hypothesis(format!("need a, b > 0, got a = {a}, b = {b}")));
        }
        if !(0.0..=1.0).contains(&nu) {
            return Err(Error::Hypothesis(format!("need nu in [0, 1], got {nu}")));
        }
        let r = nu.min(1.0 - nu);
        Ok(ScalarParams { a, b, nu, r, r_prime: (2.0 * r).min(1.0 - 2.0 * r), nu_max: nu.max(1.0 - nu) })
    }

    fn require_nu_not_half(&self) -> Result<()> {
        if (self.nu - 0.5).abs() < DELTA_HALF {
            return Err(Error::Hypothesis(format!("nu = {} lies in the excluded zone around 1/2", self.nu)));
        }
        Ok(())
    }

    fn kantorovich_sqrt_ratio(&self) -> f64 {
        let x = (self.a / self.b).sqrt();
        (x + 1.0) * (x + 1.0) / (4.0 * x)
    }

    fn mean(&self) -> f64 {
        self.a.powf(self.nu) * self.b.powf(1.0 - self.nu)
    }

    fn mean_swapped(&self) -> f64 {
        self.a.powf(1.0 - self.nu) * self.b.powf(self.nu)
    }

    fn sqrt_diff_sq(&self) -> f64 {
        let d = self.a.sqrt() - self.b.sqrt();
        d * d
    }
}

/// Which side of 1/2 an exponent pair lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// `1 ≥ t ≥ s > 1/2`
    High,
    /// `0 ≤ t ≤ s < 1/2`
    Low,
}

/// Mean exponents `(s, t)` on an admissible branch together with the derived
/// coefficients used throughout the refinements and reverses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentPair {
    pub s: f64,
    pub t: f64,
    pub branch: Branch,
    /// `(t − s) / (t − 1/2)`
    pub c_mid: f64,
    /// `min{(t − s)/(t − 1/2), (s − 1/2)/(t − 1/2)}`
    pub r_prime: f64,
    /// `(s − 1/2) / (t − 1/2)`, the printed reverse coefficient.
    pub c_rev_paper: f64,
    /// `(t + s − 1) / (t − 1/2)`, the reverse coefficient obtained by tracking
    /// `2(1 − ν)` through the substitution `ν = (1 − μ)/2`.
    pub c_rev_repair: f64,
}

impl ExponentPair {
    pub fn new(s: f64, t: f64) -> Result<Self> {
        let branch = if 1.0 >= t && t >= s && s > 0.5 {
            Branch::High
        } else if 0.0 <= t && t <= s && s < 0.5 {
            Branch::Low
        } else {
            return Err(Error::Hypothesis(format!(
                "(s, t) = ({s}, {t}) is on neither branch 1 >= t >= s > 1/2 nor 0 <= t <= s < 1/2"
            )));
        };
        let dt = t - 0.5;
        if dt.abs() < DELTA_HALF {
            return Err(Error::Hypothesis(format!("t = {t} lies in the excluded zone around 1/2")));
        }
        let c_mid = (t - s) / dt;
        let c_rev_paper = (s - 0.5) / dt;
        Ok(ExponentPair {
            s,
            t,
            branch,
            c_mid,
            r_prime: c_mid.min(c_rev_paper),
            c_rev_paper,
            c_rev_repair: (t + s - 1.0) / dt,
        })
    }

    /// `μ = (2s − 1)/(2t − 1) = |s − 1/2| / |t − 1/2|`.
    pub fn mu(&self) -> f64 {
        self.c_rev_paper
    }

    /// `|t − 1/2|`, the exponent of the proof-tracked Kantorovich argument.
    pub fn half_distance(&self) -> f64 {
        (self.t - 0.5).abs()
    }
}

/// Exponents `(α, β)` of the tensor proof chain, with `μ = β/α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProofChainParams {
    pub alpha: f64,
    pub beta: f64,
    pub mu: f64,
}

impl ProofChainParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite()) || !(0.0 < beta.abs() && beta.abs() < alpha.abs()) || alpha * beta <= 0.0 {
            return Err(Error::Hypothesis(format!(
                "(alpha, beta) = ({alpha}, {beta}) violates 0 < |beta| < |alpha|, alpha*beta > 0"
            )));
        }
        Ok(ProofChainParams { alpha, beta, mu: beta / alpha })
    }

    /// `min{1 − μ, μ}`
    pub fn r_prime(&self) -> f64 {
        (1.0 - self.mu).min(self.mu)
    }
}

/// The scalar statements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ScalarIneqId {
    YoungClassical,
    YoungZuo,
    YoungWuZhao,
    LemmaSum,
    LemmaTtt1,
    Lemma4term,
    RevYoung,
    RevSum,
    RevTtt,
    ChainCallebaut,
    CorVow13Scalar,
    CorOkmnScalar,
    CorRevScalar,
}

impl ScalarIneqId {
    pub const ALL: [ScalarIneqId; 13] = [
        ScalarIneqId::YoungClassical,
        ScalarIneqId::YoungZuo,
        ScalarIneqId::YoungWuZhao,
        ScalarIneqId::LemmaSum,
        ScalarIneqId::LemmaTtt1,
        ScalarIneqId::Lemma4term,
        ScalarIneqId::RevYoung,
        ScalarIneqId::RevSum,
        ScalarIneqId::RevTtt,
        ScalarIneqId::ChainCallebaut,
        ScalarIneqId::CorVow13Scalar,
        ScalarIneqId::CorOkmnScalar,
        ScalarIneqId::CorRevScalar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScalarIneqId::YoungClassical => "YOUNG_CLASSICAL",
            ScalarIneqId::YoungZuo => "YOUNG_ZUO",
            ScalarIneqId::YoungWuZhao => "YOUNG_WU_ZHAO",
            ScalarIneqId::LemmaSum => "LEMMA_SUM",
            ScalarIneqId::LemmaTtt1 => "LEMMA_TTT1",
            ScalarIneqId::Lemma4term => "LEMMA_4TERM",
            ScalarIneqId::RevYoung => "REV_YOUNG",
            ScalarIneqId::RevSum => "REV_SUM",
            ScalarIneqId::RevTtt => "REV_TTT",
            ScalarIneqId::ChainCallebaut => "CHAIN_CALLEBAUT",
            ScalarIneqId::CorVow13Scalar => "COR_VOW13_SCALAR",
            ScalarIneqId::CorOkmnScalar => "COR_OKMN_SCALAR",
            ScalarIneqId::CorRevScalar => "COR_REV_SCALAR",
        }
    }
}

/// Inputs for [`scalar_gap`]; which shape applies depends on the statement.
#[derive(Debug, Clone, Copy)]
pub enum ScalarArgs<'a> {
    /// `(a, b, ν)` for the Young family and its two-term lemmas.
    Young(ScalarParams),
    /// `(a, μ)` for the `b = 1/a` specialisation with `μ ∈ (0, 1]`.
    Ttt1 { a: f64, mu: f64 },
    /// `(a, ν)` for the reverse `b = 1/a` specialisation with `ν ∈ [0, 1/2)`.
    RevTtt { a: f64, nu: f64 },
    /// Positive tuples with raw exponents; corollaries with a Kantorovich
    /// factor also need the band.
    Tuples { x: &'a [f64], y: &'a [f64], s: f64, t: f64, band: Option<SpectralBand> },
}

/// Signed gaps `RHS − LHS` of a scalar statement; chains return one gap per
/// link.
pub fn scalar_gap(id: ScalarIneqId, args: &ScalarArgs<'_>) -> Result<Vec<f64>> {
    use ScalarIneqId::*;
    let wrong = || Error::Hypothesis(format!("{} does not accept these arguments", id.name()));
    match (id, *args) {
        (YoungClassical, ScalarArgs::Young(p)) => Ok(vec![young_classical(&p)]),
        (YoungZuo, ScalarArgs::Young(p)) => Ok(vec![young_zuo(&p)]),
        (YoungWuZhao, ScalarArgs::Young(p)) => young_wu_zhao(&p).map(|g| vec![g]),
        (LemmaSum, ScalarArgs::Young(p)) => lemma_sum(&p).map(|g| vec![g]),
        (Lemma4term, ScalarArgs::Young(p)) => lemma_four_term(&p).map(|g| vec![g]),
        (RevYoung, ScalarArgs::Young(p)) => rev_young(&p).map(|g| vec![g]),
        (RevSum, ScalarArgs::Young(p)) => rev_sum(&p).map(|g| vec![g]),
        (LemmaTtt1, ScalarArgs::Ttt1 { a, mu }) => lemma_ttt1(a, mu).map(|g| vec![g]),
        (RevTtt, ScalarArgs::RevTtt { a, nu }) => rev_ttt(a, nu).map(|g| vec![g]),
        (ChainCallebaut, ScalarArgs::Tuples { x, y, s, t, .. }) => {
            chain_callebaut(x, y, &ExponentPair::new(s, t)?).map(|g| g.to_vec())
        }
        (CorVow13Scalar, ScalarArgs::Tuples { x, y, s, t, band }) => {
            cor_vow13_scalar(x, y, s, t, &band.ok_or_else(|| Error::Hypothesis("COR_VOW13_SCALAR needs a band".into()))?)
                .map(|g| g.to_vec())
        }
        (CorOkmnScalar, ScalarArgs::Tuples { x, y, s, t, .. }) => cor_okmn_scalar(x, y, s, t).map(|g| vec![g]),
        (CorRevScalar, ScalarArgs::Tuples { x, y, s, t, band }) => cor_rev_scalar(
            x,
            y,
            &ExponentPair::new(s, t)?,
            &band.ok_or_else(|| Error::Hypothesis("COR_REV_SCALAR needs a band".into()))?,
        )
        .map(|g| vec![g]),
        _ => Err(wrong()),
    }
}

/// `a^ν b^{1−ν} ≤ νa + (1−ν)b`
pub fn young_classical(p: &ScalarParams) -> f64 {
    neumaier_sum([p.nu * p.a, (1.0 - p.nu) * p.b, -p.mean()])
}

/// `K(√(a/b))^r a^ν b^{1−ν} ≤ νa + (1−ν)b`
pub fn young_zuo(p: &ScalarParams) -> f64 {
    neumaier_sum([p.nu * p.a, (1.0 - p.nu) * p.b, -p.kantorovich_sqrt_ratio().powf(p.r) * p.mean()])
}

/// `K(√(a/b))^{r′} a^ν b^{1−ν} + r(√a − √b)² ≤ νa + (1−ν)b`, `ν ≠ 1/2`.
pub fn young_wu_zhao(p: &ScalarParams) -> Result<f64> {
    p.require_nu_not_half()?;
    Ok(neumaier_sum([
        p.nu * p.a,
        (1.0 - p.nu) * p.b,
        -p.kantorovich_sqrt_ratio().powf(p.r_prime) * p.mean(),
        -p.r * p.sqrt_diff_sq(),
    ]))
}

/// `K(√(a/b))^{r′}(a^ν b^{1−ν} + a^{1−ν} b^ν) + 2r(√a − √b)² ≤ a + b`, `ν ≠ 1/2`.
pub fn lemma_sum(p: &ScalarParams) -> Result<f64> {
    p.require_nu_not_half()?;
    let k = p.kantorovich_sqrt_ratio().powf(p.r_prime);
    Ok(neumaier_sum([p.a, p.b, -k * p.mean(), -k * p.mean_swapped(), -2.0 * p.r * p.sqrt_diff_sq()]))
}

/// `K(a)^{r′}(a^μ + a^{−μ}) + (1−μ)(a + 1/a − 2) ≤ a + 1/a` with
/// `r′ = min{1−μ, μ}` and `μ ∈ (0, 1]`.
pub fn lemma_ttt1(a: f64, mu: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Hypothesis(format!("need a > 0, got {a}")));
    }
    if !(mu > 0.0 && mu <= 1.0) {
        return Err(Error::Hypothesis(format!("need mu in (0, 1], got {mu}")));
    }
    let r_prime = (1.0 - mu).min(mu);
    let k = kantorovich(a)?.powf(r_prime);
    let inv = 1.0 / a;
    Ok(neumaier_sum([
        a,
        inv,
        -k * a.powf(mu),
        -k * a.powf(-mu),
        -(1.0 - mu) * a,
        -(1.0 - mu) * inv,
        2.0 * (1.0 - mu),
    ]))
}

/// The four-term refinement
/// `a^ν b^{1−ν} + a^{1−ν} b^ν + 2r(√a−√b)² + r′(2√(ab) + a + b − 2a^{1/4}b^{3/4} − 2a^{3/4}b^{1/4}) ≤ a + b`
/// for `ν ∈ (0, 1)`.
pub fn lemma_four_term(p: &ScalarParams) -> Result<f64> {
    if !(p.nu > 0.0 && p.nu < 1.0) {
        return Err(Error::Hypothesis(format!("need nu in (0, 1), got {}", p.nu)));
    }
    let (qa, qb) = (p.a.sqrt().sqrt(), p.b.sqrt().sqrt());
    let bracket = [
        2.0 * (p.a * p.b).sqrt(),
        p.a,
        p.b,
        -2.0 * qa * qb * qb * qb,
        -2.0 * qa * qa * qa * qb,
    ];
    let mut terms = vec![p.a, p.b, -p.mean(), -p.mean_swapped(), -2.0 * p.r * p.sqrt_diff_sq()];
    terms.extend(bracket.iter().map(|x| -p.r_prime * x));
    Ok(neumaier_sum(terms))
}

/// `νa + (1−ν)b ≤ K(√(a/b))^{−r′} a^ν b^{1−ν} + nu_max(√a − √b)²`, `ν ≠ 1/2`.
pub fn rev_young(p: &ScalarParams) -> Result<f64> {
    p.require_nu_not_half()?;
    Ok(neumaier_sum([
        p.kantorovich_sqrt_ratio().powf(-p.r_prime) * p.mean(),
        p.nu_max * p.sqrt_diff_sq(),
        -p.nu * p.a,
        -(1.0 - p.nu) * p.b,
    ]))
}

/// `a + b ≤ K(√(a/b))^{−r′}(a^ν b^{1−ν} + a^{1−ν} b^ν) + 2 nu_max (√a − √b)²`.
pub fn rev_sum(p: &ScalarParams) -> Result<f64> {
    p.require_nu_not_half()?;
    let k = p.kantorovich_sqrt_ratio().powf(-p.r_prime);
    Ok(neumaier_sum([k * p.mean(), k * p.mean_swapped(), 2.0 * p.nu_max * p.sqrt_diff_sq(), -p.a, -p.b]))
}

/// `a + 1/a ≤ K(a)^{−r′}(a^{1−2ν} + a^{−(1−2ν)}) + 2(1−ν)(√a − 1/√a)²` for
/// `ν ∈ [0, 1/2)`.
pub fn rev_ttt(a: f64, nu: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Hypothesis(format!("need a > 0, got {a}")));
    }
    if !(0.0..0.5).contains(&nu) || 0.5 - nu < DELTA_HALF {
        return Err(Error::Hypothesis(format!("need nu in [0, 1/2), got {nu}")));
    }
    let r = nu;
    let r_prime = (2.0 * r).min(1.0 - 2.0 * r);
    let k = kantorovich(a)?.powf(-r_prime);
    let e = 1.0 - 2.0 * nu;
    let inv = 1.0 / a;
    let w = 2.0 * (1.0 - nu);
    Ok(neumaier_sum([k * a.powf(e), k * a.powf(-e), w * a, w * inv, -2.0 * w, -a, -inv]))
}

fn check_tuples(x: &[f64], y: &[f64]) -> Result<()> {
    if x.is_empty() || x.len() != y.len() {
        return Err(Error::Hypothesis(format!("tuples must be non-empty and of equal length ({} vs {})", x.len(), y.len())));
    }
    if x.iter().chain(y).any(|v| !(*v > 0.0) || !v.is_finite()) {
        return Err(Error::Hypothesis("tuple entries must be positive".into()));
    }
    Ok(())
}

fn check_tuples_in_band(x: &[f64], y: &[f64], band: &SpectralBand) -> Result<()> {
    let tol = 1e-10;
    let inside = |v: f64, lo: f64, hi: f64| v >= lo * (1.0 - tol) && v <= hi * (1.0 + tol);
    if !x.iter().all(|&v| inside(v, band.a_min(), band.a_max())) || !y.iter().all(|&v| inside(v, band.b_min(), band.b_max())) {
        return Err(Error::Hypothesis("tuples do not satisfy m' <= y_j <= m < M <= x_j <= M'".into()));
    }
    Ok(())
}

/// `Σ_j x_j^{(1+u)/2} y_j^{(1−u)/2} · Σ_j x_j^{(1−u)/2} y_j^{(1+u)/2}`.
pub fn callebaut_product(x: &[f64], y: &[f64], u: f64) -> f64 {
    let (p, q) = ((1.0 + u) / 2.0, (1.0 - u) / 2.0);
    let left = neumaier_sum(x.iter().zip(y).map(|(&a, &b)| a.powf(p) * b.powf(q)));
    let right = neumaier_sum(x.iter().zip(y).map(|(&a, &b)| a.powf(q) * b.powf(p)));
    left * right
}

fn sqrt_sum_sq(x: &[f64], y: &[f64]) -> f64 {
    let s = neumaier_sum(x.iter().zip(y).map(|(&a, &b)| (a * b).sqrt()));
    s * s
}

/// The four members of the Callebaut chain, ascending:
/// `(Σ√(x y))²`, the `s`-product, the `t`-product and `Σx · Σy`.
///
/// Exponents are evaluated at `u = 2s − 1` and `w = 2t − 1`, so both
/// branches of the pair map onto the chain's native domain
/// `0 ≤ |u| ≤ |w| ≤ 1`.
pub fn callebaut_chain_terms(x: &[f64], y: &[f64], pair: &ExponentPair) -> Result<[f64; 4]> {
    check_tuples(x, y)?;
    Ok([
        sqrt_sum_sq(x, y),
        callebaut_product(x, y, 2.0 * pair.s - 1.0),
        callebaut_product(x, y, 2.0 * pair.t - 1.0),
        neumaier_sum(x.iter().copied()) * neumaier_sum(y.iter().copied()),
    ])
}

/// Gaps of the three links of the Callebaut chain.
pub fn chain_callebaut(x: &[f64], y: &[f64], pair: &ExponentPair) -> Result<[f64; 3]> {
    let c = callebaut_chain_terms(x, y, pair)?;
    Ok([c[1] - c[0], c[2] - c[1], c[3] - c[2]])
}

fn corollary_branch(s: f64, t: f64) -> Result<()> {
    if (-1.0 <= t && t <= s && s < 0.0) || (1.0 >= t && t >= s && s > 0.0) {
        Ok(())
    } else {
        Err(Error::Hypothesis(format!("(s, t) = ({s}, {t}) is on neither branch -1 <= t <= s < 0 nor 1 >= t >= s > 0")))
    }
}

/// Scalar form of the Kantorovich refinement, exactly as printed:
/// `P(s) ≤ K((M/m)^t)^{r′} P(s) + ((t−s)/t)(P(t) − (Σ√(xy))²) ≤ P(t)` with
/// `r′ = min{(t−s)/t, s/t}`. Returns the two link gaps.
pub fn cor_vow13_scalar(x: &[f64], y: &[f64], s: f64, t: f64, band: &SpectralBand) -> Result<[f64; 2]> {
    check_tuples(x, y)?;
    corollary_branch(s, t)?;
    check_tuples_in_band(x, y, band)?;
    let r_prime = ((t - s) / t).min(s / t);
    let k = kantorovich(band.h().powf(t))?.powf(r_prime);
    let (ps, pt, q) = (callebaut_product(x, y, s), callebaut_product(x, y, t), sqrt_sum_sq(x, y));
    let c = (t - s) / t;
    let middle = [k * ps, c * pt, -c * q];
    let first = neumaier_sum(middle.iter().copied().chain([-ps]));
    let second = neumaier_sum([pt].into_iter().chain(middle.iter().map(|m| -m)));
    Ok([first, second])
}

/// Scalar form of the Kantorovich-free refinement, exactly as printed, with
/// `r′ = min{(t−s)/t, (s−1)/(t−1)}`.
pub fn cor_okmn_scalar(x: &[f64], y: &[f64], s: f64, t: f64) -> Result<f64> {
    check_tuples(x, y)?;
    corollary_branch(s, t)?;
    if (t - 1.0).abs() < DELTA_HALF {
        return Err(Error::Hypothesis("printed r' has (s-1)/(t-1), undefined at t = 1".into()));
    }
    let r_prime = ((t - s) / t).min((s - 1.0) / (t - 1.0));
    let c = (t - s) / t;
    let (ps, pt, q) = (callebaut_product(x, y, s), callebaut_product(x, y, t), sqrt_sum_sq(x, y));
    // Σx^{(2+s)/4}y^{(2−s)/4} · Σx^{(2−s)/4}y^{(2+s)/4} is the product at u = s/2.
    let quarter = callebaut_product(x, y, s / 2.0);
    Ok(neumaier_sum([pt, -ps, -c * ps, c * q, -r_prime * ps, -r_prime * q, 2.0 * r_prime * quarter]))
}

/// Scalar reverse, exactly as printed:
/// `P(t) ≤ K((M/m)^{2t−1})^{−r′} P(s) + ((s−1/2)/(t−1/2))(P(t) − (Σ√(xy))²)`
/// with the pair on the usual branches.
pub fn cor_rev_scalar(x: &[f64], y: &[f64], pair: &ExponentPair, band: &SpectralBand) -> Result<f64> {
    check_tuples(x, y)?;
    check_tuples_in_band(x, y, band)?;
    let k = kantorovich(band.h().powf(2.0 * pair.t - 1.0))?.powf(-pair.r_prime);
    let (ps, pt, q) = (callebaut_product(x, y, pair.s), callebaut_product(x, y, pair.t), sqrt_sum_sq(x, y));
    let c = pair.c_rev_paper;
    Ok(neumaier_sum([k * ps, c * pt, -c * q, -pt]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kantorovich_values() {
        assert_eq!(kantorovich(1.0).unwrap(), 1.0);
        assert_eq!(kantorovich(2.0).unwrap(), 1.125);
        assert_eq!(kantorovich(0.5).unwrap(), 1.125);
        assert!(kantorovich(0.0).is_err());
        assert!(kantorovich(-1.0).is_err());
    }

    #[test]
    fn kantorovich_interval_minimum() {
        assert_eq!(kantorovich_min_over_interval(0.5, 2.0).unwrap(), 1.0);
        assert_eq!(kantorovich_min_over_interval(2.0, 4.0).unwrap(), 1.125);
        let v = kantorovich_min_over_interval(0.25, 1.0 / 3.0).unwrap();
        assert!((v - 4.0 / 3.0).abs() < 1e-15);
        assert!(kantorovich_min_over_interval(2.0, 1.0).is_err());
    }

    #[test]
    fn neumaier_recovers_cancellation() {
        assert_eq!(neumaier_sum([1.0, 1e100, 1.0, -1e100]), 2.0);
    }

    #[test]
    fn exponent_pair_branches() {
        let p = ExponentPair::new(0.75, 1.0).unwrap();
        assert_eq!(p.branch, Branch::High);
        assert_eq!(p.c_mid, 0.5);
        assert_eq!(p.r_prime, 0.5);
        assert_eq!(p.c_rev_paper, 0.5);
        assert_eq!(p.c_rev_repair, 1.5);

        let p = ExponentPair::new(0.25, 0.0).unwrap();
        assert_eq!(p.branch, Branch::Low);
        assert_eq!(p.c_mid, 0.5);
        assert_eq!(p.c_rev_repair, 1.5);

        assert!(ExponentPair::new(0.75, 0.6).is_err());
        assert!(ExponentPair::new(0.25, 0.75).is_err());
        assert!(ExponentPair::new(0.5, 0.5).is_err());
        assert!(ExponentPair::new(0.5 + 1e-7, 0.5 + 2e-7).is_err());
    }

    #[test]
    fn r_prime_vanishes_at_s_equal_t() {
        for (s, t) in [(0.75, 0.75), (0.9, 0.9), (0.25, 0.25), (0.0, 0.0)] {
            assert_eq!(ExponentPair::new(s, t).unwrap().r_prime, 0.0);
        }
        // At the other end, r' = 0 when s sits on 1/2; the pair itself excludes
        // s = 1/2, so probe the coefficient that vanishes there.
        let p = ExponentPair::new(0.5 + 1e-3, 1.0).unwrap();
        assert!(p.r_prime < 3e-3);
    }

    #[test]
    fn proof_chain_params() {
        let p = ProofChainParams::new(1.0, 0.5).unwrap();
        assert_eq!(p.mu, 0.5);
        assert_eq!(p.r_prime(), 0.5);
        assert!(ProofChainParams::new(-1.0, -0.25).is_ok());
        assert!(ProofChainParams::new(1.0, 1.0).is_err());
        assert!(ProofChainParams::new(1.0, -0.5).is_err());
        assert!(ProofChainParams::new(1.0, 0.0).is_err());
    }

    #[test]
    fn wu_zhao_equality_at_quarter() {
        let p = ScalarParams::new(4.0, 1.0, 0.25).unwrap();
        assert!(young_wu_zhao(&p).unwrap().abs() < 1e-12 * 5.0);
        let p = ScalarParams::new(3.0, 3.0, 0.1).unwrap();
        assert!(young_wu_zhao(&p).unwrap().abs() < 1e-12 * 6.0);
    }

    #[test]
    fn ttt1_equality_example() {
        // 1.25 * 2.5 + 0.5 * 2.25 = 4.25 = 4 + 1/4
        assert!(lemma_ttt1(4.0, 0.5).unwrap().abs() < 1e-14);
    }

    #[test]
    fn four_term_equality_example() {
        let p = ScalarParams::new(4.0, 1.0, 0.25).unwrap();
        assert!(lemma_four_term(&p).unwrap().abs() < 1e-14);
    }

    #[test]
    fn rev_ttt_example() {
        // 0.8 * 2.5 + 1.5 * 2.25 − 4.25
        assert!((rev_ttt(4.0, 0.25).unwrap() - 1.125).abs() < 1e-14);
    }

    #[test]
    fn chain_with_equal_tuples_is_flat() {
        let pair = ExponentPair::new(0.25, 0.125).unwrap();
        let g = chain_callebaut(&[1.0, 1.0], &[1.0, 1.0], &pair).unwrap();
        assert_eq!(g, [0.0, 0.0, 0.0]);
    }

    #[test]
    fn hypothesis_errors_name_the_condition() {
        let p = ScalarParams::new(2.0, 1.0, 0.5).unwrap();
        let e = young_wu_zhao(&p).unwrap_err();
        assert!(e.to_string().contains("nu"));
        assert!(ScalarParams::new(-1.0, 1.0, 0.2).is_err());
        assert!(lemma_ttt1(2.0, 0.0).is_err());
        assert!(rev_ttt(2.0, 0.5).is_err());
        assert!(lemma_four_term(&ScalarParams::new(1.0, 2.0, 0.0).unwrap()).is_err());
        assert!(chain_callebaut(&[1.0], &[1.0, 2.0], &ExponentPair::new(0.75, 1.0).unwrap()).is_err());
    }

    #[test]
    fn dispatcher_matches_typed_functions() {
        let p = ScalarParams::new(7.0, 0.3, 0.2).unwrap();
        assert_eq!(scalar_gap(ScalarIneqId::RevSum, &ScalarArgs::Young(p)).unwrap(), vec![rev_sum(&p).unwrap()]);
        assert!(scalar_gap(ScalarIneqId::RevSum, &ScalarArgs::Ttt1 { a: 1.0, mu: 0.5 }).is_err());
        let g = scalar_gap(
            ScalarIneqId::ChainCallebaut,
            &ScalarArgs::Tuples { x: &[1.0, 2.0], y: &[3.0, 0.5], s: 0.75, t: 1.0, band: None },
        )
        .unwrap();
        assert_eq!(g.len(), 3);
    }

    #[test]
    fn vow13_corollary_fails_on_single_pair() {
        // n = 1: every product is x y, so the middle term is K^{r'} x y > x y.
        let band = SpectralBand::new(1.0, 1.0, 4.0, 4.0).unwrap();
        let g = cor_vow13_scalar(&[4.0], &[1.0], 0.5, 1.0, &band).unwrap();
        assert!(g[0] > 0.0);
        assert!((g[1] - (4.0 - 1.25 * 4.0)).abs() < 1e-14);
    }

    #[test]
    fn rev_corollary_fails_on_single_pair() {
        let band = SpectralBand::new(1.0, 1.0, 4.0, 4.0).unwrap();
        let pair = ExponentPair::new(0.75, 1.0).unwrap();
        let g = cor_rev_scalar(&[4.0], &[1.0], &pair, &band).unwrap();
        assert!((g - (0.8 * 4.0 - 4.0)).abs() < 1e-14);
    }

    #[test]
    fn okmn_corollary_rejects_t_one() {
        assert!(cor_okmn_scalar(&[2.0], &[1.0], 0.5, 1.0).is_err());
        let g = cor_okmn_scalar(&[2.0, 3.0], &[1.0, 0.5], 0.3, 0.6).unwrap();
        assert!(g.is_finite());
    }
}
