//! Registry of the operator inequalities, each evaluated to an [`IneqReport`].
//!
//! Every statement is encoded as one or more links `LHS ≤ RHS` in the Loewner
//! order. Where the printed constant or coefficient is numerically falsified,
//! a [`Variant::Repaired`] form re-derived from the argument is available
//! next to the [`Variant::PaperLiteral`] one.
//!
//! Notation used below, for families `A_j`, `B_j`:
//!
//! * `H(α) = Σ_j (A_j ♯_α B_j) ∘ Σ_j (A_j ♯_{1−α} B_j)`, so `H(0) = (ΣA_j) ∘ (ΣB_j)`;
//! * `T(α) = A^α ⊗ B^{1−α} + A^{1−α} ⊗ B^α` for a single pair;
//! * `h = M/m`, `h′ = M′/m′` from the band, `v = |t − 1/2|`;
//! * `ρ = mM′/(m′M)`, the cross ratio of the band.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{geo_mean, hadamard, kron, loewner_gap, spectral_pow, sym_eigen, LoewnerGap, SymMatrix, EIG_FLOOR};
use crate::sampler::{FamilyInstance, SpectralBand};
use crate::scalarcore::{kantorovich, kantorovich_min_over_interval, ExponentPair, ProofChainParams, DELTA_HALF};

/// The operator statements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "&'static str")]
pub enum IneqId {
    Wada,
    Chain34rf,
    MojMo,
    TensorTool,
    ProofChain,
    HadMaman,
    HadMaman2,
    CorBjIdentity,
    RevTensorDear,
    RevHadMainth,
    RevT1Remark,
    PropHbounds,
}

/// Which parameters an id takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    /// An [`ExponentPair`] `(s, t)`.
    Pair,
    /// [`ProofChainParams`] `(α, β)`.
    Chain,
    /// A single weight `α ∈ [0, 1]`.
    Alpha,
}

impl IneqId {
    pub const ALL: [IneqId; 12] = [
        IneqId::Wada,
        IneqId::Chain34rf,
        IneqId::MojMo,
        IneqId::TensorTool,
        IneqId::ProofChain,
        IneqId::HadMaman,
        IneqId::HadMaman2,
        IneqId::CorBjIdentity,
        IneqId::RevTensorDear,
        IneqId::RevHadMainth,
        IneqId::RevT1Remark,
        IneqId::PropHbounds,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IneqId::Wada => "WADA",
            IneqId::Chain34rf => "CHAIN_34RF",
            IneqId::MojMo => "MOJ_MO",
            IneqId::TensorTool => "TENSOR_TOOL",
            IneqId::ProofChain => "PROOF_CHAIN",
            IneqId::HadMaman => "HAD_MAMAN",
            IneqId::HadMaman2 => "HAD_MAMAN2",
            IneqId::CorBjIdentity => "COR_BJ_IDENTITY",
            IneqId::RevTensorDear => "REV_TENSOR_DEAR",
            IneqId::RevHadMainth => "REV_HAD_MAINTH",
            IneqId::RevT1Remark => "REV_T1_REMARK",
            IneqId::PropHbounds => "PROP_HBOUNDS",
        }
    }

    pub fn param_kind(self) -> ParamKind {
        match self {
            IneqId::Wada => ParamKind::Alpha,
            IneqId::ProofChain => ParamKind::Chain,
            _ => ParamKind::Pair,
        }
    }

    /// Statements about a single pair `(A, B)` rather than families.
    pub fn is_pair_statement(self) -> bool {
        matches!(self, IneqId::Wada | IneqId::TensorTool | IneqId::ProofChain | IneqId::RevTensorDear)
    }

    /// Statements whose constants depend on the spectral band.
    pub fn uses_band(self) -> bool {
        matches!(
            self,
            IneqId::TensorTool
                | IneqId::ProofChain
                | IneqId::HadMaman
                | IneqId::RevTensorDear
                | IneqId::RevHadMainth
                | IneqId::RevT1Remark
                | IneqId::PropHbounds
        )
    }

    /// Statements built from Hadamard sums of means (or of powers).
    pub fn is_hadamard_statement(self) -> bool {
        !self.is_pair_statement()
    }

    pub fn variants(self) -> &'static [Variant] {
        match self {
            IneqId::TensorTool
            | IneqId::HadMaman
            | IneqId::RevTensorDear
            | IneqId::RevHadMainth
            | IneqId::RevT1Remark
            | IneqId::PropHbounds => &[Variant::PaperLiteral, Variant::Repaired],
            _ => &[Variant::PaperLiteral],
        }
    }

    pub fn supports(self, variant: Variant) -> bool {
        self.variants().contains(&variant)
    }
}

impl fmt::Display for IneqId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IneqId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IneqId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Domain(format!("unknown inequality id {s:?}")))
    }
}

impl TryFrom<String> for IneqId {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<IneqId> for &'static str {
    fn from(id: IneqId) -> Self {
        id.name()
    }
}

/// The printed statement or its re-derived form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Variant {
    PaperLiteral,
    Repaired,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::PaperLiteral => "PAPER_LITERAL",
            Variant::Repaired => "REPAIRED",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    /// Accepts `PAPER_LITERAL`/`paper` and `REPAIRED`/`repaired`.
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "paper_literal" | "paper" => Ok(Variant::PaperLiteral),
            "repaired" => Ok(Variant::Repaired),
            _ => Err(Error::Domain(format!("unknown variant {s:?}"))),
        }
    }
}

/// Raw parameters of a statement, validated on evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Params {
    Pair { s: f64, t: f64 },
    Chain { alpha: f64, beta: f64 },
    Alpha { alpha: f64 },
}

impl Params {
    pub fn kind(&self) -> ParamKind {
        match self {
            Params::Pair { .. } => ParamKind::Pair,
            Params::Chain { .. } => ParamKind::Chain,
            Params::Alpha { .. } => ParamKind::Alpha,
        }
    }

    pub fn exponent_pair(&self) -> Result<ExponentPair> {
        match *self {
            Params::Pair { s, t } => ExponentPair::new(s, t),
            _ => Err(Error::Hypothesis(format!("expected (s, t), got {self:?}"))),
        }
    }

    pub fn proof_chain(&self) -> Result<ProofChainParams> {
        match *self {
            Params::Chain { alpha, beta } => ProofChainParams::new(alpha, beta),
            _ => Err(Error::Hypothesis(format!("expected (alpha, beta), got {self:?}"))),
        }
    }

    pub fn alpha(&self) -> Result<f64> {
        match *self {
            Params::Alpha { alpha } if (0.0..=1.0).contains(&alpha) => Ok(alpha),
            Params::Alpha { alpha } => Err(Error::Hypothesis(format!("need alpha in [0, 1], got {alpha}"))),
            _ => Err(Error::Hypothesis(format!("expected alpha, got {self:?}"))),
        }
    }
}

impl From<ExponentPair> for Params {
    fn from(p: ExponentPair) -> Self {
        Params::Pair { s: p.s, t: p.t }
    }
}

impl From<ProofChainParams> for Params {
    fn from(p: ProofChainParams) -> Self {
        Params::Chain { alpha: p.alpha, beta: p.beta }
    }
}

/// One claimed Loewner inequality `lhs ≤ rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Link {
    pub name: &'static str,
    pub lhs: SymMatrix,
    pub rhs: SymMatrix,
}

/// Verdict for one link.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkGap {
    pub name: String,
    pub gap: LoewnerGap,
    pub lhs_norm: f64,
    pub rhs_norm: f64,
}

/// Outcome of evaluating a statement on one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IneqReport {
    pub id: IneqId,
    pub variant: Variant,
    pub params: Params,
    pub band: Option<SpectralBand>,
    pub n: usize,
    pub dim: usize,
    pub links: Vec<LinkGap>,
    /// The link with the smallest relative gap.
    pub gap: LoewnerGap,
    /// Smallest absolute gap over all links.
    pub min_gap: f64,
    pub lhs_norm: f64,
    pub rhs_norm: f64,
    /// The instance, present exactly when some link fails.
    pub witness: Option<FamilyInstance>,
}

impl IneqReport {
    pub fn satisfied(&self) -> bool {
        self.gap.satisfied
    }
}

/// One row of [`list_inequalities`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegistryEntry {
    pub id: IneqId,
    pub description: &'static str,
    pub variants: &'static [Variant],
    pub statement: &'static str,
}

/// Static registry of every operator statement.
pub fn list_inequalities() -> Vec<RegistryEntry> {
    IneqId::ALL
        .into_iter()
        .map(|id| {
            let (description, statement) = describe(id);
            RegistryEntry { id, description, variants: id.variants(), statement }
        })
        .collect()
}

fn describe(id: IneqId) -> (&'static str, &'static str) {
    match id {
        IneqId::Wada => (
            "tensor Callebaut inequality for a single pair",
            "(A#B)⊗(A#B) ≤ ½(A#_αB⊗A#_{1−α}B + A#_{1−α}B⊗A#_αB) ≤ ½(A⊗B + B⊗A)",
        ),
        IneqId::Chain34rf => ("Hadamard-sum Callebaut chain", "H(1/2) ≤ H(s) ≤ H(t) ≤ H(0)"),
        IneqId::MojMo => (
            "interpolating refinement with coefficient (t−s)/(s−1/2)",
            "H(s) ≤ H(s) + ((t−s)/(s−1/2))(H(s) − H(1/2)) ≤ H(t)",
        ),
        IneqId::TensorTool => (
            "Kantorovich refinement for tensor products",
            "K^{r′}T(s) + c_mid(T(t) − 2A^{1/2}⊗B^{1/2}) ≤ T(t)",
        ),
        IneqId::ProofChain => (
            "intermediate steps of the tensor refinement",
            "scalar lemma on the spectrum ⇒ functional calculus in X = A^α⊗B^{−α} ⇒ congruence by (A⊗B)^{1/2}",
        ),
        IneqId::HadMaman => (
            "Kantorovich refinement for Hadamard sums",
            "K^{r′}H(s) + c_mid(H(t) − H(1/2)) ≤ H(t)",
        ),
        IneqId::HadMaman2 => (
            "Kantorovich-free refinement with a four-term bracket",
            "H(s) + c_mid(H(s) − H(1/2)) + r′(H(s) + H(1/2) − 2H((3−2s)/4)) ≤ H(t)",
        ),
        IneqId::CorBjIdentity => (
            "four-term refinement for power sums (B_j = I)",
            "P(s) + c_mid(P(s) − P(1/2)) + r′(P(s) + P(1/2) − 2P((3−2s)/4)) ≤ P(t)",
        ),
        IneqId::RevTensorDear => ("reverse for tensor products", "T(t) ≤ K^{−r′}T(s) + c(T(t) − 2A^{1/2}⊗B^{1/2})"),
        IneqId::RevHadMainth => ("reverse for Hadamard sums", "H(t) ≤ K^{−r′}H(s) + c(H(t) − H(1/2))"),
        IneqId::RevT1Remark => ("reverse at t = 1", "H(0) ≤ K^{−r′}H(s) + c(H(0) − H(1/2))"),
        IneqId::PropHbounds => (
            "two-sided bounds with band-dependent additive terms",
            "K^{r′}H(s) + c_mid(√h − 1/√h)² ≤ H(t) ≤ K^{−r′}H(s) + c(√h′ − 1/√h′)²",
        ),
    }
}

/// Evaluates `id` on `inst` and reports the signed Loewner gap of every link.
///
/// Pair statements need `inst.n() == 1`; band-dependent statements need a
/// band that the instance satisfies.
pub fn evaluate_inequality(
    id: IneqId,
    inst: &FamilyInstance,
    params: &Params,
    variant: Variant,
    tol: f64,
) -> Result<IneqReport> {
    let links = build_links(id, inst, params, variant)?;
    let mut gaps = Vec::with_capacity(links.len());
    for link in &links {
        gaps.push(LinkGap {
            name: link.name.to_string(),
            gap: loewner_gap(&link.lhs, &link.rhs, tol)?,
            lhs_norm: link.lhs.spectral_norm()?,
            rhs_norm: link.rhs.spectral_norm()?,
        });
    }
    let worst = gaps
        .iter()
        .min_by(|a, b| a.gap.rel_gap.total_cmp(&b.gap.rel_gap))
        .expect("every statement has at least one link")
        .clone();
    let min_gap = gaps.iter().map(|g| g.gap.min_eig).fold(f64::INFINITY, f64::min);
    Ok(IneqReport {
        id,
        variant,
        params: *params,
        band: inst.band,
        n: inst.n(),
        dim: inst.dim(),
        gap: worst.gap,
        min_gap,
        lhs_norm: worst.lhs_norm,
        rhs_norm: worst.rhs_norm,
        witness: (!worst.gap.satisfied).then(|| inst.clone()),
        links: gaps,
    })
}

/// The links `LHS ≤ RHS` of `id`, after checking every hypothesis.
pub fn build_links(id: IneqId, inst: &FamilyInstance, params: &Params, variant: Variant) -> Result<Vec<Link>> {
    if !id.supports(variant) {
        return Err(Error::Variant { id: id.name().into(), variant: variant.name().into() });
    }
    if params.kind() != id.param_kind() {
        return Err(Error::Hypothesis(format!("{id} takes {:?} parameters, got {params:?}", id.param_kind())));
    }
    if id.is_pair_statement() && inst.n() != 1 {
        return Err(Error::Shape(format!("{id} is a statement about one pair, got n = {}", inst.n())));
    }
    let band = if id.uses_band() {
        let band = inst.band.ok_or_else(|| Error::Hypothesis(format!("{id} needs a spectral band")))?;
        inst.check_band(&band)?;
        Some(band)
    } else {
        check_positive_definite(inst, id)?;
        None
    };
    let repaired = variant == Variant::Repaired;
    match id {
        IneqId::Wada => wada(inst, params.alpha()?),
        IneqId::Chain34rf => chain_34rf(inst, &params.exponent_pair()?),
        IneqId::MojMo => moj_mo(inst, &params.exponent_pair()?),
        IneqId::TensorTool => tensor_tool(inst, &params.exponent_pair()?, &band.unwrap(), repaired),
        IneqId::ProofChain => proof_chain(inst, &params.proof_chain()?, &band.unwrap()),
        IneqId::HadMaman => had_maman(inst, &params.exponent_pair()?, &band.unwrap(), repaired),
        IneqId::HadMaman2 => {
            let pair = params.exponent_pair()?;
            four_term(&pair, |alpha| hadamard_sum(inst, alpha))
        }
        IneqId::CorBjIdentity => {
            let pair = params.exponent_pair()?;
            four_term(&pair, |alpha| power_sum(inst, alpha))
        }
        IneqId::RevTensorDear => rev_tensor_dear(inst, &params.exponent_pair()?, &band.unwrap(), repaired),
        IneqId::RevHadMainth => rev_had_mainth(inst, &params.exponent_pair()?, &band.unwrap(), repaired),
        IneqId::RevT1Remark => rev_t1_remark(inst, &params.exponent_pair()?, &band.unwrap(), repaired),
        IneqId::PropHbounds => prop_hbounds(inst, &params.exponent_pair()?, &band.unwrap(), repaired),
    }
}

fn check_positive_definite(inst: &FamilyInstance, id: IneqId) -> Result<()> {
    let b_list: &[SymMatrix] = if id == IneqId::CorBjIdentity { &[] } else { &inst.b_list };
    for m in inst.a_list.iter().chain(b_list) {
        if sym_eigen(m)?.min_eigenvalue() < EIG_FLOOR {
            return Err(Error::Hypothesis(format!("{id} needs positive definite operators")));
        }
    }
    Ok(())
}

fn combo(terms: &[(f64, &SymMatrix)]) -> SymMatrix {
    let (first, rest) = terms.split_first().expect("non-empty combination");
    rest.iter().fold(first.0 * first.1, |acc, (c, m)| &acc + &(*c * *m))
}

fn link(name: &'static str, lhs: SymMatrix, rhs: SymMatrix) -> Link {
    Link { name, lhs, rhs }
}

/// `Σ_j A_j ♯_α B_j`.
fn sharp_sum(inst: &FamilyInstance, alpha: f64) -> Result<SymMatrix> {
    let mut terms = inst.a_list.iter().zip(&inst.b_list).map(|(a, b)| geo_mean(a, b, alpha));
    let first = terms.next().expect("non-empty family")?;
    terms.try_fold(first, |acc, m| Ok(&acc + &m?))
}

/// `H(α)`.
fn hadamard_sum(inst: &FamilyInstance, alpha: f64) -> Result<SymMatrix> {
    hadamard(&sharp_sum(inst, alpha)?, &sharp_sum(inst, 1.0 - alpha)?)
}

fn pow_sum(list: &[SymMatrix], p: f64) -> Result<SymMatrix> {
    let mut terms = list.iter().map(|a| spectral_pow(a, p));
    let first = terms.next().expect("non-empty family")?;
    terms.try_fold(first, |acc, m| Ok(&acc + &m?))
}

/// `P(α) = ΣA_j^{1−α} ∘ ΣA_j^α`; the `B`-family is not read.
fn power_sum(inst: &FamilyInstance, alpha: f64) -> Result<SymMatrix> {
    hadamard(&pow_sum(&inst.a_list, 1.0 - alpha)?, &pow_sum(&inst.a_list, alpha)?)
}

/// `T(α)` for the single pair of `inst`.
fn tensor_sum(inst: &FamilyInstance, alpha: f64) -> Result<SymMatrix> {
    let (a, b) = (&inst.a_list[0], &inst.b_list[0]);
    let left = kron(&spectral_pow(a, alpha)?, &spectral_pow(b, 1.0 - alpha)?)?;
    let right = kron(&spectral_pow(a, 1.0 - alpha)?, &spectral_pow(b, alpha)?)?;
    Ok(&left + &right)
}

fn tensor_half(inst: &FamilyInstance) -> Result<SymMatrix> {
    Ok(2.0 * &kron(&spectral_pow(&inst.a_list[0], 0.5)?, &spectral_pow(&inst.b_list[0], 0.5)?)?)
}

/// `K(h^{2t−1})`, the printed constant.
fn printed_constant(pair: &ExponentPair, band: &SpectralBand) -> Result<f64> {
    kantorovich(band.h().powf(2.0 * pair.t - 1.0))
}

/// `K(h^{|t−1/2|})`, the constant after the substitution `A ↦ A^{1/2}`.
fn tensor_repaired_constant(pair: &ExponentPair, band: &SpectralBand) -> Result<f64> {
    kantorovich(band.h().powf(pair.half_distance()))
}

/// `[ρ^{−v}, ρ^v]`, the spectrum interval of `C_j^{t−1/2} ⊗ C_i^{−(t−1/2)}`.
fn cross_interval(pair: &ExponentPair, band: &SpectralBand) -> (f64, f64) {
    let r = band.cross_ratio().powf(pair.half_distance());
    (1.0 / r, r)
}

/// Hadamard-sum constant: the minimum of `K` over the cross interval, which
/// is 1 since the interval contains 1.
fn hadamard_repaired_constant(pair: &ExponentPair, band: &SpectralBand) -> Result<f64> {
    let (lo, hi) = cross_interval(pair, band);
    kantorovich_min_over_interval(lo, hi)
}

fn wada(inst: &FamilyInstance, alpha: f64) -> Result<Vec<Link>> {
    let (a, b) = (&inst.a_list[0], &inst.b_list[0]);
    let g = geo_mean(a, b, 0.5)?;
    let ga = geo_mean(a, b, alpha)?;
    let gb = geo_mean(a, b, 1.0 - alpha)?;
    let middle = 0.5 * &(&kron(&ga, &gb)? + &kron(&gb, &ga)?);
    let top = 0.5 * &(&kron(a, b)? + &kron(b, a)?);
    Ok(vec![link("lower", kron(&g, &g)?, middle.clone()), link("upper", middle, top)])
}

fn chain_34rf(inst: &FamilyInstance, pair: &ExponentPair) -> Result<Vec<Link>> {
    let h_half = hadamard_sum(inst, 0.5)?;
    let h_s = hadamard_sum(inst, pair.s)?;
    let h_t = hadamard_sum(inst, pair.t)?;
    let h_0 = hadamard_sum(inst, 0.0)?;
    Ok(vec![
        link("half_to_s", h_half, h_s.clone()),
        link("s_to_t", h_s, h_t.clone()),
        link("t_to_zero", h_t, h_0),
    ])
}

fn moj_mo(inst: &FamilyInstance, pair: &ExponentPair) -> Result<Vec<Link>> {
    if (pair.s - 0.5).abs() < DELTA_HALF {
        return Err(Error::Hypothesis(format!("s = {} lies in the excluded zone around 1/2", pair.s)));
    }
    let c = (pair.t - pair.s) / (pair.s - 0.5);
    let h_half = hadamard_sum(inst, 0.5)?;
    let h_s = hadamard_sum(inst, pair.s)?;
    let h_t = hadamard_sum(inst, pair.t)?;
    let middle = combo(&[(1.0 + c, &h_s), (-c, &h_half)]);
    Ok(vec![link("lower", h_s, middle.clone()), link("upper", middle, h_t)])
}

fn tensor_tool(inst: &FamilyInstance, pair: &ExponentPair, band: &SpectralBand, repaired: bool) -> Result<Vec<Link>> {
    let k = if repaired { tensor_repaired_constant(pair, band)? } else { printed_constant(pair, band)? };
    let t_s = tensor_sum(inst, pair.s)?;
    let t_t = tensor_sum(inst, pair.t)?;
    let half = tensor_half(inst)?;
    let lhs = combo(&[(k.powf(pair.r_prime), &t_s), (pair.c_mid, &t_t), (-pair.c_mid, &half)]);
    Ok(vec![link("main", lhs, t_t)])
}

fn rev_tensor_dear(inst: &FamilyInstance, pair: &ExponentPair, band: &SpectralBand, repaired: bool) -> Result<Vec<Link>> {
    let (k, c) = if repaired {
        (tensor_repaired_constant(pair, band)?, pair.c_rev_repair)
    } else {
        (printed_constant(pair, band)?, pair.c_rev_paper)
    };
    let t_s = tensor_sum(inst, pair.s)?;
    let t_t = tensor_sum(inst, pair.t)?;
    let half = tensor_half(inst)?;
    let rhs = combo(&[(k.powf(-pair.r_prime), &t_s), (c, &t_t), (-c, &half)]);
    Ok(vec![link("main", t_t, rhs)])
}

fn proof_chain(inst: &FamilyInstance, p: &ProofChainParams, band: &SpectralBand) -> Result<Vec<Link>> {
    let (a, b) = (&inst.a_list[0], &inst.b_list[0]);
    let (alpha, beta, mu) = (p.alpha, p.beta, p.mu);
    let kc = kantorovich(band.h().powf(alpha))?.powf(p.r_prime());
    let w = 1.0 - mu;

    let ea = sym_eigen(a)?;
    let eb = sym_eigen(b)?;
    let xs: Vec<f64> = ea
        .eigenvalues
        .iter()
        .flat_map(|&l| eb.eigenvalues.iter().map(move |&m| l.powf(alpha) * m.powf(-alpha)))
        .collect();
    let spec_lhs: Vec<f64> = xs.iter().map(|&x| kc * (x.powf(mu) + x.powf(-mu)) + w * (x + 1.0 / x - 2.0)).collect();
    let spec_rhs: Vec<f64> = xs.iter().map(|&x| x + 1.0 / x).collect();

    let pk = |pa: f64, pb: f64| -> Result<SymMatrix> { kron(&spectral_pow(a, pa)?, &spectral_pow(b, pb)?) };
    let x = pk(alpha, -alpha)?;
    let x_inv = pk(-alpha, alpha)?;
    let x_mu = pk(beta, -beta)?;
    let x_neg_mu = pk(-beta, beta)?;
    let id = SymMatrix::identity(x.dim());
    let x_rhs = &x + &x_inv;
    let x_lhs = combo(&[(kc, &x_mu), (kc, &x_neg_mu), (w, &x_rhs), (-2.0 * w, &id)]);

    let c_rhs = &pk(1.0 + alpha, 1.0 - alpha)? + &pk(1.0 - alpha, 1.0 + alpha)?;
    let c_mu = &pk(1.0 + beta, 1.0 - beta)? + &pk(1.0 - beta, 1.0 + beta)?;
    let ab = kron(a, b)?;
    let c_lhs = combo(&[(kc, &c_mu), (w, &c_rhs), (-2.0 * w, &ab)]);

    Ok(vec![
        link("spectral", SymMatrix::diagonal(&spec_lhs), SymMatrix::diagonal(&spec_rhs)),
        link("tensor", x_lhs, x_rhs),
        link("congruence", c_lhs, c_rhs),
    ])
}

fn had_maman(inst: &FamilyInstance, pair: &ExponentPair, band: &SpectralBand, repaired: bool) -> Result<Vec<Link>> {
    let k = if repaired { hadamard_repaired_constant(pair, band)? } else { printed_constant(pair, band)? };
    let h_half = hadamard_sum(inst, 0.5)?;
    let h_s = hadamard_sum(inst, pair.s)?;
    let h_t = hadamard_sum(inst, pair.t)?;
    let lhs = combo(&[(k.powf(pair.r_prime), &h_s), (pair.c_mid, &h_t), (-pair.c_mid, &h_half)]);
    Ok(vec![link("main", lhs, h_t)])
}

/// The four-term refinement for any interpolating sum `F`, with its bracket
/// and middle term checked separately.
fn four_term(pair: &ExponentPair, f: impl Fn(f64) -> Result<SymMatrix>) -> Result<Vec<Link>> {
    let q = (3.0 - 2.0 * pair.s) / 4.0;
    let f_half = f(0.5)?;
    let f_s = f(pair.s)?;
    let f_t = f(pair.t)?;
    let f_q = f(q)?;
    let lhs = combo(&[
        (1.0 + pair.c_mid + pair.r_prime, &f_s),
        (pair.r_prime - pair.c_mid, &f_half),
        (-2.0 * pair.r_prime, &f_q),
    ]);
    Ok(vec![
        link("main", lhs, f_t),
        link("bracket", 2.0 * &f_q, &f_s + &f_half),
        link("middle", pair.c_mid * &f_half, pair.c_mid * &f_s),
    ])
}

fn rev_had_mainth(inst: &FamilyInstance, pair: &ExponentPair, band: &SpectralBand, repaired: bool) -> Result<Vec<Link>> {
    let (k, c) = if repaired {
        (hadamard_repaired_constant(pair, band)?, pair.c_rev_repair)
    } else {
        (printed_constant(pair, band)?, pair.c_rev_paper)
    };
    let h_half = hadamard_sum(inst, 0.5)?;
    let h_s = hadamard_sum(inst, pair.s)?;
    let h_t = hadamard_sum(inst, pair.t)?;
    let rhs = combo(&[(k.powf(-pair.r_prime), &h_s), (c, &h_t), (-c, &h_half)]);
    Ok(vec![link("main", h_t, rhs)])
}

fn rev_t1_remark(inst: &FamilyInstance, pair: &ExponentPair, band: &SpectralBand, repaired: bool) -> Result<Vec<Link>> {
    if pair.t != 1.0 {
        return Err(Error::Hypothesis(format!("statement is the t = 1 case, got t = {}", pair.t)));
    }
    let s = pair.s;
    let r_prime = (2.0 - 2.0 * s).min(2.0 * s - 1.0);
    let (k, c) = if repaired { (1.0, 2.0 * s) } else { (kantorovich(band.h())?, 2.0 * s - 1.0) };
    let h_half = hadamard_sum(inst, 0.5)?;
    let h_s = hadamard_sum(inst, s)?;
    let h_0 = hadamard_sum(inst, 0.0)?;
    let rhs = combo(&[(k.powf(-r_prime), &h_s), (c, &h_0), (-c, &h_half)]);
    Ok(vec![link("main", h_0, rhs)])
}

/// Range of `(√a − 1/√a)² = a + 1/a − 2` over `[lo, hi]`.
fn sqrt_diff_sq_range(lo: f64, hi: f64) -> (f64, f64) {
    let g = |a: f64| a + 1.0 / a - 2.0;
    let max = g(lo).max(g(hi));
    let min = if lo <= 1.0 && 1.0 <= hi { 0.0 } else { g(lo).min(g(hi)) };
    (min, max)
}

fn prop_hbounds(inst: &FamilyInstance, pair: &ExponentPair, band: &SpectralBand, repaired: bool) -> Result<Vec<Link>> {
    let h_s = hadamard_sum(inst, pair.s)?;
    let h_t = hadamard_sum(inst, pair.t)?;
    let (lower, upper) = if repaired {
        let k = hadamard_repaired_constant(pair, band)?;
        let (lo, hi) = cross_interval(pair, band);
        let (d_min, d_max) = sqrt_diff_sq_range(lo, hi);
        let h_half = hadamard_sum(inst, 0.5)?;
        (
            combo(&[(k.powf(pair.r_prime), &h_s), (pair.c_mid * d_min / 2.0, &h_half)]),
            combo(&[(k.powf(-pair.r_prime), &h_s), (pair.c_rev_repair * d_max / 2.0, &h_half)]),
        )
    } else {
        let k = printed_constant(pair, band)?;
        let id = SymMatrix::identity(inst.dim());
        let term = |x: f64| {
            let d = x.sqrt() - (1.0 / x).sqrt();
            d * d
        };
        (
            combo(&[(k.powf(pair.r_prime), &h_s), (pair.c_mid * term(band.h()), &id)]),
            combo(&[(k.powf(-pair.r_prime), &h_s), (pair.c_rev_paper * term(band.h_prime()), &id)]),
        )
    };
    Ok(vec![link("lower", lower, h_t.clone()), link("upper", h_t, upper)])
}
