//! Affine Deligne-Lusztig combinatorics: nonemptiness, dimensions, component
//! counts through weight multiplicities, and the Satake-side identities.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::Serialize;

use crate::char_engine::{
    branch_to_invariants, full_character, restrict_character, tensor_decompose, Character,
    FoldedDatum, RepDatum,
};
use crate::error::{check_len, Error, Result};
use crate::group_model::{build_from_descriptor, EssUnramDescriptor, FactorSpec, GroupModel, RootDatum};
use crate::kottwitz::{
    basic_is_very_special, central_part, coroot_coefficients, kottwitz_invariant, newton_point_vsp, q_dominates,
    GammaClasses, LambdaSet, NewtonPoint,
};
use crate::lattice::{self, GroupElement};
use crate::linalg::{self, IntMatrix};
use crate::rational::RatVec;
use crate::sweep;

pub const DEFAULT_SEARCH_HEIGHT: i64 = 12;

/// Symbol standing for the infinite factor of a component count.
pub const COSET_SYMBOL: &str = "J_b(F)/J_b(O_F)";

/// The bound `μ`, either on `X_*(T)` or on the free part of `X_*(T)_I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "side", content = "coweight", rename_all = "snake_case")]
pub enum MuInput {
    Splitting(Vec<i64>),
    Canonical(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BInput {
    /// `[ϖ^τ]`.
    Vsp { tau: Vec<i64> },
    /// The basic element of `B(G, μ)`. The defect is derived when the basic
    /// element is very special and must be supplied otherwise.
    Basic { defect: Option<i64> },
    Explicit { nu: RatVec, kappa: GroupElement, defect: i64, lambda_b: Option<Vec<i64>> },
}

#[derive(Clone, Debug)]
pub struct AdlvQuery {
    pub model: GroupModel,
    pub mu: MuInput,
    pub b: BInput,
}

/// The query reduced to invariants on `X_*(T)`.
#[derive(Clone, Debug)]
struct Resolved {
    kappa_mu: GroupElement,
    mubar: RatVec,
    height: i64,
    kappa_b: GroupElement,
    nu_b: NewtonPoint,
    defect: i64,
}

impl AdlvQuery {
    pub fn new(model: GroupModel, mu: MuInput, b: BInput) -> Self {
        AdlvQuery { model, mu, b }
    }

    fn folded(&self) -> Result<FoldedDatum> {
        FoldedDatum::new(&self.model)
    }

    /// A coweight of `X_*(T)` representing `μ`, and whether `μ` is dominant.
    fn mu_lift(&self) -> Result<Vec<i64>> {
        match &self.mu {
            MuInput::Splitting(mu) => {
                check_len(self.model.rank(), mu)?;
                self.model.datum.require_dominant(mu)?;
                Ok(mu.clone())
            }
            MuInput::Canonical(mu_i) => {
                let f = self.folded()?;
                check_len(f.datum.rank, mu_i)?;
                f.datum.require_dominant(mu_i)?;
                Ok(f.lift(mu_i))
            }
        }
    }

    fn basic_is_vsp(&self) -> Result<bool> {
        match &self.mu {
            MuInput::Splitting(mu) => Ok(basic_is_very_special(&self.model, mu)?.result),
            MuInput::Canonical(mu_i) => {
                let set = LambdaSet::new(&self.model)?;
                Ok(set.tate_dim(&full_character(&set.folded.datum, mu_i)?) > 0)
            }
        }
    }

    fn resolve(&self) -> Result<Resolved> {
        let model = &self.model;
        let lift = self.mu_lift()?;
        let kappa_mu = kottwitz_invariant(model, &lift);
        let mubar = model.gamma_average(&lift)?;
        let height = model.pairing_2rho(&lift);
        let (kappa_b, nu_b, defect) = match &self.b {
            BInput::Vsp { tau } => {
                check_len(model.rank(), tau)?;
                (kottwitz_invariant(model, tau), newton_point_vsp(model, tau)?, 0)
            }
            BInput::Basic { defect } => {
                let vsp = self.basic_is_vsp()?;
                let d = match (defect, vsp) {
                    (Some(d), true) if *d != 0 => {
                        return Err(Error::InvalidQuery("the basic element is very special, so its defect is 0".into()))
                    }
                    (Some(d), _) => *d,
                    (None, true) => 0,
                    (None, false) => return Err(Error::DefectUnavailable),
                };
                (kappa_mu.clone(), central_part(&model.datum, &mubar), d)
            }
            BInput::Explicit { nu, kappa, defect, .. } => {
                if nu.len() != model.rank() {
                    return Err(Error::DimensionMismatch { expected: model.rank(), got: nu.len() });
                }
                if !model.datum.is_dominant_rat(nu) {
                    return Err(Error::NotDominant(nu.numerator().to_vec()));
                }
                for g in model.action.gamma_gens() {
                    if g.apply(nu.numerator()) != nu.numerator() {
                        return Err(Error::InvalidQuery("Newton point is not fixed by the Galois action".into()));
                    }
                }
                if *defect < 0 {
                    return Err(Error::InvalidQuery("defect is negative".into()));
                }
                (kappa.clone(), nu.clone(), *defect)
            }
        };
        Ok(Resolved { kappa_mu, mubar, height, kappa_b, nu_b, defect })
    }

    /// A coweight whose Γ-class is `λ_b`.
    fn lambda_b(&self) -> Result<Vec<i64>> {
        match &self.b {
            BInput::Vsp { tau } => Ok(tau.clone()),
            BInput::Explicit { lambda_b: Some(l), .. } => {
                check_len(self.model.rank(), l)?;
                Ok(l.clone())
            }
            BInput::Explicit { lambda_b: None, .. } => Err(Error::LambdaBUnavailable),
            BInput::Basic { .. } => {
                if !self.basic_is_vsp()? {
                    return Err(Error::LambdaBUnavailable);
                }
                let r = self.resolve()?;
                let candidates: Vec<Vec<i64>> = match &self.mu {
                    MuInput::Splitting(mu) => full_character(&self.model.datum, mu)?.support.into_keys().collect(),
                    MuInput::Canonical(mu_i) => {
                        let f = self.folded()?;
                        full_character(&f.datum, mu_i)?.support.keys().map(|w| f.lift(w)).collect()
                    }
                };
                for tau in candidates {
                    if newton_point_vsp(&self.model, &tau)? == r.nu_b {
                        return Ok(tau);
                    }
                }
                Err(Error::LambdaBUnavailable)
            }
        }
    }
}

/// `X^spl_{≤μ}(b) ≠ ∅`: `κ(b) = κ(μ)` and `ν_b ≤ μ̄`.
pub fn adlv_nonempty(q: &AdlvQuery) -> Result<bool> {
    let r = q.resolve()?;
    Ok(r.kappa_b == r.kappa_mu && q_dominates(&q.model.datum, &r.mubar, &r.nu_b))
}

/// `⟨ρ, μ − ν_b⟩ − ½ defect(b)`.
pub fn adlv_dimension(q: &AdlvQuery) -> Result<u64> {
    if !adlv_nonempty(q)? {
        return Err(Error::EmptyVariety);
    }
    let r = q.resolve()?;
    let twice = Ratio::from_integer(r.height) - r.nu_b.pair(&q.model.datum.two_rho) - Ratio::from_integer(r.defect);
    let dim = twice / 2;
    if !dim.is_integer() || dim < Ratio::from_integer(0) {
        return Err(Error::NonIntegralDimension(dim.to_string()));
    }
    Ok(dim.to_integer() as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TableSide {
    Splitting,
    Canonical,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentRow {
    pub weight: Vec<i64>,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentTable {
    pub side: TableSide,
    pub rows: Vec<ComponentRow>,
    pub total: u64,
}

impl ComponentTable {
    fn from_rows(side: TableSide, rows: BTreeMap<Vec<i64>, u64>) -> Self {
        let total = rows.values().sum();
        let rows = rows.into_iter().map(|(weight, count)| ComponentRow { weight, count }).collect();
        ComponentTable { side, rows, total }
    }
}

/// Rows `λ` with `λ_Γ = λ_b` and counts `dim V_μ(λ)`.
pub fn component_table(q: &AdlvQuery) -> Result<ComponentTable> {
    let MuInput::Splitting(mu) = &q.mu else {
        return Err(Error::InvalidQuery("the splitting table needs a coweight of X_*(T)".into()));
    };
    q.resolve()?;
    let (_, proj) = q.model.gamma_coinvariants()?;
    let target = proj.project(&q.lambda_b()?);
    let ch = full_character(&q.model.datum, mu)?;
    let rows = ch.support.into_iter().filter(|(w, _)| proj.project(w) == target).collect();
    Ok(ComponentTable::from_rows(TableSide::Splitting, rows))
}

/// `μ'_I ≤ μ_I` in the folded datum: the difference is a nonnegative integer
/// combination of simple coroots.
pub fn folded_dominates(datum: &RootDatum, big: &[i64], small: &[i64]) -> bool {
    let diff = RatVec::integral(linalg::sub(big, small));
    let c = coroot_coefficients(datum, &diff);
    c.iter().all(|x| x.is_integer() && *x >= Ratio::from_integer(0))
        && q_dominates(datum, &RatVec::integral(big.to_vec()), &RatVec::integral(small.to_vec()))
}

/// Rows `λ_I` with `λ_Γ = λ_b` and counts `dim V_{μ'_I}(λ_I)`.
pub fn component_table_can(q: &AdlvQuery, mu_prime_i: &[i64]) -> Result<ComponentTable> {
    q.resolve()?;
    let f = q.folded()?;
    check_len(f.datum.rank, mu_prime_i)?;
    f.datum.require_dominant(mu_prime_i)?;
    let mu_i = match &q.mu {
        MuInput::Splitting(mu) => f.project(mu),
        MuInput::Canonical(mu_i) => mu_i.clone(),
    };
    if !folded_dominates(&f.datum, &mu_i, mu_prime_i) {
        return Err(Error::InvalidQuery(format!("{mu_prime_i:?} is not below {mu_i:?}")));
    }
    let (_, proj) = q.model.gamma_coinvariants()?;
    let target = proj.project(&q.lambda_b()?);
    let ch = full_character(&f.datum, mu_prime_i)?;
    let rows = ch.support.into_iter().filter(|(w, _)| proj.project(&f.lift(w)) == target).collect();
    Ok(ComponentTable::from_rows(TableSide::Canonical, rows))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountFactorization {
    /// Number of `J_b(F)`-orbits of top-dimensional components.
    pub mv_factor: u64,
    pub coset_factor: String,
    pub dimension: u64,
}

fn is_minuscule(datum: &RootDatum, mu: &[i64]) -> bool {
    datum.roots.iter().all(|a| linalg::dot(a, mu).abs() <= 1)
}

/// Components of `X_{≤μ}(b)` for very special `b` and minuscule `μ`:
/// the finite MV factor times the symbolic coset factor.
pub fn very_special_count_factorization(q: &AdlvQuery) -> Result<CountFactorization> {
    if !matches!(q.b, BInput::Vsp { .. }) {
        return Err(Error::NotVerySpecial);
    }
    let minuscule = match &q.mu {
        MuInput::Splitting(mu) => is_minuscule(&q.model.datum, mu),
        MuInput::Canonical(mu_i) => is_minuscule(&q.folded()?.datum, mu_i),
    };
    if !minuscule {
        return Err(Error::NotMinuscule(q.mu_lift()?));
    }
    if !lattice::pi1(&q.model).0.is_torsion_free() {
        return Err(Error::CenterNotConnected);
    }
    let dimension = adlv_dimension(q)?;
    let mv_factor = match &q.mu {
        MuInput::Splitting(_) => component_table(q)?.total,
        MuInput::Canonical(mu_i) => component_table_can(q, mu_i)?.total,
    };
    Ok(CountFactorization { mv_factor, coset_factor: COSET_SYMBOL.to_string(), dimension })
}

fn representation_character(model: &GroupModel, f: &FoldedDatum, mu: &MuInput) -> Result<Character> {
    match mu {
        MuInput::Splitting(mu) => {
            check_len(model.rank(), mu)?;
            restrict_character(model, mu)
        }
        MuInput::Canonical(mu_i) => {
            check_len(f.datum.rank, mu_i)?;
            full_character(&f.datum, mu_i)
        }
    }
}

/// `dim Hom_{Ĝ^I}(V_{ν_I} ⊗ V_μ|, V_{λ_I})`.
pub fn satake_hom_dim(model: &GroupModel, nu_i: &[i64], mu: &MuInput, lambda_i: &[i64]) -> Result<u64> {
    let f = FoldedDatum::new(model)?;
    check_len(f.datum.rank, nu_i)?;
    check_len(f.datum.rank, lambda_i)?;
    f.datum.require_dominant(lambda_i)?;
    let ch = representation_character(model, &f, mu)?;
    let rep = RepDatum::shared(&f.datum);
    Ok(rep.brauer_klimyk(&ch, nu_i)?.get(lambda_i).copied().unwrap_or(0))
}

/// The two cardinality identities behind the cartesian square relating
/// splitting and canonical Satake and MV sets: at `(ν_I, μ, λ_I)`,
/// `|IS^spl| = Σ_{μ'_I} m(μ'_I)·|IS^can_{μ'_I}|` and
/// `|MV^spl(λ_I)| = Σ_{μ'_I} m(μ'_I)·|MV^can_{μ'_I}(λ_I)|`, with `m` the
/// branching multiplicities of `V_μ|`.
pub fn beta_fiber_check(model: &GroupModel, nu_i: &[i64], mu: &[i64], lambda_i: &[i64]) -> Result<bool> {
    BetaFibers::new(model, nu_i, mu)?.check(lambda_i)
}

/// Both sides of the [`beta_fiber_check`] identities for fixed `(ν_I, μ)`,
/// for every `λ_I` at once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaFibers {
    folded: RootDatum,
    is_spl: BTreeMap<Vec<i64>, u64>,
    is_can: BTreeMap<Vec<i64>, u64>,
    mv_spl: BTreeMap<Vec<i64>, u64>,
    mv_can: BTreeMap<Vec<i64>, u64>,
}

impl BetaFibers {
    pub fn new(model: &GroupModel, nu_i: &[i64], mu: &[i64]) -> Result<Self> {
        let f = FoldedDatum::new(model)?;
        check_len(model.rank(), mu)?;
        check_len(f.datum.rank, nu_i)?;
        model.datum.require_dominant(mu)?;
        let rep = RepDatum::shared(&f.datum);
        let is_spl = rep.brauer_klimyk(&restrict_character(model, mu)?, nu_i)?;
        let mut is_can = BTreeMap::new();
        let mut mv_can = BTreeMap::new();
        for (mu_p, m) in branch_to_invariants(model, mu)? {
            for (l, k) in tensor_decompose(&f.datum, nu_i, &mu_p)? {
                *is_can.entry(l).or_insert(0) += m * k;
            }
            for (l, k) in full_character(&f.datum, &mu_p)?.support {
                *mv_can.entry(l).or_insert(0) += m * k;
            }
        }
        let mut mv_spl = BTreeMap::new();
        for (w, c) in full_character(&model.datum, mu)?.support {
            *mv_spl.entry(f.project(&w)).or_insert(0) += c;
        }
        Ok(BetaFibers { folded: f.datum, is_spl, is_can, mv_spl, mv_can })
    }

    pub fn check(&self, lambda_i: &[i64]) -> Result<bool> {
        check_len(self.folded.rank, lambda_i)?;
        self.folded.require_dominant(lambda_i)?;
        let get = |t: &BTreeMap<Vec<i64>, u64>| t.get(lambda_i).copied().unwrap_or(0);
        Ok(get(&self.is_spl) == get(&self.is_can) && get(&self.mv_spl) == get(&self.mv_can))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalNu {
    pub nu: Vec<i64>,
    /// Witnesses found in the searched region.
    pub witnesses: usize,
    pub bound: i64,
}

/// The minimal dominant `ν_I` (up to `X_*(Z_G)_I`) with `λ_I + ν_I − σ(ν_I)`
/// dominant and `Hom(V_{ν_I} ⊗ V_μ|, V_{λ_I + ν_I}) ≠ 0`, searched over
/// `⟨2ρ, ν_I⟩ ≤ bound`. The representative returned has the smallest
/// central part among the minimal witnesses.
pub fn minimal_nu(model: &GroupModel, mu: &[i64], lambda_i: &[i64], bound: i64) -> Result<MinimalNu> {
    let f = FoldedDatum::new(model)?;
    check_len(f.datum.rank, lambda_i)?;
    model.datum.require_dominant(mu)?;
    let ch = restrict_character(model, mu)?;
    if ch.get(lambda_i) == 0 {
        return Err(Error::InvalidQuery(format!("{lambda_i:?} is not a weight of the restriction")));
    }
    let rep = RepDatum::shared(&f.datum);
    let mut witnesses = Vec::new();
    for nu in sweep::dominant_coweights(&f.datum, bound) {
        let twisted = linalg::add(lambda_i, &linalg::sub(&nu, &f.sigma.apply(&nu)));
        if !f.datum.is_dominant(&twisted) {
            continue;
        }
        let target = linalg::add(lambda_i, &nu);
        if !f.datum.is_dominant(&target) {
            continue;
        }
        if rep.brauer_klimyk(&ch, &nu)?.get(&target).copied().unwrap_or(0) > 0 {
            witnesses.push(nu);
        }
    }
    if witnesses.is_empty() {
        return Err(Error::SearchBoundExceeded(bound));
    }
    let central_norm = |v: &[i64]| {
        let c = central_part(&f.datum, &RatVec::integral(v.to_vec()));
        Ratio::new(linalg::dot(c.numerator(), c.numerator()), c.denominator() * c.denominator())
    };
    let mut minimal: Vec<&Vec<i64>> = witnesses
        .iter()
        .filter(|m| witnesses.iter().all(|w| f.datum.is_dominant(&linalg::sub(w, m))))
        .collect();
    minimal.sort_by_key(|m| (f.datum.pairing_2rho(m), central_norm(m), (*m).clone()));
    let central: Vec<Vec<i64>> = model.datum.central_coweights().iter().map(|z| f.project(z)).collect();
    let first = minimal.first().ok_or(Error::NoMinimalElement)?;
    if !minimal.iter().all(|m| linalg::in_lattice(&central, &linalg::sub(m, first))) {
        return Err(Error::NoMinimalElement);
    }
    Ok(MinimalNu { nu: (*first).clone(), witnesses: witnesses.len(), bound })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormReduction {
    /// `σ^i(μ_i)` moved to the first block, for each block `i`.
    pub mu_shifted: Vec<Vec<i64>>,
    pub mu_sum: Vec<i64>,
    /// `Nm(b) = Σ σ^i(b_i)` in the first block.
    pub nm_b: Vec<i64>,
    pub pairing_total: i64,
    pub pairing_blocks: Vec<i64>,
    pub pairing_sum: i64,
    pub identities_hold: bool,
}

/// Blocks of an unramified restriction of scalars moved to block 0 by
/// powers of Frobenius, with the base group's datum.
fn unramified_blocks(model: &GroupModel) -> Result<(RootDatum, usize, usize, IntMatrix)> {
    let desc = model.preset.as_ref().ok_or(Error::NotResUnramPreset)?;
    if model.is_dual || desc.factors.len() != 1 || desc.factors[0].e != 1 {
        return Err(Error::NotResUnramPreset);
    }
    let spec = &desc.factors[0];
    let base = build_from_descriptor(&EssUnramDescriptor::single(FactorSpec::split(spec.cartan_type, spec.isogeny)))?;
    let k = base.rank();
    Ok((base.datum, spec.f, k, model.action.frobenius.clone()))
}

/// Reduction of an `f`-fold unramified restriction of scalars to its base
/// group through the norm.
pub fn norm_reduce(model: &GroupModel, mu: &[i64], b: &[i64]) -> Result<NormReduction> {
    let (base, f, k, frob) = unramified_blocks(model)?;
    check_len(model.rank(), mu)?;
    check_len(model.rank(), b)?;
    let to_first = |v: &[i64], i: usize| -> Vec<i64> {
        let mut x = vec![0; model.rank()];
        x[i * k..(i + 1) * k].copy_from_slice(&v[i * k..(i + 1) * k]);
        for _ in 0..(f - i) % f {
            x = frob.apply(&x);
        }
        x[..k].to_vec()
    };
    let mu_shifted: Vec<Vec<i64>> = (0..f).map(|i| to_first(mu, i)).collect();
    let mu_sum = mu_shifted.iter().fold(vec![0; k], |a, x| linalg::add(&a, x));
    let nm_b = (0..f).map(|i| to_first(b, i)).fold(vec![0; k], |a, x| linalg::add(&a, &x));
    let pairing_total = model.pairing_2rho(mu);
    let pairing_blocks: Vec<i64> = (0..f).map(|i| base.pairing_2rho(&mu[i * k..(i + 1) * k])).collect();
    let pairing_sum = base.pairing_2rho(&mu_sum);
    let identities_hold = pairing_total == pairing_blocks.iter().sum::<i64>() && pairing_total == pairing_sum;
    Ok(NormReduction { mu_shifted, mu_sum, nm_b, pairing_total, pairing_blocks, pairing_sum, identities_hold })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasicStratum {
    pub mu_star: Vec<i64>,
    pub tate_dim: u64,
    pub dimension: u64,
    /// Weights of `V_{μ*}|` in `Λ` with their multiplicities.
    pub table: Vec<ComponentRow>,
}

/// `|MV^{spl,Tate}_{μ*}|` and the dimension `⟨ρ, μ⟩` of the basic stratum.
pub fn basic_stratum_mv_count(model: &GroupModel, mu: &[i64]) -> Result<BasicStratum> {
    model.datum.require_dominant(mu)?;
    let mu_star = crate::char_engine::dual_highest_weight(&model.datum, mu);
    if !basic_is_very_special(model, &mu_star)?.result {
        return Err(Error::BasicNotVerySpecial);
    }
    let set = LambdaSet::new(model)?;
    let ch = restrict_character(model, &mu_star)?;
    let table: Vec<ComponentRow> = ch
        .support
        .iter()
        .filter(|(w, _)| set.contains(w))
        .map(|(w, c)| ComponentRow { weight: w.clone(), count: *c })
        .collect();
    let tate_dim = table.iter().map(|r| r.count).sum();
    let h = model.pairing_2rho(mu);
    if h % 2 != 0 {
        return Err(Error::NonIntegralDimension(format!("{h}/2")));
    }
    Ok(BasicStratum { mu_star, tate_dim, dimension: (h / 2) as u64, table })
}

/// Whether two Γ-classes agree up to `W₀`.
pub fn same_vsp_class(model: &GroupModel, a: &[i64], b: &[i64]) -> Result<bool> {
    Ok(GammaClasses::new(model)?.same_class(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn vsp(model: GroupModel, mu: &[i64], tau: &[i64]) -> AdlvQuery {
        AdlvQuery::new(model, MuInput::Splitting(mu.to_vec()), BInput::Vsp { tau: tau.to_vec() })
    }

    #[test]
    fn nonempty_examples() {
        assert!(adlv_nonempty(&vsp(catalog::gl(2), &[1, 0], &[1, 0])).unwrap());
        assert!(!adlv_nonempty(&vsp(catalog::gl(2), &[1, 0], &[1, 1])).unwrap());
        assert!(adlv_nonempty(&vsp(catalog::gl(2), &[2, 2], &[2, 2])).unwrap());
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(adlv_dimension(&vsp(catalog::gl(2), &[2, 0], &[1, 1])).unwrap(), 1);
        assert_eq!(adlv_dimension(&vsp(catalog::gl(2), &[2, 2], &[2, 2])).unwrap(), 0);
        let q = AdlvQuery::new(catalog::gl(2), MuInput::Splitting(vec![1, 0]), BInput::Basic { defect: Some(1) });
        assert_eq!(adlv_dimension(&q).unwrap(), 0);
        let q = AdlvQuery::new(catalog::gl(2), MuInput::Splitting(vec![1, 0]), BInput::Basic { defect: None });
        assert_eq!(adlv_dimension(&q), Err(Error::DefectUnavailable));
        assert_eq!(adlv_dimension(&vsp(catalog::gl(2), &[1, 0], &[1, 1])), Err(Error::EmptyVariety));
        let q = AdlvQuery::new(
            catalog::gl(2),
            MuInput::Splitting(vec![1, 0]),
            BInput::Explicit { nu: RatVec::new(vec![1, 1], 2), kappa: kottwitz_invariant(&catalog::gl(2), &[1, 0]), defect: 0, lambda_b: None },
        );
        assert!(matches!(adlv_dimension(&q), Err(Error::NonIntegralDimension(_))));
    }

    #[test]
    fn table_examples() {
        let t = component_table(&vsp(catalog::gl(2), &[2, 0], &[1, 1])).unwrap();
        assert_eq!(t.rows, vec![ComponentRow { weight: vec![1, 1], count: 1 }]);
        assert_eq!(t.total, 1);
        assert_eq!(component_table(&vsp(catalog::gl(2), &[3, 3], &[3, 3])).unwrap().total, 1);

        let m = catalog::res_ram_gl2();
        let f = FoldedDatum::new(&m).unwrap();
        let tau = f.lift(&[1, 1]);
        let q = vsp(m, &[1, 0, 1, 0], &tau);
        assert_eq!(component_table(&q).unwrap().total, 2);
        assert_eq!(component_table_can(&q, &[2, 0]).unwrap().total, 1);
        assert_eq!(component_table_can(&q, &[1, 1]).unwrap().total, 1);
        assert!(component_table_can(&q, &[3, -1]).is_err());
    }

    #[test]
    fn factorization_examples() {
        let c = very_special_count_factorization(&vsp(catalog::gl(2), &[1, 1], &[1, 1])).unwrap();
        assert_eq!((c.mv_factor, c.coset_factor.as_str()), (1, COSET_SYMBOL));
        let m = catalog::res_ram_gl2();
        let tau = FoldedDatum::new(&m).unwrap().lift(&[1, 1]);
        assert_eq!(very_special_count_factorization(&vsp(m, &[1, 0, 1, 0], &tau)).unwrap().mv_factor, 2);
        let c = very_special_count_factorization(&vsp(catalog::gl(3), &[1, 0, 0], &[1, 0, 0])).unwrap();
        assert_eq!(c.mv_factor, 1);
        assert_eq!(
            very_special_count_factorization(&vsp(catalog::gl(2), &[2, 0], &[1, 1])),
            Err(Error::NotMinuscule(vec![2, 0]))
        );
        assert_eq!(
            very_special_count_factorization(&vsp(catalog::pgl(2), &[1], &[1])),
            Err(Error::CenterNotConnected)
        );
    }

    #[test]
    fn satake_hom_examples() {
        let gl2 = catalog::gl(2);
        let mu = MuInput::Splitting(vec![2, 0]);
        assert_eq!(satake_hom_dim(&gl2, &[1, 0], &mu, &[2, 1]).unwrap(), 1);
        assert_eq!(satake_hom_dim(&gl2, &[1, 0], &mu, &[4, 0]).unwrap(), 0);
        assert_eq!(satake_hom_dim(&gl2, &[0, 0], &mu, &[2, 0]).unwrap(), 1);
        let m = catalog::res_ram_gl2();
        let b = branch_to_invariants(&m, &[1, 0, 1, 0]).unwrap();
        for (mu_p, k) in b {
            assert_eq!(satake_hom_dim(&m, &[0, 0], &MuInput::Splitting(vec![1, 0, 1, 0]), &mu_p).unwrap(), k);
        }
    }

    #[test]
    fn beta_examples() {
        assert!(beta_fiber_check(&catalog::gl(3), &[1, 0, 0], &[1, 1, 0], &[2, 1, 0]).unwrap());
        assert!(beta_fiber_check(&catalog::res_ram_gl2(), &[0, 0], &[1, 0, 1, 0], &[1, 1]).unwrap());
        assert!(beta_fiber_check(&catalog::res_ram_pgl2(), &[0], &[1, 1], &[0]).unwrap());
    }

    #[test]
    fn minimal_nu_examples() {
        let gl2 = catalog::gl(2);
        assert_eq!(minimal_nu(&gl2, &[2, 0], &[1, 1], 4).unwrap().nu, vec![0, -1]);
        assert_eq!(minimal_nu(&gl2, &[2, 0], &[2, 0], 4).unwrap().nu, vec![0, 0]);
        assert_eq!(minimal_nu(&gl2, &[2, 2], &[2, 2], 4).unwrap().nu, vec![0, 0]);
        assert!(matches!(minimal_nu(&gl2, &[2, 0], &[3, -1], 4), Err(Error::InvalidQuery(_))));
    }

    #[test]
    fn norm_examples() {
        let m = catalog::res_unram_gl2();
        let r = norm_reduce(&m, &[1, 0, 1, 0], &[1, 0, 0, 1]).unwrap();
        assert_eq!(r.pairing_blocks, vec![1, 1]);
        assert_eq!(r.pairing_total, 2);
        assert_eq!(r.mu_sum, vec![2, 0]);
        assert_eq!(r.nm_b, vec![1, 1]);
        assert!(r.identities_hold);
        let r = norm_reduce(&catalog::gl(2), &[1, 0], &[0, 1]).unwrap();
        assert_eq!(r.mu_shifted, vec![vec![1, 0]]);
        assert_eq!(r.nm_b, vec![0, 1]);
        assert_eq!(norm_reduce(&catalog::res_ram_gl2(), &[1, 0, 0, 0], &[0; 4]), Err(Error::NotResUnramPreset));
    }

    #[test]
    fn basic_stratum_examples() {
        let r = basic_stratum_mv_count(&catalog::gl(2), &[1, 1]).unwrap();
        assert_eq!((r.tate_dim, r.dimension), (1, 0));
        let r = basic_stratum_mv_count(&catalog::sl(2), &[1]).unwrap();
        assert_eq!((r.tate_dim, r.dimension), (1, 1));
        assert_eq!(basic_stratum_mv_count(&catalog::gl(2), &[1, 0]), Err(Error::BasicNotVerySpecial));
    }

    #[test]
    fn basic_lambda_b_is_found() {
        let q = AdlvQuery::new(catalog::gl(2), MuInput::Splitting(vec![2, 0]), BInput::Basic { defect: None });
        assert_eq!(adlv_dimension(&q).unwrap(), 1);
        assert_eq!(component_table(&q).unwrap().total, 1);
        let q = AdlvQuery::new(catalog::res_ram_gl2(), MuInput::Canonical(vec![2, 0]), BInput::Basic { defect: None });
        assert_eq!(adlv_dimension(&q).unwrap(), 1);
        assert_eq!(component_table_can(&q, &[2, 0]).unwrap().total, 1);
    }
}
