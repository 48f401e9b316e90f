//! Relative coroots, the determinant-of-pairing divisor and genericity of
//! rational Satake parameters.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use crate::char_engine::{full_character, Character, FoldedDatum};
use crate::error::{Error, Result};
use crate::group_model::GroupModel;
use crate::kottwitz::{LambdaSet, RelativeWeyl};
use crate::lattice::{self, GroupElement, QuotientMap};
use crate::linalg::{self, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelativeCoroot {
    /// In the free part of `X_*(T)_I`, fixed by `σ`.
    pub alpha: Vec<i64>,
    /// Whether `α/2` is also a relative coroot.
    pub multipliable: bool,
    /// Lexicographically least coroot of `Ĝ^I` among the `σ`-orbits giving `α`.
    pub alpha_sigma: Vec<i64>,
    /// The `σ`-orbits of coroots of `Ĝ^I` giving `α`.
    pub orbits: Vec<Vec<Vec<i64>>>,
}

/// Which terms the exponent sum `Σ_n dim V(n α_σ)` runs over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZetaStart {
    #[default]
    Zero,
    One,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorSign {
    /// `(e^α − 1)`.
    Minus,
    /// `(e^α + 1)`.
    Plus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorEntry {
    pub alpha: Vec<i64>,
    pub sign: FactorSign,
    pub zeta: u64,
}

/// `∏ (e^α ∓ 1)^{ζ_α}`; empty means the pairing is perfect.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Divisor {
    pub entries: Vec<DivisorEntry>,
}

impl Divisor {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// A representation of `Ĝ`, by highest weight or by character on `X_*(T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VSpec {
    Highest(Vec<i64>),
    Character(Character),
}

impl VSpec {
    pub fn character(&self, model: &GroupModel) -> Result<Character> {
        match self {
            VSpec::Highest(mu) => full_character(&model.datum, mu),
            VSpec::Character(ch) => {
                if let Some(w) = ch.support.keys().find(|w| w.len() != model.rank()) {
                    return Err(Error::DimensionMismatch { expected: model.rank(), got: w.len() });
                }
                Ok(ch.clone())
            }
        }
    }
}

/// Relative coroots: `k · Σ_{σ-orbit} γ^∨` over the `σ`-orbits of coroots of
/// `Ĝ^I`, with `k = 2 / ⟨β, Σ γ^∨⟩` for the root `β` of a member of the orbit
/// (so `k = 1` unless the orbit is a pair of adjacent coroots).
pub fn relative_coroots(model: &GroupModel) -> Result<Vec<RelativeCoroot>> {
    let f = FoldedDatum::new(model)?;
    let d = &f.datum;
    let mut by_alpha: BTreeMap<Vec<i64>, Vec<Vec<Vec<i64>>>> = BTreeMap::new();
    let mut seen = std::collections::BTreeSet::new();
    for c in &d.coroots {
        if seen.contains(c) {
            continue;
        }
        let mut orbit = lattice::orbit(std::slice::from_ref(&f.sigma), c)?;
        orbit.sort();
        let sum = orbit.iter().fold(vec![0; d.rank], |a, x| linalg::add(&a, x));
        let i = d.coroot_index(c).ok_or_else(|| Error::InvalidModel("Frobenius does not preserve coroots".into()))?;
        let alpha = match linalg::dot(&d.roots[i], &sum) {
            2 => sum,
            1 => linalg::scale(2, &sum),
            p => return Err(Error::InvalidModel(format!("coroot orbit pairs to {p} with its root"))),
        };
        for x in &orbit {
            seen.insert(x.clone());
        }
        by_alpha.entry(alpha).or_default().push(orbit);
    }
    let keys: Vec<Vec<i64>> = by_alpha.keys().cloned().collect();
    Ok(by_alpha
        .into_iter()
        .map(|(alpha, mut orbits)| {
            orbits.sort();
            let half_present = alpha.iter().all(|x| x % 2 == 0) && keys.contains(&alpha.iter().map(|x| x / 2).collect());
            let alpha_sigma = orbits.iter().map(|o| o[0].clone()).min().expect("nonempty");
            RelativeCoroot { alpha, multipliable: half_present, alpha_sigma, orbits }
        })
        .collect())
}

/// `X_*(T) → X_*(T)_Γ` together with `X_*(T)_I → X_*(T)_I`-lifts.
struct GammaPush {
    folded: FoldedDatum,
    gamma: QuotientMap,
}

impl GammaPush {
    fn new(model: &GroupModel) -> Result<Self> {
        Ok(GammaPush { folded: FoldedDatum::new(model)?, gamma: model.gamma_coinvariants()?.1 })
    }

    fn class_of_folded(&self, v: &[i64]) -> GroupElement {
        self.gamma.project(&self.folded.lift(v))
    }

    fn push(&self, ch: &Character) -> BTreeMap<GroupElement, u64> {
        let mut out = BTreeMap::new();
        for (w, m) in &ch.support {
            *out.entry(self.gamma.project(w)).or_insert(0) += m;
        }
        out
    }
}

fn zeta_from(push: &GammaPush, classes: &BTreeMap<GroupElement, u64>, alpha_sigma: &[i64], start: ZetaStart) -> u64 {
    let base = push.class_of_folded(alpha_sigma);
    let min_n = match start {
        ZetaStart::Zero => 0,
        ZetaStart::One => 1,
    };
    let mut total = 0;
    for (cls, m) in classes {
        // n with cls = n·base on the free part; base is free and nonzero.
        let pos = base.free.iter().position(|&x| x != 0).expect("relative coroots have free image");
        if cls.free[pos] % base.free[pos] != 0 {
            continue;
        }
        let n = cls.free[pos] / base.free[pos];
        if n < min_n {
            continue;
        }
        if push.class_of_folded(&linalg::scale(n, alpha_sigma)) == *cls {
            total += m;
        }
    }
    total
}

/// `ζ_α = Σ_n dim V|_{Ĝ^Γ}(n α_σ)` for every relative coroot `α`.
pub fn zeta_exponents(model: &GroupModel, v: &VSpec, start: ZetaStart) -> Result<Vec<(RelativeCoroot, u64)>> {
    let push = GammaPush::new(model)?;
    let classes = push.push(&v.character(model)?);
    Ok(relative_coroots(model)?
        .into_iter()
        .map(|a| {
            let z = zeta_from(&push, &classes, &a.alpha_sigma, start);
            (a, z)
        })
        .collect())
}

/// `ζ_α` computed from the least member of each orbit separately.
pub fn zeta_per_orbit(model: &GroupModel, v: &VSpec, start: ZetaStart) -> Result<Vec<Vec<u64>>> {
    let push = GammaPush::new(model)?;
    let classes = push.push(&v.character(model)?);
    Ok(relative_coroots(model)?
        .iter()
        .map(|a| a.orbits.iter().flatten().map(|c| zeta_from(&push, &classes, c, start)).collect())
        .collect())
}

pub fn determinant_divisor(model: &GroupModel, v: &VSpec, start: ZetaStart) -> Result<Divisor> {
    let entries = zeta_exponents(model, v, start)?
        .into_iter()
        .filter(|(_, z)| *z > 0)
        .map(|(a, zeta)| DivisorEntry {
            sign: if a.multipliable { FactorSign::Plus } else { FactorSign::Minus },
            alpha: a.alpha,
            zeta,
        })
        .collect();
    Ok(Divisor { entries })
}

/// `W₀` acting on the free part of `X_*(T)_I`.
pub fn relative_weyl_generators(model: &GroupModel) -> Result<Vec<IntMatrix>> {
    let f = FoldedDatum::new(model)?;
    Ok(RelativeWeyl::new(&f.datum, std::slice::from_ref(&f.sigma))?.gens)
}

/// A point of `T̂^I_σ` with rational coordinates: values on a basis of a
/// full-rank sublattice of `X_*(T)_I^σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatakeParameter {
    pub basis: Vec<Vec<i64>>,
    pub values: Vec<BigRational>,
}

/// Canonical basis of `X_*(T)_I^σ`.
pub fn invariant_basis(model: &GroupModel) -> Result<Vec<Vec<i64>>> {
    let f = FoldedDatum::new(model)?;
    let n = f.datum.rank;
    let inv = lattice::invariants(n, std::slice::from_ref(&f.sigma))?;
    Ok(linalg::canonical_lattice_basis(&inv, n))
}

impl SatakeParameter {
    /// Values on [`invariant_basis`].
    pub fn on_invariants(model: &GroupModel, values: Vec<BigRational>) -> Result<Self> {
        Self::on_basis(model, invariant_basis(model)?, values)
    }

    pub fn on_basis(model: &GroupModel, basis: Vec<Vec<i64>>, values: Vec<BigRational>) -> Result<Self> {
        let f = FoldedDatum::new(model)?;
        let inv = invariant_basis(model)?;
        if basis.len() != inv.len() || values.len() != basis.len() {
            return Err(Error::DimensionMismatch { expected: inv.len(), got: values.len().min(basis.len()) });
        }
        for b in &basis {
            crate::error::check_len(f.datum.rank, b)?;
            if f.sigma.apply(b) != *b {
                return Err(Error::InvalidQuery(format!("basis vector {b:?} is not fixed by Frobenius")));
            }
        }
        let m = IntMatrix::from_cols(&basis, f.datum.rank);
        if linalg::smith_normal_form(&m).rank() != basis.len() {
            return Err(Error::InvalidQuery("parameter basis is not independent".into()));
        }
        if values.iter().any(|v| v.is_zero()) {
            return Err(Error::InvalidQuery("parameter values must be nonzero".into()));
        }
        Ok(SatakeParameter { basis, values })
    }

    /// `s(x)` for `σ`-fixed `x`.
    pub fn evaluate(&self, x: &[i64]) -> Result<BigRational> {
        if linalg::is_zero(x) {
            return Ok(BigRational::one());
        }
        let m = IntMatrix::from_cols(&self.basis, x.len());
        let a = match linalg::solve_integer(&m, x) {
            Some(a) => a,
            None => {
                let inv_rank = self.basis.len();
                let mut ext = self.basis.clone();
                ext.push(x.to_vec());
                let r = linalg::smith_normal_form(&IntMatrix::from_cols(&ext, x.len())).rank();
                return Err(if r == inv_rank {
                    Error::NonRationalUnsupported
                } else {
                    Error::InvalidQuery(format!("{x:?} is not fixed by Frobenius"))
                });
            }
        };
        Ok(self.values.iter().zip(&a).fold(BigRational::one(), |acc, (v, &e)| acc * Pow::pow(v, e as i32)))
    }
}

fn is_one_or_minus_one(v: &BigRational) -> bool {
    v.is_one() || *v == -BigRational::one()
}

/// `s` avoids every factor of the divisor of `V`.
pub fn is_v_general(model: &GroupModel, v: &VSpec, s: &SatakeParameter, start: ZetaStart) -> Result<bool> {
    for e in determinant_divisor(model, v, start)?.entries {
        let val = s.evaluate(&e.alpha)?;
        let bad = match e.sign {
            FactorSign::Minus => val.is_one(),
            FactorSign::Plus => val == -BigRational::one(),
        };
        if bad {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Weights of `V|_{Ĝ^I}` with the value `s(Σ_{i<m} σ^i λ_I)` and whether
/// they lie in `Λ`.
pub fn weight_class_values(model: &GroupModel, v: &VSpec, s: &SatakeParameter) -> Result<Vec<(Vec<i64>, u64, bool, BigRational)>> {
    let set = LambdaSet::new(model)?;
    let ch = v.character(model)?;
    let restricted = ch.push(crate::char_engine::LatticeTag::InertiaCoinvariants, |w| set.folded.project(w));
    restricted
        .support
        .iter()
        .map(|(w, m)| Ok((w.clone(), *m, set.contains(w), s.evaluate(&set.norm(w))?)))
        .collect()
}

/// No non-central weight class of `V` takes a root of unity (for rational
/// values: `±1`) at `s`.
pub fn is_strongly_v_general(model: &GroupModel, v: &VSpec, s: &SatakeParameter) -> Result<bool> {
    Ok(weight_class_values(model, v, s)?.iter().all(|(_, _, central, val)| *central || !is_one_or_minus_one(val)))
}

/// Total dimension of the weight spaces of `V|` fixed by some power
/// `(γφ)^{jm}`, `j ≥ 1`.
pub fn fixed_point_count(model: &GroupModel, v: &VSpec, s: &SatakeParameter) -> Result<u64> {
    Ok(weight_class_values(model, v, s)?.iter().filter(|(_, _, _, val)| is_one_or_minus_one(val)).map(|(_, m, _, _)| m).sum())
}

/// Whether `s` has finite order on the central part: `±1` on every `Λ`-class.
pub fn central_finite_order(model: &GroupModel, v: &VSpec, s: &SatakeParameter) -> Result<bool> {
    Ok(weight_class_values(model, v, s)?.iter().all(|(_, _, central, val)| !*central || is_one_or_minus_one(val)))
}

/// Whether every divisor coroot of `V` shares its Γ-class with a weight of
/// `V ⊗ V^*`.
pub fn divisor_covered_by_end(model: &GroupModel, v: &VSpec, start: ZetaStart) -> Result<bool> {
    let push = GammaPush::new(model)?;
    let ch = v.character(model)?;
    let end = push.push(&ch.product(&ch.dual()));
    Ok(determinant_divisor(model, v, start)?
        .entries
        .iter()
        .all(|e| end.contains_key(&push.class_of_folded(&e.alpha))))
}

pub fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}


#[cfg(test)]
mod proptests {
    use super::*;
    use crate::catalog;
    use crate::sweep::dominant_coweights;
    use proptest::prelude::*;

    fn models() -> Vec<GroupModel> {
        vec![catalog::gl(3), catalog::pgl(2), catalog::su3(), catalog::u3(), catalog::res_unram_gl2(), catalog::res_ram_gl2(), catalog::b2()]
    }

    fn zetas(m: &GroupModel, ch: Character) -> BTreeMap<Vec<i64>, u64> {
        zeta_exponents(m, &VSpec::Character(ch), ZetaStart::Zero).unwrap().into_iter().map(|(a, z)| (a.alpha, z)).collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn divisor_symmetries(idx in 0usize..7, p1 in 0usize..40, p2 in 0usize..40) {
            let m = &models()[idx];
            let mus = dominant_coweights(&m.datum, 6);
            let a = full_character(&m.datum, &mus[p1 % mus.len()]).unwrap();
            let b = full_character(&m.datum, &mus[p2 % mus.len()]).unwrap();
            let za = zetas(m, a.clone());
            let zb = zetas(m, b.clone());
            let zs = zetas(m, a.sum(&b));
            for (k, v) in &zs {
                prop_assert_eq!(*v, za[k] + zb[k]);
            }
            let zd = zetas(m, a.dual());
            for (k, v) in &za {
                prop_assert_eq!(*v, zd[&linalg::neg(k)]);
            }
            for g in relative_weyl_generators(m).unwrap() {
                for (k, v) in &za {
                    prop_assert_eq!(*v, za[&g.apply(k)]);
                }
            }
            for per in zeta_per_orbit(m, &VSpec::Character(a), ZetaStart::Zero).unwrap() {
                prop_assert!(per.windows(2).all(|w| w[0] == w[1]));
            }
        }
    }
}
