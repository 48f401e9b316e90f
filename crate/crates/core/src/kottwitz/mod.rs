//! Very special elements of `B(G)`, membership in `B(G, μ)`, the basic
//! element, `Λ` and the Tate part of restricted representations.

pub mod w0;

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::Serialize;

pub use w0::{longest_element, simple_orbits, simple_permutation, GammaClasses, RelativeWeyl};

use crate::char_engine::{full_character, restrict_character, Character, FoldedDatum};
use crate::error::{Error, Result};
use crate::group_model::{GroupModel, RootDatum};
use crate::lattice::{self, GroupElement};
use crate::linalg::{self, IntMatrix};
use crate::rational::{solve_square, RatVec};

/// A rational dominant coweight.
pub type NewtonPoint = RatVec;

/// A very special class `[ϖ^τ]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KottwitzVsp {
    pub tau: Vec<i64>,
    /// `λ_b`: the `W₀`-class of `τ_Γ`, given by its canonical member.
    pub lambda_b: GroupElement,
    pub kappa: GroupElement,
    pub newton: NewtonPoint,
}

impl KottwitzVsp {
    pub fn new(model: &GroupModel, tau: &[i64]) -> Result<Self> {
        let classes = GammaClasses::new(model)?;
        Self::with_classes(model, &classes, tau)
    }

    fn with_classes(model: &GroupModel, classes: &GammaClasses, tau: &[i64]) -> Result<Self> {
        Ok(KottwitzVsp {
            tau: tau.to_vec(),
            lambda_b: classes.canonical(tau).0,
            kappa: kottwitz_invariant(model, tau),
            newton: newton_point_vsp(model, tau)?,
        })
    }
}

/// Image of `τ` in `π₁(G)_Γ`.
pub fn kottwitz_invariant(model: &GroupModel, tau: &[i64]) -> GroupElement {
    lattice::pi1_gamma(model).1.project(tau)
}

/// Newton point of `[ϖ^τ]`: the dominant representative of the Γ-average.
pub fn newton_point_vsp(model: &GroupModel, tau: &[i64]) -> Result<NewtonPoint> {
    let avg = model.gamma_average(tau)?;
    Ok(model.datum.dominant_representative_rat(&avg).1)
}

/// Coefficients `c` with `⟨α_j, v − Σ c_i α_i^∨⟩ = 0` for every simple `j`.
pub fn coroot_coefficients(datum: &RootDatum, v: &RatVec) -> Vec<Ratio<i64>> {
    let r = datum.semisimple_rank();
    let c = datum.cartan_matrix();
    let a: Vec<Vec<Ratio<i64>>> =
        (0..r).map(|j| (0..r).map(|i| Ratio::from_integer(c[j][i])).collect()).collect();
    let b: Vec<Ratio<i64>> = (0..r).map(|j| v.pair(datum.simple_root(j))).collect();
    solve_square(&a, &b).expect("Cartan matrix is invertible")
}

pub fn coroot_combination(datum: &RootDatum, c: &[Ratio<i64>]) -> RatVec {
    c.iter().enumerate().fold(RatVec::zero(datum.rank), |acc, (i, ci)| {
        acc.add(&RatVec::integral(datum.simple_coroot(i).to_vec()).scale(*ci))
    })
}

/// Central part of the Γ-average `μ̄` of `μ`, which is the Newton point of
/// the basic element of `B(G, μ)`.
pub fn newton_basic(model: &GroupModel, mu: &[i64]) -> Result<NewtonPoint> {
    model.datum.require_dominant(mu)?;
    Ok(central_part(&model.datum, &model.gamma_average(mu)?))
}

/// Projection of `v` along the coroot span onto the central directions.
pub fn central_part(datum: &RootDatum, v: &RatVec) -> RatVec {
    let c = coroot_coefficients(datum, v);
    v.sub(&coroot_combination(datum, &c))
}

/// `small ≤ big` in the rational dominance order: `big − small` is a
/// nonnegative rational combination of simple coroots.
pub fn q_dominates(datum: &RootDatum, big: &RatVec, small: &RatVec) -> bool {
    let diff = big.sub(small);
    let c = coroot_coefficients(datum, &diff);
    c.iter().all(|x| *x >= Ratio::from_integer(0)) && diff.sub(&coroot_combination(datum, &c)).numerator().iter().all(|&x| x == 0)
}

/// Total multiplicity of the weights of `V_μ` whose Γ-class lies in the
/// `W₀`-orbit of `τ_Γ`.
pub fn vsp_multiplicity(model: &GroupModel, tau: &[i64], mu: &[i64]) -> Result<u64> {
    let classes = GammaClasses::new(model)?;
    let orbit = classes.orbit(tau);
    let ch = full_character(&model.datum, mu)?;
    Ok(ch.support.iter().filter(|(w, _)| orbit.contains_key(&classes.project(w))).map(|(_, m)| m).sum())
}

/// Whether `[ϖ^τ] ∈ B(G, μ)`.
pub fn vsp_in_bgmu(model: &GroupModel, tau: &[i64], mu: &[i64]) -> Result<bool> {
    Ok(vsp_multiplicity(model, tau, mu)? > 0)
}

/// The very special classes in `B(G, μ)`, one per `W₀`-class of weights of
/// `V_μ`, ordered by class.
pub fn enumerate_vsp_bgmu(model: &GroupModel, mu: &[i64]) -> Result<Vec<KottwitzVsp>> {
    let classes = GammaClasses::new(model)?;
    let ch = full_character(&model.datum, mu)?;
    let two_rho = &model.datum.two_rho;
    let mut best: BTreeMap<GroupElement, (i64, Vec<i64>)> = BTreeMap::new();
    for w in ch.support.keys() {
        let (class, _) = classes.canonical(w);
        let key = (linalg::dot(two_rho, w), w.clone());
        match best.get(&class) {
            Some(k) if *k >= key => {}
            _ => {
                best.insert(class, key);
            }
        }
    }
    best.into_values()
        .map(|(_, w)| {
            let tau = classes.canonical(&w).1;
            KottwitzVsp::with_classes(model, &classes, &tau)
        })
        .collect()
}

/// Membership test for `Λ` on the free part of `X_*(T)_I`.
#[derive(Clone, Debug)]
pub struct LambdaSet {
    pub folded: FoldedDatum,
    central: Vec<Vec<i64>>,
    sigma_powers: Vec<IntMatrix>,
}

impl LambdaSet {
    pub fn new(model: &GroupModel) -> Result<Self> {
        let folded = FoldedDatum::new(model)?;
        let central = model.datum.central_coweights().iter().map(|z| folded.project(z)).collect();
        let m = folded.residual_order.max(1);
        let mut sigma_powers = vec![IntMatrix::identity(folded.datum.rank)];
        for i in 1..m {
            sigma_powers.push(folded.sigma.mul(&sigma_powers[i - 1]));
        }
        Ok(LambdaSet { folded, central, sigma_powers })
    }

    /// `Σ_{i<m} σ^i(λ_I)`.
    pub fn norm(&self, lambda_i: &[i64]) -> Vec<i64> {
        self.sigma_powers
            .iter()
            .fold(vec![0; lambda_i.len()], |acc, s| linalg::add(&acc, &s.apply(lambda_i)))
    }

    pub fn contains(&self, lambda_i: &[i64]) -> bool {
        linalg::in_lattice(&self.central, &self.norm(lambda_i))
    }

    /// Whether `a − b ∈ (σ − 1) X_*(T)_I`.
    pub fn same_coset(&self, a: &[i64], b: &[i64]) -> bool {
        let n = self.folded.datum.rank;
        let d = self.folded.sigma.sub(&IntMatrix::identity(n));
        let gens: Vec<Vec<i64>> = (0..n).map(|j| d.col(j)).collect();
        linalg::in_lattice(&gens, &linalg::sub(a, b))
    }

    pub fn tate_dim(&self, ch: &Character) -> u64 {
        ch.support.iter().filter(|(w, _)| self.contains(w)).map(|(_, m)| m).sum()
    }
}

pub fn lambda_membership(model: &GroupModel, lambda_i: &[i64]) -> Result<bool> {
    let set = LambdaSet::new(model)?;
    crate::error::check_len(set.folded.datum.rank, lambda_i)?;
    Ok(set.contains(lambda_i))
}

/// Support weights of `ch` (a character on `X_*(T)_I`) lying in `Λ`.
pub fn tate_lambda_set(model: &GroupModel, ch: &Character) -> Result<Vec<Vec<i64>>> {
    let set = LambdaSet::new(model)?;
    Ok(ch.support.keys().filter(|w| set.contains(w)).cloned().collect())
}

/// Which representation the Tate part is taken of.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TateSide {
    /// `V_μ` restricted to `Ĝ^I`.
    Splitting,
    /// `V_{μ'_I}` for a dominant `μ'_I` of the folded datum.
    Canonical(Vec<i64>),
}

pub fn tate_dim(model: &GroupModel, mu: &[i64], side: &TateSide) -> Result<u64> {
    let set = LambdaSet::new(model)?;
    let ch = match side {
        TateSide::Splitting => restrict_character(model, mu)?,
        TateSide::Canonical(mu_i) => full_character(&set.folded.datum, mu_i)?,
    };
    Ok(set.tate_dim(&ch))
}

/// Whether the weights of `V_μ|` in `Λ` form a single `(σ − 1)`-coset.
pub fn tate_single_coset(model: &GroupModel, mu: &[i64]) -> Result<bool> {
    let set = LambdaSet::new(model)?;
    let ch = restrict_character(model, mu)?;
    let weights: Vec<&Vec<i64>> = ch.support.keys().filter(|w| set.contains(w)).collect();
    Ok(weights.windows(2).all(|p| set.same_coset(p[0], p[1])))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasicVspReport {
    pub result: bool,
    /// `μ_I` and `dim V_{μ_I}^{Tate}`.
    pub mu_i: Vec<i64>,
    pub tate_dim_canonical: u64,
    pub tate_dim_splitting: u64,
    /// `(⟨α_i, μ⟩)_i` and whether it is trivial on `Z(Ĝ_sc)^Γ`.
    pub mu_adj: Vec<i64>,
    pub mu_adj_trivial: bool,
}

/// Whether `μ_adj` vanishes in `Z^r / (Q^∨ + Σ (γ − 1) P^∨)`, the character
/// group of `Z(Ĝ_sc)^Γ`, in fundamental-coweight coordinates.
fn mu_adj_trivial(model: &GroupModel, mu_adj: &[i64]) -> Result<bool> {
    let d = &model.datum;
    let r = d.semisimple_rank();
    let c = d.cartan_matrix();
    let mut rels: Vec<Vec<i64>> = (0..r).map(|j| (0..r).map(|i| c[i][j]).collect()).collect();
    for g in model.action.gamma_gens() {
        let p = simple_permutation(d, &g)?;
        for (i, &pi) in p.iter().enumerate() {
            let mut v = vec![0; r];
            v[pi] += 1;
            v[i] -= 1;
            rels.push(v);
        }
    }
    Ok(linalg::in_lattice(&rels, mu_adj))
}

/// Whether the basic element of `B(G, μ)` is very special, decided by the
/// Tate part of `V_{μ_I}` and by `μ_adj`; the two must agree.
pub fn basic_is_very_special(model: &GroupModel, mu: &[i64]) -> Result<BasicVspReport> {
    model.datum.require_dominant(mu)?;
    let set = LambdaSet::new(model)?;
    let mu_i = set.folded.project(mu);
    let tate_dim_canonical = set.tate_dim(&full_character(&set.folded.datum, &mu_i)?);
    let tate_dim_splitting = set.tate_dim(&restrict_character(model, mu)?);
    let d = &model.datum;
    let mu_adj: Vec<i64> = (0..d.semisimple_rank()).map(|i| linalg::dot(d.simple_root(i), mu)).collect();
    let adj = mu_adj_trivial(model, &mu_adj)?;
    let tate = tate_dim_canonical > 0;
    if tate != adj {
        return Err(Error::CriteriaDisagree { tate, character: adj });
    }
    Ok(BasicVspReport { result: tate, mu_i, tate_dim_canonical, tate_dim_splitting, mu_adj, mu_adj_trivial: adj })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn rv(v: &[i64], d: i64) -> RatVec {
        RatVec::new(v.to_vec(), d)
    }

    #[test]
    fn kappa_examples() {
        let gl2 = catalog::gl(2);
        assert_eq!(kottwitz_invariant(&gl2, &[1, 0]).free, vec![1]);
        assert_eq!(kottwitz_invariant(&gl2, &[1, 1]).free, vec![2]);
        assert!(kottwitz_invariant(&catalog::sl(2), &[5]).is_zero());
        let k = kottwitz_invariant(&catalog::pgl(2), &[1]);
        assert!(k.free.is_empty());
        assert_eq!(k.torsion, vec![1]);
        assert!(kottwitz_invariant(&catalog::pgl(2), &[2]).is_zero());
    }

    #[test]
    fn newton_examples() {
        let gl2 = catalog::gl(2);
        assert_eq!(newton_point_vsp(&gl2, &[0, 1]).unwrap(), rv(&[1, 0], 1));
        let m = catalog::res_unram_gl2();
        assert_eq!(newton_point_vsp(&m, &[1, 0, 0, 0]).unwrap(), rv(&[1, 0, 1, 0], 2));
        assert_eq!(newton_point_vsp(&gl2, &[3, 3]).unwrap(), rv(&[3, 3], 1));
        assert_eq!(newton_basic(&gl2, &[1, 0]).unwrap(), rv(&[1, 1], 2));
        assert_eq!(newton_basic(&gl2, &[2, 2]).unwrap(), rv(&[2, 2], 1));
        assert_eq!(newton_basic(&catalog::sl(2), &[1]).unwrap(), rv(&[0], 1));
    }

    #[test]
    fn dominance() {
        let d = catalog::gl(2).datum;
        assert!(q_dominates(&d, &rv(&[1, 0], 1), &rv(&[1, 1], 2)));
        assert!(!q_dominates(&d, &rv(&[1, 1], 2), &rv(&[1, 0], 1)));
        assert!(!q_dominates(&d, &rv(&[1, 0], 1), &rv(&[1, 1], 1)));
    }

    #[test]
    fn in_bgmu_examples() {
        let gl2 = catalog::gl(2);
        assert!(vsp_in_bgmu(&gl2, &[1, 0], &[1, 0]).unwrap());
        assert!(vsp_in_bgmu(&gl2, &[0, 1], &[1, 0]).unwrap());
        assert!(!vsp_in_bgmu(&gl2, &[2, -1], &[1, 0]).unwrap());
        assert!(vsp_in_bgmu(&gl2, &[3, 3], &[3, 3]).unwrap());
    }

    #[test]
    fn enumeration_examples() {
        let gl2 = catalog::gl(2);
        let taus = |mu: &[i64]| -> Vec<Vec<i64>> {
            enumerate_vsp_bgmu(&gl2, mu).unwrap().into_iter().map(|v| v.tau).collect()
        };
        assert_eq!(taus(&[1, 0]), vec![vec![1, 0]]);
        assert_eq!(taus(&[1, 1]), vec![vec![1, 1]]);
        let mut t = taus(&[2, 0]);
        t.sort();
        assert_eq!(t, vec![vec![1, 1], vec![2, 0]]);
    }

    #[test]
    fn unitary_enumeration_uses_torsion() {
        let u3 = catalog::u3();
        let all = enumerate_vsp_bgmu(&u3, &[1, 0, 0]).unwrap();
        assert_eq!(all.len(), 2);
        for v in &all {
            assert!(vsp_in_bgmu(&u3, &v.tau, &[1, 0, 0]).unwrap());
            assert_eq!(v.kappa, kottwitz_invariant(&u3, &[1, 0, 0]));
        }
    }

    #[test]
    fn lambda_examples() {
        let gl2 = catalog::gl(2);
        assert!(lambda_membership(&gl2, &[1, 1]).unwrap());
        assert!(!lambda_membership(&gl2, &[1, 0]).unwrap());
        assert!(lambda_membership(&catalog::sl(2), &[0]).unwrap());
        let m = catalog::res_unram_gl2();
        assert!(lambda_membership(&m, &[1, 0, 0, 1]).unwrap());
        assert!(!lambda_membership(&m, &[1, 0, 0, 0]).unwrap());
    }

    #[test]
    fn tate_examples() {
        let gl2 = catalog::gl(2);
        assert_eq!(tate_dim(&gl2, &[1, 0], &TateSide::Splitting).unwrap(), 0);
        assert_eq!(tate_dim(&gl2, &[1, 1], &TateSide::Splitting).unwrap(), 1);
        assert_eq!(tate_dim(&catalog::sl(2), &[1], &TateSide::Splitting).unwrap(), 1);
        assert_eq!(tate_dim(&gl2, &[0, 0], &TateSide::Canonical(vec![2, 0])).unwrap(), 1);
    }

    #[test]
    fn basic_examples() {
        let gl2 = catalog::gl(2);
        assert!(basic_is_very_special(&gl2, &[1, 1]).unwrap().result);
        let r = basic_is_very_special(&gl2, &[1, 0]).unwrap();
        assert!(!r.result);
        assert_eq!(r.mu_adj, vec![1]);
        assert!(!basic_is_very_special(&catalog::gl(4), &[1, 1, 0, 0]).unwrap().result);
        let r = basic_is_very_special(&catalog::u3(), &[1, 0, 0]).unwrap();
        assert!(r.result);
        assert_eq!(r.tate_dim_canonical, 1);
        assert!(basic_is_very_special(&catalog::su3(), &[1, 1]).unwrap().result);
    }

    #[test]
    fn basic_via_newton() {
        for m in [catalog::gl(2), catalog::gl(3), catalog::u3(), catalog::res_unram_gl2(), catalog::res_ram_gl2()] {
            for mu in crate::sweep::dominant_coweights(&m.datum, 6) {
                let r = basic_is_very_special(&m, &mu).unwrap();
                let nb = newton_basic(&m, &mu).unwrap();
                let k = kottwitz_invariant(&m, &mu);
                let hit = enumerate_vsp_bgmu(&m, &mu).unwrap().iter().any(|v| v.kappa == k && v.newton == nb);
                assert_eq!(r.result, hit, "{} {mu:?}", m.label);
                assert_eq!(r.result, r.tate_dim_splitting > 0, "{} {mu:?}", m.label);
            }
        }
    }
}
