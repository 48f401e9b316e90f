//! The root datum of `Ĝ^I` on the free part of `X_*(T)_I`, and restriction
//! of `Ĝ`-characters to it.

use std::collections::BTreeMap;

use super::{decompose_character, full_character, Character, LatticeTag};
use crate::error::{Error, Result};
use crate::group_model::{GroupModel, RootDatum};
use crate::lattice::{self, QuotientMap};
use crate::linalg::{self, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldedDatum {
    /// Coroots are the images of the coroots of `G`; roots are the descended
    /// inertia-orbit sums of the roots of `G`.
    pub datum: RootDatum,
    pub projection: QuotientMap,
    /// Frobenius on the free part of `X_*(T)_I`.
    pub sigma: IntMatrix,
    pub residual_order: usize,
}

/// `X_*(T) → X_*(T)_I`, refusing quotients with torsion.
pub fn inertia_projection(model: &GroupModel) -> Result<QuotientMap> {
    let (g, q) = model.inertia_coinvariants()?;
    if !g.is_torsion_free() {
        return Err(Error::TorsionInCoinvariants(g.torsion));
    }
    Ok(q)
}

impl FoldedDatum {
    pub fn new(model: &GroupModel) -> Result<Self> {
        let q = inertia_projection(model)?;
        let d = &model.datum;
        let k = q.target.free_rank;
        let mut by_coroot: BTreeMap<Vec<i64>, Vec<i64>> = BTreeMap::new();
        let mut order: Vec<Vec<i64>> = Vec::new();
        let mut image_of = Vec::with_capacity(d.num_roots());
        for i in 0..d.num_roots() {
            let orbit = lattice::orbit(&model.action.inertia_gens, &d.coroots[i])?;
            let mut sum = vec![0; d.rank];
            for c in &orbit {
                let j = d
                    .coroot_index(c)
                    .ok_or_else(|| Error::InvalidModel("inertia does not preserve the coroots".into()))?;
                sum = linalg::add(&sum, &d.roots[j]);
            }
            let cbar = q.project_free(&d.coroots[i]);
            let rbar = q.descend_functional(&sum);
            match by_coroot.get(&cbar) {
                Some(r) if *r != rbar => {
                    return Err(Error::InvalidModel("folded coroot with two different roots".into()))
                }
                Some(_) => {}
                None => {
                    by_coroot.insert(cbar.clone(), rbar);
                    order.push(cbar.clone());
                }
            }
            image_of.push(cbar);
        }
        let mut roots = Vec::new();
        for c in &order {
            let r = &by_coroot[c];
            if linalg::dot(r, c) != 2 {
                return Err(Error::InvalidModel("inertia orbits of roots are not orthogonal".into()));
            }
            if by_coroot.contains_key(&linalg::scale(2, c)) {
                return Err(Error::InvalidModel("folded root system is not reduced".into()));
            }
            roots.push(r.clone());
        }
        let mut simple = Vec::new();
        for &s in &d.simple_indices {
            let idx = order.iter().position(|c| *c == image_of[s]).expect("image recorded");
            if !simple.contains(&idx) {
                simple.push(idx);
            }
        }
        let datum = RootDatum::new(k, roots, order, simple)?;
        let sigma = q.descend(&model.action.frobenius);
        Ok(FoldedDatum { datum, projection: q, sigma, residual_order: model.action.residual_order })
    }

    pub fn project(&self, v: &[i64]) -> Vec<i64> {
        self.projection.project_free(v)
    }

    pub fn lift(&self, v: &[i64]) -> Vec<i64> {
        self.projection.lift_free(v)
    }
}

/// Pushforward of the character of `V_μ` to `X_*(T)_I`.
pub fn restrict_character(model: &GroupModel, mu: &[i64]) -> Result<Character> {
    let q = inertia_projection(model)?;
    let ch = full_character(&model.datum, mu)?;
    Ok(ch.push(LatticeTag::InertiaCoinvariants, |w| q.project_free(w)))
}

/// Multiplicities of the irreducible `Ĝ^I`-representations in `V_μ|`.
pub fn branch_to_invariants(model: &GroupModel, mu: &[i64]) -> Result<BTreeMap<Vec<i64>, u64>> {
    let folded = FoldedDatum::new(model)?;
    let restricted = restrict_character(model, mu)?;
    decompose_character(&folded.datum, &restricted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::char_engine::{tensor_decompose, weight_multiplicity, weyl_dimension};

    #[test]
    fn trivial_inertia_is_identity() {
        let m = catalog::gl(3);
        let f = FoldedDatum::new(&m).unwrap();
        assert_eq!(f.datum.rank, 3);
        let r = restrict_character(&m, &[2, 1, 0]).unwrap();
        assert_eq!(r.support, full_character(&m.datum, &[2, 1, 0]).unwrap().support);
        assert_eq!(branch_to_invariants(&m, &[2, 1, 0]).unwrap(), BTreeMap::from([(vec![2, 1, 0], 1)]));
    }

    #[test]
    fn ramified_gl2() {
        let m = catalog::res_ram_gl2();
        let f = FoldedDatum::new(&m).unwrap();
        assert_eq!(f.datum.rank, 2);
        assert_eq!(f.project(&[1, 0, 0, 0]), f.project(&[0, 0, 1, 0]));
        let r = restrict_character(&m, &[1, 0, 1, 0]).unwrap();
        let expect: BTreeMap<Vec<i64>, u64> = [(vec![2, 0], 1), (vec![1, 1], 2), (vec![0, 2], 1)]
            .into_iter()
            .map(|(w, c)| (f.project(&f.lift(&w)), c))
            .collect();
        assert_eq!(f.project(&[1, 0, 1, 0]), vec![2, 0]);
        assert_eq!(r.support, expect);
        let r = restrict_character(&m, &[1, 0, 0, 0]).unwrap();
        assert_eq!(r.support, BTreeMap::from([(vec![0, 1], 1), (vec![1, 0], 1)]));
        let b = branch_to_invariants(&m, &[1, 0, 1, 0]).unwrap();
        assert_eq!(b, BTreeMap::from([(vec![1, 1], 1), (vec![2, 0], 1)]));
    }

    #[test]
    fn ramified_sl2() {
        // X_* of the simply connected model is the coroot lattice, so the
        // smallest nonzero dominant coweight is α^∨ (the adjoint of the dual).
        let m = catalog::res_ram_sl2();
        let f = FoldedDatum::new(&m).unwrap();
        let b = branch_to_invariants(&m, &[1, 1]).unwrap();
        assert_eq!(b, BTreeMap::from([(vec![0], 1), (vec![1], 1), (vec![2], 1)]));
        assert_eq!(weyl_dimension(&f.datum, &[2]).unwrap(), 5);
    }

    #[test]
    fn ramified_pgl2() {
        // Here X_* is the coweight lattice and ω = (1) is available.
        let m = catalog::res_ram_pgl2();
        let b = branch_to_invariants(&m, &[1, 1]).unwrap();
        assert_eq!(b, BTreeMap::from([(vec![0], 1), (vec![2], 1)]));
    }

    #[test]
    fn e_fold_tensor_model() {
        let m = catalog::res_ram_gl2();
        let f = FoldedDatum::new(&m).unwrap();
        for (a, b) in [([1, 0], [1, 0]), ([2, 0], [1, 1]), ([2, 1], [0, -1])] {
            let mu = [a[0], a[1], b[0], b[1]];
            let branched = branch_to_invariants(&m, &mu).unwrap();
            let tensor = tensor_decompose(&f.datum, &f.project(&[a[0], a[1], 0, 0]), &f.project(&[b[0], b[1], 0, 0])).unwrap();
            assert_eq!(branched, tensor);
        }
    }

    #[test]
    fn restriction_square() {
        for m in [catalog::res_ram_gl2(), catalog::res_unram_gl2(), catalog::res_ram_sl2()] {
            let f = FoldedDatum::new(&m).unwrap();
            let mu = m.datum.dominant_representative(&m.datum.two_rho_vee()).1;
            let r = restrict_character(&m, &mu).unwrap();
            let b = branch_to_invariants(&m, &mu).unwrap();
            for (lam, mult) in &r.support {
                let s: u64 = b
                    .iter()
                    .map(|(nu, k)| k * weight_multiplicity(&f.datum, nu, lam).unwrap())
                    .sum();
                assert_eq!(s, *mult, "{}", m.label);
            }
        }
    }

    #[test]
    fn unramified_folding_is_trivial_on_lattice() {
        let m = catalog::res_unram_gl2();
        let f = FoldedDatum::new(&m).unwrap();
        assert_eq!(f.datum.rank, 4);
        assert_eq!(f.residual_order, 2);
        assert_eq!(f.sigma.apply(&f.project(&[1, 0, 0, 0])), f.project(&[0, 0, 1, 0]));
    }
}
