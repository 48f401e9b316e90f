//! Finitely generated abelian groups presented by Smith normal form, and the
//! coinvariant / invariant constructions for finite actions on `Z^n`.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group_model::GroupModel;
use crate::linalg::{self, IntMatrix, Smith};

/// Largest group the closure routines will enumerate.
pub const CLOSURE_BOUND: usize = 10_000;

/// `Z^free_rank ⊕ ⊕ Z/d_i` with `d_1 | d_2 | ...`, each `d_i ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FGAbGroup {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
    /// SNF of the defining relation matrix.
    #[serde(skip)]
    pub presentation: Option<Smith>,
}

impl FGAbGroup {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn torsion_order(&self) -> i64 {
        self.torsion.iter().product()
    }
}

/// An element of an [`FGAbGroup`], torsion coordinates reduced into `[0, d_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub free: Vec<i64>,
    pub torsion: Vec<i64>,
}

impl GroupElement {
    pub fn is_zero(&self) -> bool {
        linalg::is_zero(&self.free) && linalg::is_zero(&self.torsion)
    }
}

/// Surjection `Z^n → target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMap {
    pub source_rank: usize,
    pub target: FGAbGroup,
    /// `free_rank × n`, Hermite-normalized.
    pub free_rows: IntMatrix,
    /// One row per elementary divisor; values are read modulo that divisor.
    pub torsion_rows: IntMatrix,
    /// `n × free_rank`; `free_rows · section = 1`.
    pub section: IntMatrix,
    relations: Vec<Vec<i64>>,
}

impl QuotientMap {
    pub fn project(&self, v: &[i64]) -> GroupElement {
        let free = self.free_rows.apply(v);
        let torsion = self
            .torsion_rows
            .apply(v)
            .into_iter()
            .zip(&self.target.torsion)
            .map(|(x, d)| x.rem_euclid(*d))
            .collect();
        GroupElement { free, torsion }
    }

    pub fn project_free(&self, v: &[i64]) -> Vec<i64> {
        self.free_rows.apply(v)
    }

    pub fn lift_free(&self, c: &[i64]) -> Vec<i64> {
        self.section.apply(c)
    }

    pub fn relations(&self) -> &[Vec<i64>] {
        &self.relations
    }

    /// Whether `v` maps to zero.
    pub fn in_kernel(&self, v: &[i64]) -> bool {
        self.project(v).is_zero()
    }

    /// Matrix of an endomorphism of `Z^n` preserving the kernel, induced on
    /// the free part of the target.
    pub fn descend(&self, g: &IntMatrix) -> IntMatrix {
        self.free_rows.mul(g).mul(&self.section)
    }

    /// Transpose-side descent: an invariant functional `f` on `Z^n` (one
    /// vanishing on the kernel) as a functional on the free part.
    pub fn descend_functional(&self, f: &[i64]) -> Vec<i64> {
        self.section.transpose().apply(f)
    }
}

/// `Z^n / span(relations)` with its projection.
pub fn quotient(n: usize, relations: &[Vec<i64>]) -> (FGAbGroup, QuotientMap) {
    let rel = if relations.is_empty() {
        IntMatrix::zeros(n, 0)
    } else {
        IntMatrix::from_cols(relations, n)
    };
    let s = linalg::smith_normal_form(&rel);
    let diag = s.diagonal();
    let rank = diag.len();
    let torsion_idx: Vec<usize> = (0..rank).filter(|&i| diag[i] > 1).collect();
    let torsion: Vec<i64> = torsion_idx.iter().map(|&i| diag[i]).collect();
    let free_idx: Vec<usize> = (rank..n).collect();

    let free0 = IntMatrix::from_rows(
        &free_idx.iter().map(|&i| s.u.row(i).to_vec()).collect::<Vec<_>>(),
        n,
    );
    let section0 = IntMatrix::from_cols(
        &free_idx.iter().map(|&i| s.u_inv.col(i)).collect::<Vec<_>>(),
        n,
    );
    let (free_rows, section) = if free_idx.is_empty() {
        (free0, section0)
    } else {
        let (h, _t, t_inv) = linalg::row_hermite(&free0);
        (h, section0.mul(&t_inv))
    };
    let torsion_rows = IntMatrix::from_rows(
        &torsion_idx.iter().map(|&i| s.u.row(i).to_vec()).collect::<Vec<_>>(),
        n,
    );
    let group = FGAbGroup { free_rank: free_idx.len(), torsion, presentation: Some(s) };
    let map = QuotientMap {
        source_rank: n,
        target: group.clone(),
        free_rows,
        torsion_rows,
        section,
        relations: relations.to_vec(),
    };
    (group, map)
}

/// All elements of the group generated by `gens` (square, invertible).
pub fn group_closure(n: usize, gens: &[IntMatrix]) -> Result<Vec<IntMatrix>> {
    let id = IntMatrix::identity(n);
    let mut seen: HashSet<IntMatrix> = HashSet::new();
    let mut out = vec![id.clone()];
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.mul(&x);
            if seen.insert(y.clone()) {
                if seen.len() > CLOSURE_BOUND {
                    return Err(Error::NonFiniteAction(CLOSURE_BOUND));
                }
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(out)
}

/// Orbit of a vector under the group generated by `gens`, deterministic order.
pub fn orbit(gens: &[IntMatrix], v: &[i64]) -> Result<Vec<Vec<i64>>> {
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut out = vec![v.to_vec()];
    seen.insert(v.to_vec());
    let mut queue = VecDeque::from([v.to_vec()]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.apply(&x);
            if seen.insert(y.clone()) {
                if seen.len() > CLOSURE_BOUND {
                    return Err(Error::NonFiniteAction(CLOSURE_BOUND));
                }
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(out)
}

fn minus_identity(g: &IntMatrix) -> IntMatrix {
    g.sub(&IntMatrix::identity(g.rows()))
}

/// Coinvariants `Z^n / ⟨(g − 1)v⟩` of a finite action.
pub fn coinvariants(n: usize, gens: &[IntMatrix]) -> Result<(FGAbGroup, QuotientMap)> {
    group_closure(n, gens)?;
    let mut rels = Vec::new();
    for g in gens {
        let d = minus_identity(g);
        for j in 0..n {
            let c = d.col(j);
            if !linalg::is_zero(&c) {
                rels.push(c);
            }
        }
    }
    Ok(quotient(n, &rels))
}

/// Basis of the invariant sublattice `{v : g v = v ∀g}`.
pub fn invariants(n: usize, gens: &[IntMatrix]) -> Result<Vec<Vec<i64>>> {
    group_closure(n, gens)?;
    if gens.is_empty() {
        return Ok((0..n).map(|i| IntMatrix::identity(n).col(i)).collect());
    }
    let blocks: Vec<IntMatrix> = gens.iter().map(minus_identity).collect();
    let refs: Vec<&IntMatrix> = blocks.iter().collect();
    let stacked = IntMatrix::vcat(&refs, n);
    Ok(linalg::integer_kernel(&stacked))
}

/// `π₁(G) = X_*(T) / ⟨coroots⟩`.
pub fn pi1(model: &GroupModel) -> (FGAbGroup, QuotientMap) {
    let d = &model.datum;
    quotient(d.rank, &d.coroots)
}

/// `π₁(G)_Γ`: additionally divided by `(γ − 1)` for the inertia and Frobenius generators.
pub fn pi1_gamma(model: &GroupModel) -> (FGAbGroup, QuotientMap) {
    let d = &model.datum;
    let mut rels = d.coroots.clone();
    for g in model.action.gamma_gens() {
        let m = minus_identity(&g);
        for j in 0..d.rank {
            rels.push(m.col(j));
        }
    }
    quotient(d.rank, &rels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn swap2() -> IntMatrix {
        IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]], 2)
    }

    #[test]
    fn swap_coinvariants() {
        let (g, q) = coinvariants(2, &[swap2()]).unwrap();
        assert_eq!(g.free_rank, 1);
        assert!(g.torsion.is_empty());
        assert_eq!(q.project_free(&[3, 4]), vec![7]);
        assert_eq!(q.project_free(&[1, 0]), vec![1]);
    }

    #[test]
    fn negation_coinvariants() {
        let (g, _) = coinvariants(1, &[IntMatrix::from_rows(&[vec![-1]], 1)]).unwrap();
        assert_eq!(g.free_rank, 0);
        assert_eq!(g.torsion, vec![2]);
    }

    #[test]
    fn trivial_action_is_identity() {
        let (g, q) = coinvariants(1, &[IntMatrix::identity(1)]).unwrap();
        assert_eq!(g.free_rank, 1);
        assert_eq!(q.project_free(&[5]), vec![5]);
    }

    #[test]
    fn invariant_bases() {
        assert_eq!(invariants(2, &[swap2()]).unwrap(), vec![vec![1, 1]]);
        assert_eq!(invariants(2, &[IntMatrix::identity(2)]).unwrap().len(), 2);
        let order3 = IntMatrix::from_rows(&[vec![0, -1], vec![1, -1]], 2);
        assert!(invariants(2, &[order3]).unwrap().is_empty());
    }

    #[test]
    fn infinite_action_rejected() {
        let shear = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]], 2);
        assert!(matches!(coinvariants(2, &[shear]), Err(Error::NonFiniteAction(_))));
    }

    #[test]
    fn section_is_right_inverse() {
        let gens = [IntMatrix::from_rows(
            &[vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![1, 0, 0, 0], vec![0, 1, 0, 0]],
            4,
        )];
        let (_, q) = coinvariants(4, &gens).unwrap();
        assert!(q.free_rows.mul(&q.section).is_identity());
    }

    fn perm_matrix(p: &[usize]) -> IntMatrix {
        let n = p.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, &j) in p.iter().enumerate() {
            m[(j, i)] = 1;
        }
        m
    }

    proptest! {
        #[test]
        fn coinvariant_rank_equals_invariant_rank(
            perm in Just(vec![0usize, 1, 2, 3]).prop_shuffle(),
            signs in proptest::collection::vec(prop_oneof![Just(1i64), Just(-1i64)], 4),
        ) {
            let mut g = perm_matrix(&perm);
            for (j, s) in signs.iter().enumerate() {
                for i in 0..4 {
                    g[(i, j)] *= s;
                }
            }
            let (cg, q) = coinvariants(4, &[g.clone()]).unwrap();
            let inv = invariants(4, &[g.clone()]).unwrap();
            prop_assert_eq!(cg.free_rank, inv.len());
            prop_assert!(q.free_rows.mul(&q.section).is_identity());
            for j in 0..4 {
                let r = g.sub(&IntMatrix::identity(4)).col(j);
                prop_assert!(q.in_kernel(&r));
            }
        }
    }
}
