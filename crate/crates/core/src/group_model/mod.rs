//! Based root data with a pinned Galois action, the preset menu of
//! essentially unramified groups, and Weyl-group primitives.

pub mod cartan;
mod descriptor;
mod spec_file;
mod validate;

use std::collections::{HashSet, VecDeque};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::lattice;
use crate::linalg::{self, IntMatrix};
use crate::rational::RatVec;

pub use cartan::{CartanType, Isogeny};
pub use descriptor::{build_from_descriptor, EssUnramDescriptor, FactorLayout, FactorSpec};
pub use spec_file::{parse_group_spec, GroupSpec, RawDatum, SCHEMA_V1};
pub use validate::{validate, ValidationReport};

/// Largest `m` tried when computing the residual order.
pub const RESIDUAL_ORDER_BOUND: usize = 1000;

/// Roots live in `X^*(T)`, coroots in `X_*(T)`, both in coordinates dual to
/// each other so that `⟨x, v⟩` is the dot product.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootDatum {
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    pub simple_indices: Vec<usize>,
    pub two_rho: Vec<i64>,
    #[serde(skip)]
    positive: Vec<bool>,
}

impl RootDatum {
    /// Builds a datum, computing `two_rho` from the base.
    pub fn new(
        rank: usize,
        roots: Vec<Vec<i64>>,
        coroots: Vec<Vec<i64>>,
        simple_indices: Vec<usize>,
    ) -> Result<Self> {
        let mut d = Self::from_parts(rank, roots, coroots, simple_indices, None)?;
        if d.roots.iter().enumerate().any(|(i, _)| d.simple_coords(i).is_none()) {
            return Err(Error::InvalidModel("a root is not an integral combination of the base".into()));
        }
        d.two_rho = d.sum_positive_roots();
        Ok(d)
    }

    /// Shape-checked but otherwise unvalidated datum; `two_rho` defaults to
    /// the sum of the positive roots.
    pub fn from_parts(
        rank: usize,
        roots: Vec<Vec<i64>>,
        coroots: Vec<Vec<i64>>,
        simple_indices: Vec<usize>,
        two_rho: Option<Vec<i64>>,
    ) -> Result<Self> {
        if roots.len() != coroots.len() {
            return Err(Error::InvalidModel(format!(
                "{} roots but {} coroots",
                roots.len(),
                coroots.len()
            )));
        }
        for v in roots.iter().chain(&coroots) {
            check_len(rank, v)?;
        }
        if let Some(&i) = simple_indices.iter().find(|&&i| i >= roots.len()) {
            return Err(Error::InvalidModel(format!("simple index {i} out of range")));
        }
        let mut d = RootDatum {
            rank,
            roots,
            coroots,
            simple_indices,
            two_rho: vec![0; rank],
            positive: Vec::new(),
        };
        d.positive = (0..d.roots.len())
            .map(|i| d.simple_coords(i).is_some_and(|c| c.iter().all(|&x| x >= 0)))
            .collect();
        d.two_rho = match two_rho {
            Some(t) => {
                check_len(rank, &t)?;
                t
            }
            None => d.sum_positive_roots(),
        };
        Ok(d)
    }

    fn sum_positive_roots(&self) -> Vec<i64> {
        let mut s = vec![0; self.rank];
        for i in self.positive_indices() {
            s = linalg::add(&s, &self.roots[i]);
        }
        s
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple_indices.len()
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    /// Coordinates of root `i` in the simple roots, if integral.
    pub fn simple_coords(&self, i: usize) -> Option<Vec<i64>> {
        let simple: Vec<Vec<i64>> = self.simple_indices.iter().map(|&j| self.roots[j].clone()).collect();
        if simple.is_empty() {
            return None;
        }
        let a = IntMatrix::from_cols(&simple, self.rank);
        linalg::solve_integer(&a, &self.roots[i])
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.positive[i]
    }

    pub fn positive_indices(&self) -> Vec<usize> {
        (0..self.roots.len()).filter(|&i| self.positive[i]).collect()
    }

    pub fn simple_root(&self, i: usize) -> &[i64] {
        &self.roots[self.simple_indices[i]]
    }

    pub fn simple_coroot(&self, i: usize) -> &[i64] {
        &self.coroots[self.simple_indices[i]]
    }

    /// Sum of the positive coroots (`2ρ^∨`, in `X_*`).
    pub fn two_rho_vee(&self) -> Vec<i64> {
        let mut s = vec![0; self.rank];
        for i in self.positive_indices() {
            s = linalg::add(&s, &self.coroots[i]);
        }
        s
    }

    /// `C[i][j] = ⟨α_i, α_j^∨⟩` on the base.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let r = self.semisimple_rank();
        (0..r)
            .map(|i| (0..r).map(|j| linalg::dot(self.simple_root(i), self.simple_coroot(j))).collect())
            .collect()
    }

    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r.as_slice() == root)
    }

    pub fn coroot_index(&self, coroot: &[i64]) -> Option<usize> {
        self.coroots.iter().position(|r| r.as_slice() == coroot)
    }

    /// `s_i(v) = v − ⟨α_i, v⟩ α_i^∨` on a coweight.
    pub fn reflect_coweight(&self, i: usize, v: &[i64]) -> Vec<i64> {
        let k = linalg::dot(self.simple_root(i), v);
        linalg::sub(v, &linalg::scale(k, self.simple_coroot(i)))
    }

    /// `s_i(x) = x − ⟨x, α_i^∨⟩ α_i` on a weight.
    pub fn reflect_weight(&self, i: usize, x: &[i64]) -> Vec<i64> {
        let k = linalg::dot(x, self.simple_coroot(i));
        linalg::sub(x, &linalg::scale(k, self.simple_root(i)))
    }

    /// Applies a word `[i_1, …, i_k]` read as `s_{i_1} ⋯ s_{i_k}`.
    pub fn apply_word(&self, word: &[usize], v: &[i64]) -> Vec<i64> {
        word.iter().rev().fold(v.to_vec(), |acc, &i| self.reflect_coweight(i, &acc))
    }

    pub fn is_dominant(&self, v: &[i64]) -> bool {
        (0..self.semisimple_rank()).all(|i| linalg::dot(self.simple_root(i), v) >= 0)
    }

    pub fn is_dominant_rat(&self, v: &RatVec) -> bool {
        (0..self.semisimple_rank()).all(|i| v.pair(self.simple_root(i)) >= Ratio::from_integer(0))
    }

    pub fn require_dominant(&self, v: &[i64]) -> Result<()> {
        check_len(self.rank, v)?;
        if self.is_dominant(v) {
            Ok(())
        } else {
            Err(Error::NotDominant(v.to_vec()))
        }
    }

    /// Returns `(w, w·v)` with `w·v` dominant and `w` a reduced word,
    /// written so that [`RootDatum::apply_word`] reproduces `w·v`.
    pub fn dominant_representative(&self, v: &[i64]) -> (Vec<usize>, Vec<i64>) {
        let mut cur = v.to_vec();
        let mut applied = Vec::new();
        while let Some(i) =
            (0..self.semisimple_rank()).find(|&i| linalg::dot(self.simple_root(i), &cur) < 0)
        {
            cur = self.reflect_coweight(i, &cur);
            applied.push(i);
        }
        applied.reverse();
        (applied, cur)
    }

    pub fn dominant_representative_rat(&self, v: &RatVec) -> (Vec<usize>, RatVec) {
        let zero = Ratio::from_integer(0);
        let mut cur = v.clone();
        let mut applied = Vec::new();
        while let Some(i) = (0..self.semisimple_rank()).find(|&i| cur.pair(self.simple_root(i)) < zero) {
            let k = cur.pair(self.simple_root(i));
            cur = cur.sub(&RatVec::integral(self.simple_coroot(i).to_vec()).scale(k));
            applied.push(i);
        }
        applied.reverse();
        (applied, cur)
    }

    /// `⟨2ρ, μ⟩`.
    pub fn pairing_2rho(&self, mu: &[i64]) -> i64 {
        linalg::dot(&self.two_rho, mu)
    }

    /// Weyl orbit of a coweight, in breadth-first order.
    pub fn weyl_orbit(&self, v: &[i64]) -> Vec<Vec<i64>> {
        let mut seen: HashSet<Vec<i64>> = HashSet::from([v.to_vec()]);
        let mut out = vec![v.to_vec()];
        let mut queue = VecDeque::from([v.to_vec()]);
        while let Some(x) = queue.pop_front() {
            for i in 0..self.semisimple_rank() {
                let y = self.reflect_coweight(i, &x);
                if seen.insert(y.clone()) {
                    out.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        out
    }

    /// Roots and coroots exchanged.
    pub fn dual(&self) -> RootDatum {
        RootDatum {
            rank: self.rank,
            roots: self.coroots.clone(),
            coroots: self.roots.clone(),
            simple_indices: self.simple_indices.clone(),
            two_rho: self.two_rho_vee(),
            positive: self.positive.clone(),
        }
    }

    /// Basis of the coweights annihilated by every root (`X_*(Z)`).
    pub fn central_coweights(&self) -> Vec<Vec<i64>> {
        if self.simple_indices.is_empty() {
            return (0..self.rank).map(|i| IntMatrix::identity(self.rank).col(i)).collect();
        }
        let rows: Vec<Vec<i64>> = (0..self.semisimple_rank()).map(|i| self.simple_root(i).to_vec()).collect();
        linalg::integer_kernel(&IntMatrix::from_rows(&rows, self.rank))
    }
}

/// Inertia generators and Frobenius, as matrices on `X_*(T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisAction {
    pub inertia_gens: Vec<IntMatrix>,
    pub frobenius: IntMatrix,
    /// Order of `σ` on `X_*(T)_I`; `0` if it could not be determined.
    pub residual_order: usize,
}

impl GaloisAction {
    pub fn new(rank: usize, inertia_gens: Vec<IntMatrix>, frobenius: IntMatrix) -> Self {
        let residual_order = residual_order(rank, &inertia_gens, &frobenius).unwrap_or(0);
        GaloisAction { inertia_gens, frobenius, residual_order }
    }

    pub fn trivial(rank: usize) -> Self {
        GaloisAction { inertia_gens: Vec::new(), frobenius: IntMatrix::identity(rank), residual_order: 1 }
    }

    /// Inertia generators followed by Frobenius.
    pub fn gamma_gens(&self) -> Vec<IntMatrix> {
        let mut g = self.inertia_gens.clone();
        g.push(self.frobenius.clone());
        g
    }

    /// Action on `X^*(T)`: `g ↦ (g⁻¹)ᵀ`.
    pub fn contragredient(&self) -> Option<GaloisAction> {
        let cg = |g: &IntMatrix| linalg::inverse_unimodular(g).map(|x| x.transpose());
        Some(GaloisAction {
            inertia_gens: self.inertia_gens.iter().map(cg).collect::<Option<Vec<_>>>()?,
            frobenius: cg(&self.frobenius)?,
            residual_order: self.residual_order,
        })
    }
}

fn residual_order(rank: usize, inertia: &[IntMatrix], sigma: &IntMatrix) -> Option<usize> {
    let (_, q) = lattice::coinvariants(rank, inertia).ok()?;
    let mut p = sigma.clone();
    for m in 1..=RESIDUAL_ORDER_BOUND {
        if (0..rank).all(|j| {
            let mut c = p.col(j);
            c[j] -= 1;
            q.in_kernel(&c)
        }) {
            return Some(m);
        }
        p = sigma.mul(&p);
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupModel {
    pub label: String,
    pub datum: RootDatum,
    pub action: GaloisAction,
    /// The descriptor this model was built from, if any.
    pub preset: Option<EssUnramDescriptor>,
    /// Set on models produced by [`GroupModel::dual`].
    pub is_dual: bool,
}

impl GroupModel {
    pub fn new(label: impl Into<String>, datum: RootDatum, action: GaloisAction) -> Self {
        GroupModel { label: label.into(), datum, action, preset: None, is_dual: false }
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    /// Fails with `InvalidModel` carrying the first violation.
    pub fn check(&self) -> Result<()> {
        let report = validate(self);
        match report.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidModel(v.clone())),
        }
    }

    pub fn inertia_coinvariants(&self) -> Result<(lattice::FGAbGroup, lattice::QuotientMap)> {
        lattice::coinvariants(self.rank(), &self.action.inertia_gens)
    }

    pub fn gamma_coinvariants(&self) -> Result<(lattice::FGAbGroup, lattice::QuotientMap)> {
        lattice::coinvariants(self.rank(), &self.action.gamma_gens())
    }

    /// Orbit of a coweight under inertia and Frobenius.
    pub fn gamma_orbit(&self, v: &[i64]) -> Result<Vec<Vec<i64>>> {
        lattice::orbit(&self.action.gamma_gens(), v)
    }

    /// `(1/|O|) Σ_{x∈O} x` over the Γ-orbit `O` of `v`.
    pub fn gamma_average(&self, v: &[i64]) -> Result<RatVec> {
        let orbit = self.gamma_orbit(v)?;
        let mut s = vec![0i64; self.rank()];
        for x in &orbit {
            s = linalg::add(&s, x);
        }
        Ok(RatVec::new(s, orbit.len() as i64))
    }

    /// Dual model: roots and coroots exchanged, contragredient action.
    pub fn dual(&self) -> GroupModel {
        let action = self
            .action
            .contragredient()
            .expect("Galois action of a valid model is invertible");
        GroupModel {
            label: self.label.clone(),
            datum: self.datum.dual(),
            action,
            preset: self.preset.clone(),
            is_dual: !self.is_dual,
        }
    }

    pub fn dominant_representative(&self, v: &[i64]) -> (Vec<usize>, Vec<i64>) {
        self.datum.dominant_representative(v)
    }

    pub fn pairing_2rho(&self, mu: &[i64]) -> i64 {
        self.datum.pairing_2rho(mu)
    }
}
