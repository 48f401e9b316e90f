//! The relative Weyl group `W₀ = W^Γ`, generated by the longest elements of
//! the Γ-orbits of simple roots, and its classes on `X_*(T)_Γ`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::group_model::{GroupModel, RootDatum};
use crate::lattice::{GroupElement, QuotientMap};
use crate::linalg::{self, IntMatrix};

/// Permutation of simple positions induced by `g` on the simple coroots.
pub fn simple_permutation(datum: &RootDatum, g: &IntMatrix) -> Result<Vec<usize>> {
    let r = datum.semisimple_rank();
    (0..r)
        .map(|i| {
            let img = g.apply(datum.simple_coroot(i));
            (0..r)
                .find(|&j| datum.simple_coroot(j) == img.as_slice())
                .ok_or_else(|| Error::InvalidModel("action does not preserve the base".into()))
        })
        .collect()
}

/// Orbits of simple positions under the permutations induced by `gens`.
pub fn simple_orbits(datum: &RootDatum, gens: &[IntMatrix]) -> Result<Vec<Vec<usize>>> {
    let perms: Vec<Vec<usize>> = gens.iter().map(|g| simple_permutation(datum, g)).collect::<Result<_>>()?;
    let r = datum.semisimple_rank();
    let mut seen = vec![false; r];
    let mut out = Vec::new();
    for start in 0..r {
        if seen[start] {
            continue;
        }
        let mut orbit = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(i) = queue.pop_front() {
            for p in &perms {
                if !seen[p[i]] {
                    seen[p[i]] = true;
                    orbit.insert(p[i]);
                    queue.push_back(p[i]);
                }
            }
        }
        out.push(orbit.into_iter().collect());
    }
    Ok(out)
}

/// Matrix on `X_*` of the longest element of the parabolic subgroup `W_J`.
pub fn longest_element(datum: &RootDatum, j: &[usize]) -> IntMatrix {
    let mut rho2 = vec![0; datum.rank];
    for i in datum.positive_indices() {
        let c = datum.simple_coords(i).expect("roots are integral combinations");
        let pos: Vec<usize> = datum.simple_indices.iter().enumerate().map(|(k, _)| k).collect();
        if pos.iter().all(|&k| c[k] == 0 || j.contains(&k)) {
            rho2 = linalg::add(&rho2, &datum.coroots[i]);
        }
    }
    let mut cur = linalg::neg(&rho2);
    let mut word = Vec::new();
    while let Some(&i) = j.iter().find(|&&i| linalg::dot(datum.simple_root(i), &cur) < 0) {
        cur = datum.reflect_coweight(i, &cur);
        word.push(i);
    }
    word.reverse();
    let n = datum.rank;
    let cols: Vec<Vec<i64>> = (0..n).map(|k| datum.apply_word(&word, &IntMatrix::identity(n).col(k))).collect();
    IntMatrix::from_cols(&cols, n)
}

#[derive(Clone, Debug)]
pub struct RelativeWeyl {
    /// Orbits of simple positions.
    pub orbits: Vec<Vec<usize>>,
    /// `w_J` for each orbit, acting on `X_*`.
    pub gens: Vec<IntMatrix>,
    /// Orbit sums `Σ_{j∈J} α_j`; nonnegative pairing with all of them is
    /// relative dominance.
    pub functionals: Vec<Vec<i64>>,
}

impl RelativeWeyl {
    pub fn new(datum: &RootDatum, action: &[IntMatrix]) -> Result<Self> {
        let orbits = simple_orbits(datum, action)?;
        let gens = orbits.iter().map(|j| longest_element(datum, j)).collect();
        let functionals = orbits
            .iter()
            .map(|j| j.iter().fold(vec![0; datum.rank], |acc, &i| linalg::add(&acc, datum.simple_root(i))))
            .collect();
        Ok(RelativeWeyl { orbits, gens, functionals })
    }

    pub fn is_dominant(&self, v: &[i64]) -> bool {
        self.functionals.iter().all(|f| linalg::dot(f, v) >= 0)
    }
}

/// `W₀`-classes in `X_*(T)_Γ`, handled through lifts to `X_*(T)`.
#[derive(Clone, Debug)]
pub struct GammaClasses {
    pub projection: QuotientMap,
    pub w0: RelativeWeyl,
    two_rho: Vec<i64>,
}

impl GammaClasses {
    pub fn new(model: &GroupModel) -> Result<Self> {
        let (_, projection) = model.gamma_coinvariants()?;
        let w0 = RelativeWeyl::new(&model.datum, &model.action.gamma_gens())?;
        Ok(GammaClasses { projection, w0, two_rho: model.datum.two_rho.clone() })
    }

    pub fn project(&self, v: &[i64]) -> GroupElement {
        self.projection.project(v)
    }

    /// The `W₀`-orbit of `τ_Γ`, each class with one lift.
    pub fn orbit(&self, tau: &[i64]) -> BTreeMap<GroupElement, Vec<i64>> {
        let mut out = BTreeMap::from([(self.project(tau), tau.to_vec())]);
        let mut queue = VecDeque::from([tau.to_vec()]);
        while let Some(x) = queue.pop_front() {
            for g in &self.w0.gens {
                let y = g.apply(&x);
                let c = self.project(&y);
                if let std::collections::btree_map::Entry::Vacant(e) = out.entry(c) {
                    e.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        out
    }

    /// Relative-dominant representative of the class of `τ_Γ`: the orbit
    /// element maximizing `⟨2ρ, ·⟩`, ties broken by the class coordinates.
    pub fn canonical(&self, tau: &[i64]) -> (GroupElement, Vec<i64>) {
        self.orbit(tau)
            .into_iter()
            .max_by(|a, b| {
                linalg::dot(&self.two_rho, &a.1)
                    .cmp(&linalg::dot(&self.two_rho, &b.1))
                    .then_with(|| a.0.cmp(&b.0))
            })
            .expect("orbit is nonempty")
    }

    pub fn same_class(&self, a: &[i64], b: &[i64]) -> bool {
        self.canonical(a).0 == self.canonical(b).0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn longest_elements() {
        let m = catalog::gl(3);
        let w = longest_element(&m.datum, &[0, 1]);
        assert_eq!(w.apply(&[3, 2, 1]), vec![1, 2, 3]);
        let w = longest_element(&m.datum, &[1]);
        assert_eq!(w.apply(&[3, 2, 1]), vec![3, 1, 2]);
    }

    #[test]
    fn su3_has_one_orbit() {
        let m = catalog::su3();
        let w0 = RelativeWeyl::new(&m.datum, &m.action.gamma_gens()).unwrap();
        assert_eq!(w0.orbits, vec![vec![0, 1]]);
        assert_eq!(w0.gens.len(), 1);
    }

    #[test]
    fn split_classes_are_weyl_orbits() {
        let m = catalog::gl(2);
        let c = GammaClasses::new(&m).unwrap();
        assert_eq!(c.orbit(&[0, 2]).len(), 2);
        assert_eq!(c.canonical(&[0, 2]).1, vec![2, 0]);
        assert!(c.same_class(&[2, 0], &[0, 2]));
        assert!(!c.same_class(&[2, 0], &[1, 1]));
    }

    #[test]
    fn unitary_gamma_coinvariants_have_torsion() {
        let m = catalog::u3();
        let (g, _) = m.gamma_coinvariants().unwrap();
        assert_eq!(g.free_rank, 1);
        assert_eq!(g.torsion, vec![2]);
    }
}
