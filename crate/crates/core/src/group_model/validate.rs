use std::collections::HashSet;

use serde::Serialize;

use super::GroupModel;
use crate::lattice;
use crate::linalg::{self, IntMatrix};

/// Every violated invariant, as a human-readable line. Empty iff valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, s: impl Into<String>) {
        self.violations.push(s.into());
    }
}

pub fn validate(model: &GroupModel) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let d = &model.datum;
    let n = d.rank;
    if n == 0 {
        rep.push("rank must be positive");
    }

    // Root datum.
    for (i, (r, c)) in d.roots.iter().zip(&d.coroots).enumerate() {
        if linalg::dot(r, c) != 2 {
            rep.push(format!("<root {i}, coroot {i}> = {} != 2", linalg::dot(r, c)));
        }
    }
    let root_set: HashSet<&Vec<i64>> = d.roots.iter().collect();
    if root_set.len() != d.roots.len() {
        rep.push("duplicate roots");
    }
    for r in &d.roots {
        let twice = linalg::scale(2, r);
        if root_set.contains(&twice) {
            rep.push(format!("root system is not reduced: 2*{r:?} is a root"));
            break;
        }
    }
    'refl: for (a, (ra, ca)) in d.roots.iter().zip(&d.coroots).enumerate() {
        for (b, (rb, cb)) in d.roots.iter().zip(&d.coroots).enumerate() {
            let sr = linalg::sub(rb, &linalg::scale(linalg::dot(rb, ca), ra));
            let sc = linalg::sub(cb, &linalg::scale(linalg::dot(ra, cb), ca));
            match (d.root_index(&sr), d.coroot_index(&sc)) {
                (Some(i), Some(j)) if i == j => {}
                _ => {
                    rep.push(format!("reflection in root {a} does not permute the roots/coroots (image of {b})"));
                    break 'refl;
                }
            }
        }
    }
    let cartan = d.cartan_matrix();
    for (i, row) in cartan.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            let bad = if i == j { x != 2 } else { x > 0 || ((x == 0) != (cartan[j][i] == 0)) };
            if bad {
                rep.push(format!("simple pairings do not form a generalized Cartan matrix at ({i},{j})"));
            }
        }
    }
    for i in 0..d.roots.len() {
        match d.simple_coords(i) {
            Some(c) if c.iter().all(|&x| x >= 0) || c.iter().all(|&x| x <= 0) => {}
            _ => rep.push(format!("root {i} is not a same-sign integral combination of the base")),
        }
    }
    let sum: Vec<i64> = d
        .positive_indices()
        .iter()
        .fold(vec![0; n], |acc, &i| linalg::add(&acc, &d.roots[i]));
    if sum != d.two_rho {
        rep.push("two_rho != sum of positive roots");
    }

    // Galois action.
    let a = &model.action;
    let mut gens: Vec<(String, &IntMatrix)> =
        a.inertia_gens.iter().enumerate().map(|(k, g)| (format!("inertia generator {k}"), g)).collect();
    gens.push(("frobenius".to_string(), &a.frobenius));
    let simple_coroots: HashSet<Vec<i64>> = (0..d.semisimple_rank()).map(|i| d.simple_coroot(i).to_vec()).collect();
    let mut shapes_ok = true;
    for (name, g) in &gens {
        if g.rows() != n || g.cols() != n {
            rep.push(format!("{name} is not {n}x{n}"));
            shapes_ok = false;
            continue;
        }
        let Some(ginv) = linalg::inverse_unimodular(g) else {
            rep.push(format!("{name} is not invertible over Z"));
            shapes_ok = false;
            continue;
        };
        let gt = ginv.transpose();
        let mut pinned = true;
        for (r, c) in d.roots.iter().zip(&d.coroots) {
            match (d.root_index(&gt.apply(r)), d.coroot_index(&g.apply(c))) {
                (Some(i), Some(j)) if i == j => {}
                _ => pinned = false,
            }
        }
        let base_kept = (0..d.semisimple_rank()).all(|i| simple_coroots.contains(&g.apply(d.simple_coroot(i))));
        if !pinned || !base_kept {
            rep.push(format!("pinning violation: {name} does not preserve roots, coroots and base"));
        }
    }
    if shapes_ok {
        match lattice::group_closure(n, &a.inertia_gens) {
            Err(_) => rep.push("inertia generators do not generate a finite group"),
            Ok(group) => {
                let set: HashSet<&IntMatrix> = group.iter().collect();
                let sinv = linalg::inverse_unimodular(&a.frobenius).expect("checked above");
                let normal = a
                    .inertia_gens
                    .iter()
                    .all(|g| set.contains(&a.frobenius.mul(g).mul(&sinv)));
                if !normal {
                    rep.push("frobenius does not normalize the inertia group");
                }
            }
        }
        if lattice::group_closure(n, &a.gamma_gens()).is_err() {
            rep.push("galois action is not finite");
        }
        if a.residual_order == 0 {
            rep.push("frobenius has no finite order on the inertia coinvariants");
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn catalog_is_valid() {
        for (_, m) in catalog::all() {
            let r = validate(&m);
            assert!(r.is_valid(), "{}: {:?}", m.label, r.violations);
            assert!(validate(&m.dual()).is_valid(), "dual {}", m.label);
        }
    }

    #[test]
    fn zero_two_rho_flagged() {
        let mut m = catalog::gl(2);
        m.datum.two_rho = vec![0, 0];
        let r = validate(&m);
        assert_eq!(r.violations, vec!["two_rho != sum of positive roots".to_string()]);
    }

    #[test]
    fn non_pinned_frobenius_flagged() {
        let mut m = catalog::su3();
        m.action.frobenius = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]], 2);
        let r = validate(&m);
        assert!(r.violations.iter().any(|v| v.contains("pinning violation")), "{:?}", r.violations);
    }

    #[test]
    fn inertia_coinvariants_torsion_free_on_presets() {
        for (_, m) in catalog::all() {
            let (g, _) = m.inertia_coinvariants().unwrap();
            assert!(g.is_torsion_free(), "{}", m.label);
        }
    }
}
