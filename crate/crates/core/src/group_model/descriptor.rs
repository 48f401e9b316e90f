use serde::{Deserialize, Serialize};

use super::cartan::{factor_datum, CartanType, Isogeny};
use super::{GaloisAction, GroupModel, RootDatum};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// One factor `Res_{F_i/F} H_i`, with `H_i` of the given type and isogeny.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSpec {
    pub cartan_type: CartanType,
    pub isogeny: Isogeny,
    pub e: usize,
    pub f: usize,
    /// Permutation of the simple-root indices (0-based).
    pub frobenius_diagram_aut: Vec<usize>,
}

impl FactorSpec {
    pub fn split(cartan_type: CartanType, isogeny: Isogeny) -> Self {
        FactorSpec {
            cartan_type,
            isogeny,
            e: 1,
            f: 1,
            frobenius_diagram_aut: (0..cartan_type.rank()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EssUnramDescriptor {
    pub factors: Vec<FactorSpec>,
}

/// Where a factor's copies sit inside `X_*(T)`: copy `(b, c)` (block `b < f`,
/// inertia copy `c < e`) occupies coordinates
/// `offset + (b·e + c)·base_rank ..` of length `base_rank`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorLayout {
    pub offset: usize,
    pub base_rank: usize,
    pub e: usize,
    pub f: usize,
}

impl FactorLayout {
    pub fn copy_start(&self, b: usize, c: usize) -> usize {
        self.offset + (b * self.e + c) * self.base_rank
    }

    pub fn total_rank(&self) -> usize {
        self.base_rank * self.e * self.f
    }
}

impl EssUnramDescriptor {
    pub fn single(factor: FactorSpec) -> Self {
        EssUnramDescriptor { factors: vec![factor] }
    }

    pub fn layout(&self) -> Result<Vec<FactorLayout>> {
        let mut offset = 0;
        let mut out = Vec::new();
        for fs in &self.factors {
            let base_rank = match fs.isogeny {
                Isogeny::GlType => fs.cartan_type.rank() + 1,
                _ => fs.cartan_type.rank(),
            };
            let l = FactorLayout { offset, base_rank, e: fs.e, f: fs.f };
            offset += l.total_rank();
            out.push(l);
        }
        Ok(out)
    }

    pub fn default_label(&self) -> String {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|fs| {
                let base = match fs.isogeny {
                    Isogeny::GlType => format!("GL{}", fs.cartan_type.rank() + 1),
                    Isogeny::SimplyConnected => format!("{}sc", fs.cartan_type),
                    Isogeny::Adjoint => format!("{}ad", fs.cartan_type),
                };
                let twisted = fs.frobenius_diagram_aut.iter().enumerate().any(|(i, &j)| i != j);
                let mut s = base;
                if twisted {
                    s.push_str("[twisted]");
                }
                if fs.e > 1 || fs.f > 1 {
                    s = format!("Res(e={},f={}) {s}", fs.e, fs.f);
                }
                s
            })
            .collect();
        parts.join(" x ")
    }
}

fn place(block: &mut IntMatrix, m: &IntMatrix, row0: usize, col0: usize) {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            block[(row0 + i, col0 + j)] = m[(i, j)];
        }
    }
}

/// Absolute datum = product of `e·f` copies per factor; inertia cycles the
/// `e` copies inside each block, Frobenius cycles the `f` blocks and applies
/// the diagram automorphism on wrap-around.
pub fn build_from_descriptor(desc: &EssUnramDescriptor) -> Result<GroupModel> {
    if desc.factors.is_empty() {
        return Err(Error::InvalidModel("descriptor has no factors".into()));
    }
    let layout = desc.layout()?;
    let rank: usize = layout.iter().map(|l| l.total_rank()).sum();
    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    let mut simple = Vec::new();
    let mut inertia = Vec::new();
    let mut frob = IntMatrix::zeros(rank, rank);

    for (fs, l) in desc.factors.iter().zip(&layout) {
        if fs.e == 0 || fs.f == 0 {
            return Err(Error::InvalidModel("e and f must be at least 1".into()));
        }
        let fd = factor_datum(fs.cartan_type, fs.isogeny, &fs.frobenius_diagram_aut)?;
        let n = fd.rank;
        let id = IntMatrix::identity(n);
        for b in 0..fs.f {
            for c in 0..fs.e {
                let start = l.copy_start(b, c);
                let base = roots.len();
                for (r, cr) in fd.roots.iter().zip(&fd.coroots) {
                    let mut rv = vec![0; rank];
                    rv[start..start + n].copy_from_slice(r);
                    let mut cv = vec![0; rank];
                    cv[start..start + n].copy_from_slice(cr);
                    roots.push(rv);
                    coroots.push(cv);
                }
                simple.extend(fd.simple_indices.iter().map(|&s| base + s));
            }
        }
        if fs.e > 1 {
            let mut g = IntMatrix::identity(rank);
            for i in l.offset..l.offset + l.total_rank() {
                g[(i, i)] = 0;
            }
            for b in 0..fs.f {
                for c in 0..fs.e {
                    place(&mut g, &id, l.copy_start(b, (c + 1) % fs.e), l.copy_start(b, c));
                }
            }
            inertia.push(g);
        }
        for b in 0..fs.f {
            for c in 0..fs.e {
                let src = l.copy_start(b, c);
                if b + 1 < fs.f {
                    place(&mut frob, &id, l.copy_start(b + 1, c), src);
                } else {
                    place(&mut frob, &fd.aut, l.copy_start(0, c), src);
                }
            }
        }
    }
    let datum = RootDatum::new(rank, roots, coroots, simple)?;
    let action = GaloisAction::new(rank, inertia, frob);
    Ok(GroupModel {
        label: desc.default_label(),
        datum,
        action,
        preset: Some(desc.clone()),
        is_dual: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gl(e: usize, f: usize) -> EssUnramDescriptor {
        EssUnramDescriptor::single(FactorSpec {
            cartan_type: CartanType::A(1),
            isogeny: Isogeny::GlType,
            e,
            f,
            frobenius_diagram_aut: vec![0],
        })
    }

    #[test]
    fn split_gl2() {
        let m = build_from_descriptor(&gl(1, 1)).unwrap();
        assert_eq!(m.datum.rank, 2);
        let mut roots = m.datum.roots.clone();
        roots.sort();
        assert_eq!(roots, vec![vec![-1, 1], vec![1, -1]]);
        assert!(m.action.inertia_gens.is_empty());
        assert!(m.action.frobenius.is_identity());
        assert_eq!(m.action.residual_order, 1);
    }

    #[test]
    fn ramified_gl2_swaps_blocks() {
        let m = build_from_descriptor(&gl(2, 1)).unwrap();
        assert_eq!(m.datum.rank, 4);
        assert_eq!(m.action.inertia_gens.len(), 1);
        let g = &m.action.inertia_gens[0];
        assert_eq!(g.apply(&[1, 2, 3, 4]), vec![3, 4, 1, 2]);
        assert!(m.action.frobenius.is_identity());
    }

    #[test]
    fn unramified_gl2_has_residual_order_two() {
        let m = build_from_descriptor(&gl(1, 2)).unwrap();
        assert_eq!(m.action.frobenius.apply(&[1, 2, 3, 4]), vec![3, 4, 1, 2]);
        assert_eq!(m.action.residual_order, 2);
    }

    #[test]
    fn three_copies_cycle() {
        let m = build_from_descriptor(&gl(3, 1)).unwrap();
        let g = &m.action.inertia_gens[0];
        assert_eq!(g.apply(&[1, 0, 2, 0, 3, 0]), vec![3, 0, 1, 0, 2, 0]);
    }

    #[test]
    fn su3_flip_permutes_roots() {
        let desc = EssUnramDescriptor::single(FactorSpec {
            cartan_type: CartanType::A(2),
            isogeny: Isogeny::SimplyConnected,
            e: 1,
            f: 1,
            frobenius_diagram_aut: vec![1, 0],
        });
        let m = build_from_descriptor(&desc).unwrap();
        let s = &m.action.frobenius;
        let d = &m.datum;
        assert_eq!(s.apply(d.simple_coroot(0)), d.simple_coroot(1).to_vec());
        for c in &d.coroots {
            assert!(d.coroot_index(&s.apply(c)).is_some());
        }
        assert_eq!(m.action.residual_order, 2);
    }

    #[test]
    fn bad_aut_rejected() {
        let desc = EssUnramDescriptor::single(FactorSpec {
            cartan_type: CartanType::B(2),
            isogeny: Isogeny::Adjoint,
            e: 1,
            f: 1,
            frobenius_diagram_aut: vec![1, 0],
        });
        assert!(matches!(build_from_descriptor(&desc), Err(Error::InvalidDiagramAut(_))));
    }

    #[test]
    fn product_rank_is_sum() {
        let desc = EssUnramDescriptor {
            factors: vec![
                FactorSpec::split(CartanType::A(1), Isogeny::GlType),
                FactorSpec { e: 2, f: 3, ..FactorSpec::split(CartanType::B(2), Isogeny::SimplyConnected) },
            ],
        };
        let m = build_from_descriptor(&desc).unwrap();
        assert_eq!(m.datum.rank, 2 + 12);
        assert_eq!(m.datum.semisimple_rank(), 1 + 12);
        assert_eq!(m.action.residual_order, 3);
    }
}
