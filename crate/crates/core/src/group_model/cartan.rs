//! Finite Cartan types, their root systems, and the lattice realizations
//! offered by the preset menu.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// Largest rank accepted for the classical families.
pub const MAX_CLASSICAL_RANK: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    G2,
}

impl CartanType {
    pub fn rank(self) -> usize {
        match self {
            CartanType::A(n) | CartanType::B(n) | CartanType::C(n) | CartanType::D(n) => n,
            CartanType::G2 => 2,
        }
    }

    pub fn check(self) -> Result<()> {
        let ok = match self {
            CartanType::A(n) => (1..=MAX_CLASSICAL_RANK).contains(&n),
            CartanType::B(n) | CartanType::C(n) => (2..=MAX_CLASSICAL_RANK).contains(&n),
            CartanType::D(n) => (4..=MAX_CLASSICAL_RANK).contains(&n),
            CartanType::G2 => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnsupportedType(format!("{self} is outside the supported rank range")))
        }
    }

    /// `C[i][j] = ⟨α_i, α_j^∨⟩`. Bourbaki numbering; for `B_n` the last simple
    /// root is short, for `C_n` it is long, for `G_2` the first is short.
    pub fn cartan_matrix(self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let chain = |c: &mut Vec<Vec<i64>>, upto: usize| {
            for i in 0..upto {
                c[i][i + 1] = -1;
                c[i + 1][i] = -1;
            }
        };
        match self {
            CartanType::A(_) => chain(&mut c, n - 1),
            CartanType::B(_) => {
                chain(&mut c, n - 1);
                c[n - 2][n - 1] = -2;
            }
            CartanType::C(_) => {
                chain(&mut c, n - 1);
                c[n - 1][n - 2] = -2;
            }
            CartanType::D(_) => {
                chain(&mut c, n - 2);
                c[n - 3][n - 1] = -1;
                c[n - 1][n - 3] = -1;
            }
            CartanType::G2 => {
                c[0][1] = -1;
                c[1][0] = -3;
            }
        }
        c
    }

    pub fn is_diagram_automorphism(self, perm: &[usize]) -> bool {
        let n = self.rank();
        if perm.len() != n {
            return false;
        }
        let set: BTreeSet<_> = perm.iter().copied().collect();
        if set.len() != n || set.iter().any(|&x| x >= n) {
            return false;
        }
        let c = self.cartan_matrix();
        (0..n).all(|i| (0..n).all(|j| c[perm[i]][perm[j]] == c[i][j]))
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::B(n) => write!(f, "B{n}"),
            CartanType::C(n) => write!(f, "C{n}"),
            CartanType::D(n) => write!(f, "D{n}"),
            CartanType::G2 => write!(f, "G2"),
        }
    }
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().replace('_', "");
        if s.eq_ignore_ascii_case("G2") {
            return Ok(CartanType::G2);
        }
        let (head, tail) = s.split_at(1.min(s.len()));
        let n: usize = tail.parse().map_err(|_| Error::Parse(format!("bad Cartan type {s:?}")))?;
        let t = match head.to_ascii_uppercase().as_str() {
            "A" => CartanType::A(n),
            "B" => CartanType::B(n),
            "C" => CartanType::C(n),
            "D" => CartanType::D(n),
            _ => return Err(Error::Parse(format!("bad Cartan type {s:?}"))),
        };
        t.check()?;
        Ok(t)
    }
}

impl TryFrom<String> for CartanType {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<CartanType> for String {
    fn from(t: CartanType) -> String {
        t.to_string()
    }
}

/// Root and coroot coordinates in the simple root / simple coroot bases,
/// positive roots first (simple roots in positions `0..n`), then negatives.
#[derive(Clone, Debug)]
pub struct AbstractRootSystem {
    pub cartan: Vec<Vec<i64>>,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
}

pub fn root_system(t: CartanType) -> AbstractRootSystem {
    let c = t.cartan_matrix();
    let n = c.len();
    let unit = |i: usize| {
        let mut v = vec![0i64; n];
        v[i] = 1;
        v
    };
    // ⟨r, α_j^∨⟩ for r in simple-root coordinates.
    let pair_root = |r: &[i64], j: usize| -> i64 { (0..n).map(|i| r[i] * c[i][j]).sum() };
    // ⟨α_j, r^∨⟩ for r^∨ in simple-coroot coordinates.
    let pair_coroot = |r: &[i64], j: usize| -> i64 { (0..n).map(|i| r[i] * c[j][i]).sum() };

    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut pairs: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
    let mut queue: VecDeque<(Vec<i64>, Vec<i64>)> = VecDeque::new();
    for i in 0..n {
        seen.insert(unit(i));
        pairs.push((unit(i), unit(i)));
        queue.push_back((unit(i), unit(i)));
    }
    while let Some((r, rc)) = queue.pop_front() {
        for j in 0..n {
            let k = pair_root(&r, j);
            let kc = pair_coroot(&rc, j);
            let mut r2 = r.clone();
            r2[j] -= k;
            let mut rc2 = rc.clone();
            rc2[j] -= kc;
            if seen.insert(r2.clone()) {
                pairs.push((r2.clone(), rc2.clone()));
                queue.push_back((r2, rc2));
            }
        }
    }
    let mut pos: Vec<(Vec<i64>, Vec<i64>)> =
        pairs.into_iter().filter(|(r, _)| r.iter().all(|&x| x >= 0)).collect();
    pos.sort_by(|a, b| {
        let ha: i64 = a.0.iter().sum();
        let hb: i64 = b.0.iter().sum();
        ha.cmp(&hb).then_with(|| b.0.cmp(&a.0))
    });
    let mut roots: Vec<Vec<i64>> = pos.iter().map(|p| p.0.clone()).collect();
    let mut coroots: Vec<Vec<i64>> = pos.iter().map(|p| p.1.clone()).collect();
    let negs: Vec<Vec<i64>> = roots.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    let negcs: Vec<Vec<i64>> = coroots.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    roots.extend(negs);
    coroots.extend(negcs);
    AbstractRootSystem { cartan: c, roots, coroots }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Isogeny {
    #[serde(rename = "simply-connected")]
    SimplyConnected,
    #[serde(rename = "adjoint")]
    Adjoint,
    /// `GL_{n+1}` for type `A_n`.
    #[serde(rename = "gl")]
    GlType,
}

impl FromStr for Isogeny {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sc" | "simply-connected" | "simply_connected" => Ok(Isogeny::SimplyConnected),
            "adj" | "adjoint" => Ok(Isogeny::Adjoint),
            "gl" | "gl-type" | "gl_type" => Ok(Isogeny::GlType),
            _ => Err(Error::Parse(format!("unknown isogeny {s:?}"))),
        }
    }
}

impl fmt::Display for Isogeny {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Isogeny::SimplyConnected => "simply-connected",
            Isogeny::Adjoint => "adjoint",
            Isogeny::GlType => "gl",
        })
    }
}

/// Concrete `(rank, roots ⊂ X^*, coroots ⊂ X_*, simple indices)` for one factor,
/// plus the matrix on `X_*` of the pinned automorphism attached to `perm`.
pub struct FactorDatum {
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    pub simple_indices: Vec<usize>,
    pub aut: IntMatrix,
}

pub fn factor_datum(t: CartanType, iso: Isogeny, perm: &[usize]) -> Result<FactorDatum> {
    t.check()?;
    if !t.is_diagram_automorphism(perm) {
        return Err(Error::InvalidDiagramAut(perm.to_vec()));
    }
    let sys = root_system(t);
    let n = t.rank();
    let c = &sys.cartan;
    let simple_indices: Vec<usize> = (0..n).collect();
    let perm_matrix = |size: usize| {
        let mut m = IntMatrix::zeros(size, size);
        for (i, &j) in perm.iter().enumerate() {
            m[(j, i)] = 1;
        }
        m
    };
    match iso {
        Isogeny::SimplyConnected => {
            // X_* = coroot lattice (basis α_i^∨), X^* = weight lattice (basis ω_i).
            let roots = sys
                .roots
                .iter()
                .map(|r| (0..n).map(|j| (0..n).map(|i| r[i] * c[i][j]).sum()).collect())
                .collect();
            Ok(FactorDatum {
                rank: n,
                roots,
                coroots: sys.coroots.clone(),
                simple_indices,
                aut: perm_matrix(n),
            })
        }
        Isogeny::Adjoint => {
            // X^* = root lattice (basis α_i), X_* = coweight lattice (basis ω_i^∨).
            let coroots = sys
                .coroots
                .iter()
                .map(|r| (0..n).map(|j| (0..n).map(|i| r[i] * c[j][i]).sum()).collect())
                .collect();
            Ok(FactorDatum {
                rank: n,
                roots: sys.roots.clone(),
                coroots,
                simple_indices,
                aut: perm_matrix(n),
            })
        }
        Isogeny::GlType => {
            let CartanType::A(n) = t else {
                return Err(Error::UnsupportedType(format!("GL-type isogeny requires type A, got {t}")));
            };
            let size = n + 1;
            // Root with simple coordinates r is e_a - e_{b+1} where r is the
            // indicator of [a, b].
            let to_gl = |r: &Vec<i64>| {
                let mut v = vec![0i64; size];
                for (i, &x) in r.iter().enumerate() {
                    v[i] += x;
                    v[i + 1] -= x;
                }
                v
            };
            let roots: Vec<Vec<i64>> = sys.roots.iter().map(to_gl).collect();
            let identity = perm.iter().enumerate().all(|(i, &j)| i == j);
            let aut = if identity {
                IntMatrix::identity(size)
            } else {
                // Pinned outer automorphism g ↦ J g^{-T} J^{-1}: e_j ↦ -e_{n-j}.
                let mut m = IntMatrix::zeros(size, size);
                for j in 0..size {
                    m[(size - 1 - j, j)] = -1;
                }
                m
            };
            Ok(FactorDatum { rank: size, coroots: roots.clone(), roots, simple_indices, aut })
        }
    }
}
