//! Characters of irreducible representations of the dual group.
//!
//! Given a root datum of `G`, weights of `Ĝ`-representations are coweights
//! of `G` (vectors in `X_*(T)`): the roots of `Ĝ` are the coroots of `G`
//! and dominance is tested against the simple roots of `G`.

mod folded;
mod oracle;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{check_len, Error, Result};
use crate::group_model::RootDatum;
use crate::linalg;

pub use folded::{branch_to_invariants, restrict_character, FoldedDatum};
pub use oracle::{oracle_character, oracle_tensor_decompose, weyl_group_elements, DEFAULT_ORACLE_RANK_MAX};

/// Which lattice the weights of a [`Character`] live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LatticeTag {
    /// `X_*(T)`.
    Absolute,
    /// The free part of `X_*(T)_I`.
    InertiaCoinvariants,
    /// The free part of `X_*(T)_Γ`.
    GammaCoinvariants,
}

/// Finitely supported weight multiset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Character {
    pub lattice: LatticeTag,
    pub support: BTreeMap<Vec<i64>, u64>,
}

impl Character {
    pub fn empty(lattice: LatticeTag) -> Self {
        Character { lattice, support: BTreeMap::new() }
    }

    pub fn trivial(lattice: LatticeTag, rank: usize) -> Self {
        let mut c = Self::empty(lattice);
        c.add(vec![0; rank], 1);
        c
    }

    pub fn add(&mut self, weight: Vec<i64>, mult: u64) {
        if mult > 0 {
            *self.support.entry(weight).or_insert(0) += mult;
        }
    }

    pub fn get(&self, weight: &[i64]) -> u64 {
        self.support.get(weight).copied().unwrap_or(0)
    }

    pub fn dim(&self) -> u64 {
        self.support.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// Character of the tensor product.
    pub fn product(&self, other: &Character) -> Character {
        let mut out = Character::empty(self.lattice);
        for (a, m) in &self.support {
            for (b, n) in &other.support {
                out.add(linalg::add(a, b), m * n);
            }
        }
        out
    }

    pub fn sum(&self, other: &Character) -> Character {
        let mut out = self.clone();
        for (w, m) in &other.support {
            out.add(w.clone(), *m);
        }
        out
    }

    /// Character of the contragredient.
    pub fn dual(&self) -> Character {
        Character {
            lattice: self.lattice,
            support: self.support.iter().map(|(w, m)| (linalg::neg(w), *m)).collect(),
        }
    }

    /// Pushforward along a linear map on weights.
    pub fn push(&self, lattice: LatticeTag, f: impl Fn(&[i64]) -> Vec<i64>) -> Character {
        let mut out = Character::empty(lattice);
        for (w, m) in &self.support {
            out.add(f(w), *m);
        }
        out
    }

    /// Whether multiplicities are constant on Weyl orbits.
    pub fn is_weyl_invariant(&self, datum: &RootDatum) -> bool {
        self.support.iter().all(|(w, m)| {
            (0..datum.semisimple_rank()).all(|i| self.get(&datum.reflect_coweight(i, w)) == *m)
        })
    }
}

/// Per-datum data for the multiplicity recursion, plus its memo table.
pub struct RepDatum {
    datum: RootDatum,
    /// Positive roots of `Ĝ` (coroots of `G`), in `X_*`.
    pos_coroots: Vec<Vec<i64>>,
    /// All roots of `G`, used for the invariant form.
    roots: Vec<Vec<i64>>,
    two_rho_vee: Vec<i64>,
    cache: Mutex<HashMap<Vec<i64>, Arc<BTreeMap<Vec<i64>, u64>>>>,
}

fn registry() -> &'static Mutex<HashMap<RootDatum, Arc<RepDatum>>> {
    static REG: OnceLock<Mutex<HashMap<RootDatum, Arc<RepDatum>>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

impl RepDatum {
    pub fn new(datum: &RootDatum) -> Self {
        let pos = datum.positive_indices();
        RepDatum {
            datum: datum.clone(),
            pos_coroots: pos.iter().map(|&i| datum.coroots[i].clone()).collect(),
            roots: datum.roots.clone(),
            two_rho_vee: datum.two_rho_vee(),
            cache: Mutex::new(HashMap::new()),
        }
    }

    /// Process-wide shared instance for `datum`; its memo table persists.
    pub fn shared(datum: &RootDatum) -> Arc<RepDatum> {
        let mut reg = registry().lock().expect("registry lock");
        reg.entry(datum.clone()).or_insert_with(|| Arc::new(RepDatum::new(datum))).clone()
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    /// `Σ_{α∈Φ} ⟨α,x⟩⟨α,y⟩`, a Weyl-invariant form on `X_*`.
    fn form(&self, x: &[i64], y: &[i64]) -> i128 {
        self.roots
            .iter()
            .map(|a| linalg::dot(a, x) as i128 * linalg::dot(a, y) as i128)
            .sum()
    }

    fn dominant(&self, v: &[i64]) -> Vec<i64> {
        self.datum.dominant_representative(v).1
    }

    /// Dominant weights of `V_Λ` with their multiplicities.
    pub fn dominant_multiplicities(&self, lambda: &[i64]) -> Result<Arc<BTreeMap<Vec<i64>, u64>>> {
        check_len(self.datum.rank, lambda)?;
        if !self.datum.is_dominant(lambda) {
            return Err(Error::NotDominant(lambda.to_vec()));
        }
        if let Some(t) = self.cache.lock().expect("cache lock").get(lambda) {
            return Ok(t.clone());
        }
        let table = Arc::new(self.freudenthal(lambda));
        self.cache.lock().expect("cache lock").insert(lambda.to_vec(), table.clone());
        Ok(table)
    }

    fn freudenthal(&self, lambda: &[i64]) -> BTreeMap<Vec<i64>, u64> {
        let d = &self.datum;
        // Dominant weights below Λ: every one is reachable from Λ by
        // subtracting positive roots through dominant weights.
        let mut weights: Vec<Vec<i64>> = vec![lambda.to_vec()];
        let mut seen: std::collections::HashSet<Vec<i64>> = weights.iter().cloned().collect();
        let mut i = 0;
        while i < weights.len() {
            let mu = weights[i].clone();
            for b in &self.pos_coroots {
                let nu = linalg::sub(&mu, b);
                if d.is_dominant(&nu) && seen.insert(nu.clone()) {
                    weights.push(nu);
                }
            }
            i += 1;
        }
        let height = |mu: &Vec<i64>| d.pairing_2rho(&linalg::sub(lambda, mu));
        weights.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| b.cmp(a)));

        let lr = linalg::add(lambda, &self.two_rho_vee);
        let mut mult: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
        mult.insert(lambda.to_vec(), 1);
        for mu in weights.iter().skip(1) {
            let mut acc: i128 = 0;
            for b in &self.pos_coroots {
                let mut k = 1;
                loop {
                    let w = linalg::add(mu, &linalg::scale(k, b));
                    let m = mult.get(&self.dominant(&w)).copied().unwrap_or(0);
                    if m == 0 {
                        break;
                    }
                    acc += m as i128 * self.form(&w, b);
                    k += 1;
                }
            }
            let denom = self.form(&linalg::sub(lambda, mu), &linalg::add(&lr, mu));
            let num = 2 * acc;
            assert!(denom > 0 && num % denom == 0, "Freudenthal recursion is not exact at {mu:?}");
            let m = (num / denom) as u64;
            if m > 0 {
                mult.insert(mu.clone(), m);
            }
        }
        mult
    }

    pub fn full_character(&self, lambda: &[i64]) -> Result<Character> {
        let table = self.dominant_multiplicities(lambda)?;
        let mut ch = Character::empty(LatticeTag::Absolute);
        for (mu, m) in table.iter() {
            for w in self.datum.weyl_orbit(mu) {
                ch.add(w, *m);
            }
        }
        Ok(ch)
    }

    pub fn weight_multiplicity(&self, lambda: &[i64], weight: &[i64]) -> Result<u64> {
        check_len(self.datum.rank, weight)?;
        let table = self.dominant_multiplicities(lambda)?;
        Ok(table.get(&self.dominant(weight)).copied().unwrap_or(0))
    }

    /// `∏_{α>0} ⟨α, 2Λ+2ρ^∨⟩ / ⟨α, 2ρ^∨⟩`, exactly.
    pub fn weyl_dimension(&self, lambda: &[i64]) -> Result<u64> {
        check_len(self.datum.rank, lambda)?;
        if !self.datum.is_dominant(lambda) {
            return Err(Error::NotDominant(lambda.to_vec()));
        }
        let shifted = linalg::add(&linalg::scale(2, lambda), &self.two_rho_vee);
        let (mut num, mut den) = (BigInt::one(), BigInt::one());
        for i in self.datum.positive_indices() {
            let a = &self.datum.roots[i];
            num *= BigInt::from(linalg::dot(a, &shifted));
            den *= BigInt::from(linalg::dot(a, &self.two_rho_vee));
        }
        let q = &num / &den;
        assert!(&q * &den == num, "Weyl dimension formula is not integral");
        Ok(q.to_u64().expect("dimension fits in u64"))
    }

    /// Brauer–Klimyk: `V_{μ₁} ⊗ V_{μ₂} = Σ_ν m_ν V_ν`.
    pub fn tensor_decompose(&self, mu1: &[i64], mu2: &[i64]) -> Result<BTreeMap<Vec<i64>, u64>> {
        let (small, big) = if self.weyl_dimension(mu1)? <= self.weyl_dimension(mu2)? {
            (mu1, mu2)
        } else {
            (mu2, mu1)
        };
        let ch = self.full_character(small)?;
        self.brauer_klimyk(&ch, big)
    }

    /// Decomposes `χ ⊗ V_μ` for a Weyl-invariant character `χ`.
    pub fn brauer_klimyk(&self, ch: &Character, mu: &[i64]) -> Result<BTreeMap<Vec<i64>, u64>> {
        self.datum.require_dominant(mu)?;
        let mut signed: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for (w, m) in &ch.support {
            if let Some((sign, nu)) = self.dot_dominant(&linalg::add(w, mu)) {
                *signed.entry(nu).or_insert(0) += sign * *m as i64;
            }
        }
        let mut out = BTreeMap::new();
        for (nu, c) in signed {
            if c < 0 {
                return Err(Error::NegativeMultiplicity(nu));
            }
            if c > 0 {
                out.insert(nu, c as u64);
            }
        }
        Ok(out)
    }

    /// Dominant element of the dot orbit `W·λ = w(λ+ρ^∨)−ρ^∨` with the sign of
    /// `w`, or `None` when `λ+ρ^∨` lies on a wall.
    fn dot_dominant(&self, lambda: &[i64]) -> Option<(i64, Vec<i64>)> {
        let x = linalg::add(&linalg::scale(2, lambda), &self.two_rho_vee);
        let (word, y) = self.datum.dominant_representative(&x);
        if (0..self.datum.semisimple_rank()).any(|i| linalg::dot(self.datum.simple_root(i), &y) == 0) {
            return None;
        }
        let nu: Vec<i64> = linalg::sub(&y, &self.two_rho_vee).iter().map(|c| c / 2).collect();
        Some((if word.len() % 2 == 0 { 1 } else { -1 }, nu))
    }
}

pub fn weight_multiplicity(datum: &RootDatum, mu: &[i64], lambda: &[i64]) -> Result<u64> {
    RepDatum::shared(datum).weight_multiplicity(mu, lambda)
}

pub fn weyl_dimension(datum: &RootDatum, mu: &[i64]) -> Result<u64> {
    RepDatum::shared(datum).weyl_dimension(mu)
}

pub fn full_character(datum: &RootDatum, mu: &[i64]) -> Result<Character> {
    RepDatum::shared(datum).full_character(mu)
}

pub fn tensor_decompose(datum: &RootDatum, mu1: &[i64], mu2: &[i64]) -> Result<BTreeMap<Vec<i64>, u64>> {
    RepDatum::shared(datum).tensor_decompose(mu1, mu2)
}

/// Highest weight of the contragredient, `−w₀μ`.
pub fn dual_highest_weight(datum: &RootDatum, mu: &[i64]) -> Vec<i64> {
    datum.dominant_representative(&linalg::neg(mu)).1
}

/// Order key used to pick leading terms: `(⟨2ρ, λ⟩, λ)`.
pub fn leading_key(datum: &RootDatum, weight: &[i64]) -> (i64, Vec<i64>) {
    (datum.pairing_2rho(weight), weight.to_vec())
}

/// Greedy leading-term decomposition of a Weyl-invariant character into
/// irreducibles, using `irreducible` to produce each subtracted character.
pub fn decompose_with(
    datum: &RootDatum,
    ch: &Character,
    irreducible: impl Fn(&[i64]) -> Result<Character>,
) -> Result<BTreeMap<Vec<i64>, u64>> {
    let mut rest: BTreeMap<Vec<i64>, i64> = ch.support.iter().map(|(w, m)| (w.clone(), *m as i64)).collect();
    let mut out = BTreeMap::new();
    while let Some(top) = rest.keys().max_by_key(|w| leading_key(datum, w)).cloned() {
        let c = rest[&top];
        if c < 0 || !datum.is_dominant(&top) {
            return Err(Error::NegativeMultiplicity(top));
        }
        let irr = irreducible(&top)?;
        for (w, m) in &irr.support {
            let e = rest.entry(w.clone()).or_insert(0);
            *e -= c * *m as i64;
            if *e < 0 {
                return Err(Error::NegativeMultiplicity(w.clone()));
            }
            if *e == 0 {
                rest.remove(w);
            }
        }
        out.insert(top, c as u64);
    }
    Ok(out)
}

/// Irreducible decomposition of a Weyl-invariant character.
pub fn decompose_character(datum: &RootDatum, ch: &Character) -> Result<BTreeMap<Vec<i64>, u64>> {
    let rd = RepDatum::shared(datum);
    decompose_with(datum, ch, |mu| rd.full_character(mu))
}
