//! Independent characters by exact division of Weyl alternating sums:
//! `χ_Λ = A_{Λ+ρ} / A_ρ`, computed on doubled exponents so `ρ` is integral.

use std::collections::{BTreeMap, HashMap, VecDeque};

use super::{decompose_with, Character, LatticeTag};
use crate::error::{Error, Result};
use crate::group_model::RootDatum;
use crate::linalg::{self, IntMatrix};

/// Default bound on the lattice rank accepted by the oracle.
pub const DEFAULT_ORACLE_RANK_MAX: usize = 4;

/// Every Weyl group element as a matrix on `X_*`, with its sign.
pub fn weyl_group_elements(datum: &RootDatum) -> Vec<(IntMatrix, i64)> {
    let n = datum.rank;
    let reflections: Vec<IntMatrix> = (0..datum.semisimple_rank())
        .map(|i| {
            let cols: Vec<Vec<i64>> = (0..n)
                .map(|j| datum.reflect_coweight(i, &IntMatrix::identity(n).col(j)))
                .collect();
            IntMatrix::from_cols(&cols, n)
        })
        .collect();
    let id = IntMatrix::identity(n);
    let mut seen: HashMap<IntMatrix, i64> = HashMap::from([(id.clone(), 1)]);
    let mut out = vec![(id.clone(), 1)];
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        let sign = seen[&w];
        for s in &reflections {
            let ws = s.mul(&w);
            if !seen.contains_key(&ws) {
                seen.insert(ws.clone(), -sign);
                out.push((ws.clone(), -sign));
                queue.push_back(ws);
            }
        }
    }
    out
}

type Poly = BTreeMap<(i64, Vec<i64>), i64>;

fn alternating_sum(group: &[(IntMatrix, i64)], x: &[i64], key: &[i64]) -> Poly {
    let mut p = Poly::new();
    for (w, sign) in group {
        let y = w.apply(x);
        *p.entry((linalg::dot(key, &y), y)).or_insert(0) += sign;
    }
    p.retain(|_, c| *c != 0);
    p
}

/// Character of `V_Λ` by Laurent polynomial division. Refuses data of
/// lattice rank above `rank_max`.
pub fn oracle_character(datum: &RootDatum, lambda: &[i64], rank_max: usize) -> Result<Character> {
    if datum.rank > rank_max {
        return Err(Error::OracleBoundExceeded(format!(
            "rank {} exceeds oracle bound {rank_max}",
            datum.rank
        )));
    }
    datum.require_dominant(lambda)?;
    let group = weyl_group_elements(datum);
    let rho2 = datum.two_rho_vee();
    let key = datum.two_rho.clone();
    let numerator_exp = linalg::add(&linalg::scale(2, lambda), &rho2);
    let mut rest = alternating_sum(&group, &numerator_exp, &key);
    let denom = alternating_sum(&group, &rho2, &key);
    let (lead_key, lead_coeff) = denom.iter().next_back().map(|(k, c)| (k.clone(), *c)).expect("nonzero denominator");
    assert_eq!(lead_key.1, rho2, "denominator leads with e^ρ");
    assert_eq!(lead_coeff, 1);

    let mut quotient: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    let limit = 1_000_000usize;
    while let Some(((_, top), c)) = rest.iter().next_back().map(|(k, c)| (k.clone(), *c)) {
        let shift = linalg::sub(&top, &rho2);
        *quotient.entry(shift.clone()).or_insert(0) += c;
        for ((_, y), d) in &denom {
            let z = linalg::add(y, &shift);
            let k = (linalg::dot(&key, &z), z);
            let e = rest.entry(k.clone()).or_insert(0);
            *e -= c * d;
            if *e == 0 {
                rest.remove(&k);
            }
        }
        if quotient.len() > limit {
            return Err(Error::OracleBoundExceeded("division did not terminate".into()));
        }
    }
    let mut ch = Character::empty(LatticeTag::Absolute);
    for (w, m) in quotient {
        assert!(m >= 0 && w.iter().all(|x| x % 2 == 0), "Weyl quotient is not a character");
        ch.add(w.iter().map(|x| x / 2).collect(), m as u64);
    }
    Ok(ch)
}

/// Tensor product multiplicities by multiplying oracle characters and
/// peeling leading terms with oracle characters.
pub fn oracle_tensor_decompose(
    datum: &RootDatum,
    mu1: &[i64],
    mu2: &[i64],
    rank_max: usize,
) -> Result<BTreeMap<Vec<i64>, u64>> {
    let prod = oracle_character(datum, mu1, rank_max)?.product(&oracle_character(datum, mu2, rank_max)?);
    decompose_with(datum, &prod, |mu| oracle_character(datum, mu, rank_max))
}
