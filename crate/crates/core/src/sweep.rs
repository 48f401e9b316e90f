//! Finite sweeps of dominant coweights, used by tests, the acceptance suite
//! and `oracle verify`.

use num_integer::Integer;
use num_rational::Ratio;

use crate::group_model::RootDatum;
use crate::linalg::{self, IntMatrix};
use crate::rational::{solve_square, RatVec};

/// Dominant coweights `μ` with `⟨2ρ, μ⟩ ≤ height`. The central part ranges
/// over `{-1, 0, 1}` multiples of a basis of `X_*(Z)` around the
/// representative whose central coordinates lie in `[0, 1)`. Sorted by
/// height, then lexicographically.
pub fn dominant_coweights(datum: &RootDatum, height: i64) -> Vec<Vec<i64>> {
    let r = datum.semisimple_rank();
    let n = datum.rank;
    let central = datum.central_coweights();
    let cartan = datum.cartan_matrix();
    let ratc: Vec<Vec<Ratio<i64>>> =
        (0..r).map(|j| (0..r).map(|i| Ratio::from_integer(cartan[j][i])).collect()).collect();
    // ⟨2ρ, ω_i⟩: coefficient of α_i^∨ in 2ρ^∨ read through the Cartan inverse.
    let weights: Vec<Ratio<i64>> = (0..r)
        .map(|i| {
            let mut e = vec![Ratio::from_integer(0); r];
            e[i] = Ratio::from_integer(1);
            let c = solve_square(&ratc, &e).expect("Cartan matrix is invertible");
            c.iter()
                .enumerate()
                .map(|(k, ck)| ck * linalg::dot(&datum.two_rho, datum.simple_coroot(k)))
                .sum()
        })
        .collect();
    let mut profiles = Vec::new();
    let mut cur = vec![0i64; r];
    profiles_rec(&weights, Ratio::from_integer(height), 0, &mut cur, &mut profiles);

    let rows: Vec<Vec<i64>> = (0..r).map(|i| datum.simple_root(i).to_vec()).collect();
    let a = IntMatrix::from_rows(&rows, n);
    let mut out = Vec::new();
    for p in profiles {
        let mu0 = if r == 0 {
            vec![0; n]
        } else {
            match linalg::solve_integer(&a, &p) {
                Some(x) => x,
                None => continue,
            }
        };
        let base = reduce_central(datum, &central, &mu0);
        let k = central.len();
        for code in 0..3usize.pow(k as u32) {
            let mut mu = base.clone();
            let mut c = code;
            for z in &central {
                let t = (c % 3) as i64 - 1;
                c /= 3;
                mu = linalg::add(&mu, &linalg::scale(t, z));
            }
            out.push(mu);
        }
    }
    out.sort_by_key(|mu| (linalg::dot(&datum.two_rho, mu), mu.clone()));
    out.dedup();
    out
}

fn profiles_rec(w: &[Ratio<i64>], left: Ratio<i64>, i: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if i == w.len() {
        out.push(cur.clone());
        return;
    }
    let mut k = 0;
    loop {
        let spent = w[i] * k;
        if spent > left {
            break;
        }
        cur[i] = k;
        profiles_rec(w, left - spent, i + 1, cur, out);
        k += 1;
    }
    cur[i] = 0;
}

/// Shifts `mu` by central coweights so its central coordinates lie in `[0, 1)`.
fn reduce_central(datum: &RootDatum, central: &[Vec<i64>], mu: &[i64]) -> Vec<i64> {
    if central.is_empty() {
        return mu.to_vec();
    }
    let k = central.len();
    let r = datum.semisimple_rank();
    let cartan = datum.cartan_matrix();
    let v = RatVec::integral(mu.to_vec());
    let mut p = v.clone();
    if r > 0 {
        let a: Vec<Vec<Ratio<i64>>> =
            (0..r).map(|j| (0..r).map(|i| Ratio::from_integer(cartan[j][i])).collect()).collect();
        let b: Vec<Ratio<i64>> = (0..r).map(|j| v.pair(datum.simple_root(j))).collect();
        let c = solve_square(&a, &b).expect("Cartan matrix is invertible");
        for (i, ci) in c.iter().enumerate() {
            p = p.sub(&RatVec::integral(datum.simple_coroot(i).to_vec()).scale(*ci));
        }
    }
    // Coordinates of p in the basis `central`, via the Gram system.
    let gram: Vec<Vec<Ratio<i64>>> = (0..k)
        .map(|a| (0..k).map(|b| Ratio::from_integer(linalg::dot(&central[a], &central[b]))).collect())
        .collect();
    let rhs: Vec<Ratio<i64>> = (0..k).map(|a| p.pair(&central[a])).collect();
    let t = solve_square(&gram, &rhs).expect("central basis is independent");
    let mut out = mu.to_vec();
    for (z, ti) in central.iter().zip(&t) {
        let f = Integer::div_floor(ti.numer(), ti.denom());
        out = linalg::sub(&out, &linalg::scale(f, z));
    }
    out
}
