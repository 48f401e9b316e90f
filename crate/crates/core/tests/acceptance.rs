//! End-to-end acceptance checks. Each criterion prints one line:
//!
//! ```text
//! cargo test -p splitcomb --test acceptance -- --nocapture
//! ```

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use splitcomb::adlv::{self, AdlvQuery, BInput, BetaFibers, MuInput};
use splitcomb::char_engine::{
    branch_to_invariants, full_character, oracle_character, oracle_tensor_decompose, restrict_character,
    tensor_decompose, weight_multiplicity, weyl_dimension, FoldedDatum, DEFAULT_ORACLE_RANK_MAX,
};
use splitcomb::kottwitz::{self, TateSide};
use splitcomb::satake::{self, FactorSign, SatakeParameter, VSpec, ZetaStart};
use splitcomb::sweep::dominant_coweights;
use splitcomb::{catalog, cli, Error, GroupModel, RootDatum};

type Outcome = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T>(r: splitcomb::Result<T>, what: impl FnOnce() -> String) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{}: {e}", what()))
}

/// Absolute data of rank ≤ 4 from the catalog, plus every folded datum.
fn oracle_data() -> Vec<(String, RootDatum)> {
    let mut out: Vec<(String, RootDatum)> = Vec::new();
    for (name, m) in catalog::all() {
        if m.datum.rank <= 4 && !out.iter().any(|(_, d)| *d == m.datum) {
            out.push((name.to_string(), m.datum.clone()));
        }
        if m.preset.as_ref().is_some_and(|p| p.factors.iter().any(|f| f.e * f.f > 1)) {
            if let Ok(f) = FoldedDatum::new(&m) {
                if !out.iter().any(|(_, d)| *d == f.datum) {
                    out.push((format!("{name} folded"), f.datum));
                }
            }
        }
    }
    out
}

fn models_with_free_coinvariants() -> Vec<(&'static str, GroupModel)> {
    catalog::all().into_iter().filter(|(_, m)| FoldedDatum::new(m).is_ok()).collect()
}

fn c1_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut n = 0;
    for (name, d) in oracle_data() {
        for mu in dominant_coweights(&d, 12) {
            let fast = ok(full_character(&d, &mu), || format!("{name} {mu:?}"))?;
            let slow = ok(oracle_character(&d, &mu, DEFAULT_ORACLE_RANK_MAX), || format!("{name} {mu:?}"))?;
            ensure!(fast == slow, "{name}: characters differ at {mu:?}");
            n += 1;
        }
    }
    let t = start.elapsed();
    ensure!(t < Duration::from_secs(60), "took {t:?}");
    Ok(format!("{n} characters in {:.1?}", t))
}

fn c2_dimensions() -> Outcome {
    let mut n = 0;
    for (name, d) in oracle_data() {
        for mu in dominant_coweights(&d, 12) {
            let w = ok(weyl_dimension(&d, &mu), || name.clone())?;
            let c = ok(full_character(&d, &mu), || name.clone())?;
            ensure!(w == c.support.values().sum::<u64>(), "{name}: {mu:?}");
            n += 1;
        }
    }
    Ok(format!("{n} dimensions"))
}

fn c3_tensor() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut n = 0;
    for (name, d) in oracle_data() {
        let sweep = dominant_coweights(&d, 12);
        let small = dominant_coweights(&d, 6);
        for _ in 0..50 {
            let a = sweep.choose(&mut rng).unwrap();
            let b = small.choose(&mut rng).unwrap();
            let t = ok(tensor_decompose(&d, a, b), || format!("{name} {a:?}⊗{b:?}"))?;
            let o = ok(oracle_tensor_decompose(&d, a, b, DEFAULT_ORACLE_RANK_MAX), || name.clone())?;
            ensure!(t == o, "{name}: {a:?}⊗{b:?} disagrees with the oracle");
            let lhs = weyl_dimension(&d, a).unwrap() * weyl_dimension(&d, b).unwrap();
            let rhs: u64 = t.iter().map(|(nu, k)| k * weyl_dimension(&d, nu).unwrap()).sum();
            ensure!(lhs == rhs, "{name}: dimension identity fails for {a:?}⊗{b:?}");
            n += 1;
        }
    }
    Ok(format!("{n} pairs"))
}

fn c4_restriction_square() -> Outcome {
    let mut n = 0;
    for (name, m) in catalog::all() {
        if !name.starts_with("res_") {
            continue;
        }
        let f = ok(FoldedDatum::new(&m), || name.to_string())?;
        for mu in dominant_coweights(&m.datum, 8) {
            let r = ok(restrict_character(&m, &mu), || name.to_string())?;
            let b = ok(branch_to_invariants(&m, &mu), || name.to_string())?;
            ensure!(b.keys().all(|l| f.datum.is_dominant(l)), "{name}: non-dominant branch output");
            for (lam, mult) in &r.support {
                let s: u64 = b.iter().map(|(nu, k)| k * weight_multiplicity(&f.datum, nu, lam).unwrap()).sum();
                ensure!(s == *mult, "{name}: {mu:?} at {lam:?}");
            }
            n += 1;
        }
    }
    Ok(format!("{n} restrictions"))
}

fn c5_beta_fibers() -> Outcome {
    let mut n = 0;
    for (name, m) in models_with_free_coinvariants() {
        let f = FoldedDatum::new(&m).unwrap();
        let folded = dominant_coweights(&f.datum, 10);
        for mu in dominant_coweights(&m.datum, 10) {
            let hm = f.datum.pairing_2rho(&f.project(&mu));
            if hm > 10 {
                continue;
            }
            for nu in &folded {
                let hn = f.datum.pairing_2rho(nu);
                if hm + hn > 10 {
                    continue;
                }
                let fibers = ok(BetaFibers::new(&m, nu, &mu), || format!("{name} {nu:?} {mu:?}"))?;
                for lam in &folded {
                    if hm + hn + f.datum.pairing_2rho(lam) > 10 {
                        continue;
                    }
                    let okay = ok(fibers.check(lam), || format!("{name} {nu:?} {mu:?} {lam:?}"))?;
                    ensure!(okay, "{name}: ν={nu:?} μ={mu:?} λ={lam:?}");
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} triples"))
}

fn c6_kottwitz_criteria() -> Outcome {
    let (mut n, mut yes, mut skipped) = (0, 0, Vec::new());
    for (name, m) in catalog::all() {
        for mu in dominant_coweights(&m.datum, 8) {
            match kottwitz::basic_is_very_special(&m, &mu) {
                Ok(r) => {
                    n += 1;
                    yes += r.result as usize;
                }
                Err(Error::TorsionInCoinvariants(_)) => {
                    skipped.push(name);
                    break;
                }
                Err(e) => return Err(format!("{name} {mu:?}: {e}")),
            }
        }
    }
    Ok(format!("{n} cases, {yes} very special, torsion skipped: {skipped:?}"))
}

fn c7_lambda_coset() -> Outcome {
    let mut n = 0;
    for (name, m) in models_with_free_coinvariants() {
        for mu in dominant_coweights(&m.datum, 8) {
            let t = ok(kottwitz::tate_dim(&m, &mu, &TateSide::Splitting), || format!("{name} {mu:?}"))?;
            if t > 0 {
                let single = ok(kottwitz::tate_single_coset(&m, &mu), || name.to_string())?;
                ensure!(single, "{name}: Λ meets several cosets for {mu:?}");
                n += 1;
            }
        }
    }
    Ok(format!("{n} cases with nonzero Tate part"))
}

fn c8_adlv_pins() -> Outcome {
    let gl2 = catalog::gl(2);
    let q = AdlvQuery::new(gl2.clone(), MuInput::Splitting(vec![2, 0]), BInput::Vsp { tau: vec![1, 1] });
    ensure!(adlv::adlv_dimension(&q) == Ok(1), "GL2 (2,0),(1,1): dim {:?}", adlv::adlv_dimension(&q));
    ensure!(adlv::component_table(&q).map(|t| t.total) == Ok(1), "GL2 (2,0),(1,1): components");

    let q = AdlvQuery::new(gl2, MuInput::Splitting(vec![1, 0]), BInput::Basic { defect: Some(1) });
    ensure!(adlv::adlv_dimension(&q) == Ok(0), "GL2 (1,0) basic: dim {:?}", adlv::adlv_dimension(&q));

    let m = catalog::res_ram_gl2();
    let tau = FoldedDatum::new(&m).unwrap().lift(&[1, 1]);
    let q = AdlvQuery::new(m, MuInput::Splitting(vec![1, 0, 1, 0]), BInput::Vsp { tau });
    ensure!(adlv::component_table(&q).map(|t| t.total) == Ok(2), "ResRam GL2: splitting total");
    let can: Vec<u64> =
        [[2, 0], [1, 1]].iter().map(|mp| adlv::component_table_can(&q, mp).map(|t| t.total).unwrap_or(u64::MAX)).collect();
    ensure!(can == vec![1, 1], "ResRam GL2: canonical split {can:?}");
    Ok("GL2 and ResRam GL2 values match".into())
}

fn c9_norm_reduction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut n = 0;
    for name in ["res_unram_gl2", "res_unram_sl2"] {
        let m = catalog::by_name(name).unwrap();
        let sweep = dominant_coweights(&m.datum, 8);
        let k = m.rank() / 2;
        for _ in 0..50 {
            let mu = sweep.choose(&mut rng).unwrap();
            let b: Vec<i64> = (0..m.rank()).map(|_| rng.gen_range(-3..=3)).collect();
            let r = ok(adlv::norm_reduce(&m, mu, &b), || format!("{name} {mu:?}"))?;
            ensure!(r.identities_hold, "{name}: pairing identities fail at {mu:?}");
            // The diagram automorphism of A1 is trivial, so the norm is the block sum.
            let block_sum: Vec<i64> = (0..k).map(|i| b[i] + b[k + i]).collect();
            ensure!(r.nm_b == block_sum, "{name}: Nm({b:?}) = {:?}", r.nm_b);
            n += 1;
        }
    }
    Ok(format!("{n} reductions"))
}

fn zetas(m: &GroupModel, v: &VSpec) -> BTreeMap<Vec<i64>, u64> {
    satake::zeta_exponents(m, v, ZetaStart::Zero).unwrap().into_iter().map(|(a, z)| (a.alpha, z)).collect()
}

fn c10_divisor_anchors() -> Outcome {
    let pgl2 = catalog::pgl(2);
    ensure!(
        satake::determinant_divisor(&pgl2, &VSpec::Highest(vec![1]), ZetaStart::Zero).map(|d| d.is_empty()) == Ok(true),
        "PGL2 std divisor is not empty"
    );
    let mut n = 0;
    for (name, m) in models_with_free_coinvariants() {
        let gens = ok(satake::relative_weyl_generators(&m), || name.to_string())?;
        let mus = dominant_coweights(&m.datum, 8);
        let chars: Vec<_> = mus.iter().map(|mu| full_character(&m.datum, mu).unwrap()).collect();
        for (i, a) in chars.iter().enumerate() {
            let za = zetas(&m, &VSpec::Character(a.clone()));
            let zd = zetas(&m, &VSpec::Character(a.dual()));
            for (k, v) in &za {
                ensure!(zd[&k.iter().map(|x| -x).collect::<Vec<_>>()] == *v, "{name}: negation at {:?}", mus[i]);
                for g in &gens {
                    ensure!(za[&g.apply(k)] == *v, "{name}: W0 at {:?}", mus[i]);
                }
            }
            let b = &chars[(i * 7 + 3) % chars.len()];
            let zb = zetas(&m, &VSpec::Character(b.clone()));
            let zs = zetas(&m, &VSpec::Character(a.sum(b)));
            for (k, v) in &zs {
                ensure!(*v == za[k] + zb[k], "{name}: additivity at {:?}", mus[i]);
            }
            n += 1;
        }
    }
    let su3 = catalog::su3();
    let d = ok(satake::determinant_divisor(&su3, &VSpec::Highest(vec![1, 1]), ZetaStart::Zero), || "SU3".into())?;
    ensure!(d.entries.iter().any(|e| e.sign == FactorSign::Plus), "SU3 has no plus factor");
    Ok(format!("{n} representations, SU3 plus factor present"))
}

fn c11_genericity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut implications, mut counts) = (0, 0);
    for (name, m) in models_with_free_coinvariants() {
        let basis = ok(satake::invariant_basis(&m), || name.to_string())?;
        let mus: Vec<Vec<i64>> = dominant_coweights(&m.datum, 4).into_iter().take(6).collect();
        for _ in 0..100 {
            let values: Vec<_> = basis
                .iter()
                .map(|_| {
                    let p = *[-2i64, -1, 1, 2, 3, 5].choose(&mut rng).unwrap();
                    let q = rng.gen_range(1..=3);
                    satake::rational(p, q)
                })
                .collect();
            let s = ok(SatakeParameter::on_invariants(&m, values), || name.to_string())?;
            for mu in &mus {
                let v = VSpec::Highest(mu.clone());
                let ch = full_character(&m.datum, mu).unwrap();
                let end = VSpec::Character(ch.product(&ch.dual()));
                let strong = |w: &VSpec| match satake::is_strongly_v_general(&m, w, &s) {
                    Ok(b) => Ok(Some(b)),
                    Err(Error::NonRationalUnsupported) => Ok(None),
                    Err(e) => Err(format!("{name} {mu:?}: {e}")),
                };
                if strong(&end)? == Some(true) && satake::divisor_covered_by_end(&m, &v, ZetaStart::Zero).unwrap() {
                    ensure!(satake::is_v_general(&m, &v, &s, ZetaStart::Zero).unwrap(), "{name}: strong but not general at {mu:?}");
                    implications += 1;
                }
                if strong(&v)? != Some(true) {
                    continue;
                }
                if satake::central_finite_order(&m, &v, &s).unwrap() {
                    let fixed = satake::fixed_point_count(&m, &v, &s).unwrap();
                    let tate = kottwitz::tate_dim(&m, mu, &TateSide::Splitting).unwrap();
                    ensure!(fixed == tate, "{name}: fixed count {fixed} ≠ tate {tate} at {mu:?}");
                    counts += 1;
                }
            }
        }
    }
    ensure!(implications > 0 && counts > 0, "vacuous: {implications} implications, {counts} counts");

    let pgl2 = catalog::pgl(2);
    let adj = VSpec::Highest(vec![2]);
    let s = SatakeParameter::on_basis(&pgl2, vec![vec![2]], vec![satake::rational(-1, 1)]).unwrap();
    ensure!(!satake::is_strongly_v_general(&pgl2, &adj, &s).unwrap(), "PGL2 s(α)=-1 is strongly general");
    let fixed = satake::fixed_point_count(&pgl2, &adj, &s).unwrap();
    let tate = kottwitz::tate_dim(&pgl2, &[2], &TateSide::Splitting).unwrap();
    ensure!(fixed > tate, "PGL2 adjoint: fixed {fixed} not above tate {tate}");
    Ok(format!("{implications} implications, {counts} fixed-point counts, PGL2 adjoint {fixed} > {tate}"))
}

fn catalog_invocations() -> Vec<Vec<String>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../catalog");
    let mut out = Vec::new();
    for (name, m) in catalog::all() {
        let g = dir.join(format!("{name}.json")).to_string_lossy().into_owned();
        let mu = dominant_coweights(&m.datum, 2).last().cloned().unwrap_or_default();
        let mu = mu.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let zero = vec!["0"; m.rank()].join(",");
        let mut cmds: Vec<Vec<&str>> = vec![
            vec!["group", "validate"],
            vec!["rep", "dim", "--mu", &mu],
            vec!["rep", "char", "--mu", &mu],
            vec!["rep", "mult", "--mu", &mu, "--weight", &zero],
            vec!["rep", "tensor", "--mu", &mu, "--nu", &mu],
            vec!["rep", "restrict", "--mu", &mu],
            vec!["rep", "branch", "--mu", &mu],
            vec!["kottwitz", "kappa", "--tau", &mu],
            vec!["kottwitz", "newton", "--tau", &mu],
            vec!["kottwitz", "newton", "--basic", "--mu", &mu],
            vec!["kottwitz", "vsp-enum", "--mu", &mu],
            vec!["kottwitz", "in-bgmu", "--tau", &mu, "--mu", &mu],
            vec!["kottwitz", "tate-dim", "--mu", &mu],
            vec!["kottwitz", "basic-vsp", "--mu", &mu],
            vec!["adlv", "nonempty", "--mu", &mu, "--tau", &mu],
            vec!["adlv", "dim", "--mu", &mu, "--tau", &mu],
            vec!["adlv", "components", "--mu", &mu, "--tau", &mu],
            vec!["adlv", "dim", "--mu", &mu, "--basic"],
            vec!["adlv", "norm-reduce", "--mu", &mu, "--b", &mu],
            vec!["adlv", "basic-stratum", "--mu", &mu],
            vec!["satake", "coroots"],
            vec!["satake", "zeta", "--mu", &mu],
            vec!["satake", "divisor", "--mu", &mu],
            vec!["oracle", "verify", "--height", "4"],
        ];
        if m.rank() <= 4 {
            cmds.push(vec!["--format", "human", "rep", "char", "--mu", &mu]);
        }
        for c in cmds {
            let mut argv = vec!["splitcomb".to_string(), "--group".to_string(), g.clone()];
            argv.extend(c.iter().map(|s| s.to_string()));
            out.push(argv);
        }
    }
    out
}

fn c12_cli_determinism() -> Outcome {
    let start = Instant::now();
    let calls = catalog_invocations();
    let mut codes = [0usize; 3];
    for argv in &calls {
        let a = cli::run(argv.clone());
        let b = cli::run(argv.clone());
        ensure!(a == b, "output differs for {:?}", &argv[1..]);
        ensure!((0..=2).contains(&a.code), "exit code {} for {:?}", a.code, &argv[1..]);
        codes[a.code as usize] += 1;
        ensure!(a.code != 2, "usage error for {:?}: {}", &argv[1..], a.stderr);
    }
    let t = start.elapsed();
    ensure!(t < Duration::from_secs(120), "took {t:?}");
    Ok(format!("{} invocations twice ({} ok, {} domain errors) in {:.1?}", calls.len(), codes[0], codes[1], t))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("oracle equivalence", c1_oracle_equivalence),
        ("dimension cross-check", c2_dimensions),
        ("tensor soundness", c3_tensor),
        ("restriction square", c4_restriction_square),
        ("cartesian cardinalities", c5_beta_fibers),
        ("Kottwitz criteria", c6_kottwitz_criteria),
        ("Λ coset property", c7_lambda_coset),
        ("ADLV pinned values", c8_adlv_pins),
        ("norm-reduction identities", c9_norm_reduction),
        ("determinant-divisor anchors", c10_divisor_anchors),
        ("genericity coherence", c11_genericity),
        ("CLI determinism", c12_cli_determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                println!("FAIL {:>2} {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
