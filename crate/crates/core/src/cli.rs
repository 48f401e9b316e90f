//! The `splitcomb` command line: argument parsing, dispatch and output.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::adlv::{self, AdlvQuery, BInput, MuInput, DEFAULT_SEARCH_HEIGHT};
use crate::char_engine::{self, oracle_character, Character, FoldedDatum, DEFAULT_ORACLE_RANK_MAX};
use crate::error::{Error, Result};
use crate::group_model::{parse_group_spec, validate, GroupModel};
use crate::kottwitz::{self, TateSide};
use crate::lattice::{self, GroupElement};
use crate::rational::RatVec;
use crate::satake::{self, SatakeParameter, VSpec, ZetaStart};
use crate::{catalog, sweep};

/// A comma-separated integer vector such as `1,0,-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Coweight(pub Vec<i64>);

fn parse_coweight(s: &str) -> std::result::Result<Coweight, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Coweight(Vec::new()));
    }
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| format!("bad integer {t:?} in coweight {s:?}")))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(Coweight)
}

/// A comma-separated rational vector such as `1/2,1/2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct RatArg(pub Vec<String>);

fn parse_rat_arg(s: &str) -> std::result::Result<RatArg, String> {
    let toks: Vec<String> = s.split(',').map(|t| t.trim().to_string()).collect();
    for t in &toks {
        let ok = match t.split_once('/') {
            Some((p, q)) => p.parse::<i64>().is_ok() && q.parse::<i64>().map(|q| q != 0).unwrap_or(false),
            None => t.parse::<i64>().is_ok(),
        };
        if !ok && !looks_non_rational(t) {
            return Err(format!("bad rational {t:?}"));
        }
    }
    Ok(RatArg(toks))
}

fn looks_non_rational(t: &str) -> bool {
    t.contains('.') || t.contains("sqrt") || t.contains('i') || t.contains('e') || t.contains('^')
}

impl RatArg {
    fn to_bigs(&self) -> Result<Vec<BigRational>> {
        self.0
            .iter()
            .map(|t| {
                if looks_non_rational(t) {
                    return Err(Error::NonRationalUnsupported);
                }
                let r = RatVec::parse(t)?;
                Ok(satake::rational(r.numerator()[0], r.denominator()))
            })
            .collect()
    }

    fn to_ratvec(&self) -> Result<RatVec> {
        RatVec::parse(&self.0.join(","))
    }
}

/// Semicolon-separated integer vectors such as `1,0;0,1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Basis(pub Vec<Vec<i64>>);

fn parse_basis(s: &str) -> std::result::Result<Basis, String> {
    s.split(';').map(|v| parse_coweight(v).map(|c| c.0)).collect::<std::result::Result<Vec<_>, _>>().map(Basis)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputMode {
    Structured,
    Human,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZetaStartArg {
    Zero,
    One,
}

impl From<ZetaStartArg> for ZetaStart {
    fn from(z: ZetaStartArg) -> Self {
        match z {
            ZetaStartArg::Zero => ZetaStart::Zero,
            ZetaStartArg::One => ZetaStart::One,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "splitcomb", version, about = "Exact dual-group combinatorics for splitting models")]
pub struct Cli {
    /// Group-spec v1 file. Bare catalog names such as `gl2.json` are also found.
    #[arg(long, global = true)]
    pub group: Option<String>,
    #[arg(long, global = true, value_enum, default_value = "structured")]
    pub format: OutputMode,
    /// Height bound for searches.
    #[arg(long, global = true, default_value_t = DEFAULT_SEARCH_HEIGHT, value_parser = clap::value_parser!(i64).range(1..))]
    pub bound: i64,
    /// Largest lattice rank accepted by the brute-force oracle.
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_RANK_MAX as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub oracle_rank_max: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    #[command(subcommand)]
    Group(GroupCmd),
    #[command(subcommand)]
    Rep(RepCmd),
    #[command(subcommand)]
    Kottwitz(KottwitzCmd),
    #[command(subcommand)]
    Adlv(AdlvCmd),
    #[command(subcommand)]
    Satake(SatakeCmd),
    #[command(subcommand)]
    Oracle(OracleCmd),
}

#[derive(Debug, Subcommand)]
pub enum GroupCmd {
    /// Check the root datum and Galois action.
    Validate,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MuArg {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_coweight)]
    pub mu: Coweight,
    /// Work with the folded datum of `Ĝ^I` instead of `Ĝ`.
    #[arg(long)]
    pub folded: bool,
}

#[derive(Debug, Subcommand)]
pub enum RepCmd {
    /// Multiplicity of a weight in `V_μ`.
    Mult {
        #[command(flatten)]
        mu: MuArg,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_coweight)]
        weight: Coweight,
    },
    /// Weyl dimension of `V_μ`.
    Dim {
        #[command(flatten)]
        mu: MuArg,
    },
    /// Full character of `V_μ`.
    Char {
        #[command(flatten)]
        mu: MuArg,
    },
    /// Decomposition of `V_μ ⊗ V_ν`.
    Tensor {
        #[command(flatten)]
        mu: MuArg,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_coweight)]
        nu: Coweight,
    },
    /// Character of `V_μ` restricted to `Ĝ^I`.
    Restrict {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_coweight)]
        mu: Coweight,
    },
    /// Decomposition of `V_μ` restricted to `Ĝ^I`.
    Branch {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_coweight)]
        mu: Coweight,
    },
}

#[derive(Debug, Subcommand)]
pub enum KottwitzCmd {
    /// Kottwitz invariant of `[ϖ^τ]` in `π₁(G)_Γ`.
    Kappa {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_coweight)]
        tau: Coweight,
    },
    /// Newton point of `[ϖ^τ]`, or of the basic element of `B(G, μ)`.
    Newton {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_coweight, required_unless_present = "basic")]
        tau: Option<Coweight>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_coweight, requires = "basic")]
        mu: Option<Coweight>,
        #[arg(long, requires = "mu")]
        basic: bool,
    },
    /// Very special classes in `B(G, μ)`.
    VspEnum {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_coweight)]
        mu: Coweight,
    },
    /// Whether `[ϖ^τ] ∈ B(G, μ)`.
    InBgmu {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_coweight)]
        tau: Coweight,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_coweight)]
        mu: Coweight,
    },
    /// Dimension of the Tate part.
    TateDim {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_coweight)]
        mu: Coweight,
        /// Use `V_{μ'_I}` of `Ĝ^I` instead of the restriction of `V_μ`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_coweight)]
        canonical: Option<Coweight>,
    },
    /// Whether the basic element of `B(G, μ)` is very special.
    BasicVsp {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_coweight)]
        mu: Coweight,
    },
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct QueryArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_coweight, required_unless_present = "mu_i")]
    pub mu: Option<Coweight>,
    /// `μ_I` on the free part of `X_*(T)_I`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_coweight, conflicts_with = "mu")]
    pub mu_i: Option<Coweight>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_coweight)]
    pub tau: Option<Coweight>,
    #[arg(long, conflicts_with = "tau")]
    pub basic: bool,
    #[arg(long, allow_hyphen_values = true)]
    pub defect: Option<i64>,
    /// Explicit Newton point, e.g. `1/2,1/2`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rat_arg, conflicts_with_all = ["tau", "basic"], requires = "kappa_of")]
    pub nu: Option<RatArg>,
    /// A coweight whose Kottwitz invariant is `κ(b)`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_coweight, requires = "nu")]
    pub kappa_of: Option<Coweight>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_coweight, requires = "nu")]
    pub lambda_b: Option<Coweight>,
}

#[derive(Debug, Subcommand)]
pub enum AdlvCmd {
    Nonempty {
        #[command(flatten)]
        q: QueryArgs,
    },
    Dim {
        #[command(flatten)]
        q: QueryArgs,
    },
    /// Component table; with `--mu-prime` the canonical table for `V_{μ'_I}`.
    Components {
        #[command(flatten)]
        q: QueryArgs,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_coweight)]
        mu_prime: Option<Coweight>,
    },
    /// Minimal `ν_I` for a weight `λ_I` of `V_μ|`.
    MinNu {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_coweight)]
        mu: Coweight,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_coweight)]
        lambda_i: Coweight,
    },
    NormReduce {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_coweight)]
        mu: Coweight,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_coweight)]
        b: Coweight,
    },
    BasicStratum {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_coweight)]
        mu: Coweight,
    },
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VArgs {
    /// Highest weight of `V`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_coweight)]
    pub mu: Coweight,
    #[arg(long, value_enum, default_value = "zero")]
    pub zeta_start: ZetaStartArg,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ParamArgs {
    /// Parameter values, e.g. `2,-1/3`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rat_arg)]
    pub s: RatArg,
    /// Basis the values refer to, e.g. `2;0`. Defaults to the canonical
    /// basis of `X_*(T)_I^σ`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_basis)]
    pub basis: Option<Basis>,
}

#[derive(Debug, Subcommand)]
pub enum SatakeCmd {
    Coroots,
    Zeta {
        #[command(flatten)]
        v: VArgs,
    },
    Divisor {
        #[command(flatten)]
        v: VArgs,
    },
    General {
        #[command(flatten)]
        v: VArgs,
        #[command(flatten)]
        s: ParamArgs,
    },
    StrongGeneral {
        #[command(flatten)]
        v: VArgs,
        #[command(flatten)]
        s: ParamArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum OracleCmd {
    /// Compare characters with the brute-force oracle over a sweep.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(i64).range(0..))]
        height: i64,
    },
}

/// Process outcome: exit code and the text for stdout and stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Success {
    result: Value,
    extra: Map<String, Value>,
    code: i32,
}

impl Success {
    fn of(v: impl Serialize) -> Result<Self> {
        Ok(Success { result: to_value(v), extra: Map::new(), code: 0 })
    }

    fn with(mut self, key: &str, v: impl Serialize) -> Self {
        self.extra.insert(key.to_string(), to_value(v));
        self
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

fn ratvec_json(v: &RatVec) -> Value {
    json!(v.to_strings())
}

fn character_json(ch: &Character) -> Value {
    Value::Array(ch.support.iter().map(|(w, m)| json!({"weight": w, "mult": m})).collect())
}

fn decomposition_json(d: &std::collections::BTreeMap<Vec<i64>, u64>) -> Value {
    Value::Array(d.iter().map(|(w, m)| json!({"highest_weight": w, "mult": m})).collect())
}

fn group_element_json(g: &GroupElement, group: &lattice::FGAbGroup) -> Value {
    json!({"free": g.free, "torsion": g.torsion, "group": {"free_rank": group.free_rank, "torsion": group.torsion}})
}

fn resolve_group_path(name: &str) -> Option<PathBuf> {
    let p = Path::new(name);
    if p.exists() {
        return Some(p.to_path_buf());
    }
    let in_catalog = Path::new("catalog").join(name);
    in_catalog.exists().then_some(in_catalog)
}

fn load_model(group: &Option<String>) -> Result<GroupModel> {
    let name = group.as_ref().ok_or_else(|| Error::Parse("--group is required".into()))?;
    match resolve_group_path(name) {
        Some(path) => {
            let text = std::fs::read_to_string(&path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            parse_group_spec(&text)
        }
        None => {
            let stem = Path::new(name).file_stem().and_then(|s| s.to_str()).unwrap_or(name);
            catalog::by_name(stem).ok_or_else(|| Error::Parse(format!("group file {name:?} not found")))
        }
    }
}

fn checked_model(group: &Option<String>) -> Result<GroupModel> {
    let m = load_model(group)?;
    m.check()?;
    Ok(m)
}

fn rep_datum(model: &GroupModel, folded: bool) -> Result<crate::RootDatum> {
    Ok(if folded { FoldedDatum::new(model)?.datum } else { model.datum.clone() })
}

fn query(model: GroupModel, a: &QueryArgs) -> Result<AdlvQuery> {
    let mu = match (&a.mu, &a.mu_i) {
        (Some(m), None) => MuInput::Splitting(m.0.clone()),
        (None, Some(m)) => MuInput::Canonical(m.0.clone()),
        _ => return Err(Error::Parse("give exactly one of --mu and --mu-i".into())),
    };
    let b = if let Some(t) = &a.tau {
        BInput::Vsp { tau: t.0.clone() }
    } else if a.basic {
        BInput::Basic { defect: a.defect }
    } else if let Some(nu) = &a.nu {
        let k = a.kappa_of.as_ref().ok_or_else(|| Error::Parse("--nu needs --kappa-of".into()))?;
        crate::error::check_len(model.rank(), &k.0)?;
        BInput::Explicit {
            nu: nu.to_ratvec()?,
            kappa: kottwitz::kottwitz_invariant(&model, &k.0),
            defect: a.defect.unwrap_or(0),
            lambda_b: a.lambda_b.as_ref().map(|l| l.0.clone()),
        }
    } else {
        return Err(Error::Parse("give one of --tau, --basic or --nu".into()));
    };
    Ok(AdlvQuery::new(model, mu, b))
}

fn parameter(model: &GroupModel, p: &ParamArgs) -> Result<SatakeParameter> {
    let values = p.s.to_bigs()?;
    match &p.basis {
        Some(b) => SatakeParameter::on_basis(model, b.0.clone(), values),
        None => SatakeParameter::on_invariants(model, values),
    }
}

fn dispatch(cli: &Cli) -> Result<Success> {
    let rank_max = cli.oracle_rank_max as usize;
    match &cli.command {
        Command::Group(GroupCmd::Validate) => {
            let m = load_model(&cli.group)?;
            let report = validate(&m);
            let code = if report.is_valid() { 0 } else { 1 };
            let mut s = Success::of(json!({"valid": report.is_valid(), "violations": report.violations}))?;
            s.code = code;
            Ok(s.with("label", &m.label))
        }
        Command::Rep(cmd) => {
            let m = checked_model(&cli.group)?;
            match cmd {
                RepCmd::Mult { mu, weight } => {
                    let d = rep_datum(&m, mu.folded)?;
                    Success::of(char_engine::weight_multiplicity(&d, &mu.mu.0, &weight.0)?)
                }
                RepCmd::Dim { mu } => Success::of(char_engine::weyl_dimension(&rep_datum(&m, mu.folded)?, &mu.mu.0)?),
                RepCmd::Char { mu } => {
                    let ch = char_engine::full_character(&rep_datum(&m, mu.folded)?, &mu.mu.0)?;
                    Success::of(character_json(&ch)).map(|s| s.with("dim", ch.dim()))
                }
                RepCmd::Tensor { mu, nu } => {
                    let d = rep_datum(&m, mu.folded)?;
                    Success::of(decomposition_json(&char_engine::tensor_decompose(&d, &mu.mu.0, &nu.0)?))
                }
                RepCmd::Restrict { mu } => {
                    let ch = char_engine::restrict_character(&m, &mu.0)?;
                    Success::of(character_json(&ch)).map(|s| s.with("dim", ch.dim()))
                }
                RepCmd::Branch { mu } => Success::of(decomposition_json(&char_engine::branch_to_invariants(&m, &mu.0)?)),
            }
        }
        Command::Kottwitz(cmd) => {
            let m = checked_model(&cli.group)?;
            match cmd {
                KottwitzCmd::Kappa { tau } => {
                    crate::error::check_len(m.rank(), &tau.0)?;
                    let (g, q) = lattice::pi1_gamma(&m);
                    Success::of(group_element_json(&q.project(&tau.0), &g))
                }
                KottwitzCmd::Newton { tau, mu, basic } => {
                    let nu = match (tau, mu, basic) {
                        (_, Some(mu), true) => {
                            crate::error::check_len(m.rank(), &mu.0)?;
                            kottwitz::newton_basic(&m, &mu.0)?
                        }
                        (Some(tau), _, false) => {
                            crate::error::check_len(m.rank(), &tau.0)?;
                            kottwitz::newton_point_vsp(&m, &tau.0)?
                        }
                        _ => return Err(Error::Parse("give --tau, or --basic with --mu".into())),
                    };
                    Success::of(ratvec_json(&nu))
                }
                KottwitzCmd::VspEnum { mu } => {
                    crate::error::check_len(m.rank(), &mu.0)?;
                    let list: Vec<Value> = kottwitz::enumerate_vsp_bgmu(&m, &mu.0)?
                        .iter()
                        .map(|v| json!({"tau": v.tau, "lambda_b": v.lambda_b, "kappa": v.kappa, "newton": v.newton.to_strings()}))
                        .collect();
                    Success::of(list)
                }
                KottwitzCmd::InBgmu { tau, mu } => {
                    crate::error::check_len(m.rank(), &tau.0)?;
                    crate::error::check_len(m.rank(), &mu.0)?;
                    m.datum.require_dominant(&mu.0)?;
                    let k = kottwitz::vsp_multiplicity(&m, &tau.0, &mu.0)?;
                    Success::of(k > 0).map(|s| s.with("multiplicity", k))
                }
                KottwitzCmd::TateDim { mu, canonical } => {
                    crate::error::check_len(m.rank(), &mu.0)?;
                    let side = match canonical {
                        Some(c) => TateSide::Canonical(c.0.clone()),
                        None => TateSide::Splitting,
                    };
                    Success::of(kottwitz::tate_dim(&m, &mu.0, &side)?)
                }
                KottwitzCmd::BasicVsp { mu } => {
                    crate::error::check_len(m.rank(), &mu.0)?;
                    let r = kottwitz::basic_is_very_special(&m, &mu.0)?;
                    Success::of(r.result).map(|s| {
                        s.with(
                            "criteria",
                            json!({
                                "tate": {"mu_i": r.mu_i, "tate_dim": r.tate_dim_canonical, "tate_dim_splitting": r.tate_dim_splitting},
                                "central_character": {"mu_adj": r.mu_adj, "trivial": r.mu_adj_trivial},
                            }),
                        )
                    })
                }
            }
        }
        Command::Adlv(cmd) => {
            let m = checked_model(&cli.group)?;
            match cmd {
                AdlvCmd::Nonempty { q } => Success::of(adlv::adlv_nonempty(&query(m, q)?)?),
                AdlvCmd::Dim { q } => Success::of(adlv::adlv_dimension(&query(m, q)?)?),
                AdlvCmd::Components { q, mu_prime } => {
                    let q = query(m, q)?;
                    match mu_prime {
                        Some(mp) => Success::of(adlv::component_table_can(&q, &mp.0)?),
                        None => Success::of(adlv::component_table(&q)?),
                    }
                }
                AdlvCmd::MinNu { mu, lambda_i } => {
                    crate::error::check_len(m.rank(), &mu.0)?;
                    Success::of(adlv::minimal_nu(&m, &mu.0, &lambda_i.0, cli.bound)?)
                }
                AdlvCmd::NormReduce { mu, b } => Success::of(adlv::norm_reduce(&m, &mu.0, &b.0)?),
                AdlvCmd::BasicStratum { mu } => {
                    crate::error::check_len(m.rank(), &mu.0)?;
                    Success::of(adlv::basic_stratum_mv_count(&m, &mu.0)?)
                }
            }
        }
        Command::Satake(cmd) => {
            let m = checked_model(&cli.group)?;
            let v_of = |v: &VArgs| -> Result<VSpec> {
                crate::error::check_len(m.rank(), &v.mu.0)?;
                Ok(VSpec::Highest(v.mu.0.clone()))
            };
            match cmd {
                SatakeCmd::Coroots => Success::of(satake::relative_coroots(&m)?),
                SatakeCmd::Zeta { v } => {
                    let list: Vec<Value> = satake::zeta_exponents(&m, &v_of(v)?, v.zeta_start.into())?
                        .iter()
                        .map(|(a, z)| json!({"alpha": a.alpha, "multipliable": a.multipliable, "zeta": z}))
                        .collect();
                    Success::of(list)
                }
                SatakeCmd::Divisor { v } => Success::of(satake::determinant_divisor(&m, &v_of(v)?, v.zeta_start.into())?),
                SatakeCmd::General { v, s } => {
                    let p = parameter(&m, s)?;
                    Success::of(satake::is_v_general(&m, &v_of(v)?, &p, v.zeta_start.into())?)
                }
                SatakeCmd::StrongGeneral { v, s } => {
                    let p = parameter(&m, s)?;
                    let vs = v_of(v)?;
                    let strong = satake::is_strongly_v_general(&m, &vs, &p)?;
                    Success::of(strong).map(|s| s.with("basis", &p.basis))
                }
            }
        }
        Command::Oracle(OracleCmd::Verify { height }) => {
            let m = checked_model(&cli.group)?;
            let mut data = vec![("absolute", m.datum.clone())];
            if let Ok(f) = FoldedDatum::new(&m) {
                if f.datum != m.datum {
                    data.push(("folded", f.datum));
                }
            }
            let mut checked = 0u64;
            let mut mismatches = Vec::new();
            for (tag, d) in &data {
                for mu in sweep::dominant_coweights(d, *height) {
                    let fast = char_engine::full_character(d, &mu)?;
                    let slow = oracle_character(d, &mu, rank_max)?;
                    checked += 1;
                    if fast != slow {
                        mismatches.push(json!({"datum": tag, "mu": mu}));
                    }
                }
            }
            let agree = mismatches.is_empty();
            Success::of(json!({"checked": checked, "agree": agree, "mismatches": mismatches}))
        }
    }
}

fn command_name(c: &Command) -> String {
    let (a, b) = match c {
        Command::Group(GroupCmd::Validate) => ("group", "validate"),
        Command::Rep(r) => (
            "rep",
            match r {
                RepCmd::Mult { .. } => "mult",
                RepCmd::Dim { .. } => "dim",
                RepCmd::Char { .. } => "char",
                RepCmd::Tensor { .. } => "tensor",
                RepCmd::Restrict { .. } => "restrict",
                RepCmd::Branch { .. } => "branch",
            },
        ),
        Command::Kottwitz(k) => (
            "kottwitz",
            match k {
                KottwitzCmd::Kappa { .. } => "kappa",
                KottwitzCmd::Newton { .. } => "newton",
                KottwitzCmd::VspEnum { .. } => "vsp-enum",
                KottwitzCmd::InBgmu { .. } => "in-bgmu",
                KottwitzCmd::TateDim { .. } => "tate-dim",
                KottwitzCmd::BasicVsp { .. } => "basic-vsp",
            },
        ),
        Command::Adlv(a) => (
            "adlv",
            match a {
                AdlvCmd::Nonempty { .. } => "nonempty",
                AdlvCmd::Dim { .. } => "dim",
                AdlvCmd::Components { .. } => "components",
                AdlvCmd::MinNu { .. } => "min-nu",
                AdlvCmd::NormReduce { .. } => "norm-reduce",
                AdlvCmd::BasicStratum { .. } => "basic-stratum",
            },
        ),
        Command::Satake(s) => (
            "satake",
            match s {
                SatakeCmd::Coroots => "coroots",
                SatakeCmd::Zeta { .. } => "zeta",
                SatakeCmd::Divisor { .. } => "divisor",
                SatakeCmd::General { .. } => "general",
                SatakeCmd::StrongGeneral { .. } => "strong-general",
            },
        ),
        Command::Oracle(OracleCmd::Verify { .. }) => ("oracle", "verify"),
    };
    format!("{a} {b}")
}

fn command_inputs(cli: &Cli) -> Value {
    let args = match &cli.command {
        Command::Group(_) => json!({}),
        Command::Rep(r) => match r {
            RepCmd::Mult { mu, weight } => json!({"mu": mu.mu, "folded": mu.folded, "weight": weight}),
            RepCmd::Dim { mu } | RepCmd::Char { mu } => json!({"mu": mu.mu, "folded": mu.folded}),
            RepCmd::Tensor { mu, nu } => json!({"mu": mu.mu, "folded": mu.folded, "nu": nu}),
            RepCmd::Restrict { mu } | RepCmd::Branch { mu } => json!({"mu": mu}),
        },
        Command::Kottwitz(k) => match k {
            KottwitzCmd::Kappa { tau } => json!({"tau": tau}),
            KottwitzCmd::Newton { tau, mu, basic } => json!({"tau": tau, "mu": mu, "basic": basic}),
            KottwitzCmd::VspEnum { mu } | KottwitzCmd::BasicVsp { mu } => json!({"mu": mu}),
            KottwitzCmd::InBgmu { tau, mu } => json!({"tau": tau, "mu": mu}),
            KottwitzCmd::TateDim { mu, canonical } => json!({"mu": mu, "canonical": canonical}),
        },
        Command::Adlv(a) => match a {
            AdlvCmd::Nonempty { q } | AdlvCmd::Dim { q } => to_value(q),
            AdlvCmd::Components { q, mu_prime } => {
                let mut v = to_value(q);
                v["mu_prime"] = to_value(mu_prime);
                v
            }
            AdlvCmd::MinNu { mu, lambda_i } => json!({"mu": mu, "lambda_i": lambda_i, "bound": cli.bound}),
            AdlvCmd::NormReduce { mu, b } => json!({"mu": mu, "b": b}),
            AdlvCmd::BasicStratum { mu } => json!({"mu": mu}),
        },
        Command::Satake(s) => match s {
            SatakeCmd::Coroots => json!({}),
            SatakeCmd::Zeta { v } | SatakeCmd::Divisor { v } => to_value(v),
            SatakeCmd::General { v, s } | SatakeCmd::StrongGeneral { v, s } => {
                let mut x = to_value(v);
                x["s"] = to_value(&s.s);
                x["basis"] = to_value(&s.basis);
                x
            }
        },
        Command::Oracle(OracleCmd::Verify { height }) => json!({"height": height, "oracle_rank_max": cli.oracle_rank_max}),
    };
    json!({"group": cli.group, "args": args})
}

fn provenance() -> Value {
    json!({"library": "splitcomb", "version": crate::VERSION})
}

fn human(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) | Value::Array(_) if !is_flat(x) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        human(x, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", flat(x))),
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if is_flat(x) {
                    out.push_str(&format!("{pad}- {}\n", flat(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    human(x, indent + 1, out);
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", flat(v))),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_object() && !x.is_array()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn flat(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("({})", a.iter().map(flat).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => 2,
        _ => 1,
    }
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let name = command_name(&cli.command);
    let inputs = command_inputs(&cli);
    let mut doc = Map::new();
    doc.insert("command".into(), json!(name));
    doc.insert("inputs".into(), inputs);
    let (code, stderr) = match dispatch(&cli) {
        Ok(s) => {
            doc.insert("result".into(), s.result);
            for (k, v) in s.extra {
                doc.insert(k, v);
            }
            (s.code, String::new())
        }
        Err(e) => {
            doc.insert("error".into(), json!({"name": e.name(), "message": e.to_string()}));
            (exit_code(&e), format!("error: {}: {e}\n", e.name()))
        }
    };
    doc.insert("provenance".into(), provenance());
    let doc = Value::Object(doc);
    let stdout = match cli.format {
        OutputMode::Structured => serde_json::to_string_pretty(&doc).expect("json") + "\n",
        OutputMode::Human => {
            let mut s = String::new();
            human(&doc, 0, &mut s);
            s
        }
    };
    Output { code, stdout, stderr }
}
