//! Command implementations behind the `qhardy` binary. Every command returns
//! a JSON value plus a pass flag; the binary only parses flags and prints.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::group::{
    named_family_with, one_dim_characters, pseudoreflections, generate_group_with, CMatrix,
    Character, Family, FiniteGroup, DEFAULT_CAP,
};
use crate::hardy::{
    isotypic_project, BasisMode, BasisStrategy, DomainKind, HardyModel, QuotientBasisJson,
    QuotientSpace,
};
use crate::invariants::{
    basic_map, generating_polynomial_for, hyperplanes, is_relative_invariant,
    verify_jacobian_factorization, with_exponents, BasicMap, HyperplaneData,
};
use crate::poly::{clean, exact_divide_with, MixedPolynomial, PolynomialJson, PolynomialMap};
use crate::sampling::{random_point, random_polynomial, random_symbol, rng};
use crate::schur::{partition_of, schur_polynomial};
use crate::toeplitz::{
    check_brown_halmos, check_commuting_transfer, check_product_transfer, check_reducing,
    intertwining_defect, invariance_defect, symbol_scale, toeplitz_matrix, Verdict,
};
use crate::tolerance::Tolerances;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("computation failed: {0}")]
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Compute(_) => EXIT_FAIL,
        }
    }
}

fn compute<E: fmt::Display>(e: E) -> CliError {
    CliError::Compute(e.to_string())
}

fn config<E: fmt::Display>(e: E) -> CliError {
    CliError::Config(e.to_string())
}

/// JSON group description; `generators` and `hsop` are used by custom groups.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orders: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<Vec<[f64; 2]>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hsop: Option<Vec<PolynomialJson>>,
}

impl GroupSpec {
    pub fn named(family: &Family) -> Self {
        match family {
            Family::Symmetric { d } => Self {
                family: "symmetric".into(),
                d: Some(*d),
                ..Self::default()
            },
            Family::Cyclic { orders } => Self {
                family: "cyclic".into(),
                d: Some(orders.len()),
                orders: Some(orders.clone()),
                ..Self::default()
            },
            Family::Wreath { m, d } => Self {
                family: "wreath".into(),
                d: Some(*d),
                m: Some(*m),
                ..Self::default()
            },
            Family::Custom => Self {
                family: "custom".into(),
                ..Self::default()
            },
        }
    }

    pub fn parse_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| config(format!("invalid group spec: {e}")))
    }

    fn family(&self) -> Result<Family, CliError> {
        let need_d = || {
            self.d
                .filter(|&d| d >= 1)
                .ok_or_else(|| config(format!("family '{}' needs d ≥ 1", self.family)))
        };
        match self.family.as_str() {
            "symmetric" => Ok(Family::Symmetric { d: need_d()? }),
            "cyclic" => {
                let orders = match (&self.orders, self.d) {
                    (Some(o), _) if !o.is_empty() => o.clone(),
                    _ => return Err(config("cyclic family needs orders")),
                };
                if let Some(d) = self.d {
                    if d != orders.len() {
                        return Err(config("cyclic orders must have length d"));
                    }
                }
                if orders.iter().any(|&n| n < 1) {
                    return Err(config("cyclic orders must be positive"));
                }
                Ok(Family::Cyclic { orders })
            }
            "wreath" => {
                let m = self
                    .m
                    .filter(|&m| m >= 1)
                    .ok_or_else(|| config("wreath family needs m ≥ 1"))?;
                Ok(Family::Wreath { m, d: need_d()? })
            }
            "custom" => Ok(Family::Custom),
            other => Err(config(format!("unknown family '{other}'"))),
        }
    }

    pub fn build(&self, tol: &Tolerances) -> Result<Setup, CliError> {
        let family = self.family()?;
        let group = match family {
            Family::Custom => {
                let gens = self
                    .generators
                    .as_ref()
                    .filter(|g| !g.is_empty())
                    .ok_or_else(|| config("custom group needs generators"))?;
                let mut mats = Vec::with_capacity(gens.len());
                for g in gens {
                    let n = g.len();
                    if n == 0 || g.iter().any(|row| row.len() != n) {
                        return Err(config("generators must be square matrices"));
                    }
                    mats.push(CMatrix::from_fn(n, n, |i, j| {
                        Complex64::new(g[i][j][0], g[i][j][1])
                    }));
                }
                generate_group_with(&mats, DEFAULT_CAP, tol.eps, Family::Custom).map_err(config)?
            }
            ref named => named_family_with(named, tol.eps).map_err(config)?,
        };
        let user_map = match &self.hsop {
            Some(list) => {
                let comps = list
                    .iter()
                    .map(MixedPolynomial::try_from)
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(config)?;
                Some(PolynomialMap::new(comps).map_err(config)?)
            }
            None => None,
        };
        Setup::new(group, user_map)
    }
}

/// A group with its hyperplanes, characters (exponents filled) and basic map.
pub struct Setup {
    pub group: FiniteGroup,
    pub planes: Option<HyperplaneData>,
    pub characters: Vec<Character>,
    pub basic: Option<BasicMap>,
    pub basic_error: Option<String>,
}

impl Setup {
    pub fn new(group: FiniteGroup, user_map: Option<PolynomialMap>) -> Result<Self, CliError> {
        let planes = hyperplanes(&group).ok();
        let mut characters = one_dim_characters(&group);
        if let Some(p) = &planes {
            characters = characters
                .iter()
                .map(|c| with_exponents(&group, p, c))
                .collect::<Result<_, _>>()
                .map_err(compute)?;
        }
        let (basic, basic_error) = match basic_map(&group, user_map) {
            Ok(b) => (Some(b), None),
            Err(e) => (None, Some(e.to_string())),
        };
        Ok(Self {
            group,
            planes,
            characters,
            basic,
            basic_error,
        })
    }

    fn planes(&self) -> Result<&HyperplaneData, CliError> {
        self.planes
            .as_ref()
            .ok_or_else(|| config("group is not generated by pseudoreflections"))
    }

    fn basic(&self) -> Result<&BasicMap, CliError> {
        self.basic.as_ref().ok_or_else(|| {
            config(format!(
                "no basic polynomial map: {}",
                self.basic_error.as_deref().unwrap_or("unavailable")
            ))
        })
    }

    pub fn select(&self, selector: &CharacterSelector) -> Result<Vec<&Character>, CliError> {
        let find = |name: &str| {
            self.characters
                .iter()
                .find(|c| c.name == name)
                .ok_or_else(|| config(format!("group has no '{name}' character")))
        };
        Ok(match selector {
            CharacterSelector::All => self.characters.iter().collect(),
            CharacterSelector::Trivial => vec![find("trivial")?],
            CharacterSelector::Sign => vec![find("sign")?],
            CharacterSelector::Index(i) => vec![self.characters.get(*i).ok_or_else(|| {
                config(format!(
                    "character index {i} out of range (group has {})",
                    self.characters.len()
                ))
            })?],
        })
    }

    pub fn select_one(&self, selector: &CharacterSelector) -> Result<&Character, CliError> {
        if *selector == CharacterSelector::All {
            return Err(config("this command needs a single character"));
        }
        Ok(self.select(selector)?[0])
    }

    pub fn space(&self, chi: &Character, kind: DomainKind) -> Result<QuotientSpace, CliError> {
        self.planes()?;
        let mut model = HardyModel::new(kind, self.group.dim());
        model.eps = self.group.eps();
        QuotientSpace::new(self.group.clone(), chi, self.basic()?.clone(), model).map_err(compute)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharacterSelector {
    Index(usize),
    Sign,
    Trivial,
    All,
}

impl FromStr for CharacterSelector {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "sign" => Ok(Self::Sign),
            "trivial" => Ok(Self::Trivial),
            "all" => Ok(Self::All),
            other => other
                .parse::<usize>()
                .map(Self::Index)
                .map_err(|_| config(format!("invalid character selector '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub group: GroupSpec,
    pub character: Option<CharacterSelector>,
    pub model: DomainKind,
    pub cutoff: u32,
    pub tol: Tolerances,
    pub seed: u64,
    pub format: OutputFormat,
}

impl RunConfig {
    pub fn new(group: GroupSpec) -> Self {
        Self {
            group,
            character: None,
            model: DomainKind::Polydisc,
            cutoff: 8,
            tol: Tolerances::default(),
            seed: 0,
            format: OutputFormat::Json,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.cutoff < 1 {
            return Err(config("cutoff must be at least 1"));
        }
        if !(self.tol.eps > 0.0) {
            return Err(config("tolerance must be positive"));
        }
        Ok(())
    }

    fn setup(&self) -> Result<Setup, CliError> {
        self.validate()?;
        self.group.build(&self.tol)
    }

    fn selector_or(&self, default: CharacterSelector) -> CharacterSelector {
        self.character.clone().unwrap_or(default)
    }
}

/// Result of one command.
#[derive(Debug)]
pub struct Output {
    pub value: Value,
    pub passed: bool,
}

impl Output {
    fn info(value: Value) -> Self {
        Self {
            value,
            passed: true,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.value).expect("serializable");
                s.push('\n');
                s
            }
            OutputFormat::Csv => to_csv(&self.value),
        }
    }
}

fn complex_json(c: Complex64) -> Value {
    json!([clean(c.re), clean(c.im)])
}

fn poly_json(p: &MixedPolynomial) -> Value {
    serde_json::to_value(PolynomialJson::from(p)).expect("serializable")
}

fn report_json<T: Serialize>(r: &T) -> Value {
    serde_json::to_value(r).expect("serializable")
}

/// Flatten a JSON value into `path,value` rows.
pub fn to_csv(value: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    let p = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&p, x, out);
                }
            }
            Value::Array(items) => {
                for (i, x) in items.iter().enumerate() {
                    walk(&format!("{prefix}.{i}"), x, out);
                }
            }
            Value::String(s) => out.push((prefix.to_string(), s.clone())),
            other => out.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut rows = Vec::new();
    walk("", value, &mut rows);
    let mut s = String::from("path,value\n");
    for (p, v) in rows {
        let v = if v.contains(',') || v.contains('"') {
            format!("\"{}\"", v.replace('"', "\"\""))
        } else {
            v
        };
        s.push_str(&format!("{p},{v}\n"));
    }
    s
}

fn character_json(setup: &Setup, index: usize, chi: &Character) -> Value {
    json!({
        "index": index,
        "name": chi.name,
        "exponents": chi.exponents,
        "values": chi.values.iter().map(|v| complex_json(*v)).collect::<Vec<_>>(),
        "real": chi.values.iter().all(|v| v.im.abs() < setup.group.eps()),
    })
}

pub fn cmd_describe(cfg: &RunConfig) -> Result<Output, CliError> {
    let setup = cfg.setup()?;
    let g = &setup.group;
    let planes = setup.planes.as_ref();
    let hyper = planes
        .map(|p| {
            p.linear_forms
                .iter()
                .zip(&p.orders)
                .map(|(l, m)| json!({"form": poly_json(l), "order": m}))
                .collect::<Vec<_>>()
        })
        .unwrap_or_default();
    let characters: Vec<Value> = setup
        .characters
        .iter()
        .map(|c| json!({"name": c.name, "exponents": c.exponents}))
        .collect();
    let (hsop, degrees, jac) = match (&setup.basic, planes) {
        (Some(b), Some(p)) => {
            let jac = verify_jacobian_factorization(b, p)
                .map(|f| complex_json(f.constant))
                .unwrap_or(Value::Null);
            (
                b.map.components().iter().map(poly_json).collect::<Vec<_>>(),
                json!(b.map.degrees()),
                jac,
            )
        }
        (Some(b), None) => (
            b.map.components().iter().map(poly_json).collect(),
            json!(b.map.degrees()),
            Value::Null,
        ),
        _ => (Vec::new(), Value::Null, Value::Null),
    };
    Ok(Output::info(json!({
        "group": g.family().to_string(),
        "order": g.order(),
        "dimension": g.dim(),
        "pseudoreflections": pseudoreflections(g).len(),
        "reflection_group": planes.is_some(),
        "hyperplanes": hyper,
        "characters": characters,
        "hsop": hsop,
        "hsop_degrees": degrees,
        "jacobian_constant": jac,
    })))
}

pub fn cmd_characters(cfg: &RunConfig) -> Result<Output, CliError> {
    let setup = cfg.setup()?;
    let chosen = setup.select(&cfg.selector_or(CharacterSelector::All))?;
    let list: Vec<Value> = setup
        .characters
        .iter()
        .enumerate()
        .filter(|(_, c)| chosen.iter().any(|x| x.name == c.name))
        .map(|(i, c)| character_json(&setup, i, c))
        .collect();
    Ok(Output::info(json!({
        "group": setup.group.family().to_string(),
        "count": list.len(),
        "characters": list,
    })))
}

pub fn cmd_hyperplanes(cfg: &RunConfig) -> Result<Output, CliError> {
    let setup = cfg.setup()?;
    let p = setup.planes()?;
    let list: Vec<Value> = (0..p.len())
        .map(|i| {
            json!({
                "form": poly_json(&p.linear_forms[i]),
                "order": p.orders[i],
                "generator": p.generators[i],
                "members": p.members[i],
            })
        })
        .collect();
    Ok(Output::info(json!({
        "group": setup.group.family().to_string(),
        "count": list.len(),
        "hyperplanes": list,
    })))
}

pub fn cmd_lrho(cfg: &RunConfig) -> Result<Output, CliError> {
    let setup = cfg.setup()?;
    let p = setup.planes()?;
    let chosen = setup.select(&cfg.selector_or(CharacterSelector::Sign))?;
    let mut list = Vec::new();
    for chi in chosen {
        let ell = generating_polynomial_for(p, chi).map_err(compute)?;
        list.push(json!({
            "character": chi.name,
            "exponents": chi.exponents,
            "generating_polynomial": poly_json(&ell),
            "degree": ell.holo_degree(),
        }));
    }
    Ok(Output::info(json!({
        "group": setup.group.family().to_string(),
        "generating_polynomials": list,
    })))
}

pub fn cmd_verify_jacobian(cfg: &RunConfig) -> Result<Output, CliError> {
    let setup = cfg.setup()?;
    let p = setup.planes()?;
    let b = setup.basic()?;
    let value = match verify_jacobian_factorization(b, p) {
        Ok(f) => json!({
            "verdict": Verdict::Pass,
            "constant": complex_json(f.constant),
            "residual": f.residual,
        }),
        Err(e) => json!({"verdict": Verdict::Fail, "error": e.to_string()}),
    };
    let passed = value["verdict"] == json!(Verdict::Pass);
    Ok(Output { value, passed })
}

pub fn cmd_hardy_onb(cfg: &RunConfig, degree: u32) -> Result<Output, CliError> {
    let setup = cfg.setup()?;
    let chi = setup.select_one(&cfg.selector_or(CharacterSelector::Sign))?;
    let space = setup.space(chi, cfg.model)?;
    let basis = space.quotient_onb(degree).map_err(compute)?;
    let mut value = serde_json::to_value(QuotientBasisJson::from(&basis)).expect("serializable");
    value["group"] = json!(setup.group.family().to_string());
    value["model"] = json!(cfg.model);
    Ok(Output::info(value))
}

/// Parse `[[z...], [w...]]` with complex entries as `[re, im]`.
pub fn parse_points(text: &str, d: usize) -> Result<(Vec<Complex64>, Vec<Complex64>), CliError> {
    let raw: Vec<Vec<[f64; 2]>> =
        serde_json::from_str(text).map_err(|e| config(format!("invalid --at: {e}")))?;
    if raw.len() != 2 || raw.iter().any(|p| p.len() != d) {
        return Err(config(format!("--at needs two points with {d} coordinates")));
    }
    let conv = |p: &Vec<[f64; 2]>| p.iter().map(|c| Complex64::new(c[0], c[1])).collect();
    Ok((conv(&raw[0]), conv(&raw[1])))
}

pub fn cmd_hardy_kernel(cfg: &RunConfig, at: &str) -> Result<Output, CliError> {
    let setup = cfg.setup()?;
    let chi = setup.select_one(&cfg.selector_or(CharacterSelector::Sign))?;
    let space = setup.space(chi, cfg.model)?;
    let (z, w) = parse_points(at, setup.group.dim())?;
    let sub = space.subspace_kernel(&z, &w).map_err(config)?;
    let opt = |r: Result<Complex64, _>| r.map(complex_json).unwrap_or(Value::Null);
    Ok(Output::info(json!({
        "character": chi.name,
        "model": cfg.model,
        "subspace_kernel": complex_json(sub),
        "subspace_kernel_with_prefactor": opt(space.subspace_kernel_with_prefactor(&z, &w)),
        "quotient_kernel": opt(space.quotient_kernel(&z, &w)),
    })))
}

/// Parse a polynomial given inline as JSON.
pub fn parse_polynomial(text: &str, d: usize) -> Result<MixedPolynomial, CliError> {
    let j: PolynomialJson =
        serde_json::from_str(text).map_err(|e| config(format!("invalid polynomial: {e}")))?;
    if j.d != d {
        return Err(config(format!("polynomial must have d = {d}")));
    }
    MixedPolynomial::try_from(&j).map_err(config)
}

pub fn cmd_toeplitz_matrix(cfg: &RunConfig, symbol: &str) -> Result<Output, CliError> {
    let setup = cfg.setup()?;
    let chi = setup.select_one(&cfg.selector_or(CharacterSelector::Sign))?;
    let space = setup.space(chi, cfg.model)?;
    let u = parse_polynomial(symbol, setup.basic()?.map.len())?;
    let t = toeplitz_matrix(&space, &u, cfg.cutoff).map_err(compute)?;
    let rows: Vec<Vec<Value>> = (0..t.size())
        .map(|j| (0..t.size()).map(|k| complex_json(t.matrix[(j, k)])).collect())
        .collect();
    Ok(Output::info(json!({
        "character": chi.name,
        "model": cfg.model,
        "cutoff": t.cutoff,
        "size": t.size(),
        "representatives": t.representatives,
        "degrees": t.degrees,
        "exact_columns": t.exact_columns,
        "exact_region_size": t.exact_region_size(),
        "matrix": rows,
    })))
}

fn spaces_for(cfg: &RunConfig, setup: &Setup) -> Result<Vec<QuotientSpace>, CliError> {
    setup
        .select(&cfg.selector_or(CharacterSelector::All))?
        .into_iter()
        .map(|chi| setup.space(chi, cfg.model))
        .collect()
}

pub fn cmd_product_transfer(
    cfg: &RunConfig,
    u: &str,
    v: &str,
    q: &str,
) -> Result<Output, CliError> {
    let setup = cfg.setup()?;
    let n = setup.basic()?.map.len();
    let (u, v, q) = (
        parse_polynomial(u, n)?,
        parse_polynomial(v, n)?,
        parse_polynomial(q, n)?,
    );
    let spaces = spaces_for(cfg, &setup)?;
    let r = check_product_transfer(&spaces, &u, &v, &q, cfg.cutoff).map_err(compute)?;
    Ok(Output {
        passed: r.verdict.is_pass(),
        value: report_json(&r),
    })
}

pub fn cmd_commute_transfer(cfg: &RunConfig, u: &str, v: &str) -> Result<Output, CliError> {
    let setup = cfg.setup()?;
    let n = setup.basic()?.map.len();
    let (u, v) = (parse_polynomial(u, n)?, parse_polynomial(v, n)?);
    let spaces = spaces_for(cfg, &setup)?;
    let r = check_commuting_transfer(&spaces, &u, &v, cfg.cutoff).map_err(compute)?;
    Ok(Output {
        passed: r.verdict.is_pass(),
        value: report_json(&r),
    })
}

pub fn cmd_brown_halmos(cfg: &RunConfig, symbol: &str) -> Result<Output, CliError> {
    let setup = cfg.setup()?;
    if cfg.model != DomainKind::Polydisc {
        return Err(config("brown-halmos requires --model polydisc"));
    }
    let chi = setup.select_one(&cfg.selector_or(CharacterSelector::Sign))?;
    let space = setup.space(chi, cfg.model)?;
    let u = parse_polynomial(symbol, setup.basic()?.map.len())?;
    let r = check_brown_halmos(&space, &u, cfg.cutoff).map_err(compute)?;
    Ok(Output {
        passed: r.verdict.is_pass(),
        value: report_json(&r),
    })
}

/// `symbol` is a quotient symbol unless `ambient` is set, in which case it is
/// taken as `ũ` on `Ω` directly.
pub fn cmd_reducing(
    cfg: &RunConfig,
    symbol: &str,
    ambient: bool,
    degree: u32,
) -> Result<Output, CliError> {
    let setup = cfg.setup()?;
    let chi = setup.select_one(&cfg.selector_or(CharacterSelector::Sign))?;
    let model = HardyModel::new(cfg.model, setup.group.dim());
    let lifted = if ambient {
        parse_polynomial(symbol, setup.group.dim())?
    } else {
        let u = parse_polynomial(symbol, setup.basic()?.map.len())?;
        crate::poly::compose_mixed(&u, &setup.basic()?.map).map_err(compute)?
    };
    let r = check_reducing(&setup.group, chi, &model, &lifted, degree).map_err(config)?;
    Ok(Output {
        passed: r.verdict.is_pass(),
        value: report_json(&r),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteCheck {
    pub name: String,
    pub verdict: Verdict,
    pub max_deviation: f64,
    pub exact_region_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl SuiteCheck {
    fn new(name: &str, dev: f64, count: usize, tol: f64) -> Self {
        Self {
            name: name.into(),
            verdict: Verdict::from_deviation(dev, tol),
            max_deviation: dev,
            exact_region_size: count,
            detail: None,
        }
    }

    fn failed(name: &str, err: impl fmt::Display) -> Self {
        Self {
            name: name.into(),
            verdict: Verdict::Fail,
            max_deviation: f64::INFINITY,
            exact_region_size: 0,
            detail: Some(err.to_string()),
        }
    }
}

/// Sizes of the randomized parts of `verify-all`.
#[derive(Clone, Copy, Debug)]
pub struct SuiteSizes {
    pub random_polynomials: usize,
    pub polynomial_degree: u32,
    pub onb_degree: u32,
    pub kernel_degree: u32,
    pub kernel_points: usize,
    pub schur_degree: u32,
    pub reducing_degree: u32,
}

impl Default for SuiteSizes {
    fn default() -> Self {
        Self {
            random_polynomials: 20,
            polynomial_degree: 6,
            onb_degree: 8,
            kernel_degree: 40,
            kernel_points: 5,
            schur_degree: 8,
            reducing_degree: 5,
        }
    }
}

fn run_check(name: &str, f: impl FnOnce() -> Result<SuiteCheck, CliError>) -> SuiteCheck {
    f().unwrap_or_else(|e| SuiteCheck::failed(name, e))
}

pub fn cmd_verify_all(cfg: &RunConfig) -> Result<Output, CliError> {
    cmd_verify_all_with(cfg, SuiteSizes::default())
}

pub fn cmd_verify_all_with(cfg: &RunConfig, sizes: SuiteSizes) -> Result<Output, CliError> {
    let setup = cfg.setup()?;
    setup.planes()?;
    setup.basic()?;
    let chars = setup.select(&cfg.selector_or(CharacterSelector::All))?;
    let spaces: Vec<QuotientSpace> = chars
        .iter()
        .map(|c| setup.space(c, cfg.model))
        .collect::<Result<_, _>>()?;
    let g = &setup.group;
    let d = g.dim();
    let n = setup.basic()?.map.len();
    let model = *spaces[0].model();
    let eps = cfg.tol.eps;
    let op_eps = cfg.tol.operator;
    let mut rng = rng(cfg.seed);
    let polys: Vec<MixedPolynomial> = (0..sizes.random_polynomials)
        .map(|_| random_polynomial(&mut rng, d, sizes.polynomial_degree, 6))
        .collect();
    let mut checks = Vec::new();

    checks.push(run_check("jacobian_factorization", || {
        let f = verify_jacobian_factorization(setup.basic()?, setup.planes()?).map_err(compute)?;
        Ok(SuiteCheck::new("jacobian_factorization", f.residual, 1, eps))
    }));

    checks.push(run_check("projection_algebra", || {
        let all = &setup.characters;
        let mut worst = 0.0f64;
        let mut count = 0;
        for (fi, f) in polys.iter().enumerate() {
            let g2 = &polys[(fi + 1) % polys.len()];
            let mut sum = MixedPolynomial::zero(d);
            for (i, a) in all.iter().enumerate() {
                let pf = isotypic_project(g, a, f).map_err(compute)?;
                let ppf = isotypic_project(g, a, &pf).map_err(compute)?;
                worst = worst.max(ppf.max_abs_diff(&pf));
                let lhs = model.inner_product(&pf, g2).map_err(compute)?;
                let pg = isotypic_project(g, a, g2).map_err(compute)?;
                let rhs = model.inner_product(f, &pg).map_err(compute)?;
                worst = worst.max((lhs - rhs).norm());
                for b in all.iter().skip(i + 1) {
                    let cross = isotypic_project(g, b, &pf).map_err(compute)?;
                    worst = worst.max(cross.max_coeff());
                }
                sum += &pf;
                count += 1;
            }
            if g.is_abelian() {
                worst = worst.max(sum.max_abs_diff(f));
            }
        }
        Ok(SuiteCheck::new("projection_algebra", worst, count, eps))
    }));

    checks.push(run_check("stanley_divisibility", || {
        let mut worst = 0.0f64;
        let mut count = 0;
        for space in &spaces {
            for f in &polys {
                let p = space.project(f).map_err(compute)?;
                let q = exact_divide_with(&p, space.generating_polynomial(), eps)
                    .map_err(compute)?;
                worst = worst.max(invariance_defect(g, &q));
                count += 1;
            }
        }
        Ok(SuiteCheck::new("stanley_divisibility", worst, count, eps))
    }));

    checks.push(run_check("gamma_isometry", || {
        let mut worst = 0.0f64;
        let mut count = 0;
        let wpolys: Vec<MixedPolynomial> = (0..6)
            .map(|_| random_polynomial(&mut rng, n, 3, 4))
            .collect();
        for space in &spaces {
            for (i, f) in wpolys.iter().enumerate() {
                let h = &wpolys[(i + 1) % wpolys.len()];
                let lhs = model
                    .inner_product(
                        &space.gamma(f).map_err(compute)?,
                        &space.gamma(h).map_err(compute)?,
                    )
                    .map_err(compute)?;
                let rhs = space.quotient_inner_product(f, h).map_err(compute)?;
                worst = worst.max((lhs - rhs).norm() / (1.0 + rhs.norm()));
                count += 1;
            }
        }
        Ok(SuiteCheck::new("gamma_isometry", worst, count, eps))
    }));

    checks.push(run_check("onb_gram", || {
        let mut worst = 0.0f64;
        let mut count = 0;
        for space in &spaces {
            let b = space
                .quotient_onb_with(sizes.onb_degree, BasisMode::Full, BasisStrategy::Auto)
                .map_err(compute)?;
            let lifts: Vec<&MixedPolynomial> = b.lifts().collect();
            for (i, x) in lifts.iter().enumerate() {
                for (j, y) in lifts.iter().enumerate() {
                    let ip = model.inner_product(x, y).map_err(compute)?;
                    let target = if i == j { 1.0 } else { 0.0 };
                    worst = worst.max((ip - Complex64::new(target, 0.0)).norm());
                    count += 1;
                }
                let back = space
                    .gamma(b.entries[i].quotient.as_ref().expect("full basis"))
                    .map_err(compute)?;
                worst = worst.max(back.max_abs_diff(x));
            }
        }
        Ok(SuiteCheck::new("onb_gram", worst, count, eps))
    }));

    checks.push(run_check("kernel_series", || {
        let mut worst = 0.0f64;
        let mut count = 0;
        for space in &spaces {
            let b = space
                .quotient_onb_with(sizes.kernel_degree, BasisMode::LiftedOnly, BasisStrategy::Auto)
                .map_err(compute)?;
            let mut done = 0;
            let mut attempts = 0;
            while done < sizes.kernel_points && attempts < 1000 * sizes.kernel_points {
                attempts += 1;
                let z = random_point(&mut rng, &model, 0.5);
                let w = random_point(&mut rng, &model, 0.5);
                let ell = space.generating_polynomial();
                if ell.evaluate(&z).norm() < 1e-4 || ell.evaluate(&w).norm() < 1e-4 {
                    continue;
                }
                let closed = space.subspace_kernel(&z, &w).map_err(compute)?;
                let series = space.subspace_kernel_series(&b, &z, &w);
                worst = worst.max((closed - series).norm());
                let closed = space.quotient_kernel(&z, &w).map_err(compute)?;
                let series = space.quotient_kernel_series(&b, &z, &w).map_err(compute)?;
                worst = worst.max((closed - series).norm());
                done += 1;
                count += 2;
            }
        }
        Ok(SuiteCheck::new("kernel_series", worst, count, 1e-6))
    }));

    if matches!(g.family(), Family::Symmetric { .. }) && model.kind == DomainKind::Polydisc {
        if let Some(space) = spaces.iter().find(|s| s.character().name == "sign") {
            checks.push(run_check("schur_oracle", || {
                let b = space.quotient_onb(sizes.schur_degree).map_err(compute)?;
                let mut worst = 0.0f64;
                for e in &b.entries {
                    let lambda = partition_of(&e.representative)
                        .ok_or_else(|| compute("representative is not strictly decreasing"))?;
                    let s = schur_polynomial(&lambda, d);
                    let composed = space
                        .lift_function(e.quotient.as_ref().expect("full basis"))
                        .map_err(compute)?;
                    worst = worst.max(composed.max_abs_diff(&s));
                }
                Ok(SuiteCheck::new("schur_oracle", worst, b.len(), eps))
            }));
        }
    }

    let symbols: Vec<MixedPolynomial> = (0..3)
        .map(|_| random_symbol(&mut rng, n, 2, 3))
        .collect();

    checks.push(run_check("reducing", || {
        let mut worst = 0.0f64;
        let mut count = 0;
        for space in &spaces {
            for u in &symbols {
                let lifted =
                    crate::poly::compose_mixed(u, &space.basic_map().map).map_err(compute)?;
                let r = check_reducing(g, space.character(), &model, &lifted, sizes.reducing_degree)
                    .map_err(compute)?;
                worst = worst.max(r.max_deviation);
                count += r.exact_region_size;
            }
        }
        Ok(SuiteCheck::new("reducing", worst, count, op_eps))
    }));

    checks.push(run_check("intertwining", || {
        let mut worst = 0.0f64;
        let mut count = 0;
        for space in &spaces {
            for u in &symbols {
                let f = random_polynomial(&mut rng, n, 2, 3);
                let dev = intertwining_defect(space, u, &f).map_err(compute)?;
                worst = worst.max(dev / symbol_scale(u));
                count += 1;
            }
        }
        Ok(SuiteCheck::new("intertwining", worst, count, op_eps))
    }));

    if model.kind == DomainKind::Polydisc {
        let w1 = MixedPolynomial::variable(n, 0);
        let bh_symbols = [MixedPolynomial::one(n), &w1 + &w1.conj()];
        for space in &spaces {
            let name = format!("brown_halmos[{}]", space.character().name);
            checks.push(run_check(&name, || {
                let mut worst = 0.0f64;
                let mut count = 0;
                let mut non_inner = Vec::new();
                for u in &bh_symbols {
                    let r = check_brown_halmos(space, u, cfg.cutoff).map_err(compute)?;
                    worst = worst.max(r.max_deviation);
                    count += r.exact_region_size;
                    for c in &r.coordinates {
                        if !c.inner && !non_inner.contains(&c.coordinate) {
                            non_inner.push(c.coordinate);
                        }
                    }
                }
                let mut check = SuiteCheck::new(&name, worst, count, op_eps);
                if !non_inner.is_empty() {
                    check.detail = Some(format!("non-inner coordinates: {non_inner:?}"));
                }
                Ok(check)
            }));
        }
    }

    let passed = checks.iter().all(|c| c.verdict.is_pass());
    let value = json!({
        "group": g.family().to_string(),
        "model": cfg.model,
        "seed": cfg.seed,
        "characters": chars.iter().map(|c| c.name.clone()).collect::<Vec<_>>(),
        "verdict": if passed { Verdict::Pass } else { Verdict::Fail },
        "checks": checks,
    });
    Ok(Output { value, passed })
}

/// True when a character's values are all real.
pub fn is_real_character(chi: &Character) -> bool {
    chi.values.iter().all(|v| v.im.abs() < 1e-12)
}

/// Check `ℓ_χ` against the relative-invariance relation it satisfies.
pub fn generating_polynomial_transforms_by_conjugate(
    group: &FiniteGroup,
    planes: &HyperplaneData,
    chi: &Character,
) -> Result<bool, CliError> {
    let ell = generating_polynomial_for(planes, chi).map_err(compute)?;
    Ok(is_relative_invariant(group, &ell, &chi.conjugate()))
}
