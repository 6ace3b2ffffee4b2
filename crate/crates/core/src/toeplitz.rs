//! Toeplitz operators with mixed-polynomial symbols on `H²(Ω)` and on the
//! quotient spaces `H²_χ(θ(Ω))`, their truncated matrices and the transfer
//! identities between them.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::group::{Character, FiniteGroup};
use crate::hardy::{
    isotypic_project, BasisMode, BasisStrategy, DomainKind, HardyError, HardyModel, QuotientSpace,
};
use crate::invariants::{relative_invariance_defect, BasicMap};
use crate::poly::{compose_mixed, exact_divide_with, exponents_of_degree, MixedPolynomial};
use crate::tolerance::{DIV_EPS, OPERATOR_EPS};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ToeplitzError {
    #[error("symbol is not G-invariant (defect {defect:.3e})")]
    PreconditionViolated { defect: f64 },
    #[error("Brown–Halmos check requires the polydisc model")]
    RequiresPolydisc,
    #[error("requested {requested} singular values of a {size}×{size} truncation")]
    TooManySingularValues { requested: usize, size: usize },
    #[error(transparent)]
    Hardy(#[from] HardyError),
}

impl From<crate::poly::PolyError> for ToeplitzError {
    fn from(e: crate::poly::PolyError) -> Self {
        ToeplitzError::Hardy(e.into())
    }
}

/// A quotient symbol `u(w, conj w)` and its lift `ũ = u(θ, conj θ)`.
#[derive(Clone, Debug)]
pub struct SymbolPair {
    pub quotient: MixedPolynomial,
    pub lifted: MixedPolynomial,
}

pub fn lift_symbol(u: &MixedPolynomial, basic: &BasicMap) -> Result<SymbolPair, ToeplitzError> {
    Ok(SymbolPair {
        quotient: u.clone(),
        lifted: compose_mixed(u, &basic.map)?,
    })
}

/// `max_σ ‖σ(ũ) − ũ‖`.
pub fn invariance_defect(group: &FiniteGroup, symbol: &MixedPolynomial) -> f64 {
    relative_invariance_defect(group, symbol, &Character::trivial(group))
}

/// `T_ũ f = P̃(ũ f)`.
pub fn apply_toeplitz_ambient(
    model: &HardyModel,
    symbol: &MixedPolynomial,
    f: &MixedPolynomial,
) -> Result<MixedPolynomial, ToeplitzError> {
    Ok(model.szego_project(&(symbol * f))?)
}

/// `T_u f` on `H²_χ(θ(Ω))` through `Γ⁻¹ T_ũ Γ`.
pub fn apply_toeplitz_quotient(
    space: &QuotientSpace,
    u: &MixedPolynomial,
    f: &MixedPolynomial,
) -> Result<MixedPolynomial, ToeplitzError> {
    let lifted = compose_mixed(u, &space.basic_map().map)?;
    let image = apply_toeplitz_ambient(space.model(), &lifted, &space.gamma(f)?)?;
    Ok(space.gamma_inverse(&image)?)
}

/// `T_u f` on `H²_χ(θ(Ω))` from the quotient-side projection of `u·f`.
pub fn apply_toeplitz_quotient_direct(
    space: &QuotientSpace,
    u: &MixedPolynomial,
    f: &MixedPolynomial,
) -> Result<MixedPolynomial, ToeplitzError> {
    Ok(space.quotient_project(&(u * f))?)
}

/// `‖Γ(T_u f) − T_ũ(Γ f)‖_∞` with `T_u` from the quotient-side projection.
pub fn intertwining_defect(
    space: &QuotientSpace,
    u: &MixedPolynomial,
    f: &MixedPolynomial,
) -> Result<f64, ToeplitzError> {
    let left = space.gamma(&apply_toeplitz_quotient_direct(space, u, f)?)?;
    let lifted = compose_mixed(u, &space.basic_map().map)?;
    let right = apply_toeplitz_ambient(space.model(), &lifted, &space.gamma(f)?)?;
    Ok(left.max_abs_diff(&right))
}

/// Upper bound on the sup-norm of a symbol over the boundary.
pub fn symbol_scale(symbol: &MixedPolynomial) -> f64 {
    symbol.coeff_l1().max(1.0)
}

fn positive_shift(symbol: &MixedPolynomial) -> u32 {
    symbol.max_degree_shift().max(0) as u32
}

/// Truncated matrix of a Toeplitz operator in an orthonormal basis of
/// homogeneous polynomials.
#[derive(Clone, Debug)]
pub struct ToeplitzTruncation {
    pub matrix: DMatrix<Complex64>,
    pub degrees: Vec<u32>,
    pub representatives: Vec<Vec<u32>>,
    pub cutoff: u32,
    /// Column `k` is exact when `T b_k` lies in the span of the truncated basis.
    pub exact_columns: Vec<bool>,
}

impl ToeplitzTruncation {
    pub fn size(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_exact(&self, _row: usize, col: usize) -> bool {
        self.exact_columns[col]
    }

    pub fn exactness_mask(&self) -> Vec<Vec<bool>> {
        let n = self.size();
        (0..n)
            .map(|j| (0..n).map(|k| self.is_exact(j, k)).collect())
            .collect()
    }

    pub fn exact_region_size(&self) -> usize {
        self.exact_columns.iter().filter(|&&b| b).count() * self.size()
    }
}

/// Orthonormal basis of homogeneous holomorphic polynomials.
#[derive(Clone, Debug)]
pub struct OrthonormalBasis {
    pub vectors: Vec<MixedPolynomial>,
    pub degrees: Vec<u32>,
    pub representatives: Vec<Vec<u32>>,
    pub cutoff: u32,
    index: HashMap<Vec<u32>, Vec<(usize, Complex64)>>,
}

impl OrthonormalBasis {
    pub fn new(
        vectors: Vec<MixedPolynomial>,
        degrees: Vec<u32>,
        representatives: Vec<Vec<u32>>,
        cutoff: u32,
    ) -> Self {
        let mut index: HashMap<Vec<u32>, Vec<(usize, Complex64)>> = HashMap::new();
        for (j, v) in vectors.iter().enumerate() {
            for (m, c) in v.terms() {
                index.entry(m.holo.clone()).or_default().push((j, *c));
            }
        }
        Self {
            vectors,
            degrees,
            representatives,
            cutoff,
            index,
        }
    }

    /// Normalized monomials `z^m/‖z^m‖` with `|m| ≤ cutoff`.
    pub fn monomials(model: &HardyModel, cutoff: u32) -> Self {
        let mut vectors = Vec::new();
        let mut degrees = Vec::new();
        let mut reps = Vec::new();
        for k in 0..=cutoff {
            for m in exponents_of_degree(model.dim, k) {
                let c = 1.0 / model.moment(&m).sqrt();
                vectors.push(MixedPolynomial::holo_monomial(&m, Complex64::new(c, 0.0)));
                degrees.push(k);
                reps.push(m);
            }
        }
        Self::new(vectors, degrees, reps, cutoff)
    }

    /// Lifted quotient basis `Γ e_m` with lifted degree `≤ cutoff`.
    pub fn quotient(space: &QuotientSpace, cutoff: u32) -> Result<Self, ToeplitzError> {
        let basis = space.quotient_onb_with(cutoff, BasisMode::LiftedOnly, BasisStrategy::Auto)?;
        let mut vectors = Vec::new();
        let mut degrees = Vec::new();
        let mut reps = Vec::new();
        for e in basis.entries {
            vectors.push(e.lift);
            degrees.push(e.degree);
            reps.push(e.representative);
        }
        Ok(Self::new(vectors, degrees, reps, cutoff))
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Coordinates `⟨y, b_j⟩` of a holomorphic polynomial.
    pub fn coordinates(&self, model: &HardyModel, y: &MixedPolynomial) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.len()];
        for (m, c) in y.terms() {
            if let Some(list) = self.index.get(&m.holo) {
                let w = model.moment(&m.holo);
                for &(j, b) in list {
                    out[j] += c * b.conj() * w;
                }
            }
        }
        out
    }

    /// Matrix of `P̃(symbol·)` in this basis; column `k` is exact when
    /// `deg b_k + shift ≤ cutoff`.
    pub fn operator_matrix(
        &self,
        model: &HardyModel,
        symbol: &MixedPolynomial,
        shift: u32,
    ) -> Result<ToeplitzTruncation, ToeplitzError> {
        let n = self.len();
        let mut matrix = DMatrix::<Complex64>::zeros(n, n);
        for (k, b) in self.vectors.iter().enumerate() {
            let y = model.szego_project(&(symbol * b))?;
            for (j, v) in self.coordinates(model, &y).into_iter().enumerate() {
                matrix[(j, k)] = v;
            }
        }
        let exact_columns = self
            .degrees
            .iter()
            .map(|&d| d + shift <= self.cutoff)
            .collect();
        Ok(ToeplitzTruncation {
            matrix,
            degrees: self.degrees.clone(),
            representatives: self.representatives.clone(),
            cutoff: self.cutoff,
            exact_columns,
        })
    }

    pub fn toeplitz(
        &self,
        model: &HardyModel,
        symbol: &MixedPolynomial,
    ) -> Result<ToeplitzTruncation, ToeplitzError> {
        self.operator_matrix(model, symbol, positive_shift(symbol))
    }
}

/// Matrix of `T_u` on `H²_χ(θ(Ω))` in the orthonormal basis up to `cutoff`.
pub fn toeplitz_matrix(
    space: &QuotientSpace,
    u: &MixedPolynomial,
    cutoff: u32,
) -> Result<ToeplitzTruncation, ToeplitzError> {
    let lifted = compose_mixed(u, &space.basic_map().map)?;
    OrthonormalBasis::quotient(space, cutoff)?.toeplitz(space.model(), &lifted)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_deviation(dev: f64, tol: f64) -> Self {
        if dev < tol {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub max_deviation: f64,
    pub exact_region_size: usize,
}

impl CheckReport {
    fn new(max_deviation: f64, exact_region_size: usize, tol: f64) -> Self {
        Self {
            verdict: Verdict::from_deviation(max_deviation, tol),
            max_deviation,
            exact_region_size,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpaceReport {
    pub space: String,
    #[serde(flatten)]
    pub report: CheckReport,
}

/// Outcome of a transfer check over the ambient space and several characters.
#[derive(Clone, Debug, Serialize)]
pub struct TransferReport {
    pub verdict: Verdict,
    pub max_deviation: f64,
    pub exact_region_size: usize,
    /// Every space reached the same verdict.
    pub consistent: bool,
    pub spaces: Vec<SpaceReport>,
}

impl TransferReport {
    fn from_spaces(spaces: Vec<SpaceReport>) -> Self {
        let all_pass = spaces.iter().all(|s| s.report.verdict.is_pass());
        let first = spaces.first().map(|s| s.report.verdict);
        Self {
            verdict: if all_pass {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
            max_deviation: spaces
                .iter()
                .map(|s| s.report.max_deviation)
                .fold(0.0, f64::max),
            exact_region_size: spaces.iter().map(|s| s.report.exact_region_size).sum(),
            consistent: spaces.iter().all(|s| Some(s.report.verdict) == first),
            spaces,
        }
    }

    pub fn verdict_of(&self, space: &str) -> Option<Verdict> {
        self.spaces
            .iter()
            .find(|s| s.space == space)
            .map(|s| s.report.verdict)
    }
}

/// The three symbols of a product check, lifted.
struct Lifted {
    u: MixedPolynomial,
    v: MixedPolynomial,
    q: Option<MixedPolynomial>,
}

/// Largest Hardy norm of `left(b) − right(b)` over the basis vectors. Both
/// sides are Toeplitz words applied to polynomials, so every column is exact.
fn column_deviation<L, R>(
    basis: &OrthonormalBasis,
    model: &HardyModel,
    left: L,
    right: R,
) -> Result<(f64, usize), ToeplitzError>
where
    L: Fn(&MixedPolynomial) -> Result<MixedPolynomial, ToeplitzError>,
    R: Fn(&MixedPolynomial) -> Result<MixedPolynomial, ToeplitzError>,
{
    let mut worst = 0.0f64;
    for b in &basis.vectors {
        let diff = &left(b)? - &right(b)?;
        worst = worst.max(model.norm(&diff)?);
    }
    Ok((worst, basis.vectors.len()))
}

fn product_on_basis(
    basis: &OrthonormalBasis,
    model: &HardyModel,
    s: &Lifted,
    tol: f64,
) -> Result<CheckReport, ToeplitzError> {
    let q = s.q.as_ref().expect("product check needs q");
    let t = |sym: &MixedPolynomial, f: &MixedPolynomial| apply_toeplitz_ambient(model, sym, f);
    let (dev, count) = column_deviation(basis, model, |b| t(&s.u, &t(&s.v, b)?), |b| t(q, b))?;
    let scale = symbol_scale(&s.u) * symbol_scale(&s.v);
    Ok(CheckReport::new(
        dev / scale.max(symbol_scale(q)),
        count,
        tol,
    ))
}

fn commutator_on_basis(
    basis: &OrthonormalBasis,
    model: &HardyModel,
    s: &Lifted,
    tol: f64,
) -> Result<CheckReport, ToeplitzError> {
    let t = |sym: &MixedPolynomial, f: &MixedPolynomial| apply_toeplitz_ambient(model, sym, f);
    let (dev, count) = column_deviation(
        basis,
        model,
        |b| t(&s.u, &t(&s.v, b)?),
        |b| t(&s.v, &t(&s.u, b)?),
    )?;
    Ok(CheckReport::new(
        dev / (symbol_scale(&s.u) * symbol_scale(&s.v)),
        count,
        tol,
    ))
}

/// Evaluate an operator identity on the ambient space and on every quotient
/// space in `spaces`, all sharing one basic map.
fn transfer<F>(
    spaces: &[QuotientSpace],
    u: &MixedPolynomial,
    v: &MixedPolynomial,
    q: Option<&MixedPolynomial>,
    cutoff: u32,
    check: F,
) -> Result<TransferReport, ToeplitzError>
where
    F: Fn(&OrthonormalBasis, &HardyModel, &Lifted) -> Result<CheckReport, ToeplitzError>,
{
    let first = spaces.first().expect("at least one character");
    let map = &first.basic_map().map;
    let lifted = Lifted {
        u: compose_mixed(u, map)?,
        v: compose_mixed(v, map)?,
        q: q.map(|q| compose_mixed(q, map)).transpose()?,
    };
    let model = first.model();
    let mut reports = vec![SpaceReport {
        space: "ambient".into(),
        report: check(&OrthonormalBasis::monomials(model, cutoff), model, &lifted)?,
    }];
    for space in spaces {
        let basis = OrthonormalBasis::quotient(space, cutoff)?;
        reports.push(SpaceReport {
            space: space.character().name.clone(),
            report: check(&basis, model, &lifted)?,
        });
    }
    Ok(TransferReport::from_spaces(reports))
}

/// `T_u T_v = T_q` on the ambient space and each quotient space.
pub fn check_product_transfer(
    spaces: &[QuotientSpace],
    u: &MixedPolynomial,
    v: &MixedPolynomial,
    q: &MixedPolynomial,
    cutoff: u32,
) -> Result<TransferReport, ToeplitzError> {
    transfer(spaces, u, v, Some(q), cutoff, |b, m, s| {
        product_on_basis(b, m, s, OPERATOR_EPS)
    })
}

/// `T_u T_v = T_v T_u` on the ambient space and each quotient space.
pub fn check_commuting_transfer(
    spaces: &[QuotientSpace],
    u: &MixedPolynomial,
    v: &MixedPolynomial,
    cutoff: u32,
) -> Result<TransferReport, ToeplitzError> {
    transfer(spaces, u, v, None, cutoff, |b, m, s| {
        commutator_on_basis(b, m, s, OPERATOR_EPS)
    })
}

fn require_invariant(group: &FiniteGroup, symbol: &MixedPolynomial) -> Result<(), ToeplitzError> {
    let defect = invariance_defect(group, symbol);
    if defect > group.eps() * (1.0 + symbol.max_coeff()) {
        return Err(ToeplitzError::PreconditionViolated { defect });
    }
    Ok(())
}

/// `T_ũ P_χ f = P_χ T_ũ f` for every monomial `f` of degree `≤ degree`.
pub fn check_reducing(
    group: &FiniteGroup,
    chi: &Character,
    model: &HardyModel,
    symbol: &MixedPolynomial,
    degree: u32,
) -> Result<CheckReport, ToeplitzError> {
    require_invariant(group, symbol)?;
    let mut worst = 0.0f64;
    let mut count = 0;
    for k in 0..=degree {
        for m in exponents_of_degree(model.dim, k) {
            let f = MixedPolynomial::holo_monomial(&m, Complex64::new(1.0, 0.0));
            let left = apply_toeplitz_ambient(model, symbol, &isotypic_project(group, chi, &f)?)?;
            let right = isotypic_project(group, chi, &apply_toeplitz_ambient(model, symbol, &f)?)?;
            worst = worst.max(left.max_abs_diff(&right));
            count += 1;
        }
    }
    Ok(CheckReport::new(
        worst / symbol_scale(symbol),
        count,
        OPERATOR_EPS,
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleInvarianceReport {
    pub verdict: Verdict,
    /// Largest `‖T_ũ(ℓ_χ h) − ℓ_χ·P̃(ũ h)‖_∞`, normalized by the symbol scale.
    pub max_deviation: f64,
    pub exact_region_size: usize,
    /// Every `T_ũ(ℓ_χ h)` is divisible by `ℓ_χ` with a `G`-invariant quotient.
    pub invariance_holds: bool,
    /// Largest invariance defect of the quotients.
    pub invariance_defect: f64,
    pub identity_holds: bool,
}

/// Spanning set of `G`-invariant polynomials of degree `≤ degree`.
pub fn invariant_polynomials(
    group: &FiniteGroup,
    degree: u32,
) -> Result<Vec<MixedPolynomial>, ToeplitzError> {
    let trivial = Character::trivial(group);
    let mut out: Vec<MixedPolynomial> = Vec::new();
    for k in 0..=degree {
        for m in exponents_of_degree(group.dim(), k) {
            let f = MixedPolynomial::holo_monomial(&m, Complex64::new(1.0, 0.0));
            let p = isotypic_project(group, &trivial, &f)?;
            if p.max_coeff() > group.eps() && !out.iter().any(|q| q.approx_eq(&p, 1e-12)) {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// For invariant `h` of degree `≤ degree`: `T_ũ(ℓ_χ h)` is divisible by
/// `ℓ_χ` with invariant quotient, compared against `ℓ_χ·P̃(ũh)`.
pub fn check_module_invariance(
    group: &FiniteGroup,
    ell: &MixedPolynomial,
    model: &HardyModel,
    symbol: &MixedPolynomial,
    degree: u32,
) -> Result<ModuleInvarianceReport, ToeplitzError> {
    require_invariant(group, symbol)?;
    let mut worst = 0.0f64;
    let mut defect = 0.0f64;
    let mut divisible = true;
    let hs = invariant_polynomials(group, degree)?;
    for h in &hs {
        let image = apply_toeplitz_ambient(model, symbol, &(ell * h))?;
        match exact_divide_with(&image, ell, DIV_EPS) {
            Ok(quotient) => {
                defect = defect.max(invariance_defect(group, &quotient));
                let expected = model.szego_project(&(symbol * h))?;
                worst = worst.max(quotient.max_abs_diff(&expected) / symbol_scale(symbol));
            }
            Err(_) => divisible = false,
        }
    }
    let invariance_holds = divisible && defect <= group.eps() * 1e3;
    let identity_holds = worst < OPERATOR_EPS;
    Ok(ModuleInvarianceReport {
        verdict: if invariance_holds && identity_holds {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        max_deviation: worst,
        exact_region_size: hs.len(),
        invariance_holds,
        invariance_defect: defect,
        identity_holds,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CoordinateReport {
    pub coordinate: usize,
    pub verdict: Verdict,
    pub max_deviation: f64,
    pub exact_region_size: usize,
    /// `|θ_i| = 1` on the torus.
    pub inner: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BrownHalmosReport {
    pub verdict: Verdict,
    pub max_deviation: f64,
    pub exact_region_size: usize,
    pub coordinates: Vec<CoordinateReport>,
}

/// True when `|f| = 1` almost everywhere on the boundary.
pub fn is_inner(model: &HardyModel, f: &MixedPolynomial) -> Result<bool, ToeplitzError> {
    let sq = f * &f.conj();
    let one = MixedPolynomial::one(f.dim());
    let gap = &sq - &one;
    let spread = model.boundary_integral(&(&gap * &gap))?;
    Ok(spread.norm() < DIV_EPS)
}

/// `M_{w_i}^* T_u M_{w_i} = T_u` on the polydisc quotient space, with
/// `M_{w_i}` acting on lifts as multiplication by `θ_i`.
pub fn check_brown_halmos(
    space: &QuotientSpace,
    u: &MixedPolynomial,
    cutoff: u32,
) -> Result<BrownHalmosReport, ToeplitzError> {
    let model = space.model();
    if model.kind != DomainKind::Polydisc {
        return Err(ToeplitzError::RequiresPolydisc);
    }
    let lifted = compose_mixed(u, &space.basic_map().map)?;
    let basis = OrthonormalBasis::quotient(space, cutoff)?;
    let t = basis.toeplitz(model, &lifted)?;
    let shift_u = positive_shift(&lifted);
    let scale = symbol_scale(&lifted);
    let mut coords = Vec::new();
    for (i, theta) in space.basic_map().map.components().iter().enumerate() {
        let deg = space.basic_map().map.degrees()[i];
        let m = basis.operator_matrix(model, theta, deg)?;
        let mtm = m.matrix.adjoint() * &t.matrix * &m.matrix;
        let mut worst = 0.0f64;
        let mut count = 0;
        for k in 0..basis.len() {
            if basis.degrees[k] + deg + shift_u > cutoff {
                continue;
            }
            for j in 0..basis.len() {
                if basis.degrees[j] + deg > cutoff {
                    continue;
                }
                worst = worst.max((mtm[(j, k)] - t.matrix[(j, k)]).norm());
                count += 1;
            }
        }
        let dev = worst / scale;
        coords.push(CoordinateReport {
            coordinate: i + 1,
            verdict: Verdict::from_deviation(dev, OPERATOR_EPS),
            max_deviation: dev,
            exact_region_size: count,
            inner: is_inner(model, theta)?,
        });
    }
    let max_deviation = coords.iter().map(|c| c.max_deviation).fold(0.0, f64::max);
    Ok(BrownHalmosReport {
        verdict: if coords.iter().all(|c| c.verdict.is_pass()) {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        max_deviation,
        exact_region_size: coords.iter().map(|c| c.exact_region_size).sum(),
        coordinates: coords,
    })
}

/// The `k` largest singular values of a truncation.
pub fn finite_section_singular_values(
    t: &ToeplitzTruncation,
    k: usize,
) -> Result<Vec<f64>, ToeplitzError> {
    let n = t.size();
    if k > n {
        return Err(ToeplitzError::TooManySingularValues {
            requested: k,
            size: n,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut sv: Vec<f64> = t.matrix.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv.truncate(k);
    Ok(sv)
}

/// `max deg ℓ_χ + 2·max deg θ_i`: every quotient basis then reaches two
/// θ-steps past its generating polynomial.
pub fn transfer_cutoff(spaces: &[QuotientSpace]) -> u32 {
    let ell = spaces
        .iter()
        .map(|s| s.generating_polynomial().holo_degree())
        .max()
        .unwrap_or(0);
    let theta = spaces
        .first()
        .and_then(|s| s.basic_map().map.degrees().iter().copied().max())
        .unwrap_or(0);
    ell + 2 * theta
}

/// A symbol triple with the verdicts predicted by the analytic/co-analytic
/// structure of the symbols. `None` marks a verdict that depends on the group.
#[derive(Clone, Debug)]
pub struct DesignedTriple {
    pub name: &'static str,
    pub u: MixedPolynomial,
    pub v: MixedPolynomial,
    pub q: MixedPolynomial,
    pub expect_product: Option<Verdict>,
    pub expect_commute: Option<Verdict>,
}

/// Ten symbol triples in quotient variables `w_1, …, w_n` (`n ≥ 2`).
pub fn designed_triples(n: usize) -> Vec<DesignedTriple> {
    let w = |i: usize| MixedPolynomial::variable(n, i);
    let wb = |i: usize| MixedPolynomial::conj_variable(n, i);
    let one = MixedPolynomial::one(n);
    let t = |name, u: MixedPolynomial, v: MixedPolynomial, q: Option<MixedPolynomial>, p, c| {
        let q = q.unwrap_or_else(|| &u * &v);
        DesignedTriple {
            name,
            u,
            v,
            q,
            expect_product: p,
            expect_commute: c,
        }
    };
    use Verdict::{Fail, Pass};
    vec![
        t("analytic-analytic", w(0), w(1), None, Some(Pass), Some(Pass)),
        t("coanalytic-analytic", wb(0), w(0), None, Some(Pass), Some(Fail)),
        t("analytic-coanalytic", w(0), wb(0), None, Some(Fail), Some(Fail)),
        t(
            "coanalytic-coanalytic",
            wb(0),
            wb(1),
            None,
            Some(Pass),
            Some(Pass),
        ),
        t(
            "mixed-analytic",
            &w(0) + &wb(1),
            w(0).pow(2),
            None,
            Some(Pass),
            None,
        ),
        t(
            "coanalytic-mixed",
            &one + &wb(0),
            &w(1) + &wb(0),
            None,
            Some(Pass),
            None,
        ),
        t("analytic-coanalytic-2", w(1), wb(1), None, Some(Fail), Some(Fail)),
        t("wrong-product", w(0), w(1), Some(w(1)), Some(Fail), Some(Pass)),
        t(
            "mixed-mixed",
            &w(0) + &wb(0),
            &w(1) + &wb(1),
            None,
            None,
            None,
        ),
        t(
            "constant",
            one.scale_real(2.0),
            &w(0) + &wb(1),
            None,
            Some(Pass),
            Some(Pass),
        ),
    ]
}
