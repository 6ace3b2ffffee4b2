//! Hardy spaces on the polydisc and the ball, isotypic projections, the
//! unitary `Γ_χ` onto the quotient Hardy space, orthonormal bases and
//! reproducing kernels.

use std::cell::RefCell;
use std::collections::HashSet;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{Character, FiniteGroup};
use crate::invariants::{
    generating_polynomial_for, hyperplanes, with_exponents, BasicMap, HyperplaneData,
    InvariantsError, ThetaRewriter,
};
use crate::poly::{
    act, compose, compose_mixed, exact_divide_with, exponents_of_degree, MixedPolynomial, Monomial,
    PolyError, PolynomialJson,
};
use crate::tolerance::{DEFAULT_EPS, DIV_EPS};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HardyError {
    #[error("expected a holomorphic polynomial")]
    NotHolomorphic,
    #[error("polynomial is not in the range of the isotypic projection (defect {defect:.3e})")]
    NotRelativeInvariant { defect: f64 },
    #[error("generating polynomial vanishes at the given point")]
    PointOnZeroSet,
    #[error("point does not lie strictly inside the domain")]
    PointOutsideDomain,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("basis was built without quotient polynomials")]
    MissingQuotientPolynomials,
    #[error(transparent)]
    Invariants(#[from] InvariantsError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DomainKind {
    Polydisc,
    Ball,
}

impl std::fmt::Display for DomainKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DomainKind::Polydisc => "polydisc",
            DomainKind::Ball => "ball",
        })
    }
}

impl std::str::FromStr for DomainKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "polydisc" => Ok(DomainKind::Polydisc),
            "ball" => Ok(DomainKind::Ball),
            other => Err(format!(
                "unknown model '{other}' (expected polydisc or ball)"
            )),
        }
    }
}

/// `H²(𝔻^d)` or `H²(𝔹_d)` realized on polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HardyModel {
    pub kind: DomainKind,
    pub dim: usize,
    pub eps: f64,
}

impl HardyModel {
    pub fn new(kind: DomainKind, dim: usize) -> Self {
        Self {
            kind,
            dim,
            eps: DEFAULT_EPS,
        }
    }

    pub fn polydisc(dim: usize) -> Self {
        Self::new(DomainKind::Polydisc, dim)
    }

    pub fn ball(dim: usize) -> Self {
        Self::new(DomainKind::Ball, dim)
    }

    /// `‖z^m‖² = ∫ |z^m|²` over the torus or the unit sphere.
    pub fn moment(&self, m: &[u32]) -> f64 {
        match self.kind {
            DomainKind::Polydisc => 1.0,
            DomainKind::Ball => {
                // m!(d−1)!/(|m|+d−1)! as a running product of ratios
                let d = self.dim as u32;
                let mut value = 1.0;
                let mut n = d - 1;
                for &mi in m {
                    for k in 1..=mi {
                        n += 1;
                        value *= k as f64 / n as f64;
                    }
                }
                value
            }
        }
    }

    fn check(&self, f: &MixedPolynomial) -> Result<(), HardyError> {
        if f.dim() != self.dim {
            return Err(HardyError::DimensionMismatch {
                expected: self.dim,
                got: f.dim(),
            });
        }
        Ok(())
    }

    /// `⟨f, g⟩` for holomorphic polynomials (diagonal in monomials).
    pub fn inner_product(
        &self,
        f: &MixedPolynomial,
        g: &MixedPolynomial,
    ) -> Result<Complex64, HardyError> {
        self.check(f)?;
        self.check(g)?;
        if !f.is_holomorphic() || !g.is_holomorphic() {
            return Err(HardyError::NotHolomorphic);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in f.terms() {
            let other = g.coeff(m);
            if other != Complex64::new(0.0, 0.0) {
                acc += c * other.conj() * self.moment(&m.holo);
            }
        }
        Ok(acc)
    }

    pub fn norm(&self, f: &MixedPolynomial) -> Result<f64, HardyError> {
        Ok(self.inner_product(f, f)?.re.max(0.0).sqrt())
    }

    /// Exact integral of a mixed polynomial against the normalized boundary measure.
    pub fn boundary_integral(&self, f: &MixedPolynomial) -> Result<Complex64, HardyError> {
        self.check(f)?;
        Ok(f.terms()
            .filter(|(m, _)| m.holo == m.anti)
            .map(|(m, c)| c * self.moment(&m.holo))
            .sum())
    }

    /// `∫ f·conj(g)` on the boundary for mixed polynomials.
    pub fn boundary_pairing(
        &self,
        f: &MixedPolynomial,
        g: &MixedPolynomial,
    ) -> Result<Complex64, HardyError> {
        self.check(g)?;
        self.boundary_integral(&(f * &g.conj()))
    }

    /// Szegő projection of a mixed polynomial onto `H²`.
    pub fn szego_project(&self, f: &MixedPolynomial) -> Result<MixedPolynomial, HardyError> {
        self.check(f)?;
        let mut out = MixedPolynomial::zero(self.dim);
        for (m, c) in f.terms() {
            if m.holo.iter().zip(&m.anti).any(|(a, b)| a < b) {
                continue;
            }
            let shifted: Vec<u32> = m.holo.iter().zip(&m.anti).map(|(a, b)| a - b).collect();
            let ratio = match self.kind {
                DomainKind::Polydisc => 1.0,
                DomainKind::Ball => self.moment(&m.holo) / self.moment(&shifted),
            };
            out.add_term(Monomial::holomorphic(shifted), c * ratio);
        }
        Ok(out)
    }

    /// Closed-form Szegő kernel `S_Ω(z, w)`.
    pub fn szego_kernel(&self, z: &[Complex64], w: &[Complex64]) -> Result<Complex64, HardyError> {
        self.check_point(z)?;
        self.check_point(w)?;
        let one = Complex64::new(1.0, 0.0);
        Ok(match self.kind {
            DomainKind::Polydisc => z
                .iter()
                .zip(w)
                .map(|(a, b)| one / (one - a * b.conj()))
                .product(),
            DomainKind::Ball => {
                let ip: Complex64 = z.iter().zip(w).map(|(a, b)| a * b.conj()).sum();
                (one - ip).powi(-(self.dim as i32))
            }
        })
    }

    /// Errors unless `z` lies strictly inside the domain.
    pub fn check_point(&self, z: &[Complex64]) -> Result<(), HardyError> {
        if z.len() != self.dim {
            return Err(HardyError::DimensionMismatch {
                expected: self.dim,
                got: z.len(),
            });
        }
        let inside = match self.kind {
            DomainKind::Polydisc => z.iter().all(|c| c.norm() < 1.0),
            DomainKind::Ball => z.iter().map(|c| c.norm_sqr()).sum::<f64>() < 1.0,
        };
        if inside {
            Ok(())
        } else {
            Err(HardyError::PointOutsideDomain)
        }
    }
}

/// `P_χ f = (1/|G|) Σ_σ χ(σ⁻¹)·σ⁻¹(f)`.
pub fn isotypic_project(
    group: &FiniteGroup,
    chi: &Character,
    f: &MixedPolynomial,
) -> Result<MixedPolynomial, HardyError> {
    let mut out = MixedPolynomial::zero(f.dim());
    // reindexed over τ = σ⁻¹
    for (t, elt) in group.elements().iter().enumerate() {
        let moved = act(elt, f)?;
        out += &moved.scale(chi.value(t));
    }
    Ok(out.scale_real(1.0 / group.order() as f64))
}

/// `f − Σ_χ P_χ f` over the given one-dimensional characters: the part of
/// `f` in the isotypic components of higher-dimensional irreducibles.
pub fn complement_projection(
    group: &FiniteGroup,
    characters: &[Character],
    f: &MixedPolynomial,
) -> Result<MixedPolynomial, HardyError> {
    let mut out = f.clone();
    for chi in characters {
        out = &out - &isotypic_project(group, chi, f)?;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisMode {
    /// Store each `e_m` as a polynomial in the quotient variables.
    Full,
    /// Store only the lifted vectors `Γ e_m`.
    LiftedOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisStrategy {
    /// Orbits for monomial groups, Gram–Schmidt otherwise.
    Auto,
    Orbits,
    GramSchmidt,
}

#[derive(Clone, Debug)]
pub struct BasisEntry {
    pub representative: Vec<u32>,
    pub degree: u32,
    /// `e_m` in the quotient variables.
    pub quotient: Option<MixedPolynomial>,
    /// `Γ e_m`, a unit vector in `H²(Ω)`.
    pub lift: MixedPolynomial,
}

#[derive(Clone, Debug)]
pub struct QuotientBasis {
    pub character: String,
    pub max_degree: u32,
    pub entries: Vec<BasisEntry>,
}

impl QuotientBasis {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lifts(&self) -> impl Iterator<Item = &MixedPolynomial> {
        self.entries.iter().map(|e| &e.lift)
    }
}

#[derive(Serialize)]
pub struct BasisEntryJson {
    pub representative: Vec<u32>,
    pub degree: u32,
    pub e_m: Option<PolynomialJson>,
    pub lift: PolynomialJson,
}

#[derive(Serialize)]
pub struct QuotientBasisJson {
    pub character: String,
    pub max_degree: u32,
    pub entries: Vec<BasisEntryJson>,
}

impl From<&QuotientBasis> for QuotientBasisJson {
    fn from(b: &QuotientBasis) -> Self {
        Self {
            character: b.character.clone(),
            max_degree: b.max_degree,
            entries: b
                .entries
                .iter()
                .map(|e| BasisEntryJson {
                    representative: e.representative.clone(),
                    degree: e.degree,
                    e_m: e.quotient.as_ref().map(PolynomialJson::from),
                    lift: PolynomialJson::from(&e.lift),
                })
                .collect(),
        }
    }
}

/// The quotient Hardy space `H²_χ(θ(Ω))` with everything needed to move
/// between it and the isotypic subspace `P_χ H²(Ω)`.
pub struct QuotientSpace {
    group: FiniteGroup,
    chi: Character,
    planes: HyperplaneData,
    ell: MixedPolynomial,
    basic: BasicMap,
    model: HardyModel,
    rewriter: RefCell<ThetaRewriter>,
}

impl QuotientSpace {
    pub fn new(
        group: FiniteGroup,
        chi: &Character,
        basic: BasicMap,
        model: HardyModel,
    ) -> Result<Self, HardyError> {
        if model.dim != group.dim() {
            return Err(HardyError::DimensionMismatch {
                expected: group.dim(),
                got: model.dim,
            });
        }
        let planes = hyperplanes(&group)?;
        let chi = with_exponents(&group, &planes, chi)?;
        let ell = generating_polynomial_for(&planes, &chi)?;
        let rewriter = RefCell::new(ThetaRewriter::new(&basic.map));
        Ok(Self {
            group,
            chi,
            planes,
            ell,
            basic,
            model,
            rewriter,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn character(&self) -> &Character {
        &self.chi
    }

    pub fn hyperplanes(&self) -> &HyperplaneData {
        &self.planes
    }

    pub fn generating_polynomial(&self) -> &MixedPolynomial {
        &self.ell
    }

    pub fn basic_map(&self) -> &BasicMap {
        &self.basic
    }

    pub fn model(&self) -> &HardyModel {
        &self.model
    }

    fn sqrt_order(&self) -> f64 {
        (self.group.order() as f64).sqrt()
    }

    pub fn project(&self, f: &MixedPolynomial) -> Result<MixedPolynomial, HardyError> {
        isotypic_project(&self.group, &self.chi, f)
    }

    /// `Γ f = |G|^{-1/2}·ℓ_χ·(f∘θ)` for holomorphic `f` in the quotient variables.
    pub fn gamma(&self, f: &MixedPolynomial) -> Result<MixedPolynomial, HardyError> {
        if !f.is_holomorphic() {
            return Err(HardyError::NotHolomorphic);
        }
        self.gamma_mixed(f)
    }

    /// `Γ` on boundary functions: `|G|^{-1/2}·ℓ_χ·u(θ, conj θ)`.
    pub fn gamma_mixed(&self, u: &MixedPolynomial) -> Result<MixedPolynomial, HardyError> {
        let composed = compose_mixed(u, &self.basic.map)?;
        Ok((&self.ell * &composed).scale_real(1.0 / self.sqrt_order()))
    }

    /// Distance of `g` from the range of `P_χ`.
    pub fn range_defect(&self, g: &MixedPolynomial) -> Result<f64, HardyError> {
        Ok(self.project(g)?.max_abs_diff(g))
    }

    /// `Γ⁻¹ g = |G|^{1/2}·rewrite(g / ℓ_χ)`.
    pub fn gamma_inverse(&self, g: &MixedPolynomial) -> Result<MixedPolynomial, HardyError> {
        if !g.is_holomorphic() {
            return Err(HardyError::NotHolomorphic);
        }
        let defect = self.range_defect(g)?;
        if defect > DIV_EPS * (1.0 + g.max_coeff()) {
            return Err(HardyError::NotRelativeInvariant { defect });
        }
        let quotient = exact_divide_with(g, &self.ell, DIV_EPS)?;
        let hat = self.rewriter.borrow_mut().rewrite(&quotient)?;
        Ok(hat.scale_real(self.sqrt_order()))
    }

    /// `⟨f, g⟩` in `H²_χ(θ(Ω))` by pulling back to the boundary with weight `|ℓ_χ|²/|G|`.
    pub fn quotient_inner_product(
        &self,
        f: &MixedPolynomial,
        g: &MixedPolynomial,
    ) -> Result<Complex64, HardyError> {
        let lf = &self.ell * &compose_mixed(f, &self.basic.map)?;
        let lg = &self.ell * &compose_mixed(g, &self.basic.map)?;
        Ok(self.model.boundary_pairing(&lf, &lg)? / self.group.order() as f64)
    }

    pub fn quotient_onb(&self, max_degree: u32) -> Result<QuotientBasis, HardyError> {
        self.quotient_onb_with(max_degree, BasisMode::Full, BasisStrategy::Auto)
    }

    /// Orthonormal basis of the quotient space up to lifted total degree `max_degree`.
    pub fn quotient_onb_with(
        &self,
        max_degree: u32,
        mode: BasisMode,
        strategy: BasisStrategy,
    ) -> Result<QuotientBasis, HardyError> {
        let use_orbits = match strategy {
            BasisStrategy::Auto => self.group.is_monomial(),
            BasisStrategy::Orbits => true,
            BasisStrategy::GramSchmidt => false,
        };
        let mut entries = Vec::new();
        for k in 0..=max_degree {
            let raw = if use_orbits {
                self.orbit_vectors(k)?
            } else {
                self.gram_schmidt_vectors(k)?
            };
            for (representative, v) in raw {
                let lift = self.normalize(&v)?;
                let quotient = match mode {
                    BasisMode::Full => Some(self.gamma_inverse(&lift)?),
                    BasisMode::LiftedOnly => None,
                };
                entries.push(BasisEntry {
                    representative,
                    degree: k,
                    quotient,
                    lift,
                });
            }
        }
        Ok(QuotientBasis {
            character: self.chi.name.clone(),
            max_degree,
            entries,
        })
    }

    fn normalize(&self, v: &MixedPolynomial) -> Result<MixedPolynomial, HardyError> {
        let norm = self.model.norm(v)?;
        let lead = v
            .leading_term()
            .map(|(_, c)| *c)
            .unwrap_or(Complex64::new(1.0, 0.0));
        let phase = lead.conj() / lead.norm();
        Ok(v.scale(phase / norm).prune(crate::tolerance::DROP_EPS))
    }

    fn orbit_vectors(&self, k: u32) -> Result<Vec<(Vec<u32>, MixedPolynomial)>, HardyError> {
        let d = self.group.dim();
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut out = Vec::new();
        // descending lex, so the first unseen member of an orbit is its lex-greatest
        for m in exponents_of_degree(d, k) {
            if seen.contains(&m) {
                continue;
            }
            let zm = MixedPolynomial::holo_monomial(&m, Complex64::new(1.0, 0.0));
            let mut v = MixedPolynomial::zero(d);
            for (t, elt) in self.group.elements().iter().enumerate() {
                let moved = act(elt, &zm)?;
                for (mono, _) in moved.terms() {
                    seen.insert(mono.holo.clone());
                }
                v += &moved.scale(self.chi.value(t));
            }
            let v = v
                .scale_real(1.0 / self.group.order() as f64)
                .prune(self.model.eps * 1e-3);
            if v.max_coeff() > self.model.eps {
                out.push((m, v));
            }
        }
        Ok(out)
    }

    fn gram_schmidt_vectors(&self, k: u32) -> Result<Vec<(Vec<u32>, MixedPolynomial)>, HardyError> {
        let d = self.group.dim();
        let mut out: Vec<(Vec<u32>, MixedPolynomial)> = Vec::new();
        let mut units: Vec<MixedPolynomial> = Vec::new();
        for m in exponents_of_degree(d, k) {
            let zm = MixedPolynomial::holo_monomial(&m, Complex64::new(1.0, 0.0));
            let v = self.project(&zm)?;
            let start = self.model.norm(&v)?;
            if start < self.model.eps {
                continue;
            }
            let mut r = v;
            for _ in 0..2 {
                for u in &units {
                    let c = self.model.inner_product(&r, u)?;
                    r = &r - &u.scale(c);
                }
            }
            let left = self.model.norm(&r)?;
            if left > 1e-6 * start {
                units.push(r.scale_real(1.0 / left));
                out.push((m, r));
            }
        }
        Ok(out)
    }

    /// `S^{sub}(z, w)`: reproducing kernel of `P_χ H²(Ω)`.
    pub fn subspace_kernel(
        &self,
        z: &[Complex64],
        w: &[Complex64],
    ) -> Result<Complex64, HardyError> {
        self.model.check_point(z)?;
        self.model.check_point(w)?;
        let mut acc = Complex64::new(0.0, 0.0);
        for (s, elt) in self.group.elements().iter().enumerate() {
            let inv = self.group.inverse(s);
            acc += self.chi.value(inv) * self.model.szego_kernel(&elt.apply(z), w)?;
        }
        Ok(acc / self.group.order() as f64)
    }

    fn ell_pair(&self, z: &[Complex64], w: &[Complex64]) -> Result<Complex64, HardyError> {
        let lz = self.ell.evaluate(z);
        let lw = self.ell.evaluate(w);
        if lz.norm() <= self.model.eps || lw.norm() <= self.model.eps {
            return Err(HardyError::PointOnZeroSet);
        }
        Ok(lz * lw.conj())
    }

    /// `S^{sub}(z, w) / (ℓ_χ(z)·conj ℓ_χ(w))`.
    pub fn subspace_kernel_with_prefactor(
        &self,
        z: &[Complex64],
        w: &[Complex64],
    ) -> Result<Complex64, HardyError> {
        let k = self.subspace_kernel(z, w)?;
        Ok(k / self.ell_pair(z, w)?)
    }

    /// `S_{χ,θ}(θ(z), θ(w))`, the reproducing kernel of `H²_χ(θ(Ω))`, from fiber points.
    pub fn quotient_kernel(
        &self,
        z: &[Complex64],
        w: &[Complex64],
    ) -> Result<Complex64, HardyError> {
        let k = self.subspace_kernel(z, w)?;
        Ok(k * self.group.order() as f64 / self.ell_pair(z, w)?)
    }

    /// `P_χ` applied to the Taylor polynomial of degree `degree` of `S_Ω(·, w)`.
    pub fn kernel_section(
        &self,
        w: &[Complex64],
        degree: u32,
    ) -> Result<MixedPolynomial, HardyError> {
        self.model.check_point(w)?;
        let d = self.model.dim;
        let mut section = MixedPolynomial::zero(d);
        for k in 0..=degree {
            for n in exponents_of_degree(d, k) {
                let c: Complex64 = n.iter().zip(w).map(|(&e, wi)| wi.conj().powu(e)).product();
                section.add_term(Monomial::holomorphic(n.clone()), c / self.model.moment(&n));
            }
        }
        self.project(&section)
    }

    /// `e_m(θ(z))` from the lift, `|G|^{1/2}·(Γ e_m)(z)/ℓ_χ(z)`.
    pub fn evaluate_basis_element(
        &self,
        entry: &BasisEntry,
        z: &[Complex64],
    ) -> Result<Complex64, HardyError> {
        let lz = self.ell.evaluate(z);
        if lz.norm() <= self.model.eps {
            return Err(HardyError::PointOnZeroSet);
        }
        Ok(entry.lift.evaluate(z) * self.sqrt_order() / lz)
    }

    /// Truncated series `Σ_m (Γe_m)(z)·conj (Γe_m)(w)` for `S^{sub}`.
    pub fn subspace_kernel_series(
        &self,
        basis: &QuotientBasis,
        z: &[Complex64],
        w: &[Complex64],
    ) -> Complex64 {
        basis
            .lifts()
            .map(|l| l.evaluate(z) * l.evaluate(w).conj())
            .sum()
    }

    /// Truncated series `Σ_m e_m(θ(z))·conj e_m(θ(w))` for `S_{χ,θ}`.
    pub fn quotient_kernel_series(
        &self,
        basis: &QuotientBasis,
        z: &[Complex64],
        w: &[Complex64],
    ) -> Result<Complex64, HardyError> {
        let mut acc = Complex64::new(0.0, 0.0);
        for e in &basis.entries {
            acc += self.evaluate_basis_element(e, z)? * self.evaluate_basis_element(e, w)?.conj();
        }
        Ok(acc)
    }

    /// Same series with each `e_m` evaluated as a polynomial at `θ(z)`.
    pub fn quotient_kernel_series_in_w(
        &self,
        basis: &QuotientBasis,
        z: &[Complex64],
        w: &[Complex64],
    ) -> Result<Complex64, HardyError> {
        let p = self.basic.map.evaluate(z);
        let q = self.basic.map.evaluate(w);
        let mut acc = Complex64::new(0.0, 0.0);
        for e in &basis.entries {
            let poly = e
                .quotient
                .as_ref()
                .ok_or(HardyError::MissingQuotientPolynomials)?;
            acc += poly.evaluate(&p) * poly.evaluate(&q).conj();
        }
        Ok(acc)
    }

    /// Quotient-side projection of a boundary polynomial `u(w, conj w)` onto
    /// `H²_χ(θ(Ω))`, by expansion in the orthonormal basis with the pullback
    /// inner product.
    pub fn quotient_project(&self, u: &MixedPolynomial) -> Result<MixedPolynomial, HardyError> {
        let lifted = self.gamma_mixed(u)?;
        let basis = self.quotient_onb(lifted.holo_degree())?;
        let mut out = MixedPolynomial::zero(self.basic.map.len());
        for e in &basis.entries {
            let c = self.model.boundary_pairing(&lifted, &e.lift)?;
            let q = e.quotient.as_ref().expect("full basis");
            out += &q.scale(c);
        }
        Ok(out.prune(crate::tolerance::DROP_EPS))
    }

    /// `Γ⁻¹ P̃ Γ u`, the same projection computed on the ambient side.
    pub fn quotient_project_via_gamma(
        &self,
        u: &MixedPolynomial,
    ) -> Result<MixedPolynomial, HardyError> {
        let lifted = self.gamma_mixed(u)?;
        let projected = self.model.szego_project(&lifted)?;
        self.gamma_inverse(&projected)
    }

    /// `f∘θ` for holomorphic `f` in the quotient variables.
    pub fn lift_function(&self, f: &MixedPolynomial) -> Result<MixedPolynomial, HardyError> {
        Ok(compose(f, &self.basic.map)?)
    }
}
