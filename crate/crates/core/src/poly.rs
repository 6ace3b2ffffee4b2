//! Sparse polynomials in `z` and `conj(z)` with complex coefficients.
//!
//! A term is `c · z^a · conj(z)^b`; holomorphic polynomials have `b = 0`.
//! Terms are kept in a `BTreeMap` ordered by total degree and then
//! lexicographically, so the last entry of a holomorphic polynomial is its
//! graded-lex leading term.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use itertools::Itertools;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::GroupElement;
use crate::tolerance::{DIV_EPS, DROP_EPS};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("polynomial is not holomorphic")]
    NotHolomorphic,
    #[error("not divisible: remainder {remainder:.3e} exceeds tolerance")]
    NotDivisible { remainder: f64 },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("component {0} of the polynomial map is not homogeneous")]
    NotHomogeneous(usize),
    #[error("invalid polynomial: {0}")]
    Invalid(String),
}

/// Exponent pair `(a, b)` of `z^a conj(z)^b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub holo: Vec<u32>,
    pub anti: Vec<u32>,
}

impl Monomial {
    pub fn new(holo: Vec<u32>, anti: Vec<u32>) -> Self {
        debug_assert_eq!(holo.len(), anti.len());
        Self { holo, anti }
    }

    pub fn holomorphic(holo: Vec<u32>) -> Self {
        let d = holo.len();
        Self {
            holo,
            anti: vec![0; d],
        }
    }

    pub fn constant(d: usize) -> Self {
        Self {
            holo: vec![0; d],
            anti: vec![0; d],
        }
    }

    pub fn holo_degree(&self) -> u32 {
        self.holo.iter().sum()
    }

    pub fn anti_degree(&self) -> u32 {
        self.anti.iter().sum()
    }

    pub fn degree(&self) -> u32 {
        self.holo_degree() + self.anti_degree()
    }

    pub fn is_holomorphic(&self) -> bool {
        self.anti.iter().all(|&b| b == 0)
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial {
            holo: self
                .holo
                .iter()
                .zip(&other.holo)
                .map(|(a, b)| a + b)
                .collect(),
            anti: self
                .anti
                .iter()
                .zip(&other.anti)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `self / other` when every exponent of `other` is at most that of `self`.
    fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let sub = |x: &[u32], y: &[u32]| -> Option<Vec<u32>> {
            x.iter().zip(y).map(|(a, b)| a.checked_sub(*b)).collect()
        };
        Some(Monomial {
            holo: sub(&self.holo, &other.holo)?,
            anti: sub(&self.anti, &other.anti)?,
        })
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.holo.cmp(&other.holo))
            .then_with(|| self.anti.cmp(&other.anti))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MixedPolynomial {
    dim: usize,
    terms: BTreeMap<Monomial, Complex64>,
}

impl MixedPolynomial {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Complex64) -> Self {
        let mut p = Self::zero(dim);
        p.add_term(Monomial::constant(dim), c);
        p
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Complex64::new(1.0, 0.0))
    }

    /// The coordinate `z_i`.
    pub fn variable(dim: usize, i: usize) -> Self {
        let mut holo = vec![0; dim];
        holo[i] = 1;
        Self::monomial(Monomial::holomorphic(holo), Complex64::new(1.0, 0.0))
    }

    /// The conjugate coordinate `conj(z_i)`.
    pub fn conj_variable(dim: usize, i: usize) -> Self {
        let mut anti = vec![0; dim];
        anti[i] = 1;
        Self::monomial(Monomial::new(vec![0; dim], anti), Complex64::new(1.0, 0.0))
    }

    pub fn monomial(m: Monomial, c: Complex64) -> Self {
        let mut p = Self::zero(m.holo.len());
        p.add_term(m, c);
        p
    }

    /// Holomorphic monomial `c·z^a`.
    pub fn holo_monomial(a: &[u32], c: Complex64) -> Self {
        Self::monomial(Monomial::holomorphic(a.to_vec()), c)
    }

    pub fn from_terms<I>(dim: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Complex64)>,
    {
        let mut p = Self::zero(dim);
        for (m, c) in terms {
            assert_eq!(m.holo.len(), dim, "monomial dimension mismatch");
            p.add_term(m, c);
        }
        p
    }

    /// Linear form `Σ coeffs[i]·z_i`.
    pub fn linear_form(coeffs: &[Complex64]) -> Self {
        let d = coeffs.len();
        Self::from_terms(
            d,
            coeffs.iter().enumerate().map(|(i, &c)| {
                let mut a = vec![0; d];
                a[i] = 1;
                (Monomial::holomorphic(a), c)
            }),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Complex64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Complex64 {
        self.terms.get(m).copied().unwrap_or_default()
    }

    pub fn holo_coeff(&self, a: &[u32]) -> Complex64 {
        self.coeff(&Monomial::holomorphic(a.to_vec()))
    }

    /// Add `c·m`, dropping the term if it cancels below the drop threshold.
    pub fn add_term(&mut self, m: Monomial, c: Complex64) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                if c.norm() >= DROP_EPS {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = *o.get() + c;
                if s.norm() < DROP_EPS {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(Monomial::is_holomorphic)
    }

    /// Maximal total degree, `0` for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn holo_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::holo_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn anti_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::anti_degree)
            .max()
            .unwrap_or(0)
    }

    /// Largest `|a| − |b|` over the terms; bounds the degree of the holomorphic
    /// projection of `self · f` by `deg f + shift`.
    pub fn max_degree_shift(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| m.holo_degree() as i64 - m.anti_degree() as i64)
            .max()
            .unwrap_or(0)
    }

    /// Common total degree when all terms share it.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn max_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Sum of coefficient moduli; bounds the sup-norm on the torus and sphere.
    pub fn coeff_l1(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    /// `max |self_m − other_m|` over all monomials.
    pub fn max_abs_diff(&self, other: &MixedPolynomial) -> f64 {
        let mut worst = 0.0f64;
        for (m, c) in &self.terms {
            worst = worst.max((c - other.coeff(m)).norm());
        }
        for (m, c) in &other.terms {
            if !self.terms.contains_key(m) {
                worst = worst.max(c.norm());
            }
        }
        worst
    }

    pub fn approx_eq(&self, other: &MixedPolynomial, tol: f64) -> bool {
        self.max_abs_diff(other) < tol
    }

    /// Leading term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Complex64)> {
        self.terms.iter().next_back()
    }

    /// Split by total degree.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, MixedPolynomial> {
        let mut out: BTreeMap<u32, MixedPolynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| MixedPolynomial::zero(self.dim))
                .terms
                .insert(m.clone(), *c);
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> MixedPolynomial {
        let mut p = MixedPolynomial::zero(self.dim);
        for (m, v) in &self.terms {
            p.add_term(m.clone(), v * c);
        }
        p
    }

    pub fn scale_real(&self, c: f64) -> MixedPolynomial {
        self.scale(Complex64::new(c, 0.0))
    }

    /// Pointwise complex conjugate: `conj(c z^a conj(z)^b) = conj(c) z^b conj(z)^a`.
    pub fn conj(&self) -> MixedPolynomial {
        MixedPolynomial::from_terms(
            self.dim,
            self.terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.anti.clone(), m.holo.clone()), c.conj())),
        )
    }

    /// Drop terms with modulus at most `tol`.
    pub fn prune(&self, tol: f64) -> MixedPolynomial {
        MixedPolynomial {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| c.norm() > tol)
                .map(|(m, c)| (m.clone(), *c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MixedPolynomial {
        let mut acc = MixedPolynomial::one(self.dim);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative in the holomorphic variable `z_i`.
    pub fn partial(&self, i: usize) -> MixedPolynomial {
        let mut p = MixedPolynomial::zero(self.dim);
        for (m, c) in &self.terms {
            let a = m.holo[i];
            if a == 0 {
                continue;
            }
            let mut holo = m.holo.clone();
            holo[i] -= 1;
            p.add_term(Monomial::new(holo, m.anti.clone()), c * a as f64);
        }
        p
    }

    /// Value at `z`, substituting `conj(z)` for the antiholomorphic variables.
    pub fn evaluate(&self, z: &[Complex64]) -> Complex64 {
        assert_eq!(z.len(), self.dim, "point dimension mismatch");
        let zc: Vec<Complex64> = z.iter().map(|x| x.conj()).collect();
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = *c;
                for i in 0..self.dim {
                    if m.holo[i] > 0 {
                        v *= z[i].powu(m.holo[i]);
                    }
                    if m.anti[i] > 0 {
                        v *= zc[i].powu(m.anti[i]);
                    }
                }
                v
            })
            .sum()
    }

    fn check_dim(&self, other: &MixedPolynomial) -> Result<(), PolyError> {
        if self.dim != other.dim {
            return Err(PolyError::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(())
    }
}

impl AddAssign<&MixedPolynomial> for MixedPolynomial {
    fn add_assign(&mut self, rhs: &MixedPolynomial) {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), *c);
        }
    }
}

impl Add for &MixedPolynomial {
    type Output = MixedPolynomial;
    fn add(self, rhs: &MixedPolynomial) -> MixedPolynomial {
        let mut p = self.clone();
        p += rhs;
        p
    }
}

impl Add for MixedPolynomial {
    type Output = MixedPolynomial;
    fn add(mut self, rhs: MixedPolynomial) -> MixedPolynomial {
        self += &rhs;
        self
    }
}

impl Sub for &MixedPolynomial {
    type Output = MixedPolynomial;
    fn sub(self, rhs: &MixedPolynomial) -> MixedPolynomial {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), -c);
        }
        p
    }
}

impl Sub for MixedPolynomial {
    type Output = MixedPolynomial;
    fn sub(self, rhs: MixedPolynomial) -> MixedPolynomial {
        &self - &rhs
    }
}

impl Neg for &MixedPolynomial {
    type Output = MixedPolynomial;
    fn neg(self) -> MixedPolynomial {
        self.scale_real(-1.0)
    }
}

impl Mul for &MixedPolynomial {
    type Output = MixedPolynomial;
    fn mul(self, rhs: &MixedPolynomial) -> MixedPolynomial {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut p = MixedPolynomial::zero(self.dim);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                p.add_term(ma.times(mb), ca * cb);
            }
        }
        p
    }
}

impl Mul for MixedPolynomial {
    type Output = MixedPolynomial;
    fn mul(self, rhs: MixedPolynomial) -> MixedPolynomial {
        &self * &rhs
    }
}

impl Mul<Complex64> for &MixedPolynomial {
    type Output = MixedPolynomial;
    fn mul(self, rhs: Complex64) -> MixedPolynomial {
        self.scale(rhs)
    }
}

/// Cache of powers `base^k`, grown on demand.
struct PowerCache {
    powers: Vec<MixedPolynomial>,
}

impl PowerCache {
    fn new(base: MixedPolynomial) -> Self {
        let one = MixedPolynomial::one(base.dim);
        Self {
            powers: vec![one, base],
        }
    }

    fn get(&mut self, k: u32) -> &MixedPolynomial {
        let k = k as usize;
        while self.powers.len() <= k {
            let next = &self.powers[self.powers.len() - 1] * &self.powers[1];
            self.powers.push(next);
        }
        &self.powers[k]
    }
}

/// Substitute polynomials for every holomorphic and antiholomorphic variable.
///
/// `holo[i]` replaces `z_i` and `anti[i]` replaces `conj(z_i)`; all
/// replacements must live in one common target dimension.
pub fn substitute(
    f: &MixedPolynomial,
    holo: &[MixedPolynomial],
    anti: &[MixedPolynomial],
) -> MixedPolynomial {
    let target = holo
        .first()
        .or(anti.first())
        .map(|p| p.dim)
        .unwrap_or(f.dim);
    let mut holo_cache: Vec<PowerCache> = holo.iter().cloned().map(PowerCache::new).collect();
    let mut anti_cache: Vec<PowerCache> = anti.iter().cloned().map(PowerCache::new).collect();
    let mut out = MixedPolynomial::zero(target);
    for (m, c) in &f.terms {
        let mut term = MixedPolynomial::constant(target, *c);
        for i in 0..f.dim {
            if m.holo[i] > 0 {
                term = &term * holo_cache[i].get(m.holo[i]);
            }
            if m.anti[i] > 0 {
                term = &term * anti_cache[i].get(m.anti[i]);
            }
        }
        out += &term;
    }
    out
}

/// Group action `σ(f)(z) = f(σ⁻¹·z)`, extended to `conj(z)` through the
/// conjugated matrix.
pub fn act(sigma: &GroupElement, f: &MixedPolynomial) -> Result<MixedPolynomial, PolyError> {
    if sigma.dim() != f.dim {
        return Err(PolyError::DimensionMismatch {
            expected: f.dim,
            got: sigma.dim(),
        });
    }
    let d = f.dim;
    if let Some((perm, scale)) = sigma.inverse_monomial() {
        let mut out = MixedPolynomial::zero(d);
        for (m, c) in &f.terms {
            let mut holo = vec![0u32; d];
            let mut anti = vec![0u32; d];
            let mut coeff = *c;
            for i in 0..d {
                if m.holo[i] > 0 {
                    holo[perm[i]] += m.holo[i];
                    coeff *= scale[i].powu(m.holo[i]);
                }
                if m.anti[i] > 0 {
                    anti[perm[i]] += m.anti[i];
                    coeff *= scale[i].conj().powu(m.anti[i]);
                }
            }
            out.add_term(Monomial::new(holo, anti), coeff);
        }
        return Ok(out);
    }
    let inv = sigma.inverse();
    let holo: Vec<MixedPolynomial> = (0..d)
        .map(|i| {
            let row: Vec<Complex64> = (0..d).map(|j| inv[(i, j)]).collect();
            MixedPolynomial::linear_form(&row)
        })
        .collect();
    let anti: Vec<MixedPolynomial> = holo.iter().map(MixedPolynomial::conj).collect();
    Ok(substitute(f, &holo, &anti))
}

/// A polynomial map `θ = (θ_1, …, θ_d)` with homogeneous holomorphic components.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialMap {
    components: Vec<MixedPolynomial>,
    degrees: Vec<u32>,
}

impl PolynomialMap {
    pub fn new(components: Vec<MixedPolynomial>) -> Result<Self, PolyError> {
        let d = components.first().map(|c| c.dim).unwrap_or(0);
        let mut degrees = Vec::with_capacity(components.len());
        for (i, c) in components.iter().enumerate() {
            if c.dim != d {
                return Err(PolyError::DimensionMismatch {
                    expected: d,
                    got: c.dim,
                });
            }
            if !c.is_holomorphic() {
                return Err(PolyError::NotHolomorphic);
            }
            match c.homogeneous_degree() {
                Some(k) if k > 0 => degrees.push(k),
                _ => return Err(PolyError::NotHomogeneous(i)),
            }
        }
        Ok(Self {
            components,
            degrees,
        })
    }

    pub fn components(&self) -> &[MixedPolynomial] {
        &self.components
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Number of components (quotient dimension).
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Dimension of the source space.
    pub fn source_dim(&self) -> usize {
        self.components.first().map(|c| c.dim).unwrap_or(0)
    }

    pub fn evaluate(&self, z: &[Complex64]) -> Vec<Complex64> {
        self.components.iter().map(|c| c.evaluate(z)).collect()
    }
}

/// `f ∘ θ` for holomorphic `f` in the quotient variables.
pub fn compose(f: &MixedPolynomial, theta: &PolynomialMap) -> Result<MixedPolynomial, PolyError> {
    if !f.is_holomorphic() {
        return Err(PolyError::NotHolomorphic);
    }
    compose_mixed(f, theta)
}

/// `u(θ, conj θ)` for a mixed polynomial `u` in `w` and `conj(w)`.
pub fn compose_mixed(
    u: &MixedPolynomial,
    theta: &PolynomialMap,
) -> Result<MixedPolynomial, PolyError> {
    if u.dim != theta.len() {
        return Err(PolyError::DimensionMismatch {
            expected: theta.len(),
            got: u.dim,
        });
    }
    let conj: Vec<MixedPolynomial> = theta.components.iter().map(MixedPolynomial::conj).collect();
    Ok(substitute(u, &theta.components, &conj))
}

/// Exact division `f / g` of holomorphic polynomials with the default tolerance.
pub fn exact_divide(
    f: &MixedPolynomial,
    g: &MixedPolynomial,
) -> Result<MixedPolynomial, PolyError> {
    exact_divide_with(f, g, DIV_EPS)
}

/// Multivariate division by the graded-lex leading term of `g`; the
/// remainder must vanish up to `tol·(1 + max|f|)`.
pub fn exact_divide_with(
    f: &MixedPolynomial,
    g: &MixedPolynomial,
    tol: f64,
) -> Result<MixedPolynomial, PolyError> {
    f.check_dim(g)?;
    if !f.is_holomorphic() || !g.is_holomorphic() {
        return Err(PolyError::NotHolomorphic);
    }
    let (lead_m, lead_c) = match g.leading_term() {
        Some((m, c)) => (m.clone(), *c),
        None => return Err(PolyError::DivisionByZero),
    };
    let scale = 1.0 + f.max_coeff();
    let cleanup = 1e-14 * scale;
    let mut rem = f.clone();
    let mut quotient = MixedPolynomial::zero(f.dim);
    let mut leftover = 0.0f64;
    while let Some((m, c)) = rem.terms.iter().next_back().map(|(m, c)| (m.clone(), *c)) {
        rem.terms.remove(&m);
        if c.norm() <= cleanup {
            continue;
        }
        match m.checked_div(&lead_m) {
            Some(qm) => {
                let qc = c / lead_c;
                quotient.add_term(qm.clone(), qc);
                for (gm, gc) in &g.terms {
                    if *gm == lead_m {
                        continue;
                    }
                    rem.add_term(gm.times(&qm), -qc * gc);
                }
            }
            None => leftover = leftover.max(c.norm()),
        }
    }
    if leftover > tol * scale {
        return Err(PolyError::NotDivisible {
            remainder: leftover,
        });
    }
    Ok(quotient)
}

/// Determinant of the holomorphic Jacobian matrix `∂θ_i/∂z_j`.
pub fn jacobian_det(theta: &PolynomialMap) -> MixedPolynomial {
    let d = theta.source_dim();
    let n = theta.len();
    let partials: Vec<Vec<MixedPolynomial>> = theta
        .components
        .iter()
        .map(|c| (0..d).map(|j| c.partial(j)).collect())
        .collect();
    let mut det = MixedPolynomial::zero(d);
    if n != d {
        return det;
    }
    for perm in (0..d).permutations(d) {
        let inversions = (0..d)
            .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
            .filter(|&(i, j)| perm[i] > perm[j])
            .count();
        let mut term = MixedPolynomial::one(d);
        for (i, &j) in perm.iter().enumerate() {
            term = &term * &partials[i][j];
            if term.is_zero() {
                break;
            }
        }
        if inversions % 2 == 1 {
            term = -&term;
        }
        det += &term;
    }
    det
}

/// All exponent tuples in `d` variables with total degree exactly `k`,
/// in descending lex order.
pub fn exponents_of_degree(d: usize, k: u32) -> Vec<Vec<u32>> {
    fn rec(d: usize, k: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == d {
            prefix.push(k);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=k).rev() {
            prefix.push(a);
            rec(d, k - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if d == 0 {
        if k == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(d, k, &mut Vec::with_capacity(d), &mut out);
    out
}

/// Serialized form: `{"d": int, "terms": [{"a": [..], "b": [..], "c": [re, im]}]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub d: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub a: Vec<u32>,
    #[serde(default)]
    pub b: Vec<u32>,
    pub c: [f64; 2],
}

impl From<&MixedPolynomial> for PolynomialJson {
    fn from(p: &MixedPolynomial) -> Self {
        PolynomialJson {
            d: p.dim,
            terms: p
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermJson {
                    a: m.holo.clone(),
                    b: m.anti.clone(),
                    c: [clean(c.re), clean(c.im)],
                })
                .collect(),
        }
    }
}

impl TryFrom<&PolynomialJson> for MixedPolynomial {
    type Error = PolyError;

    fn try_from(j: &PolynomialJson) -> Result<Self, PolyError> {
        let mut p = MixedPolynomial::zero(j.d);
        for t in &j.terms {
            let b = if t.b.is_empty() {
                vec![0; j.d]
            } else {
                t.b.clone()
            };
            if t.a.len() != j.d || b.len() != j.d {
                return Err(PolyError::Invalid(format!(
                    "term exponents must have length {}",
                    j.d
                )));
            }
            p.add_term(
                Monomial::new(t.a.clone(), b),
                Complex64::new(t.c[0], t.c[1]),
            );
        }
        Ok(p)
    }
}

/// Round away floating-point noise for stable serialized output.
pub fn clean(x: f64) -> f64 {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{named_family, Family};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn z(d: usize, i: usize) -> MixedPolynomial {
        MixedPolynomial::variable(d, i)
    }

    #[test]
    fn act_by_swap_and_identity() {
        let g = named_family(&Family::Symmetric { d: 2 }).unwrap();
        let f = z(2, 0);
        assert!(act(g.element(1), &f).unwrap().approx_eq(&z(2, 1), 1e-12));
        let p = &(&z(2, 0) * &z(2, 0)) + &MixedPolynomial::conj_variable(2, 1);
        assert!(act(g.element(0), &p).unwrap().approx_eq(&p, 1e-12));
    }

    #[test]
    fn act_by_cyclic_generator() {
        let g = named_family(&Family::Cyclic { orders: vec![3] }).unwrap();
        let zeta = crate::group::root_of_unity(3, 1);
        let idx = g
            .index_of(&crate::group::CMatrix::from_element(1, 1, zeta))
            .unwrap();
        let f = z(1, 0).pow(2);
        let expected = f.scale(zeta.powi(-2));
        assert!(act(g.element(idx), &f).unwrap().approx_eq(&expected, 1e-12));
    }

    #[test]
    fn act_dimension_mismatch() {
        let g = named_family(&Family::Symmetric { d: 2 }).unwrap();
        assert!(matches!(
            act(g.element(1), &z(3, 0)),
            Err(PolyError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn compose_examples() {
        let s = &z(2, 0) + &z(2, 1);
        let p = &z(2, 0) * &z(2, 1);
        let theta = PolynomialMap::new(vec![s.clone(), p]).unwrap();
        assert!(compose(&z(2, 0), &theta).unwrap().approx_eq(&s, 1e-12));
        let f = &z(2, 0).pow(2) - &z(2, 1).scale_real(2.0);
        let expected = &z(2, 0).pow(2) + &z(2, 1).pow(2);
        assert!(compose(&f, &theta).unwrap().approx_eq(&expected, 1e-12));
        let one = MixedPolynomial::one(2);
        assert!(compose(&one, &theta).unwrap().approx_eq(&one, 1e-12));
        assert_eq!(
            compose(&MixedPolynomial::conj_variable(2, 0), &theta).unwrap_err(),
            PolyError::NotHolomorphic
        );
    }

    #[test]
    fn exact_divide_examples() {
        let z1 = z(2, 0);
        let z2 = z(2, 1);
        let diff = &z1 - &z2;
        let f = &z1.pow(2) - &z2.pow(2);
        assert!(exact_divide(&f, &diff)
            .unwrap()
            .approx_eq(&(&z1 + &z2), 1e-12));
        let g = &diff * &(&z1 * &z2);
        assert!(exact_divide(&g, &diff)
            .unwrap()
            .approx_eq(&(&z1 * &z2), 1e-12));
        assert!(matches!(
            exact_divide(&z1, &diff),
            Err(PolyError::NotDivisible { .. })
        ));
        assert_eq!(
            exact_divide(&z1, &MixedPolynomial::zero(2)).unwrap_err(),
            PolyError::DivisionByZero
        );
    }

    #[test]
    fn vandermonde_divided_by_one_factor() {
        let v = |i: usize, j: usize| &z(3, i) - &z(3, j);
        let vander = &(&v(0, 1) * &v(0, 2)) * &v(1, 2);
        let q = exact_divide(&vander, &v(0, 1)).unwrap();
        assert!(q.approx_eq(&(&v(0, 2) * &v(1, 2)), 1e-12));
    }

    #[test]
    fn jacobian_examples() {
        let z1 = z(2, 0);
        let z2 = z(2, 1);
        let theta = PolynomialMap::new(vec![&z1 + &z2, &z1 * &z2]).unwrap();
        assert!(jacobian_det(&theta).approx_eq(&(&z1 - &z2), 1e-12));

        let theta = PolynomialMap::new(vec![z(1, 0).pow(5)]).unwrap();
        assert!(jacobian_det(&theta).approx_eq(&z(1, 0).pow(4).scale_real(5.0), 1e-12));

        let theta =
            PolynomialMap::new(vec![&z1.pow(2) + &z2.pow(2), &z1.pow(2) * &z2.pow(2)]).unwrap();
        let expected = (&(&z1 * &z2) * &(&z1.pow(2) - &z2.pow(2))).scale_real(4.0);
        assert!(jacobian_det(&theta).approx_eq(&expected, 1e-12));
    }

    #[test]
    fn evaluate_examples() {
        let p = &z(1, 0) * &MixedPolynomial::conj_variable(1, 0);
        assert!((p.evaluate(&[c(0.5)]) - 0.25).norm() < 1e-15);
        let q = &z(2, 0) - &z(2, 1);
        assert!(q.evaluate(&[c(1.0), c(1.0)]).norm() < 1e-15);
        let s = &z(2, 0) + &z(2, 1);
        let v = s.evaluate(&[c(0.3), Complex64::new(0.0, 0.4)]);
        assert!((v - Complex64::new(0.3, 0.4)).norm() < 1e-15);
    }

    #[test]
    fn non_homogeneous_map_rejected() {
        let f = &z(2, 0) + &MixedPolynomial::one(2);
        assert_eq!(
            PolynomialMap::new(vec![f, z(2, 1)]).unwrap_err(),
            PolyError::NotHomogeneous(0)
        );
    }

    #[test]
    fn exponent_enumeration() {
        let e = exponents_of_degree(2, 2);
        assert_eq!(e, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(exponents_of_degree(3, 4).len(), 15);
    }

    #[test]
    fn json_roundtrip() {
        let p = &(&z(2, 0) * &MixedPolynomial::conj_variable(2, 1)) + &MixedPolynomial::one(2);
        let j = PolynomialJson::from(&p);
        let text = serde_json::to_string(&j).unwrap();
        let back: PolynomialJson = serde_json::from_str(&text).unwrap();
        assert_eq!(MixedPolynomial::try_from(&back).unwrap(), p);
    }
}
