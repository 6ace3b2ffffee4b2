//! Reflecting hyperplanes, relative invariants and basic polynomial maps.

use std::collections::{BTreeMap, HashMap};

use nalgebra::{DMatrix, DVector, SVD};
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::group::{is_pseudoreflection_group, pseudoreflections, Character, Family, FiniteGroup};
use crate::poly::{
    act, compose, jacobian_det, MixedPolynomial, Monomial, PolyError, PolynomialMap,
};
use crate::tolerance::DIV_EPS;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InvariantsError {
    #[error("group is not generated by pseudoreflections")]
    NotReflectionGroup,
    #[error("no exponent solves χ(a_{hyperplane}) = det(a_{hyperplane})^c; character is not multiplicative")]
    NoExponent { hyperplane: usize },
    #[error("character has no exponent tuple; compute it with character_exponents first")]
    MissingExponents,
    #[error("invalid basic polynomial map: {0}")]
    InvalidHsop(String),
    #[error("Jacobian does not factor over the hyperplanes (residual {residual:.3e})")]
    FactorizationFails { residual: f64 },
    #[error("polynomial is not G-invariant")]
    NotInvariant,
    #[error("rewriting in basic-map coordinates failed (residual {residual:.3e})")]
    SolveFailed { residual: f64 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Reflecting hyperplanes of a pseudoreflection group.
#[derive(Clone, Debug, Serialize)]
pub struct HyperplaneData {
    /// Canonically scaled defining forms `ℓ_i` (first nonzero coefficient 1).
    #[serde(skip)]
    pub linear_forms: Vec<MixedPolynomial>,
    pub coefficients: Vec<Vec<Complex64>>,
    /// Orders `m_i` of the pointwise stabilizers.
    pub orders: Vec<u32>,
    /// Generator `a_i` of each stabilizer, with `det(a_i) = e^{2πi/m_i}`.
    pub generators: Vec<usize>,
    /// Pseudoreflections fixing each hyperplane.
    pub members: Vec<Vec<usize>>,
}

impl HyperplaneData {
    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }
}

fn canonical_row(row: &[Complex64], eps: f64) -> Vec<Complex64> {
    let pivot = row
        .iter()
        .copied()
        .find(|c| c.norm() > eps)
        .expect("nonzero row");
    row.iter()
        .map(|c| {
            let v = c / pivot;
            Complex64::new(
                if v.re.abs() < 1e-14 { 0.0 } else { v.re },
                if v.im.abs() < 1e-14 { 0.0 } else { v.im },
            )
        })
        .collect()
}

/// Group the pseudoreflections by the hyperplane they fix.
pub fn hyperplanes(group: &FiniteGroup) -> Result<HyperplaneData, InvariantsError> {
    if !is_pseudoreflection_group(group) {
        return Err(InvariantsError::NotReflectionGroup);
    }
    let d = group.dim();
    let eps = group.eps();
    let mut forms: Vec<(Vec<Complex64>, Vec<usize>)> = Vec::new();
    for s in pseudoreflections(group) {
        let m = group.element(s).matrix();
        // I − σ has rank one; its largest row spans the normal functional
        let row = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let id = if i == j { 1.0 } else { 0.0 };
                        Complex64::new(id, 0.0) - m[(i, j)]
                    })
                    .collect::<Vec<_>>()
            })
            .max_by(|a, b| {
                let na: f64 = a.iter().map(|c| c.norm_sqr()).sum();
                let nb: f64 = b.iter().map(|c| c.norm_sqr()).sum();
                na.total_cmp(&nb)
            })
            .expect("dimension at least one");
        let canon = canonical_row(&row, eps);
        match forms.iter_mut().find(|(f, _)| {
            f.iter()
                .zip(&canon)
                .all(|(a, b)| (a - b).norm() < 1e3 * eps)
        }) {
            Some((_, members)) => members.push(s),
            None => forms.push((canon, vec![s])),
        }
    }

    let key = |coeffs: &Vec<Complex64>| {
        let support: Vec<usize> = (0..coeffs.len())
            .filter(|&i| coeffs[i].norm() > eps)
            .collect();
        let values: Vec<(i64, i64)> = coeffs
            .iter()
            .map(|c| (-(c.re * 1e6).round() as i64, -(c.im * 1e6).round() as i64))
            .collect();
        (support.len(), support, values)
    };
    forms.sort_by_key(|(c, _)| key(c));

    let mut data = HyperplaneData {
        linear_forms: Vec::new(),
        coefficients: Vec::new(),
        orders: Vec::new(),
        generators: Vec::new(),
        members: Vec::new(),
    };
    for (coeffs, members) in forms {
        let order = members.len() as u32 + 1;
        let target = crate::group::root_of_unity(order, 1);
        let generator = members
            .iter()
            .copied()
            .find(|&s| (group.element(s).det() - target).norm() < 1e3 * eps)
            .ok_or(InvariantsError::NotReflectionGroup)?;
        data.linear_forms
            .push(MixedPolynomial::linear_form(&coeffs));
        data.coefficients.push(coeffs);
        data.orders.push(order);
        data.generators.push(generator);
        data.members.push(members);
    }
    Ok(data)
}

/// Least `c_i ∈ [0, m_i)` with `χ(a_i) = det(a_i)^{c_i}` for each hyperplane.
pub fn character_exponents(
    group: &FiniteGroup,
    planes: &HyperplaneData,
    chi: &Character,
) -> Result<Vec<u32>, InvariantsError> {
    let eps = group.eps();
    planes
        .generators
        .iter()
        .zip(&planes.orders)
        .enumerate()
        .map(|(i, (&a, &m))| {
            let det = group.element(a).det();
            let value = chi.value(a);
            (0..m)
                .find(|&c| (det.powu(c) - value).norm() < 1e3 * eps)
                .ok_or(InvariantsError::NoExponent { hyperplane: i })
        })
        .collect()
}

/// Copy of `chi` with its exponent tuple filled in.
pub fn with_exponents(
    group: &FiniteGroup,
    planes: &HyperplaneData,
    chi: &Character,
) -> Result<Character, InvariantsError> {
    let mut out = chi.clone();
    out.exponents = Some(character_exponents(group, planes, chi)?);
    Ok(out)
}

/// Generating polynomial `ℓ_χ = Π ℓ_i^{c_i}` from an exponent tuple.
pub fn generating_polynomial(planes: &HyperplaneData, exponents: &[u32]) -> MixedPolynomial {
    let d = planes
        .coefficients
        .first()
        .map(|c| c.len())
        .unwrap_or_default();
    planes.linear_forms.iter().zip(exponents).fold(
        MixedPolynomial::one(d.max(1)),
        |acc, (l, &c)| {
            if c == 0 {
                acc
            } else {
                &acc * &l.pow(c)
            }
        },
    )
}

/// `ℓ_χ` for a character whose exponents are already known.
pub fn generating_polynomial_for(
    planes: &HyperplaneData,
    chi: &Character,
) -> Result<MixedPolynomial, InvariantsError> {
    let exps = chi
        .exponents
        .as_ref()
        .ok_or(InvariantsError::MissingExponents)?;
    Ok(generating_polynomial(planes, exps))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MapSource {
    Builtin,
    User,
}

/// A verified homogeneous system of parameters for a group.
#[derive(Clone, Debug)]
pub struct BasicMap {
    pub map: PolynomialMap,
    pub source: MapSource,
    pub group_order: usize,
}

fn elementary_symmetric(vars: &[MixedPolynomial]) -> Vec<MixedPolynomial> {
    let d = vars[0].dim();
    // e[j] of the variables seen so far
    let mut e = vec![MixedPolynomial::one(d)];
    for v in vars {
        e.push(MixedPolynomial::zero(d));
        for j in (1..e.len()).rev() {
            let t = &e[j - 1] * v;
            e[j] += &t;
        }
    }
    e.into_iter().skip(1).collect()
}

fn builtin_components(group: &FiniteGroup) -> Option<Vec<MixedPolynomial>> {
    let d = group.dim();
    let vars: Vec<MixedPolynomial> = (0..d).map(|i| MixedPolynomial::variable(d, i)).collect();
    match group.family() {
        Family::Symmetric { .. } => Some(elementary_symmetric(&vars)),
        Family::Cyclic { orders } => {
            Some(vars.iter().zip(orders).map(|(v, &n)| v.pow(n)).collect())
        }
        Family::Wreath { m, .. } => {
            let powered: Vec<MixedPolynomial> = vars.iter().map(|v| v.pow(*m)).collect();
            Some(elementary_symmetric(&powered))
        }
        Family::Custom => None,
    }
}

/// Verify a candidate map: `d` homogeneous `G`-invariant components with
/// nonvanishing Jacobian and degree product `|G|`.
pub fn verify_hsop(group: &FiniteGroup, map: &PolynomialMap) -> Result<(), InvariantsError> {
    let d = group.dim();
    if map.len() != d || map.source_dim() != d {
        return Err(InvariantsError::InvalidHsop(format!(
            "expected {d} components in {d} variables"
        )));
    }
    for (i, comp) in map.components().iter().enumerate() {
        let tol = group.eps() * (1.0 + comp.max_coeff());
        for (s, elt) in group.elements().iter().enumerate() {
            if act(elt, comp)?.max_abs_diff(comp) > tol {
                return Err(InvariantsError::InvalidHsop(format!(
                    "component {i} is not invariant under element {s}"
                )));
            }
        }
    }
    if jacobian_det(map).max_coeff() < group.eps() {
        return Err(InvariantsError::InvalidHsop("Jacobian vanishes".into()));
    }
    let product: u64 = map.degrees().iter().map(|&k| k as u64).product();
    if product != group.order() as u64 {
        return Err(InvariantsError::InvalidHsop(format!(
            "degree product {product} differs from group order {}",
            group.order()
        )));
    }
    Ok(())
}

/// Built-in basic map for a named family, or a verified user map.
pub fn basic_map(
    group: &FiniteGroup,
    user_map: Option<PolynomialMap>,
) -> Result<BasicMap, InvariantsError> {
    let (map, source) = match user_map {
        Some(m) => (m, MapSource::User),
        None => {
            let comps = builtin_components(group).ok_or_else(|| {
                InvariantsError::InvalidHsop("no built-in map for custom groups".into())
            })?;
            (PolynomialMap::new(comps)?, MapSource::Builtin)
        }
    };
    verify_hsop(group, &map)?;
    Ok(BasicMap {
        map,
        source,
        group_order: group.order(),
    })
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct JacobianFactorization {
    pub constant: Complex64,
    pub residual: f64,
}

/// Find `c` with `J_θ = c·Π ℓ_i^{m_i − 1}`.
pub fn verify_jacobian_factorization(
    basic: &BasicMap,
    planes: &HyperplaneData,
) -> Result<JacobianFactorization, InvariantsError> {
    let jac = jacobian_det(&basic.map);
    let exps: Vec<u32> = planes.orders.iter().map(|m| m - 1).collect();
    let product = generating_polynomial(planes, &exps);
    let (lead_m, lead_c) = product.leading_term().map(|(m, c)| (m.clone(), *c)).ok_or(
        InvariantsError::FactorizationFails {
            residual: f64::INFINITY,
        },
    )?;
    let constant = jac.coeff(&lead_m) / lead_c;
    let residual = jac.max_abs_diff(&product.scale(constant));
    if constant.norm() < DIV_EPS || residual > DIV_EPS * (1.0 + jac.max_coeff()) {
        return Err(InvariantsError::FactorizationFails { residual });
    }
    Ok(JacobianFactorization { constant, residual })
}

/// True iff `σ(f) = χ(σ)·f` for every element, within `eps·(1 + max|f|)`.
pub fn is_relative_invariant(group: &FiniteGroup, f: &MixedPolynomial, chi: &Character) -> bool {
    relative_invariance_defect(group, f, chi) <= group.eps() * (1.0 + f.max_coeff())
}

/// `max_σ ‖σ(f) − χ(σ) f‖_∞`.
pub fn relative_invariance_defect(
    group: &FiniteGroup,
    f: &MixedPolynomial,
    chi: &Character,
) -> f64 {
    group
        .elements()
        .iter()
        .enumerate()
        .map(|(s, elt)| match act(elt, f) {
            Ok(moved) => moved.max_abs_diff(&f.scale(chi.value(s))),
            Err(_) => f64::INFINITY,
        })
        .fold(0.0, f64::max)
}

/// `p̂` with `p̂ ∘ θ = p` for a `G`-invariant polynomial `p`.
pub fn rewrite_in_theta(
    group: &FiniteGroup,
    p: &MixedPolynomial,
    basic: &BasicMap,
) -> Result<MixedPolynomial, InvariantsError> {
    if !p.is_holomorphic() {
        return Err(PolyError::NotHolomorphic.into());
    }
    if !is_relative_invariant(group, p, &Character::trivial(group)) {
        return Err(InvariantsError::NotInvariant);
    }
    ThetaRewriter::new(&basic.map).rewrite(p)
}

struct DegreeSystem {
    alphas: Vec<Vec<u32>>,
    rows: HashMap<Vec<u32>, usize>,
    matrix: DMatrix<Complex64>,
    col_scale: Vec<f64>,
    svd: Option<SVD<Complex64, nalgebra::Dyn, nalgebra::Dyn>>,
}

/// Rewrites invariant polynomials in the coordinates of a basic map by
/// solving, one weighted degree at a time, the linear system over the
/// monomials `w^α` with `Σ α_i deg θ_i = k`. Systems are cached per degree.
pub struct ThetaRewriter {
    map: PolynomialMap,
    systems: BTreeMap<u32, DegreeSystem>,
    tol: f64,
}

impl ThetaRewriter {
    pub fn new(map: &PolynomialMap) -> Self {
        Self {
            map: map.clone(),
            systems: BTreeMap::new(),
            tol: DIV_EPS,
        }
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    fn weighted_exponents(weights: &[u32], k: u32) -> Vec<Vec<u32>> {
        fn rec(weights: &[u32], k: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            let i = prefix.len();
            if i == weights.len() {
                if k == 0 {
                    out.push(prefix.clone());
                }
                return;
            }
            let w = weights[i];
            for a in (0..=k / w).rev() {
                prefix.push(a);
                rec(weights, k - a * w, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(weights, k, &mut Vec::new(), &mut out);
        out
    }

    pub fn map(&self) -> &PolynomialMap {
        &self.map
    }

    fn system(&mut self, k: u32) -> &DegreeSystem {
        let map = &self.map;
        self.systems.entry(k).or_insert_with(|| {
            let alphas = Self::weighted_exponents(map.degrees(), k);
            let columns: Vec<MixedPolynomial> = alphas
                .iter()
                .map(|alpha| {
                    map.components().iter().zip(alpha).fold(
                        MixedPolynomial::one(map.source_dim()),
                        |acc, (t, &a)| if a == 0 { acc } else { &acc * &t.pow(a) },
                    )
                })
                .collect();
            let mut rows: HashMap<Vec<u32>, usize> = HashMap::new();
            for col in &columns {
                for (m, _) in col.terms() {
                    let n = rows.len();
                    rows.entry(m.holo.clone()).or_insert(n);
                }
            }
            let mut matrix = DMatrix::<Complex64>::zeros(rows.len(), columns.len());
            let mut col_scale = Vec::with_capacity(columns.len());
            for (j, col) in columns.iter().enumerate() {
                let norm = col
                    .terms()
                    .map(|(_, c)| c.norm_sqr())
                    .sum::<f64>()
                    .sqrt()
                    .max(f64::MIN_POSITIVE);
                col_scale.push(norm);
                for (m, c) in col.terms() {
                    matrix[(rows[&m.holo], j)] = c / norm;
                }
            }
            let svd = (!columns.is_empty()).then(|| SVD::new(matrix.clone(), true, true));
            DegreeSystem {
                alphas,
                rows,
                matrix,
                col_scale,
                svd,
            }
        })
    }

    /// Rewrite without the invariance precondition check.
    pub fn rewrite(&mut self, p: &MixedPolynomial) -> Result<MixedPolynomial, InvariantsError> {
        if !p.is_holomorphic() {
            return Err(PolyError::NotHolomorphic.into());
        }
        let n = self.map.len();
        let tol = self.tol;
        let mut out = MixedPolynomial::zero(n);
        for (k, part) in p.homogeneous_components() {
            let scale = 1.0 + part.max_coeff();
            let sys = self.system(k);
            let svd = match &sys.svd {
                Some(s) => s,
                None => {
                    return Err(InvariantsError::SolveFailed {
                        residual: part.max_coeff(),
                    })
                }
            };
            let mut b = DVector::<Complex64>::zeros(sys.rows.len());
            let mut outside = 0.0f64;
            for (m, c) in part.terms() {
                match sys.rows.get(&m.holo) {
                    Some(&r) => b[r] = *c,
                    None => outside = outside.max(c.norm()),
                }
            }
            if outside > tol * scale {
                return Err(InvariantsError::SolveFailed { residual: outside });
            }
            let eps = 1e-13 * svd.singular_values.max().max(1.0);
            let solve = |rhs: &DVector<Complex64>| {
                svd.solve(rhs, eps)
                    .map_err(|_| InvariantsError::SolveFailed {
                        residual: f64::INFINITY,
                    })
            };
            let mut x = solve(&b)?;
            // one step of iterative refinement
            let r = &b - &sys.matrix * &x;
            x += solve(&r)?;
            let residual = (&sys.matrix * &x - &b).camax();
            if residual > tol * scale {
                return Err(InvariantsError::SolveFailed { residual });
            }
            for (j, alpha) in sys.alphas.iter().enumerate() {
                let coeff = x[j] / sys.col_scale[j];
                out.add_term(Monomial::holomorphic(alpha.clone()), coeff);
            }
        }
        Ok(out)
    }
}

/// `compose(p̂, θ)`, re-exported for symmetry with [`rewrite_in_theta`].
pub fn lift_from_theta(
    p_hat: &MixedPolynomial,
    basic: &BasicMap,
) -> Result<MixedPolynomial, InvariantsError> {
    Ok(compose(p_hat, &basic.map)?)
}
