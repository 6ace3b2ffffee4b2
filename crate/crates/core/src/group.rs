//! Finite matrix groups: closure generation, named families, pseudoreflections
//! and one-dimensional characters.
//!
//! Elements are stored as dense complex matrices. Two matrices are considered
//! equal when every entry differs by less than the group tolerance; lookups go
//! through a hash of the entries rounded to six decimals first.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tolerance::DEFAULT_EPS;

pub type CMatrix = DMatrix<Complex64>;

/// Default bound on the number of elements produced by [`generate_group`].
pub const DEFAULT_CAP: usize = 20_000;
const ORDER_CAP: usize = 1000;
const HASH_SCALE: f64 = 1e6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroupError {
    #[error("group closure exceeded the cap of {cap} elements")]
    NotFinite { cap: usize },
    #[error("generator {index} is singular")]
    Singular { index: usize },
    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),
    #[error("generators must be square matrices of one common size")]
    DimensionMismatch,
}

/// Root of unity `exp(2πi k / n)`.
pub fn root_of_unity(n: u32, k: i64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)
}

/// One matrix of a finite group, with cached inverse, determinant and order.
#[derive(Clone, Debug)]
pub struct GroupElement {
    matrix: CMatrix,
    inverse: CMatrix,
    det: Complex64,
    order: usize,
    // z_i -> scale[i] * z_{perm[i]} for the substitution z -> inverse * z
    inverse_monomial: Option<(Vec<usize>, Vec<Complex64>)>,
}

impl GroupElement {
    fn new(matrix: CMatrix, eps: f64) -> Option<Self> {
        let det = matrix.determinant();
        if det.norm() < eps {
            return None;
        }
        let inverse = matrix.clone().try_inverse()?;
        let order = element_order(&matrix, eps);
        let inverse_monomial = monomial_form(&inverse, eps);
        Some(Self {
            matrix,
            inverse,
            det,
            order,
            inverse_monomial,
        })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn inverse(&self) -> &CMatrix {
        &self.inverse
    }

    pub fn det(&self) -> Complex64 {
        self.det
    }

    /// Multiplicative order, or 0 if it exceeds the internal cap.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// For a monomial inverse matrix, the permutation and scalars describing
    /// `z -> σ⁻¹ z` as `z_i ↦ scale[i]·z_{perm[i]}`.
    pub fn inverse_monomial(&self) -> Option<(&[usize], &[Complex64])> {
        self.inverse_monomial
            .as_ref()
            .map(|(p, s)| (p.as_slice(), s.as_slice()))
    }

    pub fn is_monomial(&self) -> bool {
        self.inverse_monomial.is_some()
    }

    /// `σ·z`.
    pub fn apply(&self, z: &[Complex64]) -> Vec<Complex64> {
        mat_vec(&self.matrix, z)
    }

    /// `σ⁻¹·z`.
    pub fn apply_inverse(&self, z: &[Complex64]) -> Vec<Complex64> {
        mat_vec(&self.inverse, z)
    }
}

fn mat_vec(m: &CMatrix, z: &[Complex64]) -> Vec<Complex64> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)] * z[j]).sum())
        .collect()
}

fn monomial_form(m: &CMatrix, eps: f64) -> Option<(Vec<usize>, Vec<Complex64>)> {
    let n = m.nrows();
    let mut perm = Vec::with_capacity(n);
    let mut scale = Vec::with_capacity(n);
    let mut used = vec![false; n];
    for i in 0..n {
        let mut hit = None;
        for j in 0..n {
            if m[(i, j)].norm() > eps {
                if hit.is_some() {
                    return None;
                }
                hit = Some(j);
            }
        }
        let j = hit?;
        if used[j] {
            return None;
        }
        used[j] = true;
        perm.push(j);
        scale.push(m[(i, j)]);
    }
    Some((perm, scale))
}

fn element_order(m: &CMatrix, eps: f64) -> usize {
    let id = CMatrix::identity(m.nrows(), m.ncols());
    let mut p = m.clone();
    for k in 1..=ORDER_CAP {
        if matrices_close(&p, &id, eps) {
            return k;
        }
        p = &p * m;
    }
    0
}

pub(crate) fn matrices_close(a: &CMatrix, b: &CMatrix, eps: f64) -> bool {
    a.shape() == b.shape() && a.iter().zip(b.iter()).all(|(x, y)| (x - y).norm() < eps)
}

fn hash_key(m: &CMatrix) -> Vec<i64> {
    m.iter()
        .flat_map(|c| {
            [
                (c.re * HASH_SCALE).round() as i64,
                (c.im * HASH_SCALE).round() as i64,
            ]
        })
        .collect()
}

/// Named family used to build a group and its built-in basic polynomial map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Family {
    /// Permutation matrices of `S_d`.
    Symmetric {
        d: usize,
    },
    /// Diagonal group `Z_{n_1} × … × Z_{n_d}`.
    Cyclic {
        orders: Vec<u32>,
    },
    /// `G(m,1,d)`: permutations composed with diagonal `m`-th roots of unity.
    Wreath {
        m: u32,
        d: usize,
    },
    Custom,
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::Symmetric { .. } => "symmetric",
            Family::Cyclic { .. } => "cyclic",
            Family::Wreath { .. } => "wreath",
            Family::Custom => "custom",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Symmetric { d } => write!(f, "symmetric({d})"),
            Family::Cyclic { orders } => {
                let s: Vec<String> = orders.iter().map(|n| n.to_string()).collect();
                write!(f, "cyclic({})", s.join(","))
            }
            Family::Wreath { m, d } => write!(f, "wreath({m},{d})"),
            Family::Custom => write!(f, "custom"),
        }
    }
}

/// A finite matrix group with its multiplication table. The identity is
/// always element 0.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    elements: Vec<GroupElement>,
    dim: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    family: Family,
    eps: f64,
    index: HashMap<Vec<i64>, Vec<usize>>,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Index of `g·h`.
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g * self.order() + h]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverses[g]
    }

    /// Index of the element equal to `m` within tolerance.
    pub fn index_of(&self, m: &CMatrix) -> Option<usize> {
        lookup(&self.index, &self.elements, m, self.eps)
    }

    /// True when every element is a monomial matrix.
    pub fn is_monomial(&self) -> bool {
        self.elements.iter().all(GroupElement::is_monomial)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|g| (0..n).all(|h| self.mul(g, h) == self.mul(h, g)))
    }

    /// Closure of a set of element indices under multiplication.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order()];
        inside[0] = true;
        let mut members = vec![0];
        let mut cursor = 0;
        while cursor < members.len() {
            let e = members[cursor];
            cursor += 1;
            for &g in gens {
                let p = self.mul(g, e);
                if !inside[p] {
                    inside[p] = true;
                    members.push(p);
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// Commutator subgroup `[G, G]`.
    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let n = self.order();
        let mut comms = Vec::new();
        for g in 0..n {
            for h in 0..n {
                let c = self.mul(self.mul(g, h), self.mul(self.inverse(g), self.inverse(h)));
                comms.push(c);
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.subgroup_closure(&comms)
    }
}

fn lookup(
    index: &HashMap<Vec<i64>, Vec<usize>>,
    elements: &[GroupElement],
    m: &CMatrix,
    eps: f64,
) -> Option<usize> {
    if let Some(bucket) = index.get(&hash_key(m)) {
        if let Some(&i) = bucket
            .iter()
            .find(|&&i| matrices_close(&elements[i].matrix, m, eps))
        {
            return Some(i);
        }
    }
    // rounding boundary: fall back to a linear scan
    elements
        .iter()
        .position(|e| matrices_close(&e.matrix, m, eps))
}

/// Closure of `generators` under multiplication, with the default tolerance.
pub fn generate_group(generators: &[CMatrix], cap: usize) -> Result<FiniteGroup, GroupError> {
    generate_group_with(generators, cap, DEFAULT_EPS, Family::Custom)
}

/// Closure of `generators` with an explicit tolerance and family tag.
pub fn generate_group_with(
    generators: &[CMatrix],
    cap: usize,
    eps: f64,
    family: Family,
) -> Result<FiniteGroup, GroupError> {
    let dim = generators.first().map(|g| g.nrows()).unwrap_or(1);
    for (index, g) in generators.iter().enumerate() {
        if g.nrows() != dim || g.ncols() != dim {
            return Err(GroupError::DimensionMismatch);
        }
        if g.determinant().norm() < eps {
            return Err(GroupError::Singular { index });
        }
    }
    let cap = cap.max(1);

    let id = CMatrix::identity(dim, dim);
    let mut mats = vec![id.clone()];
    let mut index: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    index.entry(hash_key(&id)).or_default().push(0);

    let find = |mats: &[CMatrix], index: &HashMap<Vec<i64>, Vec<usize>>, m: &CMatrix| {
        if let Some(bucket) = index.get(&hash_key(m)) {
            if let Some(&i) = bucket.iter().find(|&&i| matrices_close(&mats[i], m, eps)) {
                return Some(i);
            }
        }
        mats.iter().position(|x| matrices_close(x, m, eps))
    };

    let mut cursor = 0;
    while cursor < mats.len() {
        let current = mats[cursor].clone();
        cursor += 1;
        for g in generators {
            let p = g * &current;
            if find(&mats, &index, &p).is_none() {
                if mats.len() >= cap {
                    return Err(GroupError::NotFinite { cap });
                }
                index.entry(hash_key(&p)).or_default().push(mats.len());
                mats.push(p);
            }
        }
    }

    let mut elements = Vec::with_capacity(mats.len());
    for (i, m) in mats.into_iter().enumerate() {
        let e = GroupElement::new(m, eps).ok_or(GroupError::Singular { index: i })?;
        if e.order == 0 {
            return Err(GroupError::NotFinite { cap });
        }
        elements.push(e);
    }

    let n = elements.len();
    let mut table = vec![0usize; n * n];
    for g in 0..n {
        for h in 0..n {
            let p = &elements[g].matrix * &elements[h].matrix;
            table[g * n + h] =
                lookup(&index, &elements, &p, eps).ok_or(GroupError::NotFinite { cap })?;
        }
    }
    let inverses = (0..n)
        .map(|g| {
            (0..n)
                .find(|&h| table[g * n + h] == 0)
                .ok_or(GroupError::NotFinite { cap })
        })
        .collect::<Result<Vec<_>, _>>()?;

    Ok(FiniteGroup {
        elements,
        dim,
        table,
        inverses,
        family,
        eps,
        index,
    })
}

fn permutation_matrix(d: usize, perm: &[usize]) -> CMatrix {
    let mut m = CMatrix::zeros(d, d);
    for (i, &j) in perm.iter().enumerate() {
        m[(j, i)] = Complex64::new(1.0, 0.0);
    }
    m
}

fn transposition_generators(d: usize) -> Vec<CMatrix> {
    (0..d.saturating_sub(1))
        .map(|i| {
            let mut perm: Vec<usize> = (0..d).collect();
            perm.swap(i, i + 1);
            permutation_matrix(d, &perm)
        })
        .collect()
}

fn diagonal(entries: &[Complex64]) -> CMatrix {
    let d = entries.len();
    let mut m = CMatrix::zeros(d, d);
    for (i, &c) in entries.iter().enumerate() {
        m[(i, i)] = c;
    }
    m
}

/// Build one of the named families.
pub fn named_family(family: &Family) -> Result<FiniteGroup, GroupError> {
    named_family_with(family, DEFAULT_EPS)
}

pub fn named_family_with(family: &Family, eps: f64) -> Result<FiniteGroup, GroupError> {
    let one = Complex64::new(1.0, 0.0);
    let generators = match family {
        Family::Symmetric { d } if *d >= 1 => {
            let gens = transposition_generators(*d);
            if gens.is_empty() {
                vec![CMatrix::identity(*d, *d)]
            } else {
                gens
            }
        }
        Family::Cyclic { orders } if !orders.is_empty() && orders.iter().all(|&n| n >= 1) => {
            let d = orders.len();
            (0..d)
                .map(|i| {
                    let mut diag = vec![one; d];
                    diag[i] = root_of_unity(orders[i], 1);
                    diagonal(&diag)
                })
                .collect()
        }
        Family::Wreath { m, d } if *m >= 1 && *d >= 1 => {
            let mut gens = transposition_generators(*d);
            let mut diag = vec![one; *d];
            diag[0] = root_of_unity(*m, 1);
            gens.push(diagonal(&diag));
            gens
        }
        other => return Err(GroupError::UnsupportedFamily(other.to_string())),
    };
    generate_group_with(&generators, DEFAULT_CAP, eps, family.clone())
}

/// Numerical rank of a matrix: singular values above `eps·d`.
pub(crate) fn numerical_rank(m: &CMatrix, eps: f64) -> usize {
    let d = m.nrows().max(1) as f64;
    m.clone()
        .singular_values()
        .iter()
        .filter(|&&s| s > eps * d)
        .count()
}

/// Indices of the pseudoreflections: non-identity elements with `rank(I − σ) = 1`.
pub fn pseudoreflections(group: &FiniteGroup) -> Vec<usize> {
    let id = CMatrix::identity(group.dim, group.dim);
    (1..group.order())
        .filter(|&i| numerical_rank(&(&id - &group.elements[i].matrix), group.eps) == 1)
        .collect()
}

/// True iff the pseudoreflections generate the whole group.
pub fn is_pseudoreflection_group(group: &FiniteGroup) -> bool {
    let refl = pseudoreflections(group);
    group.subgroup_closure(&refl).len() == group.order()
}

/// A one-dimensional representation, stored by its value on every element.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Character {
    pub name: String,
    pub values: Vec<Complex64>,
    /// Exponent tuple `(c_1, …, c_t)` aligned with the hyperplane list, once
    /// computed by [`crate::invariants::character_exponents`].
    pub exponents: Option<Vec<u32>>,
}

impl Character {
    pub fn value(&self, g: usize) -> Complex64 {
        self.values[g]
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        Self {
            name: "trivial".into(),
            values: vec![Complex64::new(1.0, 0.0); group.order()],
            exponents: None,
        }
    }

    /// Pointwise conjugate `σ ↦ conj χ(σ) = χ(σ⁻¹)`. Exponents are not carried over.
    pub fn conjugate(&self) -> Self {
        Self {
            name: format!("conj({})", self.name),
            values: self.values.iter().map(|v| v.conj()).collect(),
            exponents: None,
        }
    }

    pub fn is_trivial(&self, eps: f64) -> bool {
        self.values.iter().all(|v| (v - 1.0).norm() < eps)
    }

    pub fn approx_eq(&self, other: &Character, eps: f64) -> bool {
        self.values.len() == other.values.len()
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| (a - b).norm() < eps)
    }

    /// Largest multiplicativity defect `|χ(gh) − χ(g)χ(h)|`.
    pub fn multiplicativity_defect(&self, group: &FiniteGroup) -> f64 {
        let n = group.order();
        let mut worst = 0.0f64;
        for g in 0..n {
            for h in 0..n {
                let d = (self.values[group.mul(g, h)] - self.values[g] * self.values[h]).norm();
                worst = worst.max(d);
            }
        }
        worst
    }
}

/// The sign character `σ ↦ det(σ)⁻¹`.
pub fn sign_character(group: &FiniteGroup) -> Character {
    Character {
        name: "sign".into(),
        values: group.elements.iter().map(|e| e.det.inv()).collect(),
        exponents: None,
    }
}

/// All one-dimensional characters, lifted from the abelianization `G/[G,G]`.
///
/// The list is sorted by the arguments of the character values in element
/// order, so the trivial character comes first.
pub fn one_dim_characters(group: &FiniteGroup) -> Vec<Character> {
    let n = group.order();
    let comm = group.commutator_subgroup();

    // coset labels of G/[G,G]
    let mut coset = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for g in 0..n {
        if coset[g] != usize::MAX {
            continue;
        }
        let label = reps.len();
        reps.push(g);
        for &k in &comm {
            coset[group.mul(g, k)] = label;
        }
    }
    let q = reps.len();
    let qmul = |a: usize, b: usize| coset[group.mul(reps[a], reps[b])];

    // extend characters one cyclic step at a time: H -> <H, a>
    let mut in_sub = vec![false; q];
    in_sub[coset[0]] = true;
    let mut sub = vec![coset[0]];
    let mut chars: Vec<Vec<Complex64>> = vec![vec![Complex64::new(0.0, 0.0); q]];
    chars[0][coset[0]] = Complex64::new(1.0, 0.0);

    for a in 0..q {
        if in_sub[a] {
            continue;
        }
        // smallest k with a^k in H
        let mut k = 1;
        let mut pw = a;
        while !in_sub[pw] {
            pw = qmul(pw, a);
            k += 1;
        }
        let a_pow_k = pw;
        let mut new_sub = Vec::with_capacity(sub.len() * k);
        let mut a_pows = vec![coset[0]];
        for j in 1..k {
            a_pows.push(qmul(a_pows[j - 1], a));
        }
        for &h in &sub {
            for &aj in &a_pows {
                new_sub.push(qmul(h, aj));
            }
        }
        let mut next = Vec::with_capacity(chars.len() * k);
        for psi in &chars {
            let target = psi[a_pow_k];
            let base = target.arg() / k as f64;
            for r in 0..k {
                let root = Complex64::from_polar(1.0, base + 2.0 * PI * r as f64 / k as f64);
                let mut ext = psi.clone();
                for &h in &sub {
                    let mut val = psi[h];
                    for &aj in &a_pows {
                        ext[qmul(h, aj)] = val;
                        val *= root;
                    }
                }
                next.push(ext);
            }
        }
        chars = next;
        for &x in &new_sub {
            in_sub[x] = true;
        }
        sub = new_sub;
    }

    let mut lifted: Vec<Vec<Complex64>> = chars
        .into_iter()
        .map(|psi| (0..n).map(|g| snap_unit(psi[coset[g]])).collect())
        .collect();
    lifted.sort_by_key(|vals| {
        vals.iter()
            .map(|v| {
                let t = v.arg().rem_euclid(2.0 * PI) / (2.0 * PI);
                let t = if t > 1.0 - 1e-9 { 0.0 } else { t };
                (t * HASH_SCALE).round() as i64
            })
            .collect::<Vec<_>>()
    });

    let sign = sign_character(group);
    let eps = group.eps;
    lifted
        .into_iter()
        .enumerate()
        .map(|(k, values)| {
            let mut c = Character {
                name: format!("chi{k}"),
                values,
                exponents: None,
            };
            if c.is_trivial(eps) {
                c.name = "trivial".into();
            } else if c.approx_eq(&sign, eps) {
                c.name = "sign".into();
            }
            c
        })
        .collect()
}

fn snap_unit(z: Complex64) -> Complex64 {
    let snapped = Complex64::new(snap(z.re), snap(z.im));
    if (snapped.norm() - 1.0).abs() < 1e-12 {
        snapped
    } else {
        z
    }
}

fn snap(x: f64) -> f64 {
    for t in [0.0, 1.0, -1.0] {
        if (x - t).abs() < 1e-13 {
            return t;
        }
    }
    x
}
