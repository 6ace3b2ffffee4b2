//! Schur polynomials from the Jacobi–Trudi determinant.

use itertools::Itertools;
use num_complex::Complex64;

use crate::poly::{exponents_of_degree, MixedPolynomial, Monomial};

/// Complete homogeneous symmetric polynomial `h_k(z_1, …, z_d)`.
pub fn complete_homogeneous(d: usize, k: i64) -> MixedPolynomial {
    if k < 0 {
        return MixedPolynomial::zero(d);
    }
    MixedPolynomial::from_terms(
        d,
        exponents_of_degree(d, k as u32)
            .into_iter()
            .map(|a| (Monomial::holomorphic(a), Complex64::new(1.0, 0.0))),
    )
}

/// `s_λ = det(h_{λ_i − i + j})` in `d` variables.
pub fn schur_polynomial(lambda: &[u32], d: usize) -> MixedPolynomial {
    let n = lambda.len();
    if n == 0 {
        return MixedPolynomial::one(d);
    }
    let entry = |i: usize, j: usize| complete_homogeneous(d, lambda[i] as i64 - i as i64 + j as i64);
    let table: Vec<Vec<MixedPolynomial>> =
        (0..n).map(|i| (0..n).map(|j| entry(i, j)).collect()).collect();
    let mut out = MixedPolynomial::zero(d);
    for perm in (0..n).permutations(n) {
        let inversions = (0..n)
            .tuple_combinations()
            .filter(|&(a, b)| perm[a] > perm[b])
            .count();
        let term = perm
            .iter()
            .enumerate()
            .fold(MixedPolynomial::one(d), |acc, (i, &j)| &acc * &table[i][j]);
        if inversions % 2 == 0 {
            out += &term;
        } else {
            out = &out - &term;
        }
    }
    out
}

/// Partition `λ_j = m_j − (d − j)` attached to a strictly decreasing exponent.
pub fn partition_of(m: &[u32]) -> Option<Vec<u32>> {
    let d = m.len();
    m.iter()
        .enumerate()
        .map(|(j, &mj)| mj.checked_sub((d - 1 - j) as u32))
        .collect::<Option<Vec<u32>>>()
        .filter(|l| l.windows(2).all(|w| w[0] >= w[1]))
}
