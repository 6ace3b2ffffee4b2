//! Seeded random polynomials, symbols and points for the verification suites.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::hardy::{DomainKind, HardyModel};
use crate::poly::{exponents_of_degree, MixedPolynomial, Monomial};

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Holomorphic polynomial with `terms` random monomials of degree `≤ degree`.
pub fn random_polynomial<R: Rng>(rng: &mut R, d: usize, degree: u32, terms: usize) -> MixedPolynomial {
    let mut p = MixedPolynomial::zero(d);
    for _ in 0..terms {
        let k = rng.gen_range(0..=degree);
        let all = exponents_of_degree(d, k);
        let a = all[rng.gen_range(0..all.len())].clone();
        p.add_term(Monomial::holomorphic(a), random_complex(rng));
    }
    p
}

/// Mixed polynomial with holomorphic and antiholomorphic degrees `≤ bidegree`.
pub fn random_symbol<R: Rng>(rng: &mut R, d: usize, bidegree: u32, terms: usize) -> MixedPolynomial {
    let mut p = MixedPolynomial::zero(d);
    for _ in 0..terms {
        let ka = rng.gen_range(0..=bidegree);
        let kb = rng.gen_range(0..=bidegree);
        let holo = exponents_of_degree(d, ka);
        let anti = exponents_of_degree(d, kb);
        let a = holo[rng.gen_range(0..holo.len())].clone();
        let b = anti[rng.gen_range(0..anti.len())].clone();
        p.add_term(Monomial::new(a, b), random_complex(rng));
    }
    p
}

/// Point of `Ω` with every coordinate (polydisc) or the whole vector (ball)
/// of modulus at most `radius`.
pub fn random_point<R: Rng>(rng: &mut R, model: &HardyModel, radius: f64) -> Vec<Complex64> {
    let d = model.dim;
    match model.kind {
        DomainKind::Polydisc => (0..d)
            .map(|_| {
                let r = radius * rng.gen::<f64>().sqrt();
                Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
            })
            .collect(),
        DomainKind::Ball => {
            let v: Vec<Complex64> = (0..d).map(|_| random_complex(rng)).collect();
            let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt().max(1e-300);
            let r = radius * rng.gen::<f64>();
            v.into_iter().map(|c| c * (r / norm)).collect()
        }
    }
}
