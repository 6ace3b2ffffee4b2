//! Acceptance suite: one line per criterion, each with its pinned tolerance.
//!
//! Sub-parts known to be false as stated are reported as FAIL and their
//! counterexamples are pinned; the process exits nonzero only when an
//! outcome differs from the recorded one.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;

use qhardy::cli::{GroupSpec, Setup};
use qhardy::group::{pseudoreflections, Character, Family, FiniteGroup};
use qhardy::hardy::{isotypic_project, BasisMode, BasisStrategy, DomainKind, HardyModel, QuotientSpace};
use qhardy::invariants::verify_jacobian_factorization;
use qhardy::poly::{act, exact_divide_with, MixedPolynomial};
use qhardy::sampling::{random_point, random_polynomial, random_symbol, rng, SuiteRng};
use qhardy::toeplitz::{
    check_brown_halmos, check_commuting_transfer, check_module_invariance, check_product_transfer,
    check_reducing, designed_triples, intertwining_defect, invariance_defect, symbol_scale,
    transfer_cutoff,
};
use qhardy::tolerance::Tolerances;

const MODELS: [DomainKind; 2] = [DomainKind::Polydisc, DomainKind::Ball];

fn core_families() -> Vec<Family> {
    vec![
        Family::Symmetric { d: 2 },
        Family::Symmetric { d: 3 },
        Family::Cyclic { orders: vec![3] },
        Family::Cyclic { orders: vec![2, 2] },
        Family::Wreath { m: 2, d: 2 },
    ]
}

fn builtin_families() -> Vec<Family> {
    let mut f = core_families();
    f.push(Family::Wreath { m: 3, d: 2 });
    f
}

fn setup(family: &Family) -> Setup {
    GroupSpec::named(family)
        .build(&Tolerances::default())
        .expect("built-in group")
}

fn spaces(s: &Setup, kind: DomainKind) -> Vec<QuotientSpace> {
    s.characters
        .iter()
        .map(|c| s.space(c, kind).expect("quotient space"))
        .collect()
}

fn fmt_dev(x: f64) -> String {
    format!("{x:.3e}")
}

struct Line {
    label: String,
    pass: bool,
    expected_pass: bool,
    detail: String,
}

struct Suite {
    lines: Vec<Line>,
}

impl Suite {
    fn record(&mut self, label: &str, pass: bool, expected_pass: bool, detail: String) {
        let tag = if pass { "PASS" } else { "FAIL" };
        let note = if pass == expected_pass {
            if pass {
                String::new()
            } else {
                " [expected: false as stated, see notes]".to_string()
            }
        } else {
            " [UNEXPECTED]".to_string()
        };
        println!("{label}: {tag} {detail}{note}");
        self.lines.push(Line {
            label: label.to_string(),
            pass,
            expected_pass,
            detail,
        });
    }
}

fn within(elapsed: Duration, budget_secs: u64) -> bool {
    elapsed <= Duration::from_secs(budget_secs)
}

// Criterion 1

fn criterion_1(suite: &mut Suite) {
    let start = Instant::now();
    // (order, pseudoreflections, |G/[G,G]|)
    let expected = [(2, 1, 2), (6, 3, 2), (3, 2, 3), (4, 2, 4), (8, 4, 4)];
    let mut ok = true;
    let mut worst = 0.0f64;
    for (family, &(order, refl, abel)) in core_families().iter().zip(&expected) {
        let s = setup(family);
        let g = &s.group;
        ok &= g.order() == order;
        ok &= pseudoreflections(g).len() == refl;
        ok &= s.characters.len() == abel;
        ok &= g.order() / g.commutator_subgroup().len() == s.characters.len();
        let basic = s.basic.as_ref().expect("basic map");
        let degree_product: usize = basic.map.degrees().iter().map(|&k| k as usize).product();
        ok &= degree_product == order;
        match verify_jacobian_factorization(basic, s.planes.as_ref().expect("hyperplanes")) {
            Ok(f) => worst = worst.max(f.residual),
            Err(_) => ok = false,
        }
    }
    let elapsed = start.elapsed();
    let pass = ok && worst < 1e-9 && within(elapsed, 5);
    suite.record(
        "criterion 1 (groups, characters, degrees, Jacobian)",
        pass,
        true,
        format!("jacobian_residual={} tol=1e-9 time={elapsed:.2?}/5s", fmt_dev(worst)),
    );
}

// Criterion 2

fn criterion_2(suite: &mut Suite) {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut r = rng(2);
    for family in core_families() {
        let s = setup(&family);
        let g = &s.group;
        let d = g.dim();
        let models = [HardyModel::polydisc(d), HardyModel::ball(d)];
        for _ in 0..200 {
            let f = random_polynomial(&mut r, d, 8, 8);
            let h = random_polynomial(&mut r, d, 8, 8);
            let mut sum = MixedPolynomial::zero(d);
            let projected: Vec<MixedPolynomial> = s
                .characters
                .iter()
                .map(|c| isotypic_project(g, c, &f).unwrap())
                .collect();
            for (i, c) in s.characters.iter().enumerate() {
                let pf = &projected[i];
                let ppf = isotypic_project(g, c, pf).unwrap();
                worst = worst.max(ppf.max_abs_diff(pf));
                for (j, other) in s.characters.iter().enumerate() {
                    if i != j {
                        worst = worst.max(isotypic_project(g, other, pf).unwrap().max_coeff());
                    }
                }
                let ph = isotypic_project(g, c, &h).unwrap();
                for m in &models {
                    let lhs = m.inner_product(pf, &h).unwrap();
                    let rhs = m.inner_product(&f, &ph).unwrap();
                    worst = worst.max((lhs - rhs).norm());
                }
                sum += pf;
            }
            if g.is_abelian() {
                worst = worst.max(sum.max_abs_diff(&f));
            }
        }
    }
    let elapsed = start.elapsed();
    suite.record(
        "criterion 2 (projection algebra)",
        worst < 1e-9 && within(elapsed, 30),
        true,
        format!("max_dev={} tol=1e-9 time={elapsed:.2?}/30s", fmt_dev(worst)),
    );
}

// Criterion 3

fn criterion_3(suite: &mut Suite) {
    let mut worst = 0.0f64;
    let mut failures = 0;
    let mut r = rng(3);
    for family in builtin_families() {
        let s = setup(&family);
        let g = &s.group;
        for space in spaces(&s, DomainKind::Polydisc) {
            let ell = space.generating_polynomial();
            for _ in 0..100 {
                let f = random_polynomial(&mut r, g.dim(), 8, 8);
                let p = space.project(&f).unwrap();
                match exact_divide_with(&p, ell, 1e-9) {
                    Ok(q) => {
                        let residual = (&(&q * ell) - &p).max_coeff() / (1.0 + p.max_coeff());
                        worst = worst.max(residual).max(invariance_defect(g, &q));
                    }
                    Err(_) => failures += 1,
                }
            }
        }
    }
    suite.record(
        "criterion 3 (Stanley divisibility)",
        failures == 0 && worst < 1e-9,
        true,
        format!("failures={failures} max_residual={} tol=1e-9", fmt_dev(worst)),
    );
}

// Criterion 4: Schur polynomials from the Jacobi-Trudi determinant with
// integer coefficients.

type IntPoly = BTreeMap<Vec<u32>, i64>;

fn int_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out = IntPoly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            *out.entry(m).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn int_add_scaled(acc: &mut IntPoly, p: &IntPoly, s: i64) {
    for (m, c) in p {
        *acc.entry(m.clone()).or_insert(0) += s * c;
    }
    acc.retain(|_, c| *c != 0);
}

fn monomials(d: usize, k: u32) -> Vec<Vec<u32>> {
    if d == 1 {
        return vec![vec![k]];
    }
    (0..=k)
        .flat_map(|first| {
            monomials(d - 1, k - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn complete(d: usize, k: i64) -> IntPoly {
    if k < 0 {
        return IntPoly::new();
    }
    monomials(d, k as u32).into_iter().map(|m| (m, 1)).collect()
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    if n == 0 {
        return vec![(vec![], 1)];
    }
    let mut out = Vec::new();
    for (p, sign) in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            let moved = (p.len() - pos) as i64;
            out.push((q, if moved % 2 == 0 { sign } else { -sign }));
        }
    }
    out
}

fn jacobi_trudi(lambda: &[u32], d: usize) -> IntPoly {
    let n = lambda.len();
    let mut det = IntPoly::new();
    for (perm, sign) in permutations(n) {
        let mut term: IntPoly = [(vec![0; d], 1)].into_iter().collect();
        for (i, &j) in perm.iter().enumerate() {
            let k = lambda[i] as i64 - i as i64 + j as i64;
            term = int_mul(&term, &complete(d, k));
        }
        int_add_scaled(&mut det, &term, sign);
    }
    det
}

fn criterion_4(suite: &mut Suite) {
    let mut worst = 0.0f64;
    let mut compared = 0;
    let mut ok = true;
    for d in [2usize, 3] {
        let s = setup(&Family::Symmetric { d });
        let sign = s.characters.iter().find(|c| c.name == "sign").unwrap();
        let space = s.space(sign, DomainKind::Polydisc).unwrap();
        let basis = space.quotient_onb(8).unwrap();
        for e in &basis.entries {
            // λ_j = m_j − (d − 1 − j)
            let lambda: Vec<u32> = e
                .representative
                .iter()
                .enumerate()
                .map(|(j, &m)| m - (d - 1 - j) as u32)
                .collect();
            let oracle = jacobi_trudi(&lambda, d);
            let got = space.lift_function(e.quotient.as_ref().unwrap()).unwrap();
            if !got.is_holomorphic() {
                ok = false;
            }
            let mut dev = 0.0f64;
            for (m, c) in &oracle {
                dev = dev.max((got.holo_coeff(m) - Complex64::new(*c as f64, 0.0)).norm());
            }
            for (m, c) in got.terms() {
                if !oracle.contains_key(&m.holo) {
                    dev = dev.max(c.norm());
                }
            }
            worst = worst.max(dev);
            compared += 1;
        }
    }
    suite.record(
        "criterion 4 (Schur oracle, S_2 and S_3, |m| <= 8)",
        ok && worst < 1e-9,
        true,
        format!("elements={compared} max_dev={} tol=1e-9", fmt_dev(worst)),
    );
}

// Criterion 5

fn criterion_5(suite: &mut Suite) {
    let mut gram = 0.0f64;
    let mut iso = 0.0f64;
    let mut r = rng(5);
    for family in builtin_families() {
        let s = setup(&family);
        for kind in MODELS {
            for space in spaces(&s, kind) {
                let model = *space.model();
                let b = space
                    .quotient_onb_with(10, BasisMode::Full, BasisStrategy::Auto)
                    .unwrap();
                let lifts: Vec<&MixedPolynomial> = b.lifts().collect();
                let quots: Vec<&MixedPolynomial> =
                    b.entries.iter().map(|e| e.quotient.as_ref().unwrap()).collect();
                for i in 0..lifts.len() {
                    for j in i..lifts.len() {
                        let target = if i == j { 1.0 } else { 0.0 };
                        let a = model.inner_product(lifts[i], lifts[j]).unwrap();
                        let q = space.quotient_inner_product(quots[i], quots[j]).unwrap();
                        gram = gram
                            .max((a - target).norm())
                            .max((q - target).norm());
                    }
                    let back = space.gamma(quots[i]).unwrap();
                    iso = iso.max(back.max_abs_diff(lifts[i]));
                }
                let n = space.basic_map().map.len();
                for _ in 0..5 {
                    let f = random_polynomial(&mut r, n, 3, 4);
                    let h = random_polynomial(&mut r, n, 3, 4);
                    let lhs = model
                        .inner_product(&space.gamma(&f).unwrap(), &space.gamma(&h).unwrap())
                        .unwrap();
                    let rhs = space.quotient_inner_product(&f, &h).unwrap();
                    iso = iso.max((lhs - rhs).norm() / (1.0 + rhs.norm()));
                }
            }
        }
    }
    suite.record(
        "criterion 5 (Gamma isometry and ONB Gram, degree <= 10)",
        gram < 1e-9 && iso < 1e-9,
        true,
        format!("gram_dev={} isometry_dev={} tol=1e-9", fmt_dev(gram), fmt_dev(iso)),
    );
}

// Criterion 6

fn criterion_6(suite: &mut Suite) {
    let start = Instant::now();
    let mut series = 0.0f64;
    let mut fiber = 0.0f64;
    let mut fiber_small_radius = 0.0f64;
    let mut short = false;
    let mut r = rng(6);
    let fiber_dev = |space: &QuotientSpace, g: &FiniteGroup, z: &[Complex64], w: &[Complex64]| {
        let k = space.quotient_kernel(z, w).unwrap();
        g.elements().iter().fold(0.0f64, |acc, el| {
            let kz = space.quotient_kernel(&el.apply(z), w).unwrap();
            let kw = space.quotient_kernel(z, &el.apply(w)).unwrap();
            acc.max((kz - k).norm()).max((kw - k).norm())
        })
    };
    for family in builtin_families() {
        let s = setup(&family);
        for kind in MODELS {
            for space in spaces(&s, kind) {
                let model = *space.model();
                let b = space
                    .quotient_onb_with(40, BasisMode::LiftedOnly, BasisStrategy::Auto)
                    .unwrap();
                let ell = space.generating_polynomial();
                let mut pairs = 0;
                let mut attempts = 0;
                while pairs < 20 && attempts < 10_000 {
                    attempts += 1;
                    let z = random_point(&mut r, &model, 0.5);
                    let w = random_point(&mut r, &model, 0.5);
                    let sub = space.subspace_kernel(&z, &w).unwrap();
                    series = series.max((sub - space.subspace_kernel_series(&b, &z, &w)).norm());
                    // the closed form divides by ℓ(z)·conj ℓ(w)
                    if ell.evaluate(&z).norm() < 1e-4 || ell.evaluate(&w).norm() < 1e-4 {
                        continue;
                    }
                    let k = space.quotient_kernel(&z, &w).unwrap();
                    let ks = space.quotient_kernel_series(&b, &z, &w).unwrap();
                    series = series.max((k - ks).norm());
                    fiber_small_radius = fiber_small_radius.max(fiber_dev(&space, &s.group, &z, &w));
                    pairs += 1;
                }
                short |= pairs < 20;

                // Fiber invariance over the whole domain, where |ℓ(z) ℓ(w)| keeps
                // the cancellation in the closed form below the tolerance.
                let (mut pairs, mut attempts) = (0, 0);
                while pairs < 20 && attempts < 10_000 {
                    attempts += 1;
                    let z = random_point(&mut r, &model, 0.9);
                    let w = random_point(&mut r, &model, 0.9);
                    if (ell.evaluate(&z) * ell.evaluate(&w)).norm() < 1e-4 {
                        continue;
                    }
                    fiber = fiber.max(fiber_dev(&space, &s.group, &z, &w));
                    pairs += 1;
                }
                short |= pairs < 20;
            }
        }
    }
    let elapsed = start.elapsed();
    suite.record(
        "criterion 6 (kernel series at degree 40, fiber invariance)",
        !short && series < 1e-6 && fiber < 1e-9 && within(elapsed, 60),
        true,
        format!(
            "pairs_complete={} series_dev={} tol=1e-6 fiber_dev={} tol=1e-9 \
             fiber_dev_at_radius_0.5={} time={elapsed:.2?}/60s",
            !short,
            fmt_dev(series),
            fmt_dev(fiber),
            fmt_dev(fiber_small_radius)
        ),
    );
}

// Criterion 7

fn symmetrize(group: &FiniteGroup, f: &MixedPolynomial) -> MixedPolynomial {
    let mut out = MixedPolynomial::zero(f.dim());
    for el in group.elements() {
        out += &act(el, f).unwrap();
    }
    out.scale_real(1.0 / group.order() as f64).prune(1e-13)
}

/// Invariant ambient symbols of bidegree `≤ 2`: symmetrized random symbols,
/// an analytic one, and a lifted quotient symbol.
fn invariant_symbols(s: &Setup, r: &mut SuiteRng) -> Vec<MixedPolynomial> {
    let g = &s.group;
    let d = g.dim();
    let mut out: Vec<MixedPolynomial> = (0..2)
        .map(|_| symmetrize(g, &random_symbol(r, d, 2, 4)))
        .collect();
    out.push(symmetrize(g, &random_polynomial(r, d, 2, 4)));
    let sum: MixedPolynomial = (0..d).fold(MixedPolynomial::zero(d), |acc, i| {
        &acc + &MixedPolynomial::variable(d, i)
    });
    out.push(symmetrize(g, &(&sum * &sum.conj())));
    out.retain(|p| !p.is_zero());
    out
}

fn criterion_7(suite: &mut Suite) {
    let start = Instant::now();
    let mut r = rng(7);

    let mut intertwining = 0.0f64;
    let mut reducing = 0.0f64;
    let mut module_invariance_ok = true;
    let mut module_defect = 0.0f64;
    let mut identity_dev = 0.0f64;
    let mut identity_cases = (0usize, 0usize);
    let mut identity_pattern_ok = true;
    let mut transfer_ok = true;
    let mut transfer_cases = 0;
    let mut bh_dev = 0.0f64;
    let mut bh_pattern_ok = true;
    let mut bh_non_inner = 0usize;

    for family in builtin_families() {
        let s = setup(&family);
        let g = &s.group;
        let n = s.basic.as_ref().unwrap().map.len();
        let symbols = invariant_symbols(&s, &mut r);
        for kind in MODELS {
            let sp = spaces(&s, kind);
            let model = *sp[0].model();
            for space in &sp {
                let chi: &Character = space.character();
                for _ in 0..2 {
                    let u = random_symbol(&mut r, n, 2, 3);
                    let f = random_polynomial(&mut r, n, 2, 3);
                    let dev = intertwining_defect(space, &u, &f).unwrap();
                    intertwining = intertwining.max(dev / symbol_scale(&u) / (1.0 + f.max_coeff()));
                }
                for u in &symbols {
                    let rep = check_reducing(g, chi, &model, u, 4).unwrap();
                    reducing = reducing.max(rep.max_deviation);
                    let rep = check_module_invariance(g, space.generating_polynomial(), &model, u, 4)
                        .unwrap();
                    module_invariance_ok &= rep.invariance_holds;
                    module_defect = module_defect.max(rep.invariance_defect);
                    identity_dev = identity_dev.max(rep.max_deviation);
                    identity_cases.1 += 1;
                    if rep.identity_holds {
                        identity_cases.0 += 1;
                    } else if u.is_holomorphic() || chi.name == "trivial" {
                        identity_pattern_ok = false;
                    }
                }
            }
            if n >= 2 {
                let cutoff = transfer_cutoff(&sp);
                for t in designed_triples(n) {
                    let p = check_product_transfer(&sp, &t.u, &t.v, &t.q, cutoff).unwrap();
                    let c = check_commuting_transfer(&sp, &t.u, &t.v, cutoff).unwrap();
                    for (rep, expect) in [(&p, t.expect_product), (&c, t.expect_commute)] {
                        let nonempty = rep.spaces.iter().all(|s| s.report.exact_region_size > 0);
                        transfer_ok &= nonempty
                            && rep.consistent
                            && expect.map_or(true, |e| rep.verdict == e);
                        transfer_cases += 1;
                    }
                }
            }
            if kind == DomainKind::Polydisc {
                let w1 = MixedPolynomial::variable(n, 0);
                let bh_symbols = [MixedPolynomial::one(n), &w1 + &w1.conj()];
                // coordinate -> (non-inner, failed somewhere)
                let mut seen = vec![(false, false); n];
                for space in &sp {
                    for u in &bh_symbols {
                        let rep = check_brown_halmos(space, u, 12).unwrap();
                        bh_dev = bh_dev.max(rep.max_deviation);
                        for c in &rep.coordinates {
                            bh_pattern_ok &= !c.inner || c.verdict.is_pass();
                            let k = c.coordinate - 1;
                            seen[k].0 |= !c.inner;
                            seen[k].1 |= !c.verdict.is_pass();
                        }
                    }
                }
                for (non_inner, failed) in seen {
                    if non_inner {
                        bh_non_inner += 1;
                        bh_pattern_ok &= failed;
                    }
                }
            }
        }
    }

    // Pinned counterexamples for the two sub-parts that are false as stated.
    let s2 = setup(&Family::Symmetric { d: 2 });
    let sign = s2.characters.iter().find(|c| c.name == "sign").unwrap();
    let space = s2.space(sign, DomainKind::Polydisc).unwrap();
    let bh = check_brown_halmos(&space, &MixedPolynomial::one(2), 12).unwrap();
    bh_pattern_ok &= (bh.coordinates[0].max_deviation - 1.0).abs() < 1e-12;
    let zsum = &MixedPolynomial::variable(2, 0) + &MixedPolynomial::variable(2, 1);
    let ell = space.generating_polynomial();
    let model = HardyModel::polydisc(2);
    let image = qhardy::toeplitz::apply_toeplitz_ambient(&model, &zsum.conj(), &(ell * &zsum)).unwrap();
    identity_pattern_ok &= image.approx_eq(ell, 1e-12);
    let rhs = ell * &model.szego_project(&(&zsum.conj() * &zsum)).unwrap();
    identity_pattern_ok &= rhs.approx_eq(&ell.scale_real(2.0), 1e-12);

    let elapsed = start.elapsed();
    let timed = within(elapsed, 300);
    suite.record(
        "criterion 7 intertwining",
        intertwining < 1e-8,
        true,
        format!("max_dev={} tol=1e-8", fmt_dev(intertwining)),
    );
    suite.record(
        "criterion 7 reducing",
        reducing < 1e-8,
        true,
        format!("max_dev={} tol=1e-8", fmt_dev(reducing)),
    );
    suite.record(
        "criterion 7 module invariance (divisible, invariant quotient)",
        module_invariance_ok,
        true,
        format!("quotient_invariance_defect={}", fmt_dev(module_defect)),
    );
    suite.record(
        "criterion 7 module identity T(l h) = l P(u h)",
        identity_dev < 1e-8 && identity_pattern_ok,
        false,
        format!(
            "max_dev={} tol=1e-8 holds_in={}/{} counterexample_pinned={identity_pattern_ok}",
            fmt_dev(identity_dev),
            identity_cases.0,
            identity_cases.1
        ),
    );
    suite.record(
        "criterion 7 product/commutator transfer consistency",
        transfer_ok,
        true,
        format!("checks={transfer_cases}"),
    );
    suite.record(
        "criterion 7 Brown-Halmos (polydisc, cutoff 12)",
        bh_dev < 1e-8 && bh_pattern_ok,
        false,
        format!(
            "max_dev={} tol=1e-8 inner_pass_and_non_inner_fail={bh_pattern_ok} non_inner_coordinates={bh_non_inner}",
            fmt_dev(bh_dev)
        ),
    );
    suite.record(
        "criterion 7 runtime",
        timed,
        true,
        format!("time={elapsed:.2?}/300s"),
    );
    // The documented failures must keep their documented shape.
    if !identity_pattern_ok {
        suite.record("criterion 7 module identity pattern", false, true, String::new());
    }
    if !bh_pattern_ok {
        suite.record("criterion 7 Brown-Halmos pattern", false, true, String::new());
    }
}

// Criterion 8: sphere moments by Gauss-Legendre quadrature over the simplex.

fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let step = p1 / dp;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// `∫ Π t_j^{m_j}` over `{t ≥ 0, Σ t = mass}` with the last coordinate eliminated.
fn simplex_integral(m: &[u32], mass: f64, rule: &[(f64, f64)]) -> f64 {
    if m.len() == 1 {
        return mass.powi(m[0] as i32);
    }
    rule.iter()
        .map(|&(x, w)| {
            let t = 0.5 * mass * (x + 1.0);
            0.5 * mass * w * t.powi(m[0] as i32) * simplex_integral(&m[1..], mass - t, rule)
        })
        .sum()
}

fn sphere_moment(m: &[u32], rule: &[(f64, f64)]) -> f64 {
    let d = m.len();
    let factorial: f64 = (1..d).map(|k| k as f64).product();
    factorial * simplex_integral(m, 1.0, rule)
}

fn criterion_8(suite: &mut Suite) {
    let s = setup(&Family::Symmetric { d: 2 });
    let sign = s.characters.iter().find(|c| c.name == "sign").unwrap();
    let space = s.space(sign, DomainKind::Polydisc).unwrap();
    let one = MixedPolynomial::one(2);
    let norm = space.quotient_inner_product(&one, &one).unwrap();
    let ell = space.generating_polynomial();
    let direct = HardyModel::polydisc(2)
        .boundary_integral(&(ell * &ell.conj()))
        .unwrap()
        / s.group.order() as f64;
    let measure_dev = (norm - 1.0).norm().max((direct - 1.0).norm());

    let rule = gauss_legendre(24);
    let mut moment_dev = 0.0f64;
    for d in 2..=4usize {
        let model = HardyModel::ball(d);
        for k in 0..=6 {
            for m in monomials(d, k) {
                moment_dev = moment_dev.max((model.moment(&m) - sphere_moment(&m, &rule)).abs());
            }
        }
    }
    suite.record(
        "criterion 8 (boundary measure and sphere moments)",
        measure_dev < 1e-12 && moment_dev < 1e-12,
        true,
        format!(
            "norm_one_dev={} moment_dev={} tol=1e-12",
            fmt_dev(measure_dev),
            fmt_dev(moment_dev)
        ),
    );
}

fn main() -> ExitCode {
    let mut suite = Suite { lines: Vec::new() };
    criterion_1(&mut suite);
    criterion_2(&mut suite);
    criterion_3(&mut suite);
    criterion_4(&mut suite);
    criterion_5(&mut suite);
    criterion_6(&mut suite);
    criterion_7(&mut suite);
    criterion_8(&mut suite);
    let unexpected: Vec<&Line> = suite
        .lines
        .iter()
        .filter(|l| l.pass != l.expected_pass)
        .collect();
    let failing = suite.lines.iter().filter(|l| !l.pass).count();
    println!(
        "acceptance: {} lines, {} PASS, {} FAIL, {} unexpected",
        suite.lines.len(),
        suite.lines.len() - failing,
        failing,
        unexpected.len()
    );
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        for l in unexpected {
            eprintln!("unexpected outcome: {} ({})", l.label, l.detail);
        }
        ExitCode::FAILURE
    }
}
