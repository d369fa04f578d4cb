//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Exits nonzero only under `--strict`, so a criterion that cannot be met is
//! reported without hiding the others.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use nearsub_core::classifier::{replay, Classification, Replay, Theorem, Verdict};
use nearsub_core::polycert::{sign_on_ray, Limit, PolyError, Polynomial, RationalFunction, Ray, RaySign};
use nearsub_core::rational::{int, rat, to_f64_nearest, Rational};
use nearsub_core::shiftcalc::{gamma_analysis, q_diagonal, GammaBound, GammaValue};
use nearsub_core::testing::{random_spec, random_theorem2_spec};
use nearsub_core::{classify, fixtures, WeightSpec};
use nearsub_oracle::unbounded::OscillatingIncrements;
use nearsub_oracle::{cross_validate, norm_sweep, DEFAULT_RELATIVE_TOL};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn timed(budget: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let elapsed = start.elapsed();
    o.detail = format!("{}; {:.3}s of {}s", o.detail, elapsed.as_secs_f64(), budget.as_secs());
    o.pass &= elapsed < budget;
    o
}

fn gamma_sup(v: &Verdict) -> Option<Rational> {
    match v.certificate.gamma.as_ref()?.sup.as_ref()? {
        GammaBound::BoundedWithSup { sup, .. } => Some(sup.clone()),
        GammaBound::Unbounded => None,
    }
}

fn criterion1() -> Outcome {
    timed(Duration::from_secs(1), || {
        let spec = fixtures::example1();
        let v = classify(&spec).unwrap();
        let via = v.classification == Classification::NearSubnormal { via: Theorem::Theorem2 };
        let k = v.certificate.k;
        let limit = v.certificate.gamma.as_ref().map(|g| g.left_limit.clone());
        let ga = gamma_analysis(&spec, &q_diagonal(&spec).unwrap()).unwrap();
        let far = match ga.at(-10_000) {
            GammaValue::Value(g) => g,
            GammaValue::Undefined => int(1),
        };
        let pass = via && k == Some(0) && limit == Some(Limit::Finite(int(0))) && far < rat(1, 10_000_000);
        outcome(pass, format!("{}, k = {k:?}, left γ² limit {limit:?}, γ²(-10⁴) = {:e}", v.summary(), to_f64_nearest(&far)))
    })
}

fn criterion2() -> Outcome {
    timed(Duration::from_secs(1), || {
        let v = classify(&fixtures::example2()).unwrap();
        let via = v.classification == Classification::NearSubnormal { via: Theorem::Theorem1 };
        let g = v.certificate.gamma.clone().unwrap();
        let pass = via && g.right_limit == Limit::Finite(int(4)) && g.left_limit == Limit::Finite(int(0));
        outcome(pass, format!("{}, γ² limits left {:?} right {:?}", v.summary(), g.left_limit, g.right_limit))
    })
}

fn criterion3() -> Outcome {
    timed(Duration::from_secs(5), || {
        let spec = fixtures::example3();
        let v = classify(&spec).unwrap();
        let via = matches!(v.classification, Classification::HyponormalNotNearSubnormal { via: Theorem::Theorem3, .. });
        let j0 = v.certificate.j0;
        // e_{j0} lies in the kernel while T e_{j0} does not.
        let r = cross_validate(&spec, 500, DEFAULT_RELATIVE_TOL, &[]).unwrap();
        let hit = r.invariance_violations.iter().find(|x| Some(x.index) == j0);
        let pass = via && j0 == Some(0) && hit.is_some();
        outcome(pass, format!("{}, j0 = {j0:?}, dim {}, violations {:?}", v.summary(), r.dim, r.invariance_violations))
    })
}

fn criterion4() -> Outcome {
    timed(Duration::from_secs(5), || {
        let spec = fixtures::theorem4();
        let v = classify(&spec).unwrap();
        let via = matches!(v.classification, Classification::HyponormalNotNearSubnormal { via: Theorem::Theorem4, .. });
        let j0 = v.certificate.j0.unwrap_or(i64::MIN);
        let b1 = spec.eval_exact(j0 + 1).unwrap();
        let b2 = spec.eval_exact(j0 + 2).unwrap();
        let exact = to_f64_nearest(&(&b1 * (&b2 * &b2 - &b1 * &b1)));
        let r = cross_validate(&spec, 200, DEFAULT_RELATIVE_TOL, &[]).unwrap();
        let at_one = r.invariance_violations.iter().find(|x| x.index == 1);
        let close = at_one.is_some_and(|x| (x.magnitude - exact).abs() <= 0.01 * exact);
        let pass = via && j0 == 0 && exact == 10.0 && close;
        outcome(pass, format!("{}, j0 = {j0}, exact {exact}, measured {:?}", v.summary(), at_one.map(|x| x.magnitude)))
    })
}

fn corpus() -> Vec<WeightSpec> {
    let mut rng = StdRng::seed_from_u64(2024);
    let mut specs = vec![fixtures::example1(), fixtures::example2(), fixtures::example3(), fixtures::theorem4()];
    specs.extend((0..50).map(|_| random_spec(&mut rng)));
    specs
}

fn criterion5() -> Outcome {
    let mut worst_diag = 0.0f64;
    let mut worst_off = 0.0f64;
    let mut pass = true;
    for spec in corpus() {
        let r = cross_validate(&spec, 200, DEFAULT_RELATIVE_TOL, &[]).unwrap();
        let scale = 1.0 + r.max_weight_sq;
        worst_diag = worst_diag.max(r.q_diag_residual / scale);
        worst_off = worst_off.max(r.q_offdiag_residual / scale);
        pass &= r.dim == 401 && r.q_diag_residual < 1e-10 * scale && r.q_offdiag_residual < 1e-12 * scale;
    }
    outcome(pass, format!("54 specs at dim 401, scaled diag residual {worst_diag:e}, scaled offdiag {worst_off:e}"))
}

fn criterion6() -> Outcome {
    let mut rng = StdRng::seed_from_u64(6);
    let mut flat_specs: Vec<WeightSpec> = (0..20).map(|_| random_theorem2_spec(&mut rng)).collect();
    let mut worst_gamma = 0.0f64;
    let mut worst_flat = 0.0f64;
    let mut skipped = 0;
    let mut within = 0;
    let mut fixture_worst = 0.0f64;
    let mut pass = true;
    for (i, spec) in corpus().into_iter().enumerate() {
        let v = classify(&spec).unwrap();
        if v.classification == (Classification::NearSubnormal { via: Theorem::Theorem2 }) {
            flat_specs.push(spec.clone());
        }
        let r = cross_validate(&spec, 200, DEFAULT_RELATIVE_TOL, &[]).unwrap();
        if let Some(g) = r.gamma_residual {
            worst_gamma = worst_gamma.max(g);
            if i < 4 {
                fixture_worst = fixture_worst.max(g);
            }
            within += usize::from(g < 1e-8);
            pass &= g < 1e-8;
        }
        skipped += r.gamma_skipped;
    }
    let flat_count = flat_specs.len();
    for spec in flat_specs {
        let r = cross_validate(&spec, 200, DEFAULT_RELATIVE_TOL, &[]).unwrap();
        match r.flat_zero_max {
            Some(m) => {
                worst_flat = worst_flat.max(m);
                pass &= m < 1e-8;
            }
            None => pass = false,
        }
    }
    outcome(pass, format!("γ residual {worst_gamma:e}, fixtures {fixture_worst:e}, {within}/54 specs within 1e-8 ({skipped} near-null indices skipped); {flat_count} flat specs, max |S| there {worst_flat:e}"))
}

fn eval_i128(coeffs: &[i64], n: i64) -> i128 {
    coeffs.iter().rev().fold(0i128, |acc, &c| acc * n as i128 + c as i128)
}

/// Brute-force check of one ray verdict over 10⁴ integers.
fn sign_agrees(num: &[i64], den: &[i64], ray: Ray) -> bool {
    let f = RationalFunction::new(Polynomial::from_ints(num), Polynomial::from_ints(den)).unwrap();
    let points: Vec<i64> = match ray {
        Ray::AtLeast(a) => (a..a + 10_000).collect(),
        Ray::AtMost(a) => (a - 9_999..=a).rev().collect(),
    };
    let verdict = sign_on_ray(&f, ray);
    let mut signs = Vec::new();
    for &n in &points {
        let d = eval_i128(den, n);
        if d != 0 {
            signs.push((n, (eval_i128(num, n) * d.signum()).cmp(&0)));
        } else if f.eval_int(n).is_none() {
            return matches!(verdict, Err(PolyError::PoleOnRay { .. }));
        }
    }
    let Ok(verdict) = verdict else { return false };
    let in_zeros = |z: &[i64], n: i64| z.binary_search(&n).is_ok() || z.contains(&n);
    match verdict {
        RaySign::StrictlyPositive => signs.iter().all(|(_, s)| *s == Ordering::Greater),
        RaySign::StrictlyNegative => signs.iter().all(|(_, s)| *s == Ordering::Less),
        RaySign::IdenticallyZero => signs.iter().all(|(_, s)| *s == Ordering::Equal),
        RaySign::HasZeroAt { zeros, elsewhere } => signs
            .iter()
            .all(|(n, s)| if in_zeros(&zeros, *n) { *s == Ordering::Equal } else { *s == elsewhere }),
        RaySign::MixedSign { positive, negative, zeros } => {
            let first = |want: Ordering| signs.iter().find(|(_, s)| *s == want).map(|(n, _)| *n);
            first(Ordering::Greater) == Some(positive)
                && first(Ordering::Less) == Some(negative)
                && signs.iter().all(|(n, s)| (*s == Ordering::Equal) == in_zeros(&zeros, *n))
        }
    }
}

fn criterion7() -> Outcome {
    timed(Duration::from_secs(60), || {
        let mut rng = StdRng::seed_from_u64(7);
        let mut verdicts: Vec<(WeightSpec, Verdict)> = Vec::new();

        let mut telescoping = 0;
        for _ in 0..500 {
            let spec = random_spec(&mut rng);
            let q = q_diagonal(&spec).unwrap();
            let a = spec.window_start + rng.gen_range(-40..=40);
            let b = a + rng.gen_range(1..=80);
            let sum: Rational = (a + 1..=b).map(|n| q.at(n)).sum();
            telescoping += usize::from(sum == spec.eval_sq(b).unwrap() - spec.eval_sq(a).unwrap());
        }

        let mut signs = 0;
        for _ in 0..200 {
            let coeffs = |rng: &mut StdRng| (0..rng.gen_range(1..=5)).map(|_| rng.gen_range(-5..=5)).collect::<Vec<i64>>();
            let num = coeffs(&mut rng);
            let mut den = coeffs(&mut rng);
            if den.iter().all(|c| *c == 0) {
                den[0] = 1;
            }
            let a = rng.gen_range(-60..=60);
            let ray = if rng.gen() { Ray::AtLeast(a) } else { Ray::AtMost(a) };
            signs += usize::from(sign_agrees(&num, &den, ray));
        }

        let mut scaled_same = 0;
        for spec in [fixtures::example1(), fixtures::example2(), fixtures::example3(), fixtures::theorem4()] {
            let base = classify(&spec).unwrap();
            for _ in 0..10 {
                let c = rat(rng.gen_range(1..=1000), rng.gen_range(1..=1000));
                let scaled = spec.scaled(&c);
                let w = classify(&scaled).unwrap();
                let same = w.classification == base.classification
                    && w.certificate.theorem == base.certificate.theorem
                    && w.certificate.k == base.certificate.k
                    && w.certificate.j0 == base.certificate.j0;
                scaled_same += usize::from(same);
                verdicts.push((scaled, w));
            }
            verdicts.push((spec, base));
        }
        for _ in 0..100 {
            let spec = random_spec(&mut rng);
            let v = classify(&spec).unwrap();
            verdicts.push((spec, v));
        }
        let replayed = verdicts.iter().filter(|(s, v)| replay(&v.certificate, s) == Replay::Consistent).count();

        let pass = telescoping == 500 && signs == 200 && scaled_same == 40 && replayed == verdicts.len();
        outcome(
            pass,
            format!(
                "telescoping {telescoping}/500, ray signs {signs}/200, scalings {scaled_same}/40, replay {replayed}/{}",
                verdicts.len()
            ),
        )
    })
}

fn criterion8() -> Outcome {
    let sweep = [50, 200, 800];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, spec) in [("ex1", fixtures::example1()), ("ex2", fixtures::example2())] {
        let v = classify(&spec).unwrap();
        let sup = gamma_sup(&v).map(|s| to_f64_nearest(&s).sqrt()).unwrap_or(f64::NAN);
        let trace = norm_sweep(&spec, &sweep, DEFAULT_RELATIVE_TOL).unwrap();
        let norms: Vec<f64> = trace.iter().map(|p| p.norm).collect();
        let spread = norms.iter().cloned().fold(f64::MIN, f64::max) - norms.iter().cloned().fold(f64::MAX, f64::min);
        let last = *norms.last().unwrap();
        let ok = spread < 1e-4 && (last - sup).abs() < 1e-3;
        pass &= ok;
        parts.push(format!("{name} trace {norms:?} vs sup γ {sup} ({})", if ok { "plateau" } else { "no plateau" }));
    }
    let source = OscillatingIncrements::new(4000);
    let trace = norm_sweep(&source, &[25, 100, 400], DEFAULT_RELATIVE_TOL).unwrap();
    let ratios: Vec<f64> = trace.windows(2).map(|w| w[1].norm / w[0].norm).collect();
    let grows = ratios.iter().all(|r| *r > 1.5);
    pass &= grows;
    parts.push(format!("unbounded fixture ratios ‖S_4N‖/‖S_N‖ {ratios:?}"));
    outcome(pass, parts.join("; "))
}

fn main() {
    let strict = std::env::args().any(|a| a == "--strict");
    let criteria: [(u32, &str, fn() -> Outcome); 8] = [
        (1, "Example 1 via Theorem 2, k = 0, left γ² limit 0", criterion1),
        (2, "Example 2 via Theorem 1, γ² limits 0 and 4", criterion2),
        (3, "Example 3 via Theorem 3 with kernel obstruction at j0", criterion3),
        (4, "flat-pair fixture via Theorem 4, violation 10 at n = 1", criterion4),
        (5, "dense commutator matches exact diagonal at dim 401", criterion5),
        (6, "transformed subdiagonal matches γ and vanishes on flat regions", criterion6),
        (7, "property suite within 60 s", criterion7),
        (8, "norm sweep plateaus and growth", criterion8),
    ];
    let mut failed = 0;
    for (id, title, run) in criteria {
        let o = run();
        failed += usize::from(!o.pass);
        println!("{} criterion {id}: {title} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {}/8 passed", 8 - failed);
    if strict && failed > 0 {
        std::process::exit(1);
    }
}
