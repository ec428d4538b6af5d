//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::time::Instant;

use copolar::newton::{newton_number, ExponentSet};
use copolar::scalar::{factorial, ratio};
use copolar::transforms::{
    capacity, extremal_convex_image, extremal_gap, legendre_duality_residual, multiplicative_combination,
    reinhardt_volume, GeodesicSolver, GridBox, ReinhardtSpec,
};
use copolar::{
    copolar_combination, copolar_of_body, copolar_of_dual, covolume, minkowski_combination, Body, Dual,
    Error, ExactBody,
};
use copolar_cli::oracle::{monte_carlo_covolume, shoelace_covolume};
use copolar_cli::verify::{random_body, verify_suite, Report, VerifyConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const EPS_P: f64 = 1e-9;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn cosimplex_bodies() -> (Body, Body) {
    (
        Body::cosimplex(vec![1.0 / 3.0, 1.0]).unwrap(),
        Body::cosimplex(vec![1.0, 1.0 / 3.0]).unwrap(),
    )
}

fn skewed_polydisks() -> (ReinhardtSpec, ReinhardtSpec) {
    (
        ReinhardtSpec::polydisk(vec![-1.0 / 3.0, -1.0]).unwrap(),
        ReinhardtSpec::polydisk(vec![-1.0, -1.0 / 3.0]).unwrap(),
    )
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (p0, p1) = cosimplex_bodies();
    let pc = copolar_combination(&p0, &p1, &0.5).unwrap();
    let pm = minkowski_combination(&p0, &p1, &0.5).unwrap();
    let normal_ok = pc.normals().len() == 1
        && pc.normals()[0].iter().all(|x| close(*x, 2.0 / 3.0, 1e-12));
    let (c0, c1, cc, cm) = (
        covolume(&p0).unwrap(),
        covolume(&p1).unwrap(),
        covolume(&pc).unwrap(),
        covolume(&pm).unwrap(),
    );
    let expected_vertices = [[0.0, 2.0], [0.5, 0.5], [2.0, 0.0]];
    let vertices = pm.vertices().unwrap().vertices;
    let vertices_ok = vertices.len() == 3
        && vertices
            .iter()
            .zip(&expected_vertices)
            .all(|(v, w)| close(v[0], w[0], 1e-12) && close(v[1], w[1], 1e-12));
    let float_ok = close(cc, 9.0 / 8.0, 1e-12)
        && close(cm, 1.0, 1e-12)
        && close(c0, 1.5, 1e-12)
        && close(c1, 1.5, 1e-12);

    let e0 = ExactBody::cosimplex(vec![ratio(1, 3), ratio(1, 1)]).unwrap();
    let e1 = ExactBody::cosimplex(vec![ratio(1, 1), ratio(1, 3)]).unwrap();
    let ec = copolar_combination(&e0, &e1, &ratio(1, 2)).unwrap();
    let em = minkowski_combination(&e0, &e1, &ratio(1, 2)).unwrap();
    let exact_slack = (covolume(&e0).unwrap() + covolume(&e1).unwrap()) / ratio(2, 1) - covolume(&ec).unwrap();
    let exact_ok = ec.normals() == [vec![ratio(2, 3), ratio(2, 3)]]
        && covolume(&ec).unwrap() == ratio(9, 8)
        && covolume(&em).unwrap() == ratio(1, 1)
        && exact_slack == ratio(3, 8);
    // (rBM) in the plane: Covol(P_m)^(1/2) <= mean of Covol^(1/2), i.e. <= (3/2)^(1/2)
    let rbm_ok = cm.sqrt() <= 1.5f64.sqrt();
    let elapsed = start.elapsed().as_secs_f64();
    outcome(
        normal_ok && vertices_ok && float_ok && exact_ok && rbm_ok && elapsed < 1.0,
        format!("covol copolar {cc}, minkowski {cm}, endpoints {c0}/{c1}; exact slack {exact_slack}; {elapsed:.3}s"),
    )
}

fn inequality_counts(report: &Report) -> (usize, usize, f64) {
    let mut violations = 0;
    let mut strict_failures = 0;
    let mut min_strict = f64::INFINITY;
    for inst in &report.instances {
        if inst.error.is_some() {
            violations += 1;
            continue;
        }
        let n = report.config.dimension as f64;
        let root = |c: f64| c.powf(1.0 / n);
        for r in &inst.records {
            let mean = (1.0 - r.t) * inst.covolume_p0 + r.t * inst.covolume_p1;
            let root_mean = (1.0 - r.t) * root(inst.covolume_p0) + r.t * root(inst.covolume_p1);
            if r.covolume_copolar > mean + EPS_P * (1.0 + mean) {
                violations += 1;
            }
            if root(r.covolume_minkowski) > root_mean + EPS_P * (1.0 + root_mean) {
                violations += 1;
            }
            if !inst.equal {
                min_strict = min_strict.min(r.slack_cobm);
                if r.slack_cobm <= 1e-10 {
                    strict_failures += 1;
                }
            }
        }
    }
    (violations, strict_failures, min_strict)
}

fn criterion_2(suites: &[(Report, f64)]) -> Outcome {
    let mut pass = true;
    let mut details = Vec::new();
    for (report, seconds) in suites {
        let (violations, strict_failures, min_strict) = inequality_counts(report);
        pass &= violations == 0 && strict_failures == 0 && *seconds < 60.0 && report.instances.len() == 500;
        details.push(format!(
            "n={}: {} violations, {} non-strict, min strict slack {:.3e}, {:.2}s",
            report.config.dimension, violations, strict_failures, min_strict, seconds
        ));
    }
    outcome(pass, details.join("; "))
}

fn criterion_3() -> Outcome {
    let mut involution_failures = 0;
    let mut scaling_failures = 0;
    for n in 2..=4 {
        let cfg = VerifyConfig {
            dimension: n,
            ..VerifyConfig::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(42 + n as u64);
        for _ in 0..500 {
            let p = random_body(&mut rng, &cfg);
            let back = copolar_of_dual(&copolar_of_body(&p).unwrap()).unwrap();
            let same = back.normals().len() == p.normals().len()
                && back
                    .normals()
                    .iter()
                    .zip(p.normals())
                    .all(|(a, b)| a.iter().zip(b).all(|(x, y)| close(*x, *y, 1e-9)));
            involution_failures += usize::from(!same);
            let c = covolume(&p).unwrap();
            for lambda in [0.5f64, 2.0] {
                let expect = lambda.powi(n as i32) * c;
                let got = covolume(&p.scaled(&lambda)).unwrap();
                scaling_failures += usize::from((got - expect).abs() > 1e-9 * expect);
            }
        }
    }
    outcome(
        involution_failures == 0 && scaling_failures == 0,
        format!("1500 bodies: {involution_failures} involution, {scaling_failures} scaling failures"),
    )
}

fn criterion_4(plane: &Report, space: &Report) -> Outcome {
    let mut max_dev: f64 = 0.0;
    let mut planar = 0;
    let (p0, p1) = cosimplex_bodies();
    let mut bodies = vec![p0, p1];
    for inst in &plane.instances {
        bodies.push(Body::new(2, inst.p0.clone()).unwrap());
        bodies.push(Body::new(2, inst.p1.clone()).unwrap());
    }
    for pair in bodies.chunks(2) {
        let mut all = pair.to_vec();
        for t in [0.25, 0.5, 0.75] {
            all.push(copolar_combination(&pair[0], &pair[1], &t).unwrap());
            all.push(minkowski_combination(&pair[0], &pair[1], &t).unwrap());
        }
        for body in all {
            let normals: Vec<[f64; 2]> = body.normals().iter().map(|b| [b[0], b[1]]).collect();
            max_dev = max_dev.max((shoelace_covolume(&normals) - covolume(&body).unwrap()).abs());
            planar += 1;
        }
    }
    let plane_ok = max_dev <= 1e-12;

    let mut rng = ChaCha8Rng::seed_from_u64(4242);
    let mut worst_z: f64 = 0.0;
    for inst in space.instances.iter().take(20) {
        let c = covolume(&Body::new(3, inst.p0.clone()).unwrap()).unwrap();
        let est = monte_carlo_covolume(&inst.p0, 10_000_000, &mut rng);
        worst_z = worst_z.max((est.value - c).abs() / est.std_error);
    }
    outcome(
        plane_ok && worst_z <= 3.0,
        format!("shoelace max deviation {max_dev:.2e} over {planar} bodies; Monte Carlo worst |z| {worst_z:.2} over 20"),
    )
}

fn criterion_5() -> Outcome {
    let cases: [(usize, Vec<Vec<u64>>, i64); 4] = [
        (2, vec![vec![2, 0], vec![0, 3]], 6),
        (2, vec![vec![1, 0], vec![0, 1]], 1),
        (2, vec![vec![2, 0], vec![0, 2], vec![5, 5]], 4),
        (3, vec![vec![3, 0, 0], vec![0, 3, 0], vec![0, 0, 3]], 27),
    ];
    let mut pass = true;
    let mut values = Vec::new();
    for (n, exps, expected) in cases {
        let number = newton_number::<f64>(&ExponentSet::new(n, exps).unwrap()).unwrap();
        pass &= close(number.value, expected as f64, 1e-9) && number.integer == Some(expected);
        values.push(format!("{}", number.value));
    }
    let degenerate = newton_number::<f64>(&ExponentSet::new(2, vec![vec![2, 2]]).unwrap());
    pass &= matches!(degenerate, Err(Error::NotCobounded { .. }));
    outcome(pass, format!("numbers [{}], (2,2) -> NotCobounded", values.join(", ")))
}

fn criterion_6() -> Outcome {
    let mut pass = true;
    let mut details = Vec::new();
    for (name, apex) in [("bidisk", vec![-1.0, -1.0]), ("L0", vec![-1.0 / 3.0, -1.0])] {
        let l = Dual::orthant(apex).unwrap();
        let residual = |m: usize| {
            let source = GridBox::cube(2, -8.0, 0.0, m).unwrap();
            let target = GridBox::cube(2, 0.0, 3.0, m).unwrap();
            legendre_duality_residual(&l, &source, &target, f64::INFINITY).unwrap()
        };
        let (r128, r256) = (residual(128), residual(256));
        pass &= r256 <= 0.05 && r256 <= 0.6 * r128;
        details.push(format!("{name}: {r256:.4} at 256, ratio {:.3}", r256 / r128));
    }
    outcome(pass, details.join("; "))
}

fn criterion_7() -> Outcome {
    let (k0, k1) = skewed_polydisks();
    let grid = GridBox::cube(2, -6.0, 0.0, 128).unwrap();
    let solver = GeodesicSolver::new(&k0, &k1, &grid).unwrap();
    let eps = solver.tolerance();
    let path: Vec<_> = [0.0, 0.25, 0.5, 0.75, 1.0].iter().map(|&t| solver.at(t).unwrap()).collect();
    let in_range = path.iter().all(|u| u.values().iter().all(|v| (-1.0..=0.0).contains(v)));
    let mut worst_convexity = f64::NEG_INFINITY;
    for node in 0..grid.len() {
        let v: Vec<f64> = path.iter().map(|u| u.values()[node]).collect();
        for (a, m, b) in [(0, 1, 2), (1, 2, 3), (2, 3, 4), (0, 2, 4)] {
            worst_convexity = worst_convexity.max(v[m] - 0.5 * (v[a] + v[b]));
        }
    }
    let u0 = extremal_convex_image(&k0, &grid).unwrap();
    let distances: Vec<f64> = (1..=6)
        .map(|k| solver.at(0.5f64.powi(k)).unwrap().sup_distance(&u0))
        .collect();
    let monotone = distances.windows(2).all(|w| w[1] < w[0]);
    let kt = multiplicative_combination(&k0, &k1, 0.5).unwrap();
    let caps = [k0.capacity().unwrap(), k1.capacity().unwrap(), kt.capacity().unwrap()];
    let (p0, p1) = cosimplex_bodies();
    let via_covolume = factorial::<f64>(2) * covolume(&copolar_combination(&p0, &p1, &0.5).unwrap()).unwrap();
    let caps_ok = close(caps[0], 3.0, 1e-12)
        && close(caps[1], 3.0, 1e-12)
        && close(caps[2], 2.25, 1e-12)
        && close(caps[2], via_covolume, 1e-12)
        && close(capacity(kt.log_image()).unwrap(), caps[2], 0.0);
    outcome(
        in_range && worst_convexity <= eps && monotone && caps_ok,
        format!(
            "range ok {in_range}; midpoint defect {worst_convexity:.2e} (εg {eps:.4}); distances {:?}; Cap {:?}",
            distances.iter().map(|d| format!("{d:.4}")).collect::<Vec<_>>(),
            caps
        ),
    )
}

fn criterion_8() -> Outcome {
    let (k0, k1) = skewed_polydisks();
    let grid = GridBox::cube(2, -6.0, 0.0, 128).unwrap();
    let interior = extremal_gap(&k0, &k1, 0.5, &grid).unwrap();
    let constant = extremal_gap(&k0, &k0, 0.5, &grid).unwrap();
    let eps = interior.tolerance;
    outcome(
        interior.gap > 10.0 * eps && constant.gap <= 3.0 * constant.tolerance,
        format!(
            "skewed pair gap {:.4} vs 10εg {:.4}; K0 = K1 gap {:.4} vs 3εg {:.4}",
            interior.gap,
            10.0 * eps,
            constant.gap,
            3.0 * constant.tolerance
        ),
    )
}

fn criterion_9() -> Outcome {
    let (k0, k1) = skewed_polydisks();
    let kt = multiplicative_combination(&k0, &k1, 0.5).unwrap();
    let vol = |k: &ReinhardtSpec| reinhardt_volume(k, 8.0, 256).unwrap();
    let (v0, v1, vt) = (vol(&k0), vol(&k1), vol(&kt));
    let bound = (v0.value * v1.value).sqrt() * (1.0 - 1e-3);
    let bidisk = vol(&ReinhardtSpec::polydisk(vec![-1.0, -1.0]).unwrap());
    let exact = std::f64::consts::PI.powi(2) * (-4.0f64).exp();
    let rel = (bidisk.value - exact).abs() / exact;
    outcome(
        vt.value >= bound && rel <= 1e-3,
        format!(
            "Vol(K_1/2) {:.5} >= {:.5}; polydisk relative error {rel:.2e}",
            vt.value, bound
        ),
    )
}

fn timed_suite(dimension: usize) -> (Report, f64) {
    let cfg = VerifyConfig {
        dimension,
        ..VerifyConfig::default()
    };
    let start = Instant::now();
    let report = verify_suite(&cfg);
    (report, start.elapsed().as_secs_f64())
}

fn main() {
    let suites = [timed_suite(2), timed_suite(3)];
    let results = [
        criterion_1(),
        criterion_2(&suites),
        criterion_3(),
        criterion_4(&suites[0].0, &suites[1].0),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
    ];
    let mut failed = 0;
    for (i, r) in results.iter().enumerate() {
        println!("criterion {}: {} — {}", i + 1, if r.pass { "PASS" } else { "FAIL" }, r.detail);
        failed += usize::from(!r.pass);
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
