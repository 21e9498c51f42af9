//! Acceptance suite: twelve criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the table is always printed:
//! `cargo test -p coarse-embed-cli --test acceptance`. Every tolerance used is
//! a named constant below.

mod common;

use std::time::{Duration, Instant};

use coarse_embed::coarse::{empirical_moduli, verify_coarse_bounds, MonotoneStepFunction};
use coarse_embed::embed::{isometric_hilbert_test, moore_factorize, schoenberg_embed, snowflake_embed};
use coarse_embed::kernels::{
    check_negative_definite, check_positive_definite, fractional_power, induced_kernel, levy_constant,
    schoenberg_transform, verify_levy_representation, zero_extension, QuadratureParams, SymmetricKernel, Verdict,
};
use coarse_embed::metrics::{
    lp_distance_matrix, lp_power_kernel, random_point_cloud, CloudDistribution, FiniteMetric, PointCloud,
};
use coarse_embed::numerics::{eigh_symmetric, Matrix};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{assert_schema_valid, dist, fixture, read_points, run};

const EIGEN_REL_TOL: f64 = 1e-10;
const EIGEN_LARGE_N: usize = 200;
const EIGEN_LARGE_BUDGET: Duration = Duration::from_secs(2);
const MOORE_REL_TOL: f64 = 1e-8;
const SCHOENBERG_REL_TOL: f64 = 1e-6;
const EXACT_FORM_TOL: f64 = 1e-9;
const SNOWFLAKE_REL_TOL: f64 = 1e-6;
const SNOWFLAKE_L2_TOL: f64 = 1e-8;
const MODULI_TOL: f64 = 1e-6;
const LEVY_REL_TOL: f64 = 1e-4;
const LEVY_C_HALF_RANGE: (f64, f64) = (0.2815, 0.2827);
const BRUTE_FORCE_SAMPLES: usize = 100_000;
const CLI_DISTANCE_TOL: f64 = 1e-12;
const SUITE_BUDGET: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cloud(rng: &mut ChaCha8Rng, min_n: usize, max_n: usize, max_dim: usize) -> PointCloud {
    let n = rng.random_range(min_n..=max_n);
    let dim = rng.random_range(1..=max_dim);
    let dist = if rng.random_bool(0.5) {
        CloudDistribution::UniformBox { low: -1.0, high: 1.0 }
    } else {
        CloudDistribution::Gaussian { mean: 0.0, std_dev: 3.0 }
    };
    random_point_cloud(n, dim, rng.random(), dist).unwrap()
}

fn nd_kernel(rng: &mut ChaCha8Rng, min_n: usize, max_n: usize) -> SymmetricKernel {
    let c = cloud(rng, min_n, max_n, 8);
    let p = [0.5, 1.0, 1.5, 2.0][rng.random_range(0..4)];
    lp_power_kernel(&c, p).unwrap()
}

fn gram_kernel(rng: &mut ChaCha8Rng, max_n: usize, max_dim: usize) -> SymmetricKernel {
    let x = cloud(rng, 1, max_n, max_dim).coords().clone();
    SymmetricKernel::new(x.matmul(&x.transpose())).unwrap()
}

fn rel_diff(a: &SymmetricKernel, b: &SymmetricKernel) -> f64 {
    a.max_abs_diff(b) / a.scale().max(b.scale())
}

fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let magnitude = 10f64.powi(rng.random_range(-3..=3));
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = magnitude * rng.random_range(-1.0..1.0);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    m
}

fn criterion_1() -> Outcome {
    let mut rng = rng(1);
    let (mut worst_rec, mut worst_orth) = (0.0_f64, 0.0_f64);
    for case in 0..500 {
        let n = rng.random_range(1..=50);
        let a = random_symmetric(&mut rng, n);
        let s = eigh_symmetric(&a).map_err(|e| format!("case {case}: {e}"))?;
        let rec = s.reconstruct();
        let err = (0..n * n).map(|k| (rec.as_slice()[k] - a.as_slice()[k]).powi(2)).sum::<f64>().sqrt();
        worst_rec = worst_rec.max(err / a.frobenius_norm());
        let vtv = s.eigenvectors.transpose().matmul(&s.eigenvectors);
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst_orth = worst_orth.max((vtv[(i, j)] - target).abs());
            }
        }
    }
    ensure(worst_rec <= EIGEN_REL_TOL, || format!("reconstruction error {worst_rec:e}"))?;
    ensure(worst_orth <= EIGEN_REL_TOL, || format!("orthonormality error {worst_orth:e}"))?;

    let big = random_symmetric(&mut rng, EIGEN_LARGE_N);
    let start = Instant::now();
    eigh_symmetric(&big).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    ensure(took < EIGEN_LARGE_BUDGET, || format!("n = {EIGEN_LARGE_N} took {took:?}"))?;
    Ok(format!("500 matrices, reconstruction {worst_rec:.1e}, orthonormality {worst_orth:.1e}, n = 200 in {took:.2?}"))
}

fn criterion_2() -> Outcome {
    let mut rng = rng(2);
    let mut worst = 0.0_f64;
    for case in 0..200 {
        let k = gram_kernel(&mut rng, 40, 10);
        let e = moore_factorize(&k, None).map_err(|e| format!("case {case}: {e}"))?;
        let g = SymmetricKernel::new(e.gram()).unwrap();
        worst = worst.max(rel_diff(&k, &g));
    }
    ensure(worst <= MOORE_REL_TOL, || format!("Gram error {worst:e}"))?;
    Ok(format!("200 kernels, worst Gram error {worst:.1e}"))
}

fn criterion_3() -> Outcome {
    let mut rng = rng(3);
    let mut worst = 0.0_f64;
    for case in 0..200 {
        let n = nd_kernel(&mut rng, 2, 30);
        for base in [0, n.n() - 1] {
            let e = schoenberg_embed(&n, base, None).map_err(|e| format!("case {case} base {base}: {e}"))?;
            worst = worst.max(rel_diff(&n, &induced_kernel(&e)));
        }
    }
    ensure(worst <= SCHOENBERG_REL_TOL, || format!("round-trip error {worst:e}"))?;
    Ok(format!("200 kernels x 2 bases, worst error {worst:.1e}"))
}

fn criterion_4() -> Outcome {
    let mut rng = rng(4);
    let mut worst = f64::INFINITY;
    for case in 0..100 {
        let n = nd_kernel(&mut rng, 1, 30);
        for t in [0.01, 0.1, 1.0, 10.0] {
            let k = schoenberg_transform(&n, t).map_err(|e| e.to_string())?;
            let r = check_positive_definite(&k, None).map_err(|e| e.to_string())?;
            ensure(r.verdict == Verdict::Pass, || {
                format!("case {case}, t = {t}: min eigenvalue {:e}", r.extremal_eigenvalue)
            })?;
            worst = worst.min(r.extremal_eigenvalue);
        }
    }
    Ok(format!("400 transforms pass, smallest eigenvalue {worst:.3e}"))
}

fn criterion_5() -> Outcome {
    let cubic = SymmetricKernel::from_rows(
        &(0..4).map(|i| (0..4).map(|j| (i as f64 - j as f64).abs().powi(3)).collect()).collect::<Vec<_>>(),
    )
    .unwrap();
    let r = check_negative_definite(&cubic, None).map_err(|e| e.to_string())?;
    ensure(r.verdict == Verdict::Fail, || "cubic kernel passed the ND test".into())?;
    let cubic_value = cubic.quadratic_form(&[1.0, -1.0, -1.0, 1.0]);
    ensure((cubic_value - 20.0).abs() <= EXACT_FORM_TOL, || format!("cubic form value {cubic_value}"))?;

    let star = FiniteMetric::from_rows(&[
        vec![0.0, 1.0, 1.0, 1.0],
        vec![1.0, 0.0, 2.0, 2.0],
        vec![1.0, 2.0, 0.0, 2.0],
        vec![1.0, 2.0, 2.0, 0.0],
    ])
    .unwrap();
    let t = isometric_hilbert_test(&star, None).map_err(|e| e.to_string())?;
    ensure(!t.embeddable && t.report.verdict == Verdict::Fail, || "K1,3 passed the isometric test".into())?;
    let squared = SymmetricKernel::from_rows(
        &(0..4).map(|i| (0..4).map(|j| star.get(i, j).powi(2)).collect()).collect::<Vec<_>>(),
    )
    .unwrap();
    let star_value = squared.quadratic_form(&[-3.0, 1.0, 1.0, 1.0]);
    ensure((star_value - 6.0).abs() <= EXACT_FORM_TOL, || format!("K1,3 form value {star_value}"))?;
    Ok(format!("cubic form {cubic_value}, K1,3 form {star_value}"))
}

fn criterion_6() -> Outcome {
    let mut rng = rng(6);
    let mut worst = 0.0_f64;
    let mut worst_l2 = 0.0_f64;
    for p in [0.5, 1.0, 1.5, 2.0] {
        for case in 0..50 {
            let c = cloud(&mut rng, 1, 40, 10);
            let n = lp_power_kernel(&c, p).unwrap();
            let e = snowflake_embed(&c, p, None).map_err(|e| format!("p = {p}, case {case}: {e}"))?;
            let scale = n.scale().sqrt();
            for i in 0..c.n() {
                for j in 0..c.n() {
                    let want = n.get(i, j).sqrt();
                    worst = worst.max((e.distance(i, j) - want).abs() / scale);
                    if p == 2.0 {
                        let l2 = dist(c.point(i), c.point(j));
                        worst_l2 = worst_l2.max((e.distance(i, j) - l2).abs() / scale);
                    }
                }
            }
        }
    }
    ensure(worst <= SNOWFLAKE_REL_TOL, || format!("snowflake deviation {worst:e}"))?;
    ensure(worst_l2 <= SNOWFLAKE_L2_TOL, || format!("p = 2 deviation from l2 {worst_l2:e}"))?;
    Ok(format!("200 clouds, worst deviation {worst:.1e}, p = 2 vs l2 {worst_l2:.1e}"))
}

fn criterion_7() -> Outcome {
    let c = random_point_cloud(40, 5, 7, CloudDistribution::UniformBox { low: 0.0, high: 1.0 }).unwrap();
    let metric = lp_distance_matrix(&c, 1.0).unwrap();
    let e = snowflake_embed(&c, 1.0, None).map_err(|e| e.to_string())?;
    let moduli = empirical_moduli(&metric, &e).map_err(|e| e.to_string())?;
    let mut worst = 0.0_f64;
    for k in 0..moduli.len() {
        let want = moduli.achieved_distances[k].sqrt();
        worst = worst.max((moduli.compression[k] - want).abs()).max((moduli.expansion[k] - want).abs());
    }
    ensure(worst <= MODULI_TOL, || format!("moduli deviate from sqrt(t) by {worst:e}"))?;
    let rho = MonotoneStepFunction::power(0.5, &moduli.achieved_distances).unwrap();
    let v = verify_coarse_bounds(&metric, &e, &rho, &rho).map_err(|e| e.to_string())?;
    ensure(v.violations.is_empty(), || format!("{} violations", v.violations.len()))?;
    Ok(format!("{} achieved distances, worst {worst:.1e}, 0 violations of {} pairs", moduli.len(), v.pairs_checked))
}

fn criterion_8() -> Outcome {
    let mut rng = rng(8);
    for case in 0..100 {
        let c = cloud(&mut rng, 1, 30, 8);
        let n = lp_power_kernel(&c, 2.0).unwrap();
        for alpha in [0.25, 0.5, 0.75] {
            let k = fractional_power(&n, alpha).map_err(|e| e.to_string())?;
            let r = check_negative_definite(&k, None).map_err(|e| e.to_string())?;
            ensure(r.verdict == Verdict::Pass, || format!("case {case}, alpha {alpha}: {:e}", r.extremal_eigenvalue))?;
        }
    }
    Ok("300 fractional powers pass".into())
}

fn criterion_9() -> Outcome {
    let mut rng = rng(9);
    for case in 0..100 {
        let k = gram_kernel(&mut rng, 25, 8);
        let total = k.n() + 5;
        let mut slots: Vec<usize> = (0..total).collect();
        slots.shuffle(&mut rng);
        slots.truncate(k.n());
        let ext = zero_extension(&k, total, &slots).map_err(|e| e.to_string())?;
        let before = check_positive_definite(&k, None).map_err(|e| e.to_string())?;
        let after = check_positive_definite(&ext, None).map_err(|e| e.to_string())?;
        ensure(before.verdict == Verdict::Pass && after.verdict == Verdict::Pass, || {
            format!("case {case}: {:?} -> {:?}", before.verdict, after.verdict)
        })?;
    }
    Ok("100 padded kernels keep PD".into())
}

fn criterion_10() -> Outcome {
    let quad = QuadratureParams::default();
    let mut worst = 0.0_f64;
    for x in [0.5, 1.0, 2.0] {
        for alpha in [0.3, 0.5, 0.7] {
            let c = verify_levy_representation(x, alpha, quad).map_err(|e| e.to_string())?;
            worst = worst.max(c.relative_error());
        }
    }
    ensure(worst <= LEVY_REL_TOL, || format!("relative error {worst:e}"))?;
    let c_half = levy_constant(0.5, quad).map_err(|e| e.to_string())?;
    ensure((LEVY_C_HALF_RANGE.0..=LEVY_C_HALF_RANGE.1).contains(&c_half), || format!("c_0.5 = {c_half}"))?;
    Ok(format!("worst relative error {worst:.1e}, c_0.5 = {c_half:.6}"))
}

fn criterion_11() -> Outcome {
    let mut rng = rng(11);
    let mut fails = 0;
    for case in 0..200 {
        let n = rng.random_range(2..=6);
        let k = if case % 2 == 0 {
            nd_kernel(&mut rng, n, n)
        } else {
            let mut m = Matrix::zeros(n, n);
            for i in 0..n {
                for j in i + 1..n {
                    let v: f64 = rng.random();
                    m[(i, j)] = v;
                    m[(j, i)] = v;
                }
            }
            SymmetricKernel::new(m).unwrap()
        };
        let r = check_negative_definite(&k, None).map_err(|e| e.to_string())?;

        let mut best = f64::NEG_INFINITY;
        let mut c = vec![0.0; n];
        for _ in 0..BRUTE_FORCE_SAMPLES {
            for v in c.iter_mut() {
                *v = rng.random_range(-1.0..1.0);
            }
            let mean = c.iter().sum::<f64>() / n as f64;
            c.iter_mut().for_each(|v| *v -= mean);
            let norm2: f64 = c.iter().map(|v| v * v).sum();
            if norm2 == 0.0 {
                continue;
            }
            best = best.max(k.quadratic_form(&c) / norm2);
        }
        let search_fails = best > r.tolerance_used;
        ensure(search_fails == (r.verdict == Verdict::Fail), || {
            format!("case {case}: verdict {:?} but search maximum {best:e} (tol {:e})", r.verdict, r.tolerance_used)
        })?;
        fails += search_fails as usize;
    }
    Ok(format!("200 kernels agree ({fails} fail, {} pass)", 200 - fails))
}

fn criterion_12() -> Outcome {
    let r = run(&["check-nd", "--input", &fixture("k13_squared.csv"), "--json"]);
    ensure(r.code == 1, || format!("check-nd exit {} ({})", r.code, r.stderr))?;
    let doc = r.json();
    assert_schema_valid("verdict_report", &doc);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("coords.csv");
    let s = run(&["snowflake", "--input", &fixture("line_points.csv"), "--p", "1", "--output", out.to_str().unwrap()]);
    ensure(s.code == 0, || format!("snowflake exit {} ({})", s.code, s.stderr))?;
    let pts = read_points(&out);
    let got = [dist(&pts[0], &pts[1]), dist(&pts[0], &pts[2]), dist(&pts[1], &pts[2])];
    let want = [1.0, 2.0, 3f64.sqrt()];
    ensure(got.iter().zip(want).all(|(g, w)| (g - w).abs() <= CLI_DISTANCE_TOL), || format!("distances {got:?}"))?;

    let cloud_a = dir.path().join("a.csv");
    let cloud_b = dir.path().join("b.csv");
    for path in [&cloud_a, &cloud_b] {
        let g = run(&[
            "gen",
            "--kind",
            "cloud",
            "--n",
            "30",
            "--dim",
            "4",
            "--seed",
            "12",
            "--output",
            path.to_str().unwrap(),
        ]);
        ensure(g.code == 0, || g.stderr.clone())?;
    }
    let (a, b) = (std::fs::read(&cloud_a).unwrap(), std::fs::read(&cloud_b).unwrap());
    ensure(a == b, || "seeded clouds differ".into())?;
    let args =
        ["check-nd", "--input", cloud_a.to_str().unwrap(), "--format", "points", "--p", "1", "--beta", "1", "--json"];
    ensure(run(&args).stdout == run(&args).stdout, || "reports differ between identical runs".into())?;
    Ok(format!("K1,3 exit 1 schema-valid, snowflake distances {:.6?}, seeded runs byte-identical", got))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("eigensolver", criterion_1),
        ("Moore round trip", criterion_2),
        ("Schoenberg round trip", criterion_3),
        ("exponential transform", criterion_4),
        ("failure witnesses", criterion_5),
        ("snowflake identity", criterion_6),
        ("moduli exactness", criterion_7),
        ("fractional power", criterion_8),
        ("zero extension", criterion_9),
        ("Levy representation", criterion_10),
        ("brute-force agreement", criterion_11),
        ("CLI end-to-end", criterion_12),
    ];
    let start = Instant::now();
    let mut failed = Vec::new();
    for (k, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (tag, detail) = match check() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed.push(k + 1);
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2} {name:<22} {:>7.2?}  {detail}", k + 1, t.elapsed());
    }
    let total = start.elapsed();
    let within_budget = total < SUITE_BUDGET;
    println!("total {total:.2?} (budget {SUITE_BUDGET:?}){}", if within_budget { "" } else { " EXCEEDED" });
    if !failed.is_empty() || !within_budget {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
