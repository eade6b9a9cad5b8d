//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};
use std::process::Command;
use std::time::Instant;

use nalgebra::Vector3;
use num_complex::Complex64;
use qcorr_core::random::hilbert_schmidt_state;
use qcorr_core::{
    discord_numeric, discord_x, evolve_tripartite, ghs_params, obesity, obesity_x, partial_trace,
    steering_ellipsoid, validate_state, DensityMatrix, GisinParams, Region, DEFAULT_GRID_STEPS,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| if i + 1 == n { b } else { a + (b - a) * i as f64 / (n - 1) as f64 }).collect()
}

fn state(region: Region, g: f64, alpha: f64, d: f64, omega: f64) -> DensityMatrix {
    region.reduced_state(&GisinParams::new(g, alpha).unwrap(), &ghs_params(1.0, d, omega).unwrap())
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn flat_limit() -> Outcome {
    let rho = state(Region::AbI, 1.0, FRAC_PI_4, 0.0, 5.0);
    let o = obesity(&rho).map_err(|e| e.to_string())?;
    let d = discord_x(&rho).map_err(|e| e.to_string())?.discord;
    check((o - 1.0).abs() <= 1e-6 && (d - 1.0).abs() <= 1e-6, format!("obesity {o:.12}, discord {d:.12}"))
}

fn horizon_endpoint() -> Outcome {
    let rho = state(Region::AbI, 1.0, FRAC_PI_4, 1.0, 0.5);
    let o = obesity(&rho).map_err(|e| e.to_string())?;
    let d = discord_x(&rho).map_err(|e| e.to_string())?.discord;
    let expected = 2.0 * (1.0f64 / 64.0).powf(0.25);
    check(
        (o - expected).abs() <= 1e-9 && (d - 0.6).abs() <= 0.1,
        format!("obesity {o:.12} (expected {expected:.12}), discord {d:.6} (target 0.6 ± 0.1)"),
    )
}

fn bogoliubov_identity() -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    for d in linspace(0.0, 1.0, 40) {
        for omega in linspace(0.01, 5.0, 25) {
            let q = ghs_params(1.0, d, omega).map_err(|e| e.to_string())?;
            worst = worst.max((q.eps1 * q.eps1 + q.eps2 * q.eps2 - 1.0).abs());
            count += 1;
        }
    }
    check(worst <= 1e-14, format!("{count} points, max |eps1^2+eps2^2-1| = {worst:e}"))
}

fn cross_path() -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    for g in linspace(0.0, 1.0, 5) {
        for alpha in linspace(0.0, FRAC_PI_2, 5) {
            for d in linspace(0.0, 0.99, 5) {
                for omega in [0.1, 0.25, 0.5, 0.75, 1.0] {
                    let p = GisinParams::new(g, alpha).unwrap();
                    let q = ghs_params(1.0, d, omega).unwrap();
                    let full = evolve_tripartite(&p, &q);
                    for region in Region::ALL {
                        let traced = partial_trace(&full, &region.keep()).map_err(|e| e.to_string())?;
                        let closed = region.reduced_state(&p, &q);
                        for (a, b) in traced.entries().iter().zip(closed.entries().iter()) {
                            worst = worst.max((a - b).norm());
                        }
                    }
                    count += 1;
                }
            }
        }
    }
    check(worst <= 1e-12, format!("{count} parameter points x 3 regions, max elementwise diff {worst:e}"))
}

/// Model states of interest: three regions, several (g, alpha, omega)
/// settings, 100 dilation values each.
fn family_states() -> Vec<DensityMatrix> {
    let settings = [
        (1.0, FRAC_PI_4, 0.5),
        (0.4, FRAC_PI_4, 0.5),
        (0.1, FRAC_PI_4, 0.5),
        (1.0, FRAC_PI_8, 0.5),
        (1.0, PI / 6.0, 0.5),
        (1.0, PI / 3.0, 0.5),
        (1.0, FRAC_PI_4, 0.01),
        (1.0, FRAC_PI_4, 0.1),
        (1.0, FRAC_PI_4, 0.2),
        (0.1, FRAC_PI_4, 0.1),
    ];
    let mut out = Vec::new();
    for region in Region::ALL {
        for &(g, alpha, omega) in &settings {
            for d in linspace(0.0, 0.99, 100) {
                out.push(state(region, g, alpha, d, omega));
            }
        }
    }
    out
}

fn x_part(rho: &DensityMatrix) -> DensityMatrix {
    let mut m = rho.entries().clone();
    for (r, c) in [(0, 1), (0, 2), (1, 3), (2, 3)] {
        m[(r, c)] = Complex64::new(0.0, 0.0);
        m[(c, r)] = Complex64::new(0.0, 0.0);
    }
    DensityMatrix::two_qubit(m).unwrap()
}

fn obesity_fast_path() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst_random = 0.0f64;
    let mut n_random = 0;
    while n_random < 1000 {
        let rho = x_part(&hilbert_schmidt_state(&mut rng, &["A", "B"]));
        if !validate_state(&rho).passed {
            continue;
        }
        let diff = (obesity(&rho).map_err(|e| e.to_string())? - obesity_x(&rho).map_err(|e| e.to_string())?).abs();
        worst_random = worst_random.max(diff);
        n_random += 1;
    }
    let family = family_states();
    let mut worst_family = 0.0f64;
    for rho in &family {
        let diff = (obesity(rho).map_err(|e| e.to_string())? - obesity_x(rho).map_err(|e| e.to_string())?).abs();
        worst_family = worst_family.max(diff);
    }
    check(
        worst_random <= 1e-10 && worst_family <= 1e-10,
        format!(
            "{n_random} random X states max diff {worst_random:e}; {} model states max diff {worst_family:e}",
            family.len()
        ),
    )
}

fn discord_oracle() -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    for region in Region::ALL {
        for &(g, alpha, omega) in &[(1.0, FRAC_PI_4, 0.5), (0.4, FRAC_PI_4, 0.5), (1.0, FRAC_PI_8, 0.5)] {
            for d in linspace(0.0, 0.99, 21) {
                let rho = state(region, g, alpha, d, omega);
                let analytic = discord_x(&rho).map_err(|e| e.to_string())?.discord;
                let numeric = discord_numeric(&rho, DEFAULT_GRID_STEPS).map_err(|e| e.to_string())?;
                worst = worst.max((analytic - numeric).abs());
                count += 1;
            }
        }
    }
    check(worst <= 2e-3, format!("{count} states, max |analytic - numeric| = {worst:e}"))
}

fn monotonicity() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for region in Region::ALL {
        let series: Vec<(f64, f64)> = linspace(0.0, 0.99, 100)
            .into_iter()
            .map(|d| {
                let rho = state(region, 1.0, FRAC_PI_4, d, 0.5);
                (obesity(&rho).unwrap(), discord_x(&rho).unwrap().discord)
            })
            .collect();
        let decreasing = region == Region::AbI;
        let violations = series
            .windows(2)
            .filter(|w| {
                let (step_o, step_d) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
                if decreasing {
                    step_o > 1e-9 || step_d > 1e-9
                } else {
                    step_o < -1e-9 || step_d < -1e-9
                }
            })
            .count();
        ok &= violations == 0;
        notes.push(format!("{} {} violations", region.name(), violations));
        if region == Region::AbII {
            let (o0, d0) = series[0];
            ok &= o0 <= 1e-2 && d0 <= 1e-2;
            notes.push(format!("AB_II at D=0: obesity {o0:.3e}, discord {d0:.3e}"));
        }
    }
    check(ok, notes.join("; "))
}

fn random_unit<R: Rng>(rng: &mut R) -> Vector3<f64> {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..2.0 * PI);
    let r = (1.0 - z * z).sqrt();
    Vector3::new(r * phi.cos(), r * phi.sin(), z)
}

fn ellipsoid_geometry() -> Outcome {
    let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let z = Complex64::new(0.0, 0.0);
    let bell = DensityMatrix::pure(&[z, s, s, z], &["A", "B"]).unwrap();
    let e = steering_ellipsoid(&bell).map_err(|e| e.to_string())?;
    let bell_ok = e.semi_axes.iter().all(|x| (x - 1.0).abs() <= 1e-9) && e.center.amax() <= 1e-12;

    let mut v = [0.0; 16];
    v[0] = 0.5;
    v[15] = 0.5;
    let mixture = DensityMatrix::from_real(4, &v, &["A", "B"]).unwrap();
    let e = steering_ellipsoid(&mixture).map_err(|e| e.to_string())?;
    let mix_ok = (e.semi_axes[0] - 1.0).abs() <= 1e-9
        && e.semi_axes[1].abs() <= 1e-9
        && e.semi_axes[2].abs() <= 1e-9
        && (e.axes.column(0).z.abs() - 1.0).abs() <= 1e-12;

    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let family = family_states();
    let mut worst = 0.0f64;
    for rho in &family {
        let e = steering_ellipsoid(rho).map_err(|e| e.to_string())?;
        for _ in 0..500 {
            worst = worst.max(e.surface_point(&random_unit(&mut rng)).norm());
        }
    }
    let contained = worst <= 1.0 + 1e-9;

    let e = steering_ellipsoid(&state(Region::AbI, 1.0, FRAC_PI_4, 0.5, 0.5)).map_err(|e| e.to_string())?;
    let min_axis = e.semi_axes.min();
    check(
        bell_ok && mix_ok && contained && min_axis >= 0.99,
        format!(
            "bell {bell_ok}, mixture {mix_ok}, {} model ellipsoids max sampled norm {worst:.12}, \
             D=0.5 w=0.5 min semi-axis {min_axis:.6}",
            family.len()
        ),
    )
}

fn g_independence() -> Outcome {
    let mut worst = 0.0f64;
    for d in linspace(0.0, 0.99, 100) {
        let mut values = Vec::new();
        for g in [0.1, 0.4, 1.0] {
            let rho = state(Region::BIBII, g, FRAC_PI_4, d, 0.5);
            let e = steering_ellipsoid(&rho).map_err(|e| e.to_string())?;
            let mut v = vec![obesity(&rho).unwrap(), discord_x(&rho).unwrap().discord];
            v.extend(e.center.iter().chain(e.semi_axes.iter()));
            values.push(v);
        }
        for other in &values[1..] {
            for (a, b) in values[0].iter().zip(other) {
                worst = worst.max((a - b).abs());
            }
        }
    }
    check(worst <= 1e-12, format!("100 dilation values, max spread across g {worst:e}"))
}

fn cli_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = |name: &str, threads: &str| -> Result<Vec<u8>, String> {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_qcorr"))
            .args(["sweep", "--region", "AB_I", "--sweep", "D:0:0.99:100", "--outputs", "all", "--out"])
            .arg(&path)
            .env("RAYON_NUM_THREADS", threads)
            .status()
            .map_err(|e| e.to_string())?;
        if !status.success() {
            return Err(format!("sweep exited with {status}"));
        }
        std::fs::read(&path).map_err(|e| e.to_string())
    };
    let a = run("a.csv", "1")?;
    let b = run("b.csv", "4")?;
    let c = run("c.csv", "4")?;
    check(a == b && b == c, format!("3 runs (1 and 4 threads), {} bytes each, identical: {}", a.len(), a == b && b == c))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("flat-space limit", flat_limit),
        ("horizon endpoint", horizon_endpoint),
        ("Bogoliubov identity", bogoliubov_identity),
        ("cross-path consistency", cross_path),
        ("obesity fast path", obesity_fast_path),
        ("discord oracle", discord_oracle),
        ("monotonicity", monotonicity),
        ("ellipsoid geometry", ellipsoid_geometry),
        ("g-independence across the horizon", g_independence),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail} ({secs:.2}s)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail} ({secs:.2}s)");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
