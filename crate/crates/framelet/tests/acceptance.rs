//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (visible with `--nocapture`). Expected values come from the
//! published design tables; derived values are checked against independent
//! oracles implemented here.

use std::time::Instant;

use nalgebra::DMatrix;

use framelet::completion::{complete, projection_bank, FrameDesign};
use framelet::dvm::{admissible_direction, dvm_order, max_dvm_filter, moment_via_factors, Direction};
use framelet::mask::{to_matrix, vectorize, vectorize_onto};
use framelet::optimize::optimize_lambda;
use framelet::pipeline::{
    band_reposition_filters, demo, fig1_filter, oriented_difference_filters, Demo,
};
use framelet::spline::{bspline_lowpass, sqrt_vector, SplineSpec};
use framelet::transform::{analyze, convolve_demo, synthesize, truncation_error, Image};
use framelet::uep::{check_diagonal_uep, check_general_uep, FilterBank};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cached_demo(which: Demo) -> &'static FilterBank {
    use std::sync::OnceLock;
    static EX3: OnceLock<FilterBank> = OnceLock::new();
    static EX4: OnceLock<FilterBank> = OnceLock::new();
    match which {
        Demo::Ex3 => EX3.get_or_init(|| demo(Demo::Ex3).unwrap()),
        Demo::Ex4 => EX4.get_or_init(|| demo(Demo::Ex4).unwrap()),
        _ => panic!("only the expensive banks are cached"),
    }
}

fn report(criterion: u32, name: &str, result: Result<(), String>) {
    match &result {
        Ok(()) => println!("criterion {criterion} ({name}): PASS"),
        Err(e) => println!("criterion {criterion} ({name}): FAIL - {e}"),
    }
    if let Err(e) = result {
        panic!("criterion {criterion} ({name}) failed: {e}");
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn random_image(w: usize, h: usize, seed: u64) -> Image {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Image::new(w, h, (0..w * h).map(|_| rng.random_range(-1.0..1.0)).collect()).unwrap()
}

/// Max absolute entry difference after the best sign/permutation row
/// assignment of `mine` onto `printed`.
fn match_rows_up_to_sign_perm(mine: &[Vec<f64>], printed: &[Vec<f64>]) -> f64 {
    assert_eq!(mine.len(), printed.len());
    let mut used = vec![false; printed.len()];
    let mut worst = 0.0f64;
    for row in mine {
        let mut best = f64::INFINITY;
        let mut best_j = usize::MAX;
        for (j, p) in printed.iter().enumerate() {
            if used[j] {
                continue;
            }
            let plus = row
                .iter()
                .zip(p)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max);
            let minus = row
                .iter()
                .zip(p)
                .map(|(a, b)| (a + b).abs())
                .fold(0.0f64, f64::max);
            let dev = plus.min(minus);
            if dev < best {
                best = dev;
                best_j = j;
            }
        }
        used[best_j] = true;
        worst = worst.max(best);
    }
    worst
}

/// Neumaier-compensated moment oracle: `sum_k b_k z_k^r` with the power
/// built by repeated multiplication, independent of the library route.
fn oracle_moment(b: &[f64], z: &[f64], r: u32) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for (&bk, &zk) in b.iter().zip(z) {
        let mut p = bk;
        for _ in 0..r {
            p *= zk;
        }
        let t = sum + p;
        if sum.abs() >= p.abs() {
            comp += (sum - t) + p;
        } else {
            comp += (p - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

fn example1_printed_b() -> Vec<Vec<f64>> {
    let raw: [[f64; 9]; 8] = [
        [-8.84, 31.8, -1.77, -3.54, -7.07, -3.54, -1.77, -3.54, -1.77],
        [-6.25, -2.5, 23.8, -2.5, -5.0, -2.5, -1.25, -2.5, -1.25],
        [-8.84, -3.54, -1.77, 31.8, -7.07, -3.54, -1.77, -3.54, -1.77],
        [-12.5, -5.0, -2.5, -5.0, 40.0, -5.0, -2.5, -5.0, -2.5],
        [-8.84, -3.54, -1.77, -3.54, -7.07, 31.8, -1.77, -3.54, -1.77],
        [-6.25, -2.5, -1.25, -2.5, -5.0, -2.5, 23.8, -2.5, -1.25],
        [-8.84, -3.54, -1.77, -3.54, -7.07, -3.54, -1.77, 31.8, -1.77],
        [-6.25, -2.5, -1.25, -2.5, -5.0, -2.5, -1.25, -2.5, 23.8],
    ];
    raw.iter()
        .map(|r| r.iter().map(|v| v * 1e-2).collect())
        .collect()
}

#[test]
fn criterion_1_example1_reproduction() {
    let start = Instant::now();
    let result = (|| -> Result<(), String> {
        let bank = demo(Demo::Ex1).map_err(|e| e.to_string())?;
        ensure(bank.v() == 8, format!("expected 8 filters, got {}", bank.v()))?;
        let mine: Vec<Vec<f64>> = bank.highpass.iter().map(|m| m.coeffs().to_vec()).collect();
        let dev = match_rows_up_to_sign_perm(&mine, &example1_printed_b());
        ensure(dev <= 5e-3, format!("printed-matrix deviation {dev:.3e} > 5e-3"))?;
        let cert = check_diagonal_uep(&bank, 1e-10);
        ensure(cert.pass, format!("diagonal certificate {:.3e}", cert.worst()))?;
        let elapsed = start.elapsed().as_secs_f64();
        ensure(elapsed < 1.0, format!("runtime {elapsed:.2}s >= 1s"))
    })();
    report(1, "SVD-only bank matches the printed 8x9 matrix", result);
}

#[test]
fn criterion_2_example3_reproduction() {
    let start = Instant::now();
    let result = (|| -> Result<(), String> {
        // objective of the published weights, in this parameterization:
        // tr(Q^T Q) = 1 + sum lambda_i^2 ||d_i||^2 with the published row order
        let lam = [0.0442, 0.0884, 0.0442, 0.0884, 0.0234, 0.0293, 0.0088, 0.0316];
        let norms2 = [32.0, 16.0, 32.0, 16.0, 32.0, 48.0, 32.0, 48.0];
        let reference: f64 =
            1.0 + lam.iter().zip(norms2).map(|(l, n)| l * l * n).sum::<f64>();

        // the optimizer must return a feasible point at least as good
        let lp = bspline_lowpass(&SplineSpec::new(2, 2).unwrap());
        let c = sqrt_vector(&lp).map_err(|e| e.to_string())?;
        let mut d1 = DMatrix::zeros(8, 9);
        for (i, h) in oriented_difference_filters().iter().enumerate() {
            let mask = vectorize_onto(h, (1, 1), lp.grid()).map_err(|e| e.to_string())?;
            for k in 0..9 {
                d1[(i, k)] = mask.coeffs()[k] / c[k];
            }
        }
        let opt = optimize_lambda(&c, &d1, 1e-10, 10_000).map_err(|e| e.to_string())?;
        ensure(
            opt.objective >= reference - 1e-4,
            format!("objective {:.6} < reference {:.6} - 1e-4", opt.objective, reference),
        )?;
        let design = FrameDesign::new(c.clone(), d1.clone(), opt.lambda_star.clone())
            .map_err(|e| e.to_string())?;
        let q = design.q();
        let top = (q.transpose() * &q)
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max);
        ensure(top <= 1.0 + 1e-8, format!("infeasible optimizer output: {top}"))?;

        // the reconstructed bank: designed rows keep their support, and the
        // error constant sits in the published range
        let bank = cached_demo(Demo::Ex3);
        ensure(bank.v() == 12, format!("expected 12 filters, got {}", bank.v()))?;
        for (i, h) in oriented_difference_filters().iter().enumerate() {
            let target = vectorize_onto(h, (1, 1), lp.grid()).map_err(|e| e.to_string())?;
            let got = &bank.highpass[i];
            let lambda = bank.metadata.lambda[i];
            for (g, t) in got.coeffs().iter().zip(target.coeffs()) {
                if *t == 0.0 {
                    ensure(*g == 0.0, format!("designed row {i} grew support"))?;
                } else {
                    ensure(
                        (g - lambda * t).abs() <= 1e-10,
                        format!("designed row {i} deviates from lambda * filter"),
                    )?;
                }
            }
        }
        let sigma = bank
            .metadata
            .sigma
            .ok_or_else(|| "bank has no error constant".to_string())?;
        ensure(
            (0.982..=0.992).contains(&sigma),
            format!("sigma {sigma:.6} outside [0.982, 0.992]"),
        )?;
        let elapsed = start.elapsed().as_secs_f64();
        ensure(elapsed < 5.0, format!("runtime {elapsed:.2}s >= 5s"))
    })();
    report(2, "oriented-difference bank and optimizer", result);
}

#[test]
fn criterion_3_projection_banks() {
    let result = (|| -> Result<(), String> {
        for (order, dim) in [(2u32, 1u32), (2, 2), (4, 1), (4, 2)] {
            let lp = bspline_lowpass(&SplineSpec::new(order, dim).unwrap());
            let n = lp.len();
            let bank = projection_bank(&lp).map_err(|e| e.to_string())?;
            ensure(
                bank.v() == n * (n - 1) / 2,
                format!("order {order} dim {dim}: {} filters, want {}", bank.v(), n * (n - 1) / 2),
            )?;
            let cert = check_diagonal_uep(&bank, 1e-12);
            ensure(
                cert.pass,
                format!("order {order} dim {dim}: Gram deviation {:.3e}", cert.worst()),
            )?;
        }
        Ok(())
    })();
    report(3, "projection banks have N(N-1)/2 filters and M = diag(a)", result);
}

#[test]
fn criterion_4_max_dvm_construction() {
    let result = (|| -> Result<(), String> {
        let cases: [(u32, u32, Option<u64>); 3] =
            [(2, 1, None), (4, 1, None), (2, 2, Some(17))];
        for (order, dim, seed) in cases {
            let lp = bspline_lowpass(&SplineSpec::new(order, dim).unwrap());
            let n = lp.len() as u32;
            let dir = match seed {
                Some(s) => admissible_direction(lp.grid(), 1024, s).map_err(|e| e.to_string())?,
                None => Direction::new(&[1.0], lp.grid()).map_err(|e| e.to_string())?,
            };
            let mask = max_dvm_filter(&lp, &dir).map_err(|e| e.to_string())?;
            for r in 0..n - 1 {
                let m = oracle_moment(mask.coeffs(), dir.z(), r);
                let scale: f64 = mask
                    .coeffs()
                    .iter()
                    .zip(dir.z())
                    .map(|(&b, &z)| b.abs() * z.abs().max(1.0).powi(r as i32))
                    .sum();
                ensure(
                    m.abs() <= 1e-8 * scale,
                    format!("N={n}: moment {r} = {m:.3e} not vanishing"),
                )?;
            }
            let top = oracle_moment(mask.coeffs(), dir.z(), n - 1);
            ensure(
                top.abs() > 1e-4,
                format!("N={n}: top moment {top:.3e} too small"),
            )?;
        }
        Ok(())
    })();
    report(4, "maximal-DVM filters verified by the brute-force oracle", result);
}

fn parseval_banks() -> Vec<(&'static str, FilterBank)> {
    vec![
        ("ex1", demo(Demo::Ex1).unwrap()),
        ("ex2", demo(Demo::Ex2).unwrap()),
        ("ex3", cached_demo(Demo::Ex3).clone()),
        ("ex4", cached_demo(Demo::Ex4).clone()),
        ("cor26", demo(Demo::Cor26).unwrap()),
    ]
}

#[test]
fn criterion_5_tight_frame_transform() {
    let start = Instant::now();
    let result = (|| -> Result<(), String> {
        for (name, bank) in parseval_banks() {
            for seed in 0..32u64 {
                let img = random_image(64, 64, 1000 + seed);
                let dec = analyze(&bank, &img, 3).map_err(|e| e.to_string())?;
                let ratio = dec.coefficient_energy() / img.energy();
                ensure(
                    (ratio - 1.0).abs() <= 1e-9,
                    format!("{name} seed {seed}: energy ratio {ratio}"),
                )?;
                let rec = synthesize(&bank, &dec).map_err(|e| e.to_string())?;
                let err = rec
                    .pixels
                    .iter()
                    .zip(&img.pixels)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0f64, f64::max);
                ensure(
                    err <= 1e-9,
                    format!("{name} seed {seed}: round-trip error {err:.3e}"),
                )?;
            }
        }
        let elapsed = start.elapsed().as_secs_f64();
        ensure(elapsed < 10.0, format!("runtime {elapsed:.2}s >= 10s"))
    })();
    report(5, "energy identity and perfect reconstruction", result);
}

#[test]
fn criterion_6_truncation_bound() {
    let result = (|| -> Result<(), String> {
        let bank = cached_demo(Demo::Ex3);
        let sigma_n2 = bank
            .metadata
            .frame_bounds
            .ok_or_else(|| "missing frame bounds".to_string())?
            .0;
        let keep = bank.designed_channels();
        let mut worst_e = 0.0f64;
        let mut worst_kept = f64::INFINITY;
        for seed in 0..100u64 {
            let img = random_image(128, 128, 7000 + seed);
            let e = truncation_error(bank, &keep, &img, 3).map_err(|e| e.to_string())?;
            worst_e = worst_e.max(e);
            worst_kept = worst_kept.min(1.0 - e);
        }
        ensure(
            worst_e <= 0.987 + 1e-3,
            format!("max E(f)/||f||^2 = {worst_e:.6} > 0.988"),
        )?;
        ensure(
            worst_kept >= sigma_n2 - 1e-3,
            format!("kept ratio {worst_kept:.6} < sigma_N^2 - 1e-3 = {:.6}", sigma_n2 - 1e-3),
        )
    })();
    report(6, "truncation error bounded by sigma", result);
}

#[test]
fn criterion_7_d4_geometry() {
    let result = (|| -> Result<(), String> {
        let bank = demo(Demo::D4).map_err(|e| e.to_string())?;
        let sampled = check_general_uep(&bank.lowpass, &bank.highpass, 256, 1e-12)
            .map_err(|e| e.to_string())?;
        ensure(
            sampled.max_dev <= 1e-12,
            format!("sampled deviation {:.3e}", sampled.max_dev),
        )?;
        let m = bank.gram();
        let e = m.entries();
        for (k, t) in [(0, 2), (0, 3), (1, 2), (1, 3)] {
            ensure(
                e[(k, t)].abs() <= 1e-12,
                format!("m{}{} = {:.3e}", k + 1, t + 1, e[(k, t)]),
            )?;
        }
        ensure(
            (e[(0, 1)] + e[(2, 3)]).abs() <= 1e-12,
            format!("m12 + m34 = {:.3e}", e[(0, 1)] + e[(2, 3)]),
        )?;
        // T-shaped column geometry: v1 || v2, v3 || v4, v1 perp v3
        let a = bank.lowpass.coeffs();
        let b = bank.highpass[0].coeffs();
        let cross = |i: usize, j: usize| a[i] * b[j] - a[j] * b[i];
        let dot = |i: usize, j: usize| a[i] * a[j] + b[i] * b[j];
        ensure(cross(0, 1).abs() <= 1e-12, format!("v1 x v2 = {:.3e}", cross(0, 1)))?;
        ensure(cross(2, 3).abs() <= 1e-12, format!("v3 x v4 = {:.3e}", cross(2, 3)))?;
        ensure(dot(0, 2).abs() <= 1e-12, format!("v1 . v3 = {:.3e}", dot(0, 2)))
    })();
    report(7, "4-tap orthonormal pair geometry", result);
}

#[test]
fn criterion_8_fig1_dvm_fixture() {
    let result = (|| -> Result<(), String> {
        let mask = fig1_filter();
        let dir = Direction::new(&[0.0, 1.0], mask.grid()).map_err(|e| e.to_string())?;
        let order = dvm_order(&mask, &dir, 1e-2, 9);
        ensure(order >= 4, format!("order {order} < 4"))?;
        // cubic ramp along (0,1): periodic wrap kept smooth by a symmetric bump
        let h = 64usize;
        let mut img = Image::zeros(h, h);
        for r in 0..h {
            let y = r as f64 / h as f64;
            let v = (y * (1.0 - y)).powi(3); // cubic-flat bump, period-smooth
            for c in 0..h {
                *img.at_mut(r, c) = v;
            }
        }
        let out = convolve_demo(&mask, &img);
        let in_scale = img.pixels.iter().cloned().fold(0.0f64, f64::max);
        let out_scale = out.pixels.iter().map(|v| v.abs()).fold(0.0f64, f64::max);
        ensure(
            out_scale <= 1e-3 * in_scale,
            format!("ramp response {out_scale:.3e} > 1e-3 * {in_scale:.3e}"),
        )
    })();
    report(8, "printed four-DVM filter annihilates the cubic ramp", result);
}

#[test]
fn criterion_9_band_repositioning() {
    let result = (|| -> Result<(), String> {
        let generated = band_reposition_filters();
        ensure(generated.len() == 24, format!("{} matrices", generated.len()))?;
        let printed: Vec<Vec<Vec<f64>>> = vec![
            vec![
                vec![0., 0., 0., -1., 0.],
                vec![0., 0., -1., 0., 1.],
                vec![0., -1., 0., 1., 0.],
                vec![-1., 0., 1., 0., 0.],
                vec![0., 1., 0., 0., 0.],
            ],
            vec![
                vec![0., 0., -1., 0., 1.],
                vec![0., 0., 0., 0., 0.],
                vec![0., -1., 0., 1., 0.],
                vec![0., 0., 0., 0., 0.],
                vec![-1., 0., 1., 0., 0.],
            ],
            vec![
                vec![0., -1., 0., 1., 0.],
                vec![0., -1., 0., 1., 0.],
                vec![0., -1., 0., 1., 0.],
                vec![0., -1., 0., 1., 0.],
                vec![0., -1., 0., 1., 0.],
            ],
            vec![
                vec![-1., 0., 1., 0., 0.],
                vec![0., 0., 0., 0., 0.],
                vec![0., -1., 0., 1., 0.],
                vec![0., 0., 0., 0., 0.],
                vec![0., 0., -1., 0., 1.],
            ],
            vec![
                vec![0., 0., 0., 1., -1.],
                vec![0., 0., 1., -2., 1.],
                vec![0., 1., -2., 1., 0.],
                vec![1., -2., 1., 0., 0.],
                vec![-1., 1., 0., 0., 0.],
            ],
            vec![
                vec![0., 0., 1., -2., 1.],
                vec![0., 0., 0., 0., 0.],
                vec![0., 1., -2., 1., 0.],
                vec![0., 0., 0., 0., 0.],
                vec![1., -2., 1., 0., 0.],
            ],
            vec![
                vec![0., 1., -2., 1., 0.],
                vec![0., 1., -2., 1., 0.],
                vec![0., 1., -2., 1., 0.],
                vec![0., 1., -2., 1., 0.],
                vec![0., 1., -2., 1., 0.],
            ],
            vec![
                vec![1., -2., 1., 0., 0.],
                vec![0., 0., 0., 0., 0.],
                vec![0., 1., -2., 1., 0.],
                vec![0., 0., 0., 0., 0.],
                vec![0., 0., 1., -2., 1.],
            ],
        ];
        for (i, p) in printed.iter().enumerate() {
            let found = generated.iter().any(|g| {
                let same = g
                    .iter()
                    .flatten()
                    .zip(p.iter().flatten())
                    .all(|(a, b)| (a - b).abs() < 1e-12);
                let negated = g
                    .iter()
                    .flatten()
                    .zip(p.iter().flatten())
                    .all(|(a, b)| (a + b).abs() < 1e-12);
                same || negated
            });
            ensure(found, format!("printed matrix {} missing from generator output", i + 1))?;
        }
        let bank = cached_demo(Demo::Ex4);
        ensure(bank.v() == 48, format!("expected 48 filters, got {}", bank.v()))?;
        ensure(
            bank.designed_channels().len() == 24,
            "expected 24 designed channels".to_string(),
        )?;
        // tight-frame behavior of this bank is covered by criterion 5;
        // spot-check one reconstruction here
        let img = random_image(64, 64, 4242);
        let dec = analyze(bank, &img, 3).map_err(|e| e.to_string())?;
        let ratio = dec.coefficient_energy() / img.energy();
        ensure((ratio - 1.0).abs() <= 1e-9, format!("energy ratio {ratio}"))
    })();
    report(9, "band-repositioning generator and 48-filter bank", result);
}

#[test]
fn criterion_10_property_suite() {
    let result = (|| -> Result<(), String> {
        // vectorization round-trips matrices exactly
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..64 {
            let n1 = rng.random_range(1..6usize);
            let n2 = rng.random_range(1..6usize);
            let h: Vec<Vec<f64>> = (0..n1)
                .map(|_| (0..n2).map(|_| rng.random_range(-2.0..2.0)).collect())
                .collect();
            let anchor = (rng.random_range(0..n1), rng.random_range(0..n2));
            let mask = vectorize(&h, anchor).map_err(|e| e.to_string())?;
            let (back, back_anchor) = to_matrix(&mask).map_err(|e| e.to_string())?;
            ensure(back == h && back_anchor == anchor, "vectorization round trip")?;
        }

        // optimizer feasibility and monotonicity over growing budgets
        let lp = bspline_lowpass(&SplineSpec::new(2, 2).unwrap());
        let c = sqrt_vector(&lp).map_err(|e| e.to_string())?;
        let mut d1 = DMatrix::zeros(8, 9);
        for (i, h) in oriented_difference_filters().iter().enumerate() {
            let mask = vectorize_onto(h, (1, 1), lp.grid()).map_err(|e| e.to_string())?;
            for k in 0..9 {
                d1[(i, k)] = mask.coeffs()[k] / c[k];
            }
        }
        let mut last = 0.0f64;
        for budget in [1usize, 5, 20, 100, 1000] {
            let res = optimize_lambda(&c, &d1, 1e-10, budget).map_err(|e| e.to_string())?;
            ensure(res.objective >= last - 1e-12, "objective monotone in budget")?;
            last = res.objective;
            let design = FrameDesign::new(c.clone(), d1.clone(), res.lambda_star)
                .map_err(|e| e.to_string())?;
            let q = design.q();
            let top = (q.transpose() * &q)
                .symmetric_eigen()
                .eigenvalues
                .iter()
                .cloned()
                .fold(f64::NEG_INFINITY, f64::max);
            ensure(top <= 1.0 + 1e-8, format!("iterate infeasible: {top}"))?;
        }

        // completion idempotence
        let design = complete(FrameDesign::without_designed_rows(c.clone()))
            .map_err(|e| e.to_string())?;
        let d2 = design.d2.clone().unwrap();
        let again = complete(
            FrameDesign::new(c.clone(), d2.clone(), vec![1.0; d2.nrows()])
                .map_err(|e| e.to_string())?,
        )
        .map_err(|e| e.to_string())?;
        ensure(
            again.d2.as_ref().unwrap().nrows() == 0,
            "completion not idempotent".to_string(),
        )?;

        // orthogonal-rows closed form
        let d_orth = d1.rows(0, 4).clone_owned();
        let res = optimize_lambda(&c, &d_orth, 1e-10, 10_000).map_err(|e| e.to_string())?;
        for i in 0..4 {
            let want = 1.0 / d_orth.row(i).norm();
            ensure(
                (res.lambda_star[i] - want).abs() <= 1e-8,
                format!("closed form row {i}: {} vs {want}", res.lambda_star[i]),
            )?;
        }

        // moment oracle equivalence on a maximal-DVM filter
        let dir = admissible_direction(lp.grid(), 1024, 7).map_err(|e| e.to_string())?;
        let mask = max_dvm_filter(&lp, &dir).map_err(|e| e.to_string())?;
        let d: Vec<f64> = mask.coeffs().iter().zip(&c).map(|(&b, &ck)| b / ck).collect();
        for r in 0..9 {
            let direct = framelet::dvm::moment(&mask, &dir, r);
            let factored = moment_via_factors(&c, &d, &dir, r);
            ensure(
                (direct - factored).abs() <= 1e-14 * (1.0 + direct.abs()),
                format!("moment routes disagree at r = {r}"),
            )?;
        }
        Ok(())
    })();
    report(10, "property suite", result);
}
