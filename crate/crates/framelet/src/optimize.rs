//! Spectrally constrained trace maximization: pick row weights that put as
//! much energy as possible into the designed filters while the stacked
//! design stays a Parseval-frame candidate, plus the truncation error
//! constant of a completed design.

use nalgebra::{DMatrix, DVector};

use crate::completion::FrameDesign;
use crate::error::{FrameletError, Result};
use crate::linalg::{symmetric_eigen_desc, thin_svd};

#[derive(Debug, Clone)]
pub struct OptimizationResult {
    pub lambda_star: Vec<f64>,
    /// `tr(Q^T Q)` at the returned weights.
    pub objective: f64,
    /// Smallest singular value of `Q` at the returned weights.
    pub sigma_n: f64,
    /// `1 - sigma_N^2`; absent when `Q` lost full column rank.
    pub error_constant: Option<f64>,
    pub converged: bool,
    pub iterations: usize,
}

/// Rank threshold below which the completed design is treated as
/// rank-deficient and the error constant as undefined.
const RANK_TOL: f64 = 1e-10;

/// Maximizes `tr(Q^T(lambda) Q(lambda))` subject to
/// `||Q^T(lambda) Q(lambda)|| <= 1` by projected gradient ascent.
///
/// The substitution `s_i = lambda_i^2 ||d_i||^2` turns the problem into a
/// linear maximization of `sum_i s_i` over a convex spectral region, solved
/// with unit gradient steps projected onto the tangent space of the active
/// eigenvalue constraints, with a feasibility pullback after every step.
/// Working on unit rows makes the iteration scale-equivariant, so only the
/// products `lambda_i d_i` are well determined, as the scaling invariant
/// demands.
pub fn optimize_lambda(
    c: &[f64],
    d1: &DMatrix<f64>,
    tol: f64,
    max_iter: usize,
) -> Result<OptimizationResult> {
    let n = c.len();
    let l = d1.nrows();
    if d1.ncols() != n {
        return Err(FrameletError::DimensionMismatch(format!(
            "D1 has {} columns, c has length {}",
            d1.ncols(),
            n
        )));
    }
    if l == 0 {
        return Ok(OptimizationResult {
            lambda_star: Vec::new(),
            objective: 1.0,
            sigma_n: if n == 1 { 1.0 } else { 0.0 },
            error_constant: if n == 1 { Some(0.0) } else { None },
            converged: true,
            iterations: 0,
        });
    }
    let mut norms = Vec::with_capacity(l);
    for i in 0..l {
        let rn: f64 = (0..n).map(|k| d1[(i, k)].powi(2)).sum::<f64>().sqrt();
        if rn == 0.0 {
            return Err(FrameletError::InvalidDesign(format!(
                "designed row {i} is zero"
            )));
        }
        let dot: f64 = (0..n).map(|k| d1[(i, k)] * c[k]).sum();
        if dot.abs() > 1e-10 * rn.max(1.0) {
            return Err(FrameletError::InvalidDesign(format!(
                "designed row {i} is not orthogonal to c (dot {dot:.3e})"
            )));
        }
        norms.push(rn);
    }
    let units: Vec<DVector<f64>> = (0..l)
        .map(|i| DVector::from_fn(n, |k, _| d1[(i, k)] / norms[i]))
        .collect();
    // with d_i orthogonal to c, the stacked Gram block-decomposes:
    // eigenvalues of Q^T Q are {1 (the c direction)} plus the spectrum of
    // G(s) = sum_i s_i u_i u_i^T, so the spectral constraint reduces to
    // lambda_max(G) <= 1 with G exactly linear in s
    let gram_g = |s: &[f64]| -> DMatrix<f64> {
        let mut m = DMatrix::zeros(n, n);
        for i in 0..l {
            if s[i] != 0.0 {
                m += s[i] * &units[i] * units[i].transpose();
            }
        }
        m
    };
    let max_eig_g = |s: &[f64]| -> f64 {
        nalgebra::SymmetricEigen::new(gram_g(s))
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max)
    };
    // aim strictly inside the bound so terminal eigenvalues match the
    // snap/prune policy of the completion
    const BOUND: f64 = 1.0 - 1e-9;
    // exact pullback: scaling s scales the spectrum of G linearly
    let pullback = |s: &mut Vec<f64>| {
        let m = max_eig_g(s);
        if m > BOUND {
            let rho = BOUND / m;
            for x in s.iter_mut() {
                *x *= rho;
            }
        }
    };

    // deterministic strictly feasible start: half of the equal split
    let mut s = vec![1.0 / (2.0 * l as f64); l];
    debug_assert!(max_eig_g(&s) <= 1.0);
    let mut objective: f64 = s.iter().sum();
    let mut eta = 0.5f64;
    let mut stall = 0usize;
    let mut converged = false;
    let mut iterations = 0usize;

    for it in 0..max_iter {
        iterations = it + 1;
        let (evals, evecs) = symmetric_eigen_desc(&gram_g(&s));
        // tangent projection against eigenvalues at the spectral bound
        let mut normals: Vec<DVector<f64>> = Vec::new();
        for (j, &w) in evals.iter().enumerate() {
            if w < BOUND - 1e-9 {
                break;
            }
            let v = evecs.column(j);
            let grad = DVector::from_fn(l, |i, _| units[i].dot(&v.clone_owned()).powi(2));
            if grad.norm() > 1e-13 {
                normals.push(grad);
            }
        }
        let g = DVector::from_element(l, 1.0);
        let p = if normals.is_empty() {
            g
        } else {
            let nm = DMatrix::from_fn(normals.len(), l, |r, i| normals[r][i]);
            let gram_n = &nm * nm.transpose();
            let rhs = &nm * &g;
            let coef = gram_n
                .svd(true, true)
                .solve(&rhs, 1e-12)
                .map_err(|e| FrameletError::NumericalFailure(e.to_string()))?;
            &g - nm.transpose() * coef
        };
        let mut p: Vec<f64> = p.iter().cloned().collect();
        for i in 0..l {
            if s[i] <= 1e-15 && p[i] < 0.0 {
                p[i] = 0.0;
            }
        }
        if p.iter().map(|x| x.abs()).fold(0.0f64, f64::max) < 1e-12 {
            converged = true;
            break;
        }
        let mut accepted = false;
        let mut step = eta;
        for _ in 0..60 {
            let mut trial: Vec<f64> = (0..l).map(|i| (s[i] + step * p[i]).max(0.0)).collect();
            pullback(&mut trial);
            let trial_obj: f64 = trial.iter().sum();
            if trial_obj > objective {
                let rel = (trial_obj - objective) / trial_obj.max(f64::MIN_POSITIVE);
                s = trial;
                objective = trial_obj;
                stall = if rel < tol { stall + 1 } else { 0 };
                eta = (step * 1.5).min(1e3);
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            converged = true;
            break;
        }
        if stall >= 5 {
            converged = true;
            break;
        }
    }

    let lambda_star: Vec<f64> = (0..l).map(|i| s[i].sqrt() / norms[i]).collect();
    let design = FrameDesign::new(c.to_vec(), d1.clone(), lambda_star.clone())?;
    let (svals, _) = thin_svd(&design.q());
    let sigma_n = *svals.last().unwrap();
    let error_constant = if sigma_n > RANK_TOL && svals.len() == n {
        Some(1.0 - sigma_n * sigma_n)
    } else {
        None
    };
    Ok(OptimizationResult {
        lambda_star,
        objective: 1.0 + s.iter().sum::<f64>(),
        sigma_n,
        error_constant,
        converged,
        iterations,
    })
}

/// Truncation error constant of a completed full-rank design:
/// `sigma = 1 - sigma_N^2`, with the frame-bound pair `(sigma_N^2, 1)` of
/// the family truncated to the designed rows.
pub fn error_constant(design: &FrameDesign) -> Result<(f64, (f64, f64))> {
    let n = design.n();
    let (svals, _) = thin_svd(&design.q());
    let sigma_n = if svals.len() == n { *svals.last().unwrap() } else { 0.0 };
    if sigma_n <= RANK_TOL {
        return Err(FrameletError::RankDeficient(sigma_n));
    }
    let sigma = 1.0 - sigma_n * sigma_n;
    Ok((sigma, (sigma_n * sigma_n, 1.0)))
}
