//! SVD completion of a partial design to a Parseval frame of `R^N`, and the
//! projection-method bank of two-tap pair filters.

use nalgebra::DMatrix;

use crate::error::{FrameletError, Result};
use crate::linalg::{complete_orthonormal_basis, thin_svd};
use crate::mask::FilterMask;
use crate::spline::sqrt_vector;
use crate::uep::{assemble_bank, BankMetadata, FilterBank, Provenance};

/// Snap width around 1 inside which a singular value is treated as exact;
/// keeps float noise from spawning spurious near-zero completion rows.
const SIGMA_SNAP: f64 = 1e-12;

/// Feasibility slack on the largest singular value.
const SIGMA_MAX_TOL: f64 = 1e-10;

/// Default pruning threshold on completion-row norms.
pub const DEFAULT_PRUNE: f64 = 1e-8;

/// A unit row `c`, `L` designed rows orthogonal to it with their weights,
/// and (after completion) the rows that close the Parseval frame.
#[derive(Debug, Clone)]
pub struct FrameDesign {
    pub c: Vec<f64>,
    pub d1: DMatrix<f64>,
    pub lambda: Vec<f64>,
    pub d2: Option<DMatrix<f64>>,
    pub singular_values: Vec<f64>,
    pub prune_threshold: f64,
}

impl FrameDesign {
    pub fn new(c: Vec<f64>, d1: DMatrix<f64>, lambda: Vec<f64>) -> Result<Self> {
        let n = c.len();
        if d1.nrows() > 0 && d1.ncols() != n {
            return Err(FrameletError::DimensionMismatch(format!(
                "D1 has {} columns, c has length {}",
                d1.ncols(),
                n
            )));
        }
        if lambda.len() != d1.nrows() {
            return Err(FrameletError::DimensionMismatch(
                "one weight per designed row".into(),
            ));
        }
        let cnorm: f64 = c.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (cnorm - 1.0).abs() > 1e-10 {
            return Err(FrameletError::InvalidDesign(format!(
                "c must be a unit vector, got norm {cnorm}"
            )));
        }
        for i in 0..d1.nrows() {
            let dot: f64 = (0..n).map(|k| d1[(i, k)] * c[k]).sum();
            let rnorm: f64 = (0..n).map(|k| d1[(i, k)].powi(2)).sum::<f64>().sqrt();
            if dot.abs() > 1e-10 * rnorm.max(1.0) {
                return Err(FrameletError::InvalidDesign(format!(
                    "designed row {i} is not orthogonal to c (dot {dot:.3e})"
                )));
            }
        }
        Ok(Self {
            c,
            d1,
            lambda,
            d2: None,
            singular_values: Vec::new(),
            prune_threshold: DEFAULT_PRUNE,
        })
    }

    pub fn without_designed_rows(c: Vec<f64>) -> Self {
        let n = c.len();
        Self {
            c,
            d1: DMatrix::zeros(0, n),
            lambda: Vec::new(),
            d2: None,
            singular_values: Vec::new(),
            prune_threshold: DEFAULT_PRUNE,
        }
    }

    pub fn n(&self) -> usize {
        self.c.len()
    }

    pub fn l(&self) -> usize {
        self.d1.nrows()
    }

    /// `Q = (c; diag(lambda) D1)`.
    pub fn q(&self) -> DMatrix<f64> {
        let n = self.n();
        let l = self.l();
        let mut q = DMatrix::zeros(l + 1, n);
        for k in 0..n {
            q[(0, k)] = self.c[k];
        }
        for i in 0..l {
            for k in 0..n {
                q[(i + 1, k)] = self.lambda[i] * self.d1[(i, k)];
            }
        }
        q
    }

    /// Weighted designed rows stacked on top of the completion rows.
    pub fn stacked_d(&self) -> DMatrix<f64> {
        let n = self.n();
        let l = self.l();
        let d2 = self.d2.as_ref().expect("design must be completed first");
        let mut d = DMatrix::zeros(l + d2.nrows(), n);
        for i in 0..l {
            for k in 0..n {
                d[(i, k)] = self.lambda[i] * self.d1[(i, k)];
            }
        }
        for i in 0..d2.nrows() {
            for k in 0..n {
                d[(l + i, k)] = d2[(i, k)];
            }
        }
        d
    }
}

/// Completes the design: with `Q = U S1 V^T`, appends
/// `D2 = S2 V^T` where `S2 = diag(sqrt(1 - sigma_i^2), ..., 1, ..., 1)`,
/// dropping rows whose norm falls below the pruning threshold. The stacked
/// rows `(c; diag(lambda) D1; D2)` then form a Parseval frame for `R^N`.
///
/// Requires `sigma_max(Q) <= 1`: an overweighted design must be rescaled by
/// the optimizer before completion.
pub fn complete(mut design: FrameDesign) -> Result<FrameDesign> {
    let n = design.n();
    let q = design.q();
    let (svals, v_rows) = thin_svd(&q);
    if svals[0] > 1.0 + SIGMA_MAX_TOL {
        return Err(FrameletError::SpectralExcess(svals[0]));
    }
    // full right-singular basis: completion columns extend the thin set
    let v_full = complete_orthonormal_basis(&v_rows.transpose());
    let mut rows = Vec::new();
    for i in 0..n {
        let sigma = if i < svals.len() { svals[i] } else { 0.0 };
        let weight = if sigma >= 1.0 - SIGMA_SNAP {
            0.0
        } else {
            (1.0 - sigma * sigma).sqrt()
        };
        if weight <= design.prune_threshold {
            continue;
        }
        let col = v_full.column(i);
        rows.push((0..n).map(|k| weight * col[k]).collect::<Vec<f64>>());
    }
    let d2 = if rows.is_empty() {
        DMatrix::zeros(0, n)
    } else {
        DMatrix::from_fn(rows.len(), n, |i, j| rows[i][j])
    };
    design.singular_values = svals;
    design.d2 = Some(d2);
    Ok(design)
}

/// Projection-method bank: one two-tap difference filter
/// `sqrt(a_k a_t) (-delta_k + delta_t)` per offset pair `k < t`.
pub fn projection_bank(lowpass: &FilterMask) -> Result<FilterBank> {
    let c = sqrt_vector(lowpass)?;
    let n = c.len();
    let a = lowpass.coeffs();
    let mut d = DMatrix::zeros(n * (n - 1) / 2, n);
    let mut row = 0;
    for k in 0..n {
        for t in (k + 1)..n {
            // D row has -sqrt(a_t) at k and +sqrt(a_k) at t, so that
            // B = D diag(c) carries -+sqrt(a_k a_t) at the two taps
            d[(row, k)] = -a[t].sqrt();
            d[(row, t)] = a[k].sqrt();
            row += 1;
        }
    }
    let metadata = BankMetadata {
        singular_values: vec![1.0; n],
        sigma: Some(0.0),
        frame_bounds: Some((1.0, 1.0)),
        lambda: Vec::new(),
        diagonal_route: true,
    };
    assemble_bank(
        &c,
        &d,
        lowpass,
        vec![Provenance::Projection; n * (n - 1) / 2],
        metadata,
    )
}
