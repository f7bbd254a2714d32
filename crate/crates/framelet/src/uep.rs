//! Coefficient-space unitary extension principle: the Gram matrix
//! `M = a^T a + B^T B`, its diagonality certificate, the sampled modulation
//! cross-check and filter-bank assembly.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{FrameletError, Result};
use crate::mask::FilterMask;

/// Where a high-pass row came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// User-designed filter that survived into the bank.
    Designed,
    /// Row added by the SVD completion.
    Completion,
    /// Two-tap pair filter of the projection method.
    Projection,
}

/// `M = a^T a + B^T B` for a coefficient row `a` and high-pass matrix `B`.
#[derive(Debug, Clone)]
pub struct GramMatrix {
    entries: DMatrix<f64>,
}

impl GramMatrix {
    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn n(&self) -> usize {
        self.entries.nrows()
    }
}

/// Exact Gram matrix of the stacked coefficient rows.
pub fn gram(a: &[f64], b: &DMatrix<f64>) -> Result<GramMatrix> {
    let n = a.len();
    if b.ncols() != n && !(b.nrows() == 0 && b.ncols() == 0) {
        return Err(FrameletError::DimensionMismatch(format!(
            "B has {} columns, a has length {}",
            b.ncols(),
            n
        )));
    }
    let av = DMatrix::from_row_slice(1, n, a);
    let mut m = av.transpose() * av;
    if b.nrows() > 0 {
        m += b.transpose() * b;
    }
    Ok(GramMatrix { entries: m })
}

/// Extra numbers carried by a constructed bank: the singular values of the
/// design matrix, the truncation error constant and the frame bounds of the
/// truncated (designed-only) family when the design had full rank.
#[derive(Debug, Clone, Default, serde::Serialize, serde::Deserialize)]
pub struct BankMetadata {
    pub singular_values: Vec<f64>,
    pub sigma: Option<f64>,
    pub frame_bounds: Option<(f64, f64)>,
    pub lambda: Vec<f64>,
    /// False for externally supplied banks that satisfy the UEP without a
    /// diagonal Gram matrix; the diagonal certificate is then informational.
    pub diagonal_route: bool,
}

/// A low-pass mask plus `v` high-pass masks on one shared grid.
#[derive(Debug, Clone)]
pub struct FilterBank {
    pub lowpass: FilterMask,
    pub highpass: Vec<FilterMask>,
    pub provenance: Vec<Provenance>,
    pub metadata: BankMetadata,
}

impl FilterBank {
    pub fn v(&self) -> usize {
        self.highpass.len()
    }

    pub fn n(&self) -> usize {
        self.lowpass.len()
    }

    /// High-pass coefficient rows as a `v x N` matrix.
    pub fn highpass_matrix(&self) -> DMatrix<f64> {
        let n = self.n();
        let mut b = DMatrix::zeros(self.highpass.len(), n);
        for (i, m) in self.highpass.iter().enumerate() {
            for (j, &x) in m.coeffs().iter().enumerate() {
                b[(i, j)] = x;
            }
        }
        b
    }

    pub fn gram(&self) -> GramMatrix {
        gram(self.lowpass.coeffs(), &self.highpass_matrix()).expect("bank masks share a grid")
    }

    /// Indices of the designed channels (0-based, low-pass excluded).
    pub fn designed_channels(&self) -> Vec<usize> {
        self.provenance
            .iter()
            .enumerate()
            .filter(|(_, p)| **p == Provenance::Designed)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Outcome of the exact coefficient-space certificate.
#[derive(Debug, Clone)]
pub struct DiagonalUepReport {
    /// Largest off-diagonal Gram entry magnitude.
    pub max_offdiag: f64,
    /// Largest deviation of the Gram diagonal from the low-pass coefficients.
    pub max_diag_dev: f64,
    /// Largest deviation of `sum_k m_kk e^{-2 pi i n_k . q}` from
    /// `delta_{0,q}` over the half-integer shifts.
    pub max_shift_dev: f64,
    pub tol: f64,
    pub pass: bool,
}

impl DiagonalUepReport {
    pub fn worst(&self) -> f64 {
        self.max_offdiag.max(self.max_diag_dev).max(self.max_shift_dev)
    }
}

/// Grid-free certificate: a diagonal Gram matrix with diagonal equal to the
/// low-pass coefficients decides the UEP exactly in coefficient space.
pub fn check_diagonal_uep(bank: &FilterBank, tol: f64) -> DiagonalUepReport {
    let m = bank.gram();
    let a = bank.lowpass.coeffs();
    let n = m.n();
    let mut max_offdiag = 0.0f64;
    let mut max_diag_dev = 0.0f64;
    for (k, &ak) in a.iter().enumerate().take(n) {
        for t in 0..n {
            if k == t {
                max_diag_dev = max_diag_dev.max((m.entries[(k, k)] - ak).abs());
            } else {
                max_offdiag = max_offdiag.max(m.entries[(k, t)].abs());
            }
        }
    }
    let mut max_shift_dev = 0.0f64;
    for q in bank.lowpass.grid().half_shifts() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, nk) in bank.lowpass.grid().offsets().iter().enumerate() {
            let phase: f64 = nk.iter().zip(&q).map(|(&ni, &qi)| ni as f64 * qi).sum();
            acc += Complex64::from_polar(m.entries[(k, k)], -2.0 * std::f64::consts::PI * phase);
        }
        let target = if q.iter().all(|&x| x == 0.0) { 1.0 } else { 0.0 };
        max_shift_dev = max_shift_dev.max((acc - target).norm());
    }
    let pass = max_offdiag <= tol && max_diag_dev <= tol && max_shift_dev <= tol;
    DiagonalUepReport {
        max_offdiag,
        max_diag_dev,
        max_shift_dev,
        tol,
        pass,
    }
}

/// Sampled modulation check of the UEP on a uniform grid of the torus.
///
/// Covers banks that satisfy the UEP without a diagonal Gram matrix; for
/// diagonal-route banks it is a cross-check of the exact certificate.
pub fn check_general_uep(
    h0: &FilterMask,
    h1: &[FilterMask],
    grid_size: usize,
    tol: f64,
) -> Result<SampledUepReport> {
    if grid_size < 2 {
        return Err(FrameletError::InvalidDesign("grid_size must be >= 2".into()));
    }
    let s = h0.dim();
    let shifts = h0.grid().half_shifts();
    let mut max_dev = 0.0f64;
    let total = grid_size.pow(s as u32);
    let mut gamma = vec![0.0f64; s];
    for idx in 0..total {
        let mut rem = idx;
        for g in gamma.iter_mut() {
            *g = (rem % grid_size) as f64 / grid_size as f64;
            rem /= grid_size;
        }
        for q in &shifts {
            let shifted: Vec<f64> = gamma.iter().zip(q).map(|(&g, &qi)| g + qi).collect();
            let mut acc = h0.evaluate(&shifted).conj() * h0.evaluate(&gamma);
            for m in h1 {
                acc += m.evaluate(&shifted).conj() * m.evaluate(&gamma);
            }
            let target = if q.iter().all(|&x| x == 0.0) { 1.0 } else { 0.0 };
            max_dev = max_dev.max((acc - target).norm());
        }
    }
    Ok(SampledUepReport {
        max_dev,
        grid_size,
        tol,
        pass: max_dev <= tol,
    })
}

#[derive(Debug, Clone)]
pub struct SampledUepReport {
    pub max_dev: f64,
    pub grid_size: usize,
    pub tol: f64,
    pub pass: bool,
}

/// Assembles `B = D diag(sqrt(a))` into a bank after checking that the rows
/// of `(c; D)` form a Parseval frame for `R^N`.
pub fn assemble_bank(
    c: &[f64],
    d: &DMatrix<f64>,
    lowpass: &FilterMask,
    provenance: Vec<Provenance>,
    metadata: BankMetadata,
) -> Result<FilterBank> {
    let n = c.len();
    if lowpass.len() != n {
        return Err(FrameletError::DimensionMismatch(
            "sqrt vector and low-pass mask disagree on N".into(),
        ));
    }
    if d.nrows() > 0 && d.ncols() != n {
        return Err(FrameletError::DimensionMismatch(format!(
            "D has {} columns, expected {}",
            d.ncols(),
            n
        )));
    }
    if provenance.len() != d.nrows() {
        return Err(FrameletError::DimensionMismatch(
            "one provenance tag per high-pass row".into(),
        ));
    }
    let cv = DMatrix::from_row_slice(1, n, c);
    let mut gram_stack = cv.transpose() * &cv;
    if d.nrows() > 0 {
        gram_stack += d.transpose() * d;
    }
    let dev = (&gram_stack - DMatrix::<f64>::identity(n, n)).abs().max();
    if dev > 1e-8 {
        return Err(FrameletError::NotParseval(dev));
    }
    // diagonal Gram forces v + 1 >= N
    debug_assert!(d.nrows() + 1 >= n);
    let mut highpass = Vec::with_capacity(d.nrows());
    for i in 0..d.nrows() {
        let coeffs: Vec<f64> = (0..n).map(|k| d[(i, k)] * c[k]).collect();
        highpass.push(FilterMask::new(lowpass.grid().clone(), coeffs)?);
    }
    Ok(FilterBank {
        lowpass: lowpass.clone(),
        highpass,
        provenance,
        metadata,
    })
}
