//! Integer-offset filter masks, the matrix-to-vector map and
//! trigonometric-polynomial evaluation.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_complex::Complex64;

use crate::error::{FrameletError, Result};

/// Ordered set of pairwise distinct integer offsets in `Z^s`.
///
/// The ordering is canonical so that vectorization is a bijection: offsets
/// are sorted with the last coordinate varying slowest. For a 2D rectangular
/// grid this walks the bottom matrix row first, left to right, then proceeds
/// upward, which is exactly the layout the printed coefficient vectors of
/// the bundled designs use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OffsetGrid {
    dim: usize,
    offsets: Vec<Vec<i64>>,
}

fn canonical_cmp(a: &[i64], b: &[i64]) -> Ordering {
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

impl OffsetGrid {
    /// Builds a grid from arbitrary offsets, sorting them canonically.
    pub fn from_offsets(dim: usize, mut offsets: Vec<Vec<i64>>) -> Result<Self> {
        if dim == 0 || offsets.is_empty() {
            return Err(FrameletError::InvalidDesign(
                "grid needs dim >= 1 and at least one offset".into(),
            ));
        }
        for n in &offsets {
            if n.len() != dim {
                return Err(FrameletError::DimensionMismatch(format!(
                    "offset {:?} has {} components, expected {}",
                    n,
                    n.len(),
                    dim
                )));
            }
        }
        offsets.sort_by(|a, b| canonical_cmp(a, b));
        if offsets.windows(2).any(|w| w[0] == w[1]) {
            return Err(FrameletError::InvalidDesign("duplicate offsets".into()));
        }
        Ok(Self { dim, offsets })
    }

    /// Rectangular grid `[lo_1, hi_1] x ... x [lo_s, hi_s]` in canonical order.
    pub fn rectangular(lo: &[i64], hi: &[i64]) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(FrameletError::DimensionMismatch(
                "rectangular grid bounds must have equal nonzero length".into(),
            ));
        }
        if lo.iter().zip(hi).any(|(l, h)| l > h) {
            return Err(FrameletError::InvalidDesign("empty rectangular range".into()));
        }
        let dim = lo.len();
        let mut offsets = vec![vec![0i64; dim]];
        // last axis slowest: iterate axes from last to first, expanding
        for axis in (0..dim).rev() {
            let mut next = Vec::new();
            for v in lo[axis]..=hi[axis] {
                for base in &offsets {
                    let mut n = base.clone();
                    n[axis] = v;
                    next.push(n);
                }
            }
            offsets = next;
        }
        offsets.sort_by(|a, b| canonical_cmp(a, b));
        Ok(Self { dim, offsets })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    pub fn offsets(&self) -> &[Vec<i64>] {
        &self.offsets
    }

    pub fn offset(&self, k: usize) -> &[i64] {
        &self.offsets[k]
    }

    /// Position of an offset in canonical order, if present.
    pub fn index_of(&self, n: &[i64]) -> Option<usize> {
        self.offsets
            .binary_search_by(|probe| canonical_cmp(probe, n))
            .ok()
    }

    /// All half-integer shift representatives `q` in `{0, 1/2}^s`.
    pub fn half_shifts(&self) -> Vec<Vec<f64>> {
        let mut qs = Vec::with_capacity(1 << self.dim);
        for bits in 0..(1u32 << self.dim) {
            qs.push(
                (0..self.dim)
                    .map(|i| if bits >> i & 1 == 1 { 0.5 } else { 0.0 })
                    .collect(),
            );
        }
        qs
    }
}

/// Real coefficients on an [`OffsetGrid`]; evaluation yields the
/// trigonometric polynomial `sum_k a_k e^{2 pi i n_k . gamma}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterMask {
    grid: OffsetGrid,
    coeffs: Vec<f64>,
}

impl FilterMask {
    pub fn new(grid: OffsetGrid, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(FrameletError::DimensionMismatch(format!(
                "{} coefficients on a grid of {} offsets",
                coeffs.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, coeffs })
    }

    /// Single coefficient 1 at the origin of an s-dimensional grid.
    pub fn delta(dim: usize) -> Self {
        let grid = OffsetGrid::from_offsets(dim, vec![vec![0; dim]]).unwrap();
        Self { grid, coeffs: vec![1.0] }
    }

    pub fn grid(&self) -> &OffsetGrid {
        &self.grid
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.grid.dim()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff_sum(&self) -> f64 {
        self.coeffs.iter().sum()
    }

    /// `sum_k a_k e^{2 pi i n_k . gamma}`.
    pub fn evaluate(&self, gamma: &[f64]) -> Complex64 {
        assert_eq!(gamma.len(), self.dim(), "evaluation point dimension");
        let mut acc = Complex64::new(0.0, 0.0);
        for (n, &a) in self.grid.offsets().iter().zip(&self.coeffs) {
            let phase: f64 = n.iter().zip(gamma).map(|(&ni, &gi)| ni as f64 * gi).sum();
            acc += Complex64::from_polar(a, 2.0 * std::f64::consts::PI * phase);
        }
        acc
    }

    /// Low-pass admissibility: strictly positive coefficients, sum one and
    /// `H(q) = delta_{0,q}` on the half-integer shifts.
    pub fn check_lowpass(&self, tol: f64) -> Result<()> {
        if self.coeffs.iter().any(|&a| a <= 0.0) {
            return Err(FrameletError::InadmissibleLowpass(
                "coefficients must be strictly positive".into(),
            ));
        }
        let sum = self.coeff_sum();
        if (sum - 1.0).abs() > tol {
            return Err(FrameletError::InadmissibleLowpass(format!(
                "coefficients sum to {sum}, expected 1"
            )));
        }
        for q in self.grid.half_shifts() {
            let is_zero = q.iter().all(|&x| x == 0.0);
            let target = if is_zero { 1.0 } else { 0.0 };
            let dev = (self.evaluate(&q) - target).norm();
            if dev > tol {
                return Err(FrameletError::InadmissibleLowpass(format!(
                    "H(q) deviates by {dev:.3e} at q = {q:?}"
                )));
            }
        }
        Ok(())
    }

    /// Tensor product: the grid is the Cartesian product and coefficients
    /// multiply, so evaluation factorizes across the two argument blocks.
    pub fn tensor_product(&self, other: &FilterMask) -> FilterMask {
        let dim = self.dim() + other.dim();
        let mut offsets = Vec::with_capacity(self.len() * other.len());
        let mut coeffs = Vec::with_capacity(self.len() * other.len());
        for (n2, &a2) in other.grid.offsets().iter().zip(&other.coeffs) {
            for (n1, &a1) in self.grid.offsets().iter().zip(&self.coeffs) {
                let mut n = n1.clone();
                n.extend_from_slice(n2);
                offsets.push(n);
                coeffs.push(a1 * a2);
            }
        }
        // re-canonicalize jointly
        let mut order: Vec<usize> = (0..offsets.len()).collect();
        order.sort_by(|&i, &j| canonical_cmp(&offsets[i], &offsets[j]));
        let grid = OffsetGrid {
            dim,
            offsets: order.iter().map(|&i| offsets[i].clone()).collect(),
        };
        let coeffs = order.iter().map(|&i| coeffs[i]).collect();
        FilterMask { grid, coeffs }
    }
}

/// Vectorizes a 2D filter matrix: bottom matrix row first, left to right,
/// proceeding upward. `anchor = (row, col)` is the cell mapped to offset
/// `(0, 0)`; matrix columns increase the first offset coordinate and matrix
/// rows decrease the second.
pub fn vectorize(h: &[Vec<f64>], anchor: (usize, usize)) -> Result<FilterMask> {
    let n1 = h.len();
    if n1 == 0 || h[0].is_empty() {
        return Err(FrameletError::InvalidDesign("empty filter matrix".into()));
    }
    let n2 = h[0].len();
    if h.iter().any(|row| row.len() != n2) {
        return Err(FrameletError::DimensionMismatch("ragged filter matrix".into()));
    }
    if anchor.0 >= n1 || anchor.1 >= n2 {
        return Err(FrameletError::InvalidDesign(format!(
            "anchor {:?} outside a {}x{} matrix",
            anchor, n1, n2
        )));
    }
    let lo = [-(anchor.1 as i64), anchor.0 as i64 - (n1 as i64 - 1)];
    let hi = [n2 as i64 - 1 - anchor.1 as i64, anchor.0 as i64];
    let grid = OffsetGrid::rectangular(&lo, &hi)?;
    let mut coeffs = Vec::with_capacity(n1 * n2);
    for row in h.iter().rev() {
        coeffs.extend_from_slice(row);
    }
    FilterMask::new(grid, coeffs)
}

/// Vectorizes onto an existing grid: every nonzero cell of `h` must land on
/// an offset of `grid`; cells of `grid` not covered by `h` become zero.
pub fn vectorize_onto(h: &[Vec<f64>], anchor: (usize, usize), grid: &OffsetGrid) -> Result<FilterMask> {
    let small = vectorize(h, anchor)?;
    if small.dim() != grid.dim() {
        return Err(FrameletError::DimensionMismatch(format!(
            "filter matrix is {}-dimensional, grid is {}-dimensional",
            small.dim(),
            grid.dim()
        )));
    }
    let mut coeffs = vec![0.0; grid.len()];
    for (n, &v) in small.grid().offsets().iter().zip(small.coeffs()) {
        match grid.index_of(n) {
            Some(k) => coeffs[k] = v,
            None if v != 0.0 => {
                return Err(FrameletError::InvalidDesign(format!(
                    "filter support at {:?} lies outside the low-pass grid",
                    n
                )))
            }
            None => {}
        }
    }
    FilterMask::new(grid.clone(), coeffs)
}

/// A 2D filter matrix with the anchor cell mapping to offset `(0, 0)`.
pub type AnchoredMatrix = (Vec<Vec<f64>>, (usize, usize));

/// Inverse of [`vectorize`] for masks on 2D rectangular grids: returns the
/// matrix and the anchor cell that maps to offset `(0, 0)`.
pub fn to_matrix(mask: &FilterMask) -> Result<AnchoredMatrix> {
    if mask.dim() != 2 {
        return Err(FrameletError::DimensionMismatch(
            "matrix form is defined for 2D masks".into(),
        ));
    }
    let xs: Vec<i64> = mask.grid().offsets().iter().map(|n| n[0]).collect();
    let ys: Vec<i64> = mask.grid().offsets().iter().map(|n| n[1]).collect();
    let (xmin, xmax) = (*xs.iter().min().unwrap(), *xs.iter().max().unwrap());
    let (ymin, ymax) = (*ys.iter().min().unwrap(), *ys.iter().max().unwrap());
    let n1 = (ymax - ymin + 1) as usize;
    let n2 = (xmax - xmin + 1) as usize;
    if n1 * n2 != mask.len() {
        return Err(FrameletError::InvalidDesign(
            "mask grid is not rectangular".into(),
        ));
    }
    let mut m = vec![vec![0.0; n2]; n1];
    let mut lookup = HashMap::new();
    for (k, n) in mask.grid().offsets().iter().enumerate() {
        lookup.insert((n[0], n[1]), k);
    }
    for (r, row) in m.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            let x = xmin + c as i64;
            let y = ymax - r as i64;
            *cell = mask.coeffs()[lookup[&(x, y)]];
        }
    }
    Ok((m, (ymax as usize, (-xmin) as usize)))
}
