//! B-spline low-pass masks and the square-root coefficient vector.

use crate::error::{FrameletError, Result};
use crate::mask::{FilterMask, OffsetGrid};

/// Cardinal B-spline order and ambient dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplineSpec {
    pub order: u32,
    pub dim: u32,
}

impl SplineSpec {
    pub fn new(order: u32, dim: u32) -> Result<Self> {
        if order == 0 || dim == 0 {
            return Err(FrameletError::InvalidDesign(
                "spline order and dimension must be positive".into(),
            ));
        }
        Ok(Self { order, dim })
    }
}

/// Low-pass mask of the order-`m` cardinal B-spline: binomial coefficients
/// `C(m, k) / 2^m`, centered for even orders and anchored on
/// `[-ceil(m/2), floor(m/2)]` for odd ones; dimension `s` masks are the
/// s-fold tensor product.
pub fn bspline_lowpass(spec: &SplineSpec) -> FilterMask {
    let m = spec.order as usize;
    let mut coeffs = Vec::with_capacity(m + 1);
    let mut binom = 1.0f64;
    for k in 0..=m {
        coeffs.push(binom / (1u64 << m) as f64);
        binom = binom * (m - k) as f64 / (k + 1) as f64;
    }
    let lo = -((m as i64 + 1) / 2);
    let hi = m as i64 / 2;
    let grid = OffsetGrid::rectangular(&[lo], &[hi]).unwrap();
    let mut mask = FilterMask::new(grid, coeffs).unwrap();
    for _ in 1..spec.dim {
        let one_d = mask_1d(spec.order);
        mask = mask.tensor_product(&one_d);
    }
    mask
}

fn mask_1d(order: u32) -> FilterMask {
    bspline_lowpass(&SplineSpec { order, dim: 1 })
}

/// The unit row `c = (sqrt(a_{n_k}))_k` of an admissible low-pass mask.
///
/// Non-positive coefficients are rejected: the diagonal-Gram route only
/// exists for strictly positive low-pass coefficients.
pub fn sqrt_vector(lowpass: &FilterMask) -> Result<Vec<f64>> {
    lowpass.check_lowpass(1e-10)?;
    Ok(lowpass.coeffs().iter().map(|&a| a.sqrt()).collect())
}
