//! Decimated multi-level 2D analysis and synthesis with a filter bank.
//!
//! Analysis correlates the image with each mask (taps indexed by the grid
//! offsets, no flip) under periodic extension, scales by `2^{s/2}` and
//! keeps the even-phase samples; synthesis is the adjoint. For a bank
//! satisfying the UEP the transform is a tight frame: coefficient energy
//! equals image energy and the adjoint inverts the analysis exactly.

use crate::error::{FrameletError, Result};
use crate::mask::FilterMask;
use crate::uep::FilterBank;

/// Row-major real image.
#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<f64>,
}

impl Image {
    pub fn new(width: usize, height: usize, pixels: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 || pixels.len() != width * height {
            return Err(FrameletError::DimensionMismatch(format!(
                "{} pixels for {}x{}",
                pixels.len(),
                width,
                height
            )));
        }
        if pixels.iter().any(|p| !p.is_finite()) {
            return Err(FrameletError::InvalidDesign(
                "image contains non-finite values".into(),
            ));
        }
        Ok(Self { width, height, pixels })
    }

    pub fn zeros(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            pixels: vec![0.0; width * height],
        }
    }

    #[inline]
    pub fn at(&self, row: usize, col: usize) -> f64 {
        self.pixels[row * self.width + col]
    }

    #[inline]
    pub fn at_mut(&mut self, row: usize, col: usize) -> &mut f64 {
        &mut self.pixels[row * self.width + col]
    }

    pub fn energy(&self) -> f64 {
        self.pixels.iter().map(|p| p * p).sum()
    }

    /// Extends periodically (wrapping the leading rows/columns) to the
    /// requested size; a no-op when the size already matches.
    fn pad_periodic(&self, width: usize, height: usize) -> Image {
        if width == self.width && height == self.height {
            return self.clone();
        }
        let mut out = Image::zeros(width, height);
        for r in 0..height {
            for c in 0..width {
                *out.at_mut(r, c) = self.at(r % self.height, c % self.width);
            }
        }
        out
    }

    fn crop(&self, width: usize, height: usize) -> Image {
        let mut out = Image::zeros(width, height);
        for r in 0..height {
            for c in 0..width {
                *out.at_mut(r, c) = self.at(r, c);
            }
        }
        out
    }
}

/// One analysis level: the padded working shape, the pre-pad input shape
/// and one coefficient array per high-pass channel.
#[derive(Debug, Clone)]
pub struct DecompositionLevel {
    pub input_size: (usize, usize),
    pub padded_size: (usize, usize),
    pub channels: Vec<Image>,
}

/// Multi-level decomposition: per-level high-pass coefficients plus the
/// coarse low-pass residual. Boundary handling is periodic and the
/// downsampling keeps even-indexed samples.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub levels: Vec<DecompositionLevel>,
    pub residual: Image,
}

impl Decomposition {
    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    pub fn coefficient_energy(&self) -> f64 {
        let bands: f64 = self
            .levels
            .iter()
            .flat_map(|l| l.channels.iter())
            .map(Image::energy)
            .sum();
        bands + self.residual.energy()
    }
}

fn wrap(i: i64, n: usize) -> usize {
    i.rem_euclid(n as i64) as usize
}

/// Shared kernel of the periodic correlation and its adjoint; `flip`
/// negates the tap offsets.
fn filter_periodic(img: &Image, mask: &FilterMask, gain: f64, flip: bool) -> Image {
    let (w, h) = (img.width, img.height);
    let mut out = Image::zeros(w, h);
    let mut col_map = vec![0usize; w];
    for (n, &coeff) in mask.grid().offsets().iter().zip(mask.coeffs()) {
        if coeff == 0.0 {
            continue;
        }
        let (x, y) = if flip { (-n[0], -n[1]) } else { (n[0], n[1]) };
        let weight = coeff * gain;
        for (c, slot) in col_map.iter_mut().enumerate() {
            *slot = wrap(c as i64 + x, w);
        }
        for r in 0..h {
            let src_r = wrap(r as i64 - y, h);
            let src = &img.pixels[src_r * w..src_r * w + w];
            let dst = &mut out.pixels[r * w..r * w + w];
            for (d, &sc) in dst.iter_mut().zip(&col_map) {
                *d += weight * src[sc];
            }
        }
    }
    out
}

/// Periodic correlation: `out(i,j) = sum_k a_k f(i - y_k, j + x_k)`.
fn correlate(img: &Image, mask: &FilterMask, gain: f64) -> Image {
    filter_periodic(img, mask, gain, false)
}

/// Adjoint of [`correlate`]: periodic convolution.
fn convolve(img: &Image, mask: &FilterMask, gain: f64) -> Image {
    filter_periodic(img, mask, gain, true)
}

fn downsample(img: &Image) -> Image {
    let (w, h) = (img.width / 2, img.height / 2);
    let mut out = Image::zeros(w, h);
    for r in 0..h {
        for c in 0..w {
            *out.at_mut(r, c) = img.at(2 * r, 2 * c);
        }
    }
    out
}

fn upsample(img: &Image, width: usize, height: usize) -> Image {
    let mut out = Image::zeros(width, height);
    for r in 0..img.height {
        for c in 0..img.width {
            *out.at_mut(2 * r, 2 * c) = img.at(r, c);
        }
    }
    out
}

fn check_bank_dim(bank: &FilterBank) -> Result<()> {
    if bank.highpass.is_empty() {
        return Err(FrameletError::InvalidDesign("bank has no high-pass filters".into()));
    }
    if bank.lowpass.dim() != 2 {
        return Err(FrameletError::DimensionMismatch(
            "image transform needs a 2D bank".into(),
        ));
    }
    Ok(())
}

/// Multi-level analysis. Odd intermediate shapes are padded periodically to
/// even sizes before filtering, and the padded shapes are recorded so the
/// synthesis can crop back.
pub fn analyze(bank: &FilterBank, img: &Image, levels: usize) -> Result<Decomposition> {
    check_bank_dim(bank)?;
    if levels == 0 {
        return Err(FrameletError::InvalidDesign("levels must be >= 1".into()));
    }
    let min_dim = img.width.min(img.height);
    if (1usize << levels) > min_dim {
        return Err(FrameletError::InvalidDesign(format!(
            "{levels} levels exceed log2 of the {min_dim}-pixel image side"
        )));
    }
    let gain = 2.0; // 2^{s/2} with s = 2
    let mut current = img.clone();
    let mut out_levels = Vec::with_capacity(levels);
    for _ in 0..levels {
        let input_size = (current.width, current.height);
        let padded = current.pad_periodic(
            current.width + current.width % 2,
            current.height + current.height % 2,
        );
        let padded_size = (padded.width, padded.height);
        let channels: Vec<Image> = bank
            .highpass
            .iter()
            .map(|m| downsample(&correlate(&padded, m, gain)))
            .collect();
        current = downsample(&correlate(&padded, &bank.lowpass, gain));
        out_levels.push(DecompositionLevel {
            input_size,
            padded_size,
            channels,
        });
    }
    Ok(Decomposition {
        levels: out_levels,
        residual: current,
    })
}

/// Adjoint synthesis; inverts [`analyze`] exactly for Parseval banks.
pub fn synthesize(bank: &FilterBank, dec: &Decomposition) -> Result<Image> {
    check_bank_dim(bank)?;
    let gain = 2.0;
    let mut current = dec.residual.clone();
    for level in dec.levels.iter().rev() {
        let (pw, ph) = level.padded_size;
        if level.channels.len() != bank.highpass.len() {
            return Err(FrameletError::DimensionMismatch(format!(
                "level carries {} channels, bank has {}",
                level.channels.len(),
                bank.highpass.len()
            )));
        }
        let mut acc = convolve(&upsample(&current, pw, ph), &bank.lowpass, gain);
        for (z, mask) in level.channels.iter().zip(&bank.highpass) {
            if 2 * z.width != pw || 2 * z.height != ph {
                return Err(FrameletError::DimensionMismatch(
                    "channel shape inconsistent with level shape".into(),
                ));
            }
            let up = upsample(z, pw, ph);
            let part = convolve(&up, mask, gain);
            for (a, b) in acc.pixels.iter_mut().zip(&part.pixels) {
                *a += b;
            }
        }
        current = acc.crop(level.input_size.0, level.input_size.1);
    }
    Ok(current)
}

/// Relative energy lost when only the `keep` channels and the low-pass
/// residual are retained: `E(f) / ||f||^2`.
pub fn truncation_error(
    bank: &FilterBank,
    keep: &[usize],
    img: &Image,
    levels: usize,
) -> Result<f64> {
    for &i in keep {
        if i >= bank.highpass.len() {
            return Err(FrameletError::InvalidDesign(format!(
                "keep index {i} out of range for {} channels",
                bank.highpass.len()
            )));
        }
    }
    let dec = analyze(bank, img, levels)?;
    let mut kept = dec.residual.energy();
    for level in &dec.levels {
        for &i in keep {
            kept += level.channels[i].energy();
        }
    }
    let total = img.energy();
    if total == 0.0 {
        return Ok(0.0);
    }
    Ok((total - kept) / total)
}

/// Single full-resolution periodic correlation with a mask, for edge
/// response demonstrations. No downsampling and no gain.
pub fn convolve_demo(mask: &FilterMask, img: &Image) -> Image {
    correlate(img, mask, 1.0)
}
