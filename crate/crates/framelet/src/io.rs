//! Bank persistence, image formats and decomposition output.
//!
//! Banks are stored as JSON with full-precision decimal floats and a
//! SHA-256 checksum of the coefficient payload, so files both diff cleanly
//! against published matrices and validate themselves on load.

use std::fs;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{FrameletError, Result};
use crate::mask::{FilterMask, OffsetGrid};
use crate::transform::{Decomposition, Image};
use crate::uep::{BankMetadata, FilterBank, Provenance};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DvmAnnotation {
    pub direction: Vec<f64>,
    pub order: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HighpassEntry {
    pub coeffs: Vec<f64>,
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dvm: Option<Vec<DvmAnnotation>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FileMetadata {
    pub singular_values: Vec<f64>,
    pub sigma: Option<f64>,
    pub frame_bounds: Option<(f64, f64)>,
    pub lambda: Vec<f64>,
    pub diagonal_route: bool,
    pub tool_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<serde_json::Value>,
}

/// On-disk form of a filter bank.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BankFile {
    pub format_version: u32,
    pub dim: usize,
    pub grid: Vec<Vec<i64>>,
    pub lowpass: Vec<f64>,
    pub highpass: Vec<HighpassEntry>,
    pub metadata: FileMetadata,
    pub checksum: String,
}

fn payload_checksum(lowpass: &[f64], highpass: &[HighpassEntry]) -> String {
    let mut hasher = Sha256::new();
    for &v in lowpass {
        hasher.update(v.to_le_bytes());
    }
    for entry in highpass {
        for &v in &entry.coeffs {
            hasher.update(v.to_le_bytes());
        }
    }
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

impl BankFile {
    pub fn from_bank(bank: &FilterBank) -> Self {
        let highpass: Vec<HighpassEntry> = bank
            .highpass
            .iter()
            .zip(&bank.provenance)
            .map(|(m, &p)| HighpassEntry {
                coeffs: m.coeffs().to_vec(),
                provenance: p,
                dvm: None,
            })
            .collect();
        let checksum = payload_checksum(bank.lowpass.coeffs(), &highpass);
        BankFile {
            format_version: FORMAT_VERSION,
            dim: bank.lowpass.dim(),
            grid: bank.lowpass.grid().offsets().to_vec(),
            lowpass: bank.lowpass.coeffs().to_vec(),
            highpass,
            metadata: FileMetadata {
                singular_values: bank.metadata.singular_values.clone(),
                sigma: bank.metadata.sigma,
                frame_bounds: bank.metadata.frame_bounds,
                lambda: bank.metadata.lambda.clone(),
                diagonal_route: bank.metadata.diagonal_route,
                tool_version: env!("CARGO_PKG_VERSION").to_string(),
                options: None,
            },
            checksum,
        }
    }

    pub fn into_bank(self) -> Result<FilterBank> {
        if self.format_version != FORMAT_VERSION {
            return Err(FrameletError::Malformed(format!(
                "unsupported format version {}",
                self.format_version
            )));
        }
        let expected = payload_checksum(&self.lowpass, &self.highpass);
        if expected != self.checksum {
            return Err(FrameletError::Malformed(
                "coefficient checksum mismatch".into(),
            ));
        }
        let grid = OffsetGrid::from_offsets(self.dim, self.grid.clone())
            .map_err(|e| FrameletError::Malformed(e.to_string()))?;
        if grid.offsets() != self.grid.as_slice() {
            return Err(FrameletError::Malformed(
                "grid offsets are not in canonical order".into(),
            ));
        }
        let lowpass = FilterMask::new(grid.clone(), self.lowpass)
            .map_err(|e| FrameletError::Malformed(e.to_string()))?;
        let mut highpass = Vec::with_capacity(self.highpass.len());
        let mut provenance = Vec::with_capacity(self.highpass.len());
        for entry in self.highpass {
            highpass.push(
                FilterMask::new(grid.clone(), entry.coeffs)
                    .map_err(|e| FrameletError::Malformed(e.to_string()))?,
            );
            provenance.push(entry.provenance);
        }
        Ok(FilterBank {
            lowpass,
            highpass,
            provenance,
            metadata: BankMetadata {
                singular_values: self.metadata.singular_values,
                sigma: self.metadata.sigma,
                frame_bounds: self.metadata.frame_bounds,
                lambda: self.metadata.lambda,
                diagonal_route: self.metadata.diagonal_route,
            },
        })
    }
}

pub fn write_bank(bank: &FilterBank, path: &Path) -> Result<()> {
    let file = BankFile::from_bank(bank);
    let json = serde_json::to_string_pretty(&file)
        .map_err(|e| FrameletError::NumericalFailure(e.to_string()))?;
    fs::write(path, json)?;
    Ok(())
}

pub fn read_bank(path: &Path) -> Result<FilterBank> {
    let text = fs::read_to_string(path)?;
    let file: BankFile =
        serde_json::from_str(&text).map_err(|e| FrameletError::Malformed(e.to_string()))?;
    file.into_bank()
}

/// Reads a binary PGM (P5) image with 8- or 16-bit samples.
pub fn read_pgm(path: &Path) -> Result<Image> {
    let mut bytes = Vec::new();
    fs::File::open(path)?.read_to_end(&mut bytes)?;
    parse_pgm(&bytes)
}

fn parse_pgm(bytes: &[u8]) -> Result<Image> {
    let mut pos = 0usize;
    let mut token = |bytes: &[u8]| -> Result<String> {
        // skip whitespace and comments
        loop {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if pos < bytes.len() && bytes[pos] == b'#' {
                while pos < bytes.len() && bytes[pos] != b'\n' {
                    pos += 1;
                }
            } else {
                break;
            }
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return Err(FrameletError::Malformed("truncated PGM header".into()));
        }
        Ok(String::from_utf8_lossy(&bytes[start..pos]).into_owned())
    };
    let magic = token(bytes)?;
    if magic != "P5" {
        return Err(FrameletError::Malformed(format!(
            "expected P5 magic, found '{magic}'"
        )));
    }
    let width: usize = token(bytes)?
        .parse()
        .map_err(|_| FrameletError::Malformed("bad PGM width".into()))?;
    let height: usize = token(bytes)?
        .parse()
        .map_err(|_| FrameletError::Malformed("bad PGM height".into()))?;
    let maxval: u32 = token(bytes)?
        .parse()
        .map_err(|_| FrameletError::Malformed("bad PGM maxval".into()))?;
    if maxval == 0 || maxval > 65535 {
        return Err(FrameletError::Malformed(format!("bad PGM maxval {maxval}")));
    }
    pos += 1; // single whitespace after maxval
    let data = &bytes[pos..];
    let mut pixels = Vec::with_capacity(width * height);
    if maxval < 256 {
        if data.len() < width * height {
            return Err(FrameletError::Malformed("truncated PGM data".into()));
        }
        pixels.extend(data[..width * height].iter().map(|&b| b as f64));
    } else {
        if data.len() < 2 * width * height {
            return Err(FrameletError::Malformed("truncated PGM data".into()));
        }
        for i in 0..width * height {
            let v = u16::from_be_bytes([data[2 * i], data[2 * i + 1]]);
            pixels.push(v as f64);
        }
    }
    Image::new(width, height, pixels)
}

pub fn write_pgm(img: &Image, maxval: u16, path: &Path) -> Result<()> {
    let lo = img.pixels.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = img.pixels.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let span = if hi > lo { hi - lo } else { 1.0 };
    let mut out = format!("P5\n{} {}\n{}\n", img.width, img.height, maxval).into_bytes();
    for &p in &img.pixels {
        let v = ((p - lo) / span * maxval as f64).round() as u32;
        if maxval < 256 {
            out.push(v as u8);
        } else {
            out.extend((v as u16).to_be_bytes());
        }
    }
    fs::write(path, out)?;
    Ok(())
}

/// Headerless CSV of floats, one image row per line.
pub fn read_csv_image(path: &Path) -> Result<Image> {
    let text = fs::read_to_string(path)?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row: std::result::Result<Vec<f64>, _> =
            line.split(',').map(|t| t.trim().parse::<f64>()).collect();
        rows.push(row.map_err(|e| FrameletError::Malformed(format!("bad CSV number: {e}")))?);
    }
    if rows.is_empty() {
        return Err(FrameletError::Malformed("empty CSV image".into()));
    }
    let width = rows[0].len();
    if rows.iter().any(|r| r.len() != width) {
        return Err(FrameletError::Malformed("ragged CSV image".into()));
    }
    let height = rows.len();
    Image::new(width, height, rows.into_iter().flatten().collect())
}

pub fn write_csv_image(img: &Image, path: &Path) -> Result<()> {
    let mut out = String::new();
    for r in 0..img.height {
        for c in 0..img.width {
            if c > 0 {
                out.push(',');
            }
            out.push_str(&format!("{:e}", img.at(r, c)));
        }
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

#[derive(Debug, Serialize, Deserialize)]
pub struct DecompositionManifest {
    pub format: String,
    pub boundary_mode: String,
    pub downsample_phase: String,
    pub levels: usize,
    pub channels: usize,
    pub original_size: (usize, usize),
    /// Per level: (input size, padded size); padding is periodic.
    pub level_sizes: Vec<((usize, usize), (usize, usize))>,
    pub padded: bool,
    pub files: Vec<String>,
    pub image_energy: f64,
    pub coefficient_energy: f64,
    pub energy_ratio: f64,
}

/// Writes one CSV per channel per level plus `residual.csv` and
/// `manifest.json` into `dir`.
pub fn write_decomposition(
    dec: &Decomposition,
    image_energy: f64,
    dir: &Path,
) -> Result<DecompositionManifest> {
    fs::create_dir_all(dir)?;
    let mut files = Vec::new();
    for (j, level) in dec.levels.iter().enumerate() {
        for (i, ch) in level.channels.iter().enumerate() {
            let name = format!("level{}_channel{:02}.csv", j + 1, i);
            write_csv_image(ch, &dir.join(&name))?;
            files.push(name);
        }
    }
    write_csv_image(&dec.residual, &dir.join("residual.csv"))?;
    files.push("residual.csv".into());
    let coeff_energy = dec.coefficient_energy();
    let manifest = DecompositionManifest {
        format: "framelet-decomposition/1".into(),
        boundary_mode: "periodic".into(),
        downsample_phase: "even".into(),
        levels: dec.levels.len(),
        channels: dec.levels.first().map_or(0, |l| l.channels.len()),
        original_size: dec.levels.first().map_or((0, 0), |l| l.input_size),
        level_sizes: dec
            .levels
            .iter()
            .map(|l| (l.input_size, l.padded_size))
            .collect(),
        padded: dec.levels.iter().any(|l| l.input_size != l.padded_size),
        files,
        image_energy,
        coefficient_energy: coeff_energy,
        energy_ratio: if image_energy > 0.0 {
            coeff_energy / image_energy
        } else {
            1.0
        },
    };
    let json = serde_json::to_string_pretty(&manifest)
        .map_err(|e| FrameletError::NumericalFailure(e.to_string()))?;
    fs::write(dir.join("manifest.json"), json)?;
    Ok(manifest)
}
