//! Command-line surface: construct, verify, apply, dvm.
//!
//! Exit codes: 0 on success, 1 on user or input errors, 2 on numerical or
//! verification failures. `FRAMELET_TOL` overrides the default
//! verification tolerance.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Deserialize;

use crate::dvm::{dvm_order, max_dvm_filter, Direction};
use crate::error::{FrameletError, Result};
use crate::io;
use crate::mask::{to_matrix, vectorize};
use crate::pipeline::{
    run_pipeline, Demo, DesignRequest, DesignedFilter, LowpassSpec, PipelineOptions,
};
use crate::spline::SplineSpec;
use crate::transform::{analyze, synthesize, truncation_error};
use crate::uep::{check_diagonal_uep, check_general_uep};

#[derive(Parser)]
#[command(name = "framelet", version, about = "Directional Parseval framelet filter banks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a filter bank from a demo name, a design file or a plain
    /// B-spline low-pass, and write it to a bank file.
    Construct {
        /// Bundled design: ex1|ex2|ex3|ex4|cor26|d4
        #[arg(long, conflicts_with = "design")]
        demo: Option<String>,
        /// Declarative design request (JSON)
        #[arg(long)]
        design: Option<PathBuf>,
        /// B-spline order for an SVD-only bank
        #[arg(long, conflicts_with_all = ["demo", "design"])]
        spline_order: Option<u32>,
        /// Ambient dimension for --spline-order
        #[arg(long, default_value_t = 2)]
        dim: u32,
        /// Output bank file
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check a bank file: exact coefficient certificate, sampled modulation
    /// check, per-filter zero sums and any stored DVM annotations.
    Verify {
        bank: PathBuf,
        /// Sampled check grid resolution per torus axis
        #[arg(long, default_value_t = 32)]
        grid: usize,
    },
    /// Decompose an image (PGM or CSV) and write per-channel coefficients.
    Apply {
        bank: PathBuf,
        image: PathBuf,
        #[arg(long, default_value_t = 1)]
        levels: usize,
        /// Channels kept for the truncation-error report, e.g. "1-8" or "1,3,5" (1-based)
        #[arg(long)]
        keep: Option<String>,
        /// Output directory for coefficient CSVs and the manifest
        #[arg(long)]
        out: PathBuf,
    },
    /// Report directional vanishing moment orders, optionally constructing
    /// the maximal-order filter for the bank's low-pass.
    Dvm {
        bank: PathBuf,
        /// Direction as "x,y"
        #[arg(long)]
        direction: String,
        /// Restrict to one high-pass filter (1-based)
        #[arg(long)]
        filter: Option<usize>,
        /// Emit the maximal-DVM filter for this direction
        #[arg(long)]
        construct_max: bool,
    },
}

fn verify_tolerance() -> f64 {
    std::env::var("FRAMELET_TOL")
        .ok()
        .and_then(|s| s.parse::<f64>().ok())
        .unwrap_or(1e-10)
}

/// Parses CLI arguments from the process environment and runs the command.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match cli.command {
        Command::Construct {
            demo,
            design,
            spline_order,
            dim,
            output,
        } => cmd_construct(demo, design, spline_order, dim, &output),
        Command::Verify { bank, grid } => cmd_verify(&bank, grid),
        Command::Apply {
            bank,
            image,
            levels,
            keep,
            out,
        } => cmd_apply(&bank, &image, levels, keep.as_deref(), &out),
        Command::Dvm {
            bank,
            direction,
            filter,
            construct_max,
        } => cmd_dvm(&bank, &direction, filter, construct_max),
    }
}

fn user_error(e: &FrameletError) -> bool {
    matches!(
        e,
        FrameletError::InvalidDesign(_)
            | FrameletError::DimensionMismatch(_)
            | FrameletError::InadmissibleLowpass(_)
            | FrameletError::InadmissibleDirection(_, _)
            | FrameletError::Malformed(_)
            | FrameletError::Io(_)
    )
}

fn exit_code(e: &FrameletError) -> i32 {
    if user_error(e) {
        1
    } else {
        2
    }
}

#[derive(Deserialize)]
struct DesignFileEntry {
    matrix: Vec<Vec<f64>>,
    anchor: (usize, usize),
}

#[derive(Deserialize)]
struct DesignFile {
    spline_order: Option<u32>,
    #[serde(default = "default_dim")]
    dim: u32,
    lowpass_matrix: Option<Vec<Vec<f64>>>,
    lowpass_anchor: Option<(usize, usize)>,
    #[serde(default)]
    designed: Vec<DesignFileEntry>,
    lambda: Option<Vec<f64>>,
    optimize: Option<bool>,
    prune_threshold: Option<f64>,
}

fn default_dim() -> u32 {
    2
}

fn load_design(path: &Path) -> Result<DesignRequest> {
    let text = std::fs::read_to_string(path)?;
    let file: DesignFile =
        serde_json::from_str(&text).map_err(|e| FrameletError::Malformed(e.to_string()))?;
    let lowpass = if let Some(matrix) = file.lowpass_matrix {
        let anchor = file.lowpass_anchor.unwrap_or((
            (matrix.len().max(1) - 1) / 2,
            (matrix.first().map_or(1, Vec::len).max(1) - 1) / 2,
        ));
        LowpassSpec::Mask(vectorize(&matrix, anchor)?)
    } else if let Some(order) = file.spline_order {
        LowpassSpec::Spline(SplineSpec::new(order, file.dim)?)
    } else {
        return Err(FrameletError::InvalidDesign(
            "design file needs spline_order or lowpass_matrix".into(),
        ));
    };
    let mut options = PipelineOptions::default();
    if let Some(p) = file.prune_threshold {
        options.prune_threshold = p;
    }
    if let Some(lambda) = file.lambda {
        options.user_lambda = Some(lambda);
        options.optimize = file.optimize.unwrap_or(false);
    } else if let Some(opt) = file.optimize {
        options.optimize = opt;
    }
    Ok(DesignRequest {
        lowpass,
        designed: file
            .designed
            .into_iter()
            .map(|e| DesignedFilter {
                matrix: e.matrix,
                anchor: e.anchor,
            })
            .collect(),
        options,
    })
}

fn cmd_construct(
    demo_name: Option<String>,
    design: Option<PathBuf>,
    spline_order: Option<u32>,
    dim: u32,
    output: &Path,
) -> i32 {
    let bank = if let Some(name) = demo_name {
        name.parse::<Demo>().and_then(crate::pipeline::demo)
    } else if let Some(path) = design {
        load_design(&path).and_then(|req| run_pipeline(&req))
    } else if let Some(order) = spline_order {
        SplineSpec::new(order, dim)
            .map(|s| DesignRequest::svd_only(LowpassSpec::Spline(s)))
            .and_then(|req| run_pipeline(&req))
    } else {
        Err(FrameletError::InvalidDesign(
            "one of --demo, --design or --spline-order is required".into(),
        ))
    };
    let bank = match bank {
        Ok(b) => b,
        Err(e) => {
            eprintln!("construct: {e}");
            return exit_code(&e);
        }
    };
    if let Err(e) = io::write_bank(&bank, output) {
        eprintln!("construct: {e}");
        return exit_code(&e);
    }
    let tol = verify_tolerance();
    let report = check_diagonal_uep(&bank, tol);
    println!(
        "bank: {} high-pass filters on a {}-point grid (N = {})",
        bank.v(),
        bank.n(),
        bank.n()
    );
    println!(
        "diagonal certificate: offdiag {:.3e}, diag dev {:.3e}, shift dev {:.3e}",
        report.max_offdiag, report.max_diag_dev, report.max_shift_dev
    );
    match bank.metadata.sigma {
        Some(sigma) => println!("truncation error constant sigma = {sigma:.6}"),
        None => println!("truncation error constant undefined (design not full rank)"),
    }
    println!("wrote {}", output.display());
    if bank.metadata.diagonal_route && !report.pass {
        eprintln!("construct: diagonal certificate failed at tolerance {tol:.1e}");
        return 2;
    }
    0
}

fn cmd_verify(bank_path: &Path, grid: usize) -> i32 {
    let bank = match io::read_bank(bank_path) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("verify: {e}");
            return 2;
        }
    };
    let tol = verify_tolerance();
    let diag = check_diagonal_uep(&bank, tol);
    let sampled = match check_general_uep(&bank.lowpass, &bank.highpass, grid, tol.max(1e-12)) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("verify: {e}");
            return 2;
        }
    };
    let mut zero_sum_dev = 0.0f64;
    for m in &bank.highpass {
        zero_sum_dev = zero_sum_dev.max(m.coeff_sum().abs());
    }
    let route = if bank.metadata.diagonal_route {
        "authoritative"
    } else {
        "informational (non-diagonal bank)"
    };
    println!(
        "coefficient certificate [{}]: offdiag {:.3e}, diag dev {:.3e}, shift dev {:.3e}",
        route, diag.max_offdiag, diag.max_diag_dev, diag.max_shift_dev
    );
    println!(
        "sampled modulation check ({}^{} points): max deviation {:.3e}",
        sampled.grid_size,
        bank.lowpass.dim(),
        sampled.max_dev
    );
    println!("high-pass zero sums: max |H(0)| = {zero_sum_dev:.3e}");

    // re-check stored DVM annotations, if the file carries any
    let mut annotations_ok = true;
    if let Ok(text) = std::fs::read_to_string(bank_path) {
        if let Ok(file) = serde_json::from_str::<io::BankFile>(&text) {
            for (i, entry) in file.highpass.iter().enumerate() {
                for ann in entry.dvm.iter().flatten() {
                    match Direction::new(&ann.direction, bank.lowpass.grid()) {
                        Ok(dir) => {
                            let order =
                                dvm_order(&bank.highpass[i], &dir, 1e-8, bank.n() as u32);
                            let ok = order >= ann.order;
                            annotations_ok &= ok;
                            println!(
                                "dvm annotation: filter {} direction {:?}: stored {} computed {}{}",
                                i + 1,
                                ann.direction,
                                ann.order,
                                order,
                                if ok { "" } else { "  [MISMATCH]" }
                            );
                        }
                        Err(e) => {
                            annotations_ok = false;
                            println!("dvm annotation on filter {}: {e}", i + 1);
                        }
                    }
                }
            }
        }
    }

    let pass = if bank.metadata.diagonal_route {
        diag.pass && sampled.pass && zero_sum_dev <= tol && annotations_ok
    } else {
        sampled.pass && zero_sum_dev <= tol.max(1e-10) && annotations_ok
    };
    println!("verdict: {}", if pass { "PASS" } else { "FAIL" });
    if pass {
        0
    } else {
        2
    }
}

fn parse_keep(spec: &str, channels: usize) -> Result<Vec<usize>> {
    let mut keep = Vec::new();
    for part in spec.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        if let Some((a, b)) = part.split_once('-') {
            let lo: usize = a.trim().parse().map_err(|_| {
                FrameletError::InvalidDesign(format!("bad keep range '{part}'"))
            })?;
            let hi: usize = b.trim().parse().map_err(|_| {
                FrameletError::InvalidDesign(format!("bad keep range '{part}'"))
            })?;
            for i in lo..=hi {
                keep.push(i);
            }
        } else {
            keep.push(part.parse().map_err(|_| {
                FrameletError::InvalidDesign(format!("bad keep index '{part}'"))
            })?);
        }
    }
    let mut out = Vec::new();
    for i in keep {
        if i == 0 || i > channels {
            return Err(FrameletError::InvalidDesign(format!(
                "keep index {i} out of range 1..={channels}"
            )));
        }
        out.push(i - 1);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn load_image(path: &Path) -> Result<crate::transform::Image> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("pgm") => io::read_pgm(path),
        _ => io::read_csv_image(path),
    }
}

fn cmd_apply(
    bank_path: &Path,
    image_path: &Path,
    levels: usize,
    keep: Option<&str>,
    out: &Path,
) -> i32 {
    let run = || -> Result<i32> {
        let bank = io::read_bank(bank_path)?;
        let img = load_image(image_path)?;
        let dec = analyze(&bank, &img, levels)?;
        let manifest = io::write_decomposition(&dec, img.energy(), out)?;
        println!(
            "decomposed {}x{} image over {} levels x {} channels -> {}",
            img.width,
            img.height,
            manifest.levels,
            manifest.channels,
            out.display()
        );
        if manifest.padded {
            println!("note: odd input extended periodically to even sizes (see manifest)");
        }
        println!("energy ratio (coefficients / image): {:.12}", manifest.energy_ratio);
        if let Some(keep_spec) = keep {
            let keep_idx = parse_keep(keep_spec, bank.v())?;
            let ratio = truncation_error(&bank, &keep_idx, &img, levels)?;
            println!("truncation E(f)/||f||^2 keeping {:?}: {:.6}", keep_spec, ratio);
            match bank.metadata.sigma {
                Some(sigma) => println!("bound sigma = {sigma:.6}"),
                None => println!("bound sigma unavailable for this bank"),
            }
        }
        let rec = synthesize(&bank, &dec)?;
        let err = rec
            .pixels
            .iter()
            .zip(&img.pixels)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        println!("round-trip max error: {err:.3e}");
        Ok(0)
    };
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("apply: {e}");
            exit_code(&e)
        }
    }
}

fn cmd_dvm(bank_path: &Path, direction: &str, filter: Option<usize>, construct_max: bool) -> i32 {
    let run = || -> Result<i32> {
        let bank = io::read_bank(bank_path)?;
        let beta: std::result::Result<Vec<f64>, _> = direction
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect();
        let beta =
            beta.map_err(|e| FrameletError::InvalidDesign(format!("bad direction: {e}")))?;
        let dir = Direction::new(&beta, bank.lowpass.grid())?;
        let indices: Vec<usize> = match filter {
            Some(i) => {
                if i == 0 || i > bank.v() {
                    return Err(FrameletError::InvalidDesign(format!(
                        "filter index {i} out of range 1..={}",
                        bank.v()
                    )));
                }
                vec![i - 1]
            }
            None => (0..bank.v()).collect(),
        };
        for i in indices {
            let order = dvm_order(&bank.highpass[i], &dir, 1e-8, bank.n() as u32);
            println!("filter {:>3}: dvm order {} along {:?}", i + 1, order, dir.beta());
        }
        if construct_max {
            let mask = max_dvm_filter(&bank.lowpass, &dir)?;
            let order = dvm_order(&mask, &dir, 1e-8, bank.n() as u32);
            println!("maximal filter (order {order}):");
            if bank.lowpass.dim() == 2 {
                let (matrix, anchor) = to_matrix(&mask)?;
                println!("anchor: {anchor:?}");
                for row in matrix {
                    let cells: Vec<String> = row.iter().map(|v| format!("{v:>12.6}")).collect();
                    println!("  [{}]", cells.join(", "));
                }
            } else {
                println!("coefficients: {:?}", mask.coeffs());
            }
        }
        Ok(0)
    };
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("dvm: {e}");
            exit_code(&e)
        }
    }
}
