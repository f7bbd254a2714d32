//! Multi-level image analysis with a directional bank: tight-frame energy
//! bookkeeping, perfect reconstruction, the truncation-error bound when
//! the completion channels are dropped, and the flattening effect of the
//! bundled four-DVM filter on a smooth directional ramp.
//!
//! ```sh
//! cargo run --example image_decomposition
//! ```

use framelet::dvm::{dvm_order, Direction};
use framelet::pipeline::{demo, fig1_filter, Demo};
use framelet::transform::{analyze, convolve_demo, synthesize, truncation_error, Image};

fn test_image(n: usize) -> Image {
    // a disc on a gradient: edges at every orientation
    let mut img = Image::zeros(n, n);
    let center = n as f64 / 2.0;
    for r in 0..n {
        for c in 0..n {
            let (x, y) = (c as f64 - center, r as f64 - center);
            let disc = if (x * x + y * y).sqrt() < n as f64 / 4.0 { 1.0 } else { 0.0 };
            *img.at_mut(r, c) = disc + 0.2 * (c as f64 / n as f64);
        }
    }
    img
}

fn main() {
    let bank = demo(Demo::Ex3).unwrap();
    let img = test_image(128);

    let dec = analyze(&bank, &img, 3).unwrap();
    println!(
        "decomposed 128x128 into {} levels x {} channels + residual",
        dec.level_count(),
        bank.v()
    );
    println!(
        "energy ratio (tight frame): {:.15}",
        dec.coefficient_energy() / img.energy()
    );

    let rec = synthesize(&bank, &dec).unwrap();
    let err = rec
        .pixels
        .iter()
        .zip(&img.pixels)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    println!("round-trip max error: {err:.2e}");

    let keep = bank.designed_channels();
    let lost = truncation_error(&bank, &keep, &img, 3).unwrap();
    println!(
        "\nkeeping only the {} designed channels loses {:.2}% of the energy",
        keep.len(),
        lost * 100.0
    );
    println!(
        "guaranteed bound: sigma = {:.2}%",
        bank.metadata.sigma.unwrap() * 100.0
    );

    // per-channel energy at the finest level shows the directional split
    println!("\nfinest-level channel energies (designed channels):");
    for &i in &keep {
        println!("  channel {:>2}: {:.4}", i + 1, dec.levels[0].channels[i].energy());
    }

    // a cubic ramp along (0,1) is flattened by the four-DVM filter
    let fig1 = fig1_filter();
    let dir = Direction::new(&[0.0, 1.0], fig1.grid()).unwrap();
    let mut ramp = Image::zeros(64, 64);
    for r in 0..64 {
        let y = r as f64 / 64.0;
        let v = (y * (1.0 - y)).powi(3);
        for c in 0..64 {
            *ramp.at_mut(r, c) = v;
        }
    }
    let out = convolve_demo(&fig1, &ramp);
    let in_scale = ramp.pixels.iter().cloned().fold(0.0f64, f64::max);
    let out_scale = out.pixels.iter().map(|v| v.abs()).fold(0.0f64, f64::max);
    println!(
        "\nfour-DVM filter (order {} along (0,1)) on a cubic ramp: response/input = {:.2e}",
        dvm_order(&fig1, &dir, 1e-2, 9),
        out_scale / in_scale
    );
}
