//! The projection-method bank: one two-tap difference filter per offset
//! pair, weighted by the geometric mean of the low-pass coefficients. The
//! Gram matrix is diagonal by construction, with no optimization or SVD.
//!
//! ```sh
//! cargo run --example projection_bank
//! ```

use framelet::completion::projection_bank;
use framelet::spline::{bspline_lowpass, SplineSpec};
use framelet::uep::check_diagonal_uep;

fn main() {
    for (order, dim) in [(2u32, 1u32), (2, 2), (4, 2)] {
        let lp = bspline_lowpass(&SplineSpec::new(order, dim).unwrap());
        let bank = projection_bank(&lp).expect("admissible low-pass");
        let n = bank.n();
        let report = check_diagonal_uep(&bank, 1e-12);
        println!(
            "order-{order} spline, dim {dim}: N = {n:>2}, filters = N(N-1)/2 = {:>3}, Gram deviation {:.2e}",
            bank.v(),
            report.worst()
        );
    }

    let lp = bspline_lowpass(&SplineSpec::new(2, 2).unwrap());
    let bank = projection_bank(&lp).unwrap();
    println!("\nfirst pair filters of the order-2 2D bank (two taps each):");
    for (i, mask) in bank.highpass.iter().take(4).enumerate() {
        let taps: Vec<String> = mask
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0.0)
            .map(|(k, &v)| format!("{v:+.4} at {:?}", mask.grid().offset(k)))
            .collect();
        println!("  filter {:>2}: {}", i + 1, taps.join(", "));
    }
}
