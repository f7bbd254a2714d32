//! Verify a bank that satisfies the extension principle with a
//! non-diagonal Gram matrix: the classical 4-tap orthonormal pair. The
//! diagonal certificate cannot certify it, but the sampled modulation
//! check can, and the Gram entries show the T-shaped column geometry.
//!
//! ```sh
//! cargo run --example verify_d4
//! ```

use framelet::pipeline::{demo, Demo};
use framelet::uep::{check_diagonal_uep, check_general_uep};

fn main() {
    let bank = demo(Demo::D4).unwrap();
    println!("low-pass coefficients:  {:?}", bank.lowpass.coeffs());
    println!("high-pass coefficients: {:?}", bank.highpass[0].coeffs());

    let diag = check_diagonal_uep(&bank, 1e-10);
    println!(
        "\ndiagonal certificate (informational): off-diagonal {:.4}, passes: {}",
        diag.max_offdiag, diag.pass
    );
    let sampled = check_general_uep(&bank.lowpass, &bank.highpass, 256, 1e-12).unwrap();
    println!(
        "sampled modulation check on 256 points: max deviation {:.2e}, passes: {}",
        sampled.max_dev, sampled.pass
    );

    let m = bank.gram();
    let e = m.entries();
    println!("\nGram matrix entries:");
    println!("  m12 = {:+.6}  m34 = {:+.6}  (negatives of each other)", e[(0, 1)], e[(2, 3)]);
    println!(
        "  m13 = {:+.1e} m14 = {:+.1e} m23 = {:+.1e} m24 = {:+.1e}  (all zero)",
        e[(0, 2)],
        e[(0, 3)],
        e[(1, 2)],
        e[(1, 3)]
    );

    let a = bank.lowpass.coeffs();
    let b = bank.highpass[0].coeffs();
    let cross = |i: usize, j: usize| a[i] * b[j] - a[j] * b[i];
    let dot = |i: usize, j: usize| a[i] * a[j] + b[i] * b[j];
    println!("\ncolumn vectors v_k = (a_k; b_k) form a capital T:");
    println!("  v1 x v2 = {:+.1e}  (parallel)", cross(0, 1));
    println!("  v3 x v4 = {:+.1e}  (parallel)", cross(2, 3));
    println!("  v1 . v3 = {:+.1e}  (perpendicular)", dot(0, 2));
}
