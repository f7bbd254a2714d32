//! Force eight oriented finite-difference filters into a Parseval bank:
//! four first-order and four second-order differences at 45-degree spaced
//! orientations on a 3x3 stencil, weighted and completed.
//!
//! ```sh
//! cargo run --example oriented_bank
//! ```

use framelet::mask::to_matrix;
use framelet::pipeline::{demo, Demo};
use framelet::uep::Provenance;

fn main() {
    let bank = demo(Demo::Ex3).expect("construction succeeds");
    println!("filters: {} designed + {} total", bank.designed_channels().len(), bank.v());
    println!("weights lambda: {:?}\n", bank.metadata.lambda);
    for (i, (mask, prov)) in bank.highpass.iter().zip(&bank.provenance).enumerate() {
        let (matrix, _) = to_matrix(mask).unwrap();
        let tag = match prov {
            Provenance::Designed => "designed",
            Provenance::Completion => "completion",
            Provenance::Projection => "projection",
        };
        println!("filter {:>2} ({tag}):", i + 1);
        for row in matrix {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>8.4}")).collect();
            println!("    [{}]", cells.join(" "));
        }
    }
    let sigma = bank.metadata.sigma.unwrap();
    let (lower, upper) = bank.metadata.frame_bounds.unwrap();
    println!("\ntruncation error constant sigma = {sigma:.6}");
    println!("frame bounds of the designed-only family: [{lower:.6}, {upper:.6}]");
    println!("dropping the completion channels loses at most {:.1}% of signal energy", sigma * 100.0);
}
