//! Measured constants in π(x; q, 1) ≤ C x / (φ(q) log(x/q)).

use kloosterman_lab::harness::brun_titchmarsh_report;

fn main() -> kloosterman_lab::Result<()> {
    let x = 10_000_000;
    println!("{:>5} {:>8} {:>8} {:>8}", "θ", "q", "count", "C");
    for row in brun_titchmarsh_report(x, &[0.1, 0.2, 0.3, 0.4, 0.5, 0.6])? {
        println!("{:>5} {:>8} {:>8} {:>8.4}", row.theta, row.q, row.count, row.c_measured);
    }
    Ok(())
}
