// Conventional vs IRS-assisted serving over the same devices, fading and
// interference draws.
//
//     cargo run --release --example compare_modes

use irsim::config::parse_config;
use irsim::scenario::{compare_scenarios, Metric};

pub fn run_example() -> irsim::Result<()> {
    let cfg = parse_config(concat!(env!("CARGO_MANIFEST_DIR"), "/configs/irs_advantage.toml"))?;
    let report = compare_scenarios(&cfg, 5000, 7)?;
    println!("{:<16} {:>13} {:>13} {:>10}  winner", "metric", "conventional", "irs", "ratio");
    for m in Metric::ALL {
        let conv = report.conventional.mean(m).unwrap_or(f64::NAN);
        let irs = report.irs.mean(m).unwrap_or(f64::NAN);
        let ratio = report.ratio(m).unwrap_or(f64::NAN);
        let winner = if report.irs_wins(m) { "irs" } else { "conventional" };
        println!("{:<16} {conv:>13.4e} {irs:>13.4e} {ratio:>10.3}  {winner}", m.name());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> irsim::Result<()> {
    run_example()
}
