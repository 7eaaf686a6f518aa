// Sweep the panel size and print a plot-ready CSV; with fading off the
// power column follows the M^2 law exactly.
//
//     cargo run --example sweep_elements > irs_m.csv

use irsim::config::parse_config;
use irsim::output::sweep_table;
use irsim::scenario::{sweep, Metric, SweepSpec};

pub fn run_example() -> irsim::Result<()> {
    let cfg = parse_config(concat!(env!("CARGO_MANIFEST_DIR"), "/configs/canonical.toml"))?;
    let spec = SweepSpec { parameter: "irs.m".into(), values: vec![25.0, 50.0, 100.0, 200.0, 400.0, 800.0, 1600.0], replications: 1, seed: 0 };
    let table = sweep(&cfg, &spec)?;
    print!("{}", sweep_table(&table).to_csv()?);

    let conventional = 6.332_573_977_646_112e-6;
    if let Some(row) = table.rows.iter().find(|r| r.summary.mean(Metric::RxPowerDl).is_some_and(|p| p > conventional)) {
        eprintln!("reflected power exceeds the direct link from M = {}", row.value);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> irsim::Result<()> {
    run_example()
}
