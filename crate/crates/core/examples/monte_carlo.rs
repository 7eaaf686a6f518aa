// Replicated run of one scenario with confidence intervals, and a check
// that the result does not depend on the number of worker threads.
//
//     cargo run --release --example monte_carlo

use irsim::config::parse_config;
use irsim::scenario::run_scenario_with;

pub fn run_example() -> irsim::Result<()> {
    let cfg = parse_config(concat!(env!("CARGO_MANIFEST_DIR"), "/configs/irs_advantage.toml"))?;
    let summary = run_scenario_with(&cfg, 5000, 42, Some(1))?;
    println!("mode {}, {} replications, seed {}", summary.mode.as_str(), summary.replications, summary.seed);
    for (metric, stat) in summary.iter() {
        if let Some(s) = stat {
            println!("{:<16} {:>14.6e} ± {:<12.3e} [{}]", metric.name(), s.mean, s.ci95, metric.unit());
        }
    }
    let parallel = run_scenario_with(&cfg, 5000, 42, Some(4))?;
    println!("identical with 4 workers: {}", parallel == summary);
    Ok(())
}

#[allow(dead_code)]
fn main() -> irsim::Result<()> {
    run_example()
}
