// Micro-tier association probability at the nominal device, its average
// over the coverage region, and the resulting mean served-device count,
// for conventional and IRS serving.
//
//     cargo run --release --example association

use irsim::association::associate;
use irsim::config::parse_config;
use irsim::scenario::Mode;

pub fn run_example() -> irsim::Result<()> {
    let cfg = parse_config(concat!(env!("CARGO_MANIFEST_DIR"), "/configs/irs_advantage.toml"))?;
    println!("{:<13} {:>8} {:>8} {:>10} {:>10}", "mode", "A", "A_bar", "ci95", "n");
    for mode in [Mode::Conventional, Mode::Irs] {
        let r = associate(&cfg.with_mode(mode)?, 4000, 11)?;
        println!(
            "{:<13} {:>8.4} {:>8.4} {:>10.2e} {:>10.2}",
            mode.as_str(),
            r.a,
            r.a_bar,
            r.ci_halfwidth,
            r.n_devices
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> irsim::Result<()> {
    run_example()
}
