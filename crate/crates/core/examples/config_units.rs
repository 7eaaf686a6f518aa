// Scenario files carry explicit units; they are normalized to SI on load,
// problems are reported by key path, and the canonical form round-trips.
//
//     cargo run --example config_units

use irsim::config::{parse_config, parse_config_str, to_toml_string};
use irsim::output::config_digest;
use irsim::Error;

pub fn run_example() -> irsim::Result<()> {
    let cfg = parse_config(concat!(env!("CARGO_MANIFEST_DIR"), "/configs/irs_advantage.toml"))?;
    println!("f_c          {} Hz", cfg.carrier.f_c);
    println!("p_t_downlink {} W", cfg.micro.radio.p_t_downlink);
    println!("lambda_mic   {} /m^2", cfg.tiers.lambda_mic);
    println!("theta_t      {:?} rad", cfg.irs.as_ref().and_then(|i| i.theta_t));

    let canonical = to_toml_string(&cfg);
    let back = parse_config_str(&canonical)?;
    println!("round trip equal: {}, digest {}", back == cfg, &config_digest(&cfg)[..16]);

    let broken = canonical.replace("a = 0.9", "a = 1.5").replace("alpha_mac = 3.5", "alpha_mac = 2.0");
    match parse_config_str(&broken) {
        Err(Error::ConfigInvalid(diags)) => {
            for d in diags.iter() {
                println!("rejected: {d}");
            }
        }
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> irsim::Result<()> {
    run_example()
}
