// From received power to SINR, Shannon throughput, spectral efficiency and
// uplink delay, for a few received powers around a fixed noise floor.
//
//     cargo run --example link_metrics

use irsim::channel::{noise_power, NoiseConfig};
use irsim::metrics::{link_metrics, Payload};
use irsim::units::{linear_to_db, watt_to_dbm};

pub fn run_example() -> irsim::Result<()> {
    let bandwidth = 1e6;
    let noise = noise_power(bandwidth, &NoiseConfig::default())?;
    let interference = 1e-12;
    println!("noise {:.2} dBm over {bandwidth} Hz, interference {:.2} dBm", watt_to_dbm(noise), watt_to_dbm(interference));
    println!("{:>10} {:>10} {:>14} {:>10} {:>12}", "P_r [dBm]", "SINR [dB]", "T [Mbit/s]", "SE", "delay [ms]");
    for dbm in [-110.0, -100.0, -90.0, -80.0, -70.0] {
        let p_r = irsim::units::dbm_to_watt(dbm);
        let m = link_metrics(p_r, interference, noise, bandwidth, Some(Payload::default()))?;
        println!(
            "{dbm:>10.1} {:>10.2} {:>14.4} {:>10.4} {:>12.4}",
            linear_to_db(m.sinr),
            m.throughput / 1e6,
            m.spectral_efficiency,
            m.delay.unwrap_or(f64::INFINITY) * 1e3
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> irsim::Result<()> {
    run_example()
}
