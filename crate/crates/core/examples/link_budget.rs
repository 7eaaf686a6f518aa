// Received power on the direct micro-cell link and on the IRS cascade for
// the same 10 m geometry, plus the Friis variant of the direct kernel.
//
//     cargo run --example link_budget

use irsim::carrier::{wavelength, CarrierConfig};
use irsim::channel::{
    conventional_received_power, irs_received_power, scattering_gain, IrsConfig, IrsLinkGeometry, PathLossParams,
};
use irsim::geometry::Point3;
use irsim::random::FadingGain;
use irsim::units::watt_to_dbm;

pub fn run_example() -> irsim::Result<()> {
    let lambda = wavelength(&CarrierConfig::from_wavelength(0.1)?)?;

    let direct = conventional_received_power(1.0, lambda, FadingGain::UNITY, 10.0, &PathLossParams::new(2.0))?;
    let friis = conventional_received_power(
        1.0,
        lambda,
        FadingGain::UNITY,
        10.0,
        &PathLossParams { alpha: 2.0, lambda_exponent: 2 },
    )?;

    let panel = IrsConfig {
        m: 100,
        n_elem: 100,
        d_x: 0.005,
        d_y: 0.005,
        a: 1.0,
        g_t: 1.0,
        g_r: 1.0,
        center: Point3::new(5.0, 8.660_254_037_844_386, 0.0),
        normal: None,
        theta_t: Some(0.0),
        theta_r: Some(0.0),
    };
    let geom = IrsLinkGeometry::new(10.0, 10.0, 0.0, 0.0)?;
    let reflected = irs_received_power(1.0, &panel, &geom, lambda)?;

    println!("wavelength            {lambda} m");
    println!("element scatter gain  {:.4}", scattering_gain(panel.d_x, panel.d_y, lambda)?);
    println!("direct  (lambda^1)    {direct:.4e} W  ({:.2} dBm)", watt_to_dbm(direct));
    println!("direct  (Friis)       {friis:.4e} W  ({:.2} dBm)", watt_to_dbm(friis));
    println!("IRS cascade           {reflected:.4e} W  ({:.2} dBm)", watt_to_dbm(reflected));

    // Elements needed per side before the panel overtakes the direct path.
    let mut side = panel.m;
    while irs_received_power(1.0, &IrsConfig { m: side, n_elem: side, ..panel.clone() }, &geom, lambda)? <= direct {
        side += 1;
    }
    println!("a {side} x {side} panel beats the direct link at this geometry");
    Ok(())
}

#[allow(dead_code)]
fn main() -> irsim::Result<()> {
    run_example()
}
