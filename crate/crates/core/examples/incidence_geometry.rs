// Deriving the transmit and receive angles from the panel pose, and what
// happens when a device moves behind the panel.
//
//     cargo run --example incidence_geometry

use irsim::geometry::{distance, incidence_angles, IrsPose, Point3};

pub fn run_example() -> irsim::Result<()> {
    // Panel on a wall facing -x.
    let pose = IrsPose::new(Point3::new(50.0, 0.0, 8.0), [-1.0, 0.0, 0.0])?;
    let bs = Point3::new(0.0, -30.0, 10.0);
    for device in [Point3::new(20.0, 25.0, 1.5), Point3::new(45.0, 5.0, 1.5), Point3::new(60.0, 5.0, 1.5)] {
        match incidence_angles(&pose, bs, device) {
            Ok((t, r)) => println!(
                "device {:?}: theta_t {:.2} deg, theta_r {:.2} deg, d1 {:.1} m, d2 {:.1} m",
                device.to_array(),
                t.to_degrees(),
                r.to_degrees(),
                distance(bs, pose.center()),
                distance(pose.center(), device)
            ),
            Err(e) => println!("device {:?}: {e}", device.to_array()),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> irsim::Result<()> {
    run_example()
}
