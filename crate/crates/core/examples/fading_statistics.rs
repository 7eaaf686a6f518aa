// Exponential (Rayleigh power) fading: sample moments, tail probability
// and the Kolmogorov-Smirnov distance to Exp(1) for one seeded stream.
//
//     cargo run --release --example fading_statistics

use irsim::random::{sample_fading, RngStream};

pub fn run_example() -> irsim::Result<()> {
    let n = 100_000;
    let mut stream = RngStream::new(2024, 0);
    let mut h: Vec<f64> = (0..n).map(|_| sample_fading(&mut stream).value()).collect();

    let mean = h.iter().sum::<f64>() / n as f64;
    let var = h.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let above_one = h.iter().filter(|&&x| x > 1.0).count() as f64 / n as f64;

    h.sort_by(f64::total_cmp);
    let ks = h
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let cdf = 1.0 - (-x).exp();
            (cdf - i as f64 / n as f64).max((i + 1) as f64 / n as f64 - cdf)
        })
        .fold(0.0, f64::max);
    let critical_1pct = 1.627_62 / (n as f64).sqrt();

    println!("samples        {n}");
    println!("mean           {mean:.5}   (expected 1)");
    println!("variance       {var:.5}   (expected 1)");
    println!("P(h > 1)       {above_one:.5}   (expected {:.5})", (-1f64).exp());
    println!("KS statistic   {ks:.5}   (1% critical value {critical_1pct:.5})");
    Ok(())
}

#[allow(dead_code)]
fn main() -> irsim::Result<()> {
    run_example()
}
