use serde::Serialize;

/// z-score of a two-sided 95% normal interval.
pub const Z95: f64 = 1.959_963_984_540_054;

/// Sample mean, sample standard deviation, 95% normal-approximation CI
/// half-width and sample count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Stat {
    pub mean: f64,
    pub std: f64,
    pub ci95: f64,
    pub n: usize,
}

impl Stat {
    /// Summary of `xs` in slice order. Sums are pairwise, so the result
    /// depends only on the values and their order, never on how they were
    /// produced.
    pub fn from_samples(xs: &[f64]) -> Stat {
        let n = xs.len();
        if n == 0 {
            return Stat { mean: 0.0, std: 0.0, ci95: 0.0, n: 0 };
        }
        let mean = pairwise_sum(xs) / n as f64;
        let std = if n > 1 {
            let dev: Vec<f64> = xs.iter().map(|x| (x - mean) * (x - mean)).collect();
            (pairwise_sum(&dev) / (n - 1) as f64).sqrt()
        } else {
            0.0
        };
        Stat { mean, std, ci95: Z95 * std / (n as f64).sqrt(), n }
    }
}

pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let (a, b) = xs.split_at(xs.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic() {
        let s = Stat::from_samples(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(s.mean, 2.5);
        assert!((s.std - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!((s.ci95 - Z95 * s.std / 2.0).abs() < 1e-15);
        assert_eq!(s.n, 4);
        let one = Stat::from_samples(&[7.0]);
        assert_eq!((one.mean, one.std, one.ci95), (7.0, 0.0, 0.0));
    }

    #[test]
    fn pairwise_matches_naive_on_integers() {
        let xs: Vec<f64> = (1..=1000).map(f64::from).collect();
        assert_eq!(pairwise_sum(&xs), 500_500.0);
    }
}
