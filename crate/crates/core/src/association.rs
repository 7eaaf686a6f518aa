//! Two-tier association probability and the served-device load model.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::random::RngStream;
use crate::scenario::ScenarioConfig;
use crate::stats::Stat;

/// Slope constant of the mean served-device count.
pub const LOAD_CONSTANT: f64 = 1.28;

/// Deployment densities (per square meter) and the macro-tier exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TierConfig {
    pub lambda_mac: f64,
    pub lambda_mic: f64,
    pub lambda_u: f64,
    pub alpha_mac: f64,
}

impl TierConfig {
    /// Each violated bound as `(field, message)`.
    pub fn violations(&self) -> Vec<(&'static str, String)> {
        let mut out = Vec::new();
        if !(self.lambda_mac > 0.0 && self.lambda_mac.is_finite()) {
            out.push(("lambda_mac", format!("must be > 0, got {}", self.lambda_mac)));
        }
        if !(self.lambda_mic > 0.0 && self.lambda_mic.is_finite()) {
            out.push(("lambda_mic", format!("must be > 0, got {}", self.lambda_mic)));
        }
        if !(self.lambda_u >= 0.0 && self.lambda_u.is_finite()) {
            out.push(("lambda_u", format!("must be >= 0, got {}", self.lambda_u)));
        }
        if !(self.alpha_mac > 2.0 && self.alpha_mac.is_finite()) {
            out.push(("alpha_mac", format!("must be > 2, got {}", self.alpha_mac)));
        }
        out
    }
}

/// Whether instantaneous (faded) powers enter the association formula, or
/// fading is averaged out of the powers first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AssociationOrdering {
    /// Average the probability over fading realizations.
    #[default]
    AverageProbability,
    /// Use mean (unit-fading) powers, then evaluate the probability.
    AveragePowers,
}

impl AssociationOrdering {
    pub fn as_str(self) -> &'static str {
        match self {
            AssociationOrdering::AverageProbability => "after",
            AssociationOrdering::AveragePowers => "before",
        }
    }
}

/// Probability that a device attaches to the micro tier:
/// `(1 + (lambda_mac / lambda_mic) * (p_mac / p_mic)^(2 / alpha_mac))^-1`.
///
/// `p_mic` is the direct micro power for the conventional network or the
/// reflected power for the IRS network.
pub fn association_probability(tiers: &TierConfig, p_mac: f64, p_mic: f64) -> Result<f64> {
    if !(p_mac > 0.0) {
        return Err(Error::InvalidPower(p_mac));
    }
    if !(p_mic > 0.0) {
        return Err(Error::InvalidPower(p_mic));
    }
    let ratio = (p_mac / p_mic).powf(2.0 / tiers.alpha_mac);
    Ok(1.0 / (1.0 + tiers.lambda_mac / tiers.lambda_mic * ratio))
}

/// Like [`association_probability`], extended to its limits where either
/// tier delivers no power: an unreachable micro link gives 0, an
/// unreachable macro link gives 1.
pub(crate) fn association_or_limit(tiers: &TierConfig, p_mac: f64, p_mic: f64) -> Result<f64> {
    match (p_mac > 0.0, p_mic > 0.0) {
        (_, false) => Ok(0.0),
        (false, true) => Ok(1.0),
        (true, true) => association_probability(tiers, p_mac, p_mic),
    }
}

/// `1 + 1.28 * lambda_u * a_bar / lambda_mic`.
pub fn average_device_count(tiers: &TierConfig, a_bar: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&a_bar) {
        return Err(Error::InvalidProbability(a_bar));
    }
    Ok(1.0 + LOAD_CONSTANT * tiers.lambda_u * a_bar / tiers.lambda_mic)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssociationEstimate {
    pub a_bar: f64,
    pub ci_halfwidth: f64,
    pub std: f64,
    pub n_samples: usize,
}

/// Region-averaged association probability. Sample `i` draws a device
/// uniformly in a disc of `region_radius` centred (horizontally) on the
/// serving micro BS at the configured device height, with fresh fading on
/// the fading-bearing links, using `stream.child(i)`. Results do not depend
/// on the thread count.
pub fn mean_association_probability(
    scenario: &ScenarioConfig,
    region_radius: f64,
    n_samples: usize,
    stream: &RngStream,
) -> Result<AssociationEstimate> {
    if !(region_radius >= 0.0 && region_radius.is_finite()) {
        return Err(Error::InvalidArgument(format!("region radius {region_radius} m must be >= 0")));
    }
    if n_samples < 100 {
        return Err(Error::InvalidArgument(format!("need at least 100 samples, got {n_samples}")));
    }
    let lambda = scenario.carrier.wavelength()?;
    let samples = (0..n_samples as u64)
        .into_par_iter()
        .map(|i| scenario.association_sample(lambda, region_radius, &mut stream.child(i)))
        .collect::<Result<Vec<f64>>>()?;
    let stat = Stat::from_samples(&samples);
    Ok(AssociationEstimate { a_bar: stat.mean, ci_halfwidth: stat.ci95, std: stat.std, n_samples })
}

/// Association figures for one serving mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssociationResult {
    /// Pointwise probability at the nominal device position, unit fading.
    pub a: f64,
    pub a_bar: f64,
    pub ci_halfwidth: f64,
    pub n_devices: f64,
    pub n_samples: usize,
}

/// Pointwise `A`, region average `A_bar` and the resulting device count
/// for `scenario` in its configured mode.
pub fn associate(scenario: &ScenarioConfig, n_samples: usize, seed: u64) -> Result<AssociationResult> {
    let lambda = scenario.carrier.wavelength()?;
    let device = scenario.device.nominal(scenario.serving_position());
    let p_mac = scenario.macro_power(lambda, device, crate::random::FadingGain::UNITY)?;
    let p_mic = scenario.serving_power(lambda, device, crate::scenario::Direction::Downlink, crate::random::FadingGain::UNITY)?;
    let a = association_or_limit(&scenario.tiers, p_mac, p_mic)?;
    let est = mean_association_probability(
        scenario,
        scenario.association.region_radius,
        n_samples,
        &RngStream::new(seed, ASSOCIATE_STREAM),
    )?;
    Ok(AssociationResult {
        a,
        a_bar: est.a_bar,
        ci_halfwidth: est.ci_halfwidth,
        n_devices: average_device_count(&scenario.tiers, est.a_bar)?,
        n_samples,
    })
}

/// Stream id reserved for standalone association runs, outside the range
/// used by replications.
pub const ASSOCIATE_STREAM: u64 = u64::MAX;
