//! Shannon-kernel link metrics shared by both serving modes.

use serde::Serialize;

use crate::error::{Error, Result};

/// Payload size in bits used when a delay is requested with no payload
/// configured (one 1500-byte frame).
pub const DEFAULT_PAYLOAD_BITS: u64 = 12_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Payload {
    bits: u64,
}

impl Payload {
    pub fn new(bits: u64) -> Result<Self> {
        if bits == 0 {
            return Err(Error::InvalidArgument("payload must be at least one bit".into()));
        }
        Ok(Self { bits })
    }

    pub fn bits(self) -> u64 {
        self.bits
    }
}

impl Default for Payload {
    fn default() -> Self {
        Self { bits: DEFAULT_PAYLOAD_BITS }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinkMetrics {
    /// W
    pub received_power: f64,
    /// Linear.
    pub sinr: f64,
    /// bit/s
    pub throughput: f64,
    /// bit/s/Hz
    pub spectral_efficiency: f64,
    /// Seconds; only for links evaluated with a payload.
    pub delay: Option<f64>,
}

pub fn sinr(p_r: f64, interference: f64, noise: f64) -> Result<f64> {
    if !(noise > 0.0) {
        return Err(Error::InvalidNoise(noise));
    }
    if !(interference >= 0.0) {
        return Err(Error::InvalidArgument(format!("interference {interference} W must be >= 0")));
    }
    if !(p_r >= 0.0) {
        return Err(Error::InvalidPower(p_r));
    }
    Ok(p_r / (interference + noise))
}

/// `B * log2(1 + sinr)`.
pub fn throughput(bandwidth: f64, sinr: f64) -> Result<f64> {
    if !(bandwidth > 0.0) {
        return Err(Error::InvalidBandwidth(bandwidth));
    }
    if !(sinr >= 0.0) {
        return Err(Error::InvalidArgument(format!("sinr {sinr} must be >= 0")));
    }
    Ok(bandwidth * (1.0 + sinr).log2())
}

pub fn spectral_efficiency(throughput: f64, bandwidth: f64) -> Result<f64> {
    if !(bandwidth > 0.0) {
        return Err(Error::InvalidBandwidth(bandwidth));
    }
    Ok(throughput / bandwidth)
}

/// Seconds to move `payload` at `throughput` bit/s.
pub fn transmission_delay(payload: Payload, throughput: f64) -> Result<f64> {
    if !(throughput > 0.0) {
        return Err(Error::ZeroThroughput);
    }
    Ok(payload.bits() as f64 / throughput)
}

pub fn link_metrics(
    p_r: f64,
    interference: f64,
    noise: f64,
    bandwidth: f64,
    payload: Option<Payload>,
) -> Result<LinkMetrics> {
    let s = sinr(p_r, interference, noise)?;
    let t = throughput(bandwidth, s)?;
    let se = spectral_efficiency(t, bandwidth)?;
    let delay = payload.map(|p| transmission_delay(p, t)).transpose()?;
    Ok(LinkMetrics { received_power: p_r, sinr: s, throughput: t, spectral_efficiency: se, delay })
}
