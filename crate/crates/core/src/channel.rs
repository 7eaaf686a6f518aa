//! Received-power kernels for the direct micro-cell link and the
//! IRS-reflected cascade, plus the noise and interference floors that feed
//! the SINR.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{distance, IrsPose, Point3};
use crate::random::{sample_fading, FadingGain, RngStream};

/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Transmit power and bandwidth per direction, linear SI.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadioConfig {
    pub p_t_downlink: f64,
    pub p_t_uplink: f64,
    pub b_downlink: f64,
    pub b_uplink: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathLossParams {
    /// Distance exponent.
    pub alpha: f64,
    /// Power of the wavelength in the numerator. `1` reproduces the link
    /// model as published; `2` gives the Friis form.
    pub lambda_exponent: u8,
}

impl PathLossParams {
    pub fn new(alpha: f64) -> Self {
        Self { alpha, lambda_exponent: 1 }
    }
}

impl Default for PathLossParams {
    fn default() -> Self {
        Self::new(2.0)
    }
}

/// Passive reflecting panel: an `m` x `n_elem` grid of `d_x` x `d_y`
/// elements. Angles given here take precedence over angles derived from
/// the pose.
#[derive(Debug, Clone, PartialEq)]
pub struct IrsConfig {
    pub m: u32,
    pub n_elem: u32,
    pub d_x: f64,
    pub d_y: f64,
    /// Reflection coefficient in `[0, 1]`.
    pub a: f64,
    pub g_t: f64,
    pub g_r: f64,
    pub center: Point3,
    pub normal: Option<[f64; 3]>,
    pub theta_t: Option<f64>,
    pub theta_r: Option<f64>,
}

impl IrsConfig {
    pub fn pose(&self) -> Option<Result<IrsPose>> {
        self.normal.map(|n| IrsPose::new(self.center, n))
    }

    /// Cascade geometry for a link between `bs` and `device` reflected at
    /// the panel center.
    pub fn link_geometry(&self, bs: Point3, device: Point3) -> Result<IrsLinkGeometry> {
        let d1 = distance(bs, self.center);
        let d2 = distance(self.center, device);
        let pose = match (self.theta_t, self.theta_r) {
            (Some(_), Some(_)) => None,
            _ => Some(self.pose().ok_or_else(|| {
                Error::InvalidArgument("IRS needs a normal or both angles".into())
            })??),
        };
        let theta_t = match self.theta_t {
            Some(t) => t,
            None => pose.as_ref().unwrap().angle_to(bs, "base station")?,
        };
        let theta_r = match self.theta_r {
            Some(t) => t,
            None => pose.as_ref().unwrap().angle_to(device, "device")?,
        };
        IrsLinkGeometry::new(d1, d2, theta_t, theta_r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IrsLinkGeometry {
    /// BS to IRS, m.
    pub d1: f64,
    /// IRS to device, m.
    pub d2: f64,
    pub theta_t: f64,
    pub theta_r: f64,
}

impl IrsLinkGeometry {
    pub fn new(d1: f64, d2: f64, theta_t: f64, theta_r: f64) -> Result<Self> {
        let g = Self { d1, d2, theta_t, theta_r };
        g.check()?;
        Ok(g)
    }

    fn check(&self) -> Result<()> {
        if !(self.d1 > 0.0 && self.d2 > 0.0) {
            return Err(Error::DegenerateGeometry(format!(
                "IRS path lengths d1 = {}, d2 = {} must be > 0",
                self.d1, self.d2
            )));
        }
        for (name, t) in [("theta_t", self.theta_t), ("theta_r", self.theta_r)] {
            if !(0.0..PI / 2.0).contains(&t) {
                return Err(Error::BehindSurface(format!("{name} = {t} rad outside [0, pi/2)")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseConfig {
    /// `k_B * t0 * B * 10^(nf/10)`; `noise_figure` in dB.
    Thermal { t0: f64, noise_figure: f64 },
    Fixed { power: f64 },
}

impl Default for NoiseConfig {
    fn default() -> Self {
        NoiseConfig::Thermal { t0: 290.0, noise_figure: 9.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InterferenceConfig {
    /// Sum of the direct-path power from every non-serving micro BS.
    Geometric,
    Fixed { power: f64 },
    None,
}

/// `P_t * lambda^k * h / ((4 pi)^2 * d^alpha)`, `k = params.lambda_exponent`.
pub fn conventional_received_power(
    p_t: f64,
    lambda: f64,
    h: FadingGain,
    d: f64,
    params: &PathLossParams,
) -> Result<f64> {
    if !(d > 0.0) {
        return Err(Error::DegenerateGeometry(format!("link distance {d} m must be > 0")));
    }
    let four_pi = 4.0 * PI;
    let lambda_term = lambda.powi(i32::from(params.lambda_exponent));
    Ok(p_t * lambda_term * h.value() / (four_pi * four_pi * d.powf(params.alpha)))
}

/// Scattering gain of one element, `4 pi d_x d_y / lambda^2`.
pub fn scattering_gain(d_x: f64, d_y: f64, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidCarrier(format!("wavelength {lambda} m")));
    }
    Ok(4.0 * PI * d_x * d_y / (lambda * lambda))
}

/// Power through the reflecting panel:
///
/// ```text
/// P_t G_t G_r G M^2 N^2 d_x d_y lambda^2 cos(theta_t) cos(theta_r) A^2
/// --------------------------------------------------------------------
///                      64 pi^3 (d1 d2)^2
/// ```
///
/// No small-scale fading is applied to this path.
pub fn irs_received_power(p_t: f64, irs: &IrsConfig, geom: &IrsLinkGeometry, lambda: f64) -> Result<f64> {
    geom.check()?;
    let g = scattering_gain(irs.d_x, irs.d_y, lambda)?;
    let m = f64::from(irs.m);
    let n = f64::from(irs.n_elem);
    let num = p_t
        * irs.g_t
        * irs.g_r
        * g
        * (m * m)
        * (n * n)
        * irs.d_x
        * irs.d_y
        * (lambda * lambda)
        * geom.theta_t.cos()
        * geom.theta_r.cos()
        * (irs.a * irs.a);
    let path = geom.d1 * geom.d2;
    Ok(num / (64.0 * PI.powi(3) * path * path))
}

pub fn noise_power(bandwidth: f64, cfg: &NoiseConfig) -> Result<f64> {
    if !(bandwidth > 0.0) {
        return Err(Error::InvalidBandwidth(bandwidth));
    }
    Ok(match *cfg {
        NoiseConfig::Thermal { t0, noise_figure } => {
            BOLTZMANN * t0 * bandwidth * 10f64.powf(noise_figure / 10.0)
        }
        NoiseConfig::Fixed { power } => power,
    })
}

/// A micro BS as seen by the interference model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaseStation {
    pub position: Point3,
    pub radio: RadioConfig,
}

/// Downlink interference at `device` from every BS except `serving_index`.
/// Interferers always arrive over the direct path, one fading draw each
/// in index order. `fading = false` forces `h = 1` without consuming
/// draws.
#[allow(clippy::too_many_arguments)]
pub fn interference_power(
    device: Point3,
    serving_index: usize,
    all_bs: &[BaseStation],
    lambda: f64,
    params: &PathLossParams,
    cfg: &InterferenceConfig,
    stream: &mut RngStream,
    fading: bool,
) -> Result<f64> {
    match *cfg {
        InterferenceConfig::None => Ok(0.0),
        InterferenceConfig::Fixed { power } => Ok(power),
        InterferenceConfig::Geometric => {
            if serving_index >= all_bs.len() {
                return Err(Error::InvalidArgument(format!(
                    "serving index {serving_index} out of range for {} base stations",
                    all_bs.len()
                )));
            }
            let mut total = 0.0;
            for (i, bs) in all_bs.iter().enumerate() {
                if i == serving_index {
                    continue;
                }
                let h = if fading { sample_fading(stream) } else { FadingGain::UNITY };
                total += conventional_received_power(
                    bs.radio.p_t_downlink,
                    lambda,
                    h,
                    distance(bs.position, device),
                    params,
                )?;
            }
            Ok(total)
        }
    }
}
