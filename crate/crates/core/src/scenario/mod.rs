//! Scenario description, validation and the per-link power evaluation
//! shared by the Monte Carlo engine and the association averaging.

mod engine;
mod sweep;

use std::f64::consts::FRAC_PI_2;

pub use engine::{
    compare_scenarios, compare_scenarios_with, run_scenario, run_scenario_with, ComparisonReport, Metric,
    MetricsSummary,
};
pub use sweep::{apply_parameter, sweep, sweep_with, SweepRow, SweepSpec, SweepTable, SWEEP_PARAMETERS};

use crate::association::{association_or_limit, AssociationOrdering, TierConfig};
use crate::carrier::CarrierConfig;
use crate::channel::{
    conventional_received_power, irs_received_power, InterferenceConfig, IrsConfig, NoiseConfig, PathLossParams,
    RadioConfig,
};
use crate::error::{Diagnostics, Error, Result};
use crate::geometry::{distance, Point3};
use crate::metrics::Payload;
use crate::random::{sample_fading, FadingGain, RngStream};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Conventional,
    Irs,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Conventional => "conventional",
            Mode::Irs => "irs",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Downlink,
    Uplink,
}

/// The micro tier: radio, propagation and deployed base stations.
#[derive(Debug, Clone, PartialEq)]
pub struct MicroTier {
    pub radio: RadioConfig,
    pub path_loss: PathLossParams,
    pub positions: Vec<Point3>,
    /// Index into `positions` of the BS serving the device.
    pub serving: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MacroBs {
    pub position: Point3,
    /// Downlink transmit power, W.
    pub p_t: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DevicePlacement {
    /// Replication `r` uses `positions[r % len]`.
    Fixed(Vec<Point3>),
    /// Uniform in a horizontal disc around the serving BS at `height`.
    Disc { radius: f64, height: f64 },
}

impl DevicePlacement {
    /// Representative position: the first fixed device, or the disc center.
    pub fn nominal(&self, serving: Point3) -> Point3 {
        match self {
            DevicePlacement::Fixed(p) => p[0],
            DevicePlacement::Disc { height, .. } => Point3::new(serving.x, serving.y, *height),
        }
    }

    fn position(&self, serving: Point3, replication: u64, stream: &mut RngStream) -> Point3 {
        match self {
            DevicePlacement::Fixed(p) => p[(replication % p.len() as u64) as usize],
            DevicePlacement::Disc { radius, height } => sample_disc(serving, *radius, *height, stream),
        }
    }
}

/// Uniform point in the disc of `radius` around `center` (horizontally) at
/// height `z`, by rejection from the bounding square.
pub fn sample_disc(center: Point3, radius: f64, z: f64, stream: &mut RngStream) -> Point3 {
    loop {
        let u = 2.0 * stream.uniform() - 1.0;
        let v = 2.0 * stream.uniform() - 1.0;
        if u * u + v * v <= 1.0 {
            return Point3::new(center.x + radius * u, center.y + radius * v, z);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferenceSettings {
    pub downlink: InterferenceConfig,
    pub uplink: InterferenceConfig,
}

impl Default for InterferenceSettings {
    fn default() -> Self {
        Self { downlink: InterferenceConfig::Geometric, uplink: InterferenceConfig::None }
    }
}

/// Region used for the averaged association probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssociationSettings {
    pub region_radius: f64,
    pub device_height: f64,
    pub ordering: AssociationOrdering,
}

impl Default for AssociationSettings {
    fn default() -> Self {
        Self { region_radius: 50.0, device_height: 1.5, ordering: AssociationOrdering::AverageProbability }
    }
}

/// One two-tier network: micro BSs under a single macro BS, a device
/// population, and optionally an IRS on the serving link.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub mode: Mode,
    /// When false every fading gain is exactly 1.
    pub fading: bool,
    pub carrier: CarrierConfig,
    pub micro: MicroTier,
    pub macro_bs: MacroBs,
    pub tiers: TierConfig,
    pub device: DevicePlacement,
    pub irs: Option<IrsConfig>,
    pub noise: NoiseConfig,
    pub interference: InterferenceSettings,
    pub payload: Payload,
    pub association: AssociationSettings,
}

fn positive(v: f64) -> bool {
    v > 0.0 && v.is_finite()
}

impl ScenarioConfig {
    pub fn serving_position(&self) -> Point3 {
        self.micro.positions[self.micro.serving]
    }

    /// Same network served in `mode`. Switching to conventional drops the
    /// IRS; switching to IRS requires one to be configured.
    pub fn with_mode(&self, mode: Mode) -> Result<ScenarioConfig> {
        let mut cfg = self.clone();
        cfg.mode = mode;
        match mode {
            Mode::Conventional => cfg.irs = None,
            Mode::Irs if cfg.irs.is_none() => {
                return Err(Error::config("irs", "IRS mode requires an [irs] section"));
            }
            Mode::Irs => {}
        }
        Ok(cfg)
    }

    /// Every violated invariant, by key path.
    pub fn diagnostics(&self) -> Diagnostics {
        let mut d = Diagnostics::default();
        if !positive(self.carrier.f_c) {
            d.push("carrier.f_c", format!("must be > 0 Hz, got {}", self.carrier.f_c));
        }
        let r = &self.micro.radio;
        for (key, v) in [
            ("micro.p_t_downlink", r.p_t_downlink),
            ("micro.p_t_uplink", r.p_t_uplink),
            ("micro.b_downlink", r.b_downlink),
            ("micro.b_uplink", r.b_uplink),
        ] {
            if !positive(v) {
                d.push(key, format!("must be > 0, got {v}"));
            }
        }
        if !positive(self.micro.path_loss.alpha) {
            d.push("micro.alpha", format!("must be > 0, got {}", self.micro.path_loss.alpha));
        }
        if !matches!(self.micro.path_loss.lambda_exponent, 1 | 2) {
            d.push("micro.lambda_exponent", format!("must be 1 or 2, got {}", self.micro.path_loss.lambda_exponent));
        }
        if self.micro.positions.is_empty() {
            d.push("micro.positions", "at least one micro base station is required");
        }
        if self.micro.positions.iter().any(|p| !p.is_finite()) {
            d.push("micro.positions", "coordinates must be finite");
        }
        let serving_ok = self.micro.serving < self.micro.positions.len();
        if !serving_ok && !self.micro.positions.is_empty() {
            d.push(
                "micro.serving",
                format!("index {} out of range for {} base stations", self.micro.serving, self.micro.positions.len()),
            );
        }
        if !self.macro_bs.position.is_finite() {
            d.push("macro.position", "coordinates must be finite");
        }
        if !positive(self.macro_bs.p_t) {
            d.push("macro.p_t", format!("must be > 0, got {}", self.macro_bs.p_t));
        }
        for (field, msg) in self.tiers.violations() {
            d.push(format!("tiers.{field}"), msg);
        }
        match &self.device {
            DevicePlacement::Fixed(ps) => {
                if ps.is_empty() {
                    d.push("device.positions", "at least one device position is required");
                }
                if ps.iter().any(|p| !p.is_finite()) {
                    d.push("device.positions", "coordinates must be finite");
                }
                if serving_ok && ps.iter().any(|p| distance(*p, self.serving_position()) == 0.0) {
                    d.push("device.positions", "a device coincides with the serving base station");
                }
                if ps.iter().any(|p| distance(*p, self.macro_bs.position) == 0.0) {
                    d.push("device.positions", "a device coincides with the macro base station");
                }
            }
            DevicePlacement::Disc { radius, height } => {
                if !(*radius >= 0.0 && radius.is_finite()) {
                    d.push("device.radius", format!("must be >= 0, got {radius}"));
                }
                if !height.is_finite() {
                    d.push("device.height", "must be finite");
                }
                if serving_ok && *radius == 0.0 && *height == self.serving_position().z {
                    d.push("device.height", "zero-radius disc places the device on the serving base station");
                }
            }
        }
        match (&self.irs, self.mode) {
            (None, Mode::Irs) => d.push("irs", "IRS mode requires an [irs] section"),
            (Some(_), Mode::Conventional) => d.push("mode", "an [irs] section is only valid in IRS mode"),
            _ => {}
        }
        if let Some(irs) = &self.irs {
            self.irs_diagnostics(irs, serving_ok, &mut d);
        }
        match self.noise {
            NoiseConfig::Thermal { t0, noise_figure } => {
                if !positive(t0) {
                    d.push("noise.t0", format!("must be > 0 K, got {t0}"));
                }
                if !noise_figure.is_finite() {
                    d.push("noise.noise_figure", "must be finite");
                }
            }
            NoiseConfig::Fixed { power } => {
                if !positive(power) {
                    d.push("noise.power", format!("must be > 0 W, got {power}"));
                }
            }
        }
        for (key, cfg) in [("interference.downlink", self.interference.downlink), ("interference.uplink", self.interference.uplink)] {
            if let InterferenceConfig::Fixed { power } = cfg {
                if !(power >= 0.0 && power.is_finite()) {
                    d.push(format!("{key}.power"), format!("must be >= 0 W, got {power}"));
                }
            }
        }
        if self.interference.uplink == InterferenceConfig::Geometric {
            d.push("interference.uplink.mode", "geometric interference is only modelled on the downlink");
        }
        let a = &self.association;
        if !(a.region_radius >= 0.0 && a.region_radius.is_finite()) {
            d.push("association.region_radius", format!("must be >= 0, got {}", a.region_radius));
        }
        if !a.device_height.is_finite() {
            d.push("association.device_height", "must be finite");
        } else if serving_ok && a.region_radius == 0.0 && a.device_height == self.serving_position().z {
            d.push("association.device_height", "zero-radius region places the device on the serving base station");
        }
        d
    }

    fn irs_diagnostics(&self, irs: &IrsConfig, serving_ok: bool, d: &mut Diagnostics) {
        if irs.m == 0 {
            d.push("irs.m", "must be >= 1");
        }
        if irs.n_elem == 0 {
            d.push("irs.n", "must be >= 1");
        }
        for (key, v) in [("irs.d_x", irs.d_x), ("irs.d_y", irs.d_y), ("irs.g_t", irs.g_t), ("irs.g_r", irs.g_r)] {
            if !positive(v) {
                d.push(key, format!("must be > 0, got {v}"));
            }
        }
        if !(0.0..=1.0).contains(&irs.a) {
            d.push("irs.a", format!("reflection coefficient must lie in [0, 1], got {}", irs.a));
        }
        for (key, t) in [("irs.theta_t", irs.theta_t), ("irs.theta_r", irs.theta_r)] {
            if let Some(t) = t {
                if !(0.0..FRAC_PI_2).contains(&t) {
                    d.push(key, format!("must lie in [0, pi/2) rad, got {t}"));
                }
            }
        }
        if !irs.center.is_finite() {
            d.push("irs.center", "coordinates must be finite");
        }
        let needs_pose = irs.theta_t.is_none() || irs.theta_r.is_none();
        match irs.pose() {
            None if needs_pose => d.push("irs.normal", "required unless both theta_t and theta_r are given"),
            Some(Err(e)) => d.push("irs.normal", e.to_string()),
            _ => {}
        }
        if !serving_ok || !d.is_empty() {
            return;
        }
        let bs = self.serving_position();
        if distance(bs, irs.center) == 0.0 {
            d.push("irs.center", "coincides with the serving base station");
            return;
        }
        if let DevicePlacement::Fixed(ps) = &self.device {
            for p in ps {
                if let Err(e) = irs.link_geometry(bs, *p) {
                    d.push("irs", format!("device at {:?}: {e}", p.to_array()));
                }
            }
        } else if irs.theta_t.is_none() {
            if let Some(Ok(pose)) = irs.pose() {
                if let Err(e) = pose.angle_to(bs, "serving base station") {
                    d.push("irs", e.to_string());
                }
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.diagnostics().into_result()
    }

    fn transmit_power(&self, dir: Direction) -> f64 {
        match dir {
            Direction::Downlink => self.micro.radio.p_t_downlink,
            Direction::Uplink => self.micro.radio.p_t_uplink,
        }
    }

    pub(crate) fn bandwidth(&self, dir: Direction) -> f64 {
        match dir {
            Direction::Downlink => self.micro.radio.b_downlink,
            Direction::Uplink => self.micro.radio.b_uplink,
        }
    }

    /// Serving-link received power at `device`. Conventional mode uses the
    /// direct path with gain `h`; IRS mode uses the reflected path only and
    /// ignores `h`. A device behind the panel receives nothing.
    pub fn serving_power(&self, lambda: f64, device: Point3, dir: Direction, h: FadingGain) -> Result<f64> {
        let bs = self.serving_position();
        match (&self.irs, self.mode) {
            (Some(irs), Mode::Irs) => match irs.link_geometry(bs, device) {
                Ok(geom) => irs_received_power(self.transmit_power(dir), irs, &geom, lambda),
                Err(Error::BehindSurface(_)) => Ok(0.0),
                Err(e) => Err(e),
            },
            _ => conventional_received_power(
                self.transmit_power(dir),
                lambda,
                h,
                distance(bs, device),
                &self.micro.path_loss,
            ),
        }
    }

    /// Macro-tier power at `device`: the direct kernel with the macro
    /// transmit power and `alpha_mac`.
    pub fn macro_power(&self, lambda: f64, device: Point3, h: FadingGain) -> Result<f64> {
        let params = PathLossParams { alpha: self.tiers.alpha_mac, lambda_exponent: self.micro.path_loss.lambda_exponent };
        conventional_received_power(self.macro_bs.p_t, lambda, h, distance(self.macro_bs.position, device), &params)
    }

    fn fade(&self, stream: &mut RngStream) -> FadingGain {
        if self.fading {
            sample_fading(stream)
        } else {
            FadingGain::UNITY
        }
    }

    /// Association probability at `device` given the fading draws for the
    /// macro and micro links, honouring the configured ordering.
    pub(crate) fn association_at(&self, lambda: f64, device: Point3, h_mac: FadingGain, h_mic: FadingGain) -> Result<f64> {
        let (h_mac, h_mic) = match self.association.ordering {
            AssociationOrdering::AverageProbability => (h_mac, h_mic),
            AssociationOrdering::AveragePowers => (FadingGain::UNITY, FadingGain::UNITY),
        };
        let p_mac = self.macro_power(lambda, device, h_mac)?;
        let p_mic = self.serving_power(lambda, device, Direction::Downlink, h_mic)?;
        association_or_limit(&self.tiers, p_mac, p_mic)
    }

    /// One sample of the region-averaged association probability.
    pub(crate) fn association_sample(&self, lambda: f64, region_radius: f64, stream: &mut RngStream) -> Result<f64> {
        let device = sample_disc(self.serving_position(), region_radius, self.association.device_height, stream);
        let h_mac = self.fade(stream);
        let h_mic = self.fade(stream);
        self.association_at(lambda, device, h_mac, h_mic)
    }
}
