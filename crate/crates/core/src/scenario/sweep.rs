use super::{run_scenario_with, DevicePlacement, MetricsSummary, ScenarioConfig};
use crate::carrier::CarrierConfig;
use crate::error::{Error, Result};
use crate::geometry::distance;
use crate::metrics::Payload;
use crate::units::Dimension;

/// One-dimensional sweep: `parameter` takes each of `values` (SI units) in
/// turn, every point reusing `seed`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub parameter: String,
    pub values: Vec<f64>,
    pub replications: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub summary: MetricsSummary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub parameter: String,
    pub unit: &'static str,
    pub rows: Vec<SweepRow>,
}

/// Sweepable parameter paths and their dimensions.
pub const SWEEP_PARAMETERS: &[(&str, Dimension)] = &[
    ("carrier.f_c", Dimension::Frequency),
    ("micro.p_t_downlink", Dimension::Power),
    ("micro.p_t_uplink", Dimension::Power),
    ("micro.b_downlink", Dimension::Frequency),
    ("micro.b_uplink", Dimension::Frequency),
    ("micro.alpha", Dimension::Dimensionless),
    ("macro.p_t", Dimension::Power),
    ("tiers.lambda_mac", Dimension::Density),
    ("tiers.lambda_mic", Dimension::Density),
    ("tiers.lambda_u", Dimension::Density),
    ("tiers.alpha_mac", Dimension::Dimensionless),
    ("device.distance", Dimension::Length),
    ("device.radius", Dimension::Length),
    ("irs.m", Dimension::Dimensionless),
    ("irs.n", Dimension::Dimensionless),
    ("irs.d_x", Dimension::Length),
    ("irs.d_y", Dimension::Length),
    ("irs.a", Dimension::Dimensionless),
    ("irs.g_t", Dimension::Gain),
    ("irs.g_r", Dimension::Gain),
    ("irs.theta_t", Dimension::Angle),
    ("irs.theta_r", Dimension::Angle),
    ("payload.data", Dimension::Data),
    ("association.region_radius", Dimension::Length),
];

fn element_count(path: &str, value: f64) -> Result<u32> {
    if value.fract() != 0.0 || !(1.0..=f64::from(u32::MAX)).contains(&value) {
        return Err(Error::config(path, format!("must be a positive integer, got {value}")));
    }
    Ok(value as u32)
}

/// Copy of `cfg` with `path` set to `value`, revalidated.
///
/// `device.distance` moves every fixed device along its bearing from the
/// serving BS so that its 3-D distance equals `value`.
pub fn apply_parameter(cfg: &ScenarioConfig, path: &str, value: f64) -> Result<ScenarioConfig> {
    let mut c = cfg.clone();
    fn irs<'a>(c: &'a mut ScenarioConfig, path: &str) -> Result<&'a mut crate::channel::IrsConfig> {
        c.irs.as_mut().ok_or_else(|| Error::config(path, "scenario has no [irs] section"))
    }
    match path {
        "carrier.f_c" => c.carrier = CarrierConfig { f_c: value },
        "micro.p_t_downlink" => c.micro.radio.p_t_downlink = value,
        "micro.p_t_uplink" => c.micro.radio.p_t_uplink = value,
        "micro.b_downlink" => c.micro.radio.b_downlink = value,
        "micro.b_uplink" => c.micro.radio.b_uplink = value,
        "micro.alpha" => c.micro.path_loss.alpha = value,
        "macro.p_t" => c.macro_bs.p_t = value,
        "tiers.lambda_mac" => c.tiers.lambda_mac = value,
        "tiers.lambda_mic" => c.tiers.lambda_mic = value,
        "tiers.lambda_u" => c.tiers.lambda_u = value,
        "tiers.alpha_mac" => c.tiers.alpha_mac = value,
        "device.distance" => {
            let bs = c.serving_position();
            match &mut c.device {
                DevicePlacement::Fixed(ps) => {
                    for p in ps.iter_mut() {
                        let d = distance(bs, *p);
                        let v = p.minus(bs);
                        let k = value / d;
                        *p = bs.offset([v[0] * k, v[1] * k, v[2] * k]);
                    }
                }
                DevicePlacement::Disc { .. } => {
                    return Err(Error::config(path, "only applies to fixed device placement"));
                }
            }
        }
        "device.radius" => match &mut c.device {
            DevicePlacement::Disc { radius, .. } => *radius = value,
            DevicePlacement::Fixed(_) => return Err(Error::config(path, "only applies to disc device placement")),
        },
        "irs.m" => irs(&mut c, path)?.m = element_count(path, value)?,
        "irs.n" => irs(&mut c, path)?.n_elem = element_count(path, value)?,
        "irs.d_x" => irs(&mut c, path)?.d_x = value,
        "irs.d_y" => irs(&mut c, path)?.d_y = value,
        "irs.a" => irs(&mut c, path)?.a = value,
        "irs.g_t" => irs(&mut c, path)?.g_t = value,
        "irs.g_r" => irs(&mut c, path)?.g_r = value,
        "irs.theta_t" => irs(&mut c, path)?.theta_t = Some(value),
        "irs.theta_r" => irs(&mut c, path)?.theta_r = Some(value),
        "payload.data" => {
            if value.fract() != 0.0 || value < 1.0 {
                return Err(Error::config(path, format!("must be a positive whole number of bits, got {value}")));
            }
            c.payload = Payload::new(value as u64)?;
        }
        "association.region_radius" => c.association.region_radius = value,
        _ => return Err(Error::UnknownParameter(path.to_string())),
    }
    c.validate()?;
    Ok(c)
}

pub fn sweep(cfg: &ScenarioConfig, spec: &SweepSpec) -> Result<SweepTable> {
    sweep_with(cfg, spec, None)
}

pub fn sweep_with(cfg: &ScenarioConfig, spec: &SweepSpec, workers: Option<usize>) -> Result<SweepTable> {
    let dim = SWEEP_PARAMETERS
        .iter()
        .find(|(p, _)| *p == spec.parameter)
        .map(|(_, d)| *d)
        .ok_or_else(|| Error::UnknownParameter(spec.parameter.clone()))?;
    if spec.values.is_empty() {
        return Err(Error::InvalidArgument("sweep needs at least one value".into()));
    }
    let mut rows = Vec::with_capacity(spec.values.len());
    for &value in &spec.values {
        let point = apply_parameter(cfg, &spec.parameter, value)?;
        let summary = run_scenario_with(&point, spec.replications, spec.seed, workers)?;
        rows.push(SweepRow { value, summary });
    }
    Ok(SweepTable { parameter: spec.parameter.clone(), unit: dim.si_unit(), rows })
}
