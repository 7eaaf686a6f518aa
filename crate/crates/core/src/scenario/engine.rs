use rayon::prelude::*;

use super::{Direction, Mode, ScenarioConfig};
use crate::association::average_device_count;
use crate::channel::{interference_power, noise_power, BaseStation};
use crate::error::{Error, Result};
use crate::metrics::{link_metrics, transmission_delay};
use crate::random::RngStream;
use crate::stats::Stat;

/// The aggregated per-replication quantities, in table order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    RxPowerDl,
    RxPowerUl,
    SinrDl,
    SinrUl,
    ThroughputDl,
    ThroughputUl,
    SpectralEfficiencyDl,
    SpectralEfficiencyUl,
    DelayUl,
    Association,
    AssociationMean,
    DeviceCount,
}

impl Metric {
    pub const ALL: [Metric; 12] = [
        Metric::RxPowerDl,
        Metric::RxPowerUl,
        Metric::SinrDl,
        Metric::SinrUl,
        Metric::ThroughputDl,
        Metric::ThroughputUl,
        Metric::SpectralEfficiencyDl,
        Metric::SpectralEfficiencyUl,
        Metric::DelayUl,
        Metric::Association,
        Metric::AssociationMean,
        Metric::DeviceCount,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::RxPowerDl => "rx_power_dl",
            Metric::RxPowerUl => "rx_power_ul",
            Metric::SinrDl => "sinr_dl",
            Metric::SinrUl => "sinr_ul",
            Metric::ThroughputDl => "throughput_dl",
            Metric::ThroughputUl => "throughput_ul",
            Metric::SpectralEfficiencyDl => "se_dl",
            Metric::SpectralEfficiencyUl => "se_ul",
            Metric::DelayUl => "delay_ul",
            Metric::Association => "assoc_prob",
            Metric::AssociationMean => "assoc_prob_mean",
            Metric::DeviceCount => "device_count",
        }
    }

    pub fn unit(self) -> &'static str {
        match self {
            Metric::RxPowerDl | Metric::RxPowerUl => "W",
            Metric::ThroughputDl | Metric::ThroughputUl => "bit/s",
            Metric::SpectralEfficiencyDl | Metric::SpectralEfficiencyUl => "bit/s/Hz",
            Metric::DelayUl => "s",
            Metric::SinrDl | Metric::SinrUl | Metric::Association | Metric::AssociationMean | Metric::DeviceCount => "1",
        }
    }

    /// True when a smaller value is the better outcome.
    pub fn lower_is_better(self) -> bool {
        self == Metric::DelayUl
    }
}

/// Monte Carlo aggregates of every [`Metric`] for one scenario run.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsSummary {
    pub mode: Mode,
    pub seed: u64,
    pub replications: usize,
    /// Replications whose uplink throughput was zero; they carry no delay
    /// sample.
    pub unreachable_uplink: usize,
    stats: Vec<Option<Stat>>,
}

impl MetricsSummary {
    /// `None` only for the uplink delay when no replication reached the BS.
    pub fn get(&self, metric: Metric) -> Option<&Stat> {
        self.stats[metric as usize].as_ref()
    }

    pub fn mean(&self, metric: Metric) -> Option<f64> {
        self.get(metric).map(|s| s.mean)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Metric, Option<&Stat>)> {
        Metric::ALL.into_iter().map(|m| (m, self.get(m)))
    }
}

struct Record {
    values: [f64; 12],
    delay: Option<f64>,
}

fn replicate(cfg: &ScenarioConfig, lambda: f64, stations: &[BaseStation], seed: u64, r: u64) -> Result<Record> {
    let root = RngStream::new(seed, r);
    let serving = cfg.serving_position();
    let device = cfg.device.position(serving, r, &mut root.child(0));

    // Drawn in both modes so that compared runs share every other draw.
    let mut link = root.child(1);
    let h_dl = cfg.fade(&mut link);
    let h_ul = cfg.fade(&mut link);
    let h_mac = cfg.fade(&mut root.child(2));

    let p_dl = cfg.serving_power(lambda, device, Direction::Downlink, h_dl)?;
    let p_ul = cfg.serving_power(lambda, device, Direction::Uplink, h_ul)?;

    let mut intf = root.child(3);
    let i_dl = interference_power(
        device,
        cfg.micro.serving,
        stations,
        lambda,
        &cfg.micro.path_loss,
        &cfg.interference.downlink,
        &mut intf,
        cfg.fading,
    )?;
    let i_ul = interference_power(
        device,
        cfg.micro.serving,
        stations,
        lambda,
        &cfg.micro.path_loss,
        &cfg.interference.uplink,
        &mut intf,
        cfg.fading,
    )?;

    let dl = link_metrics(p_dl, i_dl, noise_power(cfg.bandwidth(Direction::Downlink), &cfg.noise)?, cfg.bandwidth(Direction::Downlink), None)?;
    let ul = link_metrics(p_ul, i_ul, noise_power(cfg.bandwidth(Direction::Uplink), &cfg.noise)?, cfg.bandwidth(Direction::Uplink), None)?;
    let delay = match transmission_delay(cfg.payload, ul.throughput) {
        Ok(d) => Some(d),
        Err(Error::ZeroThroughput) => None,
        Err(e) => return Err(e),
    };

    let a = cfg.association_at(lambda, device, h_mac, h_dl)?;
    let a_bar = cfg.association_sample(lambda, cfg.association.region_radius, &mut root.child(4))?;
    let n = average_device_count(&cfg.tiers, a_bar)?;

    let values = [
        dl.received_power,
        ul.received_power,
        dl.sinr,
        ul.sinr,
        dl.throughput,
        ul.throughput,
        dl.spectral_efficiency,
        ul.spectral_efficiency,
        delay.unwrap_or(0.0),
        a,
        a_bar,
        n,
    ];
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(format!("replication {r}, {}", Metric::ALL[i].name())));
    }
    Ok(Record { values, delay })
}

/// Runs `replications` independent replications and aggregates them.
/// Replication `r` draws only from streams derived from `(seed, r)`, and
/// aggregation runs in replication order, so the summary is bitwise
/// reproducible for any thread count.
pub fn run_scenario(cfg: &ScenarioConfig, replications: usize, seed: u64) -> Result<MetricsSummary> {
    run_scenario_with(cfg, replications, seed, None)
}

/// [`run_scenario`] on a dedicated pool of `workers` threads (`None` uses
/// the global pool).
pub fn run_scenario_with(
    cfg: &ScenarioConfig,
    replications: usize,
    seed: u64,
    workers: Option<usize>,
) -> Result<MetricsSummary> {
    cfg.validate()?;
    if replications == 0 {
        return Err(Error::InvalidArgument("replications must be >= 1".into()));
    }
    let lambda = cfg.carrier.wavelength()?;
    let stations: Vec<BaseStation> =
        cfg.micro.positions.iter().map(|&position| BaseStation { position, radio: cfg.micro.radio }).collect();

    let work = || {
        (0..replications as u64)
            .into_par_iter()
            .map(|r| replicate(cfg, lambda, &stations, seed, r))
            .collect::<Result<Vec<Record>>>()
    };
    let records = match workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(work)?,
        None => work()?,
    };

    let mut stats = Vec::with_capacity(Metric::ALL.len());
    let mut column = Vec::with_capacity(records.len());
    for metric in Metric::ALL {
        column.clear();
        if metric == Metric::DelayUl {
            column.extend(records.iter().filter_map(|r| r.delay));
            stats.push((!column.is_empty()).then(|| Stat::from_samples(&column)));
        } else {
            column.extend(records.iter().map(|r| r.values[metric as usize]));
            stats.push(Some(Stat::from_samples(&column)));
        }
    }
    let unreachable_uplink = records.iter().filter(|r| r.delay.is_none()).count();
    Ok(MetricsSummary { mode: cfg.mode, seed, replications, unreachable_uplink, stats })
}

/// Paired conventional and IRS runs over identical geometry and seeds.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub seed: u64,
    pub replications: usize,
    pub conventional: MetricsSummary,
    pub irs: MetricsSummary,
}

impl ComparisonReport {
    /// IRS mean minus conventional mean.
    pub fn delta(&self, metric: Metric) -> Option<f64> {
        Some(self.irs.mean(metric)? - self.conventional.mean(metric)?)
    }

    /// IRS mean over conventional mean; `None` when the latter is zero.
    pub fn ratio(&self, metric: Metric) -> Option<f64> {
        let conv = self.conventional.mean(metric)?;
        (conv != 0.0).then(|| self.irs.mean(metric).map(|irs| irs / conv)).flatten()
    }

    /// True when the IRS mean is strictly better on `metric`.
    pub fn irs_wins(&self, metric: Metric) -> bool {
        match (self.irs.mean(metric), self.conventional.mean(metric)) {
            (Some(i), Some(c)) if metric.lower_is_better() => i < c,
            (Some(i), Some(c)) => i > c,
            _ => false,
        }
    }
}

pub fn compare_scenarios(cfg: &ScenarioConfig, replications: usize, seed: u64) -> Result<ComparisonReport> {
    compare_scenarios_with(cfg, replications, seed, None)
}

pub fn compare_scenarios_with(
    cfg: &ScenarioConfig,
    replications: usize,
    seed: u64,
    workers: Option<usize>,
) -> Result<ComparisonReport> {
    if cfg.irs.is_none() {
        return Err(Error::config("irs", "compare needs an [irs] section"));
    }
    let conventional = run_scenario_with(&cfg.with_mode(Mode::Conventional)?, replications, seed, workers)?;
    let irs = run_scenario_with(&cfg.with_mode(Mode::Irs)?, replications, seed, workers)?;
    Ok(ComparisonReport { seed, replications, conventional, irs })
}
