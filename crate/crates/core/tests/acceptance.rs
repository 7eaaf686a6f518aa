//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::{LN_2, PI};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use irsim::association::{association_probability, average_device_count, mean_association_probability, TierConfig};
use irsim::channel::{
    conventional_received_power, irs_received_power, noise_power, IrsConfig, IrsLinkGeometry, NoiseConfig,
    PathLossParams,
};
use irsim::config::parse_config;
use irsim::geometry::Point3;
use irsim::metrics::{sinr, throughput, transmission_delay, Payload};
use irsim::random::{sample_fading, FadingGain, RngStream};
use irsim::scenario::{compare_scenarios, run_scenario, Metric, Mode, ScenarioConfig};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn config(name: &str) -> ScenarioConfig {
    parse_config(format!("{}/configs/{name}", env!("CARGO_MANIFEST_DIR"))).expect("shipped config parses")
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($fmt)+));
        }
    };
}

fn within(budget: Duration, start: Instant) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure!(t < budget, "took {t:.2?}, budget {budget:?}");
    Ok(t)
}

fn panel(m: u32, n: u32, a: f64) -> IrsConfig {
    IrsConfig {
        m,
        n_elem: n,
        d_x: 0.005,
        d_y: 0.005,
        a,
        g_t: 1.0,
        g_r: 1.0,
        center: Point3::ORIGIN,
        normal: None,
        theta_t: None,
        theta_r: None,
    }
}

fn equation_oracles() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut check = |name: &str, got: f64, want: f64| -> Result<(), String> {
        let e = rel(got, want);
        worst = worst.max(e);
        ensure!(e <= 1e-9, "{name}: {got:e} vs oracle {want:e} (rel {e:.1e})");
        Ok(())
    };
    let one = FadingGain::UNITY;

    let p_conv = conventional_received_power(1.0, 0.1, one, 10.0, &PathLossParams::new(2.0)).map_err(|e| e.to_string())?;
    check("conventional power", p_conv, 0.1 / (16.0 * PI * PI * 100.0))?;

    let geom = IrsLinkGeometry::new(10.0, 10.0, 0.0, 0.0).map_err(|e| e.to_string())?;
    let p_irs = irs_received_power(1.0, &panel(100, 100, 1.0), &geom, 0.01).map_err(|e| e.to_string())?;
    let g = 4.0 * PI * 0.005 * 0.005 / 1e-4;
    check("IRS power", p_irs, g * 1e4 * 1e4 * 2.5e-5 * 1e-4 / (64.0 * PI * PI * PI * 1e4))?;

    let s = sinr(p_conv, 1e-8, 3.981e-15).map_err(|e| e.to_string())?;
    check("SINR", s, p_conv / (1e-8 + 3.981e-15))?;
    let t = throughput(1e6, s).map_err(|e| e.to_string())?;
    check("throughput", t, 1e6 * (1.0 + s).ln() / LN_2)?;
    let d = transmission_delay(Payload::new(12_000).map_err(|e| e.to_string())?, t).map_err(|e| e.to_string())?;
    check("delay", d, 12_000.0 / t)?;

    let n0 = noise_power(1.0, &NoiseConfig::Thermal { t0: 290.0, noise_figure: 0.0 }).map_err(|e| e.to_string())?;
    check("thermal noise", n0, 1.380_649e-23 * 290.0)?;

    let tiers = TierConfig { lambda_mac: 1e-6, lambda_mic: 1e-5, lambda_u: 1e-3, alpha_mac: 4.0 };
    let a = association_probability(&tiers, 10.0, 1.0).map_err(|e| e.to_string())?;
    check("association", a, 1.0 / (1.0 + 0.1 * 10f64.sqrt()))?;
    let n = average_device_count(&tiers, 0.5).map_err(|e| e.to_string())?;
    check("device count", n, 65.0)?;

    // The same figures through the full pipeline, one replication, no fading.
    let cfg = config("canonical.toml");
    for (mode, p) in [(Mode::Conventional, p_conv), (Mode::Irs, p_irs)] {
        let summary = run_scenario(&cfg.with_mode(mode).map_err(|e| e.to_string())?, 1, 0).map_err(|e| e.to_string())?;
        let s = p / (1e-8 + 3.981e-15);
        let t = 1e6 * (1.0 + s).ln() / LN_2;
        let p_mac = 1e3 * 0.1 / (16.0 * PI * PI * 1e4);
        for (m, want) in [
            (Metric::RxPowerDl, p),
            (Metric::SinrDl, s),
            (Metric::ThroughputUl, t),
            (Metric::SpectralEfficiencyDl, t / 1e6),
            (Metric::DelayUl, 12_000.0 / t),
            (Metric::Association, 1.0 / (1.0 + 0.1 * (p_mac / p).sqrt())),
        ] {
            check(&format!("{} {}", mode.as_str(), m.name()), summary.mean(m).unwrap_or(f64::NAN), want)?;
        }
    }
    let elapsed = within(Duration::from_secs(1), start)?;
    Ok(format!("worst rel err {worst:.1e}, association {a:.7}, {elapsed:.2?}"))
}

fn scaling_laws() -> Outcome {
    let start = Instant::now();
    let mut rng = RngStream::new(20_240_601, 0);
    let mut u = |lo: f64, hi: f64| lo + (hi - lo) * rng.uniform();
    let mut worst: f64 = 0.0;
    let one = FadingGain::UNITY;
    for i in 0..1000 {
        let err = |e: irsim::Error| format!("draw {i}: {e}");
        let lambda = u(1e-3, 1.0);
        let alpha = u(2.0, 6.0);
        let p_t = u(1e-3, 1e2);
        let d = u(1.0, 1e3);
        let pl = PathLossParams { alpha, lambda_exponent: if i % 2 == 0 { 1 } else { 2 } };
        let ratio = conventional_received_power(p_t, lambda, one, 2.0 * d, &pl).map_err(err)?
            / conventional_received_power(p_t, lambda, one, d, &pl).map_err(err)?;
        let e = rel(ratio, 2f64.powf(-alpha));
        worst = worst.max(e);
        ensure!(e <= 1e-12, "draw {i}: distance doubling ratio {ratio} vs {}", 2f64.powf(-alpha));

        let m = u(1.0, 500.0).floor() as u32;
        let n = u(1.0, 500.0).floor() as u32;
        let k = u(2.0, 8.0).floor() as u32;
        let a = u(0.01, 1.0);
        let c = u(0.0, 1.0);
        let geom = IrsLinkGeometry::new(u(1.0, 500.0), u(1.0, 500.0), u(0.0, 1.5), u(0.0, 1.5)).map_err(err)?;
        let base = irs_received_power(p_t, &panel(m, n, a), &geom, lambda).map_err(err)?;
        let kf = f64::from(k);
        for (label, got, want) in [
            ("M", irs_received_power(p_t, &panel(m * k, n, a), &geom, lambda).map_err(err)? / base, kf * kf),
            ("N", irs_received_power(p_t, &panel(m, n * k, a), &geom, lambda).map_err(err)? / base, kf * kf),
            ("A", irs_received_power(p_t, &panel(m, n, a * c), &geom, lambda).map_err(err)? / base, c * c),
        ] {
            let e = rel(got, want);
            worst = worst.max(e);
            ensure!(e <= 1e-12, "draw {i}: {label} law ratio {got} vs {want}");
        }

        let boresight = IrsLinkGeometry::new(geom.d1, geom.d2, 0.0, 0.0).map_err(err)?;
        let p0 = irs_received_power(p_t, &panel(m, n, a), &boresight, lambda).map_err(err)?;
        let e = rel(base / p0, geom.theta_t.cos() * geom.theta_r.cos());
        worst = worst.max(e);
        ensure!(e <= 1e-12, "draw {i}: cosine law");
        let grazing = IrsLinkGeometry::new(geom.d1, geom.d2, (PI / 2.0).next_down(), geom.theta_r).map_err(err)?;
        let pg = irs_received_power(p_t, &panel(m, n, a), &grazing, lambda).map_err(err)?;
        ensure!(pg <= 1e-12 * p0, "draw {i}: grazing power {pg:e} vs boresight {p0:e}");
        ensure!(
            IrsLinkGeometry::new(geom.d1, geom.d2, PI / 2.0, 0.0).is_err(),
            "draw {i}: theta = pi/2 accepted"
        );
    }
    let elapsed = within(Duration::from_secs(5), start)?;
    Ok(format!("1000 draws, worst rel err {worst:.1e}, {elapsed:.2?}"))
}

fn fading_statistics() -> Outcome {
    let start = Instant::now();
    let n = 1_000_000;
    let mut stream = RngStream::new(1, 0);
    let mut h: Vec<f64> = (0..n).map(|_| sample_fading(&mut stream).value()).collect();
    let nf = n as f64;
    let mean = h.iter().sum::<f64>() / nf;
    let tail = h.iter().filter(|&&x| x > 1.0).count() as f64 / nf;
    h.sort_unstable_by(f64::total_cmp);
    let ks = h
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = 1.0 - (-x).exp();
            (f - i as f64 / nf).max((i + 1) as f64 / nf - f)
        })
        .fold(0.0, f64::max);
    let critical = 1.627_6 / nf.sqrt();
    ensure!((mean - 1.0).abs() <= 0.005, "mean {mean}");
    ensure!(ks < critical, "KS {ks:.2e} >= critical {critical:.2e}");
    ensure!((tail - (-1f64).exp()).abs() <= 0.002, "P(h > 1) = {tail}");
    let elapsed = within(Duration::from_secs(10), start)?;
    Ok(format!("mean {mean:.5}, KS {ks:.2e} < {critical:.2e}, P(h>1) {tail:.4}, {elapsed:.2?}"))
}

fn association_identities() -> Outcome {
    let mut rng = RngStream::new(99, 0);
    let mut u = |lo: f64, hi: f64| lo + (hi - lo) * rng.uniform();
    let mut worst: f64 = 0.0;
    for i in 0..1000 {
        let err = |e: irsim::Error| format!("draw {i}: {e}");
        let (lmac, lmic) = (10f64.powf(u(-8.0, -4.0)), 10f64.powf(u(-8.0, -4.0)));
        let alpha = u(2.01, 6.0);
        let (pmac, pmic) = (10f64.powf(u(-15.0, -3.0)), 10f64.powf(u(-15.0, -3.0)));
        let t = TierConfig { lambda_mac: lmac, lambda_mic: lmic, lambda_u: 10f64.powf(u(-6.0, -2.0)), alpha_mac: alpha };
        let swapped = TierConfig { lambda_mac: lmic, lambda_mic: lmac, ..t };
        let a = association_probability(&t, pmac, pmic).map_err(err)?;
        let b = association_probability(&swapped, pmic, pmac).map_err(err)?;
        worst = worst.max((a + b - 1.0).abs());
        ensure!((a + b - 1.0).abs() <= 1e-12, "draw {i}: complement {a} + {b}");

        let p_irs = pmic * u(1.0, 1e3);
        ensure!(
            association_probability(&t, pmac, p_irs).map_err(err)? >= a,
            "draw {i}: stronger serving power lowered association"
        );

        let (x, y) = (u(0.0, 1.0), u(0.0, 1.0));
        let nx = average_device_count(&t, x).map_err(err)?;
        let ny = average_device_count(&t, y).map_err(err)?;
        let slope = 1.28 * t.lambda_u / t.lambda_mic;
        ensure!(average_device_count(&t, 0.0).map_err(err)? == 1.0, "draw {i}: n(0) != 1");
        ensure!((nx - ny - slope * (x - y)).abs() <= 1e-12 * nx.max(ny), "draw {i}: affinity");
        let e = rel(nx, 1.0 + slope * x);
        worst = worst.max(e);
        ensure!(e <= 1e-12, "draw {i}: device count {nx} vs {}", 1.0 + slope * x);
    }
    Ok(format!("1000 draws, worst deviation {worst:.1e}"))
}

fn monte_carlo_convergence() -> Outcome {
    let start = Instant::now();
    let mut cfg = config("canonical.toml").with_mode(Mode::Conventional).map_err(|e| e.to_string())?;
    cfg.fading = true;
    let summary = run_scenario(&cfg, 100_000, 3).map_err(|e| e.to_string())?;
    let faded = summary.mean(Metric::RxPowerDl).unwrap_or(f64::NAN);
    let unfaded = 0.1 / (16.0 * PI * PI * 100.0);
    let e = rel(faded, unfaded);
    ensure!(e <= 0.01, "faded mean {faded:e} vs {unfaded:e} ({:.2}%)", 100.0 * e);

    let adv = config("irs_advantage.toml").with_mode(Mode::Conventional).map_err(|e| e.to_string())?;
    let stream = RngStream::new(17, 0);
    let mut cis = Vec::new();
    for n in [1_000, 10_000, 100_000] {
        let est = mean_association_probability(&adv, adv.association.region_radius, n, &stream).map_err(|e| e.to_string())?;
        cis.push(est.ci_halfwidth);
    }
    let root10 = 10f64.sqrt();
    for w in cis.windows(2) {
        let shrink = w[0] / w[1];
        ensure!(
            shrink >= root10 / 1.2 && shrink <= root10 * 1.2,
            "CI shrink {shrink:.3} outside [{:.3}, {:.3}] ({cis:?})",
            root10 / 1.2,
            root10 * 1.2
        );
    }
    let elapsed = within(Duration::from_secs(60), start)?;
    Ok(format!(
        "faded/unfaded {:.4}, CI shrink {:.3} and {:.3}, {elapsed:.2?}",
        faded / unfaded,
        cis[0] / cis[1],
        cis[1] / cis[2]
    ))
}

fn cli(out: &Path, args: &[&str]) -> Result<(), String> {
    let output = Command::new(env!("CARGO_BIN_EXE_irsim"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(output.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&output.stderr));
    Ok(())
}

fn determinism() -> Outcome {
    let path = format!("{}/configs/irs_advantage.toml", env!("CARGO_MANIFEST_DIR"));
    let runs: [(&str, &[&str]); 4] = [
        ("simulate", &["simulate", "--replications", "2000"]),
        ("compare", &["compare", "--replications", "2000"]),
        ("sweep", &["sweep", "--param", "irs.m", "--values", "50,100,200", "--replications", "500"]),
        ("associate", &["associate", "--replications", "5000"]),
    ];
    let mut files = 0;
    for (name, args) in runs {
        let dirs: Vec<tempfile::TempDir> = (0..3).map(|_| tempfile::tempdir().expect("temp dir")).collect();
        for (dir, workers) in dirs.iter().zip(["1", "1", "4"]) {
            let mut full = args.to_vec();
            full.extend(["--config", &path, "--seed", "7", "--workers", workers]);
            cli(dir.path(), &full)?;
        }
        for ext in ["csv", "json"] {
            let read = |d: &tempfile::TempDir| std::fs::read(d.path().join(format!("{name}.{ext}"))).map_err(|e| e.to_string());
            let first = read(&dirs[0])?;
            ensure!(first == read(&dirs[1])?, "{name}.{ext} differs between identical runs");
            ensure!(first == read(&dirs[2])?, "{name}.{ext} differs between 1 and 4 workers");
            files += 1;
        }
    }
    Ok(format!("{files} artifacts byte-identical across reruns and workers 1/4"))
}

fn directional_sanity() -> Outcome {
    let cfg = config("irs_advantage.toml");
    let report = compare_scenarios(&cfg, 20_000, 0).map_err(|e| e.to_string())?;
    for m in Metric::ALL {
        ensure!(
            report.irs_wins(m),
            "{}: irs {:?} vs conventional {:?}",
            m.name(),
            report.irs.mean(m),
            report.conventional.mean(m)
        );
    }
    let delay = (report.conventional.mean(Metric::DelayUl), report.irs.mean(Metric::DelayUl));
    ensure!(matches!(delay, (Some(c), Some(i)) if i < c), "delay {delay:?}");
    Ok(format!(
        "IRS better on all {} metrics; SINR_dl x{:.1}, delay x{:.3}, n {:.2} -> {:.2}",
        Metric::ALL.len(),
        report.ratio(Metric::SinrDl).unwrap_or(f64::NAN),
        report.ratio(Metric::DelayUl).unwrap_or(f64::NAN),
        report.conventional.mean(Metric::DeviceCount).unwrap_or(f64::NAN),
        report.irs.mean(Metric::DeviceCount).unwrap_or(f64::NAN),
    ))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("equation oracles", equation_oracles),
        ("scaling laws", scaling_laws),
        ("fading statistics", fading_statistics),
        ("association identities", association_identities),
        ("monte carlo convergence", monte_carlo_convergence),
        ("determinism", determinism),
        ("directional sanity", directional_sanity),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  {name:<24} {detail}"),
            Err(reason) => {
                failed += 1;
                println!("FAIL  {name:<24} {reason}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
