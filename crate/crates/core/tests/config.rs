use irsim::association::associate;
use irsim::config::{parse_config, parse_config_str, to_toml_string};
use irsim::output::{association_table, comparison_table, config_digest, summary_table, sweep_table};
use irsim::scenario::{apply_parameter, compare_scenarios, run_scenario, sweep, Mode, ScenarioConfig, SweepSpec};
use irsim::Error;
use proptest::prelude::*;

fn config(name: &str) -> ScenarioConfig {
    parse_config(format!("{}/configs/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn shipped_configs_round_trip() {
    for name in ["canonical.toml", "irs_advantage.toml", "minimal.toml"] {
        let cfg = config(name);
        let text = to_toml_string(&cfg);
        assert_eq!(parse_config_str(&text).unwrap(), cfg, "{name}");
        assert_eq!(to_toml_string(&parse_config_str(&text).unwrap()), text, "{name}");
    }
}

#[test]
fn digest_tracks_content_not_formatting() {
    let cfg = config("canonical.toml");
    let reformatted = parse_config_str(&to_toml_string(&cfg)).unwrap();
    assert_eq!(config_digest(&cfg), config_digest(&reformatted));
    let changed = apply_parameter(&cfg, "irs.m", 101.0).unwrap();
    assert_ne!(config_digest(&cfg), config_digest(&changed));
    assert_eq!(config_digest(&cfg).len(), 64);
}

#[test]
fn units_are_normalized() {
    let cfg = config("irs_advantage.toml");
    assert_eq!(cfg.carrier.f_c, 3.5e9);
    assert!((cfg.micro.radio.p_t_downlink - 1.0).abs() < 1e-15);
    assert_eq!(cfg.tiers.lambda_mic, 5e-6);
    assert!((cfg.irs.as_ref().unwrap().theta_t.unwrap() - std::f64::consts::FRAC_PI_6).abs() < 1e-15);
    assert_eq!(config("canonical.toml").payload.bits(), 12_000);
}

#[test]
fn every_violation_is_reported_by_path() {
    let text = to_toml_string(&config("irs_advantage.toml"))
        .replace("a = 0.9", "a = -0.1")
        .replace("alpha_mac = 3.5", "alpha_mac = 1.5")
        .replace("f_c = 3500000000", "f_c = -1");
    match parse_config_str(&text) {
        Err(Error::ConfigInvalid(d)) => {
            for path in ["irs.a", "tiers.alpha_mac", "carrier.f_c"] {
                assert!(d.mentions(path), "{path} missing from {d}");
            }
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn unknown_keys_are_rejected() {
    let text = format!("{}\n[irs2]\nm = 3\n", to_toml_string(&config("minimal.toml")));
    let err = parse_config_str(&text).unwrap_err();
    assert_eq!(err.exit_code(), 2);
    assert!(err.to_string().contains("irs2"), "{err}");
}

#[test]
fn csv_headers_match_golden() {
    let cfg = config("canonical.toml");
    let summary = run_scenario(&cfg, 2, 0).unwrap();
    assert_eq!(summary_table(&summary).header(), golden("simulate_header.txt").trim_end());
    let report = compare_scenarios(&cfg, 2, 0).unwrap();
    assert_eq!(comparison_table(&report).header(), golden("compare_header.txt").trim_end());
    let spec = SweepSpec { parameter: "irs.m".into(), values: vec![10.0], replications: 1, seed: 0 };
    assert_eq!(sweep_table(&sweep(&cfg, &spec).unwrap()).header(), golden("sweep_header.txt").trim_end());
    let conv = associate(&cfg.with_mode(Mode::Conventional).unwrap(), 100, 0).unwrap();
    let irs = associate(&cfg, 100, 0).unwrap();
    let table = association_table(&[("conv", conv), ("irs", irs)]);
    assert_eq!(table.header(), golden("associate_header.txt").trim_end());
}

fn parameter() -> impl Strategy<Value = (&'static str, f64)> {
    prop_oneof![
        (1e8..1e11f64).prop_map(|v| ("carrier.f_c", v)),
        (1e-3..1e3f64).prop_map(|v| ("micro.p_t_downlink", v)),
        (1e3..1e9f64).prop_map(|v| ("micro.b_uplink", v)),
        (2.0..6.0f64).prop_map(|v| ("micro.alpha", v)),
        (2.01..6.0f64).prop_map(|v| ("tiers.alpha_mac", v)),
        (1e-9..1e-3f64).prop_map(|v| ("tiers.lambda_u", v)),
        (1u32..5000).prop_map(|v| ("irs.m", f64::from(v))),
        (1e-4..0.5f64).prop_map(|v| ("irs.d_y", v)),
        (0.0..=1.0f64).prop_map(|v| ("irs.a", v)),
        (0.0..1.5f64).prop_map(|v| ("irs.theta_r", v)),
        (1u32..1_000_000).prop_map(|v| ("payload.data", f64::from(v))),
        (0.0..500.0f64).prop_map(|v| ("association.region_radius", v)),
    ]
}

proptest! {
    #[test]
    fn edited_configs_round_trip(edits in prop::collection::vec(parameter(), 1..6)) {
        let mut cfg = config("canonical.toml");
        for (path, value) in edits {
            cfg = apply_parameter(&cfg, path, value).unwrap();
        }
        let back = parse_config_str(&to_toml_string(&cfg)).unwrap();
        prop_assert_eq!(back, cfg);
    }
}
