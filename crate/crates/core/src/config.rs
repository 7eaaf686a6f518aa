//! Scenario files: TOML with explicit units.
//!
//! Quantities may be bare numbers (SI, except `noise_figure` which is dB)
//! or strings with a unit, e.g. `p_t_downlink = "30 dBm"` or
//! `f_c = "3 GHz"`. Everything is converted to linear SI on load, and every
//! problem found is reported with its key path in one
//! [`Error::ConfigInvalid`].

use std::path::Path;

use toml::{Table, Value};

use crate::association::{AssociationOrdering, TierConfig};
use crate::carrier::CarrierConfig;
use crate::channel::{InterferenceConfig, IrsConfig, NoiseConfig, PathLossParams, RadioConfig};
use crate::error::{Diagnostics, Error, Result};
use crate::geometry::Point3;
use crate::metrics::Payload;
use crate::scenario::{
    AssociationSettings, DevicePlacement, InterferenceSettings, MacroBs, MicroTier, Mode, ScenarioConfig,
};
use crate::units::{parse_quantity, Dimension};

pub fn parse_config(path: impl AsRef<Path>) -> Result<ScenarioConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path.display(), e))?;
    parse_config_str(&text)
}

pub fn parse_config_str(text: &str) -> Result<ScenarioConfig> {
    let root: Table = text.parse().map_err(|e: toml::de::Error| Error::config("<file>", e.message().to_string()))?;
    let mut r = Reader { diags: Diagnostics::default() };
    let cfg = r.scenario(&root);
    r.diags.into_result()?;
    cfg.validate()?;
    Ok(cfg)
}

struct Reader {
    diags: Diagnostics,
}

fn join(prefix: &str, key: &str) -> String {
    if prefix.is_empty() {
        key.to_string()
    } else {
        format!("{prefix}.{key}")
    }
}

impl Reader {
    fn unknown_keys(&mut self, t: &Table, prefix: &str, allowed: &[&str]) {
        for k in t.keys() {
            if !allowed.contains(&k.as_str()) {
                self.diags.push(join(prefix, k), "unknown key");
            }
        }
    }

    fn section<'a>(&mut self, t: &'a Table, prefix: &str, key: &str, required: bool) -> Option<&'a Table> {
        match t.get(key) {
            Some(Value::Table(s)) => Some(s),
            Some(_) => {
                self.diags.push(join(prefix, key), "expected a table");
                None
            }
            None => {
                if required {
                    self.diags.push(join(prefix, key), "missing required section");
                }
                None
            }
        }
    }

    fn value_as(&mut self, v: &Value, path: &str, dim: Dimension) -> f64 {
        let parsed = match v {
            Value::Integer(i) => Ok(*i as f64),
            Value::Float(f) if f.is_finite() => Ok(*f),
            Value::Float(f) => Err(format!("{f} is not finite")),
            Value::String(s) => parse_quantity(s, dim),
            _ => Err(format!("expected a number or a quantity string in {}", dim.si_unit())),
        };
        parsed.unwrap_or_else(|msg| {
            self.diags.push(path, msg);
            f64::NAN
        })
    }

    fn quantity(&mut self, t: &Table, prefix: &str, key: &str, dim: Dimension) -> f64 {
        let path = join(prefix, key);
        match t.get(key) {
            Some(v) => self.value_as(v, &path, dim),
            None => {
                self.diags.push(path, "missing required key");
                f64::NAN
            }
        }
    }

    fn opt_quantity(&mut self, t: &Table, prefix: &str, key: &str, dim: Dimension) -> Option<f64> {
        t.get(key).map(|v| self.value_as(v, &join(prefix, key), dim))
    }

    fn quantity_or(&mut self, t: &Table, prefix: &str, key: &str, dim: Dimension, default: f64) -> f64 {
        self.opt_quantity(t, prefix, key, dim).unwrap_or(default)
    }

    fn integer(&mut self, t: &Table, prefix: &str, key: &str, default: Option<i64>) -> i64 {
        match (t.get(key), default) {
            (Some(Value::Integer(i)), _) => *i,
            (Some(_), _) => {
                self.diags.push(join(prefix, key), "expected an integer");
                0
            }
            (None, Some(d)) => d,
            (None, None) => {
                self.diags.push(join(prefix, key), "missing required key");
                0
            }
        }
    }

    fn string<'a>(&mut self, t: &'a Table, prefix: &str, key: &str) -> Option<&'a str> {
        match t.get(key) {
            Some(Value::String(s)) => Some(s),
            Some(_) => {
                self.diags.push(join(prefix, key), "expected a string");
                None
            }
            None => None,
        }
    }

    fn point(&mut self, v: &Value, path: &str) -> Point3 {
        match v.as_array() {
            Some(a) if a.len() == 3 => {
                let c: Vec<f64> =
                    a.iter().enumerate().map(|(i, x)| self.value_as(x, &format!("{path}[{i}]"), Dimension::Length)).collect();
                Point3::new(c[0], c[1], c[2])
            }
            _ => {
                self.diags.push(path, "expected [x, y, z]");
                Point3::ORIGIN
            }
        }
    }

    fn required_point(&mut self, t: &Table, prefix: &str, key: &str) -> Point3 {
        match t.get(key) {
            Some(v) => self.point(v, &join(prefix, key)),
            None => {
                self.diags.push(join(prefix, key), "missing required key");
                Point3::ORIGIN
            }
        }
    }

    fn points(&mut self, t: &Table, prefix: &str, key: &str) -> Vec<Point3> {
        let path = join(prefix, key);
        match t.get(key) {
            Some(Value::Array(a)) => a.iter().enumerate().map(|(i, v)| self.point(v, &format!("{path}[{i}]"))).collect(),
            Some(_) => {
                self.diags.push(path, "expected a list of [x, y, z]");
                Vec::new()
            }
            None => {
                self.diags.push(path, "missing required key");
                Vec::new()
            }
        }
    }

    fn scenario(&mut self, root: &Table) -> ScenarioConfig {
        self.unknown_keys(
            root,
            "",
            &["mode", "fading", "carrier", "micro", "macro", "tiers", "device", "irs", "noise", "interference", "payload", "association"],
        );
        let empty = Table::new();

        let carrier = self.section(root, "", "carrier", true).unwrap_or(&empty);
        self.unknown_keys(carrier, "carrier", &["f_c"]);
        let carrier = CarrierConfig { f_c: self.quantity(carrier, "carrier", "f_c", Dimension::Frequency) };

        let micro = self.section(root, "", "micro", true).unwrap_or(&empty);
        let micro = self.micro(micro);

        let mac = self.section(root, "", "macro", true).unwrap_or(&empty);
        self.unknown_keys(mac, "macro", &["position", "p_t"]);
        let macro_bs = MacroBs {
            position: self.required_point(mac, "macro", "position"),
            p_t: self.quantity(mac, "macro", "p_t", Dimension::Power),
        };

        let t = self.section(root, "", "tiers", true).unwrap_or(&empty);
        self.unknown_keys(t, "tiers", &["lambda_mac", "lambda_mic", "lambda_u", "alpha_mac"]);
        let tiers = TierConfig {
            lambda_mac: self.quantity(t, "tiers", "lambda_mac", Dimension::Density),
            lambda_mic: self.quantity(t, "tiers", "lambda_mic", Dimension::Density),
            lambda_u: self.quantity(t, "tiers", "lambda_u", Dimension::Density),
            alpha_mac: self.quantity(t, "tiers", "alpha_mac", Dimension::Dimensionless),
        };

        let device = self.section(root, "", "device", true).unwrap_or(&empty);
        let device = self.device(device);
        let irs = self.section(root, "", "irs", false);
        let irs = irs.map(|s| self.irs(s));
        let noise = self.section(root, "", "noise", false);
        let noise = self.noise(noise);

        let mut interference = InterferenceSettings::default();
        if let Some(s) = self.section(root, "", "interference", false) {
            self.unknown_keys(s, "interference", &["downlink", "uplink"]);
            if let Some(dl) = self.section(s, "interference", "downlink", false) {
                interference.downlink = self.interference(dl, "interference.downlink");
            }
            if let Some(ul) = self.section(s, "interference", "uplink", false) {
                interference.uplink = self.interference(ul, "interference.uplink");
            }
        }

        let mut payload = Payload::default();
        if let Some(p) = self.section(root, "", "payload", false) {
            self.unknown_keys(p, "payload", &["data"]);
            if let Some(bits) = self.opt_quantity(p, "payload", "data", Dimension::Data) {
                if bits.is_finite() {
                    match (bits.fract() == 0.0 && bits >= 1.0 && bits <= u64::MAX as f64).then(|| Payload::new(bits as u64)) {
                        Some(Ok(p)) => payload = p,
                        _ => self.diags.push("payload.data", format!("must be a positive whole number of bits, got {bits}")),
                    }
                }
            }
        }

        let mut association = AssociationSettings::default();
        if let Some(a) = self.section(root, "", "association", false) {
            self.unknown_keys(a, "association", &["region_radius", "device_height", "ordering"]);
            association.region_radius =
                self.quantity_or(a, "association", "region_radius", Dimension::Length, association.region_radius);
            association.device_height =
                self.quantity_or(a, "association", "device_height", Dimension::Length, association.device_height);
            match self.string(a, "association", "ordering") {
                None | Some("after") => {}
                Some("before") => association.ordering = AssociationOrdering::AveragePowers,
                Some(other) => {
                    self.diags.push("association.ordering", format!("expected \"after\" or \"before\", got \"{other}\""))
                }
            }
        }

        let mode = match self.string(root, "", "mode") {
            None if irs.is_some() => Mode::Irs,
            None | Some("conventional") => Mode::Conventional,
            Some("irs") => Mode::Irs,
            Some(other) => {
                self.diags.push("mode", format!("expected \"conventional\" or \"irs\", got \"{other}\""));
                Mode::Conventional
            }
        };
        let fading = match root.get("fading") {
            None => true,
            Some(Value::Boolean(b)) => *b,
            Some(_) => {
                self.diags.push("fading", "expected true or false");
                true
            }
        };

        ScenarioConfig {
            mode,
            fading,
            carrier,
            micro,
            macro_bs,
            tiers,
            device,
            irs,
            noise,
            interference,
            payload,
            association,
        }
    }

    fn micro(&mut self, t: &Table) -> MicroTier {
        let p = "micro";
        self.unknown_keys(
            t,
            p,
            &["p_t_downlink", "p_t_uplink", "b_downlink", "b_uplink", "alpha", "lambda_exponent", "positions", "serving"],
        );
        let radio = RadioConfig {
            p_t_downlink: self.quantity(t, p, "p_t_downlink", Dimension::Power),
            p_t_uplink: self.quantity(t, p, "p_t_uplink", Dimension::Power),
            b_downlink: self.quantity(t, p, "b_downlink", Dimension::Frequency),
            b_uplink: self.quantity(t, p, "b_uplink", Dimension::Frequency),
        };
        let alpha = self.quantity(t, p, "alpha", Dimension::Dimensionless);
        let lambda_exponent = self.integer(t, p, "lambda_exponent", Some(1));
        let positions = self.points(t, p, "positions");
        let serving = self.integer(t, p, "serving", Some(0));
        if serving < 0 {
            self.diags.push("micro.serving", "must be >= 0");
        }
        MicroTier {
            radio,
            path_loss: PathLossParams { alpha, lambda_exponent: u8::try_from(lambda_exponent).unwrap_or(0) },
            positions,
            serving: usize::try_from(serving).unwrap_or(usize::MAX),
        }
    }

    fn device(&mut self, t: &Table) -> DevicePlacement {
        let p = "device";
        match self.string(t, p, "placement").unwrap_or("fixed") {
            "fixed" => {
                self.unknown_keys(t, p, &["placement", "positions"]);
                DevicePlacement::Fixed(self.points(t, p, "positions"))
            }
            "disc" => {
                self.unknown_keys(t, p, &["placement", "radius", "height"]);
                DevicePlacement::Disc {
                    radius: self.quantity(t, p, "radius", Dimension::Length),
                    height: self.quantity_or(t, p, "height", Dimension::Length, 1.5),
                }
            }
            other => {
                self.diags.push("device.placement", format!("expected \"fixed\" or \"disc\", got \"{other}\""));
                DevicePlacement::Fixed(Vec::new())
            }
        }
    }

    fn irs(&mut self, t: &Table) -> IrsConfig {
        let p = "irs";
        self.unknown_keys(t, p, &["m", "n", "d_x", "d_y", "a", "g_t", "g_r", "center", "normal", "theta_t", "theta_r"]);
        let count = |r: &mut Self, key: &str| {
            let v = r.integer(t, p, key, None);
            u32::try_from(v).unwrap_or_else(|_| {
                r.diags.push(join(p, key), format!("must be a positive integer, got {v}"));
                1
            })
        };
        let m = count(self, "m");
        let n_elem = count(self, "n");
        let normal = t.get("normal").map(|v| self.point(v, "irs.normal").to_array());
        IrsConfig {
            m,
            n_elem,
            d_x: self.quantity(t, p, "d_x", Dimension::Length),
            d_y: self.quantity(t, p, "d_y", Dimension::Length),
            a: self.quantity(t, p, "a", Dimension::Dimensionless),
            g_t: self.quantity_or(t, p, "g_t", Dimension::Gain, 1.0),
            g_r: self.quantity_or(t, p, "g_r", Dimension::Gain, 1.0),
            center: self.required_point(t, p, "center"),
            normal,
            theta_t: self.opt_quantity(t, p, "theta_t", Dimension::Angle),
            theta_r: self.opt_quantity(t, p, "theta_r", Dimension::Angle),
        }
    }

    fn noise(&mut self, t: Option<&Table>) -> NoiseConfig {
        let Some(t) = t else { return NoiseConfig::default() };
        let p = "noise";
        match self.string(t, p, "mode").unwrap_or("thermal") {
            "thermal" => {
                self.unknown_keys(t, p, &["mode", "t0", "noise_figure"]);
                NoiseConfig::Thermal {
                    t0: self.quantity_or(t, p, "t0", Dimension::Temperature, 290.0),
                    noise_figure: self.quantity_or(t, p, "noise_figure", Dimension::Decibel, 9.0),
                }
            }
            "fixed" => {
                self.unknown_keys(t, p, &["mode", "power"]);
                NoiseConfig::Fixed { power: self.quantity(t, p, "power", Dimension::Power) }
            }
            other => {
                self.diags.push("noise.mode", format!("expected \"thermal\" or \"fixed\", got \"{other}\""));
                NoiseConfig::default()
            }
        }
    }

    fn interference(&mut self, t: &Table, p: &str) -> InterferenceConfig {
        match self.string(t, p, "mode") {
            Some("geometric") => {
                self.unknown_keys(t, p, &["mode"]);
                InterferenceConfig::Geometric
            }
            Some("none") => {
                self.unknown_keys(t, p, &["mode"]);
                InterferenceConfig::None
            }
            Some("fixed") => {
                self.unknown_keys(t, p, &["mode", "power"]);
                InterferenceConfig::Fixed { power: self.quantity(t, p, "power", Dimension::Power) }
            }
            Some(other) => {
                self.diags.push(join(p, "mode"), format!("expected \"geometric\", \"fixed\" or \"none\", got \"{other}\""));
                InterferenceConfig::None
            }
            None => {
                self.diags.push(join(p, "mode"), "missing required key");
                InterferenceConfig::None
            }
        }
    }
}

fn point_value(p: Point3) -> Value {
    Value::Array(p.to_array().iter().map(|&c| Value::Float(c)).collect())
}

fn table<const N: usize>(entries: [(&str, Value); N]) -> Value {
    Value::Table(entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

fn interference_value(cfg: InterferenceConfig) -> Value {
    match cfg {
        InterferenceConfig::Geometric => table([("mode", Value::String("geometric".into()))]),
        InterferenceConfig::None => table([("mode", Value::String("none".into()))]),
        InterferenceConfig::Fixed { power } => {
            table([("mode", Value::String("fixed".into())), ("power", Value::Float(power))])
        }
    }
}

/// Canonical TOML for `cfg`: plain SI numbers, every default written out.
/// [`parse_config_str`] reads it back to an equal config.
pub fn to_toml_string(cfg: &ScenarioConfig) -> String {
    let mut root = Table::new();
    root.insert("mode".into(), Value::String(cfg.mode.as_str().into()));
    root.insert("fading".into(), Value::Boolean(cfg.fading));
    root.insert("carrier".into(), table([("f_c", Value::Float(cfg.carrier.f_c))]));
    let r = &cfg.micro.radio;
    root.insert(
        "micro".into(),
        table([
            ("p_t_downlink", Value::Float(r.p_t_downlink)),
            ("p_t_uplink", Value::Float(r.p_t_uplink)),
            ("b_downlink", Value::Float(r.b_downlink)),
            ("b_uplink", Value::Float(r.b_uplink)),
            ("alpha", Value::Float(cfg.micro.path_loss.alpha)),
            ("lambda_exponent", Value::Integer(i64::from(cfg.micro.path_loss.lambda_exponent))),
            ("positions", Value::Array(cfg.micro.positions.iter().map(|&p| point_value(p)).collect())),
            ("serving", Value::Integer(cfg.micro.serving as i64)),
        ]),
    );
    root.insert(
        "macro".into(),
        table([("position", point_value(cfg.macro_bs.position)), ("p_t", Value::Float(cfg.macro_bs.p_t))]),
    );
    let t = &cfg.tiers;
    root.insert(
        "tiers".into(),
        table([
            ("lambda_mac", Value::Float(t.lambda_mac)),
            ("lambda_mic", Value::Float(t.lambda_mic)),
            ("lambda_u", Value::Float(t.lambda_u)),
            ("alpha_mac", Value::Float(t.alpha_mac)),
        ]),
    );
    let device = match &cfg.device {
        DevicePlacement::Fixed(ps) => table([
            ("placement", Value::String("fixed".into())),
            ("positions", Value::Array(ps.iter().map(|&p| point_value(p)).collect())),
        ]),
        DevicePlacement::Disc { radius, height } => table([
            ("placement", Value::String("disc".into())),
            ("radius", Value::Float(*radius)),
            ("height", Value::Float(*height)),
        ]),
    };
    root.insert("device".into(), device);
    if let Some(irs) = &cfg.irs {
        let Value::Table(mut t) = table([
            ("m", Value::Integer(i64::from(irs.m))),
            ("n", Value::Integer(i64::from(irs.n_elem))),
            ("d_x", Value::Float(irs.d_x)),
            ("d_y", Value::Float(irs.d_y)),
            ("a", Value::Float(irs.a)),
            ("g_t", Value::Float(irs.g_t)),
            ("g_r", Value::Float(irs.g_r)),
            ("center", point_value(irs.center)),
        ]) else {
            unreachable!()
        };
        if let Some(n) = irs.normal {
            t.insert("normal".into(), point_value(Point3::from(n)));
        }
        if let Some(v) = irs.theta_t {
            t.insert("theta_t".into(), Value::Float(v));
        }
        if let Some(v) = irs.theta_r {
            t.insert("theta_r".into(), Value::Float(v));
        }
        root.insert("irs".into(), Value::Table(t));
    }
    let noise = match cfg.noise {
        NoiseConfig::Thermal { t0, noise_figure } => table([
            ("mode", Value::String("thermal".into())),
            ("t0", Value::Float(t0)),
            ("noise_figure", Value::Float(noise_figure)),
        ]),
        NoiseConfig::Fixed { power } => {
            table([("mode", Value::String("fixed".into())), ("power", Value::Float(power))])
        }
    };
    root.insert("noise".into(), noise);
    root.insert(
        "interference".into(),
        table([
            ("downlink", interference_value(cfg.interference.downlink)),
            ("uplink", interference_value(cfg.interference.uplink)),
        ]),
    );
    root.insert("payload".into(), table([("data", Value::Integer(cfg.payload.bits() as i64))]));
    let a = &cfg.association;
    root.insert(
        "association".into(),
        table([
            ("region_radius", Value::Float(a.region_radius)),
            ("device_height", Value::Float(a.device_height)),
            ("ordering", Value::String(a.ordering.as_str().into())),
        ]),
    );
    toml::to_string(&root).expect("TOML tables always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
        [carrier]
        f_c = "3 GHz"
        [micro]
        p_t_downlink = "30 dBm"
        p_t_uplink = "23 dBm"
        b_downlink = "10 MHz"
        b_uplink = "5 MHz"
        alpha = 3
        positions = [[0, 0, 10]]
        [macro]
        position = [500, 0, 30]
        p_t = "46 dBm"
        [tiers]
        lambda_mac = "1 /km2"
        lambda_mic = "10 /km2"
        lambda_u = "1000 /km2"
        alpha_mac = 4
        [device]
        positions = [[50, 0, 1.5]]
    "#;

    #[test]
    fn minimal_config_gets_defaults() {
        let cfg = parse_config_str(MINIMAL).unwrap();
        assert_eq!(cfg.mode, Mode::Conventional);
        assert!(cfg.fading);
        assert_eq!(cfg.noise, NoiseConfig::Thermal { t0: 290.0, noise_figure: 9.0 });
        assert_eq!(cfg.interference.downlink, InterferenceConfig::Geometric);
        assert_eq!(cfg.interference.uplink, InterferenceConfig::None);
        assert_eq!(cfg.payload.bits(), 12_000);
        assert_eq!(cfg.micro.radio.p_t_downlink, 1.0);
        assert!((cfg.micro.radio.p_t_uplink - 0.199_526_231_496_887_9).abs() < 1e-15);
        assert_eq!(cfg.tiers.lambda_mic, 1e-5);
        assert_eq!(cfg.micro.path_loss.lambda_exponent, 1);
    }

    #[test]
    fn reflection_coefficient_out_of_range() {
        let text = format!("{MINIMAL}\n[irs]\nm = 10\nn = 10\nd_x = 0.05\nd_y = 0.05\na = 1.5\ncenter = [40, 10, 5]\ntheta_t = 0.1\ntheta_r = 0.2\n");
        match parse_config_str(&text) {
            Err(Error::ConfigInvalid(d)) => {
                assert!(d.mentions("irs.a"), "{d}");
                assert!(d.to_string().contains("[0, 1]"), "{d}");
            }
            other => panic!("expected ConfigInvalid, got {other:?}"),
        }
    }

    #[test]
    fn diagnostics_are_aggregated() {
        let text = MINIMAL.replace("alpha_mac = 4", "alpha_mac = 2").replace("f_c = \"3 GHz\"", "f_c = \"3 dBm\"");
        let text = format!("bogus = 1\n{text}");
        match parse_config_str(&text) {
            Err(Error::ConfigInvalid(d)) => {
                assert!(d.mentions("carrier.f_c"), "{d}");
                assert!(d.mentions("bogus"), "{d}");
            }
            other => panic!("expected ConfigInvalid, got {other:?}"),
        }
        // Unit errors are reported first; invariant checks then run on a clean parse.
        match parse_config_str(&MINIMAL.replace("alpha_mac = 4", "alpha_mac = 2")) {
            Err(Error::ConfigInvalid(d)) => assert!(d.mentions("tiers.alpha_mac"), "{d}"),
            other => panic!("expected ConfigInvalid, got {other:?}"),
        }
    }

    #[test]
    fn missing_sections_reported() {
        match parse_config_str("[carrier]\nf_c = 1e9\n") {
            Err(Error::ConfigInvalid(d)) => {
                for key in ["micro", "macro", "tiers", "device"] {
                    assert!(d.mentions(key), "{key} in {d}");
                }
            }
            other => panic!("expected ConfigInvalid, got {other:?}"),
        }
    }

    #[test]
    fn malformed_toml_is_config_error() {
        assert_eq!(parse_config_str("[carrier\n").unwrap_err().exit_code(), 2);
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = parse_config("/definitely/not/here.toml").unwrap_err();
        assert_eq!(err.exit_code(), 4);
    }
}
