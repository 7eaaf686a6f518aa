//! Unit conversion at the I/O boundary. Everything inside the crate is
//! linear SI; decibel forms and prefixed units only appear in config text.

pub fn dbm_to_watt(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

pub fn watt_to_dbm(w: f64) -> f64 {
    10.0 * w.log10() + 30.0
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

/// Physical dimension of a config value; decides which unit suffixes are
/// accepted and what a bare number means.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    /// W; accepts W, mW, uW, kW, dBm, dBW.
    Power,
    /// Hz; accepts Hz, kHz, MHz, GHz.
    Frequency,
    /// m; accepts m, mm, cm, km.
    Length,
    /// rad; accepts rad, deg.
    Angle,
    /// Linear gain; accepts dB, dBi.
    Gain,
    /// Stored in dB (noise figure); a bare number is dB.
    Decibel,
    /// K.
    Temperature,
    /// Per square meter; accepts /m2, /km2.
    Density,
    /// Bits; accepts bit(s), byte(s), B, kbit, Mbit, kB.
    Data,
    /// Plain number, no suffix.
    Dimensionless,
}

impl Dimension {
    pub fn si_unit(self) -> &'static str {
        match self {
            Dimension::Power => "W",
            Dimension::Frequency => "Hz",
            Dimension::Length => "m",
            Dimension::Angle => "rad",
            Dimension::Gain | Dimension::Dimensionless => "1",
            Dimension::Decibel => "dB",
            Dimension::Temperature => "K",
            Dimension::Density => "1/m^2",
            Dimension::Data => "bit",
        }
    }
}

// Division for negative exponents keeps e.g. 10 /km2 at exactly 1e-5.
fn pow10(value: f64, k: i32) -> f64 {
    if k >= 0 {
        value * 10f64.powi(k)
    } else {
        value / 10f64.powi(-k)
    }
}

/// Parses a number with an optional unit suffix into the SI value for
/// `dim`, e.g. `"30 dBm"` as power gives `1.0`.
pub fn parse_quantity(text: &str, dim: Dimension) -> Result<f64, String> {
    let text = text.trim();
    let split = text
        .char_indices()
        .find(|&(i, c)| {
            c.is_alphabetic() && !(matches!(c, 'e' | 'E') && text[i + 1..].starts_with(|d: char| d.is_ascii_digit() || d == '-' || d == '+'))
                || c == '/'
        })
        .map(|(i, _)| i)
        .unwrap_or(text.len());
    let (num, unit) = text.split_at(split);
    let num = num.trim();
    let unit = unit.trim();
    let value: f64 = num.parse().map_err(|_| format!("cannot parse number in `{text}`"))?;
    let scaled = |table: &[(&str, i32)]| -> Result<f64, String> {
        if unit.is_empty() {
            return Ok(value);
        }
        table
            .iter()
            .find(|(u, _)| *u == unit)
            .map(|&(_, k)| pow10(value, k))
            .ok_or_else(|| format!("unit `{unit}` is not valid here (expected {})", dim.si_unit()))
    };
    let out = match dim {
        Dimension::Power => match unit {
            "dBm" => dbm_to_watt(value),
            "dBW" => db_to_linear(value),
            _ => scaled(&[("W", 0), ("mW", -3), ("uW", -6), ("kW", 3)])?,
        },
        Dimension::Frequency => scaled(&[("Hz", 0), ("kHz", 3), ("MHz", 6), ("GHz", 9)])?,
        Dimension::Length => scaled(&[("m", 0), ("mm", -3), ("cm", -2), ("km", 3)])?,
        Dimension::Angle => match unit {
            "deg" => value.to_radians(),
            _ => scaled(&[("rad", 0)])?,
        },
        Dimension::Gain => match unit {
            "dB" | "dBi" => db_to_linear(value),
            _ => scaled(&[])?,
        },
        Dimension::Decibel => scaled(&[("dB", 0)])?,
        Dimension::Temperature => scaled(&[("K", 0)])?,
        Dimension::Density => scaled(&[("/m2", 0), ("/m^2", 0), ("/km2", -6), ("/km^2", -6)])?,
        Dimension::Data => match unit {
            "byte" | "bytes" | "B" => value * 8.0,
            "kB" => value * 8e3,
            _ => scaled(&[("bit", 0), ("bits", 0), ("kbit", 3), ("Mbit", 6)])?,
        },
        Dimension::Dimensionless => scaled(&[])?,
    };
    if !out.is_finite() {
        return Err(format!("`{text}` is not finite"));
    }
    Ok(out)
}
