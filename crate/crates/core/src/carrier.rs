use crate::error::{Error, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarrierConfig {
    /// Carrier frequency in Hz.
    pub f_c: f64,
}

impl CarrierConfig {
    pub fn new(f_c: f64) -> Result<Self> {
        let cfg = Self { f_c };
        wavelength(&cfg)?;
        Ok(cfg)
    }

    pub fn from_wavelength(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidCarrier(format!("wavelength {lambda} m")));
        }
        Ok(Self { f_c: SPEED_OF_LIGHT / lambda })
    }

    pub fn wavelength(&self) -> Result<f64> {
        wavelength(self)
    }
}

/// `c / f_c` in meters.
pub fn wavelength(cfg: &CarrierConfig) -> Result<f64> {
    if !(cfg.f_c > 0.0 && cfg.f_c.is_finite()) {
        return Err(Error::InvalidCarrier(format!("f_c = {} Hz", cfg.f_c)));
    }
    Ok(SPEED_OF_LIGHT / cfg.f_c)
}
