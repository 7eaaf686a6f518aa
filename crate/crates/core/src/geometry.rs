//! Points, IRS pose, and the incidence angles of the cascaded path.

use serde::Serialize;

use crate::error::{Error, Result};

/// A position in meters.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const ORIGIN: Point3 = Point3 { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn minus(self, other: Point3) -> [f64; 3] {
        [self.x - other.x, self.y - other.y, self.z - other.z]
    }

    pub fn offset(self, v: [f64; 3]) -> Point3 {
        Point3::new(self.x + v[0], self.y + v[1], self.z + v[2])
    }
}

impl From<[f64; 3]> for Point3 {
    fn from(a: [f64; 3]) -> Self {
        Point3::new(a[0], a[1], a[2])
    }
}

pub(crate) fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

/// Euclidean distance in meters.
pub fn distance(a: Point3, b: Point3) -> f64 {
    norm(a.minus(b))
}

/// Surface center plus unit normal. The front half-space is where the
/// normal points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IrsPose {
    center: Point3,
    normal: [f64; 3],
}

impl IrsPose {
    /// Normalizes `normal`; fails on a zero or non-finite vector.
    pub fn new(center: Point3, normal: [f64; 3]) -> Result<Self> {
        let n = norm(normal);
        if !center.is_finite() || !n.is_finite() || n == 0.0 {
            return Err(Error::DegenerateGeometry(format!(
                "IRS normal {normal:?} cannot be normalized"
            )));
        }
        Ok(Self { center, normal: [normal[0] / n, normal[1] / n, normal[2] / n] })
    }

    pub fn center(&self) -> Point3 {
        self.center
    }

    pub fn normal(&self) -> [f64; 3] {
        self.normal
    }

    /// Angle between the normal and `p - center`.
    pub fn angle_to(&self, p: Point3, role: &str) -> Result<f64> {
        let v = p.minus(self.center);
        let len = norm(v);
        if len == 0.0 {
            return Err(Error::DegenerateGeometry(format!("{role} coincides with the IRS center")));
        }
        let cos = dot(v, self.normal) / len;
        if cos <= 0.0 {
            return Err(Error::BehindSurface(format!("{role} at {:?}", p.to_array())));
        }
        // acos of a value clamped into (0, 1]; rounding can push it past 1
        Ok(cos.min(1.0).acos())
    }
}

/// Transmit and receive angles (radians) between the surface normal and the
/// directions to `tx` and `rx`. Both lie in `[0, pi/2)`.
pub fn incidence_angles(pose: &IrsPose, tx: Point3, rx: Point3) -> Result<(f64, f64)> {
    Ok((pose.angle_to(tx, "transmitter")?, pose.angle_to(rx, "receiver")?))
}
