//! Three-band spectral samples.
//!
//! All radiometric quantities (radiance, flux, reflectance) are carried at
//! three fixed wavelengths rather than as colorimetric RGB; band `i` maps
//! directly to display channel `i` at encode time.

use std::ops::{Add, AddAssign, Div, Mul, Sub};

/// The three sampled wavelengths in nanometres (red, green, blue bands).
pub const WAVELENGTHS_NM: [f64; 3] = [700.0, 546.1, 435.8];

/// Index of the band used as the dispersion anchor (546.1 nm).
pub const ANCHOR_BAND: usize = 1;

/// A radiometric quantity sampled at [`WAVELENGTHS_NM`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Spectrum(pub [f64; 3]);

impl Spectrum {
    pub const BLACK: Spectrum = Spectrum([0.0; 3]);

    pub const fn new(r: f64, g: f64, b: f64) -> Spectrum {
        Spectrum([r, g, b])
    }

    /// The same value in every band.
    pub const fn splat(v: f64) -> Spectrum {
        Spectrum([v, v, v])
    }

    pub fn band(self, i: usize) -> f64 {
        self.0[i]
    }

    /// Largest band value; the activity measure for flux thresholds.
    pub fn max_band(self) -> f64 {
        self.0[0].max(self.0[1]).max(self.0[2])
    }

    pub fn mean(self) -> f64 {
        (self.0[0] + self.0[1] + self.0[2]) / 3.0
    }

    pub fn is_finite(self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }

    pub fn is_non_negative(self) -> bool {
        self.0.iter().all(|v| *v >= 0.0)
    }

    /// Clamp negative intermediate values to zero.
    pub fn max0(self) -> Spectrum {
        Spectrum(self.0.map(|v| v.max(0.0)))
    }

    /// Band-wise map.
    pub fn map(self, f: impl Fn(f64) -> f64) -> Spectrum {
        Spectrum(self.0.map(f))
    }
}

impl Add for Spectrum {
    type Output = Spectrum;
    fn add(self, r: Spectrum) -> Spectrum {
        Spectrum([self.0[0] + r.0[0], self.0[1] + r.0[1], self.0[2] + r.0[2]])
    }
}

impl AddAssign for Spectrum {
    fn add_assign(&mut self, r: Spectrum) {
        *self = *self + r;
    }
}

impl Sub for Spectrum {
    type Output = Spectrum;
    fn sub(self, r: Spectrum) -> Spectrum {
        Spectrum([self.0[0] - r.0[0], self.0[1] - r.0[1], self.0[2] - r.0[2]])
    }
}

impl Mul<f64> for Spectrum {
    type Output = Spectrum;
    fn mul(self, s: f64) -> Spectrum {
        Spectrum(self.0.map(|v| v * s))
    }
}

impl Div<f64> for Spectrum {
    type Output = Spectrum;
    fn div(self, s: f64) -> Spectrum {
        Spectrum(self.0.map(|v| v / s))
    }
}

/// Band-wise (pointwise) product, e.g. reflectance × radiance.
impl Mul<Spectrum> for Spectrum {
    type Output = Spectrum;
    fn mul(self, r: Spectrum) -> Spectrum {
        Spectrum([self.0[0] * r.0[0], self.0[1] * r.0[1], self.0[2] * r.0[2]])
    }
}
