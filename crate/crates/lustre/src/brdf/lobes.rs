//! Closed-form specular lobes: Phong, Schlick–Lewis, Lafortune, Ward,
//! Ashikhmin–Shirley, and Strauss.
//!
//! Parameter defaults are the fixed study values used throughout the
//! flux-overlap tournament; every field can be overridden through scene
//! JSON. All evaluations take unit directions in the local shading
//! frame and return the specular term only.

use serde::{Deserialize, Serialize};

use super::{above_horizon, half_vector, Brdf, COS_EPS};
use crate::math::Vec3;
use crate::spectrum::Spectrum;

/// Mirror of `v` about the local normal (`+z`).
fn mirror(v: Vec3) -> Vec3 {
    Vec3::new(-v.x, -v.y, v.z)
}

// ---------------------------------------------------------------------
// Phong
// ---------------------------------------------------------------------

/// Classic cosine-power lobe around the mirror direction.
///
/// `f = ks · max(0, R·V)^n` with `R` the mirror of the light direction.
/// Not normalized: total reflected energy varies with `n`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Phong {
    pub ks: f64,
    pub exponent: f64,
}

impl Default for Phong {
    fn default() -> Self {
        Phong {
            ks: 0.8,
            exponent: 10.0,
        }
    }
}

impl Brdf for Phong {
    fn eval(&self, wi: Vec3, wo: Vec3) -> Spectrum {
        if !above_horizon(wi, wo) {
            return Spectrum::BLACK;
        }
        let t = mirror(wi).dot(wo).max(0.0);
        Spectrum::splat(self.ks * t.powf(self.exponent))
    }
}

// ---------------------------------------------------------------------
// Schlick–Lewis
// ---------------------------------------------------------------------

/// Schlick's rational lobe approximation with Lewis's energy
/// normalization.
///
/// `f = ks · N(n) · t / (n − (n−1)·t)` where `t = max(0, R·V)` and
/// `N(n)` scales the lobe so its cosine-weighted hemisphere integral at
/// normal incidence equals `ks` exactly.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SchlickLewis {
    pub ks: f64,
    pub exponent: f64,
}

impl Default for SchlickLewis {
    fn default() -> Self {
        SchlickLewis {
            ks: 0.8,
            exponent: 10.0,
        }
    }
}

impl SchlickLewis {
    /// `∫₀¹ μ² / (n − (n−1)μ) dμ`, the cosine-weighted integral of the
    /// rational lobe over the hemisphere divided by 2π.
    ///
    /// Closed form: with `a = n`, `b = n−1`,
    /// `(a²·ln(a/(a−b)) − a·b − b²/2) / b³`; the rational kernel
    /// degenerates to `μ²/n` as `n → 1`, where the integral is `1/(3n)`.
    pub fn kernel_integral(n: f64) -> f64 {
        let b = n - 1.0;
        if b.abs() < 1e-9 {
            return 1.0 / (3.0 * n);
        }
        let a = n;
        (a * a * (a / (a - b)).ln() - a * b - b * b / 2.0) / (b * b * b)
    }

    /// Normalization `N(n) = 1 / (2π · kernel_integral(n))`.
    pub fn normalization(n: f64) -> f64 {
        1.0 / (2.0 * std::f64::consts::PI * Self::kernel_integral(n))
    }
}

impl Brdf for SchlickLewis {
    fn eval(&self, wi: Vec3, wo: Vec3) -> Spectrum {
        if !above_horizon(wi, wo) {
            return Spectrum::BLACK;
        }
        let t = mirror(wi).dot(wo).max(0.0);
        let n = self.exponent;
        let lobe = t / (n - (n - 1.0) * t);
        Spectrum::splat(self.ks * Self::normalization(n) * lobe)
    }
}

// ---------------------------------------------------------------------
// Lafortune
// ---------------------------------------------------------------------

/// Lafortune's generalized cosine lobe with an axis-scaled dot product.
///
/// `f = max(0, cx·ix·ox + cy·iy·oy + cz·iz·oz)^n`; the default
/// `(−1, −1, 0.95)` is a slightly squashed retro-mirror lobe.
/// Reciprocal by construction (symmetric in `wi`, `wo`).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Lafortune {
    pub cx: f64,
    pub cy: f64,
    pub cz: f64,
    pub exponent: f64,
}

impl Default for Lafortune {
    fn default() -> Self {
        Lafortune {
            cx: -1.0,
            cy: -1.0,
            cz: 0.95,
            exponent: 20.0,
        }
    }
}

impl Brdf for Lafortune {
    fn eval(&self, wi: Vec3, wo: Vec3) -> Spectrum {
        if !above_horizon(wi, wo) {
            return Spectrum::BLACK;
        }
        let t = (self.cx * wi.x * wo.x + self.cy * wi.y * wo.y + self.cz * wi.z * wo.z).max(0.0);
        Spectrum::splat(t.powf(self.exponent))
    }
}

// ---------------------------------------------------------------------
// Ward
// ---------------------------------------------------------------------

/// Ward's elliptical-Gaussian anisotropic lobe (original 1992 form).
///
/// `f = ks · exp(−[(hx/αx)² + (hy/αy)²] / hz²) / (4π·αx·αy·√(ci·co))`
/// with `h` the unnormalized-direction half vector. The default
/// `αx ≠ αy` makes a strongly anisotropic brush along `y`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Ward {
    pub ks: f64,
    #[serde(alias = "roughness_x")]
    pub alpha_x: f64,
    #[serde(alias = "roughness_y")]
    pub alpha_y: f64,
}

impl Default for Ward {
    fn default() -> Self {
        Ward {
            ks: 0.05,
            alpha_x: 0.05,
            alpha_y: 0.3,
        }
    }
}

impl Brdf for Ward {
    fn eval(&self, wi: Vec3, wo: Vec3) -> Spectrum {
        if !above_horizon(wi, wo) {
            return Spectrum::BLACK;
        }
        let h = match half_vector(wi, wo) {
            Some(h) if h.z > COS_EPS => h,
            _ => return Spectrum::BLACK,
        };
        let ex = h.x / self.alpha_x;
        let ey = h.y / self.alpha_y;
        let expo = -(ex * ex + ey * ey) / (h.z * h.z);
        let denom = 4.0
            * std::f64::consts::PI
            * self.alpha_x
            * self.alpha_y
            * (wi.z * wo.z).sqrt();
        Spectrum::splat(self.ks * expo.exp() / denom)
    }
}

// ---------------------------------------------------------------------
// Ashikhmin–Shirley
// ---------------------------------------------------------------------

/// Ashikhmin–Shirley anisotropic specular lobe (2000).
///
/// `f = √((nu+1)(nv+1))/(8π) · hz^e / ((h·o)·max(ci,co)) · F(h·o)` with
/// `e = (nu·hx² + nv·hy²)/(1 − hz²)` and a Schlick Fresnel factor on
/// the half-angle cosine. The default `nu ≪ nv` stretches the lobe
/// along `x` (perpendicular to Ward's default brush).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Ashikhmin {
    pub nu: f64,
    pub nv: f64,
    /// Normal-incidence specular reflectance feeding Schlick's factor.
    pub rs: f64,
}

impl Default for Ashikhmin {
    fn default() -> Self {
        Ashikhmin {
            nu: 10.0,
            nv: 1000.0,
            rs: 0.05,
        }
    }
}

impl Brdf for Ashikhmin {
    fn eval(&self, wi: Vec3, wo: Vec3) -> Spectrum {
        if !above_horizon(wi, wo) {
            return Spectrum::BLACK;
        }
        let h = match half_vector(wi, wo) {
            Some(h) if h.z > COS_EPS => h,
            _ => return Spectrum::BLACK,
        };
        let sin2 = 1.0 - h.z * h.z;
        let e = if sin2 < 1e-12 {
            0.0
        } else {
            (self.nu * h.x * h.x + self.nv * h.y * h.y) / sin2
        };
        let hv = h.dot(wo).max(COS_EPS);
        let norm = ((self.nu + 1.0) * (self.nv + 1.0)).sqrt() / (8.0 * std::f64::consts::PI);
        let geom = h.z.powf(e) / (hv * wi.z.max(wo.z));
        let fres = self.rs + (1.0 - self.rs) * (1.0 - hv).powi(5);
        Spectrum::splat(norm * geom * fres)
    }
}

// ---------------------------------------------------------------------
// Strauss
// ---------------------------------------------------------------------

/// Strauss's designer shading model (1990), specular part.
///
/// A cosine-power lobe whose amplitude is boosted near grazing by an
/// empirical reflectivity `rj = min(1, rn + (rn + kj)·j)`, where `j`
/// combines empirical angle functions `F` and `G` with the magic
/// constants `kf = 1.12`, `kg = 1.01`, `kj = 0.1` from the original
/// formulation. Dividing the result by `cos θi` (the model shades with
/// unweighted intensities) breaks Helmholtz reciprocity by design.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Strauss {
    /// Smoothness in [0, 1); sets the lobe exponent `3/(1−s)`.
    pub smoothness: f64,
    /// Metalness in [0, 1]; inert for the white study surface.
    pub metalness: f64,
    /// Base specular reflectivity at normal incidence.
    pub rn: f64,
}

impl Default for Strauss {
    fn default() -> Self {
        Strauss {
            smoothness: 0.75,
            metalness: 0.5,
            rn: 0.5,
        }
    }
}

impl Strauss {
    const KF: f64 = 1.12;
    const KG: f64 = 1.01;
    const KJ: f64 = 0.1;

    /// Empirical Fresnel-like ramp on the normalized angle `x ∈ [0,1]`.
    fn fresnel_ramp(x: f64) -> f64 {
        let kf = Self::KF;
        let num = 1.0 / ((x - kf) * (x - kf)) - 1.0 / (kf * kf);
        let den = 1.0 / ((1.0 - kf) * (1.0 - kf)) - 1.0 / (kf * kf);
        num / den
    }

    /// Empirical geometric-attenuation ramp on `x ∈ [0,1]`.
    fn geometry_ramp(x: f64) -> f64 {
        let kg = Self::KG;
        let num = 1.0 / ((1.0 - kg) * (1.0 - kg)) - 1.0 / ((x - kg) * (x - kg));
        let den = 1.0 / ((1.0 - kg) * (1.0 - kg)) - 1.0 / (kg * kg);
        num / den
    }

    /// Angle normalized to [0, 1] over the quarter turn.
    fn theta_hat(c: f64) -> f64 {
        c.min(1.0).acos() / std::f64::consts::FRAC_PI_2
    }
}

impl Brdf for Strauss {
    fn eval(&self, wi: Vec3, wo: Vec3) -> Spectrum {
        if !above_horizon(wi, wo) {
            return Spectrum::BLACK;
        }
        let h_exp = 3.0 / (1.0 - self.smoothness);
        let ti = Self::theta_hat(wi.z);
        let tr = Self::theta_hat(wo.z);
        let j = Self::fresnel_ramp(ti) * Self::geometry_ramp(ti) * Self::geometry_ramp(tr);
        let rj = (self.rn + (self.rn + Self::KJ) * j).min(1.0);
        let t = mirror(wi).dot(wo).max(0.0);
        Spectrum::splat(t.powf(h_exp) * rj / wi.z)
    }
}
