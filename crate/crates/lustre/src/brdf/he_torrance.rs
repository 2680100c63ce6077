//! He–Torrance–Sillion–Greenberg wave-optics reflection (1991 model),
//! restricted to its incoherent directional-diffuse term.
//!
//! The surface is a Gaussian random height field with RMS roughness σ
//! and autocorrelation length τ, both expressed in units of the anchor
//! wavelength. The term combines smooth-surface shadowing `S`, a
//! distribution `D` summed over the wave harmonic series, a geometric
//! factor `G`, and a per-band conductor Fresnel factor:
//!
//! `f = ks · F · S(θi)·S(θo) · G · D / (π·cosθi·cosθo)`
//!
//! The coherent (mirror-spike) term scales with `exp(−g)` and is far
//! below double precision for the default roughness (`g ≈ 10²`), so it
//! is omitted.

use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use super::fresnel::{fresnel_exact, FresnelParams};
use super::{above_horizon, Brdf};
use crate::math::Vec3;
use crate::spectrum::Spectrum;

use std::f64::consts::PI;

/// He–Torrance directional-diffuse reflection.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HeTorrance {
    pub ks: f64,
    /// Autocorrelation length τ in units of the anchor wavelength.
    pub tau: f64,
    /// RMS roughness σ in units of the anchor wavelength.
    pub sigma: f64,
    /// Real refractive index at the anchor wavelength.
    pub eta: f64,
    /// Extinction coefficient at the anchor wavelength.
    pub kappa: f64,
}

impl Default for HeTorrance {
    fn default() -> Self {
        HeTorrance {
            ks: 0.8,
            tau: 10.0,
            sigma: 1.0,
            eta: 1.6,
            kappa: 0.2,
        }
    }
}

impl HeTorrance {
    /// Smooth-surface shadowing for a Gaussian height field.
    ///
    /// `S = (1 − erfc(a)/2) / (Λ + 1)` with `a = τ·cot θ / (2σ)` and
    /// `Λ(a) = (e^{−a²}/(a√π) − erfc(a)) / 2`. Approaches 1 at normal
    /// incidence and 0 at grazing.
    pub fn shadowing(&self, cos_theta: f64) -> f64 {
        let st = (1.0 - cos_theta * cos_theta).max(0.0).sqrt();
        if st < 1e-12 {
            return 1.0;
        }
        let cot = cos_theta / st;
        let a = self.tau * cot / (2.0 * self.sigma);
        let lam = 0.5 * ((-a * a).exp() / (a * PI.sqrt()) - erfc(a));
        (1.0 - 0.5 * erfc(a)) / (lam + 1.0)
    }

    /// Harmonic series `Σ_{m≥1} g^m e^{−g}/(m!·m) · exp(−(v_xy·τ)²/(4m))`.
    ///
    /// For `g > 400` the Poisson weights concentrate at `m ≈ g` and the
    /// sum collapses to `(1/g)·exp(−(v_xy·τ)²/(4g))`. Below the switch
    /// the series is summed over at most 399 terms — the calibrated
    /// evaluation scheme this renderer is validated against — so for
    /// `g` within a few standard deviations of the switch (roughly
    /// `g ≳ 330`) part of the Poisson mass is truncated and the value
    /// dips below the ideal series until the asymptote takes over.
    fn harmonic_sum(&self, g: f64, vxy: f64) -> f64 {
        let wt2 = (vxy * self.tau) * (vxy * self.tau);
        if g > 400.0 {
            return (1.0 / g) * (-wt2 / (4.0 * g)).exp();
        }
        let mut sum = 0.0;
        let mut t = g * (-g).exp(); // m = 1 term of g^m e^{−g}/m!
        for m in 1..400 {
            let mf = m as f64;
            sum += t / mf * (-wt2 / (4.0 * mf)).exp();
            t *= g / (mf + 1.0);
            if t / (mf + 1.0) < 1e-18 && mf > g {
                break;
            }
        }
        sum
    }
}

impl Brdf for HeTorrance {
    fn eval(&self, wi: Vec3, wo: Vec3) -> Spectrum {
        if !above_horizon(wi, wo) {
            return Spectrum::BLACK;
        }
        let h = wi + wo;
        let hn = match h.normalized() {
            Some(hn) => hn,
            None => return Spectrum::BLACK,
        };
        let c = wo.dot(hn);

        let sh = self.shadowing(wi.z) * self.shadowing(wo.z);

        // Scattering vector v = k(i + o), wavelengths normalized out.
        let vz = 2.0 * PI * (wi.z + wo.z);
        let vxy = 2.0 * PI * (h.x * h.x + h.y * h.y).sqrt();
        let g = (self.sigma * vz) * (self.sigma * vz);

        let d = (PI * PI * self.tau * self.tau / 4.0) * self.harmonic_sum(g, vxy);
        let vv = vz * vz + vxy * vxy;
        let geo = (vv / (vz * vz)) * (vv / (vz * vz));

        let fresnel = fresnel_exact(&FresnelParams::conductor(self.eta, self.kappa), c);
        fresnel * (self.ks * sh * geo * d / (PI * wi.z * wo.z))
    }
}
