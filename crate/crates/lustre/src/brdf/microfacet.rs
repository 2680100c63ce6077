//! Cook–Torrance microfacet specular reflection (1982 model, stated in
//! the modern normalized form).
//!
//! `f = ks · F(o·h) · D(h) · G / (4·cosθi·cosθo)` with a Beckmann facet
//! distribution `D`, the Torrance–Sparrow V-groove attenuation `G`, and
//! a per-band conductor Fresnel factor `F`.

use serde::{Deserialize, Serialize};

use super::fresnel::{fresnel_exact, FresnelParams};
use super::{above_horizon, half_vector, Brdf, COS_EPS};
use crate::math::Vec3;
use crate::spectrum::Spectrum;

/// Cook–Torrance with a Beckmann distribution and conductor Fresnel.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CookTorrance {
    pub ks: f64,
    /// Beckmann RMS slope `m`.
    pub roughness: f64,
    /// Real refractive index at the anchor wavelength.
    pub eta: f64,
    /// Extinction coefficient at the anchor wavelength.
    pub kappa: f64,
}

impl Default for CookTorrance {
    fn default() -> Self {
        CookTorrance {
            ks: 0.8,
            roughness: 0.08,
            eta: 1.6,
            kappa: 0.2,
        }
    }
}

impl CookTorrance {
    /// Beckmann facet distribution at half-vector cosine `ch`.
    ///
    /// `D = exp(−tan²δ/m²) / (π·m²·cos⁴δ)` with `tan²δ = (1−ch²)/ch²`.
    pub fn beckmann(&self, ch: f64) -> f64 {
        let m2 = self.roughness * self.roughness;
        let c2 = ch * ch;
        let tan2 = (1.0 - c2) / c2;
        (-tan2 / m2).exp() / (std::f64::consts::PI * m2 * c2 * c2)
    }

    /// Torrance–Sparrow geometric attenuation.
    fn attenuation(ch: f64, ci: f64, co: f64, oh: f64) -> f64 {
        let masking = 2.0 * ch * co / oh;
        let shadowing = 2.0 * ch * ci / oh;
        masking.min(shadowing).min(1.0)
    }
}

impl Brdf for CookTorrance {
    fn eval(&self, wi: Vec3, wo: Vec3) -> Spectrum {
        if !above_horizon(wi, wo) {
            return Spectrum::BLACK;
        }
        let h = match half_vector(wi, wo) {
            Some(h) if h.z > COS_EPS => h,
            _ => return Spectrum::BLACK,
        };
        let oh = wo.dot(h).max(COS_EPS);
        let d = self.beckmann(h.z);
        let g = Self::attenuation(h.z, wi.z, wo.z, oh);
        let fresnel = fresnel_exact(&FresnelParams::conductor(self.eta, self.kappa), oh);
        fresnel * (self.ks * d * g / (4.0 * wi.z * wo.z))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn dir(theta_deg: f64, phi_deg: f64) -> Vec3 {
        let t = theta_deg.to_radians();
        let p = phi_deg.to_radians();
        Vec3::new(t.sin() * p.cos(), t.sin() * p.sin(), t.cos())
    }

    #[test]
    fn mirror_configuration_matches_angle_form() {
        // θi = θo = 30° in the same plane on opposite sides puts the
        // half vector on the normal. Evaluate that configuration from
        // scratch in angle form and compare against the vector form.
        let m = CookTorrance::default();
        let wi = dir(30.0, 0.0);
        let wo = dir(30.0, 180.0);
        let got = m.eval(wi, wo);

        let delta: f64 = 0.0; // facet angle: h is the normal here
        let mm = 0.08f64;
        let d = (-(delta.tan().powi(2)) / (mm * mm)).exp()
            / (std::f64::consts::PI * mm * mm * delta.cos().powi(4));
        let theta = 30.0f64.to_radians();
        // o·h = cos 30°; both attenuation terms equal 2·cos30/cos30·cos30
        // which exceeds 1, so G = 1.
        let g = 1.0f64;
        let fresnel = fresnel_exact(
            &FresnelParams::conductor(1.6, 0.2),
            theta.cos(),
        );
        let expect = fresnel * (0.8 * d * g / (4.0 * theta.cos() * theta.cos()));
        for b in 0..3 {
            assert_relative_eq!(got.band(b), expect.band(b), max_relative = 1e-12);
        }
    }

    #[test]
    fn beckmann_is_cosine_normalized() {
        // ∫ D(δ)·cosδ dω = 1 over the hemisphere for Beckmann.
        let m = CookTorrance::default();
        let steps = 200_000;
        let mut total = 0.0;
        for k in 0..steps {
            let theta = (k as f64 + 0.5) / steps as f64 * std::f64::consts::FRAC_PI_2;
            let w = std::f64::consts::FRAC_PI_2 / steps as f64;
            total += m.beckmann(theta.cos()) * theta.cos() * theta.sin() * w;
        }
        total *= 2.0 * std::f64::consts::PI;
        assert_relative_eq!(total, 1.0, max_relative = 1e-6);
    }

    #[test]
    fn is_reciprocal() {
        let m = CookTorrance::default();
        let wi = dir(25.0, 30.0);
        let wo = dir(70.0, 200.0);
        let a = m.eval(wi, wo);
        let b = m.eval(wo, wi);
        for band in 0..3 {
            assert_relative_eq!(a.band(band), b.band(band), max_relative = 1e-12);
        }
    }

    #[test]
    fn reflectance_rises_toward_grazing() {
        // The conductor Fresnel factor grows with angle, so the lobe
        // amplitude relative to D·G/(4 ci co) must grow too.
        let m = CookTorrance::default();
        let near = m.eval(dir(5.0, 0.0), dir(5.0, 180.0));
        let far = m.eval(dir(75.0, 0.0), dir(75.0, 180.0));
        // Normalize out the geometry terms to isolate Fresnel growth.
        let gn = |t: f64| {
            let c = t.to_radians().cos();
            0.8 * m.beckmann(1.0) / (4.0 * c * c)
        };
        assert!(far.band(1) / gn(75.0) > near.band(1) / gn(5.0));
    }

    #[test]
    fn dispersion_orders_bands_at_normal_incidence() {
        // κ scales with wavelength, so red reflects most, blue least.
        let m = CookTorrance::default();
        let v = m.eval(dir(20.0, 0.0), dir(20.0, 180.0));
        assert!(v.band(0) > v.band(1));
        assert!(v.band(1) > v.band(2));
    }

    #[test]
    fn zero_below_horizon() {
        let m = CookTorrance::default();
        assert_eq!(m.eval(dir(30.0, 0.0), dir(91.0, 0.0)), Spectrum::BLACK);
        assert_eq!(m.eval(dir(91.0, 0.0), dir(30.0, 0.0)), Spectrum::BLACK);
    }
}
