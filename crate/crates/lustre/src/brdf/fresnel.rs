//! Fresnel reflectance: the exact unpolarized dielectric form and
//! Schlick's rational approximation, plus the per-band conductor curves
//! used by the Cook-Torrance and He-Torrance models.

use crate::spectrum::{Spectrum, ANCHOR_BAND, WAVELENGTHS_NM};

/// Index-of-refraction parameters for Fresnel evaluation.
#[derive(Debug, Clone, Copy)]
pub struct FresnelParams {
    /// Real refractive index, `η ≥ 1`.
    pub eta: f64,
    /// Normal-incidence reflectance per band.
    pub f0: Spectrum,
}

impl FresnelParams {
    /// Dielectric parameters: `f0` follows from `η` alone.
    pub fn dielectric(eta: f64) -> FresnelParams {
        FresnelParams {
            eta,
            f0: Spectrum::splat(dielectric_f0(eta)),
        }
    }

    /// Conductor parameters with wavelength-dependent absorption: the
    /// extinction coefficient scales with each band's wavelength
    /// (`κ_b = κ · λ_b / λ_anchor`), a simple normal-dispersion model
    /// that keeps the anchor band at exactly `κ`.
    pub fn conductor(eta: f64, kappa: f64) -> FresnelParams {
        let f0 = Spectrum(WAVELENGTHS_NM.map(|wl| {
            let kb = kappa.abs() * wl / WAVELENGTHS_NM[ANCHOR_BAND];
            conductor_f0(eta, kb)
        }));
        FresnelParams { eta, f0 }
    }
}

/// Normal-incidence reflectance of a dielectric: `((η−1)/(η+1))²`.
pub fn dielectric_f0(eta: f64) -> f64 {
    let r = (eta - 1.0) / (eta + 1.0);
    r * r
}

/// Normal-incidence reflectance of a conductor:
/// `((η−1)² + κ²) / ((η+1)² + κ²)`.
pub fn conductor_f0(eta: f64, kappa: f64) -> f64 {
    ((eta - 1.0).powi(2) + kappa * kappa) / ((eta + 1.0).powi(2) + kappa * kappa)
}

/// Exact unpolarized Fresnel reflectance of a dielectric in the compact
/// `g`-`c` form (`g² = η² + c² − 1`), which averages the s- and
/// p-polarized powers. `c` is the cosine between the direction and the
/// half vector (equivalently the surface normal for a flat interface).
///
/// `c ≤ 0` returns the grazing limit 1.
pub fn fresnel_exact_scalar(eta: f64, c: f64) -> f64 {
    if c <= 0.0 {
        return 1.0;
    }
    let c = c.min(1.0);
    let g2 = eta * eta + c * c - 1.0;
    if g2 <= 0.0 {
        // Total internal reflection region (only reachable for eta < 1).
        return 1.0;
    }
    let g = g2.sqrt();
    let a = (g - c) / (g + c);
    let b = (c * (g + c) - 1.0) / (c * (g - c) + 1.0);
    (0.5 * a * a * (1.0 + b * b)).clamp(0.0, 1.0)
}

/// Exact Fresnel per band for the given parameters.
///
/// Dielectrics evaluate the `g`-`c` form directly. Conductors reuse the
/// dielectric angular curve affinely remapped so each band starts at its
/// conductor `f0` and reaches 1 at grazing — a bounded approximation
/// that collapses to the exact dielectric form when `κ = 0`.
pub fn fresnel_exact(fp: &FresnelParams, cos_half_angle: f64) -> Spectrum {
    let fe = fresnel_exact_scalar(fp.eta, cos_half_angle);
    let f0d = dielectric_f0(fp.eta);
    let shape = ((fe - f0d) / (1.0 - f0d)).clamp(0.0, 1.0);
    fp.f0.map(|f0b| f0b + (1.0 - f0b) * shape)
}

/// Schlick's approximation `f0 + (1 − f0)(1 − c)⁵` for one band.
pub fn fresnel_schlick_scalar(f0: f64, cos_angle: f64) -> f64 {
    let c = cos_angle.clamp(0.0, 1.0);
    f0 + (1.0 - f0) * (1.0 - c).powi(5)
}

/// Schlick's approximation applied band-wise.
pub fn fresnel_schlick(f0: Spectrum, cos_angle: f64) -> Spectrum {
    f0.map(|b| fresnel_schlick_scalar(b, cos_angle))
}
