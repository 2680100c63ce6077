//! The flux-overlap error between two per-pixel flux lattices.

use crate::error::{Error, Result};
use crate::img::Image;

/// Default activity threshold: flux at or below this is treated as
/// undetectable and excluded from the comparison.
pub const DEFAULT_THRESHOLD: f64 = 1e-4;

/// Outcome of one flux-overlap comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapResult {
    /// The overlap error: `min(excess_a, excess_b)`.
    pub error: f64,
    /// Active pixels (flux above threshold) in the first lattice.
    pub area_a: usize,
    /// Active pixels in the second lattice.
    pub area_b: usize,
    /// Flux of `a` unmatched by `b`, per active pixel of `a`.
    pub excess_a: f64,
    /// Flux of `b` unmatched by `a`, per active pixel of `b`.
    pub excess_b: f64,
    /// `true` when a lattice had no active pixels at all, which
    /// defines the error as zero.
    pub degenerate: bool,
}

/// Flux-overlap error between two scalar lattices of equal length.
///
/// A pixel is *active* when its flux strictly exceeds `threshold`.
/// Where both are active, the brighter side is charged the
/// difference; where only one is active, that side is charged its
/// full flux. Each side's charge is divided by its own active area,
/// and the error is the smaller of the two normalized charges —
/// exactly commutative, and zero whenever either mask is empty.
pub fn scalar_flux_overlap(a: &[f32], b: &[f32], threshold: f64) -> Result<OverlapResult> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "flux lattices differ in size: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    if !threshold.is_finite() || threshold < 0.0 {
        return Err(Error::Domain(format!(
            "activity threshold must be finite and non-negative, got {threshold}"
        )));
    }
    let mut area_a = 0usize;
    let mut area_b = 0usize;
    let mut charge_a = 0.0f64; // flux of a unmatched by b
    let mut charge_b = 0.0f64;
    for (&va, &vb) in a.iter().zip(b) {
        let (va, vb) = (va as f64, vb as f64);
        let act_a = va > threshold;
        let act_b = vb > threshold;
        area_a += act_a as usize;
        area_b += act_b as usize;
        match (act_a, act_b) {
            (true, true) => {
                if va > vb {
                    charge_a += va - vb;
                } else if vb > va {
                    charge_b += vb - va;
                }
            }
            (true, false) => charge_a += va,
            (false, true) => charge_b += vb,
            (false, false) => {}
        }
    }
    if area_a == 0 || area_b == 0 {
        return Ok(OverlapResult {
            error: 0.0,
            area_a,
            area_b,
            excess_a: 0.0,
            excess_b: 0.0,
            degenerate: true,
        });
    }
    let excess_a = charge_a / area_a as f64;
    let excess_b = charge_b / area_b as f64;
    Ok(OverlapResult {
        error: excess_a.min(excess_b),
        area_a,
        area_b,
        excess_a,
        excess_b,
        degenerate: false,
    })
}

/// Flux-overlap error between two RGB flux lattices, compared on the
/// per-pixel largest band.
pub fn flux_overlap(a: &Image, b: &Image, threshold: f64) -> Result<OverlapResult> {
    if a.width() != b.width() || a.height() != b.height() {
        return Err(Error::DimensionMismatch(format!(
            "flux lattices differ in shape: {}x{} vs {}x{}",
            a.width(),
            a.height(),
            b.width(),
            b.height()
        )));
    }
    scalar_flux_overlap(&a.max_channel(), &b.max_channel(), threshold)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn img(w: usize, h: usize, values: &[f32]) -> Image {
        Image::from_data(w, h, values.iter().map(|&v| [v, v, v]).collect()).unwrap()
    }

    #[test]
    fn two_pixel_disjoint_masks() {
        // A active only in pixel 0, B only in pixel 1, threshold 0.1:
        // each side's whole flux is unmatched; areas are 1, so the
        // error is min(0.5, 0.5) = 0.5.
        let r = scalar_flux_overlap(&[0.5, 0.0], &[0.0, 0.5], 0.1).unwrap();
        assert_eq!(r.error, 0.5);
        assert_eq!((r.area_a, r.area_b), (1, 1));
        assert!(!r.degenerate);
    }

    #[test]
    fn empty_mask_is_degenerate_zero() {
        // B has flux 0.3 but A never crosses the threshold: no basis
        // for comparison, error defined as zero.
        let r = scalar_flux_overlap(&[0.5], &[0.3], 0.4).unwrap();
        assert_eq!(r.error, 0.0);
        assert!(r.degenerate);
        assert_eq!((r.area_a, r.area_b), (1, 0));
    }

    #[test]
    fn identical_lattices_score_zero() {
        let a = [0.5f32, 0.2, 0.0, 0.7];
        let r = scalar_flux_overlap(&a, &a, 0.1).unwrap();
        assert_eq!(r.error, 0.0);
        assert!(!r.degenerate);
    }

    #[test]
    fn one_sided_brightness_scores_zero() {
        // B is A dimmed within the shared mask: B has no unmatched
        // flux anywhere, so the min is exactly zero even though A has
        // plenty of excess.
        let a = [0.5f32, 0.6, 0.7];
        let b = [0.4f32, 0.5, 0.6];
        let r = scalar_flux_overlap(&a, &b, 0.1).unwrap();
        assert_eq!(r.error, 0.0);
        assert!(r.excess_a > 0.0);
        assert_eq!(r.excess_b, 0.0);
    }

    #[test]
    fn is_exactly_commutative() {
        let a = [0.5f32, 0.0, 0.3, 0.02, 0.8, 0.11];
        let b = [0.1f32, 0.4, 0.3, 0.6, 0.0, 0.09];
        let ab = scalar_flux_overlap(&a, &b, 0.05).unwrap();
        let ba = scalar_flux_overlap(&b, &a, 0.05).unwrap();
        assert_eq!(ab.error, ba.error);
        assert_eq!(ab.excess_a, ba.excess_b);
        assert_eq!(ab.area_a, ba.area_b);
    }

    #[test]
    fn hand_traced_mixed_case() {
        // threshold 0.1
        // idx: a      b      masks      charge
        // 0    0.5    0.2    both, a>b  a += 0.3
        // 1    0.15   0.3    both, b>a  b += 0.15
        // 2    0.4    0.05   a only     a += 0.4
        // 3    0.08   0.5    b only     b += 0.5
        // 4    0.05   0.09   neither    —
        // areas: a=3, b=3; excess_a = 0.7/3, excess_b = 0.65/3
        let r = scalar_flux_overlap(
            &[0.5, 0.15, 0.4, 0.08, 0.05],
            &[0.2, 0.3, 0.05, 0.5, 0.09],
            0.1,
        )
        .unwrap();
        let ea = (0.5f32 as f64 - 0.2f32 as f64) + 0.4f32 as f64;
        let eb = (0.3f32 as f64 - 0.15f32 as f64) + 0.5f32 as f64;
        assert!((r.excess_a - ea / 3.0).abs() < 1e-12);
        assert!((r.excess_b - eb / 3.0).abs() < 1e-12);
        assert_eq!(r.error, r.excess_b.min(r.excess_a));
    }

    #[test]
    fn threshold_boundary_is_strict() {
        // Flux exactly at the threshold is inactive (0.25 is exact in
        // both f32 and f64, so the comparison really is at equality).
        let r = scalar_flux_overlap(&[0.25], &[0.5], 0.25).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.area_a, 0);
        assert_eq!(r.area_b, 1);
    }

    #[test]
    fn image_comparison_uses_max_band() {
        // Activity lives in different bands per pixel; comparing any
        // single band would be degenerate, the per-pixel max is not.
        let a = Image::from_data(2, 1, vec![[0.0, 0.5, 0.0], [0.0, 0.0, 0.05]]).unwrap();
        let b = Image::from_data(2, 1, vec![[0.2, 0.0, 0.0], [0.3, 0.0, 0.0]]).unwrap();
        let r = flux_overlap(&a, &b, 0.1).unwrap();
        // max bands: a = [0.5, 0.05], b = [0.2, 0.3]. Pixel 0: both
        // active, a charged 0.3. Pixel 1: only b active, charged 0.3.
        // excess_a = 0.3/1, excess_b = 0.3/2 → error 0.15.
        assert!(!r.degenerate);
        assert!((r.error - 0.15).abs() < 1e-7, "error {}", r.error);
        assert!((r.excess_a - 0.3).abs() < 1e-7);
    }

    #[test]
    fn mismatched_sizes_are_rejected() {
        assert!(scalar_flux_overlap(&[0.1, 0.2], &[0.1], 0.1).is_err());
        let a = img(2, 1, &[0.1, 0.2]);
        let b = img(1, 2, &[0.1, 0.2]);
        assert!(flux_overlap(&a, &b, 0.1).is_err());
    }

    #[test]
    fn negative_threshold_is_rejected() {
        assert!(scalar_flux_overlap(&[0.1], &[0.1], -0.5).is_err());
        assert!(scalar_flux_overlap(&[0.1], &[0.1], f64::NAN).is_err());
    }
}
