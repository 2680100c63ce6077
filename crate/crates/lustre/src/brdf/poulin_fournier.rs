//! Poulin–Fournier reflection from a surface of parallel microscopic
//! cylinders (1990 model).
//!
//! Light reflecting off a bed of adjacent cylinders is integrated over
//! the visible, lit part of each cylinder's cross-section. A point at
//! angle θ on the circle contributes a cosine-power gloss kernel
//! centered on the in-plane mirror configuration, masked by
//! self-occlusion (facing checks) and by shadowing from the two
//! neighboring cylinders. The integral is normalized by the same
//! kernel integrated unoccluded, so a flat-equivalent configuration
//! reflects `ks`.
//!
//! The cylinder axis is the local `+y`; the cross-section plane is
//! spanned by `x` (across the grooves) and `z`.

use serde::{Deserialize, Serialize};

use super::{above_horizon, half_vector, Brdf, COS_EPS};
use crate::math::Vec3;
use crate::spectrum::Spectrum;

use std::f64::consts::{FRAC_PI_2, PI};

/// Parallel-cylinder gloss model.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PoulinFournier {
    pub ks: f64,
    /// Center-to-center spacing of neighboring cylinders, in cylinder
    /// radii. The default `2.0` is the touching configuration.
    pub spacing: f64,
    /// Cylinder elevation above the base plane, in radii. Inert at the
    /// touching default: neighbor shadowing alone decides visibility
    /// before the base plane ever would.
    pub height: f64,
    /// Gloss exponent of the cross-section kernel.
    pub shininess: f64,
    /// Quadrature node count across the cross-section; forced up to
    /// the nearest odd count of at least three (Simpson's rule).
    pub nodes: usize,
}

impl Default for PoulinFournier {
    fn default() -> Self {
        PoulinFournier {
            ks: 0.8,
            spacing: 2.0,
            height: 4.0,
            shininess: 100.0,
            nodes: 33,
        }
    }
}

impl PoulinFournier {
    fn node_count(&self) -> usize {
        let n = self.nodes.max(3);
        if n % 2 == 0 {
            n + 1
        } else {
            n
        }
    }

    /// `true` when a ray leaving the cylinder surface point at angle
    /// `theta`, traveling in the in-plane direction `psi` (measured
    /// from the surface normal), escapes both neighboring cylinders.
    fn clears_neighbors(&self, theta: f64, psi: f64) -> bool {
        let (px, pz) = (theta.sin(), theta.cos());
        let (dx, dz) = (psi.sin(), psi.cos());
        for center_x in [self.spacing, -self.spacing] {
            let ox = px - center_x;
            let oz = pz;
            let b = ox * dx + oz * dz;
            let cc = ox * ox + oz * oz - 1.0;
            let disc = b * b - cc;
            if disc > 0.0 {
                let t_near = -b - disc.sqrt();
                if t_near > 1e-9 {
                    return false;
                }
            }
        }
        true
    }
}

impl Brdf for PoulinFournier {
    fn eval(&self, wi: Vec3, wo: Vec3) -> Spectrum {
        if !above_horizon(wi, wo) {
            return Spectrum::BLACK;
        }
        let h = match half_vector(wi, wo) {
            Some(h) if h.z > COS_EPS => h,
            _ => return Spectrum::BLACK,
        };

        // Project the half vector into the cross-section plane to get
        // the groove-relative azimuth reference.
        let t_len = (h.x * h.x + h.y * h.y).sqrt();
        let (tpx, tpy) = if t_len > 1e-12 {
            (h.x / t_len, h.y / t_len)
        } else {
            let il = (wi.x * wi.x + wi.y * wi.y).sqrt();
            if il > 1e-12 {
                (wi.x / il, wi.y / il)
            } else {
                (1.0, 0.0)
            }
        };
        let in_plane = |v: Vec3| (v.x * tpx + v.y * tpy).atan2(v.z);
        let theta_mirror = in_plane(h);
        let ang_i = in_plane(wi);
        let ang_o = in_plane(wo);

        let n = self.node_count();
        let hstep = PI / (n - 1) as f64;
        let mut val = 0.0;
        let mut reference = 0.0;
        for k in 0..n {
            let theta = -FRAC_PI_2 + k as f64 * hstep;
            let w = if k == 0 || k == n - 1 {
                1.0
            } else if k % 2 == 1 {
                4.0
            } else {
                2.0
            };
            let kern = (theta - theta_mirror).cos().max(0.0).powf(self.shininess);
            let unoccluded = theta.cos().max(0.0).powf(self.shininess);
            let lit = (theta - ang_i).cos() > 0.0 && (theta - ang_o).cos() > 0.0;
            if lit && self.clears_neighbors(theta, ang_i) && self.clears_neighbors(theta, ang_o) {
                val += w * kern;
            }
            reference += w * unoccluded;
        }
        val *= hstep / 3.0;
        reference *= hstep / 3.0;

        Spectrum::splat(self.ks * (val / reference) / wi.z)
    }
}
