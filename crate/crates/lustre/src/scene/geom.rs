//! Analytic test shapes, rigid transforms, and ray intersections.

use crate::error::{Error, Result};
use crate::math::{Rotation, Vec3};

/// Minimum ray parameter accepted as a hit; rejects self-intersections
/// at the ray origin.
pub const T_MIN: f64 = 1e-6;

/// Sphere-trace controls for the torus (signed-distance stepping).
const SDF_START: f64 = 1e-5;
const SDF_STEPS: usize = 256;
const SDF_TOL: f64 = 1e-7;
const SDF_T_MAX: f64 = 20.0;

/// An implicit surface centered at the object-space origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape {
    Sphere { radius: f64 },
    /// Axis-aligned ellipsoid with the given semi-axes.
    Ellipsoid { semi_axes: Vec3 },
    /// Ring around the object-space `z` axis: distance `major` from
    /// the axis, tube radius `minor`.
    Torus { major: f64, minor: f64 },
}

/// A surface intersection in whatever space the ray was given.
#[derive(Debug, Clone, Copy)]
pub struct SurfaceHit {
    /// Ray parameter (distance along a unit-length direction).
    pub t: f64,
    pub point: Vec3,
    /// Unit outward normal.
    pub normal: Vec3,
}

impl Shape {
    /// Validate geometric parameters.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Domain(msg));
        match *self {
            Shape::Sphere { radius } if radius <= 0.0 => {
                bad(format!("sphere radius must be positive, got {radius}"))
            }
            Shape::Ellipsoid { semi_axes }
                if semi_axes.x <= 0.0 || semi_axes.y <= 0.0 || semi_axes.z <= 0.0 =>
            {
                bad(format!("ellipsoid semi-axes must be positive, got {semi_axes:?}"))
            }
            Shape::Torus { major, minor } if major <= 0.0 || minor <= 0.0 || minor >= major => {
                bad(format!(
                    "torus needs 0 < minor < major, got major {major}, minor {minor}"
                ))
            }
            _ => Ok(()),
        }
    }

    /// Nearest intersection with the ray `origin + t·dir`, `t ≥ T_MIN`.
    /// `dir` must be unit length for `t` to be a distance.
    pub fn intersect(&self, origin: Vec3, dir: Vec3) -> Option<SurfaceHit> {
        match *self {
            Shape::Sphere { radius } => {
                let b = origin.dot(dir);
                let c = origin.dot(origin) - radius * radius;
                let disc = b * b - c;
                if disc < 0.0 {
                    return None;
                }
                let sq = disc.sqrt();
                let t = smallest_valid(-b - sq, -b + sq)?;
                let point = origin + dir * t;
                Some(SurfaceHit {
                    t,
                    point,
                    normal: point.normalized()?,
                })
            }
            Shape::Ellipsoid { semi_axes } => {
                let s = semi_axes;
                let oo = Vec3::new(origin.x / s.x, origin.y / s.y, origin.z / s.z);
                let dd = Vec3::new(dir.x / s.x, dir.y / s.y, dir.z / s.z);
                let a = dd.dot(dd);
                let b = oo.dot(dd);
                let c = oo.dot(oo) - 1.0;
                let disc = b * b - a * c;
                if disc < 0.0 {
                    return None;
                }
                let sq = disc.sqrt();
                let t = smallest_valid((-b - sq) / a, (-b + sq) / a)?;
                let point = origin + dir * t;
                let normal = Vec3::new(
                    point.x / (s.x * s.x),
                    point.y / (s.y * s.y),
                    point.z / (s.z * s.z),
                )
                .normalized()?;
                Some(SurfaceHit { t, point, normal })
            }
            Shape::Torus { major, minor } => {
                let sdf = |p: Vec3| {
                    let q = (p.x * p.x + p.y * p.y).sqrt() - major;
                    (q * q + p.z * p.z).sqrt() - minor
                };
                let mut t = SDF_START;
                for _ in 0..SDF_STEPS {
                    let p = origin + dir * t;
                    let dist = sdf(p);
                    if dist < SDF_TOL {
                        let q = (p.x * p.x + p.y * p.y).sqrt().max(1e-12);
                        let normal = Vec3::new(
                            p.x * (q - major) / q,
                            p.y * (q - major) / q,
                            p.z,
                        )
                        .normalized()?;
                        return Some(SurfaceHit { t, point: p, normal });
                    }
                    t += dist;
                    if t > SDF_T_MAX {
                        return None;
                    }
                }
                None
            }
        }
    }
}

/// Accept the nearer root unless it is below `T_MIN`, then the farther.
fn smallest_valid(t0: f64, t1: f64) -> Option<f64> {
    if t0 >= T_MIN {
        Some(t0)
    } else if t1 >= T_MIN {
        Some(t1)
    } else {
        None
    }
}

/// Rigid placement of an object: rotate in object space, then
/// translate into the world.
#[derive(Debug, Clone, Copy)]
pub struct Transform {
    pub translation: Vec3,
    pub rotation: Rotation,
}

impl Default for Transform {
    fn default() -> Self {
        Transform {
            translation: Vec3::ZERO,
            rotation: Rotation::IDENTITY,
        }
    }
}

impl Transform {
    pub fn identity() -> Transform {
        Transform::default()
    }

    pub fn world_point_to_object(&self, p: Vec3) -> Vec3 {
        self.rotation.apply_inverse(p - self.translation)
    }

    pub fn world_dir_to_object(&self, d: Vec3) -> Vec3 {
        self.rotation.apply_inverse(d)
    }

    pub fn object_point_to_world(&self, p: Vec3) -> Vec3 {
        self.rotation.apply(p) + self.translation
    }

    pub fn object_dir_to_world(&self, d: Vec3) -> Vec3 {
        self.rotation.apply(d)
    }

    /// Intersect a world-space ray with a shape placed by this
    /// transform; the hit is returned in world space. Rigid motion
    /// preserves ray parameters, so `t` needs no rescaling.
    pub fn intersect(&self, shape: &Shape, origin: Vec3, dir: Vec3) -> Option<SurfaceHit> {
        let o = self.world_point_to_object(origin);
        let d = self.world_dir_to_object(dir);
        let hit = shape.intersect(o, d)?;
        Some(SurfaceHit {
            t: hit.t,
            point: self.object_point_to_world(hit.point),
            normal: self.object_dir_to_world(hit.normal),
        })
    }
}
