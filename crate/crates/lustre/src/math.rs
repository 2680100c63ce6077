//! Vectors, directions, and local surface frames.
//!
//! Convention used throughout the crate: shading happens in a local frame
//! whose `+z` axis is the surface normal; the tangent (`+x`) is the
//! anisotropy reference axis.

use crate::error::{Error, Result};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

/// Plain 3-component vector of `f64`, the workhorse of all geometry code.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);
    pub const X: Vec3 = Vec3::new(1.0, 0.0, 0.0);
    pub const Y: Vec3 = Vec3::new(0.0, 1.0, 0.0);
    pub const Z: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, rhs: Vec3) -> f64 {
        self.x * rhs.x + self.y * rhs.y + self.z * rhs.z
    }

    pub fn cross(self, rhs: Vec3) -> Vec3 {
        Vec3::new(
            self.y * rhs.z - self.z * rhs.y,
            self.z * rhs.x - self.x * rhs.z,
            self.x * rhs.y - self.y * rhs.x,
        )
    }

    pub fn length_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn length(self) -> f64 {
        self.length_squared().sqrt()
    }

    /// Unit vector in the same direction; `None` for (near-)zero input.
    pub fn normalized(self) -> Option<Vec3> {
        let len = self.length();
        if len < 1e-300 {
            None
        } else {
            Some(self / len)
        }
    }

    /// Component-wise multiplication.
    pub fn mul_elem(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x * rhs.x, self.y * rhs.y, self.z * rhs.z)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Mirror reflection of an *incoming-to-surface* direction `self`
    /// about the normal `n` (both unit length).
    pub fn reflect(self, n: Vec3) -> Vec3 {
        self - n * (2.0 * self.dot(n))
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl AddAssign for Vec3 {
    fn add_assign(&mut self, rhs: Vec3) {
        *self = *self + rhs;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    fn div(self, s: f64) -> Vec3 {
        Vec3::new(self.x / s, self.y / s, self.z / s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// A unit-length direction; construction checks the norm to 1e-9.
///
/// `Direction` dereferences to [`Vec3`] so all vector arithmetic is
/// available without unwrapping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction(Vec3);

impl Direction {
    /// Wrap an already-unit vector, verifying `‖v‖ = 1` within 1e-9.
    pub fn new(v: Vec3) -> Result<Direction> {
        if !v.is_finite() {
            return Err(Error::domain("direction has non-finite components"));
        }
        if (v.length() - 1.0).abs() > 1e-9 {
            return Err(Error::Domain(format!(
                "direction not unit length: |v| = {}",
                v.length()
            )));
        }
        Ok(Direction(v))
    }

    /// Normalize an arbitrary non-zero vector into a direction.
    pub fn from_vec(v: Vec3) -> Result<Direction> {
        v.normalized()
            .map(Direction)
            .ok_or_else(|| Error::domain("cannot normalize zero vector"))
    }

    /// Spherical angles to Cartesian, in a frame whose normal is `+z`:
    /// `z = cos θ`, `x = sin θ cos φ`, `y = sin θ sin φ`.
    ///
    /// `θ ∈ [0, π]`, `φ ∈ [0, 2π)`.
    pub fn from_spherical(theta: f64, phi: f64) -> Result<Direction> {
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::Domain(format!("polar angle out of range: {theta}")));
        }
        if !(0.0..std::f64::consts::TAU).contains(&phi) {
            return Err(Error::Domain(format!(
                "azimuthal angle out of range: {phi}"
            )));
        }
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Ok(Direction(Vec3::new(st * cp, st * sp, ct)))
    }

    /// Inverse of [`Direction::from_spherical`]; returns `(θ, φ)` with
    /// `φ ∈ [0, 2π)`.
    pub fn to_spherical(self) -> (f64, f64) {
        let theta = self.0.z.clamp(-1.0, 1.0).acos();
        let mut phi = self.0.y.atan2(self.0.x);
        if phi < 0.0 {
            phi += std::f64::consts::TAU;
        }
        (theta, phi)
    }

    pub fn vec(self) -> Vec3 {
        self.0
    }
}

impl std::ops::Deref for Direction {
    type Target = Vec3;
    fn deref(&self) -> &Vec3 {
        &self.0
    }
}

/// Solid angle in steradians (non-negative).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SolidAngle(f64);

impl SolidAngle {
    pub fn new(sr: f64) -> Result<SolidAngle> {
        if !sr.is_finite() || sr < 0.0 {
            return Err(Error::Domain(format!("invalid solid angle: {sr}")));
        }
        Ok(SolidAngle(sr))
    }

    pub fn steradians(self) -> f64 {
        self.0
    }
}

/// Solid angle subtended by a surface patch of area `area` at distance
/// `radius`: `dω = dA / r²`.
pub fn solid_angle_of_patch(area: f64, radius: f64) -> Result<SolidAngle> {
    if radius <= 0.0 {
        return Err(Error::domain("patch radius must be positive"));
    }
    if area < 0.0 {
        return Err(Error::domain("patch area must be non-negative"));
    }
    SolidAngle::new(area / (radius * radius))
}

/// Orthonormal right-handed shading frame; `normal` is `+z`, `tangent`
/// is `+x` and serves as the anisotropy reference axis.
#[derive(Debug, Clone, Copy)]
pub struct LocalFrame {
    pub tangent: Vec3,
    pub bitangent: Vec3,
    pub normal: Vec3,
}

impl LocalFrame {
    /// Build a frame around `normal` (unit length), with the tangent
    /// obtained by projecting `tangent_hint` onto the tangent plane.
    ///
    /// When the hint is (near-)parallel to the normal the fallback hints
    /// `+x`, then `+y` are tried in that order, which makes tangent
    /// orientation on implicit surfaces deterministic.
    pub fn from_normal_hint(normal: Vec3, tangent_hint: Vec3) -> LocalFrame {
        for hint in [tangent_hint, Vec3::X, Vec3::Y] {
            let proj = hint - normal * hint.dot(normal);
            if proj.length_squared() > 1e-12 {
                let tangent = proj.normalized().expect("checked non-zero");
                return LocalFrame {
                    tangent,
                    bitangent: normal.cross(tangent),
                    normal,
                };
            }
        }
        unreachable!("+x and +y cannot both be parallel to a unit normal");
    }

    /// Default frame for implicit surfaces: hint `+x`, fallback `+y`.
    pub fn from_normal(normal: Vec3) -> LocalFrame {
        LocalFrame::from_normal_hint(normal, Vec3::X)
    }

    /// World direction into frame-local coordinates.
    pub fn to_local(&self, v: Vec3) -> Vec3 {
        Vec3::new(v.dot(self.tangent), v.dot(self.bitangent), v.dot(self.normal))
    }

    /// Frame-local direction back to world coordinates.
    pub fn to_world(&self, v: Vec3) -> Vec3 {
        self.tangent * v.x + self.bitangent * v.y + self.normal * v.z
    }
}

/// Rotation about an arbitrary axis, precomputed as a 3×3 matrix.
#[derive(Debug, Clone, Copy)]
pub struct Rotation {
    // Row-major rows of the rotation matrix.
    rows: [Vec3; 3],
    inv_rows: [Vec3; 3],
}

impl Rotation {
    pub const IDENTITY: Rotation = Rotation {
        rows: [Vec3::X, Vec3::Y, Vec3::Z],
        inv_rows: [Vec3::X, Vec3::Y, Vec3::Z],
    };

    /// Rodrigues rotation by `angle_deg` degrees about `axis`.
    pub fn axis_angle(axis: Vec3, angle_deg: f64) -> Result<Rotation> {
        let a = axis
            .normalized()
            .ok_or_else(|| Error::domain("rotation axis must be non-zero"))?;
        let (s, c) = angle_deg.to_radians().sin_cos();
        let t = 1.0 - c;
        let rows = [
            Vec3::new(t * a.x * a.x + c, t * a.x * a.y - s * a.z, t * a.x * a.z + s * a.y),
            Vec3::new(t * a.x * a.y + s * a.z, t * a.y * a.y + c, t * a.y * a.z - s * a.x),
            Vec3::new(t * a.x * a.z - s * a.y, t * a.y * a.z + s * a.x, t * a.z * a.z + c),
        ];
        // Inverse of a rotation is its transpose.
        let inv_rows = [
            Vec3::new(rows[0].x, rows[1].x, rows[2].x),
            Vec3::new(rows[0].y, rows[1].y, rows[2].y),
            Vec3::new(rows[0].z, rows[1].z, rows[2].z),
        ];
        Ok(Rotation { rows, inv_rows })
    }

    pub fn apply(&self, v: Vec3) -> Vec3 {
        Vec3::new(self.rows[0].dot(v), self.rows[1].dot(v), self.rows[2].dot(v))
    }

    pub fn apply_inverse(&self, v: Vec3) -> Vec3 {
        Vec3::new(
            self.inv_rows[0].dot(v),
            self.inv_rows[1].dot(v),
            self.inv_rows[2].dot(v),
        )
    }
}

/// Deterministic per-(seed, pixel, sample) RNG stream key.
///
/// Two rounds of the SplitMix64 finalizer over the packed key give a
/// well-distributed 64-bit seed; every pixel sample owns an independent
/// stream, so rendering is bit-identical for any worker count.
pub fn stream_key(seed: u64, pixel_index: u64, sample_index: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
    let a = mix(seed ^ 0x9e3779b97f4a7c15);
    let b = mix(a ^ pixel_index.wrapping_mul(0xd1b54a32d192ed03));
    mix(b ^ sample_index.wrapping_mul(0x8cb92ba72f3d8dd7))
}
