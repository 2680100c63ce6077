//! Regular scalar voxel grids with trilinear and cubic B-spline
//! reconstruction and gradient estimation.
//!
//! A grid of `nx × ny × nz` voxels with uniform spacing `s` occupies
//! the world box `[-nx·s/2, nx·s/2] × … `, centered at the origin, with
//! voxel centers at half-integer offsets. Samples outside the box read
//! as zero density.

use crate::error::{Error, Result};
use crate::math::Vec3;

/// A scalar density volume on a regular grid. Densities live in
/// `[0, 1]`; `x` varies fastest in memory.
#[derive(Debug, Clone, PartialEq)]
pub struct VoxelGrid {
    nx: usize,
    ny: usize,
    nz: usize,
    spacing: f64,
    data: Vec<f32>,
}

impl VoxelGrid {
    /// An all-zero grid. Each axis needs at least 2 voxels; spacing is
    /// world units per voxel.
    pub fn new(nx: usize, ny: usize, nz: usize, spacing: f64) -> Result<VoxelGrid> {
        if nx < 2 || ny < 2 || nz < 2 {
            return Err(Error::domain(format!(
                "voxel grid needs at least 2 voxels per axis, got {nx}x{ny}x{nz}"
            )));
        }
        if !(spacing > 0.0 && spacing.is_finite()) {
            return Err(Error::domain(format!(
                "voxel spacing must be positive and finite, got {spacing}"
            )));
        }
        Ok(VoxelGrid {
            nx,
            ny,
            nz,
            spacing,
            data: vec![0.0; nx * ny * nz],
        })
    }

    /// Wrap an existing density array (`x` fastest). Values must lie
    /// in `[0, 1]`.
    pub fn from_data(nx: usize, ny: usize, nz: usize, spacing: f64, data: Vec<f32>) -> Result<VoxelGrid> {
        let mut grid = VoxelGrid::new(nx, ny, nz, spacing)?;
        if data.len() != nx * ny * nz {
            return Err(Error::DimensionMismatch(format!(
                "expected {} densities for a {nx}x{ny}x{nz} grid, got {}",
                nx * ny * nz,
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::domain(format!(
                "densities must lie in [0, 1], found {bad}"
            )));
        }
        grid.data = data;
        Ok(grid)
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.nx, self.ny, self.nz)
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Re-interpret the grid so its longest axis spans `extent` world
    /// units (the volume stays centered at the origin).
    pub fn with_world_extent(mut self, extent: f64) -> Result<VoxelGrid> {
        let longest = self.nx.max(self.ny).max(self.nz) as f64;
        if !(extent > 0.0 && extent.is_finite()) {
            return Err(Error::domain(format!(
                "world extent must be positive and finite, got {extent}"
            )));
        }
        self.spacing = extent / longest;
        Ok(self)
    }

    /// Half of the world-space box extent per axis.
    pub fn half_extent(&self) -> Vec3 {
        Vec3::new(
            self.nx as f64 * self.spacing * 0.5,
            self.ny as f64 * self.spacing * 0.5,
            self.nz as f64 * self.spacing * 0.5,
        )
    }

    pub fn data(&self) -> &[f32] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> f32 {
        self.data[(k * self.ny + j) * self.nx + i]
    }

    /// Set one voxel; the value is clamped into `[0, 1]`.
    pub fn set(&mut self, i: usize, j: usize, k: usize, value: f32) {
        self.data[(k * self.ny + j) * self.nx + i] = value.clamp(0.0, 1.0);
    }

    /// World position of the center of voxel `(i, j, k)`.
    pub fn voxel_center(&self, i: usize, j: usize, k: usize) -> Vec3 {
        let h = self.half_extent();
        Vec3::new(
            (i as f64 + 0.5) * self.spacing - h.x,
            (j as f64 + 0.5) * self.spacing - h.y,
            (k as f64 + 0.5) * self.spacing - h.z,
        )
    }

    /// `true` when `p` lies inside the grid's world box.
    pub fn contains(&self, p: Vec3) -> bool {
        let h = self.half_extent();
        p.x.abs() <= h.x && p.y.abs() <= h.y && p.z.abs() <= h.z
    }

    /// Continuous voxel coordinates: voxel centers sit at integers.
    fn voxel_coords(&self, p: Vec3) -> (f64, f64, f64) {
        let h = self.half_extent();
        (
            (p.x + h.x) / self.spacing - 0.5,
            (p.y + h.y) / self.spacing - 0.5,
            (p.z + h.z) / self.spacing - 0.5,
        )
    }

    /// Voxel fetch with zero padding outside the array.
    fn fetch(&self, i: i64, j: i64, k: i64) -> f64 {
        if i < 0 || j < 0 || k < 0 || i >= self.nx as i64 || j >= self.ny as i64 || k >= self.nz as i64 {
            return 0.0;
        }
        self.get(i as usize, j as usize, k as usize) as f64
    }

    /// Voxel fetch with indices clamped to the array edge.
    fn fetch_clamped(&self, i: i64, j: i64, k: i64) -> f64 {
        let ic = i.clamp(0, self.nx as i64 - 1) as usize;
        let jc = j.clamp(0, self.ny as i64 - 1) as usize;
        let kc = k.clamp(0, self.nz as i64 - 1) as usize;
        self.get(ic, jc, kc) as f64
    }

    /// Trilinear reconstruction at a world point; zero outside the
    /// volume box.
    pub fn sample(&self, p: Vec3) -> f64 {
        if !self.contains(p) {
            return 0.0;
        }
        let (ux, uy, uz) = self.voxel_coords(p);
        let (i0, fx) = split(ux);
        let (j0, fy) = split(uy);
        let (k0, fz) = split(uz);
        let mut acc = 0.0;
        for dk in 0..2_i64 {
            let wz = if dk == 0 { 1.0 - fz } else { fz };
            for dj in 0..2_i64 {
                let wy = if dj == 0 { 1.0 - fy } else { fy };
                for di in 0..2_i64 {
                    let wx = if di == 0 { 1.0 - fx } else { fx };
                    acc += wx * wy * wz * self.fetch(i0 + di, j0 + dj, k0 + dk);
                }
            }
        }
        acc
    }

    /// Gradient of the trilinear reconstruction by finite differences
    /// with a one-voxel step (world units per world unit). Central
    /// differences in the interior; one-sided at the box boundary.
    pub fn gradient_central(&self, p: Vec3) -> Vec3 {
        let h = self.spacing;
        let axis = |dir: Vec3| {
            let fwd = p + dir * h;
            let back = p - dir * h;
            match (self.contains(fwd), self.contains(back)) {
                (true, true) => (self.sample(fwd) - self.sample(back)) / (2.0 * h),
                (true, false) => (self.sample(fwd) - self.sample(p)) / h,
                (false, true) => (self.sample(p) - self.sample(back)) / h,
                (false, false) => 0.0,
            }
        };
        Vec3::new(axis(Vec3::X), axis(Vec3::Y), axis(Vec3::Z))
    }

    /// Cubic B-spline reconstruction (voxel values as coefficients,
    /// 4×4×4 support, edge-clamped) at a world point.
    pub fn sample_bspline(&self, p: Vec3) -> f64 {
        self.bspline_eval(p, false).0
    }

    /// Analytic gradient of the cubic B-spline reconstruction (world
    /// units per world unit), with edge-clamped coefficients.
    pub fn gradient_bspline(&self, p: Vec3) -> Vec3 {
        self.bspline_eval(p, true).1
    }

    fn bspline_eval(&self, p: Vec3, want_gradient: bool) -> (f64, Vec3) {
        let (ux, uy, uz) = self.voxel_coords(p);
        let (i0, _) = split(ux);
        let (j0, _) = split(uy);
        let (k0, _) = split(uz);
        let mut wxs = [0.0; 4];
        let mut wys = [0.0; 4];
        let mut wzs = [0.0; 4];
        let mut dxs = [0.0; 4];
        let mut dys = [0.0; 4];
        let mut dzs = [0.0; 4];
        for t in 0..4_usize {
            let d = t as i64 - 1;
            wxs[t] = bspline3(ux - (i0 + d) as f64);
            wys[t] = bspline3(uy - (j0 + d) as f64);
            wzs[t] = bspline3(uz - (k0 + d) as f64);
            if want_gradient {
                dxs[t] = bspline3_deriv(ux - (i0 + d) as f64);
                dys[t] = bspline3_deriv(uy - (j0 + d) as f64);
                dzs[t] = bspline3_deriv(uz - (k0 + d) as f64);
            }
        }
        let mut value = 0.0;
        let mut grad = Vec3::ZERO;
        for (tk, (&wz, &dz)) in wzs.iter().zip(&dzs).enumerate() {
            for (tj, (&wy, &dy)) in wys.iter().zip(&dys).enumerate() {
                for (ti, (&wx, &dx)) in wxs.iter().zip(&dxs).enumerate() {
                    let c = self.fetch_clamped(
                        i0 + ti as i64 - 1,
                        j0 + tj as i64 - 1,
                        k0 + tk as i64 - 1,
                    );
                    value += c * wx * wy * wz;
                    if want_gradient {
                        grad.x += c * dx * wy * wz;
                        grad.y += c * wx * dy * wz;
                        grad.z += c * wx * wy * dz;
                    }
                }
            }
        }
        (value, grad / self.spacing)
    }

    /// Resample the grid to `factor`× resolution per axis through the
    /// cubic B-spline reconstruction (an optional smoothing
    /// preprocessing step; densities are re-clamped to `[0, 1]`).
    pub fn upsample_bspline(&self, factor: usize) -> Result<VoxelGrid> {
        if factor < 2 {
            return Err(Error::domain(format!(
                "upsample factor must be at least 2, got {factor}"
            )));
        }
        let (nx, ny, nz) = (self.nx * factor, self.ny * factor, self.nz * factor);
        let mut out = VoxelGrid::new(nx, ny, nz, self.spacing / factor as f64)?;
        for k in 0..nz {
            for j in 0..ny {
                for i in 0..nx {
                    let p = out.voxel_center(i, j, k);
                    out.set(i, j, k, self.sample_bspline(p) as f32);
                }
            }
        }
        Ok(out)
    }

    /// Largest density in the grid.
    pub fn max_value(&self) -> f32 {
        self.data.iter().copied().fold(0.0, f32::max)
    }

    /// Number of voxels with density at least `threshold`.
    pub fn count_at_least(&self, threshold: f32) -> usize {
        self.data.iter().filter(|&&v| v >= threshold).count()
    }
}

/// Integer base and fractional part of a continuous voxel coordinate.
fn split(u: f64) -> (i64, f64) {
    let base = u.floor();
    (base as i64, u - base)
}

/// The centered cubic B-spline basis.
fn bspline3(t: f64) -> f64 {
    let a = t.abs();
    if a < 1.0 {
        (4.0 - 6.0 * a * a + 3.0 * a * a * a) / 6.0
    } else if a < 2.0 {
        let b = 2.0 - a;
        b * b * b / 6.0
    } else {
        0.0
    }
}

/// Derivative of the centered cubic B-spline basis.
fn bspline3_deriv(t: f64) -> f64 {
    let a = t.abs();
    let sign = if t < 0.0 { -1.0 } else { 1.0 };
    if a < 1.0 {
        sign * (-12.0 * a + 9.0 * a * a) / 6.0
    } else if a < 2.0 {
        let b = 2.0 - a;
        sign * -(b * b) / 2.0
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn linear_ramp_grid(n: usize) -> VoxelGrid {
        // v(i, j, k) = i / n: linear in x.
        let mut g = VoxelGrid::new(n, n, n, 1.0).unwrap();
        for k in 0..n {
            for j in 0..n {
                for i in 0..n {
                    g.set(i, j, k, i as f32 / n as f32);
                }
            }
        }
        g
    }

    #[test]
    fn construction_validates() {
        assert!(VoxelGrid::new(1, 4, 4, 1.0).is_err());
        assert!(VoxelGrid::new(4, 4, 4, 0.0).is_err());
        assert!(VoxelGrid::from_data(2, 2, 2, 1.0, vec![0.0; 7]).is_err());
        assert!(VoxelGrid::from_data(2, 2, 2, 1.0, vec![1.5; 8]).is_err());
        assert!(VoxelGrid::from_data(2, 2, 2, 1.0, vec![0.5; 8]).is_ok());
    }

    #[test]
    fn trilinear_reproduces_lattice_values() {
        let mut g = VoxelGrid::new(4, 4, 4, 0.5).unwrap();
        g.set(1, 2, 3, 0.625);
        let p = g.voxel_center(1, 2, 3);
        assert_abs_diff_eq!(g.sample(p), 0.625, epsilon = 1e-12);
    }

    #[test]
    fn trilinear_constant_cell_center() {
        let mut g = VoxelGrid::new(4, 4, 4, 1.0).unwrap();
        for k in 0..4 {
            for j in 0..4 {
                for i in 0..4 {
                    g.set(i, j, k, 0.5);
                }
            }
        }
        // Center of the cell spanned by voxels (1..2)^3.
        let p = (g.voxel_center(1, 1, 1) + g.voxel_center(2, 2, 2)) * 0.5;
        assert_abs_diff_eq!(g.sample(p), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn trilinear_reproduces_linear_ramp() {
        let n = 8;
        let g = linear_ramp_grid(n);
        // Interior probe points away from the zero-padded boundary.
        for &(x, y, z) in &[(0.3, -0.2, 0.1), (-1.0, 0.9, -0.7), (1.3, 1.2, 0.4)] {
            let p = Vec3::new(x, y, z);
            let (ux, _, _) = g.voxel_coords(p);
            let expected = ux.floor() / n as f64 + (ux - ux.floor()) / n as f64;
            assert_abs_diff_eq!(g.sample(p), expected, epsilon = 1e-9);
        }
    }

    #[test]
    fn sample_outside_box_is_zero() {
        let g = linear_ramp_grid(4);
        assert_eq!(g.sample(Vec3::new(10.0, 0.0, 0.0)), 0.0);
        assert_eq!(g.sample(Vec3::new(0.0, -3.0, 0.0)), 0.0);
    }

    #[test]
    fn central_gradient_of_constant_field_is_zero() {
        let mut g = VoxelGrid::new(6, 6, 6, 1.0).unwrap();
        for k in 0..6 {
            for j in 0..6 {
                for i in 0..6 {
                    g.set(i, j, k, 0.4);
                }
            }
        }
        let grad = g.gradient_central(Vec3::new(0.2, -0.3, 0.1));
        assert!(grad.length() < 1e-12);
    }

    #[test]
    fn central_gradient_of_linear_ramp() {
        let n = 10;
        let g = linear_ramp_grid(n);
        // Slope is (1/n) per voxel = (1/n)/spacing per world unit.
        let grad = g.gradient_central(Vec3::new(0.2, 0.4, -0.6));
        assert_abs_diff_eq!(grad.x, 1.0 / n as f64, epsilon = 1e-6);
        assert_abs_diff_eq!(grad.y, 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(grad.z, 0.0, epsilon = 1e-9);
    }

    #[test]
    fn central_gradient_antiparallel_to_radius_on_blob() {
        // Radially symmetric smooth blob: gradient points inward
        // (density decreases outward) within 2 degrees at half-width.
        let n = 32;
        let mut g = VoxelGrid::new(n, n, n, 2.0 / n as f64).unwrap();
        let width = 0.5;
        for k in 0..n {
            for j in 0..n {
                for i in 0..n {
                    let p = g.voxel_center(i, j, k);
                    let r2 = p.length_squared();
                    g.set(i, j, k, (0.9 * (-r2 / (width * width)).exp()) as f32);
                }
            }
        }
        for &dir in &[
            Vec3::new(1.0, 0.3, -0.2),
            Vec3::new(-0.5, 1.0, 0.8),
            Vec3::new(0.2, -0.7, 1.0),
        ] {
            let p = dir.normalized().unwrap() * width;
            let grad = g.gradient_central(p);
            let inward = (Vec3::ZERO - p).normalized().unwrap();
            let cos = grad.normalized().unwrap().dot(inward);
            assert!(
                cos > (2.0_f64).to_radians().cos(),
                "gradient off-radial: cos = {cos}"
            );
        }
    }

    #[test]
    fn bspline_constant_field() {
        let mut g = VoxelGrid::new(6, 6, 6, 1.0).unwrap();
        for k in 0..6 {
            for j in 0..6 {
                for i in 0..6 {
                    g.set(i, j, k, 0.7);
                }
            }
        }
        let p = Vec3::new(0.3, -0.4, 0.2);
        // 0.7 is not exact in f32; compare against its stored value.
        assert_abs_diff_eq!(g.sample_bspline(p), 0.7_f32 as f64, epsilon = 1e-12);
        assert!(g.gradient_bspline(p).length() < 1e-12);
    }

    #[test]
    fn bspline_reproduces_linear_ramp_slope() {
        let n = 12;
        let g = linear_ramp_grid(n);
        let grad = g.gradient_bspline(Vec3::new(0.3, 0.1, -0.2));
        // Tolerance reflects the f32 quantization of the stored ramp.
        assert_abs_diff_eq!(grad.x, 1.0 / n as f64, epsilon = 1e-6);
        assert_abs_diff_eq!(grad.y, 0.0, epsilon = 1e-6);
        assert_abs_diff_eq!(grad.z, 0.0, epsilon = 1e-6);
    }

    #[test]
    fn bspline_quadratic_derivative() {
        // v = (x/n)^2 along x: the B-spline reconstruction of a
        // quadratic differs from it by a constant, so the derivative
        // matches the analytic 2x/n^2 at interior points.
        let n = 16;
        let mut g = VoxelGrid::new(n, n, n, 1.0).unwrap();
        for k in 0..n {
            for j in 0..n {
                for i in 0..n {
                    let x = i as f32 / n as f32;
                    g.set(i, j, k, x * x);
                }
            }
        }
        for &wx in &[-2.0, 0.0, 1.5, 3.0] {
            let p = Vec3::new(wx, 0.5, -0.5);
            let (ux, _, _) = g.voxel_coords(p);
            let expected = 2.0 * ux / (n as f64 * n as f64);
            assert_abs_diff_eq!(g.gradient_bspline(p).x, expected, epsilon = 1e-6);
        }
    }

    #[test]
    fn bspline_basis_partition_of_unity() {
        for &t in &[0.0, 0.25, 0.5, 0.9] {
            let sum: f64 = (-2..3).map(|i| bspline3(t - i as f64)).sum();
            assert_abs_diff_eq!(sum, 1.0, epsilon = 1e-12);
            let dsum: f64 = (-2..3).map(|i| bspline3_deriv(t - i as f64)).sum();
            assert_abs_diff_eq!(dsum, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn upsample_preserves_smooth_content() {
        let n = 8;
        let mut g = VoxelGrid::new(n, n, n, 2.0 / n as f64).unwrap();
        for k in 0..n {
            for j in 0..n {
                for i in 0..n {
                    let p = g.voxel_center(i, j, k);
                    g.set(i, j, k, (0.5 + 0.3 * (p.x * 1.5).sin()) as f32);
                }
            }
        }
        let up = g.upsample_bspline(2).unwrap();
        assert_eq!(up.dims(), (16, 16, 16));
        assert_abs_diff_eq!(up.half_extent().x, g.half_extent().x, epsilon = 1e-12);
        // Interior agreement between the two reconstructions.
        let p = Vec3::new(0.2, -0.1, 0.3);
        assert!((up.sample(p) - g.sample_bspline(p)).abs() < 0.02);
        assert!(g.upsample_bspline(1).is_err());
    }

    #[test]
    fn world_extent_rescale() {
        let g = VoxelGrid::new(10, 10, 10, 1.0)
            .unwrap()
            .with_world_extent(2.0)
            .unwrap();
        assert_abs_diff_eq!(g.spacing(), 0.2, epsilon = 1e-12);
        assert_abs_diff_eq!(g.half_extent().x, 1.0, epsilon = 1e-12);
    }
}
