//! Synthetic test volumes mimicking a layered anatomical stack: a
//! hard outer shell (skull analog), a wrinkled mid layer (cortex
//! analog), and a set of nested density blobs whose peak densities
//! straddle the four display thresholds 0.70 / 0.75 / 0.80 / 0.85.
//!
//! All three volumes span the world cube `[-1, 1]³`. The shell and
//! the blob stack carry viewing windows (smooth conical cutaways)
//! facing the default desk camera so interior structure is directly
//! visible; the back sides stay intact, which keeps the outer
//! silhouette a full disk.

use crate::error::{Error, Result};
use crate::math::{stream_key, Vec3};
use crate::volume::grid::VoxelGrid;

/// Minimum resolution that resolves the nested blob bands.
pub const MIN_DIMS: usize = 64;

/// Shell outer radius (world units).
pub const SHELL_OUTER_RADIUS: f64 = 0.92;
/// Shell inner radius.
pub const SHELL_INNER_RADIUS: f64 = 0.81;
/// Width of the smooth density edge on both shell faces.
pub const SHELL_EDGE_WIDTH: f64 = 0.03;
/// Peak shell density.
pub const SHELL_DENSITY: f64 = 0.8;

/// The four density thresholds the blob stack is built around.
pub const BLOB_THRESHOLDS: [f64; 4] = [0.70, 0.75, 0.80, 0.85];

/// Direction from the scene center toward the default desk vantage;
/// the viewing windows open along this axis.
pub fn view_axis() -> Vec3 {
    Vec3::new(0.0, -3.2, 1.4).normalized().expect("fixed axis")
}

/// The three phantom volumes.
#[derive(Debug, Clone)]
pub struct PhantomSet {
    pub shell: VoxelGrid,
    pub cortex: VoxelGrid,
    pub blobs: VoxelGrid,
}

/// One member of the phantom stack.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhantomPart {
    Shell,
    Cortex,
    Blobs,
}

impl PhantomPart {
    pub const ALL: [PhantomPart; 3] = [PhantomPart::Shell, PhantomPart::Cortex, PhantomPart::Blobs];

    pub fn name(self) -> &'static str {
        match self {
            PhantomPart::Shell => "shell",
            PhantomPart::Cortex => "cortex",
            PhantomPart::Blobs => "blobs",
        }
    }

    pub fn from_name(name: &str) -> Result<PhantomPart> {
        let n = name.to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|p| p.name() == n)
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown phantom part '{name}'; valid parts: shell, cortex, blobs"
                ))
            })
    }
}

impl std::fmt::Display for PhantomPart {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Generate all three phantom volumes at `dims³` voxels. Generation
/// is deterministic in `seed` and single-threaded.
pub fn generate_phantom(dims: usize, seed: u64) -> Result<PhantomSet> {
    Ok(PhantomSet {
        shell: generate_part(PhantomPart::Shell, dims, seed)?,
        cortex: generate_part(PhantomPart::Cortex, dims, seed)?,
        blobs: generate_part(PhantomPart::Blobs, dims, seed)?,
    })
}

/// Generate a single phantom volume.
pub fn generate_part(part: PhantomPart, dims: usize, seed: u64) -> Result<VoxelGrid> {
    if dims < MIN_DIMS {
        return Err(Error::domain(format!(
            "phantom volumes need at least {MIN_DIMS} voxels per axis to resolve the nested bands, got {dims}"
        )));
    }
    let mut grid = VoxelGrid::new(dims, dims, dims, 2.0 / dims as f64)?;
    let axis = view_axis();
    for k in 0..dims {
        for j in 0..dims {
            for i in 0..dims {
                let p = grid.voxel_center(i, j, k);
                let value = match part {
                    PhantomPart::Shell => shell_density(p, axis),
                    PhantomPart::Cortex => cortex_density(p, seed),
                    PhantomPart::Blobs => blobs_density(p, axis, seed),
                };
                grid.set(i, j, k, value as f32);
            }
        }
    }
    Ok(grid)
}

/// Radial density profile of the shell away from the viewing window.
pub fn shell_profile(r: f64) -> f64 {
    let outer = sstep((SHELL_OUTER_RADIUS + SHELL_EDGE_WIDTH * 0.5 - r) / SHELL_EDGE_WIDTH);
    let inner = sstep((r - SHELL_INNER_RADIUS + SHELL_EDGE_WIDTH * 0.5) / SHELL_EDGE_WIDTH);
    SHELL_DENSITY * outer * inner
}

/// Radius where the shell profile crosses the given iso level on its
/// outer face — the analytic silhouette radius of a shell render.
pub fn shell_iso_radius(iso: f64) -> Result<f64> {
    if !(0.0 < iso && iso < SHELL_DENSITY) {
        return Err(Error::domain(format!(
            "shell iso level must lie in (0, {SHELL_DENSITY}), got {iso}"
        )));
    }
    // The profile is monotone decreasing across the outer face.
    let mut lo = (SHELL_INNER_RADIUS + SHELL_OUTER_RADIUS) * 0.5; // profile = peak
    let mut hi = SHELL_OUTER_RADIUS + SHELL_EDGE_WIDTH; // profile = 0
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if shell_profile(mid) > iso {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn shell_density(p: Vec3, axis: Vec3) -> f64 {
    let r = p.length();
    let base = shell_profile(r);
    if base <= 0.0 {
        return 0.0;
    }
    // Viewing window: open (density removed) within 50 degrees of the
    // vantage axis, smoothly closing by 58 degrees.
    base * aperture_mask(p, r, axis, 50.0, 8.0)
}

/// 0 inside the cone of `open_deg` about `axis`, 1 beyond
/// `open_deg + width_deg`, smooth in between.
fn aperture_mask(p: Vec3, r: f64, axis: Vec3, open_deg: f64, width_deg: f64) -> f64 {
    if r < 1e-9 {
        return 1.0;
    }
    let ang = (p.dot(axis) / r).clamp(-1.0, 1.0).acos().to_degrees();
    sstep((ang - open_deg) / width_deg)
}

const CORTEX_RADIUS: f64 = 0.68;
const CORTEX_WRINKLE_AMPLITUDE: f64 = 0.04;
const CORTEX_HALF_WIDTH: f64 = 0.045;
const CORTEX_DENSITY: f64 = 0.72;

fn cortex_density(p: Vec3, seed: u64) -> f64 {
    let r = p.length();
    if !(0.40..=0.90).contains(&r) {
        return 0.0;
    }
    let dir = p / r;
    // Two octaves of value noise over direction wrinkle the layer's
    // radius; a finer octave mottles the density itself.
    let wrinkle = 0.65 * value_noise(dir * 3.0, seed, 0x11) + 0.35 * value_noise(dir * 6.1, seed, 0x12);
    let rc = CORTEX_RADIUS + CORTEX_WRINKLE_AMPLITUDE * (2.0 * wrinkle - 1.0);
    let x = (r - rc) / CORTEX_HALF_WIDTH;
    let bump = (-1.5 * x * x).exp();
    let mottle = 0.02 * (value_noise(p * 9.0, seed, 0x13) - 0.5);
    (CORTEX_DENSITY * bump + mottle * bump).clamp(0.0, 1.0)
}

/// (peak density, mid radius, cutaway half-angle in degrees) for the
/// three blob shells, outermost first. The central core (peak 0.90)
/// has no cutaway.
const BLOB_SHELLS: [(f64, f64, f64); 3] = [(0.72, 0.56, 38.0), (0.77, 0.44, 27.0), (0.82, 0.32, 16.0)];
const BLOB_SHELL_REACH: f64 = 0.075;
const BLOB_SHELL_EDGE: f64 = 0.045;
const BLOB_CORE_PEAK: f64 = 0.90;
const BLOB_CUT_SOFTNESS: f64 = 6.0;
/// Core plateau radius (full peak density inside).
const BLOB_CORE_PLATEAU: f64 = 0.14;
/// Width of the graded shoulder carrying density from the peak down
/// to 0.70 — spans ≈ 2.9 voxels at the minimum resolution, keeping a
/// voxel-resolved gap between the 0.85 and 0.70 iso-surfaces.
const BLOB_CORE_SHOULDER: f64 = 0.09;
/// Width of the final falloff from 0.70 to zero.
const BLOB_CORE_SKIRT: f64 = 0.045;

/// Radial density profile of the central core.
fn core_profile(r: f64) -> f64 {
    let shoulder_end = BLOB_CORE_PLATEAU + BLOB_CORE_SHOULDER;
    if r <= BLOB_CORE_PLATEAU {
        BLOB_CORE_PEAK
    } else if r <= shoulder_end {
        let t = (r - BLOB_CORE_PLATEAU) / BLOB_CORE_SHOULDER;
        BLOB_CORE_PEAK - (BLOB_CORE_PEAK - 0.70) * t
    } else {
        0.70 * (1.0 - (r - shoulder_end) / BLOB_CORE_SKIRT).max(0.0)
    }
}

fn blobs_density(p: Vec3, axis: Vec3, seed: u64) -> f64 {
    let r = p.length();
    if r > 0.66 {
        return 0.0;
    }
    // Central core: flat 0.90 plateau, then a deliberately graded
    // shoulder through the banded density range (so every iso level
    // in [0.70, 0.85] is several voxels away from the next at the
    // default resolution — iso containment must survive the lattice),
    // then a steeper skirt to zero.
    let mut d = core_profile(r);
    // Three concentric shell bumps, each carved open toward the
    // vantage so deeper bands are directly visible in an annular
    // window of their own.
    for &(peak, mid, cut_deg) in &BLOB_SHELLS {
        let bump = sstep((BLOB_SHELL_REACH - (r - mid).abs()) / BLOB_SHELL_EDGE);
        if bump > 0.0 {
            d += peak * bump * aperture_mask(p, r, axis, cut_deg, BLOB_CUT_SOFTNESS);
        }
    }
    let noise = 0.005 * (2.0 * value_noise(p * 7.3, seed, 0x21) - 1.0);
    (d + noise).clamp(0.0, 1.0)
}

/// Smoothstep clamped to [0, 1].
fn sstep(x: f64) -> f64 {
    let t = x.clamp(0.0, 1.0);
    t * t * (3.0 - 2.0 * t)
}

/// Seeded trilinearly smoothed lattice noise in [0, 1].
fn value_noise(p: Vec3, seed: u64, tag: u64) -> f64 {
    let base = |v: f64| v.floor() as i64;
    let (i0, j0, k0) = (base(p.x), base(p.y), base(p.z));
    let (fx, fy, fz) = (p.x - i0 as f64, p.y - j0 as f64, p.z - k0 as f64);
    let (wx, wy, wz) = (sstep(fx), sstep(fy), sstep(fz));
    let mut acc = 0.0;
    for dk in 0..2_i64 {
        let az = if dk == 0 { 1.0 - wz } else { wz };
        for dj in 0..2_i64 {
            let ay = if dj == 0 { 1.0 - wy } else { wy };
            for di in 0..2_i64 {
                let ax = if di == 0 { 1.0 - wx } else { wx };
                acc += ax * ay * az * lattice_value(i0 + di, j0 + dj, k0 + dk, seed, tag);
            }
        }
    }
    acc
}

fn lattice_value(i: i64, j: i64, k: i64, seed: u64, tag: u64) -> f64 {
    // Pack the (offset) lattice coordinates into the two stream words.
    let a = ((i + (1 << 20)) as u64) << 42 | ((j + (1 << 20)) as u64);
    let b = (k + (1 << 20)) as u64 ^ (tag << 48);
    stream_key(seed, a, b) as f64 / u64::MAX as f64
}
