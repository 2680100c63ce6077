//! Multi-object volume ray casting: direct surface rendering (DSR)
//! of iso-surfaces and direct volume rendering (DVR) of
//! transfer-function-weighted samples, composited front-to-back along
//! each ray with per-object BRDF shading.
//!
//! Display conventions: four omni lights sit at the corners of a
//! plane behind the camera; light reaches every sample without shadow
//! rays (occlusion between volume structures is carried by the
//! compositing itself); a seeded random-color background, blurred and
//! dimly lit, sits behind everything.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::brdf::{Brdf, Model};
use crate::error::{Error, Result};
use crate::img::Image;
use crate::math::{stream_key, LocalFrame, Vec3};
use crate::scene::{Camera, CameraFrame, Transform};
use crate::spectrum::Spectrum;
use crate::volume::grid::VoxelGrid;

/// How surface normals are reconstructed from the density field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalEstimator {
    /// Finite differences of the trilinear reconstruction.
    CentralDifferences,
    /// Analytic gradient of the cubic B-spline reconstruction
    /// (smoother; used for the convoluted cortex layer).
    CubicBspline,
}

/// Monotone opacity/color ramp over density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferFunction {
    pub density_lo: f64,
    pub density_hi: f64,
    pub alpha_lo: f64,
    pub alpha_hi: f64,
    pub color_lo: Spectrum,
    pub color_hi: Spectrum,
}

impl TransferFunction {
    /// A white-colored opacity ramp.
    pub fn ramp(density_lo: f64, density_hi: f64, alpha_lo: f64, alpha_hi: f64) -> TransferFunction {
        TransferFunction {
            density_lo,
            density_hi,
            alpha_lo,
            alpha_hi,
            color_lo: Spectrum::splat(1.0),
            color_hi: Spectrum::splat(1.0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.density_lo <= self.density_hi) {
            return Err(Error::domain(format!(
                "transfer density ramp must be ordered, got {} > {}",
                self.density_lo, self.density_hi
            )));
        }
        let a = (self.alpha_lo, self.alpha_hi);
        if !(0.0..=1.0).contains(&a.0) || !(0.0..=1.0).contains(&a.1) || a.0 > a.1 {
            return Err(Error::domain(format!(
                "transfer opacities must be a monotone ramp within [0, 1], got {} -> {}",
                a.0, a.1
            )));
        }
        Ok(())
    }

    /// Ramp position for a density (0 below, 1 above, linear within).
    fn ramp_t(&self, density: f64) -> f64 {
        if self.density_hi <= self.density_lo {
            return if density < self.density_lo { 0.0 } else { 1.0 };
        }
        ((density - self.density_lo) / (self.density_hi - self.density_lo)).clamp(0.0, 1.0)
    }

    /// Per-voxel opacity at a density.
    pub fn alpha(&self, density: f64) -> f64 {
        let t = self.ramp_t(density);
        self.alpha_lo + (self.alpha_hi - self.alpha_lo) * t
    }

    /// Ramp color at a density.
    pub fn color(&self, density: f64) -> Spectrum {
        let t = self.ramp_t(density);
        self.color_lo * (1.0 - t) + self.color_hi * t
    }
}

/// Rendering mode of one object.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RenderMode {
    /// Shade the first iso-crossing with a fixed opacity.
    Dsr { iso: f64, opacity: f64 },
    /// Accumulate transfer-function-weighted samples; an optional
    /// density band (with soft shoulders) gates where the object is
    /// active.
    Dvr {
        transfer: TransferFunction,
        band: Option<(f64, f64)>,
    },
}

/// One volume plus everything needed to draw it.
#[derive(Clone)]
pub struct RenderObject {
    pub volume: Arc<VoxelGrid>,
    pub transform: Transform,
    pub mode: RenderMode,
    pub brdf: Arc<dyn Brdf>,
    /// Which catalog model `brdf` is, when it is one (reporting only).
    pub model: Option<Model>,
    pub tint: Spectrum,
    pub normals: NormalEstimator,
    /// Radius of a bounding sphere around the object's translated
    /// center; ray marching only samples inside it.
    pub bound_radius: f64,
}

impl RenderObject {
    pub fn new(volume: Arc<VoxelGrid>, mode: RenderMode, model: Model) -> RenderObject {
        let bound = volume.half_extent().length();
        RenderObject {
            volume,
            transform: Transform::default(),
            mode,
            brdf: model.default_brdf().into(),
            model: Some(model),
            tint: Spectrum::splat(1.0),
            normals: NormalEstimator::CentralDifferences,
            bound_radius: bound,
        }
    }

    pub fn with_tint(mut self, tint: Spectrum) -> RenderObject {
        self.tint = tint;
        self
    }

    pub fn with_normals(mut self, normals: NormalEstimator) -> RenderObject {
        self.normals = normals;
        self
    }

    pub fn with_transform(mut self, transform: Transform) -> RenderObject {
        self.transform = transform;
        self
    }

    pub fn with_bound_radius(mut self, radius: f64) -> RenderObject {
        self.bound_radius = radius;
        self
    }

    fn validate(&self) -> Result<()> {
        match &self.mode {
            RenderMode::Dsr { iso, opacity } => {
                if !(0.0 < *iso && *iso < 1.0) {
                    return Err(Error::domain(format!(
                        "DSR iso level must lie in (0, 1), got {iso}"
                    )));
                }
                if !(0.0 < *opacity && *opacity <= 1.0) {
                    return Err(Error::domain(format!(
                        "DSR opacity must lie in (0, 1], got {opacity}"
                    )));
                }
            }
            RenderMode::Dvr { transfer, band } => {
                transfer.validate()?;
                if let Some((lo, hi)) = band {
                    if !(lo < hi) {
                        return Err(Error::domain(format!(
                            "DVR density band must be ordered, got [{lo}, {hi})"
                        )));
                    }
                }
            }
        }
        if !(self.bound_radius > 0.0) {
            return Err(Error::domain("object bound radius must be positive".to_string()));
        }
        Ok(())
    }

    /// Density at a world point.
    fn density(&self, p: Vec3) -> f64 {
        self.volume.sample(self.transform.world_point_to_object(p))
    }

    /// World-space density gradient at a world point, using the
    /// object's normal estimator.
    fn gradient(&self, p: Vec3) -> Vec3 {
        let q = self.transform.world_point_to_object(p);
        let g = match self.normals {
            NormalEstimator::CentralDifferences => self.volume.gradient_central(q),
            NormalEstimator::CubicBspline => self.volume.gradient_bspline(q),
        };
        self.transform.object_dir_to_world(g)
    }
}

impl std::fmt::Debug for RenderObject {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RenderObject")
            .field("mode", &self.mode)
            .field("model", &self.model)
            .field("tint", &self.tint)
            .field("normals", &self.normals)
            .field("bound_radius", &self.bound_radius)
            .finish_non_exhaustive()
    }
}

/// Four omni lights at the corners of a plane behind the camera; the
/// exact geometry is configurable because only "behind the camera, in
/// each corner" is fixed by convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LightRig {
    /// Plane distance behind the eye, as a multiple of the
    /// camera-to-target distance.
    pub distance_factor: f64,
    /// Corner offset along the camera right/up axes (world units).
    pub spread: f64,
    pub color: Spectrum,
}

impl Default for LightRig {
    fn default() -> Self {
        LightRig {
            distance_factor: 1.0,
            spread: 2.0,
            color: Spectrum::splat(1.0),
        }
    }
}

impl LightRig {
    pub fn positions(&self, frame: &CameraFrame, camera_distance: f64) -> [Vec3; 4] {
        let center = frame.eye - frame.fwd * (camera_distance * self.distance_factor);
        let r = frame.right * self.spread;
        let u = frame.upv * self.spread;
        [center + r + u, center - r + u, center + r - u, center - r - u]
    }
}

/// Seeded random-color backdrop placed behind the volumes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BackgroundSettings {
    pub enabled: bool,
    /// Gaussian blur radius in pixels.
    pub blur_sigma: f64,
    /// Ambient lighting term applied to the backdrop.
    pub ambient: f64,
    /// Diffuse lighting term applied to the backdrop.
    pub diffuse: f64,
}

impl Default for BackgroundSettings {
    fn default() -> Self {
        BackgroundSettings {
            enabled: true,
            blur_sigma: 8.0,
            ambient: 0.2,
            diffuse: 0.3,
        }
    }
}

/// A camera, object stack, light rig and backdrop.
#[derive(Debug, Clone)]
pub struct VolumeScene {
    pub camera: Camera,
    pub objects: Vec<RenderObject>,
    pub lights: LightRig,
    pub background: BackgroundSettings,
}

impl VolumeScene {
    pub fn new(camera: Camera) -> VolumeScene {
        VolumeScene {
            camera,
            objects: Vec::new(),
            lights: LightRig::default(),
            background: BackgroundSettings::default(),
        }
    }
}

/// Ray-march and sampling controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderSettings {
    pub width: usize,
    pub height: usize,
    pub samples_per_pixel: usize,
    pub seed: u64,
    /// March step as a fraction of a voxel (0.05 → 20 samples per
    /// voxel).
    pub step_voxels: f64,
    /// Stop marching once accumulated opacity exceeds this.
    pub early_termination_alpha: f64,
    /// Ambient shading term for volume objects.
    pub ambient: f64,
    /// Lambertian diffuse constant added to every object's BRDF.
    pub diffuse: f64,
}

impl Default for RenderSettings {
    fn default() -> Self {
        RenderSettings {
            width: 256,
            height: 256,
            samples_per_pixel: 8,
            seed: 7,
            step_voxels: 0.05,
            early_termination_alpha: 0.999,
            ambient: 0.1,
            diffuse: 0.2,
        }
    }
}

impl RenderSettings {
    fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(Error::domain("render size must be positive".to_string()));
        }
        if self.samples_per_pixel == 0 {
            return Err(Error::domain("samples per pixel must be at least 1".to_string()));
        }
        if !(self.step_voxels > 0.0 && self.step_voxels <= 1.0) {
            return Err(Error::domain(format!(
                "march step must lie in (0, 1] voxels, got {}",
                self.step_voxels
            )));
        }
        if !(0.5..=1.0).contains(&self.early_termination_alpha) {
            return Err(Error::domain(format!(
                "early-termination opacity must lie in [0.5, 1], got {}",
                self.early_termination_alpha
            )));
        }
        Ok(())
    }
}

/// Per-pixel coverage bookkeeping produced alongside the image.
#[derive(Debug, Clone)]
pub struct RenderStats {
    pub width: usize,
    pub height: usize,
    /// Fraction of each pixel's samples whose ray accumulated any
    /// opacity from the object stack.
    pub union_coverage: Vec<f32>,
    /// Mean accumulated opacity contribution per object per pixel.
    pub object_weight: Vec<Vec<f32>>,
}

impl RenderStats {
    /// Fractional pixel area covered by any object (sub-pixel
    /// accurate thanks to jittered sampling).
    pub fn union_area(&self) -> f64 {
        self.union_coverage.iter().map(|&c| c as f64).sum()
    }

    /// Number of pixels where an object's mean contribution reaches
    /// `min_weight`.
    pub fn object_pixels(&self, object: usize, min_weight: f32) -> usize {
        self.object_weight[object]
            .iter()
            .filter(|&&w| w >= min_weight)
            .count()
    }

    /// Among `candidates`, the object contributing the most opacity
    /// to a pixel, if any reaches `floor`.
    pub fn dominant_object(&self, pixel: usize, candidates: &[usize], floor: f32) -> Option<usize> {
        let mut best: Option<(usize, f32)> = None;
        for &oi in candidates {
            let w = self.object_weight[oi][pixel];
            if w >= floor && best.map_or(true, |(_, bw)| w > bw) {
                best = Some((oi, w));
            }
        }
        best.map(|(oi, _)| oi)
    }
}

/// One compositing event within a march step.
#[derive(Clone, Copy)]
struct Event {
    t: f64,
    object: usize,
    color: Spectrum,
    alpha: f64,
}

/// Render the scene; returns the linear-light image plus coverage
/// statistics. Deterministic in the seed regardless of worker count.
pub fn render_composite(scene: &VolumeScene, settings: &RenderSettings) -> Result<(Image, RenderStats)> {
    settings.validate()?;
    for obj in &scene.objects {
        obj.validate()?;
    }
    let frame = scene.camera.frame()?;
    let camera_distance = (scene.camera.target - scene.camera.eye).length();
    let lights = scene.lights.positions(&frame, camera_distance);
    let background = background_field(settings, &scene.background);

    let step_world = scene
        .objects
        .iter()
        .map(|o| o.volume.spacing())
        .fold(f64::INFINITY, f64::min)
        * settings.step_voxels;

    let (w, h) = (settings.width, settings.height);
    let aspect_v = h as f64 / w as f64;
    let spp = settings.samples_per_pixel;
    let n_objects = scene.objects.len();

    let rows: Vec<RowResult> = (0..h)
        .into_par_iter()
        .map(|py| {
            let mut colors = vec![[0.0_f32; 3]; w];
            let mut union_cov = vec![0.0_f32; w];
            let mut weights = vec![vec![0.0_f32; w]; n_objects];
            let mut spans = vec![None; n_objects];
            let mut prev = vec![None; n_objects];
            let mut events: Vec<Event> = Vec::with_capacity(n_objects.max(1));
            for px in 0..w {
                let pixel_idx = (py * w + px) as u64;
                let mut acc = Spectrum::BLACK;
                let mut acc_union = 0.0_f64;
                let mut acc_weights = vec![0.0_f64; n_objects];
                for s in 0..spp {
                    let (sx, sy) = if spp == 1 {
                        (0.5, 0.5)
                    } else {
                        let mut rng =
                            ChaCha8Rng::seed_from_u64(stream_key(settings.seed, pixel_idx, s as u64));
                        (rng.gen::<f64>(), rng.gen::<f64>())
                    };
                    let u = (px as f64 + sx) / w as f64 * 2.0 - 1.0;
                    let v = 1.0 - (py as f64 + sy) / h as f64 * 2.0;
                    let dir = frame.ray_dir(u, v, aspect_v);
                    let (color, transparency, obj_w) = march(
                        scene,
                        settings,
                        &frame,
                        dir,
                        step_world,
                        &lights,
                        &mut spans,
                        &mut prev,
                        &mut events,
                    );
                    let bg = background
                        .as_ref()
                        .map(|b| b[py * w + px])
                        .unwrap_or(Spectrum::BLACK);
                    acc += color + bg * transparency;
                    if 1.0 - transparency > 1e-3 {
                        acc_union += 1.0;
                    }
                    for (aw, ow) in acc_weights.iter_mut().zip(&obj_w) {
                        *aw += ow;
                    }
                }
                let inv = 1.0 / spp as f64;
                let mean = acc * inv;
                colors[px] = [mean.0[0] as f32, mean.0[1] as f32, mean.0[2] as f32];
                union_cov[px] = (acc_union * inv) as f32;
                for (oi, aw) in acc_weights.iter().enumerate() {
                    weights[oi][px] = (aw * inv) as f32;
                }
            }
            RowResult {
                colors,
                union_cov,
                weights,
            }
        })
        .collect();

    let mut data = Vec::with_capacity(w * h);
    let mut union_coverage = Vec::with_capacity(w * h);
    let mut object_weight = vec![Vec::with_capacity(w * h); n_objects];
    for row in rows {
        data.extend(row.colors);
        union_coverage.extend(row.union_cov);
        for (oi, rw) in row.weights.into_iter().enumerate() {
            object_weight[oi].extend(rw);
        }
    }
    let image = Image::from_data(w, h, data)?;
    Ok((
        image,
        RenderStats {
            width: w,
            height: h,
            union_coverage,
            object_weight,
        },
    ))
}

struct RowResult {
    colors: Vec<[f32; 3]>,
    union_cov: Vec<f32>,
    weights: Vec<Vec<f32>>,
}

/// March one ray; returns (accumulated color, remaining transparency,
/// per-object accumulated opacity contributions).
#[allow(clippy::too_many_arguments)]
fn march(
    scene: &VolumeScene,
    settings: &RenderSettings,
    frame: &CameraFrame,
    dir: Vec3,
    step_world: f64,
    lights: &[Vec3; 4],
    spans: &mut [Option<(f64, f64)>],
    prev: &mut [Option<f64>],
    events: &mut Vec<Event>,
) -> (Spectrum, f64, Vec<f64>) {
    let n_objects = scene.objects.len();
    let mut weights = vec![0.0_f64; n_objects];
    if n_objects == 0 || !step_world.is_finite() {
        return (Spectrum::BLACK, 1.0, weights);
    }

    let mut t_lo = f64::INFINITY;
    let mut t_hi = f64::NEG_INFINITY;
    for (oi, obj) in scene.objects.iter().enumerate() {
        spans[oi] = ray_sphere_span(frame.eye, dir, obj.transform.translation, obj.bound_radius);
        if let Some((a, b)) = spans[oi] {
            t_lo = t_lo.min(a);
            t_hi = t_hi.max(b);
        }
        prev[oi] = None;
    }
    if t_hi <= t_lo {
        return (Spectrum::BLACK, 1.0, weights);
    }

    let min_transparency = 1.0 - settings.early_termination_alpha;
    let n_steps = ((t_hi - t_lo) / step_world).ceil() as usize;
    let mut acc = Spectrum::BLACK;
    let mut transparency = 1.0_f64;

    for i in 0..n_steps {
        if transparency < min_transparency {
            break;
        }
        let t = t_lo + (i as f64 + 0.5) * step_world;
        let p = frame.eye + dir * t;
        events.clear();
        for (oi, obj) in scene.objects.iter().enumerate() {
            let in_span = spans[oi].is_some_and(|(a, b)| t >= a && t <= b);
            if !in_span {
                prev[oi] = None;
                continue;
            }
            let rho = obj.density(p);
            match &obj.mode {
                RenderMode::Dsr { iso, opacity } => {
                    if let Some(pd) = prev[oi] {
                        if (pd - iso) * (rho - iso) < 0.0 {
                            let t_hit = bisect_crossing(obj, frame.eye, dir, t - step_world, t, *iso, pd);
                            let p_hit = frame.eye + dir * t_hit;
                            let normal = facing_normal(obj.gradient(p_hit), dir);
                            let color = shade(
                                obj,
                                Spectrum::splat(1.0),
                                normal,
                                p_hit,
                                dir * -1.0,
                                lights,
                                scene.lights.color,
                                settings,
                            );
                            events.push(Event {
                                t: t_hit,
                                object: oi,
                                color,
                                alpha: *opacity,
                            });
                        }
                    }
                    prev[oi] = Some(rho);
                }
                RenderMode::Dvr { transfer, band } => {
                    let gate = band.map_or(1.0, |(lo, hi)| band_gate(rho, lo, hi));
                    let alpha_vox = transfer.alpha(rho) * gate;
                    if alpha_vox > 1e-7 {
                        let alpha_step = 1.0 - (1.0 - alpha_vox).powf(settings.step_voxels);
                        let normal = facing_normal(obj.gradient(p), dir);
                        let color = shade(
                            obj,
                            transfer.color(rho),
                            normal,
                            p,
                            dir * -1.0,
                            lights,
                            scene.lights.color,
                            settings,
                        );
                        events.push(Event {
                            t,
                            object: oi,
                            color,
                            alpha: alpha_step,
                        });
                    }
                }
            }
        }
        // Composite this step's events in depth order (object index
        // breaks exact ties, keeping results list-order independent
        // for disjoint objects).
        events.sort_by(|a, b| {
            a.t.partial_cmp(&b.t)
                .expect("finite event depth")
                .then(a.object.cmp(&b.object))
        });
        for ev in events.iter() {
            let w = transparency * ev.alpha;
            acc += ev.color * w;
            weights[ev.object] += w;
            transparency *= 1.0 - ev.alpha;
        }
    }
    (acc, transparency, weights)
}

/// Entry/exit distances of a ray against a bounding sphere, clipped
/// to the forward half-line.
fn ray_sphere_span(origin: Vec3, dir: Vec3, center: Vec3, radius: f64) -> Option<(f64, f64)> {
    let oc = origin - center;
    let b = oc.dot(dir);
    let c = oc.length_squared() - radius * radius;
    let disc = b * b - c;
    if disc <= 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    let (t0, t1) = (-b - sq, -b + sq);
    if t1 <= 0.0 {
        return None;
    }
    Some((t0.max(0.0), t1))
}

/// Refine a DSR crossing between `ta` (density `fa + iso`) and `tb`
/// down to 1e-4 voxel.
fn bisect_crossing(obj: &RenderObject, eye: Vec3, dir: Vec3, ta: f64, tb: f64, iso: f64, prev_density: f64) -> f64 {
    let tol = 1e-4 * obj.volume.spacing();
    let (mut a, mut b) = (ta, tb);
    let mut fa = prev_density - iso;
    for _ in 0..60 {
        if b - a <= tol {
            break;
        }
        let m = 0.5 * (a + b);
        let fm = obj.density(eye + dir * m) - iso;
        if fa * fm <= 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    0.5 * (a + b)
}

/// Unit normal from a density gradient, oriented toward the viewer;
/// `None` when the gradient is degenerate.
fn facing_normal(gradient: Vec3, ray_dir: Vec3) -> Option<Vec3> {
    let n = gradient.normalized()?;
    Some(if n.dot(ray_dir) > 0.0 { n * -1.0 } else { n })
}

/// Soft density window: full weight inside `[lo, hi)`, smooth 0.01
/// shoulders just outside.
fn band_gate(density: f64, lo: f64, hi: f64) -> f64 {
    const SHOULDER: f64 = 0.01;
    let rise = ((density - lo) / SHOULDER + 1.0).clamp(0.0, 1.0);
    let fall = ((hi - density) / SHOULDER).clamp(0.0, 1.0);
    let s = |t: f64| t * t * (3.0 - 2.0 * t);
    s(rise) * s(fall)
}

/// Shade a surface or volume sample: ambient plus, per light, the
/// object BRDF and a Lambertian floor, all modulated by the object
/// tint and the transfer color. Lights are omni and unoccluded.
#[allow(clippy::too_many_arguments)]
fn shade(
    obj: &RenderObject,
    transfer_color: Spectrum,
    normal: Option<Vec3>,
    p: Vec3,
    wo_world: Vec3,
    lights: &[Vec3; 4],
    light_color: Spectrum,
    settings: &RenderSettings,
) -> Spectrum {
    let base = obj.tint * transfer_color;
    let Some(n) = normal else {
        // Structureless sample: flat ambient-diffuse lighting.
        return base * (settings.ambient + 0.5 * settings.diffuse);
    };
    let frame = LocalFrame::from_normal(n);
    let wo = frame.to_local(wo_world);
    let mut light_sum = Spectrum::splat(settings.ambient);
    if wo.z > 1e-9 {
        for lp in lights {
            let Some(wi_world) = (*lp - p).normalized() else {
                continue;
            };
            let wi = frame.to_local(wi_world);
            if wi.z <= 1e-9 {
                continue;
            }
            let f = obj.brdf.eval(wi, wo) + Spectrum::splat(settings.diffuse / std::f64::consts::PI);
            light_sum += f * light_color * wi.z;
        }
    }
    base * light_sum
}

/// Seeded random-color backdrop: per-pixel uniform colors, separably
/// Gaussian-blurred, lit flat with the ambient + diffuse terms.
fn background_field(settings: &RenderSettings, bg: &BackgroundSettings) -> Option<Vec<Spectrum>> {
    if !bg.enabled {
        return None;
    }
    let (w, h) = (settings.width, settings.height);
    let mut field: Vec<[f64; 3]> = (0..w * h)
        .map(|idx| {
            let mut rng = ChaCha8Rng::seed_from_u64(stream_key(settings.seed, 0xbac0, idx as u64));
            [rng.gen::<f64>(), rng.gen::<f64>(), rng.gen::<f64>()]
        })
        .collect();

    if bg.blur_sigma > 0.0 {
        let sigma = bg.blur_sigma;
        let radius = (3.0 * sigma).ceil() as i64;
        let kernel: Vec<f64> = (-radius..=radius)
            .map(|i| (-(i * i) as f64 / (2.0 * sigma * sigma)).exp())
            .collect();
        let norm: f64 = kernel.iter().sum();
        let kernel: Vec<f64> = kernel.into_iter().map(|k| k / norm).collect();

        let mut tmp = vec![[0.0_f64; 3]; w * h];
        for y in 0..h {
            for x in 0..w {
                let mut acc = [0.0; 3];
                for (ki, k) in kernel.iter().enumerate() {
                    let sx = (x as i64 + ki as i64 - radius).clamp(0, w as i64 - 1) as usize;
                    let src = field[y * w + sx];
                    for (a, s) in acc.iter_mut().zip(&src) {
                        *a += k * s;
                    }
                }
                tmp[y * w + x] = acc;
            }
        }
        for y in 0..h {
            for x in 0..w {
                let mut acc = [0.0; 3];
                for (ki, k) in kernel.iter().enumerate() {
                    let sy = (y as i64 + ki as i64 - radius).clamp(0, h as i64 - 1) as usize;
                    let src = tmp[sy * w + x];
                    for (a, s) in acc.iter_mut().zip(&src) {
                        *a += k * s;
                    }
                }
                field[y * w + x] = acc;
            }
        }
    }

    let lit = bg.ambient + bg.diffuse;
    Some(
        field
            .into_iter()
            .map(|c| Spectrum::new(c[0] * lit, c[1] * lit, c[2] * lit))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::volume::phantom::{generate_part, PhantomPart};

    /// A crisp analytic ball of the given density (smooth 2-voxel
    /// edge) centered in a [-1,1] volume.
    fn ball_volume(n: usize, radius: f64, density: f64) -> Arc<VoxelGrid> {
        let mut g = VoxelGrid::new(n, n, n, 2.0 / n as f64).unwrap();
        let edge = 2.0 * g.spacing();
        for k in 0..n {
            for j in 0..n {
                for i in 0..n {
                    let r = g.voxel_center(i, j, k).length();
                    let t = ((radius + edge * 0.5 - r) / edge).clamp(0.0, 1.0);
                    g.set(i, j, k, (density * t * t * (3.0 - 2.0 * t)) as f32);
                }
            }
        }
        Arc::new(g)
    }

    fn small_settings(spp: usize) -> RenderSettings {
        RenderSettings {
            width: 48,
            height: 48,
            samples_per_pixel: spp,
            seed: 11,
            ..RenderSettings::default()
        }
    }

    fn dsr_ball_scene(n: usize) -> VolumeScene {
        let mut scene = VolumeScene::new(Camera::default());
        scene.objects.push(
            RenderObject::new(
                ball_volume(n, 0.6, 0.9),
                RenderMode::Dsr {
                    iso: 0.5,
                    opacity: 0.97,
                },
                Model::Phong,
            )
            .with_bound_radius(0.7),
        );
        scene
    }

    #[test]
    fn transparent_objects_leave_exactly_the_background() {
        let mut scene = VolumeScene::new(Camera::default());
        scene.objects.push(RenderObject::new(
            ball_volume(24, 0.6, 0.9),
            RenderMode::Dvr {
                transfer: TransferFunction::ramp(0.0, 1.0, 0.0, 0.0),
                band: None,
            },
            Model::Phong,
        ));
        let settings = small_settings(1);
        let (img, stats) = render_composite(&scene, &settings).unwrap();

        let empty = VolumeScene::new(Camera::default());
        let (bg_only, _) = render_composite(&empty, &settings).unwrap();
        for (a, b) in img.pixels().iter().zip(bg_only.pixels()) {
            assert_eq!(a, b);
        }
        assert_eq!(stats.union_area(), 0.0);
    }

    #[test]
    fn dsr_ball_covers_the_projected_disk() {
        let scene = dsr_ball_scene(48);
        let settings = RenderSettings {
            width: 96,
            height: 96,
            samples_per_pixel: 2,
            seed: 3,
            ..RenderSettings::default()
        };
        let (_, stats) = render_composite(&scene, &settings).unwrap();
        // Analytic projected disk of a sphere under perspective.
        let cam = Camera::default();
        let dist = (cam.target - cam.eye).length();
        let half_fov = (cam.fov_deg.to_radians() / 2.0).tan();
        let ang = (0.6_f64 / dist).asin();
        let radius_px = ang.tan() / half_fov * (settings.width as f64 / 2.0);
        let expected = std::f64::consts::PI * radius_px * radius_px;
        let got = stats.union_area();
        let rel = (got - expected).abs() / expected;
        assert!(
            rel < 0.03,
            "coverage {got:.1} vs analytic {expected:.1} (rel {rel:.4})"
        );
    }

    #[test]
    fn object_order_does_not_change_disjoint_composites() {
        let ball = ball_volume(24, 0.35, 0.9);
        let make = |order_flip: bool| {
            let mut scene = VolumeScene::new(Camera::default());
            let left = RenderObject::new(
                ball.clone(),
                RenderMode::Dsr {
                    iso: 0.5,
                    opacity: 0.97,
                },
                Model::Phong,
            )
            .with_transform(Transform {
                translation: Vec3::new(-0.55, 0.0, 0.0),
                ..Transform::default()
            })
            .with_bound_radius(0.45);
            let right = RenderObject::new(
                ball.clone(),
                RenderMode::Dsr {
                    iso: 0.5,
                    opacity: 0.97,
                },
                Model::Ward,
            )
            .with_transform(Transform {
                translation: Vec3::new(0.55, 0.0, 0.0),
                ..Transform::default()
            })
            .with_bound_radius(0.45);
            if order_flip {
                scene.objects.push(right);
                scene.objects.push(left);
            } else {
                scene.objects.push(left);
                scene.objects.push(right);
            }
            let (img, _) = render_composite(&scene, &small_settings(1)).unwrap();
            img
        };
        let a = make(false);
        let b = make(true);
        for (pa, pb) in a.pixels().iter().zip(b.pixels()) {
            assert_eq!(pa, pb);
        }
    }

    #[test]
    fn rendering_is_deterministic() {
        let scene = dsr_ball_scene(24);
        let settings = small_settings(2);
        let (a, _) = render_composite(&scene, &settings).unwrap();
        let (b, _) = render_composite(&scene, &settings).unwrap();
        for (pa, pb) in a.pixels().iter().zip(b.pixels()) {
            assert_eq!(pa, pb);
        }
        assert!(a.is_finite());
    }

    #[test]
    fn worker_count_does_not_change_pixels() {
        let scene = dsr_ball_scene(24);
        let settings = small_settings(2);
        let render_with = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            pool.install(|| render_composite(&scene, &settings).unwrap().0)
        };
        let one = render_with(1);
        let three = render_with(3);
        for (pa, pb) in one.pixels().iter().zip(three.pixels()) {
            assert_eq!(pa, pb);
        }
    }

    #[test]
    fn raising_the_opacity_ramp_never_lowers_coverage() {
        let ball = ball_volume(24, 0.5, 0.9);
        let render_alpha = |alpha_hi: f64| {
            let mut scene = VolumeScene::new(Camera::default());
            scene.objects.push(RenderObject::new(
                ball.clone(),
                RenderMode::Dvr {
                    transfer: TransferFunction::ramp(0.2, 0.8, 0.0, alpha_hi),
                    band: None,
                },
                Model::Phong,
            ));
            let (_, stats) = render_composite(&scene, &small_settings(1)).unwrap();
            stats
        };
        let low = render_alpha(0.1);
        let high = render_alpha(0.3);
        for (l, h) in low.object_weight[0].iter().zip(&high.object_weight[0]) {
            assert!(h >= l, "opacity raise lowered a pixel: {l} -> {h}");
        }
    }

    #[test]
    fn halving_the_step_barely_changes_luminance() {
        let mut scene = VolumeScene::new(Camera::default());
        let blobs = Arc::new(generate_part(PhantomPart::Blobs, 64, 42).unwrap());
        scene.objects.push(
            RenderObject::new(
                blobs,
                RenderMode::Dvr {
                    transfer: TransferFunction::ramp(0.6, 0.9, 0.0, 0.4),
                    band: None,
                },
                Model::Ward,
            )
            .with_bound_radius(0.7),
        );
        let coarse = small_settings(1);
        let fine = RenderSettings {
            step_voxels: 0.025,
            ..coarse
        };
        let (img_a, _) = render_composite(&scene, &coarse).unwrap();
        let (img_b, _) = render_composite(&scene, &fine).unwrap();
        let mean = |img: &Image| {
            img.pixels()
                .iter()
                .map(|p| (p[0] + p[1] + p[2]) as f64 / 3.0)
                .sum::<f64>()
                / img.pixels().len() as f64
        };
        let (ma, mb) = (mean(&img_a), mean(&img_b));
        let rel = (ma - mb).abs() / mb.max(1e-12);
        assert!(rel < 0.02, "step halving moved luminance by {rel:.4}");
    }

    #[test]
    fn accumulated_opacity_stays_bounded() {
        let mut scene = VolumeScene::new(Camera::default());
        scene.objects.push(RenderObject::new(
            ball_volume(24, 0.6, 0.9),
            RenderMode::Dvr {
                transfer: TransferFunction::ramp(0.1, 0.5, 0.0, 0.95),
                band: None,
            },
            Model::Phong,
        ));
        let (img, stats) = render_composite(&scene, &small_settings(1)).unwrap();
        assert!(img.is_finite());
        for w in &stats.object_weight[0] {
            assert!((0.0..=1.0 + 1e-6).contains(&(*w as f64)));
        }
        for c in &stats.union_coverage {
            assert!((0.0..=1.0).contains(&(*c as f64)));
        }
    }

    #[test]
    fn band_gate_windows_density() {
        assert_eq!(band_gate(0.5, 0.7, 0.75), 0.0);
        assert!(band_gate(0.72, 0.7, 0.75) > 0.99);
        assert_eq!(band_gate(0.9, 0.7, 0.75), 0.0);
        // Soft shoulders.
        let half_in = band_gate(0.695, 0.7, 0.75);
        assert!(half_in > 0.0 && half_in < 1.0);
    }

    #[test]
    fn settings_validation() {
        let scene = VolumeScene::new(Camera::default());
        let bad_step = RenderSettings {
            step_voxels: 0.0,
            ..RenderSettings::default()
        };
        assert!(render_composite(&scene, &bad_step).is_err());
        let bad_spp = RenderSettings {
            samples_per_pixel: 0,
            ..RenderSettings::default()
        };
        assert!(render_composite(&scene, &bad_spp).is_err());
    }

    #[test]
    fn object_validation() {
        let ball = ball_volume(16, 0.5, 0.9);
        let mut scene = VolumeScene::new(Camera::default());
        scene.objects.push(RenderObject::new(
            ball.clone(),
            RenderMode::Dsr {
                iso: 1.5,
                opacity: 0.97,
            },
            Model::Phong,
        ));
        assert!(render_composite(&scene, &small_settings(1)).is_err());

        let mut scene2 = VolumeScene::new(Camera::default());
        scene2.objects.push(RenderObject::new(
            ball,
            RenderMode::Dvr {
                transfer: TransferFunction {
                    alpha_lo: 0.5,
                    alpha_hi: 0.1,
                    ..TransferFunction::ramp(0.0, 1.0, 0.0, 0.0)
                },
                band: None,
            },
            Model::Phong,
        ));
        assert!(render_composite(&scene2, &small_settings(1)).is_err());
    }
}
