//! Ready-made desk-scale scenes: a three-layer head phantom (outer
//! shell, convoluted cortex layer, interior blob clusters) under 24
//! catalogued reflection-model assignments, plus a four-class
//! interior composition that colors the blob density bands
//! separately.

use std::sync::Arc;

use crate::brdf::Model;
use crate::error::{Error, Result};
use crate::math::{Rotation, Vec3};
use crate::scene::{Camera, Transform};
use crate::spectrum::Spectrum;
use crate::volume::phantom::generate_phantom;
use crate::volume::render::{
    NormalEstimator, RenderMode, RenderObject, TransferFunction, VolumeScene,
};

use Model::{Ashikhmin, CookTorrance, HeTorrance, Phong, SchlickLewis, Ward};

/// Reflection models for (shell, cortex, blobs) in each catalogued
/// appearance study. Rows 1-6 permute the three full-featured models,
/// rows 7-12 permute three mid-tier models, rows 13-18 use one model
/// throughout, and rows 19-24 permute a mixed trio.
pub const PRESET_BINDINGS: [(Model, Model, Model); 24] = [
    (Ward, Ashikhmin, HeTorrance),
    (Ward, HeTorrance, Ashikhmin),
    (Ashikhmin, Ward, HeTorrance),
    (Ashikhmin, HeTorrance, Ward),
    (HeTorrance, Ward, Ashikhmin),
    (HeTorrance, Ashikhmin, Ward),
    (CookTorrance, SchlickLewis, Phong),
    (CookTorrance, Phong, SchlickLewis),
    (SchlickLewis, CookTorrance, Phong),
    (SchlickLewis, Phong, CookTorrance),
    (Phong, SchlickLewis, CookTorrance),
    (Phong, CookTorrance, SchlickLewis),
    (Ward, Ward, Ward),
    (Ashikhmin, Ashikhmin, Ashikhmin),
    (HeTorrance, HeTorrance, HeTorrance),
    (CookTorrance, CookTorrance, CookTorrance),
    (SchlickLewis, SchlickLewis, SchlickLewis),
    (Phong, Phong, Phong),
    (Ward, SchlickLewis, Phong),
    (Ward, Phong, SchlickLewis),
    (SchlickLewis, Ward, Phong),
    (SchlickLewis, Phong, Ward),
    (Phong, Ward, SchlickLewis),
    (Phong, SchlickLewis, Ward),
];

/// One catalogued model assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PresetBinding {
    /// 1-based catalog number.
    pub id: usize,
    pub shell: Model,
    pub cortex: Model,
    pub blobs: Model,
}

/// Look up a catalogued assignment by its 1-based number.
pub fn preset_binding(id: usize) -> Result<PresetBinding> {
    if !(1..=PRESET_BINDINGS.len()).contains(&id) {
        return Err(Error::domain(format!(
            "preset number must lie in 1..={}, got {id}",
            PRESET_BINDINGS.len()
        )));
    }
    let (shell, cortex, blobs) = PRESET_BINDINGS[id - 1];
    Ok(PresetBinding {
        id,
        shell,
        cortex,
        blobs,
    })
}

/// One interior density class: a half-open density band drawn with a
/// flat opacity and its own tint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Figure10Class {
    pub name: &'static str,
    /// Half-open density band `[lo, hi)`; the innermost class is
    /// unbounded above.
    pub band: (f64, f64),
    pub opacity: f64,
    pub tint: Spectrum,
}

/// The four interior density classes, outermost band first.
pub const FIGURE10_CLASSES: [Figure10Class; 4] = [
    Figure10Class {
        name: "blue",
        band: (0.70, 0.75),
        opacity: 0.3,
        tint: Spectrum::new(0.25, 0.40, 0.90),
    },
    Figure10Class {
        name: "green",
        band: (0.75, 0.80),
        opacity: 0.4,
        tint: Spectrum::new(0.20, 0.80, 0.30),
    },
    Figure10Class {
        name: "yellow",
        band: (0.80, 0.85),
        opacity: 0.5,
        tint: Spectrum::new(0.90, 0.85, 0.20),
    },
    Figure10Class {
        name: "red",
        band: (0.85, f64::INFINITY),
        opacity: 0.6,
        tint: Spectrum::new(0.90, 0.15, 0.15),
    },
];

const SHELL_TINT: Spectrum = Spectrum::new(0.90, 0.87, 0.80);
const CORTEX_TINT: Spectrum = Spectrum::new(0.80, 0.65, 0.55);
const BLOBS_TINT: Spectrum = Spectrum::new(0.40, 0.55, 0.90);

const SHELL_BOUND: f64 = 0.96;
const CORTEX_BOUND: f64 = 0.88;
const BLOBS_BOUND: f64 = 0.70;

fn shell_object(volume: Arc<crate::volume::VoxelGrid>, model: Model) -> RenderObject {
    RenderObject::new(
        volume,
        RenderMode::Dsr {
            iso: 0.5,
            opacity: 0.97,
        },
        model,
    )
    .with_tint(SHELL_TINT)
    .with_bound_radius(SHELL_BOUND)
}

fn cortex_object(volume: Arc<crate::volume::VoxelGrid>, model: Model) -> RenderObject {
    RenderObject::new(
        volume,
        RenderMode::Dvr {
            transfer: TransferFunction::ramp(0.30, 0.72, 0.001, 0.14),
            band: None,
        },
        model,
    )
    .with_tint(CORTEX_TINT)
    .with_normals(NormalEstimator::CubicBspline)
    .with_bound_radius(CORTEX_BOUND)
}

/// A desk-scale scene with all three phantom layers bound to the
/// models of catalogued assignment `id`, rotated 45 degrees about the
/// vertical so the shell opening sits half-profile to the camera.
pub fn preset_scene(id: usize, dims: usize, seed: u64) -> Result<VolumeScene> {
    let binding = preset_binding(id)?;
    let set = generate_phantom(dims, seed)?;
    let rotation = Rotation::axis_angle(Vec3::new(0.0, 0.0, 1.0), 45.0)
        .expect("the vertical axis is a unit direction");
    let spin = Transform {
        rotation,
        ..Transform::default()
    };

    let mut scene = VolumeScene::new(Camera::default());
    scene.objects.push(
        shell_object(Arc::new(set.shell), binding.shell).with_transform(spin),
    );
    scene.objects.push(
        cortex_object(Arc::new(set.cortex), binding.cortex).with_transform(spin),
    );
    scene.objects.push(
        RenderObject::new(
            Arc::new(set.blobs),
            RenderMode::Dvr {
                transfer: TransferFunction::ramp(0.65, 0.90, 0.0, 0.6),
                band: None,
            },
            binding.blobs,
        )
        .with_tint(BLOBS_TINT)
        .with_bound_radius(BLOBS_BOUND)
        .with_transform(spin),
    );
    Ok(scene)
}

/// The four-class interior composition: the opaque shell and the
/// semi-transparent cortex layer in front, and the blob volume drawn
/// four times — once per density band, each with its own tint — all
/// facing the camera so the phantom's staggered cutaway windows
/// expose every class. Interior classes use inexpensive mirror-lobe
/// shading; the study models stay on the two outer layers.
pub fn figure10_scene(dims: usize, seed: u64) -> Result<VolumeScene> {
    let set = generate_phantom(dims, seed)?;
    let mut scene = VolumeScene::new(Camera::default());
    scene
        .objects
        .push(shell_object(Arc::new(set.shell), Ward));
    scene
        .objects
        .push(cortex_object(Arc::new(set.cortex), Ashikhmin));

    let blobs = Arc::new(set.blobs);
    for class in &FIGURE10_CLASSES {
        scene.objects.push(
            RenderObject::new(
                blobs.clone(),
                RenderMode::Dvr {
                    transfer: TransferFunction::ramp(0.0, 1.0, class.opacity, class.opacity),
                    band: Some(class.band),
                },
                Phong,
            )
            .with_tint(class.tint)
            .with_bound_radius(BLOBS_BOUND),
        );
    }
    Ok(scene)
}
