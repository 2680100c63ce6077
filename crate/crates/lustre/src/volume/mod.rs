//! Desk-scale volume rendering: voxel grids with trilinear and cubic
//! B-spline reconstruction, synthetic phantom volumes, a multi-object
//! DSR + DVR ray-cast renderer with per-object BRDF bindings, and the
//! 24-entry model-combination preset catalog.

pub mod grid;
pub mod phantom;
pub mod presets;
pub mod render;

pub use grid::VoxelGrid;
pub use phantom::{generate_phantom, PhantomPart, PhantomSet};
pub use presets::{
    figure10_scene, preset_binding, preset_scene, PresetBinding, FIGURE10_CLASSES,
    PRESET_BINDINGS,
};
pub use render::{
    render_composite, BackgroundSettings, LightRig, NormalEstimator, RenderMode, RenderObject,
    RenderSettings, RenderStats, TransferFunction, VolumeScene,
};
