//! JSON scene descriptions for the surface renderer.
//!
//! Schema (all sections optional; omitted values fall back to the
//! catalog defaults):
//!
//! ```json
//! {
//!   "objects": [
//!     {
//!       "shape": "sphere | ellipsoid | torus",
//!       "params": { "radius": 1.0,
//!                   "semi_axes": [1.0, 0.5, 0.5],
//!                   "major_radius": 0.8, "minor_radius": 0.4 },
//!       "transform": { "translation": [0, 0, 0],
//!                      "rotation": { "axis": [0, 0, 1], "angle_deg": 45 } },
//!       "brdf": "ward",
//!       "brdf_params": { "roughness_x": 0.2 }
//!     }
//!   ],
//!   "lights": [
//!     { "kind": "point", "position": [1.8, -3.0, 1.6], "intensity": 156.4 },
//!     { "kind": "patch", "position": [0, -3, 2], "normal": [0, 1, -0.5],
//!       "area": 0.25, "radiance": [500, 500, 500] }
//!   ],
//!   "sensor": { "eye": [0, -3.2, 1.4], "target": [0, 0, 0],
//!               "up": [0, 0, 1], "fov_deg": 35 },
//!   "render": { "spp": 16, "width": 128, "height": 128, "seed": 42 },
//!   "diffuse": 0.2
//! }
//! ```
//!
//! Unknown keys anywhere are rejected with the offending JSON path
//! named. `brdf_params` may list any subset of a model's parameters;
//! the rest keep their catalog defaults.

use std::sync::Arc;

use serde::Deserialize;

use crate::brdf::Model;
use crate::error::{Error, Result};
use crate::math::{Rotation, Vec3};
use crate::scene::{Camera, FluxSettings, Light, Scene, SceneObject, Shape, Transform};
use crate::spectrum::Spectrum;

/// A parsed scene plus its sensor lattice settings.
#[derive(Debug, Clone)]
pub struct SceneDescription {
    pub scene: Scene,
    pub flux: FluxSettings,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SceneDoc {
    #[serde(default)]
    objects: Vec<ObjectDoc>,
    #[serde(default)]
    lights: Vec<LightDoc>,
    sensor: Option<SensorDoc>,
    render: Option<RenderDoc>,
    diffuse: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ObjectDoc {
    shape: String,
    params: Option<ShapeParamsDoc>,
    transform: Option<TransformDoc>,
    brdf: Option<String>,
    brdf_params: Option<serde_json::Value>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ShapeParamsDoc {
    radius: Option<f64>,
    semi_axes: Option<[f64; 3]>,
    major_radius: Option<f64>,
    minor_radius: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TransformDoc {
    translation: Option<[f64; 3]>,
    rotation: Option<RotationDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RotationDoc {
    axis: [f64; 3],
    angle_deg: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LightDoc {
    kind: Option<String>,
    position: [f64; 3],
    intensity: Option<SpectrumDoc>,
    normal: Option<[f64; 3]>,
    area: Option<f64>,
    radiance: Option<SpectrumDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SensorDoc {
    eye: Option<[f64; 3]>,
    target: Option<[f64; 3]>,
    up: Option<[f64; 3]>,
    fov_deg: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RenderDoc {
    spp: Option<usize>,
    width: Option<usize>,
    height: Option<usize>,
    seed: Option<u64>,
}

/// Gray or per-band light strength.
#[derive(Deserialize)]
#[serde(untagged)]
enum SpectrumDoc {
    Gray(f64),
    Bands([f64; 3]),
}

impl SpectrumDoc {
    fn to_spectrum(&self) -> Spectrum {
        match self {
            SpectrumDoc::Gray(v) => Spectrum::splat(*v),
            SpectrumDoc::Bands(b) => Spectrum::new(b[0], b[1], b[2]),
        }
    }
}

fn vec3(a: [f64; 3]) -> Vec3 {
    Vec3::new(a[0], a[1], a[2])
}

/// Parse and validate a JSON scene description.
pub fn parse_scene(json_text: &str) -> Result<SceneDescription> {
    let mut de = serde_json::Deserializer::from_str(json_text);
    let doc: SceneDoc = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        Error::Scene(format!("at {}: {}", e.path(), e.inner()))
    })?;

    let mut camera = Camera::default();
    if let Some(sensor) = &doc.sensor {
        if let Some(eye) = sensor.eye {
            camera.eye = vec3(eye);
        }
        if let Some(target) = sensor.target {
            camera.target = vec3(target);
        }
        if let Some(up) = sensor.up {
            camera.up = vec3(up);
        }
        if let Some(fov) = sensor.fov_deg {
            camera.fov_deg = fov;
        }
    }

    let mut scene = Scene::new(camera);
    if let Some(diffuse) = doc.diffuse {
        scene.diffuse = diffuse;
    }
    for (idx, obj) in doc.objects.iter().enumerate() {
        scene.objects.push(build_object(obj, idx)?);
    }
    for (idx, light) in doc.lights.iter().enumerate() {
        scene.lights.push(build_light(light, idx)?);
    }
    scene.validate()?;

    let mut flux = FluxSettings::default();
    if let Some(render) = &doc.render {
        if let Some(spp) = render.spp {
            flux.samples_per_pixel = spp;
        }
        if let Some(width) = render.width {
            flux.width = width;
        }
        if let Some(height) = render.height {
            flux.height = height;
        }
        if let Some(seed) = render.seed {
            flux.seed = seed;
        }
    }

    Ok(SceneDescription { scene, flux })
}

fn build_object(doc: &ObjectDoc, idx: usize) -> Result<SceneObject> {
    let at = |msg: String| Error::Scene(format!("at objects[{idx}]: {msg}"));
    let params = doc.params.as_ref();
    let shape = match doc.shape.as_str() {
        "sphere" => Shape::Sphere {
            radius: params.and_then(|p| p.radius).unwrap_or(1.0),
        },
        "ellipsoid" => Shape::Ellipsoid {
            semi_axes: params
                .and_then(|p| p.semi_axes)
                .map(vec3)
                .unwrap_or(Vec3::new(1.0, 0.5, 0.5)),
        },
        "torus" => Shape::Torus {
            major: params.and_then(|p| p.major_radius).unwrap_or(0.8),
            minor: params.and_then(|p| p.minor_radius).unwrap_or(0.4),
        },
        other => {
            return Err(at(format!(
                "unknown shape '{other}'; valid shapes: sphere, ellipsoid, torus"
            )))
        }
    };

    let model = match &doc.brdf {
        Some(name) => Model::from_name(name).map_err(|e| at(e.to_string()))?,
        None => Model::Phong,
    };
    let brdf: Arc<dyn crate::brdf::Brdf> = match &doc.brdf_params {
        Some(params) => model
            .brdf_from_json(params)
            .map_err(|e| at(e.to_string()))?
            .into(),
        None => model.default_brdf().into(),
    };

    let mut transform = Transform::identity();
    if let Some(tdoc) = &doc.transform {
        if let Some(t) = tdoc.translation {
            transform.translation = vec3(t);
        }
        if let Some(r) = &tdoc.rotation {
            transform.rotation =
                Rotation::axis_angle(vec3(r.axis), r.angle_deg).map_err(|e| at(e.to_string()))?;
        }
    }

    let mut object = SceneObject::new(shape, brdf);
    object.model = Some(model);
    object.transform = transform;
    Ok(object)
}

fn build_light(doc: &LightDoc, idx: usize) -> Result<Light> {
    let at = |msg: String| Error::Scene(format!("at lights[{idx}]: {msg}"));
    let kind = doc.kind.as_deref().unwrap_or("point");
    match kind {
        "point" => {
            for (field, present) in [("normal", doc.normal.is_some()), ("area", doc.area.is_some()), ("radiance", doc.radiance.is_some())] {
                if present {
                    return Err(at(format!("'{field}' applies to patch lights only")));
                }
            }
            Ok(Light::Point {
                position: vec3(doc.position),
                intensity: doc
                    .intensity
                    .as_ref()
                    .map(SpectrumDoc::to_spectrum)
                    .unwrap_or(Spectrum::splat(1.0)),
            })
        }
        "patch" => {
            if doc.intensity.is_some() {
                return Err(at("'intensity' applies to point lights only; patches use 'radiance'".to_string()));
            }
            let normal = doc
                .normal
                .ok_or_else(|| at("patch lights need a 'normal'".to_string()))?;
            let area = doc
                .area
                .ok_or_else(|| at("patch lights need an 'area'".to_string()))?;
            let radiance = doc
                .radiance
                .as_ref()
                .ok_or_else(|| at("patch lights need a 'radiance'".to_string()))?;
            Ok(Light::Patch {
                position: vec3(doc.position),
                normal: vec3(normal),
                area,
                radiance: radiance.to_spectrum(),
            })
        }
        other => Err(at(format!(
            "unknown light kind '{other}'; valid kinds: point, patch"
        ))),
    }
}
