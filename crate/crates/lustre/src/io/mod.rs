//! File formats: PFM float images, PPM display images, a small
//! binary volume container, JSON scene descriptions, and CSV reports.

pub mod csv_report;
pub mod pfm;
pub mod ppm;
pub mod scene_json;
pub mod volf;

pub use csv_report::{emit_plausibility_csv, emit_ranking_csv, write_plausibility_csv, write_ranking_csv};
pub use pfm::{read_pfm, write_pfm};
pub use ppm::{encode_ppm, write_ppm};
pub use scene_json::{parse_scene, SceneDescription};
pub use volf::{read_volf, write_volf};
