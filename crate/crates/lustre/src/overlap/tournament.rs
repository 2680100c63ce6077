//! The 36-pair differentiation tournament: render every model on
//! every study scene, then score all model pairs with the flux-overlap
//! metric and compare the ranking against the published baseline.

use crate::brdf::Model;
use crate::error::{Error, Result};
use crate::img::Image;
use crate::math::Vec3;
use crate::overlap::metric::{scalar_flux_overlap, DEFAULT_THRESHOLD};
use crate::overlap::reference::{is_reference_zero, reference_rank};
use crate::scene::{Camera, FluxSettings, Light, Scene, SceneObject, Shape};
use crate::spectrum::Spectrum;

/// Positions of the three study lights: clustered behind and around
/// the camera so specular lobes land on the camera-facing surfaces.
pub const STUDY_LIGHT_POSITIONS: [Vec3; 3] = [
    Vec3 {
        x: 1.8,
        y: -3.0,
        z: 1.6,
    },
    Vec3 {
        x: -1.8,
        y: -2.8,
        z: 1.2,
    },
    Vec3 {
        x: 0.2,
        y: -3.2,
        z: 2.6,
    },
];

/// Per-light radiant intensity calibrated for a 128×128 lattice: the
/// diffuse floor stays below the activity threshold while every
/// specular lobe core crosses it.
pub const BASE_INTENSITY_AT_128: f64 = 1408.0 / 9.0;

/// The three desk-scale study objects, all centered at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StudyScene {
    Sphere,
    Ellipsoid,
    Torus,
}

impl StudyScene {
    pub const ALL: [StudyScene; 3] = [StudyScene::Sphere, StudyScene::Ellipsoid, StudyScene::Torus];

    pub fn name(self) -> &'static str {
        match self {
            StudyScene::Sphere => "sphere",
            StudyScene::Ellipsoid => "ellipsoid",
            StudyScene::Torus => "torus",
        }
    }

    pub fn from_name(name: &str) -> Result<StudyScene> {
        let n = name.to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|s| s.name() == n)
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown study scene '{name}'; valid scenes: sphere, ellipsoid, torus"
                ))
            })
    }

    /// The shape rendered for this scene.
    pub fn shape(self) -> Shape {
        match self {
            StudyScene::Sphere => Shape::Sphere { radius: 1.0 },
            StudyScene::Ellipsoid => Shape::Ellipsoid {
                semi_axes: Vec3::new(1.0, 0.5, 0.5),
            },
            StudyScene::Torus => Shape::Torus {
                major: 0.8,
                minor: 0.4,
            },
        }
    }
}

impl std::fmt::Display for StudyScene {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Tournament configuration.
#[derive(Debug, Clone)]
pub struct TournamentConfig {
    pub width: usize,
    pub height: usize,
    pub samples_per_pixel: usize,
    pub seed: u64,
    pub scenes: Vec<StudyScene>,
    /// Flux activity threshold for the overlap metric.
    pub threshold: f64,
    /// Per-light radiant intensity; `None` scales
    /// [`BASE_INTENSITY_AT_128`] by the pixel count so per-pixel flux
    /// levels stay comparable across lattice sizes.
    pub light_intensity: Option<f64>,
}

impl Default for TournamentConfig {
    fn default() -> Self {
        TournamentConfig {
            width: 128,
            height: 128,
            samples_per_pixel: 16,
            seed: 42,
            scenes: StudyScene::ALL.to_vec(),
            threshold: DEFAULT_THRESHOLD,
            light_intensity: None,
        }
    }
}

impl TournamentConfig {
    /// The per-light intensity actually used.
    pub fn resolved_intensity(&self) -> f64 {
        self.light_intensity.unwrap_or_else(|| {
            BASE_INTENSITY_AT_128 * (self.width * self.height) as f64 / (128.0 * 128.0)
        })
    }

    fn validate(&self) -> Result<()> {
        if self.scenes.is_empty() {
            return Err(Error::Config("tournament needs at least one scene".to_string()));
        }
        if self.resolved_intensity() <= 0.0 {
            return Err(Error::Config(format!(
                "light intensity must be positive, got {}",
                self.resolved_intensity()
            )));
        }
        Ok(())
    }
}

/// Differentiation expectation class of a model pair, from the trait
/// catalog: pairs of fully-equipped models (physically plausible,
/// anisotropic, Fresnel) should differ most.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairCategory {
    /// Both models carry the full differentiating trio.
    High,
    /// Exactly one does.
    Medium,
    /// Neither does.
    Low,
}

impl PairCategory {
    pub fn of(a: Model, b: Model) -> PairCategory {
        match (a.traits().full_trio(), b.traits().full_trio()) {
            (true, true) => PairCategory::High,
            (true, false) | (false, true) => PairCategory::Medium,
            (false, false) => PairCategory::Low,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PairCategory::High => "high",
            PairCategory::Medium => "medium",
            PairCategory::Low => "low",
        }
    }
}

impl std::fmt::Display for PairCategory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One scored pair.
#[derive(Debug, Clone, Copy)]
pub struct PairScore {
    pub a: Model,
    pub b: Model,
    /// Flux-overlap error summed over scenes and wavelength bands.
    pub error: f64,
    pub category: PairCategory,
}

/// Tournament outcome: every pair scored and ranked.
#[derive(Debug, Clone)]
pub struct TournamentReport {
    /// All 36 pairs, largest error first; ties order by model names.
    pub rows: Vec<PairScore>,
    pub mean_high: f64,
    pub mean_medium: f64,
    pub mean_low: f64,
    /// Rank correlation against the published reference ranking.
    pub spearman_rho: f64,
    pub config: TournamentConfig,
}

impl TournamentReport {
    /// The winning pair (largest error).
    pub fn top_pair(&self) -> (Model, Model) {
        (self.rows[0].a, self.rows[0].b)
    }

    /// Smallest strictly positive pair error, if any pair scored
    /// above zero.
    pub fn min_positive_error(&self) -> Option<f64> {
        self.rows
            .iter()
            .map(|r| r.error)
            .filter(|&e| e > 0.0)
            .fold(None, |acc: Option<f64>, e| {
                Some(acc.map_or(e, |a| a.min(e)))
            })
    }

    /// Error of a specific pair.
    pub fn error_of(&self, a: Model, b: Model) -> Option<f64> {
        use crate::overlap::reference::pair_key;
        self.rows
            .iter()
            .find(|r| pair_key(r.a, r.b) == pair_key(a, b))
            .map(|r| r.error)
    }

    /// `true` when the mean errors order `high > medium > low`.
    pub fn category_ordering_holds(&self) -> bool {
        self.mean_high > self.mean_medium && self.mean_medium > self.mean_low
    }

    /// `true` when every pair the reference study scored as zero
    /// stays below `factor` times the smallest positive error here
    /// (degenerate-zero scores trivially stay below).
    pub fn zero_pairs_stay_low(&self, factor: f64) -> bool {
        let Some(min_pos) = self.min_positive_error() else {
            return false;
        };
        self.rows
            .iter()
            .filter(|r| is_reference_zero(r.a, r.b))
            .all(|r| r.error < factor * min_pos)
    }
}

/// Build the study scene for one model: the shape at the origin under
/// the three calibrated lights.
pub fn study_scene(scene: StudyScene, model: Model, intensity: f64) -> Scene {
    let mut s = Scene::new(Camera::default());
    s.objects.push(SceneObject::from_model(scene.shape(), model));
    for pos in STUDY_LIGHT_POSITIONS {
        s.lights.push(Light::Point {
            position: pos,
            intensity: Spectrum::splat(intensity),
        });
    }
    s
}

/// Run the full tournament: 9 models × the configured scenes, then
/// score all 36 unordered pairs band-by-band.
pub fn run_tournament(config: &TournamentConfig) -> Result<TournamentReport> {
    config.validate()?;
    let intensity = config.resolved_intensity();
    let settings = FluxSettings {
        width: config.width,
        height: config.height,
        samples_per_pixel: config.samples_per_pixel,
        seed: config.seed,
    };

    // Render every (scene, model) flux lattice and slice per band.
    let mut slices: Vec<Vec<Vec<f32>>> = Vec::new(); // [model][scene*3+band]
    for model in Model::ALL {
        let mut per_model = Vec::new();
        for &sc in &config.scenes {
            let lattice: Image = crate::scene::measure_flux(&study_scene(sc, model, intensity), &settings)?;
            for band in 0..3 {
                per_model.push(lattice.channel(band));
            }
        }
        slices.push(per_model);
    }

    let mut rows = Vec::with_capacity(36);
    for (i, &a) in Model::ALL.iter().enumerate() {
        for (j, &b) in Model::ALL.iter().enumerate().skip(i + 1) {
            let mut error = 0.0;
            for (sa, sb) in slices[i].iter().zip(&slices[j]) {
                error += scalar_flux_overlap(sa, sb, config.threshold)?.error;
            }
            rows.push(PairScore {
                a,
                b,
                error,
                category: PairCategory::of(a, b),
            });
        }
    }

    // Largest error first; ties resolve by model names for stability.
    rows.sort_by(|x, y| {
        y.error
            .partial_cmp(&x.error)
            .expect("finite errors")
            .then_with(|| x.a.name().cmp(y.a.name()))
            .then_with(|| x.b.name().cmp(y.b.name()))
    });

    let mean_of = |cat: PairCategory| {
        let vals: Vec<f64> = rows
            .iter()
            .filter(|r| r.category == cat)
            .map(|r| r.error)
            .collect();
        vals.iter().sum::<f64>() / vals.len().max(1) as f64
    };

    Ok(TournamentReport {
        spearman_rho: spearman_vs_reference(&rows),
        mean_high: mean_of(PairCategory::High),
        mean_medium: mean_of(PairCategory::Medium),
        mean_low: mean_of(PairCategory::Low),
        rows,
        config: config.clone(),
    })
}

/// Spearman rank correlation between the produced ranking and the
/// published reference ranking.
///
/// Produced ranks are the row positions (distinct). Reference ranks
/// use the published positions with the seven-way zero tie at its
/// midpoint; re-ranking breaks that tie in produced-row order, which
/// keeps the classic `1 − 6Σd²/(n(n²−1))` formula applicable.
fn spearman_vs_reference(rows: &[PairScore]) -> f64 {
    let n = rows.len();
    let ref_vals: Vec<f64> = rows
        .iter()
        .map(|r| reference_rank(r.a, r.b).expect("all pairs are in the reference tables"))
        .collect();
    let ref_ranks = stable_rank(&ref_vals);
    let d2: f64 = ref_ranks
        .iter()
        .enumerate()
        .map(|(i, &rr)| {
            let my = (i + 1) as f64;
            (my - rr) * (my - rr)
        })
        .sum();
    let nf = n as f64;
    1.0 - 6.0 * d2 / (nf * (nf * nf - 1.0))
}

/// Ranks 1..=n by ascending value; equal values keep slice order.
fn stable_rank(values: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&i, &j| {
        values[i]
            .partial_cmp(&values[j])
            .expect("finite ranks")
            .then(i.cmp(&j))
    });
    let mut ranks = vec![0.0; values.len()];
    for (rank0, &i) in idx.iter().enumerate() {
        ranks[i] = (rank0 + 1) as f64;
    }
    ranks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn categories_partition_the_36_pairs() {
        let mut counts = [0usize; 3];
        for (i, &a) in Model::ALL.iter().enumerate() {
            for &b in &Model::ALL[i + 1..] {
                match PairCategory::of(a, b) {
                    PairCategory::High => counts[0] += 1,
                    PairCategory::Medium => counts[1] += 1,
                    PairCategory::Low => counts[2] += 1,
                }
            }
        }
        assert_eq!(counts, [1, 14, 21]);
        assert_eq!(
            PairCategory::of(Model::Ward, Model::Ashikhmin),
            PairCategory::High
        );
        assert_eq!(
            PairCategory::of(Model::Ward, Model::Phong),
            PairCategory::Medium
        );
        assert_eq!(
            PairCategory::of(Model::Phong, Model::Strauss),
            PairCategory::Low
        );
    }

    #[test]
    fn stable_rank_breaks_ties_in_order() {
        let r = stable_rank(&[5.0, 1.0, 5.0, 2.0]);
        assert_eq!(r, vec![3.0, 1.0, 4.0, 2.0]);
    }

    #[test]
    fn spearman_of_reference_order_is_one() {
        // Rows already in reference order correlate perfectly.
        use crate::overlap::reference::{REFERENCE_RANKING, REFERENCE_ZERO_PAIRS};
        let mut rows: Vec<PairScore> = REFERENCE_RANKING
            .iter()
            .map(|&(a, b, e)| PairScore {
                a,
                b,
                error: e,
                category: PairCategory::of(a, b),
            })
            .collect();
        rows.extend(REFERENCE_ZERO_PAIRS.iter().map(|&(a, b)| PairScore {
            a,
            b,
            error: 0.0,
            category: PairCategory::of(a, b),
        }));
        let rho = spearman_vs_reference(&rows);
        assert!((rho - 1.0).abs() < 1e-12, "rho = {rho}");
    }

    #[test]
    fn spearman_of_reversed_order_is_negative() {
        use crate::overlap::reference::{REFERENCE_RANKING, REFERENCE_ZERO_PAIRS};
        let mut rows: Vec<PairScore> = REFERENCE_ZERO_PAIRS
            .iter()
            .map(|&(a, b)| PairScore {
                a,
                b,
                error: 1.0,
                category: PairCategory::of(a, b),
            })
            .collect();
        rows.extend(REFERENCE_RANKING.iter().rev().map(|&(a, b, e)| PairScore {
            a,
            b,
            error: 1.0 - e,
            category: PairCategory::of(a, b),
        }));
        assert!(spearman_vs_reference(&rows) < -0.8);
    }

    #[test]
    fn auto_intensity_scales_with_pixel_count() {
        let c = TournamentConfig::default();
        assert!((c.resolved_intensity() - 1408.0 / 9.0).abs() < 1e-12);
        let small = TournamentConfig {
            width: 48,
            height: 48,
            ..TournamentConfig::default()
        };
        assert!((small.resolved_intensity() - 22.0).abs() < 1e-12);
        let fixed = TournamentConfig {
            light_intensity: Some(5.0),
            ..TournamentConfig::default()
        };
        assert!((fixed.resolved_intensity() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn tiny_tournament_runs_and_is_deterministic() {
        // A coarse lattice keeps this fast; structure checks only.
        let config = TournamentConfig {
            width: 24,
            height: 24,
            samples_per_pixel: 1,
            seed: 42,
            scenes: vec![StudyScene::Sphere],
            threshold: DEFAULT_THRESHOLD,
            light_intensity: None,
        };
        let a = run_tournament(&config).unwrap();
        let b = run_tournament(&config).unwrap();
        assert_eq!(a.rows.len(), 36);
        assert_eq!(a.rows[0].error, b.rows[0].error);
        assert!(a.rows.windows(2).all(|w| w[0].error >= w[1].error));
        assert!(a.spearman_rho.is_finite());
        // Every pair appears exactly once.
        let mut seen = std::collections::HashSet::new();
        for r in &a.rows {
            assert!(seen.insert(crate::overlap::reference::pair_key(r.a, r.b)));
        }
    }

    #[test]
    fn config_validation() {
        let empty = TournamentConfig {
            scenes: vec![],
            ..TournamentConfig::default()
        };
        assert!(run_tournament(&empty).is_err());
        let bad = TournamentConfig {
            light_intensity: Some(-1.0),
            ..TournamentConfig::default()
        };
        assert!(run_tournament(&bad).is_err());
    }
}
