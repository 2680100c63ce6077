//! Rank all 36 reflection-model pairs by flux-overlap error.
//!
//! By default this runs a reduced 48×48 study so it finishes in a few
//! seconds; pass `--full` for the calibrated 128×128 / 16-sample
//! study the library's reference expectations are stated against.
//!
//!     cargo run --release --example tournament_small [-- --full]

use lustre::overlap::{run_tournament, TournamentConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let full = std::env::args().any(|a| a == "--full");
    let config = if full {
        TournamentConfig::default()
    } else {
        TournamentConfig {
            width: 48,
            height: 48,
            ..TournamentConfig::default()
        }
    };
    eprintln!(
        "running {}x{} lattice, {} samples/pixel, seed {} ...",
        config.width, config.height, config.samples_per_pixel, config.seed
    );
    let report = run_tournament(&config)?;

    println!("rank  error         category  pair");
    for (idx, row) in report.rows.iter().enumerate() {
        println!(
            "{:>4}  {:<12.6e}  {:<8}  {} / {}",
            idx + 1,
            row.error,
            row.category.name(),
            row.a.name(),
            row.b.name()
        );
    }
    println!();
    println!(
        "category means: high {:.4e}  medium {:.4e}  low {:.4e}",
        report.mean_high, report.mean_medium, report.mean_low
    );
    println!(
        "rank correlation against the published ordering: {:.3}",
        report.spearman_rho
    );
    let (top_a, top_b) = report.top_pair();
    println!("most separable pair: {} / {}", top_a.name(), top_b.name());
    if let Some(min_pos) = report.min_positive_error() {
        println!("smallest nonzero error: {min_pos:.6e}");
    }
    println!(
        "category ordering high > medium > low: {}",
        report.category_ordering_holds()
    );
    Ok(())
}
