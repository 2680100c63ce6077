//! CSV emission for tournament rankings and plausibility reports.

use std::fs;
use std::io::Write as _;
use std::path::Path;

use crate::brdf::analysis::PlausibilityRow;
use crate::error::{Error, Result};
use crate::overlap::TournamentReport;

/// Serialize a pair ranking as CSV: `rank,error,brdf_a,brdf_b,category`
/// with errors at 6 decimal places. Rows order by descending error;
/// exact ties order by the pair names.
pub fn emit_ranking_csv(report: &TournamentReport) -> Result<String> {
    if report.rows.is_empty() {
        return Err(Error::domain("cannot emit a CSV for an empty ranking".to_string()));
    }
    let mut rows: Vec<_> = report.rows.iter().collect();
    rows.sort_by(|x, y| {
        y.error
            .partial_cmp(&x.error)
            .expect("finite pair errors")
            .then_with(|| x.a.name().cmp(y.a.name()))
            .then_with(|| x.b.name().cmp(y.b.name()))
    });
    let mut out = String::from("rank,error,brdf_a,brdf_b,category\n");
    for (idx, row) in rows.iter().enumerate() {
        out.push_str(&format!(
            "{},{:.6},{},{},{}\n",
            idx + 1,
            row.error,
            row.a.name(),
            row.b.name(),
            row.category.name()
        ));
    }
    Ok(out)
}

/// Write a pair ranking to a CSV file.
pub fn write_ranking_csv(path: impl AsRef<Path>, report: &TournamentReport) -> Result<()> {
    let mut file = fs::File::create(path)?;
    file.write_all(emit_ranking_csv(report)?.as_bytes())?;
    Ok(())
}

/// Serialize plausibility measurements as CSV, one row per model.
pub fn emit_plausibility_csv(rows: &[PlausibilityRow]) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::domain("cannot emit a CSV for an empty report".to_string()));
    }
    let mut out = String::from(
        "model,albedo_max,stderr,reciprocity_max_err,passes_energy,passes_reciprocity,traits,score\n",
    );
    for row in rows {
        let traits = row.model.traits();
        out.push_str(&format!(
            "{},{:.6},{:.6},{:.3e},{},{},{},{}\n",
            row.model.name(),
            row.albedo_max(),
            row.std_error_max(),
            row.reciprocity_error,
            row.energy_ok,
            row.reciprocity_ok,
            traits.label(),
            traits.score()
        ));
    }
    Ok(out)
}

/// Write plausibility measurements to a CSV file.
pub fn write_plausibility_csv(path: impl AsRef<Path>, rows: &[PlausibilityRow]) -> Result<()> {
    let mut file = fs::File::create(path)?;
    file.write_all(emit_plausibility_csv(rows)?.as_bytes())?;
    Ok(())
}
