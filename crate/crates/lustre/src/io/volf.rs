//! A minimal binary volume container.
//!
//! Layout: 16-byte header — magic `VOLF`, then `nx`, `ny`, `nz` as
//! little-endian `u32` — followed by `nx·ny·nz` little-endian `f32`
//! densities with x varying fastest, then y, then z.
//!
//! The container carries no world-size metadata: volumes load with a
//! voxel spacing of 1.0, and callers that need physical dimensions
//! rescale with [`VoxelGrid::with_world_extent`].

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::volume::VoxelGrid;

const MAGIC: &[u8; 4] = b"VOLF";
const FORMAT: &str = "VOLF";

/// Serialize a voxel grid to container bytes (spacing is not stored).
pub fn encode_volf(grid: &VoxelGrid) -> Vec<u8> {
    let (nx, ny, nz) = grid.dims();
    let mut out = Vec::with_capacity(16 + grid.data().len() * 4);
    out.extend_from_slice(MAGIC);
    for n in [nx, ny, nz] {
        out.extend_from_slice(&(n as u32).to_le_bytes());
    }
    for v in grid.data() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

/// Parse container bytes into a voxel grid with unit spacing.
pub fn decode_volf(bytes: &[u8], path: Option<&Path>) -> Result<VoxelGrid> {
    let err = |msg: String| Error::Format {
        format: FORMAT,
        path: path.map(|p| p.display().to_string()),
        msg,
    };
    if bytes.len() < 16 {
        return Err(err(format!("file holds {} bytes, header needs 16", bytes.len())));
    }
    if &bytes[0..4] != MAGIC {
        return Err(err("bad magic, expected 'VOLF'".to_string()));
    }
    let dim = |off: usize| u32::from_le_bytes(bytes[off..off + 4].try_into().expect("slice size")) as usize;
    let (nx, ny, nz) = (dim(4), dim(8), dim(12));
    let expected = nx
        .checked_mul(ny)
        .and_then(|v| v.checked_mul(nz))
        .and_then(|v| v.checked_mul(4))
        .ok_or_else(|| err(format!("dimensions {nx}x{ny}x{nz} overflow")))?;
    let payload = &bytes[16..];
    if payload.len() != expected {
        return Err(err(format!(
            "payload holds {} bytes, {nx}x{ny}x{nz} needs {expected}",
            payload.len()
        )));
    }
    let data: Vec<f32> = payload
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes(c.try_into().expect("chunk size")))
        .collect();
    VoxelGrid::from_data(nx, ny, nz, 1.0, data)
}

/// Write a voxel grid to a container file.
pub fn write_volf(path: impl AsRef<Path>, grid: &VoxelGrid) -> Result<()> {
    fs::write(path, encode_volf(grid))?;
    Ok(())
}

/// Read a container file into a voxel grid (unit spacing; see the
/// module docs for rescaling).
pub fn read_volf(path: impl AsRef<Path>) -> Result<VoxelGrid> {
    let path = path.as_ref();
    let bytes = fs::read(path)?;
    decode_volf(&bytes, Some(path))
}
