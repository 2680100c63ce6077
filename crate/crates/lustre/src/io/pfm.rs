//! Portable FloatMap (PFM) images: the interchange format for flux
//! lattices. Color variant only (`PF`), little-endian (negative scale),
//! rows stored bottom-up. Pixel float bits survive a write/read round
//! trip exactly.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::img::Image;

const FORMAT: &str = "PFM";

/// Serialize an image to PFM bytes.
pub fn encode_pfm(image: &Image) -> Result<Vec<u8>> {
    if image.width() == 0 || image.height() == 0 {
        return Err(Error::domain("cannot encode an empty image as PFM".to_string()));
    }
    let mut out = Vec::with_capacity(32 + image.width() * image.height() * 12);
    out.extend_from_slice(format!("PF\n{} {}\n-1.0\n", image.width(), image.height()).as_bytes());
    // Bottom row first.
    for y in (0..image.height()).rev() {
        for x in 0..image.width() {
            let p = image.pixel(x, y);
            for band in p {
                out.extend_from_slice(&band.to_le_bytes());
            }
        }
    }
    Ok(out)
}

/// Parse PFM bytes into an image. `path` is used only in error text.
pub fn decode_pfm(bytes: &[u8], path: Option<&Path>) -> Result<Image> {
    let err = |msg: String| Error::Format {
        format: FORMAT,
        path: path.map(|p| p.display().to_string()),
        msg,
    };
    let mut cursor = 0usize;
    let mut token = || -> Result<String> {
        while cursor < bytes.len() && bytes[cursor].is_ascii_whitespace() {
            cursor += 1;
        }
        let start = cursor;
        while cursor < bytes.len() && !bytes[cursor].is_ascii_whitespace() {
            cursor += 1;
        }
        if start == cursor {
            return Err(err("truncated header".to_string()));
        }
        // Consume exactly one whitespace byte after the token (the
        // header/payload separator is a single byte by convention).
        cursor += 1;
        Ok(String::from_utf8_lossy(&bytes[start..cursor - 1]).into_owned())
    };

    let magic = token()?;
    if magic != "PF" {
        return Err(err(format!("expected magic 'PF', found '{magic}'")));
    }
    let width: usize = token()?
        .parse()
        .map_err(|_| err("width is not an integer".to_string()))?;
    let height: usize = token()?
        .parse()
        .map_err(|_| err("height is not an integer".to_string()))?;
    let scale: f64 = token()?
        .parse()
        .map_err(|_| err("scale is not a number".to_string()))?;
    if width == 0 || height == 0 {
        return Err(err(format!("degenerate size {width}x{height}")));
    }
    if scale >= 0.0 {
        return Err(err("big-endian PFM (non-negative scale) is not supported".to_string()));
    }

    let payload = &bytes[cursor..];
    let expected = width * height * 12;
    if payload.len() != expected {
        return Err(err(format!(
            "payload holds {} bytes, expected {expected}",
            payload.len()
        )));
    }
    let mut data = vec![[0.0_f32; 3]; width * height];
    for (row_idx, row) in payload.chunks_exact(width * 12).enumerate() {
        let y = height - 1 - row_idx;
        for (x, px) in row.chunks_exact(12).enumerate() {
            data[y * width + x] = [
                f32::from_le_bytes(px[0..4].try_into().expect("chunk size")),
                f32::from_le_bytes(px[4..8].try_into().expect("chunk size")),
                f32::from_le_bytes(px[8..12].try_into().expect("chunk size")),
            ];
        }
    }
    Image::from_data(width, height, data)
}

/// Write an image to a PFM file.
pub fn write_pfm(path: impl AsRef<Path>, image: &Image) -> Result<()> {
    fs::write(path, encode_pfm(image)?)?;
    Ok(())
}

/// Read a PFM file into an image.
pub fn read_pfm(path: impl AsRef<Path>) -> Result<Image> {
    let path = path.as_ref();
    let bytes = fs::read(path)?;
    decode_pfm(&bytes, Some(path))
}
