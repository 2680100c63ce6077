//! Binary PPM (`P6`, 8-bit) display images. Input pixels are expected
//! to be display-ready in `[0, 1]` (already tone mapped); values
//! outside that range clamp.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::img::Image;

/// Serialize a display-ready image to binary PPM bytes.
pub fn encode_ppm(image: &Image) -> Result<Vec<u8>> {
    if image.width() == 0 || image.height() == 0 {
        return Err(Error::domain("cannot encode an empty image as PPM".to_string()));
    }
    let mut out = Vec::with_capacity(24 + image.width() * image.height() * 3);
    out.extend_from_slice(format!("P6\n{} {}\n255\n", image.width(), image.height()).as_bytes());
    for px in image.pixels() {
        for band in px {
            out.push((band.clamp(0.0, 1.0) * 255.0).round() as u8);
        }
    }
    Ok(out)
}

/// Write a display-ready image to a PPM file.
pub fn write_ppm(path: impl AsRef<Path>, image: &Image) -> Result<()> {
    fs::write(path, encode_ppm(image)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_payload_have_the_documented_shape() {
        let img = Image::from_data(2, 1, vec![[0.0, 0.5, 1.0], [2.0, -1.0, 0.25]]).unwrap();
        let bytes = encode_ppm(&img).unwrap();
        let header = b"P6\n2 1\n255\n";
        assert_eq!(&bytes[..header.len()], header);
        assert_eq!(&bytes[header.len()..], &[0, 128, 255, 255, 0, 64]);
    }

    #[test]
    fn out_of_range_values_clamp_instead_of_wrapping() {
        let img = Image::from_data(1, 1, vec![[1e9, -1e9, f32::NAN]]).unwrap();
        let bytes = encode_ppm(&img).unwrap();
        let px = &bytes[bytes.len() - 3..];
        assert_eq!(px[0], 255);
        assert_eq!(px[1], 0);
    }

    #[test]
    fn writes_to_disk() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("img.ppm");
        let img = Image::from_data(3, 2, vec![[0.5; 3]; 6]).unwrap();
        write_ppm(&path, &img).unwrap();
        assert_eq!(fs::read(&path).unwrap().len(), "P6\n3 2\n255\n".len() + 18);
    }
}
