//! Row-major RGB float images, shared by flux lattices and renders.

use crate::error::{Error, Result};

/// An RGB image with `f32` channels, rows stored top-down.
///
/// Used both for per-pixel flux lattices (physical units, unbounded)
/// and for display images (after [`tone_map`], in [0, 1]).
#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    width: usize,
    height: usize,
    data: Vec<[f32; 3]>,
}

impl Image {
    /// Black image of the given size.
    pub fn new(width: usize, height: usize) -> Result<Image> {
        if width == 0 || height == 0 {
            return Err(Error::Domain(format!(
                "image dimensions must be positive, got {width}x{height}"
            )));
        }
        Ok(Image {
            width,
            height,
            data: vec![[0.0; 3]; width * height],
        })
    }

    /// Build from existing pixel data (`width·height` entries).
    pub fn from_data(width: usize, height: usize, data: Vec<[f32; 3]>) -> Result<Image> {
        if width == 0 || height == 0 || data.len() != width * height {
            return Err(Error::DimensionMismatch(format!(
                "expected {width}x{height} = {} pixels, got {}",
                width * height,
                data.len()
            )));
        }
        Ok(Image {
            width,
            height,
            data,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixel(&self, x: usize, y: usize) -> [f32; 3] {
        self.data[y * self.width + x]
    }

    pub fn set_pixel(&mut self, x: usize, y: usize, rgb: [f32; 3]) {
        self.data[y * self.width + x] = rgb;
    }

    /// Flat pixel slice, row-major top-down.
    pub fn pixels(&self) -> &[[f32; 3]] {
        &self.data
    }

    /// Mutable rows for disjoint parallel writes.
    pub fn rows_mut(&mut self) -> std::slice::ChunksMut<'_, [f32; 3]> {
        self.data.chunks_mut(self.width)
    }

    /// Largest channel of each pixel, row-major.
    pub fn max_channel(&self) -> Vec<f32> {
        self.data
            .iter()
            .map(|p| p[0].max(p[1]).max(p[2]))
            .collect()
    }

    /// One channel as a scalar field, row-major.
    pub fn channel(&self, band: usize) -> Vec<f32> {
        self.data.iter().map(|p| p[band]).collect()
    }

    /// Coordinates and value of the brightest pixel by largest channel
    /// (first occurrence in row-major order on ties).
    pub fn brightest_pixel(&self) -> (usize, usize, f32) {
        let mut best = (0, 0, f32::NEG_INFINITY);
        for y in 0..self.height {
            for x in 0..self.width {
                let p = self.pixel(x, y);
                let v = p[0].max(p[1]).max(p[2]);
                if v > best.2 {
                    best = (x, y, v);
                }
            }
        }
        best
    }

    /// `true` when every channel of every pixel is finite.
    pub fn is_finite(&self) -> bool {
        self.data.iter().flatten().all(|v| v.is_finite())
    }
}

/// Map a linear-light image to display range: normalize so the given
/// brightness percentile lands at 1.0, clamp, then gamma-encode.
///
/// `percentile` is in (0, 100]; the reference brightness is the
/// per-pixel largest channel. A non-positive reference (all-black
/// image) leaves the scale at one. `gamma` is the display exponent
/// denominator (2.2 encodes with `v^(1/2.2)`).
pub fn tone_map(image: &Image, percentile: f64, gamma: f64) -> Result<Image> {
    if !(0.0..=100.0).contains(&percentile) || percentile == 0.0 {
        return Err(Error::Domain(format!(
            "percentile must be in (0, 100], got {percentile}"
        )));
    }
    if gamma <= 0.0 {
        return Err(Error::Domain(format!("gamma must be positive, got {gamma}")));
    }
    let mut brightness = image.max_channel();
    brightness.sort_by(f32::total_cmp);
    let idx = ((percentile / 100.0 * brightness.len() as f64).ceil() as usize)
        .clamp(1, brightness.len())
        - 1;
    let reference = brightness[idx];
    let scale = if reference > 0.0 {
        1.0 / reference as f64
    } else {
        1.0
    };
    let inv_gamma = 1.0 / gamma;
    let data = image
        .data
        .iter()
        .map(|p| {
            let mut out = [0.0f32; 3];
            for (o, &v) in out.iter_mut().zip(p.iter()) {
                let lin = (v as f64 * scale).clamp(0.0, 1.0);
                *o = lin.powf(inv_gamma) as f32;
            }
            out
        })
        .collect();
    Image::from_data(image.width, image.height, data)
}
