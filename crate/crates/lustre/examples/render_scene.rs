//! Render one of the 24 preset volume scenes to a PPM image.
//!
//!     cargo run --release --example render_scene -- [preset] [out.ppm]
//!
//! `preset` defaults to 1 (Ward shell, Ashikhmin cortex, He-Torrance
//! blobs); the image defaults to `preset.ppm` in the working
//! directory. The render uses the library defaults: 256×256 pixels,
//! 8 jittered samples per pixel, seed 7, 64³ phantom volumes.

use lustre::img::tone_map;
use lustre::io::write_ppm;
use lustre::volume::{preset_scene, render_composite, RenderSettings};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let preset: usize = args.next().map(|a| a.parse()).transpose()?.unwrap_or(1);
    let out = args.next().unwrap_or_else(|| "preset.ppm".to_string());

    let scene = preset_scene(preset, 64, 42)?;
    let settings = RenderSettings::default();
    eprintln!(
        "rendering preset {preset} at {}x{} with {} samples/pixel ...",
        settings.width, settings.height, settings.samples_per_pixel
    );
    let start = std::time::Instant::now();
    let (image, stats) = render_composite(&scene, &settings)?;
    eprintln!("rendered in {:.1?}", start.elapsed());

    let display = tone_map(&image, 99.5, 2.2)?;
    write_ppm(&out, &display)?;
    println!("wrote {out}");
    println!(
        "silhouette: {:.0} of {} pixels covered",
        stats.union_area(),
        stats.width * stats.height
    );
    for (idx, weights) in stats.object_weight.iter().enumerate() {
        let touched = weights.iter().filter(|&&w| w > 1e-3).count();
        println!("object {idx}: contributes to {touched} pixels");
    }
    Ok(())
}
