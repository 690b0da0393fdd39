//! Ovals of (x² + y² − 4ε)(x² + 2y² − ε) = δ at several grid resolutions,
//! with an SVG dump of the finest one.
//!
//!     cargo run --example x9_ovals -- ovals.svg

use rimcert::lcurve::{x9_ovals, Window};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let window = Window::square(-0.3, 0.3);
    let mut last = None;
    for res in [256, 512, 1024] {
        let r = x9_ovals(0.01, 1e-7, window, res)?;
        let areas: Vec<String> = r.components.iter().map(|c| format!("{:.5}", c.area.abs())).collect();
        println!(
            "{res:>5}²: {} component(s), areas [{}], nested: {}",
            r.component_count,
            areas.join(", "),
            r.nested_pair
        );
        last = Some(r);
    }
    if let (Some(path), Some(r)) = (std::env::args().nth(1), last) {
        std::fs::write(&path, r.to_svg(600))?;
        println!("wrote {path}");
    }
    Ok(())
}
