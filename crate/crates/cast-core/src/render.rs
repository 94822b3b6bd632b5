//! Deterministic SVG rendering of patches.
//!
//! Output is byte-stable for identical inputs: tiles are emitted in patch
//! order, coordinates are rounded half-even at a fixed number of decimals,
//! and colors derive from a stable hash of the prototile id.

use crate::error::CastError;
use crate::tiling::{Patch, RuleSet};

#[derive(Clone, Debug)]
pub struct RenderSpec {
    /// Decimal places for coordinates (default 6).
    pub precision: usize,
    /// Stroke width in viewport units.
    pub stroke_width: f64,
    /// Padding fraction of the bounding box.
    pub margin: f64,
    /// Explicit fill colors by prototile id; anything missing gets a stable
    /// hashed palette color.
    pub palette: Vec<(String, String)>,
    /// Draw chirality tip marks where prototiles define them.
    pub tip_marks: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec { precision: 6, stroke_width: 0.02, margin: 0.05, palette: Vec::new(), tip_marks: true }
    }
}

/// FNV-1a, for stable palette assignment.
fn stable_hash(s: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in s.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn palette_color(id: &str) -> String {
    let h = stable_hash(id);
    let hue = (h % 360) as f64;
    let sat = 55 + (h >> 9) % 25;
    let light = 55 + (h >> 17) % 20;
    format!("hsl({:.0},{}%,{}%)", hue, sat, light)
}

/// Round half-even at `prec` decimals, formatted without scientific
/// notation; negative zero collapses to zero.
fn fmt_coord(v: f64, prec: usize) -> String {
    let scale = 10f64.powi(prec as i32);
    let scaled = v * scale;
    let floor = scaled.floor();
    let frac = scaled - floor;
    let rounded = if (frac - 0.5).abs() < 1e-9 {
        // ties to even
        if (floor as i64) % 2 == 0 {
            floor
        } else {
            floor + 1.0
        }
    } else {
        scaled.round()
    };
    let mut out = format!("{:.*}", prec, rounded / scale);
    if out.starts_with("-0.") && out[3..].chars().all(|c| c == '0') {
        out = out[1..].to_string();
    }
    out
}

/// Render a patch to a standalone SVG document.
pub fn render_svg(rs: &RuleSet, patch: &Patch, spec: &RenderSpec) -> Result<String, CastError> {
    let mut polys = Vec::new();
    let mut tips = Vec::new();
    for tile in &patch.tiles {
        let poly = rs.placed_polygon(&tile.id, &tile.placement, tile.bisected)?;
        let pts: Vec<(f64, f64)> = poly
            .iter()
            .map(|v| {
                let (x, y) = v.embed_f64();
                (x, -y) // SVG y grows downward
            })
            .collect();
        if spec.tip_marks && tile.bisected.is_none() {
            if let Some(tipidx) = rs.prototile(&tile.id)?.tip {
                let v = tile.placement.apply(&rs.prototile(&tile.id)?.vertices[tipidx]);
                let (x, y) = v.embed_f64();
                tips.push((x, -y));
            }
        }
        polys.push((tile.id.clone(), pts));
    }
    // bounding box
    let mut min = (f64::MAX, f64::MAX);
    let mut max = (f64::MIN, f64::MIN);
    for (_, pts) in &polys {
        for &(x, y) in pts {
            min.0 = min.0.min(x);
            min.1 = min.1.min(y);
            max.0 = max.0.max(x);
            max.1 = max.1.max(y);
        }
    }
    if polys.is_empty() {
        min = (0.0, 0.0);
        max = (1.0, 1.0);
    }
    let w = (max.0 - min.0).max(1e-9);
    let h = (max.1 - min.1).max(1e-9);
    let pad = spec.margin * w.max(h);
    let p = spec.precision;
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n",
        fmt_coord(min.0 - pad, p),
        fmt_coord(min.1 - pad, p),
        fmt_coord(w + 2.0 * pad, p),
        fmt_coord(h + 2.0 * pad, p)
    ));
    out.push_str(&format!(
        "<g stroke=\"#222\" stroke-width=\"{}\" stroke-linejoin=\"round\">\n",
        fmt_coord(spec.stroke_width, p)
    ));
    for (id, pts) in &polys {
        let fill = spec
            .palette
            .iter()
            .find(|(pid, _)| pid == id)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| palette_color(id));
        let d: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{},{}", fmt_coord(x, p), fmt_coord(y, p)))
            .collect();
        out.push_str(&format!("<polygon fill=\"{}\" points=\"{}\"/>\n", fill, d.join(" ")));
    }
    out.push_str("</g>\n");
    if spec.tip_marks && !tips.is_empty() {
        let r = fmt_coord(0.07, p);
        out.push_str("<g fill=\"#111\" stroke=\"none\">\n");
        for (x, y) in tips {
            out.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>\n",
                fmt_coord(x, p),
                fmt_coord(y, p),
                r
            ));
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}
