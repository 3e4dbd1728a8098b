//! SVG rendering of 2-D barcodes: one unit cell per grid point, one color
//! per interval, `y` pointing up.

use std::fmt::Write;

use pmod::IntervalSet;

const CELL: i64 = 12;
const MARGIN: i64 = 36;
const LEGEND_WIDTH: i64 = 140;
const LEGEND_ROW: i64 = 18;

const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];

#[derive(Debug, thiserror::Error)]
#[error("rendering needs dimension 2, found {0}")]
pub struct NotPlanar(pub usize);

/// Draws labelled intervals. Output depends only on the input.
pub fn render_svg(layers: &[(String, IntervalSet)]) -> Result<String, NotPlanar> {
    if let Some((_, i)) = layers.iter().find(|(_, i)| i.dim() != 2) {
        return Err(NotPlanar(i.dim()));
    }
    let xy = |i: &IntervalSet, lo: bool| {
        let p = if lo { i.lo() } else { i.hi() };
        (p.coords()[0], p.coords()[1])
    };
    let (x0, y0, x1, y1) = layers.iter().fold((0, 0, 0, 0), |(a, b, c, d), (_, i)| {
        let (lo, hi) = (xy(i, true), xy(i, false));
        (a.min(lo.0), b.min(lo.1), c.max(hi.0), d.max(hi.1))
    });
    let plot_w = (x1 - x0 + 1) * CELL;
    let plot_h = (y1 - y0 + 1) * CELL;
    let legend_h = layers.len() as i64 * LEGEND_ROW;
    let width = plot_w + 2 * MARGIN + LEGEND_WIDTH;
    let height = plot_h.max(legend_h) + 2 * MARGIN;
    // lower-left corner of the cell for (x, y)
    let px = |x: i64| MARGIN + (x - x0) * CELL;
    let py = |y: i64| MARGIN + plot_h - (y - y0 + 1) * CELL;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        s,
        r#"<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>"#
    );

    // axes through the plot's lower-left corner, ticks at the extremes
    let (ax, ay) = (MARGIN, MARGIN + plot_h);
    let _ = writeln!(
        s,
        r#"<g id="axes" stroke="black" stroke-width="1" font-family="monospace" font-size="10">"#
    );
    let _ = writeln!(s, r#"<line x1="{ax}" y1="{ay}" x2="{}" y2="{ay}"/>"#, ax + plot_w);
    let _ = writeln!(s, r#"<line x1="{ax}" y1="{ay}" x2="{ax}" y2="{}"/>"#, ay - plot_h);
    for (x, anchor) in [(x0, "start"), (x1, "end")] {
        let tx = if anchor == "start" { px(x) } else { px(x) + CELL };
        let _ = writeln!(
            s,
            r#"<text x="{tx}" y="{}" stroke="none" text-anchor="{anchor}">{x}</text>"#,
            ay + 14
        );
    }
    for (y, base) in [(y0, py(y0) + CELL), (y1, py(y1) + 10)] {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{base}" stroke="none" text-anchor="end">{y}</text>"#,
            ax - 4
        );
    }
    let _ = writeln!(s, "</g>");

    for (k, (name, interval)) in layers.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let _ = writeln!(
            s,
            r#"<g id="interval-{k}" fill="{color}" fill-opacity="0.55" stroke="{color}" stroke-width="0.5">"#
        );
        let _ = writeln!(s, "<title>{}</title>", escape(name));
        for p in interval.iter() {
            let (x, y) = (p.coords()[0], p.coords()[1]);
            let _ = writeln!(
                s,
                r#"<rect x="{}" y="{}" width="{CELL}" height="{CELL}"/>"#,
                px(x),
                py(y)
            );
        }
        let _ = writeln!(s, "</g>");
    }

    let lx = MARGIN + plot_w + MARGIN / 2;
    let _ = writeln!(s, r#"<g id="legend" font-family="monospace" font-size="11">"#);
    for (k, (name, _)) in layers.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let ly = MARGIN + k as i64 * LEGEND_ROW;
        let _ = writeln!(
            s,
            r#"<rect x="{lx}" y="{ly}" width="{CELL}" height="{CELL}" fill="{color}" fill-opacity="0.55"/>"#
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}">{}</text>"#,
            lx + CELL + 6,
            ly + CELL - 2,
            escape(name)
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    Ok(s)
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}
