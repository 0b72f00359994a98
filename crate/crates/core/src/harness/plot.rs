use std::fmt::Write as _;

use crate::error::{Error, Result};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 48.0;
const SERIES: [(usize, &str, &str); 3] = [(1, "B_max", "#1f77b4"), (2, "TSR", "#d62728"), (3, "f", "#2ca02c")];

/// Line chart of `B_max`, TSR and `f` against `t` from CSV rows.
pub fn render_svg(rows: &[[f64; 7]]) -> Result<String> {
    if rows.len() < 2 {
        return Err(Error::SeriesTooShort {
            len: rows.len(),
            min: 2,
        });
    }
    let t0 = rows[0][0];
    let t1 = rows[rows.len() - 1][0];
    let span = if t1 > t0 { t1 - t0 } else { 1.0 };
    let y_max = rows
        .iter()
        .flat_map(|r| [r[1], r[2], r[3]])
        .fold(1.0_f64, f64::max);
    let x = |t: f64| MARGIN + (t - t0) / span * (WIDTH - 2.0 * MARGIN);
    let y = |v: f64| HEIGHT - MARGIN - v / y_max * (HEIGHT - 2.0 * MARGIN);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<path d="M{l} {t} V{b} H{r}" fill="none" stroke="black"/>"#,
        l = MARGIN,
        t = MARGIN,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN
    );
    for (label, tx, ty, anchor) in [
        (format!("{t0:.3}"), x(t0), HEIGHT - MARGIN + 16.0, "middle"),
        (format!("{t1:.3}"), x(t1), HEIGHT - MARGIN + 16.0, "middle"),
        ("t".to_string(), WIDTH / 2.0, HEIGHT - 8.0, "middle"),
        ("0".to_string(), MARGIN - 6.0, y(0.0) + 4.0, "end"),
        (format!("{y_max:.3}"), MARGIN - 6.0, y(y_max) + 4.0, "end"),
    ] {
        let _ = writeln!(
            svg,
            r#"<text x="{tx:.2}" y="{ty:.2}" font-size="12" text-anchor="{anchor}">{label}</text>"#
        );
    }
    for (k, (col, name, color)) in SERIES.iter().enumerate() {
        let points: Vec<String> = rows
            .iter()
            .map(|r| format!("{:.2},{:.2}", x(r[0]), y(r[*col])))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
            points.join(" ")
        );
        let ly = MARGIN + 16.0 * k as f64;
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{ly:.2}" font-size="12" fill="{color}">{name}</text>"#,
            WIDTH - MARGIN - 60.0
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
