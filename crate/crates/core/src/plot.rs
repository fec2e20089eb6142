//! Minimal deterministic SVG line charts.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 64.0;
const TICKS: usize = 5;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    /// Draw as a closed outline instead of an open line.
    pub closed: bool,
    /// Draw markers instead of a line.
    pub markers: bool,
}

impl Series {
    pub fn line(label: impl Into<String>, points: Vec<(f64, f64)>) -> Self {
        Self {
            label: label.into(),
            points,
            closed: false,
            markers: false,
        }
    }

    pub fn outline(label: impl Into<String>, points: Vec<(f64, f64)>) -> Self {
        Self {
            closed: true,
            ..Self::line(label, points)
        }
    }

    pub fn scatter(label: impl Into<String>, points: Vec<(f64, f64)>) -> Self {
        Self {
            markers: true,
            ..Self::line(label, points)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Axes {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    /// Same scale on both axes.
    pub equal_aspect: bool,
}

impl Axes {
    pub fn new(title: &str, x_label: &str, y_label: &str) -> Self {
        Self {
            title: title.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            equal_aspect: false,
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn bounds(series: &[Series]) -> (f64, f64, f64, f64) {
    let pts = series.iter().flat_map(|s| s.points.iter());
    let (mut x0, mut x1, mut y0, mut y1) = pts.fold(
        (
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
        ),
        |(a, b, c, d), &(x, y)| (a.min(x), b.max(x), c.min(y), d.max(y)),
    );
    if x1 - x0 <= 0.0 {
        x0 -= 0.5;
        x1 += 0.5;
    }
    if y1 - y0 <= 0.0 {
        y0 -= 0.5;
        y1 += 0.5;
    }
    (x0, x1, y0, y1)
}

/// Renders `series` on shared axes. Output depends only on the inputs.
pub fn render_svg(series: &[Series], axes: &Axes) -> Result<String> {
    if series.is_empty() {
        return Err(Error::domain("nothing to plot: no series"));
    }
    if let Some(s) = series.iter().find(|s| s.points.is_empty()) {
        return Err(Error::domain(format!("series `{}` has no points", s.label)));
    }
    if series
        .iter()
        .flat_map(|s| &s.points)
        .any(|(x, y)| !x.is_finite() || !y.is_finite())
    {
        return Err(Error::domain("series contain non-finite values"));
    }

    let (x0, x1, y0, y1) = bounds(series);
    let plot_w = WIDTH - 2.0 * MARGIN;
    let plot_h = HEIGHT - 2.0 * MARGIN;
    let (mut sx, mut sy) = (plot_w / (x1 - x0), plot_h / (y1 - y0));
    if axes.equal_aspect {
        let s = sx.min(sy);
        sx = s;
        sy = s;
    }
    let px = |x: f64| MARGIN + (x - x0) * sx;
    let py = |y: f64| HEIGHT - MARGIN - (y - y0) * sy;

    let mut svg = String::new();
    // Writing to a String cannot fail.
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle" font-size="14">{}</text>"#,
        WIDTH / 2.0,
        MARGIN / 2.0,
        escape(&axes.title)
    );
    let _ = writeln!(
        svg,
        r#"<rect x="{MARGIN:.1}" y="{MARGIN:.1}" width="{plot_w:.1}" height="{plot_h:.1}" fill="none" stroke="black"/>"#
    );
    for i in 0..=TICKS {
        let f = i as f64 / TICKS as f64;
        let (xv, yv) = (x0 + f * (x1 - x0), y0 + f * (y1 - y0));
        let (tx, ty) = (MARGIN + f * plot_w, HEIGHT - MARGIN - f * plot_h);
        let _ = writeln!(
            svg,
            r#"<text x="{tx:.1}" y="{:.1}" text-anchor="middle">{xv:.4e}</text>"#,
            HEIGHT - MARGIN + 16.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{ty:.1}" text-anchor="end">{yv:.4e}</text>"#,
            MARGIN - 4.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 16.0,
        escape(&axes.x_label)
    );
    let _ = writeln!(
        svg,
        r#"<text x="16" y="{:.1}" text-anchor="middle" transform="rotate(-90 16 {:.1})">{}</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0,
        escape(&axes.y_label)
    );

    for (i, s) in series.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        if s.markers {
            for &(x, y) in &s.points {
                let _ = writeln!(
                    svg,
                    r#"<circle cx="{:.3}" cy="{:.3}" r="3" fill="{colour}"/>"#,
                    px(x),
                    py(y)
                );
            }
        } else {
            let coords = s
                .points
                .iter()
                .map(|&(x, y)| format!("{:.3},{:.3}", px(x), py(y)))
                .collect::<Vec<_>>()
                .join(" ");
            let tag = if s.closed { "polygon" } else { "polyline" };
            let _ = writeln!(
                svg,
                r#"<{tag} fill="none" stroke="{colour}" stroke-width="1.5" points="{coords}"/>"#
            );
        }
        let ly = MARGIN + 16.0 + 16.0 * i as f64;
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{ly:.1}" fill="{colour}">{}</text>"#,
            MARGIN + 8.0,
            escape(&s.label)
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Renders and writes an SVG chart to `path`.
pub fn emit_plot(series: &[Series], axes: &Axes, path: &Path) -> Result<()> {
    let svg = render_svg(series, axes)?;
    std::fs::write(path, svg).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axes() -> Axes {
        Axes::new("t", "x", "y")
    }

    #[test]
    fn one_series_one_polyline() {
        let svg = render_svg(&[Series::line("a", vec![(0.0, 0.0), (1.0, 2.0)])], &axes()).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(render_svg(&[], &axes()).is_err());
        assert!(render_svg(&[Series::line("a", vec![])], &axes()).is_err());
        assert!(render_svg(&[Series::line("a", vec![(f64::NAN, 0.0)])], &axes()).is_err());
    }

    #[test]
    fn rendering_is_deterministic() {
        let s = [
            Series::line("a", vec![(0.0, 1.0), (2.0, 3.5)]),
            Series::scatter("b", vec![(1.0, 1.0)]),
            Series::outline("c", vec![(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]),
        ];
        let a = render_svg(&s, &axes()).unwrap();
        assert_eq!(a, render_svg(&s, &axes()).unwrap());
        assert_eq!(a.matches("<circle").count(), 1);
        assert_eq!(a.matches("<polygon").count(), 1);
    }

    #[test]
    fn labels_are_escaped() {
        let svg = render_svg(&[Series::line("a<b", vec![(0.0, 0.0)])], &axes()).unwrap();
        assert!(svg.contains("a&lt;b"));
    }

    #[test]
    fn writes_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.svg");
        emit_plot(
            &[Series::line("a", vec![(0.0, 0.0), (1.0, 1.0)])],
            &axes(),
            &path,
        )
        .unwrap();
        assert!(std::fs::read_to_string(path).unwrap().contains("<polyline"));
        let bad = dir.path().join("missing").join("p.svg");
        assert!(matches!(
            emit_plot(&[Series::line("a", vec![(0.0, 0.0)])], &axes(), &bad),
            Err(Error::Io { .. })
        ));
    }
}
