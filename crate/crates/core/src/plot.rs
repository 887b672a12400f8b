//! Dependency-free SVG bar and pie charts.
//!
//! Output is a pure function of the input: coordinates are printed with a
//! fixed number of decimals and nothing time- or locale-dependent is
//! written, so the same report always renders to the same bytes.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::analytics::{DistributionReport, PolarityLabel, SubjectivityHistogram, WordRanking};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const FONT: &str = "font-family=\"sans-serif\"";

pub fn label_color(label: PolarityLabel) -> &'static str {
    match label {
        PolarityLabel::Positive => "#2e7d32",
        PolarityLabel::Neutral => "#9e9e9e",
        PolarityLabel::Negative => "#c62828",
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn header(title: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">",
        w = WIDTH,
        h = HEIGHT
    );
    let _ = writeln!(s, "<rect x=\"0\" y=\"0\" width=\"{WIDTH:.0}\" height=\"{HEIGHT:.0}\" fill=\"#ffffff\"/>");
    let _ = writeln!(
        s,
        "<text x=\"{:.2}\" y=\"24.00\" {FONT} font-size=\"16\" text-anchor=\"middle\">{}</text>",
        WIDTH / 2.0,
        escape(title)
    );
    s
}

/// One bar of a bar chart.
#[derive(Debug, Clone, PartialEq)]
pub struct Bar {
    pub label: String,
    pub value: f64,
    pub color: String,
}

/// Vertical bar chart. With `rotate_labels` the category labels are drawn
/// at 45 degrees, for long lists of words.
pub fn bar_chart(title: &str, bars: &[Bar], value_decimals: usize, rotate_labels: bool) -> String {
    let left = 56.0;
    let right = 16.0;
    let top = 44.0;
    let bottom = if rotate_labels { 110.0 } else { 48.0 };
    let plot_w = WIDTH - left - right;
    let plot_h = HEIGHT - top - bottom;
    let max = bars.iter().map(|b| b.value).fold(0.0, f64::max);
    let mut s = header(title);
    let _ = writeln!(
        s,
        "<line x1=\"{left:.2}\" y1=\"{y:.2}\" x2=\"{x2:.2}\" y2=\"{y:.2}\" stroke=\"#333333\"/>",
        y = top + plot_h,
        x2 = left + plot_w
    );
    let _ = writeln!(
        s,
        "<line x1=\"{left:.2}\" y1=\"{top:.2}\" x2=\"{left:.2}\" y2=\"{y:.2}\" stroke=\"#333333\"/>",
        y = top + plot_h
    );
    if bars.is_empty() {
        let _ = writeln!(
            s,
            "<text x=\"{:.2}\" y=\"{:.2}\" {FONT} font-size=\"14\" text-anchor=\"middle\" fill=\"#666666\">no data</text>",
            left + plot_w / 2.0,
            top + plot_h / 2.0
        );
    }
    let slot = if bars.is_empty() { 0.0 } else { plot_w / bars.len() as f64 };
    for (i, b) in bars.iter().enumerate() {
        let h = if max > 0.0 { b.value / max * plot_h } else { 0.0 };
        let x = left + slot * i as f64 + slot * 0.1;
        let w = slot * 0.8;
        let y = top + plot_h - h;
        let cx = x + w / 2.0;
        let _ = writeln!(
            s,
            "<rect x=\"{x:.2}\" y=\"{y:.2}\" width=\"{w:.2}\" height=\"{h:.2}\" fill=\"{}\"/>",
            b.color
        );
        let _ = writeln!(
            s,
            "<text x=\"{cx:.2}\" y=\"{:.2}\" {FONT} font-size=\"10\" text-anchor=\"middle\">{:.*}</text>",
            y - 4.0,
            value_decimals,
            b.value
        );
        let ly = top + plot_h + 14.0;
        if rotate_labels {
            let _ = writeln!(
                s,
                "<text x=\"{cx:.2}\" y=\"{ly:.2}\" {FONT} font-size=\"10\" text-anchor=\"end\" transform=\"rotate(-45 {cx:.2} {ly:.2})\">{}</text>",
                escape(&b.label)
            );
        } else {
            let _ = writeln!(
                s,
                "<text x=\"{cx:.2}\" y=\"{ly:.2}\" {FONT} font-size=\"11\" text-anchor=\"middle\">{}</text>",
                escape(&b.label)
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

/// Wedge sweep angles in degrees, in input order. Empty when every value
/// is zero.
pub fn wedge_angles(values: &[f64]) -> Vec<f64> {
    let total = values.iter().fold(0.0, |acc, v| acc + v);
    if total <= 0.0 {
        return Vec::new();
    }
    values.iter().map(|v| v / total * 360.0).collect()
}

/// Pie chart with a legend. An all-zero input draws a dashed "empty"
/// placeholder circle instead of wedges.
pub fn pie_chart(title: &str, slices: &[Bar]) -> String {
    let (cx, cy, r) = (230.0, 220.0, 150.0);
    let mut s = header(title);
    let values: Vec<f64> = slices.iter().map(|b| b.value).collect();
    let angles = wedge_angles(&values);
    if angles.is_empty() {
        let _ = writeln!(
            s,
            "<circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"{r:.2}\" fill=\"none\" stroke=\"#999999\" stroke-dasharray=\"6 4\"/>"
        );
        let _ = writeln!(
            s,
            "<text x=\"{cx:.2}\" y=\"{cy:.2}\" {FONT} font-size=\"16\" text-anchor=\"middle\" fill=\"#666666\">empty</text>"
        );
    } else {
        let point = |deg: f64| {
            let rad = (deg - 90.0) * PI / 180.0;
            (cx + r * rad.cos(), cy + r * rad.sin())
        };
        let mut start = 0.0;
        for (b, sweep) in slices.iter().zip(&angles) {
            if *sweep <= 0.0 {
                continue;
            }
            if *sweep >= 360.0 - 1e-9 {
                let _ = writeln!(s, "<circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"{r:.2}\" fill=\"{}\"/>", b.color);
            } else {
                let (x0, y0) = point(start);
                let (x1, y1) = point(start + sweep);
                let large = if *sweep > 180.0 { 1 } else { 0 };
                let _ = writeln!(
                    s,
                    "<path d=\"M {cx:.2} {cy:.2} L {x0:.2} {y0:.2} A {r:.2} {r:.2} 0 {large} 1 {x1:.2} {y1:.2} Z\" fill=\"{}\" stroke=\"#ffffff\"/>",
                    b.color
                );
            }
            start += sweep;
        }
    }
    for (i, b) in slices.iter().enumerate() {
        let y = 150.0 + 28.0 * i as f64;
        let _ = writeln!(s, "<rect x=\"430.00\" y=\"{:.2}\" width=\"14.00\" height=\"14.00\" fill=\"{}\"/>", y - 11.0, b.color);
        let _ = writeln!(
            s,
            "<text x=\"452.00\" y=\"{y:.2}\" {FONT} font-size=\"13\">{} {:.1}%</text>",
            escape(&b.label),
            b.value * 100.0
        );
    }
    s.push_str("</svg>\n");
    s
}

fn distribution_bars(d: &DistributionReport, counts: bool) -> Vec<Bar> {
    PolarityLabel::ALL
        .iter()
        .map(|&l| Bar {
            label: l.to_string(),
            value: if counts { d.counts.get(l) as f64 } else { d.proportions.get(l) },
            color: label_color(l).to_string(),
        })
        .collect()
}

pub fn distribution_bar(d: &DistributionReport) -> String {
    bar_chart(&format!("Sentiment distribution: {}", d.engine), &distribution_bars(d, true), 0, false)
}

pub fn distribution_pie(d: &DistributionReport) -> String {
    pie_chart(&format!("Sentiment distribution: {}", d.engine), &distribution_bars(d, false))
}

pub fn histogram_bar(h: &SubjectivityHistogram) -> String {
    let bars: Vec<Bar> = h
        .counts
        .iter()
        .enumerate()
        .map(|(i, c)| Bar {
            label: format!("{:.1}-{:.1}", h.bin_edges[i], h.bin_edges[i + 1]),
            value: *c as f64,
            color: "#1565c0".to_string(),
        })
        .collect();
    bar_chart("Subjectivity distribution", &bars, 0, false)
}

pub fn ranking_bar(r: &WordRanking) -> String {
    let color = label_color(r.side.label());
    let bars: Vec<Bar> = r
        .entries
        .iter()
        .map(|(w, c)| Bar {
            label: w.clone(),
            value: *c as f64,
            color: color.to_string(),
        })
        .collect();
    bar_chart(&format!("Top {} words: {}", r.side, r.engine), &bars, 0, true)
}
