//! SVG stem plot of the weight function.
//!
//! Output is a pure function of the analysis and options, with coordinates
//! printed at fixed precision, so equal inputs give byte-identical files.

use std::fmt::Write;
use std::str::FromStr;

use coarray_core::CoarrayAnalysis;
use thiserror::Error;

pub const MIN_SIZE: u32 = 100;

const MARGIN_LEFT: f64 = 64.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 36.0;
const MARGIN_BOTTOM: f64 = 56.0;
const STEM_COLOR: &str = "#1f4fd1";
const HOLE_COLOR: &str = "#d62728";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TickStep {
    Auto,
    Every(u32),
}

impl FromStr for TickStep {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(TickStep::Auto);
        }
        match s.parse::<u32>() {
            Ok(0) | Err(_) => Err(format!("tick step must be 'auto' or a positive integer, got '{s}'")),
            Ok(n) => Ok(TickStep::Every(n)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("plot width and height must be at least {MIN_SIZE} pixels, got {width}x{height}")]
    TooSmall { width: u32, height: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderOptions {
    width: u32,
    height: u32,
    pub tick_step: TickStep,
    pub highlight_holes: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            width: 800,
            height: 480,
            tick_step: TickStep::Auto,
            highlight_holes: true,
        }
    }
}

impl RenderOptions {
    pub fn new(
        width: u32,
        height: u32,
        tick_step: TickStep,
        highlight_holes: bool,
    ) -> Result<Self, RenderError> {
        if width < MIN_SIZE || height < MIN_SIZE {
            return Err(RenderError::TooSmall { width, height });
        }
        Ok(RenderOptions {
            width,
            height,
            tick_step,
            highlight_holes,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }
}

/// Rounds `raw` up to the next value in 1, 2, 5, 10, 20, 50, …
pub fn nice_step(raw: u64) -> u64 {
    let mut decade = 1u64;
    loop {
        for m in [1, 2, 5] {
            if m * decade >= raw {
                return m * decade;
            }
        }
        decade *= 10;
    }
}

/// max(1, round(span / 8)) snapped up to a nice number.
pub fn auto_step(span: u64) -> u64 {
    nice_step(((span + 4) / 8).max(1))
}

/// Multiples of `step` within [lo, hi].
fn ticks(lo: i64, hi: i64, step: u64) -> Vec<i64> {
    let step = step as i64;
    let first = lo.div_euclid(step) * step;
    let first = if first < lo { first + step } else { first };
    (0..)
        .map(|k| first + k * step)
        .take_while(|&t| t <= hi)
        .collect()
}

pub fn render_stem_svg(analysis: &CoarrayAnalysis, opts: &RenderOptions) -> String {
    let (w, h) = (f64::from(opts.width), f64::from(opts.height));
    let a = analysis.aperture() as i64;
    let n = analysis.sensor_count() as u64;
    // a single sensor still needs a nonzero x span
    let x_half = a.max(1) as f64;
    let plot_w = w - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = h - MARGIN_TOP - MARGIN_BOTTOM;
    let x_of = |lag: i64| MARGIN_LEFT + (lag as f64 + x_half) / (2.0 * x_half) * plot_w;
    let y_of = |weight: u64| MARGIN_TOP + plot_h - weight as f64 / n as f64 * plot_h;
    let (x0, x1) = (MARGIN_LEFT, MARGIN_LEFT + plot_w);
    let (y0, y1) = (MARGIN_TOP, MARGIN_TOP + plot_h);

    let x_step = match opts.tick_step {
        TickStep::Auto => auto_step(a as u64),
        TickStep::Every(s) => u64::from(s),
    };
    let y_step = auto_step(n);
    let x_ticks = ticks(-x_half as i64, x_half as i64, x_step);
    let y_ticks = ticks(0, n as i64, y_step);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}" font-family="sans-serif" font-size="12">"#,
        opts.width, opts.height, opts.width, opts.height
    );
    let _ = writeln!(s, r#"<rect width="{}" height="{}" fill="white"/>"#, opts.width, opts.height);

    s.push_str("<g class=\"grid\" stroke=\"#e3e3e3\" stroke-width=\"1\">\n");
    for &t in &x_ticks {
        let x = x_of(t);
        let _ = writeln!(s, r#"<line x1="{x:.2}" y1="{y0:.2}" x2="{x:.2}" y2="{y1:.2}"/>"#);
    }
    for &t in &y_ticks {
        let y = y_of(t as u64);
        let _ = writeln!(s, r#"<line x1="{x0:.2}" y1="{y:.2}" x2="{x1:.2}" y2="{y:.2}"/>"#);
    }
    s.push_str("</g>\n");

    let _ = writeln!(
        s,
        r#"<rect class="axes" x="{x0:.2}" y="{y0:.2}" width="{plot_w:.2}" height="{plot_h:.2}" fill="none" stroke="black" stroke-width="1"/>"#
    );

    s.push_str("<g class=\"xticks\" text-anchor=\"middle\">\n");
    for &t in &x_ticks {
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}">{t}</text>"#, x_of(t), y1 + 16.0);
    }
    s.push_str("</g>\n<g class=\"yticks\" text-anchor=\"end\">\n");
    for &t in &y_ticks {
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}">{t}</text>"#, x0 - 6.0, y_of(t as u64) + 4.0);
    }
    s.push_str("</g>\n");

    let base = y_of(0);
    let _ = writeln!(
        s,
        r#"<g class="stems" stroke="{STEM_COLOR}" stroke-width="1.5" fill="none">"#
    );
    for lw in analysis.weight_function().iter().filter(|lw| lw.weight > 0) {
        let x = x_of(lw.lag);
        let y = y_of(u64::from(lw.weight));
        let _ = writeln!(
            s,
            r#"<g class="stem" data-lag="{}" data-weight="{}"><line x1="{x:.2}" y1="{base:.2}" x2="{x:.2}" y2="{y:.2}"/><circle cx="{x:.2}" cy="{y:.2}" r="3.5"/></g>"#,
            lw.lag, lw.weight
        );
    }
    s.push_str("</g>\n");

    if opts.highlight_holes && !analysis.holes().is_empty() {
        let _ = writeln!(
            s,
            r#"<g class="holes" stroke="{HOLE_COLOR}" stroke-width="1.5">"#
        );
        for &lag in analysis.holes() {
            let x = x_of(lag);
            let r = 3.5;
            let _ = writeln!(
                s,
                r#"<path class="hole" data-lag="{lag}" d="M{:.2} {:.2}L{:.2} {:.2}M{:.2} {:.2}L{:.2} {:.2}"/>"#,
                x - r,
                base - r,
                x + r,
                base + r,
                x - r,
                base + r,
                x + r,
                base - r
            );
        }
        s.push_str("</g>\n");
    }

    let _ = writeln!(
        s,
        r#"<text class="xlabel" x="{:.2}" y="{:.2}" text-anchor="middle" font-size="14">Spatial lags m</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        h - 14.0
    );
    let (lx, ly) = (18.0, MARGIN_TOP + plot_h / 2.0);
    let _ = writeln!(
        s,
        r#"<text class="ylabel" x="{lx:.2}" y="{ly:.2}" text-anchor="middle" font-size="14" transform="rotate(-90 {lx:.2} {ly:.2})">Weights w(m)</text>"#
    );
    let _ = writeln!(
        s,
        r#"<text class="status" x="{:.2}" y="{:.2}" text-anchor="middle" font-size="14">{}</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        MARGIN_TOP - 12.0,
        analysis.status()
    );
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use coarray_core::{analyze, SensorArray};

    fn svg(p: &[i64]) -> String {
        render_stem_svg(
            &analyze(&SensorArray::new(p.to_vec()).unwrap()),
            &RenderOptions::default(),
        )
    }

    fn count(s: &str, pat: &str) -> usize {
        s.matches(pat).count()
    }

    #[test]
    fn mra4_has_13_stems_no_holes() {
        let s = svg(&[0, 1, 4, 6]);
        assert_eq!(count(&s, r#"class="stem""#), 13);
        assert_eq!(count(&s, r#"class="hole""#), 0);
        assert!(s.contains(">Spatial lags m<"));
        assert!(s.contains(">Weights w(m)<"));
    }

    #[test]
    fn alternate_grid_marks_odd_lags() {
        let s = svg(&[0, 2, 4, 6, 8, 10, 12, 14]);
        assert_eq!(count(&s, r#"class="hole""#), 14);
        for m in [-13, -11, -9, -7, -5, -3, -1, 1, 3, 5, 7, 9, 11, 13] {
            assert!(s.contains(&format!(r#"class="hole" data-lag="{m}""#)), "{m}");
        }
        assert_eq!(count(&s, r#"class="stem""#), 15);
    }

    #[test]
    fn holes_can_be_hidden() {
        let an = analyze(&SensorArray::new(vec![0, 2, 4]).unwrap());
        let opts = RenderOptions::new(300, 200, TickStep::Every(1), false).unwrap();
        assert_eq!(count(&render_stem_svg(&an, &opts), r#"class="hole""#), 0);
    }

    #[test]
    fn single_sensor() {
        let s = svg(&[0]);
        assert_eq!(count(&s, r#"class="stem""#), 1);
        assert!(s.contains(r#"data-lag="0" data-weight="1""#));
        // full-height stem: top of the plot area
        assert!(s.contains(&format!(r#"cy="{MARGIN_TOP:.2}""#)));
    }

    #[test]
    fn deterministic() {
        assert_eq!(svg(&[-7, -4, 0, 5, 10, 15, 20, 25, 28, 31]), svg(&[-7, -4, 0, 5, 10, 15, 20, 25, 28, 31]));
    }

    #[test]
    fn size_validation() {
        assert!(RenderOptions::new(99, 300, TickStep::Auto, true).is_err());
        assert!(RenderOptions::new(100, 100, TickStep::Auto, true).is_ok());
    }

    #[test]
    fn tick_steps() {
        assert_eq!(auto_step(0), 1);
        assert_eq!(auto_step(6), 1);
        assert_eq!(auto_step(14), 2);
        assert_eq!(auto_step(38), 5);
        assert_eq!(auto_step(77), 10);
        assert_eq!(auto_step(300), 50);
        assert_eq!(nice_step(3), 5);
        assert_eq!(nice_step(11), 20);
        assert_eq!(ticks(-6, 6, 5), vec![-5, 0, 5]);
        assert_eq!(ticks(-14, 14, 2).len(), 15);
        assert_eq!("auto".parse::<TickStep>(), Ok(TickStep::Auto));
        assert_eq!("5".parse::<TickStep>(), Ok(TickStep::Every(5)));
        assert!("0".parse::<TickStep>().is_err());
    }
}
