//! Tiny deterministic SVG line charts. Pixel coordinates are fixed to two
//! decimals; axis tick labels round for presentation only, so charts are
//! byte-identical across runs but are not a data interchange format.

pub struct Series {
    pub label: String,
    pub color: &'static str,
    pub dashed: bool,
    pub points: Vec<(f64, f64)>,
}

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 64.0;
const RIGHT: f64 = 16.0;
const TOP: f64 = 36.0;
const BOTTOM: f64 = 48.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let a = v.abs();
    if !(1e-3..1e4).contains(&a) {
        return format!("{v:.2e}");
    }
    let mut s = format!("{v:.3}");
    while s.ends_with('0') {
        s.pop();
    }
    if s.ends_with('.') {
        s.pop();
    }
    s
}

/// Renders the series as polylines. With `normalize_each` every series is
/// min-max scaled to [0, 1] before plotting (useful when magnitudes differ
/// by orders); otherwise all series share one y scale.
pub fn line_chart(
    title: &str,
    x_label: &str,
    y_label: &str,
    series: &[Series],
    normalize_each: bool,
) -> String {
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;

    let mut xmin = f64::INFINITY;
    let mut xmax = f64::NEG_INFINITY;
    let mut ymin = f64::INFINITY;
    let mut ymax = f64::NEG_INFINITY;
    for s in series {
        for &(x, y) in &s.points {
            xmin = xmin.min(x);
            xmax = xmax.max(x);
            ymin = ymin.min(y);
            ymax = ymax.max(y);
        }
    }
    if !xmin.is_finite() {
        xmin = 0.0;
        xmax = 1.0;
        ymin = 0.0;
        ymax = 1.0;
    }
    if xmax == xmin {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if normalize_each {
        ymin = 0.0;
        ymax = 1.0;
    } else {
        if ymax == ymin {
            ymin -= 0.5;
            ymax += 0.5;
        }
        let pad = 0.05 * (ymax - ymin);
        ymin -= pad;
        ymax += pad;
    }

    let px = |x: f64| LEFT + (x - xmin) / (xmax - xmin) * pw;
    let py = |y: f64| TOP + (1.0 - (y - ymin) / (ymax - ymin)) * ph;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"12\">\n"
    ));
    out.push_str(&format!(
        "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"
    ));
    out.push_str(&format!(
        "<text x=\"{:.2}\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
        LEFT + pw / 2.0,
        escape(title)
    ));

    // grid + ticks
    for i in 0..=4 {
        let f = i as f64 / 4.0;
        let gx = LEFT + f * pw;
        let gy = TOP + f * ph;
        out.push_str(&format!(
            "<line x1=\"{gx:.2}\" y1=\"{TOP:.2}\" x2=\"{gx:.2}\" y2=\"{:.2}\" \
             stroke=\"#dddddd\" stroke-width=\"1\"/>\n",
            TOP + ph
        ));
        out.push_str(&format!(
            "<line x1=\"{LEFT:.2}\" y1=\"{gy:.2}\" x2=\"{:.2}\" y2=\"{gy:.2}\" \
             stroke=\"#dddddd\" stroke-width=\"1\"/>\n",
            LEFT + pw
        ));
        let xv = xmin + f * (xmax - xmin);
        let yv = ymax - f * (ymax - ymin);
        out.push_str(&format!(
            "<text x=\"{gx:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>\n",
            TOP + ph + 16.0,
            fmt_tick(xv)
        ));
        out.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{}</text>\n",
            LEFT - 6.0,
            gy + 4.0,
            fmt_tick(yv)
        ));
    }
    out.push_str(&format!(
        "<rect x=\"{LEFT:.2}\" y=\"{TOP:.2}\" width=\"{pw:.2}\" height=\"{ph:.2}\" \
         fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n"
    ));
    out.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>\n",
        LEFT + pw / 2.0,
        HEIGHT - 12.0,
        escape(x_label)
    ));
    out.push_str(&format!(
        "<text x=\"16\" y=\"{:.2}\" text-anchor=\"middle\" \
         transform=\"rotate(-90 16 {:.2})\">{}</text>\n",
        TOP + ph / 2.0,
        TOP + ph / 2.0,
        escape(y_label)
    ));

    for s in series {
        let (lo, hi) = if normalize_each {
            let lo = s.points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
            let hi = s.points.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
            if hi == lo {
                (lo - 0.5, hi + 0.5)
            } else {
                (lo, hi)
            }
        } else {
            (0.0, 0.0) // unused
        };
        let mut pts = String::new();
        for &(x, y) in &s.points {
            let yy = if normalize_each { (y - lo) / (hi - lo) } else { y };
            pts.push_str(&format!("{:.2},{:.2} ", px(x), py(yy)));
        }
        let dash = if s.dashed {
            " stroke-dasharray=\"6 4\""
        } else {
            ""
        };
        out.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"{dash} points=\"{}\"/>\n",
            s.color,
            pts.trim_end()
        ));
    }

    // legend, top-right inside the plot area
    for (i, s) in series.iter().enumerate() {
        let ly = TOP + 16.0 + 16.0 * i as f64;
        let dash = if s.dashed {
            " stroke-dasharray=\"6 4\""
        } else {
            ""
        };
        out.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{ly:.2}\" x2=\"{:.2}\" y2=\"{ly:.2}\" \
             stroke=\"{}\" stroke-width=\"1.5\"{dash}/>\n",
            LEFT + pw - 170.0,
            LEFT + pw - 140.0,
            s.color
        ));
        out.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\">{}</text>\n",
            LEFT + pw - 134.0,
            ly + 4.0,
            escape(&s.label)
        ));
    }

    out.push_str("</svg>\n");
    out
}
