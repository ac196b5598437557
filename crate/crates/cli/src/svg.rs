//! Log-log SVG plot of the growth series against the comparison shapes.

use crate::experiment::GrowthSeries;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN: f64 = 70.0;

struct Series<'a> {
    label: &'a str,
    color: &'a str,
    points: Vec<(f64, f64)>,
}

pub fn growth_plot(growth: &GrowthSeries) -> String {
    let rows = &growth.rows;
    let pick = |f: fn(&crate::experiment::GrowthRow) -> f64| -> Vec<(f64, f64)> {
        rows.iter().map(|r| (r.x as f64, f(r))).filter(|&(_, y)| y > 0.0).collect()
    };
    let series = [
        Series { label: "S(E1,E2;x)", color: "#d62728", points: pick(|r| r.s_equal_fields as f64) },
        Series { label: "x^(29/30) (log x)^(1/15)", color: "#1f77b4", points: pick(|r| r.grh_shape) },
        Series { label: "x (loglog x)^(22/21) / (log x)^(43/42)", color: "#2ca02c", points: pick(|r| r.uncond_shape) },
        Series { label: "log log x", color: "#9467bd", points: pick(|r| r.loglog_shape) },
    ];

    let all: Vec<(f64, f64)> = series.iter().flat_map(|s| s.points.iter().copied()).collect();
    let (mut x_lo, mut x_hi, mut y_lo, mut y_hi) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &all {
        x_lo = x_lo.min(x.log10());
        x_hi = x_hi.max(x.log10());
        y_lo = y_lo.min(y.log10());
        y_hi = y_hi.max(y.log10());
    }
    if all.is_empty() {
        (x_lo, x_hi, y_lo, y_hi) = (0.0, 1.0, 0.0, 1.0);
    }
    let (x_lo, x_hi) = (x_lo.floor(), x_hi.ceil().max(x_lo.floor() + 1.0));
    let (y_lo, y_hi) = (y_lo.floor(), y_hi.ceil().max(y_lo.floor() + 1.0));
    let px = |x: f64| MARGIN + (x.log10() - x_lo) / (x_hi - x_lo) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (y.log10() - y_lo) / (y_hi - y_lo) * (HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    s.push_str(&format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    s.push_str(&format!("<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"));
    let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    s.push_str(&format!(
        "<path d=\"M{left:.2},{top:.2} L{left:.2},{bottom:.2} L{right:.2},{bottom:.2}\" stroke=\"black\" fill=\"none\"/>\n"
    ));
    for k in x_lo as i32..=x_hi as i32 {
        let x = px(10f64.powi(k));
        s.push_str(&format!(
            "<line x1=\"{x:.2}\" y1=\"{bottom:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\n<text x=\"{x:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"middle\">1e{k}</text>\n",
            bottom + 5.0,
            bottom + 20.0
        ));
    }
    for k in y_lo as i32..=y_hi as i32 {
        let y = py(10f64.powi(k));
        s.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{left:.2}\" y2=\"{y:.2}\" stroke=\"black\"/>\n<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"end\">1e{k}</text>\n",
            left - 5.0,
            left - 8.0,
            y + 4.0
        ));
    }
    s.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"13\" text-anchor=\"middle\">x</text>\n",
        WIDTH / 2.0,
        HEIGHT - 20.0
    ));
    for (i, ser) in series.iter().enumerate() {
        if !ser.points.is_empty() {
            let pts: Vec<String> = ser.points.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
            s.push_str(&format!(
                "<polyline points=\"{}\" stroke=\"{}\" stroke-width=\"2\" fill=\"none\"/>\n",
                pts.join(" "),
                ser.color
            ));
            for &(x, y) in &ser.points {
                s.push_str(&format!("<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"{}\"/>\n", px(x), py(y), ser.color));
            }
        }
        let ly = top + 10.0 + 18.0 * i as f64;
        s.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{ly:.2}\" x2=\"{:.2}\" y2=\"{ly:.2}\" stroke=\"{}\" stroke-width=\"2\"/>\n<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">{}</text>\n",
            left + 10.0,
            left + 35.0,
            ser.color,
            left + 40.0,
            ly + 4.0,
            ser.label
        ));
    }
    s.push_str("</svg>\n");
    s
}
