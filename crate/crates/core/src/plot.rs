//! Static SVG and CSV renderings of functions and planar sets.
//!
//! `+∞` and `−∞` are drawn as bands along the top and bottom edges so that
//! improper functions stay visible.

use std::fmt::Write as _;

use crate::calculus::regions::Piecewise;
use crate::geometry::ConvexPoly2;
use crate::io::fmt_up;
use crate::scalar_fn::UpFunction;

const W: f64 = 640.0;
const H: f64 = 420.0;
const PAD: f64 = 40.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// An x-range covering every breakpoint with some margin.
pub fn x_range(fs: &[&UpFunction]) -> (f64, f64) {
    let b: Vec<f64> = fs.iter().flat_map(|f| f.breakpoints()).filter(|x| x.is_finite()).collect();
    if b.is_empty() {
        return (-5.0, 5.0);
    }
    let lo = b.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = b.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let m = (0.25 * (hi - lo)).max(1.0);
    (lo - m, hi + m)
}

/// `n + 1` evenly spaced abscissae plus every breakpoint inside the range.
pub fn sample_xs(fs: &[&UpFunction], lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let mut xs: Vec<f64> = (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect();
    xs.extend(fs.iter().flat_map(|f| f.breakpoints()).filter(|&x| x > lo && x < hi));
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    xs
}

/// One row per abscissa, one column per function.
pub fn functions_csv(named: &[(&str, &UpFunction)], n: usize) -> String {
    let fs: Vec<&UpFunction> = named.iter().map(|p| p.1).collect();
    let (lo, hi) = x_range(&fs);
    let mut out = String::from("x");
    for (name, _) in named {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for x in sample_xs(&fs, lo, hi, n) {
        let _ = write!(out, "{x}");
        for f in &fs {
            let _ = write!(out, ",{}", fmt_up(f.eval(x)));
        }
        out.push('\n');
    }
    out
}

fn header(title: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{PAD}" y="20">{}</text>"#, escape(title));
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        PAD + (x - self.x0) / (self.x1 - self.x0) * (W - 2.0 * PAD)
    }

    fn py(&self, y: f64) -> f64 {
        H - PAD - (y - self.y0) / (self.y1 - self.y0) * (H - 2.0 * PAD)
    }

    fn axes(&self, s: &mut String) {
        let _ = writeln!(
            s,
            r##"<rect x="{PAD}" y="{PAD}" width="{}" height="{}" fill="none" stroke="#888"/>"##,
            W - 2.0 * PAD,
            H - 2.0 * PAD
        );
        if self.y0 < 0.0 && self.y1 > 0.0 {
            let y = self.py(0.0);
            let _ = writeln!(s, r##"<line x1="{PAD}" y1="{y:.2}" x2="{}" y2="{y:.2}" stroke="#ccc"/>"##, W - PAD);
        }
        if self.x0 < 0.0 && self.x1 > 0.0 {
            let x = self.px(0.0);
            let _ = writeln!(s, r##"<line x1="{x:.2}" y1="{PAD}" x2="{x:.2}" y2="{}" stroke="#ccc"/>"##, H - PAD);
        }
        let _ = writeln!(s, r#"<text x="{PAD}" y="{}">{:.3}</text>"#, H - PAD + 16.0, self.x0);
        let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">{:.3}</text>"#, W - PAD, H - PAD + 16.0, self.x1);
        let _ = writeln!(s, r#"<text x="4" y="{}">{:.3}</text>"#, H - PAD, self.y0);
        let _ = writeln!(s, r#"<text x="4" y="{}">{:.3}</text>"#, PAD + 10.0, self.y1);
    }
}

/// Curves of several functions over a shared range.
pub fn functions_svg(title: &str, named: &[(&str, &UpFunction)]) -> String {
    let fs: Vec<&UpFunction> = named.iter().map(|p| p.1).collect();
    let (lo, hi) = x_range(&fs);
    let xs = sample_xs(&fs, lo, hi, 400);
    let finite: Vec<f64> = fs.iter().flat_map(|f| xs.iter().filter_map(|&x| f.eval(x).value())).collect();
    let (mut y0, mut y1) = finite.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    if !y0.is_finite() {
        (y0, y1) = (-1.0, 1.0);
    }
    let m = (0.1 * (y1 - y0)).max(0.5);
    let fr = Frame { x0: lo, x1: hi, y0: y0 - m, y1: y1 + m };
    let mut s = header(title);
    fr.axes(&mut s);
    for (i, (name, f)) in named.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        // runs of finite values become polylines; infinite runs become bands
        let mut run: Vec<String> = Vec::new();
        let flush = |run: &mut Vec<String>, s: &mut String| {
            if run.len() > 1 {
                let _ = writeln!(
                    s,
                    r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#,
                    run.join(" ")
                );
            }
            run.clear();
        };
        for &x in &xs {
            let v = f.eval(x);
            match v.value() {
                Some(y) => run.push(format!("{:.2},{:.2}", fr.px(x), fr.py(y))),
                None => {
                    flush(&mut run, &mut s);
                    let y = if v.is_top() { PAD - 6.0 } else { H - PAD + 2.0 };
                    let _ =
                        writeln!(s, r#"<rect x="{:.2}" y="{y:.2}" width="2" height="4" fill="{color}"/>"#, fr.px(x));
                }
            }
        }
        flush(&mut run, &mut s);
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" fill="{color}">{}</text>"#,
            W - PAD - 120.0,
            20.0 + 14.0 * i as f64,
            escape(name)
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Planar sets clipped to a common box.
pub fn sets_svg(title: &str, named: &[(&str, &ConvexPoly2)]) -> String {
    let mut pts: Vec<[f64; 2]> = named.iter().flat_map(|(_, p)| p.points().to_vec()).collect();
    if pts.is_empty() {
        pts.push([0.0, 0.0]);
    }
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in &pts {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(2.0);
    let c = [0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])];
    let half = 0.75 * span;
    let (blo, bhi) = ([c[0] - half, c[1] - half], [c[0] + half, c[1] + half]);
    let fr = Frame { x0: blo[0], x1: bhi[0], y0: blo[1], y1: bhi[1] };
    let mut s = header(title);
    fr.axes(&mut s);
    for (i, (name, p)) in named.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let poly = p.clip_to_box(blo, bhi);
        if !poly.is_empty() {
            let coords: Vec<String> = poly.iter().map(|q| format!("{:.2},{:.2}", fr.px(q[0]), fr.py(q[1]))).collect();
            let _ = writeln!(
                s,
                r#"<polygon points="{}" fill="{color}" fill-opacity="0.25" stroke="{color}" stroke-width="1.5"/>"#,
                coords.join(" ")
            );
        }
        let label = if p.is_empty() { format!("{name} (empty)") } else { name.to_string() };
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" fill="{color}">{}</text>"#,
            W - PAD - 160.0,
            20.0 + 14.0 * i as f64,
            escape(&label)
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Vertices and rays of each set, one row per generator.
pub fn sets_csv(named: &[(&str, &ConvexPoly2)]) -> String {
    let mut out = String::from("set,kind,z1,z2\n");
    for (name, p) in named {
        for q in p.points() {
            let _ = writeln!(out, "{name},point,{},{}", q[0] + 0.0, q[1] + 0.0);
        }
        for r in p.rays() {
            let _ = writeln!(out, "{name},ray,{},{}", r[0] + 0.0, r[1] + 0.0);
        }
    }
    out
}
