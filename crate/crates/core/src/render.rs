//! Braid pictures. Time runs downward, one slot per letter. Special points
//! are heavy vertical lines left or right of all strands, labelled `∞` for a
//! puncture and by the order for a cone point.
//!
//! ASCII: three rows per letter, a label row on top and a row on the bottom
//! naming the strand that ends in each position. For `σ_i` the strand
//! starting at position `i` passes in front (`\` in the middle row), for
//! `σ_i^{-1}` behind (`/`). For `τ` the strand leaves towards the heavy line,
//! passes around it and returns; `-` over `#` means the strand is in front.

use std::fmt::Write;

use crate::braid::{BraidLetter, BraidWord, Generator, OrbifoldSignature, Side, SpecialPoint};

/// Layout constants for SVG output.
#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    /// Height of one letter slot. Default 40.
    pub slot_height: f64,
    /// Horizontal distance between neighbouring strands. Default 30.
    pub strand_spacing: f64,
    /// Outer margin. Default 20.
    pub margin: f64,
    /// How far a loop reaches past its heavy line. Default 14.
    pub loop_radius: f64,
    /// Strand stroke width. Default 2.
    pub stroke: f64,
    /// Heavy line stroke width. Default 5.
    pub heavy_stroke: f64,
    /// Ribbons: inclusive 1-based strand ranges shaded behind the strands.
    pub ribbons: Vec<(usize, usize)>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            slot_height: 40.0,
            strand_spacing: 30.0,
            margin: 20.0,
            loop_radius: 14.0,
            stroke: 2.0,
            heavy_stroke: 5.0,
            ribbons: Vec::new(),
        }
    }
}

fn label(p: SpecialPoint) -> String {
    match p {
        SpecialPoint::Puncture => "∞".to_string(),
        SpecialPoint::Cone(k) => k.to_string(),
    }
}

/// Position -> original strand (1-based) at the bottom of the picture.
pub fn bottom_labels(w: &BraidWord) -> Vec<usize> {
    let mut at: Vec<usize> = (1..=w.signature().n).collect();
    for l in w.letters() {
        if let Generator::Sigma(i) = l.gen {
            at.swap(i - 1, i);
        }
    }
    at
}

struct Grid {
    cols: usize,
    left: Option<usize>,
    right: Option<usize>,
    first: usize,
}

impl Grid {
    fn new(sig: &OrbifoldSignature) -> Self {
        let (left, first) = if sig.left.is_some() { (Some(1), 3) } else { (None, 0) };
        let last = first + 2 * sig.n.saturating_sub(1);
        let (right, cols) = if sig.right.is_some() { (Some(last + 2), last + 4) } else { (None, last + 1) };
        Grid { cols, left, right, first }
    }

    fn strand(&self, i: usize) -> usize {
        self.first + 2 * (i - 1)
    }

    fn blank(&self, n: usize) -> Vec<char> {
        let mut row = vec![' '; self.cols];
        for i in 1..=n {
            row[self.strand(i)] = '|';
        }
        for c in [self.left, self.right].into_iter().flatten() {
            row[c] = '#';
        }
        row
    }
}

pub fn render_ascii(w: &BraidWord) -> String {
    let sig = w.signature();
    let g = Grid::new(&sig);
    let mut lines: Vec<String> = Vec::new();
    let mut head = vec![' '; g.cols];
    for i in 1..=sig.n {
        head[g.strand(i)] = char::from_digit((i % 10) as u32, 10).unwrap();
    }
    let mut head: String = head.into_iter().collect();
    // Labels may be wider than one column; patch them in by char index.
    for (col, p) in [(g.left, sig.left), (g.right, sig.right)] {
        if let (Some(c), Some(p)) = (col, p) {
            let mut chars: Vec<String> = head.chars().map(|c| c.to_string()).collect();
            chars[c] = label(p);
            head = chars.concat();
        }
    }
    lines.push(head.trim_end().to_string());
    for l in w.letters() {
        let mut rows = [g.blank(sig.n), g.blank(sig.n), g.blank(sig.n)];
        match l.gen {
            Generator::Sigma(i) => {
                let c = g.strand(i);
                rows[0][c] = '\\';
                rows[0][c + 2] = '/';
                rows[1][c] = ' ';
                rows[1][c + 2] = ' ';
                rows[1][c + 1] = if l.inverse { '/' } else { '\\' };
                rows[2][c] = '/';
                rows[2][c + 2] = '\\';
            }
            Generator::Loop(Side::Left) => {
                let h = g.left.unwrap();
                let s = g.strand(1);
                // out above the middle, back below
                let (out, back) = if l.inverse { ('#', '-') } else { ('-', '#') };
                rows[0][h - 1] = '.';
                rows[0][h] = out;
                rows[0][h + 1] = '-';
                rows[0][s] = '\'';
                rows[1][h - 1] = '|';
                rows[1][s] = ' ';
                rows[2][h - 1] = '\'';
                rows[2][h] = back;
                rows[2][h + 1] = '-';
                rows[2][s] = '.';
            }
            Generator::Loop(Side::Right) => {
                let h = g.right.unwrap();
                let s = g.strand(sig.n);
                let (out, back) = if l.inverse { ('#', '-') } else { ('-', '#') };
                rows[0][s] = '\'';
                rows[0][s + 1] = '-';
                rows[0][h] = out;
                rows[0][h + 1] = '.';
                rows[1][s] = ' ';
                rows[1][h + 1] = '|';
                rows[2][s] = '.';
                rows[2][s + 1] = '-';
                rows[2][h] = back;
                rows[2][h + 1] = '\'';
            }
        }
        for r in rows {
            lines.push(r.into_iter().collect::<String>().trim_end().to_string());
        }
    }
    let mut foot = vec![' '; g.cols];
    for (pos, s) in bottom_labels(w).into_iter().enumerate() {
        foot[g.strand(pos + 1)] = char::from_digit((s % 10) as u32, 10).unwrap();
    }
    lines.push(foot.into_iter().collect::<String>().trim_end().to_string());
    let mut out = lines.join("\n");
    out.push('\n');
    out
}

struct Svg<'a> {
    o: &'a RenderOptions,
    body: String,
}

impl Svg<'_> {
    fn path(&mut self, d: &str, width: f64, colour: &str) {
        let _ = writeln!(
            self.body,
            r#"<path d="{d}" fill="none" stroke="{colour}" stroke-width="{width}" stroke-linecap="round"/>"#
        );
    }

    /// A strand piece drawn in front, with a white halo.
    fn over(&mut self, d: &str) {
        self.path(d, self.o.stroke + 6.0, "white");
        self.path(d, self.o.stroke, "black");
    }

    fn under(&mut self, d: &str) {
        self.path(d, self.o.stroke, "black");
    }

    fn heavy(&mut self, x: f64, y0: f64, y1: f64, halo: bool) {
        let d = format!("M {x:.1} {y0:.1} L {x:.1} {y1:.1}");
        if halo {
            self.path(&d, self.o.heavy_stroke + 6.0, "white");
        }
        self.path(&d, self.o.heavy_stroke, "black");
    }
}

pub fn render_svg(w: &BraidWord, options: &RenderOptions) -> String {
    let o = options;
    let sig = w.signature();
    let sp = o.strand_spacing;
    let left = sig.left.map(|_| o.margin + o.loop_radius);
    let first = match left {
        Some(x) => x + sp,
        None => o.margin,
    };
    let sx = |i: usize| first + sp * (i as f64 - 1.0);
    let last = sx(sig.n.max(1));
    let right = sig.right.map(|_| last + sp);
    let width = right.map_or(last, |x| x + o.loop_radius) + o.margin;
    let top = o.margin + 16.0;
    let h = o.slot_height;
    let bottom = top + h * w.len() as f64;
    let height = bottom + o.margin + 16.0;

    let mut svg = Svg { o, body: String::new() };
    for &(a, b) in &o.ribbons {
        if a >= 1 && b >= a && b <= sig.n {
            let _ = writeln!(
                svg.body,
                r##"<rect x="{:.1}" y="{top:.1}" width="{:.1}" height="{:.1}" fill="#dde6f5"/>"##,
                sx(a) - sp / 3.0,
                sx(b) - sx(a) + 2.0 * sp / 3.0,
                bottom - top
            );
        }
    }
    for (x, p) in [(left, sig.left), (right, sig.right)] {
        if let (Some(x), Some(p)) = (x, p) {
            svg.heavy(x, top, bottom, false);
            let _ = writeln!(
                svg.body,
                r#"<text x="{:.1}" y="{:.1}" font-family="serif" font-size="14" text-anchor="middle">{}</text>"#,
                x,
                top - 6.0,
                label(p)
            );
        }
    }
    for i in 1..=sig.n {
        let _ = writeln!(
            svg.body,
            r#"<text x="{:.1}" y="{:.1}" font-family="serif" font-size="12" text-anchor="middle">{i}</text>"#,
            sx(i),
            top - 6.0
        );
    }
    for (k, l) in w.letters().iter().enumerate() {
        let y0 = top + h * k as f64;
        let y1 = y0 + h;
        let ym = (y0 + y1) / 2.0;
        for i in 1..=sig.n {
            let busy = match l.gen {
                Generator::Sigma(j) => i == j || i == j + 1,
                Generator::Loop(Side::Left) => i == 1,
                Generator::Loop(Side::Right) => i == sig.n,
            };
            if !busy {
                svg.under(&format!("M {:.1} {y0:.1} L {:.1} {y1:.1}", sx(i), sx(i)));
            }
        }
        letter_svg(&mut svg, *l, sx, left, right, (y0, ym, y1), sig.n);
    }
    for (pos, s) in bottom_labels(w).into_iter().enumerate() {
        let _ = writeln!(
            svg.body,
            r#"<text x="{:.1}" y="{:.1}" font-family="serif" font-size="12" text-anchor="middle">{s}</text>"#,
            sx(pos + 1),
            bottom + 16.0
        );
    }
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width:.1}\" height=\"{height:.1}\" viewBox=\"0 0 {width:.1} {height:.1}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
        svg.body
    )
}

fn letter_svg(
    svg: &mut Svg<'_>,
    l: BraidLetter,
    sx: impl Fn(usize) -> f64,
    left: Option<f64>,
    right: Option<f64>,
    (y0, ym, y1): (f64, f64, f64),
    n: usize,
) {
    let r = svg.o.loop_radius;
    match l.gen {
        Generator::Sigma(i) => {
            let (a, b) = (sx(i), sx(i + 1));
            let down = format!("M {a:.1} {y0:.1} C {a:.1} {ym:.1}, {b:.1} {ym:.1}, {b:.1} {y1:.1}");
            let up = format!("M {b:.1} {y0:.1} C {b:.1} {ym:.1}, {a:.1} {ym:.1}, {a:.1} {y1:.1}");
            let (front, back) = if l.inverse { (up, down) } else { (down, up) };
            svg.under(&back);
            svg.over(&front);
        }
        Generator::Loop(side) => {
            let (s, hx, tip) = match side {
                Side::Left => (sx(1), left.unwrap(), left.unwrap() - r),
                Side::Right => (sx(n), right.unwrap(), right.unwrap() + r),
            };
            let out = format!("M {s:.1} {y0:.1} C {s:.1} {ym:.1}, {tip:.1} {y0:.1}, {tip:.1} {ym:.1}");
            let back = format!("M {tip:.1} {ym:.1} C {tip:.1} {y1:.1}, {s:.1} {ym:.1}, {s:.1} {y1:.1}");
            if l.inverse {
                svg.under(&out);
                svg.heavy(hx, y0, ym, true);
                svg.over(&back);
            } else {
                svg.over(&out);
                svg.under(&back);
                svg.heavy(hx, ym, y1, true);
            }
        }
    }
}
