//! Minimal SVG document builder. No plotting framework: charts are
//! assembled from rectangles, lines, polygons, and text.

use std::fmt::Write;

/// An SVG document under construction. Elements are emitted in insertion
/// order, so later elements paint over earlier ones.
#[derive(Debug, Clone)]
pub struct SvgDocument {
    width: f64,
    height: f64,
    body: String,
}

/// Escapes text content and attribute values.
pub fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

fn fmt_num(v: f64) -> String {
    // Fixed precision keeps output byte-stable across runs.
    let s = format!("{v:.3}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

impl SvgDocument {
    pub fn new(width: f64, height: f64) -> Self {
        Self {
            width,
            height,
            body: String::new(),
        }
    }

    pub fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, style: &str) {
        let _ = write!(
            self.body,
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" style=\"{}\"/>",
            fmt_num(x),
            fmt_num(y),
            fmt_num(w.max(0.0)),
            fmt_num(h.max(0.0)),
            escape(style)
        );
        self.body.push('\n');
    }

    pub fn line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, style: &str) {
        let _ = write!(
            self.body,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" style=\"{}\"/>",
            fmt_num(x1),
            fmt_num(y1),
            fmt_num(x2),
            fmt_num(y2),
            escape(style)
        );
        self.body.push('\n');
    }

    pub fn polygon(&mut self, points: &[(f64, f64)], style: &str) {
        let pts: Vec<String> = points
            .iter()
            .map(|(x, y)| format!("{},{}", fmt_num(*x), fmt_num(*y)))
            .collect();
        let _ = write!(
            self.body,
            "<polygon points=\"{}\" style=\"{}\"/>",
            pts.join(" "),
            escape(style)
        );
        self.body.push('\n');
    }

    pub fn polyline(&mut self, points: &[(f64, f64)], style: &str) {
        let pts: Vec<String> = points
            .iter()
            .map(|(x, y)| format!("{},{}", fmt_num(*x), fmt_num(*y)))
            .collect();
        let _ = write!(
            self.body,
            "<polyline points=\"{}\" style=\"{}\"/>",
            pts.join(" "),
            escape(style)
        );
        self.body.push('\n');
    }

    /// Text anchored per `anchor` ("start", "middle", "end"); `class` tags
    /// the element so reports and tests can find it.
    pub fn text(&mut self, x: f64, y: f64, content: &str, anchor: &str, class: &str, style: &str) {
        let _ = write!(
            self.body,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"{}\" class=\"{}\" style=\"{}\">{}</text>",
            fmt_num(x),
            fmt_num(y),
            escape(anchor),
            escape(class),
            escape(style),
            escape(content)
        );
        self.body.push('\n');
    }

    pub fn comment(&mut self, text: &str) {
        let _ = write!(self.body, "<!-- {} -->", escape(text));
        self.body.push('\n');
    }

    pub fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n<rect x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\" style=\"fill:#ffffff\"/>\n{body}</svg>\n",
            w = fmt_num(self.width),
            h = fmt_num(self.height),
            body = self.body
        )
    }
}
