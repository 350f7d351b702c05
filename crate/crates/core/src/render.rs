//! Figures of integer dissections in equilateral coordinates.
//!
//! Up-triangles get a solid outline and down-triangles a dashed one. The
//! outer triangle has unit side; every coordinate is printed with 12
//! significant digits.

use std::fmt::Write as _;

use crate::solver::{equilateral_point, IntegerDissection, Orientation};

const SIGNIFICANT_DIGITS: i32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FigureFormat {
    Svg,
    Tikz,
}

/// `v` as a plain decimal with at most 12 significant digits.
pub fn decimal(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return "0".into();
    }
    let magnitude = v.abs().log10().floor() as i32;
    let places = (SIGNIFICANT_DIGITS - 1 - magnitude).max(0) as usize;
    let s = format!("{v:.places$}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        &s
    };
    match s {
        "-0" => "0".into(),
        s => s.into(),
    }
}

/// Equilateral vertex coordinates of every triangle at unit scale, with
/// the orientation of each.
pub fn figure_triangles(d: &IntegerDissection) -> Vec<(Orientation, [(f64, f64); 3])> {
    let l = d.scale as f64;
    d.triangles
        .iter()
        .map(|t| {
            let v = t
                .vertices()
                .map(|(x, y)| equilateral_point(x as f64 / l, y as f64 / l));
            (t.orientation, v)
        })
        .collect()
}

pub fn render_svg(d: &IntegerDissection) -> String {
    let h = 3f64.sqrt() / 2.0;
    let m = 0.02;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="600" height="{}">"#,
        decimal(-m),
        decimal(-h - m),
        decimal(1.0 + 2.0 * m),
        decimal(h + 2.0 * m),
        (600.0 * (h + 2.0 * m) / (1.0 + 2.0 * m)).round(),
    );
    let _ = writeln!(
        out,
        r#"<g fill="none" stroke="black" stroke-width="0.004" stroke-linejoin="round">"#
    );
    for (o, v) in figure_triangles(d) {
        let points: Vec<String> = v
            .iter()
            .map(|&(x, y)| format!("{},{}", decimal(x), decimal(-y)))
            .collect();
        let dash = match o {
            Orientation::Up => "",
            Orientation::Down => r#" stroke-dasharray="0.012 0.008""#,
        };
        let _ = writeln!(
            out,
            r#"<polygon class="{}" points="{}"{dash}/>"#,
            o.as_str(),
            points.join(" ")
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}

pub fn render_tikz(d: &IntegerDissection) -> String {
    let mut out = String::from("\\begin{tikzpicture}[scale=8,line join=round]\n");
    for (o, v) in figure_triangles(d) {
        let style = match o {
            Orientation::Up => "",
            Orientation::Down => "[dashed]",
        };
        let _ = write!(out, "\\draw{style}");
        for (x, y) in v {
            let _ = write!(out, " ({},{}) --", decimal(x), decimal(y));
        }
        out.push_str(" cycle;\n");
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

pub fn render(d: &IntegerDissection, format: FigureFormat) -> String {
    match format {
        FigureFormat::Svg => render_svg(d),
        FigureFormat::Tikz => render_tikz(d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Signature;

    const INTERCALATE: &str = "2|up 0/1 0/1 1/2|up 0/1 1/2 1/2|up 1/2 0/1 1/2|down 1/2 1/2 1/2";

    #[test]
    fn decimals_keep_twelve_significant_digits() {
        assert_eq!(decimal(0.0), "0");
        assert_eq!(decimal(0.5), "0.5");
        assert_eq!(decimal(1.0), "1");
        assert_eq!(decimal(3f64.sqrt() / 2.0), "0.866025403784");
        assert_eq!(decimal(1.0 / 14.0), "0.0714285714286");
        assert_eq!(decimal(-2.0 / 3.0), "-0.666666666667");
        assert_eq!(decimal(-1e-20), "-0.00000000000000000001");
    }

    #[test]
    fn intercalate_svg_has_four_outlined_triangles() {
        let d = Signature::parse(INTERCALATE).unwrap();
        let svg = render_svg(&d);
        assert_eq!(svg.matches("<polygon").count(), 4);
        assert_eq!(svg.matches("class=\"down\"").count(), 1);
        assert_eq!(svg.matches("stroke-dasharray").count(), 1);
        assert!(!svg.contains("fill=\"black\""));
        assert!(svg.contains(r#"points="0.75,-0.433012701892 0.25,-0.433012701892 0.5,0""#));
    }

    #[test]
    fn intercalate_tikz() {
        let d = Signature::parse(INTERCALATE).unwrap();
        let tikz = render_tikz(&d);
        assert_eq!(tikz.matches("\\draw").count(), 4);
        assert_eq!(tikz.matches("\\draw[dashed]").count(), 1);
        assert!(tikz.contains("\\draw (0,0) -- (0.5,0) -- (0.25,0.433012701892) -- cycle;"));
    }
}
