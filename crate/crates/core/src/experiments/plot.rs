use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

use super::SweepRow;

/// Scientific notation with 15 significant digits.
pub(crate) fn sci(v: f64) -> String {
    format!("{v:.14e}")
}

pub fn sweep_csv(rows: &[SweepRow]) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::EmptySweep);
    }
    let mut out = String::from("m,chsh_engine,chsh_closed_form,nco_residual\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            sci(r.m),
            sci(r.chsh_engine),
            sci(r.chsh_closed_form),
            sci(r.nco_residual)
        );
    }
    Ok(out)
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;
const Y_MAX: f64 = 4.2;

/// Line chart of the engine CHSH value against `m`, with reference lines
/// at `2√2` and 4 and a dot at `(2, 2√2)` when `m = 2` is in range.
pub fn sweep_svg(rows: &[SweepRow]) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::EmptySweep);
    }
    let m_lo = rows.iter().map(|r| r.m).fold(f64::INFINITY, f64::min);
    let mut m_hi = rows.iter().map(|r| r.m).fold(f64::NEG_INFINITY, f64::max);
    if m_hi <= m_lo {
        m_hi = m_lo + 1.0;
    }
    let px = |m: f64| LEFT + (m - m_lo) / (m_hi - m_lo) * (WIDTH - LEFT - RIGHT);
    let py = |b: f64| HEIGHT - BOTTOM - b / Y_MAX * (HEIGHT - TOP - BOTTOM);
    let tsirelson = 2.0 * std::f64::consts::SQRT_2;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="14">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);

    // axes
    let (x0, x1, y0, y1) = (px(m_lo), px(m_hi), py(0.0), py(Y_MAX));
    let _ = writeln!(s, r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y0:.2}" stroke="black"/>"#);
    let _ = writeln!(s, r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x0:.2}" y2="{y1:.2}" stroke="black"/>"#);
    for k in 0..=4 {
        let b = k as f64;
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{k}</text>"#,
            x0 - 8.0,
            py(b) + 5.0
        );
    }
    for k in 0..=5 {
        let m = m_lo + (m_hi - m_lo) * k as f64 / 5.0;
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{m:.3}</text>"#,
            px(m),
            y0 + 22.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">m</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(s, r#"<text x="18" y="{:.2}" text-anchor="middle">B</text>"#, (y0 + y1) / 2.0);

    // reference lines
    for (b, label, colour) in [(tsirelson, "2√2", "#1f77b4"), (4.0, "4", "#d62728")] {
        let y = py(b);
        let _ = writeln!(
            s,
            r#"<line class="reference" x1="{x0:.2}" y1="{y:.2}" x2="{x1:.2}" y2="{y:.2}" stroke="{colour}" stroke-dasharray="6 4"/>"#
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end" fill="{colour}">{label}</text>"#,
            x1 - 4.0,
            y - 6.0
        );
    }

    let points: Vec<String> = rows
        .iter()
        .map(|r| format!("{:.2},{:.2}", px(r.m), py(r.chsh_engine)))
        .collect();
    let _ = writeln!(
        s,
        r#"<polyline fill="none" stroke="black" stroke-width="2" points="{}"/>"#,
        points.join(" ")
    );

    if (m_lo..=m_hi).contains(&2.0) {
        let _ = writeln!(
            s,
            r##"<circle cx="{:.2}" cy="{:.2}" r="5" fill="#1f77b4"/>"##,
            px(2.0),
            py(tsirelson)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn write(path: &Path, body: &str) -> Result<()> {
    std::fs::write(path, body).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn emit_sweep_csv(rows: &[SweepRow], path: &Path) -> Result<()> {
    write(path, &sweep_csv(rows)?)
}

pub fn emit_sweep_svg(rows: &[SweepRow], path: &Path) -> Result<()> {
    write(path, &sweep_svg(rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::chsh_sweep;

    #[test]
    fn csv_layout() {
        let rows = chsh_sweep(1.0, 3.0, 3).unwrap();
        let csv = sweep_csv(&rows).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], "m,chsh_engine,chsh_closed_form,nco_residual");
        let f: Vec<f64> = lines[2].split(',').map(|v| v.parse().unwrap()).collect();
        assert_eq!(f[0], 2.0);
        assert!((f[1] - 2.0 * 2f64.sqrt()).abs() < 1e-13);
        // 15 significant digits
        assert!(lines[2].starts_with("2.00000000000000e0,2.82842712474619e0"));
    }

    #[test]
    fn empty_rows() {
        assert!(matches!(sweep_csv(&[]), Err(Error::EmptySweep)));
        assert!(matches!(sweep_svg(&[]), Err(Error::EmptySweep)));
    }

    #[test]
    fn svg_has_curve_dot_and_references() {
        let rows = chsh_sweep(0.1, 20.0, 50).unwrap();
        let svg = sweep_svg(&rows).unwrap();
        assert!(svg.contains(r#"viewBox="0 0 800 600""#));
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert_eq!(svg.matches("<circle").count(), 1);
        assert_eq!(svg.matches(r#"class="reference""#).count(), 2);
        let rows = chsh_sweep(3.0, 5.0, 5).unwrap();
        assert_eq!(sweep_svg(&rows).unwrap().matches("<circle").count(), 0);
    }
}
