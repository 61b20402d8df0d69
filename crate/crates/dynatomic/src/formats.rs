//! CSV and SVG writers. Floats are written with 17 significant digits so
//! repeated runs are byte-identical.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::Result;
use crate::monodromy::PermutationReport;
use crate::rays::RayPath;

pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

struct Fixed17;

impl serde_json::ser::Formatter for Fixed17 {
    fn write_f64<W: ?Sized + std::io::Write>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()> {
        writer.write_all(float(value).as_bytes())
    }

    fn write_f32<W: ?Sized + std::io::Write>(&mut self, writer: &mut W, value: f32) -> std::io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Compact JSON with every float written by [`float`].
pub fn json_line<T: Serialize>(value: &T) -> Result<String> {
    let mut out = Vec::new();
    value.serialize(&mut serde_json::Serializer::with_formatter(&mut out, Fixed17))?;
    Ok(String::from_utf8(out).expect("serde_json writes UTF-8"))
}

/// Canonical root order: by real part, then imaginary part.
pub fn root_order(a: C64, b: C64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

pub fn roots_csv(roots: &[(C64, f64)]) -> String {
    let mut out = String::from("re,im,residual\n");
    for (z, r) in roots {
        writeln!(out, "{},{},{}", float(z.re), float(z.im), float(*r)).unwrap();
    }
    out
}

pub fn ray_csv(ray: &RayPath) -> String {
    let mut out = String::from("potential,re,im\n");
    for (g, z) in ray.potentials.iter().zip(&ray.samples) {
        writeln!(out, "{},{},{}", float(*g), float(z.re), float(z.im)).unwrap();
    }
    out
}

/// One file per labeled root: `step,re,im`.
pub fn monodromy_paths_csv(report: &PermutationReport) -> Vec<(String, String)> {
    report
        .paths
        .iter()
        .map(|(label, path)| {
            let mut out = String::from("step,re,im\n");
            for (k, z) in path.iter().enumerate() {
                writeln!(out, "{k},{},{}", float(z.re), float(z.im)).unwrap();
            }
            (format!("path_{label}.csv"), out)
        })
        .collect()
}

/// The visible rectangle of an SVG, in the complex plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct View {
    pub center: C64,
    /// Width of the view; the height follows from the pixel aspect.
    pub span: f64,
    pub width: usize,
    pub height: usize,
}

impl View {
    pub fn pixel_size(&self) -> f64 {
        self.span / self.width as f64
    }

    /// Complex coordinate of the center of pixel `(i, j)`, row 0 on top.
    pub fn point(&self, i: usize, j: usize) -> C64 {
        let h = self.pixel_size();
        let x = self.center.re + (i as f64 + 0.5 - self.width as f64 / 2.0) * h;
        let y = self.center.im - (j as f64 + 0.5 - self.height as f64 / 2.0) * h;
        C64::new(x, y)
    }

    pub fn to_pixel(&self, z: C64) -> (f64, f64) {
        let h = self.pixel_size();
        ((z.re - self.center.re) / h + self.width as f64 / 2.0, (self.center.im - z.im) / h + self.height as f64 / 2.0)
    }
}

/// A polyline clipped to a generous margin around the view.
pub fn svg_polyline(view: &View, points: &[C64], stroke: &str) -> String {
    let margin = 4.0 * (view.width.max(view.height) as f64);
    let coords: Vec<String> = points
        .iter()
        .map(|&z| view.to_pixel(z))
        .filter(|(x, y)| x.abs() < margin && y.abs() < margin)
        .map(|(x, y)| format!("{x:.3},{y:.3}"))
        .collect();
    format!("<polyline fill=\"none\" stroke=\"{stroke}\" stroke-width=\"1\" points=\"{}\"/>\n", coords.join(" "))
}

pub fn svg_document(view: &View, body: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\" shape-rendering=\"crispEdges\">\n{body}</svg>\n",
        w = view.width,
        h = view.height
    )
}

pub fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    let path = dir.join(name);
    std::fs::create_dir_all(path.parent().unwrap_or(dir))?;
    std::fs::write(&path, contents)?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(float(0.1), "1.0000000000000001e-1");
        assert_eq!(float(-1.75), "-1.7500000000000000e0");
        assert_eq!(float(0.1).parse::<f64>().unwrap(), 0.1);
    }

    #[test]
    fn json_floats_are_fixed() {
        let line = json_line(&serde_json::json!({"x": 0.5, "n": 3, "bad": f64::NAN})).unwrap();
        assert_eq!(line, r#"{"bad":null,"n":3,"x":5.0000000000000000e-1}"#);
        let back: serde_json::Value = serde_json::from_str(&line).unwrap();
        assert_eq!(back["x"].as_f64(), Some(0.5));
    }

    #[test]
    fn view_round_trip() {
        let v = View { center: C64::new(-0.5, 0.0), span: 3.0, width: 300, height: 200 };
        let z = v.point(10, 20);
        let (x, y) = v.to_pixel(z);
        assert!((x - 10.5).abs() < 1e-9 && (y - 20.5).abs() < 1e-9);
    }
}
