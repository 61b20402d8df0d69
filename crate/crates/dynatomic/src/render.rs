//! Escape-time pictures of Multibrot and filled Julia sets.

use std::fmt::Write as _;

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::formats::{svg_document, svg_polyline, View};

pub const DEFAULT_SIZE: usize = 800;
pub const DEFAULT_ITERATIONS: u32 = 512;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Plane {
    /// `c` varies, `z0 = 0`.
    Parameter,
    /// `z0` varies at fixed `c`.
    Dynamical(C64),
}

/// Iteration counts, row-major; `max_iter` marks points that never escaped.
pub fn escape_counts(d: u32, plane: Plane, view: &View, max_iter: u32) -> Vec<u32> {
    (0..view.height)
        .into_par_iter()
        .flat_map_iter(|j| {
            (0..view.width).map(move |i| {
                let p = view.point(i, j);
                let (c, mut z) = match plane {
                    Plane::Parameter => (p, C64::new(0.0, 0.0)),
                    Plane::Dynamical(c) => (c, p),
                };
                let r = 1.0 + c.norm().max(2.0);
                let mut k = 0;
                while k < max_iter && z.norm_sqr() <= r * r {
                    z = z.powu(d) + c;
                    k += 1;
                }
                k
            })
        })
        .collect()
}

pub fn counts_csv(counts: &[u32], width: usize) -> String {
    let mut out = String::new();
    for row in counts.chunks(width) {
        let cells: Vec<String> = row.iter().map(u32::to_string).collect();
        writeln!(out, "{}", cells.join(",")).unwrap();
    }
    out
}

fn colour(k: u32, max_iter: u32) -> &'static str {
    const BANDS: [&str; 6] = ["#f7fbff", "#deebf7", "#c6dbef", "#9ecae1", "#6baed6", "#3182bd"];
    if k >= max_iter {
        "#08306b"
    } else {
        BANDS[(k as usize / 2) % BANDS.len()]
    }
}

/// Run-length rectangles per row, one per colour band, plus overlays.
pub fn counts_svg(counts: &[u32], view: &View, max_iter: u32, overlays: &[Vec<C64>]) -> String {
    let mut body = String::new();
    for (j, row) in counts.chunks(view.width).enumerate() {
        let mut start = 0;
        while start < row.len() {
            let fill = colour(row[start], max_iter);
            let mut end = start + 1;
            while end < row.len() && colour(row[end], max_iter) == fill {
                end += 1;
            }
            writeln!(body, "<rect x=\"{start}\" y=\"{j}\" width=\"{}\" height=\"1\" fill=\"{fill}\"/>", end - start).unwrap();
            start = end;
        }
    }
    for line in overlays {
        body.push_str(&svg_polyline(view, line, "#d62728"));
    }
    svg_document(view, &body)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cardioid_center_never_escapes() {
        let v = View { center: C64::new(0.0, 0.0), span: 4.0, width: 5, height: 5 };
        let counts = escape_counts(2, Plane::Parameter, &v, 100);
        assert_eq!(counts[12], 100);
        assert!(counts[0] < 5);
        let svg = counts_svg(&counts, &v, 100, &[]);
        assert!(svg.starts_with("<svg") && svg.contains("#08306b"));
    }
}
