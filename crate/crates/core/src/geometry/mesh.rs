//! ASCII OBJ export of the boundary surface: vertices on a (theta, phi)
//! grid, single vertices at the poles, quads split into triangles.

use super::shape::ShapeCoefficients;
use std::fmt::Write;

pub fn to_obj(shape: &ShapeCoefficients, n_theta: usize, n_phi: usize) -> String {
    assert!(n_theta >= 2 && n_phi >= 3);
    let mut out = String::new();
    let mut push_v = |p: [f64; 3], out: &mut String| {
        writeln!(out, "v {:.9} {:.9} {:.9}", p[0], p[1], p[2]).unwrap();
    };

    // vertex 1: north pole; then (n_theta - 1) latitude rows of n_phi;
    // last vertex: south pole
    push_v(shape.surface_point(0.0, 0.0), &mut out);
    for i in 1..n_theta {
        let theta = std::f64::consts::PI * i as f64 / n_theta as f64;
        for j in 0..n_phi {
            let phi = 2.0 * std::f64::consts::PI * j as f64 / n_phi as f64;
            push_v(shape.surface_point(theta, phi), &mut out);
        }
    }
    push_v(shape.surface_point(std::f64::consts::PI, 0.0), &mut out);

    let row = |i: usize, j: usize| 2 + (i - 1) * n_phi + (j % n_phi); // 1-based OBJ indices
    let south = 1 + (n_theta - 1) * n_phi + 1;

    // north fan
    for j in 0..n_phi {
        writeln!(out, "f 1 {} {}", row(1, j), row(1, j + 1)).unwrap();
    }
    // interior quads split into two triangles
    for i in 1..(n_theta - 1) {
        for j in 0..n_phi {
            let (a, b, c, d) = (row(i, j), row(i, j + 1), row(i + 1, j + 1), row(i + 1, j));
            writeln!(out, "f {a} {b} {c}").unwrap();
            writeln!(out, "f {a} {c} {d}").unwrap();
        }
    }
    // south fan
    for j in 0..n_phi {
        writeln!(out, "f {} {} {}", south, row(n_theta - 1, j + 1), row(n_theta - 1, j)).unwrap();
    }
    out
}
