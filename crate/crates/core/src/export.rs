//! Viewing exports: OFF for three-dimensional bodies, SVG for
//! two-dimensional ones.
//!
//! These writers are the only place rationals are rendered as decimals; the
//! conversion happens at the very end, purely for external viewers, and
//! feeds back into no computation.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::{QPolytope, QVector};
use crate::rat::to_f64;

fn coord(v: &QVector, i: usize) -> f64 {
    to_f64(&v.coords()[i])
}

/// Cyclic vertex order of a 2-polytope's boundary, by walking the edge
/// adjacency coming from the halfspace description.
fn boundary_cycle(p: &QPolytope) -> Result<Vec<usize>> {
    let nv = p.vertices().len();
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for h in p.halfspaces() {
        let on_edge = p.facet_vertex_indices(h);
        if on_edge.len() == 2 {
            adjacency[on_edge[0]].push(on_edge[1]);
            adjacency[on_edge[1]].push(on_edge[0]);
        }
    }
    if adjacency.iter().any(|a| a.len() != 2) {
        return Err(Error::InvalidInput("polygon boundary walk failed".into()));
    }
    let mut cycle = vec![0usize];
    let mut prev = usize::MAX;
    while cycle.len() < nv {
        let cur = *cycle.last().unwrap();
        let next = adjacency[cur]
            .iter()
            .copied()
            .find(|&v| v != prev)
            .expect("two neighbors each");
        prev = cur;
        cycle.push(next);
    }
    Ok(cycle)
}

/// SVG rendering of a full-dimensional 2-polytope.
pub fn svg_2d(p: &QPolytope) -> Result<String> {
    if p.dim() != 2 || !p.is_full_dim() {
        return Err(Error::InvalidInput(
            "SVG export needs a full-dimensional 2-polytope".into(),
        ));
    }
    let cycle = boundary_cycle(p)?;
    let xs: Vec<f64> = p.vertices().iter().map(|v| coord(v, 0)).collect();
    let ys: Vec<f64> = p.vertices().iter().map(|v| coord(v, 1)).collect();
    let (min_x, max_x) = xs
        .iter()
        .cloned()
        .fold((f64::MAX, f64::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)));
    let (min_y, max_y) = ys
        .iter()
        .cloned()
        .fold((f64::MAX, f64::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)));
    let pad = 0.1 * ((max_x - min_x).max(max_y - min_y).max(1.0));
    // Flip the y axis so the body sits the usual way up.
    let points = cycle
        .iter()
        .map(|&i| format!("{:.6},{:.6}", xs[i], max_y + min_y - ys[i]))
        .join(" ");
    Ok(format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" ",
            "viewBox=\"{:.6} {:.6} {:.6} {:.6}\">\n",
            "  <polygon points=\"{}\" fill=\"#9ecae1\" stroke=\"#08519c\" ",
            "stroke-width=\"{:.6}\"/>\n",
            "</svg>\n"
        ),
        min_x - pad,
        min_y - pad,
        (max_x - min_x) + 2.0 * pad,
        (max_y - min_y) + 2.0 * pad,
        points,
        pad / 10.0,
    ))
}

/// OFF rendering of a full-dimensional 3-polytope with triangulated,
/// consistently outward-oriented faces.
pub fn off_3d(p: &QPolytope) -> Result<String> {
    if p.dim() != 3 || !p.is_full_dim() {
        return Err(Error::InvalidInput(
            "OFF export needs a full-dimensional 3-polytope".into(),
        ));
    }
    let mut triangles: Vec<[usize; 3]> = Vec::new();
    for h in p.halfspaces() {
        let face = p.facet_vertex_indices(h);
        // Fan-triangulate the face in a cyclic order obtained by projecting
        // to the plane coordinates.
        let drop = h
            .normal
            .coords()
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero normal");
        let mut projected = Vec::new();
        for &i in &face {
            let mut coords = p.vertices()[i].coords().to_vec();
            coords.remove(drop);
            projected.push(QVector::new(coords));
        }
        let flat = crate::geometry::hull(&projected)?;
        let cycle = boundary_cycle(&flat)?;
        let order: Vec<usize> = cycle
            .into_iter()
            .map(|j| {
                face.iter()
                    .copied()
                    .find(|&i| {
                        let mut coords = p.vertices()[i].coords().to_vec();
                        coords.remove(drop);
                        coords == flat.vertices()[j].coords()
                    })
                    .expect("projection is injective on the face")
            })
            .collect();
        for k in 1..order.len() - 1 {
            let (a, b, c) = (order[0], order[k], order[k + 1]);
            // Orient each triangle so its normal points away from the body:
            // the halfspace normal points inward, so the signed volume of
            // the triangle frame against it must be negative.
            let va = &p.vertices()[a];
            let e1 = p.vertices()[b].sub(va);
            let e2 = p.vertices()[c].sub(va);
            let cross = QVector::new(vec![
                &e1.coords()[1] * &e2.coords()[2] - &e1.coords()[2] * &e2.coords()[1],
                &e1.coords()[2] * &e2.coords()[0] - &e1.coords()[0] * &e2.coords()[2],
                &e1.coords()[0] * &e2.coords()[1] - &e1.coords()[1] * &e2.coords()[0],
            ]);
            if cross.dot(&h.normal) > num_traits::Zero::zero() {
                triangles.push([a, c, b]);
            } else {
                triangles.push([a, b, c]);
            }
        }
    }
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for t in &triangles {
        for (i, j) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
            edges.insert((i.min(j), i.max(j)));
        }
    }
    let mut out = String::from("OFF\n");
    out.push_str(&format!(
        "{} {} {}\n",
        p.vertices().len(),
        triangles.len(),
        edges.len()
    ));
    for v in p.vertices() {
        out.push_str(&format!(
            "{:.6} {:.6} {:.6}\n",
            coord(v, 0),
            coord(v, 1),
            coord(v, 2)
        ));
    }
    for t in &triangles {
        out.push_str(&format!("3 {} {} {}\n", t[0], t[1], t[2]));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::{threefold_body, trapezoid_body};
    use crate::rat::rat_int;

    #[test]
    fn svg_of_trapezoid() {
        let body = trapezoid_body(&rat_int(2), &rat_int(1)).unwrap();
        let svg = svg_2d(&body.body).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("polygon"));
        assert!(svg_2d(
            &threefold_body(&rat_int(1), &rat_int(1), &rat_int(1))
                .unwrap()
                .body
        )
        .is_err());
    }

    #[test]
    fn off_of_threefold() {
        let body = threefold_body(&rat_int(3), &rat_int(2), &rat_int(1)).unwrap();
        let off = off_3d(&body.body).unwrap();
        let mut lines = off.lines();
        assert_eq!(lines.next(), Some("OFF"));
        let counts: Vec<usize> = lines
            .next()
            .unwrap()
            .split_whitespace()
            .map(|s| s.parse().unwrap())
            .collect();
        assert_eq!(counts[0], body.body.vertices().len());
        // Euler's formula for the triangulated sphere.
        assert_eq!(counts[0] + counts[1], counts[2] + 2);
        assert!(off_3d(&trapezoid_body(&rat_int(2), &rat_int(1)).unwrap().body).is_err());
    }
}
