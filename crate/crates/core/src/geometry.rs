//! Exact convex polytopes in low dimension: hull, halfspace intersection,
//! volume, slicing.
//!
//! Every polytope carries both a vertex description and a halfspace
//! description, kept consistent by construction. Vertex enumeration works by
//! k-wise hyperplane intersection with feasibility filtering, which is exact
//! and entirely adequate for the dimensions (<= 6) and facet counts (<= ~50)
//! this crate ever sees.
//!
//! The empty polytope is a first-class value (ambient dimension recorded,
//! `affine_dim == -1`), not an error: boundary slices produce it routinely.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{solve_linear, QMatrix};
use crate::rat::Rat;

/// Point or vector with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QVector(pub Vec<Rat>);

impl QVector {
    pub fn new(coords: Vec<Rat>) -> Self {
        Self(coords)
    }

    pub fn zero(dim: usize) -> Self {
        Self(vec![Rat::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn dot(&self, other: &QVector) -> Rat {
        assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a * b)
            .fold(Rat::zero(), |acc, x| acc + x)
    }

    pub fn sub(&self, other: &QVector) -> QVector {
        assert_eq!(self.dim(), other.dim());
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }
}

impl std::fmt::Display for QVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.0.iter().map(|c| c.to_string()).join(", "))
    }
}

/// The closed halfspace `{ m : <normal, m> >= offset }`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Halfspace {
    pub normal: QVector,
    pub offset: Rat,
}

impl Halfspace {
    pub fn new(normal: QVector, offset: Rat) -> Result<Self> {
        if normal.is_zero() {
            return Err(Error::InvalidInput("halfspace normal is zero".into()));
        }
        Ok(Self { normal, offset })
    }

    pub fn satisfies(&self, p: &QVector) -> bool {
        self.normal.dot(p) >= self.offset
    }

    pub fn active_at(&self, p: &QVector) -> bool {
        self.normal.dot(p) == self.offset
    }

    /// Scale so that all entries are coprime integers; orientation kept.
    pub fn canonicalized(&self) -> Halfspace {
        let mut entries: Vec<Rat> = self.normal.0.clone();
        entries.push(self.offset.clone());
        let scaled = scale_to_coprime_integers(&entries);
        let offset = scaled.last().unwrap().clone();
        Halfspace {
            normal: QVector(scaled[..scaled.len() - 1].to_vec()),
            offset,
        }
    }
}

/// Multiply by the positive rational that makes all entries coprime integers.
fn scale_to_coprime_integers(entries: &[Rat]) -> Vec<Rat> {
    let mut lcm = BigInt::one();
    for e in entries {
        lcm = lcm.lcm(e.denom());
    }
    let ints: Vec<BigInt> = entries
        .iter()
        .map(|e| e.numer() * (&lcm / e.denom()))
        .collect();
    let mut gcd = BigInt::zero();
    for i in &ints {
        gcd = gcd.gcd(i);
    }
    if gcd.is_zero() {
        gcd = BigInt::one();
    }
    ints.into_iter()
        .map(|i| Rat::from_integer(i / &gcd))
        .collect()
}

/// Orientation-free canonical form of the boundary hyperplane, for dedup.
fn hyperplane_key(h: &Halfspace) -> (Vec<Rat>, Rat) {
    let c = h.canonicalized();
    let mut entries = c.normal.0;
    let mut offset = c.offset;
    if let Some(first) = entries.iter().find(|e| !e.is_zero()) {
        if first.is_negative() {
            for e in entries.iter_mut() {
                *e = -e.clone();
            }
            offset = -offset;
        }
    }
    (entries, offset)
}

/// Rational convex polytope with consistent V- and H-representations.
///
/// Vertices and halfspaces are stored sorted, so two polytopes describing the
/// same set compare equal field by field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPolytope {
    dim: usize,
    vertices: Vec<QVector>,
    halfspaces: Vec<Halfspace>,
    affine_dim: isize,
}

impl QPolytope {
    /// The empty polytope in ambient dimension `dim` (`affine_dim == -1`).
    pub fn empty(dim: usize) -> Self {
        let halfspaces = if dim >= 1 {
            // An honestly inconsistent H-representation of the empty set.
            let mut e1 = QVector::zero(dim);
            e1.0[0] = Rat::one();
            let mut neg = QVector::zero(dim);
            neg.0[0] = -Rat::one();
            vec![
                Halfspace {
                    normal: e1,
                    offset: Rat::one(),
                },
                Halfspace {
                    normal: neg,
                    offset: Rat::zero(),
                },
            ]
        } else {
            Vec::new()
        };
        Self {
            dim,
            vertices: Vec::new(),
            halfspaces,
            affine_dim: -1,
        }
    }

    /// The one-point polytope of the zero-dimensional ambient space.
    pub fn origin_point() -> Self {
        Self {
            dim: 0,
            vertices: vec![QVector(Vec::new())],
            halfspaces: Vec::new(),
            affine_dim: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[QVector] {
        &self.vertices
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    /// Affine dimension; -1 for the empty polytope.
    pub fn affine_dim(&self) -> isize {
        self.affine_dim
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_full_dim(&self) -> bool {
        self.affine_dim == self.dim as isize
    }

    /// Exact membership test via the halfspace description.
    pub fn contains(&self, p: &QVector) -> bool {
        if p.dim() != self.dim || self.is_empty() {
            return false;
        }
        self.halfspaces.iter().all(|h| h.satisfies(p))
    }

    /// Same point set: identical vertex sets (both canonical and sorted).
    pub fn same_set(&self, other: &QPolytope) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }

    /// Exact Euclidean volume in the ambient space: 0 whenever
    /// `affine_dim < dim`, and by convention 1 for the point in dimension 0.
    pub fn volume(&self) -> Rat {
        if self.is_empty() {
            return Rat::zero();
        }
        if self.dim == 0 {
            return Rat::one();
        }
        if !self.is_full_dim() {
            return Rat::zero();
        }
        let simplices = self.triangulate();
        let mut total = Rat::zero();
        for s in &simplices {
            let base = &self.vertices[s[0]];
            let rows: Vec<Vec<Rat>> = s[1..]
                .iter()
                .map(|&i| self.vertices[i].sub(base).0)
                .collect();
            total += QMatrix::from_rows(rows).det().abs();
        }
        total / Rat::from_integer(factorial(self.dim))
    }

    /// Triangulation of a full-dimensional polytope into simplices given as
    /// vertex-index lists (each of length `dim + 1`). Stellates from the
    /// first vertex over facet triangulations.
    fn triangulate(&self) -> Vec<Vec<usize>> {
        assert!(self.is_full_dim() && self.dim >= 1);
        if self.dim == 1 {
            assert_eq!(self.vertices.len(), 2);
            return vec![vec![0, 1]];
        }
        let v0 = 0usize;
        let mut simplices = Vec::new();
        for h in &self.halfspaces {
            if h.active_at(&self.vertices[v0]) {
                continue;
            }
            let facet_idx: Vec<usize> = (0..self.vertices.len())
                .filter(|&i| h.active_at(&self.vertices[i]))
                .collect();
            // Drop a coordinate in which the facet normal is nonzero; the
            // facet hyperplane projects bijectively onto the rest.
            let drop = h.normal.0.iter().position(|c| !c.is_zero()).unwrap();
            let mut lookup: BTreeMap<Vec<Rat>, usize> = BTreeMap::new();
            let mut projected = Vec::with_capacity(facet_idx.len());
            for &i in &facet_idx {
                let mut coords = self.vertices[i].0.clone();
                coords.remove(drop);
                lookup.insert(coords.clone(), i);
                projected.push(QVector(coords));
            }
            let sub = hull(&projected).expect("facet projection hull");
            for tri in sub.triangulate() {
                let mut simplex = vec![v0];
                for &j in &tri {
                    simplex.push(lookup[&sub.vertices[j].0]);
                }
                simplices.push(simplex);
            }
        }
        simplices
    }

    /// `P` intersected with `{ m_axis = value }`, re-embedded in one
    /// dimension less by deleting the sliced coordinate. Empty slices are
    /// fine and return the empty polytope.
    pub fn slice(&self, axis: usize, value: &Rat) -> Result<QPolytope> {
        if axis >= self.dim {
            return Err(Error::AxisOutOfRange {
                axis,
                dim: self.dim,
            });
        }
        let out_dim = self.dim - 1;
        if self.is_empty() {
            return Ok(QPolytope::empty(out_dim));
        }
        let mut constraints = Vec::new();
        let mut consistent = true;
        for h in &self.halfspaces {
            let mut normal = h.normal.0.clone();
            let coeff = normal.remove(axis);
            let offset = &h.offset - &coeff * value;
            let reduced = QVector(normal);
            if reduced.is_zero() {
                if offset.is_positive() {
                    consistent = false;
                    break;
                }
            } else {
                constraints.push(Halfspace {
                    normal: reduced,
                    offset,
                });
            }
        }
        if !consistent {
            return Ok(QPolytope::empty(out_dim));
        }
        if out_dim == 0 {
            return Ok(QPolytope::origin_point());
        }
        intersect_halfspaces(out_dim, &constraints)
    }

    /// Vertex indices lying on the boundary hyperplane of `h`.
    pub fn facet_vertex_indices(&self, h: &Halfspace) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&i| h.active_at(&self.vertices[i]))
            .collect()
    }

    /// Triangulation exposed for export: simplices as vertex-index lists.
    pub fn triangulation(&self) -> Vec<Vec<usize>> {
        self.triangulate()
    }

    /// JSON value per the polytope schema: `dim`, `vertices`, `halfspaces`,
    /// with rationals as canonical `"p/q"` strings.
    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::{json, Value};
        let vec_json = |v: &QVector| -> Value {
            Value::Array(v.0.iter().map(|c| Value::String(c.to_string())).collect())
        };
        json!({
            "dim": self.dim,
            "vertices": self.vertices.iter().map(vec_json).collect::<Vec<_>>(),
            "halfspaces": self
                .halfspaces
                .iter()
                .map(|h| json!({ "normal": vec_json(&h.normal), "offset": h.offset.to_string() }))
                .collect::<Vec<_>>(),
        })
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Convex hull of a nonempty point set sharing one dimension. The result
/// lists exactly the extreme points, with a consistent halfspace description
/// (including affine-hull equality pairs when the hull is lower-dimensional).
pub fn hull(points: &[QVector]) -> Result<QPolytope> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let dim = points[0].dim();
    for p in points {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: p.dim(),
            });
        }
    }
    let mut pts: Vec<QVector> = points.to_vec();
    pts.sort();
    pts.dedup();

    if dim == 0 {
        return Ok(QPolytope::origin_point());
    }

    // Affine dimension and a coordinate set onto which the affine hull
    // projects bijectively.
    let base = pts[0].clone();
    let (affine_dim, pivot_cols) = if pts.len() == 1 {
        (0, Vec::new())
    } else {
        let rows: Vec<Vec<Rat>> = pts[1..].iter().map(|p| p.sub(&base).0).collect();
        let mut diff = QMatrix::from_rows(rows);
        let pivots = diff.rref_in_place();
        (pivots.len(), pivots)
    };

    if affine_dim == 0 {
        // Single point: equality pair per coordinate.
        let mut halfspaces = Vec::new();
        for i in 0..dim {
            let mut e = QVector::zero(dim);
            e.0[i] = Rat::one();
            let mut ne = QVector::zero(dim);
            ne.0[i] = -Rat::one();
            halfspaces.push(
                Halfspace {
                    normal: e,
                    offset: base.0[i].clone(),
                }
                .canonicalized(),
            );
            halfspaces.push(
                Halfspace {
                    normal: ne,
                    offset: -base.0[i].clone(),
                }
                .canonicalized(),
            );
        }
        halfspaces.sort();
        return Ok(QPolytope {
            dim,
            vertices: vec![base],
            halfspaces,
            affine_dim: 0,
        });
    }

    if affine_dim == dim {
        let facets = facet_hyperplanes(&pts, dim);
        let vertex_idx = extreme_points(&pts, &facets, dim);
        let vertices: Vec<QVector> = vertex_idx.into_iter().map(|i| pts[i].clone()).collect();
        let mut halfspaces = facets;
        halfspaces.sort();
        return Ok(QPolytope {
            dim,
            vertices,
            halfspaces,
            affine_dim: dim as isize,
        });
    }

    // Lower-dimensional hull: work in the pivot coordinates, then lift.
    let project = |p: &QVector| QVector(pivot_cols.iter().map(|&c| p.0[c].clone()).collect());
    let projected: Vec<QVector> = pts.iter().map(project).collect();
    let facets_low = facet_hyperplanes(&projected, affine_dim);
    let vertex_idx = extreme_points(&projected, &facets_low, affine_dim);

    let mut halfspaces = Vec::new();
    // Affine-hull equalities: normals spanning the orthogonal complement of
    // the difference space.
    let rows: Vec<Vec<Rat>> = pts[1..].iter().map(|p| p.sub(&base).0).collect();
    for w in QMatrix::from_rows(rows).kernel_basis() {
        let normal = QVector(w);
        let offset = normal.dot(&base);
        halfspaces.push(
            Halfspace {
                normal: normal.clone(),
                offset: offset.clone(),
            }
            .canonicalized(),
        );
        halfspaces.push(
            Halfspace {
                normal: QVector(normal.0.iter().map(|c| -c).collect()),
                offset: -offset,
            }
            .canonicalized(),
        );
    }
    // Facet inequalities, lifted by scattering into the pivot coordinates.
    for f in &facets_low {
        let mut normal = vec![Rat::zero(); dim];
        for (k, &c) in pivot_cols.iter().enumerate() {
            normal[c] = f.normal.0[k].clone();
        }
        halfspaces.push(
            Halfspace {
                normal: QVector(normal),
                offset: f.offset.clone(),
            }
            .canonicalized(),
        );
    }
    halfspaces.sort();
    halfspaces.dedup();
    let vertices: Vec<QVector> = vertex_idx.into_iter().map(|i| pts[i].clone()).collect();
    Ok(QPolytope {
        dim,
        vertices,
        halfspaces,
        affine_dim: affine_dim as isize,
    })
}

/// Supporting facet halfspaces of a point set that affinely spans `R^d`.
fn facet_hyperplanes(pts: &[QVector], d: usize) -> Vec<Halfspace> {
    if d == 1 {
        let min = pts.iter().map(|p| p.0[0].clone()).min().unwrap();
        let max = pts.iter().map(|p| p.0[0].clone()).max().unwrap();
        return vec![
            Halfspace {
                normal: QVector(vec![Rat::one()]),
                offset: min,
            }
            .canonicalized(),
            Halfspace {
                normal: QVector(vec![-Rat::one()]),
                offset: -max,
            }
            .canonicalized(),
        ];
    }
    let mut seen: BTreeSet<(Vec<Rat>, Rat)> = BTreeSet::new();
    let mut facets = Vec::new();
    for combo in (0..pts.len()).combinations(d) {
        let base = &pts[combo[0]];
        let rows: Vec<Vec<Rat>> = combo[1..].iter().map(|&i| pts[i].sub(base).0).collect();
        let kernel = QMatrix::from_rows(rows).kernel_basis();
        if kernel.len() != 1 {
            continue;
        }
        let normal = QVector(kernel.into_iter().next().unwrap());
        let offset = normal.dot(base);
        let mut has_pos = false;
        let mut has_neg = false;
        for p in pts {
            let v = normal.dot(p) - &offset;
            if v.is_positive() {
                has_pos = true;
            } else if v.is_negative() {
                has_neg = true;
            }
            if has_pos && has_neg {
                break;
            }
        }
        if has_pos && has_neg {
            continue;
        }
        let facet = if has_neg {
            Halfspace {
                normal: QVector(normal.0.iter().map(|c| -c).collect()),
                offset: -offset,
            }
        } else {
            Halfspace { normal, offset }
        }
        .canonicalized();
        let key = (facet.normal.0.clone(), facet.offset.clone());
        if seen.insert(key) {
            facets.push(facet);
        }
    }
    facets
}

/// Indices of the extreme points: those whose active facet normals span.
fn extreme_points(pts: &[QVector], facets: &[Halfspace], d: usize) -> Vec<usize> {
    (0..pts.len())
        .filter(|&i| {
            let active: Vec<Vec<Rat>> = facets
                .iter()
                .filter(|h| h.active_at(&pts[i]))
                .map(|h| h.normal.0.clone())
                .collect();
            !active.is_empty() && QMatrix::from_rows(active).rank() == d
        })
        .collect()
}

/// Bounded intersection of halfspaces, with both representations populated.
///
/// An empty intersection is returned as the empty-polytope value; an
/// unbounded one is an error (every polytope in scope is bounded).
pub fn intersect_halfspaces(dim: usize, halfspaces: &[Halfspace]) -> Result<QPolytope> {
    if dim == 0 {
        return Err(Error::InvalidInput(
            "halfspace intersection needs ambient dimension >= 1".into(),
        ));
    }
    for h in halfspaces {
        if h.normal.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: h.normal.dim(),
            });
        }
        if h.normal.is_zero() {
            return Err(Error::InvalidInput("halfspace normal is zero".into()));
        }
    }
    let candidates = candidate_vertices(dim, halfspaces);
    if !candidates.is_empty() {
        let normals: Vec<QVector> = halfspaces.iter().map(|h| h.normal.clone()).collect();
        if !positively_spans(&normals, dim) {
            return Err(Error::UnboundedPolytope);
        }
        return hull(&candidates);
    }
    // No basic feasible point. Either the set is empty, or it is nonempty
    // without vertices, i.e. it contains a line and is unbounded.
    let normal_rows: Vec<Vec<Rat>> = halfspaces.iter().map(|h| h.normal.0.clone()).collect();
    if normal_rows.is_empty() {
        return Err(Error::UnboundedPolytope); // whole space
    }
    let rank = QMatrix::from_rows(normal_rows.clone()).rank();
    if rank == dim {
        return Ok(QPolytope::empty(dim));
    }
    if reduced_system_feasible(dim, halfspaces, rank)? {
        Err(Error::UnboundedPolytope)
    } else {
        Ok(QPolytope::empty(dim))
    }
}

/// All feasible intersection points of `dim`-subsets of the boundary
/// hyperplanes; these are exactly the vertices of the intersection.
fn candidate_vertices(dim: usize, halfspaces: &[Halfspace]) -> Vec<QVector> {
    let mut planes: Vec<(Vec<Rat>, Rat)> = halfspaces.iter().map(hyperplane_key).collect();
    planes.sort();
    planes.dedup();
    if planes.len() < dim {
        return Vec::new();
    }
    let mut found: BTreeSet<QVector> = BTreeSet::new();
    for combo in (0..planes.len()).combinations(dim) {
        let a = QMatrix::from_rows(combo.iter().map(|&i| planes[i].0.clone()).collect());
        let b: Vec<Rat> = combo.iter().map(|&i| planes[i].1.clone()).collect();
        let report = solve_linear(&a, &b).expect("square system");
        if report.rank < dim {
            continue;
        }
        let x = QVector(report.solution.expect("full-rank square system"));
        if halfspaces.iter().all(|h| h.satisfies(&x)) {
            found.insert(x);
        }
    }
    found.into_iter().collect()
}

/// True if the vectors positively span `R^d`, equivalently if the recession
/// cone `{ y : <n_i, y> >= 0 for all i }` is `{0}`; for a nonempty
/// intersection this is exactly boundedness. Checked exactly: the origin
/// must be strictly inside the hull of the vectors.
pub fn positively_spans(vectors: &[QVector], d: usize) -> bool {
    if vectors.is_empty() {
        return d == 0;
    }
    let h = match hull(vectors) {
        Ok(h) => h,
        Err(_) => return false,
    };
    if !h.is_full_dim() {
        return false;
    }
    h.halfspaces().iter().all(|f| f.offset.is_negative())
}

/// Feasibility of the system after quotienting out the common lineality
/// directions: rewrite each normal in a basis of the normal row space and
/// test the reduced full-rank system for basic feasible points.
fn reduced_system_feasible(dim: usize, halfspaces: &[Halfspace], rank: usize) -> Result<bool> {
    if rank == 0 {
        // No effective constraints: the whole space, nonempty.
        return Ok(true);
    }
    // Pick `rank` independent normals as a basis of the row space.
    let mut basis_rows: Vec<Vec<Rat>> = Vec::new();
    for h in halfspaces {
        let mut trial = basis_rows.clone();
        trial.push(h.normal.0.clone());
        if QMatrix::from_rows(trial.clone()).rank() == trial.len() {
            basis_rows = trial;
            if basis_rows.len() == rank {
                break;
            }
        }
    }
    let basis_t = QMatrix::from_rows(basis_rows).transpose(); // dim x rank
    let mut reduced = Vec::new();
    for h in halfspaces {
        let report = solve_linear(&basis_t, &h.normal.0)?;
        let coeffs = report
            .solution
            .expect("normal lies in the row space by construction");
        reduced.push(Halfspace {
            normal: QVector(coeffs),
            offset: h.offset.clone(),
        });
    }
    let _ = dim;
    Ok(!candidate_vertices(rank, &reduced).is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    pub(crate) fn qv(coords: &[i64]) -> QVector {
        QVector(coords.iter().map(|&c| rat_int(c)).collect())
    }

    fn qvr(coords: &[(i64, i64)]) -> QVector {
        QVector(coords.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    fn hs(normal: &[i64], offset: i64) -> Halfspace {
        Halfspace::new(qv(normal), rat_int(offset)).unwrap()
    }

    /// Shoelace oracle for the area of a convex polygon given in cyclic order.
    fn shoelace(points: &[QVector]) -> Rat {
        let n = points.len();
        let mut twice = Rat::zero();
        for i in 0..n {
            let (a, b) = (&points[i], &points[(i + 1) % n]);
            twice += &a.0[0] * &b.0[1] - &b.0[0] * &a.0[1];
        }
        twice.abs() / rat_int(2)
    }

    /// Edge-intersection oracle for slices: intersect every vertex pair
    /// segment with the hyperplane, then hull the hits.
    fn slice_oracle(p: &QPolytope, axis: usize, value: &Rat) -> QPolytope {
        let mut hits: Vec<QVector> = Vec::new();
        let verts = p.vertices();
        for i in 0..verts.len() {
            for j in i..verts.len() {
                let (a, b) = (&verts[i], &verts[j]);
                let (fa, fb) = (&a.0[axis] - value, &b.0[axis] - value);
                if fa.is_zero() {
                    hits.push(a.clone());
                }
                if fb.is_zero() {
                    hits.push(b.clone());
                }
                if (fa.is_positive() && fb.is_negative()) || (fa.is_negative() && fb.is_positive())
                {
                    let s = -fa.clone() / (fb - fa);
                    let coords: Vec<Rat> =
                        a.0.iter()
                            .zip(&b.0)
                            .map(|(x, y)| x + &s * (y - x))
                            .collect();
                    hits.push(QVector(coords));
                }
            }
        }
        let dropped: Vec<QVector> = hits
            .into_iter()
            .map(|mut v| {
                v.0.remove(axis);
                v
            })
            .collect();
        if dropped.is_empty() {
            QPolytope::empty(p.dim() - 1)
        } else {
            hull(&dropped).unwrap()
        }
    }

    #[test]
    fn hull_drops_interior_point() {
        let p = hull(&[
            qv(&[0, 0]),
            qv(&[1, 0]),
            qv(&[0, 1]),
            qv(&[1, 1]),
            qvr(&[(1, 2), (1, 2)]),
        ])
        .unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert!(p.is_full_dim());
        assert!(p.contains(&qvr(&[(1, 2), (1, 2)])));
    }

    #[test]
    fn hull_rejects_mixed_dimensions() {
        assert_eq!(
            hull(&[qv(&[0, 0]), qv(&[1, 1, 1])]),
            Err(Error::DimensionMismatch {
                expected: 2,
                got: 3
            })
        );
        assert_eq!(hull(&[]), Err(Error::EmptyPointSet));
    }

    #[test]
    fn hull_collinear_degeneracy() {
        let p = hull(&[qv(&[0, 0]), qv(&[1, 1]), qv(&[2, 2])]).unwrap();
        assert_eq!(p.affine_dim(), 1);
        assert_eq!(p.vertices(), &[qv(&[0, 0]), qv(&[2, 2])]);
        assert_eq!(p.volume(), Rat::zero());
        assert!(p.contains(&qv(&[1, 1])));
        assert!(!p.contains(&qv(&[1, 0])));
    }

    #[test]
    fn hull_tetrahedron_keeps_all_four() {
        let pts = [
            qv(&[0, 0, 0]),
            qv(&[1, 1, 0]),
            qv(&[2, 0, 2]),
            qv(&[3, 0, 0]),
        ];
        let p = hull(&pts).unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert!(p.is_full_dim());
    }

    #[test]
    fn intersect_unit_square() {
        let p = intersect_halfspaces(
            2,
            &[
                hs(&[1, 0], 0),
                hs(&[0, 1], 0),
                hs(&[-1, 0], -1),
                hs(&[0, -1], -1),
            ],
        )
        .unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.volume(), rat_int(1));
    }

    #[test]
    fn intersect_triangle_matches_pairwise_oracle() {
        // 0 <= m1 <= 1, 0 <= m2 <= 1, 0 <= m1 + m2 <= 1.
        let constraints = [
            hs(&[1, 0], 0),
            hs(&[-1, 0], -1),
            hs(&[0, 1], 0),
            hs(&[0, -1], -1),
            hs(&[1, 1], 0),
            hs(&[-1, -1], -1),
        ];
        let p = intersect_halfspaces(2, &constraints).unwrap();

        // Independent brute-force oracle over all boundary pairs.
        let mut expected: BTreeSet<QVector> = BTreeSet::new();
        for i in 0..constraints.len() {
            for j in i + 1..constraints.len() {
                let a = QMatrix::from_rows(vec![
                    constraints[i].normal.0.clone(),
                    constraints[j].normal.0.clone(),
                ]);
                let b = vec![constraints[i].offset.clone(), constraints[j].offset.clone()];
                let rep = solve_linear(&a, &b).unwrap();
                if rep.rank < 2 {
                    continue;
                }
                let x = QVector(rep.solution.unwrap());
                if constraints.iter().all(|h| h.satisfies(&x)) {
                    expected.insert(x);
                }
            }
        }
        let got: BTreeSet<QVector> = p.vertices().iter().cloned().collect();
        assert_eq!(got, expected);
        assert_eq!(
            got,
            [qv(&[0, 0]), qv(&[1, 0]), qv(&[0, 1])]
                .into_iter()
                .collect()
        );
    }

    #[test]
    fn intersect_inconsistent_is_empty() {
        let p = intersect_halfspaces(2, &[hs(&[1, 0], 1), hs(&[-1, 0], 0)]).unwrap();
        assert!(p.is_empty());
        assert_eq!(p.affine_dim(), -1);
        assert_eq!(p.volume(), Rat::zero());
    }

    #[test]
    fn intersect_unbounded_is_an_error() {
        assert_eq!(
            intersect_halfspaces(2, &[hs(&[1, 0], 0), hs(&[0, 1], 0)]),
            Err(Error::UnboundedPolytope)
        );
        // A slab: nonempty, no vertices, contains a line.
        assert_eq!(
            intersect_halfspaces(2, &[hs(&[1, 0], 0), hs(&[-1, 0], -1)]),
            Err(Error::UnboundedPolytope)
        );
        // Inconsistent slab: empty even though the normals do not span.
        let p = intersect_halfspaces(2, &[hs(&[1, 0], 1), hs(&[-1, 0], 0)]).unwrap();
        assert!(p.is_empty());
    }

    #[test]
    fn volume_unit_cube() {
        let mut constraints = Vec::new();
        for i in 0..3 {
            let mut pos = [0i64; 3];
            pos[i] = 1;
            let mut neg = [0i64; 3];
            neg[i] = -1;
            constraints.push(hs(&pos, 0));
            constraints.push(hs(&neg, -1));
        }
        let p = intersect_halfspaces(3, &constraints).unwrap();
        assert_eq!(p.volume(), rat_int(1));
        assert_eq!(p.vertices().len(), 8);

        // Stellation from one corner: three far facets, two tetrahedra each.
        let tets = p.triangulation();
        assert_eq!(tets.len(), 6);
        for t in &tets {
            assert_eq!(t.len(), 4);
        }
    }

    #[test]
    fn volume_tetrahedron_is_one() {
        let p = hull(&[
            qv(&[0, 0, 0]),
            qv(&[1, 1, 0]),
            qv(&[2, 0, 2]),
            qv(&[3, 0, 0]),
        ])
        .unwrap();
        assert_eq!(p.volume(), rat_int(1));
    }

    #[test]
    fn volume_trapezoid_matches_shoelace() {
        let cyclic = [qv(&[0, 0]), qv(&[1, 1]), qv(&[2, 1]), qv(&[3, 0])];
        assert_eq!(shoelace(&cyclic), rat_int(2));
        let p = hull(&cyclic).unwrap();
        assert_eq!(p.volume(), rat_int(2));
    }

    #[test]
    fn slice_tetrahedron_matches_edge_oracle() {
        let p = hull(&[
            qv(&[0, 0, 0]),
            qv(&[1, 1, 0]),
            qv(&[2, 0, 2]),
            qv(&[3, 0, 0]),
        ])
        .unwrap();
        let s = p.slice(0, &rat_int(1)).unwrap();
        let oracle = slice_oracle(&p, 0, &rat_int(1));
        assert!(s.same_set(&oracle));
        let expected: BTreeSet<QVector> = [qv(&[0, 0]), qv(&[1, 0]), qv(&[0, 1])]
            .into_iter()
            .collect();
        assert_eq!(
            s.vertices().iter().cloned().collect::<BTreeSet<_>>(),
            expected
        );
    }

    #[test]
    fn slice_square_and_out_of_range() {
        let square = hull(&[qv(&[0, 0]), qv(&[1, 0]), qv(&[0, 1]), qv(&[1, 1])]).unwrap();
        let s = square.slice(0, &rat(1, 2)).unwrap();
        assert_eq!(
            s.vertices(),
            &[QVector(vec![rat_int(0)]), QVector(vec![rat_int(1)])]
        );
        assert_eq!(s.volume(), rat_int(1));
        let outside = square.slice(0, &rat_int(5)).unwrap();
        assert!(outside.is_empty());
    }

    #[test]
    fn round_trip_vrep_hrep() {
        let bodies = [
            hull(&[qv(&[0, 0]), qv(&[1, 1]), qv(&[2, 0])]).unwrap(),
            hull(&[
                qv(&[0, 0, 0]),
                qv(&[1, 1, 0]),
                qv(&[2, 0, 2]),
                qv(&[3, 0, 0]),
            ])
            .unwrap(),
            hull(&[qv(&[0, 0]), qv(&[1, 1]), qv(&[2, 2])]).unwrap(),
        ];
        for p in &bodies {
            let back = intersect_halfspaces(p.dim(), p.halfspaces()).unwrap();
            assert!(back.same_set(p));
            assert_eq!(back.halfspaces(), p.halfspaces());
        }
    }

    #[test]
    fn slice_monotone_in_projection_interval() {
        let p = hull(&[
            qv(&[0, 0, 0]),
            qv(&[1, 1, 0]),
            qv(&[2, 0, 2]),
            qv(&[3, 0, 0]),
        ])
        .unwrap();
        let lo = p.vertices().iter().map(|v| v.0[0].clone()).min().unwrap();
        let hi = p.vertices().iter().map(|v| v.0[0].clone()).max().unwrap();
        for t in [
            rat(-1, 2),
            rat_int(0),
            rat(1, 3),
            rat(5, 2),
            rat_int(3),
            rat(7, 2),
        ] {
            let inside = t >= lo && t <= hi;
            let s = p.slice(0, &t).unwrap();
            assert_eq!(!s.is_empty(), inside, "t = {t}");
        }
    }

    #[test]
    fn json_schema_shape() {
        let p = hull(&[qv(&[0, 0]), qv(&[1, 0]), qv(&[0, 1])]).unwrap();
        let j = p.to_json();
        assert_eq!(j["dim"], 2);
        assert_eq!(j["vertices"].as_array().unwrap().len(), 3);
        assert!(j["halfspaces"][0]["normal"].is_array());
        assert!(j["halfspaces"][0]["offset"].is_string());
    }
}
