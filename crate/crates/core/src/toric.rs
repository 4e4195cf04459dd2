//! Toric slice volumes on the blow-up of projective space at the
//! torus-fixed points.
//!
//! For degrees `d_1..d_n` and a slice parameter `t`, the divisor
//! `t*H - sum (t - d_i) E_i` on the blow-up of `P^{n-1}` at the `n`
//! coordinate points has a lattice polytope whose Euclidean volume is the
//! slice volume of the corresponding convex body. The volume function is a
//! quasi-polynomial in `t`, with branches changing at subset sums of the
//! degrees, and integrates over `[0, sum d_i]` to the product of the
//! degrees.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{intersect_halfspaces, Halfspace, QPolytope, QVector};
use crate::linalg::{solve_linear, QMatrix};
use crate::rat::{rat_int, rat_pow, Rat};

/// Fan data of the blow-up of `P^{n-1}` at the `n` torus-fixed points:
/// the projective-space rays `f_1..f_n` together with the exceptional rays
/// `e_i = -f_i`.
#[derive(Debug, Clone)]
pub struct BlowupFan {
    n: usize,
    f_rays: Vec<QVector>,
    e_rays: Vec<QVector>,
}

impl BlowupFan {
    /// Fan for the blow-up of `P^{n-1}`; needs `n >= 2`. For `n == 2` the
    /// exceptional rays coincide with opposite coordinate rays (blowing up a
    /// point on a curve does nothing), for `n >= 3` all `2n` rays are
    /// pairwise distinct.
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput("fan needs n >= 2".into()));
        }
        let dim = n - 1;
        let mut f_rays = Vec::with_capacity(n);
        for i in 0..dim {
            let mut v = QVector::zero(dim);
            v.0[i] = Rat::one();
            f_rays.push(v);
        }
        f_rays.push(QVector(vec![-Rat::one(); dim]));
        let e_rays: Vec<QVector> = f_rays
            .iter()
            .map(|f| QVector(f.0.iter().map(|c| -c).collect()))
            .collect();
        debug_assert!({
            let sum = f_rays.iter().fold(QVector::zero(dim), |acc, f| {
                QVector(acc.0.iter().zip(&f.0).map(|(a, b)| a + b).collect())
            });
            sum.is_zero()
        });
        Ok(Self { n, f_rays, e_rays })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn f_rays(&self) -> &[QVector] {
        &self.f_rays
    }

    pub fn e_rays(&self) -> &[QVector] {
        &self.e_rays
    }

    /// Polytope of the torus-invariant divisor with the given coefficients
    /// on the `F_i` and `E_i`: the set of `m` with `<m, ray> >= -coeff` for
    /// every ray.
    pub fn divisor_polytope(&self, f_coeffs: &[Rat], e_coeffs: &[Rat]) -> Result<QPolytope> {
        assert_eq!(f_coeffs.len(), self.n);
        assert_eq!(e_coeffs.len(), self.n);
        let mut constraints = Vec::with_capacity(2 * self.n);
        for (ray, c) in self.f_rays.iter().zip(f_coeffs) {
            constraints.push(Halfspace::new(ray.clone(), -c.clone())?);
        }
        for (ray, c) in self.e_rays.iter().zip(e_coeffs) {
            constraints.push(Halfspace::new(ray.clone(), -c.clone())?);
        }
        intersect_halfspaces(self.n - 1, &constraints)
    }
}

/// The divisor `t*H - sum (t - d_i) E_i` on the blow-up, as coefficient
/// data: degrees `d_1..d_n > 0` and `0 <= t <= sum d_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricSliceDivisor {
    n: usize,
    degrees: Vec<Rat>,
    t: Rat,
}

impl ToricSliceDivisor {
    pub fn new(degrees: Vec<Rat>, t: Rat) -> Result<Self> {
        let n = degrees.len();
        if n < 2 {
            return Err(Error::InvalidInput(
                "slice divisor needs at least two degrees".into(),
            ));
        }
        if degrees.iter().any(|d| !d.is_positive()) {
            return Err(Error::InvalidInput("degrees must be positive".into()));
        }
        let total: Rat = degrees.iter().fold(Rat::zero(), |acc, d| acc + d);
        if t.is_negative() || t > total {
            return Err(Error::InvalidInput(format!(
                "t must lie in [0, {total}], got {t}"
            )));
        }
        Ok(Self { n, degrees, t })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degrees(&self) -> &[Rat] {
        &self.degrees
    }

    pub fn t(&self) -> &Rat {
        &self.t
    }

    /// Coefficients of the same class written on the rays: `t/n` on each
    /// `F_i` and `d_i - t/n` on each `E_i`.
    pub fn ray_coefficients(&self) -> (Vec<Rat>, Vec<Rat>) {
        let tn = &self.t / rat_int(self.n as i64);
        let f = vec![tn.clone(); self.n];
        let e = self.degrees.iter().map(|d| d - &tn).collect();
        (f, e)
    }

    /// The divisor polytope: `{ m : m_i >= -t/n, sum m_i <= t/n,
    /// m_i <= d_i - t/n, sum m_i >= t/n - d_n }` in dimension `n - 1`.
    pub fn polytope(&self) -> QPolytope {
        let fan = BlowupFan::new(self.n).expect("n >= 2 checked at construction");
        let (f, e) = self.ray_coefficients();
        fan.divisor_polytope(&f, &e)
            .expect("divisor polytope is bounded")
    }

    /// The same volume after translating by `t/n` in each coordinate:
    /// `{ 0 <= m_i <= d_i, t - d_n <= sum m_i <= t }`.
    pub fn translated_polytope(&self) -> QPolytope {
        let dim = self.n - 1;
        let mut constraints = Vec::new();
        for i in 0..dim {
            let mut pos = QVector::zero(dim);
            pos.0[i] = Rat::one();
            let mut neg = QVector::zero(dim);
            neg.0[i] = -Rat::one();
            constraints.push(Halfspace::new(pos, Rat::zero()).unwrap());
            constraints.push(Halfspace::new(neg, -self.degrees[i].clone()).unwrap());
        }
        let ones = QVector(vec![Rat::one(); dim]);
        let neg_ones = QVector(vec![-Rat::one(); dim]);
        constraints.push(Halfspace::new(ones, &self.t - &self.degrees[dim]).unwrap());
        constraints.push(Halfspace::new(neg_ones, -self.t.clone()).unwrap());
        intersect_halfspaces(dim, &constraints).expect("box slab is bounded")
    }

    /// Exact slice volume `A(t) - A(t - d_n)`, with `A` over the first
    /// `n - 1` degrees. Equals the volume of either divisor polytope.
    pub fn slice_volume(&self) -> Rat {
        let head = &self.degrees[..self.n - 1];
        let shifted = &self.t - &self.degrees[self.n - 1];
        box_slab_volume(head, &self.t) - box_slab_volume(head, &shifted)
    }
}

/// Volume of `{ 0 <= m_i <= d_i, sum m_i <= t }` by inclusion-exclusion:
///
/// ```text
/// A(t) = 1/k! * sum_{S subset of [k]} (-1)^|S| max(0, t - sum_{i in S} d_i)^k
/// ```
///
/// with `k` the number of degrees. `A(t) = 0` for `t <= 0` and
/// `A(t) = prod d_i` for `t >= sum d_i`. This closed form is `O(2^k)` per
/// evaluation and trivially integrable piecewise; the polytope engine serves
/// as an independent cross-check oracle in the test suites.
pub fn box_slab_volume(degrees: &[Rat], t: &Rat) -> Rat {
    let k = degrees.len();
    assert!(k >= 1, "box slab volume needs at least one degree");
    assert!(degrees.iter().all(|d| d.is_positive()));
    let mut total = Rat::zero();
    for mask in 0u32..(1 << k) {
        let mut shifted = t.clone();
        let mut sign_negative = false;
        for (i, d) in degrees.iter().enumerate() {
            if mask & (1 << i) != 0 {
                shifted -= d;
                sign_negative = !sign_negative;
            }
        }
        if !shifted.is_positive() {
            continue;
        }
        let term = rat_pow(&shifted, k as u32);
        if sign_negative {
            total -= term;
        } else {
            total += term;
        }
    }
    total / Rat::from_integer((1..=k).product::<usize>().into())
}

/// Sorted, deduplicated subset sums of the given degrees. These are exactly
/// the parameters where the slice-volume quasi-polynomial changes branch.
pub fn branch_points(degrees: &[Rat]) -> Vec<Rat> {
    let mut sums = vec![Rat::zero()];
    for d in degrees {
        let with_d: Vec<Rat> = sums.iter().map(|s| s + d).collect();
        sums.extend(with_d);
    }
    sums.sort();
    sums.dedup();
    sums
}

/// Branch points interleaved with the midpoints of consecutive branch
/// intervals: the canonical sampling grid for slice checks.
pub fn sample_grid(degrees: &[Rat]) -> Vec<Rat> {
    let bps = branch_points(degrees);
    let mut grid = Vec::with_capacity(2 * bps.len());
    for i in 0..bps.len() {
        grid.push(bps[i].clone());
        if i + 1 < bps.len() {
            grid.push((&bps[i] + &bps[i + 1]) / rat_int(2));
        }
    }
    grid
}

/// Coefficients (constant first) of the polynomial of degree `< nodes.len()`
/// interpolating the sample values, recovered by an exact Vandermonde solve.
fn interpolate(nodes: &[Rat], values: &[Rat]) -> Vec<Rat> {
    let k = nodes.len();
    let mut vander = QMatrix::zeros(k, k);
    for (r, x) in nodes.iter().enumerate() {
        let mut p = Rat::one();
        for c in 0..k {
            vander[(r, c)] = p.clone();
            p *= x;
        }
    }
    let report = solve_linear(&vander, values).expect("square Vandermonde");
    report.solution.expect("distinct nodes")
}

/// Integral of the polynomial over `[a, b]` via the antiderivative.
fn integrate_poly(coeffs: &[Rat], a: &Rat, b: &Rat) -> Rat {
    let anti: Vec<Rat> = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| c / rat_int(i as i64 + 1))
        .collect();
    let eval_anti = |x: &Rat| -> Rat {
        let mut acc = Rat::zero();
        for c in anti.iter().rev() {
            acc = acc * x + c;
        }
        acc * x
    };
    eval_anti(b) - eval_anti(a)
}

/// Piecewise-exact integral over one branch interval of a function that is
/// polynomial of degree `< deg_bound` there, by interpolation at interior
/// nodes.
fn integrate_piece<F: Fn(&Rat) -> Rat>(f: &F, a: &Rat, b: &Rat, deg_bound: usize) -> Rat {
    let k = deg_bound;
    let width = b - a;
    let mut nodes = Vec::with_capacity(k);
    let mut values = Vec::with_capacity(k);
    for j in 0..k {
        let node = a + &width * crate::rat::rat(2 * j as i64 + 1, 2 * k as i64);
        values.push(f(&node));
        nodes.push(node);
    }
    let coeffs = interpolate(&nodes, &values);
    integrate_poly(&coeffs, a, b)
}

/// Exact integral of the slice volume over `t` in `[0, sum d_i]`, split at
/// the branch points, each piece recovered by interpolation. Also evaluates
/// the telescoped form, the integral of `A` over the last interval
/// `[d_1 + .. + d_{n-1}, sum d_i]`, and asserts the two routes agree.
/// The common value is the product of the degrees.
pub fn volume_integral(degrees: &[Rat]) -> Rat {
    let n = degrees.len();
    assert!(n >= 2, "volume integral needs at least two degrees");
    assert!(degrees.iter().all(|d| d.is_positive()));
    let head = &degrees[..n - 1];
    let d_last = &degrees[n - 1];
    let slice_at =
        |t: &Rat| -> Rat { box_slab_volume(head, t) - box_slab_volume(head, &(t - d_last)) };

    let bps = branch_points(degrees);
    let mut total = Rat::zero();
    for w in bps.windows(2) {
        total += integrate_piece(&slice_at, &w[0], &w[1], n);
    }

    // Telescoped route: integrate A alone over the final interval, where it
    // has a single branch.
    let head_sum: Rat = head.iter().fold(Rat::zero(), |acc, d| acc + d);
    let full_sum = &head_sum + d_last;
    let a_only = |t: &Rat| box_slab_volume(head, t);
    let telescoped = integrate_piece(&a_only, &head_sum, &full_sum, n);
    assert_eq!(total, telescoped, "the two integration routes must agree");
    total
}

/// `(t, volume)` table sampled at the branch points and interval midpoints.
pub fn slice_volume_table(degrees: &[Rat]) -> Vec<(Rat, Rat)> {
    sample_grid(degrees)
        .into_iter()
        .map(|t| {
            let d = ToricSliceDivisor::new(degrees.to_vec(), t.clone())
                .expect("grid point within range");
            let v = d.slice_volume();
            (t, v)
        })
        .collect()
}

/// CSV rendering of the table, rationals as `p/q`.
pub fn slice_volume_csv(degrees: &[Rat]) -> String {
    let mut out = String::from("t,volume\n");
    for (t, v) in slice_volume_table(degrees) {
        out.push_str(&format!("{t},{v}\n"));
    }
    out
}
