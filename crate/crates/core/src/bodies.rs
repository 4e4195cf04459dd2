//! The candidate convex bodies, positivity predicates, and the cross-module
//! verification engine.
//!
//! The bodies are built from their closed-form vertex lists and then
//! verified against everything else the crate computes: hull volume against
//! the degree product, vertical slice volumes against the toric slice
//! volumes, certificate points against exact halfspace membership, and the
//! vertex first coordinates against the subset sums of the degrees.

use num_traits::{One, Signed, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::geometry::{hull, QPolytope, QVector};
use crate::rat::{rat_int, Rat};
use crate::sections::MembershipCertificate;
use crate::toric::{branch_points, sample_grid, ToricSliceDivisor};

/// Which closed-form construction a candidate body came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BodyKind {
    Simplex,
    Trapezoid,
    Threefold,
}

/// A box-product polarization class: positive degrees, one per curve
/// factor. Sortedness is recorded at construction; the trapezoid and
/// threefold constructions require it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxProductClass {
    degrees: Vec<Rat>,
    sorted: bool,
}

impl BoxProductClass {
    pub fn new(degrees: Vec<Rat>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::InvalidInput(
                "a class needs at least one degree".into(),
            ));
        }
        if degrees.iter().any(|d| !d.is_positive()) {
            return Err(Error::InvalidInput("degrees must be positive".into()));
        }
        let sorted = degrees.windows(2).all(|w| w[0] >= w[1]);
        Ok(Self { degrees, sorted })
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[Rat] {
        &self.degrees
    }

    pub fn is_sorted(&self) -> bool {
        self.sorted
    }

    pub fn width(&self) -> Rat {
        width(&self.degrees)
    }

    /// The candidate body of this class, when one is constructed: the
    /// segment or simplex for unit degrees, the trapezoid for two factors,
    /// the nine-point hull for three. Classes with four or more factors and
    /// non-unit degrees have no closed-form candidate here.
    pub fn candidate_body(&self) -> Result<CandidateBody> {
        let all_ones = self.degrees.iter().all(|d| d.is_one());
        match self.degrees.len() {
            1 if all_ones => Ok(simplex_body(1)),
            1 => Err(Error::InvalidInput(
                "the one-factor body is constructed only for degree 1".into(),
            )),
            2 => trapezoid_body(&self.degrees[0], &self.degrees[1]),
            3 => threefold_body(&self.degrees[0], &self.degrees[1], &self.degrees[2]),
            n if all_ones => Ok(simplex_body(n)),
            _ => Err(Error::InvalidInput(
                "bodies with four or more factors are constructed only for unit degrees".into(),
            )),
        }
    }
}

/// A candidate body in `R^n` for the class with the given degrees: it
/// contains the origin and projects to `[0, sum d_i]` on the first axis.
#[derive(Debug, Clone)]
pub struct CandidateBody {
    pub kind: BodyKind,
    pub degrees: Vec<Rat>,
    pub body: QPolytope,
}

impl CandidateBody {
    fn new(kind: BodyKind, degrees: Vec<Rat>, body: QPolytope) -> Self {
        debug_assert!(body.contains(&QVector::zero(body.dim())));
        Self {
            kind,
            degrees,
            body,
        }
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }
}

/// The simplex body for `n` unit degrees: the hull of the origin and the
/// points `(d, d * e_d)` for `d = 1..n` (the last being `(n, 0, .., 0)`).
/// Its Euclidean volume is exactly 1.
pub fn simplex_body(n: usize) -> CandidateBody {
    assert!(n >= 1);
    let mut points = vec![QVector::zero(n)];
    for d in 1..=n {
        let mut coords = vec![Rat::zero(); n];
        coords[0] = rat_int(d as i64);
        if d < n {
            coords[d] = rat_int(d as i64);
        }
        points.push(QVector::new(coords));
    }
    let body = hull(&points).expect("simplex hull");
    CandidateBody::new(BodyKind::Simplex, vec![Rat::one(); n], body)
}

/// The isosceles trapezoid with vertices `(0,0)`, `(d2,d2)`, `(d1+d2,0)`,
/// `(d1,d2)`, of area `d1*d2`; needs `d1 >= d2 > 0`.
pub fn trapezoid_body(d1: &Rat, d2: &Rat) -> Result<CandidateBody> {
    if !(d1 >= d2 && d2.is_positive()) {
        return Err(Error::UnsortedDegrees);
    }
    let points = [
        QVector::new(vec![Rat::zero(), Rat::zero()]),
        QVector::new(vec![d2.clone(), d2.clone()]),
        QVector::new(vec![d1 + d2, Rat::zero()]),
        QVector::new(vec![d1.clone(), d2.clone()]),
    ];
    let body = hull(&points)?;
    Ok(CandidateBody::new(
        BodyKind::Trapezoid,
        vec![d1.clone(), d2.clone()],
        body,
    ))
}

/// The nine defining points of the threefold body for `d1 >= d2 >= d3`.
pub fn threefold_points(d1: &Rat, d2: &Rat, d3: &Rat) -> Vec<QVector> {
    let z = Rat::zero;
    let v = |a: Rat, b: Rat, c: Rat| QVector::new(vec![a, b, c]);
    vec![
        v(z(), z(), z()),
        v(d3.clone(), d3.clone(), z()),
        v(d2.clone(), d3.clone(), d2 - d3),
        v(d1.clone(), d3.clone(), d2 - d3),
        v(d1 + d2 - d3, d3.clone(), z()),
        v(d2 + d3, z(), d2 + d3),
        v(d1 + d3, z(), d2 + d3),
        v(d1 + d2, z(), rat_int(2) * d3),
        v(d1 + d2 + d3, z(), z()),
    ]
}

/// The threefold body: the hull of the nine defining points, of volume
/// `d1*d2*d3`; needs `d1 >= d2 >= d3 > 0`. Coinciding points for repeated
/// degrees are absorbed by the hull's extreme-point filtering.
pub fn threefold_body(d1: &Rat, d2: &Rat, d3: &Rat) -> Result<CandidateBody> {
    if !(d1 >= d2 && d2 >= d3 && d3.is_positive()) {
        return Err(Error::UnsortedDegrees);
    }
    let body = hull(&threefold_points(d1, d2, d3))?;
    Ok(CandidateBody::new(
        BodyKind::Threefold,
        vec![d1.clone(), d2.clone(), d3.clone()],
        body,
    ))
}

/// The three-piece decomposition of the threefold body: a scaled simplex, a
/// triangular prism, and a prism over an isosceles trapezoid, returned as
/// hulls together with their closed-form volumes `d3^3`,
/// `(d1+d2-2*d3)*d3^2`, and `(d1-d3)*(d2-d3)*d3`. Pieces degenerate to
/// volume zero exactly when the closed forms vanish.
pub fn threefold_decomposition(d1: &Rat, d2: &Rat, d3: &Rat) -> Result<Vec<(QPolytope, Rat)>> {
    if !(d1 >= d2 && d2 >= d3 && d3.is_positive()) {
        return Err(Error::UnsortedDegrees);
    }
    let z = Rat::zero;
    let two = rat_int(2);
    let three = rat_int(3);
    let v = |a: Rat, b: Rat, c: Rat| QVector::new(vec![a, b, c]);

    let tetra = vec![
        v(z(), z(), z()),
        v(d3.clone(), d3.clone(), z()),
        v(&two * d3, z(), &two * d3),
        v(&three * d3, z(), z()),
    ];
    let tetra_vol = d3 * d3 * d3;

    let prism = vec![
        v(d3.clone(), d3.clone(), z()),
        v(&two * d3, z(), &two * d3),
        v(&three * d3, z(), z()),
        v(d1 + d2 - d3, d3.clone(), z()),
        v(d1 + d2, z(), &two * d3),
        v(d1 + d2 + d3, z(), z()),
    ];
    let prism_vol = (d1 + d2 - &two * d3) * d3 * d3;

    let trapezoid_prism = vec![
        v(&two * d3, z(), &two * d3),
        v(d1 + d2, z(), &two * d3),
        v(d1 + d3, z(), d2 + d3),
        v(d2 + d3, z(), d2 + d3),
        v(d3.clone(), d3.clone(), z()),
        v(d1 + d2 - d3, d3.clone(), z()),
        v(d1.clone(), d3.clone(), d2 - d3),
        v(d2.clone(), d3.clone(), d2 - d3),
    ];
    let trapezoid_vol = (d1 - d3) * (d2 - d3) * d3;

    Ok(vec![
        (hull(&tetra)?, tetra_vol),
        (hull(&prism)?, prism_vol),
        (hull(&trapezoid_prism)?, trapezoid_vol),
    ])
}

/// Pseudoeffectivity of the product class with the given coefficients:
/// nonnegativity in every slot.
pub fn is_pseff_product(degrees: &[Rat]) -> bool {
    degrees.iter().all(|d| !d.is_negative())
}

/// Pseudoeffectivity of `sum c_i h_i - f E` on the blow-up, for `f >= 0`:
/// all `c_i >= 0` and `f <= sum c_i`. Negative `f` is outside the stated
/// form and rejected.
pub fn is_pseff_blowup(coeffs: &[Rat], f: &Rat) -> Result<bool> {
    if f.is_negative() {
        return Err(Error::InvalidInput(
            "the exceptional multiplier must be nonnegative".into(),
        ));
    }
    let total: Rat = coeffs.iter().fold(Rat::zero(), |acc, c| acc + c);
    Ok(coeffs.iter().all(|c| !c.is_negative()) && *f <= total)
}

/// The width of the class: the degree sum, which is the length of the
/// first-axis projection of the body.
pub fn width(degrees: &[Rat]) -> Rat {
    debug_assert!(degrees.iter().all(|d| d.is_positive()));
    degrees.iter().fold(Rat::zero(), |acc, d| acc + d)
}

/// One named verification outcome with an exact residual message on failure.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub details: String,
}

/// Outcome of `verify_body`: a deterministic list of named checks.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "pass": self.passed(),
            "checks": self
                .checks
                .iter()
                .map(|c| json!({ "name": c.name, "pass": c.pass, "details": c.details }))
                .collect::<Vec<_>>(),
        })
    }
}

/// The canonical sampling grid for slice checks: all branch points of the
/// degrees plus the midpoints of consecutive branch intervals.
pub fn default_samples(degrees: &[Rat]) -> Vec<Rat> {
    sample_grid(degrees)
}

/// Cross-module verification of a candidate body:
///
/// 1. its volume equals the product of the degrees;
/// 2. at each sampled `t`, the exact volume of the first-axis slice equals
///    the toric slice volume (skipped for `n == 1`, where there is no
///    blow-up of the exceptional projective space to slice against);
/// 3. every certificate point lies in the body (exact halfspace test);
/// 4. the vertex first coordinates cover all subset sums of the degrees;
/// 5. the first-axis projection is exactly `[0, width]`.
pub fn verify_body(
    candidate: &CandidateBody,
    samples: &[Rat],
    certs: &[MembershipCertificate],
) -> VerifyReport {
    let mut checks = Vec::new();
    let degrees = &candidate.degrees;
    let body = &candidate.body;

    let expected_volume: Rat = degrees.iter().fold(Rat::one(), |acc, d| acc * d);
    let got_volume = body.volume();
    checks.push(CheckResult {
        name: "volume equals degree product".into(),
        pass: got_volume == expected_volume,
        details: format!("volume {got_volume}, degree product {expected_volume}"),
    });

    if candidate.n() >= 2 {
        let mut ts: Vec<Rat> = samples.to_vec();
        ts.sort();
        ts.dedup();
        for t in &ts {
            let name = format!("slice volume at t = {t}");
            let slice_vol = match body.slice(0, t) {
                Ok(s) => s.volume(),
                Err(e) => {
                    checks.push(CheckResult {
                        name,
                        pass: false,
                        details: format!("slice failed: {e}"),
                    });
                    continue;
                }
            };
            let toric_vol = match ToricSliceDivisor::new(degrees.clone(), t.clone()) {
                Ok(d) => d.slice_volume(),
                Err(e) => {
                    checks.push(CheckResult {
                        name,
                        pass: false,
                        details: format!("divisor out of range: {e}"),
                    });
                    continue;
                }
            };
            checks.push(CheckResult {
                name,
                pass: slice_vol == toric_vol,
                details: format!("body slice {slice_vol}, toric slice {toric_vol}"),
            });
        }
    }

    for (i, cert) in certs.iter().enumerate() {
        let inside = body.contains(&cert.point);
        checks.push(CheckResult {
            name: format!("certificate {} membership at {}", i + 1, cert.point),
            pass: inside,
            details: if inside {
                "inside".into()
            } else {
                "outside the halfspace description".into()
            },
        });
    }

    let vertex_firsts: Vec<Rat> = body
        .vertices()
        .iter()
        .map(|v| v.coords()[0].clone())
        .collect();
    let missing: Vec<String> = branch_points(degrees)
        .into_iter()
        .filter(|s| !vertex_firsts.contains(s))
        .map(|s| s.to_string())
        .collect();
    checks.push(CheckResult {
        name: "vertex first coordinates cover all degree subset sums".into(),
        pass: missing.is_empty(),
        details: if missing.is_empty() {
            "all subset sums realized".into()
        } else {
            format!("missing: {}", missing.join(", "))
        },
    });

    let lo = vertex_firsts
        .iter()
        .min()
        .cloned()
        .unwrap_or_else(Rat::zero);
    let hi = vertex_firsts
        .iter()
        .max()
        .cloned()
        .unwrap_or_else(Rat::zero);
    let w = width(degrees);
    checks.push(CheckResult {
        name: "first-axis projection is [0, width]".into(),
        pass: lo.is_zero() && hi == w,
        details: format!("projection [{lo}, {hi}], width {w}"),
    });

    VerifyReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use crate::sections::{construct_qd, threefold_witnesses};

    #[test]
    fn simplex_small_cases() {
        let s1 = simplex_body(1);
        assert_eq!(s1.body.vertices().len(), 2);
        assert_eq!(s1.body.volume(), rat_int(1));

        let s2 = simplex_body(2);
        let vs: Vec<_> = s2.body.vertices().to_vec();
        assert_eq!(vs.len(), 3);
        assert_eq!(s2.body.volume(), rat_int(1));

        let s3 = simplex_body(3);
        assert_eq!(s3.body.vertices().len(), 4);
        assert_eq!(s3.body.volume(), rat_int(1));
    }

    #[test]
    fn trapezoid_cases() {
        // Equal degrees degenerate to the triangle.
        let t11 = trapezoid_body(&rat_int(1), &rat_int(1)).unwrap();
        assert_eq!(t11.body.vertices().len(), 3);
        assert!(t11.body.same_set(&simplex_body(2).body));

        let t21 = trapezoid_body(&rat_int(2), &rat_int(1)).unwrap();
        assert_eq!(t21.body.vertices().len(), 4);
        assert_eq!(t21.body.volume(), rat_int(2));

        let t32 = trapezoid_body(&rat_int(3), &rat_int(2)).unwrap();
        assert_eq!(t32.body.vertices().len(), 4);
        assert_eq!(t32.body.volume(), rat_int(6));

        assert!(trapezoid_body(&rat_int(1), &rat_int(2)).is_err());
    }

    #[test]
    fn threefold_cases() {
        let b111 = threefold_body(&rat_int(1), &rat_int(1), &rat_int(1)).unwrap();
        assert!(b111.body.same_set(&simplex_body(3).body));

        let b321 = threefold_body(&rat_int(3), &rat_int(2), &rat_int(1)).unwrap();
        assert_eq!(b321.body.volume(), rat_int(6));
        let vols: Vec<Rat> = threefold_decomposition(&rat_int(3), &rat_int(2), &rat_int(1))
            .unwrap()
            .into_iter()
            .map(|(piece, formula)| {
                assert_eq!(piece.volume(), formula);
                formula
            })
            .collect();
        assert_eq!(vols, vec![rat_int(1), rat_int(3), rat_int(2)]);

        let b222 = threefold_body(&rat_int(2), &rat_int(2), &rat_int(2)).unwrap();
        assert_eq!(b222.body.volume(), rat_int(8));
        assert_eq!(b222.body.vertices().len(), 4);
    }

    #[test]
    fn decomposition_is_additive() {
        for (a, b, c) in [(3i64, 2, 1), (2, 2, 1), (4, 2, 2), (1, 1, 1), (4, 3, 2)] {
            let (d1, d2, d3) = (rat_int(a), rat_int(b), rat_int(c));
            let body = threefold_body(&d1, &d2, &d3).unwrap();
            let pieces = threefold_decomposition(&d1, &d2, &d3).unwrap();
            let total: Rat = pieces
                .iter()
                .map(|(piece, _)| piece.volume())
                .fold(Rat::zero(), |acc, v| acc + v);
            assert_eq!(total, body.body.volume(), "degrees ({a},{b},{c})");
        }
    }

    #[test]
    fn pseudoeffectivity_predicates() {
        assert!(is_pseff_product(&[rat_int(1), rat_int(2), rat_int(3)]));
        assert!(!is_pseff_product(&[rat_int(1), rat_int(-1)]));
        assert!(is_pseff_product(&[Rat::zero(), Rat::zero()]));

        assert!(is_pseff_blowup(&[rat_int(1), rat_int(1), rat_int(1)], &rat_int(3)).unwrap());
        assert!(!is_pseff_blowup(&[rat_int(1), rat_int(1)], &rat_int(3)).unwrap());
        assert!(!is_pseff_blowup(&[rat_int(1), rat_int(-1), rat_int(3)], &Rat::zero()).unwrap());
        assert!(is_pseff_blowup(&[rat_int(1)], &rat(-1, 2)).is_err());
    }

    #[test]
    fn blowup_pseff_implies_product_pseff() {
        let cases = [
            (vec![rat_int(1), rat_int(2)], rat_int(2)),
            (vec![rat_int(3), rat_int(1), rat_int(1)], rat_int(4)),
            (vec![Rat::zero(), rat_int(1)], Rat::zero()),
        ];
        for (c, f) in cases {
            if is_pseff_blowup(&c, &f).unwrap() {
                assert!(is_pseff_product(&c));
            }
        }
    }

    #[test]
    fn width_examples() {
        assert_eq!(width(&[rat_int(3), rat_int(2), rat_int(1)]), rat_int(6));
        assert_eq!(width(&[rat_int(1)]), rat_int(1));
        assert_eq!(width(&vec![rat_int(1); 5]), rat_int(5));
    }

    #[test]
    fn verify_simplex_with_certificates() {
        let body = simplex_body(3);
        let certs: Vec<_> = (1..=3).map(|d| construct_qd(3, d, 0).unwrap()).collect();
        let samples = default_samples(&body.degrees);
        let report = verify_body(&body, &samples, &certs);
        assert!(report.passed(), "{:#?}", report.checks);
        // The slice at 3/2 has area 3/4.
        let half = body.body.slice(0, &rat(3, 2)).unwrap();
        assert_eq!(half.volume(), rat(3, 4));
        // Together with the origin, the certified points are exactly the
        // vertex set.
        let mut certified: Vec<QVector> = certs.iter().map(|c| c.point.clone()).collect();
        certified.push(QVector::zero(3));
        certified.sort();
        assert_eq!(certified, body.body.vertices());
    }

    #[test]
    fn verify_threefold_with_witnesses() {
        let body = threefold_body(&rat_int(3), &rat_int(2), &rat_int(1)).unwrap();
        let certs = threefold_witnesses(3, 2, 1, 0).unwrap();
        let report = verify_body(&body, &default_samples(&body.degrees), &certs);
        assert!(report.passed(), "{:#?}", report.checks);
        assert_eq!(body.body.volume(), rat_int(6));
    }

    #[test]
    fn verify_trapezoid_slice_lengths() {
        // Slice length is t - max(t - d1, 0) - max(t - d2, 0).
        let body = trapezoid_body(&rat_int(2), &rat_int(1)).unwrap();
        for t in [rat(1, 2), rat_int(1), rat(3, 2), rat_int(2), rat(5, 2)] {
            let s = body.body.slice(0, &t).unwrap();
            let clamp = |x: Rat| if x.is_negative() { Rat::zero() } else { x };
            let expected = &t - clamp(&t - rat_int(2)) - clamp(&t - rat_int(1));
            assert_eq!(s.volume(), expected, "t = {t}");
        }
        let report = verify_body(&body, &default_samples(&body.degrees), &[]);
        assert!(report.passed(), "{:#?}", report.checks);
    }

    #[test]
    fn verify_n1_body_skips_slices() {
        let body = simplex_body(1);
        let report = verify_body(&body, &default_samples(&body.degrees), &[]);
        assert!(report.passed(), "{:#?}", report.checks);
    }

    #[test]
    fn report_json_shape() {
        let body = simplex_body(2);
        let report = verify_body(&body, &[rat_int(1)], &[]);
        let j = report.to_json();
        assert_eq!(j["pass"], true);
        assert!(j["checks"][0]["name"].is_string());
    }
}
