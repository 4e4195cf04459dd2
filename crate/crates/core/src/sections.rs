//! Construction of witness sections whose valuations certify vertices of
//! the candidate bodies.
//!
//! Two constructions are implemented. The square-free monomial system of
//! degree `d` restricts isomorphically to a general linear subspace of
//! projective dimension `n - d`; solving the restriction against the `d`-th
//! power of the next flag equation produces a section with valuation
//! `d * e_d`. For threefolds, seven explicit weighted combinations of
//! coordinate lines, flag lines, and a tangent conic certify the seven
//! nontrivial vertices. Every certificate re-verifies its claim with the
//! independent valuation engine and the slice-admissibility test.

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::geometry::QVector;
use crate::linalg::{solve_linear, QMatrix};
use crate::poly::HomoPoly;
use crate::rat::{rat_int, Rat};
use crate::valuation::{
    admissible_in_slice, flag_valuation, mult_at_point, sample_flag, seeded_rng, LinearFlag,
    ProjPoint, ValuationVector, RESAMPLE_BUDGET,
};

/// The linear system spanned by the square-free monomials `x_I` with
/// `|I| = d`, of dimension `C(n, d)`. Every basis monomial has multiplicity
/// `d - 1` at the coordinate points it involves and `d` at the others.
#[derive(Debug, Clone)]
pub struct LambdaSystem {
    n: usize,
    d: usize,
    subsets: Vec<Vec<usize>>,
}

impl LambdaSystem {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if !(1..=n).contains(&d) {
            return Err(Error::InvalidInput(format!(
                "need 1 <= d <= n, got d = {d}, n = {n}"
            )));
        }
        let subsets: Vec<Vec<usize>> = (0..n).combinations(d).collect();
        Ok(Self { n, d, subsets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn size(&self) -> usize {
        self.subsets.len()
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    pub fn basis_monomial(&self, i: usize) -> HomoPoly {
        let mut exps = vec![0u32; self.n];
        for &v in &self.subsets[i] {
            exps[v] = 1;
        }
        HomoPoly::monomial(self.n, exps, Rat::one())
    }

    /// The section with the given coordinates in the monomial basis.
    pub fn section(&self, coeffs: &[Rat]) -> HomoPoly {
        assert_eq!(coeffs.len(), self.size());
        let raw: Vec<(Vec<u32>, Rat)> = self
            .subsets
            .iter()
            .zip(coeffs)
            .map(|(subset, c)| {
                let mut exps = vec![0u32; self.n];
                for &v in subset {
                    exps[v] = 1;
                }
                (exps, c.clone())
            })
            .collect();
        HomoPoly::from_terms(self.n, raw).expect("square-free monomials are homogeneous")
    }
}

/// All exponent vectors of length `k` summing to `d`, ascending lex order.
fn monomials_of_degree(k: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(k: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in 0..=d {
            prefix.push(e);
            rec(k - 1, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, d, &mut Vec::new(), &mut out);
    out
}

/// The restriction map from the square-free system to the degree-`d` forms
/// on the flag subspace `Y_d`, as a square `C(n, d)` matrix in the monomial
/// bases. Full rank certifies that the flag is general enough for `(n, d)`.
#[derive(Debug, Clone)]
pub struct PsiMatrix {
    pub lambda: LambdaSystem,
    pub matrix: QMatrix,
    pub rank: usize,
    pub target_monomials: Vec<Vec<u32>>,
}

pub fn psi_matrix(n: usize, d: usize, flag: &LinearFlag) -> Result<PsiMatrix> {
    if flag.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: flag.n(),
        });
    }
    let lambda = LambdaSystem::new(n, d)?;
    let param = flag.subspace_parameterization(d);
    let k = n - d + 1;
    let target_monomials = monomials_of_degree(k, d as u32);
    debug_assert_eq!(target_monomials.len(), lambda.size());
    let mut matrix = QMatrix::zeros(target_monomials.len(), lambda.size());
    for col in 0..lambda.size() {
        let restricted = lambda.basis_monomial(col).compose_linear(&param)?;
        for (row, mono) in target_monomials.iter().enumerate() {
            matrix[(row, col)] = restricted.coefficient(mono);
        }
    }
    let rank = matrix.rank();
    Ok(PsiMatrix {
        lambda,
        matrix,
        rank,
        target_monomials,
    })
}

/// Sample flags from the seed until the restriction matrix has full rank,
/// within the resampling budget. Returns the flag, the matrix, and how many
/// attempts were used.
pub fn psi_matrix_seeded(n: usize, d: usize, seed: u64) -> Result<(LinearFlag, PsiMatrix, usize)> {
    let mut rng = seeded_rng(seed);
    let full = LambdaSystem::new(n, d)?.size();
    for attempt in 1..=RESAMPLE_BUDGET {
        let flag = sample_flag(n, &mut rng)?;
        let psi = psi_matrix(n, d, &flag)?;
        if psi.rank == full {
            return Ok((flag, psi, attempt));
        }
    }
    Err(Error::GenericityExhausted {
        attempts: RESAMPLE_BUDGET,
    })
}

/// An explicit divisor together with its exactly computed valuation point,
/// witnessing that the point lies in the corresponding body. The divisor is
/// stored as weighted factors so the whole claim is replayable.
#[derive(Debug, Clone)]
pub struct MembershipCertificate {
    pub divisor: Vec<(Rat, HomoPoly)>,
    pub t: Rat,
    pub flag_val: ValuationVector,
    pub point: QVector,
    pub margins: Vec<i64>,
    pub seed: u64,
    pub flag: LinearFlag,
}

impl MembershipCertificate {
    /// The product of the factors raised to their (integer) weights.
    pub fn expanded(&self) -> Result<HomoPoly> {
        expand_divisor(&self.divisor)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "point": self
                .point
                .coords()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>(),
            "t": self.t.to_string(),
            "divisor": self
                .divisor
                .iter()
                .map(|(w, p)| json!({ "weight": w.to_string(), "poly": p.to_string() }))
                .collect::<Vec<_>>(),
            "margins": self.margins.clone(),
            "seed": self.seed,
        })
    }
}

/// Valuation of a formally weighted divisor, extended linearly over the
/// weights: the valuation is additive on products, so a rational-weighted
/// combination valuates to the weighted sum of the factor valuations.
pub fn weighted_flag_valuation(divisor: &[(Rat, HomoPoly)], flag: &LinearFlag) -> Result<Vec<Rat>> {
    let mut total = vec![Rat::zero(); flag.n() - 1];
    for (weight, factor) in divisor {
        if !weight.is_positive() {
            return Err(Error::InvalidInput(format!(
                "divisor weights must be positive, got {weight}"
            )));
        }
        let nu = flag_valuation(factor, flag)?;
        for (acc, c) in total.iter_mut().zip(nu.components()) {
            *acc += weight * rat_int(*c as i64);
        }
    }
    Ok(total)
}

/// Expand a formally weighted divisor with nonnegative integer weights into
/// a single polynomial.
pub fn expand_divisor(divisor: &[(Rat, HomoPoly)]) -> Result<HomoPoly> {
    let nvars = divisor
        .first()
        .map(|(_, p)| p.nvars())
        .ok_or_else(|| Error::InvalidInput("empty divisor".into()))?;
    let mut product = HomoPoly::monomial(nvars, vec![0; nvars], Rat::one());
    for (weight, factor) in divisor {
        let w = crate::rat::to_integer(weight)
            .and_then(|w| u32::try_from(w).ok())
            .ok_or_else(|| {
                Error::InvalidInput(format!("weight {weight} is not a nonnegative integer"))
            })?;
        product = product.mul(&factor.pow(w));
    }
    Ok(product)
}

fn certificate(
    divisor: Vec<(Rat, HomoPoly)>,
    t: u32,
    degrees: &[u32],
    flag: &LinearFlag,
    seed: u64,
) -> Result<MembershipCertificate> {
    let expanded = expand_divisor(&divisor)?;
    let flag_val = flag_valuation(&expanded, flag)?;
    let adm = admissible_in_slice(&expanded, degrees, t)?;
    if !adm.admissible {
        return Err(Error::InvalidInput(format!(
            "witness of degree {t} violates the multiplicity bounds: margins {:?}",
            adm.margins
        )));
    }
    let mut coords = vec![rat_int(t as i64)];
    coords.extend(flag_val.to_rats());
    Ok(MembershipCertificate {
        divisor,
        t: rat_int(t as i64),
        flag_val,
        point: QVector::new(coords),
        margins: adm.margins,
        seed,
        flag: flag.clone(),
    })
}

/// Solve the restriction system for the section of the square-free system
/// that restricts to `Y_d` as the `d`-th power of the next flag equation,
/// and certify the vertex `(d, d * e_d)`.
///
/// The construction is genericity-certified at runtime: the flag is sampled
/// from the seed until the restriction is an isomorphism, the solved section
/// is re-checked coefficient by coefficient against `f^d`, and its valuation
/// and multiplicities are recomputed independently.
pub fn construct_qd(n: usize, d: usize, seed: u64) -> Result<MembershipCertificate> {
    if n < 2 {
        return Err(Error::InvalidInput("need n >= 2".into()));
    }
    let (flag, psi, _) = psi_matrix_seeded(n, d, seed)?;
    // Right-hand side: f^d = w_1^d in the target monomial basis.
    let mut rhs = vec![Rat::zero(); psi.target_monomials.len()];
    let k = n - d + 1;
    let mut lead = vec![0u32; k];
    lead[0] = d as u32;
    let lead_row = psi
        .target_monomials
        .iter()
        .position(|m| *m == lead)
        .expect("w1^d is a degree-d monomial");
    rhs[lead_row] = Rat::one();
    let report = solve_linear(&psi.matrix, &rhs)?;
    let coeffs = report.solution.expect("full-rank square system");
    let q = psi.lambda.section(&coeffs);

    // Re-substitute and compare coefficient-wise: the restriction must be
    // exactly f^d.
    let restricted = q.compose_linear(&flag.subspace_parameterization(d))?;
    let fd = HomoPoly::monomial(k, lead, Rat::one());
    if restricted != fd {
        return Err(Error::InvalidInput(
            "solved section does not restrict to f^d".into(),
        ));
    }

    let degrees = vec![1u32; n];
    let cert = certificate(vec![(Rat::one(), q)], d as u32, &degrees, &flag, seed)?;
    let expected = ValuationVector::scaled_basis(n, d);
    if cert.flag_val != expected {
        return Err(Error::InvalidInput(format!(
            "section valuation {} differs from the claimed {}",
            cert.flag_val, expected
        )));
    }
    for i in 0..n {
        let m = mult_at_point(&cert.expanded()?, &ProjPoint::coordinate_point(n, i))?;
        if (m as usize) < d - 1 {
            return Err(Error::InvalidInput(format!(
                "section multiplicity {m} at coordinate point {i} is below {}",
                d - 1
            )));
        }
    }
    Ok(cert)
}

/// The model curves behind the threefold witnesses: a general flag line, the
/// lines joining the flag point to each coordinate point, and the conic
/// through the three coordinate points tangent to the flag line at the flag
/// point. With respect to the sampled flag their valuations are `(1,0)` for
/// the line, `(0,1)` for each join, `(0,2)` for the conic, and `(0,0)` for
/// any coordinate line.
pub struct ThreefoldFrame {
    pub flag: LinearFlag,
    pub line: HomoPoly,
    pub joins: [HomoPoly; 3],
    pub conic: HomoPoly,
}

/// Sample a flag general enough for all threefold witness constructions,
/// resampling from the seed within the budget.
pub fn sample_threefold_frame(seed: u64) -> Result<ThreefoldFrame> {
    let mut rng = seeded_rng(seed);
    'resample: for _ in 0..RESAMPLE_BUDGET {
        let Ok(flag) = sample_flag(3, &mut rng) else {
            continue;
        };
        // The flag line must avoid the coordinate points and the flag point
        // must avoid the coordinate lines.
        let line = flag.subspace_equation(0);
        let y = flag.flag_point();
        for i in 0..3 {
            if line
                .eval(ProjPoint::coordinate_point(3, i).coords())
                .is_zero()
            {
                continue 'resample;
            }
            if y.coords()[i].is_zero() {
                continue 'resample;
            }
        }
        // Lines joining the flag point to the coordinate points, by cross
        // product of homogeneous coordinates.
        let cross = |a: &[Rat], b: &[Rat]| -> Vec<Rat> {
            vec![
                &a[1] * &b[2] - &a[2] * &b[1],
                &a[2] * &b[0] - &a[0] * &b[2],
                &a[0] * &b[1] - &a[1] * &b[0],
            ]
        };
        let join = |i: usize| -> HomoPoly {
            let e = ProjPoint::coordinate_point(3, i);
            let c = cross(y.coords(), e.coords());
            HomoPoly::from_terms(
                3,
                c.into_iter()
                    .enumerate()
                    .map(|(v, coeff)| {
                        let mut exps = vec![0u32; 3];
                        exps[v] = 1;
                        (exps, coeff)
                    })
                    .collect(),
            )
            .expect("join line")
        };
        let joins = [join(0), join(1), join(2)];

        // The conic a*x2*x3 + b*x1*x3 + c*x1*x2 through the coordinate
        // points, tangent to the flag line at the flag point: its
        // restriction to the line, a binary quadric in the parameters
        // (w1, w2) adapted so the flag point is w1 = 0, must be
        // proportional to w1^2. That kills the w1*w2 and w2^2
        // coefficients: a two-condition linear system.
        let param = flag.subspace_parameterization(2);
        let basis = [
            HomoPoly::parse("x2*x3", Some(3)).unwrap(),
            HomoPoly::parse("x1*x3", Some(3)).unwrap(),
            HomoPoly::parse("x1*x2", Some(3)).unwrap(),
        ];
        let mut system = QMatrix::zeros(2, 3);
        for (col, b) in basis.iter().enumerate() {
            let r = b.compose_linear(&param).expect("restriction to the line");
            system[(0, col)] = r.coefficient(&[1, 1]);
            system[(1, col)] = r.coefficient(&[0, 2]);
        }
        let kernel = system.kernel_basis();
        if kernel.len() != 1 || kernel[0].iter().any(|c| c.is_zero()) {
            continue 'resample;
        }
        let scale = kernel[0][0].recip();
        let conic = basis
            .iter()
            .zip(&kernel[0])
            .fold(HomoPoly::zero(3), |acc, (b, c)| {
                acc.add(&b.scale(&(c * &scale))).expect("conic terms")
            });
        // Certify the tangency on the solved conic.
        let restricted = conic.compose_linear(&param).expect("conic restriction");
        if !restricted.coefficient(&[1, 1]).is_zero()
            || !restricted.coefficient(&[0, 2]).is_zero()
            || restricted.coefficient(&[2, 0]).is_zero()
        {
            continue 'resample;
        }
        return Ok(ThreefoldFrame {
            flag,
            line,
            joins,
            conic,
        });
    }
    Err(Error::GenericityExhausted {
        attempts: RESAMPLE_BUDGET,
    })
}

/// The seven explicit witness divisors certifying the nontrivial vertices of
/// the threefold body for sorted positive integer degrees.
///
/// With `F_i` the coordinate line opposite the `i`-th coordinate point,
/// `Y` the flag line, `L_3` the line joining the flag point to the third
/// coordinate point, and `Q` the tangent conic, the witnesses are the
/// weighted combinations whose valuations land on the vertices
/// `(d3,d3,0)`, `(d2,d3,d2-d3)`, `(d1,d3,d2-d3)`, `(d1+d2-d3,d3,0)`,
/// `(d2+d3,0,d2+d3)`, `(d1+d3,0,d2+d3)`, `(d1+d2,0,2*d3)`.
pub fn threefold_witnesses(
    d1: u32,
    d2: u32,
    d3: u32,
    seed: u64,
) -> Result<Vec<MembershipCertificate>> {
    if !(d1 >= d2 && d2 >= d3 && d3 > 0) {
        return Err(Error::UnsortedDegrees);
    }
    let degrees = [d1, d2, d3];
    let frame = sample_threefold_frame(seed)?;
    let f1 = HomoPoly::variable(3, 0);
    let f2 = HomoPoly::variable(3, 1);
    let line = &frame.line;
    let l3 = &frame.joins[2];
    let conic = &frame.conic;

    let w = |k: u32| rat_int(k as i64);
    type WitnessItem = (Vec<(Rat, HomoPoly)>, u32, ValuationVector);
    let items: Vec<WitnessItem> = vec![
        (
            vec![(w(d3), line.clone())],
            d3,
            ValuationVector::new(vec![d3, 0]),
        ),
        (
            vec![(w(d3), line.clone()), (w(d2 - d3), l3.clone())],
            d2,
            ValuationVector::new(vec![d3, d2 - d3]),
        ),
        (
            vec![
                (w(d3), line.clone()),
                (w(d1 - d2), f1.clone()),
                (w(d2 - d3), l3.clone()),
            ],
            d1,
            ValuationVector::new(vec![d3, d2 - d3]),
        ),
        (
            vec![
                (w(d3), line.clone()),
                (w(d2 - d3), f2.clone()),
                (w(d1 - d3), f1.clone()),
            ],
            d1 + d2 - d3,
            ValuationVector::new(vec![d3, 0]),
        ),
        (
            vec![(w(d3), conic.clone()), (w(d2 - d3), l3.clone())],
            d2 + d3,
            ValuationVector::new(vec![0, d2 + d3]),
        ),
        (
            vec![
                (w(d3), conic.clone()),
                (w(d1 - d2), f1.clone()),
                (w(d2 - d3), l3.clone()),
            ],
            d1 + d3,
            ValuationVector::new(vec![0, d2 + d3]),
        ),
        (
            vec![
                (w(d3), conic.clone()),
                (w(d2 - d3), f2.clone()),
                (w(d1 - d3), f1.clone()),
            ],
            d1 + d2,
            ValuationVector::new(vec![0, 2 * d3]),
        ),
    ];

    let mut certs = Vec::with_capacity(7);
    for (divisor, t, expected) in items {
        let divisor: Vec<(Rat, HomoPoly)> =
            divisor.into_iter().filter(|(w, _)| !w.is_zero()).collect();
        let cert = certificate(divisor, t, &degrees, &frame.flag, seed)?;
        if cert.flag_val != expected {
            return Err(Error::InvalidInput(format!(
                "witness valuation {} differs from the expected {}",
                cert.flag_val, expected
            )));
        }
        certs.push(cert);
    }
    Ok(certs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_basis_multiplicities() {
        let lambda = LambdaSystem::new(4, 2).unwrap();
        assert_eq!(lambda.size(), 6);
        for i in 0..lambda.size() {
            let m = lambda.basis_monomial(i);
            for pt in 0..4 {
                let mult = mult_at_point(&m, &ProjPoint::coordinate_point(4, pt)).unwrap();
                let expected = if lambda.subsets()[i].contains(&pt) {
                    1
                } else {
                    2
                };
                assert_eq!(mult, expected);
            }
        }
    }

    #[test]
    fn psi_full_rank_for_seeded_flags() {
        let (_, psi, _) = psi_matrix_seeded(4, 2, 0).unwrap();
        assert_eq!(psi.rank, 6);
        let (_, psi, _) = psi_matrix_seeded(3, 3, 0).unwrap();
        assert_eq!(psi.matrix.nrows(), 1);
        assert_eq!(psi.rank, 1);
    }

    #[test]
    fn psi_degenerate_flag_drops_rank() {
        // Repeated restriction forms in the base case n = d + 1: the first
        // two rows of the parameterization agree, so two products coincide.
        let minv = QMatrix::from_rows(vec![
            vec![rat_int(1), rat_int(1), rat_int(-1)],
            vec![rat_int(0), rat_int(1), rat_int(-1)],
            vec![rat_int(0), rat_int(1), rat_int(-2)],
        ]);
        let flag = LinearFlag::from_inverse(minv).unwrap();
        let psi = psi_matrix(3, 2, &flag).unwrap();
        assert!(psi.rank < 3, "rank {} should be deficient", psi.rank);
    }

    #[test]
    fn qd_full_product_and_linear_cases() {
        // d = n: the product of all coordinates, valuation at the origin.
        let cert = construct_qd(3, 3, 0).unwrap();
        assert_eq!(cert.flag_val, ValuationVector::new(vec![0, 0]));
        let poly = cert.expanded().unwrap();
        assert_eq!(poly.num_terms(), 1);
        assert_eq!(poly.degree(), 3);

        // d = 1: the linear equation of the flag line, valuation (1, 0).
        let cert = construct_qd(3, 1, 0).unwrap();
        assert_eq!(cert.flag_val, ValuationVector::new(vec![1, 0]));
        let q = cert.expanded().unwrap();
        let line = cert.flag.subspace_equation(0);
        // Proportional to the flag equation.
        let ratio = q
            .terms()
            .next()
            .map(|(e, c)| c / &line.coefficient(e))
            .unwrap();
        assert_eq!(q, line.scale(&ratio));
    }

    #[test]
    fn qd_middle_case_certifies_vertex() {
        let cert = construct_qd(3, 2, 0).unwrap();
        assert_eq!(cert.flag_val, ValuationVector::new(vec![0, 2]));
        let poly = cert.expanded().unwrap();
        for i in 0..3 {
            let m = mult_at_point(&poly, &ProjPoint::coordinate_point(3, i)).unwrap();
            assert!(m >= 1);
        }
        assert_eq!(
            cert.point.coords(),
            &[rat_int(2), rat_int(0), rat_int(2)][..]
        );
    }

    #[test]
    fn qd_claimed_point_is_seed_independent() {
        for d in 1..=4 {
            let base = construct_qd(4, d, 0).unwrap();
            for seed in [1u64, 2, 99] {
                let other = construct_qd(4, d, seed).unwrap();
                assert_eq!(base.point, other.point);
            }
        }
    }

    #[test]
    fn witnesses_match_the_nine_point_formulas() {
        let certs = threefold_witnesses(3, 2, 1, 0).unwrap();
        assert_eq!(certs.len(), 7);
        let pts: Vec<Vec<i64>> = certs
            .iter()
            .map(|c| {
                c.point
                    .coords()
                    .iter()
                    .map(|r| crate::rat::to_integer(r).unwrap().try_into().unwrap())
                    .collect()
            })
            .collect();
        assert_eq!(
            pts,
            vec![
                vec![1, 1, 0],
                vec![2, 1, 1],
                vec![3, 1, 1],
                vec![4, 1, 0],
                vec![3, 0, 3],
                vec![4, 0, 3],
                vec![5, 0, 2],
            ]
        );
    }

    #[test]
    fn witnesses_collapse_for_equal_degrees() {
        let certs = threefold_witnesses(1, 1, 1, 0).unwrap();
        let mut distinct: Vec<&QVector> = certs.iter().map(|c| &c.point).collect();
        distinct.sort();
        distinct.dedup();
        // Together with the trivial vertices (0,0,0) and (3,0,0), these are
        // the four vertices of the unit simplex body.
        assert_eq!(distinct.len(), 2);
        assert_eq!(
            distinct[0].coords(),
            &[rat_int(1), rat_int(1), rat_int(0)][..]
        );
        assert_eq!(
            distinct[1].coords(),
            &[rat_int(2), rat_int(0), rat_int(2)][..]
        );
    }

    #[test]
    fn witnesses_reject_unsorted_degrees() {
        assert_eq!(
            threefold_witnesses(1, 2, 3, 0).unwrap_err(),
            Error::UnsortedDegrees
        );
    }

    #[test]
    fn weighted_valuation_extends_the_expanded_one() {
        // On integer weights the linear extension agrees with expanding to a
        // product; rational weights just scale.
        let certs = threefold_witnesses(3, 2, 1, 0).unwrap();
        for cert in &certs {
            let linear = weighted_flag_valuation(&cert.divisor, &cert.flag).unwrap();
            assert_eq!(linear, cert.flag_val.to_rats());
        }
        let frame = sample_threefold_frame(0).unwrap();
        let halved: Vec<(Rat, HomoPoly)> = vec![(crate::rat::rat(1, 2), frame.conic.clone())];
        assert_eq!(
            weighted_flag_valuation(&halved, &frame.flag).unwrap(),
            vec![crate::rat::rat(0, 1), crate::rat::rat(1, 1)]
        );
    }

    #[test]
    fn certificate_json_schema() {
        let cert = construct_qd(3, 2, 0).unwrap();
        let j = cert.to_json();
        assert!(j["point"].is_array());
        assert!(j["t"].is_string());
        assert!(j["divisor"][0]["weight"].is_string());
        assert!(j["divisor"][0]["poly"].is_string());
        assert!(j["margins"].is_array());
        assert_eq!(j["seed"], 0);
    }
}
