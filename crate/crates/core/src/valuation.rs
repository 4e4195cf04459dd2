//! Linear flags on projective space and the iterated-restriction flag
//! valuation of divisors.
//!
//! A flag is stored as an invertible coordinate change `z = M x`; the flag
//! subspaces are `Y_i = { z_1 = ... = z_{i-1} = 0 }`, so `Y_n` is a point.
//! The valuation of a divisor `{P = 0}` records, step by step, the order of
//! vanishing along each flag subspace after dividing out the previous one.
//! In adapted coordinates this is a monomial valuation, which makes every
//! computation here exact integer bookkeeping on exponent vectors.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::poly::HomoPoly;
use crate::rat::{rat_int, Rat};

/// How many times genericity-certified constructions may resample a random
/// flag before reporting failure. Failure is a measure-zero event; hitting
/// the budget signals a bug, not bad luck.
pub const RESAMPLE_BUDGET: usize = 16;

/// Deterministic generator used for all seeded sampling.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A full flag of linear subspaces of `P^{n-1}`, encoded as an invertible
/// coordinate change `z = M x` with `Y_i = { z_1 = ... = z_{i-1} = 0 }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFlag {
    n: usize,
    matrix: QMatrix,
    inverse: QMatrix,
}

impl LinearFlag {
    pub fn new(matrix: QMatrix) -> Result<Self> {
        let n = matrix.nrows();
        if n < 1 || matrix.ncols() != n {
            return Err(Error::InvalidInput(
                "flag matrix must be square and nonempty".into(),
            ));
        }
        let inverse = matrix.inverse().ok_or(Error::SingularMatrix)?;
        Ok(Self { n, matrix, inverse })
    }

    /// Build the flag from the inverse coordinate change `x = M^{-1} z`.
    pub fn from_inverse(inverse: QMatrix) -> Result<Self> {
        let matrix = inverse.inverse().ok_or(Error::SingularMatrix)?;
        Self::new(matrix)
    }

    pub fn identity(n: usize) -> Self {
        Self::new(QMatrix::identity(n)).expect("identity is invertible")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn inverse(&self) -> &QMatrix {
        &self.inverse
    }

    /// The linear form cutting out `Y_{i+1}` inside `Y_i`, i.e. the `i`-th
    /// row of `M` as a polynomial in the `x` coordinates (zero-based).
    pub fn subspace_equation(&self, i: usize) -> HomoPoly {
        assert!(i < self.n);
        let raw: Vec<(Vec<u32>, Rat)> = (0..self.n)
            .map(|c| {
                let mut exps = vec![0u32; self.n];
                exps[c] = 1;
                (exps, self.matrix[(i, c)].clone())
            })
            .collect();
        HomoPoly::from_terms(self.n, raw).expect("linear form")
    }

    /// Homogeneous coordinates of the flag point `Y_n`: the last column of
    /// `M^{-1}`.
    pub fn flag_point(&self) -> ProjPoint {
        let coords: Vec<Rat> = (0..self.n)
            .map(|r| self.inverse[(r, self.n - 1)].clone())
            .collect();
        ProjPoint::new(coords).expect("column of an invertible matrix")
    }

    /// Parameterization of `Y_d` (projective dimension `n - d`) by the last
    /// `n - d + 1` of the `z` coordinates: the `n x (n - d + 1)` matrix of
    /// the corresponding columns of `M^{-1}`. Its rows are the general
    /// linear forms restricting each `x_i` to `Y_d`.
    pub fn subspace_parameterization(&self, d: usize) -> QMatrix {
        assert!((1..=self.n).contains(&d));
        let k = self.n - d + 1;
        let mut b = QMatrix::zeros(self.n, k);
        for r in 0..self.n {
            for c in 0..k {
                b[(r, c)] = self.inverse[(r, d - 1 + c)].clone();
            }
        }
        b
    }
}

/// Point of projective space with exact rational coordinates; not all zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjPoint(Vec<Rat>);

impl ProjPoint {
    pub fn new(coords: Vec<Rat>) -> Result<Self> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroProjectivePoint);
        }
        Ok(Self(coords))
    }

    /// The `i`-th coordinate point `[0 : .. : 1 : .. : 0]` (zero-based).
    pub fn coordinate_point(n: usize, i: usize) -> Self {
        assert!(i < n);
        let mut coords = vec![Rat::zero(); n];
        coords[i] = Rat::from_integer(1.into());
        Self(coords)
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

/// The valuation vector `(nu_2, ..., nu_n)` of a divisor on `P^{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ValuationVector(Vec<u32>);

impl ValuationVector {
    pub fn new(components: Vec<u32>) -> Self {
        Self(components)
    }

    /// `d * e_d`: the value `d` in slot `d` (one-based), all others zero;
    /// for `d == n` the origin.
    pub fn scaled_basis(n: usize, d: usize) -> Self {
        assert!((1..=n).contains(&d));
        let mut v = vec![0u32; n - 1];
        if d < n {
            v[d - 1] = d as u32;
        }
        Self(v)
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }

    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &ValuationVector) -> ValuationVector {
        assert_eq!(self.0.len(), other.0.len());
        ValuationVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn to_rats(&self) -> Vec<Rat> {
        self.0.iter().map(|&c| rat_int(c as i64)).collect()
    }
}

impl std::fmt::Display for ValuationVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({})",
            self.0
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// Iterated-restriction valuation of `{P = 0}` along the flag: rewrite `P`
/// in flag coordinates, then repeatedly take the order in the current
/// variable, divide it out, and restrict. The residual after `n - 1` rounds
/// is a nonzero monomial in the last variable of degree
/// `deg(P) - sum(valuation)`.
pub fn flag_valuation(p: &HomoPoly, flag: &LinearFlag) -> Result<ValuationVector> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.nvars() != flag.n() {
        return Err(Error::DimensionMismatch {
            expected: flag.n(),
            got: p.nvars(),
        });
    }
    let n = flag.n();
    let in_z = p.compose_linear(flag.inverse())?;
    let mut terms: Vec<(Vec<u32>, Rat)> =
        in_z.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
    let mut components = Vec::with_capacity(n - 1);
    for var in 0..n - 1 {
        let ord = terms.iter().map(|(e, _)| e[var]).min().expect("nonzero");
        components.push(ord);
        // Divide by z_var^ord, then set z_var = 0: exactly the terms whose
        // exponent was minimal survive. Distinct monomials stay distinct, so
        // nothing cancels.
        terms.retain(|(e, _)| e[var] == ord);
        for (e, _) in terms.iter_mut() {
            e[var] = 0;
        }
    }
    debug_assert_eq!(terms.len(), 1, "residual must be a monomial in z_n");
    debug_assert_eq!(
        terms[0].0[n - 1],
        p.degree() - components.iter().sum::<u32>()
    );
    Ok(ValuationVector(components))
}

/// Multiplicity (order of vanishing) of `{P = 0}` at a projective point:
/// move the point to a coordinate point by an invertible substitution, then
/// read off `deg(P)` minus the largest exponent of that coordinate. This is
/// the minimal total degree of the affine expansion at the point.
pub fn mult_at_point(p: &HomoPoly, point: &ProjPoint) -> Result<u32> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.nvars() != point.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.nvars(),
            got: point.dim(),
        });
    }
    let pivot = point
        .coords()
        .iter()
        .position(|c| !c.is_zero())
        .expect("projective point is nonzero");
    mult_via_chart(p, point, pivot)
}

/// Multiplicity computed in the affine chart where coordinate `pivot` is
/// nonzero; the answer does not depend on the admissible chart chosen.
pub fn mult_via_chart(p: &HomoPoly, point: &ProjPoint, pivot: usize) -> Result<u32> {
    let n = p.nvars();
    assert!(
        !point.coords()[pivot].is_zero(),
        "chart must contain the point"
    );
    // Columns of `T` are the standard basis except that column `pivot` is
    // the point itself, so `x = T z` sends the coordinate point `e_pivot`
    // to `point`. `T` is invertible because the pivot coordinate is nonzero.
    let mut t = QMatrix::identity(n);
    for r in 0..n {
        t[(r, pivot)] = point.coords()[r].clone();
    }
    let q = p.compose_linear(&t)?;
    let max_pivot_exp = q.terms().map(|(e, _)| e[pivot]).max().expect("nonzero");
    Ok(p.degree() - max_pivot_exp)
}

/// Result of the slice-admissibility test: at each coordinate point the
/// divisor must vanish to order at least `max(t - d_i, 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Admissibility {
    pub admissible: bool,
    pub mults: Vec<u32>,
    pub required: Vec<u32>,
    pub margins: Vec<i64>,
}

/// Test whether a degree-`t` divisor is admissible in the slice for the
/// given degrees: multiplicity at the `i`-th coordinate point at least
/// `max(t - d_i, 0)`. The certificate records each margin.
pub fn admissible_in_slice(p: &HomoPoly, degrees: &[u32], t: u32) -> Result<Admissibility> {
    if p.degree() != t || p.is_zero() {
        return Err(Error::DegreeMismatch {
            expected: t,
            got: p.degree(),
        });
    }
    if degrees.len() != p.nvars() {
        return Err(Error::DimensionMismatch {
            expected: p.nvars(),
            got: degrees.len(),
        });
    }
    let n = p.nvars();
    let mut mults = Vec::with_capacity(n);
    let mut required = Vec::with_capacity(n);
    let mut margins = Vec::with_capacity(n);
    for (i, d) in degrees.iter().enumerate() {
        let m = mult_at_point(p, &ProjPoint::coordinate_point(n, i))?;
        let need = t.saturating_sub(*d);
        margins.push(m as i64 - need as i64);
        mults.push(m);
        required.push(need);
    }
    Ok(Admissibility {
        admissible: margins.iter().all(|&m| m >= 0),
        mults,
        required,
        margins,
    })
}

/// Random flag with entries uniform from the fixed set
/// `{-99..-1, 1..99}`, resampled until invertible (within the budget).
/// Entries are nonzero and spread wide: smaller sets land on the
/// degeneracy loci of the downstream constructions too often to meet the
/// first-attempt rank rate the statistical smoke tests require. The caller
/// owns the generator, so everything downstream is reproducible from a
/// seed.
pub fn sample_flag<R: Rng>(n: usize, rng: &mut R) -> Result<LinearFlag> {
    for _ in 0..RESAMPLE_BUDGET {
        let rows: Vec<Vec<Rat>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let magnitude = rng.gen_range(1..=99);
                        rat_int(if rng.gen_bool(0.5) {
                            magnitude
                        } else {
                            -magnitude
                        })
                    })
                    .collect()
            })
            .collect();
        if let Ok(flag) = LinearFlag::new(QMatrix::from_rows(rows)) {
            return Ok(flag);
        }
    }
    Err(Error::GenericityExhausted {
        attempts: RESAMPLE_BUDGET,
    })
}
