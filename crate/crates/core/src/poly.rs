//! Sparse homogeneous multivariate polynomials over the rationals.
//!
//! A polynomial represents an effective divisor on projective space: all
//! stored exponent vectors share one total degree, coefficients are exact
//! rationals, and zero coefficients are never stored. The text format is a
//! sum of terms `c*x1^a1*...*xn^an`; the parser and printer round-trip
//! bit-exactly on canonical output.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::rat::Rat;

/// Homogeneous polynomial in `nvars` variables. The zero polynomial is the
/// distinguished value with no terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomoPoly {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl HomoPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            degree: 0,
            terms: BTreeMap::new(),
        }
    }

    /// Single variable `x_{index}` (zero-based index).
    pub fn variable(nvars: usize, index: usize) -> Self {
        assert!(index < nvars);
        let mut exps = vec![0u32; nvars];
        exps[index] = 1;
        Self::monomial(nvars, exps, Rat::one())
    }

    pub fn monomial(nvars: usize, exponents: Vec<u32>, coeff: Rat) -> Self {
        assert_eq!(exponents.len(), nvars);
        if coeff.is_zero() {
            return Self::zero(nvars);
        }
        let degree = exponents.iter().sum();
        let mut terms = BTreeMap::new();
        terms.insert(exponents, coeff);
        Self {
            nvars,
            degree,
            terms,
        }
    }

    /// Build from raw terms; combines duplicates, drops zeros, and checks
    /// homogeneity.
    pub fn from_terms(nvars: usize, raw: Vec<(Vec<u32>, Rat)>) -> Result<Self> {
        let mut terms: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (exps, coeff) in raw {
            if exps.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    got: exps.len(),
                });
            }
            let entry = terms.entry(exps).or_insert_with(Rat::zero);
            *entry += coeff;
        }
        terms.retain(|_, c| !c.is_zero());
        let mut degree = 0;
        for (i, exps) in terms.keys().enumerate() {
            let d: u32 = exps.iter().sum();
            if i == 0 {
                degree = d;
            } else if d != degree {
                return Err(Error::NotHomogeneous);
            }
        }
        Ok(Self {
            nvars,
            degree,
            terms,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Total degree; 0 for the zero polynomial by convention.
    pub fn degree(&self) -> u32 {
        if self.is_zero() {
            0
        } else {
            self.degree
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &HomoPoly) -> Result<HomoPoly> {
        assert_eq!(self.nvars, other.nvars);
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(Error::NotHomogeneous);
        }
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(Rat::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(HomoPoly {
            nvars: self.nvars,
            degree: self.degree,
            terms,
        })
    }

    pub fn neg(&self) -> HomoPoly {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        HomoPoly {
            nvars: self.nvars,
            degree: self.degree,
            terms,
        }
    }

    pub fn scale(&self, factor: &Rat) -> HomoPoly {
        if factor.is_zero() {
            return HomoPoly::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c * factor))
            .collect();
        HomoPoly {
            nvars: self.nvars,
            degree: self.degree,
            terms,
        }
    }

    pub fn mul(&self, other: &HomoPoly) -> HomoPoly {
        assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return HomoPoly::zero(self.nvars);
        }
        let mut terms: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let entry = terms.entry(exps).or_insert_with(Rat::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        HomoPoly {
            nvars: self.nvars,
            degree: self.degree + other.degree,
            terms,
        }
    }

    pub fn pow(&self, k: u32) -> HomoPoly {
        let mut acc = HomoPoly::monomial(self.nvars, vec![0; self.nvars], Rat::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars);
        let mut total = Rat::zero();
        for (exps, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (x, &e) in point.iter().zip(exps) {
                for _ in 0..e {
                    term *= x;
                }
            }
            total += term;
        }
        total
    }

    /// Substitute each variable by the corresponding image polynomial. All
    /// nonzero images must be homogeneous of one common degree so the result
    /// stays homogeneous.
    pub fn substitute(&self, images: &[HomoPoly]) -> Result<HomoPoly> {
        if images.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: images.len(),
            });
        }
        let out_vars = images
            .first()
            .map(|p| p.nvars())
            .ok_or_else(|| Error::InvalidInput("substitution needs variables".into()))?;
        if images.iter().any(|p| p.nvars() != out_vars) {
            return Err(Error::InvalidInput(
                "substitution images disagree on variable count".into(),
            ));
        }
        let mut image_degree = None;
        for p in images.iter().filter(|p| !p.is_zero()) {
            match image_degree {
                None => image_degree = Some(p.degree()),
                Some(d) if d != p.degree() => return Err(Error::NotHomogeneous),
                _ => {}
            }
        }
        // Cache powers of each image as they are needed.
        let one = HomoPoly::monomial(out_vars, vec![0; out_vars], Rat::one());
        let mut powers: Vec<Vec<HomoPoly>> = images.iter().map(|_| vec![one.clone()]).collect();
        let mut power = |var: usize, k: u32, images: &[HomoPoly]| -> HomoPoly {
            while powers[var].len() <= k as usize {
                let next = powers[var].last().unwrap().mul(&images[var]);
                powers[var].push(next);
            }
            powers[var][k as usize].clone()
        };
        let mut result = HomoPoly::zero(out_vars);
        for (exps, coeff) in &self.terms {
            let mut term = one.scale(coeff);
            for (var, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&power(var, e, images));
                    if term.is_zero() {
                        break;
                    }
                }
            }
            if !term.is_zero() {
                result = merge(result, term);
            }
        }
        Ok(result)
    }

    /// Substitute `x = M z` for an `nvars x k` matrix `M`: each `x_i` maps to
    /// the linear form given by row `i`. A square `M` must be invertible; a
    /// rectangular parameterization must have full column rank.
    pub fn compose_linear(&self, m: &QMatrix) -> Result<HomoPoly> {
        if m.nrows() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: m.nrows(),
            });
        }
        let k = m.ncols();
        let rank = m.rank();
        if rank < k.min(m.nrows()) {
            return Err(Error::RankDeficient {
                rank,
                needed: k.min(m.nrows()),
            });
        }
        let images: Vec<HomoPoly> = (0..m.nrows())
            .map(|r| {
                let raw: Vec<(Vec<u32>, Rat)> = (0..k)
                    .map(|c| {
                        let mut exps = vec![0u32; k];
                        exps[c] = 1;
                        (exps, m[(r, c)].clone())
                    })
                    .collect();
                HomoPoly::from_terms(k, raw).expect("linear forms are homogeneous")
            })
            .collect();
        self.substitute(&images)
    }

    /// Parse the textual format. When `nvars` is `None` the variable count
    /// is inferred from the largest index used.
    pub fn parse(input: &str, nvars: Option<usize>) -> Result<HomoPoly> {
        Parser::new(input, nvars).parse()
    }
}

fn merge(a: HomoPoly, b: HomoPoly) -> HomoPoly {
    if a.is_zero() {
        return b;
    }
    if b.is_zero() {
        return a;
    }
    a.add(&b).expect("merge of equal-degree parts")
}

impl std::fmt::Display for HomoPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Descending lexicographic exponent order.
        for (i, (exps, coeff)) in self.terms.iter().rev().enumerate() {
            let negative = coeff.is_negative();
            let mag = coeff.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let monomial = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        format!("x{}", v + 1)
                    } else {
                        format!("x{}^{}", v + 1, e)
                    }
                })
                .join("*");
            if monomial.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{monomial}")?;
            } else {
                write!(f, "{mag}*{monomial}")?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
    nvars: Option<usize>,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str, nvars: Option<usize>) -> Self {
        Self {
            input: input.as_bytes(),
            pos: 0,
            nvars,
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.input.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<HomoPoly> {
        let mut raw: Vec<(Vec<u32>, Rat)> = Vec::new();
        let mut max_var = 0usize;
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.error("empty polynomial"));
        }
        let mut first = true;
        loop {
            self.skip_ws();
            let mut sign = Rat::one();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                }
                Some(b'-') => {
                    sign = -sign;
                    self.pos += 1;
                }
                Some(_) if first => {}
                Some(c) => {
                    return Err(self.error(format!("expected '+' or '-', found '{}'", c as char)))
                }
                None => break,
            }
            first = false;
            let (exps, coeff, seen_max) = self.parse_term()?;
            max_var = max_var.max(seen_max);
            raw.push((exps, sign * coeff));
            self.skip_ws();
            if self.peek().is_none() {
                break;
            }
        }
        let nvars = match self.nvars {
            Some(n) => {
                if max_var > n {
                    return Err(self.error(format!(
                        "variable index {max_var} exceeds declared count {n}"
                    )));
                }
                n
            }
            None => max_var.max(1),
        };
        let padded = raw
            .into_iter()
            .map(|(mut exps, c)| {
                exps.resize(nvars, 0);
                (exps, c)
            })
            .collect();
        HomoPoly::from_terms(nvars, padded)
    }

    /// One term: factors joined by `*`, each a rational or a power of a
    /// variable. Returns exponents indexed up to the largest variable seen.
    fn parse_term(&mut self) -> Result<(Vec<u32>, Rat, usize)> {
        let mut coeff = Rat::one();
        let mut exps: Vec<u32> = Vec::new();
        let mut max_var = 0usize;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'x') => {
                    self.pos += 1;
                    let idx = self.parse_usize("variable index")?;
                    if idx == 0 {
                        return Err(self.error("variable indices start at 1"));
                    }
                    let mut exp = 1u32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        exp = self.parse_usize("exponent")? as u32;
                    }
                    if exps.len() < idx {
                        exps.resize(idx, 0);
                    }
                    exps[idx - 1] += exp;
                    max_var = max_var.max(idx);
                }
                Some(c) if c.is_ascii_digit() => {
                    coeff *= self.parse_rational()?;
                }
                Some(c) => {
                    return Err(self.error(format!(
                        "expected a coefficient or variable, found '{}'",
                        c as char
                    )))
                }
                None => return Err(self.error("unexpected end of input in term")),
            }
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((exps, coeff, max_var))
    }

    fn parse_usize(&mut self, what: &str) -> Result<usize> {
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(format!("expected {what}")));
        }
        std::str::from_utf8(&self.input[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error(format!("invalid {what}")))
    }

    fn parse_rational(&mut self) -> Result<Rat> {
        let numer = self.parse_usize("numerator")? as i64;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let denom = self.parse_usize("denominator")? as i64;
            if denom == 0 {
                return Err(self.error("zero denominator"));
            }
            Ok(crate::rat::rat(numer, denom))
        } else {
            Ok(crate::rat::rat_int(numer))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};
    use proptest::prelude::*;

    fn p(s: &str) -> HomoPoly {
        HomoPoly::parse(s, None).unwrap()
    }

    #[test]
    fn parse_and_print_canonical() {
        let conic = HomoPoly::parse("x1*x3 - x2^2", Some(3)).unwrap();
        assert_eq!(conic.degree(), 2);
        assert_eq!(conic.num_terms(), 2);
        assert_eq!(conic.to_string(), "x1*x3 - x2^2");
        assert_eq!(p("2*x1^2").to_string(), "2*x1^2");
        assert_eq!(
            p("1/2*x1*x2 + 3/4*x2^2").to_string(),
            "1/2*x1*x2 + 3/4*x2^2"
        );
        assert_eq!(p("x1 - x1 + x2").to_string(), "x2");
    }

    #[test]
    fn parse_rejects_inhomogeneous_and_malformed() {
        assert_eq!(
            HomoPoly::parse("x1 + x2^2", None),
            Err(Error::NotHomogeneous)
        );
        assert!(matches!(
            HomoPoly::parse("x1 + + x2", None),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            HomoPoly::parse("x0", None),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            HomoPoly::parse("", None),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn product_degrees_add() {
        let a = p("x1*x3 - x2^2");
        let b = HomoPoly::parse("x1", Some(3)).unwrap();
        let ab = a.mul(&b);
        assert_eq!(ab.degree(), 3);
        assert_eq!(ab.to_string(), "x1^2*x3 - x1*x2^2");
    }

    #[test]
    fn compose_identity_and_swap() {
        let a = HomoPoly::parse("x1", Some(3)).unwrap();
        let id = QMatrix::identity(3);
        assert_eq!(a.compose_linear(&id).unwrap(), a);

        // Swapping x1 and x2 fixes the symmetric product x1*x2.
        let prod = HomoPoly::parse("x1*x2", Some(3)).unwrap();
        let swap = QMatrix::from_rows(vec![
            vec![rat_int(0), rat_int(1), rat_int(0)],
            vec![rat_int(1), rat_int(0), rat_int(0)],
            vec![rat_int(0), rat_int(0), rat_int(1)],
        ]);
        assert_eq!(prod.compose_linear(&swap).unwrap(), prod);
    }

    #[test]
    fn compose_restriction_to_line() {
        // Restrict x1*x3 - x2^2 to the line (s, s + u, u): by hand,
        // s*u - (s + u)^2 = -s^2 - s*u - u^2.
        let conic = HomoPoly::parse("x1*x3 - x2^2", Some(3)).unwrap();
        let param = QMatrix::from_rows(vec![
            vec![rat_int(1), rat_int(0)],
            vec![rat_int(1), rat_int(1)],
            vec![rat_int(0), rat_int(1)],
        ]);
        let restricted = conic.compose_linear(&param).unwrap();
        let expected = HomoPoly::from_terms(
            2,
            vec![
                (vec![2, 0], rat_int(-1)),
                (vec![1, 1], rat_int(-1)),
                (vec![0, 2], rat_int(-1)),
            ],
        )
        .unwrap();
        assert_eq!(restricted, expected);
    }

    #[test]
    fn compose_rejects_singular_square_matrix() {
        let a = HomoPoly::parse("x1*x2", Some(2)).unwrap();
        let singular = QMatrix::from_rows(vec![
            vec![rat_int(1), rat_int(1)],
            vec![rat_int(2), rat_int(2)],
        ]);
        assert!(matches!(
            a.compose_linear(&singular),
            Err(Error::RankDeficient { .. })
        ));
    }

    #[test]
    fn eval_matches_terms() {
        let conic = p("x1*x3 - x2^2");
        let v = conic.eval(&[rat_int(1), rat_int(2), rat_int(3)]);
        assert_eq!(v, rat_int(3 - 4));
        assert_eq!(conic.eval(&[rat(1, 2), rat_int(0), rat_int(0)]), rat_int(0));
    }

    fn arb_poly(nvars: usize, max_deg: u32) -> impl Strategy<Value = HomoPoly> {
        (
            1..=max_deg,
            proptest::collection::vec(
                (-6i64..=6, proptest::collection::vec(0u32..=3, nvars)),
                1..5,
            ),
        )
            .prop_map(move |(deg, picks)| {
                let raw: Vec<(Vec<u32>, Rat)> = picks
                    .into_iter()
                    .map(|(c, mut exps)| {
                        // Force homogeneity of degree `deg` by topping up the
                        // last variable.
                        let s: u32 = exps.iter().sum();
                        if s > deg {
                            let mut left = s - deg;
                            for e in exps.iter_mut() {
                                let take = (*e).min(left);
                                *e -= take;
                                left -= take;
                            }
                        }
                        let s: u32 = exps.iter().sum();
                        exps[nvars - 1] += deg - s;
                        (exps, rat_int(c))
                    })
                    .collect();
                HomoPoly::from_terms(nvars, raw).unwrap()
            })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(poly in arb_poly(3, 4)) {
            prop_assume!(!poly.is_zero());
            let text = poly.to_string();
            let back = HomoPoly::parse(&text, Some(3)).unwrap();
            prop_assert_eq!(&back, &poly);
            prop_assert_eq!(back.to_string(), text);
        }
    }
}
