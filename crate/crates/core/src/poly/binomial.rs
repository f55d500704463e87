use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{factorial, int_to_rat, rat, Rational, UnivariatePolynomial};
use crate::error::{Error, Result};

/// `C(n + shift, d)` as a polynomial in `n`.
pub fn binomial_polynomial(shift: i64, d: usize) -> UnivariatePolynomial {
    let mut acc = UnivariatePolynomial::one();
    for t in 0..d as i64 {
        acc = acc * UnivariatePolynomial::from_coeffs(vec![rat(shift - t), Rational::one()]);
    }
    acc.scale(&(Rational::one() / int_to_rat(&factorial(d as u64))))
}

/// Coordinates `h_0, …, h_d` of a polynomial in the basis
/// `C(n+d, d), C(n+d-1, d), …, C(n, d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialBasisVector {
    entries: Vec<Rational>,
}

impl BinomialBasisVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        assert!(
            !entries.is_empty(),
            "binomial basis vector needs d+1 entries"
        );
        Self { entries }
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn dimension(&self) -> usize {
        self.entries.len() - 1
    }

    /// Integer entries, or `None` if any entry has a denominator.
    pub fn integer_entries(&self) -> Option<Vec<BigInt>> {
        self.entries
            .iter()
            .map(|e| e.is_integer().then(|| e.to_integer()))
            .collect()
    }

    /// `Σ_j h_j · C(n + d - j, d)`.
    pub fn to_polynomial(&self) -> UnivariatePolynomial {
        let d = self.dimension();
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, h)| !h.is_zero())
            .map(|(j, h)| binomial_polynomial((d - j) as i64, d).scale(h))
            .sum()
    }
}

/// Change of basis into `{C(n+d-j, d)}`.
///
/// At `n = m` only the terms with `j ≤ m` survive and the `j = m` term has
/// coefficient `C(d, d) = 1`, so the system is unit lower triangular in the
/// samples `p(0), …, p(d)`.
pub fn to_binomial_basis(p: &UnivariatePolynomial, d: usize) -> Result<BinomialBasisVector> {
    if let Some(deg) = p.degree() {
        if deg > d {
            return Err(Error::DegreeExceedsDimension {
                degree: deg,
                dimension: d,
            });
        }
    }
    let mut h: Vec<Rational> = Vec::with_capacity(d + 1);
    for m in 0..=d {
        let mut value = p.eval_int(m as i64);
        for (j, hj) in h.iter().enumerate() {
            let c = super::binomial((m + d - j) as i64, d as i64);
            value -= hj * int_to_rat(&c);
        }
        h.push(value);
    }
    Ok(BinomialBasisVector::new(h))
}
