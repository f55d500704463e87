//! Exact polynomial algebra over the rationals.
//!
//! Everything here is exact: coefficients are [`BigRational`]s kept in
//! lowest terms, and no operation ever touches a float.

mod binomial;
mod combinatorics;
mod interpolate;
mod multivariate;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use binomial::{binomial_polynomial, to_binomial_basis, BinomialBasisVector};
pub use combinatorics::{binomial, factorial, finite_difference, multinomial, stirling2};
pub use interpolate::{interpolate_consecutive, interpolate_multivariate, interpolate_univariate};
pub use multivariate::MultivariatePolynomial;

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_to_rat(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// Returns the integer value of `q`, or `None` when `q` has a denominator.
pub fn rat_to_int(q: &Rational) -> Option<BigInt> {
    q.is_integer().then(|| q.to_integer())
}

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of `n^i`.
///
/// Trailing zeros are always trimmed, so the zero polynomial has no
/// coefficients and equality is coefficient-wise.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UnivariatePolynomial {
    coeffs: Vec<Rational>,
}

impl UnivariatePolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `n`.
    pub fn variable() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `n^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficients zero-padded to at least `len` entries.
    pub fn padded_coeffs(&self, len: usize) -> Vec<Rational> {
        (0..len.max(self.coeffs.len()))
            .map(|i| self.coeff(i))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> Rational {
        self.eval(&rat(x))
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    /// `p(c·n)`.
    pub fn scale_variable(&self, c: &Rational) -> Self {
        let mut power = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for coeff in &self.coeffs {
            out.push(coeff * &power);
            power *= c;
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lead = self.leading_coefficient();
        self.scale(&(Rational::one() / lead))
    }

    /// Euclidean division; `None` when dividing by zero.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lead = divisor.leading_coefficient();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Some((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for shift in (0..=nd - dd).rev() {
            let c = &rem[shift + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] -= &c * dc;
            }
            quot[shift] = c;
        }
        rem.truncate(dd);
        Some((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`: same roots, all simple.
    pub fn square_free_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative());
        let (q, r) = self
            .div_rem(&g)
            .expect("gcd of a nonzero polynomial is nonzero");
        debug_assert!(r.is_zero());
        Ok(q)
    }

    /// True when every coefficient is an integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Renders with variable name `var`, e.g. `6n^3 + 6n^2`.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let abs = c.abs();
            let show_coeff = i == 0 || !abs.is_one();
            if show_coeff {
                if abs.is_integer() {
                    out.push_str(&abs.to_string());
                } else {
                    out.push_str(&format!("({abs})"));
                }
            }
            match i {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{i}")),
            }
        }
        out
    }
}

impl fmt::Display for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("n"))
    }
}

impl Add for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;

    fn add(self, rhs: Self) -> UnivariatePolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        UnivariatePolynomial::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;

    fn sub(self, rhs: Self) -> UnivariatePolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        UnivariatePolynomial::from_coeffs((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;

    fn mul(self, rhs: Self) -> UnivariatePolynomial {
        if self.is_zero() || rhs.is_zero() {
            return UnivariatePolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UnivariatePolynomial::from_coeffs(out)
    }
}

impl Neg for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;

    fn neg(self) -> UnivariatePolynomial {
        UnivariatePolynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UnivariatePolynomial {
            type Output = UnivariatePolynomial;
            fn $m(self, rhs: Self) -> UnivariatePolynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&UnivariatePolynomial> for UnivariatePolynomial {
            type Output = UnivariatePolynomial;
            fn $m(self, rhs: &UnivariatePolynomial) -> UnivariatePolynomial {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn neg(self) -> UnivariatePolynomial {
        -&self
    }
}

impl std::iter::Sum for UnivariatePolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, p| acc + p)
    }
}
