use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{rat, Rational, UnivariatePolynomial};

/// Sparse polynomial in `k` variables, keyed by exponent tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultivariatePolynomial {
    arity: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultivariatePolynomial {
    pub fn zero(arity: usize) -> Self {
        Self {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(arity: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(arity);
        for (alpha, c) in terms {
            p.add_term(alpha, c);
        }
        p
    }

    pub fn add_term(&mut self, alpha: Vec<u32>, c: Rational) {
        assert_eq!(alpha.len(), self.arity, "exponent arity mismatch");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(alpha).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, alpha: &[u32]) -> Rational {
        self.terms
            .get(alpha)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|a| a[var]).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|a| a.iter().sum()).max()
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.arity);
        self.terms
            .iter()
            .map(|(alpha, c)| {
                alpha.iter().zip(point).fold(c.clone(), |acc, (&e, x)| {
                    acc * num_traits::pow(x.clone(), e as usize)
                })
            })
            .sum()
    }

    pub fn eval_ints(&self, point: &[i64]) -> Rational {
        let pt: Vec<_> = point.iter().map(|&x| rat(x)).collect();
        self.eval(&pt)
    }

    /// Terms of total degree exactly `degree`.
    pub fn homogeneous_part(&self, degree: u32) -> Self {
        Self::from_terms(
            self.arity,
            self.terms
                .iter()
                .filter(|(a, _)| a.iter().sum::<u32>() == degree)
                .map(|(a, c)| (a.clone(), c.clone())),
        )
    }

    /// Substitutes `n` for every variable.
    pub fn diagonal(&self) -> UnivariatePolynomial {
        let deg = self.total_degree().unwrap_or(0) as usize;
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (alpha, c) in &self.terms {
            coeffs[alpha.iter().sum::<u32>() as usize] += c;
        }
        UnivariatePolynomial::from_coeffs(coeffs)
    }
}

impl fmt::Display for MultivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(alpha, c)| {
                let mono: Vec<String> = alpha
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            format!("n{}", i + 1)
                        } else {
                            format!("n{}^{}", i + 1, e)
                        }
                    })
                    .collect();
                match (mono.is_empty(), c.is_one()) {
                    (true, _) => c.to_string(),
                    (false, true) => mono.join("*"),
                    (false, false) => format!("({c})*{}", mono.join("*")),
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
