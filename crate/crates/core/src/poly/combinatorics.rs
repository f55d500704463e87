use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Binomial coefficient `C(n, k)`, zero for `k < 0`.
///
/// Negative `n` uses the polynomial extension `C(n, k) = n(n-1)…(n-k+1)/k!`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n >= 0 && k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Multinomial coefficient `C(|α|; α_1, …, α_k)`.
pub fn multinomial(alpha: &[u32]) -> BigInt {
    let total: u64 = alpha.iter().map(|&a| u64::from(a)).sum();
    alpha
        .iter()
        .fold(factorial(total), |acc, &a| acc / factorial(u64::from(a)))
}

/// Stirling number of the second kind via `S(i,k) = k·S(i-1,k) + S(i-1,k-1)`.
pub fn stirling2(i: usize, k: usize) -> BigInt {
    if k > i {
        return BigInt::zero();
    }
    // row[j] = S(m, j) for the current m
    let mut row = vec![BigInt::zero(); k + 1];
    row[0] = BigInt::one();
    for _ in 0..i {
        for j in (1..=k).rev() {
            row[j] = &row[j] * j + &row[j - 1];
        }
        row[0] = BigInt::zero();
    }
    row[k].clone()
}

/// `Δ^k f(0) = Σ_j (-1)^{k-j} C(k,j) f(j)` from the samples `f(0), …, f(k)`.
pub fn finite_difference(values: &[Rational], k: usize) -> Result<Rational> {
    if values.len() < k + 1 {
        return Err(Error::InsufficientValues {
            order: k,
            needed: k + 1,
            got: values.len(),
        });
    }
    let mut acc = Rational::zero();
    for (j, f) in values.iter().take(k + 1).enumerate() {
        let c = Rational::from_integer(binomial(k as i64, j as i64)) * f;
        if (k - j).is_multiple_of(2) {
            acc += c;
        } else {
            acc -= c;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn powers(exp: u32, count: usize) -> Vec<Rational> {
        (0..count as i64).map(|x| rat(x.pow(exp))).collect()
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), big(10));
        assert_eq!(binomial(3, 4), big(0));
        assert_eq!(binomial(3, -1), big(0));
        assert_eq!(binomial(0, 0), big(1));
        assert_eq!(binomial(-1, 3), big(-1));
        assert_eq!(multinomial(&[1, 2]), big(3));
        assert_eq!(multinomial(&[1, 1, 1]), big(6));
        assert_eq!(multinomial(&[]), big(1));
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling2(2, 2), big(1));
        assert_eq!(stirling2(1, 2), big(0));
        assert_eq!(stirling2(3, 2), big(3));
        assert_eq!(stirling2(0, 0), big(1));
        assert_eq!(stirling2(3, 0), big(0));
        assert_eq!(stirling2(5, 3), big(25));
    }

    #[test]
    fn differences() {
        let sq = [rat(0), rat(1), rat(4)];
        assert_eq!(finite_difference(&sq, 2).unwrap(), rat(2));
        let cube = [rat(0), rat(1), rat(8)];
        assert_eq!(finite_difference(&cube, 2).unwrap(), rat(6));
        let constant = [rat(7), rat(7), rat(7)];
        assert_eq!(finite_difference(&constant, 1).unwrap(), rat(0));
        assert_eq!(finite_difference(&constant, 2).unwrap(), rat(0));
        assert!(matches!(
            finite_difference(&sq, 3),
            Err(Error::InsufficientValues {
                needed: 4,
                got: 3,
                ..
            })
        ));
    }

    // Δ^k x^i at 0 equals k!·S(i,k); the difference is computed straight
    // from the samples, the Stirling number from its recurrence.
    #[test]
    fn differences_match_stirling() {
        for i in 0..=8u32 {
            for k in 0..=8usize {
                let samples = powers(i, k + 1);
                let lhs = finite_difference(&samples, k).unwrap();
                let rhs = Rational::from_integer(factorial(k as u64) * stirling2(i as usize, k));
                assert_eq!(lhs, rhs, "i={i} k={k}");
            }
        }
    }
}
