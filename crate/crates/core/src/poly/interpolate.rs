use std::collections::HashSet;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{binomial_polynomial, rat, MultivariatePolynomial, Rational, UnivariatePolynomial};
use crate::error::{Error, Result};

/// Lagrange interpolation through arbitrary distinct integer nodes.
pub fn interpolate_univariate(samples: &[(i64, Rational)]) -> Result<UnivariatePolynomial> {
    if samples.is_empty() {
        return Err(Error::NoSamples);
    }
    let mut seen = HashSet::new();
    if !samples.iter().all(|(x, _)| seen.insert(*x)) {
        return Err(Error::DegenerateNodes);
    }
    let mut out = UnivariatePolynomial::zero();
    for (i, (xi, yi)) in samples.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = UnivariatePolynomial::one();
        let mut denom = Rational::one();
        for (j, (xj, _)) in samples.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis * UnivariatePolynomial::from_coeffs(vec![rat(-xj), Rational::one()]);
            denom *= rat(xi - xj);
        }
        out = out + basis.scale(&(yi / denom));
    }
    Ok(out)
}

/// Interpolates `f(0), …, f(m-1)` by Newton forward differences:
/// `p(n) = Σ_j Δ^j f(0) · C(n, j)`.
pub fn interpolate_consecutive(values: &[Rational]) -> UnivariatePolynomial {
    let mut diffs = values.to_vec();
    let mut out = UnivariatePolynomial::zero();
    for j in 0..values.len() {
        if !diffs[0].is_zero() {
            out = out + binomial_polynomial(0, j).scale(&diffs[0]);
        }
        for i in 0..diffs.len() - 1 {
            diffs[i] = &diffs[i + 1] - &diffs[i];
        }
        diffs.pop();
    }
    out
}

/// Tensor-product interpolation on the grid `Π {0, …, D_i}`.
///
/// The callback is evaluated once per grid node (in parallel); the grid of
/// values is then turned into monomial coefficients one axis at a time,
/// which is valid because the one-dimensional maps act on disjoint axes.
pub fn interpolate_multivariate<F, E>(
    degree_bounds: &[usize],
    evaluate: F,
) -> std::result::Result<MultivariatePolynomial, E>
where
    F: Fn(&[u64]) -> std::result::Result<Rational, E> + Sync,
    E: Send,
{
    let k = degree_bounds.len();
    let extents: Vec<usize> = degree_bounds.iter().map(|d| d + 1).collect();
    let nodes = grid_nodes(&extents);
    let mut grid: Vec<Rational> = nodes
        .par_iter()
        .map(|node| evaluate(node))
        .collect::<std::result::Result<_, E>>()?;

    // Row-major strides: the last axis varies fastest.
    let mut strides = vec![1usize; k];
    for i in (0..k.saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * extents[i + 1];
    }
    for axis in 0..k {
        let len = extents[axis];
        let stride = strides[axis];
        for start in 0..grid.len() {
            if !(start / stride).is_multiple_of(len) {
                continue;
            }
            let fiber: Vec<Rational> = (0..len).map(|t| grid[start + t * stride].clone()).collect();
            let poly = interpolate_consecutive(&fiber);
            for t in 0..len {
                grid[start + t * stride] = poly.coeff(t);
            }
        }
    }

    Ok(MultivariatePolynomial::from_terms(
        k,
        nodes
            .into_iter()
            .zip(grid)
            .map(|(node, c)| (node.into_iter().map(|x| x as u32).collect(), c)),
    ))
}

/// All grid nodes in row-major order.
pub(crate) fn grid_nodes(extents: &[usize]) -> Vec<Vec<u64>> {
    let mut nodes = vec![Vec::with_capacity(extents.len())];
    for &e in extents {
        nodes = nodes
            .into_iter()
            .flat_map(|prefix| {
                (0..e as u64).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    nodes
}
