//! Ehrhart polynomials, h*-vectors, volumes and mixed volumes, all read
//! off exact lattice-point counts.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::enumerate::count_points;
use crate::error::{Error, Result};
use crate::lattice::LatticePolytope;
use crate::poly::{
    int_to_rat, interpolate_consecutive, interpolate_multivariate, multinomial, rat,
    to_binomial_basis, MultivariatePolynomial, Rational, UnivariatePolynomial,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartPolynomial {
    pub polynomial: UnivariatePolynomial,
    /// Dimension of the polytope (the degree of the polynomial).
    pub dimension: usize,
}

impl EhrhartPolynomial {
    pub fn eval(&self, n: i64) -> Rational {
        self.polynomial.eval_int(n)
    }
}

/// Integer coefficients in the basis `C(n+d-j, d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HStarVector {
    pub entries: Vec<BigInt>,
}

impl HStarVector {
    pub fn dimension(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn as_polynomial(&self) -> UnivariatePolynomial {
        UnivariatePolynomial::from_coeffs(self.entries.iter().map(int_to_rat).collect())
    }

    pub fn sum(&self) -> BigInt {
        self.entries.iter().sum()
    }
}

pub(crate) fn lattice_count(p: &LatticePolytope) -> Rational {
    rat(count_points(p).total as i64)
}

/// `|P_1 ∩ ℤ^d| + … + |P_k ∩ ℤ^d|` at `n_1 P_1 + … + n_k P_k`.
pub(crate) fn combination_count(polytopes: &[LatticePolytope], n: &[u64]) -> Result<Rational> {
    let ambient = polytopes[0].ambient_dim();
    let mut sum = LatticePolytope::origin(ambient);
    for (p, &ni) in polytopes.iter().zip(n) {
        if ni > 0 {
            sum = sum.minkowski_sum(&p.dilate(ni))?;
        }
    }
    Ok(lattice_count(&sum))
}

/// Interpolates `E_P` from counts at `n = 0..=dim P` and checks the two
/// held-out dilates `dim P + 1` and `dim P + 2` against direct counts.
pub fn ehrhart(p: &LatticePolytope) -> Result<EhrhartPolynomial> {
    let d = p.dim();
    let counts: Vec<Rational> = (0..=d as u64)
        .map(|n| lattice_count(&p.dilate(n)))
        .collect();
    let polynomial = interpolate_consecutive(&counts);
    for n in [d + 1, d + 2] {
        let direct = lattice_count(&p.dilate(n as u64));
        let predicted = polynomial.eval_int(n as i64);
        if direct != predicted {
            return Err(Error::HeldOutMismatch {
                node: format!("n = {n}"),
                expected: direct.to_string(),
                computed: predicted.to_string(),
            });
        }
    }
    Ok(EhrhartPolynomial {
        polynomial,
        dimension: d,
    })
}

/// `E(n_1, …, n_k) = |(n_1P_1 + … + n_kP_k) ∩ ℤ^d|` as a polynomial.
///
/// Interpolated on the grid `Π{0..dim P_i}` and checked at two nodes
/// outside that grid.
pub fn multivariate_ehrhart(polytopes: &[LatticePolytope]) -> Result<MultivariatePolynomial> {
    let first = polytopes.first().ok_or(Error::EmptyCollection)?;
    if let Some(bad) = polytopes
        .iter()
        .find(|p| p.ambient_dim() != first.ambient_dim())
    {
        return Err(Error::DimensionMismatch {
            expected: first.ambient_dim(),
            found: bad.ambient_dim(),
        });
    }
    let bounds: Vec<usize> = polytopes.iter().map(LatticePolytope::dim).collect();
    let poly = interpolate_multivariate(&bounds, |n| combination_count(polytopes, n))?;

    let held_out: [Vec<u64>; 2] = [
        bounds.iter().map(|&b| b as u64 + 1).collect(),
        bounds
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as u64 + 2 } else { 1 })
            .collect(),
    ];
    for node in held_out {
        let direct = combination_count(polytopes, &node)?;
        let ints: Vec<i64> = node.iter().map(|&x| x as i64).collect();
        let predicted = poly.eval_ints(&ints);
        if direct != predicted {
            return Err(Error::HeldOutMismatch {
                node: format!("{node:?}"),
                expected: direct.to_string(),
                computed: predicted.to_string(),
            });
        }
    }
    Ok(poly)
}

pub fn hstar_from_polynomial(e: &EhrhartPolynomial) -> Result<HStarVector> {
    let basis = to_binomial_basis(&e.polynomial, e.dimension)?;
    let entries = basis.integer_entries().ok_or(Error::NotEhrhart)?;
    Ok(HStarVector { entries })
}

pub fn hstar(p: &LatticePolytope) -> Result<HStarVector> {
    hstar_from_polynomial(&ehrhart(p)?)
}

/// Lattice-normalized volume inside the affine hull: the leading Ehrhart
/// coefficient. For full-dimensional polytopes this is the usual volume.
pub fn volume(p: &LatticePolytope) -> Result<Rational> {
    Ok(ehrhart(p)?.polynomial.leading_coefficient())
}

/// Normalized mixed volumes `MV_d(P_1[α_1], …, P_k[α_k])` for `|α| = d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedVolumeTable {
    pub arity: usize,
    pub dimension: usize,
    pub entries: BTreeMap<Vec<u32>, Rational>,
}

impl MixedVolumeTable {
    pub fn get(&self, alpha: &[u32]) -> Rational {
        self.entries
            .get(alpha)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// `Σ C(d; α) MV(α)` over `α` with every entry at least one.
    pub fn all_positive_sum(&self) -> Rational {
        self.entries
            .iter()
            .filter(|(a, _)| a.iter().all(|&x| x >= 1))
            .map(|(a, mv)| int_to_rat(&multinomial(a)) * mv)
            .sum()
    }
}

/// Reads mixed volumes off the top-degree part of the multivariate
/// Ehrhart polynomial. The sum of the collection must be full-dimensional.
pub fn mixed_volume_table(polytopes: &[LatticePolytope]) -> Result<MixedVolumeTable> {
    let e = multivariate_ehrhart(polytopes)?;
    let d = polytopes[0].ambient_dim();
    if e.total_degree().unwrap_or(0) as usize != d {
        return Err(Error::SumNotFullDimensional);
    }
    let top = e.homogeneous_part(d as u32);
    let entries = compositions(d as u32, polytopes.len())
        .into_iter()
        .map(|alpha| {
            let mv = top.coefficient(&alpha) / int_to_rat(&multinomial(&alpha));
            (alpha, mv)
        })
        .collect::<BTreeMap<_, _>>();
    debug_assert!(entries.values().all(|v| !v.is_negative()));
    Ok(MixedVolumeTable {
        arity: polytopes.len(),
        dimension: d,
        entries,
    })
}

/// All `α ∈ ℤ_{≥0}^k` with `|α| = total`, lexicographic.
pub(crate) fn compositions(total: u32, k: usize) -> Vec<Vec<u32>> {
    if k == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
