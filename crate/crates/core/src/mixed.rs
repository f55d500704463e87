//! Discrete mixed volume, the mixed Ehrhart polynomial and its
//! coefficients, mixed h*-vectors, and the closed forms used to check them.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use log::{debug, trace};
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::ehrhart::{
    compositions, ehrhart, hstar, mixed_volume_table, multivariate_ehrhart, EhrhartPolynomial,
};
use crate::enumerate::{count_points, enumerate_points};
use crate::error::{Error, Result};
use crate::lattice::{LatticePolytope, Location};
use crate::poly::{
    binomial, binomial_polynomial, factorial, int_to_rat, rat, rat_to_int, stirling2,
    to_binomial_basis, Rational, UnivariatePolynomial,
};

/// A subset `J ⊆ [k]` as sorted member indices.
pub type Subset = Vec<usize>;

#[derive(Debug)]
pub struct PolytopeCollection {
    polytopes: Vec<LatticePolytope>,
    sum_dim: usize,
    subsums: OnceLock<Vec<(Subset, LatticePolytope)>>,
}

impl Clone for PolytopeCollection {
    fn clone(&self) -> Self {
        Self {
            polytopes: self.polytopes.clone(),
            sum_dim: self.sum_dim,
            subsums: self.subsums.clone(),
        }
    }
}

impl PartialEq for PolytopeCollection {
    fn eq(&self, other: &Self) -> bool {
        self.polytopes == other.polytopes
    }
}

impl PolytopeCollection {
    pub fn new(polytopes: Vec<LatticePolytope>) -> Result<Self> {
        let first = polytopes.first().ok_or(Error::EmptyCollection)?;
        let d = first.ambient_dim();
        if let Some(bad) = polytopes.iter().find(|p| p.ambient_dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: bad.ambient_dim(),
            });
        }
        let mut sum = LatticePolytope::origin(d);
        for p in &polytopes {
            sum = sum.minkowski_sum(p)?;
        }
        Ok(Self {
            polytopes,
            sum_dim: sum.dim(),
            subsums: OnceLock::new(),
        })
    }

    pub fn polytopes(&self) -> &[LatticePolytope] {
        &self.polytopes
    }

    pub fn len(&self) -> usize {
        self.polytopes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polytopes.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.polytopes[0].ambient_dim()
    }

    /// `dim(P_1 + … + P_k)`.
    pub fn sum_dim(&self) -> usize {
        self.sum_dim
    }

    pub fn is_sum_full_dimensional(&self) -> bool {
        self.sum_dim == self.ambient_dim()
    }

    pub fn all_full_dimensional(&self) -> bool {
        self.polytopes
            .iter()
            .all(LatticePolytope::is_full_dimensional)
    }

    /// Every subsum `P_J`, ordered by `|J|` and then lexicographically.
    /// `P_∅` is the origin.
    pub fn subsums(&self) -> &[(Subset, LatticePolytope)] {
        self.subsums.get_or_init(|| {
            let k = self.len();
            let mut by_set: BTreeMap<Subset, LatticePolytope> = BTreeMap::new();
            by_set.insert(vec![], LatticePolytope::origin(self.ambient_dim()));
            let mut order = subsets(k);
            order.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
            for j in &order {
                if let Some((&last, rest)) = j.split_last() {
                    let sum = by_set[rest]
                        .minkowski_sum(&self.polytopes[last])
                        .expect("common ambient dimension");
                    by_set.insert(j.clone(), sum);
                }
            }
            order
                .into_iter()
                .map(|j| {
                    let p = by_set[&j].clone();
                    (j, p)
                })
                .collect()
        })
    }

    /// The whole sum `P_1 + … + P_k`.
    pub fn sum(&self) -> &LatticePolytope {
        &self.subsums().last().expect("at least P_∅").1
    }

    /// `(rP_1, …, rP_k)`.
    pub fn dilate(&self, r: u64) -> Self {
        Self::new(self.polytopes.iter().map(|p| p.dilate(r)).collect()).expect("same shape")
    }

    fn sign(&self, j: &[usize]) -> i64 {
        if (self.len() - j.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

fn subsets(k: usize) -> Vec<Subset> {
    (0u64..1 << k)
        .map(|mask| (0..k).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

/// One row of the inclusion–exclusion ledger.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetTerm {
    pub subset: Subset,
    pub sign: i64,
    /// `|P_J ∩ ℤ^d|`.
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DmvResult {
    pub value: BigInt,
    pub ledger: Vec<SubsetTerm>,
}

/// Discrete mixed volume with its per-subset ledger.
pub fn dmv_with_ledger(c: &PolytopeCollection) -> DmvResult {
    let ledger: Vec<SubsetTerm> = c
        .subsums()
        .par_iter()
        .map(|(j, p)| SubsetTerm {
            subset: j.clone(),
            sign: c.sign(j),
            count: count_points(p).total,
        })
        .collect();
    let value = ledger
        .iter()
        .map(|t| BigInt::from(t.sign) * BigInt::from(t.count))
        .sum();
    for t in &ledger {
        trace!(
            "dmv term J={:?} sign={} count={}",
            t.subset,
            t.sign,
            t.count
        );
    }
    DmvResult { value, ledger }
}

pub fn dmv(c: &PolytopeCollection) -> Result<BigInt> {
    Ok(dmv_with_ledger(c).value)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartTerm {
    pub subset: Subset,
    pub sign: i64,
    pub ehrhart: EhrhartPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedEhrhartResult {
    pub polynomial: UnivariatePolynomial,
    /// `me_0, …, me_D` with `D = dim(ΣP_i)`.
    pub coefficients: Vec<Rational>,
    /// `ME(1)`.
    pub dmv: BigInt,
    /// `dim(ΣP_i)`.
    pub dimension: usize,
    pub ledger: Vec<EhrhartTerm>,
}

pub fn mixed_ehrhart(c: &PolytopeCollection) -> Result<MixedEhrhartResult> {
    let ledger: Vec<EhrhartTerm> = c
        .subsums()
        .par_iter()
        .map(|(j, p)| {
            Ok(EhrhartTerm {
                subset: j.clone(),
                sign: c.sign(j),
                ehrhart: ehrhart(p)?,
            })
        })
        .collect::<Result<_>>()?;
    let polynomial: UnivariatePolynomial = ledger
        .iter()
        .map(|t| t.ehrhart.polynomial.scale(&rat(t.sign)))
        .sum();
    let dmv = rat_to_int(&polynomial.eval_int(1))
        .ok_or_else(|| Error::Inconsistent("ME(1) is not an integer".into()))?;
    let dimension = c.sum_dim();
    debug!("ME = {polynomial}");
    Ok(MixedEhrhartResult {
        coefficients: polynomial.padded_coeffs(dimension + 1),
        polynomial,
        dmv,
        dimension,
        ledger,
    })
}

/// `me_i = Σ e_α` over `α ∈ ℤ_{≥1}^k` with `|α| = i`, read off the
/// multivariate Ehrhart polynomial.
pub fn me_from_multivariate(c: &PolytopeCollection) -> Result<Vec<Rational>> {
    let e = multivariate_ehrhart(c.polytopes())?;
    let mut out = vec![Rational::zero(); c.sum_dim() + 1];
    for (alpha, coeff) in e.terms() {
        if alpha.iter().all(|&a| a >= 1) {
            let i: u32 = alpha.iter().sum();
            let slot = out.get_mut(i as usize).ok_or_else(|| {
                Error::Inconsistent(format!("term {alpha:?} exceeds the dimension of the sum"))
            })?;
            *slot += coeff;
        }
    }
    Ok(out)
}

/// Leading coefficient from the mixed-volume table.
pub fn me_top(c: &PolytopeCollection) -> Result<Rational> {
    if !c.is_sum_full_dimensional() {
        return Err(Error::SumNotFullDimensional);
    }
    Ok(mixed_volume_table(c.polytopes())?.all_positive_sum())
}

/// The `n^{d-1}` coefficient from facet data: half the sum, over the
/// primitive facet normals `a` of `ΣP_i`, of the `(d-1)`-dimensional
/// leading-coefficient sum of the faces `P_i^a`.
pub fn me_second(c: &PolytopeCollection) -> Result<Rational> {
    if !c.all_full_dimensional() {
        return Err(Error::MembersNotFullDimensional);
    }
    let normals = c.sum().facet_normals()?;
    let per_facet: Vec<Rational> = normals
        .par_iter()
        .map(|a| {
            let faces = c
                .polytopes()
                .iter()
                .map(|p| p.face_in_direction(a).map(|f| f.face))
                .collect::<Result<Vec<_>>>()?;
            let s = mixed_volume_table(&faces)?.all_positive_sum();
            trace!("facet normal {a:?}: {s}");
            Ok(s)
        })
        .collect::<Result<_>>()?;
    let total: Rational = per_facet.into_iter().sum();
    Ok(total / rat(2))
}

/// `MV_d(P_1, …, P_d)` for a collection of exactly `d` polytopes, after
/// confirming that `ME` is the single monomial `d!·MV·n^d`.
pub fn bernstein_mixed_volume(c: &PolytopeCollection) -> Result<Rational> {
    let d = c.ambient_dim();
    if c.len() != d {
        return Err(Error::InvalidArgument(format!(
            "need exactly {d} polytopes, got {}",
            c.len()
        )));
    }
    if !c.is_sum_full_dimensional() {
        return Err(Error::SumNotFullDimensional);
    }
    let me = mixed_ehrhart(c)?;
    if let Some((i, _)) = me.coefficients[..d]
        .iter()
        .enumerate()
        .find(|(_, x)| !x.is_zero())
    {
        return Err(Error::Inconsistent(format!(
            "coefficient of n^{i} is nonzero for a collection of {d} polytopes"
        )));
    }
    Ok(&me.coefficients[d] / int_to_rat(&factorial(d as u64)))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MixedHStarVector {
    pub entries: Vec<BigInt>,
}

impl MixedHStarVector {
    pub fn dimension(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn as_polynomial(&self) -> UnivariatePolynomial {
        UnivariatePolynomial::from_coeffs(self.entries.iter().map(int_to_rat).collect())
    }
}

/// Coefficients of `ME` in the basis `C(n+D-i, D)`, `D = dim(ΣP_i)`.
/// When every member is full-dimensional the result is also rebuilt from
/// the h*-vectors of the subsums and the two must agree.
pub fn mixed_hstar(c: &PolytopeCollection) -> Result<MixedHStarVector> {
    let me = mixed_ehrhart(c)?;
    let h = hstar_from_me(&me.polynomial, c.sum_dim())?;
    if c.all_full_dimensional() {
        let direct = mixed_hstar_direct(c)?;
        if direct != h {
            return Err(Error::Inconsistent(format!(
                "mixed h* {:?} disagrees with the subsum formula {:?}",
                h.entries, direct.entries
            )));
        }
    }
    Ok(h)
}

pub(crate) fn hstar_from_me(me: &UnivariatePolynomial, d: usize) -> Result<MixedHStarVector> {
    let basis = to_binomial_basis(me, d)?;
    let entries = basis
        .integer_entries()
        .ok_or_else(|| Error::Inconsistent("mixed h*-vector has non-integer entries".into()))?;
    Ok(MixedHStarVector { entries })
}

/// `Σ_{J≠∅} (−1)^{k−|J|} h*_i(P_J) + (−1)^{k+i} C(d,i)`; all members must
/// be full-dimensional.
pub fn mixed_hstar_direct(c: &PolytopeCollection) -> Result<MixedHStarVector> {
    if !c.all_full_dimensional() {
        return Err(Error::MembersNotFullDimensional);
    }
    let d = c.ambient_dim();
    let k = c.len();
    let parts: Vec<(i64, Vec<BigInt>)> = c
        .subsums()
        .par_iter()
        .filter(|(j, _)| !j.is_empty())
        .map(|(j, p)| Ok((c.sign(j), hstar(p)?.entries)))
        .collect::<Result<_>>()?;
    let entries = (0..=d)
        .map(|i| {
            let tail =
                binomial(d as i64, i as i64) * if (k + i).is_multiple_of(2) { 1 } else { -1 };
            parts.iter().map(|(s, h)| s * &h[i]).sum::<BigInt>() + tail
        })
        .collect();
    Ok(MixedHStarVector { entries })
}

/// `ME` of `(P, …, P)` (`k` copies) from `h*(P)` alone:
/// `Σ_j h*_j Σ_i (−1)^{k−i} C(k,i) C(in+d−j, d)` with `d = dim P`.
pub fn single_polytope_me(p: &LatticePolytope, k: usize) -> Result<UnivariatePolynomial> {
    let h = hstar(p)?;
    let d = p.dim();
    let mut out = UnivariatePolynomial::zero();
    for (j, hj) in h.entries.iter().enumerate() {
        if hj.is_zero() {
            continue;
        }
        let base = binomial_polynomial(d as i64 - j as i64, d);
        for i in 0..=k {
            let sign = if (k - i).is_multiple_of(2) { 1 } else { -1 };
            let weight = int_to_rat(&(binomial(k as i64, i as i64) * hj * sign));
            out = out + base.scale_variable(&rat(i as i64)).scale(&weight);
        }
    }
    Ok(out)
}

/// `Σ_j C(d−j, d−k) h*_j(P)`: the discrete mixed volume of `k` copies of `P`.
pub fn single_polytope_dmv(p: &LatticePolytope, k: usize) -> Result<BigInt> {
    let h = hstar(p)?;
    let d = p.dim() as i64;
    Ok(h.entries
        .iter()
        .enumerate()
        .map(|(j, hj)| binomial(d - j as i64, d - k as i64) * hj)
        .sum())
}

/// Counts the points of `ΣP_i` lying in no proper subsum. Requires each
/// `P_i` to contain the origin and the dimensions to add up.
pub fn complementary_dmv_oracle(c: &PolytopeCollection) -> Result<BigInt> {
    let origin = vec![0; c.ambient_dim()];
    if let Some(i) = c
        .polytopes()
        .iter()
        .position(|p| p.contains(&origin) == Location::Outside)
    {
        return Err(Error::ComplementaryHypothesis(format!(
            "polytope {i} does not contain the origin"
        )));
    }
    let total: usize = c.polytopes().iter().map(LatticePolytope::dim).sum();
    if total != c.sum_dim() {
        return Err(Error::ComplementaryHypothesis(format!(
            "dimensions add to {total} but the sum has dimension {}",
            c.sum_dim()
        )));
    }
    let subsums = c.subsums();
    let proper = &subsums[..subsums.len() - 1];
    let count = enumerate_points(c.sum())
        .par_iter()
        .filter(|z| {
            proper
                .iter()
                .all(|(_, p)| p.contains(z) == Location::Outside)
        })
        .count();
    Ok(BigInt::from(count))
}

/// `me_i = C(d,i)·k!·S(i,k)` for `k` copies of the unit `d`-cube.
pub fn cube_reference(d: usize, k: usize) -> Vec<Rational> {
    (0..=d)
        .map(|i| {
            int_to_rat(&(binomial(d as i64, i as i64) * factorial(k as u64) * stirling2(i, k)))
        })
        .collect()
}

/// Indices `i ≥ 1` where `h*_i ≥ (−1)^{k+i} C(d,i)` fails. Index 0 is
/// skipped: `h*_0 = 0` for full-dimensional collections, which sits below
/// the bound `1` whenever `k` is even.
pub fn conjectured_bound_violations(h: &MixedHStarVector, k: usize) -> Vec<usize> {
    let d = h.dimension() as i64;
    h.entries
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(i, hi)| {
            let b = binomial(d, *i as i64);
            let bound = if (k + i).is_multiple_of(2) { b } else { -b };
            **hi < bound
        })
        .map(|(i, _)| i)
        .collect()
}

/// Multiset of `α ≥ 1` with `|α| = i`; exposed for reports.
pub fn positive_compositions(i: u32, k: usize) -> Vec<Vec<u32>> {
    compositions(i, k)
        .into_iter()
        .filter(|a| a.iter().all(|&x| x >= 1))
        .collect()
}
