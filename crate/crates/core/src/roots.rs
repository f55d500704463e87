//! Eulerian polynomials, exact real-root counting with Sturm sequences,
//! and the dilation scans that watch mixed h*-vectors settle onto
//! `me_d · A_d(z)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::ehrhart::volume;
use crate::error::{Error, Result};
use crate::mixed::{hstar_from_me, me_top, mixed_ehrhart, MixedHStarVector, PolytopeCollection};
use crate::poly::{int_to_rat, rat, rat_frac, Rational, UnivariatePolynomial};

/// Isolating intervals are refined until narrower than this.
pub fn isolation_width() -> Rational {
    rat_frac(1, 1024)
}

/// Dilation factors at which convergence to the limit is checked.
pub const CONVERGENCE_WINDOW: [u64; 3] = [4, 8, 16];

/// Largest allowed `distance / max limit coefficient` at the last window entry.
pub fn convergence_ratio() -> Rational {
    rat_frac(1, 4)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerianPolynomial {
    pub d: usize,
    pub polynomial: UnivariatePolynomial,
}

/// `A(d, 0), …, A(d, d)` with `A(d, 0) = 0` for `d ≥ 1`.
pub fn eulerian_numbers(d: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for m in 1..=d {
        let mut next = vec![BigInt::zero(); m + 1];
        for k in 1..=m {
            let stay = row.get(k).map_or_else(BigInt::zero, |a| a * k);
            let step = &row[k - 1] * (m - k + 1);
            next[k] = stay + step;
        }
        row = next;
    }
    row
}

/// `A_d(z)`, checked against `(1−z)^{d+1} Σ_{n ≤ 2d+2} n^d z^n` in degrees `0..=d`.
pub fn eulerian(d: usize) -> Result<EulerianPolynomial> {
    if d < 1 {
        return Err(Error::InvalidArgument(
            "Eulerian polynomial needs d ≥ 1".into(),
        ));
    }
    let polynomial =
        UnivariatePolynomial::from_coeffs(eulerian_numbers(d).iter().map(int_to_rat).collect());
    let series = UnivariatePolynomial::from_coeffs(
        (0..=2 * d as i64 + 2)
            .map(|n| int_to_rat(&BigInt::from(n).pow(d as u32)))
            .collect(),
    );
    let mut factor = UnivariatePolynomial::one();
    let one_minus_z = UnivariatePolynomial::from_ints(&[1, -1]);
    for _ in 0..=d {
        factor = factor * &one_minus_z;
    }
    let product = series * factor;
    if (0..=d).any(|i| product.coeff(i) != polynomial.coeff(i)) {
        return Err(Error::Inconsistent(format!(
            "Eulerian recurrence disagrees with the generating series at d = {d}"
        )));
    }
    Ok(EulerianPolynomial { d, polynomial })
}

/// Sturm sequence of the square-free part of a polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    seq: Vec<UnivariatePolynomial>,
}

impl SturmChain {
    pub fn new(p: &UnivariatePolynomial) -> Result<Self> {
        let q = p.square_free_part()?;
        let mut seq = vec![q.clone(), q.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]).expect("nonzero divisor");
            if r.is_zero() {
                break;
            }
            seq.push(-r);
        }
        Ok(Self { seq })
    }

    fn variations(&self, x: &Rational) -> usize {
        let signs: Vec<i8> = self
            .seq
            .iter()
            .map(|p| {
                let v = p.eval(x);
                if v.is_positive() {
                    1
                } else if v.is_negative() {
                    -1
                } else {
                    0
                }
            })
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Rational, hi: &Rational) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }
}

/// Distinct real roots of `p` in `(lo, hi]`.
pub fn sturm_real_root_count(
    p: &UnivariatePolynomial,
    lo: &Rational,
    hi: &Rational,
) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if lo >= hi {
        return Err(Error::InvalidArgument(format!(
            "empty interval ({lo}, {hi}]"
        )));
    }
    Ok(SturmChain::new(p)?.count(lo, hi))
}

/// `1 + max |a_i / a_n|`: every root lies strictly inside `(-B, B)`.
pub fn cauchy_bound(p: &UnivariatePolynomial) -> Rational {
    let lead = p.leading_coefficient().abs();
    let n = p.degree().unwrap_or(0);
    let m = p.coeffs()[..n]
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(Rational::zero);
    m + rat(1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub multiplicity: usize,
}

impl RootInterval {
    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rat(2)
    }

    pub fn approx(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootReport {
    pub real_rooted: bool,
    pub degree: usize,
    /// One interval `(lo, hi]` per distinct real root, increasing.
    pub intervals: Vec<RootInterval>,
}

impl RootReport {
    pub fn real_root_count(&self) -> usize {
        self.intervals.iter().map(|r| r.multiplicity).sum()
    }

    pub fn all_simple(&self) -> bool {
        self.intervals.iter().all(|r| r.multiplicity == 1)
    }
}

/// Isolates every real root and counts multiplicities through the chain
/// `g_0 = p`, `g_{j+1} = gcd(g_j, g_j')`: a root of multiplicity `m` is a
/// root of exactly `g_0, …, g_{m-1}`.
pub fn is_real_rooted(p: &UnivariatePolynomial) -> Result<RootReport> {
    let degree = p.degree().ok_or(Error::ZeroPolynomial)?;
    if degree == 0 {
        return Ok(RootReport {
            real_rooted: true,
            degree,
            intervals: vec![],
        });
    }
    let chain = SturmChain::new(p)?;
    let bound = cauchy_bound(p);
    let width = isolation_width();
    let mut found = Vec::new();
    isolate(&chain, -bound.clone(), bound, &width, &mut found);

    let mut layers = Vec::new();
    let mut g = p.clone();
    while g.degree().unwrap_or(0) > 0 {
        layers.push(SturmChain::new(&g)?);
        g = g.gcd(&g.derivative());
    }
    let intervals: Vec<RootInterval> = found
        .into_iter()
        .map(|(lo, hi)| {
            let multiplicity = layers.iter().filter(|s| s.count(&lo, &hi) > 0).count();
            RootInterval {
                lo,
                hi,
                multiplicity,
            }
        })
        .collect();
    let total: usize = intervals.iter().map(|r| r.multiplicity).sum();
    Ok(RootReport {
        real_rooted: total == degree,
        degree,
        intervals,
    })
}

fn isolate(
    chain: &SturmChain,
    lo: Rational,
    hi: Rational,
    width: &Rational,
    out: &mut Vec<(Rational, Rational)>,
) {
    let n = chain.count(&lo, &hi);
    if n == 0 {
        return;
    }
    if n == 1 && &(&hi - &lo) < width {
        out.push((lo, hi));
        return;
    }
    let mid = (&lo + &hi) / rat(2);
    isolate(chain, lo, mid.clone(), width, out);
    isolate(chain, mid, hi, width, out);
}

pub fn is_log_concave(seq: &[BigInt]) -> bool {
    seq.windows(3).all(|w| &w[1] * &w[1] >= &w[0] * &w[2])
}

pub fn is_unimodal(seq: &[BigInt]) -> bool {
    let peak = seq.windows(2).take_while(|w| w[0] <= w[1]).count();
    seq[peak..].windows(2).all(|w| w[0] >= w[1])
}

/// `Σ_J (−1)^{k−|J|} vol(P_J) · A_d(z)` for a collection of full-dimensional
/// polytopes. The scalar is checked against the mixed-volume value of `me_d`.
pub fn asymptotic_limit(c: &PolytopeCollection) -> Result<UnivariatePolynomial> {
    if !c.all_full_dimensional() {
        return Err(Error::MembersNotFullDimensional);
    }
    let d = c.ambient_dim();
    let k = c.len();
    let vols: Vec<Rational> = c
        .subsums()
        .par_iter()
        .filter(|(j, _)| !j.is_empty())
        .map(|(j, p)| {
            let v = volume(p)?;
            Ok(if (k - j.len()).is_multiple_of(2) {
                v
            } else {
                -v
            })
        })
        .collect::<Result<_>>()?;
    let scalar: Rational = vols.into_iter().sum();
    let top = me_top(c)?;
    if scalar != top {
        return Err(Error::Inconsistent(format!(
            "limit scalar {scalar} differs from the mixed-volume leading coefficient {top}"
        )));
    }
    Ok(eulerian(d)?.polynomial.scale(&scalar))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DilationReport {
    pub r: u64,
    pub hstar: MixedHStarVector,
    pub real_rooted: bool,
    /// `h*_i > 0` for `1 ≤ i ≤ d`.
    pub positive_tail: bool,
    pub log_concave: bool,
    pub unimodal: bool,
    /// `max_i |h*_i(r𝒫) / r^d − limit_i|`.
    pub limit_distance: Rational,
}

impl DilationReport {
    pub fn all_hold(&self) -> bool {
        self.real_rooted && self.positive_tail && self.log_concave && self.unimodal
    }
}

/// Shared data for evaluating dilates without recounting.
struct Scanner {
    me: UnivariatePolynomial,
    limit: UnivariatePolynomial,
    d: usize,
}

impl Scanner {
    fn new(c: &PolytopeCollection) -> Result<Self> {
        let limit = asymptotic_limit(c)?;
        let me = mixed_ehrhart(c)?.polynomial;
        Ok(Self {
            me,
            limit,
            d: c.ambient_dim(),
        })
    }

    fn hstar(&self, r: u64) -> Result<MixedHStarVector> {
        hstar_from_me(&self.me.scale_variable(&rat(r as i64)), self.d)
    }

    fn distance(&self, h: &MixedHStarVector, r: u64) -> Rational {
        let scale = int_to_rat(&BigInt::from(r).pow(self.d as u32));
        let limit = self.limit.padded_coeffs(self.d + 1);
        h.entries
            .iter()
            .zip(&limit)
            .map(|(x, l)| (int_to_rat(x) / &scale - l).abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    fn report(&self, r: u64) -> Result<DilationReport> {
        let hstar = self.hstar(r)?;
        let poly = hstar.as_polynomial();
        let real_rooted = !poly.is_zero() && is_real_rooted(&poly)?.real_rooted;
        let positive_tail = hstar.entries.iter().skip(1).all(Signed::is_positive);
        let log_concave = is_log_concave(&hstar.entries);
        let unimodal = is_unimodal(&hstar.entries);
        if positive_tail && real_rooted && !(log_concave && unimodal) {
            return Err(Error::Inconsistent(format!(
                "real-rooted positive h* {:?} is not log-concave and unimodal",
                hstar.entries
            )));
        }
        let limit_distance = self.distance(&hstar, r);
        Ok(DilationReport {
            r,
            hstar,
            real_rooted,
            positive_tail,
            log_concave,
            unimodal,
            limit_distance,
        })
    }
}

/// Reports for `r = 1..=r_max`, computed from `ME(r·n)`.
pub fn scan_dilates(c: &PolytopeCollection, r_max: u64) -> Result<Vec<DilationReport>> {
    if r_max < 1 {
        return Err(Error::InvalidArgument("r_max must be at least 1".into()));
    }
    let s = Scanner::new(c)?;
    (1..=r_max).into_par_iter().map(|r| s.report(r)).collect()
}

/// Smallest `r` such that every diagnostic holds for all `r' ∈ r..=r_max`.
/// An empirical witness, not a certified bound.
pub fn find_min_r(c: &PolytopeCollection, r_max: u64) -> Result<Option<u64>> {
    let reports = scan_dilates(c, r_max)?;
    Ok(min_r_from_reports(&reports))
}

pub fn min_r_from_reports(reports: &[DilationReport]) -> Option<u64> {
    let mut best = None;
    for rep in reports.iter().rev() {
        if !rep.all_hold() {
            break;
        }
        best = Some(rep.r);
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceReport {
    pub distances: Vec<(u64, Rational)>,
    /// Largest absolute coefficient of the limit polynomial.
    pub limit_max: Rational,
    pub non_increasing: bool,
    /// `distance / limit_max` at the last `r` of the window.
    pub final_ratio: Rational,
    pub within_threshold: bool,
}

pub fn convergence_report(c: &PolytopeCollection, window: &[u64]) -> Result<ConvergenceReport> {
    let last = *window
        .last()
        .ok_or_else(|| Error::InvalidArgument("empty convergence window".into()))?;
    let s = Scanner::new(c)?;
    let distances = window
        .iter()
        .map(|&r| Ok((r, s.distance(&s.hstar(r)?, r))))
        .collect::<Result<Vec<_>>>()?;
    let limit_max = s
        .limit
        .coeffs()
        .iter()
        .map(Signed::abs)
        .max()
        .unwrap_or_else(Rational::zero);
    let non_increasing = distances.windows(2).all(|w| w[1].1 <= w[0].1);
    let final_distance = &distances.last().expect("nonempty").1;
    let final_ratio = final_distance / &limit_max;
    debug_assert_eq!(distances.last().map(|x| x.0), Some(last));
    Ok(ConvergenceReport {
        within_threshold: final_ratio < convergence_ratio(),
        distances,
        limit_max,
        non_increasing,
        final_ratio,
    })
}

/// Upper bound on the distance between matched roots of `h*(r𝒫)` and of
/// `A_d`, sorted increasingly; `None` when the root counts differ.
pub fn root_drift(c: &PolytopeCollection, r: u64) -> Result<Option<Rational>> {
    let s = Scanner::new(c)?;
    let h = s.hstar(r)?.as_polynomial();
    let a = eulerian(s.d)?.polynomial;
    let ours = is_real_rooted(&h)?;
    let theirs = is_real_rooted(&a)?;
    if ours.intervals.len() != theirs.intervals.len() {
        return Ok(None);
    }
    Ok(ours
        .intervals
        .iter()
        .zip(&theirs.intervals)
        .map(|(x, y)| {
            let slack = (&x.hi - &x.lo + &y.hi - &y.lo) / rat(2);
            (x.midpoint() - y.midpoint()).abs() + slack
        })
        .max())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticePolytope;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn pair(p: LatticePolytope) -> PolytopeCollection {
        PolytopeCollection::new(vec![p.clone(), p]).unwrap()
    }

    #[test]
    fn eulerian_small() {
        assert_eq!(
            eulerian(1).unwrap().polynomial,
            UnivariatePolynomial::from_ints(&[0, 1])
        );
        assert_eq!(
            eulerian(2).unwrap().polynomial,
            UnivariatePolynomial::from_ints(&[0, 1, 1])
        );
        assert_eq!(
            eulerian(3).unwrap().polynomial,
            UnivariatePolynomial::from_ints(&[0, 1, 4, 1])
        );
        assert_eq!(eulerian_numbers(4), ints(&[0, 1, 11, 11, 1]));
        assert!(eulerian(0).is_err());
        for d in 1..=8usize {
            let a = eulerian_numbers(d);
            let total: BigInt = a.iter().sum();
            assert_eq!(total, crate::poly::factorial(d as u64));
            for k in 1..=d {
                assert_eq!(a[k], a[d + 1 - k]);
            }
        }
    }

    #[test]
    fn sturm_counts() {
        let p = UnivariatePolynomial::from_ints(&[1, 4, 1]);
        assert_eq!(sturm_real_root_count(&p, &rat(-10), &rat(0)).unwrap(), 2);
        assert_eq!(sturm_real_root_count(&p, &rat(-1), &rat(0)).unwrap(), 1);
        let q = UnivariatePolynomial::from_ints(&[1, 0, 1]);
        assert_eq!(sturm_real_root_count(&q, &rat(-10), &rat(10)).unwrap(), 0);
        let a3 = eulerian(3).unwrap().polynomial;
        assert_eq!(sturm_real_root_count(&a3, &rat(-10), &rat(1)).unwrap(), 3);
        // the root at 0 sits on the closed end only
        assert_eq!(sturm_real_root_count(&a3, &rat(0), &rat(1)).unwrap(), 0);
        assert_eq!(sturm_real_root_count(&a3, &rat(-1), &rat(0)).unwrap(), 2);
        assert_eq!(
            sturm_real_root_count(&UnivariatePolynomial::zero(), &rat(0), &rat(1)),
            Err(Error::ZeroPolynomial)
        );
        // (z − 1)² (z + 2): two distinct roots
        let r = UnivariatePolynomial::from_ints(&[2, -3, 0, 1]);
        assert_eq!(sturm_real_root_count(&r, &rat(-5), &rat(5)).unwrap(), 2);
    }

    #[test]
    fn real_rootedness() {
        let six_a3 = UnivariatePolynomial::from_ints(&[0, 6, 24, 6]);
        let rep = is_real_rooted(&six_a3).unwrap();
        assert!(rep.real_rooted);
        assert_eq!(rep.intervals.len(), 3);
        let approx: Vec<f64> = rep.intervals.iter().map(RootInterval::approx).collect();
        let exact = [-2.0 - 3f64.sqrt(), -2.0 + 3f64.sqrt(), 0.0];
        for (a, e) in approx.iter().zip(exact) {
            assert!((a - e).abs() < 1e-3, "{approx:?}");
        }
        for iv in &rep.intervals {
            assert!(&iv.hi - &iv.lo < isolation_width());
        }
        assert!(
            !is_real_rooted(&UnivariatePolynomial::from_ints(&[1, 0, 1]))
                .unwrap()
                .real_rooted
        );
        assert!(
            is_real_rooted(&UnivariatePolynomial::from_ints(&[0, 33, 108, 9]))
                .unwrap()
                .real_rooted
        );

        let r = is_real_rooted(&UnivariatePolynomial::from_ints(&[2, -3, 0, 1])).unwrap();
        assert!(r.real_rooted);
        assert_eq!(
            r.intervals
                .iter()
                .map(|i| i.multiplicity)
                .collect::<Vec<_>>(),
            vec![1, 2]
        );
        // z²(z² + 1): double root at 0, no others
        let r = is_real_rooted(&UnivariatePolynomial::from_ints(&[0, 0, 1, 0, 1])).unwrap();
        assert!(!r.real_rooted);
        assert_eq!(r.real_root_count(), 2);
    }

    #[test]
    fn sequence_shapes() {
        assert!(is_log_concave(&ints(&[1, 4, 1, 0])));
        assert!(!is_log_concave(&ints(&[1, 0, 1])));
        assert!(is_log_concave(&ints(&[0, 33, 108, 9])));
        assert!(is_unimodal(&ints(&[0, 12, 32, 0])));
        assert!(!is_unimodal(&ints(&[1, 2, 1, 2])));
        assert!(is_unimodal(&ints(&[5, 5, 5])));
        assert!(is_unimodal(&ints(&[7])));
    }

    #[test]
    fn limits() {
        let cubes = pair(LatticePolytope::cube(3, 1));
        assert_eq!(
            asymptotic_limit(&cubes).unwrap(),
            UnivariatePolynomial::from_ints(&[0, 6, 24, 6])
        );
        let simplices = pair(LatticePolytope::simplex(3, 1));
        assert_eq!(
            asymptotic_limit(&simplices).unwrap(),
            eulerian(3).unwrap().polynomial
        );
        let single = PolytopeCollection::new(vec![LatticePolytope::simplex(2, 1)]).unwrap();
        assert_eq!(
            asymptotic_limit(&single).unwrap(),
            UnivariatePolynomial::from_ints(&[0, 1, 1]).scale(&rat_frac(1, 2))
        );
        let flat = PolytopeCollection::new(vec![LatticePolytope::segment(2, 0, 1)]).unwrap();
        assert_eq!(
            asymptotic_limit(&flat),
            Err(Error::MembersNotFullDimensional)
        );
    }

    #[test]
    fn simplex_pair_scan() {
        let reports = scan_dilates(&pair(LatticePolytope::simplex(3, 1)), 4).unwrap();
        assert_eq!(reports[0].hstar.entries, ints(&[0, 3, 4, -1]));
        assert!(!reports[0].positive_tail);
        assert_eq!(reports[1].hstar.entries, ints(&[0, 16, 32, 0]));
        assert!(!reports[1].positive_tail);
        assert_eq!(reports[2].hstar.entries, ints(&[0, 45, 108, 9]));
        assert!(reports[2].all_hold());
        assert_eq!(min_r_from_reports(&reports), Some(3));
    }

    // h*_d of the cube pair at r = 1 equals (−1)^d·ME(−1) = −(−6 + 6) = 0.
    #[test]
    fn cube_pair_needs_two() {
        let c = pair(LatticePolytope::cube(3, 1));
        let me = mixed_ehrhart(&c).unwrap().polynomial;
        assert_eq!(me.eval_int(-1), rat(0));
        let reports = scan_dilates(&c, 10).unwrap();
        assert_eq!(reports[0].hstar.entries, ints(&[0, 12, 24, 0]));
        assert!(!reports[0].positive_tail);
        assert_eq!(find_min_r(&c, 10).unwrap(), Some(2));
        assert_eq!(
            find_min_r(&pair(LatticePolytope::simplex(3, 1)), 2).unwrap(),
            None
        );
    }
}
