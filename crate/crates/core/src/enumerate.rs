//! Exact lattice-point counting inside lattice polytopes.
//!
//! Points are scanned in the lattice frame of the affine hull, where the
//! polytope is full-dimensional. The outer coordinates run over the
//! bounding box; the innermost coordinate is solved from the facet
//! inequalities, so each row costs one pass over the facets.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::lattice::{Facet, LatticePolytope, Point};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountResult {
    pub total: u64,
    /// Points in the relative interior.
    pub interior: u64,
}

impl std::ops::Add for CountResult {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            total: self.total + rhs.total,
            interior: self.interior + rhs.interior,
        }
    }
}

pub fn count_points(p: &LatticePolytope) -> CountResult {
    let dim = p.dim();
    if dim == 0 {
        return CountResult {
            total: 1,
            interior: 1,
        };
    }
    let facets = p.local_facets();
    let bounds = p.local_box();
    if dim == 1 {
        return row(facets, &[], Some(bounds[0])).map_or(CountResult::default(), |r| r.count);
    }
    let (lo, hi) = bounds[0];
    (lo..=hi)
        .into_par_iter()
        .map(|x0| {
            let mut acc = CountResult::default();
            let mut prefix = vec![x0];
            scan(facets, bounds, &mut prefix, &mut |r| acc = acc + r.count);
            acc
        })
        .reduce(CountResult::default, |a, b| a + b)
}

/// All lattice points of `p` in lexicographic order.
pub fn enumerate_points(p: &LatticePolytope) -> Vec<Point> {
    if p.dim() == 0 {
        return vec![p.to_ambient(&[])];
    }
    let facets = p.local_facets();
    let bounds = p.local_box();
    let mut local = Vec::new();
    let mut prefix = Vec::new();
    let mut collect = |r: RowSpan, prefix: &[i64]| {
        for t in r.lo..=r.hi {
            let mut pt = prefix.to_vec();
            pt.push(t);
            local.push(pt);
        }
    };
    scan_with_prefix(facets, bounds, &mut prefix, &mut collect);
    let mut out: Vec<Point> = local.iter().map(|t| p.to_ambient(t)).collect();
    out.sort();
    out
}

struct RowSpan {
    lo: i64,
    hi: i64,
    count: CountResult,
}

fn scan(
    facets: &[Facet],
    bounds: &[(i64, i64)],
    prefix: &mut Vec<i64>,
    on_row: &mut dyn FnMut(RowSpan),
) {
    scan_with_prefix(facets, bounds, prefix, &mut |r, _| on_row(r));
}

fn scan_with_prefix(
    facets: &[Facet],
    bounds: &[(i64, i64)],
    prefix: &mut Vec<i64>,
    on_row: &mut dyn FnMut(RowSpan, &[i64]),
) {
    let dim = bounds.len();
    if prefix.len() == dim - 1 {
        if let Some(r) = row(facets, prefix, Some(bounds[dim - 1])) {
            on_row(r, prefix);
        }
        return;
    }
    let (lo, hi) = bounds[prefix.len()];
    for x in lo..=hi {
        prefix.push(x);
        scan_with_prefix(facets, bounds, prefix, on_row);
        prefix.pop();
    }
}

/// Solves for the last coordinate given the fixed `prefix`.
fn row(facets: &[Facet], prefix: &[i64], bound: Option<(i64, i64)>) -> Option<RowSpan> {
    let last = prefix.len();
    let (mut lo, mut hi) = bound.unwrap_or((i64::MIN, i64::MAX));
    let (mut ilo, mut ihi) = (lo, hi);
    let mut interior_possible = true;
    for f in facets {
        let fixed: i128 = f.normal[..last]
            .iter()
            .zip(prefix)
            .map(|(&a, &x)| i128::from(a) * i128::from(x))
            .sum();
        let rhs = i128::from(f.offset) - fixed;
        let c = i128::from(f.normal[last]);
        match c.signum() {
            0 => {
                if rhs < 0 {
                    return None;
                }
                if rhs == 0 {
                    interior_possible = false;
                }
            }
            1 => {
                hi = hi.min(clamp(floor_div(rhs, c)));
                ihi = ihi.min(clamp(floor_div(rhs - 1, c)));
            }
            _ => {
                lo = lo.max(clamp(ceil_div(rhs, c)));
                ilo = ilo.max(clamp(ceil_div(rhs - 1, c)));
            }
        }
    }
    if lo > hi {
        return None;
    }
    let total = (hi - lo + 1) as u64;
    let interior = if interior_possible && ilo <= ihi {
        (ihi - ilo + 1) as u64
    } else {
        0
    };
    Some(RowSpan {
        lo,
        hi,
        count: CountResult { total, interior },
    })
}

fn floor_div(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -floor_div(-a, b)
}

fn clamp(x: i128) -> i64 {
    x.clamp(i128::from(i64::MIN), i128::from(i64::MAX)) as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Location;

    fn brute(p: &LatticePolytope, radius: i64) -> CountResult {
        let d = p.ambient_dim();
        let mut pts = vec![vec![]];
        for _ in 0..d {
            pts = pts
                .into_iter()
                .flat_map(|q: Vec<i64>| {
                    (-radius..=radius).map(move |x| {
                        let mut q = q.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        let mut c = CountResult::default();
        for z in pts {
            match p.contains(&z) {
                Location::Interior => {
                    c.total += 1;
                    c.interior += 1;
                }
                Location::Boundary => c.total += 1,
                Location::Outside => {}
            }
        }
        c
    }

    #[test]
    fn cubes() {
        assert_eq!(
            count_points(&LatticePolytope::cube(3, 1)),
            CountResult {
                total: 8,
                interior: 0
            }
        );
        assert_eq!(
            count_points(&LatticePolytope::cube(3, 2)),
            CountResult {
                total: 27,
                interior: 1
            }
        );
    }

    #[test]
    fn triangle() {
        let t = LatticePolytope::simplex(2, 2);
        assert_eq!(
            count_points(&t),
            CountResult {
                total: 6,
                interior: 0
            }
        );
        assert_eq!(count_points(&t), brute(&t, 3));
    }

    #[test]
    fn point_and_segment() {
        let pt = LatticePolytope::from_points(3, vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(
            count_points(&pt),
            CountResult {
                total: 1,
                interior: 1
            }
        );
        let seg = LatticePolytope::new(vec![vec![0, 0], vec![4, 2]]).unwrap();
        assert_eq!(
            count_points(&seg),
            CountResult {
                total: 3,
                interior: 1
            }
        );
        assert_eq!(
            enumerate_points(&seg),
            vec![vec![0, 0], vec![2, 1], vec![4, 2]]
        );
    }

    #[test]
    fn enumeration_order() {
        assert_eq!(
            enumerate_points(&LatticePolytope::origin(3)),
            vec![vec![0, 0, 0]]
        );
        assert_eq!(
            enumerate_points(&LatticePolytope::cube(2, 1)),
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
        assert_eq!(
            enumerate_points(&LatticePolytope::simplex(3, 1)),
            vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]
        );
    }

    #[test]
    fn lower_dimensional_against_brute_force() {
        let tri = LatticePolytope::new(vec![vec![1, 0, 2], vec![3, 1, 2], vec![2, 4, 2]]).unwrap();
        assert_eq!(count_points(&tri), brute(&tri, 5));
        let skew = LatticePolytope::new(vec![vec![0, 0, 0], vec![2, 1, 1], vec![1, 2, 3]]).unwrap();
        assert_eq!(count_points(&skew), brute(&skew, 4));
        assert_eq!(
            enumerate_points(&skew).len() as u64,
            count_points(&skew).total
        );
        let seg = LatticePolytope::new(vec![vec![-2, 1, 3], vec![2, -1, -3]]).unwrap();
        assert_eq!(count_points(&seg), brute(&seg, 4));
    }

    #[test]
    fn division_helpers() {
        assert_eq!(floor_div(7, 2), 3);
        assert_eq!(floor_div(-7, 2), -4);
        assert_eq!(floor_div(7, -2), -4);
        assert_eq!(ceil_div(7, 2), 4);
        assert_eq!(ceil_div(-7, 2), -3);
        assert_eq!(ceil_div(-6, -2), 3);
    }
}
