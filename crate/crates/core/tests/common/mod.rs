//! Independent oracles for integration tests. Nothing here goes through
//! the facet descriptions or the row scanner.

#![allow(dead_code)]

use mixed_ehrhart::enumerate::CountResult;
use mixed_ehrhart::lattice::{LatticePolytope, Location};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Solves `A x = b` exactly for `A` of full column rank; `None` when the
/// system is inconsistent or `A` is rank-deficient.
fn solve(mut a: Vec<Vec<Q>>, mut b: Vec<Q>, unknowns: usize) -> Option<Vec<Q>> {
    let rows = a.len();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..unknowns {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        let inv = Q::one() / &a[r][c];
        for j in 0..unknowns {
            a[r][j] = &a[r][j] * &inv;
        }
        b[r] = &b[r] * &inv;
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..unknowns {
                    let t = &a[r][j] * &f;
                    a[i][j] -= t;
                }
                let t = &b[r] * &f;
                b[i] -= t;
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    if (r..rows).any(|i| !b[i].is_zero()) || pivot_cols.len() != unknowns {
        return None;
    }
    Some(b[..unknowns].to_vec())
}

fn rank(points: &[Vec<Q>]) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    let d = first.len();
    let mut m: Vec<Vec<Q>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    let mut r = 0;
    for c in 0..d {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            let f = &m[i][c] / &m[r][c];
            for j in 0..d {
                let t = &m[r][j] * &f;
                m[i][j] -= t;
            }
        }
        r += 1;
    }
    r
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Carathéodory: a point of `conv(V)` lies in a simplex on affinely
/// independent vertices.
pub struct SimplexCover {
    simplices: Vec<Vec<Vec<Q>>>,
    vertices: Vec<Vec<Q>>,
}

impl SimplexCover {
    pub fn new(points: &[Vec<i64>]) -> Self {
        let vertices: Vec<Vec<Q>> = points
            .iter()
            .map(|p| p.iter().map(|&x| q(x)).collect())
            .collect();
        let m = rank(&vertices);
        let simplices = combinations(vertices.len(), m + 1)
            .into_iter()
            .map(|idx| idx.iter().map(|&i| vertices[i].clone()).collect::<Vec<_>>())
            .filter(|s| rank(s) == m)
            .collect();
        Self {
            simplices,
            vertices,
        }
    }

    pub fn member(&self, z: &[Q]) -> bool {
        self.simplices.iter().any(|s| {
            let n = s.len();
            let d = z.len();
            let mut a: Vec<Vec<Q>> = (0..d)
                .map(|i| s.iter().map(|v| v[i].clone()).collect())
                .collect();
            a.push(vec![Q::one(); n]);
            let mut b = z.to_vec();
            b.push(Q::one());
            solve(a, b, n).is_some_and(|l| l.iter().all(|x| !x.is_negative()))
        })
    }

    /// Relative interior: pushing `z` slightly away from every vertex
    /// stays inside.
    pub fn locate(&self, z: &[i64]) -> Location {
        let zq: Vec<Q> = z.iter().map(|&x| q(x)).collect();
        if !self.member(&zq) {
            return Location::Outside;
        }
        let t = Q::new(BigInt::one(), BigInt::from(1_000_000));
        let interior = self.vertices.iter().all(|v| {
            let pushed: Vec<Q> = zq.iter().zip(v).map(|(a, b)| a + (a - b) * &t).collect();
            self.member(&pushed)
        });
        if interior {
            Location::Interior
        } else {
            Location::Boundary
        }
    }
}

pub fn bounding_box(p: &LatticePolytope, margin: i64) -> Vec<(i64, i64)> {
    (0..p.ambient_dim())
        .map(|i| {
            let lo = p.vertices().iter().map(|v| v[i]).min().unwrap();
            let hi = p.vertices().iter().map(|v| v[i]).max().unwrap();
            (lo - margin, hi + margin)
        })
        .collect()
}

pub fn box_points(bounds: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let mut pts = vec![vec![]];
    for &(lo, hi) in bounds {
        pts = pts
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (lo..=hi).map(move |x| {
                    let mut p = p.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    pts
}

/// Counts with the simplex-cover oracle.
pub fn oracle_count(p: &LatticePolytope) -> CountResult {
    let cover = SimplexCover::new(p.vertices());
    let mut c = CountResult::default();
    for z in box_points(&bounding_box(p, 0)) {
        match cover.locate(&z) {
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

/// Counts by testing every box point against the facet description.
pub fn box_count(p: &LatticePolytope) -> u64 {
    box_points(&bounding_box(p, 0))
        .iter()
        .filter(|z| p.contains(z) != Location::Outside)
        .count() as u64
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_points(rng: &mut ChaCha8Rng, d: usize, n: usize, side: i64) -> Vec<Vec<i64>> {
    (0..n)
        .map(|_| (0..d).map(|_| rng.gen_range(0..=side)).collect())
        .collect()
}

/// `C(n, d)` for an integer `n`.
pub fn binom_at(n: i64, d: usize) -> Q {
    let mut r = Q::one();
    for i in 0..d as i64 {
        r = r * q(n - i) / q(i + 1);
    }
    r
}

/// Coefficients in the basis `C(n+d-j, d)` from values at `n = 0..=d`,
/// by forward substitution on the values directly.
pub fn basis_change_from_values(values: &[Q], d: usize) -> Vec<Q> {
    let mut h: Vec<Q> = Vec::new();
    for m in 0..=d {
        let mut v = values[m].clone();
        for (j, hj) in h.iter().enumerate() {
            v -= hj * binom_at(m as i64 + d as i64 - j as i64, d);
        }
        h.push(v);
    }
    h
}
