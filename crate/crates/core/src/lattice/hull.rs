//! Facets of a full-dimensional point configuration by exact
//! beneath-beyond insertion.
//!
//! Each facet keeps the indices of the input points lying on it. When a
//! point lands strictly beyond some facets, those facets are removed and
//! every ridge shared between a removed facet and a kept facet is coned
//! to the new point; coinciding hyperplanes are merged.

use std::collections::BTreeMap;

use super::intlin::{affine_dimension, dot, hyperplane_normal, narrow};

/// `⟨normal, x⟩ ≤ offset`, normal primitive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    pub(crate) fn slack(&self, x: &[i64]) -> i128 {
        i128::from(self.offset) - dot(&self.normal, x)
    }
}

pub(crate) struct Hull {
    pub facets: Vec<Facet>,
    /// Indices of the input points that are vertices.
    pub vertices: Vec<usize>,
}

/// `points` must affinely span `ℝ^dim` (`dim ≥ 1`).
pub(crate) fn full_dimensional_hull(points: &[Vec<i64>], dim: usize) -> Hull {
    assert!(dim >= 1);
    let simplex = initial_simplex(points, dim);
    // (dim+1)·centroid of the simplex; strictly inside every later hull.
    let interior: Vec<i64> = (0..dim)
        .map(|c| simplex.iter().map(|&i| points[i][c]).sum())
        .collect();
    let scale = (dim + 1) as i128;

    let oriented = |on: &[usize]| -> Facet {
        let refs: Vec<&[i64]> = on.iter().map(|&i| points[i].as_slice()).collect();
        let normal = hyperplane_normal(&refs, dim).expect("points span a hyperplane");
        let offset = narrow(dot(&normal, refs[0]));
        let inside = scale * i128::from(offset) - dot(&normal, &interior);
        debug_assert!(inside != 0);
        if inside > 0 {
            Facet { normal, offset }
        } else {
            Facet {
                normal: normal.iter().map(|x| -x).collect(),
                offset: -offset,
            }
        }
    };

    let mut facets: BTreeMap<Facet, Vec<usize>> = BTreeMap::new();
    for skip in 0..simplex.len() {
        let on: Vec<usize> = simplex
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &p)| p)
            .collect();
        let f = oriented(&on);
        facets.insert(f, sorted(on));
    }

    for (idx, p) in points.iter().enumerate() {
        if simplex.contains(&idx) {
            continue;
        }
        let (visible, kept): (Vec<_>, Vec<_>) = std::mem::take(&mut facets)
            .into_iter()
            .partition(|(f, _)| f.slack(p) < 0);
        if visible.is_empty() {
            facets = kept.into_iter().collect();
            for (f, on) in facets.iter_mut() {
                if f.slack(p) == 0 {
                    on.push(idx);
                    on.sort_unstable();
                }
            }
            continue;
        }
        let mut next: BTreeMap<Facet, Vec<usize>> = kept.iter().cloned().collect();
        for (_, on_visible) in &visible {
            for (_, on_kept) in &kept {
                let ridge = intersect(on_visible, on_kept);
                let refs: Vec<&[i64]> = ridge.iter().map(|&i| points[i].as_slice()).collect();
                if affine_dimension(&refs) != dim as isize - 2 {
                    continue;
                }
                let mut on = ridge;
                on.push(idx);
                let f = oriented(&on);
                let slot = next.entry(f).or_default();
                slot.extend(on);
                *slot = sorted(std::mem::take(slot));
            }
        }
        for (f, on) in next.iter_mut() {
            if f.slack(p) == 0 && !on.contains(&idx) {
                on.push(idx);
                on.sort_unstable();
            }
        }
        facets = next;
    }

    let vertices = (0..points.len())
        .filter(|&i| {
            let normals: Vec<Vec<i64>> = facets
                .iter()
                .filter(|(_, on)| on.binary_search(&i).is_ok())
                .map(|(f, _)| f.normal.clone())
                .collect();
            super::intlin::rank(&normals, dim) == dim
        })
        .collect();
    Hull {
        facets: facets.into_keys().collect(),
        vertices,
    }
}

fn initial_simplex(points: &[Vec<i64>], dim: usize) -> Vec<usize> {
    let mut chosen = vec![0usize];
    for i in 1..points.len() {
        if chosen.len() == dim + 1 {
            break;
        }
        let mut trial: Vec<&[i64]> = chosen.iter().map(|&c| points[c].as_slice()).collect();
        trial.push(&points[i]);
        if affine_dimension(&trial) == (trial.len() - 1) as isize {
            chosen.push(i);
        }
    }
    assert_eq!(chosen.len(), dim + 1, "points do not span the space");
    chosen
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter()
        .filter(|x| b.binary_search(x).is_ok())
        .copied()
        .collect()
}
