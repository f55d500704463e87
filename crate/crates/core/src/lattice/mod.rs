//! Lattice polytopes: exact H-descriptions, Minkowski sums, dilation,
//! faces in a direction and lattice coordinates on affine hulls.

mod hull;
pub(crate) mod intlin;

use std::fmt;

pub use hull::Facet;
use intlin::{dot, integer_kernel, is_primitive, narrow, primitive, sub};

use crate::error::{Error, Result};

pub type Point = Vec<i64>;

/// `⟨normal, x⟩ = offset`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Equation {
    pub normal: Vec<i64>,
    pub offset: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfspaceDescription {
    /// Affine-hull equations.
    pub equations: Vec<Equation>,
    /// Facet inequalities valid on the affine hull, sorted by normal.
    pub facets: Vec<Facet>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Location {
    Interior,
    Boundary,
    Outside,
}

/// Lattice coordinates on the affine hull: `x = origin + Σ t_j basis_j`
/// with `t ∈ ℤ^r`, and `t_j = ⟨coords_j, x - origin⟩`.
#[derive(Clone, Debug)]
struct AffineFrame {
    origin: Point,
    basis: Vec<Point>,
    coords: Vec<Point>,
    equations: Vec<Equation>,
}

impl AffineFrame {
    fn to_local(&self, x: &[i64]) -> Point {
        let rel = sub(x, &self.origin);
        self.coords.iter().map(|c| narrow(dot(c, &rel))).collect()
    }

    fn to_ambient(&self, t: &[i64]) -> Point {
        let mut x = self.origin.clone();
        for (tj, b) in t.iter().zip(&self.basis) {
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += tj * bi;
            }
        }
        x
    }
}

/// Convex hull of a finite set of integer points.
///
/// Generators need not be vertices. Everything derived (affine hull,
/// lattice frame, facets, vertices) is computed once at construction.
#[derive(Clone, Debug)]
pub struct LatticePolytope {
    ambient_dim: usize,
    generators: Vec<Point>,
    vertices: Vec<Point>,
    frame: AffineFrame,
    /// Facets in frame coordinates (a full-dimensional polytope in `ℤ^r`).
    local_facets: Vec<Facet>,
    local_box: Vec<(i64, i64)>,
    facets: Vec<Facet>,
}

impl LatticePolytope {
    /// Builds a polytope from generators; the ambient dimension is taken
    /// from the first point.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let ambient = points.first().ok_or(Error::EmptyPolytope)?.len();
        Self::from_points(ambient, points)
    }

    pub fn from_points(ambient_dim: usize, mut points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPolytope);
        }
        if let Some(bad) = points.iter().find(|p| p.len() != ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                found: bad.len(),
            });
        }
        points.sort();
        points.dedup();

        let base = points[0].clone();
        let diffs: Vec<Point> = points[1..].iter().map(|p| sub(p, &base)).collect();
        let eq_kernel = integer_kernel(&diffs, ambient_dim);
        let equations: Vec<Equation> = eq_kernel
            .basis
            .iter()
            .map(|n| canonical_sign(n.clone()))
            .map(|normal| {
                let offset = narrow(dot(&normal, &base));
                Equation { normal, offset }
            })
            .collect();
        let dim = ambient_dim - equations.len();

        let frame = if dim == ambient_dim {
            let identity: Vec<Point> = (0..ambient_dim)
                .map(|i| (0..ambient_dim).map(|j| i64::from(i == j)).collect())
                .collect();
            AffineFrame {
                origin: vec![0; ambient_dim],
                basis: identity.clone(),
                coords: identity,
                equations,
            }
        } else {
            let eq_rows: Vec<Point> = equations.iter().map(|e| e.normal.clone()).collect();
            let lattice = integer_kernel(&eq_rows, ambient_dim);
            AffineFrame {
                origin: base,
                basis: lattice.basis,
                coords: lattice.coords,
                equations,
            }
        };

        let local: Vec<Point> = points.iter().map(|p| frame.to_local(p)).collect();
        let local_box = (0..dim)
            .map(|c| {
                let lo = local.iter().map(|t| t[c]).min().unwrap();
                let hi = local.iter().map(|t| t[c]).max().unwrap();
                (lo, hi)
            })
            .collect();

        let (local_facets, vertices) = if dim == 0 {
            (Vec::new(), vec![points[0].clone()])
        } else {
            let h = hull::full_dimensional_hull(&local, dim);
            let vertices = h.vertices.iter().map(|&i| points[i].clone()).collect();
            (h.facets, vertices)
        };

        let mut facets: Vec<Facet> = local_facets
            .iter()
            .map(|f| {
                let mut normal = vec![0i64; ambient_dim];
                for (cj, row) in f.normal.iter().zip(&frame.coords) {
                    for (n, r) in normal.iter_mut().zip(row) {
                        *n += cj * r;
                    }
                }
                let offset = i128::from(f.offset) + dot(&normal, &frame.origin);
                let (normal, g) = primitive(&normal);
                debug_assert_eq!(offset % i128::from(g), 0);
                Facet {
                    normal,
                    offset: narrow(offset / i128::from(g)),
                }
            })
            .collect();
        facets.sort();

        Ok(Self {
            ambient_dim,
            generators: points,
            vertices,
            frame,
            local_facets,
            local_box,
            facets,
        })
    }

    /// The single point `{0}` in `ℝ^d`.
    pub fn origin(ambient_dim: usize) -> Self {
        Self::from_points(ambient_dim, vec![vec![0; ambient_dim]]).expect("origin is valid")
    }

    /// `scale · [0,1]^d`.
    pub fn cube(d: usize, scale: i64) -> Self {
        let mut pts = vec![vec![]];
        for _ in 0..d {
            pts = pts
                .into_iter()
                .flat_map(|p: Point| {
                    [0, scale].into_iter().map(move |x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        Self::from_points(d, pts).expect("cube is valid")
    }

    /// `scale · Δ_d = conv{0, scale·e_1, …, scale·e_d}`.
    pub fn simplex(d: usize, scale: i64) -> Self {
        let mut pts = vec![vec![0; d]];
        for i in 0..d {
            let mut p = vec![0; d];
            p[i] = scale;
            pts.push(p);
        }
        Self::from_points(d, pts).expect("simplex is valid")
    }

    /// `[0, scale·e_axis]` in `ℝ^d`.
    pub fn segment(d: usize, axis: usize, scale: i64) -> Self {
        let mut end = vec![0; d];
        end[axis] = scale;
        Self::from_points(d, vec![vec![0; d], end]).expect("segment is valid")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the affine hull.
    pub fn dim(&self) -> usize {
        self.frame.basis.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn generators(&self) -> &[Point] {
        &self.generators
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn halfspace_description(&self) -> HalfspaceDescription {
        HalfspaceDescription {
            equations: self.frame.equations.clone(),
            facets: self.facets.clone(),
        }
    }

    /// Primitive outer facet normals, sorted.
    pub fn facet_normals(&self) -> Result<Vec<Vec<i64>>> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional);
        }
        Ok(self.facets.iter().map(|f| f.normal.clone()).collect())
    }

    /// Location relative to the affine hull: points off the hull are
    /// `Outside`, `Interior` means the relative interior.
    pub fn contains(&self, z: &[i64]) -> Location {
        assert_eq!(z.len(), self.ambient_dim, "point dimension mismatch");
        if self
            .frame
            .equations
            .iter()
            .any(|e| dot(&e.normal, z) != i128::from(e.offset))
        {
            return Location::Outside;
        }
        let t = self.frame.to_local(z);
        classify(&self.local_facets, &t)
    }

    pub fn dilate(&self, r: u64) -> Self {
        if r == 0 {
            return Self::origin(self.ambient_dim);
        }
        let r = i64::try_from(r).expect("dilation factor fits in i64");
        let scale_pts = |v: &[Point]| -> Vec<Point> {
            v.iter()
                .map(|p| p.iter().map(|x| x * r).collect())
                .collect()
        };
        let scale_facets = |v: &[Facet]| -> Vec<Facet> {
            v.iter()
                .map(|f| Facet {
                    normal: f.normal.clone(),
                    offset: f.offset * r,
                })
                .collect()
        };
        let frame = AffineFrame {
            origin: self.frame.origin.iter().map(|x| x * r).collect(),
            basis: self.frame.basis.clone(),
            coords: self.frame.coords.clone(),
            equations: self
                .frame
                .equations
                .iter()
                .map(|e| Equation {
                    normal: e.normal.clone(),
                    offset: e.offset * r,
                })
                .collect(),
        };
        // origin scales with the polytope, so local coordinates scale by r
        let local_facets = scale_facets(&self.local_facets);
        Self {
            ambient_dim: self.ambient_dim,
            generators: scale_pts(&self.generators),
            vertices: scale_pts(&self.vertices),
            frame,
            local_facets,
            local_box: self
                .local_box
                .iter()
                .map(|&(lo, hi)| (lo * r, hi * r))
                .collect(),
            facets: scale_facets(&self.facets),
        }
    }

    /// Minkowski sum; generated by pairwise sums of vertices.
    pub fn minkowski_sum(&self, other: &Self) -> Result<Self> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for p in &self.vertices {
            for q in &other.vertices {
                pts.push(p.iter().zip(q).map(|(a, b)| a + b).collect());
            }
        }
        Self::from_points(self.ambient_dim, pts)
    }

    pub fn translate(&self, v: &[i64]) -> Result<Self> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        Self::from_points(
            self.ambient_dim,
            self.vertices
                .iter()
                .map(|p| p.iter().zip(v).map(|(a, b)| a + b).collect())
                .collect(),
        )
    }

    /// Applies `x ↦ (x_{perm[0]}, …, x_{perm[d-1]})`.
    pub fn permute_coordinates(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: perm.len(),
            });
        }
        Self::from_points(
            self.ambient_dim,
            self.vertices
                .iter()
                .map(|p| perm.iter().map(|&i| p[i]).collect())
                .collect(),
        )
    }

    /// The face maximizing `⟨a, ·⟩`, translated into `a^⊥` and written in a
    /// lattice basis of `a^⊥ ∩ ℤ^d`.
    pub fn face_in_direction(&self, a: &[i64]) -> Result<ProjectedFace> {
        if a.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: a.len(),
            });
        }
        if !is_primitive(a) {
            return Err(Error::NotPrimitive);
        }
        let best = self.vertices.iter().map(|v| dot(a, v)).max().unwrap();
        let face: Vec<&Point> = self.vertices.iter().filter(|v| dot(a, v) == best).collect();
        let kernel = integer_kernel(&[a.to_vec()], self.ambient_dim);
        let anchor = face[0];
        let projected: Vec<Point> = face
            .iter()
            .map(|v| {
                let rel = sub(v, anchor);
                kernel.coords.iter().map(|c| narrow(dot(c, &rel))).collect()
            })
            .collect();
        Ok(ProjectedFace {
            face: Self::from_points(self.ambient_dim - 1, projected)?,
            normal: a.to_vec(),
        })
    }

    pub(crate) fn local_facets(&self) -> &[Facet] {
        &self.local_facets
    }

    pub(crate) fn local_box(&self) -> &[(i64, i64)] {
        &self.local_box
    }

    pub(crate) fn to_ambient(&self, t: &[i64]) -> Point {
        self.frame.to_ambient(t)
    }
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.vertices == other.vertices
    }
}

impl Eq for LatticePolytope {}

impl fmt::Display for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verts: Vec<String> = self
            .vertices
            .iter()
            .map(|v| {
                format!(
                    "({})",
                    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
                )
            })
            .collect();
        write!(f, "conv{{{}}}", verts.join(", "))
    }
}

/// `P^a` expressed in `a^⊥ ∩ ℤ^d ≅ ℤ^{d-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectedFace {
    pub face: LatticePolytope,
    pub normal: Vec<i64>,
}

pub(crate) fn classify(facets: &[Facet], t: &[i64]) -> Location {
    let mut boundary = false;
    for f in facets {
        match f.slack(t) {
            s if s < 0 => return Location::Outside,
            0 => boundary = true,
            _ => {}
        }
    }
    if boundary {
        Location::Boundary
    } else {
        Location::Interior
    }
}

/// Flips `v` so its first nonzero entry is positive.
fn canonical_sign(v: Vec<i64>) -> Vec<i64> {
    match v.iter().find(|&&x| x != 0) {
        Some(&x) if x < 0 => v.into_iter().map(|y| -y).collect(),
        _ => v,
    }
}
