//! Small exact integer linear algebra: integer kernels, primitive vectors,
//! affine ranks. Intermediate products run in `i128`.

use num_integer::Integer;

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| i128::from(x) * i128::from(y))
        .sum()
}

pub(crate) fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn narrow(x: i128) -> i64 {
    i64::try_from(x).expect("integer overflow in lattice arithmetic")
}

/// Divides out the content; returns the primitive vector and the gcd.
pub(crate) fn primitive(v: &[i64]) -> (Vec<i64>, i64) {
    let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g == 0 {
        return (v.to_vec(), 0);
    }
    (v.iter().map(|x| x / g).collect(), g)
}

pub(crate) fn is_primitive(v: &[i64]) -> bool {
    primitive(v).1 == 1
}

/// A lattice basis of `{x ∈ ℤⁿ : A x = 0}` together with integer rows
/// `C` satisfying `C · basis = I`.
#[derive(Clone, Debug)]
pub(crate) struct IntegerKernel {
    /// Kernel basis vectors, each of length `n`.
    pub basis: Vec<Vec<i64>>,
    /// Coordinate rows, one per basis vector, each of length `n`.
    pub coords: Vec<Vec<i64>>,
}

/// Integer kernel of the matrix with the given rows (each of length `ncols`).
///
/// Unimodular column operations bring `A` to column echelon form while
/// `U` accumulates the operations and `V = U⁻¹` is maintained alongside.
/// The columns of `U` past the rank span the kernel lattice, and the
/// matching rows of `V` recover coordinates in that basis.
pub(crate) fn integer_kernel(rows: &[Vec<i64>], ncols: usize) -> IntegerKernel {
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols, "row length mismatch");
            r.iter().map(|&x| i128::from(x)).collect()
        })
        .collect();
    let identity = |n: usize| -> Vec<Vec<i128>> {
        (0..n)
            .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
            .collect()
    };
    // u[i][j]: entry (i, j); columns of u are what we want.
    let mut u = identity(ncols);
    let mut v = identity(ncols);
    let mut pivot = 0usize;

    for r in 0..a.len() {
        if pivot == ncols {
            break;
        }
        for j in pivot + 1..ncols {
            let (x0, y0) = (a[r][pivot], a[r][j]);
            if y0 == 0 {
                continue;
            }
            let eg = x0.extended_gcd(&y0);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let (p, q) = (x0 / g, y0 / g);
            // new col_pivot = x·col_pivot + y·col_j ; new col_j = -q·col_pivot + p·col_j
            for row in a.iter_mut() {
                let (cp, cj) = (row[pivot], row[j]);
                row[pivot] = x * cp + y * cj;
                row[j] = -q * cp + p * cj;
            }
            for row in u.iter_mut() {
                let (cp, cj) = (row[pivot], row[j]);
                row[pivot] = x * cp + y * cj;
                row[j] = -q * cp + p * cj;
            }
            // inverse acts on rows: row_pivot = p·row_pivot + q·row_j ; row_j = -y·row_pivot + x·row_j
            let (rp, rj) = (v[pivot].clone(), v[j].clone());
            for c in 0..ncols {
                v[pivot][c] = p * rp[c] + q * rj[c];
                v[j][c] = -y * rp[c] + x * rj[c];
            }
        }
        if a[r][pivot] != 0 {
            pivot += 1;
        }
    }

    let basis = (pivot..ncols)
        .map(|c| (0..ncols).map(|i| narrow(u[i][c])).collect())
        .collect();
    let coords = (pivot..ncols)
        .map(|c| v[c].iter().map(|&x| narrow(x)).collect())
        .collect();
    IntegerKernel { basis, coords }
}

/// Dimension of the affine hull of `points` (`-1` for the empty set).
pub(crate) fn affine_dimension(points: &[&[i64]]) -> isize {
    let Some(first) = points.first() else {
        return -1;
    };
    let diffs: Vec<Vec<i64>> = points[1..].iter().map(|p| sub(p, first)).collect();
    let n = first.len();
    (n - integer_kernel_dim(&diffs, n)) as isize
}

fn integer_kernel_dim(rows: &[Vec<i64>], ncols: usize) -> usize {
    ncols - rank(rows, ncols)
}

/// Rank by fraction-free elimination.
pub(crate) fn rank(rows: &[Vec<i64>], ncols: usize) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            if m[i][col] == 0 {
                continue;
            }
            let (a, b) = (m[rank][col], m[i][col]);
            let g = a.gcd(&b);
            let (fa, fb) = (a / g, b / g);
            let pivot_row = m[rank].clone();
            let row = &mut m[i];
            let mut content = 0i128;
            for c in col..ncols {
                row[c] = fa * row[c] - fb * pivot_row[c];
                content = content.gcd(&row[c]);
            }
            if content > 1 {
                for c in col..ncols {
                    row[c] /= content;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// The unique (up to sign) primitive normal of the hyperplane through
/// `points`, which must span a hyperplane of `ℝⁿ`.
pub(crate) fn hyperplane_normal(points: &[&[i64]], n: usize) -> Option<Vec<i64>> {
    let first = points.first()?;
    let diffs: Vec<Vec<i64>> = points[1..].iter().map(|p| sub(p, first)).collect();
    let ker = integer_kernel(&diffs, n);
    if ker.basis.len() != 1 {
        return None;
    }
    Some(primitive(&ker.basis[0]).0)
}
