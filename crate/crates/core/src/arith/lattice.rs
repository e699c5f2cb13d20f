//! Integer lattice helpers: Hermite normal form, membership, saturation.

use num_integer::Integer;

use super::field::{Field, Scalar};
use super::matrix::ExactMatrix;

/// Row-style Hermite normal form basis of the lattice spanned by `gens`.
/// Equal lattices give identical bases.
pub fn hermite_basis(gens: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let Some(d) = gens.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut rows: Vec<Vec<i128>> = gens
        .iter()
        .map(|g| g.iter().map(|&x| x as i128).collect())
        .collect();
    let mut r = 0;
    for c in 0..d {
        if r == rows.len() {
            break;
        }
        loop {
            let pivot = (r..rows.len())
                .filter(|&i| rows[i][c] != 0)
                .min_by_key(|&i| rows[i][c].abs());
            let Some(p) = pivot else { break };
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c] != 0 {
                    let q = Integer::div_floor(&rows[i][c], &rows[r][c]);
                    let pivot_row = rows[r].clone();
                    for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                        *x -= q * y;
                    }
                    if rows[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if rows[r][c] == 0 {
            continue;
        }
        if rows[r][c] < 0 {
            for x in rows[r].iter_mut() {
                *x = -*x;
            }
        }
        let pivot_row = rows[r].clone();
        for row in rows.iter_mut().take(r) {
            let q = Integer::div_floor(&row[c], &pivot_row[c]);
            if q != 0 {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= q * y;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows.into_iter()
        .map(|row| row.into_iter().map(|x| x as i64).collect())
        .collect()
}

pub fn same_lattice(a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
    hermite_basis(a) == hermite_basis(b)
}

pub fn lattice_contains(basis: &[Vec<i64>], v: &[i64]) -> bool {
    let mut gens = basis.to_vec();
    gens.push(v.to_vec());
    same_lattice(basis, &gens)
}

pub fn det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0] as i128,
        _ => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] as i128 * det(&minor)
            })
            .sum(),
    }
}

/// Index of the lattice spanned by the (independent) rows of `basis` inside
/// its saturation `ℚ·basis ∩ ℤ^d`: the gcd of the maximal minors.
pub fn saturation_index(basis: &[Vec<i64>]) -> i128 {
    let k = basis.len();
    if k == 0 {
        return 1;
    }
    let d = basis[0].len();
    let mut g: i128 = 0;
    for cols in itertools::Itertools::combinations(0..d, k) {
        let minor: Vec<Vec<i64>> = basis
            .iter()
            .map(|row| cols.iter().map(|&c| row[c]).collect())
            .collect();
        g = g.gcd(&det(&minor));
    }
    g.abs()
}

pub fn rank(vectors: &[Vec<i64>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    ExactMatrix::from_i64_rows(Field::Rational, vectors)
        .expect("rectangular")
        .rank()
}

/// Rational solution `y` of `Σ y_i basis_i = v`, if `v` lies in the span.
pub fn rational_coordinates(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<Scalar>> {
    let q = Field::Rational;
    let d = v.len();
    let k = basis.len();
    // Columns are the basis vectors, augmented with v.
    let mut m = ExactMatrix::zeros(q, d, k + 1);
    for (j, b) in basis.iter().enumerate() {
        for (i, &x) in b.iter().enumerate() {
            m.set(i, j, q.from_i64(x));
        }
    }
    for (i, &x) in v.iter().enumerate() {
        m.set(i, k, q.from_i64(x));
    }
    let (r, pivots) = m.rref();
    if pivots.contains(&k) {
        return None;
    }
    let mut y = vec![q.zero(); k];
    for (row, &p) in pivots.iter().enumerate() {
        y[p] = r.get(row, k).clone();
    }
    Some(y)
}

/// Integer solution of `Σ y_i basis_i = v` for linearly independent rows.
pub fn integer_coordinates(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<i64>> {
    rational_coordinates(basis, v)?
        .into_iter()
        .map(|s| s.to_bigint().and_then(|b| i64::try_from(b).ok()))
        .collect()
}

pub fn gcd_vec(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// `v / gcd(v)`; zero stays zero.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = gcd_vec(v);
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

/// Basis of the integer left kernel `{c ∈ ℤ^r : c·M = 0}` of an `r × k`
/// integer matrix, read off the Hermite form of `[M | I]`.
pub fn integer_left_kernel(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = m.len();
    let k = m.first().map_or(0, Vec::len);
    let augmented: Vec<Vec<i64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut a = row.clone();
            a.extend((0..r).map(|j| i64::from(i == j)));
            a
        })
        .collect();
    hermite_basis(&augmented)
        .into_iter()
        .filter(|row| row[..k].iter().all(|&x| x == 0))
        .map(|row| row[k..].to_vec())
        .collect()
}

/// Basis of `Λ ∩ V` where `Λ` is spanned by `basis` and `V` is the rational
/// span of `directions`.
pub fn intersect_with_span(basis: &[Vec<i64>], directions: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let Some(d) = basis.first().map(Vec::len) else {
        return Vec::new();
    };
    let q = Field::Rational;
    // normals of V: integer vectors orthogonal to every direction
    let normals: Vec<Vec<i64>> = if directions.is_empty() {
        (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect()
    } else {
        ExactMatrix::from_i64_rows(q, directions)
            .expect("rectangular")
            .kernel_basis()
            .iter()
            .map(|v| crate::geometry::integer_direction(v))
            .collect()
    };
    if normals.is_empty() {
        return hermite_basis(basis);
    }
    let m: Vec<Vec<i64>> = basis
        .iter()
        .map(|b| normals.iter().map(|n| b.iter().zip(n).map(|(x, y)| x * y).sum()).collect())
        .collect();
    let combos = integer_left_kernel(&m);
    let vectors: Vec<Vec<i64>> = combos
        .iter()
        .map(|c| {
            (0..d)
                .map(|j| c.iter().zip(basis).map(|(ci, b)| ci * b[j]).sum())
                .collect()
        })
        .collect();
    hermite_basis(&vectors)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_of_unimodular_is_identity() {
        let b = hermite_basis(&[vec![1, 0], vec![0, 1], vec![1, 1], vec![-1, 0]]);
        assert_eq!(b, vec![vec![1, 0], vec![0, 1]]);
        let b = hermite_basis(&[vec![2, 1], vec![1, 1]]);
        assert_eq!(b, vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn sublattices() {
        let b = hermite_basis(&[vec![2, 0], vec![0, 2], vec![2, 2]]);
        assert_eq!(b, vec![vec![2, 0], vec![0, 2]]);
        assert!(lattice_contains(&b, &[4, -2]));
        assert!(!lattice_contains(&b, &[1, 0]));
        assert_eq!(saturation_index(&b), 4);
        assert_eq!(saturation_index(&[vec![1, 1]]), 1);
        assert_eq!(saturation_index(&[vec![2, 2]]), 2);
    }

    #[test]
    fn coordinates() {
        assert_eq!(integer_coordinates(&[vec![1, 1]], &[3, 3]), Some(vec![3]));
        assert_eq!(integer_coordinates(&[vec![2, 2]], &[3, 3]), None);
        assert_eq!(integer_coordinates(&[vec![1, 1]], &[1, 0]), None);
        assert_eq!(det(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]]), 1);
    }

    #[test]
    fn kernels_and_intersections() {
        let k = integer_left_kernel(&[vec![2], vec![3]]);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0] * 2 + k[0][1] * 3, 0);
        assert_eq!(gcd_vec(&k[0]), 1);
        let b = intersect_with_span(&[vec![2, 0], vec![1, 1]], &[vec![1, 0]]);
        assert_eq!(b, vec![vec![2, 0]]);
        let b = intersect_with_span(&[vec![1, 0], vec![0, 1]], &[vec![2, 2]]);
        assert_eq!(b, vec![vec![1, 1]]);
    }
}
