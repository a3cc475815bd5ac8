//! Dense matrices over any ring object, with the exact linear-algebra
//! kernels the rest of the library runs on: Berkowitz characteristic
//! polynomials (division-free, so they are safe over truncated series),
//! Gauss-Jordan inversion over fields, Kronecker products and compound
//! matrices.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::{Field, Ring};

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Matrix<T> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.cols + j]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix<T> {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.at(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Horizontal concatenation [A | B].
    pub fn hcat(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.rows, other.rows);
        let mut data = Vec::with_capacity((self.cols + other.cols) * self.rows);
        for i in 0..self.rows {
            data.extend(self.data[i * self.cols..(i + 1) * self.cols].iter().cloned());
            data.extend(
                other.data[i * other.cols..(i + 1) * other.cols]
                    .iter()
                    .cloned(),
            );
        }
        Matrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix<T> {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.at(i, j).clone());
            }
        }
        Matrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }
}

pub fn identity<R: Ring>(ring: &R, n: usize) -> Matrix<R::Elem> {
    let mut data = vec![ring.zero(); n * n];
    for i in 0..n {
        data[i * n + i] = ring.one();
    }
    Matrix {
        rows: n,
        cols: n,
        data,
    }
}

pub fn zero_matrix<R: Ring>(ring: &R, rows: usize, cols: usize) -> Matrix<R::Elem> {
    Matrix {
        rows,
        cols,
        data: vec![ring.zero(); rows * cols],
    }
}

pub fn mat_add<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix {
        rows: a.rows,
        cols: a.cols,
        data: a
            .data
            .iter()
            .zip(&b.data)
            .map(|(x, y)| ring.add(x, y))
            .collect(),
    }
}

pub fn mat_sub<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix {
        rows: a.rows,
        cols: a.cols,
        data: a
            .data
            .iter()
            .zip(&b.data)
            .map(|(x, y)| ring.sub(x, y))
            .collect(),
    }
}

pub fn mat_mul<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!(a.cols, b.rows, "dimension mismatch");
    let mut out = zero_matrix(ring, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.at(i, k);
            if ring.is_zero(aik) {
                continue;
            }
            for j in 0..b.cols {
                let t = ring.mul(aik, b.at(k, j));
                *out.at_mut(i, j) = ring.add(out.at(i, j), &t);
            }
        }
    }
    out
}

pub fn mat_vec<R: Ring>(ring: &R, a: &Matrix<R::Elem>, v: &[R::Elem]) -> Vec<R::Elem> {
    assert_eq!(a.cols, v.len());
    (0..a.rows)
        .map(|i| {
            ring.sum(
                (0..a.cols)
                    .map(|j| ring.mul(a.at(i, j), &v[j]))
                    .collect::<Vec<_>>(),
            )
        })
        .collect()
}

pub fn scalar_mul<R: Ring>(ring: &R, c: &R::Elem, a: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    a.map(|x| ring.mul(c, x))
}

pub fn mat_eq<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> bool {
    (a.rows, a.cols) == (b.rows, b.cols)
        && a.data.iter().zip(&b.data).all(|(x, y)| ring.elem_eq(x, y))
}

/// Characteristic polynomial det(X·I − A) by the Berkowitz algorithm:
/// division-free, pivot-free, O(n⁴) ring operations. Returns the monic
/// coefficient vector low-to-high (length n+1).
pub fn charpoly<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Poly<R> {
    assert_eq!(a.rows, a.cols, "charpoly of non-square matrix");
    let n = a.rows;
    if n == 0 {
        return vec![ring.one()];
    }
    // Berkowitz: iterate over leading principal submatrices. `c` holds the
    // char poly coefficients of the current submatrix, high-to-low.
    let mut c: Vec<R::Elem> = vec![ring.one(), ring.neg(a.at(0, 0))];
    for m in 1..n {
        // principal submatrix A_m is (m+1)×(m+1); build the Toeplitz column:
        // t_0 = 1, t_1 = -a_mm, t_{k+2} = -(R·A^k·S) for k = 0..m-1
        // where R = row a[m][0..m], S = col a[0..m][m].
        let r_vec: Vec<R::Elem> = (0..m).map(|j| a.at(m, j).clone()).collect();
        let s_vec: Vec<R::Elem> = (0..m).map(|i| a.at(i, m).clone()).collect();
        let sub = a.submatrix(&(0..m).collect::<Vec<_>>(), &(0..m).collect::<Vec<_>>());
        let mut t = Vec::with_capacity(m + 2);
        t.push(ring.one());
        t.push(ring.neg(a.at(m, m)));
        let mut aks = s_vec.clone();
        for _k in 0..m {
            let dot = ring.sum(
                r_vec
                    .iter()
                    .zip(&aks)
                    .map(|(x, y)| ring.mul(x, y))
                    .collect::<Vec<_>>(),
            );
            t.push(ring.neg(&dot));
            aks = mat_vec(ring, &sub, &aks);
        }
        // c_new = t ⋆ c (polynomial-style convolution, result length m+2)
        let mut c_new = vec![ring.zero(); m + 2];
        for (i, ci) in c.iter().enumerate() {
            for (j, tj) in t.iter().enumerate() {
                if i + j < m + 2 {
                    c_new[i + j] = ring.add(&c_new[i + j], &ring.mul(tj, ci));
                }
            }
        }
        c = c_new;
    }
    c.reverse(); // low-to-high
    c
}

/// Determinant via the characteristic polynomial: det A = (−1)^n·p(0).
pub fn det<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> R::Elem {
    let n = a.rows;
    let p = charpoly(ring, a);
    let c0 = p[0].clone();
    if n % 2 == 0 {
        c0
    } else {
        ring.neg(&c0)
    }
}

/// Gauss-Jordan inverse over a field. Errors (NonUnit) if singular.
pub fn inverse<F: Field>(field: &F, a: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut work = a.clone();
    let mut inv = identity(field, n);
    for col in 0..n {
        // find a pivot with invertible entry
        let pivot = (col..n).find(|&i| !field.is_zero(work.at(i, col)));
        let pivot = pivot.ok_or_else(|| Error::non_unit("singular matrix in inversion"))?;
        if pivot != col {
            for j in 0..n {
                work.data.swap(pivot * n + j, col * n + j);
                inv.data.swap(pivot * n + j, col * n + j);
            }
        }
        let pinv = field.inv(work.at(col, col))?;
        for j in 0..n {
            *work.at_mut(col, j) = field.mul(&pinv, work.at(col, j));
            *inv.at_mut(col, j) = field.mul(&pinv, inv.at(col, j));
        }
        for i in 0..n {
            if i == col || field.is_zero(work.at(i, col)) {
                continue;
            }
            let f = work.at(i, col).clone();
            for j in 0..n {
                let t = field.mul(&f, work.at(col, j));
                *work.at_mut(i, j) = field.sub(work.at(i, j), &t);
                let t = field.mul(&f, inv.at(col, j));
                *inv.at_mut(i, j) = field.sub(inv.at(i, j), &t);
            }
        }
    }
    Ok(inv)
}

/// Kronecker product, row-major convention: entry ((i·rB+k),(j·cB+l)) =
/// A[i][j]·B[k][l], i.e. basis e_i⊗f_k ordered lexicographically.
pub fn kronecker<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let mut out = zero_matrix(ring, a.rows * b.rows, a.cols * b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            for k in 0..b.rows {
                for l in 0..b.cols {
                    *out.at_mut(i * b.rows + k, j * b.cols + l) = ring.mul(a.at(i, j), b.at(k, l));
                }
            }
        }
    }
    out
}

/// All n-element index subsets of 0..r, in lexicographic order.
pub fn index_subsets(r: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur = vec![];
    fn rec(start: usize, r: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..r {
            cur.push(i);
            rec(i + 1, r, n, cur, out);
            cur.pop();
        }
    }
    rec(0, r, n, &mut cur, &mut out);
    out
}

/// n-th compound matrix: minors det A[I, J] over lexicographically ordered
/// n-subsets I (rows), J (cols).
pub fn compound<R: Ring>(ring: &R, a: &Matrix<R::Elem>, n: usize) -> Matrix<R::Elem> {
    assert_eq!(a.rows, a.cols);
    let subsets = index_subsets(a.rows, n);
    let dim = subsets.len();
    let mut out = zero_matrix(ring, dim, dim);
    for (ii, is) in subsets.iter().enumerate() {
        for (jj, js) in subsets.iter().enumerate() {
            *out.at_mut(ii, jj) = det(ring, &a.submatrix(is, js));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::Fq;
    use crate::ring::Ring;

    fn m(f: &Fq, rows: &[&[i64]]) -> Matrix<crate::fq::FqElem> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&c| f.from_int(c)).collect())
                .collect(),
        )
    }

    #[test]
    fn charpoly_and_det_small() {
        let f = Fq::new(5, 1).unwrap();
        // companion of X² - X - 1 (columns are images of basis vectors)
        let a = m(&f, &[&[0, 1], &[1, 1]]);
        let p = charpoly(&f, &a);
        assert_eq!(p, vec![f.from_int(-1), f.from_int(-1), f.from_int(1)]);
        assert_eq!(det(&f, &a), f.from_int(-1));
        // 3×3 with known determinant: diag(1,2,3) → 6 ≡ 1 mod 5
        let d = m(&f, &[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        assert_eq!(det(&f, &d), f.from_int(6));
        let pd = charpoly(&f, &d);
        // (X-1)(X-2)(X-3) = X³ - 6X² + 11X - 6
        assert_eq!(
            pd,
            vec![f.from_int(-6), f.from_int(11), f.from_int(-6), f.from_int(1)]
        );
    }

    #[test]
    fn charpoly_matches_brute_force_det() {
        // oracle: cofactor-expansion determinant over F_7-like small field
        let f = Fq::new(3, 2).unwrap();
        fn brute_det(f: &Fq, a: &Matrix<crate::fq::FqElem>) -> crate::fq::FqElem {
            let n = a.rows;
            if n == 1 {
                return a.at(0, 0).clone();
            }
            let mut acc = f.zero();
            for j in 0..n {
                let rows: Vec<usize> = (1..n).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let minor = brute_det(f, &a.submatrix(&rows, &cols));
                let term = f.mul(a.at(0, j), &minor);
                acc = if j % 2 == 0 {
                    f.add(&acc, &term)
                } else {
                    f.sub(&acc, &term)
                };
            }
            acc
        }
        // a few deterministic matrices
        for seed in 0..5u64 {
            let n = 3;
            let data: Vec<_> = (0..n * n)
                .map(|i| f.from_index((seed * 31 + i as u64 * 7 + 3) % f.order()))
                .collect();
            let a = Matrix {
                rows: n,
                cols: n,
                data,
            };
            assert_eq!(det(&f, &a), brute_det(&f, &a));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let f = Fq::new(3, 1).unwrap();
        let a = m(&f, &[&[1, 2], &[2, 2]]); // det = 2-4 = -2 = 1 ≠ 0
        let ai = inverse(&f, &a).unwrap();
        assert_eq!(mat_mul(&f, &a, &ai), identity(&f, 2));
        let s = m(&f, &[&[1, 2], &[2, 1]]); // det = 1-4 = -3 = 0
        assert!(inverse(&f, &s).is_err());
    }

    #[test]
    fn kronecker_det_identity() {
        // det(A⊗B) = det(A)^nB · det(B)^nA
        let f = Fq::new(5, 1).unwrap();
        let a = m(&f, &[&[1, 2], &[3, 4]]);
        let b = m(&f, &[&[2, 1], &[1, 1]]);
        let k = kronecker(&f, &a, &b);
        let lhs = det(&f, &k);
        let rhs = f.mul(&f.pow(&det(&f, &a), 2), &f.pow(&det(&f, &b), 2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn compound_top_is_det() {
        let f = Fq::new(3, 1).unwrap();
        let a = m(&f, &[&[0, 1], &[1, 2]]);
        let c = compound(&f, &a, 2);
        assert_eq!((c.rows, c.cols), (1, 1));
        assert_eq!(c.at(0, 0), &det(&f, &a));
        // C(3,2) ordering check on identity
        let i3 = identity(&f, 3);
        let c2 = compound(&f, &i3, 2);
        assert_eq!(c2, identity(&f, 3));
    }
}
