use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::MonoidalInstance;
use crate::error::{shape, validation, Error, Result};
use crate::group::Perm;

/// A dense matrix over a prime field, row-major. A matrix with `rows × cols`
/// is a morphism from dimension `cols` to dimension `rows`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(validation!("ragged matrix rows"));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.concat() })
    }

    /// Builds from row-major data with explicit shape (needed for empty rows).
    pub fn from_data(rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(validation!("{} entries for a {rows}×{cols} matrix", data.len()));
        }
        Ok(Matrix { rows, cols, data })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.data[r * self.cols..(r + 1) * self.cols].to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_permutation_matrix(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..self.cols).filter(|&c| self.get(r, c) != 0).count() == 1)
            && (0..self.cols).all(|c| (0..self.rows).filter(|&r| self.get(r, c) != 0).count() == 1)
            && self.data.iter().all(|&x| x <= 1)
    }
}

/// Finite-dimensional vector spaces over `F_p` with the Kronecker product.
/// Objects are dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatrixInstance {
    p: u32,
}

impl MatrixInstance {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 || p > 65_521 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(Error::Precondition(format!("{p} is not a supported prime")));
        }
        Ok(MatrixInstance { p })
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    #[inline]
    fn mul_mod(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    fn inv_mod(&self, a: u32) -> u32 {
        let (mut base, mut exp, mut acc) = (a as u64 % self.p as u64, self.p as u64 - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p as u64;
            }
            base = base * base % self.p as u64;
            exp >>= 1;
        }
        acc as u32
    }

    pub fn multiply(&self, a: &Matrix, b: &Matrix) -> Result<Matrix> {
        if a.cols != b.rows {
            return Err(shape!("cannot multiply {}×{} by {}×{}", a.rows, a.cols, b.rows, b.cols));
        }
        let mut out = Matrix::zeros(a.rows, b.cols);
        let p = self.p as u64;
        for i in 0..a.rows {
            for k in 0..a.cols {
                let x = a.get(i, k) as u64;
                if x == 0 {
                    continue;
                }
                for j in 0..b.cols {
                    let idx = i * b.cols + j;
                    out.data[idx] = ((out.data[idx] as u64 + x * b.get(k, j) as u64) % p) as u32;
                }
            }
        }
        Ok(out)
    }

    pub fn kronecker(&self, a: &Matrix, b: &Matrix) -> Matrix {
        let (rows, cols) = (a.rows * b.rows, a.cols * b.cols);
        let mut out = Matrix::zeros(rows, cols);
        for i1 in 0..a.rows {
            for j1 in 0..a.cols {
                let x = a.get(i1, j1);
                if x == 0 {
                    continue;
                }
                for i2 in 0..b.rows {
                    for j2 in 0..b.cols {
                        out.set(i1 * b.rows + i2, j1 * b.cols + j2, self.mul_mod(x, b.get(i2, j2)));
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, c: u32, a: &Matrix) -> Matrix {
        Matrix { rows: a.rows, cols: a.cols, data: a.data.iter().map(|&x| self.mul_mod(c, x)).collect() }
    }

    pub fn rank(&self, a: &Matrix) -> usize {
        let mut m = a.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(pivot) = (rank..m.rows).find(|&r| m.get(r, col) != 0) else { continue };
            for c in 0..m.cols {
                m.data.swap(pivot * m.cols + c, rank * m.cols + c);
            }
            let inv = self.inv_mod(m.get(rank, col));
            for r in 0..m.rows {
                if r == rank || m.get(r, col) == 0 {
                    continue;
                }
                let factor = self.mul_mod(m.get(r, col), inv);
                for c in 0..m.cols {
                    let sub = self.mul_mod(factor, m.get(rank, c));
                    let v = (m.get(r, c) + self.p - sub) % self.p;
                    m.set(r, c, v);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn inverse(&self, a: &Matrix) -> Option<Matrix> {
        if a.rows != a.cols {
            return None;
        }
        let n = a.rows;
        let mut m = a.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| m.get(r, col) != 0)?;
            for c in 0..n {
                m.data.swap(pivot * n + c, col * n + c);
                inv.data.swap(pivot * n + c, col * n + c);
            }
            let s = self.inv_mod(m.get(col, col));
            for c in 0..n {
                m.set(col, c, self.mul_mod(s, m.get(col, c)));
                inv.set(col, c, self.mul_mod(s, inv.get(col, c)));
            }
            for r in 0..n {
                let f = m.get(r, col);
                if r == col || f == 0 {
                    continue;
                }
                for c in 0..n {
                    let v = (m.get(r, c) + self.p - self.mul_mod(f, m.get(col, c))) % self.p;
                    m.set(r, c, v);
                    let w = (inv.get(r, c) + self.p - self.mul_mod(f, inv.get(col, c))) % self.p;
                    inv.set(r, c, w);
                }
            }
        }
        Some(inv)
    }

    fn extend_basis(&self, vectors: &[Vec<u32>], columns: &mut Vec<usize>, n: usize, out: &mut Vec<Matrix>) {
        let as_matrix = |columns: &[usize]| {
            let mut m = Matrix::zeros(n, columns.len());
            for (c, &v) in columns.iter().enumerate() {
                for r in 0..n {
                    m.set(r, c, vectors[v][r]);
                }
            }
            m
        };
        if columns.len() == n {
            out.push(as_matrix(columns));
            return;
        }
        for v in 0..vectors.len() {
            columns.push(v);
            if self.rank(&as_matrix(columns)) == columns.len() {
                self.extend_basis(vectors, columns, n, out);
            }
            columns.pop();
        }
    }

    pub fn trace(&self, a: &Matrix) -> u32 {
        (0..a.rows.min(a.cols)).fold(0, |acc, i| (acc + a.get(i, i)) % self.p)
    }
}

impl MonoidalInstance for MatrixInstance {
    type Object = usize;
    type Morphism = Matrix;

    fn name(&self) -> String {
        format!("matrix_f{}", self.p)
    }

    fn dom(&self, f: &Matrix) -> usize {
        f.cols
    }

    fn cod(&self, f: &Matrix) -> usize {
        f.rows
    }

    fn identity(&self, x: &usize) -> Matrix {
        Matrix::identity(*x)
    }

    fn compose(&self, g: &Matrix, f: &Matrix) -> Result<Matrix> {
        self.multiply(g, f)
    }

    fn unit(&self) -> usize {
        1
    }

    fn tensor_objects(&self, a: &usize, b: &usize) -> usize {
        a * b
    }

    fn tensor_morphisms(&self, f: &Matrix, g: &Matrix) -> Matrix {
        self.kronecker(f, g)
    }

    /// Perfect-shuffle permutation matrix: basis vector
    /// `e_{a_0} ⊗ .. ⊗ e_{a_{n-1}}` goes to the vector whose slot `π(k)`
    /// holds `a_k`.
    fn permute(&self, objects: &[usize], perm: &Perm) -> Result<Matrix> {
        let n = objects.len();
        if perm.degree() != n {
            return Err(shape!("permutation of {} points for {n} factors", perm.degree()));
        }
        let total: usize = objects.iter().product();
        let mut target_dims = vec![0; n];
        for k in 0..n {
            target_dims[perm.apply(k)] = objects[k];
        }
        let mut out = Matrix::zeros(total, total);
        let mut digits = vec![0; n];
        let mut moved = vec![0; n];
        for a in 0..total {
            let mut rest = a;
            for k in (0..n).rev() {
                digits[k] = rest % objects[k];
                rest /= objects[k];
            }
            for k in 0..n {
                moved[perm.apply(k)] = digits[k];
            }
            let b = moved.iter().zip(&target_dims).fold(0, |acc, (&d, &dim)| acc * dim + d);
            out.set(b, a, 1);
        }
        Ok(out)
    }

    fn hom_set(&self, a: &usize, b: &usize) -> Vec<Matrix> {
        let entries = a * b;
        let count = self.hom_size(a, b).expect("hom set too large to enumerate");
        let mut out = Vec::with_capacity(count);
        let mut data = vec![0u32; entries];
        for _ in 0..count {
            out.push(Matrix { rows: *b, cols: *a, data: data.clone() });
            for x in data.iter_mut().rev() {
                *x += 1;
                if *x < self.p {
                    break;
                }
                *x = 0;
            }
        }
        out
    }

    fn hom_size(&self, a: &usize, b: &usize) -> Option<usize> {
        (self.p as usize).checked_pow(u32::try_from(a.checked_mul(*b)?).ok()?)
    }

    fn isomorphisms(&self, a: &usize, b: &usize, cap: usize) -> Option<Vec<Matrix>> {
        if a != b {
            return Some(Vec::new());
        }
        let n = *a;
        let p = self.p as usize;
        let full = p.checked_pow(u32::try_from(n).ok()?)?;
        let mut count = 1usize;
        let mut power = 1usize;
        for _ in 0..n {
            count = count.checked_mul(full - power)?;
            power *= p;
        }
        if count > cap {
            return None;
        }
        let vectors: Vec<Vec<u32>> = (0..full)
            .map(|mut v| {
                (0..n)
                    .map(|_| {
                        let d = (v % p) as u32;
                        v /= p;
                        d
                    })
                    .collect()
            })
            .collect();
        let mut out = Vec::with_capacity(count);
        let mut columns: Vec<usize> = Vec::with_capacity(n);
        self.extend_basis(&vectors, &mut columns, n, &mut out);
        Some(out)
    }

    fn is_iso(&self, f: &Matrix) -> bool {
        f.rows == f.cols && self.rank(f) == f.rows
    }

    fn check_object(&self, _x: &usize) -> Result<()> {
        Ok(())
    }

    fn check_morphism(&self, f: &Matrix) -> Result<()> {
        if f.data.len() != f.rows * f.cols {
            return Err(validation!("matrix data has the wrong length"));
        }
        if let Some(&x) = f.data.iter().find(|&&x| x >= self.p) {
            return Err(validation!("entry {x} is not reduced mod {}", self.p));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_matrix(p: u32, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(0..p, rows * cols).prop_map(move |d| Matrix::from_data(rows, cols, d).unwrap())
    }

    proptest! {
        #[test]
        fn kronecker_interchange(
            (a, b, c, d) in (1usize..3, 1usize..3, 1usize..3, 1usize..3, 1usize..3, 1usize..3)
                .prop_flat_map(|(r1, k1, c1, r2, k2, c2)| (
                    arb_matrix(3, r1, k1), arb_matrix(3, r2, k2),
                    arb_matrix(3, k1, c1), arb_matrix(3, k2, c2),
                ))
        ) {
            let inst = MatrixInstance::new(3).unwrap();
            let lhs = inst.multiply(&inst.kronecker(&a, &b), &inst.kronecker(&c, &d)).unwrap();
            let rhs = inst.kronecker(&inst.multiply(&a, &c).unwrap(), &inst.multiply(&b, &d).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn inverse_round_trip(a in arb_matrix(3, 3, 3)) {
            let inst = MatrixInstance::new(3).unwrap();
            match inst.inverse(&a) {
                Some(inv) => {
                    prop_assert_eq!(inst.multiply(&a, &inv).unwrap(), Matrix::identity(3));
                    prop_assert!(inst.is_iso(&a));
                }
                None => prop_assert!(inst.rank(&a) < 3),
            }
        }
    }

    #[test]
    fn primes_only() {
        assert!(MatrixInstance::new(2).is_ok());
        assert!(MatrixInstance::new(3).is_ok());
        assert!(MatrixInstance::new(4).is_err());
        assert!(MatrixInstance::new(1).is_err());
    }

    #[test]
    fn swap_of_two_qubits() {
        let inst = MatrixInstance::new(2).unwrap();
        let s = inst.permute(&[2, 2], &Perm::from_images(vec![1, 0]).unwrap()).unwrap();
        let expected = Matrix::from_rows(&[vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 1, 0, 0], vec![0, 0, 0, 1]]).unwrap();
        assert_eq!(s, expected);
        assert!(s.is_permutation_matrix());
    }

    #[test]
    fn hom_sets() {
        let inst = MatrixInstance::new(3).unwrap();
        assert_eq!(inst.hom_size(&2, &2), Some(81));
        let all = inst.hom_set(&1, &2);
        assert_eq!(all.len(), 9);
        assert_eq!(all.iter().filter(|m| m.is_zero()).count(), 1);
        let gl2 = inst.hom_set(&2, &2).into_iter().filter(|m| inst.is_iso(m)).count();
        assert_eq!(gl2, 48);
    }

    #[test]
    fn isomorphisms_are_the_invertible_hom_set() {
        for (p, n) in [(2, 1), (2, 2), (2, 3), (3, 2)] {
            let inst = MatrixInstance::new(p).unwrap();
            let mut listed = inst.isomorphisms(&n, &n, 1 << 20).unwrap();
            let mut filtered: Vec<Matrix> = inst.hom_set(&n, &n).into_iter().filter(|m| inst.is_iso(m)).collect();
            listed.sort();
            filtered.sort();
            assert_eq!(listed, filtered);
        }
        let f2 = MatrixInstance::new(2).unwrap();
        assert_eq!(f2.isomorphisms(&4, &4, 1 << 20).unwrap().len(), 20160);
        assert_eq!(f2.isomorphisms(&4, &4, 100), None);
        assert_eq!(f2.isomorphisms(&1, &2, 100), Some(Vec::new()));
    }

    #[test]
    fn zero_tensor() {
        let inst = MatrixInstance::new(2).unwrap();
        let z = Matrix::zeros(2, 2);
        let a = Matrix::identity(2);
        assert!(inst.kronecker(&a, &z).is_zero());
        assert!(inst.check_morphism(&Matrix::from_rows(&[vec![2]]).unwrap()).is_err());
    }
}
