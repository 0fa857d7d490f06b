//! Dense exact matrices over Q(ζ_N).

use std::fmt;

use crate::cyclo::CyclotomicNumber as Cyclo;
use crate::error::{Error, Result};

/// Row-major matrix whose entries all live in Q(ζ_order).
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    order: u32,
    data: Vec<Cyclo>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, order: u32) -> Self {
        Self { rows, cols, order, data: vec![Cyclo::zero(order); rows * cols] }
    }

    pub fn identity(n: usize, order: u32) -> Self {
        let mut m = Self::zeros(n, n, order);
        for i in 0..n {
            m.data[i * n + i] = Cyclo::one(order);
        }
        m
    }

    pub fn scalar(n: usize, c: &Cyclo, order: u32) -> Self {
        let mut m = Self::zeros(n, n, order);
        let c = c.lift(order);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    /// Builds from rows; entries are lifted to `order`, which every entry's order must divide.
    pub fn from_rows(rows: &[Vec<Cyclo>], order: u32) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend(row.iter().map(|x| x.lift(order)));
        }
        Self { rows: r, cols: c, order, data }
    }

    pub fn from_columns(cols: &[Vec<Cyclo>], rows: usize, order: u32) -> Self {
        let mut m = Self::zeros(rows, cols.len(), order);
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.lift(order));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclo {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyclo) {
        let v = if v.order() != self.order && self.order % v.order() == 0 { v.lift(self.order) } else { v };
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Cyclo> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Cyclo> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Cyclo>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.order);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let order = join(self.order, other.order);
        let mut out = Self::zeros(self.rows, other.cols, order);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Cyclo]) -> Vec<Cyclo> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Cyclo::zero(self.order);
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Self { rows: self.rows, cols: self.cols, order: join(self.order, other.order), data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Self { rows: self.rows, cols: self.cols, order: join(self.order, other.order), data }
    }

    pub fn scale(&self, c: &Cyclo) -> Self {
        let data = self.data.iter().map(|a| a * c).collect();
        Self { rows: self.rows, cols: self.cols, order: join(self.order, c.order()), data }
    }

    /// `self - c·I`.
    pub fn shift(&self, c: &Cyclo) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let idx = i * self.cols + i;
            m.data[idx] = &m.data[idx] - c;
        }
        m
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows, self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> Cyclo {
        let mut acc = Cyclo::zero(self.order);
        for i in 0..self.rows.min(self.cols) {
            acc += self.get(i, i);
        }
        acc
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols, join(self.order, other.order));
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).inv().expect("pivot is nonzero");
            for j in c..self.cols {
                let idx = r * self.cols + j;
                if !self.data[idx].is_zero() {
                    self.data[idx] = &self.data[idx] * &inv;
                }
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let b = self.data[r * self.cols + j].clone();
                    if !b.is_zero() {
                        let idx = i * self.cols + j;
                        self.data[idx] = &self.data[idx] - &(&f * &b);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Basis of the right kernel, as the columns of the returned matrix.
    pub fn kernel(&self) -> Self {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zeros(self.cols, free.len(), self.order);
        for (t, &f) in free.iter().enumerate() {
            k.set(f, t, Cyclo::one(self.order));
            for (r, &p) in pivots.iter().enumerate() {
                let v = m.get(r, f);
                if !v.is_zero() {
                    k.set(p, t, -v);
                }
            }
        }
        k
    }

    pub fn det(&self) -> Cyclo {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Cyclo::one(self.order);
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Cyclo::zero(self.order);
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv().expect("pivot is nonzero");
            for i in c + 1..n {
                let f = m.get(i, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let b = m.get(c, j).clone();
                    if !b.is_zero() {
                        let idx = i * n + j;
                        m.data[idx] = &m.data[idx] - &(&f * &b);
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = self.hstack(&Self::identity(n, self.order));
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::DivisionByZero);
        }
        let mut inv = Self::zeros(n, n, aug.order);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// Solves `self · X = rhs` for a matrix with independent columns; errors
    /// when some column of `rhs` is outside the column space.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        assert_eq!(self.rows, rhs.rows);
        let mut aug = self.hstack(rhs);
        let pivots = aug.rref_in_place();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Err(Error::Inconsistent("linear system has no solution".into()));
        }
        if pivots.len() < self.cols {
            return Err(Error::Inconsistent("coefficient matrix has dependent columns".into()));
        }
        let mut x = Self::zeros(self.cols, rhs.cols, aug.order);
        for (r, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(p, j, aug.get(r, self.cols + j).clone());
            }
        }
        Ok(x)
    }

    /// Characteristic polynomial det(xI - A), coefficients low degree first.
    pub fn charpoly(&self) -> Vec<Cyclo> {
        assert!(self.is_square());
        let n = self.rows;
        let h = self.hessenberg();
        let order = self.order;
        let at = |i: usize, j: usize| h.get(i - 1, j - 1);
        // p[m] is the characteristic polynomial of the leading m×m block
        let mut p: Vec<Vec<Cyclo>> = vec![vec![Cyclo::one(order)]];
        for m in 1..=n {
            // (x - h_mm) p_{m-1}
            let prev = &p[m - 1];
            let mut next = vec![Cyclo::zero(order); m + 1];
            for (k, c) in prev.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= &(c * at(m, m));
            }
            let mut prod = Cyclo::one(order);
            for i in 1..m {
                prod = &prod * at(m - i + 1, m - i);
                if prod.is_zero() {
                    break;
                }
                let coef = at(m - i, m) * &prod;
                if coef.is_zero() {
                    continue;
                }
                for (k, c) in p[m - i - 1].iter().enumerate() {
                    next[k] -= &(&coef * c);
                }
            }
            p.push(next);
        }
        p.pop().unwrap()
    }

    fn hessenberg(&self) -> Self {
        let n = self.rows;
        let mut h = self.clone();
        if n < 3 {
            return h;
        }
        for j in 0..n - 2 {
            let Some(i) = (j + 1..n).find(|&i| !h.get(i, j).is_zero()) else {
                continue;
            };
            if i != j + 1 {
                for c in 0..n {
                    h.data.swap(i * n + c, (j + 1) * n + c);
                }
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + j + 1);
                }
            }
            let inv = h.get(j + 1, j).inv().expect("pivot is nonzero");
            for k in j + 2..n {
                let t = h.get(k, j) * &inv;
                if t.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = h.get(j + 1, c).clone();
                    if !b.is_zero() {
                        let idx = k * n + c;
                        h.data[idx] = &h.data[idx] - &(&t * &b);
                    }
                }
                for r in 0..n {
                    let b = h.get(r, k).clone();
                    if !b.is_zero() {
                        let idx = r * n + j + 1;
                        h.data[idx] = &h.data[idx] + &(&t * &b);
                    }
                }
            }
        }
        h
    }

    /// Restriction of `self` to an invariant subspace spanned by the columns of `basis`.
    pub fn restrict(&self, basis: &Self) -> Result<Self> {
        basis.solve(&self.mul(basis))
    }
}

fn join(a: u32, b: u32) -> u32 {
    if a == b {
        return a;
    }
    crate::cyclo::lcm_order(a, b).unwrap_or_else(|e| panic!("{e}"))
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
