//! Dense matrices over the coefficient field, for the finite-dimensional
//! graded pieces of Čech and total complexes.

use crate::ring::{Coeff, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Coeff>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(field: Field, rows: usize, cols: &[Vec<Coeff>]) -> Self {
        let mut m = Matrix::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
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

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Coeff {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Coeff) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Coeff) {
        let k = i * self.cols + j;
        self.data[k] = &self.data[k] + v;
    }

    pub fn column(&self, j: usize) -> Vec<Coeff> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Coeff::is_zero)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Coeff]) -> Vec<Coeff> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Row echelon form in place; returns pivot columns.
    fn echelon(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).inverse();
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
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
                    let v = self.get(i, j) - &(&f * self.get(r, j));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.clone().echelon().len()
    }

    /// Basis of the null space {v : A v = 0}.
    pub fn kernel(&self) -> Vec<Vec<Coeff>> {
        let mut m = self.clone();
        let pivots = m.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m.get(r, f);
                }
                v
            })
            .collect()
    }

    /// Indices of a maximal set of linearly independent columns, scanning left to right.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.clone().echelon()
    }

    /// Unique x with A x = b when A has full column rank and b is in the column space.
    pub fn solve(&self, b: &[Coeff]) -> Option<Vec<Coeff>> {
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }
}

/// A subquotient Z/B of k^dim: basis vectors of Z spanning a complement of B.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    field: Field,
    ambient: usize,
    /// representatives of a basis of Z/B
    reps: Vec<Vec<Coeff>>,
    /// [reps | basis of B], full column rank
    solver: Matrix,
}

impl QuotientSpace {
    pub fn new(field: Field, ambient: usize, cycles: &[Vec<Coeff>], boundaries: &[Vec<Coeff>]) -> Self {
        let bmat = Matrix::from_columns(field, ambient, boundaries);
        let bbasis: Vec<Vec<Coeff>> = bmat.independent_columns().into_iter().map(|j| bmat.column(j)).collect();
        let mut cols = bbasis.clone();
        cols.extend(cycles.iter().cloned());
        let all = Matrix::from_columns(field, ambient, &cols);
        let reps: Vec<Vec<Coeff>> = all
            .independent_columns()
            .into_iter()
            .filter(|&j| j >= bbasis.len())
            .map(|j| all.column(j))
            .collect();
        let mut scols = reps.clone();
        scols.extend(bbasis);
        let solver = Matrix::from_columns(field, ambient, &scols);
        QuotientSpace { field, ambient, reps, solver }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn reps(&self) -> &[Vec<Coeff>] {
        &self.reps
    }

    /// Coordinates of a cycle in the chosen quotient basis; `None` if v ∉ Z + B span.
    pub fn coordinates(&self, v: &[Coeff]) -> Option<Vec<Coeff>> {
        if self.ambient == 0 {
            return Some(Vec::new());
        }
        let x = self.solver.solve(v)?;
        Some(x[..self.reps.len()].to_vec())
    }

    pub fn field(&self) -> Field {
        self.field
    }
}
