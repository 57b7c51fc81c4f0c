//! Dense linear algebra over finite fields.

use super::field::{fp, FieldElement, FiniteField};
use super::poly::Poly;

/// Row-major matrix over a finite field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![FieldElement::default(); rows * cols],
        }
    }

    pub fn identity(k: &FiniteField, n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, k.one());
        }
        m
    }

    pub fn from_columns(rows: usize, columns: &[Vec<FieldElement>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
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

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, k: &FiniteField, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = k.zero();
                for l in 0..self.cols {
                    acc = k.add(&acc, &k.mul(self.get(i, l), other.get(l, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn sub(&self, k: &FiniteField, other: &Matrix) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| k.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, k: &FiniteField, c: &FieldElement) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| k.mul(a, c)).collect(),
        }
    }

    pub fn add(&self, k: &FiniteField, other: &Matrix) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| k.add(a, b)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElement::is_zero)
    }

    /// Row echelon form in place; returns pivot columns and the determinant
    /// sign/scale factor accumulated from swaps (as a field element).
    fn echelon(&mut self, k: &FiniteField) -> (Vec<usize>, FieldElement) {
        let mut pivots = Vec::new();
        let mut factor = k.one();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(piv) = (row..self.rows).find(|&i| !self.get(i, col).is_zero()) else {
                continue;
            };
            if piv != row {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, row * self.cols + j);
                }
                factor = k.neg(&factor);
            }
            let inv = k.inv(self.get(row, col)).unwrap();
            for i in row + 1..self.rows {
                let c = k.mul(self.get(i, col), &inv);
                if c.is_zero() {
                    continue;
                }
                for j in col..self.cols {
                    let v = k.sub(self.get(i, j), &k.mul(&c, self.get(row, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (pivots, factor)
    }

    pub fn rank(&self, k: &FiniteField) -> usize {
        self.clone().echelon(k).0.len()
    }

    pub fn det(&self, k: &FiniteField) -> FieldElement {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let (pivots, factor) = m.echelon(k);
        if pivots.len() < self.rows {
            return k.zero();
        }
        (0..self.rows).fold(factor, |acc, i| k.mul(&acc, m.get(i, i)))
    }

    /// Characteristic polynomial `det(xI - M)` via reduction to upper
    /// Hessenberg form; valid over any field.
    pub fn char_poly(&self, k: &FiniteField) -> Poly {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
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
            let t_inv = k.inv(h.get(j + 1, j)).unwrap();
            for i in j + 2..n {
                let u = k.mul(h.get(i, j), &t_inv);
                if u.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let v = k.sub(h.get(i, c), &k.mul(&u, h.get(j + 1, c)));
                    h.set(i, c, v);
                }
                for r in 0..n {
                    let v = k.add(h.get(r, j + 1), &k.mul(&u, h.get(r, i)));
                    h.set(r, j + 1, v);
                }
            }
        }
        let ring = super::poly::PolyRing::new(k.clone());
        let mut polys: Vec<Poly> = vec![ring.one()];
        for m in 0..n {
            let lin = Poly::new(vec![k.neg(h.get(m, m)), k.one()]);
            let mut next = ring.mul(&lin, &polys[m]);
            let mut prod = k.one();
            for i in (0..m).rev() {
                prod = k.mul(&prod, h.get(i + 1, i));
                let c = k.mul(&prod, h.get(i, m));
                next = ring.sub(&next, &ring.scale(&c, &polys[i]));
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }

    /// Evaluate a polynomial at this square matrix (Horner).
    pub fn eval_poly(&self, k: &FiniteField, f: &Poly) -> Matrix {
        let n = self.rows;
        let id = Matrix::identity(k, n);
        f.coeffs()
            .iter()
            .rev()
            .fold(Matrix::zeros(n, n), |acc, c| acc.mul(k, self).add(k, &id.scale(k, c)))
    }
}

/// Incrementally built echelon basis of a subspace of `F_p^n`, tracking how
/// each stored row combines the inserted vectors, so that any vector of the
/// span can be written in terms of the inserted ones.
#[derive(Clone, Debug)]
pub struct PrimeSpan {
    p: u64,
    dim: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    combos: Vec<Vec<u64>>,
    inserted: usize,
}

impl PrimeSpan {
    pub fn new(p: u64, dim: usize) -> Self {
        PrimeSpan {
            p,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            combos: Vec::new(),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against stored rows; returns residual and the combination
    /// (over inserted vectors) that was subtracted.
    fn reduce(&self, v: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let p = self.p;
        let mut r = v.to_vec();
        r.resize(self.dim, 0);
        let mut combo = vec![0u64; self.inserted];
        for ((row, &piv), c) in self.rows.iter().zip(&self.pivots).zip(&self.combos) {
            let f = r[piv];
            if f == 0 {
                continue;
            }
            for j in 0..self.dim {
                r[j] = (r[j] + p - fp::mul_mod(f, row[j], p)) % p;
            }
            for (j, &cj) in c.iter().enumerate() {
                combo[j] = (combo[j] + fp::mul_mod(f, cj, p)) % p;
            }
        }
        (r, combo)
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).0.iter().all(|&x| x == 0)
    }

    /// Insert `v`; returns false (and stores nothing) if it is dependent.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let p = self.p;
        let (mut r, mut combo) = self.reduce(v);
        let Some(piv) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        // the new row equals v - sum(combo_j * inserted_j)
        for c in &mut combo {
            *c = (p - *c) % p;
        }
        combo.push(1);
        for c in &mut self.combos {
            c.push(0);
        }
        self.inserted += 1;
        let inv = fp::inv_mod(r[piv], p);
        for x in &mut r {
            *x = fp::mul_mod(*x, inv, p);
        }
        for c in &mut combo {
            *c = fp::mul_mod(*c, inv, p);
        }
        // keep stored rows reduced at the new pivot
        for (row, c) in self.rows.iter_mut().zip(&mut self.combos) {
            let f = row[piv];
            if f == 0 {
                continue;
            }
            for j in 0..self.dim {
                row[j] = (row[j] + p - fp::mul_mod(f, r[j], p)) % p;
            }
            for j in 0..c.len() {
                c[j] = (c[j] + p - fp::mul_mod(f, combo[j], p)) % p;
            }
        }
        self.rows.push(r);
        self.pivots.push(piv);
        self.combos.push(combo);
        true
    }

    /// Coordinates of `v` with respect to the inserted (independent) vectors.
    pub fn coordinates(&self, v: &[u64]) -> Option<Vec<u64>> {
        let (r, combo) = self.reduce(v);
        r.iter().all(|&x| x == 0).then_some(combo)
    }
}

/// Basis of the kernel of an `F_p`-matrix given by its columns.
pub fn prime_kernel(p: u64, rows: usize, columns: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let cols = columns.len();
    // reduced row echelon form of the matrix
    let mut m: Vec<Vec<u64>> = (0..rows)
        .map(|i| columns.iter().map(|c| c.get(i).copied().unwrap_or(0) % p).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(piv) = (row..rows).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(piv, row);
        let inv = fp::inv_mod(m[row][col], p);
        for x in &mut m[row] {
            *x = fp::mul_mod(*x, inv, p);
        }
        let pivot_row = m[row].clone();
        for (i, r) in m.iter_mut().enumerate() {
            if i == row || r[col] == 0 {
                continue;
            }
            let f = r[col];
            for j in 0..cols {
                r[j] = (r[j] + p - fp::mul_mod(f, pivot_row[j], p)) % p;
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[r][fc]) % p;
            }
            v
        })
        .collect()
}
