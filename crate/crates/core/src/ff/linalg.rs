//! Dense exact linear algebra over F_{q^m} and over F_q.

use super::{Ext, FieldTower};

/// Row-major matrix over F_{q^m}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Ext>,
}

impl Mat {
    pub fn zero(tower: &FieldTower, rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![tower.zero(); rows * cols] }
    }

    pub fn identity(tower: &FieldTower, n: usize) -> Self {
        let mut m = Mat::zero(tower, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = tower.one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Ext>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Ext {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Ext {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Ext] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self, tower: &FieldTower) -> Mat {
        let mut out = Mat::zero(tower, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        out
    }

    pub fn mul(&self, tower: &FieldTower, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Mat::zero(tower, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = tower.mul(a, b);
                    let cur = out.at(r, c).clone();
                    *out.at_mut(r, c) = tower.add(&cur, &prod);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self, tower: &FieldTower) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, pr);
            let inv = tower.inv(self.at(row, col));
            for c in col..self.cols {
                *self.at_mut(row, c) = tower.mul(self.at(row, c), &inv);
            }
            for r in 0..self.rows {
                if r == row || self.at(r, col).is_zero() {
                    continue;
                }
                let factor = self.at(r, col).clone();
                for c in col..self.cols {
                    let sub = tower.mul(&factor, self.at(row, c));
                    let cur = tower.sub(self.at(r, c), &sub);
                    *self.at_mut(r, c) = cur;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self, tower: &FieldTower) -> usize {
        let mut m = self.clone();
        m.rref(tower).len()
    }

    /// Solves self * x = rhs for a square or overdetermined consistent system.
    /// Returns None when the system is singular or inconsistent.
    pub fn solve(&self, tower: &FieldTower, rhs: &[Ext]) -> Option<Vec<Ext>> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = Mat::zero(tower, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, self.cols) = rhs[r].clone();
        }
        let pivots = aug.rref(tower);
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        if pivots.len() < self.cols {
            return None; // underdetermined: treated as singular here
        }
        let mut x = vec![tower.zero(); self.cols];
        for (i, &col) in pivots.iter().enumerate() {
            x[col] = aug.at(i, self.cols).clone();
        }
        Some(x)
    }
}

/// Basis of the right kernel {x : M x = 0}, one basis vector per row,
/// built deterministically from the reduced echelon form (free columns
/// in ascending order).
pub fn kernel_basis(tower: &FieldTower, m: &Mat) -> Mat {
    let mut red = m.clone();
    let pivots = red.rref(tower);
    let mut is_pivot = vec![false; m.cols()];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..m.cols()).filter(|&c| !is_pivot[c]).collect();
    let mut out = Mat::zero(tower, free.len(), m.cols());
    for (i, &fc) in free.iter().enumerate() {
        *out.at_mut(i, fc) = tower.one();
        for (prow, &pc) in pivots.iter().enumerate() {
            let v = red.at(prow, fc);
            if !v.is_zero() {
                *out.at_mut(i, pc) = tower.neg(v);
            }
        }
    }
    out
}

/// Row-major matrix over F_q (u64 encodings).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FqMat {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FqMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        FqMat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<u64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        FqMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self, tower: &FieldTower) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.at(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..self.cols {
                    self.data.swap(row * self.cols + c, pr * self.cols + c);
                }
            }
            let inv = tower.fq_inv(self.at(row, col));
            for c in col..self.cols {
                self.set(row, c, tower.fq_mul(self.at(row, c), inv));
            }
            for r in 0..self.rows {
                if r == row || self.at(r, col) == 0 {
                    continue;
                }
                let factor = self.at(r, col);
                for c in col..self.cols {
                    let v = tower.fq_sub(self.at(r, c), tower.fq_mul(factor, self.at(row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self, tower: &FieldTower) -> usize {
        let mut m = self.clone();
        m.rref(tower).len()
    }

    /// Embeds into a matrix over F_{q^m} (entries as constants).
    pub fn embed(&self, tower: &FieldTower) -> Mat {
        let mut out = Mat::zero(tower, self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(r, c) = tower.embed_fq(self.at(r, c));
            }
        }
        out
    }
}

/// F_q-rank of a matrix over F_{q^m}: every entry expands to its length-m
/// coordinate column, each original row becomes m rows of the expanded
/// matrix, and the F_q-rank of that matrix is returned. For a single row
/// this is the maximum number of F_q-linearly independent entries.
pub fn rank_over_base(tower: &FieldTower, m: &Mat) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    let mm = tower.m();
    let mut exp = FqMat::zero(m.rows() * mm, m.cols());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            for (k, &coord) in m.at(r, c).coords().iter().enumerate() {
                exp.set(r * mm + k, c, coord);
            }
        }
    }
    exp.rank(tower)
}

/// Convenience wrapper for a single row vector.
pub fn rank_over_base_vec(tower: &FieldTower, v: &[Ext]) -> usize {
    rank_over_base(tower, &Mat::from_rows(vec![v.to_vec()]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_tower;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn rank_over_base_examples() {
        let f4 = make_tower(2, 1, 2, 1).unwrap();
        let z = f4.from_index(2);
        let zero = f4.zero();
        let one = f4.one();
        assert_eq!(rank_over_base_vec(&f4, &[zero.clone(), zero.clone(), zero.clone()]), 0);
        assert_eq!(rank_over_base_vec(&f4, &[one, z.clone()]), 2);
        // (z, z, z + z) = (z, z, 0)
        assert_eq!(rank_over_base_vec(&f4, &[z.clone(), z.clone(), f4.add(&z, &z)]), 1);
    }

    #[test]
    fn rank_over_base_matches_exhaustive_search() {
        // every F_q-coefficient combination, vectors of length <= 3, q^m <= 256
        for (p, e, m) in [(2u64, 1usize, 2usize), (3, 1, 2), (2, 2, 2)] {
            let t = make_tower(p, e, m, 1).unwrap();
            let mut rng = ChaCha12Rng::seed_from_u64(5);
            for len in 1..=3usize {
                for _ in 0..40 {
                    let v: Vec<Ext> = (0..len).map(|_| t.random(&mut rng)).collect();
                    let got = rank_over_base_vec(&t, &v);
                    // exhaustive: rank = len - log_q(#vanishing combinations)
                    let mut vanishing = 0u64;
                    let q = t.q();
                    let combos = q.pow(len as u32);
                    for idx in 0..combos {
                        let mut acc = t.zero();
                        let mut rem = idx;
                        for item in v.iter() {
                            let coef = rem % q;
                            rem /= q;
                            acc = t.add(&acc, &t.scale_fq(item, coef));
                        }
                        if acc.is_zero() {
                            vanishing += 1;
                        }
                    }
                    let null_dim = (vanishing as f64).log(q as f64).round() as usize;
                    assert_eq!(got, len - null_dim);
                }
            }
        }
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let t = make_tower(3, 1, 2, 1).unwrap();
        let k = kernel_basis(&t, &Mat::identity(&t, 4));
        assert_eq!(k.rows(), 0);
    }

    #[test]
    fn kernel_of_zero_is_full() {
        let t = make_tower(3, 1, 2, 1).unwrap();
        let k = kernel_basis(&t, &Mat::zero(&t, 3, 3));
        assert_eq!(k.rows(), 3);
        assert_eq!(k.rank(&t), 3);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let t = make_tower(3, 1, 2, 1).unwrap(); // F_9
        let mut rng = ChaCha12Rng::seed_from_u64(9);
        for _ in 0..30 {
            let m = Mat::from_rows(
                (0..3).map(|_| (0..5).map(|_| t.random(&mut rng)).collect()).collect(),
            );
            if m.rank(&t) != 3 {
                continue;
            }
            let k = kernel_basis(&t, &m);
            assert_eq!(k.rows(), 2);
            let prod = m.mul(&t, &k.transpose(&t));
            assert!(prod.is_zero());
        }
    }

    #[test]
    fn solve_roundtrip() {
        let t = make_tower(3, 1, 2, 1).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(13);
        for _ in 0..40 {
            let a = Mat::from_rows(
                (0..4).map(|_| (0..4).map(|_| t.random(&mut rng)).collect()).collect(),
            );
            let x: Vec<Ext> = (0..4).map(|_| t.random(&mut rng)).collect();
            let b: Vec<Ext> = (0..4)
                .map(|r| {
                    let mut acc = t.zero();
                    for c in 0..4 {
                        acc = t.add(&acc, &t.mul(a.at(r, c), &x[c]));
                    }
                    acc
                })
                .collect();
            match a.solve(&t, &b) {
                Some(got) => assert_eq!(got, x),
                None => assert!(a.rank(&t) < 4),
            }
        }
    }
}
