//! The field tower F_p <= F_q <= F_{q^m}, the automorphism theta with fixed
//! field F_q, conjugacy-class representatives, and exact linear algebra over
//! both F_q and F_{q^m}.
//!
//! Towers are deterministic: the same (p, e, m, r) always yields the same
//! moduli (lexicographically smallest irreducible polynomials) and the same
//! primitive element (smallest full-order element in coordinate order), so
//! codes built on top are reproducible across runs.

pub(crate) mod base;
pub(crate) mod factor;
mod linalg;

pub use linalg::{kernel_basis, rank_over_base, rank_over_base_vec, FqMat, Mat};

use crate::Error;
use base::BaseField;

/// Element of F_{q^m}: length-m coordinate vector over F_q in the polynomial
/// basis of the top modulus. Coordinates are u64 encodings below q.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ext {
    pub(crate) c: Vec<u64>,
}

impl Ext {
    pub fn coords(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }
}

/// Length partition (n_1, ..., n_l) of n: all parts positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthPartition {
    parts: Vec<usize>,
}

impl LengthPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self, Error> {
        if parts.is_empty() || parts.iter().any(|&p| p == 0) {
            return Err(Error::BadPartition);
        }
        Ok(LengthPartition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn num_blocks(&self) -> usize {
        self.parts.len()
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Start offset of each block, plus the total as a sentinel.
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.parts.len() + 1);
        let mut acc = 0;
        for &p in &self.parts {
            out.push(acc);
            acc += p;
        }
        out.push(acc);
        out
    }

    /// Partition with every part scaled by s.
    pub fn scaled(&self, s: usize) -> LengthPartition {
        LengthPartition { parts: self.parts.iter().map(|&p| p * s).collect() }
    }
}

/// The tower F_p <= F_q <= F_{q^m} together with theta: a -> a^(q^r).
#[derive(Debug)]
pub struct FieldTower {
    base: BaseField,
    m: usize,
    r: usize,
    /// Monic irreducible top modulus of degree m over F_q, ascending, length m + 1.
    top_modulus: Vec<u64>,
    /// q^m.
    field_size: u64,
    /// Coordinates of z^(m+i) mod top_modulus for i = 0..m-1.
    reduction_rows: Vec<Vec<u64>>,
    /// theta_mats[i] is the m x m matrix of theta^i over F_q (row major).
    theta_mats: Vec<Vec<u64>>,
    primitive: Ext,
}

/// Builds the deterministic tower for (p, e, m, r). See [`FieldTower::new`].
pub fn make_tower(p: u64, e: usize, m: usize, r: usize) -> Result<FieldTower, Error> {
    FieldTower::new(p, e, m, r)
}

impl FieldTower {
    pub fn new(p: u64, e: usize, m: usize, r: usize) -> Result<Self, Error> {
        if m == 0 {
            return Err(Error::BadDegree { e, m });
        }
        if gcd(r as u64 % m as u64, m as u64) != 1 {
            return Err(Error::FrobeniusNotCoprime { r, m });
        }
        let base = BaseField::new(p, e)?;
        let q = base.q;
        let mut field_size: u64 = 1;
        for _ in 0..m {
            field_size = field_size.checked_mul(q).ok_or(Error::FieldTooLarge)?;
        }

        // Lexicographically smallest monic irreducible of degree m over F_q.
        let mut top_modulus = None;
        let mut counter = 0u64;
        while counter < field_size {
            let mut f = base::unpack(counter, q, m);
            f.push(1);
            if base::poly_is_irreducible(&base, &f) {
                top_modulus = Some(f);
                break;
            }
            counter += 1;
        }
        let top_modulus = top_modulus.ok_or(Error::NoIrreducible)?;

        // z^(m+i) mod f, iteratively.
        let mut reduction_rows: Vec<Vec<u64>> = Vec::with_capacity(m);
        let z_m: Vec<u64> = (0..m).map(|j| base.neg(top_modulus[j])).collect();
        reduction_rows.push(z_m);
        for _ in 1..m {
            let prev = reduction_rows.last().unwrap().clone();
            let mut next = vec![0u64; m];
            for j in 0..m - 1 {
                next[j + 1] = prev[j];
            }
            let carry = prev[m - 1];
            if carry != 0 {
                for j in 0..m {
                    let add = base.mul(carry, reduction_rows[0][j]);
                    next[j] = base.add(next[j], add);
                }
            }
            reduction_rows.push(next);
        }

        let mut tower = FieldTower {
            base,
            m,
            r: r % m,
            top_modulus,
            field_size,
            reduction_rows,
            theta_mats: Vec::new(),
            primitive: Ext { c: vec![0; m] },
        };

        // Matrix of theta: column i holds the coordinates of (z^(q^r))^i.
        let r_eff = r % m;
        let mut q_pow_r: u64 = 1;
        for _ in 0..r_eff {
            q_pow_r *= q; // q^r_eff < q^m <= u64::MAX
        }
        let z = if m == 1 {
            // the field is F_q itself; theta is the identity
            tower.one()
        } else {
            let mut c = vec![0u64; m];
            c[1] = 1;
            Ext { c }
        };
        let zq = tower.pow(&z, q_pow_r);
        let mut theta1 = vec![0u64; m * m];
        let mut col = tower.one();
        for i in 0..m {
            for row in 0..m {
                theta1[row * m + i] = col.c[row];
            }
            col = tower.mul(&col, &zq);
        }
        let mut mats = Vec::with_capacity(m);
        let mut ident = vec![0u64; m * m];
        for i in 0..m {
            ident[i * m + i] = 1;
        }
        mats.push(ident);
        for i in 1..m {
            let prev = &mats[i - 1];
            let mut next = vec![0u64; m * m];
            for row in 0..m {
                for mid in 0..m {
                    let a = prev[row * m + mid];
                    if a == 0 {
                        continue;
                    }
                    for colj in 0..m {
                        let b = theta1[mid * m + colj];
                        if b == 0 {
                            continue;
                        }
                        next[row * m + colj] =
                            tower.base.add(next[row * m + colj], tower.base.mul(a, b));
                    }
                }
            }
            mats.push(next);
        }
        tower.theta_mats = mats;

        // Smallest element (coordinate order) of multiplicative order q^m - 1.
        let order = field_size - 1;
        let prime_factors: Vec<u64> = factor::factor(order).into_iter().map(|(p, _)| p).collect();
        let mut primitive = None;
        for v in 1..=order {
            let cand = tower.from_index(v);
            if prime_factors.iter().all(|&rho| !tower.pow(&cand, order / rho).is_one()) {
                primitive = Some(cand);
                break;
            }
        }
        tower.primitive = primitive.ok_or(Error::NoIrreducible)?;
        Ok(tower)
    }

    pub fn p(&self) -> u64 {
        self.base.p
    }

    pub fn e(&self) -> usize {
        self.base.e
    }

    pub fn q(&self) -> u64 {
        self.base.q
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn frob_power(&self) -> usize {
        self.r
    }

    /// q^m, the size of the top field.
    pub fn field_size(&self) -> u64 {
        self.field_size
    }

    pub fn top_modulus(&self) -> &[u64] {
        &self.top_modulus
    }

    pub fn base_modulus(&self) -> Option<&[u64]> {
        if self.base.e == 1 {
            None
        } else {
            Some(&self.base.modulus)
        }
    }

    pub fn primitive(&self) -> Ext {
        self.primitive.clone()
    }

    // ---- F_q scalar helpers (u64 encodings) ----

    #[inline]
    pub fn fq_add(&self, a: u64, b: u64) -> u64 {
        self.base.add(a, b)
    }

    #[inline]
    pub fn fq_sub(&self, a: u64, b: u64) -> u64 {
        self.base.sub(a, b)
    }

    #[inline]
    pub fn fq_mul(&self, a: u64, b: u64) -> u64 {
        self.base.mul(a, b)
    }

    #[inline]
    pub fn fq_neg(&self, a: u64) -> u64 {
        self.base.neg(a)
    }

    #[inline]
    pub fn fq_inv(&self, a: u64) -> u64 {
        self.base.inv(a)
    }

    // ---- F_{q^m} element constructors ----

    pub fn zero(&self) -> Ext {
        Ext { c: vec![0; self.m] }
    }

    pub fn one(&self) -> Ext {
        let mut c = vec![0; self.m];
        c[0] = 1;
        Ext { c }
    }

    /// Embeds an F_q encoding as a constant of the top field.
    pub fn embed_fq(&self, v: u64) -> Ext {
        debug_assert!(v < self.base.q);
        let mut c = vec![0; self.m];
        c[0] = v;
        Ext { c }
    }

    pub fn from_coords(&self, coords: Vec<u64>) -> Ext {
        assert_eq!(coords.len(), self.m);
        debug_assert!(coords.iter().all(|&x| x < self.base.q));
        Ext { c: coords }
    }

    /// Element with index v in coordinate order (digits of v base q).
    pub fn from_index(&self, v: u64) -> Ext {
        debug_assert!(v < self.field_size);
        Ext { c: base::unpack(v, self.base.q, self.m) }
    }

    pub fn to_index(&self, a: &Ext) -> u64 {
        base::pack(&a.c, self.base.q)
    }

    // ---- F_{q^m} arithmetic ----

    pub fn add(&self, a: &Ext, b: &Ext) -> Ext {
        let c = a.c.iter().zip(&b.c).map(|(&x, &y)| self.base.add(x, y)).collect();
        Ext { c }
    }

    pub fn sub(&self, a: &Ext, b: &Ext) -> Ext {
        let c = a.c.iter().zip(&b.c).map(|(&x, &y)| self.base.sub(x, y)).collect();
        Ext { c }
    }

    pub fn neg(&self, a: &Ext) -> Ext {
        Ext { c: a.c.iter().map(|&x| self.base.neg(x)).collect() }
    }

    pub fn mul(&self, a: &Ext, b: &Ext) -> Ext {
        let m = self.m;
        let mut buf = vec![0u64; 2 * m - 1];
        for (i, &x) in a.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.c.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                buf[i + j] = self.base.add(buf[i + j], self.base.mul(x, y));
            }
        }
        for i in m..2 * m - 1 {
            let carry = buf[i];
            if carry == 0 {
                continue;
            }
            let row = &self.reduction_rows[i - m];
            for j in 0..m {
                if row[j] != 0 {
                    buf[j] = self.base.add(buf[j], self.base.mul(carry, row[j]));
                }
            }
        }
        buf.truncate(m);
        Ext { c: buf }
    }

    /// Scales an element by an F_q encoding.
    pub fn scale_fq(&self, a: &Ext, s: u64) -> Ext {
        Ext { c: a.c.iter().map(|&x| self.base.mul(x, s)).collect() }
    }

    pub fn inv(&self, a: &Ext) -> Ext {
        assert!(!a.is_zero(), "inverse of zero");
        let inv = base::poly_invmod(&self.base, &a.c, &self.top_modulus)
            .expect("top modulus is irreducible");
        let mut c = inv;
        c.resize(self.m, 0);
        Ext { c }
    }

    pub fn pow(&self, a: &Ext, mut n: u64) -> Ext {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// theta^i(a) = a^(q^(r*i)). theta^0 is the identity.
    pub fn theta(&self, a: &Ext, i: usize) -> Ext {
        let mat = &self.theta_mats[(i * self.r) % self.m];
        self.apply_fq_matrix(mat, a)
    }

    /// theta^(-i).
    pub fn theta_inv(&self, a: &Ext, i: usize) -> Ext {
        let steps = (i * self.r) % self.m;
        self.apply_fq_matrix(&self.theta_mats[(self.m - steps) % self.m], a)
    }

    fn apply_fq_matrix(&self, mat: &[u64], a: &Ext) -> Ext {
        let m = self.m;
        let mut out = vec![0u64; m];
        for (col, &x) in a.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for row in 0..m {
                let coef = mat[row * m + col];
                if coef != 0 {
                    out[row] = self.base.add(out[row], self.base.mul(coef, x));
                }
            }
        }
        Ext { c: out }
    }

    /// The first l powers of the primitive element: representatives of
    /// pairwise distinct nontrivial conjugacy classes. Errors when l > q - 1.
    pub fn conjugacy_representatives(&self, l: usize) -> Result<Vec<Ext>, Error> {
        let available = (self.base.q - 1) as usize;
        if l > available {
            return Err(Error::NotEnoughClasses { requested: l, available });
        }
        let mut out = Vec::with_capacity(l);
        let mut cur = self.one();
        for _ in 0..l {
            out.push(cur.clone());
            cur = self.mul(&cur, &self.primitive);
        }
        Ok(out)
    }

    /// Uniform element of F_{q^m}.
    pub fn random(&self, rng: &mut impl rand::Rng) -> Ext {
        Ext { c: (0..self.m).map(|_| rng.gen_range(0..self.base.q)).collect() }
    }

    /// Uniform nonzero element.
    pub fn random_nonzero(&self, rng: &mut impl rand::Rng) -> Ext {
        loop {
            let a = self.random(rng);
            if !a.is_zero() {
                return a;
            }
        }
    }

    /// Renders an element as a polynomial in z over F_q.
    pub fn fmt_ext(&self, a: &Ext) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (i, &c) in a.c.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let t = match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "z".to_string(),
                (1, c) => format!("{c}z"),
                (i, 1) => format!("z^{i}"),
                (i, c) => format!("{c}z^{i}"),
            };
            terms.push(t);
        }
        terms.join(" + ")
    }
}

impl Ext {
    pub fn is_one(&self) -> bool {
        self.c.first() == Some(&1) && self.c[1..].iter().all(|&x| x == 0)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
