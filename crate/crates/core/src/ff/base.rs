//! Arithmetic in the base field F_q with q = p^e.
//!
//! Elements are stored as u64 encodings: the coefficient vector
//! (c_0, ..., c_{e-1}) over F_p packs to sum c_i * p^i. For e = 1 the
//! encoding is the residue itself.

use crate::Error;

use super::factor::is_prime;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseField {
    pub p: u64,
    pub e: usize,
    pub q: u64,
    /// Monic irreducible polynomial of degree e over F_p, ascending
    /// coefficients, length e + 1. Empty for e = 1.
    pub modulus: Vec<u64>,
}

impl BaseField {
    pub fn new(p: u64, e: usize) -> Result<Self, Error> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::BadDegree { e, m: 1 });
        }
        if p > (1u64 << 31) {
            return Err(Error::FieldTooLarge);
        }
        let mut q: u64 = 1;
        for _ in 0..e {
            q = q.checked_mul(p).ok_or(Error::FieldTooLarge)?;
        }
        if e == 1 {
            return Ok(BaseField { p, e, q, modulus: Vec::new() });
        }
        // Lexicographically smallest monic irreducible of degree e over F_p,
        // enumerating constant-first coefficient vectors.
        let prime_field = BaseField { p, e: 1, q: p, modulus: Vec::new() };
        let mut counter = 0u64;
        while counter < q {
            let mut f = unpack(counter, p, e);
            f.push(1);
            if poly_is_irreducible(&prime_field, &f) {
                return Ok(BaseField { p, e, q, modulus: f });
            }
            counter += 1;
        }
        Err(Error::NoIrreducible)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.e == 1 {
            let s = a + b;
            if s >= self.p { s - self.p } else { s }
        } else {
            let mut out = 0u64;
            let (mut a, mut b, mut scale) = (a, b, 1u64);
            for _ in 0..self.e {
                let s = (a % self.p + b % self.p) % self.p;
                out += s * scale;
                a /= self.p;
                b /= self.p;
                scale *= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if self.e == 1 {
            if a == 0 { 0 } else { self.p - a }
        } else {
            let mut out = 0u64;
            let (mut a, mut scale) = (a, 1u64);
            for _ in 0..self.e {
                let d = a % self.p;
                out += if d == 0 { 0 } else { self.p - d } * scale;
                a /= self.p;
                scale *= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.e == 1 {
            ((a as u128 * b as u128) % self.p as u128) as u64
        } else {
            let da = unpack(a, self.p, self.e);
            let db = unpack(b, self.p, self.e);
            let mut buf = vec![0u64; 2 * self.e - 1];
            for (i, &x) in da.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in db.iter().enumerate() {
                    buf[i + j] = (buf[i + j] + x * y) % self.p;
                }
            }
            // reduce by the monic base modulus
            for i in (self.e..buf.len()).rev() {
                let c = buf[i];
                if c == 0 {
                    continue;
                }
                buf[i] = 0;
                for j in 0..self.e {
                    let sub = (self.modulus[j] * c) % self.p;
                    buf[i - self.e + j] = (buf[i - self.e + j] + self.p - sub) % self.p;
                }
            }
            pack(&buf[..self.e], self.p)
        }
    }

    pub fn pow(&self, a: u64, mut n: u64) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero in F_q");
        self.pow(a, self.q - 2)
    }
}

pub fn unpack(v: u64, p: u64, e: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(e);
    let mut v = v;
    for _ in 0..e {
        out.push(v % p);
        v /= p;
    }
    out
}

pub fn pack(digits: &[u64], p: u64) -> u64 {
    let mut out = 0u64;
    for &d in digits.iter().rev() {
        out = out * p + d;
    }
    out
}

// -------- dense polynomials over F_q (ascending u64 encodings) --------

pub fn poly_trim(f: &mut Vec<u64>) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

pub fn poly_deg(f: &[u64]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

pub fn poly_add(bf: &BaseField, f: &[u64], g: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; f.len().max(g.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let a = f.get(i).copied().unwrap_or(0);
        let b = g.get(i).copied().unwrap_or(0);
        *o = bf.add(a, b);
    }
    poly_trim(&mut out);
    out
}

pub fn poly_sub(bf: &BaseField, f: &[u64], g: &[u64]) -> Vec<u64> {
    let neg: Vec<u64> = g.iter().map(|&c| bf.neg(c)).collect();
    poly_add(bf, f, &neg)
}

pub fn poly_mul(bf: &BaseField, f: &[u64], g: &[u64]) -> Vec<u64> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = bf.add(out[i + j], bf.mul(a, b));
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of f modulo g (g nonzero).
pub fn poly_rem(bf: &BaseField, f: &[u64], g: &[u64]) -> Vec<u64> {
    let dg = poly_deg(g).expect("poly_rem by zero");
    let lead_inv = bf.inv(g[dg]);
    let mut rem: Vec<u64> = f.to_vec();
    poly_trim(&mut rem);
    while let Some(dr) = poly_deg(&rem) {
        if dr < dg {
            break;
        }
        let c = bf.mul(rem[dr], lead_inv);
        let shift = dr - dg;
        for j in 0..=dg {
            let sub = bf.mul(c, g[j]);
            rem[shift + j] = bf.sub(rem[shift + j], sub);
        }
        poly_trim(&mut rem);
    }
    rem
}

pub fn poly_mulmod(bf: &BaseField, f: &[u64], g: &[u64], modulus: &[u64]) -> Vec<u64> {
    poly_rem(bf, &poly_mul(bf, f, g), modulus)
}

pub fn poly_powmod(bf: &BaseField, f: &[u64], mut n: u64, modulus: &[u64]) -> Vec<u64> {
    let mut base = poly_rem(bf, f, modulus);
    let mut acc = vec![1u64];
    while n > 0 {
        if n & 1 == 1 {
            acc = poly_mulmod(bf, &acc, &base, modulus);
        }
        base = poly_mulmod(bf, &base, &base, modulus);
        n >>= 1;
    }
    acc
}

pub fn poly_gcd(bf: &BaseField, f: &[u64], g: &[u64]) -> Vec<u64> {
    let mut a = f.to_vec();
    let mut b = g.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(bf, &a, &b);
        a = b;
        b = r;
    }
    if let Some(d) = poly_deg(&a) {
        let inv = bf.inv(a[d]);
        for c in a.iter_mut() {
            *c = bf.mul(*c, inv);
        }
    }
    a
}

/// Extended Euclid: returns u with u*f = 1 mod g, for f invertible mod g.
pub fn poly_invmod(bf: &BaseField, f: &[u64], g: &[u64]) -> Option<Vec<u64>> {
    let mut r0 = g.to_vec();
    let mut r1 = poly_rem(bf, f, g);
    let mut s0: Vec<u64> = Vec::new();
    let mut s1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        // r0 = q*r1 + r2
        let d1 = poly_deg(&r1).unwrap();
        let lead_inv = bf.inv(r1[d1]);
        let mut q = vec![0u64; r0.len().saturating_sub(d1)];
        let mut rem = r0.clone();
        while let Some(dr) = poly_deg(&rem) {
            if dr < d1 {
                break;
            }
            let c = bf.mul(rem[dr], lead_inv);
            q[dr - d1] = c;
            for j in 0..=d1 {
                let sub = bf.mul(c, r1[j]);
                rem[dr - d1 + j] = bf.sub(rem[dr - d1 + j], sub);
            }
            poly_trim(&mut rem);
        }
        poly_trim(&mut q);
        let s2 = poly_sub(bf, &s0, &poly_mul(bf, &q, &s1));
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
    }
    let d = poly_deg(&r0)?;
    if d != 0 {
        return None; // gcd not constant: f not invertible
    }
    let inv = bf.inv(r0[0]);
    let mut out = s0;
    for c in out.iter_mut() {
        *c = bf.mul(*c, inv);
    }
    poly_trim(&mut out);
    Some(out)
}

/// Deterministic irreducibility test for a monic f of degree n >= 1 over F_q:
/// x^(q^n) = x mod f, and gcd(x^(q^(n/rho)) - x, f) = 1 for every prime rho | n.
pub fn poly_is_irreducible(bf: &BaseField, f: &[u64]) -> bool {
    let n = match poly_deg(f) {
        Some(0) | None => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let frob = |steps: usize| -> Vec<u64> {
        let mut t = poly_rem(bf, &x, f);
        for _ in 0..steps {
            t = poly_powmod(bf, &t, bf.q, f);
        }
        t
    };
    if frob(n) != poly_rem(bf, &x, f) {
        return false;
    }
    for rho in super::factor::prime_factors_small(n) {
        let t = frob(n / rho);
        let diff = poly_sub(bf, &t, &x);
        let g = poly_gcd(bf, &diff, f);
        if poly_deg(&g) != Some(0) {
            return false;
        }
    }
    true
}
