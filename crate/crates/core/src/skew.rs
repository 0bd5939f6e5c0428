//! The skew-polynomial ring F_{q^m}[x; theta] with zero derivation.
//!
//! Multiplication follows x * a = theta(a) * x. The operator
//! D_a(b) = theta(b) * a drives generalized operator evaluation, minimal
//! polynomials (least common left multiples of linear factors), skew
//! interpolation, and generalized Moore matrices.

use crate::ff::{Ext, FieldTower, LengthPartition, Mat};
use crate::Error;

/// Degree with deg(0) = -infinity, ordered below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    NegInf,
    Finite(i64),
}

impl Degree {
    pub fn plus(self, shift: i64) -> Degree {
        match self {
            Degree::NegInf => Degree::NegInf,
            Degree::Finite(d) => Degree::Finite(d + shift),
        }
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

/// Skew polynomial with ascending coefficients; coeffs[i] multiplies x^i.
/// Canonical form: no trailing zero coefficient, zero is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewPoly {
    coeffs: Vec<Ext>,
}

impl SkewPoly {
    pub fn zero() -> Self {
        SkewPoly { coeffs: Vec::new() }
    }

    pub fn one(tower: &FieldTower) -> Self {
        SkewPoly { coeffs: vec![tower.one()] }
    }

    pub fn constant(c: Ext) -> Self {
        let mut p = SkewPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    /// x^d with coefficient c.
    pub fn monomial(c: Ext, d: usize) -> Self {
        if c.is_zero() {
            return SkewPoly::zero();
        }
        let m = c.coords().len();
        let mut coeffs = vec![Ext { c: vec![0; m] }; d];
        coeffs.push(c);
        SkewPoly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<Ext>) -> Self {
        let mut p = SkewPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, Ext::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::NegInf
        } else {
            Degree::Finite(self.coeffs.len() as i64 - 1)
        }
    }

    pub fn coeffs(&self) -> &[Ext] {
        &self.coeffs
    }

    /// Coefficient of x^i, zero beyond the degree.
    pub fn coeff(&self, i: usize, tower: &FieldTower) -> Ext {
        self.coeffs.get(i).cloned().unwrap_or_else(|| tower.zero())
    }

    pub fn lead(&self) -> Option<&Ext> {
        self.coeffs.last()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn add(&self, tower: &FieldTower, rhs: &SkewPoly) -> SkewPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = rhs.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => tower.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        SkewPoly::from_coeffs(out)
    }

    pub fn sub(&self, tower: &FieldTower, rhs: &SkewPoly) -> SkewPoly {
        self.add(tower, &rhs.neg(tower))
    }

    pub fn neg(&self, tower: &FieldTower) -> SkewPoly {
        SkewPoly { coeffs: self.coeffs.iter().map(|c| tower.neg(c)).collect() }
    }

    /// Left multiplication by a constant: c * f.
    pub fn scale_left(&self, tower: &FieldTower, c: &Ext) -> SkewPoly {
        SkewPoly::from_coeffs(self.coeffs.iter().map(|a| tower.mul(c, a)).collect())
    }

    /// Left multiplication by c * x^shift, commuting through theta.
    pub fn shift_scale_left(&self, tower: &FieldTower, c: &Ext, shift: usize) -> SkewPoly {
        if self.is_zero() || c.is_zero() {
            return SkewPoly::zero();
        }
        let mut out = vec![tower.zero(); self.coeffs.len() + shift];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[i + shift] = tower.mul(c, &tower.theta(a, shift));
        }
        SkewPoly::from_coeffs(out)
    }

    /// Left multiplication by x.
    pub fn mul_x_left(&self, tower: &FieldTower) -> SkewPoly {
        if self.is_zero() {
            return SkewPoly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(tower.zero());
        for a in &self.coeffs {
            out.push(tower.theta(a, 1));
        }
        SkewPoly::from_coeffs(out)
    }

    /// Human-readable form, descending powers of x, coefficients in z.
    pub fn render(&self, tower: &FieldTower) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = tower.fmt_ext(c);
            let coef = if cs.contains(" + ") { format!("({cs})") } else { cs };
            let term = match (i, coef.as_str()) {
                (0, _) => coef,
                (1, "1") => "x".to_string(),
                (1, _) => format!("{coef}x"),
                (i, "1") => format!("x^{i}"),
                (i, _) => format!("{coef}x^{i}"),
            };
            terms.push(term);
        }
        terms.join(" + ")
    }

    /// Normalizes to a monic polynomial by left scaling; zero stays zero.
    pub fn monic(&self, tower: &FieldTower) -> SkewPoly {
        match self.lead() {
            None => SkewPoly::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale_left(tower, &tower.inv(l)),
        }
    }
}

/// Product under x a = theta(a) x: (f g)_[i+j] += f_i * theta^i(g_j).
pub fn skew_mul(tower: &FieldTower, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
    if f.is_zero() || g.is_zero() {
        return SkewPoly::zero();
    }
    let df = f.coeffs.len();
    let dg = g.coeffs.len();
    let mut out = vec![tower.zero(); df + dg - 1];
    for (i, fi) in f.coeffs.iter().enumerate() {
        if fi.is_zero() {
            continue;
        }
        for (j, gj) in g.coeffs.iter().enumerate() {
            if gj.is_zero() {
                continue;
            }
            let term = tower.mul(fi, &tower.theta(gj, i));
            out[i + j] = tower.add(&out[i + j], &term);
        }
    }
    SkewPoly::from_coeffs(out)
}

/// Right division: f = quotient * g + remainder with deg(remainder) < deg(g).
pub fn right_divide(
    tower: &FieldTower,
    f: &SkewPoly,
    g: &SkewPoly,
) -> Result<(SkewPoly, SkewPoly), Error> {
    let Some(lg) = g.lead() else {
        return Err(Error::DivisionByZero);
    };
    let dg = g.coeffs.len() - 1;
    let mut rem = f.clone();
    let mut quot = vec![tower.zero(); f.coeffs.len().saturating_sub(dg)];
    while rem.coeffs.len() > dg && !rem.is_zero() {
        let dr = rem.coeffs.len() - 1;
        let shift = dr - dg;
        // q_shift * theta^shift(lead g) = lead rem
        let q = tower.mul(rem.lead().unwrap(), &tower.inv(&tower.theta(lg, shift)));
        quot[shift] = q.clone();
        let sub = g.shift_scale_left(tower, &q, shift);
        rem = rem.sub(tower, &sub);
        if rem.coeffs.len() > dr {
            unreachable!("division must reduce the degree");
        }
    }
    Ok((SkewPoly::from_coeffs(quot), rem))
}

/// Remainder of the right division, f mod_r g.
pub fn mod_r(tower: &FieldTower, f: &SkewPoly, g: &SkewPoly) -> Result<SkewPoly, Error> {
    Ok(right_divide(tower, f, g)?.1)
}

/// Left division: f = g * quotient + remainder with deg(remainder) < deg(g).
pub fn left_divide(
    tower: &FieldTower,
    f: &SkewPoly,
    g: &SkewPoly,
) -> Result<(SkewPoly, SkewPoly), Error> {
    let Some(lg) = g.lead() else {
        return Err(Error::DivisionByZero);
    };
    let dg = g.coeffs.len() - 1;
    let lg_inv = tower.inv(lg);
    let mut rem = f.clone();
    let mut quot = vec![tower.zero(); f.coeffs.len().saturating_sub(dg)];
    while rem.coeffs.len() > dg && !rem.is_zero() {
        let dr = rem.coeffs.len() - 1;
        let shift = dr - dg;
        // lead g * theta^(dg)(q_shift) = lead rem
        let q = tower.theta_inv(&tower.mul(&lg_inv, rem.lead().unwrap()), dg);
        quot[shift] = q.clone();
        let sub = skew_mul(tower, g, &SkewPoly::monomial(q, shift));
        rem = rem.sub(tower, &sub);
    }
    Ok((SkewPoly::from_coeffs(quot), rem))
}

/// Evaluation points grouped by a length partition, one evaluation parameter
/// per block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalParams {
    points: Vec<Ext>,
    partition: LengthPartition,
    params: Vec<Ext>,
}

impl EvalParams {
    pub fn new(
        points: Vec<Ext>,
        partition: LengthPartition,
        params: Vec<Ext>,
    ) -> Result<Self, Error> {
        if partition.total() != points.len() {
            return Err(Error::PartitionMismatch {
                expected: partition.total(),
                got: points.len(),
            });
        }
        if params.len() != partition.num_blocks() {
            return Err(Error::LengthMismatch {
                expected: partition.num_blocks(),
                got: params.len(),
            });
        }
        Ok(EvalParams { points, partition, params })
    }

    pub fn points(&self) -> &[Ext] {
        &self.points
    }

    pub fn partition(&self) -> &LengthPartition {
        &self.partition
    }

    pub fn params(&self) -> &[Ext] {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Iterates (point, parameter) pairs blockwise.
    pub fn pairs(&self) -> impl Iterator<Item = (&Ext, &Ext)> {
        let offsets = self.partition.offsets();
        let params = &self.params;
        let points = &self.points;
        (0..self.partition.num_blocks()).flat_map(move |i| {
            (offsets[i]..offsets[i + 1]).map(move |idx| (&points[idx], &params[i]))
        })
    }
}

/// D_a^i(b) = theta^i(b) * N_i(a) with the truncated norm
/// N_i(a) = prod_{k=0}^{i-1} theta^k(a).
pub fn op_power(tower: &FieldTower, a: &Ext, b: &Ext, i: usize) -> Ext {
    let mut v = b.clone();
    for _ in 0..i {
        v = op_apply(tower, a, &v);
    }
    v
}

/// One operator step D_a(b) = theta(b) * a.
#[inline]
pub fn op_apply(tower: &FieldTower, a: &Ext, b: &Ext) -> Ext {
    tower.mul(&tower.theta(b, 1), a)
}

fn op_eval_single(tower: &FieldTower, f: &SkewPoly, b: &Ext, a: &Ext) -> Ext {
    let mut acc = tower.zero();
    let mut v = b.clone();
    for (i, fi) in f.coeffs.iter().enumerate() {
        if i > 0 {
            v = op_apply(tower, a, &v);
        }
        if !fi.is_zero() {
            acc = tower.add(&acc, &tower.mul(fi, &v));
        }
    }
    acc
}

/// Generalized operator evaluation of f at every point, blockwise with the
/// block's evaluation parameter.
pub fn op_eval(tower: &FieldTower, f: &SkewPoly, ep: &EvalParams) -> Vec<Ext> {
    ep.pairs().map(|(b, a)| op_eval_single(tower, f, b, a)).collect()
}

/// Minimal monic skew polynomial vanishing on every block of ep under its
/// parameter, computed by the iterative lclm update. Zero points are skipped.
pub fn min_poly(tower: &FieldTower, ep: &EvalParams) -> SkewPoly {
    let mut m = SkewPoly::one(tower);
    for (b, a) in ep.pairs() {
        let v = op_eval_single(tower, &m, b, a);
        if v.is_zero() {
            continue;
        }
        // m <- (x - D_a(v) / v) * m
        let c = tower.mul(&op_apply(tower, a, &v), &tower.inv(&v));
        let shifted = m.mul_x_left(tower);
        m = shifted.sub(tower, &m.scale_left(tower, &c));
    }
    m
}

/// The d x n generalized Moore matrix: row i of block j holds
/// D_{a_j}^i applied to the block's points.
pub fn moore_matrix(tower: &FieldTower, d: usize, ep: &EvalParams) -> Mat {
    assert!(d >= 1);
    let n = ep.len();
    let mut out = Mat::zero(tower, d, n);
    let offsets = ep.partition().offsets();
    for block in 0..ep.partition().num_blocks() {
        let a = &ep.params()[block];
        for col in offsets[block]..offsets[block + 1] {
            let mut v = ep.points()[col].clone();
            *out.at_mut(0, col) = v.clone();
            for row in 1..d {
                v = op_apply(tower, a, &v);
                *out.at_mut(row, col) = v.clone();
            }
        }
    }
    out
}

/// Unique skew interpolation polynomial of degree < n through the values c,
/// solved from the generalized Moore system. Errors when the system is
/// singular, which signals violated preconditions (dependent block entries or
/// shared conjugacy classes).
pub fn interp_poly(tower: &FieldTower, ep: &EvalParams, values: &[Ext]) -> Result<SkewPoly, Error> {
    let n = ep.len();
    if values.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: values.len() });
    }
    if n == 0 {
        return Ok(SkewPoly::zero());
    }
    let moore = moore_matrix(tower, n, ep);
    let system = moore.transpose(tower);
    let coeffs = system.solve(tower, values).ok_or(Error::SingularSystem)?;
    Ok(SkewPoly::from_coeffs(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_tower;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn random_poly(
        tower: &FieldTower,
        rng: &mut impl Rng,
        max_deg: usize,
    ) -> SkewPoly {
        let d = rng.gen_range(0..=max_deg);
        SkewPoly::from_coeffs((0..=d).map(|_| tower.random(rng)).collect())
    }

    #[test]
    fn commutation_rule() {
        let f4 = make_tower(2, 1, 2, 1).unwrap();
        let z = f4.from_index(2);
        let x = SkewPoly::monomial(f4.one(), 1);
        let prod = skew_mul(&f4, &x, &SkewPoly::constant(z.clone()));
        // x * z = theta(z) x = (z + 1) x
        assert_eq!(prod, SkewPoly::monomial(f4.from_index(3), 1));
    }

    #[test]
    fn identity_element() {
        let t = make_tower(3, 1, 2, 1).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        let one = SkewPoly::one(&t);
        for _ in 0..50 {
            let f = random_poly(&t, &mut rng, 6);
            assert_eq!(skew_mul(&t, &f, &one), f);
            assert_eq!(skew_mul(&t, &one, &f), f);
        }
    }

    #[test]
    fn zx_squared_is_x_squared() {
        let f4 = make_tower(2, 1, 2, 1).unwrap();
        let z = f4.from_index(2);
        let zx = SkewPoly::monomial(z, 1);
        // z * theta(z) = z * (z+1) = z^2 + z = 1
        assert_eq!(skew_mul(&f4, &zx, &zx), SkewPoly::monomial(f4.one(), 2));
    }

    #[test]
    fn ring_axioms_sampled() {
        let t = make_tower(3, 1, 2, 1).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(2);
        for _ in 0..1000 {
            let f = random_poly(&t, &mut rng, 8);
            let g = random_poly(&t, &mut rng, 8);
            let h = random_poly(&t, &mut rng, 8);
            assert_eq!(
                skew_mul(&t, &f, &skew_mul(&t, &g, &h)),
                skew_mul(&t, &skew_mul(&t, &f, &g), &h)
            );
            assert_eq!(
                skew_mul(&t, &f, &g.add(&t, &h)),
                skew_mul(&t, &f, &g).add(&t, &skew_mul(&t, &f, &h))
            );
        }
    }

    #[test]
    fn degrees_add_no_zero_divisors() {
        let t = make_tower(2, 1, 4, 1).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let f = random_poly(&t, &mut rng, 7);
            let g = random_poly(&t, &mut rng, 7);
            if f.is_zero() || g.is_zero() {
                continue;
            }
            let (df, dg) = (f.degree().finite().unwrap(), g.degree().finite().unwrap());
            assert_eq!(skew_mul(&t, &f, &g).degree(), Degree::Finite(df + dg));
        }
    }

    #[test]
    fn right_division_recomposes() {
        let t = make_tower(3, 1, 2, 1).unwrap(); // F_9
        let mut rng = ChaCha12Rng::seed_from_u64(4);
        for _ in 0..1000 {
            let f = random_poly(&t, &mut rng, 6);
            let mut g = random_poly(&t, &mut rng, 6);
            if g.is_zero() {
                g = SkewPoly::one(&t);
            }
            let (q, r) = right_divide(&t, &f, &g).unwrap();
            assert!(r.degree() < g.degree());
            assert_eq!(skew_mul(&t, &q, &g).add(&t, &r), f);
        }
    }

    #[test]
    fn left_division_recomposes() {
        let t = make_tower(3, 1, 2, 1).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let f = random_poly(&t, &mut rng, 6);
            let mut g = random_poly(&t, &mut rng, 6);
            if g.is_zero() {
                g = SkewPoly::one(&t);
            }
            let (q, r) = left_divide(&t, &f, &g).unwrap();
            assert!(r.degree() < g.degree());
            assert_eq!(skew_mul(&t, &g, &q).add(&t, &r), f);
        }
    }

    #[test]
    fn left_division_of_a_product_is_exact() {
        let t = make_tower(2, 1, 4, 3).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(6);
        for _ in 0..300 {
            let g = {
                let mut g = random_poly(&t, &mut rng, 5);
                while g.is_zero() {
                    g = random_poly(&t, &mut rng, 5);
                }
                g
            };
            let h = random_poly(&t, &mut rng, 5);
            let f = skew_mul(&t, &g, &h);
            let (q, r) = left_divide(&t, &f, &g).unwrap();
            assert!(r.is_zero());
            assert_eq!(q, h);
        }
    }

    #[test]
    fn division_edge_cases() {
        let t = make_tower(3, 1, 2, 1).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        let f = random_poly(&t, &mut rng, 4);
        let (q, r) = right_divide(&t, &f, &f.clone()).unwrap();
        if !f.is_zero() {
            assert!(q.is_one());
            assert!(r.is_zero());
        }
        let low = SkewPoly::constant(t.random(&mut rng));
        let high = SkewPoly::monomial(t.one(), 3);
        let (q, r) = right_divide(&t, &low, &high).unwrap();
        assert!(q.is_zero());
        assert_eq!(r, low);
        assert!(right_divide(&t, &f, &SkewPoly::zero()).is_err());
        assert!(left_divide(&t, &f, &SkewPoly::zero()).is_err());
    }

    #[test]
    fn op_power_examples() {
        let f4 = make_tower(2, 1, 2, 1).unwrap();
        let z = f4.from_index(2);
        let b = f4.random(&mut ChaCha12Rng::seed_from_u64(8));
        assert_eq!(op_power(&f4, &z, &b, 0), b);
        // a = 1: D_1^i(b) = theta^i(b)
        for i in 0..4 {
            assert_eq!(op_power(&f4, &f4.one(), &b, i), f4.theta(&b, i));
        }
        // (a = z, b = 1, i = 2): theta(1)*z then theta(z)*z = (z+1)z = 1
        assert!(op_power(&f4, &z, &f4.one(), 2).is_one());
    }

    #[test]
    fn op_eval_basics() {
        let f4 = make_tower(2, 1, 2, 1).unwrap();
        let z = f4.from_index(2);
        let part = LengthPartition::new(vec![1]).unwrap();
        let ep = EvalParams::new(vec![z.clone()], part, vec![f4.one()]).unwrap();
        // constant polynomial: f(b) = c * b
        let c = f4.from_index(3);
        let f = SkewPoly::constant(c.clone());
        assert_eq!(op_eval(&f4, &f, &ep), vec![f4.mul(&c, &z)]);
        // f = x at b = z with a = 1: theta(z) = z + 1
        let x = SkewPoly::monomial(f4.one(), 1);
        assert_eq!(op_eval(&f4, &x, &ep), vec![f4.from_index(3)]);
    }

    #[test]
    fn product_rule() {
        let t = make_tower(3, 1, 2, 1).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(9);
        let part = LengthPartition::new(vec![1]).unwrap();
        for _ in 0..1000 {
            let f = random_poly(&t, &mut rng, 5);
            let g = random_poly(&t, &mut rng, 5);
            let b = t.random(&mut rng);
            let a = t.random_nonzero(&mut rng);
            let ep = EvalParams::new(vec![b.clone()], part.clone(), vec![a.clone()]).unwrap();
            let lhs = op_eval(&t, &skew_mul(&t, &f, &g), &ep)[0].clone();
            let inner = op_eval(&t, &g, &ep)[0].clone();
            let ep2 = EvalParams::new(vec![inner], part.clone(), vec![a]).unwrap();
            let rhs = op_eval(&t, &f, &ep2)[0].clone();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn op_eval_is_fq_linear_in_the_point() {
        let t = make_tower(3, 1, 3, 1).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(10);
        let part = LengthPartition::new(vec![1]).unwrap();
        for _ in 0..300 {
            let f = random_poly(&t, &mut rng, 4);
            let a = t.random_nonzero(&mut rng);
            let b1 = t.random(&mut rng);
            let b2 = t.random(&mut rng);
            let lam = rng.gen_range(0..t.q());
            let combo = t.add(&t.scale_fq(&b1, lam), &b2);
            let ev = |b: &Ext| {
                let ep = EvalParams::new(vec![b.clone()], part.clone(), vec![a.clone()]).unwrap();
                op_eval(&t, &f, &ep)[0].clone()
            };
            assert_eq!(ev(&combo), t.add(&t.scale_fq(&ev(&b1), lam), &ev(&b2)));
        }
    }

    #[test]
    fn min_poly_single_point() {
        let f4 = make_tower(2, 1, 2, 1).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        let part = LengthPartition::new(vec![1]).unwrap();
        for _ in 0..50 {
            let b = f4.random_nonzero(&mut rng);
            let a = f4.random_nonzero(&mut rng);
            let ep = EvalParams::new(vec![b.clone()], part.clone(), vec![a.clone()]).unwrap();
            let m = min_poly(&f4, &ep);
            // x - D_a(b)/b
            let expected = SkewPoly::from_coeffs(vec![
                f4.neg(&f4.mul(&op_apply(&f4, &a, &b), &f4.inv(&b))),
                f4.one(),
            ]);
            assert_eq!(m, expected);
            assert!(op_eval(&f4, &m, &ep)[0].is_zero());
        }
    }

    #[test]
    fn min_poly_of_zero_point_is_one() {
        let f4 = make_tower(2, 1, 2, 1).unwrap();
        let part = LengthPartition::new(vec![1]).unwrap();
        let ep = EvalParams::new(vec![f4.zero()], part, vec![f4.one()]).unwrap();
        assert!(min_poly(&f4, &ep).is_one());
    }

    #[test]
    fn min_poly_annihilates_and_has_tight_degree() {
        let f4 = make_tower(2, 1, 2, 1).unwrap();
        let z = f4.from_index(2);
        let part = LengthPartition::new(vec![2]).unwrap();
        let ep = EvalParams::new(vec![f4.one(), z.clone()], part, vec![f4.one()]).unwrap();
        let m = min_poly(&f4, &ep);
        assert_eq!(m.degree(), Degree::Finite(2));
        assert!(m.lead().unwrap().is_one());
        assert!(op_eval(&f4, &m, &ep).iter().all(Ext::is_zero));
    }

    #[test]
    fn min_poly_degree_drops_for_dependent_points() {
        let t = make_tower(3, 1, 4, 1).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(12);
        let xi = t.conjugacy_representatives(1).unwrap();
        let part = LengthPartition::new(vec![3]).unwrap();
        for _ in 0..50 {
            let b1 = t.random_nonzero(&mut rng);
            let b2 = t.random_nonzero(&mut rng);
            // third point F_q-dependent on the first two
            let b3 = t.add(&b1, &t.scale_fq(&b2, 2));
            let ep =
                EvalParams::new(vec![b1, b2, b3], part.clone(), vec![xi[0].clone()]).unwrap();
            let m = min_poly(&t, &ep);
            assert!(m.degree() < Degree::Finite(3));
            assert!(op_eval(&t, &m, &ep).iter().all(Ext::is_zero));
        }
    }

    #[test]
    fn interp_round_trip() {
        let t = make_tower(3, 1, 4, 1).unwrap(); // F_81
        let mut rng = ChaCha12Rng::seed_from_u64(13);
        let xi = t.conjugacy_representatives(2).unwrap();
        let part = LengthPartition::new(vec![2, 2]).unwrap();
        // independent points per block: basis monomials
        let pts = vec![t.from_index(1), t.from_index(3), t.from_index(3), t.from_index(9)];
        let ep = EvalParams::new(pts, part, xi).unwrap();
        for _ in 0..1000 {
            let f = random_poly(&t, &mut rng, 3);
            let vals = op_eval(&t, &f, &ep);
            let back = interp_poly(&t, &ep, &vals).unwrap();
            assert_eq!(back, f);
        }
        // zero values give the zero polynomial
        let zeroes = vec![t.zero(); 4];
        assert!(interp_poly(&t, &ep, &zeroes).unwrap().is_zero());
    }

    #[test]
    fn interp_single_point() {
        let t = make_tower(3, 1, 2, 1).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(14);
        let part = LengthPartition::new(vec![1]).unwrap();
        for _ in 0..50 {
            let b = t.random_nonzero(&mut rng);
            let c = t.random(&mut rng);
            let ep = EvalParams::new(vec![b.clone()], part.clone(), vec![t.one()]).unwrap();
            let f = interp_poly(&t, &ep, &[c.clone()]).unwrap();
            assert!(f.degree() <= Degree::Finite(0));
            assert_eq!(f, SkewPoly::constant(t.mul(&c, &t.inv(&b))));
        }
    }

    #[test]
    fn moore_matrix_shape_and_rank() {
        let f4 = make_tower(2, 1, 2, 1).unwrap();
        let z = f4.from_index(2);
        let gamma = f4.primitive();
        // d = 1 gives the row of points
        let part1 = LengthPartition::new(vec![1]).unwrap();
        let ep1 = EvalParams::new(vec![z.clone()], part1.clone(), vec![gamma.clone()]).unwrap();
        let m1 = moore_matrix(&f4, 1, &ep1);
        assert_eq!((m1.rows(), m1.cols()), (1, 1));
        assert_eq!(m1.at(0, 0), &z);
        // d = 2, b = (1), a = gamma: column (1, gamma)
        let ep2 = EvalParams::new(vec![f4.one()], part1, vec![gamma.clone()]).unwrap();
        let m2 = moore_matrix(&f4, 2, &ep2);
        assert!(m2.at(0, 0).is_one());
        assert_eq!(m2.at(1, 0), &gamma);
        // d = 3 over independent points: rank min(3, 2) = 2
        let part2 = LengthPartition::new(vec![2]).unwrap();
        let ep3 = EvalParams::new(vec![f4.one(), z], part2, vec![gamma]).unwrap();
        assert_eq!(moore_matrix(&f4, 3, &ep3).rank(&f4), 2);
    }

    #[test]
    fn moore_rank_is_min_d_n_under_preconditions() {
        let t = make_tower(3, 1, 4, 1).unwrap();
        let xi = t.conjugacy_representatives(2).unwrap();
        let part = LengthPartition::new(vec![2, 2]).unwrap();
        let pts = vec![t.from_index(1), t.from_index(3), t.from_index(3), t.from_index(9)];
        let ep = EvalParams::new(pts, part, xi).unwrap();
        for d in 1..=6 {
            assert_eq!(moore_matrix(&t, d, &ep).rank(&t), d.min(4));
        }
    }

    #[test]
    fn moore_rank_drops_for_shared_conjugacy_class() {
        let t = make_tower(3, 1, 4, 1).unwrap();
        let gamma = t.primitive();
        // xi_2 = theta(c) * xi_1 * c^(-1) lies in the class of xi_1
        let c = t.from_index(7);
        let xi1 = gamma.clone();
        let xi2 = t.mul(&t.mul(&t.theta(&c, 1), &xi1), &t.inv(&c));
        let part = LengthPartition::new(vec![2, 2]).unwrap();
        let pts = vec![t.from_index(1), t.from_index(3), t.from_index(1), t.from_index(3)];
        let ep = EvalParams::new(pts, part, vec![xi1, xi2]).unwrap();
        let d = 4;
        assert!(moore_matrix(&t, d, &ep).rank(&t) < 4);
    }

    #[test]
    fn interp_rejects_singular_systems() {
        let t = make_tower(3, 1, 4, 1).unwrap();
        let xi = t.conjugacy_representatives(1).unwrap();
        let part = LengthPartition::new(vec![2]).unwrap();
        // dependent points make the Moore system singular
        let b1 = t.from_index(3);
        let ep = EvalParams::new(vec![b1.clone(), b1.clone()], part, xi).unwrap();
        let vals = vec![t.one(), t.zero()];
        assert!(matches!(interp_poly(&t, &ep, &vals), Err(Error::SingularSystem)));
    }
}
