//! The interleaved sum-rank channel: weight computation, exact uniform
//! sampling of errors with prescribed weight, and the rank factorization
//! e = a * B.
//!
//! An interleaved vector x = (x_1 | ... | x_s) regroups into per-partition
//! groups (x_1^(i) | ... | x_s^(i)); its weight is the sum of the F_q-ranks
//! of these groups. Error sampling weights every rank partition by the exact
//! count of configurations (a Gaussian-binomial count per block), so the
//! produced errors are uniform over the whole weight-t sphere.

use num_bigint::{BigUint, RandBigInt};
use rand::Rng;

use crate::code::HilrsCode;
use crate::ff::{rank_over_base, Ext, FieldTower, FqMat, LengthPartition, Mat};
use crate::skew::EvalParams;
use crate::Error;

/// Sum-rank weight of x with respect to the partition: the sum of per-block
/// F_q-ranks.
pub fn sum_rank_weight(
    tower: &FieldTower,
    x: &[Ext],
    partition: &LengthPartition,
) -> Result<usize, Error> {
    if x.len() != partition.total() {
        return Err(Error::LengthMismatch { expected: partition.total(), got: x.len() });
    }
    let offsets = partition.offsets();
    let mut w = 0;
    for i in 0..partition.num_blocks() {
        let block = &x[offsets[i]..offsets[i + 1]];
        w += rank_over_base(tower, &Mat::from_rows(vec![block.to_vec()]));
    }
    Ok(w)
}

/// Sum-rank weight of an s-interleaved vector with respect to the
/// block-ordered partition (s*n_1, ..., s*n_l): same-indexed blocks of the
/// s components are regrouped before taking ranks.
pub fn interleaved_weight(
    tower: &FieldTower,
    x: &[Ext],
    s: usize,
    partition: &LengthPartition,
) -> Result<usize, Error> {
    let n = partition.total();
    if x.len() != s * n {
        return Err(Error::LengthMismatch { expected: s * n, got: x.len() });
    }
    let offsets = partition.offsets();
    let mut w = 0;
    for i in 0..partition.num_blocks() {
        let mut group = Vec::with_capacity(s * partition.parts()[i]);
        for j in 0..s {
            group.extend_from_slice(&x[j * n + offsets[i]..j * n + offsets[i + 1]]);
        }
        w += rank_over_base(tower, &Mat::from_rows(vec![group]));
    }
    Ok(w)
}

/// Distance induced by the interleaved sum-rank weight.
pub fn interleaved_distance(
    tower: &FieldTower,
    x: &[Ext],
    y: &[Ext],
    s: usize,
    partition: &LengthPartition,
) -> Result<usize, Error> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { expected: x.len(), got: y.len() });
    }
    let diff: Vec<Ext> = x.iter().zip(y).map(|(a, b)| tower.sub(a, b)).collect();
    interleaved_weight(tower, &diff, s, partition)
}

/// Rank factorization e = a * B of an interleaved error: per partition block
/// i, the error values a^(i) are an F_q-basis of the entries of the regrouped
/// block and the error locations B^(i) = (B_1^(i) | ... | B_s^(i)) hold their
/// F_q-coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErrorDecomposition {
    rank_partition: Vec<usize>,
    value_blocks: Vec<Vec<Ext>>,
    location_blocks: Vec<FqMat>,
}

impl ErrorDecomposition {
    pub fn empty(num_blocks: usize) -> Self {
        ErrorDecomposition {
            rank_partition: vec![0; num_blocks],
            value_blocks: vec![Vec::new(); num_blocks],
            location_blocks: vec![FqMat::zero(0, 0); num_blocks],
        }
    }

    pub fn rank_partition(&self) -> &[usize] {
        &self.rank_partition
    }

    pub fn weight(&self) -> usize {
        self.rank_partition.iter().sum()
    }

    pub fn value_blocks(&self) -> &[Vec<Ext>] {
        &self.value_blocks
    }

    pub fn location_blocks(&self) -> &[FqMat] {
        &self.location_blocks
    }

    /// All error values a = (a^(1) | ... | a^(l)) concatenated.
    pub fn values(&self) -> Vec<Ext> {
        self.value_blocks.iter().flatten().cloned().collect()
    }

    /// Evaluation parameters pairing the error values with the blocks'
    /// conjugacy representatives; None for the zero error.
    pub fn esp_eval_params(&self, xi: &[Ext]) -> Option<EvalParams> {
        let mut points = Vec::new();
        let mut parts = Vec::new();
        let mut params = Vec::new();
        for (i, vals) in self.value_blocks.iter().enumerate() {
            if vals.is_empty() {
                continue;
            }
            points.extend(vals.iter().cloned());
            parts.push(vals.len());
            params.push(xi[i].clone());
        }
        if points.is_empty() {
            return None;
        }
        let partition = LengthPartition::new(parts).expect("nonzero parts");
        Some(EvalParams::new(points, partition, params).expect("consistent by construction"))
    }

    /// The full t x (s n) location matrix in block-diagonal-per-component
    /// layout: row block i occupies the columns of block i inside every
    /// component.
    pub fn full_b_matrix(&self, s: usize, partition: &LengthPartition) -> FqMat {
        let n = partition.total();
        let offsets = partition.offsets();
        let t = self.weight();
        let mut b = FqMat::zero(t, s * n);
        let mut row_off = 0;
        for i in 0..partition.num_blocks() {
            let n_i = partition.parts()[i];
            let t_i = self.rank_partition[i];
            let block = &self.location_blocks[i];
            for u in 0..t_i {
                for j in 0..s {
                    for col in 0..n_i {
                        b.set(row_off + u, j * n + offsets[i] + col, block.at(u, j * n_i + col));
                    }
                }
            }
            row_off += t_i;
        }
        b
    }

    /// Reassembles the interleaved error vector a * B.
    pub fn assemble(
        &self,
        tower: &FieldTower,
        s: usize,
        partition: &LengthPartition,
    ) -> Vec<Ext> {
        let n = partition.total();
        let offsets = partition.offsets();
        let mut e = vec![tower.zero(); s * n];
        for i in 0..partition.num_blocks() {
            let n_i = partition.parts()[i];
            let vals = &self.value_blocks[i];
            let block = &self.location_blocks[i];
            for j in 0..s {
                for col in 0..n_i {
                    let mut acc = tower.zero();
                    for (u, a) in vals.iter().enumerate() {
                        let coef = block.at(u, j * n_i + col);
                        if coef != 0 {
                            acc = tower.add(&acc, &tower.scale_fq(a, coef));
                        }
                    }
                    e[j * n + offsets[i] + col] = acc;
                }
            }
        }
        e
    }
}

/// Gaussian binomial [n choose k]_q as an exact integer.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let q = BigUint::from(q);
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for i in 0..k {
        num *= q.pow(n as u32) - q.pow(i as u32);
        den *= q.pow(k as u32) - q.pow(i as u32);
    }
    num / den
}

/// Number of vectors in F_{q^m}^width of F_q-rank exactly t.
pub fn rank_sphere_size(width: usize, t: usize, q: u64, m: usize) -> BigUint {
    if t > width || t > m {
        return BigUint::from(0u32);
    }
    let qm = BigUint::from(q).pow(m as u32);
    let q = BigUint::from(q);
    let mut count = gaussian_binomial(width, t, {
        // q fits u64 by construction
        let digits = q.to_u64_digits();
        if digits.is_empty() { 0 } else { digits[0] }
    });
    for j in 0..t {
        count *= &qm - q.pow(j as u32);
    }
    count
}

fn compositions(total: usize, caps: &[usize]) -> Vec<Vec<usize>> {
    fn rec(total: usize, caps: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if caps.len() == 1 {
            if total <= caps[0] {
                let mut c = cur.clone();
                c.push(total);
                out.push(c);
            }
            return;
        }
        for v in 0..=total.min(caps[0]) {
            cur.push(v);
            rec(total - v, &caps[1..], cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if !caps.is_empty() {
        rec(total, caps, &mut Vec::new(), &mut out);
    }
    out
}

/// Total number of interleaved vectors of weight exactly t (the size of the
/// sampling sphere).
pub fn weight_sphere_size(
    s: usize,
    partition: &LengthPartition,
    q: u64,
    m: usize,
    t: usize,
) -> BigUint {
    let caps: Vec<usize> = partition.parts().iter().map(|&n_i| (s * n_i).min(m)).collect();
    let mut total = BigUint::from(0u32);
    for comp in compositions(t, &caps) {
        let mut w = BigUint::from(1u32);
        for (i, &t_i) in comp.iter().enumerate() {
            w *= rank_sphere_size(s * partition.parts()[i], t_i, q, m);
        }
        total += w;
    }
    total
}

/// Samples e uniformly from all interleaved vectors of weight exactly t,
/// together with a decomposition e = a * B. The rank partition is drawn
/// proportionally to the exact per-composition configuration counts; values
/// and locations are drawn uniformly at full rank by rejection.
pub fn sample_error_with(
    tower: &FieldTower,
    s: usize,
    partition: &LengthPartition,
    t: usize,
    rng: &mut impl Rng,
) -> Result<(Vec<Ext>, ErrorDecomposition), Error> {
    let m = tower.m();
    let caps: Vec<usize> = partition.parts().iter().map(|&n_i| (s * n_i).min(m)).collect();
    let max: usize = caps.iter().sum();
    if t > max {
        return Err(Error::WeightOutOfRange { t, max });
    }
    if t == 0 {
        let decomp = ErrorDecomposition::empty(partition.num_blocks());
        return Ok((vec![tower.zero(); s * partition.total()], decomp));
    }

    let comps = compositions(t, &caps);
    let weights: Vec<BigUint> = comps
        .iter()
        .map(|comp| {
            let mut w = BigUint::from(1u32);
            for (i, &t_i) in comp.iter().enumerate() {
                w *= rank_sphere_size(s * partition.parts()[i], t_i, tower.q(), m);
            }
            w
        })
        .collect();
    let total: BigUint = weights.iter().sum();
    debug_assert!(total > BigUint::from(0u32));
    let mut draw = rng.gen_biguint_below(&total);
    let mut chosen = comps.len() - 1;
    for (idx, w) in weights.iter().enumerate() {
        if draw < *w {
            chosen = idx;
            break;
        }
        draw -= w;
    }
    let rank_partition = comps[chosen].clone();

    let mut value_blocks = Vec::with_capacity(partition.num_blocks());
    let mut location_blocks = Vec::with_capacity(partition.num_blocks());
    for (i, &t_i) in rank_partition.iter().enumerate() {
        let width = s * partition.parts()[i];
        if t_i == 0 {
            value_blocks.push(Vec::new());
            location_blocks.push(FqMat::zero(0, width));
            continue;
        }
        // uniform F_q-independent values
        let vals = loop {
            let cand: Vec<Ext> = (0..t_i).map(|_| tower.random(rng)).collect();
            if rank_over_base(tower, &Mat::from_rows(vec![cand.clone()])) == t_i {
                break cand;
            }
        };
        // uniform full-rank locations
        let locs = loop {
            let mut cand = FqMat::zero(t_i, width);
            for r in 0..t_i {
                for c in 0..width {
                    cand.set(r, c, rng.gen_range(0..tower.q()));
                }
            }
            if cand.rank(tower) == t_i {
                break cand;
            }
        };
        value_blocks.push(vals);
        location_blocks.push(locs);
    }
    let decomp = ErrorDecomposition { rank_partition, value_blocks, location_blocks };
    let e = decomp.assemble(tower, s, partition);
    debug_assert_eq!(interleaved_weight(tower, &e, s, partition).unwrap(), t);
    Ok((e, decomp))
}

/// Samples a uniform weight-t error for the code's channel.
pub fn sample_error(
    code: &HilrsCode,
    t: usize,
    rng: &mut impl Rng,
) -> Result<(Vec<Ext>, ErrorDecomposition), Error> {
    sample_error_with(code.tower(), code.s(), code.partition(), t, rng)
}

/// Canonical rank factorization of an arbitrary interleaved vector: per
/// regrouped block, the values are the reduced-echelon basis of the entries'
/// F_q-coordinate rows and the locations are the coordinates in that basis.
pub fn decompose(
    tower: &FieldTower,
    e: &[Ext],
    s: usize,
    partition: &LengthPartition,
) -> Result<ErrorDecomposition, Error> {
    let n = partition.total();
    if e.len() != s * n {
        return Err(Error::LengthMismatch { expected: s * n, got: e.len() });
    }
    let m = tower.m();
    let offsets = partition.offsets();
    let mut rank_partition = Vec::with_capacity(partition.num_blocks());
    let mut value_blocks = Vec::with_capacity(partition.num_blocks());
    let mut location_blocks = Vec::with_capacity(partition.num_blocks());
    for i in 0..partition.num_blocks() {
        let n_i = partition.parts()[i];
        let width = s * n_i;
        // one coordinate row per regrouped entry
        let mut rows = FqMat::zero(width, m);
        for j in 0..s {
            for col in 0..n_i {
                let entry = &e[j * n + offsets[i] + col];
                for (kk, &coord) in entry.coords().iter().enumerate() {
                    rows.set(j * n_i + col, kk, coord);
                }
            }
        }
        let mut red = rows.clone();
        let pivots = red.rref(tower);
        let t_i = pivots.len();
        let vals: Vec<Ext> = (0..t_i)
            .map(|u| tower.from_coords(red.row(u).to_vec()))
            .collect();
        let mut locs = FqMat::zero(t_i, width);
        for entry_idx in 0..width {
            for (u, &p) in pivots.iter().enumerate() {
                locs.set(u, entry_idx, rows.at(entry_idx, p));
            }
        }
        rank_partition.push(t_i);
        value_blocks.push(vals);
        location_blocks.push(locs);
    }
    let decomp = ErrorDecomposition { rank_partition, value_blocks, location_blocks };
    debug_assert_eq!(decomp.assemble(tower, s, partition), e);
    Ok(decomp)
}

/// The additive channel y = c + e.
pub fn transmit(tower: &FieldTower, c: &[Ext], e: &[Ext]) -> Result<Vec<Ext>, Error> {
    if c.len() != e.len() {
        return Err(Error::LengthMismatch { expected: c.len(), got: e.len() });
    }
    Ok(c.iter().zip(e).map(|(a, b)| tower.add(a, b)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_tower;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;
    use std::collections::HashMap;

    #[test]
    fn sum_rank_weight_examples() {
        let f4 = make_tower(2, 1, 2, 1).unwrap();
        let z = f4.from_index(2);
        let part = LengthPartition::new(vec![2, 2]).unwrap();
        let zero = vec![f4.zero(); 4];
        assert_eq!(sum_rank_weight(&f4, &zero, &part).unwrap(), 0);
        let x = vec![f4.one(), z.clone(), f4.zero(), f4.zero()];
        assert_eq!(sum_rank_weight(&f4, &x, &part).unwrap(), 2);
        assert!(sum_rank_weight(&f4, &x[..3], &part).is_err());
    }

    #[test]
    fn weight_extremes_match_hamming_and_rank() {
        let t = make_tower(5, 1, 3, 1).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(21);
        for _ in 0..100 {
            let x: Vec<Ext> = (0..4).map(|_| t.random(&mut rng)).collect();
            // all parts 1: Hamming weight
            let hamming = LengthPartition::new(vec![1; 4]).unwrap();
            let wh = sum_rank_weight(&t, &x, &hamming).unwrap();
            assert_eq!(wh, x.iter().filter(|v| !v.is_zero()).count());
            // single part: rank weight
            let rank = LengthPartition::new(vec![4]).unwrap();
            let wr = sum_rank_weight(&t, &x, &rank).unwrap();
            assert_eq!(wr, rank_over_base(&t, &Mat::from_rows(vec![x.clone()])));
        }
    }

    #[test]
    fn interleaved_weight_examples() {
        let f4 = make_tower(2, 1, 2, 1).unwrap();
        let part = LengthPartition::new(vec![1, 1]).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(22);
        // s = 1 reduces to the plain sum-rank weight
        for _ in 0..50 {
            let x: Vec<Ext> = (0..2).map(|_| f4.random(&mut rng)).collect();
            assert_eq!(
                interleaved_weight(&f4, &x, 1, &part).unwrap(),
                sum_rank_weight(&f4, &x, &part).unwrap()
            );
        }
        // identical nonzero components add no rank
        let part1 = LengthPartition::new(vec![2]).unwrap();
        for _ in 0..50 {
            let x1: Vec<Ext> = (0..2).map(|_| f4.random(&mut rng)).collect();
            let mut x = x1.clone();
            x.extend(x1.clone());
            assert_eq!(
                interleaved_weight(&f4, &x, 2, &part1).unwrap(),
                sum_rank_weight(&f4, &x1, &part1).unwrap()
            );
        }
    }

    #[test]
    fn interleaved_weight_matches_explicit_regrouping() {
        let t = make_tower(3, 1, 3, 1).unwrap();
        let part = LengthPartition::new(vec![2, 1]).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(23);
        for _ in 0..100 {
            let x: Vec<Ext> = (0..6).map(|_| t.random(&mut rng)).collect();
            let got = interleaved_weight(&t, &x, 2, &part).unwrap();
            // regroup by hand: block 1 = entries {0,1,3,4}, block 2 = {2,5}
            let g1 = vec![x[0].clone(), x[1].clone(), x[3].clone(), x[4].clone()];
            let g2 = vec![x[2].clone(), x[5].clone()];
            let expect = rank_over_base(&t, &Mat::from_rows(vec![g1]))
                + rank_over_base(&t, &Mat::from_rows(vec![g2]));
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(2, 1, 2), BigUint::from(3u32));
        assert_eq!(gaussian_binomial(4, 2, 2), BigUint::from(35u32));
        assert_eq!(gaussian_binomial(3, 3, 5), BigUint::from(1u32));
        assert_eq!(gaussian_binomial(2, 3, 2), BigUint::from(0u32));
    }

    #[test]
    fn sphere_size_matches_exhaustive_enumeration() {
        // q = 2, m = 2, s = 1, n = 2: count weight-w vectors by brute force
        let t = make_tower(2, 1, 2, 1).unwrap();
        let part = LengthPartition::new(vec![2]).unwrap();
        let mut counts = [0u32; 3];
        for v0 in 0..4u64 {
            for v1 in 0..4u64 {
                let x = vec![t.from_index(v0), t.from_index(v1)];
                let w = interleaved_weight(&t, &x, 1, &part).unwrap();
                counts[w] += 1;
            }
        }
        for w in 0..3 {
            assert_eq!(
                weight_sphere_size(1, &part, 2, 2, w),
                BigUint::from(counts[w]),
                "weight {w}"
            );
        }
    }

    #[test]
    fn sample_error_weight_is_exact() {
        let tower = std::sync::Arc::new(make_tower(3, 1, 4, 1).unwrap());
        let part = LengthPartition::new(vec![3, 2]).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(24);
        for t in 0..=8 {
            for _ in 0..40 {
                let (e, decomp) = sample_error_with(&tower, 2, &part, t, &mut rng).unwrap();
                assert_eq!(interleaved_weight(&tower, &e, 2, &part).unwrap(), t);
                assert_eq!(decomp.weight(), t);
                assert_eq!(decomp.assemble(&tower, 2, &part), e);
            }
        }
        // out of range: caps are min(s n_i, m) summed = 4 + 4
        assert!(matches!(
            sample_error_with(&tower, 2, &part, 9, &mut rng),
            Err(Error::WeightOutOfRange { t: 9, max: 8 })
        ));
    }

    #[test]
    fn zero_weight_error_is_zero() {
        let tower = make_tower(2, 1, 4, 1).unwrap();
        let part = LengthPartition::new(vec![4]).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(25);
        let (e, decomp) = sample_error_with(&tower, 2, &part, 0, &mut rng).unwrap();
        assert!(e.iter().all(Ext::is_zero));
        assert_eq!(decomp.weight(), 0);
        assert!(decomp.values().is_empty());
    }

    #[test]
    fn sampling_is_uniform_over_the_weight_one_sphere() {
        // q = 2, m = 2, s = 1, l = 1, n = 2: exactly 9 weight-1 vectors.
        let t = make_tower(2, 1, 2, 1).unwrap();
        let part = LengthPartition::new(vec![2]).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(26);
        let draws = 10_000usize;
        let mut counts: HashMap<(u64, u64), usize> = HashMap::new();
        for _ in 0..draws {
            let (e, _) = sample_error_with(&t, 1, &part, 1, &mut rng).unwrap();
            *counts.entry((t.to_index(&e[0]), t.to_index(&e[1]))).or_default() += 1;
        }
        assert_eq!(counts.len(), 9);
        let expected = draws as f64 / 9.0;
        let chi2: f64 = counts
            .values()
            .map(|&c| {
                let d = c as f64 - expected;
                d * d / expected
            })
            .sum();
        // dof 8, p = 0.001 threshold
        assert!(chi2 < 26.12, "chi^2 = {chi2}");
    }

    #[test]
    fn decompose_round_trips() {
        let tower = make_tower(3, 1, 3, 1).unwrap();
        let part = LengthPartition::new(vec![2, 2]).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(27);
        // arbitrary vectors
        for _ in 0..100 {
            let e: Vec<Ext> = (0..8).map(|_| tower.random(&mut rng)).collect();
            let d = decompose(&tower, &e, 2, &part).unwrap();
            assert_eq!(d.assemble(&tower, 2, &part), e);
            assert_eq!(d.weight(), interleaved_weight(&tower, &e, 2, &part).unwrap());
        }
        // sampled errors
        for t in 0..=4 {
            let (e, _) = sample_error_with(&tower, 2, &part, t, &mut rng).unwrap();
            let d = decompose(&tower, &e, 2, &part).unwrap();
            assert_eq!(d.assemble(&tower, 2, &part), e);
            assert_eq!(d.weight(), t);
        }
    }

    #[test]
    fn decompose_edge_cases() {
        let tower = make_tower(2, 1, 3, 1).unwrap();
        let part = LengthPartition::new(vec![3]).unwrap();
        // zero error: empty decomposition
        let e = vec![tower.zero(); 3];
        let d = decompose(&tower, &e, 1, &part).unwrap();
        assert_eq!(d.weight(), 0);
        // rank-1 single block: one value, one location row
        let a = tower.from_index(5);
        let e = vec![a.clone(), tower.zero(), a.clone()];
        let d = decompose(&tower, &e, 1, &part).unwrap();
        assert_eq!(d.rank_partition(), &[1]);
        assert_eq!(d.value_blocks()[0].len(), 1);
        assert_eq!(d.location_blocks()[0].rows(), 1);
    }

    #[test]
    fn transmit_is_componentwise_addition() {
        let tower = make_tower(3, 1, 2, 1).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(28);
        let c: Vec<Ext> = (0..5).map(|_| tower.random(&mut rng)).collect();
        let e: Vec<Ext> = (0..5).map(|_| tower.random(&mut rng)).collect();
        let zero = vec![tower.zero(); 5];
        assert_eq!(transmit(&tower, &c, &zero).unwrap(), c);
        assert_eq!(transmit(&tower, &zero, &e).unwrap(), e);
        let y = transmit(&tower, &c, &e).unwrap();
        let diff: Vec<Ext> = y.iter().zip(&c).map(|(a, b)| tower.sub(a, b)).collect();
        assert_eq!(diff, e);
        assert!(transmit(&tower, &c, &e[..4]).is_err());
    }

    #[test]
    fn metric_axioms_sampled() {
        let tower = make_tower(2, 1, 3, 1).unwrap();
        let part = LengthPartition::new(vec![2, 1]).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(29);
        for _ in 0..200 {
            let x: Vec<Ext> = (0..6).map(|_| tower.random(&mut rng)).collect();
            let y: Vec<Ext> = (0..6).map(|_| tower.random(&mut rng)).collect();
            let z: Vec<Ext> = (0..6).map(|_| tower.random(&mut rng)).collect();
            let dxy = interleaved_distance(&tower, &x, &y, 2, &part).unwrap();
            let dyx = interleaved_distance(&tower, &y, &x, 2, &part).unwrap();
            let dxz = interleaved_distance(&tower, &x, &z, 2, &part).unwrap();
            let dyz = interleaved_distance(&tower, &y, &z, 2, &part).unwrap();
            assert_eq!(dxy, dyx);
            assert!(dxz <= dxy + dyz);
            assert_eq!(dxy == 0, x == y);
        }
    }
}
