//! LRS and HILRS code parameterization, validation, encoding, and
//! generator / parity-check matrix construction.
//!
//! An LRS code evaluates skew polynomials of degree < k blockwise at
//! F_q-independent code locators, one conjugacy-class representative per
//! block. An HILRS code is the horizontal concatenation of s component
//! codewords; the components share the evaluation parameters, partition,
//! and dimension but carry their own locators.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::ff::{kernel_basis, rank_over_base, Ext, FieldTower, LengthPartition, Mat};
use crate::skew::{min_poly, moore_matrix, op_eval, EvalParams, SkewPoly};
use crate::Error;

/// How code locators are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocatorMode {
    /// Block i of component j uses the basis monomials
    /// z^((j-1+u) mod m), u = 0..n_i-1: reproducible, components differ
    /// whenever n_i < m.
    Deterministic,
    /// Seeded-random F_q-independent sets per block.
    Seeded(u64),
}

/// A linearized Reed-Solomon code of length n = sum n_i and dimension k.
#[derive(Debug, Clone)]
pub struct LrsCode {
    tower: Arc<FieldTower>,
    eval: EvalParams,
    k: usize,
}

impl LrsCode {
    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn eval_params(&self) -> &EvalParams {
        &self.eval
    }

    pub fn locators(&self) -> &[Ext] {
        self.eval.points()
    }

    pub fn xi(&self) -> &[Ext] {
        self.eval.params()
    }

    pub fn partition(&self) -> &LengthPartition {
        self.eval.partition()
    }

    pub fn n(&self) -> usize {
        self.eval.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    fn verify_invariants(&self) -> Result<(), Error> {
        let offsets = self.partition().offsets();
        for i in 0..self.partition().num_blocks() {
            let block = &self.locators()[offsets[i]..offsets[i + 1]];
            let rank = rank_over_base(&self.tower, &Mat::from_rows(vec![block.to_vec()]));
            if rank != block.len() {
                return Err(Error::DependentLocators { index: i });
            }
        }
        Ok(())
    }
}

/// Validates parameters and constructs an LRS code. The evaluation
/// parameters are the first l powers of the tower's primitive element;
/// locators come from `mode` (component_index selects the deterministic
/// shift and diversifies the seeded stream).
pub fn build_lrs(
    tower: Arc<FieldTower>,
    partition: LengthPartition,
    k: usize,
    mode: LocatorMode,
    component_index: usize,
) -> Result<LrsCode, Error> {
    let n = partition.total();
    let m = tower.m();
    if k == 0 || k >= n {
        return Err(Error::BadDimension { k, n });
    }
    for (i, &n_i) in partition.parts().iter().enumerate() {
        if n_i > m {
            return Err(Error::BlockTooLong { index: i, n_i, m });
        }
    }
    let xi = tower.conjugacy_representatives(partition.num_blocks())?;
    let mut beta = Vec::with_capacity(n);
    match mode {
        LocatorMode::Deterministic => {
            for &n_i in partition.parts() {
                for u in 0..n_i {
                    let mut coords = vec![0u64; m];
                    coords[(component_index + u) % m] = 1;
                    beta.push(tower.from_coords(coords));
                }
            }
        }
        LocatorMode::Seeded(seed) => {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            rng.set_stream(component_index as u64);
            for &n_i in partition.parts() {
                loop {
                    let cand: Vec<Ext> = (0..n_i).map(|_| tower.random(&mut rng)).collect();
                    if rank_over_base(&tower, &Mat::from_rows(vec![cand.clone()])) == n_i {
                        beta.extend(cand);
                        break;
                    }
                }
            }
        }
    }
    let code = LrsCode {
        eval: EvalParams::new(beta, partition, xi)?,
        tower,
        k,
    };
    code.verify_invariants()?;
    Ok(code)
}

/// Generator matrix: the k x n generalized Moore matrix of the locators.
pub fn generator_matrix(code: &LrsCode) -> Mat {
    moore_matrix(code.tower(), code.k, code.eval_params())
}

/// Encodes a message polynomial of degree < k.
pub fn encode_lrs(code: &LrsCode, f: &SkewPoly) -> Result<Vec<Ext>, Error> {
    if let Some(d) = f.degree().finite() {
        if d >= code.k as i64 {
            return Err(Error::MessageDegree { deg: d, bound: code.k });
        }
    }
    Ok(op_eval(code.tower(), f, code.eval_params()))
}

/// Full-rank parity-check matrix H with G_dim * H^T = 0 for the
/// dimension-`dim` code on the same locators, computed from the right
/// kernel of the Moore matrix.
pub fn parity_check(code: &LrsCode, dim: usize) -> Mat {
    assert!(dim < code.n(), "parity check needs dim < n");
    let moore = moore_matrix(code.tower(), dim, code.eval_params());
    kernel_basis(code.tower(), &moore)
}

/// Message-polynomial vector: one component message per component code,
/// each of degree < k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MessageVector(pub Vec<SkewPoly>);

impl MessageVector {
    pub fn components(&self) -> &[SkewPoly] {
        &self.0
    }
}

/// Horizontally interleaved LRS code: s component codes sharing
/// (xi, partition, k), plus the precomputed minimal polynomials G_j of the
/// component locators.
#[derive(Debug, Clone)]
pub struct HilrsCode {
    components: Vec<LrsCode>,
    g_polys: Vec<SkewPoly>,
    mode: LocatorMode,
}

impl HilrsCode {
    pub fn tower(&self) -> &Arc<FieldTower> {
        self.components[0].tower()
    }

    pub fn s(&self) -> usize {
        self.components.len()
    }

    pub fn n(&self) -> usize {
        self.components[0].n()
    }

    pub fn k(&self) -> usize {
        self.components[0].k()
    }

    pub fn partition(&self) -> &LengthPartition {
        self.components[0].partition()
    }

    pub fn xi(&self) -> &[Ext] {
        self.components[0].xi()
    }

    pub fn component(&self, j: usize) -> &LrsCode {
        &self.components[j]
    }

    pub fn components(&self) -> &[LrsCode] {
        &self.components
    }

    /// Precomputed G_j: monic minimal polynomial of component j's locators.
    pub fn g_poly(&self, j: usize) -> &SkewPoly {
        &self.g_polys[j]
    }

    pub fn g_polys(&self) -> &[SkewPoly] {
        &self.g_polys
    }

    /// Plain-text key=value description of all code parameters.
    pub fn params_document(&self) -> String {
        let t = self.tower();
        let parts: Vec<String> =
            self.partition().parts().iter().map(|p| p.to_string()).collect();
        let mode = match self.mode {
            LocatorMode::Deterministic => "deterministic".to_string(),
            LocatorMode::Seeded(seed) => format!("seeded:{seed}"),
        };
        format!(
            "p={}\ne={}\nm={}\nr={}\nparts={}\nk={}\ns={}\nlocators={}\n",
            t.p(),
            t.e(),
            t.m(),
            t.frob_power(),
            parts.join(","),
            self.k(),
            self.s(),
            mode,
        )
    }
}

/// Builds an HILRS code with s component codes.
pub fn build_hilrs(
    tower: Arc<FieldTower>,
    partition: LengthPartition,
    k: usize,
    s: usize,
    mode: LocatorMode,
) -> Result<HilrsCode, Error> {
    if s == 0 {
        return Err(Error::BadInterleavingOrder);
    }
    let mut components = Vec::with_capacity(s);
    for j in 0..s {
        components.push(build_lrs(tower.clone(), partition.clone(), k, mode, j)?);
    }
    let g_polys: Vec<SkewPoly> = components
        .iter()
        .map(|c| min_poly(&tower, c.eval_params()))
        .collect();
    debug_assert!(g_polys
        .iter()
        .all(|g| g.degree() == crate::skew::Degree::Finite(partition.total() as i64)));
    Ok(HilrsCode { components, g_polys, mode })
}

/// Encodes a message vector into the length-(s n) interleaved codeword.
pub fn encode_hilrs(code: &HilrsCode, msg: &MessageVector) -> Result<Vec<Ext>, Error> {
    if msg.0.len() != code.s() {
        return Err(Error::LengthMismatch { expected: code.s(), got: msg.0.len() });
    }
    let mut out = Vec::with_capacity(code.s() * code.n());
    for (j, f) in msg.0.iter().enumerate() {
        out.extend(encode_lrs(code.component(j), f)?);
    }
    Ok(out)
}

/// Uniform message vector: s polynomials with k uniform coefficients each.
pub fn random_message(code: &HilrsCode, rng: &mut impl Rng) -> MessageVector {
    let t = code.tower();
    MessageVector(
        (0..code.s())
            .map(|_| SkewPoly::from_coeffs((0..code.k()).map(|_| t.random(rng)).collect()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::interleaved_weight;
    use crate::ff::make_tower;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn paper_code() -> HilrsCode {
        let tower = Arc::new(make_tower(3, 1, 8, 1).unwrap());
        let part = LengthPartition::new(vec![8, 8]).unwrap();
        build_hilrs(tower, part, 4, 3, LocatorMode::Deterministic).unwrap()
    }

    #[test]
    fn paper_shape_builds() {
        let code = paper_code();
        assert_eq!(code.n(), 16);
        assert_eq!(code.k(), 4);
        assert_eq!(code.s(), 3);
        for j in 0..3 {
            assert_eq!(
                code.g_poly(j).degree(),
                crate::skew::Degree::Finite(16),
                "G_j must have degree n"
            );
        }
    }

    #[test]
    fn invalid_parameters_are_named() {
        let tower = Arc::new(make_tower(3, 1, 4, 1).unwrap());
        // block longer than m
        let part = LengthPartition::new(vec![5]).unwrap();
        assert!(matches!(
            build_lrs(tower.clone(), part, 1, LocatorMode::Deterministic, 0),
            Err(Error::BlockTooLong { index: 0, n_i: 5, m: 4 })
        ));
        // l = q exceeds the q - 1 nontrivial classes
        let part = LengthPartition::new(vec![1, 1, 1]).unwrap();
        assert!(matches!(
            build_lrs(tower.clone(), part, 1, LocatorMode::Deterministic, 0),
            Err(Error::NotEnoughClasses { requested: 3, available: 2 })
        ));
        // k out of range
        let part = LengthPartition::new(vec![2, 2]).unwrap();
        assert!(matches!(
            build_lrs(tower.clone(), part.clone(), 4, LocatorMode::Deterministic, 0),
            Err(Error::BadDimension { k: 4, n: 4 })
        ));
        assert!(matches!(
            build_lrs(tower, part, 0, LocatorMode::Deterministic, 0),
            Err(Error::BadDimension { k: 0, n: 4 })
        ));
    }

    #[test]
    fn generator_matrix_properties() {
        let tower = Arc::new(make_tower(3, 1, 4, 1).unwrap());
        let part = LengthPartition::new(vec![3, 2]).unwrap();
        let code = build_lrs(tower.clone(), part, 2, LocatorMode::Seeded(17), 0).unwrap();
        let g = generator_matrix(&code);
        assert_eq!((g.rows(), g.cols()), (2, 5));
        assert_eq!(g.rank(&tower), 2);
        // k = 1: single row of locators
        let part1 = LengthPartition::new(vec![3]).unwrap();
        let code1 = build_lrs(tower.clone(), part1, 1, LocatorMode::Deterministic, 0).unwrap();
        let g1 = generator_matrix(&code1);
        assert_eq!(g1.rows(), 1);
        assert_eq!(g1.row(0), code1.locators());
    }

    #[test]
    fn encoding_matches_generator_matrix() {
        let tower = Arc::new(make_tower(3, 1, 4, 1).unwrap());
        let part = LengthPartition::new(vec![3, 2]).unwrap();
        let code = build_lrs(tower.clone(), part, 3, LocatorMode::Seeded(5), 0).unwrap();
        let g = generator_matrix(&code);
        let mut rng = ChaCha12Rng::seed_from_u64(2);
        for _ in 0..100 {
            let coeffs: Vec<Ext> = (0..3).map(|_| tower.random(&mut rng)).collect();
            let f = SkewPoly::from_coeffs(coeffs.clone());
            let enc = encode_lrs(&code, &f).unwrap();
            // coefficient vector times Moore matrix
            let by_matrix: Vec<Ext> = (0..5)
                .map(|c| {
                    let mut acc = tower.zero();
                    for (i, coef) in coeffs.iter().enumerate() {
                        acc = tower.add(&acc, &tower.mul(coef, g.at(i, c)));
                    }
                    acc
                })
                .collect();
            assert_eq!(enc, by_matrix);
        }
    }

    #[test]
    fn encode_edge_cases() {
        let code = paper_code();
        let t = code.tower().clone();
        // zero message -> zero codeword
        let zero_msg = MessageVector(vec![SkewPoly::zero(); 3]);
        let c = encode_hilrs(&code, &zero_msg).unwrap();
        assert_eq!(c.len(), 48);
        assert!(c.iter().all(Ext::is_zero));
        // constant message -> c * beta entrywise
        let lrs = code.component(0);
        let cst = t.from_index(100);
        let enc = encode_lrs(lrs, &SkewPoly::constant(cst.clone())).unwrap();
        let expect: Vec<Ext> = lrs.locators().iter().map(|b| t.mul(&cst, b)).collect();
        assert_eq!(enc, expect);
        // degree overflow is rejected
        let too_big = SkewPoly::monomial(t.one(), 4);
        assert!(matches!(
            encode_lrs(lrs, &too_big),
            Err(Error::MessageDegree { deg: 4, bound: 4 })
        ));
    }

    #[test]
    fn single_component_interleaving_reduces_to_lrs() {
        let tower = Arc::new(make_tower(3, 1, 4, 1).unwrap());
        let part = LengthPartition::new(vec![4]).unwrap();
        let code = build_hilrs(tower, part.clone(), 2, 1, LocatorMode::Deterministic).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        let msg = random_message(&code, &mut rng);
        let via_hilrs = encode_hilrs(&code, &msg).unwrap();
        let via_lrs = encode_lrs(code.component(0), &msg.0[0]).unwrap();
        assert_eq!(via_hilrs, via_lrs);
    }

    #[test]
    fn parity_check_orthogonality() {
        let tower = Arc::new(make_tower(3, 1, 4, 1).unwrap());
        let part = LengthPartition::new(vec![4, 3]).unwrap();
        let code = build_lrs(tower.clone(), part, 2, LocatorMode::Seeded(23), 0).unwrap();
        for dim in [2usize, 4, 6] {
            let h = parity_check(&code, dim);
            assert_eq!(h.rows(), 7 - dim);
            assert_eq!(h.rank(&tower), 7 - dim);
            let g = moore_matrix(&tower, dim, code.eval_params());
            assert!(g.mul(&tower, &h.transpose(&tower)).is_zero());
        }
        // dim = n - 1: a single orthogonal row
        let h = parity_check(&code, 6);
        assert_eq!(h.rows(), 1);
    }

    #[test]
    fn g_polys_annihilate_their_locators() {
        let code = paper_code();
        for j in 0..code.s() {
            let vals = op_eval(code.tower(), code.g_poly(j), code.component(j).eval_params());
            assert!(vals.iter().all(Ext::is_zero));
        }
    }

    #[test]
    fn codeword_weight_zero_iff_zero() {
        let tower = Arc::new(make_tower(2, 1, 4, 1).unwrap());
        let part = LengthPartition::new(vec![4]).unwrap();
        let code =
            build_hilrs(tower.clone(), part.clone(), 1, 2, LocatorMode::Deterministic).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(4);
        for _ in 0..50 {
            let msg = random_message(&code, &mut rng);
            let c = encode_hilrs(&code, &msg).unwrap();
            let w = interleaved_weight(&tower, &c, 2, &part).unwrap();
            let is_zero_cw = c.iter().all(Ext::is_zero);
            assert_eq!(w == 0, is_zero_cw);
        }
    }

    #[test]
    fn tiny_scale_minimum_distance_is_msrd() {
        // q=2, m=4, l=1, n=4, k=1: all 16 codewords, min nonzero weight = 4
        let tower = Arc::new(make_tower(2, 1, 4, 1).unwrap());
        let part = LengthPartition::new(vec![4]).unwrap();
        let code =
            build_lrs(tower.clone(), part.clone(), 1, LocatorMode::Deterministic, 0).unwrap();
        let mut min_w = usize::MAX;
        for v in 1..tower.field_size() {
            let f = SkewPoly::constant(tower.from_index(v));
            let c = encode_lrs(&code, &f).unwrap();
            let w = interleaved_weight(&tower, &c, 1, &part).unwrap();
            min_w = min_w.min(w);
        }
        assert_eq!(min_w, 4); // n - k + 1
    }

    #[test]
    fn hilrs_minimum_distance_equals_component_distance() {
        // interleaving does not grow the minimum distance: still n - k + 1
        let tower = Arc::new(make_tower(2, 1, 4, 1).unwrap());
        let part = LengthPartition::new(vec![4]).unwrap();
        let code =
            build_hilrs(tower.clone(), part.clone(), 1, 2, LocatorMode::Deterministic).unwrap();
        let mut min_w = usize::MAX;
        for v1 in 0..tower.field_size() {
            for v2 in 0..tower.field_size() {
                if v1 == 0 && v2 == 0 {
                    continue;
                }
                let msg = MessageVector(vec![
                    SkewPoly::constant(tower.from_index(v1)),
                    SkewPoly::constant(tower.from_index(v2)),
                ]);
                let c = encode_hilrs(&code, &msg).unwrap();
                let w = interleaved_weight(&tower, &c, 2, &part).unwrap();
                min_w = min_w.min(w);
            }
        }
        assert_eq!(min_w, 4);
    }

    #[test]
    fn params_document_lists_key_values() {
        let code = paper_code();
        let doc = code.params_document();
        assert!(doc.contains("p=3"));
        assert!(doc.contains("parts=8,8"));
        assert!(doc.contains("s=3"));
        assert!(doc.contains("locators=deterministic"));
    }
}
