//! The Gao-like decoder: interpolate the received word, solve the key
//! equation sigma * R_j = sigma * f_j mod_r G_j for all components, and
//! recover the messages by left division.
//!
//! Two interchangeable key-equation solvers exist: the baseline solver here
//! reduces the key equation to a homogeneous F_{q^m}-linear system solved by
//! Gaussian elimination; [`crate::mab`] solves it through a minimal
//! approximant basis. Both produce the same deterministic candidate ordering
//! (ascending degree of the error-span candidate), and decoding accepts the
//! first candidate that passes the remainder and degree checks.

use crate::channel::{decompose, interleaved_distance, ErrorDecomposition};
use crate::code::{encode_hilrs, HilrsCode, MessageVector};
use crate::ff::{kernel_basis, Ext, Mat};
use crate::skew::{interp_poly, left_divide, min_poly, moore_matrix, EvalParams, SkewPoly};
use crate::Error;

/// Which key-equation solver backs the decoder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solver {
    Gauss,
    Mab,
}

impl Solver {
    pub fn name(&self) -> &'static str {
        match self {
            Solver::Gauss => "gauss",
            Solver::Mab => "mab",
        }
    }
}

/// Why a decode attempt was declared a failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FailureReason {
    /// A left division of p_j by sigma left a nonzero remainder.
    NonzeroRemainder,
    /// Some recovered message had degree >= k.
    DegreeOverflow,
    /// Every key-equation solution had a zero sigma part.
    ZeroSigma,
    /// The solver produced no admissible solution.
    NoSolution,
}

impl FailureReason {
    pub fn name(&self) -> &'static str {
        match self {
            FailureReason::NonzeroRemainder => "nonzero-remainder",
            FailureReason::DegreeOverflow => "degree-overflow",
            FailureReason::ZeroSigma => "zero-sigma",
            FailureReason::NoSolution => "no-solution",
        }
    }
}

/// Outcome of [`gao_decode`]: the recovered message vector or a declared
/// failure with its reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodeResult {
    Success(MessageVector),
    Failure(FailureReason),
}

impl DecodeResult {
    pub fn is_success(&self) -> bool {
        matches!(self, DecodeResult::Success(_))
    }

    pub fn message(&self) -> Option<&MessageVector> {
        match self {
            DecodeResult::Success(m) => Some(m),
            DecodeResult::Failure(_) => None,
        }
    }
}

/// One solution of the key equation: candidates p_j for the products
/// sigma * f_j (degree < t_max + k) and a monic candidate sigma
/// (degree <= t_max).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyEquationSolution {
    pub products: Vec<SkewPoly>,
    pub sigma: SkewPoly,
}

/// Decoding radius floor(s (n - k) / (s + 1)).
pub fn decoding_radius(n: usize, k: usize, s: usize) -> usize {
    assert!(k < n && s >= 1);
    s * (n - k) / (s + 1)
}

/// Interpolation polynomials R_j with R_j evaluating to y_j on component j's
/// locators; deg R_j < n.
pub fn receive_polys(code: &HilrsCode, y: &[Ext]) -> Result<Vec<SkewPoly>, Error> {
    let n = code.n();
    if y.len() != code.s() * n {
        return Err(Error::LengthMismatch { expected: code.s() * n, got: y.len() });
    }
    (0..code.s())
        .map(|j| {
            interp_poly(
                code.tower(),
                code.component(j).eval_params(),
                &y[j * n..(j + 1) * n],
            )
        })
        .collect()
}

/// Re-evaluates y_j from R_j (the defining property of the receive
/// polynomials).
fn component_words(code: &HilrsCode, rs: &[SkewPoly]) -> Vec<Vec<Ext>> {
    rs.iter()
        .enumerate()
        .map(|(j, r)| crate::skew::op_eval(code.tower(), r, code.component(j).eval_params()))
        .collect()
}

/// The sn x (s (t_max + k) + t_max + 1) coefficient matrix of the
/// key-equation system at radius t_max: transposed Moore matrices of the
/// locators on the block diagonal, minus the transposed Moore matrices of
/// the component words in the last column block.
pub(crate) fn key_equation_matrix(code: &HilrsCode, ys: &[Vec<Ext>]) -> Mat {
    let tower = code.tower();
    let (n, k, s) = (code.n(), code.k(), code.s());
    let t_max = decoding_radius(n, k, s);
    let pk = t_max + k;
    let cols = s * pk + t_max + 1;
    let mut a = Mat::zero(tower, s * n, cols);
    for j in 0..s {
        let mt = moore_matrix(tower, pk, code.component(j).eval_params());
        for row in 0..n {
            for col in 0..pk {
                *a.at_mut(j * n + row, j * pk + col) = mt.at(col, row).clone();
            }
        }
        let ep = EvalParams::new(
            ys[j].clone(),
            code.partition().clone(),
            code.xi().to_vec(),
        )
        .expect("component word matches the partition");
        let my = moore_matrix(tower, t_max + 1, &ep);
        for row in 0..n {
            for col in 0..=t_max {
                *a.at_mut(j * n + row, s * pk + col) = tower.neg(my.at(col, row));
            }
        }
    }
    a
}

/// All key-equation solutions ordered by ascending degree of sigma, one
/// candidate per attainable sigma degree, each monic-normalized. The kernel
/// of the system matrix projects injectively onto its sigma part, so the
/// degree echelonization below enumerates the whole solution module.
pub fn key_equation_candidates_gauss(
    code: &HilrsCode,
    rs: &[SkewPoly],
) -> Result<Vec<KeyEquationSolution>, FailureReason> {
    let tower = code.tower();
    let (n, k, s) = (code.n(), code.k(), code.s());
    let t_max = decoding_radius(n, k, s);
    let pk = t_max + k;
    let ys = component_words(code, rs);
    let a = key_equation_matrix(code, &ys);
    let kernel = kernel_basis(tower, &a);
    if kernel.rows() == 0 {
        return Err(FailureReason::NoSolution);
    }
    // echelonize the sigma parts by descending degree so every surviving row
    // carries a distinct sigma degree
    let mut rows: Vec<Vec<Ext>> =
        (0..kernel.rows()).map(|r| kernel.row(r).to_vec()).collect();
    let sigma_base = s * pk;
    let mut assigned: Vec<(usize, usize)> = Vec::new(); // (sigma degree, row index)
    let mut taken = vec![false; rows.len()];
    for delta in (0..=t_max).rev() {
        let col = sigma_base + delta;
        let Some(pivot) = (0..rows.len()).find(|&r| !taken[r] && !rows[r][col].is_zero())
        else {
            continue;
        };
        let lead = rows[pivot][col].clone();
        let inv = tower.inv(&lead);
        for r in 0..rows.len() {
            if r == pivot || taken[r] || rows[r][col].is_zero() {
                continue;
            }
            let factor = tower.mul(&rows[r][col], &inv);
            for c in 0..rows[r].len() {
                let sub = tower.mul(&factor, &rows[pivot][c]);
                rows[r][c] = tower.sub(&rows[r][c], &sub);
            }
        }
        taken[pivot] = true;
        assigned.push((delta, pivot));
    }
    if assigned.is_empty() {
        return Err(FailureReason::ZeroSigma);
    }
    // rows that never got a sigma pivot must be entirely zero: a solution
    // with sigma = 0 forces p_j = 0 mod G_j with deg p_j < n
    debug_assert!(rows
        .iter()
        .enumerate()
        .filter(|(r, _)| !taken[*r])
        .all(|(_, row)| row.iter().all(Ext::is_zero)));

    assigned.sort_by_key(|&(delta, _)| delta);
    let mut out = Vec::with_capacity(assigned.len());
    for (_, r) in assigned {
        let row = &rows[r];
        let sigma = SkewPoly::from_coeffs(row[sigma_base..sigma_base + t_max + 1].to_vec());
        let inv = tower.inv(sigma.lead().expect("pivot row has nonzero sigma"));
        let products = (0..s)
            .map(|j| {
                SkewPoly::from_coeffs(row[j * pk..(j + 1) * pk].to_vec())
                    .scale_left(tower, &inv)
            })
            .collect();
        out.push(KeyEquationSolution { products, sigma: sigma.scale_left(tower, &inv) });
    }
    Ok(out)
}

/// Minimal-sigma-degree solution of the key equation via the baseline
/// Gaussian-elimination solver.
pub fn solve_key_equation_gauss(
    code: &HilrsCode,
    rs: &[SkewPoly],
) -> Result<KeyEquationSolution, FailureReason> {
    key_equation_candidates_gauss(code, rs).map(|mut v| v.remove(0))
}

fn try_candidate(
    code: &HilrsCode,
    cand: &KeyEquationSolution,
) -> Result<MessageVector, FailureReason> {
    let tower = code.tower();
    let mut msgs = Vec::with_capacity(code.s());
    for p in &cand.products {
        let (f, r) = left_divide(tower, p, &cand.sigma).expect("sigma is nonzero");
        if !r.is_zero() {
            return Err(FailureReason::NonzeroRemainder);
        }
        if f.degree() >= crate::skew::Degree::Finite(code.k() as i64) {
            return Err(FailureReason::DegreeOverflow);
        }
        msgs.push(f);
    }
    Ok(MessageVector(msgs))
}

fn decode_inner(code: &HilrsCode, y: &[Ext], solver: Solver, strict: bool) -> DecodeResult {
    let rs = match receive_polys(code, y) {
        Ok(rs) => rs,
        Err(_) => return DecodeResult::Failure(FailureReason::NoSolution),
    };
    let candidates = match solver {
        Solver::Gauss => key_equation_candidates_gauss(code, &rs),
        Solver::Mab => crate::mab::key_equation_candidates_mab(code, &rs),
    };
    let candidates = match candidates {
        Ok(c) => c,
        Err(reason) => return DecodeResult::Failure(reason),
    };
    let t_max = decoding_radius(code.n(), code.k(), code.s());
    let mut first_reason = None;
    for cand in &candidates {
        match try_candidate(code, cand) {
            Ok(msgs) => {
                if strict {
                    let cw = encode_hilrs(code, &msgs).expect("degrees checked");
                    let d = interleaved_distance(
                        code.tower(),
                        y,
                        &cw,
                        code.s(),
                        code.partition(),
                    )
                    .expect("lengths match");
                    if d > t_max {
                        continue;
                    }
                }
                return DecodeResult::Success(msgs);
            }
            Err(reason) => {
                if first_reason.is_none() {
                    first_reason = Some(reason);
                }
            }
        }
    }
    DecodeResult::Failure(first_reason.unwrap_or(FailureReason::NoSolution))
}

/// Decodes a received word: interpolation, key-equation solving with the
/// chosen solver, then left divisions with the remainder and degree checks.
/// Never panics on channel inputs; failures carry their reason.
pub fn gao_decode(code: &HilrsCode, y: &[Ext], solver: Solver) -> DecodeResult {
    decode_inner(code, y, solver, false)
}

/// Like [`gao_decode`] but additionally re-encodes and requires the decoded
/// codeword to lie within distance t_max of y.
pub fn gao_decode_strict(code: &HilrsCode, y: &[Ext], solver: Solver) -> DecodeResult {
    decode_inner(code, y, solver, true)
}

/// The monic error-span polynomial of a decomposed error: the minimal skew
/// polynomial vanishing on all error values under the code's evaluation
/// parameters.
pub fn error_span_polynomial(code: &HilrsCode, decomp: &ErrorDecomposition) -> SkewPoly {
    match decomp.esp_eval_params(code.xi()) {
        None => SkewPoly::one(code.tower()),
        Some(ep) => min_poly(code.tower(), &ep),
    }
}

/// How the kappa_q constant enters the failure bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundMode {
    /// kappa_q = prod_i 1/(1 - q^-i), truncated once a factor deviates from
    /// one by less than 1e-12.
    ExactKappa,
    /// The uniform constant 3.5 > kappa_q.
    Kappa35,
}

/// kappa_q with the truncation rule of [`BoundMode::ExactKappa`].
pub fn kappa_exact(q: u64) -> f64 {
    let qf = q as f64;
    let mut prod = 1.0;
    let mut i = 1;
    loop {
        let factor = 1.0 / (1.0 - qf.powi(-i));
        if (factor - 1.0).abs() < 1e-12 {
            break;
        }
        prod *= factor;
        i += 1;
    }
    prod
}

/// Exponent E in the failure bound kappa^(l+1) * q^(-E):
/// E = m ((s + 1)(t_max - t) + 1).
pub fn failure_bound_exponent(code: &HilrsCode, t: usize) -> Result<i64, Error> {
    let t_max = decoding_radius(code.n(), code.k(), code.s());
    if t > t_max {
        return Err(Error::WeightOutOfRange { t, max: t_max });
    }
    let m = code.tower().m() as i64;
    let s = code.s() as i64;
    Ok(m * ((s + 1) * (t_max as i64 - t as i64) + 1))
}

/// Upper bound kappa^(l+1) * q^(-m((s+1)(t_max - t) + 1)) on the
/// decoding-failure probability for errors of weight t <= t_max.
pub fn failure_bound(code: &HilrsCode, t: usize, mode: BoundMode) -> Result<f64, Error> {
    let e = failure_bound_exponent(code, t)?;
    let kappa = match mode {
        BoundMode::ExactKappa => kappa_exact(code.tower().q()),
        BoundMode::Kappa35 => 3.5,
    };
    let l = code.partition().num_blocks() as i32;
    let q = code.tower().q() as f64;
    Ok(kappa.powi(l + 1) * q.powi(-(e as i32)))
}

/// Result of the rank-equivalence diagnostic for one (error, t) instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankCheck {
    pub rank_m: usize,
    pub rank_bht: usize,
    /// Whether rank_m = (s+1)t + sk held exactly when rank_bht = t did.
    pub equivalent: bool,
}

/// Diagnostic for the key-equation system at the true weight t: the system
/// matrix (in its row-space-equivalent form with the error words in the
/// bottom rows) reaches rank (s+1)t + sk exactly when B H^T has rank t, for
/// H the blockwise parity check of the dimension-(k+t) supercode.
pub fn solvability_rank_check(code: &HilrsCode, e: &[Ext], t: usize) -> Result<RankCheck, Error> {
    let tower = code.tower();
    let (n, k, s) = (code.n(), code.k(), code.s());
    if t > n - k {
        return Err(Error::WeightOutOfRange { t, max: n - k });
    }
    let w = crate::channel::interleaved_weight(tower, e, s, code.partition())?;
    if w != t {
        return Err(Error::InvalidParameter(format!(
            "error has weight {w}, expected t = {t}"
        )));
    }
    // equivalent-row-space form of the system matrix at the true t
    let rows = s * (t + k) + t + 1;
    let mut mt = Mat::zero(tower, rows, s * n);
    for j in 0..s {
        let mb = moore_matrix(tower, t + k, code.component(j).eval_params());
        for row in 0..t + k {
            for col in 0..n {
                *mt.at_mut(j * (t + k) + row, j * n + col) = mb.at(row, col).clone();
            }
        }
        let ep = EvalParams::new(
            e[j * n..(j + 1) * n].to_vec(),
            code.partition().clone(),
            code.xi().to_vec(),
        )?;
        let me = moore_matrix(tower, t + 1, &ep);
        for row in 0..=t {
            for col in 0..n {
                *mt.at_mut(s * (t + k) + row, j * n + col) = me.at(row, col).clone();
            }
        }
    }
    let rank_m = mt.rank(tower);

    let decomp = decompose(tower, e, s, code.partition())?;
    let b = decomp.full_b_matrix(s, code.partition()).embed(tower);
    let rank_bht = if k + t < n {
        let h_cols: usize = s * (n - k - t);
        let mut h = Mat::zero(tower, h_cols, s * n);
        for j in 0..s {
            let hj = crate::code::parity_check(code.component(j), k + t);
            for row in 0..n - k - t {
                for col in 0..n {
                    *h.at_mut(j * (n - k - t) + row, j * n + col) = hj.at(row, col).clone();
                }
            }
        }
        b.mul(tower, &h.transpose(tower)).rank(tower)
    } else {
        0
    };
    let equivalent = (rank_m == (s + 1) * t + s * k) == (rank_bht == t);
    Ok(RankCheck { rank_m, rank_bht, equivalent })
}
