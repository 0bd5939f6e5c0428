//! Shifted row degrees, weak-Popov form, and left minimal approximant bases
//! over the zero-derivation skew ring, plus the fast key-equation solver
//! built on them.
//!
//! A row vector b is a left approximant of order d of a skew matrix W when
//! b W = 0 mod_r x^d. The basis computation raises the order one step at a
//! time: the order-sigma residual of B W is eliminated by constant row
//! operations, rows still violating the order get multiplied by x on the
//! left, and a final weak-Popov reduction plus a pivot sort yields the
//! v-ordered form whose row degrees are canonical for the module.

use crate::code::HilrsCode;
use crate::decode::{decoding_radius, FailureReason, KeyEquationSolution};
use crate::ff::{Ext, FieldTower};
use crate::skew::{Degree, SkewPoly};

/// Shift vector for weighted row degrees.
pub type ShiftVector = Vec<i64>;

/// v-shifted row degree: max over entries of deg(b_j) + v_j, with the zero
/// row at minus infinity.
pub fn shifted_rdeg(row: &[SkewPoly], v: &[i64]) -> Degree {
    assert_eq!(row.len(), v.len(), "shift length must match the row");
    row.iter()
        .zip(v)
        .map(|(b, &s)| b.degree().plus(s))
        .max()
        .unwrap_or(Degree::NegInf)
}

/// v-pivot index: the largest index attaining the shifted row degree.
/// None for the zero row.
pub fn pivot_index(row: &[SkewPoly], v: &[i64]) -> Option<usize> {
    let rdeg = shifted_rdeg(row, v);
    if rdeg == Degree::NegInf {
        return None;
    }
    (0..row.len()).rev().find(|&j| row[j].degree().plus(v[j]) == rdeg)
}

/// True when the v-pivot indices strictly increase down the rows; zero rows
/// disqualify the matrix.
pub fn is_weak_popov(rows: &[Vec<SkewPoly>], v: &[i64]) -> bool {
    let mut last: Option<usize> = None;
    for row in rows {
        let Some(p) = pivot_index(row, v) else {
            return false;
        };
        if let Some(prev) = last {
            if p <= prev {
                return false;
            }
        }
        last = Some(p);
    }
    true
}

/// Left v-ordered weak-Popov approximant basis of order d.
#[derive(Debug, Clone)]
pub struct ApproximantBasis {
    pub basis: Vec<Vec<SkewPoly>>,
    pub order: usize,
    pub shift: ShiftVector,
}

/// Row vector times skew matrix.
pub fn row_mul(tower: &FieldTower, row: &[SkewPoly], w: &[Vec<SkewPoly>]) -> Vec<SkewPoly> {
    let cols = w[0].len();
    let mut out = vec![SkewPoly::zero(); cols];
    for (j, b) in row.iter().enumerate() {
        if b.is_zero() {
            continue;
        }
        for c in 0..cols {
            if w[j][c].is_zero() {
                continue;
            }
            let term = crate::skew::skew_mul(tower, b, &w[j][c]);
            out[c] = out[c].add(tower, &term);
        }
    }
    out
}

/// target -= (c x^shift) * source, entrywise.
fn row_sub_scaled(
    tower: &FieldTower,
    rows: &mut [Vec<SkewPoly>],
    target: usize,
    source: usize,
    c: &Ext,
    shift: usize,
) {
    let src: Vec<SkewPoly> = rows[source].clone();
    for (t, s) in rows[target].iter_mut().zip(src.iter()) {
        let sub = s.shift_scale_left(tower, c, shift);
        *t = t.sub(tower, &sub);
    }
}

fn row_mul_x(tower: &FieldTower, row: &mut [SkewPoly]) {
    for entry in row.iter_mut() {
        *entry = entry.mul_x_left(tower);
    }
}

/// Computes the left v-ordered weak-Popov approximant basis of W of order d
/// by iterative order raising followed by a weak-Popov reduction.
pub fn left_approximant_basis(
    tower: &FieldTower,
    w: &[Vec<SkewPoly>],
    d: usize,
    v: &[i64],
) -> ApproximantBasis {
    let a = w.len();
    assert!(a > 0, "W must have rows");
    let b = w[0].len();
    assert!(w.iter().all(|row| row.len() == b));
    assert_eq!(v.len(), a, "shift length must match the basis dimension");

    let mut basis: Vec<Vec<SkewPoly>> = (0..a)
        .map(|i| {
            (0..a)
                .map(|j| if i == j { SkewPoly::one(tower) } else { SkewPoly::zero() })
                .collect()
        })
        .collect();
    // residual product P = basis * W, updated alongside the basis
    let mut prod: Vec<Vec<SkewPoly>> = w.to_vec();

    for sigma in 0..d {
        let mut delta: Vec<Vec<Ext>> = (0..a)
            .map(|r| (0..b).map(|c| prod[r][c].coeff(sigma, tower)).collect())
            .collect();
        let mut used = vec![false; a];
        for col in 0..b {
            let candidates: Vec<usize> =
                (0..a).filter(|&r| !used[r] && !delta[r][col].is_zero()).collect();
            if candidates.is_empty() {
                continue;
            }
            let pivot = *candidates
                .iter()
                .min_by_key(|&&r| (shifted_rdeg(&basis[r], v), r))
                .unwrap();
            let pivot_inv = tower.inv(&delta[pivot][col]);
            for r in 0..a {
                if r == pivot || delta[r][col].is_zero() {
                    continue;
                }
                let coef = tower.mul(&delta[r][col], &pivot_inv);
                row_sub_scaled(tower, &mut basis, r, pivot, &coef, 0);
                row_sub_scaled(tower, &mut prod, r, pivot, &coef, 0);
                let pivot_delta = delta[pivot].clone();
                for c in 0..b {
                    let sub = tower.mul(&coef, &pivot_delta[c]);
                    delta[r][c] = tower.sub(&delta[r][c], &sub);
                }
            }
            row_mul_x(tower, &mut basis[pivot]);
            row_mul_x(tower, &mut prod[pivot]);
            for c in 0..b {
                delta[pivot][c] = tower.zero();
            }
            used[pivot] = true;
        }
    }

    weak_popov_reduce(tower, &mut basis, v);
    basis.sort_by_key(|row| pivot_index(row, v).expect("basis rows are nonzero"));
    debug_assert!(is_weak_popov(&basis, v));
    ApproximantBasis { basis, order: d, shift: v.to_vec() }
}

/// Mulders-Storjohann simple transformations until all pivot indices are
/// pairwise distinct. Row operations stay inside the module, so the
/// approximant property is preserved.
fn weak_popov_reduce(tower: &FieldTower, rows: &mut Vec<Vec<SkewPoly>>, v: &[i64]) {
    loop {
        let pivots: Vec<Option<usize>> = rows.iter().map(|r| pivot_index(r, v)).collect();
        let mut clash = None;
        'search: for r in 0..rows.len() {
            for u in 0..r {
                if pivots[r].is_some() && pivots[r] == pivots[u] {
                    clash = Some((r, u));
                    break 'search;
                }
            }
        }
        let Some((r, u)) = clash else {
            break;
        };
        let j = pivots[r].unwrap();
        let dr = rows[r][j].degree().finite().expect("pivot entry is nonzero");
        let du = rows[u][j].degree().finite().expect("pivot entry is nonzero");
        let (red, by) = if dr >= du { (r, u) } else { (u, r) };
        let shift = (dr - du).unsigned_abs() as usize;
        let lead_red = rows[red][j].lead().unwrap().clone();
        let lead_by = rows[by][j].lead().unwrap().clone();
        let c = tower.mul(&lead_red, &tower.inv(&tower.theta(&lead_by, shift)));
        row_sub_scaled(tower, rows, red, by, &c, shift);
        debug_assert!(
            rows[red].iter().any(|p| !p.is_zero()),
            "basis rows stay independent"
        );
    }
}

/// Solves the key equation through a left approximant basis of
///
/// W = (-I_s ; R ; diag(G_1..G_s)), shift v = (0_s, k-1, 0_s),
///
/// at order d = D + n with the degree budget D = t_max + k. Basis rows with
/// v-degree below D are exact kernel vectors of W and correspond one to one
/// to key-equation solutions; they are returned in ascending v-degree with
/// sigma monic. The chi entries only feed the degree validation.
pub fn key_equation_candidates_mab(
    code: &HilrsCode,
    rs: &[SkewPoly],
) -> Result<Vec<KeyEquationSolution>, FailureReason> {
    let tower = code.tower();
    let (n, k, s) = (code.n(), code.k(), code.s());
    let t_max = decoding_radius(n, k, s);
    let degree_budget = (t_max + k) as i64;
    let order = t_max + k + n;

    let mut v: ShiftVector = vec![0; 2 * s + 1];
    v[s] = k as i64 - 1;

    let mut w = vec![vec![SkewPoly::zero(); s]; 2 * s + 1];
    let minus_one = SkewPoly::constant(tower.neg(&tower.one()));
    for j in 0..s {
        w[j][j] = minus_one.clone();
        w[s][j] = rs[j].clone();
        w[s + 1 + j][j] = code.g_poly(j).clone();
    }

    let basis = left_approximant_basis(tower, &w, order, &v);
    let mut qualifying: Vec<(Degree, usize)> = basis
        .basis
        .iter()
        .enumerate()
        .filter_map(|(idx, row)| {
            let rdeg = shifted_rdeg(row, &v);
            (rdeg < Degree::Finite(degree_budget)).then_some((rdeg, idx))
        })
        .collect();
    if qualifying.is_empty() {
        return Err(FailureReason::NoSolution);
    }
    qualifying.sort_by_key(|&(rdeg, idx)| (rdeg, idx));

    let mut out = Vec::with_capacity(qualifying.len());
    for (_, idx) in qualifying {
        let row = &basis.basis[idx];
        let sigma = &row[s];
        if sigma.is_zero() {
            continue;
        }
        let inv = tower.inv(sigma.lead().unwrap());
        let products = (0..s).map(|j| row[j].scale_left(tower, &inv)).collect();
        out.push(KeyEquationSolution { products, sigma: sigma.scale_left(tower, &inv) });
    }
    if out.is_empty() {
        return Err(FailureReason::ZeroSigma);
    }
    Ok(out)
}

/// Minimal-v-degree solution of the key equation via the approximant basis.
pub fn solve_key_equation_mab(
    code: &HilrsCode,
    rs: &[SkewPoly],
) -> Result<KeyEquationSolution, FailureReason> {
    key_equation_candidates_mab(code, rs).map(|mut v| v.remove(0))
}
