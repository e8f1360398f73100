//! Lam group generators acting on `Q^{2n}`, on `V`, on Plücker vectors and on
//! grove coordinates.
//!
//! Points of the Grassmannian are row spaces and the group acts on the
//! right, `X ↦ X·u`; on Plücker vectors this is [`WedgeVector::transform`].

use num::Zero;

use crate::cli::{CheckReport, Witness};
use crate::embeddings::{basis_matrix, cyclic_shift};
use crate::error::{input, Error, Result};
use crate::exact_linalg::{int, IndexSet, RatMatrix, Rational, WedgeVector};
use crate::groves_dimers::GroveTable;
use crate::noncrossing::{enumerate_nc, isolate, merges_at, pairing, NonCrossingPartition};
use crate::symplectic_concordance::{concordance_vector, restrict_to_v};

/// Largest `n` for the exhaustive checks.
pub const MAX_CHECK_N: usize = 5;

/// `u_i(t)` together with its nilpotent part `𝔲_i = u_i(1) - Id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LamGenerator {
    pub n: usize,
    pub i: usize,
    pub t: Rational,
    pub matrix: RatMatrix,
    pub nilpotent: RatMatrix,
}

fn elementary(m: usize, r: usize, c: usize, t: &Rational) -> RatMatrix {
    let mut a = RatMatrix::identity(m);
    a.set(r - 1, c - 1, a.get(r - 1, c - 1) + t);
    a
}

/// `x_i(t)`: identity plus `t` at `(i, i+1)`; `x_{2n} = s x_1 s^{-1}`.
pub fn x_matrix_lam(n: usize, i: usize, t: &Rational) -> RatMatrix {
    let m = 2 * n;
    if i == m {
        let s = cyclic_shift(n);
        let s_inv = s.inverse().expect("the cyclic shift is invertible");
        return s.mul(&x_matrix_lam(n, 1, t)).mul(&s_inv);
    }
    elementary(m, i, i + 1, t)
}

/// `y_i(t)`: identity plus `t` at `(i+1, i)`; `y_{2n} = s y_1 s^{-1}`.
pub fn y_matrix_lam(n: usize, i: usize, t: &Rational) -> RatMatrix {
    let m = 2 * n;
    if i == m {
        let s = cyclic_shift(n);
        let s_inv = s.inverse().expect("the cyclic shift is invertible");
        return s.mul(&y_matrix_lam(n, 1, t)).mul(&s_inv);
    }
    elementary(m, i + 1, i, t)
}

/// `u_i(t) = x_i(t) y_{i-1}(t)` with `y_0 = y_{2n}`.
pub fn generator(n: usize, i: usize, t: &Rational) -> Result<LamGenerator> {
    if n < 2 {
        return input("Lam generators need n >= 2");
    }
    if !(1..=2 * n).contains(&i) {
        return input(format!("generator index {i} is outside 1..={}", 2 * n));
    }
    let prev = if i == 1 { 2 * n } else { i - 1 };
    let build = |t: &Rational| x_matrix_lam(n, i, t).mul(&y_matrix_lam(n, prev, t));
    let matrix = build(t);
    let nilpotent = build(&int(1)).sub(&RatMatrix::identity(2 * n));
    Ok(LamGenerator {
        n,
        i,
        t: t.clone(),
        matrix,
        nilpotent,
    })
}

/// The unique `U|_V` with `B_n·U = U|_V·B_n`.
pub fn restrict_to_v_operator(u: &RatMatrix) -> Result<RatMatrix> {
    let m = u.rows();
    if !u.is_square() || m < 4 || !m.is_multiple_of(2) {
        return input("restriction needs a square operator on Q^(2n), n >= 2");
    }
    let b = basis_matrix(m / 2);
    let bu = b.mul(u);
    let cols: Vec<usize> = (0..m - 2).collect();
    let b_prime_inv = b.select(&cols, &cols).inverse().expect("unit upper triangular");
    let rows: Vec<usize> = (0..m - 2).collect();
    let restricted = bu.select(&rows, &cols).mul(&b_prime_inv);
    if restricted.mul(&b) != bu {
        return Err(Error::Invariance("the operator does not preserve V".into()));
    }
    Ok(restricted)
}

/// How a matrix acts on a wedge vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionMode {
    /// `x_1 ∧ … ∧ x_k ↦ x_1 A ∧ … ∧ x_k A`.
    Group,
    /// `x_1 ∧ … ∧ x_k ↦ Σ_j x_1 ∧ … ∧ x_j A ∧ … ∧ x_k`.
    Derivation,
}

pub fn act_on_wedge(a: &RatMatrix, w: &WedgeVector, mode: ActionMode) -> Result<WedgeVector> {
    if !a.is_square() || a.rows() != w.ambient() {
        return input(format!(
            "a {}x{} matrix cannot act on wedges over Q^{}",
            a.rows(),
            a.cols(),
            w.ambient()
        ));
    }
    match mode {
        ActionMode::Group => Ok(w.transform(a)),
        ActionMode::Derivation => {
            let m = w.ambient();
            let mut out = WedgeVector::zero(m, w.degree());
            for (set, c) in w.terms() {
                let s = set.as_slice();
                for pos in 0..s.len() {
                    let mut factors: Vec<Vec<Rational>> = s
                        .iter()
                        .map(|&j| {
                            let mut v = vec![Rational::zero(); m];
                            v[j - 1] = int(1);
                            v
                        })
                        .collect();
                    factors[pos] = a.row(s[pos] - 1);
                    let img = crate::exact_linalg::wedge_expand(&factors)?;
                    out = out.add(&img.scale(c));
                }
            }
            Ok(out)
        }
    }
}

/// Whether `i` (a label in `[2n]`) is isolated in the merged partition of `σ`.
pub fn isolated_in_merge(sigma: &NonCrossingPartition, i: usize) -> bool {
    sigma.merge().is_isolated(i)
}

/// Grove coordinates of `u_i(a)·X` where `X = Σ L_σ w_σ`.
pub fn grove_coordinate_action(gt: &GroveTable, i: usize, a: &Rational) -> Result<GroveTable> {
    let n = gt.n();
    if !(1..=2 * n).contains(&i) {
        return input(format!("generator index {i} is outside 1..={}", 2 * n));
    }
    let mut out = GroveTable::new(n);
    for sigma in enumerate_nc(n)? {
        let mut v = gt.get(&sigma);
        if isolated_in_merge(&sigma, i) && !a.is_zero() {
            let mut extra = Rational::zero();
            for kappa in merges_at(&sigma, i)? {
                extra += gt.get(&kappa);
            }
            v += extra * a;
        }
        if !v.is_zero() {
            out.add(sigma, v)?;
        }
    }
    Ok(out)
}

/// Exhaustive check of `𝔲_i w_σ ∈ {0, w_{g_i σ}}` on `Q^{2n}` and on `V`.
pub fn crystal_check(n: usize) -> Result<CheckReport> {
    if !(2..=MAX_CHECK_N).contains(&n) {
        return input(format!("crystal check runs for 2 <= n <= {MAX_CHECK_N}"));
    }
    let mut report = CheckReport::new(format!("crystal n={n}"));
    let partitions = enumerate_nc(n)?;
    for i in 1..=2 * n {
        let g = generator(n, i, &int(1))?;
        let g_v = restrict_to_v_operator(&g.nilpotent)?;
        for sigma in &partitions {
            let w = concordance_vector(sigma);
            let expected = if isolated_in_merge(sigma, i) {
                WedgeVector::zero(2 * n, n - 1)
            } else {
                concordance_vector(&isolate(sigma, i)?)
            };
            let actual = act_on_wedge(&g.nilpotent, &w, ActionMode::Derivation)?;
            if actual != expected {
                report.fail(Witness::new(format!("i={i} sigma={sigma}"), &expected, &actual));
            }
            let actual_v = act_on_wedge(&g_v, &restrict_to_v(&w)?, ActionMode::Derivation)?;
            let expected_v = restrict_to_v(&expected)?;
            if actual_v != expected_v {
                report.fail(Witness::new(format!("V i={i} sigma={sigma}"), &expected_v, &actual_v));
            }
        }
    }
    Ok(report)
}

/// Exhaustive check of `⟨𝔲_i τ, σ⟩ = ⟨τ, 𝔲_i σ⟩` on the pairing of
/// non-crossing partitions, where `𝔲_i σ` is `g_i σ` or zero.
pub fn invariance_check(n: usize) -> Result<CheckReport> {
    if !(2..=MAX_CHECK_N).contains(&n) {
        return input(format!("invariance check runs for 2 <= n <= {MAX_CHECK_N}"));
    }
    let mut report = CheckReport::new(format!("pairing invariance n={n}"));
    let partitions = enumerate_nc(n)?;
    let act = |s: &NonCrossingPartition, i: usize| -> Result<Option<NonCrossingPartition>> {
        if isolated_in_merge(s, i) {
            Ok(None)
        } else {
            Ok(Some(isolate(s, i)?))
        }
    };
    for i in 1..=2 * n {
        for tau in &partitions {
            let ut = act(tau, i)?;
            for sigma in &partitions {
                let us = act(sigma, i)?;
                let lhs = match &ut {
                    Some(t) => pairing(t, sigma)?,
                    None => 0,
                };
                let rhs = match &us {
                    Some(s) => pairing(tau, s)?,
                    None => 0,
                };
                if lhs != rhs {
                    report.fail(Witness::new(
                        format!("i={i} tau={tau} sigma={sigma}"),
                        &lhs,
                        &rhs,
                    ));
                }
            }
        }
    }
    Ok(report)
}

/// Matrix of the pairing on `H` in the basis `w_σ` of `enumerate_nc(n)`.
pub fn pairing_matrix(n: usize) -> Result<RatMatrix> {
    let parts = enumerate_nc(n)?;
    let mut p = RatMatrix::zeros(parts.len(), parts.len());
    for (a, tau) in parts.iter().enumerate() {
        for (b, sigma) in parts.iter().enumerate() {
            p.set(a, b, int(pairing(tau, sigma)? as i64));
        }
    }
    Ok(p)
}

/// Whether `w` lies in the span of the concordance vectors of `n`.
pub fn in_concordance_space(w: &WedgeVector) -> Result<bool> {
    let n = w.ambient() / 2;
    let subsets = IndexSet::all_subsets(2 * n, n - 1);
    let mut rows: Vec<Vec<Rational>> = enumerate_nc(n)?
        .iter()
        .map(|s| {
            let v = concordance_vector(s);
            subsets.iter().map(|k| v.coeff(k)).collect()
        })
        .collect();
    let base = RatMatrix::from_rows(rows.clone())?.rank();
    rows.push(subsets.iter().map(|k| w.coeff(k)).collect());
    Ok(RatMatrix::from_rows(rows)?.rank() == base)
}
