//! Explicit matrices representing the point of a network in `Gr(n-1, 2n)`
//! and `Gr(n+1, 2n)`.
//!
//! Column `2j-1` corresponds to the primal boundary vertex `j̄` and column
//! `2j` to the dual boundary vertex `j̃`. The subspace
//! `V = { v : Σ(-1)^i v_{2i} = 0, Σ(-1)^i v_{2i-1} = 0 }` carries the basis
//! `v_k = e_k + e_{k+2}`.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_linalg::{
    int, plucker_of_rowspace, rat, subspace_relation, RatMatrix, Rational, SubspaceRelation,
};
use crate::network::{effective_resistance, Network, ResistanceMatrix, ResponseMatrix};

fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `Ω_n(e)` with the dependent last row removed, an `(n-1) × 2n` matrix.
///
/// Row `i` holds `(-1)^{i+j} x_ij` in column `2j-1` and ones in columns
/// `2i-2` and `2i`; the first row's left one wraps around to column `2n`
/// with sign `(-1)^n`.
pub fn omega_matrix(m: &ResponseMatrix) -> RatMatrix {
    omega_rows(m, m.n() - 1)
}

/// The first `rows` rows of the full `n`-row pattern.
pub(crate) fn omega_rows(m: &ResponseMatrix, rows: usize) -> RatMatrix {
    let n = m.n();
    let mut out = RatMatrix::zeros(rows, 2 * n);
    for i in 1..=rows {
        for j in 1..=n {
            out.set(i - 1, 2 * j - 2, sign(i + j) * m.x(i, j));
        }
        if i == 1 {
            out.set(0, 2 * n - 1, sign(n));
        } else {
            out.set(i - 1, 2 * i - 3, int(1));
        }
        out.set(i - 1, 2 * i - 1, int(1));
    }
    out
}

/// `B_n`: the `(2n-2) × 2n` matrix whose rows are `v_k = e_k + e_{k+2}`.
pub fn basis_matrix(n: usize) -> RatMatrix {
    let mut b = RatMatrix::zeros(2 * n - 2, 2 * n);
    for k in 0..2 * n - 2 {
        b.set(k, k, int(1));
        b.set(k, k + 2, int(1));
    }
    b
}

/// True when `row` (of even length `2n`) lies in `V`.
pub fn in_v(row: &[Rational]) -> bool {
    let mut odd = Rational::zero();
    let mut even = Rational::zero();
    for (idx, x) in row.iter().enumerate() {
        let i = idx / 2 + 1;
        if idx % 2 == 0 {
            odd += sign(i) * x;
        } else {
            even += sign(i) * x;
        }
    }
    odd.is_zero() && even.is_zero()
}

/// Coordinates of a single vector of `V` in the basis `v_1, …, v_{2n-2}`.
pub fn vector_to_v_basis(row: &[Rational]) -> Result<Vec<Rational>> {
    let m = row.len();
    if m < 4 || !m.is_multiple_of(2) {
        return Err(Error::Input(format!("vector of length {m} is not in Q^(2n), n >= 2")));
    }
    if !in_v(row) {
        return Err(Error::Membership("vector does not lie in V".into()));
    }
    let mut c: Vec<Rational> = Vec::with_capacity(m - 2);
    for k in 0..m - 2 {
        let prev = if k >= 2 { c[k - 2].clone() } else { Rational::zero() };
        c.push(&row[k] - prev);
    }
    Ok(c)
}

/// Solves `M = M̃ · B_n` row by row.
pub fn to_v_basis(m: &RatMatrix) -> Result<RatMatrix> {
    let rows = (0..m.rows())
        .map(|i| {
            vector_to_v_basis(m.row_slice(i)).map_err(|e| match e {
                Error::Membership(_) => Error::Membership(format!("row {} does not lie in V", i + 1)),
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Ok(RatMatrix::zeros(0, m.cols().saturating_sub(2)));
    }
    RatMatrix::from_rows(rows)
}

/// `m_ij = -1/2 (R_{i,j} + R_{i+1,j+1} - R_{i,j+1} - R_{i+1,j})` with cyclic indices.
pub fn dual_response_from_resistance(r: &ResistanceMatrix) -> RatMatrix {
    let n = r.n();
    let nx = |i: usize| i % n + 1;
    let half = rat(1, 2);
    let mut m = RatMatrix::zeros(n, n);
    for i in 1..=n {
        for j in 1..=n {
            let s = r.r(i, j) + r.r(nx(i), nx(j)) - r.r(i, nx(j)) - r.r(nx(i), j);
            m.set(i - 1, j - 1, -(s * &half));
        }
    }
    m
}

/// `Ω_{n,R}(e)`, all `n` rows. Even column `2j` of row `i` holds
/// `(-1)^{i+j} m_ij`; odd columns carry ones at `2i-1` and `2i+1`, the last
/// row wrapping to column 1 with sign `(-1)^n`.
pub fn omega_resistance(r: &ResistanceMatrix) -> RatMatrix {
    let n = r.n();
    let m = dual_response_from_resistance(r);
    let mut out = RatMatrix::zeros(n, 2 * n);
    for i in 1..=n {
        for j in 1..=n {
            out.set(i - 1, 2 * j - 1, sign(i + j) * m.get(i - 1, j - 1));
        }
        out.set(i - 1, 2 * i - 2, int(1));
        if i == n {
            out.set(n - 1, 0, sign(n));
        } else {
            out.set(i - 1, 2 * i, int(1));
        }
    }
    out
}

/// `Ω'_{n,R}`: `Ω_{n,R}` without its first row.
pub fn omega_resistance_reduced(r: &ResistanceMatrix) -> RatMatrix {
    let full = omega_resistance(r);
    let rows: Vec<usize> = (1..full.rows()).collect();
    let cols: Vec<usize> = (0..full.cols()).collect();
    full.select(&rows, &cols)
}

/// Which column of `S` is pinned to zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SGauge {
    LastColumnZero,
    FirstColumnZero,
}

/// Solves the telescoping relations for `S` with `S_{i,n} = 0`:
/// `S_{i,k} = Σ_{r ≤ k} (M_R)_{r,i}`.
pub fn cgs_s(m: &ResponseMatrix) -> Result<RatMatrix> {
    cgs_s_with_gauge(m, SGauge::LastColumnZero)
}

pub fn cgs_s_with_gauge(m: &ResponseMatrix, gauge: SGauge) -> Result<RatMatrix> {
    let n = m.n();
    let mut s = RatMatrix::zeros(n, n);
    for i in 1..=n {
        let mut acc = Rational::zero();
        for k in 1..=n {
            acc += m.x(k, i);
            s.set(i - 1, k - 1, acc.clone());
        }
        if !s.get(i - 1, n - 1).is_zero() {
            return Err(Error::Gauge(format!("column {i} of the response matrix does not sum to zero")));
        }
    }
    if gauge == SGauge::FirstColumnZero {
        for i in 0..n {
            let shift = s.get(i, 0).clone();
            for k in 0..n {
                s.set(i, k, s.get(i, k) - &shift);
            }
        }
    }
    Ok(s)
}

/// Rebuilds `M_R` from `S`: the entries of `-M_R` are `S_{i,n} - S_{i,1}` in
/// row 1 and `S_{i,r-1} - S_{i,r}` in row `r ≥ 2`, column `i`.
pub fn response_from_s(s: &RatMatrix) -> RatMatrix {
    let n = s.rows();
    let mut out = RatMatrix::zeros(n, n);
    for i in 0..n {
        out.set(0, i, -(s.get(i, n - 1) - s.get(i, 0)));
        for r in 1..n {
            out.set(r, i, -(s.get(i, r - 1) - s.get(i, r)));
        }
    }
    out
}

/// `D = diag(1,1,-1,-1,…)`.
pub fn cgs_d(n: usize) -> RatMatrix {
    let d: Vec<Rational> = (0..2 * n).map(|c| sign(c / 2)).collect();
    RatMatrix::diagonal(&d)
}

/// `D̃ = diag(-1,1,-1,1,…)`.
pub fn d_tilde(n: usize) -> RatMatrix {
    let d: Vec<Rational> = (0..2 * n).map(|c| sign(c + 1)).collect();
    RatMatrix::diagonal(&d)
}

/// The undecorated `(n+1) × 2n` matrix `M` built from `S`.
pub fn cgs_m(s: &RatMatrix) -> RatMatrix {
    let n = s.rows();
    let mut m = RatMatrix::zeros(n + 1, 2 * n);
    for j in 0..n {
        m.set(0, 2 * j + 1, int(1));
    }
    for i in 1..=n {
        m.set(i, 2 * i - 2, int(1));
        for j in 1..=n {
            m.set(i, 2 * j - 1, s.get(i - 1, j - 1).clone());
        }
    }
    m
}

/// `MD` with the default gauge.
pub fn cgs_matrix(m: &ResponseMatrix) -> Result<RatMatrix> {
    Ok(cgs_m(&cgs_s(m)?).mul(&cgs_d(m.n())))
}

/// `X = M D` read as the boundary measurement matrix of the Postnikov
/// network on `N^d`. Same formula as [`cgs_matrix`].
pub fn x_matrix(m: &ResponseMatrix) -> Result<RatMatrix> {
    cgs_matrix(m)
}

/// Matrix of the cyclic operator `χ` on `Gr(n-1, 2n)`.
pub fn cyclic_shift(n: usize) -> RatMatrix {
    let mut s = RatMatrix::zeros(2 * n, 2 * n);
    for i in 0..2 * n - 1 {
        s.set(i, i + 1, int(1));
    }
    s.set(2 * n - 1, 0, sign(n));
    s
}

/// Checks that `Ω_n(e*)` and `Ω_n(e)·s^{-1}` span the same point.
pub fn dual_point_check(net: &Network) -> Result<bool> {
    let dual = net.dual_network()?;
    let n = net.n();
    let own = omega_matrix(&net.response_matrix()?);
    let other = omega_matrix(&dual.response_matrix()?);
    let s_inv = cyclic_shift(n).inverse().expect("the cyclic shift is invertible");
    let lhs = plucker_of_rowspace(&other)?;
    let rhs = plucker_of_rowspace(&own.mul(&s_inv))?;
    Ok(rhs.proportionality(&lhs).is_some())
}

/// `Ω_{n,R}(e) = Ω_n(e*)·s`, checked through Plücker proportionality.
pub fn resistance_point_check(net: &Network) -> Result<bool> {
    let m = net.response_matrix()?;
    let r = effective_resistance(&m)?;
    let lhs = plucker_of_rowspace(&omega_resistance_reduced(&r))?;
    let rhs = plucker_of_rowspace(&omega_matrix(&m))?;
    Ok(rhs.proportionality(&lhs).is_some())
}

/// All embedding matrices of one network.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingBundle {
    pub n: usize,
    pub omega: RatMatrix,
    pub omega_tilde: RatMatrix,
    pub cgs_md: RatMatrix,
    pub s: RatMatrix,
    pub b: RatMatrix,
    pub d: RatMatrix,
    pub d_tilde: RatMatrix,
}

impl EmbeddingBundle {
    pub fn new(m: &ResponseMatrix) -> Result<Self> {
        let n = m.n();
        if n < 2 {
            return Err(Error::Input("embeddings need n >= 2".into()));
        }
        let omega = omega_matrix(m);
        let omega_tilde = to_v_basis(&omega)?;
        Ok(EmbeddingBundle {
            n,
            omega,
            omega_tilde,
            cgs_md: cgs_matrix(m)?,
            s: cyclic_shift(n),
            b: basis_matrix(n),
            d: cgs_d(n),
            d_tilde: d_tilde(n),
        })
    }

    /// `MD · (Ω_n D̃)^T`, which should vanish.
    pub fn orthogonality_product(&self) -> RatMatrix {
        self.cgs_md.mul(&self.omega.mul(&self.d_tilde).transpose())
    }

    /// Relation between `rowspace(Ω_n D̃)` and `colspace(Λ̄^{-1} (MD)^T)`,
    /// where `lambda_bar_inv` is `Λ̄_{2n}^{-1} = Λ_{2n}`.
    pub fn inclusion(&self, lambda_bar_inv: &RatMatrix) -> Result<SubspaceRelation> {
        let complement = lambda_bar_inv.mul(&self.cgs_md.transpose()).transpose();
        subspace_relation(&self.omega.mul(&self.d_tilde), &complement)
    }
}
