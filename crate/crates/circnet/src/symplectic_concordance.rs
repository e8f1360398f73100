//! Skew forms, the convolution operator and concordance vectors.
//!
//! Wedge vectors over `[2n]` use the interleaved labels of
//! [`crate::noncrossing::MergedPartition`]: `k̄ ↦ 2k-1`, `k̃ ↦ 2k`. Wedge vectors
//! over `[2n-2]` are coordinates in the basis `v_1, …, v_{2n-2}` of `V`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::{One, Signed, Zero};

use crate::embeddings::{basis_matrix, vector_to_v_basis};
use crate::error::{input, Error, Result};
use crate::exact_linalg::{
    int, kernel_basis, wedge_expand, IndexSet, RatMatrix, Rational, WedgeVector,
};
use crate::noncrossing::{catalan, concordant_sets, enumerate_nc, NonCrossingPartition};

/// Largest `n` accepted by [`concordance_vectors`].
pub const MAX_CONCORDANCE_N: usize = 8;
/// Largest `n` accepted by [`unique_form_solver`].
pub const MAX_SOLVER_N: usize = 6;

fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// An exactly antisymmetric bilinear form on `Q^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewForm {
    matrix: RatMatrix,
}

impl SkewForm {
    pub fn new(matrix: RatMatrix) -> Result<Self> {
        if !matrix.is_square() || !matrix.is_antisymmetric() {
            return input("a skew form needs a square antisymmetric matrix");
        }
        Ok(SkewForm { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    /// `ω(e_i, e_j)` with 1-based indices.
    pub fn eval(&self, i: usize, j: usize) -> &Rational {
        self.matrix.get(i - 1, j - 1)
    }

    /// Whether the row space of `m` is isotropic: `m · Ω · m^T = 0`.
    pub fn is_isotropic(&self, m: &RatMatrix) -> bool {
        m.mul(&self.matrix).mul(&m.transpose()).is_zero()
    }
}

impl fmt::Display for SkewForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.matrix.fmt(f)
    }
}

/// `Λ_m`: tridiagonal with `(i, i+1) = (-1)^{i+1}`.
pub fn lambda(m: usize) -> SkewForm {
    let mut a = RatMatrix::zeros(m, m);
    for i in 1..m {
        let s = sign(i + 1);
        a.set(i - 1, i, s.clone());
        a.set(i, i - 1, -s);
    }
    SkewForm { matrix: a }
}

fn lambda_tilde_with_corner(n: usize, corner: Rational) -> SkewForm {
    let mut a = lambda(2 * n).matrix;
    a.set(0, 2 * n - 1, corner.clone());
    a.set(2 * n - 1, 0, -corner);
    SkewForm { matrix: a }
}

/// `Λ̃_{2n}` on the interleaved coordinates `(x_1̄, x_1̃, …, x_n̄, x_ñ)`.
pub fn lambda_tilde(n: usize) -> SkewForm {
    lambda_tilde_with_corner(n, sign(n))
}

/// `Λ̄_{2n} = Λ_{2n}^{-1}`.
pub fn lambda_bar(n: usize) -> SkewForm {
    let inv = lambda(2 * n)
        .matrix
        .inverse()
        .expect("Λ_2n is invertible for every n");
    SkewForm { matrix: inv }
}

/// Second form under which `Ω_n(e)` is isotropic: the inverse of `Λ̃_{2n}`
/// with the corner sign flipped.
pub fn lambda_bar_bar(n: usize) -> Option<SkewForm> {
    let inv = lambda_tilde_with_corner(n, -sign(n)).matrix.inverse()?;
    Some(SkewForm { matrix: inv })
}

/// `(Λ_{2n-2}, Λ̃_{2n}, Λ̄_{2n})`.
pub fn standard_forms(n: usize) -> (SkewForm, SkewForm, SkewForm) {
    (lambda(2 * n - 2), lambda_tilde(n), lambda_bar(n))
}

/// The two 6×6 forms whose convolutions kill every concordance vector of
/// `n = 3` in the ambient `⋀^2 Q^6`, although neither comes from `Λ_4`.
pub fn ambient_counterexample_forms() -> [SkewForm; 2] {
    let a = RatMatrix::from_i64(&[
        vec![0, 1, 1, -1, -1, 1],
        vec![-1, 0, 1, 0, -1, -1],
        vec![-1, -1, 0, 1, 0, -1],
        vec![1, 0, -1, 0, 1, 1],
        vec![1, 1, 0, -1, 0, 1],
        vec![-1, 1, 1, -1, -1, 0],
    ]);
    let b = RatMatrix::from_i64(&[
        vec![0, -1, 0, 0, 0, 1],
        vec![1, 0, 1, 0, 0, 0],
        vec![0, -1, 0, -1, 0, 0],
        vec![0, 0, 1, 0, 1, 0],
        vec![0, 0, 0, -1, 0, -1],
        vec![-1, 0, 0, 0, 1, 0],
    ]);
    [SkewForm { matrix: a }, SkewForm { matrix: b }]
}

// ---------------------------------------------------------------------------
// Convolution
// ---------------------------------------------------------------------------

/// Calls `f(pair, output set, sign)` for every pair `a < b` of positions in
/// `set`, with the sign `(-1)^{a+b-1}` of the convolution formula.
fn for_each_contraction(set: &IndexSet, mut f: impl FnMut(usize, usize, IndexSet, Rational)) {
    let s = set.as_slice();
    for a in 0..s.len() {
        for b in a + 1..s.len() {
            let rest: Vec<usize> = s
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != a && k != b)
                .map(|(_, &x)| x)
                .collect();
            // 1-based positions a+1, b+1: (-1)^{(a+1)+(b+1)-1} = (-1)^{a+b+1}.
            let sg = sign(a + b + 1);
            f(s[a], s[b], IndexSet::new(rest).expect("subset of a sorted set"), sg);
        }
    }
}

/// `Q(w)` for the form `form`, extended linearly from basis monomials.
pub fn convolve(form: &SkewForm, w: &WedgeVector) -> Result<WedgeVector> {
    if form.dim() != w.ambient() {
        return input(format!(
            "form of dimension {} applied to a wedge over Q^{}",
            form.dim(),
            w.ambient()
        ));
    }
    if w.degree() < 2 {
        return input("convolution needs degree at least 2");
    }
    let mut out = WedgeVector::zero(w.ambient(), w.degree() - 2);
    for (set, c) in w.terms() {
        for_each_contraction(set, |i, j, rest, sg| {
            let v = form.eval(i, j) * c * sg;
            if !v.is_zero() {
                out.add_term(rest, v);
            }
        });
    }
    Ok(out)
}

/// Matrix of `Q: ⋀^k Q^m → ⋀^{k-2} Q^m`, rows indexed by the source basis
/// and columns by the target basis, both in lexicographic order.
pub fn convolution_matrix(form: &SkewForm, degree: usize) -> Result<RatMatrix> {
    let m = form.dim();
    if degree < 2 || degree > m {
        return input("convolution_matrix needs 2 <= degree <= dim");
    }
    let src = IndexSet::all_subsets(m, degree);
    let dst = IndexSet::all_subsets(m, degree - 2);
    let pos: BTreeMap<IndexSet, usize> = dst.into_iter().enumerate().map(|(k, s)| (s, k)).collect();
    let mut mat = RatMatrix::zeros(src.len(), pos.len());
    for (r, set) in src.iter().enumerate() {
        for_each_contraction(set, |i, j, rest, sg| {
            let c = pos[&rest];
            let v = mat.get(r, c) + form.eval(i, j) * sg;
            mat.set(r, c, v);
        });
    }
    Ok(mat)
}

/// Basis of `ker Q` on `⋀^degree Q^dim`, as wedge vectors.
pub fn convolution_kernel(form: &SkewForm, degree: usize) -> Result<Vec<WedgeVector>> {
    let mat = convolution_matrix(form, degree)?;
    let src = IndexSet::all_subsets(form.dim(), degree);
    Ok(kernel_basis(&mat.transpose())
        .into_iter()
        .map(|v| {
            let mut w = WedgeVector::zero(form.dim(), degree);
            for (set, c) in src.iter().zip(v) {
                if !c.is_zero() {
                    w.add_term(set.clone(), c);
                }
            }
            w
        })
        .collect())
}

// ---------------------------------------------------------------------------
// Concordance vectors
// ---------------------------------------------------------------------------

/// The matrix `A_n` and its columns `w_σ`.
#[derive(Clone, Debug)]
pub struct ConcordanceBasis {
    pub n: usize,
    pub partitions: Vec<NonCrossingPartition>,
    pub subsets: Vec<IndexSet>,
    pub matrix: RatMatrix,
    pub vectors: Vec<WedgeVector>,
}

impl ConcordanceBasis {
    pub fn vector(&self, sigma: &NonCrossingPartition) -> Option<&WedgeVector> {
        let k = self.partitions.iter().position(|p| p == sigma)?;
        Some(&self.vectors[k])
    }
}

/// `w_σ = Σ_I a_{Iσ} e_I`.
pub fn concordance_vector(sigma: &NonCrossingPartition) -> WedgeVector {
    let n = sigma.n();
    let mut w = WedgeVector::zero(2 * n, n - 1);
    for i in concordant_sets(sigma) {
        w.add_term(i, int(1));
    }
    w
}

pub fn concordance_vectors(n: usize) -> Result<ConcordanceBasis> {
    if !(2..=MAX_CONCORDANCE_N).contains(&n) {
        return input(format!("concordance vectors are built for 2 <= n <= {MAX_CONCORDANCE_N}"));
    }
    let partitions = enumerate_nc(n)?;
    let subsets = IndexSet::all_subsets(2 * n, n - 1);
    let row_of: BTreeMap<&IndexSet, usize> = subsets.iter().enumerate().map(|(k, s)| (s, k)).collect();
    let mut matrix = RatMatrix::zeros(subsets.len(), partitions.len());
    let mut vectors = Vec::with_capacity(partitions.len());
    for (c, sigma) in partitions.iter().enumerate() {
        let w = concordance_vector(sigma);
        for (set, _) in w.terms() {
            matrix.set(row_of[set], c, int(1));
        }
        vectors.push(w);
    }
    Ok(ConcordanceBasis {
        n,
        partitions,
        subsets,
        matrix,
        vectors,
    })
}

// ---------------------------------------------------------------------------
// Factorization of w_σ
// ---------------------------------------------------------------------------

/// `e_p ± e_q` with `p < q` of equal parity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Bracket {
    pub p: usize,
    pub q: usize,
    pub negative: bool,
}

impl Bracket {
    /// The sign before `e_q` is `-` when an odd number of integers of the
    /// same parity lie strictly between `p` and `q`.
    pub fn new(p: usize, q: usize) -> Bracket {
        let between = (q - p) / 2 - 1;
        Bracket {
            p,
            q,
            negative: between % 2 == 1,
        }
    }

    pub fn e_vector(&self, m: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); m];
        v[self.p - 1] = int(1);
        v[self.q - 1] = if self.negative { int(-1) } else { int(1) };
        v
    }

    /// `Σ_{t=0}^{(q-p)/2-1} (-1)^t v_{p+2t}` as coordinates in `Q^{m-2}`.
    pub fn v_vector(&self, m: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); m - 2];
        for t in 0..(self.q - self.p) / 2 {
            v[self.p + 2 * t - 1] = sign(t);
        }
        v
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.negative { '-' } else { '+' };
        write!(f, "(e{}{}e{})", self.p, s, self.q)
    }
}

/// Formats a coordinate vector as `(v1-v3+v5)`.
pub fn format_v_factor(v: &[Rational]) -> String {
    let mut s = String::from("(");
    let mut first = true;
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            s.push('-');
        } else if !first {
            s.push('+');
        }
        if c.abs() != Rational::one() {
            s.push_str(&crate::exact_linalg::fmt_rational(&c.abs()));
        }
        s.push_str(&format!("v{}", k + 1));
        first = false;
    }
    if first {
        s.push('0');
    }
    s.push(')');
    s
}

/// Output of the bracket algorithm for one partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeFactorization {
    pub sigma: NonCrossingPartition,
    /// Consecutive pairs of every merged block, block by block.
    pub pairs: Vec<(usize, usize)>,
    /// The pairs sorted by first index, with signs.
    pub brackets: Vec<Bracket>,
    /// The brackets rewritten in the basis of `V`.
    pub v_factors: Vec<Vec<Rational>>,
}

impl WedgeFactorization {
    pub fn e_factors(&self) -> Vec<Vec<Rational>> {
        let m = 2 * self.sigma.n();
        self.brackets.iter().map(|b| b.e_vector(m)).collect()
    }

    /// `⋀ e_factors`, which should equal `w_σ`.
    pub fn expand(&self) -> WedgeVector {
        wedge_expand(&self.e_factors()).expect("n-1 factors of length 2n")
    }

    /// `⋀ v_factors`, which should equal `w_σ|_V`.
    pub fn expand_v(&self) -> WedgeVector {
        wedge_expand(&self.v_factors).expect("n-1 factors of length 2n-2")
    }

    pub fn pairs_line(&self) -> String {
        self.pairs.iter().map(|(a, b)| format!("({a} {b})")).collect()
    }

    pub fn brackets_line(&self) -> String {
        self.brackets.iter().map(|b| b.to_string()).collect::<Vec<_>>().join("∧")
    }

    pub fn v_line(&self) -> String {
        self.v_factors.iter().map(|v| format_v_factor(v)).collect::<Vec<_>>().join("∧")
    }
}

pub fn algorithm_factorization(sigma: &NonCrossingPartition) -> WedgeFactorization {
    let n = sigma.n();
    let merged = sigma.merge();
    let mut blocks: Vec<Vec<usize>> = merged.blocks().to_vec();
    blocks.sort_by_key(|b| b[0]);
    let pairs: Vec<(usize, usize)> = blocks
        .iter()
        .flat_map(|b| b.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>())
        .collect();
    let mut brackets: Vec<Bracket> = pairs.iter().map(|&(p, q)| Bracket::new(p, q)).collect();
    brackets.sort_by_key(|b| (b.p, b.q));
    let v_factors = brackets.iter().map(|b| b.v_vector(2 * n)).collect();
    WedgeFactorization {
        sigma: sigma.clone(),
        pairs,
        brackets,
        v_factors,
    }
}

/// Rows `v_{j_l j_{l+1}}` for every block of `σ` and of `σ̃` with at least two
/// elements, sorted by first nonzero position. The second entry's sign is the
/// one that puts the row in `V`.
pub fn hollow_point_matrix(sigma: &NonCrossingPartition) -> RatMatrix {
    let n = sigma.n();
    let c = |x: usize| sign(x.div_ceil(2));
    let mut rows: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut push = |p: usize, q: usize| {
        let mut v = vec![Rational::zero(); 2 * n];
        v[p - 1] = int(1);
        v[q - 1] = -(c(p) / c(q));
        rows.push((p, v));
    };
    for block in sigma.blocks() {
        for w in block.windows(2) {
            push(2 * w[0] - 1, 2 * w[1] - 1);
        }
    }
    for block in sigma.dual().blocks() {
        for w in block.windows(2) {
            push(2 * w[0], 2 * w[1]);
        }
    }
    rows.sort_by_key(|(p, _)| *p);
    RatMatrix::from_rows(rows.into_iter().map(|(_, v)| v).collect())
        .expect("a nonempty set of rows of equal length")
}

// ---------------------------------------------------------------------------
// Restriction to V
// ---------------------------------------------------------------------------

/// Coordinates of `w ∈ ⋀^k V ⊂ ⋀^k Q^{2n}` in the basis `v_I`.
///
/// The first `2n-2` columns of `B_n` form a unit upper triangular matrix
/// `B'`, so `w = c·⋀B` gives `c = w'·⋀B'^{-1}` where `w'` keeps the
/// coordinates supported in `[2n-2]`.
pub fn restrict_to_v(w: &WedgeVector) -> Result<WedgeVector> {
    let m = w.ambient();
    if m < 4 || !m.is_multiple_of(2) {
        return input("restrict_to_v needs an ambient Q^(2n) with n >= 2");
    }
    let n = m / 2;
    let b = basis_matrix(n);
    let cols: Vec<usize> = (0..m - 2).collect();
    let b_prime = b.select(&cols, &cols);
    let b_inv = b_prime.inverse().expect("unit upper triangular");
    let mut truncated = WedgeVector::zero(m - 2, w.degree());
    for (set, c) in w.terms() {
        if set.last().is_none_or(|x| x <= m - 2) {
            truncated.add_term(set.clone(), c.clone());
        }
    }
    let coords = truncated.transform(&b_inv);
    if coords.transform(&b) != *w {
        return Err(Error::Membership("wedge vector does not lie in the exterior power of V".into()));
    }
    Ok(coords)
}

/// `v`-coordinates of each factor; convenience wrapper for single vectors.
pub fn factor_to_v(v: &[Rational]) -> Result<Vec<Rational>> {
    vector_to_v_basis(v)
}

// ---------------------------------------------------------------------------
// Uniqueness of the form
// ---------------------------------------------------------------------------

/// Solution space of `{ Q_ω(w_σ|_V) = 0 : σ ∈ NC_n }` over skew forms `ω`
/// on `Q^{2n-2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormSolution {
    pub n: usize,
    pub constraints: usize,
    pub basis: Vec<SkewForm>,
}

impl FormSolution {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

pub fn unique_form_solver(n: usize) -> Result<FormSolution> {
    if !(2..=MAX_SOLVER_N).contains(&n) {
        return input(format!("the form solver runs for 2 <= n <= {MAX_SOLVER_N}"));
    }
    let m = 2 * n - 2;
    let unknowns: Vec<(usize, usize)> =
        (1..=m).flat_map(|i| (i + 1..=m).map(move |j| (i, j))).collect();
    let idx: BTreeMap<(usize, usize), usize> =
        unknowns.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let mut rows: BTreeSet<Vec<Rational>> = BTreeSet::new();
    if n >= 3 {
        for sigma in enumerate_nc(n)? {
            let wv = restrict_to_v(&concordance_vector(&sigma))?;
            let mut eqs: BTreeMap<IndexSet, Vec<Rational>> = BTreeMap::new();
            for (set, c) in wv.terms() {
                for_each_contraction(set, |i, j, rest, sg| {
                    let row = eqs.entry(rest).or_insert_with(|| vec![Rational::zero(); unknowns.len()]);
                    row[idx[&(i, j)]] += c * sg;
                });
            }
            for row in eqs.into_values() {
                if let Some(lead) = row.iter().find(|x| !x.is_zero()).cloned() {
                    rows.insert(row.iter().map(|x| x / &lead).collect());
                }
            }
        }
    }
    let constraints = rows.len();
    let basis_vectors = if rows.is_empty() {
        (0..unknowns.len())
            .map(|k| {
                let mut v = vec![Rational::zero(); unknowns.len()];
                v[k] = int(1);
                v
            })
            .collect()
    } else {
        kernel_basis(&RatMatrix::from_rows(rows.into_iter().collect())?)
    };
    let basis = basis_vectors
        .into_iter()
        .map(|v| {
            let mut a = RatMatrix::zeros(m, m);
            for (k, &(i, j)) in unknowns.iter().enumerate() {
                a.set(i - 1, j - 1, v[k].clone());
                a.set(j - 1, i - 1, -v[k].clone());
            }
            SkewForm { matrix: a }
        })
        .collect();
    Ok(FormSolution {
        n,
        constraints,
        basis,
    })
}

/// Checks `ker Q = span{w_σ|_V}` under `Λ_{2n-2}`; returns the kernel
/// dimension and whether the spans agree.
pub fn kernel_equals_concordance_space(n: usize) -> Result<(usize, bool)> {
    let form = lambda(2 * n - 2);
    let kernel = convolution_kernel(&form, n - 1)?;
    let restricted: Vec<WedgeVector> = enumerate_nc(n)?
        .iter()
        .map(|s| restrict_to_v(&concordance_vector(s)))
        .collect::<Result<_>>()?;
    let subsets = IndexSet::all_subsets(2 * n - 2, n - 1);
    let to_matrix = |ws: &[WedgeVector]| -> Result<RatMatrix> {
        if ws.is_empty() {
            return Ok(RatMatrix::zeros(0, subsets.len()));
        }
        RatMatrix::from_rows(ws.iter().map(|w| subsets.iter().map(|s| w.coeff(s)).collect()).collect())
    };
    let k = to_matrix(&kernel)?;
    let h = to_matrix(&restricted)?;
    let equal = h.rank() == restricted.len()
        && restricted.len() as u64 == catalan(n)
        && k.rank() == kernel.len()
        && k.vstack(&h).rank() == kernel.len()
        && kernel.len() == restricted.len();
    Ok((kernel.len(), equal))
}
