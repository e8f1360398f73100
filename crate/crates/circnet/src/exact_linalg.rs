//! Exact rational scalars, dense matrices and exterior-algebra primitives.
//!
//! Everything here works over `BigRational`; there is no floating point in the
//! crate. Indices of [`IndexSet`] are 1-based, matrix accessors are 0-based.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{input, Error, Result};

pub type Rational = BigRational;

/// `p/q` as a rational. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    BigRational::from_integer(BigInt::from(p))
}

/// Parses `p/q` or `p`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let p: BigInt = num
        .parse()
        .map_err(|_| Error::Input(format!("bad rational numerator {num:?}")))?;
    let q: BigInt = den
        .parse()
        .map_err(|_| Error::Input(format!("bad rational denominator {den:?}")))?;
    if q.is_zero() {
        return input(format!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(p, q))
}

/// Canonical text form: `p/q`, or `p` when the denominator is one.
pub fn fmt_rational(r: &Rational) -> String {
    r.to_string()
}

fn sign_of(count: usize) -> Rational {
    if count.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn diagonal(diag: &[Rational]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length.
    /// An empty row list gives a `0 x cols` matrix only through [`RatMatrix::zeros`].
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return input("ragged rows in matrix");
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from integer rows. Panics on ragged input.
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Rational> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn row_slice(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Matrix product. Panics on a dimension mismatch.
    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square() && *self == self.transpose().scale(&-Rational::one())
    }

    /// Submatrix on 0-based row and column lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> RatMatrix {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        RatMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Rational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Rational::one();
        }
        let mut a: Vec<Vec<Rational>> = self.to_rows();
        let mut negate = false;
        let mut prev = Rational::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        negate = !negate;
                    }
                    None => return Rational::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    /// Determinant by Laplace expansion along the first row. Exponential; kept
    /// as an independent cross-check for small matrices.
    pub fn det_cofactor(&self) -> Rational {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return Rational::one();
        }
        if n == 1 {
            return self.get(0, 0).clone();
        }
        let mut total = Rational::zero();
        let rest: Vec<usize> = (1..n).collect();
        for j in 0..n {
            let a = self.get(0, j);
            if a.is_zero() {
                continue;
            }
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let term = a * self.select(&rest, &cols).det_cofactor();
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    /// Reduced row echelon form and the pivot columns (ascending).
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut a = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].recip();
            for x in a[r].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let m = if self.rows == 0 {
            RatMatrix::zeros(0, self.cols)
        } else {
            RatMatrix::from_rows(a).expect("rref keeps shape")
        };
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let rows: Vec<usize> = (0..n).collect();
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(r.select(&rows, &cols))
    }

    /// Parses rows of whitespace-separated rationals, one row per line.
    pub fn parse(text: &str) -> Result<RatMatrix> {
        let rows: Vec<Vec<Rational>> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| l.split_whitespace().map(parse_rational).collect())
            .collect::<Result<_>>()?;
        RatMatrix::from_rows(rows)
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row_slice(i).iter().map(fmt_rational).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Index sets and wedge vectors
// ---------------------------------------------------------------------------

/// Strictly increasing sequence of 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.contains(&0) {
            return input("index sets are 1-based");
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return input(format!("index set {indices:?} is not strictly increasing"));
        }
        Ok(IndexSet(indices))
    }

    /// Sorts and deduplicates; fails only on a zero index.
    pub fn from_unsorted(mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        Self::new(indices)
    }

    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// `[1, m] \ self`.
    pub fn complement(&self, m: usize) -> IndexSet {
        IndexSet((1..=m).filter(|i| !self.contains(*i)).collect())
    }

    /// All `k`-subsets of `[1, m]` in lexicographic order.
    pub fn all_subsets(m: usize, k: usize) -> Vec<IndexSet> {
        let mut out = Vec::new();
        if k > m {
            return out;
        }
        let mut cur: Vec<usize> = (1..=k).collect();
        loop {
            out.push(IndexSet(cur.clone()));
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < m - (k - 1 - i) {
                    cur[i] += 1;
                    for j in i + 1..k {
                        cur[j] = cur[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    fn zero_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i - 1).collect()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// An element of the `degree`-th exterior power of `Q^ambient`, stored sparsely
/// in the basis `e_I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeVector {
    ambient: usize,
    degree: usize,
    coeffs: BTreeMap<IndexSet, Rational>,
}

impl WedgeVector {
    pub fn zero(ambient: usize, degree: usize) -> Self {
        WedgeVector {
            ambient,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// The degree-0 element `r`.
    pub fn scalar(ambient: usize, r: Rational) -> Self {
        let mut w = Self::zero(ambient, 0);
        w.add_term(IndexSet::empty(), r);
        w
    }

    /// The basis monomial `e_I`.
    pub fn basis(ambient: usize, set: IndexSet) -> Result<Self> {
        let mut w = Self::zero(ambient, set.len());
        w.try_add_term(set, Rational::one())?;
        Ok(w)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, set: &IndexSet) -> Rational {
        self.coeffs.get(set).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexSet, &Rational)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> Vec<IndexSet> {
        self.coeffs.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Adds `c * e_set`, validating the key.
    pub fn try_add_term(&mut self, set: IndexSet, c: Rational) -> Result<()> {
        if set.len() != self.degree {
            return input(format!(
                "index set {set} has size {} but the wedge degree is {}",
                set.len(),
                self.degree
            ));
        }
        if set.last().is_some_and(|m| m > self.ambient) {
            return input(format!("index set {set} exceeds ambient dimension {}", self.ambient));
        }
        self.add_term(set, c);
        Ok(())
    }

    /// Adds `c * e_set` without validation; callers guarantee the key shape.
    pub(crate) fn add_term(&mut self, set: IndexSet, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(set) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, other: &WedgeVector) -> WedgeVector {
        assert_eq!((self.ambient, self.degree), (other.ambient, other.degree));
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &WedgeVector) -> WedgeVector {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> WedgeVector {
        let mut out = Self::zero(self.ambient, self.degree);
        if s.is_zero() {
            return out;
        }
        for (k, v) in &self.coeffs {
            out.coeffs.insert(k.clone(), v * s);
        }
        out
    }

    /// `self ∧ other`.
    pub fn wedge(&self, other: &WedgeVector) -> WedgeVector {
        assert_eq!(self.ambient, other.ambient);
        let mut out = Self::zero(self.ambient, self.degree + other.degree);
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                if let Some((set, negative)) = merge_sorted(a.as_slice(), b.as_slice()) {
                    let c = x * y;
                    out.add_term(set, if negative { -c } else { c });
                }
            }
        }
        out
    }

    /// Image under the linear map sending `e_j` to row `j` of `a`, extended to
    /// the exterior power. This is how right multiplication `X -> X a` of a
    /// representative matrix acts on its Plücker vector.
    pub fn transform(&self, a: &RatMatrix) -> WedgeVector {
        assert_eq!(a.rows(), self.ambient, "transform: row count must match ambient");
        let mut out = Self::zero(a.cols(), self.degree);
        for (set, c) in &self.coeffs {
            let factors: Vec<Vec<Rational>> =
                set.as_slice().iter().map(|&j| a.row(j - 1)).collect();
            let img = expand_factors(a.cols(), &factors);
            for (k, v) in img.coeffs {
                out.add_term(k, v * c);
            }
        }
        out
    }

    /// Returns `c` with `other = c * self` when both are nonzero and proportional.
    pub fn proportionality(&self, other: &WedgeVector) -> Option<Rational> {
        if self.ambient != other.ambient || self.degree != other.degree {
            return None;
        }
        let (k, v) = self.coeffs.iter().next()?;
        let c = other.coeff(k) / v;
        if c.is_zero() {
            return None;
        }
        if self.len() != other.len() {
            return None;
        }
        for (k, v) in &self.coeffs {
            if other.coeff(k) != v * &c {
                return None;
            }
        }
        Some(c)
    }

    pub fn all_nonnegative(&self) -> bool {
        self.coeffs.values().all(|v| !v.is_negative())
    }

    /// Parses the text form produced by `Display`.
    pub fn parse(ambient: usize, degree: usize, text: &str) -> Result<WedgeVector> {
        let mut w = Self::zero(ambient, degree);
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (lhs, rhs) = line.split_once(':').ok_or(Error::Parse {
                line: lineno + 1,
                msg: "expected `indices : value`".into(),
            })?;
            let lhs = lhs.trim();
            let idx: Vec<usize> = if lhs == "-" || lhs.is_empty() {
                Vec::new()
            } else {
                lhs.split(',')
                    .map(|s| s.trim().parse::<usize>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| Error::Parse {
                        line: lineno + 1,
                        msg: format!("bad index list {lhs:?}"),
                    })?
            };
            w.try_add_term(IndexSet::new(idx)?, parse_rational(rhs)?)?;
        }
        Ok(w)
    }
}

impl fmt::Display for WedgeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.coeffs {
            let key = if k.is_empty() { "-".to_string() } else { k.to_string() };
            writeln!(f, "{} : {}", key, fmt_rational(v))?;
        }
        Ok(())
    }
}

/// Merges two sorted index lists; returns `None` on a repeated index and the
/// parity of the shuffle otherwise.
fn merge_sorted(a: &[usize], b: &[usize]) -> Option<(IndexSet, bool)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut swaps = 0usize;
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            // b[j] jumps over the remaining elements of a
            swaps += a.len() - i;
            out.push(b[j]);
            j += 1;
        } else {
            return None;
        }
    }
    Some((IndexSet(out), swaps % 2 == 1))
}

fn expand_factors(m: usize, factors: &[Vec<Rational>]) -> WedgeVector {
    let mut acc: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
    acc.insert(Vec::new(), Rational::one());
    for v in factors {
        let mut next: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
        for (set, c) in &acc {
            for (j0, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let j = j0 + 1;
                let pos = match set.binary_search(&j) {
                    Ok(_) => continue,
                    Err(p) => p,
                };
                let mut s = set.clone();
                s.insert(pos, j);
                let term = c * vj * sign_of(set.len() - pos);
                let e = next.entry(s).or_insert_with(Rational::zero);
                *e += term;
            }
        }
        next.retain(|_, v| !v.is_zero());
        acc = next;
    }
    let mut w = WedgeVector::zero(m, factors.len());
    for (k, v) in acc {
        w.add_term(IndexSet(k), v);
    }
    w
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Determinant of the submatrix on the given 1-based rows and columns.
pub fn minor(m: &RatMatrix, rows: &IndexSet, cols: &IndexSet) -> Result<Rational> {
    if rows.len() != cols.len() {
        return input(format!(
            "minor needs as many rows ({}) as columns ({})",
            rows.len(),
            cols.len()
        ));
    }
    if rows.last().is_some_and(|r| r > m.rows()) || cols.last().is_some_and(|c| c > m.cols()) {
        return input("minor index out of range");
    }
    Ok(m.select(&rows.zero_based(), &cols.zero_based()).det())
}

/// Plücker vector of the row space of a full-rank `k x m` matrix: the
/// coefficient at `I` is the maximal minor on columns `I`.
pub fn plucker_of_rowspace(m: &RatMatrix) -> Result<WedgeVector> {
    let k = m.rows();
    if k > m.cols() {
        return input("more rows than columns");
    }
    let r = m.rank();
    if r != k {
        return Err(Error::Rank {
            expected: k,
            found: r,
        });
    }
    let rows: Vec<usize> = (0..k).collect();
    let mut w = WedgeVector::zero(m.cols(), k);
    for set in IndexSet::all_subsets(m.cols(), k) {
        let d = m.select(&rows, &set.zero_based()).det();
        w.add_term(set, d);
    }
    Ok(w)
}

/// Full expansion of `f_1 ∧ ... ∧ f_k` in the standard basis.
pub fn wedge_expand(factors: &[Vec<Rational>]) -> Result<WedgeVector> {
    let Some(first) = factors.first() else {
        return input("wedge_expand needs at least one factor");
    };
    let m = first.len();
    if factors.iter().any(|f| f.len() != m) {
        return input("wedge factors have different lengths");
    }
    if factors.len() > m {
        return input("more wedge factors than the ambient dimension");
    }
    Ok(expand_factors(m, factors))
}

/// Basis of the right null space, one vector per free column of the reduced
/// echelon form, in column order.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let (r, pivots) = m.rref();
    let mut out = Vec::new();
    for free in (0..m.cols()).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); m.cols()];
        v[free] = Rational::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -r.get(row, free).clone();
        }
        out.push(v);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubspaceRelation {
    Equal,
    AInB,
    BInA,
    Incomparable,
}

impl fmt::Display for SubspaceRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SubspaceRelation::Equal => "equal",
            SubspaceRelation::AInB => "A_in_B",
            SubspaceRelation::BInA => "B_in_A",
            SubspaceRelation::Incomparable => "incomparable",
        };
        f.write_str(s)
    }
}

/// Compares the row spaces of `a` and `b` by exact ranks.
pub fn subspace_relation(a: &RatMatrix, b: &RatMatrix) -> Result<SubspaceRelation> {
    if a.cols() != b.cols() {
        return input("subspace_relation needs equal column counts");
    }
    let ra = a.rank();
    let rb = b.rank();
    let rab = a.vstack(b).rank();
    Ok(match (rab == ra, rab == rb) {
        (true, true) => SubspaceRelation::Equal,
        (false, true) => SubspaceRelation::AInB,
        (true, false) => SubspaceRelation::BInA,
        (false, false) => SubspaceRelation::Incomparable,
    })
}

/// Solves `x * a = b` for a row vector `x` when `b` lies in the row space of
/// `a` (rows of `a` independent). Returns `None` otherwise.
pub fn solve_in_rowspace(a: &RatMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let k = a.rows();
    // Columns of a^T augmented with b; reduce.
    let mut aug = RatMatrix::zeros(a.cols(), k + 1);
    for j in 0..a.cols() {
        for i in 0..k {
            aug.set(j, i, a.get(i, j).clone());
        }
        aug.set(j, k, b[j].clone());
    }
    let (r, pivots) = aug.rref();
    if pivots.contains(&k) || pivots.len() < k {
        return None;
    }
    Some((0..k).map(|i| r.get(i, k).clone()).collect())
}
