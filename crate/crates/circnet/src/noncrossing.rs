//! Non-crossing partitions, their duals and merged partitions, the concordance
//! predicates, isolation, the pairing and Lagrangian extensions.
//!
//! Primal points are written `1..=n`. The dual point `k~` sits between the
//! primal points `k` and `k+1` (cyclically). In a merged partition the primal
//! point `k` becomes `2k-1` and the dual point `k~` becomes `2k`.

use std::fmt;

use crate::error::{input, Error, Result};
use crate::exact_linalg::IndexSet;

/// Upper bound for exhaustive enumeration.
pub const MAX_ENUM_N: usize = 10;

/// A non-crossing set partition of `1..=n` in canonical form: every block
/// ascending, blocks ordered by their minimum.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NonCrossingPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl NonCrossingPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return input("a partition needs n >= 1");
        }
        let mut seen = vec![false; n + 1];
        let mut canon: Vec<Vec<usize>> = Vec::with_capacity(blocks.len());
        for mut b in blocks {
            if b.is_empty() {
                return input("empty block");
            }
            b.sort_unstable();
            for &x in &b {
                if x == 0 || x > n {
                    return input(format!("element {x} outside 1..={n}"));
                }
                if seen[x] {
                    return input(format!("element {x} appears twice"));
                }
                seen[x] = true;
            }
            canon.push(b);
        }
        if let Some(missing) = (1..=n).find(|&x| !seen[x]) {
            return input(format!("element {missing} is not covered"));
        }
        canon.sort();
        let p = NonCrossingPartition { n, blocks: canon };
        if let Some((a, b)) = p.crossing_witness() {
            return input(format!("blocks {a:?} and {b:?} cross"));
        }
        Ok(p)
    }

    pub fn singletons(n: usize) -> Self {
        NonCrossingPartition {
            n,
            blocks: (1..=n).map(|i| vec![i]).collect(),
        }
    }

    pub fn one_block(n: usize) -> Self {
        NonCrossingPartition {
            n,
            blocks: vec![(1..=n).collect()],
        }
    }

    /// Parses `"1 4 6|2 3|5"`; commas are accepted as separators too. When
    /// `n` is `None` it is taken to be the largest element.
    pub fn parse(text: &str, n: Option<usize>) -> Result<Self> {
        let mut blocks = Vec::new();
        for part in text.split('|') {
            let block: Vec<usize> = part
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| Error::Input(format!("bad partition element {s:?}")))
                })
                .collect::<Result<_>>()?;
            blocks.push(block);
        }
        let inferred = blocks.iter().flatten().copied().max().unwrap_or(0);
        Self::new(n.unwrap_or(inferred), blocks)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_index(&self, x: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(&x))
            .expect("element of the ground set")
    }

    pub fn block_of(&self, x: usize) -> &[usize] {
        &self.blocks[self.block_index(x)]
    }

    pub fn is_isolated(&self, x: usize) -> bool {
        self.block_of(x).len() == 1
    }

    fn crossing_witness(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let label = self.labels();
        for b in &self.blocks {
            for w in b.windows(2) {
                let (lo, hi) = (w[0], w[1]);
                // any block with an element strictly inside (lo, hi) must lie inside it
                for x in lo + 1..hi {
                    let other = &self.blocks[label[x]];
                    if other.iter().any(|&y| y < lo || y > hi) {
                        return Some((b.clone(), other.clone()));
                    }
                }
            }
        }
        None
    }

    /// `labels[x]` is the block index of `x` (index 0 unused).
    fn labels(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n + 1];
        for (k, b) in self.blocks.iter().enumerate() {
            for &x in b {
                label[x] = k;
            }
        }
        label
    }

    /// The dual partition on the dual points `1~..n~`, returned with labels
    /// `1..=n`.
    pub fn dual(&self) -> NonCrossingPartition {
        let n = self.n;
        let mut uf = UnionFind::new(n + 1);
        // The chord from i~ to j~ (i < j) cuts the circle into the primal arcs
        // {i+1..j} and its complement.
        for i in 1..=n {
            for j in i + 1..=n {
                let separated = self.blocks.iter().all(|b| {
                    let inside = b.iter().filter(|&&x| x > i && x <= j).count();
                    inside == 0 || inside == b.len()
                });
                if separated {
                    uf.union(i, j);
                }
            }
        }
        from_union_find(n, &mut uf)
    }

    /// The partition whose dual is `self`.
    pub fn predual(&self) -> NonCrossingPartition {
        let d = self.dual();
        let n = self.n;
        let blocks = d
            .blocks
            .iter()
            .map(|b| b.iter().map(|&x| x % n + 1).collect())
            .collect();
        NonCrossingPartition::new(n, blocks).expect("rotation preserves non-crossing")
    }

    pub fn merge(&self) -> MergedPartition {
        MergedPartition::new(self.clone())
    }

    /// Copy with `x` split off into its own block.
    pub fn split_off(&self, x: usize) -> NonCrossingPartition {
        let mut blocks: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .map(|b| b.iter().copied().filter(|&y| y != x).collect::<Vec<_>>())
            .filter(|b| !b.is_empty())
            .collect();
        blocks.push(vec![x]);
        NonCrossingPartition::new(self.n, blocks).expect("splitting keeps non-crossing")
    }

    /// All non-crossing partitions obtained by merging the singleton `{x}`
    /// into one other block. Empty when `x` is not isolated.
    pub fn merges_of(&self, x: usize) -> Vec<NonCrossingPartition> {
        if !self.is_isolated(x) {
            return Vec::new();
        }
        let mut out = Vec::new();
        for (k, b) in self.blocks.iter().enumerate() {
            if b == &[x] {
                continue;
            }
            let mut blocks = self.blocks.clone();
            blocks[k].push(x);
            blocks.retain(|bb| bb != &[x]);
            if let Ok(p) = NonCrossingPartition::new(self.n, blocks) {
                out.push(p);
            }
        }
        out.sort();
        out
    }

    /// Join with `other`, as a partition (possibly crossing) of `1..=n`
    /// given by its block count.
    fn join_block_count(&self, other: &NonCrossingPartition) -> usize {
        let mut uf = UnionFind::new(self.n + 1);
        for b in self.blocks.iter().chain(other.blocks.iter()) {
            for w in b.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        (1..=self.n).filter(|&x| uf.find(x) == x).count()
    }
}

impl fmt::Display for NonCrossingPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "{}", parts.join("|"))
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn from_union_find(n: usize, uf: &mut UnionFind) -> NonCrossingPartition {
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for x in 1..=n {
        groups.entry(uf.find(x)).or_default().push(x);
    }
    NonCrossingPartition::new(n, groups.into_values().collect()).expect("dual is non-crossing")
}

/// All non-crossing partitions of `1..=n`, sorted by canonical form.
pub fn enumerate_nc(n: usize) -> Result<Vec<NonCrossingPartition>> {
    if n == 0 || n > MAX_ENUM_N {
        return input(format!("enumerate_nc supports 1 <= n <= {MAX_ENUM_N}, got {n}"));
    }
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    extend_nc(n, 1, &mut blocks, &mut out);
    out.sort();
    Ok(out)
}

// Elements are placed in increasing order. Joining `x` to a block whose last
// element is `last` is hopeless when another block already straddles `last`;
// the constructor's check at the leaves settles everything else.
fn extend_nc(
    n: usize,
    x: usize,
    blocks: &mut Vec<Vec<usize>>,
    out: &mut Vec<NonCrossingPartition>,
) {
    if x > n {
        if let Ok(p) = NonCrossingPartition::new(n, blocks.clone()) {
            out.push(p);
        }
        return;
    }
    blocks.push(vec![x]);
    extend_nc(n, x + 1, blocks, out);
    blocks.pop();
    for k in 0..blocks.len() {
        let last = *blocks[k].last().expect("blocks are non-empty");
        let straddled = blocks
            .iter()
            .enumerate()
            .any(|(j, b)| j != k && b[0] < last && b[b.len() - 1] > last);
        if straddled {
            continue;
        }
        blocks[k].push(x);
        extend_nc(n, x + 1, blocks, out);
        blocks[k].pop();
    }
}

/// `(sigma | dual sigma)` on `1..=2n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MergedPartition {
    sigma: NonCrossingPartition,
    dual: NonCrossingPartition,
    blocks: Vec<Vec<usize>>,
}

impl MergedPartition {
    pub fn new(sigma: NonCrossingPartition) -> Self {
        let dual = sigma.dual();
        let mut blocks: Vec<Vec<usize>> = sigma
            .blocks()
            .iter()
            .map(|b| b.iter().map(|&k| 2 * k - 1).collect())
            .chain(dual.blocks().iter().map(|b| b.iter().map(|&k| 2 * k).collect()))
            .collect();
        blocks.sort();
        MergedPartition {
            sigma,
            dual,
            blocks,
        }
    }

    pub fn n(&self) -> usize {
        self.sigma.n()
    }

    pub fn sigma(&self) -> &NonCrossingPartition {
        &self.sigma
    }

    pub fn dual(&self) -> &NonCrossingPartition {
        &self.dual
    }

    /// Blocks over `1..=2n`, canonical order.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, i: usize) -> &[usize] {
        self.blocks
            .iter()
            .find(|b| b.contains(&i))
            .expect("index in 1..=2n")
    }

    pub fn is_isolated(&self, i: usize) -> bool {
        self.block_of(i).len() == 1
    }
}

impl fmt::Display for MergedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "{}", parts.join("|"))
    }
}

fn check_subset(i: &IndexSet, n: usize, expected: usize, what: &str) -> Result<()> {
    if i.len() != expected {
        return input(format!("{what} needs |I| = {expected}, got {}", i.len()));
    }
    if i.last().is_some_and(|m| m > 2 * n) {
        return input(format!("index set {i} is not inside 1..={}", 2 * n));
    }
    Ok(())
}

/// Every merged block leaves exactly one of its elements outside `I`.
pub fn is_concordant(i: &IndexSet, sigma: &NonCrossingPartition) -> Result<bool> {
    let n = sigma.n();
    check_subset(i, n, n - 1, "concordance")?;
    let m = sigma.merge();
    Ok(m
        .blocks()
        .iter()
        .all(|b| b.iter().filter(|&&x| !i.contains(x)).count() == 1))
}

/// Every merged block meets `I` in exactly one element.
pub fn is_coconcordant(i: &IndexSet, sigma: &NonCrossingPartition) -> Result<bool> {
    let n = sigma.n();
    check_subset(i, n, n + 1, "co-concordance")?;
    let m = sigma.merge();
    Ok(m
        .blocks()
        .iter()
        .all(|b| b.iter().filter(|&&x| i.contains(x)).count() == 1))
}

/// The isolation operation on `1..=2n`: for odd `i = 2k-1` the primal point
/// `k` is split from its block; for even `i = 2k` the dual point `k~` is split
/// from its dual block and the primal partition is re-derived. Returns the new
/// primal partition.
pub fn isolate(sigma: &NonCrossingPartition, i: usize) -> Result<NonCrossingPartition> {
    let n = sigma.n();
    if i == 0 || i > 2 * n {
        return input(format!("isolation index {i} outside 1..={}", 2 * n));
    }
    let k = i.div_ceil(2);
    if i % 2 == 1 {
        Ok(sigma.split_off(k))
    } else {
        let dual = sigma.dual();
        if dual.is_isolated(k) {
            return Ok(sigma.clone());
        }
        Ok(dual.split_off(k).predual())
    }
}

/// [`isolate`] on merged partitions.
pub fn isolate_merged(m: &MergedPartition, i: usize) -> Result<MergedPartition> {
    Ok(isolate(m.sigma(), i)?.merge())
}

/// The partitions whose isolation at `i` returns `sigma` and that differ from
/// it: for odd `i = 2k-1`, `k` merged into another block; for even `i = 2k`,
/// `k~` merged into another dual block. Empty when `i` is not isolated.
pub fn merges_at(sigma: &NonCrossingPartition, i: usize) -> Result<Vec<NonCrossingPartition>> {
    let n = sigma.n();
    if i == 0 || i > 2 * n {
        return input(format!("index {i} outside 1..={}", 2 * n));
    }
    let k = i.div_ceil(2);
    if i % 2 == 1 {
        Ok(sigma.merges_of(k))
    } else {
        let mut out: Vec<_> = sigma
            .dual()
            .merges_of(k)
            .into_iter()
            .map(|d| d.predual())
            .collect();
        out.sort();
        Ok(out)
    }
}

/// The 0/1 pairing: 1 iff the block counts add to `n+1` and the join is a
/// single block.
pub fn pairing(tau: &NonCrossingPartition, sigma: &NonCrossingPartition) -> Result<u8> {
    if tau.n() != sigma.n() {
        return input("pairing needs partitions of the same ground set");
    }
    let n = tau.n();
    let ok = tau.num_blocks() + sigma.num_blocks() == n + 1 && tau.join_block_count(sigma) == 1;
    Ok(u8::from(ok))
}

/// Sub-components of the Lagrangian extension, in a fixed order: primal
/// blocks before dual blocks, more deeply nested blocks first, then by
/// smallest element; chords of one block in circle order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagrangianExtension {
    pub sub_components: Vec<Vec<usize>>,
}

impl LagrangianExtension {
    pub fn len(&self) -> usize {
        self.sub_components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sub_components.is_empty()
    }
}

impl fmt::Display for LagrangianExtension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.sub_components {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

/// Extension of the chord `(a, b)`, `a < b`, of a primal (`offset = 1`) or
/// dual (`offset = 0`) block: every second index from `2a - offset` to
/// `2b - 2 - offset`.
fn chord_ext(a: usize, b: usize, offset: usize) -> Vec<usize> {
    (2 * a - offset..=2 * b - 2 - offset).step_by(2).collect()
}

fn block_ext(block: &[usize], offset: usize) -> Vec<usize> {
    block
        .windows(2)
        .flat_map(|w| chord_ext(w[0], w[1], offset))
        .collect()
}

fn lext_of(p: &NonCrossingPartition, offset: usize, out: &mut Vec<Vec<usize>>) {
    let big: Vec<&Vec<usize>> = p.blocks().iter().filter(|b| b.len() > 1).collect();
    let envelopes = |chord: (usize, usize), b: &Vec<usize>| {
        b.iter().all(|&x| x > chord.0 && x < chord.1)
    };
    let depth = |b: &Vec<usize>| {
        big.iter()
            .filter(|o| *o != &b)
            .filter(|o| o.windows(2).any(|w| envelopes((w[0], w[1]), b)))
            .count()
    };
    let mut ordered = big.clone();
    ordered.sort_by_key(|b| (std::cmp::Reverse(depth(b)), b[0]));
    for b in ordered {
        for w in b.windows(2) {
            let removed: Vec<usize> = big
                .iter()
                .filter(|o| envelopes((w[0], w[1]), o))
                .flat_map(|o| block_ext(o, offset))
                .collect();
            let sub: Vec<usize> = chord_ext(w[0], w[1], offset)
                .into_iter()
                .filter(|x| !removed.contains(x))
                .collect();
            out.push(sub);
        }
    }
}

pub fn lagrangian_extension(sigma: &NonCrossingPartition) -> LagrangianExtension {
    let mut subs = Vec::new();
    lext_of(sigma, 1, &mut subs);
    lext_of(&sigma.dual(), 0, &mut subs);
    LagrangianExtension {
        sub_components: subs,
    }
}

/// `I` meets every sub-component of the Lagrangian extension exactly once.
pub fn is_lagrangian_concordant(i: &IndexSet, sigma: &NonCrossingPartition) -> Result<bool> {
    let n = sigma.n();
    if i.len() != n - 1 {
        return input(format!("Lagrangian concordance needs |I| = {}, got {}", n - 1, i.len()));
    }
    if i.last().is_some_and(|m| m > 2 * n - 2) {
        return input(format!("index set {i} is not inside 1..={}", 2 * n - 2));
    }
    let lext = lagrangian_extension(sigma);
    Ok(lext
        .sub_components
        .iter()
        .all(|c| c.iter().filter(|&&x| i.contains(x)).count() == 1))
}

/// Cartesian choices of one element per group, each result sorted.
fn one_from_each(groups: &[Vec<usize>]) -> Vec<IndexSet> {
    let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
    for g in groups {
        let mut next = Vec::with_capacity(acc.len() * g.len());
        for a in &acc {
            for &x in g {
                let mut b = a.clone();
                b.push(x);
                next.push(b);
            }
        }
        acc = next;
    }
    acc.into_iter()
        .map(|v| IndexSet::from_unsorted(v).expect("indices are positive"))
        .collect()
}

/// All `I` concordant with `sigma`: drop one element from every merged block.
pub fn concordant_sets(sigma: &NonCrossingPartition) -> Vec<IndexSet> {
    let n = sigma.n();
    let mut out: Vec<IndexSet> = one_from_each(sigma.merge().blocks())
        .into_iter()
        .map(|kept| kept.complement(2 * n))
        .collect();
    out.sort();
    out
}

/// All `I` co-concordant with `sigma`: keep one element of every merged block.
pub fn coconcordant_sets(sigma: &NonCrossingPartition) -> Vec<IndexSet> {
    let mut out = one_from_each(sigma.merge().blocks());
    out.sort();
    out
}

/// All `I` Lagrangian concordant with `sigma`.
pub fn lagrangian_concordant_sets(sigma: &NonCrossingPartition) -> Vec<IndexSet> {
    let mut out = one_from_each(&lagrangian_extension(sigma).sub_components);
    out.sort();
    out
}

pub fn catalan(n: usize) -> u64 {
    let mut c: u64 = 1;
    for k in 0..n as u64 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}
