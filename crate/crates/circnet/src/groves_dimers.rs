//! Groves and grove measurements, the three Plücker vectors built from them,
//! and the Temperley bipartite networks whose dimer partition functions give
//! the same coordinates by an independent route.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_linalg::{fmt_rational, parse_rational, IndexSet, Rational, WedgeVector};
use crate::network::Network;
use crate::noncrossing::{
    coconcordant_sets, concordant_sets, lagrangian_concordant_sets, NonCrossingPartition,
};

/// Default cap on the number of edges for exhaustive enumeration.
pub const DEFAULT_MAX_EDGES: usize = 24;

/// One grove: its edge ids, boundary partition and weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grove {
    pub edges: Vec<usize>,
    pub partition: NonCrossingPartition,
    pub weight: Rational,
}

#[derive(Clone)]
struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// All groves with the default edge cap.
pub fn enumerate_groves(net: &Network) -> Result<Vec<Grove>> {
    enumerate_groves_capped(net, DEFAULT_MAX_EDGES)
}

/// Every acyclic edge subset whose components all reach the boundary. Under
/// a cactus identification boundary vertices in one block start out joined.
pub fn enumerate_groves_capped(net: &Network, max_edges: usize) -> Result<Vec<Grove>> {
    let ne = net.edges().len();
    if ne > max_edges {
        return Err(Error::Unsupported(format!(
            "{ne} edges exceed the enumeration cap of {max_edges}"
        )));
    }
    let nv = net.num_vertices();
    let mut dsu = Dsu((0..=nv).collect());
    if let Some(c) = net.cactus() {
        for b in c.blocks() {
            for w in b.windows(2) {
                dsu.union(w[0], w[1]);
            }
        }
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    grove_search(net, 0, &mut dsu, &mut chosen, &mut out)?;
    Ok(out)
}

fn grove_search(
    net: &Network,
    k: usize,
    dsu: &mut Dsu,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Grove>,
) -> Result<()> {
    let edges = net.edges();
    if k == edges.len() {
        let n = net.n();
        let nv = net.num_vertices();
        let mut d = dsu.clone();
        let boundary_roots: Vec<usize> = (1..=n).map(|i| d.find(i)).collect();
        if (n + 1..=nv).any(|v| {
            let r = d.find(v);
            !boundary_roots.contains(&r)
        }) {
            return Ok(());
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, r) in boundary_roots.iter().enumerate() {
            groups.entry(*r).or_default().push(i + 1);
        }
        let partition = NonCrossingPartition::new(n, groups.into_values().collect())
            .map_err(|e| Error::Topology(format!("grove with crossing partition: {e}")))?;
        let mut weight = Rational::one();
        for &idx in chosen.iter() {
            weight *= &edges[idx].weight;
        }
        out.push(Grove {
            edges: chosen.iter().map(|&i| edges[i].id).collect(),
            partition,
            weight,
        });
        return Ok(());
    }
    grove_search(net, k + 1, dsu, chosen, out)?;
    let e = &edges[k];
    let mut with = dsu.clone();
    if with.union(e.u, e.v) {
        chosen.push(k);
        grove_search(net, k + 1, &mut with, chosen, out)?;
        chosen.pop();
    }
    Ok(())
}

/// Grove measurements `L_sigma`; absent keys are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroveTable {
    n: usize,
    entries: BTreeMap<NonCrossingPartition, Rational>,
}

impl GroveTable {
    pub fn new(n: usize) -> Self {
        GroveTable {
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, sigma: &NonCrossingPartition) -> Rational {
        self.entries.get(sigma).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&mut self, sigma: NonCrossingPartition, value: Rational) -> Result<()> {
        if sigma.n() != self.n {
            return Err(Error::Input("partition size does not match the table".into()));
        }
        if value.is_zero() {
            return Ok(());
        }
        let e = self.entries.entry(sigma).or_insert_with(Rational::zero);
        *e += value;
        if e.is_zero() {
            self.entries.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    pub fn entries(&self) -> impl Iterator<Item = (&NonCrossingPartition, &Rational)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `L_unc`, the all-singletons measurement.
    pub fn l_unc(&self) -> Rational {
        self.get(&NonCrossingPartition::singletons(self.n))
    }

    /// `L_{12...n}`, the one-block measurement.
    pub fn l_connected(&self) -> Rational {
        self.get(&NonCrossingPartition::one_block(self.n))
    }

    pub fn parse(n: usize, text: &str) -> Result<GroveTable> {
        let mut t = GroveTable::new(n);
        for (k, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let perr = |msg: String| Error::Parse { line: k + 1, msg };
            let (p, v) = line
                .rsplit_once(':')
                .ok_or_else(|| perr("expected `<partition> : <value>`".into()))?;
            let sigma = NonCrossingPartition::parse(p.trim(), Some(n)).map_err(|e| perr(e.to_string()))?;
            let value = parse_rational(v).map_err(|e| perr(e.to_string()))?;
            t.add(sigma, value)?;
        }
        Ok(t)
    }
}

impl fmt::Display for GroveTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k} : {}", fmt_rational(v))?;
        }
        Ok(())
    }
}

pub fn grove_measurements(net: &Network) -> Result<GroveTable> {
    grove_measurements_capped(net, DEFAULT_MAX_EDGES)
}

pub fn grove_measurements_capped(net: &Network, max_edges: usize) -> Result<GroveTable> {
    let mut t = GroveTable::new(net.n());
    for g in enumerate_groves_capped(net, max_edges)? {
        t.add(g.partition, g.weight)?;
    }
    Ok(t)
}

fn accumulate(
    gt: &GroveTable,
    ambient: usize,
    degree: usize,
    sets: impl Fn(&NonCrossingPartition) -> Vec<IndexSet>,
) -> WedgeVector {
    let mut w = WedgeVector::zero(ambient, degree);
    for (sigma, l) in gt.entries() {
        for i in sets(sigma) {
            w.try_add_term(i, l.clone()).expect("generated sets have the right shape");
        }
    }
    w
}

/// `Δ•_I`: sum of `L_sigma` over `sigma` concordant with `I`.
pub fn lam_plucker(gt: &GroveTable) -> WedgeVector {
    let n = gt.n();
    accumulate(gt, 2 * n, n - 1, concordant_sets)
}

/// `Δ∘_I`: sum of `L_sigma` over `sigma` co-concordant with `I`.
pub fn cgs_plucker(gt: &GroveTable) -> WedgeVector {
    let n = gt.n();
    accumulate(gt, 2 * n, n + 1, coconcordant_sets)
}

/// Coordinates in `⋀^{n-1} Q^{2n-2}`: sum of `L_sigma` over `sigma`
/// Lagrangian concordant with `I`.
pub fn lagrangian_plucker(gt: &GroveTable) -> WedgeVector {
    let n = gt.n();
    accumulate(gt, 2 * n - 2, n - 1, lagrangian_concordant_sets)
}

// ---------------------------------------------------------------------------
// Temperley networks and dimers
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Color {
    Black,
    White,
}

impl Color {
    fn flip(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    /// Boundary vertex `1..=2n`.
    Boundary(usize),
    /// `b_i` for the network boundary vertex `i`.
    Stub(usize),
    /// `b_v` for an interior vertex `v`.
    Vertex(usize),
    /// `b_F` for a region, numbered as the dual network's vertices.
    Face(usize),
    /// `w_e` for the edge with this id.
    EdgeNode(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteNetwork {
    n: usize,
    nodes: Vec<(NodeKind, Color)>,
    edges: Vec<(usize, usize, Rational)>,
}

impl BipartiteNetwork {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[(NodeKind, Color)] {
        &self.nodes
    }

    /// Edges as `(node index, node index, weight)`.
    pub fn edges(&self) -> &[(usize, usize, Rational)] {
        &self.edges
    }

    pub fn is_bipartite(&self) -> bool {
        self.edges
            .iter()
            .all(|(a, b, _)| self.nodes[*a].1 != self.nodes[*b].1)
    }

    fn boundary_node(&self, i: usize) -> usize {
        self.nodes
            .iter()
            .position(|(k, _)| *k == NodeKind::Boundary(i))
            .expect("boundary node exists")
    }

    pub fn degree(&self, node: usize) -> usize {
        self.edges
            .iter()
            .filter(|(a, b, _)| *a == node || *b == node)
            .count()
    }

    /// Same graph with colours exchanged.
    pub fn inverted(&self) -> BipartiteNetwork {
        BipartiteNetwork {
            n: self.n,
            nodes: self.nodes.iter().map(|(k, c)| (*k, c.flip())).collect(),
            edges: self.edges.clone(),
        }
    }

    /// Degree of the Plücker vector its dimers produce.
    fn boundary_degree(&self) -> usize {
        let black = self.nodes[self.boundary_node(1)].1 == Color::Black;
        if black {
            self.n + 1
        } else {
            self.n - 1
        }
    }
}

/// The network `N^d`: black boundary, white vertex, face and stub nodes,
/// black edge nodes.
pub fn dual_temperley(net: &Network) -> Result<BipartiteNetwork> {
    if net.cactus().is_some() {
        return Err(Error::Unsupported("Temperley networks of cactus networks".into()));
    }
    let dual = net.dual_network()?;
    let n = net.n();
    let mut nodes: Vec<(NodeKind, Color)> = Vec::new();
    let mut index: BTreeMap<(u8, usize), usize> = BTreeMap::new();
    let mut push = |kind: NodeKind, color: Color, key: (u8, usize)| {
        index.insert(key, nodes.len());
        nodes.push((kind, color));
    };
    for i in 1..=2 * n {
        push(NodeKind::Boundary(i), Color::Black, (0, i));
    }
    for i in 1..=n {
        push(NodeKind::Stub(i), Color::White, (1, i));
    }
    for v in n + 1..=net.num_vertices() {
        push(NodeKind::Vertex(v), Color::White, (2, v));
    }
    for f in 1..=dual.num_vertices() {
        push(NodeKind::Face(f), Color::White, (3, f));
    }
    for e in net.edges() {
        push(NodeKind::EdgeNode(e.id), Color::Black, (4, e.id));
    }
    let vertex_node = |x: usize| {
        if x <= n {
            index[&(1, x)]
        } else {
            index[&(2, x)]
        }
    };
    let mut edges = Vec::new();
    let one = Rational::one();
    for i in 1..=n {
        edges.push((index[&(1, i)], index[&(0, 2 * i - 1)], one.clone()));
        edges.push((index[&(3, i)], index[&(0, 2 * i)], one.clone()));
    }
    let dual_edges = dual.edge_map();
    for e in net.edges() {
        let w = index[&(4, e.id)];
        edges.push((vertex_node(e.u), w, e.weight.clone()));
        edges.push((vertex_node(e.v), w, e.weight.clone()));
        let d = &dual_edges[&e.id];
        edges.push((index[&(3, d.u)], w, one.clone()));
        edges.push((index[&(3, d.v)], w, one.clone()));
    }
    Ok(BipartiteNetwork { n, nodes, edges })
}

/// The network `N`: `N^d` with colours inverted.
pub fn temperley(net: &Network) -> Result<BipartiteNetwork> {
    Ok(dual_temperley(net)?.inverted())
}

/// Dimer partition functions for every boundary set at once. A matching
/// covers every interior node once; its boundary set consists of the matched
/// black boundary vertices together with the unmatched white ones.
pub fn dimer_table(bip: &BipartiteNetwork) -> WedgeVector {
    let nn = bip.nodes.len();
    let mut adj: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); nn];
    for (a, b, w) in &bip.edges {
        adj[*a].push((*b, w.clone()));
        adj[*b].push((*a, w.clone()));
    }
    let is_boundary = |x: usize| matches!(bip.nodes[x].0, NodeKind::Boundary(_));
    // interior nodes with a boundary neighbour may fall back to it
    let boundary_partner: Vec<Option<usize>> = (0..nn)
        .map(|x| {
            if is_boundary(x) {
                None
            } else {
                adj[x].iter().map(|(y, _)| *y).find(|&y| is_boundary(y))
            }
        })
        .collect();
    // Branch on the interior nodes of one colour class: those with no boundary
    // neighbour ("drivers"). Every other interior node is either taken by a
    // driver or matched to its boundary neighbour.
    let interior: Vec<usize> = (0..nn).filter(|&x| !is_boundary(x)).collect();
    let drivers: Vec<usize> = interior
        .iter()
        .copied()
        .filter(|&x| boundary_partner[x].is_none() && matches!(bip.nodes[x].0, NodeKind::EdgeNode(_)))
        .collect();
    let m = 2 * bip.n;
    let degree = bip.boundary_degree();
    let mut out = WedgeVector::zero(m, degree);
    let mut taken = vec![false; nn];
    // for pruning: last driver position adjacent to each interior non-driver
    let mut last_driver: Vec<Option<usize>> = vec![None; nn];
    for (p, &d) in drivers.iter().enumerate() {
        for (y, _) in &adj[d] {
            last_driver[*y] = Some(p);
        }
    }
    let ctx = DimerCtx {
        bip,
        adj: &adj,
        drivers: &drivers,
        interior: &interior,
        boundary_partner: &boundary_partner,
        last_driver: &last_driver,
    };
    ctx.search(0, &mut taken, Rational::one(), &mut out);
    out
}

struct DimerCtx<'a> {
    bip: &'a BipartiteNetwork,
    adj: &'a [Vec<(usize, Rational)>],
    drivers: &'a [usize],
    interior: &'a [usize],
    boundary_partner: &'a [Option<usize>],
    last_driver: &'a [Option<usize>],
}

impl DimerCtx<'_> {
    fn search(&self, p: usize, taken: &mut Vec<bool>, weight: Rational, out: &mut WedgeVector) {
        if p == self.drivers.len() {
            self.finish(taken, weight, out);
            return;
        }
        let d = self.drivers[p];
        for (y, w) in &self.adj[d] {
            if taken[*y] || matches!(self.bip.nodes[*y].0, NodeKind::Boundary(_)) {
                continue;
            }
            taken[*y] = true;
            // a node with no boundary fallback whose last driver has passed is lost
            let dead = self.interior.iter().any(|&x| {
                !taken[x]
                    && x != d
                    && self.boundary_partner[x].is_none()
                    && !self.drivers.contains(&x)
                    && self.last_driver[x].is_none_or(|q| q <= p)
            });
            if !dead {
                self.search(p + 1, taken, &weight * w, out);
            }
            taken[*y] = false;
        }
    }

    fn finish(&self, taken: &[bool], weight: Rational, out: &mut WedgeVector) {
        let mut matched_boundary = Vec::new();
        let mut w = weight;
        for &x in self.interior {
            if taken[x] || self.drivers.contains(&x) {
                continue;
            }
            match self.boundary_partner[x] {
                Some(b) => {
                    if matched_boundary.contains(&b) {
                        return;
                    }
                    matched_boundary.push(b);
                    let edge_w = self.adj[x]
                        .iter()
                        .find(|(y, _)| *y == b)
                        .map(|(_, w)| w.clone())
                        .expect("partner is adjacent");
                    w *= edge_w;
                }
                None => return,
            }
        }
        let mut set = Vec::new();
        for (idx, (kind, color)) in self.bip.nodes.iter().enumerate() {
            if let NodeKind::Boundary(i) = kind {
                let matched = matched_boundary.contains(&idx);
                if matched == (*color == Color::Black) {
                    set.push(*i);
                }
            }
        }
        let key = IndexSet::new(set).expect("sorted by construction");
        if key.len() == out.degree() {
            out.try_add_term(key, w).expect("key shape checked");
        }
    }
}

/// Dimer partition function for one boundary set.
pub fn dimer_partition(bip: &BipartiteNetwork, i: &IndexSet) -> Rational {
    dimer_table(bip).coeff(i)
}
