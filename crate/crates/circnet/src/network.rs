//! Planar circular electrical networks as combinatorial maps.
//!
//! Boundary vertices are `1..=n` in clockwise order, interior vertices
//! `n+1..=n+interior`. Each vertex carries the counterclockwise order of its
//! incident edges. For a boundary vertex `i` the list is linear: it starts at
//! the edge closest to the boundary arc towards `i-1` and ends at the edge
//! closest to the arc towards `i+1`. Internally the `n` boundary arcs are
//! added to the map, which makes the outer face a plain `n`-gon and lets the
//! Euler formula certify a disk embedding.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_linalg::{fmt_rational, parse_rational, RatMatrix, Rational};
use crate::noncrossing::NonCrossingPartition;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: usize,
    pub u: usize,
    pub v: usize,
    pub weight: Rational,
}

impl Edge {
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Network {
    n: usize,
    interior: usize,
    edges: Vec<Edge>,
    /// `rotation[v - 1]` lists edge ids around `v`, counterclockwise.
    rotation: Vec<Vec<usize>>,
    cactus: Option<NonCrossingPartition>,
}

/// The combinatorial map with boundary arcs added. Dart `2k` runs `u -> v`
/// along edge `k` and dart `2k + 1` runs back; edges `E..E+n` are the arcs,
/// arc `i` joining `i` to `i % n + 1`.
struct AugmentedMap {
    tail: Vec<usize>,
    face_of: Vec<usize>,
    faces: Vec<Vec<usize>>,
}

impl Network {
    /// Validates and builds a network. `rotation` may leave vertices of
    /// degree at most one empty; their order is implied.
    pub fn new(
        n: usize,
        interior: usize,
        edges: Vec<Edge>,
        mut rotation: Vec<Vec<usize>>,
        cactus: Option<NonCrossingPartition>,
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::Topology("a network needs at least two boundary vertices".into()));
        }
        let nv = n + interior;
        rotation.resize(nv, Vec::new());
        if rotation.len() != nv {
            return Err(Error::Topology("rotation given for an unknown vertex".into()));
        }
        let mut index: HashMap<usize, usize> = HashMap::new();
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for (k, e) in edges.iter().enumerate() {
            if index.insert(e.id, k).is_some() {
                return Err(Error::Topology(format!("duplicate edge id {}", e.id)));
            }
            for x in [e.u, e.v] {
                if x == 0 || x > nv {
                    return Err(Error::Topology(format!("edge {} uses unknown vertex {x}", e.id)));
                }
            }
            if e.u == e.v {
                return Err(Error::Topology(format!("edge {} is a self-loop", e.id)));
            }
            if e.weight <= Rational::zero() {
                return Err(Error::Topology(format!("edge {} has non-positive conductance", e.id)));
            }
            incident[e.u - 1].push(e.id);
            incident[e.v - 1].push(e.id);
        }
        for v in 1..=nv {
            let inc = &incident[v - 1];
            let rot = &mut rotation[v - 1];
            if rot.is_empty() && inc.len() <= 1 {
                rot.clone_from(inc);
            }
            let mut a = rot.clone();
            let mut b = inc.clone();
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                return Err(Error::Topology(format!(
                    "rotation at vertex {v} does not list exactly its incident edges"
                )));
            }
            if v > n && inc.is_empty() {
                return Err(Error::Topology(format!("interior vertex {v} has no edges")));
            }
        }
        if let Some(c) = &cactus {
            if c.n() != n {
                return Err(Error::Topology("cactus partition has the wrong size".into()));
            }
        }
        let net = Network {
            n,
            interior,
            edges,
            rotation,
            cactus,
        };
        net.check_euler()?;
        Ok(net)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn interior(&self) -> usize {
        self.interior
    }

    pub fn num_vertices(&self) -> usize {
        self.n + self.interior
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v - 1]
    }

    pub fn cactus(&self) -> Option<&NonCrossingPartition> {
        self.cactus.as_ref()
    }

    /// The edgeless network on `n` boundary vertices.
    pub fn empty(n: usize) -> Result<Self> {
        Network::new(n, 0, Vec::new(), Vec::new(), None)
    }

    fn edge_index(&self) -> HashMap<usize, usize> {
        self.edges.iter().enumerate().map(|(k, e)| (e.id, k)).collect()
    }

    fn augmented(&self) -> AugmentedMap {
        let n = self.n;
        let ne = self.edges.len();
        let idx = self.edge_index();
        let total = 2 * (ne + n);
        let mut tail = vec![0; total];
        for (k, e) in self.edges.iter().enumerate() {
            tail[2 * k] = e.u;
            tail[2 * k + 1] = e.v;
        }
        for i in 1..=n {
            let a = ne + i - 1;
            tail[2 * a] = i;
            tail[2 * a + 1] = i % n + 1;
        }
        let dart_at = |k: usize, v: usize| {
            if self.edges[k].u == v {
                2 * k
            } else {
                2 * k + 1
            }
        };
        let mut next_ccw = vec![usize::MAX; total];
        for v in 1..=self.num_vertices() {
            let mut cyc: Vec<usize> = Vec::new();
            if v <= n {
                let prev_arc = ne + (v + n - 2) % n;
                cyc.push(2 * prev_arc + 1);
            }
            cyc.extend(self.rotation[v - 1].iter().map(|id| dart_at(idx[id], v)));
            if v <= n {
                cyc.push(2 * (ne + v - 1));
            }
            for (p, &d) in cyc.iter().enumerate() {
                next_ccw[d] = cyc[(p + 1) % cyc.len()];
            }
        }
        let mut face_of = vec![usize::MAX; total];
        let mut faces = Vec::new();
        for start in 0..total {
            if face_of[start] != usize::MAX {
                continue;
            }
            let mut walk = Vec::new();
            let mut d = start;
            while face_of[d] == usize::MAX {
                face_of[d] = faces.len();
                walk.push(d);
                d = next_ccw[d ^ 1];
            }
            faces.push(walk);
        }
        AugmentedMap {
            tail,
            face_of,
            faces,
        }
    }

    fn check_euler(&self) -> Result<()> {
        let map = self.augmented();
        let nv = self.num_vertices();
        let mut uf: Vec<usize> = (0..=nv).collect();
        fn find(uf: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while uf[r] != r {
                r = uf[r];
            }
            uf[x] = r;
            r
        }
        for d in (0..map.tail.len()).step_by(2) {
            let (a, b) = (find(&mut uf, map.tail[d]), find(&mut uf, map.tail[d + 1]));
            uf[a] = b;
        }
        let comps = (1..=nv).filter(|&x| find(&mut uf, x) == x).count();
        let v = nv as i64;
        let e = (self.edges.len() + self.n) as i64;
        let f = map.faces.len() as i64;
        if v - e + f != 2 * comps as i64 {
            return Err(Error::Topology(format!(
                "rotation system is not a disk embedding (V - E + F = {} with {} components)",
                v - e + f,
                comps
            )));
        }
        Ok(())
    }

    /// Physical vertices after the cactus identification.
    pub fn physical_vertex_count(&self) -> usize {
        let merged = self
            .cactus
            .as_ref()
            .map_or(0, |c| self.n - c.num_blocks());
        self.num_vertices() - merged
    }

    /// The connectivity of the underlying graph, ignoring boundary arcs and
    /// cactus identifications.
    pub fn is_connected(&self) -> bool {
        let nv = self.num_vertices();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nv + 1];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        let mut seen = vec![false; nv + 1];
        let mut stack = vec![1];
        seen[1] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        (1..=nv).all(|x| seen[x])
    }

    /// Weighted Laplacian over all vertices (0-based rows for vertex ids).
    pub fn laplacian(&self) -> RatMatrix {
        let nv = self.num_vertices();
        let mut l = RatMatrix::zeros(nv, nv);
        for e in &self.edges {
            let (a, b) = (e.u - 1, e.v - 1);
            let w = &e.weight;
            l.set(a, a, l.get(a, a) + w);
            l.set(b, b, l.get(b, b) + w);
            l.set(a, b, l.get(a, b) - w);
            l.set(b, a, l.get(b, a) - w);
        }
        l
    }

    /// Response matrix by Schur complement of the interior block.
    pub fn response_matrix(&self) -> Result<ResponseMatrix> {
        if self.cactus.is_some() {
            return Err(Error::Unsupported(
                "response matrices are computed for ordinary networks only".into(),
            ));
        }
        let n = self.n;
        let nv = self.num_vertices();
        let l = self.laplacian();
        let b: Vec<usize> = (0..n).collect();
        let i: Vec<usize> = (n..nv).collect();
        let lbb = l.select(&b, &b);
        if i.is_empty() {
            return ResponseMatrix::new(lbb);
        }
        let lii = l.select(&i, &i);
        let inv = lii.inverse().ok_or_else(|| {
            Error::Topology("an interior component does not reach the boundary".into())
        })?;
        let lbi = l.select(&b, &i);
        let lib = l.select(&i, &b);
        ResponseMatrix::new(lbb.sub(&lbi.mul(&inv).mul(&lib)))
    }

    /// Planar dual. Dual boundary vertex `i` is the region along the arc from
    /// `i` to `i+1`; dual interior vertices are numbered by first dart of
    /// their face. Edge ids are kept and conductances inverted.
    pub fn dual_network(&self) -> Result<Network> {
        if self.cactus.is_some() {
            return Err(Error::Unsupported("duals of cactus networks".into()));
        }
        if !self.is_connected() {
            return Err(Error::Unsupported("duals need a connected network".into()));
        }
        let n = self.n;
        let ne = self.edges.len();
        let map = self.augmented();
        let outer = map.face_of[2 * ne + 1];
        // face index -> dual vertex id
        let mut label: Vec<usize> = vec![0; map.faces.len()];
        for i in 1..=n {
            let f = map.face_of[2 * (ne + i - 1)];
            if f == outer || label[f] != 0 {
                return Err(Error::Unsupported(
                    "a region touches several boundary arcs".into(),
                ));
            }
            label[f] = i;
        }
        let mut next = n;
        for (f, l) in label.iter_mut().enumerate() {
            if f != outer && *l == 0 {
                next += 1;
                *l = next;
            }
        }
        let interior = next - n;
        let mut edges = Vec::with_capacity(ne);
        for (k, e) in self.edges.iter().enumerate() {
            let (fa, fb) = (map.face_of[2 * k], map.face_of[2 * k + 1]);
            if fa == fb {
                return Err(Error::Unsupported(format!(
                    "edge {} is a bridge inside one region; its dual is a loop",
                    e.id
                )));
            }
            edges.push(Edge {
                id: e.id,
                u: label[fa],
                v: label[fb],
                weight: e.weight.recip(),
            });
        }
        let mut rotation = vec![Vec::new(); n + interior];
        for (f, walk) in map.faces.iter().enumerate() {
            if f == outer {
                continue;
            }
            // Rotate the walk so that it starts right after the arc dart.
            let start = walk.iter().position(|&d| d >= 2 * ne).map_or(0, |p| p + 1);
            let mut ids: Vec<usize> = (0..walk.len())
                .map(|s| walk[(start + s) % walk.len()])
                .filter(|&d| d < 2 * ne)
                .map(|d| self.edges[d / 2].id)
                .collect();
            ids.reverse();
            rotation[label[f] - 1] = ids;
        }
        Network::new(n, interior, edges, rotation, None)
    }

    /// Same map with boundary vertices identified along `sigma`.
    pub fn quotient(&self, sigma: &NonCrossingPartition) -> Result<Network> {
        if sigma.n() != self.n {
            return Err(Error::Input("cactus partition has the wrong size".into()));
        }
        if self.cactus.is_some() {
            return Err(Error::Unsupported("nested cactus identifications".into()));
        }
        let mut out = self.clone();
        out.cactus = Some(sigma.clone());
        Ok(out)
    }

    pub fn hollow_cactus(n: usize, sigma: &NonCrossingPartition) -> Result<Network> {
        Network::empty(n)?.quotient(sigma)
    }

    pub fn parse(text: &str) -> Result<Network> {
        let mut header = false;
        let mut n: Option<usize> = None;
        let mut interior: usize = 0;
        let mut edges: Vec<Edge> = Vec::new();
        let mut rot_lines: Vec<(usize, usize, Vec<usize>)> = Vec::new();
        let mut cactus_text: Option<(usize, String)> = None;
        let mut last_line = 1;
        for (k, raw) in text.lines().enumerate() {
            let lineno = k + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            last_line = lineno;
            let perr = |msg: String| Error::Parse { line: lineno, msg };
            let mut words = line.split_whitespace();
            let kw = words.next().unwrap_or("");
            if !header {
                if line.split_whitespace().collect::<Vec<_>>() != ["enet", "1"] {
                    return Err(perr("expected header `enet 1`".into()));
                }
                header = true;
                continue;
            }
            let num = |s: Option<&str>| -> Result<usize> {
                s.ok_or_else(|| perr("missing number".into()))?
                    .parse::<usize>()
                    .map_err(|_| perr("bad number".into()))
            };
            match kw {
                "n" => n = Some(num(words.next())?),
                "interior" => interior = num(words.next())?,
                "edge" => {
                    let id = num(words.next())?;
                    let u = num(words.next())?;
                    let v = num(words.next())?;
                    let w = words.next().ok_or_else(|| perr("missing conductance".into()))?;
                    let weight = parse_rational(w).map_err(|e| perr(e.to_string()))?;
                    edges.push(Edge { id, u, v, weight });
                }
                "rotation" => {
                    let rest = line["rotation".len()..].trim();
                    let (vs, list) = rest
                        .split_once(':')
                        .ok_or_else(|| perr("expected `rotation <vertex> : <edge ids>`".into()))?;
                    let v = num(Some(vs.trim()))?;
                    let ids = list
                        .split(|c: char| c.is_whitespace() || c == ',')
                        .filter(|s| !s.is_empty())
                        .map(|s| num(Some(s)))
                        .collect::<Result<Vec<_>>>()?;
                    rot_lines.push((lineno, v, ids));
                }
                "cactus" => cactus_text = Some((lineno, line["cactus".len()..].trim().to_string())),
                other => return Err(perr(format!("unknown keyword {other:?}"))),
            }
            if words.next().is_some() && matches!(kw, "n" | "interior") {
                return Err(perr("trailing tokens".into()));
            }
        }
        if !header {
            return Err(Error::Parse {
                line: 1,
                msg: "empty file".into(),
            });
        }
        let n = n.ok_or(Error::Parse {
            line: last_line,
            msg: "missing `n` line".into(),
        })?;
        let nv = n + interior;
        let mut rotation = vec![Vec::new(); nv];
        let known: std::collections::HashSet<usize> = edges.iter().map(|e| e.id).collect();
        for (lineno, v, ids) in &rot_lines {
            if *v == 0 || *v > nv {
                return Err(Error::Parse {
                    line: *lineno,
                    msg: format!("rotation for unknown vertex {v}"),
                });
            }
            if let Some(bad) = ids.iter().find(|id| !known.contains(id)) {
                return Err(Error::Parse {
                    line: *lineno,
                    msg: format!("dangling edge id {bad}"),
                });
            }
            rotation[v - 1] = ids.clone();
        }
        let cactus = match &cactus_text {
            Some((lineno, t)) => Some(NonCrossingPartition::parse(t, Some(n)).map_err(|e| {
                Error::Parse {
                    line: *lineno,
                    msg: e.to_string(),
                }
            })?),
            None => None,
        };
        let anchor = rot_lines.first().map_or(last_line, |r| r.0);
        Network::new(n, interior, edges, rotation, cactus).map_err(|e| match e {
            Error::Topology(msg) => Error::Parse { line: anchor, msg },
            other => other,
        })
    }

    pub fn serialize(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "enet 1");
        let _ = writeln!(s, "n {}", self.n);
        let _ = writeln!(s, "interior {}", self.interior);
        for e in &self.edges {
            let _ = writeln!(s, "edge {} {} {} {}", e.id, e.u, e.v, fmt_rational(&e.weight));
        }
        for (k, r) in self.rotation.iter().enumerate() {
            if r.is_empty() {
                continue;
            }
            let ids: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "rotation {} : {}", k + 1, ids.join(" "));
        }
        if let Some(c) = &self.cactus {
            let _ = writeln!(s, "cactus {c}");
        }
        s
    }

    /// Same network with every conductance multiplied by `t`.
    pub fn scaled(&self, t: &Rational) -> Network {
        let mut out = self.clone();
        for e in &mut out.edges {
            e.weight *= t;
        }
        out
    }

    /// Edges keyed by id, for comparisons independent of file order.
    pub fn edge_map(&self) -> BTreeMap<usize, Edge> {
        self.edges.iter().map(|e| (e.id, e.clone())).collect()
    }
}

/// Symmetric matrix with zero row sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResponseMatrix(RatMatrix);

impl ResponseMatrix {
    pub fn new(m: RatMatrix) -> Result<Self> {
        if !m.is_square() || m.rows() < 2 {
            return Err(Error::Input("a response matrix is square with n >= 2".into()));
        }
        if !m.is_symmetric() {
            return Err(Error::Gauge("response matrix is not symmetric".into()));
        }
        for i in 0..m.rows() {
            let s: Rational = m.row_slice(i).iter().sum();
            if !s.is_zero() {
                return Err(Error::Gauge(format!("row {} does not sum to zero", i + 1)));
            }
        }
        Ok(ResponseMatrix(m))
    }

    pub fn n(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.0
    }

    /// `x_{ij}` with 1-based indices.
    pub fn x(&self, i: usize, j: usize) -> &Rational {
        self.0.get(i - 1, j - 1)
    }
}

/// Symmetric matrix of effective resistances with zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResistanceMatrix(RatMatrix);

impl ResistanceMatrix {
    pub fn new(m: RatMatrix) -> Result<Self> {
        if !m.is_symmetric() {
            return Err(Error::Input("resistance matrix is not symmetric".into()));
        }
        if (0..m.rows()).any(|i| !m.get(i, i).is_zero()) {
            return Err(Error::Input("resistance matrix has a nonzero diagonal".into()));
        }
        Ok(ResistanceMatrix(m))
    }

    pub fn n(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.0
    }

    /// `R_{ij}` with 1-based indices.
    pub fn r(&self, i: usize, j: usize) -> &Rational {
        self.0.get(i - 1, j - 1)
    }
}

/// Grounds vertex `n`, inverts the reduced response matrix and reads the
/// resistances off the inverse: `R_in = G_ii`, `R_ij = G_ii + G_jj - 2 G_ij`.
pub fn effective_resistance(m: &ResponseMatrix) -> Result<ResistanceMatrix> {
    let n = m.n();
    let idx: Vec<usize> = (0..n - 1).collect();
    let reduced = m.matrix().select(&idx, &idx);
    let g = reduced.inverse().ok_or_else(|| {
        Error::Topology(format!(
            "response matrix has rank {} instead of {}; the network is not connected",
            m.matrix().rank(),
            n - 1
        ))
    })?;
    let two = Rational::one() + Rational::one();
    let mut r = RatMatrix::zeros(n, n);
    for i in 0..n - 1 {
        r.set(i, n - 1, g.get(i, i).clone());
        r.set(n - 1, i, g.get(i, i).clone());
        for j in 0..n - 1 {
            if i != j {
                let v = g.get(i, i) + g.get(j, j) - g.get(i, j) * &two;
                r.set(i, j, v);
            }
        }
    }
    ResistanceMatrix::new(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::{int, rat};

    pub(crate) fn triangle(a: Rational, b: Rational, c: Rational) -> Network {
        let edges = vec![
            Edge { id: 1, u: 1, v: 2, weight: a },
            Edge { id: 2, u: 2, v: 3, weight: b },
            Edge { id: 3, u: 1, v: 3, weight: c },
        ];
        let rotation = vec![vec![3, 1], vec![1, 2], vec![2, 3]];
        Network::new(3, 0, edges, rotation, None).unwrap()
    }

    fn star(a: Rational, b: Rational, c: Rational) -> Network {
        let edges = vec![
            Edge { id: 1, u: 1, v: 4, weight: a },
            Edge { id: 2, u: 2, v: 4, weight: b },
            Edge { id: 3, u: 3, v: 4, weight: c },
        ];
        let rotation = vec![vec![1], vec![2], vec![3], vec![1, 3, 2]];
        Network::new(3, 1, edges, rotation, None).unwrap()
    }

    #[test]
    fn triangle_round_trip() {
        let t = triangle(int(3), rat(1, 2), int(2));
        let text = t.serialize();
        let back = Network::parse(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.serialize(), text);
    }

    #[test]
    fn parse_with_comments_and_implied_rotations() {
        let text = "# single edge\nenet 1\nn 2\ninterior 0\nedge 7 1 2 5/2 # w\n";
        let net = Network::parse(text).unwrap();
        assert_eq!(net.rotation(1), &[7]);
        assert_eq!(net.laplacian(), RatMatrix::from_rows(vec![
            vec![rat(5, 2), rat(-5, 2)],
            vec![rat(-5, 2), rat(5, 2)],
        ]).unwrap());
    }

    #[test]
    fn parse_errors_carry_lines() {
        let bad_header = "enet 2\nn 3\n";
        assert!(matches!(Network::parse(bad_header), Err(Error::Parse { line: 1, .. })));
        let dangling = "enet 1\nn 2\ninterior 0\nedge 1 1 2 1\nrotation 1 : 9\n";
        assert!(matches!(Network::parse(dangling), Err(Error::Parse { line: 5, .. })));
        let junk = "enet 1\nn 2\nfoo\n";
        assert!(matches!(Network::parse(junk), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn wrong_boundary_rotation_fails_euler() {
        // reversing the order at vertex 1 puts edge 3 on the wrong side
        let edges = vec![
            Edge { id: 1, u: 1, v: 2, weight: int(1) },
            Edge { id: 2, u: 2, v: 3, weight: int(1) },
            Edge { id: 3, u: 1, v: 3, weight: int(1) },
        ];
        let rotation = vec![vec![1, 3], vec![1, 2], vec![2, 3]];
        assert!(matches!(
            Network::new(3, 0, edges, rotation, None),
            Err(Error::Topology(_))
        ));
    }

    #[test]
    fn laplacian_examples() {
        let (a, b, c) = (int(3), rat(1, 2), int(2));
        let l = triangle(a.clone(), b.clone(), c.clone()).laplacian();
        let expected = RatMatrix::from_rows(vec![
            vec![&a + &c, -a.clone(), -c.clone()],
            vec![-a.clone(), &a + &b, -b.clone()],
            vec![-c.clone(), -b.clone(), &b + &c],
        ])
        .unwrap();
        assert_eq!(l, expected);
        assert!(Network::empty(3).unwrap().laplacian().is_zero());
    }

    #[test]
    fn star_response_is_y_delta() {
        let (a, b, c) = (int(2), int(3), int(5));
        let m = star(a.clone(), b.clone(), c.clone()).response_matrix().unwrap();
        let s = &a + &b + &c;
        assert_eq!(m.x(1, 2), &(-(&a * &b) / &s));
        assert_eq!(m.x(2, 3), &(-(&b * &c) / &s));
        for i in 0..3 {
            let sum: Rational = m.matrix().row_slice(i).iter().sum();
            assert!(sum.is_zero());
        }
    }

    #[test]
    fn series_law() {
        let text = "enet 1\nn 2\ninterior 1\nedge 1 1 3 2\nedge 2 3 2 3\nrotation 3 : 1 2\n";
        let net = Network::parse(text).unwrap();
        let m = net.response_matrix().unwrap();
        assert_eq!(m.x(1, 1), &rat(6, 5));
        let r = effective_resistance(&m).unwrap();
        assert_eq!(r.r(1, 2), &rat(5, 6));
    }

    #[test]
    fn triangle_resistance() {
        let (a, b, c) = (int(3), rat(1, 2), int(2));
        let net = triangle(a.clone(), b.clone(), c.clone());
        let r = effective_resistance(&net.response_matrix().unwrap()).unwrap();
        let denom = &a * &b + &b * &c + &c * &a;
        assert_eq!(r.r(1, 2), &((&b + &c) / &denom));
        assert_eq!(r.r(2, 3), &((&a + &c) / &denom));
        assert_eq!(r.r(1, 3), &((&a + &b) / &denom));
    }

    #[test]
    fn disconnected_response_fails_resistance() {
        let m = Network::empty(3).unwrap().response_matrix().unwrap();
        assert!(matches!(effective_resistance(&m), Err(Error::Topology(_))));
    }

    #[test]
    fn asymmetric_response_is_a_gauge_error() {
        let m = RatMatrix::from_i64(&[vec![1, -1], vec![0, 0]]);
        assert!(matches!(ResponseMatrix::new(m), Err(Error::Gauge(_))));
    }

    #[test]
    fn triangle_dual_is_reciprocal_star() {
        let (a, b, c) = (int(3), rat(1, 2), int(2));
        let d = triangle(a.clone(), b.clone(), c.clone()).dual_network().unwrap();
        assert_eq!(d.n(), 3);
        assert_eq!(d.interior(), 1);
        let em = d.edge_map();
        assert_eq!(em[&1].weight, a.recip());
        assert_eq!(em[&2].weight, b.recip());
        assert_eq!(em[&3].weight, c.recip());
        // edge 1-2 separates the centre from the region along arc 1
        let ends = |e: &Edge| {
            let mut v = [e.u, e.v];
            v.sort();
            v
        };
        assert_eq!(ends(&em[&1]), [1, 4]);
        assert_eq!(ends(&em[&2]), [2, 4]);
        assert_eq!(ends(&em[&3]), [3, 4]);
    }

    #[test]
    fn single_edge_dual() {
        let net = Network::parse("enet 1\nn 2\ninterior 0\nedge 1 1 2 4\n").unwrap();
        let d = net.dual_network().unwrap();
        assert_eq!(d.interior(), 0);
        assert_eq!(d.edges()[0].weight, rat(1, 4));
    }

    /// Extends the boundary correspondence `a_i -> b_{shift(i)}` along edge
    /// ids and checks it is a weight-preserving bijection.
    pub(crate) fn matches_by_edge_ids(a: &Network, b: &Network, shift: usize) -> bool {
        if a.num_vertices() != b.num_vertices() || a.edges().len() != b.edges().len() {
            return false;
        }
        let n = a.n();
        let mut map: HashMap<usize, usize> = (1..=n).map(|i| (i, (i + shift - 1) % n + 1)).collect();
        let other = b.edge_map();
        let mut changed = true;
        while changed {
            changed = false;
            for e in a.edges() {
                let Some(f) = other.get(&e.id) else { return false };
                if e.weight != f.weight {
                    return false;
                }
                let (mu, mv) = (map.get(&e.u).copied(), map.get(&e.v).copied());
                match (mu, mv) {
                    (Some(x), Some(y)) => {
                        if !((x == f.u && y == f.v) || (x == f.v && y == f.u)) {
                            return false;
                        }
                    }
                    (Some(x), None) => {
                        map.insert(e.v, f.other(x));
                        changed = true;
                    }
                    (None, Some(y)) => {
                        map.insert(e.u, f.other(y));
                        changed = true;
                    }
                    (None, None) => {}
                }
            }
        }
        let mut images: Vec<usize> = map.values().copied().collect();
        images.sort_unstable();
        images.dedup();
        map.len() == a.num_vertices() && images.len() == map.len()
    }

    #[test]
    fn double_dual_shifts_labels() {
        for net in [
            triangle(int(3), rat(1, 2), int(2)),
            star(int(2), int(3), int(5)),
        ] {
            let dd = net.dual_network().unwrap().dual_network().unwrap();
            assert!(matches_by_edge_ids(&dd, &net, 1));
        }
    }

    #[test]
    fn hollow_cactus_vertices() {
        let s = NonCrossingPartition::parse("1 2|3", Some(3)).unwrap();
        let h = Network::hollow_cactus(3, &s).unwrap();
        assert_eq!(h.physical_vertex_count(), 2);
        assert!(h.edges().is_empty());
        assert!(matches!(h.response_matrix(), Err(Error::Unsupported(_))));
    }
}
