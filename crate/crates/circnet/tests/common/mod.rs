#![allow(dead_code)]

use std::f64::consts::PI;

use circnet::exact_linalg::{int, rat, RatMatrix, Rational};
use circnet::network::{Edge, Network};
use num::{One, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub const FIXTURE_DIR: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");

pub fn fixture(name: &str) -> String {
    format!("{FIXTURE_DIR}/{name}")
}

pub fn load(name: &str) -> Network {
    let text = std::fs::read_to_string(fixture(name)).unwrap();
    Network::parse(&text).unwrap()
}

pub fn triangle(a: Rational, b: Rational, c: Rational) -> Network {
    let edges = vec![
        Edge { id: 1, u: 1, v: 2, weight: a },
        Edge { id: 2, u: 2, v: 3, weight: b },
        Edge { id: 3, u: 1, v: 3, weight: c },
    ];
    Network::new(3, 0, edges, vec![vec![3, 1], vec![1, 2], vec![2, 3]], None).unwrap()
}

pub fn abc() -> (Rational, Rational, Rational) {
    (int(3), rat(1, 2), int(2))
}

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn segments_cross(p: (f64, f64), q: (f64, f64), r: (f64, f64), s: (f64, f64)) -> bool {
    let d1 = cross(r, s, p);
    let d2 = cross(r, s, q);
    let d3 = cross(p, q, r);
    let d4 = cross(p, q, s);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

fn point_on_segment(x: (f64, f64), p: (f64, f64), q: (f64, f64)) -> bool {
    let c = cross(p, q, x).abs();
    let len = ((q.0 - p.0).powi(2) + (q.1 - p.1).powi(2)).sqrt();
    if c > 1e-9 * len.max(1.0) {
        return false;
    }
    let dot = (x.0 - p.0) * (q.0 - p.0) + (x.1 - p.1) * (q.1 - p.1);
    dot > 0.0 && dot < len * len
}

fn random_weight(rng: &mut StdRng) -> Rational {
    rat(rng.gen_range(1..=7), rng.gen_range(1..=7))
}

/// A random connected network drawn with straight segments: boundary
/// vertices sit counterclockwise on a circle, interior vertices inside, and
/// segments are added in random order while they cross nothing.
pub fn random_network(rng: &mut StdRng) -> Network {
    loop {
        let n = rng.gen_range(3..=5);
        let interior = rng.gen_range(0..=2);
        let mut pos: Vec<(f64, f64)> = (0..n)
            .map(|k| {
                let t = PI / 2.0 + 2.0 * PI * k as f64 / n as f64;
                (t.cos(), t.sin())
            })
            .collect();
        for _ in 0..interior {
            let r = rng.gen_range(0.1..0.6);
            let t = rng.gen_range(0.0..2.0 * PI);
            pos.push((r * t.cos(), r * t.sin()));
        }
        let nv = pos.len();
        let mut pairs: Vec<(usize, usize)> = (0..nv)
            .flat_map(|u| (u + 1..nv).map(move |v| (u, v)))
            .collect();
        pairs.shuffle(rng);
        let max_edges = rng.gen_range(n..=12);
        let mut chosen: Vec<(usize, usize)> = Vec::new();
        for (u, v) in pairs {
            if chosen.len() >= max_edges {
                break;
            }
            let blocked = chosen
                .iter()
                .any(|&(a, b)| segments_cross(pos[u], pos[v], pos[a], pos[b]))
                || (0..nv).any(|x| x != u && x != v && point_on_segment(pos[x], pos[u], pos[v]));
            if !blocked {
                chosen.push((u, v));
            }
        }
        let edges: Vec<Edge> = chosen
            .iter()
            .enumerate()
            .map(|(k, &(u, v))| Edge {
                id: k + 1,
                u: u + 1,
                v: v + 1,
                weight: random_weight(rng),
            })
            .collect();
        let mut rotation = vec![Vec::new(); nv];
        for (x, rot) in rotation.iter_mut().enumerate() {
            let here = pos[x];
            let outward = here.1.atan2(here.0);
            let mut around: Vec<(f64, usize)> = edges
                .iter()
                .filter(|e| e.u == x + 1 || e.v == x + 1)
                .map(|e| {
                    let y = pos[e.other(x + 1) - 1];
                    let t = (y.1 - here.1).atan2(y.0 - here.0);
                    ((outward - t).rem_euclid(2.0 * PI), e.id)
                })
                .collect();
            around.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            *rot = around.into_iter().map(|(_, id)| id).collect();
        }
        let Ok(net) = Network::new(n, interior, edges, rotation, None) else {
            continue;
        };
        if net.is_connected() {
            return net;
        }
    }
}

/// `count` random networks from a fixed seed.
pub fn random_networks(seed: u64, count: usize) -> Vec<Network> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count).map(|_| random_network(&mut rng)).collect()
}

/// Random networks whose planar dual is computable.
pub fn random_dualizable(seed: u64, count: usize) -> Vec<Network> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let net = random_network(&mut rng);
        if net.dual_network().is_ok() {
            out.push(net);
        }
    }
    out
}

/// Solves `a x = b` by plain Gauss-Jordan elimination.
fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let k = a.len();
    for col in 0..k {
        let piv = (col..k).find(|&r| !a[r][col].is_zero()).expect("singular system");
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = Rational::one() / &a[col][col];
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for x in b[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..k {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..k {
                    let d = &f * &a[col][c];
                    a[r][c] -= d;
                }
                for c in 0..b[r].len() {
                    let d = &f * &b[col][c];
                    b[r][c] -= d;
                }
            }
        }
    }
    b
}

/// Nodal analysis: put unit potential on boundary vertex `j`, zero on the
/// others, solve for interior potentials, and read off boundary currents.
/// Column `j` of the result is the current vector. Requires every interior
/// vertex to reach the boundary.
pub fn nodal_response(net: &Network) -> RatMatrix {
    let n = net.n();
    let nv = net.num_vertices();
    let mut lap = vec![vec![Rational::zero(); nv]; nv];
    for e in net.edges() {
        let (u, v) = (e.u - 1, e.v - 1);
        lap[u][u] += &e.weight;
        lap[v][v] += &e.weight;
        lap[u][v] -= &e.weight;
        lap[v][u] -= &e.weight;
    }
    let k = nv - n;
    let mut out = RatMatrix::zeros(n, n);
    for j in 0..n {
        let mut phi = vec![Rational::zero(); nv];
        phi[j] = Rational::one();
        if k > 0 {
            let a: Vec<Vec<Rational>> = (n..nv).map(|r| lap[r][n..].to_vec()).collect();
            let b: Vec<Vec<Rational>> = (n..nv).map(|r| vec![-lap[r][j].clone()]).collect();
            let x = solve(a, b);
            for (t, row) in x.into_iter().enumerate() {
                phi[n + t] = row[0].clone();
            }
        }
        for i in 0..n {
            let cur: Rational = (0..nv).map(|c| &lap[i][c] * &phi[c]).sum();
            out.set(i, j, cur);
        }
    }
    out
}

/// Effective resistance between boundary vertices `i` and `j` from the
/// same nodal equations: inject a unit current at `i`, ground `j`.
pub fn nodal_resistance(net: &Network, i: usize, j: usize) -> Rational {
    let nv = net.num_vertices();
    let mut lap = vec![vec![Rational::zero(); nv]; nv];
    for e in net.edges() {
        let (u, v) = (e.u - 1, e.v - 1);
        lap[u][u] += &e.weight;
        lap[v][v] += &e.weight;
        lap[u][v] -= &e.weight;
        lap[v][u] -= &e.weight;
    }
    let keep: Vec<usize> = (0..nv).filter(|&x| x != j - 1).collect();
    let a: Vec<Vec<Rational>> = keep.iter().map(|&r| keep.iter().map(|&c| lap[r][c].clone()).collect()).collect();
    let b: Vec<Vec<Rational>> = keep
        .iter()
        .map(|&r| vec![if r == i - 1 { Rational::one() } else { Rational::zero() }])
        .collect();
    let x = solve(a, b);
    let pos = keep.iter().position(|&r| r == i - 1).unwrap();
    x[pos][0].clone()
}
