//! The thirteen acceptance criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use circnet::embeddings::{
    cyclic_shift, omega_matrix, omega_resistance_reduced, to_v_basis, x_matrix, EmbeddingBundle,
};
use circnet::exact_linalg::{
    int, plucker_of_rowspace, rat, subspace_relation, RatMatrix, Rational, SubspaceRelation,
};
use circnet::groves_dimers::{
    cgs_plucker, dimer_table, dual_temperley, grove_measurements, lagrangian_plucker, lam_plucker,
    temperley, GroveTable,
};
use circnet::lam_action::{crystal_check, generator, invariance_check, restrict_to_v_operator};
use circnet::network::{effective_resistance, Network};
use circnet::noncrossing::{
    catalan, enumerate_nc, lagrangian_concordant_sets, lagrangian_extension, NonCrossingPartition,
};
use circnet::symplectic_concordance::{
    algorithm_factorization, concordance_vector, kernel_equals_concordance_space, lambda,
    restrict_to_v, standard_forms, unique_form_solver,
};
use common::{abc, load, nodal_resistance, random_dualizable, random_networks, triangle};
use num::{One, Zero};

type Outcome = std::result::Result<(), String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

const RANDOM_SEED: u64 = 0x5eed_2024;
const RANDOM_COUNT: usize = 24;

struct Fixture {
    name: String,
    net: Network,
    groves: GroveTable,
}

fn fixtures() -> Vec<Fixture> {
    let mut nets = vec![
        ("triangle".to_string(), load("triangle.enet")),
        ("star".to_string(), load("star.enet")),
        ("single-edge".to_string(), load("single_edge.enet")),
    ];
    for (k, net) in random_networks(RANDOM_SEED, RANDOM_COUNT).into_iter().enumerate() {
        nets.push((format!("random#{k}"), net));
    }
    nets.into_iter()
        .map(|(name, net)| {
            let groves = grove_measurements(&net).unwrap();
            Fixture { name, net, groves }
        })
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn p(text: &str, n: usize) -> NonCrossingPartition {
    NonCrossingPartition::parse(text, Some(n)).unwrap()
}

fn point_equality(fx: &[Fixture]) -> Outcome {
    for f in fx {
        let m = f.net.response_matrix().map_err(|e| e.to_string())?;
        let lhs = plucker_of_rowspace(&omega_matrix(&m)).unwrap().scale(&f.groves.l_unc());
        ensure(lhs == lam_plucker(&f.groves), || format!("{}: Δ(Ω')·L_unc differs from Δ•", f.name))?;
    }
    Ok(())
}

fn isotropy(fx: &[Fixture]) -> Outcome {
    for f in fx {
        let b = EmbeddingBundle::new(&f.net.response_matrix().unwrap()).unwrap();
        let (lam, tilde, bar) = standard_forms(b.n);
        let q = |m: &RatMatrix, form: &RatMatrix| m.mul(form).mul(&m.transpose()).is_zero();
        ensure(q(&b.omega, bar.matrix()), || format!("{}: Ω Λ̄ Ωᵀ ≠ 0", f.name))?;
        ensure(q(&b.omega_tilde, lam.matrix()), || format!("{}: Ω̃ Λ Ω̃ᵀ ≠ 0", f.name))?;
        ensure(q(&b.cgs_md, tilde.matrix()), || format!("{}: MD Λ̃ MDᵀ ≠ 0", f.name))?;
    }
    Ok(())
}

fn orthogonality_inclusion(fx: &[Fixture]) -> Outcome {
    for f in fx {
        let b = EmbeddingBundle::new(&f.net.response_matrix().unwrap()).unwrap();
        ensure(b.orthogonality_product().is_zero(), || format!("{}: MD(ΩD̃)ᵀ ≠ 0", f.name))?;
        let bar_inv = standard_forms(b.n).2.matrix().inverse().unwrap();
        let rel = b.inclusion(&bar_inv).unwrap();
        ensure(rel == SubspaceRelation::AInB, || format!("{}: relation {rel}", f.name))?;
    }
    // The triangle: a 2-dimensional row space inside a 4-dimensional one.
    let (a, bb, c) = abc();
    let b = EmbeddingBundle::new(&triangle(a, bb, c).response_matrix().unwrap()).unwrap();
    let lhs = b.omega.mul(&b.d_tilde);
    let bar_inv = standard_forms(3).2.matrix().inverse().unwrap();
    let rhs = bar_inv.mul(&b.cgs_md.transpose()).transpose();
    ensure(lhs.rank() == 2 && rhs.rank() == 4, || {
        format!("triangle ranks {} and {}", lhs.rank(), rhs.rank())
    })?;
    ensure(subspace_relation(&lhs, &rhs).unwrap() == SubspaceRelation::AInB, || "triangle inclusion".into())
}

fn uniqueness() -> Outcome {
    for n in 3..=6 {
        let sol = unique_form_solver(n).map_err(|e| e.to_string())?;
        ensure(sol.dimension() == 1, || format!("n={n}: nullity {}", sol.dimension()))?;
        let g = sol.basis[0].matrix();
        let a = g.get(0, 1).clone();
        ensure(!a.is_zero() && *g == lambda(2 * n - 2).matrix().scale(&a), || {
            format!("n={n}: generator is not a multiple of Λ_{}", 2 * n - 2)
        })?;
    }
    let g = unique_form_solver(3).unwrap().basis[0].matrix().clone();
    let a = g.get(0, 1).clone();
    let shown = RatMatrix::from_i64(&[
        vec![0, 1, 0, 0],
        vec![-1, 0, -1, 0],
        vec![0, 1, 0, 1],
        vec![0, 0, -1, 0],
    ])
    .scale(&a);
    ensure(g == shown, || format!("n=3 form:\n{g}"))
}

fn kernel_identity() -> Outcome {
    for (n, expected) in [(3, 5), (4, 14), (5, 42)] {
        let (dim, equal) = kernel_equals_concordance_space(n).map_err(|e| e.to_string())?;
        ensure(dim == expected && dim as u64 == catalan(n), || format!("n={n}: dim ker Q = {dim}"))?;
        ensure(equal, || format!("n={n}: ker Q differs from span of w_σ|_V"))?;
    }
    Ok(())
}

fn algorithm_soundness() -> Outcome {
    for n in 2..=6 {
        let all = enumerate_nc(n).unwrap();
        if n == 6 {
            ensure(all.len() == 132, || format!("{} partitions at n=6", all.len()))?;
        }
        for sigma in all {
            let f = algorithm_factorization(&sigma);
            ensure(f.expand() == concordance_vector(&sigma), || format!("{sigma}: expansion differs"))?;
        }
    }
    let run = algorithm_factorization(&p("1 4 6|2 3|5", 6));
    ensure(run.pairs_line() == "(1 7)(7 11)(2 6)(3 5)(8 10)", || run.pairs_line())?;
    ensure(
        run.brackets_line() == "(e1+e7)∧(e2-e6)∧(e3+e5)∧(e7-e11)∧(e8+e10)",
        || run.brackets_line(),
    )?;
    ensure(run.v_line() == "(v1-v3+v5)∧(v2-v4)∧(v3)∧(v7-v9)∧(v8)", || run.v_line())?;
    for (s, expected) in [
        ("1|2 3", "(v2-v4)∧(v3)"),
        ("1 3|2", "(v1-v3)∧(v2)"),
        ("1 2|3", "(v1)∧(v4)"),
        ("1|2|3", "(v2)∧(v4)"),
        ("1 2 3", "(v1)∧(v3)"),
    ] {
        let got = algorithm_factorization(&p(s, 3)).v_line();
        ensure(got == expected, || format!("{s}: {got}"))?;
    }
    let seven = algorithm_factorization(&p("1|2 5 8|3|4|6 7", 8)).v_line();
    ensure(
        seven == "(v2-v4+v6-v8+v10-v12+v14)∧(v3-v5+v7)∧(v4)∧(v6)∧(v9-v11+v13)∧(v10-v12)∧(v11)",
        || seven.clone(),
    )
}

fn lagrangian_structure() -> Outcome {
    for n in 2..=6 {
        for sigma in enumerate_nc(n).unwrap() {
            let r = restrict_to_v(&concordance_vector(&sigma)).map_err(|e| e.to_string())?;
            ensure(r.terms().all(|(_, c)| c.is_one()), || format!("{sigma}: coefficient outside {{0,1}}"))?;
            ensure(r.support() == lagrangian_concordant_sets(&sigma), || {
                format!("{sigma}: support differs from the Lagrangian-concordant sets")
            })?;
        }
    }
    let lext = lagrangian_extension(&p("1|2 5 8|3|4|6 7", 8)).to_string();
    let printed = "(11)(3,5,7)(9,13)(4)(6)(10,12)(2,8)";
    ensure(lext == printed, || format!("Lext worked example: expected {printed} got {lext}"))
}

fn lagrangian_plucker_formula(fx: &[Fixture]) -> Outcome {
    for f in fx {
        let m = f.net.response_matrix().unwrap();
        let tilde = to_v_basis(&omega_matrix(&m)).unwrap();
        let pl = plucker_of_rowspace(&tilde).unwrap();
        let lg = lagrangian_plucker(&f.groves);
        ensure(lg.proportionality(&pl).is_some(), || format!("{}: not proportional", f.name))?;
    }
    Ok(())
}

fn crystal_and_pairing() -> Outcome {
    for n in 2..=5 {
        let r = crystal_check(n).map_err(|e| e.to_string())?;
        ensure(r.passed(), || r.to_string())?;
    }
    for n in 2..=4 {
        let r = invariance_check(n).map_err(|e| e.to_string())?;
        ensure(r.passed(), || r.to_string())?;
    }
    for n in 2..=5 {
        let form = lambda(2 * n - 2);
        for t in [int(1), int(2), rat(5, 3)] {
            for i in 1..=2 * n {
                let u = generator(n, i, &t).unwrap();
                let uv = restrict_to_v_operator(&u.matrix).map_err(|e| e.to_string())?;
                let moved = uv.mul(form.matrix()).mul(&uv.transpose());
                ensure(moved == *form.matrix(), || format!("n={n} i={i} t={t}: form not preserved"))?;
            }
        }
    }
    Ok(())
}

fn resistance_embedding(fx: &[Fixture]) -> Outcome {
    for f in fx {
        let r = effective_resistance(&f.net.response_matrix().unwrap()).unwrap();
        let lhs = plucker_of_rowspace(&omega_resistance_reduced(&r))
            .unwrap()
            .scale(&f.groves.l_connected());
        ensure(lhs == lam_plucker(&f.groves), || format!("{}: Δ(Ω'_R)·L_12..n differs", f.name))?;
    }
    let (a, b, c) = abc();
    let net = triangle(a.clone(), b.clone(), c.clone());
    let expected = (&b + &c) / (&a * &b + &b * &c + &c * &a);
    let oracle = nodal_resistance(&net, 1, 2);
    let lib = effective_resistance(&net.response_matrix().unwrap()).unwrap().r(1, 2).clone();
    ensure(oracle == expected && lib == expected, || {
        format!("R12: closed form {expected}, oracle {oracle}, library {lib}")
    })
}

fn dual_check(net: &Network, name: &str) -> Outcome {
    let dual = net.dual_network().map_err(|e| format!("{name}: {e}"))?;
    let own = omega_matrix(&net.response_matrix().unwrap());
    let other = omega_matrix(&dual.response_matrix().unwrap());
    let s_inv = cyclic_shift(net.n()).inverse().unwrap();
    let lhs = plucker_of_rowspace(&other).unwrap();
    let rhs = plucker_of_rowspace(&own.mul(&s_inv)).unwrap();
    ensure(lhs.proportionality(&rhs).is_some(), || format!("{name}: Ω(e*) not ∝ Ω(e)s⁻¹"))
}

fn duality() -> Outcome {
    let tri = load("triangle.enet");
    let dual = tri.dual_network().map_err(|e| e.to_string())?;
    ensure(dual.interior() == 1 && dual.edges().len() == 3, || "dual of the triangle is not a Y".into())?;
    dual_check(&tri, "triangle")?;
    dual_check(&load("star.enet"), "star")?;
    for (k, net) in random_dualizable(RANDOM_SEED ^ 1, 20).iter().enumerate() {
        dual_check(net, &format!("random#{k}"))?;
    }
    Ok(())
}

fn cgs_coordinates(fx: &[Fixture]) -> Outcome {
    for f in fx {
        let x = x_matrix(&f.net.response_matrix().unwrap()).unwrap();
        let pl = plucker_of_rowspace(&x).unwrap();
        ensure(pl.proportionality(&cgs_plucker(&f.groves)).is_some(), || {
            format!("{}: minors of X not ∝ Δ∘", f.name)
        })?;
    }
    let (a, b, c) = abc();
    let x = x_matrix(&triangle(a.clone(), b.clone(), c.clone()).response_matrix().unwrap()).unwrap();
    let zero = Rational::zero;
    let one = Rational::one;
    let mb = RatMatrix::from_rows(vec![
        vec![one(), zero(), zero(), a.clone(), zero(), -(&a + &c)],
        vec![zero(), one(), zero(), int(-1), zero(), one()],
        vec![zero(), zero(), one(), &b + &a, zero(), -a.clone()],
        vec![zero(), zero(), zero(), b.clone(), one(), c.clone()],
    ])
    .unwrap();
    let rel = subspace_relation(&x, &mb).unwrap();
    ensure(rel == SubspaceRelation::Equal, || format!("rowspace(X) vs M_B: {rel}"))
}

fn dimer_oracle(fx: &[Fixture]) -> Outcome {
    let mut checked = 0;
    for f in fx.iter().filter(|f| f.name == "triangle" || (3..=4).contains(&f.net.n())) {
        if f.name.starts_with("random") && f.net.dual_network().is_err() {
            continue;
        }
        let lam = dimer_table(&temperley(&f.net).map_err(|e| format!("{}: {e}", f.name))?);
        let cgs = dimer_table(&dual_temperley(&f.net).map_err(|e| format!("{}: {e}", f.name))?);
        ensure(lam == lam_plucker(&f.groves), || format!("{}: dimer Δ• differs", f.name))?;
        ensure(cgs == cgs_plucker(&f.groves), || format!("{}: dimer Δ∘ differs", f.name))?;
        checked += 1;
    }
    ensure(checked >= 5, || format!("only {checked} fixtures checked"))
}

#[test]
fn acceptance() {
    let fx = fixtures();
    let criteria: Vec<Criterion> = vec![
        ("point equality", Box::new(|| point_equality(&fx))),
        ("isotropy triple", Box::new(|| isotropy(&fx))),
        ("orthogonality and inclusion", Box::new(|| orthogonality_inclusion(&fx))),
        ("uniqueness of the form", Box::new(uniqueness)),
        ("kernel identity", Box::new(kernel_identity)),
        ("algorithm soundness", Box::new(algorithm_soundness)),
        ("Lagrangian structure", Box::new(lagrangian_structure)),
        ("Lagrangian Plücker formula", Box::new(|| lagrangian_plucker_formula(&fx))),
        ("crystal and pairing invariance", Box::new(crystal_and_pairing)),
        ("resistance embedding", Box::new(|| resistance_embedding(&fx))),
        ("duality", Box::new(duality)),
        ("CGS coordinates", Box::new(|| cgs_coordinates(&fx))),
        ("dimer oracle", Box::new(|| dimer_oracle(&fx))),
    ];
    let mut failures = Vec::new();
    for (k, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {:>2} {title} ({secs:.2}s)", k + 1),
            Err(why) => {
                println!("FAIL {:>2} {title} ({secs:.2}s): {why}", k + 1);
                failures.push(k + 1);
            }
        }
    }
    assert!(failures.is_empty(), "failing criteria: {failures:?}");
}
