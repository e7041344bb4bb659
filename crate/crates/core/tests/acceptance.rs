//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::time::Instant;

use chevrest::exactlin::{kernel_basis, rank, rref, solve, sparse_kernel, sparse_rank, Mat, Scalar};
use chevrest::invring::{w0_invariants, DEFAULT_MONOMIAL_CAP};
use chevrest::par::Exec;
use chevrest::reps::{check_lemma_1_3, claim_check, smallest_non_q, smallest_q_plus, spherical_dim, RepCaps};
use chevrest::restrict::{verify_degree, RestrictionVerdict, VerifyOptions};
use chevrest::rootsys::{build_root_system, molien_dim, Family};
use chevrest::sympair::{build_pair, catalog, verify_q_covering, PAIR_IDS};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MAIN_PAIRS: [&str; 5] = ["AI:2", "AI:3", "AIII:2,1", "CI:2", "ADJ:sl2"];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn sweep(pairs: &[&str], copies: usize, max_d: impl Fn(&str) -> usize) -> Result<Vec<RestrictionVerdict>, String> {
    let opts = VerifyOptions::default();
    let mut out = Vec::new();
    for id in pairs {
        let pair = build_pair(id).map_err(|e| e.to_string())?;
        for d in 0..=max_d(id) {
            out.push(verify_degree(&pair, copies, d, &opts).map_err(|e| format!("{id} N={copies} d={d}: {e}"))?);
        }
    }
    Ok(out)
}

fn first_failure(vs: &[RestrictionVerdict], ok: impl Fn(&RestrictionVerdict) -> bool) -> Option<&RestrictionVerdict> {
    vs.iter().find(|v| !ok(v))
}

fn describe(v: &RestrictionVerdict) -> String {
    format!(
        "{} N={} d={}: source {} target {} molien {} psi rank {} theta rank {}",
        v.pair, v.copies, v.degree, v.dim_source_invariants, v.dim_target_invariants, v.molien_dim, v.psi_rank, v.theta_rank
    )
}

fn criterion_1(one: &Result<Vec<RestrictionVerdict>, String>) -> Outcome {
    match one {
        Err(e) => outcome(false, e.clone()),
        Ok(vs) => match first_failure(vs, |v| v.isomorphism()) {
            Some(v) => outcome(false, describe(v)),
            None => outcome(true, format!("{} (pair, d) cases, psi bijective", vs.len())),
        },
    }
}

fn criterion_2(two: &Result<Vec<RestrictionVerdict>, String>) -> Outcome {
    match two {
        Err(e) => outcome(false, e.clone()),
        Ok(vs) => match first_failure(vs, |v| v.theorem_holds()) {
            Some(v) => outcome(false, describe(v)),
            None => {
                let kernel: usize = vs.iter().map(|v| v.psi_kernel_dim).sum();
                outcome(true, format!("{} cases surjective, total kernel dim {kernel}", vs.len()))
            }
        },
    }
}

fn criterion_3() -> Outcome {
    match sweep(&["AI:2", "ADJ:sl2"], 3, |_| 3) {
        Err(e) => outcome(false, e),
        Ok(vs) => match first_failure(&vs, |v| v.theorem_holds()) {
            Some(v) => outcome(false, describe(v)),
            None => outcome(true, format!("{} cases surjective with N=3", vs.len())),
        },
    }
}

fn criterion_4(one: &Result<Vec<RestrictionVerdict>, String>, two: &Result<Vec<RestrictionVerdict>, String>) -> Outcome {
    match (one, two) {
        (Ok(a), Ok(b)) => {
            let all: Vec<&RestrictionVerdict> = a.iter().chain(b).collect();
            match all.iter().find(|v| !v.lemma_1_1_holds()) {
                Some(v) => outcome(false, describe(v)),
                None => outcome(true, format!("{} cases: theta injective, Ker psi ∩ Im theta = 0, psi∘theta bijective", all.len())),
            }
        }
        (Err(e), _) | (_, Err(e)) => outcome(false, e.clone()),
    }
}

fn criterion_5() -> Outcome {
    let mut points = 0;
    for id in ["AI:2", "AI:3", "AIII:2,1", "ADJ:sl2"] {
        let r = match build_pair(id).and_then(|p| verify_q_covering(&p, 6)) {
            Ok(r) => r,
            Err(e) => return outcome(false, format!("{id}: {e}")),
        };
        if !r.passed() {
            return outcome(false, format!("{id}: counterexamples {:?}", r.counterexamples));
        }
        points += r.points_in_q;
    }
    outcome(true, format!("{points} points of Q in the boxes, zero counterexamples"))
}

fn criterion_6() -> Outcome {
    let caps = RepCaps::default();
    let mut checked = Vec::new();
    for id in ["AI:2", "AI:3", "ADJ:sl2"] {
        let run = || -> Result<String, String> {
            let pair = build_pair(id).map_err(|e| e.to_string())?;
            let inside = smallest_q_plus(&pair, 2, &caps).map_err(|e| e.to_string())?;
            let outside = smallest_non_q(&pair, 2, &caps).map_err(|e| e.to_string())?;
            if inside.len() < 2 || outside.len() < 2 {
                return Err(format!("{id}: not enough weights under the cap"));
            }
            if id == "AI:2" {
                let values: Vec<String> = inside.iter().map(|w| pair.restrict_weight(w).to_string()).collect();
                if values != ["(4)", "(8)"] {
                    return Err(format!("AI:2 restricted values {values:?}"));
                }
            }
            for lam in &inside {
                let r = check_lemma_1_3(&pair, lam, &caps).map_err(|e| format!("{id} {lam}: {e}"))?;
                if !r.passed() {
                    return Err(format!("{id} {lam}: {r:?}"));
                }
            }
            for lam in &outside {
                let d = spherical_dim(&pair, lam, &caps).map_err(|e| format!("{id} {lam}: {e}"))?;
                if d != 0 {
                    return Err(format!("{id} {lam} outside Q has a spherical vector"));
                }
            }
            Ok(format!(
                "{id} Q₊ {} / outside {}",
                inside.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
                outside.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
            ))
        };
        match run() {
            Ok(s) => checked.push(s),
            Err(e) => return outcome(false, e),
        }
    }
    outcome(true, checked.join("; "))
}

fn criterion_7() -> Outcome {
    let caps = RepCaps::default();
    let mut checked = Vec::new();
    for id in ["ADJ:sl2", "AI:2"] {
        let run = || -> Result<String, String> {
            let pair = build_pair(id).map_err(|e| e.to_string())?;
            let lam = smallest_q_plus(&pair, 1, &caps)
                .map_err(|e| e.to_string())?
                .into_iter()
                .next()
                .ok_or("no admissible weight")?;
            let r = claim_check(&pair, &lam, &lam, &caps).map_err(|e| format!("{id}: {e}"))?;
            if !r.passed() {
                return Err(format!("{id}: {r:?}"));
            }
            Ok(format!("{id} λ=µ={lam} r={} rank π={} components {:?}", r.pairs.len(), r.pi_rank, r.component_dims))
        };
        match run() {
            Ok(s) => checked.push(s),
            Err(e) => return outcome(false, e),
        }
    }
    outcome(true, checked.join("; "))
}

fn criterion_8(one: &Result<Vec<RestrictionVerdict>, String>, two: &Result<Vec<RestrictionVerdict>, String>) -> Outcome {
    let (Ok(a), Ok(b)) = (one, two) else {
        return outcome(false, "restriction sweeps failed");
    };
    // Target dimensions and Reynolds checks from every sweep item.
    for v in a.iter().chain(b) {
        if v.dim_target_invariants != v.molien_dim || !v.reynolds_checked {
            return outcome(false, describe(v));
        }
    }
    // Remaining catalog pairs, W₀ side only.
    let mut extra = 0;
    for id in PAIR_IDS {
        let pair = match build_pair(id) {
            Ok(p) => p,
            Err(e) => return outcome(false, format!("{id}: {e}")),
        };
        for (n, top) in [(1, 4), (2, 3)] {
            for d in 0..=top {
                match w0_invariants(&pair, n, d, DEFAULT_MONOMIAL_CAP, Exec::default()) {
                    Ok(w) if w.dim() == molien_dim(&pair.w0, n, d) => extra += 1,
                    Ok(w) => return outcome(false, format!("{id} N={n} d={d}: {} vs Molien", w.dim())),
                    Err(e) => return outcome(false, format!("{id}: {e}")),
                }
            }
        }
    }
    for (id, rank) in [("ADJ:sl2", 1), ("ADJ:sl3", 2)] {
        let pair = build_pair(id).unwrap();
        let weyl = build_root_system(Family::A, rank).and_then(|r| r.weyl_group(10_000));
        match weyl {
            Ok(w) if w.order() == pair.w0.order() => {}
            Ok(w) => return outcome(false, format!("{id}: |W0| {} vs |W| {}", pair.w0.order(), w.order())),
            Err(e) => return outcome(false, e.to_string()),
        }
    }
    outcome(
        true,
        format!("{} Reynolds/Molien checks in sweeps, {extra} catalog Molien checks, adjoint |W0| = |W|", a.len() + b.len()),
    )
}

fn random_mat(rng: &mut ChaCha8Rng, r: usize, c: usize) -> Mat {
    let rows = (0..r)
        .map(|_| {
            (0..c)
                .map(|_| {
                    // Sparse-ish entries make rank deficiency common.
                    if rng.gen_bool(0.3) {
                        Scalar::zero()
                    } else {
                        Scalar::new(rng.gen_range(-4..=4).into(), rng.gen_range(1..=3).into())
                    }
                })
                .collect()
        })
        .collect();
    Mat::from_rows(rows)
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for trial in 0..200 {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let a = random_mat(&mut rng, r, c);
        let rk = rank(&a);
        let ker = kernel_basis(&a);
        let (red, piv) = rref(&a);
        let sparse_rows = a.row_vecs().into_iter().map(|row| {
            row.into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .collect::<Vec<_>>()
        });
        let mut ok = rk + ker.len() == c
            && ker.iter().all(|k| a.mul_vec(k).iter().all(Zero::is_zero))
            && rank(&a.transpose()) == rk
            && piv.len() == rk
            && rank(&red) == rk
            && sparse_rank(c, sparse_rows.clone()) == rk
            && sparse_kernel(c, sparse_rows).len() == ker.len();
        let x: Vec<Scalar> = (0..c).map(|_| Scalar::from_integer(rng.gen_range(-3..=3).into())).collect();
        let b = a.mul_vec(&x);
        ok &= solve(&a, &b).is_some_and(|y| a.mul_vec(&y) == b);
        if r == c {
            let m = random_mat(&mut rng, r, r);
            ok &= (&a * &m).determinant() == a.determinant() * m.determinant();
            ok &= match a.inverse() {
                Some(inv) => !a.determinant().is_zero() && &a * &inv == Mat::identity(r),
                None => a.determinant().is_zero(),
            };
        }
        if !ok {
            return outcome(false, format!("linear algebra identity fails on trial {trial}: {r}x{c}"));
        }
    }
    let pairs = match catalog() {
        Ok(p) => p,
        Err(e) => return outcome(false, e.to_string()),
    };
    for p in &pairs {
        if let Err(e) = p.g.validate().and_then(|_| p.validate()) {
            return outcome(false, format!("{}: {e}", p.id));
        }
    }
    outcome(true, format!("200 random matrices; Jacobi and Killing invariance on {} algebras", pairs.len()))
}

fn main() {
    let mut failed = 0;
    let mut report = |n: usize, start: Instant, o: Outcome| {
        let secs = start.elapsed().as_secs_f64();
        println!("criterion {n}: {} ({secs:.1}s) {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed += 1;
        }
    };

    let t = Instant::now();
    let one = sweep(&MAIN_PAIRS, 1, |_| 6);
    report(1, t, criterion_1(&one));

    let t = Instant::now();
    let two = sweep(&MAIN_PAIRS, 2, |id| if id == "AI:2" || id == "ADJ:sl2" { 5 } else { 4 });
    report(2, t, criterion_2(&two));

    let t = Instant::now();
    report(3, t, criterion_3());
    let t = Instant::now();
    report(4, t, criterion_4(&one, &two));
    let t = Instant::now();
    report(5, t, criterion_5());
    let t = Instant::now();
    report(6, t, criterion_6());
    let t = Instant::now();
    report(7, t, criterion_7());
    let t = Instant::now();
    report(8, t, criterion_8(&one, &two));
    let t = Instant::now();
    report(9, t, criterion_9());

    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
