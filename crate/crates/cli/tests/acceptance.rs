//! Acceptance criteria 1–13. Runs without the libtest harness so that each
//! criterion prints exactly one PASS/FAIL line; exits nonzero if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stackstab::filtration::{build_lattice, s_equivalent, GradedPiece};
use stackstab::gerbe::{build_gerbe_lattice, poly_split_check, semistable_gerbe, GerbeSheaf};
use stackstab::gitbounds::{
    find_mtilde, git_semistable_check, hm_weight, kleiman_poly, langer_h0_bound, lepotier_counts, lepotier_regularity,
    lepotier_sub_counts, mu_hat_max, slope_bound_check, validation_injectivity, SubspacePair, WeightDecomposition,
    WeightEntry,
};
use stackstab::reptheory::{distinguishes, preset, CharacterRep, TwistList};
use stackstab::rootcurve::{degree_identity_residual, g_d_line, hn_direct, parabolic_line_data, summand_hilbert};
use stackstab::{
    modified_hilbert, DecomposableSheaf, Error, GeneratingSheaf, OrbiLineBundle, PointLocation, QPoly, Rational,
    Stability, StackyCurve, Summand, TorsionSummand,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------- generators ----------

/// `genus ≤ max_g`, at most `max_pts` stacky points with `r_i ≤ max_r`, `c ≤ max_c`.
fn random_curve(rng: &mut ChaCha8Rng, max_g: u32, max_pts: usize, max_r: u32, max_c: u32) -> StackyCurve {
    let n = rng.gen_range(0..=max_pts);
    let pts = (0..n).map(|_| rng.gen_range(1..=max_r)).collect();
    StackyCurve::new(rng.gen_range(0..=max_g), rng.gen_range(1..=max_c), pts).unwrap()
}

fn stacky_p1(rng: &mut ChaCha8Rng) -> StackyCurve {
    let n = rng.gen_range(1..=3);
    let pts = (0..n).map(|_| rng.gen_range(2..=5)).collect();
    StackyCurve::new(0, rng.gen_range(1..=3), pts).unwrap()
}

fn random_line(rng: &mut ChaCha8Rng, curve: &StackyCurve) -> OrbiLineBundle {
    let ks = curve.stacky_points.iter().map(|&r| rng.gen_range(-2 * r as i64..=2 * r as i64)).collect();
    OrbiLineBundle::new(rng.gen_range(-6..=6), ks)
}

fn random_torsion(rng: &mut ChaCha8Rng, curve: &StackyCurve) -> TorsionSummand {
    let n = curve.num_points();
    let (location, modulus) = if n == 0 || rng.gen_bool(0.3) {
        (PointLocation::Generic, 1)
    } else {
        let i = rng.gen_range(0..n);
        (PointLocation::Stacky(i), curve.stacky_points[i] as u64)
    };
    let chars: Vec<i64> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(-5..10)).collect();
    TorsionSummand { location, rep: CharacterRep::new(modulus, &chars).unwrap() }
}

/// A direct sum of lines of one stacky degree: a polystable sheaf.
fn polystable(rng: &mut ChaCha8Rng, curve: &StackyCurve, max_summands: usize) -> DecomposableSheaf {
    let base = random_line(rng, curve);
    let mut lines = vec![base.clone()];
    for _ in 1..rng.gen_range(1..=max_summands) {
        let mut l = base.clone();
        let n = curve.num_points();
        if n > 0 {
            for _ in 0..rng.gen_range(0..3) {
                let i = rng.gen_range(0..n);
                let j = rng.gen_range(0..n);
                let (ri, rj) = (curve.root_order(i), curve.root_order(j));
                if rng.gen_bool(0.5) {
                    // same bundle in another presentation
                    l.exponents[i] += ri;
                    l.base_degree -= 1;
                } else if ri == rj {
                    // a different bundle of the same stacky degree
                    l.exponents[i] += 1;
                    l.exponents[j] -= 1;
                }
            }
        }
        lines.push(l);
    }
    DecomposableSheaf::from_lines(lines)
}

/// Curves on which unequal polystable summands exist: two points of one order.
fn paired_p1(rng: &mut ChaCha8Rng) -> StackyCurve {
    let r = rng.gen_range(2..=4);
    let mut pts = vec![r, r];
    if rng.gen_bool(0.5) {
        pts.push(rng.gen_range(2..=3));
    }
    StackyCurve::new(0, rng.gen_range(1..=2), pts).unwrap()
}

// ---------- independent oracles ----------

fn stepped_floor(mut k: i64, r: i64) -> i64 {
    let mut q = 0;
    while k < 0 {
        k += r;
        q -= 1;
    }
    while k >= r {
        k -= r;
        q += 1;
    }
    q
}

fn oracle_line(l: &OrbiLineBundle, e: &GeneratingSheaf, c: &StackyCurve) -> QPoly {
    let mut total = QPoly::zero();
    for ej in &e.summands {
        let mut d = l.base_degree - ej.base_degree;
        for (i, &r) in c.stacky_points.iter().enumerate() {
            d += stepped_floor(l.exponents[i] - ej.exponents[i], r as i64);
        }
        total = &total + &QPoly::from_ints(&[d + 1 - c.genus as i64, c.polarization_degree as i64]);
    }
    total
}

fn oracle_torsion(t: &TorsionSummand, e: &GeneratingSheaf, c: &StackyCurve) -> QPoly {
    let count: usize = match t.location {
        PointLocation::Generic => t.rep.dim() * e.rank(),
        PointLocation::Stacky(i) => {
            let r = c.stacky_points[i] as i64;
            e.summands
                .iter()
                .map(|ej| {
                    let fiber = ((ej.exponents[i] % r) + r) % r;
                    t.rep.chars().iter().filter(|&&ch| ch as i64 == fiber).count()
                })
                .sum()
        }
    };
    QPoly::from_ints(&[count as i64])
}

// ---------- criteria ----------

fn run_cli(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_stackstab"))
        .args(args)
        .output()
        .map_err(|e| format!("cannot run CLI: {e}"))?;
    ensure(out.status.success(), || format!("CLI exited with {}", out.status))?;
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

fn c1() -> Outcome {
    let csv = run_cli(&["point-table", "--preset", "p332-minimal", "--format", "csv"])?;
    let expected = "label,n_0,n_1,n_2,n\nP(1),1,1,1,3\nP(2),1,0,1,2\nP(3),1,0,0,1\n2P(3),1,0,1,2\n";
    ensure(csv == expected, || format!("got {csv:?}"))?;
    Ok("4 rows exact".into())
}

fn c2() -> Outcome {
    let csv = run_cli(&["point-table", "--preset", "p332-separating", "--format", "csv"])?;
    let expected = "label,n_0,n_2,n_4,n_3,n\nP(1),1,1,1,1,4\nP(2),1,1,1,0,3\nP(3),1,0,0,1,2\n2P(3),1,1,0,1,3\n";
    ensure(csv == expected, || format!("got {csv:?}"))?;
    let reps = |name| -> (Vec<CharacterRep>, TwistList) {
        let (pts, tw) = preset(name).unwrap();
        (pts.into_iter().map(|p| p.rep).collect(), tw)
    };
    let (a, ta) = reps("p332-minimal");
    let (b, tb) = reps("p332-separating");
    ensure(!distinguishes(&a, &ta), || "minimal preset should not distinguish".into())?;
    ensure(distinguishes(&b, &tb), || "separating preset should distinguish".into())?;
    Ok("4 rows exact, distinguishes false/true".into())
}

fn c3() -> Outcome {
    let mut rng = rng(3);
    for case in 0..500 {
        let c = random_curve(&mut rng, 3, 3, 5, 3);
        let e = GeneratingSheaf::balanced(&c);
        let mut f = DecomposableSheaf::default();
        for _ in 0..rng.gen_range(1..=8) {
            if rng.gen_bool(0.7) {
                f.lines.push(random_line(&mut rng, &c));
            } else {
                f.torsion.push(random_torsion(&mut rng, &c));
            }
        }
        let total = modified_hilbert(&f, &e, &c).map_err(|err| format!("case {case}: {err}"))?;
        let mut sum = QPoly::zero();
        for s in f.summands() {
            let (p, oracle) = match &s {
                Summand::Line(l) => (summand_hilbert(&s, &e, &c), oracle_line(l, &e, &c)),
                Summand::Torsion(t) => (summand_hilbert(&s, &e, &c), oracle_torsion(t, &e, &c)),
            };
            ensure(p == oracle, || format!("case {case}: summand {s} gives {p}, oracle {oracle}"))?;
            match s {
                Summand::Line(_) => {
                    ensure(p.degree() == Some(1), || format!("case {case}: line of degree {:?}", p.degree()))?
                }
                Summand::Torsion(_) => {
                    ensure(p.degree().unwrap_or(0) == 0, || format!("case {case}: torsion not constant"))?
                }
            }
            sum = &sum + &p;
        }
        ensure(sum == total, || format!("case {case}: {sum} != {total}"))?;
    }
    Ok("500 sheaves".into())
}

fn c4() -> Outcome {
    let mut rng = rng(4);
    let mut unbalanced = 0;
    for case in 0..200 {
        let c = random_curve(&mut rng, 3, 3, 5, 3);
        let e = GeneratingSheaf::balanced(&c);
        let f = DecomposableSheaf::from_lines((0..rng.gen_range(1..=6)).map(|_| random_line(&mut rng, &c)).collect());
        let residual = degree_identity_residual(&f, &e, &c).map_err(|err| format!("case {case}: {err}"))?;
        ensure(residual.is_zero(), || format!("case {case}: residual {residual}"))?;
        if c.stacky_points.iter().any(|&r| r >= 2) {
            let par = GeneratingSheaf::parabolic(&c);
            match degree_identity_residual(&f, &par, &c) {
                Err(Error::UnbalancedGeneratingSheaf { .. }) => unbalanced += 1,
                other => return Err(format!("case {case}: parabolic variant gave {other:?}")),
            }
        }
    }
    ensure(unbalanced > 50, || format!("only {unbalanced} parabolic checks"))?;
    Ok(format!("200 residuals zero, {unbalanced} parabolic rejections"))
}

fn c5() -> Outcome {
    let mut rng = rng(5);
    for case in 0..500 {
        let c = random_curve(&mut rng, 3, 3, 5, 3);
        let e = GeneratingSheaf::balanced(&c);
        let mut lines: Vec<OrbiLineBundle> = (0..rng.gen_range(1..=8)).map(|_| random_line(&mut rng, &c)).collect();
        // repeat some summands so that groups of equal slope occur
        if lines.len() > 2 && rng.gen_bool(0.5) {
            let l = lines[0].clone();
            lines[1] = l;
        }
        let f = DecomposableSheaf::from_lines(lines);
        let lat = build_lattice(&f, &e, &c).map_err(|err| format!("case {case}: {err}"))?;
        let hn = lat.hn().map_err(|err| format!("case {case}: {err}"))?;
        let groups = hn_direct(&f, &e, &c).map_err(|err| format!("case {case}: {err}"))?;
        ensure(hn.steps() == groups.len(), || format!("case {case}: {} steps vs {} groups", hn.steps(), groups.len()))?;
        let mut members = Vec::new();
        for (j, g) in groups.iter().enumerate() {
            members.extend_from_slice(g);
            let node = lat.find_atoms(&members).unwrap();
            ensure(hn.nodes[j + 1] == node, || format!("case {case}: step {} differs", j + 1))?;
        }
        let red = hn.graded_reduced().map_err(|e| e.to_string())?;
        ensure(red.windows(2).all(|w| w[0] > w[1]), || format!("case {case}: not strictly decreasing"))?;
        let sum: QPoly = hn.graded.iter().sum();
        ensure(&sum == lat.hilbert(lat.top()), || format!("case {case}: graded sum mismatch"))?;
    }
    Ok("500 sheaves".into())
}

fn pieces_of(
    f: &DecomposableSheaf,
    e: &GeneratingSheaf,
    c: &StackyCurve,
    seed: u64,
) -> Result<Vec<GradedPiece>, String> {
    Ok(build_lattice(f, e, c).and_then(|l| l.jh(seed)).map_err(|err| err.to_string())?.pieces)
}

fn c6() -> Outcome {
    let mut rng = rng(6);
    let mut nontrivial_pairs = 0;
    for case in 0..200 {
        let c = paired_p1(&mut rng);
        let e = GeneratingSheaf::balanced(&c);
        let f = polystable(&mut rng, &c, 6);
        let lat = build_lattice(&f, &e, &c).map_err(|err| format!("case {case}: {err}"))?;
        let first = lat.jh(rng.gen()).map_err(|err| format!("case {case}: {err}"))?.graded_multiset();
        for _ in 0..9 {
            let other = lat.jh(rng.gen()).map_err(|err| format!("case {case}: {err}"))?.graded_multiset();
            ensure(other == first, || format!("case {case}: multisets differ across seeds"))?;
        }
        // three sheaves of one reduced polynomial: f, a permutation of f, and a variant
        let mut perm = f.lines.clone();
        perm.shuffle(&mut rng);
        let g = DecomposableSheaf::from_lines(perm);
        let mut variant = f.lines.clone();
        if variant.len() > 1 {
            variant.pop();
            variant.push(f.lines[0].clone());
        }
        let h = DecomposableSheaf::from_lines(variant);
        let all = [pieces_of(&f, &e, &c, 1)?, pieces_of(&g, &e, &c, 2)?, pieces_of(&h, &e, &c, 3)?];
        let s = |a: usize, b: usize| s_equivalent(&all[a], &all[b]).map_err(|err| format!("case {case}: {err}"));
        for a in 0..3 {
            ensure(s(a, a)?, || format!("case {case}: not reflexive"))?;
            for b in 0..3 {
                ensure(s(a, b)? == s(b, a)?, || format!("case {case}: not symmetric"))?;
                for d in 0..3 {
                    if s(a, b)? && s(b, d)? {
                        ensure(s(a, d)?, || format!("case {case}: not transitive"))?;
                    }
                }
            }
        }
        ensure(s(0, 1)?, || format!("case {case}: a permutation is not S-equivalent"))?;
        if !s(0, 2)? {
            nontrivial_pairs += 1;
        }
    }
    ensure(nontrivial_pairs > 10, || format!("only {nontrivial_pairs} non-equivalent pairs"))?;
    Ok(format!("200 instances x 10 seeds, {nontrivial_pairs} non-equivalent pairs"))
}

fn c7() -> Outcome {
    let mut rng = rng(7);
    for case in 0..300 {
        let c = loop {
            let c = random_curve(&mut rng, 3, 3, 5, 3);
            if c.num_points() > 0 {
                break c;
            }
        };
        let reps = rng.gen_range(1..=4);
        let l = OrbiLineBundle::new(
            rng.gen_range(-20..=20),
            c.stacky_points.iter().map(|&r| rng.gen_range(-(reps * r as i64)..=reps * r as i64)).collect(),
        );
        let data = parabolic_line_data(&l, &c).map_err(|err| format!("case {case}: {err}"))?;
        for (i, lv) in data.levels.iter().enumerate() {
            let r = c.stacky_points[i] as usize;
            ensure(lv[r] == lv[0] - 1, || format!("case {case}: level {r} is {} with level 0 {}", lv[r], lv[0]))?;
        }
        let back = g_d_line(&data, &c).map_err(|err| format!("case {case}: {err}"))?;
        ensure(back == l.normalize(&c).unwrap(), || format!("case {case}: {back} != normalized {l}"))?;
    }
    Ok("300 line bundles".into())
}

fn c8() -> Outcome {
    let mut rng = rng(8);
    for case in 0..300 {
        let c = if rng.gen_bool(0.5) { paired_p1(&mut rng) } else { stacky_p1(&mut rng) };
        let e = GeneratingSheaf::balanced(&c);
        let f = polystable(&mut rng, &c, 5);
        let mtilde = find_mtilde(&e, &c).map_err(|err| format!("case {case}: {err}"))?;
        let b = slope_bound_check(&f, &e, &c, mtilde).map_err(|err| format!("case {case}: {err}"))?;
        ensure(b.holds, || format!("case {case}: {} > {}", b.lhs, b.rhs))?;
    }
    Ok("300 semistable sheaves".into())
}

fn c9() -> Outcome {
    let mut rng = rng(9);
    let (mut zero, mut positive) = (0, 0);
    for case in 0..300 {
        let c = if rng.gen_bool(0.2) {
            StackyCurve::new(0, rng.gen_range(1..=3), vec![]).unwrap()
        } else {
            StackyCurve::new(0, rng.gen_range(1..=2), vec![rng.gen_range(2..=3)]).unwrap()
        };
        let e = GeneratingSheaf::balanced(&c);
        let l = OrbiLineBundle::new(
            rng.gen_range(-40..=20),
            c.stacky_points.iter().map(|&r| rng.gen_range(0..r as i64)).collect(),
        );
        let f = DecomposableSheaf::from_lines(vec![l]);
        let mu = mu_hat_max(&f, &e, &c).map_err(|err| err.to_string())?;
        let r = modified_hilbert(&f, &e, &c).and_then(|p| p.top_alpha()).map_err(|err| err.to_string())?;
        let r = r.to_i64().unwrap() as u64;
        let bound = langer_h0_bound(&mu, r, 1);
        let h0 = lepotier_counts(&f, &e, &c, 0).map_err(|err| err.to_string())?.h0;
        ensure(bound >= h0, || format!("case {case}: bound {bound} < h0 {h0}"))?;
        let below = mu < Rational::from(1 - (r * r) as i64);
        ensure(below == bound.is_zero(), || format!("case {case}: zero branch mismatch at mu {mu}, r {r}"))?;
        if below {
            zero += 1;
        } else {
            positive += 1;
        }
    }
    ensure(zero > 20 && positive > 20, || format!("branches hit {zero}/{positive} times"))?;
    Ok(format!("300 line bundles, zero branch {zero} times"))
}

fn c10() -> Outcome {
    let b = |x: i64| BigInt::from(x);
    ensure(kleiman_poly(-1, &[]).unwrap() == b(0), || "P_-1 != 0".into())?;
    for x0 in 0..=10 {
        // P_0(x0) = P_-1 + x0 * binom(P_-1 - 1 + 0, 0) = 0 + x0 * 1
        let oracle = x0;
        ensure(kleiman_poly(0, &[b(x0)]).unwrap() == b(oracle), || format!("P_0({x0})"))?;
    }
    for x0 in 0..10 {
        for x1 in 0..10 {
            // P_1(x0, x1) = P_0(x1) + x0 * binom(P_0(x1) - 1, 0) + x1 * binom(P_0(x1), 1)
            let p0 = x1;
            let oracle = p0 + x0 + x1 * p0;
            ensure(kleiman_poly(1, &[b(x0), b(x1)]).unwrap() == b(oracle), || format!("P_1({x0},{x1})"))?;
        }
    }
    Ok("P_-1, 11 values of P_0, 10x10 grid of P_1".into())
}

fn random_weights(rng: &mut ChaCha8Rng, zero: bool) -> WeightDecomposition {
    let entries = (0..rng.gen_range(1..6))
        .map(|_| WeightEntry {
            weight: if zero { 0 } else { rng.gen_range(-5..=5) },
            dim: rng.gen_range(1..4),
            hilbert: QPoly::from_ints(&[rng.gen_range(-3..8), rng.gen_range(0..4)]),
        })
        .collect();
    WeightDecomposition::new(entries).unwrap()
}

fn c11() -> Outcome {
    let mut rng = rng(11);
    for _ in 0..100 {
        let l = rng.gen_range(-10..30);
        ensure(hm_weight(&random_weights(&mut rng, true), l).is_zero(), || "nonzero weight".into())?;
        let (a, b) = (random_weights(&mut rng, false), random_weights(&mut rng, false));
        ensure(hm_weight(&a.concat(&b), l) == hm_weight(&a, l) + hm_weight(&b, l), || "not additive".into())?;
    }
    let p = QPoly::from_ints(&[2, 2]);
    let pair = [SubspacePair { dim: 1, hilbert: QPoly::from_ints(&[1, 1]) }];
    for l in 0..=20 {
        ensure(git_semistable_check(2, &p, &pair, l, false).unwrap(), || format!("non-strict fails at l={l}"))?;
        ensure(!git_semistable_check(2, &p, &pair, l, true).unwrap(), || format!("strict passes at l={l}"))?;
    }
    ensure(!validation_injectivity(&[SubspacePair { dim: 1, hilbert: QPoly::zero() }]), || "(1, 0) accepted".into())?;
    Ok("weights, boundary pair on l = 0..=20, injectivity".into())
}

fn random_gerbe(rng: &mut ChaCha8Rng) -> GerbeSheaf {
    let a = rng.gen_range(1..=5u64);
    let base = random_curve(rng, 2, 1, 3, 2);
    let mut twists: Vec<i64> = (0..a as i64).map(|t| t + a as i64 * rng.gen_range(-1..=1)).collect();
    for _ in 0..rng.gen_range(0..3) {
        twists.push(rng.gen_range(-6..6));
    }
    twists.shuffle(rng);
    let mut components = std::collections::BTreeMap::new();
    for chi in 0..a {
        if rng.gen_bool(0.6) {
            let f = if rng.gen_bool(0.4) {
                polystable(rng, &base, 2)
            } else {
                DecomposableSheaf::from_lines((0..rng.gen_range(1..=2)).map(|_| random_line(rng, &base)).collect())
            };
            components.insert(chi, f);
        }
    }
    let mut g =
        GerbeSheaf { band_order: a, base, base_generating: None, twists: TwistList::new(twists).unwrap(), components };
    if g.components.is_empty() {
        g.components.insert(0, DecomposableSheaf::from_lines(vec![OrbiLineBundle::structure_sheaf(&g.base)]));
    }
    g
}

fn c12() -> Outcome {
    let mut rng = rng(12);
    let mut verdicts = [0usize; 3];
    for case in 0..200 {
        let f = random_gerbe(&mut rng);
        ensure(poly_split_check(&f).map_err(|err| err.to_string())?, || format!("case {case}: split check failed"))?;
        let sum: QPoly = f.split().unwrap().iter().map(|s| &s.hilbert).sum();
        let lattice = build_gerbe_lattice(&f).map_err(|err| format!("case {case}: {err}"))?;
        ensure(&sum == lattice.hilbert(lattice.top()), || format!("case {case}: sum differs from lattice total"))?;
        let verdict = semistable_gerbe(&f).map_err(|err| format!("case {case}: {err}"))?;
        let engine = lattice.stability().map_err(|err| format!("case {case}: {err}"))?;
        ensure(verdict == engine, || format!("case {case}: {verdict} but engine says {engine}"))?;
        verdicts[verdict as usize] += 1;
        let label = f.component_label().unwrap();
        for s in 0..f.band_order as i64 {
            let g = f.twist(s);
            ensure(semistable_gerbe(&g).unwrap() == verdict, || format!("case {case}: twist {s} changes verdict"))?;
            let mut rotated = label.clone();
            rotated.rotate_right(s as usize);
            ensure(g.component_label().unwrap() == rotated, || format!("case {case}: twist {s} label"))?;
        }
    }
    ensure(verdicts.iter().all(|&n| n > 5), || format!("verdict counts {verdicts:?}"))?;
    Ok(format!("200 gerbe sheaves, verdicts stable/strict/unstable = {verdicts:?}"))
}

fn c13() -> Outcome {
    let mut rng = rng(13);
    for case in 0..100 {
        let c = if rng.gen_bool(0.5) { paired_p1(&mut rng) } else { stacky_p1(&mut rng) };
        let e = GeneratingSheaf::balanced(&c);
        let f = polystable(&mut rng, &c, 4);
        let reg = lepotier_regularity(&f, &e, &c).map_err(|err| err.to_string())?;
        for m in reg..reg + 6 {
            let counts = lepotier_counts(&f, &e, &c, m).map_err(|err| err.to_string())?;
            ensure(counts.h0 == counts.rp, || format!("case {case}: m={m} h0 {} rp {}", counts.h0, counts.rp))?;
        }
        // an unstable sum: raise one summand's degree
        let l = f.lines[0].clone();
        let sub = DecomposableSheaf::from_lines(vec![l.twist_coarse(1)]);
        let unstable = DecomposableSheaf::from_lines(vec![l.twist_coarse(1), l.clone()]);
        ensure(stackstab::rootcurve::semistable(&unstable, &e, &c).unwrap() == Stability::Unstable, || {
            format!("case {case}: expected unstable")
        })?;
        let reg = lepotier_regularity(&unstable, &e, &c).unwrap();
        for m in reg..reg + 6 {
            let counts = lepotier_sub_counts(&sub, &unstable, &e, &c, m).map_err(|err| err.to_string())?;
            ensure(counts.h0 > counts.rp, || format!("case {case}: m={m} destabilizer passes"))?;
        }
    }
    Ok("100 semistable and 100 unstable sheaves".into())
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "point table, minimal preset", limit: secs(1), run: c1 },
        Criterion { id: 2, name: "point table, separating preset", limit: secs(1), run: c2 },
        Criterion { id: 3, name: "additivity of modified Hilbert polynomials", limit: secs(10), run: c3 },
        Criterion { id: 4, name: "degree identity for balanced generating sheaves", limit: secs(10), run: c4 },
        Criterion { id: 5, name: "HN filtration matches slope grouping", limit: secs(30), run: c5 },
        Criterion { id: 6, name: "JH multiset seed invariance, S-equivalence", limit: secs(30), run: c6 },
        Criterion { id: 7, name: "parabolic round trip", limit: secs(5), run: c7 },
        Criterion { id: 8, name: "maximal slope bound", limit: secs(10), run: c8 },
        Criterion { id: 9, name: "section bound dominates h0", limit: secs(5), run: c9 },
        Criterion { id: 10, name: "Kleiman recursion", limit: secs(1), run: c10 },
        Criterion { id: 11, name: "Hilbert-Mumford weights and GIT checks", limit: secs(1), run: c11 },
        Criterion { id: 12, name: "gerbe splitting and twist invariance", limit: secs(10), run: c12 },
        Criterion { id: 13, name: "Le Potier counts", limit: secs(5), run: c13 },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.limit => Err(format!("{detail}, but took {elapsed:?} (limit {:?})", c.limit)),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {} ({detail}; {:.0?})", c.id, c.name, elapsed),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {}: {why}", c.id, c.name);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
