//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

mod common;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use grho::certificate::{first_citation, rehash, replay, Certificate, FactKind};
use grho::cocycle::{
    classify, delta, multiplicative_cochain, random_normalized_cocycle, Cochain, ExtensionGroup, GroupOracle,
    IntegerRange, TableGroup,
};
use grho::dyadic::{format_point, Dyadic, Point};
use grho::element::{GElement, Grho, Token};
use grho::error::CertificateError;
use grho::labelling::{verify_quasi_periodicity, HalfPos, Labelling, Letter};
use grho::plmap::PlHomeo;
use grho::structure::{cellular_decompose, phi_embed};
use grho::witness::{fixtures, run_pipeline, verify_claims, WitnessBundle};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    let e = t.elapsed();
    check(e < limit, || format!("took {e:?}, limit {limit:?}"))
}

fn criterion_1(g: &Grho) -> Outcome {
    let t = Instant::now();
    let lab = g.labelling();
    let level = 6;
    let window = lab.window(level);
    let n = window.len() as i64 / 2;
    for (i, l) in window.iter().enumerate() {
        let pos = i as i64 - n;
        check(l.is_a_type() == (pos.rem_euclid(2) == 0), || format!("parity fails at {pos}"))?;
        check(lab.letter(HalfPos(pos)) == *l, || format!("window disagrees with letter({pos})"))?;
    }
    let report = verify_quasi_periodicity(lab, 17, level);
    // every stretch of gap(l) letters holds every factor of length l
    for (&l, &gap) in &report.recurrence_gaps {
        let all: HashSet<&[Letter]> = window.windows(l).collect();
        let mut counts: HashMap<&[Letter], usize> = HashMap::new();
        let per = gap + 1 - l;
        for f in window.windows(l).take(per) {
            *counts.entry(f).or_default() += 1;
        }
        let factors = window.windows(l).collect::<Vec<_>>();
        let mut start = 0;
        loop {
            check(counts.len() == all.len(), || format!("stretch at {start} misses a factor of length {l}"))?;
            if start + per >= factors.len() {
                break;
            }
            let out = factors[start];
            let c = counts.get_mut(out).unwrap();
            *c -= 1;
            if *c == 0 {
                counts.remove(out);
            }
            *counts.entry(factors[start + per]).or_default() += 1;
            start += 1;
        }
        check(gap <= window.len(), || format!("gap({l}) = {gap} exceeds the window"))?;
    }
    for l in 1..=17 {
        let all: HashSet<Vec<Letter>> = window.windows(l).map(<[Letter]>::to_vec).collect();
        for f in &all {
            let inv: Vec<Letter> = f.iter().rev().map(|x| x.inverse()).collect();
            check(all.contains(&inv), || format!("inverse of a length-{l} factor is missing"))?;
        }
    }
    check(report.inverse_closure, || "library reports no inverse closure".into())?;
    let smallest = (1..=128).find(|&p| window.iter().zip(&window[p..]).all(|(a, b)| a == b));
    check(smallest.is_none(), || format!("period {smallest:?}"))?;
    check(report.min_period.is_none(), || format!("library reports period {:?}", report.min_period))?;
    within(t, Duration::from_secs(10))?;
    Ok(format!(
        "window {} letters, gap(17) = {}, {:?}",
        window.len(),
        report.recurrence_gaps[&17],
        t.elapsed()
    ))
}

fn criterion_2(g: &Grho, rng: &mut ChaCha8Rng) -> Outcome {
    let t = Instant::now();
    let points: Vec<Dyadic> = (0..1000).map(|_| random_dyadic(rng, 64)).collect();
    let mut evaluations = 0;
    for _ in 0..50 {
        let len = rng.gen_range(0..=6);
        let word = Grho::random_word(rng, len);
        let e = g.word_to_element(&word).map_err(|e| e.to_string())?;
        for x in &points {
            let table = g.evaluate(&e, x).map_err(|e| e.to_string())?;
            let oracle = word.iter().fold(x.clone(), |y, t| generator_oracle(g, *t, &y));
            check(table == oracle, || {
                format!("{} at {x}: table {table}, oracle {oracle}", grho::element::format_gen_word(&word))
            })?;
            evaluations += 1;
        }
    }
    within(t, Duration::from_secs(30))?;
    Ok(format!("{evaluations} evaluations agree, {:?}", t.elapsed()))
}

fn element_ok(g: &Grho, e: &GElement) -> Result<(), String> {
    let r = g.membership_check(e).map_err(|e| e.to_string())?;
    check(r.ok, || format!("membership: {:?}", r.failures))?;
    for (w, m) in e.table() {
        check(slopes_are_powers_of_two(m), || format!("slope at {w}"))?;
        if let Some(mi) = e.entry(&w.formal_inverse()) {
            check(is_flip_of(m, mi), || format!("flip rule at {w}"))?;
        }
    }
    for n in -64..64 {
        let a = g.unit_on(e, n).map_err(|e| e.to_string())?;
        let b = g.unit_on(e, n + 1).map_err(|e| e.to_string())?;
        check(a.domain() == grho::element::unit_interval(n), || format!("domain at unit {n}"))?;
        check(a.range().hi == b.range().lo, || format!("jump between units {n} and {}", n + 1))?;
    }
    Ok(())
}

fn criterion_3(g: &Grho, rng: &mut ChaCha8Rng) -> Outcome {
    for t in Token::all() {
        element_ok(g, g.generator(t)).map_err(|e| format!("{t}: {e}"))?;
    }
    for _ in 0..100 {
        let len = rng.gen_range(1..=8);
        let word = Grho::random_word(rng, len);
        let e = g.word_to_element(&word).map_err(|e| e.to_string())?;
        element_ok(g, &e).map_err(|e| format!("{}: {e}", grho::element::format_gen_word(&word)))?;
    }
    for _ in 0..20 {
        let l = rng.gen_range(1..=3);
        let occ = g.labelling().occurring_contexts(l).map_err(|e| e.to_string())?;
        let w = occ[rng.gen_range(0..occ.len())].0.clone();
        let e = g.special(&w, l, &random_fprime(rng)).map_err(|e| e.to_string())?;
        element_ok(g, &e).map_err(|e| format!("special at {w}: {e}"))?;
    }
    for _ in 0..100 {
        let len = rng.gen_range(0..=8);
        let word = Grho::random_word(rng, len);
        let e = g.word_to_element(&word).map_err(|e| e.to_string())?;
        let p = g.find_fixed_point(&e, 64).map_err(|e| e.to_string())?;
        check(g.evaluate_point(&e, &p).map_err(|e| e.to_string())? == p, || {
            format!("{} moves {}", grho::element::format_gen_word(&word), format_point(&p))
        })?;
    }
    Ok("12 generators, 100 products, 20 special elements, 100 fixed points".into())
}

fn random_pair_element(g: &Grho, rng: &mut ChaCha8Rng) -> GElement {
    let a = random_integer_fixing(g, rng);
    if rng.gen_bool(0.3) {
        let b = random_integer_fixing(g, rng);
        g.then_compose(&a, &b).unwrap()
    } else {
        a
    }
}

fn criterion_4(g: &Grho, rng: &mut ChaCha8Rng) -> Outcome {
    let t = Instant::now();
    let mut classes = 0;
    for trial in 0..20 {
        let f = random_pair_element(g, rng);
        let h = random_pair_element(g, rng);
        let err = |e: grho::error::StructureError| format!("pair {trial}: {e}");
        let d = cellular_decompose(g, &f, &h, 6).map_err(err)?;
        let r = d.report(g, &f, &h).map_err(err)?;
        check(r.recomposition_f && r.recomposition_g, || format!("pair {trial}: recomposition"))?;
        classes += d.cells.classes.len();
        let comps: Vec<(usize, &GElement)> = d
            .f_components
            .iter()
            .enumerate()
            .chain(d.g_components.iter().enumerate())
            .filter(|(_, c)| !c.is_identity())
            .collect();
        for (x, (i, a)) in comps.iter().enumerate() {
            for (j, b) in &comps[x + 1..] {
                if i == j {
                    continue;
                }
                let ab = g.then_compose(a, b).unwrap();
                let ba = g.then_compose(b, a).unwrap();
                check(g.equals(&ab, &ba).unwrap(), || format!("pair {trial}: classes {i} and {j} do not commute"))?;
            }
        }
        let back_f = phi_embed(g, &d.cells, &d.f_coords).map_err(err)?;
        let back_h = phi_embed(g, &d.cells, &d.g_coords).map_err(err)?;
        check(g.equals(&back_f, &f).unwrap() && g.equals(&back_h, &h).unwrap(), || {
            format!("pair {trial}: coordinates do not embed back")
        })?;
        let u: Vec<PlHomeo> = (0..d.cells.classes.len()).map(|_| random_fprime(rng)).collect();
        let v: Vec<PlHomeo> = (0..d.cells.classes.len()).map(|_| random_fprime(rng)).collect();
        let uv: Vec<PlHomeo> = u.iter().zip(&v).map(|(a, b)| a.then(b).unwrap()).collect();
        let lhs = phi_embed(g, &d.cells, &uv).map_err(err)?;
        let rhs = g
            .then_compose(&phi_embed(g, &d.cells, &u).map_err(err)?, &phi_embed(g, &d.cells, &v).map_err(err)?)
            .unwrap();
        check(g.equals(&lhs, &rhs).unwrap(), || format!("pair {trial}: embedding is not multiplicative"))?;
    }
    Ok(format!("20 pairs, {classes} classes in total, {:?}", t.elapsed()))
}

/// A mutation of the fact's content that makes it false.
fn falsify(g: &Grho, cert: &Certificate, b: &WitnessBundle, kind: &FactKind) -> Option<FactKind> {
    let ev = b.evidence();
    let product = |name: &str| {
        let parts: Vec<&GElement> = cert.elements[name].iter().map(|p| &ev[p]).collect();
        g.compose_all(&parts).unwrap()
    };
    match kind {
        FactKind::FixpointSubgroup { members, .. } => {
            let prods: Vec<GElement> = members.iter().map(|m| product(m)).collect();
            for n in -16i64..16 {
                for j in 1..64 {
                    let p = Point::new((64 * n + j).into(), 64.into());
                    if prods.iter().any(|e| g.evaluate_point(e, &p).unwrap() != p) {
                        return Some(FactKind::FixpointSubgroup {
                            members: members.clone(),
                            point: format_point(&p),
                        });
                    }
                }
            }
            None
        }
        FactKind::AbelianPair { x, y } => {
            let commute = |a: &str, b: &str| {
                let (ea, eb) = (product(a), product(b));
                g.equals(&g.then_compose(&ea, &eb).unwrap(), &g.then_compose(&eb, &ea).unwrap()).unwrap()
            };
            let names = cert.elements.keys();
            names
                .clone()
                .find(|z| !commute(x, z))
                .map(|z| FactKind::AbelianPair { x: x.clone(), y: z.clone() })
                .or_else(|| {
                    names
                        .clone()
                        .find(|z| !commute(z, y))
                        .map(|z| FactKind::AbelianPair { x: z.clone(), y: y.clone() })
                })
        }
        FactKind::GroupIdentity { lhs, .. } => {
            let el = product(&lhs[0]);
            cert.elements.keys().find_map(|y| {
                (!g.equals(&el, &product(y)).unwrap()).then(|| FactKind::GroupIdentity {
                    lhs: lhs.clone(),
                    rhs: vec![y.clone()],
                })
            })
        }
        FactKind::CyclicPower { .. } => None,
    }
}

fn rejected_at(
    g: &Grho,
    cert: &Certificate,
    ev: &BTreeMap<String, GElement>,
    id: usize,
    what: &str,
) -> Result<(), String> {
    let want = first_citation(cert, id);
    match replay(g, cert, ev) {
        Err(CertificateError::Fact { step, fact, .. }) if step == want && fact == id => Ok(()),
        other => Err(format!("{what} on fact {id}: expected rejection at step {want}, got {other:?}")),
    }
}

fn criterion_5(g: &Grho) -> Outcome {
    let mut lines = Vec::new();
    let all = fixtures::all(g).map_err(|e| e.to_string())?;
    for (name, triple, cfg) in &all {
        let t = Instant::now();
        let out = run_pipeline(g, triple, cfg).map_err(|e| format!("{name}: {e}"))?;
        check(out.claims.ok() && out.replay.accepted, || format!("{name}: claims or replay"))?;
        within(t, Duration::from_secs(60)).map_err(|e| format!("{name}: {e}"))?;
        let ev = out.bundle.evidence();
        for fact in &out.certificate.facts {
            let mut tampered = out.certificate.clone();
            let slot = tampered.facts.iter().position(|f| f.id == fact.id).unwrap();
            let h = &mut tampered.facts[slot].evidence;
            let flipped = if h.starts_with('0') { '1' } else { '0' };
            h.replace_range(0..1, &flipped.to_string());
            rejected_at(g, &tampered, &ev, fact.id, "hash tamper").map_err(|e| format!("{name}: {e}"))?;

            let bad = falsify(g, &out.certificate, &out.bundle, &fact.kind)
                .ok_or_else(|| format!("{name}: no false variant of fact {}", fact.id))?;
            let mut corrupt = out.certificate.clone();
            corrupt.facts[slot].kind = bad;
            rehash(&mut corrupt, fact.id, &ev).map_err(|e| e.to_string())?;
            rejected_at(g, &corrupt, &ev, fact.id, "semantic corruption").map_err(|e| format!("{name}: {e}"))?;
        }
        lines.push(format!(
            "{name} ok in {:?} ({} facts rejected twice each)",
            t.elapsed(),
            out.certificate.facts.len()
        ));
        if *name == "A1" {
            let mut b = out.bundle.clone();
            b.g[1] = g.special(&b.w, b.l, &fixtures::bump_wide()).map_err(|e| e.to_string())?;
            let r = verify_claims(g, triple, &b).map_err(|e| e.to_string())?;
            check(r.failures().any(|c| c.claim == "5:commutation"), || {
                "widened g2 did not fail 5:commutation".into()
            })?;
        }
    }
    lines.push("widened g2 fails 5:commutation".into());
    Ok(lines.join("; "))
}

fn criterion_6(rng: &mut ChaCha8Rng) -> Outcome {
    let groups = TableGroup::small_groups();
    let mut checked = 0;
    for grp in &groups {
        for degree in 0..=2 {
            let c = Cochain::random(degree, grp.order(), rng);
            let dd = delta(&delta(&c, grp).unwrap(), grp).unwrap();
            check(dd.is_zero(), || format!("δδ != 0 on {} in degree {degree}", grp.name()))?;
            checked += 1;
        }
    }
    for _ in 0..50 {
        let grp = &groups[rng.gen_range(0..groups.len())];
        let w = random_normalized_cocycle(grp, rng);
        let flags = classify(&w, grp).unwrap();
        check(flags.cocycle && flags.normalized, || format!("random cocycle on {} is not normalized", grp.name()))?;
        let ext = ExtensionGroup::new(grp, w.clone()).map_err(|e| e.to_string())?;
        let back = ext.section_to_cocycle(&ext.canonical_section()).map_err(|e| e.to_string())?;
        check(back == w, || format!("round trip on {}", grp.name()))?;
    }
    let z = IntegerRange { radius: 4 };
    let w = multiplicative_cochain(&z);
    let flags = classify(&w, &z).unwrap();
    let witness = flags.homogeneity_witness.clone();
    check(witness == Some(("-4".to_string(), 1, 1)), || format!("witness {witness:?}"))?;
    // the oracle: (-4)(-4) = 16 is the value at the first nonzero power pair
    let m4 = z.index(-4).unwrap();
    check(w.get(&[m4, m4]) == &rational(16, 1), || "ω(-4, -4) != 16".into())?;
    Ok(format!(
        "δδ = 0 on {} groups × 3 degrees ({checked} cases), 50 round trips, witness (-4, 1, 1)",
        groups.len()
    ))
}

fn main() -> ExitCode {
    let g = Grho::with_defaults();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce);
    let results: Vec<(&str, Outcome)> = vec![
        ("labelling", criterion_1(&g)),
        ("evaluation", criterion_2(&g, &mut rng)),
        ("membership", criterion_3(&g, &mut rng)),
        ("decomposition", criterion_4(&g, &mut rng)),
        ("witness", criterion_5(&g)),
        ("cocycle", criterion_6(&mut rng)),
    ];
    let mut failed = false;
    for (i, (name, r)) in results.iter().enumerate() {
        match r {
            Ok(d) => println!("criterion {} {name}: PASS ({d})", i + 1),
            Err(e) => {
                failed = true;
                println!("criterion {} {name}: FAIL ({e})", i + 1);
            }
        }
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
