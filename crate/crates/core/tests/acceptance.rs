//! Ship gate: one PASS/FAIL line per acceptance criterion. Run with
//! `cargo test -p clv-core --test acceptance -- --nocapture` to see the lines.

mod common;

use std::collections::BTreeSet;

use clv_core::classifier::{admitted_pairs, canonical_descriptor, classify, mutations, Case, IsoClass, TripleDescriptor};
use clv_core::curve_enum::{
    enumerate_all_degrees, enumerate_curve_classes, enumerate_tuples, enumerate_tuples_cuspidal, hirzebruch_degree_genus,
    solve_blowup_bidegrees, HirzebruchModel, Tuple,
};
use clv_core::homology::{coker_theta, coker_xi_r3, feasible_intersections, minimality_dichotomy, PlaneCubicKind};
use clv_core::surface_models::{default_catalog, verify_catalog, Catalog};
use clv_core::{run_all_lemmas, DivClass, FgAbGroup};
use common::*;
use proptest::test_runner::{Config, TestRunner};

struct Gate {
    results: Vec<(u32, bool, String)>,
}

impl Gate {
    fn record(&mut self, n: u32, title: &str, outcome: Result<String, String>) {
        let (pass, note) = match outcome {
            Ok(note) => (true, note),
            Err(why) => (false, why),
        };
        println!("criterion {n:>2} {}: {title} ({note})", if pass { "PASS" } else { "FAIL" });
        self.results.push((n, pass, note));
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg.into()) }
}

fn class_set(cat: &Catalog, id: &str, names: &[String]) -> BTreeSet<DivClass> {
    let lat = &cat.get(id).unwrap().lattice;
    names.iter().map(|n| lat.parse_class(n).unwrap()).collect()
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn curve_lemmas(cat: &Catalog) -> Result<String, String> {
    let all = |id: &str| -> BTreeSet<DivClass> {
        enumerate_all_degrees(cat, id).unwrap().expect("bounded surface").classes.into_iter().collect()
    };
    ensure(all("G1") == class_set(cat, "G1", &names(&["E6", "H-E1"])), "G1 list differs")?;
    ensure(
        all("G2") == class_set(cat, "G2", &names(&["E4", "E6", "H-E1", "H-E5", "2H-E1-E2-E5"])),
        "G2 list differs",
    )?;
    let mut g4 = names(&["E4", "H-E1"]);
    for i in [5, 6] {
        for t in [
            "E{i}",
            "H-E{i}",
            "2H-E1-E2-E{i}",
            "3H-E1-E2-E3-E4-2E{i}",
            "3H-E1-E2-E3-2E{i}",
            "4H-E1-E2-E3-E4-3E{i}",
            "6H-2E1-2E2-2E3-2E4-4E{i}",
        ] {
            g4.push(t.replace("{i}", &i.to_string()));
        }
    }
    ensure(all("G4") == class_set(cat, "G4", &g4), "G4 list differs")?;
    let mut g5: BTreeSet<DivClass> = BTreeSet::new();
    for n in 1..=2 {
        g5.extend(enumerate_curve_classes(cat, "G5", n).unwrap().classes);
    }
    let want = class_set(cat, "G5", &names(&["E5", "E6", "H-E1-E6", "H-E1", "H-E6", "3H-E1-E2-E3-E4-E5-2E6"]));
    ensure(g5 == want, "G5 list differs")?;
    Ok("G1 2, G2 5, G4 16, G5 6 classes, exact".into())
}

fn t(n: i64, a: i64, b: [i64; 6]) -> Tuple {
    Tuple { n, a, b }
}

fn tuples() -> Result<String, String> {
    let mut got: BTreeSet<Tuple> = enumerate_tuples(1, 0).unwrap().into_iter().collect();
    got.extend(enumerate_tuples(2, 0).unwrap());
    let want = BTreeSet::from([
        t(1, 0, [0, 0, 0, 0, 0, -1]),
        t(1, 1, [1, 1, 0, 0, 0, 0]),
        t(1, 2, [1, 1, 1, 1, 1, 0]),
        t(2, 1, [1, 0, 0, 0, 0, 0]),
        t(2, 2, [1, 1, 1, 1, 0, 0]),
        t(2, 3, [2, 1, 1, 1, 1, 1]),
    ]);
    ensure(got == want, format!("n = 1, 2 gave {got:?}"))?;
    let cusp: BTreeSet<Tuple> = enumerate_tuples_cuspidal().into_iter().collect();
    let want = BTreeSet::from([
        t(3, 1, [0; 6]),
        t(3, 2, [1, 1, 1, 0, 0, 0]),
        t(3, 3, [2, 1, 1, 1, 1, 0]),
        t(3, 4, [2, 2, 2, 1, 1, 1]),
        t(3, 5, [2; 6]),
    ]);
    ensure(cusp == want, format!("cuspidal gave {cusp:?}"))?;
    Ok("6 + 5 tuples".into())
}

fn cokernels(cat: &Catalog) -> Result<String, String> {
    let lat = &cat.get("G1").unwrap().lattice;
    let theta = |id: &str, comps: &[(&str, i64)]| {
        let comps: Vec<_> = comps.iter().map(|&(c, m)| (lat.parse_class(c).unwrap(), m)).collect();
        coker_theta(cat, id, &comps).unwrap().coker
    };
    let z = |free, tors: &[u64]| FgAbGroup::from_cyclic(free, tors);
    let checks = [
        (theta("G1", &[("H", 1)]), z(0, &[3])),
        (theta("G4", &[("E4", 1), ("H-E1", 1)]), z(1, &[])),
        (theta("G4", &[("E5", 1), ("H-E5", 1)]), z(0, &[3])),
        (theta("G5", &[("H-E1-E6", 1), ("H-E1", 1)]), z(0, &[2])),
        (theta("G5", &[("H-E1-E6", 2), ("E6", 1)]), z(0, &[2])),
        (
            coker_xi_r3(&[(DivClass::hirzebruch(1, 0), 1), (DivClass::hirzebruch(0, 1), 2)]).unwrap().coker,
            z(1, &[2]),
        ),
        (
            coker_xi_r3(&[(DivClass::hirzebruch(0, 1), 1), (DivClass::hirzebruch(1, 1), 1)]).unwrap().coker,
            z(1, &[2]),
        ),
    ];
    for (i, (got, want)) in checks.iter().enumerate() {
        ensure(got == want, format!("cokernel {} is {got}, expected {want}", i + 1))?;
    }
    Ok("7 of 7 exact".into())
}

fn catalog(cat: &Catalog) -> Result<String, String> {
    let rep = verify_catalog(cat);
    let normal: Vec<_> = rep.surfaces.iter().filter(|s| s.id.starts_with('G')).collect();
    let lines: usize = normal.iter().map(|s| s.lines.checked).sum();
    let lines_ok: usize = normal.iter().map(|s| s.lines.passed).sum();
    let sing: usize = normal.iter().map(|s| s.singular_points.checked).sum();
    let sing_ok: usize = normal.iter().map(|s| s.singular_points.passed).sum();
    ensure(lines == 75 && lines_ok == 75, format!("{lines_ok}/{lines} line checks"))?;
    // the singular point lists of G1..G15 have 30 entries; all must pass
    ensure(sing == 30 && sing_ok == 30, format!("{sing_ok}/{sing} singular-point checks"))?;
    ensure(rep.surfaces.iter().all(|s| s.neg2_classes.all_passed()), "(-2)-class check failed")?;
    let neg2: usize = rep.surfaces.iter().map(|s| s.neg2_classes.checked).sum();
    ensure(rep.passed(), format!("catalog failure {:?}", rep.first_failure()))?;
    Ok(format!("75/75 lines, {sing_ok}/{sing} singular points (criterion text says 24), {neg2} (-2)-classes"))
}

fn bidegrees() -> Result<String, String> {
    let got = solve_blowup_bidegrees();
    ensure(got == vec![(1, 0, 3, 1), (3, 1, 1, 0)], format!("{got:?}"))?;
    Ok("{(1,0,3,1), (3,1,1,0)}".into())
}

fn euler_minimality() -> Result<String, String> {
    let mut checked = 0;
    for n1 in 0..=6 {
        for n2 in 0..=6 {
            for n12 in 0..=n1.min(n2) {
                let Ok(m) = minimality_dichotomy(n1, n2, n12) else {
                    ensure(n1 == 0, format!("({n1},{n2},{n12}) rejected"))?;
                    continue;
                };
                let profile = matches!((n1, n2, n12), (1, 0, 0) | (1, 1, 1));
                ensure(m.is_minimal == profile && m.value >= 1, format!("({n1},{n2},{n12})"))?;
                checked += 1;
            }
        }
    }
    use PlaneCubicKind::*;
    let rows = feasible_intersections(1).map_err(|e| e.to_string())?;
    ensure(
        rows == vec![(Cuspidal, 1), (TripleLine, 1), (ConicTangentLine, 2), (LinePlusDoubleLine, 2), (ThreeConcurrentLines, 3)],
        format!("B2 = 1 rows {rows:?}"),
    )?;
    ensure(feasible_intersections(3).map_err(|e| e.to_string())? == vec![(ThreeConcurrentLines, 1)], "B2 = 3 rows")?;
    ensure(feasible_intersections(4).is_err(), "B2 = 4 accepted")?;
    Ok(format!("{checked} valid triples, 5 feasible rows"))
}

fn degree_genus() -> Result<String, String> {
    let genera = |m, n| -> Vec<i64> { hirzebruch_degree_genus(m, n).unwrap().iter().map(|r| r.genus).collect() };
    let cone = HirzebruchModel::EllipticCone;
    ensure(genera(cone, 2).is_empty(), "elliptic cone degree 2 feasible")?;
    ensure(genera(cone, 3) == [1] && genera(cone, 4) == [1], "elliptic cone genus at degree 3/4")?;
    ensure((5..=8).all(|n| genera(cone, n).iter().all(|&g| g >= 4)), "elliptic cone genus at degree 5..8")?;
    let f3 = HirzebruchModel::R12;
    ensure((1..=4).all(|n| genera(f3, n).iter().all(|&g| g == 0)), "F3 genus at degree <= 4")?;
    ensure((5..=8).all(|n| genera(f3, n).iter().all(|&g| g >= 2)), "F3 genus at degree 5..8")?;
    let f1 = HirzebruchModel::R34;
    for n in 1..=8 {
        let rows = hirzebruch_degree_genus(f1, n).unwrap();
        ensure(rows.iter().all(|r| r.class.coeffs[0] + r.class.coeffs[1] == n), format!("F1 degree {n}"))?;
    }
    let lines: BTreeSet<DivClass> = hirzebruch_degree_genus(f1, 1).unwrap().into_iter().map(|r| r.class).collect();
    ensure(lines == BTreeSet::from([DivClass::hirzebruch(1, 0), DivClass::hirzebruch(0, 1)]), "F1 degree-1 classes")?;
    Ok("three ruled models, degrees 1..8".into())
}

fn classifier_round_trip(cat: &Catalog) -> Result<String, String> {
    let pairs = admitted_pairs();
    ensure(pairs.len() == 12, format!("{} admitted pairs", pairs.len()))?;
    let mut rejected = 0;
    for r in &pairs {
        let d = canonical_descriptor(cat, r).map_err(|e| e.to_string())?;
        let out = classify(cat, &d).map_err(|e| e.to_string())?;
        ensure(out.case == r.case && out.iso_class == IsoClass::A3, format!("{r} gave {}: {:?}", out.case, out.violated()))?;
        for (what, m) in mutations(cat, r, &d).map_err(|e| e.to_string())? {
            let out = classify(cat, &m).map_err(|e| e.to_string())?;
            ensure(out.case == Case::Reject, format!("{r} accepted with mutated {what}"))?;
            ensure(!out.violated().is_empty(), format!("{r} rejected without a cited predicate"))?;
            rejected += 1;
        }
    }
    let mut ex = TripleDescriptor::rational("R1", "z = 0", 1, 1);
    ex.curve_line = Some(["x - y".into(), "x + z".into()]);
    let out = classify(cat, &ex).map_err(|e| e.to_string())?;
    ensure(out.case == Case::F && out.iso_class == IsoClass::A1xW32, "line example is not case f")?;
    Ok(format!("12 accepted, {rejected} mutations rejected, example gives f / A1xW32"))
}

fn properties() -> Result<String, String> {
    let run = |cases: u32| TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    run(200)
        .run(&small_matrix(), |(rows, cols)| check_snf(&rows, cols))
        .map_err(|e| format!("SNF: {e}"))?;
    run(1000)
        .run(&(class(), class(), class(), -5i64..=5), |(a, b, c, k)| check_pairing(&a, &b, &c, k))
        .map_err(|e| format!("pairing: {e}"))?;
    run(200)
        .run(&(cubic(), cubic(), cubic()), |(p, q, r)| check_ring(&p, &q, &r))
        .map_err(|e| format!("polynomials: {e}"))?;
    Ok("200 SNF, 1000 pairing, 200 cubic cases".into())
}

fn replay() -> Result<String, String> {
    let rep = run_all_lemmas();
    let failed: Vec<_> = rep.entries.iter().filter(|e| !e.pass).map(|e| e.id.clone()).collect();
    ensure(rep.exit_code() == 0, format!("failed entries: {failed:?}"))?;
    Ok(format!("{} entries, exit status 0", rep.entries.len()))
}

#[test]
fn acceptance_criteria() {
    let cat = default_catalog();
    let mut gate = Gate { results: Vec::new() };
    gate.record(1, "curve-class lists", curve_lemmas(&cat));
    gate.record(2, "degree/genus tuples", tuples());
    gate.record(3, "cokernel ledger", cokernels(&cat));
    gate.record(4, "catalog verification", catalog(&cat));
    gate.record(5, "bidegree gate", bidegrees());
    gate.record(6, "Euler budget and minimality", euler_minimality());
    gate.record(7, "ruled degree/genus tables", degree_genus());
    gate.record(8, "classifier round trip", classifier_round_trip(&cat));
    gate.record(9, "property suites", properties());
    gate.record(10, "lemma replay exit status", replay());
    let failed: Vec<u32> = gate.results.iter().filter(|r| !r.1).map(|r| r.0).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
