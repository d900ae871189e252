//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use tirs::convex::{self, ClosureSystem};
use tirs::digraph::{self, Pattern, Verdict};
use tirs::duality::{dual_digraph, mdfips, mdfips_bruteforce, roundtrip_digraph, roundtrip_lattice};
use tirs::enumeration::{enumerate_lattices, enumerate_tirs_digraphs};
use tirs::fixtures;
use tirs::harness;
use tirs::lattice::lattice_isomorphic;
use tirs::properties::{self, Property};
use tirs::Digraph;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Non-loop arcs of `g` by vertex name.
fn named_arcs(g: &Digraph) -> BTreeSet<(String, String)> {
    g.non_loop_arcs().into_iter().map(|(x, y)| (g.name(x), g.name(y))).collect()
}

fn names(g: &Digraph) -> BTreeSet<String> {
    g.vertices().map(|x| g.name(x)).collect()
}

/// A reflexive digraph from named vertices and arcs; `mutual` pairs get an
/// arc in each direction.
fn figure(vertices: &[&str], single: &[(&str, &str)], mutual: &[(&str, &str)]) -> Digraph {
    let idx = |s: &str| vertices.iter().position(|&v| v == s).unwrap();
    let mut arcs = Vec::new();
    for &(x, y) in single {
        arcs.push((idx(x), idx(y)));
    }
    for &(x, y) in mutual {
        arcs.push((idx(x), idx(y)));
        arcs.push((idx(y), idx(x)));
    }
    Digraph::from_arcs(vertices.len(), &arcs)
        .unwrap()
        .with_names(vertices.iter().map(|s| s.to_string()).collect())
}

fn arc_set(pairs: &[(&str, &str)]) -> BTreeSet<(String, String)> {
    pairs.iter().map(|&(x, y)| (x.to_string(), y.to_string())).collect()
}

fn golden_figure_one() -> Outcome {
    let g = dual_digraph(&fixtures::n5());
    ensure(names(&g) == ["ab", "bc", "ca"].map(String::from).into(), || {
        format!("N5 vertices {:?}", names(&g))
    })?;
    ensure(named_arcs(&g) == arc_set(&[("ab", "bc"), ("bc", "ca")]), || {
        format!("N5 arcs {:?}", named_arcs(&g))
    })?;

    let g = dual_digraph(&fixtures::l4());
    let want = arc_set(&[("ab", "dc"), ("ab", "cb"), ("cb", "ab"), ("cb", "ea")]);
    ensure(named_arcs(&g) == want, || format!("L4 arcs {:?}", named_arcs(&g)))?;

    let g = dual_digraph(&fixtures::l4_dual());
    let drawn = figure(
        &["ea", "dc", "de", "cb"],
        &[("ea", "dc"), ("cb", "de")],
        &[("dc", "de")],
    );
    ensure(digraph::digraph_isomorphic(&g, &drawn), || {
        format!("L4D arcs {:?}", named_arcs(&g))
    })?;
    Ok("N5, L4 exact; L4D isomorphic to the drawn digraph".into())
}

fn golden_m3() -> Outcome {
    let m3 = fixtures::m3();
    let g = dual_digraph(&m3);
    ensure(g.vertex_count() == 6, || format!("{} vertices", g.vertex_count()))?;
    let labels = g.labels().unwrap();
    for x in g.vertices() {
        for y in g.vertices() {
            ensure(g.has_arc(x, y) == (labels[x].a != labels[y].b), || {
                format!("arc rule fails at {} -> {}", g.name(x), g.name(y))
            })?;
        }
    }
    let drawn = figure(
        &["ab", "ac", "ba", "bc", "ca", "cb"],
        &[("ab", "bc"), ("bc", "ca"), ("ca", "ab"), ("ac", "cb"), ("cb", "ba"), ("ba", "ac")],
        &[("ab", "ac"), ("ac", "bc"), ("bc", "ba"), ("ba", "ca"), ("ca", "cb"), ("cb", "ab")],
    );
    ensure(digraph::digraph_isomorphic(&g, &drawn), || "not isomorphic to the drawn digraph".into())?;
    ensure(named_arcs(&g) == named_arcs(&drawn), || "named arcs differ from the drawing".into())?;
    Ok("6 vertices, xy -> zw iff x != w, matches drawing".into())
}

fn golden_l3_dual() -> Outcome {
    let l = fixtures::l3_dual();
    let g = dual_digraph(&l);
    ensure(names(&g) == ["ac", "bc", "ab", "ba", "cd"].map(String::from).into(), || {
        format!("vertices {:?}", names(&g))
    })?;
    let drawn = figure(
        &["ac", "bc", "ab", "ba", "cd"],
        &[("ab", "bc"), ("ba", "ac"), ("cd", "ab"), ("cd", "ba")],
        &[("ac", "bc"), ("ac", "ab"), ("bc", "ba")],
    );
    ensure(named_arcs(&g) == named_arcs(&drawn), || format!("arcs {:?}", named_arcs(&g)))?;
    ensure(digraph::check_lti(&g).holds(), || "LTi fails".into())?;
    ensure(properties::is_jm_lsm(&l).holds, || "JM-LSM fails".into())?;
    ensure(!properties::is_lsm(&l).holds, || "LSM holds".into())?;
    ensure(!properties::is_wjsd(&l).holds, || "W-JSD holds".into())?;
    Ok("5 vertices; LTi, JM-LSM hold; LSM, W-JSD fail".into())
}

fn example_k() -> Outcome {
    let k = fixtures::k();
    ensure(properties::is_modular(&k).holds, || "K is not modular".into())?;
    let g = dual_digraph(&k);
    let drawn = figure(
        &["ca", "cb", "db", "dc", "bc", "ba", "ed"],
        &[
            ("cb", "ed"),
            ("ca", "ed"),
            ("ba", "ed"),
            ("bc", "ed"),
            ("ba", "dc"),
            ("cb", "ba"),
            ("db", "bc"),
            ("ca", "db"),
            ("dc", "cb"),
        ],
        &[("ca", "cb"), ("ca", "ba"), ("ba", "bc"), ("dc", "bc"), ("dc", "db"), ("cb", "db")],
    );
    // the drawing omits bc -> ca, which the arc rule demands since b ≰ a
    let (b, a) = (k.element("b").unwrap(), k.element("a").unwrap());
    ensure(!k.leq(b, a), || "b <= a in K".into())?;
    let mut expected = named_arcs(&drawn);
    expected.insert(("bc".into(), "ca".into()));
    ensure(named_arcs(&g) == expected, || {
        let diff: Vec<_> = named_arcs(&g).symmetric_difference(&expected).cloned().collect();
        format!("dual differs from the drawing plus bc -> ca: {diff:?}")
    })?;
    let fails = match digraph::check_fis(&g) {
        Verdict::Holds => return Err("FIS holds".into()),
        Verdict::Fails((pattern, triple)) => {
            ensure(pattern.matches(&g, triple), || "reported witness does not match".into())?;
            (pattern, triple)
        }
    };
    let g0: Vec<BTreeSet<String>> = digraph::find_induced(&g, Pattern::G0)
        .iter()
        .map(|t| t.iter().map(|&x| g.name(x)).collect())
        .collect();
    let wanted: BTreeSet<String> = ["dc", "cb", "ed"].map(String::from).into();
    ensure(g0.contains(&wanted), || format!("G0 triples {g0:?}"))?;
    // both the computed dual and the drawing contain G1 on {ba, db, ed} and
    // {ca, dc, ed}, although the accompanying text says G1 is absent
    let g1 = |h: &Digraph| -> BTreeSet<BTreeSet<String>> {
        digraph::find_induced(h, Pattern::G1)
            .iter()
            .map(|t| t.iter().map(|&x| h.name(x)).collect())
            .collect()
    };
    ensure(g1(&g) == g1(&drawn), || format!("G1 triples {:?} vs drawn {:?}", g1(&g), g1(&drawn)))?;
    Ok(format!(
        "modular; FIS fails ({:?} first); G0 triples include {{dc, cb, ed}}",
        fails.0
    ))
}

fn round_trips() -> Outcome {
    let catalog = enumerate_lattices(7).map_err(|e| e.to_string())?;
    for l in catalog.iter() {
        ensure(roundtrip_lattice(l) == Ok(true), || format!("lattice {:?}", l.cover_pairs()))?;
    }
    let digraphs = enumerate_tirs_digraphs(5).map_err(|e| e.to_string())?;
    for g in &digraphs {
        ensure(roundtrip_digraph(g) == Ok(true), || format!("digraph {:?}", g.arcs()))?;
    }
    Ok(format!("{} lattices, {} TiRS digraphs", catalog.len(), digraphs.len()))
}

fn mdfip_oracle() -> Outcome {
    let catalog = enumerate_lattices(7).map_err(|e| e.to_string())?;
    for l in catalog.iter() {
        ensure(mdfips(l) == mdfips_bruteforce(l), || format!("lattice {:?}", l.cover_pairs()))?;
    }
    Ok(format!("{} lattices", catalog.len()))
}

fn theorem_campaign() -> Outcome {
    let checks = harness::verify_theorems(7).map_err(|e| e.to_string())?;
    let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.id.as_str()).collect();
    ensure(failed.is_empty(), || format!("failed: {failed:?}"))?;
    let registered: BTreeSet<&str> = checks.iter().map(|c| c.id.as_str()).collect();
    for id in [
        "THM_3_8", "PROP_3_10", "THM_3_13", "THM_3_15", "THM_4_1", "THM_4_2", "REM_4_3", "COR_4_5",
        "THM_4_6_i", "THM_4_6_ii", "THM_4_6_iii", "THM_4_7", "PROP_4_8", "COR_4_9", "THM_4_10",
        "THM_4_13", "LEM_2_3", "LEM_3_4", "LEM_3_5", "LEM_5_1", "PROP_2_5", "PROP_3_7", "THM_5_3",
        "COR_5_6", "PLOSCICA_LEMMA",
    ] {
        ensure(registered.contains(id), || format!("{id} not registered"))?;
    }
    let k = fixtures::k();
    let thm = checks.iter().find(|c| c.id == "THM_5_3").unwrap();
    let witnesses: Vec<_> = thm
        .non_converse_witnesses
        .iter()
        .map(|w| serde_json::from_value::<tirs::io::LatticeJson>(w["lattice"].clone()).unwrap().to_lattice().unwrap())
        .collect();
    ensure(witnesses.iter().any(|l| lattice_isomorphic(l, &k)), || {
        "K missing from THM_5_3 non-converse witnesses".into()
    })?;
    Ok(format!("{} checks, 0 failures", checks.len()))
}

fn non_converse_search() -> Outcome {
    let found = harness::search_counterexamples("mod", "fis", 7).map_err(|e| e.to_string())?;
    ensure(found.iter().any(|l| lattice_isomorphic(l, &fixtures::k())), || "K not found".into())?;
    let jm = harness::search_counterexamples("jmlsm", "lsm", 6).map_err(|e| e.to_string())?;
    ensure(jm.iter().any(|l| lattice_isomorphic(l, &fixtures::l3_dual())), || {
        "L3D not found".into()
    })?;
    let none = harness::search_counterexamples("dist", "mod", 7).map_err(|e| e.to_string())?;
    ensure(none.is_empty(), || "distributive but not modular".into())?;
    Ok(format!("(mod, fis): {} hits incl. K; (jmlsm, lsm): {} hits incl. L3D", found.len(), jm.len()))
}

fn enumeration_counts() -> Outcome {
    let catalog = enumerate_lattices(6).map_err(|e| e.to_string())?;
    let counts = catalog.counts();
    for (n, &count) in counts.iter().enumerate().skip(1) {
        let labeled: usize = catalog.of_size(n).map(common::bounded_labelings).sum();
        let oracle = common::labeled_bounded_lattice_count(n);
        ensure(labeled == oracle, || format!("n = {n}: labelled {labeled} vs oracle {oracle}"))?;
        let classes = common::unlabeled_lattice_count(n);
        ensure(count == classes, || format!("n = {n}: {count} classes vs oracle {classes}"))?;
    }
    Ok(format!("counts {:?}", &counts[1..]))
}

/// Anti-exchange straight from the definition, with closures computed as
/// intersections of closed sets.
fn anti_exchange(c: &ClosureSystem) -> bool {
    let full = (1u64 << c.ground()) - 1;
    let cl = |y: u64| {
        c.closed_sets()
            .iter()
            .filter(|&&s| s & y == y)
            .fold(full, |acc, &s| acc & s)
    };
    c.closed_sets().iter().all(|&y| {
        (0..c.ground()).filter(|&x| y >> x & 1 == 0).all(|x| {
            (0..c.ground()).filter(|&z| z != x && y >> z & 1 == 0).all(|z| {
                !(cl(y | 1 << z) >> x & 1 == 1 && cl(y | 1 << x) >> z & 1 == 1)
            })
        })
    })
}

fn convex_loop() -> Outcome {
    let catalog = enumerate_lattices(6).map_err(|e| e.to_string())?;
    let mut count = 0;
    for l in catalog.iter() {
        if !properties::check(l, Property::MeetDistributive).holds {
            continue;
        }
        count += 1;
        let system = convex::lattice_to_convex_geometry(l).map_err(|e| e.to_string())?;
        let shown = || format!("{:?}", l.cover_pairs());
        ensure(system.is_zero_closure() && system.closed_sets().contains(&0), || {
            format!("not zero-closure: {}", shown())
        })?;
        ensure(convex::satisfies_aep(&system).holds() && anti_exchange(&system), || {
            format!("AEP fails: {}", shown())
        })?;
        ensure(lattice_isomorphic(&convex::cld_lattice(&system), l), || {
            format!("Cld differs: {}", shown())
        })?;
    }
    Ok(format!("{count} meet-distributive lattices"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("golden duals of N5, L4, L4D", golden_figure_one),
        ("golden dual of M3", golden_m3),
        ("golden dual of L3D", golden_l3_dual),
        ("modular K violates FIS", example_k),
        ("round trips n <= 7, TiRS v <= 5", round_trips),
        ("MDFIP characterisation vs brute force, n <= 7", mdfip_oracle),
        ("theorem campaign n <= 7", theorem_campaign),
        ("non-converse witnesses found by search", non_converse_search),
        ("catalog counts vs brute-force oracle, n <= 6", enumeration_counts),
        ("convex geometry loop, n <= 6", convex_loop),
    ];
    let mut failures = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {title}: {detail} ({elapsed:.2}s)", i + 1),
            Err(reason) => {
                failures += 1;
                println!("FAIL {:>2} {title}: {reason} ({elapsed:.2}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
