//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use petgraph::algo::kosaraju_scc;
use petgraph::graph::DiGraph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zgkit_core::automata::{decomposition_roundtrip, samples, syntactic_monoid, zg_decompose, DfaError, Roundtrip};
use zgkit_core::category::{build_category, IdemCategory};
use zgkit_core::congruence::{concat, refines, signature_of, NpParams, Refinement, DEFAULT_SIGNATURE_CAP};
use zgkit_core::delay::{cross_validate, Compatibility, DEFAULT_STATE_CAP};
use zgkit_core::enumeration::{enumerate, verify_structures, CorpusCheck, EnumSpec};
use zgkit_core::fixtures::{self, element};
use zgkit_core::graph::{ear_decomposition, verify_ear, EarKind, EarStep, Multigraph};
use zgkit_core::threshold::{find_distant_threshold, is_distant, pump_factor};
use zgkit_core::varieties::{check_identity, verify_omega_distrib, witness_is_valid, IdentityName, Outcome, Strictness};
use zgkit_core::{Alphabet, FiniteSemigroup, Letter, Morphism};

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn words_up_to(k: usize, max_len: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for a in 0..k {
                let mut v: Vec<Letter> = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn corpus() -> Vec<FiniteSemigroup> {
    let mut all = Vec::new();
    for k in 1..=3 {
        all.extend(enumerate(&EnumSpec::semigroups(k)).unwrap());
        all.extend(enumerate(&EnumSpec::monoids(k)).unwrap());
    }
    all
}

fn criterion_1() -> Verdict {
    let structures = corpus();
    let checks = [
        CorpusCheck::ZgDefinition,
        CorpusCheck::LzgLocal,
        CorpusCheck::MNil,
        CorpusCheck::PeriodDivides(6),
    ];
    let report = verify_structures(&structures, &checks);
    ensure(report.violation_count() == 0, || format!("{:?}", report.checks))?;
    let applied: Vec<String> = report
        .checks
        .iter()
        .map(|c| format!("{}:{}", c.check, c.applicable))
        .collect();
    Ok(format!("{} structures, 0 violations ({})", structures.len(), applied.join(" ")))
}

fn criterion_2() -> Verdict {
    let mut monoids: Vec<FiniteSemigroup> = corpus().into_iter().filter(|s| s.is_monoid()).collect();
    monoids.push(fixtures::n2_one());
    monoids.push(fixtures::by_name("z2xz3").unwrap());
    monoids.push(fixtures::u1());
    let mut checked = 0;
    for s in &monoids {
        if !check_identity(s, IdentityName::Zg, Strictness::Strict).unwrap().is_pass() {
            continue;
        }
        checked += 1;
        match verify_omega_distrib(s).map_err(|e| e.to_string())? {
            Outcome::Pass => {}
            Outcome::Violated(w) => return Err(format!("{:?} on {:?}", w, s.rows())),
        }
    }
    ensure(checked >= 3, || "no ZG monoid was checked".into())?;
    Ok(format!("{checked} ZG monoids, 0 violations"))
}

fn criterion_3() -> Verdict {
    let ab = Alphabet::from_chars("ab").unwrap();
    let words = words_up_to(2, 6);
    let mut pairs = 0usize;
    for (n, p) in [(1, 1), (1, 2), (2, 2)] {
        let params = NpParams::new(ab.clone(), n, p).unwrap();
        let sigs: Vec<_> = words.iter().map(|w| signature_of(w, &params)).collect();
        for (u, su) in words.iter().zip(&sigs) {
            for (v, sv) in words.iter().zip(&sigs) {
                let uv = [u.as_slice(), v.as_slice()].concat();
                ensure(concat(su, sv, &params) == signature_of(&uv, &params), || {
                    format!("({n},{p}) fails on {} . {}", ab.decode(u), ab.decode(v))
                })?;
                pairs += 1;
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(3 + n as u64 * 10 + p as u64);
        for _ in 0..10_000 {
            let word = |rng: &mut ChaCha8Rng| -> Vec<Letter> {
                let len = rng.gen_range(7..40);
                let bias = rng.gen_range(0.0..1.0);
                (0..len).map(|_| usize::from(rng.gen_bool(bias))).collect()
            };
            let (u, v) = (word(&mut rng), word(&mut rng));
            let uv = [u.as_slice(), v.as_slice()].concat();
            ensure(
                concat(&signature_of(&u, &params), &signature_of(&v, &params), &params) == signature_of(&uv, &params),
                || format!("({n},{p}) fails on {} . {}", ab.decode(&u), ab.decode(&v)),
            )?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs, 0 violations"))
}

fn morphism(target: FiniteSemigroup, a: &str, b: &str) -> Morphism {
    let images = vec![element(&target, a), element(&target, b)];
    Morphism::new(Alphabet::from_chars("ab").unwrap(), images, target).unwrap()
}

fn criterion_4() -> Verdict {
    let cases = [
        ("Z2", morphism(fixtures::cyclic(2), "1", "1"), 2),
        ("N2^1", morphism(fixtures::n2_one(), "a", "0"), 1),
        ("Z3", morphism(fixtures::cyclic(3), "1", "2"), 3),
        ("U1", morphism(fixtures::u1(), "0", "1"), 1),
    ];
    let mut notes = Vec::new();
    for (name, h, p) in &cases {
        let started = Instant::now();
        let n = h.target().order() as u32 + 1;
        let params = NpParams::new(h.alphabet().clone(), n, *p).unwrap();
        let r = refines(&params, h, DEFAULT_SIGNATURE_CAP).map_err(|e| e.to_string())?;
        let elapsed = started.elapsed();
        ensure(elapsed < Duration::from_secs(30), || format!("{name} took {elapsed:?}"))?;
        match r {
            Refinement::Refines { signatures } => notes.push(format!("{name}:{signatures}")),
            Refinement::Counterexample(c) => return Err(format!("{name} refuted by {c:?}")),
        }
    }
    let (_, z2, _) = &cases[0];
    let params = NpParams::new(z2.alphabet().clone(), 1, 1).unwrap();
    match refines(&params, z2, DEFAULT_SIGNATURE_CAP).map_err(|e| e.to_string())? {
        Refinement::Counterexample(c) => {
            let (u, v) = (
                z2.alphabet().encode(&c.u).unwrap(),
                z2.alphabet().encode(&c.v).unwrap(),
            );
            ensure(signature_of(&u, &params) == signature_of(&v, &params), || "pair not equivalent".into())?;
            ensure(
                z2.evaluate(&u).ok() == Some(c.u_image) && z2.evaluate(&v).ok() == Some(c.v_image),
                || "images are wrong".into(),
            )?;
            ensure(c.u_image != c.v_image, || "images coincide".into())?;
            notes.push(format!("undersized Z2 refuted by {:?}/{:?}", c.u, c.v));
        }
        Refinement::Refines { .. } => return Err("(1,1) unexpectedly refines Z2".into()),
    }
    Ok(notes.join(", "))
}

fn criterion_5() -> Verdict {
    let ab = Alphabet::from_chars("ab").unwrap();
    let words = words_up_to(2, 6);
    let top = NpParams::new(ab.clone(), 2, 2).unwrap();
    let mut classes: BTreeMap<_, Vec<&Vec<Letter>>> = BTreeMap::new();
    for w in &words {
        classes.entry(format!("{:?}", signature_of(w, &top))).or_default().push(w);
    }
    let mut checked = 0usize;
    for (m, q) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let coarse = NpParams::new(ab.clone(), m, q).unwrap();
        for class in classes.values() {
            let s0 = signature_of(class[0], &coarse);
            for w in class {
                ensure(signature_of(w, &coarse) == s0, || {
                    format!("{} vs {} at ({m},{q})", ab.decode(class[0]), ab.decode(w))
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{} classes, {checked} word checks, 0 violations", classes.len()))
}

fn criterion_6() -> Verdict {
    let mut notes = Vec::new();
    for (name, s, expect_member) in [("RZ2", fixtures::rz2(), true), ("B2^1", fixtures::b2_one(), false)] {
        let started = Instant::now();
        let cv = cross_validate(&s, 1, 2, DEFAULT_STATE_CAP);
        if cv.theory_violation {
            eprintln!("theory violation: compatible congruence for non-member {name}");
            std::process::abort();
        }
        let elapsed = started.elapsed();
        ensure(elapsed < Duration::from_secs(120), || format!("{name} took {elapsed:?}"))?;
        ensure(cv.verdict.member == expect_member, || format!("{name} verdict {:?}", cv.verdict))?;
        if expect_member {
            ensure(cv.least_compatible_n == Some(1), || format!("{name}: {:?}", cv.least_compatible_n))?;
            notes.push(format!("{name} member, least n = 1"));
        } else {
            ensure(cv.reports.len() == 2, || format!("{name}: {} reports", cv.reports.len()))?;
            for r in &cv.reports {
                match &r.outcome {
                    Compatibility::Incompatible(pair) => {
                        let cat = build_category(&s);
                        ensure(
                            cat.paths_equivalent(&pair.left, &pair.right, r.n, r.p)
                                && pair.left_value.src == pair.right_value.src
                                && pair.left_value.dst == pair.right_value.dst
                                && pair.left_value.label != pair.right_value.label,
                            || format!("bad witness at n={}", r.n),
                        )?;
                    }
                    other => return Err(format!("{name} at n={}: {other:?}", r.n)),
                }
            }
            notes.push(format!("{name} non-member, witnessed at n = 1, 2"));
        }
    }
    Ok(notes.join("; "))
}

fn criterion_7() -> Verdict {
    let cases = [
        ("even-a", samples::even_a()),
        ("a*ca*", samples::a_c_a()),
        ("full", samples::full("ab")),
        ("a*ba*", samples::a_b_a_three()),
    ];
    let mut notes = Vec::new();
    for (name, d) in &cases {
        let started = Instant::now();
        let r = decomposition_roundtrip(d, DEFAULT_SIGNATURE_CAP).map_err(|e| e.to_string())?;
        ensure(started.elapsed() < Duration::from_secs(60), || format!("{name} too slow"))?;
        match r {
            Roundtrip::Pass { terms } => notes.push(format!("{name}:{terms}")),
            Roundtrip::Mismatch(w) => return Err(format!("{name} mismatch on {w:?}")),
        }
    }
    let ab = samples::ab_star();
    match zg_decompose(&ab, DEFAULT_SIGNATURE_CAP) {
        Err(DfaError::NotInZG(w)) => {
            let m = syntactic_monoid(&ab, 10_000).unwrap().monoid;
            ensure(
                (w.identity_name == "ZG" || w.identity_name == "ZE") && witness_is_valid(&m, &w),
                || format!("bad witness {w:?}"),
            )?;
            notes.push(format!("(ab)* rejected by {}", w.identity_name));
        }
        other => return Err(format!("(ab)* not rejected: {other:?}")),
    }
    Ok(notes.join(", "))
}

fn random_word_with_counts(rng: &mut ChaCha8Rng, k: usize) -> Vec<usize> {
    let mut w = Vec::new();
    for a in 0..k {
        let c = if rng.gen_bool(0.5) {
            rng.gen_range(0..6)
        } else {
            rng.gen_range(20..1500)
        };
        w.extend(std::iter::repeat(a).take(c));
    }
    w.shuffle(rng);
    w
}

fn check_pump(w: &[usize], n: u64, m: u64) -> Result<usize, String> {
    let mut count = BTreeMap::new();
    for &x in w {
        *count.entry(x).or_insert(0u64) += 1;
    }
    let rare = |x: usize| count[&x] <= n;
    let mut checked = 0;
    for (&a, &c) in &count {
        if c <= n {
            continue;
        }
        let (i, j) = pump_factor(w, n, m, a).map_err(|e| format!("pump_factor: {e}"))?;
        ensure(w[i..j].iter().all(|&x| !rare(x)), || "factor contains a rare symbol".into())?;
        ensure(w[i..j].iter().filter(|&&x| x == a).count() as u64 > m, || "too few occurrences".into())?;
        ensure(i == 0 || rare(w[i - 1]), || "factor is not maximal on the left".into())?;
        ensure(j == w.len() || rare(w[j]), || "factor is not maximal on the right".into())?;
        // no earlier maximal block qualifies
        let mut start = 0;
        for end in 0..=i {
            if end == w.len() || (end < i && rare(w[end])) {
                let hits = w[start..end].iter().filter(|&&x| x == a).count() as u64;
                ensure(hits <= m, || "an earlier factor qualifies".into())?;
                start = end + 1;
            }
        }
        checked += 1;
    }
    Ok(checked)
}

/// Every edge of the graph lies inside one SCC, computed by petgraph.
fn union_of_sccs_oracle(objects: usize, edges: &[(usize, usize)]) -> bool {
    let mut g = DiGraph::<(), ()>::new();
    let nodes: Vec<_> = (0..objects).map(|_| g.add_node(())).collect();
    for &(a, b) in edges {
        g.add_edge(nodes[a], nodes[b], ());
    }
    let mut comp = vec![0; objects];
    for (i, c) in kosaraju_scc(&g).iter().enumerate() {
        for v in c {
            comp[v.index()] = i;
        }
    }
    edges.iter().all(|&(a, b)| comp[a] == comp[b])
}

fn criterion_8() -> Verdict {
    let w = vec![0, 0, 0];
    let t = find_distant_threshold(&w, &w, 1, 1).map_err(|e| e.to_string())?;
    ensure(t.value == 16, || format!("hand-traced instance gave {}", t.value))?;

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut pumps = 0;
    for i in 0..100 {
        let k = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=3);
        let u1 = random_word_with_counts(&mut rng, k);
        let u2 = random_word_with_counts(&mut rng, k);
        let t = find_distant_threshold(&u1, &u2, k, m).map_err(|e| format!("sample {i}: {e}"))?;
        ensure(is_distant(&u1, t.value, m) && is_distant(&u2, t.value, m), || {
            format!("sample {i}: {t:?} is not distant")
        })?;
        ensure(t.within_bound(k), || format!("sample {i}: exponent {} too large", t.exponent))?;
        pumps += check_pump(&u1, t.value, m).map_err(|e| format!("sample {i}: {e}"))?;
        pumps += check_pump(&u2, t.value, m).map_err(|e| format!("sample {i}: {e}"))?;
    }

    let mut paths = 0;
    let mut thresholds = 0;
    for s in [fixtures::rz2(), fixtures::b2(), fixtures::b2_one(), fixtures::n2_one(), fixtures::s3()] {
        let cat = build_category(&s);
        let pos: BTreeMap<_, _> = cat.objects().iter().enumerate().map(|(i, &e)| (e, i)).collect();
        for _ in 0..20 {
            let weights: Vec<u32> = (0..cat.arrows().len())
                .map(|_| if rng.gen_bool(0.3) { 1 } else { 40 })
                .collect();
            let mut at = cat.objects()[rng.gen_range(0..cat.objects().len())];
            let len = rng.gen_range(1..200);
            let mut walk = Vec::with_capacity(len);
            for _ in 0..len {
                let out = cat.outgoing(at);
                let a = *out.choose_weighted(&mut rng, |&a| weights[a]).unwrap();
                walk.push(a);
                at = cat.arrows()[a].dst;
            }
            let path = cat.path(walk.clone()).unwrap();
            for n in 1..=len as u64 {
                if !is_distant(&walk, n, 1) {
                    continue;
                }
                let r = cat.frequent_graph_is_union_of_sccs(&path, n);
                let edges: Vec<(usize, usize)> = cat
                    .frequent_arrows(&walk, n)
                    .iter()
                    .map(|&a| (pos[&cat.arrows()[a].src], pos[&cat.arrows()[a].dst]))
                    .collect();
                let oracle = union_of_sccs_oracle(cat.objects().len(), &edges);
                ensure(r.holds && oracle, || format!("union of SCCs fails at n={n} for {walk:?}"))?;
                thresholds += 1;
            }
            paths += 1;
        }
    }
    Ok(format!(
        "100 pairs distant and within bound, {pumps} pump factors, {paths} paths / {thresholds} thresholds union of SCCs"
    ))
}

fn all_paths(cat: &IdemCategory, max_len: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..cat.arrows().len()).map(|a| vec![a]).collect();
    let mut layer = out.clone();
    for _ in 1..max_len {
        let mut next = Vec::new();
        for p in &layer {
            let end = cat.arrows()[*p.last().unwrap()].dst;
            for &a in cat.outgoing(end) {
                let mut q = p.clone();
                q.push(a);
                next.push(q);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn criterion_9() -> Verdict {
    let mut counts = [0usize; 4];
    for (name, s) in [("RZ2", fixtures::rz2()), ("B2", fixtures::b2()), ("N2^1", fixtures::n2_one())] {
        let cat = build_category(&s);
        let paths = all_paths(&cat, 3);
        let ends = |p: &[usize]| (cat.arrows()[p[0]].src, cat.arrows()[*p.last().unwrap()].dst);
        let mut loops: BTreeMap<usize, Vec<&Vec<usize>>> = BTreeMap::new();
        for p in &paths {
            let (a, b) = ends(p);
            if a == b {
                loops.entry(a).or_default().push(p);
            }
        }
        let cp = |p: &[usize]| cat.path(p.to_vec()).unwrap();
        for (&o, ls) in &loops {
            for x in ls {
                for y in ls {
                    let (px, py) = (cp(x), cp(y));
                    for k in -1..=2 {
                        let r = cat.verify_loop_commutation(&px, &py, k).map_err(|e| e.to_string())?;
                        ensure(r.is_pass(), || format!("{name}: commutation {x:?} {y:?} k={k}: {r:?}"))?;
                        counts[0] += 1;
                    }
                    let xn: Vec<usize> = x.iter().copied().cycle().take(40 * x.len()).collect();
                    let r_part = [xn.as_slice(), y.as_slice()].concat();
                    let t_part = [y.as_slice(), xn.as_slice()].concat();
                    for (r, t) in [(r_part.clone(), t_part.clone()), (vec![], [r_part.as_slice(), &t_part].concat())] {
                        let (check, n) = cat.verify_loop_insertion(&r, &t, &px).map_err(|e| {
                            format!("{name}: insertion {x:?} {y:?} at {o}: {e}")
                        })?;
                        ensure(check.is_pass(), || format!("{name}: insertion {x:?} {y:?}: {check:?}"))?;
                        // rt and r x^omega t also agree as arrow words
                        let w = s.global_exponent();
                        let pumped: Vec<usize> =
                            [r.clone(), x.repeat(w), t.clone()].concat();
                        let rt = [r.as_slice(), &t].concat();
                        ensure(cat.paths_equivalent(&rt, &pumped, n as u32, w as u32), || {
                            format!("{name}: insertion {x:?} at n'={n} not n',omega-equivalent")
                        })?;
                        counts[1] += 1;
                    }
                    // local identities: split both loops at a common object
                    for i in 1..x.len() {
                        for j in 1..y.len() {
                            let (xa, ya) = (&x[..i], &x[i..]);
                            let (xb, yb) = (&y[..j], &y[j..]);
                            if ends(xa).1 != ends(xb).1 {
                                continue;
                            }
                            for t in [ya, yb] {
                                let r = cat
                                    .verify_local_identities(&cp(xa), &cp(xb), &cp(ya), &cp(yb), &cp(t))
                                    .map_err(|e| e.to_string())?;
                                ensure(r.iter().all(|c| c.is_pass()), || {
                                    format!("{name}: local identities {x:?} {y:?}: {r:?}")
                                })?;
                                counts[2] += 1;
                            }
                        }
                    }
                }
            }
        }
        if name == "N2^1" {
            continue;
        }
        for &a in cat.objects() {
            for &b in cat.objects() {
                let q = cat.hom(b, a)[0];
                for &x in cat.hom(a, b) {
                    for &x2 in cat.hom(a, b) {
                        let r: Vec<usize> = [q, x, q, x2].iter().copied().cycle().take(4 * 20).collect();
                        for (y1, y2) in [(vec![q, x], vec![]), (vec![q], vec![x])] {
                            let found = cat
                                .search_prefix_substitution(&cp(&[x]), &r, &y1, &y2, &cp(&[x2]), None, 4)
                                .map_err(|e| format!("{name}: {e}"))?;
                            ensure(found.is_some(), || format!("{name}: no y'' for x={x} x'={x2}"))?;
                            counts[3] += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!(
        "{} commutations, {} insertions, {} local identity pairs, {} substitutions found",
        counts[0], counts[1], counts[2], counts[3]
    ))
}

fn random_strongly_connected(rng: &mut ChaCha8Rng) -> Multigraph {
    let v = rng.gen_range(1..=8);
    let mut order: Vec<usize> = (0..v).collect();
    order.shuffle(rng);
    let mut edges: Vec<(usize, usize)> = (0..v).map(|i| (order[i], order[(i + 1) % v])).collect();
    let total = rng.gen_range(v..=16);
    while edges.len() < total {
        edges.push((rng.gen_range(0..v), rng.gen_range(0..v)));
    }
    edges.shuffle(rng);
    Multigraph::new(v, edges).unwrap()
}

/// Re-checks the three ear postconditions with petgraph.
fn ear_oracle(g: &Multigraph, ear: &EarStep) -> Result<(), String> {
    let distinct: BTreeSet<_> = ear.vertices.iter().collect();
    ensure(distinct.len() == ear.vertices.len(), || "vertices repeat".into())?;
    let on_ear: BTreeSet<usize> = ear.edges.iter().copied().collect();
    if ear.kind == EarKind::SimpleCycleWhole {
        return ensure(
            on_ear.len() == g.edges.len() && ear.vertices.len() == g.vertex_count,
            || "not the whole graph".into(),
        );
    }
    let inner: BTreeSet<usize> = ear.intermediate_vertices().iter().copied().collect();
    for (i, &(a, b)) in g.edges.iter().enumerate() {
        if !on_ear.contains(&i) {
            ensure(!inner.contains(&a) && !inner.contains(&b), || "inner vertex touched".into())?;
        }
    }
    let mut pg = DiGraph::<usize, ()>::new();
    let mut node = BTreeMap::new();
    for v in (0..g.vertex_count).filter(|v| !inner.contains(v)) {
        node.insert(v, pg.add_node(v));
    }
    for (i, &(a, b)) in g.edges.iter().enumerate() {
        if !on_ear.contains(&i) {
            pg.add_edge(node[&a], node[&b], ());
        }
    }
    ensure(kosaraju_scc(&pg).len() == 1, || "remaining graph not strongly connected".into())
}

fn criterion_10() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let started = Instant::now();
    let mut kinds = BTreeMap::new();
    for i in 0..100 {
        let g = random_strongly_connected(&mut rng);
        ensure(g.is_strongly_connected(), || format!("graph {i} generator bug"))?;
        let ear = ear_decomposition(&g).map_err(|e| format!("graph {i}: {e}"))?;
        verify_ear(&g, &ear).map_err(|e| format!("graph {i}: {e}"))?;
        ear_oracle(&g, &ear).map_err(|e| format!("graph {i}: {e}"))?;
        *kinds.entry(format!("{:?}", ear.kind)).or_insert(0) += 1;
    }
    let elapsed = started.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!("100 graphs verified {kinds:?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("corpus identity cross-check", criterion_1),
        ("omega distributes over products in ZG", criterion_2),
        ("signature concatenation is a congruence", criterion_3),
        ("refinement on fixed morphisms", criterion_4),
        ("monotonicity of the congruences", criterion_5),
        ("delay decision consistency", criterion_6),
        ("ZG decomposition round trip", criterion_7),
        ("distant threshold machinery", criterion_8),
        ("path identities in categories", criterion_9),
        ("ear decomposition", criterion_10),
    ];
    let limits = [60, 10, 600, 120, 600, 240, 240, 600, 600, 5];
    let mut failed = 0;
    for (i, ((name, run), limit)) in criteria.iter().zip(limits).enumerate() {
        let started = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = started.elapsed();
        let result = result.and_then(|d| {
            if elapsed > Duration::from_secs(limit) {
                Err(format!("{d}; exceeded {limit} s"))
            } else {
                Ok(d)
            }
        });
        match result {
            Ok(detail) => println!("criterion {:>2} PASS {name} [{:.2?}]: {detail}", i + 1, elapsed),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} [{:.2?}]: {detail}", i + 1, elapsed);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
