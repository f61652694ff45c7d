//! Acceptance suite. Prints one line per criterion and exits nonzero if
//! any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use tubular_core::bundles::ExtBundle;
use tubular_core::graded::dim_s;
use tubular_core::k0::{basis, euler_form, reduce_line};
use tubular_core::lgroup::{LElement, WeightTriple};
use tubular_core::quiver::{fixture, fixtures, is_isomorphic, search, Arrow, Quiver, Vertex};
use tubular_core::replay::{pullback_cone, replay};
use tubular_core::stablehom::{shifted_cuboid_verdict, HomVerdict, TiltingVerdict};

const TRIPLES: [[i64; 3]; 4] = [[2, 4, 4], [2, 3, 6], [3, 3, 3], [2, 3, 7]];

type Outcome = std::result::Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn triples() -> Vec<WeightTriple> {
    TRIPLES.iter().map(|p| WeightTriple::new(p[0], p[1], p[2]).unwrap()).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

// does x1^a x2^b x3^e have degree x? lift to Z^4 instead of normalizing
fn has_degree(w: WeightTriple, m: [i64; 3], x: LElement) -> bool {
    let l = x.coefficients();
    let mut k = 0;
    for i in 0..3 {
        let d = m[i] - l[i];
        if d % w.p(i) != 0 {
            return false;
        }
        k += d / w.p(i);
    }
    k == x.c_part()
}

// monomials modulo x3^p3 = -(x1^p1 + x2^p2)
fn monomial_dim(x: LElement) -> i64 {
    let w = x.weights();
    let l = x.coefficients();
    let reach = x.c_part().max(0) + 1;
    let mut n = 0;
    for a in 0..=l[0] + w.p(0) * reach {
        for b in 0..=l[1] + w.p(1) * reach {
            for e in 0..w.p(2) {
                if has_degree(w, [a, b, e], x) {
                    n += 1;
                }
            }
        }
    }
    n
}

fn hilbert_closed_form() -> Outcome {
    for w in triples() {
        for x in w.window(3) {
            let (a, b) = (dim_s(x), monomial_dim(x));
            ensure(a == b, || format!("{w}: dim S_{x} = {a}, monomials give {b}"))?;
        }
    }
    Ok(())
}

fn euler_consistency() -> Outcome {
    for w in triples() {
        let om = w.omega();
        for b in basis(w) {
            let rb = reduce_line(b);
            for y in w.window(3) {
                let ry = reduce_line(y);
                let expect = monomial_dim(y - b) - monomial_dim(b + om - y);
                let got = euler_form(&rb, &ry);
                ensure(got == expect, || format!("{w}: <O({b}), O({y})> = {got}, dimensions give {expect}"))?;
                let back = monomial_dim(b - y) - monomial_dim(y + om - b);
                let got = euler_form(&ry, &rb);
                ensure(got == back, || format!("{w}: <O({y}), O({b})> = {got}, dimensions give {back}"))?;
            }
        }
    }
    Ok(())
}

fn ext_bundle_equality() -> Outcome {
    for w in triples() {
        let boxed: Vec<ExtBundle> = w.cuboid().into_iter().map(|x| ExtBundle::new(x, w.zero()).unwrap()).collect();
        let window = w.window(2);
        let mut compared = 0usize;
        for a in &boxed {
            let ca = a.class();
            for b in &boxed {
                for &z in &window {
                    let bz = b.twist(z);
                    let rule = a.eq_ext(&bz);
                    let oracle = ca == bz.class();
                    ensure(rule == oracle, || format!("{w}: {a} vs {bz}: rule {rule}, classes {oracle}"))?;
                    compared += 1;
                }
            }
        }
        ensure(compared > 0, || format!("{w}: nothing compared"))?;
    }
    Ok(())
}

fn hulls_and_suspensions() -> Outcome {
    for w in triples() {
        let e = ExtBundle::auslander(w);
        let hull: BTreeSet<String> = e.injective_hull().iter().map(|y| y.to_string()).collect();
        let expect: BTreeSet<String> =
            [w.zero(), w.xbar(0), w.xbar(1), w.xbar(2)].iter().map(|y| y.to_string()).collect();
        ensure(hull == expect, || format!("{w}: I(E) = {hull:?}"))?;
        for x in w.cuboid() {
            for z in [w.zero(), w.x(0), w.omega(), -w.c()] {
                let b = ExtBundle::new(x, z).unwrap();
                let back = b.suspend().and_then(|s| s.desuspend()).map_err(|err| format!("{b}: {err}"))?;
                ensure(back.eq_ext(&b), || format!("{w}: desuspend(suspend({b})) = {back}"))?;
            }
        }
    }
    let w = WeightTriple::new(3, 3, 3).unwrap();
    let sx = w.x(0) + w.x(1) + w.x(2);
    let s = ExtBundle::new(w.x(0) + w.x(2), w.zero()).unwrap().suspend().map_err(|e| e.to_string())?;
    let expect = ExtBundle::new(sx, w.x(1)).unwrap();
    ensure(s.eq_ext(&expect), || format!("suspend(E<x1+x3>) = {s}, expected {expect}"))?;
    let s = ExtBundle::auslander(w).suspend().map_err(|e| e.to_string())?;
    let expect = ExtBundle::new(sx, -w.omega()).unwrap();
    ensure(s.eq_ext(&expect), || format!("suspend(E) = {s}, expected {expect}"))
}

fn determinant_of_s() -> Outcome {
    for w in triples() {
        let e = ExtBundle::auslander(w);
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let det = e.twist(w.xbar(i)).det() - e.det();
            let two_xbar = w.xbar(i) * 2;
            let formula = w.x(j) * (w.p(j) - 2) + w.x(k) * (w.p(k) - 2);
            ensure(det == two_xbar && det == formula, || {
                format!("{w}, i = {}: det S = {det}, 2xbar = {two_xbar}, formula {formula}", i + 1)
            })?;
        }
    }
    Ok(())
}

fn dichotomy() -> Outcome {
    for (p, want) in [
        ([2, 4, 4], TiltingVerdict::Tilting),
        ([2, 3, 6], TiltingVerdict::Tilting),
        ([3, 3, 3], TiltingVerdict::NotTilting),
    ] {
        let w = WeightTriple::new(p[0], p[1], p[2]).unwrap();
        let v = shifted_cuboid_verdict(w).map_err(|e| e.to_string())?;
        ensure(v.verdict == want, || format!("{w}: verdict {:?}", v.verdict))?;
        if want == TiltingVerdict::NotTilting {
            let last = v.evaluation.chain.last().map(|q| q.to_string()).unwrap_or_default();
            ensure(last == "DD(E, E)", || format!("{w}: witness ends in {last}"))?;
            ensure(v.evaluation.reduced_twist == Some(w.zero()), || format!("{w}: twist {:?}", v.evaluation.reduced_twist))?;
            ensure(matches!(v.evaluation.verdict, HomVerdict::Nonzero { .. }), || format!("{w}: {:?}", v.evaluation.verdict))?;
        }
    }
    Ok(())
}

fn replays() -> Outcome {
    for (kind, size) in [("244", 9), ("236", 10), ("333", 8)] {
        let t = Instant::now();
        let r = replay(kind).map_err(|e| format!("{kind}: {e}"))?;
        let took = t.elapsed();
        ensure(r.pass, || format!("{kind}: failed checks {:?}", r.failures().iter().map(|c| &c.name).collect::<Vec<_>>()))?;
        ensure(r.reverify(), || format!("{kind}: report does not reverify"))?;
        ensure(r.final_quiver.len() == size, || format!("{kind}: {} vertices", r.final_quiver.len()))?;
        let target = fixture(&r.target).map_err(|e| e.to_string())?;
        ensure(is_isomorphic(&r.final_quiver, &target.quiver).is_some(), || format!("{kind}: not isomorphic to {}", r.target))?;
        ensure(took < Duration::from_secs(10), || format!("{kind}: took {took:?}"))?;
    }
    Ok(())
}

fn independent_search() -> Outcome {
    for (start, bound) in [("cuboid_cluster_244", 5), ("cuboid_cluster_236", 7), ("tbar_cluster_333", 3)] {
        let f = fixture(start).map_err(|e| e.to_string())?;
        let target = fixture(f.target.ok_or_else(|| format!("{start} has no target"))?).map_err(|e| e.to_string())?;
        let found = search(&f.quiver, &target.quiver, bound)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("{start}: nothing within {bound}"))?;
        let end = f.quiver.apply(&found.sequence).map_err(|e| e.to_string())?;
        ensure(is_isomorphic(&end, &target.quiver).is_some(), || format!("{start}: {:?} misses", found.sequence))?;
        println!("  {start} -> {}: {:?}", target.name, found.sequence);
    }
    Ok(())
}

fn g_independence() -> Outcome {
    let w = WeightTriple::new(3, 3, 3).unwrap();
    let sx = w.x(0) + w.x(1) + w.x(2);
    let esx = ExtBundle::new(sx, w.zero()).unwrap();
    let e = ExtBundle::auslander(w);
    let mut sums = Vec::new();
    for i in 0..3 {
        let f = e.twist(w.x(i) * 2).class() + reduce_line(sx);
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let cone = pullback_cone(sx, j.min(k), j.max(k)).map_err(|e| e.to_string())?;
        let via_cone = cone.object.class().map_err(|e| e.to_string())?;
        ensure(via_cone == f, || format!("F{}: {via_cone} vs {f}", i + 1))?;
        sums.push(f + esx.twist(w.x(i)).class());
    }
    ensure(sums[0] == sums[1] && sums[1] == sums[2], || format!("{sums:?}"))
}

fn random_quiver(rng: &mut StdRng) -> Quiver {
    let n = rng.gen_range(2..=10usize);
    let vertices = (1..=n as i64).map(|i| Vertex::new(i, format!("v{i}"))).collect();
    let mut arrows = Vec::new();
    for i in 1..=n as i64 {
        for j in i + 1..=n as i64 {
            let mult = rng.gen_range(0..=3u32);
            if mult > 0 {
                let (from, to) = if rng.gen_bool(0.5) { (i, j) } else { (j, i) };
                arrows.push(Arrow { from, to, mult });
            }
        }
    }
    Quiver::new(vertices, &arrows).unwrap()
}

fn mutation_engines_agree(q: &Quiver) -> Outcome {
    for v in q.ids() {
        let a = q.mutate(v).map_err(|e| e.to_string())?;
        let b = q.mutate_by_rewriting(v).map_err(|e| e.to_string())?;
        ensure(a.matrix() == b.matrix(), || format!("engines disagree at {v}"))?;
        let back = a.mutate(v).map_err(|e| e.to_string())?;
        ensure(back.matrix() == q.matrix(), || format!("double mutation at {v} is not the identity"))?;
    }
    Ok(())
}

fn mutation_cross_check() -> Outcome {
    for f in fixtures() {
        mutation_engines_agree(&f.quiver).map_err(|e| format!("{}: {e}", f.name))?;
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for n in 0..1000 {
        let q = random_quiver(&mut rng);
        mutation_engines_agree(&q).map_err(|e| format!("random quiver {n}: {e}"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("graded dimension closed form vs monomials", hilbert_closed_form, Duration::from_secs(1)),
        ("Euler form vs line bundle Hom - Ext", euler_consistency, Duration::from_secs(5)),
        ("extension bundle equality vs classes", ext_bundle_equality, Duration::from_secs(60)),
        ("hulls and suspensions", hulls_and_suspensions, Duration::MAX),
        ("determinant of S", determinant_of_s, Duration::MAX),
        ("shifted cuboid dichotomy", dichotomy, Duration::MAX),
        ("tubular replays", replays, Duration::from_secs(30)),
        ("independent search", independent_search, Duration::from_secs(120)),
        ("i-independence for (3,3,3)", g_independence, Duration::MAX),
        ("mutation cross-check", mutation_cross_check, Duration::MAX),
    ];
    let mut failed = 0;
    for (n, (name, run, limit)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let mut outcome = run();
        let took = t.elapsed();
        if outcome.is_ok() && took > *limit {
            outcome = Err(format!("took {took:?}, limit {limit:?}"));
        }
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {name} ({took:.2?})", n + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({took:.2?}): {msg}", n + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
