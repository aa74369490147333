use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use uqminus::canbasis::{CanonicalContext, Direction, Strategy};
use uqminus::halfalg::HalfElement;
use uqminus::pbw::{t_double_prime_formula, PbwContext, Sign};
use uqminus::rootdata::{RootDatum, Weight};
use uqminus::verify::{check_factorization, check_multiplicity_free, check_omega, check_triple_intersection, vertex_label, VerifyReport};
use uqminus::{LaurentInt, RatFunc};

type Outcome = Result<String, String>;

fn ctx(t: &str, h: u32) -> CanonicalContext {
    CanonicalContext::new(RootDatum::named(t).expect("named type"), h)
}

fn weights(c: &CanonicalContext) -> Vec<Weight> {
    Weight::all_up_to_height(c.datum().rank(), c.algebra().max_height())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|x| x.to_string())
}

fn q_serre() -> Outcome {
    for t in ["A2", "B2", "G2", "A3", "A1(1)"] {
        ensure(e(ctx(t, 5).algebra().q_serre_certificate())?, || format!("{t}: a q-Serre element pairs nontrivially"))?;
    }
    Ok("5 types".into())
}

fn duality() -> Outcome {
    let mut cols = 0;
    for (t, h) in [("A2", 6), ("B2", 6), ("G2", 5), ("A3", 5), ("A1(1)", 5)] {
        let c = ctx(t, h);
        let alg = c.algebra();
        for nu in weights(&c) {
            let tb = e(c.table(&nu))?;
            for (a, low) in tb.lows().iter().enumerate() {
                ensure(low.is_bar_invariant(), || format!("{t} {nu}: G^low #{a} not bar-invariant"))?;
                ensure(e(tb.certificates()[a].evaluate(alg, &nu))? == *low, || format!("{t} {nu}: certificate #{a} mismatch"))?;
                for (b, up) in tb.ups().iter().enumerate() {
                    let p = e(alg.pair(up, low))?;
                    let want = if a == b { RatFunc::one() } else { RatFunc::zero() };
                    ensure(p == want, || format!("{t} {nu}: (G^up #{b}, G^low #{a}) = {p}"))?;
                }
            }
            for (b, up) in tb.ups().iter().enumerate() {
                ensure(e(alg.is_sigma_invariant(up))?, || format!("{t} {nu}: G^up #{b} not σ-invariant"))?;
                ensure(e(alg.in_dual_integral_form(up))?, || format!("{t} {nu}: G^up #{b} not dual-integral"))?;
            }
            cols += tb.len();
        }
    }
    Ok(format!("{cols} columns"))
}

fn dual_divided(c: &CanonicalContext, i: usize, n: u32) -> Result<HalfElement, String> {
    let nu = Weight::zero(c.datum().rank()).add_simple(i, n);
    Ok(e(c.table(&nu))?.up(0).clone())
}

fn dual_simple_root() -> Outcome {
    let mut n = 0;
    for t in ["A1", "A2", "B2", "G2", "A3", "A1(1)"] {
        let c = ctx(t, 4);
        let alg = c.algebra();
        for i in 0..c.datum().rank() {
            let d = c.datum().d(i);
            for k in 1..=4u32 {
                let lhs = dual_divided(&c, i, k)?;
                let rhs = e(alg.word(&vec![i; k as usize]))?.shift(d * i64::from(k * (k - 1) / 2));
                ensure(lhs == rhs, || format!("{t} i={i} c={k}"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} cases"))
}

fn mult_dual_chevalley() -> Outcome {
    let mut n = 0;
    for (t, h) in [("A2", 6), ("B2", 6), ("G2", 5), ("A3", 5), ("A1(1)", 5)] {
        let c = ctx(t, h);
        let alg = c.algebra();
        let cr = c.crystal();
        for nu in weights(&c) {
            let tb = e(c.table(&nu))?;
            for (k, b) in tb.vertices().iter().enumerate() {
                for i in 0..c.datum().rank() {
                    let d = c.datum().d(i);
                    for m in 1..=3u32 {
                        let target_w = nu.add_simple(i, m);
                        if !alg.within_bound(&target_w) {
                            continue;
                        }
                        let x = e(alg.multiply(&dual_divided(&c, i, m)?, tb.up(k)))?;
                        let coeffs = e(c.up_coordinates(&x))?;
                        let target = cr.f_pow(b, i, m);
                        let t2 = e(c.table(&target_w))?;
                        let ti = t2.index_of(&target).ok_or("target outside table")?;
                        let shift = -d * i64::from(m) * i64::from(cr.eps(b, i));
                        for (j, y) in coeffs.iter().enumerate() {
                            let ok = if j == ti { *y == RatFunc::q_pow(shift) } else { y.is_zero() || y.shift(-shift).in_q_zq() };
                            ensure(ok, || format!("{t} {nu} b#{k} i={i} c={m}: coefficient {y} on #{j}"))?;
                        }
                        n += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{n} products"))
}

fn qunip() -> Outcome {
    let mut n = 0;
    for (t, h) in [("A2", 6), ("B2", 6), ("G2", 6), ("A3", 5)] {
        let c = ctx(t, h);
        let words = c.datum().longest_reduced_words().ok_or("not finite")?;
        let positive = t.starts_with('A');
        for w in &words {
            let p = e(PbwContext::new(&c, w, Sign::Plus))?;
            for nu in weights(&c) {
                let m = e(p.transition_matrix(&nu))?;
                ensure(m.unitriangular, || format!("{t} {w:?} {nu}: {:?}", m.witness))?;
                ensure(!positive || m.positive, || format!("{t} {w:?} {nu}: negative coefficient"))?;
                n += 1;
            }
        }
        let expect = match t {
            "A3" => 16,
            _ => 2,
        };
        ensure(words.len() == expect, || format!("{t}: {} reduced words", words.len()))?;
    }
    Ok(format!("{n} matrices over 22 words"))
}

fn strategy_agreement() -> Outcome {
    let mut n = 0;
    for t in ["A2", "B2", "A3"] {
        let c = ctx(t, 5);
        for nu in weights(&c) {
            let a = e(c.canonical_table(&nu, Strategy::PbwSolve))?;
            let b = e(c.canonical_table(&nu, Strategy::Induction))?;
            ensure(a.vertices() == b.vertices() && a.lows() == b.lows() && a.ups() == b.ups(), || format!("{t} {nu}"))?;
            n += a.len();
        }
    }
    Ok(format!("{n} columns"))
}

fn braid_calibration() -> Outcome {
    let mut pairs = 0;
    let mut trips = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let types = ["A2", "B2", "G2", "A3", "A1(1)"];
    let ctxs: Vec<CanonicalContext> = types.iter().map(|t| ctx(t, 5)).collect();
    for c in &ctxs {
        let r = c.datum().rank();
        for i in 0..r {
            for j in 0..r {
                if i != j {
                    let direct = e(t_double_prime_formula(c, i, j))?;
                    let braid = e(c.braid_apply(&e(c.algebra().generator(j))?, i, Direction::Plus))?;
                    ensure(direct == braid, || format!("{} i={i} j={j}", c.datum().name()))?;
                    pairs += 1;
                }
            }
        }
    }
    while trips < 200 {
        let c = &ctxs[rng.gen_range(0..ctxs.len())];
        let alg = c.algebra();
        let r = c.datum().rank();
        let i = rng.gen_range(0..r);
        let nu = Weight((0..r).map(|_| rng.gen_range(0..3)).collect());
        let Some(img) = c.datum().reflect_weight(i, &nu) else { continue };
        if !alg.within_bound(&nu) || !alg.within_bound(&img) {
            continue;
        }
        let plus_first = trips % 2 == 0;
        let tb = e(c.table(&nu))?;
        let mut x = e(alg.zero(&nu))?;
        for (k, b) in tb.vertices().iter().enumerate() {
            let free = if plus_first { c.crystal().eps_star(b, i) } else { c.crystal().eps(b, i) };
            if free == 0 {
                let coef = LaurentInt::from_pairs(&[(rng.gen_range(-2..3), rng.gen_range(-3..4)), (rng.gen_range(-2..3), rng.gen_range(-3..4))]);
                x.add_scaled(&RatFunc::from(coef), tb.up(k));
            }
        }
        if x.is_zero() {
            continue;
        }
        let (go, ret) = if plus_first { (Direction::Plus, Direction::Minus) } else { (Direction::Minus, Direction::Plus) };
        let there = e(c.braid_apply(&x, i, go))?;
        let back = e(c.braid_apply(&there, i, ret))?;
        ensure(back == x, || format!("{} i={i} {nu}: round trip moved the element", c.datum().name()))?;
        trips += 1;
    }
    Ok(format!("{pairs} formula pairs, {trips} round trips"))
}

fn sweep_cases() -> Vec<(&'static str, Vec<usize>)> {
    vec![("A2", vec![0]), ("A2", vec![0, 1]), ("A2", vec![0, 1, 0]), ("B2", vec![0]), ("B2", vec![0, 1]), ("A3", vec![0, 1, 2])]
}

fn affine_cases() -> Vec<(&'static str, Vec<usize>)> {
    vec![("A1(1)", vec![0]), ("A1(1)", vec![0, 1]), ("A1(1)", vec![0, 1, 0])]
}

fn main_theorems(cases: Vec<(&'static str, Vec<usize>)>) -> Outcome {
    let mut n = 0;
    for (t, w) in cases {
        let c = ctx(t, 6);
        for eps in [Sign::Plus, Sign::Minus] {
            let reps: Vec<VerifyReport> = vec![
                e(check_factorization(&c, &w, eps, false))?,
                e(check_factorization(&c, &w, eps, true))?,
                e(check_multiplicity_free(&c, &w, eps))?,
            ];
            for r in reps {
                if let Some(f) = r.failures().next() {
                    return Err(format!("{} {t} {w:?} ε={eps} at {}: {:?}", r.theorem.tag(), f.weight, f.witness));
                }
                n += r.records.len();
            }
        }
    }
    Ok(format!("{n} weight records"))
}

fn omega() -> Outcome {
    let mut n = 0;
    for (t, w) in sweep_cases().into_iter().chain(affine_cases()) {
        let c = ctx(t, 6);
        for eps in [Sign::Plus, Sign::Minus] {
            let r = e(check_omega(&c, &w, eps))?;
            if let Some(f) = r.failures().next() {
                return Err(format!("{t} {w:?} ε={eps} at {}: {:?}", f.weight, f.witness));
            }
            n += r.records.len();
        }
    }
    Ok(format!("{n} weight records"))
}

fn triple() -> Outcome {
    let c = ctx("A2", 6);
    let mut findings = 0;
    for p in 0..=3 {
        let r = e(check_triple_intersection(&c, &[0, 1, 0], p))?;
        if let Some(f) = r.failures().next() {
            return Err(format!("p={p} at {}: {:?}", f.weight, f.witness));
        }
        findings += r.findings().count();
    }
    Ok(format!("p = 0..3, {findings} findings"))
}

fn laurent(v: &Value) -> Result<LaurentInt, String> {
    e(serde_json::from_value(v.clone()))
}

fn ratfunc(v: &Value) -> Result<RatFunc, String> {
    e(serde_json::from_value(v.clone()))
}

fn golden() -> Outcome {
    let text = include_str!("golden/a2_weight_11.json");
    let g: Value = e(serde_json::from_str(text))?;
    let c = ctx(g["type"].as_str().ok_or("type")?, 4);
    let alg = c.algebra();
    let datum = c.datum();
    let nu: Weight = e(serde_json::from_value(g["weight"].clone()))?;
    let sp = e(alg.weight_space(&nu))?;
    let keys: Vec<String> = sp.words().iter().map(|w| datum.word_key(w)).collect();
    ensure(keys == e(serde_json::from_value::<Vec<String>>(g["words"].clone()))?, || format!("words {keys:?}"))?;
    for (a, row) in g["gram"].as_array().ok_or("gram")?.iter().enumerate() {
        for (b, x) in row.as_array().ok_or("gram row")?.iter().enumerate() {
            ensure(sp.gram()[a][b] == laurent(x)?, || format!("gram[{a}][{b}] = {}", sp.gram()[a][b]))?;
        }
    }
    let tb = e(c.table(&nu))?;
    let by_name: BTreeMap<String, usize> = tb.vertices().iter().enumerate().map(|(k, b)| (vertex_label(&c, b), k)).collect();
    let element = |v: &Value| -> Result<HalfElement, String> {
        let mut x = e(alg.zero(&nu))?;
        for (w, coef) in v.as_object().ok_or("element")? {
            x.add_scaled(&ratfunc(coef)?, &e(alg.word(&e(datum.parse_word_key(w))?))?);
        }
        Ok(x)
    };
    for (name, v) in g["up"].as_object().ok_or("up")? {
        let k = *by_name.get(name).ok_or_else(|| format!("no vertex {name}"))?;
        ensure(*tb.up(k) == element(v)?, || format!("G^up({name}) = {}", alg.describe(tb.up(k))))?;
    }
    let prod = e(alg.multiply(&e(alg.generator(0))?, &e(alg.generator(1))?))?;
    let coeffs = e(c.up_coordinates(&prod))?;
    for (name, v) in g["f1_f2_in_up"].as_object().ok_or("f1_f2_in_up")? {
        let k = by_name[name];
        ensure(coeffs[k] == RatFunc::from(laurent(v)?), || format!("f1·f2 on {name} = {}", coeffs[k]))?;
    }
    let t1 = e(c.braid_apply(&e(alg.generator(1))?, 0, Direction::Plus))?;
    let mut want = e(alg.zero(&nu))?;
    for (w, coef) in g["t1_f2"].as_object().ok_or("t1_f2")? {
        want.add_scaled(&RatFunc::from(laurent(coef)?), &e(alg.word(&e(datum.parse_word_key(w))?))?);
    }
    ensure(t1 == want, || format!("T1(f2) = {}", alg.describe(&t1)))?;
    let lz = &g["lusztig"];
    let labels: Vec<String> = e(serde_json::from_value(lz["word"].clone()))?;
    let word = e(datum.parse_word(&labels.join(",")))?;
    let p = e(PbwContext::new(&c, &word, Sign::Plus))?;
    let b = &tb.vertices()[by_name[lz["vertex"].as_str().ok_or("vertex")?]];
    let want: Vec<u32> = e(serde_json::from_value(lz["datum"].clone()))?;
    ensure(p.lusztig_datum(b).tuple == want, || format!("L = {:?}", p.lusztig_datum(b).tuple))?;
    Ok("golden file matches".into())
}

type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        (1, "q-Serre certificate", Duration::from_secs(5), q_serre),
        (2, "duality and involutions", Duration::from_secs(120), duality),
        (3, "dual divided powers of simple roots", Duration::from_secs(60), dual_simple_root),
        (4, "dual Chevalley leading terms", Duration::from_secs(300), mult_dual_chevalley),
        (5, "dual PBW unitriangularity", Duration::from_secs(300), qunip),
        (6, "strategy agreement", Duration::from_secs(300), strategy_agreement),
        (7, "braid calibration", Duration::from_secs(300), braid_calibration),
        (8, "main theorems, finite type", Duration::from_secs(300), || main_theorems(sweep_cases())),
        (9, "main theorems, affine A1(1)", Duration::from_secs(600), || main_theorems(affine_cases())),
        (10, "Ω bijectivity", Duration::from_secs(300), omega),
        (11, "triple intersection", Duration::from_secs(300), triple),
        (12, "A2 golden values", Duration::from_secs(60), golden),
    ];
    let mut failed = 0;
    let start = Instant::now();
    for (n, name, limit, f) in criteria {
        let t = Instant::now();
        let out = f();
        let el = t.elapsed();
        match out {
            Ok(detail) if el <= limit => println!("criterion {n:>2} PASS  {name}: {detail} ({el:.2?}, limit {limit:?})"),
            Ok(detail) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name}: {detail} but took {el:.2?}, limit {limit:?}");
            }
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name}: {why} ({el:.2?})");
            }
        }
    }
    println!("acceptance: {} of 12 criteria passed in {:.2?}", 12 - failed, start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
