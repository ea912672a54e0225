//! Acceptance run: one PASS/FAIL line per criterion. Tolerances and sample
//! counts are fixed here.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use compmpg::gen::{gen_layered, gen_mining, gen_random_closed, LayeredParams, MiningParams};
use compmpg::json::{projection_json, tvalue_from_json};
use compmpg::runner::{bench_rows, compare, solve, OracleKind, SolveOptions};
use compmpg::syntax::{parse, parse_diagram, print_term, ParseError};
use compmpg_core::diagram::resolve_sharing;
use compmpg_core::eval::{compose_int, evaluate, flatten, leaf_arrow, sum_int, IntArrow};
use compmpg_core::fat::{denote_leaf, entrance_denotation_direct, seq_fat, sum_fat, trace_fat, DEFAULT_LEAF_LIMIT};
use compmpg_core::game::{mp_check_liminf, Arity, OpenGame, RoPG};
use compmpg_core::meager::{
    fat_to_meager, leq_play, lifted_leq, maximal, seq_meager, sum_meager, trace_meager,
};
use compmpg_core::ops::{seq_bidirectional, seq_rightward, sum_bidirectional, sum_games, trace_game};
use compmpg_core::oracle::{brute_force_solve, DEFAULT_BRUTE_FORCE_LIMIT};
use compmpg_core::play::{monad_mult, ropg_denotation, seq_play, sum_play, trace_play};
use compmpg_core::random::{
    random_game, random_play_arrow, random_ropg_game, random_term, random_weight, seeded, DiagramParams, GameParams,
    SeededRng,
};
use compmpg_core::{FatDenotation, MeagerDenotation, Outcome, PlayArrow, Status, TValue, Weight};
use rand::Rng;
use serde_json::Value;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn manifest(rel: &str) -> String {
    format!("{}/{rel}", env!("CARGO_MANIFEST_DIR"))
}

fn w(n: i128, d: i128) -> Weight {
    Weight::new(n, d)
}

// 1. The example open game through the binary.
fn example_reproduction() -> Check {
    let path = manifest("data/open_example.mpg");
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_compmpg"))
        .args(["solve", &path, "--semantics", "fat"])
        .output()
        .map_err(|e| e.to_string())?;
    let wall = start.elapsed();
    ensure(out.status.success(), || format!("exit {:?}: {}", out.status, String::from_utf8_lossy(&out.stdout)))?;
    let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let entrances = v["entrances"].as_array().ok_or("no entrances")?;
    ensure(entrances.len() == 4, || format!("{} entrances", entrances.len()))?;
    ensure(entrances.iter().all(|e| e["status"] == "pending"), || format!("statuses {v}"))?;

    let set = |xs: &[TValue]| xs.iter().copied().collect::<BTreeSet<_>>();
    let expected1: BTreeSet<_> = [set(&[Outcome::Exit(0)])].into();
    // Exits: rhs.r1, rhs.r2, lhs.l1.
    let expected2: BTreeSet<_> = [
        set(&[Outcome::Weighted(w(3, 5), 2), Outcome::Weighted(w(-5, 2), 1)]),
        set(&[Outcome::WinE, Outcome::Weighted(w(-5, 2), 1)]),
    ]
    .into();
    let decode = |d: &Value| -> Option<BTreeSet<BTreeSet<TValue>>> {
        d.as_array()?
            .iter()
            .map(|s| s.as_array()?.iter().map(tvalue_from_json).collect::<Option<BTreeSet<_>>>())
            .collect()
    };
    let game = match parse(&std::fs::read_to_string(&path).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?.kind {
        compmpg_core::TermKind::Leaf(g) => g,
        _ => return Err("example is not a single leaf".into()),
    };
    for (i, exp) in [(0, &expected1), (1, &expected2)] {
        let d = &entrances[i]["denotation"];
        ensure(decode(d).as_ref() == Some(exp), || format!("entrance {}: {d}", i + 1))?;
        // Canonical order: the printed array is exactly the sorted set.
        ensure(*d == projection_json(exp), || format!("entrance {} order: {d}", i + 1))?;
        ensure(entrance_denotation_direct(&game, i) == *exp, || format!("direct oracle differs on {}", i + 1))?;
    }
    ensure(wall < Duration::from_secs(1), || format!("took {wall:?}"))?;
    Ok(format!("4 pending, exact projections, {:.1} ms", wall.as_secs_f64() * 1e3))
}

// 2. Random closed diagrams against brute force.
fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let mut counts = [0usize; 2];
    for seed in 0..500 {
        let dag = resolve_sharing(&gen_random_closed(seed, 12, (-5, 5))).map_err(|e| e.to_string())?;
        let flat = flatten(&dag).map_err(|e| e.to_string())?;
        ensure(flat.positions().len() <= 12, || format!("seed {seed}: {} positions", flat.positions().len()))?;
        let report = compare(&dag, &SolveOptions::default(), OracleKind::Brute, None).map_err(|e| format!("seed {seed}: {e}"))?;
        let brute = brute_force_solve(&flat, DEFAULT_BRUTE_FORCE_LIMIT).map_err(|e| e.to_string())?;
        ensure(report.compositional.statuses == brute, || format!("seed {seed}: disagreement"))?;
        counts[usize::from(brute[0] == Status::Winning)] += 1;
    }
    let wall = start.elapsed();
    ensure(wall < Duration::from_secs(60), || format!("took {wall:?}"))?;
    Ok(format!("500/500 agree ({} winning, {} losing), {:.1} s", counts[1], counts[0], wall.as_secs_f64()))
}

fn small_params(rng: &mut SeededRng) -> GameParams {
    GameParams { positions: rng.gen_range(1..=4), max_choices: 3, ..GameParams::default() }
}

fn ropg(rng: &mut SeededRng, m: usize, n: usize) -> RoPG {
    let p = small_params(rng);
    RoPG::new(random_ropg_game(rng, m, n, &p, "p")).expect("no choices")
}

fn rightward(rng: &mut SeededRng, m: usize, n: usize) -> OpenGame {
    let p = small_params(rng);
    random_game(rng, Arity::rightward(m), Arity::rightward(n), &p, "g")
}

fn fat(g: &OpenGame) -> FatDenotation {
    denote_leaf(g, DEFAULT_LEAF_LIMIT).expect("small leaf")
}

// 3. Semantics of composed games equals composed semantics.
fn functoriality() -> Check {
    let mut rng = seeded(3);
    let n = 150;
    let mut fails = Vec::new();
    for k in 0..n {
        let (m, l, o) = (rng.gen_range(0..=3), rng.gen_range(0..=3), rng.gen_range(0..=3));
        let (c, d) = (ropg(&mut rng, m, l), ropg(&mut rng, l, o));
        let cd = RoPG::new(seq_rightward(c.game(), d.game()).unwrap()).unwrap();
        if ropg_denotation(&cd) != seq_play(&ropg_denotation(&c), &ropg_denotation(&d)).unwrap() {
            fails.push(format!("roPG ; #{k}"));
        }
        let s = RoPG::new(sum_games(c.game(), d.game()).unwrap()).unwrap();
        if ropg_denotation(&s) != sum_play(&ropg_denotation(&c), &ropg_denotation(&d)) {
            fails.push(format!("roPG (+) #{k}"));
        }
        let t = rng.gen_range(0..=2);
        let e = ropg(&mut rng, t + m, t + o);
        let te = RoPG::new(trace_game(e.game(), t).unwrap()).unwrap();
        if ropg_denotation(&te) != trace_play(&ropg_denotation(&e), t).unwrap() {
            fails.push(format!("roPG tr #{k}"));
        }
    }
    for k in 0..n {
        let (m, l, o) = (rng.gen_range(0..=2), rng.gen_range(0..=2), rng.gen_range(0..=2));
        let (a, b) = (rightward(&mut rng, m, l), rightward(&mut rng, l, o));
        if fat(&seq_rightward(&a, &b).unwrap()) != seq_fat(&fat(&a), &fat(&b)).unwrap() {
            fails.push(format!("roMPG ; #{k}"));
        }
        if fat(&sum_games(&a, &b).unwrap()) != sum_fat(&fat(&a), &fat(&b)) {
            fails.push(format!("roMPG (+) #{k}"));
        }
        let t = rng.gen_range(0..=2);
        let e = rightward(&mut rng, t + m, t + o);
        if fat(&trace_game(&e, t).unwrap()) != trace_fat(&fat(&e), t).unwrap() {
            fails.push(format!("roMPG tr #{k}"));
        }
    }
    let arity = |rng: &mut SeededRng| Arity::new(rng.gen_range(0..=2), rng.gen_range(0..=2));
    let sem = |g: &OpenGame| -> IntArrow<FatDenotation> { leaf_arrow(g, DEFAULT_LEAF_LIMIT).unwrap() };
    for k in 0..n {
        let (x, y, z, v) = (arity(&mut rng), arity(&mut rng), arity(&mut rng), arity(&mut rng));
        let mut game = |l, r| {
            let p = small_params(&mut rng);
            random_game(&mut rng, l, r, &p, "b")
        };
        let (a, b, c) = (game(x, y), game(y, z), game(z, v));
        if sem(&seq_bidirectional(&a, &b).unwrap()) != compose_int(&sem(&a), &sem(&b)).unwrap() {
            fails.push(format!("oMPG ; #{k}"));
        }
        if sem(&sum_bidirectional(&a, &c).unwrap()) != sum_int(&sem(&a), &sem(&c)).unwrap() {
            fails.push(format!("oMPG (+) #{k}"));
        }
    }
    ensure(fails.is_empty(), || format!("{} failures, first {}", fails.len(), fails[0]))?;
    Ok(format!("{n} cases each for 8 operation/level pairs, 0 failures"))
}

// 4. Decomposition of play graphs: the walked outcome of a composed graph
// equals the table and traced-denotation computations.
fn decomposition() -> Check {
    let mut rng = seeded(4);
    let mut fails = 0;
    let mut weighted = 0;
    for _ in 0..200 {
        let (m, l, o) = (rng.gen_range(0..=3), rng.gen_range(0..=3), rng.gen_range(0..=3));
        let (c, d) = (ropg(&mut rng, m, l), ropg(&mut rng, l, o));
        let composed = ropg_denotation(&RoPG::new(seq_rightward(c.game(), d.game()).unwrap()).unwrap());
        let parts = seq_play(&ropg_denotation(&c), &ropg_denotation(&d)).unwrap();
        for i in 0..m {
            fails += usize::from(composed.at(i) != parts.at(i));
            weighted += usize::from(matches!(composed.at(i), Outcome::Weighted(..)));
        }
    }
    for _ in 0..200 {
        let (t, m, o) = (rng.gen_range(1..=3), rng.gen_range(0..=2), rng.gen_range(0..=2));
        let e = ropg(&mut rng, t + m, t + o);
        let traced = ropg_denotation(&RoPG::new(trace_game(e.game(), t).unwrap()).unwrap());
        let parts = trace_play(&ropg_denotation(&e), t).unwrap();
        for i in 0..m {
            fails += usize::from(traced.at(i) != parts.at(i));
        }
    }
    ensure(fails == 0, || format!("{fails} entrances differ"))?;
    Ok(format!("200 sequential + 200 traced play graphs, {weighted} weighted outcomes, 0 failures"))
}

// 5. Meager semantics decides like fat semantics, and pruning commutes
// with the operations.
fn meager_soundness() -> Check {
    let mut rng = seeded(5);
    for k in 0..200 {
        let p = DiagramParams { positions: rng.gen_range(1..=8), ..DiagramParams::default() };
        let t = compmpg_core::random::random_closed_diagram(&mut rng, &p);
        let dag = resolve_sharing(&t).unwrap();
        let (f, _) = evaluate::<FatDenotation>(&dag, DEFAULT_LEAF_LIMIT).map_err(|e| e.to_string())?;
        let (m, _) = evaluate::<MeagerDenotation>(&dag, DEFAULT_LEAF_LIMIT).map_err(|e| e.to_string())?;
        ensure(f.classify_all() == m.classify_all(), || format!("diagram #{k}"))?;
        ensure(m.den == fat_to_meager(&f.den), || format!("diagram #{k}: root not pruned fat"))?;
    }
    let prune = fat_to_meager;
    for k in 0..200 {
        let (m, l, o) = (rng.gen_range(0..=2), rng.gen_range(0..=2), rng.gen_range(0..=2));
        let (fa, fb) = (fat(&rightward(&mut rng, m, l)), fat(&rightward(&mut rng, l, o)));
        let (ma, mb) = (prune(&fa), prune(&fb));
        ensure(prune(&seq_fat(&fa, &fb).unwrap()) == seq_meager(&ma, &mb).unwrap(), || format!("; #{k}"))?;
        ensure(prune(&sum_fat(&fa, &fb)) == sum_meager(&ma, &mb), || format!("(+) #{k}"))?;
        let t = rng.gen_range(0..=2);
        let fe = fat(&rightward(&mut rng, t + m, t + o));
        ensure(prune(&trace_fat(&fe, t).unwrap()) == trace_meager(&prune(&fe), t).unwrap(), || format!("tr #{k}"))?;
    }
    Ok("200 closed diagrams identical; 200 pairs per operation commute".into())
}

fn nested<X>(rng: &mut SeededRng, mut inner: impl FnMut(&mut SeededRng) -> X) -> Outcome<X> {
    match rng.gen_range(0..4) {
        0 => Outcome::WinE,
        1 => Outcome::WinA,
        2 => Outcome::Exit(inner(rng)),
        _ => {
            let r = random_weight(rng, (-6, 6));
            Outcome::Weighted(r, inner(rng))
        }
    }
}

fn small_arrow(rng: &mut SeededRng) -> PlayArrow {
    let mut v = || -> TValue {
        match rng.gen_range(0..4) {
            0 => Outcome::WinE,
            1 => Outcome::WinA,
            _ => Outcome::Weighted(Weight::from_int(rng.gen_range(0..=2)), 0),
        }
    };
    let map = vec![v(), v()];
    PlayArrow::new(1, map).unwrap()
}

// 6. Monad laws, trace axioms and order laws.
fn algebraic_laws() -> Check {
    let mut rng = seeded(6);
    let leaf = |r: &mut SeededRng| r.gen_range(0..4usize);
    for k in 0..1000 {
        let t = nested(&mut rng, leaf);
        ensure(monad_mult(Outcome::Exit(t)) == t && monad_mult(t.map(Outcome::Exit)) == t, || format!("unit #{k}"))?;
        let z = nested(&mut rng, |r| nested(r, |r| nested(r, leaf)));
        ensure(monad_mult(monad_mult(z)) == monad_mult(z.map(monad_mult)), || format!("assoc #{k}"))?;
    }
    let id = PlayArrow::identity;
    let arrow = |rng: &mut SeededRng, a, b| random_play_arrow(rng, a, b, (-4, 4));
    let tr = |f: &PlayArrow, l| trace_play(f, l).unwrap();
    let seq = |f: &PlayArrow, g: &PlayArrow| seq_play(f, g).unwrap();
    for n in 1..=3 {
        ensure(tr(&PlayArrow::swap(n, n), n) == id(n), || format!("yanking {n}"))?;
    }
    for k in 0..500 {
        let d: Vec<usize> = (0..5).map(|_| rng.gen_range(0..=2)).collect();
        let (a, b, m, n, p) = (d[0], d[1], d[2], d[3], d[4]);
        let f = arrow(&mut rng, a + b + m, a + b + n);
        ensure(tr(&f, 0) == f, || format!("vanishing 0 #{k}"))?;
        ensure(tr(&f, a + b) == tr(&tr(&f, b), a), || format!("vanishing #{k}"))?;
        let f = arrow(&mut rng, a + m, a + n);
        let (g, h) = (arrow(&mut rng, p, m), arrow(&mut rng, n, p));
        ensure(tr(&seq(&sum_play(&id(a), &g), &f), a) == seq(&g, &tr(&f, a)), || format!("naturality in #{k}"))?;
        ensure(tr(&seq(&f, &sum_play(&id(a), &h)), a) == seq(&tr(&f, a), &h), || format!("naturality out #{k}"))?;
        let f = arrow(&mut rng, a + m, b + n);
        let g = arrow(&mut rng, b, a);
        let lhs = tr(&seq(&f, &sum_play(&g, &id(n))), a);
        ensure(lhs == tr(&seq(&sum_play(&g, &id(m)), &f), b), || format!("dinaturality #{k}"))?;
        let f = arrow(&mut rng, a + m, a + n);
        let g = arrow(&mut rng, p, b);
        ensure(sum_play(&tr(&f, a), &g) == tr(&sum_play(&f, &g), a), || format!("superposing #{k}"))?;
    }
    let leq = |f: &PlayArrow, g: &PlayArrow| leq_play(f, g).unwrap();
    let mut chains = 0;
    for k in 0..1000 {
        let (f, g, h) = (small_arrow(&mut rng), small_arrow(&mut rng), small_arrow(&mut rng));
        ensure(leq(&f, &f), || format!("reflexivity #{k}"))?;
        ensure(!(leq(&f, &g) && leq(&g, &f)) || f == g, || format!("antisymmetry #{k}"))?;
        if leq(&f, &g) && leq(&g, &h) {
            chains += 1;
            ensure(leq(&f, &h), || format!("transitivity #{k}"))?;
        }
        let chain = |rng: &mut SeededRng| -> BTreeSet<PlayArrow> {
            let n = rng.gen_range(1..=3);
            maximal(&(0..n).map(|_| small_arrow(rng)).collect()).unwrap()
        };
        let (s, t, u) = (chain(&mut rng), chain(&mut rng), chain(&mut rng));
        ensure(lifted_leq(&s, &s), || format!("lifted reflexivity #{k}"))?;
        ensure(!(lifted_leq(&s, &t) && lifted_leq(&t, &s)) || s == t, || format!("lifted antisymmetry #{k}"))?;
        ensure(!(lifted_leq(&s, &t) && lifted_leq(&t, &u)) || lifted_leq(&s, &u), || format!("lifted transitivity #{k}"))?;
    }
    ensure(chains > 50, || format!("only {chains} comparable chains"))?;
    Ok(format!("1000 monad cases, 500 per trace axiom, 1000 per order ({chains} chains)"))
}

// 7. Sign of the cycle sum against a long running average.
fn cycle_sign() -> Check {
    let mut rng = seeded(7);
    let (mut decided, mut boundary) = (0, 0);
    for k in 0..300 {
        let prefix: Vec<Weight> = (0..rng.gen_range(0..6)).map(|_| random_weight(&mut rng, (-9, 9))).collect();
        let mut cycle: Vec<Weight> = (0..rng.gen_range(1..8)).map(|_| random_weight(&mut rng, (-9, 9))).collect();
        if k % 6 == 0 {
            let rest: Weight = cycle[1..].iter().copied().sum();
            cycle[0] = -rest;
        }
        let mean = cycle.iter().map(Weight::to_f64).sum::<f64>() / cycle.len() as f64;
        let all = prefix.iter().chain(cycle.iter().cycle());
        let avg = all.take(100_000).map(Weight::to_f64).sum::<f64>() / 1e5;
        let wins = mp_check_liminf(&prefix, &cycle);
        let exact_zero = cycle.iter().copied().sum::<Weight>() == Weight::ZERO;
        if exact_zero {
            boundary += 1;
            ensure(wins, || format!("#{k}: zero-mean cycle not won by E"))?;
        } else if mean.abs() >= 1e-2 {
            decided += 1;
            ensure(wins == (avg >= 0.0), || format!("#{k}: mean {mean}, average {avg}"))?;
        }
    }
    ensure(boundary >= 40, || format!("only {boundary} boundary cases"))?;
    Ok(format!("{decided} decided plays agree, {boundary} zero-mean plays won by E"))
}

fn median(mut xs: Vec<Duration>) -> Duration {
    xs.sort();
    xs[xs.len() / 2]
}

fn solve_time(dag: &compmpg_core::SharedDag, reps: usize) -> Duration {
    let opts = SolveOptions { winners_only: true, ..SolveOptions::default() };
    median((0..reps).map(|_| solve(dag, &opts).expect("mining solves").wall).collect())
}

fn mining(seed: u64, floors: usize) -> compmpg_core::SharedDag {
    resolve_sharing(&gen_mining(seed, &MiningParams { floors, ..MiningParams::default() })).expect("well typed")
}

// 8. Sharing keeps mining cheap; large mining against the progress measure.
fn sharing_performance() -> Check {
    let (mut t4, mut t256) = (Duration::ZERO, Duration::ZERO);
    for seed in 0..10 {
        let (small, large) = (mining(seed, 4), mining(seed, 256));
        ensure(large.flattened_positions() == 64 * small.flattened_positions() - 63, || "sizes".into())?;
        t4 += solve_time(&small, 31);
        t256 += solve_time(&large, 31);
    }
    let ratio = t256.as_secs_f64() / t4.as_secs_f64();
    ensure(ratio <= 4.0, || format!("time(256)/time(4) = {ratio:.2}"))?;

    let opts = SolveOptions::default();
    let mut agree = 0;
    for seed in 0..20 {
        let r = compare(&mining(seed, 256), &opts, OracleKind::Pm, None).map_err(|e| e.to_string())?;
        agree += usize::from(r.agreement() == Some(true));
    }
    ensure(agree == 20, || format!("{agree}/20 agree at 256 floors"))?;

    let (mut faster, mut slowest) = (0, Duration::ZERO);
    let mut positions = u128::MAX;
    for seed in 0..20 {
        let dag = mining(seed, 2560);
        positions = positions.min(dag.flattened_positions());
        let (_, rep) = bench_rows("m", &dag, &opts, Some((OracleKind::Pm, 1.0))).map_err(|e| e.to_string())?;
        let rep = rep.expect("oracle ran");
        slowest = slowest.max(rep.compositional.wall);
        faster += usize::from(rep.oracle.statuses.is_none() || rep.oracle.wall > rep.compositional.wall);
    }
    ensure(positions >= 100_000, || format!("only {positions} positions"))?;
    ensure(slowest < Duration::from_secs(30), || format!("slowest solve {slowest:?}"))?;
    ensure(faster >= 16, || format!("faster than progress measure on {faster}/20"))?;
    Ok(format!(
        "time ratio 256/4 floors = {ratio:.2}; {positions} positions solved in at most {:.1} ms; faster than progress measure on {faster}/20",
        slowest.as_secs_f64() * 1e3
    ))
}

fn corpus_term(rng: &mut SeededRng, k: u64) -> compmpg_core::Term {
    match k % 10 {
        0 => gen_mining(k, &MiningParams { floors: rng.gen_range(1..=9), floor_positions: 4, ..Default::default() }),
        1 => gen_layered(k, &LayeredParams { layers: rng.gen_range(1..=5), leaf_positions: 3, ..Default::default() }),
        _ => {
            let l = Arity::new(rng.gen_range(0..=2), rng.gen_range(0..=2));
            let r = if rng.gen_bool(0.4) { l } else { Arity::new(rng.gen_range(0..=2), rng.gen_range(0..=2)) };
            let p = DiagramParams { positions: rng.gen_range(0..=8), ..DiagramParams::default() };
            random_term(rng, l, r, &p)
        }
    }
}

// 9. Printing then parsing is the identity; errors are located.
fn parser_round_trip() -> Check {
    let mut rng = seeded(9);
    for k in 0..1000 {
        let t = corpus_term(&mut rng, k);
        let src = print_term(&t);
        let back = parse(&src).map_err(|e| format!("#{k}: {e}\n{src}"))?;
        ensure(back == t, || format!("#{k}: term changed\n{src}"))?;
        ensure(print_term(&back) == src, || format!("#{k}: text changed"))?;
    }
    let cases: [(&str, usize, usize); 8] = [
        ("id_r ;\n  (+) id_r", 2, 3),
        ("let a = id_r in\n  a ;\n   cap", 3, 4),
        ("id_r (+)\n tr[3](id_r)", 2, 2),
        ("x ; id_r", 1, 1),
        ("game (1,0) -> (1,0) {\n  pos a : E 1;\n  edge lhs.r1 -> a;\n  edge a -> rhs.q1;\n}", 4, 17),
        ("tr[1](id_r", 1, 11),
        ("game (1,0) -> (1,0) {\n pos a : E 1/0;\n}", 2, 14),
        ("id_r\n\n   id_r", 3, 4),
    ];
    for (src, line, col) in cases {
        let e = match parse_diagram(src) {
            Ok(_) => return Err(format!("{src:?} parsed")),
            Err(e) => e,
        };
        let s = e.span();
        ensure((s.line, s.col) == (line, col), || format!("{src:?}: {e} at {}:{}, expected {line}:{col}", s.line, s.col))?;
        ensure(matches!(e, ParseError::Syntax { .. } | ParseError::Diagram(_) | ParseError::InvalidGame { .. }), || e.to_string())?;
    }
    Ok(format!("1000 terms round-trip; {} malformed inputs located", cases.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("example reproduction", example_reproduction),
        ("oracle equivalence", oracle_equivalence),
        ("functoriality", functoriality),
        ("decomposition", decomposition),
        ("meager soundness", meager_soundness),
        ("algebraic laws", algebraic_laws),
        ("cycle sign", cycle_sign),
        ("sharing performance", sharing_performance),
        ("parser round trip", parser_round_trip),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = std::panic::catch_unwind(check).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}) [{secs:.2} s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why}) [{secs:.2} s]", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
