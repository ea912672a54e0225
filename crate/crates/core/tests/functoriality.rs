//! Semantics of composed games against composition of semantics.

use compmpg_core::eval::{compose_int, leaf_arrow, sum_int, IntArrow};
use compmpg_core::fat::{denote_leaf, seq_fat, sum_fat, trace_fat, FatDenotation, DEFAULT_LEAF_LIMIT};
use compmpg_core::game::{Arity, OpenGame, RoPG};
use compmpg_core::meager::{fat_to_meager, seq_meager, sum_meager, trace_meager, MeagerDenotation};
use compmpg_core::ops::{seq_bidirectional, seq_rightward, sum_bidirectional, sum_games, trace_game};
use compmpg_core::play::{ropg_denotation, seq_play, sum_play, trace_play};
use compmpg_core::random::{random_game, random_ropg_game, seeded, GameParams};
use rand::Rng;

fn params(rng: &mut impl Rng) -> GameParams {
    GameParams { positions: rng.gen_range(1..=4), max_choices: 3, ..GameParams::default() }
}

fn ropg(rng: &mut impl Rng, m: usize, n: usize, tag: &str) -> RoPG {
    let p = params(rng);
    RoPG::new(random_ropg_game(rng, m, n, &p, tag)).unwrap()
}

fn rightward(rng: &mut impl Rng, m: usize, n: usize, tag: &str) -> OpenGame {
    let p = params(rng);
    random_game(rng, Arity::rightward(m), Arity::rightward(n), &p, tag)
}

fn arity(rng: &mut impl Rng) -> Arity {
    Arity::new(rng.gen_range(0..=2), rng.gen_range(0..=2))
}

fn bidirectional(rng: &mut impl Rng, left: Arity, right: Arity, tag: &str) -> OpenGame {
    let p = params(rng);
    random_game(rng, left, right, &p, tag)
}

fn fat(g: &OpenGame) -> FatDenotation {
    denote_leaf(g, DEFAULT_LEAF_LIMIT).unwrap()
}

#[test]
fn play_graphs_seq_sum_trace() {
    let mut rng = seeded(11);
    for _ in 0..200 {
        let (m, l, n) = (rng.gen_range(0..=3), rng.gen_range(0..=3), rng.gen_range(0..=3));
        let c = ropg(&mut rng, m, l, "c");
        let d = ropg(&mut rng, l, n, "d");
        let cd = RoPG::new(seq_rightward(c.game(), d.game()).unwrap()).unwrap();
        assert_eq!(ropg_denotation(&cd), seq_play(&ropg_denotation(&c), &ropg_denotation(&d)).unwrap());

        let s = RoPG::new(sum_games(c.game(), d.game()).unwrap()).unwrap();
        assert_eq!(ropg_denotation(&s), sum_play(&ropg_denotation(&c), &ropg_denotation(&d)));

        let k = rng.gen_range(0..=2);
        let e = ropg(&mut rng, k + m, k + n, "e");
        let t = RoPG::new(trace_game(e.game(), k).unwrap()).unwrap();
        assert_eq!(ropg_denotation(&t), trace_play(&ropg_denotation(&e), k).unwrap());
    }
}

#[test]
fn rightward_games_seq_sum_trace() {
    let mut rng = seeded(12);
    for _ in 0..150 {
        let (m, l, n) = (rng.gen_range(0..=2), rng.gen_range(0..=2), rng.gen_range(0..=2));
        let a = rightward(&mut rng, m, l, "a");
        let b = rightward(&mut rng, l, n, "b");
        assert_eq!(fat(&seq_rightward(&a, &b).unwrap()), seq_fat(&fat(&a), &fat(&b)).unwrap());
        assert_eq!(fat(&sum_games(&a, &b).unwrap()), sum_fat(&fat(&a), &fat(&b)));
        let k = rng.gen_range(0..=2);
        let e = rightward(&mut rng, k + m, k + n, "e");
        assert_eq!(fat(&trace_game(&e, k).unwrap()), trace_fat(&fat(&e), k).unwrap());
    }
}

#[test]
fn bidirectional_games_seq_sum() {
    let mut rng = seeded(13);
    for _ in 0..150 {
        let (x, y, z, w) = (arity(&mut rng), arity(&mut rng), arity(&mut rng), arity(&mut rng));
        let a = bidirectional(&mut rng, x, y, "a");
        let b = bidirectional(&mut rng, y, z, "b");
        let c = bidirectional(&mut rng, z, w, "c");
        let sem = |g: &OpenGame| -> IntArrow<FatDenotation> { leaf_arrow(g, DEFAULT_LEAF_LIMIT).unwrap() };

        let ab = seq_bidirectional(&a, &b).unwrap();
        let composed = compose_int(&sem(&a), &sem(&b)).unwrap();
        assert_eq!(sem(&ab), composed);

        let ac = sum_bidirectional(&a, &c).unwrap();
        assert_eq!(sem(&ac), sum_int(&sem(&a), &sem(&c)).unwrap());
    }
}

#[test]
fn pruning_commutes_with_operations() {
    let mut rng = seeded(14);
    let prune = fat_to_meager;
    for _ in 0..200 {
        let (m, l, n) = (rng.gen_range(0..=2), rng.gen_range(0..=2), rng.gen_range(0..=2));
        let (fa, fb) = (fat(&rightward(&mut rng, m, l, "a")), fat(&rightward(&mut rng, l, n, "b")));
        let (ma, mb): (MeagerDenotation, MeagerDenotation) = (prune(&fa), prune(&fb));
        assert_eq!(prune(&seq_fat(&fa, &fb).unwrap()), seq_meager(&ma, &mb).unwrap());
        assert_eq!(prune(&sum_fat(&fa, &fb)), sum_meager(&ma, &mb));
        let k = rng.gen_range(0..=2);
        let fe = fat(&rightward(&mut rng, k + m, k + n, "e"));
        assert_eq!(prune(&trace_fat(&fe, k).unwrap()), trace_meager(&prune(&fe), k).unwrap());
    }
}
