mod common;

use common::{grid_die, r, rng};
use proptest::prelude::*;
use tridice_core::dice::{cyclic_representatives, star, Die};
use tridice_core::tournaments::{
    assemble_four_dice, classify3, classify4, cycle_probabilities, four_cycle_report, probability_report,
    tournament_of_dice, TournamentClass3, TournamentClass4,
};
use tridice_core::{Rational, Tournament, TournamentOutcome};

fn tournament_strategy(size: usize) -> impl Strategy<Value = Tournament> {
    (0..1usize << (size * (size - 1) / 2)).prop_map(move |bits| {
        let mut edges = Vec::new();
        let mut b = 0;
        for i in 0..size {
            for j in i + 1..size {
                edges.push(if bits >> b & 1 == 1 { (i, j) } else { (j, i) });
                b += 1;
            }
        }
        Tournament::from_edges(size, &edges).unwrap()
    })
}

proptest! {
    #[test]
    fn class_is_invariant_under_relabeling(t in tournament_strategy(4), perm in Just([0usize, 1, 2, 3]).prop_shuffle()) {
        prop_assert_eq!(classify4(&t.relabeled(&perm)).unwrap(), classify4(&t).unwrap());
    }

    #[test]
    fn reversal_swaps_winner_and_loser(t in tournament_strategy(4)) {
        prop_assert_eq!(classify4(&t.reversed()).unwrap(), classify4(&t).unwrap().dual());
    }

    #[test]
    fn three_vertex_reversal_keeps_class(t in tournament_strategy(3)) {
        prop_assert_eq!(classify3(&t.reversed()).unwrap(), classify3(&t).unwrap());
    }
}

#[test]
fn exhaustive_counts() {
    let three = Tournament::all(3);
    assert_eq!(three.len(), 8);
    let count3 = |c| three.iter().filter(|t| classify3(t).unwrap() == c).count();
    assert_eq!(count3(TournamentClass3::TransitiveChain), 6);
    assert_eq!(count3(TournamentClass3::Cycle), 2);

    let four = Tournament::all(4);
    assert_eq!(four.len(), 64);
    let count4 = |c| four.iter().filter(|t| classify4(t).unwrap() == c).count();
    assert_eq!(count4(TournamentClass4::TransitiveChain), 24);
    assert_eq!(count4(TournamentClass4::FourCycle), 24);
    assert_eq!(count4(TournamentClass4::WinnerPlusThreeCycle), 8);
    assert_eq!(count4(TournamentClass4::LoserPlusThreeCycle), 8);
}

#[test]
fn starred_dice_reverse_the_tournament() {
    // T(D*, C*, B*, A*) has i -> j exactly when T(A, B, C, D) has (3-j) -> (3-i).
    let mut g = rng(11);
    let mut seen = 0;
    for _ in 0..5000 {
        let d: Vec<Die> = (0..4).map(|_| grid_die(&mut g, 600)).collect();
        let starred: Vec<Die> = d.iter().rev().map(star).collect();
        let (TournamentOutcome::Tournament(t), TournamentOutcome::Tournament(s)) =
            (tournament_of_dice(&d).unwrap(), tournament_of_dice(&starred).unwrap())
        else {
            continue;
        };
        seen += 1;
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert_eq!(s.beats(i, j), t.beats(3 - j, 3 - i));
                }
            }
        }
        assert_eq!(classify4(&s).unwrap(), classify4(&t).unwrap().dual());
    }
    assert!(seen > 4000);
}

#[test]
fn nine_representatives_and_grand_total() {
    let reps = cyclic_representatives();
    let words: Vec<String> = reps.iter().map(ToString::to_string).collect();
    assert_eq!(words, ["1123", "1132", "1213", "1223", "1232", "1233", "1322", "1323", "1332"].map(String::from));
    let probs = cycle_probabilities(&reps).unwrap();
    let table = [
        ("1123", "229/322560"),
        ("1132", "691507/294912000"),
        ("1213", "40913/15482880"),
        ("1223", "5431/8064000"),
        ("1232", "32299/16515072"),
        ("1322", "38929/18432000"),
        ("1233", "229/322560"),
        ("1323", "40913/15482880"),
        ("1332", "691507/294912000"),
    ];
    for (w, e) in table {
        let i = words.iter().position(|x| x == w).unwrap();
        assert_eq!(probs[i], r(e), "G_{w}");
    }
    let total: Rational = probs.iter().sum();
    assert_eq!(Rational::from(4) * total, r("99930571/1548288000"));
    assert_eq!(four_cycle_report().unwrap().p_g, r("99930571/1548288000"));
}

#[test]
fn report_satisfies_deletion_equations() {
    let p = probability_report().unwrap();
    p.check().unwrap();
    let half = Rational::frac(1, 2);
    let lhs3 = &p.p_4line + &p.p_square * &half + (&p.p_winner_tri + &p.p_loser_tri) * Rational::frac(3, 4);
    let lhs_t = &p.p_square * &half + (&p.p_winner_tri + &p.p_loser_tri) * Rational::frac(1, 4);
    assert_eq!(lhs3, p.p_3line);
    assert_eq!(lhs_t, p.p_triangle);
    assert_eq!(p.p_winner_tri, p.p_loser_tri);
    assert_eq!(p, assemble_four_dice(&r("99930571/1548288000"), &r("973/1280"), &r("307/1280")).unwrap());
}

#[test]
fn report_json_round_trips_exact_values() {
    let p = probability_report().unwrap();
    let json = serde_json::to_value(&p).unwrap();
    for (name, value) in p.entries() {
        let exact: Rational = json[name]["exact"].as_str().unwrap().parse().unwrap();
        assert_eq!(&exact, value);
        let decimal: f64 = json[name]["decimal"].as_str().unwrap().parse().unwrap();
        assert!((decimal - value.to_f64()).abs() < 1e-9);
    }
    assert_eq!(json["p_triangle"]["decimal"], "0.239843750");
}
