mod common;

use common::{all_faces_distinct, grid_die, r, rng};
use proptest::prelude::*;
use tridice_core::dice::{
    build_e, build_g, dominance, dominance_mode, is_degenerate_sigma, star, Die, DominanceOutcome,
};
use tridice_core::tournaments::cycle_probability;
use tridice_core::{Rational, SigmaWord};

fn w(s: &str) -> SigmaWord {
    s.parse().unwrap()
}

fn die_strategy() -> impl Strategy<Value = Die> {
    (0i64..=240, 0i64..=240)
        .prop_filter("inside Q", |&(a, b)| a <= b && 2 * a + 2 * b >= 240 && 2 * a + 4 * b <= 720)
        .prop_map(|(a, b)| Die::from_pair(Rational::frac(a, 240), Rational::frac(b, 240)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn coordinatewise_characterization(a in die_strategy(), b in die_strategy()) {
        prop_assume!(all_faces_distinct(&a, &b));
        let wins = (0..3).filter(|&i| a.face(i) > b.face(i)).count();
        let dominates = dominance(&a, &b) == DominanceOutcome::FirstDominates;
        prop_assert_eq!(dominates, wins == 2);
        prop_assert_eq!(dominates, dominance_mode(&a, &b).unwrap().is_some());
        prop_assert_ne!(dominance(&a, &b), DominanceOutcome::Tie);
    }

    #[test]
    fn star_reverses_dominance(a in die_strategy(), b in die_strategy()) {
        prop_assert_eq!(star(&star(&a)), a.clone());
        prop_assert_eq!(dominance(&star(&b), &star(&a)), dominance(&a, &b));
        let s = star(&a);
        let sum: Rational = s.faces().iter().sum();
        prop_assert_eq!(sum, Rational::frac(3, 2));
        prop_assert!(s.faces()[0] <= s.faces()[1] && s.faces()[1] <= s.faces()[2]);
    }
}

#[test]
fn same_mode_is_transitive() {
    let mut g = rng(2);
    let mut checked = 0;
    while checked < 2000 {
        let (a, b, c) = (grid_die(&mut g, 240), grid_die(&mut g, 240), grid_die(&mut g, 240));
        if !(all_faces_distinct(&a, &b) && all_faces_distinct(&b, &c) && all_faces_distinct(&a, &c)) {
            continue;
        }
        let ab = dominance_mode(&a, &b).unwrap();
        if ab.is_some() && ab == dominance_mode(&b, &c).unwrap() {
            assert_eq!(dominance_mode(&a, &c).unwrap(), ab, "{a} {b} {c}");
            checked += 1;
        }
    }
}

#[test]
fn three_dice_permutation_classes() {
    for s in ["123", "231", "312"] {
        assert_eq!(cycle_probability(&w(s)).unwrap(), r("23/1800"), "E_{s}");
    }
    for s in ["132", "321", "213"] {
        assert_eq!(cycle_probability(&w(s)).unwrap(), r("3133/115200"), "E_{s}");
    }
}

#[test]
fn repeated_letters_give_empty_three_cycles() {
    for s in ["112", "111", "233", "313"] {
        let e = build_e(&w(s)).unwrap();
        assert!(e.dimension() < 6, "E_{s}");
        assert_eq!(e.volume().unwrap(), Rational::zero());
    }
}

#[test]
fn cyclic_rotations_share_volume() {
    for rep in ["1123", "1322"] {
        let vols: Vec<Rational> =
            w(rep).rotations().iter().map(|s| build_g(s).unwrap().volume().unwrap()).collect();
        assert!(vols.iter().all(|v| *v == vols[0]), "{rep}: {vols:?}");
    }
    let e: Vec<Rational> = ["123", "231", "312"].iter().map(|s| build_e(&w(s)).unwrap().volume().unwrap()).collect();
    assert!(e.iter().all(|v| *v == e[0]));
}

#[test]
fn star_image_volume_equalities() {
    for (a, b) in [("1123", "1233"), ("1132", "1332"), ("1213", "1323"), ("1132", "2133")] {
        assert_eq!(cycle_probability(&w(a)).unwrap(), cycle_probability(&w(b)).unwrap(), "{a} vs {b}");
    }
}

#[test]
fn degenerate_words_are_lower_dimensional() {
    for s in SigmaWord::all(4).iter().filter(|s| is_degenerate_sigma(s)) {
        assert!(build_g(s).unwrap().dimension() < 8, "G_{s}");
    }
}

#[test]
fn star_maps_g1123_onto_g1233_pointwise() {
    // (A, B, C, D) in G_1123  =>  (A*, D*, C*, B*) in G_1233
    let mut g = rng(9);
    let mut found = 0;
    for _ in 0..200_000 {
        let d: Vec<Die> = (0..4).map(|_| grid_die(&mut g, 120)).collect();
        let modes = [(0, 1, 1), (1, 2, 1), (2, 3, 2), (3, 0, 3)];
        let in_g = modes.iter().all(|&(x, y, m)| {
            all_faces_distinct(&d[x], &d[y])
                && dominance_mode(&d[x], &d[y]).unwrap().map(|md| md.index()) == Some(m)
        });
        if !in_g {
            continue;
        }
        found += 1;
        let img = [star(&d[0]), star(&d[3]), star(&d[2]), star(&d[1])];
        for (x, y, m) in [(0, 1, 1), (1, 2, 2), (2, 3, 3), (3, 0, 3)] {
            assert_eq!(dominance_mode(&img[x], &img[y]).unwrap().map(|md| md.index()), Some(m));
        }
    }
    assert!(found > 0);
}
