#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tridice_core::dice::Die;
use tridice_core::{HPolytope, HalfSpace, RatVector, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

/// Rejection-samples `(f1, f2)` on the grid `1/den` inside Q. Small
/// denominators make exact face collisions likely, which exercises the
/// boundary handling of callers.
pub fn grid_die(rng: &mut impl Rng, den: i64) -> Die {
    loop {
        let a = rng.gen_range(0..=den);
        let b = rng.gen_range(0..=den);
        // 0 <= a <= b, 2a + 2b >= den, 2a + 4b <= 3 den
        if a <= b && 2 * a + 2 * b >= den && 2 * a + 4 * b <= 3 * den {
            return Die::from_pair(Rational::frac(a, den), Rational::frac(b, den)).unwrap();
        }
    }
}

/// No face of `a` equals any face of `b`.
pub fn all_faces_distinct(a: &Die, b: &Die) -> bool {
    a.faces().iter().all(|x| b.faces().iter().all(|y| x != y))
}

/// The unit cube in `dim` variables cut by `extra` random halfspaces that
/// all keep the cube's center strictly feasible.
pub fn random_cut_cube(rng: &mut impl Rng, dim: usize, extra: usize) -> HPolytope {
    let mut p = HPolytope::unit_cube(dim).unwrap();
    for _ in 0..extra {
        let normal: Vec<Rational> = (0..dim).map(|_| Rational::from(rng.gen_range(-5i64..=5))).collect();
        let normal = RatVector::new(normal);
        let center = RatVector::new(vec![Rational::frac(1, 2); dim]);
        let slack = Rational::frac(rng.gen_range(1..=8), 8);
        let offset = slack - normal.dot(&center);
        p.push(HalfSpace::new(offset, normal)).unwrap();
    }
    p
}

/// Fraction of `samples` uniform points of the unit cube inside `p`, with
/// the hit test done in floating point.
pub fn hit_rate(rng: &mut impl Rng, p: &HPolytope, samples: usize) -> f64 {
    let hs: Vec<(f64, Vec<f64>)> = p
        .halfspaces()
        .iter()
        .map(|h| (h.offset.to_f64(), h.normal.iter().map(Rational::to_f64).collect()))
        .collect();
    let dim = p.ambient_dim();
    let mut x = vec![0.0; dim];
    let mut hits = 0usize;
    for _ in 0..samples {
        for xi in x.iter_mut() {
            *xi = rng.gen::<f64>();
        }
        if hs.iter().all(|(b, a)| b + a.iter().zip(&x).map(|(ai, xi)| ai * xi).sum::<f64>() >= 0.0) {
            hits += 1;
        }
    }
    hits as f64 / samples as f64
}
