//! Three-sided dice of the balanced uniform model and the event polytopes
//! built from their dominance configurations.
//!
//! A die is three sorted faces in `[0, 1]` summing to `3/2`. In polytope
//! constructions only the first two faces of each die are variables; the
//! third is `3/2 - f1 - f2`, so `k` dice live in `2k` dimensions.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{RatVector, Rational};
use crate::polytope::{HPolytope, HalfSpace};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Die {
    faces: [Rational; 3],
}

impl Die {
    /// Sorts the faces and checks the range and sum constraints.
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Die> {
        let mut faces = [a, b, c];
        faces.sort();
        if faces[0].is_negative() || faces[2] > Rational::one() {
            return Err(Error::InvalidDie(format!("faces {faces:?} outside [0, 1]")));
        }
        let sum: Rational = faces.iter().sum();
        if sum != Rational::frac(3, 2) {
            return Err(Error::InvalidDie(format!("faces sum to {sum}, not 3/2")));
        }
        Ok(Die { faces })
    }

    /// Die from its first two sorted faces, the third being `3/2 - f1 - f2`.
    pub fn from_pair(f1: Rational, f2: Rational) -> Result<Die> {
        let f3 = Rational::frac(3, 2) - &f1 - &f2;
        Die::new(f1, f2, f3)
    }

    pub fn from_fracs(faces: [(i64, i64); 3]) -> Result<Die> {
        let [a, b, c] = faces.map(|(p, q)| Rational::frac(p, q));
        Die::new(a, b, c)
    }

    pub fn faces(&self) -> &[Rational; 3] {
        &self.faces
    }

    pub fn face(&self, i: usize) -> &Rational {
        &self.faces[i]
    }
}

impl fmt::Display for Die {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.faces[0], self.faces[1], self.faces[2])
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DominanceOutcome {
    FirstDominates,
    SecondDominates,
    Tie,
}

impl DominanceOutcome {
    pub fn reversed(self) -> Self {
        match self {
            DominanceOutcome::FirstDominates => DominanceOutcome::SecondDominates,
            DominanceOutcome::SecondDominates => DominanceOutcome::FirstDominates,
            DominanceOutcome::Tie => DominanceOutcome::Tie,
        }
    }
}

/// `sum over i, j of sgn(a_i - b_j)`, for any exactly ordered face type.
pub fn sign_sum<T: Ord>(a: &[T; 3], b: &[T; 3]) -> i32 {
    let mut s = 0;
    for x in a {
        for y in b {
            s += match x.cmp(y) {
                Ordering::Greater => 1,
                Ordering::Less => -1,
                Ordering::Equal => 0,
            };
        }
    }
    s
}

pub fn outcome_of_sign_sum(s: i32) -> DominanceOutcome {
    match s.cmp(&0) {
        Ordering::Greater => DominanceOutcome::FirstDominates,
        Ordering::Less => DominanceOutcome::SecondDominates,
        Ordering::Equal => DominanceOutcome::Tie,
    }
}

pub fn dominance(a: &Die, b: &Die) -> DominanceOutcome {
    outcome_of_sign_sum(sign_sum(&a.faces, &b.faces))
}

/// Which coordinatewise comparison fails in a dominance: mode `i` means
/// `a_i < b_i` while the other two faces of `A` beat those of `B`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DominanceMode(u8);

impl DominanceMode {
    pub fn new(index: u8) -> Result<Self> {
        if (1..=3).contains(&index) {
            Ok(DominanceMode(index))
        } else {
            Err(Error::InvalidIndex(format!("dominance mode {index} not in 1..=3")))
        }
    }

    pub fn index(self) -> u8 {
        self.0
    }

    /// Coefficients `s` such that the mode holds iff `s_j (x_j - y_j) > 0`
    /// for each face `j`.
    fn signs(self) -> [i64; 3] {
        match self.0 {
            1 => [-1, 1, 1],
            2 => [1, -1, 1],
            _ => [1, 1, -1],
        }
    }
}

/// Mode of `A > B` when `A` dominates, `None` when it does not.
///
/// Requires `a_i != b_i` for every face; equal faces sit on the boundary of
/// the mode regions and are reported as an error.
pub fn dominance_mode(a: &Die, b: &Die) -> Result<Option<DominanceMode>> {
    let mut losing = Vec::with_capacity(3);
    for i in 0..3 {
        match a.faces[i].cmp(&b.faces[i]) {
            Ordering::Equal => return Err(Error::Boundary { face: i + 1 }),
            Ordering::Less => losing.push(i),
            Ordering::Greater => {}
        }
    }
    Ok(match losing.as_slice() {
        [i] => Some(DominanceMode(*i as u8 + 1)),
        _ => None,
    })
}

/// `(a1, a2, a3) -> (1 - a3, 1 - a2, 1 - a1)`, an involution that reverses
/// every dominance relation.
pub fn star(a: &Die) -> Die {
    let one = Rational::one();
    let [x, y, z] = &a.faces;
    Die { faces: [&one - z, &one - y, &one - x] }
}

/// A word over `{1, 2, 3}` naming the dominance mode of each cycle edge.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SigmaWord(Vec<u8>);

impl SigmaWord {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if !(3..=4).contains(&letters.len()) || letters.iter().any(|l| !(1..=3).contains(l)) {
            let s: String = letters.iter().map(|l| l.to_string()).collect();
            return Err(Error::InvalidSigma(s));
        }
        Ok(SigmaWord(letters))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn distinct_letters(&self) -> usize {
        (1..=3).filter(|l| self.0.contains(l)).count()
    }

    /// `s1 s2 ... sk -> s2 ... sk s1`
    pub fn rotated(&self, by: usize) -> SigmaWord {
        let mut v = self.0.clone();
        let n = v.len();
        v.rotate_left(by % n);
        SigmaWord(v)
    }

    pub fn rotations(&self) -> Vec<SigmaWord> {
        (0..self.len()).map(|r| self.rotated(r)).collect()
    }

    pub fn cyclic_representative(&self) -> SigmaWord {
        self.rotations().into_iter().min().expect("nonempty word")
    }

    /// All `3^len` words in lexicographic order.
    pub fn all(len: usize) -> Vec<SigmaWord> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w: Vec<u8>| {
                    (1..=3).map(move |l| {
                        let mut w = w.clone();
                        w.push(l);
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(SigmaWord).collect()
    }
}

impl fmt::Display for SigmaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for SigmaWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .filter(|c| *c != ',')
            .map(|c| match c {
                '1'..='3' => Ok(c as u8 - b'0'),
                _ => Err(Error::InvalidSigma(s.to_string())),
            })
            .collect::<Result<Vec<u8>>>()?;
        SigmaWord::new(letters).map_err(|_| Error::InvalidSigma(s.to_string()))
    }
}

/// The region Q of feasible `(f1, f2)`:
/// `0 <= f1`, `f1 <= f2`, `1 <= 2 f1 + 2 f2`, `2 f1 + 4 f2 <= 3`.
pub fn build_q() -> HPolytope {
    HPolytope::from_i64_tuples(2, &[&[0, 1, 0], &[0, -1, 1], &[-1, 2, 2], &[3, -2, -4]])
        .expect("static system")
}

/// `Q^k` as the block-diagonal product of `k` copies of Q.
pub fn build_qk(k: usize) -> Result<HPolytope> {
    if !(1..=4).contains(&k) {
        return Err(Error::InvalidIndex(format!("dice count {k} not in 1..=4")));
    }
    let q = build_q();
    Ok((1..k).fold(q.clone(), |acc, _| acc.product(&q)))
}

/// Face `j` (0-based) of die `d` as a linear form over the `2k` variables.
/// The third face drops its constant `3/2`, which cancels in differences.
fn face_form(k: usize, d: usize, j: usize) -> Vec<i64> {
    let mut v = vec![0; 2 * k];
    match j {
        0 => v[2 * d] = 1,
        1 => v[2 * d + 1] = 1,
        _ => {
            v[2 * d] = -1;
            v[2 * d + 1] = -1;
        }
    }
    v
}

/// Three halfspaces asserting that edge `m` of the `k`-cycle holds with
/// mode `i`. Edge `m` runs from die `m - 1` to die `m mod k`, so the edges
/// are A>B, B>C, C>A for three dice and A>B, B>C, C>D, D>A for four.
pub fn relation_inequalities(m: usize, i: u8, k: usize) -> Result<[HalfSpace; 3]> {
    if !(3..=4).contains(&k) {
        return Err(Error::InvalidIndex(format!("dice count {k} not in 3..=4")));
    }
    if !(1..=k).contains(&m) {
        return Err(Error::InvalidIndex(format!("edge {m} not in 1..={k}")));
    }
    let mode = DominanceMode::new(i)?;
    let (x, y) = (m - 1, m % k);
    let signs = mode.signs();
    Ok([0, 1, 2].map(|j| {
        let fx = face_form(k, x, j);
        let fy = face_form(k, y, j);
        let normal = fx.iter().zip(&fy).map(|(a, b)| Rational::from(signs[j] * (a - b))).collect();
        HalfSpace::new(Rational::zero(), RatVector::new(normal))
    }))
}

/// `Q^k` plus the relation inequalities for every edge of the cycle, where
/// `k` is the word length.
pub fn build_cycle_event(sigma: &SigmaWord) -> HPolytope {
    let k = sigma.len();
    let mut p = build_qk(k).expect("word length is 3 or 4");
    for (m, &i) in sigma.letters().iter().enumerate() {
        p.extend(relation_inequalities(m + 1, i, k).expect("validated word"))
            .expect("matching dimension");
    }
    p
}

/// The event `A >_{s1} B >_{s2} C >_{s3} A` in `Q^3`.
pub fn build_e(sigma: &SigmaWord) -> Result<HPolytope> {
    if sigma.len() != 3 {
        return Err(Error::InvalidSigma(format!("{sigma} (expected 3 letters)")));
    }
    Ok(build_cycle_event(sigma))
}

/// The event `A >_{s1} B >_{s2} C >_{s3} D >_{s4} A` in `Q^4`.
pub fn build_g(sigma: &SigmaWord) -> Result<HPolytope> {
    if sigma.len() != 4 {
        return Err(Error::InvalidSigma(format!("{sigma} (expected 4 letters)")));
    }
    Ok(build_cycle_event(sigma))
}

/// Words with at most two distinct letters describe empty events.
pub fn is_degenerate_sigma(sigma: &SigmaWord) -> bool {
    sigma.distinct_letters() <= 2
}

/// Least rotation of each cyclic class of non-degenerate length-4 words,
/// in lexicographic order.
pub fn cyclic_representatives() -> Vec<SigmaWord> {
    let mut reps: Vec<SigmaWord> = SigmaWord::all(4)
        .into_iter()
        .filter(|w| !is_degenerate_sigma(w))
        .map(|w| w.cyclic_representative())
        .collect();
    reps.sort();
    reps.dedup();
    reps
}
