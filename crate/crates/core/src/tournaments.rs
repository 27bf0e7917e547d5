//! Tournament classification for three and four dice, and the exact class
//! probabilities assembled from event volumes.

use std::fmt;

use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::dice::{
    build_cycle_event, build_q, cyclic_representatives, dominance, DominanceOutcome, Die, SigmaWord,
};
use crate::error::{Error, Result};
use crate::linalg::{RatMatrix, RatVector, Rational};

/// Significant digits used for every decimal rendering of a probability.
pub const DECIMAL_DIGITS: usize = 9;

/// Complete orientation of the pairs among 3 or 4 labelled vertices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Tournament {
    size: usize,
    beats: [[bool; 4]; 4],
}

impl Tournament {
    /// Builds a tournament from `(winner, loser)` pairs covering every
    /// unordered pair exactly once.
    pub fn from_edges(size: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if !(3..=4).contains(&size) {
            return Err(Error::InvalidIndex(format!("tournament size {size} not in 3..=4")));
        }
        let mut beats = [[false; 4]; 4];
        for &(w, l) in edges {
            if w >= size || l >= size || w == l {
                return Err(Error::InvalidIndex(format!("edge ({w}, {l})")));
            }
            if beats[w][l] || beats[l][w] {
                return Err(Error::InvalidIndex(format!("pair ({w}, {l}) oriented twice")));
            }
            beats[w][l] = true;
        }
        let t = Tournament { size, beats };
        for i in 0..size {
            for j in i + 1..size {
                if !t.beats(i, j) && !t.beats(j, i) {
                    return Err(Error::InvalidIndex(format!("pair ({i}, {j}) not oriented")));
                }
            }
        }
        Ok(t)
    }

    /// All `2^(k choose 2)` tournaments on `k` labelled vertices.
    pub fn all(size: usize) -> Vec<Tournament> {
        assert!((3..=4).contains(&size));
        let pairs: Vec<(usize, usize)> =
            (0..size).flat_map(|i| (i + 1..size).map(move |j| (i, j))).collect();
        (0u32..1 << pairs.len())
            .map(|mask| {
                let mut beats = [[false; 4]; 4];
                for (b, &(i, j)) in pairs.iter().enumerate() {
                    if mask & (1 << b) != 0 {
                        beats[i][j] = true;
                    } else {
                        beats[j][i] = true;
                    }
                }
                Tournament { size, beats }
            })
            .collect()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn beats(&self, i: usize, j: usize) -> bool {
        self.beats[i][j]
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        (0..self.size).map(|i| (0..self.size).filter(|&j| self.beats[i][j]).count()).collect()
    }

    /// Score sequence, sorted descending.
    pub fn score_sequence(&self) -> Vec<usize> {
        let mut d = self.out_degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn reversed(&self) -> Tournament {
        let mut beats = [[false; 4]; 4];
        for (i, row) in beats.iter_mut().enumerate().take(self.size) {
            for (j, b) in row.iter_mut().enumerate().take(self.size) {
                *b = self.beats[j][i];
            }
        }
        Tournament { size: self.size, beats }
    }

    /// Moves vertex `i` to position `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> Tournament {
        assert_eq!(perm.len(), self.size);
        let mut beats = [[false; 4]; 4];
        for i in 0..self.size {
            for j in 0..self.size {
                beats[perm[i]][perm[j]] = self.beats[i][j];
            }
        }
        Tournament { size: self.size, beats }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TournamentClass3 {
    TransitiveChain,
    Cycle,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TournamentClass4 {
    TransitiveChain,
    FourCycle,
    WinnerPlusThreeCycle,
    LoserPlusThreeCycle,
}

impl TournamentClass3 {
    pub const ALL: [TournamentClass3; 2] = [TournamentClass3::TransitiveChain, TournamentClass3::Cycle];

    pub fn name(self) -> &'static str {
        match self {
            TournamentClass3::TransitiveChain => "transitive-chain",
            TournamentClass3::Cycle => "cycle",
        }
    }
}

impl TournamentClass4 {
    pub const ALL: [TournamentClass4; 4] = [
        TournamentClass4::TransitiveChain,
        TournamentClass4::FourCycle,
        TournamentClass4::WinnerPlusThreeCycle,
        TournamentClass4::LoserPlusThreeCycle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TournamentClass4::TransitiveChain => "transitive-chain",
            TournamentClass4::FourCycle => "four-cycle",
            TournamentClass4::WinnerPlusThreeCycle => "winner-plus-3cycle",
            TournamentClass4::LoserPlusThreeCycle => "loser-plus-3cycle",
        }
    }

    /// The class of the tournament with every edge reversed.
    pub fn dual(self) -> Self {
        match self {
            TournamentClass4::WinnerPlusThreeCycle => TournamentClass4::LoserPlusThreeCycle,
            TournamentClass4::LoserPlusThreeCycle => TournamentClass4::WinnerPlusThreeCycle,
            other => other,
        }
    }
}

impl fmt::Display for TournamentClass3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for TournamentClass4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn classify3(t: &Tournament) -> Result<TournamentClass3> {
    if t.size != 3 {
        return Err(Error::InvalidIndex(format!("classify3 on a size-{} tournament", t.size)));
    }
    Ok(if t.out_degrees().iter().all(|&d| d == 1) {
        TournamentClass3::Cycle
    } else {
        TournamentClass3::TransitiveChain
    })
}

pub fn classify4(t: &Tournament) -> Result<TournamentClass4> {
    if t.size != 4 {
        return Err(Error::InvalidIndex(format!("classify4 on a size-{} tournament", t.size)));
    }
    match t.score_sequence().as_slice() {
        [3, 2, 1, 0] => Ok(TournamentClass4::TransitiveChain),
        [2, 2, 1, 1] => Ok(TournamentClass4::FourCycle),
        [3, 1, 1, 1] => Ok(TournamentClass4::WinnerPlusThreeCycle),
        [2, 2, 2, 0] => Ok(TournamentClass4::LoserPlusThreeCycle),
        other => Err(Error::Consistency(format!("impossible score sequence {other:?}"))),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TournamentOutcome {
    Tournament(Tournament),
    Tie,
}

/// Orients every pair with `outcome(i, j)`; any tie makes the whole
/// outcome a tie.
#[allow(clippy::needless_range_loop)]
pub fn tournament_from_pairwise(
    size: usize,
    mut outcome: impl FnMut(usize, usize) -> DominanceOutcome,
) -> TournamentOutcome {
    let mut beats = [[false; 4]; 4];
    for i in 0..size {
        for j in i + 1..size {
            match outcome(i, j) {
                DominanceOutcome::FirstDominates => beats[i][j] = true,
                DominanceOutcome::SecondDominates => beats[j][i] = true,
                DominanceOutcome::Tie => return TournamentOutcome::Tie,
            }
        }
    }
    TournamentOutcome::Tournament(Tournament { size, beats })
}

pub fn tournament_of_dice(dice: &[Die]) -> Result<TournamentOutcome> {
    if !(3..=4).contains(&dice.len()) {
        return Err(Error::InvalidIndex(format!("{} dice, expected 3 or 4", dice.len())));
    }
    Ok(tournament_from_pairwise(dice.len(), |i, j| dominance(&dice[i], &dice[j])))
}

/// `P(E_sigma)` or `P(G_sigma)`: the event volume normalized by `vol(Q)^k`.
pub fn cycle_probability(sigma: &SigmaWord) -> Result<Rational> {
    let q = build_q().volume()?;
    let vol = build_cycle_event(sigma).volume()?;
    vol.checked_div(&q.pow(sigma.len() as u32))
}

fn word(s: &str) -> SigmaWord {
    s.parse().expect("static word")
}

/// `P(A > B > C > A)` from its two cyclic classes of mode patterns.
pub fn prob_e() -> Result<Rational> {
    let e123 = cycle_probability(&word("123"))?;
    let e132 = cycle_probability(&word("132"))?;
    Ok(Rational::from(3) * (e123 + e132))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ThreeDiceReport {
    pub p_e123: Rational,
    pub p_e132: Rational,
    pub p_e: Rational,
    pub p_triangle: Rational,
    pub p_3line: Rational,
}

pub fn three_dice_report() -> Result<ThreeDiceReport> {
    let p_e123 = cycle_probability(&word("123"))?;
    let p_e132 = cycle_probability(&word("132"))?;
    let p_e = Rational::from(3) * (&p_e123 + &p_e132);
    let p_triangle = Rational::from(2) * &p_e;
    let p_3line = Rational::one() - &p_triangle;
    Ok(ThreeDiceReport { p_e123, p_e132, p_e, p_triangle, p_3line })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FourCycleReport {
    /// `P(G_sigma)` for each cyclic representative, in lexicographic order.
    pub representatives: Vec<(SigmaWord, Rational)>,
    /// `P(A > B > C > D > A)`
    pub p_g: Rational,
}

/// Computes `P(G_sigma)` for every word in parallel; results keep input order.
pub fn cycle_probabilities(words: &[SigmaWord]) -> Result<Vec<Rational>> {
    words.par_iter().map(cycle_probability).collect()
}

pub fn four_cycle_report() -> Result<FourCycleReport> {
    let reps = cyclic_representatives();
    let probs = cycle_probabilities(&reps)?;
    let p_g = Rational::from(4) * probs.iter().sum::<Rational>();
    Ok(FourCycleReport { representatives: reps.into_iter().zip(probs).collect(), p_g })
}

pub fn prob_g() -> Result<Rational> {
    Ok(four_cycle_report()?.p_g)
}

/// Exact probabilities of every tournament class for three and four dice.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProbabilityReport {
    pub p_3line: Rational,
    pub p_triangle: Rational,
    pub p_4line: Rational,
    pub p_square: Rational,
    pub p_winner_tri: Rational,
    pub p_loser_tri: Rational,
}

impl ProbabilityReport {
    pub fn entries(&self) -> [(&'static str, &Rational); 6] {
        [
            ("p_3line", &self.p_3line),
            ("p_triangle", &self.p_triangle),
            ("p_4line", &self.p_4line),
            ("p_square", &self.p_square),
            ("p_winner_tri", &self.p_winner_tri),
            ("p_loser_tri", &self.p_loser_tri),
        ]
    }

    pub fn class3(&self, class: TournamentClass3) -> &Rational {
        match class {
            TournamentClass3::TransitiveChain => &self.p_3line,
            TournamentClass3::Cycle => &self.p_triangle,
        }
    }

    pub fn class4(&self, class: TournamentClass4) -> &Rational {
        match class {
            TournamentClass4::TransitiveChain => &self.p_4line,
            TournamentClass4::FourCycle => &self.p_square,
            TournamentClass4::WinnerPlusThreeCycle => &self.p_winner_tri,
            TournamentClass4::LoserPlusThreeCycle => &self.p_loser_tri,
        }
    }

    /// Range and total-probability checks.
    pub fn check(&self) -> Result<()> {
        for (name, p) in self.entries() {
            if p.is_negative() || *p > Rational::one() {
                return Err(Error::Consistency(format!("{name} = {p} outside [0, 1]")));
            }
        }
        let three = &self.p_3line + &self.p_triangle;
        if three != Rational::one() {
            return Err(Error::Consistency(format!("three-dice classes sum to {three}")));
        }
        let four = &self.p_4line + &self.p_square + &self.p_winner_tri + &self.p_loser_tri;
        if four != Rational::one() {
            return Err(Error::Consistency(format!("four-dice classes sum to {four}")));
        }
        Ok(())
    }
}

/// An exact probability paired with its fixed-precision decimal rendering.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Rendered {
    pub exact: String,
    pub decimal: String,
}

impl Rendered {
    pub fn of(r: &Rational) -> Self {
        Rendered { exact: r.to_string(), decimal: r.to_decimal(DECIMAL_DIGITS) }
    }
}

impl Serialize for ProbabilityReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(6))?;
        for (name, p) in self.entries() {
            map.serialize_entry(name, &Rendered::of(p))?;
        }
        map.end()
    }
}

/// Solves the deletion equations for the four-dice classes:
///
/// ```text
/// p_3line    = p_4line + p_square/2 + 3/4 (p_winner_tri + p_loser_tri)
/// p_triangle =           p_square/2 + 1/4 (p_winner_tri + p_loser_tri)
/// p_winner_tri = p_loser_tri
/// ```
///
/// with `p_square = 6 p_g`, since a 4-cycle has six labellings.
pub fn assemble_four_dice(p_g: &Rational, p_3line: &Rational, p_triangle: &Rational) -> Result<ProbabilityReport> {
    let p_square = Rational::from(6) * p_g;
    let half_square = &p_square * Rational::frac(1, 2);
    let (q, t) = (Rational::frac(3, 4), Rational::frac(1, 4));
    let (one, zero) = (Rational::one(), Rational::zero());
    // unknowns: p_4line, p_winner_tri, p_loser_tri
    let m = RatMatrix::from_rows(
        vec![
            RatVector::new(vec![one.clone(), q.clone(), q]),
            RatVector::new(vec![zero.clone(), t.clone(), t]),
            RatVector::new(vec![zero, one.clone(), -one]),
        ],
        3,
    )?;
    let rhs = RatVector::new(vec![p_3line - &half_square, p_triangle - &half_square, Rational::zero()]);
    let x = m
        .solve_linear(&rhs)?
        .ok_or_else(|| Error::Consistency("deletion equations have no solution".into()))?;
    let report = ProbabilityReport {
        p_3line: p_3line.clone(),
        p_triangle: p_triangle.clone(),
        p_4line: x[0].clone(),
        p_square,
        p_winner_tri: x[1].clone(),
        p_loser_tri: x[2].clone(),
    };
    report.check()?;
    Ok(report)
}

/// Every class probability, computed from scratch.
pub fn probability_report() -> Result<ProbabilityReport> {
    let three = three_dice_report()?;
    let four = four_cycle_report()?;
    assemble_four_dice(&four.p_g, &three.p_3line, &three.p_triangle)
}
