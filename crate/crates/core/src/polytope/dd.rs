//! Double description method over integer homogeneous coordinates.
//!
//! A polyhedron `{x : b + A x >= 0}` is homogenized to the cone
//! `{(t, x) : b t + A x >= 0, t >= 0}`. Extreme rays with `t > 0` are the
//! vertices; extreme rays with `t = 0` are recession directions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::bitset::BitSet;
use super::HalfSpace;
use crate::linalg::{RatMatrix, RatVector, Rational};

#[derive(Clone, Debug)]
struct Ray {
    coords: Vec<BigInt>,
    zeros: BitSet,
}

/// Result of running the double description method on an H-polyhedron.
#[derive(Clone, Debug)]
pub(crate) struct Enumeration {
    /// Vertices as primitive homogeneous integer vectors `(t, x)` with `t > 0`.
    pub vertices: Vec<Vec<BigInt>>,
    /// Extreme recession directions (the `x` part, `t = 0`).
    pub rays: Vec<Vec<BigInt>>,
    /// Dimension of the lineality space.
    pub lineality: usize,
}

impl Enumeration {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lineality == 0
    }
}

/// Scales a halfspace to the primitive integer row `(beta, alpha)` describing
/// the same closed set.
pub(crate) fn integer_row(h: &HalfSpace) -> Vec<BigInt> {
    let entries: Vec<&Rational> = std::iter::once(&h.offset).chain(h.normal.iter()).collect();
    let lcm = entries.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let row: Vec<BigInt> = entries.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    primitive(row)
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut v {
            *x /= &g;
        }
    }
    v
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn to_rat_rows(rows: &[&[BigInt]]) -> RatMatrix {
    let cols = rows.first().map_or(0, |r| r.len());
    let vs = rows
        .iter()
        .map(|r| RatVector::new(r.iter().cloned().map(Rational::from).collect()))
        .collect();
    RatMatrix::from_rows(vs, cols).expect("rows of equal length")
}

/// Extreme rays of the pointed cone `{y : row . y >= 0 for all rows}`.
/// The rows must have full column rank.
fn extreme_rays(rows: &[Vec<BigInt>]) -> Vec<Ray> {
    let dim = rows[0].len();

    // Greedily pick `dim` independent rows as the starting simplicial cone.
    let mut basis: Vec<usize> = Vec::with_capacity(dim);
    for i in 0..rows.len() {
        if basis.len() == dim {
            break;
        }
        let mut cand: Vec<&[BigInt]> = basis.iter().map(|&b| rows[b].as_slice()).collect();
        cand.push(&rows[i]);
        if to_rat_rows(&cand).rank() == cand.len() {
            basis.push(i);
        }
    }
    assert_eq!(basis.len(), dim, "cone is not pointed");

    let b = to_rat_rows(&basis.iter().map(|&i| rows[i].as_slice()).collect::<Vec<_>>());
    let mut rays = Vec::with_capacity(dim);
    for k in 0..dim {
        let mut e = RatVector::zeros(dim);
        e[k] = Rational::one();
        let y = b.solve_linear(&e).unwrap().expect("basis is nonsingular");
        let lcm = y.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let coords = primitive(y.iter().map(|r| r.numer() * (&lcm / r.denom())).collect());
        let zeros = basis.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &r)| r).collect();
        rays.push(Ray { coords, zeros });
    }

    let in_basis: BitSet = basis.iter().copied().collect();
    let min_common = dim.saturating_sub(2);
    for (j, row) in rows.iter().enumerate() {
        if in_basis.contains(j) {
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(row, &r.coords)).collect();
        let (mut pos, mut neg, mut zero) = (Vec::new(), Vec::new(), Vec::new());
        for (i, v) in vals.iter().enumerate() {
            if v.is_positive() {
                pos.push(i);
            } else if v.is_negative() {
                neg.push(i);
            } else {
                zero.push(i);
            }
        }

        let mut next: Vec<Ray> = Vec::with_capacity(pos.len() + zero.len());
        for &p in &pos {
            if neg.is_empty() {
                break;
            }
            for &q in &neg {
                let common = rays[p].zeros.intersection(&rays[q].zeros);
                if common.len() < min_common {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(r, ray)| r == p || r == q || !common.is_subset(&ray.zeros));
                if !adjacent {
                    continue;
                }
                // vals[p] > 0 > vals[q]: positive combination vanishing on row j
                let coords = primitive(
                    rays[q]
                        .coords
                        .iter()
                        .zip(&rays[p].coords)
                        .map(|(yq, yp)| &vals[p] * yq - &vals[q] * yp)
                        .collect(),
                );
                let mut zeros = common;
                zeros.insert(j);
                next.push(Ray { coords, zeros });
            }
        }
        for &p in &pos {
            next.push(rays[p].clone());
        }
        for &z in &zero {
            let mut ray = rays[z].clone();
            ray.zeros.insert(j);
            next.push(ray);
        }
        rays = next;
    }
    rays
}

pub(crate) fn enumerate(halfspaces: &[HalfSpace], ambient_dim: usize) -> Enumeration {
    let dim = ambient_dim + 1;
    let mut rows: Vec<Vec<BigInt>> = halfspaces.iter().map(integer_row).collect();
    let mut t_row = vec![BigInt::zero(); dim];
    t_row[0] = BigInt::one();
    rows.push(t_row);

    // Directions in the null space of the row matrix form the lineality
    // space. Fixing the non-pivot coordinates at zero picks a complement, on
    // which the cone is pointed.
    let mut pivots = Vec::new();
    {
        let all: Vec<&[BigInt]> = rows.iter().map(Vec::as_slice).collect();
        let m = to_rat_rows(&all);
        let mut acc: Vec<usize> = Vec::new();
        for c in 0..dim {
            let mut cols = acc.clone();
            cols.push(c);
            let sub = RatMatrix::from_rows(
                (0..m.rows())
                    .map(|i| RatVector::new(cols.iter().map(|&j| m[(i, j)].clone()).collect()))
                    .collect(),
                cols.len(),
            )
            .unwrap();
            if sub.rank() == cols.len() {
                acc.push(c);
            }
        }
        pivots.extend(acc);
    }
    let lineality = dim - pivots.len();
    let reduced: Vec<Vec<BigInt>> =
        rows.iter().map(|r| pivots.iter().map(|&c| r[c].clone()).collect()).collect();

    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    for ray in extreme_rays(&reduced) {
        let mut full = vec![BigInt::zero(); dim];
        for (k, &c) in pivots.iter().enumerate() {
            full[c] = ray.coords[k].clone();
        }
        if full[0].is_positive() {
            vertices.push(full);
        } else {
            rays.push(full[1..].to_vec());
        }
    }
    vertices.sort();
    vertices.dedup();
    Enumeration { vertices, rays, lineality }
}
