//! Exact convex polytopes in H- and V-representation.
//!
//! Vertex enumeration uses the double description method on integer
//! homogeneous coordinates. Volumes come from a boundary triangulation built
//! from the vertex-facet incidence, with each simplex measured by an exact
//! integer determinant. All inequalities are treated as closed; boundaries
//! have measure zero, so this never changes a volume.

mod bitset;
mod dd;
pub mod format;
mod triangulate;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{int_determinant, RatMatrix, RatVector, Rational};

pub use bitset::BitSet;

/// The closed condition `offset + normal . x >= 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HalfSpace {
    pub offset: Rational,
    pub normal: RatVector,
}

impl HalfSpace {
    pub fn new(offset: Rational, normal: RatVector) -> Self {
        HalfSpace { offset, normal }
    }

    /// Builds from a tuple `(beta, alpha_1, ..., alpha_n)`.
    pub fn from_tuple(tuple: &[Rational]) -> Self {
        assert!(!tuple.is_empty(), "halfspace tuple needs an offset");
        HalfSpace { offset: tuple[0].clone(), normal: RatVector::new(tuple[1..].to_vec()) }
    }

    pub fn from_i64s(tuple: &[i64]) -> Self {
        let t: Vec<Rational> = tuple.iter().map(|&x| Rational::from(x)).collect();
        Self::from_tuple(&t)
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn to_tuple(&self) -> Vec<Rational> {
        std::iter::once(self.offset.clone()).chain(self.normal.iter().cloned()).collect()
    }

    /// `offset + normal . x`
    pub fn evaluate(&self, x: &RatVector) -> Rational {
        &self.offset + self.normal.dot(x)
    }

    pub fn contains(&self, x: &RatVector) -> bool {
        !self.evaluate(x).is_negative()
    }

    pub fn scaled(&self, k: &Rational) -> HalfSpace {
        HalfSpace { offset: &self.offset * k, normal: self.normal.scale(k) }
    }

    /// Re-embeds into a larger space, placing this halfspace's variables at
    /// `shift..shift + dim`.
    pub fn embed(&self, ambient: usize, shift: usize) -> HalfSpace {
        let mut normal = RatVector::zeros(ambient);
        for (i, a) in self.normal.iter().enumerate() {
            normal[shift + i] = a.clone();
        }
        HalfSpace { offset: self.offset.clone(), normal }
    }
}

impl fmt::Debug for HalfSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.to_tuple().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A polyhedron given as an intersection of closed halfspaces.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HPolytope {
    ambient_dim: usize,
    halfspaces: Vec<HalfSpace>,
}

impl HPolytope {
    pub fn new(ambient_dim: usize, halfspaces: Vec<HalfSpace>) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::InvalidIndex("ambient dimension must be positive".into()));
        }
        for h in &halfspaces {
            if h.dim() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: h.dim() });
            }
        }
        Ok(HPolytope { ambient_dim, halfspaces })
    }

    pub fn from_i64_tuples(ambient_dim: usize, tuples: &[&[i64]]) -> Result<Self> {
        Self::new(ambient_dim, tuples.iter().map(|t| HalfSpace::from_i64s(t)).collect())
    }

    /// The box `lo_i <= x_i <= hi_i`.
    pub fn axis_box(lo: &[Rational], hi: &[Rational]) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch { expected: lo.len(), found: hi.len() });
        }
        let n = lo.len();
        let mut hs = Vec::with_capacity(2 * n);
        for i in 0..n {
            let mut e = RatVector::zeros(n);
            e[i] = Rational::one();
            hs.push(HalfSpace::new(-&lo[i], e.clone()));
            hs.push(HalfSpace::new(hi[i].clone(), e.scale(&Rational::from(-1))));
        }
        Self::new(n, hs)
    }

    pub fn unit_cube(n: usize) -> Result<Self> {
        Self::axis_box(&vec![Rational::zero(); n], &vec![Rational::one(); n])
    }

    /// `{x >= 0, sum x <= 1}`
    pub fn standard_simplex(d: usize) -> Result<Self> {
        let mut hs = Vec::with_capacity(d + 1);
        for i in 0..d {
            let mut e = RatVector::zeros(d);
            e[i] = Rational::one();
            hs.push(HalfSpace::new(Rational::zero(), e));
        }
        hs.push(HalfSpace::new(Rational::one(), RatVector::new(vec![Rational::from(-1); d])));
        Self::new(d, hs)
    }

    /// Cartesian product; the inequality system is block diagonal.
    pub fn product(&self, other: &HPolytope) -> HPolytope {
        let n = self.ambient_dim + other.ambient_dim;
        let mut hs: Vec<HalfSpace> = self.halfspaces.iter().map(|h| h.embed(n, 0)).collect();
        hs.extend(other.halfspaces.iter().map(|h| h.embed(n, self.ambient_dim)));
        HPolytope { ambient_dim: n, halfspaces: hs }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    pub fn push(&mut self, h: HalfSpace) -> Result<()> {
        if h.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: h.dim() });
        }
        self.halfspaces.push(h);
        Ok(())
    }

    pub fn extend(&mut self, hs: impl IntoIterator<Item = HalfSpace>) -> Result<()> {
        for h in hs {
            self.push(h)?;
        }
        Ok(())
    }

    pub fn contains(&self, x: &RatVector) -> bool {
        self.halfspaces.iter().all(|h| h.contains(x))
    }

    pub fn vertex_enumerate(&self) -> Result<VPolytope> {
        vertex_enumerate(self)
    }

    pub fn dimension(&self) -> i64 {
        dimension(self)
    }

    pub fn volume(&self) -> Result<Rational> {
        volume(self)
    }
}

/// A bounded polytope as its vertex list, with the incidence back to the
/// generating halfspaces.
#[derive(Clone, Debug)]
pub struct VPolytope {
    ambient_dim: usize,
    vertices: Vec<RatVector>,
    /// Per vertex, the indices of the halfspaces tight at it.
    incidence: Vec<BitSet>,
    halfspace_count: usize,
    /// Primitive integer `(t, x)` with vertex `x / t`.
    homogeneous: Vec<Vec<BigInt>>,
}

impl VPolytope {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn tight_halfspaces(&self, vertex: usize) -> Vec<usize> {
        self.incidence[vertex].iter().collect()
    }

    pub fn halfspace_count(&self) -> usize {
        self.halfspace_count
    }

    /// Affine dimension of the vertex set, `-1` when empty.
    pub fn dimension(&self) -> i64 {
        homogeneous_rank(&self.homogeneous, &[]) as i64 - 1
    }

    /// For every generating halfspace, the set of vertices where it is tight.
    fn tight_sets(&self) -> Vec<BitSet> {
        let mut sets = vec![BitSet::with_capacity(self.vertices.len()); self.halfspace_count];
        for (v, inc) in self.incidence.iter().enumerate() {
            for h in inc.iter() {
                sets[h].insert(v);
            }
        }
        sets.into_iter().map(BitSet::normalized).collect()
    }

    fn simplex_indices(&self) -> Result<Vec<Vec<u32>>> {
        let dim = self.dimension();
        if dim != self.ambient_dim as i64 {
            return Err(Error::NotFullDimensional { dim, ambient: self.ambient_dim });
        }
        let tight = self.tight_sets();
        let mut tri = triangulate::Triangulator::new(&tight);
        let all = BitSet::full(self.vertices.len());
        Ok(tri.triangulate(&all, self.ambient_dim).as_ref().clone())
    }

    pub fn triangulate(&self) -> Result<Vec<Simplex>> {
        triangulate(self)
    }

    /// Exact volume of a full-dimensional polytope via its triangulation.
    fn triangulated_volume(&self) -> Result<Rational> {
        let simplices = self.simplex_indices()?;
        let d = self.ambient_dim;
        let factorial: BigInt = (1..=d).map(BigInt::from).product();
        let hom = &self.homogeneous;
        let total = simplices
            .par_iter()
            .map(|s| {
                let rows: Vec<Vec<BigInt>> = s.iter().map(|&i| hom[i as usize].clone()).collect();
                let det = int_determinant(&rows).abs();
                let scale: BigInt = s.iter().map(|&i| hom[i as usize][0].clone()).product();
                Rational::new(det, &factorial * scale).expect("positive scale")
            })
            .reduce(Rational::zero, |a, b| a + b);
        Ok(total)
    }
}

/// A simplex given by `d + 1` vertices in dimension `d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Simplex {
    vertices: Vec<RatVector>,
}

impl Simplex {
    pub fn new(vertices: Vec<RatVector>) -> Result<Self> {
        let d = vertices.first().map_or(0, RatVector::len);
        if vertices.len() != d + 1 {
            return Err(Error::DimensionMismatch { expected: d + 1, found: vertices.len() });
        }
        if let Some(v) = vertices.iter().find(|v| v.len() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: v.len() });
        }
        Ok(Simplex { vertices })
    }

    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn volume(&self) -> Rational {
        simplex_volume(self)
    }

    pub fn is_degenerate(&self) -> bool {
        self.volume().is_zero()
    }
}

fn homogeneous_rank(points: &[Vec<BigInt>], rays: &[Vec<BigInt>]) -> usize {
    let width = points.first().or(rays.first()).map_or(0, Vec::len);
    let rows = points
        .iter()
        .map(|p| RatVector::new(p.iter().cloned().map(Rational::from).collect()))
        .chain(rays.iter().map(|r| {
            RatVector::new(
                std::iter::once(Rational::zero()).chain(r.iter().cloned().map(Rational::from)).collect(),
            )
        }))
        .collect();
    RatMatrix::from_rows(rows, width).expect("uniform width").rank()
}

fn build_vpolytope(p: &HPolytope, homogeneous: Vec<Vec<BigInt>>) -> VPolytope {
    let rows: Vec<Vec<BigInt>> = p.halfspaces.iter().map(dd::integer_row).collect();
    let incidence = homogeneous
        .iter()
        .map(|y| {
            rows.iter()
                .enumerate()
                .filter(|(_, r)| r.iter().zip(y).map(|(a, b)| a * b).sum::<BigInt>().is_zero())
                .map(|(i, _)| i)
                .collect::<BitSet>()
        })
        .collect();
    let vertices = homogeneous
        .iter()
        .map(|y| {
            RatVector::new(
                y[1..].iter().map(|x| Rational::new(x.clone(), y[0].clone()).unwrap()).collect(),
            )
        })
        .collect();
    VPolytope {
        ambient_dim: p.ambient_dim,
        vertices,
        incidence,
        halfspace_count: p.halfspaces.len(),
        homogeneous,
    }
}

/// Vertices of a bounded polytope, each with its tight halfspaces. An empty
/// feasible set yields an empty `VPolytope`; an unbounded one is an error.
pub fn vertex_enumerate(p: &HPolytope) -> Result<VPolytope> {
    let e = dd::enumerate(&p.halfspaces, p.ambient_dim);
    if e.is_empty() {
        return Ok(build_vpolytope(p, Vec::new()));
    }
    if !e.is_bounded() {
        return Err(Error::Unbounded);
    }
    Ok(build_vpolytope(p, e.vertices))
}

/// Dimension of the feasible set: `-1` when empty, otherwise the dimension
/// of its affine hull. Unbounded sets are handled too.
pub fn dimension(p: &HPolytope) -> i64 {
    let e = dd::enumerate(&p.halfspaces, p.ambient_dim);
    if e.is_empty() {
        return -1;
    }
    (homogeneous_rank(&e.vertices, &e.rays) - 1 + e.lineality) as i64
}

/// Triangulates a full-dimensional polytope into simplices with disjoint
/// interiors covering it.
pub fn triangulate(v: &VPolytope) -> Result<Vec<Simplex>> {
    Ok(v.simplex_indices()?
        .into_iter()
        .map(|s| Simplex { vertices: s.iter().map(|&i| v.vertices[i as usize].clone()).collect() })
        .collect())
}

/// `|det(v1 - v0, ..., vd - v0)| / d!`
pub fn simplex_volume(s: &Simplex) -> Rational {
    let d = s.dim();
    if d == 0 {
        return Rational::one();
    }
    let v0 = &s.vertices[0];
    let rows = s.vertices[1..].iter().map(|v| v.sub(v0)).collect();
    let det = RatMatrix::from_rows(rows, d).unwrap().determinant().unwrap();
    let factorial: BigInt = (1..=d).map(BigInt::from).product();
    det.abs().checked_div(&Rational::from(factorial)).unwrap()
}

/// Lebesgue volume in the ambient dimension. Lower-dimensional (including
/// empty) inputs have volume exactly zero; unbounded full-dimensional inputs
/// are an error.
pub fn volume(p: &HPolytope) -> Result<Rational> {
    let e = dd::enumerate(&p.halfspaces, p.ambient_dim);
    if e.is_empty() {
        return Ok(Rational::zero());
    }
    let dim = homogeneous_rank(&e.vertices, &e.rays) - 1 + e.lineality;
    if dim < p.ambient_dim {
        return Ok(Rational::zero());
    }
    if !e.is_bounded() {
        return Err(Error::Unbounded);
    }
    build_vpolytope(p, e.vertices).triangulated_volume()
}

/// Vertices by brute force: solve every `d`-subset of halfspaces as
/// equalities and keep the feasible solutions. Exponential; meant as an
/// independent check of `vertex_enumerate` on small bounded inputs.
pub fn vertex_enumerate_exhaustive(p: &HPolytope) -> Vec<RatVector> {
    let d = p.ambient_dim;
    let hs = &p.halfspaces;
    let mut found: Vec<RatVector> = Vec::new();
    let mut idx: Vec<usize> = (0..d).collect();
    if hs.len() < d {
        return found;
    }
    loop {
        let rows = idx.iter().map(|&i| hs[i].normal.clone()).collect();
        let m = RatMatrix::from_rows(rows, d).unwrap();
        if !m.determinant().unwrap().is_zero() {
            let rhs = RatVector::new(idx.iter().map(|&i| -&hs[i].offset).collect());
            if let Some(x) = m.solve_linear(&rhs).unwrap() {
                if p.contains(&x) && !found.contains(&x) {
                    found.push(x);
                }
            }
        }
        // next combination
        let mut k = d;
        loop {
            if k == 0 {
                found.sort();
                return found;
            }
            k -= 1;
            if idx[k] != k + hs.len() - d {
                break;
            }
        }
        idx[k] += 1;
        for j in k + 1..d {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::frac(p, d)
    }

    fn pt(coords: &[(i64, i64)]) -> RatVector {
        RatVector::new(coords.iter().map(|&(p, d)| q(p, d)).collect())
    }

    fn region_q() -> HPolytope {
        HPolytope::from_i64_tuples(2, &[&[0, 1, 0], &[0, -1, 1], &[-1, 2, 2], &[3, -2, -4]]).unwrap()
    }

    #[test]
    fn unit_square_vertices() {
        let sq = HPolytope::from_i64_tuples(2, &[&[0, 1, 0], &[0, 0, 1], &[1, -1, 0], &[1, 0, -1]])
            .unwrap();
        let v = sq.vertex_enumerate().unwrap();
        let mut got = v.vertices().to_vec();
        got.sort();
        let want: Vec<RatVector> =
            [[0, 0], [0, 1], [1, 0], [1, 1]].iter().map(|c| RatVector::from_i64s(c)).collect();
        assert_eq!(got, want);
        for i in 0..4 {
            assert_eq!(v.tight_halfspaces(i).len(), 2);
        }
    }

    #[test]
    fn region_q_vertices() {
        // Pairwise intersections of the four boundary lines that satisfy all
        // four inequalities.
        let v = region_q().vertex_enumerate().unwrap();
        let mut got = v.vertices().to_vec();
        got.sort();
        let mut want =
            vec![pt(&[(0, 1), (1, 2)]), pt(&[(1, 4), (1, 4)]), pt(&[(1, 2), (1, 2)]), pt(&[(0, 1), (3, 4)])];
        want.sort();
        assert_eq!(got, want);
        assert_eq!(vertex_enumerate_exhaustive(&region_q()), want);
    }

    #[test]
    fn infeasible_is_empty() {
        let p = HPolytope::from_i64_tuples(1, &[&[-1, 1], &[0, -1]]).unwrap();
        assert!(p.vertex_enumerate().unwrap().is_empty());
        assert_eq!(p.dimension(), -1);
        assert_eq!(p.volume().unwrap(), Rational::zero());
    }

    #[test]
    fn infeasible_with_free_direction_is_empty() {
        let p = HPolytope::from_i64_tuples(2, &[&[-1, 1, 0], &[0, -1, 0]]).unwrap();
        assert!(p.vertex_enumerate().unwrap().is_empty());
        assert_eq!(p.dimension(), -1);
        assert_eq!(p.volume().unwrap(), Rational::zero());
    }

    #[test]
    fn unbounded_is_an_error() {
        let quadrant = HPolytope::from_i64_tuples(2, &[&[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(quadrant.vertex_enumerate().unwrap_err(), Error::Unbounded);
        assert_eq!(quadrant.volume().unwrap_err(), Error::Unbounded);
        assert_eq!(quadrant.dimension(), 2);

        let strip = HPolytope::from_i64_tuples(2, &[&[0, 1, 0], &[1, -1, 0]]).unwrap();
        assert_eq!(strip.vertex_enumerate().unwrap_err(), Error::Unbounded);
        assert_eq!(strip.dimension(), 2);

        let free = HPolytope::new(3, vec![]).unwrap();
        assert_eq!(free.dimension(), 3);
        assert_eq!(free.volume().unwrap_err(), Error::Unbounded);

        // a line is unbounded but lower-dimensional
        let line = HPolytope::from_i64_tuples(2, &[&[0, 1, 0], &[0, -1, 0]]).unwrap();
        assert_eq!(line.dimension(), 1);
        assert_eq!(line.volume().unwrap(), Rational::zero());
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(region_q().dimension(), 2);
        let segment =
            HPolytope::from_i64_tuples(2, &[&[0, 1, 0], &[0, -1, 0], &[0, 0, 1], &[1, 0, -1]]).unwrap();
        assert_eq!(segment.dimension(), 1);
        assert_eq!(segment.volume().unwrap(), Rational::zero());
        let point = HPolytope::from_i64_tuples(1, &[&[0, 1], &[0, -1]]).unwrap();
        assert_eq!(point.dimension(), 0);
    }

    #[test]
    fn triangulate_simplex_and_square() {
        let tri = HPolytope::standard_simplex(2).unwrap().vertex_enumerate().unwrap();
        assert_eq!(tri.triangulate().unwrap().len(), 1);

        let sq = HPolytope::unit_cube(2).unwrap().vertex_enumerate().unwrap();
        let simplices = sq.triangulate().unwrap();
        assert_eq!(simplices.len(), 2);
        let total: Rational = simplices.iter().map(Simplex::volume).sum();
        assert_eq!(total, Rational::one());
    }

    #[test]
    fn triangulate_region_q() {
        let v = region_q().vertex_enumerate().unwrap();
        let simplices = v.triangulate().unwrap();
        let total: Rational = simplices.iter().map(Simplex::volume).sum();
        assert_eq!(total, q(1, 8));
        assert!(simplices.iter().all(|s| !s.is_degenerate()));
    }

    #[test]
    fn triangulate_rejects_lower_dimensional() {
        let seg = HPolytope::from_i64_tuples(2, &[&[0, 1, 0], &[0, -1, 0], &[0, 0, 1], &[1, 0, -1]])
            .unwrap()
            .vertex_enumerate()
            .unwrap();
        assert!(matches!(seg.triangulate(), Err(Error::NotFullDimensional { dim: 1, ambient: 2 })));
    }

    #[test]
    fn simplex_volume_examples() {
        for d in 1..=5 {
            let mut vs = vec![RatVector::zeros(d)];
            for i in 0..d {
                let mut e = RatVector::zeros(d);
                e[i] = Rational::one();
                vs.push(e);
            }
            let fact: i64 = (1..=d as i64).product();
            assert_eq!(Simplex::new(vs).unwrap().volume(), q(1, fact));
        }
        // shoelace: (1/4-0)(1/2-1/2) - (1/2-0)(1/4-1/2) = 1/8, halved
        let t = Simplex::new(vec![pt(&[(0, 1), (1, 2)]), pt(&[(1, 4), (1, 4)]), pt(&[(1, 2), (1, 2)])])
            .unwrap();
        assert_eq!(t.volume(), q(1, 16));
        let flat = Simplex::new(vec![pt(&[(0, 1), (0, 1)]), pt(&[(1, 1), (1, 1)]), pt(&[(2, 1), (2, 1)])])
            .unwrap();
        assert_eq!(flat.volume(), Rational::zero());
        assert!(flat.is_degenerate());
    }

    #[test]
    fn simplex_rejects_wrong_vertex_count() {
        assert!(Simplex::new(vec![RatVector::zeros(2), RatVector::zeros(2)]).is_err());
    }

    #[test]
    fn volume_of_region_q_and_powers() {
        let qq = region_q();
        assert_eq!(qq.volume().unwrap(), q(1, 8));
        let mut prod = qq.clone();
        for k in 2..=3 {
            prod = prod.product(&qq);
            assert_eq!(prod.volume().unwrap(), q(1, 8).pow(k));
        }
    }

    #[test]
    fn redundant_and_duplicate_constraints() {
        let mut p = region_q();
        p.push(HalfSpace::from_i64s(&[0, 1, 0])).unwrap();
        p.push(HalfSpace::from_i64s(&[5, -1, -1])).unwrap();
        p.push(HalfSpace::from_i64s(&[1, 0, 0])).unwrap();
        assert_eq!(p.vertex_enumerate().unwrap().vertices().len(), 4);
        assert_eq!(p.volume().unwrap(), q(1, 8));
    }

    #[test]
    fn dimension_mismatch_rejected() {
        assert!(HPolytope::from_i64_tuples(2, &[&[0, 1]]).is_err());
        assert!(HPolytope::new(0, vec![]).is_err());
    }
}
