//! Recursive boundary ("placing") triangulation driven by vertex-facet
//! incidence.
//!
//! For a face `F` with base vertex `w` (its lowest-indexed vertex), the
//! simplices of `F` are the cones from `w` over the simplices of every facet
//! of `F` not containing `w`. Because the base vertex depends only on the
//! vertex set, triangulations of shared faces agree and can be memoized.

use std::collections::HashMap;
use std::rc::Rc;

use super::bitset::BitSet;

pub(crate) struct Triangulator<'a> {
    /// For every halfspace, the set of vertices at which it is tight.
    tight_sets: &'a [BitSet],
    memo: HashMap<BitSet, Rc<Vec<Vec<u32>>>>,
}

impl<'a> Triangulator<'a> {
    pub fn new(tight_sets: &'a [BitSet]) -> Self {
        Triangulator { tight_sets, memo: HashMap::new() }
    }

    /// Facets of a face, computed as the inclusion-maximal proper nonempty
    /// intersections of the face with a tight set.
    fn facets(&self, face: &BitSet) -> Vec<BitSet> {
        let size = face.len();
        let mut cands: Vec<BitSet> = Vec::new();
        for tight in self.tight_sets {
            let c = face.intersection(tight);
            let n = c.len();
            if n == 0 || n == size || cands.contains(&c) {
                continue;
            }
            cands.push(c);
        }
        cands
            .iter()
            .filter(|c| !cands.iter().any(|o| o != *c && c.is_subset(o)))
            .cloned()
            .collect()
    }

    /// Triangulates the face with the given vertex set and dimension.
    /// Each simplex is a list of `dim + 1` vertex indices.
    pub fn triangulate(&mut self, face: &BitSet, dim: usize) -> Rc<Vec<Vec<u32>>> {
        let base = face.first().expect("nonempty face") as u32;
        if dim == 0 {
            return Rc::new(vec![vec![base]]);
        }
        if let Some(hit) = self.memo.get(face) {
            return Rc::clone(hit);
        }
        let mut out = Vec::new();
        for facet in self.facets(face) {
            if facet.contains(base as usize) {
                continue;
            }
            for simplex in self.triangulate(&facet, dim - 1).iter() {
                let mut s = Vec::with_capacity(dim + 1);
                s.push(base);
                s.extend_from_slice(simplex);
                out.push(s);
            }
        }
        let out = Rc::new(out);
        self.memo.insert(face.clone(), Rc::clone(&out));
        out
    }
}
