use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use super::element::CoxeterElement;
use super::graph::CoxeterGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("generator index {index} out of range for rank {rank}")]
pub struct IndexOutOfRange {
    pub index: usize,
    pub rank: usize,
}

/// Root system of a simply-laced spherical graph together with the
/// Coxeter-group arithmetic built on it.
///
/// Positive roots are listed with the simple roots first (in generator order)
/// followed by the remaining roots in lexicographic order of their
/// coordinate vectors.
#[derive(Debug, Clone)]
pub struct RootSystem {
    graph: CoxeterGraph,
    rank: usize,
    cartan: Vec<i32>,
    positive_roots: Vec<Vec<i32>>,
    longest: CoxeterElement,
    diagram_automorphism: Vec<usize>,
}

impl RootSystem {
    pub fn new(graph: CoxeterGraph) -> Self {
        let rank = graph.rank();
        let mut cartan = vec![0; rank * rank];
        for i in 0..rank {
            cartan[i * rank + i] = 2;
            for &j in graph.neighbours(i) {
                cartan[i * rank + j] = -1;
            }
        }
        let positive_roots = reflection_closure(&cartan, rank);

        let mut rs = RootSystem {
            graph,
            rank,
            cartan,
            positive_roots,
            longest: CoxeterElement::identity(rank),
            diagram_automorphism: (0..rank).collect(),
        };
        // Raise the identity greedily until every generator is a left descent.
        let mut w0 = CoxeterElement::identity(rank);
        while let Some(i) = (0..rank).find(|&i| !w0.has_left_descent(i)) {
            rs.left_mul_simple(&mut w0, i);
        }
        // w0(α_i) = -α_τ(i)
        let tau = (0..rank)
            .map(|i| (0..rank).find(|&r| w0.entry(r, i) == -1).expect("w0 maps simple roots to negative simple roots"))
            .collect();
        rs.longest = w0;
        rs.diagram_automorphism = tau;
        rs
    }

    pub fn graph(&self) -> &CoxeterGraph {
        &self.graph
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self, i: usize, j: usize) -> i32 {
        self.cartan[i * self.rank + j]
    }

    pub fn positive_roots(&self) -> &[Vec<i32>] {
        &self.positive_roots
    }

    pub fn simple_roots(&self) -> &[Vec<i32>] {
        &self.positive_roots[..self.rank]
    }

    pub fn identity(&self) -> CoxeterElement {
        CoxeterElement::identity(self.rank)
    }

    pub fn check_index(&self, i: usize) -> Result<(), IndexOutOfRange> {
        if i < self.rank {
            Ok(())
        } else {
            Err(IndexOutOfRange { index: i, rank: self.rank })
        }
    }

    pub fn simple_reflection(&self, i: usize) -> Result<CoxeterElement, IndexOutOfRange> {
        self.check_index(i)?;
        let mut u = self.identity();
        self.left_mul_simple(&mut u, i);
        Ok(u)
    }

    /// Product of simple reflections `s_{i1} s_{i2} ...` (0-based indices).
    pub fn element_from_word(&self, letters: &[usize]) -> Result<CoxeterElement, IndexOutOfRange> {
        let mut u = self.identity();
        for &i in letters {
            self.check_index(i)?;
            self.right_mul_simple(&mut u, i);
        }
        Ok(u)
    }

    /// `u ← s_i u`. Row `i` of the matrix and column `i` of the inverse change.
    pub fn left_mul_simple(&self, u: &mut CoxeterElement, i: usize) {
        let n = self.rank;
        let descent = u.has_left_descent(i);
        for c in 0..n {
            let mut v = -u.matrix[i * n + c];
            for &j in self.graph.neighbours(i) {
                v += u.matrix[j * n + c];
            }
            u.matrix[i * n + c] = v;
        }
        for r in 0..n {
            let col_i = u.inverse[r * n + i];
            for &j in self.graph.neighbours(i) {
                u.inverse[r * n + j] += col_i;
            }
            u.inverse[r * n + i] = -col_i;
        }
        u.length = if descent { u.length - 1 } else { u.length + 1 };
    }

    /// `u ← u s_i`. Column `i` of the matrix and row `i` of the inverse change.
    pub fn right_mul_simple(&self, u: &mut CoxeterElement, i: usize) {
        let n = self.rank;
        let descent = u.has_right_descent(i);
        for r in 0..n {
            let col_i = u.matrix[r * n + i];
            for &j in self.graph.neighbours(i) {
                u.matrix[r * n + j] += col_i;
            }
            u.matrix[r * n + i] = -col_i;
        }
        for c in 0..n {
            let mut v = -u.inverse[i * n + c];
            for &j in self.graph.neighbours(i) {
                v += u.inverse[j * n + c];
            }
            u.inverse[i * n + c] = v;
        }
        u.length = if descent { u.length - 1 } else { u.length + 1 };
    }

    pub fn mul(&self, u: &CoxeterElement, v: &CoxeterElement) -> CoxeterElement {
        let n = self.rank;
        let product = |a: &[i32], b: &[i32]| -> Box<[i32]> {
            let mut out = vec![0; n * n];
            for r in 0..n {
                for k in 0..n {
                    let x = a[r * n + k];
                    if x != 0 {
                        for c in 0..n {
                            out[r * n + c] += x * b[k * n + c];
                        }
                    }
                }
            }
            out.into_boxed_slice()
        };
        let matrix = product(&u.matrix, &v.matrix);
        let inverse = product(&v.inverse, &u.inverse);
        let mut w = CoxeterElement { rank: n, matrix, inverse, length: 0 };
        w.length = self.inversion_count(&w) as u32;
        w
    }

    /// Number of positive roots sent to negative roots, counted directly.
    pub fn inversion_count(&self, u: &CoxeterElement) -> usize {
        self.positive_roots
            .iter()
            .filter(|root| u.apply(root).iter().any(|&x| x < 0))
            .count()
    }

    pub fn longest_element(&self) -> &CoxeterElement {
        &self.longest
    }

    /// The involution `τ` of generator indices with `w0 s_i w0 = s_τ(i)`.
    pub fn diagram_automorphism(&self) -> &[usize] {
        &self.diagram_automorphism
    }

    /// `w0 u w0`, computed by permuting rows and columns with `τ`.
    pub fn conjugate_by_longest(&self, u: &CoxeterElement) -> CoxeterElement {
        let n = self.rank;
        let tau = &self.diagram_automorphism;
        let mut matrix = vec![0; n * n].into_boxed_slice();
        let mut inverse = vec![0; n * n].into_boxed_slice();
        for r in 0..n {
            for c in 0..n {
                matrix[tau[r] * n + tau[c]] = u.matrix[r * n + c];
                inverse[tau[r] * n + tau[c]] = u.inverse[r * n + c];
            }
        }
        CoxeterElement { rank: n, matrix, inverse, length: u.length }
    }

    /// `∂u = u⁻¹ w0`, the complement of `u` in the longest element.
    pub fn right_complement(&self, u: &CoxeterElement) -> CoxeterElement {
        let mut c = self.mul(&u.inverse(), &self.longest);
        c.length = self.longest.length - u.length;
        c
    }

    /// Greatest common left divisor in the prefix order, obtained by
    /// stripping the smallest shared left descent until none remains.
    pub fn meet_left(&self, u: &CoxeterElement, v: &CoxeterElement) -> CoxeterElement {
        let (mut u, mut v) = (u.clone(), v.clone());
        let mut meet = self.identity();
        while let Some(i) = (0..self.rank).find(|&i| u.has_left_descent(i) && v.has_left_descent(i)) {
            self.left_mul_simple(&mut u, i);
            self.left_mul_simple(&mut v, i);
            self.right_mul_simple(&mut meet, i);
        }
        meet
    }

    /// `u ⪯ v` in the prefix order: `ℓ(u⁻¹v) = ℓ(v) − ℓ(u)`.
    pub fn left_divides(&self, u: &CoxeterElement, v: &CoxeterElement) -> bool {
        u.length <= v.length && self.mul(&u.inverse(), v).length + u.length == v.length
    }

    /// Lexicographically smallest reduced word (0-based letters).
    pub fn reduced_word(&self, u: &CoxeterElement) -> Vec<usize> {
        let mut u = u.clone();
        let mut word = Vec::with_capacity(u.length());
        while let Some(i) = (0..self.rank).find(|&i| u.has_left_descent(i)) {
            word.push(i);
            self.left_mul_simple(&mut u, i);
        }
        word
    }

    /// Set of generators appearing in any reduced word of `u`.
    pub fn support(&self, u: &CoxeterElement) -> BTreeSet<usize> {
        self.reduced_word(u).into_iter().collect()
    }

    /// Permutation of `{±positive roots}` check: every root maps to a root.
    pub fn permutes_roots(&self, u: &CoxeterElement) -> bool {
        let roots: BTreeSet<Vec<i32>> = self.positive_roots.iter().cloned().collect();
        self.positive_roots.iter().all(|r| {
            let image = u.apply(r);
            let neg: Vec<i32> = image.iter().map(|x| -x).collect();
            roots.contains(&image) || roots.contains(&neg)
        })
    }
}

/// Positive roots by closing the simple roots under simple reflections.
fn reflection_closure(cartan: &[i32], rank: usize) -> Vec<Vec<i32>> {
    let simple: Vec<Vec<i32>> = (0..rank)
        .map(|i| (0..rank).map(|j| i32::from(i == j)).collect())
        .collect();
    let mut seen: BTreeSet<Vec<i32>> = simple.iter().cloned().collect();
    let mut queue: VecDeque<Vec<i32>> = simple.iter().cloned().collect();
    while let Some(beta) = queue.pop_front() {
        for i in 0..rank {
            let pairing: i32 = (0..rank).map(|j| cartan[i * rank + j] * beta[j]).sum();
            if pairing == 0 {
                continue;
            }
            let mut gamma = beta.clone();
            gamma[i] -= pairing;
            if gamma.iter().all(|&x| x >= 0) && gamma.iter().any(|&x| x > 0) && seen.insert(gamma.clone()) {
                queue.push_back(gamma);
            }
        }
    }
    let mut rest: Vec<Vec<i32>> = seen.into_iter().filter(|r| !simple.contains(r)).collect();
    rest.sort();
    simple.into_iter().chain(rest).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn rs(name: &str) -> RootSystem {
        RootSystem::new(CoxeterGraph::named(name).unwrap())
    }

    /// Every element of a small Coxeter group, by BFS over right multiplication.
    fn enumerate(roots: &RootSystem) -> Vec<CoxeterElement> {
        let mut seen = HashSet::new();
        let mut out = vec![roots.identity()];
        seen.insert(roots.identity());
        let mut i = 0;
        while i < out.len() {
            for g in 0..roots.rank() {
                let mut next = out[i].clone();
                roots.right_mul_simple(&mut next, g);
                if seen.insert(next.clone()) {
                    out.push(next);
                }
            }
            i += 1;
        }
        out
    }

    #[test]
    fn positive_root_counts() {
        assert_eq!(rs("A2").positive_roots().len(), 3);
        assert_eq!(rs("A2").positive_roots(), &[vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(rs("A3").positive_roots().len(), 6);
        assert_eq!(rs("D5").positive_roots().len(), 20);
        assert_eq!(rs("E6").positive_roots().len(), 36);
        assert_eq!(rs("E7").positive_roots().len(), 63);
        assert_eq!(rs("E8").positive_roots().len(), 120);
    }

    #[test]
    fn closed_under_simple_reflections() {
        let r = rs("E6");
        for i in 0..r.rank() {
            assert!(r.permutes_roots(&r.simple_reflection(i).unwrap()));
        }
        for i in 0..6 {
            assert_eq!(r.cartan(i, i), 2);
        }
        assert_eq!(r.cartan(0, 2), -1);
        assert_eq!(r.cartan(0, 1), 0);
    }

    #[test]
    fn element_from_word_basics() {
        let r = rs("A2");
        assert_eq!(r.element_from_word(&[]).unwrap(), r.identity());
        assert_eq!(r.element_from_word(&[1, 1]).unwrap(), r.identity());
        assert_eq!(r.element_from_word(&[0, 1, 0]).unwrap(), r.element_from_word(&[1, 0, 1]).unwrap());
        assert_eq!(r.element_from_word(&[2]), Err(IndexOutOfRange { index: 2, rank: 2 }));
    }

    #[test]
    fn length_and_descents() {
        let a2 = rs("A2");
        assert_eq!(a2.identity().length(), 0);
        assert!(a2.identity().left_descents().is_empty());
        let w0 = a2.longest_element();
        assert_eq!(w0.length(), 3);
        assert_eq!(w0.left_descents(), vec![0, 1]);
        assert_eq!(a2.reduced_word(w0), vec![0, 1, 0]);

        // In A3 the word [1,3] has inversions {α1, α3}.
        let a3 = rs("A3");
        let u = a3.element_from_word(&[0, 2]).unwrap();
        assert_eq!(u.length(), 2);
        assert_eq!(u.left_descents(), vec![0, 2]);
    }

    #[test]
    fn longest_elements() {
        let a1 = rs("A1");
        assert_eq!(a1.longest_element(), &a1.simple_reflection(0).unwrap());
        for name in ["A1", "A2", "A5", "D4", "D5", "E6", "E7", "E8"] {
            let r = rs(name);
            let w0 = r.longest_element();
            assert_eq!(w0.length(), r.positive_roots().len(), "{name}");
            assert_eq!(r.inversion_count(w0), w0.length());
            assert!(r.mul(w0, w0).is_identity(), "{name}: w0 is an involution");
        }
        // E6 diagram automorphism in Bourbaki numbering: 1↔6, 3↔5.
        assert_eq!(rs("E6").diagram_automorphism(), &[5, 1, 4, 3, 2, 0]);
        assert_eq!(rs("E7").diagram_automorphism(), &[0, 1, 2, 3, 4, 5, 6]);
        assert_eq!(rs("D5").diagram_automorphism(), &[0, 1, 2, 4, 3]);
        assert_eq!(rs("D4").diagram_automorphism(), &[0, 1, 2, 3]);
    }

    #[test]
    fn complement_examples() {
        let a2 = rs("A2");
        let w0 = a2.longest_element().clone();
        assert_eq!(a2.right_complement(&a2.identity()), w0);
        assert!(a2.right_complement(&w0).is_identity());
        let s1 = a2.simple_reflection(0).unwrap();
        assert_eq!(a2.right_complement(&s1), a2.element_from_word(&[1, 0]).unwrap());
    }

    #[test]
    fn meet_examples() {
        let a2 = rs("A2");
        let s1 = a2.simple_reflection(0).unwrap();
        let s1s2 = a2.element_from_word(&[0, 1]).unwrap();
        assert_eq!(a2.meet_left(&s1s2, &s1), s1);
        assert!(a2.meet_left(&s1s2, &a2.identity()).is_identity());
    }

    /// Brute-force meet: the longest element among all common left divisors.
    fn brute_meet(roots: &RootSystem, all: &[CoxeterElement], u: &CoxeterElement, v: &CoxeterElement) -> CoxeterElement {
        let common: Vec<&CoxeterElement> = all.iter().filter(|d| roots.left_divides(d, u) && roots.left_divides(d, v)).collect();
        let best = common.iter().max_by_key(|d| d.length()).unwrap();
        // the lattice property: the maximum is unique and divisible by every common divisor
        for d in &common {
            assert!(roots.left_divides(d, best));
        }
        (*best).clone()
    }

    #[test]
    fn meet_matches_exhaustive_divisor_enumeration() {
        for (name, order) in [("A2", 6), ("A3", 24)] {
            let r = rs(name);
            let all = enumerate(&r);
            assert_eq!(all.len(), order);
            for u in &all {
                for v in &all {
                    assert_eq!(r.meet_left(u, v), brute_meet(&r, &all, u, v), "{name}");
                }
            }
        }
    }

    #[test]
    fn lengths_and_complements_over_whole_groups() {
        for name in ["A3", "D4"] {
            let r = rs(name);
            let n = r.positive_roots().len();
            for u in enumerate(&r) {
                assert_eq!(u.length(), r.inversion_count(&u));
                assert_eq!(r.reduced_word(&u).len(), u.length());
                assert_eq!(u.length() + r.right_complement(&u).length(), n);
                assert!(r.permutes_roots(&u));
                for i in 0..r.rank() {
                    assert_eq!(u.has_left_descent(i), u.inverse().has_right_descent(i));
                }
            }
        }
    }

    #[test]
    fn longest_conjugation_permutes_generators() {
        for name in ["A4", "D5", "E6", "E7"] {
            let r = rs(name);
            let w0 = r.longest_element();
            for i in 0..r.rank() {
                let s = r.simple_reflection(i).unwrap();
                let conj = r.mul(&r.mul(w0, &s), w0);
                assert_eq!(conj.length(), 1);
                assert_eq!(conj, r.conjugate_by_longest(&s));
            }
        }
    }
}
