//! Homological image of a geometric homomorphism.
//!
//! Generator `a_i` acts on `H₁(Σ_g; ℤ) ≅ ℤ^{2g}` as the transvection
//! `x ↦ x + ⟨x, v_i⟩ v_i` about a curve class `v_i`. When the classes pair
//! like the Coxeter graph (`|⟨v_i, v_j⟩| = 1` on edges, `0` otherwise) the
//! transvections satisfy the Artin relations, so every word gets a well
//! defined symplectic matrix. A trivial matrix is necessary, not sufficient,
//! for a word to die in the mapping class group.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coxeter::CoxeterGraph;
use crate::garside::GeneratorWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("transvection about the zero vector")]
    ZeroVector,
    #[error("vector of length {found} in a space of dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("no curve classes with entries in [-2, 2] realize {graph} in genus {genus}")]
    NoRealization { graph: String, genus: usize },
    #[error("generator a{} has no curve class ({available} available)", .index + 1)]
    IndexOutOfRange { index: usize, available: usize },
    #[error("integer overflow in matrix arithmetic")]
    Overflow,
}

/// `H₁` of a closed genus-`g` surface with its intersection pairing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymplecticSpace {
    genus: usize,
}

impl SymplecticSpace {
    pub fn new(genus: usize) -> Self {
        assert!(genus >= 1, "genus must be positive");
        SymplecticSpace { genus }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn dim(&self) -> usize {
        2 * self.genus
    }

    /// Block diagonal with blocks `[[0, 1], [-1, 0]]`.
    pub fn pairing_matrix(&self) -> SymplecticMatrix {
        let n = self.dim();
        let mut m = SymplecticMatrix::zero(n);
        for b in 0..self.genus {
            m.set(2 * b, 2 * b + 1, 1);
            m.set(2 * b + 1, 2 * b, -1);
        }
        m
    }

    /// `⟨x, v⟩ = xᵀ J v`.
    pub fn pairing(&self, x: &[i64], v: &[i64]) -> i64 {
        (0..self.genus).map(|b| x[2 * b] * v[2 * b + 1] - x[2 * b + 1] * v[2 * b]).sum()
    }

    fn check_dim(&self, v: &[i64]) -> Result<(), HomologyError> {
        if v.len() == self.dim() {
            Ok(())
        } else {
            Err(HomologyError::DimensionMismatch { expected: self.dim(), found: v.len() })
        }
    }
}

/// An integral homology class, primitive when it comes from a simple closed curve.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveClass(pub Vec<i64>);

impl CurveClass {
    pub fn is_primitive(&self) -> bool {
        self.0.iter().fold(0, |g, &x| gcd(g, x.abs())) == 1
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", items.join(","))
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymplecticMatrix {
    dim: usize,
    entries: Vec<i64>,
}

impl SymplecticMatrix {
    pub fn zero(dim: usize) -> Self {
        SymplecticMatrix { dim, entries: vec![0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        SymplecticMatrix { dim, entries: rows.into_iter().flatten().collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.dim + j]
    }

    fn set(&mut self, i: usize, j: usize, x: i64) {
        self.entries[i * self.dim + j] = x;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.dim).map(<[i64]>::to_vec).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, HomologyError> {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc: i64 = 0;
                for k in 0..n {
                    let term = self.get(i, k).checked_mul(other.get(k, j)).ok_or(HomologyError::Overflow)?;
                    acc = acc.checked_add(term).ok_or(HomologyError::Overflow)?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn apply(&self, x: &[i64]) -> Result<Vec<i64>, HomologyError> {
        (0..self.dim)
            .map(|i| {
                (0..self.dim).try_fold(0i64, |acc, k| {
                    self.get(i, k).checked_mul(x[k]).and_then(|t| acc.checked_add(t)).ok_or(HomologyError::Overflow)
                })
            })
            .collect()
    }

    /// Whether `Mᵀ J M = J`.
    pub fn is_symplectic(&self, space: &SymplecticSpace) -> bool {
        let j = space.pairing_matrix();
        self.dim == j.dim && self.transpose().mul(&j).and_then(|tj| tj.mul(self)).map(|m| m == j).unwrap_or(false)
    }

    /// Inverse of a symplectic matrix: `M⁻¹ = -J Mᵀ J`.
    pub fn symplectic_inverse(&self, space: &SymplecticSpace) -> Result<Self, HomologyError> {
        let j = space.pairing_matrix();
        let mut m = j.mul(&self.transpose())?.mul(&j)?;
        for e in &mut m.entries {
            *e = -*e;
        }
        Ok(m)
    }

    /// Determinant by fraction-free elimination.
    pub fn determinant(&self) -> i128 {
        let n = self.dim;
        let mut a: Vec<Vec<i128>> = self.rows().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect();
        let (mut sign, mut prev) = (1i128, 1i128);
        for k in 0..n {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&r| a[r][k] != 0) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        sign * a[n - 1][n - 1]
    }
}

impl fmt::Display for SymplecticMatrix {
    /// One row per line, entries separated by single spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.chunks(self.dim).enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let items: Vec<String> = row.iter().map(i64::to_string).collect();
            f.write_str(&items.join(" "))?;
        }
        Ok(())
    }
}

/// `x ↦ x + sign·⟨x, v⟩ v`, i.e. `M = I + sign · v (J v)ᵀ`.
fn transvection_signed(space: &SymplecticSpace, v: &CurveClass, sign: i64) -> Result<SymplecticMatrix, HomologyError> {
    space.check_dim(&v.0)?;
    if v.0.iter().all(|&x| x == 0) {
        return Err(HomologyError::ZeroVector);
    }
    let n = space.dim();
    let mut m = SymplecticMatrix::identity(n);
    // ⟨e_j, v⟩ is the j-th entry of J v.
    let jv: Vec<i64> = (0..n)
        .map(|j| {
            let mut e = vec![0; n];
            e[j] = 1;
            space.pairing(&e, &v.0)
        })
        .collect();
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, m.get(i, j) + sign * v.0[i] * jv[j]);
        }
    }
    Ok(m)
}

/// Homological action of the Dehn twist about `v`.
pub fn transvection(space: &SymplecticSpace, v: &CurveClass) -> Result<SymplecticMatrix, HomologyError> {
    transvection_signed(space, v, 1)
}

/// Exact rank over ℚ of a set of integer vectors.
fn rank(vectors: &[&[i64]]) -> usize {
    let mut rows: Vec<Vec<i128>> = vectors.iter().map(|v| v.iter().map(|&x| i128::from(x)).collect()).collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            let (a, b) = (rows[r][c], rows[i][c]);
            for k in 0..cols {
                rows[i][k] = rows[i][k] * a - rows[r][k] * b;
            }
            let g = rows[i].iter().fold(0i128, |g, &x| gcd128(g, x.abs()));
            if g > 1 {
                rows[i].iter_mut().for_each(|x| *x /= g);
            }
        }
        r += 1;
    }
    r
}

fn gcd128(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd128(b, a % b)
    }
}

/// Rank of a coordinate value in the search order `1, -1, 2, -2, 0`.
fn value_rank(x: i64) -> u8 {
    match x {
        1 => 0,
        -1 => 1,
        2 => 2,
        -2 => 3,
        _ => 4,
    }
}

/// All primitive vectors with entries in `[-2, 2]`, ordered by `L¹` norm,
/// then lexicographically under the value order `1 < -1 < 2 < -2 < 0`.
fn search_space(dim: usize) -> Vec<Vec<i64>> {
    let total = 5usize.pow(dim as u32);
    let mut out: Vec<Vec<i64>> = (0..total)
        .map(|mut code| {
            (0..dim)
                .map(|_| {
                    let x = [-2, -1, 0, 1, 2][code % 5];
                    code /= 5;
                    x
                })
                .collect::<Vec<i64>>()
        })
        .filter(|v| CurveClass(v.clone()).is_primitive())
        .collect();
    out.sort_by_cached_key(|v| (v.iter().map(|x| x.abs()).sum::<i64>(), v.iter().map(|&x| value_rank(x)).collect::<Vec<_>>()));
    out
}

/// Curve classes realizing `graph` as an intersection pattern, found by
/// depth-first search in vertex order over [`search_space`]. The classes are
/// linearly independent.
pub fn find_curve_classes(space: &SymplecticSpace, graph: &CoxeterGraph) -> Result<Vec<CurveClass>, HomologyError> {
    let n = graph.rank();
    let fail = || HomologyError::NoRealization { graph: graph.type_name(), genus: space.genus() };
    if n > space.dim() {
        return Err(fail());
    }
    let pool = search_space(space.dim());
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    let mut next = vec![0usize; n + 1];
    // Iterative DFS: `next[k]` is the pool index to try next at depth k.
    while chosen.len() < n {
        let k = chosen.len();
        let found = (next[k]..pool.len()).find(|&c| {
            let v = &pool[c];
            chosen.iter().enumerate().all(|(i, &ci)| {
                let p = space.pairing(&pool[ci], v).abs();
                if graph.adjacent(i, k) {
                    p == 1
                } else {
                    p == 0
                }
            }) && {
                let mut vs: Vec<&[i64]> = chosen.iter().map(|&ci| pool[ci].as_slice()).collect();
                vs.push(v);
                rank(&vs) == k + 1
            }
        });
        match found {
            Some(c) => {
                next[k] = c + 1;
                chosen.push(c);
                next[k + 1] = 0;
            }
            None => {
                if chosen.pop().is_none() {
                    return Err(fail());
                }
            }
        }
    }
    Ok(chosen.into_iter().map(|c| CurveClass(pool[c].clone())).collect())
}

/// A curve-class assignment together with its transvections.
#[derive(Debug, Clone)]
pub struct Representation {
    space: SymplecticSpace,
    classes: Vec<CurveClass>,
    forward: Vec<SymplecticMatrix>,
    backward: Vec<SymplecticMatrix>,
}

impl Representation {
    pub fn new(space: SymplecticSpace, classes: Vec<CurveClass>) -> Result<Self, HomologyError> {
        let forward = classes.iter().map(|v| transvection_signed(&space, v, 1)).collect::<Result<_, _>>()?;
        let backward = classes.iter().map(|v| transvection_signed(&space, v, -1)).collect::<Result<_, _>>()?;
        Ok(Representation { space, classes, forward, backward })
    }

    /// Searches for classes realizing `graph` in genus `genus`.
    pub fn for_graph(graph: &CoxeterGraph, genus: usize) -> Result<Self, HomologyError> {
        let space = SymplecticSpace::new(genus);
        Self::new(space, find_curve_classes(&space, graph)?)
    }

    pub fn space(&self) -> &SymplecticSpace {
        &self.space
    }

    pub fn classes(&self) -> &[CurveClass] {
        &self.classes
    }

    pub fn transvections(&self) -> &[SymplecticMatrix] {
        &self.forward
    }

    /// Ordered product over the letters; inverse letters use the inverse transvection.
    pub fn evaluate(&self, word: &GeneratorWord) -> Result<SymplecticMatrix, HomologyError> {
        let mut m = SymplecticMatrix::identity(self.space.dim());
        for letter in word.letters() {
            let table = if letter.inverse { &self.backward } else { &self.forward };
            let t = table.get(letter.generator).ok_or(HomologyError::IndexOutOfRange {
                index: letter.generator,
                available: self.classes.len(),
            })?;
            m = m.mul(t)?;
        }
        debug_assert!(m.is_symplectic(&self.space));
        Ok(m)
    }

    pub fn kernel_witness(&self, word: &GeneratorWord) -> Result<KernelWitness, HomologyError> {
        let matrix = self.evaluate(word)?;
        Ok(KernelWitness { trivial: matrix.is_identity(), matrix })
    }
}

/// Homological test for kernel membership.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelWitness {
    pub trivial: bool,
    pub matrix: SymplecticMatrix,
}

impl KernelWitness {
    pub const CAVEAT: &'static str = "trivial homological image is necessary, not sufficient, for lying in the kernel";
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, Labeling};
    use crate::lang::Convention;

    #[test]
    fn transvection_basics() {
        let s = SymplecticSpace::new(3);
        let v = CurveClass(vec![1, 0, -1, 2, 0, 1]);
        let m = transvection(&s, &v).unwrap();
        assert_eq!(m.apply(&v.0).unwrap(), v.0);
        assert_eq!(m.determinant(), 1);
        assert!(m.is_symplectic(&s));
        assert!(m.mul(&m.symplectic_inverse(&s).unwrap()).unwrap().is_identity());
        assert_eq!(transvection(&s, &CurveClass(vec![0; 6])), Err(HomologyError::ZeroVector));
        assert!(matches!(transvection(&s, &CurveClass(vec![1, 0])), Err(HomologyError::DimensionMismatch { .. })));
    }

    #[test]
    fn pairing_matrix_squares_to_minus_identity() {
        let s = SymplecticSpace::new(3);
        let j = s.pairing_matrix();
        assert_eq!(j.transpose(), {
            let mut m = j.clone();
            m.entries.iter_mut().for_each(|e| *e = -*e);
            m
        });
        let mut minus = SymplecticMatrix::identity(6);
        minus.entries.iter_mut().for_each(|e| *e = -*e);
        assert_eq!(j.mul(&j).unwrap(), minus);
    }

    #[test]
    fn braid_relation_for_unit_pairing() {
        let s = SymplecticSpace::new(3);
        let u = CurveClass(vec![1, 0, 0, 0, 1, 0]);
        let v = CurveClass(vec![0, 1, 1, 0, 0, 0]);
        assert_eq!(s.pairing(&u.0, &v.0).abs(), 1);
        let (tu, tv) = (transvection(&s, &u).unwrap(), transvection(&s, &v).unwrap());
        let lhs = tu.mul(&tv).unwrap().mul(&tu).unwrap();
        let rhs = tv.mul(&tu).unwrap().mul(&tv).unwrap();
        assert_eq!(lhs, rhs);
        assert_ne!(tu.mul(&tv).unwrap(), tv.mul(&tu).unwrap());
    }

    #[test]
    fn a2_in_genus_one() {
        let g = CoxeterGraph::named("A2").unwrap();
        let classes = find_curve_classes(&SymplecticSpace::new(1), &g).unwrap();
        assert_eq!(classes, vec![CurveClass(vec![1, 0]), CurveClass(vec![0, 1])]);
        assert!(find_curve_classes(&SymplecticSpace::new(1), &CoxeterGraph::named("A3").unwrap()).is_err());
    }

    fn check_pattern(graph: &CoxeterGraph, genus: usize) -> Representation {
        let rep = Representation::for_graph(graph, genus).unwrap();
        let s = rep.space();
        for (i, vi) in rep.classes().iter().enumerate() {
            assert!(vi.is_primitive());
            for (j, vj) in rep.classes().iter().enumerate() {
                let expected = i64::from(graph.adjacent(i, j));
                assert_eq!(s.pairing(&vi.0, &vj.0).abs(), expected, "pair {i},{j}");
            }
        }
        rep
    }

    #[test]
    fn realizations_in_genus_three() {
        for name in ["A5", "E6", "D4", "A6"] {
            check_pattern(&CoxeterGraph::named(name).unwrap(), 3);
        }
        check_pattern(Labeling::resolved().graph(), 3);
    }

    #[test]
    fn defining_relations_hold() {
        let graph = Labeling::resolved().graph().clone();
        let rep = check_pattern(&graph, 3);
        for i in 0..6 {
            for j in i + 1..6 {
                let (a, b) = ((i + 1) as i64, (j + 1) as i64);
                let rel = if graph.adjacent(i, j) {
                    GeneratorWord::from_signed(&[a, b, a, -b, -a, -b])
                } else {
                    GeneratorWord::from_signed(&[a, b, -a, -b])
                };
                assert!(rep.evaluate(&rel).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn evaluate_examples() {
        let l = Labeling::resolved();
        let rep = Representation::for_graph(l.graph(), 3).unwrap();
        assert!(rep.evaluate(&GeneratorWord::empty()).unwrap().is_identity());
        for conv in Convention::BOTH {
            let w = catalog::make_w(&l, conv).word;
            assert!(rep.kernel_witness(&w).unwrap().trivial);
            let k = catalog::make_kappa(&l).word;
            assert!(rep.kernel_witness(&w.conjugate_by(&k)).unwrap().trivial);
        }
        assert!(!rep.kernel_witness(&GeneratorWord::from_signed(&[1])).unwrap().trivial);
        assert!(matches!(
            rep.evaluate(&GeneratorWord::from_signed(&[7])),
            Err(HomologyError::IndexOutOfRange { index: 6, available: 6 })
        ));
    }

    #[test]
    fn delta_squared_is_central_in_the_image() {
        let l = Labeling::resolved();
        let rep = Representation::for_graph(l.graph(), 3).unwrap();
        let d2 = rep.evaluate(&catalog::make_delta(&l).word.pow(2)).unwrap();
        for t in rep.transvections() {
            assert_eq!(d2.mul(t).unwrap(), t.mul(&d2).unwrap());
        }
    }

    #[test]
    fn matrices_print_row_major() {
        let m = SymplecticMatrix::from_rows(vec![vec![1, -2], vec![0, 1]]);
        assert_eq!(m.to_string(), "1 -2\n0 1");
    }
}
