use std::fmt;
use std::hash::{Hash, Hasher};

/// An element of a finite simply-laced Coxeter group, stored as its integer
/// matrix on the root lattice (column `j` is the image of the simple root
/// `α_j`) together with the inverse matrix and the Coxeter length.
///
/// Equality and hashing look at the matrix only. Every mutating operation
/// lives on [`RootSystem`](super::RootSystem), which knows the Cartan matrix.
#[derive(Clone)]
pub struct CoxeterElement {
    pub(crate) rank: usize,
    pub(crate) matrix: Box<[i32]>,
    pub(crate) inverse: Box<[i32]>,
    pub(crate) length: u32,
}

impl CoxeterElement {
    pub(crate) fn identity(rank: usize) -> Self {
        let mut m = vec![0; rank * rank].into_boxed_slice();
        for i in 0..rank {
            m[i * rank + i] = 1;
        }
        CoxeterElement { rank, inverse: m.clone(), matrix: m, length: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Coxeter length: the number of positive roots sent to negative roots.
    pub fn length(&self) -> usize {
        self.length as usize
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// Entry `(row, col)` of the matrix.
    pub fn entry(&self, row: usize, col: usize) -> i32 {
        self.matrix[row * self.rank + col]
    }

    /// Matrix rows.
    pub fn rows(&self) -> Vec<Vec<i32>> {
        self.matrix.chunks(self.rank).map(<[i32]>::to_vec).collect()
    }

    /// `i` is a left descent iff `u⁻¹(α_i)` is a negative root.
    pub fn has_left_descent(&self, i: usize) -> bool {
        column_is_negative(&self.inverse, self.rank, i)
    }

    /// `i` is a right descent iff `u(α_i)` is a negative root.
    pub fn has_right_descent(&self, i: usize) -> bool {
        column_is_negative(&self.matrix, self.rank, i)
    }

    /// 0-based left descents in increasing order.
    pub fn left_descents(&self) -> Vec<usize> {
        (0..self.rank).filter(|&i| self.has_left_descent(i)).collect()
    }

    pub fn right_descents(&self) -> Vec<usize> {
        (0..self.rank).filter(|&i| self.has_right_descent(i)).collect()
    }

    /// Bitmask of left descents (rank ≤ 64).
    pub(crate) fn left_descent_mask(&self) -> u64 {
        (0..self.rank).filter(|&i| self.has_left_descent(i)).fold(0, |m, i| m | (1 << i))
    }

    pub(crate) fn right_descent_mask(&self) -> u64 {
        (0..self.rank).filter(|&i| self.has_right_descent(i)).fold(0, |m, i| m | (1 << i))
    }

    /// Applies the element to a vector in root coordinates.
    pub fn apply(&self, v: &[i32]) -> Vec<i32> {
        self.matrix.chunks(self.rank).map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn inverse(&self) -> CoxeterElement {
        CoxeterElement { rank: self.rank, matrix: self.inverse.clone(), inverse: self.matrix.clone(), length: self.length }
    }
}

fn column_is_negative(m: &[i32], rank: usize, col: usize) -> bool {
    // roots are sign-coherent, so the first nonzero entry decides
    (0..rank).map(|r| m[r * rank + col]).find(|&x| x != 0).is_some_and(|x| x < 0)
}

impl PartialEq for CoxeterElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for CoxeterElement {}

impl Hash for CoxeterElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.matrix.hash(state);
    }
}

impl fmt::Debug for CoxeterElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoxeterElement(len {}, {:?})", self.length, self.rows())
    }
}
