//! Sublattices of Z^r in canonical Hermite form, and the lattice-level
//! operations the invariant computations rely on: annihilators, saturation,
//! direct-sum tests and preimages.

use crate::error::{Error, Result};
use crate::matrix::{dot, is_zero_vec, Int, IntMatrix};
use num_traits::{One, Signed};

/// A sublattice of Z^r, stored as the row span of an HNF-canonical basis.
/// Equality of values is equality of sublattices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Sublattice {
    ambient_rank: usize,
    basis: IntMatrix,
}

impl Sublattice {
    /// Row span of arbitrary generators (not saturated automatically).
    pub fn from_generators(ambient_rank: usize, gens: &[Vec<Int>]) -> Sublattice {
        for g in gens {
            assert_eq!(g.len(), ambient_rank, "generator length != ambient rank");
        }
        let m = IntMatrix::from_rows(gens.to_vec(), ambient_rank);
        let (h, _) = m.hermite_normal_form();
        let rows: Vec<Vec<Int>> = (0..h.nrows())
            .map(|i| h.row(i).to_vec())
            .filter(|r| !is_zero_vec(r))
            .collect();
        Sublattice {
            ambient_rank,
            basis: IntMatrix::from_rows(rows, ambient_rank),
        }
    }

    pub fn full(ambient_rank: usize) -> Sublattice {
        Sublattice {
            ambient_rank,
            basis: IntMatrix::identity(ambient_rank),
        }
    }

    pub fn zero(ambient_rank: usize) -> Sublattice {
        Sublattice {
            ambient_rank,
            basis: IntMatrix::zeros(0, ambient_rank),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    /// HNF-canonical basis rows.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<Int>> {
        self.basis.rows_vec()
    }

    /// Membership over Z.
    pub fn contains(&self, v: &[Int]) -> bool {
        assert_eq!(v.len(), self.ambient_rank);
        self.basis.solve_left_integer(v).is_some()
    }

    /// Membership of v in the Q-span.
    pub fn spans_rationally(&self, v: &[Int]) -> bool {
        assert_eq!(v.len(), self.ambient_rank);
        self.basis.solve_left_rational(v).is_some()
    }

    /// Coordinates of v in this basis over Z, if any.
    pub fn coordinates(&self, v: &[Int]) -> Option<Vec<Int>> {
        self.basis.solve_left_integer(v)
    }

    /// All vectors of the ambient dual pairing to zero with this sublattice.
    /// Always saturated.
    pub fn annihilator(&self) -> Sublattice {
        annihilator(&self.basis_rows(), self.ambient_rank)
    }

    /// Smallest saturated sublattice containing this one.
    pub fn saturation(&self) -> Sublattice {
        self.annihilator().annihilator()
    }

    pub fn is_saturated(&self) -> bool {
        *self == self.saturation()
    }

    /// Sublattice sum a + b.
    pub fn sum(&self, other: &Sublattice) -> Sublattice {
        assert_eq!(self.ambient_rank, other.ambient_rank);
        let mut gens = self.basis_rows();
        gens.extend(other.basis_rows());
        Sublattice::from_generators(self.ambient_rank, &gens)
    }

    /// Exact lattice intersection a ∩ b.
    pub fn intersection(&self, other: &Sublattice) -> Sublattice {
        assert_eq!(self.ambient_rank, other.ambient_rank);
        // x = y.A = z.B  <=>  (y | z) in the left kernel of [A; -B].
        let mut stacked = self.basis_rows();
        for r in other.basis_rows() {
            stacked.push(r.iter().map(|x| -x).collect());
        }
        let m = IntMatrix::from_rows(stacked, self.ambient_rank);
        let kernel = m.left_kernel();
        let gens: Vec<Vec<Int>> = (0..kernel.nrows())
            .map(|i| {
                let y = &kernel.row(i)[..self.rank()];
                self.basis.left_mul_vec(y)
            })
            .collect();
        Sublattice::from_generators(self.ambient_rank, &gens)
    }
}

/// All w in the dual Z^r with <v, w> = 0 for every v in `vecs`.
/// The result is saturated (a primitive kernel).
pub fn annihilator(vecs: &[Vec<Int>], ambient_rank: usize) -> Sublattice {
    for v in vecs {
        assert_eq!(v.len(), ambient_rank, "vector length != ambient rank");
    }
    if vecs.is_empty() {
        return Sublattice::full(ambient_rank);
    }
    // {w : M.w = 0} = left kernel of M^T.
    let m = IntMatrix::from_rows(vecs.to_vec(), ambient_rank);
    let kernel = m.transpose().left_kernel();
    Sublattice {
        ambient_rank,
        basis: kernel,
    }
}

/// True iff a ⊕ b = Z^r integrally: checked via SNF of the stacked bases
/// (all invariant factors 1 and total rank = ambient).
pub fn is_direct_sum(a: &Sublattice, b: &Sublattice) -> bool {
    assert_eq!(a.ambient_rank(), b.ambient_rank());
    if a.rank() + b.rank() != a.ambient_rank() {
        return false;
    }
    let mut rows = a.basis_rows();
    rows.extend(b.basis_rows());
    let m = IntMatrix::from_rows(rows, a.ambient_rank());
    let factors = m.smith_normal_form();
    factors.len() == a.ambient_rank() && factors.iter().all(|f| f.is_one())
}

/// Preimage of `target` ⊆ Z^k under the evaluation map
/// x ↦ (<x, m_1>, ..., <x, m_k>) given by the rows of `map` (k×r).
/// The preimage of a saturated sublattice is saturated.
pub fn preimage_lattice(map: &IntMatrix, target: &Sublattice) -> Sublattice {
    let k = map.nrows();
    let r = map.ncols();
    assert_eq!(target.ambient_rank(), k);
    // x ↦ x . map^T; want {x : x.map^T = c.B for some integer c}.
    // (x | c) ranges over the left kernel of [map^T; -B].
    let mut stacked = map.transpose().rows_vec();
    for row in target.basis_rows() {
        stacked.push(row.iter().map(|v| -v).collect());
    }
    let s = IntMatrix::from_rows(stacked, k);
    let kernel = s.left_kernel();
    let gens: Vec<Vec<Int>> = (0..kernel.nrows())
        .map(|i| kernel.row(i)[..r].to_vec())
        .collect();
    Sublattice::from_generators(r, &gens)
}

/// Evaluation vector (<v, b_1>, ..., <v, b_k>) of v against the rows of b.
pub fn evaluate_against(v: &[Int], b: &IntMatrix) -> Vec<Int> {
    (0..b.nrows()).map(|i| dot(v, b.row(i))).collect()
}

/// Coordinate map realising a subspace w of one side of the pairing as the
/// dual lattice of a sublattice l of the other side.
///
/// With A the HNF basis of l and B the HNF basis of w, the pairing matrix
/// P = B.A^T must be unimodular (that is the restriction-isomorphism
/// statement; `context` names the two lattices in the error otherwise).
/// The returned k×r matrix E = P^{-T}.A maps v to the B-coordinates of its
/// projection onto w along the annihilator of l, so E.B^T = id and
/// <E.v, B.m> = <v, m> for every m in l.
pub fn dual_evaluation(l: &Sublattice, w: &Sublattice, context: &str) -> Result<IntMatrix> {
    assert_eq!(l.ambient_rank(), w.ambient_rank(), "ambient ranks differ");
    let rank = l.ambient_rank();
    let k = w.rank();
    if l.rank() != k {
        return Err(Error::LatticeMismatch(format!(
            "{context}: ranks {} and {k} differ",
            l.rank()
        )));
    }
    if k == 0 {
        return Ok(IntMatrix::zeros(0, rank));
    }
    let a = l.basis();
    let b = w.basis();
    let p = b.matmul(&a.transpose());
    let det = p.determinant();
    if !det.abs().is_one() {
        return Err(Error::LatticeMismatch(format!(
            "{context}: pairing determinant is {det}"
        )));
    }
    let pt = p.transpose();
    let mut eval = IntMatrix::zeros(k, rank);
    for j in 0..rank {
        let col: Vec<Int> = (0..k).map(|i| a.get(i, j).clone()).collect();
        let x = pt
            .solve_right_integer(&col)
            .ok_or_else(|| Error::LatticeMismatch(format!("{context}: evaluation not integral")))?;
        for (i, xi) in x.into_iter().enumerate() {
            eval.set(i, j, xi);
        }
    }
    Ok(eval)
}
