//! Integer lattice arithmetic: column Hermite form, integer kernels, exact
//! solving, sums/intersections, and diagonal (Smith) reduction.
//!
//! A lattice in `Z^n` is always stored by its column Hermite basis, so two
//! lattices are equal iff their bases are equal.

use std::fmt;

use crate::matrix::Matrix;
use crate::scalar::{xgcd, IntScalar};

/// Column-style Hermite reduction `A * U = [H | 0]`.
///
/// `H` is lower echelon: column `j` is zero above its pivot row `pivots[j]`,
/// pivot rows strictly increase, pivots are positive, and the entries of
/// earlier columns in a pivot row lie in `[0, pivot)`.
#[derive(Clone, Debug)]
pub struct ColumnHermite<T: fmt::Display> {
    pub basis: Matrix<T>,
    pub pivots: Vec<usize>,
    /// Unimodular `m x m` transform, present when requested.
    pub transform: Option<Matrix<T>>,
}

impl<T: IntScalar> ColumnHermite<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Integer basis of `{x : A x = 0}`; needs the transform.
    pub fn kernel_basis(&self) -> Matrix<T> {
        let u = self.transform.as_ref().expect("hermite transform not computed");
        u.select_cols(self.rank()..u.cols())
    }

    /// Coefficients `y` with `H y = b`, if they exist.
    pub fn basis_coordinates(&self, b: &[T]) -> Option<Vec<T>> {
        let h = &self.basis;
        let mut residual = b.to_vec();
        let mut y = Vec::with_capacity(self.rank());
        for (j, &p) in self.pivots.iter().enumerate() {
            let piv = &h[(p, j)];
            let (q, r) = residual[p].div_mod_floor(piv);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (i, res) in residual.iter_mut().enumerate().skip(p) {
                    let hv = &h[(i, j)];
                    if !hv.is_zero() {
                        *res = res.clone() - q.clone() * hv.clone();
                    }
                }
            }
            y.push(q);
        }
        if residual.iter().all(|v| v.is_zero()) {
            Some(y)
        } else {
            None
        }
    }

    /// Some `x` with `A x = b`; needs the transform.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        let y = self.basis_coordinates(b)?;
        let u = self.transform.as_ref().expect("hermite transform not computed");
        let m = u.rows();
        let mut x = vec![T::zero(); m];
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            for (i, xi) in x.iter_mut().enumerate() {
                let v = &u[(i, j)];
                if !v.is_zero() {
                    *xi = xi.clone() + v.clone() * yj.clone();
                }
            }
        }
        Some(x)
    }
}

pub fn column_hermite<T: IntScalar>(a: &Matrix<T>, with_transform: bool) -> ColumnHermite<T> {
    let n = a.rows();
    let m = a.cols();
    let mut h = a.clone();
    let mut u = if with_transform { Some(Matrix::identity(m)) } else { None };
    let mut pivots = Vec::new();
    let mut piv = 0usize;

    for i in 0..n {
        if piv == m {
            break;
        }
        for j in piv + 1..m {
            if h[(i, j)].is_zero() {
                continue;
            }
            if h[(i, piv)].is_zero() {
                h.swap_cols(piv, j);
                if let Some(u) = u.as_mut() {
                    u.swap_cols(piv, j);
                }
                continue;
            }
            let a_ = h[(i, piv)].clone();
            let b_ = h[(i, j)].clone();
            if b_.is_multiple_of(&a_) {
                let q = -(b_ / a_);
                h.add_col_multiple(j, piv, &q);
                if let Some(u) = u.as_mut() {
                    u.add_col_multiple(j, piv, &q);
                }
            } else {
                let (g, x, y) = xgcd(&a_, &b_);
                let s = -(b_ / g.clone());
                let t = a_ / g;
                h.combine_cols(piv, j, &x, &y, &s, &t);
                if let Some(u) = u.as_mut() {
                    u.combine_cols(piv, j, &x, &y, &s, &t);
                }
            }
        }
        if h[(i, piv)].is_zero() {
            continue;
        }
        if h[(i, piv)].is_negative() {
            h.negate_col(piv);
            if let Some(u) = u.as_mut() {
                u.negate_col(piv);
            }
        }
        let p = h[(i, piv)].clone();
        for k in 0..piv {
            let q = h[(i, k)].div_floor(&p);
            if !q.is_zero() {
                let nq = -q;
                h.add_col_multiple(k, piv, &nq);
                if let Some(u) = u.as_mut() {
                    u.add_col_multiple(k, piv, &nq);
                }
            }
        }
        pivots.push(i);
        piv += 1;
    }

    ColumnHermite { basis: h.select_cols(0..piv), pivots, transform: u }
}

/// Integer kernel `{x : A x = 0}` as a Hermite basis.
pub fn integer_kernel<T: IntScalar>(a: &Matrix<T>) -> Matrix<T> {
    let k = column_hermite(a, true).kernel_basis();
    column_hermite(&k, false).basis
}

/// A sublattice of `Z^n` in canonical (Hermite) form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lattice<T> {
    dim: usize,
    basis: Matrix<T>,
    pivots: Vec<usize>,
}

impl<T: IntScalar> Lattice<T> {
    /// Lattice spanned by the columns of `gens` (an `n x k` matrix).
    pub fn from_generators(gens: &Matrix<T>) -> Self {
        let h = column_hermite(gens, false);
        Lattice { dim: gens.rows(), basis: h.basis, pivots: h.pivots }
    }

    pub fn zero(dim: usize) -> Self {
        Lattice { dim, basis: Matrix::zeros(dim, 0), pivots: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        Lattice { dim, basis: Matrix::identity(dim), pivots: (0..dim).collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &Matrix<T> {
        &self.basis
    }

    fn hermite(&self) -> ColumnHermite<T> {
        ColumnHermite { basis: self.basis.clone(), pivots: self.pivots.clone(), transform: None }
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.hermite().basis_coordinates(v).is_some()
    }

    pub fn contains_columns(&self, m: &Matrix<T>) -> bool {
        let h = self.hermite();
        (0..m.cols()).all(|j| h.basis_coordinates(&m.column(j)).is_some())
    }

    /// Coordinates of `v` in the Hermite basis.
    pub fn coordinates(&self, v: &[T]) -> Option<Vec<T>> {
        self.hermite().basis_coordinates(v)
    }

    /// Canonical representative of `v` modulo the lattice.
    pub fn reduce(&self, v: &[T]) -> Vec<T> {
        let mut v = v.to_vec();
        for (j, &p) in self.pivots.iter().enumerate() {
            let piv = &self.basis[(p, j)];
            let q = v[p].div_floor(piv);
            if q.is_zero() {
                continue;
            }
            for (i, vi) in v.iter_mut().enumerate().skip(p) {
                let h = &self.basis[(i, j)];
                if !h.is_zero() {
                    *vi = vi.clone() - q.clone() * h.clone();
                }
            }
        }
        v
    }

    pub fn reduce_columns(&self, m: &Matrix<T>) -> Matrix<T> {
        let cols: Vec<Vec<T>> = (0..m.cols()).map(|j| self.reduce(&m.column(j))).collect();
        Matrix::from_columns(m.rows(), &cols)
    }

    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self::from_generators(&self.basis.hcat(&other.basis))
    }

    pub fn intersection(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let joint = self.basis.hcat(&other.basis.neg());
        let ker = integer_kernel(&joint);
        let top = ker.select_rows(0..self.rank());
        Self::from_generators(&self.basis.mul(&top))
    }

    pub fn is_sublattice_of(&self, other: &Self) -> bool {
        other.contains_columns(&self.basis)
    }

    /// Image of this lattice under `m` (a `k x n` matrix).
    pub fn image(&self, m: &Matrix<T>) -> Self {
        Self::from_generators(&m.mul(&self.basis))
    }

    /// Preimage `{x : m x ∈ self}` for `m` a `dim x k` matrix.
    pub fn preimage(&self, m: &Matrix<T>) -> Lattice<T> {
        assert_eq!(m.rows(), self.dim);
        let joint = m.hcat(&self.basis);
        let ker = integer_kernel(&joint);
        Self::from_generators(&ker.select_rows(0..m.cols()))
    }
}

impl<T: IntScalar> fmt::Debug for Lattice<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice(dim {}, basis {:?})", self.dim, self.basis)
    }
}

/// Isomorphism class of a finitely generated abelian group:
/// `Z^free_rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k` with `1 < t_1 | t_2 | ... | t_k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AbelianInvariant<T> {
    pub free_rank: usize,
    pub torsion: Vec<T>,
}

impl<T: IntScalar> AbelianInvariant<T> {
    pub fn trivial() -> Self {
        AbelianInvariant { free_rank: 0, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Invariant of `Z^n / (column span of relations)`.
    pub fn of_presentation(relations: &Matrix<T>) -> Self {
        let diag = invariant_factors(relations);
        let n = relations.rows();
        let free_rank = n - diag.len();
        let torsion = diag.into_iter().filter(|d| !d.is_one()).collect();
        AbelianInvariant { free_rank, torsion }
    }

    /// Invariant of the subquotient `upper / lower`; `lower ⊆ upper` required.
    pub fn of_subquotient(upper: &Lattice<T>, lower: &Lattice<T>) -> Self {
        assert!(lower.is_sublattice_of(upper), "subquotient needs lower ⊆ upper");
        let cols: Vec<Vec<T>> = (0..lower.rank())
            .map(|j| upper.coordinates(&lower.basis().column(j)).expect("checked containment"))
            .collect();
        let rel = Matrix::from_columns(upper.rank(), &cols);
        Self::of_presentation(&rel)
    }
}

impl<T: IntScalar> fmt::Display for AbelianInvariant<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank {}, torsion [", self.free_rank)?;
        for (i, t) in self.torsion.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "]")
    }
}

/// Diagonal reduction `P A Q = D` keeping the row transform and its inverse.
#[derive(Clone, Debug)]
pub struct SmithForm<T: fmt::Display> {
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub diagonal: Vec<T>,
    pub row_transform: Matrix<T>,
    pub row_transform_inv: Matrix<T>,
}

/// Nonzero invariant factors of `a` (units included), in divisibility order.
pub fn invariant_factors<T: IntScalar>(a: &Matrix<T>) -> Vec<T> {
    // A Hermite pass first shrinks the matrix to a full-column-rank basis.
    let h = column_hermite(a, false).basis;
    smith_reduce(h, false).diagonal
}

pub fn smith_form<T: IntScalar>(a: &Matrix<T>) -> SmithForm<T> {
    smith_reduce(a.clone(), true)
}

fn smith_reduce<T: IntScalar>(mut a: Matrix<T>, track: bool) -> SmithForm<T> {
    let n = a.rows();
    let m = a.cols();
    let mut p = Matrix::identity(if track { n } else { 0 });
    let mut pinv = Matrix::identity(if track { n } else { 0 });
    let mut diagonal = Vec::new();

    // row ops mirrored into P (left) and P^{-1} (right, inverse op)
    macro_rules! swap_rows {
        ($x:expr, $y:expr) => {{
            a.swap_rows($x, $y);
            if track {
                p.swap_rows($x, $y);
                pinv.swap_cols($x, $y);
            }
        }};
    }
    macro_rules! add_row {
        ($dst:expr, $src:expr, $c:expr) => {{
            let c = $c;
            a.add_row_multiple($dst, $src, &c);
            if track {
                p.add_row_multiple($dst, $src, &c);
                pinv.add_col_multiple($src, $dst, &(-c));
            }
        }};
    }

    let mut t = 0usize;
    while t < n.min(m) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..n {
            for j in t..m {
                if a[(i, j)].is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if a[(bi, bj)].abs() <= a[(i, j)].abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        swap_rows!(t, bi);
        a.swap_cols(t, bj);

        loop {
            let mut clean = true;
            for i in t + 1..n {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                add_row!(i, t, -q);
                if !a[(i, t)].is_zero() {
                    swap_rows!(t, i);
                    clean = false;
                }
            }
            for j in t + 1..m {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col_multiple(j, t, &(-q));
                if !a[(t, j)].is_zero() {
                    a.swap_cols(t, j);
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let d = a[(t, t)].clone();
            let bad = (t + 1..n).find(|&i| (t + 1..m).any(|j| !a[(i, j)].is_multiple_of(&d)));
            match bad {
                Some(i) => add_row!(t, i, T::one()),
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            if track {
                p.negate_row(t);
                pinv.negate_col(t);
            }
        }
        diagonal.push(a[(t, t)].clone());
        t += 1;
    }

    SmithForm { diagonal, row_transform: p, row_transform_inv: pinv }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn m(rows: &[&[i64]]) -> Matrix<i64> {
        Matrix::from_i64_rows(rows)
    }

    #[test]
    fn hermite_is_canonical_for_equal_lattices() {
        let a = Lattice::from_generators(&m(&[&[2, 0], &[0, 3]]));
        let b = Lattice::from_generators(&m(&[&[2, 2, 4], &[3, 0, 3]]));
        assert_eq!(a, b);
        let c = Lattice::from_generators(&m(&[&[4, 0], &[0, 3]]));
        assert_ne!(a, c);
        assert!(c.is_sublattice_of(&a));
    }

    #[test]
    fn hermite_transform_relation() {
        let a = m(&[&[3, 5, 7], &[2, 4, 6]]);
        let h = column_hermite(&a, true);
        let u = h.transform.clone().unwrap();
        let au = a.mul(&u);
        assert_eq!(au.select_cols(0..h.rank()), h.basis);
        assert!(au.select_cols(h.rank()..3).is_zero());
        let k = h.kernel_basis();
        assert!(a.mul(&k).is_zero());
        assert_eq!(k.cols(), 1);
    }

    #[test]
    fn solve_exact() {
        let a = m(&[&[2, 0], &[0, 3]]);
        let h = column_hermite(&a, true);
        assert_eq!(h.solve(&[4, 9]), Some(vec![2, 3]));
        assert_eq!(h.solve(&[1, 0]), None);
    }

    #[test]
    fn intersection_and_sum() {
        let two = Lattice::from_generators(&m(&[&[2]]));
        let three = Lattice::from_generators(&m(&[&[3]]));
        assert_eq!(two.intersection(&three), Lattice::from_generators(&m(&[&[6]])));
        assert_eq!(two.sum(&three), Lattice::full(1));
        let four = Lattice::from_generators(&m(&[&[4]]));
        assert_eq!(two.intersection(&four), four);
    }

    #[test]
    fn preimage_of_congruence() {
        // {x : x ∈ 4Z} under the identity, and {x : 2x ∈ 4Z} = 2Z
        let four = Lattice::from_generators(&m(&[&[4]]));
        assert_eq!(four.preimage(&m(&[&[2]])), Lattice::from_generators(&m(&[&[2]])));
    }

    #[test]
    fn reduce_is_canonical_residue() {
        let l = Lattice::from_generators(&m(&[&[2, 1], &[0, 3]]));
        let r1 = l.reduce(&[5, 7]);
        let r2 = l.reduce(&[5 - 2 - 1, 7 - 3]);
        assert_eq!(r1, r2);
    }

    #[test]
    fn invariants_of_presentations() {
        let inv = AbelianInvariant::of_presentation(&m(&[&[2, 0], &[0, 3]]));
        assert_eq!(inv, AbelianInvariant { free_rank: 0, torsion: vec![6] });
        let inv = AbelianInvariant::of_presentation(&m(&[&[2, 0], &[0, 4], &[0, 0]]));
        assert_eq!(inv, AbelianInvariant { free_rank: 1, torsion: vec![2, 4] });
        assert_eq!(inv.to_string(), "rank 1, torsion [2, 4]");
        let big: Matrix<BigInt> = Matrix::from_i64_rows(&[&[6, 4], &[4, 6]]);
        let inv = AbelianInvariant::of_presentation(&big);
        assert_eq!(inv.torsion, vec![BigInt::from(2), BigInt::from(10)]);
    }

    #[test]
    fn smith_transform_inverse() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith_form(&a);
        assert_eq!(s.diagonal, vec![2, 6, 12]);
        assert_eq!(s.row_transform.mul(&s.row_transform_inv), Matrix::identity(3));
    }

    #[test]
    fn subquotient() {
        let two = Lattice::from_generators(&m(&[&[2]]));
        let twelve = Lattice::from_generators(&m(&[&[12]]));
        let inv = AbelianInvariant::of_subquotient(&two, &twelve);
        assert_eq!(inv.torsion, vec![6]);
    }
}
