//! Exact dense linear algebra over a [`Field`].
//!
//! [`ConstraintMatrix`] accumulates rows into a reduced row-echelon core, so
//! rank and kernel are available at any time and appending is incremental.
//! Pivoting is deterministic (first nonzero column), which makes every
//! derived basis reproducible.

use crate::error::{Error, Result};
use crate::ffpoly::Field;

#[derive(Clone, Debug)]
pub struct ConstraintMatrix<F: Field> {
    field: F,
    ncols: usize,
    appended: usize,
    // reduced row-echelon rows, sorted by pivot column
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> ConstraintMatrix<F> {
    pub fn new(field: &F, ncols: usize) -> Self {
        ConstraintMatrix { field: field.clone(), ncols, appended: 0, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of rows handed to the matrix so far.
    pub fn appended(&self) -> usize {
        self.appended
    }

    pub fn nullity(&self) -> usize {
        self.ncols - self.rank()
    }

    /// Reduces `v` against the echelon core in place.
    fn reduce(&self, v: &mut [F::Elem]) {
        let f = &self.field;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[pc]) {
                continue;
            }
            let c = v[pc].clone();
            for (x, r) in v.iter_mut().zip(row).skip(pc) {
                if !f.is_zero(r) {
                    *x = f.sub(x, &f.mul(&c, r));
                }
            }
        }
    }

    /// Appends one row and returns the new rank.
    pub fn append_row(&mut self, row: &[F::Elem]) -> Result<usize> {
        if row.len() != self.ncols {
            return Err(Error::DimensionMismatch { expected: self.ncols, found: row.len() });
        }
        self.appended += 1;
        if self.rows.len() == self.ncols {
            return Ok(self.rank());
        }
        let f = self.field.clone();
        let mut v = row.to_vec();
        self.reduce(&mut v);
        let Some(pc) = v.iter().position(|x| !f.is_zero(x)) else {
            return Ok(self.rank());
        };
        let inv = f.inv(&v[pc])?;
        for x in v.iter_mut().skip(pc) {
            *x = f.mul(x, &inv);
        }
        // clear the new pivot column from the existing rows
        for row in &mut self.rows {
            if f.is_zero(&row[pc]) {
                continue;
            }
            let c = row[pc].clone();
            for (x, n) in row.iter_mut().zip(&v).skip(pc) {
                if !f.is_zero(n) {
                    *x = f.sub(x, &f.mul(&c, n));
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, v);
        Ok(self.rank())
    }

    /// Appends rows in the given order and returns the final rank.
    pub fn append_rows<I, R>(&mut self, rows: I) -> Result<usize>
    where
        I: IntoIterator<Item = R>,
        R: AsRef<[F::Elem]>,
    {
        for r in rows {
            self.append_row(r.as_ref())?;
        }
        Ok(self.rank())
    }

    /// Appends a batch after sorting it lexicographically, so a batch produced
    /// in any order (e.g. by parallel workers) leads to the same state.
    pub fn append_batch(&mut self, mut rows: Vec<Vec<F::Elem>>) -> Result<usize> {
        rows.sort();
        self.append_rows(rows)
    }

    /// Whether `v` is annihilated by every row appended so far.
    pub fn annihilates(&self, v: &[F::Elem]) -> bool {
        v.len() == self.ncols && self.rows.iter().all(|r| self.field.is_zero(&self.field.dot(r, v)))
    }

    pub fn kernel_basis(&self) -> SubspaceBasis<F> {
        let f = &self.field;
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let vectors = (0..self.ncols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![f.zero(); self.ncols];
                v[free] = f.one();
                for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                    v[pc] = f.neg(&row[free]);
                }
                v
            })
            .collect();
        SubspaceBasis { field: f.clone(), ncols: self.ncols, vectors }
    }

    /// Reduced row-echelon rows spanning the row space.
    pub fn row_space(&self) -> SubspaceBasis<F> {
        SubspaceBasis { field: self.field.clone(), ncols: self.ncols, vectors: self.rows.clone() }
    }
}

/// Rank of a list of rows.
pub fn rank_of<F: Field>(field: &F, ncols: usize, rows: &[Vec<F::Elem>]) -> Result<usize> {
    let mut m = ConstraintMatrix::new(field, ncols);
    m.append_rows(rows)
}

/// A basis of a subspace of `F^ncols`.
#[derive(Clone, Debug)]
pub struct SubspaceBasis<F: Field> {
    field: F,
    ncols: usize,
    vectors: Vec<Vec<F::Elem>>,
}

impl<F: Field> SubspaceBasis<F> {
    /// Basis of the span of `vectors` (in reduced echelon form).
    pub fn span(field: &F, ncols: usize, vectors: &[Vec<F::Elem>]) -> Result<Self> {
        let mut m = ConstraintMatrix::new(field, ncols);
        m.append_rows(vectors)?;
        Ok(m.row_space())
    }

    pub fn zero(field: &F, ncols: usize) -> Self {
        SubspaceBasis { field: field.clone(), ncols, vectors: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn vectors(&self) -> &[Vec<F::Elem>] {
        &self.vectors
    }

    pub fn contains(&self, v: &[F::Elem]) -> Result<bool> {
        if v.len() != self.ncols {
            return Err(Error::DimensionMismatch { expected: self.ncols, found: v.len() });
        }
        let mut m = ConstraintMatrix::new(&self.field, self.ncols);
        m.append_rows(&self.vectors)?;
        let r = m.rank();
        Ok(m.append_row(v)? == r)
    }

    /// Mutual containment.
    pub fn same_span(&self, other: &Self) -> Result<bool> {
        if self.ncols != other.ncols {
            return Err(Error::DimensionMismatch { expected: self.ncols, found: other.ncols });
        }
        let mut m = ConstraintMatrix::new(&self.field, self.ncols);
        m.append_rows(&self.vectors)?;
        let a = m.rank();
        let both = m.append_rows(&other.vectors)?;
        Ok(a == both && other.dim() == both)
    }

    /// Basis of the intersection `self ∩ other`.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        if self.ncols != other.ncols {
            return Err(Error::DimensionMismatch { expected: self.ncols, found: other.ncols });
        }
        let f = &self.field;
        // annihilator of `other`: vectors orthogonal to all of its basis
        let mut om = ConstraintMatrix::new(f, self.ncols);
        om.append_rows(&other.vectors)?;
        let ann = om.kernel_basis();
        // coefficients y with sum_i y_i a_i annihilated by ann
        let mut cm = ConstraintMatrix::new(f, self.dim());
        for w in &ann.vectors {
            let row: Vec<F::Elem> = self.vectors.iter().map(|a| f.dot(w, a)).collect();
            cm.append_row(&row)?;
        }
        let coeffs = cm.kernel_basis();
        let vectors: Vec<Vec<F::Elem>> = coeffs
            .vectors
            .iter()
            .map(|y| {
                let mut v = vec![f.zero(); self.ncols];
                for (yi, a) in y.iter().zip(&self.vectors) {
                    if f.is_zero(yi) {
                        continue;
                    }
                    for (x, ai) in v.iter_mut().zip(a) {
                        *x = f.add(x, &f.mul(yi, ai));
                    }
                }
                v
            })
            .collect();
        Self::span(f, self.ncols, &vectors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::{PrimeField, Rationals};
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn append_examples() {
        let f = PrimeField::new(7).unwrap();
        let mut m = ConstraintMatrix::new(&f, 3);
        m.append_row(&[1, 0, 0]).unwrap();
        assert_eq!(m.append_row(&[0, 1, 0]).unwrap(), 2);

        let mut m = ConstraintMatrix::new(&Rationals, 2);
        m.append_row(&[q(1), q(1)]).unwrap();
        assert_eq!(m.append_row(&[q(2), q(2)]).unwrap(), 1);

        let mut m = ConstraintMatrix::new(&f, 3);
        for _ in 0..7 {
            m.append_row(&[1, 0, 0]).unwrap();
        }
        assert_eq!(m.rank(), 1);
        assert_eq!(m.appended(), 7);

        assert!(matches!(m.append_row(&[1, 2]), Err(Error::DimensionMismatch { expected: 3, found: 2 })));
    }

    #[test]
    fn kernel_examples() {
        let f = PrimeField::new(11).unwrap();
        assert_eq!(ConstraintMatrix::new(&f, 5).kernel_basis().dim(), 5);
        let mut id = ConstraintMatrix::new(&f, 4);
        for i in 0..4 {
            let mut r = vec![0; 4];
            r[i] = 1;
            id.append_row(&r).unwrap();
        }
        assert_eq!(id.kernel_basis().dim(), 0);
        let mut m = ConstraintMatrix::new(&f, 2);
        m.append_row(&[1, f.from_i64(-1)]).unwrap();
        let k = m.kernel_basis();
        assert_eq!(k.vectors(), &[vec![1, 1]]);
    }

    #[test]
    fn intersect_examples() {
        let f = PrimeField::new(13).unwrap();
        let a = SubspaceBasis::span(&f, 2, &[vec![1, 0], vec![0, 1]]).unwrap();
        let b = SubspaceBasis::span(&f, 2, &[vec![1, 1]]).unwrap();
        let ab = a.intersect(&b).unwrap();
        assert_eq!(ab.dim(), 1);
        assert!(ab.same_span(&b).unwrap());
        assert!(a.intersect(&a).unwrap().same_span(&a).unwrap());
        let x = SubspaceBasis::span(&f, 2, &[vec![1, 0]]).unwrap();
        let y = SubspaceBasis::span(&f, 2, &[vec![0, 1]]).unwrap();
        assert_eq!(x.intersect(&y).unwrap().dim(), 0);
        let z = SubspaceBasis::span(&f, 3, &[vec![0, 1, 0]]).unwrap();
        assert!(x.intersect(&z).is_err());
    }

    fn small_matrix() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
        (1usize..6).prop_flat_map(|ncols| (Just(ncols), prop::collection::vec(prop::collection::vec(-4i64..5, ncols), 0..7)))
    }

    proptest! {
        #[test]
        fn rank_nullity((ncols, rows) in small_matrix()) {
            let f = PrimeField::new(5).unwrap();
            let rows: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&v| f.from_i64(v)).collect()).collect();
            let mut m = ConstraintMatrix::new(&f, ncols);
            m.append_rows(&rows).unwrap();
            let k = m.kernel_basis();
            prop_assert_eq!(k.dim() + m.rank(), ncols);
            for v in k.vectors() {
                for r in &rows {
                    prop_assert_eq!(f.dot(r, v), 0);
                }
            }
        }

        #[test]
        fn rank_is_order_invariant((ncols, rows) in small_matrix()) {
            let f = PrimeField::new(7).unwrap();
            let rows: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&v| f.from_i64(v)).collect()).collect();
            let forward = rank_of(&f, ncols, &rows).unwrap();
            let mut rev = rows.clone();
            rev.reverse();
            prop_assert_eq!(forward, rank_of(&f, ncols, &rev).unwrap());
        }

        #[test]
        fn modular_rank_never_exceeds_rational_rank((ncols, rows) in small_matrix()) {
            let qrows: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect();
            let rational = rank_of(&Rationals, ncols, &qrows).unwrap();
            for p in [3u64, 5, 7] {
                let f = PrimeField::new(p).unwrap();
                let frows: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&v| f.from_i64(v)).collect()).collect();
                prop_assert!(rank_of(&f, ncols, &frows).unwrap() <= rational);
            }
        }

        #[test]
        fn intersection_is_commutative((ncols, rows) in small_matrix(), split in 0usize..7) {
            let f = PrimeField::new(5).unwrap();
            let rows: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&v| f.from_i64(v)).collect()).collect();
            let cut = split.min(rows.len());
            let a = SubspaceBasis::span(&f, ncols, &rows[..cut]).unwrap();
            let b = SubspaceBasis::span(&f, ncols, &rows[cut..]).unwrap();
            let ab = a.intersect(&b).unwrap();
            let ba = b.intersect(&a).unwrap();
            prop_assert!(ab.same_span(&ba).unwrap());
            for v in ab.vectors() {
                prop_assert!(a.contains(v).unwrap() && b.contains(v).unwrap());
            }
            prop_assert!(a.intersect(&a).unwrap().same_span(&a).unwrap());
        }
    }
}
