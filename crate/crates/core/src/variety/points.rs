//! Normalized projective points and bitsets over `P^N(F_q)`.

use bitvec::prelude::*;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffpoly::Field;

pub const DEFAULT_ENUMERATION_BUDGET: u128 = 2_000_000;

/// A point of `P^N`, scaled so that its first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ProjPoint<E> {
    coords: Vec<E>,
}

impl<E: Clone> ProjPoint<E> {
    pub fn new<F: Field<Elem = E>>(field: &F, mut coords: Vec<E>) -> Result<Self> {
        let Some(lead) = coords.iter().position(|c| !field.is_zero(c)) else {
            return Err(Error::ZeroPoint);
        };
        let inv = field.inv(&coords[lead])?;
        for c in coords.iter_mut().skip(lead) {
            *c = field.mul(c, &inv);
        }
        Ok(ProjPoint { coords })
    }

    pub fn coords(&self) -> &[E] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<E> {
        self.coords
    }

    /// Ambient dimension `N` (one less than the coordinate count).
    pub fn ambient(&self) -> usize {
        self.coords.len() - 1
    }
}

/// `|P^N(F_q)| = (q^(N+1) - 1) / (q - 1)`.
pub fn projective_size(q: u64, ambient: usize) -> u128 {
    let q = q as u128;
    (0..=ambient).fold(0u128, |acc, _| acc.saturating_mul(q).saturating_add(1))
}

/// A subset of `P^N(F_q)`, stored as a bitset over the canonical enumeration.
///
/// Points are ordered by the position `j` of their leading 1, highest `j`
/// first, then by the base-`q` value of the coordinates after it. This is
/// the lexicographic order of normalized coordinate vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct PointSet {
    q: u64,
    ambient: usize,
    bits: BitVec,
}

impl std::fmt::Debug for PointSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PointSet(P^{} over F_{}: {} of {})", self.ambient, self.q, self.len(), self.universe())
    }
}

impl PointSet {
    pub fn empty(q: u64, ambient: usize, budget: u128) -> Result<Self> {
        let required = projective_size(q, ambient);
        if required > budget {
            return Err(Error::BudgetExceeded { required, budget });
        }
        Ok(PointSet { q, ambient, bits: bitvec![0; required as usize] })
    }

    pub fn full(q: u64, ambient: usize, budget: u128) -> Result<Self> {
        let mut s = Self::empty(q, ambient, budget)?;
        s.bits.fill(true);
        Ok(s)
    }

    pub fn field_order(&self) -> u64 {
        self.q
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Number of points of `P^N(F_q)`.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.not_any()
    }

    pub fn coverage(&self) -> f64 {
        self.len() as f64 / self.universe() as f64
    }

    /// Position of a (not necessarily normalized) nonzero vector.
    pub fn index_of<F: Field>(&self, field: &F, coords: &[F::Elem]) -> Result<usize> {
        if coords.len() != self.ambient + 1 {
            return Err(Error::DimensionMismatch { expected: self.ambient + 1, found: coords.len() });
        }
        let p = ProjPoint::new(field, coords.to_vec())?;
        Ok(self.index_of_normalized(field, p.coords()))
    }

    fn index_of_normalized<F: Field>(&self, field: &F, c: &[F::Elem]) -> usize {
        let j = c.iter().position(|x| !field.is_zero(x)).expect("nonzero point");
        let tail = c[j + 1..].iter().fold(0usize, |acc, x| acc * self.q as usize + field.index_of(x) as usize);
        self.offset(j) + tail
    }

    // number of points whose leading 1 sits after position j
    fn offset(&self, j: usize) -> usize {
        projective_size(self.q, self.ambient - j) as usize - (self.q as usize).pow((self.ambient - j) as u32)
    }

    /// The normalized point at position `idx`.
    pub fn point_at<F: Field>(&self, field: &F, idx: usize) -> Vec<F::Elem> {
        assert!(idx < self.universe(), "index {idx} out of range");
        let q = self.q as usize;
        // leading position j: offset(j) <= idx < offset(j) + q^(N-j)
        let mut j = 0;
        while idx < self.offset(j) {
            j += 1;
        }
        let mut rest = idx - self.offset(j);
        let mut out = vec![field.zero(); self.ambient + 1];
        out[j] = field.one();
        for c in out[j + 1..].iter_mut().rev() {
            *c = field.element((rest % q) as u64);
            rest /= q;
        }
        out
    }

    pub fn contains<F: Field>(&self, field: &F, coords: &[F::Elem]) -> Result<bool> {
        Ok(self.bits[self.index_of(field, coords)?])
    }

    pub fn contains_index(&self, idx: usize) -> bool {
        self.bits[idx]
    }

    pub fn insert<F: Field>(&mut self, field: &F, coords: &[F::Elem]) -> Result<bool> {
        let i = self.index_of(field, coords)?;
        Ok(self.insert_index(i))
    }

    /// Returns whether the point was newly added.
    pub fn insert_index(&mut self, idx: usize) -> bool {
        !self.bits.replace(idx, true)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter_ones()
    }

    pub fn points<'a, F: Field>(&'a self, field: &'a F) -> impl Iterator<Item = Vec<F::Elem>> + 'a {
        self.indices().map(move |i| self.point_at(field, i))
    }

    fn check_same_space(&self, other: &Self) {
        assert!(self.q == other.q && self.ambient == other.ambient, "point sets live in different spaces");
    }

    pub fn union_with(&mut self, other: &Self) {
        self.check_same_space(other);
        self.bits |= &other.bits;
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.check_same_space(other);
        self.bits.iter_ones().all(|i| other.bits[i])
    }

    /// Indices in `self` but not in `other`.
    pub fn difference(&self, other: &Self) -> Vec<usize> {
        self.check_same_space(other);
        self.bits.iter_ones().filter(|&i| !other.bits[i]).collect()
    }

    /// Builds a set by testing every point of `P^N(F_q)`, sharded across threads.
    pub fn from_predicate<F, P>(field: &F, ambient: usize, budget: u128, pred: P) -> Result<Self>
    where
        F: Field,
        P: Fn(&[F::Elem]) -> bool + Sync,
    {
        let q = field.order().ok_or(Error::InfiniteField)?;
        let mut set = Self::empty(q, ambient, budget)?;
        const CHUNK: usize = 4096;
        let shards: Vec<Vec<usize>> = (0..set.universe().div_ceil(CHUNK))
            .into_par_iter()
            .map(|c| {
                let lo = c * CHUNK;
                let hi = (lo + CHUNK).min(set.universe());
                (lo..hi).filter(|&i| pred(&set.point_at(field, i))).collect()
            })
            .collect();
        for hits in shards {
            for i in hits {
                set.bits.set(i, true);
            }
        }
        Ok(set)
    }
}
