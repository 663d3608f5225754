//! Binary forms obtained by restricting a form to a line, and their
//! multiplicity profiles.

use serde::{Deserialize, Serialize};

use super::field::{Field, FieldKind};
use super::poly::MultiPoly;
use super::univariate::UniPoly;

/// A binary form `sum_i c_i s^(d-i) t^i` of declared degree `d`.
///
/// The point `[s:t] = [1:0]` is the first point of the line, `[0:1]` the second.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryForm<F: Field> {
    field: F,
    degree: usize,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> std::fmt::Debug for BinaryForm<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cs: Vec<String> = self.coeffs.iter().map(|c| self.field.render(c)).collect();
        write!(f, "BinaryForm(deg {}; {})", self.degree, cs.join(", "))
    }
}

/// Factorization pattern of a binary form over the algebraic closure:
/// `(multiplicity, residue degree)` pairs, sorted descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BinaryFormProfile {
    pub pairs: Vec<(u32, u32)>,
    pub contained: bool,
}

impl BinaryFormProfile {
    /// Sum of `e_i * d_i`.
    pub fn total(&self) -> u32 {
        self.pairs.iter().map(|(e, d)| e * d).sum()
    }

    /// The line type: each multiplicity repeated by its residue degree, descending.
    pub fn line_type(&self) -> Vec<u32> {
        let mut t: Vec<u32> = self.pairs.iter().flat_map(|&(e, d)| std::iter::repeat(e).take(d as usize)).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.pairs.iter().map(|(e, _)| *e).max().unwrap_or(0)
    }
}

impl<F: Field> BinaryForm<F> {
    pub fn new(field: &F, coeffs: Vec<F::Elem>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs at least one coefficient");
        BinaryForm { field: field.clone(), degree: coeffs.len() - 1, coeffs }
    }

    pub fn zero(field: &F, degree: usize) -> Self {
        BinaryForm { field: field.clone(), degree, coeffs: vec![field.zero(); degree + 1] }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficient of `s^(d-i) t^i`.
    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    pub fn eval(&self, s: &F::Elem, t: &F::Elem) -> F::Elem {
        let f = &self.field;
        let d = self.degree as u64;
        self.coeffs.iter().enumerate().fold(f.zero(), |acc, (i, c)| {
            let term = f.mul(c, &f.mul(&f.pow(s, d - i as u64), &f.pow(t, i as u64)));
            f.add(&acc, &term)
        })
    }

    fn mul(&self, o: &Self) -> Self {
        let f = &self.field;
        let mut c = vec![f.zero(); self.degree + o.degree + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = f.add(&c[i + j], &f.mul(a, b));
            }
        }
        BinaryForm { field: f.clone(), degree: self.degree + o.degree, coeffs: c }
    }

    /// `f(1, t)` together with the multiplicity of the root at `[0:1]`.
    pub fn dehomogenize(&self) -> (UniPoly<F>, usize) {
        let g = UniPoly::new(&self.field, self.coeffs.clone());
        let at_infinity = self.degree - g.degree().unwrap_or(0);
        (g, at_infinity)
    }

    fn from_dehomogenized(g: &UniPoly<F>, at_infinity: usize, field: &F) -> Self {
        let mut c = g.coeffs().to_vec();
        c.resize(c.len() + at_infinity, field.zero());
        BinaryForm::new(field, c)
    }

    /// Order of vanishing at the point `[s:t]`; `None` for the zero form.
    pub fn multiplicity_at(&self, s: &F::Elem, t: &F::Elem) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let f = &self.field;
        if f.is_zero(s) {
            return Some(self.dehomogenize().1);
        }
        // root [1:tau] with tau = t/s of the dehomogenized polynomial
        let tau = f.div(t, s).expect("s is nonzero");
        let lin = UniPoly::new(f, vec![f.neg(&tau), f.one()]);
        let (mut g, _) = self.dehomogenize();
        let mut k = 0;
        loop {
            let (q, r) = g.div_rem(&lin);
            if !r.is_zero() {
                return Some(k);
            }
            g = q;
            k += 1;
        }
    }

    /// Greatest common divisor of binary forms, ignoring zero forms.
    /// Returns `None` when every input is zero.
    pub fn gcd_all<'a>(forms: impl IntoIterator<Item = &'a Self>) -> Option<Self>
    where
        F: 'a,
    {
        let mut acc: Option<(UniPoly<F>, usize, F)> = None;
        for bf in forms {
            if bf.is_zero() {
                continue;
            }
            let (g, inf) = bf.dehomogenize();
            acc = Some(match acc {
                None => (g.monic(), inf, bf.field.clone()),
                Some((a, ainf, f)) => (a.gcd(&g), ainf.min(inf), f),
            });
        }
        acc.map(|(g, inf, f)| Self::from_dehomogenized(&g, inf, &f))
    }

    /// Factorization pattern over the algebraic closure, without building
    /// extension fields: square-free decomposition then distinct-degree
    /// splitting of each square-free part. Over `Q` each square-free part is
    /// reported as one block of its full degree.
    pub fn multiplicity_pattern(&self) -> BinaryFormProfile {
        if self.is_zero() {
            return BinaryFormProfile { pairs: Vec::new(), contained: true };
        }
        let (g, at_infinity) = self.dehomogenize();
        let mut pairs = Vec::new();
        if at_infinity > 0 {
            pairs.push((at_infinity as u32, 1));
        }
        let finite = self.field.order().is_some();
        for (part, e) in g.squarefree_decomposition() {
            if finite {
                for (block, d) in part.distinct_degree_factorization() {
                    let count = block.degree().unwrap() / d;
                    pairs.extend(std::iter::repeat((e, d as u32)).take(count));
                }
            } else {
                pairs.push((e, part.degree().unwrap() as u32));
            }
        }
        pairs.sort_unstable_by(|a, b| b.cmp(a));
        BinaryFormProfile { pairs, contained: false }
    }

    pub fn field_kind(&self) -> FieldKind {
        self.field.kind()
    }
}

/// `f(s*a + t*b)` expanded as a binary form of degree `total_degree(f)`.
pub fn restrict_to_line<F: Field>(f: &MultiPoly<F>, a: &[F::Elem], b: &[F::Elem]) -> BinaryForm<F> {
    let field = f.field();
    assert_eq!(a.len(), f.nvars());
    assert_eq!(b.len(), f.nvars());
    let d = f.total_degree().unwrap_or(0) as usize;
    if f.is_zero() {
        return BinaryForm::zero(field, d);
    }
    let max_exp = f.terms().flat_map(|(e, _)| e.iter().copied()).max().unwrap_or(0) as usize;
    // powers[j][k] = (a_j s + b_j t)^k
    let powers: Vec<Vec<BinaryForm<F>>> = (0..f.nvars())
        .map(|j| {
            let lin = BinaryForm::new(field, vec![a[j].clone(), b[j].clone()]);
            let mut v = vec![BinaryForm::new(field, vec![field.one()])];
            for k in 1..=max_exp {
                let next = v[k - 1].mul(&lin);
                v.push(next);
            }
            v
        })
        .collect();
    let mut out = BinaryForm::zero(field, d);
    for (e, c) in f.terms() {
        let mut t = BinaryForm::new(field, vec![c.clone()]);
        for (j, &k) in e.iter().enumerate() {
            if k > 0 {
                t = t.mul(&powers[j][k as usize]);
            }
        }
        // lower-degree terms of a non-homogeneous input pick up powers of s,
        // which leaves the t-index unchanged
        for (i, ci) in t.coeffs.iter().enumerate() {
            out.coeffs[i] = field.add(&out.coeffs[i], ci);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::field::PrimeField;
    use crate::ffpoly::parse::parse_poly_in;

    fn f101() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    fn form(f: &PrimeField, c: &[i64]) -> BinaryForm<PrimeField> {
        BinaryForm::new(f, c.iter().map(|&v| f.from_i64(v)).collect())
    }

    #[test]
    fn restriction_examples() {
        let f = f101();
        let conic = parse_poly_in(&f, "z0*z2 - z1^2", 3).unwrap();
        assert_eq!(restrict_to_line(&conic, &[1, 0, 0], &[0, 0, 1]), form(&f, &[0, 1, 0]));
        assert_eq!(restrict_to_line(&conic, &[1, 0, 0], &[0, 1, 0]), form(&f, &[0, 0, -1]));
        let nodal = parse_poly_in(&f, "z2^2*z0 - z1^2*(z1+z0)", 3).unwrap();
        // t^2 (3s - t) = 3 s t^2 - t^3
        assert_eq!(restrict_to_line(&nodal, &[1, 0, 0], &[0, 1, 2]), form(&f, &[0, 0, 3, -1]));
    }

    #[test]
    fn pattern_examples() {
        let f = f101();
        let p = form(&f, &[0, 1, 0]).multiplicity_pattern();
        assert_eq!(p.pairs, vec![(1, 1), (1, 1)]);
        assert_eq!(p.line_type(), vec![1, 1]);
        let p = form(&f, &[0, 0, -1]).multiplicity_pattern();
        assert_eq!(p.pairs, vec![(2, 1)]);
        let p = form(&f, &[0, 0, 3, -1]).multiplicity_pattern();
        assert_eq!(p.pairs, vec![(2, 1), (1, 1)]);
        assert_eq!(p.total(), 3);
        assert!(BinaryForm::zero(&f, 3).multiplicity_pattern().contained);
    }

    #[test]
    fn conjugate_roots_counted_geometrically() {
        let f = PrimeField::new(7).unwrap();
        // s^2 + t^2 is irreducible over F_7: one pair (1, 2)
        let p = form(&f, &[1, 0, 1]).multiplicity_pattern();
        assert_eq!(p.pairs, vec![(1, 2)]);
        assert_eq!(p.line_type(), vec![1, 1]);
        // (s^2 + t^2)^2 t
        let sq = form(&f, &[1, 0, 1]);
        let p = sq.mul(&sq).mul(&form(&f, &[0, 1])).multiplicity_pattern();
        assert_eq!(p.pairs, vec![(2, 2), (1, 1)]);
        assert_eq!(p.total(), 5);
    }

    #[test]
    fn multiplicity_at_points() {
        let f = f101();
        let bf = form(&f, &[0, 0, 3, -1]);
        assert_eq!(bf.multiplicity_at(&1, &0), Some(2));
        assert_eq!(bf.multiplicity_at(&0, &1), Some(0));
        assert_eq!(bf.multiplicity_at(&1, &3), Some(1));
        assert_eq!(form(&f, &[0, 1]).multiplicity_at(&1, &0), Some(1));
        assert_eq!(form(&f, &[1, 0]).multiplicity_at(&0, &1), Some(1));
    }

    #[test]
    fn gcd_of_forms() {
        let f = f101();
        let a = form(&f, &[0, 1, 0]); // s t
        let b = form(&f, &[0, 0, 1]); // t^2
        let g = BinaryForm::gcd_all([&a, &b]).unwrap();
        assert_eq!(g.multiplicity_pattern().pairs, vec![(1, 1)]);
        assert_eq!(g.multiplicity_at(&1, &0), Some(1));
        let z = BinaryForm::zero(&f, 2);
        assert!(BinaryForm::gcd_all([&z]).is_none());
        assert_eq!(BinaryForm::gcd_all([&z, &a]).unwrap(), a);
    }
}
