use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use super::field::{Field, Rationals};
use crate::error::{Error, Result};

/// Exponent vector of a monomial.
pub type Exponents = Vec<u32>;

/// Sparse multivariate polynomial over a field.
///
/// Terms are kept in a `BTreeMap` keyed by exponent vector, so iteration order
/// is deterministic. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly<F: Field> {
    field: F,
    nvars: usize,
    terms: BTreeMap<Exponents, F::Elem>,
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(field: &F, nvars: usize) -> Self {
        MultiPoly { field: field.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: &F, nvars: usize, c: F::Elem) -> Self {
        Self::monomial(field, vec![0; nvars], c)
    }

    pub fn var(field: &F, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(field, e, field.one())
    }

    pub fn monomial(field: &F, exps: Exponents, c: F::Elem) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !field.is_zero(&c) {
            terms.insert(exps, c);
        }
        MultiPoly { field: field.clone(), nvars, terms }
    }

    /// Builds a polynomial from terms, merging repeated exponents and dropping zeros.
    pub fn from_terms(field: &F, nvars: usize, terms: impl IntoIterator<Item = (Exponents, F::Elem)>) -> Self {
        let mut p = Self::zero(field, nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponents, c: F::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.field.add(o.get(), &c);
                if self.field.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &F::Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, e: &[u32]) -> F::Elem {
        self.terms.get(e).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// The common degree of all terms if the polynomial is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    fn check_compat(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        assert!(self.field == other.field, "field mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compat(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coefficients(|f, c| f.neg(c))
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        self.map_coefficients(|f, c| f.mul(c, s))
    }

    fn map_coefficients(&self, g: impl Fn(&F, &F::Elem) -> F::Elem) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), g(&self.field, c)));
        Self::from_terms(&self.field, self.nvars, terms)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compat(other);
        let mut out = Self::zero(&self.field, self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, self.field.mul(ca, cb));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(&self.field, self.nvars, self.field.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact evaluation at a point of `F^nvars`.
    pub fn eval(&self, pt: &[F::Elem]) -> Result<F::Elem> {
        if pt.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: pt.len() });
        }
        if let Some(bad) = pt.iter().find(|c| !self.field.is_canonical(c)) {
            return Err(Error::FieldMismatch(format!("{bad:?} is not an element of {}", self.field.kind())));
        }
        Ok(self.eval_unchecked(pt))
    }

    /// Evaluation without validating the point.
    pub fn eval_unchecked(&self, pt: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in pt.iter().zip(e) {
                if k > 0 {
                    t = f.mul(&t, &f.pow(x, k as u64));
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial_derivative(&self, i: usize) -> Self {
        assert!(i < self.nvars, "variable index {i} out of range");
        let f = &self.field;
        let terms = self.terms.iter().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
            let mut d = e.clone();
            d[i] -= 1;
            (d, f.mul(c, &f.from_i64(e[i] as i64)))
        });
        Self::from_terms(f, self.nvars, terms)
    }

    /// Substitutes `subs[j]` for variable `j`.
    pub fn compose(&self, subs: &[MultiPoly<F>]) -> Result<Self> {
        if subs.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: subs.len() });
        }
        let target_vars = subs.first().map_or(0, |s| s.nvars);
        if subs.iter().any(|s| s.nvars != target_vars) {
            return Err(Error::InvalidArgument("substitutions use different variable counts".into()));
        }
        let max_exp = self.terms.keys().flat_map(|e| e.iter().copied()).max().unwrap_or(0);
        // powers[j][k] = subs[j]^k
        let powers: Vec<Vec<MultiPoly<F>>> = subs
            .iter()
            .map(|s| {
                let mut v = vec![Self::constant(&self.field, target_vars, self.field.one())];
                for k in 1..=max_exp as usize {
                    let next = v[k - 1].mul(s);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = Self::zero(&self.field, target_vars);
        for (e, c) in &self.terms {
            let mut t = Self::constant(&self.field, target_vars, c.clone());
            for (j, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&powers[j][k as usize]);
                }
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        // highest monomials first reads more naturally
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let coeff = self.field.render(c);
            let (neg, mag) = match coeff.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, coeff),
            };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(j, &k)| if k == 1 { format!("z{j}") } else { format!("z{j}^{k}") })
                .collect();
            let mut parts = Vec::new();
            if mag != "1" || vars.is_empty() {
                parts.push(mag);
            }
            parts.extend(vars);
            s.push_str(&parts.join("*"));
        }
        s
    }
}

impl MultiPoly<Rationals> {
    /// Maps a rational polynomial into another field.
    pub fn reduce<G: Field>(&self, target: &G) -> Result<MultiPoly<G>> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c): (&Exponents, &BigRational)| Ok((e.clone(), target.from_rational(c)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(MultiPoly::from_terms(target, self.nvars, terms))
    }
}

impl<F: Field> fmt::Debug for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.field.kind(), self.render())
    }
}

impl<F: Field> fmt::Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// All exponent vectors of total degree `d` in `nvars` variables, in ascending
/// lexicographic order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Exponents> {
    fn rec(prefix: &mut Vec<u32>, left: usize, d: u32, out: &mut Vec<Exponents>) {
        if left == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in 0..=d {
            prefix.push(a);
            rec(prefix, left - 1, d - a, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(&mut Vec::with_capacity(nvars), nvars, d, &mut out);
    out
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::field::PrimeField;
    use crate::ffpoly::parse::parse_poly;

    fn fp(p: u64, s: &str, nvars: usize) -> MultiPoly<PrimeField> {
        parse_poly(s, Some(nvars)).unwrap().reduce(&PrimeField::new(p).unwrap()).unwrap()
    }

    #[test]
    fn eval_examples() {
        let f = fp(101, "z0*z3 - z1*z2", 4);
        assert_eq!(f.eval(&[1, 0, 0, 0]).unwrap(), 0);
        assert_eq!(f.eval(&[1, 1, 1, 0]).unwrap(), 100);
        let g = fp(7, "z0^2", 1);
        assert_eq!(g.eval(&[3]).unwrap(), 2);
    }

    #[test]
    fn eval_rejects_mismatched_points() {
        let f = fp(7, "z0^2 + z1", 2);
        assert!(matches!(f.eval(&[1]), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(f.eval(&[1, 9]), Err(Error::FieldMismatch(_))));
    }

    #[test]
    fn derivative_examples() {
        let f = fp(101, "z0*z3 - z1*z2", 4);
        assert_eq!(f.partial_derivative(0), fp(101, "z3", 4));
        assert_eq!(fp(101, "z1^3", 2).partial_derivative(1), fp(101, "3*z1^2", 2));
        assert!(fp(3, "z1^3", 2).partial_derivative(1).is_zero());
    }

    #[test]
    fn degrees_and_homogeneity() {
        let f = fp(11, "z0^2*z1 + z2^3", 3);
        assert_eq!(f.homogeneous_degree(), Some(3));
        let g = fp(11, "z0^2 + z1", 2);
        assert_eq!(g.homogeneous_degree(), None);
        assert_eq!(g.total_degree(), Some(2));
        assert!(MultiPoly::zero(&PrimeField::new(11).unwrap(), 2).is_homogeneous());
    }

    #[test]
    fn compose_veronese_kills_minor() {
        let q = Rationals;
        let minor = parse_poly("z0*z3 - z1^2", Some(6)).unwrap();
        let param: Vec<_> = ["z0^2", "z0*z1", "z0*z2", "z1^2", "z1*z2", "z2^2"]
            .iter()
            .map(|s| parse_poly(s, Some(3)).unwrap())
            .collect();
        assert!(minor.compose(&param).unwrap().is_zero());
        let not_minor = parse_poly("z0*z5 - z1^2", Some(6)).unwrap();
        assert!(!not_minor.compose(&param).unwrap().is_zero());
        let _ = q;
    }

    #[test]
    fn render_round_trips() {
        let f = parse_poly("3*z0^2*z1 - z2^3 + 2", Some(3)).unwrap();
        let g = parse_poly(&f.render(), Some(3)).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(4, 2).len(), 10);
        assert_eq!(monomials_of_degree(3, 4).len(), 15);
        assert_eq!(monomials_of_degree(4, 0), vec![vec![0, 0, 0, 0]]);
        let m = monomials_of_degree(3, 2);
        assert!(m.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 5), 0);
    }
}
