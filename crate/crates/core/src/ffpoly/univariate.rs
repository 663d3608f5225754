//! Dense univariate polynomials with gcd, square-free and distinct-degree
//! factorization.

use super::field::Field;

/// Coefficients in ascending order of degree; no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> std::fmt::Debug for UniPoly<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cs: Vec<String> = self.coeffs.iter().map(|c| self.field.render(c)).collect();
        write!(f, "UniPoly[{}]", cs.join(", "))
    }
}

impl<F: Field> UniPoly<F> {
    pub fn new(field: &F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &F) -> Self {
        UniPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &F) -> Self {
        UniPoly { field: field.clone(), coeffs: vec![field.one()] }
    }

    /// The monomial `x`.
    pub fn x(field: &F) -> Self {
        UniPoly { field: field.clone(), coeffs: vec![field.zero(), field.one()] }
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn add(&self, o: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = f.zero();
        let c = (0..n)
            .map(|i| f.add(self.coeffs.get(i).unwrap_or(&z), o.coeffs.get(i).unwrap_or(&z)))
            .collect();
        Self::new(f, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = f.zero();
        let c = (0..n)
            .map(|i| f.sub(self.coeffs.get(i).unwrap_or(&z), o.coeffs.get(i).unwrap_or(&z)))
            .collect();
        Self::new(f, c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || o.is_zero() {
            return Self::zero(f);
        }
        let mut c = vec![f.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = f.add(&c[i + j], &f.mul(a, b));
            }
        }
        Self::new(f, c)
    }

    /// Quotient and remainder. Panics if `d` is zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let f = &self.field;
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(d.leading().unwrap()).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(f), self.clone());
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = f.mul(&r[i + dd], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] = f.sub(&r[i + j], &f.mul(&c, dc));
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(f, q), Self::new(f, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Exact division; panics in debug builds if there is a remainder.
    pub fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let inv = self.field.inv(l).expect("nonzero leading coefficient");
                let f = &self.field;
                Self::new(f, self.coeffs.iter().map(|c| f.mul(c, &inv)).collect())
            }
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let c = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| f.mul(c, &f.from_i64(i as i64))).collect();
        Self::new(f, c)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(&self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    /// Square-free decomposition: pairs `(g_i, e_i)` with `self = lc * prod g_i^{e_i}`,
    /// each `g_i` monic, square-free and pairwise coprime. Works in characteristic
    /// zero and over finite fields (where `p`-th powers are unwound explicitly).
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        self.sqf_rec(1, &mut out);
        out.sort_by_key(|(_, e)| *e);
        out
    }

    fn sqf_rec(&self, scale: u32, out: &mut Vec<(Self, u32)>) {
        let f = &self.field;
        let mut c = self.gcd(&self.derivative());
        let mut w = self.monic().exact_div(&c);
        let mut i = 1u32;
        while w.degree().unwrap_or(0) > 0 {
            let y = w.gcd(&c);
            let fac = w.exact_div(&y);
            if fac.degree().unwrap_or(0) > 0 {
                out.push((fac, i * scale));
            }
            w = y;
            c = c.exact_div(&w);
            i += 1;
        }
        if c.degree().unwrap_or(0) > 0 {
            // remaining factor is a p-th power in characteristic p
            let p = f.characteristic() as usize;
            assert!(p > 0, "nontrivial p-th power part in characteristic zero");
            let root: Vec<F::Elem> = c.coeffs.iter().step_by(p).map(|a| f.pth_root(a)).collect();
            Self::new(f, root).sqf_rec(scale * p as u32, out);
        }
    }

    /// Distinct-degree factorization of a monic square-free polynomial over a
    /// finite field: pairs `(h_d, d)` where `h_d` is the product of all monic
    /// irreducible factors of degree `d`.
    pub fn distinct_degree_factorization(&self) -> Vec<(Self, usize)> {
        let f = &self.field;
        let q = f.order().expect("distinct-degree factorization needs a finite field");
        let mut out = Vec::new();
        let mut rest = self.monic();
        let x = Self::x(f);
        let mut h = x.clone();
        let mut d = 1;
        while rest.degree().unwrap_or(0) >= 2 * d {
            h = h.pow_mod(q, &rest);
            let g = rest.gcd(&h.sub(&x));
            if !g.is_one() {
                rest = rest.exact_div(&g);
                h = h.rem(&rest);
                out.push((g, d));
            }
            d += 1;
        }
        if let Some(deg) = rest.degree() {
            if deg > 0 {
                out.push((rest, deg));
            }
        }
        out
    }

    /// Roots in the field, found by scanning; only for finite fields.
    pub fn roots_by_scan(&self) -> Vec<F::Elem> {
        let f = &self.field;
        let q = f.order().expect("root scan needs a finite field");
        (0..q).map(|i| f.element(i)).filter(|x| f.is_zero(&self.eval(x))).collect()
    }
}
