//! Projective varieties given by forms (and optionally a parametrization),
//! with point sampling, enumeration, smoothness tests and tangent frames on
//! the affine cone.

mod points;
mod spec;

pub use points::{projective_size, PointSet, ProjPoint, DEFAULT_ENUMERATION_BUDGET};
pub use spec::{ModelSpec, RationalModel, BUILTIN_NAMES};

use rand::seq::SliceRandom;
use rand::{Rng, RngCore};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffpoly::{Field, MultiPoly};
use crate::linalg::{rank_of, ConstraintMatrix};

pub const DEFAULT_RETRY_BUDGET: usize = 1000;

/// Root scanning touches every field element, so sampling by scan is
/// limited to primes up to this bound.
pub const SCAN_PRIME_LIMIT: u64 = 1 << 16;

// cap on the p^c candidate assignments tried per sampling attempt
const SCAN_CELL_LIMIT: u64 = 1 << 24;

/// `X ⊂ P^N` over a concrete field.
#[derive(Debug, Clone)]
pub struct VarietyModel<F: Field> {
    name: String,
    field: F,
    ambient: usize,
    dim: usize,
    forms: Vec<MultiPoly<F>>,
    jacobian: Vec<Vec<MultiPoly<F>>>,
    parametrization: Option<Vec<MultiPoly<F>>>,
}

/// Frame of `T_x X̂`: the radial vector followed by `t_1..t_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TangentFrame<E> {
    pub point: ProjPoint<E>,
    pub vectors: Vec<Vec<E>>,
}

impl<E> TangentFrame<E> {
    pub fn radial(&self) -> &[E] {
        &self.vectors[0]
    }

    /// `n + 1`.
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

impl<F: Field> VarietyModel<F> {
    pub fn from_rational(model: &RationalModel, field: &F) -> Result<Self> {
        let forms = model.reduce_forms(field)?;
        let parametrization = match &model.parametrization {
            Some(p) => Some(p.iter().map(|c| c.reduce(field)).collect::<Result<Vec<_>>>()?),
            None => None,
        };
        if let Some(bad) = forms.iter().position(|f| f.is_zero()) {
            return Err(Error::InvalidModel(format!("form {bad} vanishes identically over {}", field.kind())));
        }
        Ok(Self::assemble(model.spec.name.clone(), field, model.spec.ambient, model.spec.dim, forms, parametrization))
    }

    pub fn from_spec(spec: &ModelSpec, field: &F) -> Result<Self> {
        Self::from_rational(&spec.validate()?, field)
    }

    fn assemble(
        name: String,
        field: &F,
        ambient: usize,
        dim: usize,
        forms: Vec<MultiPoly<F>>,
        parametrization: Option<Vec<MultiPoly<F>>>,
    ) -> Self {
        let jacobian = forms.iter().map(|f| (0..=ambient).map(|i| f.partial_derivative(i)).collect()).collect();
        VarietyModel { name, field: field.clone(), ambient, dim, forms, jacobian, parametrization }
    }

    /// The same model over another field, mapping coefficients with `map`.
    pub fn map_field<G: Field>(&self, target: &G, map: impl Fn(&F::Elem) -> G::Elem) -> VarietyModel<G> {
        let conv = |g: &MultiPoly<F>| MultiPoly::from_terms(target, g.nvars(), g.terms().map(|(e, c)| (e.clone(), map(c))));
        let forms = self.forms.iter().map(conv).collect();
        let parametrization = self.parametrization.as_ref().map(|ps| ps.iter().map(conv).collect());
        VarietyModel::assemble(self.name.clone(), target, self.ambient, self.dim, forms, parametrization)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.dim
    }

    pub fn forms(&self) -> &[MultiPoly<F>] {
        &self.forms
    }

    pub fn parametrization(&self) -> Option<&[MultiPoly<F>]> {
        self.parametrization.as_deref()
    }

    pub fn max_degree(&self) -> u32 {
        self.forms.iter().filter_map(|f| f.total_degree()).max().unwrap_or(1)
    }

    fn check_len(&self, x: &[F::Elem]) -> Result<()> {
        if x.len() != self.ambient + 1 {
            return Err(Error::DimensionMismatch { expected: self.ambient + 1, found: x.len() });
        }
        Ok(())
    }

    pub fn contains(&self, x: &[F::Elem]) -> Result<bool> {
        self.check_len(x)?;
        for f in &self.forms {
            if !self.field.is_zero(&f.eval(x)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Gradient rows `(∂F_j/∂z_i)(x)`.
    pub fn jacobian_at(&self, x: &[F::Elem]) -> Result<Vec<Vec<F::Elem>>> {
        self.check_len(x)?;
        self.jacobian.iter().map(|row| row.iter().map(|d| d.eval(x)).collect()).collect()
    }

    pub fn jacobian_rank(&self, x: &[F::Elem]) -> Result<usize> {
        rank_of(&self.field, self.ambient + 1, &self.jacobian_at(x)?)
    }

    /// On the model with Jacobian rank `N - n`.
    pub fn is_smooth_point(&self, x: &[F::Elem]) -> Result<bool> {
        Ok(self.contains(x)? && self.jacobian_rank(x)? == self.codim())
    }

    fn require_smooth(&self, x: &[F::Elem]) -> Result<Vec<Vec<F::Elem>>> {
        if !self.contains(x)? {
            return Err(Error::InvalidArgument("point is not on the model".into()));
        }
        let jac = self.jacobian_at(x)?;
        let rank = rank_of(&self.field, self.ambient + 1, &jac)?;
        if rank != self.codim() {
            return Err(Error::SingularPoint { rank, expected: self.codim() });
        }
        Ok(jac)
    }

    /// Whether `z` lies on the embedded tangent space at `x`, i.e. `J(x)·z = 0`.
    /// `x` is assumed smooth.
    pub fn tangent_contains(&self, jac_x: &[Vec<F::Elem>], z: &[F::Elem]) -> bool {
        jac_x.iter().all(|row| self.field.is_zero(&self.field.dot(row, z)))
    }

    /// Frame of `T_x X̂` with the radial vector first.
    pub fn tangent_frame(&self, x: &ProjPoint<F::Elem>) -> Result<TangentFrame<F::Elem>> {
        let f = &self.field;
        let jac = self.require_smooth(x.coords())?;
        let mut m = ConstraintMatrix::new(f, self.ambient + 1);
        m.append_rows(&jac)?;
        let kernel = m.kernel_basis();
        let mut span = ConstraintMatrix::new(f, self.ambient + 1);
        span.append_row(x.coords())?;
        let mut vectors = vec![x.coords().to_vec()];
        for v in kernel.vectors() {
            if vectors.len() == self.dim + 1 {
                break;
            }
            let before = span.rank();
            if span.append_row(v)? > before {
                vectors.push(v.clone());
            }
        }
        debug_assert_eq!(vectors.len(), self.dim + 1);
        Ok(TangentFrame { point: x.clone(), vectors })
    }

    /// Pushes a source point through the parametrization.
    pub fn push_forward(&self, source: &[F::Elem]) -> Result<Option<ProjPoint<F::Elem>>> {
        let param = self.parametrization.as_ref().ok_or_else(|| Error::Unsupported("model has no parametrization".into()))?;
        let image = param.iter().map(|c| c.eval(source)).collect::<Result<Vec<_>>>()?;
        match ProjPoint::new(&self.field, image) {
            Ok(p) => Ok(Some(p)),
            Err(Error::ZeroPoint) => Ok(None),
            Err(e) => Err(e),
        }
    }

    fn source_vars(&self) -> usize {
        self.parametrization.as_ref().map_or(0, |p| p[0].nvars())
    }

    /// Draws a smooth point, retrying up to `budget` times.
    ///
    /// Parametrized models push forward a random source point. Otherwise
    /// `c = N - n` randomly chosen coordinates are left free, the rest are
    /// fixed at random, and the free ones are solved by scanning `F_p^c`.
    pub fn sample_smooth_point<R: RngCore>(&self, rng: &mut R, budget: usize) -> Result<ProjPoint<F::Elem>> {
        let f = &self.field;
        let scan = if self.parametrization.is_some() {
            None
        } else {
            let q = f.order().ok_or(Error::InfiniteField)?;
            if q > SCAN_PRIME_LIMIT {
                return Err(Error::Unsupported(format!("sampling by root scan needs p <= {SCAN_PRIME_LIMIT}, got {q}")));
            }
            let cells = q.checked_pow(self.codim() as u32).filter(|&c| c <= SCAN_CELL_LIMIT);
            Some(cells.ok_or_else(|| Error::Unsupported(format!("codimension {} is too large to scan", self.codim())))?)
        };
        for _ in 0..budget {
            let candidate = match scan {
                None => {
                    let source: Vec<F::Elem> = (0..self.source_vars()).map(|_| f.random(rng)).collect();
                    self.push_forward(&source)?
                }
                Some(cells) => self.scan_candidate(rng, cells)?,
            };
            if let Some(x) = candidate {
                if self.is_smooth_point(x.coords())? {
                    return Ok(x);
                }
            }
        }
        Err(Error::SamplingExhausted { attempts: budget })
    }

    fn scan_candidate<R: RngCore>(&self, rng: &mut R, cells: u64) -> Result<Option<ProjPoint<F::Elem>>> {
        let f = &self.field;
        let q = f.order().expect("finite field");
        let mut order: Vec<usize> = (0..=self.ambient).collect();
        order.shuffle(rng);
        let free = &order[..self.codim()];
        let mut pt: Vec<F::Elem> = (0..=self.ambient).map(|_| f.random(rng)).collect();
        let mut solutions = Vec::new();
        for cell in 0..cells {
            let mut rest = cell;
            for &i in free {
                pt[i] = f.element(rest % q);
                rest /= q;
            }
            if self.forms.iter().all(|g| f.is_zero(&g.eval_unchecked(&pt))) && pt.iter().any(|c| !f.is_zero(c)) {
                solutions.push(pt.clone());
            }
        }
        if solutions.is_empty() {
            return Ok(None);
        }
        let pick = solutions.swap_remove(rng.gen_range(0..solutions.len()));
        ProjPoint::new(f, pick).map(Some)
    }

    /// The smooth points of `points` whose tangent space contains `z`.
    pub fn tangent_locus(&self, z: &[F::Elem], points: &PointSet) -> Result<PointSet> {
        self.check_len(z)?;
        let mut out = PointSet::empty(points.field_order(), points.ambient(), u128::MAX)?;
        for i in points.indices() {
            let x = points.point_at(&self.field, i);
            let jac = self.jacobian_at(&x)?;
            if rank_of(&self.field, self.ambient + 1, &jac)? == self.codim() && self.tangent_contains(&jac, z) {
                out.insert_index(i);
            }
        }
        Ok(out)
    }

    /// All `F_q`-points of the model.
    pub fn enumerate_points(&self, budget: u128) -> Result<PointSet> {
        let f = &self.field;
        PointSet::from_predicate(f, self.ambient, budget, |x| self.forms.iter().all(|g| f.is_zero(&g.eval_unchecked(x))))
    }

    /// The image of `P^(s-1)(F_q)` under the parametrization, deduplicated.
    pub fn enumerate_image(&self, budget: u128) -> Result<Vec<ProjPoint<F::Elem>>> {
        let s = self.source_vars();
        if s == 0 {
            return Err(Error::Unsupported("model has no parametrization".into()));
        }
        let source = PointSet::full(self.field.order().ok_or(Error::InfiniteField)?, s - 1, budget)?;
        let mut out = Vec::new();
        for pt in source.points(&self.field) {
            if let Some(x) = self.push_forward(&pt)? {
                out.push(x);
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

/// Deterministic per-prime RNG seed.
pub fn derive_seed(seed: u64, salt: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
