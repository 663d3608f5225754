//! Twisted symmetric differentials as polynomial data.
//!
//! A candidate section of `S^m Ω¹_X ⊗ O(k)` is a bihomogeneous polynomial
//! `P(z; w) = Σ c_{α,β} z^β w^α` with `|α| = m` and `|β| = k - m`, where
//! `w_i` stands for `dz_i`. At a smooth point `x` with tangent frame
//! `{x, t_1, .., t_n}` we restrict to the affine tangent space,
//! `Q_x(u) = P(x; u_0 x + u_1 t_1 + .. + u_n t_n)`, and impose:
//!
//! * cone rows: every coefficient of `Q_x` involving `u_0` vanishes, i.e.
//!   `Q_x` does not depend on the vertex direction (matrix `K1`);
//! * vanishing rows: every coefficient of `Q_x` vanishes (matrix `K0`).
//!
//! The reported dimension is `dim ker K1 - dim ker K0`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffpoly::{binomial, monomials_of_degree, next_prime, Exponents, Field, MultiPoly, PrimeField};
use crate::linalg::{ConstraintMatrix, SubspaceBasis};
use crate::variety::{derive_seed, ModelSpec, ProjPoint, RationalModel, TangentFrame, VarietyModel, DEFAULT_RETRY_BUDGET};

/// Monomials `z^β w^α`, ordered lexicographically by `(α, β)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateBasis {
    ambient: usize,
    m: u32,
    k: i64,
    alphas: Vec<Exponents>,
    betas: Vec<Exponents>,
}

impl CandidateBasis {
    pub fn new(ambient: usize, m: u32, k: i64) -> Self {
        let nvars = ambient + 1;
        let (alphas, betas) = if k < m as i64 {
            (Vec::new(), Vec::new())
        } else {
            (monomials_of_degree(nvars, m), monomials_of_degree(nvars, (k - m as i64) as u32))
        };
        CandidateBasis { ambient, m, k, alphas, betas }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn ncols(&self) -> usize {
        self.alphas.len() * self.betas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ncols() == 0
    }

    /// The `(α, β)` pair of a column.
    pub fn column(&self, i: usize) -> (&Exponents, &Exponents) {
        let nb = self.betas.len();
        (&self.alphas[i / nb], &self.betas[i % nb])
    }

    pub fn column_of(&self, alpha: &[u32], beta: &[u32]) -> Option<usize> {
        let a = self.alphas.binary_search_by(|x| x.as_slice().cmp(alpha)).ok()?;
        let b = self.betas.binary_search_by(|x| x.as_slice().cmp(beta)).ok()?;
        Some(a * self.betas.len() + b)
    }

    /// Closed-form column count, `C(N+m, m) · C(N+k-m, N)` for `k >= m`.
    pub fn expected_ncols(ambient: usize, m: u32, k: i64) -> u128 {
        if k < m as i64 {
            return 0;
        }
        let n = ambient as u64;
        binomial(n + m as u64, m as u64) as u128 * binomial(n + (k - m as i64) as u64, n) as u128
    }
}

/// A coefficient vector over a [`CandidateBasis`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymTensor<E> {
    pub coeffs: Vec<E>,
}

/// Rows of both constraint families at one point.
#[derive(Debug, Clone)]
pub struct PointRows<E> {
    pub cone: Vec<Vec<E>>,
    pub vanishing: Vec<Vec<E>>,
}

/// Coefficient rows of `Q_x` indexed by the `u`-monomials `γ` of degree `m`
/// (ascending lex order), together with each `γ`.
fn restriction_rows<F: Field>(field: &F, basis: &CandidateBasis, frame: &TangentFrame<F::Elem>) -> Vec<(Exponents, Vec<F::Elem>)> {
    let nu = frame.len();
    let nz = basis.ambient + 1;
    let gammas = monomials_of_degree(nu, basis.m);
    let mut rows: Vec<(Exponents, Vec<F::Elem>)> = gammas.into_iter().map(|g| (g, vec![field.zero(); basis.ncols()])).collect();
    if basis.is_empty() {
        return rows;
    }
    let x = frame.radial();
    // L_j(u) = Σ_i u_i v_i[j], and its powers up to m
    let lin: Vec<MultiPoly<F>> = (0..nz)
        .map(|j| MultiPoly::from_terms(field, nu, (0..nu).map(|i| (unit(nu, i), frame.vectors[i][j].clone()))))
        .collect();
    let powers: Vec<Vec<MultiPoly<F>>> = lin
        .iter()
        .map(|l| {
            let mut v = vec![MultiPoly::constant(field, nu, field.one())];
            for e in 1..=basis.m as usize {
                let next = v[e - 1].mul(l);
                v.push(next);
            }
            v
        })
        .collect();
    let xbeta: Vec<F::Elem> = basis.betas.iter().map(|b| monomial_value(field, x, b)).collect();
    let nb = basis.betas.len();
    for (ai, alpha) in basis.alphas.iter().enumerate() {
        let mut e = MultiPoly::constant(field, nu, field.one());
        for (j, &a) in alpha.iter().enumerate() {
            if a > 0 {
                e = e.mul(&powers[j][a as usize]);
            }
        }
        for (gamma, c) in e.terms() {
            let r = rows.binary_search_by(|(g, _)| g.cmp(gamma)).expect("u-monomial of degree m");
            for (bi, xb) in xbeta.iter().enumerate() {
                rows[r].1[ai * nb + bi] = field.mul(c, xb);
            }
        }
    }
    rows
}

fn unit(n: usize, i: usize) -> Exponents {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

fn monomial_value<F: Field>(field: &F, x: &[F::Elem], e: &[u32]) -> F::Elem {
    x.iter().zip(e).fold(field.one(), |acc, (xi, &k)| if k == 0 { acc } else { field.mul(&acc, &field.pow(xi, k as u64)) })
}

/// Cone and vanishing rows at a smooth point.
pub fn constraints_at<F: Field>(model: &VarietyModel<F>, x: &ProjPoint<F::Elem>, basis: &CandidateBasis) -> Result<PointRows<F::Elem>> {
    if basis.ambient != model.ambient() {
        return Err(Error::DimensionMismatch { expected: model.ambient(), found: basis.ambient });
    }
    let frame = model.tangent_frame(x)?;
    let rows = restriction_rows(model.field(), basis, &frame);
    let cone = rows.iter().filter(|(g, _)| g[0] >= 1).map(|(_, r)| r.clone()).collect();
    let vanishing = rows.into_iter().map(|(_, r)| r).collect();
    Ok(PointRows { cone, vanishing })
}

pub fn cone_constraints_at<F: Field>(model: &VarietyModel<F>, x: &ProjPoint<F::Elem>, basis: &CandidateBasis) -> Result<Vec<Vec<F::Elem>>> {
    Ok(constraints_at(model, x, basis)?.cone)
}

pub fn vanishing_constraints_at<F: Field>(model: &VarietyModel<F>, x: &ProjPoint<F::Elem>, basis: &CandidateBasis) -> Result<Vec<Vec<F::Elem>>> {
    Ok(constraints_at(model, x, basis)?.vanishing)
}

/// `(Ω_Q)^(m/2)` in the `(m, m)` basis, where `Ω_Q` is `Q` with `z` renamed to `w`.
pub fn quadric_witness<F: Field>(q: &MultiPoly<F>, m: u32) -> Result<SymTensor<F::Elem>> {
    if m % 2 == 1 {
        return Err(Error::InvalidArgument(format!("quadric witnesses need even m, got {m}")));
    }
    if q.homogeneous_degree() != Some(2) {
        return Err(Error::InvalidArgument("witness polynomial must be a quadratic form".into()));
    }
    let field = q.field();
    let basis = CandidateBasis::new(q.nvars() - 1, m, m as i64);
    let power = q.pow(m / 2);
    let mut coeffs = vec![field.zero(); basis.ncols()];
    let beta0 = vec![0; q.nvars()];
    for (alpha, c) in power.terms() {
        let col = basis.column_of(alpha, &beta0).expect("degree-m monomial");
        coeffs[col] = c.clone();
    }
    Ok(SymTensor { coeffs })
}

/// Accumulates both constraint families for one `(model, m, k)` over one field.
#[derive(Debug, Clone)]
pub struct ConstraintSystem<F: Field> {
    basis: CandidateBasis,
    k1: ConstraintMatrix<F>,
    k0: ConstraintMatrix<F>,
    points: usize,
}

impl<F: Field> ConstraintSystem<F> {
    pub fn new(field: &F, basis: CandidateBasis) -> Self {
        let n = basis.ncols();
        ConstraintSystem { basis, k1: ConstraintMatrix::new(field, n), k0: ConstraintMatrix::new(field, n), points: 0 }
    }

    pub fn basis(&self) -> &CandidateBasis {
        &self.basis
    }

    pub fn points(&self) -> usize {
        self.points
    }

    /// Adds a batch of points. Rows are generated in parallel, then sorted
    /// before they reach the matrices.
    pub fn add_points(&mut self, model: &VarietyModel<F>, points: &[ProjPoint<F::Elem>]) -> Result<()> {
        let per_point: Vec<PointRows<F::Elem>> =
            points.par_iter().map(|x| constraints_at(model, x, &self.basis)).collect::<Result<_>>()?;
        let mut cone = Vec::new();
        let mut vanishing = Vec::new();
        for r in per_point {
            cone.extend(r.cone);
            vanishing.extend(r.vanishing);
        }
        self.k1.append_batch(cone)?;
        self.k0.append_batch(vanishing)?;
        self.points += points.len();
        Ok(())
    }

    pub fn dim_k1(&self) -> usize {
        self.k1.nullity()
    }

    pub fn dim_k0(&self) -> usize {
        self.k0.nullity()
    }

    pub fn dimension(&self) -> usize {
        self.dim_k1() - self.dim_k0()
    }

    pub fn k1_kernel(&self) -> SubspaceBasis<F> {
        self.k1.kernel_basis()
    }

    pub fn k0_kernel(&self) -> SubspaceBasis<F> {
        self.k0.kernel_basis()
    }

    /// Whether `t` satisfies every cone row seen so far.
    pub fn satisfies_cone_rows(&self, t: &SymTensor<F::Elem>) -> bool {
        self.k1.annihilates(&t.coeffs)
    }
}

/// Stabilization protocol parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct EstimateConfig {
    /// Smallest prime to try; the run uses the first `nprimes` admissible primes from here.
    pub prime: u64,
    pub nprimes: usize,
    pub seed: u64,
    pub batch_size: usize,
    pub window: usize,
    pub max_batches: usize,
    pub retry_budget: usize,
}

impl Default for EstimateConfig {
    fn default() -> Self {
        EstimateConfig {
            prime: 101,
            nprimes: 3,
            seed: 0,
            batch_size: 5,
            window: 3,
            max_batches: 40,
            retry_budget: DEFAULT_RETRY_BUDGET,
        }
    }
}

/// Outcome at a single prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeRun {
    pub prime: u64,
    pub dim_k1: usize,
    pub dim_k0: usize,
    pub dimension: usize,
    pub samples: usize,
    pub batches: usize,
    pub stabilized: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stability {
    Stable,
    Unstable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub model: String,
    pub ambient: usize,
    pub dim: usize,
    pub m: u32,
    pub k: i64,
    pub ncols: usize,
    pub seed: u64,
    pub prime: u64,
    pub dim_k1: usize,
    pub dim_k0: usize,
    /// `None` when the report is unstable.
    pub dimension: Option<usize>,
    pub status: Stability,
    pub samples: usize,
    pub window: usize,
    pub agreement: bool,
    pub runs: Vec<PrimeRun>,
    pub in_range: bool,
    pub regime: String,
}

/// `3n > 2(N - 1)`.
pub fn in_descent_range(ambient: usize, dim: usize) -> bool {
    3 * dim + 2 > 2 * ambient
}

/// Primes must exceed every form degree, `2m` and `k`.
pub fn admissibility_bound(max_form_degree: u32, m: u32, k: i64) -> u64 {
    (max_form_degree as u64).max(2 * m as u64).max(k.max(0) as u64)
}

/// The first `count` admissible primes at or above `start`.
pub fn admissible_primes(start: u64, count: usize, bound: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut p = next_prime(start.max(bound + 1).max(3));
    while out.len() < count {
        out.push(p);
        p = next_prime(p + 1);
    }
    out
}

fn run_at_prime(model: &RationalModel, basis: &CandidateBasis, p: u64, cfg: &EstimateConfig) -> Result<PrimeRun> {
    let field = PrimeField::new(p)?;
    let vm = VarietyModel::from_rational(model, &field)?;
    let mut sys = ConstraintSystem::new(&field, basis.clone());
    if basis.is_empty() {
        return Ok(PrimeRun { prime: p, dim_k1: 0, dim_k0: 0, dimension: 0, samples: 0, batches: 0, stabilized: true });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, p));
    let mut last = None;
    let mut unchanged = 0;
    let mut batches = 0;
    let mut stabilized = false;
    while batches < cfg.max_batches {
        let pts = (0..cfg.batch_size).map(|_| vm.sample_smooth_point(&mut rng, cfg.retry_budget)).collect::<Result<Vec<_>>>()?;
        sys.add_points(&vm, &pts)?;
        batches += 1;
        let dims = (sys.dim_k1(), sys.dim_k0());
        if last == Some(dims) {
            unchanged += 1;
        } else {
            unchanged = 0;
        }
        last = Some(dims);
        // both kernels only shrink, so an empty K1 is final
        if unchanged >= cfg.window || dims.0 == 0 {
            stabilized = true;
            break;
        }
    }
    Ok(PrimeRun {
        prime: p,
        dim_k1: sys.dim_k1(),
        dim_k0: sys.dim_k0(),
        dimension: sys.dimension(),
        samples: sys.points(),
        batches,
        stabilized,
    })
}

/// Estimates `dim H⁰(X, S^m Ω¹_X ⊗ O(k))` by sampled constraints over several primes.
pub fn estimate_dimension(spec: &ModelSpec, m: u32, k: i64, cfg: &EstimateConfig) -> Result<DimensionReport> {
    let model = spec.validate()?;
    estimate_dimension_rational(&model, m, k, cfg)
}

pub fn estimate_dimension_rational(model: &RationalModel, m: u32, k: i64, cfg: &EstimateConfig) -> Result<DimensionReport> {
    if cfg.nprimes == 0 || cfg.batch_size == 0 {
        return Err(Error::InvalidArgument("nprimes and batch_size must be positive".into()));
    }
    let spec = &model.spec;
    let bound = admissibility_bound(model.max_degree(), m, k);
    if cfg.prime <= bound {
        return Err(Error::InadmissiblePrime { prime: cfg.prime, bound });
    }
    let basis = CandidateBasis::new(spec.ambient, m, k);
    let primes = admissible_primes(cfg.prime, cfg.nprimes, bound);
    let runs = primes.iter().map(|&p| run_at_prime(model, &basis, p, cfg)).collect::<Result<Vec<_>>>()?;
    let first = &runs[0];
    let agreement = runs.iter().all(|r| (r.dim_k1, r.dim_k0) == (first.dim_k1, first.dim_k0));
    let stable = agreement && runs.iter().all(|r| r.stabilized);
    let in_range = in_descent_range(spec.ambient, spec.dim);
    Ok(DimensionReport {
        model: spec.name.clone(),
        ambient: spec.ambient,
        dim: spec.dim,
        m,
        k,
        ncols: basis.ncols(),
        seed: cfg.seed,
        prime: first.prime,
        dim_k1: first.dim_k1,
        dim_k0: first.dim_k0,
        dimension: stable.then_some(first.dimension),
        status: if stable { Stability::Stable } else { Stability::Unstable },
        samples: runs.iter().map(|r| r.samples).sum(),
        window: cfg.window,
        agreement,
        runs,
        in_range,
        regime: if in_range { "complete" } else { "polynomial-representable subspace" }.to_string(),
    })
}

/// `(dim ker K1, dim ker K0)` for a fixed point list; used to compare field backends.
pub fn kernel_dims_at_points<F: Field>(model: &VarietyModel<F>, m: u32, k: i64, points: &[ProjPoint<F::Elem>]) -> Result<(usize, usize)> {
    let mut sys = ConstraintSystem::new(model.field(), CandidateBasis::new(model.ambient(), m, k));
    sys.add_points(model, points)?;
    Ok((sys.dim_k1(), sys.dim_k0()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::parse_poly_in;

    fn f101() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    fn model(name: &str) -> VarietyModel<PrimeField> {
        VarietyModel::from_spec(&ModelSpec::builtin(name).unwrap(), &f101()).unwrap()
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(CandidateBasis::new(3, 2, 2).ncols(), 10);
        assert_eq!(CandidateBasis::new(3, 2, 3).ncols(), 40);
        assert_eq!(CandidateBasis::new(3, 3, 2).ncols(), 0);
        for (n, m, k) in [(3, 2, 2), (3, 2, 4), (5, 2, 2), (2, 3, 5), (4, 1, 3)] {
            assert_eq!(CandidateBasis::new(n, m, k).ncols() as u128, CandidateBasis::expected_ncols(n, m, k));
        }
    }

    #[test]
    fn basis_order_is_lexicographic() {
        let b = CandidateBasis::new(2, 1, 2);
        let cols: Vec<_> = (0..b.ncols()).map(|i| b.column(i)).collect();
        assert!(cols.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(b.column_of(&[0, 0, 1], &[1, 0, 0]), Some(2));
    }

    #[test]
    fn quadric_witness_examples() {
        let f = f101();
        let q = parse_poly_in(&f, "z0*z3 - z1*z2", 4).unwrap();
        let w = quadric_witness(&q, 2).unwrap();
        let b = CandidateBasis::new(3, 2, 2);
        let nonzero: Vec<_> = (0..b.ncols()).filter(|&i| w.coeffs[i] != 0).map(|i| (b.column(i).0.clone(), w.coeffs[i])).collect();
        assert_eq!(nonzero, vec![(vec![0, 1, 1, 0], 100), (vec![1, 0, 0, 1], 1)]);
        let sq = parse_poly_in(&f, "z0^2", 4).unwrap();
        let w0 = quadric_witness(&sq, 2).unwrap();
        assert_eq!(w0.coeffs.iter().filter(|&&c| c != 0).count(), 1);
        assert_eq!(w0.coeffs[b.column_of(&[2, 0, 0, 0], &[0, 0, 0, 0]).unwrap()], 1);
        let w4 = quadric_witness(&q, 4).unwrap();
        assert_eq!(w4.coeffs.iter().filter(|&&c| c != 0).count(), 3);
        assert!(quadric_witness(&q, 3).is_err());
    }

    #[test]
    fn quadric_witness_satisfies_cone_rows() {
        let f = f101();
        let m = model("quadric-surface");
        let q = parse_poly_in(&f, "z0*z3 - z1*z2", 4).unwrap();
        let mut sys = ConstraintSystem::new(&f, CandidateBasis::new(3, 2, 2));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pts: Vec<_> = (0..10).map(|_| m.sample_smooth_point(&mut rng, 100).unwrap()).collect();
        sys.add_points(&m, &pts).unwrap();
        assert!(sys.satisfies_cone_rows(&quadric_witness(&q, 2).unwrap()));
    }

    #[test]
    fn witness_is_not_trivial_at_a_point() {
        // at x = [1:0:0:0] the restriction of w0 w3 - w1 w2 is -u1 u2
        let f = f101();
        let m = model("quadric-surface");
        let b = CandidateBasis::new(3, 2, 2);
        let x = ProjPoint::new(&f, vec![1, 0, 0, 0]).unwrap();
        let rows = constraints_at(&m, &x, &b).unwrap();
        let q = parse_poly_in(&f, "z0*z3 - z1*z2", 4).unwrap();
        let w = quadric_witness(&q, 2).unwrap();
        let values: Vec<u64> = rows.vanishing.iter().map(|r| f.dot(r, &w.coeffs)).collect();
        assert_eq!(values.iter().filter(|&&v| v != 0).count(), 1);
        assert!(rows.cone.iter().all(|r| f.dot(r, &w.coeffs) == 0));
    }

    #[test]
    fn hyperplane_square_is_a_cone() {
        let f = PrimeField::new(11).unwrap();
        let h = VarietyModel::from_spec(&ModelSpec::hyperplane(3), &f).unwrap();
        let b = CandidateBasis::new(3, 2, 2);
        let w0sq = b.column_of(&[2, 0, 0, 0], &[0, 0, 0, 0]).unwrap();
        let x = ProjPoint::new(&f, vec![0, 1, 4, 7]).unwrap();
        for row in cone_constraints_at(&h, &x, &b).unwrap() {
            assert_eq!(row[w0sq], 0);
        }
    }

    #[test]
    fn form_times_anything_is_trivial() {
        // F(z) w^α with k = m + deg F lies in the kernel of every vanishing row
        let f = f101();
        let m = model("cubic-surface");
        let b = CandidateBasis::new(3, 1, 4);
        let mut t = vec![0; b.ncols()];
        for (e, c) in m.forms()[0].terms() {
            t[b.column_of(&[0, 1, 0, 0], e).unwrap()] = *c;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let x = m.sample_smooth_point(&mut rng, 100).unwrap();
            for r in vanishing_constraints_at(&m, &x, &b).unwrap() {
                assert_eq!(f.dot(&r, &t), 0);
            }
        }
    }

    #[test]
    fn gradient_pairing_is_trivial() {
        // Σ w_i ∂F/∂z_i vanishes on tangent vectors
        let f = f101();
        let m = model("cubic-surface");
        let b = CandidateBasis::new(3, 1, 3);
        let mut t = vec![0; b.ncols()];
        for i in 0..4 {
            let mut alpha = vec![0; 4];
            alpha[i] = 1;
            for (e, c) in m.forms()[0].partial_derivative(i).terms() {
                t[b.column_of(&alpha, e).unwrap()] = *c;
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..5 {
            let x = m.sample_smooth_point(&mut rng, 100).unwrap();
            for r in vanishing_constraints_at(&m, &x, &b).unwrap() {
                assert_eq!(f.dot(&r, &t), 0);
            }
        }
    }

    #[test]
    fn cubic_surface_cuts_to_zero() {
        let f = f101();
        let m = model("cubic-surface");
        let mut sys = ConstraintSystem::new(&f, CandidateBasis::new(3, 2, 2));
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let pts: Vec<_> = (0..15).map(|_| m.sample_smooth_point(&mut rng, 100).unwrap()).collect();
        sys.add_points(&m, &pts).unwrap();
        assert_eq!(sys.dim_k1(), 0);
    }

    #[test]
    fn prime_selection() {
        assert_eq!(admissible_primes(101, 3, 4), vec![101, 103, 107]);
        assert_eq!(admissible_primes(2, 2, 6), vec![7, 11]);
        assert_eq!(admissibility_bound(3, 2, 2), 4);
        assert!(in_descent_range(3, 2));
        assert!(in_descent_range(5, 3));
        assert!(!in_descent_range(5, 2));
    }
}
