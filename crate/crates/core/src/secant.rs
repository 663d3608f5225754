//! Line incidence geometry over finite fields: line types, t-trisecant cones
//! `C_x Y`, iterated cones `C_X^k X`, quadric envelopes, secant and tangent
//! membership, and the trisecant variety.
//!
//! Everything here works with `F_p`-rational points, so set-level answers
//! approximate the complex varieties from below.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffpoly::{monomials_of_degree, restrict_to_line, BinaryForm, BinaryFormProfile, Field, MultiPoly, PrimeField, QuadraticExtension};
use crate::linalg::{rank_of, ConstraintMatrix, SubspaceBasis};
use crate::variety::{derive_seed, PointSet, ProjPoint, VarietyModel};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineClassification {
    pub profile: BinaryFormProfile,
    pub total: u32,
    pub line_type: Vec<u32>,
    pub is_secant: bool,
    pub is_trisecant: bool,
    pub is_tangent: bool,
    pub is_t_trisecant: bool,
    pub contained: bool,
}

impl LineClassification {
    fn from_profile(profile: BinaryFormProfile) -> Self {
        if profile.contained {
            return LineClassification {
                total: 0,
                line_type: Vec::new(),
                profile,
                is_secant: true,
                is_trisecant: true,
                is_tangent: true,
                is_t_trisecant: true,
                contained: true,
            };
        }
        let total = profile.total();
        let is_tangent = profile.max_multiplicity() >= 2;
        LineClassification {
            total,
            line_type: profile.line_type(),
            is_secant: total >= 2,
            is_trisecant: total >= 3,
            is_tangent,
            is_t_trisecant: total >= 3 && is_tangent,
            contained: false,
            profile,
        }
    }
}

/// The binary form cutting out `X ∩ l` on the line through `a` and `b`
/// (the gcd of all restricted forms); `None` when `l ⊂ X`.
pub fn line_section<F: Field>(model: &VarietyModel<F>, a: &[F::Elem], b: &[F::Elem]) -> Option<BinaryForm<F>> {
    let restricted: Vec<BinaryForm<F>> = model.forms().iter().map(|f| restrict_to_line(f, a, b)).collect();
    BinaryForm::gcd_all(&restricted)
}

/// Type of the line through `a` and `b` relative to the model.
pub fn classify_line<F: Field>(model: &VarietyModel<F>, a: &[F::Elem], b: &[F::Elem]) -> Result<LineClassification> {
    let n = model.ambient() + 1;
    for v in [a, b] {
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: v.len() });
        }
    }
    if rank_of(model.field(), n, &[a.to_vec(), b.to_vec()])? < 2 {
        return Err(Error::InvalidArgument("a line needs two distinct points".into()));
    }
    let profile = match line_section(model, a, b) {
        None => BinaryFormProfile { pairs: Vec::new(), contained: true },
        Some(g) => g.multiplicity_pattern(),
    };
    Ok(LineClassification::from_profile(profile))
}

/// Adds every `F_p`-point of the line `xy` to `out`.
fn add_line<F: Field>(field: &F, x: &[F::Elem], y: &[F::Elem], out: &mut PointSet) -> Result<()> {
    out.insert(field, x)?;
    let q = field.order().ok_or(Error::InfiniteField)?;
    for i in 0..q {
        let lam = field.element(i);
        let pt: Vec<F::Elem> = y.iter().zip(x).map(|(yi, xi)| field.add(yi, &field.mul(&lam, xi))).collect();
        out.insert(field, &pt)?;
    }
    Ok(())
}

/// `C_x Y`: all points on chords from `x` to points `y ≠ x` of
/// `target ∩ T_x X`.
pub fn cone_of_point<F: Field>(model: &VarietyModel<F>, x: &[F::Elem], target: &PointSet) -> Result<PointSet> {
    if !model.is_smooth_point(x)? {
        let rank = model.jacobian_rank(x)?;
        return Err(Error::SingularPoint { rank, expected: model.codim() });
    }
    Ok(cone_at_smooth(model, x, &model.jacobian_at(x)?, target))
}

fn cone_at_smooth<F: Field>(model: &VarietyModel<F>, x: &[F::Elem], jac: &[Vec<F::Elem>], target: &PointSet) -> PointSet {
    let f = model.field();
    let mut out = PointSet::empty(target.field_order(), target.ambient(), u128::MAX).expect("same space as target");
    let xi = target.index_of(f, x).expect("x is a point");
    for i in target.indices() {
        if i == xi {
            continue;
        }
        let y = target.point_at(f, i);
        if model.tangent_contains(jac, &y) {
            add_line(f, x, &y, &mut out).expect("finite field");
        }
    }
    out
}

/// One step of the cone iteration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeStep {
    pub k: usize,
    pub points: usize,
    pub coverage: f64,
}

#[derive(Debug, Clone)]
pub struct ConeIteration {
    pub prime: u64,
    pub universe: usize,
    pub vertices: usize,
    pub skipped_singular: usize,
    pub steps: Vec<ConeStep>,
    pub sets: Vec<PointSet>,
    /// First `k` with `S_k = S_(k-1)`, if reached.
    pub fixpoint_at: Option<usize>,
}

impl ConeIteration {
    pub fn coverages(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.coverage).collect()
    }
}

/// `S_0 = X(F_p)`, `S_(k+1) = ∪_x C_x(S_k)` over smooth `x ∈ X(F_p)`.
pub fn iterate_cone_variety(model: &VarietyModel<PrimeField>, kmax: usize, budget: u128) -> Result<ConeIteration> {
    let f = model.field();
    let s0 = model.enumerate_points(budget)?;
    let mut vertices = Vec::new();
    let mut skipped = 0;
    for x in s0.points(f) {
        let jac = model.jacobian_at(&x)?;
        if rank_of(f, model.ambient() + 1, &jac)? == model.codim() {
            vertices.push((x, jac));
        } else {
            skipped += 1;
        }
    }
    let step = |k: usize, s: &PointSet| ConeStep { k, points: s.len(), coverage: s.coverage() };
    let mut steps = vec![step(0, &s0)];
    let mut sets = vec![s0];
    let mut fixpoint_at = None;
    for k in 1..=kmax {
        let prev = sets.last().expect("S_0 present");
        let next = vertices
            .par_iter()
            .map(|(x, jac)| cone_at_smooth(model, x, jac, prev))
            .reduce_with(|mut a, b| {
                a.union_with(&b);
                a
            })
            .unwrap_or_else(|| PointSet::empty(prev.field_order(), prev.ambient(), u128::MAX).expect("same space"));
        let same = &next == prev;
        steps.push(step(k, &next));
        sets.push(next);
        if same {
            fixpoint_at = Some(k);
            break;
        }
    }
    Ok(ConeIteration {
        prime: f.modulus(),
        universe: sets[0].universe(),
        vertices: vertices.len(),
        skipped_singular: skipped,
        steps,
        sets,
        fixpoint_at,
    })
}

/// Values of all degree-2 monomials at `x`, in ascending lex order.
fn quadric_row<F: Field>(field: &F, monos: &[Vec<u32>], x: &[F::Elem]) -> Vec<F::Elem> {
    monos
        .iter()
        .map(|e| x.iter().zip(e).fold(field.one(), |acc, (xi, &k)| if k == 0 { acc } else { field.mul(&acc, &field.pow(xi, k as u64)) }))
        .collect()
}

/// The space of quadrics vanishing on `X(F_p)`.
#[derive(Debug, Clone)]
pub struct QuadricEnvelope {
    pub basis: SubspaceBasis<PrimeField>,
    pub quadrics: Vec<MultiPoly<PrimeField>>,
}

impl QuadricEnvelope {
    pub fn dim(&self) -> usize {
        self.quadrics.len()
    }

    pub fn rendered(&self) -> Vec<String> {
        self.quadrics.iter().map(|q| q.render()).collect()
    }

    /// Whether every envelope quadric vanishes at `x`.
    pub fn contains(&self, x: &[u64]) -> bool {
        self.quadrics.iter().all(|q| q.eval_unchecked(x) == 0)
    }
}

pub fn quadric_envelope(model: &VarietyModel<PrimeField>, budget: u128) -> Result<QuadricEnvelope> {
    let points = model.enumerate_points(budget)?;
    envelope_of(model.field(), model.ambient(), &points)
}

pub fn envelope_of(field: &PrimeField, ambient: usize, points: &PointSet) -> Result<QuadricEnvelope> {
    let nvars = ambient + 1;
    let monos = monomials_of_degree(nvars, 2);
    let mut m = ConstraintMatrix::new(field, monos.len());
    for x in points.points(field) {
        m.append_row(&quadric_row(field, &monos, &x))?;
        if m.nullity() == 0 {
            break;
        }
    }
    let basis = m.kernel_basis();
    let quadrics = basis
        .vectors()
        .iter()
        .map(|v| MultiPoly::from_terms(field, nvars, monos.iter().cloned().zip(v.iter().copied())))
        .collect();
    Ok(QuadricEnvelope { basis, quadrics })
}

/// `X(F_p)` together with every point on a line joining two of its points.
pub fn secant_points(model: &VarietyModel<PrimeField>, budget: u128) -> Result<(PointSet, PointSet)> {
    let f = model.field();
    let x = model.enumerate_points(budget)?;
    let pts: Vec<Vec<u64>> = x.points(f).collect();
    let shards: Vec<PointSet> = (0..pts.len())
        .into_par_iter()
        .map(|i| {
            let mut s = PointSet::empty(x.field_order(), x.ambient(), u128::MAX).expect("same space");
            for y in &pts[i + 1..] {
                add_line(f, &pts[i], y, &mut s).expect("finite field");
            }
            s
        })
        .collect();
    let mut sec = x.clone();
    for s in &shards {
        sec.union_with(s);
    }
    Ok((x, sec))
}

/// `z ∈ X` or `z` lies on a line joining two distinct points of `X(F_p)`.
pub fn secant_membership(model: &VarietyModel<PrimeField>, z: &[u64], budget: u128) -> Result<bool> {
    let (_, sec) = secant_points(model, budget)?;
    sec.contains(model.field(), z)
}

/// Some smooth `x ∈ X(F_p)` has `z ∈ T_x X`.
pub fn tangent_membership(model: &VarietyModel<PrimeField>, z: &[u64], budget: u128) -> Result<bool> {
    let x = model.enumerate_points(budget)?;
    Ok(!model.tangent_locus(z, &x)?.is_empty())
}

/// Some smooth point of the listed points over `F` has `z ∈ T_x X`.
fn tangent_at_some<F: Field>(model: &VarietyModel<F>, z: &[F::Elem], points: &[ProjPoint<F::Elem>]) -> Result<bool> {
    for x in points {
        let jac = model.jacobian_at(x.coords())?;
        if model.tangent_contains(&jac, z) && rank_of(model.field(), model.ambient() + 1, &jac)? == model.codim() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Symmetric 3×3 matrix of a point of `P^5` in Veronese coordinates.
pub fn veronese_matrix(z: &[u64]) -> Vec<Vec<u64>> {
    vec![vec![z[0], z[1], z[2]], vec![z[1], z[3], z[4]], vec![z[2], z[4], z[5]]]
}

/// Rank oracle for the Veronese surface: `z ∈ Sec` iff the matrix has rank at most 2.
pub fn veronese_rank(field: &PrimeField, z: &[u64]) -> Result<usize> {
    if z.len() != 6 {
        return Err(Error::DimensionMismatch { expected: 6, found: z.len() });
    }
    rank_of(field, 3, &veronese_matrix(z))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZakReport {
    pub model: String,
    pub prime: u64,
    pub seed: u64,
    pub trials: usize,
    pub points_on_x: usize,
    pub secant_points_off_x: usize,
    /// Secant points with no `F_p`-rational point of tangency.
    pub rational_failures: usize,
    /// Secant points with no point of tangency over `F_(p^2)`; `None` when
    /// the model has no parametrization to enumerate.
    pub extension_failures: Option<usize>,
}

/// For `trials` random `F_p`-points of `Sec(X) \ X`, tests tangent membership.
pub fn zak_check(model: &VarietyModel<PrimeField>, trials: usize, seed: u64, budget: u128) -> Result<ZakReport> {
    let f = model.field();
    let p = f.modulus();
    let (x, sec) = secant_points(model, budget)?;
    let off: Vec<usize> = sec.difference(&x);
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, p));
    let picks: Vec<usize> = (0..trials).filter_map(|_| off.choose(&mut rng).copied()).collect();

    let rational_pts: Vec<ProjPoint<u64>> = x.points(f).map(|c| ProjPoint::new(f, c)).collect::<Result<_>>()?;
    let ext_pts = match model.parametrization() {
        Some(_) => {
            let ext = QuadraticExtension::new(p)?;
            let lifted = lift_model(model, &ext);
            Some((ext.clone(), lifted.enumerate_image(budget)?, lifted))
        }
        None => None,
    };
    let mut rational_failures = 0;
    let mut extension_failures = ext_pts.as_ref().map(|_| 0);
    for &i in &picks {
        let z = sec.point_at(f, i);
        if !tangent_at_some(model, &z, &rational_pts)? {
            rational_failures += 1;
        }
        if let Some((ext, pts, lifted)) = &ext_pts {
            let zl: Vec<(u64, u64)> = z.iter().map(|&c| ext.embed(c)).collect();
            if !tangent_at_some(lifted, &zl, pts)? {
                *extension_failures.as_mut().expect("set with ext_pts") += 1;
            }
        }
    }
    Ok(ZakReport {
        model: model.name().to_string(),
        prime: p,
        seed,
        trials: picks.len(),
        points_on_x: x.len(),
        secant_points_off_x: off.len(),
        rational_failures,
        extension_failures,
    })
}

/// The same model with its coefficients mapped into `F_(p^2)`.
fn lift_model(model: &VarietyModel<PrimeField>, ext: &QuadraticExtension) -> VarietyModel<QuadraticExtension> {
    model.map_field(ext, |c| ext.embed(*c))
}

/// Brute-force secant membership against the rank oracle on random points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankOracleReport {
    pub prime: u64,
    pub samples: usize,
    pub mismatches: usize,
}

pub fn veronese_rank_agreement(model: &VarietyModel<PrimeField>, samples: usize, seed: u64, budget: u128) -> Result<RankOracleReport> {
    let f = model.field();
    let (_, sec) = secant_points(model, budget)?;
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, f.modulus() + 1));
    let mut mismatches = 0;
    let mut drawn = 0;
    while drawn < samples {
        let z: Vec<u64> = (0..6).map(|_| f.random(&mut rng)).collect();
        if z.iter().all(|&c| c == 0) {
            continue;
        }
        drawn += 1;
        if sec.contains(f, &z)? != (veronese_rank(f, &z)? <= 2) {
            mismatches += 1;
        }
    }
    Ok(RankOracleReport { prime: f.modulus(), samples, mismatches })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnvelopeInclusionReport {
    pub model: String,
    pub prime: u64,
    pub envelope_dim: usize,
    pub envelope: Vec<String>,
    pub step_sizes: Vec<usize>,
    pub violations: usize,
}

/// Checks `C_X^k X ⊂ Q_1 ∩ .. ∩ Q_l` for every computed iterate.
pub fn envelope_inclusion_check(model: &VarietyModel<PrimeField>, kmax: usize, budget: u128) -> Result<EnvelopeInclusionReport> {
    let f = model.field();
    let env = quadric_envelope(model, budget)?;
    let iter = iterate_cone_variety(model, kmax, budget)?;
    let violations = iter.sets.iter().map(|s| s.points(f).filter(|x| !env.contains(x)).count()).sum();
    Ok(EnvelopeInclusionReport {
        model: model.name().to_string(),
        prime: f.modulus(),
        envelope_dim: env.dim(),
        envelope: env.rendered(),
        step_sizes: iter.steps.iter().map(|s| s.points).collect(),
        violations,
    })
}

/// Number of lines in `P^N(F_q)`.
pub fn line_count(q: u64, ambient: usize) -> u128 {
    let mut total = 0u128;
    for i in 0..ambient {
        for j in i + 1..=ambient {
            total += (q as u128).pow((ambient - i - 1) as u32) * (q as u128).pow((ambient - j) as u32);
        }
    }
    total
}

/// Calls `visit(a, b)` for a spanning pair of every line of `P^N(F_q)`.
/// Lines are enumerated by reduced echelon form: `a` has its leading 1 at
/// `i`, `b` at `j > i`, and `a_j = 0`.
pub fn for_each_line<F, V>(field: &F, ambient: usize, visit: V) -> Result<()>
where
    F: Field,
    V: Fn(&[F::Elem], &[F::Elem]) + Sync,
{
    let q = field.order().ok_or(Error::InfiniteField)?;
    let n = ambient + 1;
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    cells.par_iter().for_each(|&(i, j)| {
        let a_free: Vec<usize> = (i + 1..n).filter(|&c| c != j).collect();
        let b_free: Vec<usize> = (j + 1..n).collect();
        let na = q.pow(a_free.len() as u32);
        let nb = q.pow(b_free.len() as u32);
        (0..na).into_par_iter().for_each(|ca| {
            let mut a = vec![field.zero(); n];
            a[i] = field.one();
            fill(field, q, ca, &a_free, &mut a);
            let mut b = vec![field.zero(); n];
            b[j] = field.one();
            for cb in 0..nb {
                fill(field, q, cb, &b_free, &mut b);
                visit(&a, &b);
            }
        });
    });
    Ok(())
}

fn fill<F: Field>(field: &F, q: u64, mut code: u64, slots: &[usize], v: &mut [F::Elem]) {
    for &s in slots {
        v[s] = field.element(code % q);
        code /= q;
    }
}

/// `Tr(X)`: union of the `F_p`-points of every line meeting `X` with total
/// intersection length at least 3 (including lines inside `X`).
pub fn trisecant_variety(model: &VarietyModel<PrimeField>, budget: u128) -> Result<PointSet> {
    let f = model.field();
    let p = f.modulus();
    let universe = PointSet::empty(p, model.ambient(), budget)?;
    let hits = std::sync::Mutex::new(Vec::<(Vec<u64>, Vec<u64>)>::new());
    for_each_line(f, model.ambient(), |a, b| {
        let trisecant = match line_section(model, a, b) {
            None => true,
            Some(g) => g.multiplicity_pattern().total() >= 3,
        };
        if trisecant {
            hits.lock().expect("no panics while held").push((a.to_vec(), b.to_vec()));
        }
    })?;
    let mut lines = hits.into_inner().expect("no panics while held");
    lines.sort();
    let mut out = universe;
    for (a, b) in &lines {
        add_line(f, a, b, &mut out)?;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrisecantEqualityReport {
    pub model: String,
    pub prime: u64,
    pub cone_points: usize,
    pub trisecant_points: usize,
    pub only_in_cone: usize,
    pub only_in_trisecant: usize,
}

impl TrisecantEqualityReport {
    pub fn equal(&self) -> bool {
        self.only_in_cone == 0 && self.only_in_trisecant == 0
    }
}

/// Compares `C_X X` with `Tr(X)` as sets of `F_p`-points.
pub fn trisecant_equality(model: &VarietyModel<PrimeField>, budget: u128) -> Result<TrisecantEqualityReport> {
    let iter = iterate_cone_variety(model, 1, budget)?;
    let cone = &iter.sets[1];
    let tr = trisecant_variety(model, budget)?;
    Ok(TrisecantEqualityReport {
        model: model.name().to_string(),
        prime: model.field().modulus(),
        cone_points: cone.len(),
        trisecant_points: tr.len(),
        only_in_cone: cone.difference(&tr).len(),
        only_in_trisecant: tr.difference(cone).len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variety::{ModelSpec, DEFAULT_ENUMERATION_BUDGET};

    const B: u128 = DEFAULT_ENUMERATION_BUDGET;

    fn model(name: &str, p: u64) -> VarietyModel<PrimeField> {
        VarietyModel::from_spec(&ModelSpec::builtin(name).unwrap(), &PrimeField::new(p).unwrap()).unwrap()
    }

    #[test]
    fn line_examples() {
        let conic = model("conic", 101);
        let c = classify_line(&conic, &[1, 0, 0], &[0, 0, 1]).unwrap();
        assert_eq!(c.line_type, vec![1, 1]);
        assert!(c.is_secant && !c.is_trisecant && !c.is_tangent);
        let c = classify_line(&conic, &[1, 0, 0], &[0, 1, 0]).unwrap();
        assert_eq!(c.line_type, vec![2]);
        assert!(c.is_tangent && !c.is_t_trisecant);
        let nodal = model("nodal-cubic", 101);
        let c = classify_line(&nodal, &[1, 0, 0], &[0, 1, 2]).unwrap();
        assert_eq!(c.line_type, vec![2, 1]);
        assert!(c.is_t_trisecant && c.is_trisecant && c.is_tangent);
        assert!(classify_line(&conic, &[1, 0, 0], &[2, 0, 0]).is_err());
    }

    #[test]
    fn contained_lines_set_every_flag() {
        let q = model("quadric-surface", 11);
        let c = classify_line(&q, &[1, 0, 0, 0], &[0, 1, 0, 0]).unwrap();
        assert!(c.contained && c.is_secant && c.is_trisecant && c.is_tangent && c.is_t_trisecant);
    }

    #[test]
    fn quadric_cone_stays_on_the_quadric() {
        let m = model("quadric-surface", 11);
        let x = m.enumerate_points(B).unwrap();
        for pt in x.points(m.field()).take(10) {
            let cone = cone_of_point(&m, &pt, &x).unwrap();
            assert!(!cone.is_empty());
            assert!(cone.is_subset(&x));
        }
    }

    #[test]
    fn hyperplane_cone_is_the_hyperplane() {
        let h = model("hyperplane-p3", 5);
        let x = h.enumerate_points(B).unwrap();
        assert_eq!(cone_of_point(&h, &[0, 1, 2, 3], &x).unwrap(), x);
    }

    #[test]
    fn isolated_tangent_section_gives_an_empty_cone() {
        let conic = model("conic", 7);
        let x = conic.enumerate_points(B).unwrap();
        assert!(cone_of_point(&conic, &[1, 0, 0], &x).unwrap().is_empty());
        let nodal = model("nodal-cubic", 7);
        let nx = nodal.enumerate_points(B).unwrap();
        assert!(matches!(cone_of_point(&nodal, &[1, 0, 0], &nx), Err(Error::SingularPoint { .. })));
    }

    #[test]
    fn quadric_iteration_is_a_fixpoint() {
        let it = iterate_cone_variety(&model("quadric-surface", 11), 3, B).unwrap();
        assert_eq!(it.fixpoint_at, Some(1));
        assert_eq!(it.sets[0], it.sets[1]);
    }

    #[test]
    fn envelope_examples() {
        assert_eq!(quadric_envelope(&model("quadric-surface", 11), B).unwrap().dim(), 1);
        assert_eq!(quadric_envelope(&model("cubic-surface", 11), B).unwrap().dim(), 0);
        let v = model("veronese-surface", 7);
        let env = quadric_envelope(&v, B).unwrap();
        assert_eq!(env.dim(), 6);
        for x in v.enumerate_points(B).unwrap().points(v.field()) {
            assert!(env.contains(&x));
        }
    }

    #[test]
    fn line_enumeration_counts() {
        let f = PrimeField::new(3).unwrap();
        let count = std::sync::atomic::AtomicUsize::new(0);
        for_each_line(&f, 3, |_, _| {
            count.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        })
        .unwrap();
        // Gaussian binomial [4 choose 2]_3 = 130
        assert_eq!(count.into_inner(), 130);
        assert_eq!(line_count(3, 3), 130);
        assert_eq!(line_count(5, 5), 508_431);
    }

    #[test]
    fn veronese_secants_follow_matrix_rank() {
        let v = model("veronese-surface", 5);
        let (x, sec) = secant_points(&v, B).unwrap();
        let f = v.field();
        for i in 0..sec.universe() {
            let z = sec.point_at(f, i);
            let r = veronese_rank(f, &z).unwrap();
            assert_eq!(sec.contains_index(i), r <= 2);
            assert_eq!(x.contains_index(i), r == 1);
        }
    }
}
