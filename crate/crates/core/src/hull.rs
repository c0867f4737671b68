//! Exact convex hulls of 0/1 point sets.
//!
//! A point configuration is first put in an affine frame: the points are
//! homogenized to `(1, p)` and restricted to a set of columns `B` on which
//! they still have full rank `D = dim + 1`. The facets are then the extreme
//! rays of the dual cone in `R^D`, found by double description. Functionals
//! on `R^{n+1}` are only defined modulo the equalities of the affine hull;
//! their canonical representative is the one supported on `B`.

mod dd;
mod format;
mod lp;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::NatSet;
use crate::embed::{all_vertices, VertexVector};
use crate::error::{Error, Result};
use crate::group::CycleType;
use crate::linalg;
use crate::rational::Rational;

pub use format::FormatError;

/// Hard limits for hull computations. Exceeding one is an error, never a
/// silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HullBudget {
    pub max_points: usize,
    pub max_dim: usize,
    pub max_rays: usize,
}

impl Default for HullBudget {
    fn default() -> Self {
        HullBudget {
            max_points: 400,
            max_dim: 80,
            max_rays: 400_000,
        }
    }
}

/// An affine functional `x ↦ offset + coeffs · x`, stored as
/// `[offset, c_1, …, c_n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Functional(Vec<BigInt>);

impl Functional {
    pub fn new(offset: BigInt, coeffs: Vec<BigInt>) -> Self {
        let mut v = Vec::with_capacity(coeffs.len() + 1);
        v.push(offset);
        v.extend(coeffs);
        Functional(v)
    }

    pub fn from_homogeneous(v: Vec<BigInt>) -> Self {
        assert!(!v.is_empty(), "a functional needs an offset");
        Functional(v)
    }

    pub fn offset(&self) -> &BigInt {
        &self.0[0]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0[1..]
    }

    pub fn homogeneous(&self) -> &[BigInt] {
        &self.0
    }

    pub fn ambient_dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn eval(&self, point: &[i64]) -> BigInt {
        let mut acc = self.0[0].clone();
        for (c, &x) in self.0[1..].iter().zip(point) {
            if x != 0 && !c.is_zero() {
                acc += c * x;
            }
        }
        acc
    }

    /// Value at `point` for the `k`-th dilate: `k·offset + coeffs · point`.
    pub fn eval_dilated(&self, point: &[i64], k: i64) -> BigInt {
        self.eval(point) + &self.0[0] * (k - 1)
    }
}

fn primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && g != BigInt::from(1) {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}

fn integral_primitive(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::from(1), |acc, x| acc.lcm(&x.denom()));
    let mut out: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    primitive(&mut out);
    out
}

/// Points together with their affine frame.
#[derive(Clone, Debug)]
pub struct PointConfiguration {
    points: Vec<VertexVector>,
    ambient: usize,
    /// Homogeneous columns (0 = constant) on which the points have full rank.
    basis_columns: Vec<usize>,
    /// Points whose restrictions to `basis_columns` form a basis.
    seed_rows: Vec<usize>,
    /// Inverse of the seed rows restricted to `basis_columns`.
    seed_inverse: Vec<Vec<Rational>>,
}

impl PointConfiguration {
    pub fn new(points: Vec<VertexVector>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::invalid("a point configuration needs at least one point"));
        };
        let ambient = first.len();
        if points.iter().any(|p| p.len() != ambient) {
            return Err(Error::invalid("points have different lengths"));
        }
        let homogeneous: Vec<Vec<Rational>> = points
            .iter()
            .map(|p| std::iter::once(Rational::one()).chain(p.iter().map(|&x| Rational::from_int(x))).collect())
            .collect();
        let basis_columns = linalg::independent_columns(&homogeneous);
        let restricted: Vec<Vec<Rational>> = homogeneous
            .iter()
            .map(|row| basis_columns.iter().map(|&j| row[j].clone()).collect())
            .collect();
        let seed_rows = linalg::independent_rows(&restricted);
        let seed: Vec<Vec<Rational>> = seed_rows.iter().map(|&i| restricted[i].clone()).collect();
        let seed_inverse = linalg::inverse(&seed).expect("seed rows form a basis");
        Ok(PointConfiguration {
            points,
            ambient,
            basis_columns,
            seed_rows,
            seed_inverse,
        })
    }

    pub fn from_cycle_type(ct: &CycleType) -> Result<Self> {
        Self::new(all_vertices(ct)?)
    }

    pub fn points(&self) -> &[VertexVector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis_columns.len() - 1
    }

    /// Homogeneous coordinate `j` of point `i`.
    fn homogeneous_entry(&self, i: usize, j: usize) -> i64 {
        if j == 0 {
            1
        } else {
            self.points[i][j - 1]
        }
    }

    /// Point `i` restricted to the basis columns.
    fn projected(&self, i: usize) -> Vec<i64> {
        self.basis_columns.iter().map(|&j| self.homogeneous_entry(i, j)).collect()
    }

    /// Solves for the functional supported on the basis columns that takes
    /// the given values on the seed rows.
    fn functional_from_seed_values(&self, values: &[Rational]) -> Vec<Rational> {
        let d = self.basis_columns.len();
        let mut mu = vec![Rational::zero(); self.ambient + 1];
        for (col, &j) in self.basis_columns.iter().enumerate() {
            let mut acc = Rational::zero();
            for (r, v) in values.iter().enumerate().take(d) {
                let m = &self.seed_inverse[col][r];
                if !m.is_zero() && !v.is_zero() {
                    acc = acc + m * v;
                }
            }
            mu[j] = acc;
        }
        mu
    }

    /// Canonical representative of a functional modulo the equalities of the
    /// affine hull: supported on the basis columns, integral, primitive, with
    /// the same values (up to a positive factor) on every point.
    pub fn canonicalize(&self, f: &Functional) -> Functional {
        assert_eq!(f.ambient_dim(), self.ambient, "functional has the wrong length");
        let values: Vec<Rational> = self
            .seed_rows
            .iter()
            .map(|&i| Rational::from_bigint(f.eval(&self.points[i])))
            .collect();
        Functional(integral_primitive(&self.functional_from_seed_values(&values)))
    }

    /// Integral basis of the functionals vanishing on every point: one per
    /// column outside the basis, with a 1 in that column.
    pub fn equalities(&self) -> Vec<Functional> {
        let mut out = Vec::new();
        for j in 0..=self.ambient {
            if self.basis_columns.contains(&j) {
                continue;
            }
            let values: Vec<Rational> = self
                .seed_rows
                .iter()
                .map(|&i| Rational::from_int(-self.homogeneous_entry(i, j)))
                .collect();
            let mut e = self.functional_from_seed_values(&values);
            e[j] = Rational::one();
            let mut v = integral_primitive(&e);
            if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
                v.iter_mut().for_each(|x| *x = -&*x);
            }
            out.push(Functional(v));
        }
        out
    }

    /// Indices of points where `f` vanishes.
    pub fn zero_set(&self, f: &Functional) -> NatSet {
        (0..self.points.len())
            .filter(|&i| f.eval(&self.points[i]).is_zero())
            .map(|i| i as u64)
            .collect()
    }

    pub fn affine_rank_of(&self, subset: &NatSet) -> Option<usize> {
        let pts: Vec<Vec<i64>> = subset.iter().map(|i| self.points[i as usize].to_vec()).collect();
        (!pts.is_empty()).then(|| linalg::affine_rank(&pts))
    }

    /// Whether `f ≥ 0` on all points with a zero set of affine rank `dim - 1`.
    pub fn is_facet_inequality(&self, f: &Functional) -> bool {
        if self.points.iter().any(|p| f.eval(p).is_negative()) {
            return false;
        }
        let zeros = self.zero_set(f);
        self.dim() >= 1 && zeros.len() < self.points.len() && self.affine_rank_of(&zeros) == Some(self.dim() - 1)
    }

    /// True iff the points indexed by `subset` are exactly the points of some
    /// face: some affine functional vanishes on them and is strictly
    /// positive on all other points.
    ///
    /// Decided by an exact LP. By Farkas' lemma such a functional (scaled to
    /// value ≥ 1 off the subset) exists iff no convex combination of the
    /// other points lies in the affine hull of the subset, which is the
    /// feasibility problem solved here.
    pub fn is_face(&self, subset: &NatSet) -> Result<bool> {
        let m = self.points.len();
        if let Some(bad) = subset.iter().find(|&i| i as usize >= m) {
            return Err(Error::invalid(format!("point index {bad} out of range (have {m})")));
        }
        let inside: Vec<usize> = subset.iter().map(|i| i as usize).collect();
        let outside: Vec<usize> = (0..m).filter(|&i| !subset.contains(i as u64)).collect();
        if outside.is_empty() {
            return Ok(true);
        }
        let d = self.basis_columns.len();
        let cols = outside.len() + 2 * inside.len();
        let mut a = vec![vec![Rational::zero(); cols]; d + 1];
        for (c, &i) in outside.iter().enumerate() {
            for (r, x) in self.projected(i).into_iter().enumerate() {
                a[r][c] = Rational::from_int(x);
            }
            a[d][c] = Rational::one();
        }
        for (s, &i) in inside.iter().enumerate() {
            let plus = outside.len() + 2 * s;
            for (r, x) in self.projected(i).into_iter().enumerate() {
                a[r][plus] = Rational::from_int(-x);
                a[r][plus + 1] = Rational::from_int(x);
            }
        }
        let mut b = vec![Rational::zero(); d + 1];
        b[d] = Rational::one();
        Ok(!lp::feasible(a, b))
    }

    pub fn facets(&self, budget: &HullBudget) -> Result<HRepresentation> {
        facet_enumeration_in(self, budget)
    }
}

/// Equalities of the affine hull plus an irredundant list of facet
/// inequalities `offset + c·x ≥ 0`, both in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRepresentation {
    pub ambient_dim: usize,
    pub equalities: Vec<Functional>,
    pub inequalities: Vec<Functional>,
}

impl HRepresentation {
    pub fn dim(&self) -> usize {
        self.ambient_dim - self.equalities.len()
    }

    /// Exhaustive post-check against a point set: every equality vanishes on
    /// every point, every inequality is valid, and each one is tight on a
    /// set of affine rank `dim - 1`.
    pub fn verify(&self, config: &PointConfiguration) -> std::result::Result<(), String> {
        if config.ambient_dim() != self.ambient_dim {
            return Err(format!("ambient dimension {} vs points in R^{}", self.ambient_dim, config.ambient_dim()));
        }
        if config.dim() != self.dim() {
            return Err(format!("equalities give dim {} but the points span dim {}", self.dim(), config.dim()));
        }
        for (i, e) in self.equalities.iter().enumerate() {
            if let Some(p) = config.points().iter().position(|p| !e.eval(p).is_zero()) {
                return Err(format!("equality {i} does not vanish on point {p}"));
            }
        }
        let bad: Option<usize> = self
            .inequalities
            .par_iter()
            .position_first(|f| !config.is_facet_inequality(f));
        if let Some(i) = bad {
            return Err(format!("inequality {i} is not facet-defining"));
        }
        Ok(())
    }
}

/// Progress when a hull computation stops.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HullStats {
    pub constraints_done: usize,
    pub constraints_total: usize,
    pub rays: usize,
    pub peak_rays: usize,
}

pub fn facet_enumeration(points: &[VertexVector], budget: &HullBudget) -> Result<HRepresentation> {
    if points.len() > budget.max_points {
        return Err(Error::limit(
            format!("max points {}", budget.max_points),
            format!("{} points", points.len()),
        ));
    }
    facet_enumeration_in(&PointConfiguration::new(points.to_vec())?, budget)
}

fn facet_enumeration_in(config: &PointConfiguration, budget: &HullBudget) -> Result<HRepresentation> {
    if config.len() > budget.max_points {
        return Err(Error::limit(
            format!("max points {}", budget.max_points),
            format!("{} points", config.len()),
        ));
    }
    if config.dim() > budget.max_dim {
        return Err(Error::limit(format!("max dim {}", budget.max_dim), format!("dim {}", config.dim())));
    }
    let rows: Vec<Vec<i64>> = (0..config.len()).map(|i| config.projected(i)).collect();
    let order: Vec<usize> = config
        .seed_rows
        .iter()
        .copied()
        .chain((0..config.len()).filter(|i| !config.seed_rows.contains(i)))
        .collect();
    let rays = dd::extreme_rays(&rows, &order, &config.seed_inverse, budget.max_rays).map_err(|stats| {
        Error::limit(
            format!("max rays {}", budget.max_rays),
            format!(
                "stopped after {}/{} constraints with {} rays (peak {})",
                stats.constraints_done, stats.constraints_total, stats.rays, stats.peak_rays
            ),
        )
    })?;
    let mut inequalities: Vec<Functional> = rays
        .into_iter()
        .map(|ray| {
            let mut full = vec![BigInt::zero(); config.ambient + 1];
            for (&j, x) in config.basis_columns.iter().zip(ray) {
                full[j] = x;
            }
            Functional(full)
        })
        .collect();
    inequalities.sort();
    let h = HRepresentation {
        ambient_dim: config.ambient,
        equalities: config.equalities(),
        inequalities,
    };
    h.verify(config).map_err(|e| Error::invalid(format!("hull post-check failed: {e}")))?;
    Ok(h)
}

pub fn is_face(points: &[VertexVector], subset: &NatSet) -> Result<bool> {
    PointConfiguration::new(points.to_vec())?.is_face(subset)
}

/// Number of edges, each decided by an LP face test on a pair of points.
pub fn edge_count(points: &[VertexVector], max_pairs: usize) -> Result<u64> {
    let m = points.len();
    let pairs = m * m.saturating_sub(1) / 2;
    if pairs > max_pairs {
        return Err(Error::limit(format!("max pairs {max_pairs}"), format!("{pairs} pairs")));
    }
    let config = PointConfiguration::new(points.to_vec())?;
    let all: Vec<(u64, u64)> = (0..m as u64).flat_map(|i| (i + 1..m as u64).map(move |j| (i, j))).collect();
    let faces: Result<Vec<bool>> = all.par_iter().map(|&(i, j)| config.is_face(&NatSet::from([i, j]))).collect();
    Ok(faces?.into_iter().filter(|&f| f).count() as u64)
}

/// Number of `k ∈ [d-1]` such that `{e, g^k}` is an edge, by LP.
pub fn vertex_degree_by_lp(ct: &CycleType) -> Result<u64> {
    let config = PointConfiguration::from_cycle_type(ct)?;
    let d = config.len() as u64;
    let faces: Result<Vec<bool>> = (1..d)
        .into_par_iter()
        .map(|k| config.is_face(&NatSet::from([0, k])))
        .collect();
    Ok(faces?.into_iter().filter(|&f| f).count() as u64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NeighborlinessReport {
    pub cycle_type: Vec<u64>,
    pub l: usize,
    /// First `I` (1-based) violating the conjecture's hypothesis, if any.
    pub hypothesis_failure: Option<NatSet>,
    pub exhaustive: bool,
    pub tested: u64,
    pub seed: u64,
    pub counterexample: Option<NatSet>,
    /// `"counterexample"`, `"conjecture-consistent"` when the hypothesis
    /// holds, or `"no-counterexample"` when it does not; never a proof.
    pub verdict: String,
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// The first `I ⊆ [t]` (1-based, in mask order) with `|I| ≥ ⌈t/(l+1)⌉` and
/// `d_I ≠ d`, i.e. a witness that the `(l+1)`-neighborliness conjecture
/// does not apply.
pub fn neighborliness_hypothesis_failure(ct: &CycleType, l: usize) -> Result<Option<NatSet>> {
    if l == 0 {
        return Err(Error::invalid("l must be at least 1"));
    }
    let t = ct.t();
    if t > crate::group::MAX_SUBSET_CYCLES {
        return Err(Error::limit(format!("at most {} cycles", crate::group::MAX_SUBSET_CYCLES), format!("t = {t}")));
    }
    let threshold = t.div_ceil(l + 1);
    let lengths = ct.lengths();
    for mask in 1u64..1 << t {
        if (mask.count_ones() as usize) < threshold {
            continue;
        }
        let d_mask = (0..t)
            .filter(|i| mask >> i & 1 == 1)
            .fold(num_bigint::BigUint::from(1u32), |acc, i| acc.lcm(&lengths[i].into()));
        if &d_mask != ct.order() {
            return Ok(Some((0..t).filter(|i| mask >> i & 1 == 1).map(|i| i as u64 + 1).collect()));
        }
    }
    Ok(None)
}

/// Tests whether small vertex sets are faces, for cycle types that satisfy
/// the hypothesis of the `(l+1)`-neighborliness conjecture: `d_I = d` for
/// every `I ⊆ [t]` with `|I| ≥ ⌈t/(l+1)⌉`.
///
/// All subsets of at most `l+1` vertices are tested when there are at most
/// `sample` of them; otherwise `sample` random `(l+1)`-subsets drawn with the
/// given seed.
pub fn neighborliness_probe(ct: &CycleType, l: usize, sample: usize, seed: u64) -> Result<NeighborlinessReport> {
    if let Some(set) = neighborliness_hypothesis_failure(ct, l)? {
        let d_set = set.iter().fold(num_bigint::BigUint::from(1u32), |acc, i| {
            acc.lcm(&ct.lengths()[i as usize - 1].into())
        });
        return Err(Error::invalid(format!(
            "hypothesis fails: d_I = {d_set} ≠ d = {} for I = {set}",
            ct.order()
        )));
    }
    face_probe(ct, l, sample, seed)
}

/// [`neighborliness_probe`] without the hypothesis gate; the report records
/// whether the hypothesis holds.
pub fn face_probe(ct: &CycleType, l: usize, sample: usize, seed: u64) -> Result<NeighborlinessReport> {
    let hypothesis_failure = neighborliness_hypothesis_failure(ct, l)?;
    let config = PointConfiguration::from_cycle_type(ct)?;
    let d = config.len() as u64;
    let size = (l as u64 + 1).min(d);
    let total: u128 = (1..=size).map(|s| binomial(d, s)).sum();
    let exhaustive = total <= sample as u128;
    let subsets: Vec<NatSet> = if exhaustive {
        let mut out = Vec::new();
        for s in 1..=size {
            combinations(d, s, &mut out);
        }
        out
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..sample)
            .map(|_| {
                rand::seq::index::sample(&mut rng, d as usize, size as usize)
                    .into_iter()
                    .map(|i| i as u64)
                    .collect()
            })
            .collect()
    };
    let results: Result<Vec<bool>> = subsets.par_iter().map(|s| config.is_face(s)).collect();
    let results = results?;
    let counterexample = results.iter().position(|&f| !f).map(|i| subsets[i].clone());
    let verdict = match (&counterexample, &hypothesis_failure) {
        (Some(_), _) => "counterexample",
        (None, None) => "conjecture-consistent",
        (None, Some(_)) => "no-counterexample",
    };
    Ok(NeighborlinessReport {
        cycle_type: ct.lengths().to_vec(),
        l,
        hypothesis_failure,
        exhaustive,
        tested: subsets.len() as u64,
        seed,
        verdict: verdict.to_string(),
        counterexample,
    })
}

fn combinations(n: u64, k: u64, out: &mut Vec<NatSet>) {
    fn rec(start: u64, n: u64, k: u64, cur: &mut Vec<u64>, out: &mut Vec<NatSet>) {
        if cur.len() as u64 == k {
            out.push(cur.iter().copied().collect());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), out);
}
