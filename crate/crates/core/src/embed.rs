//! Vertices of `P(G)` as 0/1 vectors.
//!
//! The permutation matrix of `g^k` is block diagonal with one block per
//! orbit; keeping only the first row of each block gives a vector in
//! `R^n` (`n = Σ ℓ_i`) with a single 1 per block, at position `k mod ℓ_i`.

use std::ops::Deref;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::facets3::AbcSpec;
use crate::group::{CycleType, GroupIndex};
use crate::linalg;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct VertexVector(Vec<i64>);

impl VertexVector {
    pub fn new(coords: Vec<i64>) -> Self {
        VertexVector(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }
}

impl Deref for VertexVector {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

pub fn vertex_vector(ct: &CycleType, k: GroupIndex) -> VertexVector {
    let mut coords = vec![0i64; ct.n_points() as usize];
    let mut offset = 0usize;
    for &l in ct.lengths() {
        coords[offset + (k.k() % l) as usize] = 1;
        offset += l as usize;
    }
    VertexVector(coords)
}

/// All `d` vertices in exponent order.
pub fn all_vertices(ct: &CycleType) -> Result<Vec<VertexVector>> {
    let d = ct.order_enumerable()?;
    Ok((0..d).map(|k| vertex_vector(ct, ct.index(k).expect("k < d"))).collect())
}

/// Dimension of the affine hull of the given points.
pub fn affine_rank(points: &[VertexVector]) -> usize {
    let rows: Vec<Vec<i64>> = points.iter().map(|p| p.0.clone()).collect();
    linalg::affine_rank(&rows)
}

/// Rational combination of group elements whose coefficients sum to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineCombination {
    terms: Vec<(GroupIndex, Rational)>,
}

impl AffineCombination {
    pub fn new(terms: Vec<(GroupIndex, Rational)>) -> Result<Self> {
        let total = terms.iter().fold(Rational::zero(), |acc, (_, c)| acc + c);
        if total != Rational::one() {
            return Err(Error::invalid(format!("coefficients sum to {total}, not 1")));
        }
        Ok(AffineCombination { terms })
    }

    pub fn terms(&self) -> &[(GroupIndex, Rational)] {
        &self.terms
    }

    /// The point `Σ c_k · π(g^k)`.
    pub fn evaluate(&self, ct: &CycleType) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); ct.n_points() as usize];
        for (k, c) in &self.terms {
            for (x, &v) in out.iter_mut().zip(vertex_vector(ct, *k).iter()) {
                if v != 0 {
                    *x = &*x + c;
                }
            }
        }
        out
    }
}

/// `abc` times the barycenter coefficient of `g^k` in the combination that
/// uses only exponents divisible by `a`, `b` or `c`; 0 for all others.
pub fn barycenter_coefficient(spec: &AbcSpec, k: u64) -> i64 {
    let (a, b, c) = (spec.a() as i64, spec.b() as i64, spec.c() as i64);
    let k = k as i64;
    match (k % a == 0, k % b == 0, k % c == 0) {
        (true, false, false) => a,
        (false, true, false) => b,
        (false, false, true) => c,
        (true, true, false) => a + b - a * b,
        (true, false, true) => a + c - a * c,
        (false, true, true) => b + c - b * c,
        (true, true, true) => a * b * c - a * b - a * c - b * c + a + b + c,
        (false, false, false) => 0,
    }
}

/// Checks that the vertex barycenter of `P(a,b,c)` is the affine combination
/// of the vertices `g^k` with `a | k`, `b | k` or `c | k`, using the
/// tabulated coefficients.
///
/// `m` must satisfy `m ≡ 1 (mod ab)` and `m ≡ 0 (mod c)`: `g^m` is then the
/// only vertex of the combination off the facet `x_1 ≥ 0`, which is also
/// checked.
pub fn verify_barycenter_combination(a: u64, b: u64, c: u64, m: u64) -> Result<bool> {
    let spec = AbcSpec::new(a, b, c)?;
    let ct = spec.cycle_type();
    let d = spec.vertex_count();
    if m >= d || m % (a * b) != 1 || !m.is_multiple_of(c) {
        return Err(Error::invalid(format!(
            "m = {m} must satisfy m < {d}, m ≡ 1 (mod {}), m ≡ 0 (mod {c})",
            a * b
        )));
    }
    let abc = Rational::from_int(d as i64);
    let terms: Vec<(GroupIndex, Rational)> = (0..d)
        .filter_map(|k| {
            let coef = barycenter_coefficient(&spec, k);
            (coef != 0).then(|| (ct.index(k).expect("k < d"), Rational::from_int(coef) / &abc))
        })
        .collect();

    let integer_sum: i64 = (0..d).map(|k| barycenter_coefficient(&spec, k)).sum();
    if integer_sum.to_u64() != Some(d) {
        return Ok(false);
    }
    let Ok(combination) = AffineCombination::new(terms) else {
        return Ok(false);
    };

    let mut barycenter = vec![Rational::zero(); ct.n_points() as usize];
    for v in all_vertices(&ct)? {
        for (x, &y) in barycenter.iter_mut().zip(v.iter()) {
            if y != 0 {
                *x = &*x + &Rational::one();
            }
        }
    }
    let barycenter: Vec<Rational> = barycenter.into_iter().map(|x| x / &abc).collect();
    if combination.evaluate(&ct) != barycenter {
        return Ok(false);
    }

    let x_index = m % (a * b);
    let off_face = combination
        .terms()
        .iter()
        .filter(|(k, _)| k.k() % (a * b) == x_index)
        .all(|(k, _)| k.k() == m);
    Ok(off_face)
}
