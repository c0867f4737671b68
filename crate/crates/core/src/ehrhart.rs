//! Ehrhart series of one- and two-orbit polytopes, with a lattice-point
//! counter as oracle.
//!
//! The series is `Σ_k L(k) t^k = h*(t) / (1 − t)^D` with `D = dim + 1`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::CycleType;
use crate::hull::{HullBudget, PointConfiguration};

/// Largest `n = Σ ℓ_i` accepted by [`count_lattice_points_oracle`].
pub const ORACLE_MAX_POINTS: u64 = 12;
/// Largest dilation factor accepted by [`count_lattice_points_oracle`].
pub const ORACLE_MAX_K: u64 = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EhrhartSeries {
    #[serde(with = "crate::serde_num::int_vec")]
    pub numerator: Vec<BigInt>,
    pub denominator_exponent: u64,
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn convolve(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `h*` of `Δ_a × Δ_b`: coefficients `C(a,i)·C(b,i)`.
pub fn hstar_product_simplices(a: u64, b: u64) -> EhrhartSeries {
    EhrhartSeries {
        numerator: (0..=a.min(b)).map(|i| binomial(a, i) * binomial(b, i)).collect(),
        denominator_exponent: a + b + 1,
    }
}

/// Series of the two-orbit polytope: the `q`-fold join of
/// `Δ_{ℓ_1/q − 1} × Δ_{ℓ_2/q − 1}` with `q = gcd(ℓ_1, ℓ_2)`; numerators of
/// lattice joins multiply.
pub fn ehrhart_two_orbit(ct: &CycleType) -> Result<EhrhartSeries> {
    let &[l1, l2] = ct.lengths() else {
        return Err(Error::invalid(format!("{ct} has {} nontrivial cycles, need 2", ct.t())));
    };
    let q = l1.gcd(&l2);
    let factor = hstar_product_simplices(l1 / q - 1, l2 / q - 1);
    let mut numerator = vec![BigInt::one()];
    for _ in 0..q {
        numerator = convolve(&numerator, &factor.numerator);
    }
    Ok(EhrhartSeries {
        numerator,
        denominator_exponent: l1 + l2 - q,
    })
}

/// `L(0), …, L(k_max)` from `L(k) = Σ_i h_i · C(k + D − 1 − i, D − 1)`.
pub fn ehrhart_values(series: &EhrhartSeries, k_max: u64) -> Vec<BigInt> {
    let d = series.denominator_exponent;
    (0..=k_max)
        .map(|k| {
            series
                .numerator
                .iter()
                .enumerate()
                .filter(|(i, _)| k + d > *i as u64)
                .map(|(i, h)| h * binomial(k + d - 1 - i as u64, d - 1))
                .sum()
        })
        .collect()
}

impl EhrhartSeries {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

impl fmt::Display for EhrhartSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.numerator.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coeff = if c.is_one() && i > 0 { String::new() } else { c.to_string() };
            terms.push(match i {
                0 => coeff,
                1 => format!("{coeff}t"),
                _ => format!("{coeff}t^{i}"),
            });
        }
        let numerator = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        if terms.len() > 1 {
            write!(f, "({numerator})")?;
        } else {
            write!(f, "{numerator}")?;
        }
        write!(f, " / (1-t)^{}", self.denominator_exponent)
    }
}

/// Lattice points of the `k`-th dilate, counted by checking every point with
/// block sums `k` against the exact H-representation.
pub fn count_lattice_points_oracle(ct: &CycleType, k: u64) -> Result<u64> {
    if ct.n_points() > ORACLE_MAX_POINTS || k > ORACLE_MAX_K {
        return Err(Error::limit(
            format!("n ≤ {ORACLE_MAX_POINTS}, k ≤ {ORACLE_MAX_K}"),
            format!("n = {}, k = {k}", ct.n_points()),
        ));
    }
    if k == 0 {
        return Ok(1);
    }
    let config = PointConfiguration::from_cycle_type(ct)?;
    let h = config.facets(&HullBudget::default())?;
    let k = k as i64;
    let per_block: Vec<Vec<Vec<i64>>> = ct.lengths().iter().map(|&l| compositions(k, l as usize)).collect();
    let (first, rest) = per_block.split_first().expect("at least one block");
    let count: u64 = first
        .par_iter()
        .map(|head| {
            let mut point = head.clone();
            let mut found = 0u64;
            count_rec(rest, &mut point, &mut |x| {
                let inside = h.equalities.iter().all(|e| e.eval_dilated(x, k).is_zero())
                    && h.inequalities.iter().all(|f| !f.eval_dilated(x, k).is_negative());
                found += inside as u64;
            });
            found
        })
        .sum();
    Ok(count)
}

fn count_rec(blocks: &[Vec<Vec<i64>>], point: &mut Vec<i64>, visit: &mut impl FnMut(&[i64])) {
    let Some((block, rest)) = blocks.split_first() else {
        visit(point);
        return;
    };
    for part in block {
        let len = point.len();
        point.extend_from_slice(part);
        count_rec(rest, point, visit);
        point.truncate(len);
    }
}

/// All vectors of `parts` nonnegative integers summing to `total`.
fn compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut tail in compositions(total - first, parts - 1) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}
