//! Double description for the cone `{x : A x ≥ 0}` with `A` of full column
//! rank, started from a simplicial cone on `D` independent rows.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::{integral_primitive, primitive, HullStats};
use crate::rational::Rational;

struct Ray {
    coords: Vec<BigInt>,
    zeros: FixedBitSet,
}

fn dot(row: &[i64], x: &[BigInt]) -> BigInt {
    let mut acc = BigInt::zero();
    for (&a, b) in row.iter().zip(x) {
        match a {
            0 => {}
            1 => acc += b,
            _ => acc += b * a,
        }
    }
    acc
}

/// Extreme rays of the cone cut out by `rows`, each with at least one tight
/// row. `order` lists all row indices, starting with the seed rows whose
/// inverse is `seed_inverse`.
pub(super) fn extreme_rays(
    rows: &[Vec<i64>],
    order: &[usize],
    seed_inverse: &[Vec<Rational>],
    max_rays: usize,
) -> Result<Vec<Vec<BigInt>>, HullStats> {
    let d = seed_inverse.len();
    let m = rows.len();
    let mut stats = HullStats {
        constraints_total: m,
        ..HullStats::default()
    };
    if d <= 1 {
        return Ok(Vec::new());
    }
    let seed = &order[..d];
    let mut rays: Vec<Ray> = (0..d)
        .map(|j| {
            let column: Vec<Rational> = seed_inverse.iter().map(|row| row[j].clone()).collect();
            let mut zeros = FixedBitSet::with_capacity(m);
            for (i, &r) in seed.iter().enumerate() {
                if i != j {
                    zeros.insert(r);
                }
            }
            Ray {
                coords: integral_primitive(&column),
                zeros,
            }
        })
        .collect();
    stats.constraints_done = d;
    stats.rays = rays.len();
    stats.peak_rays = rays.len();

    for &i in &order[d..] {
        let row = &rows[i];
        let values: Vec<BigInt> = rays.par_iter().map(|r| dot(row, &r.coords)).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_negative()).collect();
        if neg.is_empty() {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.zeros.insert(i);
                }
            }
            stats.constraints_done += 1;
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_positive()).collect();
        let rays_ref = &rays;
        let values_ref = &values;
        let neg_ref = &neg;
        let created: Vec<Ray> = pos
            .par_iter()
            .flat_map_iter(|&a| {
                neg_ref.iter().filter_map(move |&b| {
                    let mut common = rays_ref[a].zeros.clone();
                    common.intersect_with(&rays_ref[b].zeros);
                    if common.count_ones(..) + 2 < d {
                        return None;
                    }
                    let blocked = rays_ref
                        .iter()
                        .enumerate()
                        .any(|(k, r)| k != a && k != b && common.is_subset(&r.zeros));
                    if blocked {
                        return None;
                    }
                    let va = &values_ref[a];
                    let vb = -&values_ref[b];
                    let mut coords: Vec<BigInt> = rays_ref[a]
                        .coords
                        .iter()
                        .zip(&rays_ref[b].coords)
                        .map(|(x, y)| x * &vb + y * va)
                        .collect();
                    primitive(&mut coords);
                    common.insert(i);
                    Some(Ray { coords, zeros: common })
                })
            })
            .collect();
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() - neg.len() + created.len());
        for (mut r, v) in rays.into_iter().zip(values) {
            if v.is_negative() {
                continue;
            }
            if v.is_zero() {
                r.zeros.insert(i);
            }
            next.push(r);
        }
        next.extend(created);
        rays = next;
        stats.constraints_done += 1;
        stats.rays = rays.len();
        stats.peak_rays = stats.peak_rays.max(rays.len());
        if rays.len() > max_rays {
            return Err(stats);
        }
    }
    Ok(rays.into_iter().map(|r| r.coords).collect())
}
