//! Phase-one simplex over exact rationals with Bland's rule.

use crate::rational::Rational;

/// Whether `{x ≥ 0 : a x = b}` is nonempty.
pub(super) fn feasible(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> bool {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    for (row, rhs) in a.iter_mut().zip(b.iter_mut()) {
        if rhs.signum() < 0 {
            row.iter_mut().for_each(|x| *x = -&*x);
            *rhs = -&*rhs;
        }
    }
    // Artificial variable `n + r` starts basic in row `r`. Artificials never
    // re-enter once they leave, so their columns are not stored.
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Reduced costs of the phase-one objective (sum of artificials).
    let mut cost: Vec<Rational> = (0..n)
        .map(|j| a.iter().fold(Rational::zero(), |acc, row| acc - &row[j]))
        .collect();
    let mut value = b.iter().fold(Rational::zero(), |acc, x| acc + x);

    loop {
        if value.is_zero() {
            return true;
        }
        let Some(enter) = cost.iter().position(|c| c.signum() < 0) else {
            return false;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for r in 0..m {
            if a[r][enter].signum() <= 0 {
                continue;
            }
            let ratio = &b[r] / &a[r][enter];
            let better = match &leave {
                None => true,
                Some((best, q)) => ratio < *q || (ratio == *q && basis[r] < basis[*best]),
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        let Some((r, _)) = leave else {
            // Unbounded direction for a bounded-below objective cannot occur.
            unreachable!("phase-one objective is bounded");
        };
        let inv = a[r][enter].recip();
        for x in a[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        b[r] = &b[r] * &inv;
        let pivot_row = a[r].clone();
        let pivot_rhs = b[r].clone();
        for (k, row) in a.iter_mut().enumerate() {
            if k == r || row[enter].is_zero() {
                continue;
            }
            let f = row[enter].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
            b[k] = &b[k] - &(&f * &pivot_rhs);
        }
        let f = cost[enter].clone();
        for (x, p) in cost.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *x = &*x - &(&f * p);
            }
        }
        value = &value + &(&f * &pivot_rhs);
        basis[r] = enter;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> Rational {
        Rational::from_int(x)
    }

    #[test]
    fn small_systems() {
        // x + y = 1, x - y = 0
        assert!(feasible(vec![vec![q(1), q(1)], vec![q(1), q(-1)]], vec![q(1), q(0)]));
        // x + y = -1 has no nonnegative solution
        assert!(!feasible(vec![vec![q(1), q(1)]], vec![q(-1)]));
        // x - y = 2, x + y = 1 forces y < 0
        assert!(!feasible(vec![vec![q(1), q(-1)], vec![q(1), q(1)]], vec![q(2), q(1)]));
        // redundant rows
        assert!(feasible(
            vec![vec![q(1), q(2), q(0)], vec![q(2), q(4), q(0)], vec![q(0), q(0), q(1)]],
            vec![q(3), q(6), q(0)]
        ));
    }
}
