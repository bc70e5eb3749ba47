//! Exact feasibility of `A x = b, x >= 0` by phase-one simplex over the
//! rationals with Bland's rule.

use num_traits::{Signed, Zero};

use crate::rational::Q;

/// Returns a feasible `x` or `None`. `a` is row-major with `b.len()` rows.
pub fn solve_feasible(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let m = b.len();
    assert_eq!(a.len(), m, "row count must match rhs length");
    let k = a.first().map_or(0, Vec::len);
    let width = k + m + 1;
    let rhs = width - 1;

    let mut rows: Vec<Vec<Q>> = Vec::with_capacity(m);
    for (r, (row, bv)) in a.iter().zip(b).enumerate() {
        assert_eq!(row.len(), k, "ragged constraint matrix");
        let flip = bv.is_negative();
        let mut t = vec![Q::zero(); width];
        for (c, v) in row.iter().enumerate() {
            t[c] = if flip { -v } else { v.clone() };
        }
        t[k + r] = Q::from_integer(1.into());
        t[rhs] = if flip { -bv } else { bv.clone() };
        rows.push(t);
    }
    let mut basis: Vec<usize> = (k..k + m).collect();

    // reduced costs of the phase-one objective (sum of artificials)
    let mut z = vec![Q::zero(); width];
    for (c, zc) in z.iter_mut().enumerate() {
        if (k..k + m).contains(&c) {
            continue;
        }
        let s: Q = rows.iter().map(|t| &t[c]).sum();
        *zc = -s;
    }

    loop {
        if z[rhs].is_zero() {
            break;
        }
        let Some(enter) = (0..rhs).find(|&c| z[c].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Q)> = None;
        for (r, t) in rows.iter().enumerate() {
            if !t[enter].is_positive() {
                continue;
            }
            let ratio = &t[rhs] / &t[enter];
            let better = match &leave {
                None => true,
                Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        // phase one is bounded below by zero
        let (pr, _) = leave.expect("phase-one objective is bounded");
        let pivot = rows[pr][enter].clone();
        for v in rows[pr].iter_mut() {
            *v /= &pivot;
        }
        let prow = rows[pr].clone();
        for (r, t) in rows.iter_mut().enumerate() {
            if r == pr || t[enter].is_zero() {
                continue;
            }
            let factor = t[enter].clone();
            for (v, p) in t.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        let factor = z[enter].clone();
        for (v, p) in z.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *v -= &factor * p;
            }
        }
        basis[pr] = enter;
    }

    if !z[rhs].is_zero() {
        return None;
    }
    let mut x = vec![Q::zero(); k];
    for (r, &bv) in basis.iter().enumerate() {
        if bv < k {
            x[bv] = rows[r][rhs].clone();
        }
    }
    Some(x)
}
