use std::collections::VecDeque;

use super::GridFunction;
use crate::error::{Error, Result};

/// Discrete rearrangement on the jump space.
///
/// The origin samples `a = u(0⁻)` and `b = u(0⁺) = τa` stay in place. The
/// remaining samples are sorted by level:
///
/// - above `b`: one symmetric bump on the positive side, next to the origin;
/// - in `(a, b]`: a decreasing run right after the bump;
/// - at most `a`: dealt alternately to an increasing tail on the negative
///   side and a decreasing tail at the far right, starting on whichever
///   side gives the smaller kinetic energy.
///
/// Zero outer samples are kept as outer samples. Ties keep their original
/// order. The result is increasing on the negative half-line and has a single
/// maximum at some `x ≥ 0`; no sample moves across weights, so mass and all
/// `Lᵖ` norms are preserved exactly when the outer samples are zero.
pub fn rearrange(u: &GridFunction) -> Result<GridFunction> {
    u.validate()?;
    if let Some((index, &value)) = u.left.iter().chain(&u.right).enumerate().find(|(_, v)| **v < 0.0) {
        return Err(Error::NegativeInput { index, value });
    }
    let n = u.cells();
    let a = u.left[n];
    let b = u.right[0];
    let pinned = u.left[0] == 0.0 && u.right[n] == 0.0;
    let (lo, hi) = if pinned { (1, n - 1) } else { (0, n) };
    // movable slots: left[lo..n], right[1..=hi]
    let left_slots = n - lo;
    let right_slots = hi;

    let mut levels: Vec<f64> = u.left[lo..n].iter().chain(&u.right[1..=hi]).copied().collect();
    levels.sort_by(|x, y| y.total_cmp(x));

    let above: Vec<f64> = levels.iter().copied().filter(|&v| v > b).collect();
    let middle: Vec<f64> = levels.iter().copied().filter(|&v| v > a && v <= b).collect();
    let below: Vec<f64> = levels.iter().copied().filter(|&v| v <= a).collect();
    let needed = above.len() + middle.len();
    if needed > right_slots {
        return Err(Error::InsufficientRoom {
            needed,
            available: right_slots,
        });
    }

    let mut bump = VecDeque::with_capacity(above.len());
    for (k, &v) in above.iter().enumerate() {
        if k % 2 == 1 {
            bump.push_front(v);
        } else {
            bump.push_back(v);
        }
    }
    let head: Vec<f64> = bump.into_iter().chain(middle).collect();
    let mut best: Option<(f64, GridFunction)> = None;
    for parity in 0..2 {
        let mut right_seq = head.clone();
        let mut left_seq: Vec<f64> = Vec::with_capacity(left_slots);
        for (k, &v) in below.iter().enumerate() {
            let left_open = left_seq.len() < left_slots;
            let right_open = right_seq.len() < right_slots;
            if left_open && (k % 2 == parity || !right_open) {
                left_seq.push(v);
            } else {
                right_seq.push(v);
            }
        }
        let mut out = u.clone();
        for (k, v) in left_seq.into_iter().enumerate() {
            out.left[n - 1 - k] = v;
        }
        for (k, v) in right_seq.into_iter().enumerate() {
            out.right[1 + k] = v;
        }
        let kin = out.kinetic();
        if best.as_ref().map_or(true, |(b, _)| kin < *b) {
            best = Some((kin, out));
        }
    }
    Ok(best.map(|(_, g)| g).unwrap_or_else(|| u.clone()))
}
