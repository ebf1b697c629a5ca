//! Deterministic enumeration of key sequences.

use g2a_core::key_sequence::{is_admissible, validate, KeySequence};
use num_integer::Integer;

/// Calls `visit` on every valid key sequence of exactly `len` entries with
/// 1 ≤ ω_0 ≤ `max_omega0` and `min_entry` ≤ ω_k ≤ `max_entry` for k ≥ 1, in
/// lexicographic order.
pub fn for_each_valid(
    max_omega0: i64,
    len: usize,
    min_entry: i64,
    max_entry: i64,
    visit: &mut impl FnMut(KeySequence),
) {
    let b = Bounds {
        len,
        min_entry,
        max_entry,
        max_omega1: max_entry,
    };
    for w0 in 1..=max_omega0 {
        walk(&mut vec![w0], w0, w0, &b, visit);
    }
}

struct Bounds {
    len: usize,
    min_entry: i64,
    max_entry: i64,
    max_omega1: i64,
}

/// `e_prev` = gcd of all but the last entry, `e` = gcd of the whole prefix.
fn walk(
    prefix: &mut Vec<i64>,
    e_prev: i64,
    e: i64,
    b: &Bounds,
    visit: &mut impl FnMut(KeySequence),
) {
    if prefix.len() == b.len {
        if let Ok(ks) = validate(prefix) {
            visit(ks);
        }
        return;
    }
    let hi = if prefix.len() >= 2 {
        let alpha = e_prev / e;
        b.max_entry.min(alpha * prefix.last().unwrap() - 1)
    } else {
        b.max_omega1
    };
    for w in b.min_entry..=hi {
        prefix.push(w);
        walk(prefix, e, e.gcd(&w), b, visit);
        prefix.pop();
    }
}

/// All primitive algebraic normal-form sequences with ω_0 ≤ `max_omega0`, length
/// ≤ `max_len` and entries ≤ `max_entry` (unbounded when `None`), ordered by
/// (length, ω_0, ω_1, …).
pub fn surfaces(max_omega0: i64, max_len: usize, max_entry: Option<i64>) -> Vec<KeySequence> {
    let mut out = Vec::new();
    for len in 2..=max_len {
        for w0 in 1..=max_omega0 {
            // Normal form forces ω_1 ≤ ω_0; later entries are bounded by α_kω_k.
            let max_entry = max_entry.unwrap_or(i64::MAX);
            let b = Bounds {
                len,
                min_entry: 1,
                max_entry,
                max_omega1: max_entry.min(w0),
            };
            walk(&mut vec![w0], w0, w0, &b, &mut |ks| {
                if is_admissible(&ks) {
                    out.push(ks);
                }
            });
        }
    }
    out
}
