#![allow(dead_code)]

use g2a_core::key_sequence::{is_admissible, validate, KeySequence};
use num_integer::Integer;

/// Primitive algebraic normal-form sequences of exactly `len` entries with
/// ω_0 ≤ `max_w0`. Normal form gives ω_1 ≤ ω_0 and the key sequence property
/// bounds the rest.
pub fn small_surfaces(max_w0: i64, len: usize) -> Vec<KeySequence> {
    let mut out = Vec::new();
    for w0 in 1..=max_w0 {
        grow(&mut vec![w0], len, &mut out);
    }
    out
}

fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0, |g, w| g.gcd(w))
}

fn grow(v: &mut Vec<i64>, len: usize, out: &mut Vec<KeySequence>) {
    if v.len() == len {
        if let Ok(ks) = validate(v) {
            if is_admissible(&ks) {
                out.push(ks);
            }
        }
        return;
    }
    let k = v.len() - 1;
    let hi = if k == 0 {
        v[0]
    } else {
        let alpha = gcd_all(&v[..k]) / gcd_all(v);
        alpha * v[k] - 1
    };
    for w in 1..=hi {
        v.push(w);
        grow(v, len, out);
        v.pop();
    }
}
