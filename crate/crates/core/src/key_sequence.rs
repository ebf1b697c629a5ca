//! Key sequences: validation, gcd tower, β-expansions, algebraicity, essential
//! data and the normal-form test.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::symbolic::Rational;

/// Largest admissible |ω_k|. Keeps every intermediate product inside `i64`.
pub const MAX_ABS_ENTRY: i64 = 1 << 24;
/// Longest admissible sequence.
pub const MAX_LEN: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KeySequenceError {
    #[error("a key sequence needs at least two entries")]
    TooShort,
    #[error("a key sequence has at most {MAX_LEN} entries")]
    TooLong,
    #[error("entry {0} is outside ±{MAX_ABS_ENTRY}")]
    EntryOutOfRange(usize),
    #[error("ω_0 must be positive")]
    NonPositiveOmega0,
    #[error("gcd of all entries is not 1")]
    GcdNotOne,
    #[error("ω_{next} < α_{k}·ω_{k} fails at k = {k}", next = .0 + 1, k = .0)]
    SmallerPropertyViolated(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseSequenceError {
    #[error("empty sequence")]
    Empty,
    #[error("`{0}` is not an integer")]
    NotAnInteger(String),
}

/// Parse "3,2,5" or "(3,2,5)" (whitespace tolerated, Unicode minus accepted).
pub fn parse_omegas(text: &str) -> Result<Vec<i64>, ParseSequenceError> {
    let t = text.trim();
    let t = t
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(t)
        .trim();
    if t.is_empty() {
        return Err(ParseSequenceError::Empty);
    }
    t.split(',')
        .map(|s| {
            let s = s.trim().replace('\u{2212}', "-");
            s.parse::<i64>()
                .map_err(|_| ParseSequenceError::NotAnInteger(s.to_string()))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GcdTower {
    /// e_0 … e_{n+1}
    pub e: Vec<i64>,
    /// α_1 … α_{n+1}, stored at index k−1.
    pub alpha: Vec<i64>,
}

impl GcdTower {
    /// α_k for 1 ≤ k ≤ n+1.
    pub fn alpha(&self, k: usize) -> i64 {
        self.alpha[k - 1]
    }
}

/// A validated key sequence (ω_0, …, ω_{n+1}).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct KeySequence {
    omegas: Vec<i64>,
}

impl TryFrom<Vec<i64>> for KeySequence {
    type Error = KeySequenceError;
    fn try_from(v: Vec<i64>) -> Result<Self, Self::Error> {
        validate(&v)
    }
}

impl From<KeySequence> for Vec<i64> {
    fn from(k: KeySequence) -> Vec<i64> {
        k.omegas
    }
}

impl fmt::Display for KeySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.omegas.iter().map(|w| w.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for KeySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for KeySequence {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let v = parse_omegas(s).map_err(|e| e.to_string())?;
        validate(&v).map_err(|e| e.to_string())
    }
}

fn raw_tower(omegas: &[i64]) -> GcdTower {
    let mut e = Vec::with_capacity(omegas.len());
    let mut g = 0i64;
    for w in omegas {
        g = g.gcd(w);
        e.push(g);
    }
    let alpha = e
        .windows(2)
        .map(|w| if w[1] == 0 { 1 } else { w[0] / w[1] })
        .collect();
    GcdTower { e, alpha }
}

/// Check the three defining properties in order and report the first failure.
pub fn validate(omegas: &[i64]) -> Result<KeySequence, KeySequenceError> {
    if omegas.len() < 2 {
        return Err(KeySequenceError::TooShort);
    }
    if omegas.len() > MAX_LEN {
        return Err(KeySequenceError::TooLong);
    }
    if let Some(i) = omegas.iter().position(|w| w.abs() > MAX_ABS_ENTRY) {
        return Err(KeySequenceError::EntryOutOfRange(i));
    }
    if omegas[0] < 1 {
        return Err(KeySequenceError::NonPositiveOmega0);
    }
    let t = raw_tower(omegas);
    if *t.e.last().unwrap() != 1 {
        return Err(KeySequenceError::GcdNotOne);
    }
    let n = omegas.len() - 2;
    for k in 1..=n {
        if omegas[k + 1] >= t.alpha(k) * omegas[k] {
            return Err(KeySequenceError::SmallerPropertyViolated(k));
        }
    }
    Ok(KeySequence {
        omegas: omegas.to_vec(),
    })
}

impl KeySequence {
    pub fn omegas(&self) -> &[i64] {
        &self.omegas
    }

    pub fn omega(&self, k: usize) -> i64 {
        self.omegas[k]
    }

    /// The index n, so the sequence is ω_0 … ω_{n+1}.
    pub fn n(&self) -> usize {
        self.omegas.len() - 2
    }

    pub fn last(&self) -> i64 {
        *self.omegas.last().unwrap()
    }

    pub fn tower(&self) -> GcdTower {
        raw_tower(&self.omegas)
    }

    pub fn alpha(&self, k: usize) -> i64 {
        self.tower().alpha(k)
    }
}

pub fn gcd_tower(ks: &KeySequence) -> GcdTower {
    ks.tower()
}

/// Digits β_{k,0} … β_{k,k−1} with α_kω_k = Σ β_{k,j}ω_j.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaRow {
    pub k: usize,
    pub digits: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaExpansion {
    /// Rows k = 1 … n.
    pub rows: Vec<BetaRow>,
    /// The same expansion for k = n+1. It does not enter algebraicity but is
    /// reported for diagnostics.
    pub tail: BetaRow,
}

impl BetaExpansion {
    /// β_{k,j} for 1 ≤ k ≤ n, with β_{k,j} = 0 for j ≥ k.
    pub fn beta(&self, k: usize, j: usize) -> i64 {
        self.rows[k - 1].digits.get(j).copied().unwrap_or(0)
    }

    pub fn row(&self, k: usize) -> &BetaRow {
        if k == self.rows.len() + 1 {
            &self.tail
        } else {
            &self.rows[k - 1]
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("β-expansion of row {0} does not reconstruct α_kω_k")]
pub struct ReconstructionError(pub usize);

fn expand_row(ks: &KeySequence, t: &GcdTower, k: usize) -> Result<BetaRow, ReconstructionError> {
    let w = ks.omegas();
    let target = t.alpha(k) * w[k];
    let mut r = target;
    let mut digits = vec![0i64; k];
    for j in (1..k).rev() {
        let a = t.alpha(j);
        if a == 1 {
            continue;
        }
        // r lies in e_jℤ and ω_j/e_j is a unit modulo α_j.
        let ej = t.e[j];
        let unit = (w[j] / ej).rem_euclid(a);
        let inv = mod_inverse(unit, a).ok_or(ReconstructionError(k))?;
        let b = ((r / ej).rem_euclid(a) * inv).rem_euclid(a);
        digits[j] = b;
        r -= b * w[j];
    }
    if r % w[0] != 0 {
        return Err(ReconstructionError(k));
    }
    digits[0] = r / w[0];
    let back: i64 = digits.iter().zip(w).map(|(b, x)| b * x).sum();
    if back != target {
        return Err(ReconstructionError(k));
    }
    Ok(BetaRow { k, digits })
}

fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let g = num_integer::Integer::extended_gcd(&a, &m);
    (g.gcd == 1).then(|| g.x.rem_euclid(m))
}

/// The modular-digit expansion of every row.
pub fn beta_expansion(ks: &KeySequence) -> Result<BetaExpansion, ReconstructionError> {
    let t = ks.tower();
    let n = ks.n();
    let rows = (1..=n)
        .map(|k| expand_row(ks, &t, k))
        .collect::<Result<_, _>>()?;
    let tail = expand_row(ks, &t, n + 1)?;
    Ok(BetaExpansion { rows, tail })
}

fn expansion(ks: &KeySequence) -> BetaExpansion {
    beta_expansion(ks).expect("β-expansion of a validated key sequence")
}

pub fn is_primitive(ks: &KeySequence) -> bool {
    ks.omegas().iter().all(|&w| w > 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Algebraicity {
    pub algebraic: bool,
    /// First row k with β_{k,0} < 0.
    pub witness: Option<usize>,
}

/// Algebraic iff β_{k,0} ≥ 0 for 1 ≤ k ≤ n.
pub fn is_algebraic(ks: &KeySequence) -> Algebraicity {
    let b = expansion(ks);
    let witness = b.rows.iter().find(|r| r.digits[0] < 0).map(|r| r.k);
    Algebraicity {
        algebraic: witness.is_none(),
        witness,
    }
}

/// Membership of `target` in the monoid generated by `generators`, by exhausting
/// the box 0 ≤ c_i ≤ target/g_i. Reachability is tabulated so each point of the
/// box is visited once. Zero generators contribute nothing.
///
/// Panics if a generator is negative.
pub fn semigroup_member_bruteforce(target: i64, generators: &[i64]) -> bool {
    assert!(
        generators.iter().all(|&g| g >= 0),
        "generators must be non-negative"
    );
    if target < 0 {
        return false;
    }
    let t = target as usize;
    let mut reach = vec![false; t + 1];
    reach[0] = true;
    for &g in generators.iter().filter(|&&g| g > 0) {
        let g = g as usize;
        for v in g..=t {
            if reach[v - g] {
                reach[v] = true;
            }
        }
    }
    reach[t]
}

/// Algebraicity straight from the definition, short-circuiting in k order. Once
/// every earlier row passes, all earlier generators are non-negative.
pub fn is_algebraic_by_search(ks: &KeySequence) -> bool {
    let w = ks.omegas();
    let t = ks.tower();
    (1..=ks.n()).all(|k| semigroup_member_bruteforce(t.alpha(k) * w[k], &w[..k]))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EssentialData {
    /// 0 = i_0 < i_1 < … < i_{l+1} = n+1
    pub indices: Vec<usize>,
    /// χ_1 … χ_{l+1}
    pub chi: Vec<Rational>,
}

impl EssentialData {
    pub fn l(&self) -> usize {
        self.indices.len() - 2
    }

    /// χ_j for 1 ≤ j ≤ l+1.
    pub fn chi(&self, j: usize) -> &Rational {
        &self.chi[j - 1]
    }
}

pub fn essential_data(ks: &KeySequence) -> EssentialData {
    let w = ks.omegas();
    let t = ks.tower();
    let n = ks.n();
    let mut indices = vec![0];
    indices.extend((1..=n).filter(|&k| t.alpha(k) >= 2));
    indices.push(n + 1);
    let mut chi = Vec::new();
    let mut acc = 0i64;
    for &i in &indices[1..] {
        chi.push(Rational::new(w[i] - acc, w[0]));
        if i <= n {
            acc += (t.alpha(i) - 1) * w[i];
        }
    }
    EssentialData { indices, chi }
}

/// The essential subsequence (ω_{i_0}, …, ω_{i_{l+1}}).
pub fn essential_subsequence(ks: &KeySequence) -> KeySequence {
    let e = essential_data(ks);
    let v: Vec<i64> = e.indices.iter().map(|&i| ks.omega(i)).collect();
    validate(&v).expect("essential subsequence of a key sequence is a key sequence")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormalCase {
    N0,
    N1,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NormalCondition {
    /// n = 0 but ω_0 < ω_1.
    N0b,
    /// ω_0 > ω_1.
    N1b,
    /// ω_1/ω_0 is neither 0 nor a unit fraction.
    N1c,
    /// No i ∈ Î_β with ω_i = ω̂_β.
    N1d,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFailure {
    pub condition: NormalCondition,
    pub beta: Option<Rational>,
    pub index: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HatEntry {
    pub beta: Rational,
    pub k_hat: usize,
    pub omega_hat: Rational,
    pub i_hat: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFormReport {
    pub is_normal: bool,
    pub case: NormalCase,
    pub failures: Vec<NormalFailure>,
    pub exponent_set: Vec<Rational>,
    pub hat_table: Vec<HatEntry>,
}

/// The finite set 𝓔_ω, in increasing order. Empty when ω_1 = 0.
pub fn exponent_set(ks: &KeySequence, ess: &EssentialData) -> Vec<Rational> {
    let w0 = ks.omega(0);
    let w1 = ks.omega(1);
    if w1 == 0 {
        return Vec::new();
    }
    let ratio = Rational::new(w1, w0);
    let edge = (ess.chi(ess.l() + 1) + Rational::one()) * Rational::new(w0, w1);
    let zero = Rational::zero();
    let (lo, hi) = if w1 > 0 {
        (
            edge.max(zero.clone()),
            Rational::new(w0, w1) + Rational::one(),
        )
    } else {
        (zero.clone(), edge)
    };
    let mut out = Vec::new();
    // Strict bounds on both sides: k ranges over (lo, hi) ∩ ℤ.
    let mut k: num_bigint::BigInt = lo.floor() + 1;
    while Rational::from(k.clone()) < hi {
        out.push(Rational::from(k.clone()) * &ratio - Rational::one());
        k += 1;
    }
    if w1 > 0 && !out.contains(&zero) {
        out.push(zero);
    }
    out.sort();
    out
}

pub fn hat_entry(ks: &KeySequence, ess: &EssentialData, beta: &Rational) -> HatEntry {
    let l = ess.l();
    let t = ks.tower();
    let k_hat = if beta >= ess.chi(1) {
        0
    } else {
        (1..=l + 1).filter(|&k| beta < ess.chi(k)).max().unwrap()
    };
    let mut omega_hat = beta * Rational::from(ks.omega(0));
    for j in 1..=k_hat {
        let ij = ess.indices[j];
        if ij <= ks.n() {
            omega_hat = omega_hat + Rational::from((t.alpha(ij) - 1) * ks.omega(ij));
        }
    }
    let i_hat = if k_hat <= l {
        (ess.indices[k_hat] + 1..ess.indices[k_hat + 1]).collect()
    } else {
        Vec::new()
    };
    HatEntry {
        beta: beta.clone(),
        k_hat,
        omega_hat,
        i_hat,
    }
}

fn n1d_witnesses(ks: &KeySequence, table: &[HatEntry]) -> Vec<NormalFailure> {
    let mut out = Vec::new();
    for h in table {
        for &i in &h.i_hat {
            if Rational::from(ks.omega(i)) == h.omega_hat {
                out.push(NormalFailure {
                    condition: NormalCondition::N1d,
                    beta: Some(h.beta.clone()),
                    index: Some(i),
                });
            }
        }
    }
    out
}

fn n1c_holds(ks: &KeySequence) -> bool {
    let (w0, w1) = (ks.omega(0), ks.omega(1));
    !(w1 == 0 || (w1 > 0 && w0 % w1 == 0))
}

pub fn normal_form_report(ks: &KeySequence) -> NormalFormReport {
    let ess = essential_data(ks);
    let exps = exponent_set(ks, &ess);
    let hat_table: Vec<HatEntry> = exps.iter().map(|b| hat_entry(ks, &ess, b)).collect();
    let (w0, w1) = (ks.omega(0), ks.omega(1));
    let mut failures = Vec::new();
    let case;
    if ks.n() == 0 {
        if w0 >= w1 {
            case = NormalCase::N0;
        } else {
            case = NormalCase::Neither;
            failures.push(NormalFailure {
                condition: NormalCondition::N0b,
                beta: None,
                index: None,
            });
        }
    } else {
        let plain = |c| NormalFailure {
            condition: c,
            beta: None,
            index: None,
        };
        if w0 <= w1 {
            failures.push(plain(NormalCondition::N1b));
        }
        if !n1c_holds(ks) {
            failures.push(plain(NormalCondition::N1c));
        }
        failures.extend(n1d_witnesses(ks, &hat_table));
        case = if failures.is_empty() {
            NormalCase::N1
        } else {
            NormalCase::Neither
        };
    }
    NormalFormReport {
        is_normal: failures.is_empty(),
        case,
        failures,
        exponent_set: exps,
        hat_table,
    }
}

pub fn is_normal_form(ks: &KeySequence) -> bool {
    let (w0, w1) = (ks.omega(0), ks.omega(1));
    if ks.n() == 0 {
        return w0 >= w1;
    }
    if w0 <= w1 || !n1c_holds(ks) {
        return false;
    }
    !has_n1d_witness(ks)
}

/// Integer version of the N1d search: β = b/ω_0, χ_j = c_j/ω_0 and ω̂_β is an
/// integer, so no rationals are needed.
fn has_n1d_witness(ks: &KeySequence) -> bool {
    let w = ks.omegas();
    let t = ks.tower();
    let n = ks.n();
    if (1..=n).all(|k| t.alpha(k) >= 2) {
        // Every Î_β is empty.
        return false;
    }
    let (w0, w1) = (w[0], w[1]);
    if w1 == 0 {
        return false;
    }
    let mut indices = vec![0];
    indices.extend((1..=n).filter(|&k| t.alpha(k) >= 2));
    indices.push(n + 1);
    let l = indices.len() - 2;
    // c[j − 1] = numerator of χ_j, add[j] = Σ_{m ≤ j} (α_{i_m} − 1)ω_{i_m}
    let mut c = Vec::with_capacity(l + 1);
    let mut add = vec![0i64];
    for &i in &indices[1..] {
        let acc = *add.last().unwrap();
        c.push(w[i] - acc);
        if i <= n {
            add.push(acc + (t.alpha(i) - 1) * w[i]);
        }
    }
    let x = c[l];
    let check = |b: i64| {
        let k_hat = if b >= c[0] {
            0
        } else {
            (1..=l + 1).filter(|&k| b < c[k - 1]).max().unwrap()
        };
        if k_hat > l {
            return false;
        }
        let omega_hat = b + add[k_hat];
        (indices[k_hat] + 1..indices[k_hat + 1]).any(|i| w[i] == omega_hat)
    };
    let mut saw_zero = false;
    let mut k = 1i64;
    loop {
        let kw = k * w1;
        if w1 > 0 && kw >= w0 + w1 {
            break;
        }
        if w1 < 0 && kw <= x + w0 {
            break;
        }
        if kw > x + w0 {
            let b = kw - w0;
            saw_zero |= b == 0;
            if check(b) {
                return true;
            }
        }
        k += 1;
    }
    w1 > 0 && !saw_zero && check(0)
}

/// Re-evaluate a single failure record from scratch. True iff the violation is
/// reproduced.
pub fn recheck_failure(ks: &KeySequence, f: &NormalFailure) -> bool {
    let (w0, w1) = (ks.omega(0), ks.omega(1));
    match f.condition {
        NormalCondition::N0b => ks.n() == 0 && w0 < w1,
        NormalCondition::N1b => ks.n() >= 1 && w0 <= w1,
        NormalCondition::N1c => ks.n() >= 1 && !n1c_holds(ks),
        NormalCondition::N1d => {
            let (Some(beta), Some(i)) = (&f.beta, f.index) else {
                return false;
            };
            let ess = essential_data(ks);
            if !exponent_set(ks, &ess).contains(beta) {
                return false;
            }
            let h = hat_entry(ks, &ess, beta);
            h.i_hat.contains(&i) && Rational::from(ks.omega(i)) == h.omega_hat
        }
    }
}

/// Primitive, algebraic and in normal form: the inputs that define surfaces.
pub fn is_admissible(ks: &KeySequence) -> bool {
    is_primitive(ks) && is_algebraic(ks).algebraic && is_normal_form(ks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ks(v: &[i64]) -> KeySequence {
        validate(v).unwrap()
    }

    #[test]
    fn fast_normal_form_matches_report() {
        for w0 in 1..=10 {
            for w1 in -10..=10 {
                for w2 in -20..=20 {
                    for w3 in -20..=20 {
                        for v in [&[w0, w1][..], &[w0, w1, w2], &[w0, w1, w2, w3]] {
                            if let Ok(k) = validate(v) {
                                assert_eq!(
                                    is_normal_form(&k),
                                    normal_form_report(&k).is_normal,
                                    "{k}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn validation_examples() {
        assert!(validate(&[3, 2, 5]).is_ok());
        assert_eq!(
            validate(&[2, 3, 7]),
            Err(KeySequenceError::SmallerPropertyViolated(1))
        );
        assert!(validate(&[4, 6, 11, 1]).is_ok());
        assert_eq!(validate(&[3]), Err(KeySequenceError::TooShort));
        assert_eq!(validate(&[0, 1]), Err(KeySequenceError::NonPositiveOmega0));
        assert_eq!(validate(&[4, 2]), Err(KeySequenceError::GcdNotOne));
        assert_eq!(
            validate(&[1, 1 << 25]),
            Err(KeySequenceError::EntryOutOfRange(1))
        );
    }

    #[test]
    fn towers() {
        let t = gcd_tower(&ks(&[3, 2, 5]));
        assert_eq!((t.e, t.alpha), (vec![3, 1, 1], vec![3, 1]));
        let t = gcd_tower(&ks(&[7, 1]));
        assert_eq!((t.e, t.alpha), (vec![7, 1], vec![7]));
        let t = gcd_tower(&ks(&[4, 6, 11, 1]));
        assert_eq!((t.e, t.alpha), (vec![4, 2, 1, 1], vec![2, 2, 1]));
    }

    #[test]
    fn beta_rows() {
        let b = beta_expansion(&ks(&[3, 2, 5])).unwrap();
        assert_eq!(b.rows[0].digits, vec![2]);
        let b = beta_expansion(&ks(&[4, 6, 11, 1])).unwrap();
        assert_eq!(b.rows[0].digits, vec![3]);
        assert_eq!(b.rows[1].digits, vec![4, 1]);
        let b = beta_expansion(&ks(&[8, 6, 5])).unwrap();
        assert_eq!(b.rows[0].digits, vec![3]);
        assert_eq!(b.tail.digits, vec![-1, 3]);
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive(&ks(&[3, 2, 5])));
        assert!(is_primitive(&ks(&[1, 1])));
        assert!(!is_primitive(&ks(&[3, -2])));
        assert!(!is_primitive(&ks(&[3, 2, -1])));
    }

    #[test]
    fn algebraicity() {
        assert!(is_algebraic(&ks(&[3, 2, 5])).algebraic);
        assert!(is_algebraic(&ks(&[4, 6, 11, 1])).algebraic);
        // Only rows 1..n enter the definition; the negative digit of (8,6,5)
        // sits in the tail row.
        assert!(is_algebraic(&ks(&[8, 6, 5])).algebraic);
        let a = is_algebraic(&ks(&[8, 6, 5, 1]));
        assert_eq!(
            a,
            Algebraicity {
                algebraic: false,
                witness: Some(2)
            }
        );
        assert!(!is_algebraic_by_search(&ks(&[8, 6, 5, 1])));
    }

    #[test]
    fn semigroup_examples() {
        assert!(semigroup_member_bruteforce(6, &[3]));
        assert!(semigroup_member_bruteforce(5, &[3, 2]));
        assert!(!semigroup_member_bruteforce(1, &[3, 2]));
        assert!(semigroup_member_bruteforce(0, &[]));
        assert!(!semigroup_member_bruteforce(-1, &[1]));
        assert!(semigroup_member_bruteforce(4, &[0, 2]));
    }

    #[test]
    fn essential_examples() {
        let e = essential_data(&ks(&[3, 2, 5]));
        assert_eq!(e.indices, vec![0, 1, 2]);
        assert_eq!(e.chi, vec![q(2, 3), q(1, 3)]);
        let e = essential_data(&ks(&[3, 2, 4]));
        assert_eq!(e.chi, vec![q(2, 3), q(0, 1)]);
        let e = essential_data(&ks(&[7, 3]));
        assert_eq!((e.indices, e.chi), (vec![0, 1], vec![q(3, 7)]));
        let e = essential_data(&ks(&[4, 6, 11, 1]));
        assert_eq!(e.indices, vec![0, 1, 2, 3]);
    }

    #[test]
    fn normal_form_examples() {
        let r = normal_form_report(&ks(&[3, 2, 5]));
        assert!(r.is_normal);
        assert_eq!(r.case, NormalCase::N1);
        assert_eq!(r.exponent_set, vec![q(0, 1)]);
        let r = normal_form_report(&ks(&[3, 2, 4]));
        assert!(r.is_normal);
        assert_eq!(r.exponent_set, vec![q(0, 1), q(1, 3)]);
        let r = normal_form_report(&ks(&[2, 1]));
        assert_eq!((r.is_normal, r.case), (true, NormalCase::N0));
        let r = normal_form_report(&ks(&[4, 6, 11, 1]));
        assert!(!r.is_normal);
        assert!(r
            .failures
            .iter()
            .any(|f| f.condition == NormalCondition::N1b));
        let r = normal_form_report(&ks(&[1, 2]));
        assert_eq!(r.failures[0].condition, NormalCondition::N0b);
    }

    #[test]
    fn n1d_witness_rechecks() {
        let k = ks(&[3, 2, 5, 1]);
        let r = normal_form_report(&k);
        assert!(!r.is_normal);
        let d: Vec<_> = r
            .failures
            .iter()
            .filter(|f| f.condition == NormalCondition::N1d)
            .collect();
        assert!(!d.is_empty());
        for f in &r.failures {
            assert!(recheck_failure(&k, f));
        }
    }

    #[test]
    fn unit_fraction_ratio_fails_n1c() {
        let r = normal_form_report(&ks(&[4, 2, 3]));
        assert!(r
            .failures
            .iter()
            .any(|f| f.condition == NormalCondition::N1c));
    }

    #[test]
    fn parse_text() {
        assert_eq!(parse_omegas("3,2,5").unwrap(), vec![3, 2, 5]);
        assert_eq!(parse_omegas(" 3, \u{2212}2 ").unwrap(), vec![3, -2]);
        assert!(parse_omegas("3,,2").is_err());
        assert!(parse_omegas("").is_err());
        assert_eq!(
            "3,2,5".parse::<KeySequence>().unwrap().to_string(),
            "(3,2,5)"
        );
    }
}
