//! Per-surface invariants: k_X̄, m_ω, the ω̄ family, defining equations,
//! θ-equivalence and automorphism groups.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::key_sequence::{
    beta_expansion, essential_data, is_algebraic, is_normal_form, is_primitive, KeySequence,
};
use crate::symbolic::{Polynomial, Rational, VarSet};

fn require_primitive(ks: &KeySequence) -> Result<()> {
    if is_primitive(ks) {
        Ok(())
    } else {
        Err(Error::NonPrimitive)
    }
}

fn require_normal(ks: &KeySequence) -> Result<()> {
    require_primitive(ks)?;
    if is_normal_form(ks) {
        Ok(())
    } else {
        Err(Error::NotNormalForm)
    }
}

pub(crate) fn require_surface(ks: &KeySequence) -> Result<()> {
    require_primitive(ks)?;
    if !is_algebraic(ks).algebraic {
        return Err(Error::NotAlgebraic);
    }
    require_normal(ks)
}

/// k_X̄ = −(ω_0 + ω_{n+1} + 1 − Σ_{k=1}^{n} (α_k − 1)ω_k).
pub fn k_bar_x(ks: &KeySequence) -> i64 {
    let t = ks.tower();
    let s: i64 = (1..=ks.n()).map(|k| (t.alpha(k) - 1) * ks.omega(k)).sum();
    -(ks.omega(0) + ks.last() + 1 - s)
}

/// m_ω = ⌊−(k_X̄ + ω_1 + 1)/ω_1⌋.
pub fn m_omega(ks: &KeySequence) -> Result<i64> {
    require_primitive(ks)?;
    let w1 = ks.omega(1);
    Ok(Integer::div_floor(&(-(k_bar_x(ks) + w1 + 1)), &w1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantBundle {
    pub k_bar_x: i64,
    pub m_omega: i64,
    /// ω̄_0 … ω̄_n
    pub bar_omegas: Vec<i64>,
    /// ω̄*_2 … ω̄*_n
    pub bar_omega_star_ks: Vec<i64>,
    pub bar_omega_star: Option<i64>,
    pub bar_omega_prime: Option<i64>,
}

pub fn invariant_bundle(ks: &KeySequence) -> Result<InvariantBundle> {
    require_normal(ks)?;
    let n = ks.n();
    let t = ks.tower();
    let a_last = t.alpha(n + 1);
    let bar: Vec<i64> = (0..=n).map(|k| ks.omega(k) / a_last).collect();
    if (0..=n).any(|k| ks.omega(k) % a_last != 0) {
        return Err(Error::Internal("ω_k not divisible by α_{n+1}".into()));
    }
    let star: Vec<i64> = (2..=n)
        .map(|k| {
            let mid: i64 = (2..k).map(|j| (t.alpha(j) - 1) * bar[j]).sum();
            t.alpha(1) * bar[1] + mid - bar[k]
        })
        .collect();
    let gcd_all = |v: &[i64]| v.iter().fold(0i64, |g, x| g.gcd(x));
    Ok(InvariantBundle {
        k_bar_x: k_bar_x(ks),
        m_omega: m_omega(ks)?,
        bar_omega_star: (n >= 2).then(|| gcd_all(&star)),
        bar_omega_prime: (n >= 1).then(|| gcd_all(&bar[1..])),
        bar_omega_star_ks: star,
        bar_omegas: bar,
    })
}

/// A surface: an admissible key sequence together with nonzero rational θ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    ks: KeySequence,
    theta: Vec<Rational>,
}

impl SurfaceModel {
    pub fn new(ks: KeySequence, theta: Vec<Rational>) -> Result<Self> {
        require_surface(&ks)?;
        if theta.len() != ks.n() {
            return Err(Error::LengthMismatch {
                expected: ks.n(),
                got: theta.len(),
            });
        }
        if theta.iter().any(Rational::is_zero) {
            return Err(Error::ZeroTheta);
        }
        Ok(SurfaceModel { ks, theta })
    }

    pub fn ks(&self) -> &KeySequence {
        &self.ks
    }

    pub fn theta(&self) -> &[Rational] {
        &self.theta
    }
}

/// Variables w, y_0, …, y_{n+1} of the ambient weighted projective space.
pub fn ambient_vars(n: usize) -> VarSet {
    let mut names = vec!["w".to_string()];
    names.extend((0..n + 2).map(|i| format!("y{i}")));
    VarSet::new(&names).expect("distinct names")
}

/// G_k = w^{α_kω_k − ω_{k+1}} y_{k+1} − (y_k^{α_k} − θ_k ∏_{j<k} y_j^{β_{k,j}}), 1 ≤ k ≤ n.
pub fn defining_equations(model: &SurfaceModel) -> Result<Vec<Polynomial>> {
    let ks = &model.ks;
    let n = ks.n();
    let t = ks.tower();
    let b = beta_expansion(ks)?;
    let vars = ambient_vars(n);
    let slot = |name: usize| name + 1;
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let a = t.alpha(k);
        let mut lead = vec![0u32; vars.len()];
        lead[0] = exponent(a * ks.omega(k) - ks.omega(k + 1))?;
        lead[slot(k + 1)] = 1;
        let mut pure = vec![0u32; vars.len()];
        pure[slot(k)] = exponent(a)?;
        let mut mixed = vec![0u32; vars.len()];
        for j in 0..k {
            mixed[slot(j)] = exponent(b.beta(k, j))?;
        }
        let g = Polynomial::monomial(&vars, lead, Rational::one())
            - Polynomial::monomial(&vars, pure, Rational::one())
            + Polynomial::monomial(&vars, mixed, model.theta[k - 1].clone());
        out.push(g);
    }
    Ok(out)
}

fn exponent(v: i64) -> Result<u32> {
    u32::try_from(v).map_err(|_| Error::Internal(format!("negative exponent {v}")))
}

/// Weighted degree of a monomial in w, y_0, …, y_{n+1} with weights (1, ω_0, …, ω_{n+1}).
pub fn weighted_degree(ks: &KeySequence, e: &[u32]) -> i64 {
    let mut d = e[0] as i64;
    for (i, &k) in e[1..].iter().enumerate() {
        d += k as i64 * ks.omega(i);
    }
    d
}

/// μ_1 … μ_n. With k chosen so that i_k ≤ i < i_{k+1},
/// μ_i = α_{i_0}⋯α_{i_k} − Σ_{j=1}^{k} α_{i_0}⋯α_{i_{j−1}} β_{i,i_j}, where α_{i_0} = 1
/// and β_{i,j} = 0 for j ≥ i.
pub fn mu_exponents(ks: &KeySequence) -> Result<Vec<i64>> {
    let t = ks.tower();
    let b = beta_expansion(ks)?;
    let ess = essential_data(ks);
    let idx = &ess.indices;
    let alpha_at = |pos: usize| if pos == 0 { 1 } else { t.alpha(idx[pos]) };
    let mut out = Vec::with_capacity(ks.n());
    for i in 1..=ks.n() {
        let k = (0..idx.len() - 1).rfind(|&k| idx[k] <= i).unwrap();
        let mut prod = 1i64;
        let mut sum = 0i64;
        for j in 1..=k {
            prod *= alpha_at(j - 1);
            sum += prod * b.beta(i, idx[j]);
        }
        let full: i64 = (0..=k).map(alpha_at).product();
        out.push(full - sum);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaVerdict {
    pub equivalent: bool,
    /// Row i is (−β_{i,0}, μ_i).
    pub exponent_matrix: Vec<(i64, i64)>,
    /// Basis of the integer relations among the rows.
    pub relations: Vec<Vec<i64>>,
}

/// Basis of {v ∈ ℤ^n : Σ v_i·row_i = 0}, for integer rows of width `w`. Found by
/// unimodular elimination, so the basis spans the whole saturated lattice.
pub fn integer_relations(rows: &[Vec<BigInt>], w: usize) -> Vec<Vec<BigInt>> {
    let n = rows.len();
    // Work on M (n × w) augmented with the identity; row operations on [M | I].
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    let mut pivot_row = 0;
    for col in 0..w {
        if pivot_row >= n {
            break;
        }
        loop {
            let best = (pivot_row..n)
                .filter(|&r| !m[r][col].is_zero())
                .min_by_key(|&r| m[r][col].abs());
            let Some(p) = best else { break };
            m.swap(pivot_row, p);
            u.swap(pivot_row, p);
            let mut done = true;
            for r in pivot_row + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let q = m[r][col].div_floor(&m[pivot_row][col]);
                for c in 0..w {
                    let d = &q * &m[pivot_row][c];
                    m[r][c] -= d;
                }
                for c in 0..n {
                    let d = &q * &u[pivot_row][c];
                    u[r][c] -= d;
                }
                if !m[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !m[pivot_row][col].is_zero() {
            pivot_row += 1;
        }
    }
    (pivot_row..n).map(|r| u[r].clone()).collect()
}

fn rational_power(r: &Rational, e: i64) -> Result<Rational> {
    let k = i32::try_from(e.abs())
        .map_err(|_| Error::Internal("relation exponent too large".into()))?;
    let p = r.pow(k);
    Ok(if e < 0 { p.recip() } else { p })
}

/// Whether θ′ lies in the orbit of θ under θ_i ↦ λ_1^{−β_{i,0}} λ_2^{μ_i} θ_i,
/// λ_1, λ_2 ∈ ℂ*. The orbit of the torus image is cut out by the integer
/// relations among the exponent rows, so the test is exact over ℚ.
pub fn theta_equivalent(
    ks: &KeySequence,
    theta: &[Rational],
    theta_prime: &[Rational],
) -> Result<ThetaVerdict> {
    let n = ks.n();
    for v in [theta, theta_prime] {
        if v.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: v.len(),
            });
        }
        if v.iter().any(Rational::is_zero) {
            return Err(Error::ZeroTheta);
        }
    }
    let b = beta_expansion(ks)?;
    let mu = mu_exponents(ks)?;
    let matrix: Vec<(i64, i64)> = (1..=n).map(|i| (-b.beta(i, 0), mu[i - 1])).collect();
    let rows: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|&(a, c)| vec![a.into(), c.into()])
        .collect();
    let relations: Vec<Vec<i64>> = integer_relations(&rows, 2)
        .iter()
        .map(|v| v.iter().map(|x| x.to_i64()).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Internal("relation entry overflows i64".into()))?;
    let ratios: Vec<Rational> = theta.iter().zip(theta_prime).map(|(a, b)| b / a).collect();
    let mut equivalent = true;
    for v in &relations {
        let mut acc = Rational::one();
        for (r, e) in ratios.iter().zip(v) {
            acc = acc * rational_power(r, *e)?;
        }
        if !acc.is_one() {
            equivalent = false;
            break;
        }
    }
    Ok(ThetaVerdict {
        equivalent,
        exponent_matrix: matrix,
        relations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AutCase {
    P2,
    #[serde(rename = "WP_case_1b")]
    WpCase1b,
    #[serde(rename = "WP_case_1c")]
    WpCase1c,
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AConstraint {
    AnyNonzero,
    RootOfUnity(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutDescription {
    pub case: AutCase,
    /// General case: the bound m_ω on deg f. Weighted cases: the weighted degree ω_0 of f.
    pub degree_bound: Option<i64>,
    pub c_allowed: bool,
    pub a_constraint: Option<AConstraint>,
}

pub fn aut_description(ks: &KeySequence) -> Result<AutDescription> {
    require_normal(ks)?;
    let (w0, w1) = (ks.omega(0), ks.omega(1));
    if ks.n() == 0 {
        // ω_0 = ω_1 > 1 cannot occur: the gcd would exceed one.
        let d = match (w0, w1) {
            (1, 1) => AutDescription {
                case: AutCase::P2,
                degree_bound: None,
                c_allowed: true,
                a_constraint: None,
            },
            (_, 1) => AutDescription {
                case: AutCase::WpCase1b,
                degree_bound: Some(w0),
                c_allowed: true,
                a_constraint: Some(AConstraint::AnyNonzero),
            },
            _ => AutDescription {
                case: AutCase::WpCase1c,
                degree_bound: Some(w0),
                c_allowed: true,
                a_constraint: Some(AConstraint::AnyNonzero),
            },
        };
        return Ok(d);
    }
    let bundle = invariant_bundle(ks)?;
    Ok(AutDescription {
        case: AutCase::General,
        degree_bound: Some(bundle.m_omega),
        c_allowed: w0 + bundle.k_bar_x < 0,
        a_constraint: Some(match bundle.bar_omega_star {
            None => AConstraint::AnyNonzero,
            Some(s) => AConstraint::RootOfUnity(s),
        }),
    })
}
