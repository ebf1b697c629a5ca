//! G_a^2-structures: existence, the families τ_λ and the general action form,
//! symbolic verification of the action axioms, and moduli.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::key_sequence::KeySequence;
use crate::surface_invariants::{invariant_bundle, k_bar_x, m_omega, require_surface};
use crate::symbolic::{
    binomial, grlex_desc, render_monomial, render_sum, PolyMap, Polynomial, Rational, VarSet,
};

/// Coordinates of the group and of the plane, always the first four variables.
pub const CORE_VARS: [&str; 4] = ["t1", "t2", "x", "y"];

/// An action parameter: an exact value or a free symbol.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Param {
    Value(Rational),
    Symbol(String),
}

impl Param {
    pub fn value(v: impl Into<Rational>) -> Self {
        Param::Value(v.into())
    }

    pub fn symbol(s: &str) -> Self {
        Param::Symbol(s.to_string())
    }

    fn as_poly(&self, vars: &VarSet) -> Polynomial {
        match self {
            Param::Value(v) => Polynomial::constant(vars, v.clone()),
            Param::Symbol(s) => Polynomial::var(vars, s).expect("parameter symbol registered"),
        }
    }

    fn is_zero(&self) -> Option<bool> {
        match self {
            Param::Value(v) => Some(v.is_zero()),
            Param::Symbol(_) => None,
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Value(v) => write!(f, "{v}"),
            Param::Symbol(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionFamily {
    pub m: usize,
    pub lambdas: Vec<Param>,
    pub c1: Param,
    pub c2: Param,
    pub cbar1: Param,
    pub cbar2: Param,
    pub mu: Param,
    /// The map (t1, t2)·(x, y) over t1, t2, x, y followed by the parameter symbols.
    pub map: PolyMap,
}

impl ActionFamily {
    /// Whether μ ≠ 0 and (c1, c2) ≠ 0, when that is decidable from exact values.
    pub fn nondegenerate(&self) -> Option<bool> {
        let mu = self.mu.is_zero().map(|z| !z);
        let c = match (self.c1.is_zero(), self.c2.is_zero()) {
            (Some(true), Some(true)) => Some(false),
            (Some(false), _) | (_, Some(false)) => Some(true),
            _ => None,
        };
        match (mu, c) {
            (Some(false), _) | (_, Some(false)) => Some(false),
            (Some(true), Some(true)) => Some(true),
            _ => None,
        }
    }

    pub fn render(&self) -> String {
        render_action(&self.map)
    }
}

fn family_vars(params: &[&Param]) -> VarSet {
    let mut names: Vec<String> = CORE_VARS.iter().map(|s| s.to_string()).collect();
    for p in params {
        if let Param::Symbol(s) = p {
            if !names.contains(s) {
                names.push(s.clone());
            }
        }
    }
    VarSet::new(&names).expect("parameter names must differ from t1, t2, x, y and each other")
}

/// g_i(r) = Σ_{j=i}^{m} λ_j/(j−i+1)·C(j, j−i)·r^{j−i+1} for i = 0 … m.
pub fn g_polys(lambdas: &[Polynomial], r: &Polynomial) -> Result<Vec<Polynomial>> {
    let m = lambdas.len().saturating_sub(1);
    let vars = r.vars();
    let mut out = Vec::with_capacity(lambdas.len());
    let mut powers = vec![Polynomial::one(vars)];
    for k in 1..=m + 1 {
        powers.push(powers[k - 1].checked_mul(r)?);
    }
    for i in 0..lambdas.len() {
        let mut g = Polynomial::zero(vars);
        for j in i..=m {
            let coef = Rational::new(binomial(j as u64, (j - i) as u64), (j - i + 1) as i64);
            g = g.checked_add(&lambdas[j].checked_mul(&powers[j - i + 1])?.scale(&coef))?;
        }
        out.push(g);
    }
    Ok(out)
}

/// (x + Σ g_i(c1t1 + c2t2)y^i + μ(c̄2t1 − c̄1t2), y + c1t1 + c2t2).
pub fn general_action(
    m: usize,
    lambdas: Vec<Param>,
    c1: Param,
    c2: Param,
    cbar1: Param,
    cbar2: Param,
    mu: Param,
) -> Result<ActionFamily> {
    if lambdas.len() != m + 1 {
        return Err(Error::LengthMismatch {
            expected: m + 1,
            got: lambdas.len(),
        });
    }
    let mut all: Vec<&Param> = lambdas.iter().collect();
    all.extend([&c1, &c2, &cbar1, &cbar2, &mu]);
    let vars = family_vars(&all);
    let v = |s: &str| Polynomial::var(&vars, s).expect("core variable");
    let (t1, t2, x, y) = (v("t1"), v("t2"), v("x"), v("y"));
    let r = c1.as_poly(&vars) * &t1 + c2.as_poly(&vars) * &t2;
    let lam: Vec<Polynomial> = lambdas.iter().map(|l| l.as_poly(&vars)).collect();
    let g = g_polys(&lam, &r)?;
    let mut first = x.clone();
    let mut ypow = Polynomial::one(&vars);
    for gi in &g {
        first = first + gi * &ypow;
        ypow = ypow * &y;
    }
    first = first + mu.as_poly(&vars) * (cbar2.as_poly(&vars) * &t1 - cbar1.as_poly(&vars) * &t2);
    let second = y + &r;
    Ok(ActionFamily {
        m,
        lambdas,
        c1,
        c2,
        cbar1,
        cbar2,
        mu,
        map: PolyMap::new(first, second)?,
    })
}

/// τ_λ for a given m: (x + λ Σ_{i=0}^{m} C(m, m−i)/(m−i+1)·t1^{m−i+1} y^i + t2, y + t1).
pub fn tau_family(m: usize, lambda: Param) -> Result<ActionFamily> {
    let mut lambdas = vec![Param::value(0); m];
    lambdas.push(lambda);
    general_action(
        m,
        lambdas,
        Param::value(1),
        Param::value(0),
        Param::value(1),
        Param::value(0),
        Param::value(-1),
    )
}

pub fn g2a_exists(ks: &KeySequence) -> Result<bool> {
    require_surface(ks)?;
    Ok(ks.omega(0) + k_bar_x(ks) < 0)
}

pub fn tau_lambda(ks: &KeySequence, lambda: Param) -> Result<ActionFamily> {
    if !g2a_exists(ks)? {
        return Err(Error::NoG2aStructure);
    }
    let m = m_omega(ks)?;
    tau_family(m as usize, lambda)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub holds: bool,
    /// F(0, 0, x, y) − (x, y)
    pub identity_residual: (Polynomial, Polynomial),
    /// F(t, F(t′, p)) − F(t + t′, p), over the map's variables plus t1′, t2′.
    pub composition_residual: (Polynomial, Polynomial),
}

/// Check the group-action axioms of a map over a variable set containing t1, t2, x, y.
pub fn verify_map_axioms(map: &PolyMap) -> Result<AxiomReport> {
    let vars = map.vars();
    for name in CORE_VARS {
        if vars.index(name).is_none() {
            return Err(crate::symbolic::SymbolicError::UnknownVariable(name.to_string()).into());
        }
    }
    let v = |s: &str| Polynomial::var(vars, s).unwrap();
    let zero = Polynomial::zero(vars);
    let at_zero = BTreeMap::from([("t1".to_string(), zero.clone()), ("t2".to_string(), zero)]);
    let identity_residual = (
        map.x.substitute(&at_zero)? - v("x"),
        map.y.substitute(&at_zero)? - v("y"),
    );

    let primed = VarSet::new(&["t1'", "t2'"]).unwrap();
    let big = vars.union(&primed);
    let fx = map.x.embed(&big)?;
    let fy = map.y.embed(&big)?;
    let w = |s: &str| Polynomial::var(&big, s).unwrap();
    let to_primed = BTreeMap::from([("t1".to_string(), w("t1'")), ("t2".to_string(), w("t2'"))]);
    let inner = BTreeMap::from([
        ("x".to_string(), fx.substitute(&to_primed)?),
        ("y".to_string(), fy.substitute(&to_primed)?),
    ]);
    let summed = BTreeMap::from([
        ("t1".to_string(), w("t1") + w("t1'")),
        ("t2".to_string(), w("t2") + w("t2'")),
    ]);
    let composition_residual = (
        fx.substitute(&inner)? - fx.substitute(&summed)?,
        fy.substitute(&inner)? - fy.substitute(&summed)?,
    );
    let holds = identity_residual.0.is_zero()
        && identity_residual.1.is_zero()
        && composition_residual.0.is_zero()
        && composition_residual.1.is_zero();
    Ok(AxiomReport {
        holds,
        identity_residual,
        composition_residual,
    })
}

pub fn verify_action_axioms(fam: &ActionFamily) -> Result<AxiomReport> {
    verify_map_axioms(&fam.map)
}

/// The family with g_1 replaced by g_1 + t1², which breaks the composition law.
pub fn inject_fault(fam: &ActionFamily) -> ActionFamily {
    let vars = fam.map.vars();
    let v = |s: &str| Polynomial::var(vars, s).unwrap();
    let mut out = fam.clone();
    out.map.x = &fam.map.x + v("t1") * v("t1") * v("y");
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LemmaCondition {
    /// a ≡ b ≡ 1
    UnitCoefficients,
    /// c = c1t1 + c2t2
    LinearTranslation,
    /// c = 0 and every b_i is linear
    LinearCoefficients,
    /// c ≠ 0 and the b_i have the g_i shape
    GShape,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaVerdict {
    pub is_action: bool,
    pub failed: Option<LemmaCondition>,
    pub c: Option<(Rational, Rational)>,
    /// λ_0 … λ_m and μ_0 when c ≠ 0 and the shape matches.
    pub lambdas: Vec<Rational>,
    pub mu0: Option<Rational>,
}

/// The variables of the lemma's inputs.
pub fn lemma_vars() -> VarSet {
    VarSet::new(&["t1", "t2"]).unwrap()
}

/// Decide whether (a x + Σ b_i y^i, b y + c) is an action, all inputs being
/// polynomials over [`lemma_vars`].
pub fn action_lemma_classify(
    a: &Polynomial,
    b: &Polynomial,
    c: &Polynomial,
    bs: &[Polynomial],
) -> Result<LemmaVerdict> {
    let vars = lemma_vars();
    for p in [a, b, c].into_iter().chain(bs) {
        if p.vars() != &vars {
            return Err(crate::symbolic::SymbolicError::VarSetMismatch(
                p.vars().names().join(", "),
                "t1, t2".into(),
            )
            .into());
        }
    }
    let reject = |cond| LemmaVerdict {
        is_action: false,
        failed: Some(cond),
        c: None,
        lambdas: Vec::new(),
        mu0: None,
    };
    let one = Polynomial::one(&vars);
    if a != &one || b != &one {
        return Ok(reject(LemmaCondition::UnitCoefficients));
    }
    if !c.is_linear_form_in(&[0, 1]) {
        return Ok(reject(LemmaCondition::LinearTranslation));
    }
    let c1 = c.coeff(&[1, 0]);
    let c2 = c.coeff(&[0, 1]);
    if c.is_zero() {
        if bs.iter().all(|bi| bi.is_linear_form_in(&[0, 1])) {
            return Ok(LemmaVerdict {
                is_action: true,
                failed: None,
                c: Some((c1, c2)),
                lambdas: Vec::new(),
                mu0: None,
            });
        }
        return Ok(reject(LemmaCondition::LinearCoefficients));
    }
    // Coordinates r = c1t1 + c2t2 and s = c2t1 − c1t2; with rational c the
    // conjugates coincide with c. Reuse t1, t2 as the names of r, s.
    let norm = &c1 * &c1 + &c2 * &c2;
    let t1 = Polynomial::var(&vars, "t1").unwrap();
    let t2 = Polynomial::var(&vars, "t2").unwrap();
    let back = BTreeMap::from([
        (
            "t1".to_string(),
            (t1.scale(&c1) + t2.scale(&c2)).scale(&norm.recip()),
        ),
        (
            "t2".to_string(),
            (t1.scale(&c2) - t2.scale(&c1)).scale(&norm.recip()),
        ),
    ]);
    let in_rs: Vec<Polynomial> = bs
        .iter()
        .map(|p| p.substitute(&back))
        .collect::<std::result::Result<_, _>>()?;
    let lambdas: Vec<Rational> = in_rs.iter().map(|p| p.coeff(&[1, 0])).collect();
    let lam_polys: Vec<Polynomial> = lambdas
        .iter()
        .map(|l| Polynomial::constant(&vars, l.clone()))
        .collect();
    let g = g_polys(&lam_polys, &t1)?;
    for i in 1..in_rs.len() {
        if in_rs[i] != g[i] {
            return Ok(reject(LemmaCondition::GShape));
        }
    }
    let mut mu0 = None;
    if let Some(b0) = in_rs.first() {
        let rest = b0 - &g[0];
        let m0 = rest.coeff(&[0, 1]);
        if rest != t2.scale(&m0) {
            return Ok(reject(LemmaCondition::GShape));
        }
        mu0 = Some(m0);
    }
    Ok(LemmaVerdict {
        is_action: true,
        failed: None,
        c: Some((c1, c2)),
        lambdas,
        mu0,
    })
}

/// The map (a x + Σ b_i y^i, b y + c) over t1, t2, x, y.
pub fn assemble_lemma_map(
    a: &Polynomial,
    b: &Polynomial,
    c: &Polynomial,
    bs: &[Polynomial],
) -> Result<PolyMap> {
    let vars = VarSet::new(&CORE_VARS).unwrap();
    let v = |s: &str| Polynomial::var(&vars, s).unwrap();
    let (x, y) = (v("x"), v("y"));
    let mut first = a.embed(&vars)? * &x;
    let mut ypow = Polynomial::one(&vars);
    for bi in bs {
        first = first + bi.embed(&vars)? * &ypow;
        ypow = ypow * &y;
    }
    let second = b.embed(&vars)? * &y + c.embed(&vars)?;
    Ok(PolyMap::new(first, second)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModuliKind {
    Point,
    TwoPoints,
    LineModRoots,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuliDescription {
    pub kind: ModuliKind,
    pub root_order: Option<i64>,
    pub exponent: Option<i64>,
}

pub fn moduli_description(ks: &KeySequence) -> Result<ModuliDescription> {
    if !g2a_exists(ks)? {
        return Err(Error::NoG2aStructure);
    }
    if ks.omegas() == [1, 1] {
        return Err(Error::IsP2);
    }
    let b = invariant_bundle(ks)?;
    let plain = |kind| ModuliDescription {
        kind,
        root_order: None,
        exponent: None,
    };
    Ok(match (b.m_omega, ks.n()) {
        (0, _) => plain(ModuliKind::Point),
        (_, 0) => plain(ModuliKind::TwoPoints),
        (_, n) => ModuliDescription {
            kind: ModuliKind::LineModRoots,
            root_order: Some(if n == 1 {
                b.bar_omegas[1]
            } else {
                b.bar_omega_prime.expect("defined for n ≥ 1")
            }),
            exponent: Some(b.bar_omegas[0]),
        },
    })
}

/// λ′ = ζ^{ω̄_0}λ for a d-th root of unity ζ. The values ζ^{ω̄_0} run over the
/// d/gcd(d, ω̄_0)-th roots of unity, of which only ±1 are rational.
pub fn tau_equivalent(
    ks: &KeySequence,
    lambda: &Rational,
    lambda_prime: &Rational,
) -> Result<bool> {
    let md = moduli_description(ks)?;
    let (Some(d), Some(e)) = (md.root_order, md.exponent) else {
        return Err(Error::NotALine);
    };
    if lambda_prime == lambda {
        return Ok(true);
    }
    let order = d / d.gcd(&e);
    Ok(order % 2 == 0 && lambda_prime == &-lambda)
}

/// Render an action "(x + …, y + …)". Each coordinate comes first; terms with a
/// common parameter monomial are grouped as "λ(…)"; the remaining terms follow
/// in graded-lex order.
pub fn render_action(map: &PolyMap) -> String {
    format!(
        "({}, {})",
        render_component(&map.x, 2),
        render_component(&map.y, 3)
    )
}

fn render_component(p: &Polynomial, coord: usize) -> String {
    let vars = p.vars();
    let params: Vec<usize> = (4..vars.len()).collect();
    let mut unit = vec![0u32; vars.len()];
    unit[coord] = 1;
    let mut pieces: Vec<(Rational, String)> = Vec::new();
    let mut rest = p.clone();
    if p.coeff(&unit).is_one() {
        pieces.push((Rational::one(), vars.names()[coord].clone()));
        rest = rest - Polynomial::monomial(vars, unit, Rational::one());
    }
    let mut groups: Vec<(Vec<u32>, Polynomial)> =
        rest.coefficients_in(&params).into_iter().collect();
    groups.sort_by(|a, b| grlex_desc(&a.0, &b.0));
    let mut plain = Vec::new();
    for (pe, q) in groups {
        let mut full = vec![0u32; vars.len()];
        for (k, &i) in params.iter().enumerate() {
            full[i] = pe[k];
        }
        let pm = render_monomial(vars, &full);
        if pm.is_empty() {
            plain = q
                .terms_grlex()
                .into_iter()
                .map(|(e, c)| (c.clone(), render_monomial(vars, e)))
                .collect();
            continue;
        }
        if q.len() == 1 {
            let (e, c) = q.terms().iter().next().unwrap();
            let tm = render_monomial(vars, e);
            let m = if tm.is_empty() {
                pm
            } else {
                format!("{pm}·{tm}")
            };
            pieces.push((c.clone(), m));
        } else {
            let inner = render_sum(
                q.terms_grlex()
                    .into_iter()
                    .map(|(e, c)| (c.clone(), render_monomial(vars, e))),
            );
            pieces.push((Rational::one(), format!("{pm}({inner})")));
        }
    }
    pieces.extend(plain);
    render_sum(pieces)
}

/// One coefficient of an action component: the coefficient of t1^a t2^b x^d y^c,
/// itself a polynomial in the parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionTerm {
    pub t1: u32,
    pub t2: u32,
    pub x: u32,
    pub y: u32,
    pub coefficient: String,
}

pub fn action_terms(p: &Polynomial) -> Vec<ActionTerm> {
    let mut groups: Vec<(Vec<u32>, Polynomial)> =
        p.coefficients_in(&[0, 1, 2, 3]).into_iter().collect();
    groups.sort_by(|a, b| grlex_desc(&a.0, &b.0));
    groups
        .into_iter()
        .map(|(e, q)| ActionTerm {
            t1: e[0],
            t2: e[1],
            x: e[2],
            y: e[3],
            coefficient: q.to_string(),
        })
        .collect()
}
