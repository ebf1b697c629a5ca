//! Sparse multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::Rational;

/// Default upper bound on any single exponent.
pub const DEFAULT_EXPONENT_CAP: u32 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymbolicError {
    #[error("variable sets differ: [{0}] vs [{1}]")]
    VarSetMismatch(String, String),
    #[error("exponent exceeds cap {cap}")]
    ExponentOverflow { cap: u32 },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("exponent vector has length {got}, expected {expected}")]
    ArityMismatch { got: usize, expected: usize },
}

/// Ordered list of variable names shared by a family of polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Arc<[String]>,
    cap: u32,
}

impl VarSet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, SymbolicError> {
        Self::with_cap(names, DEFAULT_EXPONENT_CAP)
    }

    pub fn with_cap<S: AsRef<str>>(names: &[S], cap: u32) -> Result<Self, SymbolicError> {
        let mut seen = std::collections::BTreeSet::new();
        for n in names {
            if !seen.insert(n.as_ref()) {
                return Err(SymbolicError::DuplicateVariable(n.as_ref().to_string()));
            }
        }
        Ok(VarSet {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
            cap,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// This set followed by the names of `other` that are not already present.
    pub fn union(&self, other: &VarSet) -> VarSet {
        let mut names: Vec<String> = self.names.to_vec();
        for n in other.names.iter() {
            if !names.contains(n) {
                names.push(n.clone());
            }
        }
        VarSet {
            names: names.into(),
            cap: self.cap.min(other.cap),
        }
    }

    fn joined(&self) -> String {
        self.names.join(", ")
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.joined())
    }
}

pub type Exponents = Vec<u32>;

/// A polynomial over an explicit variable set. Zero coefficients are never stored,
/// so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    vars: VarSet,
    terms: BTreeMap<Exponents, Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked arithmetic entry point.
pub fn poly_arith(
    a: &Polynomial,
    b: &Polynomial,
    op: ArithOp,
) -> Result<Polynomial, SymbolicError> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
    }
}

#[allow(clippy::len_without_is_empty)]
impl Polynomial {
    pub fn zero(vars: &VarSet) -> Self {
        Polynomial {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &VarSet, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn var(vars: &VarSet, name: &str) -> Result<Self, SymbolicError> {
        let i = vars
            .index(name)
            .ok_or_else(|| SymbolicError::UnknownVariable(name.to_string()))?;
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Ok(Self::monomial(vars, e, Rational::one()))
    }

    /// Panics on arity mismatch; use [`Polynomial::from_terms`] for checked input.
    pub fn monomial(vars: &VarSet, exps: Exponents, coeff: Rational) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent arity");
        let mut p = Self::zero(vars);
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    pub fn from_terms<I>(vars: &VarSet, terms: I) -> Result<Self, SymbolicError>
    where
        I: IntoIterator<Item = (Exponents, Rational)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(SymbolicError::ArityMismatch {
                    got: e.len(),
                    expected: vars.len(),
                });
            }
            if e.iter().any(|&x| x > vars.cap) {
                return Err(SymbolicError::ExponentOverflow { cap: vars.cap });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.vars.len()])
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// Terms in graded-lex descending order.
    pub fn terms_grlex(&self) -> Vec<(&Exponents, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex_desc(a.0, b.0));
        v
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn same_vars(&self, other: &Polynomial) -> Result<(), SymbolicError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(SymbolicError::VarSetMismatch(
                self.vars.joined(),
                other.vars.joined(),
            ))
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, SymbolicError> {
        self.same_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, SymbolicError> {
        self.same_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, SymbolicError> {
        self.same_vars(other)?;
        let cap = self.vars.cap;
        let mut out = Polynomial::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = Vec::with_capacity(ea.len());
                for (x, y) in ea.iter().zip(eb) {
                    let s = x.checked_add(*y).filter(|&s| s <= cap);
                    e.push(s.ok_or(SymbolicError::ExponentOverflow { cap })?);
                }
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Result<Polynomial, SymbolicError> {
        let mut result = Polynomial::one(&self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Simultaneous substitution. Every binding must live over this polynomial's
    /// variable set; unbound variables are left alone.
    pub fn substitute(
        &self,
        bindings: &BTreeMap<String, Polynomial>,
    ) -> Result<Polynomial, SymbolicError> {
        let mut by_index: Vec<Option<&Polynomial>> = vec![None; self.vars.len()];
        for (name, p) in bindings {
            let i = self
                .vars
                .index(name)
                .ok_or_else(|| SymbolicError::UnknownVariable(name.clone()))?;
            self.same_vars(p)?;
            by_index[i] = Some(p);
        }
        let mut powers: BTreeMap<(usize, u32), Polynomial> = BTreeMap::new();
        let mut out = Polynomial::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut kept = vec![0; e.len()];
            let mut term = Polynomial::one(&self.vars);
            for (i, &k) in e.iter().enumerate() {
                match by_index[i] {
                    Some(b) if k > 0 => {
                        if let std::collections::btree_map::Entry::Vacant(e) = powers.entry((i, k))
                        {
                            e.insert(b.pow(k)?);
                        }
                        term = term.checked_mul(&powers[&(i, k)])?;
                    }
                    _ => kept[i] = k,
                }
            }
            let m = Polynomial::monomial(&self.vars, kept, c.clone());
            out = out.checked_add(&m.checked_mul(&term)?)?;
        }
        Ok(out)
    }

    /// Re-express over a larger variable set, matching variables by name.
    pub fn embed(&self, target: &VarSet) -> Result<Polynomial, SymbolicError> {
        let map: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| {
                target
                    .index(n)
                    .ok_or_else(|| SymbolicError::UnknownVariable(n.clone()))
            })
            .collect::<Result<_, _>>()?;
        let mut out = Polynomial::zero(target);
        for (e, c) in &self.terms {
            let mut f = vec![0; target.len()];
            for (i, &k) in e.iter().enumerate() {
                if k > target.cap {
                    return Err(SymbolicError::ExponentOverflow { cap: target.cap });
                }
                f[map[i]] = k;
            }
            out.add_term(f, c.clone());
        }
        Ok(out)
    }

    /// Split into a polynomial in the variables `idxs` whose coefficients are
    /// polynomials in the remaining variables (over the same set). Keys are the
    /// exponents of `idxs`, in the order given.
    pub fn coefficients_in(&self, idxs: &[usize]) -> BTreeMap<Exponents, Polynomial> {
        let mut out: BTreeMap<Exponents, Polynomial> = BTreeMap::new();
        for (e, c) in &self.terms {
            let key: Exponents = idxs.iter().map(|&i| e[i]).collect();
            let mut rest = e.clone();
            for &i in idxs {
                rest[i] = 0;
            }
            out.entry(key)
                .or_insert_with(|| Polynomial::zero(&self.vars))
                .add_term(rest, c.clone());
        }
        out
    }

    /// True if every term has total degree exactly one in the given variables
    /// and degree zero in all others.
    pub fn is_linear_form_in(&self, idxs: &[usize]) -> bool {
        self.terms.keys().all(|e| {
            e.iter()
                .enumerate()
                .all(|(i, &k)| idxs.contains(&i) || k == 0)
                && idxs.iter().map(|&i| e[i]).sum::<u32>() == 1
        })
    }
}

/// Graded-lex comparison, larger monomials first.
pub fn grlex_desc(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&x| x as u64).sum();
    let db: u64 = b.iter().map(|&x| x as u64).sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

/// Render a monomial such as `t1^2·y`; the empty monomial renders as "".
pub fn render_monomial(vars: &VarSet, e: &[u32]) -> String {
    let mut parts = Vec::new();
    for (name, &k) in vars.names().iter().zip(e) {
        match k {
            0 => {}
            1 => parts.push(name.clone()),
            _ => parts.push(format!("{name}^{k}")),
        }
    }
    parts.join("·")
}

/// Render a signed sum of `(coefficient, monomial text)` pairs.
pub fn render_sum<I>(terms: I) -> String
where
    I: IntoIterator<Item = (Rational, String)>,
{
    let mut s = String::new();
    for (c, m) in terms {
        let neg = c.is_negative();
        let a = c.abs();
        let body = if m.is_empty() {
            a.to_string()
        } else if a.is_one() {
            m
        } else {
            format!("{a}·{m}")
        };
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        s.push_str(&body);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .terms_grlex()
            .into_iter()
            .map(|(e, c)| (c.clone(), render_monomial(&self.vars, e)));
        f.write_str(&render_sum(terms))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {:?}", self, self.vars)
    }
}

// Operator sugar. These panic where the checked versions return an error; use
// them only on polynomials built over one known variable set.
macro_rules! poly_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs)
                    .expect(concat!("polynomial ", stringify!($m)))
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                (&self).$m(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                self.$m(&rhs)
            }
        }
    };
}

poly_op!(Add, add, checked_add);
poly_op!(Sub, sub, checked_sub);
poly_op!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&Rational::from(-1))
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
