//! Newton pairs, resolution schematics, continued fractions, monomial
//! resolutions and the integers m_E attached to exceptional curves.

mod graph;

pub use graph::{
    continued_fraction, curvette_table, delta_of_chain, determinant, fractional_claim_check,
    is_irrelevant_chain, monomial_resolution_graph, ClaimInequality, ClaimReport, ClaimViolation,
    ContinuedFraction, CurvetteRow, CurvetteTable, WeightedGraph,
};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::key_sequence::{
    essential_data, is_normal_form, is_primitive, EssentialData, KeySequence,
};
use crate::surface_invariants::m_omega;
use crate::symbolic::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPair {
    pub q: i64,
    pub p: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPairs {
    /// (q′_j, p_j) for j = 1 … l+1.
    pub pairs: Vec<NewtonPair>,
}

impl NewtonPairs {
    pub fn l(&self) -> usize {
        self.pairs.len() - 1
    }

    /// The pair with 1-based index j.
    pub fn pair(&self, j: usize) -> NewtonPair {
        self.pairs[j - 1]
    }
}

fn require_primitive_normal(ks: &KeySequence) -> Result<()> {
    if !is_primitive(ks) {
        return Err(Error::NonPrimitive);
    }
    if !is_normal_form(ks) {
        return Err(Error::NotNormalForm);
    }
    Ok(())
}

fn integral(r: &Rational, what: &str) -> Result<i64> {
    r.to_i64()
        .ok_or_else(|| Error::Internal(format!("{what} = {r} is not an integer")))
}

/// p_j = α_{i_j}; q′_1 = p_1χ_1 and q′_j = p_1⋯p_j(χ_j − χ_{j−1}).
pub fn newton_pairs(ks: &KeySequence) -> Result<NewtonPairs> {
    require_primitive_normal(ks)?;
    let ess = essential_data(ks);
    let t = ks.tower();
    let mut pairs = Vec::new();
    let mut prod = 1i64;
    for j in 1..=ess.l() + 1 {
        let p = t.alpha(ess.indices[j]);
        prod *= p;
        let diff = if j == 1 {
            ess.chi(1).clone()
        } else {
            ess.chi(j) - ess.chi(j - 1)
        };
        let q = integral(&(diff * Rational::from(prod)), "q′")?;
        pairs.push(NewtonPair { q, p });
    }
    Ok(NewtonPairs { pairs })
}

/// A chain recorded only by its Δ; Δ = 1 is the empty chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainDelta {
    pub delta: i64,
}

impl ChainDelta {
    pub fn is_empty(&self) -> bool {
        self.delta == 1
    }
}

/// The resolution graph as chains hung on l interior nodes: spine chains of Δ
/// |q′_1| … |q′_{l+1}|, a branch of Δ p_j at node j, and a separate chain of Δ
/// p_{l+1} when that exceeds one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualGraphSchematic {
    pub spine_deltas: Vec<ChainDelta>,
    pub branch_deltas: Vec<ChainDelta>,
    pub extra_chain: Option<ChainDelta>,
}

impl DualGraphSchematic {
    pub fn l(&self) -> usize {
        self.branch_deltas.len()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph \"schematic\" {\n  node [shape=box];\n");
        let chain = |s: &mut String, name: &str, c: &ChainDelta| {
            let label = if c.is_empty() {
                "empty".to_string()
            } else {
                format!("Δ={}", c.delta)
            };
            s.push_str(&format!(
                "  subgraph cluster_{name} {{ label=\"{name}\"; {name} [label=\"{label}\"]; }}\n"
            ));
        };
        for (j, c) in self.spine_deltas.iter().enumerate() {
            chain(&mut s, &format!("spine{}", j + 1), c);
        }
        for (j, c) in self.branch_deltas.iter().enumerate() {
            chain(&mut s, &format!("branch{}", j + 1), c);
            s.push_str(&format!("  node{} [shape=point];\n", j + 1));
        }
        if let Some(c) = &self.extra_chain {
            chain(&mut s, "extra", c);
        }
        for j in 1..=self.l() {
            s.push_str(&format!(
                "  spine{j} -- node{j};\n  node{j} -- branch{j};\n  node{j} -- spine{};\n",
                j + 1
            ));
        }
        s.push_str("}\n");
        s
    }
}

pub fn dual_graph_schematic(np: &NewtonPairs) -> DualGraphSchematic {
    let l = np.l();
    let delta = |d: i64| ChainDelta { delta: d };
    let last = np.pair(l + 1).p;
    DualGraphSchematic {
        spine_deltas: np.pairs.iter().map(|p| delta(p.q.abs())).collect(),
        branch_deltas: np.pairs[..l].iter().map(|p| delta(p.p)).collect(),
        extra_chain: (last > 1).then(|| delta(last)),
    }
}

/// Where an exceptional curve sits in the resolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Locator {
    /// The node joining the chains of Δ |q′_i| and p_i, 1 ≤ i ≤ l.
    Corner(usize),
    /// A curve whose series stops at the exponent contributed by the
    /// non-essential index j_*, strictly between i_1 and i_l.
    InteriorExponent(usize),
    /// A curve on the i-th chains with curvette exponents p̃/q̃ from the continued
    /// fraction of (p_1, p_1 − q′_1) when i = 1, or (p_i, |q′_i|) otherwise.
    Convergent { i: usize, p: i64, q: i64 },
    /// The strict transform of the line at infinity, when it survives.
    LineAtInfinity,
}

struct Context {
    ess: EssentialData,
    np: NewtonPairs,
    ks: KeySequence,
}

impl Context {
    fn new(ks: &KeySequence) -> Result<Self> {
        Ok(Context {
            ess: essential_data(ks),
            np: newton_pairs(ks)?,
            ks: ks.clone(),
        })
    }

    fn slope(&self) -> Rational {
        let p = self.np.pair(1);
        Rational::new(p.p, p.q)
    }

    /// ⌊(p_1/q′_1)(β + 1) − 1⌋
    fn level(&self, beta: &Rational) -> i64 {
        let v = self.slope() * (beta + Rational::one()) - Rational::one();
        v.floor().try_into().expect("small")
    }

    fn convergent_source(&self, i: usize) -> Option<(i64, i64)> {
        let p = self.np.pair(i);
        let (a, b) = if i == 1 {
            (p.p, p.p - p.q)
        } else {
            (p.p, p.q.abs())
        };
        (a > b && b >= 1 && a.gcd(&b) == 1).then_some((a, b))
    }

    /// Curvette rows usable on chain i: for i = 1 the row must have p̃ ≠ q̃ and
    /// must not lie on an irrelevant chain (those curves are contracted).
    fn convergent_rows(&self, i: usize) -> Result<Vec<CurvetteRow>> {
        let Some((a, b)) = self.convergent_source(i) else {
            return Ok(Vec::new());
        };
        let table = curvette_table(&continued_fraction(a, b)?);
        if i > 1 {
            return Ok(table.rows);
        }
        let g = monomial_resolution_graph(a, b)?;
        Ok(table
            .rows
            .into_iter()
            .filter(|r| r.p != r.q && !is_irrelevant_chain(&g, r.index as usize))
            .collect())
    }

    fn interior_beta(&self, idx: usize) -> Option<Rational> {
        let idxs = &self.ess.indices;
        let l = self.ess.l();
        if l < 1 || idx <= idxs[1] || idx >= idxs[l] || idxs.contains(&idx) {
            return None;
        }
        let t = self.ks.tower();
        let k = idxs.iter().rposition(|&i| i < idx).unwrap();
        let s: i64 = (1..=k)
            .map(|j| (t.alpha(idxs[j]) - 1) * self.ks.omega(idxs[j]))
            .sum();
        Some(Rational::new(self.ks.omega(idx) - s, self.ks.omega(0)))
    }

    fn line_survives(&self) -> bool {
        let p = self.np.pair(1);
        2 * p.q > p.p
    }

    fn value(&self, loc: &Locator) -> Result<i64> {
        let l = self.ess.l();
        let invalid = |s: String| Error::InvalidLocator(s);
        match *loc {
            Locator::Corner(i) => {
                if !(1..=l).contains(&i) {
                    return Err(invalid(format!("corner {i} outside 1..={l}")));
                }
                Ok(self.level(self.ess.chi(i)))
            }
            Locator::InteriorExponent(idx) => {
                let beta = self.interior_beta(idx).ok_or_else(|| {
                    invalid(format!(
                        "index {idx} is not a non-essential index inside (i_1, i_l)"
                    ))
                })?;
                Ok(self.level(&beta))
            }
            Locator::Convergent { i, p, q } => {
                if !(1..=l).contains(&i) {
                    return Err(invalid(format!("chain {i} outside 1..={l}")));
                }
                let rows = self.convergent_rows(i)?;
                if !rows.iter().any(|r| r.p == p && r.q == q) {
                    return Err(invalid(format!(
                        "{p}/{q} is not a usable curvette exponent on chain {i}"
                    )));
                }
                if i == 1 {
                    return Ok(Rational::new(p, p - q).floor().try_into().expect("small"));
                }
                let prefix: i64 = (1..i).map(|j| self.np.pair(j).p).product();
                let beta = self.ess.chi(i - 1) - Rational::new(q, prefix * p);
                Ok(self.level(&beta))
            }
            Locator::LineAtInfinity => {
                if self.line_survives() {
                    Ok(1)
                } else {
                    Err(invalid("the line at infinity is contracted".into()))
                }
            }
        }
    }

    fn locators(&self) -> Result<Vec<Locator>> {
        let l = self.ess.l();
        let mut out: Vec<Locator> = (1..=l).map(Locator::Corner).collect();
        out.extend(
            (1..=self.ks.n())
                .filter(|&i| self.interior_beta(i).is_some())
                .map(Locator::InteriorExponent),
        );
        for i in 1..=l {
            for r in self.convergent_rows(i)? {
                out.push(Locator::Convergent { i, p: r.p, q: r.q });
            }
        }
        if self.line_survives() {
            out.push(Locator::LineAtInfinity);
        }
        Ok(out)
    }
}

/// m_E for the exceptional curve described by `locator`.
pub fn m_e_value(ks: &KeySequence, locator: &Locator) -> Result<i64> {
    Context::new(ks)?.value(locator)
}

/// Every locator for which m_E can be evaluated from the key sequence alone.
pub fn derivable_locators(ks: &KeySequence) -> Result<Vec<Locator>> {
    Context::new(ks)?.locators()
}

/// m_ω recomputed from Newton pairs: ⌊(p_1/q′_1)(χ_{l+1} + 1) − 1⌋.
pub fn m_omega_from_pairs(ks: &KeySequence) -> Result<i64> {
    let c = Context::new(ks)?;
    Ok(c.level(c.ess.chi(c.ess.l() + 1)))
}

/// Pairs (locator, m_E) together with m_ω.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeTable {
    pub m_omega: i64,
    pub entries: Vec<(Locator, i64)>,
}

pub fn m_e_table(ks: &KeySequence) -> Result<MeTable> {
    let c = Context::new(ks)?;
    let entries = c
        .locators()?
        .into_iter()
        .map(|loc| c.value(&loc).map(|v| (loc, v)))
        .collect::<Result<_>>()?;
    Ok(MeTable {
        m_omega: m_omega(ks)?,
        entries,
    })
}
