//! Weighted dual graphs, continued fractions, monomial resolutions and curvettes.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symbolic::Rational;

/// Vertices carry self-intersection numbers; edges are unordered pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedGraph {
    pub vertices: Vec<(String, i64)>,
    pub edges: Vec<(usize, usize)>,
}

impl WeightedGraph {
    pub fn new() -> Self {
        WeightedGraph {
            vertices: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn add_vertex(&mut self, label: impl Into<String>, weight: i64) -> usize {
        self.vertices.push((label.into(), weight));
        self.vertices.len() - 1
    }

    /// Adds the edge unless it is a loop or already present.
    pub fn add_edge(&mut self, a: usize, b: usize) {
        if a != b && !self.has_edge(a, b) {
            self.edges.push((a.min(b), a.max(b)));
        }
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) {
        self.edges.retain(|&e| e != (a.min(b), a.max(b)));
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn weight(&self, v: usize) -> i64 {
        self.vertices[v].1
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|(l, _)| l == label)
    }

    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbours(v).len()
    }

    /// Intersection matrix restricted to `subset`: weights on the diagonal,
    /// 1 for each edge.
    pub fn intersection_matrix(&self, subset: &[usize]) -> Vec<Vec<i64>> {
        subset
            .iter()
            .map(|&a| {
                subset
                    .iter()
                    .map(|&b| {
                        if a == b {
                            self.weight(a)
                        } else {
                            self.has_edge(a, b) as i64
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// The unique path between two vertices of a tree component.
    pub fn path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let mut prev = vec![usize::MAX; self.vertices.len()];
        let mut queue = VecDeque::from([from]);
        prev[from] = from;
        while let Some(v) = queue.pop_front() {
            if v == to {
                let mut p = vec![to];
                let mut c = to;
                while c != from {
                    c = prev[c];
                    p.push(c);
                }
                p.reverse();
                return Some(p);
            }
            for w in self.neighbours(v) {
                if prev[w] == usize::MAX {
                    prev[w] = v;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Vertex sets of the connected components, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.vertices.len()];
        let mut out = Vec::new();
        for s in 0..self.vertices.len() {
            if seen[s] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for w in self.neighbours(v) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph \"{name}\" {{\n");
        for (i, (label, w)) in self.vertices.iter().enumerate() {
            s.push_str(&format!("  v{i} [label=\"{label} ({w})\"];\n"));
        }
        let mut edges = self.edges.clone();
        edges.sort_unstable();
        for (a, b) in edges {
            s.push_str(&format!("  v{a} -- v{b};\n"));
        }
        s.push_str("}\n");
        s
    }
}

impl Default for WeightedGraph {
    fn default() -> Self {
        Self::new()
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Δ of a chain: |det| of its tridiagonal intersection matrix; 1 for the empty chain.
pub fn delta_of_chain(weights: &[i64]) -> BigInt {
    let mut d_prev = BigInt::one();
    let mut d = BigInt::one();
    for (i, &w) in weights.iter().enumerate() {
        let next = if i == 0 {
            BigInt::from(w)
        } else {
            BigInt::from(w) * &d - &d_prev
        };
        d_prev = d;
        d = next;
    }
    d.abs()
}

fn check_pair(p: i64, q: i64) -> Result<()> {
    if !(p > q && q >= 1) {
        return Err(Error::NotOrdered(p, q));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::NotCoprime(p, q));
    }
    Ok(())
}

/// m_1 + 1/(m_2 + 1/(… + 1/m_N)), every m_j ≥ 1 and m_N ≥ 2 when N ≥ 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuedFraction {
    pub terms: Vec<i64>,
}

impl ContinuedFraction {
    pub fn evaluate(&self) -> Rational {
        evaluate_terms(&self.terms)
    }

    /// M_j = m_1 + … + m_j.
    pub fn partial_sum(&self, j: usize) -> i64 {
        self.terms[..j].iter().sum()
    }
}

fn evaluate_terms(terms: &[i64]) -> Rational {
    let mut it = terms.iter().rev();
    let mut acc = Rational::from(*it.next().expect("nonempty"));
    for &m in it {
        acc = Rational::from(m) + acc.recip();
    }
    acc
}

pub fn continued_fraction(p: i64, q: i64) -> Result<ContinuedFraction> {
    check_pair(p, q)?;
    let (mut a, mut b) = (p, q);
    let mut terms = Vec::new();
    while b != 0 {
        terms.push(a / b);
        (a, b) = (b, a % b);
    }
    Ok(ContinuedFraction { terms })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvetteRow {
    pub j: usize,
    pub k: i64,
    /// M_j + k
    pub index: i64,
    pub p: i64,
    pub q: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvetteTable {
    pub rows: Vec<CurvetteRow>,
}

/// Rows (j, k) for 0 ≤ j < N and 1 ≤ k ≤ m_{j+1}: the value of [m_1, …, m_j, k].
pub fn curvette_table(cf: &ContinuedFraction) -> CurvetteTable {
    let mut rows = Vec::new();
    for j in 0..cf.terms.len() {
        let mj = cf.partial_sum(j);
        for k in 1..=cf.terms[j] {
            let mut t = cf.terms[..j].to_vec();
            t.push(k);
            let v = evaluate_terms(&t);
            rows.push(CurvetteRow {
                j,
                k,
                index: mj + k,
                p: v.numer().try_into().expect("small numerator"),
                q: v.denom().try_into().expect("small denominator"),
            });
        }
    }
    CurvetteTable { rows }
}

/// Resolution graph of u(v^p − u^q) = 0, built by replaying the blow-ups of the
/// Euclidean algorithm. Vertex 0 is E_0 (the strict transform of u = 0, weight +1
/// before any blow-up); vertex j is E_j, the j-th exceptional curve.
pub fn monomial_resolution_graph(p: i64, q: i64) -> Result<WeightedGraph> {
    check_pair(p, q)?;
    let mut g = WeightedGraph::new();
    let e0 = g.add_vertex("E0", 1);
    // Curves through the current centre: the images of the two coordinate axes.
    let mut u_axis = Some(e0);
    let mut v_axis: Option<usize> = None;
    let (mut a, mut b) = (p, q);
    let mut count = 0;
    loop {
        count += 1;
        let new = g.add_vertex(format!("E{count}"), -1);
        for c in [u_axis, v_axis].into_iter().flatten() {
            g.vertices[c].1 -= 1;
            g.add_edge(new, c);
        }
        if let (Some(x), Some(y)) = (u_axis, v_axis) {
            g.remove_edge(x, y);
        }
        if a == b {
            break;
        }
        if a > b {
            a -= b;
            v_axis = Some(new);
        } else {
            b -= a;
            u_axis = Some(new);
        }
    }
    Ok(g)
}

/// True when the chain from E_0 to `target` is E_0 of weight −1 followed only by
/// (−2)-curves.
pub fn is_irrelevant_chain(g: &WeightedGraph, target: usize) -> bool {
    let Some(path) = g.path(0, target) else {
        return false;
    };
    g.weight(path[0]) == -1 && path[1..].iter().all(|&v| g.weight(v) == -2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClaimInequality {
    Even1,
    Even2,
    Odd1,
    Odd2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimViolation {
    pub j: usize,
    pub k: i64,
    pub inequality: ClaimInequality,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub rows_checked: usize,
    /// Odd rows whose chain is irrelevant, where the second odd inequality is not claimed.
    pub irrelevant_rows: usize,
    pub violations: Vec<ClaimViolation>,
}

impl ClaimReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluate the convergent inequalities on every row except the last, which is
/// p/q itself and meets the strict inequalities with equality.
pub fn fractional_claim_check(p: i64, q: i64) -> Result<ClaimReport> {
    let cf = continued_fraction(p, q)?;
    let table = curvette_table(&cf);
    let g = monomial_resolution_graph(p, q)?;
    let base = Rational::new(p - q, p);
    let base_inv_floor = Rational::new(p, p - q).floor();
    let mut report = ClaimReport {
        rows_checked: 0,
        irrelevant_rows: 0,
        violations: Vec::new(),
    };
    let last = table.rows.len() - 1;
    for row in &table.rows[..last] {
        report.rows_checked += 1;
        let val = Rational::new(row.p - row.q, row.p);
        let mut fail = |inequality| {
            report.violations.push(ClaimViolation {
                j: row.j,
                k: row.k,
                inequality,
            })
        };
        if row.j % 2 == 0 {
            if val >= base {
                fail(ClaimInequality::Even1);
            }
            if !(val.floor().is_zero() && base.floor().is_zero()) {
                fail(ClaimInequality::Even2);
            }
        } else {
            if val <= base {
                fail(ClaimInequality::Odd1);
            }
            if is_irrelevant_chain(&g, row.index as usize) {
                report.irrelevant_rows += 1;
            } else if Rational::new(row.p, row.p - row.q).floor() < base_inv_floor {
                fail(ClaimInequality::Odd2);
            }
        }
    }
    Ok(report)
}
