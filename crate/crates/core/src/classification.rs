//! Log terminal / log canonical classification, by dual-graph patterns and by
//! matching the essential subsequence against the known families, plus the
//! del Pezzo check.

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::g2a_actions::{g2a_exists, moduli_description, ModuliDescription};
use crate::key_sequence::{
    essential_subsequence, is_algebraic, is_normal_form, is_primitive, KeySequence,
};
use crate::resolution::{delta_of_chain, DualGraphSchematic, WeightedGraph};

/// Ordered from best to worst, so the class of a union is the maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SingularityClass {
    LogTerminal,
    LogCanonicalNotLT,
    Neither,
}

impl std::fmt::Display for SingularityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SingularityClass::LogTerminal => "log terminal",
            SingularityClass::LogCanonicalNotLT => "log canonical, not log terminal",
            SingularityClass::Neither => "neither",
        })
    }
}

/// Class of a star whose arms have the given Δ values (Δ = 1 arms dropped).
pub fn classify_star(arms: &[i64]) -> SingularityClass {
    let mut a: Vec<i64> = arms.iter().copied().filter(|&d| d != 1).collect();
    a.sort_unstable();
    match a.as_slice() {
        [] | [_] | [_, _] => SingularityClass::LogTerminal,
        [2, 2, _] | [2, 3, 3] | [2, 3, 4] | [2, 3, 5] => SingularityClass::LogTerminal,
        [3, 3, 3] | [2, 4, 4] | [2, 3, 6] => SingularityClass::LogCanonicalNotLT,
        _ => SingularityClass::Neither,
    }
}

pub fn kawamata_classify(s: &DualGraphSchematic) -> SingularityClass {
    // The extra chain is its own component, and chains are log terminal.
    match s.l() {
        0 => SingularityClass::LogTerminal,
        1 => classify_star(&[
            s.spine_deltas[0].delta,
            s.branch_deltas[0].delta,
            s.spine_deltas[1].delta,
        ]),
        _ => SingularityClass::Neither,
    }
}

/// Pattern match on an explicit weighted dual graph, component by component.
pub fn kawamata_classify_tree(g: &WeightedGraph) -> SingularityClass {
    g.components()
        .iter()
        .map(|c| classify_component(g, c))
        .max()
        .unwrap_or(SingularityClass::LogTerminal)
}

/// Walks from `start` away from `from` until a vertex of degree ≠ 2; returns the visited vertices.
fn arm(g: &WeightedGraph, from: usize, start: usize) -> Vec<usize> {
    let mut out = vec![start];
    let (mut prev, mut cur) = (from, start);
    while g.degree(cur) == 2 {
        let next = g
            .neighbours(cur)
            .into_iter()
            .find(|&v| v != prev)
            .expect("degree two");
        out.push(next);
        prev = cur;
        cur = next;
    }
    out
}

fn is_minus_two_leaf(g: &WeightedGraph, v: usize) -> bool {
    g.degree(v) == 1 && g.weight(v) == -2
}

fn classify_component(g: &WeightedGraph, c: &[usize]) -> SingularityClass {
    let edges: usize = c.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
    if edges + 1 != c.len() {
        return SingularityClass::Neither;
    }
    let nodes: Vec<usize> = c.iter().copied().filter(|&v| g.degree(v) >= 3).collect();
    let arm_delta = |from: usize, start: usize| {
        let w: Vec<i64> = arm(g, from, start).iter().map(|&v| g.weight(v)).collect();
        delta_of_chain(&w).to_i64().unwrap_or(i64::MAX)
    };
    match nodes.as_slice() {
        [] => SingularityClass::LogTerminal,
        [v] if g.degree(*v) == 3 => {
            let arms: Vec<i64> = g
                .neighbours(*v)
                .into_iter()
                .map(|u| arm_delta(*v, u))
                .collect();
            classify_star(&arms)
        }
        [v] if g.degree(*v) == 4
            && g.neighbours(*v)
                .into_iter()
                .all(|u| is_minus_two_leaf(g, u)) =>
        {
            SingularityClass::LogCanonicalNotLT
        }
        [a, b] if g.degree(*a) == 3 && g.degree(*b) == 3 => {
            let two_leaves = |v: usize| {
                g.neighbours(v)
                    .into_iter()
                    .filter(|&u| is_minus_two_leaf(g, u))
                    .count()
                    == 2
            };
            let joined = g
                .path(*a, *b)
                .is_some_and(|p| p[1..p.len() - 1].iter().all(|&u| g.degree(u) == 2));
            if two_leaves(*a) && two_leaves(*b) && joined {
                SingularityClass::LogCanonicalNotLT
            } else {
                SingularityClass::Neither
            }
        }
        _ => SingularityClass::Neither,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TableRow {
    /// (1,1)
    T1Plane,
    /// (p,q)
    T1Pair,
    /// (p_1p_2, q_1p_2, q_1p_1p_2 − 1)
    T1R1,
    /// (p_1p_2, 2p_2, 2p_1p_2 − 2)
    T1Q2R2,
    /// (p_1p_2, 2p_2, 2p_1p_2 − r), (p_1, r) ∈ {(3,3), (3,4), (3,5), (5,3)}
    T1Q2Exceptional,
    /// (p_1p_2, 3p_2, 3p_1p_2 − 2), p_1 ∈ {4, 5}
    T1Q3R2,
    /// (3p, 2p, 6p − 6)
    T2,
}

impl TableRow {
    pub fn template(&self) -> &'static str {
        match self {
            TableRow::T1Plane => "(1,1)",
            TableRow::T1Pair => "(p,q)",
            TableRow::T1R1 => "(p_1p_2, q_1p_2, q_1p_1p_2-1)",
            TableRow::T1Q2R2 => "(p_1p_2, 2p_2, 2p_1p_2-2)",
            TableRow::T1Q2Exceptional => "(p_1p_2, 2p_2, 2p_1p_2-r)",
            TableRow::T1Q3R2 => "(p_1p_2, 3p_2, 3p_1p_2-2)",
            TableRow::T2 => "(3p, 2p, 6p-6)",
        }
    }

    pub fn class(&self) -> SingularityClass {
        match self {
            TableRow::T2 => SingularityClass::LogCanonicalNotLT,
            _ => SingularityClass::LogTerminal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableParameters {
    Pair { p: i64, q: i64 },
    Triple { p1: i64, q1: i64, p2: i64, r: i64 },
    Single { p: i64 },
    None,
}

impl TableParameters {
    /// Substitutes back into the row template.
    pub fn instantiate(&self, row: TableRow) -> Vec<i64> {
        match (*self, row) {
            (TableParameters::None, _) => vec![1, 1],
            (TableParameters::Pair { p, q }, _) => vec![p, q],
            (TableParameters::Single { p }, _) => vec![3 * p, 2 * p, 6 * p - 6],
            (TableParameters::Triple { p1, q1, p2, r }, _) => {
                vec![p1 * p2, q1 * p2, q1 * p1 * p2 - r]
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableMatch {
    pub row: TableRow,
    pub parameters: TableParameters,
    pub g2a_criterion: bool,
    pub class: SingularityClass,
}

fn require_classifiable(ks: &KeySequence) -> Result<()> {
    if !is_primitive(ks) {
        return Err(Error::NonPrimitive);
    }
    if !is_algebraic(ks).algebraic {
        return Err(Error::NotAlgebraic);
    }
    if !is_normal_form(ks) {
        return Err(Error::NotNormalForm);
    }
    Ok(())
}

fn matched(row: TableRow, parameters: TableParameters, g2a_criterion: bool) -> Option<TableMatch> {
    Some(TableMatch {
        row,
        parameters,
        g2a_criterion,
        class: row.class(),
    })
}

/// Solves the essential subsequence against each family in order; `None` when
/// nothing matches.
pub fn table_classify(ks: &KeySequence) -> Result<Option<TableMatch>> {
    require_classifiable(ks)?;
    let e = essential_subsequence(ks);
    let w = e.omegas();
    Ok(match *w {
        [1, 1] => matched(TableRow::T1Plane, TableParameters::None, true),
        [p, q] if p > q && q >= 1 && p.gcd(&q) == 1 => {
            matched(TableRow::T1Pair, TableParameters::Pair { p, q }, true)
        }
        [w0, w1, w2] => match_triple(w0, w1, w2),
        _ => None,
    })
}

fn match_triple(w0: i64, w1: i64, w2: i64) -> Option<TableMatch> {
    let p2 = w0.gcd(&w1);
    let (p1, q1) = (w0 / p2, w1 / p2);
    let r = q1 * p1 * p2 - w2;
    let params = TableParameters::Triple { p1, q1, p2, r };
    if r == 1 {
        return matched(TableRow::T1R1, params, true);
    }
    if q1 == 2 && r == 2 && p1 % 2 == 1 && p2 % 2 == 1 {
        return matched(TableRow::T1Q2R2, params, true);
    }
    if q1 == 2 && [(3, 3), (3, 4), (3, 5), (5, 3)].contains(&(p1, r)) && p2.gcd(&r) == 1 {
        let g2a = match (p1, r) {
            _ if p2 == 1 => false,
            (3, 5) => p2 >= 3,
            _ => p2 >= 2,
        };
        return matched(TableRow::T1Q2Exceptional, params, g2a);
    }
    if q1 == 3 && r == 2 && (p1 == 4 || p1 == 5) && p2.gcd(&2) == 1 {
        return matched(TableRow::T1Q3R2, params, true);
    }
    if p1 == 3 && q1 == 2 && r == 6 && p2 >= 2 && p2.gcd(&6) == 1 {
        return matched(TableRow::T2, TableParameters::Single { p: p2 }, p2 >= 3);
    }
    None
}

pub const DEL_PEZZO_SEQUENCES: [&[i64]; 4] = [&[2, 1], &[3, 2], &[3, 2, 5], &[3, 2, 4]];

const D5_NOTE: &str = "m_omega = 0 gives a single G2a-structure here, while the published list \
                       claims a one dimensional moduli for this surface";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DelPezzoReport {
    pub is_del_pezzo_with_g2a: bool,
    pub ade_types: Vec<String>,
    pub moduli_summary: Option<ModuliDescription>,
    pub discrepancy: Option<String>,
}

fn ade_labels(w: &[i64]) -> Vec<String> {
    let labels: &[&str] = match w {
        [2, 1] => &["A_1"],
        [3, 2] => &["A_2", "A_1"],
        [3, 2, 5] => &["A_4"],
        [3, 2, 4] => &["D_5"],
        _ => &[],
    };
    labels.iter().map(|s| s.to_string()).collect()
}

pub fn del_pezzo_report(ks: &KeySequence) -> Result<DelPezzoReport> {
    require_classifiable(ks)?;
    let w = ks.omegas();
    let listed = DEL_PEZZO_SEQUENCES.contains(&w);
    let yes = listed && g2a_exists(ks)?;
    Ok(DelPezzoReport {
        is_del_pezzo_with_g2a: yes,
        ade_types: if yes { ade_labels(w) } else { Vec::new() },
        moduli_summary: if yes {
            Some(moduli_description(ks)?)
        } else {
            None
        },
        discrepancy: (yes && w == [3, 2, 4]).then(|| D5_NOTE.to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::g2a_actions::ModuliKind;
    use crate::key_sequence::validate;
    use crate::resolution::{dual_graph_schematic, newton_pairs};

    fn ks(v: &[i64]) -> KeySequence {
        validate(v).unwrap()
    }

    #[test]
    fn stars() {
        assert_eq!(classify_star(&[2, 3, 5]), SingularityClass::LogTerminal);
        assert_eq!(
            classify_star(&[2, 3, 6]),
            SingularityClass::LogCanonicalNotLT
        );
        assert_eq!(classify_star(&[2, 3, 7]), SingularityClass::Neither);
        assert_eq!(classify_star(&[7, 1, 9]), SingularityClass::LogTerminal);
        assert_eq!(classify_star(&[2, 2, 41]), SingularityClass::LogTerminal);
    }

    #[test]
    fn trees() {
        // D_4 tilde: four (−2) leaves on a (−2) node.
        let mut g = WeightedGraph::new();
        let c = g.add_vertex("c", -2);
        for i in 0..4 {
            let v = g.add_vertex(format!("l{i}"), -2);
            g.add_edge(c, v);
        }
        assert_eq!(
            kawamata_classify_tree(&g),
            SingularityClass::LogCanonicalNotLT
        );
        // E_8: arms of Δ 2, 3, 5.
        let mut g = WeightedGraph::new();
        let c = g.add_vertex("c", -2);
        for len in [1, 2, 4] {
            let mut prev = c;
            for i in 0..len {
                let v = g.add_vertex(format!("a{len}{i}"), -2);
                g.add_edge(prev, v);
                prev = v;
            }
        }
        assert_eq!(kawamata_classify_tree(&g), SingularityClass::LogTerminal);
        let extra = g.add_vertex("x", -7);
        let c2 = g.index_of("a43").unwrap();
        assert_eq!(kawamata_classify_tree(&g), SingularityClass::LogTerminal);
        g.add_edge(extra, c2);
        // arms become 2, 3 and a longer chain with Δ > 5
        assert_eq!(kawamata_classify_tree(&g), SingularityClass::Neither);
    }

    #[test]
    fn table_examples() {
        let m = table_classify(&ks(&[3, 2, 4])).unwrap().unwrap();
        assert_eq!(m.row, TableRow::T1Q2R2);
        assert_eq!(
            m.parameters,
            TableParameters::Triple {
                p1: 3,
                q1: 2,
                p2: 1,
                r: 2
            }
        );
        assert!(m.g2a_criterion);
        let m = table_classify(&ks(&[15, 10, 24])).unwrap().unwrap();
        assert_eq!(
            (m.row, m.class, m.g2a_criterion),
            (TableRow::T2, SingularityClass::LogCanonicalNotLT, true)
        );
        let m = table_classify(&ks(&[7, 3, 20])).unwrap().unwrap();
        assert_eq!(m.row, TableRow::T1R1);
        assert_eq!(
            m.parameters,
            TableParameters::Triple {
                p1: 7,
                q1: 3,
                p2: 1,
                r: 1
            }
        );
        for v in [&[3, 2, 4][..], &[15, 10, 24], &[7, 3, 20]] {
            let m = table_classify(&ks(v)).unwrap().unwrap();
            assert_eq!(m.parameters.instantiate(m.row), v);
        }
    }

    #[test]
    fn routes_agree_on_examples() {
        for v in [
            &[3, 2, 5][..],
            &[3, 2, 4],
            &[15, 10, 24],
            &[7, 3, 20],
            &[2, 1],
            &[5, 3, 13],
        ] {
            let k = ks(v);
            let kaw = kawamata_classify(&dual_graph_schematic(&newton_pairs(&k).unwrap()));
            let tab = table_classify(&k)
                .unwrap()
                .map(|m| m.class)
                .unwrap_or(SingularityClass::Neither);
            assert_eq!(kaw, tab, "{k}");
        }
    }

    #[test]
    fn del_pezzo() {
        let r = del_pezzo_report(&ks(&[2, 1])).unwrap();
        assert!(r.is_del_pezzo_with_g2a);
        assert_eq!(r.ade_types, vec!["A_1"]);
        assert_eq!(r.moduli_summary.unwrap().kind, ModuliKind::TwoPoints);
        let r = del_pezzo_report(&ks(&[3, 2, 5])).unwrap();
        assert_eq!(r.ade_types, vec!["A_4"]);
        assert_eq!(r.moduli_summary.unwrap().kind, ModuliKind::LineModRoots);
        let r = del_pezzo_report(&ks(&[3, 2, 4])).unwrap();
        assert_eq!(r.moduli_summary.unwrap().kind, ModuliKind::Point);
        assert!(r.discrepancy.is_some());
        assert!(
            !del_pezzo_report(&ks(&[5, 3, 13]))
                .unwrap()
                .is_del_pezzo_with_g2a
        );
    }
}
