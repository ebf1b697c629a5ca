//! The combined per-sequence report and its text rendering.

use g2a_core::classification::{
    del_pezzo_report, kawamata_classify, table_classify, DelPezzoReport, SingularityClass,
    TableParameters, TableRow,
};
use g2a_core::g2a_actions::{g2a_exists, moduli_description, ModuliDescription, ModuliKind};
use g2a_core::key_sequence::{is_algebraic, is_normal_form, is_primitive, validate};
use g2a_core::resolution::{dual_graph_schematic, newton_pairs, DualGraphSchematic, NewtonPair};
use g2a_core::surface_invariants::{k_bar_x, m_omega};
use g2a_core::{Error, KeySequence, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub class: SingularityClass,
    pub matched_row: Option<TableRow>,
    pub parameters: Option<TableParameters>,
    pub g2a: bool,
    pub del_pezzo: bool,
    pub ade_types: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceReport {
    pub key_sequence: Vec<i64>,
    pub valid: bool,
    pub primitive: bool,
    pub algebraic: bool,
    pub normal_form: bool,
    pub k_bar_x: Option<i64>,
    pub m_omega: Option<i64>,
    pub g2a_exists: Option<bool>,
    pub moduli: Option<ModuliDescription>,
    pub newton_pairs: Option<Vec<NewtonPair>>,
    pub schematic: Option<DualGraphSchematic>,
    pub classification: Option<ClassificationRecord>,
    pub del_pezzo: Option<DelPezzoReport>,
    pub notes: Vec<String>,
}

impl SurfaceReport {
    /// Valid, primitive, algebraic and in normal form.
    pub fn is_surface(&self) -> bool {
        self.valid && self.primitive && self.algebraic && self.normal_form
    }
}

pub const P2_NOTE: &str = "(1,1) is the projective plane: its automorphism group is PGL(3, C) and it is treated separately";

pub fn classification_record(ks: &KeySequence) -> Result<ClassificationRecord> {
    let class = kawamata_classify(&dual_graph_schematic(&newton_pairs(ks)?));
    let table = table_classify(ks)?;
    if let Some(m) = &table {
        if m.class != class {
            return Err(Error::Internal(format!(
                "{ks}: table gives {:?}, dual graph gives {class:?}",
                m.class
            )));
        }
    } else if class != SingularityClass::Neither {
        return Err(Error::Internal(format!(
            "{ks}: no table row but dual graph gives {class:?}"
        )));
    }
    let dp = del_pezzo_report(ks)?;
    Ok(ClassificationRecord {
        class,
        matched_row: table.as_ref().map(|m| m.row),
        parameters: table.as_ref().map(|m| m.parameters),
        g2a: g2a_exists(ks)?,
        del_pezzo: dp.is_del_pezzo_with_g2a,
        ade_types: dp.ade_types,
    })
}

/// Builds the report, stopping at the first failed stage. Only internal
/// inconsistencies are returned as errors.
pub fn surface_report(omegas: &[i64]) -> Result<SurfaceReport> {
    let mut r = SurfaceReport {
        key_sequence: omegas.to_vec(),
        valid: false,
        primitive: false,
        algebraic: false,
        normal_form: false,
        k_bar_x: None,
        m_omega: None,
        g2a_exists: None,
        moduli: None,
        newton_pairs: None,
        schematic: None,
        classification: None,
        del_pezzo: None,
        notes: Vec::new(),
    };
    let ks = match validate(omegas) {
        Ok(ks) => ks,
        Err(e) => {
            r.notes.push(format!("validate: {e}"));
            return Ok(r);
        }
    };
    r.valid = true;
    r.primitive = is_primitive(&ks);
    let alg = is_algebraic(&ks);
    r.algebraic = alg.algebraic;
    r.normal_form = is_normal_form(&ks);
    if !r.primitive {
        r.notes.push("primitive: some ω_k is not positive".into());
    }
    if let Some(k) = alg.witness {
        r.notes.push(format!("algebraic: β_{{{k},0}} < 0"));
    }
    if !r.normal_form {
        r.notes
            .push("normal form: the sequence is not in normal form".into());
    }
    if !r.is_surface() {
        return Ok(r);
    }
    r.k_bar_x = Some(k_bar_x(&ks));
    r.m_omega = Some(m_omega(&ks)?);
    let g2a = g2a_exists(&ks)?;
    r.g2a_exists = Some(g2a);
    if g2a {
        match moduli_description(&ks) {
            Ok(m) => r.moduli = Some(m),
            Err(Error::IsP2) => r.notes.push(P2_NOTE.into()),
            Err(e) => return Err(e),
        }
    }
    let np = newton_pairs(&ks)?;
    r.schematic = Some(dual_graph_schematic(&np));
    r.newton_pairs = Some(np.pairs);
    let dp = del_pezzo_report(&ks)?;
    if let Some(note) = &dp.discrepancy {
        r.notes.push(format!("discrepancy: {note}"));
    }
    r.classification = Some(classification_record(&ks)?);
    r.del_pezzo = Some(dp);
    Ok(r)
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn render_moduli(m: &ModuliDescription) -> String {
    match m.kind {
        ModuliKind::Point => "Point".into(),
        ModuliKind::TwoPoints => "TwoPoints".into(),
        ModuliKind::LineModRoots => format!(
            "LineModRoots({}, {})",
            m.root_order.unwrap_or_default(),
            m.exponent.unwrap_or_default()
        ),
    }
}

pub fn render_pairs(pairs: &[NewtonPair]) -> String {
    pairs
        .iter()
        .map(|p| format!("({},{})", p.q, p.p))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Short description of the components of the resolution graph.
pub fn render_shape(s: &DualGraphSchematic) -> String {
    let mut parts = Vec::new();
    match s.l() {
        0 => {
            if !s.spine_deltas[0].is_empty() {
                parts.push(format!("chain({})", s.spine_deltas[0].delta));
            }
        }
        1 => {
            let mut arms: Vec<i64> = [s.spine_deltas[0], s.branch_deltas[0], s.spine_deltas[1]]
                .iter()
                .filter(|c| !c.is_empty())
                .map(|c| c.delta)
                .collect();
            arms.sort_unstable();
            let list = arms
                .iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
                .join(",");
            parts.push(if arms.len() == 3 {
                format!("star {{{list}}}")
            } else {
                format!("chain with arms {{{list}}}")
            });
        }
        l => parts.push(format!("tree with {l} branch points")),
    }
    if let Some(c) = &s.extra_chain {
        parts.push(format!("chain({})", c.delta));
    }
    if parts.is_empty() {
        "smooth".into()
    } else {
        parts.join(" ⊔ ")
    }
}

pub fn render_schematic(s: &DualGraphSchematic) -> String {
    let list = |v: &[g2a_core::resolution::ChainDelta]| {
        v.iter()
            .map(|c| c.delta.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    format!(
        "spine Δ [{}], branch Δ [{}], extra chain {}",
        list(&s.spine_deltas),
        list(&s.branch_deltas),
        s.extra_chain
            .map_or("none".to_string(), |c| format!("Δ {}", c.delta))
    )
}

pub fn render_class(c: &ClassificationRecord) -> String {
    let mut s = c.class.to_string();
    if let (Some(row), Some(p)) = (c.matched_row, c.parameters) {
        let params = match p {
            TableParameters::Pair { p, q } => format!("p = {p}, q = {q}"),
            TableParameters::Triple { p1, q1, p2, r } => {
                format!("p_1 = {p1}, q_1 = {q1}, p_2 = {p2}, r = {r}")
            }
            TableParameters::Single { p } => format!("p = {p}"),
            TableParameters::None => String::new(),
        };
        s.push_str(&format!(", family {}", row.template()));
        if !params.is_empty() {
            s.push_str(&format!(" with {params}"));
        }
    }
    s
}

pub fn render_report(r: &SurfaceReport) -> String {
    let seq = r
        .key_sequence
        .iter()
        .map(|w| w.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let mut out = vec![format!("key sequence: ({seq})")];
    out.push(format!(
        "valid: {}, primitive: {}, algebraic: {}, normal form: {}",
        yes_no(r.valid),
        yes_no(r.primitive),
        yes_no(r.algebraic),
        yes_no(r.normal_form)
    ));
    if let Some(k) = r.k_bar_x {
        out.push(format!("k_X: {k}"));
    }
    if let Some(m) = r.m_omega {
        out.push(format!("m_omega: {m}"));
    }
    if let Some(g) = r.g2a_exists {
        out.push(format!("G_a^2-structure: {}", yes_no(g)));
    }
    if let Some(m) = &r.moduli {
        out.push(format!("moduli: {}", render_moduli(m)));
    }
    if let Some(p) = &r.newton_pairs {
        out.push(format!("newton pairs: {}", render_pairs(p)));
    }
    if let Some(s) = &r.schematic {
        out.push(format!(
            "resolution: {} ({})",
            render_shape(s),
            render_schematic(s)
        ));
    }
    if let Some(c) = &r.classification {
        out.push(format!("singularities: {}", render_class(c)));
    }
    if let Some(d) = &r.del_pezzo {
        if d.is_del_pezzo_with_g2a {
            out.push(format!(
                "del Pezzo with G_a^2-structure: yes, [{}]",
                d.ade_types.join(", ")
            ));
        } else {
            out.push("del Pezzo with G_a^2-structure: no".into());
        }
    }
    for n in &r.notes {
        out.push(format!("note: {n}"));
    }
    out.join("\n") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_325() {
        let r = surface_report(&[3, 2, 5]).unwrap();
        assert!(r.is_surface());
        assert_eq!(
            (r.k_bar_x, r.m_omega, r.g2a_exists),
            (Some(-5), Some(1), Some(true))
        );
        assert_eq!(
            render_moduli(r.moduli.as_ref().unwrap()),
            "LineModRoots(2, 3)"
        );
        assert_eq!(
            r.classification.as_ref().unwrap().class,
            SingularityClass::LogTerminal
        );
        assert_eq!(r.del_pezzo.as_ref().unwrap().ade_types, vec!["A_4"]);
    }

    #[test]
    fn shapes() {
        let shape =
            |v: &[i64]| render_shape(surface_report(v).unwrap().schematic.as_ref().unwrap());
        assert_eq!(shape(&[3, 2, 4]), "star {2,2,3}");
        assert_eq!(shape(&[5, 3]), "chain(3) ⊔ chain(5)");
        assert_eq!(shape(&[2, 1]), "chain(2)");
        assert_eq!(shape(&[1, 1]), "smooth");
    }

    #[test]
    fn stages() {
        let r = surface_report(&[2, 3, 7]).unwrap();
        assert!(!r.valid);
        let r = surface_report(&[8, 6, 5, 1]).unwrap();
        assert!(r.valid && !r.algebraic);
        assert!(r.notes.iter().any(|n| n.contains("β_{2,0}")));
        let r = surface_report(&[3, 2, 4]).unwrap();
        assert!(r.notes.iter().any(|n| n.starts_with("discrepancy")));
        let r = surface_report(&[1, 1]).unwrap();
        assert!(r.notes.iter().any(|n| n.contains("PGL(3, C)")));
    }
}
