//! Command implementations. Each returns an exit code and the text to print.

use g2a_core::g2a_actions::{
    action_terms, inject_fault, tau_family, tau_lambda, verify_action_axioms, AxiomReport, Param,
};
use g2a_core::key_sequence::{
    is_algebraic, normal_form_report, parse_omegas, validate, NormalFailure,
};
use g2a_core::resolution::{
    continued_fraction, dual_graph_schematic, monomial_resolution_graph, newton_pairs,
};
use g2a_core::surface_invariants::theta_equivalent;
use g2a_core::symbolic::Rational;
use g2a_core::{Error, KeySequence};
use serde::Serialize;
use serde_json::json;

use crate::corpus::surfaces;
use crate::report::{
    classification_record, render_class, render_pairs, render_report, render_schematic,
    render_shape, surface_report, yes_no,
};

pub const OK: i32 = 0;
pub const INVALID: i32 = 1;
pub const INTERNAL: i32 = 2;

pub const MAX_ENUMERATE_OMEGA0: i64 = 200;
pub const MAX_ENUMERATE_LEN: usize = 8;
pub const MAX_VERIFY_M: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { code: OK, output }
    }

    fn invalid(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: INVALID,
            output: format!("error: {msg}\n"),
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Internal(_) | Error::Reconstruction(_) => INTERNAL,
        _ => INVALID,
    }
}

fn from_error(e: Error) -> Outcome {
    Outcome {
        code: exit_code(&e),
        output: format!("error: {e}\n"),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn parse_sequence(text: &str) -> Result<KeySequence, Outcome> {
    let v = parse_omegas(text).map_err(Outcome::invalid)?;
    validate(&v).map_err(Outcome::invalid)
}

fn describe_failure(f: &NormalFailure) -> String {
    let mut s = format!("{:?}", f.condition);
    if let Some(b) = &f.beta {
        s.push_str(&format!(" at β = {b}"));
    }
    if let Some(i) = f.index {
        s.push_str(&format!(", i = {i}"));
    }
    s
}

pub fn cmd_validate(seq: &str, json: bool) -> Outcome {
    let v = match parse_omegas(seq) {
        Ok(v) => v,
        Err(e) => return Outcome::invalid(e),
    };
    let ks = match validate(&v) {
        Ok(ks) => ks,
        Err(e) => {
            let output = if json {
                to_json(&json!({"key_sequence": v, "valid": false, "error": e.to_string()}))
            } else {
                format!("invalid key sequence: {e}\n")
            };
            return Outcome {
                code: INVALID,
                output,
            };
        }
    };
    let alg = is_algebraic(&ks);
    let nf = normal_form_report(&ks);
    let primitive = g2a_core::key_sequence::is_primitive(&ks);
    if json {
        return Outcome::ok(to_json(&json!({
            "key_sequence": v,
            "valid": true,
            "primitive": primitive,
            "algebraic": alg.algebraic,
            "algebraic_witness": alg.witness,
            "normal_form": nf.is_normal,
            "normal_case": nf.case,
            "normal_failures": nf.failures,
        })));
    }
    let mut out = format!(
        "{ks}: valid key sequence\nprimitive: {}\n",
        yes_no(primitive)
    );
    match alg.witness {
        None => out.push_str("algebraic: yes\n"),
        Some(k) => out.push_str(&format!("algebraic: no (β_{{{k},0}} < 0)\n")),
    }
    if nf.is_normal {
        out.push_str(&format!("normal form: yes ({:?})\n", nf.case));
    } else {
        let f: Vec<String> = nf.failures.iter().map(describe_failure).collect();
        out.push_str(&format!("normal form: no ({})\n", f.join("; ")));
    }
    Outcome::ok(out)
}

pub fn cmd_analyze(seq: &str, json: bool) -> Outcome {
    let v = match parse_omegas(seq) {
        Ok(v) => v,
        Err(e) => return Outcome::invalid(e),
    };
    match surface_report(&v) {
        Ok(r) => Outcome {
            code: if r.is_surface() { OK } else { INVALID },
            output: if json { to_json(&r) } else { render_report(&r) },
        },
        Err(e) => from_error(e),
    }
}

pub fn cmd_classify(seq: &str, json: bool) -> Outcome {
    let ks = match parse_sequence(seq) {
        Ok(ks) => ks,
        Err(o) => return o,
    };
    match classification_record(&ks) {
        Ok(c) if json => Outcome::ok(to_json(&c)),
        Ok(c) => {
            let mut out = format!(
                "{ks}: {}\nG_a^2-structure: {}\n",
                render_class(&c),
                yes_no(c.g2a)
            );
            if c.del_pezzo {
                out.push_str(&format!(
                    "del Pezzo with G_a^2-structure: [{}]\n",
                    c.ade_types.join(", ")
                ));
            }
            Outcome::ok(out)
        }
        Err(e) => from_error(e),
    }
}

/// A rational value, or otherwise a symbol name.
pub fn parse_param(text: &str) -> Result<Param, String> {
    let t = text.trim();
    if let Ok(v) = t.parse::<Rational>() {
        return Ok(Param::Value(v));
    }
    let reserved = ["t1", "t2", "x", "y", "t1'", "t2'"];
    if t.is_empty()
        || reserved.contains(&t)
        || t.chars()
            .any(|c| c.is_whitespace() || "+-*/^()·,".contains(c))
    {
        return Err(format!(
            "`{text}` is neither a rational nor a usable symbol name"
        ));
    }
    Ok(Param::Symbol(t.to_string()))
}

pub fn cmd_action(seq: &str, lambda: &str, json: bool) -> Outcome {
    let ks = match parse_sequence(seq) {
        Ok(ks) => ks,
        Err(o) => return o,
    };
    let lambda = match parse_param(lambda) {
        Ok(p) => p,
        Err(e) => return Outcome::invalid(e),
    };
    let fam = match tau_lambda(&ks, lambda.clone()) {
        Ok(f) => f,
        Err(e) => return from_error(e),
    };
    if json {
        return Outcome::ok(to_json(&json!({
            "key_sequence": ks,
            "m": fam.m,
            "lambda": lambda.to_string(),
            "rendering": fam.render(),
            "x_terms": action_terms(&fam.map.x),
            "y_terms": action_terms(&fam.map.y),
        })));
    }
    Outcome::ok(format!("{}\n", fam.render()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyTarget {
    Sequence(String),
    MaxM(usize),
}

fn residual_text(r: &AxiomReport) -> String {
    let parts = [
        ("identity x", &r.identity_residual.0),
        ("identity y", &r.identity_residual.1),
        ("composition x", &r.composition_residual.0),
        ("composition y", &r.composition_residual.1),
    ];
    parts
        .iter()
        .filter(|(_, p)| !p.is_zero())
        .map(|(name, p)| format!("{name} residual: {p}"))
        .collect::<Vec<_>>()
        .join("; ")
}

pub fn cmd_verify_action(target: &VerifyTarget, fault: bool, json: bool) -> Outcome {
    let lambda = Param::symbol("λ");
    let families = match target {
        VerifyTarget::Sequence(seq) => {
            let ks = match parse_sequence(seq) {
                Ok(ks) => ks,
                Err(o) => return o,
            };
            match tau_lambda(&ks, lambda) {
                Ok(f) => vec![f],
                Err(e) => return from_error(e),
            }
        }
        VerifyTarget::MaxM(m) if *m > MAX_VERIFY_M => {
            return Outcome::invalid(format!("--max-m is limited to {MAX_VERIFY_M}"));
        }
        VerifyTarget::MaxM(m) => match (0..=*m).map(|i| tau_family(i, lambda.clone())).collect() {
            Ok(v) => v,
            Err(e) => return from_error(e),
        },
    };
    let mut lines = Vec::new();
    let mut records = Vec::new();
    let mut all_pass = true;
    for fam in families {
        let fam = if fault { inject_fault(&fam) } else { fam };
        let r = match verify_action_axioms(&fam) {
            Ok(r) => r,
            Err(e) => return from_error(e),
        };
        all_pass &= r.holds;
        let residual = residual_text(&r);
        if r.holds {
            lines.push(format!("m = {}: pass", fam.m));
        } else {
            lines.push(format!("m = {}: FAIL ({residual})", fam.m));
        }
        records.push(json!({"m": fam.m, "pass": r.holds, "residual": residual}));
    }
    let output = if json {
        to_json(&json!({"fault_injected": fault, "results": records}))
    } else {
        lines.join("\n") + "\n"
    };
    let code = match (all_pass, fault) {
        (true, _) => OK,
        (false, true) => INVALID,
        (false, false) => INTERNAL,
    };
    Outcome { code, output }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResolveTarget {
    Sequence(String),
    Monomial(String),
}

fn parse_fraction(text: &str) -> Result<(i64, i64), String> {
    let bad = || format!("`{text}` is not of the form p/q");
    let (p, q) = text.split_once('/').ok_or_else(bad)?;
    Ok((
        p.trim().parse().map_err(|_| bad())?,
        q.trim().parse().map_err(|_| bad())?,
    ))
}

pub fn cmd_resolve(target: &ResolveTarget, dot: bool, json: bool) -> Outcome {
    match target {
        ResolveTarget::Sequence(seq) => {
            let ks = match parse_sequence(seq) {
                Ok(ks) => ks,
                Err(o) => return o,
            };
            let np = match newton_pairs(&ks) {
                Ok(np) => np,
                Err(e) => return from_error(e),
            };
            let s = dual_graph_schematic(&np);
            if dot {
                return Outcome::ok(s.to_dot());
            }
            if json {
                return Outcome::ok(to_json(&json!({
                    "key_sequence": ks,
                    "newton_pairs": np.pairs,
                    "schematic": s,
                    "shape": render_shape(&s),
                })));
            }
            Outcome::ok(format!(
                "{ks}\nnewton pairs: {}\n{}\nshape: {}\n",
                render_pairs(&np.pairs),
                render_schematic(&s),
                render_shape(&s)
            ))
        }
        ResolveTarget::Monomial(frac) => {
            let (p, q) = match parse_fraction(frac) {
                Ok(x) => x,
                Err(e) => return Outcome::invalid(e),
            };
            let (cf, g) = match continued_fraction(p, q)
                .and_then(|cf| Ok((cf, monomial_resolution_graph(p, q)?)))
            {
                Ok(x) => x,
                Err(e) => return from_error(e),
            };
            if dot {
                return Outcome::ok(g.to_dot(&format!("{p}/{q}")));
            }
            let vertices: Vec<String> = g
                .vertices
                .iter()
                .map(|(l, w)| format!("{l} ({w})"))
                .collect();
            if json {
                let mut edges = g.edges.clone();
                edges.sort_unstable();
                return Outcome::ok(to_json(&json!({
                    "p": p,
                    "q": q,
                    "continued_fraction": cf.terms,
                    "vertices": g.vertices,
                    "edges": edges,
                })));
            }
            let terms: Vec<String> = cf.terms.iter().map(|t| t.to_string()).collect();
            Outcome::ok(format!(
                "{p}/{q} = [{}]\ncurves: {}\n",
                terms.join(", "),
                vertices.join(", ")
            ))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Filter {
    G2a,
    DelPezzo,
    Lt,
    Lc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerationRecord {
    pub key_sequence: KeySequence,
    pub class: g2a_core::classification::SingularityClass,
    pub matched_row: Option<g2a_core::classification::TableRow>,
    pub g2a: bool,
    pub del_pezzo: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct EnumerationSummary {
    pub enumerated: usize,
    pub shown: usize,
    pub log_terminal: usize,
    pub log_canonical_not_lt: usize,
    pub neither: usize,
    pub g2a: usize,
    pub del_pezzo: usize,
}

pub fn enumerate_records(
    max_omega0: i64,
    max_len: usize,
    max_entry: Option<i64>,
    filter: Option<Filter>,
) -> g2a_core::Result<(Vec<EnumerationRecord>, EnumerationSummary)> {
    use g2a_core::classification::SingularityClass as C;
    let mut summary = EnumerationSummary::default();
    let mut records = Vec::new();
    for ks in surfaces(max_omega0, max_len, max_entry) {
        let c = classification_record(&ks)?;
        summary.enumerated += 1;
        match c.class {
            C::LogTerminal => summary.log_terminal += 1,
            C::LogCanonicalNotLT => summary.log_canonical_not_lt += 1,
            C::Neither => summary.neither += 1,
        }
        summary.g2a += c.g2a as usize;
        summary.del_pezzo += c.del_pezzo as usize;
        let keep = match filter {
            None => true,
            Some(Filter::G2a) => c.g2a,
            Some(Filter::DelPezzo) => c.del_pezzo,
            Some(Filter::Lt) => c.class == C::LogTerminal,
            Some(Filter::Lc) => c.class == C::LogCanonicalNotLT,
        };
        if keep {
            records.push(EnumerationRecord {
                key_sequence: ks,
                class: c.class,
                matched_row: c.matched_row,
                g2a: c.g2a,
                del_pezzo: c.del_pezzo,
            });
        }
    }
    summary.shown = records.len();
    Ok((records, summary))
}

pub fn cmd_enumerate(
    max_omega0: i64,
    max_len: usize,
    max_entry: Option<i64>,
    filter: Option<Filter>,
    json: bool,
) -> Outcome {
    if !(1..=MAX_ENUMERATE_OMEGA0).contains(&max_omega0) {
        return Outcome::invalid(format!(
            "--max-omega0 must lie in 1..={MAX_ENUMERATE_OMEGA0}"
        ));
    }
    if !(2..=MAX_ENUMERATE_LEN).contains(&max_len) {
        return Outcome::invalid(format!("--max-len must lie in 2..={MAX_ENUMERATE_LEN}"));
    }
    let (records, summary) = match enumerate_records(max_omega0, max_len, max_entry, filter) {
        Ok(x) => x,
        Err(e) => return from_error(e),
    };
    if json {
        return Outcome::ok(to_json(&json!({"records": records, "summary": summary})));
    }
    let mut out = String::new();
    for r in &records {
        let row = r
            .matched_row
            .map_or("-".to_string(), |row| row.template().to_string());
        out.push_str(&format!(
            "{}\t{:?}\t{}\tg2a={}\tdel_pezzo={}\n",
            r.key_sequence, r.class, row, r.g2a, r.del_pezzo
        ));
    }
    out.push_str(&format!(
        "enumerated {}, shown {}: {} log terminal, {} log canonical not log terminal, {} neither, {} with G_a^2, {} del Pezzo\n",
        summary.enumerated,
        summary.shown,
        summary.log_terminal,
        summary.log_canonical_not_lt,
        summary.neither,
        summary.g2a,
        summary.del_pezzo
    ));
    Outcome::ok(out)
}

fn parse_rationals(text: &str) -> Result<Vec<Rational>, String> {
    text.split(',')
        .map(|s| s.trim().parse::<Rational>().map_err(|e| e.to_string()))
        .collect()
}

pub fn cmd_theta_equiv(seq: &str, theta: &str, theta_prime: &str, json: bool) -> Outcome {
    let ks = match parse_sequence(seq) {
        Ok(ks) => ks,
        Err(o) => return o,
    };
    let (t, tp) = match (parse_rationals(theta), parse_rationals(theta_prime)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return Outcome::invalid(e),
    };
    let v = match theta_equivalent(&ks, &t, &tp) {
        Ok(v) => v,
        Err(e) => return from_error(e),
    };
    if json {
        return Outcome::ok(to_json(&v));
    }
    let rows: Vec<String> = v
        .exponent_matrix
        .iter()
        .map(|(a, b)| format!("({a}, {b})"))
        .collect();
    Outcome::ok(format!(
        "equivalent: {}\nexponent rows (-β_i0, μ_i): {}\n",
        yes_no(v.equivalent),
        rows.join(" ")
    ))
}
