//! Acceptance suite: one line per criterion, exit status 1 if any is red.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use g2a_cli::corpus::{for_each_valid, surfaces};
use g2a_cli::{cmd_action, enumerate_records, Filter};
use g2a_core::classification::{
    del_pezzo_report, kawamata_classify, table_classify, SingularityClass, TableParameters,
};
use g2a_core::g2a_actions::{
    g2a_exists, general_action, inject_fault, tau_family, tau_lambda, verify_action_axioms,
    ModuliKind, Param,
};
use g2a_core::key_sequence::{
    beta_expansion, essential_subsequence, is_algebraic, semigroup_member_bruteforce, validate,
    KeySequence,
};
use g2a_core::resolution::{
    continued_fraction, determinant, dual_graph_schematic, fractional_claim_check, m_e_table,
    monomial_resolution_graph, newton_pairs,
};
use g2a_core::surface_invariants::k_bar_x;
use g2a_core::symbolic::{Polynomial, Rational};
use num_integer::Integer;

/// Every criterion is an exact identity; the only tolerance is wall time.
const TIME_BUDGET: Duration = Duration::from_secs(60);
/// AC1 target, token for token.
const TAU_325: &str = "(x + λ(1/2·t1^2 + t1·y) + t2, y + t1)";
const AC2_TAU_MAX_M: usize = 5;
const AC2_GENERAL_MAX_M: usize = 4;
const AC3_MAX_OMEGA0: i64 = 6;
const AC3_MAX_LEN: usize = 3;
/// Corpus of AC4, AC5 and AC8.
const CORPUS_MAX_ENTRY: i64 = 60;
const CORPUS_MAX_LEN: usize = 4;
/// AC6: 1 ≤ ω_0 ≤ 30, |ω_k| ≤ 30 up to length 4, |ω_k| ≤ 20 at length 5.
const AC6_MAX_OMEGA0: i64 = 30;
const AC6_BOXES: [(usize, i64); 4] = [(2, 30), (3, 30), (4, 30), (5, 20)];
const AC7_CF_MAX_P: i64 = 200;
const AC7_UNIMODULAR_MAX_P: i64 = 60;
const AC7_CLAIM_MAX_P: i64 = 50;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn ac1() -> Verdict {
    let out = cmd_action("3,2,5", "λ", false);
    let rendered = out.output.trim_end();
    // Build the expected map directly and compare polynomials too.
    let ks = validate(&[3, 2, 5]).unwrap();
    let fam = tau_lambda(&ks, Param::symbol("λ")).unwrap();
    let vars = fam.map.vars().clone();
    let v = |s: &str| Polynomial::var(&vars, s).unwrap();
    let half = Rational::new(1, 2);
    let x = v("x") + v("λ") * ((v("t1") * v("t1")).scale(&half) + v("t1") * v("y")) + v("t2");
    let y = v("y") + v("t1");
    let same = fam.map.x == x && fam.map.y == y;
    verdict(
        out.code == 0 && rendered == TAU_325 && same,
        format!("rendered {rendered:?}, polynomial identity {same}"),
    )
}

fn ac2() -> Verdict {
    let lambda = Param::symbol("λ");
    let mut failures = Vec::new();
    let mut faults_caught = 0;
    let mut checks = 0;
    for m in 0..=AC2_TAU_MAX_M {
        let fam = tau_family(m, lambda.clone()).unwrap();
        checks += 1;
        if !verify_action_axioms(&fam).unwrap().holds {
            failures.push(format!("tau m={m}"));
        }
        let bad = verify_action_axioms(&inject_fault(&fam)).unwrap();
        faults_caught += (!bad.holds && !bad.composition_residual.0.is_zero()) as usize;
    }
    for m in 0..=AC2_GENERAL_MAX_M {
        let lambdas = (0..=m).map(|i| Param::symbol(&format!("l{i}"))).collect();
        let s = Param::symbol;
        let fam =
            general_action(m, lambdas, s("c1"), s("c2"), s("cb1"), s("cb2"), s("mu")).unwrap();
        checks += 1;
        if !verify_action_axioms(&fam).unwrap().holds {
            failures.push(format!("general m={m}"));
        }
        let bad = verify_action_axioms(&inject_fault(&fam)).unwrap();
        faults_caught += (!bad.holds && !bad.composition_residual.0.is_zero()) as usize;
    }
    verdict(
        failures.is_empty() && faults_caught == checks,
        format!("{checks} families exact, {faults_caught}/{checks} perturbations caught, failures {failures:?}"),
    )
}

fn ac3() -> Verdict {
    let (records, summary) =
        enumerate_records(AC3_MAX_OMEGA0, AC3_MAX_LEN, None, Some(Filter::DelPezzo)).unwrap();
    let got: Vec<(String, Vec<String>, ModuliKind, bool)> = records
        .iter()
        .map(|r| {
            let d = del_pezzo_report(&r.key_sequence).unwrap();
            (
                r.key_sequence.to_string(),
                d.ade_types,
                d.moduli_summary.unwrap().kind,
                d.discrepancy.is_some(),
            )
        })
        .collect();
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let mut want = vec![
        (
            "(2,1)".to_string(),
            s(&["A_1"]),
            ModuliKind::TwoPoints,
            false,
        ),
        (
            "(3,2)".to_string(),
            s(&["A_2", "A_1"]),
            ModuliKind::TwoPoints,
            false,
        ),
        (
            "(3,2,5)".to_string(),
            s(&["A_4"]),
            ModuliKind::LineModRoots,
            false,
        ),
        ("(3,2,4)".to_string(), s(&["D_5"]), ModuliKind::Point, true),
    ];
    let mut got_sorted = got.clone();
    got_sorted.sort_by(|a, b| a.0.cmp(&b.0));
    want.sort_by(|a, b| a.0.cmp(&b.0));
    verdict(
        got_sorted == want,
        format!(
            "{} of {} sequences reported: {:?}",
            records.len(),
            summary.enumerated,
            got.iter().map(|g| &g.0).collect::<Vec<_>>()
        ),
    )
}

fn ac4(corpus: &[KeySequence]) -> Verdict {
    let mut disagreements = Vec::new();
    let mut counts: BTreeMap<SingularityClass, usize> = BTreeMap::new();
    for ks in corpus {
        let kaw = kawamata_classify(&dual_graph_schematic(&newton_pairs(ks).unwrap()));
        let tab = table_classify(ks)
            .unwrap()
            .map_or(SingularityClass::Neither, |m| m.class);
        *counts.entry(kaw).or_default() += 1;
        if kaw != tab {
            disagreements.push(ks.to_string());
        }
    }
    verdict(
        disagreements.is_empty(),
        format!(
            "{} sequences, {counts:?}, {} disagreements {:?}",
            corpus.len(),
            disagreements.len(),
            &disagreements[..disagreements.len().min(5)]
        ),
    )
}

fn ac5(corpus: &[KeySequence]) -> Verdict {
    let mut matched = 0;
    let mut identities = 0;
    let mut bad = Vec::new();
    for ks in corpus {
        let Some(m) = table_classify(ks).unwrap() else {
            continue;
        };
        matched += 1;
        if m.g2a_criterion != g2a_exists(ks).unwrap() {
            bad.push(format!("{ks}: column"));
        }
        if let TableParameters::Triple { q1, p2, r, .. } = m.parameters {
            let e = essential_subsequence(ks);
            identities += 1;
            if k_bar_x(&e) + e.omega(0) != r - 1 - q1 * p2 {
                bad.push(format!("{ks}: identity"));
            }
        }
    }
    verdict(
        bad.is_empty() && matched > 0,
        format!(
            "{matched} table-matched, {identities} family identities, failures {:?}",
            &bad[..bad.len().min(5)]
        ),
    )
}

fn ac6() -> Verdict {
    let mut sequences = 0usize;
    let mut algebraic = 0usize;
    let mut bad = Vec::new();
    for (len, max_abs) in AC6_BOXES {
        for_each_valid(AC6_MAX_OMEGA0, len, -max_abs, max_abs, &mut |ks| {
            sequences += 1;
            let w = ks.omegas();
            let t = ks.tower();
            let b = beta_expansion(&ks).unwrap();
            for k in 1..=ks.n() + 1 {
                let sum: i64 = b.row(k).digits.iter().zip(w).map(|(d, x)| d * x).sum();
                if sum != t.alpha(k) * w[k] {
                    bad.push(format!("{ks}: row {k}"));
                }
            }
            let fast = is_algebraic(&ks).algebraic;
            let oracle =
                (1..=ks.n()).all(|k| semigroup_member_bruteforce(t.alpha(k) * w[k], &w[..k]));
            algebraic += fast as usize;
            if fast != oracle {
                bad.push(format!("{ks}: algebraicity"));
            }
        });
    }
    verdict(
        bad.is_empty(),
        format!(
            "{sequences} valid sequences in {AC6_BOXES:?}, {algebraic} algebraic, failures {:?}",
            &bad[..bad.len().min(5)]
        ),
    )
}

fn ac7() -> Verdict {
    let pairs = |max: i64| {
        (2..=max).flat_map(|p| (1..p).filter(move |q| p.gcd(q) == 1).map(move |q| (p, q)))
    };
    let mut bad = Vec::new();
    let mut n_cf = 0;
    for (p, q) in pairs(AC7_CF_MAX_P) {
        n_cf += 1;
        if continued_fraction(p, q).unwrap().evaluate() != Rational::new(p, q) {
            bad.push(format!("cf {p}/{q}"));
        }
    }
    let mut n_graph = 0;
    for (p, q) in pairs(AC7_UNIMODULAR_MAX_P) {
        n_graph += 1;
        let g = monomial_resolution_graph(p, q).unwrap();
        let exc: Vec<usize> = (1..g.vertices.len()).collect();
        if determinant(&g.intersection_matrix(&exc)).magnitude() != &1u32.into() {
            bad.push(format!("det {p}/{q}"));
        }
        if num_bigint::BigInt::from(g.weight(0)) != 1 - Rational::new(p, q).ceil() {
            bad.push(format!("E0 {p}/{q}"));
        }
    }
    let mut n_claim = 0;
    for (p, q) in pairs(AC7_CLAIM_MAX_P) {
        n_claim += 1;
        if !fractional_claim_check(p, q).unwrap().passes() {
            bad.push(format!("claim {p}/{q}"));
        }
    }
    verdict(
        bad.is_empty(),
        format!(
            "{n_cf} fractions, {n_graph} resolutions, {n_claim} claim checks, failures {:?}",
            &bad[..bad.len().min(5)]
        ),
    )
}

fn ac8(corpus: &[KeySequence]) -> Verdict {
    let mut surfaces_checked = 0;
    let mut locators = 0;
    let mut bad = Vec::new();
    for ks in corpus {
        if !g2a_exists(ks).unwrap() {
            continue;
        }
        surfaces_checked += 1;
        let t = m_e_table(ks).unwrap();
        for (loc, v) in &t.entries {
            locators += 1;
            if *v < t.m_omega {
                bad.push(format!("{ks} {loc:?}: {v} < {}", t.m_omega));
            }
        }
    }
    verdict(
        bad.is_empty() && locators > 0,
        format!(
            "{surfaces_checked} surfaces, {locators} locators, failures {:?}",
            &bad[..bad.len().min(5)]
        ),
    )
}

fn main() {
    let started = Instant::now();
    let corpus = surfaces(CORPUS_MAX_ENTRY, CORPUS_MAX_LEN, Some(CORPUS_MAX_ENTRY));
    let corpus_time = started.elapsed();
    let criteria: Vec<Criterion> = vec![
        ("AC1 tau_lambda rendering for (3,2,5)", Box::new(ac1)),
        ("AC2 action axioms by exact composition", Box::new(ac2)),
        ("AC3 del Pezzo list", Box::new(ac3)),
        ("AC4 two-route classification", Box::new(|| ac4(&corpus))),
        (
            "AC5 G_a^2 column and family identity",
            Box::new(|| ac5(&corpus)),
        ),
        ("AC6 beta expansion and semigroup oracle", Box::new(ac6)),
        ("AC7 continued fractions, resolutions, claim", Box::new(ac7)),
        ("AC8 m_E >= m_omega", Box::new(|| ac8(&corpus))),
    ];
    println!("corpus: {} sequences with entries <= {CORPUS_MAX_ENTRY}, length <= {CORPUS_MAX_LEN} ({corpus_time:.2?})", corpus.len());
    let mut all = true;
    for (name, run) in criteria {
        let t = Instant::now();
        let v = run();
        let elapsed = t.elapsed();
        let in_budget = elapsed < TIME_BUDGET;
        let pass = v.pass && in_budget;
        all &= pass;
        println!(
            "{} {name}: {} [{elapsed:.2?}]",
            if pass { "PASS" } else { "FAIL" },
            v.detail
        );
    }
    if !all {
        std::process::exit(1);
    }
}
