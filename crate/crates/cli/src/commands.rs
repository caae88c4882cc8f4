//! One function per subcommand, each producing a [`Report`].

use serde_json::{json, Value};

use kdv_core::algebra::{GradedPoly, Rational};
use kdv_core::diffalg::{gen_s, DiffPoly, Hierarchy};
use kdv_core::dmod::{
    calibrate_c0, char_report, ev_equivalence_check, Provenance, ResolutionSlice,
};
use kdv_core::fock::bar_s_series;
use kdv_core::taulab::{negative_controls, run_suite, TauConfig, TauSpec};
use kdv_core::{Error, Strategy};

use crate::report::{Check, Conventions, Report};

/// Why a command could not produce a report.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments or configuration (exit code 2).
    Usage(String),
    /// The engine refused or an identity could not be evaluated (exit code 1).
    Engine(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Parse(_) | Error::BadIndex(_) => Failure::Usage(e.to_string()),
            _ => Failure::Engine(e.to_string()),
        }
    }
}

pub type Outcome = Result<Report, Failure>;

fn poly_value(p: &GradedPoly) -> Value {
    serde_json::from_str(&p.to_json()).expect("canonical JSON")
}

fn table_entry(name: String, p: &GradedPoly) -> (Value, String, Vec<String>) {
    let text = p.to_string();
    let v = json!({ "name": name, "expression": text, "canonical": poly_value(p) });
    (v, format!("{name} = {text}"), vec![name, text])
}

fn table_report(
    command: &str,
    parameters: Value,
    entries: Vec<(Value, String, Vec<String>)>,
) -> Report {
    let mut r = Report::new(command, parameters);
    let mut values = Vec::new();
    for (v, line, row) in entries {
        values.push(v);
        r.lines.push(line);
        r.table.1.push(row);
    }
    r.table.0 = vec!["name".into(), "expression".into()];
    r.data = json!({ "entries": values });
    r
}

pub fn gen_s_table(max: u32) -> Outcome {
    if max < 2 || max % 2 == 1 {
        return Err(Failure::Usage(format!(
            "--max must be even and at least 2, got {max}"
        )));
    }
    let s = gen_s(max)?;
    let entries = s
        .iter()
        .enumerate()
        .map(|(n, p)| table_entry(format!("S{}", 2 * n + 2), p))
        .collect();
    Ok(table_report("gen-s", json!({ "max": max }), entries))
}

pub fn zeta_table(max: u32) -> Outcome {
    if max.is_multiple_of(2) {
        return Err(Failure::Usage(format!("--max must be odd, got {max}")));
    }
    let h = Hierarchy::new(2 * max + 2)?;
    let mut entries = Vec::new();
    for i in (1..=max).step_by(2) {
        for j in (i..=max).step_by(2) {
            entries.push(table_entry(format!("zeta{i},{j}"), &h.zeta(i, j)?));
        }
    }
    Ok(table_report("zeta", json!({ "max": max }), entries))
}

pub fn bar_s_table(max: u32) -> Outcome {
    if max < 2 || max % 2 == 1 {
        return Err(Failure::Usage(format!(
            "--max must be even and at least 2, got {max}"
        )));
    }
    let entries = bar_s_series(max as usize / 2)
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, p)| table_entry(format!("barS{}", 2 * n), p))
        .collect();
    Ok(table_report("bar-s", json!({ "max": max }), entries))
}

pub fn calibrate(c_flow: &Rational, dmax: u32, strategy: Strategy) -> Outcome {
    let cf = c_flow.to_string();
    let mut r = Report::new("calibrate", json!({ "c_flow": cf, "dmax": dmax }));
    match calibrate_c0(dmax, c_flow.clone(), strategy) {
        Ok(c0) => {
            let c0s = c0.to_string();
            r.conventions = Conventions::with(cf.clone(), c0s.clone());
            r.checks.push(Check::new(
                "consistent",
                true,
                format!("c0 = {c0s} makes ev₁∘C vanish on charge −5 words of degree ≤ {dmax}"),
            ));
            r.data = json!({ "c_flow": cf, "c0": c0s });
            r.lines.push(format!("c_flow = {cf} → c0 = {c0s}"));
        }
        Err(Error::NoConsistentCalibration(msg)) => {
            r.checks.push(Check::new("consistent", false, msg));
            r.data = json!({ "c_flow": cf, "c0": Value::Null });
        }
        Err(e) => return Err(e.into()),
    }
    Ok(r)
}

pub fn null_vectors(degree: u32, strategy: Strategy) -> Outcome {
    let mut r = Report::new("null-vectors", json!({ "degree": degree }));
    let h = Hierarchy::new(6)?;
    let [a, b] = h.null_vectors()?;
    r.checks.push(Check::new(
        "∂₃S₂ − ∂₁S₄ = 0",
        a.is_zero(),
        if a.is_zero() {
            "vanishes in A".to_string()
        } else {
            format!("residue {a}")
        },
    ));
    r.checks.push(Check::new(
        "∂₁²S₂ − 4S₄ + 6S₂² = 0",
        b.is_zero(),
        if b.is_zero() {
            "vanishes in A".to_string()
        } else {
            format!("residue {b}")
        },
    ));
    let rs = ResolutionSlice::new(degree, strategy)?;
    let reports = rs.kernel_reports(degree)?;
    let mut gens = Vec::new();
    for k in &reports {
        for g in &k.generators {
            r.lines.push(format!(
                "degree {:>2}  {:<10} {}",
                k.degree,
                g.provenance.to_string(),
                g.expression
            ));
            r.table.1.push(vec![
                k.degree.to_string(),
                g.provenance.to_string(),
                g.expression.clone(),
            ]);
            gens.push(json!({ "degree": k.degree, "expression": g.expression, "provenance": g.provenance }));
        }
    }
    r.table.0 = vec!["degree".into(), "provenance".into(), "generator".into()];
    let unexplained: Vec<String> = reports
        .iter()
        .flat_map(|k| {
            k.generators
                .iter()
                .filter(|g| g.provenance == Provenance::Unexplained)
        })
        .map(|g| g.expression.clone())
        .collect();
    r.checks.push(Check::new(
        "generators explained",
        unexplained.is_empty(),
        if unexplained.is_empty() {
            format!(
                "generators through degree {degree}: {}, each in im Q + im C",
                gens.len()
            )
        } else {
            format!("unexplained: {}", unexplained.join("; "))
        },
    ));
    r.data = json!({ "generators": gens });
    Ok(r)
}

pub fn kernel(dmax: u32, strategy: Strategy) -> Outcome {
    let mut r = Report::new("verify kernel", json!({ "dmax": dmax }));
    let rs = ResolutionSlice::new(dmax, strategy)?;
    let q = rs.ev1_q_failures(dmax)?;
    let c = rs.ev1_c_failures(dmax)?;
    let first = |v: &[(String, DiffPoly)]| {
        v.first()
            .map(|(w, p)| format!("{} words, e.g. {w} ↦ {p}", v.len()))
            .unwrap_or_default()
    };
    r.checks.push(Check::new(
        "ev1∘Q = 0",
        q.is_empty(),
        if q.is_empty() {
            format!("charge −3 words of degree ≤ {dmax}")
        } else {
            first(&q)
        },
    ));
    r.checks.push(Check::new(
        "ev1∘C = 0",
        c.is_empty(),
        if c.is_empty() {
            format!("charge −5 words of degree ≤ {dmax}")
        } else {
            first(&c)
        },
    ));
    let bad = rs.operator_identity_failures(4, dmax);
    r.checks.push(Check::new(
        "Q² = 0, [Q, C] = 0",
        bad.is_empty(),
        if bad.is_empty() {
            format!("charges −1 … −9, degree ≤ {dmax}")
        } else {
            bad.join("; ")
        },
    ));
    let reports = rs.kernel_reports(dmax)?;
    let mut rows = Vec::new();
    for k in &reports {
        r.checks.push(Check::new(
            format!("degree {} ker = im", k.degree),
            k.kernel_equals_image,
            format!(
                "kernel {}, image {} (Q {}, C {})",
                k.kernel_dim, k.image_dim, k.q_image_dim, k.c_image_dim
            ),
        ));
        r.checks.push(Check::new(
            format!("degree {} surjective", k.degree),
            k.surjective(),
            format!("rank {} of dim A = {}", k.ev1_rank, k.dim_a),
        ));
        for g in &k.generators {
            r.lines.push(format!(
                "degree {:>2}  {:<10} {}",
                k.degree,
                g.provenance.to_string(),
                g.expression
            ));
        }
        rows.push(serde_json::to_value(k).expect("serializable"));
    }
    r.data = json!({ "degrees": rows });
    Ok(r)
}

pub fn ev2(dmax: u32, strategy: Strategy) -> Outcome {
    let mut r = Report::new("verify ev2", json!({ "dmax": dmax }));
    let rs = ResolutionSlice::new(dmax, strategy)?;
    let e = rs.verify_ev2_kernel(dmax)?;
    r.checks.push(Check::new(
        "ev2∘Q = 0, ev2∘C = 0",
        e.passed(),
        match e.failures.first() {
            None => format!("{} charge −3 and {} charge −5 words", e.q_words, e.c_words),
            Some((w, v)) => format!("{} failures, e.g. {w} ↦ {v}", e.failures.len()),
        },
    ));
    let mut rows = Vec::new();
    for d in 0..=dmax.min(8) {
        let qc = rs.same_quotient(d)?;
        r.checks.push(Check::new(
            format!("degree {d} same quotient"),
            qc.same,
            format!(
                "ev1 rank {}, ev2 rank {} on {} flow monomials",
                qc.ev1_quotient_rank, qc.ev2_quotient_rank, qc.flow_dim
            ),
        ));
        rows.push(serde_json::to_value(&qc).expect("serializable"));
    }
    r.data = json!({ "ev2": e, "quotients": rows });
    Ok(r)
}

pub fn characters(order: u32) -> Outcome {
    let mut r = Report::new("verify characters", json!({ "order": order }));
    let c = char_report(order as usize);
    r.checks.push(Check::new(
        "alternating sum = ch A",
        c.equal,
        format!("through q^{order}"),
    ));
    r.checks.push(Check::new(
        "Fock basis counts",
        c.fock_counts_match,
        "charges 0 … 3 against q^{N²}/∏(1 − q^{2i})",
    ));
    r.lines.push(format!("ch A = {}", c.ch_a));
    r.data = serde_json::to_value(&c).expect("serializable");
    Ok(r)
}

pub fn tau(
    taus: &[String],
    t_degree: u32,
    z_order: u32,
    controls: bool,
    strategy: Strategy,
) -> Outcome {
    let specs = taus
        .iter()
        .map(|s| s.parse::<TauSpec>())
        .collect::<Result<Vec<_>, _>>()?;
    let config = TauConfig {
        t_degree,
        z_order,
        ..TauConfig::default()
    };
    let mut r = Report::new(
        "verify tau",
        json!({ "taus": taus, "t_degree": t_degree, "z_order": z_order, "controls": controls }),
    );
    let reports = match run_suite(&specs, &config, strategy) {
        Ok(reports) => reports,
        Err(Error::TauRejected(msg)) => {
            r.checks.push(Check::new("hirota", false, msg));
            r.data = json!({ "taus": [] });
            return Ok(r);
        }
        Err(e) => return Err(e.into()),
    };
    for t in &reports {
        r.lines.push(format!("{} at {}", t.tau, t.expansion_point));
        for c in &t.checks {
            let detail = match &c.failure {
                Some(f) => format!("{} ({f})", c.order),
                None => c.order.clone(),
            };
            r.checks.push(Check::new(
                format!("{}/{}", t.tau, c.name),
                c.passed,
                detail,
            ));
        }
    }
    let mut control_values = Vec::new();
    if controls {
        for (name, rep) in negative_controls(&config)? {
            let failed = rep.failed_checks().join(", ");
            r.checks.push(Check::new(
                format!("control {name} is detected"),
                !rep.passed(),
                if rep.passed() {
                    "passed every check".to_string()
                } else {
                    format!("fails {failed}")
                },
            ));
            control_values.push(json!({ "control": name, "report": rep }));
        }
    }
    r.data = json!({ "taus": reports, "controls": control_values });
    Ok(r)
}

pub fn equivalence(nmax: u32, mmax: u32) -> Outcome {
    let mut r = Report::new("verify equivalence", json!({ "n": nmax, "m": mmax }));
    let h = Hierarchy::new(2 * (nmax + mmax) + 2)?;
    let a1 = h.eta_a(1)?;
    r.checks
        .push(Check::new("a1 = 0", a1.is_zero(), format!("a1 = {a1}")));
    let rows = ev_equivalence_check(&h, nmax, mmax)?;
    for row in &rows {
        r.checks.push(Check::new(
            format!("a{} serves ∂{}", 2 * row.n - 1, 2 * row.m - 1),
            row.residual_zero,
            format!("a{} = {}", 2 * row.n - 1, row.a),
        ));
    }
    r.data = serde_json::to_value(&rows).expect("serializable");
    Ok(r)
}
