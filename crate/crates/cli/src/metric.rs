//! Exact evaluation of the SKT metric at user-supplied parameters.

use serde_json::{json, Value};

use g2skt_core::context::Context;
use g2skt_core::g2::G2_DIM;
use g2skt_core::hermitian::{check_j_compatible, torus_invariance_failures, MetricMatrix};
use g2skt_core::lambda::N_LAMBDA;
use g2skt_core::scalar::parse_rational;
use g2skt_core::skt::{lambda_values, skt_metric, MetricParams3};
use g2skt_core::{FieldElement, Rational};

use crate::{CliError, SCHEMA};

/// One exact verdict with what it was compared against.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub check: &'static str,
    pub expected_ref: &'static str,
    pub computed: String,
    pub equal: bool,
}

#[derive(Clone, Debug)]
pub struct MetricReport {
    pub params: MetricParams3,
    pub lambdas: [FieldElement; N_LAMBDA],
    pub matrix: MetricMatrix,
    pub certificates: Vec<Certificate>,
    /// `λ` with `g = −λK`, when the metric is a multiple of the Killing form.
    pub biinvariant: Option<Rational>,
}

pub fn parse_params(a1: &str, a2: &str, a3: &str) -> Result<MetricParams3, CliError> {
    let p = |s: &str| parse_rational(s.trim()).map_err(|e| CliError::BadInput(e.to_string()));
    Ok(MetricParams3::new(p(a1)?, p(a2)?, p(a3)?))
}

fn cert(check: &'static str, expected_ref: &'static str, computed: String, equal: bool) -> Certificate {
    Certificate {
        check,
        expected_ref,
        computed,
        equal,
    }
}

/// Fails with `OutsideRegion` naming the first violated inequality.
pub fn evaluate_metric(ctx: &Context, a: &MetricParams3) -> Result<MetricReport, CliError> {
    let g = skt_metric(&ctx.metric, &ctx.solution, a)?;
    let lambdas = lambda_values(&ctx.solution, a);
    let mut certificates = Vec::new();

    let positive: Vec<String> = lambdas.iter().map(ToString::to_string).collect();
    certificates.push(cert(
        "lambda-positive",
        "every λ of the solved family is positive",
        positive.join(", "),
        lambdas.iter().all(FieldElement::is_positive),
    ));
    certificates.push(cert("symmetric", "g = gᵀ", String::new(), g.is_symmetric()));
    let minors = g.matrix().leading_principal_minors();
    let bad_minor = minors.iter().position(|m| !m.is_positive());
    certificates.push(cert(
        "positive-definite",
        "all 14 leading principal minors positive",
        match bad_minor {
            None => "14 positive minors".into(),
            Some(k) => format!("minor {} = {}", k + 1, minors[k]),
        },
        bad_minor.is_none(),
    ));
    certificates.push(cert(
        "j-compatible",
        "JᵀgJ = g",
        String::new(),
        check_j_compatible(&g, &ctx.j),
    ));
    let torus_bad = torus_invariance_failures(&ctx.table, &g);
    certificates.push(cert(
        "torus-invariant",
        "g([H,X],Y) + g(X,[H,Y]) = 0 for H in {b1, b12}",
        format!("{} of {} identities fail", torus_bad.len(), 2 * G2_DIM * G2_DIM),
        torus_bad.is_empty(),
    ));
    let dc = ctx.dc.map_coeffs(|l| l.evaluate(&lambdas));
    certificates.push(cert(
        "dc-zero",
        "dc vanishes on all 1001 label quadruples",
        format!("{} nonzero terms", dc.len()),
        dc.is_empty(),
    ));

    let biinvariant = biinvariant_scale(ctx, &g);
    Ok(MetricReport {
        params: a.clone(),
        lambdas,
        matrix: g,
        certificates,
        biinvariant,
    })
}

fn biinvariant_scale(ctx: &Context, g: &MetricMatrix) -> Option<Rational> {
    let k = ctx.table.killing_matrix();
    let s = g.entry(1, 1).checked_div(&k[(0, 0)]).ok()?;
    let lambda = (-s).as_rational()?.clone();
    (k.scale(&FieldElement::from_rational(-lambda.clone())) == *g.matrix()).then_some(lambda)
}

fn grid(m: &MetricMatrix) -> Vec<Vec<String>> {
    (1..=G2_DIM)
        .map(|p| (1..=G2_DIM).map(|q| m.entry(p, q).to_string()).collect())
        .collect()
}

impl MetricReport {
    pub fn all_pass(&self) -> bool {
        self.certificates.iter().all(|c| c.equal)
    }

    pub fn biinvariant_line(&self) -> Option<String> {
        self.biinvariant.as_ref().map(|l| {
            if *l == Rational::from_integer(1.into()) {
                "bi-invariant: g = −K (λ = 1)".to_string()
            } else {
                format!("bi-invariant: g = −λK (λ = {l})")
            }
        })
    }

    pub fn render_text(&self) -> String {
        let a = &self.params;
        let mut out = format!("parameters: a1 = {}, a2 = {}, a3 = {}\n", a.a1, a.a2, a.a3);
        out.push_str(&format!(
            "region: inside (0 < a2 < a1, {} < a3 < {})\n",
            a.gamma(),
            a.upper()
        ));
        let ls: Vec<String> = self.lambdas.iter().enumerate().map(|(k, v)| format!("λ{k} = {v}")).collect();
        out.push_str(&format!("lambdas: {}\n", ls.join(", ")));
        out.push_str("metric (rows b1..b14):\n");
        let cells = grid(&self.matrix);
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &cells {
            let r: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            out.push_str(&format!("  {}\n", r.join(" ")));
        }
        for c in &self.certificates {
            let verdict = if c.equal { "PASS" } else { "FAIL" };
            if c.computed.is_empty() {
                out.push_str(&format!("{verdict} {}\n", c.check));
            } else {
                out.push_str(&format!("{verdict} {}: {}\n", c.check, c.computed));
            }
        }
        if let Some(line) = self.biinvariant_line() {
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let a = &self.params;
        let inputs = json!({"a1": a.a1.to_string(), "a2": a.a2.to_string(), "a3": a.a3.to_string()});
        let certs: Vec<Value> = self
            .certificates
            .iter()
            .map(|c| {
                json!({
                    "check": c.check,
                    "inputs": inputs,
                    "expected_ref": c.expected_ref,
                    "computed": c.computed,
                    "equal": c.equal,
                })
            })
            .collect();
        let lambdas: serde_json::Map<String, Value> = self
            .lambdas
            .iter()
            .enumerate()
            .map(|(k, v)| (format!("lambda{k}"), Value::String(v.to_string())))
            .collect();
        json!({
            "schema": SCHEMA,
            "inputs": inputs,
            "region": true,
            "lambdas": lambdas,
            "metric": grid(&self.matrix),
            "certificates": certs,
            "biinvariant": self.biinvariant.as_ref().map(ToString::to_string),
        })
    }
}
