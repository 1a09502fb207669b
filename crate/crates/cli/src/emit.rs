//! Text and JSON renderings of the computed tables.

use serde_json::{json, Value};

use g2skt_core::context::Context;
use g2skt_core::forms::{render_labels, Coeff, DualLabel, InvariantForm};
use g2skt_core::g2::AlgebraElement;
use g2skt_core::roots::Label;
use g2skt_core::FieldElement;

use crate::{CliError, SCHEMA};

pub const TABLES: [&str; 9] = [
    "brackets",
    "brackets-complex",
    "droots",
    "d-table",
    "c",
    "dc",
    "metric-components",
    "solution",
    "skt-metric",
];

/// `(negated, magnitude)` when the coefficient has a single nonzero
/// component, so it can be written after a bare sign.
fn split_sign(c: &FieldElement) -> (bool, String) {
    let parts = [c.a(), c.b(), c.c(), c.d()];
    let nonzero: Vec<_> = parts.iter().filter(|q| !num_traits::Zero::is_zero(**q)).collect();
    if nonzero.len() == 1 && num_traits::Signed::is_negative(*nonzero[0]) {
        (true, (-c).to_string())
    } else if nonzero.len() == 1 {
        (false, c.to_string())
    } else {
        (false, format!("({c})"))
    }
}

/// `c1 l1 + c2 l2 - …` with unit coefficients suppressed, or `0`.
pub fn render_sum<'a>(terms: impl IntoIterator<Item = (String, &'a FieldElement)>) -> String {
    let mut out = String::new();
    for (label, c) in terms {
        if c.is_zero() {
            continue;
        }
        let (neg, mag) = split_sign(c);
        let term = if mag == "1" { label } else { format!("{mag} {label}") };
        match (out.is_empty(), neg) {
            (true, true) => out.push_str(&format!("-{term}")),
            (true, false) => out.push_str(&term),
            (false, true) => out.push_str(&format!(" - {term}")),
            (false, false) => out.push_str(&format!(" + {term}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn render_real(x: &AlgebraElement) -> String {
    render_sum(x.support().map(|(k, c)| (format!("b{k}"), c)))
}

/// An element whose coordinates are indexed by complex-basis labels.
pub fn render_complex(x: &AlgebraElement) -> String {
    render_sum(x.support().map(|(k, c)| (Label::from_index(k - 1).to_string(), c)))
}

fn form_records<C: Coeff>(f: &InvariantForm<C>) -> Vec<Value> {
    f.terms()
        .map(|(ls, c)| {
            json!({
                "labels": ls.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "coeff": c.to_string(),
            })
        })
        .collect()
}

fn pad(lhs: String, width: usize) -> String {
    format!("{lhs:<width$}")
}

fn brackets(ctx: &Context, as_json: bool) -> (String, Value) {
    let rels = ctx.table.relations();
    let width = rels.iter().map(|((i, j), _)| format!("[b{i},b{j}]").len()).max().unwrap_or(0);
    let mut text = String::new();
    let mut recs = Vec::new();
    for ((i, j), ts) in rels {
        if as_json {
            let terms: Vec<Value> = ts.iter().map(|(k, c)| json!({"k": k, "c": c.to_string()})).collect();
            recs.push(json!({"i": i, "j": j, "terms": terms}));
        } else {
            let x = AlgebraElement::from_terms(ts.iter().map(|(k, c)| (FieldElement::from_rational(c.clone()), *k)));
            text.push_str(&format!("{} = {}\n", pad(format!("[b{i},b{j}]"), width), render_real(&x)));
        }
    }
    (text, Value::Array(recs))
}

fn brackets_complex(ctx: &Context, as_json: bool) -> (String, Value) {
    let rels = ctx.complex_table.relations();
    let width = rels.iter().map(|((a, b), _)| format!("[{a},{b}]").len()).max().unwrap_or(0);
    let mut text = String::new();
    let mut recs = Vec::new();
    for ((a, b), ts) in rels {
        if as_json {
            let terms: Vec<Value> = ts
                .iter()
                .map(|(l, c)| json!({"label": l.to_string(), "c": c.to_string()}))
                .collect();
            recs.push(json!({"a": a.to_string(), "b": b.to_string(), "terms": terms}));
        } else {
            let rhs = render_sum(ts.iter().map(|(l, c)| (l.to_string(), c)));
            text.push_str(&format!("{} = {}\n", pad(format!("[{a},{b}]"), width), rhs));
        }
    }
    (text, Value::Array(recs))
}

fn droots(ctx: &Context, as_json: bool) -> (String, Value) {
    let cb = &ctx.complex_basis;
    let mut text = String::from("# label = b-coordinates | root on b1 | root on b12 | root on H1 | root on H2\n");
    let mut recs = Vec::new();
    for j in 1..=6u8 {
        let l = Label::E(j);
        let root = &cb.roots[j as usize - 1];
        let vals = [root.value_on_b1.clone(), root.value_on_b12.clone(), root.on_h1(), root.on_h2()];
        if as_json {
            recs.push(json!({
                "label": l.to_string(),
                "vector": render_real(cb.element(l)),
                "on_b1": vals[0].to_string(),
                "on_b12": vals[1].to_string(),
                "on_H1": vals[2].to_string(),
                "on_H2": vals[3].to_string(),
            }));
        } else {
            let vs: Vec<String> = vals.iter().map(ToString::to_string).collect();
            text.push_str(&format!("{l} = {} | {}\n", render_real(cb.element(l)), vs.join(" | ")));
        }
    }
    (text, Value::Array(recs))
}

fn d_table(ctx: &Context, as_json: bool) -> (String, Value) {
    let mut text = String::new();
    let mut recs = Vec::new();
    for l in DualLabel::all() {
        let f = ctx.dtable.d_label(l);
        if as_json {
            recs.push(json!({"form": l.to_string(), "d": form_records(f)}));
        } else {
            text.push_str(&format!("d{l} = {}\n", render_d(f)));
        }
    }
    (text, Value::Array(recs))
}

/// A scalar 2-form in the fixture grammar: bare signs, `^`-joined labels.
fn render_d(f: &InvariantForm<FieldElement>) -> String {
    render_sum(f.terms().map(|(ls, c)| (render_labels(ls), c)))
}

fn lambda_form(f: &InvariantForm<g2skt_core::lambda::LambdaLinear>, as_json: bool) -> (String, Value) {
    if as_json {
        return (String::new(), Value::Array(form_records(f)));
    }
    (f.render_terms().iter().map(|t| format!("{t}\n")).collect(), Value::Null)
}

fn metric_components(ctx: &Context, as_json: bool) -> (String, Value) {
    let mut text = String::new();
    let mut recs = Vec::new();
    for ((p, q), v) in ctx.metric.nonzero_upper() {
        if as_json {
            recs.push(json!({"p": p, "q": q, "value": v.to_string()}));
        } else {
            text.push_str(&format!("g(b{p},b{q}) = {v}\n"));
        }
    }
    (text, Value::Array(recs))
}

fn solution(ctx: &Context) -> (String, Value) {
    let mut text = String::new();
    let mut obj = serde_json::Map::new();
    for (k, v) in &ctx.solution.pinned {
        text.push_str(&format!("λ{k} = {v}\n"));
        obj.insert(format!("lambda{k}"), Value::String(v.to_string()));
    }
    let free: Vec<String> = ctx.solution.free.iter().map(|k| format!("λ{k}")).collect();
    text.push_str(&format!("free: {}\n", free.join(", ")));
    (text, Value::Object(obj))
}

fn skt_metric(ctx: &Context, as_json: bool) -> (String, Value) {
    let sym = g2skt_core::skt::skt_metric_symbolic(&ctx.metric, &ctx.solution);
    let mut text = String::new();
    let mut recs = Vec::new();
    for ((p, q), v) in sym.nonzero_upper() {
        let s = g2skt_core::skt::render_in_a(&v);
        if as_json {
            recs.push(json!({"p": p, "q": q, "value": s}));
        } else {
            text.push_str(&format!("g(b{p},b{q}) = {s}\n"));
        }
    }
    (text, Value::Array(recs))
}

/// Renders `table` as text, or as a JSON document when `as_json` is set.
pub fn emit(ctx: &Context, table: &str, as_json: bool) -> Result<String, CliError> {
    let (text, data) = match table {
        "brackets" => brackets(ctx, as_json),
        "brackets-complex" => brackets_complex(ctx, as_json),
        "droots" => droots(ctx, as_json),
        "d-table" => d_table(ctx, as_json),
        "c" => lambda_form(&ctx.c, as_json),
        "dc" => lambda_form(&ctx.dc, as_json),
        "metric-components" => metric_components(ctx, as_json),
        "solution" => solution(ctx),
        "skt-metric" => skt_metric(ctx, as_json),
        other => return Err(CliError::UnknownTable(other.into())),
    };
    if as_json {
        let doc = json!({"schema": SCHEMA, "table": table, "data": data});
        Ok(serde_json::to_string_pretty(&doc).expect("JSON values serialize") + "\n")
    } else {
        Ok(text)
    }
}
