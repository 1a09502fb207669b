//! The certificate suite run by `check-all`.
//!
//! Each check compares a computed object against a reference table (or an
//! identity it must satisfy) and reports pass or fail with a short detail.
//! Reference tables are injectable so that a corrupted table can be shown to
//! be caught.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use g2skt_core::context::Context;
use g2skt_core::fixtures as fx;
use g2skt_core::forms::{d_alternating_sum, label_tuples, DualLabel};
use g2skt_core::g2::{closure_failures, AlgebraElement, G2_DIM};
use g2skt_core::hermitian::{check_j_compatible, torus_invariance_failures};
use g2skt_core::lambda::LambdaLinear;
use g2skt_core::r7::{
    constraint_system, cross, g2_membership, g2_membership_linearized, linearized_system, phi_contraction_scalar,
    Matrix7, Vector7, DIM,
};
use g2skt_core::roots::{killing_complex_pairings, verify_root_vector, Label};
use g2skt_core::samelson::{check_killing_compatible, nijenhuis_failures};
use g2skt_core::scalar::{int, rational};
use g2skt_core::skt::{
    biinvariant_params, converse_space, fundamental_form, lambda_values, lambdas_positive, positivity_region,
    skt_metric, skt_metric_symbolic, MetricParams3,
};
use g2skt_core::FieldElement;

use crate::numeric::{group_check, sample, FloatModel, SampleConfig, GROUP_TOL};
use crate::{CliError, SCHEMA};

/// Reference tables the checks compare against.
#[derive(Clone, Debug)]
pub struct Fixtures {
    pub real_brackets: String,
    pub complex_brackets: String,
    pub root_vectors: String,
    pub root_values: String,
    pub change_of_basis: String,
    pub j_real: String,
    pub killing_complex: String,
    pub killing_b1_b1: i64,
    pub hermitian_entries: String,
    pub d_table: String,
    pub torsion_c: String,
    pub torsion_dc: String,
    pub skt_solution: String,
    pub skt_metric_entries: String,
    pub biinvariant_lambdas: [i64; 7],
}

impl Default for Fixtures {
    fn default() -> Self {
        Self {
            real_brackets: fx::REAL_BRACKETS.into(),
            complex_brackets: fx::COMPLEX_BRACKETS.into(),
            root_vectors: fx::ROOT_VECTORS.into(),
            root_values: fx::ROOT_VALUES.into(),
            change_of_basis: fx::CHANGE_OF_BASIS.into(),
            j_real: fx::J_REAL.into(),
            killing_complex: fx::KILLING_COMPLEX.into(),
            killing_b1_b1: fx::KILLING_B1_B1,
            hermitian_entries: fx::HERMITIAN_ENTRIES.into(),
            d_table: fx::D_TABLE.into(),
            torsion_c: fx::TORSION_C.into(),
            torsion_dc: fx::TORSION_DC.into(),
            skt_solution: fx::SKT_SOLUTION.into(),
            skt_metric_entries: fx::SKT_METRIC_ENTRIES.into(),
            biinvariant_lambdas: fx::BIINVARIANT_LAMBDAS,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

/// Exact checks compare for equality; float checks against a tolerance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckClass {
    Exact,
    Float,
}

impl fmt::Display for CheckClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckClass::Exact => "exact",
            CheckClass::Float => "float",
        })
    }
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub check_id: &'static str,
    /// The object being reproduced, named by role.
    pub anchor: &'static str,
    pub class: CheckClass,
    pub status: Status,
    pub detail: String,
    pub elapsed_ms: u128,
}

impl CheckReport {
    pub fn to_json(&self) -> Value {
        json!({
            "check_id": self.check_id,
            "anchor": self.anchor,
            "class": self.class.to_string(),
            "status": self.status.to_string(),
            "detail": self.detail,
            "elapsed_ms": self.elapsed_ms,
        })
    }

    pub fn render_text(&self) -> String {
        format!(
            "{} {:<18} [{}] {} ({} ms): {}",
            self.status, self.check_id, self.class, self.anchor, self.elapsed_ms, self.detail
        )
    }
}

type Outcome = Result<String, String>;

struct CheckDef {
    id: &'static str,
    anchor: &'static str,
    class: CheckClass,
    run: fn(&Context, &Fixtures) -> Outcome,
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn parsed<T>(r: g2skt_core::Result<T>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("reference {what} does not parse: {e}"))
}

const CHECKS: &[CheckDef] = &[
    CheckDef {
        id: "phi-identities",
        anchor: "3-form contraction and cross-product identities",
        class: CheckClass::Exact,
        run: phi_identities,
    },
    CheckDef {
        id: "membership",
        anchor: "defining relations of the algebra and its dimension",
        class: CheckClass::Exact,
        run: membership,
    },
    CheckDef {
        id: "brackets",
        anchor: "real bracket table",
        class: CheckClass::Exact,
        run: brackets,
    },
    CheckDef {
        id: "killing",
        anchor: "Killing form values",
        class: CheckClass::Exact,
        run: killing,
    },
    CheckDef {
        id: "roots",
        anchor: "root vectors, root values and change of basis",
        class: CheckClass::Exact,
        run: roots,
    },
    CheckDef {
        id: "brackets-complex",
        anchor: "complexified bracket table",
        class: CheckClass::Exact,
        run: brackets_complex,
    },
    CheckDef {
        id: "complex-structure",
        anchor: "Samelson complex structure",
        class: CheckClass::Exact,
        run: complex_structure,
    },
    CheckDef {
        id: "hermitian",
        anchor: "components of the 7-parameter Hermitian family",
        class: CheckClass::Exact,
        run: hermitian,
    },
    CheckDef {
        id: "d-table",
        anchor: "exterior derivatives of the dual 1-forms",
        class: CheckClass::Exact,
        run: d_table,
    },
    CheckDef {
        id: "torsion-c",
        anchor: "torsion 3-form c",
        class: CheckClass::Exact,
        run: torsion_c,
    },
    CheckDef {
        id: "torsion-dc",
        anchor: "exterior derivative of the torsion",
        class: CheckClass::Exact,
        run: torsion_dc,
    },
    CheckDef {
        id: "skt-solve",
        anchor: "solution of dc = 0",
        class: CheckClass::Exact,
        run: skt_solve,
    },
    CheckDef {
        id: "skt-metric",
        anchor: "SKT metric entries and positivity region",
        class: CheckClass::Exact,
        run: skt_metric_entries,
    },
    CheckDef {
        id: "torus",
        anchor: "torus invariance of the metrics",
        class: CheckClass::Exact,
        run: torus,
    },
    CheckDef {
        id: "biinvariant",
        anchor: "bi-invariant member of the family",
        class: CheckClass::Exact,
        run: biinvariant,
    },
    CheckDef {
        id: "converse",
        anchor: "invariant Hermitian forms and their SKT subspace",
        class: CheckClass::Exact,
        run: converse,
    },
    CheckDef {
        id: "float-sample",
        anchor: "random SKT parameters and group exponentials in double precision",
        class: CheckClass::Float,
        run: float_sample,
    },
];

pub fn check_ids() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.id).collect()
}

/// Runs every check (or only `only`) in parallel; reports come back in
/// the fixed check order.
pub fn run_checks(fixtures: &Fixtures, only: Option<&str>) -> Result<Vec<CheckReport>, CliError> {
    let selected: Vec<&CheckDef> = match only {
        None => CHECKS.iter().collect(),
        Some(id) => {
            let c = CHECKS
                .iter()
                .find(|c| c.id == id)
                .ok_or_else(|| CliError::UnknownCheck(id.into()))?;
            vec![c]
        }
    };
    let ctx = Context::global();
    let reports = std::thread::scope(|s| {
        let handles: Vec<_> = selected
            .iter()
            .map(|def| {
                s.spawn(move || {
                    let start = Instant::now();
                    let outcome = (def.run)(ctx, fixtures);
                    let elapsed_ms = start.elapsed().as_millis();
                    let (status, detail) = match outcome {
                        Ok(d) => (Status::Pass, d),
                        Err(d) => (Status::Fail, d),
                    };
                    CheckReport {
                        check_id: def.id,
                        anchor: def.anchor,
                        class: def.class,
                        status,
                        detail,
                        elapsed_ms,
                    }
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("check thread panicked"))
            .collect()
    });
    Ok(reports)
}

pub fn reports_json(reports: &[CheckReport]) -> Value {
    let passed = reports.iter().filter(|r| r.status == Status::Pass).count();
    json!({
        "schema": SCHEMA,
        "checks": reports.iter().map(CheckReport::to_json).collect::<Vec<_>>(),
        "passed": passed,
        "failed": reports.len() - passed,
    })
}

fn random_vector(rng: &mut ChaCha8Rng) -> Vector7 {
    Vector7(std::array::from_fn(|_| {
        FieldElement::from_rational(rational(rng.gen_range(-9..=9), rng.gen_range(1..=5)))
    }))
}

fn phi_identities(_: &Context, _: &Fixtures) -> Outcome {
    for i in 1..=DIM {
        for j in 1..=DIM {
            let want = FieldElement::from_int(if i == j { -6 } else { 0 });
            ensure!(
                phi_contraction_scalar(&Vector7::e(i), &Vector7::e(j)) == want,
                "contraction fails on (e{i}, e{j})"
            );
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6732);
    let pairs = 100;
    for n in 0..pairs {
        let (u, v) = (random_vector(&mut rng), random_vector(&mut rng));
        let d = u.dot(&v);
        ensure!(
            phi_contraction_scalar(&u, &v) == &FieldElement::from_int(-6) * &d,
            "contraction fails on random pair {n}"
        );
        let uv = cross(&u, &v);
        ensure!(
            uv.norm_sq() == &(&u.norm_sq() * &v.norm_sq()) - &(&d * &d),
            "|u×v|² identity fails on random pair {n}"
        );
        ensure!(
            cross(&u, &uv) == &u.scale(&d) - &v.scale(&u.norm_sq()),
            "u×(u×v) identity fails on random pair {n}"
        );
    }
    Ok(format!("49 basis pairs and {pairs} seeded rational pairs satisfy the contraction and cross-product laws"))
}

fn membership(ctx: &Context, _: &Fixtures) -> Outcome {
    let hard = constraint_system();
    ensure!(hard.rank() == 7, "relation system has rank {}", hard.rank());
    let kernel = hard.nullspace().len();
    ensure!(kernel == G2_DIM, "21 - rank = {kernel}");
    let lin = linearized_system();
    let lin_rank = lin.rank();
    ensure!(lin_rank == 35 && lin.nullspace().len() == G2_DIM, "linearized system rank {lin_rank}");
    for (k, b) in ctx.basis.elements().iter().enumerate() {
        ensure!(g2_membership(b), "b{} fails the hard-coded relations", k + 1);
        ensure!(g2_membership_linearized(b), "b{} fails the linearized condition", k + 1);
    }
    ensure!(ctx.basis.is_independent(), "b1..b14 are dependent");
    let closure = closure_failures(&ctx.basis);
    ensure!(closure.is_empty(), "brackets leave the span: {closure:?}");
    let e12 = Matrix7::e(1, 2);
    ensure!(
        !g2_membership(&e12) && !g2_membership_linearized(&e12),
        "E12 is accepted"
    );
    Ok("relations rank 7 on 21 skew parameters, linearized rank 35 on 49 entries, both kernels 14-dimensional and containing b1..b14".into())
}

fn brackets(ctx: &Context, f: &Fixtures) -> Outcome {
    let expected = parsed(fx::parse_real_brackets(&f.real_brackets), "real bracket table")?;
    let computed: BTreeMap<_, _> = ctx.table.relations().into_iter().collect();
    for i in 1..=G2_DIM {
        for j in i + 1..=G2_DIM {
            ensure!(
                computed.get(&(i, j)) == expected.get(&(i, j)),
                "[b{i},b{j}]: computed {:?}, reference {:?}",
                computed.get(&(i, j)),
                expected.get(&(i, j))
            );
        }
    }
    let jac = ctx.table.jacobi_failures();
    ensure!(jac.is_empty(), "Jacobi fails on {:?}", jac.first());
    Ok(format!(
        "91 pairs agree ({} nonzero), Jacobi holds on 364 triples",
        computed.len()
    ))
}

fn killing(ctx: &Context, f: &Fixtures) -> Outcome {
    let b1 = AlgebraElement::basis(1);
    let k11 = ctx.table.killing_form(&b1, &b1);
    ensure!(k11 == FieldElement::from_int(f.killing_b1_b1), "K(b1,b1) = {k11}");
    let expected = parsed(fx::parse_killing_complex(&f.killing_complex), "complex Killing table")?;
    let k = killing_complex_pairings(&ctx.table, &ctx.complex_basis);
    for a in Label::all() {
        for b in Label::all() {
            let want = expected.get(&(a.min(b), a.max(b))).cloned().unwrap_or_default();
            ensure!(k[(a.index(), b.index())] == want, "K({a},{b}) = {}", k[(a.index(), b.index())]);
        }
    }
    let km = ctx.table.killing_matrix();
    ensure!(km == km.transpose(), "Killing matrix is not symmetric");
    for (n, m) in km.leading_principal_minors().iter().enumerate() {
        let positive = m.is_positive();
        ensure!(
            !m.is_zero() && positive == (n % 2 == 1),
            "leading minor {} = {m} breaks the alternating sign pattern",
            n + 1
        );
    }
    for x in 1..=G2_DIM {
        for y in 1..=G2_DIM {
            let xy = ctx.table.bracket_basis(x, y);
            for z in 1..=G2_DIM {
                let xz = ctx.table.bracket_basis(x, z);
                let mut s = FieldElement::zero();
                for (m, c) in xy.support() {
                    s += &(c * &km[(m - 1, z - 1)]);
                }
                for (m, c) in xz.support() {
                    s += &(c * &km[(y - 1, m - 1)]);
                }
                ensure!(s.is_zero(), "ad-invariance fails at (b{x}, b{y}, b{z})");
            }
        }
    }
    Ok("K(b1,b1) = -16, complex pairings agree, K negative definite and ad-invariant on 2744 basis triples".into())
}

fn roots(ctx: &Context, f: &Fixtures) -> Outcome {
    let cb = &ctx.complex_basis;
    for (label, x) in parsed(fx::parse_root_vectors(&f.root_vectors), "root vectors")? {
        ensure!(cb.element(label) == &x, "{label} differs from the reference vector");
    }
    let values = parsed(fx::parse_root_values(&f.root_values), "root values")?;
    ensure!(values.len() == 6, "{} root rows", values.len());
    for rv in values {
        let Label::E(j) = rv.label else {
            return Err(format!("root row on {}", rv.label));
        };
        let root = &cb.roots[j as usize - 1];
        ensure!(
            root.value_on_b1 == rv.on_b1
                && root.value_on_b12 == rv.on_b12
                && root.on_h1() == rv.on_h1
                && root.on_h2() == rv.on_h2,
            "root values of {} differ",
            rv.label
        );
        ensure!(
            verify_root_vector(&ctx.table, cb.element(rv.label), root),
            "{} is not an eigenvector for b1 and b12",
            rv.label
        );
    }
    for (k, x) in parsed(fx::parse_change_of_basis(&f.change_of_basis), "change of basis")? {
        ensure!(ctx.cob.b_in_complex(k) == x, "b{k} in complex coordinates differs");
        ensure!(ctx.cob.real_coords(&x) == AlgebraElement::basis(k), "round trip of b{k} fails");
    }
    let grading = ctx.complex_table.grading_failures(cb);
    ensure!(grading.is_empty(), "root grading fails on {grading:?}");
    Ok("six root vectors satisfy both eigen-relations, values on b1, b12, H1, H2 agree, 14 change-of-basis rows round-trip".into())
}

fn brackets_complex(ctx: &Context, f: &Fixtures) -> Outcome {
    let expected = parsed(fx::parse_complex_brackets(&f.complex_brackets), "complex bracket table")?;
    let computed: BTreeMap<_, _> = ctx.complex_table.relations().into_iter().collect();
    for a in Label::all() {
        for b in Label::all().into_iter().filter(|&b| a < b) {
            ensure!(
                computed.get(&(a, b)) == expected.get(&(a, b)),
                "[{a},{b}]: computed {:?}, reference {:?}",
                computed.get(&(a, b)),
                expected.get(&(a, b))
            );
        }
    }
    let conj = ctx.complex_table.conjugation_failures();
    ensure!(conj.is_empty(), "conjugation symmetry fails on {conj:?}");
    Ok(format!("{} nonzero relations agree, conjugation symmetric", computed.len()))
}

fn complex_structure(ctx: &Context, f: &Fixtures) -> Outcome {
    for (k, x) in parsed(fx::parse_j_real(&f.j_real), "J table")? {
        ensure!(ctx.j.image_of_basis(k) == x, "J b{k} differs");
    }
    ensure!(ctx.j.is_real(), "J is not real");
    ensure!(ctx.j.squares_to_minus_identity(), "J² ≠ -1");
    ensure!(ctx.j.preserves_torus(), "J does not preserve the torus");
    let nij = nijenhuis_failures(&ctx.table, &ctx.j);
    ensure!(nij.is_empty(), "Nijenhuis tensor nonzero on {:?}", nij.first());
    ensure!(check_killing_compatible(&ctx.table, &ctx.j), "K(J·,J·) ≠ K");
    Ok("J agrees on b1..b14, J² = -1, Nijenhuis tensor vanishes on 91 pairs, K(J·,J·) = K".into())
}

fn hermitian(ctx: &Context, f: &Fixtures) -> Outcome {
    let expected = parsed(fx::parse_hermitian_entries(&f.hermitian_entries), "Hermitian entries")?;
    let computed: BTreeMap<_, _> = ctx.metric.nonzero_upper().into_iter().collect();
    for (k, v) in &computed {
        ensure!(expected.get(k) == Some(v), "g(b{},b{}) = {v} not in the reference", k.0, k.1);
    }
    ensure!(computed.len() == expected.len(), "{} entries vs {}", computed.len(), expected.len());
    ensure!(ctx.metric.is_symmetric() && ctx.metric.is_real(), "family is not real symmetric");
    ensure!(ctx.metric.j_compatible(&ctx.j), "family is not J-compatible");
    ensure!(ctx.metric.torus_invariant(&ctx.table), "family is not torus-invariant");
    Ok(format!("{} upper-triangle entries agree; family is real, J-compatible and torus-invariant", computed.len()))
}

fn d_table(ctx: &Context, f: &Fixtures) -> Outcome {
    let rows = parsed(fx::parse_d_table(&f.d_table), "d table")?;
    ensure!(rows.len() == G2_DIM, "{} rows", rows.len());
    for (l, form) in rows {
        ensure!(ctx.dtable.d_label(l) == &form, "d{l}: computed {}", ctx.dtable.d_label(l));
        ensure!(ctx.dtable.d(&form).is_empty(), "d d{l} ≠ 0");
    }
    for l in DualLabel::all() {
        let single = g2skt_core::forms::ScalarForm::monomial(&[l], FieldElement::one());
        ensure!(
            ctx.dtable.d(&single) == d_alternating_sum(&ctx.complex_table, &single),
            "d{l} disagrees with the alternating-sum formula"
        );
    }
    Ok("14 exterior derivatives agree term for term, d² = 0 on each".into())
}

fn torsion_c(ctx: &Context, f: &Fixtures) -> Outcome {
    let expected = parsed(fx::parse_lambda_form(&f.torsion_c), "torsion table")?;
    ensure!(ctx.c == expected, "c differs: computed {}", ctx.c);
    let omega = fundamental_form();
    ensure!(
        ctx.c == d_alternating_sum(&ctx.complex_table, &omega).j_action(),
        "c differs from J applied to the alternating-sum dω"
    );
    Ok(format!("{} terms agree", ctx.c.len()))
}

fn torsion_dc(ctx: &Context, f: &Fixtures) -> Outcome {
    let expected = parsed(fx::parse_lambda_form(&f.torsion_dc), "dc table")?;
    ensure!(ctx.dc.len() == 16, "dc has {} terms", ctx.dc.len());
    let mut zeros = 0;
    for t in label_tuples(4) {
        let v = ctx.dc.coeff(&t);
        ensure!(v == expected.coeff(&t), "coefficient of {t:?} differs");
        if v.is_zero() {
            zeros += 1;
        }
    }
    ensure!(zeros == 1001 - 16, "{zeros} vanishing quadruples");
    ensure!(ctx.dc == d_alternating_sum(&ctx.complex_table, &ctx.c), "dc disagrees with the alternating-sum formula");
    Ok("16 nonzero terms agree, the other 985 label quadruples vanish".into())
}

fn skt_solve(ctx: &Context, f: &Fixtures) -> Outcome {
    let expected = parsed(fx::parse_skt_solution(&f.skt_solution), "solution")?;
    let sol = &ctx.solution;
    ensure!(sol.pinned == expected, "pinned λ's differ: {:?}", sol.pinned);
    ensure!(sol.free == vec![3, 5, 6], "free λ's {:?}", sol.free);
    ensure!(sol.dimension() == 3, "solution dimension {}", sol.dimension());
    let images = sol.images();
    ensure!(
        ctx.dc.map_coeffs(|l| l.substitute(&images)).is_empty(),
        "substitution leaves dc nonzero"
    );
    Ok("dimension 3 with λ3, λ5, λ6 free; λ0, λ1, λ2, λ4 agree; dc vanishes after substitution".into())
}

/// Grid `(0, 10)² × (0, 40)` with ten rational values per axis.
pub fn region_grid() -> Vec<MetricParams3> {
    let half = |k: i64| rational(2 * k + 1, 2);
    let mut out = Vec::with_capacity(1000);
    for i in 0..10 {
        for j in 0..10 {
            for k in 0..10 {
                out.push(MetricParams3::new(half(i), half(j), int(4 * k + 2)));
            }
        }
    }
    out
}

fn skt_metric_entries(ctx: &Context, f: &Fixtures) -> Outcome {
    let expected = parsed(fx::parse_skt_metric_entries(&f.skt_metric_entries), "SKT metric entries")?;
    let sym = skt_metric_symbolic(&ctx.metric, &ctx.solution);
    let computed: BTreeMap<(usize, usize), LambdaLinear> = sym.nonzero_upper().into_iter().collect();
    ensure!(computed == expected, "SKT metric entries differ");
    let mut inside = 0;
    for a in region_grid() {
        let r = positivity_region(&a);
        ensure!(
            r == lambdas_positive(&ctx.solution, &a),
            "region test and λ-positivity disagree at ({}, {}, {})",
            a.a1,
            a.a2,
            a.a3
        );
        inside += r as usize;
    }
    Ok(format!(
        "{} entries agree; region test matches λ-positivity on 1000 grid points ({inside} inside)",
        computed.len()
    ))
}

fn torus(ctx: &Context, _: &Fixtures) -> Outcome {
    let sym = skt_metric_symbolic(&ctx.metric, &ctx.solution);
    ensure!(sym.torus_invariant(&ctx.table), "symbolic SKT metric is not torus-invariant");
    for a in [MetricParams3::from_ints(3, 1, 1), MetricParams3::from_ints(96, 32, 96)] {
        let g = skt_metric(&ctx.metric, &ctx.solution, &a).map_err(|e| e.to_string())?;
        let bad = torus_invariance_failures(&ctx.table, &g);
        ensure!(bad.is_empty(), "{} identities fail at ({}, {}, {})", bad.len(), a.a1, a.a2, a.a3);
        ensure!(check_j_compatible(&g, &ctx.j), "not J-compatible at ({}, {}, {})", a.a1, a.a2, a.a3);
    }
    Ok("2×196 identities hold symbolically and at two sample points".into())
}

fn biinvariant(ctx: &Context, f: &Fixtures) -> Outcome {
    let k = ctx.table.killing_matrix();
    for lam in [int(1), rational(1, 32), rational(7, 3)] {
        let a = biinvariant_params(&lam).map_err(|e| e.to_string())?;
        let lv = lambda_values(&ctx.solution, &a);
        for (n, (v, w)) in lv.iter().zip(f.biinvariant_lambdas).enumerate() {
            ensure!(
                *v == FieldElement::from_rational(int(w) * &lam),
                "λ{n} = {v} at scale {lam}"
            );
        }
        let g = skt_metric(&ctx.metric, &ctx.solution, &a).map_err(|e| e.to_string())?;
        ensure!(
            g.matrix() == &k.scale(&-FieldElement::from_rational(lam.clone())),
            "metric is not -{lam}·K"
        );
        ensure!(ctx.dc.map_coeffs(|l| l.evaluate(&lv)).is_empty(), "dc ≠ 0 at scale {lam}");
    }
    Ok("(96λ, 32λ, 96λ) gives g = -λK for λ in {1, 1/32, 7/3}".into())
}

fn converse(ctx: &Context, _: &Fixtures) -> Outcome {
    let space = converse_space(&ctx.table, &ctx.j, &ctx.metric, &ctx.dc).map_err(|e| e.to_string())?;
    ensure!(space.dimension() == 7, "invariant forms span dimension {}", space.dimension());
    ensure!(space.spans_family, "invariant forms do not span the Hermitian family");
    ensure!(space.skt_dimension == 3, "SKT subspace has dimension {}", space.skt_dimension);
    Ok("J- and torus-invariant symmetric forms: dimension 7, equal to the Hermitian family; dc = 0 cuts out dimension 3".into())
}

fn float_sample(ctx: &Context, _: &Fixtures) -> Outcome {
    let model = FloatModel::new(ctx);
    let report = sample(&model, &SampleConfig::new(100, 42)).map_err(|e| e.to_string())?;
    ensure!(report.all_pass(), "{}", report.render_text().trim_end().replace('\n', "; "));
    let group = group_check(&model, 20, 42, GROUP_TOL).map_err(|e| e.to_string())?;
    ensure!(group.pass() && group.control_rejected(), "{}", group.render_text().trim_end().replace('\n', "; "));
    Ok(format!(
        "100 sampled metrics within 1e-9 (max dc {:.1e}); 20 exponentials within 1e-8 (max {:.1e})",
        report.max_dc(),
        group.worst.max()
    ))
}
