//! Double-precision cross-checks: random sampling of the SKT family and
//! matrix exponentials of algebra elements.
//!
//! Everything here is independent of the exact certificates. The metric is
//! assembled from the symbolic entries with float arithmetic, and the
//! torsion derivative is recomputed from the real structure constants
//! rather than read from the exact forms.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use g2skt_core::context::Context;
use g2skt_core::g2::G2_DIM;
use g2skt_core::r7::{build_phi, DIM};
use g2skt_core::skt::{skt_metric_symbolic, A_INDEX};
use g2skt_core::FieldElement;

use crate::{CliError, SCHEMA};

pub const PRNG_NAME: &str = "ChaCha8Rng";
pub const DEFAULT_TOL: f64 = 1e-9;
pub const GROUP_TOL: f64 = 1e-8;
pub const DEFAULT_BOX: [(f64, f64); 3] = [(0.0, 10.0), (0.0, 10.0), (0.0, 40.0)];
/// Draw budget per requested sample.
pub const DRAW_FACTOR: usize = 100;

const N: usize = G2_DIM;

fn f(x: &FieldElement) -> f64 {
    x.to_f64().expect("real tables have real entries")
}

/// Float copies of the structure constants, `J`, the SKT metric entries
/// and φ.
pub struct FloatModel {
    /// `c[(i·14 + j)·14 + k] = c_{ij}^k`, 0-based.
    c: Vec<f64>,
    j: DMatrix<f64>,
    /// Coefficients of `a1, a2, a3` in each metric entry.
    g: [DMatrix<f64>; 3],
    phi: Vec<f64>,
    basis: Vec<DMatrix<f64>>,
}

impl FloatModel {
    pub fn new(ctx: &Context) -> Self {
        let mut c = vec![0.0; N * N * N];
        for i in 0..N {
            for j in 0..N {
                for (k, v) in ctx.table.bracket_basis(i + 1, j + 1).support() {
                    c[(i * N + j) * N + (k - 1)] = f(v);
                }
            }
        }
        let jm = ctx.j.matrix();
        let j = DMatrix::from_fn(N, N, |r, s| f(&jm[(r, s)]));
        let sym = skt_metric_symbolic(&ctx.metric, &ctx.solution);
        let g = A_INDEX.map(|idx| DMatrix::from_fn(N, N, |p, q| f(sym.entry(p + 1, q + 1).coeff(idx))));
        let phi_exact = build_phi();
        let mut phi = vec![0.0; DIM * DIM * DIM];
        for a in 0..DIM {
            for b in 0..DIM {
                for d in 0..DIM {
                    phi[(a * DIM + b) * DIM + d] = f(&phi_exact.coeff(&[a as u8 + 1, b as u8 + 1, d as u8 + 1]));
                }
            }
        }
        let basis = ctx
            .basis
            .elements()
            .iter()
            .map(|m| DMatrix::from_fn(DIM, DIM, |r, s| f(m.at(r + 1, s + 1))))
            .collect();
        Self { c, j, g, phi, basis }
    }

    pub fn metric(&self, a: [f64; 3]) -> DMatrix<f64> {
        &self.g[0] * a[0] + &self.g[1] * a[1] + &self.g[2] * a[2]
    }

    pub fn j(&self) -> &DMatrix<f64> {
        &self.j
    }

    fn cst(&self, i: usize, j: usize, k: usize) -> f64 {
        self.c[(i * N + j) * N + k]
    }

    /// `max |JᵀgJ − g|`.
    pub fn j_residual(&self, g: &DMatrix<f64>) -> f64 {
        (self.j.transpose() * g * &self.j - g).amax()
    }

    /// Whether a Cholesky factor exists, and `max |LLᵀ − g|` when it does.
    pub fn cholesky_residual(&self, g: &DMatrix<f64>) -> Option<f64> {
        let l = g.clone().cholesky()?.l();
        Some((&l * l.transpose() - g).amax())
    }

    /// The torsion 3-form `c(X,Y,Z) = dω(JX,JY,JZ)` with `ω = g(J·,·)`,
    /// as a dense `14³` array.
    fn torsion(&self, g: &DMatrix<f64>) -> Vec<f64> {
        let omega = self.j.transpose() * g;
        // a[x][y][z] = ω([b_x, b_y], b_z)
        let mut a = vec![0.0; N * N * N];
        for x in 0..N {
            for y in 0..N {
                for m in 0..N {
                    let s = self.cst(x, y, m);
                    if s == 0.0 {
                        continue;
                    }
                    for z in 0..N {
                        a[(x * N + y) * N + z] += s * omega[(m, z)];
                    }
                }
            }
        }
        let at = |x: usize, y: usize, z: usize| a[(x * N + y) * N + z];
        let mut t = vec![0.0; N * N * N];
        for x in 0..N {
            for y in 0..N {
                for z in 0..N {
                    t[(x * N + y) * N + z] = -at(x, y, z) - at(y, z, x) - at(z, x, y);
                }
            }
        }
        // Pull back by J in each slot.
        for slot in 0..3 {
            let mut u = vec![0.0; N * N * N];
            for x in 0..N {
                for y in 0..N {
                    for z in 0..N {
                        let idx = [x, y, z];
                        let mut s = 0.0;
                        for m in 0..N {
                            let jm = self.j[(m, idx[slot])];
                            if jm == 0.0 {
                                continue;
                            }
                            let mut k = idx;
                            k[slot] = m;
                            s += jm * t[(k[0] * N + k[1]) * N + k[2]];
                        }
                        u[(x * N + y) * N + z] = s;
                    }
                }
            }
            t = u;
        }
        t
    }

    /// `max |dc|` over all increasing basis quadruples.
    pub fn dc_residual(&self, g: &DMatrix<f64>) -> f64 {
        let c = self.torsion(g);
        let cb = |p: usize, q: usize, y: usize, z: usize| -> f64 {
            (0..N).map(|m| self.cst(p, q, m) * c[(m * N + y) * N + z]).sum()
        };
        let mut worst: f64 = 0.0;
        for w in 0..N {
            for x in w + 1..N {
                for y in x + 1..N {
                    for z in y + 1..N {
                        let v = -cb(w, x, y, z) + cb(w, y, x, z) - cb(w, z, x, y) - cb(x, y, w, z) + cb(x, z, w, y)
                            - cb(y, z, w, x);
                        worst = worst.max(v.abs());
                    }
                }
            }
        }
        worst
    }

    pub fn point(&self, a: [f64; 3]) -> PointResult {
        let g = self.metric(a);
        PointResult {
            a,
            cholesky: self.cholesky_residual(&g),
            j: self.j_residual(&g),
            dc: self.dc_residual(&g),
        }
    }

    fn phi_at(&self, u: &DVector<f64>, v: &DVector<f64>, w: &DVector<f64>) -> f64 {
        let mut s = 0.0;
        for a in 0..DIM {
            for b in 0..DIM {
                let uv = u[a] * v[b];
                if uv == 0.0 {
                    continue;
                }
                for d in 0..DIM {
                    s += self.phi[(a * DIM + b) * DIM + d] * uv * w[d];
                }
            }
        }
        s
    }

    /// `(u × v)_d = φ(u, v, e_d)`.
    fn cross(&self, u: &DVector<f64>, v: &DVector<f64>) -> DVector<f64> {
        DVector::from_fn(DIM, |d, _| {
            let mut s = 0.0;
            for a in 0..DIM {
                for b in 0..DIM {
                    s += self.phi[(a * DIM + b) * DIM + d] * u[a] * v[b];
                }
            }
            s
        })
    }

    pub fn basis_matrix(&self, k: usize) -> &DMatrix<f64> {
        &self.basis[k - 1]
    }

    /// Residuals of `F = exp(tX)` against the group facts.
    pub fn group_residuals(&self, x: &DMatrix<f64>, t: f64, u: &DVector<f64>, v: &DVector<f64>) -> GroupResiduals {
        let fm = (x * t).exp();
        let cols: Vec<DVector<f64>> = (0..DIM).map(|k| fm.column(k).into_owned()).collect();
        let mut phi: f64 = 0.0;
        for a in 0..DIM {
            for b in a + 1..DIM {
                for d in b + 1..DIM {
                    let want = self.phi[(a * DIM + b) * DIM + d];
                    phi = phi.max((self.phi_at(&cols[a], &cols[b], &cols[d]) - want).abs());
                }
            }
        }
        let orthogonal = (fm.transpose() * &fm - DMatrix::identity(DIM, DIM)).amax();
        let det = (fm.determinant() - 1.0).abs();
        let cross = (&fm * self.cross(u, v) - self.cross(&(&fm * u), &(&fm * v))).amax();
        GroupResiduals {
            phi,
            orthogonal,
            det,
            cross,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointResult {
    pub a: [f64; 3],
    /// `None` when the factorization fails.
    pub cholesky: Option<f64>,
    pub j: f64,
    pub dc: f64,
}

impl PointResult {
    pub fn pd_pass(&self, tol: f64) -> bool {
        self.cholesky.is_some_and(|r| r < tol)
    }
}

/// Strict float version of `0 < a2 < a1`, `γ < a3 < 4a1 − 3a2`.
pub fn in_region(a: [f64; 3]) -> bool {
    let [a1, a2, a3] = a;
    let gamma = (3.0 * a2 - 2.0 * a1).max(a1 - 3.0 * a2).max(0.0);
    0.0 < a2 && a2 < a1 && gamma < a3 && a3 < 4.0 * a1 - 3.0 * a2
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleConfig {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub bounds: [(f64, f64); 3],
    /// Evaluate this point instead of drawing.
    pub point: Option<[f64; 3]>,
}

impl SampleConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        Self {
            samples,
            seed,
            tol: DEFAULT_TOL,
            bounds: DEFAULT_BOX,
            point: None,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.samples == 0 {
            return Err(CliError::BadInput("--n must be at least 1".into()));
        }
        if self.tol.is_nan() || self.tol < 0.0 || self.tol.is_infinite() {
            return Err(CliError::BadInput(format!("tolerance {} is not a finite non-negative number", self.tol)));
        }
        for (k, (lo, hi)) in self.bounds.iter().enumerate() {
            if lo.partial_cmp(hi) != Some(std::cmp::Ordering::Less) || !lo.is_finite() || !hi.is_finite() {
                return Err(CliError::BadInput(format!("box for a{} is empty: ({lo}, {hi})", k + 1)));
            }
        }
        if let Some(p) = self.point {
            if !in_region(p) {
                return Err(CliError::BadInput(format!("forced point {p:?} lies outside the SKT region")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleReport {
    pub config: SampleConfig,
    pub draws: usize,
    pub results: Vec<PointResult>,
}

impl SampleReport {
    pub fn accepted(&self) -> usize {
        self.results.len()
    }

    pub fn pd_passes(&self) -> usize {
        self.results.iter().filter(|r| r.pd_pass(self.config.tol)).count()
    }

    pub fn j_passes(&self) -> usize {
        self.results.iter().filter(|r| r.j < self.config.tol).count()
    }

    pub fn dc_passes(&self) -> usize {
        self.results.iter().filter(|r| r.dc < self.config.tol).count()
    }

    pub fn max_cholesky(&self) -> f64 {
        self.results.iter().map(|r| r.cholesky.unwrap_or(f64::INFINITY)).fold(0.0, f64::max)
    }

    pub fn max_j(&self) -> f64 {
        self.results.iter().map(|r| r.j).fold(0.0, f64::max)
    }

    pub fn max_dc(&self) -> f64 {
        self.results.iter().map(|r| r.dc).fold(0.0, f64::max)
    }

    pub fn all_pass(&self) -> bool {
        let n = self.accepted();
        n > 0 && self.pd_passes() == n && self.j_passes() == n && self.dc_passes() == n
    }

    pub fn render_text(&self) -> String {
        let c = &self.config;
        let n = self.accepted();
        let mut out = String::from("g2skt sample (class: float)\n");
        out.push_str(&format!("prng: {PRNG_NAME} seed={}\n", c.seed));
        match c.point {
            Some(p) => out.push_str(&format!("point: a1={} a2={} a3={}\n", p[0], p[1], p[2])),
            None => {
                let b = &c.bounds;
                out.push_str(&format!(
                    "box: a1 in ({}, {}), a2 in ({}, {}), a3 in ({}, {})\n",
                    b[0].0, b[0].1, b[1].0, b[1].1, b[2].0, b[2].1
                ));
            }
        }
        out.push_str(&format!("tolerance: {:e}\n", c.tol));
        out.push_str(&format!(
            "requested: {} draws: {} accepted: {} rejected: {}\n",
            c.samples,
            self.draws,
            n,
            self.draws - n
        ));
        out.push_str(&format!(
            "positive-definite: {}/{n} pass, max |LLᵀ - g| = {:.3e}\n",
            self.pd_passes(),
            self.max_cholesky()
        ));
        out.push_str(&format!("j-invariance: {}/{n} pass, max |JᵀgJ - g| = {:.3e}\n", self.j_passes(), self.max_j()));
        out.push_str(&format!("dc residual: {}/{n} pass, max |dc| = {:.3e}\n", self.dc_passes(), self.max_dc()));
        if n == 0 {
            out.push_str("warning: no accepted samples\n");
        } else if n < c.samples {
            out.push_str(&format!("warning: draw budget exhausted after {} draws\n", self.draws));
        }
        out.push_str(if self.all_pass() { "result: PASS\n" } else { "result: FAIL\n" });
        out
    }

    pub fn to_json(&self) -> Value {
        let c = &self.config;
        json!({
            "schema": SCHEMA,
            "class": "float",
            "prng": PRNG_NAME,
            "seed": c.seed,
            "tolerance": c.tol,
            "box": c.bounds.iter().map(|(lo, hi)| json!([lo, hi])).collect::<Vec<_>>(),
            "point": c.point,
            "requested": c.samples,
            "draws": self.draws,
            "accepted": self.accepted(),
            "positive_definite": {"pass": self.pd_passes(), "max_residual": self.max_cholesky()},
            "j_invariance": {"pass": self.j_passes(), "max_residual": self.max_j()},
            "dc": {"pass": self.dc_passes(), "max_residual": self.max_dc()},
            "pass": self.all_pass(),
        })
    }
}

/// Draws uniformly from the box until `samples` points land in the region
/// or `DRAW_FACTOR · samples` draws have been spent.
pub fn sample(model: &FloatModel, cfg: &SampleConfig) -> Result<SampleReport, CliError> {
    cfg.validate()?;
    if let Some(p) = cfg.point {
        return Ok(SampleReport {
            config: cfg.clone(),
            draws: 1,
            results: vec![model.point(p)],
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut results = Vec::with_capacity(cfg.samples);
    let mut draws = 0;
    while results.len() < cfg.samples && draws < DRAW_FACTOR * cfg.samples {
        draws += 1;
        let a = cfg.bounds.map(|(lo, hi)| rng.gen_range(lo..hi));
        if in_region(a) {
            results.push(model.point(a));
        }
    }
    Ok(SampleReport {
        config: cfg.clone(),
        draws,
        results,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroupResiduals {
    pub phi: f64,
    pub orthogonal: f64,
    pub det: f64,
    pub cross: f64,
}

impl GroupResiduals {
    pub fn max(&self) -> f64 {
        self.phi.max(self.orthogonal).max(self.det).max(self.cross)
    }

    fn merge(self, o: GroupResiduals) -> GroupResiduals {
        GroupResiduals {
            phi: self.phi.max(o.phi),
            orthogonal: self.orthogonal.max(o.orthogonal),
            det: self.det.max(o.det),
            cross: self.cross.max(o.cross),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroupReport {
    pub n: usize,
    pub seed: u64,
    pub tol: f64,
    pub worst: GroupResiduals,
    /// `exp(0.3·E12)` with `E12` the unit skew matrix outside the algebra.
    pub control: GroupResiduals,
}

impl GroupReport {
    pub fn pass(&self) -> bool {
        self.worst.max() < self.tol
    }

    pub fn control_rejected(&self) -> bool {
        self.control.phi >= self.tol
    }

    pub fn render_text(&self) -> String {
        let w = &self.worst;
        let mut out = String::from("g2skt group-check (class: float)\n");
        out.push_str(&format!("prng: {PRNG_NAME} seed={}\n", self.seed));
        out.push_str(&format!("exponentials: {} tolerance: {:e}\n", self.n, self.tol));
        out.push_str(&format!("max |F*phi - phi| = {:.3e}\n", w.phi));
        out.push_str(&format!("max |FᵀF - I| = {:.3e}\n", w.orthogonal));
        out.push_str(&format!("max |det F - 1| = {:.3e}\n", w.det));
        out.push_str(&format!("max |F(u×v) - Fu×Fv| = {:.3e}\n", w.cross));
        out.push_str(&format!(
            "negative control exp(0.3 E12): |F*phi - phi| = {:.3e} ({})\n",
            self.control.phi,
            if self.control_rejected() { "rejected as expected" } else { "NOT rejected" }
        ));
        let ok = self.pass() && self.control_rejected();
        out.push_str(if ok { "result: PASS\n" } else { "result: FAIL\n" });
        out
    }

    pub fn to_json(&self) -> Value {
        let r = |g: &GroupResiduals| json!({"phi": g.phi, "orthogonal": g.orthogonal, "det": g.det, "cross": g.cross});
        json!({
            "schema": SCHEMA,
            "class": "float",
            "prng": PRNG_NAME,
            "seed": self.seed,
            "exponentials": self.n,
            "tolerance": self.tol,
            "max_residuals": r(&self.worst),
            "negative_control": r(&self.control),
            "pass": self.pass() && self.control_rejected(),
        })
    }
}

pub fn e12() -> DMatrix<f64> {
    let mut m = DMatrix::zeros(DIM, DIM);
    m[(0, 1)] = -1.0;
    m[(1, 0)] = 1.0;
    m
}

fn unit_vec(rng: &mut ChaCha8Rng) -> DVector<f64> {
    DVector::from_fn(DIM, |_, _| rng.gen_range(-1.0..1.0))
}

/// `n` exponentials `exp(tX)` with `X` a random combination of the basis
/// and `t ∈ (−1, 1)`.
pub fn group_check(model: &FloatModel, n: usize, seed: u64, tol: f64) -> Result<GroupReport, CliError> {
    if n == 0 {
        return Err(CliError::BadInput("--n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zero = GroupResiduals {
        phi: 0.0,
        orthogonal: 0.0,
        det: 0.0,
        cross: 0.0,
    };
    let mut worst = zero;
    for _ in 0..n {
        let mut x = DMatrix::zeros(DIM, DIM);
        for k in 1..=G2_DIM {
            x += model.basis_matrix(k) * rng.gen_range(-1.0..1.0);
        }
        let t = rng.gen_range(-1.0..1.0);
        let (u, v) = (unit_vec(&mut rng), unit_vec(&mut rng));
        worst = worst.merge(model.group_residuals(&x, t, &u, &v));
    }
    let (u, v) = (unit_vec(&mut rng), unit_vec(&mut rng));
    let control = model.group_residuals(&e12(), 0.3, &u, &v);
    Ok(GroupReport {
        n,
        seed,
        tol,
        worst,
        control,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::OnceLock;

    fn model() -> &'static FloatModel {
        static M: OnceLock<FloatModel> = OnceLock::new();
        M.get_or_init(|| FloatModel::new(Context::global()))
    }

    #[test]
    fn killing_point_has_zero_dc() {
        let r = model().point([96.0, 32.0, 96.0]);
        assert!(r.dc < 1e-9, "{r:?}");
        assert!(r.pd_pass(1e-9));
        assert!(r.j < 1e-12);
    }

    #[test]
    fn non_skt_hermitian_metric_has_nonzero_dc() {
        let ctx = Context::global();
        let m = model();
        let ones = [(); 7].map(|_| FieldElement::one());
        let g_exact = ctx.metric.evaluate(&ones);
        let g = DMatrix::from_fn(N, N, |p, q| f(g_exact.entry(p + 1, q + 1)));
        assert!(m.j_residual(&g) < 1e-12);
        assert!(m.dc_residual(&g) > 1e-3);
    }

    #[test]
    fn identity_exponential_has_zero_residuals() {
        let m = model();
        let u = DVector::from_element(DIM, 0.5);
        let r = m.group_residuals(m.basis_matrix(1), 0.0, &u, &u);
        assert_eq!(r.max(), 0.0);
    }

    #[test]
    fn e12_breaks_phi() {
        let m = model();
        let u = DVector::from_element(DIM, 0.5);
        assert!(m.group_residuals(&e12(), 0.3, &u, &u).phi > 1e-2);
    }

    #[test]
    fn sampling_is_reproducible() {
        let cfg = SampleConfig::new(5, 7);
        let a = sample(model(), &cfg).unwrap();
        let b = sample(model(), &cfg).unwrap();
        assert_eq!(a.render_text(), b.render_text());
        assert!(a.all_pass(), "{}", a.render_text());
    }

    #[test]
    fn zero_tolerance_fails_everything() {
        let mut cfg = SampleConfig::new(5, 7);
        cfg.tol = 0.0;
        let r = sample(model(), &cfg).unwrap();
        assert_eq!((r.pd_passes(), r.j_passes(), r.dc_passes()), (0, 0, 0));
        assert!(!r.all_pass());
    }

    #[test]
    fn region_edges_are_excluded() {
        assert!(in_region([3.0, 1.0, 1.0]));
        assert!(!in_region([1.0, 2.0, 1.0]));
        assert!(!in_region([3.0, 1.0, 9.0]));
        assert!(!in_region([3.0, 1.0, 0.0]));
    }
}
