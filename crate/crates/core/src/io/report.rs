//! Command dispatch and deterministic reports.

use super::input::{print_job, JobSpec};
use crate::algebra::{GradedMatrix, RingRef};
use crate::ci::{self, ProxyWitness, DEFAULT_BOUND};
use crate::complex::{complex_homology, koszul_complex, FreeComplex};
use crate::dg::{c_tilde, koszul_action, u_construction, KoszulAlgebra, PresentedComplex};
use crate::error::{Error, Result};
use crate::ext::{self, GradedAModule, SupportVariety};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::sync::Arc;

pub const COMMANDS: &[&str] = &[
    "ci-check",
    "koszul-homology",
    "ext-kk",
    "ext-module",
    "support-variety",
    "c-tilde-variety",
    "proxy-witness",
    "verify-witness",
    "selftest",
];

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub input_echo: String,
    pub result: Value,
    pub n: Option<usize>,
    pub smax: Option<usize>,
    pub stable: Option<bool>,
}

impl Report {
    pub fn to_value(&self) -> Value {
        json!({
            "command": self.command,
            "input_echo": self.input_echo,
            "result": self.result,
            "provenance": {
                "N": self.n,
                "smax": self.smax,
                "stable": self.stable,
                "order": "degrevlex",
                "version": VERSION,
            },
        })
    }

    /// Pretty JSON with lexicographically sorted keys.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("values serialize") + "\n"
    }

    /// An indented `key: value` rendering of the same data.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut v = self.to_value();
        if let Some(obj) = v.as_object_mut() {
            obj.remove("input_echo");
        }
        render_text(&mut out, &v, 0);
        out
    }
}

fn render_text(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if is_scalar_like(x) {
                    writeln!(out, "{pad}{k}: {}", scalar_text(x)).unwrap();
                } else {
                    writeln!(out, "{pad}{k}:").unwrap();
                    render_text(out, x, indent + 1);
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if is_scalar_like(x) {
                    writeln!(out, "{pad}- {}", scalar_text(x)).unwrap();
                } else {
                    writeln!(out, "{pad}-").unwrap();
                    render_text(out, x, indent + 1);
                }
            }
        }
        _ => writeln!(out, "{pad}{}", scalar_text(v)).unwrap(),
    }
}

fn is_scalar_like(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|x| !x.is_object() && !x.is_array()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(scalar_text).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn ideal_text(gens: &[String]) -> String {
    format!("({})", gens.join(", "))
}

fn variety_json(v: &SupportVariety) -> Value {
    let ideal = v.ideal_strings();
    json!({
        "ideal": ideal,
        "variety_ideal": ideal_text(&ideal),
        "dimension": v.dimension,
        "empty": v.is_empty(),
        "stable": v.stable,
    })
}

fn ext_json(x: &GradedAModule, t_max: i32) -> Value {
    json!({
        "rank": x.rank(),
        "generator_degrees": x.generator_degrees(),
        "relations": x.relations_text(),
        "hilbert": x.hilbert(t_max),
        "exact_through": t_max,
    })
}

fn complex_json(ring: &RingRef, c: &FreeComplex) -> Value {
    let comps: Vec<Value> = c
        .degrees()
        .map(|s| {
            let d = c.diff(s);
            let entries: Vec<Vec<String>> = d.entries().iter().map(|r| r.iter().map(|f| ring.fmt_poly(f)).collect()).collect();
            json!({ "degree": s, "twists": c.twists(s), "differential": entries })
        })
        .collect();
    json!({ "lo": c.lo(), "ranks": c.ranks(), "components": comps })
}

struct Context {
    q: RingRef,
    job: JobSpec,
}

impl Context {
    fn new(job: &JobSpec) -> Result<Self> {
        Ok(Self { q: job.ambient()?, job: job.clone() })
    }

    fn relations(&self) -> Result<Vec<crate::algebra::Poly>> {
        self.job.relations(&self.q)
    }

    fn ring(&self) -> Result<RingRef> {
        Ok(Arc::new(self.q.with_relations(self.relations()?)?))
    }

    fn algebra(&self) -> Result<KoszulAlgebra> {
        KoszulAlgebra::standard(self.q.clone(), self.relations()?)
    }

    fn module_over_q(&self) -> Result<PresentedComplex> {
        PresentedComplex::module(self.q.clone(), &self.job.module_matrix(&self.q)?)
    }

    fn module_over_r(&self, r: &RingRef) -> Result<GradedMatrix> {
        self.job.module_matrix(r)
    }

    fn n(&self) -> usize {
        self.job.params.n.unwrap_or(DEFAULT_BOUND)
    }
}

/// Runs `job.command` and returns the report.
pub fn run_command(job: &JobSpec) -> Result<Report> {
    let command = job.command.clone().unwrap_or_default();
    if !COMMANDS.contains(&command.as_str()) {
        return Err(Error::UnknownCommand(command));
    }
    let cx = Context::new(job)?;
    let mut report = Report {
        command: command.clone(),
        input_echo: print_job(job),
        result: Value::Null,
        n: None,
        smax: None,
        stable: None,
    };
    match command.as_str() {
        "ci-check" => {
            let n = cx.n();
            let v = ci::ci_check_with(&cx.q, &cx.relations()?, n)?;
            report.n = Some(n);
            report.stable = Some(v.stable);
            let mut result = serde_json::to_value(&v).expect("verdict serializes");
            result["verdict"] = json!(if v.oracle_ci { "CI" } else { "not CI" });
            report.result = result;
        }
        "koszul-homology" => {
            let r = cx.ring()?;
            let n = cx.n();
            let k = koszul_complex(&r, &r.vars())?;
            let rows: Vec<Value> = complex_homology(&k, k.lo()..=k.hi())
                .into_iter()
                .map(|(s, p)| {
                    let hilbert = crate::algebra::ideal::hilbert_function(&r, &p, n as i32);
                    json!({ "degree": s, "generators": p.row_twists, "hilbert": hilbert })
                })
                .collect();
            report.n = Some(n);
            report.result = json!({ "homology": rows, "internal_degree_bound": n });
        }
        "ext-kk" => {
            let n = cx.job.params.n.unwrap_or(6);
            let alg = cx.algebra()?;
            let closed = ext::ext_kk_closed_form(&alg)?;
            let k = PresentedComplex::residue_field(alg.ring().clone());
            let pipeline = ext::ext_module(&k, &alg, n)?;
            let t = n as i32 - 2;
            let agreement = closed.hilbert(t) == pipeline.hilbert(t);
            report.n = Some(n);
            report.result = json!({
                "rank": closed.rank(),
                "generator_degrees": closed.generator_degrees(),
                "closed_form": ext_json(&closed, t),
                "pipeline": ext_json(&pipeline, t),
                "agreement": agreement,
            });
        }
        "ext-module" => {
            let n = cx.n();
            let alg = cx.algebra()?;
            let x = ext::ext_module(&cx.module_over_q()?, &alg, n)?;
            report.n = Some(n);
            report.result = ext_json(&x, n as i32 - 2);
        }
        "support-variety" => {
            let n = cx.n();
            let alg = cx.algebra()?;
            let (x, v) = ext::module_variety(&cx.module_over_q()?, &alg, n)?;
            report.n = Some(n);
            report.stable = v.stable;
            report.result = json!({ "ext": ext_json(&x, n as i32 - 2), "variety": variety_json(&v) });
        }
        "c-tilde-variety" => {
            let n = cx.n();
            let alg = cx.algebra()?;
            let a = ext::operator_ring(&alg)?;
            let g = cx.job.g_elements(&a)?;
            if g.is_empty() {
                return Err(Error::HypothesisViolated("c-tilde-variety needs `g` in [params]".into()));
            }
            let (p, _) = koszul_action(&alg, &cx.q.vars())?;
            let u = u_construction(&p, &alg, n)?;
            let mut rows = Vec::new();
            for gi in &g {
                let c = c_tilde(&alg, &u, gi)?;
                let v = ext::support_variety(&ext::ext_of_labeled(&c.module, &alg, n as i32 - 2)?);
                let w = ext::variety_of_elements(&a, std::slice::from_ref(gi))?;
                let mut row = variety_json(&v);
                row["g"] = json!(a.fmt_poly(gi));
                row["expected_ideal"] = json!(ideal_text(&w.ideal_strings()));
                row["equal"] = json!(v.same_as(&w) && v.same_radical(&w));
                rows.push(row);
            }
            report.n = Some(n);
            report.result = json!({ "elements": rows });
        }
        "proxy-witness" | "verify-witness" => {
            let r = cx.ring()?;
            let smax = cx.job.params.smax.unwrap_or_else(|| ci::default_window(&cx.q));
            let m = cx.module_over_r(&r)?;
            let w = ci::proxy_witness(&r, &m, smax)?;
            report.smax = Some(smax);
            report.result = if command == "proxy-witness" {
                witness_json(&w)
            } else {
                let v = ci::verify_witness(&w);
                json!({ "witness": witness_json(&w), "verification": v })
            };
        }
        "selftest" => {
            let checks = selftest()?;
            let passed = checks.iter().all(|(_, ok)| *ok);
            let rows: Vec<Value> = checks.into_iter().map(|(name, ok)| json!({ "name": name, "passed": ok })).collect();
            report.result = json!({ "checks": rows, "passed": passed });
        }
        _ => unreachable!(),
    }
    Ok(report)
}

fn witness_json(w: &ProxyWitness) -> Value {
    let r = &w.ring;
    let trace: Vec<Value> = w
        .trace
        .iter()
        .map(|t| {
            json!({
                "operator": format!("t{}", t.operator + 1),
                "shift": t.shift,
                "ranks": t.complex.ranks(),
                "lo": t.complex.lo(),
                "support": t.support.ideal_strings(r),
            })
        })
        .collect();
    json!({
        "resolution_ranks": w.resolution.ranks(),
        "trace": trace,
        "perfect": complex_json(r, &w.perfect),
        "support_m": ideal_text(&w.support_m.ideal_strings(r)),
        "support_p": ideal_text(&w.support_p.ideal_strings(r)),
        "support_equal": w.support_m.same_as(&w.support_p, r),
    })
}

/// Small end-to-end invariants: each entry is `(name, passed)`.
pub fn selftest() -> Result<Vec<(String, bool)>> {
    let mut out = Vec::new();
    let q: RingRef = Arc::new(crate::algebra::GradedRing::polynomial(crate::algebra::GradedRing::default_prime(), &["x", "y"])?);
    let f = vec![q.parse("x^2")?, q.parse("y^2")?];
    let alg = KoszulAlgebra::standard(q.clone(), f.clone())?;

    let (p, _) = koszul_action(&alg, &q.vars())?;
    let u = u_construction(&p, &alg, 6)?;
    let h = complex_homology(&u.module.complex, 0..=4);
    let resolves = h.iter().all(|(s, m)| {
        let dims = crate::algebra::ideal::hilbert_function(&q, m, 8);
        let total: usize = dims.iter().sum();
        if *s == 0 {
            total == 1
        } else {
            total == 0
        }
    });
    out.push(("u_construction_resolves_k".into(), resolves));

    let closed = ext::ext_kk_closed_form(&alg)?;
    let pipeline = ext::ext_module(&PresentedComplex::residue_field(q.clone()), &alg, 6)?;
    out.push(("ext_kk_closed_form".into(), closed.hilbert(4) == pipeline.hilbert(4)));

    let ci = ci::ci_check(&q, &f)?;
    out.push(("ci_check_complete_intersection".into(), ci.oracle_ci && ci.agreement));
    let non = ci::ci_check(&q, &[q.parse("x^2")?, q.parse("x*y")?])?;
    out.push(("ci_check_non_complete_intersection".into(), !non.oracle_ci && non.agreement));

    let r: RingRef = Arc::new(q.with_relations(f)?);
    let k = GradedMatrix::new(vec![0], vec![1, 1], vec![r.vars()])?;
    let w = ci::proxy_witness(&r, &k, 8)?;
    out.push(("proxy_witness_verifies".into(), ci::verify_witness(&w).passed));
    Ok(out)
}
