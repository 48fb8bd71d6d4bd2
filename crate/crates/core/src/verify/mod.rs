//! Seeded property suites over the library, and single-file reports.
//!
//! A run takes a [`VerifyConfig`], expands every selected suite into
//! instances (one list per field), checks them in parallel and collects the
//! failures into a [`RunReport`]. Instance `i` of a suite draws its randomness
//! from a generator derived from the run seed, the suite id, the field name and
//! `i`, so reports do not depend on scheduling and any single instance can be
//! rerun with [`rerun_instance`].

mod free;
pub mod gen;
mod homs;
mod linear;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::almosthom::hom_from_json;
use crate::almosthom::io::read_json;
use crate::amplify::DEFAULT_DIM_CAP;
use crate::error::{Error, Result};
use crate::exactfield::{field_from_json, finite_field, Field, FieldKind};
use crate::jordanlen::iota_report;
use crate::matspace::matrix_file_from_json;
use crate::par::{self, Exec};
use crate::seed::rng_for;

/// A failed check inside one instance.
#[derive(Clone, Debug, PartialEq)]
pub struct Finding {
    pub detail: String,
    pub data: Value,
}

impl Finding {
    pub fn new(detail: impl Into<String>, data: Value) -> Finding {
        Finding { detail: detail.into(), data }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    /// `F_3#17`, or `#17` for suites without a field.
    pub instance: String,
    pub detail: String,
    pub data: Value,
}

impl Violation {
    pub fn to_json(&self) -> Value {
        json!({"instance": self.instance, "detail": self.detail, "data": self.data})
    }
}

/// Run-wide knobs visible to every check.
#[derive(Clone, Debug)]
pub struct SuiteCtx {
    pub count: Option<usize>,
    pub max_dim: Option<usize>,
    pub dim_cap: usize,
    pub exec: Exec,
}

impl SuiteCtx {
    fn count_or(&self, default: usize) -> usize {
        self.count.unwrap_or(default)
    }

    fn max_dim_or(&self, default: usize) -> usize {
        self.max_dim.unwrap_or(default)
    }
}

impl Default for SuiteCtx {
    fn default() -> Self {
        SuiteCtx { count: None, max_dim: None, dim_cap: DEFAULT_DIM_CAP, exec: Exec::default() }
    }
}

type CheckFn = fn(&SuiteCtx, Option<&Field>, usize, &mut ChaCha8Rng) -> Result<Vec<Finding>>;

/// Fields a suite runs over.
#[derive(Clone, Copy)]
pub(crate) struct FieldUse {
    defaults: &'static [&'static str],
    supports: fn(&Field) -> bool,
    requirement: &'static str,
}

pub struct Suite {
    pub id: &'static str,
    pub summary: &'static str,
    /// Whether instances draw random data (and so need a seed).
    pub randomized: bool,
    fields: Option<FieldUse>,
    instances: fn(&SuiteCtx, Option<&Field>) -> usize,
    check: CheckFn,
}

fn any_field(f: &Field) -> bool {
    !matches!(f.kind(), FieldKind::RationalFunctions(_))
}

fn finite_or_q(f: &Field) -> bool {
    f.is_finite() || matches!(f.kind(), FieldKind::Rationals)
}

fn small_finite_or_q(f: &Field) -> bool {
    f.order().is_some_and(|q| q <= 64) || matches!(f.kind(), FieldKind::Rationals)
}

fn finite_odd(f: &Field) -> bool {
    f.is_finite() && f.characteristic() != 2
}

fn extension(f: &Field) -> bool {
    matches!(f.kind(), FieldKind::Ext(_)) && f.degree() > 1
}

fn function_field(f: &Field) -> bool {
    matches!(f.kind(), FieldKind::RationalFunctions(_))
}

const SMALL: &[&str] = &["F_2", "F_3", "F_5", "Q"];

fn uses(
    defaults: &'static [&'static str],
    supports: fn(&Field) -> bool,
    requirement: &'static str,
) -> Option<FieldUse> {
    Some(FieldUse { defaults, supports, requirement })
}

/// Every suite, in report order.
pub fn registry() -> Vec<Suite> {
    vec![
        Suite {
            id: "prop-iota-bounds",
            summary: "rank and Jordan lengths lie between (1 - iota)/2 and 1 - iota",
            randomized: true,
            fields: uses(SMALL, finite_or_q, "a finite field or Q"),
            instances: |ctx, f| ctx.count_or(if is_q(f) { 200 } else { 1000 }),
            check: linear::iota_bounds,
        },
        Suite {
            id: "thm-tensor-blocks",
            summary: "J(a, s) (x) J(b, t) has exactly s Jordan blocks for s <= t",
            randomized: false,
            fields: uses(SMALL, small_finite_or_q, "a finite field with at most 64 elements or Q"),
            instances: |_, f| linear::tensor_block_cases(f.unwrap()).len(),
            check: linear::tensor_blocks,
        },
        Suite {
            id: "thm-inseparable",
            summary: "the companion of x^(p^k) - t has a single Jordan block",
            randomized: false,
            fields: uses(&["F_2(t)", "F_3(t)"], function_field, "a rational function field F_p(t)"),
            instances: |_, _| 2,
            check: linear::inseparable,
        },
        Suite {
            id: "lem-iota-tensor",
            summary: "iota(A (x) B) <= iota(A) iota(B) + (1 - iota(A))(1 - iota(B))",
            randomized: true,
            fields: uses(SMALL, finite_or_q, "a finite field or Q"),
            instances: |ctx, _| ctx.count_or(1000),
            check: linear::iota_tensor,
        },
        Suite {
            id: "lem-scalar-inequality",
            summary: "x'y + y'x <= x'y' + xy for 0 <= x <= x', 0 <= y <= y'",
            randomized: true,
            fields: None,
            instances: |ctx, _| ctx.count_or(10_000),
            check: linear::scalar_inequality,
        },
        Suite {
            id: "lem-sum-tensor-lengths",
            summary: "lengths of direct sums and tensor products",
            randomized: true,
            fields: uses(SMALL, finite_or_q, "a finite field or Q"),
            instances: |ctx, _| ctx.count_or(1000),
            check: linear::sum_tensor_lengths,
        },
        Suite {
            id: "prop-length-invariance",
            summary: "lengths are conjugation invariant and the Jordan length is scalar invariant",
            randomized: true,
            fields: uses(SMALL, finite_or_q, "a finite field or Q"),
            instances: |ctx, _| ctx.count_or(500),
            check: linear::length_invariance,
        },
        Suite {
            id: "prop-rank-invariance",
            summary: "rank is invariant under permutations and invertible factors",
            randomized: true,
            fields: uses(SMALL, any_field, "a field other than F_p(t)"),
            instances: |ctx, _| ctx.count_or(500),
            check: linear::rank_invariance,
        },
        Suite {
            id: "prop-kron-rank",
            summary: "rank is multiplicative under (x) and fixed spaces tensor",
            randomized: true,
            fields: uses(SMALL, any_field, "a field other than F_p(t)"),
            instances: |ctx, _| ctx.count_or(500),
            check: linear::kron_rank,
        },
        Suite {
            id: "prop-restrict-scalars",
            summary: "restriction of scalars scales fixed spaces by the degree and keeps rank lengths",
            randomized: true,
            fields: uses(&["F_4", "F_9", "F_8"], extension, "a proper extension field"),
            instances: |ctx, _| ctx.count_or(500),
            check: linear::restrict_scalars_suite,
        },
        Suite {
            id: "lem-perm-rank",
            summary: "rank(1 - (P_pi (x) 1) A) >= (n - f) m / 2",
            randomized: true,
            fields: uses(&["F_2", "F_5"], any_field, "a field other than F_p(t)"),
            instances: |ctx, _| ctx.count_or(1000),
            check: linear::perm_rank,
        },
        Suite {
            id: "prop-defect-conjugation",
            summary: "defect is invariant under simultaneous conjugation",
            randomized: true,
            fields: uses(&["F_3", "F_5", "Q"], any_field, "a field other than F_p(t)"),
            instances: |ctx, _| ctx.count_or(200),
            check: homs::defect_conjugation,
        },
        Suite {
            id: "lem-repair",
            summary: "identity normalization and inverse adaptation at most double the defect",
            randomized: true,
            fields: uses(&["F_3", "F_5"], any_field, "a field other than F_p(t)"),
            instances: |ctx, _| ctx.count_or(200),
            check: homs::repair,
        },
        Suite {
            id: "thm-amplification",
            summary: "tensor-power amplification reaches 1/4 - eps (Jordan) and 1/8 - eps (rank)",
            randomized: true,
            fields: uses(&["F_5"], finite_odd, "a finite field of odd characteristic"),
            instances: |_, _| homs::AMPLIFICATION_CASES.len(),
            check: homs::amplification,
        },
        Suite {
            id: "prop-conversions",
            summary: "rank-to-Jordan and Jordan-to-rank conversions and their round trips",
            randomized: true,
            fields: uses(&["F_3", "F_5"], any_field, "a field other than F_p(t)"),
            instances: |ctx, _| ctx.count_or(200),
            check: homs::conversions,
        },
        Suite {
            id: "prop-specialize",
            summary: "specializing t keeps every rank length and does not raise the defect",
            randomized: true,
            fields: uses(&["F_2(t)"], function_field, "a rational function field F_p(t)"),
            instances: |ctx, _| ctx.count_or(100),
            check: homs::specialize,
        },
        Suite {
            id: "prop-word-laws",
            summary: "reduced words in free products form a group",
            randomized: true,
            fields: None,
            instances: |ctx, _| ctx.count_or(500),
            check: free::word_laws,
        },
        Suite {
            id: "thm-free-product",
            summary: "separating quotients and the free product embedding end to end",
            randomized: true,
            fields: uses(&["Q", "F_5"], finite_or_q, "a finite field or Q"),
            instances: |_, _| free::FREE_PRODUCT_CASES.len(),
            check: free::free_product,
        },
    ]
}

fn is_q(f: Option<&Field>) -> bool {
    f.is_some_and(|f| matches!(f.kind(), FieldKind::Rationals))
}

fn need(f: Option<&Field>) -> &Field {
    f.expect("suite declares fields")
}

/// Parses `Q`, `F_q` (`q` a prime power) and `F_p(t)`.
pub fn parse_field(text: &str) -> Result<Field> {
    let t = text.trim();
    if t == "Q" {
        return Ok(Field::rationals());
    }
    let bad = || Error::Input(format!("unknown field `{text}`; expected Q, F_q or F_p(t)"));
    let rest = t.strip_prefix("F_").ok_or_else(bad)?;
    if let Some(p) = rest.strip_suffix("(t)") {
        return Field::rational_functions(p.parse().map_err(|_| bad())?);
    }
    let q: u64 = rest.parse().map_err(|_| bad())?;
    if q < 2 {
        return Err(bad());
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
    let (mut r, mut m) = (q, 0);
    while r % p == 0 {
        r /= p;
        m += 1;
    }
    if r != 1 {
        return Err(Error::Input(format!("{q} is not a prime power")));
    }
    if m == 1 {
        Field::prime(p)
    } else {
        finite_field(p, m)
    }
}

/// Accepts a shorthand string or a descriptor object.
pub fn field_from_value(v: &Value) -> Result<Field> {
    match v {
        Value::String(s) => parse_field(s),
        _ => field_from_json(v),
    }
}

/// One JSON document describing a verification run.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {
    /// Suite ids, or `["all"]`.
    pub suites: Vec<String>,
    #[serde(default)]
    pub seed: Option<u64>,
    /// Instances per field for randomized suites; exhaustive suites ignore it.
    #[serde(default)]
    pub count: Option<usize>,
    /// Overrides each suite's default fields.
    #[serde(default)]
    pub fields: Option<Vec<Value>>,
    /// Largest matrix size drawn by the random-matrix suites.
    #[serde(default)]
    pub max_dim: Option<usize>,
    #[serde(default)]
    pub dim_cap: Option<usize>,
    /// Where the CLI writes the report.
    #[serde(default)]
    pub out: Option<PathBuf>,
}

impl VerifyConfig {
    pub fn from_json(v: &Value) -> Result<VerifyConfig> {
        serde_json::from_value(v.clone()).map_err(|e| Error::Input(format!("bad verify config: {e}")))
    }

    pub fn read(path: &Path) -> Result<VerifyConfig> {
        VerifyConfig::from_json(&read_json(path)?)
    }
}

struct Plan {
    suite: Suite,
    fields: Vec<Option<Field>>,
}

fn plan(config: &VerifyConfig) -> Result<(Vec<Plan>, SuiteCtx)> {
    if config.count == Some(0) {
        return Err(Error::Input("count must be at least 1".into()));
    }
    if config.max_dim == Some(0) {
        return Err(Error::Input("max_dim must be at least 1".into()));
    }
    if config.dim_cap == Some(0) {
        return Err(Error::Input("dim_cap must be at least 1".into()));
    }
    if config.suites.is_empty() {
        return Err(Error::Input("no suites selected".into()));
    }
    let fields = match &config.fields {
        None => None,
        Some(list) if list.is_empty() => return Err(Error::Input("`fields` is empty".into())),
        Some(list) => Some(list.iter().map(field_from_value).collect::<Result<Vec<_>>>()?),
    };
    let all = config.suites.iter().any(|s| s == "all");
    let mut wanted: BTreeSet<&str> = config.suites.iter().map(String::as_str).filter(|s| *s != "all").collect();
    let mut plans = Vec::new();
    for suite in registry() {
        if !(all || wanted.remove(suite.id)) {
            continue;
        }
        if suite.randomized && config.seed.is_none() {
            return Err(Error::Input(format!("suite {} is randomized and needs a seed", suite.id)));
        }
        let fs = match (&suite.fields, &fields) {
            (None, _) => vec![None],
            (Some(u), None) => u.defaults.iter().map(|d| parse_field(d).map(Some)).collect::<Result<_>>()?,
            (Some(u), Some(list)) => {
                if let Some(f) = list.iter().find(|f| !(u.supports)(f)) {
                    return Err(Error::Input(format!("suite {} needs {}, not {}", suite.id, u.requirement, f.name())));
                }
                list.iter().cloned().map(Some).collect()
            }
        };
        plans.push(Plan { suite, fields: fs });
    }
    if let Some(unknown) = wanted.into_iter().next() {
        return Err(Error::Input(format!("unknown suite `{unknown}`")));
    }
    let ctx = SuiteCtx {
        count: config.count,
        max_dim: config.max_dim,
        dim_cap: config.dim_cap.unwrap_or(DEFAULT_DIM_CAP),
        exec: Exec::default(),
    };
    Ok((plans, ctx))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub id: String,
    pub fields: Vec<String>,
    pub instances: usize,
    pub violations: Vec<Violation>,
    pub wall_ms: u128,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self, include_timing: bool) -> Value {
        let mut v = json!({
            "id": self.id,
            "fields": self.fields,
            "instances": self.instances,
            "pass": self.pass(),
            "violations": self.violations.iter().map(Violation::to_json).collect::<Vec<_>>(),
        });
        if include_timing {
            v["wall_ms"] = json!(self.wall_ms);
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub seed: Option<u64>,
    pub suites: Vec<SuiteReport>,
}

impl RunReport {
    pub fn pass(&self) -> bool {
        self.suites.iter().all(SuiteReport::pass)
    }

    pub fn violation_count(&self) -> usize {
        self.suites.iter().map(|s| s.violations.len()).sum()
    }

    /// 0 when every suite passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.pass() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self, include_timing: bool) -> Value {
        json!({
            "pass": self.pass(),
            "seed": self.seed,
            "violations": self.violation_count(),
            "suites": self.suites.iter().map(|s| s.to_json(include_timing)).collect::<Vec<_>>(),
        })
    }
}

fn suite_hash(id: &str) -> u64 {
    // FNV-1a, stable across platforms and releases.
    id.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

fn instance_rng(seed: u64, id: &str, field: Option<&Field>, index: usize) -> ChaCha8Rng {
    let fname = field.map(Field::name).unwrap_or_default();
    rng_for(seed, &[suite_hash(id), suite_hash(&fname), index as u64])
}

fn run_one(suite: &Suite, ctx: &SuiteCtx, seed: u64, field: Option<&Field>, index: usize) -> Vec<Finding> {
    let mut rng = instance_rng(seed, suite.id, field, index);
    let outcome = catch_unwind(AssertUnwindSafe(|| (suite.check)(ctx, field, index, &mut rng)));
    match outcome {
        Ok(Ok(findings)) => findings,
        Ok(Err(e)) => vec![Finding::new(format!("error: {e}"), Value::Null)],
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            vec![Finding::new(format!("panic: {msg}"), Value::Null)]
        }
    }
}

fn run_suite(plan: &Plan, ctx: &SuiteCtx, seed: u64) -> SuiteReport {
    let start = Instant::now();
    let mut instances = 0;
    let mut violations = Vec::new();
    for field in &plan.fields {
        let f = field.as_ref();
        let n = (plan.suite.instances)(ctx, f);
        instances += n;
        let results = par::map_range(ctx.exec, n, |i| run_one(&plan.suite, ctx, seed, f, i));
        let prefix = f.map(Field::name).unwrap_or_default();
        for (i, findings) in results.into_iter().enumerate() {
            violations.extend(findings.into_iter().map(|Finding { detail, data }| Violation {
                instance: format!("{prefix}#{i}"),
                detail,
                data,
            }));
        }
    }
    SuiteReport {
        id: plan.suite.id.to_string(),
        fields: plan.fields.iter().flatten().map(Field::name).collect(),
        instances,
        violations,
        wall_ms: start.elapsed().as_millis(),
    }
}

fn run_plans(plans: &[Plan], ctx: &SuiteCtx, seed: Option<u64>) -> RunReport {
    let suites = par::map(ctx.exec, plans, |p| run_suite(p, ctx, seed.unwrap_or(0)));
    RunReport { seed, suites }
}

/// Validates `config` and runs the selected suites. Configuration problems
/// come back as `Err`; failed checks are recorded in the report.
pub fn run_verify(config: &VerifyConfig) -> Result<RunReport> {
    let (plans, ctx) = plan(config)?;
    Ok(run_plans(&plans, &ctx, config.seed))
}

/// Reruns one instance exactly as a run with `seed` would.
pub fn rerun_instance(
    id: &str,
    field: Option<&Field>,
    index: usize,
    seed: u64,
    ctx: &SuiteCtx,
) -> Result<Vec<Finding>> {
    let suite =
        registry().into_iter().find(|s| s.id == id).ok_or_else(|| Error::Input(format!("unknown suite `{id}`")))?;
    if suite.fields.is_some() != field.is_some() {
        return Err(Error::Input(format!("suite {id} {} a field", if field.is_some() { "takes no" } else { "needs" })));
    }
    Ok(run_one(&suite, ctx, seed, field, index))
}

/// Length report of a matrix file, or quality report of a hom file.
pub fn compute_report(path: &Path) -> Result<Value> {
    let v = read_json(path)?;
    let obj = v.as_object().ok_or_else(|| Error::Input("expected a JSON object".into()))?;
    if obj.contains_key("images") {
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        let hom = hom_from_json(&v, &base)?;
        let q = hom.quality()?;
        return Ok(
            json!({"kind": "quality", "dim": hom.dim, "field": hom.field.name(), "report": q.to_json(&hom.window)}),
        );
    }
    let mf = matrix_file_from_json(&v)?;
    let a = &mf.matrix;
    if !a.is_square() {
        return Err(Error::Shape(format!("{}x{} matrix is not square", a.rows(), a.cols())));
    }
    if !a.is_invertible() {
        return Err(Error::Singular);
    }
    let r = iota_report(a, &mf.hints)?;
    Ok(json!({"kind": "length", "field": a.field().name(), "report": r.to_json(a.field())}))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::almosthom::io::write_json;
    use crate::almosthom::{hom_to_json, FiniteGroup, LengthMode};
    use crate::matspace::{matrix_to_json, perm_matrix, Matrix, Permutation};
    use crate::rational::{q, q_to_json};

    fn config(suites: &[&str], seed: Option<u64>) -> VerifyConfig {
        VerifyConfig { suites: suites.iter().map(|s| s.to_string()).collect(), seed, ..Default::default() }
    }

    #[test]
    fn suite_ids_are_unique() {
        let ids: BTreeSet<&str> = registry().iter().map(|s| s.id).collect();
        assert_eq!(ids.len(), registry().len());
    }

    #[test]
    fn shorthand_fields() {
        assert_eq!(parse_field("F_9").unwrap().name(), "F_9");
        assert_eq!(parse_field("F_7").unwrap(), Field::prime(7).unwrap());
        assert_eq!(parse_field("F_2(t)").unwrap().name(), "F_2(t)");
        assert!(parse_field("F_6").is_err());
        assert!(parse_field("R").is_err());
        assert_eq!(field_from_value(&json!({"kind": "Q"})).unwrap(), Field::rationals());
    }

    #[test]
    fn input_errors() {
        let mut c = config(&["prop-iota-bounds"], Some(7));
        c.count = Some(0);
        assert!(matches!(run_verify(&c), Err(Error::Input(_))));
        assert!(matches!(run_verify(&config(&["no-such-suite"], Some(1))), Err(Error::Input(_))));
        assert!(matches!(run_verify(&config(&["prop-iota-bounds"], None)), Err(Error::Input(_))));
        let mut c = config(&["thm-inseparable"], None);
        c.fields = Some(vec![json!("F_3")]);
        assert!(matches!(run_verify(&c), Err(Error::Input(_))));
        assert!(VerifyConfig::from_json(&json!({"suites": ["all"], "colour": 1})).is_err());
    }

    #[test]
    fn small_iota_run_passes_and_repeats() {
        let mut c = config(&["prop-iota-bounds"], Some(7));
        c.count = Some(100);
        c.fields = Some(vec![json!("F_3")]);
        let a = run_verify(&c).unwrap();
        assert!(a.pass());
        assert_eq!(a.suites[0].instances, 100);
        assert_eq!(a.exit_code(), 0);
        let b = run_verify(&c).unwrap();
        assert_eq!(a.to_json(false).to_string(), b.to_json(false).to_string());
    }

    #[test]
    fn failures_are_reported_with_their_instance() {
        let suite = Suite {
            id: "always-fails-on-odd",
            summary: "",
            randomized: false,
            fields: None,
            instances: |_, _| 4,
            check: |_, _, i, _| {
                if i % 2 == 1 {
                    Ok(vec![Finding::new("odd", json!(i))])
                } else {
                    Ok(vec![])
                }
            },
        };
        let report = run_plans(&[Plan { suite, fields: vec![None] }], &SuiteCtx::default(), None);
        assert!(!report.pass());
        assert_eq!(report.exit_code(), 1);
        let names: Vec<&str> = report.suites[0].violations.iter().map(|v| v.instance.as_str()).collect();
        assert_eq!(names, vec!["#1", "#3"]);
    }

    #[test]
    fn errors_and_panics_become_violations() {
        let suite = Suite {
            id: "broken",
            summary: "",
            randomized: false,
            fields: None,
            instances: |_, _| 2,
            check: |_, _, i, _| if i == 0 { Err(Error::Singular) } else { panic!("boom") },
        };
        let report = run_plans(&[Plan { suite, fields: vec![None] }], &SuiteCtx::default(), None);
        let details: Vec<&str> = report.suites[0].violations.iter().map(|v| v.detail.as_str()).collect();
        assert_eq!(details, vec!["error: matrix is singular", "panic: boom"]);
    }

    #[test]
    fn reports_of_files() {
        let dir = std::env::temp_dir().join(format!("linsofic-report-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let f2 = Field::prime(2).unwrap();
        let id = dir.join("id.json");
        write_json(&id, &matrix_to_json(&Matrix::identity(&f2, 3))).unwrap();
        let r = compute_report(&id).unwrap();
        assert_eq!(r["report"]["len_rank"], q_to_json(&q(0, 1)));
        assert_eq!(r["report"]["iota1"], q_to_json(&q(1, 1)));
        assert_eq!(compute_report(&id).unwrap(), r);

        let qf = Field::rationals();
        let cycle = dir.join("cycle.json");
        let pi = Permutation::new(vec![1, 2, 3, 4, 0]).unwrap();
        write_json(&cycle, &matrix_to_json(&perm_matrix(&qf, &pi))).unwrap();
        assert_eq!(compute_report(&cycle).unwrap()["report"]["len_rank"], q_to_json(&q(4, 5)));

        let s3 = FiniteGroup::symmetric(3);
        let hom = gen::regular_rep(&s3, &qf, 0, LengthMode::Rank).unwrap();
        let path = dir.join("s3.json");
        write_json(&path, &hom_to_json(&hom)).unwrap();
        assert_eq!(compute_report(&path).unwrap()["report"]["defect"], q_to_json(&q(0, 1)));

        let singular = dir.join("singular.json");
        write_json(&singular, &matrix_to_json(&Matrix::zeros(&f2, 2, 2))).unwrap();
        assert!(matches!(compute_report(&singular), Err(Error::Singular)));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
