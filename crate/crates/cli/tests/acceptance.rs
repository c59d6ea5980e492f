//! Acceptance run: one line per criterion, non-zero exit if any fails.
//!
//! Every criterion is evaluated at its stated tolerance, independent of the
//! identity's default tolerance in the library.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::Instant;

use gamma_mult::identities::{
    check_algebraic_integral_gamma, check_beta_engines, check_euler_multiplication, check_gamma_engines,
    check_gamma_fraction_product, check_gamma_square_product, check_gauss_multiplication, check_log_integral_product,
    check_reflection, check_sine_product, check_symbol_beta_bridge, check_symbol_symmetry, derivation_chain, Scale,
    SymbolEngine,
};
use gamma_mult::{beta_closed, integrate_finite, BetaArgs, IdentityReport, QuadratureConfig, SuiteReport};

type Criterion = (&'static str, Box<dyn Fn() -> Verdict>);

/// Outcome of one criterion: the worst statistic seen and a verdict.
struct Verdict {
    cases: usize,
    worst: f64,
    notes: Vec<String>,
}

impl Verdict {
    fn new() -> Self {
        Self {
            cases: 0,
            worst: 0.0,
            notes: Vec::new(),
        }
    }

    /// Records a residual that must not exceed `tol`.
    fn bound(&mut self, label: impl Into<String>, residual: f64, tol: f64) {
        self.cases += 1;
        if residual.is_nan() || residual > self.worst {
            self.worst = residual;
        }
        if residual.is_nan() || residual > tol {
            self.notes.push(format!("{}: {residual:e} > {tol:e}", label.into()));
        }
    }

    fn report(&mut self, r: &IdentityReport, tol: f64) {
        let label = format!("{} {:?}", r.identity_id, r.params);
        if let Some(err) = &r.error {
            self.notes.push(format!("{label}: {err}"));
        } else if !r.converged {
            self.notes.push(format!("{label}: quadrature did not converge"));
        }
        self.bound(label, relative(r), tol);
    }

    fn check(&mut self, label: &str, r: gamma_mult::Result<IdentityReport>, tol: f64) {
        match r {
            Ok(r) => self.report(&r, tol),
            Err(e) => {
                self.cases += 1;
                self.notes.push(format!("{label}: {e}"));
            }
        }
    }

    fn fail(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    fn passed(&self) -> bool {
        self.notes.is_empty() && self.cases > 0
    }
}

/// Relative disagreement of the two compared quantities. Reports kept in
/// log scale carry ln of each side, and exp(|Δln|) - 1 is the matching
/// relative residual.
fn relative(r: &IdentityReport) -> f64 {
    match r.scale {
        Scale::Linear => r.rel_residual,
        Scale::Log => (r.lhs - r.rhs).abs().exp_m1(),
    }
}

fn range(lo: u32, hi: u32) -> impl Iterator<Item = u32> + Clone {
    lo..=hi
}

fn criterion_1() -> Verdict {
    let mut v = Verdict::new();
    for n in range(1, 12) {
        for x in [0.1, 0.5, 1.0, 2.5, 7.0, 19.3, 50.0] {
            v.check(&format!("n={n} x={x}"), check_gauss_multiplication(x, n), 1e-10);
        }
    }
    v
}

fn criterion_2() -> Verdict {
    let mut v = Verdict::new();
    for n in range(2, 50) {
        v.check(&format!("n={n}"), check_gamma_fraction_product(n), 1e-10);
    }
    v
}

fn criterion_3() -> Verdict {
    let mut v = Verdict::new();
    for n in range(2, 30) {
        v.check(&format!("n={n}"), check_sine_product(n), 1e-10);
    }
    for (n, exact) in [(2, 1.0), (3, 0.75)] {
        match check_sine_product(n) {
            Ok(r) => {
                v.bound(format!("n={n} lhs vs {exact}"), (r.lhs - exact).abs(), 1e-14);
                v.bound(format!("n={n} rhs vs {exact}"), (r.rhs - exact).abs(), 1e-14);
            }
            Err(e) => v.fail(format!("n={n}: {e}")),
        }
    }
    v
}

fn criterion_4() -> Verdict {
    let mut v = Verdict::new();
    for n in range(2, 25) {
        v.check(&format!("n={n}"), check_gamma_square_product(n), 1e-10);
    }
    v
}

fn criterion_5() -> Verdict {
    let mut v = Verdict::new();
    let mut xs: Vec<f64> = (1..=19).map(|k| k as f64 * 0.05).collect();
    xs.extend([0.5, 1.0 / 3.0, 0.25]);
    for x in xs {
        v.check(&format!("x={x}"), check_reflection(x), 1e-12);
    }
    match check_reflection(0.5) {
        Ok(r) => v.bound("x=1/2 vs π", (r.lhs - PI).abs(), 1e-13),
        Err(e) => v.fail(format!("x=1/2: {e}")),
    }
    v
}

fn criterion_6(cfg: &QuadratureConfig) -> Verdict {
    let mut v = Verdict::new();
    let ms = range(1, 10).map(f64::from).chain([0.5, 7.3, 19.9]);
    for m in ms {
        for n in range(1, 8) {
            let r = check_euler_multiplication(m, n, SymbolEngine::Closed, cfg);
            v.check(&format!("closed m={m} n={n}"), r, 1e-10);
        }
    }
    for m in range(1, 5) {
        for n in range(2, 5) {
            let r = check_euler_multiplication(m as f64, n, SymbolEngine::Quadrature, cfg);
            v.check(&format!("quadrature m={m} n={n}"), r, 1e-7);
        }
    }
    v
}

fn criterion_7() -> Verdict {
    let mut v = Verdict::new();
    for m in range(1, 8) {
        for n in range(2, 8) {
            match derivation_chain(m as f64, n) {
                Ok(chain) => v.bound(format!("m={m} n={n}"), chain.max_pairwise_rel(), 1e-9),
                Err(e) => v.fail(format!("m={m} n={n}: {e}")),
            }
        }
    }
    v
}

fn criterion_8(cfg: &QuadratureConfig) -> Verdict {
    let mut v = Verdict::new();
    for p in range(1, 4) {
        for q in range(1, 4) {
            v.check(&format!("p={p} q={q}"), check_algebraic_integral_gamma(p, q, cfg), 1e-6);
        }
    }
    // ∫_0^1 (x - x²)^{1/2} dx = B(3/2, 3/2) = π/8, by quadrature and in closed form.
    let quarter_disc = integrate_finite(|x| (x - x * x).sqrt(), 0.0, 1.0, cfg);
    match quarter_disc {
        Ok(est) => v.bound("∫√(x−x²) vs π/8", (est.value - PI / 8.0).abs(), 1e-12),
        Err(e) => v.fail(format!("∫√(x−x²): {e}")),
    }
    let closed = beta_closed(BetaArgs::new(1.5, 1.5).expect("positive"));
    v.bound("B(3/2,3/2) vs π/8", (closed - PI / 8.0).abs(), 1e-14);
    let half_sqrt_pi = PI.sqrt() / 2.0;
    match check_algebraic_integral_gamma(1, 2, cfg) {
        Ok(r) => {
            v.bound("p=1 q=2 lhs vs √π/2", (r.lhs - half_sqrt_pi).abs(), 1e-8);
            v.bound("p=1 q=2 rhs vs √π/2", (r.rhs - half_sqrt_pi).abs(), 1e-8);
        }
        Err(e) => v.fail(format!("p=1 q=2: {e}")),
    }
    v
}

fn criterion_9(cfg: &QuadratureConfig) -> Verdict {
    let mut v = Verdict::new();
    for n in range(2, 8) {
        v.check(&format!("n={n}"), check_log_integral_product(n, cfg), 1e-7);
    }
    v
}

fn criterion_10(cfg: &QuadratureConfig) -> Verdict {
    let mut v = Verdict::new();
    for n in range(2, 6) {
        for p in range(1, 5) {
            for q in range(1, 5) {
                let (pf, qf) = (p as f64, q as f64);
                let label = format!("p={p} q={q} n={n}");
                v.check(
                    &format!("symmetry {label}"),
                    check_symbol_symmetry(pf, qf, n, cfg),
                    1e-7,
                );
                v.check(
                    &format!("bridge {label}"),
                    check_symbol_beta_bridge(pf, qf, n, cfg),
                    1e-7,
                );
            }
        }
    }
    v
}

fn criterion_11(cfg: &QuadratureConfig) -> Verdict {
    let mut v = Verdict::new();
    for x in [0.1, 0.25, 0.5, 1.0, 2.5, 7.0, 19.3, 30.0] {
        v.check(&format!("Γ x={x}"), check_gamma_engines(x, cfg), 1e-8);
    }
    let xy = [0.5, 1.0, 2.5];
    for x in xy {
        for y in xy {
            v.check(&format!("B x={x} y={y}"), check_beta_engines(x, y, cfg), 1e-8);
        }
    }
    v
}

fn run_suite_json() -> Result<Vec<u8>, String> {
    let output = Command::new(env!("CARGO_BIN_EXE_gamma-mult"))
        .args(["suite", "--format", "json"])
        .output()
        .map_err(|e| format!("cannot run binary: {e}"))?;
    match output.status.code() {
        Some(0) => Ok(output.stdout),
        code => Err(format!(
            "exit {code:?}: {}",
            String::from_utf8_lossy(&output.stderr).trim()
        )),
    }
}

fn schema_problems(json: &[u8]) -> Vec<String> {
    let value: serde_json::Value = match serde_json::from_slice(json) {
        Ok(v) => v,
        Err(e) => return vec![format!("not JSON: {e}")],
    };
    let mut problems = Vec::new();
    for key in ["pass", "fail"] {
        if !value["summary"][key].is_u64() {
            problems.push(format!("summary.{key} is not a count"));
        }
    }
    if !value["config"]["quadrature"].is_object() || !value["config"]["grid"].is_object() {
        problems.push("config lacks quadrature or grid".into());
    }
    let Some(reports) = value["reports"].as_array() else {
        problems.push("reports is not an array".into());
        return problems;
    };
    if reports.is_empty() {
        problems.push("reports is empty".into());
    }
    for (i, r) in reports.iter().enumerate() {
        let numeric = ["lhs", "rhs", "abs_residual", "rel_residual", "tolerance"];
        let ok = r["identity_id"].is_string()
            && r["params"]
                .as_object()
                .is_some_and(|p| p.values().all(|v| v.is_number()))
            && numeric.iter().all(|k| r[k].is_number())
            && r["passed"].is_boolean();
        if !ok {
            problems.push(format!("report {i} does not match the schema: {r}"));
            break;
        }
    }
    if let Err(e) = serde_json::from_slice::<SuiteReport>(json) {
        problems.push(format!("does not deserialize as a suite report: {e}"));
    }
    let summary = &value["summary"];
    if summary["pass"]
        .as_u64()
        .zip(summary["fail"].as_u64())
        .map(|(p, f)| (p + f) as usize)
        != Some(reports.len())
    {
        problems.push("summary counts differ from the number of reports".into());
    }
    problems
}

fn criterion_12() -> Verdict {
    let mut v = Verdict::new();
    let (first, second) = match (run_suite_json(), run_suite_json()) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            v.fail(e);
            return v;
        }
    };
    v.notes.extend(schema_problems(&first));
    let n_fail = serde_json::from_slice::<serde_json::Value>(&first)
        .ok()
        .and_then(|j| j["summary"]["fail"].as_u64());
    v.bound("failed checks", n_fail.map_or(f64::NAN, |f| f as f64), 0.0);
    if first != second {
        v.fail("two consecutive runs differ");
    }
    v
}

fn main() -> ExitCode {
    let cfg = QuadratureConfig::default();
    let criteria: Vec<Criterion> = vec![
        (
            "Gauss multiplication, n 1..12 × 7 x values, rel ≤ 1e-10",
            Box::new(criterion_1),
        ),
        (
            "Γ(1/n)⋯Γ((n-1)/n) closed value, n 2..50, rel ≤ 1e-10",
            Box::new(criterion_2),
        ),
        (
            "sine product n/2^(n-1), n 2..30, rel ≤ 1e-10; n=2,3 exact to 1e-14",
            Box::new(criterion_3),
        ),
        (
            "squared Γ fraction product vs sines, n 2..25, rel ≤ 1e-10",
            Box::new(criterion_4),
        ),
        (
            "reflection, 21 x values, rel ≤ 1e-12; x=1/2 gives π to 1e-13",
            Box::new(criterion_5),
        ),
        (
            "Euler's symbol multiplication formula, closed ≤ 1e-10, quadrature ≤ 1e-7",
            Box::new(move || criterion_6(&cfg)),
        ),
        (
            "derivation chain three-way agreement, m 1..8, n 2..8, rel ≤ 1e-9",
            Box::new(criterion_7),
        ),
        (
            "algebraic integrals for (p/q)!, p,q 1..4, rel ≤ 1e-6; (1,2) gives √π/2 to 1e-8",
            Box::new(move || criterion_8(&cfg)),
        ),
        (
            "log-integral product, n 2..8, rel ≤ 1e-7",
            Box::new(move || criterion_9(&cfg)),
        ),
        (
            "symbol symmetry and Beta bridge, p,q 1..5, n 2..6, rel ≤ 1e-7",
            Box::new(move || criterion_10(&cfg)),
        ),
        (
            "Γ and B quadrature engines vs closed forms, rel ≤ 1e-8",
            Box::new(move || criterion_11(&cfg)),
        ),
        (
            "CLI suite --format json: exit 0, schema, no failed checks, byte-identical reruns",
            Box::new(criterion_12),
        ),
    ];

    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let verdict = run();
        let elapsed = started.elapsed();
        let status = if verdict.passed() { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {status}  {title}  [{} checks, worst {:.2e}, {:.2?}]",
            i + 1,
            verdict.cases,
            verdict.worst,
            elapsed
        );
        if !verdict.passed() {
            failed += 1;
            for note in verdict.notes.iter().take(10) {
                println!("    {note}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
