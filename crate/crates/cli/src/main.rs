//! Command-line front end: builds quasimap-to-quadric specs, runs the
//! verifications and series computations, and emits deterministic text or
//! structured reports.

use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use quadriq::acceptance::run_all;
use quadriq::brst::verify_main_theorem;
use quadriq::groebner::{buchberger, is_groebner, Budget, BuchbergerOutcome, GeneratorSet};
use quadriq::hilbert::{
    chain_series, closed_form, pbw_dual_dims, staircase_series, BigradedSeries,
};
use quadriq::polyring::format_polynomial;
use quadriq::quadric::{
    deglex_order, relations, snake_order, Coords, DiagramPoset, QuasimapSpec, VariableTable,
};
use quadriq::semiinf::{
    euler_check, pairing_symmetry, z_functional_equations, SemiInfComplex,
};

/// Version tag of the structured report layout.
const SCHEMA: &str = "quadriq.report.v1";

#[derive(Parser)]
#[command(name = "quadriq", version, about = "Exact engine for quasimap-to-quadric ideals")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CoordArg {
    Orthonormal,
    Hyperbolic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Args, Clone)]
struct SpecArgs {
    /// ambient dimension of the quadratic form (number of lambda components)
    #[arg(long)]
    n: u32,
    /// loop periods below zero in the window
    #[arg(long = "N1", default_value_t = 0)]
    n1: i32,
    /// loop periods above zero in the window
    #[arg(long = "N2", default_value_t = 0)]
    n2: i32,
    /// coordinate frame for the quadratic form
    #[arg(long, value_enum, default_value_t = CoordArg::Hyperbolic)]
    coords: CoordArg,
}

impl SpecArgs {
    fn spec(&self) -> QuasimapSpec {
        let coords = match self.coords {
            CoordArg::Orthonormal => Coords::Orthonormal,
            CoordArg::Hyperbolic => Coords::Hyperbolic,
        };
        QuasimapSpec::new(self.n, self.n1, self.n2, coords)
    }
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// report format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// write the report to a file instead of stdout
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the defining relations of the window ideal
    Relations {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Test whether the relations are a Groebner basis; complete them if not
    Groebner {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Bigraded series of the quotient algebra from the staircase
    Series {
        #[command(flatten)]
        spec: SpecArgs,
        /// degree cutoff
        #[arg(long, default_value_t = 10)]
        degree: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Bigraded count of chain monomials in the diagram poset
    Chains {
        #[command(flatten)]
        spec: SpecArgs,
        /// degree cutoff
        #[arg(long, default_value_t = 10)]
        degree: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Graded dual dimensions recovered from the series
    Pbw {
        #[command(flatten)]
        spec: SpecArgs,
        /// degree cutoff
        #[arg(long, default_value_t = 8)]
        degree: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verify Koszul-complex acyclicity by exact rank
    Brst {
        #[command(flatten)]
        spec: SpecArgs,
        /// degree cutoff
        #[arg(long, default_value_t = 6)]
        degree: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verify the two-term complex on a bidegree window
    Semiinf {
        #[command(flatten)]
        spec: SpecArgs,
        /// lower end of the t window
        #[arg(long, default_value_t = -3, allow_hyphen_values = true)]
        tmin: i32,
        /// upper end of the t window
        #[arg(long, default_value_t = 3)]
        tmax: i32,
        /// weight cap
        #[arg(long, default_value_t = 3)]
        qmax: i32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verify the functional equations of the partition function
    Zcheck {
        /// ambient dimension
        #[arg(long)]
        n: u32,
        /// t-degree window half-width
        #[arg(long, default_value_t = 4)]
        tmax: i32,
        /// q-degree cap
        #[arg(long, default_value_t = 4)]
        qmax: i32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the full acceptance suite
    Selftest {
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// Buchberger budget, with the pair cap overridable through the environment.
fn budget() -> Budget {
    let mut b = Budget::default();
    if let Ok(v) = std::env::var("QUADRIQ_MAX_PAIRS") {
        match v.parse::<usize>() {
            Ok(p) => b.max_pairs = p,
            Err(_) => {
                eprintln!("quadriq: invalid QUADRIQ_MAX_PAIRS value `{v}`");
                std::process::exit(2);
            }
        }
    }
    b
}

fn usage_error(msg: &str) -> ! {
    eprintln!("quadriq: {msg}");
    std::process::exit(2);
}

/// Ideal generators in the order matching the coordinate frame.
fn window_setup(spec: &QuasimapSpec) -> (VariableTable, GeneratorSet) {
    let table = VariableTable::degree_one(spec);
    let order = match spec.coords {
        Coords::Hyperbolic => snake_order(&table),
        Coords::Orthonormal => deglex_order(&table),
    };
    let rels = relations(&table, &order);
    let seed = GeneratorSet::new(rels, order);
    (table, seed)
}

/// Groebner leading monomials of the window ideal, or the budget shortfall.
fn window_leading(spec: &QuasimapSpec) -> Result<(VariableTable, Vec<quadriq::polyring::Monomial>), usize> {
    let (table, seed) = window_setup(spec);
    match buchberger(&seed, budget()) {
        BuchbergerOutcome::Complete(gb) => Ok((table, gb.leading_monomials())),
        BuchbergerOutcome::BudgetExceeded { pairs_processed, .. } => Err(pairs_processed),
    }
}

fn spec_json(spec: &QuasimapSpec) -> Value {
    json!({
        "n": spec.n.to_string(),
        "N1": spec.n1.to_string(),
        "N2": spec.n2.to_string(),
        "coords": match spec.coords {
            Coords::Orthonormal => "orthonormal",
            Coords::Hyperbolic => "hyperbolic",
        },
    })
}

fn cells_json(series: &BigradedSeries) -> Value {
    let cells: Vec<Value> = series
        .cells()
        .map(|(t, q, c)| {
            json!({ "t": t.to_string(), "q": q.to_string(), "dim": c.to_string() })
        })
        .collect();
    Value::Array(cells)
}

fn series_text(series: &BigradedSeries, lines: &mut Vec<String>) {
    let q1 = series.q1();
    for (t, dim) in &q1 {
        lines.push(format!("t^{t}: {dim}"));
    }
    lines.push("bigraded cells:".to_string());
    for (t, q, c) in series.cells() {
        lines.push(format!("  t={t} q={q}: {c}"));
    }
}

struct Report {
    command: &'static str,
    pass: bool,
    text: Vec<String>,
    fields: Map<String, Value>,
}

impl Report {
    fn new(command: &'static str) -> Self {
        Report { command, pass: true, text: Vec::new(), fields: Map::new() }
    }

    fn emit(mut self, output: &OutputArgs) -> ExitCode {
        let body = match output.format {
            Format::Text => {
                let mut s = self.text.join("\n");
                s.push('\n');
                s
            }
            Format::Structured => {
                self.fields.insert("schema".into(), SCHEMA.into());
                self.fields.insert("command".into(), self.command.into());
                self.fields.insert("pass".into(), self.pass.into());
                let mut s = serde_json::to_string_pretty(&Value::Object(self.fields)).unwrap();
                s.push('\n');
                s
            }
        };
        match &output.out {
            Some(path) => {
                let mut f = std::fs::File::create(path)
                    .unwrap_or_else(|e| usage_error(&format!("cannot open {}: {e}", path.display())));
                f.write_all(body.as_bytes()).expect("write report");
            }
            None => print!("{body}"),
        }
        if self.pass { ExitCode::SUCCESS } else { ExitCode::from(1) }
    }
}

fn cmd_relations(spec: &QuasimapSpec, output: &OutputArgs) -> ExitCode {
    let (table, seed) = window_setup(spec);
    let names = table.names();
    let mut report = Report::new("relations");
    let printed: Vec<String> =
        seed.polys().iter().map(|p| format_polynomial(p, &names)).collect();
    for r in &printed {
        report.text.push(r.clone());
    }
    report.fields.insert("spec".into(), spec_json(spec));
    report.fields.insert(
        "relations".into(),
        Value::Array(printed.into_iter().map(Value::String).collect()),
    );
    report.emit(output)
}

fn cmd_groebner(spec: &QuasimapSpec, output: &OutputArgs) -> ExitCode {
    let (_, seed) = window_setup(spec);
    let mut report = Report::new("groebner");
    report.fields.insert("spec".into(), spec_json(spec));
    match is_groebner(&seed) {
        Ok(()) => {
            report.text.push("GROEBNER: PASS (0 new elements)".to_string());
            report.fields.insert("groebner".into(), true.into());
            report.fields.insert("new_elements".into(), "0".into());
        }
        Err(witness) => match buchberger(&seed, budget()) {
            BuchbergerOutcome::Complete(gb) => {
                let extra = gb.generators().len().saturating_sub(seed.len());
                report.pass = false;
                report.text.push(format!(
                    "GROEBNER: FAIL ({extra} new elements; first witness pair {} {})",
                    witness.i, witness.j
                ));
                report.fields.insert("groebner".into(), false.into());
                report.fields.insert("new_elements".into(), extra.to_string().into());
            }
            BuchbergerOutcome::BudgetExceeded { pairs_processed, .. } => {
                report.pass = false;
                report
                    .text
                    .push(format!("GROEBNER: BUDGET EXCEEDED after {pairs_processed} pairs"));
                report.fields.insert("budget_exceeded".into(), true.into());
            }
        },
    }
    report.emit(output)
}

fn cmd_series(spec: &QuasimapSpec, degree: u32, output: &OutputArgs) -> ExitCode {
    match window_leading(spec) {
        Ok((table, leading)) => {
            let series = staircase_series(&leading, &table, degree);
            let mut report = Report::new("series");
            report.fields.insert("spec".into(), spec_json(spec));
            report.fields.insert("degree".into(), degree.to_string().into());
            series_text(&series, &mut report.text);
            report.fields.insert("cells".into(), cells_json(&series));
            report.emit(output)
        }
        Err(pairs) => {
            eprintln!("quadriq: BUDGET EXCEEDED after {pairs} pairs");
            ExitCode::from(1)
        }
    }
}

fn cmd_chains(spec: &QuasimapSpec, degree: u32, output: &OutputArgs) -> ExitCode {
    let table = VariableTable::degree_one(spec);
    let Some(poset) = DiagramPoset::new(&table) else {
        usage_error("chain enumeration requires hyperbolic coordinates");
    };
    let all: Vec<_> = (0..table.len() as u32).collect();
    let series = chain_series(&poset, &all, &table, degree);
    let mut report = Report::new("chains");
    report.fields.insert("spec".into(), spec_json(spec));
    report.fields.insert("degree".into(), degree.to_string().into());
    series_text(&series, &mut report.text);
    report.fields.insert("cells".into(), cells_json(&series));
    report.emit(output)
}

fn cmd_pbw(spec: &QuasimapSpec, degree: u32, output: &OutputArgs) -> ExitCode {
    let dims = if spec.n >= 3 {
        closed_form(spec, degree).q1_vec(degree as i32)
    } else {
        match window_leading(spec) {
            Ok((table, leading)) => {
                staircase_series(&leading, &table, degree).q1_vec(degree as i32)
            }
            Err(pairs) => {
                eprintln!("quadriq: BUDGET EXCEEDED after {pairs} pairs");
                return ExitCode::from(1);
            }
        }
    };
    let mut report = Report::new("pbw");
    report.fields.insert("spec".into(), spec_json(spec));
    report.fields.insert("degree".into(), degree.to_string().into());
    match pbw_dual_dims(&dims) {
        Ok(l) => {
            for (k, v) in l.iter().enumerate() {
                report.text.push(format!("L{}: {v}", k + 1));
            }
            report.fields.insert(
                "dual_dims".into(),
                Value::Array(l.iter().map(|v| v.to_string().into()).collect()),
            );
        }
        Err(e) => {
            report
                .text
                .push(format!("PBW: negative dual dimension {} at degree {}", e.value, e.degree));
            report.fields.insert("negative_at_degree".into(), e.degree.to_string().into());
            report.fields.insert("negative_value".into(), e.value.to_string().into());
        }
    }
    report.emit(output)
}

fn cmd_brst(spec: &QuasimapSpec, degree: u32, output: &OutputArgs) -> ExitCode {
    if spec.n < 3 {
        usage_error("the acyclicity oracle requires ambient n >= 3");
    }
    let theorem = verify_main_theorem(spec, degree);
    let mut report = Report::new("brst");
    report.pass = theorem.pass();
    report.fields.insert("spec".into(), spec_json(spec));
    report.fields.insert("degree".into(), degree.to_string().into());
    report.fields.insert("d_squared_zero".into(), theorem.d_squared_zero.into());
    report
        .fields
        .insert("safe_degree".into(), theorem.safe_degree.to_string().into());
    report
        .fields
        .insert("failures".into(), theorem.failures.len().to_string().into());
    report.text.push(format!(
        "THEOREM-1: {} (d^2=0: {}, {} cell failures, safe degree {})",
        if theorem.pass() { "PASS" } else { "FAIL" },
        theorem.d_squared_zero,
        theorem.failures.len(),
        theorem.safe_degree
    ));
    report.emit(output)
}

fn cmd_semiinf(
    spec: &QuasimapSpec,
    tmin: i32,
    tmax: i32,
    qmax: i32,
    output: &OutputArgs,
) -> ExitCode {
    if spec.n < 3 {
        usage_error("the two-term complex requires ambient n >= 3");
    }
    if tmin > tmax || qmax < 0 {
        usage_error("empty bidegree window");
    }
    let cx = SemiInfComplex::build(spec, (tmin, tmax), qmax);
    let mut report = Report::new("semiinf");
    report.fields.insert("spec".into(), spec_json(spec));
    report.fields.insert("tmin".into(), tmin.to_string().into());
    report.fields.insert("tmax".into(), tmax.to_string().into());
    report.fields.insert("qmax".into(), qmax.to_string().into());
    let shift = cx.d_bidegree_shift();
    let euler = euler_check(&cx);
    let pairing = if spec.n1 == spec.n2 {
        let sources: Vec<(i32, i32)> =
            (0..=qmax).map(|w| (-1, w)).collect();
        Some(pairing_symmetry(&cx, &sources))
    } else {
        None
    };
    report.pass = shift && euler.pass() && pairing.as_ref().map_or(true, |p| p.pass());
    report.text.push(format!("BIDEGREE-SHIFT: {}", if shift { "PASS" } else { "FAIL" }));
    report.text.push(format!(
        "EULER: {} (dims {}, product identity {}, telescoping {})",
        if euler.pass() { "PASS" } else { "FAIL" },
        euler.dim_mismatches.len(),
        euler.product_identity,
        euler.rank_telescoping
    ));
    match &pairing {
        Some(p) => report
            .text
            .push(format!("PAIRING: {}", if p.pass() { "PASS" } else { "FAIL" })),
        None => report.text.push("PAIRING: SKIPPED (window not self-dual)".to_string()),
    }
    report.text.push("cohomology cells (t, w): dim kernel cokernel".to_string());
    let mut cells = Vec::new();
    for ((t, w), c) in cx.cohomology() {
        report
            .text
            .push(format!("  ({t},{w}): {} {} {}", c.dim, c.kernel, c.cokernel));
        cells.push(json!({
            "t": t.to_string(),
            "w": w.to_string(),
            "dim": c.dim.to_string(),
            "kernel": c.kernel.to_string(),
            "cokernel": c.cokernel.to_string(),
        }));
    }
    report.fields.insert("bidegree_shift".into(), shift.into());
    report.fields.insert("euler_pass".into(), euler.pass().into());
    report
        .fields
        .insert("pairing_pass".into(), pairing.map(|p| p.pass()).map_or(Value::Null, Value::from));
    report.fields.insert("cohomology".into(), Value::Array(cells));
    report.emit(output)
}

fn cmd_zcheck(n: u32, tmax: i32, qmax: i32, output: &OutputArgs) -> ExitCode {
    if n < 3 {
        usage_error("the partition function requires ambient n >= 3");
    }
    if tmax < 0 || qmax < 0 {
        usage_error("negative window bound");
    }
    let z = z_functional_equations(n, tmax, qmax);
    let mut report = Report::new("zcheck");
    report.pass = z.pass();
    report.fields.insert("n".into(), n.to_string().into());
    report.fields.insert("tmax".into(), tmax.to_string().into());
    report.fields.insert("qmax".into(), qmax.to_string().into());
    for (name, ok) in [
        ("inversion", z.inversion),
        ("q-shift", z.q_shift),
        ("composed", z.composed),
        ("truncation-stable", z.truncation_stable),
    ] {
        report.text.push(format!("Z {}: {}", name, if ok { "PASS" } else { "FAIL" }));
        report
            .fields
            .insert(name.replace('-', "_"), ok.into());
    }
    report.emit(output)
}

fn cmd_selftest(output: &OutputArgs) -> ExitCode {
    let results = run_all();
    let mut report = Report::new("selftest");
    let mut items = Vec::new();
    for r in &results {
        let status = if r.pass { "PASS" } else { "FAIL" };
        report.text.push(format!("[{status}] criterion {}: {} — {}", r.id, r.name, r.detail));
        report.pass &= r.pass;
        items.push(json!({
            "id": r.id.to_string(),
            "name": r.name,
            "pass": r.pass,
            "detail": r.detail,
        }));
    }
    report
        .text
        .push(format!("SELFTEST: {}", if report.pass { "PASS" } else { "FAIL" }));
    report.fields.insert("criteria".into(), Value::Array(items));
    report.emit(output)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.cmd {
        Cmd::Relations { spec, output } => cmd_relations(&spec.spec(), output),
        Cmd::Groebner { spec, output } => cmd_groebner(&spec.spec(), output),
        Cmd::Series { spec, degree, output } => cmd_series(&spec.spec(), *degree, output),
        Cmd::Chains { spec, degree, output } => cmd_chains(&spec.spec(), *degree, output),
        Cmd::Pbw { spec, degree, output } => cmd_pbw(&spec.spec(), *degree, output),
        Cmd::Brst { spec, degree, output } => cmd_brst(&spec.spec(), *degree, output),
        Cmd::Semiinf { spec, tmin, tmax, qmax, output } => {
            cmd_semiinf(&spec.spec(), *tmin, *tmax, *qmax, output)
        }
        Cmd::Zcheck { n, tmax, qmax, output } => cmd_zcheck(*n, *tmax, *qmax, output),
        Cmd::Selftest { output } => cmd_selftest(output),
    }
}
