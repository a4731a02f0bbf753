//! End-to-end verification suite: each criterion exercises one headline
//! property of the engine against an independent oracle and reports
//! pass/fail with a short detail string.  The CLI selftest and the
//! acceptance integration test both run this list.

use num::Zero;

use crate::exactnum::Int;
use crate::groebner::{buchberger, is_groebner, reduce, s_polynomial, Budget, GeneratorSet};
use crate::hilbert::{
    chain_series, closed_form, pbw_dual_dims, staircase_series, BigradedSeries, SeriesExpr,
};
use crate::polyring::{parse_polynomial, MonomialOrder, Monomial, Polynomial, Tiebreak};
use crate::quadric::{
    relations, snake_order, Coords, DiagramPoset, QuasimapSpec, VariableTable,
};
use crate::semiinf::{
    euler_check, pairing_symmetry, stability_check, z_functional_equations, SemiInfComplex,
};

/// Result of one acceptance criterion.
#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl CriterionResult {
    fn new(id: u32, name: &'static str, pass: bool, detail: String) -> Self {
        CriterionResult { id, name, pass, detail }
    }
}

/// Run every criterion in order.
pub fn run_all() -> Vec<CriterionResult> {
    vec![
        finite_quadric_series(),
        groebner_property(),
        golden_series_n2(),
        bigraded_triple_agreement(),
        pbw_dual_dimensions(),
        brst_acyclicity(),
        semi_infinite_complex(),
        z_equations(),
        groebner_kernel_units(),
    ]
}

/// Snake-order Groebner basis of the window relations for a hyperbolic spec.
fn hyperbolic_basis(spec: &QuasimapSpec) -> (VariableTable, crate::groebner::GroebnerBasis) {
    let table = VariableTable::degree_one(spec);
    let order = snake_order(&table);
    let rels = relations(&table, &order);
    let seed = GeneratorSet::new(rels, order);
    (table, buchberger(&seed, Budget::default()).unwrap_complete())
}

fn q1_dims(series: &BigradedSeries, d: i32) -> Vec<Int> {
    series.q1_vec(d)
}

/// Expand numerator / (1-t)^k as a power series up to degree `d`.
fn rational_dims(numer: &[i64], k: usize, d: usize) -> Vec<Int> {
    let mut out: Vec<Int> = (0..=d)
        .map(|i| numer.get(i).copied().map_or_else(Int::zero, Int::from))
        .collect();
    for _ in 0..k {
        for i in 1..=d {
            let prev = out[i - 1].clone();
            out[i] += prev;
        }
    }
    out
}

/// Criterion 1: the one-period quadric algebra series equals
/// (1 - t^2)/(1 - t)^n for n = 3..8, exactly up to degree 10.
pub fn finite_quadric_series() -> CriterionResult {
    let mut pass = true;
    let mut detail = String::new();
    for n in 3..=8 {
        let spec = QuasimapSpec::new(n, 0, 0, Coords::Hyperbolic);
        let (table, gb) = hyperbolic_basis(&spec);
        let stair = staircase_series(&gb.leading_monomials(), &table, 10);
        let expr = SeriesExpr { num: vec![(0, 2)], den: vec![(0, 1); n as usize] };
        let closed = expr.expand((0, 10), 0);
        if q1_dims(&stair, 10) != q1_dims(&closed, 10) {
            pass = false;
            detail.push_str(&format!("n={n} mismatch; "));
        }
    }
    if detail.is_empty() {
        detail = "n=3..8, degree <= 10".to_string();
    }
    CriterionResult::new(1, "finite quadric series", pass, detail)
}

/// Criterion 2: the window relations are a snake-order Groebner basis for
/// ambient n = 3..8 and N1, N2 in {0,1,2}; for ambient n = 2 they are not,
/// and completion terminates within budget.
pub fn groebner_property() -> CriterionResult {
    let mut pass = true;
    let mut detail = String::new();
    for n in 3..=8u32 {
        for n1 in 0..=2 {
            for n2 in 0..=2 {
                let spec = QuasimapSpec::new(n, n1, n2, Coords::Hyperbolic);
                let table = VariableTable::degree_one(&spec);
                let order = snake_order(&table);
                let rels = relations(&table, &order);
                let basis = GeneratorSet::new(rels, order);
                if is_groebner(&basis).is_err() {
                    pass = false;
                    detail.push_str(&format!("({n},{n1},{n2}) not a basis; "));
                }
            }
        }
    }
    for n2 in [1, 2] {
        let spec = QuasimapSpec::new(2, 0, n2, Coords::Hyperbolic);
        let table = VariableTable::degree_one(&spec);
        let order = snake_order(&table);
        let rels = relations(&table, &order);
        let basis = GeneratorSet::new(rels, order);
        if is_groebner(&basis).is_ok() {
            pass = false;
            detail.push_str(&format!("(2,0,{n2}) unexpectedly a basis; "));
        }
        match buchberger(&basis, Budget::default()) {
            crate::groebner::BuchbergerOutcome::Complete(_) => {}
            crate::groebner::BuchbergerOutcome::BudgetExceeded { .. } => {
                pass = false;
                detail.push_str(&format!("(2,0,{n2}) budget exceeded; "));
            }
        }
    }
    if detail.is_empty() {
        detail = "n=3..8 positive, n=2 refuted with terminating completion".to_string();
    }
    CriterionResult::new(2, "snake-order Groebner property", pass, detail)
}

/// Criterion 3: golden series for ambient n = 2, N1 = 0, N2 = 0..3, exactly
/// up to degree 12.
pub fn golden_series_n2() -> CriterionResult {
    let golden: [(&[i64], usize); 4] = [
        (&[1, 1], 1),
        (&[1, 2, 0, -2, 1], 2),
        (&[1, 3, 1, -5, -5, 11, -3, -1], 3),
        (&[1, 4, 3, -8, -14, 0, 56, -48, 3, 4, 1], 4),
    ];
    let mut pass = true;
    let mut detail = String::new();
    for (n2, (numer, k)) in golden.iter().enumerate() {
        let spec = QuasimapSpec::new(2, 0, n2 as i32, Coords::Hyperbolic);
        let (table, gb) = hyperbolic_basis(&spec);
        let stair = staircase_series(&gb.leading_monomials(), &table, 12);
        if q1_dims(&stair, 12) != rational_dims(numer, *k, 12) {
            pass = false;
            detail.push_str(&format!("N2={n2} mismatch; "));
        }
    }
    if detail.is_empty() {
        detail = "n=2, N2=0..3, degree <= 12".to_string();
    }
    CriterionResult::new(3, "rank-two golden series", pass, detail)
}

/// Criterion 4: staircase, chain-monomial, and closed-form bigraded series
/// agree cell-by-cell for n = 3..6, N1, N2 in {0,1}, degree <= 6.
pub fn bigraded_triple_agreement() -> CriterionResult {
    let mut pass = true;
    let mut detail = String::new();
    for n in 3..=6u32 {
        for n1 in 0..=1 {
            for n2 in 0..=1 {
                let spec = QuasimapSpec::new(n, n1, n2, Coords::Hyperbolic);
                let (table, gb) = hyperbolic_basis(&spec);
                let stair = staircase_series(&gb.leading_monomials(), &table, 6);
                let poset = DiagramPoset::new(&table).expect("hyperbolic diagram");
                let all: Vec<_> = (0..table.len() as u32).collect();
                let chain = chain_series(&poset, &all, &table, 6);
                let closed = closed_form(&spec, 6);
                if stair != chain || stair != closed {
                    pass = false;
                    detail.push_str(&format!("({n},{n1},{n2}) disagreement; "));
                }
            }
        }
    }
    if detail.is_empty() {
        detail = "staircase = chain = closed form, n=3..6".to_string();
    }
    CriterionResult::new(4, "bigraded triple agreement", pass, detail)
}

/// Criterion 5: numeric PBW dual dimensions L1 = n(N1+N2+1),
/// L2 = 2(N1+N2)+1, L3..L8 = 0 for n = 3..5; and a negative dimension for
/// ambient n = 2, N2 = 3 before degree 12.
pub fn pbw_dual_dimensions() -> CriterionResult {
    let mut pass = true;
    let mut detail = String::new();
    for n in 3..=5u32 {
        for n1 in 0..=1i32 {
            for n2 in 0..=1i32 {
                let spec = QuasimapSpec::new(n, n1, n2, Coords::Hyperbolic);
                let dims = closed_form(&spec, 8).q1_vec(8);
                match pbw_dual_dims(&dims) {
                    Ok(l) => {
                        let l1 = Int::from(n as i64 * (n1 + n2 + 1) as i64);
                        let l2 = Int::from(2 * (n1 + n2) as i64 + 1);
                        if l[0] != l1 || l[1] != l2 || l[2..8].iter().any(|x| !x.is_zero()) {
                            pass = false;
                            detail.push_str(&format!("({n},{n1},{n2}) wrong dims {l:?}; "));
                        }
                    }
                    Err(e) => {
                        pass = false;
                        detail.push_str(&format!("({n},{n1},{n2}) inconsistent: {e:?}; "));
                    }
                }
            }
        }
    }
    let spec = QuasimapSpec::new(2, 0, 3, Coords::Hyperbolic);
    let (table, gb) = hyperbolic_basis(&spec);
    let dims = staircase_series(&gb.leading_monomials(), &table, 12).q1_vec(12);
    match pbw_dual_dims(&dims) {
        Ok(l) => {
            pass = false;
            detail.push_str(&format!("(2,0,3) unexpectedly consistent: {l:?}; "));
        }
        Err(e) => detail.push_str(&format!("(2,0,3) negative at degree {}; ", e.degree)),
    }
    CriterionResult::new(5, "PBW dual dimensions", pass, detail)
}

/// Criterion 6: Koszul acyclicity by exact rank for five specs at cutoff 6.
pub fn brst_acyclicity() -> CriterionResult {
    let cases = [(3, 0, 0), (3, 0, 1), (4, 0, 1), (5, 0, 0), (5, 1, 1)];
    let mut pass = true;
    let mut detail = String::new();
    for (n, n1, n2) in cases {
        let spec = QuasimapSpec::new(n, n1, n2, Coords::Hyperbolic);
        let report = crate::brst::verify_main_theorem(&spec, 6);
        if !report.pass() {
            pass = false;
            detail.push_str(&format!(
                "({n},{n1},{n2}) d2={} failures={}; ",
                report.d_squared_zero,
                report.failures.len()
            ));
        }
    }
    if detail.is_empty() {
        detail = "five specs, cutoff 6, exact ranks".to_string();
    }
    CriterionResult::new(6, "Koszul complex acyclicity", pass, detail)
}

/// Criterion 7: the two-term complex at n = 3, N1 = N2 = 1 on |t| <= 3:
/// bidegree shift, Euler-product checks, entrywise pairing symmetry, and
/// cohomology stability between two successive saturated truncations.
pub fn semi_infinite_complex() -> CriterionResult {
    let spec = QuasimapSpec::new(3, 1, 1, Coords::Hyperbolic);
    let cx = SemiInfComplex::build(&spec, (-3, 3), 3);
    let mut pass = true;
    let mut detail = String::new();
    if !cx.d_bidegree_shift() {
        pass = false;
        detail.push_str("bidegree shift violated; ");
    }
    let euler = euler_check(&cx);
    if !euler.pass() {
        pass = false;
        detail.push_str(&format!(
            "euler: dims {} product {} telescoping {}; ",
            euler.dim_mismatches.len(),
            euler.product_identity,
            euler.rank_telescoping
        ));
    }
    let sources = [(-1, 0), (-1, 1), (-1, 2), (0, 1), (0, 2), (-2, 0), (-2, 1)];
    let pairing = pairing_symmetry(&cx, &sources);
    if !pairing.pass() {
        pass = false;
        detail.push_str("pairing symmetry violated; ");
    }
    // Cells saturate once the truncation exceeds the weight cap, so the
    // stability comparison starts from the first saturated truncation.
    let stable_q = 1;
    let base = QuasimapSpec::new(3, stable_q + 1, stable_q + 1, Coords::Hyperbolic);
    let stability = stability_check(&base, (-3, 3), stable_q);
    if !stability.pass() {
        pass = false;
        detail.push_str(&format!("stability: {} mismatches; ", stability.mismatches.len()));
    }
    if detail.is_empty() {
        detail = "shift, Euler, pairing, stability on |t| <= 3".to_string();
    }
    CriterionResult::new(7, "semi-infinite two-term complex", pass, detail)
}

/// Criterion 8: the three functional equations of the partition function for
/// n = 3..5 on |t-degree| <= 4, q-degree <= 4.
pub fn z_equations() -> CriterionResult {
    let mut pass = true;
    let mut detail = String::new();
    for n in 3..=5 {
        let report = z_functional_equations(n, 4, 4);
        if !report.pass() {
            pass = false;
            detail.push_str(&format!("n={n}: {report:?}; "));
        }
    }
    if detail.is_empty() {
        detail = "inversion, q-shift, composed, stable truncation".to_string();
    }
    CriterionResult::new(8, "partition-function equations", pass, detail)
}

/// Deterministic xorshift generator for the random-pair property.
struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

/// Criterion 9: kernel unit checks — the worked S-polynomial example, its
/// completed basis, and the coprime-leading-term skip on 1000 random pairs.
pub fn groebner_kernel_units() -> CriterionResult {
    let mut pass = true;
    let mut detail = String::new();
    // worked example in two variables, x ranked above y
    let ord = MonomialOrder::from_ranking(&[0, 1], 2, Tiebreak::Lex);
    let names = vec!["y".to_string(), "x".to_string()];
    let f1 = parse_polynomial("x^3 - 2*x*y", &names, &ord).unwrap();
    let f2 = parse_polynomial("x^2*y - 2*y^2 + x", &names, &ord).unwrap();
    let s = s_polynomial(&f1, &f2, &ord);
    let x2 = parse_polynomial("x^2", &names, &ord).unwrap();
    if s != x2 {
        pass = false;
        detail.push_str("S-polynomial example mismatch; ");
    }
    let seed = GeneratorSet::new(vec![f1, f2], ord.clone());
    let gb = buchberger(&seed, Budget::default()).unwrap_complete();
    if !reduce(&x2, gb.generators()).is_zero() {
        pass = false;
        detail.push_str("x^2 does not reduce to zero in the completion; ");
    }
    // coprime-skip property: S(f, g) reduces to zero against {f, g} whenever
    // the leading monomials share no variable
    let mut rng = XorShift(0x9e3779b97f4a7c15);
    let order = MonomialOrder::deglex(4);
    let mut checked = 0;
    for _ in 0..1000 {
        let lead_f = Monomial::from_exps(vec![
            (0, 1 + rng.below(3) as u32),
            (1, rng.below(3) as u32),
        ]);
        let lead_g = Monomial::from_exps(vec![
            (2, 1 + rng.below(3) as u32),
            (3, rng.below(3) as u32),
        ]);
        let mut tail = |top: u32| -> Vec<(crate::exactnum::Rational, Monomial)> {
            (0..rng.below(3))
                .map(|_| {
                    let d = rng.below(top.max(1) as u64) as u32;
                    let a = rng.below((d + 1) as u64) as u32;
                    let v1 = rng.below(4) as u32;
                    let v2 = (v1 + 1 + rng.below(3) as u32) % 4;
                    let m = Monomial::from_exps(vec![(v1, a), (v2, d - a)]);
                    let c = crate::exactnum::int(1 + rng.below(5) as i64);
                    (c, m)
                })
                .collect()
        };
        let mut terms_f = vec![(crate::exactnum::int(1), lead_f.clone())];
        terms_f.extend(tail(lead_f.degree()));
        let mut terms_g = vec![(crate::exactnum::int(1), lead_g.clone())];
        terms_g.extend(tail(lead_g.degree()));
        let f = Polynomial::from_terms(terms_f, &order);
        let g = Polynomial::from_terms(terms_g, &order);
        if f.leading_monomial() != &lead_f || g.leading_monomial() != &lead_g {
            continue; // tail collided with the intended leading term
        }
        checked += 1;
        let basis = GeneratorSet::new(vec![f.clone(), g.clone()], order.clone());
        let s = s_polynomial(&f, &g, &order);
        if !reduce(&s, &basis).is_zero() {
            pass = false;
            detail.push_str("coprime-skip counterexample found; ");
            break;
        }
    }
    if detail.is_empty() {
        detail = format!("worked example plus {checked} random coprime pairs");
    }
    CriterionResult::new(9, "Groebner kernel units", pass, detail)
}
