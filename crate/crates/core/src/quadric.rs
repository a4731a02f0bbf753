//! Truncated quadric loop algebras: variable tables with bigrading, the
//! quadratic relation families in both coordinate styles, the snake monomial
//! order, the periodic Hasse-diagram poset with the chain-monomial predicate,
//! and the loop-reversal involution.
//!
//! Ambient dimension n: hyperbolic coordinates use pairs f^i, g_i for
//! i = 1..m with n = 2m or n = 2m+1 (the odd case adds a middle variable h);
//! orthonormal coordinates use lambda^1..lambda^n. Degree-1 variables carry a
//! loop index in [-N1, N2]; the relation r[l] collects all weight-l products.

use std::fmt;
use std::str::FromStr;

use crate::exactnum::{int, Rational};
use crate::polyring::{Monomial, MonomialOrder, Polynomial, Tiebreak, VarId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coords {
    Orthonormal,
    Hyperbolic,
}

/// Family parameters: ambient dimension and truncation window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuasimapSpec {
    pub n: u32,
    pub n1: i32,
    pub n2: i32,
    pub coords: Coords,
}

impl QuasimapSpec {
    pub fn new(n: u32, n1: i32, n2: i32, coords: Coords) -> Self {
        assert!(n >= 2, "ambient dimension must be at least 2");
        assert!(n1 >= 0 && n2 >= 0, "truncation bounds must be nonnegative");
        QuasimapSpec { n, n1, n2, coords }
    }

    /// Number of f/g pairs in hyperbolic coordinates.
    pub fn m(&self) -> u32 {
        self.n / 2
    }

    pub fn is_odd(&self) -> bool {
        self.n % 2 == 1
    }
}

impl fmt::Display for QuasimapSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords = match self.coords {
            Coords::Orthonormal => "orthonormal",
            Coords::Hyperbolic => "hyperbolic",
        };
        write!(f, "n={} N1={} N2={} coords={}", self.n, self.n1, self.n2, coords)
    }
}

impl FromStr for QuasimapSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut n = None;
        let mut n1 = None;
        let mut n2 = None;
        let mut coords = None;
        for field in s.split_whitespace() {
            let (k, v) = field.split_once('=').ok_or_else(|| format!("bad field `{field}`"))?;
            match k {
                "n" => n = Some(v.parse::<u32>().map_err(|e| e.to_string())?),
                "N1" => n1 = Some(v.parse::<i32>().map_err(|e| e.to_string())?),
                "N2" => n2 = Some(v.parse::<i32>().map_err(|e| e.to_string())?),
                "coords" => {
                    coords = Some(match v {
                        "orthonormal" => Coords::Orthonormal,
                        "hyperbolic" => Coords::Hyperbolic,
                        _ => return Err(format!("bad coords `{v}`")),
                    })
                }
                _ => return Err(format!("unknown field `{k}`")),
            }
        }
        match (n, n1, n2, coords) {
            (Some(n), Some(n1), Some(n2), Some(c)) => Ok(QuasimapSpec::new(n, n1, n2, c)),
            _ => Err("missing field".to_string()),
        }
    }
}

/// Symbol kind; component indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarKind {
    F(u32),
    G(u32),
    H,
    Lambda(u32),
    Ghost,
}

/// One table entry: kind, loop index, internal degree, parity, q-weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarInfo {
    pub kind: VarKind,
    pub loop_index: i32,
    pub degree: u32,
    pub weight: i32,
    pub odd_parity: bool,
    pub name: String,
}

/// Variable table for one spec; degree-1 variables are laid out in ascending
/// snake-ranking order (hyperbolic) or (loop, component) order (orthonormal),
/// ghosts after them in ascending loop index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableTable {
    spec: QuasimapSpec,
    vars: Vec<VarInfo>,
    /// loop-index window of the degree-1 variables
    lo: i32,
    hi: i32,
    n_degree_one: usize,
}

impl VariableTable {
    /// Degree-1 variables over the spec's own window [-N1, N2].
    pub fn degree_one(spec: &QuasimapSpec) -> Self {
        Self::degree_one_window(spec, -spec.n1, spec.n2)
    }

    /// Degree-1 variables over an arbitrary loop-index window [lo, hi].
    pub fn degree_one_window(spec: &QuasimapSpec, lo: i32, hi: i32) -> Self {
        assert!(lo <= hi, "empty loop window");
        let m = spec.m();
        let mut vars = Vec::new();
        for l in lo..=hi {
            match spec.coords {
                Coords::Orthonormal => {
                    for i in 1..=spec.n {
                        vars.push(degree_one_var(VarKind::Lambda(i), l, spec));
                    }
                }
                Coords::Hyperbolic => {
                    // ascending snake ranking within the period
                    if spec.is_odd() {
                        for i in (1..=m).rev() {
                            vars.push(degree_one_var(VarKind::F(i), l, spec));
                        }
                        vars.push(degree_one_var(VarKind::H, l, spec));
                        for i in 1..=m {
                            vars.push(degree_one_var(VarKind::G(i), l, spec));
                        }
                    } else if m == 1 {
                        vars.push(degree_one_var(VarKind::F(1), l, spec));
                        vars.push(degree_one_var(VarKind::G(1), l, spec));
                    } else {
                        for i in (2..=m).rev() {
                            vars.push(degree_one_var(VarKind::F(i), l, spec));
                        }
                        vars.push(degree_one_var(VarKind::G(1), l, spec));
                        vars.push(degree_one_var(VarKind::F(1), l, spec));
                        for i in 2..=m {
                            vars.push(degree_one_var(VarKind::G(i), l, spec));
                        }
                    }
                }
            }
        }
        let n_degree_one = vars.len();
        VariableTable { spec: *spec, vars, lo, hi, n_degree_one }
    }

    /// Degree-1 variables plus odd ghost variables c[k], k in [-2N1, 2N2],
    /// of internal degree 2 and q-weight k.
    pub fn with_ghosts(spec: &QuasimapSpec) -> Self {
        let mut table = Self::degree_one(spec);
        for k in -2 * spec.n1..=2 * spec.n2 {
            table.vars.push(VarInfo {
                kind: VarKind::Ghost,
                loop_index: k,
                degree: 2,
                weight: k,
                odd_parity: true,
                name: format!("c[{k}]"),
            });
        }
        table
    }

    pub fn spec(&self) -> &QuasimapSpec {
        &self.spec
    }

    pub fn vars(&self) -> &[VarInfo] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    /// Loop-index window of the degree-1 variables.
    pub fn window(&self) -> (i32, i32) {
        (self.lo, self.hi)
    }

    pub fn n_degree_one(&self) -> usize {
        self.n_degree_one
    }

    pub fn names(&self) -> Vec<String> {
        self.vars.iter().map(|v| v.name.clone()).collect()
    }

    pub fn index_of(&self, kind: VarKind, loop_index: i32) -> Option<VarId> {
        self.vars
            .iter()
            .position(|v| v.kind == kind && v.loop_index == loop_index)
            .map(|i| i as VarId)
    }

    pub fn var(&self, kind: VarKind, loop_index: i32) -> VarId {
        self.index_of(kind, loop_index)
            .unwrap_or_else(|| panic!("variable {kind:?}[{loop_index}] not in table"))
    }

    /// Total internal degree of a monomial.
    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        m.exps().iter().map(|&(v, e)| self.vars[v as usize].degree * e).sum()
    }

    /// Total q-weight of a monomial.
    pub fn monomial_weight(&self, m: &Monomial) -> i32 {
        m.exps().iter().map(|&(v, e)| self.vars[v as usize].weight * e as i32).sum()
    }
}

fn degree_one_var(kind: VarKind, l: i32, spec: &QuasimapSpec) -> VarInfo {
    let m = spec.m();
    let name = match kind {
        VarKind::F(_) if m == 1 => format!("f[{l}]"),
        VarKind::G(_) if m == 1 => format!("g[{l}]"),
        VarKind::F(i) => format!("f{i}[{l}]"),
        VarKind::G(i) => format!("g{i}[{l}]"),
        VarKind::H => format!("h[{l}]"),
        VarKind::Lambda(i) => format!("l{i}[{l}]"),
        VarKind::Ghost => unreachable!(),
    };
    VarInfo { kind, loop_index: l, degree: 1, weight: l, odd_parity: false, name }
}

/// The canonical graded order for hyperbolic specs: reverse-lexicographic
/// tie-break over the snake ranking (table layout order), so the monomial
/// with more of a lower-ranked variable is smaller.
pub fn snake_order(table: &VariableTable) -> MonomialOrder {
    assert_eq!(table.spec.coords, Coords::Hyperbolic, "snake order requires hyperbolic coordinates");
    let ranking: Vec<VarId> = (0..table.len() as u32).collect();
    MonomialOrder::from_ranking(&ranking, table.len(), Tiebreak::RevLex)
}

/// Graded lex over the table layout; used for orthonormal specs and the
/// window sub-algebra computations where no canonical order is claimed.
pub fn deglex_order(table: &VariableTable) -> MonomialOrder {
    MonomialOrder::deglex(table.len())
}

/// The quadratic relations r[l] for l over the doubled window, summed over
/// ordered loop-index pairs (s, t) with s + t = l inside the table's window.
pub fn relations(table: &VariableTable, order: &MonomialOrder) -> Vec<Polynomial> {
    let spec = &table.spec;
    let m = spec.m();
    let (lo, hi) = table.window();
    let mut out = Vec::new();
    for l in 2 * lo..=2 * hi {
        let mut terms: Vec<(Rational, Monomial)> = Vec::new();
        for s in lo..=hi {
            let t = l - s;
            if t < lo || t > hi {
                continue;
            }
            match spec.coords {
                Coords::Orthonormal => {
                    for i in 1..=spec.n {
                        let a = table.var(VarKind::Lambda(i), s);
                        let b = table.var(VarKind::Lambda(i), t);
                        terms.push((int(1), Monomial::var(a).mul(&Monomial::var(b))));
                    }
                }
                Coords::Hyperbolic => {
                    for i in 1..=m {
                        let a = table.var(VarKind::F(i), s);
                        let b = table.var(VarKind::G(i), t);
                        terms.push((int(1), Monomial::var(a).mul(&Monomial::var(b))));
                    }
                    if spec.is_odd() {
                        let a = table.var(VarKind::H, s);
                        let b = table.var(VarKind::H, t);
                        terms.push((int(1), Monomial::var(a).mul(&Monomial::var(b))));
                    }
                }
            }
        }
        out.push(Polynomial::from_terms(terms, order));
    }
    out
}

/// The leading monomials the snake order assigns to the hyperbolic relation
/// family: g1[t]f1[t] (even) or h[t]^2 (odd) for each period, and
/// g_m[t]f^m[t+1] across consecutive periods.
pub fn straightening_leading_monomials(table: &VariableTable) -> Vec<Monomial> {
    let spec = &table.spec;
    assert_eq!(spec.coords, Coords::Hyperbolic);
    let m = spec.m();
    let (lo, hi) = table.window();
    let mut out = Vec::new();
    for t in lo..=hi {
        if spec.is_odd() {
            let h = Monomial::var(table.var(VarKind::H, t));
            out.push(h.mul(&h));
        } else {
            out.push(
                Monomial::var(table.var(VarKind::G(1), t))
                    .mul(&Monomial::var(table.var(VarKind::F(1), t))),
            );
        }
        if t + 1 <= hi {
            out.push(
                Monomial::var(table.var(VarKind::G(m), t))
                    .mul(&Monomial::var(table.var(VarKind::F(m), t + 1))),
            );
        }
    }
    out
}

/// Periodic Hasse-diagram poset on the degree-1 hyperbolic variables.
///
/// Stores the strict reachability relation of the covering arrows plus
/// per-element reflexivity flags (the middle variable h is non-reflexive).
/// Not defined for ambient n = 2, whose diagram does not order the family.
#[derive(Debug, Clone)]
pub struct DiagramPoset {
    n: usize,
    /// strict relation: less[a][b] = true iff a < b
    less: Vec<Vec<bool>>,
    reflexive: Vec<bool>,
}

impl DiagramPoset {
    pub fn new(table: &VariableTable) -> Option<Self> {
        let spec = &table.spec;
        if spec.coords != Coords::Hyperbolic || spec.n == 2 {
            return None;
        }
        let m = spec.m();
        let (lo, hi) = table.window();
        let nv = table.n_degree_one();
        let mut less = vec![vec![false; nv]; nv];
        let mut arrow = |a: Option<VarId>, b: Option<VarId>| {
            if let (Some(a), Some(b)) = (a, b) {
                less[a as usize][b as usize] = true;
            }
        };
        let at = |k: VarKind, l: i32| table.index_of(k, l);
        for t in lo..=hi {
            if spec.is_odd() {
                // chain f^m -> ... -> f^1 -> h -> g_1 -> ... -> g_{m-1},
                // then the period-crossing diamond through {g_m, f^m[t+1]}
                for i in (2..=m).rev() {
                    arrow(at(VarKind::F(i), t), at(VarKind::F(i - 1), t));
                }
                arrow(at(VarKind::F(1), t), at(VarKind::H, t));
                if m == 1 {
                    // ambient 3: h[t] -> {f[t+1], g[t]} -> h[t+1]
                    arrow(at(VarKind::H, t), at(VarKind::G(1), t));
                    arrow(at(VarKind::H, t), at(VarKind::F(1), t + 1));
                    arrow(at(VarKind::G(1), t), at(VarKind::H, t + 1));
                    arrow(at(VarKind::F(1), t + 1), at(VarKind::H, t + 1));
                } else {
                    arrow(at(VarKind::H, t), at(VarKind::G(1), t));
                    for i in 1..=m.saturating_sub(2) {
                        arrow(at(VarKind::G(i), t), at(VarKind::G(i + 1), t));
                    }
                    arrow(at(VarKind::G(m - 1), t), at(VarKind::G(m), t));
                    arrow(at(VarKind::G(m - 1), t), at(VarKind::F(m), t + 1));
                    arrow(at(VarKind::G(m), t), at(VarKind::F(m - 1), t + 1));
                    arrow(at(VarKind::F(m), t + 1), at(VarKind::F(m - 1), t + 1));
                }
            } else if m == 2 {
                // ambient 4: two-row grid with the two extra diagonal arrows
                arrow(at(VarKind::F(2), t), at(VarKind::F(1), t));
                arrow(at(VarKind::F(2), t), at(VarKind::G(1), t));
                arrow(at(VarKind::F(1), t), at(VarKind::F(2), t + 1));
                arrow(at(VarKind::F(1), t), at(VarKind::G(2), t));
                arrow(at(VarKind::G(1), t), at(VarKind::G(2), t));
                arrow(at(VarKind::G(1), t), at(VarKind::F(2), t + 1));
                arrow(at(VarKind::G(2), t), at(VarKind::G(1), t + 1));
                arrow(at(VarKind::G(2), t), at(VarKind::F(1), t + 1));
            } else {
                // generic even: two diamonds per period joined by chains
                for i in (3..=m).rev() {
                    arrow(at(VarKind::F(i), t), at(VarKind::F(i - 1), t));
                }
                arrow(at(VarKind::F(2), t), at(VarKind::F(1), t));
                arrow(at(VarKind::F(2), t), at(VarKind::G(1), t));
                arrow(at(VarKind::F(1), t), at(VarKind::G(2), t));
                arrow(at(VarKind::G(1), t), at(VarKind::G(2), t));
                for i in 2..=m - 2 {
                    arrow(at(VarKind::G(i), t), at(VarKind::G(i + 1), t));
                }
                arrow(at(VarKind::G(m - 1), t), at(VarKind::G(m), t));
                arrow(at(VarKind::G(m - 1), t), at(VarKind::F(m), t + 1));
                arrow(at(VarKind::G(m), t), at(VarKind::F(m - 1), t + 1));
                arrow(at(VarKind::F(m), t + 1), at(VarKind::F(m - 1), t + 1));
            }
        }
        // transitive closure
        for k in 0..nv {
            for i in 0..nv {
                if less[i][k] {
                    for j in 0..nv {
                        if less[k][j] {
                            less[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..nv {
            assert!(!less[i][i], "cycle in diagram");
        }
        let reflexive = (0..nv).map(|i| table.vars()[i].kind != VarKind::H).collect();
        Some(DiagramPoset { n: nv, less, reflexive })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Strict order a < b.
    pub fn lt(&self, a: VarId, b: VarId) -> bool {
        self.less[a as usize][b as usize]
    }

    pub fn is_reflexive(&self, a: VarId) -> bool {
        self.reflexive[a as usize]
    }

    /// Distinct elements comparable either way; an element is comparable to
    /// itself only if reflexive.
    pub fn comparable(&self, a: VarId, b: VarId) -> bool {
        if a == b {
            self.reflexive[a as usize]
        } else {
            self.lt(a, b) || self.lt(b, a)
        }
    }

    /// Closed interval [a, b] in the strict order.
    pub fn interval(&self, a: VarId, b: VarId) -> Vec<VarId> {
        (0..self.n as u32)
            .filter(|&c| (c == a || self.lt(a, c)) && (c == b || self.lt(c, b)))
            .collect()
    }

    /// Unique least upper bound, if the set of minimal upper bounds is a
    /// singleton. sup(a, a) for non-reflexive a looks strictly above a.
    pub fn sup(&self, a: VarId, b: VarId) -> Option<VarId> {
        let above = |x: VarId, c: u32| {
            if x == c {
                self.reflexive[x as usize]
            } else {
                self.lt(x, c)
            }
        };
        let ub: Vec<u32> = (0..self.n as u32).filter(|&c| above(a, c) && above(b, c)).collect();
        let minimal: Vec<u32> =
            ub.iter().copied().filter(|&c| !ub.iter().any(|&d| d != c && self.lt(d, c))).collect();
        (minimal.len() == 1).then(|| minimal[0])
    }

    /// Unique greatest lower bound, dual to [`sup`](Self::sup).
    pub fn inf(&self, a: VarId, b: VarId) -> Option<VarId> {
        let below = |x: VarId, c: u32| {
            if x == c {
                self.reflexive[x as usize]
            } else {
                self.lt(c, x)
            }
        };
        let lb: Vec<u32> = (0..self.n as u32).filter(|&c| below(a, c) && below(b, c)).collect();
        let maximal: Vec<u32> =
            lb.iter().copied().filter(|&c| !lb.iter().any(|&d| d != c && self.lt(c, d))).collect();
        (maximal.len() == 1).then(|| maximal[0])
    }
}

/// True iff the support is totally ordered and no non-reflexive element
/// appears with exponent 2 or more.
pub fn is_chain_monomial(m: &Monomial, poset: &DiagramPoset) -> bool {
    let support: Vec<VarId> = m.support().collect();
    for (k, &a) in support.iter().enumerate() {
        if !poset.is_reflexive(a) && m.exp(a) >= 2 {
            return false;
        }
        for &b in &support[k + 1..] {
            if !poset.comparable(a, b) {
                return false;
            }
        }
    }
    true
}

/// Variable map realizing the loop reversal l -> -l from `src` (window
/// [-N1, N2]) onto `dst` (the flipped spec's table, window [-N2, N1]).
pub fn shift_involution(src: &VariableTable, dst: &VariableTable) -> Vec<VarId> {
    assert_eq!(src.spec.n, dst.spec.n);
    assert_eq!(src.spec.coords, dst.spec.coords);
    assert_eq!((src.lo, src.hi), (-dst.hi, -dst.lo), "windows must be mirror images");
    src.vars
        .iter()
        .map(|v| dst.var(v.kind, -v.loop_index))
        .collect()
}

/// Apply a variable substitution to every monomial of a polynomial.
pub fn substitute(p: &Polynomial, map: &[VarId], order: &MonomialOrder) -> Polynomial {
    let terms = p
        .terms()
        .iter()
        .map(|(c, m)| {
            let exps = m.exps().iter().map(|&(v, e)| (map[v as usize], e)).collect();
            (c.clone(), Monomial::from_exps(exps))
        })
        .collect();
    Polynomial::from_terms(terms, order)
}
