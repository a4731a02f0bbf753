//! Sparse multivariate polynomials over exact rationals with pluggable
//! graded monomial orders.
//!
//! Monomials are sparse exponent vectors; polynomials are term lists kept
//! strictly decreasing in the active order. All arithmetic is exact.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num::{One, Signed, Zero};

use crate::exactnum::Rational;

/// Opaque variable index into a variable table.
pub type VarId = u32;

/// Sparse exponent vector, sorted by variable id, no zero exponents stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<(VarId, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(v: VarId) -> Self {
        Monomial { exps: vec![(v, 1)] }
    }

    pub fn from_exps(mut exps: Vec<(VarId, u32)>) -> Self {
        exps.retain(|&(_, e)| e > 0);
        exps.sort_by_key(|&(v, _)| v);
        for w in exps.windows(2) {
            assert!(w[0].0 != w[1].0, "duplicate variable in monomial");
        }
        Monomial { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    pub fn exp(&self, v: VarId) -> u32 {
        self.exps
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn exps(&self) -> &[(VarId, u32)] {
        &self.exps
    }

    pub fn support(&self) -> impl Iterator<Item = VarId> + '_ {
        self.exps.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { exps: merge(&self.exps, &other.exps, |a, b| a.checked_add(b).expect("exponent overflow")) }
    }

    /// Componentwise maximum.
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial { exps: merge(&self.exps, &other.exps, |a, b| a.max(b)) }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().all(|&(v, e)| other.exp(v) >= e)
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().all(|&(v, _)| other.exp(v) == 0)
    }

    /// self / other; panics unless `other.divides(self)`.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        assert!(other.divides(self), "monomial not divisible");
        let exps = self
            .exps
            .iter()
            .map(|&(v, e)| (v, e - other.exp(v)))
            .filter(|&(_, e)| e > 0)
            .collect();
        Monomial { exps }
    }
}

fn merge(a: &[(VarId, u32)], b: &[(VarId, u32)], f: impl Fn(u32, u32) -> u32) -> Vec<(VarId, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let va = a.get(i).map(|&(v, _)| v).unwrap_or(VarId::MAX);
        let vb = b.get(j).map(|&(v, _)| v).unwrap_or(VarId::MAX);
        match va.cmp(&vb) {
            Ordering::Less => {
                let e = f(a[i].1, 0);
                if e > 0 {
                    out.push((va, e));
                }
                i += 1;
            }
            Ordering::Greater => {
                let e = f(0, b[j].1);
                if e > 0 {
                    out.push((vb, e));
                }
                j += 1;
            }
            Ordering::Equal => {
                let e = f(a[i].1, b[j].1);
                if e > 0 {
                    out.push((va, e));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Tie-break convention applied after total degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tiebreak {
    /// More of a higher-ranked variable makes the monomial greater.
    Lex,
    /// More of a lower-ranked variable makes the monomial smaller.
    RevLex,
}

/// Graded order with an explicit variable significance ranking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    /// rank[v] = significance of variable v; larger is more significant.
    rank: Vec<u32>,
    tiebreak: Tiebreak,
}

impl MonomialOrder {
    /// `ranking` lists the variables from least to most significant.
    pub fn from_ranking(ranking: &[VarId], nvars: usize, tiebreak: Tiebreak) -> Self {
        assert_eq!(ranking.len(), nvars, "ranking must mention every variable");
        let mut rank = vec![u32::MAX; nvars];
        for (i, &v) in ranking.iter().enumerate() {
            assert!(rank[v as usize] == u32::MAX, "duplicate variable in ranking");
            rank[v as usize] = i as u32;
        }
        MonomialOrder { rank, tiebreak }
    }

    /// Graded lex with variable 0 least significant.
    pub fn deglex(nvars: usize) -> Self {
        let ranking: Vec<VarId> = (0..nvars as u32).collect();
        Self::from_ranking(&ranking, nvars, Tiebreak::Lex)
    }

    pub fn nvars(&self) -> usize {
        self.rank.len()
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match a.degree().cmp(&b.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        // exponents sorted by significance rank
        let key = |m: &Monomial| {
            let mut v: Vec<(u32, u32)> =
                m.exps().iter().map(|&(var, e)| (self.rank[var as usize], e)).collect();
            v.sort_unstable_by_key(|&(r, _)| r);
            v
        };
        let ka = key(a);
        let kb = key(b);
        match self.tiebreak {
            Tiebreak::Lex => {
                // most significant differing variable; more of it = greater
                let (mut i, mut j) = (ka.len(), kb.len());
                loop {
                    let ra = if i > 0 { ka[i - 1].0 as i64 } else { -1 };
                    let rb = if j > 0 { kb[j - 1].0 as i64 } else { -1 };
                    if ra < 0 && rb < 0 {
                        return Ordering::Equal;
                    }
                    if ra > rb {
                        return Ordering::Greater;
                    }
                    if rb > ra {
                        return Ordering::Less;
                    }
                    match ka[i - 1].1.cmp(&kb[j - 1].1) {
                        Ordering::Equal => {
                            i -= 1;
                            j -= 1;
                        }
                        o => return o,
                    }
                }
            }
            Tiebreak::RevLex => {
                // least significant differing variable; more of it = smaller
                let (mut i, mut j) = (0, 0);
                loop {
                    let ra = ka.get(i).map(|&(r, _)| r as i64).unwrap_or(i64::MAX);
                    let rb = kb.get(j).map(|&(r, _)| r as i64).unwrap_or(i64::MAX);
                    if ra == i64::MAX && rb == i64::MAX {
                        return Ordering::Equal;
                    }
                    if ra < rb {
                        return Ordering::Less;
                    }
                    if rb < ra {
                        return Ordering::Greater;
                    }
                    match ka[i].1.cmp(&kb[j].1) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        o => return o.reverse(),
                    }
                }
            }
        }
    }
}

/// Term list, strictly decreasing in the active order, no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    terms: Vec<(Rational, Monomial)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial { terms: vec![(c, Monomial::one())] }
        }
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial { terms: vec![(c, m)] }
        }
    }

    pub fn from_terms(terms: Vec<(Rational, Monomial)>, order: &MonomialOrder) -> Self {
        let mut p = Polynomial { terms };
        p.normalize(order);
        p
    }

    fn normalize(&mut self, order: &MonomialOrder) {
        self.terms.sort_by(|a, b| order.compare(&b.1, &a.1));
        let mut out: Vec<(Rational, Monomial)> = Vec::with_capacity(self.terms.len());
        for (c, m) in self.terms.drain(..) {
            if let Some(last) = out.last_mut() {
                if last.1 == m {
                    last.0 += c;
                    continue;
                }
            }
            out.push((c, m));
        }
        out.retain(|(c, _)| !c.is_zero());
        self.terms = out;
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Rational, Monomial)] {
        &self.terms
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(_, m)| m.degree()).max()
    }

    /// Leading (coefficient, monomial); panics on the zero polynomial.
    pub fn leading_term(&self) -> (&Rational, &Monomial) {
        let (c, m) = self.terms.first().expect("leading term of zero polynomial");
        (c, m)
    }

    pub fn leading_monomial(&self) -> &Monomial {
        self.leading_term().1
    }

    pub fn add(&self, other: &Polynomial, order: &MonomialOrder) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            if i == self.terms.len() {
                out.push(other.terms[j].clone());
                j += 1;
            } else if j == other.terms.len() {
                out.push(self.terms[i].clone());
                i += 1;
            } else {
                match order.compare(&self.terms[i].1, &other.terms[j].1) {
                    Ordering::Greater => {
                        out.push(self.terms[i].clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push(other.terms[j].clone());
                        j += 1;
                    }
                    Ordering::Equal => {
                        let c = &self.terms[i].0 + &other.terms[j].0;
                        if !c.is_zero() {
                            out.push((c, self.terms[i].1.clone()));
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
        Polynomial { terms: out }
    }

    pub fn sub(&self, other: &Polynomial, order: &MonomialOrder) -> Polynomial {
        self.add(&other.scale(&-Rational::one()), order)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(a, m)| (a * c, m.clone())).collect() }
    }

    /// Multiply by a single term; order is preserved by multiplicativity.
    pub fn mul_term(&self, c: &Rational, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(a, t)| (a * c, t.mul(m))).collect() }
    }

    pub fn mul(&self, other: &Polynomial, order: &MonomialOrder) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (c, m) in &other.terms {
            acc = acc.add(&self.mul_term(c, m), order);
        }
        acc
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        let (lc, _) = self.leading_term();
        let inv = Rational::one() / lc;
        self.scale(&inv)
    }

    /// Re-sort the term list under a different order.
    pub fn reordered(&self, order: &MonomialOrder) -> Polynomial {
        Polynomial::from_terms(self.terms.clone(), order)
    }

    pub fn coeff_of(&self, m: &Monomial) -> Rational {
        self.terms
            .iter()
            .find(|(_, t)| t == m)
            .map(|(c, _)| c.clone())
            .unwrap_or_else(Rational::zero)
    }
}

/// Render using the given variable names ("v^e*w" style, " + "/" - " joins).
pub fn format_polynomial(p: &Polynomial, names: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (c, m)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        let ac = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        if !ac.is_one() || m.is_one() {
            if ac.denom().is_one() {
                factors.push(ac.numer().to_string());
            } else {
                factors.push(format!("{}/{}", ac.numer(), ac.denom()));
            }
        }
        for &(v, e) in m.exps() {
            if e == 1 {
                factors.push(names[v as usize].clone());
            } else {
                factors.push(format!("{}^{}", names[v as usize], e));
            }
        }
        let _ = write!(out, "{}", factors.join("*"));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "polynomial parse error: {}", self.0)
    }
}

impl std::error::Error for ParseError {}

/// Inverse of [`format_polynomial`].
pub fn parse_polynomial(
    input: &str,
    names: &[String],
    order: &MonomialOrder,
) -> Result<Polynomial, ParseError> {
    let name_of = |tok: &str| -> Result<VarId, ParseError> {
        names
            .iter()
            .position(|n| n == tok)
            .map(|i| i as VarId)
            .ok_or_else(|| ParseError(format!("unknown variable `{tok}`")))
    };
    let s = input.trim();
    if s == "0" {
        return Ok(Polynomial::zero());
    }
    let mut terms: Vec<(Rational, Monomial)> = Vec::new();
    // split on " + " / " - ", keeping a possible leading sign
    let mut rest = s;
    let mut sign = Rational::one();
    if let Some(r) = rest.strip_prefix('-') {
        sign = -sign;
        rest = r.trim_start();
    }
    loop {
        let (chunk, next) = match (rest.find(" + "), rest.find(" - ")) {
            (Some(p), Some(q)) if p < q => (&rest[..p], Some((&rest[p + 3..], false))),
            (Some(_), Some(q)) => (&rest[..q], Some((&rest[q + 3..], true))),
            (Some(p), None) => (&rest[..p], Some((&rest[p + 3..], false))),
            (None, Some(q)) => (&rest[..q], Some((&rest[q + 3..], true))),
            (None, None) => (rest, None),
        };
        let mut coeff = sign.clone();
        let mut exps: Vec<(VarId, u32)> = Vec::new();
        for factor in chunk.split('*') {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(ParseError(format!("empty factor in `{chunk}`")));
            }
            let first = factor.chars().next().unwrap();
            if first.is_ascii_digit() || first == '-' {
                let r: Rational = factor
                    .parse()
                    .map_err(|_| ParseError(format!("bad coefficient `{factor}`")))?;
                coeff *= r;
            } else {
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => (
                        n,
                        e.parse::<u32>()
                            .map_err(|_| ParseError(format!("bad exponent `{e}`")))?,
                    ),
                    None => (factor, 1),
                };
                let v = name_of(name)?;
                match exps.iter_mut().find(|(w, _)| *w == v) {
                    Some((_, e0)) => *e0 += exp,
                    None => exps.push((v, exp)),
                }
            }
        }
        terms.push((coeff, Monomial::from_exps(exps)));
        match next {
            None => break,
            Some((r, neg)) => {
                rest = r;
                sign = if neg { -Rational::one() } else { Rational::one() };
            }
        }
    }
    Ok(Polynomial::from_terms(terms, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;
    use std::cmp::Ordering::*;

    fn m(exps: &[(u32, u32)]) -> Monomial {
        Monomial::from_exps(exps.to_vec())
    }

    #[test]
    fn degree_dominates() {
        // ranking: y=0 (low), x=1 (high)
        let ord = MonomialOrder::from_ranking(&[0, 1], 2, Tiebreak::Lex);
        let a = m(&[(1, 2)]); // x^2
        let b = m(&[(1, 2), (0, 1)]); // x^2 y
        assert_eq!(ord.compare(&a, &b), Less);
        assert_eq!(ord.compare(&a, &a), Equal);
    }

    #[test]
    fn lex_tiebreak() {
        // x more significant than y, lex convention: x^3 > x^2 y
        let ord = MonomialOrder::from_ranking(&[0, 1], 2, Tiebreak::Lex);
        let x3 = m(&[(1, 3)]);
        let x2y = m(&[(1, 2), (0, 1)]);
        assert_eq!(ord.compare(&x3, &x2y), Greater);
    }

    #[test]
    fn revlex_tiebreak() {
        // same pair under revlex: x^3 has none of the low variable y,
        // x^2 y has one, so x^3 is still greater.
        let ord = MonomialOrder::from_ranking(&[0, 1], 2, Tiebreak::RevLex);
        let x3 = m(&[(1, 3)]);
        let x2y = m(&[(1, 2), (0, 1)]);
        assert_eq!(ord.compare(&x3, &x2y), Greater);
        // revlex differs from lex on x*z vs y^2 with ranking z < y < x:
        // lex: xz > y^2 (x wins); revlex: xz contains the low z, so xz < y^2.
        let ord3 = MonomialOrder::from_ranking(&[0, 1, 2], 3, Tiebreak::RevLex);
        let xz = m(&[(2, 1), (0, 1)]);
        let y2 = m(&[(1, 2)]);
        assert_eq!(ord3.compare(&xz, &y2), Less);
        let lex3 = MonomialOrder::from_ranking(&[0, 1, 2], 3, Tiebreak::Lex);
        assert_eq!(lex3.compare(&xz, &y2), Greater);
    }

    #[test]
    fn leading_terms() {
        let ord = MonomialOrder::from_ranking(&[0, 1], 2, Tiebreak::Lex);
        let names = vec!["y".to_string(), "x".to_string()];
        let f1 = parse_polynomial("x^3 - 2*x*y", &names, &ord).unwrap();
        let f2 = parse_polynomial("x^2*y - 2*y^2 + x", &names, &ord).unwrap();
        assert_eq!(f1.leading_term().1, &m(&[(1, 3)]));
        assert_eq!(f2.leading_term().1, &m(&[(1, 2), (0, 1)]));
        let c7 = Polynomial::constant(int(7));
        assert_eq!(c7.leading_term(), (&int(7), &Monomial::one()));
    }

    #[test]
    fn lcm_divides_quotient() {
        let x3 = m(&[(1, 3)]);
        let x2y = m(&[(1, 2), (0, 1)]);
        assert_eq!(x3.lcm(&x2y), m(&[(1, 3), (0, 1)]));
        let x2 = m(&[(1, 2)]);
        assert!(x2.divides(&x2y));
        assert_eq!(x2y.quotient(&x2), m(&[(0, 1)]));
        assert_eq!(x2y.lcm(&x2y), x2y);
    }

    #[test]
    fn arithmetic_basics() {
        let ord = MonomialOrder::from_ranking(&[0, 1], 2, Tiebreak::Lex);
        let names = vec!["y".to_string(), "x".to_string()];
        let f1 = parse_polynomial("x^3 - 2*x*y", &names, &ord).unwrap();
        let f2 = parse_polynomial("x^2*y - 2*y^2 + x", &names, &ord).unwrap();
        // x*f2 - y*f1 = x^2
        let lhs = f2
            .mul_term(&int(1), &Monomial::var(1))
            .sub(&f1.mul_term(&int(1), &Monomial::var(0)), &ord);
        assert_eq!(lhs, parse_polynomial("x^2", &names, &ord).unwrap());
        // f + (-1) f = 0
        assert!(f1.sub(&f1, &ord).is_zero());
        // (1+t)(1-t) = 1-t^2 in one variable
        let ord1 = MonomialOrder::deglex(1);
        let names1 = vec!["t".to_string()];
        let a = parse_polynomial("1 + t", &names1, &ord1).unwrap();
        let b = parse_polynomial("1 - t", &names1, &ord1).unwrap();
        assert_eq!(a.mul(&b, &ord1), parse_polynomial("1 - t^2", &names1, &ord1).unwrap());
    }

    #[test]
    fn print_parse_round_trip() {
        let ord = MonomialOrder::from_ranking(&[0, 1], 2, Tiebreak::Lex);
        let names = vec!["g1[0]".to_string(), "f1[0]".to_string()];
        let p = parse_polynomial("g1[0]*f1[0] - 1/2*g1[0]^2 + 3", &names, &ord).unwrap();
        let s = format_polynomial(&p, &names);
        let q = parse_polynomial(&s, &names, &ord).unwrap();
        assert_eq!(p, q);
    }
}
