//! S-polynomials, normal-form reduction, Buchberger's algorithm, and reduced
//! Groebner bases over the rationals.
//!
//! Reduction is deterministic: when several basis leading monomials divide
//! the monomial under reduction, the divisor with the greatest list index is
//! chosen. Buchberger uses the normal pair-selection strategy (smallest lcm
//! first) with the coprime-leading-term skip, and finishes with an
//! inter-reduction pass so the output is the unique reduced basis.

use std::cmp::Ordering;

use num::One;

use crate::exactnum::Rational;
use crate::polyring::{Monomial, MonomialOrder, Polynomial};

/// Ordered list of nonzero monic generators together with the active order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    polys: Vec<Polynomial>,
    order: MonomialOrder,
}

impl GeneratorSet {
    /// Normalizes every generator to leading coefficient 1 and drops zeros.
    pub fn new(polys: Vec<Polynomial>, order: MonomialOrder) -> Self {
        let polys = polys
            .into_iter()
            .filter(|p| !p.is_zero())
            .map(|p| p.reordered(&order).monic())
            .collect();
        GeneratorSet { polys, order }
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }
}

/// S(f,g) = (L/T(g))·g − (L/T(f))·f with L = lcm(T(f), T(g)).
///
/// Both inputs must be monic, so the lcm terms cancel exactly.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &MonomialOrder) -> Polynomial {
    let tf = f.leading_monomial();
    let tg = g.leading_monomial();
    let l = tf.lcm(tg);
    let one = Rational::one();
    g.mul_term(&one, &l.quotient(tg)).sub(&f.mul_term(&one, &l.quotient(tf)), order)
}

/// Normal form of `f` against the generator set.
///
/// No monomial of the result is divisible by any leading monomial of the
/// basis, and `f - result` lies in the ideal generated by the basis.
pub fn reduce(f: &Polynomial, basis: &GeneratorSet) -> Polynomial {
    reduce_with_cofactors(f, basis).0
}

/// Normal form plus the cofactors q_i with f = Σ q_i g_i + remainder.
pub fn reduce_with_cofactors(f: &Polynomial, basis: &GeneratorSet) -> (Polynomial, Vec<Polynomial>) {
    let order = &basis.order;
    let mut work = f.reordered(order);
    let mut remainder = Polynomial::zero();
    let mut cofactors = vec![Polynomial::zero(); basis.polys.len()];
    while !work.is_zero() {
        let (lc, lm) = work.leading_term();
        let lc = lc.clone();
        let lm = lm.clone();
        // divisor with the greatest list index wins ties
        let divisor = basis
            .polys
            .iter()
            .enumerate()
            .rev()
            .find(|(_, g)| g.leading_monomial().divides(&lm));
        match divisor {
            Some((i, g)) => {
                let q = lm.quotient(g.leading_monomial());
                cofactors[i] = cofactors[i].add(&Polynomial::term(lc.clone(), q.clone()), order);
                work = work.sub(&g.mul_term(&lc, &q), order);
            }
            None => {
                let t = Polynomial::term(lc.clone(), lm.clone());
                remainder = remainder.add(&t, order);
                work = work.sub(&t, order);
            }
        }
    }
    (remainder, cofactors)
}

/// Pair that failed the zero-reduction test, with its nonzero normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub i: usize,
    pub j: usize,
    pub normal_form: Polynomial,
}

/// One-round S-polynomial test: true iff every S-polynomial (after the
/// coprime-leading-term skip) reduces to zero against the basis itself.
pub fn is_groebner(basis: &GeneratorSet) -> Result<(), Witness> {
    let order = &basis.order;
    for i in 0..basis.polys.len() {
        for j in i + 1..basis.polys.len() {
            let (f, g) = (&basis.polys[i], &basis.polys[j]);
            if f.leading_monomial().coprime(g.leading_monomial()) {
                continue;
            }
            let s = s_polynomial(f, g, order);
            let nf = reduce(&s, basis);
            if !nf.is_zero() {
                return Err(Witness { i, j, normal_form: nf });
            }
        }
    }
    Ok(())
}

/// Resource cap for Buchberger completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of S-polynomial reductions performed.
    pub max_pairs: usize,
    /// Maximum basis size allowed during completion.
    pub max_basis: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_pairs: 100_000, max_basis: 10_000 }
    }
}

/// Completed reduced basis, or the partial state when the budget ran out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuchbergerOutcome {
    Complete(GroebnerBasis),
    BudgetExceeded { partial: GeneratorSet, pairs_processed: usize },
}

impl BuchbergerOutcome {
    pub fn unwrap_complete(self) -> GroebnerBasis {
        match self {
            BuchbergerOutcome::Complete(g) => g,
            BuchbergerOutcome::BudgetExceeded { pairs_processed, .. } => {
                panic!("budget exceeded after {pairs_processed} pairs")
            }
        }
    }
}

/// A generator set whose S-polynomials all reduce to zero; `reduced` marks
/// the unique inter-reduced normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    basis: GeneratorSet,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn generators(&self) -> &GeneratorSet {
        &self.basis
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.polys.iter().map(|p| p.leading_monomial().clone()).collect()
    }
}

/// Buchberger completion with the normal pair strategy and coprime skip,
/// followed by inter-reduction to the unique reduced basis.
pub fn buchberger(seed: &GeneratorSet, budget: Budget) -> BuchbergerOutcome {
    assert!(!seed.is_empty(), "empty seed");
    let order = seed.order.clone();
    let mut basis = seed.polys.clone();
    let mut pairs: Vec<(usize, usize)> =
        (0..basis.len()).flat_map(|i| (i + 1..basis.len()).map(move |j| (i, j))).collect();
    let mut pairs_processed = 0usize;
    while let Some(k) = select_pair(&pairs, &basis, &order) {
        let (i, j) = pairs.swap_remove(k);
        let (f, g) = (&basis[i], &basis[j]);
        if f.leading_monomial().coprime(g.leading_monomial()) {
            continue;
        }
        if pairs_processed >= budget.max_pairs || basis.len() > budget.max_basis {
            return BuchbergerOutcome::BudgetExceeded {
                partial: GeneratorSet { polys: basis, order },
                pairs_processed,
            };
        }
        pairs_processed += 1;
        let s = s_polynomial(f, g, &order);
        let current = GeneratorSet { polys: basis.clone(), order: order.clone() };
        let nf = reduce(&s, &current);
        if !nf.is_zero() {
            let new_idx = basis.len();
            basis.push(nf.monic());
            pairs.extend((0..new_idx).map(|i| (i, new_idx)));
        }
    }
    let reduced = inter_reduce(basis, &order);
    BuchbergerOutcome::Complete(GroebnerBasis {
        basis: GeneratorSet { polys: reduced, order },
        reduced: true,
    })
}

/// Normal strategy: smallest pair lcm (degree first, then the order).
fn select_pair(pairs: &[(usize, usize)], basis: &[Polynomial], order: &MonomialOrder) -> Option<usize> {
    let lcm_of = |&(i, j): &(usize, usize)| basis[i].leading_monomial().lcm(basis[j].leading_monomial());
    pairs.iter().enumerate().min_by(|(_, a), (_, b)| {
        let la = lcm_of(a);
        let lb = lcm_of(b);
        match la.degree().cmp(&lb.degree()) {
            Ordering::Equal => order.compare(&la, &lb),
            o => o,
        }
    }).map(|(k, _)| k)
}

/// Minimize (drop redundant leading monomials) then tail-reduce every
/// element against the rest until stable; output sorted by leading monomial.
fn inter_reduce(mut basis: Vec<Polynomial>, order: &MonomialOrder) -> Vec<Polynomial> {
    // drop elements whose leading monomial is divisible by another's
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (li, lj) = (basis[i].leading_monomial(), basis[j].leading_monomial());
            if lj.divides(li) && (li != lj || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    basis = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect();
    loop {
        let mut changed = false;
        for i in 0..basis.len() {
            let others: Vec<Polynomial> = basis
                .iter()
                .enumerate()
                .filter_map(|(j, p)| (j != i).then(|| p.clone()))
                .collect();
            let set = GeneratorSet { polys: others, order: order.clone() };
            let nf = reduce(&basis[i], &set);
            assert!(!nf.is_zero(), "minimized basis element reduced to zero");
            let nf = nf.monic();
            if nf != basis[i] {
                basis[i] = nf;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    basis.sort_by(|a, b| order.compare(a.leading_monomial(), b.leading_monomial()));
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;
    use crate::polyring::{parse_polynomial, Tiebreak};

    fn setting() -> (MonomialOrder, Vec<String>) {
        // y ranked below x, lex tie-break
        let ord = MonomialOrder::from_ranking(&[0, 1], 2, Tiebreak::Lex);
        (ord, vec!["y".to_string(), "x".to_string()])
    }

    fn pair() -> (GeneratorSet, MonomialOrder, Vec<String>) {
        let (ord, names) = setting();
        let f1 = parse_polynomial("x^3 - 2*x*y", &names, &ord).unwrap();
        let f2 = parse_polynomial("x^2*y - 2*y^2 + x", &names, &ord).unwrap();
        (GeneratorSet::new(vec![f1, f2], ord.clone()), ord, names)
    }

    #[test]
    fn s_polynomial_of_cubic_pair_is_x_squared() {
        let (basis, ord, names) = pair();
        let s = s_polynomial(&basis.polys()[0], &basis.polys()[1], &ord);
        assert_eq!(s, parse_polynomial("x^2", &names, &ord).unwrap());
    }

    #[test]
    fn s_polynomial_self_is_zero() {
        let (basis, ord, _) = pair();
        assert!(s_polynomial(&basis.polys()[0], &basis.polys()[0], &ord).is_zero());
    }

    #[test]
    fn s_polynomial_cancels_lcm_term() {
        let (ord, names) = setting();
        let f = parse_polynomial("x^2", &names, &ord).unwrap();
        let g = parse_polynomial("y^2", &names, &ord).unwrap();
        let s = s_polynomial(&f, &g, &ord);
        // x^2 and y^2 are coprime: S = y^2*x^2/x^2... both terms are x^2y^2 and cancel
        assert!(s.is_zero());
        let g2 = parse_polynomial("y^2 + x", &names, &ord).unwrap();
        let s2 = s_polynomial(&f, &g2, &ord);
        assert!(!s2.is_zero());
        let lcm = f.leading_monomial().lcm(g2.leading_monomial());
        assert!(ord.compare(s2.leading_monomial(), &lcm) == std::cmp::Ordering::Less);
    }

    #[test]
    fn reduce_leaves_x_squared_untouched() {
        let (basis, ord, names) = pair();
        let x2 = parse_polynomial("x^2", &names, &ord).unwrap();
        assert_eq!(reduce(&x2, &basis), x2);
    }

    #[test]
    fn generator_reduces_to_zero() {
        let (basis, _, _) = pair();
        let singleton = GeneratorSet::new(vec![basis.polys()[0].clone()], basis.order().clone());
        assert!(reduce(&basis.polys()[0], &singleton).is_zero());
    }

    #[test]
    fn cofactor_identity() {
        let (basis, ord, names) = pair();
        let f = parse_polynomial("x^4*y + x*y^3 - 3*x + 1", &names, &ord).unwrap();
        let (rem, cof) = reduce_with_cofactors(&f, &basis);
        let mut recon = rem.clone();
        for (q, g) in cof.iter().zip(basis.polys()) {
            recon = recon.add(&q.mul(g, &ord), &ord);
        }
        assert_eq!(recon, f.reordered(&ord));
        // remainder monomials avoid all leading monomials
        for (_, m) in rem.terms() {
            for g in basis.polys() {
                assert!(!g.leading_monomial().divides(m));
            }
        }
    }

    #[test]
    fn pair_is_not_groebner_with_witness() {
        let (basis, _, names) = pair();
        let w = is_groebner(&basis).unwrap_err();
        assert_eq!((w.i, w.j), (0, 1));
        let ord = basis.order().clone();
        assert_eq!(w.normal_form, parse_polynomial("x^2", &names, &ord).unwrap());
    }

    #[test]
    fn singleton_is_groebner() {
        let (basis, _, _) = pair();
        let singleton = GeneratorSet::new(vec![basis.polys()[0].clone()], basis.order().clone());
        assert!(is_groebner(&singleton).is_ok());
    }

    #[test]
    fn sum_of_squares_singleton_is_its_own_basis() {
        let ord = MonomialOrder::deglex(3);
        let names: Vec<String> = ["a1", "a2", "a3"].iter().map(|s| s.to_string()).collect();
        let f = parse_polynomial("a1^2 + a2^2 + a3^2", &names, &ord).unwrap();
        let seed = GeneratorSet::new(vec![f.clone()], ord);
        let gb = buchberger(&seed, Budget::default()).unwrap_complete();
        assert_eq!(gb.generators().polys(), seed.polys());
    }

    #[test]
    fn buchberger_closes_the_cubic_pair() {
        let (basis, ord, names) = pair();
        let gb = buchberger(&basis, Budget::default()).unwrap_complete();
        assert!(gb.generators().len() > basis.len());
        assert!(is_groebner(gb.generators()).is_ok());
        // x^2 now reduces to zero as a member of the ideal
        let x2 = parse_polynomial("x^2", &names, &ord).unwrap();
        assert!(reduce(&x2, gb.generators()).is_zero());
    }

    #[test]
    fn reduced_basis_is_shuffle_invariant() {
        let (basis, ord, _) = pair();
        let shuffled =
            GeneratorSet::new(vec![basis.polys()[1].clone(), basis.polys()[0].clone()], ord);
        let g1 = buchberger(&basis, Budget::default()).unwrap_complete();
        let g2 = buchberger(&shuffled, Budget::default()).unwrap_complete();
        assert_eq!(g1.generators().polys(), g2.generators().polys());
    }

    #[test]
    fn reduce_is_idempotent() {
        let (basis, ord, names) = pair();
        let f = parse_polynomial("x^5 - x*y^2 + 7*y", &names, &ord).unwrap();
        let r = reduce(&f, &basis);
        assert_eq!(reduce(&r, &basis), r);
    }

    #[test]
    fn budget_exceeded_is_reported() {
        let (basis, _, _) = pair();
        let out = buchberger(&basis, Budget { max_pairs: 0, max_basis: 10_000 });
        assert!(matches!(out, BuchbergerOutcome::BudgetExceeded { .. }));
    }

    #[test]
    fn normal_forms_multiplicative_modulo_ideal() {
        let (basis, ord, names) = pair();
        let gb = buchberger(&basis, Budget::default()).unwrap_complete();
        let f = parse_polynomial("x^3 + y", &names, &ord).unwrap();
        let g = parse_polynomial("x*y - 2", &names, &ord).unwrap();
        let lhs = reduce(&f.mul(&g, &ord), gb.generators());
        let rhs = reduce(
            &reduce(&f, gb.generators()).mul(&reduce(&g, gb.generators()), &ord),
            gb.generators(),
        );
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn greater_index_divisor_wins() {
        let (ord, names) = setting();
        // two generators with the same leading monomial x^2 but different tails
        let g0 = parse_polynomial("x^2 + y", &names, &ord).unwrap();
        let g1 = parse_polynomial("x^2 + x", &names, &ord).unwrap();
        let basis = GeneratorSet::new(vec![g0, g1], ord.clone());
        let f = parse_polynomial("x^2", &names, &ord).unwrap();
        let (_, cof) = reduce_with_cofactors(&f, &basis);
        assert!(cof[0].is_zero());
        assert_eq!(cof[1], Polynomial::constant(int(1)));
    }
}
