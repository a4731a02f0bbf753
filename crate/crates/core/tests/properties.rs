//! Property tests for the polynomial ring, monomial orders, and reduction.

use std::cmp::Ordering;

use proptest::prelude::*;
use quadriq::exactnum::rat;
use quadriq::groebner::{reduce, GeneratorSet};
use quadriq::polyring::{
    format_polynomial, parse_polynomial, Monomial, MonomialOrder, Polynomial, Tiebreak,
};

const NVARS: usize = 4;

fn arb_monomial() -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0u32..5, NVARS).prop_map(|exps| {
        Monomial::from_exps(exps.into_iter().enumerate().map(|(v, e)| (v as u32, e)).collect())
    })
}

fn arb_order() -> impl Strategy<Value = MonomialOrder> {
    let perm = Just((0..NVARS as u32).collect::<Vec<_>>()).prop_shuffle();
    (perm, prop_oneof![Just(Tiebreak::Lex), Just(Tiebreak::RevLex)])
        .prop_map(|(ranking, tie)| MonomialOrder::from_ranking(&ranking, NVARS, tie))
}

fn arb_polynomial() -> impl Strategy<Value = Vec<(i64, Monomial)>> {
    proptest::collection::vec((-9i64..=9, arb_monomial()), 0..6)
}

fn build(terms: &[(i64, Monomial)], order: &MonomialOrder) -> Polynomial {
    Polynomial::from_terms(
        terms.iter().map(|(c, m)| (rat(*c, 1), m.clone())).collect(),
        order,
    )
}

proptest! {
    // A monomial order is a total order compatible with multiplication and
    // bounded below by 1.
    #[test]
    fn order_total_and_antisymmetric(a in arb_monomial(), b in arb_monomial(), o in arb_order()) {
        let ab = o.compare(&a, &b);
        let ba = o.compare(&b, &a);
        prop_assert_eq!(ab, ba.reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
    }

    #[test]
    fn order_transitive(a in arb_monomial(), b in arb_monomial(), c in arb_monomial(), o in arb_order()) {
        let mut v = [a, b, c];
        v.sort_by(|x, y| o.compare(x, y));
        prop_assert!(o.compare(&v[0], &v[1]) != Ordering::Greater);
        prop_assert!(o.compare(&v[1], &v[2]) != Ordering::Greater);
        prop_assert!(o.compare(&v[0], &v[2]) != Ordering::Greater);
    }

    #[test]
    fn order_respects_multiplication(a in arb_monomial(), b in arb_monomial(), m in arb_monomial(), o in arb_order()) {
        let ab = o.compare(&a, &b);
        prop_assert_eq!(o.compare(&a.mul(&m), &b.mul(&m)), ab);
    }

    #[test]
    fn order_one_is_minimal(a in arb_monomial(), o in arb_order()) {
        prop_assert!(o.compare(&Monomial::one(), &a) != Ordering::Greater);
    }

    #[test]
    fn monomial_lcm_divides(a in arb_monomial(), b in arb_monomial()) {
        let l = a.lcm(&b);
        prop_assert!(a.divides(&l));
        prop_assert!(b.divides(&l));
        prop_assert_eq!(a.coprime(&b), l.degree() == a.degree() + b.degree());
    }

    // Ring axioms on the sparse polynomial representation.
    #[test]
    fn add_commutes(f in arb_polynomial(), g in arb_polynomial(), o in arb_order()) {
        let (f, g) = (build(&f, &o), build(&g, &o));
        prop_assert_eq!(f.add(&g, &o), g.add(&f, &o));
    }

    #[test]
    fn mul_commutes(f in arb_polynomial(), g in arb_polynomial(), o in arb_order()) {
        let (f, g) = (build(&f, &o), build(&g, &o));
        prop_assert_eq!(f.mul(&g, &o), g.mul(&f, &o));
    }

    #[test]
    fn mul_associates(f in arb_polynomial(), g in arb_polynomial(), h in arb_polynomial(), o in arb_order()) {
        let (f, g, h) = (build(&f, &o), build(&g, &o), build(&h, &o));
        prop_assert_eq!(f.mul(&g, &o).mul(&h, &o), f.mul(&g.mul(&h, &o), &o));
    }

    #[test]
    fn mul_distributes(f in arb_polynomial(), g in arb_polynomial(), h in arb_polynomial(), o in arb_order()) {
        let (f, g, h) = (build(&f, &o), build(&g, &o), build(&h, &o));
        prop_assert_eq!(
            f.mul(&g.add(&h, &o), &o),
            f.mul(&g, &o).add(&f.mul(&h, &o), &o)
        );
    }

    #[test]
    fn sub_self_is_zero(f in arb_polynomial(), o in arb_order()) {
        let f = build(&f, &o);
        prop_assert!(f.sub(&f, &o).is_zero());
    }

    // Printing then parsing recovers the polynomial exactly.
    #[test]
    fn parse_print_roundtrip(f in arb_polynomial(), o in arb_order()) {
        let f = build(&f, &o);
        let names: Vec<String> = (0..NVARS).map(|i| format!("x{i}")).collect();
        let printed = format_polynomial(&f, &names);
        let reparsed = parse_polynomial(&printed, &names, &o).unwrap();
        prop_assert_eq!(reparsed, f);
    }

    // The remainder of division is fully reduced: reducing it again changes
    // nothing, and no leading monomial of the divisors divides any of its
    // monomials.
    #[test]
    fn reduce_is_idempotent(
        f in arb_polynomial(),
        g in arb_polynomial(),
        h in arb_polynomial(),
        o in arb_order(),
    ) {
        let f = build(&f, &o);
        let divisors: Vec<Polynomial> = [g, h]
            .iter()
            .map(|t| build(t, &o))
            .filter(|p| !p.is_zero())
            .collect();
        prop_assume!(!divisors.is_empty());
        let basis = GeneratorSet::new(divisors, o.clone());
        let r = reduce(&f, &basis);
        prop_assert_eq!(reduce(&r, &basis), r.clone());
        for (_, m) in r.terms() {
            for p in basis.polys() {
                prop_assert!(!p.leading_monomial().divides(m));
            }
        }
    }
}
