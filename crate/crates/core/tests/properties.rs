use delta_springer::actions::{dunkl, s_line, s_skein, x_last_closed_form, Generator, HeckeParams};
use delta_springer::diagrams::{circle_diagram, cup_to_weight, intersection_class, parse_diagram, render, weight_to_cup, Format};
use delta_springer::homology::l_expand;
use delta_springer::number::{format_rational, parse_rational, rat_frac};
use delta_springer::tensor::{casimir, hecke_tensor, TensorBasisElt, TensorVector};
use delta_springer::{DeltaWeight, Mode, ShapeParams, Subset, Symbol};
use num_bigint::BigInt;
use proptest::prelude::*;

/// A Δ-weight: arbitrary left part, right part `∧^a ∨^b`.
fn weight() -> impl Strategy<Value = DeltaWeight> {
    (1usize..=12).prop_flat_map(|n| (Just(n), 0..=n)).prop_flat_map(|(n, m)| {
        (prop::collection::vec(any::<bool>(), n - m), 0..=m).prop_map(move |(left, ups)| {
            let mut symbols: Vec<Symbol> = left.into_iter().map(|b| if b { Symbol::Down } else { Symbol::Up }).collect();
            symbols.extend((0..m).map(|j| if j < ups { Symbol::Up } else { Symbol::Down }));
            DeltaWeight::new(symbols, m).unwrap()
        })
    })
}

fn tensor_vector(len: usize, m: usize) -> impl Strategy<Value = TensorVector> {
    prop::collection::vec((0u64..1 << len, 0..=m, -3i64..=3), 0..6).prop_map(move |terms| {
        let mut v = TensorVector::zero(len, m);
        for (eps, i, c) in terms {
            v.add_term(TensorBasisElt { eps, i }, &BigInt::from(c));
        }
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn weight_to_cup_round_trips(w in weight()) {
        let c = weight_to_cup(&w);
        prop_assert_eq!(weight_to_cup(&cup_to_weight(&c)), c.clone());
        prop_assert!(c.cup_count() <= w.k());
        prop_assert_eq!(DeltaWeight::parse(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn l_expansion_shape(w in weight()) {
        let c = w.cup_diagram();
        let v = l_expand(&w);
        prop_assert_eq!(v.len(), 1 << c.left_cups().len());
        prop_assert_eq!(v.degree(), Some(c.cup_count()));
        prop_assert!(v.terms().all(|(_, x)| *x == rat_frac(1, 1) || *x == rat_frac(-1, 1)));
    }

    #[test]
    fn skein_matches_line_permutation(w in weight()) {
        let s = w.n() - w.m();
        let v = l_expand(&w);
        for i in 1..s {
            prop_assert_eq!(s_skein(i, &w).unwrap().expand(s), s_line(i, &v).unwrap());
            prop_assert_eq!(s_line(i, &s_line(i, &v).unwrap()).unwrap(), v.clone());
        }
    }

    #[test]
    fn closed_form_matches_dunkl(w in weight()) {
        let s = w.n() - w.m();
        prop_assume!(s > 0);
        let p = ShapeParams::with_mode(w.n(), w.k(), w.m(), Mode::AnyK).unwrap();
        let xi = HeckeParams::springer(p);
        prop_assert_eq!(x_last_closed_form(&w).unwrap().expand(s), dunkl(s, &xi, &l_expand(&w)).unwrap());
    }

    #[test]
    fn renders_round_trip(w in weight()) {
        let a = w.cup_diagram();
        for f in [Format::Ascii, Format::Tikz, Format::Json] {
            prop_assert_eq!(parse_diagram(&render(&a, f)).unwrap(), a.clone());
        }
    }

    #[test]
    fn intersections_are_symmetric(x in weight(), flips in prop::collection::vec(any::<bool>(), 12)) {
        // a second diagram with the same parameters: flip some left symbols
        let n = x.n();
        let m = x.m();
        let symbols: Vec<Symbol> = x.symbols().iter().enumerate()
            .map(|(j, &s)| if j < n - m && flips[j] { s.flip() } else { s })
            .collect();
        let y = DeltaWeight::new(symbols, m).unwrap();
        let (a, b) = (x.cup_diagram(), y.cup_diagram());
        prop_assert_eq!(intersection_class(&a, &b).unwrap(), intersection_class(&b, &a).unwrap());
        let c = circle_diagram(&a, &b).unwrap();
        // halves at a right vertex may split between two components
        for v in 1..=n {
            let owners = c.components.iter().filter(|k| k.vertices.contains(&v)).count();
            prop_assert!(owners == 1 || (owners == 2 && v > n - m), "vertex {} in {} components", v, owners);
        }
    }

    #[test]
    fn subset_order_is_tuple_order(x in 0u64..1 << 10, y in 0u64..1 << 10) {
        let (a, b) = (Subset::from_bits(x), Subset::from_bits(y));
        prop_assert_eq!(a.cmp(&b), a.elements().cmp(&b.elements()));
    }

    #[test]
    fn rationals_round_trip(p in -1000i64..1000, q in 1i64..1000) {
        let r = rat_frac(p, q);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn casimir_on_two_v_factors_is_an_involution(v in tensor_vector(3, 2), p in 1usize..=3, q in 1usize..=3) {
        prop_assume!(p < q);
        prop_assert_eq!(casimir(p, q, &casimir(p, q, &v).unwrap()).unwrap(), v);
    }

    #[test]
    fn x_generators_commute_on_random_vectors(v in tensor_vector(4, 2), i in 1usize..=4, j in 1usize..=4) {
        let xi = |k, u: &TensorVector| hecke_tensor(Generator::X(k), u).unwrap();
        prop_assert_eq!(xi(i, &xi(j, &v)), xi(j, &xi(i, &v)));
    }
}
