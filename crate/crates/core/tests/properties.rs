use proptest::prelude::*;

use dyckx::genfun::{enumerated_series, solve_genfun};
use dyckx::identities::Triplet;
use dyckx::kernel::{
    canonicalize, is_periodic_word, reduce, relabel_cyclic, rho, MultiplierClass, ReducedElement, SignedSymbol,
};
use dyckx::presentations::{swap_indices, time_reverse};
use dyckx::series::{rat, RationalSeries, SeriesMatrix};
use dyckx::specfile::SpecFile;
use dyckx::zeta::{census_by_rotation, periodic_census, zeta_parts};
use dyckx::{IntMatrix, SubshiftSpec};

fn symbol() -> impl Strategy<Value = SignedSymbol> {
    (any::<bool>(), 0usize..2, 1usize..=2).prop_map(|(minus, class, copy)| {
        if minus {
            SignedSymbol::minus(class, copy)
        } else {
            SignedSymbol::plus(class, copy)
        }
    })
}

fn word(max: usize) -> impl Strategy<Value = Vec<SignedSymbol>> {
    prop::collection::vec(symbol(), 0..max)
}

fn series(order: usize) -> impl Strategy<Value = RationalSeries> {
    prop::collection::vec(-4i64..=4, order + 1).prop_map(move |c| RationalSeries::from_i64s(&c, order))
}

fn unit_series(order: usize) -> impl Strategy<Value = RationalSeries> {
    series(order).prop_map(|mut s| {
        s.set_coeff(0, rat(1));
        s
    })
}

fn spec_strategy() -> impl Strategy<Value = SubshiftSpec> {
    (prop::collection::vec(1usize..=2, 2), prop::collection::vec(0i64..=2, 12)).prop_map(|(copies, raw)| {
        let mat = |o: usize| {
            let mut m = IntMatrix::zeros(2);
            for i in 0..2 {
                for j in 0..2 {
                    m.set(i, j, raw[o + 2 * i + j].min(copies[j] as i64));
                }
            }
            m
        };
        SubshiftSpec::new(copies.clone(), mat(0), mat(4), mat(8)).unwrap()
    })
}

fn binary_triplet() -> impl Strategy<Value = Triplet> {
    (0u16..4096).prop_map(Triplet::from_bits)
}

fn reduced_word(e: &ReducedElement) -> Option<Vec<SignedSymbol>> {
    e.to_word()
}

fn concat_reduced(a: &ReducedElement, b: &ReducedElement) -> ReducedElement {
    match (reduced_word(a), reduced_word(b)) {
        (Some(x), Some(y)) => reduce(&[x, y].concat()),
        _ => ReducedElement::Zero,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn reduction_is_a_homomorphism(u in word(10), v in word(10)) {
        let whole = reduce(&[u.clone(), v.clone()].concat());
        prop_assert_eq!(whole, concat_reduced(&reduce(&u), &reduce(&v)));
    }

    #[test]
    fn normal_form_is_closers_then_openers(w in word(14)) {
        if let Some(nf) = reduce(&w).to_word() {
            let first_minus = nf.iter().position(|s| s.is_minus()).unwrap_or(nf.len());
            prop_assert!(nf[first_minus..].iter().all(|s| s.is_minus()));
            prop_assert_eq!(reduce(&nf).to_word(), Some(nf.clone()));
            prop_assert_eq!((w.len() - nf.len()) % 2, 0);
            let weight = |x: &[SignedSymbol]| x.iter().map(rho).sum::<i32>();
            prop_assert_eq!(weight(&w), weight(&nf));
        }
    }

    #[test]
    fn periodicity_is_rotation_invariant(spec in spec_strategy(), w in word(7), k in 0usize..7) {
        let w: Vec<_> = w.into_iter().filter(|s| spec.is_valid_symbol(s)).collect();
        prop_assume!(!w.is_empty());
        let mut r = w.clone();
        r.rotate_left(k % w.len());
        prop_assert_eq!(is_periodic_word(&spec, &w), is_periodic_word(&spec, &r));
    }

    #[test]
    fn series_ring_axioms(a in series(8), b in series(8), c in series(8)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn inverse_log_exp(u in unit_series(8)) {
        let inv = u.inverse().unwrap();
        prop_assert_eq!(&u * &inv, RationalSeries::one(8));
        prop_assert_eq!(u.log().unwrap().exp().unwrap(), u);
    }

    #[test]
    fn determinant_is_multiplicative(x in prop::collection::vec(series(5), 9), y in prop::collection::vec(series(5), 9)) {
        let x = SeriesMatrix::from_entries(3, x);
        let y = SeriesMatrix::from_entries(3, y);
        prop_assert_eq!(x.mul(&y).det(), &x.det() * &y.det());
    }

    #[test]
    fn sylvester_determinant_identity(x in prop::collection::vec(series(5), 4), y in prop::collection::vec(series(5), 4)) {
        let shifted = |v: Vec<RationalSeries>| SeriesMatrix::from_entries(2, v.into_iter().map(|s| s.shift(1)).collect());
        let (x, y) = (shifted(x), shifted(y));
        let one = SeriesMatrix::identity(2, 5);
        prop_assert_eq!(one.sub(&x.mul(&y)).det(), one.sub(&y.mul(&x)).det());
    }

    #[test]
    fn fast_census_agrees_with_rotations(spec in spec_strategy()) {
        prop_assert_eq!(periodic_census(&spec, 4).unwrap(), census_by_rotation(&spec, 4));
    }

    #[test]
    fn census_inclusion_exclusion(spec in spec_strategy()) {
        let c = periodic_census(&spec, 6).unwrap();
        for n in 0..6 {
            prop_assert_eq!(c.total[n] + c.neutral[n], c.non_positive[n] + c.non_negative[n]);
        }
    }

    #[test]
    fn solver_matches_enumeration(spec in spec_strategy()) {
        let sol = solve_genfun(&spec, 8).unwrap();
        for class in 0..2 {
            prop_assert_eq!(sol.g[class].coeff(2), &rat(spec.copies()[class] as i64));
            prop_assert_eq!(&sol.g[class], &enumerated_series(&spec, class, 8));
        }
    }

    #[test]
    fn zeta_factors_are_consistent(spec in spec_strategy()) {
        let z = zeta_parts(&spec, 8).unwrap();
        prop_assert!(z.intersection_defect().is_zero());
        for s in [&z.neutral, &z.non_positive, &z.non_negative, &z.total] {
            prop_assert_eq!(s.coeff(0), &rat(1));
        }
    }

    #[test]
    fn cyclic_relabelling_round_trips(spec in spec_strategy(), w in word(6)) {
        let (_, map) = canonicalize(&spec).unwrap();
        let w: Vec<_> = w.into_iter().filter(|s| spec.is_valid_symbol(s)).collect();
        prop_assume!(!w.is_empty());
        let back = relabel_cyclic(&relabel_cyclic(&w, &map), &map.inverse());
        prop_assert_eq!(back, w);
    }

    #[test]
    fn symmetries_are_involutions_preserving_census(t in binary_triplet()) {
        prop_assert_eq!(time_reverse(&time_reverse(&t)), t.clone());
        prop_assert_eq!(swap_indices(&swap_indices(&t)), t.clone());
        let c = periodic_census(&t.to_spec(1).unwrap(), 6).unwrap();
        let r = periodic_census(&time_reverse(&t).to_spec(1).unwrap(), 6).unwrap();
        prop_assert_eq!(r, c.with_sides_swapped());
    }

    #[test]
    fn spec_file_round_trips(spec in spec_strategy()) {
        let json = SpecFile::from_spec(&spec).to_json();
        prop_assert_eq!(SpecFile::parse(&json).unwrap().to_spec().unwrap(), spec);
    }
}

#[test]
fn neutral_class_requires_balance() {
    let w = [SignedSymbol::minus(0, 1), SignedSymbol::plus(0, 1)];
    assert_eq!(reduce(&w).class(), MultiplierClass::Neutral);
}
