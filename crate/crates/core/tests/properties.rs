use genusone::catalog::groups::GroupDesc;
use genusone::catalog::{enriques_subdiagram_scan, CharConstraint, EnriquesConfig};
use genusone::exactalg::{factor, poly_gcd, Field, Poly};
use genusone::lattice::snf::{smith_normal_form, to_i128};
use genusone::lattice::{e8_roots, RootConfiguration, RootType};
use genusone::localfibers::{classify_all, AffineLabel};
use genusone::picaction::{
    acts_trivially_on_e8_quotient, canonical_class, congruent_mod, e8_root_to_pic, e8_simple_roots, f0,
    reflection_pair_power, tau_matrix, DivisorClass,
};
use genusone::weierstrass::{compute_invariants, transform, Admissible, WeierstrassModel};
use num_rational::Ratio;
use num_traits::Signed;
use proptest::prelude::*;

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(PRIMES.to_vec())
}

fn poly(f: &Field, c: &[i64]) -> Poly {
    Poly::from_i64(f, c)
}

/// Coefficient lists with `deg a_i <= i`.
fn model_coeffs() -> impl Strategy<Value = Vec<Vec<i64>>> {
    [1usize, 2, 3, 4, 6]
        .into_iter()
        .map(|d| prop::collection::vec(-6i64..=6, 0..=d + 1))
        .collect::<Vec<_>>()
}

fn model(p: u64, c: &[Vec<i64>]) -> WeierstrassModel {
    let f = Field::from_characteristic(p).unwrap();
    WeierstrassModel::from_i64(&f, [&c[0], &c[1], &c[2], &c[3], &c[4]])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn division_with_remainder(p in prime(), a in prop::collection::vec(-20i64..20, 0..9), b in prop::collection::vec(-20i64..20, 1..6)) {
        let f = Field::prime(p).unwrap();
        let (a, b) = (poly(&f, &a), poly(&f, &b));
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn gcd_divides_both(p in prime(), a in prop::collection::vec(-9i64..9, 1..8), b in prop::collection::vec(-9i64..9, 1..8), c in prop::collection::vec(-9i64..9, 1..4)) {
        let f = Field::prime(p).unwrap();
        let c = poly(&f, &c);
        let (a, b) = (&poly(&f, &a) * &c, &poly(&f, &b) * &c);
        prop_assume!(!a.is_zero() && !b.is_zero());
        let g = poly_gcd(&a, &b).unwrap();
        prop_assert!(g.divides(&a).unwrap() && g.divides(&b).unwrap());
        prop_assert!(c.divides(&g).unwrap());
    }

    #[test]
    fn factorisation_multiplies_back(p in prime(), a in prop::collection::vec(-9i64..9, 2..12), seed in any::<u64>()) {
        let f = Field::prime(p).unwrap();
        let a = poly(&f, &a);
        prop_assume!(!a.is_zero());
        let fac = factor(&a, seed).unwrap();
        prop_assert!(fac.is_complete());
        prop_assert_eq!(fac.expand(&f), a.clone());
        prop_assert!(fac.factors.iter().all(|e| e.poly.is_monic()));
        // the answer does not depend on the seed
        prop_assert_eq!(factor(&a, seed.wrapping_add(1)).unwrap(), fac);
    }

    #[test]
    fn invariant_identities(p in prop::sample::select(vec![0u64, 2, 3, 5, 7]), c in model_coeffs()) {
        let m = model(p, &c);
        let f = m.field().clone();
        let i = compute_invariants(&m);
        let k = |n: i64| Poly::constant(&f, f.from_i64(n));
        prop_assert_eq!(&k(4) * &i.b8, &(&i.b2 * &i.b6) - &(&i.b4 * &i.b4));
        prop_assert_eq!(&k(1728) * &i.disc, &i.c4.pow(3) - &i.c6.pow(2));
    }

    #[test]
    fn discriminant_under_coordinate_change(p in prop::sample::select(vec![0u64, 2, 3, 5, 7]), c in model_coeffs(), r in prop::collection::vec(-3i64..3, 0..3), s in prop::collection::vec(-3i64..3, 0..2), w in prop::collection::vec(-3i64..3, 0..4), u in 1i64..6) {
        let m = model(p, &c);
        let f = m.field().clone();
        let u = f.from_i64(u);
        prop_assume!(!f.is_zero(&u));
        let g = Admissible::translation(poly(&f, &r), poly(&f, &s), poly(&f, &w))
            .then(&Admissible::scaling(&f, u.clone(), 0))
            .unwrap();
        let m2 = transform(&m, &g).unwrap();
        let d = compute_invariants(&m).disc;
        let d2 = compute_invariants(&m2).disc;
        prop_assert_eq!(d2.scale(&f.pow(&u, 12)), d);
    }

    #[test]
    fn ogg_formula_and_euler_sum(p in prop::sample::select(vec![2u64, 3, 5, 7]), c in model_coeffs(), seed in any::<u64>()) {
        let m = model(p, &c);
        if let Ok(r) = classify_all(&m, seed) {
            let mut total = 0u64;
            for fib in &r.fibers {
                prop_assert_eq!(fib.euler + fib.wild, fib.v_disc, "Ogg at {}", fib.place);
                prop_assert_eq!(fib.euler, fib.kodaira.label().euler());
                if p > 3 {
                    prop_assert_eq!(fib.wild, 0);
                }
                total += u64::from(fib.v_disc) * fib.degree() as u64;
            }
            if r.is_conclusive() {
                prop_assert_eq!(total, 12);
                prop_assert_eq!(r.euler_sum, 12);
            }
        }
    }

    #[test]
    fn smith_form_divisibility_and_determinant(rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 4), 4)) {
        let snf = smith_normal_form(&to_i128(&rows));
        let d = snf.diagonal();
        for w in d.windows(2) {
            prop_assert!(w[0] != 0 && w[1] % w[0] == 0 || w[1] == 0);
        }
        let det = rational_det(&rows).abs();
        let prod: i128 = d.iter().product::<i128>().abs();
        prop_assert_eq!(Ratio::from_integer(prod), det);
    }

    #[test]
    fn discriminant_groups_have_the_closed_form(t in prop_oneof![
        (1u32..=8).prop_map(RootType::A),
        (4u32..=8).prop_map(RootType::D),
        (6u32..=8).prop_map(RootType::E),
    ]) {
        let g = RootConfiguration::new(vec![t]).unwrap().discriminant_group().unwrap();
        let expected: Vec<u64> = match t {
            RootType::A(n) => vec![u64::from(n) + 1],
            RootType::D(n) if n % 2 == 0 => vec![2, 2],
            RootType::D(_) => vec![4],
            RootType::E(6) => vec![3],
            RootType::E(7) => vec![2],
            RootType::E(_) => vec![],
        };
        prop_assert_eq!(g, expected);
        prop_assert_eq!(rational_det(&t.cartan()), Ratio::from_integer(t.disc_group().iter().product::<u64>() as i128));
    }

    #[test]
    fn translations_are_isometries(a in e8_vector(), k in -3i64..3, m in 1i64..4) {
        let a = a + k * f0();
        let t = tau_matrix(&a, m).unwrap();
        prop_assert!(t.is_isometry());
        prop_assert!(t.fixes(&canonical_class()));
        prop_assert!(t.fixes(&f0()));
        prop_assert!(acts_trivially_on_e8_quotient(&t).unwrap());
        prop_assert!(congruent_mod(&t, m));
    }

    #[test]
    fn translations_ignore_the_lift(a in e8_vector(), k in -5i64..5, m in 1i64..4) {
        prop_assert_eq!(tau_matrix(&(a + k * f0()), m).unwrap(), tau_matrix(&a, m).unwrap());
    }

    #[test]
    fn translations_compose_additively(a in e8_vector(), b in e8_vector()) {
        let ta = tau_matrix(&a, 1).unwrap();
        let tb = tau_matrix(&b, 1).unwrap();
        prop_assert_eq!(ta.compose(&tb), tau_matrix(&(a + b), 1).unwrap());
        prop_assert_eq!(tau_matrix(&a, 2).unwrap(), ta.compose(&ta));
    }

    #[test]
    fn reflection_pairs_give_translations(i in 0usize..240, m in 1u32..4) {
        let alpha = e8_root_to_pic(&e8_roots()[i]);
        prop_assert_eq!(reflection_pair_power(&alpha, m).unwrap(), tau_matrix(&alpha, i64::from(m)).unwrap());
    }

    #[test]
    fn group_descriptors_round_trip(g in group_desc()) {
        // nested products come back flattened, so compare after one pass
        let back: GroupDesc = g.to_string().parse().unwrap();
        let again: GroupDesc = back.to_string().parse().unwrap();
        prop_assert_eq!(&again, &back);
        prop_assert_eq!(back.order(), g.order());
        prop_assert_eq!(back.exponent(), g.exponent());
        for p in [0u64, 2, 3, 5] {
            prop_assert!(g.contains(&g, p));
            prop_assert!(g.contains(&GroupDesc::Trivial, p));
        }
    }

    #[test]
    fn char_constraints_round_trip(ps in prop::collection::btree_set(prop::sample::select(vec![0u64, 2, 3, 5, 7]), 1..4), neg in any::<bool>()) {
        let ps: Vec<u64> = ps.into_iter().collect();
        let c = if neg { CharConstraint::Not(ps.clone()) } else { CharConstraint::Only(ps.clone()) };
        let back: CharConstraint = c.to_string().parse().unwrap();
        prop_assert_eq!(&back, &c);
        for p in [0u64, 2, 3, 5, 7, 11] {
            prop_assert_eq!(c.allows(p), ps.contains(&p) != neg);
        }
    }

    #[test]
    fn labels_round_trip(l in prop_oneof![
        (0u32..=8).prop_map(AffineLabel::A),
        Just(AffineLabel::A0Star), Just(AffineLabel::A0StarStar), Just(AffineLabel::A1Star), Just(AffineLabel::A2Star),
        (4u32..=8).prop_map(AffineLabel::D),
        (6u32..=8).prop_map(AffineLabel::E),
    ]) {
        let back: AffineLabel = l.to_string().parse().unwrap();
        prop_assert_eq!(back, l);
        let back: AffineLabel = l.ascii().parse().unwrap();
        prop_assert_eq!(back, l);
        prop_assert_eq!(l.kodaira().label(), l);
    }

    #[test]
    fn cycles_are_affine_a(n in 2usize..=9, relabel in any::<prop::sample::Index>()) {
        let shift = relabel.index(n);
        let edges: Vec<(usize, usize, u32)> = if n == 2 {
            vec![(0, 1, 2)]
        } else {
            (0..n).map(|i| ((i + shift) % n, (i + shift + 1) % n, 1)).collect()
        };
        let cfg = EnriquesConfig::from_graph("cycle", n, &edges).unwrap();
        let scan = enriques_subdiagram_scan(&cfg);
        let found: Vec<AffineLabel> = scan.subdiagrams.iter().map(|d| d.label).collect();
        prop_assert_eq!(found, vec![AffineLabel::A(n as u32 - 1)]);
        // dropping one edge leaves a finite-type path
        let cfg = EnriquesConfig::from_graph("path", n, &edges[1..]).unwrap();
        prop_assert!(enriques_subdiagram_scan(&cfg).subdiagrams.is_empty());
    }
}

fn e8_vector() -> impl Strategy<Value = DivisorClass> {
    prop::array::uniform8(-2i64..=2)
        .prop_map(|c| e8_simple_roots().iter().zip(c).fold(DivisorClass::ZERO, |acc, (r, k)| acc + k * *r))
}

fn group_desc() -> impl Strategy<Value = GroupDesc> {
    let leaf = prop_oneof![
        Just(GroupDesc::Trivial),
        (2u64..13).prop_map(GroupDesc::Cyclic),
        Just(GroupDesc::Quaternion),
        (2u64..7).prop_map(GroupDesc::Mu),
        Just(GroupDesc::Additive),
        Just(GroupDesc::Multiplicative),
        Just(GroupDesc::Affine),
    ];
    leaf.prop_recursive(2, 6, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(GroupDesc::Product),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| GroupDesc::SemiDirect(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| GroupDesc::Extension(Box::new(a), Box::new(b))),
        ]
    })
}

/// Determinant by fraction-field elimination.
fn rational_det(rows: &[Vec<i64>]) -> Ratio<i128> {
    let n = rows.len();
    let mut a: Vec<Vec<Ratio<i128>>> = rows.iter().map(|r| r.iter().map(|&x| Ratio::from_integer(x as i128)).collect()).collect();
    let mut det = Ratio::from_integer(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| a[r][c] != Ratio::from_integer(0)) else {
            return Ratio::from_integer(0);
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c];
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                let v = a[c][k];
                a[r][k] -= f * v;
            }
        }
    }
    det
}
