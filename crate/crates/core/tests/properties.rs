mod common;

use carlitz_core::algebra::{CoeffRing, FqPoly, Integers, Monomial, MultiPoly, Rationals, Scalar, Var, ZPoly};
use carlitz_core::ideal::{IdealHandle, TermOrder};
use carlitz_core::lfun::{analytic_rank, l_polynomial, schur_provider, specialize_l, specialize_symbolic, SquareMatrix};
use carlitz_core::univar::{factorize, twist_equivalent, TwistPoly, UniPoly};
use carlitz_core::{FieldSpec, FqElement};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

const NV: usize = 4;

fn small_field() -> impl Strategy<Value = FieldSpec> {
    prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9]).prop_map(|q| FieldSpec::new(q).unwrap())
}

proptest! {
    #[test]
    fn integer_ring_axioms(a in zpoly(NV, 5), b in zpoly(NV, 5), c in zpoly(NV, 5)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &ZPoly::one(Integers, NV), a.clone());
    }

    #[test]
    fn finite_field_axioms(f in small_field(), x in 0u32..9, y in 0u32..9, z in 0u32..9) {
        let q = f.order();
        let (x, y, z) = (FqElement(x % q), FqElement(y % q), FqElement(z % q));
        prop_assert_eq!(f.add(x, y), f.add(y, x));
        prop_assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
        prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
        prop_assert_eq!(f.add(x, f.neg(x)), f.zero());
        if !x.is_zero() {
            prop_assert_eq!(f.mul(x, f.inv(x).unwrap()), f.one());
        }
        prop_assert_eq!(f.pow(x, q as u64), x);
    }

    #[test]
    fn specialization_is_a_homomorphism(a in zpoly(NV, 5), b in zpoly(NV, 5), v in -4i64..=4) {
        let s = [(Var::A(1), Scalar::from(v))];
        let sp = |p: &ZPoly| p.specialize(&s).unwrap();
        prop_assert_eq!(sp(&(&a * &b)), &sp(&a) * &sp(&b));
        prop_assert_eq!(sp(&(&a + &b)), &sp(&a) + &sp(&b));
    }

    #[test]
    fn reduction_mod_p_commutes(a in zpoly(NV, 5), b in zpoly(NV, 5), p in prop::sample::select(vec![2u32, 3, 5, 7])) {
        let r = |x: &ZPoly| x.reduce_mod_p(p).unwrap();
        prop_assert_eq!(r(&(&a * &b)), &r(&a) * &r(&b));
        prop_assert_eq!(r(&(&a - &b)), &r(&a) - &r(&b));
    }

    #[test]
    fn twist_equivalence_under_powers(f in prop::sample::select(vec![3u64, 4, 5]), p in prop::collection::vec(0u32..5, 1..4), u in prop::collection::vec(0u32..5, 1..3)) {
        let field = FieldSpec::new(f).unwrap();
        let q = field.order();
        let p = UniPoly::from_reprs(&field, &p.iter().map(|x| x % q).collect::<Vec<_>>()).unwrap();
        let u = UniPoly::from_reprs(&field, &u.iter().map(|x| x % q).collect::<Vec<_>>()).unwrap();
        prop_assume!(!p.is_zero() && !u.is_zero());
        let scaled = p.mul(&u.pow(q as u64 - 1));
        let tp = TwistPoly::new(field.clone(), p.coeffs().to_vec()).unwrap();
        let ts = TwistPoly::new(field.clone(), scaled.coeffs().to_vec()).unwrap();
        prop_assert!(twist_equivalent(&tp, &ts).unwrap());
        prop_assert!(twist_equivalent(&ts, &tp).unwrap());
        prop_assert!(twist_equivalent(&tp, &tp).unwrap());
    }

    #[test]
    fn factorization_reconstructs(f in small_field(), c in prop::collection::vec(0u32..9, 1..10)) {
        let q = f.order();
        let u = UniPoly::from_reprs(&f, &c.iter().map(|x| x % q).collect::<Vec<_>>()).unwrap();
        prop_assume!(!u.is_zero());
        let fac = factorize(&u).unwrap();
        prop_assert_eq!(fac.expand(&f), u);
    }
}

/// `(a0^2 + a1, a1 a2 - a0)` in three variables.
fn fixed_ideal() -> IdealHandle {
    let g = |s: &str| carlitz_core::algebra::parse_poly(Rationals, 4, s).unwrap();
    IdealHandle::new(vec![g("a0^2 + a1"), g("a1*a2 - a0")], "fixed").unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_linear(a in apoly(3, 4), b in apoly(3, 4), x in -5i64..=5, y in -5i64..=5) {
        let ideal = fixed_ideal();
        let (a, b) = (a.to_rational(), b.to_rational());
        let xs = Rationals.from_i64(x);
        let ys = Rationals.from_i64(y);
        let lhs = ideal.normal_form(&(&a.scale(&xs) + &b.scale(&ys))).unwrap();
        let rhs = &ideal.normal_form(&a).unwrap().scale(&xs) + &ideal.normal_form(&b).unwrap().scale(&ys);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn groebner_basis_ignores_generator_order(gens in prop::collection::vec(apoly(2, 3), 1..4), seed in any::<u64>()) {
        let mut shuffled = gens.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rand::seq::SliceRandom::shuffle(shuffled.as_mut_slice(), &mut rng);
        let scaled: Vec<ZPoly> = shuffled.iter().map(|g| g.scale(&BigInt::from(-3))).collect();
        for order in [TermOrder::GrevLex, TermOrder::Lex] {
            let a = IdealHandle::from_integer(&gens, "a").unwrap().groebner(order).unwrap();
            let b = IdealHandle::from_integer(&scaled, "b").unwrap().groebner(order).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn rank_matches_taylor_oracle_and_is_additive(seed in any::<u64>(), q in prop::sample::select(vec![2u64, 3])) {
        let field = FieldSpec::new(q).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        use rand::Rng;
        let e1 = rng.gen_range(0..3);
        let e2 = rng.gen_range(0..3);
        let l1 = random_lpoly(&mut rng, &field, 3).checked_mul(&one_minus_t_pow(&field, e1)).unwrap();
        let l2 = random_lpoly(&mut rng, &field, 3).checked_mul(&one_minus_t_pow(&field, e2)).unwrap();
        let r1 = analytic_rank(&l1).unwrap();
        let r2 = analytic_rank(&l2).unwrap();
        prop_assert_eq!(r1, taylor_rank(&l1));
        prop_assert!(r1 >= e1);
        prop_assert_eq!(analytic_rank(&l1.checked_mul(&l2).unwrap()).unwrap(), r1 + r2);
    }

    #[test]
    fn division_free_determinant_matches_cofactors(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 4;
        let rows: Vec<Vec<ZPoly>> = (0..n).map(|_| (0..n).map(|_| random_zpoly(&mut rng, 3, 2)).collect()).collect();
        let m = SquareMatrix::new(n, rows.concat());
        prop_assert_eq!(m.determinant(&ZPoly::one(Integers, 3)), cofactor_det(&rows));
    }

    #[test]
    fn specialization_commutes_with_determinant(m in 1usize..=4, q in prop::sample::select(vec![2u64, 3, 4, 5]), c in prop::collection::vec(0u32..5, 5)) {
        let field = FieldSpec::new(q).unwrap();
        let provider = schur_provider(m).unwrap();
        let reprs: Vec<u32> = c.iter().take(m + 1).map(|x| x % field.order()).collect();
        let p = TwistPoly::from_reprs(&field, &reprs).unwrap();
        let sym = l_polynomial(&provider);
        prop_assert_eq!(specialize_l(&provider, &p).unwrap(), specialize_symbolic(&sym, &provider, &p).unwrap());
    }
}

#[test]
fn transpose_leaves_l_unchanged() {
    for m in 1..=5 {
        let p = schur_provider(m).unwrap();
        assert_eq!(l_polynomial(&p), l_polynomial(&p.transposed()), "m={m}");
    }
}

#[test]
fn constant_polynomials_specialize_to_themselves() {
    let c = MultiPoly::from_terms(Integers, 3, [(Monomial::one(3), BigInt::from(7))]);
    assert_eq!(c.specialize(&[(Var::A(0), Scalar::from(2))]).unwrap(), c);
    let f: FqPoly = c.reduce_mod_p(5).unwrap();
    assert_eq!(f.constant_term(), FqElement(2));
}
