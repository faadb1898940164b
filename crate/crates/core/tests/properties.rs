use cotor_core::catalog::{check_psi, check_pullback_square, check_restriction_square, cotor_of, model, HodgeTable, ModelId};
use cotor_core::cotor::{Truncation, TriDegree};
use cotor_core::gf2::{kernel_basis, member, rank};
use cotor_core::hopf::{binom_mod2, check_comodule_axioms};
use cotor_core::poly::GradingMode;
use cotor_core::toda::{
    canonical_lift, check_d1_squared, check_splitting, find_sharp, in_pq, pq_basis, star, BarGenerators, TodaClasses,
};
use cotor_core::{BiDegree, BitMatrix, BitVector, ComoduleAlgebra, Poly, PresentedAlgebra};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize, bits: &[bool]) -> BitMatrix {
    let mut m = BitMatrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, bits[r * cols + c]);
        }
    }
    m
}

/// A homogeneous element of `ca` picked by `pick` among the occupied bidegrees of total `t`.
fn element(ca: &ComoduleAlgebra, t: i32, pick: usize, bits: &[bool]) -> Poly {
    let degs = ca.occupied_bidegrees(t);
    if degs.is_empty() {
        return Poly::zero();
    }
    let basis = ca.basis(degs[pick % degs.len()]);
    Poly::from_monomials(
        basis.monomials().iter().zip(bits.iter().cycle()).filter(|(_, &b)| b).map(|(m, _)| m.clone()),
    )
}

/// A homogeneous element of `P_qA`.
fn pq_element(ca: &ComoduleAlgebra, q: usize, t: i32, pick: usize, bits: &[bool]) -> Poly {
    let degs = ca.occupied_bidegrees(t);
    if degs.is_empty() {
        return Poly::zero();
    }
    let mut out = Poly::zero();
    for (p, &b) in pq_basis(ca, q, degs[pick % degs.len()]).iter().zip(bits.iter().cycle()) {
        if b {
            out.add_assign(p);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(rows in 0usize..24, cols in 1usize..80, bits in proptest::collection::vec(any::<bool>(), 24 * 80)) {
        let m = matrix(rows, cols, &bits);
        let k = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + k.len(), cols);
        for v in &k {
            prop_assert!(m.mul_vec(v).unwrap().is_zero());
        }
    }

    #[test]
    fn member_matches_enumeration(k in 0usize..8, len in 1usize..12, bits in proptest::collection::vec(any::<bool>(), 8 * 12 + 12)) {
        let span: Vec<BitVector> = (0..k).map(|i| BitVector::from_bools(&bits[i * len..(i + 1) * len])).collect();
        let v = BitVector::from_bools(&bits[96..96 + len]);
        let mut reachable = false;
        for mask in 0u32..1 << k {
            let mut acc = BitVector::zeros(len);
            for (i, s) in span.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    acc.xor_assign(s);
                }
            }
            reachable |= acc == v;
        }
        prop_assert_eq!(member(&span, &v).unwrap(), reachable);
    }

    #[test]
    fn multiplication_laws(t in proptest::collection::vec(0i32..5, 3), picks in proptest::collection::vec(0usize..8, 3),
                           bits in proptest::collection::vec(any::<bool>(), 3 * 16)) {
        let ca = model(ModelId::Gl(4)).unwrap();
        let alg = ca.algebra();
        let e: Vec<Poly> = (0..3).map(|i| element(&ca, 2 * t[i], picks[i], &bits[16 * i..16 * (i + 1)])).collect();
        prop_assert_eq!(alg.mul(&e[0], &e[1]), alg.mul(&e[1], &e[0]));
        prop_assert_eq!(alg.mul(&alg.mul(&e[0], &e[1]), &e[2]), alg.mul(&e[0], &alg.mul(&e[1], &e[2])));
        prop_assert_eq!(alg.mul(&alg.one(), &e[0]), e[0].clone());
        prop_assert_eq!(alg.mul(&e[0].plus(&e[1]), &e[2]), alg.mul(&e[0], &e[2]).plus(&alg.mul(&e[1], &e[2])));
    }

    #[test]
    fn relations_never_increase_dimension(t in 1i32..6, pick in 0usize..8, bits in proptest::collection::vec(any::<bool>(), 16)) {
        let ca = model(ModelId::So(6)).unwrap();
        let r = element(&ca, t, pick, &bits);
        let free = PresentedAlgebra::free(ca.algebra().clone());
        let cut = PresentedAlgebra::new(ca.algebra().clone(), vec![r], GradingMode::BiDegree).unwrap();
        let (a, b) = (free.poincare_coeffs(12), cut.poincare_coeffs(12));
        for d in 0..=12 {
            prop_assert!(b[d] <= a[d]);
        }
    }

    #[test]
    fn lambda1_multiplicativity(n in 2u32..7, ta in 1i32..5, tb in 1i32..5, pa in 0usize..4, pb in 0usize..4,
                                bits in proptest::collection::vec(any::<bool>(), 32)) {
        let ca = model(ModelId::Gl(n)).unwrap();
        let alg = ca.algebra();
        let a = element(&ca, 2 * ta, pa, &bits[..16]);
        let b = element(&ca, 2 * tb, pb, &bits[16..]);
        let ab = alg.mul(&a, &b);
        for h in 0..=8 {
            let mut rhs = Poly::zero();
            for i in 0..=h {
                rhs.add_assign(&alg.mul(&ca.d_op(i, &a), &ca.d_op(h - i, &b)));
            }
            prop_assert_eq!(ca.d_op(h, &ab), rhs);
        }
    }

    #[test]
    fn lambda2_even_multiplicativity(r in 1u32..5, ta in 1i32..7, tb in 1i32..7, pa in 0usize..4, pb in 0usize..4,
                                     bits in proptest::collection::vec(any::<bool>(), 32)) {
        let ca = model(ModelId::So(2 * r)).unwrap();
        let alg = ca.algebra();
        let a = element(&ca, ta, pa, &bits[..16]);
        let b = element(&ca, tb, pb, &bits[16..]);
        let ab = alg.mul(&a, &b);
        for h in 0..=4 {
            let mut rhs = Poly::zero();
            for i in 0..=h {
                rhs.add_assign(&alg.mul(&ca.d_op(2 * i, &a), &ca.d_op(2 * (h - i), &b)));
            }
            prop_assert_eq!(ca.d_op(2 * h, &ab), rhs);
        }
    }

    #[test]
    fn cyclic_identity(r in 2u32..5, t in proptest::collection::vec(1i32..6, 3), picks in proptest::collection::vec(0usize..4, 3),
                       bits in proptest::collection::vec(any::<bool>(), 48)) {
        let ca = model(ModelId::So(2 * r)).unwrap();
        let alg = ca.algebra();
        let e: Vec<Poly> = (0..3).map(|i| element(&ca, t[i], picks[i], &bits[16 * i..16 * (i + 1)])).collect();
        let d1 = |p: &Poly| ca.d_op(1, p);
        let (a, b, c) = (&e[0], &e[1], &e[2]);
        let mut sum = alg.mul(&d1(&alg.mul(a, b)), &d1(c));
        sum.add_assign(&alg.mul(&d1(&alg.mul(b, c)), &d1(a)));
        sum.add_assign(&alg.mul(&d1(&alg.mul(a, c)), &d1(b)));
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn canonical_lift_is_a_projection(id in prop_oneof![Just(ModelId::Gl(6)), Just(ModelId::So(6)), Just(ModelId::Sp(6)), Just(ModelId::Gl(4))],
                                      t in 1i32..10, pick in 0usize..4, bits in proptest::collection::vec(any::<bool>(), 16)) {
        let ca = model(id).unwrap();
        let sharp = find_sharp(&ca, 8).unwrap();
        let p = pq_element(&ca, sharp.q, t, pick, &bits);
        prop_assert_eq!(canonical_lift(&ca, &sharp, &p).unwrap(), p.clone());
        let a = element(&ca, t, pick, &bits);
        let lift = canonical_lift(&ca, &sharp, &a).unwrap();
        prop_assert!(in_pq(&ca, sharp.q, &lift).unwrap());
        prop_assert_eq!(canonical_lift(&ca, &sharp, &lift).unwrap(), lift);
    }

    #[test]
    fn star_deviation_in_lambda1(ta in 1i32..5, tb in 1i32..5, pa in 0usize..4, pb in 0usize..4,
                                 bits in proptest::collection::vec(any::<bool>(), 32)) {
        let ca = model(ModelId::Gl(6)).unwrap();
        let alg = ca.algebra();
        let sharp = find_sharp(&ca, 8).unwrap();
        let a = pq_element(&ca, 2, 2 * ta, pa, &bits[..16]);
        let b = pq_element(&ca, 2, 2 * tb, pb, &bits[16..]);
        let d1 = |p: &Poly| ca.d_op(1, p);
        let mut lhs = d1(&star(&ca, &sharp, &a, &b).unwrap());
        lhs.add_assign(&star(&ca, &sharp, &d1(&a), &b).unwrap());
        lhs.add_assign(&star(&ca, &sharp, &a, &d1(&b)).unwrap());
        let rhs = alg.product([&d1(&a), &d1(&b), &d1(&sharp.element)]);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn perturbed_bars_break_a_clause(k in 3usize..7, t in 0i32..6, bits in proptest::collection::vec(any::<bool>(), 16)) {
        let ca = model(ModelId::Gl(6)).unwrap();
        let sharp = find_sharp(&ca, 8).unwrap();
        let mut bar = BarGenerators::build(&ca, &sharp).unwrap();
        let deg = BiDegree::new(k as i32, k as i32);
        let basis = pq_basis(&ca, 2, deg);
        let mut delta = Poly::zero();
        for (p, &b) in basis.iter().zip(bits.iter().cycle().skip(t as usize)) {
            if b {
                delta.add_assign(p);
            }
        }
        prop_assume!(!delta.is_zero());
        let old = bar.bars[&k].clone();
        bar.bars.insert(k, old.plus(&delta));
        prop_assert!(!bar.verify(&ca, &sharp).passed());
    }
}

#[test]
fn free_graded_dims_match_bases() {
    for id in [ModelId::Gl(4), ModelId::So(6), ModelId::O2Power(2)] {
        let ca = model(id).unwrap();
        let free = PresentedAlgebra::free(ca.algebra().clone());
        let coeffs = free.poincare_coeffs(12);
        for t in 0..=12 {
            assert_eq!(coeffs[t as usize], ca.algebra().monomial_basis(t).len(), "{id} degree {t}");
        }
    }
}

#[test]
fn d_zero_is_identity_and_lambda1_composition() {
    for n in 1..=8 {
        let ca = model(ModelId::Gl(n)).unwrap();
        let alg = ca.algebra();
        for g in 0..alg.nvars() {
            let p = alg.var_poly(g);
            assert_eq!(ca.d_op(0, &p), p);
            for i in 0..=8 {
                for j in 0..=8 - i {
                    let lhs = ca.d_op(i, &ca.d_op(j, &p));
                    let rhs = if binom_mod2((i + j) as i64, i as i64) { ca.d_op(i + j, &p) } else { Poly::zero() };
                    assert_eq!(lhs, rhs, "gl:{n} generator {g}, d{i} d{j}");
                }
            }
        }
    }
}

/// `d_{2a+e}d_{2b+f} = C(a+b, a) d_{2(a+b)+e+f}` when `e + f ≤ 1`, else zero.
#[test]
fn lambda2_composition() {
    for r in 1..=4 {
        for id in [ModelId::So(2 * r), ModelId::O(2 * r)] {
            let ca = model(id).unwrap();
            let alg = ca.algebra();
            for g in 0..alg.nvars() {
                let p = alg.var_poly(g);
                assert_eq!(ca.d_op(0, &p), p);
                for i in 0..=8usize {
                    for j in 0..=8 - i {
                        let (a, e, b, f) = (i / 2, i % 2, j / 2, j % 2);
                        let rhs = if e + f <= 1 && binom_mod2((a + b) as i64, a as i64) {
                            ca.d_op(2 * (a + b) + e + f, &p)
                        } else {
                            Poly::zero()
                        };
                        assert_eq!(ca.d_op(i, &ca.d_op(j, &p)), rhs, "{id} generator {g}, d{i} d{j}");
                    }
                }
            }
        }
    }
}

#[test]
fn cotor_zero_row_is_primitives_and_hodge_is_positive() {
    for id in [ModelId::Gl(4), ModelId::Gl(6), ModelId::So(6), ModelId::Sp(6), ModelId::O(4), ModelId::SpSing(6)] {
        let ca = model(id).unwrap();
        let ct = cotor_of(&ca, Truncation::total(12)).unwrap();
        for t in 0..=12 {
            for deg in ca.occupied_bidegrees(t) {
                let got = ct.get(TriDegree::new(0, deg.a, deg.b));
                assert_eq!(got, ca.primitives(deg).len(), "{id} at {deg}");
            }
        }
        if id.flavor().name().starts_with("lambda") {
            assert!(HodgeTable::from_cotor(&ct).positivity_violations().is_empty(), "{id}");
        }
    }
}

#[test]
fn splitting_and_d1_squared_on_catalog() {
    for id in [ModelId::Gl(2), ModelId::Gl(6), ModelId::So(6), ModelId::So(10), ModelId::Sp(6), ModelId::Gl(10)] {
        let ca = model(id).unwrap();
        let sharp = find_sharp(&ca, 8).unwrap();
        let r = check_splitting(&ca, &sharp, 14);
        assert!(r.passed(), "{r}");
        if sharp.q == 2 {
            let r = check_d1_squared(&ca, 14);
            assert!(r.passed(), "{r}");
        }
    }
}

#[test]
fn gl6_classes_are_primitive() {
    let ca = model(ModelId::Gl(6)).unwrap();
    let sharp = find_sharp(&ca, 8).unwrap();
    let bar = BarGenerators::build(&ca, &sharp).unwrap();
    let classes = TodaClasses::build(&ca, &sharp, &bar, 1).unwrap();
    let r = classes.verify_primitive();
    assert!(r.passed(), "{r}");
}

#[test]
fn catalog_suites() {
    for id in ModelId::samples() {
        let r = check_comodule_axioms(&model(id).unwrap(), 12);
        assert!(r.passed(), "{id}: {r}");
    }
    for r in 1..=3 {
        let rep = check_pullback_square(r, 10).unwrap();
        assert!(rep.passed(), "{rep}");
    }
    for n in 1..=3 {
        let rep = check_restriction_square(n, 10).unwrap();
        assert!(rep.passed(), "{rep}");
    }
    let rep = check_psi(12);
    assert!(rep.passed(), "{rep}");
}
