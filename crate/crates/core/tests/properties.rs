//! Property tests for the algebra kernel: ring axioms on random sparse
//! elements, normal-form stability, and degree additivity.

use proptest::prelude::*;

use liecohom::basic_data::{Coefficients, GroupId};
use liecohom::graded_algebra::Element;
use liecohom::rings::{cohomology, CohomologyRing};
use liecohom::scalar::Scalar;

fn f4_mod2() -> CohomologyRing {
    cohomology(GroupId::f4(), Coefficients::PrimeField(2)).unwrap()
}

fn e7_mod3() -> CohomologyRing {
    cohomology(GroupId::e7(), Coefficients::PrimeField(3)).unwrap()
}

/// Builds an element from raw (degree, index, coefficient) picks.
fn element_from_picks(ring: &CohomologyRing, picks: &[(u32, u32, i64)]) -> Element {
    let alg = &ring.algebra;
    let mut acc = Element::zero(alg);
    for &(draw_d, draw_i, c) in picks {
        let d = draw_d % (alg.top_degree() + 1);
        if alg.dim(d) == 0 {
            continue;
        }
        let m = alg.basis(d)[(draw_i as usize) % alg.dim(d)].clone();
        let term = Element::monomial(alg, m, Scalar::from_i64(c, ring.coeff));
        acc = acc.add(&term).unwrap();
    }
    acc
}

fn picks() -> impl Strategy<Value = Vec<(u32, u32, i64)>> {
    prop::collection::vec((0u32..200, 0u32..64, -6i64..7), 0..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn distributive_and_associative_mod2(a in picks(), b in picks(), c in picks()) {
        let ring = f4_mod2();
        let (a, b, c) = (
            element_from_picks(&ring, &a),
            element_from_picks(&ring, &b),
            element_from_picks(&ring, &c),
        );
        let left = a.mul(&b.add(&c).unwrap()).unwrap();
        let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        let assoc_l = a.mul(&b).unwrap().mul(&c).unwrap();
        let assoc_r = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(&assoc_l, &assoc_r);
    }

    #[test]
    fn graded_commutativity_mod3(a in picks(), b in picks()) {
        let ring = e7_mod3();
        let a = element_from_picks(&ring, &a);
        let b = element_from_picks(&ring, &b);
        // Restrict to homogeneous parts by construction: single-pick inputs
        // may still be inhomogeneous, so compare term by term through the
        // homogeneous components.
        if let (Some(da), Some(db)) = (a.degree(), b.degree()) {
            let sign = if da % 2 == 1 && db % 2 == 1 { -1 } else { 1 };
            let ab = a.mul(&b).unwrap();
            let ba = b.mul(&a).unwrap().scale(sign);
            prop_assert_eq!(&ab, &ba);
        }
    }

    #[test]
    fn normal_form_is_stable(a in picks()) {
        let ring = f4_mod2();
        let a = element_from_picks(&ring, &a);
        let renorm = Element::from_terms(
            &ring.algebra,
            a.terms().map(|(m, c)| (m.clone(), c.clone())),
        );
        prop_assert_eq!(&renorm, &a);
        // Multiplying by the unit changes nothing.
        let one = Element::one(&ring.algebra);
        prop_assert_eq!(&a.mul(&one).unwrap(), &a);
    }

    #[test]
    fn degree_is_additive(da in 0u32..53, ia in 0u32..64, db in 0u32..53, ib in 0u32..64) {
        let ring = e7_mod3();
        let a = element_from_picks(&ring, &[(da, ia, 1)]);
        let b = element_from_picks(&ring, &[(db, ib, 1)]);
        if let (Some(xa), Some(xb)) = (a.degree(), b.degree()) {
            let prod = a.mul(&b).unwrap();
            if let Some(d) = prod.degree() {
                prop_assert_eq!(d, xa + xb);
            }
        }
    }

    #[test]
    fn integral_ring_distributes(a in integral_picks(), b in integral_picks(), c in integral_picks()) {
        let ic = g2_integral();
        let a = integral_from_picks(&ic, &a);
        let b = integral_from_picks(&ic, &b);
        let c = integral_from_picks(&ic, &c);
        let left = ic.mul(&a, &ic.add(&b, &c).unwrap()).unwrap();
        let right = ic
            .add(&ic.mul(&a, &b).unwrap(), &ic.mul(&a, &c).unwrap())
            .unwrap();
        prop_assert_eq!(&left, &right);
        let assoc_l = ic.mul(&ic.mul(&a, &b).unwrap(), &c).unwrap();
        let assoc_r = ic.mul(&a, &ic.mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(&assoc_l, &assoc_r);
    }
}

use liecohom::integral::{integral_cohomology, IntegralCohomology, IntegralElement};

fn g2_integral() -> IntegralCohomology {
    integral_cohomology(GroupId::g2()).unwrap()
}

/// Picks mixing free monomials and torsion image classes.
fn integral_picks() -> impl Strategy<Value = Vec<(bool, u32, u32, i64)>> {
    prop::collection::vec((any::<bool>(), 0u32..16, 0u32..16, -4i64..5), 0..3)
}

fn integral_from_picks(
    ic: &IntegralCohomology,
    picks: &[(bool, u32, u32, i64)],
) -> IntegralElement {
    let mut acc = ic.zero();
    for &(torsion, draw_d, draw_i, c) in picks {
        let part = if torsion {
            // A differential image class of the 2-torsion component.
            let t = &ic.torsion[&2];
            let alg = &t.ctx.ring.algebra;
            let d = draw_d % (alg.top_degree() + 1);
            if alg.dim(d) == 0 {
                continue;
            }
            let m = alg.basis(d)[(draw_i as usize) % alg.dim(d)].clone();
            let e = liecohom::graded_algebra::Element::monomial(
                alg,
                m,
                Scalar::one(t.ctx.ring.coeff),
            );
            let img = t.ctx.delta.apply(&e).unwrap().scale(c);
            ic.from_torsion(2, img).unwrap()
        } else {
            let alg = &ic.free.algebra;
            let d = draw_d % (alg.top_degree() + 1);
            if alg.dim(d) == 0 {
                continue;
            }
            let m = alg.basis(d)[(draw_i as usize) % alg.dim(d)].clone();
            ic.from_free(liecohom::graded_algebra::Element::monomial(
                alg,
                m,
                Scalar::from_i64(c, liecohom::basic_data::Coefficients::Integers),
            ))
        };
        acc = ic.add(&acc, &part).unwrap();
    }
    acc
}
