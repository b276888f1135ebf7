use fpp_workbench::algebra::{
    connected_sum_ring, cp2_power, point_algebra, tensor_product, truncated_poly_ring, GradedAlgebra, Monomial,
};
use fpp_workbench::gf2::{Gf2, Gf2Vector};
use proptest::prelude::*;

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn assert_sound(alg: &GradedAlgebra) {
    let axioms = alg.check_ring_axioms();
    assert!(axioms.holds(), "{}: {:?}", alg.label(), axioms.violations);
    assert_eq!(axioms.triples_checked, (alg.len() as u64).pow(3));
    let pd = alg.poincare_pairing().unwrap();
    assert!(pd.nondegenerate, "{}: {pd:?}", alg.label());
}

#[test]
fn connected_sums_are_poincare_duality_algebras() {
    for n in 1..=4 {
        for k in 2..=3 {
            let alg = connected_sum_ring(n, k).unwrap();
            assert_sound(&alg);
            let mut dims = vec![1];
            dims.extend(std::iter::repeat_n(n, 2 * k - 1));
            dims.push(1);
            assert_eq!(alg.graded_dims(), dims);
            assert_eq!(alg.euler().chi, 2 - n as i64);
        }
    }
}

#[test]
fn cp2_powers_are_poincare_duality_algebras() {
    for n in 1..=3 {
        let alg = cp2_power(n).unwrap();
        assert_sound(&alg);
        assert_eq!(alg.euler().chi, 3i64.pow(n as u32));
    }
}

#[test]
fn cp2_power_basis_splits_by_squared_and_linear_factors() {
    for n in 1..=5 {
        let alg = cp2_power(n).unwrap();
        assert_eq!(alg.len(), 3usize.pow(n as u32));
        for k in 0..=n {
            for l in 0..=n - k {
                let count = alg
                    .basis()
                    .iter()
                    .filter(|m| {
                        let sq = m.iter().filter(|&(_, e)| e == 2).count();
                        let lin = m.iter().filter(|&(_, e)| e == 1).count();
                        sq == k && lin == l
                    })
                    .count();
                assert_eq!(count, binomial(n, k) * binomial(n - k, l), "n={n} k={k} l={l}");
            }
        }
    }
}

#[test]
fn truncated_ring_matches_tensor_power() {
    for n in 1..=3 {
        let tensor = cp2_power(n).unwrap();
        let direct = truncated_poly_ring(n, 2, 3).unwrap();
        assert_eq!(tensor.graded_dims(), direct.graded_dims());
        let to_direct = |b: usize| direct.index_of(&tensor.basis()[b]).expect("same monomial basis");
        for u in 0..tensor.len() {
            for v in 0..tensor.len() {
                let mut mapped = Gf2Vector::zeros(direct.len());
                for w in tensor.mul_basis(u, v).ones() {
                    mapped.set(to_direct(w), Gf2::ONE);
                }
                assert_eq!(&mapped, direct.mul_basis(to_direct(u), to_direct(v)));
            }
        }
    }
}

#[test]
fn euler_characteristic_is_multiplicative() {
    let rings = [
        point_algebra(),
        connected_sum_ring(1, 2).unwrap(),
        connected_sum_ring(3, 2).unwrap(),
        cp2_power(1).unwrap(),
        truncated_poly_ring(1, 2, 2).unwrap(),
    ];
    for a in &rings {
        for b in &rings {
            let Ok(t) = tensor_product(a, b) else { continue };
            assert_eq!(t.euler().chi, a.euler().chi * b.euler().chi, "{} ⊗ {}", a.label(), b.label());
            assert_sound(&t);
        }
    }
}

#[test]
fn normal_form_of_mixed_and_high_powers() {
    let alg = connected_sum_ring(3, 2).unwrap();
    let top = alg.normal_form(&Monomial::power(0, 4)).unwrap();
    for i in 1..3 {
        assert_eq!(alg.normal_form(&Monomial::power(i, 4)).unwrap(), top);
        assert!(alg.normal_form(&Monomial::power(i, 5)).unwrap().is_zero());
    }
    let mixed = Monomial::from_exponents([(0, 1), (2, 2)]);
    assert!(alg.normal_form(&mixed).unwrap().is_zero());
}

fn degree_one_element(alg: &GradedAlgebra, bits: &[bool]) -> Gf2Vector {
    let mut v = alg.zero();
    for (i, &b) in bits.iter().enumerate() {
        if b {
            v.flip(alg.generator_index(i).unwrap());
        }
    }
    v
}

proptest! {
    #[test]
    fn squaring_is_additive(
        u in proptest::collection::vec(any::<bool>(), 3),
        v in proptest::collection::vec(any::<bool>(), 3),
    ) {
        let alg = connected_sum_ring(3, 2).unwrap();
        let (u, v) = (degree_one_element(&alg, &u), degree_one_element(&alg, &v));
        let mut sum = u.clone();
        sum.add_assign_vec(&v);
        let mut expected = alg.pow(&u, 2);
        expected.add_assign_vec(&alg.pow(&v, 2));
        prop_assert_eq!(alg.pow(&sum, 2), expected);
    }

    #[test]
    fn multiplication_is_bilinear(
        a in proptest::collection::vec(any::<bool>(), 27),
        b in proptest::collection::vec(any::<bool>(), 27),
        c in proptest::collection::vec(any::<bool>(), 27),
    ) {
        let alg = cp2_power(3).unwrap();
        let vec_of = |bits: &[bool]| {
            let mut v = alg.zero();
            for (i, &x) in bits.iter().enumerate() {
                if x { v.flip(i); }
            }
            v
        };
        let (a, b, c) = (vec_of(&a), vec_of(&b), vec_of(&c));
        let mut b_plus_c = b.clone();
        b_plus_c.add_assign_vec(&c);
        let mut expected = alg.mul(&a, &b);
        expected.add_assign_vec(&alg.mul(&a, &c));
        prop_assert_eq!(alg.mul(&a, &b_plus_c), expected);
    }
}
