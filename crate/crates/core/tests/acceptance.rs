//! The acceptance gate: one test per criterion, each printing a pass line
//! (run with `--nocapture` to see them). Every check is exact; no
//! tolerances anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use birwedge::abelian::{dual, Character, FinGenAbGroup};
use birwedge::classify::{
    birationally_equivalent, count_classes, e8_class_count, katsylo_fails, monomial_witness,
    projective_fixed_points, RepSpec,
};
use birwedge::exterior::{apply_elem_op, ElementaryOp};
use birwedge::matrix::{pfaffian, RatMatrix};
use birwedge::qtorus::{commutator_form, default_prime, heisenberg, k_isomorphic, span_check};
use birwedge::selftest::{orbit_fiber_check, qtorus_agreement_check, symplectic_det_check};
use birwedge::symplectic::is_symplectic;

fn random_faithful(
    rng: &mut ChaCha8Rng,
    g: &FinGenAbGroup,
    d: usize,
) -> RepSpec {
    let gd = dual(g);
    let r = g.rank();
    loop {
        let chars: Vec<Character> = (0..d)
            .map(|_| {
                let coords: Vec<BigInt> =
                    (0..r).map(|_| BigInt::from(rng.gen_range(0..24i64))).collect();
                gd.element(coords).unwrap()
            })
            .collect();
        let spec = RepSpec::new(g.clone(), chars).unwrap();
        if spec.is_faithful().unwrap() {
            return spec;
        }
    }
}

#[test]
fn criterion_01_class_counts() {
    assert_eq!(
        count_classes(&FinGenAbGroup::from_ints(&[5]), 1).unwrap().count,
        BigInt::from(2)
    );
    assert_eq!(
        count_classes(&FinGenAbGroup::from_ints(&[7, 7]), 2).unwrap().count,
        BigInt::from(3)
    );
    assert_eq!(
        count_classes(&FinGenAbGroup::from_ints(&[9]), 1).unwrap().count,
        BigInt::from(3)
    );
    assert_eq!(
        count_classes(&FinGenAbGroup::from_ints(&[2, 4]), 2).unwrap().count,
        BigInt::one()
    );
    for factors in [vec![5i64], vec![7, 7], vec![2, 4], vec![3, 9, 9], vec![0, 0]] {
        let g = FinGenAbGroup::from_ints(&factors);
        let d = g.rank() + 1;
        assert_eq!(count_classes(&g, d).unwrap().count, BigInt::one());
    }
    println!("PASS criterion 1: class counts (2, 3, 3, 1, and 1 at d = r+1)");
}

#[test]
fn criterion_02_katsylo_failure_set() {
    for n1 in 2i64..=30 {
        let expected = n1 == 5 || n1 >= 7;
        assert_eq!(
            katsylo_fails(&FinGenAbGroup::from_ints(&[n1])),
            expected,
            "n1 = {n1}"
        );
        // and with a longer chain on top
        assert_eq!(
            katsylo_fails(&FinGenAbGroup::from_ints(&[n1, n1 * 6])),
            expected,
            "chain ({n1}, {})",
            n1 * 6
        );
    }
    println!("PASS criterion 2: Katsylo failure set = {{n1 = 5 or n1 >= 7}} for n1 <= 30");
}

#[test]
fn criterion_03_lorenz_rank_one() {
    let iso5: Vec<i64> = (1..5)
        .filter(|&m| {
            k_isomorphic(&birwedge::qtorus::QuantumTorusSpec::from_ints(&[5], &[m]).unwrap())
        })
        .collect();
    assert_eq!(iso5, vec![1, 4]);
    let iso7: Vec<i64> = (1..7)
        .filter(|&m| {
            k_isomorphic(&birwedge::qtorus::QuantumTorusSpec::from_ints(&[7], &[m]).unwrap())
        })
        .collect();
    assert_eq!(iso7, vec![1, 6]);
    println!("PASS criterion 3: rank-1 twists isomorphic exactly for m in {{1,4}} mod 5, {{1,6}} mod 7");
}

#[test]
fn criterion_04_wedge_vs_product_criterion() {
    let checked = qtorus_agreement_check(3, 12).unwrap();
    assert!(checked >= 500, "only {checked} specs checked");
    println!(
        "PASS criterion 4: wedge and product criteria agree on all {checked} specs (r <= 3, n_r <= 12)"
    );
}

#[test]
fn criterion_05_elementary_ops_completeness() {
    let mut replayed_total = 0;
    for (factors, d) in [
        (vec![2i64, 2], 2usize),
        (vec![2, 2], 3),
        (vec![3, 3], 2),
        (vec![3, 3], 3),
        (vec![2, 4], 2),
        (vec![2, 4], 3),
    ] {
        let g = FinGenAbGroup::from_ints(&factors);
        let (tuples, orbits, replayed) = orbit_fiber_check(&g, d, 80).unwrap();
        assert!(tuples > 0 && orbits > 0);
        replayed_total += replayed;
    }
    assert!(replayed_total >= 200, "only {replayed_total} replay pairs");
    println!(
        "PASS criterion 5: orbits = wedge fibers for (2,2),(3,3),(2,4) at d in {{2,3}}; {replayed_total} replays"
    );
}

#[test]
fn criterion_06_symplectic_determinant() {
    let mut total = 0;
    for base in [vec![2i64], vec![3], vec![4], vec![5], vec![2, 2], vec![2, 4]] {
        let g = FinGenAbGroup::from_ints(&base);
        total += symplectic_det_check(&g, 1 << 20).unwrap();
    }
    println!(
        "PASS criterion 6: all {total} form-preserving automorphisms have det = 1 (mod n1), both routes"
    );
}

#[test]
fn criterion_07_pfaffian_squares_to_det() {
    // plain fraction-free rational determinant as the oracle
    fn rat_det(m: &RatMatrix) -> BigRational {
        let n = m.rows();
        let mut a: Vec<Vec<BigRational>> =
            (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
        let mut det = BigRational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return BigRational::zero();
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let pivot = a[col][col].clone();
            det *= pivot.clone();
            for r in col + 1..n {
                let f = &a[r][col] / &pivot;
                for c in col..n {
                    let sub = &f * &a[col][c];
                    a[r][c] = &a[r][c] - &sub;
                }
            }
        }
        det
    }

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..100 {
        let half = rng.gen_range(1..=5usize);
        let n = 2 * half;
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let num = BigInt::from(rng.gen_range(-9i64..=9));
                let den = BigInt::from(rng.gen_range(1i64..=9));
                let v = BigRational::new(num, den);
                m.set(i, j, v.clone());
                m.set(j, i, -v);
            }
        }
        let pf = pfaffian(&m).unwrap();
        assert_eq!(&pf * &pf, rat_det(&m), "case {case}");
    }
    println!("PASS criterion 7: Pf(m)^2 = det(m) on 100 seeded skew matrices up to 10x10");
}

#[test]
fn criterion_08_fixed_point_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(4096);
    for factors in [vec![5i64], vec![3, 3], vec![2, 4]] {
        let g = FinGenAbGroup::from_ints(&factors);
        for _ in 0..20 {
            let spec = random_faithful(&mut rng, &g, g.rank());
            let reports = projective_fixed_points(&spec).unwrap();
            assert_eq!(reports.len(), g.rank() + 1);
            for r in &reports[1..] {
                assert_eq!(r.invariant, reports[0].invariant);
            }
        }
    }
    println!("PASS criterion 8: all r+1 fixed-point classes coincide, 20 seeded reps per group");
}

#[test]
fn criterion_09_heisenberg_span() {
    for factors in [vec![2i64], vec![3], vec![4], vec![2, 2], vec![6]] {
        let a = FinGenAbGroup::from_ints(&factors);
        let p = default_prime(&a).unwrap();
        let h = heisenberg(&a, p).unwrap();
        assert!(span_check(&h), "span fails for {factors:?}");
        let form = commutator_form(&h).unwrap();
        assert!(is_symplectic(&form).unwrap(), "form not symplectic for {factors:?}");
    }
    println!("PASS criterion 9: Heisenberg products span Mat_n and the commutator form is symplectic");
}

#[test]
fn criterion_10_witness_soundness() {
    let mut rng = ChaCha8Rng::seed_from_u64(777);
    let groups = [vec![5i64], vec![7], vec![9], vec![3, 3], vec![2, 4]];

    // equivalent pairs: transport a faithful tuple by a random matrix of
    // determinant +-1 (composed elementary operations and a sign flip)
    let mut done = 0;
    while done < 500 {
        let factors = &groups[rng.gen_range(0..groups.len())];
        let g = FinGenAbGroup::from_ints(factors);
        let d = g.rank();
        let v = random_faithful(&mut rng, &g, d);
        let mut chars = v.chars().to_vec();
        if d >= 2 {
            for _ in 0..rng.gen_range(1..6) {
                let i = rng.gen_range(0..d);
                let mut j = rng.gen_range(0..d);
                while j == i {
                    j = rng.gen_range(0..d);
                }
                let op = ElementaryOp::new(i, j, BigInt::from(rng.gen_range(-3i64..=3))).unwrap();
                chars = apply_elem_op(&chars, &op).unwrap();
            }
        }
        if rng.gen_bool(0.5) {
            chars[0] = chars[0].neg();
        }
        let w = RepSpec::new(g.clone(), chars).unwrap();
        assert!(birationally_equivalent(&v, &w).unwrap());
        let n = monomial_witness(&v, &w).unwrap();
        assert!(birwedge::matrix::is_unimodular(&n).unwrap());
        for i in 0..d {
            let mut acc = dual(&g).zero();
            for (j, chi) in v.chars().iter().enumerate() {
                acc = acc.add(&chi.scale(n.get(j, i))).unwrap();
            }
            assert_eq!(&acc, &w.chars()[i]);
        }
        done += 1;
    }

    // inequivalent pairs: witness generation must refuse
    let mut done = 0;
    while done < 500 {
        let factors = &groups[rng.gen_range(0..groups.len())];
        let g = FinGenAbGroup::from_ints(factors);
        let d = g.rank();
        let v = random_faithful(&mut rng, &g, d);
        let w = random_faithful(&mut rng, &g, d);
        if birationally_equivalent(&v, &w).unwrap() {
            continue;
        }
        assert!(monomial_witness(&v, &w).is_err());
        done += 1;
    }
    println!("PASS criterion 10: 500 equivalent pairs transported exactly, 500 inequivalent refused");
}

#[test]
fn criterion_11_e8_counting() {
    assert_eq!(e8_class_count(), BigInt::from(2));
    let cc = count_classes(&FinGenAbGroup::from_ints(&[5, 5, 5]), 3).unwrap();
    assert_eq!(cc.count, BigInt::from(2));
    let units: Vec<BigInt> = cc
        .representatives
        .iter()
        .map(|t| t[0].coords()[0].clone())
        .collect();
    assert_eq!(units, vec![BigInt::one(), BigInt::from(2)]);
    println!("PASS criterion 11: exactly two classes, representatives {{±1}} and {{±2}} in Z/5");
}
