mod common;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use sturmcert::arith::rational::{int, rational};
use sturmcert::arith::{cyclotomic_polynomial, reduce_mod_ideal, CyclotomicRing};
use sturmcert::expansion::{linear_combine, pointwise_multiply};
use sturmcert::generators::{short_vectors, theta_series, torsion_matrix_det, ClassicalForm, EvenLattice};
use sturmcert::jacobi::{
    fourier_jacobi, fourier_jacobi_raw, lambda_shift, restrict_torsion, restrict_torsion_at, TorsionPoint,
};
use sturmcert::sturm::{certify_integrality, check_congruence, diagonal_vanishing_order};
use sturmcert::{io, matrix, Error, IndexMatrix, OrderResult, SiegelExpansion, Verdict};

#[test]
fn degree_one_identity() {
    let lhs = e4_cubed_minus_e6_squared(10);
    let delta = classical(ClassicalForm::Delta, 10);
    let diff = linear_combine(&[(int(1), &lhs), (int(-1728), &delta)]).unwrap();
    assert!(diff.is_empty());
    assert_eq!(diff.truncation(), 10);

    let e4 = classical(ClassicalForm::E4, 5);
    assert_eq!(q_series(&power(&e4, 2))[1], int(480));

    let normalized = lhs.scale(&rational(1, 1728));
    let cert = check_congruence(&normalized, &delta, 691).unwrap();
    assert_eq!(cert.verdict, Verdict::Congruent);
    assert_eq!(cert.cutoff, 1);
}

#[test]
fn theta_matches_divisor_sums() {
    let f = theta_series(&EvenLattice::e8(), 1, 6).unwrap();
    let e4 = classical(ClassicalForm::E4, 6);
    assert_eq!(f, e4);
}

#[test]
fn witt_identity() {
    let a = theta_series(&EvenLattice::e8_e8(), 2, 1).unwrap();
    let b = theta_series(&EvenLattice::d16_plus(), 2, 1).unwrap();
    assert_eq!(a, b);
    let a1 = theta_series(&EvenLattice::e8_e8(), 1, 3).unwrap();
    let b1 = theta_series(&EvenLattice::d16_plus(), 1, 3).unwrap();
    assert_eq!(a1, b1);
    assert_eq!(a1, power(&classical(ClassicalForm::E4, 3), 2));
    // the lattices are not isometric: root systems differ in structure, not count
    assert_eq!(short_vectors(&EvenLattice::d16_plus(), 2).unwrap().len(), 481);
}

#[test]
fn fourier_jacobi_counts_root_pairs() {
    let f = e8_theta(2, 2);
    let phi = fourier_jacobi(&f, 1).unwrap();
    let roots: Vec<Vec<i64>> = short_vectors(&EvenLattice::e8(), 2)
        .unwrap()
        .into_iter()
        .filter(|(_, n)| *n == 2)
        .map(|(v, _)| v)
        .collect();
    let e8 = EvenLattice::e8();
    let pairs = roots
        .iter()
        .flat_map(|x| roots.iter().map(move |y| (x, y)))
        .filter(|(x, y)| e8.inner(x, y) == 1)
        .count();
    assert_eq!(pairs, 13440);
    assert_eq!(phi.coefficient(&IndexMatrix::scalar(2), &[1]).unwrap(), int(13440));
    assert_eq!(phi.coefficient(&IndexMatrix::scalar(2), &[2]).unwrap(), int(240));
    assert_eq!(phi.coefficient(&IndexMatrix::scalar(0), &[0]).unwrap(), int(240));
    // outside the stored range, via reduction: (T=[3], R=[3]) ~ (T=[1], R=[1])
    assert_eq!(phi.coefficient(&IndexMatrix::scalar(6), &[3]).unwrap(), int(13440));
}

fn restricted_map(phi: &sturmcert::JacobiExpansion, n: u64, a: i64, b: i64) -> (u64, BTreeMap<i64, sturmcert::CyclotomicInteger>) {
    let r = restrict_torsion_at(phi, n, &[a], &[b]).unwrap();
    let map = r.iter().map(|(t, c)| (t.get(0, 0), c.clone())).collect();
    (r.truncation(), map)
}

#[test]
fn restriction_matches_lattice_summation() {
    let e8 = EvenLattice::e8();
    let f = e8_theta(2, 2);
    let wide: &[(u64, i64, i64)] = &[(2, 1, 0), (2, 1, 1), (2, -1, 3), (2, 2, 1), (3, 1, 2), (3, -2, 1), (3, 3, 5), (1, 0, 0)];
    let narrow: &[(u64, i64, i64)] = &[(2, 1, 0), (2, 1, 3), (3, 1, 2), (3, -1, 5), (1, 0, 0)];
    for (m, points) in [(1u64, wide), (2, narrow)] {
        let phi = fourier_jacobi(&f, m).unwrap();
        for &(n, a, b) in points {
            let (trunc, got) = restricted_map(&phi, n, a, b);
            assert_eq!(trunc, 1);
            let expected = lattice_component(&e8, m, n, a, b, trunc);
            assert_eq!(got, expected, "m={m} N={n} a={a} b={b}");
        }
    }
    // constant exponent T' = 1/4 at (N=2, α=1/2, β=0) is stored as S' = 4N²/4 = 4
    let phi = fourier_jacobi(&f, 1).unwrap();
    let (_, got) = restricted_map(&phi, 2, 1, 0);
    assert!(got.contains_key(&4));
}

#[test]
fn restriction_at_n1_is_z0_specialization() {
    for (label, f) in degree2_corpus() {
        for m in 1..=f.truncation().min(2) {
            let phi = fourier_jacobi(&f, m).unwrap();
            let pt = TorsionPoint::new(1, vec![0], vec![0]).unwrap();
            let r = restrict_torsion(&phi, &pt).unwrap();
            let mut oracle: BTreeMap<i64, BigInt> = BTreeMap::new();
            for (s, c) in f.iter() {
                if s.get(1, 1) == 2 * m as i64 && s.get(0, 0) <= 2 * r.truncation() as i64 {
                    *oracle.entry(2 * s.get(0, 0)).or_default() += c.to_integer();
                }
            }
            oracle.retain(|_, v| *v != BigInt::from(0));
            let got: BTreeMap<i64, BigInt> = r.iter().map(|(t, c)| (t.get(0, 0), c.as_integer().unwrap())).collect();
            assert_eq!(got, oracle, "{label} m={m}");
            assert!(r.is_complete());
        }
    }
}

#[test]
fn restriction_is_independent_of_representatives() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (label, phi) in jacobi_corpus() {
        for n in [2u64, 3] {
            let n2 = (n * n) as i64;
            for _ in 0..4 {
                let a = rng.gen_range(0..n2);
                let b = rng.gen_range(0..n2);
                let base = restrict_torsion_at(&phi, n, &[a], &[b]).unwrap();
                assert_eq!(restrict_torsion_at(&phi, n, &[a + n2], &[b]).unwrap(), base, "{label}");
                assert_eq!(restrict_torsion_at(&phi, n, &[a], &[b - n2]).unwrap(), base, "{label}");
            }
        }
    }
}

#[test]
fn degree_three_restriction_invariance() {
    let f = e8_theta(3, 1);
    let phi = fourier_jacobi(&f, 1).unwrap();
    assert_eq!(phi.degree(), 2);
    let base = restrict_torsion_at(&phi, 2, &[1, 3], &[2, 1]).unwrap();
    assert_eq!(restrict_torsion_at(&phi, 2, &[5, 3], &[2, 1]).unwrap(), base);
    assert_eq!(restrict_torsion_at(&phi, 2, &[1, 3], &[2, -3]).unwrap(), base);
}

#[test]
fn lambda_shift_invariance_on_raw_data() {
    for (label, f) in degree2_corpus() {
        for m in 1..=f.truncation().min(2) {
            let raw = fourier_jacobi_raw(&f, m).unwrap();
            for (pair, c) in raw.iter() {
                for l in -2..=2 {
                    let (t2, r2) = lambda_shift(&pair.t, &pair.r, m, &[l]);
                    if t2.within_truncation(f.truncation(), 1) {
                        let shifted = sturmcert::JacobiIndexPair::new(t2, r2).unwrap();
                        assert_eq!(raw.stored(&shifted), Some(c), "{label} {pair} λ={l}");
                    }
                }
            }
        }
    }
}

fn resultant_norm(det: &sturmcert::CyclotomicInteger) -> BigInt {
    let phi: Vec<BigInt> = cyclotomic_polynomial(det.order()).into_iter().map(BigInt::from).collect();
    let mut f: Vec<BigInt> = det.coeffs().to_vec();
    while f.len() > 1 && f.last() == Some(&BigInt::from(0)) {
        f.pop();
    }
    let (da, db) = (phi.len() - 1, f.len() - 1);
    let size = da + db;
    let mut syl = vec![BigInt::from(0); size * size];
    for row in 0..db {
        for (k, c) in phi.iter().rev().enumerate() {
            syl[row * size + row + k] = c.clone();
        }
    }
    for row in 0..da {
        for (k, c) in f.iter().rev().enumerate() {
            syl[(db + row) * size + row + k] = c.clone();
        }
    }
    matrix::det(size, &syl)
}

#[test]
fn torsion_determinant_norms() {
    for (n, expected_field_norm) in [(3u64, 3i64), (5, 15625), (7, 7i64.pow(15))] {
        let det = torsion_matrix_det(n).unwrap();
        let ring = CyclotomicRing::new(n);
        let norm = ring.norm(&det);
        assert_eq!(norm.magnitude(), BigInt::from(expected_field_norm).magnitude(), "N={n}");
        assert_eq!(resultant_norm(&det).magnitude(), norm.magnitude(), "N={n}");
        // |det|² = det · conj(det) is the rational integer N^(N−2)
        let abs2 = ring.mul(&det, &ring.conjugate(&det, n - 1));
        assert_eq!(abs2.as_integer(), Some(BigInt::from(n).pow(n as u32 - 2)), "N={n}");
        for p in [2u64, 3, 5, 7, 11, 13].into_iter().filter(|&p| p != n) {
            assert!(!reduce_mod_ideal(&det, p).unwrap().is_zero());
        }
    }
}

#[test]
fn congruence_examples() {
    let delta = classical(ClassicalForm::Delta, 5);
    let zero = SiegelExpansion::zero(1, 12, 5);
    let cert = check_congruence(&delta, &zero, 11).unwrap();
    assert_eq!(cert.verdict, Verdict::NotCongruent);
    assert_eq!(cert.witness, Some(IndexMatrix::scalar(2)));
    let swapped = check_congruence(&zero, &delta, 11).unwrap();
    assert_eq!((swapped.verdict, swapped.witness), (cert.verdict, cert.witness));

    let e4 = classical(ClassicalForm::E4, 3);
    let e6 = classical(ClassicalForm::E6, 3);
    assert!(matches!(check_congruence(&e4, &e6, 5), Err(Error::WeightMismatch(4, 6))));

    let short = SiegelExpansion::zero(2, 35, 0);
    assert!(matches!(
        check_congruence(&short, &short, 2),
        Err(Error::TruncationInsufficient { needed: 3, have: 0 })
    ));

    let a = theta_series(&EvenLattice::e8_e8(), 2, 1).unwrap();
    let b = theta_series(&EvenLattice::d16_plus(), 2, 1).unwrap();
    let cert = check_congruence(&a, &b, 7).unwrap();
    assert_eq!((cert.verdict, cert.cutoff, cert.indices_checked), (Verdict::Congruent, 0, 1));
}

#[test]
fn integrality_examples() {
    let delta = classical(ClassicalForm::Delta, 3);
    assert_eq!(certify_integrality(&delta, None).unwrap().verdict, Verdict::Integral);

    let fifth = delta.scale(&rational(1, 5));
    let cert = certify_integrality(&fifth, None).unwrap();
    assert_eq!(cert.verdict, Verdict::NotIntegral);
    assert_eq!(cert.witness, Some(IndexMatrix::scalar(2)));
    assert_eq!(certify_integrality(&fifth, Some(7)).unwrap().verdict, Verdict::Integral);

    let mut coeffs = q_series(&delta);
    coeffs[3] = rational(1, 3);
    let tail = SiegelExpansion::from_q_series(12, &coeffs);
    assert!(matches!(certify_integrality(&tail, None), Err(Error::InputInconsistent { q: 3, .. })));
}

#[test]
fn vanishing_order_examples() {
    let delta = classical(ClassicalForm::Delta, 5);
    assert_eq!(diagonal_vanishing_order(&delta, 11).unwrap(), OrderResult::Exact(0));
    let e4 = classical(ClassicalForm::E4, 5);
    assert_eq!(diagonal_vanishing_order(&e4, 5).unwrap(), OrderResult::NotVanishing);
    let zero = SiegelExpansion::zero(2, 10, 4);
    assert_eq!(diagonal_vanishing_order(&zero, 3).unwrap(), OrderResult::AtLeast(4));
    // 240 ≡ 0 mod 2, 3, 5 but not mod 7
    let phi = fourier_jacobi(&e8_theta(2, 2), 1).unwrap();
    assert_eq!(sturmcert::jacobi::jacobi_vanishing_order(&phi, 7).unwrap(), OrderResult::NotVanishing);
}

#[test]
fn theta_is_invariant_under_unimodular_changes() {
    let f = e8_theta(2, 2);
    let flip = [1, 0, 0, -1];
    assert_eq!(f.unimodular_transform(&flip).unwrap(), f);
    let swap = [0, 1, 1, 0];
    assert_eq!(f.unimodular_transform(&swap).unwrap(), f);

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut tried = 0;
    while tried < 25 {
        let u: Vec<i64> = (0..4).map(|_| rng.gen_range(-2..=2)).collect();
        if (u[0] * u[3] - u[1] * u[2]).abs() != 1 {
            continue;
        }
        tried += 1;
        for (t, c) in f.iter() {
            let image = t.congruent(&u);
            if image.within_truncation(f.truncation(), 1) {
                assert_eq!(f.coefficient(&image), Some(c), "U={u:?} T={t}");
            }
        }
    }
}

#[test]
fn products_add_weights() {
    let e4 = classical(ClassicalForm::E4, 4);
    let e6 = classical(ClassicalForm::E6, 4);
    let p = pointwise_multiply(&e4, &e6).unwrap();
    assert_eq!(p.weight(), 10);
    // E10 = E4·E6 = 1 − 264q − ...
    assert_eq!(q_series(&p)[1], int(-264));
}

fn arb_expansion() -> impl Strategy<Value = SiegelExpansion> {
    (1u64..4, proptest::collection::vec((-3i64..=3, -50i64..50, 1i64..9), 0..12)).prop_map(|(bound, raw)| {
        let indices = sturmcert::index::enumerate_indices(2, bound);
        let mut entries = BTreeMap::new();
        for (k, (pick, num, den)) in raw.into_iter().enumerate() {
            let t = indices[(k * 7 + pick.unsigned_abs() as usize) % indices.len()].clone();
            entries.insert(t, rational(num, den));
        }
        SiegelExpansion::new(SiegelExpansion::rational_header(2, 10, bound), entries).unwrap()
    })
}

proptest! {
    #[test]
    fn expansion_files_round_trip(f in arb_expansion()) {
        let text = io::siegel_to_string(&f);
        let back: SiegelExpansion = io::siegel_from_str(&text).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(io::siegel_to_string(&back), text);
    }

    #[test]
    fn congruence_is_symmetric(f in arb_expansion(), g in arb_expansion(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let f = f.scale(&int(840));
        let g = g.scale(&int(840));
        let (f, g) = if f.truncation() <= g.truncation() { (f, g) } else { (g, f) };
        let a = check_congruence(&f, &g, p);
        let b = check_congruence(&g, &f, p);
        match (a, b) {
            (Ok(a), Ok(b)) => prop_assert_eq!((a.verdict, a.witness), (b.verdict, b.witness)),
            (Err(a), Err(b)) => prop_assert_eq!(a.code(), b.code()),
            _ => prop_assert!(false, "asymmetric outcome"),
        }
    }
}
