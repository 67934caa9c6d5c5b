#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::OnceLock;

use sturmcert::arith::rational::int;
use sturmcert::arith::{root_of_unity, CyclotomicInteger, Rational};
use sturmcert::expansion::{linear_combine, pointwise_multiply};
use sturmcert::generators::{classical_degree1, short_vectors, theta_series, ClassicalForm, EvenLattice};
use sturmcert::jacobi::{fourier_jacobi, restriction_order};
use sturmcert::{IndexMatrix, JacobiExpansion, SiegelExpansion};

pub fn e8_theta(g: usize, bound: u64) -> SiegelExpansion {
    static CACHE: OnceLock<std::sync::Mutex<BTreeMap<(usize, u64), SiegelExpansion>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(f) = cache.lock().unwrap().get(&(g, bound)) {
        return f.clone();
    }
    let f = theta_series(&EvenLattice::e8(), g, bound).unwrap();
    cache.lock().unwrap().insert((g, bound), f.clone());
    f
}

/// Degree-2 theta series used as Jacobi sources: (label, expansion).
pub fn degree2_corpus() -> Vec<(&'static str, SiegelExpansion)> {
    vec![
        ("E8 D=2", e8_theta(2, 2)),
        ("E8+E8 D=1", theta_series(&EvenLattice::e8_e8(), 2, 1).unwrap()),
        ("D16+ D=1", theta_series(&EvenLattice::d16_plus(), 2, 1).unwrap()),
    ]
}

/// Fourier–Jacobi coefficients of every index 1 ≤ m ≤ min(2, D) of the corpus.
pub fn jacobi_corpus() -> Vec<(String, JacobiExpansion)> {
    let mut out = Vec::new();
    for (label, f) in degree2_corpus() {
        for m in 1..=f.truncation().min(2) {
            out.push((format!("{label} m={m}"), fourier_jacobi(&f, m).unwrap()));
        }
    }
    out
}

pub fn q_series(f: &SiegelExpansion) -> Vec<Rational> {
    (0..=f.truncation() as i64)
        .map(|n| f.coefficient(&IndexMatrix::scalar(2 * n)).cloned().unwrap_or_else(|| int(0)))
        .collect()
}

pub fn classical(form: ClassicalForm, bound: u64) -> SiegelExpansion {
    classical_degree1(form, bound)
}

pub fn power(f: &SiegelExpansion, e: u32) -> SiegelExpansion {
    let mut acc = SiegelExpansion::one(1, f.truncation());
    for _ in 0..e {
        acc = pointwise_multiply(&acc, f).unwrap();
    }
    acc
}

/// E4³ − E6² to the given truncation.
pub fn e4_cubed_minus_e6_squared(bound: u64) -> SiegelExpansion {
    let e4 = classical(ClassicalForm::E4, bound);
    let e6 = classical(ClassicalForm::E6, bound);
    linear_combine(&[(int(1), &power(&e4, 3)), (int(-1), &power(&e6, 2))]).unwrap()
}

/// Monomials E4^a E6^b Δ^c of weight `k`.
pub fn degree1_basis(k: u64, bound: u64) -> Vec<SiegelExpansion> {
    let e4 = classical(ClassicalForm::E4, bound);
    let e6 = classical(ClassicalForm::E6, bound);
    let delta = classical(ClassicalForm::Delta, bound);
    let mut out = Vec::new();
    for c in 0..=k / 12 {
        for b in 0..=k / 6 {
            let rest = k as i64 - 12 * c as i64 - 6 * b as i64;
            if rest < 0 || rest % 4 != 0 {
                continue;
            }
            let a = (rest / 4) as u32;
            let f = pointwise_multiply(
                &pointwise_multiply(&power(&e4, a), &power(&e6, b as u32)).unwrap(),
                &power(&delta, c as u32),
            )
            .unwrap();
            out.push(f);
        }
    }
    out
}

/// Component (α, β) = (a/N, b/N) of the index-m Fourier–Jacobi coefficient of
/// the degree-2 theta series of `lattice`, summed directly over lattice pairs
/// (x, y) with y·y = 2m:  Σ e(mαβ + β·(x·y)) q^{(x+αy)²/2}.
/// Returns S' = 4N²·T' → value for all T' ≤ `bound`.
pub fn lattice_component(
    lattice: &EvenLattice,
    m: u64,
    n: u64,
    a: i64,
    b: i64,
    bound: u64,
) -> BTreeMap<i64, CyclotomicInteger> {
    let order = restriction_order(n) as i64;
    let (m, n) = (m as i64, n as i64);
    // |x| ≤ |x + αy| + |α||y|
    let reach = (2.0 * bound as f64).sqrt() + (a.abs() as f64 / n as f64) * (2.0 * m as f64).sqrt();
    let max_norm = (reach * reach).ceil() as i64 + 2;
    let vectors = short_vectors(lattice, max_norm).unwrap();
    let ys: Vec<Vec<i64>> = vectors
        .iter()
        .filter(|(_, nm)| *nm == 2 * m)
        .map(|(v, _)| lattice.apply(v))
        .collect();
    let limit = 4 * n * n * bound as i64;
    let mut out: BTreeMap<i64, CyclotomicInteger> = BTreeMap::new();
    for gy in &ys {
        for (x, xn) in &vectors {
            let r: i64 = x.iter().zip(gy).map(|(p, q)| p * q).sum();
            // 4N²·(x²/2 + rα + mα²)
            let key = 2 * n * n * xn + 4 * n * r * a + 4 * m * a * a;
            if key > limit {
                continue;
            }
            // M·(mαβ + βr)
            let phase = (m * a * b * (order / (n * n)) + b * r * (order / n)).rem_euclid(order);
            let slot = out.entry(key).or_insert_with(|| CyclotomicInteger::zero(order as u64));
            *slot += &root_of_unity(phase, order as u64);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}
