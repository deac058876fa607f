//! Acceptance suite: one test per criterion, each printing a pass line and
//! holding its stated time limit. Expected values are either fixed reference
//! numbers or recomputed through an independent oracle inside the test.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use steinhaus::binomial::{binom_mod_p, binom_parity, PrimeModulus};
use steinhaus::canonical::{
    closed_form_paper, compare_with_paper, derive_closed_form, lambda_mu_table, lambda_of,
    period_exponent, weight_bruteforce, weight_fast,
};
use steinhaus::core::{triangle_weight, BinarySequence};
use steinhaus::extremes::{
    balanced_search, max_weight, verify_max_weight, weight_distribution, z_sequence, Budget,
    SearchMode, ZVariant,
};

fn report(criterion: u32, what: &str, start: Instant, limit: Duration) {
    let elapsed = start.elapsed();
    println!("criterion {criterion:2}: PASS ({what}, {elapsed:?})");
    assert!(
        elapsed <= limit,
        "criterion {criterion} exceeded its {limit:?} limit: {elapsed:?}"
    );
}

#[test]
fn criterion_01_worked_example_breakdown() {
    let start = Instant::now();
    let bd = weight_fast(6, 203).unwrap();
    assert_eq!(bd.weight, 645);
    let p = bd.params.expect("non-degenerate breakdown");
    assert_eq!(p.t, 3);
    assert_eq!(p.q, 25);
    assert_eq!(p.r, 3);
    assert_eq!(p.lambda, 26);
    assert_eq!(p.mu, 21);
    assert_eq!((p.q as u64 - 1) * p.lambda + p.mu, 645);
    report(
        1,
        "fast-weight 6 203 breakdown",
        start,
        Duration::from_millis(10),
    );
}

#[test]
fn criterion_02_lambda_mu_table_reproduction() {
    let start = Instant::now();
    let expected: [(u32, u64, &[u64]); 7] = [
        (1, 3, &[2, 3]),
        (2, 8, &[5, 7, 8, 11]),
        (2, 9, &[4, 6, 8, 9]),
        (3, 22, &[13, 17, 19, 21, 22, 27, 30, 33]),
        (3, 24, &[13, 15, 19, 21, 23, 24, 30, 33]),
        (3, 26, &[11, 15, 17, 21, 23, 25, 26, 33]),
        (3, 27, &[8, 12, 16, 18, 22, 24, 26, 27]),
    ];
    let table = lambda_mu_table(7).unwrap();
    assert_eq!(table.len(), 7);
    for (row, (t, lambda, mu)) in table.iter().zip(&expected) {
        assert_eq!(row.t, *t, "t for k={}", row.k);
        assert_eq!(row.lambda, *lambda, "lambda for k={}", row.k);
        assert_eq!(row.mu, *mu, "mu row for k={}", row.k);
    }
    report(
        2,
        "all 7 lambda and 28 mu values",
        start,
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_03_fast_weight_equals_bruteforce_exhaustive() {
    let start = Instant::now();
    let mut cases = 0u32;
    for n in 1..=128usize {
        for k in 0..n {
            assert_eq!(
                weight_fast(k, n).unwrap().weight,
                weight_bruteforce(k, n).unwrap(),
                "k={k} n={n}"
            );
            cases += 1;
        }
    }
    assert_eq!(cases, 8256);
    report(
        3,
        "8,256 oracle comparisons",
        start,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_04_closed_forms_equal_bruteforce() {
    let start = Instant::now();
    for k in 1..=7usize {
        for n in (2 * k + 1)..=512 {
            // closed_form_paper errors on any non-integer evaluation.
            assert_eq!(
                closed_form_paper(k, n).unwrap(),
                weight_bruteforce(k, n).unwrap(),
                "k={k} n={n}"
            );
        }
    }
    report(
        4,
        "k=1..7, n up to 512, exact integers",
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_05_derived_coefficients_match_printed() {
    let start = Instant::now();
    for k in 1..=7 {
        let spec = derive_closed_form(k).unwrap();
        let rep = compare_with_paper(&spec).unwrap();
        assert!(rep.matches, "k={k}: {rep:?}");
    }
    // Spot values for k = 1: A0 = -5/4, A1 = 6/4, (-1)^n amplitude 1/4.
    let spec = derive_closed_form(1).unwrap();
    let tol = 1e-9;
    let a0 = *spec.a0.numer() as f64 / *spec.a0.denom() as f64;
    let a1 = *spec.a1.numer() as f64 / *spec.a1.denom() as f64;
    assert!((a0 + 1.25).abs() <= tol);
    assert!((a1 - 1.5).abs() <= tol);
    assert!((spec.amplitudes()[0].0 - 0.25).abs() <= tol);
    report(
        5,
        "coefficients within 1e-9 for k=1..7",
        start,
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_06_recurrence_difference_is_lambda() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5741);
    for _ in 0..200 {
        let k = rng.gen_range(1..=32usize);
        let period = 1usize << period_exponent(k);
        let n_min = 2 * k + 1 + period;
        let n = rng.gen_range(n_min..=4096);
        let w_n = weight_fast(k, n).unwrap().weight;
        let w_prev = weight_fast(k, n - period).unwrap().weight;
        assert_eq!(w_n - w_prev, lambda_of(k), "k={k} n={n}");
    }
    report(
        6,
        "200 randomized recurrence checks",
        start,
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_07_row_collapse() {
    let start = Instant::now();
    for k in 1..=64usize {
        let period = 1usize << period_exponent(k);
        for n in (period + k + 1)..=(period + k + 32) {
            let mut row = BinarySequence::basis(k, n).unwrap();
            for _ in 0..period {
                row = row.derivative();
            }
            assert_eq!(
                row,
                BinarySequence::basis(k, n - period).unwrap(),
                "k={k} n={n}"
            );
        }
    }
    report(
        7,
        "derivative collapse for k <= 64",
        start,
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_08_harborth_maxima() {
    let start = Instant::now();
    let budget = Budget::default();
    for n in 1..=18 {
        assert!(verify_max_weight(n, &budget).unwrap(), "n={n}");
    }
    for n in 1..=2000usize {
        let formula = if n % 3 == 1 {
            ((n * n + n + 1) / 3) as u64
        } else {
            (n * (n + 1) / 3) as u64
        };
        let (value, _) = max_weight(n);
        assert_eq!(value, formula);
        assert_eq!(
            triangle_weight(&z_sequence(ZVariant::Z1, n)),
            formula,
            "z1 weight at n={n}"
        );
    }
    report(
        8,
        "exhaustive n <= 18 and z1 formula to n = 2000",
        start,
        Duration::from_secs(300),
    );
}

#[test]
fn criterion_09_balanced_witnesses_exist() {
    let start = Instant::now();
    let budget = Budget::default();
    for n in [3usize, 4, 7, 8, 11, 12, 15, 16, 19, 20] {
        let outcome = balanced_search(n, SearchMode::First, &budget).unwrap();
        let target = (n * (n + 1) / 4) as u64;
        assert_eq!(outcome.target, target);
        let witness = outcome
            .witnesses
            .first()
            .unwrap_or_else(|| panic!("no balanced witness for n={n}"));
        assert_eq!(triangle_weight(witness), target, "n={n}");
    }
    report(
        9,
        "balanced witnesses for the ten listed sizes",
        start,
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_10_distribution_sanity() {
    let start = Instant::now();
    let budget = Budget::default();
    for n in 1..=20usize {
        let d = weight_distribution(n, &budget).unwrap();
        assert_eq!(d.total(), 1u64 << n, "total at n={n}");
        assert_eq!(d.counts[&0], 1, "zero triangle at n={n}");
        assert_eq!(
            d.min_positive_weight(),
            Some(n as u64),
            "min positive at n={n}"
        );
    }
    report(
        10,
        "enumerator sanity for n <= 20",
        start,
        Duration::from_secs(300),
    );
}

#[test]
fn criterion_11_lucas_against_pascal_dp() {
    let start = Instant::now();
    const MAX: usize = 2000;
    for p in [2u64, 3, 5, 7, 11] {
        let pm = PrimeModulus::new(p).unwrap();
        // Independent oracle: Pascal's rule mod p, row by row.
        let mut prev: Vec<u64> = vec![1 % p];
        for r in 0..=MAX as u64 {
            if r > 0 {
                let mut row = vec![1 % p; r as usize + 1];
                for s in 1..r as usize {
                    row[s] = (prev[s - 1] + prev[s]) % p;
                }
                prev = row;
            }
            for s in 0..=r {
                assert_eq!(
                    binom_mod_p(r, s, &pm),
                    prev[s as usize],
                    "C({r},{s}) mod {p}"
                );
            }
            // Above the diagonal the coefficient vanishes.
            assert_eq!(binom_mod_p(r, r + 1, &pm), 0);
            assert_eq!(binom_mod_p(r, MAX as u64, &pm), u64::from(r == MAX as u64));
        }
    }
    let p2 = PrimeModulus::new(2).unwrap();
    for r in 0..=512u64 {
        for s in 0..=512u64 {
            assert_eq!(binom_parity(r, s), binom_mod_p(r, s, &p2));
        }
    }
    report(
        11,
        "Lucas vs Pascal DP, parity exhaustive to 512",
        start,
        Duration::from_secs(60),
    );
}
