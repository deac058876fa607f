//! Extreme and balanced triangles, and exhaustive weight distribution of the
//! code of all size-n triangles.
//!
//! Exhaustive passes run the word kernel over all 2^n seeds, split into
//! contiguous ranges merged by summation, so parallel runs are bit-identical
//! to sequential ones.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;

use crate::core::{triangle_weight, triangle_weight_word, BinarySequence};
use crate::{Error, Result};

/// Size caps and wall-clock guard for the exhaustive operations.
#[derive(Clone, Debug)]
pub struct Budget {
    /// Largest n accepted by `weight_distribution`, `balanced_search` and
    /// `minimum_positive_weight` enumeration.
    pub max_distribution_size: usize,
    /// Largest n accepted by `verify_max_weight`.
    pub max_verify_size: usize,
    pub deadline: Option<Instant>,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_distribution_size: 24,
            max_verify_size: 18,
            deadline: None,
        }
    }
}

impl Budget {
    pub fn with_deadline(mut self, deadline: Instant) -> Self {
        self.deadline = Some(deadline);
        self
    }

    fn check_clock(&self) -> Result<()> {
        if let Some(d) = self.deadline {
            if Instant::now() > d {
                return Err(Error::BudgetExceeded("wall-clock budget exhausted".into()));
            }
        }
        Ok(())
    }

    fn check_size(&self, n: usize, cap: usize, what: &str) -> Result<()> {
        if n > 63 {
            return Err(Error::InvalidInput(format!(
                "{what} enumerates word-packed seeds and supports n <= 63, got {n}"
            )));
        }
        if n > cap {
            return Err(Error::BudgetExceeded(format!(
                "{what} over 2^{n} seeds exceeds the configured cap n <= {cap}"
            )));
        }
        Ok(())
    }
}

/// The three periodic maximum-weight patterns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZVariant {
    Z1,
    Z2,
    Z3,
}

impl ZVariant {
    pub const ALL: [ZVariant; 3] = [ZVariant::Z1, ZVariant::Z2, ZVariant::Z3];

    fn pattern(self) -> [bool; 3] {
        match self {
            ZVariant::Z1 => [true, true, false],
            ZVariant::Z2 => [true, false, true],
            ZVariant::Z3 => [false, true, true],
        }
    }
}

impl std::fmt::Display for ZVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ZVariant::Z1 => "z1",
            ZVariant::Z2 => "z2",
            ZVariant::Z3 => "z3",
        })
    }
}

/// First n terms of the periodic pattern 110 / 101 / 011.
pub fn z_sequence(variant: ZVariant, n: usize) -> BinarySequence {
    let p = variant.pattern();
    BinarySequence::from_bits((0..n).map(|i| p[i % 3]))
}

/// The maximum triangle weight of size n and its generator set.
///
/// Returned without search: n(n+1)/3 from all three z-sequences when
/// n ≡ 0, 2 (mod 3), and (n²+n+1)/3 when n ≡ 1 (mod 3), attained by z1 and
/// its reversal z2 (at n = 1 those coincide, leaving the single generator
/// (1)). Exhaustive search confirms this generator set; see
/// [`verify_max_weight`].
pub fn max_weight(n: usize) -> (u64, Vec<BinarySequence>) {
    assert!(n >= 1);
    let n64 = n as u64;
    if n % 3 == 1 {
        let value = (n64 * n64 + n64 + 1) / 3;
        let mut gens = vec![z_sequence(ZVariant::Z1, n), z_sequence(ZVariant::Z2, n)];
        gens.dedup();
        (value, gens)
    } else {
        (
            n64 * (n64 + 1) / 3,
            ZVariant::ALL.iter().map(|&v| z_sequence(v, n)).collect(),
        )
    }
}

/// Exhaustively confirms both the maximum value and the exact generator set
/// claimed by [`max_weight`]; for n ≡ 1 (mod 3) additionally checks that z3
/// falls strictly below the maximum.
pub fn verify_max_weight(n: usize, budget: &Budget) -> Result<bool> {
    budget.check_size(n, budget.max_verify_size, "generator verification")?;
    let (claimed, gens) = max_weight(n);
    let mut best = 0u64;
    let mut argmax: Vec<u64> = Vec::new();
    for_each_seed(n, budget, |seed, w| {
        if w > best {
            best = w;
            argmax.clear();
        }
        if w == best {
            argmax.push(seed);
        }
    })?;
    if best != claimed {
        return Ok(false);
    }
    let mut expected: Vec<u64> = gens.iter().map(BinarySequence::to_word).collect();
    expected.sort_unstable();
    expected.dedup();
    argmax.sort_unstable();
    if argmax != expected {
        return Ok(false);
    }
    if n % 3 == 1 && n > 1 {
        let z3 = z_sequence(ZVariant::Z3, n);
        if triangle_weight(&z3) >= claimed {
            return Ok(false);
        }
    }
    Ok(true)
}

fn for_each_seed(n: usize, budget: &Budget, mut f: impl FnMut(u64, u64)) -> Result<()> {
    assert!((1..=63).contains(&n));
    let total = 1u64 << n;
    let mut seed = 0;
    while seed < total {
        budget.check_clock()?;
        let end = (seed + (1 << 16)).min(total);
        for s in seed..end {
            f(s, triangle_weight_word(s, n as u32));
        }
        seed = end;
    }
    Ok(())
}

/// Exact counts of seeds per triangle weight over all 2^n seeds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightEnumerator {
    pub size: usize,
    pub counts: BTreeMap<u64, u64>,
}

impl WeightEnumerator {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn min_positive_weight(&self) -> Option<u64> {
        self.counts.keys().copied().find(|&w| w > 0)
    }

    pub fn max_weight(&self) -> Option<u64> {
        self.counts.keys().last().copied()
    }

    /// CSV with a `weight,count` header and LF line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("weight,count\n");
        for (w, c) in &self.counts {
            writeln!(out, "{w},{c}").unwrap();
        }
        out
    }

    /// JSON object keyed by weight.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Object(
            self.counts
                .iter()
                .map(|(w, c)| (w.to_string(), serde_json::json!(c)))
                .collect(),
        )
    }
}

/// Enumerates all 2^n seeds and tallies triangle weights. Ranges are
/// processed in parallel and merged by summing per-weight counts.
pub fn weight_distribution(n: usize, budget: &Budget) -> Result<WeightEnumerator> {
    if n == 0 {
        return Err(Error::InvalidInput("size must be at least 1".into()));
    }
    budget.check_size(n, budget.max_distribution_size, "weight distribution")?;
    let total = 1u64 << n;
    let max_w = n * (n + 1) / 2;
    let chunk = 1u64 << 16;
    let chunks = total.div_ceil(chunk);
    let tally = (0..chunks)
        .into_par_iter()
        .try_fold(
            || vec![0u64; max_w + 1],
            |mut acc, ci| {
                budget.check_clock()?;
                let start = ci * chunk;
                let end = (start + chunk).min(total);
                for seed in start..end {
                    acc[triangle_weight_word(seed, n as u32) as usize] += 1;
                }
                Ok(acc)
            },
        )
        .try_reduce(
            || vec![0u64; max_w + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                Ok(a)
            },
        )?;
    let counts = tally
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(w, c)| (w as u64, c))
        .collect();
    Ok(WeightEnumerator { size: n, counts })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    First,
    All,
    Count,
}

/// Result of a balanced-triangle search at the target weight n(n+1)/4.
#[derive(Clone, Debug)]
pub struct BalancedOutcome {
    pub size: usize,
    pub target: u64,
    pub count: u64,
    /// One witness in `First` mode, all of them in `All` mode, none in
    /// `Count` mode.
    pub witnesses: Vec<BinarySequence>,
}

/// Searches for seeds whose triangle weight is exactly half the entries.
pub fn balanced_search(n: usize, mode: SearchMode, budget: &Budget) -> Result<BalancedOutcome> {
    if n == 0 || !matches!(n % 4, 0 | 3) {
        return Err(Error::InvalidInput(format!(
            "balanced triangles need n = 0, 3 (mod 4) so that n(n+1)/4 is an integer; got {n}"
        )));
    }
    budget.check_size(n, budget.max_distribution_size, "balanced search")?;
    let target = (n * (n + 1) / 4) as u64;
    let mut count = 0u64;
    let mut witnesses = Vec::new();
    let total = 1u64 << n;
    let mut seed = 0;
    'outer: while seed < total {
        budget.check_clock()?;
        let end = (seed + (1 << 16)).min(total);
        for s in seed..end {
            if triangle_weight_word(s, n as u32) == target {
                count += 1;
                match mode {
                    SearchMode::First => {
                        witnesses.push(BinarySequence::from_word(s, n));
                        break 'outer;
                    }
                    SearchMode::All => witnesses.push(BinarySequence::from_word(s, n)),
                    SearchMode::Count => {}
                }
            }
        }
        seed = end;
    }
    Ok(BalancedOutcome {
        size: n,
        target,
        count,
        witnesses,
    })
}

/// The minimum positive triangle weight, which is n, with its witnesses.
///
/// Within the enumeration budget the full witness set is computed; beyond it
/// only the guaranteed witnesses e_0 and e_{n−1} are listed.
pub fn minimum_positive_weight(n: usize, budget: &Budget) -> Result<(u64, Vec<BinarySequence>)> {
    if n == 0 {
        return Err(Error::InvalidInput("size must be at least 1".into()));
    }
    let value = n as u64;
    if n <= budget.max_distribution_size {
        let mut witnesses = Vec::new();
        for_each_seed(n, budget, |seed, w| {
            if w == value {
                witnesses.push(BinarySequence::from_word(seed, n));
            }
        })?;
        Ok((value, witnesses))
    } else {
        Ok((
            value,
            vec![
                BinarySequence::basis(0, n).unwrap(),
                BinarySequence::basis(n - 1, n).unwrap(),
            ],
        ))
    }
}
