//! Fast weights of triangles generated by canonical basis vectors.
//!
//! For `e_k` with `2^(t-1) ≤ k < 2^t`, row `2^t` of the triangle is `e_k`
//! again, one size smaller. The triangle weight therefore satisfies an
//! order-`2^t` linear recurrence with constant increment λ, giving
//! `w(k, n) = (q−1)·λ + μ` for `n = q·2^t + r`, plus trigonometric closed
//! forms obtained by solving the recurrence over the `2^t`-th roots of unity.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::sync::Mutex;
use std::sync::OnceLock;

use num_complex::Complex64;
use num_rational::Ratio;

use crate::core::{partial_weight, triangle_weight, BinarySequence};
use crate::{Error, Result};

/// t = ⌊log₂ k⌋ + 1 for k ≥ 1, i.e. the bit length of k.
pub fn period_exponent(k: usize) -> u32 {
    assert!(k >= 1);
    usize::BITS - k.leading_zeros()
}

/// |T(e_k)| for a seed of length n, computed row by row.
pub fn weight_bruteforce(k: usize, n: usize) -> Result<u64> {
    Ok(triangle_weight(&BinarySequence::basis(k, n)?))
}

/// λ(k) = s(k, k+1+2^t, 2^t): the weight of the first 2^t rows, which no
/// longer changes once the seed is at least k+1+2^t long. Memoized.
pub fn lambda_of(k: usize) -> u64 {
    static CACHE: OnceLock<Mutex<HashMap<usize, u64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Mutex::default);
    if let Some(&v) = cache.lock().unwrap().get(&k) {
        return v;
    }
    let period = 1usize << period_exponent(k);
    let seed = BinarySequence::basis(k, k + 1 + period).unwrap();
    let v = partial_weight(&seed, period).unwrap();
    cache.lock().unwrap().insert(k, v);
    v
}

/// μ(k, r) = w(k, r + 2^t) for a remainder r in [0, 2^t). Memoized.
pub fn mu_of(k: usize, r: usize) -> Result<u64> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), u64>>> = OnceLock::new();
    let period = 1usize << period_exponent(k);
    if r >= period {
        return Err(Error::InvalidInput(format!(
            "remainder {r} out of range for period {period} (k = {k})"
        )));
    }
    let cache = CACHE.get_or_init(Mutex::default);
    if let Some(&v) = cache.lock().unwrap().get(&(k, r)) {
        return Ok(v);
    }
    let v = weight_bruteforce(k, r + period)?;
    cache.lock().unwrap().insert((k, r), v);
    Ok(v)
}

/// Parameters of the recurrence decomposition, absent for the degenerate
/// seeds e_0 and e_{n−1} whose weight is n directly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremParams {
    /// min(k, n−1−k); the index after mirror-symmetry reduction.
    pub k_effective: usize,
    pub t: u32,
    pub period: usize,
    pub q: usize,
    pub r: usize,
    pub lambda: u64,
    pub mu: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FastWeightBreakdown {
    pub k: usize,
    pub n: usize,
    pub weight: u64,
    pub params: Option<TheoremParams>,
}

/// w(k, n) via the per-period recurrence instead of building the triangle.
///
/// The mirror symmetry w(k, n) = w(n−1−k, n) reduces k to
/// min(k, n−1−k), for which n ≥ 2k+1 always holds.
pub fn weight_fast(k: usize, n: usize) -> Result<FastWeightBreakdown> {
    if n == 0 || k > n - 1 {
        return Err(Error::InvalidInput(format!(
            "basis index {k} out of range for size {n}"
        )));
    }
    let k_eff = k.min(n - 1 - k);
    if k_eff == 0 {
        // T(0, n) has a single 1 per row, so w = n; same for e_{n-1}.
        return Ok(FastWeightBreakdown {
            k,
            n,
            weight: n as u64,
            params: None,
        });
    }
    let t = period_exponent(k_eff);
    let period = 1usize << t;
    let q = n / period;
    let r = n % period;
    let lambda = lambda_of(k_eff);
    let mu = mu_of(k_eff, r)?;
    Ok(FastWeightBreakdown {
        k,
        n,
        weight: (q as u64 - 1) * lambda + mu,
        params: Some(TheoremParams {
            k_effective: k_eff,
            t,
            period,
            q,
            r,
            lambda,
            mu,
        }),
    })
}

/// One row of the λ/μ table: all remainder values for a fixed k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaMuRow {
    pub k: usize,
    pub t: u32,
    pub lambda: u64,
    pub mu: Vec<u64>,
}

pub fn lambda_mu_table(k_max: usize) -> Result<Vec<LambdaMuRow>> {
    if k_max < 1 {
        return Err(Error::InvalidInput("k_max must be at least 1".into()));
    }
    (1..=k_max)
        .map(|k| {
            let t = period_exponent(k);
            let mu = (0..1usize << t)
                .map(|r| mu_of(k, r))
                .collect::<Result<Vec<_>>>()?;
            Ok(LambdaMuRow {
                k,
                t,
                lambda: lambda_of(k),
                mu,
            })
        })
        .collect()
}

/// Checks w(k, n) − w(k, n−2^t) = λ(k) on the recurrence's domain.
pub fn recurrence_check(k: usize, n: usize) -> Result<bool> {
    if k < 1 {
        return Err(Error::InvalidInput("recurrence requires k >= 1".into()));
    }
    let period = 1usize << period_exponent(k);
    if n < period || n - period < 2 * k + 1 {
        return Err(Error::InvalidInput(format!(
            "recurrence needs n - {period} >= {}, got n = {n}",
            2 * k + 1
        )));
    }
    let diff = weight_fast(k, n)?.weight - weight_fast(k, n - period)?.weight;
    Ok(diff == lambda_of(k))
}

// ---------------------------------------------------------------------------
// Exact arithmetic in Q(sqrt 2)
// ---------------------------------------------------------------------------

/// An element a + b·√2 with rational a, b. Closed under the ring operations,
/// and exactly represents cos(mπ/4) and sin(mπ/4) for integer m.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadExt {
    pub rational: Ratio<i64>,
    pub sqrt2: Ratio<i64>,
}

impl QuadExt {
    pub const ZERO: QuadExt = QuadExt {
        rational: Ratio::new_raw(0, 1),
        sqrt2: Ratio::new_raw(0, 1),
    };

    pub fn new(rational: Ratio<i64>, sqrt2: Ratio<i64>) -> Self {
        Self { rational, sqrt2 }
    }

    pub fn from_int(v: i64) -> Self {
        Self::new(Ratio::from_integer(v), Ratio::from_integer(0))
    }

    /// Integer coefficients of a + b√2.
    pub fn from_pair(a: i64, b: i64) -> Self {
        Self::new(Ratio::from_integer(a), Ratio::from_integer(b))
    }

    pub fn to_integer(self) -> Option<i64> {
        (self.sqrt2 == Ratio::from_integer(0) && self.rational.is_integer())
            .then(|| self.rational.to_integer())
    }

    pub fn to_f64(self) -> f64 {
        ratio_f64(self.rational) + ratio_f64(self.sqrt2) * std::f64::consts::SQRT_2
    }
}

fn ratio_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

impl std::ops::Add for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: QuadExt) -> QuadExt {
        QuadExt::new(self.rational + rhs.rational, self.sqrt2 + rhs.sqrt2)
    }
}

impl std::ops::Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: QuadExt) -> QuadExt {
        // (a + b√2)(c + d√2) = ac + 2bd + (ad + bc)√2
        QuadExt::new(
            self.rational * rhs.rational + self.sqrt2 * rhs.sqrt2 * Ratio::from_integer(2),
            self.rational * rhs.sqrt2 + self.sqrt2 * rhs.rational,
        )
    }
}

/// cos(mπ/4), exact, keyed on m mod 8.
pub fn cos_eighth(m: usize) -> QuadExt {
    let half = Ratio::new(1, 2);
    match m % 8 {
        0 => QuadExt::from_int(1),
        1 | 7 => QuadExt::new(Ratio::from_integer(0), half),
        2 | 6 => QuadExt::ZERO,
        3 | 5 => QuadExt::new(Ratio::from_integer(0), -half),
        _ => QuadExt::from_int(-1),
    }
}

/// sin(mπ/4), exact, keyed on m mod 8.
pub fn sin_eighth(m: usize) -> QuadExt {
    let half = Ratio::new(1, 2);
    match m % 8 {
        0 | 4 => QuadExt::ZERO,
        1 | 3 => QuadExt::new(Ratio::from_integer(0), half),
        2 => QuadExt::from_int(1),
        5 | 7 => QuadExt::new(Ratio::from_integer(0), -half),
        _ => QuadExt::from_int(-1),
    }
}

// ---------------------------------------------------------------------------
// Printed closed forms for k = 1..7
// ---------------------------------------------------------------------------

/// One trigonometric term of a closed form: coefficients of cos(j·nπ/4) and
/// sin(j·nπ/4), each an integer pair (a, b) meaning a + b√2.
#[derive(Clone, Copy, Debug)]
struct TrigTerm {
    j: usize,
    cos: (i64, i64),
    sin: (i64, i64),
}

#[derive(Clone, Copy, Debug)]
struct Formula {
    denominator: i64,
    constant: i64,
    linear: i64,
    terms: &'static [TrigTerm],
}

const fn term(j: usize, cos: (i64, i64), sin: (i64, i64)) -> TrigTerm {
    TrigTerm { j, cos, sin }
}

/// w(1,n) .. w(7,n) as printed, with (−1)^n written as cos(4·nπ/4).
static FORMULAS: [Formula; 7] = [
    Formula {
        denominator: 4,
        constant: -5,
        linear: 6,
        terms: &[term(4, (1, 0), (0, 0))],
    },
    Formula {
        denominator: 4,
        constant: -13,
        linear: 8,
        terms: &[term(4, (-1, 0), (0, 0)), term(2, (2, 0), (0, 0))],
    },
    Formula {
        denominator: 8,
        constant: -45,
        linear: 18,
        terms: &[term(4, (3, 0), (0, 0)), term(2, (2, 0), (6, 0))],
    },
    Formula {
        denominator: 8,
        constant: -71,
        linear: 22,
        terms: &[
            term(4, (-3, 0), (0, 0)),
            term(1, (4, 2), (0, 0)),
            term(2, (-6, 0), (2, 0)),
            term(3, (4, -2), (0, 0)),
        ],
    },
    Formula {
        denominator: 16,
        constant: -196,
        linear: 48,
        terms: &[
            term(1, (4, 3), (2, 3)),
            term(2, (-2, 0), (-6, 0)),
            term(3, (4, -3), (-2, 3)),
            term(4, (8, 0), (0, 0)),
            term(5, (4, -3), (2, -3)),
            term(6, (-2, 0), (6, 0)),
            term(7, (4, 3), (-2, -3)),
        ],
    },
    Formula {
        denominator: 8,
        constant: -128,
        linear: 26,
        terms: &[
            term(1, (1, 1), (4, 2)),
            term(2, (4, 0), (-1, 0)),
            term(3, (1, -1), (-4, 2)),
            term(4, (-4, 0), (0, 0)),
            term(5, (1, -1), (4, -2)),
            term(6, (4, 0), (1, 0)),
            term(7, (1, 1), (-4, -2)),
        ],
    },
    Formula {
        denominator: 16,
        constant: -315,
        linear: 54,
        terms: &[
            term(1, (-1, -3), (7, 6)),
            term(2, (3, 0), (9, 0)),
            term(3, (-1, 3), (-7, 6)),
            term(4, (9, 0), (0, 0)),
            term(5, (-1, 3), (7, -6)),
            term(6, (3, 0), (-9, 0)),
            term(7, (-1, -3), (-7, -6)),
        ],
    },
];

/// Evaluates the printed formula for w(k, n), k in 1..=7, exactly in Q(√2).
pub fn closed_form_paper(k: usize, n: usize) -> Result<u64> {
    if !(1..=7).contains(&k) {
        return Err(Error::InvalidInput(format!(
            "printed closed forms cover k in 1..=7, got {k}"
        )));
    }
    if n < 2 * k + 1 {
        return Err(Error::InvalidInput(format!(
            "closed form for k = {k} requires n >= {}, got {n}",
            2 * k + 1
        )));
    }
    let f = &FORMULAS[k - 1];
    let mut acc = QuadExt::from_int(f.constant) + QuadExt::from_int(f.linear * n as i64);
    for t in f.terms {
        let m = t.j * n;
        acc = acc
            + QuadExt::from_pair(t.cos.0, t.cos.1) * cos_eighth(m)
            + QuadExt::from_pair(t.sin.0, t.sin.1) * sin_eighth(m);
    }
    let scaled = QuadExt::new(
        acc.rational / Ratio::from_integer(f.denominator),
        acc.sqrt2 / Ratio::from_integer(f.denominator),
    );
    match scaled.to_integer() {
        Some(v) if v >= 0 => Ok(v as u64),
        _ => Err(Error::NonInteger(format!(
            "w({k},{n}) evaluated to {:?}",
            scaled
        ))),
    }
}

// ---------------------------------------------------------------------------
// Coefficient derivation from the recurrence
// ---------------------------------------------------------------------------

/// Solution-form coefficients of the weight recurrence for a fixed k:
/// w(k, n) = A0 + A1·n + Σ_j B_j·α^(jn) over the 2^t-th roots of unity α^j,
/// together with the equivalent per-residue affine table.
#[derive(Clone, Debug)]
pub struct ClosedFormSpec {
    pub k: usize,
    pub period: usize,
    pub a0: Ratio<i64>,
    pub a1: Ratio<i64>,
    /// B_1 .. B_{period−1}; B_0 is `a0`.
    pub b: Vec<Complex64>,
    /// Per residue r: (slope, intercept) with w(k, n) = slope·n + intercept
    /// for n ≡ r (mod period), n ≥ period.
    pub residue_table: Vec<(Ratio<i64>, Ratio<i64>)>,
}

impl ClosedFormSpec {
    /// Exact evaluation through the residue table.
    pub fn evaluate_exact(&self, n: usize) -> Result<u64> {
        if n < self.period {
            return Err(Error::InvalidInput(format!(
                "closed form for k = {} applies for n >= {}, got {n}",
                self.k, self.period
            )));
        }
        let (slope, intercept) = self.residue_table[n % self.period];
        let v = slope * Ratio::from_integer(n as i64) + intercept;
        v.is_integer()
            .then(|| v.to_integer() as u64)
            .ok_or_else(|| Error::NonInteger(format!("w({},{n}) = {v}", self.k)))
    }

    /// Evaluation through the complex solution form, snapped to the nearest
    /// integer; errors if the snap exceeds 1e-9.
    pub fn evaluate_trig(&self, n: usize) -> Result<u64> {
        let mut acc = Complex64::new(ratio_f64(self.a0) + ratio_f64(self.a1) * n as f64, 0.0);
        for (idx, b) in self.b.iter().enumerate() {
            let j = idx + 1;
            let theta = TAU * (j * n % self.period) as f64 / self.period as f64;
            acc += b * Complex64::new(theta.cos(), theta.sin());
        }
        let rounded = acc.re.round();
        if (acc.re - rounded).abs() > 1e-9 || acc.im.abs() > 1e-9 || rounded < 0.0 {
            return Err(Error::NonInteger(format!(
                "w({},{n}) evaluated to {acc}",
                self.k
            )));
        }
        Ok(rounded as u64)
    }

    /// Real amplitudes per frequency j in 1..=period/2: the coefficients of
    /// cos(2πjn/period) and sin(2πjn/period) after pairing B_j with its
    /// conjugate partner B_{period−j}.
    pub fn amplitudes(&self) -> Vec<(f64, f64)> {
        (1..=self.period / 2)
            .map(|j| {
                let b = self.b[j - 1];
                if j == self.period - j {
                    (b.re, 0.0)
                } else {
                    (2.0 * b.re, -2.0 * b.im)
                }
            })
            .collect()
    }
}

/// Builds the closed form for any k ≥ 1 from λ and the μ values.
///
/// For n = q·2^t + r with q ≥ 1, w(k, n) = μ_r + (q−1)λ, which is affine in
/// n with slope λ/2^t; the residue intercepts are interpolated over the
/// roots of unity by an inverse DFT to recover A0 and the B_j.
pub fn derive_closed_form(k: usize) -> Result<ClosedFormSpec> {
    if k < 1 {
        return Err(Error::InvalidInput("closed forms require k >= 1".into()));
    }
    let period = 1usize << period_exponent(k);
    let lambda = lambda_of(k) as i64;
    let slope = Ratio::new(lambda, period as i64);
    let mut intercepts = Vec::with_capacity(period);
    for r in 0..period {
        let mu = mu_of(k, r)? as i64;
        intercepts.push(Ratio::from_integer(mu - lambda) - slope * Ratio::from_integer(r as i64));
    }
    let a0 = intercepts.iter().sum::<Ratio<i64>>() / Ratio::from_integer(period as i64);
    // B_j = (1/P) Σ_r c_r · α^(−jr)
    let b = (1..period)
        .map(|j| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (r, c) in intercepts.iter().enumerate() {
                let theta = -TAU * (j * r % period) as f64 / period as f64;
                acc += ratio_f64(*c) * Complex64::new(theta.cos(), theta.sin());
            }
            acc / period as f64
        })
        .collect();
    let residue_table = intercepts.into_iter().map(|c| (slope, c)).collect();
    Ok(ClosedFormSpec {
        k,
        period,
        a0,
        a1: slope,
        b,
        residue_table,
    })
}

/// Side-by-side comparison of a derived spec with the printed formula.
#[derive(Clone, Debug)]
pub struct CoefficientReport {
    pub k: usize,
    pub a0: (f64, f64),
    pub a1: (f64, f64),
    /// Per frequency j in 1..=period/2: ((cos ours, cos paper), (sin ours, sin paper)).
    pub amplitudes: Vec<((f64, f64), (f64, f64))>,
    pub matches: bool,
}

/// Canonical (A0, A1, amplitude) form of the printed formula for k ≤ 7.
///
/// Frequencies above the Nyquist index fold back: for integer n,
/// cos(jnπ/4) = cos((8−j)nπ/4) and sin(jnπ/4) = −sin((8−j)nπ/4).
fn paper_amplitudes(k: usize, period: usize) -> (f64, f64, Vec<(f64, f64)>) {
    let f = &FORMULAS[k - 1];
    let denom = f.denominator as f64;
    let mut cos_amp = vec![0.0; period / 2 + 1];
    let mut sin_amp = vec![0.0; period / 2 + 1];
    for t in f.terms {
        let (j8, fold) = if t.j <= 4 {
            (t.j, 1.0)
        } else {
            (8 - t.j, -1.0)
        };
        let jc = j8 * period / 8;
        cos_amp[jc] += QuadExt::from_pair(t.cos.0, t.cos.1).to_f64() / denom;
        sin_amp[jc] += fold * QuadExt::from_pair(t.sin.0, t.sin.1).to_f64() / denom;
    }
    let amps = (1..=period / 2).map(|j| (cos_amp[j], sin_amp[j])).collect();
    (f.constant as f64 / denom, f.linear as f64 / denom, amps)
}

/// Compares derived coefficients with the printed formulas; `None` for k > 7.
pub fn compare_with_paper(spec: &ClosedFormSpec) -> Option<CoefficientReport> {
    if !(1..=7).contains(&spec.k) {
        return None;
    }
    let (a0_paper, a1_paper, paper_amps) = paper_amplitudes(spec.k, spec.period);
    let ours = spec.amplitudes();
    let tol = 1e-9;
    let mut matches = (ratio_f64(spec.a0) - a0_paper).abs() <= tol
        && (ratio_f64(spec.a1) - a1_paper).abs() <= tol;
    let mut amplitudes = Vec::with_capacity(ours.len());
    for ((oc, os), (pc, ps)) in ours.iter().zip(&paper_amps) {
        matches &= (oc - pc).abs() <= tol && (os - ps).abs() <= tol;
        amplitudes.push(((*oc, *pc), (*os, *ps)));
    }
    Some(CoefficientReport {
        k: spec.k,
        a0: (ratio_f64(spec.a0), a0_paper),
        a1: (ratio_f64(spec.a1), a1_paper),
        amplitudes,
        matches,
    })
}
