//! Closed-form benchmark rates and counting estimates.
//!
//! Everything here is a pure formula: channel capacities and random-coding
//! (Gilbert-Varshamov style) rates for the binary symmetric and uniform
//! four-state channels, their quantum counterparts obtained by the rate map
//! R -> 2R - 1, a low-weight-codeword error estimate, and two sign tests
//! that govern when sparse self-orthogonal constructions can exist.

use num_traits::Float;

use crate::{Error, Result};

/// Binary entropy in bits, with the limit convention 0 log 0 = 0.
pub fn h2<F: Float>(p: F) -> F {
    assert!(
        p >= F::zero() && p <= F::one(),
        "entropy argument must be a probability"
    );
    if p == F::zero() || p == F::one() {
        return F::zero();
    }
    let q = F::one() - p;
    -(p * p.log2() + q * q.log2())
}

/// A named benchmark curve, each a function of the marginal flip
/// probability per bit (or, for `C4`, the total four-state flip
/// probability).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RateCurve {
    /// Capacity of the binary symmetric channel: 1 - H2(f).
    CBsc,
    /// Random-coding (GV) rate on the BSC: 1 - H2(2f).
    RGv,
    /// Capacity of the uniform four-state channel, per symbol:
    /// 2 - (H2(f) + f log2 3); argument is the total flip probability.
    C4,
    /// Four-state capacity rescaled to two binary uses with marginal f:
    /// C4(3f/2) / 2.
    C4B,
    /// Two-state benchmark mapped to quantum rate: 1 - 2 H2(f). Not a
    /// channel-capacity statement; a comparison curve for R_Q = 2R - 1.
    CqBsc,
    /// GV rate mapped to quantum rate: 1 - 2 H2(2f).
    RqGv,
    /// Four-state benchmark mapped to quantum rate:
    /// 1 - (H2(3f/2) + (3f/2) log2 3).
    C4Q,
    /// GV-style rate for additive four-state codes, quantum-mapped:
    /// 1 - (H2(2f) + 2f log2 3).
    RqGv4,
}

impl RateCurve {
    pub const ALL: [RateCurve; 8] = [
        RateCurve::CBsc,
        RateCurve::RGv,
        RateCurve::C4,
        RateCurve::C4B,
        RateCurve::CqBsc,
        RateCurve::RqGv,
        RateCurve::C4Q,
        RateCurve::RqGv4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RateCurve::CBsc => "c_bsc",
            RateCurve::RGv => "r_gv",
            RateCurve::C4 => "c4",
            RateCurve::C4B => "c4b",
            RateCurve::CqBsc => "cq_bsc",
            RateCurve::RqGv => "rq_gv",
            RateCurve::C4Q => "c4q",
            RateCurve::RqGv4 => "rq_gv4",
        }
    }

    /// Half-open or closed domain of the argument, as (lo, hi, closed).
    fn domain(self) -> (f64, f64, bool) {
        match self {
            RateCurve::CBsc | RateCurve::C4B | RateCurve::CqBsc | RateCurve::C4Q => {
                (0.0, 0.5, true)
            }
            RateCurve::C4 => (0.0, 0.75, true),
            RateCurve::RGv | RateCurve::RqGv => (0.0, 0.25, false),
            RateCurve::RqGv4 => (0.0, 1.0 / 6.0, false),
        }
    }
}

impl std::fmt::Display for RateCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for RateCurve {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RateCurve::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown curve '{s}' (expected one of {})",
                    RateCurve::ALL.map(|c| c.name()).join(", ")
                ))
            })
    }
}

/// One sampled point of a benchmark curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePoint<F> {
    pub f_m: F,
    pub value: F,
}

/// Evaluate a benchmark curve; errors outside its domain name the curve.
pub fn rate_curve<F: Float>(curve: RateCurve, f_m: F) -> Result<F> {
    let v = f_m.to_f64().unwrap_or(f64::NAN);
    let (lo, hi, closed) = curve.domain();
    let inside = if closed {
        v >= lo && v <= hi
    } else {
        v > lo && v < hi
    };
    if !inside {
        return Err(Error::CurveDomain {
            name: curve.name().to_string(),
            value: v,
        });
    }
    let one = F::one();
    let two = one + one;
    let half = one / two;
    let log2_3 = F::from(3.0).unwrap().log2();
    let three_halves = F::from(1.5).unwrap();
    Ok(match curve {
        RateCurve::CBsc => one - h2(f_m),
        RateCurve::RGv => one - h2(two * f_m),
        RateCurve::C4 => two - (h2(f_m) + f_m * log2_3),
        RateCurve::C4B => {
            let f = three_halves * f_m;
            half * (two - (h2(f) + f * log2_3))
        }
        RateCurve::CqBsc => one - two * h2(f_m),
        RateCurve::RqGv => one - two * h2(two * f_m),
        RateCurve::C4Q => {
            let f = three_halves * f_m;
            one - (h2(f) + f * log2_3)
        }
        RateCurve::RqGv4 => one - (h2(two * f_m) + two * f_m * log2_3),
    })
}

/// Sample `steps + 1` evenly spaced points of a curve on [lo, hi].
pub fn sample_curve<F: Float>(
    curve: RateCurve,
    lo: F,
    hi: F,
    steps: usize,
) -> Result<Vec<RatePoint<F>>> {
    if steps == 0 || !(lo < hi) {
        return Err(Error::InvalidArgument(
            "need lo < hi and at least one step".into(),
        ));
    }
    let mut out = Vec::with_capacity(steps + 1);
    for i in 0..=steps {
        let t = F::from(i).unwrap() / F::from(steps).unwrap();
        let f_m = lo + (hi - lo) * t;
        out.push(RatePoint {
            f_m,
            value: rate_curve(curve, f_m)?,
        });
    }
    Ok(out)
}

/// Bisection root finder to absolute tolerance `tol` in the argument.
/// Requires a sign change on [lo, hi].
pub fn bisect<F, G>(g: G, mut lo: F, mut hi: F, tol: F) -> Result<F>
where
    F: Float,
    G: Fn(F) -> Result<F>,
{
    if !(lo < hi) || tol <= F::zero() {
        return Err(Error::InvalidArgument(
            "need lo < hi and positive tolerance".into(),
        ));
    }
    let mut g_lo = g(lo)?;
    let g_hi = g(hi)?;
    if (g_lo > F::zero()) == (g_hi > F::zero()) {
        return Err(Error::InvalidArgument(
            "no sign change on the bracketing interval".into(),
        ));
    }
    while hi - lo > tol {
        let mid = (lo + hi) / (F::one() + F::one());
        let g_mid = g(mid)?;
        if (g_mid > F::zero()) == (g_lo > F::zero()) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) / (F::one() + F::one()))
}

/// Largest argument at which a curve is still positive, to 1e-5.
pub fn curve_root<F: Float>(curve: RateCurve) -> Result<F> {
    let (lo, hi, closed) = curve.domain();
    let eps = 1e-9;
    let (lo, hi) = if closed {
        (lo, hi)
    } else {
        (lo + eps, hi - eps)
    };
    bisect(
        |f| rate_curve(curve, f),
        F::from(lo).unwrap(),
        F::from(hi).unwrap(),
        F::from(1e-5).unwrap(),
    )
}

/// Block error contribution of `a` codewords of even weight `d` at flip
/// probability `f`: a * C(d, d/2) * f^(d/2) * (1-f)^(d/2), evaluated in
/// log space so values far below 1e-300 survive intermediate steps.
pub fn single_codeword_error_estimate<F: Float>(a: F, d: u64, f: F) -> Result<F> {
    if d == 0 || d % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "codeword weight must be even and positive, got {d}"
        )));
    }
    if !(f > F::zero() && f < F::one()) {
        return Err(Error::InvalidArgument(
            "flip probability must lie strictly inside (0, 1)".into(),
        ));
    }
    if !(a > F::zero()) {
        return Err(Error::InvalidArgument(
            "codeword count must be positive".into(),
        ));
    }
    let half = d / 2;
    // ln C(d, d/2) = sum ln((d/2 + i) / i)
    let mut ln_binom = F::zero();
    for i in 1..=half {
        ln_binom = ln_binom + (F::from(half + i).unwrap() / F::from(i).unwrap()).ln();
    }
    let ln_e =
        a.ln() + ln_binom + F::from(half).unwrap() * (f.ln() + (F::one() - f).ln());
    Ok(ln_e.exp())
}

/// Bhattacharyya base of the binary symmetric channel: 2 sqrt(f (1-f)).
/// Any single codeword of weight d keeps the error rate above base^d.
pub fn bhattacharyya_bsc<F: Float>(f: F) -> F {
    assert!(
        f >= F::zero() && f <= F::one(),
        "flip probability must be in [0, 1]"
    );
    let two = F::one() + F::one();
    two * (f * (F::one() - f)).sqrt()
}

/// Growth exponent j - j(j-1)/4 for the expected number of low-weight dual
/// words of a random column-weight-j code. Positive means the count grows
/// with block length (only for j < 5).
pub fn dual_count_exponent(j: u32) -> f64 {
    assert!(j >= 1, "column weight must be positive");
    let jf = j as f64;
    jf - jf * (jf - 1.0) / 4.0
}

/// Slack (k-1)(j-1) - k j(j-1)/4 in the degree-of-freedom count for
/// building self-orthogonal (j, k)-regular matrices; negative means the
/// orthogonality constraints outnumber the freedoms.
pub fn freedom_margin(j: u32, k: u32) -> f64 {
    assert!(j >= 1, "column weight must be positive");
    assert!(k >= 2, "row weight must be at least 2");
    let (jf, kf) = (j as f64, k as f64);
    (kf - 1.0) * (jf - 1.0) - kf * jf * (jf - 1.0) / 4.0
}

/// Natural logarithm of the chance that a random column-weight-j code of
/// length `n` with `m` rows is self-orthogonal, modelled as a random-walk
/// return probability: (n j(j-1)/2 / m^2) ^ (n j(j-1)/4).
pub fn count_estimate(j: u32, n: usize, m: usize) -> f64 {
    assert!(j >= 2, "column weight must be at least 2");
    assert!(n >= 1 && m >= 1, "dimensions must be positive");
    let pairs = n as f64 * j as f64 * (j as f64 - 1.0) / 2.0;
    let base = pairs / (m as f64 * m as f64);
    (pairs / 2.0) * base.ln()
}
