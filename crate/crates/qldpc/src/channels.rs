//! Noise channels: sampling X/Z error patterns and the priors a decoder
//! should use for each.
//!
//! Three models are supported: independent X and Z flips with a common
//! marginal (a pair of binary symmetric channels), the uniform four-state
//! channel where X, Y, Z each occur with probability f/3 (Y sets both
//! components), and a reliability-diversity channel where each qubit gets
//! its own known flip probability derived from a Gaussian draw.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::gf2::BitVec;
use crate::{Error, Result};

/// Smallest prior ever handed to a decoder; avoids log(0) downstream.
pub const PRIOR_FLOOR: f64 = 1e-30;

/// A noise model with validated parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelModel {
    /// Independent X and Z flips, each with probability `f_m`.
    BscPair { f_m: f64 },
    /// X, Y, Z each with probability `f / 3`; Y flips both components.
    FourArySymmetric { f: f64 },
    /// Per-qubit reliability: y ~ Normal(1, sigma), flip probability
    /// 1 / (1 + exp(2|y| / sigma^2)) applied independently to X and Z.
    GaussianDiversity { sigma: f64 },
}

impl ChannelModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ChannelModel::BscPair { f_m } => {
                if !(0.0..=0.5).contains(&f_m) {
                    return Err(Error::InvalidChannel(format!(
                        "bscpair needs 0 <= fm <= 0.5, got {f_m}"
                    )));
                }
            }
            ChannelModel::FourArySymmetric { f } => {
                if !(0.0..=0.75).contains(&f) {
                    return Err(Error::InvalidChannel(format!(
                        "4ary needs 0 <= f <= 0.75, got {f}"
                    )));
                }
            }
            ChannelModel::GaussianDiversity { sigma } => {
                if !(sigma > 0.0) {
                    return Err(Error::InvalidChannel(format!(
                        "gauss needs sigma > 0, got {sigma}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Marginal flip probability per error component: the common x-axis
    /// all benchmark plots share.
    pub fn marginal_fm(&self) -> f64 {
        match *self {
            ChannelModel::BscPair { f_m } => f_m,
            ChannelModel::FourArySymmetric { f } => 2.0 * f / 3.0,
            ChannelModel::GaussianDiversity { sigma } => phi_upper(1.0 / sigma),
        }
    }

    /// Per-qubit joint table P(e_x, e_z). Product form for the two
    /// component-independent channels (using the reliability-averaged
    /// marginal for the diversity model); genuinely correlated for the
    /// four-state channel.
    pub fn joint_prior(&self) -> JointTable {
        match *self {
            ChannelModel::FourArySymmetric { f } => JointTable {
                p00: 1.0 - f,
                p10: f / 3.0,
                p01: f / 3.0,
                p11: f / 3.0,
            },
            _ => {
                let f = self.marginal_fm();
                JointTable {
                    p00: (1.0 - f) * (1.0 - f),
                    p10: f * (1.0 - f),
                    p01: (1.0 - f) * f,
                    p11: f * f,
                }
            }
        }
    }
}

impl fmt::Display for ChannelModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ChannelModel::BscPair { f_m } => write!(f, "bscpair:fm={f_m}"),
            ChannelModel::FourArySymmetric { f: p } => write!(f, "4ary:f={p}"),
            ChannelModel::GaussianDiversity { sigma } => write!(f, "gauss:sigma={sigma}"),
        }
    }
}

impl FromStr for ChannelModel {
    type Err = Error;

    /// Parse `bscpair:fm=0.02`, `4ary:f=0.03`, or `gauss:sigma=1.0`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidChannel(format!(
            "cannot parse '{s}' (expected bscpair:fm=.., 4ary:f=.., or gauss:sigma=..)"
        ));
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        let (key, value) = rest.split_once('=').ok_or_else(bad)?;
        let value: f64 = value.parse().map_err(|_| bad())?;
        let model = match (kind, key) {
            ("bscpair", "fm") => ChannelModel::BscPair { f_m: value },
            ("4ary", "f") => ChannelModel::FourArySymmetric { f: value },
            ("gauss", "sigma") => ChannelModel::GaussianDiversity { sigma: value },
            _ => return Err(bad()),
        };
        model.validate()?;
        Ok(model)
    }
}

/// Joint per-qubit error-component table P(e_x, e_z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointTable {
    pub p00: f64,
    pub p10: f64,
    pub p01: f64,
    pub p11: f64,
}

impl JointTable {
    pub fn sum(&self) -> f64 {
        self.p00 + self.p10 + self.p01 + self.p11
    }

    /// P(e_x = 1).
    pub fn marginal_x(&self) -> f64 {
        self.p10 + self.p11
    }

    /// P(e_z = 1).
    pub fn marginal_z(&self) -> f64 {
        self.p01 + self.p11
    }
}

/// Decoder-facing prior description attached to each sampled pattern.
#[derive(Debug, Clone, PartialEq)]
pub enum Priors {
    /// One flip probability for every qubit and both components.
    Marginal { f: f64 },
    /// One joint component table for every qubit.
    Joint(JointTable),
    /// Known per-qubit flip probabilities, same for both components.
    Diversity { f: Vec<f64> },
}

impl Priors {
    /// Flip probability of one component at one qubit.
    pub fn component_prior(&self, qubit: usize) -> f64 {
        match self {
            Priors::Marginal { f } => *f,
            Priors::Joint(t) => t.marginal_x(),
            Priors::Diversity { f } => f[qubit],
        }
    }
}

/// One sampled error with the priors that generated it.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorPattern {
    pub e_x: BitVec,
    pub e_z: BitVec,
    pub priors: Priors,
}

/// Flip probability of a Gaussian-reliability qubit with raw draw `y`:
/// 1 / (1 + exp(2|y| / sigma^2)), floored away from zero. Always in
/// (0, 1/2].
pub fn diversity_flip_probability(y: f64, sigma: f64) -> f64 {
    let t = 2.0 * y.abs() / (sigma * sigma);
    let f = 1.0 / (1.0 + t.exp());
    f.max(PRIOR_FLOOR)
}

/// Draw one error pattern of length `n`.
///
/// Draw order is fixed for reproducibility: qubits in ascending order;
/// per qubit, the BSC pair draws the X flip then the Z flip; the
/// four-state channel draws one uniform selector; the diversity channel
/// draws y, then the X flip, then the Z flip.
pub fn sample<R: Rng>(channel: &ChannelModel, n: usize, rng: &mut R) -> Result<ErrorPattern> {
    channel.validate()?;
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one qubit".into()));
    }
    let mut e_x = BitVec::zeros(n);
    let mut e_z = BitVec::zeros(n);
    let priors = match *channel {
        ChannelModel::BscPair { f_m } => {
            for j in 0..n {
                if rng.gen_bool(f_m) {
                    e_x.set(j, true);
                }
                if rng.gen_bool(f_m) {
                    e_z.set(j, true);
                }
            }
            Priors::Marginal { f: f_m }
        }
        ChannelModel::FourArySymmetric { f } => {
            for j in 0..n {
                let u: f64 = rng.gen();
                if u < f / 3.0 {
                    e_x.set(j, true); // X
                } else if u < 2.0 * f / 3.0 {
                    e_x.set(j, true); // Y: both components
                    e_z.set(j, true);
                } else if u < f {
                    e_z.set(j, true); // Z
                }
            }
            Priors::Joint(channel.joint_prior())
        }
        ChannelModel::GaussianDiversity { sigma } => {
            let normal = Normal::new(1.0, sigma)
                .map_err(|e| Error::InvalidChannel(e.to_string()))?;
            let mut f = Vec::with_capacity(n);
            for j in 0..n {
                let y = normal.sample(rng);
                let fj = diversity_flip_probability(y, sigma);
                if rng.gen_bool(fj) {
                    e_x.set(j, true);
                }
                if rng.gen_bool(fj) {
                    e_z.set(j, true);
                }
                f.push(fj);
            }
            Priors::Diversity { f }
        }
    };
    Ok(ErrorPattern { e_x, e_z, priors })
}

/// Uniformly random bit pattern of exact weight `w` (used for controlled
/// decoder stress tests).
pub fn random_fixed_weight<R: Rng>(n: usize, w: usize, rng: &mut R) -> Result<BitVec> {
    if w > n {
        return Err(Error::InvalidArgument(format!(
            "weight {w} exceeds length {n}"
        )));
    }
    let mut v = BitVec::zeros(n);
    for j in rand::seq::index::sample(rng, n, w) {
        v.set(j, true);
    }
    Ok(v)
}

/// Complementary error function, accurate to better than 1e-10 absolute:
/// alternating Maclaurin series below 2.5, Lentz continued fraction above.
pub fn erfc(x: f64) -> f64 {
    if x < 0.0 {
        return 2.0 - erfc(-x);
    }
    if x < 2.5 {
        // erf(x) = 2/sqrt(pi) * sum (-1)^k x^(2k+1) / (k!(2k+1))
        let mut term = x;
        let mut sum = x;
        let mut k = 0u32;
        loop {
            k += 1;
            term *= -x * x / k as f64;
            let add = term / (2 * k + 1) as f64;
            sum += add;
            if add.abs() < 1e-18 * sum.abs().max(1e-300) || k > 200 {
                break;
            }
        }
        1.0 - 2.0 / std::f64::consts::PI.sqrt() * sum
    } else {
        // erfc(x) = exp(-x^2)/sqrt(pi) * F with the continued fraction
        // F = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))): partial
        // numerators a_1 = 1, a_k = (k-1)/2; denominators all x.
        // Evaluated by the modified Lentz recurrence.
        let tiny = 1e-300;
        let mut f = tiny;
        let mut c = f;
        let mut d = 0.0f64;
        for k in 1..200 {
            let a = if k == 1 { 1.0 } else { (k - 1) as f64 / 2.0 };
            d = x + a * d;
            if d.abs() < tiny {
                d = tiny;
            }
            c = x + a / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = 1.0 / d;
            let delta = c * d;
            f *= delta;
            if (delta - 1.0).abs() < 1e-16 {
                break;
            }
        }
        (-x * x).exp() / std::f64::consts::PI.sqrt() * f
    }
}

/// Upper tail of the standard normal: P(Z > z).
pub fn phi_upper(z: f64) -> f64 {
    0.5 * erfc(z / std::f64::consts::SQRT_2)
}
