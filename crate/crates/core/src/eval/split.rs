use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::rng::{SplitMix64, GOLDEN_GAMMA};

/// Train/test percentages, written `70:30`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SplitRatio {
    pub train_pct: u32,
    pub test_pct: u32,
}

impl SplitRatio {
    pub const STANDARD: [SplitRatio; 3] = [
        SplitRatio::new_unchecked(70, 30),
        SplitRatio::new_unchecked(66, 34),
        SplitRatio::new_unchecked(50, 50),
    ];

    pub fn new(train_pct: u32, test_pct: u32) -> Result<Self, SplitError> {
        if train_pct + test_pct != 100 {
            return Err(SplitError::BadRatio(format!("{train_pct}:{test_pct}")));
        }
        Ok(Self::new_unchecked(train_pct, test_pct))
    }

    const fn new_unchecked(train_pct: u32, test_pct: u32) -> Self {
        Self {
            train_pct,
            test_pct,
        }
    }

    /// Table label, e.g. `70-30`.
    pub fn label(&self) -> String {
        format!("{}-{}", self.train_pct, self.test_pct)
    }

    /// `round(n × train_pct / 100)`, halves rounding up.
    pub fn train_size(&self, n: usize) -> usize {
        (n * self.train_pct as usize + 50) / 100
    }
}

impl fmt::Display for SplitRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.train_pct, self.test_pct)
    }
}

impl FromStr for SplitRatio {
    type Err = SplitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SplitError::BadRatio(s.to_string());
        let (a, b) = s.trim().split_once(':').ok_or_else(bad)?;
        let a: u32 = a.parse().map_err(|_| bad())?;
        let b: u32 = b.parse().map_err(|_| bad())?;
        SplitRatio::new(a, b)
    }
}

impl Serialize for SplitRatio {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SplitRatio {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplitError {
    #[error("invalid split ratio {0:?}: expected A:B with A + B = 100")]
    BadRatio(String),
    #[error("need at least 2 documents to split, got {0}")]
    TooFewDocuments(usize),
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("ratio {ratio} leaves an empty side with {docs} documents")]
    DegenerateSplit { ratio: SplitRatio, docs: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPlan {
    pub ratio: SplitRatio,
    pub trial_index: usize,
    /// The derived per-trial seed.
    pub seed: u64,
    pub train_ids: Vec<String>,
    pub test_ids: Vec<String>,
}

/// Document-level random splits, one per trial.
///
/// Trial `t` shuffles `ids` with a [`SplitMix64`] stream seeded by
/// `seed ^ (t × 0x9E3779B97F4A7C15)` and puts the first
/// [`SplitRatio::train_size`] ids in the training set.
pub fn make_splits<S: AsRef<str>>(
    ids: &[S],
    ratio: SplitRatio,
    trials: usize,
    seed: u64,
) -> Result<Vec<SplitPlan>, SplitError> {
    let n = ids.len();
    if n < 2 {
        return Err(SplitError::TooFewDocuments(n));
    }
    if trials == 0 {
        return Err(SplitError::NoTrials);
    }
    let train_n = ratio.train_size(n);
    if train_n == 0 || train_n == n {
        return Err(SplitError::DegenerateSplit { ratio, docs: n });
    }
    Ok((0..trials)
        .map(|t| {
            let trial_seed = seed ^ (t as u64).wrapping_mul(GOLDEN_GAMMA);
            let mut order: Vec<String> = ids.iter().map(|s| s.as_ref().to_string()).collect();
            SplitMix64::new(trial_seed).shuffle(&mut order);
            let test_ids = order.split_off(train_n);
            SplitPlan {
                ratio,
                trial_index: t,
                seed: trial_seed,
                train_ids: order,
                test_ids,
            }
        })
        .collect())
}
