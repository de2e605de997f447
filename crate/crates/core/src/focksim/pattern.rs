use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Photon occupation numbers `(n_1, ..., n_m)`, one entry per mode.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OutcomePattern(Vec<usize>);

impl OutcomePattern {
    pub fn new(occupations: Vec<usize>) -> Self {
        Self(occupations)
    }

    /// One photon in each of the first `photons` modes, zero in the rest.
    pub fn leading_ones(modes: usize, photons: usize) -> Self {
        Self((0..modes).map(|i| usize::from(i < photons)).collect())
    }

    /// One photon in each mode of `range`, zero elsewhere.
    pub fn ones_in(modes: usize, range: std::ops::Range<usize>) -> Self {
        Self((0..modes).map(|i| usize::from(range.contains(&i))).collect())
    }

    pub fn occupations(&self) -> &[usize] {
        &self.0
    }

    pub fn modes(&self) -> usize {
        self.0.len()
    }

    pub fn photons(&self) -> usize {
        self.0.iter().sum()
    }

    /// At most one photon per mode.
    pub fn is_collision_free(&self) -> bool {
        self.0.iter().all(|&n| n <= 1)
    }

    /// Mode indices in ascending order, each repeated by its occupation.
    pub fn mode_list(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &n)| std::iter::repeat_n(i, n))
            .collect()
    }

    /// `prod_i n_i!`
    pub fn factorial_product(&self) -> f64 {
        self.0
            .iter()
            .map(|&n| (1..=n).map(|k| k as f64).product::<f64>())
            .product()
    }
}

/// Occupations joined by `-`, e.g. `1-0-2`.
impl fmt::Display for OutcomePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join("-"))
    }
}

impl FromStr for OutcomePattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split('-')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("pattern {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse() {
        let p = OutcomePattern::new(vec![1, 0, 2]);
        assert_eq!(p.to_string(), "1-0-2");
        assert_eq!("1-0-2".parse::<OutcomePattern>().unwrap(), p);
        assert_eq!(p.mode_list(), vec![0, 2, 2]);
        assert_eq!(p.factorial_product(), 2.0);
        assert!(!p.is_collision_free());
    }

    #[test]
    fn standard_patterns() {
        assert_eq!(OutcomePattern::leading_ones(4, 2).occupations(), &[1, 1, 0, 0]);
        assert_eq!(OutcomePattern::ones_in(6, 2..4).occupations(), &[0, 0, 1, 1, 0, 0]);
    }
}
