use std::io::Write;

use rayon::prelude::*;

use super::OutcomePattern;
use crate::encoder::EncodedCircuit;
use crate::error::{Error, Result};
use crate::numkernel::{permanent_exact, ComplexMatrix};

/// Largest number of outcomes [`enumerate_outcomes`] and
/// [`full_distribution`] will materialize.
pub const MAX_OUTCOMES: u128 = 10_000_000;

/// `C(m + n - 1, n)`, the number of ways to place `n` photons in `m` modes.
pub fn outcome_count(modes: usize, photons: usize) -> u128 {
    if modes == 0 {
        return u128::from(photons == 0);
    }
    let mut c: u128 = 1;
    for i in 1..=photons as u128 {
        c = c * (modes as u128 - 1 + i) / i;
    }
    c
}

fn check_budget(modes: usize, photons: usize) -> Result<u128> {
    if modes == 0 {
        return Err(Error::Domain("at least one mode is required".into()));
    }
    let count = outcome_count(modes, photons);
    if count > MAX_OUTCOMES {
        return Err(Error::BudgetExceeded {
            count,
            budget: MAX_OUTCOMES,
        });
    }
    Ok(count)
}

/// Advances `p` to the next composition in descending lexicographic order.
fn next_composition(p: &mut [u8]) -> bool {
    let m = p.len();
    let Some(i) = (0..m.saturating_sub(1)).rev().find(|&i| p[i] > 0) else {
        return false;
    };
    p[i] -= 1;
    let tail: u8 = p[i + 1..].iter().sum();
    p[i + 1..].fill(0);
    p[i + 1] = tail + 1;
    true
}

fn compositions_flat(modes: usize, photons: usize, count: usize) -> Vec<u8> {
    let mut flat = Vec::with_capacity(count * modes);
    let mut cur = vec![0u8; modes];
    cur[0] = photons as u8;
    loop {
        flat.extend_from_slice(&cur);
        if !next_composition(&mut cur) {
            break;
        }
    }
    flat
}

/// All occupation patterns of `photons` photons in `modes` modes, in
/// descending lexicographic order (`(n, 0, ..., 0)` first).
pub fn enumerate_outcomes(modes: usize, photons: usize) -> Result<Vec<OutcomePattern>> {
    let count = check_budget(modes, photons)? as usize;
    if photons > u8::MAX as usize {
        return Err(Error::SizeLimit {
            what: "photon count",
            n: photons,
            limit: u8::MAX as usize,
        });
    }
    Ok(compositions_flat(modes, photons, count)
        .chunks(modes)
        .map(|c| OutcomePattern::new(c.iter().map(|&x| x as usize).collect()))
        .collect())
}

/// `U_{n_in, n}`: row `j` of `U` repeated `outcome[j]` times and column `i`
/// repeated `input[i]` times, both in ascending mode order.
pub fn submatrix(u: &ComplexMatrix, input: &OutcomePattern, outcome: &OutcomePattern) -> Result<ComplexMatrix> {
    let m = u.order()?;
    if input.modes() != m || outcome.modes() != m {
        return Err(Error::Dimension(format!(
            "patterns over {} and {} modes for a {m}-mode unitary",
            input.modes(),
            outcome.modes()
        )));
    }
    let (ni, no) = (input.photons(), outcome.photons());
    if ni != no {
        return Err(Error::PhotonMismatch { input: ni, outcome: no });
    }
    Ok(u.select(&outcome.mode_list(), &input.mode_list()))
}

fn probability_unchecked(u: &ComplexMatrix, rows: &[usize], cols: &[usize], norm: f64) -> f64 {
    let sub = u.select(rows, cols);
    permanent_exact(&sub).map(|p| p.norm_sqr() / norm).unwrap_or(f64::NAN)
}

/// `|Per(U_{n_in, n})|^2 / (prod n_in! prod n!)`.
pub fn outcome_probability(circuit: &EncodedCircuit, input: &OutcomePattern, outcome: &OutcomePattern) -> Result<f64> {
    let sub = submatrix(&circuit.unitary, input, outcome)?;
    let per = permanent_exact(&sub)?;
    Ok(per.norm_sqr() / (input.factorial_product() * outcome.factorial_product()))
}

/// Exact output distribution of a Fock input through a circuit.
#[derive(Debug, Clone)]
pub struct OutputDistribution {
    modes: usize,
    photons: usize,
    input: OutcomePattern,
    occupations: Vec<u8>,
    probabilities: Vec<f64>,
}

impl OutputDistribution {
    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn photons(&self) -> usize {
        self.photons
    }

    pub fn input(&self) -> &OutcomePattern {
        &self.input
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn pattern(&self, index: usize) -> OutcomePattern {
        let occ = &self.occupations[index * self.modes..(index + 1) * self.modes];
        OutcomePattern::new(occ.iter().map(|&x| x as usize).collect())
    }

    pub fn index_of(&self, pattern: &OutcomePattern) -> Option<usize> {
        if pattern.modes() != self.modes {
            return None;
        }
        self.occupations
            .chunks(self.modes)
            .position(|c| c.iter().zip(pattern.occupations()).all(|(&a, &b)| a as usize == b))
    }

    pub fn probability_of(&self, pattern: &OutcomePattern) -> Option<f64> {
        self.index_of(pattern).map(|i| self.probabilities[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (OutcomePattern, f64)> + '_ {
        (0..self.len()).map(move |i| (self.pattern(i), self.probabilities[i]))
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    /// `pattern,probability` rows with occupations joined by `-`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "pattern,probability")?;
        for (p, prob) in self.iter() {
            writeln!(w, "{p},{prob:.17e}")?;
        }
        Ok(())
    }
}

/// Probabilities of every outcome, evaluated in parallel.
pub fn full_distribution(circuit: &EncodedCircuit, input: &OutcomePattern) -> Result<OutputDistribution> {
    let m = circuit.mode_count;
    if input.modes() != m {
        return Err(Error::Dimension(format!("input over {} modes for a {m}-mode circuit", input.modes())));
    }
    let n = input.photons();
    let count = check_budget(m, n)? as usize;
    if n > u8::MAX as usize {
        return Err(Error::SizeLimit {
            what: "photon count",
            n,
            limit: u8::MAX as usize,
        });
    }
    let occupations = compositions_flat(m, n, count);
    let cols = input.mode_list();
    let in_norm = input.factorial_product();
    let u = &circuit.unitary;
    let probabilities: Vec<f64> = occupations
        .par_chunks(m)
        .map(|occ| {
            let mut rows = Vec::with_capacity(n);
            let mut norm = in_norm;
            for (mode, &k) in occ.iter().enumerate() {
                for f in 1..=k {
                    rows.push(mode);
                    norm *= f as f64;
                }
            }
            probability_unchecked(u, &rows, &cols, norm)
        })
        .collect();
    Ok(OutputDistribution {
        modes: m,
        photons: n,
        input: input.clone(),
        occupations,
        probabilities,
    })
}
