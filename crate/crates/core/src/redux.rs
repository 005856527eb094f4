//! Equivalence-relation oracles and the reduction-verification harness.
//!
//! `verify_reduction` checks, over a finite sample list, the biconditional
//! `x E y ⟺ f(x) F f(y)` in both directions and reports counterexamples
//! as data. The E₀ oracle decides eventual equality on the eventually
//! periodic fragment of binary sequences, where the comparison reduces to
//! a finite window.

use serde::Serialize;

use crate::error::{Error, Result};

/// An eventually periodic binary sequence: finite prefix, repeating period.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EventuallyPeriodicBits {
    pub prefix: Vec<bool>,
    pub period: Vec<bool>,
}

impl EventuallyPeriodicBits {
    pub fn new(prefix: Vec<bool>, period: Vec<bool>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::invalid("period must be nonempty"));
        }
        Ok(EventuallyPeriodicBits { prefix, period })
    }

    /// Parses strings of '0'/'1', e.g. `("01", "10")`.
    pub fn parse(prefix: &str, period: &str) -> Result<Self> {
        let read = |s: &str| -> Result<Vec<bool>> {
            s.chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    other => Err(Error::invalid(format!("bad bit `{other}`"))),
                })
                .collect()
        };
        EventuallyPeriodicBits::new(read(prefix)?, read(period)?)
    }

    pub fn bit(&self, i: usize) -> bool {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    /// The same sequence re-encoded with the period rotated by `k` (the
    /// rotated part is absorbed into the prefix).
    pub fn rotate_period(&self, k: usize) -> Self {
        let k = k % self.period.len();
        let mut prefix = self.prefix.clone();
        prefix.extend(self.period[..k].iter().copied());
        let mut period = self.period[k..].to_vec();
        period.extend(self.period[..k].iter().copied());
        EventuallyPeriodicBits { prefix, period }
    }

    /// The same sequence with the period repeated `k` times.
    pub fn duplicate_period(&self, k: usize) -> Self {
        assert!(k >= 1);
        let mut period = Vec::with_capacity(self.period.len() * k);
        for _ in 0..k {
            period.extend(self.period.iter().copied());
        }
        EventuallyPeriodicBits {
            prefix: self.prefix.clone(),
            period,
        }
    }
}

/// Eventual equality on the decidable fragment: the sequences agree from
/// `max(|prefix₁|, |prefix₂|)` onward iff they agree there over one least
/// common multiple of the period lengths.
pub fn e0_equivalent(x: &EventuallyPeriodicBits, y: &EventuallyPeriodicBits) -> bool {
    let start = x.prefix.len().max(y.prefix.len());
    let window = num_integer::lcm(x.period.len(), y.period.len());
    (start..start + window).all(|i| x.bit(i) == y.bit(i))
}

/// One failed pair in a reduction check, with the direction that failed.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct Counterexample {
    pub left: usize,
    pub right: usize,
    /// `"E-side"`: E holds but F does not; `"F-side"`: F holds but E does not.
    pub side: String,
}

/// Outcome of verifying `x E y ⟺ f(x) F f(y)` over all unordered pairs.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReductionReport {
    pub holds: bool,
    pub pairs_checked: usize,
    /// Capped at 32 entries.
    pub counterexamples: Vec<Counterexample>,
}

const COUNTEREXAMPLE_CAP: usize = 32;

/// Checks the reduction biconditional over every unordered pair of samples
/// (including the diagonal). Failures are recorded, not raised.
pub fn verify_reduction<X, Y>(
    samples: &[X],
    e: impl Fn(&X, &X) -> bool,
    f: impl Fn(&X) -> Y,
    big_f: impl Fn(&Y, &Y) -> bool,
) -> ReductionReport {
    let images: Vec<Y> = samples.iter().map(&f).collect();
    let mut pairs_checked = 0;
    let mut counterexamples = Vec::new();
    for i in 0..samples.len() {
        for j in i..samples.len() {
            pairs_checked += 1;
            let e_holds = e(&samples[i], &samples[j]);
            let f_holds = big_f(&images[i], &images[j]);
            if e_holds != f_holds && counterexamples.len() < COUNTEREXAMPLE_CAP {
                counterexamples.push(Counterexample {
                    left: i,
                    right: j,
                    side: if e_holds { "E-side" } else { "F-side" }.to_string(),
                });
            }
        }
    }
    ReductionReport {
        holds: counterexamples.is_empty(),
        pairs_checked,
        counterexamples,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(prefix: &str, period: &str) -> EventuallyPeriodicBits {
        EventuallyPeriodicBits::parse(prefix, period).unwrap()
    }

    #[test]
    fn e0_examples() {
        let x = bits("", "01");
        assert!(e0_equivalent(&x, &x));
        // both are 010101…
        assert!(e0_equivalent(&bits("", "01"), &bits("0", "10")));
        assert!(!e0_equivalent(&bits("", "0"), &bits("", "1")));
        // tails eventually all-zero
        assert!(e0_equivalent(&bits("111", "0"), &bits("", "0")));
    }

    #[test]
    fn representation_invariance() {
        let x = bits("01", "101");
        for k in 0..5 {
            assert!(e0_equivalent(&x, &x.rotate_period(k)));
        }
        for k in 1..4 {
            assert!(e0_equivalent(&x, &x.duplicate_period(k)));
        }
        // and re-encodings compare equal against other sequences too
        let y = bits("1", "011");
        assert_eq!(
            e0_equivalent(&x, &y),
            e0_equivalent(&x.rotate_period(2).duplicate_period(2), &y)
        );
    }

    fn all_instances(max_prefix: usize, max_period: usize) -> Vec<EventuallyPeriodicBits> {
        let mut out = Vec::new();
        for plen in 0..=max_prefix {
            for pbits in 0..(1u32 << plen) {
                for qlen in 1..=max_period {
                    for qbits in 0..(1u32 << qlen) {
                        let prefix = (0..plen).map(|i| pbits >> i & 1 == 1).collect();
                        let period = (0..qlen).map(|i| qbits >> i & 1 == 1).collect();
                        out.push(EventuallyPeriodicBits { prefix, period });
                    }
                }
            }
        }
        out
    }

    #[test]
    fn e0_is_an_equivalence_relation_exhaustively() {
        let instances = all_instances(2, 2);
        let n = instances.len();
        let mut rel = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                rel[i][j] = e0_equivalent(&instances[i], &instances[j]);
            }
        }
        for i in 0..n {
            assert!(rel[i][i]);
            for j in 0..n {
                assert_eq!(rel[i][j], rel[j][i]);
                for k in 0..n {
                    if rel[i][j] && rel[j][k] {
                        assert!(rel[i][k]);
                    }
                }
            }
        }
    }

    #[test]
    fn identity_reduction_holds() {
        let samples: Vec<u32> = (0..10).collect();
        let report = verify_reduction(&samples, |a, b| a % 3 == b % 3, |x| x % 3, |a, b| a == b);
        assert!(report.holds);
        assert_eq!(report.pairs_checked, 55);
    }

    #[test]
    fn constant_map_fails_with_witness() {
        let samples: Vec<u32> = vec![0, 1];
        let report = verify_reduction(&samples, |a, b| a == b, |_| 0u32, |a, b| a == b);
        assert!(!report.holds);
        assert_eq!(report.counterexamples.len(), 1);
        assert_eq!(report.counterexamples[0].side, "F-side");
    }

    #[test]
    fn counterexamples_are_capped() {
        let samples: Vec<u32> = (0..40).collect();
        let report = verify_reduction(&samples, |a, b| a == b, |_| 0u32, |a, b| a == b);
        assert!(!report.holds);
        assert_eq!(report.counterexamples.len(), 32);
        assert_eq!(report.pairs_checked, 40 * 41 / 2);
    }

    #[test]
    fn report_is_order_insensitive_in_verdict() {
        let samples: Vec<u32> = vec![3, 1, 4, 1, 5];
        let rev: Vec<u32> = samples.iter().rev().copied().collect();
        let verdict = |s: &[u32]| {
            verify_reduction(s, |a, b| a % 2 == b % 2, |x| x % 2, |a, b| a == b).holds
        };
        assert_eq!(verdict(&samples), verdict(&rev));
    }
}
