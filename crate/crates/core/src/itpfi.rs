//! ITPFI factor specifications and their T-sets.
//!
//! A spec is a sequence of state eigenvalue lists `α^{(i)}` (positive,
//! summing to 1, lengths may vary). The T-set consists of the reals `t`
//! for which `Σ_i (1 − |Σ_k (α_k^{(i)})^{1+it}|)` converges. Each term lies
//! in `[0,1]`, so for eventually periodic specs the series converges iff
//! every term in the repeating block vanishes; membership is then exactly
//! decidable against a zero tolerance. Arbitrary finite prefixes of other
//! specs only ever yield an honest `Undecided` with the partial sum.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::CMat;

/// Tolerance below which a term counts as zero.
pub const ZERO_TOL: f64 = 1e-12;

/// A (possibly infinite, finitely described) sequence of eigenvalue lists.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum ITPFISpec {
    /// The same list at every index.
    Constant(Vec<f64>),
    /// A finite prefix followed by a repeating cycle.
    EventuallyPeriodic {
        prefix: Vec<Vec<f64>>,
        cycle: Vec<Vec<f64>>,
    },
    /// A finite list of factors only; membership stays undecided.
    Explicit(Vec<Vec<f64>>),
}

fn validate_list(alpha: &[f64]) -> Result<()> {
    if alpha.is_empty() {
        return Err(Error::invalid("eigenvalue list must be nonempty"));
    }
    if alpha.iter().any(|&a| !(a > 0.0) || !a.is_finite()) {
        return Err(Error::invalid("eigenvalues must be strictly positive"));
    }
    let sum: f64 = alpha.iter().sum();
    if (sum - 1.0).abs() > 1e-12 {
        return Err(Error::invalid(format!(
            "eigenvalue list sums to {sum}, expected 1"
        )));
    }
    Ok(())
}

impl ITPFISpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            ITPFISpec::Constant(a) => validate_list(a),
            ITPFISpec::EventuallyPeriodic { prefix, cycle } => {
                if cycle.is_empty() {
                    return Err(Error::invalid("cycle must be nonempty"));
                }
                prefix.iter().chain(cycle).try_for_each(|a| validate_list(a))
            }
            ITPFISpec::Explicit(lists) => {
                if lists.is_empty() {
                    return Err(Error::invalid("explicit spec must be nonempty"));
                }
                lists.iter().try_for_each(|a| validate_list(a))
            }
        }
    }

    /// The eigenvalue list at index `i` (0-based). `None` past the end of
    /// an explicit spec.
    pub fn factor(&self, i: usize) -> Option<&[f64]> {
        match self {
            ITPFISpec::Constant(a) => Some(a),
            ITPFISpec::EventuallyPeriodic { prefix, cycle } => {
                if i < prefix.len() {
                    Some(&prefix[i])
                } else {
                    Some(&cycle[(i - prefix.len()) % cycle.len()])
                }
            }
            ITPFISpec::Explicit(lists) => lists.get(i).map(|v| v.as_slice()),
        }
    }

    /// The distinct lists of the repeating block (for decidable specs).
    fn repeating_block(&self) -> Option<Vec<&[f64]>> {
        match self {
            ITPFISpec::Constant(a) => Some(vec![a.as_slice()]),
            ITPFISpec::EventuallyPeriodic { cycle, .. } => {
                Some(cycle.iter().map(|v| v.as_slice()).collect())
            }
            ITPFISpec::Explicit(_) => None,
        }
    }
}

/// The Powers factor spec: every factor is 2×2 with eigenvalues
/// `(1/(1+λ), λ/(1+λ))`.
pub fn powers_spec(lambda: f64) -> Result<ITPFISpec> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::invalid(format!(
            "λ = {lambda} must lie strictly between 0 and 1"
        )));
    }
    Ok(ITPFISpec::Constant(vec![
        1.0 / (1.0 + lambda),
        lambda / (1.0 + lambda),
    ]))
}

/// The density matrix `diag(1/(1+λ), λ/(1+λ))` of the Powers state.
pub fn powers_density_matrix(lambda: f64) -> Result<CMat> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::invalid("λ must lie strictly between 0 and 1"));
    }
    let mut m = CMat::zeros(2, 2);
    m[(0, 0)] = Complex64::new(1.0 / (1.0 + lambda), 0.0);
    m[(1, 1)] = Complex64::new(lambda / (1.0 + lambda), 0.0);
    Ok(m)
}

/// The series term `1 − |Σ_k α_k^{1+it}|` for the `i`-th factor.
/// Always in `[0, 1]` by the triangle inequality.
pub fn tset_term(spec: &ITPFISpec, i: usize, t: f64) -> Option<f64> {
    let alpha = spec.factor(i)?;
    Some(term_of_list(alpha, t))
}

fn term_of_list(alpha: &[f64], t: f64) -> f64 {
    let sum: Complex64 = alpha
        .iter()
        .map(|&a| {
            let phase = t * a.ln();
            Complex64::new(a * phase.cos(), a * phase.sin())
        })
        .sum();
    (1.0 - sum.norm()).max(0.0)
}

/// T-set membership verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase", tag = "verdict")]
pub enum TsetVerdict {
    In,
    Out,
    Undecided { partial_sum: f64, terms: usize },
}

impl TsetVerdict {
    pub fn is_in(&self) -> bool {
        matches!(self, TsetVerdict::In)
    }
}

/// Decides membership of `t` in the T-set.
///
/// Constant and eventually periodic specs are decided exactly: a series of
/// eventually periodic nonnegative terms converges iff the terms of the
/// repeating block all vanish (below `zero_tol`). Explicit specs report the
/// partial sum over at most `max_terms` factors and stay `Undecided`.
pub fn tset_membership(spec: &ITPFISpec, t: f64, zero_tol: f64, max_terms: usize) -> TsetVerdict {
    match spec.repeating_block() {
        Some(block) => {
            let all_zero = block.iter().all(|alpha| term_of_list(alpha, t) < zero_tol);
            if all_zero {
                TsetVerdict::In
            } else {
                TsetVerdict::Out
            }
        }
        None => {
            let mut sum = 0.0;
            let mut terms = 0;
            while terms < max_terms {
                match tset_term(spec, terms, t) {
                    Some(v) => {
                        sum += v;
                        terms += 1;
                    }
                    None => break,
                }
            }
            TsetVerdict::Undecided {
                partial_sum: sum,
                terms,
            }
        }
    }
}

pub fn tset_membership_default(spec: &ITPFISpec, t: f64) -> TsetVerdict {
    tset_membership(spec, t, ZERO_TOL, 100_000)
}

/// One scan row: the point, its verdict, and the largest term over the
/// repeating block (or the scanned prefix for explicit specs).
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TsetScanRow {
    pub t: f64,
    pub verdict: TsetVerdict,
    pub max_block_term: f64,
}

/// Evaluates membership over a grid; one row per point.
pub fn tset_scan(spec: &ITPFISpec, grid: &[f64], zero_tol: f64, max_terms: usize) -> Vec<TsetScanRow> {
    grid.iter()
        .map(|&t| {
            let verdict = tset_membership(spec, t, zero_tol, max_terms);
            let max_block_term = match spec.repeating_block() {
                Some(block) => block
                    .iter()
                    .map(|alpha| term_of_list(alpha, t))
                    .fold(0.0, f64::max),
                None => {
                    let mut m: f64 = 0.0;
                    let mut i = 0;
                    while i < max_terms {
                        match tset_term(spec, i, t) {
                            Some(v) => m = m.max(v),
                            None => break,
                        }
                        i += 1;
                    }
                    m
                }
            };
            TsetScanRow {
                t,
                verdict,
                max_block_term,
            }
        })
        .collect()
}

/// Closed-form membership for Powers specs: `t ∈ T(R_λ)` iff `λ^{it} = 1`,
/// tested as `|e^{it·ln λ} − 1|` against a phase tolerance. Independent of
/// the term-series route; used to cross-check it.
pub fn powers_lattice_member(lambda: f64, t: f64, phase_tol: f64) -> bool {
    let theta = t * lambda.ln();
    let defect = (Complex64::new(theta.cos(), theta.sin()) - Complex64::new(1.0, 0.0)).norm();
    defect < phase_tol
}

/// Alternating interleave of two specs (the tensor product's eigenvalue
/// sequence). Two decidable specs interleave into a decidable spec; a
/// `Constant` is treated as eventually periodic when mixed. Explicit specs
/// stay explicit, truncated to the shared range.
pub fn tensor_spec(s1: &ITPFISpec, s2: &ITPFISpec) -> ITPFISpec {
    use ITPFISpec::*;
    match (s1, s2) {
        (Constant(a), Constant(b)) => EventuallyPeriodic {
            prefix: Vec::new(),
            cycle: vec![a.clone(), b.clone()],
        },
        (Explicit(_), _) | (_, Explicit(_)) => {
            let mut lists = Vec::new();
            let mut i = 0;
            loop {
                match (s1.factor(i), s2.factor(i)) {
                    (Some(a), Some(b)) => {
                        lists.push(a.to_vec());
                        lists.push(b.to_vec());
                    }
                    _ => break,
                }
                i += 1;
                if i > 100_000 {
                    break;
                }
            }
            Explicit(lists)
        }
        (a, b) => {
            // both decidable; align prefixes and interleave cycles over a
            // common period
            let (pa, ca) = decidable_parts(a);
            let (pb, cb) = decidable_parts(b);
            let skip = pa.len().max(pb.len());
            let mut prefix = Vec::with_capacity(2 * skip);
            for i in 0..skip {
                prefix.push(a.factor(i).unwrap().to_vec());
                prefix.push(b.factor(i).unwrap().to_vec());
            }
            let period = lcm(ca.len(), cb.len());
            let mut cycle = Vec::with_capacity(2 * period);
            for i in 0..period {
                cycle.push(a.factor(skip + i).unwrap().to_vec());
                cycle.push(b.factor(skip + i).unwrap().to_vec());
            }
            EventuallyPeriodic { prefix, cycle }
        }
    }
}

fn decidable_parts(spec: &ITPFISpec) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    match spec {
        ITPFISpec::Constant(a) => (Vec::new(), vec![a.clone()]),
        ITPFISpec::EventuallyPeriodic { prefix, cycle } => (prefix.clone(), cycle.clone()),
        ITPFISpec::Explicit(_) => unreachable!("explicit handled by caller"),
    }
}

fn lcm(a: usize, b: usize) -> usize {
    num_integer::lcm(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn lattice_step(lambda: f64) -> f64 {
        2.0 * PI / lambda.ln().abs()
    }

    #[test]
    fn powers_spec_eigenvalues() {
        let spec = powers_spec(0.5).unwrap();
        match &spec {
            ITPFISpec::Constant(a) => {
                assert!((a[0] - 2.0 / 3.0).abs() < 1e-15);
                assert!((a[1] - 1.0 / 3.0).abs() < 1e-15);
            }
            _ => panic!("expected constant spec"),
        }
        spec.validate().unwrap();
        assert!(powers_spec(0.0).is_err());
        assert!(powers_spec(1.0).is_err());

        let rho = powers_density_matrix(0.5).unwrap();
        assert!((rho[(0, 0)].re - 2.0 / 3.0).abs() < 1e-15);
        assert!((rho[(1, 1)].re - 1.0 / 3.0).abs() < 1e-15);
        assert!((rho.trace().re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn term_vanishes_at_zero_and_on_lattice() {
        let spec = powers_spec(0.5).unwrap();
        assert!(tset_term(&spec, 0, 0.0).unwrap() < 1e-15);
        let t = lattice_step(0.5);
        assert!(tset_term(&spec, 3, t).unwrap() < 1e-12);
        // off lattice the term is a strictly positive constant in i
        let v1 = tset_term(&spec, 0, 1.0).unwrap();
        let v2 = tset_term(&spec, 7, 1.0).unwrap();
        assert!(v1 > 1e-3);
        assert!((v1 - v2).abs() < 1e-15);
    }

    #[test]
    fn membership_on_and_off_lattice() {
        let spec = powers_spec(0.5).unwrap();
        assert_eq!(tset_membership_default(&spec, 0.0), TsetVerdict::In);
        for m in -5i32..=5 {
            let t = m as f64 * lattice_step(0.5);
            assert_eq!(tset_membership_default(&spec, t), TsetVerdict::In);
        }
        assert_eq!(tset_membership_default(&spec, 1.0), TsetVerdict::Out);
    }

    #[test]
    fn closed_form_agrees_with_term_series() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(0x7e57);
        for lambda in [0.25, 1.0 / 3.0, 0.5, 2.0 / 3.0] {
            let spec = powers_spec(lambda).unwrap();
            for _ in 0..200 {
                let t: f64 = rng.gen_range(-20.0..20.0);
                // avoid the indeterminate band around lattice points
                let step = lattice_step(lambda);
                let frac = (t / step - (t / step).round()).abs();
                if frac < 1e-4 {
                    continue;
                }
                assert_eq!(
                    tset_membership_default(&spec, t).is_in(),
                    powers_lattice_member(lambda, t, 1e-6)
                );
            }
        }
    }

    #[test]
    fn explicit_specs_stay_undecided() {
        let spec = ITPFISpec::Explicit(vec![vec![0.5, 0.5], vec![0.25, 0.75]]);
        spec.validate().unwrap();
        match tset_membership_default(&spec, 1.0) {
            TsetVerdict::Undecided { partial_sum, terms } => {
                assert_eq!(terms, 2);
                assert!(partial_sum > 0.0);
            }
            other => panic!("expected undecided, got {other:?}"),
        }
    }

    #[test]
    fn evenness_and_range_of_terms() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(5);
        let specs = [
            powers_spec(0.3).unwrap(),
            ITPFISpec::EventuallyPeriodic {
                prefix: vec![vec![0.1, 0.9]],
                cycle: vec![vec![0.2, 0.3, 0.5], vec![0.5, 0.5]],
            },
        ];
        for spec in &specs {
            spec.validate().unwrap();
            for _ in 0..300 {
                let t: f64 = rng.gen_range(-50.0..50.0);
                let i = rng.gen_range(0..10);
                let v = tset_term(spec, i, t).unwrap();
                assert!((0.0..=1.0).contains(&v));
                let v_neg = tset_term(spec, i, -t).unwrap();
                assert!((v - v_neg).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn in_plus_in_stays_in() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(31);
        let lambda = 0.5;
        let spec = powers_spec(lambda).unwrap();
        let step = lattice_step(lambda);
        for _ in 0..200 {
            let t1 = rng.gen_range(-5i64..=5) as f64 * step;
            let t2 = rng.gen_range(-5i64..=5) as f64 * step;
            assert!(tset_membership_default(&spec, t1).is_in());
            assert!(tset_membership_default(&spec, t2).is_in());
            assert!(tset_membership_default(&spec, t1 + t2).is_in());
        }
    }

    #[test]
    fn tensor_of_powers_keeps_membership() {
        let spec = powers_spec(0.5).unwrap();
        let doubled = tensor_spec(&spec, &spec);
        doubled.validate().unwrap();
        let step = lattice_step(0.5);
        for m in -3i32..=3 {
            let t = m as f64 * step;
            assert_eq!(
                tset_membership_default(&doubled, t).is_in(),
                tset_membership_default(&spec, t).is_in()
            );
        }
        assert!(!tset_membership_default(&doubled, 1.0).is_in());
    }

    #[test]
    fn tensor_with_trivial_factor_is_neutral() {
        let spec = powers_spec(0.5).unwrap();
        let trivial = ITPFISpec::Constant(vec![1.0]);
        trivial.validate().unwrap();
        let product = tensor_spec(&spec, &trivial);
        product.validate().unwrap();
        let step = lattice_step(0.5);
        for t in [0.0, step, 2.0 * step, 1.0, 7.3] {
            assert_eq!(
                tset_membership_default(&product, t).is_in(),
                tset_membership_default(&spec, t).is_in()
            );
        }
    }

    #[test]
    fn interleave_preserves_list_validity() {
        let a = ITPFISpec::EventuallyPeriodic {
            prefix: vec![vec![0.4, 0.6]],
            cycle: vec![vec![0.5, 0.5], vec![0.25, 0.75], vec![0.1, 0.9]],
        };
        let b = powers_spec(0.25).unwrap();
        let t = tensor_spec(&a, &b);
        t.validate().unwrap();
        // interleave alternates sources
        if let ITPFISpec::EventuallyPeriodic { prefix, cycle } = &t {
            assert_eq!(prefix.len(), 2);
            assert_eq!(cycle.len() % 2, 0);
        } else {
            panic!("expected periodic spec");
        }
    }

    #[test]
    fn scan_rows_match_membership() {
        let spec = powers_spec(0.5).unwrap();
        let step = lattice_step(0.5);
        let grid: Vec<f64> = (0..=5).map(|m| m as f64 * step).collect();
        let rows = tset_scan(&spec, &grid, ZERO_TOL, 1000);
        assert_eq!(rows.len(), 6);
        assert!(rows.iter().all(|r| r.verdict.is_in()));
        assert!(rows.iter().all(|r| r.max_block_term < ZERO_TOL));

        let rows = tset_scan(&spec, &[0.0], ZERO_TOL, 1000);
        assert!(rows[0].verdict.is_in());
    }

    #[test]
    fn validation_rejects_bad_lists() {
        assert!(ITPFISpec::Constant(vec![0.5, 0.4]).validate().is_err());
        assert!(ITPFISpec::Constant(vec![0.5, -0.5, 1.0]).validate().is_err());
        assert!(ITPFISpec::Constant(vec![]).validate().is_err());
        assert!(ITPFISpec::EventuallyPeriodic {
            prefix: vec![],
            cycle: vec![]
        }
        .validate()
        .is_err());
    }
}
