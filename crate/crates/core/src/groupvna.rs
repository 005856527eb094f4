//! Group von Neumann algebras of finite groups via the left regular
//! representation, plus ball-enumeration ICC certificates for the standard
//! infinite groups (free groups, lattices, SL(2,ℤ), SL(3,ℤ)).
//!
//! An ICC certificate is a finite witness, never a proof: `pass` means every
//! nonidentity element of the inner ball has at least `threshold` distinct
//! conjugates under the outer ball; `fail` with a count that has stabilized
//! across growing outer radii is evidence of a finite conjugacy class.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::caps::{Caps, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::groups::{FinGroup, GroupOps};
use crate::linalg::{CMat, CVec};
use crate::staralg::{StarAlgebra, StructureConstants, TraceForm};

/// The algebra generated by the left translation unitaries of a finite
/// group, carrying the vector state at `ξ_e` (so `τ(u_g) = [g = e]`).
pub fn left_regular_algebra(group: &FinGroup, caps: &Caps) -> Result<StarAlgebra> {
    let n = group.order();
    if n > caps.left_regular {
        return Err(Error::cap(format!(
            "group order {n} exceeds left-regular cap {}",
            caps.left_regular
        )));
    }
    let scale = 1.0 / (n as f64).sqrt();
    let mut basis = Vec::with_capacity(n);
    for g in 0..n as u32 {
        let mut m = CMat::zeros(n, n);
        for h in 0..n as u32 {
            m[(group.mul_idx(g, h) as usize, h as usize)] = Complex64::new(scale, 0.0);
        }
        basis.push(m);
    }
    // b_g b_h = (1/√n) b_{gh}
    let mut table = vec![Vec::new(); n * n];
    for g in 0..n as u32 {
        for h in 0..n as u32 {
            table[g as usize * n + h as usize].push((
                group.mul_idx(g, h),
                Complex64::new(scale, 0.0),
            ));
        }
    }
    let mut xi_e = CVec::zeros(n);
    xi_e[group.identity_index() as usize] = Complex64::new(1.0, 0.0);

    let gen_coords = group
        .generators()
        .into_iter()
        .map(|g| {
            let mut c = vec![Complex64::default(); n];
            c[g as usize] = Complex64::new(1.0, 0.0);
            c
        })
        .collect();

    Ok(StarAlgebra::from_orthonormal_basis(
        n,
        basis,
        TraceForm::Vector(xi_e),
        DEFAULT_TOL,
    )
    .with_structure(StructureConstants::new(n, table))
    .with_generator_coords(gen_coords))
}

/// A finitely generated group with computable normal forms, named for
/// reports.
pub trait GroupOracle: GroupOps {
    fn oracle_name(&self) -> String;
}

/// Free group of finite rank; elements are reduced words over `±1..±rank`.
#[derive(Debug, Clone)]
pub struct FreeGroup {
    pub rank: usize,
}

fn reduce_word(letters: impl IntoIterator<Item = i8>) -> Vec<i8> {
    let mut out: Vec<i8> = Vec::new();
    for x in letters {
        if x == 0 {
            continue;
        }
        if out.last().is_some_and(|&y| y == -x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

impl GroupOps for FreeGroup {
    type E = Vec<i8>;

    fn id(&self) -> Vec<i8> {
        Vec::new()
    }

    fn mul(&self, a: &Vec<i8>, b: &Vec<i8>) -> Vec<i8> {
        reduce_word(a.iter().chain(b.iter()).copied())
    }

    fn inv(&self, a: &Vec<i8>) -> Vec<i8> {
        a.iter().rev().map(|&x| -x).collect()
    }

    fn generators(&self) -> Vec<Vec<i8>> {
        (1..=self.rank as i8).map(|i| vec![i]).collect()
    }

    fn describe(&self, e: &Vec<i8>) -> String {
        if e.is_empty() {
            return "e".into();
        }
        e.iter()
            .map(|&x| {
                let letter = (b'a' + (x.unsigned_abs() - 1)) as char;
                if x > 0 {
                    letter.to_string()
                } else {
                    format!("{letter}'")
                }
            })
            .collect()
    }
}

impl GroupOracle for FreeGroup {
    fn oracle_name(&self) -> String {
        format!("F{} (free group, reduced words)", self.rank)
    }
}

/// The lattice ℤ^d with unit-vector generators.
#[derive(Debug, Clone)]
pub struct LatticeGroup {
    pub dim: usize,
}

impl GroupOps for LatticeGroup {
    type E = Vec<i64>;

    fn id(&self) -> Vec<i64> {
        vec![0; self.dim]
    }

    fn mul(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn inv(&self, a: &Vec<i64>) -> Vec<i64> {
        a.iter().map(|x| -x).collect()
    }

    fn generators(&self) -> Vec<Vec<i64>> {
        (0..self.dim)
            .map(|i| {
                let mut v = vec![0; self.dim];
                v[i] = 1;
                v
            })
            .collect()
    }

    fn describe(&self, e: &Vec<i64>) -> String {
        format!("{e:?}")
    }
}

impl GroupOracle for LatticeGroup {
    fn oracle_name(&self) -> String {
        format!("Z^{}", self.dim)
    }
}

/// Square integer matrix with arbitrary-precision entries, row-major.
/// Conjugation by long words cannot overflow, and equality of normal forms
/// is literal equality of the matrices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    pub n: usize,
    pub entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_i64(n: usize, rows: &[i64]) -> Self {
        assert_eq!(rows.len(), n * n);
        IntMatrix {
            n,
            entries: rows.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one();
        }
        IntMatrix { n, entries }
    }

    fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.at(k, j);
                }
            }
        }
        IntMatrix { n, entries }
    }

    pub fn det(&self) -> BigInt {
        match self.n {
            1 => self.at(0, 0).clone(),
            2 => self.at(0, 0) * self.at(1, 1) - self.at(0, 1) * self.at(1, 0),
            3 => {
                self.at(0, 0) * (self.at(1, 1) * self.at(2, 2) - self.at(1, 2) * self.at(2, 1))
                    - self.at(0, 1)
                        * (self.at(1, 0) * self.at(2, 2) - self.at(1, 2) * self.at(2, 0))
                    + self.at(0, 2)
                        * (self.at(1, 0) * self.at(2, 1) - self.at(1, 1) * self.at(2, 0))
            }
            _ => panic!("determinant only implemented for n ≤ 3"),
        }
    }

    /// Inverse for matrices of determinant ±1 (adjugate scaled by det).
    pub fn unimodular_inverse(&self) -> IntMatrix {
        let det = self.det();
        assert!(
            det.clone().abs().is_one(),
            "matrix is not unimodular (det {det})"
        );
        let n = self.n;
        let mut adj = vec![BigInt::zero(); n * n];
        match n {
            1 => adj[0] = BigInt::one(),
            2 => {
                adj[0] = self.at(1, 1).clone();
                adj[1] = -self.at(0, 1);
                adj[2] = -self.at(1, 0);
                adj[3] = self.at(0, 0).clone();
            }
            3 => {
                for i in 0..3 {
                    for j in 0..3 {
                        let r = [(i + 1) % 3, (i + 2) % 3];
                        let c = [(j + 1) % 3, (j + 2) % 3];
                        // cofactor with the cyclic index trick already
                        // carries the checkerboard sign
                        adj[j * 3 + i] = self.at(r[0], c[0]) * self.at(r[1], c[1])
                            - self.at(r[0], c[1]) * self.at(r[1], c[0]);
                    }
                }
            }
            _ => panic!("inverse only implemented for n ≤ 3"),
        }
        let entries = adj.into_iter().map(|x| x * &det).collect();
        IntMatrix { n, entries }
    }
}

/// A matrix group oracle given by generators of determinant ±1.
#[derive(Debug, Clone)]
pub struct MatrixGroup {
    pub name: String,
    pub gens: Vec<IntMatrix>,
    n: usize,
}

impl MatrixGroup {
    pub fn new(name: impl Into<String>, gens: Vec<IntMatrix>) -> Result<Self> {
        let name = name.into();
        let n = gens
            .first()
            .map(|m| m.n)
            .ok_or_else(|| Error::invalid("matrix group needs at least one generator"))?;
        for g in &gens {
            if g.n != n {
                return Err(Error::invalid("generators have mixed dimensions"));
            }
            if !g.det().abs().is_one() {
                return Err(Error::invalid(format!(
                    "generator of {name} is not unimodular"
                )));
            }
        }
        Ok(MatrixGroup { name, gens, n })
    }

    /// SL(2,ℤ) with the standard generators S = [[0,-1],[1,0]] and
    /// T = [[1,1],[0,1]].
    pub fn sl2z() -> MatrixGroup {
        MatrixGroup::new(
            "SL2Z (generators S, T)",
            vec![
                IntMatrix::from_i64(2, &[0, -1, 1, 0]),
                IntMatrix::from_i64(2, &[1, 1, 0, 1]),
            ],
        )
        .unwrap()
    }

    /// SL(3,ℤ) generated by the six elementary matrices `E_ij(1)`, i ≠ j
    /// (their inverses `E_ij(−1)` enter through ball enumeration).
    pub fn sl3z() -> MatrixGroup {
        let mut gens = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    continue;
                }
                let mut e = IntMatrix::identity(3);
                e.entries[i * 3 + j] = BigInt::one();
                gens.push(e);
            }
        }
        MatrixGroup::new("SL3Z (elementary generators E_ij(±1))", gens).unwrap()
    }

    /// The parabolic pair A = [[1,2],[0,1]], B = [[1,0],[2,1]], which
    /// generates a free group of rank 2 inside SL(2,ℤ).
    pub fn sl2z_free_pair() -> MatrixGroup {
        MatrixGroup::new(
            "SL2Z:A,B (free parabolic pair)",
            vec![torus_matrix_a(), torus_matrix_b()],
        )
        .unwrap()
    }
}

/// The matrix A = [[1,2],[0,1]].
pub fn torus_matrix_a() -> IntMatrix {
    IntMatrix::from_i64(2, &[1, 2, 0, 1])
}

/// The matrix B = [[1,0],[2,1]].
pub fn torus_matrix_b() -> IntMatrix {
    IntMatrix::from_i64(2, &[1, 0, 2, 1])
}

impl GroupOps for MatrixGroup {
    type E = IntMatrix;

    fn id(&self) -> IntMatrix {
        IntMatrix::identity(self.n)
    }

    fn mul(&self, a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
        a.mul(b)
    }

    fn inv(&self, a: &IntMatrix) -> IntMatrix {
        a.unimodular_inverse()
    }

    fn generators(&self) -> Vec<IntMatrix> {
        self.gens.clone()
    }

    fn describe(&self, e: &IntMatrix) -> String {
        let rows: Vec<String> = (0..e.n)
            .map(|i| {
                let row: Vec<String> = (0..e.n).map(|j| e.at(i, j).to_string()).collect();
                format!("[{}]", row.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }
}

impl GroupOracle for MatrixGroup {
    fn oracle_name(&self) -> String {
        self.name.clone()
    }
}

/// All products of at most `radius` generators and generator inverses,
/// deduplicated by normal form. Breadth-first, deterministic ordering.
pub fn ball<G: GroupOps>(group: &G, radius: usize, caps: &Caps) -> Result<Vec<G::E>> {
    let mut gens = group.generators();
    let inverses: Vec<G::E> = gens.iter().map(|g| group.inv(g)).collect();
    gens.extend(inverses);
    gens.sort();
    gens.dedup();

    let mut seen: HashSet<G::E> = HashSet::new();
    let mut ordered = vec![group.id()];
    seen.insert(group.id());
    let mut frontier = vec![group.id()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for x in &frontier {
            for g in &gens {
                let y = group.mul(x, g);
                if seen.insert(y.clone()) {
                    if seen.len() > caps.ball_size {
                        return Err(Error::cap(format!(
                            "ball enumeration exceeded {} elements",
                            caps.ball_size
                        )));
                    }
                    next.push(y);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort();
        ordered.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(ordered)
}

/// Finite lower-bound witness for the infinite-conjugacy-class property.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IccCertificate {
    pub oracle: String,
    pub radius_r: usize,
    pub radius_big_r: usize,
    pub threshold: usize,
    pub min_conjugates: usize,
    pub passes: bool,
    /// Element of the inner ball realizing the minimum.
    pub witness: String,
    /// One-sided semantics: a pass is evidence, never a proof of ICC.
    pub note: String,
}

/// Minimum, over nonidentity `g` in the inner ball, of the number of
/// distinct conjugates `h g h⁻¹` with `h` in the outer ball.
pub fn icc_certificate<G: GroupOps + GroupOracle>(
    group: &G,
    r: usize,
    big_r: usize,
    threshold: usize,
    caps: &Caps,
) -> Result<IccCertificate> {
    let inner = ball(group, r, caps)?;
    let outer = ball(group, big_r, caps)?;
    let mut min_conjugates = usize::MAX;
    let mut witness = group.id();
    for g in inner.iter().filter(|g| **g != group.id()) {
        let classes: HashSet<G::E> = outer.iter().map(|h| group.conj(h, g)).collect();
        if classes.len() < min_conjugates {
            min_conjugates = classes.len();
            witness = g.clone();
        }
    }
    if min_conjugates == usize::MAX {
        // inner ball had no nonidentity elements (trivial group or r = 0)
        min_conjugates = 0;
    }
    Ok(IccCertificate {
        oracle: group.oracle_name(),
        radius_r: r,
        radius_big_r: big_r,
        threshold,
        min_conjugates,
        passes: min_conjugates >= threshold,
        witness: group.describe(&witness),
        note: "pass is finite evidence of ICC, not a proof; a count that \
               stabilizes as R grows suggests a finite class"
            .into(),
    })
}

/// Named oracles reachable from the CLI.
pub enum NamedOracle {
    Free(FreeGroup),
    Lattice(LatticeGroup),
    Matrix(MatrixGroup),
}

/// Resolves the oracle registry names: `F<k>`, `Z<d>`, `SL2Z`, `SL3Z`,
/// `SL2Z:A,B`.
pub fn oracle_by_name(name: &str) -> Result<NamedOracle> {
    if let Some(rank) = name.strip_prefix('F').and_then(|s| s.parse::<usize>().ok()) {
        if rank >= 1 && rank <= 26 {
            return Ok(NamedOracle::Free(FreeGroup { rank }));
        }
    }
    if let Some(dim) = name.strip_prefix('Z').and_then(|s| s.parse::<usize>().ok()) {
        if dim >= 1 {
            return Ok(NamedOracle::Lattice(LatticeGroup { dim }));
        }
    }
    match name {
        "SL2Z" => Ok(NamedOracle::Matrix(MatrixGroup::sl2z())),
        "SL3Z" => Ok(NamedOracle::Matrix(MatrixGroup::sl3z())),
        "SL2Z:A,B" => Ok(NamedOracle::Matrix(MatrixGroup::sl2z_free_pair())),
        other => Err(Error::invalid(format!(
            "unknown oracle `{other}` (known: F<k>, Z<d>, SL2Z, SL3Z, SL2Z:A,B)"
        ))),
    }
}

impl NamedOracle {
    pub fn icc(&self, r: usize, big_r: usize, threshold: usize, caps: &Caps) -> Result<IccCertificate> {
        match self {
            NamedOracle::Free(g) => icc_certificate(g, r, big_r, threshold, caps),
            NamedOracle::Lattice(g) => icc_certificate(g, r, big_r, threshold, caps),
            NamedOracle::Matrix(g) => icc_certificate(g, r, big_r, threshold, caps),
        }
    }

    pub fn ball_size(&self, radius: usize, caps: &Caps) -> Result<usize> {
        Ok(match self {
            NamedOracle::Free(g) => ball(g, radius, caps)?.len(),
            NamedOracle::Lattice(g) => ball(g, radius, caps)?.len(),
            NamedOracle::Matrix(g) => ball(g, radius, caps)?.len(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::staralg::analyze;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn left_regular_z2_splits_into_two_lines() {
        let alg = left_regular_algebra(&FinGroup::cyclic(2), &caps()).unwrap();
        let report = analyze(&alg).unwrap();
        assert!(report.blocks_match(&[(1, 0.5), (1, 0.5)], 1e-9));
    }

    #[test]
    fn left_regular_s3_matches_representation_theory() {
        let s3 = FinGroup::symmetric(3);
        let alg = left_regular_algebra(&s3, &caps()).unwrap();
        let report = analyze(&alg).unwrap();
        assert_eq!(report.center_dim, s3.conjugacy_class_count());
        assert!(report.blocks_match(
            &[(1, 1.0 / 6.0), (1, 1.0 / 6.0), (2, 4.0 / 6.0)],
            1e-9
        ));
    }

    #[test]
    fn left_regular_trivial_group() {
        let alg = left_regular_algebra(&FinGroup::trivial(), &caps()).unwrap();
        assert_eq!(alg.dimension(), 1);
        assert!(analyze(&alg).unwrap().is_factor);
    }

    #[test]
    fn left_regular_trace_is_delta_at_identity() {
        let z3 = FinGroup::cyclic(3);
        let alg = left_regular_algebra(&z3, &caps()).unwrap();
        // u_g = √3 · basis[g]
        let sqrt3 = Complex64::new(3f64.sqrt(), 0.0);
        for g in 0..3usize {
            let u = &alg.basis()[g] * sqrt3;
            let tau = alg.trace(&u).unwrap();
            let expected = if g == 0 { 1.0 } else { 0.0 };
            assert!((tau - Complex64::new(expected, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn left_regular_cap() {
        let tight = Caps::default().with_overrides("left_regular=3").unwrap();
        assert!(matches!(
            left_regular_algebra(&FinGroup::cyclic(4), &tight),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn free_group_ball_counts() {
        let f2 = FreeGroup { rank: 2 };
        // 1 + 4 + 12 = 17 reduced words of length ≤ 2
        assert_eq!(ball(&f2, 2, &caps()).unwrap().len(), 17);
        assert_eq!(ball(&f2, 0, &caps()).unwrap().len(), 1);
        // 1 + 4 + 12 + 36 = 53
        assert_eq!(ball(&f2, 3, &caps()).unwrap().len(), 53);
    }

    #[test]
    fn lattice_ball_counts() {
        let z2 = LatticeGroup { dim: 2 };
        // |i| + |j| ≤ 2: 13 lattice points
        assert_eq!(ball(&z2, 2, &caps()).unwrap().len(), 13);
    }

    #[test]
    fn ball_cap_is_enforced() {
        let f2 = FreeGroup { rank: 2 };
        let tight = Caps::default().with_overrides("ball=10").unwrap();
        assert!(matches!(ball(&f2, 3, &tight), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn abelian_groups_fail_icc() {
        let z2 = LatticeGroup { dim: 2 };
        let cert = icc_certificate(&z2, 2, 10, 2, &caps()).unwrap();
        assert_eq!(cert.min_conjugates, 1);
        assert!(!cert.passes);
    }

    #[test]
    fn f2_passes_icc_threshold_10() {
        let f2 = FreeGroup { rank: 2 };
        let cert = icc_certificate(&f2, 1, 3, 10, &caps()).unwrap();
        assert!(cert.min_conjugates >= 10, "got {}", cert.min_conjugates);
        assert!(cert.passes);
    }

    #[test]
    fn sl3z_passes_icc_threshold_5() {
        let sl3 = MatrixGroup::sl3z();
        let cert = icc_certificate(&sl3, 1, 2, 5, &caps()).unwrap();
        assert!(cert.passes, "min conjugates {}", cert.min_conjugates);
    }

    #[test]
    fn icc_counts_grow_with_outer_radius() {
        let f2 = FreeGroup { rank: 2 };
        let mut last = 0;
        for big_r in 1..=4 {
            let cert = icc_certificate(&f2, 1, big_r, 1, &caps()).unwrap();
            assert!(cert.min_conjugates >= last);
            last = cert.min_conjugates;
        }
    }

    #[test]
    fn unimodular_inverses_are_exact() {
        for m in [
            IntMatrix::from_i64(2, &[1, 2, 0, 1]),
            IntMatrix::from_i64(2, &[0, -1, 1, 0]),
            IntMatrix::from_i64(3, &[1, 1, 0, 0, 1, 0, 0, 0, 1]),
            IntMatrix::from_i64(3, &[1, 0, 0, 5, 1, 0, -3, 2, 1]),
        ] {
            let inv = m.unimodular_inverse();
            assert_eq!(m.mul(&inv), IntMatrix::identity(m.n));
            assert_eq!(inv.mul(&m), IntMatrix::identity(m.n));
        }
    }

    #[test]
    fn parabolic_pair_is_registered() {
        let oracle = oracle_by_name("SL2Z:A,B").unwrap();
        let cert = oracle.icc(1, 3, 4, &caps()).unwrap();
        assert!(cert.passes, "min conjugates {}", cert.min_conjugates);
        assert!(oracle_by_name("nope").is_err());
    }
}
