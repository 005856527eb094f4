//! Finite-dimensional *-algebra engine.
//!
//! A [`StarAlgebra`] is a unital self-adjoint subalgebra of the d×d complex
//! matrices, carried as a Hilbert–Schmidt-orthonormal basis together with a
//! tracial state. `analyze` decomposes it into its central blocks
//! `⊕ M_{n_i}` with trace weights `c_i`, the finite normal form every such
//! algebra has.

use std::sync::OnceLock;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

use crate::caps::{Caps, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::linalg::{self, CMat, CVec};

/// Seed for the generic central element draw in `analyze`; fixed so repeated
/// runs produce identical block splits.
const ANALYZE_SEED: u64 = 0x5a17_ace5;

/// The tracial state carried by a [`StarAlgebra`].
#[derive(Debug, Clone)]
pub enum TraceForm {
    /// `τ(x) = Tr(x)/d`, the restriction of the normalized matrix trace.
    AmbientNormalized,
    /// `τ(x) = ⟨x v, v⟩` for a unit vector `v`.
    Vector(CVec),
    /// `τ(x) = Tr(ρ x)` for a positive unit-trace density matrix `ρ`.
    Density(CMat),
}

impl TraceForm {
    pub fn apply(&self, x: &CMat) -> Complex64 {
        match self {
            TraceForm::AmbientNormalized => x.trace() / Complex64::new(x.nrows() as f64, 0.0),
            TraceForm::Vector(v) => (v.adjoint() * x * v)[(0, 0)],
            TraceForm::Density(rho) => (rho * x).trace(),
        }
    }

    /// Product trace on a Kronecker product.
    pub fn tensor(&self, other: &TraceForm, d_left: usize, d_right: usize) -> TraceForm {
        match (self, other) {
            (TraceForm::AmbientNormalized, TraceForm::AmbientNormalized) => {
                TraceForm::AmbientNormalized
            }
            (TraceForm::Vector(a), TraceForm::Vector(b)) => TraceForm::Vector(a.kronecker(b)),
            (a, b) => TraceForm::Density(a.density(d_left).kronecker(&b.density(d_right))),
        }
    }

    /// The density matrix representing this functional on `M_d`.
    pub fn density(&self, d: usize) -> CMat {
        match self {
            TraceForm::AmbientNormalized => {
                linalg::identity(d) / Complex64::new(d as f64, 0.0)
            }
            TraceForm::Vector(v) => v * v.adjoint(),
            TraceForm::Density(rho) => rho.clone(),
        }
    }

    /// Trace built from minimal central projections and their weights,
    /// `τ = Σ c_i · Tr(P_i ·)/rank(P_i)`.
    pub fn from_blocks(projections: &[CMat], weights: &[f64]) -> TraceForm {
        let d = projections[0].nrows();
        let mut rho = CMat::zeros(d, d);
        for (p, &c) in projections.iter().zip(weights) {
            let rank = p.trace().re;
            rho += p * Complex64::new(c / rank, 0.0);
        }
        TraceForm::Density(rho)
    }
}

/// Multiplication table of an orthonormal algebra basis:
/// `b_i b_j = Σ_k coeff · b_k`, stored sparsely per `(i, j)`.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    k: usize,
    table: Vec<Vec<(u32, Complex64)>>,
}

impl StructureConstants {
    pub fn new(k: usize, table: Vec<Vec<(u32, Complex64)>>) -> Self {
        assert_eq!(table.len(), k * k);
        StructureConstants { k, table }
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn entry(&self, i: usize, j: usize) -> &[(u32, Complex64)] {
        &self.table[i * self.k + j]
    }

    /// Coordinates of the product of two coordinate vectors.
    pub fn mul_coords(&self, x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::default(); self.k];
        for (i, &xi) in x.iter().enumerate() {
            if xi.norm_sqr() < 1e-300 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj.norm_sqr() < 1e-300 {
                    continue;
                }
                for &(k, c) in self.entry(i, j) {
                    out[k as usize] += xi * yj * c;
                }
            }
        }
        out
    }

    /// The matrix of left multiplication by the coordinate vector `x`.
    pub fn left_mult_matrix(&self, x: &[Complex64]) -> CMat {
        let mut m = CMat::zeros(self.k, self.k);
        for (i, &xi) in x.iter().enumerate() {
            if xi.norm_sqr() < 1e-300 {
                continue;
            }
            for j in 0..self.k {
                for &(k, c) in self.entry(i, j) {
                    m[(k as usize, j)] += xi * c;
                }
            }
        }
        m
    }
}

/// One central block of a finite-dimensional *-algebra: a full matrix factor
/// `M_size` carrying trace weight `weight`.
#[derive(Debug, Clone, Copy, Serialize, PartialEq)]
pub struct Block {
    pub size: usize,
    pub weight: f64,
}

/// Structural report produced by [`analyze`]: the `⊕ M_{n_i}` decomposition.
#[derive(Debug, Clone, Serialize, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct AlgebraReport {
    pub dimension: usize,
    pub center_dim: usize,
    pub is_factor: bool,
    pub blocks: Vec<Block>,
}

impl AlgebraReport {
    /// Multiset equality of blocks within a weight tolerance.
    pub fn blocks_match(&self, expected: &[(usize, f64)], tol: f64) -> bool {
        if self.blocks.len() != expected.len() {
            return false;
        }
        let mut exp: Vec<(usize, f64)> = expected.to_vec();
        exp.sort_by(|a, b| (a.0, a.1).partial_cmp(&(b.0, b.1)).unwrap());
        self.blocks
            .iter()
            .zip(exp)
            .all(|(b, (n, c))| b.size == n && (b.weight - c).abs() < tol)
    }
}

/// `analyze` output including the minimal central projections (ambient
/// matrices), ordered consistently with `report.blocks`.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub report: AlgebraReport,
    pub central_projections: Vec<CMat>,
}

/// A unital self-adjoint matrix algebra with a distinguished trace.
#[derive(Debug)]
pub struct StarAlgebra {
    dim: usize,
    basis: Vec<CMat>,
    trace: TraceForm,
    tol: f64,
    structure: OnceLock<StructureConstants>,
    basis_traces: OnceLock<Vec<Complex64>>,
    /// Privileged generating set in basis coordinates; when present, center
    /// computations only impose commutation against these.
    gen_coords: Option<Vec<Vec<Complex64>>>,
}

impl Clone for StarAlgebra {
    fn clone(&self) -> Self {
        StarAlgebra {
            dim: self.dim,
            basis: self.basis.clone(),
            trace: self.trace.clone(),
            tol: self.tol,
            structure: clone_oncelock(&self.structure),
            basis_traces: clone_oncelock(&self.basis_traces),
            gen_coords: self.gen_coords.clone(),
        }
    }
}

fn clone_oncelock<T: Clone>(cell: &OnceLock<T>) -> OnceLock<T> {
    let out = OnceLock::new();
    if let Some(v) = cell.get() {
        let _ = out.set(v.clone());
    }
    out
}

impl StarAlgebra {
    /// Builds an algebra from an orthonormal basis without closure checks.
    /// Callers must guarantee the span is unital and closed under products
    /// and adjoints; `verify_closure` can confirm after the fact.
    pub fn from_orthonormal_basis(dim: usize, basis: Vec<CMat>, trace: TraceForm, tol: f64) -> Self {
        StarAlgebra {
            dim,
            basis,
            trace,
            tol,
            structure: OnceLock::new(),
            basis_traces: OnceLock::new(),
            gen_coords: None,
        }
    }

    pub fn with_structure(mut self, sc: StructureConstants) -> Self {
        assert_eq!(sc.dim(), self.basis.len());
        self.structure = OnceLock::new();
        let _ = self.structure.set(sc);
        self
    }

    pub fn with_generator_coords(mut self, gens: Vec<Vec<Complex64>>) -> Self {
        self.gen_coords = Some(gens);
        self
    }

    pub fn with_trace(mut self, trace: TraceForm) -> Self {
        self.trace = trace;
        self
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    /// Builds the algebra spanned by `mats` (plus the identity), verifying
    /// closure under adjoints and products.
    pub fn from_span(dim: usize, mats: &[CMat], trace: TraceForm, tol: f64) -> Result<Self> {
        for m in mats {
            linalg::check_square(dim, m)?;
        }
        let mut all = vec![linalg::identity(dim)];
        all.extend_from_slice(mats);
        let basis = linalg::orthonormalize(&all, tol);
        let alg = StarAlgebra::from_orthonormal_basis(dim, basis, trace, tol);
        alg.verify_closure()?;
        Ok(alg)
    }

    /// The scalar multiples of the identity in `M_d`.
    pub fn scalars(d: usize) -> Self {
        let id = linalg::identity(d) / Complex64::new((d as f64).sqrt(), 0.0);
        StarAlgebra::from_orthonormal_basis(d, vec![id], TraceForm::AmbientNormalized, DEFAULT_TOL)
    }

    /// All of `M_d`, with matrix units as basis.
    pub fn full_matrix(d: usize) -> Self {
        let mut basis = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let mut m = CMat::zeros(d, d);
                m[(i, j)] = Complex64::new(1.0, 0.0);
                basis.push(m);
            }
        }
        StarAlgebra::from_orthonormal_basis(d, basis, TraceForm::AmbientNormalized, DEFAULT_TOL)
    }

    /// The diagonal matrices in `M_d`.
    pub fn diagonal(d: usize) -> Self {
        let mut basis = Vec::with_capacity(d);
        for i in 0..d {
            let mut m = CMat::zeros(d, d);
            m[(i, i)] = Complex64::new(1.0, 0.0);
            basis.push(m);
        }
        StarAlgebra::from_orthonormal_basis(d, basis, TraceForm::AmbientNormalized, DEFAULT_TOL)
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CMat] {
        &self.basis
    }

    pub fn trace_form(&self) -> &TraceForm {
        &self.trace
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Relative residual of `x` against the algebra's span.
    pub fn membership_residual(&self, x: &CMat) -> f64 {
        linalg::span_residual(&self.basis, x)
    }

    pub fn contains(&self, x: &CMat) -> bool {
        self.membership_residual(x) < self.tol
    }

    /// Coordinates of `x` in the orthonormal basis; errors if `x` is outside.
    pub fn coords_of(&self, x: &CMat) -> Result<Vec<Complex64>> {
        linalg::check_square(self.dim, x)?;
        let scale = linalg::hs_norm(x).max(1.0);
        let (coords, residual) = linalg::coords_and_residual(&self.basis, x);
        let r = linalg::hs_norm(&residual) / scale;
        if r >= self.tol {
            return Err(Error::NotInAlgebra { residual: r });
        }
        Ok(coords)
    }

    pub fn element_from_coords(&self, coords: &[Complex64]) -> CMat {
        let mut out = CMat::zeros(self.dim, self.dim);
        for (b, &c) in self.basis.iter().zip(coords) {
            out += b * c;
        }
        out
    }

    /// A pseudorandom element of the algebra (complex Gaussian-ish coords).
    pub fn seeded_element(&self, seed: u64) -> CMat {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let coords: Vec<Complex64> = (0..self.basis.len())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        self.element_from_coords(&coords)
    }

    /// The trace value `τ(x)`; errors when `x` lies outside the algebra.
    pub fn trace(&self, x: &CMat) -> Result<Complex64> {
        let scale = linalg::hs_norm(x).max(1.0);
        let (_, residual) = linalg::coords_and_residual(&self.basis, x);
        let r = linalg::hs_norm(&residual) / scale;
        if r >= self.tol {
            return Err(Error::NotInAlgebra { residual: r });
        }
        Ok(self.trace.apply(x))
    }

    /// τ on basis coordinates.
    pub fn trace_of_coords(&self, coords: &[Complex64]) -> Complex64 {
        let traces = self.basis_traces();
        coords.iter().zip(traces).map(|(c, t)| c * t).sum()
    }

    fn basis_traces(&self) -> &[Complex64] {
        self.basis_traces
            .get_or_init(|| self.basis.iter().map(|b| self.trace.apply(b)).collect())
    }

    /// Multiplication table over the orthonormal basis (computed on demand
    /// if the constructor did not supply closed-form constants).
    pub fn structure(&self) -> &StructureConstants {
        self.structure.get_or_init(|| {
            let k = self.basis.len();
            let mut table = vec![Vec::new(); k * k];
            for i in 0..k {
                for j in 0..k {
                    let prod = &self.basis[i] * &self.basis[j];
                    let (coords, _) = linalg::coords_and_residual(&self.basis, &prod);
                    let entry = &mut table[i * k + j];
                    for (idx, c) in coords.into_iter().enumerate() {
                        if c.norm() > 1e-13 {
                            entry.push((idx as u32, c));
                        }
                    }
                }
            }
            StructureConstants::new(k, table)
        })
    }

    /// Confirms the defining invariants: identity in the span, closure under
    /// adjoint, and closure under multiplication, all within `tol`.
    pub fn verify_closure(&self) -> Result<()> {
        let id = linalg::identity(self.dim);
        let r = linalg::span_residual(&self.basis, &id);
        if r >= self.tol {
            return Err(Error::invalid(format!(
                "identity not in span (residual {r:.3e})"
            )));
        }
        for b in &self.basis {
            let r = linalg::span_residual(&self.basis, &b.adjoint());
            if r >= self.tol {
                return Err(Error::invalid(format!(
                    "span not adjoint-closed (residual {r:.3e})"
                )));
            }
        }
        for a in &self.basis {
            for b in &self.basis {
                let r = linalg::span_residual(&self.basis, &(a * b));
                if r >= self.tol {
                    return Err(Error::invalid(format!(
                        "span not closed under products (residual {r:.3e})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Span equality with another algebra on the same ambient space.
    pub fn same_span(&self, other: &StarAlgebra, tol: f64) -> bool {
        self.dim == other.dim && linalg::same_span(&self.basis, &other.basis, tol)
    }
}

/// The smallest unital self-adjoint subalgebra of `M_d` containing `gens`.
///
/// Saturation multiplies all basis pairs, adjoins adjoints, re-orthonormalizes
/// and repeats; the basis dimension strictly increases each round, so the loop
/// terminates within `d²` rounds.
pub fn generate_algebra(d: usize, gens: &[CMat], tol: f64) -> Result<StarAlgebra> {
    if d == 0 {
        return Err(Error::invalid("ambient dimension must be ≥ 1"));
    }
    for g in gens {
        linalg::check_square(d, g)?;
    }
    let mut basis = vec![linalg::identity(d) / Complex64::new((d as f64).sqrt(), 0.0)];
    for g in gens {
        linalg::extend_basis(&mut basis, g, tol);
        linalg::extend_basis(&mut basis, &g.adjoint(), tol);
    }
    loop {
        let before = basis.len();
        let snapshot = basis.clone();
        for a in &snapshot {
            linalg::extend_basis(&mut basis, &a.adjoint(), tol);
            for b in &snapshot {
                linalg::extend_basis(&mut basis, &(a * b), tol);
            }
        }
        if basis.len() == before {
            break;
        }
        if basis.len() > d * d {
            return Err(Error::Degenerate(format!(
                "span saturation exceeded ambient dimension bound {}",
                d * d
            )));
        }
    }
    Ok(StarAlgebra::from_orthonormal_basis(
        d,
        basis,
        TraceForm::AmbientNormalized,
        tol,
    ))
}

/// The commutant `{m ∈ M_d : mb = bm for all b ∈ A}`, as a `StarAlgebra`
/// carrying the ambient normalized trace.
pub fn commutant(alg: &StarAlgebra) -> StarAlgebra {
    let d = alg.ambient_dim();
    let d2 = d * d;
    let k = alg.dimension();
    // vec(bm − mb) = (I ⊗ b − bᵀ ⊗ I) vec(m), column-major vec.
    let mut system = CMat::zeros(k * d2, d2);
    let id = linalg::identity(d);
    for (row_block, b) in alg.basis().iter().enumerate() {
        let block = linalg::kron(&id, b) - linalg::kron(&b.transpose(), &id);
        system.view_mut((row_block * d2, 0), (d2, d2)).copy_from(&block);
    }
    let null = linalg::nullspace(&system, alg.tol());
    let mats: Vec<CMat> = null
        .iter()
        .map(|v| CMat::from_column_slice(d, d, v.as_slice()))
        .collect();
    let basis = linalg::orthonormalize(&mats, alg.tol());
    StarAlgebra::from_orthonormal_basis(d, basis, TraceForm::AmbientNormalized, alg.tol())
}

/// Orthonormal coordinate basis of the center of `alg`.
///
/// Solves `xg = gx` against the privileged generator set when one is
/// attached, otherwise against every basis element.
pub fn center_coords(alg: &StarAlgebra) -> Vec<CVec> {
    let k = alg.dimension();
    let gen_sets: Vec<Vec<Complex64>> = match &alg.gen_coords {
        Some(g) => g.clone(),
        None => (0..k)
            .map(|i| {
                let mut v = vec![Complex64::default(); k];
                v[i] = Complex64::new(1.0, 0.0);
                v
            })
            .collect(),
    };
    relative_commutant_coords(alg, &gen_sets)
}

/// Coordinate basis of `{x ∈ A : x c = c x for every constraint c}`, the
/// relative commutant of a coordinate-given subset inside the algebra.
pub fn relative_commutant_coords(alg: &StarAlgebra, constraints: &[Vec<Complex64>]) -> Vec<CVec> {
    let k = alg.dimension();
    let sc = alg.structure();
    // Running null basis, iteratively restricted by each constraint's
    // commutation system.
    let mut null: Vec<CVec> = (0..k)
        .map(|i| {
            let mut v = CVec::zeros(k);
            v[i] = Complex64::new(1.0, 0.0);
            v
        })
        .collect();
    for g in constraints {
        if null.is_empty() {
            break;
        }
        let lg = sc.left_mult_matrix(g);
        let ad = &lg - right_mult_matrix(sc, g);
        // Restrict ad to the current null space and intersect.
        let mut restricted = CMat::zeros(k, null.len());
        for (j, v) in null.iter().enumerate() {
            restricted.set_column(j, &(&ad * v));
        }
        let small_null = linalg::nullspace(&restricted, alg.tol());
        null = small_null
            .iter()
            .map(|c| {
                let mut out = CVec::zeros(k);
                for (j, v) in null.iter().enumerate() {
                    out += v * c[j];
                }
                out
            })
            .collect();
    }
    null
}

fn right_mult_matrix(sc: &StructureConstants, x: &[Complex64]) -> CMat {
    let k = sc.dim();
    let mut m = CMat::zeros(k, k);
    for (j, &xj) in x.iter().enumerate() {
        if xj.norm_sqr() < 1e-300 {
            continue;
        }
        for i in 0..k {
            for &(kk, c) in sc.entry(i, j) {
                m[(kk as usize, i)] += xj * c;
            }
        }
    }
    m
}

/// Central block decomposition with the default deterministic seed.
pub fn analyze(alg: &StarAlgebra) -> Result<AlgebraReport> {
    Ok(analyze_full(alg, ANALYZE_SEED)?.report)
}

/// Central block decomposition: center dimension, factor flag, and the
/// multiset of blocks `(n_i, c_i)` with `Σ n_i² = dim` and `Σ c_i = 1`.
///
/// A generic self-adjoint central element is drawn from a seeded RNG and
/// spectrally split; eigenvalue collisions trigger a redraw (16 attempts).
pub fn analyze_full(alg: &StarAlgebra, seed: u64) -> Result<Analysis> {
    let k = alg.dimension();
    if k == 0 {
        return Err(Error::invalid("empty algebra"));
    }
    let center = center_coords(alg);
    let c = center.len();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);

    let mut projections: Option<Vec<(f64, CMat)>> = None;
    for _attempt in 0..16 {
        // Random real combination of Hermitian and anti-Hermitian parts of
        // the center basis spans the self-adjoint central elements.
        let mut z_coords = CVec::zeros(k);
        for v in &center {
            let r: f64 = rng.gen_range(-1.0..1.0);
            z_coords += v * Complex64::new(r, 0.0);
        }
        let z = alg.element_from_coords(z_coords.as_slice());
        let zh = (&z + z.adjoint()) * Complex64::new(0.5, 0.0);
        let s: f64 = rng.gen_range(-1.0..1.0);
        let za = (&z - z.adjoint()) * Complex64::new(0.0, -0.5 * s);
        let candidate = &zh + &za;
        let split = linalg::spectral_projections(&candidate, alg.tol());
        if split.len() == c {
            projections = Some(split);
            break;
        }
    }
    let projections = projections.ok_or_else(|| {
        Error::Degenerate(format!(
            "generic central element kept colliding ({c} blocks expected)"
        ))
    })?;

    let sc = alg.structure();
    let mut blocks = Vec::with_capacity(c);
    let mut central_projections = Vec::with_capacity(c);
    let mut dim_check = 0usize;
    let mut weight_sum = 0.0;
    for (idx, (_, p)) in projections.into_iter().enumerate() {
        let p_coords = alg.coords_of(&p).map_err(|_| {
            Error::Degenerate("spectral projection escaped the algebra span".into())
        })?;
        // dim(P·A) = n² because P is a minimal central projection.
        let lp = sc.left_mult_matrix(&p_coords);
        let rank = matrix_rank(&lp, alg.tol());
        let n = (rank as f64).sqrt().round() as usize;
        if n * n != rank {
            return Err(Error::Degenerate(format!(
                "block dimension {rank} of central compression is not a square"
            )));
        }
        let weight = alg.trace.apply(&p);
        if weight.im.abs() > 1e-7 {
            return Err(Error::Degenerate(
                "central projection has non-real trace".into(),
            ));
        }
        if weight.re < alg.tol() {
            return Err(Error::FaithfulnessFailure {
                index: idx,
                weight: weight.re,
            });
        }
        dim_check += n * n;
        weight_sum += weight.re;
        blocks.push(Block {
            size: n,
            weight: weight.re,
        });
        central_projections.push(p);
    }
    if dim_check != k {
        return Err(Error::Degenerate(format!(
            "block sizes give Σ n_i² = {dim_check}, algebra dimension is {k}"
        )));
    }
    if (weight_sum - 1.0).abs() > 1e-7 {
        return Err(Error::Degenerate(format!(
            "central weights sum to {weight_sum}, expected 1"
        )));
    }

    let mut order: Vec<usize> = (0..blocks.len()).collect();
    order.sort_by(|&a, &b| {
        (blocks[a].size, blocks[a].weight)
            .partial_cmp(&(blocks[b].size, blocks[b].weight))
            .unwrap()
    });
    let blocks: Vec<Block> = order.iter().map(|&i| blocks[i]).collect();
    let central_projections: Vec<CMat> =
        order.iter().map(|&i| central_projections[i].clone()).collect();

    Ok(Analysis {
        report: AlgebraReport {
            dimension: k,
            center_dim: c,
            is_factor: c == 1,
            blocks,
        },
        central_projections,
    })
}

fn matrix_rank(m: &CMat, tol: f64) -> usize {
    let svd = m.clone().svd(false, false);
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    if smax == 0.0 {
        return 0;
    }
    svd.singular_values
        .iter()
        .filter(|&&s| s > tol * smax)
        .count()
}

/// The set of achievable projection traces `{Σ c_i k_i/n_i : 0 ≤ k_i ≤ n_i}`,
/// sorted ascending and deduplicated.
pub fn trace_spectrum(report: &AlgebraReport, caps: &Caps) -> Result<Vec<f64>> {
    let mut combos: usize = 1;
    for b in &report.blocks {
        combos = combos.saturating_mul(b.size + 1);
        if combos > caps.spectrum_points {
            return Err(Error::cap(format!(
                "trace spectrum needs more than {} combinations",
                caps.spectrum_points
            )));
        }
    }
    let mut values = vec![0.0f64];
    for b in &report.blocks {
        let mut next = Vec::with_capacity(values.len() * (b.size + 1));
        for v in &values {
            for k in 0..=b.size {
                next.push(v + b.weight * k as f64 / b.size as f64);
            }
        }
        values = next;
    }
    values.sort_by(|a, b| a.total_cmp(b));
    values.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    Ok(values)
}

/// Kronecker tensor product of two algebras with the product trace.
pub fn tensor(a: &StarAlgebra, b: &StarAlgebra) -> StarAlgebra {
    let mut basis = Vec::with_capacity(a.dimension() * b.dimension());
    for x in a.basis() {
        for y in b.basis() {
            basis.push(linalg::kron(x, y));
        }
    }
    // Kronecker products of HS-orthonormal bases are HS-orthonormal.
    let trace = a
        .trace_form()
        .tensor(b.trace_form(), a.ambient_dim(), b.ambient_dim());
    StarAlgebra::from_orthonormal_basis(
        a.ambient_dim() * b.ambient_dim(),
        basis,
        trace,
        a.tol().max(b.tol()),
    )
}
