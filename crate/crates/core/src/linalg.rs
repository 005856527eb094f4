//! Complex dense linear algebra helpers shared by the algebra modules.
//!
//! Matrices are `nalgebra` dense matrices over `Complex64`; the inner product
//! throughout is Hilbert–Schmidt, `⟨a, b⟩ = Tr(b* a)`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

pub fn identity(d: usize) -> CMat {
    CMat::identity(d, d)
}

pub fn adjoint(m: &CMat) -> CMat {
    m.adjoint()
}

/// Hilbert–Schmidt inner product `Tr(b* a)`.
pub fn hs_dot(a: &CMat, b: &CMat) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| y.conj() * x).sum()
}

pub fn hs_norm(a: &CMat) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

pub fn is_finite(m: &CMat) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Coordinates of `x` in an HS-orthonormal `basis`, plus the residual after
/// removing the projection. The caller decides what residual counts as zero.
pub fn coords_and_residual(basis: &[CMat], x: &CMat) -> (Vec<Complex64>, CMat) {
    let mut residual = x.clone();
    let mut coords = vec![Complex64::default(); basis.len()];
    // Two classical Gram-Schmidt passes keep the residual orthogonal to
    // working precision even for nearly dependent inputs.
    for _ in 0..2 {
        for (i, b) in basis.iter().enumerate() {
            let c = hs_dot(&residual, b);
            coords[i] += c;
            residual -= b * c;
        }
    }
    (coords, residual)
}

/// Extends an HS-orthonormal basis by `candidate` if it is independent.
///
/// Returns `true` when the basis grew. `tol` is relative to the candidate's
/// own norm (a candidate that is numerically zero never extends).
pub fn extend_basis(basis: &mut Vec<CMat>, candidate: &CMat, tol: f64) -> bool {
    let scale = hs_norm(candidate).max(1.0);
    let (_, residual) = coords_and_residual(basis, candidate);
    let r = hs_norm(&residual);
    if r <= tol * scale {
        return false;
    }
    basis.push(residual / Complex64::new(r, 0.0));
    true
}

/// HS-orthonormalizes a list of matrices, dropping dependent ones.
pub fn orthonormalize(mats: &[CMat], tol: f64) -> Vec<CMat> {
    let mut basis: Vec<CMat> = Vec::new();
    for m in mats {
        extend_basis(&mut basis, m, tol);
    }
    basis
}

/// Relative membership residual of `x` in the span of `basis`.
pub fn span_residual(basis: &[CMat], x: &CMat) -> f64 {
    let scale = hs_norm(x).max(1.0);
    let (_, residual) = coords_and_residual(basis, x);
    hs_norm(&residual) / scale
}

/// True when the two orthonormal bases span the same subspace, with every
/// cross-projection residual below `tol`.
pub fn same_span(a: &[CMat], b: &[CMat], tol: f64) -> bool {
    a.len() == b.len()
        && a.iter().all(|m| span_residual(b, m) < tol)
        && b.iter().all(|m| span_residual(a, m) < tol)
}

/// Orthonormal basis of the null space of `m`, via SVD.
pub fn nullspace(m: &CMat, rel_tol: f64) -> Vec<CVec> {
    let ncols = m.ncols();
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let threshold = rel_tol * smax.max(1.0);
    let mut out = Vec::new();
    for i in 0..ncols {
        let sv = if i < svd.singular_values.len() {
            svd.singular_values[i]
        } else {
            0.0
        };
        if sv <= threshold {
            out.push(v_t.row(i).adjoint());
        }
    }
    out
}

/// Clusters the (real) eigenvalues of a Hermitian matrix and returns the
/// spectral projection of each cluster, ordered by ascending eigenvalue.
///
/// Two eigenvalues land in the same cluster when they are closer than
/// `tol · scale`, with `scale` the spectral spread.
pub fn spectral_projections(z: &CMat, tol: f64) -> Vec<(f64, CMat)> {
    let d = z.nrows();
    let eig = nalgebra::SymmetricEigen::new(z.clone());
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let lo = eig.eigenvalues[order[0]];
    let hi = eig.eigenvalues[order[d - 1]];
    let scale = (hi - lo).abs().max(1.0);

    let mut projections = Vec::new();
    let mut start = 0;
    while start < d {
        let mut end = start + 1;
        while end < d
            && eig.eigenvalues[order[end]] - eig.eigenvalues[order[end - 1]] <= tol * scale
        {
            end += 1;
        }
        let mut p = CMat::zeros(d, d);
        let mut mean = 0.0;
        for &idx in &order[start..end] {
            let v = eig.eigenvectors.column(idx);
            p += v * v.adjoint();
            mean += eig.eigenvalues[idx];
        }
        projections.push((mean / (end - start) as f64, p));
        start = end;
    }
    projections
}

/// Rank of the span of `mats`, decided by incremental orthonormalization.
pub fn span_rank(mats: &[CMat], tol: f64) -> usize {
    orthonormalize(mats, tol).len()
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// The distance of `p` from being an orthogonal projection, `‖p² − p‖ + ‖p* − p‖`.
pub fn projection_defect(p: &CMat) -> f64 {
    hs_norm(&(p * p - p)) + hs_norm(&(adjoint(p) - p))
}

pub fn check_square(d: usize, m: &CMat) -> Result<()> {
    if m.nrows() != d || m.ncols() != d {
        return Err(Error::invalid(format!(
            "expected {d}×{d} matrix, got {}×{}",
            m.nrows(),
            m.ncols()
        )));
    }
    if !is_finite(m) {
        return Err(Error::invalid("matrix has non-finite entries"));
    }
    Ok(())
}
