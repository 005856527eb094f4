//! The group-measure space construction for finite data.
//!
//! A finite action `σ: G ↷ (X, μ)` is represented on `ℂ^{|G|·|X|}` with basis
//! vectors indexed by pairs `(g, x)`; the space part uses the orthonormalized
//! vectors `δ_x/√μ(x)`, which makes every group unitary a genuine permutation
//! matrix. The algebra generated by the multiplication operators `M_f` and
//! the unitaries `U_g` is spanned by the monomials `M_{δ_x} U_g`, with
//! multiplication `(δ_x u_g)(δ_y u_h) = [x = g·y] · δ_x u_{gh}` and adjoint
//! `(δ_x u_g)* = δ_{g⁻¹·x} u_{g⁻¹}`. The trace is the vector state at
//! `Σ_x √μ(x) · e_{(e,x)}`, which evaluates `Σ f_g u_g ↦ Σ_x f_e(x) μ(x)`.

use num_complex::Complex64;
use serde::Serialize;

use crate::actions::{weight_to_f64, FiniteAction, OrbitSignature};
use crate::groups::GroupOps;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::linalg::{CMat, CVec};
use crate::staralg::{self, StarAlgebra, StructureConstants, TraceForm};

/// The represented crossed product of a finite action.
#[derive(Debug, Clone)]
pub struct CrossedProduct {
    pub action: FiniteAction,
    /// The full algebra, dimension `|G|·|X|`, with monomial basis.
    pub algebra: StarAlgebra,
    /// The image of `L^∞(X)`: the span of the indicator monomials.
    pub diagonal: StarAlgebra,
    unitaries: Vec<CMat>,
    trace_vector: CVec,
}

/// Cartan-subalgebra diagnostics for the inclusion `L^∞(X) ⊆ L^∞(X) ⋊ G`.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CartanReport {
    pub is_masa: bool,
    pub normalizer_dense: bool,
    pub cartan_invariant: OrbitSignature,
}

/// Two-sided Feldman–Moore comparison: orbit equivalence computed on the
/// action side against equality of the Cartan invariants computed on the
/// algebra side.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FeldmanMooreReport {
    pub oe: bool,
    pub cartan_equal: bool,
    pub consistent: bool,
}

impl CrossedProduct {
    fn atom_count(&self) -> usize {
        self.action.space.len()
    }

    fn group_order(&self) -> usize {
        self.action.group.order()
    }

    fn idx(&self, g: u32, x: usize) -> usize {
        g as usize * self.atom_count() + x
    }

    /// The raw (unnormalized) monomial `M_{δ_x} U_g` as a dense matrix.
    pub fn monomial(&self, g: u32, x: usize) -> CMat {
        let nx = self.atom_count();
        let ng = self.group_order();
        let n = nx * ng;
        let mut m = CMat::zeros(n, n);
        let ginv = self.action.group.inv_idx(g);
        let y = self.action.apply(ginv, x);
        for k in 0..ng as u32 {
            let gk = self.action.group.mul_idx(g, k);
            m[(gk as usize * nx + x, k as usize * nx + y)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// The unitary `U_g`.
    pub fn unitary(&self, g: u32) -> &CMat {
        &self.unitaries[g as usize]
    }

    /// The multiplication operator `M_f` for a function given by atom values.
    pub fn mult_operator(&self, f: &[Complex64]) -> CMat {
        let nx = self.atom_count();
        let ng = self.group_order();
        let n = nx * ng;
        let mut m = CMat::zeros(n, n);
        for k in 0..ng {
            for x in 0..nx {
                m[(k * nx + x, k * nx + x)] = f[x];
            }
        }
        m
    }

    /// The finite sum `Σ_g M_{f_g} U_g`, one coefficient function per group
    /// element.
    pub fn finite_sum(&self, coefficients: &[Vec<Complex64>]) -> CMat {
        let mut out = CMat::zeros(self.algebra.ambient_dim(), self.algebra.ambient_dim());
        for (g, f) in coefficients.iter().enumerate() {
            out += self.mult_operator(f) * &self.unitaries[g];
        }
        out
    }

    pub fn trace_vector(&self) -> &CVec {
        &self.trace_vector
    }

    /// Index of the monomial basis element `M_{δ_x} U_g / √|G|`.
    pub fn monomial_index(&self, g: u32, x: usize) -> usize {
        self.idx(g, x)
    }

    /// Coordinates of `Σ_g M_{f_g} U_g` in the monomial basis:
    /// `δ_x u_g = √|G| · b_{(g,x)}`.
    pub fn sum_coords(&self, coefficients: &[Vec<Complex64>]) -> Vec<Complex64> {
        let nx = self.atom_count();
        let scale = (self.group_order() as f64).sqrt();
        let mut coords = vec![Complex64::default(); self.algebra.dimension()];
        for (g, f) in coefficients.iter().enumerate() {
            for (x, &fx) in f.iter().enumerate() {
                coords[g * nx + x] = fx * scale;
            }
        }
        coords
    }

    /// τ evaluated through the vector state.
    pub fn trace(&self, x: &CMat) -> Result<Complex64> {
        self.algebra.trace(x)
    }

    /// Orbit partition recovered from the represented unitaries: the image
    /// of the basis vector `(e, y)` under `U_g` reveals `g·y`, so the orbit
    /// structure is read off the matrices rather than the input action.
    pub fn represented_orbits(&self) -> Vec<Vec<usize>> {
        let nx = self.atom_count();
        let ng = self.group_order();
        let e = self.action.group.identity_index() as usize;
        let mut perms: Vec<Vec<usize>> = Vec::with_capacity(ng);
        for u in &self.unitaries {
            let mut p = vec![usize::MAX; nx];
            for y in 0..nx {
                let col = e * nx + y;
                let row = (0..u.nrows())
                    .find(|&r| u[(r, col)].norm() > 0.5)
                    .expect("unitary column has a unit entry");
                p[y] = row % nx;
            }
            perms.push(p);
        }
        let mut seen = vec![false; nx];
        let mut orbits = Vec::new();
        for x in 0..nx {
            if seen[x] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut stack = vec![x];
            seen[x] = true;
            while let Some(y) = stack.pop() {
                orbit.push(y);
                for p in &perms {
                    if !seen[p[y]] {
                        seen[p[y]] = true;
                        stack.push(p[y]);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    /// MASA check, normalizer density, and the Cartan invariant of the
    /// inclusion `diagonal ⊆ algebra`.
    pub fn cartan_report(&self) -> CartanReport {
        let nx = self.atom_count();
        let ng = self.group_order();
        let k = self.algebra.dimension();
        let e = self.action.group.identity_index();

        // relative commutant of the diagonal inside the algebra
        let constraints: Vec<Vec<Complex64>> = (0..nx)
            .map(|x| {
                let mut v = vec![Complex64::default(); k];
                v[self.idx(e, x)] = Complex64::new(1.0, 0.0);
                v
            })
            .collect();
        let rel = staralg::relative_commutant_coords(&self.algebra, &constraints);
        let is_masa = rel.len() == nx;

        // span of {M_f U_g : |f| ≡ 1} with f ranging over the sign patterns
        // 1 and (−1 at a single atom): rank k means the normalizer's span is
        // everything.
        let mut sign_patterns: Vec<Vec<f64>> = vec![vec![1.0; nx]];
        for x in 0..nx {
            let mut f = vec![1.0; nx];
            f[x] = -1.0;
            sign_patterns.push(f);
        }
        let mut vectors: Vec<CVec> = Vec::with_capacity(sign_patterns.len() * ng);
        for g in 0..ng as u32 {
            for f in &sign_patterns {
                let mut v = CVec::zeros(k);
                for (x, &fx) in f.iter().enumerate() {
                    v[self.idx(g, x)] = Complex64::new(fx, 0.0);
                }
                vectors.push(v);
            }
        }
        let normalizer_dense = vec_span_rank(&vectors, self.algebra.tol()) == k;

        let cartan_invariant =
            OrbitSignature::from_orbits(&self.action.space, &self.represented_orbits());
        CartanReport {
            is_masa,
            normalizer_dense,
            cartan_invariant,
        }
    }
}

fn vec_span_rank(vectors: &[CVec], tol: f64) -> usize {
    let mut basis: Vec<CVec> = Vec::new();
    for v in vectors {
        let mut r = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let c = b.dotc(&r);
                r -= b * c;
            }
        }
        let norm = r.norm();
        if norm > tol * v.norm().max(1.0) {
            basis.push(r / Complex64::new(norm, 0.0));
        }
    }
    basis.len()
}

/// Builds the represented crossed product of a finite action.
pub fn crossed_product(action: &FiniteAction, caps: &Caps) -> Result<CrossedProduct> {
    let nx = action.space.len();
    let ng = action.group.order();
    let n = nx * ng;
    if n > caps.crossed_dim {
        return Err(Error::cap(format!(
            "crossed product dimension |G|·|X| = {n} exceeds cap {}",
            caps.crossed_dim
        )));
    }
    let group = &action.group;
    let e = group.identity_index();
    let scale = 1.0 / (ng as f64).sqrt();

    // trace vector: group coordinate e, space part √μ(x)
    let mut v = CVec::zeros(n);
    for x in 0..nx {
        v[e as usize * nx + x] = Complex64::new(weight_to_f64(&action.space.weights[x]).sqrt(), 0.0);
    }

    // dense unitaries U_g: (k, y) ↦ (gk, g·y)
    let mut unitaries = Vec::with_capacity(ng);
    for g in 0..ng as u32 {
        let mut u = CMat::zeros(n, n);
        for k in 0..ng as u32 {
            let gk = group.mul_idx(g, k);
            for y in 0..nx {
                let gy = action.apply(g, y);
                u[(gk as usize * nx + gy, k as usize * nx + y)] = Complex64::new(1.0, 0.0);
            }
        }
        unitaries.push(u);
    }

    let cp_skeleton = CrossedProduct {
        action: action.clone(),
        algebra: StarAlgebra::scalars(1), // replaced below
        diagonal: StarAlgebra::scalars(1),
        unitaries,
        trace_vector: v.clone(),
    };

    // orthonormal monomial basis b_{(g,x)} = M_{δ_x} U_g / √|G|
    let mut basis = Vec::with_capacity(n);
    for g in 0..ng as u32 {
        for x in 0..nx {
            basis.push(cp_skeleton.monomial(g, x) * Complex64::new(scale, 0.0));
        }
    }

    // closed-form structure constants:
    // b_{(g,x)} b_{(h,y)} = [x = g·y] · (1/√|G|) · b_{(gh, x)}
    let mut table = vec![Vec::new(); n * n];
    for g in 0..ng as u32 {
        for x in 0..nx {
            let i = g as usize * nx + x;
            for h in 0..ng as u32 {
                let gh = group.mul_idx(g, h);
                for y in 0..nx {
                    if action.apply(g, y) != x {
                        continue;
                    }
                    let j = h as usize * nx + y;
                    table[i * n + j].push((
                        (gh as usize * nx + x) as u32,
                        Complex64::new(scale, 0.0),
                    ));
                }
            }
        }
    }
    let sc = StructureConstants::new(n, table);

    // privileged generators: the atom indicators and the group generators'
    // unitaries, in coordinates
    let mut gen_coords = Vec::new();
    for x in 0..nx {
        let mut c = vec![Complex64::default(); n];
        c[e as usize * nx + x] = Complex64::new(1.0, 0.0);
        gen_coords.push(c);
    }
    for g in group.generators() {
        let mut c = vec![Complex64::default(); n];
        for x in 0..nx {
            c[g as usize * nx + x] = Complex64::new(1.0, 0.0);
        }
        gen_coords.push(c);
    }

    let algebra = StarAlgebra::from_orthonormal_basis(
        n,
        basis,
        TraceForm::Vector(v.clone()),
        crate::caps::DEFAULT_TOL,
    )
    .with_structure(sc)
    .with_generator_coords(gen_coords);

    let mut diag_basis = Vec::with_capacity(nx);
    for x in 0..nx {
        diag_basis.push(cp_skeleton.monomial(e, x) * Complex64::new(scale, 0.0));
    }
    let diagonal = StarAlgebra::from_orthonormal_basis(
        n,
        diag_basis,
        TraceForm::Vector(v.clone()),
        crate::caps::DEFAULT_TOL,
    );

    Ok(CrossedProduct {
        algebra,
        diagonal,
        ..cp_skeleton
    })
}

/// Shorthand: crossed product followed by its Cartan report.
pub fn cartan_report(action: &FiniteAction, caps: &Caps) -> Result<CartanReport> {
    Ok(crossed_product(action, caps)?.cartan_report())
}

/// The finite Feldman–Moore comparison for two actions.
pub fn feldman_moore_check(
    a: &FiniteAction,
    b: &FiniteAction,
    caps: &Caps,
) -> Result<FeldmanMooreReport> {
    let oe = crate::actions::orbit_equivalent(a, b);
    let ca = crossed_product(a, caps)?.cartan_report();
    let cb = crossed_product(b, caps)?.cartan_report();
    let cartan_equal = ca.cartan_invariant == cb.cartan_invariant;
    Ok(FeldmanMooreReport {
        oe,
        cartan_equal,
        consistent: oe == cartan_equal,
    })
}
