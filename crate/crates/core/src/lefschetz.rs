//! Primitive (Lefschetz) decomposition of (p, q)-forms and the c_k constant
//! calculus.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::form::PqForm;
use crate::linalg::{self, CMatrix, CVector};

const PRIMITIVE_TOL: f64 = 1e-9;

/// c(p, q, n, k) = prod_{i=1}^k i (n - p - q - i + 1), the eigenvalue of
/// Lambda^k L^k on primitive (p, q)-forms; c_0 = 1.
pub fn c_constant(n: usize, p: usize, q: usize, k: usize) -> f64 {
    let mut acc = 1.0;
    for i in 1..=k as i64 {
        acc *= i as f64 * (n as i64 - p as i64 - q as i64 - i + 1) as f64;
    }
    acc
}

/// Lefschetz decomposition Phi = sum_k L^k psi_k with each psi_k primitive
/// at bidegree (p - k, q - k).
#[derive(Debug, Clone)]
pub struct PrimitiveDecomposition {
    parts: Vec<PqForm>,
}

impl PrimitiveDecomposition {
    /// Part psi_k, at bidegree (p - k, q - k).
    pub fn part(&self, k: usize) -> &PqForm {
        &self.parts[k]
    }

    pub fn parts(&self) -> &[PqForm] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// sum_k L^k psi_k.
    pub fn reconstruct(&self) -> Result<PqForm> {
        let mut acc: Option<PqForm> = None;
        for (k, psi) in self.parts.iter().enumerate() {
            let mut term = psi.clone();
            for _ in 0..k {
                term = term.lefschetz()?;
            }
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term)?,
            });
        }
        acc.ok_or_else(|| Error::OutOfRange("empty decomposition".into()))
    }
}

/// True when |Lambda psi| < tol * max(1, |psi|).
pub fn is_primitive(psi: &PqForm) -> bool {
    let lam = psi.lefschetz_dual();
    lam.norm_sq().sqrt() < PRIMITIVE_TOL * psi.norm_sq().sqrt().max(1.0)
}

/// Solve the Lefschetz decomposition as one global least-squares system over
/// the primitive subspaces: columns are L^k applied to a metric-orthonormal
/// kernel basis of Lambda at each (p - k, q - k).
pub fn primitive_decompose(phi: &PqForm) -> Result<PrimitiveDecomposition> {
    if phi.is_bundle_valued() {
        return Err(Error::BundleValued(phi.fiber_rank()));
    }
    let ctx = phi.ctx();
    let n = ctx.n();
    let (p, q) = (phi.p(), phi.q());
    let t = p.min(q);
    let dim = ctx.scalar_dim(p, q);
    // assemble columns
    let mut col_blocks: Vec<(usize, CMatrix)> = Vec::new();
    let mut total_cols = 0usize;
    for k in 0..=t {
        let (pk, qk) = (p - k, q - k);
        if pk + qk > 2 * n {
            continue;
        }
        let kernel = ctx.primitive_kernel(pk, qk);
        if kernel.ncols() == 0 {
            continue;
        }
        // lift each kernel column through L^k
        let mut lifted = CMatrix::zeros(dim, kernel.ncols());
        for col in 0..kernel.ncols() {
            let mut form = PqForm::from_coeffs(
                ctx,
                pk,
                qk,
                CVector::from_fn(kernel.nrows(), |i, _| kernel[(i, col)]),
            );
            for _ in 0..k {
                form = form.lefschetz()?;
            }
            for i in 0..dim {
                lifted[(i, col)] = form.coeffs()[i];
            }
        }
        total_cols += kernel.ncols();
        col_blocks.push((k, lifted));
    }
    let mut a = CMatrix::zeros(dim, total_cols);
    let mut offset = 0usize;
    for (_, block) in &col_blocks {
        for c in 0..block.ncols() {
            a.set_column(offset + c, &block.column(c));
        }
        offset += block.ncols();
    }
    // weight by the metric so the least squares is solved in the g-norm
    let whitener = ctx.whitener(p, q);
    let aw = whitener.as_ref() * &a;
    let bw = whitener.as_ref() * phi.coeffs();
    let x = linalg::lstsq(&aw, &bw, 1e-12);
    // split back into parts
    let mut parts: Vec<PqForm> = (0..=t)
        .map(|k| PqForm::zero(ctx, p - k, q - k))
        .collect();
    let mut offset = 0usize;
    for (k, _) in &col_blocks {
        let kernel = ctx.primitive_kernel(p - k, q - k);
        let weights = CVector::from_fn(kernel.ncols(), |i, _| x[offset + i]);
        let coeffs = kernel.as_ref() * weights;
        parts[*k] = PqForm::from_coeffs(ctx, p - k, q - k, coeffs);
        offset += kernel.ncols();
    }
    let decomp = PrimitiveDecomposition { parts };
    // reconstruction is the acceptance gate for the solve
    let recon = decomp.reconstruct()?;
    let residual = recon.sub(phi)?.norm_sq().sqrt();
    let scale = phi.norm_sq().sqrt().max(1.0);
    if residual > PRIMITIVE_TOL * scale {
        return Err(Error::DecompositionFailed(residual / scale));
    }
    Ok(decomp)
}

/// |Lambda^k L^k psi - c_k psi| for primitive psi; zero for every input.
pub fn lambda_l_power_defect(psi: &PqForm, k: usize) -> Result<f64> {
    if !is_primitive(psi) {
        return Err(Error::NotPrimitive(psi.lefschetz_dual().norm_sq().sqrt()));
    }
    let ctx = psi.ctx();
    let n = ctx.n();
    let (p, q) = (psi.p(), psi.q());
    let mut form = psi.clone();
    let mut overflow = false;
    for _ in 0..k {
        if form.p() >= n || form.q() >= n {
            overflow = true;
            break;
        }
        form = form.lefschetz()?;
    }
    let iterated = if overflow {
        PqForm::zero(ctx, p, q)
    } else {
        let mut back = form;
        for _ in 0..k {
            back = back.lefschetz_dual();
        }
        back
    };
    let expected = psi.scale(Complex64::new(c_constant(n, p, q, k), 0.0));
    Ok(iterated.sub(&expected)?.norm_sq().sqrt())
}

/// | |L^k eta|^2 - prod_{i=1}^k i (n + 1 - a - b - i) |eta|^2 | for primitive
/// eta at bidegree (a, b); zero for every input.
pub fn l_power_norm_defect(eta: &PqForm, k: usize) -> Result<f64> {
    if !is_primitive(eta) {
        return Err(Error::NotPrimitive(eta.lefschetz_dual().norm_sq().sqrt()));
    }
    let ctx = eta.ctx();
    let n = ctx.n();
    let (a, b) = (eta.p(), eta.q());
    let mut form = eta.clone();
    let mut overflow = false;
    for _ in 0..k {
        if form.p() >= n || form.q() >= n {
            overflow = true;
            break;
        }
        form = form.lefschetz()?;
    }
    let lk_norm = if overflow { 0.0 } else { form.norm_sq() };
    // prod i (n + 1 - a - b - i) is c_constant(n, a, b, k)
    let expected = c_constant(n, a, b, k) * eta.norm_sq();
    Ok((lk_norm - expected).abs())
}
