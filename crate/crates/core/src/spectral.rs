//! Estimate machinery: Takagi factorization, the C^k_{p,q} combinatorics,
//! T-operator norm bounds, the V_{(K1,K2)} subspace decomposition, compound
//! matrices and skew spectra.

use num_complex::Complex64;

use crate::context::AlgebraContext;
use crate::error::{Error, Result};
use crate::form::PqForm;
use crate::index::{combinations, lex_rank, replace_with_sign};
use crate::lefschetz::{c_constant, is_primitive};
use crate::linalg::{self, CMatrix, CVector, RMatrix};
use crate::riemannian::RealForm;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

// ---------------------------------------------------------------------------
// Takagi factorization
// ---------------------------------------------------------------------------

/// Takagi factorization V = U diag(Lambda) U^T of a complex symmetric matrix,
/// with U unitary and Lambda >= 0 (descending).
#[derive(Debug, Clone)]
pub struct TakagiFactorization {
    pub u: CMatrix,
    pub lambda: Vec<f64>,
}

impl TakagiFactorization {
    pub fn reconstruct(&self) -> CMatrix {
        let n = self.lambda.len();
        let d = CMatrix::from_fn(n, n, |i, j| if i == j { c(self.lambda[i]) } else { Complex64::ZERO });
        &self.u * d * self.u.transpose()
    }

    pub fn reconstruction_residual(&self, v: &CMatrix) -> f64 {
        (self.reconstruct() - v).norm()
    }

    pub fn unitarity_residual(&self) -> f64 {
        let n = self.u.nrows();
        (self.u.adjoint() * &self.u - CMatrix::identity(n, n)).norm()
    }
}

/// Compute the Takagi factorization through the real symmetric embedding
/// M = [[Re V, Im V], [Im V, -Re V]]: con-eigenvectors V conj(u) = s u with
/// u = x + i y correspond to M-eigenpairs M (x; y) = s (x; y), and the
/// multiplication-by-i map J(x; y) = (-y; x) swaps the +s and -s eigenspaces.
pub fn takagi(v: &CMatrix) -> Result<TakagiFactorization> {
    let n = v.nrows();
    if v.ncols() != n {
        return Err(Error::OutOfRange("matrix must be square".into()));
    }
    let mut sym_res = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            sym_res = sym_res.max((v[(i, j)] - v[(j, i)]).norm());
        }
    }
    if sym_res > 1e-9 * (1.0 + v.norm()) {
        return Err(Error::NotSymmetric(sym_res));
    }
    let mut m = RMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let re = v[(i, j)].re;
            let im = v[(i, j)].im;
            m[(i, j)] = re;
            m[(i, j + n)] = im;
            m[(i + n, j)] = im;
            m[(i + n, j + n)] = -re;
        }
    }
    let (vals, vecs) = linalg::symmetric_eigen(&m);
    let scale = vals.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    let zero_tol = 1e-12 * scale.max(1.0);
    let mut columns: Vec<(f64, CVector)> = Vec::with_capacity(n);
    // strictly positive eigenvalues: one con-eigenvector per pair
    for idx in 0..2 * n {
        if vals[idx] > zero_tol {
            let col = vecs.column(idx);
            let u = CVector::from_fn(n, |i, _| Complex64::new(col[i], col[i + n]));
            columns.push((vals[idx], u));
        }
    }
    // the kernel of M is J-invariant and even-dimensional; greedily pick a
    // J-isotropic orthonormal half
    let kernel_idx: Vec<usize> = (0..2 * n).filter(|&i| vals[i].abs() <= zero_tol).collect();
    let mut kernel: Vec<nalgebra::DVector<f64>> = kernel_idx
        .iter()
        .map(|&i| vecs.column(i).clone_owned())
        .collect();
    while columns.len() < n {
        // take the first kernel vector of non-negligible norm
        let mut pick: Option<nalgebra::DVector<f64>> = None;
        for w in kernel.iter() {
            if w.norm() > 1e-6 {
                pick = Some(w.normalize());
                break;
            }
        }
        let w = pick.ok_or_else(|| {
            Error::OutOfRange("Takagi kernel selection failed".into())
        })?;
        let jw = {
            let mut out = nalgebra::DVector::zeros(2 * n);
            for i in 0..n {
                out[i] = -w[i + n];
                out[i + n] = w[i];
            }
            out
        };
        for k in kernel.iter_mut() {
            let a = k.dot(&w);
            let b = k.dot(&jw);
            *k -= &w * a + &jw * b;
        }
        let u = CVector::from_fn(n, |i, _| Complex64::new(w[i], w[i + n]));
        columns.push((0.0, u));
    }
    // descending by singular value
    columns.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut u = CMatrix::zeros(n, n);
    let mut lambda = Vec::with_capacity(n);
    for (k, (s, col)) in columns.into_iter().enumerate() {
        u.set_column(k, &col);
        lambda.push(s);
    }
    Ok(TakagiFactorization { u, lambda })
}

// ---------------------------------------------------------------------------
// C^k_{p,q} combinatorics
// ---------------------------------------------------------------------------

fn check_cpq_range(n: usize, p: usize, q: usize) -> Result<usize> {
    if !(p < n && q >= 1 && q <= n) {
        return Err(Error::OutOfRange(format!(
            "need 0 <= p < n and 0 < q <= n, got n={n} p={p} q={q}"
        )));
    }
    Ok(p.min(q - 1))
}

/// C^k_{p,q} = (n - p + k + 1)(p + q - 2k) / (2 (p + 1 - k)) as an exact
/// fraction (numerator, positive denominator).
fn cpq_fraction(n: usize, p: usize, q: usize, k: usize) -> (i128, i128) {
    let (n, p, q, k) = (n as i128, p as i128, q as i128, k as i128);
    ((n - p + k + 1) * (p + q - 2 * k), 2 * (p + 1 - k))
}

/// C^k_{p,q} for 0 <= k <= s = min(p, q - 1).
pub fn c_pq_k(n: usize, p: usize, q: usize, k: usize) -> Result<f64> {
    let s = check_cpq_range(n, p, q)?;
    if k > s {
        return Err(Error::OutOfRange(format!("need k <= min(p, q-1) = {s}")));
    }
    let (num, den) = cpq_fraction(n, p, q, k);
    Ok(num as f64 / den as f64)
}

/// min_k C^k_{p,q} with its arg, by the closed case analysis: k = 0 when
/// q >= p + 2 or p > n/2, k = q - 1 when q <= p + 1 and p <= n/2. Exact
/// rational arithmetic.
pub fn c_pq_min(n: usize, p: usize, q: usize) -> Result<(f64, usize)> {
    check_cpq_range(n, p, q)?;
    let argmin = if q >= p + 2 || 2 * p > n { 0 } else { q - 1 };
    Ok((c_pq_k(n, p, q, argmin)?, argmin))
}

/// min_k C^k_{p,q} by exhaustive exact-rational comparison (the independent
/// route used to corroborate `c_pq_min`).
pub fn c_pq_min_exhaustive(n: usize, p: usize, q: usize) -> Result<(f64, usize)> {
    let s = check_cpq_range(n, p, q)?;
    let mut best_k = 0usize;
    let (mut bn, mut bd) = cpq_fraction(n, p, q, 0);
    for k in 1..=s {
        let (num, den) = cpq_fraction(n, p, q, k);
        // num/den < bn/bd with positive denominators
        if num * bd < bn * den {
            best_k = k;
            bn = num;
            bd = den;
        }
    }
    Ok((bn as f64 / bd as f64, best_k))
}

// ---------------------------------------------------------------------------
// Compound matrices and skew spectra
// ---------------------------------------------------------------------------

/// p-th compound (derivation extension) of a linear map in the lexicographic
/// basis of p-subsets: (^p A)(v_1 ^ ... ^ v_p) = sum_i v_1 ^ ... A v_i ... ^ v_p.
pub fn compound_matrix(a: &RMatrix, p: usize) -> Result<RMatrix> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::OutOfRange("matrix must be square".into()));
    }
    if p < 1 || p > n {
        return Err(Error::OutOfRange(format!("need 1 <= p <= {n}")));
    }
    let sets = combinations(n, p);
    let dim = sets.len();
    let mut out = RMatrix::zeros(dim, dim);
    for (col, t_set) in sets.iter().enumerate() {
        for (pos, &t) in t_set.iter().enumerate() {
            for m in 0..n {
                let w = a[(m, t)];
                if w == 0.0 {
                    continue;
                }
                if let Some((replaced, sign)) = replace_with_sign(t_set, pos, m) {
                    out[(lex_rank(n, &replaced), col)] += sign as f64 * w;
                }
            }
        }
    }
    Ok(out)
}

/// Positive part of the spectrum of a real antisymmetric matrix: the matrix
/// has eigenvalues {+- i Lambda_1, ..., +- i Lambda_r, 0, ...} and this type
/// stores Lambda_1 >= ... >= Lambda_r > 0 together with the dimension.
#[derive(Debug, Clone)]
pub struct SkewSpectrum {
    d: usize,
    lambdas: Vec<f64>,
}

impl SkewSpectrum {
    pub fn dim(&self) -> usize {
        self.d
    }

    /// Strictly positive rotation numbers, descending.
    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    /// Lambda_i with zero padding up to the dimension.
    pub fn padded(&self, i: usize) -> f64 {
        self.lambdas.get(i).copied().unwrap_or(0.0)
    }

    pub fn rank(&self) -> usize {
        2 * self.lambdas.len()
    }
}

fn antisymmetry_residual(v: &RMatrix) -> f64 {
    let d = v.nrows();
    let mut res = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            res = res.max((v[(i, j)] + v[(j, i)]).abs());
        }
    }
    res
}

/// Rotation numbers of a real antisymmetric matrix from its paired singular
/// values.
pub fn skew_spectrum(v: &RMatrix) -> Result<SkewSpectrum> {
    let d = v.nrows();
    if v.ncols() != d {
        return Err(Error::OutOfRange("matrix must be square".into()));
    }
    let res = antisymmetry_residual(v);
    if res > 1e-9 * (1.0 + v.norm()) {
        return Err(Error::NotAntisymmetric(res));
    }
    let sv = linalg::singular_values_real(v);
    let tol = 1e-12 * sv.first().copied().unwrap_or(0.0).max(1.0);
    let mut lambdas = Vec::new();
    let mut i = 0usize;
    while i + 1 < sv.len() {
        if sv[i] <= tol {
            break;
        }
        // singular values of an antisymmetric matrix come in equal pairs
        lambdas.push(0.5 * (sv[i] + sv[i + 1]));
        i += 2;
    }
    Ok(SkewSpectrum { d, lambdas })
}

/// The matrix of T_1(v) on one-form coefficients: a |-> 2 V a; eigenvalues
/// are 2 lambda_i(V).
pub fn t_one_matrix(v: &RMatrix) -> RMatrix {
    v.scale(2.0)
}

/// Largest absolute eigenvalue of T_k(v):
/// min{2(Lambda_1 + ... + Lambda_k), 2(Lambda_1 + ... + Lambda_{d-k})}.
pub fn t_k_extremes(v: &RMatrix, k: usize) -> Result<f64> {
    let spec = skew_spectrum(v)?;
    let d = spec.dim();
    if k > d {
        return Err(Error::OutOfRange(format!("need k <= d = {d}")));
    }
    let prefix = |m: usize| -> f64 { (0..m).map(|i| spec.padded(i)).sum() };
    Ok((2.0 * prefix(k)).min(2.0 * prefix(d - k)))
}

// ---------------------------------------------------------------------------
// V_{(K1, K2)} subspace decomposition
// ---------------------------------------------------------------------------

/// One block V^{p,q}_{(K1, K2)}: monomials dz^A ^ dz-bar^B with
/// A (intersect) B = K2 and A (delta) B = K1.
#[derive(Debug, Clone)]
pub struct IndexPairBlock {
    pub k1: Vec<usize>,
    pub k2: Vec<usize>,
    /// Orthonormal monomial basis of the block.
    pub basis: Vec<PqForm>,
}

/// Orthogonal decomposition of the (p, q) coefficient space by the index
/// pairs (K1, K2).
#[derive(Debug, Clone)]
pub struct IndexPairDecomposition {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub blocks: Vec<IndexPairBlock>,
}

impl IndexPairDecomposition {
    pub fn total_dim(&self) -> usize {
        self.blocks.iter().map(|b| b.basis.len()).sum()
    }

    pub fn find(&self, k1: &[usize], k2: &[usize]) -> Option<&IndexPairBlock> {
        self.blocks
            .iter()
            .find(|b| b.k1 == k1 && b.k2 == k2)
    }
}

/// Group the standard monomial basis of (p, q)-forms by
/// (K1, K2) = (A delta B, A intersect B); the grouping is the orthogonal
/// decomposition, with dim V = C(|K1|, p - |K2|) per block.
pub fn subspace_decomposition(
    ctx: &std::sync::Arc<AlgebraContext>,
    p: usize,
    q: usize,
) -> IndexPairDecomposition {
    let n = ctx.n();
    let mut blocks: Vec<IndexPairBlock> = Vec::new();
    for a_set in combinations(n, p) {
        for b_set in combinations(n, q) {
            let k2: Vec<usize> = a_set
                .iter()
                .copied()
                .filter(|i| b_set.contains(i))
                .collect();
            let mut k1: Vec<usize> = a_set
                .iter()
                .chain(b_set.iter())
                .copied()
                .filter(|i| !k2.contains(i))
                .collect();
            k1.sort_unstable();
            k1.dedup();
            let form = PqForm::basis(ctx, &a_set, &b_set);
            match blocks.iter_mut().find(|b| b.k1 == k1 && b.k2 == k2) {
                Some(b) => b.basis.push(form),
                None => blocks.push(IndexPairBlock {
                    k1,
                    k2,
                    basis: vec![form],
                }),
            }
        }
    }
    IndexPairDecomposition {
        n,
        p,
        q,
        blocks,
    }
}

/// Operator norm of alpha |-> T_alpha(v) restricted to the span of `basis`,
/// as the largest singular value of the coefficient matrix (identity metric).
pub fn t_norm_on_span(basis: &[PqForm], v: &CMatrix) -> Result<f64> {
    if basis.is_empty() {
        return Ok(0.0);
    }
    let images: Vec<PqForm> = basis
        .iter()
        .map(|b| crate::contraction::t_apply(b, v))
        .collect::<Result<_>>()?;
    let rows = images[0].coeffs().len();
    let mut m = CMatrix::zeros(rows, basis.len());
    for (col, im) in images.iter().enumerate() {
        for r in 0..rows {
            m[(r, col)] = im.coeffs()[r];
        }
    }
    Ok(linalg::operator_norm(&m))
}

// ---------------------------------------------------------------------------
// Norm-bound defects
// ---------------------------------------------------------------------------

/// |v|^2 of a symmetric 2-tensor v_{ij} dz^i (x) dz^j under the metric.
pub fn sym_tensor_norm_sq(ctx: &AlgebraContext, v: &CMatrix) -> f64 {
    let n = ctx.n();
    if ctx.is_standard() {
        return v.norm_squared();
    }
    let mut acc = Complex64::ZERO;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    acc += v[(i, j)]
                        * v[(k, l)].conj()
                        * ctx.g_inv()[(i, k)]
                        * ctx.g_inv()[(j, l)];
                }
            }
        }
    }
    acc.re
}

/// Verify phi = L^k psi with psi primitive, returning psi.
fn primitive_root(phi: &PqForm, k: usize) -> Result<PqForm> {
    let ctx = phi.ctx();
    let n = ctx.n();
    let (p, q) = (phi.p(), phi.q());
    if k == 0 {
        if !is_primitive(phi) {
            return Err(Error::NotPrimitive(phi.lefschetz_dual().norm_sq().sqrt()));
        }
        return Ok(phi.clone());
    }
    if k > p.min(q) {
        return Err(Error::OutOfRange(format!("need k <= min(p, q) = {}", p.min(q))));
    }
    let ck = c_constant(n, p - k, q - k, k);
    if ck == 0.0 {
        // L^k annihilates the primitive space here, so phi must vanish
        if phi.is_zero(1e-9) {
            return Ok(PqForm::zero(ctx, p - k, q - k));
        }
        return Err(Error::NotPrimitive(f64::INFINITY));
    }
    let mut psi = phi.clone();
    for _ in 0..k {
        psi = psi.lefschetz_dual();
    }
    let psi = psi.scale(c(1.0 / ck));
    // confirm the claimed structure
    let mut lk = psi.clone();
    for _ in 0..k {
        lk = lk.lefschetz()?;
    }
    let scale = phi.norm_sq().sqrt().max(1.0);
    let res = lk.sub(phi)?.norm_sq().sqrt();
    if res > 1e-7 * scale || !is_primitive(&psi) {
        return Err(Error::NotPrimitive(res));
    }
    Ok(psi)
}

/// Defect of |T_phi(v)|^2 <= 4(p+1) q / (p+q) |v|^2 |phi|^2, or the improved
/// bound 4(p-k+1)(q-k) / (p+q-2k) when phi = L^k(primitive) is certified.
/// Returns max(0, lhs - bound); zero means the inequality holds.
pub fn t_norm_bound_defect(phi: &PqForm, v: &CMatrix, k_primitive: Option<usize>) -> Result<f64> {
    let ctx = phi.ctx();
    let (p, q) = (phi.p(), phi.q());
    if p + q == 0 {
        return Ok(0.0);
    }
    let factor = match k_primitive {
        None => 4.0 * (p as f64 + 1.0) * q as f64 / (p + q) as f64,
        Some(k) => {
            primitive_root(phi, k)?;
            if p + q == 2 * k {
                return Err(Error::OutOfRange(
                    "improved bound excludes k = (p+q)/2".into(),
                ));
            }
            4.0 * (p as f64 - k as f64 + 1.0) * (q as f64 - k as f64)
                / (p as f64 + q as f64 - 2.0 * k as f64)
        }
    };
    let lhs = crate::contraction::t_apply(phi, v)?.norm_sq();
    let bound = factor * sym_tensor_norm_sq(ctx, v) * phi.norm_sq();
    Ok((lhs - bound).max(0.0))
}

/// Defect of |T_omega(v)|^2 <= 2 min{k, d-k} |omega|^2 |v|^2 with |v| the
/// Frobenius norm of the antisymmetric matrix.
pub fn riem_t_bound_defect(omega: &RealForm, v: &RMatrix) -> Result<f64> {
    let d = omega.dim();
    let k = omega.degree();
    let lhs = crate::contraction::t_riem(omega, v)?.norm_sq();
    let bound = 2.0 * k.min(d - k) as f64 * omega.norm_sq() * v.norm_squared();
    Ok((lhs - bound).max(0.0))
}

/// Defect of the operator-norm bound |Y_phi|^2 <= (p + q - 2k) |phi|^2 for
/// phi = L^k(primitive): the norm is the largest singular value of the
/// component map v |-> sum v^{ab} Y^{ab}.
pub fn y_norm_bound_defect(phi: &PqForm, k_primitive: usize) -> Result<f64> {
    let ctx = phi.ctx();
    let (p, q) = (phi.p(), phi.q());
    primitive_root(phi, k_primitive)?;
    let y = crate::contraction::y_operator(phi)?;
    let dim = ctx.scalar_dim(p, q);
    let mut m = CMatrix::zeros(dim, y.carrier_dim());
    for (col, comp) in y.components().iter().enumerate() {
        for r in 0..dim {
            m[(r, col)] = comp.coeffs()[r];
        }
    }
    let m = if ctx.is_standard() {
        m
    } else {
        ctx.whitener(p, q).as_ref() * m
    };
    let op = linalg::operator_norm(&m);
    let bound = (p + q) as f64 - 2.0 * k_primitive as f64;
    Ok((op * op - bound * phi.norm_sq()).max(0.0))
}
