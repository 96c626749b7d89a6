//! Algebraic curvature tensors (Kaehler, bundle, Riemannian), their induced
//! self-adjoint operators in orthonormal frames, model spaces, seeded
//! generators, and m-positivity analysis.

use std::sync::Arc;

use num_complex::Complex64;

use crate::context::AlgebraContext;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, RMatrix};
use crate::rng;

const SYM_TOL: f64 = 1e-9;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Pairs (a, b) with a <= b in lexicographic order; the index set of the
/// orthonormal basis {e_a (x) e_a} u {(e_a (x) e_b + e_b (x) e_a)/sqrt(2)}.
pub fn sym_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for a in 0..n {
        for b in a..n {
            out.push((a, b));
        }
    }
    out
}

/// Pairs (a, b) with a < b in lexicographic order (basis of 2-vectors).
pub fn antisym_pairs(d: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(d * (d - 1) / 2);
    for a in 0..d {
        for b in a + 1..d {
            out.push((a, b));
        }
    }
    out
}

/// A Kaehler curvature tensor R_{i j-bar k l-bar}.
#[derive(Debug, Clone)]
pub struct KaehlerCurvature {
    ctx: Arc<AlgebraContext>,
    entries: Vec<Complex64>,
}

impl KaehlerCurvature {
    pub fn new(ctx: &Arc<AlgebraContext>, entries: Vec<Complex64>) -> Result<Self> {
        let n = ctx.n();
        if entries.len() != n * n * n * n {
            return Err(Error::OutOfRange(format!(
                "expected {} entries, got {}",
                n * n * n * n,
                entries.len()
            )));
        }
        let t = Self {
            ctx: ctx.clone(),
            entries,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn zero(ctx: &Arc<AlgebraContext>) -> Self {
        let n = ctx.n();
        Self {
            ctx: ctx.clone(),
            entries: vec![Complex64::ZERO; n * n * n * n],
        }
    }

    /// Fubini-Study normalization R = g (x) g + g (x)' g over the identity
    /// metric; its symmetrized operator is exactly 2 Id.
    pub fn fubini_study(n: usize) -> Self {
        let ctx = AlgebraContext::standard(n);
        let mut t = Self::zero(&ctx);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let v = ((i == j && k == l) as u8 + (i == l && k == j) as u8) as f64;
                        *t.entry_mut(i, j, k, l) = c(v);
                    }
                }
            }
        }
        t
    }

    /// Gram-type generator: R = sum_a s_a S^a (x) conj(S^a) over random
    /// complex symmetric matrices S^a; all invariants hold by construction.
    pub fn random(ctx: &Arc<AlgebraContext>, seed: u64, signs: &[i32]) -> Self {
        let n = ctx.n();
        let mut rng = rng::rng_from_seed(seed);
        let mut t = Self::zero(ctx);
        for &s in signs {
            let mut m = CMatrix::zeros(n, n);
            for i in 0..n {
                for k in i..n {
                    let v = rng::complex(&mut rng);
                    m[(i, k)] = v;
                    m[(k, i)] = v;
                }
            }
            let sign = c(s as f64);
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        for l in 0..n {
                            *t.entry_mut(i, j, k, l) += sign * m[(i, k)] * m[(j, l)].conj();
                        }
                    }
                }
            }
        }
        t
    }

    pub fn ctx(&self) -> &Arc<AlgebraContext> {
        &self.ctx
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize, k: usize, l: usize) -> Complex64 {
        let n = self.ctx.n();
        self.entries[((i * n + j) * n + k) * n + l]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize, k: usize, l: usize) -> &mut Complex64 {
        let n = self.ctx.n();
        &mut self.entries[((i * n + j) * n + k) * n + l]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Max residual over the Kaehler symmetries and Hermitian reality.
    pub fn symmetry_residual(&self) -> f64 {
        let n = self.ctx.n();
        let mut res = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let v = self.entry(i, j, k, l);
                        res = res.max((v - self.entry(k, j, i, l)).norm());
                        res = res.max((v - self.entry(i, l, k, j)).norm());
                        res = res.max((v.conj() - self.entry(j, i, l, k)).norm());
                    }
                }
            }
        }
        res
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.ctx.n();
        let scale = 1.0 + self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let v = self.entry(i, j, k, l);
                        for (w, tag) in [
                            (self.entry(k, j, i, l), 0),
                            (self.entry(i, l, k, j), 1),
                            (self.entry(j, i, l, k).conj(), 2),
                        ] {
                            let r = (v - w).norm();
                            if r > SYM_TOL * scale {
                                let _ = tag;
                                return Err(Error::SymmetryViolation {
                                    i: i + 1,
                                    j: j + 1,
                                    k: k + 1,
                                    l: l + 1,
                                    residual: r,
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Matrix of the symmetrized curvature operator on Sym^2 T^{1,0} in the
    /// orthonormal basis built from the metric frame; Hermitian, size
    /// n(n+1)/2.
    pub fn sym_operator(&self) -> Result<CMatrix> {
        self.validate()?;
        let n = self.ctx.n();
        let e = self.ctx.frame();
        let pairs = sym_pairs(n);
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        // coefficient matrices of the orthonormal basis elements
        let tensors: Vec<CMatrix> = pairs
            .iter()
            .map(|&(a, b)| {
                let mut u = CMatrix::zeros(n, n);
                for i in 0..n {
                    for k in 0..n {
                        u[(i, k)] = if a == b {
                            e[(i, a)] * e[(k, a)]
                        } else {
                            (e[(i, a)] * e[(k, b)] + e[(i, b)] * e[(k, a)]) * c(inv_sqrt2)
                        };
                    }
                }
                u
            })
            .collect();
        let dim = pairs.len();
        let mut m = CMatrix::zeros(dim, dim);
        for row in 0..dim {
            for col in 0..dim {
                let mut acc = Complex64::ZERO;
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            for l in 0..n {
                                acc += self.entry(i, j, k, l)
                                    * tensors[col][(i, k)]
                                    * (tensors[row][(j, l)]).conj();
                            }
                        }
                    }
                }
                m[(row, col)] = acc;
            }
        }
        Ok(m)
    }

    /// Matrix of the reduced (complexified) curvature operator on
    /// T^{1,0} (x) T^{0,1}; Hermitian, size n^2. Index (a, b) flattens to
    /// a*n + b.
    pub fn reduced_operator(&self) -> Result<CMatrix> {
        self.validate()?;
        let n = self.ctx.n();
        let e = self.ctx.frame();
        let dim = n * n;
        let mut m = CMatrix::zeros(dim, dim);
        for a in 0..n {
            for b in 0..n {
                for cc in 0..n {
                    for d in 0..n {
                        let mut acc = Complex64::ZERO;
                        for i in 0..n {
                            for j in 0..n {
                                for k in 0..n {
                                    for l in 0..n {
                                        acc += self.entry(i, j, k, l)
                                            * e[(i, cc)]
                                            * e[(j, d)].conj()
                                            * e[(l, a)].conj()
                                            * e[(k, b)];
                                    }
                                }
                            }
                        }
                        m[(a * n + b, cc * n + d)] = acc;
                    }
                }
            }
        }
        Ok(m)
    }

    /// Reconstruct the tensor over the standard metric whose symmetrized
    /// operator (in the lexicographic sym-pair basis) is `m`. Inverse of
    /// `sym_operator` for standard contexts; the bridge for spectral surgery.
    pub fn from_sym_operator(n: usize, m: &CMatrix) -> Result<Self> {
        let pairs = sym_pairs(n);
        if m.nrows() != pairs.len() || m.ncols() != pairs.len() {
            return Err(Error::OutOfRange(format!(
                "operator must be {0}x{0}",
                pairs.len()
            )));
        }
        let res = linalg::hermitian_residual(m);
        if res > SYM_TOL * (1.0 + m.norm()) {
            return Err(Error::NotHermitian(res));
        }
        let ctx = AlgebraContext::standard(n);
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        // coefficients of d_i . d_k (symmetric product) in the basis
        let coeff = |i: usize, k: usize| -> (usize, f64) {
            let (a, b) = (i.min(k), i.max(k));
            let pos = pairs.iter().position(|&p| p == (a, b)).expect("pair");
            if i == k {
                (pos, 1.0)
            } else {
                (pos, inv_sqrt2)
            }
        };
        let mut t = Self::zero(&ctx);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let (pa, wa) = coeff(i, k);
                        let (pb, wb) = coeff(j, l);
                        // <R(d_i . d_k), d_j . d_l> = sum_AB c_A conj(c_B) M_BA
                        *t.entry_mut(i, j, k, l) = m[(pb, pa)] * c(wa * wb);
                    }
                }
            }
        }
        t.validate()?;
        Ok(t)
    }

    /// Eigenvalue surgery: keep the eigenvectors of this tensor's symmetrized
    /// operator, replace the eigenvalues by `target` (ascending), and rebuild
    /// a curvature tensor realizing that spectrum. Standard metric only.
    pub fn with_sym_spectrum(&self, target: &[f64]) -> Result<Self> {
        if !self.ctx.is_standard() {
            return Err(Error::OutOfRange(
                "spectral surgery requires the standard metric".into(),
            ));
        }
        let m = self.sym_operator()?;
        if target.len() != m.nrows() {
            return Err(Error::OutOfRange(format!(
                "target spectrum must have length {}",
                m.nrows()
            )));
        }
        for w in target.windows(2) {
            if w[0] > w[1] {
                return Err(Error::SpectrumNotAscending(1));
            }
        }
        let (_, vecs) = linalg::hermitian_eigen(&m);
        let d = CMatrix::from_fn(target.len(), target.len(), |i, j| {
            if i == j {
                c(target[i])
            } else {
                Complex64::ZERO
            }
        });
        let rebuilt = &vecs * d * vecs.adjoint();
        Self::from_sym_operator(self.ctx.n(), &rebuilt)
    }
}

/// Chern-type bundle curvature R^E_{i j-bar alpha beta-bar}.
#[derive(Debug, Clone)]
pub struct BundleCurvature {
    ctx: Arc<AlgebraContext>,
    entries: Vec<Complex64>,
}

impl BundleCurvature {
    pub fn new(ctx: &Arc<AlgebraContext>, entries: Vec<Complex64>) -> Result<Self> {
        let (n, r) = (ctx.n(), ctx.rank());
        if entries.len() != n * n * r * r {
            return Err(Error::OutOfRange(format!(
                "expected {} entries, got {}",
                n * n * r * r,
                entries.len()
            )));
        }
        let t = Self {
            ctx: ctx.clone(),
            entries,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn zero(ctx: &Arc<AlgebraContext>) -> Self {
        let (n, r) = (ctx.n(), ctx.rank());
        Self {
            ctx: ctx.clone(),
            entries: vec![Complex64::ZERO; n * n * r * r],
        }
    }

    /// Gram generator sum_a s_a W^a (x) conj(W^a) plus `shift` times the
    /// metric tensor g (x) h; with all plus signs and shift > 0 the induced
    /// operator is Nakano positive with min eigenvalue >= shift.
    pub fn random(ctx: &Arc<AlgebraContext>, seed: u64, signs: &[i32], shift: f64) -> Self {
        let (n, r) = (ctx.n(), ctx.rank());
        let mut rng = rng::rng_from_seed(seed);
        let mut t = Self::zero(ctx);
        for &s in signs {
            let w = CMatrix::from_fn(n, r, |_, _| rng::complex(&mut rng));
            let sign = c(s as f64);
            for i in 0..n {
                for j in 0..n {
                    for a in 0..r {
                        for b in 0..r {
                            *t.entry_mut(i, j, a, b) += sign * w[(i, a)] * w[(j, b)].conj();
                        }
                    }
                }
            }
        }
        if shift != 0.0 {
            for i in 0..n {
                for j in 0..n {
                    for a in 0..r {
                        for b in 0..r {
                            *t.entry_mut(i, j, a, b) +=
                                c(shift) * ctx.g()[(i, j)] * ctx.h()[(a, b)];
                        }
                    }
                }
            }
        }
        t
    }

    pub fn ctx(&self) -> &Arc<AlgebraContext> {
        &self.ctx
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize, alpha: usize, beta: usize) -> Complex64 {
        let r = self.ctx.rank();
        let n = self.ctx.n();
        debug_assert!(i < n && j < n);
        self.entries[((i * n + j) * r + alpha) * r + beta]
    }

    pub fn entry_mut(
        &mut self,
        i: usize,
        j: usize,
        alpha: usize,
        beta: usize,
    ) -> &mut Complex64 {
        let r = self.ctx.rank();
        let n = self.ctx.n();
        &mut self.entries[((i * n + j) * r + alpha) * r + beta]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn symmetry_residual(&self) -> f64 {
        let (n, r) = (self.ctx.n(), self.ctx.rank());
        let mut res = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for a in 0..r {
                    for b in 0..r {
                        res = res.max(
                            (self.entry(i, j, a, b).conj() - self.entry(j, i, b, a)).norm(),
                        );
                    }
                }
            }
        }
        res
    }

    pub fn validate(&self) -> Result<()> {
        let scale = 1.0 + self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let res = self.symmetry_residual();
        if res > SYM_TOL * scale {
            return Err(Error::NotHermitian(res));
        }
        Ok(())
    }

    /// Matrix of the induced operator on T^{1,0} (x) E in the orthonormal
    /// frame; Hermitian of size n r. Positive definiteness is Nakano
    /// positivity. Index (a, lambda) flattens to a*r + lambda.
    pub fn nakano_operator(&self) -> Result<CMatrix> {
        self.validate()?;
        let (n, r) = (self.ctx.n(), self.ctx.rank());
        let e = self.ctx.frame();
        let f = self.ctx.bundle_frame();
        let dim = n * r;
        let mut m = CMatrix::zeros(dim, dim);
        for a in 0..n {
            for la in 0..r {
                for b in 0..n {
                    for mu in 0..r {
                        let mut acc = Complex64::ZERO;
                        for i in 0..n {
                            for j in 0..n {
                                for al in 0..r {
                                    for be in 0..r {
                                        acc += self.entry(i, j, al, be)
                                            * e[(i, b)]
                                            * f[(al, mu)]
                                            * (e[(j, a)] * f[(be, la)]).conj();
                                    }
                                }
                            }
                        }
                        m[(a * r + la, b * r + mu)] = acc;
                    }
                }
            }
        }
        Ok(m)
    }
}

/// Riemannian algebraic curvature tensor over R^d with orthonormal frame.
#[derive(Debug, Clone)]
pub struct RiemCurvature {
    d: usize,
    entries: Vec<f64>,
}

impl RiemCurvature {
    pub fn new(d: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != d * d * d * d {
            return Err(Error::OutOfRange(format!(
                "expected {} entries, got {}",
                d * d * d * d,
                entries.len()
            )));
        }
        let t = Self { d, entries };
        t.validate()?;
        Ok(t)
    }

    pub fn zero(d: usize) -> Self {
        Self {
            d,
            entries: vec![0.0; d * d * d * d],
        }
    }

    /// Round sphere model: R_{ijkl} = delta_ik delta_jl - delta_il delta_jk;
    /// the curvature operator is the identity.
    pub fn sphere(d: usize) -> Self {
        let mut t = Self::zero(d);
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let v = ((i == k && j == l) as i8 - (i == l && j == k) as i8) as f64;
                        *t.entry_mut(i, j, k, l) = v;
                    }
                }
            }
        }
        t
    }

    /// Random sums of Kulkarni-Nomizu squares h (.) h of random symmetric
    /// matrices; all algebraic symmetries including first Bianchi hold by
    /// construction.
    pub fn random(d: usize, seed: u64) -> Self {
        let mut rng = rng::rng_from_seed(seed);
        let mut t = Self::zero(d);
        for _ in 0..3 {
            let mut h = RMatrix::zeros(d, d);
            for i in 0..d {
                for j in i..d {
                    let v = rng::uniform(&mut rng);
                    h[(i, j)] = v;
                    h[(j, i)] = v;
                }
            }
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        for l in 0..d {
                            *t.entry_mut(i, j, k, l) += h[(i, k)] * h[(j, l)] - h[(i, l)] * h[(j, k)];
                        }
                    }
                }
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        let d = self.d;
        self.entries[((i * d + j) * d + k) * d + l]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize, k: usize, l: usize) -> &mut f64 {
        let d = self.d;
        &mut self.entries[((i * d + j) * d + k) * d + l]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Max residual over antisymmetries, pair symmetry and first Bianchi.
    pub fn symmetry_residual(&self) -> f64 {
        let d = self.d;
        let mut res = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let v = self.entry(i, j, k, l);
                        res = res.max((v + self.entry(j, i, k, l)).abs());
                        res = res.max((v + self.entry(i, j, l, k)).abs());
                        res = res.max((v - self.entry(k, l, i, j)).abs());
                        let bianchi =
                            v + self.entry(j, k, i, l) + self.entry(k, i, j, l);
                        res = res.max(bianchi.abs());
                    }
                }
            }
        }
        res
    }

    pub fn validate(&self) -> Result<()> {
        let scale = 1.0 + self.entries.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        let res = self.symmetry_residual();
        if res > SYM_TOL * scale {
            return Err(Error::NotSymmetric(res));
        }
        Ok(())
    }

    /// Symmetric matrix of the curvature operator on 2-vectors in the
    /// orthonormal basis {e_i ^ e_j}_{i<j}; the sphere model gives the
    /// identity.
    pub fn operator(&self) -> Result<RMatrix> {
        self.validate()?;
        let pairs = antisym_pairs(self.d);
        let dim = pairs.len();
        let mut m = RMatrix::zeros(dim, dim);
        for (row, &(i, j)) in pairs.iter().enumerate() {
            for (col, &(k, l)) in pairs.iter().enumerate() {
                m[(row, col)] = self.entry(k, l, i, j);
            }
        }
        Ok(m)
    }
}

/// Ascending eigenvalue list of a self-adjoint curvature operator.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn new(eigenvalues: Vec<f64>) -> Result<Self> {
        if eigenvalues.is_empty() {
            return Err(Error::EmptySpectrum);
        }
        for (i, w) in eigenvalues.windows(2).enumerate() {
            if w[0] > w[1] {
                return Err(Error::SpectrumNotAscending(i + 1));
            }
        }
        Ok(Self { eigenvalues })
    }

    pub fn from_hermitian(m: &CMatrix) -> Self {
        Self {
            eigenvalues: linalg::hermitian_eigenvalues(m),
        }
    }

    pub fn from_symmetric(m: &RMatrix) -> Self {
        Self {
            eigenvalues: linalg::symmetric_eigenvalues(m),
        }
    }

    /// The hyperquadric model spectrum (2-n, 2, ..., 2) of length n(n+1)/2.
    pub fn hyperquadric(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::OutOfRange("hyperquadric model needs n >= 2".into()));
        }
        let len = n * (n + 1) / 2;
        let mut eig = vec![2.0; len];
        eig[0] = 2.0 - n as f64;
        Self::new(eig)
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Smallest m with lambda_1 + ... + lambda_m > 0, or None when no prefix
    /// sum is positive.
    pub fn m_positivity_level(&self) -> Option<usize> {
        let mut sum = 0.0;
        for (i, &l) in self.eigenvalues.iter().enumerate() {
            sum += l;
            if sum > 0.0 {
                return Some(i + 1);
            }
        }
        None
    }
}

/// Partial-trace inequality: sum_s <A f_s, f_s> >= lambda_1 + ... + lambda_k
/// for any k orthonormal columns f_s; `true` when the slack is >= -1e-9.
pub fn partial_trace_check(a: &CMatrix, frame: &CMatrix, k: usize) -> Result<bool> {
    if frame.ncols() < k {
        return Err(Error::OutOfRange(format!(
            "frame has {} columns, need {k}",
            frame.ncols()
        )));
    }
    let res = linalg::hermitian_residual(a);
    if res > SYM_TOL * (1.0 + a.norm()) {
        return Err(Error::NotHermitian(res));
    }
    let gram = frame.adjoint() * frame;
    let ortho_res = (&gram - CMatrix::identity(frame.ncols(), frame.ncols())).norm();
    if ortho_res > 1e-8 {
        return Err(Error::FrameNotOrthonormal(ortho_res));
    }
    let eigs = linalg::hermitian_eigenvalues(a);
    let bound: f64 = eigs.iter().take(k).sum();
    let mut trace = 0.0;
    for s in 0..k {
        let col = frame.column(s);
        let av = a * col.clone_owned();
        trace += col.dotc(&av).re;
    }
    Ok(trace - bound >= -1e-9)
}
