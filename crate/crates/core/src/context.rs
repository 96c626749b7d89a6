//! The pointwise setting: complex dimension, bundle rank, Hermitian metrics
//! on the tangent space and on the bundle fiber, plus cached operator
//! matrices (Gram, Lefschetz, primitive kernels) per bidegree.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::index::{binomial, combinations};
use crate::linalg::{self, CMatrix};
use crate::rng;

const METRIC_TOL: f64 = 1e-9;

#[derive(Default)]
struct Caches {
    gram: Mutex<HashMap<(usize, usize), Arc<CMatrix>>>,
    lefschetz: Mutex<HashMap<(usize, usize), Arc<CMatrix>>>,
    lambda: Mutex<HashMap<(usize, usize), Arc<CMatrix>>>,
    kernel: Mutex<HashMap<(usize, usize), Arc<CMatrix>>>,
    whitener: Mutex<HashMap<(usize, usize), Arc<CMatrix>>>,
}

/// Pointwise algebra data: dimensions and metrics.
///
/// `g` is the base Hermitian metric g_{i j-bar} (row i, column j) and `h` the
/// bundle metric h_{alpha beta-bar}; both must be Hermitian positive definite.
/// Rank `r = 1` models the trivial line bundle.
pub struct AlgebraContext {
    n: usize,
    r: usize,
    g: CMatrix,
    h: CMatrix,
    /// g^{i j-bar}, the inverse transpose of `g`.
    g_inv: CMatrix,
    h_inv: CMatrix,
    /// Columns of `frame` are an orthonormal frame of T^{1,0}: e_a = frame[i][a] d/dz^i.
    frame: CMatrix,
    frame_inv: CMatrix,
    /// Orthonormal frame of the bundle fiber.
    bundle_frame: CMatrix,
    bundle_frame_inv: CMatrix,
    standard: bool,
    caches: Caches,
}

impl std::fmt::Debug for AlgebraContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AlgebraContext")
            .field("n", &self.n)
            .field("r", &self.r)
            .field("standard", &self.standard)
            .finish()
    }
}

fn validate_metric(m: &CMatrix, what: &str) -> Result<()> {
    let res = linalg::hermitian_residual(m);
    if res > METRIC_TOL {
        return Err(Error::NotHermitian(res));
    }
    let eigs = linalg::hermitian_eigenvalues(m);
    let min = eigs.first().copied().unwrap_or(0.0);
    if min <= 0.0 {
        return Err(Error::NotPositiveDefinite(min));
    }
    // inverse sanity
    let inv = m
        .clone()
        .try_inverse()
        .ok_or(Error::NotPositiveDefinite(min))?;
    let prod = m * inv;
    let id = CMatrix::identity(m.nrows(), m.ncols());
    let inv_res = (prod - id).norm();
    if inv_res > METRIC_TOL * (m.nrows() as f64) {
        return Err(Error::OutOfRange(format!(
            "{what} metric inversion residual {inv_res:.3e}"
        )));
    }
    Ok(())
}

/// Orthonormal frame for a Hermitian metric: with G = L L^*, the matrix
/// E = (L^T)^{-1} satisfies E^T G conj(E) = Id.
fn orthonormal_frame(g: &CMatrix) -> Result<CMatrix> {
    let l = linalg::cholesky_factor(g).ok_or(Error::NotPositiveDefinite(f64::NAN))?;
    l.transpose()
        .try_inverse()
        .ok_or(Error::NotPositiveDefinite(f64::NAN))
}

impl AlgebraContext {
    pub fn new(g: CMatrix, h: CMatrix) -> Result<Arc<Self>> {
        let n = g.nrows();
        let r = h.nrows();
        if n == 0 || g.ncols() != n {
            return Err(Error::OutOfRange("base metric must be square, n >= 1".into()));
        }
        if r == 0 || h.ncols() != r {
            return Err(Error::OutOfRange("bundle metric must be square, r >= 1".into()));
        }
        validate_metric(&g, "base")?;
        validate_metric(&h, "bundle")?;
        let g_inv = g
            .transpose()
            .try_inverse()
            .ok_or(Error::NotPositiveDefinite(f64::NAN))?;
        let h_inv = h
            .transpose()
            .try_inverse()
            .ok_or(Error::NotPositiveDefinite(f64::NAN))?;
        let frame = orthonormal_frame(&g)?;
        let frame_inv = frame
            .clone()
            .try_inverse()
            .ok_or(Error::NotPositiveDefinite(f64::NAN))?;
        let bundle_frame = orthonormal_frame(&h)?;
        let bundle_frame_inv = bundle_frame
            .clone()
            .try_inverse()
            .ok_or(Error::NotPositiveDefinite(f64::NAN))?;
        let standard = g == CMatrix::identity(n, n) && h == CMatrix::identity(r, r);
        Ok(Arc::new(Self {
            n,
            r,
            g,
            h,
            g_inv,
            h_inv,
            frame,
            frame_inv,
            bundle_frame,
            bundle_frame_inv,
            standard,
            caches: Caches::default(),
        }))
    }

    /// Identity metrics, trivial line bundle.
    pub fn standard(n: usize) -> Arc<Self> {
        Self::with_bundle(n, 1)
    }

    /// Identity metrics, bundle of rank `r`.
    pub fn with_bundle(n: usize, r: usize) -> Arc<Self> {
        Self::new(CMatrix::identity(n, n), CMatrix::identity(r, r))
            .expect("identity metrics are valid")
    }

    /// Random Hermitian positive-definite metrics Id + 0.3 A A*.
    pub fn random(n: usize, r: usize, seed: u64) -> Arc<Self> {
        let mut rng = rng::rng_from_seed(seed);
        let mut sample = |k: usize| {
            let a = CMatrix::from_fn(k, k, |_, _| rng::complex(&mut rng));
            CMatrix::identity(k, k) + (&a * a.adjoint()).scale(0.3)
        };
        let g = sample(n);
        let h = sample(r);
        Self::new(g, h).expect("generated metrics are positive definite")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn g(&self) -> &CMatrix {
        &self.g
    }

    pub fn h(&self) -> &CMatrix {
        &self.h
    }

    /// g^{i j-bar}
    pub fn g_inv(&self) -> &CMatrix {
        &self.g_inv
    }

    /// h^{alpha beta-bar}
    pub fn h_inv(&self) -> &CMatrix {
        &self.h_inv
    }

    pub fn frame(&self) -> &CMatrix {
        &self.frame
    }

    pub fn frame_inv(&self) -> &CMatrix {
        &self.frame_inv
    }

    pub fn bundle_frame(&self) -> &CMatrix {
        &self.bundle_frame
    }

    pub fn bundle_frame_inv(&self) -> &CMatrix {
        &self.bundle_frame_inv
    }

    /// True when both metrics are exactly the identity.
    pub fn is_standard(&self) -> bool {
        self.standard
    }

    /// Contexts are compatible when they are the same allocation or carry
    /// equal data.
    pub fn compatible(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other)
            || (self.n == other.n && self.r == other.r && self.g == other.g && self.h == other.h)
    }

    /// Dimension of the scalar coefficient space at bidegree (p, q).
    pub fn scalar_dim(&self, p: usize, q: usize) -> usize {
        binomial(self.n, p) * binomial(self.n, q)
    }

    /// Gram matrix of the increasing-index scalar basis at (p, q):
    /// entry (a, b) = <basis_a, basis_b> (sesquilinear, linear in a).
    pub(crate) fn gram(&self, p: usize, q: usize) -> Arc<CMatrix> {
        if let Some(m) = self.caches.gram.lock().unwrap().get(&(p, q)) {
            return m.clone();
        }
        let m = Arc::new(self.build_gram(p, q));
        self.caches
            .gram
            .lock()
            .unwrap()
            .insert((p, q), m.clone());
        m
    }

    fn build_gram(&self, p: usize, q: usize) -> CMatrix {
        let n = self.n;
        let is = combinations(n, p);
        let js = combinations(n, q);
        let dim = is.len() * js.len();
        if self.standard {
            return CMatrix::identity(dim, dim);
        }
        // det(g^{i_s k-bar_t}) for the holomorphic factor, det(g^{l_s j-bar_t})
        // for the anti-holomorphic factor
        let minor = |rows: &[usize], cols: &[usize]| -> Complex64 {
            let k = rows.len();
            if k == 0 {
                return Complex64::new(1.0, 0.0);
            }
            let m = CMatrix::from_fn(k, k, |s, t| self.g_inv[(rows[s], cols[t])]);
            m.determinant()
        };
        let mut gram = CMatrix::zeros(dim, dim);
        for (ia, i_set) in is.iter().enumerate() {
            for (ka, k_set) in is.iter().enumerate() {
                let hol = minor(i_set, k_set);
                for (ja, j_set) in js.iter().enumerate() {
                    for (la, l_set) in js.iter().enumerate() {
                        let anti = minor(l_set, j_set);
                        gram[(ia * js.len() + ja, ka * js.len() + la)] = hol * anti;
                    }
                }
            }
        }
        gram
    }

    /// Matrix of L = omega ^ . from scalar (p, q) to (p+1, q+1).
    pub(crate) fn lefschetz_matrix(&self, p: usize, q: usize) -> Arc<CMatrix> {
        if let Some(m) = self.caches.lefschetz.lock().unwrap().get(&(p, q)) {
            return m.clone();
        }
        let m = Arc::new(crate::form::build_lefschetz_matrix(self, p, q));
        self.caches
            .lefschetz
            .lock()
            .unwrap()
            .insert((p, q), m.clone());
        m
    }

    /// Matrix of the metric adjoint of L, from scalar (p, q) to (p-1, q-1).
    /// Requires p, q >= 1.
    pub(crate) fn lambda_matrix(&self, p: usize, q: usize) -> Arc<CMatrix> {
        if let Some(m) = self.caches.lambda.lock().unwrap().get(&(p, q)) {
            return m.clone();
        }
        // adjoint: conj(S) u = M_L^* conj(T) x  =>  u = conj(S)^{-1} M_L^* conj(T) x
        let l = self.lefschetz_matrix(p - 1, q - 1);
        let gram_small = self.gram(p - 1, q - 1);
        let gram_big = self.gram(p, q);
        let m = if self.standard {
            l.adjoint()
        } else {
            let sh = gram_small.map(|z| z.conj());
            let th = gram_big.map(|z| z.conj());
            let rhs = l.adjoint() * th;
            sh.lu().solve(&rhs).expect("gram matrix is invertible")
        };
        let m = Arc::new(m);
        self.caches
            .lambda
            .lock()
            .unwrap()
            .insert((p, q), m.clone());
        m
    }

    /// Metric-orthonormal basis of the primitive subspace ker(Lambda) at
    /// scalar bidegree (p, q); columns are coefficient vectors.
    pub(crate) fn primitive_kernel(&self, p: usize, q: usize) -> Arc<CMatrix> {
        if let Some(m) = self.caches.kernel.lock().unwrap().get(&(p, q)) {
            return m.clone();
        }
        let dim = self.scalar_dim(p, q);
        let m = if p == 0 || q == 0 {
            if self.standard {
                CMatrix::identity(dim, dim)
            } else {
                // orthonormalize the full basis against the metric
                let w = self.whitener(p, q);
                w.as_ref()
                    .clone()
                    .try_inverse()
                    .expect("whitener is invertible")
            }
        } else {
            let lambda = self.lambda_matrix(p, q);
            let w = self.whitener(p, q);
            let w_inv = w.as_ref().clone().try_inverse().expect("whitener is invertible");
            // kernel of Lambda in whitened coordinates; columns orthonormal there
            let map = lambda.as_ref() * &w_inv;
            let kernel = linalg::kernel_basis(&map, 1e-10);
            w_inv * kernel
        };
        let m = Arc::new(m);
        self.caches
            .kernel
            .lock()
            .unwrap()
            .insert((p, q), m.clone());
        m
    }

    /// W with |x|_g = |W x|_2 on scalar coefficients at (p, q).
    pub(crate) fn whitener(&self, p: usize, q: usize) -> Arc<CMatrix> {
        if let Some(m) = self.caches.whitener.lock().unwrap().get(&(p, q)) {
            return m.clone();
        }
        let dim = self.scalar_dim(p, q);
        let m = if self.standard {
            CMatrix::identity(dim, dim)
        } else {
            let gram_t = self.gram(p, q).transpose();
            let l = linalg::cholesky_factor(&gram_t).expect("gram is positive definite");
            l.adjoint()
        };
        let m = Arc::new(m);
        self.caches
            .whitener
            .lock()
            .unwrap()
            .insert((p, q), m.clone());
        m
    }
}
