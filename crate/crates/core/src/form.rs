//! Bundle-valued (p, q)-forms at a point, stored over strictly increasing
//! multi-indices dz^I ^ dz-bar^J tensor e_alpha in lexicographic order
//! (I, J, alpha).
//!
//! A form carries its own fiber rank: 1 for scalar forms, ctx.rank() for
//! E-valued forms. Scalar and E-valued forms coexist in the same context so
//! that products like dz^m ^ phi need no context juggling.

use std::sync::Arc;

use num_complex::Complex64;

use crate::context::AlgebraContext;
use crate::error::{Error, Result};
use crate::index::{binomial, combinations, lex_rank, merge_with_sign, remove_with_sign};
use crate::linalg::{CMatrix, CVector};
use crate::rng;

pub const IM: Complex64 = Complex64::new(0.0, 1.0);

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// A tangent vector of pure type, given by coordinate components.
#[derive(Debug, Clone)]
pub enum TangentVector {
    /// sum_i x^i d/dz^i
    Holomorphic(Vec<Complex64>),
    /// sum_j x^{j-bar} d/dz-bar^j
    AntiHolomorphic(Vec<Complex64>),
}

impl TangentVector {
    pub fn holomorphic_basis(n: usize, i: usize) -> Self {
        let mut v = vec![Complex64::ZERO; n];
        v[i] = c(1.0);
        TangentVector::Holomorphic(v)
    }

    pub fn anti_holomorphic_basis(n: usize, j: usize) -> Self {
        let mut v = vec![Complex64::ZERO; n];
        v[j] = c(1.0);
        TangentVector::AntiHolomorphic(v)
    }
}

/// Scalar forms pair through g alone; bundle-valued forms additionally
/// weight the fiber slots with the bundle metric h. The distinction matters
/// even at rank 1, where a line-bundle section carries the weight h_{1 1-bar}
/// while its fiber slice does not.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueKind {
    Scalar,
    Bundle,
}

/// An E-valued (p, q)-form at a point.
#[derive(Debug, Clone)]
pub struct PqForm {
    ctx: Arc<AlgebraContext>,
    p: usize,
    q: usize,
    value: ValueKind,
    /// 1 for scalar forms, ctx.rank() for bundle-valued forms.
    fiber: usize,
    coeffs: CVector,
}

impl PqForm {
    fn zero_with_kind(ctx: &Arc<AlgebraContext>, p: usize, q: usize, value: ValueKind) -> Self {
        assert!(p <= ctx.n() && q <= ctx.n(), "bidegree out of range");
        let fiber = match value {
            ValueKind::Scalar => 1,
            ValueKind::Bundle => ctx.rank(),
        };
        let dim = ctx.scalar_dim(p, q) * fiber;
        PqForm {
            ctx: ctx.clone(),
            p,
            q,
            value,
            fiber,
            coeffs: CVector::zeros(dim),
        }
    }

    /// Scalar zero form.
    pub fn zero(ctx: &Arc<AlgebraContext>, p: usize, q: usize) -> Self {
        Self::zero_with_kind(ctx, p, q, ValueKind::Scalar)
    }

    /// E-valued zero form.
    pub fn zero_bundle(ctx: &Arc<AlgebraContext>, p: usize, q: usize) -> Self {
        Self::zero_with_kind(ctx, p, q, ValueKind::Bundle)
    }

    /// The constant function 1.
    pub fn one(ctx: &Arc<AlgebraContext>) -> Self {
        let mut f = Self::zero(ctx, 0, 0);
        f.coeffs[0] = c(1.0);
        f
    }

    /// Scalar basis monomial dz^I ^ dz-bar^J (0-based strictly increasing).
    pub fn basis(ctx: &Arc<AlgebraContext>, i_set: &[usize], j_set: &[usize]) -> Self {
        let mut f = Self::zero(ctx, i_set.len(), j_set.len());
        let idx = f.flat_index(lex_rank(ctx.n(), i_set), lex_rank(ctx.n(), j_set), 0);
        f.coeffs[idx] = c(1.0);
        f
    }

    /// Bundle basis monomial dz^I ^ dz-bar^J tensor e_alpha.
    pub fn basis_bundle(
        ctx: &Arc<AlgebraContext>,
        i_set: &[usize],
        j_set: &[usize],
        alpha: usize,
    ) -> Self {
        assert!(alpha < ctx.rank());
        let mut f = Self::zero_bundle(ctx, i_set.len(), j_set.len());
        let idx = f.flat_index(lex_rank(ctx.n(), i_set), lex_rank(ctx.n(), j_set), alpha);
        f.coeffs[idx] = c(1.0);
        f
    }

    pub fn from_coeffs(ctx: &Arc<AlgebraContext>, p: usize, q: usize, coeffs: CVector) -> Self {
        assert_eq!(coeffs.len(), ctx.scalar_dim(p, q));
        PqForm {
            ctx: ctx.clone(),
            p,
            q,
            value: ValueKind::Scalar,
            fiber: 1,
            coeffs,
        }
    }

    /// Bundle-valued form from coefficients laid out (I, J, alpha).
    pub fn from_bundle_coeffs(
        ctx: &Arc<AlgebraContext>,
        p: usize,
        q: usize,
        coeffs: CVector,
    ) -> Self {
        let r = ctx.rank();
        assert_eq!(coeffs.len(), ctx.scalar_dim(p, q) * r);
        PqForm {
            ctx: ctx.clone(),
            p,
            q,
            value: ValueKind::Bundle,
            fiber: r,
            coeffs,
        }
    }

    /// Deterministic random E-valued form, coefficients uniform in the unit box.
    pub fn random(ctx: &Arc<AlgebraContext>, p: usize, q: usize, seed: u64) -> Self {
        let mut rng = rng::rng_from_seed(seed);
        let mut f = Self::zero_bundle(ctx, p, q);
        for i in 0..f.coeffs.len() {
            f.coeffs[i] = rng::complex(&mut rng);
        }
        f
    }

    /// Deterministic random scalar form.
    pub fn random_scalar(ctx: &Arc<AlgebraContext>, p: usize, q: usize, seed: u64) -> Self {
        let mut rng = rng::rng_from_seed(seed);
        let mut f = Self::zero(ctx, p, q);
        for i in 0..f.coeffs.len() {
            f.coeffs[i] = rng::complex(&mut rng);
        }
        f
    }

    /// Deterministic random primitive scalar form (random combination of a
    /// metric-orthonormal basis of ker Lambda).
    pub fn random_primitive(ctx: &Arc<AlgebraContext>, p: usize, q: usize, seed: u64) -> Self {
        let kernel = ctx.primitive_kernel(p, q);
        let mut rng = rng::rng_from_seed(seed);
        let weights = CVector::from_fn(kernel.ncols(), |_, _| rng::complex(&mut rng));
        PqForm {
            ctx: ctx.clone(),
            p,
            q,
            value: ValueKind::Scalar,
            fiber: 1,
            coeffs: kernel.as_ref() * weights,
        }
    }

    pub fn ctx(&self) -> &Arc<AlgebraContext> {
        &self.ctx
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn fiber_rank(&self) -> usize {
        self.fiber
    }

    pub fn value_kind(&self) -> ValueKind {
        self.value
    }

    pub fn is_bundle_valued(&self) -> bool {
        self.value == ValueKind::Bundle
    }

    pub fn coeffs(&self) -> &CVector {
        &self.coeffs
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut CVector {
        &mut self.coeffs
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|z| z.norm() <= tol)
    }

    fn flat_index(&self, rank_i: usize, rank_j: usize, alpha: usize) -> usize {
        let cq = binomial(self.ctx.n(), self.q);
        (rank_i * cq + rank_j) * self.fiber + alpha
    }

    /// Coefficient at (I, J, alpha); indices 0-based strictly increasing.
    pub fn coeff(&self, i_set: &[usize], j_set: &[usize], alpha: usize) -> Complex64 {
        debug_assert_eq!(i_set.len(), self.p);
        debug_assert_eq!(j_set.len(), self.q);
        debug_assert!(alpha < self.fiber);
        let n = self.ctx.n();
        self.coeffs[self.flat_index(lex_rank(n, i_set), lex_rank(n, j_set), alpha)]
    }

    pub fn set_coeff(&mut self, i_set: &[usize], j_set: &[usize], alpha: usize, v: Complex64) {
        let n = self.ctx.n();
        let idx = self.flat_index(lex_rank(n, i_set), lex_rank(n, j_set), alpha);
        self.coeffs[idx] = v;
    }

    pub fn scale(&self, s: Complex64) -> Self {
        PqForm {
            ctx: self.ctx.clone(),
            p: self.p,
            q: self.q,
            value: self.value,
            fiber: self.fiber,
            coeffs: self.coeffs.map(|z| z * s),
        }
    }

    pub fn add(&self, other: &PqForm) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(PqForm {
            ctx: self.ctx.clone(),
            p: self.p,
            q: self.q,
            value: self.value,
            fiber: self.fiber,
            coeffs: &self.coeffs + &other.coeffs,
        })
    }

    pub fn sub(&self, other: &PqForm) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(PqForm {
            ctx: self.ctx.clone(),
            p: self.p,
            q: self.q,
            value: self.value,
            fiber: self.fiber,
            coeffs: &self.coeffs - &other.coeffs,
        })
    }

    fn check_same_ctx(&self, other: &PqForm) -> Result<()> {
        if !self.ctx.compatible(&other.ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    fn check_same_shape(&self, other: &PqForm) -> Result<()> {
        self.check_same_ctx(other)?;
        if self.p != other.p || self.q != other.q || self.value != other.value {
            return Err(Error::BidegreeMismatch(self.p, self.q, other.p, other.q));
        }
        Ok(())
    }

    /// Scalar slice phi^alpha of a bundle-valued form.
    pub fn fiber_slice(&self, alpha: usize) -> PqForm {
        assert!(alpha < self.fiber);
        let dim = self.ctx.scalar_dim(self.p, self.q);
        let coeffs = CVector::from_fn(dim, |a, _| self.coeffs[a * self.fiber + alpha]);
        PqForm {
            ctx: self.ctx.clone(),
            p: self.p,
            q: self.q,
            value: ValueKind::Scalar,
            fiber: 1,
            coeffs,
        }
    }

    /// Assemble an E-valued form from scalar slices.
    pub fn from_slices(ctx: &Arc<AlgebraContext>, slices: &[PqForm]) -> Result<Self> {
        let r = ctx.rank();
        if slices.len() != r {
            return Err(Error::OutOfRange(format!(
                "expected {r} fiber slices, got {}",
                slices.len()
            )));
        }
        let (p, q) = (slices[0].p, slices[0].q);
        let mut out = Self::zero_bundle(ctx, p, q);
        let dim = ctx.scalar_dim(p, q);
        for (alpha, s) in slices.iter().enumerate() {
            if s.p != p || s.q != q || s.fiber != 1 {
                return Err(Error::BidegreeMismatch(p, q, s.p, s.q));
            }
            for a in 0..dim {
                out.coeffs[a * r + alpha] = s.coeffs[a];
            }
        }
        Ok(out)
    }

    /// Exterior product; at most one operand may be bundle-valued.
    pub fn wedge(&self, other: &PqForm) -> Result<PqForm> {
        self.check_same_ctx(other)?;
        let n = self.ctx.n();
        let (p, q) = (self.p + other.p, self.q + other.q);
        if p > n || q > n {
            return Err(Error::DegreeOverflow { p, q, n });
        }
        if self.is_bundle_valued() && other.is_bundle_valued() {
            return Err(Error::TwoBundleOperands);
        }
        let out_kind = if self.is_bundle_valued() || other.is_bundle_valued() {
            ValueKind::Bundle
        } else {
            ValueKind::Scalar
        };
        let mut out = Self::zero_with_kind(&self.ctx, p, q, out_kind);
        let out_fiber = out.fiber;
        let a_is = combinations(n, self.p);
        let a_js = combinations(n, self.q);
        let b_is = combinations(n, other.p);
        let b_js = combinations(n, other.q);
        let cq_out = binomial(n, q);
        // sign (-1)^{p_b q_a} from moving dz^{I_b} past dz-bar^{J_a}
        let cross = if (other.p * self.q) % 2 == 0 { 1.0 } else { -1.0 };
        for (ra, i_a) in a_is.iter().enumerate() {
            for (rb, i_b) in b_is.iter().enumerate() {
                let Some((i_m, s_i)) = merge_with_sign(i_a, i_b) else {
                    continue;
                };
                let rank_i = lex_rank(n, &i_m);
                for (sa, j_a) in a_js.iter().enumerate() {
                    for (sb, j_b) in b_js.iter().enumerate() {
                        let Some((j_m, s_j)) = merge_with_sign(j_a, j_b) else {
                            continue;
                        };
                        let rank_j = lex_rank(n, &j_m);
                        let sign = c(cross * (s_i * s_j) as f64);
                        let base_out = (rank_i * cq_out + rank_j) * out_fiber;
                        for ga in 0..self.fiber {
                            let ca = self.coeffs[(ra * a_js.len() + sa) * self.fiber + ga];
                            if ca == Complex64::ZERO {
                                continue;
                            }
                            for gb in 0..other.fiber {
                                let cb = other.coeffs[(rb * b_js.len() + sb) * other.fiber + gb];
                                if cb == Complex64::ZERO {
                                    continue;
                                }
                                let gout = ga.max(gb);
                                out.coeffs[base_out + gout] += sign * ca * cb;
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Interior product I_X: an anti-derivation that drops the matching
    /// degree; returns the zero form when that degree is already zero.
    pub fn contract(&self, x: &TangentVector) -> PqForm {
        let n = self.ctx.n();
        let r = self.fiber;
        match x {
            TangentVector::Holomorphic(comps) => {
                assert_eq!(comps.len(), n);
                if self.p == 0 {
                    return Self::zero_with_kind(&self.ctx, 0, self.q, self.value);
                }
                let mut out = Self::zero_with_kind(&self.ctx, self.p - 1, self.q, self.value);
                let is = combinations(n, self.p);
                let js_count = binomial(n, self.q);
                for (ra, i_set) in is.iter().enumerate() {
                    for &i in i_set.iter() {
                        let xi = comps[i];
                        if xi == Complex64::ZERO {
                            continue;
                        }
                        let (rest, sign) = remove_with_sign(i_set, i).expect("member");
                        let rank_rest = lex_rank(n, &rest);
                        let factor = xi * c(sign as f64);
                        for sj in 0..js_count {
                            for alpha in 0..r {
                                let v = self.coeffs[(ra * js_count + sj) * r + alpha];
                                if v == Complex64::ZERO {
                                    continue;
                                }
                                out.coeffs[(rank_rest * js_count + sj) * r + alpha] += factor * v;
                            }
                        }
                    }
                }
                out
            }
            TangentVector::AntiHolomorphic(comps) => {
                assert_eq!(comps.len(), n);
                if self.q == 0 {
                    return Self::zero_with_kind(&self.ctx, self.p, 0, self.value);
                }
                let mut out = Self::zero_with_kind(&self.ctx, self.p, self.q - 1, self.value);
                let js = combinations(n, self.q);
                let is_count = binomial(n, self.p);
                let js_out_count = binomial(n, self.q - 1);
                // anti-derivation sign for passing over the p dz factors
                let front = if self.p % 2 == 0 { 1.0 } else { -1.0 };
                for (sa, j_set) in js.iter().enumerate() {
                    for &j in j_set.iter() {
                        let xj = comps[j];
                        if xj == Complex64::ZERO {
                            continue;
                        }
                        let (rest, sign) = remove_with_sign(j_set, j).expect("member");
                        let rank_rest = lex_rank(n, &rest);
                        let factor = xj * c(front * sign as f64);
                        for ri in 0..is_count {
                            for alpha in 0..r {
                                let v = self.coeffs[(ri * js.len() + sa) * r + alpha];
                                if v == Complex64::ZERO {
                                    continue;
                                }
                                out.coeffs[(ri * js_out_count + rank_rest) * r + alpha] +=
                                    factor * v;
                            }
                        }
                    }
                }
                out
            }
        }
    }

    /// The local Hermitian inner product: 1/(p! q!)-normalized contraction
    /// against g, with bundle slots paired through h_{alpha beta-bar}.
    /// Sesquilinear, linear in `self`.
    pub fn inner(&self, other: &PqForm) -> Result<Complex64> {
        self.check_same_shape(other)?;
        if self.ctx.is_standard() {
            return Ok(other.coeffs.dotc(&self.coeffs));
        }
        let gram = self.ctx.gram(self.p, self.q);
        let dim = self.ctx.scalar_dim(self.p, self.q);
        if self.value == ValueKind::Scalar {
            let w = gram.as_ref() * other.coeffs.map(|z| z.conj());
            return Ok(self.coeffs.dot(&w));
        }
        let r = self.fiber;
        let h = self.ctx.h();
        let mut total = Complex64::ZERO;
        for alpha in 0..r {
            let xa = CVector::from_fn(dim, |a, _| self.coeffs[a * r + alpha]);
            for beta in 0..r {
                let yb = CVector::from_fn(dim, |b, _| other.coeffs[b * r + beta]);
                let pair = xa.dot(&(gram.as_ref() * yb.map(|z| z.conj())));
                total += h[(alpha, beta)] * pair;
            }
        }
        Ok(total)
    }

    pub fn norm_sq(&self) -> f64 {
        self.inner(self).expect("same shape").re
    }

    /// L = omega ^ . with omega = sqrt(-1) g_{i j-bar} dz^i ^ dz-bar^j.
    pub fn lefschetz(&self) -> Result<PqForm> {
        kaehler_form(&self.ctx).wedge(self)
    }

    /// Metric adjoint of L. Returns the zero form when p or q is 0 (kept at
    /// the input bidegree, since (p-1, q-1) does not exist there).
    pub fn lefschetz_dual(&self) -> PqForm {
        if self.p == 0 || self.q == 0 {
            return Self::zero_with_kind(&self.ctx, self.p, self.q, self.value);
        }
        let mat = self.ctx.lambda_matrix(self.p, self.q);
        self.apply_scalar_matrix(mat.as_ref(), self.p - 1, self.q - 1)
    }

    /// Apply a matrix acting on scalar coefficients slice-wise across fibers.
    pub(crate) fn apply_scalar_matrix(&self, m: &CMatrix, p_out: usize, q_out: usize) -> PqForm {
        let r = self.fiber;
        let dim_in = self.ctx.scalar_dim(self.p, self.q);
        let dim_out = self.ctx.scalar_dim(p_out, q_out);
        debug_assert_eq!(m.ncols(), dim_in);
        debug_assert_eq!(m.nrows(), dim_out);
        let mut out = Self::zero_with_kind(&self.ctx, p_out, q_out, self.value);
        for alpha in 0..r {
            let x = CVector::from_fn(dim_in, |a, _| self.coeffs[a * r + alpha]);
            let y = m * x;
            for b in 0..dim_out {
                out.coeffs[b * r + alpha] = y[b];
            }
        }
        out
    }

    /// (Lambda L - L Lambda)(a) - (n - p - q) a; the zero form for every input.
    pub fn commutator_defect(&self) -> PqForm {
        let n = self.ctx.n();
        let (p, q) = (self.p, self.q);
        let term1 = if p < n && q < n {
            self.lefschetz().expect("degree checked").lefschetz_dual()
        } else {
            // L lands in the zero space, so Lambda L vanishes
            Self::zero_with_kind(&self.ctx, p, q, self.value)
        };
        let term2 = if p >= 1 && q >= 1 {
            self.lefschetz_dual().lefschetz().expect("degree shrinks")
        } else {
            Self::zero_with_kind(&self.ctx, p, q, self.value)
        };
        let scale = c(n as f64 - p as f64 - q as f64);
        term1
            .sub(&term2)
            .and_then(|d| d.sub(&self.scale(scale)))
            .expect("shapes agree")
    }
}

/// The Kaehler form omega = sqrt(-1) g_{i j-bar} dz^i ^ dz-bar^j.
pub fn kaehler_form(ctx: &Arc<AlgebraContext>) -> PqForm {
    let n = ctx.n();
    let mut f = PqForm::zero(ctx, 1, 1);
    for i in 0..n {
        for j in 0..n {
            f.coeffs_mut()[i * n + j] = IM * ctx.g()[(i, j)];
        }
    }
    f
}

/// Matrix of L on scalar coefficients at (p, q); used by the context cache.
pub(crate) fn build_lefschetz_matrix(ctx: &AlgebraContext, p: usize, q: usize) -> CMatrix {
    let n = ctx.n();
    let is = combinations(n, p);
    let js = combinations(n, q);
    let dim_in = is.len() * js.len();
    let dim_out = ctx.scalar_dim(p + 1, q + 1);
    let js_out_count = binomial(n, q + 1);
    let mut m = CMatrix::zeros(dim_out, dim_in);
    let front = if p % 2 == 0 { 1.0 } else { -1.0 };
    for (ra, i_set) in is.iter().enumerate() {
        for (sa, j_set) in js.iter().enumerate() {
            let col = ra * js.len() + sa;
            for a in 0..n {
                let Some((i_m, s_i)) = merge_with_sign(&[a], i_set) else {
                    continue;
                };
                for b in 0..n {
                    let gab = ctx.g()[(a, b)];
                    if gab == Complex64::ZERO {
                        continue;
                    }
                    let Some((j_m, s_j)) = merge_with_sign(&[b], j_set) else {
                        continue;
                    };
                    let row = lex_rank(n, &i_m) * js_out_count + lex_rank(n, &j_m);
                    m[(row, col)] += IM * gab * c(front * (s_i * s_j) as f64);
                }
            }
        }
    }
    m
}

impl std::ops::Add for &PqForm {
    type Output = PqForm;
    fn add(self, rhs: &PqForm) -> PqForm {
        PqForm::add(self, rhs).expect("shape mismatch in +")
    }
}

impl std::ops::Sub for &PqForm {
    type Output = PqForm;
    fn sub(self, rhs: &PqForm) -> PqForm {
        PqForm::sub(self, rhs).expect("shape mismatch in -")
    }
}

impl std::ops::Mul<Complex64> for &PqForm {
    type Output = PqForm;
    fn mul(self, rhs: Complex64) -> PqForm {
        self.scale(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx2() -> Arc<AlgebraContext> {
        AlgebraContext::standard(2)
    }

    #[test]
    fn wedge_of_basis_one_forms() {
        let ctx = ctx2();
        let dz1 = PqForm::basis(&ctx, &[0], &[]);
        let dzbar2 = PqForm::basis(&ctx, &[], &[1]);
        let w = dz1.wedge(&dzbar2).unwrap();
        assert_eq!((w.p(), w.q()), (1, 1));
        assert_eq!(w.coeff(&[0], &[1], 0), Complex64::new(1.0, 0.0));
        // alpha ^ alpha = 0
        let sq = dz1.wedge(&dz1).unwrap();
        assert!(sq.is_zero(0.0));
    }

    #[test]
    fn wedge_is_bilinear() {
        let ctx = ctx2();
        let dz1 = PqForm::basis(&ctx, &[0], &[]);
        let dz2 = PqForm::basis(&ctx, &[1], &[]);
        let dzbar1 = PqForm::basis(&ctx, &[], &[0]);
        let sum = &dz1 + &dz2;
        let lhs = sum.wedge(&dzbar1).unwrap();
        let rhs = &dz1.wedge(&dzbar1).unwrap() + &dz2.wedge(&dzbar1).unwrap();
        assert!(lhs.sub(&rhs).unwrap().is_zero(0.0));
    }

    #[test]
    fn wedge_degree_overflow_is_an_error() {
        let ctx = ctx2();
        let top = PqForm::basis(&ctx, &[0, 1], &[]);
        let dz1 = PqForm::basis(&ctx, &[0], &[]);
        assert!(matches!(
            top.wedge(&dz1),
            Err(Error::DegreeOverflow { .. })
        ));
    }

    #[test]
    fn contract_basis_cases() {
        let ctx = ctx2();
        // I_{dzbar1} (dzbar1 ^ dzbar2) = dzbar2
        let f = PqForm::basis(&ctx, &[], &[0, 1]);
        let x = TangentVector::anti_holomorphic_basis(2, 0);
        let g = f.contract(&x);
        assert_eq!(g.coeff(&[], &[1], 0), Complex64::new(1.0, 0.0));
        // I_{dz1} dz2 = 0
        let f = PqForm::basis(&ctx, &[1], &[]);
        let x = TangentVector::holomorphic_basis(2, 0);
        assert!(f.contract(&x).is_zero(0.0));
    }

    #[test]
    fn contract_anti_derivation_frozen_case() {
        // I_{d/dz1}(dz2 ^ dz1 ^ dzbar3) = -dz2 ^ dzbar3, expanded by hand
        // with the anti-derivation rule
        let ctx = AlgebraContext::standard(3);
        // dz2 ^ dz1 = -dz1 ^ dz2
        let f = PqForm::basis(&ctx, &[0, 1], &[2]).scale(c(-1.0));
        let x = TangentVector::holomorphic_basis(3, 0);
        let g = f.contract(&x);
        assert_eq!(g.coeff(&[1], &[2], 0), c(-1.0));
        assert_eq!((g.p(), g.q()), (1, 1));
    }

    #[test]
    fn inner_product_orthonormal_basis() {
        let ctx = ctx2();
        let f = PqForm::basis(&ctx, &[0], &[1]);
        assert!((f.norm_sq() - 1.0).abs() < 1e-15);
        let g = PqForm::basis(&ctx, &[1], &[0]);
        assert_eq!(f.inner(&g).unwrap(), Complex64::ZERO);
        let dz1 = PqForm::basis(&ctx, &[0], &[]);
        let dz2 = PqForm::basis(&ctx, &[1], &[]);
        assert_eq!(dz1.inner(&dz2).unwrap(), Complex64::ZERO);
    }

    #[test]
    fn kaehler_form_norm_is_n() {
        for n in 1..=4 {
            let ctx = AlgebraContext::standard(n);
            let omega = kaehler_form(&ctx);
            assert!((omega.norm_sq() - n as f64).abs() < 1e-12, "n = {n}");
        }
        // also with a random metric
        let ctx = AlgebraContext::random(3, 1, 11);
        let omega = kaehler_form(&ctx);
        assert!((omega.norm_sq() - 3.0).abs() < 1e-9);
    }

    #[test]
    fn lefschetz_of_one_in_n2() {
        let ctx = ctx2();
        let l1 = PqForm::one(&ctx).lefschetz().unwrap();
        assert_eq!(l1.coeff(&[0], &[0], 0), IM);
        assert_eq!(l1.coeff(&[1], &[1], 0), IM);
        assert_eq!(l1.coeff(&[0], &[1], 0), Complex64::ZERO);
    }

    #[test]
    fn lefschetz_overflow_errors() {
        let ctx = ctx2();
        let mut f = PqForm::one(&ctx);
        for _ in 0..2 {
            f = f.lefschetz().unwrap();
        }
        assert!(matches!(f.lefschetz(), Err(Error::DegreeOverflow { .. })));
    }

    #[test]
    fn lambda_of_omega_is_n() {
        for n in 1..=3 {
            let ctx = AlgebraContext::standard(n);
            let omega = kaehler_form(&ctx);
            let lam = omega.lefschetz_dual();
            let expected = PqForm::one(&ctx).scale(c(n as f64));
            assert!(lam.sub(&expected).unwrap().is_zero(1e-12), "n = {n}");
        }
    }

    #[test]
    fn lambda_kills_off_diagonal_monomial() {
        let ctx = ctx2();
        let f = PqForm::basis(&ctx, &[0], &[1]);
        assert!(f.lefschetz_dual().is_zero(1e-14));
    }

    #[test]
    fn adjointness_of_l_and_lambda() {
        let ctx = AlgebraContext::random(3, 1, 5);
        for (p, q) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            let a = PqForm::random_scalar(&ctx, p, q, 17);
            let b = PqForm::random_scalar(&ctx, p - 1, q - 1, 23);
            let lhs = a.lefschetz_dual().inner(&b).unwrap();
            let rhs = a.inner(&b.lefschetz().unwrap()).unwrap();
            assert!(
                (lhs - rhs).norm() < 1e-10 * (1.0 + lhs.norm()),
                "(p,q)=({p},{q})"
            );
        }
    }

    #[test]
    fn adjointness_for_bundle_valued_forms() {
        // Lambda acts slice-wise and the h-weighted pairing keeps it the
        // adjoint of L
        let ctx = AlgebraContext::random(3, 2, 6);
        let a = PqForm::random(&ctx, 2, 2, 19);
        let b = PqForm::random(&ctx, 1, 1, 29);
        let lhs = a.lefschetz_dual().inner(&b).unwrap();
        let rhs = a.inner(&b.lefschetz().unwrap()).unwrap();
        assert!((lhs - rhs).norm() < 1e-10 * (1.0 + lhs.norm()));
    }

    #[test]
    fn commutator_identity_all_bidegrees() {
        for n in 1..=3 {
            let ctx = AlgebraContext::standard(n);
            for p in 0..=n {
                for q in 0..=n {
                    let a = PqForm::random_scalar(&ctx, p, q, (n * 100 + p * 10 + q) as u64);
                    let defect = a.commutator_defect();
                    let scale = a.norm_sq().sqrt().max(1.0);
                    assert!(
                        defect.norm_sq().sqrt() < 1e-10 * scale,
                        "n={n} p={p} q={q}"
                    );
                }
            }
        }
    }

    #[test]
    fn commutator_identity_random_metric() {
        let ctx = AlgebraContext::random(4, 1, 9);
        let a = PqForm::random_scalar(&ctx, 2, 1, 31);
        let defect = a.commutator_defect();
        assert!(defect.norm_sq().sqrt() < 1e-10 * a.norm_sq().sqrt().max(1.0));
    }

    #[test]
    fn graded_commutativity() {
        let ctx = AlgebraContext::standard(3);
        for (pa, qa, pb, qb) in [(1, 0, 0, 1), (1, 1, 1, 0), (2, 0, 1, 1), (0, 1, 0, 1)] {
            let a = PqForm::random_scalar(&ctx, pa, qa, 41);
            let b = PqForm::random_scalar(&ctx, pb, qb, 43);
            let ab = a.wedge(&b).unwrap();
            let ba = b.wedge(&a).unwrap();
            let sign = if ((pa + qa) * (pb + qb)) % 2 == 0 {
                1.0
            } else {
                -1.0
            };
            assert!(ab.sub(&ba.scale(c(sign))).unwrap().is_zero(1e-12));
        }
    }

    #[test]
    fn context_mismatch_detected() {
        let a = PqForm::basis(&AlgebraContext::standard(2), &[0], &[]);
        let b = PqForm::basis(&AlgebraContext::standard(3), &[0], &[]);
        assert!(matches!(a.wedge(&b), Err(Error::ContextMismatch)));
    }

    #[test]
    fn two_bundle_operands_rejected() {
        let ctx = AlgebraContext::with_bundle(2, 2);
        let a = PqForm::basis_bundle(&ctx, &[0], &[], 0);
        let b = PqForm::basis_bundle(&ctx, &[], &[0], 1);
        assert!(matches!(a.wedge(&b), Err(Error::TwoBundleOperands)));
        // scalar ^ bundle works and keeps the fiber slot
        let s = PqForm::basis(&ctx, &[1], &[]);
        let w = s.wedge(&b).unwrap();
        assert_eq!(w.fiber_rank(), 2);
        assert_eq!(w.coeff(&[1], &[0], 1), c(1.0));
    }

    #[test]
    fn inner_product_positive_definite_random_metric() {
        let ctx = AlgebraContext::random(3, 2, 77);
        for seed in 0..50u64 {
            let f = PqForm::random(&ctx, 1, 2, 1000 + seed);
            assert!(f.norm_sq() > 0.0);
        }
    }
}
