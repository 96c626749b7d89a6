//! Real exterior algebra over R^d with the Euclidean metric, and the
//! Betti-number predicate driven by curvature-operator positivity.

use crate::error::{Error, Result};
use crate::index::{binomial, combinations, lex_rank, merge_with_sign, remove_with_sign};
use crate::linalg::RMatrix;
use crate::rng;

/// A real k-form over R^d on the orthonormal coordinate basis.
#[derive(Debug, Clone)]
pub struct RealForm {
    d: usize,
    k: usize,
    coeffs: Vec<f64>,
}

impl RealForm {
    pub fn zero(d: usize, k: usize) -> Self {
        assert!(k <= d, "degree out of range");
        RealForm {
            d,
            k,
            coeffs: vec![0.0; binomial(d, k)],
        }
    }

    pub fn one(d: usize) -> Self {
        let mut f = Self::zero(d, 0);
        f.coeffs[0] = 1.0;
        f
    }

    /// Basis monomial dx^K for strictly increasing K (0-based).
    pub fn basis(d: usize, k_set: &[usize]) -> Self {
        let mut f = Self::zero(d, k_set.len());
        f.coeffs[lex_rank(d, k_set)] = 1.0;
        f
    }

    /// Euclidean volume form dx^1 ^ ... ^ dx^d.
    pub fn volume(d: usize) -> Self {
        let all: Vec<usize> = (0..d).collect();
        Self::basis(d, &all)
    }

    pub fn random(d: usize, k: usize, seed: u64) -> Self {
        let mut rng = rng::rng_from_seed(seed);
        let mut f = Self::zero(d, k);
        for c in f.coeffs.iter_mut() {
            *c = rng::uniform(&mut rng);
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, k_set: &[usize]) -> f64 {
        debug_assert_eq!(k_set.len(), self.k);
        self.coeffs[lex_rank(self.d, k_set)]
    }

    pub fn set_coeff(&mut self, k_set: &[usize], v: f64) {
        let r = lex_rank(self.d, k_set);
        self.coeffs[r] = v;
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.abs() <= tol)
    }

    pub fn scale(&self, s: f64) -> Self {
        RealForm {
            d: self.d,
            k: self.k,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &RealForm) -> Result<Self> {
        self.check_shape(other)?;
        Ok(RealForm {
            d: self.d,
            k: self.k,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &RealForm) -> Result<Self> {
        self.check_shape(other)?;
        Ok(RealForm {
            d: self.d,
            k: self.k,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    fn check_shape(&self, other: &RealForm) -> Result<()> {
        if self.d != other.d || self.k != other.k {
            return Err(Error::BidegreeMismatch(self.k, 0, other.k, 0));
        }
        Ok(())
    }

    pub fn wedge(&self, other: &RealForm) -> Result<RealForm> {
        if self.d != other.d {
            return Err(Error::ContextMismatch);
        }
        let k = self.k + other.k;
        if k > self.d {
            return Err(Error::DegreeOverflow {
                p: k,
                q: 0,
                n: self.d,
            });
        }
        let mut out = RealForm::zero(self.d, k);
        let a_sets = combinations(self.d, self.k);
        let b_sets = combinations(self.d, other.k);
        for (ra, a_set) in a_sets.iter().enumerate() {
            let ca = self.coeffs[ra];
            if ca == 0.0 {
                continue;
            }
            for (rb, b_set) in b_sets.iter().enumerate() {
                let cb = other.coeffs[rb];
                if cb == 0.0 {
                    continue;
                }
                let Some((merged, sign)) = merge_with_sign(a_set, b_set) else {
                    continue;
                };
                out.coeffs[lex_rank(self.d, &merged)] += sign as f64 * ca * cb;
            }
        }
        Ok(out)
    }

    /// Interior product against the coordinate vector e_i.
    pub fn contract_basis(&self, i: usize) -> RealForm {
        if self.k == 0 {
            return RealForm::zero(self.d, 0);
        }
        let mut out = RealForm::zero(self.d, self.k - 1);
        let sets = combinations(self.d, self.k);
        for (ra, k_set) in sets.iter().enumerate() {
            let c = self.coeffs[ra];
            if c == 0.0 {
                continue;
            }
            if let Some((rest, sign)) = remove_with_sign(k_set, i) {
                out.coeffs[lex_rank(self.d, &rest)] += sign as f64 * c;
            }
        }
        out
    }

    /// Interior product against sum_i x_i e_i.
    pub fn contract(&self, x: &[f64]) -> RealForm {
        assert_eq!(x.len(), self.d);
        let mut out = RealForm::zero(self.d, self.k.saturating_sub(1));
        for (i, &xi) in x.iter().enumerate() {
            if xi != 0.0 {
                out = out.add(&self.contract_basis(i).scale(xi)).expect("shape");
            }
        }
        out
    }

    /// Euclidean inner product; the increasing-index monomials are
    /// orthonormal.
    pub fn inner(&self, other: &RealForm) -> Result<f64> {
        self.check_shape(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b)
            .sum())
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// Degree-0 derivation extension of a one-form action: the operator D
    /// with D(dx^l) = sum_k c[(k, l)] dx^k applied factor-wise.
    pub fn apply_derivation(&self, c: &RMatrix) -> RealForm {
        debug_assert_eq!(c.nrows(), self.d);
        debug_assert_eq!(c.ncols(), self.d);
        let mut out = RealForm::zero(self.d, self.k);
        let sets = combinations(self.d, self.k);
        for (ra, k_set) in sets.iter().enumerate() {
            let v = self.coeffs[ra];
            if v == 0.0 {
                continue;
            }
            for (pos, &l) in k_set.iter().enumerate() {
                for m in 0..self.d {
                    let w = c[(m, l)];
                    if w == 0.0 {
                        continue;
                    }
                    if let Some((replaced, sign)) =
                        crate::index::replace_with_sign(k_set, pos, m)
                    {
                        out.coeffs[lex_rank(self.d, &replaced)] += sign as f64 * w * v;
                    }
                }
            }
        }
        out
    }
}

/// Verdict of the Betti-number predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BettiVerdict {
    /// b_k(M) = 0
    Vanishes,
    /// every harmonic k-form is parallel
    ParallelOnly,
    NoClaim,
}

/// Betti-number predicate for a d-manifold whose curvature operator is
/// `p_level`-positive (`strict`) or `p_level`-semipositive (`!strict`):
/// degrees k <= d - p or k >= p are controlled, and strict positivity with
/// 2p <= d controls every degree.
pub fn betti_prediction(d: usize, k: usize, p_level: usize, strict: bool) -> Result<BettiVerdict> {
    if k < 1 || k > d.saturating_sub(1) {
        return Err(Error::OutOfRange(format!(
            "degree k = {k} must satisfy 1 <= k <= d - 1 = {}",
            d.saturating_sub(1)
        )));
    }
    if p_level < 1 {
        return Err(Error::OutOfRange("positivity level must be >= 1".into()));
    }
    let in_range = k <= d - p_level.min(d) || k >= p_level;
    if strict {
        if 2 * p_level <= d || in_range {
            return Ok(BettiVerdict::Vanishes);
        }
        return Ok(BettiVerdict::NoClaim);
    }
    if in_range {
        return Ok(BettiVerdict::ParallelOnly);
    }
    Ok(BettiVerdict::NoClaim)
}
