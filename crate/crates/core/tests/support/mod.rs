//! Shared test support: a dense full-tensor oracle for the exterior algebra
//! (independent of the increasing-index implementation) and the
//! intermediate operator form of the curvature action.

#![allow(dead_code)]

pub mod dense;

use num_complex::Complex64;
use wlab_core::context::AlgebraContext;
use wlab_core::curvature::{BundleCurvature, KaehlerCurvature};
use wlab_core::form::{PqForm, TangentVector};
use wlab_core::index::{combinations, lex_rank, replace_with_sign};
use wlab_core::linalg::{CMatrix, CVector};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn rebuild_like(phi: &PqForm, coeffs: CVector) -> PqForm {
    let ctx = phi.ctx();
    if phi.is_bundle_valued() {
        PqForm::from_bundle_coeffs(ctx, phi.p(), phi.q(), coeffs)
    } else {
        PqForm::from_coeffs(ctx, phi.p(), phi.q(), coeffs)
    }
}

/// Apply a degree-zero derivation to the holomorphic slots: D dz^p =
/// sum_l coeff[(l, p)] dz^l, extended factor-wise over dz^I.
pub fn apply_holo_derivation(phi: &PqForm, coeff: &CMatrix) -> PqForm {
    let ctx = phi.ctx();
    let n = ctx.n();
    let (p, q) = (phi.p(), phi.q());
    let r = phi.fiber_rank();
    let is = combinations(n, p);
    let js_count = combinations(n, q).len();
    let mut out = CVector::zeros(phi.coeffs().len());
    for (ri, i_set) in is.iter().enumerate() {
        for rj in 0..js_count {
            for alpha in 0..r {
                let v = phi.coeffs()[(ri * js_count + rj) * r + alpha];
                if v == Complex64::ZERO {
                    continue;
                }
                for (pos, &ip) in i_set.iter().enumerate() {
                    for l in 0..n {
                        let w = coeff[(l, ip)];
                        if w == Complex64::ZERO {
                            continue;
                        }
                        if let Some((replaced, sign)) = replace_with_sign(i_set, pos, l) {
                            let idx = (lex_rank(n, &replaced) * js_count + rj) * r + alpha;
                            out[idx] += w * v * c(sign as f64);
                        }
                    }
                }
            }
        }
    }
    rebuild_like(phi, out)
}

/// Same for the anti-holomorphic slots: D dz-bar^q = sum_l coeff[(l, q)]
/// dz-bar^l.
pub fn apply_anti_derivation(phi: &PqForm, coeff: &CMatrix) -> PqForm {
    let ctx = phi.ctx();
    let n = ctx.n();
    let (p, q) = (phi.p(), phi.q());
    let r = phi.fiber_rank();
    let is_count = combinations(n, p).len();
    let js = combinations(n, q);
    let mut out = CVector::zeros(phi.coeffs().len());
    for ri in 0..is_count {
        for (rj, j_set) in js.iter().enumerate() {
            for alpha in 0..r {
                let v = phi.coeffs()[(ri * js.len() + rj) * r + alpha];
                if v == Complex64::ZERO {
                    continue;
                }
                for (pos, &jq) in j_set.iter().enumerate() {
                    for l in 0..n {
                        let w = coeff[(l, jq)];
                        if w == Complex64::ZERO {
                            continue;
                        }
                        if let Some((replaced, sign)) = replace_with_sign(j_set, pos, l) {
                            let idx = (ri * js.len() + lex_rank(n, &replaced)) * r + alpha;
                            out[idx] += w * v * c(sign as f64);
                        }
                    }
                }
            }
        }
    }
    rebuild_like(phi, out)
}

/// Fiber rotation phi^alpha e_alpha -> (mix[(delta, alpha)] phi^alpha)
/// e_delta.
pub fn apply_fiber_mix(phi: &PqForm, mix: &CMatrix) -> PqForm {
    let ctx = phi.ctx();
    let r = phi.fiber_rank();
    let dim = ctx.scalar_dim(phi.p(), phi.q());
    let mut out = CVector::zeros(phi.coeffs().len());
    for a in 0..dim {
        for delta in 0..r {
            let mut acc = Complex64::ZERO;
            for alpha in 0..r {
                acc += mix[(delta, alpha)] * phi.coeffs()[a * r + alpha];
            }
            out[a * r + delta] = acc;
        }
    }
    rebuild_like(phi, out)
}

/// The curvature action computed from the intermediate operator form of the
/// Bochner-Kodaira derivation:
/// <sum_{i,k} g^{i j-bar} dz-bar^k ^ I_{j-bar} [(nabla_i nabla_{k-bar} -
/// nabla_{k-bar} nabla_i) phi], phi>, with the commutator acting on the
/// dz / dz-bar slots as a curvature derivation and on the fiber through R^E.
/// An independent route to `wlab_core::contraction::curvature_action`.
pub fn intermediate_curvature_action(
    phi: &PqForm,
    rc: &KaehlerCurvature,
    re: Option<&BundleCurvature>,
) -> Complex64 {
    let ctx = phi.ctx();
    let n = ctx.n();
    let r = phi.fiber_rank();
    let g_inv = ctx.g_inv();
    if phi.q() == 0 {
        // every term contracts an anti-holomorphic slot that is not there
        return Complex64::ZERO;
    }
    let mut total_form = phi.scale(Complex64::ZERO);
    for i in 0..n {
        for k in 0..n {
            // (nabla_i nabla_{k-bar} - nabla_{k-bar} nabla_i) dz^p
            //   = -g^{p m-bar} R_{i k-bar l m-bar} dz^l
            let holo = CMatrix::from_fn(n, n, |l, p| {
                let mut acc = Complex64::ZERO;
                for m in 0..n {
                    acc -= g_inv[(p, m)] * rc.entry(i, k, l, m);
                }
                acc
            });
            // ... dz-bar^q = g^{m q-bar} R_{i k-bar m l-bar} dz-bar^l
            let anti = CMatrix::from_fn(n, n, |l, q| {
                let mut acc = Complex64::ZERO;
                for m in 0..n {
                    acc += g_inv[(m, q)] * rc.entry(i, k, m, l);
                }
                acc
            });
            let mut rotated = apply_holo_derivation(phi, &holo)
                .add(&apply_anti_derivation(phi, &anti))
                .expect("shape");
            if let Some(re) = re {
                if phi.is_bundle_valued() {
                    // phi^alpha (x) h^{delta gamma-bar} R^E_{i k-bar alpha
                    // gamma-bar} e_delta
                    let h_inv = ctx.h_inv();
                    let mix = CMatrix::from_fn(r, r, |delta, alpha| {
                        let mut acc = Complex64::ZERO;
                        for gamma in 0..r {
                            acc += h_inv[(delta, gamma)] * re.entry(i, k, alpha, gamma);
                        }
                        acc
                    });
                    rotated = rotated.add(&apply_fiber_mix(phi, &mix)).expect("shape");
                }
            }
            // g^{i j-bar} dz-bar^k ^ I_{j-bar} (rotated)
            let x = TangentVector::AntiHolomorphic((0..n).map(|j| g_inv[(i, j)]).collect());
            let contracted = rotated.contract(&x);
            let term = PqForm::basis(ctx, &[], &[k])
                .wedge(&contracted)
                .expect("degree");
            total_form = total_form.add(&term).expect("shape");
        }
    }
    total_form.inner(phi).expect("shape")
}

/// Deterministic random symmetric complex matrix.
pub fn random_symmetric(n: usize, seed: u64) -> CMatrix {
    let mut rng = wlab_core::rng::rng_from_seed(seed);
    let mut v = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let z = wlab_core::rng::complex(&mut rng);
            v[(i, j)] = z;
            v[(j, i)] = z;
        }
    }
    v
}
