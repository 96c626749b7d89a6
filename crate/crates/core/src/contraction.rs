//! The quadratic contraction operators T, S, Y (and the real T on
//! Riemannian forms), the Hermitian form B^{p,q}, and the algebraic
//! curvature actions that realize the zeroth-order parts of the
//! Bochner-Kodaira and Weitzenbock formulas.

use num_complex::Complex64;

use crate::curvature::{antisym_pairs, sym_pairs, BundleCurvature, KaehlerCurvature, RiemCurvature};
use crate::error::{Error, Result};
use crate::form::{PqForm, TangentVector};
use crate::linalg::{CMatrix, RMatrix};
use crate::riemannian::RealForm;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Carrier bundle of a tensor-valued form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CarrierKind {
    /// Sym^2 T^{1,0}, dimension n(n+1)/2
    Sym2,
    /// T^{1,0} (x) E, dimension n r
    VecBundle,
    /// T^{1,0} (x) T^{0,1}, dimension n^2
    Mixed,
}

/// A form with values in a tensor bundle, stored as components against the
/// orthonormal carrier basis, so norm^2 is a plain component sum.
#[derive(Debug, Clone)]
pub struct TensorValuedForm {
    kind: CarrierKind,
    components: Vec<PqForm>,
}

impl TensorValuedForm {
    pub fn kind(&self) -> CarrierKind {
        self.kind
    }

    pub fn components(&self) -> &[PqForm] {
        &self.components
    }

    pub fn component(&self, a: usize) -> &PqForm {
        &self.components[a]
    }

    pub fn carrier_dim(&self) -> usize {
        self.components.len()
    }

    pub fn norm_sq(&self) -> f64 {
        self.components.iter().map(|f| f.norm_sq()).sum()
    }

    fn expect_dim(&self, expected: usize) {
        debug_assert_eq!(self.components.len(), expected);
    }
}

/// g^{i k-bar} I_{k-bar} as a (0,1) tangent vector for fixed i.
fn raised_anti_vector(phi: &PqForm, i: usize) -> TangentVector {
    let ctx = phi.ctx();
    let n = ctx.n();
    TangentVector::AntiHolomorphic((0..n).map(|k| ctx.g_inv()[(i, k)]).collect())
}

/// g^{k j-bar} I_k as a (1,0) tangent vector for fixed j (the dual of
/// dz-bar^j).
fn raised_holo_vector(phi: &PqForm, j: usize) -> TangentVector {
    let ctx = phi.ctx();
    let n = ctx.n();
    TangentVector::Holomorphic((0..n).map(|k| ctx.g_inv()[(k, j)]).collect())
}

/// The zero form at the bidegree where T-values live, clamped so the
/// degenerate cases q = 0 and p = n still have a well-defined shape.
fn t_target_zero(phi: &PqForm) -> PqForm {
    let ctx = phi.ctx();
    let p_out = (phi.p() + 1).min(ctx.n());
    let q_out = phi.q().saturating_sub(1);
    if phi.is_bundle_valued() {
        PqForm::zero_bundle(ctx, p_out, q_out)
    } else {
        PqForm::zero(ctx, p_out, q_out)
    }
}

/// U[i][m] = g^{i k-bar} I_{k-bar}(dz^m ^ phi), the building block of both
/// the T operator and the curvature action.
fn contraction_blocks(phi: &PqForm) -> Vec<Vec<PqForm>> {
    let ctx = phi.ctx();
    let n = ctx.n();
    let mut blocks = Vec::with_capacity(n);
    if phi.q() == 0 || phi.p() == n {
        let zero = t_target_zero(phi);
        return (0..n).map(|_| vec![zero.clone(); n]).collect();
    }
    let wedges: Vec<PqForm> = (0..n)
        .map(|m| {
            PqForm::basis(ctx, &[m], &[])
                .wedge(phi)
                .expect("degree checked")
        })
        .collect();
    for i in 0..n {
        let x = raised_anti_vector(phi, i);
        blocks.push(wedges.iter().map(|w| w.contract(&x)).collect());
    }
    blocks
}

/// T_phi(dz^i, dz^j) = g^{i k-bar} I_{k-bar}(dz^j ^ phi)
///                   + g^{j k-bar} I_{k-bar}(dz^i ^ phi).
pub fn t_pair(phi: &PqForm, i: usize, j: usize) -> PqForm {
    let ctx = phi.ctx();
    if phi.q() == 0 || phi.p() == ctx.n() {
        return t_target_zero(phi);
    }
    let dzj_phi = PqForm::basis(ctx, &[j], &[]).wedge(phi).expect("degree");
    let dzi_phi = PqForm::basis(ctx, &[i], &[]).wedge(phi).expect("degree");
    let a = dzj_phi.contract(&raised_anti_vector(phi, i));
    let b = dzi_phi.contract(&raised_anti_vector(phi, j));
    &a + &b
}

/// T_phi evaluated on a symmetric 2-tensor v = v_{ij} dz^i (x) dz^j:
/// sum over all (i, j) of v_{ij} T_phi(dz^i, dz^j). Linear in v and phi;
/// identically zero when q = 0 or p = n.
pub fn t_apply(phi: &PqForm, v: &CMatrix) -> Result<PqForm> {
    let n = phi.ctx().n();
    if v.nrows() != n || v.ncols() != n {
        return Err(Error::OutOfRange("v must be n x n".into()));
    }
    let sym_res = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (v[(i, j)] - v[(j, i)]).norm())
        .fold(0.0f64, f64::max);
    if sym_res > 1e-9 * (1.0 + v.norm()) {
        return Err(Error::NotSymmetric(sym_res));
    }
    let mut out = t_target_zero(phi);
    if phi.q() == 0 || phi.p() == n {
        return Ok(out);
    }
    let blocks = contraction_blocks(phi);
    // sum_ij v_ij (U[i][j] + U[j][i]) = 2 sum_ij v_ij U[i][j]
    for i in 0..n {
        for m in 0..n {
            let w = v[(i, m)] * c(2.0);
            if w != Complex64::ZERO {
                out = out.add(&blocks[i][m].scale(w))?;
            }
        }
    }
    Ok(out)
}

/// Components of T_phi against the orthonormal Sym^2 basis (lexicographic
/// sym-pair order, matching `KaehlerCurvature::sym_operator`).
pub fn t_operator(phi: &PqForm) -> TensorValuedForm {
    let ctx = phi.ctx();
    let n = ctx.n();
    let pairs = sym_pairs(n);
    if phi.q() == 0 || phi.p() == n {
        let zero = t_target_zero(phi);
        return TensorValuedForm {
            kind: CarrierKind::Sym2,
            components: vec![zero; pairs.len()],
        };
    }
    let blocks = contraction_blocks(phi);
    // rotate both slots into the orthonormal coframe: P[a][b] =
    // sum_ij (E^-1)_{a i} (E^-1)_{b j} U[i][j]
    let e_inv = ctx.frame_inv();
    let standard = ctx.is_standard();
    let rotated: Vec<Vec<PqForm>> = if standard {
        blocks
    } else {
        let mut half: Vec<Vec<PqForm>> = Vec::with_capacity(n);
        for a in 0..n {
            let mut row = Vec::with_capacity(n);
            for m in 0..n {
                let mut acc = t_target_zero(phi);
                for i in 0..n {
                    let w = e_inv[(a, i)];
                    if w != Complex64::ZERO {
                        acc = acc.add(&blocks[i][m].scale(w)).expect("shape");
                    }
                }
                row.push(acc);
            }
            half.push(row);
        }
        let mut full: Vec<Vec<PqForm>> = Vec::with_capacity(n);
        for a in 0..n {
            let mut row = Vec::with_capacity(n);
            for b in 0..n {
                let mut acc = t_target_zero(phi);
                for j in 0..n {
                    let w = e_inv[(b, j)];
                    if w != Complex64::ZERO {
                        acc = acc.add(&half[a][j].scale(w)).expect("shape");
                    }
                }
                row.push(acc);
            }
            full.push(row);
        }
        full
    };
    let sqrt2 = std::f64::consts::SQRT_2;
    let components = pairs
        .iter()
        .map(|&(a, b)| {
            if a == b {
                rotated[a][a].scale(c(2.0))
            } else {
                (&rotated[a][b] + &rotated[b][a]).scale(c(sqrt2))
            }
        })
        .collect();
    TensorValuedForm {
        kind: CarrierKind::Sym2,
        components,
    }
}

/// Components of S_phi against the orthonormal basis of T^{1,0} (x) E
/// (index (a, lambda) flattened as a*r + lambda, matching
/// `BundleCurvature::nakano_operator`). Components are scalar forms.
pub fn s_operator(phi: &PqForm) -> TensorValuedForm {
    let ctx = phi.ctx();
    let n = ctx.n();
    let r = phi.fiber_rank();
    let bundle = phi.is_bundle_valued();
    // a scalar form is a section of the trivial line bundle: one fiber slot,
    // unit frame
    let carrier_rank = if bundle { ctx.rank() } else { 1 };
    if phi.q() == 0 {
        let zero = PqForm::zero(ctx, phi.p(), 0);
        return TensorValuedForm {
            kind: CarrierKind::VecBundle,
            components: vec![zero; n * carrier_rank],
        };
    }
    // V[i] = g^{i j-bar} I_{j-bar} phi
    let raw: Vec<PqForm> = (0..n)
        .map(|i| phi.contract(&raised_anti_vector(phi, i)))
        .collect();
    let e_inv = ctx.frame_inv();
    let f_inv = ctx.bundle_frame_inv();
    let mut components = Vec::with_capacity(n * carrier_rank);
    for a in 0..n {
        for la in 0..carrier_rank {
            let mut acc = PqForm::zero(ctx, phi.p(), phi.q() - 1);
            for i in 0..n {
                let wa = e_inv[(a, i)];
                if wa == Complex64::ZERO {
                    continue;
                }
                for alpha in 0..r {
                    let wf = if bundle {
                        f_inv[(la, alpha)]
                    } else if la == 0 {
                        c(1.0)
                    } else {
                        Complex64::ZERO
                    };
                    if wf == Complex64::ZERO {
                        continue;
                    }
                    let slice = if bundle {
                        raw[i].fiber_slice(alpha)
                    } else {
                        raw[i].clone()
                    };
                    acc = acc.add(&slice.scale(wa * wf)).expect("shape");
                }
            }
            components.push(acc);
        }
    }
    TensorValuedForm {
        kind: CarrierKind::VecBundle,
        components,
    }
}

/// Y_phi(dz^i, dz-bar^j) = dz-bar^j ^ I_{(dz^i)#} phi
///                       - dz^i ^ I_{(dz-bar^j)#} phi, scalar phi only.
pub fn y_pair(phi: &PqForm, i: usize, j: usize) -> Result<PqForm> {
    if phi.is_bundle_valued() {
        return Err(Error::BundleValued(phi.fiber_rank()));
    }
    let ctx = phi.ctx();
    let (p, q) = (phi.p(), phi.q());
    let alpha_part = if q >= 1 {
        PqForm::basis(ctx, &[], &[j])
            .wedge(&phi.contract(&raised_anti_vector(phi, i)))
            .expect("degree")
    } else {
        PqForm::zero(ctx, p, q)
    };
    let beta_part = if p >= 1 {
        PqForm::basis(ctx, &[i], &[])
            .wedge(&phi.contract(&raised_holo_vector(phi, j)))
            .expect("degree")
    } else {
        PqForm::zero(ctx, p, q)
    };
    alpha_part.sub(&beta_part)
}

/// Components of Y_phi against the orthonormal basis of
/// T^{1,0} (x) T^{0,1} (index (a, b) flattened as a*n + b, matching
/// `KaehlerCurvature::reduced_operator`). Bidegree stays (p, q).
pub fn y_operator(phi: &PqForm) -> Result<TensorValuedForm> {
    if phi.is_bundle_valued() {
        return Err(Error::BundleValued(phi.fiber_rank()));
    }
    let ctx = phi.ctx();
    let n = ctx.n();
    let mut coord = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            coord.push(y_pair(phi, i, j)?);
        }
    }
    if ctx.is_standard() {
        return Ok(TensorValuedForm {
            kind: CarrierKind::Mixed,
            components: coord,
        });
    }
    let e_inv = ctx.frame_inv();
    let mut components = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let mut acc = PqForm::zero(ctx, phi.p(), phi.q());
            for i in 0..n {
                for j in 0..n {
                    let w = e_inv[(a, i)] * e_inv[(b, j)].conj();
                    if w != Complex64::ZERO {
                        acc = acc.add(&coord[i * n + j].scale(w)).expect("shape");
                    }
                }
            }
            components.push(acc);
        }
    }
    Ok(TensorValuedForm {
        kind: CarrierKind::Mixed,
        components,
    })
}

/// Pairing sum_{A,B} M_{AB} <X_B, Y_A> of two component families against an
/// operator matrix in the same orthonormal carrier basis.
fn operator_pairing(m: &CMatrix, x: &TensorValuedForm, y: &TensorValuedForm) -> Result<Complex64> {
    x.expect_dim(m.ncols());
    y.expect_dim(m.nrows());
    let mut acc = Complex64::ZERO;
    for a in 0..m.nrows() {
        for b in 0..m.ncols() {
            let w = m[(a, b)];
            if w != Complex64::ZERO {
                acc += w * x.component(b).inner(y.component(a))?;
            }
        }
    }
    Ok(acc)
}

/// The Hermitian form B^{p,q}(phi, psi) = <(R (x) Id) T_phi, T_psi>,
/// evaluated through the orthonormal Sym^2 components.
pub fn b_form(phi: &PqForm, psi: &PqForm, rc: &KaehlerCurvature) -> Result<Complex64> {
    let m = rc.sym_operator()?;
    b_form_with_operator(phi, psi, &m)
}

/// B^{p,q} against a precomputed symmetrized-operator matrix (for sweeps
/// that reuse one curvature across many forms).
pub fn b_form_with_operator(phi: &PqForm, psi: &PqForm, m: &CMatrix) -> Result<Complex64> {
    let t_phi = t_operator(phi);
    let t_psi = t_operator(psi);
    operator_pairing(m, &t_phi, &t_psi)
}

/// <(R^E (x) Id) S_phi, S_psi> against the Nakano operator.
pub fn bundle_pairing(phi: &PqForm, psi: &PqForm, re: &BundleCurvature) -> Result<Complex64> {
    let m = re.nakano_operator()?;
    let s_phi = s_operator(phi);
    let s_psi = s_operator(psi);
    operator_pairing(&m, &s_phi, &s_psi)
}

/// <(R_red (x) Id) Y_phi, Y_phi> against the reduced curvature operator.
pub fn y_curvature_pairing(phi: &PqForm, rc: &KaehlerCurvature) -> Result<Complex64> {
    let m = rc.reduced_operator()?;
    let y = y_operator(phi)?;
    operator_pairing(&m, &y, &y)
}

/// The zeroth-order curvature action <(Delta_{dbar_E} - Delta_{dbar_F}) phi,
/// phi>, computed directly from the final pairing form
/// h_{ab} R_{i k-bar m n-bar} <g^{i j-bar} I_{j-bar}(dz^m ^ phi^a),
/// g^{k l-bar} I_{l-bar}(dz^n ^ phi^b)> plus the bundle term
/// R^E_{i k-bar a b-bar} <g^{i j-bar} I_{j-bar} phi^a, ...>.
///
/// This is the raw coordinate route; `b_form` + `bundle_pairing` give the
/// independent orthonormal-frame route of the same quantity.
pub fn curvature_action(
    phi: &PqForm,
    rc: &KaehlerCurvature,
    re: Option<&BundleCurvature>,
) -> Result<Complex64> {
    rc.validate()?;
    let ctx = phi.ctx();
    let n = ctx.n();
    let blocks = contraction_blocks(phi);
    // pair matrix <U[i][m], U[k][n]> including the bundle metric
    let mut total = Complex64::ZERO;
    for i in 0..n {
        for k in 0..n {
            for m in 0..n {
                for nn in 0..n {
                    let w = rc.entry(i, k, m, nn);
                    if w != Complex64::ZERO {
                        total += w * blocks[i][m].inner(&blocks[k][nn])?;
                    }
                }
            }
        }
    }
    if let Some(re) = re {
        re.validate()?;
        let r = phi.fiber_rank();
        if phi.q() >= 1 {
            let raw: Vec<PqForm> = (0..n)
                .map(|i| phi.contract(&raised_anti_vector(phi, i)))
                .collect();
            let slices: Vec<Vec<PqForm>> = raw
                .iter()
                .map(|f| {
                    (0..r)
                        .map(|a| {
                            if f.is_bundle_valued() {
                                f.fiber_slice(a)
                            } else {
                                f.clone()
                            }
                        })
                        .collect()
                })
                .collect();
            for i in 0..n {
                for k in 0..n {
                    for a in 0..r {
                        for b in 0..r {
                            let w = re.entry(i, k, a, b);
                            if w != Complex64::ZERO {
                                total += w * slices[i][a].inner(&slices[k][b])?;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(total)
}

/// | |T_phi|^2 - 2(q+1)(n-p)|phi|^2 + 2<Lambda L phi, phi> |; zero for every
/// input.
pub fn norm_t_identity_defect(phi: &PqForm) -> f64 {
    let ctx = phi.ctx();
    let n = ctx.n();
    let (p, q) = (phi.p(), phi.q());
    let t_norm = t_operator(phi).norm_sq();
    let lam_l = if p < n && q < n {
        phi.lefschetz()
            .expect("degree checked")
            .lefschetz_dual()
            .inner(phi)
            .expect("shape")
            .re
    } else {
        0.0
    };
    let expected = 2.0 * (q as f64 + 1.0) * (n as f64 - p as f64) * phi.norm_sq() - 2.0 * lam_l;
    (t_norm - expected).abs()
}

/// | |S_phi|^2 - q |phi|^2 |; zero for every input.
pub fn norm_s_identity_defect(phi: &PqForm) -> f64 {
    let s_norm = s_operator(phi).norm_sq();
    (s_norm - phi.q() as f64 * phi.norm_sq()).abs()
}

/// Real T on Riemannian forms: T_omega(dx^i, dx^j) = dx^i ^ I_j omega
///                                                 - dx^j ^ I_i omega.
pub fn t_riem_pair(omega: &RealForm, i: usize, j: usize) -> RealForm {
    let d = omega.dim();
    let a = RealForm::basis(d, &[i])
        .wedge(&omega.contract_basis(j))
        .expect("degree");
    let b = RealForm::basis(d, &[j])
        .wedge(&omega.contract_basis(i))
        .expect("degree");
    a.sub(&b).expect("shape")
}

/// T_omega evaluated on an antisymmetric matrix v: sum over all (i, j) of
/// v_{ij} T_omega(dx^i, dx^j) = 2 sum_{ij} v_{ij} dx^i ^ I_j omega.
pub fn t_riem(omega: &RealForm, v: &RMatrix) -> Result<RealForm> {
    let d = omega.dim();
    if v.nrows() != d || v.ncols() != d {
        return Err(Error::OutOfRange("v must be d x d".into()));
    }
    let res = (0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .map(|(i, j)| (v[(i, j)] + v[(j, i)]).abs())
        .fold(0.0f64, f64::max);
    if res > 1e-9 * (1.0 + v.norm()) {
        return Err(Error::NotAntisymmetric(res));
    }
    let mut out = RealForm::zero(d, omega.degree());
    if omega.degree() == 0 {
        return Ok(out);
    }
    for i in 0..d {
        let contracted_rows: RealForm = {
            // sum_j v_ij I_j omega
            let x: Vec<f64> = (0..d).map(|j| v[(i, j)]).collect();
            omega.contract(&x)
        };
        let term = RealForm::basis(d, &[i])
            .wedge(&contracted_rows)
            .expect("degree");
        out = out.add(&term.scale(2.0))?;
    }
    Ok(out)
}

/// Components of T_omega against the orthonormal 2-vector basis
/// {e_i ^ e_j}_{i<j}, matching `RiemCurvature::operator`.
pub fn t_riem_operator(omega: &RealForm) -> Vec<RealForm> {
    let d = omega.dim();
    antisym_pairs(d)
        .iter()
        .map(|&(i, j)| t_riem_pair(omega, i, j))
        .collect()
}

/// <(F (x) Id) T_omega, T_omega> via components against the curvature
/// operator matrix.
pub fn riem_operator_pairing(omega: &RealForm, rr: &RiemCurvature) -> Result<f64> {
    let m = rr.operator()?;
    let comps = t_riem_operator(omega);
    let mut acc = 0.0;
    for a in 0..m.nrows() {
        for b in 0..m.ncols() {
            let w = m[(a, b)];
            if w != 0.0 {
                acc += w * comps[b].inner(&comps[a])?;
            }
        }
    }
    Ok(acc)
}

/// The zeroth-order Weitzenbock curvature term
/// -sum_{i,j} <dx^i ^ I_j omega, R(d_j, d_i) omega>, with the curvature
/// acting on forms as the derivation extension of
/// R(d_a, d_b) dx^l = sum_k R_{a b k l} dx^k.
///
/// Coordinate route; `riem_operator_pairing` is the independent
/// component route of the same quantity.
pub fn riem_curvature_pairing(omega: &RealForm, rr: &RiemCurvature) -> Result<f64> {
    rr.validate()?;
    let d = omega.dim();
    if rr.dim() != d {
        return Err(Error::OutOfRange("dimension mismatch".into()));
    }
    let mut acc = 0.0;
    for i in 0..d {
        for j in 0..d {
            let lhs = RealForm::basis(d, &[i])
                .wedge(&omega.contract_basis(j))
                .expect("degree");
            if lhs.is_zero(0.0) {
                continue;
            }
            // R(d_j, d_i) dx^l = sum_k R_{j i k l} dx^k
            let action = RMatrix::from_fn(d, d, |k, l| rr.entry(j, i, k, l));
            let rotated = omega.apply_derivation(&action);
            acc -= lhs.inner(&rotated)?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::AlgebraContext;
    use crate::form::kaehler_form;

    #[test]
    fn t_apply_frozen_example() {
        // phi = dzbar1, v = dz1 (x) dz1 in n = 2 gives -2 dz1
        let ctx = AlgebraContext::standard(2);
        let phi = PqForm::basis(&ctx, &[], &[0]);
        let mut v = CMatrix::zeros(2, 2);
        v[(0, 0)] = c(1.0);
        let t = t_apply(&phi, &v).unwrap();
        assert_eq!((t.p(), t.q()), (1, 0));
        assert_eq!(t.coeff(&[0], &[], 0), c(-2.0));
        assert_eq!(t.coeff(&[1], &[], 0), Complex64::ZERO);
    }

    #[test]
    fn t_apply_rejects_nonsymmetric_v() {
        let ctx = AlgebraContext::standard(2);
        let phi = PqForm::basis(&ctx, &[], &[0]);
        let mut v = CMatrix::zeros(2, 2);
        v[(0, 1)] = c(1.0);
        assert!(matches!(t_apply(&phi, &v), Err(Error::NotSymmetric(_))));
    }

    #[test]
    fn t_vanishes_at_degenerate_bidegrees() {
        let ctx = AlgebraContext::standard(2);
        let q0 = PqForm::random_scalar(&ctx, 1, 0, 3);
        assert_eq!(t_operator(&q0).norm_sq(), 0.0);
        let pn = PqForm::random_scalar(&ctx, 2, 1, 4);
        assert_eq!(t_operator(&pn).norm_sq(), 0.0);
    }

    #[test]
    fn t_norm_identity_frozen_n2() {
        // |T_phi|^2 = 6 for phi = dzbar1 in n = 2 (hand computation)
        let ctx = AlgebraContext::standard(2);
        let phi = PqForm::basis(&ctx, &[], &[0]);
        let t = t_operator(&phi);
        assert!((t.norm_sq() - 6.0).abs() < 1e-12);
        assert!(norm_t_identity_defect(&phi) < 1e-12);
    }

    #[test]
    fn t_norm_identity_random_inputs() {
        for n in 1..=3 {
            let ctx = AlgebraContext::standard(n);
            for p in 0..=n {
                for q in 0..=n {
                    let phi = PqForm::random_scalar(&ctx, p, q, (n * 25 + p * 5 + q) as u64);
                    let d = norm_t_identity_defect(&phi);
                    assert!(d < 1e-9 * (1.0 + phi.norm_sq()), "n={n} p={p} q={q}: {d}");
                }
            }
        }
        // random metric
        let ctx = AlgebraContext::random(3, 1, 8);
        let phi = PqForm::random_scalar(&ctx, 1, 2, 12);
        assert!(norm_t_identity_defect(&phi) < 1e-9 * (1.0 + phi.norm_sq()));
    }

    #[test]
    fn s_norm_identity() {
        let ctx = AlgebraContext::standard(2);
        let phi = PqForm::basis(&ctx, &[], &[0]);
        assert!((s_operator(&phi).norm_sq() - 1.0).abs() < 1e-13);
        // random metric, bundle-valued
        let ctx = AlgebraContext::random(3, 2, 19);
        let phi = PqForm::random(&ctx, 1, 2, 33);
        assert!(
            norm_s_identity_defect(&phi) < 1e-10 * (1.0 + phi.norm_sq()),
            "defect {}",
            norm_s_identity_defect(&phi)
        );
    }

    #[test]
    fn t_reconstruction_from_components() {
        // sum_A <v-tensor, basis_A> component_A = t_apply(phi, v)
        let ctx = AlgebraContext::standard(3);
        let phi = PqForm::random_scalar(&ctx, 1, 1, 5);
        let mut v = CMatrix::zeros(3, 3);
        let mut rng = crate::rng::rng_from_seed(77);
        for i in 0..3 {
            for j in i..3 {
                let z = crate::rng::complex(&mut rng);
                v[(i, j)] = z;
                v[(j, i)] = z;
            }
        }
        let direct = t_apply(&phi, &v).unwrap();
        // identity metric: <v, e_A> coefficients of v in the orthonormal basis
        let t = t_operator(&phi);
        let pairs = sym_pairs(3);
        let mut recon = t_target_zero(&phi);
        let sqrt2 = std::f64::consts::SQRT_2;
        for (idx, &(a, b)) in pairs.iter().enumerate() {
            let w = if a == b { v[(a, a)] } else { v[(a, b)] * c(sqrt2) };
            recon = recon.add(&t.component(idx).scale(w)).unwrap();
        }
        assert!(direct.sub(&recon).unwrap().is_zero(1e-10));
    }

    #[test]
    fn y_vanishes_on_functions_and_omega() {
        let ctx = AlgebraContext::standard(2);
        let one = PqForm::one(&ctx);
        assert_eq!(y_operator(&one).unwrap().norm_sq(), 0.0);
        let omega = kaehler_form(&ctx);
        assert!(y_operator(&omega).unwrap().norm_sq() < 1e-24);
        // and with a random metric
        let ctx = AlgebraContext::random(3, 1, 40);
        let omega = kaehler_form(&ctx);
        assert!(y_operator(&omega).unwrap().norm_sq() < 1e-18);
    }

    #[test]
    fn t_riem_frozen_cases() {
        // omega = dx1, v = e1 ^ e2: T_omega(v) = -2 dx2 in the full-sum
        // convention (T_1(v) has eigenvalues 2 lambda_i)
        let d = 3;
        let omega = RealForm::basis(d, &[0]);
        let mut v = RMatrix::zeros(d, d);
        v[(0, 1)] = 1.0;
        v[(1, 0)] = -1.0;
        let t = t_riem(&omega, &v).unwrap();
        assert_eq!(t.coeff(&[1]), -2.0);
        assert_eq!(t.coeff(&[0]), 0.0);
        // volume form is annihilated
        let vol = RealForm::volume(d);
        let t = t_riem(&vol, &v).unwrap();
        assert!(t.is_zero(1e-14));
        // antisymmetry in the two slots
        let a = t_riem_pair(&RealForm::random(d, 2, 9), 0, 2);
        let b = t_riem_pair(&RealForm::random(d, 2, 9), 2, 0);
        assert!(a.add(&b).unwrap().is_zero(1e-14));
    }

    #[test]
    fn riemannian_identity_on_sphere() {
        // curvature term equals |T_omega|^2 on the round sphere
        for d in 2..=4 {
            let rr = RiemCurvature::sphere(d);
            let omega = RealForm::basis(d, &[0]);
            let lhs = riem_curvature_pairing(&omega, &rr).unwrap();
            let rhs = riem_operator_pairing(&omega, &rr).unwrap();
            let hs: f64 = t_riem_operator(&omega).iter().map(|f| f.norm_sq()).sum();
            assert!((lhs - rhs).abs() < 1e-12, "d = {d}");
            assert!((rhs - hs).abs() < 1e-12, "d = {d}");
            assert!((lhs - (d as f64 - 1.0)).abs() < 1e-12, "d = {d}");
        }
    }

    #[test]
    fn riemannian_identity_random() {
        for d in 2..=4 {
            for p in 0..=d {
                let rr = RiemCurvature::random(d, (d * 7 + p) as u64);
                let omega = RealForm::random(d, p, (p * 11 + d) as u64);
                let lhs = riem_curvature_pairing(&omega, &rr).unwrap();
                let rhs = riem_operator_pairing(&omega, &rr).unwrap();
                let scale = 1.0 + lhs.abs().max(rhs.abs());
                assert!((lhs - rhs).abs() < 1e-9 * scale, "d={d} p={p}");
            }
        }
    }

    #[test]
    fn central_identity_smoke() {
        // curvature_action = 1/4 B + S-term on a small random sample
        let ctx = AlgebraContext::with_bundle(2, 2);
        let phi = PqForm::random(&ctx, 1, 1, 21);
        let rc = KaehlerCurvature::random(&ctx, 22, &[1, -1]);
        let re = BundleCurvature::random(&ctx, 23, &[1, -1], 0.0);
        let lhs = curvature_action(&phi, &rc, Some(&re)).unwrap();
        let rhs = b_form(&phi, &phi, &rc).unwrap().scale(0.25)
            + bundle_pairing(&phi, &phi, &re).unwrap();
        assert!(
            (lhs - rhs).norm() < 1e-10 * (1.0 + lhs.norm()),
            "lhs {lhs}, rhs {rhs}"
        );
        assert!(lhs.im.abs() < 1e-10 * (1.0 + lhs.norm()));
    }

    #[test]
    fn central_identity_q0_both_sides_vanish() {
        let ctx = AlgebraContext::with_bundle(2, 2);
        let phi = PqForm::random(&ctx, 1, 0, 31);
        let rc = KaehlerCurvature::random(&ctx, 32, &[1, 1]);
        let re = BundleCurvature::random(&ctx, 33, &[1], 0.3);
        let lhs = curvature_action(&phi, &rc, Some(&re)).unwrap();
        assert!(lhs.norm() < 1e-12);
    }

    #[test]
    fn b_form_hermitian_and_fs_scaling() {
        let ctx = AlgebraContext::standard(2);
        let phi = PqForm::random_scalar(&ctx, 1, 1, 41);
        let rc = KaehlerCurvature::fubini_study(2);
        // R = 2 Id gives B(phi, phi) = 2 |T_phi|^2
        let b = b_form(&phi, &phi, &rc).unwrap();
        let t2 = t_operator(&phi).norm_sq();
        assert!((b.re - 2.0 * t2).abs() < 1e-10 * (1.0 + b.norm()));
        assert!(b.im.abs() < 1e-10);
        // Hermitian in the two arguments
        let psi = PqForm::random_scalar(&ctx, 1, 1, 42);
        let rc2 = KaehlerCurvature::random(&ctx, 43, &[1, -1]);
        let ab = b_form(&phi, &psi, &rc2).unwrap();
        let ba = b_form(&psi, &phi, &rc2).unwrap();
        assert!((ab - ba.conj()).norm() < 1e-10 * (1.0 + ab.norm()));
    }

    #[test]
    fn b_form_lefschetz_adjunction() {
        // B^{p,q}(L psi, phi) = B^{p-1,q-1}(psi, Lambda phi)
        let ctx = AlgebraContext::standard(3);
        let rc = KaehlerCurvature::random(&ctx, 51, &[1, -1, 1]);
        let psi = PqForm::random_scalar(&ctx, 1, 1, 52);
        let phi = PqForm::random_scalar(&ctx, 2, 2, 53);
        let lhs = b_form(&psi.lefschetz().unwrap(), &phi, &rc).unwrap();
        let rhs = b_form(&psi, &phi.lefschetz_dual(), &rc).unwrap();
        assert!((lhs - rhs).norm() < 1e-9 * (1.0 + lhs.norm()));
    }

    #[test]
    fn l_commutes_with_t_apply() {
        // L(T_eta(v)) = T_{L eta}(v) and the Lambda version
        let ctx = AlgebraContext::standard(3);
        let eta = PqForm::random_scalar(&ctx, 1, 2, 61);
        let mut v = CMatrix::zeros(3, 3);
        let mut rng = crate::rng::rng_from_seed(62);
        for i in 0..3 {
            for j in i..3 {
                let z = crate::rng::complex(&mut rng);
                v[(i, j)] = z;
                v[(j, i)] = z;
            }
        }
        let lhs = t_apply(&eta, &v).unwrap().lefschetz().unwrap();
        let rhs = t_apply(&eta.lefschetz().unwrap(), &v).unwrap();
        assert!(lhs.sub(&rhs).unwrap().is_zero(1e-10));
        let lhs = t_apply(&eta, &v).unwrap().lefschetz_dual();
        let rhs = t_apply(&eta.lefschetz_dual(), &v).unwrap();
        assert!(lhs.sub(&rhs).unwrap().is_zero(1e-10));
    }

    #[test]
    fn y_pairing_real_on_diagonal() {
        let ctx = AlgebraContext::standard(2);
        let phi = PqForm::random_scalar(&ctx, 1, 1, 71);
        let rc = KaehlerCurvature::random(&ctx, 72, &[1, -1]);
        let v = y_curvature_pairing(&phi, &rc).unwrap();
        assert!(v.im.abs() < 1e-10 * (1.0 + v.norm()));
        let zero = y_curvature_pairing(&phi, &KaehlerCurvature::zero(&ctx)).unwrap();
        assert_eq!(zero, Complex64::ZERO);
    }
}
