//! Module-level invariants at the sample counts they are stated with:
//! exhaustive basis checks for n <= 3, thousand-sample adjointness and
//! positivity sweeps, and frame independence of curvature spectra.

mod support;

use num_complex::Complex64;
use wlab_core::context::AlgebraContext;
use wlab_core::curvature::KaehlerCurvature;
use wlab_core::form::{PqForm, TangentVector};
use wlab_core::index::combinations;
use wlab_core::linalg::{hermitian_eigenvalues, CMatrix};

fn all_basis_forms(ctx: &std::sync::Arc<AlgebraContext>) -> Vec<PqForm> {
    let n = ctx.n();
    let mut out = Vec::new();
    for p in 0..=n {
        for q in 0..=n {
            for i_set in combinations(n, p) {
                for j_set in combinations(n, q) {
                    out.push(PqForm::basis(ctx, &i_set, &j_set));
                }
            }
        }
    }
    out
}

#[test]
fn exhaustive_graded_commutativity_small_n() {
    for n in 1..=3usize {
        let ctx = AlgebraContext::standard(n);
        let basis = all_basis_forms(&ctx);
        for a in &basis {
            for b in &basis {
                if a.p() + b.p() > n || a.q() + b.q() > n {
                    continue;
                }
                let ab = a.wedge(b).unwrap();
                let ba = b.wedge(a).unwrap();
                let sign = if ((a.p() + a.q()) * (b.p() + b.q())) % 2 == 0 {
                    1.0
                } else {
                    -1.0
                };
                let diff = ab.sub(&ba.scale(Complex64::new(sign, 0.0))).unwrap();
                assert!(diff.is_zero(0.0), "n={n}");
            }
        }
    }
}

#[test]
fn exhaustive_anti_derivation_small_n() {
    // I_X(a ^ b) = (I_X a) ^ b + (-1)^{deg a} a ^ (I_X b) on all basis pairs
    for n in 1..=3usize {
        let ctx = AlgebraContext::standard(n);
        let basis = all_basis_forms(&ctx);
        for a in &basis {
            for b in &basis {
                if a.p() + b.p() > n || a.q() + b.q() > n {
                    continue;
                }
                let deg_sign = if (a.p() + a.q()) % 2 == 0 { 1.0 } else { -1.0 };
                for i in 0..n {
                    for x in [
                        TangentVector::holomorphic_basis(n, i),
                        TangentVector::anti_holomorphic_basis(n, i),
                    ] {
                        let lhs = a.wedge(b).unwrap().contract(&x);
                        let target = (lhs.p(), lhs.q());
                        // contracting an absent degree yields a zero form at
                        // the unshifted bidegree; such terms vanish
                        let mut rhs = lhs.scale(Complex64::ZERO);
                        for (term, sign) in [
                            (a.contract(&x).wedge(b), 1.0),
                            (a.wedge(&b.contract(&x)), deg_sign),
                        ] {
                            match term {
                                Ok(t) if (t.p(), t.q()) == target => {
                                    rhs = rhs.add(&t.scale(Complex64::new(sign, 0.0))).unwrap();
                                }
                                Ok(t) => assert!(t.is_zero(0.0), "n={n} i={i}"),
                                Err(_) => {}
                            }
                        }
                        assert!(lhs.sub(&rhs).unwrap().is_zero(1e-14), "n={n} i={i}");
                    }
                }
            }
        }
    }
}

#[test]
fn exhaustive_orthonormal_basis_small_n() {
    for n in 1..=3usize {
        let ctx = AlgebraContext::standard(n);
        let basis = all_basis_forms(&ctx);
        for (ia, a) in basis.iter().enumerate() {
            for (ib, b) in basis.iter().enumerate() {
                if (a.p(), a.q()) != (b.p(), b.q()) {
                    continue;
                }
                let ip = a.inner(b).unwrap();
                let expected = if ia == ib { 1.0 } else { 0.0 };
                assert!(
                    (ip - Complex64::new(expected, 0.0)).norm() < 1e-15,
                    "n={n}"
                );
            }
        }
    }
}

#[test]
fn adjointness_thousand_pairs() {
    let ctx = AlgebraContext::random(3, 1, 1234);
    let mut worst = 0.0f64;
    for s in 0..1000u64 {
        let (p, q) = [(1, 1), (2, 1), (1, 2), (2, 2), (3, 2)][(s % 5) as usize];
        let a = PqForm::random_scalar(&ctx, p, q, 10_000 + s);
        let b = PqForm::random_scalar(&ctx, p - 1, q - 1, 20_000 + s);
        let lhs = a.lefschetz_dual().inner(&b).unwrap();
        let rhs = a.inner(&b.lefschetz().unwrap()).unwrap();
        worst = worst.max((lhs - rhs).norm() / lhs.norm().max(rhs.norm()).max(1.0));
    }
    assert!(worst < 1e-10, "worst relative residual {worst}");
}

#[test]
fn positive_definiteness_thousand_forms() {
    let ctx = AlgebraContext::random(3, 2, 4321);
    for s in 0..1000u64 {
        let p = (s % 4) as usize;
        let q = ((s / 4) % 4) as usize;
        let phi = PqForm::random(&ctx, p.min(3), q.min(3), 30_000 + s);
        assert!(phi.norm_sq() > 0.0);
    }
}

#[test]
fn commutator_identity_all_bidegrees_to_n4() {
    for n in 1..=4usize {
        let ctx = AlgebraContext::standard(n);
        for p in 0..=n {
            for q in 0..=n {
                for s in 0..10u64 {
                    let a = PqForm::random_scalar(&ctx, p, q, (n * 100 + p * 10 + q) as u64 + s);
                    let defect = a.commutator_defect();
                    assert!(
                        defect.norm_sq().sqrt() < 1e-10 * a.norm_sq().sqrt().max(1.0),
                        "n={n} p={p} q={q}"
                    );
                }
            }
        }
    }
}

#[test]
fn sym_operator_spectrum_is_frame_independent() {
    // a unitary change of the T^{1,0} frame applied to both g and R leaves
    // the eigenvalues of the symmetrized operator unchanged
    let n = 3;
    let ctx = AlgebraContext::standard(n);
    let rc = KaehlerCurvature::random(&ctx, 77, &[1, -1, 1]);
    let base = hermitian_eigenvalues(&rc.sym_operator().unwrap());
    let mut rng = wlab_core::rng::rng_from_seed(78);
    let a = CMatrix::from_fn(n, n, |_, _| wlab_core::rng::complex(&mut rng));
    let u = a.qr().q();
    // g' = U^T g conj(U); R'_{a b-bar c d-bar} = U_{ia} conj(U_{jb}) U_{kc}
    // conj(U_{ld}) R_{i j-bar k l-bar}
    let g_new = u.transpose() * ctx.g() * u.map(|z| z.conj());
    let h_new = CMatrix::identity(1, 1);
    let ctx_new = AlgebraContext::new(g_new, h_new).unwrap();
    let mut rc_new = KaehlerCurvature::zero(&ctx_new);
    for a_ in 0..n {
        for b_ in 0..n {
            for c_ in 0..n {
                for d_ in 0..n {
                    let mut acc = Complex64::ZERO;
                    for i in 0..n {
                        for j in 0..n {
                            for k in 0..n {
                                for l in 0..n {
                                    acc += u[(i, a_)]
                                        * u[(j, b_)].conj()
                                        * u[(k, c_)]
                                        * u[(l, d_)].conj()
                                        * rc.entry(i, j, k, l);
                                }
                            }
                        }
                    }
                    *rc_new.entry_mut(a_, b_, c_, d_) = acc;
                }
            }
        }
    }
    let transformed = hermitian_eigenvalues(&rc_new.sym_operator().unwrap());
    for (x, y) in base.iter().zip(transformed.iter()) {
        assert!((x - y).abs() < 1e-9 * (1.0 + x.abs()), "{base:?} vs {transformed:?}");
    }
}

#[test]
fn partial_trace_thousand_frames() {
    use wlab_core::curvature::partial_trace_check;
    let n = 4;
    let mut rng = wlab_core::rng::rng_from_seed(999);
    for _ in 0..1000 {
        let a = {
            let m = CMatrix::from_fn(n, n, |_, _| wlab_core::rng::complex(&mut rng));
            &m + m.adjoint()
        };
        let q = CMatrix::from_fn(n, n, |_, _| wlab_core::rng::complex(&mut rng))
            .qr()
            .q();
        for k in 1..=n {
            let frame = q.columns(0, k).clone_owned();
            assert!(partial_trace_check(&a, &frame, k).unwrap());
        }
    }
}

#[test]
fn zero_curvature_gives_zero_actions() {
    use wlab_core::contraction::{curvature_action, riem_curvature_pairing};
    use wlab_core::curvature::{BundleCurvature, RiemCurvature};
    let ctx = AlgebraContext::with_bundle(3, 2);
    let phi = PqForm::random(&ctx, 1, 2, 5);
    let rc = KaehlerCurvature::zero(&ctx);
    let re = BundleCurvature::zero(&ctx);
    assert_eq!(
        curvature_action(&phi, &rc, Some(&re)).unwrap(),
        Complex64::ZERO
    );
    let omega = wlab_core::riemannian::RealForm::random(4, 2, 6);
    assert_eq!(
        riem_curvature_pairing(&omega, &RiemCurvature::zero(4)).unwrap(),
        0.0
    );
}
