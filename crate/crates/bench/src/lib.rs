//! Shared fixtures for the criterion benchmarks.

use std::sync::Arc;

use wlab_core::context::AlgebraContext;
use wlab_core::curvature::{BundleCurvature, KaehlerCurvature};
use wlab_core::form::PqForm;

pub struct KaehlerFixture {
    pub ctx: Arc<AlgebraContext>,
    pub phi: PqForm,
    pub rc: KaehlerCurvature,
    pub re: BundleCurvature,
}

/// A representative mid-size workload: n = 4, rank 2, bidegree (2, 2).
pub fn kaehler_fixture(standard_metric: bool) -> KaehlerFixture {
    let ctx = if standard_metric {
        AlgebraContext::with_bundle(4, 2)
    } else {
        AlgebraContext::random(4, 2, 1)
    };
    let phi = PqForm::random(&ctx, 2, 2, 2);
    let rc = KaehlerCurvature::random(&ctx, 3, &[1, -1]);
    let re = BundleCurvature::random(&ctx, 4, &[1, -1], 0.1);
    KaehlerFixture { ctx, phi, rc, re }
}
