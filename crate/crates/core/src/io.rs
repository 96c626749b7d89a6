//! JSON documents for curvature tensors: the golden-file and CLI input
//! format. Indices are 1-based in the documents; tensors deserialize over
//! the standard (identity) metrics.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::context::AlgebraContext;
use crate::curvature::{BundleCurvature, KaehlerCurvature, RiemCurvature};
use crate::error::{Error, Result};

/// {kind, n|d, r, entries: [[i, j, k, l, re, im], ...]}
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CurvatureDocument {
    Kaehler {
        n: usize,
        entries: Vec<[f64; 6]>,
    },
    Bundle {
        n: usize,
        r: usize,
        entries: Vec<[f64; 6]>,
    },
    Riemannian {
        d: usize,
        entries: Vec<[f64; 6]>,
    },
}

fn index(raw: f64, max: usize, what: &str) -> Result<usize> {
    let v = raw as i64;
    if v as f64 != raw || v < 1 || v as usize > max {
        return Err(Error::InvalidDocument(format!(
            "{what} index {raw} out of range 1..={max}"
        )));
    }
    Ok(v as usize - 1)
}

impl CurvatureDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidDocument(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn kaehler(t: &KaehlerCurvature) -> Self {
        let n = t.ctx().n();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let v = t.entry(i, j, k, l);
                        if v != Complex64::ZERO {
                            entries.push([
                                (i + 1) as f64,
                                (j + 1) as f64,
                                (k + 1) as f64,
                                (l + 1) as f64,
                                v.re,
                                v.im,
                            ]);
                        }
                    }
                }
            }
        }
        CurvatureDocument::Kaehler { n, entries }
    }

    pub fn bundle(t: &BundleCurvature) -> Self {
        let (n, r) = (t.ctx().n(), t.ctx().rank());
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for a in 0..r {
                    for b in 0..r {
                        let v = t.entry(i, j, a, b);
                        if v != Complex64::ZERO {
                            entries.push([
                                (i + 1) as f64,
                                (j + 1) as f64,
                                (a + 1) as f64,
                                (b + 1) as f64,
                                v.re,
                                v.im,
                            ]);
                        }
                    }
                }
            }
        }
        CurvatureDocument::Bundle { n, r, entries }
    }

    pub fn riemannian(t: &RiemCurvature) -> Self {
        let d = t.dim();
        let mut entries = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let v = t.entry(i, j, k, l);
                        if v != 0.0 {
                            entries.push([
                                (i + 1) as f64,
                                (j + 1) as f64,
                                (k + 1) as f64,
                                (l + 1) as f64,
                                v,
                                0.0,
                            ]);
                        }
                    }
                }
            }
        }
        CurvatureDocument::Riemannian { d, entries }
    }

    /// Materialize the tensor; symmetry invariants are validated and
    /// violations reported with the offending 1-based index quadruple.
    pub fn into_kaehler(&self) -> Result<KaehlerCurvature> {
        let CurvatureDocument::Kaehler { n, entries } = self else {
            return Err(Error::InvalidDocument("expected kind = kaehler".into()));
        };
        let ctx = AlgebraContext::standard(*n);
        let mut t = KaehlerCurvature::zero(&ctx);
        for e in entries {
            let (i, j, k, l) = (
                index(e[0], *n, "i")?,
                index(e[1], *n, "j")?,
                index(e[2], *n, "k")?,
                index(e[3], *n, "l")?,
            );
            *t.entry_mut(i, j, k, l) = Complex64::new(e[4], e[5]);
        }
        t.validate()?;
        Ok(t)
    }

    pub fn into_bundle(&self) -> Result<BundleCurvature> {
        let CurvatureDocument::Bundle { n, r, entries } = self else {
            return Err(Error::InvalidDocument("expected kind = bundle".into()));
        };
        let ctx = AlgebraContext::with_bundle(*n, *r);
        let mut t = BundleCurvature::zero(&ctx);
        for e in entries {
            let (i, j, a, b) = (
                index(e[0], *n, "i")?,
                index(e[1], *n, "j")?,
                index(e[2], *r, "alpha")?,
                index(e[3], *r, "beta")?,
            );
            *t.entry_mut(i, j, a, b) = Complex64::new(e[4], e[5]);
        }
        t.validate()?;
        Ok(t)
    }

    pub fn into_riemannian(&self) -> Result<RiemCurvature> {
        let CurvatureDocument::Riemannian { d, entries } = self else {
            return Err(Error::InvalidDocument("expected kind = riemannian".into()));
        };
        let mut t = RiemCurvature::zero(*d);
        for e in entries {
            let (i, j, k, l) = (
                index(e[0], *d, "i")?,
                index(e[1], *d, "j")?,
                index(e[2], *d, "k")?,
                index(e[3], *d, "l")?,
            );
            if e[5] != 0.0 {
                return Err(Error::InvalidDocument(
                    "riemannian entries must be real (im = 0)".into(),
                ));
            }
            *t.entry_mut(i, j, k, l) = e[4];
        }
        t.validate()?;
        Ok(t)
    }
}
