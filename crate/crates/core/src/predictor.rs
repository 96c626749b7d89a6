//! Decision procedures for positivity of B^{p,q} and cohomology vanishing
//! from m-positivity of curvature operators, plus Hodge-diamond reports.
//!
//! All clause bounds are ratios of small integers; comparisons are done in
//! exact integer arithmetic (cross-multiplication), never in floating point.

use serde::Serialize;

use crate::curvature::Spectrum;
use crate::error::{Error, Result};

/// m <= num/den with den > 0, exactly.
fn le_frac(m: usize, num: i64, den: i64) -> bool {
    debug_assert!(den > 0);
    (m as i64) * den <= num
}

/// Positivity class of the Hermitian form B^{p,q} under an m-positive
/// symmetrized curvature operator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum PositivityClass {
    Positive,
    /// Semi-positive; B(phi, phi) = 0 exactly on phi = L^q psi.
    Semipositive { equality_condition: String },
    NoClaim,
}

fn check_pq(n: usize, p: usize, q: usize) -> Result<()> {
    if p > n || q > n {
        return Err(Error::OutOfRange(format!(
            "bidegree ({p},{q}) out of range for n = {n}"
        )));
    }
    Ok(())
}

/// The five clauses for B^{p,q} under m-positive R:
/// positive when (q >= p+2, m <= (n-p+1)(p+q)/(2(p+1))), or
/// (q = p+1, p <= n/2, m <= (n+1)/2), or
/// (q = p+1, n/2 < p < n, m <= (n-p+1)(2p+1)/(2(p+1)));
/// semipositive when (0 < q <= p <= n/2, m <= (n-p+q)/2) or
/// (0 < q <= p, n/2 < p < n, m <= (n-p+1)(p+q)/(2(p+1))).
pub fn b_positivity_class(n: usize, p: usize, q: usize, m: usize) -> Result<PositivityClass> {
    check_pq(n, p, q)?;
    if q < 1 || m < 1 {
        return Err(Error::OutOfRange("need q >= 1 and m >= 1".into()));
    }
    let (ni, pi, qi) = (n as i64, p as i64, q as i64);
    let general = ((ni - pi + 1) * (pi + qi), 2 * (pi + 1));
    if q >= p + 2 && le_frac(m, general.0, general.1) {
        return Ok(PositivityClass::Positive);
    }
    if q == p + 1 && 2 * p <= n && le_frac(m, ni + 1, 2) {
        return Ok(PositivityClass::Positive);
    }
    if q == p + 1 && 2 * p > n && p < n && le_frac(m, (ni - pi + 1) * (2 * pi + 1), 2 * (pi + 1)) {
        return Ok(PositivityClass::Positive);
    }
    let equality = PositivityClass::Semipositive {
        equality_condition: format!("phi = L^{q} psi"),
    };
    if q <= p && 2 * p <= n && le_frac(m, ni - pi + qi, 2) {
        return Ok(equality);
    }
    if q <= p && 2 * p > n && p < n && le_frac(m, general.0, general.1) {
        return Ok(equality);
    }
    Ok(PositivityClass::NoClaim)
}

/// Outcome of a vanishing query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Vanishes,
    /// H^{p,p} = C (one-dimensional)
    EqualsC,
    NoClaim,
}

/// Vanishing verdict with the clause that fired.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VanishingVerdict {
    pub verdict: Verdict,
    /// Which theorem clause decided the query.
    pub rule: String,
    pub used_serre_duality: bool,
}

impl VanishingVerdict {
    fn new(verdict: Verdict, rule: &str, dual: bool) -> Self {
        VanishingVerdict {
            verdict,
            rule: rule.into(),
            used_serre_duality: dual,
        }
    }
}

/// Does one normalized bidegree (q >= p) satisfy a scalar vanishing clause?
fn scalar_clause(n: usize, p: usize, q: usize, m: usize) -> Option<&'static str> {
    let (ni, pi, qi) = (n as i64, p as i64, q as i64);
    if q >= p + 2 && le_frac(m, (ni - pi + 1) * (pi + qi), 2 * (pi + 1)) {
        return Some("q >= p+2");
    }
    if q == p + 1 && le_frac(m, ni + 1, 2) {
        return Some("q = p+1");
    }
    None
}

/// Scalar Dolbeault vanishing under an m-positive symmetrized curvature
/// operator: H^{p,q} = 0 when a clause fires at (p, q) or at a bidegree
/// reachable by Serre duality / conjugation; H^{p,p} = C when m <= n/2.
pub fn vanishing_hodge(n: usize, p: usize, q: usize, m: usize) -> Result<VanishingVerdict> {
    check_pq(n, p, q)?;
    if m < 1 {
        return Err(Error::OutOfRange("need m >= 1".into()));
    }
    if p == q {
        // the corners are one-dimensional on any compact connected Kaehler
        // manifold (constants and the volume class)
        if p == 0 || p == n {
            return Ok(VanishingVerdict::new(Verdict::EqualsC, "trivial corner", false));
        }
        if le_frac(m, n as i64, 2) {
            return Ok(VanishingVerdict::new(Verdict::EqualsC, "p = q, m <= n/2", false));
        }
        return Ok(VanishingVerdict::new(Verdict::NoClaim, "p = q, m > n/2", false));
    }
    // orbit under Serre duality (p,q) -> (n-q, n-p), (n-p, n-q) and Hodge
    // conjugation (p,q) -> (q,p), normalized to q >= p
    let mut orbit: Vec<(usize, usize, bool)> = Vec::new();
    for (a, b, dual) in [
        (p, q, false),
        (q, p, true),
        (n - p, n - q, true),
        (n - q, n - p, true),
    ] {
        let (a, b, dual) = if a <= b { (a, b, dual) } else { (b, a, true) };
        if !orbit.iter().any(|&(x, y, _)| (x, y) == (a, b)) {
            orbit.push((a, b, dual));
        }
    }
    for (a, b, dual) in orbit {
        if let Some(rule) = scalar_clause(n, a, b, m) {
            let rule = if dual {
                format!("{rule} at dual ({a},{b})")
            } else {
                rule.to_string()
            };
            return Ok(VanishingVerdict {
                verdict: Verdict::Vanishes,
                rule,
                used_serre_duality: dual,
            });
        }
    }
    Ok(VanishingVerdict::new(Verdict::NoClaim, "no clause", false))
}

/// Nakano-type vanishing for E-valued (p, q)-forms, q >= 1: requires a
/// Nakano-positive bundle, and vanishes when p = n (no base condition), or
/// q <= p+1, p <= n/2, m <= (n-p+q)/2, or otherwise
/// m <= (n-p+1)(p+q)/(2(p+1)).
pub fn vanishing_bundle(
    n: usize,
    p: usize,
    q: usize,
    m: usize,
    nakano_positive: bool,
) -> Result<VanishingVerdict> {
    check_pq(n, p, q)?;
    if q < 1 || m < 1 {
        return Err(Error::OutOfRange("need q >= 1 and m >= 1".into()));
    }
    if !nakano_positive {
        return Ok(VanishingVerdict::new(
            Verdict::NoClaim,
            "bundle not Nakano positive",
            false,
        ));
    }
    let (ni, pi, qi) = (n as i64, p as i64, q as i64);
    if p == n {
        return Ok(VanishingVerdict::new(Verdict::Vanishes, "p = n", false));
    }
    if q <= p + 1 && 2 * p <= n {
        if le_frac(m, ni - pi + qi, 2) {
            return Ok(VanishingVerdict::new(
                Verdict::Vanishes,
                "q <= p+1, p <= n/2",
                false,
            ));
        }
        return Ok(VanishingVerdict::new(Verdict::NoClaim, "no clause", false));
    }
    if le_frac(m, (ni - pi + 1) * (pi + qi), 2 * (pi + 1)) {
        return Ok(VanishingVerdict::new(Verdict::Vanishes, "general bound", false));
    }
    Ok(VanishingVerdict::new(Verdict::NoClaim, "no clause", false))
}

/// Vanishing under an m-positive reduced curvature operator: H^{p,q} = 0 for
/// p != q when m <= n + 1 - (p^2 + q^2)/(p + q); H^{p,p} = C when
/// m <= n + 1 - p.
pub fn reduced_vanishing(n: usize, p: usize, q: usize, m: usize) -> Result<VanishingVerdict> {
    check_pq(n, p, q)?;
    if m < 1 {
        return Err(Error::OutOfRange("need m >= 1".into()));
    }
    let (ni, pi, qi) = (n as i64, p as i64, q as i64);
    if p == q {
        if (m as i64) <= ni + 1 - pi {
            return Ok(VanishingVerdict::new(
                Verdict::EqualsC,
                "p = q, m <= n+1-p",
                false,
            ));
        }
        return Ok(VanishingVerdict::new(Verdict::NoClaim, "no clause", false));
    }
    if p + q == 0 {
        return Ok(VanishingVerdict::new(Verdict::NoClaim, "no clause", false));
    }
    // m <= n + 1 - (p^2 + q^2)/(p + q), exactly
    if (m as i64) * (pi + qi) <= (ni + 1) * (pi + qi) - (pi * pi + qi * qi) {
        return Ok(VanishingVerdict::new(
            Verdict::Vanishes,
            "p != q reduced bound",
            false,
        ));
    }
    Ok(VanishingVerdict::new(Verdict::NoClaim, "no clause", false))
}

/// The positivity level fed into a diamond report: a literal m, or one
/// computed from a spectrum.
#[derive(Debug, Clone)]
pub enum PositivityInput {
    Level(usize),
    FromSpectrum(Spectrum),
    /// The spectrum had no positive prefix sum.
    None,
}

impl PositivityInput {
    pub fn level(&self) -> Option<usize> {
        match self {
            PositivityInput::Level(m) => Some(*m),
            PositivityInput::FromSpectrum(s) => s.m_positivity_level(),
            PositivityInput::None => None,
        }
    }
}

/// The (n+1) x (n+1) table of vanishing verdicts.
#[derive(Debug, Clone, Serialize)]
pub struct HodgeDiamondReport {
    pub n: usize,
    /// The m-positivity level used, when one exists.
    pub m: Option<usize>,
    /// `cells[p][q]`
    pub cells: Vec<Vec<VanishingVerdict>>,
}

impl HodgeDiamondReport {
    /// True when the table matches the projective-space diamond: EqualsC on
    /// the diagonal, Vanishes off it.
    pub fn is_projective_space_diamond(&self) -> bool {
        self.cells.iter().enumerate().all(|(p, row)| {
            row.iter().enumerate().all(|(q, cell)| {
                if p == q {
                    cell.verdict == Verdict::EqualsC
                } else {
                    cell.verdict == Verdict::Vanishes
                }
            })
        })
    }
}

/// Assemble the full diamond for an m-positivity level or spectrum.
pub fn hodge_diamond_report(n: usize, input: &PositivityInput) -> Result<HodgeDiamondReport> {
    let m = input.level();
    let mut cells = Vec::with_capacity(n + 1);
    for p in 0..=n {
        let mut row = Vec::with_capacity(n + 1);
        for q in 0..=n {
            let verdict = match m {
                Some(m) => vanishing_hodge(n, p, q, m)?,
                None => VanishingVerdict::new(Verdict::NoClaim, "no positivity", false),
            };
            row.push(verdict);
        }
        cells.push(row);
    }
    Ok(HodgeDiamondReport { n, m, cells })
}
