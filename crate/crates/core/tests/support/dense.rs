//! Dense full-tensor oracle: forms as fully skew-symmetric coefficient
//! tensors over all index tuples, with wedge by explicit antisymmetrization,
//! slot-wise contraction, and the 1/(p! q!)-normalized metric contraction.
//! Everything here is deliberately brute force and shares no code with the
//! increasing-index implementation it checks.

use num_complex::Complex64;
use wlab_core::context::AlgebraContext;
use wlab_core::form::PqForm;
use wlab_core::index::combinations;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// All permutations of 0..k with their signs.
pub fn permutations(k: usize) -> Vec<(Vec<usize>, i32)> {
    if k == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (perm, sign) in permutations(k - 1) {
        // insert k-1 at every position; each step from the end flips the sign
        for pos in 0..=perm.len() {
            let mut next = perm.clone();
            next.insert(pos, k - 1);
            let flips = perm.len() - pos;
            let s = if flips % 2 == 0 { sign } else { -sign };
            out.push((next, s));
        }
    }
    out
}

/// All tuples in {0..n}^k.
fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::with_capacity(out.len() * n);
        for t in &out {
            for i in 0..n {
                let mut u = t.clone();
                u.push(i);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

/// A (p, q)-form as a dense tensor over all (i_1..i_p, j_1..j_q, alpha).
#[derive(Debug, Clone)]
pub struct DenseForm {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub data: Vec<Complex64>,
}

impl DenseForm {
    pub fn zeros(n: usize, p: usize, q: usize, r: usize) -> Self {
        DenseForm {
            n,
            p,
            q,
            r,
            data: vec![Complex64::ZERO; n.pow((p + q) as u32) * r],
        }
    }

    pub fn index(&self, i_set: &[usize], j_set: &[usize], alpha: usize) -> usize {
        let mut idx = 0usize;
        for &i in i_set.iter().chain(j_set.iter()) {
            idx = idx * self.n + i;
        }
        idx * self.r + alpha
    }

    pub fn get(&self, i_set: &[usize], j_set: &[usize], alpha: usize) -> Complex64 {
        self.data[self.index(i_set, j_set, alpha)]
    }

    /// Expand an increasing-index form into the dense skew tensor.
    pub fn from_pq(phi: &PqForm) -> Self {
        let n = phi.ctx().n();
        let (p, q) = (phi.p(), phi.q());
        let r = phi.fiber_rank();
        let mut out = Self::zeros(n, p, q, r);
        let perms_p = permutations(p);
        let perms_q = permutations(q);
        for i_set in combinations(n, p) {
            for j_set in combinations(n, q) {
                for alpha in 0..r {
                    let v = phi.coeff(&i_set, &j_set, alpha);
                    if v == Complex64::ZERO {
                        continue;
                    }
                    for (sp, sgn_p) in &perms_p {
                        let i_perm: Vec<usize> = sp.iter().map(|&t| i_set[t]).collect();
                        for (sq, sgn_q) in &perms_q {
                            let j_perm: Vec<usize> = sq.iter().map(|&t| j_set[t]).collect();
                            let idx = out.index(&i_perm, &j_perm, alpha);
                            out.data[idx] = v * c((sgn_p * sgn_q) as f64);
                        }
                    }
                }
            }
        }
        out
    }

    /// Read the increasing-index entries back.
    pub fn to_pq(&self, ctx: &std::sync::Arc<AlgebraContext>) -> PqForm {
        let mut out = if self.r == ctx.rank() && self.r > 0 {
            // rebuild with the same fiber layout the source had
            if self.r == 1 {
                PqForm::zero(ctx, self.p, self.q)
            } else {
                PqForm::zero_bundle(ctx, self.p, self.q)
            }
        } else {
            PqForm::zero(ctx, self.p, self.q)
        };
        for i_set in combinations(self.n, self.p) {
            for j_set in combinations(self.n, self.q) {
                for alpha in 0..out.fiber_rank() {
                    out.set_coeff(&i_set, &j_set, alpha, self.get(&i_set, &j_set, alpha));
                }
            }
        }
        out
    }

    /// Max deviation from another dense tensor.
    pub fn distance(&self, other: &DenseForm) -> f64 {
        assert_eq!(self.data.len(), other.data.len());
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max deviation of this tensor from full skew symmetry, per group.
    pub fn skew_residual(&self) -> f64 {
        let mut res = 0.0f64;
        let perms_p = permutations(self.p);
        let perms_q = permutations(self.q);
        for i_set in tuples(self.n, self.p) {
            for j_set in tuples(self.n, self.q) {
                for alpha in 0..self.r {
                    let base = self.get(&i_set, &j_set, alpha);
                    for (sp, sgn_p) in &perms_p {
                        let ip: Vec<usize> = sp.iter().map(|&t| i_set[t]).collect();
                        for (sq, sgn_q) in &perms_q {
                            let jp: Vec<usize> = sq.iter().map(|&t| j_set[t]).collect();
                            let v = self.get(&ip, &jp, alpha);
                            res = res.max((v - base * c((sgn_p * sgn_q) as f64)).norm());
                        }
                    }
                }
            }
        }
        res
    }

    /// Wedge by explicit antisymmetrization:
    /// (a ^ b)_{I,J} = (-1)^{p_b q_a} / (p_a! p_b! q_a! q_b!)
    ///   sum_{sigma, tau} sgn(sigma) sgn(tau) a_{sigma I_a, tau J_a}
    ///   b_{sigma I_b, tau J_b}.
    pub fn wedge(&self, other: &DenseForm) -> DenseForm {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let (pa, qa) = (self.p, self.q);
        let (pb, qb) = (other.p, other.q);
        let (p, q) = (pa + pb, qa + qb);
        let r = self.r.max(other.r);
        assert!(self.r == 1 || other.r == 1);
        let mut out = DenseForm::zeros(n, p, q, r);
        if p > n || q > n {
            return out;
        }
        let perms_p = permutations(p);
        let perms_q = permutations(q);
        let norm = 1.0
            / (fact(pa) * fact(pb) * fact(qa) * fact(qb)) as f64;
        let cross = if (pb * qa) % 2 == 0 { 1.0 } else { -1.0 };
        for i_set in tuples(n, p) {
            for j_set in tuples(n, q) {
                for alpha in 0..r {
                    let mut acc = Complex64::ZERO;
                    for (sp, sgn_p) in &perms_p {
                        let i_perm: Vec<usize> = sp.iter().map(|&t| i_set[t]).collect();
                        for (sq, sgn_q) in &perms_q {
                            let j_perm: Vec<usize> = sq.iter().map(|&t| j_set[t]).collect();
                            let (a_alpha, b_alpha) =
                                if self.r > 1 { (alpha, 0) } else { (0, alpha.min(other.r - 1)) };
                            let av = self.get(&i_perm[..pa], &j_perm[..qa], a_alpha);
                            let bv = other.get(&i_perm[pa..], &j_perm[qa..], b_alpha);
                            acc += av * bv * c((sgn_p * sgn_q) as f64);
                        }
                    }
                    let idx = out.index(&i_set, &j_set, alpha);
                    out.data[idx] = acc * c(norm * cross);
                }
            }
        }
        out
    }

    /// Interior product against a (1,0) vector: plug into the first
    /// holomorphic slot.
    pub fn contract_holo(&self, x: &[Complex64]) -> DenseForm {
        assert!(self.p >= 1);
        let mut out = DenseForm::zeros(self.n, self.p - 1, self.q, self.r);
        for i_set in tuples(self.n, self.p - 1) {
            for j_set in tuples(self.n, self.q) {
                for alpha in 0..self.r {
                    let mut acc = Complex64::ZERO;
                    for i in 0..self.n {
                        let mut full = vec![i];
                        full.extend_from_slice(&i_set);
                        acc += x[i] * self.get(&full, &j_set, alpha);
                    }
                    let idx = out.index(&i_set, &j_set, alpha);
                    out.data[idx] = acc;
                }
            }
        }
        out
    }

    /// Interior product against a (0,1) vector: plug into the first
    /// anti-holomorphic slot, with the (-1)^p anti-derivation sign.
    pub fn contract_anti(&self, x: &[Complex64]) -> DenseForm {
        assert!(self.q >= 1);
        let sign = if self.p % 2 == 0 { 1.0 } else { -1.0 };
        let mut out = DenseForm::zeros(self.n, self.p, self.q - 1, self.r);
        for i_set in tuples(self.n, self.p) {
            for j_set in tuples(self.n, self.q - 1) {
                for alpha in 0..self.r {
                    let mut acc = Complex64::ZERO;
                    for j in 0..self.n {
                        let mut full = vec![j];
                        full.extend_from_slice(&j_set);
                        acc += x[j] * self.get(&i_set, &full, alpha);
                    }
                    let idx = out.index(&i_set, &j_set, alpha);
                    out.data[idx] = acc * c(sign);
                }
            }
        }
        out
    }

    /// The local inner product by full contraction:
    /// (1/p! q!) g^{i_1 l-bar_1} ... g^{k_1 j-bar_1} ...
    /// a_{i, j, alpha} conj(b_{l, k, beta}) h_{alpha beta-bar}.
    pub fn inner(&self, other: &DenseForm, ctx: &AlgebraContext, bundle: bool) -> Complex64 {
        assert_eq!(self.p, other.p);
        assert_eq!(self.q, other.q);
        let n = self.n;
        let (p, q) = (self.p, self.q);
        let g_inv = ctx.g_inv();
        let h = ctx.h();
        let norm = 1.0 / (fact(p) * fact(q)) as f64;
        let mut total = Complex64::ZERO;
        for i_set in tuples(n, p) {
            for l_set in tuples(n, p) {
                let mut hol = Complex64::new(1.0, 0.0);
                for s in 0..p {
                    hol *= g_inv[(i_set[s], l_set[s])];
                }
                if hol == Complex64::ZERO {
                    continue;
                }
                for j_set in tuples(n, q) {
                    for k_set in tuples(n, q) {
                        let mut anti = Complex64::new(1.0, 0.0);
                        for t in 0..q {
                            anti *= g_inv[(k_set[t], j_set[t])];
                        }
                        if anti == Complex64::ZERO {
                            continue;
                        }
                        for alpha in 0..self.r {
                            for beta in 0..other.r {
                                let weight = if bundle {
                                    h[(alpha, beta)]
                                } else if alpha == beta {
                                    c(1.0)
                                } else {
                                    Complex64::ZERO
                                };
                                if weight == Complex64::ZERO {
                                    continue;
                                }
                                total += hol
                                    * anti
                                    * weight
                                    * self.get(&i_set, &j_set, alpha)
                                    * other.get(&l_set, &k_set, beta).conj();
                            }
                        }
                    }
                }
            }
        }
        total * c(norm)
    }
}

pub fn fact(k: usize) -> usize {
    (1..=k).product::<usize>().max(1)
}
