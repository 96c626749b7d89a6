//! Strictly increasing multi-indices and the combinatorial bookkeeping for
//! wedge/contraction signs. Indices are 0-based internally; the public JSON
//! and CLI surfaces are 1-based.

/// Binomial coefficient with the usual out-of-range behaviour (0 for k > n).
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num = 1usize;
    for i in 0..k {
        num = num * (n - i) / (i + 1);
    }
    num
}

/// All strictly increasing k-subsets of {0,..,n-1} in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(binomial(n, k));
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Lexicographic rank of a strictly increasing subset among `combinations(n, k)`.
pub fn lex_rank(n: usize, combo: &[usize]) -> usize {
    let k = combo.len();
    let mut rank = 0usize;
    let mut prev = 0usize;
    for (pos, &c) in combo.iter().enumerate() {
        for v in prev..c {
            rank += binomial(n - v - 1, k - pos - 1);
        }
        prev = c + 1;
    }
    rank
}

/// Merge two disjoint strictly increasing sequences.
///
/// Returns the merged sequence together with the sign of the permutation that
/// sorts the concatenation `a ++ b`, or `None` when the sequences intersect.
pub fn merge_with_sign(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut inversions = 0usize;
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            // b[j] jumps over the remaining entries of a
            inversions += a.len() - i;
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    let sign = if inversions % 2 == 0 { 1 } else { -1 };
    Some((out, sign))
}

/// Remove `value` from a strictly increasing sequence.
///
/// Returns the shortened sequence and the interior-product sign (-1)^position,
/// or `None` when `value` is absent.
pub fn remove_with_sign(seq: &[usize], value: usize) -> Option<(Vec<usize>, i32)> {
    let pos = seq.iter().position(|&x| x == value)?;
    let mut out = seq.to_vec();
    out.remove(pos);
    let sign = if pos % 2 == 0 { 1 } else { -1 };
    Some((out, sign))
}

/// Replace the entry at `pos` by `value` and restore increasing order.
///
/// Returns the sorted sequence and the permutation sign, or `None` when
/// `value` already occurs elsewhere in the sequence.
pub fn replace_with_sign(seq: &[usize], pos: usize, value: usize) -> Option<(Vec<usize>, i32)> {
    if seq.iter().enumerate().any(|(t, &x)| t != pos && x == value) {
        return None;
    }
    let mut out = seq.to_vec();
    out[pos] = value;
    let mut sign = 1i32;
    let mut t = pos;
    while t > 0 && out[t - 1] > out[t] {
        out.swap(t - 1, t);
        sign = -sign;
        t -= 1;
    }
    while t + 1 < out.len() && out[t] > out[t + 1] {
        out.swap(t, t + 1);
        sign = -sign;
        t += 1;
    }
    Some((out, sign))
}
