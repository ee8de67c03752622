//! Dense linear algebra over GF(2) on `u32` bit vectors (dimension <= 32).

/// Echelon basis of the span: each vector has a distinct leading bit.
pub fn span_basis<I: IntoIterator<Item = u32>>(vectors: I) -> Vec<u32> {
    let mut basis: Vec<u32> = Vec::new();
    for mut v in vectors {
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis
}

pub fn rank<I: IntoIterator<Item = u32>>(vectors: I) -> usize {
    span_basis(vectors).len()
}

/// Basis of `{w : parity(w & v) = 0 for every v in vectors}` inside `GF(2)^dim`.
pub fn annihilator(vectors: &[u32], dim: u32) -> Vec<u32> {
    // Fully reduce so every pivot column appears in exactly one row.
    let mut rows = span_basis(vectors.iter().copied());
    let pivots: Vec<u32> = rows.iter().map(|r| 31 - r.leading_zeros()).collect();
    for i in 0..rows.len() {
        for j in 0..rows.len() {
            if i != j && rows[j] >> pivots[i] & 1 == 1 {
                rows[j] ^= rows[i];
            }
        }
    }
    let mut out = Vec::new();
    for free in 0..dim {
        if pivots.contains(&free) {
            continue;
        }
        let mut w = 1u32 << free;
        for (row, &p) in rows.iter().zip(&pivots) {
            if row >> free & 1 == 1 {
                w |= 1 << p;
            }
        }
        out.push(w);
    }
    out
}

/// Finds `x` with `sum_{j : x_j = 1} columns[j] = target`, if one exists.
pub fn solve(columns: &[u32], target: u32) -> Option<u32> {
    // Each entry pairs a reduced vector with the combination producing it.
    let mut basis: Vec<(u32, u32)> = Vec::new();
    for (j, &c) in columns.iter().enumerate() {
        let (mut v, mut comb) = (c, 1u32 << j);
        for &(b, bc) in &basis {
            if v ^ b < v {
                v ^= b;
                comb ^= bc;
            }
        }
        if v != 0 {
            basis.push((v, comb));
            basis.sort_unstable_by_key(|b| std::cmp::Reverse(b.0));
        }
    }
    let (mut v, mut comb) = (target, 0u32);
    for &(b, bc) in &basis {
        if v ^ b < v {
            v ^= b;
            comb ^= bc;
        }
    }
    (v == 0).then_some(comb)
}
