//! Rank of sparse matrices over the two-element field.

/// Rank of the matrix whose rows list their nonzero columns. A column listed
/// twice in one row cancels.
pub fn rank(rows: Vec<Vec<usize>>, ncols: usize) -> usize {
    let words = ncols.div_ceil(64);
    let mut pivots: Vec<(usize, Vec<u64>)> = Vec::new();
    for cols in rows {
        let mut bits = vec![0u64; words];
        for c in cols {
            bits[c / 64] ^= 1 << (c % 64);
        }
        for (p, prow) in &pivots {
            if bits[p / 64] >> (p % 64) & 1 == 1 {
                for (b, q) in bits.iter_mut().zip(prow) {
                    *b ^= q;
                }
            }
        }
        if let Some(w) = bits.iter().position(|&b| b != 0) {
            let p = w * 64 + bits[w].trailing_zeros() as usize;
            for (_, prow) in pivots.iter_mut() {
                if prow[p / 64] >> (p % 64) & 1 == 1 {
                    for (a, b) in prow.iter_mut().zip(&bits) {
                        *a ^= b;
                    }
                }
            }
            pivots.push((p, bits));
        }
    }
    pivots.len()
}
