//! Rank of matrices over GF(p).

/// Rank of a dense `rows x ncols` matrix over GF(p), entries already reduced mod p.
pub fn rank_mod_p(mut rows: Vec<Vec<u32>>, ncols: usize, p: u32) -> usize {
    if p == 2 {
        return rank_gf2(&rows, ncols);
    }
    let p64 = p as u64;
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inverse_mod(rows[rank][col], p);
        for v in rows[rank][col..].iter_mut() {
            *v = ((*v as u64 * inv as u64) % p64) as u32;
        }
        let (top, bottom) = rows.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in bottom.iter_mut() {
            let f = row[col];
            if f == 0 {
                continue;
            }
            let f = f as u64;
            for (v, &pv) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if pv != 0 {
                    *v = ((*v as u64 + p64 - (f * pv as u64) % p64) % p64) as u32;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn rank_gf2(rows: &[Vec<u32>], ncols: usize) -> usize {
    let words = ncols.div_ceil(64);
    let mut bits: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            let mut b = vec![0u64; words];
            for (c, &v) in r.iter().enumerate() {
                if v & 1 == 1 {
                    b[c / 64] |= 1 << (c % 64);
                }
            }
            b
        })
        .collect();
    let mut rank = 0;
    for col in 0..ncols {
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(piv) = (rank..bits.len()).find(|&r| bits[r][w] & bit != 0) else {
            continue;
        };
        bits.swap(rank, piv);
        let (top, bottom) = bits.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in bottom.iter_mut() {
            if row[w] & bit != 0 {
                for (x, y) in row[w..].iter_mut().zip(&pivot_row[w..]) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
        if rank == bits.len() {
            break;
        }
    }
    rank
}

fn inverse_mod(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2).
    let (mut base, mut exp, mut acc) = (a as u64 % p as u64, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
