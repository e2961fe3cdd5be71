//! Dense row-major matrices over a prime field, entries reduced into `[0, p)`.

pub(crate) fn inv_mod(a: usize, p: usize) -> usize {
    debug_assert!(a % p != 0);
    pow_mod(a % p, p - 2, p)
}

fn pow_mod(mut base: usize, mut exp: usize, p: usize) -> usize {
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `a` is `rows x inner`, `b` is `inner x cols`.
pub(crate) fn mul(a: &[usize], b: &[usize], rows: usize, inner: usize, cols: usize, p: usize) -> Vec<usize> {
    let mut out = vec![0usize; rows * cols];
    for r in 0..rows {
        let arow = &a[r * inner..(r + 1) * inner];
        let orow = &mut out[r * cols..(r + 1) * cols];
        for (k, &av) in arow.iter().enumerate() {
            if av == 0 {
                continue;
            }
            let brow = &b[k * cols..(k + 1) * cols];
            for (o, &bv) in orow.iter_mut().zip(brow) {
                if bv != 0 {
                    *o = (*o + av * bv) % p;
                }
            }
        }
    }
    out
}

/// Reduced row echelon form in place. Returns the pivot column of each nonzero row.
pub(crate) fn rref(a: &mut [usize], rows: usize, cols: usize, p: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                a.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = inv_mod(a[r * cols + c], p);
        for j in c..cols {
            a[r * cols + j] = a[r * cols + j] * inv % p;
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = a[i * cols + c];
            if factor == 0 {
                continue;
            }
            for j in c..cols {
                let sub = factor * a[r * cols + j] % p;
                a[i * cols + j] = (a[i * cols + j] + p - sub) % p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Kernel of a `rows x cols` matrix as a `cols x k` matrix whose columns are the
/// canonical RREF null-space basis, one per free column (in increasing order).
/// Also returns the free columns.
pub(crate) fn kernel(a: &[usize], rows: usize, cols: usize, p: usize) -> (Vec<usize>, Vec<usize>) {
    let mut m = a.to_vec();
    let pivots = rref(&mut m, rows, cols, p);
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let k = free.len();
    let mut basis = vec![0usize; cols * k];
    for (t, &f) in free.iter().enumerate() {
        basis[f * k + t] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            let v = m[i * cols + f];
            basis[pc * k + t] = (p - v) % p;
        }
    }
    (basis, free)
}

/// Echelon data for the column space of a `rows x cols` matrix: the RREF rows of the
/// transpose (each a length-`rows` vector) and their pivot coordinates.
pub(crate) fn column_space(a: &[usize], rows: usize, cols: usize, p: usize) -> (Vec<Vec<usize>>, Vec<usize>) {
    // Incremental insertion keeps the working set at rank x rows instead of cols x rows.
    let mut basis: Vec<Vec<usize>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut v = vec![0usize; rows];
    for c in 0..cols {
        for (r, slot) in v.iter_mut().enumerate() {
            *slot = a[r * cols + c];
        }
        for (b, &pc) in basis.iter().zip(&pivots) {
            let f = v[pc];
            if f != 0 {
                for (x, &y) in v.iter_mut().zip(b) {
                    if y != 0 {
                        *x = (*x + p - f * y % p) % p;
                    }
                }
            }
        }
        if let Some(pc) = v.iter().position(|&x| x != 0) {
            let inv = inv_mod(v[pc], p);
            let nb: Vec<usize> = v.iter().map(|&x| x * inv % p).collect();
            for b in basis.iter_mut() {
                let f = b[pc];
                if f != 0 {
                    for (x, &y) in b.iter_mut().zip(&nb) {
                        if y != 0 {
                            *x = (*x + p - f * y % p) % p;
                        }
                    }
                }
            }
            basis.push(nb);
            pivots.push(pc);
        }
    }
    let mut order: Vec<usize> = (0..pivots.len()).collect();
    order.sort_by_key(|&i| pivots[i]);
    let basis = order.iter().map(|&i| basis[i].clone()).collect();
    let pivots = order.iter().map(|&i| pivots[i]).collect();
    (basis, pivots)
}

pub(crate) fn rank(a: &[usize], rows: usize, cols: usize, p: usize) -> usize {
    let mut m = a.to_vec();
    rref(&mut m, rows, cols, p).len()
}

pub(crate) fn inverse(a: &[usize], n: usize, p: usize) -> Option<Vec<usize>> {
    if n == 0 {
        return Some(Vec::new());
    }
    let w = 2 * n;
    let mut aug = vec![0usize; n * w];
    for r in 0..n {
        aug[r * w..r * w + n].copy_from_slice(&a[r * n..(r + 1) * n]);
        aug[r * w + n + r] = 1 % p;
    }
    let pivots = rref(&mut aug, n, w, p);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    let mut out = vec![0usize; n * n];
    for r in 0..n {
        out[r * n..(r + 1) * n].copy_from_slice(&aug[r * w + n..(r + 1) * w]);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_difference() {
        // [[1,1]] over F_2 (f - g for f=[[1,0]], g=[[0,1]]).
        let (b, free) = kernel(&[1, 1], 1, 2, 2);
        assert_eq!(free, vec![1]);
        assert_eq!(b, vec![1, 1]);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = vec![1, 2, 0, 1];
        let inv = inverse(&a, 2, 3).unwrap();
        assert_eq!(mul(&a, &inv, 2, 2, 2, 3), vec![1, 0, 0, 1]);
        assert!(inverse(&[1, 1, 1, 1], 2, 2).is_none());
    }

    #[test]
    fn column_space_is_reduced() {
        // columns (1,1,0), (0,1,1), (1,0,1) over F_2: rank 2
        let a = vec![1, 0, 1, 1, 1, 0, 0, 1, 1];
        let (basis, pivots) = column_space(&a, 3, 3, 2);
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(basis, vec![vec![1, 0, 1], vec![0, 1, 1]]);
        assert_eq!(rank(&a, 3, 3, 2), 2);
    }
}
