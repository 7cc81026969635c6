use num_bigint::BigInt;
use num_traits::Zero;

/// Rank over the rationals by fraction-free (Bareiss) elimination.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> =
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let nrows = a.len();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&k| !a[k][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for k in r + 1..nrows {
            for j in c + 1..ncols {
                let v = (&a[r][c] * &a[k][j] - &a[k][c] * &a[r][j]) / &prev;
                a[k][j] = v;
            }
            a[k][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
        if r == nrows {
            break;
        }
    }
    r
}
