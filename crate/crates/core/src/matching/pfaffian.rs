use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Pfaffian of an integer skew-symmetric matrix by fraction-free
/// elimination; every division is exact.
pub fn pfaffian(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n % 2 == 1 {
        return BigInt::zero();
    }
    if n == 0 {
        return BigInt::one();
    }
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in (0..n).step_by(2) {
        let Some(b) = (k + 1..n).find(|&b| !m[k][b].is_zero()) else {
            return BigInt::zero();
        };
        if b != k + 1 {
            m.swap(k + 1, b);
            for row in m.iter_mut() {
                row.swap(k + 1, b);
            }
            negate = !negate;
        }
        let pivot = m[k][k + 1].clone();
        if k + 2 == n {
            return if negate { -pivot } else { pivot };
        }
        for i in k + 2..n {
            for j in i + 1..n {
                let num = &pivot * &m[i][j] - &m[k][i] * &m[k + 1][j] + &m[k][j] * &m[k + 1][i];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero());
                m[j][i] = -&q;
                m[i][j] = q;
            }
        }
        prev = pivot;
    }
    unreachable!("loop returns at the last pivot")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[allow(clippy::needless_range_loop)]
    fn det(m: &[Vec<BigInt>]) -> BigRational {
        let n = m.len();
        let mut a: Vec<Vec<BigRational>> =
            m.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
        let mut d = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return BigRational::zero();
            };
            if p != c {
                a.swap(p, c);
                d = -d;
            }
            d *= a[c][c].clone();
            for r in c + 1..n {
                let f = &a[r][c] / &a[c][c];
                for cc in c..n {
                    let t = &f * &a[c][cc];
                    a[r][cc] -= t;
                }
            }
        }
        d
    }

    #[test]
    fn small_cases() {
        assert_eq!(pfaffian(vec![]), BigInt::one());
        assert_eq!(pfaffian(mat(&[&[0, 3], &[-3, 0]])), BigInt::from(3));
        // pf = af - be + cd
        let m = mat(&[&[0, 1, 2, 3], &[-1, 0, 4, 5], &[-2, -4, 0, 6], &[-3, -5, -6, 0]]);
        assert_eq!(pfaffian(m), BigInt::from(6 - 2 * 5 + 3 * 4));
    }

    #[test]
    fn zero_first_row_gives_zero() {
        let m = mat(&[&[0, 0, 0, 0], &[0, 0, 1, 1], &[0, -1, 0, 1], &[0, -1, -1, 0]]);
        assert!(pfaffian(m).is_zero());
    }

    #[allow(clippy::needless_range_loop)]
    fn skew(n: usize, vals: &[i64]) -> Vec<Vec<BigInt>> {
        let mut m = vec![vec![BigInt::zero(); n]; n];
        let mut it = vals.iter();
        for i in 0..n {
            for j in i + 1..n {
                let v = BigInt::from(*it.next().unwrap());
                m[j][i] = -&v;
                m[i][j] = v;
            }
        }
        m
    }

    proptest! {
        #[test]
        fn square_is_determinant(half in 1usize..5, vals in prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -9i64..10], 28)) {
            let m = skew(2 * half, &vals);
            let pf = pfaffian(m.clone());
            prop_assert_eq!(BigRational::from_integer(&pf * &pf), det(&m));
        }
    }
}
