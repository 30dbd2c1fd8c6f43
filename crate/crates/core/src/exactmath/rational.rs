//! Exact rationals and rational linear solves.

use alloc::vec::Vec;

use num_rational::Ratio;
use num_traits::{One, Zero};

pub type Rational = Ratio<i64>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// `Σ χ_i δ_i`; `None` on a length mismatch.
pub fn pairing(chi: &[i64], delta: &[Rational]) -> Option<Rational> {
    (chi.len() == delta.len()).then(|| chi.iter().zip(delta).fold(Rational::zero(), |acc, (&c, d)| acc + *d * c))
}

/// Solves `a·x = b` for a square integer matrix `a`; `None` if `a` is singular.
pub fn solve(a: &[Vec<i64>], b: &[i64]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| row.iter().map(|&x| int(x)).chain(core::iter::once(int(bi))).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = Rational::one() / m[c][c];
        for x in m[c].iter_mut() {
            *x *= inv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c];
                let pivot = m[c].clone();
                for (x, y) in m[i][c..].iter_mut().zip(&pivot[c..]) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n]).collect())
}

/// Formats as `p/q`, or `p` when the denominator is one.
pub fn render(r: &Rational) -> alloc::string::String {
    use alloc::format;
    if *r.denom() == 1 {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn pairing_examples() {
        let q = 3;
        let d = q * q - 1;
        let delta = vec![Rational::new(-q, d), Rational::new(q - 1, d), Rational::new(1, d)];
        assert_eq!(pairing(&[0, 1, -1], &delta), Some(Rational::new(q - 2, d)));
        assert_eq!(pairing(&[0, 0, 0], &delta), Some(int(0)));
        assert_eq!(pairing(&[2], &[int(1)]), Some(int(2)));
        assert_eq!(pairing(&[1, 2], &[int(1)]), None);
    }

    #[test]
    fn solve_round_trip() {
        let a = vec![vec![1, 0, 2], vec![0, 3, 0], vec![2, 0, 1]];
        let x = solve(&a, &[1, 1, 1]).unwrap();
        for (row, want) in a.iter().zip([1, 1, 1]) {
            assert_eq!(pairing(row, &x), Some(int(want)));
        }
        assert!(solve(&[vec![1, 1], vec![2, 2]], &[1, 0]).is_none());
    }

    #[test]
    fn render_forms() {
        assert_eq!(render(&Rational::new(-2, 3)), "-2/3");
        assert_eq!(render(&int(4)), "4");
    }
}
