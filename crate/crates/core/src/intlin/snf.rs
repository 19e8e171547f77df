use super::{IntScalar, Matrix};

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal in Smith form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfDecomposition<T> {
    pub u: Matrix<T>,
    pub d: Matrix<T>,
    pub v: Matrix<T>,
    pub rank: usize,
    /// Invariant factors strictly greater than one.
    pub torsion: Vec<T>,
}

impl<T: IntScalar> SnfDecomposition<T> {
    /// Diagonal entries `d_0, …, d_{min(r,c)-1}` (zeros included).
    pub fn invariant_factors(&self) -> Vec<T> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Smith normal form by elementary operations, always pivoting on the entry
/// of smallest absolute value in the remaining block.
pub fn snf<T: IntScalar>(m: &Matrix<T>) -> SnfDecomposition<T> {
    let (r, c) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = Matrix::identity(r);
    let mut v = Matrix::identity(c);
    let mut rank = 0;

    for t in 0..r.min(c) {
        let Some((pi, pj)) = smallest_nonzero(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            // clear column t below the pivot
            for i in t + 1..r {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                let k = -q;
                d.add_row_multiple(i, t, &k);
                u.add_row_multiple(i, t, &k);
                if !d[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            // clear row t right of the pivot
            for j in t + 1..c {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                let k = -q;
                d.add_col_multiple(j, t, &k);
                v.add_col_multiple(j, t, &k);
                if !d[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let (pi, pj) = smallest_nonzero(&d, t).expect("block is nonzero");
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            // divisibility: every remaining entry must be a multiple of the pivot
            let bad = (t + 1..r).find(|&i| {
                (t + 1..c).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)]))
            });
            match bad {
                Some(i) => {
                    let one = T::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        rank += 1;
    }

    let torsion = (0..rank)
        .map(|i| d[(i, i)].clone())
        .filter(|x| *x > T::one())
        .collect();
    SnfDecomposition {
        u,
        d,
        v,
        rank,
        torsion,
    }
}

fn smallest_nonzero<T: IntScalar>(d: &Matrix<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let a = d[(i, j)].abs();
            if a.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlin::det;
    use num_bigint::BigInt;

    fn check<T: IntScalar>(m: &Matrix<T>) -> SnfDecomposition<T> {
        let s = snf(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert_eq!(det(&s.u).abs(), T::one());
        assert_eq!(det(&s.v).abs(), T::one());
        let f = s.invariant_factors();
        for w in f.windows(2) {
            if !w[1].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]), "{:?}", f);
            }
        }
        s
    }

    #[test]
    fn zero_matrix() {
        let s = check(&Matrix::<BigInt>::zeros(2, 2));
        assert_eq!(s.rank, 0);
        assert_eq!(s.d, Matrix::zeros(2, 2));
    }

    #[test]
    fn identity_matrix() {
        let s = check(&Matrix::<BigInt>::identity(3));
        assert_eq!(s.rank, 3);
        assert_eq!(s.d, Matrix::identity(3));
        assert!(s.torsion.is_empty());
    }

    #[test]
    fn two_four_six_eight() {
        // gcd of entries is 2, |det| = 8, so d = diag(2, 4)
        let s = check(&Matrix::<BigInt>::from_i64(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.d, Matrix::from_i64(&[&[2, 0], &[0, 4]]));
        assert_eq!(s.torsion, vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn rectangular_and_empty() {
        let s = check(&Matrix::<i64>::from_i64(&[&[1, 2, 3], &[4, 5, 6]]));
        assert_eq!(s.invariant_factors(), vec![1, 3]);
        let s = check(&Matrix::<i64>::zeros(0, 3));
        assert_eq!(s.rank, 0);
        assert_eq!(s.v, Matrix::identity(3));
    }

    #[test]
    fn fixed_width_instantiation_agrees() {
        let small = Matrix::<i128>::from_i64(&[&[6, 4, 2], &[3, 9, 12], &[1, 1, 7]]);
        let big = Matrix::<BigInt>::from_i64(&[&[6, 4, 2], &[3, 9, 12], &[1, 1, 7]]);
        let a: Vec<String> = check(&small).invariant_factors().iter().map(|x| x.to_string()).collect();
        let b: Vec<String> = check(&big).invariant_factors().iter().map(|x| x.to_string()).collect();
        assert_eq!(a, b);
    }
}
