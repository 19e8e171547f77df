use super::{row_times, snf, IntScalar, Matrix};
use crate::error::{Error, Result};

/// Row Hermite form: returns `(H, U)` with `U · M = H`, `U` unimodular and
/// `H` in row echelon form with positive pivots and the entries above each
/// pivot reduced into `[0, pivot)`. Zero rows sit at the bottom.
pub fn hermite_rows<T: IntScalar>(m: &Matrix<T>) -> (Matrix<T>, Matrix<T>) {
    let (r, c) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = Matrix::identity(r);
    let mut prow = 0;
    for col in 0..c {
        if prow == r {
            break;
        }
        loop {
            let pivot = (prow..r)
                .filter(|&i| !h[(i, col)].is_zero())
                .min_by(|&a, &b| h[(a, col)].abs().cmp(&h[(b, col)].abs()));
            let Some(p) = pivot else { break };
            h.swap_rows(prow, p);
            u.swap_rows(prow, p);
            let mut done = true;
            for i in prow + 1..r {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let k = -h[(i, col)].div_floor(&h[(prow, col)]);
                h.add_row_multiple(i, prow, &k);
                u.add_row_multiple(i, prow, &k);
                if !h[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(prow, col)].is_zero() {
            continue;
        }
        if h[(prow, col)].is_negative() {
            h.negate_row(prow);
            u.negate_row(prow);
        }
        for i in 0..prow {
            let k = -h[(i, col)].div_floor(&h[(prow, col)]);
            h.add_row_multiple(i, prow, &k);
            u.add_row_multiple(i, prow, &k);
        }
        prow += 1;
    }
    (h, u)
}

/// Z-basis of `{a : a · M = 0}`, returned in Hermite-reduced form so that
/// equal kernels give equal bases.
pub fn left_null_basis<T: IntScalar>(m: &Matrix<T>) -> Vec<Vec<T>> {
    let s = snf(m);
    let r = m.rows();
    if s.rank == r {
        return Vec::new();
    }
    let raw: Vec<Vec<T>> = (s.rank..r).map(|i| s.u.row(i).to_vec()).collect();
    let raw = Matrix::from_rows(raw, r).expect("rows of U have length r");
    let (h, _) = hermite_rows(&raw);
    h.to_rows()
        .into_iter()
        .filter(|row| row.iter().any(|x| !x.is_zero()))
        .collect()
}

/// Result of [`solve_left`]: every solution is `particular + Σ k_i · homogeneous_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftSolution<T> {
    pub particular: Vec<T>,
    pub homogeneous: Vec<Vec<T>>,
}

/// Solves `a · M = b` over the integers.
pub fn solve_left<T: IntScalar>(m: &Matrix<T>, b: &[T]) -> Result<Option<LeftSolution<T>>> {
    if b.len() != m.cols() {
        return Err(Error::Dimension(format!(
            "right-hand side has length {}, matrix has {} columns",
            b.len(),
            m.cols()
        )));
    }
    let s = snf(m);
    let y = row_times(b, &s.v);
    let mut x = vec![T::zero(); m.rows()];
    for (i, yi) in y.iter().enumerate() {
        if i < s.rank {
            let di = &s.d[(i, i)];
            if !yi.is_multiple_of(di) {
                return Ok(None);
            }
            x[i] = yi.div_floor(di);
        } else if !yi.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(LeftSolution {
        particular: row_times(&x, &s.u),
        homogeneous: left_null_basis(m),
    }))
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det<T: IntScalar>(m: &Matrix<T>) -> T {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return T::one();
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    negate = !negate;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[(i, j)].clone() * a[(k, k)].clone() - a[(i, k)].clone() * a[(k, j)].clone();
                a[(i, j)] = num / prev.clone();
            }
        }
        prev = a[(k, k)].clone();
    }
    let d = a[(n - 1, n - 1)].clone();
    if negate {
        -d
    } else {
        d
    }
}

pub fn is_unimodular<T: IntScalar>(m: &Matrix<T>) -> bool {
    m.is_square() && det(m).abs().is_one()
}

pub fn inverse_unimodular<T: IntScalar>(m: &Matrix<T>) -> Result<Matrix<T>> {
    if !is_unimodular(m) {
        return Err(Error::NotInvertible);
    }
    // the Hermite form of a unimodular matrix is the identity
    let (h, u) = hermite_rows(m);
    debug_assert_eq!(h, Matrix::identity(m.rows()));
    Ok(u)
}

/// `{a : a = a · Q}` as a Z-basis.
pub fn fix_of_linear<T: IntScalar>(q: &Matrix<T>) -> Result<Vec<Vec<T>>> {
    Ok(left_null_basis(&q.identity_minus()?))
}

/// `Z^m / Row(M) ≅ Z^s ⊕ ⨁ Z/d_i`, with an explicit projection.
///
/// The projection sends `x` to `x · V` and keeps the coordinates whose
/// invariant factor is zero (free) or exceeds one (torsion, reduced mod d_i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientStructure<T> {
    pub free_rank: usize,
    pub torsion: Vec<T>,
    /// m × free_rank
    pub free_projection: Matrix<T>,
    /// m × torsion.len()
    pub torsion_projection: Matrix<T>,
}

/// Image of a vector in the quotient; torsion residues lie in `[0, d_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuotientClass<T> {
    pub free: Vec<T>,
    pub torsion: Vec<T>,
}

impl<T: IntScalar> QuotientClass<T> {
    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(|x| x.is_zero())
    }
}

pub fn quotient_structure<T: IntScalar>(m: &Matrix<T>) -> QuotientStructure<T> {
    let s = snf(m);
    let c = m.cols();
    let mut free_cols = Vec::new();
    let mut torsion_cols = Vec::new();
    let mut torsion = Vec::new();
    for j in 0..c {
        if j < s.rank {
            let dj = s.d[(j, j)].clone();
            if dj > T::one() {
                torsion_cols.push(j);
                torsion.push(dj);
            }
        } else {
            free_cols.push(j);
        }
    }
    let pick = |cols: &[usize]| {
        let rows = (0..c)
            .map(|i| cols.iter().map(|&j| s.v[(i, j)].clone()).collect())
            .collect();
        Matrix::from_rows(rows, cols.len()).expect("consistent widths")
    };
    QuotientStructure {
        free_rank: free_cols.len(),
        free_projection: pick(&free_cols),
        torsion_projection: pick(&torsion_cols),
        torsion,
    }
}

impl<T: IntScalar> QuotientStructure<T> {
    pub fn ambient_dim(&self) -> usize {
        self.free_projection.rows()
    }

    pub fn project(&self, x: &[T]) -> QuotientClass<T> {
        let free = row_times(x, &self.free_projection);
        let torsion = row_times(x, &self.torsion_projection)
            .into_iter()
            .zip(&self.torsion)
            .map(|(v, d)| v.mod_floor(d))
            .collect();
        QuotientClass { free, torsion }
    }

    /// Order of the subgroup generated by the classes of `gens`, or `None`
    /// when it is infinite.
    pub fn subgroup_order(&self, gens: &[Vec<T>]) -> Option<T> {
        let classes: Vec<_> = gens.iter().map(|g| self.project(g)).collect();
        if classes.iter().any(|c| c.free.iter().any(|x| !x.is_zero())) {
            return None;
        }
        let k = self.torsion.len();
        let mut rows: Vec<Vec<T>> = classes.into_iter().map(|c| c.torsion).collect();
        for (i, d) in self.torsion.iter().enumerate() {
            let mut r = vec![T::zero(); k];
            r[i] = d.clone();
            rows.push(r);
        }
        // [L : D] = [Z^k : D] / [Z^k : L] where L ⊇ D is spanned by the rows
        let lattice = Matrix::from_rows(rows, k).expect("consistent widths");
        let covolume = snf(&lattice)
            .invariant_factors()
            .into_iter()
            .fold(T::one(), |acc, x| acc * x);
        let full = self.torsion.iter().fold(T::one(), |acc, x| acc * x.clone());
        Some(full / covolume)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlin::is_zero_vec;
    use num_bigint::BigInt;

    type M = Matrix<BigInt>;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_of_zero_is_standard_basis() {
        let q = M::identity(2);
        assert_eq!(fix_of_linear(&q).unwrap(), vec![bi(&[1, 0]), bi(&[0, 1])]);
    }

    #[test]
    fn kernel_of_invertible_is_empty() {
        let q = M::from_i64(&[&[2]]);
        assert!(fix_of_linear(&q).unwrap().is_empty());
        assert!(fix_of_linear(&M::zeros(3, 3)).unwrap().is_empty());
    }

    #[test]
    fn kernel_of_swap() {
        let q = M::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(fix_of_linear(&q).unwrap(), vec![bi(&[1, 1])]);
        // exhaustive small search: a1 = a2 is the only constraint
        let m = q.identity_minus().unwrap();
        for a in -5i64..=5 {
            for b in -5i64..=5 {
                let zero = is_zero_vec(&row_times(&bi(&[a, b]), &m));
                assert_eq!(zero, a == b);
            }
        }
    }

    #[test]
    fn solve_examples() {
        let zero = M::zeros(1, 1);
        let sol = solve_left(&zero, &bi(&[0])).unwrap().unwrap();
        assert_eq!(sol.particular, bi(&[0]));
        assert_eq!(sol.homogeneous, vec![bi(&[1])]);

        let m = M::from_i64(&[&[-2]]);
        let sol = solve_left(&m, &bi(&[4])).unwrap().unwrap();
        assert_eq!(sol.particular, bi(&[-2]));
        assert!(sol.homogeneous.is_empty());
        assert_eq!(solve_left(&m, &bi(&[3])).unwrap(), None);
        assert!(solve_left(&m, &bi(&[1, 2])).is_err());
    }

    #[test]
    fn determinants_and_inverses() {
        let id = M::identity(2);
        assert_eq!(det(&id), BigInt::from(1));
        assert_eq!(inverse_unimodular(&id).unwrap(), id);
        let swap = M::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(det(&swap), BigInt::from(-1));
        assert_eq!(inverse_unimodular(&swap).unwrap(), swap);
        let d = M::from_i64(&[&[2, 0], &[0, 1]]);
        assert_eq!(det(&d), BigInt::from(2));
        assert!(!is_unimodular(&d));
        assert_eq!(inverse_unimodular(&d).unwrap_err(), Error::NotInvertible);
        assert_eq!(det(&M::zeros(0, 0)), BigInt::from(1));
        let m = M::from_i64(&[&[2, 3, 1], &[1, 2, 1], &[0, 1, 1]]);
        assert_eq!(det(&m), BigInt::from(0));
        let m = M::from_i64(&[&[0, 2, 1], &[1, 0, 0], &[3, 1, 1]]);
        assert_eq!(det(&m), BigInt::from(-1));
        let inv = inverse_unimodular(&m).unwrap();
        assert_eq!(inv.mul(&m), M::identity(3));
        assert_eq!(m.mul(&inv), M::identity(3));
    }

    #[test]
    fn quotient_examples() {
        let q = quotient_structure(&M::zeros(2, 2));
        assert_eq!((q.free_rank, q.torsion.len()), (2, 0));

        let q = quotient_structure(&M::from_i64(&[&[-2]]));
        assert_eq!(q.free_rank, 0);
        assert_eq!(q.torsion, bi(&[2]));

        let q = quotient_structure(&M::from_i64(&[&[1, 0], &[0, 3]]));
        assert_eq!(q.free_rank, 0);
        assert_eq!(q.torsion, bi(&[3]));
        assert!(q.project(&bi(&[5, 3])).is_zero());
        assert!(!q.project(&bi(&[0, 1])).is_zero());
        assert_eq!(q.subgroup_order(&[bi(&[0, 1])]), Some(BigInt::from(3)));
        assert_eq!(q.subgroup_order(&[bi(&[1, 0])]), Some(BigInt::from(1)));

        let q = quotient_structure(&M::zeros(0, 0));
        assert_eq!(q.free_rank, 0);
        assert_eq!(q.subgroup_order(&[]), Some(BigInt::from(1)));
    }

    #[test]
    fn subgroup_order_in_product_of_cyclics() {
        // Z^2 / Row(diag(2,4)) = Z/2 ⊕ Z/4; (1,1) has order 4, with (1,0) the whole group
        let q = quotient_structure(&M::from_i64(&[&[2, 0], &[0, 4]]));
        assert_eq!(q.subgroup_order(&[bi(&[1, 1])]), Some(BigInt::from(4)));
        assert_eq!(q.subgroup_order(&[bi(&[1, 1]), bi(&[1, 0])]), Some(BigInt::from(8)));
        let q = quotient_structure(&M::from_i64(&[&[2, 0]]));
        assert_eq!(q.subgroup_order(&[bi(&[0, 1])]), None);
    }
}
