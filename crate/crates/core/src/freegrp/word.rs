use crate::error::{Error, Result};
use crate::Int;
use std::fmt;

/// Freely reduced word. Letters are nonzero integers: `k` is `x_k`, `-k`
/// is `x_k^{-1}` (generators are numbered from 1).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeWord(Vec<i32>);

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    /// `x_k`; panics when `k == 0`.
    pub fn gen(k: usize) -> Self {
        assert!(k >= 1, "generators are numbered from 1");
        FreeWord(vec![k as i32])
    }

    /// Freely reduces an arbitrary letter sequence. Panics on a zero letter.
    pub fn reduce(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            assert!(l != 0, "zero is not a letter");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord(out)
    }

    /// Reduces `letters`, rejecting generators outside `1..=rank`.
    pub fn reduce_checked(letters: &[i32], rank: usize) -> Result<Self> {
        for &l in letters {
            let k = l.unsigned_abs() as usize;
            if k == 0 || k > rank {
                return Err(Error::GeneratorOutOfRange { index: k, rank });
            }
        }
        Ok(Self::reduce(letters.iter().copied()))
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index that occurs (0 for the empty word).
    pub fn max_generator(&self) -> usize {
        self.0.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        match self.max_generator() {
            k if k > rank => Err(Error::GeneratorOutOfRange { index: k, rank }),
            _ => Ok(()),
        }
    }

    pub fn mul(&self, rhs: &FreeWord) -> FreeWord {
        let mut out = self.0.clone();
        for &l in &rhs.0 {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord(out)
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn pow(&self, k: i64) -> FreeWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    pub fn conjugate_by(&self, w: &FreeWord) -> FreeWord {
        w.mul(self).mul(&w.inverse())
    }

    /// Exponent sum of generator `i` (1-based).
    pub fn exponent_sum(&self, i: usize) -> i64 {
        self.0
            .iter()
            .filter(|l| l.unsigned_abs() as usize == i)
            .map(|&l| l.signum() as i64)
            .sum()
    }

    /// Image in `Z^rank`.
    pub fn abelianize(&self, rank: usize) -> Vec<Int> {
        let mut v = vec![0i64; rank];
        for &l in &self.0 {
            let k = l.unsigned_abs() as usize;
            assert!(k <= rank, "letter x{} outside rank {}", k, rank);
            v[k - 1] += l.signum() as i64;
        }
        v.into_iter().map(Int::from).collect()
    }

    /// Replaces `x_k` by `images[k-1]` and reduces.
    pub fn substitute(&self, images: &[FreeWord]) -> FreeWord {
        let mut out: Vec<i32> = Vec::new();
        for &l in &self.0 {
            let img = &images[l.unsigned_abs() as usize - 1];
            let push = |out: &mut Vec<i32>, x: i32| {
                if out.last() == Some(&-x) {
                    out.pop();
                } else {
                    out.push(x);
                }
            };
            if l > 0 {
                img.0.iter().for_each(|&x| push(&mut out, x));
            } else {
                img.0.iter().rev().for_each(|&x| push(&mut out, -x));
            }
        }
        FreeWord(out)
    }

    /// Writes the word as `c · r · c⁻¹` with `r` cyclically reduced.
    pub fn cyclic_decomposition(&self) -> (FreeWord, FreeWord) {
        let w = &self.0;
        let mut k = 0;
        while w.len() >= 2 * (k + 1) && w[k] == -w[w.len() - 1 - k] {
            k += 1;
        }
        (
            FreeWord(w[..k].to_vec()),
            FreeWord(w[k..w.len() - k].to_vec()),
        )
    }

    /// True iff the word equals `v^j` for some `v` and `j ≥ 2`.
    ///
    /// Exact in a free group: the root of `c r c⁻¹` is `c s c⁻¹` where `s`
    /// is the primitive period of the cyclically reduced core `r`.
    pub fn is_proper_power(&self) -> bool {
        let (_, core) = self.cyclic_decomposition();
        let r = &core.0;
        let n = r.len();
        (1..n).any(|p| n % p == 0 && (p..n).all(|i| r[i] == r[i - p]))
    }

    /// Cyclic rotations of the word's letters, in order of the start index.
    pub fn rotations(&self) -> Vec<Vec<i32>> {
        let n = self.0.len();
        (0..n)
            .map(|s| (0..n).map(|i| self.0[(s + i) % n]).collect())
            .collect()
    }
}

impl fmt::Display for FreeWord {
    /// `x1^2 x2 x1^-1`; the empty word prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == l {
                run += 1;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let exp = run as i64 * l.signum() as i64;
            if exp == 1 {
                write!(f, "x{}", l.unsigned_abs())?;
            } else {
                write!(f, "x{}^{}", l.unsigned_abs(), exp)?;
            }
            i += run;
        }
        Ok(())
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeWord({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(l: &[i32]) -> FreeWord {
        FreeWord::reduce(l.iter().copied())
    }

    #[test]
    fn reduction_and_group_ops() {
        assert_eq!(w(&[1, 2, -2, 1]).letters(), &[1, 1]);
        assert!(w(&[1]).mul(&w(&[-1])).is_identity());
        assert_eq!(w(&[1, 2]).inverse().letters(), &[-2, -1]);
        assert_eq!(
            FreeWord::reduce_checked(&[1, 3], 2).unwrap_err(),
            Error::GeneratorOutOfRange { index: 3, rank: 2 }
        );
    }

    #[test]
    fn abelianization_and_exponent_sums() {
        let v = w(&[1, 2, 1]).abelianize(2);
        assert_eq!(v, vec![Int::from(2), Int::from(1)]);
        assert_eq!(FreeWord::identity().abelianize(3), vec![Int::from(0); 3]);
        assert_eq!(w(&[1, 2, -1, -2]).abelianize(2), vec![Int::from(0); 2]);
        assert_eq!(w(&[1, 2, -1]).exponent_sum(1), 0);
        assert_eq!(w(&[1, 1, 1]).exponent_sum(1), 3);
        assert_eq!(w(&[2, 1, 2]).exponent_sum(1), 1);
    }

    #[test]
    fn proper_powers() {
        assert!(w(&[1, 1]).is_proper_power());
        assert!(w(&[2, 1, 2, 1, 2, 1]).is_proper_power());
        assert!(w(&[3, 1, 2, 1, 2, -3]).is_proper_power());
        assert!(!w(&[1]).is_proper_power());
        assert!(!w(&[1, 2, -1, -2]).is_proper_power());
        assert!(!w(&[1, 1, 2]).is_proper_power());
        assert!(!FreeWord::identity().is_proper_power());
    }

    #[test]
    fn display_collapses_runs() {
        assert_eq!(w(&[1, 1, 2, -1]).to_string(), "x1^2 x2 x1^-1");
        assert_eq!(FreeWord::identity().to_string(), "1");
    }

    #[test]
    fn substitution() {
        let images = vec![w(&[1, 2]), w(&[-1])];
        assert_eq!(w(&[1, 2]).substitute(&images).letters(), &[1, 2, -1]);
        assert_eq!(w(&[-1]).substitute(&images).letters(), &[-2, -1]);
    }
}
