use super::{FreeWord, StallingsGraph};
use crate::error::{Error, Result};
use crate::{Int, IntMatrix};
use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

/// Homomorphism `F_source → F_target` given by the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeHomo {
    target_rank: usize,
    images: Vec<FreeWord>,
}

impl FreeHomo {
    pub fn new(images: Vec<FreeWord>, target_rank: usize) -> Result<Self> {
        for w in &images {
            w.check_rank(target_rank)?;
        }
        Ok(FreeHomo {
            target_rank,
            images,
        })
    }

    pub fn identity(n: usize) -> Self {
        FreeHomo {
            target_rank: n,
            images: (1..=n).map(FreeWord::gen).collect(),
        }
    }

    /// Conjugation `x ↦ w x w⁻¹`.
    pub fn inner(n: usize, w: &FreeWord) -> Self {
        FreeHomo {
            target_rank: n,
            images: (1..=n).map(|k| FreeWord::gen(k).conjugate_by(w)).collect(),
        }
    }

    pub fn source_rank(&self) -> usize {
        self.images.len()
    }

    pub fn target_rank(&self) -> usize {
        self.target_rank
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        w.substitute(&self.images)
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &FreeHomo) -> FreeHomo {
        FreeHomo {
            target_rank: self.target_rank,
            images: first.images.iter().map(|w| self.apply(w)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, w)| *w == FreeWord::gen(i + 1))
    }

    /// The set of non-inverted generators when every `x_i` maps to `x_i^{±1}`.
    pub fn as_signed(&self) -> Option<SignedClassEndo> {
        let mut fixed = BTreeSet::new();
        for (i, w) in self.images.iter().enumerate() {
            match w.letters() {
                [l] if *l == (i + 1) as i32 => {
                    fixed.insert(i + 1);
                }
                [l] if *l == -((i + 1) as i32) => {}
                _ => return None,
            }
        }
        Some(SignedClassEndo {
            n: self.images.len(),
            fixed,
        })
    }

    /// Rows are the abelianized images, so `abel(φ(u)) = abel(u) · M`.
    pub fn abelianization_matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<Int>> = self
            .images
            .iter()
            .map(|w| w.abelianize(self.target_rank))
            .collect();
        IntMatrix::from_rows(rows, self.target_rank).expect("uniform width")
    }

    pub fn image_graph(&self) -> StallingsGraph {
        StallingsGraph::fold(&self.images, self.target_rank)
    }

    /// Injective iff the images fold to a subgroup of rank `source_rank`:
    /// `n` elements generating a free group of rank `n` form a basis.
    pub fn is_injective(&self) -> bool {
        self.image_graph().rank() == self.source_rank()
    }

    /// Surjective iff the images fold to the rose.
    pub fn is_surjective(&self) -> bool {
        self.image_graph().is_rose()
    }

    /// Inverse of an automorphism of `F_n`, found by Nielsen reduction of
    /// the image tuple (moves that never lengthen it, explored best-first
    /// up to `budget` tuples). `None` if not an automorphism or the search
    /// runs out.
    pub fn inverse(&self, budget: usize) -> Option<FreeHomo> {
        let n = self.images.len();
        if n != self.target_rank || !self.is_surjective() {
            return None;
        }
        type State = Vec<(FreeWord, FreeWord)>;
        let total = |s: &State| s.iter().map(|(u, _)| u.len()).sum::<usize>();
        let start: State = self
            .images
            .iter()
            .enumerate()
            .map(|(i, u)| (u.clone(), FreeWord::gen(i + 1)))
            .collect();
        let mut seen = BTreeSet::new();
        let mut queue = BinaryHeap::new();
        seen.insert(start.iter().map(|(u, _)| u.clone()).collect::<Vec<_>>());
        queue.push(Reverse((total(&start), 0usize, start)));
        let mut pushed = 1usize;
        while let Some(Reverse((len, _, state))) = queue.pop() {
            if len == n && state.iter().all(|(u, _)| u.len() == 1) {
                let mut images = vec![FreeWord::identity(); n];
                for (u, w) in &state {
                    let l = u.letters()[0];
                    let slot = &mut images[l.unsigned_abs() as usize - 1];
                    *slot = if l > 0 { w.clone() } else { w.inverse() };
                }
                let inv = FreeHomo {
                    target_rank: n,
                    images,
                };
                if self.after(&inv).is_identity() && inv.after(self).is_identity() {
                    return Some(inv);
                }
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    for e in [1i64, -1] {
                        let (uj, wj) = (state[j].0.pow(e), state[j].1.pow(e));
                        for right in [true, false] {
                            let (u, w) = if right {
                                (state[i].0.mul(&uj), state[i].1.mul(&wj))
                            } else {
                                (uj.mul(&state[i].0), wj.mul(&state[i].1))
                            };
                            if u.len() > state[i].0.len() {
                                continue;
                            }
                            let mut next = state.clone();
                            next[i] = (u, w);
                            let key: Vec<FreeWord> = next.iter().map(|(u, _)| u.clone()).collect();
                            if seen.insert(key) {
                                pushed += 1;
                                if pushed > budget {
                                    return None;
                                }
                                queue.push(Reverse((total(&next), pushed, next)));
                            }
                        }
                    }
                }
            }
        }
        None
    }
}

/// `x_i ↦ x_i` for `i ∈ fixed`, `x_i ↦ x_i⁻¹` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedClassEndo {
    pub n: usize,
    pub fixed: BTreeSet<usize>,
}

impl SignedClassEndo {
    pub fn new(n: usize, fixed: impl IntoIterator<Item = usize>) -> Result<Self> {
        let fixed: BTreeSet<usize> = fixed.into_iter().collect();
        if let Some(&k) = fixed.iter().find(|&&k| k == 0 || k > n) {
            return Err(Error::GeneratorOutOfRange { index: k, rank: n });
        }
        Ok(SignedClassEndo { n, fixed })
    }

    pub fn to_homo(&self) -> FreeHomo {
        let images = (1..=self.n)
            .map(|k| {
                if self.fixed.contains(&k) {
                    FreeWord::gen(k)
                } else {
                    FreeWord::gen(k).inverse()
                }
            })
            .collect();
        FreeHomo {
            target_rank: self.n,
            images,
        }
    }
}

/// Basis of the fixed subgroup of a signed endomorphism: the fixed
/// generators.
pub fn signed_fix(e: &SignedClassEndo) -> Vec<FreeWord> {
    e.fixed.iter().map(|&k| FreeWord::gen(k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(l: &[i32]) -> FreeWord {
        FreeWord::reduce(l.iter().copied())
    }

    #[test]
    fn nielsen_inverse() {
        let phi = FreeHomo::new(vec![w(&[-2, 1]), w(&[1])], 2).unwrap();
        let inv = phi.inverse(10_000).unwrap();
        assert!(phi.after(&inv).is_identity() && inv.after(&phi).is_identity());
        let phi = FreeHomo::new(vec![w(&[1, 2, 2, 1, 2]), w(&[2, 1, 2])], 2).unwrap();
        assert!(phi.inverse(10_000).is_some());
        let not = FreeHomo::new(vec![w(&[1, 1]), w(&[2])], 2).unwrap();
        assert_eq!(not.inverse(10_000), None);
    }

    #[test]
    fn injectivity_and_surjectivity() {
        let id = FreeHomo::identity(2);
        assert!(id.is_injective() && id.is_surjective());
        let sq = FreeHomo::new(vec![w(&[1, 1]), w(&[2])], 2).unwrap();
        assert!(sq.is_injective());
        assert!(!sq.is_surjective());
        let collapse = FreeHomo::new(vec![w(&[1]), w(&[1])], 2).unwrap();
        assert!(!collapse.is_injective());
        assert!(!collapse.is_surjective());
        let nielsen = FreeHomo::new(vec![w(&[1, 2]), w(&[2])], 2).unwrap();
        assert!(nielsen.is_injective() && nielsen.is_surjective());
    }

    #[test]
    fn signed_fixed_generators() {
        let e = SignedClassEndo::new(5, [1, 2]).unwrap();
        assert_eq!(signed_fix(&e), vec![w(&[1]), w(&[2])]);
        let all = SignedClassEndo::new(3, 1..=3).unwrap();
        assert!(all.to_homo().is_identity());
        assert_eq!(signed_fix(&all).len(), 3);
        let none = SignedClassEndo::new(2, []).unwrap();
        assert!(signed_fix(&none).is_empty());
        assert_eq!(none.to_homo().as_signed(), Some(none));
        assert!(SignedClassEndo::new(2, [3]).is_err());
    }

    #[test]
    fn composition_order() {
        let a = FreeHomo::new(vec![w(&[1, 2]), w(&[2])], 2).unwrap();
        let b = FreeHomo::new(vec![w(&[2]), w(&[1])], 2).unwrap();
        let ab = a.after(&b);
        let u = w(&[1, 2, -1]);
        assert_eq!(ab.apply(&u), a.apply(&b.apply(&u)));
    }
}
