//! Closed orientable surface groups `π₁(Σ_g) = ⟨x_1..x_2g | [x_1,x_2]⋯[x_2g−1,x_2g]⟩`.
//!
//! Words are stored freely reduced; there is no canonical normal form, so
//! equality always goes through the word problem. The presentation is
//! C′(1/6) for `g ≥ 2` (pieces have length 1), which makes Dehn's algorithm a
//! complete decision procedure.

mod reidemeister;

pub use reidemeister::{reidemeister_schreier, SurfacePresentation, MAX_RS_INDEX};

use crate::error::{Error, Result};
use crate::freegrp::FreeWord;
use crate::prodgrp::{SubgroupCore, SubgroupType};
use crate::Int;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceGroupSpec {
    genus: usize,
    /// rotations of R and R⁻¹, each of length 4g
    cyclic_relators: Vec<Vec<i32>>,
}

impl SurfaceGroupSpec {
    pub fn new(genus: usize) -> Result<Self> {
        if genus < 2 {
            return Err(Error::NotHyperbolic(genus));
        }
        let r = Self::relator_word(genus);
        let mut cyclic_relators = r.rotations();
        cyclic_relators.extend(r.inverse().rotations());
        Ok(SurfaceGroupSpec {
            genus,
            cyclic_relators,
        })
    }

    fn relator_word(genus: usize) -> FreeWord {
        let mut letters = Vec::with_capacity(4 * genus);
        for i in 0..genus as i32 {
            let (a, b) = (2 * i + 1, 2 * i + 2);
            letters.extend([a, b, -a, -b]);
        }
        FreeWord::reduce(letters)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Number of generators, `2g`.
    pub fn rank(&self) -> usize {
        2 * self.genus
    }

    pub fn relator(&self) -> FreeWord {
        Self::relator_word(self.genus)
    }

    /// Runs Dehn's algorithm to completion and returns the shortened word.
    ///
    /// Any subword of length at least `2g+1` that is a prefix of a cyclic
    /// rotation of `R^{±1}` is replaced by the inverse of the remaining
    /// suffix; the leftmost position is taken first, with the longest match
    /// there.
    pub fn dehn_reduce(&self, w: &FreeWord) -> FreeWord {
        let threshold = 2 * self.genus + 1;
        let mut cur = w.clone();
        'outer: loop {
            let letters = cur.letters();
            for i in 0..letters.len() {
                let rest = &letters[i..];
                if rest.len() < threshold {
                    break;
                }
                let best = self
                    .cyclic_relators
                    .iter()
                    .map(|r| (common_prefix(rest, r), r))
                    .filter(|(l, _)| *l >= threshold)
                    .max_by_key(|(l, _)| *l);
                if let Some((len, r)) = best {
                    let complement = FreeWord::reduce(r[len..].iter().copied()).inverse();
                    let next = FreeWord::reduce(
                        letters[..i]
                            .iter()
                            .copied()
                            .chain(complement.letters().iter().copied())
                            .chain(letters[i + len..].iter().copied()),
                    );
                    cur = next;
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    pub fn is_trivial(&self, w: &FreeWord) -> bool {
        self.dehn_reduce(w).is_identity()
    }

    pub fn equal(&self, a: &FreeWord, b: &FreeWord) -> bool {
        a == b || self.is_trivial(&a.mul(&b.inverse()))
    }

    pub fn abelianize(&self, w: &FreeWord) -> Vec<Int> {
        w.abelianize(self.rank())
    }

    /// A generator assignment extends to an endomorphism iff the relator's
    /// image is trivial.
    pub fn validate_endo(&self, images: &[FreeWord]) -> Result<bool> {
        if images.len() != self.rank() {
            return Err(Error::Dimension(format!(
                "{} images for {} generators",
                images.len(),
                self.rank()
            )));
        }
        for w in images {
            w.check_rank(self.rank())?;
        }
        Ok(self.is_trivial(&self.relator().substitute(images)))
    }
}

fn common_prefix(a: &[i32], b: &[i32]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Index-`d` subgroups of `π₁(Σ_g)` are surface groups of genus `d(g−1)+1`.
pub fn subgroup_type_from_index(genus: usize, index: u64) -> SubgroupType {
    SubgroupType::new(
        SubgroupCore::Surface(index * (genus as u64 - 1) + 1),
        0,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(l: &[i32]) -> FreeWord {
        FreeWord::reduce(l.iter().copied())
    }

    #[test]
    fn genus_below_two_rejected() {
        assert_eq!(SurfaceGroupSpec::new(1).unwrap_err(), Error::NotHyperbolic(1));
    }

    #[test]
    fn relator_and_conjugates_are_trivial() {
        let s = SurfaceGroupSpec::new(2).unwrap();
        let r = s.relator();
        assert_eq!(r.len(), 8);
        assert!(s.is_trivial(&r));
        assert!(s.is_trivial(&r.inverse()));
        assert!(s.is_trivial(&r.conjugate_by(&w(&[-3]))));
        assert!(!s.is_trivial(&w(&[1])));
        assert_eq!(s.abelianize(&r), vec![Int::from(0); 4]);
        assert_eq!(
            s.abelianize(&w(&[1, 2, 1])),
            vec![Int::from(2), Int::from(1), Int::from(0), Int::from(0)]
        );
    }

    #[test]
    fn long_halves_are_shortened() {
        let s = SurfaceGroupSpec::new(2).unwrap();
        // five letters of R equal the inverse of the remaining three
        let five = w(&[1, 2, -1, -2, 3]);
        let three = w(&[4, -3, -4]).inverse();
        assert!(s.equal(&five, &three));
        assert_eq!(s.dehn_reduce(&five), three);
    }

    #[test]
    fn endomorphism_validity() {
        let s = SurfaceGroupSpec::new(2).unwrap();
        let id: Vec<FreeWord> = (1..=4).map(FreeWord::gen).collect();
        assert!(s.validate_endo(&id).unwrap());
        let c = w(&[2, 3, -1]);
        let inner: Vec<FreeWord> = id.iter().map(|x| x.conjugate_by(&c)).collect();
        assert!(s.validate_endo(&inner).unwrap());
        // x1 <-> x2 sends R to [x2,x1][x3,x4], which is nontrivial
        let swapped = vec![w(&[2]), w(&[1]), w(&[3]), w(&[4])];
        assert!(!s.validate_endo(&swapped).unwrap());
        let retraction = vec![w(&[1]), w(&[2]), w(&[2]), w(&[1])];
        assert!(s.validate_endo(&retraction).unwrap());
    }

    #[test]
    fn genus_arithmetic() {
        assert_eq!(subgroup_type_from_index(2, 1), SubgroupType::new(SubgroupCore::Surface(2), 0));
        assert_eq!(subgroup_type_from_index(2, 3), SubgroupType::new(SubgroupCore::Surface(4), 0));
        assert_eq!(subgroup_type_from_index(3, 2), SubgroupType::new(SubgroupCore::Surface(5), 0));
    }
}
