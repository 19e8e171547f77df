use super::SurfaceGroupSpec;
use crate::error::{Error, Result};
use crate::freegrp::{AbelianCosets, FreeWord};
use crate::intlin::quotient_structure;
use crate::{Int, IntMatrix};
use std::collections::BTreeMap;

/// Largest image order accepted by [`reidemeister_schreier`].
pub const MAX_RS_INDEX: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfacePresentation {
    pub generators: usize,
    pub relators: Vec<FreeWord>,
}

impl SurfacePresentation {
    /// Relator exponent-sum matrix (relators × generators).
    pub fn relation_matrix(&self) -> IntMatrix {
        let rows = self
            .relators
            .iter()
            .map(|r| r.abelianize(self.generators))
            .collect();
        IntMatrix::from_rows(rows, self.generators).expect("uniform width")
    }

    /// `(free rank, torsion)` of the abelianization.
    pub fn abelian_invariants(&self) -> (usize, Vec<Int>) {
        let q = quotient_structure(&self.relation_matrix());
        (q.free_rank, q.torsion)
    }
}

/// Presentation of the kernel of `π₁(Σ_g) → ⨁ Z/moduli_i`,
/// `x_j ↦ images_j`.
///
/// Cosets are the elements of the image, with a breadth-first transversal.
/// Schreier generators on tree edges are deleted and each of the `d`
/// rewritten relators is freely reduced; no other Tietze moves are made.
pub fn reidemeister_schreier(
    spec: &SurfaceGroupSpec,
    moduli: &[Int],
    images: &[Vec<Int>],
) -> Result<SurfacePresentation> {
    if images.len() != spec.rank() {
        return Err(Error::Dimension(format!(
            "{} images for {} generators",
            images.len(),
            spec.rank()
        )));
    }
    let cosets = AbelianCosets::build(moduli, images)?;
    let d = cosets.len();
    if d > MAX_RS_INDEX {
        return Err(Error::IndexTooLarge(format!(
            "image of order {} exceeds {}",
            d, MAX_RS_INDEX
        )));
    }
    let k = spec.rank();
    let mut symbol: BTreeMap<(usize, usize), i32> = BTreeMap::new();
    for v in 0..d {
        for j in 0..k {
            if !cosets.is_tree_edge(v, j) {
                let next = symbol.len() as i32 + 1;
                symbol.insert((v, j), next);
            }
        }
    }
    let mut back = vec![vec![0usize; k]; d];
    for v in 0..d {
        for j in 0..k {
            back[cosets.step[v][j]][j] = v;
        }
    }
    let relator = spec.relator();
    let mut relators = Vec::with_capacity(d);
    for start in 0..d {
        let mut cur = start;
        let mut letters = Vec::new();
        for &l in relator.letters() {
            let j = l.unsigned_abs() as usize - 1;
            if l > 0 {
                if let Some(&s) = symbol.get(&(cur, j)) {
                    letters.push(s);
                }
                cur = cosets.step[cur][j];
            } else {
                let prev = back[cur][j];
                if let Some(&s) = symbol.get(&(prev, j)) {
                    letters.push(-s);
                }
                cur = prev;
            }
        }
        debug_assert_eq!(cur, start, "relator must lift to a closed loop");
        relators.push(FreeWord::reduce(letters));
    }
    Ok(SurfacePresentation {
        generators: symbol.len(),
        relators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegrp::cyclic_moduli;

    fn gamma_images(g: usize) -> Vec<Vec<Int>> {
        (0..2 * g)
            .map(|j| cyclic_moduli(&[if j == 0 { 1 } else { 0 }]))
            .collect()
    }

    #[test]
    fn index_one_is_original() {
        let s = SurfaceGroupSpec::new(2).unwrap();
        let p = reidemeister_schreier(&s, &cyclic_moduli(&[1]), &gamma_images(2)).unwrap();
        assert_eq!(p.generators, 4);
        assert_eq!(p.relators, vec![s.relator()]);
        assert_eq!(p.abelian_invariants(), (4, vec![]));
    }

    #[test]
    fn double_cover_has_genus_three() {
        let s = SurfaceGroupSpec::new(2).unwrap();
        let p = reidemeister_schreier(&s, &cyclic_moduli(&[2]), &gamma_images(2)).unwrap();
        assert_eq!(p.generators, 2 * 4 - 1);
        assert_eq!(p.relators.len(), 2);
        assert_eq!(p.abelian_invariants(), (6, vec![]));
    }

    #[test]
    fn triple_cover_has_genus_four() {
        let s = SurfaceGroupSpec::new(2).unwrap();
        let p = reidemeister_schreier(&s, &cyclic_moduli(&[3]), &gamma_images(2)).unwrap();
        assert_eq!(p.generators, 3 * 4 - 2);
        assert_eq!(p.abelian_invariants().0, 8);
    }

    #[test]
    fn large_index_refused() {
        let s = SurfaceGroupSpec::new(2).unwrap();
        let err = reidemeister_schreier(&s, &cyclic_moduli(&[9]), &gamma_images(2)).unwrap_err();
        assert!(matches!(err, Error::IndexTooLarge(_)));
    }
}
