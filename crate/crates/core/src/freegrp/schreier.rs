use super::{FreeWord, StallingsGraph};
use crate::error::{Error, Result};
use crate::Int;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, VecDeque};

/// Upper bound on the number of cosets the enumerators will build.
pub const MAX_COSETS: usize = 100_000;

/// Coset graph of the image subgroup `⟨g_1, …, g_k⟩` of a finite abelian
/// group `⨁ Z/d_i`, explored breadth-first from 0 with labels in the order
/// `+1, -1, +2, -2, …`.
#[derive(Clone, Debug)]
pub struct AbelianCosets {
    pub elements: Vec<Vec<Int>>,
    /// `parent[v] = (u, label)` with `elements[v] = elements[u] ± g_|label|`
    pub parent: Vec<Option<(usize, i32)>>,
    /// `step[v][j] = v + g_{j+1}`
    pub step: Vec<Vec<usize>>,
    /// Transversal words over the abstract alphabet `y_1..y_k`.
    pub transversal: Vec<FreeWord>,
}

impl AbelianCosets {
    pub fn build(moduli: &[Int], images: &[Vec<Int>]) -> Result<Self> {
        if moduli.iter().any(|d| d <= &Int::zero()) {
            return Err(Error::Dimension("moduli must be positive".into()));
        }
        if images.iter().any(|g| g.len() != moduli.len()) {
            return Err(Error::Dimension(
                "image vector length differs from number of moduli".into(),
            ));
        }
        let k = images.len();
        let norm = |v: Vec<Int>| -> Vec<Int> {
            v.into_iter()
                .zip(moduli)
                .map(|(x, d)| x.mod_floor(d))
                .collect()
        };
        let add = |a: &[Int], b: &[Int], neg: bool| -> Vec<Int> {
            norm(
                a.iter()
                    .zip(b)
                    .map(|(x, y)| if neg { x - y } else { x + y })
                    .collect(),
            )
        };
        let gens: Vec<Vec<Int>> = images.iter().cloned().map(norm).collect();
        let zero = vec![Int::zero(); moduli.len()];
        let mut index: BTreeMap<Vec<Int>, usize> = BTreeMap::from([(zero.clone(), 0)]);
        let mut elements = vec![zero];
        let mut parent = vec![None];
        let mut transversal = vec![FreeWord::identity()];
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for j in 0..k {
                for (sign, neg) in [(1i32, false), (-1i32, true)] {
                    let t = add(&elements[v], &gens[j], neg);
                    if index.contains_key(&t) {
                        continue;
                    }
                    if elements.len() >= MAX_COSETS {
                        return Err(Error::IndexTooLarge(format!(
                            "more than {} cosets",
                            MAX_COSETS
                        )));
                    }
                    let label = sign * (j as i32 + 1);
                    index.insert(t.clone(), elements.len());
                    elements.push(t);
                    parent.push(Some((v, label)));
                    transversal.push(transversal[v].mul(&FreeWord::reduce([label])));
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        let step = elements
            .iter()
            .map(|e| gens.iter().map(|g| index[&add(e, g, false)]).collect())
            .collect();
        Ok(AbelianCosets {
            elements,
            parent,
            step,
            transversal,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Whether the positive edge `v --(j+1)--> step[v][j]` lies in the BFS tree.
    pub fn is_tree_edge(&self, v: usize, j: usize) -> bool {
        let t = self.step[v][j];
        let label = j as i32 + 1;
        self.parent[t] == Some((v, label)) || self.parent[v] == Some((t, -label))
    }
}

/// Kernel of a map from a free subgroup to a finite abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianKernel {
    /// Free basis of the kernel, as words of the ambient free group.
    pub basis: Vec<FreeWord>,
    /// The same basis written in the letters `y_1..y_k` of the input basis.
    pub abstract_basis: Vec<FreeWord>,
    /// Index of the kernel, i.e. order of the image subgroup.
    pub index: usize,
}

/// Kernel of `⟨basis⟩ → ⨁ Z/moduli_i`, `basis_j ↦ images_j`, via Schreier
/// generators over a breadth-first transversal.
///
/// `basis` must freely generate its subgroup of `F_rank`. The kernel has
/// index `d` = order of the image and rank `d(k−1)+1`.
pub fn kernel_of_abelian_map(
    basis: &[FreeWord],
    rank: usize,
    moduli: &[Int],
    images: &[Vec<Int>],
) -> Result<AbelianKernel> {
    if images.len() != basis.len() {
        return Err(Error::Dimension(format!(
            "{} images for {} basis elements",
            images.len(),
            basis.len()
        )));
    }
    for b in basis {
        b.check_rank(rank)?;
    }
    if StallingsGraph::fold(basis, rank).rank() != basis.len() {
        return Err(Error::NotAFreeBasis);
    }
    schreier_generators(basis, moduli, images)
}

/// Schreier generators of the kernel without checking that `basis` is
/// free. Used for subgroups of surface groups, where a fold in the free
/// group on the same letters says nothing about freeness.
pub fn schreier_generators(
    basis: &[FreeWord],
    moduli: &[Int],
    images: &[Vec<Int>],
) -> Result<AbelianKernel> {
    if images.len() != basis.len() {
        return Err(Error::Dimension(format!(
            "{} images for {} basis elements",
            images.len(),
            basis.len()
        )));
    }
    let cosets = AbelianCosets::build(moduli, images)?;
    let k = basis.len();
    let mut abstract_basis = Vec::new();
    for v in 0..cosets.len() {
        for j in 0..k {
            if cosets.is_tree_edge(v, j) {
                continue;
            }
            let t = cosets.step[v][j];
            let w = cosets.transversal[v]
                .mul(&FreeWord::gen(j + 1))
                .mul(&cosets.transversal[t].inverse());
            abstract_basis.push(w);
        }
    }
    let concrete = abstract_basis.iter().map(|w| w.substitute(basis)).collect();
    Ok(AbelianKernel {
        basis: concrete,
        abstract_basis,
        index: cosets.len(),
    })
}

/// Order-of-image helper for callers holding small moduli.
pub fn cyclic_moduli(d: &[i64]) -> Vec<Int> {
    d.iter().map(|&x| Int::from(x)).collect()
}

/// True iff `w` lies in the kernel: the image sum vanishes.
pub fn maps_to_zero(w: &FreeWord, moduli: &[Int], images: &[Vec<Int>]) -> bool {
    let mut acc = vec![Int::zero(); moduli.len()];
    for &l in w.letters() {
        let g = &images[l.unsigned_abs() as usize - 1];
        for (a, x) in acc.iter_mut().zip(g) {
            if l > 0 {
                *a += x;
            } else {
                *a -= x;
            }
        }
    }
    acc.iter()
        .zip(moduli)
        .all(|(a, d)| a.mod_floor(d).is_zero() || d.is_one())
}
