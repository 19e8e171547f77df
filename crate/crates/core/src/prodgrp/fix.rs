use super::{AmbientSpec, Base, EndoType1, EndoType2, IndexValue, ProdElement, SubgroupCore, SubgroupType};
use crate::error::{Error, Result};
use crate::freegrp::{
    kernel_of_abelian_map, schreier_generators, FreeHomo, FreeWord, StallingsGraph,
};
use crate::intlin::{left_null_basis, quotient_structure, row_times, vec_sub};
use crate::surfgrp::subgroup_type_from_index;
use crate::{Int, IntMatrix};
use num_traits::{ToPrimitive, Zero};

/// What is known about `Fix φ` on the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixPhi {
    /// `φ` is the identity and `Fix φ` is the whole base group.
    Whole,
    /// `Fix φ` is freely generated by these words.
    Basis(Vec<FreeWord>),
}

/// The image `p(Fix Ψ)` of the fixed subgroup in the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PPart {
    Trivial,
    /// Free of finite rank with an explicit basis.
    FiniteBasis(Vec<FreeWord>),
    /// Finite-index subgroup of the whole surface group.
    Surface(u64),
    /// Nontrivial normal subgroup of infinite index in a nonabelian group.
    FreeInfinite,
}

#[derive(Clone, Debug)]
enum BaseTest {
    Nothing,
    Graph(StallingsGraph),
    /// `u` is fixed by this map (surface bases, user basis).
    Fixed(FreeHomo),
    Everything,
}

#[derive(Clone, Debug)]
enum Membership {
    /// `u ∈ base test` and `a(I−Q) = ūP`.
    Type1 {
        base: BaseTest,
        i_minus_q: IntMatrix,
        p: IntMatrix,
    },
    /// `u = z^c` and `(c, a)·N = 0`.
    Type2 { z: FreeWord, n: IntMatrix, l: Vec<Int> },
}

/// Isomorphism type of `Fix Ψ` together with the data it was read from.
#[derive(Clone, Debug)]
pub struct FixReport {
    pub subgroup: SubgroupType,
    /// Rank of `Fix Ψ ∩ Z^m`.
    pub s: usize,
    pub p_part: PPart,
    /// `[Fix φ : p(Fix Ψ)]`; absent for abelian-image endomorphisms.
    pub index: Option<IndexValue>,
    /// Basis of `{a : a = aQ}`.
    pub central_basis: Vec<Vec<Int>>,
    /// For abelian-image endomorphisms: basis of the `(c, a)` solutions,
    /// each giving the fixed element `z^c t^a`.
    pub solution_basis: Vec<Vec<Int>>,
    membership: Membership,
}

impl FixReport {
    /// Exact membership test for `Fix Ψ`.
    pub fn contains(&self, amb: &AmbientSpec, e: &ProdElement) -> bool {
        match &self.membership {
            Membership::Type1 { base, i_minus_q, p } => {
                let in_base = match base {
                    BaseTest::Nothing => amb.word_is_trivial(&e.u),
                    BaseTest::Everything => true,
                    BaseTest::Graph(g) => g.member(&e.u),
                    BaseTest::Fixed(phi) => amb.word_eq(&phi.apply(&e.u), &e.u),
                };
                in_base && row_times(&e.a, i_minus_q) == row_times(&amb.abelianize(&e.u), p)
            }
            Membership::Type2 { z, n, l } => {
                let zbar = amb.abelianize(z);
                let ubar = amb.abelianize(&e.u);
                let c = match zbar.iter().position(|x| !x.is_zero()) {
                    Some(i) => {
                        let (c, r) = num_integer::Integer::div_rem(&ubar[i], &zbar[i]);
                        if !r.is_zero() {
                            return false;
                        }
                        c
                    }
                    None => crate::intlin::dot(&e.a, l),
                };
                let Some(ci) = c.to_i64() else {
                    return false;
                };
                if !amb.word_eq(&e.u, &z.pow(ci)) {
                    return false;
                }
                let mut ca = vec![c];
                ca.extend(e.a.iter().cloned());
                row_times(&ca, n).iter().all(|x| x.is_zero())
            }
        }
    }

    /// Basis words of `p(Fix Ψ)` when finite.
    pub fn p_basis(&self) -> Option<&[FreeWord]> {
        match &self.p_part {
            PPart::FiniteBasis(b) => Some(b),
            _ => None,
        }
    }
}

/// Checks a claimed `Fix φ` and normalizes it: a free base's whole group
/// becomes its generators.
pub fn verify_fix_phi(amb: &AmbientSpec, phi: &FreeHomo, fix_phi: &FixPhi) -> Result<FixPhi> {
    let k = amb.base_rank();
    match fix_phi {
        FixPhi::Whole => {
            let is_id = (1..=k).all(|i| amb.word_eq(&phi.apply(&FreeWord::gen(i)), &FreeWord::gen(i)));
            if !is_id {
                return Err(Error::Verification(
                    "whole-group fixed set claimed but phi is not the identity".into(),
                ));
            }
            Ok(match amb.base {
                Base::Free(n) => FixPhi::Basis((1..=n).map(FreeWord::gen).collect()),
                Base::Surface(_) => FixPhi::Whole,
            })
        }
        FixPhi::Basis(basis) => {
            for b in basis {
                amb.check_word(b)?;
                if !amb.word_eq(&phi.apply(b), b) {
                    return Err(Error::Verification(format!("{} is not fixed by phi", b)));
                }
            }
            match &amb.base {
                Base::Free(n) => {
                    if StallingsGraph::fold(basis, k).rank() != basis.len() {
                        return Err(Error::NotAFreeBasis);
                    }
                    if basis.len() > *n {
                        return Err(Error::Verification(format!(
                            "fixed subgroup of rank {} exceeds the base rank {}",
                            basis.len(),
                            n
                        )));
                    }
                }
                Base::Surface(spec) => {
                    if basis.len() >= spec.rank() {
                        return Err(Error::Verification(format!(
                            "proper fixed subgroup of rank {} contradicts rank < {}",
                            basis.len(),
                            spec.rank()
                        )));
                    }
                }
            }
            Ok(FixPhi::Basis(basis.clone()))
        }
    }
}

/// `Fix φ` read off the shape of `φ`, when the shape is one of the
/// supported classes (identity or signed).
pub fn infer_fix_phi(amb: &AmbientSpec, phi: &FreeHomo) -> Option<FixPhi> {
    if phi.is_identity() {
        return Some(FixPhi::Whole);
    }
    if amb.is_surface() {
        return None;
    }
    phi.as_signed()
        .map(|s| FixPhi::Basis(crate::freegrp::signed_fix(&s)))
}

/// Fixed subgroup of a canonical first-kind endomorphism.
///
/// `Fix Ψ ≅ p(Fix Ψ) × Z^s` where `Z^s = {t^a : a = aQ}` and `p(Fix Ψ)` is
/// the kernel of `Fix φ → Z^m / Row(I−Q)`, `u ↦ [ūP]`.
pub fn fix(amb: &AmbientSpec, psi: &EndoType1, fix_phi: &FixPhi) -> Result<FixReport> {
    let fix_phi = verify_fix_phi(amb, psi.phi(), fix_phi)?;
    let i_minus_q = psi.q().identity_minus()?;
    let central_basis = left_null_basis(&i_minus_q);
    let s = central_basis.len();
    let quotient = quotient_structure(&i_minus_q);
    let (gens, images): (Vec<FreeWord>, Vec<Vec<Int>>) = match &fix_phi {
        FixPhi::Whole => (1..=amb.base_rank())
            .map(|i| (FreeWord::gen(i), psi.p().row(i - 1).to_vec()))
            .unzip(),
        FixPhi::Basis(b) => b
            .iter()
            .map(|w| (w.clone(), row_times(&amb.abelianize(w), psi.p())))
            .unzip(),
    };
    let order = quotient.subgroup_order(&images);
    let k = gens.len();

    let fixed_test = || match (&amb.base, &fix_phi) {
        (_, FixPhi::Whole) => BaseTest::Everything,
        (Base::Free(_), FixPhi::Basis(b)) => BaseTest::Graph(StallingsGraph::fold(b, amb.base_rank())),
        (Base::Surface(_), FixPhi::Basis(_)) => BaseTest::Fixed(psi.phi().clone()),
    };

    let (p_part, base_test) = match (&order, &fix_phi) {
        _ if k == 0 => (PPart::Trivial, BaseTest::Nothing),
        (Some(d), FixPhi::Whole) => {
            let d = d.to_u64().ok_or_else(|| Error::IndexTooLarge(d.to_string()))?;
            let genus = amb.surface_spec().expect("whole is surface only").genus();
            let SubgroupCore::Surface(g2) = subgroup_type_from_index(genus, d).core() else {
                unreachable!("surface index formula")
            };
            (PPart::Surface(g2), BaseTest::Everything)
        }
        (Some(_), FixPhi::Basis(b)) => {
            let torsion_images: Vec<Vec<Int>> = images
                .iter()
                .map(|g| quotient.project(g).torsion)
                .collect();
            let kernel = match amb.base {
                Base::Free(n) => kernel_of_abelian_map(b, n, &quotient.torsion, &torsion_images)?,
                Base::Surface(_) => schreier_generators(b, &quotient.torsion, &torsion_images)?,
            };
            let test = match amb.base {
                Base::Free(n) => BaseTest::Graph(StallingsGraph::fold(&kernel.basis, n)),
                Base::Surface(_) => fixed_test(),
            };
            (PPart::FiniteBasis(kernel.basis), test)
        }
        (None, _) if k >= 2 || fix_phi == FixPhi::Whole => (PPart::FreeInfinite, fixed_test()),
        // a single generator with image of infinite order: only 1 survives
        (None, _) => (PPart::Trivial, BaseTest::Nothing),
    };

    let core = match &p_part {
        PPart::Trivial => SubgroupCore::Free(0),
        PPart::FiniteBasis(b) => SubgroupCore::Free(b.len() as u64),
        PPart::Surface(g) => SubgroupCore::Surface(*g),
        PPart::FreeInfinite => SubgroupCore::FreeInfinite,
    };
    let index = match order {
        Some(d) => IndexValue::Finite(d),
        None => IndexValue::Infinite,
    };
    Ok(FixReport {
        subgroup: SubgroupType::new(core, s),
        s,
        p_part,
        index: Some(index),
        central_basis,
        solution_basis: vec![],
        membership: Membership::Type1 {
            base: base_test,
            i_minus_q,
            p: psi.p().clone(),
        },
    })
}

/// Fixed subgroup of an abelian-image endomorphism.
///
/// Fixed elements are `z^c t^a` with `c = a·l + c(z̄·h)` and
/// `a = aQ + c z̄P`, i.e. the left null space of
/// `N = [[1 − z̄·h, −z̄P], [−lᵀ, I − Q]]`.
pub fn fix_type2(amb: &AmbientSpec, psi: &EndoType2) -> Result<FixReport> {
    let m = amb.m;
    let zbar = amb.abelianize(psi.z());
    let zh = crate::intlin::dot(&zbar, psi.h());
    let zp = row_times(&zbar, psi.p());
    let i_minus_q = psi.q().identity_minus()?;
    let mut rows = Vec::with_capacity(m + 1);
    let mut top = vec![Int::from(1) - zh];
    top.extend(zp.iter().map(|x| -x));
    rows.push(top);
    for i in 0..m {
        let mut r = vec![-psi.l()[i].clone()];
        r.extend(i_minus_q.row(i).iter().cloned());
        rows.push(r);
    }
    let n = IntMatrix::from_rows(rows, m + 1)?;
    let solution_basis = left_null_basis(&n);
    // central fixed elements t^a need a·l = 0 as well as a = aQ
    let joint = (0..m)
        .map(|i| {
            let mut r = vec![psi.l()[i].clone()];
            r.extend(i_minus_q.row(i).iter().cloned());
            r
        })
        .collect();
    let central_basis = left_null_basis(&IntMatrix::from_rows(joint, m + 1)?);
    let r = solution_basis.len();
    Ok(FixReport {
        subgroup: SubgroupType::abelian(r),
        s: r,
        p_part: PPart::Trivial,
        index: None,
        central_basis,
        solution_basis,
        membership: Membership::Type2 {
            z: psi.z().clone(),
            n,
            l: psi.l().to_vec(),
        },
    })
}

/// `a(I−Q) − ūP`; zero exactly when the abelian part is balanced.
pub fn defect(amb: &AmbientSpec, psi: &EndoType1, e: &ProdElement) -> Vec<Int> {
    let iq = psi.q().identity_minus().expect("square Q");
    vec_sub(&row_times(&e.a, &iq), &row_times(&amb.abelianize(&e.u), psi.p()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegrp::SignedClassEndo;

    fn w(l: &[i32]) -> FreeWord {
        FreeWord::reduce(l.iter().copied())
    }

    fn v(x: &[i64]) -> Vec<Int> {
        x.iter().map(|&k| Int::from(k)).collect()
    }

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    #[test]
    fn free_rank_three_from_gamma_trick() {
        let amb = AmbientSpec::free(2, 1);
        let psi = EndoType1::new(&amb, FreeHomo::identity(2), m(&[&[3]]), m(&[&[1], &[0]])).unwrap();
        let r = fix(&amb, &psi, &FixPhi::Whole).unwrap();
        assert_eq!(r.subgroup, SubgroupType::free(3));
        assert_eq!(r.s, 0);
        assert_eq!(r.index, Some(IndexValue::Finite(Int::from(2))));
        assert_eq!(r.p_basis().unwrap().len(), 3);
        // x1^2 t^{-1}: a(1-3) = -2·(-1) = 2 = γ(x1^2)
        assert!(r.contains(&amb, &ProdElement::from_i64(&[1, 1], &[-1])));
        assert!(!r.contains(&amb, &ProdElement::from_i64(&[1, 1], &[1])));
        assert!(r.contains(&amb, &ProdElement::from_i64(&[2], &[0])));
        assert!(!r.contains(&amb, &ProdElement::from_i64(&[1], &[0])));
    }

    #[test]
    fn infinite_index_gives_infinite_rank() {
        let amb = AmbientSpec::free(2, 2);
        let psi = EndoType1::new(
            &amb,
            FreeHomo::identity(2),
            IntMatrix::identity(2),
            m(&[&[1, 0], &[0, 0]]),
        )
        .unwrap();
        let r = fix(&amb, &psi, &FixPhi::Whole).unwrap();
        assert_eq!(r.s, 2);
        assert_eq!(r.index, Some(IndexValue::Infinite));
        assert_eq!(r.subgroup, SubgroupType::new(SubgroupCore::FreeInfinite, 2));
        assert!(r.contains(&amb, &ProdElement::from_i64(&[1, 2, -1], &[5, -3])));
        assert!(!r.contains(&amb, &ProdElement::from_i64(&[1, 2], &[0, 0])));
    }

    #[test]
    fn surface_genus_four() {
        let amb = AmbientSpec::surface(2, 1).unwrap();
        let psi = EndoType1::new(
            &amb,
            FreeHomo::identity(4),
            m(&[&[-2]]),
            m(&[&[1], &[0], &[0], &[0]]),
        )
        .unwrap();
        let r = fix(&amb, &psi, &FixPhi::Whole).unwrap();
        assert_eq!(r.subgroup, SubgroupType::new(SubgroupCore::Surface(4), 0));
        assert_eq!(r.index, Some(IndexValue::Finite(Int::from(3))));
        assert!(r.contains(&amb, &ProdElement::from_i64(&[1, 1, 1], &[1])));
        assert!(!r.contains(&amb, &ProdElement::from_i64(&[1], &[0])));
    }

    #[test]
    fn single_generator_with_infinite_image() {
        let amb = AmbientSpec::free(2, 1);
        let phi = SignedClassEndo::new(2, [1]).unwrap().to_homo();
        let psi = EndoType1::new(&amb, phi, m(&[&[1]]), m(&[&[1], &[0]])).unwrap();
        let r = fix(&amb, &psi, &FixPhi::Basis(vec![w(&[1])])).unwrap();
        assert_eq!(r.index, Some(IndexValue::Infinite));
        // trivial p-part times Z^1 from the centre
        assert_eq!(r.subgroup, SubgroupType::abelian(1));
        assert!(r.contains(&amb, &ProdElement::from_i64(&[], &[7])));
        assert!(!r.contains(&amb, &ProdElement::from_i64(&[1], &[0])));
    }

    #[test]
    fn bad_fixed_sets_rejected() {
        let amb = AmbientSpec::free(2, 1);
        let phi = SignedClassEndo::new(2, [1]).unwrap().to_homo();
        let psi = EndoType1::new(&amb, phi, m(&[&[1]]), m(&[&[0], &[0]])).unwrap();
        assert!(matches!(
            fix(&amb, &psi, &FixPhi::Basis(vec![w(&[2])])),
            Err(Error::Verification(_))
        ));
        assert!(matches!(fix(&amb, &psi, &FixPhi::Whole), Err(Error::Verification(_))));
        assert_eq!(
            fix(&amb, &psi, &FixPhi::Basis(vec![w(&[1]), w(&[1, 1])])).unwrap_err(),
            Error::NotAFreeBasis
        );
    }

    #[test]
    fn abelian_image_examples() {
        let amb = AmbientSpec::free(2, 1);
        let zero_p = m(&[&[0], &[0]]);
        let t = |h: &[i64], q: i64| {
            let psi = EndoType2::new(&amb, w(&[1]), v(&[1]), v(h), m(&[&[q]]), zero_p.clone()).unwrap();
            fix_type2(&amb, &psi).unwrap()
        };
        let r = t(&[0, 0], 0);
        assert_eq!(r.subgroup, SubgroupType::trivial());
        assert!(r.contains(&amb, &amb.identity()));
        assert!(!r.contains(&amb, &ProdElement::from_i64(&[1], &[1])));

        let r = t(&[1, 0], 1);
        assert_eq!(r.subgroup, SubgroupType::abelian(1));
        assert!(r.contains(&amb, &ProdElement::from_i64(&[1, 1, 1], &[0])));
        assert!(!r.contains(&amb, &ProdElement::from_i64(&[1], &[1])));

        let r = t(&[0, 0], 1);
        assert_eq!(r.subgroup, SubgroupType::abelian(1));
        assert_eq!(r.solution_basis.len(), 1);
        assert!(r.contains(&amb, &ProdElement::from_i64(&[-1, -1], &[-2])));
        assert!(!r.contains(&amb, &ProdElement::from_i64(&[1], &[0])));
    }
}
