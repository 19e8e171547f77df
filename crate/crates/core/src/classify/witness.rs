use super::{classify, readings};
use crate::error::{Error, Result};
use crate::freegrp::{reduced_word_count, FreeHomo, FreeWord, SignedClassEndo};
use crate::prodgrp::random::retraction;
use crate::prodgrp::{
    brute_force_fix, enumerate_elements, fix, fix_type2, AmbientSpec, Base, EndoType1,
    Endomorphism, FixPhi, SubgroupCore, SubgroupType,
};
use crate::{Int, IntMatrix};

/// An endomorphism whose fixed subgroup should have type `expected`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessRecipe {
    pub endo: Endomorphism,
    /// Fixed subgroup of the base map, for first-kind endomorphisms.
    pub fix_phi: Option<FixPhi>,
    pub expected: SubgroupType,
    pub provenance: String,
}

/// `diag(1,…,1, pivot, 2,…,2)` with `s` leading ones; without a pivot every
/// remaining entry is 2. Entries 2 make `I − Q` invertible there, so those
/// coordinates neither add to the centre nor to the quotient.
fn q_block(m: usize, s: usize, pivot: Option<i64>) -> IntMatrix {
    let entries: Vec<Int> = (0..m)
        .map(|i| match (i.cmp(&s), pivot) {
            (std::cmp::Ordering::Less, _) => Int::from(1),
            (std::cmp::Ordering::Equal, Some(p)) => Int::from(p),
            _ => Int::from(2),
        })
        .collect();
    IntMatrix::diagonal(&entries)
}

/// `P` recording the exponent sum of `x1` in column `col`.
fn gamma_column(k: usize, m: usize, col: usize) -> IntMatrix {
    let mut p = IntMatrix::zeros(k, m);
    p[(0, col)] = Int::from(1);
    p
}

fn type1(
    amb: &AmbientSpec,
    phi: FreeHomo,
    q: IntMatrix,
    p: IntMatrix,
    fix_phi: FixPhi,
    expected: SubgroupType,
    provenance: String,
) -> Result<WitnessRecipe> {
    Ok(WitnessRecipe {
        endo: Endomorphism::Type1(EndoType1::new(amb, phi, q, p)?),
        fix_phi: Some(fix_phi),
        expected,
        provenance,
    })
}

fn signed(n: usize, r: usize) -> (FreeHomo, FixPhi) {
    let s = SignedClassEndo::new(n, 1..=r).expect("r <= n");
    let basis = (1..=r).map(FreeWord::gen).collect();
    (s.to_homo(), FixPhi::Basis(basis))
}

/// A recipe for `t`, or `None` when no construction is available here.
pub(super) fn construct(amb: &AmbientSpec, t: &SubgroupType) -> Result<Option<WitnessRecipe>> {
    let m = amb.m;
    let k = amb.base_rank();
    for (core, s) in readings(t) {
        if s > m {
            continue;
        }
        let recipe = match (&amb.base, core) {
            (_, SubgroupCore::FreeInfinite) if s >= 1 => Some(type1(
                amb,
                FreeHomo::identity(k),
                q_block(m, s, None),
                gamma_column(k, m, 0),
                FixPhi::Whole,
                *t,
                "identity base map; exponent sum of x1 sent to a free central coordinate".into(),
            )?),
            (Base::Free(n), SubgroupCore::Free(r)) if r <= *n as u64 => {
                let (phi, f) = signed(*n, r as usize);
                Some(type1(
                    amb,
                    phi,
                    q_block(m, s, None),
                    IntMatrix::zeros(k, m),
                    f,
                    *t,
                    format!("signed map fixing x1..x{}; Q = diag(I_{}, 2I)", r, s),
                )?)
            }
            (Base::Free(n), SubgroupCore::Free(r)) if s < m => {
                let (phi, f) = signed(*n, 2);
                Some(type1(
                    amb,
                    phi,
                    q_block(m, s, Some(r as i64)),
                    gamma_column(k, m, s),
                    f,
                    *t,
                    format!("kernel of index {} in <x1,x2> via exponent sum of x1", r - 1),
                )?)
            }
            (Base::Surface(spec), SubgroupCore::Surface(genus)) => {
                let g = spec.genus() as u64;
                let d = (genus - 1) / (g - 1);
                if s == m && d == 1 {
                    Some(type1(
                        amb,
                        FreeHomo::identity(k),
                        IntMatrix::identity(m),
                        IntMatrix::zeros(k, m),
                        FixPhi::Whole,
                        *t,
                        "identity".into(),
                    )?)
                } else if s < m {
                    Some(type1(
                        amb,
                        FreeHomo::identity(k),
                        q_block(m, s, Some(1 - d as i64)),
                        gamma_column(k, m, s),
                        FixPhi::Whole,
                        *t,
                        format!("index-{} kernel of the exponent sum of x1 mod {}", d, d),
                    )?)
                } else {
                    None
                }
            }
            (Base::Surface(_), SubgroupCore::Free(0)) => Some(type1(
                amb,
                FreeHomo::new(vec![FreeWord::identity(); k], k)?,
                q_block(m, s, None),
                IntMatrix::zeros(k, m),
                FixPhi::Basis(vec![]),
                *t,
                "trivial base map".into(),
            )?),
            (Base::Surface(_), SubgroupCore::Free(1)) => Some(type1(
                amb,
                FreeHomo::inner(k, &FreeWord::gen(1)),
                q_block(m, s, None),
                IntMatrix::zeros(k, m),
                FixPhi::Basis(vec![FreeWord::gen(1)]),
                *t,
                "conjugation by x1".into(),
            )?),
            (Base::Surface(_), SubgroupCore::Free(2)) if s == m => Some(type1(
                amb,
                retraction(k),
                IntMatrix::identity(m),
                IntMatrix::zeros(k, m),
                FixPhi::Basis(vec![FreeWord::gen(1), FreeWord::gen(2)]),
                *t,
                "retraction onto <x1,x2>".into(),
            )?),
            (Base::Surface(_), SubgroupCore::Free(r)) if r >= 2 && s < m => Some(type1(
                amb,
                retraction(k),
                q_block(m, s, Some(r as i64)),
                gamma_column(k, m, s),
                FixPhi::Basis(vec![FreeWord::gen(1), FreeWord::gen(2)]),
                *t,
                format!(
                    "retraction onto <x1,x2>; kernel of index {} via exponent sum of x1",
                    r - 1
                ),
            )?),
            _ => None,
        };
        if recipe.is_some() {
            return Ok(recipe);
        }
    }
    Ok(None)
}

/// A verified-constructible endomorphism realizing `t`, or `None` when the
/// type is fixed only by constructions not reproduced here.
pub fn witness(amb: &AmbientSpec, t: &SubgroupType) -> Result<Option<WitnessRecipe>> {
    let v = classify(amb, t)?;
    if !v.end_fixed {
        return Err(Error::NotEndFixed(format!("{} in {}", t, amb)));
    }
    construct(amb, t)
}

/// Oracle bounds `(word length, abelian box)` small enough for a quick
/// exhaustive cross-check.
pub fn default_oracle_bounds(amb: &AmbientSpec) -> (usize, i64) {
    let bound: i64 = if amb.m <= 1 { 2 } else { 1 };
    let budget: u128 = if amb.is_surface() { 3_000 } else { 30_000 };
    let vectors = (2 * bound as u128 + 1).pow(amb.m as u32);
    let mut len = 0;
    while len < 8 && reduced_word_count(amb.base_rank(), len + 1) * vectors <= budget {
        len += 1;
    }
    (len, bound)
}

/// Recomputes the fixed subgroup and compares with the recipe; when the
/// report has a membership test, also compares it against the exhaustive
/// oracle at [`default_oracle_bounds`].
pub fn verify_witness(amb: &AmbientSpec, r: &WitnessRecipe) -> bool {
    let report = match (&r.endo, &r.fix_phi) {
        (Endomorphism::Type1(e), Some(f)) => fix(amb, e, f),
        (Endomorphism::Type2(e), _) => fix_type2(amb, e),
        _ => return false,
    };
    let Ok(report) = report else {
        return false;
    };
    if report.subgroup != r.expected {
        return false;
    }
    let (len, bound) = default_oracle_bounds(amb);
    let Ok(fixed) = brute_force_fix(amb, &r.endo, len, bound) else {
        return false;
    };
    let Ok(all) = enumerate_elements(amb, len, bound) else {
        return false;
    };
    let predicted: Vec<_> = all.into_iter().filter(|e| report.contains(amb, e)).collect();
    fixed == predicted
}
