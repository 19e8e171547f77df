use super::{AmbientSpec, Base, Endomorphism, ProdElement, SubgroupCore, SubgroupType};
use crate::error::{Error, Result};
use crate::freegrp::{enumerate_reduced_words, reduced_word_count};
use crate::Int;
use rayon::prelude::*;

/// Largest number of candidate elements the oracle will test.
pub const ORACLE_BUDGET: u128 = 20_000_000;

/// All `(u, a)` with `u` reduced of length at most `max_len` and
/// `|a_i| ≤ bound`, in enumeration order.
pub fn enumerate_elements(amb: &AmbientSpec, max_len: usize, bound: i64) -> Result<Vec<ProdElement>> {
    let words = reduced_word_count(amb.base_rank(), max_len);
    let vectors = (2 * bound as u128 + 1).saturating_pow(amb.m as u32);
    if bound < 0 || words.saturating_mul(vectors) > ORACLE_BUDGET {
        return Err(Error::Budget(format!(
            "{} words x {} vectors exceeds {}",
            words, vectors, ORACLE_BUDGET
        )));
    }
    let vecs = abelian_box(amb.m, bound);
    Ok(enumerate_reduced_words(amb.base_rank(), max_len)
        .into_iter()
        .flat_map(|u| {
            vecs.iter()
                .map(move |a| ProdElement::new(u.clone(), a.clone()))
        })
        .collect())
}

fn abelian_box(m: usize, bound: i64) -> Vec<Vec<Int>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|v: Vec<Int>| {
                (-bound..=bound).map(move |x| {
                    let mut w = v.clone();
                    w.push(Int::from(x));
                    w
                })
            })
            .collect();
    }
    out
}

/// Every enumerated element with `Ψ(e) = e`, tested in parallel.
/// Surface words are compared with Dehn's algorithm.
pub fn brute_force_fix(
    amb: &AmbientSpec,
    psi: &Endomorphism,
    max_len: usize,
    bound: i64,
) -> Result<Vec<ProdElement>> {
    let all = enumerate_elements(amb, max_len, bound)?;
    Ok(all
        .into_par_iter()
        .filter(|e| amb.elem_eq(&psi.apply_unchecked(amb, e), e))
        .collect())
}

/// Names the exclusion theorem a fixed-subgroup type would contradict.
pub fn exclusion_violation(amb: &AmbientSpec, t: &SubgroupType) -> Option<String> {
    let m = amb.m;
    if t.core() == SubgroupCore::FreeInfinite && t.s() == 0 {
        return Some(format!("{} has an infinitely generated fixed subgroup", t));
    }
    let (core, s) = t.with_s(m)?;
    match (&amb.base, core) {
        (Base::Free(n), SubgroupCore::Free(r)) if r > *n as u64 => {
            Some(format!("F{} x Z^{} with {} > n = {}", r, s, r, n))
        }
        (Base::Surface(spec), SubgroupCore::Free(r)) if r >= spec.rank() as u64 => {
            Some(format!("F{} x Z^{} with {} >= 2g = {}", r, s, r, spec.rank()))
        }
        (Base::Surface(spec), SubgroupCore::Surface(k)) if k > spec.genus() as u64 => {
            Some(format!("Surface{} x Z^{} with {} > g = {}", k, s, k, spec.genus()))
        }
        _ => None,
    }
}
