//! Free-group machinery: reduced words, homomorphisms, Stallings foldings
//! and Schreier kernels of maps to finite abelian groups.

mod homo;
mod schreier;
mod stallings;
mod word;

pub use homo::{signed_fix, FreeHomo, SignedClassEndo};
pub use schreier::{
    cyclic_moduli, kernel_of_abelian_map, maps_to_zero, schreier_generators, AbelianCosets, AbelianKernel, MAX_COSETS,
};
pub use stallings::{GraphIndex, StallingsGraph};
pub use word::FreeWord;

/// All freely reduced words of length at most `max_len` over `rank`
/// generators, shortest first and lexicographic within a length.
pub fn enumerate_reduced_words(rank: usize, max_len: usize) -> Vec<FreeWord> {
    let letters: Vec<i32> = (1..=rank as i32).flat_map(|k| [k, -k]).collect();
    let mut out = vec![FreeWord::identity()];
    let mut layer = vec![Vec::<i32>::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.last() == Some(&-l) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().map(|v| FreeWord::reduce(v.iter().copied())));
        layer = next;
    }
    out
}

/// Number of reduced words of length at most `max_len` over `rank` letters.
pub fn reduced_word_count(rank: usize, max_len: usize) -> u128 {
    if rank == 0 {
        return 1;
    }
    let mut total: u128 = 1;
    let mut layer: u128 = 2 * rank as u128;
    for _ in 0..max_len {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(2 * rank as u128 - 1);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        for rank in 0..3 {
            for len in 0..5 {
                assert_eq!(
                    enumerate_reduced_words(rank, len).len() as u128,
                    reduced_word_count(rank, len)
                );
            }
        }
        assert_eq!(reduced_word_count(2, 6), 1457);
    }
}
