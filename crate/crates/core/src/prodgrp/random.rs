//! Seeded random endomorphisms for demonstrations and property tests.

use super::{AmbientSpec, Base, EndoType1, EndoType2, Endomorphism, FixPhi};
use crate::freegrp::{signed_fix, FreeHomo, FreeWord, SignedClassEndo};
use crate::{Int, IntMatrix};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data = (0..rows)
        .map(|_| (0..cols).map(|_| Int::from(rng.gen_range(-bound..=bound))).collect())
        .collect();
    IntMatrix::from_rows(data, cols).expect("uniform rows")
}

pub fn random_vector<R: Rng>(rng: &mut R, len: usize, bound: i64) -> Vec<Int> {
    (0..len).map(|_| Int::from(rng.gen_range(-bound..=bound))).collect()
}

/// Freely reduced random word of length exactly `len` (for `rank ≥ 1`).
pub fn random_word<R: Rng>(rng: &mut R, rank: usize, len: usize) -> FreeWord {
    let mut letters: Vec<i32> = Vec::with_capacity(len);
    while letters.len() < len && rank > 0 {
        let g = rng.gen_range(1..=rank as i32);
        let l = if rng.gen_bool(0.5) { g } else { -g };
        if letters.last() != Some(&-l) {
            letters.push(l);
        }
    }
    FreeWord::reduce(letters)
}

/// Product of random elementary moves and sign changes: unimodular.
pub fn random_unimodular<R: Rng>(rng: &mut R, m: usize, steps: usize) -> IntMatrix {
    let mut q = IntMatrix::identity(m);
    if m == 0 {
        return q;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..m);
        let j = rng.gen_range(0..m);
        let mut e = IntMatrix::identity(m);
        if i != j {
            e[(i, j)] = Int::from(if rng.gen_bool(0.5) { 1 } else { -1 });
        } else {
            e[(i, i)] = Int::from(-1);
        }
        q = q.mul(&e);
    }
    q
}

/// Random signed class `φ` with its fixed basis.
pub fn random_signed<R: Rng>(rng: &mut R, n: usize) -> (FreeHomo, FixPhi) {
    let fixed: Vec<usize> = (1..=n).filter(|_| rng.gen_bool(0.5)).collect();
    let s = SignedClassEndo::new(n, fixed).expect("indices in range");
    (s.to_homo(), FixPhi::Basis(signed_fix(&s)))
}

/// Random first-kind endomorphism of a free-base ambient with signed `φ`.
pub fn random_signed_type1<R: Rng>(
    rng: &mut R,
    amb: &AmbientSpec,
    bound: i64,
) -> (EndoType1, FixPhi) {
    let (phi, fix_phi) = random_signed(rng, amb.base_rank());
    let q = random_matrix(rng, amb.m, amb.m, bound);
    let p = random_matrix(rng, amb.base_rank(), amb.m, bound);
    (EndoType1::new(amb, phi, q, p).expect("consistent shapes"), fix_phi)
}

/// Random second-kind endomorphism; `z` is a random word that is not a
/// proper power.
pub fn random_type2<R: Rng>(rng: &mut R, amb: &AmbientSpec, bound: i64, max_z_len: usize) -> EndoType2 {
    loop {
        let len = rng.gen_range(1..=max_z_len.max(1));
        let z = random_word(rng, amb.base_rank(), len);
        let l = random_vector(rng, amb.m, bound);
        let h = random_vector(rng, amb.base_rank(), bound);
        let q = random_matrix(rng, amb.m, amb.m, bound);
        let p = random_matrix(rng, amb.base_rank(), amb.m, bound);
        if let Ok(e) = EndoType2::new(amb, z, l, h, q, p) {
            return e;
        }
    }
}

/// Random automorphism of `F_n` from Nielsen moves, with its inverse.
pub fn random_nielsen<R: Rng>(rng: &mut R, n: usize, steps: usize) -> (FreeHomo, FreeHomo) {
    let mut phi = FreeHomo::identity(n);
    let mut inv = FreeHomo::identity(n);
    if n == 0 {
        return (phi, inv);
    }
    for _ in 0..steps {
        let i = rng.gen_range(1..=n);
        let j = rng.gen_range(1..=n);
        let mut mv: Vec<FreeWord> = (1..=n).map(FreeWord::gen).collect();
        let mut mv_inv = mv.clone();
        let xi = FreeWord::gen(i);
        let xj = FreeWord::gen(j);
        match rng.gen_range(0..3) {
            0 if i != j => {
                mv[i - 1] = xi.mul(&xj);
                mv_inv[i - 1] = xi.mul(&xj.inverse());
            }
            1 if i != j => {
                mv[i - 1] = xj.mul(&xi);
                mv_inv[i - 1] = xj.inverse().mul(&xi);
            }
            _ => {
                mv[i - 1] = xi.inverse();
                mv_inv[i - 1] = xi.inverse();
            }
        }
        let mv = FreeHomo::new(mv, n).expect("rank");
        let mv_inv = FreeHomo::new(mv_inv, n).expect("rank");
        phi = phi.after(&mv);
        inv = mv_inv.after(&inv);
    }
    (phi, inv)
}

/// Random automorphism of a free-base ambient: signed `φ` or Nielsen
/// product, unimodular `Q`, arbitrary `P`.
pub fn random_automorphism<R: Rng>(rng: &mut R, amb: &AmbientSpec, bound: i64) -> EndoType1 {
    let n = amb.base_rank();
    let (phi, inv) = if rng.gen_bool(0.5) {
        let (phi, _) = random_signed(rng, n);
        (phi.clone(), phi)
    } else {
        random_nielsen(rng, n, 4)
    };
    let q = random_unimodular(rng, amb.m, 6);
    let p = random_matrix(rng, n, amb.m, bound);
    EndoType1::new(amb, phi, q, p)
        .and_then(|e| e.with_inverse(amb, inv))
        .expect("valid automorphism")
}

/// Random first-kind endomorphism of a free-base ambient whose `φ` is
/// either a Nielsen automorphism or a non-surjective map.
pub fn random_free_type1<R: Rng>(rng: &mut R, amb: &AmbientSpec, bound: i64) -> EndoType1 {
    let n = amb.base_rank();
    let q = if rng.gen_bool(0.5) {
        random_unimodular(rng, amb.m, 6)
    } else {
        random_matrix(rng, amb.m, amb.m, bound)
    };
    let p = random_matrix(rng, n, amb.m, bound);
    if rng.gen_bool(0.5) {
        let (phi, inv) = random_nielsen(rng, n, 4);
        EndoType1::new(amb, phi, q, p)
            .and_then(|e| e.with_inverse(amb, inv))
            .expect("valid automorphism")
    } else {
        let images = (0..n)
            .map(|_| {
                let len = rng.gen_range(0..=3);
                random_word(rng, n, len)
            })
            .collect();
        let phi = FreeHomo::new(images, n).expect("rank");
        EndoType1::new(amb, phi, q, p).expect("consistent shapes")
    }
}

/// Surface endomorphisms with known fixed subgroups: the identity, an
/// inner automorphism by a generator, or the retraction onto `⟨x1, x2⟩`.
pub fn random_surface_type1<R: Rng>(
    rng: &mut R,
    amb: &AmbientSpec,
    bound: i64,
) -> (EndoType1, FixPhi) {
    let Base::Surface(spec) = &amb.base else {
        panic!("surface ambient expected");
    };
    let k = spec.rank();
    let (phi, fix_phi) = match rng.gen_range(0..3) {
        0 => (FreeHomo::identity(k), FixPhi::Whole),
        1 => {
            let i = rng.gen_range(1..=k);
            (FreeHomo::inner(k, &FreeWord::gen(i)), FixPhi::Basis(vec![FreeWord::gen(i)]))
        }
        _ => (
            retraction(k),
            FixPhi::Basis(vec![FreeWord::gen(1), FreeWord::gen(2)]),
        ),
    };
    let q = random_matrix(rng, amb.m, amb.m, bound);
    let p = random_matrix(rng, k, amb.m, bound);
    (EndoType1::new(amb, phi, q, p).expect("valid surface map"), fix_phi)
}

/// `x1 ↦ x1, x2 ↦ x2, x3 ↦ x2, x4 ↦ x1`, remaining generators to 1. Sends
/// the surface relator to `[x1,x2][x2,x1] = 1`, and fixes exactly
/// `⟨x1, x2⟩`, its image.
pub fn retraction(k: usize) -> FreeHomo {
    let images = (1..=k)
        .map(|i| match i {
            1 | 4 => FreeWord::gen(1),
            2 | 3 => FreeWord::gen(2),
            _ => FreeWord::identity(),
        })
        .collect();
    FreeHomo::new(images, k).expect("rank")
}

/// Mixed corpus entry: an endomorphism and, for the first kind, its
/// fixed base subgroup.
pub fn random_corpus_entry<R: Rng>(
    rng: &mut R,
    amb: &AmbientSpec,
    bound: i64,
) -> (Endomorphism, Option<FixPhi>) {
    let type2 = amb.m > 0 && rng.gen_bool(0.5);
    if type2 {
        return (Endomorphism::Type2(random_type2(rng, amb, bound, 4)), None);
    }
    let (e, f) = match amb.base {
        Base::Free(_) => random_signed_type1(rng, amb, bound),
        Base::Surface(_) => random_surface_type1(rng, amb, bound),
    };
    (Endomorphism::Type1(e), Some(f))
}

/// Uniformly random element of `items`.
pub fn pick<'a, T, R: Rng>(rng: &mut R, items: &'a [T]) -> &'a T {
    items.choose(rng).expect("nonempty")
}
