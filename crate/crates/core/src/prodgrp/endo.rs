use super::{AmbientSpec, Base, ProdElement};
use crate::error::{Error, Result};
use crate::freegrp::{enumerate_reduced_words, reduced_word_count, FreeHomo, FreeWord};
use crate::intlin::{det, dot, inverse_unimodular, is_zero_vec, row_times, vec_add};
use crate::surfgrp::SurfaceGroupSpec;
use crate::{Int, IntMatrix};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// `u t^a ↦ φ(u) t^{aQ + ūP}`, where `ū` is the abelianization of `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoType1 {
    phi: FreeHomo,
    q: IntMatrix,
    p: IntMatrix,
    phi_inverse: Option<FreeHomo>,
}

/// `u t^a ↦ z^{a·l + ū·h} t^{aQ + ūP}`; the image is abelian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoType2 {
    z: FreeWord,
    l: Vec<Int>,
    h: Vec<Int>,
    q: IntMatrix,
    p: IntMatrix,
}

/// An endomorphism in canonical form, or a composite evaluated pointwise.
///
/// `Composite(parts)` applies `parts[0]` first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Endomorphism {
    Type1(EndoType1),
    Type2(EndoType2),
    Composite(Vec<Endomorphism>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict3 {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Verdict3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict3::Yes => "yes",
            Verdict3::No => "no",
            Verdict3::Unknown => "unknown",
        })
    }
}

fn check_linear_part(amb: &AmbientSpec, q: &IntMatrix, p: &IntMatrix) -> Result<()> {
    if q.rows() != amb.m || q.cols() != amb.m {
        return Err(Error::Dimension(format!(
            "Q is {}x{}, expected {}x{}",
            q.rows(),
            q.cols(),
            amb.m,
            amb.m
        )));
    }
    if p.rows() != amb.base_rank() || p.cols() != amb.m {
        return Err(Error::Dimension(format!(
            "P is {}x{}, expected {}x{}",
            p.rows(),
            p.cols(),
            amb.base_rank(),
            amb.m
        )));
    }
    Ok(())
}

fn check_base_map(amb: &AmbientSpec, phi: &FreeHomo) -> Result<()> {
    let k = amb.base_rank();
    if phi.source_rank() != k || phi.target_rank() != k {
        return Err(Error::Dimension(format!(
            "phi maps rank {} to rank {}, ambient base has rank {}",
            phi.source_rank(),
            phi.target_rank(),
            k
        )));
    }
    if let Some(spec) = amb.surface_spec() {
        if !spec.validate_endo(phi.images())? {
            return Err(Error::InvalidEndomorphism(
                "images do not satisfy the surface relator".into(),
            ));
        }
    }
    Ok(())
}

fn shorten(amb: &AmbientSpec, w: FreeWord) -> FreeWord {
    match amb.surface_spec() {
        Some(s) => s.dehn_reduce(&w),
        None => w,
    }
}

fn shorten_homo(amb: &AmbientSpec, phi: FreeHomo) -> FreeHomo {
    if !amb.is_surface() {
        return phi;
    }
    let k = phi.target_rank();
    let images = phi.images().iter().map(|w| shorten(amb, w.clone())).collect();
    FreeHomo::new(images, k).expect("ranks unchanged")
}

/// Whether `f ∘ g` is the identity, tested on generators.
fn is_left_inverse(amb: &AmbientSpec, f: &FreeHomo, g: &FreeHomo) -> bool {
    g.images()
        .iter()
        .enumerate()
        .all(|(i, w)| amb.word_eq(&f.apply(w), &FreeWord::gen(i + 1)))
}

/// Finds `w` with `φ(x) = w x w⁻¹` for every generator, if `φ` has the
/// shape `x_1 ↦ c x_1 c⁻¹`.
pub fn detect_inner(amb: &AmbientSpec, phi: &FreeHomo) -> Option<FreeWord> {
    let images = phi.images();
    if images.is_empty() {
        return Some(FreeWord::identity());
    }
    let (c, r) = images[0].cyclic_decomposition();
    if r != FreeWord::gen(1) {
        return None;
    }
    let k = if images.len() >= 2 {
        let inner = c.inverse().mul(&images[1]).mul(&c);
        let letters = inner.letters();
        let lead = letters.first().copied().unwrap_or(0);
        if lead == 1 || lead == -1 {
            lead as i64 * letters.iter().take_while(|&&l| l == lead).count() as i64
        } else {
            0
        }
    } else {
        0
    };
    let w = c.mul(&FreeWord::gen(1).pow(k));
    images
        .iter()
        .enumerate()
        .all(|(i, im)| amb.word_eq(im, &FreeWord::gen(i + 1).conjugate_by(&w)))
        .then_some(w)
}

impl EndoType1 {
    pub fn new(amb: &AmbientSpec, phi: FreeHomo, q: IntMatrix, p: IntMatrix) -> Result<Self> {
        check_base_map(amb, &phi)?;
        check_linear_part(amb, &q, &p)?;
        Ok(EndoType1 {
            phi,
            q,
            p,
            phi_inverse: None,
        })
    }

    pub fn identity(amb: &AmbientSpec) -> Self {
        EndoType1 {
            phi: FreeHomo::identity(amb.base_rank()),
            q: IntMatrix::identity(amb.m),
            p: IntMatrix::zeros(amb.base_rank(), amb.m),
            phi_inverse: Some(FreeHomo::identity(amb.base_rank())),
        }
    }

    /// Attaches a two-sided inverse of `φ`, verified on generators.
    pub fn with_inverse(mut self, amb: &AmbientSpec, inverse: FreeHomo) -> Result<Self> {
        check_base_map(amb, &inverse)?;
        if !is_left_inverse(amb, &self.phi, &inverse) || !is_left_inverse(amb, &inverse, &self.phi)
        {
            return Err(Error::Verification(
                "supplied inverse does not invert phi".into(),
            ));
        }
        self.phi_inverse = Some(inverse);
        Ok(self)
    }

    pub fn phi(&self) -> &FreeHomo {
        &self.phi
    }

    pub fn q(&self) -> &IntMatrix {
        &self.q
    }

    pub fn p(&self) -> &IntMatrix {
        &self.p
    }

    pub fn user_inverse(&self) -> Option<&FreeHomo> {
        self.phi_inverse.as_ref()
    }

    /// Abelianization matrix of `φ` (row `i` is the image of `x_i`).
    pub fn abelianization(&self) -> IntMatrix {
        self.phi.abelianization_matrix()
    }

    fn apply_unchecked(&self, amb: &AmbientSpec, e: &ProdElement) -> ProdElement {
        let ubar = amb.abelianize(&e.u);
        ProdElement {
            u: self.phi.apply(&e.u),
            a: vec_add(&row_times(&e.a, &self.q), &row_times(&ubar, &self.p)),
        }
    }

    /// An inverse of `φ` when one is known: identity, signed, inner, or
    /// user supplied.
    pub fn phi_inverse(&self, amb: &AmbientSpec) -> Option<FreeHomo> {
        if let Some(inv) = &self.phi_inverse {
            return Some(inv.clone());
        }
        if self.phi.as_signed().is_some() {
            return Some(self.phi.clone());
        }
        if let Some(w) = detect_inner(amb, &self.phi) {
            return Some(FreeHomo::inner(amb.base_rank(), &w.inverse()));
        }
        match amb.base {
            Base::Free(_) => self.phi.inverse(NIELSEN_BUDGET),
            Base::Surface(_) => None,
        }
    }

    /// Whether `φ` is an automorphism of the base.
    ///
    /// Exact for free bases. For surface bases this is `yes` when an
    /// inverse is known, `no` when the abelianization is not unimodular
    /// (surface groups are Hopfian and co-Hopfian, so mono, epi and auto
    /// coincide for `φ`), and `unknown` otherwise.
    pub fn phi_auto_verdict(&self, amb: &AmbientSpec) -> Verdict3 {
        match amb.base {
            Base::Free(_) => {
                if self.phi.is_surjective() {
                    Verdict3::Yes
                } else {
                    Verdict3::No
                }
            }
            Base::Surface(_) => {
                if self.phi_inverse(amb).is_some() {
                    Verdict3::Yes
                } else if det(&self.abelianization()).abs() != Int::one() {
                    Verdict3::No
                } else {
                    Verdict3::Unknown
                }
            }
        }
    }

    fn phi_mono_verdict(&self, amb: &AmbientSpec) -> Verdict3 {
        match amb.base {
            Base::Free(_) => {
                if self.phi.is_injective() {
                    Verdict3::Yes
                } else {
                    Verdict3::No
                }
            }
            Base::Surface(_) => self.phi_auto_verdict(amb),
        }
    }

    pub fn is_mono(&self, amb: &AmbientSpec) -> Verdict3 {
        if det(&self.q).is_zero() {
            return Verdict3::No;
        }
        self.phi_mono_verdict(amb)
    }

    pub fn is_epi(&self, amb: &AmbientSpec) -> Verdict3 {
        if det(&self.q).abs() != Int::one() {
            return Verdict3::No;
        }
        self.phi_auto_verdict(amb)
    }

    pub fn is_auto(&self, amb: &AmbientSpec) -> Verdict3 {
        self.is_epi(amb)
    }

    /// `Ψ⁻¹ = (φ⁻¹, Q⁻¹, −M⁻¹ P Q⁻¹)`.
    pub fn invert(&self, amb: &AmbientSpec) -> Result<EndoType1> {
        if self.is_epi(amb) == Verdict3::No {
            return Err(Error::NotAutomorphism);
        }
        let phi_inv = self.phi_inverse(amb).ok_or(Error::InverseUnavailable)?;
        let q_inv = inverse_unimodular(&self.q)?;
        let m_inv = inverse_unimodular(&self.abelianization())?;
        let p = m_inv.mul(&self.p).mul(&q_inv).neg();
        Ok(EndoType1 {
            phi: shorten_homo(amb, phi_inv),
            q: q_inv,
            p,
            phi_inverse: Some(self.phi.clone()),
        })
    }

    /// `self ∘ first` in closed form: `φ = φ₂∘φ₁`, `Q = Q₁Q₂`,
    /// `P = P₁Q₂ + M₁P₂`.
    pub fn after(&self, amb: &AmbientSpec, first: &EndoType1) -> EndoType1 {
        let m1 = first.abelianization();
        let phi_inverse = match (&first.phi_inverse, &self.phi_inverse) {
            (Some(i1), Some(i2)) => Some(shorten_homo(amb, i1.after(i2))),
            _ => None,
        };
        EndoType1 {
            phi: shorten_homo(amb, self.phi.after(&first.phi)),
            q: first.q.mul(&self.q),
            p: first
                .p
                .mul(&self.q)
                .try_add(&m1.mul(&self.p))
                .expect("shapes agree"),
            phi_inverse,
        }
    }
}

impl EndoType2 {
    pub fn new(
        amb: &AmbientSpec,
        z: FreeWord,
        l: Vec<Int>,
        h: Vec<Int>,
        q: IntMatrix,
        p: IntMatrix,
    ) -> Result<Self> {
        if amb.m == 0 {
            return Err(Error::InvalidEndomorphism(
                "type 2 needs a central factor of rank at least 1".into(),
            ));
        }
        check_linear_part(amb, &q, &p)?;
        amb.check_word(&z)?;
        if l.len() != amb.m || h.len() != amb.base_rank() {
            return Err(Error::Dimension(format!(
                "l has length {} (expected {}), h has length {} (expected {})",
                l.len(),
                amb.m,
                h.len(),
                amb.base_rank()
            )));
        }
        if amb.word_is_trivial(&z) {
            return Err(Error::InvalidEndomorphism("z is trivial".into()));
        }
        if is_zero_vec(&l) {
            return Err(Error::InvalidEndomorphism("l is zero".into()));
        }
        if is_proper_power(amb, &z) {
            return Err(Error::InvalidEndomorphism(format!("z = {} is a proper power", z)));
        }
        Ok(EndoType2 { z, l, h, q, p })
    }

    pub fn z(&self) -> &FreeWord {
        &self.z
    }

    pub fn l(&self) -> &[Int] {
        &self.l
    }

    pub fn h(&self) -> &[Int] {
        &self.h
    }

    pub fn q(&self) -> &IntMatrix {
        &self.q
    }

    pub fn p(&self) -> &IntMatrix {
        &self.p
    }

    /// Exponent of `z` in the image of `u t^a`.
    pub fn exponent(&self, amb: &AmbientSpec, e: &ProdElement) -> Int {
        dot(&e.a, &self.l) + dot(&amb.abelianize(&e.u), &self.h)
    }

    fn apply_unchecked(&self, amb: &AmbientSpec, e: &ProdElement) -> ProdElement {
        let ubar = amb.abelianize(&e.u);
        let c = self.exponent(amb, e);
        ProdElement {
            u: self.z.pow(c.to_i64().expect("exponent fits in i64")),
            a: vec_add(&row_times(&e.a, &self.q), &row_times(&ubar, &self.p)),
        }
    }
}

/// Roots are searched exhaustively up to this many candidate words.
const ROOT_SEARCH_WORDS: u128 = 5_000;

/// Whether `z = w^j` with `j ≥ 2`. Exact for free bases; for surface bases
/// the Dehn-reduced form is tested syntactically and, when small enough,
/// every root of length at most `|z|/2` is tried.
pub fn is_proper_power(amb: &AmbientSpec, z: &FreeWord) -> bool {
    match &amb.base {
        Base::Free(_) => z.is_proper_power(),
        Base::Surface(spec) => surface_proper_power(spec, z),
    }
}

fn surface_proper_power(spec: &SurfaceGroupSpec, z: &FreeWord) -> bool {
    let z = spec.dehn_reduce(z);
    if z.is_proper_power() {
        return true;
    }
    let half = z.len() / 2;
    if reduced_word_count(spec.rank(), half) > ROOT_SEARCH_WORDS {
        return false;
    }
    let zbar = spec.abelianize(&z);
    enumerate_reduced_words(spec.rank(), half)
        .into_iter()
        .filter(|w| !w.is_identity())
        .any(|w| {
            let wbar = spec.abelianize(&w);
            (2..=z.len().max(2) as i64).any(|j| {
                let scaled: Vec<Int> = wbar.iter().map(|x| x * j).collect();
                scaled == zbar && spec.equal(&w.pow(j), &z)
            })
        })
}

impl Endomorphism {
    pub fn identity(amb: &AmbientSpec) -> Self {
        Endomorphism::Type1(EndoType1::identity(amb))
    }

    pub fn apply(&self, amb: &AmbientSpec, e: &ProdElement) -> Result<ProdElement> {
        amb.check_element(e)?;
        Ok(self.apply_unchecked(amb, e))
    }

    pub(crate) fn apply_unchecked(&self, amb: &AmbientSpec, e: &ProdElement) -> ProdElement {
        match self {
            Endomorphism::Type1(t) => t.apply_unchecked(amb, e),
            Endomorphism::Type2(t) => t.apply_unchecked(amb, e),
            Endomorphism::Composite(parts) => parts
                .iter()
                .fold(e.clone(), |x, part| part.apply_unchecked(amb, &x)),
        }
    }

    fn parts(&self) -> Vec<Endomorphism> {
        match self {
            Endomorphism::Composite(p) => p.clone(),
            other => vec![other.clone()],
        }
    }

    fn has_abelian_image(&self) -> bool {
        match self {
            Endomorphism::Type1(_) => false,
            Endomorphism::Type2(_) => true,
            Endomorphism::Composite(p) => p.iter().any(|x| x.has_abelian_image()),
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, amb: &AmbientSpec, first: &Endomorphism) -> Endomorphism {
        match (self, first) {
            (Endomorphism::Type1(a), Endomorphism::Type1(b)) => {
                Endomorphism::Type1(a.after(amb, b))
            }
            _ => {
                let mut parts = first.parts();
                parts.extend(self.parts());
                Endomorphism::Composite(parts)
            }
        }
    }

    fn verdict(&self, one: &dyn Fn(&EndoType1) -> Verdict3) -> Verdict3 {
        // nonabelian groups admit no injection into, or surjection onto,
        // an abelian image
        if self.has_abelian_image() {
            return Verdict3::No;
        }
        match self {
            Endomorphism::Type1(t) => one(t),
            Endomorphism::Type2(_) => Verdict3::No,
            Endomorphism::Composite(parts) => {
                if parts.iter().all(|p| p.verdict(one) == Verdict3::Yes) {
                    Verdict3::Yes
                } else {
                    Verdict3::Unknown
                }
            }
        }
    }

    pub fn is_mono(&self, amb: &AmbientSpec) -> Verdict3 {
        self.verdict(&|t| t.is_mono(amb))
    }

    pub fn is_epi(&self, amb: &AmbientSpec) -> Verdict3 {
        self.verdict(&|t| t.is_epi(amb))
    }

    /// Product groups in scope are Hopfian, so automorphisms are exactly
    /// the epimorphisms.
    pub fn is_auto(&self, amb: &AmbientSpec) -> Verdict3 {
        self.is_epi(amb)
    }

    pub fn invert(&self, amb: &AmbientSpec) -> Result<Endomorphism> {
        match self {
            Endomorphism::Type1(t) => Ok(Endomorphism::Type1(t.invert(amb)?)),
            _ if self.has_abelian_image() => Err(Error::NotAutomorphism),
            _ => Err(Error::InverseUnavailable),
        }
    }

    /// Whether `self` fixes every generator of the ambient group.
    pub fn is_identity_on_generators(&self, amb: &AmbientSpec) -> bool {
        amb.generators()
            .iter()
            .all(|g| amb.elem_eq(&self.apply_unchecked(amb, g), g))
    }
}

/// Tuples explored when inverting a free automorphism.
const NIELSEN_BUDGET: usize = 200_000;

pub fn compose(amb: &AmbientSpec, second: &Endomorphism, first: &Endomorphism) -> Endomorphism {
    second.after(amb, first)
}
