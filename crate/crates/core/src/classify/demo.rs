use crate::error::{Error, Result};
use crate::freegrp::{FreeHomo, FreeWord};
use crate::prodgrp::random::{random_free_type1, random_surface_type1, random_unimodular};
use crate::prodgrp::{compose, AmbientSpec, Base, EndoType1, Endomorphism, Verdict3};
use crate::IntMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A proper self-embedding of `F_n × Z`.
#[derive(Clone, Debug)]
pub struct CohopfCertificate {
    pub endo: EndoType1,
    /// Rank of the image of the base map (equal to `n` for an injection).
    pub image_rank: usize,
    pub mono: Verdict3,
    /// Whether `x2` lies in the image; `false` certifies properness.
    pub x2_in_image: bool,
}

impl CohopfCertificate {
    pub fn is_proper_embedding(&self) -> bool {
        self.mono == Verdict3::Yes && !self.x2_in_image
    }
}

/// `x1 ↦ x1`, `x_j ↦ (x2 x1) x_j (x2 x1)⁻¹` for `j ≥ 2`, `t ↦ t`.
pub fn cohopf_demo(amb: &AmbientSpec) -> Result<CohopfCertificate> {
    let n = match amb.base {
        Base::Free(n) if n >= 2 && amb.m == 1 => n,
        _ => {
            return Err(Error::OutOfRange(format!(
                "needs a free base of rank >= 2 and m = 1, got {}",
                amb
            )))
        }
    };
    let conj = FreeWord::reduce([2, 1]);
    let images = (1..=n)
        .map(|j| {
            if j == 1 {
                FreeWord::gen(1)
            } else {
                FreeWord::gen(j).conjugate_by(&conj)
            }
        })
        .collect();
    let phi = FreeHomo::new(images, n)?;
    let graph = phi.image_graph();
    let endo = EndoType1::new(amb, phi, IntMatrix::identity(1), IntMatrix::zeros(n, 1))?;
    Ok(CohopfCertificate {
        image_rank: graph.rank(),
        mono: endo.is_mono(amb),
        x2_in_image: graph.member(&FreeWord::gen(2)),
        endo,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HopfianReport {
    pub trials: usize,
    pub epi: usize,
    pub mono: usize,
    pub epi_unknown: usize,
    /// Epimorphisms whose inverse was built and checked on generators.
    pub inverted: usize,
    /// Epimorphisms that are not monomorphisms, or whose inverse fails.
    pub violations: usize,
}

/// Random first-kind endomorphisms: every epimorphism must be a
/// monomorphism and invert correctly.
pub fn hopfian_demo(amb: &AmbientSpec, trials: usize, seed: u64) -> HopfianReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = HopfianReport {
        trials,
        ..Default::default()
    };
    for _ in 0..trials {
        let e = match amb.base {
            Base::Free(_) => random_free_type1(&mut rng, amb, 2),
            Base::Surface(_) => {
                let (e, _) = random_surface_type1(&mut rng, amb, 2);
                if rng.gen_bool(0.5) {
                    let q = random_unimodular(&mut rng, amb.m, 6);
                    EndoType1::new(amb, e.phi().clone(), q, e.p().clone())
                        .expect("shapes unchanged")
                } else {
                    e
                }
            }
        };
        let mono = e.is_mono(amb);
        if mono == Verdict3::Yes {
            report.mono += 1;
        }
        match e.is_epi(amb) {
            Verdict3::Yes => {
                report.epi += 1;
                let ok_inverse = match e.invert(amb) {
                    Ok(inv) => {
                        let (a, b) = (Endomorphism::Type1(e.clone()), Endomorphism::Type1(inv));
                        compose(amb, &a, &b).is_identity_on_generators(amb)
                            && compose(amb, &b, &a).is_identity_on_generators(amb)
                    }
                    Err(_) => false,
                };
                if ok_inverse {
                    report.inverted += 1;
                }
                if mono != Verdict3::Yes || !ok_inverse {
                    report.violations += 1;
                }
            }
            Verdict3::Unknown => report.epi_unknown += 1,
            Verdict3::No => {}
        }
    }
    report
}
