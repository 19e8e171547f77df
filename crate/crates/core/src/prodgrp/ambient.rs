use crate::error::{Error, Result};
use crate::freegrp::FreeWord;
use crate::intlin::{vec_add, vec_neg};
use crate::surfgrp::SurfaceGroupSpec;
use crate::Int;
use num_traits::Zero;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Base {
    Free(usize),
    Surface(SurfaceGroupSpec),
}

/// `base × Z^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbientSpec {
    pub base: Base,
    pub m: usize,
}

impl AmbientSpec {
    pub fn free(n: usize, m: usize) -> Self {
        AmbientSpec {
            base: Base::Free(n),
            m,
        }
    }

    pub fn surface(g: usize, m: usize) -> Result<Self> {
        Ok(AmbientSpec {
            base: Base::Surface(SurfaceGroupSpec::new(g)?),
            m,
        })
    }

    /// Number of base generators: `n`, or `2g`.
    pub fn base_rank(&self) -> usize {
        match &self.base {
            Base::Free(n) => *n,
            Base::Surface(s) => s.rank(),
        }
    }

    pub fn surface_spec(&self) -> Option<&SurfaceGroupSpec> {
        match &self.base {
            Base::Surface(s) => Some(s),
            Base::Free(_) => None,
        }
    }

    pub fn is_surface(&self) -> bool {
        self.surface_spec().is_some()
    }

    /// Equality in the base group.
    pub fn word_eq(&self, a: &FreeWord, b: &FreeWord) -> bool {
        match &self.base {
            Base::Free(_) => a == b,
            Base::Surface(s) => s.equal(a, b),
        }
    }

    pub fn word_is_trivial(&self, w: &FreeWord) -> bool {
        match &self.base {
            Base::Free(_) => w.is_identity(),
            Base::Surface(s) => s.is_trivial(w),
        }
    }

    pub fn elem_eq(&self, x: &ProdElement, y: &ProdElement) -> bool {
        x.a == y.a && self.word_eq(&x.u, &y.u)
    }

    pub fn abelianize(&self, w: &FreeWord) -> Vec<Int> {
        w.abelianize(self.base_rank())
    }

    pub fn check_word(&self, w: &FreeWord) -> Result<()> {
        w.check_rank(self.base_rank())
    }

    pub fn check_element(&self, e: &ProdElement) -> Result<()> {
        self.check_word(&e.u)?;
        if e.a.len() != self.m {
            return Err(Error::Dimension(format!(
                "abelian part has length {}, expected {}",
                e.a.len(),
                self.m
            )));
        }
        Ok(())
    }

    pub fn identity(&self) -> ProdElement {
        ProdElement {
            u: FreeWord::identity(),
            a: vec![Int::zero(); self.m],
        }
    }

    pub fn mult(&self, x: &ProdElement, y: &ProdElement) -> Result<ProdElement> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(ProdElement {
            u: x.u.mul(&y.u),
            a: vec_add(&x.a, &y.a),
        })
    }

    pub fn inv(&self, x: &ProdElement) -> Result<ProdElement> {
        self.check_element(x)?;
        Ok(ProdElement {
            u: x.u.inverse(),
            a: vec_neg(&x.a),
        })
    }

    /// Generators `x_1..x_k, t_1..t_m` as elements.
    pub fn generators(&self) -> Vec<ProdElement> {
        let mut out: Vec<ProdElement> = (1..=self.base_rank())
            .map(|k| ProdElement {
                u: FreeWord::gen(k),
                a: vec![Int::zero(); self.m],
            })
            .collect();
        for j in 0..self.m {
            let mut a = vec![Int::zero(); self.m];
            a[j] = Int::from(1);
            out.push(ProdElement {
                u: FreeWord::identity(),
                a,
            });
        }
        out
    }
}

impl fmt::Display for AmbientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.base {
            Base::Free(n) => write!(f, "free n={} m={}", n, self.m),
            Base::Surface(s) => write!(f, "surface g={} m={}", s.genus(), self.m),
        }
    }
}

/// `u · t^a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProdElement {
    pub u: FreeWord,
    pub a: Vec<Int>,
}

impl ProdElement {
    pub fn new(u: FreeWord, a: Vec<Int>) -> Self {
        ProdElement { u, a }
    }

    pub fn from_i64(u: &[i32], a: &[i64]) -> Self {
        ProdElement {
            u: FreeWord::reduce(u.iter().copied()),
            a: a.iter().map(|&x| Int::from(x)).collect(),
        }
    }
}

impl fmt::Display for ProdElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.a.iter().map(|x| x.to_string()).collect();
        write!(f, "{} ; [{}]", self.u, a.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_examples() {
        let amb = AmbientSpec::free(2, 2);
        let x = ProdElement::from_i64(&[1], &[1, 0]);
        let y = ProdElement::from_i64(&[-1], &[0, 1]);
        assert_eq!(amb.mult(&x, &y).unwrap(), ProdElement::from_i64(&[], &[1, 1]));
        let z = ProdElement::from_i64(&[1, 2], &[2, -1]);
        assert_eq!(amb.inv(&z).unwrap(), ProdElement::from_i64(&[-2, -1], &[-2, 1]));
        assert_eq!(amb.mult(&z, &amb.identity()).unwrap(), z);
        assert!(amb.mult(&z, &ProdElement::from_i64(&[], &[1])).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(ProdElement::from_i64(&[1], &[0]).to_string(), "x1 ; [0]");
        assert_eq!(ProdElement::from_i64(&[], &[]).to_string(), "1 ; []");
        assert_eq!(AmbientSpec::surface(2, 1).unwrap().to_string(), "surface g=2 m=1");
    }

    #[test]
    fn surface_equality_is_semantic() {
        let amb = AmbientSpec::surface(2, 0).unwrap();
        let r = amb.surface_spec().unwrap().relator();
        assert!(amb.word_eq(&r, &FreeWord::identity()));
        assert_eq!(amb.generators().len(), 4);
    }
}
