//! Which subgroup types occur as fixed subgroups, with witnesses.
//!
//! The tables cover `F_n × Z^m` (`n ≥ 2`) and `π₁(Σ_g) × Z^m`, `m ≥ 1`,
//! split into `m = 1` and `m ≥ 2`. For `m = 1` the automorphism column is
//! computed twice, from the list of excluded types and from the list of
//! realized types; a disagreement is reported as a table gap.

mod demo;
mod witness;

pub use demo::{cohopf_demo, hopfian_demo, CohopfCertificate, HopfianReport};
pub use witness::{default_oracle_bounds, verify_witness, witness, WitnessRecipe};

use crate::error::{Error, Result};
use crate::prodgrp::{AmbientSpec, Base, SubgroupCore, SubgroupType};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessAvailability {
    Yes,
    No,
    /// Realized, but the only known construction lies outside this crate.
    Cited,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub subgroup: SubgroupType,
    pub aut_fixed: bool,
    pub end_fixed: bool,
    pub witness: WitnessAvailability,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "y" } else { "n" };
        let w = match self.witness {
            WitnessAvailability::Yes => "y",
            WitnessAvailability::No => "n",
            WitnessAvailability::Cited => "cited",
        };
        write!(
            f,
            "type={} aut={} end={} witness={}",
            self.subgroup,
            yn(self.aut_fixed),
            yn(self.end_fixed),
            w
        )
    }
}

/// Every `(core, s)` presentation of the type: `F_1 × Z^s` is also
/// `1 × Z^{s+1}`.
fn readings(t: &SubgroupType) -> Vec<(SubgroupCore, usize)> {
    let mut out = vec![(t.core(), t.s())];
    if t.core() == SubgroupCore::Free(1) {
        out.push((SubgroupCore::Free(0), t.s() + 1));
    }
    out
}

fn any_reading(t: &SubgroupType, pred: impl Fn(SubgroupCore, usize) -> bool) -> bool {
    readings(t).into_iter().any(|(c, s)| pred(c, s))
}

fn check_range(amb: &AmbientSpec) -> Result<()> {
    match amb.base {
        Base::Free(n) if n < 2 => Err(Error::OutOfRange(format!("free rank {} < 2", n))),
        _ if amb.m == 0 => Err(Error::OutOfRange("m = 0".into())),
        _ => Ok(()),
    }
}

/// Whether `t` is the isomorphism type of some subgroup of the ambient.
pub fn is_realizable(amb: &AmbientSpec, t: &SubgroupType) -> bool {
    if t.s() > amb.m {
        return false;
    }
    match (t.core(), &amb.base) {
        (SubgroupCore::Surface(k), Base::Surface(spec)) => {
            let g = spec.genus() as u64;
            k >= g && (k - 1) % (g - 1) == 0
        }
        (SubgroupCore::Surface(_), Base::Free(_)) => false,
        _ => true,
    }
}

/// Types excluded from being fixed subgroups of any endomorphism.
fn end_excluded(amb: &AmbientSpec, t: &SubgroupType) -> bool {
    let m = amb.m;
    any_reading(t, |c, s| match (&amb.base, c) {
        (_, SubgroupCore::FreeInfinite) => s == 0,
        (Base::Free(n), SubgroupCore::Free(r)) => s == m && r > *n as u64,
        (Base::Surface(sp), SubgroupCore::Free(r)) => s == m && r >= sp.rank() as u64,
        (Base::Surface(sp), SubgroupCore::Surface(k)) => s == m && k > sp.genus() as u64,
        _ => false,
    })
}

/// Automorphism column for `m = 1`, from the excluded types.
fn aut_excluded_m1(amb: &AmbientSpec, t: &SubgroupType) -> bool {
    if end_excluded(amb, t) {
        return true;
    }
    any_reading(t, |c, s| match (&amb.base, c, s) {
        (Base::Free(n), SubgroupCore::Free(r), 0) => {
            let n = *n as u64;
            (r % 2 == 0 && r > n) || r > 2 * n
        }
        (Base::Surface(sp), SubgroupCore::Free(r), 0) => {
            let g = sp.genus() as u64;
            (r % 2 == 0 && r >= 2 * g) || r + 1 >= 4 * g
        }
        (Base::Surface(sp), SubgroupCore::Surface(k), 0) => {
            let g = sp.genus() as u64;
            k > g && k != 2 * g - 1
        }
        _ => false,
    })
}

/// Automorphism column for `m = 1`, from the realized types.
fn aut_realized_m1(amb: &AmbientSpec, t: &SubgroupType) -> bool {
    any_reading(t, |c, s| match (&amb.base, c) {
        (Base::Free(n), SubgroupCore::Free(r)) => {
            let n = *n as u64;
            (s == 0 && r % 2 == 1 && r < 2 * n) || (s <= 1 && r <= n)
        }
        (Base::Free(_), SubgroupCore::FreeInfinite) => s == 1,
        (Base::Surface(sp), SubgroupCore::Free(r)) => {
            let g = sp.genus() as u64;
            (s == 0 && r % 2 == 1 && r < 4 * g - 2) || (s <= 1 && r < 2 * g)
        }
        (Base::Surface(_), SubgroupCore::FreeInfinite) => s == 1,
        (Base::Surface(sp), SubgroupCore::Surface(k)) => {
            let g = sp.genus() as u64;
            (s == 0 && k == 2 * g - 1) || (s <= 1 && k == g)
        }
        (Base::Free(_), SubgroupCore::Surface(_)) => false,
    })
}

pub fn classify(amb: &AmbientSpec, t: &SubgroupType) -> Result<Verdict> {
    check_range(amb)?;
    if !is_realizable(amb, t) {
        return Err(Error::NotASubgroup(format!("{} in {}", t, amb)));
    }
    let end_fixed = !end_excluded(amb, t);
    let aut_fixed = if amb.m >= 2 {
        end_fixed
    } else {
        let by_exclusion = !aut_excluded_m1(amb, t);
        if by_exclusion != aut_realized_m1(amb, t) {
            return Err(Error::TableGap(format!("{} in {}", t, amb)));
        }
        by_exclusion
    };
    let witness = if !end_fixed {
        WitnessAvailability::No
    } else if witness::construct(amb, t)?.is_some() {
        WitnessAvailability::Yes
    } else {
        WitnessAvailability::Cited
    };
    Ok(Verdict {
        subgroup: *t,
        aut_fixed,
        end_fixed,
        witness,
    })
}

/// All subgroup types with free rank at most `max_rank`, surface genus at
/// most `max_genus` and central rank at most `m`, without duplicates.
pub fn enumerate_types(
    amb: &AmbientSpec,
    max_rank: u64,
    max_genus: u64,
    include_infinite: bool,
) -> Vec<SubgroupType> {
    let mut out = BTreeSet::new();
    for s in 0..=amb.m {
        for t in 0..=max_rank {
            out.insert(SubgroupType::new(SubgroupCore::Free(t), s));
        }
        if include_infinite {
            out.insert(SubgroupType::new(SubgroupCore::FreeInfinite, s));
        }
        if let Base::Surface(spec) = &amb.base {
            let g = spec.genus() as u64;
            let mut k = g;
            while k <= max_genus {
                out.insert(SubgroupType::new(SubgroupCore::Surface(k), s));
                k += g - 1;
            }
        }
    }
    out.into_iter().filter(|t| is_realizable(amb, t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> SubgroupType {
        s.parse().unwrap()
    }

    #[test]
    fn table_examples() {
        let v = classify(&AmbientSpec::free(3, 2), &t("F5xZ^2")).unwrap();
        assert!(!v.aut_fixed && !v.end_fixed);
        let v = classify(&AmbientSpec::free(2, 1), &t("F4")).unwrap();
        assert!(!v.aut_fixed && v.end_fixed);
        assert_eq!(v.to_string(), "type=F4 aut=n end=y witness=y");
        let v = classify(&AmbientSpec::surface(2, 1).unwrap(), &t("Surface4")).unwrap();
        assert!(!v.aut_fixed && v.end_fixed);
    }

    #[test]
    fn range_and_realizability() {
        assert!(matches!(
            classify(&AmbientSpec::free(1, 1), &t("F1")),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!(
            classify(&AmbientSpec::free(2, 0), &t("F1")),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!(
            classify(&AmbientSpec::free(2, 1), &t("F1xZ^2")),
            Err(Error::NotASubgroup(_))
        ));
        let s = AmbientSpec::surface(3, 1).unwrap();
        assert!(matches!(classify(&s, &t("Surface4")), Err(Error::NotASubgroup(_))));
        assert!(classify(&s, &t("Surface5")).is_ok());
        assert!(matches!(
            classify(&AmbientSpec::free(2, 1), &t("Surface2")),
            Err(Error::NotASubgroup(_))
        ));
    }

    #[test]
    fn enumeration_examples() {
        let amb = AmbientSpec::free(2, 1);
        let got = enumerate_types(&amb, 2, 0, true);
        let want: BTreeSet<SubgroupType> = ["1", "Z", "F2", "Z^2", "F2xZ", "Finf", "FinfxZ"]
            .iter()
            .map(|x| t(x))
            .collect();
        assert_eq!(got.into_iter().collect::<BTreeSet<_>>(), want);
        let s = AmbientSpec::surface(2, 1).unwrap();
        let got = enumerate_types(&s, 0, 3, false);
        assert!(got.contains(&t("Surface2")) && got.contains(&t("Surface3xZ")));
        assert!(!got.iter().any(|x| matches!(x.core(), SubgroupCore::Surface(k) if k > 3)));
        let bare = enumerate_types(&amb, 0, 0, false);
        assert_eq!(bare, vec![t("1"), t("Z")]);
    }

    #[test]
    fn m1_tables_are_consistent() {
        for amb in [
            AmbientSpec::free(2, 1),
            AmbientSpec::free(3, 1),
            AmbientSpec::surface(2, 1).unwrap(),
            AmbientSpec::surface(3, 1).unwrap(),
        ] {
            for ty in enumerate_types(&amb, 16, 16, true) {
                let v = classify(&amb, &ty).unwrap();
                assert!(!v.aut_fixed || v.end_fixed, "{}", ty);
            }
        }
    }
}
