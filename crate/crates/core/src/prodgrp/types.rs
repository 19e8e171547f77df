use crate::error::{Error, Result};
use crate::Int;
use std::fmt;
use std::str::FromStr;

/// Non-abelian-factor part of a subgroup type. `Free(0)` is the trivial
/// group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SubgroupCore {
    Free(u64),
    FreeInfinite,
    Surface(u64),
}

/// Isomorphism type `core × Z^s`.
///
/// Stored canonically: `1 × Z^s` with `s ≥ 1` is rewritten as `F_1 × Z^{s−1}`,
/// so equal groups have equal values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubgroupType {
    core: SubgroupCore,
    s: usize,
}

impl SubgroupType {
    pub fn new(core: SubgroupCore, s: usize) -> Self {
        match core {
            SubgroupCore::Free(0) if s > 0 => SubgroupType {
                core: SubgroupCore::Free(1),
                s: s - 1,
            },
            _ => SubgroupType { core, s },
        }
    }

    pub fn trivial() -> Self {
        Self::new(SubgroupCore::Free(0), 0)
    }

    /// Free abelian group of rank `r`.
    pub fn abelian(r: usize) -> Self {
        Self::new(SubgroupCore::Free(0), r)
    }

    pub fn free(t: u64) -> Self {
        Self::new(SubgroupCore::Free(t), 0)
    }

    pub fn core(&self) -> SubgroupCore {
        self.core
    }

    /// Rank of the central free-abelian factor in canonical form.
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn is_abelian(&self) -> bool {
        matches!(self.core, SubgroupCore::Free(0) | SubgroupCore::Free(1))
    }

    /// Rank of the group when it is free abelian.
    pub fn abelian_rank(&self) -> Option<usize> {
        match self.core {
            SubgroupCore::Free(0) => Some(0),
            SubgroupCore::Free(1) => Some(self.s + 1),
            _ => None,
        }
    }

    /// `core × Z^{s'}` rewritten with the given abelian rank, when it is
    /// expressible that way. `F_1 × Z^{s}` can be read as `1 × Z^{s+1}`.
    pub fn with_s(&self, target_s: usize) -> Option<(SubgroupCore, usize)> {
        if self.s == target_s {
            return Some((self.core, self.s));
        }
        if self.core == SubgroupCore::Free(1) && self.s + 1 == target_s {
            return Some((SubgroupCore::Free(0), target_s));
        }
        None
    }
}

impl fmt::Display for SubgroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.abelian_rank() {
            return if r == 0 {
                write!(f, "1")
            } else {
                write!(f, "Z^{}", r)
            };
        }
        match self.core {
            SubgroupCore::Free(t) => write!(f, "F{}", t)?,
            SubgroupCore::FreeInfinite => write!(f, "Finf")?,
            SubgroupCore::Surface(k) => write!(f, "Surface{}", k)?,
        }
        if self.s > 0 {
            write!(f, "xZ^{}", self.s)?;
        }
        Ok(())
    }
}

impl FromStr for SubgroupType {
    type Err = Error;

    /// Accepts `1`, `Z`, `Z^r`, `F<t>`, `Finf`, `Surface<k>`, each optionally
    /// followed by `xZ` or `xZ^<s>`.
    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad subgroup type `{}`", text));
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let (head, tail) = match t.find('x') {
            Some(i) => (&t[..i], Some(&t[i + 1..])),
            None => (t.as_str(), None),
        };
        let z_power = |z: &str| -> Result<usize> {
            match z {
                "Z" => Ok(1),
                _ => z
                    .strip_prefix("Z^")
                    .and_then(|e| e.parse().ok())
                    .ok_or_else(bad),
            }
        };
        let s = match tail {
            Some(z) => z_power(z)?,
            None => 0,
        };
        let core = if head == "1" {
            SubgroupCore::Free(0)
        } else if head.starts_with('Z') {
            return Ok(Self::abelian(z_power(head)? + s));
        } else if head == "Finf" {
            SubgroupCore::FreeInfinite
        } else if let Some(k) = head.strip_prefix("Surface") {
            let k: u64 = k.parse().map_err(|_| bad())?;
            if k < 2 {
                return Err(bad());
            }
            SubgroupCore::Surface(k)
        } else if let Some(r) = head.strip_prefix('F') {
            SubgroupCore::Free(r.parse().map_err(|_| bad())?)
        } else {
            return Err(bad());
        };
        Ok(Self::new(core, s))
    }
}

/// `[Fix φ : p(Fix Ψ)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndexValue {
    Finite(Int),
    Infinite,
}

impl fmt::Display for IndexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexValue::Finite(d) => write!(f, "{}", d),
            IndexValue::Infinite => write!(f, "inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_abelian_forms() {
        assert_eq!(SubgroupType::abelian(0), SubgroupType::trivial());
        assert_eq!(SubgroupType::abelian(1), SubgroupType::free(1));
        assert_eq!(
            SubgroupType::new(SubgroupCore::Free(0), 3),
            SubgroupType::new(SubgroupCore::Free(1), 2)
        );
        assert_eq!(SubgroupType::abelian(3).to_string(), "Z^3");
        assert_eq!(SubgroupType::trivial().to_string(), "1");
    }

    #[test]
    fn display_and_parse_round_trip() {
        let cases = [
            SubgroupType::free(3),
            SubgroupType::new(SubgroupCore::Free(3), 2),
            SubgroupType::new(SubgroupCore::FreeInfinite, 0),
            SubgroupType::new(SubgroupCore::FreeInfinite, 2),
            SubgroupType::new(SubgroupCore::Surface(4), 0),
            SubgroupType::new(SubgroupCore::Surface(2), 1),
            SubgroupType::abelian(2),
            SubgroupType::trivial(),
        ];
        for t in cases {
            assert_eq!(t.to_string().parse::<SubgroupType>().unwrap(), t);
        }
        assert_eq!("F3xZ^2".parse::<SubgroupType>().unwrap().to_string(), "F3xZ^2");
        assert_eq!("F1xZ".parse::<SubgroupType>().unwrap(), SubgroupType::abelian(2));
        assert_eq!("F0".parse::<SubgroupType>().unwrap(), SubgroupType::trivial());
        assert_eq!("Z".parse::<SubgroupType>().unwrap(), SubgroupType::abelian(1));
        assert!("Surface1".parse::<SubgroupType>().is_err());
        assert!("G7".parse::<SubgroupType>().is_err());
    }

    #[test]
    fn reading_with_other_abelian_rank() {
        let t = SubgroupType::abelian(3);
        assert_eq!(t.with_s(3), Some((SubgroupCore::Free(0), 3)));
        assert_eq!(t.with_s(2), Some((SubgroupCore::Free(1), 2)));
        assert_eq!(t.with_s(1), None);
    }
}
