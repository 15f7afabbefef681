//! Verification pipelines producing serializable certificates.
//!
//! Every certificate lists the facts it takes as given in `assumed_facts`;
//! everything in `computed_values` was computed by this crate.

pub mod chevalley;
pub mod kummer;
pub mod verify;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::arith;
use crate::eisenstein::is_cube_mod_p;
use crate::error::{Error, Result};
use crate::localfield::DEFAULT_PRECISION;
use crate::orders::Effort;

pub use chevalley::{chevalley_base, chevalley_order, rho_map, ChevalleyCertificate, RamifiedPlaceData, RhoImage, SymbolPlace};
pub use kummer::{jacobi_alpha, KummerData, LambdaPlace, MElement};
pub use verify::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseLabel {
    /// p = 2 mod 3.
    Case1,
    /// p = 1 mod 9.
    Case3,
    /// p = 4, 7 mod 9 and 3 is not a cube mod p.
    Case4,
    /// p = 4, 7 mod 9 and 3 is a cube mod p.
    CaseMain,
}

impl CaseLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::Case1 => "Case1",
            CaseLabel::Case3 => "Case3",
            CaseLabel::Case4 => "Case4",
            CaseLabel::CaseMain => "CaseMain",
        }
    }
}

impl std::fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for CaseLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "case1" | "1" => Ok(CaseLabel::Case1),
            "case3" | "3" => Ok(CaseLabel::Case3),
            "case4" | "4" => Ok(CaseLabel::Case4),
            "casemain" | "main" => Ok(CaseLabel::CaseMain),
            _ => Err(Error::Precondition(format!("unknown case {s}"))),
        }
    }
}

pub fn classify(p: u64) -> Result<CaseLabel> {
    if p == 3 || !arith::is_prime(p) {
        return Err(Error::InvalidPrime { value: p.to_string(), reason: "need a prime other than 3" });
    }
    Ok(match p % 9 {
        _ if p % 3 == 2 => CaseLabel::Case1,
        1 => CaseLabel::Case3,
        _ if is_cube_mod_p(3, p)? => CaseLabel::CaseMain,
        _ => CaseLabel::Case4,
    })
}

pub(crate) fn require_case(p: u64, allowed: &[CaseLabel], what: &str) -> Result<CaseLabel> {
    let c = classify(p)?;
    if !allowed.contains(&c) {
        return Err(Error::Precondition(format!("{what} does not apply to p = {p} ({c})")));
    }
    Ok(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn from_checks(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// Fail dominates inconclusive, which dominates pass.
    pub fn and(self, o: Verdict) -> Verdict {
        use Verdict::*;
        match (self, o) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Pass,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub pipeline: String,
    pub p: u64,
    pub inputs: Map<String, Value>,
    pub assumed_facts: Vec<String>,
    pub computed_values: Map<String, Value>,
    pub verdict: Verdict,
}

impl Certificate {
    pub(crate) fn new(pipeline: &str, p: u64) -> Self {
        Certificate {
            pipeline: pipeline.into(),
            p,
            inputs: Map::new(),
            assumed_facts: Vec::new(),
            computed_values: Map::new(),
            verdict: Verdict::Inconclusive,
        }
    }

    pub(crate) fn input(&mut self, k: &str, v: impl Serialize) -> &mut Self {
        self.inputs.insert(k.into(), serde_json::to_value(v).expect("serializable"));
        self
    }

    pub(crate) fn value(&mut self, k: &str, v: impl Serialize) -> &mut Self {
        self.computed_values.insert(k.into(), serde_json::to_value(v).expect("serializable"));
        self
    }

    pub(crate) fn assume(&mut self, fact: &str) -> &mut Self {
        self.assumed_facts.push(fact.into());
        self
    }
}

/// Facts used but not computed.
pub mod facts {
    pub const UNRAMIFIED_SPLIT: &str =
        "L/K and FM+/F are unramified cubic extensions, and the primes of M and K above alpha split in L";
    pub const UNITS_OF_M: &str = "the 3-part of E_M is generated by E_M+ and zeta_3 (M/M+ is CM)";
    pub const HASSE_UNIT_INDEX: &str =
        "Hasse's norm theorem: for L/K unramified, every unit and every S-unit for a split prime is a norm";
    pub const GAUSS_SUM: &str = "g(chi)^3 = p J(chi, chi) for the cubic Gauss sum, so M = k(cbrt(p J))";
    pub const CHEVALLEY: &str = "ambiguous class number formula with the unit index given by Hilbert symbols";
    pub const CLASS_NUMBER_RELATION: &str = "h_K = (q/3) h_F^2 with q = [E_K : E'_K] in {1, 3}";
    pub const PLUS_PART: &str = "the part of A_K fixed by Gal(K/F) has order |A_F|";
    pub const NAKAYAMA: &str = "a 3-group acted on by a 3-group is trivial iff its invariants are";
}

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    /// 3-adic precision (powers of 3) for the local computations.
    pub precision: u32,
    pub effort: Effort,
    pub with_class_groups: bool,
    /// Also compute the class group of the sextic field.
    pub with_ak: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            precision: DEFAULT_PRECISION,
            effort: Effort::default(),
            with_class_groups: false,
            with_ak: false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_examples() {
        assert_eq!(classify(5).unwrap(), CaseLabel::Case1);
        assert_eq!(classify(2).unwrap(), CaseLabel::Case1);
        assert_eq!(classify(61).unwrap(), CaseLabel::CaseMain);
        assert_eq!(classify(7).unwrap(), CaseLabel::Case4);
        assert_eq!(classify(19).unwrap(), CaseLabel::Case3);
        assert!(matches!(classify(3), Err(Error::InvalidPrime { .. })));
        assert!(matches!(classify(91), Err(Error::InvalidPrime { .. })));
    }

    #[test]
    fn main_case_below_500() {
        let main: Vec<u64> = (5..500).filter(|&p| classify(p).ok() == Some(CaseLabel::CaseMain)).collect();
        // 4p - 243 y^2 is a square for these
        assert_eq!(&main[..4], &[61, 67, 103, 151]);
        for p in main {
            assert!((1..).take_while(|y| 243 * y * y < 4 * p).any(|y| arith::exact_isqrt(4 * p - 243 * y * y).is_some()));
        }
    }
}
