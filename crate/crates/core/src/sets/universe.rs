//! Finite universes of subsets of Z for counterexample hunts.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{instance::SetCornet, UpperSet};
use crate::cornet::{is_n_convex, Cornet};
use crate::error::{Error, Result};
use crate::geometry::RVec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Z1Universe {
    /// Every nonempty subset of the range.
    Z1,
    /// Integer intervals `{a, ..., b}` within the range.
    Z1Intervals,
    Z1Singletons,
}

impl FromStr for Z1Universe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "z1" => Ok(Z1Universe::Z1),
            "z1-intervals" => Ok(Z1Universe::Z1Intervals),
            "z1-singletons" => Ok(Z1Universe::Z1Singletons),
            other => Err(Error::InvalidInput(format!(
                "unknown universe {other:?} (expected z1, z1-intervals or z1-singletons)"
            ))),
        }
    }
}

/// Largest range length for which all subsets are enumerated.
pub const MAX_SUBSET_RANGE: i64 = 8;

/// Parses an inclusive range `a..b`.
pub fn parse_range(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::InvalidInput(format!("range {s:?} is not of the form a..b"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let lo: i64 = a.trim().parse().map_err(|_| bad())?;
    let hi: i64 = b.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(Error::InvalidInput(format!("range {s:?} is empty")));
    }
    Ok((lo, hi))
}

/// The universe over `lo..=hi`, sorted.
pub fn z1_universe(inst: &SetCornet, kind: Z1Universe, lo: i64, hi: i64) -> Result<Vec<UpperSet>> {
    if inst.dim() != 1 || inst.carrier() != super::Carrier::Integer {
        return Err(Error::InvalidInput("z1 universes need the integer cornet in dimension 1".into()));
    }
    let len = hi.checked_sub(lo).and_then(|d| d.checked_add(1)).unwrap_or(i64::MAX);
    if lo > hi {
        return Err(Error::InvalidInput("empty range".into()));
    }
    let set = |pts: Vec<i64>| {
        UpperSet::discrete(
            inst.wedge_arc(),
            inst.carrier(),
            pts.into_iter().map(|p| RVec::from_ints(&[p])).collect(),
        )
    };
    let mut out = Vec::new();
    match kind {
        Z1Universe::Z1 => {
            if len > MAX_SUBSET_RANGE {
                return Err(Error::CapExceeded {
                    what: "range length for subset enumeration",
                    count: len as u128,
                    cap: MAX_SUBSET_RANGE as u128,
                });
            }
            for mask in 1u32..(1 << len) {
                let pts = (0..len).filter(|i| mask & (1 << i) != 0).map(|i| lo + i).collect();
                out.push(set(pts)?);
            }
        }
        Z1Universe::Z1Intervals => {
            if len > 64 {
                return Err(Error::CapExceeded {
                    what: "range length for interval enumeration",
                    count: len as u128,
                    cap: 64,
                });
            }
            for a in lo..=hi {
                for b in a..=hi {
                    out.push(set((a..=b).collect())?);
                }
            }
        }
        Z1Universe::Z1Singletons => {
            if len > 4096 {
                return Err(Error::CapExceeded {
                    what: "range length for singleton enumeration",
                    count: len as u128,
                    cap: 4096,
                });
            }
            for a in lo..=hi {
                out.push(set(vec![a])?);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// m-convex for some `2 <= m <= n_max`. Finite subsets of Z are closed and
/// bounded in the discrete topology, so those hypotheses always hold.
pub fn z_convex(inst: &SetCornet, x: &UpperSet, n_max: u64) -> bool {
    (2..=n_max.max(2)).any(|m| is_n_convex(inst, x, m))
}

/// Whether `x ⪯ y` fails for `(x, y)` but `x + z ⪯ y + z` holds.
pub fn violates_cancellation(inst: &SetCornet, x: &UpperSet, y: &UpperSet, z: &UpperSet) -> bool {
    !inst.leq(x, y) && inst.leq(&inst.add(x, z), &inst.add(y, z))
}
