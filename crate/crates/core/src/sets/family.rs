use num_traits::{Signed, Zero};

use super::{instance::SetCornet, Carrier, Repr, UpperSet};
use crate::cornet::{ArchFamily, CaseRng};
use crate::error::{Error, Result};
use crate::geometry::{format_rational, Rational, RVec};

/// The η with `g = -η d`, if any.
fn negative_multiple(g: &RVec, d: &RVec) -> Option<Rational> {
    let (i, di) = d.coords().iter().enumerate().find(|(_, c)| !c.is_zero())?;
    let eta = -(&g.coords()[i]) / di;
    (d.scale(&eta) == -g).then_some(eta)
}

fn eta_of(a: &UpperSet, d: &RVec) -> Option<Rational> {
    if a.repr() != Repr::Discrete || a.pieces().len() != 1 {
        return None;
    }
    negative_multiple(&a.pieces()[0].vertices()[0], d).filter(|e| e.is_positive())
}

/// `{-ε d} + W` for the interior direction `d` (the all-ones vector for the
/// orthant), with witness `ε ↦ ε / 2`.
pub fn set_arch_family(inst: &SetCornet, epsilons: &[Rational]) -> Result<ArchFamily<UpperSet>> {
    if inst.carrier() != Carrier::Rational {
        return Err(Error::InvalidInput(
            "Archimedean families need a rational carrier".into(),
        ));
    }
    let w = inst.wedge_arc();
    let d = w
        .interior_point()
        .cloned()
        .filter(|_| !w.cone().rows().is_empty())
        .ok_or_else(|| Error::InvalidInput("wedge has empty interior".into()))?;
    if epsilons.iter().any(|e| !e.is_positive()) {
        return Err(Error::InvalidInput("epsilons must be positive".into()));
    }
    let at = {
        let (w, d) = (w.clone(), d.clone());
        move |eps: &Rational| {
            UpperSet::discrete(w.clone(), Carrier::Rational, vec![-&d.scale(eps)])
                .expect("family generators fit the wedge")
        }
    };
    let members = epsilons
        .iter()
        .map(|e| (format!("eps={}", format_rational(e)), at(e)))
        .collect();
    let (dw, dm) = (d.clone(), d.clone());
    let at_w = at.clone();
    let fam = ArchFamily::new(
        inst,
        members,
        move |a: &UpperSet| eta_of(a, &dw).map(|e| at_w(&(e / Rational::from_integer(2.into())))),
        move |a: &UpperSet| eta_of(a, &dm).is_some(),
    )?;
    let cfg = inst.sampler().clone();
    Ok(fam.with_sampler(move |rng: &mut CaseRng| {
        let mut eps = cfg.nonnegative(rng);
        if eps.is_zero() {
            eps = Rational::from_integer(1.into());
        }
        at(&eps)
    }))
}

/// Finitely generated sets are closed, so the closure is the set itself.
pub fn set_closure(x: &UpperSet, _fam: &ArchFamily<UpperSet>) -> UpperSet {
    x.clone()
}
