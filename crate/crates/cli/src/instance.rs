//! The JSON instance-file schema and its translation into cornet instances.

use std::collections::BTreeMap;
use std::sync::Arc;

use cornet::cornet::{ArchFamily, Cornet};
use cornet::fuzzy::{fuzzy_arch_family, FuzzyCornet, FuzzySpec, StepFuzzy};
use cornet::geometry::{rat, ratio, RVec, Rational};
use cornet::sample::SamplerConfig;
use cornet::sets::{set_arch_family, Carrier, Mutation, Repr, SetCornet, SetSpec, UpperSet, MULTISET_CAP};
use cornet::wedge::{elem_arch_family, ElemCornet, Wedge, WedgeName, WedgeSpec};
use serde::Deserialize;
use serde_json::Value;

use crate::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
pub enum Kind {
    #[serde(rename = "elemQ")]
    ElemQ,
    #[serde(rename = "setQ")]
    SetQ,
    #[serde(rename = "setZ")]
    SetZ,
    #[serde(rename = "fuzzyQ")]
    FuzzyQ,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Rat(#[serde(with = "cornet::geometry::rational")] pub Rational);

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UniverseSpec {
    pub kind: Kind,
    pub dim: usize,
    #[serde(default)]
    pub wedge: Option<WedgeSpec>,
    #[serde(default)]
    pub repr: Option<Repr>,
    #[serde(default)]
    pub p: Option<Rat>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub epsilons: Vec<Rat>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Options {
    pub n_max: u64,
    pub horizon: Option<u64>,
    pub seed: u64,
    pub cases: u64,
    pub multiset_cap: u128,
    pub mutation: Option<Mutation>,
    pub sampler: Option<SamplerConfig>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            n_max: 6,
            horizon: None,
            seed: 0,
            cases: 200,
            multiset_cap: MULTISET_CAP,
            mutation: None,
            sampler: None,
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub universe: UniverseSpec,
    #[serde(default)]
    pub elements: BTreeMap<String, Value>,
    #[serde(default)]
    pub family: Option<FamilySpec>,
    #[serde(default)]
    pub options: Options,
}

pub fn default_epsilons() -> Vec<Rational> {
    vec![rat(1), ratio(1, 2), ratio(1, 4), ratio(1, 8), ratio(1, 1 << 20)]
}

/// Reads and parses a file, reporting line and column on syntax or schema
/// errors.
pub fn read_instance(path: &str) -> CliResult<InstanceFile> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })?;
    parse_instance(path, &text)
}

pub fn parse_instance(path: &str, text: &str) -> CliResult<InstanceFile> {
    serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: path.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string().split(" at line ").next().unwrap_or_default().to_string(),
    })
}

/// A cornet that can read its elements from instance files.
pub trait Universe: Cornet {
    fn parse(&self, v: &Value) -> CliResult<Self::Elem>;
}

impl Universe for ElemCornet {
    fn parse(&self, v: &Value) -> CliResult<RVec> {
        let x: RVec = serde_json::from_value(v.clone()).map_err(|e| CliError::input(e.to_string()))?;
        self.wedge().cone().check_dim(&x)?;
        Ok(x)
    }
}

impl Universe for SetCornet {
    fn parse(&self, v: &Value) -> CliResult<UpperSet> {
        let s: SetSpec = serde_json::from_value(v.clone()).map_err(|e| CliError::input(e.to_string()))?;
        Ok(s.build(self.wedge_arc(), self.carrier())?)
    }
}

impl Universe for FuzzyCornet {
    fn parse(&self, v: &Value) -> CliResult<StepFuzzy> {
        let s: FuzzySpec = serde_json::from_value(v.clone()).map_err(|e| CliError::input(e.to_string()))?;
        Ok(s.build(self.wedge_arc(), self.p())?)
    }
}

pub enum Loaded {
    Elem(ElemCornet, Option<ArchFamily<RVec>>),
    Set(SetCornet, Option<ArchFamily<UpperSet>>),
    Fuzzy(FuzzyCornet, Option<ArchFamily<StepFuzzy>>),
}

fn sampler(opts: &Options, kind: Kind) -> CliResult<SamplerConfig> {
    let s = opts.sampler.clone().unwrap_or_else(|| match kind {
        Kind::SetZ => SamplerConfig::integer_range(-4, 4),
        _ => SamplerConfig::default(),
    });
    if s.numerators[0] > s.numerators[1] {
        return Err(CliError::input("options.sampler.numerators: lower bound exceeds upper bound"));
    }
    if s.denominators.contains(&0) {
        return Err(CliError::input("options.sampler.denominators: zero denominator"));
    }
    if s.max_generators == 0 || s.max_generators > 12 {
        return Err(CliError::input("options.sampler.max_generators: must be between 1 and 12"));
    }
    Ok(s)
}

/// Builds the cornet and, where one exists, its Archimedean family.
pub fn load(file: &InstanceFile) -> CliResult<Loaded> {
    let u = &file.universe;
    let opts = &file.options;
    if u.dim == 0 || u.dim > 8 {
        return Err(CliError::input("universe.dim: must be between 1 and 8"));
    }
    if opts.n_max == 0 || opts.horizon == Some(0) {
        return Err(CliError::input("options: n_max and horizon must be positive"));
    }
    if opts.mutation.is_some() && !matches!(u.kind, Kind::SetQ | Kind::SetZ) {
        return Err(CliError::input("options.mutation: only set universes support mutations"));
    }
    if u.p.is_some() && u.kind != Kind::FuzzyQ {
        return Err(CliError::input("universe.p: only fuzzyQ universes take p"));
    }
    let wedge = match (&u.wedge, u.kind) {
        (None, Kind::SetZ) => Wedge::zero(u.dim),
        (Some(WedgeSpec::Named(WedgeName::Zero)), Kind::SetZ) => Wedge::zero(u.dim),
        (Some(_), Kind::SetZ) => {
            return Err(CliError::input("universe.wedge: setZ universes use the zero wedge"))
        }
        (None, _) => return Err(CliError::input("universe: missing field `wedge`")),
        (Some(w), _) => w.build(u.dim).map_err(|e| CliError::from(e).at("universe.wedge"))?,
    };
    let wedge = Arc::new(wedge);
    let eps: Vec<Rational> = match &file.family {
        Some(f) => f.epsilons.iter().map(|r| r.0.clone()).collect(),
        None => default_epsilons(),
    };
    let has_family = wedge.interior_point().is_some() && !wedge.cone().rows().is_empty();
    let family_err = |e: cornet::Error| CliError::from(e).at("family");
    let sampler = sampler(opts, u.kind)?;
    let repr = u.repr.unwrap_or(Repr::Discrete);
    if repr == Repr::Union {
        return Err(CliError::input("universe.repr: sample as discrete or polytopic"));
    }
    Ok(match u.kind {
        Kind::ElemQ => {
            let inst = ElemCornet::new(wedge, sampler);
            let fam = has_family.then(|| elem_arch_family(&inst, &eps)).transpose().map_err(family_err)?;
            Loaded::Elem(inst, fam)
        }
        Kind::SetQ | Kind::SetZ => {
            let carrier = if u.kind == Kind::SetZ { Carrier::Integer } else { Carrier::Rational };
            let inst = SetCornet::new(wedge, carrier, repr, sampler)
                .with_mutation(opts.mutation)
                .with_multiset_cap(opts.multiset_cap);
            let fam = (has_family && carrier == Carrier::Rational)
                .then(|| set_arch_family(&inst, &eps))
                .transpose()
                .map_err(family_err)?;
            Loaded::Set(inst, fam)
        }
        Kind::FuzzyQ => {
            let p = u.p.clone().map(|r| r.0).unwrap_or_else(|| rat(1));
            let inst = FuzzyCornet::new(wedge, p.clone(), repr, sampler).map_err(|e| CliError::from(e).at("universe.p"))?;
            let fam = (has_family && p == rat(1))
                .then(|| fuzzy_arch_family(&inst, &eps))
                .transpose()
                .map_err(family_err)?;
            Loaded::Fuzzy(inst, fam)
        }
    })
}

/// Looks up and parses a named element.
pub fn element<U: Universe>(inst: &U, file: &InstanceFile, name: &str) -> CliResult<U::Elem> {
    let v = file
        .elements
        .get(name)
        .ok_or_else(|| CliError::input(format!("elements: no element named {name:?}")))?;
    inst.parse(v).map_err(|e| e.at(&format!("elements.{name}")))
}

/// Every element of the file, in name order.
pub fn all_elements<U: Universe>(inst: &U, file: &InstanceFile) -> CliResult<Vec<(String, U::Elem)>> {
    file.elements
        .keys()
        .map(|k| Ok((k.clone(), element(inst, file, k)?)))
        .collect()
}
