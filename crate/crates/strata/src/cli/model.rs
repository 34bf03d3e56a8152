//! The declarative JSON model format and its validated in-memory form.
//!
//! A model file has top-level keys `spaces`, `bundles`, `immersions`,
//! `maps`, `morin`, `commands`. Every polynomial value is a string over the
//! grammar in [`super::poly`]; total classes and series are maps from a
//! class index (or a partition literal) to such strings. Spaces carry the
//! field tag; every object over a space inherits it. Validation is eager:
//! algebra construction, Whitney constraints, ring-map multiplicativity and
//! cross-reference resolution all fail at load time.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::algebra::{AlgebraRef, GradedAlgebra, LinearMap};
use crate::charclass::{BetaSeries, BundleData, SpaceModel, TotalClass};
use crate::cli::exec::Command;
use crate::cli::poly::{parse_element, parse_partition, parse_scalar};
use crate::error::{Error, Result};
use crate::morin::MorinClass;
use crate::multipoint::{CobordismClass, GeneralMapData, ImmersionData};
use crate::partition::Partition;
use crate::scalar::{Mod2, Rat, Scalar};
use crate::singularity::MapData;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    #[serde(default)]
    spaces: BTreeMap<String, RawSpace>,
    #[serde(default)]
    bundles: BTreeMap<String, RawBundle>,
    #[serde(default)]
    immersions: BTreeMap<String, RawImmersion>,
    #[serde(default)]
    maps: BTreeMap<String, RawMap>,
    #[serde(default)]
    morin: BTreeMap<String, RawMorin>,
    #[serde(default)]
    commands: Vec<Command>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpace {
    field: String,
    #[serde(default)]
    generators: Vec<RawGenerator>,
    #[serde(default)]
    dim: Option<usize>,
    /// Kunneth product of two previously declared spaces; its tangent class
    /// is derived from the factors.
    #[serde(default)]
    tensor: Option<Vec<String>>,
    /// Total tangent class components, index -> polynomial.
    #[serde(default)]
    tangent: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGenerator {
    name: String,
    degree: usize,
    nilpotency: u32,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBundle {
    space: String,
    rank: i64,
    #[serde(default)]
    total: BTreeMap<String, String>,
    #[serde(default)]
    euler: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawImmersion {
    space: String,
    codim: u32,
    /// Name of the normal bundle.
    normal: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    space: String,
    codim: i64,
    /// Virtual normal total class, index -> polynomial; or reference a
    /// bundle by name instead to make the map usable in double-point
    /// operations.
    #[serde(default)]
    normal: Option<BTreeMap<String, String>>,
    #[serde(default)]
    normal_bundle: Option<String>,
    /// The pulled Gysin series f^* f_! beta(M), partition -> polynomial.
    #[serde(default)]
    gysin_pull: Option<BTreeMap<String, String>>,
    /// Pullback ring map: images of the generators of another space's
    /// cohomology in this map's source.
    #[serde(default)]
    pullback: Option<RawPullback>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPullback {
    from: String,
    images: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMorin {
    n: u32,
    k: u32,
    #[serde(default)]
    strata: BTreeMap<String, RawClass>,
}

#[derive(Debug, Clone, Deserialize, serde::Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawClass {
    pub dim: usize,
    #[serde(default)]
    pub numbers: BTreeMap<String, String>,
}

impl RawClass {
    pub fn build<K: Scalar>(&self) -> Result<CobordismClass<K>> {
        let mut numbers = BTreeMap::new();
        for (p, v) in &self.numbers {
            let partition = parse_partition(p)?;
            let value: K = parse_scalar(v)?;
            numbers.insert(partition, value);
        }
        CobordismClass::new(self.dim, numbers)
    }
}

/// A named map entry: singularity-style data always, double-point data when
/// the normal class came from a bundle.
pub struct MapEntry<K: Scalar> {
    pub data: MapData<K>,
    pub general: Option<GeneralMapData<K>>,
}

/// All validated objects of one coefficient field.
pub struct FieldModels<K: Scalar> {
    pub spaces: BTreeMap<String, SpaceModel<K>>,
    pub bundles: BTreeMap<String, (String, BundleData<K>)>,
    pub immersions: BTreeMap<String, ImmersionData<K>>,
    pub maps: BTreeMap<String, MapEntry<K>>,
}

impl<K: Scalar> Default for FieldModels<K> {
    fn default() -> Self {
        FieldModels {
            spaces: BTreeMap::new(),
            bundles: BTreeMap::new(),
            immersions: BTreeMap::new(),
            maps: BTreeMap::new(),
        }
    }
}

impl<K: Scalar> FieldModels<K> {
    pub fn space(&self, name: &str) -> Result<&SpaceModel<K>> {
        self.spaces
            .get(name)
            .ok_or_else(|| Error::Invariant(format!("unknown space `{name}`")))
    }

    pub fn bundle(&self, name: &str) -> Result<&(String, BundleData<K>)> {
        self.bundles
            .get(name)
            .ok_or_else(|| Error::Invariant(format!("unknown bundle `{name}`")))
    }

    pub fn immersion(&self, name: &str) -> Result<&ImmersionData<K>> {
        self.immersions
            .get(name)
            .ok_or_else(|| Error::Invariant(format!("unknown immersion `{name}`")))
    }

    pub fn map(&self, name: &str) -> Result<&MapEntry<K>> {
        self.maps
            .get(name)
            .ok_or_else(|| Error::Invariant(format!("unknown map `{name}`")))
    }

    /// Double-point data for a named map or immersion.
    pub fn general(&self, name: &str) -> Result<GeneralMapData<K>> {
        if let Some(entry) = self.maps.get(name) {
            return entry.general.clone().ok_or_else(|| {
                Error::Invariant(format!(
                    "map `{name}` has no normal bundle data; reference a bundle via `normal_bundle`"
                ))
            });
        }
        if let Some(imm) = self.immersions.get(name) {
            return Ok(imm.to_general());
        }
        Err(Error::Invariant(format!("unknown map or immersion `{name}`")))
    }
}

/// A fully validated model file.
pub struct ModelSet {
    pub rat: FieldModels<Rat>,
    pub f2: FieldModels<Mod2>,
    pub morin: BTreeMap<String, MorinClass>,
    pub commands: Vec<Command>,
}

/// Which field a named space lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceField {
    Rat,
    F2,
}

impl ModelSet {
    pub fn field_of_space(&self, name: &str) -> Result<SpaceField> {
        if self.rat.spaces.contains_key(name) {
            Ok(SpaceField::Rat)
        } else if self.f2.spaces.contains_key(name) {
            Ok(SpaceField::F2)
        } else {
            Err(Error::Invariant(format!("unknown space `{name}`")))
        }
    }
}

pub fn parse_total<K: Scalar>(
    algebra: &AlgebraRef<K>,
    raw: &BTreeMap<String, String>,
) -> Result<TotalClass<K>> {
    let mut comps = BTreeMap::new();
    for (idx, poly) in raw {
        let i: u32 = idx
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad class index {idx:?}")))?;
        let value = parse_element(poly, algebra)?;
        if i == 0 {
            return Err(Error::Invariant(
                "component 0 of a total class is implicitly 1".into(),
            ));
        }
        comps.insert(i, value);
    }
    TotalClass::new(algebra, comps)
}

pub fn parse_series<K: Scalar>(
    algebra: &AlgebraRef<K>,
    raw: &BTreeMap<String, String>,
) -> Result<BetaSeries<K>> {
    let mut coeffs = BTreeMap::new();
    for (p, poly) in raw {
        let partition = parse_partition(p)?;
        let value = parse_element(poly, algebra)?;
        if !value.is_zero() {
            coeffs.insert(partition, value);
        }
    }
    Ok(BetaSeries::from_coeffs(algebra, coeffs))
}

fn build_spaces<K: Scalar>(
    raws: &BTreeMap<String, &RawSpace>,
) -> Result<BTreeMap<String, SpaceModel<K>>> {
    let mut spaces: BTreeMap<String, SpaceModel<K>> = BTreeMap::new();
    // Generator-presented spaces first, then tensor spaces until settled.
    for (name, raw) in raws {
        if raw.tensor.is_some() {
            continue;
        }
        let dim = raw.dim.ok_or_else(|| {
            Error::Invariant(format!("space `{name}` needs a dim"))
        })?;
        let gens: Vec<(&str, usize, u32)> = raw
            .generators
            .iter()
            .map(|g| (g.name.as_str(), g.degree, g.nilpotency))
            .collect();
        let algebra = GradedAlgebra::<K>::truncated_polynomial(&gens, dim)
            .map_err(|e| Error::Invariant(format!("space `{name}`: {e}")))?;
        let tangent = parse_total(&algebra, &raw.tangent)
            .map_err(|e| Error::Invariant(format!("space `{name}` tangent: {e}")))?;
        spaces.insert((*name).clone(), SpaceModel::new(algebra, tangent));
    }
    let mut pending: Vec<(&String, &&RawSpace)> =
        raws.iter().filter(|(_, r)| r.tensor.is_some()).collect();
    while !pending.is_empty() {
        let before = pending.len();
        pending.retain(|(name, raw)| {
            let factors = raw.tensor.as_ref().unwrap();
            if factors.len() != 2 {
                return true; // reported below
            }
            let (Some(left), Some(right)) = (spaces.get(&factors[0]), spaces.get(&factors[1]))
            else {
                return true;
            };
            let (product, _) = left.product(right);
            let product = if raw.tangent.is_empty() {
                product
            } else {
                return true; // tangent overrides are not allowed on tensor spaces
            };
            spaces.insert((*name).clone(), product);
            false
        });
        if pending.len() == before {
            let (name, raw) = pending[0];
            let factors = raw.tensor.as_ref().unwrap();
            if factors.len() != 2 {
                return Err(Error::Invariant(format!(
                    "space `{name}`: tensor takes exactly two factors"
                )));
            }
            if !raw.tangent.is_empty() {
                return Err(Error::Invariant(format!(
                    "space `{name}`: tensor spaces derive their tangent class"
                )));
            }
            return Err(Error::Invariant(format!(
                "space `{name}`: unresolved tensor factors {:?}",
                factors
            )));
        }
    }
    Ok(spaces)
}

fn build_field_models<K: Scalar>(raw: &RawModel, tag: &str) -> Result<FieldModels<K>> {
    let my_spaces: BTreeMap<String, &RawSpace> = raw
        .spaces
        .iter()
        .filter(|(_, s)| s.field == tag)
        .map(|(n, s)| (n.clone(), s))
        .collect();
    let spaces = build_spaces::<K>(&my_spaces)?;
    let mut models = FieldModels { spaces, ..Default::default() };

    for (name, b) in &raw.bundles {
        let Some(space) = models.spaces.get(&b.space) else {
            if my_spaces.contains_key(&b.space) {
                unreachable!("space map covers all names of this field");
            }
            continue; // belongs to the other field (or is dangling; checked later)
        };
        let total = parse_total(space.algebra(), &b.total)
            .map_err(|e| Error::Invariant(format!("bundle `{name}`: {e}")))?;
        let euler = match &b.euler {
            Some(poly) => Some(
                parse_element(poly, space.algebra())
                    .map_err(|e| Error::Invariant(format!("bundle `{name}` euler: {e}")))?,
            ),
            None => None,
        };
        let bundle = BundleData::new(total, b.rank, euler)
            .map_err(|e| Error::Invariant(format!("bundle `{name}`: {e}")))?;
        models.bundles.insert(name.clone(), (b.space.clone(), bundle));
    }

    for (name, im) in &raw.immersions {
        let Some(space) = models.spaces.get(&im.space) else {
            continue;
        };
        let (bundle_space, bundle) = models.bundle(&im.normal).map_err(|_| {
            Error::Invariant(format!("immersion `{name}`: unknown bundle `{}`", im.normal))
        })?;
        if bundle_space != &im.space {
            return Err(Error::Invariant(format!(
                "immersion `{name}`: bundle `{}` lives over `{bundle_space}`, not `{}`",
                im.normal, im.space
            )));
        }
        let data = ImmersionData::new(space.clone(), im.codim, bundle.clone())
            .map_err(|e| Error::Invariant(format!("immersion `{name}`: {e}")))?;
        models.immersions.insert(name.clone(), data);
    }

    for (name, m) in &raw.maps {
        let Some(space) = models.spaces.get(&m.space) else {
            continue;
        };
        let (normal_total, bundle) = match (&m.normal, &m.normal_bundle) {
            (Some(raw_total), None) => (parse_total(space.algebra(), raw_total)?, None),
            (None, Some(bname)) => {
                let (bundle_space, bundle) = models.bundle(bname).map_err(|_| {
                    Error::Invariant(format!("map `{name}`: unknown bundle `{bname}`"))
                })?;
                if bundle_space != &m.space {
                    return Err(Error::Invariant(format!(
                        "map `{name}`: bundle `{bname}` lives over `{bundle_space}`, not `{}`",
                        m.space
                    )));
                }
                (bundle.total().clone(), Some(bundle.clone()))
            }
            _ => {
                return Err(Error::Invariant(format!(
                    "map `{name}`: give exactly one of `normal` or `normal_bundle`"
                )))
            }
        };
        let pullback = match &m.pullback {
            Some(raw_pb) => {
                let from = models.spaces.get(&raw_pb.from).ok_or_else(|| {
                    Error::Invariant(format!(
                        "map `{name}`: unknown pullback source `{}`",
                        raw_pb.from
                    ))
                })?;
                let mut images = Vec::new();
                for (gen, poly) in &raw_pb.images {
                    images.push((gen.clone(), parse_element(poly, space.algebra())?));
                }
                Some(
                    LinearMap::from_generator_images(from.algebra(), space.algebra(), &images)
                        .map_err(|e| Error::Invariant(format!("map `{name}` pullback: {e}")))?,
                )
            }
            None => None,
        };
        let data = MapData::new(space.clone(), m.codim, normal_total);
        let general = match bundle {
            Some(bundle) if m.codim > 0 => {
                let gysin = match &m.gysin_pull {
                    Some(raw_series) => parse_series(space.algebra(), raw_series)?,
                    None => BetaSeries::zero(space.algebra()),
                };
                Some(
                    GeneralMapData::new(
                        space.clone(),
                        m.codim as u32,
                        bundle,
                        gysin,
                        pullback.clone(),
                    )
                    .map_err(|e| Error::Invariant(format!("map `{name}`: {e}")))?,
                )
            }
            _ => None,
        };
        models.maps.insert(name.clone(), MapEntry { data, general });
    }

    Ok(models)
}

/// Loads and fully validates a model file.
pub fn load_model(path: &std::path::Path) -> Result<ModelSet> {
    let text = std::fs::read_to_string(path)?;
    let raw: RawModel = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    build_model(raw)
}

/// Loads a model from a JSON string (used by tests and embedders).
pub fn load_model_str(text: &str) -> Result<ModelSet> {
    let raw: RawModel =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    build_model(raw)
}

fn build_model(raw: RawModel) -> Result<ModelSet> {
    for (name, s) in &raw.spaces {
        if s.field != "Q" && s.field != "F2" {
            return Err(Error::Invariant(format!(
                "space `{name}`: field must be \"Q\" or \"F2\", got {:?}",
                s.field
            )));
        }
    }
    let rat = build_field_models::<Rat>(&raw, "Q")?;
    let f2 = build_field_models::<Mod2>(&raw, "F2")?;

    // Cross-reference sweep: everything must have landed in one field.
    for (name, b) in &raw.bundles {
        if !rat.bundles.contains_key(name) && !f2.bundles.contains_key(name) {
            return Err(Error::Invariant(format!(
                "bundle `{name}`: unknown space `{}`",
                b.space
            )));
        }
    }
    for (name, im) in &raw.immersions {
        if !rat.immersions.contains_key(name) && !f2.immersions.contains_key(name) {
            return Err(Error::Invariant(format!(
                "immersion `{name}`: unknown space `{}`",
                im.space
            )));
        }
    }
    for (name, m) in &raw.maps {
        if !rat.maps.contains_key(name) && !f2.maps.contains_key(name) {
            return Err(Error::Invariant(format!(
                "map `{name}`: unknown space `{}`",
                m.space
            )));
        }
    }

    let mut morin = BTreeMap::new();
    for (name, m) in &raw.morin {
        let mut strata = BTreeMap::new();
        for (r, raw_class) in &m.strata {
            let index: u32 = r
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad stratum index {r:?}")))?;
            strata.insert(index, raw_class.build::<Rat>()?);
        }
        let class = MorinClass::new(m.n, m.k, strata)
            .map_err(|e| Error::Invariant(format!("morin `{name}`: {e}")))?;
        morin.insert(name.clone(), class);
    }

    Ok(ModelSet { rat, f2, morin, commands: raw.commands })
}

/// Renders a partition map of scalars in canonical form.
pub fn render_numbers<K: Scalar>(numbers: &BTreeMap<Partition, K>) -> BTreeMap<String, String> {
    numbers
        .iter()
        .map(|(p, v)| (p.to_string(), v.to_string()))
        .collect()
}
