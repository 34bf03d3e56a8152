//! Command dispatch and exact reporting.
//!
//! Commands are the objects of the model file's `commands` array. Execution
//! is deterministic: rationals render in lowest terms with positive
//! denominators, partitions as `[3,1,1]`, mod-2 scalars as 0/1, and every
//! map in a report is ordered, so identical (model, command, seed) triples
//! produce byte-identical reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::charclass::BetaSeries;
use crate::cli::model::{parse_series, FieldModels, ModelSet, RawClass, SpaceField};
use crate::error::{Error, Result};
use crate::morin::{class_product, morin_mul, morin_rank, prim_strata, MorinClass};
use crate::multipoint::{
    euler_locus, herbert_step, multipoint_numbers, product_double_points,
    product_immersion_multipoint, ClassDim, CobordismClass,
};
use crate::scalar::{Mod2, Rat, Scalar};
use crate::singularity::{sigma1_product, sigma2_product, suspend, thom_sigma1, thom_sigma2, CartanExpansion};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Command {
    Beta {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        space: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bundle: Option<String>,
    },
    Multipoint {
        immersion: String,
        r: u32,
    },
    Herbert {
        map: String,
        #[serde(default = "default_r")]
        r: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m_prev: Option<BTreeMap<String, String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n_prev_pulled: Option<BTreeMap<String, String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n_prev: Option<BTreeMap<String, String>>,
    },
    EulerLocus {
        space: String,
        bundle: String,
    },
    ProductMulti {
        immersions: [String; 2],
        r: u32,
    },
    ProductDouble {
        maps: [String; 2],
    },
    ThomSigma1 {
        map: String,
    },
    ThomSigma2 {
        map: String,
    },
    Suspend {
        map: String,
        j: i64,
    },
    Sigma1Product {
        maps: [String; 2],
    },
    Sigma2Product {
        maps: [String; 2],
    },
    ClassProduct {
        a: RawClass,
        b: RawClass,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        field: Option<String>,
    },
    MorinRank {
        n: u32,
        k: u32,
    },
    MorinMul {
        a: String,
        b: String,
    },
    PrimStrata {
        immersion: String,
    },
    Check {
        suite: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cases: Option<u32>,
    },
}

fn default_r() -> u32 {
    2
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: Command,
    pub result: Value,
    pub checks: Vec<CheckReport>,
}

#[derive(Debug, Clone)]
pub struct ExecOptions {
    pub seed: u64,
    pub verify: bool,
    pub default_field: Option<SpaceField>,
}

impl Default for ExecOptions {
    fn default() -> Self {
        ExecOptions { seed: 0, verify: true, default_field: None }
    }
}

fn class_json<K: Scalar>(c: &CobordismClass<K>) -> Value {
    let dim = match c.dim() {
        ClassDim::Void => json!("void"),
        ClassDim::Of(d) => json!(d),
    };
    let numbers: BTreeMap<String, String> = c
        .numbers()
        .iter()
        .map(|(p, v)| (p.to_string(), v.to_string()))
        .collect();
    json!({ "dim": dim, "numbers": numbers })
}

fn series_json<K: Scalar>(s: &BetaSeries<K>) -> Value {
    let map: BTreeMap<String, String> = s
        .coeffs()
        .iter()
        .map(|(p, c)| (p.to_string(), c.render()))
        .collect();
    json!(map)
}

fn morin_json(m: &MorinClass) -> Value {
    let strata: BTreeMap<String, Value> = m
        .strata()
        .iter()
        .map(|(r, c)| (r.to_string(), class_json(c)))
        .collect();
    json!({ "n": m.n(), "k": m.k(), "strata": strata })
}

fn expansion_json<K: Scalar>(x: &CartanExpansion<K>) -> Value {
    let terms: Vec<Value> = x
        .terms
        .iter()
        .map(|(j, t)| json!({ "j": j, "term": t.render() }))
        .collect();
    json!({ "total": x.total.render(), "terms": terms, "term_sum": x.term_sum().render() })
}

fn identity_check(name: &str, ran: bool) -> Vec<CheckReport> {
    if ran {
        vec![CheckReport { name: name.into(), pass: true, detail: "exact".into() }]
    } else {
        Vec::new()
    }
}

/// Executes one command against a validated model.
pub fn execute(model: &ModelSet, command: &Command, opts: &ExecOptions) -> Result<Report> {
    let (result, checks) = dispatch(model, command, opts)
        .map_err(|e| rewrap(command, e))?;
    Ok(Report { command: command.clone(), result, checks })
}

/// Prefixes propagated module errors with the operation name.
fn rewrap(command: &Command, e: Error) -> Error {
    let op = serde_json::to_value(command)
        .ok()
        .and_then(|v| v.get("op").and_then(|o| o.as_str().map(String::from)))
        .unwrap_or_else(|| "command".into());
    match e {
        Error::Invariant(msg) => Error::Invariant(format!("{op}: {msg}")),
        Error::IdentityCheck(msg) => Error::IdentityCheck(format!("{op}: {msg}")),
        Error::Parse(msg) => Error::Parse(format!("{op}: {msg}")),
        other => other,
    }
}

fn dispatch(
    model: &ModelSet,
    command: &Command,
    opts: &ExecOptions,
) -> Result<(Value, Vec<CheckReport>)> {
    match command {
        Command::Beta { space, bundle } => beta(model, space.as_deref(), bundle.as_deref()),
        Command::Multipoint { immersion, r } => {
            if model.rat.immersions.contains_key(immersion) {
                let imm = model.rat.immersion(immersion)?;
                Ok((json!({ "class": class_json(&multipoint_numbers(imm, *r)) }), vec![]))
            } else if model.f2.immersions.contains_key(immersion) {
                let imm = model.f2.immersion(immersion)?;
                Ok((json!({ "class": class_json(&multipoint_numbers(imm, *r)) }), vec![]))
            } else {
                Err(Error::Invariant(format!("unknown immersion `{immersion}`")))
            }
        }
        Command::Herbert { map, r, m_prev, n_prev_pulled, n_prev } => {
            herbert(model, map, *r, m_prev, n_prev_pulled, n_prev)
        }
        Command::EulerLocus { space, bundle } => euler_locus_cmd(model, space, bundle),
        Command::ProductMulti { immersions, r } => {
            product_multi(model, immersions, *r, opts.verify)
        }
        Command::ProductDouble { maps } => product_double(model, maps, opts.verify),
        Command::ThomSigma1 { map } => {
            let entry = model.f2.map(map)?;
            let class = thom_sigma1(&entry.data);
            Ok((
                json!({ "class": class.render(), "paired": class.pair().to_string() }),
                vec![],
            ))
        }
        Command::ThomSigma2 { map } => {
            let entry = model.rat.map(map)?;
            let class = thom_sigma2(&entry.data)?;
            Ok((
                json!({ "class": class.render(), "paired": class.pair().to_string() }),
                vec![],
            ))
        }
        Command::Suspend { map, j } => suspend_cmd(model, map, *j),
        Command::Sigma1Product { maps } => {
            let f = model.f2.map(&maps[0])?;
            let g = model.f2.map(&maps[1])?;
            let expansion = sigma1_product(&f.data, &g.data, opts.verify)?;
            Ok((
                expansion_json(&expansion),
                identity_check("sigma1-product-identity", opts.verify),
            ))
        }
        Command::Sigma2Product { maps } => {
            let f = model.rat.map(&maps[0])?;
            let g = model.rat.map(&maps[1])?;
            let expansion = sigma2_product(&f.data, &g.data, opts.verify)?;
            Ok((
                expansion_json(&expansion),
                identity_check("sigma2-product-identity", opts.verify),
            ))
        }
        Command::ClassProduct { a, b, field } => class_product_cmd(a, b, field.as_deref(), opts),
        Command::MorinRank { n, k } => {
            if *k == 0 {
                return Err(Error::Invariant("codimension must be positive".into()));
            }
            Ok((json!({ "rank": morin_rank(*n, *k) }), vec![]))
        }
        Command::MorinMul { a, b } => {
            let ca = model
                .morin
                .get(a)
                .ok_or_else(|| Error::Invariant(format!("unknown morin class `{a}`")))?;
            let cb = model
                .morin
                .get(b)
                .ok_or_else(|| Error::Invariant(format!("unknown morin class `{b}`")))?;
            Ok((json!({ "class": morin_json(&morin_mul(ca, cb)) }), vec![]))
        }
        Command::PrimStrata { immersion } => {
            let imm = model.rat.immersion(immersion)?;
            Ok((json!({ "class": morin_json(&prim_strata(imm)) }), vec![]))
        }
        Command::Check { suite, seed, cases } => {
            let seed = seed.unwrap_or(opts.seed);
            let cases = cases.unwrap_or(100);
            let outcomes = crate::check::run_suite(suite, seed, cases)?;
            let passed = outcomes.iter().filter(|c| c.pass).count();
            let failed = outcomes.len() - passed;
            let checks = outcomes
                .into_iter()
                .map(|c| CheckReport { name: c.name, pass: c.pass, detail: c.detail })
                .collect();
            Ok((
                json!({ "suite": suite, "seed": seed, "cases": cases, "passed": passed, "failed": failed }),
                checks,
            ))
        }
    }
}

fn beta(
    model: &ModelSet,
    space: Option<&str>,
    bundle: Option<&str>,
) -> Result<(Value, Vec<CheckReport>)> {
    match (space, bundle) {
        (Some(name), None) => match model.field_of_space(name)? {
            SpaceField::Rat => {
                let s = model.rat.space(name)?;
                Ok((json!({ "series": series_json(&s.tangent().beta()) }), vec![]))
            }
            SpaceField::F2 => {
                let s = model.f2.space(name)?;
                Ok((json!({ "series": series_json(&s.tangent().beta()) }), vec![]))
            }
        },
        (None, Some(name)) => {
            if let Ok((_, b)) = model.rat.bundle(name) {
                Ok((json!({ "series": series_json(&b.total().beta()) }), vec![]))
            } else {
                let (_, b) = model.f2.bundle(name)?;
                Ok((json!({ "series": series_json(&b.total().beta()) }), vec![]))
            }
        }
        _ => Err(Error::Usage("beta takes exactly one of `space` or `bundle`".into())),
    }
}

fn herbert(
    model: &ModelSet,
    map: &str,
    r: u32,
    m_prev: &Option<BTreeMap<String, String>>,
    n_prev_pulled: &Option<BTreeMap<String, String>>,
    n_prev: &Option<BTreeMap<String, String>>,
) -> Result<(Value, Vec<CheckReport>)> {
    if r < 2 {
        return Err(Error::Usage("herbert needs r >= 2".into()));
    }
    fn run<K: Scalar>(
        models: &FieldModels<K>,
        map: &str,
        r: u32,
        m_prev: &Option<BTreeMap<String, String>>,
        n_prev_pulled: &Option<BTreeMap<String, String>>,
        n_prev: &Option<BTreeMap<String, String>>,
    ) -> Result<(Value, Vec<CheckReport>)> {
        let data = models.general(map)?;
        let algebra = data.source().algebra();
        let m_prev = match m_prev {
            Some(raw) => parse_series(algebra, raw)?,
            None if r == 2 => data.source().tangent().beta(),
            None => {
                return Err(Error::Usage(
                    "herbert with r >= 3 needs an explicit m_prev series".into(),
                ))
            }
        };
        let pulled = match (n_prev_pulled, n_prev) {
            (Some(raw), None) => parse_series(algebra, raw)?,
            (None, Some(raw)) => {
                let phi = data.pullback().ok_or_else(|| {
                    Error::Invariant(
                        "supplying n_prev needs a pullback on the map; use n_prev_pulled otherwise"
                            .into(),
                    )
                })?;
                parse_series(phi.source(), raw)?.pushpull(phi)
            }
            (None, None) if r == 2 => data.gysin_pull().clone(),
            (None, None) => {
                return Err(Error::Usage(
                    "herbert with r >= 3 needs n_prev_pulled (or n_prev with a pullback)".into(),
                ))
            }
            _ => {
                return Err(Error::Usage(
                    "give at most one of n_prev_pulled and n_prev".into(),
                ))
            }
        };
        let m_r = herbert_step(&data, &m_prev, &pulled);
        let dim = data.source().dim() as i64 - (r as i64 - 1) * data.codim() as i64;
        let class = CobordismClass::from_series(dim, &m_r);
        Ok((
            json!({ "series": series_json(&m_r), "class": class_json(&class) }),
            vec![],
        ))
    }
    if model.rat.maps.contains_key(map) || model.rat.immersions.contains_key(map) {
        run(&model.rat, map, r, m_prev, n_prev_pulled, n_prev)
    } else {
        run(&model.f2, map, r, m_prev, n_prev_pulled, n_prev)
    }
}

fn euler_locus_cmd(model: &ModelSet, space: &str, bundle: &str) -> Result<(Value, Vec<CheckReport>)> {
    match model.field_of_space(space)? {
        SpaceField::Rat => {
            let s = model.rat.space(space)?;
            let (bspace, b) = model.rat.bundle(bundle)?;
            if bspace != space {
                return Err(Error::Invariant(format!(
                    "bundle `{bundle}` lives over `{bspace}`, not `{space}`"
                )));
            }
            Ok((json!({ "class": class_json(&euler_locus(s, b)?) }), vec![]))
        }
        SpaceField::F2 => {
            let s = model.f2.space(space)?;
            let (bspace, b) = model.f2.bundle(bundle)?;
            if bspace != space {
                return Err(Error::Invariant(format!(
                    "bundle `{bundle}` lives over `{bspace}`, not `{space}`"
                )));
            }
            Ok((json!({ "class": class_json(&euler_locus(s, b)?) }), vec![]))
        }
    }
}

fn product_multi(
    model: &ModelSet,
    names: &[String; 2],
    r: u32,
    verify: bool,
) -> Result<(Value, Vec<CheckReport>)> {
    let in_rat =
        model.rat.immersions.contains_key(&names[0]) && model.rat.immersions.contains_key(&names[1]);
    let in_f2 =
        model.f2.immersions.contains_key(&names[0]) && model.f2.immersions.contains_key(&names[1]);
    let class = if in_rat {
        product_immersion_multipoint(
            model.rat.immersion(&names[0])?,
            model.rat.immersion(&names[1])?,
            r,
            verify,
        )
        .map(|c| class_json(&c))?
    } else if in_f2 {
        product_immersion_multipoint(
            model.f2.immersion(&names[0])?,
            model.f2.immersion(&names[1])?,
            r,
            verify,
        )
        .map(|c| class_json(&c))?
    } else {
        return Err(Error::Invariant(format!(
            "immersions `{}` and `{}` must exist over one field",
            names[0], names[1]
        )));
    };
    Ok((
        json!({ "class": class }),
        identity_check("r-fold-product-identity", verify),
    ))
}

fn product_double(
    model: &ModelSet,
    names: &[String; 2],
    verify: bool,
) -> Result<(Value, Vec<CheckReport>)> {
    let rat_ok = model.rat.general(&names[0]).is_ok() && model.rat.general(&names[1]).is_ok();
    let class = if rat_ok {
        let g1 = model.rat.general(&names[0])?;
        let g2 = model.rat.general(&names[1])?;
        class_json(&product_double_points(&g1, &g2, verify)?)
    } else {
        let g1 = model.f2.general(&names[0])?;
        let g2 = model.f2.general(&names[1])?;
        class_json(&product_double_points(&g1, &g2, verify)?)
    };
    Ok((
        json!({ "class": class }),
        identity_check("double-point-product-identity", verify),
    ))
}

fn suspend_cmd(model: &ModelSet, map: &str, j: i64) -> Result<(Value, Vec<CheckReport>)> {
    fn render<K: Scalar>(data: &crate::singularity::MapData<K>) -> Value {
        let comps: BTreeMap<String, String> = data
            .normal()
            .components()
            .iter()
            .map(|(i, c)| (i.to_string(), c.render()))
            .collect();
        json!({
            "codim": data.codim(),
            "source_dim": data.source().dim(),
            "normal": comps,
        })
    }
    if model.rat.maps.contains_key(map) {
        let entry = model.rat.map(map)?;
        Ok((render(&suspend(&entry.data, j)?), vec![]))
    } else {
        let entry = model.f2.map(map)?;
        Ok((render(&suspend(&entry.data, j)?), vec![]))
    }
}

fn class_product_cmd(
    a: &RawClass,
    b: &RawClass,
    field: Option<&str>,
    opts: &ExecOptions,
) -> Result<(Value, Vec<CheckReport>)> {
    let field = match field {
        Some("Q") => SpaceField::Rat,
        Some("F2") => SpaceField::F2,
        Some(other) => {
            return Err(Error::Usage(format!("field must be Q or F2, got {other:?}")))
        }
        None => opts.default_field.unwrap_or(SpaceField::Rat),
    };
    let value = match field {
        SpaceField::Rat => class_json(&class_product(&a.build::<Rat>()?, &b.build::<Rat>()?)),
        SpaceField::F2 => class_json(&class_product(&a.build::<Mod2>()?, &b.build::<Mod2>()?)),
    };
    Ok((json!({ "class": value }), vec![]))
}
