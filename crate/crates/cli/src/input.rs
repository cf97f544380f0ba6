//! Reading categories, model classes, monads, rings and truncated specs.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;

use discoloc_core::ktheory::WeakEquivalences;
use discoloc_core::{FinCat, Functor, MonadData, MorId, MorphismClass, NatTrans, ObjId, RawCategory, RingSpec};

use crate::{corpus_file, Caps};

/// Reads a path, or a bundled file when the path starts with `corpus:`.
pub fn read_source(path: &str) -> Result<String> {
    if let Some(name) = path.strip_prefix("corpus:") {
        return corpus_file(name)
            .map(str::to_string)
            .ok_or_else(|| anyhow!("no bundled file named {name}"));
    }
    fs::read_to_string(path).with_context(|| format!("cannot read {path}"))
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(path: &str) -> Result<T> {
    let text = read_source(path)?;
    serde_json::from_str(&text).with_context(|| format!("malformed JSON in {path}"))
}

/// File stem used to name reports and graphs.
pub fn stem(path: &str) -> String {
    let name = path.strip_prefix("corpus:").unwrap_or(path);
    Path::new(name)
        .file_stem()
        .map_or_else(|| name.to_string(), |s| s.to_string_lossy().into_owned())
}

pub fn check_category_caps(raw: &RawCategory, caps: &Caps) -> Result<()> {
    let objects = raw.objects.len();
    let morphisms = objects + raw.morphisms.len();
    if objects > caps.max_objects {
        bail!("{objects} objects exceed --max-objects {}", caps.max_objects);
    }
    if morphisms > caps.max_morphisms {
        bail!(
            "{morphisms} morphisms (identities included) exceed --max-morphisms {}",
            caps.max_morphisms
        );
    }
    Ok(())
}

pub fn load_raw(path: &str, caps: &Caps) -> Result<RawCategory> {
    let raw: RawCategory = parse_json(path)?;
    check_category_caps(&raw, caps)?;
    Ok(raw)
}

pub fn load_category(path: &str, caps: &Caps) -> Result<FinCat> {
    let raw = load_raw(path, caps)?;
    FinCat::from_raw(&raw).with_context(|| format!("{path} is not a category"))
}

pub fn split_names(list: &str) -> Vec<&str> {
    list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn object(c: &FinCat, name: &str) -> Result<ObjId> {
    c.obj_by_name(name).ok_or_else(|| anyhow!("unknown object {name}"))
}

fn morphism(c: &FinCat, name: &str) -> Result<MorId> {
    c.mor_by_name(name).ok_or_else(|| anyhow!("unknown morphism {name}"))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassesFile {
    pub cof: Vec<String>,
    pub we: Vec<String>,
    pub fib: Vec<String>,
}

pub fn load_classes(path: &str, c: &FinCat) -> Result<(MorphismClass, MorphismClass, MorphismClass)> {
    let file: ClassesFile = parse_json(path)?;
    let class = |names: &[String], which: &str| {
        MorphismClass::from_names(c, names).with_context(|| format!("{which} in {path}"))
    };
    Ok((
        class(&file.cof, "cof")?,
        class(&file.we, "we")?,
        class(&file.fib, "fib")?,
    ))
}

/// A monad by names: `objects` and `morphisms` give `T`, identities may be
/// left out of `morphisms`; `unit` and `mult` give components per object.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonadFile {
    pub objects: BTreeMap<String, String>,
    #[serde(default)]
    pub morphisms: BTreeMap<String, String>,
    pub unit: BTreeMap<String, String>,
    pub mult: BTreeMap<String, String>,
}

pub fn load_monad(path: &str, c: &FinCat) -> Result<MonadData> {
    let file: MonadFile = parse_json(path)?;
    for (key, map) in [("objects", &file.objects), ("unit", &file.unit), ("mult", &file.mult)] {
        if let Some(extra) = map.keys().find(|k| c.obj_by_name(k).is_none()) {
            bail!("{key} mentions unknown object {extra}");
        }
    }
    if let Some(extra) = file.morphisms.keys().find(|k| c.mor_by_name(k).is_none()) {
        bail!("morphisms mentions unknown morphism {extra}");
    }
    let per_object = |map: &BTreeMap<String, String>, key: &str| -> Result<Vec<String>> {
        c.objects()
            .map(|x| {
                map.get(c.obj_name(x))
                    .cloned()
                    .ok_or_else(|| anyhow!("{key} has no entry for {}", c.obj_name(x)))
            })
            .collect()
    };
    let obj = per_object(&file.objects, "objects")?
        .iter()
        .map(|n| object(c, n))
        .collect::<Result<Vec<_>>>()?;
    let mor = c
        .morphisms()
        .map(|f| match file.morphisms.get(c.mor_name(f)) {
            Some(n) => morphism(c, n),
            None if c.is_identity(f) => Ok(c.id(obj[c.src(f).0])),
            None => Err(anyhow!("morphisms has no entry for {}", c.mor_name(f))),
        })
        .collect::<Result<Vec<_>>>()?;
    let components = |key: &str, map: &BTreeMap<String, String>| -> Result<NatTrans> {
        Ok(NatTrans {
            components: per_object(map, key)?
                .iter()
                .map(|n| morphism(c, n))
                .collect::<Result<Vec<_>>>()?,
        })
    };
    Ok(MonadData {
        functor: Functor { obj, mor },
        unit: components("unit", &file.unit)?,
        mult: components("mult", &file.mult)?,
    })
}

pub fn load_ring(path: &str, caps: &Caps) -> Result<RingSpec> {
    let spec: RingSpec = parse_json(path)?;
    let size = spec.size_estimate();
    if size > caps.max_ring as u128 {
        bail!("{path} describes {size} elements, above --max-ring {}", caps.max_ring);
    }
    Ok(spec)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruncatedSpec {
    pub p: u64,
    pub bound: u32,
    #[serde(default = "default_we")]
    pub we: WeakEquivalences,
}

fn default_we() -> WeakEquivalences {
    WeakEquivalences::Isomorphisms
}

/// Accepts `p=2,bound=3[,we=all]` or a JSON file with the same keys.
pub fn parse_truncated(arg: &str) -> Result<TruncatedSpec> {
    if !arg.contains('=') {
        return parse_json(arg);
    }
    let (mut p, mut bound, mut we) = (None, None, WeakEquivalences::Isomorphisms);
    for part in split_names(arg) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| anyhow!("expected key=value, got {part}"))?;
        match key.trim() {
            "p" => p = Some(value.trim().parse().with_context(|| format!("bad p: {value}"))?),
            "bound" => bound = Some(value.trim().parse().with_context(|| format!("bad bound: {value}"))?),
            "we" => {
                we = match value.trim() {
                    "isomorphisms" | "isos" => WeakEquivalences::Isomorphisms,
                    "all" => WeakEquivalences::All,
                    other => bail!("we must be isomorphisms or all, got {other}"),
                }
            }
            other => bail!("unknown key {other}"),
        }
    }
    Ok(TruncatedSpec {
        p: p.ok_or_else(|| anyhow!("missing p"))?,
        bound: bound.ok_or_else(|| anyhow!("missing bound"))?,
        we,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_spec_strings() {
        let s = parse_truncated("p=2,bound=3").unwrap();
        assert_eq!((s.p, s.bound, s.we), (2, 3, WeakEquivalences::Isomorphisms));
        let s = parse_truncated("p=3, bound=2, we=all").unwrap();
        assert_eq!(s.we, WeakEquivalences::All);
        assert!(parse_truncated("p=2").is_err());
        assert!(parse_truncated("p=2,bound=x").is_err());
        assert!(parse_truncated("p=2,bound=1,colour=red").is_err());
    }

    #[test]
    fn truncated_spec_from_corpus() {
        let s = parse_truncated("corpus:truncated/p3_bound2.json").unwrap();
        assert_eq!((s.p, s.bound), (3, 2));
    }

    #[test]
    fn stems() {
        assert_eq!(stem("corpus:categories/chain3.json"), "chain3");
        assert_eq!(stem("/tmp/x/diamond.json"), "diamond");
    }

    #[test]
    fn monad_file_defaults_identities() {
        let c = FinCat::chain(3);
        let m = load_monad("corpus:monads/chain3_upper.json", &c).unwrap();
        assert_eq!(m.functor.on_mor(c.id(ObjId(0))), c.id(ObjId(1)));
        assert_eq!(m.functor.on_obj(ObjId(0)), ObjId(1));
    }
}
