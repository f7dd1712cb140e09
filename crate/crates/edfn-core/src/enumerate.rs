//! Catalogs: all admissible 0-core (or 1-core) CRGs up to isomorphism
//! within bounded vertex counts.
//!
//! A 0-core CRG is determined by its white vertex count and the graph of
//! white edges among its black vertices (everything else is forced gray),
//! so enumeration reduces to unlabeled-graph enumeration on the black side.
//! Candidates failing the family filter (`𝓕 ↦ K`) are dropped; the
//! survivors form a finite window into the admissible p-core world.

use serde::{Deserialize, Serialize};

use crate::crg::{canonical_form, zero_core_from_graph, Crg, CrgJson, CRG_CANON_CAP};
use crate::embed::family_embeds;
use crate::graphs::{enumerate_graphs, FamilySpec};
use crate::par;
use crate::solver::is_p_core;
use crate::value::PValue;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoreSide {
    ZeroCore,
    OneCore,
}

/// One catalog entry: a CRG plus its identifiers.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: usize,
    pub crg: Crg,
    pub canonical_key: Vec<u8>,
}

/// A bounded window of admissible core CRGs, up to isomorphism.
#[derive(Debug, Clone)]
pub struct Catalog {
    pub property_hash: String,
    pub side: CoreSide,
    pub max_white: usize,
    pub max_black: usize,
    /// Some negative família verdicts are only valid up to this cycle
    /// bound (present when the family has a cycle generator).
    pub bounded_verdicts: bool,
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// Entries restricted to an exact white-vertex count.
    pub fn white_slice(&self, w: usize) -> Vec<&CatalogEntry> {
        self.entries.iter().filter(|e| e.crg.white_count() == w).collect()
    }

    /// Builds a catalog directly from CRGs, bypassing enumeration and the
    /// family filter. Entries are deduplicated and sorted canonically.
    pub fn from_crgs(side: CoreSide, crgs: Vec<Crg>, label: &str) -> Result<Catalog> {
        let mut keyed: Vec<(Vec<u8>, Crg)> = Vec::new();
        let mut max_white = 0;
        let mut max_black = 0;
        for crg in crgs {
            max_white = max_white.max(crg.white_count());
            max_black = max_black.max(crg.black_count());
            let key = canonical_form(&crg)?;
            if !keyed.iter().any(|(k, _)| *k == key) {
                keyed.push((key, crg));
            }
        }
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        let entries = keyed
            .into_iter()
            .enumerate()
            .map(|(id, (canonical_key, crg))| CatalogEntry { id, crg, canonical_key })
            .collect();
        Ok(Catalog {
            property_hash: label.to_string(),
            side,
            max_white,
            max_black,
            bounded_verdicts: false,
            entries,
        })
    }
}

/// Enumerates the catalog of `side`-core CRGs with at most `max_white`
/// white and `max_black` black vertices into which no family member
/// embeds.
pub fn enumerate_catalog(
    spec: &FamilySpec,
    max_white: usize,
    max_black: usize,
    side: CoreSide,
) -> Result<Catalog> {
    if max_white + max_black > CRG_CANON_CAP {
        return Err(Error::SizeCap {
            what: "catalog bounds (max_white + max_black)",
            got: max_white + max_black,
            cap: CRG_CANON_CAP,
        });
    }

    // Structural generation: a 0-core CRG is (w whites) + (white-edge graph
    // on b blacks); the 1-core side is its color-complement.
    let mut candidates: Vec<Crg> = Vec::new();
    for b in 0..=max_black {
        let graphs = if b == 0 { vec![] } else { enumerate_graphs(b)? };
        for w in 0..=max_white {
            if w + b == 0 {
                continue;
            }
            if b == 0 {
                candidates.push(kwb_side(w, 0, side)?);
            } else {
                for g in &graphs {
                    let zero_core = zero_core_from_graph(w, g)?;
                    candidates.push(match side {
                        CoreSide::ZeroCore => zero_core,
                        CoreSide::OneCore => zero_core.complement(),
                    });
                }
            }
        }
    }

    // The family filter dominates runtime; run it in parallel.
    let verdicts = par::map_slice(&candidates, |crg| family_embeds(spec, crg));
    let bounded_verdicts = verdicts.iter().any(|v| !v.embeds && v.bounded);

    let mut keyed: Vec<(Vec<u8>, Crg)> = candidates
        .into_iter()
        .zip(verdicts)
        .filter(|(_, v)| !v.embeds)
        .map(|(crg, _)| Ok((canonical_form(&crg)?, crg)))
        .collect::<Result<_>>()?;
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);

    let entries = keyed
        .into_iter()
        .enumerate()
        .map(|(id, (canonical_key, crg))| CatalogEntry { id, crg, canonical_key })
        .collect();
    Ok(Catalog {
        property_hash: spec.property_hash(),
        side,
        max_white,
        max_black,
        bounded_verdicts,
        entries,
    })
}

fn kwb_side(w: usize, b: usize, side: CoreSide) -> Result<Crg> {
    match side {
        CoreSide::ZeroCore => Crg::kwb(w, b),
        CoreSide::OneCore => Ok(Crg::kwb(b, w)?.complement()),
    }
}

/// Retains the entries that are p-core at `p`.
pub fn filter_p_core(catalog: &Catalog, p: &PValue) -> Result<Catalog> {
    let x = p.as_f64();
    match catalog.side {
        CoreSide::ZeroCore if !(0.0 < x && x <= 0.5) => {
            return Err(Error::domain("zero-core catalogs filter at p in (0, 1/2]"));
        }
        CoreSide::OneCore if !(0.5 <= x && x < 1.0) => {
            return Err(Error::domain("one-core catalogs filter at p in [1/2, 1)"));
        }
        _ => {}
    }
    let verdicts: Vec<Result<bool>> =
        par::map_slice(&catalog.entries, |e| is_p_core(&e.crg, p));
    let mut entries = Vec::new();
    for (entry, verdict) in catalog.entries.iter().zip(verdicts) {
        if verdict? {
            entries.push(entry.clone());
        }
    }
    let entries = entries
        .into_iter()
        .enumerate()
        .map(|(id, e)| CatalogEntry { id, ..e })
        .collect();
    Ok(Catalog {
        property_hash: catalog.property_hash.clone(),
        side: catalog.side,
        max_white: catalog.max_white,
        max_black: catalog.max_black,
        bounded_verdicts: catalog.bounded_verdicts,
        entries,
    })
}

// ---------------------------------------------------------------------------
// Persistence
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct CatalogJson {
    spec: String,
    side: CoreSide,
    bounds: (usize, usize),
    bounded_verdicts: bool,
    entries: Vec<CatalogEntryJson>,
}

#[derive(Serialize, Deserialize)]
struct CatalogEntryJson {
    id: usize,
    crg: CrgJson,
    canonical_key: String,
}

impl Catalog {
    pub fn to_json(&self) -> String {
        let raw = CatalogJson {
            spec: self.property_hash.clone(),
            side: self.side,
            bounds: (self.max_white, self.max_black),
            bounded_verdicts: self.bounded_verdicts,
            entries: self
                .entries
                .iter()
                .map(|e| CatalogEntryJson {
                    id: e.id,
                    crg: CrgJson::from(&e.crg),
                    canonical_key: hex(&e.canonical_key),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("catalog serialization")
    }

    pub fn from_json(text: &str) -> Result<Catalog> {
        let raw: CatalogJson = serde_json::from_str(text)?;
        let mut entries = Vec::with_capacity(raw.entries.len());
        for e in raw.entries {
            let crg: Crg = e.crg.try_into()?;
            let canonical_key = canonical_form(&crg)?;
            if hex(&canonical_key) != e.canonical_key {
                return Err(Error::Inconsistency(format!(
                    "catalog entry {} canonical key mismatch",
                    e.id
                )));
            }
            entries.push(CatalogEntry { id: e.id, crg, canonical_key });
        }
        Ok(Catalog {
            property_hash: raw.spec,
            side: raw.side,
            max_white: raw.bounds.0,
            max_black: raw.bounds.1,
            bounded_verdicts: raw.bounded_verdicts,
            entries,
        })
    }

    /// Cache-relative path for this catalog:
    /// `catalogs/<hash>/<side>-<w>x<b>.json`.
    pub fn cache_path(&self) -> std::path::PathBuf {
        let side = match self.side {
            CoreSide::ZeroCore => "zero_core",
            CoreSide::OneCore => "one_core",
        };
        std::path::PathBuf::from("catalogs")
            .join(&self.property_hash)
            .join(format!("{side}-{}x{}.json", self.max_white, self.max_black))
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Enumerates with a cache directory: loads the catalog if present, else
/// computes and stores it.
pub fn enumerate_catalog_cached(
    spec: &FamilySpec,
    max_white: usize,
    max_black: usize,
    side: CoreSide,
    cache_dir: Option<&std::path::Path>,
) -> Result<Catalog> {
    let probe = Catalog {
        property_hash: spec.property_hash(),
        side,
        max_white,
        max_black,
        bounded_verdicts: false,
        entries: vec![],
    };
    if let Some(dir) = cache_dir {
        let path = dir.join(probe.cache_path());
        if path.is_file() {
            return Catalog::from_json(&std::fs::read_to_string(path)?);
        }
    }
    let catalog = enumerate_catalog(spec, max_white, max_black, side)?;
    if let Some(dir) = cache_dir {
        let path = dir.join(catalog.cache_path());
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)?;
        }
        std::fs::write(path, catalog.to_json())?;
    }
    Ok(catalog)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crg::crg_isomorphic;
    use crate::graphs::SimpleGraph;

    #[test]
    fn k2_family_catalog_is_single_white_vertex() {
        // Forbidding an edge leaves only K(1,0) at bounds (1,0).
        let spec = FamilySpec::single(SimpleGraph::complete(2));
        let cat = enumerate_catalog(&spec, 1, 0, CoreSide::ZeroCore).unwrap();
        assert_eq!(cat.entries.len(), 1);
        assert!(crg_isomorphic(&cat.entries[0].crg, &Crg::kwb(1, 0).unwrap()).unwrap());
    }

    #[test]
    fn k33_one_white_slice() {
        let spec = FamilySpec::single(SimpleGraph::complete_bipartite(3, 3));
        let cat = enumerate_catalog(&spec, 1, 3, CoreSide::ZeroCore).unwrap();
        let slice = cat.white_slice(1);
        // K(1,0), K(1,1), K(1,2) and K(1,2) with a white black-black edge;
        // nothing with three black vertices survives.
        assert_eq!(slice.len(), 4);
        assert!(slice.iter().all(|e| e.crg.black_count() <= 2));
    }

    #[test]
    fn catalog_roundtrip_and_determinism() {
        let spec = FamilySpec::single(SimpleGraph::complete_bipartite(3, 3));
        let a = enumerate_catalog(&spec, 1, 2, CoreSide::ZeroCore).unwrap();
        let b = enumerate_catalog(&spec, 1, 2, CoreSide::ZeroCore).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        let back = Catalog::from_json(&a.to_json()).unwrap();
        assert_eq!(back.to_json(), a.to_json());
    }

    #[test]
    fn filter_p_core_keeps_kwb() {
        let spec = FamilySpec::single(SimpleGraph::complete_bipartite(3, 3));
        let cat = enumerate_catalog(&spec, 1, 2, CoreSide::ZeroCore).unwrap();
        let filtered = filter_p_core(&cat, &PValue::from_ratio(1, 4).unwrap()).unwrap();
        // All-gray CRGs are always p-core; the white-edged variant is not
        // necessarily dropped, but K(w,b) entries must survive.
        for e in &cat.entries {
            if e.crg.count_edges(crate::crg::EdgeColor::White) == 0 {
                assert!(filtered
                    .entries
                    .iter()
                    .any(|f| crg_isomorphic(&f.crg, &e.crg).unwrap()));
            }
        }
        assert!(filter_p_core(&cat, &PValue::Float(0.7)).is_err());
    }
}
