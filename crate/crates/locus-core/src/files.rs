//! Structured input documents: map files, form-system files, cone files.
//! All rationals travel as decimal-free strings "p/q" or "p".

use crate::bertini::SmoothConeSpec;
use crate::error::{Error, Result};
use crate::linsys::{vandermonde_system, FormSystem};
use crate::parse::parse_polynomial;
use crate::poly::{Polynomial, Rat};
use crate::vars::VarList;
use serde::{Deserialize, Serialize};
use std::path::Path;
use std::str::FromStr;

pub fn parse_rat(s: &str) -> Result<Rat> {
    Rat::from_str(s.trim())
        .map_err(|e| Error::Document(format!("bad rational `{}`: {}", s, e)))
}

pub fn rat_string(r: &Rat) -> String {
    r.to_string()
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct MapFile {
    pub vars: Vec<String>,
    pub components: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<u32>,
}

/// A validated polynomial mapping together with its declared degree bound.
#[derive(Clone, Debug)]
pub struct MapSpec {
    pub vars: VarList,
    pub components: Vec<Polynomial>,
    pub degree_bound: u32,
    pub degree_bound_overridden: bool,
}

impl MapSpec {
    pub fn n(&self) -> usize {
        self.vars.len()
    }

    pub fn m(&self) -> usize {
        self.components.len()
    }

    pub fn max_component_degree(&self) -> u32 {
        self.components
            .iter()
            .filter_map(|c| c.degree().finite())
            .max()
            .unwrap_or(0)
    }

    pub fn vanishes_at_origin(&self) -> bool {
        self.components
            .iter()
            .all(|c| c.constant_term() == num_traits::Zero::zero())
    }

    pub fn zero_component(&self) -> Option<usize> {
        self.components.iter().position(Polynomial::is_zero)
    }

    pub fn from_parts(
        vars: Vec<String>,
        component_sources: &[String],
        degree_bound_override: Option<u32>,
    ) -> Result<MapSpec> {
        if vars.is_empty() {
            return Err(Error::validation("map needs at least one variable"));
        }
        if component_sources.is_empty() {
            return Err(Error::validation("map needs at least one component"));
        }
        let vl = VarList::new(vars);
        let components = component_sources
            .iter()
            .map(|s| parse_polynomial(s, vl.clone()).map_err(Error::from))
            .collect::<Result<Vec<_>>>()?;
        if let Some(d) = degree_bound_override {
            if d == 0 {
                return Err(Error::validation("degree bound must be positive"));
            }
        }
        let max_deg = components
            .iter()
            .filter_map(|c| c.degree().finite())
            .max()
            .unwrap_or(0);
        Ok(MapSpec {
            vars: vl,
            degree_bound: degree_bound_override.unwrap_or(max_deg),
            degree_bound_overridden: degree_bound_override.is_some(),
            components,
        })
    }
}

/// Parse a map document (JSON text).
pub fn parse_map(document: &str) -> Result<MapSpec> {
    let file: MapFile =
        serde_json::from_str(document).map_err(|e| Error::Document(e.to_string()))?;
    MapSpec::from_parts(file.vars, &file.components, file.degree_bound)
}

pub fn load_map(path: &Path) -> Result<MapSpec> {
    parse_map(&std::fs::read_to_string(path)?)
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct FormsFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ambient: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<Vec<String>>>,
}

pub fn parse_forms(document: &str) -> Result<FormSystem> {
    let file: FormsFile =
        serde_json::from_str(document).map_err(|e| Error::Document(e.to_string()))?;
    match (file.nodes, file.rows) {
        (Some(nodes), None) => {
            let ambient = file.ambient.ok_or_else(|| {
                Error::Document("node-form files need an `ambient` dimension".into())
            })?;
            let nodes = nodes
                .iter()
                .map(|s| parse_rat(s))
                .collect::<Result<Vec<_>>>()?;
            vandermonde_system(ambient, nodes.len(), &nodes)
        }
        (None, Some(rows)) => {
            let rows = rows
                .iter()
                .map(|r| r.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let sys = FormSystem::from_rows(rows)?;
            if let Some(a) = file.ambient {
                if a != sys.ambient {
                    return Err(Error::Document(format!(
                        "declared ambient {} does not match row length {}",
                        a, sys.ambient
                    )));
                }
            }
            Ok(sys)
        }
        _ => Err(Error::Document(
            "form-system file must have exactly one of `nodes` or `rows`".into(),
        )),
    }
}

pub fn load_forms(path: &Path) -> Result<FormSystem> {
    parse_forms(&std::fs::read_to_string(path)?)
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ConeFile {
    pub vars: Vec<String>,
    pub components: Vec<String>,
    pub homogeneous: bool,
    pub claimed_dim: usize,
    pub claimed_rank: usize,
}

pub fn parse_cone(document: &str) -> Result<SmoothConeSpec> {
    let file: ConeFile =
        serde_json::from_str(document).map_err(|e| Error::Document(e.to_string()))?;
    if !file.homogeneous {
        return Err(Error::Document(
            "cone files must declare `homogeneous: true`".into(),
        ));
    }
    if file.vars.is_empty() || file.components.is_empty() {
        return Err(Error::Document("cone needs variables and components".into()));
    }
    let vl = VarList::new(file.vars);
    let generators = file
        .components
        .iter()
        .map(|s| parse_polynomial(s, vl.clone()).map_err(Error::from))
        .collect::<Result<Vec<_>>>()?;
    Ok(SmoothConeSpec {
        generators,
        claimed_dim: file.claimed_dim,
        claimed_rank: file.claimed_rank,
    })
}

pub fn load_cone(path: &Path) -> Result<SmoothConeSpec> {
    parse_cone(&std::fs::read_to_string(path)?)
}
