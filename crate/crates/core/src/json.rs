//! JSON forms of polytopes and homomorphisms.
//!
//! A polytope is read either from a catalog name (`"SQ"`) or from an object
//! with `vertices` (and optionally `name`, `ambient_dim`); derived fields are
//! ignored on input.

use serde::{Deserialize, Serialize};

use crate::arith::{ExactMatrix, Field};
use crate::error::{Error, Result};
use crate::geometry::{catalog, Facet, LatticePolytope};
use crate::hom::GradedHom;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetJson {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl From<&Facet> for FacetJson {
    fn from(f: &Facet) -> Self {
        FacetJson {
            normal: f.normal.clone(),
            offset: f.offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeJson {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub name: String,
    #[serde(default)]
    pub ambient_dim: Option<usize>,
    pub vertices: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice_points: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<FacetJson>>,
}

impl PolytopeJson {
    /// The compact form: name, ambient dimension and vertices.
    pub fn compact(p: &LatticePolytope) -> Self {
        PolytopeJson {
            name: p.name().to_string(),
            ambient_dim: Some(p.ambient_dim()),
            vertices: p.vertices().to_vec(),
            lattice_points: None,
            facets: None,
        }
    }

    /// The compact form plus lattice points and facets.
    pub fn described(p: &LatticePolytope) -> Self {
        PolytopeJson {
            lattice_points: Some(p.lattice_points().to_vec()),
            facets: Some(p.facet_list().iter().map(FacetJson::from).collect()),
            ..Self::compact(p)
        }
    }

    pub fn to_polytope(&self) -> Result<LatticePolytope> {
        let d = self
            .ambient_dim
            .or_else(|| self.vertices.first().map(Vec::len))
            .ok_or_else(|| Error::InvalidPolytope("no vertices".into()))?;
        Ok(LatticePolytope::new(d, self.vertices.clone())?.with_name(self.name.clone()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum PolytopeInput {
    Named(String),
    Explicit(PolytopeJson),
}

impl PolytopeInput {
    pub fn to_polytope(&self) -> Result<LatticePolytope> {
        match self {
            PolytopeInput::Named(n) => {
                catalog::by_name(n).ok_or_else(|| Error::InvalidPolytope(format!("unknown polytope name {n:?}")))
            }
            PolytopeInput::Explicit(p) => p.to_polytope(),
        }
    }
}

impl TryFrom<PolytopeInput> for LatticePolytope {
    type Error = Error;

    fn try_from(value: PolytopeInput) -> Result<Self> {
        value.to_polytope()
    }
}

impl From<LatticePolytope> for PolytopeJson {
    fn from(p: LatticePolytope) -> Self {
        PolytopeJson::compact(&p)
    }
}

impl Serialize for LatticePolytope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolytopeJson::compact(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticePolytope {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        PolytopeInput::deserialize(d)?
            .to_polytope()
            .map_err(serde::de::Error::custom)
    }
}

/// `{"field", "source", "target", "matrix"}` with scalars as strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedHomJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub source: LatticePolytope,
    pub target: LatticePolytope,
    pub matrix: Vec<Vec<String>>,
}

impl GradedHomJson {
    pub fn from_hom(f: &GradedHom) -> Self {
        GradedHomJson {
            field: Some(f.field().name()),
            source: f.source().clone(),
            target: f.target().clone(),
            matrix: f.matrix().to_strings(),
        }
    }

    /// Reads the map over `field`; a declared field must agree with it.
    pub fn to_hom(&self, field: Field) -> Result<GradedHom> {
        if let Some(name) = &self.field {
            let declared = Field::parse(name, Some(field.characteristic()).filter(|&p| p > 0))?;
            if declared != field {
                return Err(Error::FieldMismatch(format!("map over {declared}, session over {field}")));
            }
        }
        let rows = self.target.num_lattice_points();
        let cols = self.source.num_lattice_points();
        if self.matrix.len() != rows || self.matrix.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch(format!("expected a {rows}x{cols} matrix")));
        }
        let m = ExactMatrix::from_strings(field, &self.matrix)?;
        GradedHom::new(self.source.clone(), self.target.clone(), m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polytope_round_trip() {
        let sq = catalog::square();
        let text = serde_json::to_string(&sq).unwrap();
        let back: LatticePolytope = serde_json::from_str(&text).unwrap();
        assert_eq!(back, sq);
        assert_eq!(back.name(), "SQ");
        let named: LatticePolytope = serde_json::from_str("\"T2\"").unwrap();
        assert_eq!(named, catalog::t2());
        let described = serde_json::to_value(PolytopeJson::described(&sq)).unwrap();
        assert_eq!(described["lattice_points"].as_array().unwrap().len(), 4);
        let again: LatticePolytope = serde_json::from_value(described).unwrap();
        assert_eq!(again, sq);
    }

    #[test]
    fn hom_round_trip_and_field_check() {
        let f = GradedHom::identity(&catalog::t1(), Field::prime(5).unwrap());
        let json = GradedHomJson::from_hom(&f);
        let text = serde_json::to_string(&json).unwrap();
        let back: GradedHomJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_hom(Field::prime(5).unwrap()).unwrap(), f);
        assert!(matches!(back.to_hom(Field::Rational), Err(Error::FieldMismatch(_))));
    }
}
