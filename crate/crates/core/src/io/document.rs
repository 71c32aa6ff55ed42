use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::GeometryError;
use crate::fermat::PointSet;
use crate::geometry::{HyperplaneSet, OrientedHyperplane, VectorN};
use crate::polytope::ConvexPolygon;

/// Normals within this distance of unit length are accepted as they are.
pub const NORM_ACCEPT_TOL: f64 = 1e-9;
/// Normals within this distance of unit length are re-normalized with a
/// warning; anything farther is rejected.
pub const NORM_REJECT_TOL: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("schema error{}: {message}", location.map(|(l, c)| format!(" at line {l}, column {c}")).unwrap_or_default())]
    Schema {
        message: String,
        location: Option<(usize, usize)>,
    },

    #[error("normal of plane {index} has length {norm}, more than {NORM_REJECT_TOL:e} from 1")]
    NormTolerance { index: usize, norm: f64 },

    #[error("document holds {found}, expected {expected}")]
    WrongKind {
        expected: &'static str,
        found: &'static str,
    },

    #[error("expected a two-dimensional document, got dimension {0}")]
    NotTwoDimensional(usize),

    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

impl DocumentError {
    /// True for problems with the text itself, as opposed to valid documents
    /// whose content does not suit the requested operation.
    pub fn is_malformed_input(&self) -> bool {
        matches!(
            self,
            DocumentError::Syntax { .. }
                | DocumentError::Schema { .. }
                | DocumentError::NormTolerance { .. }
        )
    }

    fn schema(message: impl Into<String>) -> Self {
        DocumentError::Schema {
            message: message.into(),
            location: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaneSpec {
    pub normal: Vec<f64>,
    pub offset: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolygonSpec {
    pub vertices: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Geometry {
    Planes(Vec<PlaneSpec>),
    Polygon(PolygonSpec),
    Points(Vec<Vec<f64>>),
}

impl Geometry {
    pub fn kind(&self) -> &'static str {
        match self {
            Geometry::Planes(_) => "planes",
            Geometry::Polygon(_) => "polygon",
            Geometry::Points(_) => "points",
        }
    }
}

/// A configuration file: one geometric payload plus free-form metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigDocument {
    pub dimension: usize,
    pub geometry: Geometry,
    pub metadata: BTreeMap<String, String>,
}

/// A successfully parsed document and any non-fatal findings.
#[derive(Debug, Clone, PartialEq)]
pub struct Parsed {
    pub document: ConfigDocument,
    pub warnings: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    planes: Option<Vec<PlaneSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    polygon: Option<PolygonSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    points: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    metadata: BTreeMap<String, String>,
}

fn check_len(what: &str, index: usize, len: usize, dimension: usize) -> Result<(), DocumentError> {
    if len == dimension {
        Ok(())
    } else {
        Err(DocumentError::schema(format!(
            "{what}[{index}] has {len} coordinates, dimension is {dimension}"
        )))
    }
}

/// Parses and validates a UTF-8 JSON document.
pub fn parse_document(text: &[u8]) -> Result<Parsed, DocumentError> {
    let raw: RawDocument = serde_json::from_slice(text).map_err(|e| {
        use serde_json::error::Category;
        match e.classify() {
            Category::Data => DocumentError::Schema {
                message: e.to_string(),
                location: Some((e.line(), e.column())),
            },
            _ => DocumentError::Syntax {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            },
        }
    })?;

    let dimension = raw.dimension;
    if dimension == 0 {
        return Err(DocumentError::schema("dimension must be at least 1"));
    }
    let mut warnings = Vec::new();
    let present = [
        raw.planes.is_some(),
        raw.polygon.is_some(),
        raw.points.is_some(),
    ]
    .into_iter()
    .filter(|&p| p)
    .count();
    if present != 1 {
        return Err(DocumentError::schema(
            "exactly one of `planes`, `polygon`, `points` must be present",
        ));
    }

    let geometry = if let Some(mut planes) = raw.planes {
        if planes.is_empty() {
            return Err(DocumentError::schema("`planes` is empty"));
        }
        for (index, plane) in planes.iter_mut().enumerate() {
            check_len("planes", index, plane.normal.len(), dimension)?;
            let norm = plane.normal.iter().map(|c| c * c).sum::<f64>().sqrt();
            let deviation = (norm - 1.0).abs();
            if deviation > NORM_REJECT_TOL || !norm.is_finite() {
                return Err(DocumentError::NormTolerance { index, norm });
            }
            if deviation > NORM_ACCEPT_TOL {
                plane.normal.iter_mut().for_each(|c| *c /= norm);
                warnings.push(format!(
                    "normal of plane {index} had length {norm}; re-normalized"
                ));
            }
        }
        Geometry::Planes(planes)
    } else if let Some(polygon) = raw.polygon {
        if dimension != 2 {
            return Err(DocumentError::schema("`polygon` requires dimension 2"));
        }
        for (index, v) in polygon.vertices.iter().enumerate() {
            check_len("polygon.vertices", index, v.len(), 2)?;
        }
        Geometry::Polygon(polygon)
    } else {
        let points = raw.points.expect("exactly one payload is present");
        if points.is_empty() {
            return Err(DocumentError::schema("`points` is empty"));
        }
        for (index, p) in points.iter().enumerate() {
            check_len("points", index, p.len(), dimension)?;
        }
        Geometry::Points(points)
    };

    Ok(Parsed {
        document: ConfigDocument {
            dimension,
            geometry,
            metadata: raw.metadata,
        },
        warnings,
    })
}

impl ConfigDocument {
    pub fn from_planes(set: &HyperplaneSet) -> Self {
        Self {
            dimension: set.dim(),
            geometry: Geometry::Planes(
                set.iter()
                    .map(|p| PlaneSpec {
                        normal: p.normal().coords().to_vec(),
                        offset: p.offset(),
                    })
                    .collect(),
            ),
            metadata: BTreeMap::new(),
        }
    }

    pub fn from_polygon(polygon: &ConvexPolygon) -> Self {
        Self {
            dimension: 2,
            geometry: Geometry::Polygon(PolygonSpec {
                vertices: polygon
                    .vertices()
                    .iter()
                    .map(|v| v.coords().to_vec())
                    .collect(),
            }),
            metadata: BTreeMap::new(),
        }
    }

    pub fn from_points(points: &PointSet) -> Self {
        Self {
            dimension: points.dim(),
            geometry: Geometry::Points(
                points
                    .points()
                    .iter()
                    .map(|v| v.coords().to_vec())
                    .collect(),
            ),
            metadata: BTreeMap::new(),
        }
    }

    pub fn with_metadata(mut self, key: &str, value: impl Into<String>) -> Self {
        self.metadata.insert(key.to_string(), value.into());
        self
    }

    /// Hyperplanes of a `planes` document, or the outward edge lines of a
    /// `polygon` document.
    pub fn hyperplane_set(&self) -> Result<HyperplaneSet, DocumentError> {
        match &self.geometry {
            Geometry::Planes(planes) => {
                let planes = planes
                    .iter()
                    .map(|p| OrientedHyperplane::new(VectorN::from_slice(&p.normal)?, p.offset))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(HyperplaneSet::new(planes)?)
            }
            Geometry::Polygon(_) => Ok(self.polygon()?.to_hyperplanes()),
            Geometry::Points(_) => Err(DocumentError::WrongKind {
                expected: "planes or polygon",
                found: "points",
            }),
        }
    }

    pub fn polygon(&self) -> Result<ConvexPolygon, DocumentError> {
        match &self.geometry {
            Geometry::Polygon(poly) => Ok(ConvexPolygon::new(
                poly.vertices
                    .iter()
                    .map(|v| VectorN::from_slice(v))
                    .collect::<Result<Vec<_>, _>>()?,
            )?),
            other => Err(DocumentError::WrongKind {
                expected: "polygon",
                found: other.kind(),
            }),
        }
    }

    pub fn point_set(&self) -> Result<PointSet, DocumentError> {
        match &self.geometry {
            Geometry::Points(points) => Ok(PointSet::from_coords(points)?),
            other => Err(DocumentError::WrongKind {
                expected: "points",
                found: other.kind(),
            }),
        }
    }

    fn to_raw(&self) -> RawDocument {
        let mut raw = RawDocument {
            dimension: self.dimension,
            planes: None,
            polygon: None,
            points: None,
            metadata: self.metadata.clone(),
        };
        match &self.geometry {
            Geometry::Planes(p) => raw.planes = Some(p.clone()),
            Geometry::Polygon(p) => raw.polygon = Some(p.clone()),
            Geometry::Points(p) => raw.points = Some(p.clone()),
        }
        raw
    }

    /// Pretty-printed JSON with a trailing newline. Numbers use the shortest
    /// representation that parses back to the same double.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_raw()).expect("document is serializable");
        s.push('\n');
        s
    }
}
