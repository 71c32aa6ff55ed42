//! JSON configuration documents and SVG output.

mod document;
mod svg;

pub use document::{
    parse_document, ConfigDocument, DocumentError, Geometry, Parsed, PlaneSpec, PolygonSpec,
    NORM_ACCEPT_TOL, NORM_REJECT_TOL,
};
pub use svg::{render_svg, CANVAS};
