//! Charts, vector fields, differential forms and polynomial coordinate maps.

mod chart;
mod field;
mod form;
mod polymap;

pub use chart::{same_chart, Chart, ChartRef};
pub use field::VectorField;
pub use form::{one_form_from_polys, Basis, KForm};
pub use polymap::PolyMap;
