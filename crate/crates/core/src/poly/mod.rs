pub mod blowup;
pub mod multipoly;
pub mod parse;
pub mod tangent;

pub use blowup::{blowup_chart_substitute, Chart};
pub use multipoly::MultiPoly;
pub use parse::{parse_poly, parse_rational_poly};
pub use tangent::{tangent_cone_decomposition, ConePoint, TangentCone};
