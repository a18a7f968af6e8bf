//! File-driven front end for the k-very ampleness deciders: parse a surface
//! description with queries, evaluate, and emit a table or canonical JSON.

pub mod render;
pub mod report;
pub mod schema;

pub use render::{render_enriques_lattice, render_table};
pub use report::{run, to_canonical_json, Report, RunError, RunFlags};
pub use schema::{parse, InputFormat, ParseError, QueryFile};
