//! Catalog of named objects, expression parsing, file formats and pipelines.

pub mod catalog;
pub mod cli;
pub mod io;
pub mod parse;
pub mod pipelines;

pub use catalog::{Catalog, CatalogEntry, Payload};
pub use parse::ParseContext;

use crate::error::Result;
use crate::freealg::{Algebra, Generator};
use crate::presentations::Presentation;
use crate::scalars::{ParameterSet, Scalar};

/// Presentation from relation strings, with optional scalar definitions.
pub fn build_presentation(
    name: &str,
    params: &ParameterSet,
    gens: &[Generator],
    precedence: &[&str],
    definitions: &[(&str, Scalar)],
    relations: &[&str],
) -> Result<Presentation> {
    let alg = Algebra::new(gens.to_vec())?;
    let mut ctx = ParseContext::new(params.clone(), alg.clone())?;
    for (n, v) in definitions {
        ctx.define(n, v.clone())?;
    }
    let rels = relations.iter().map(|r| ctx.parse(r)).collect::<Result<Vec<_>>>()?;
    Presentation::new(name, params.clone(), alg, precedence, rels)
}
