use clap::Subcommand;
use polylin::automorphism::{column_vectors, symmetries};
use polylin::geometry::{is_pyramid, normalize_lattice};
use polylin::json::{FacetJson, PolytopeJson};
use polylin::semigroup::{binomial_relations, generation_degree, hilbert, is_generated_in_degree};
use serde_json::{json, Value};

use crate::session::{CliResult, Session};

#[derive(Debug, Subcommand)]
pub enum PolyCommand {
    /// Summary of a polytope.
    Info {
        #[arg(long = "in")]
        input: String,
    },
    /// Lattice points in lex order.
    Points {
        #[arg(long = "in")]
        input: String,
    },
    /// Facets as `normal·x ≥ offset`.
    Facets {
        #[arg(long = "in")]
        input: String,
    },
    /// Column vectors with their base facets.
    Columns {
        #[arg(long = "in")]
        input: String,
    },
    /// Lattice symmetries, in normalized coordinates.
    Symmetries {
        #[arg(long = "in")]
        input: String,
    },
    /// Number of degree-e monomials of k[P].
    Hilbert {
        #[arg(long = "in")]
        input: String,
        #[arg(long, default_value_t = 1)]
        degree: usize,
    },
    /// Binomial relations up to a degree bound.
    Relations {
        #[arg(long = "in")]
        input: String,
        /// Degree bound; defaults to the relation degree.
        #[arg(long)]
        degree: Option<usize>,
        /// Also report whether these relations generate through this degree.
        #[arg(long)]
        check_up_to: Option<usize>,
    },
    /// The dilation cP.
    Dilate {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        factor: i64,
    },
    /// Apexes for which P is a lattice pyramid.
    Pyramid {
        #[arg(long = "in")]
        input: String,
    },
}

pub fn run(cmd: &PolyCommand, s: &Session) -> CliResult<Value> {
    Ok(match cmd {
        PolyCommand::Info { input } => {
            let p = s.polytope(input)?;
            let (normalized, _) = normalize_lattice(&p);
            json!({
                "name": p.name(),
                "ambient_dim": p.ambient_dim(),
                "dim": p.dim(),
                "vertices": p.vertices(),
                "num_lattice_points": p.num_lattice_points(),
                "num_facets": p.facet_list().len(),
                "lattice_normalized": p.is_lattice_normalized(),
                "normalized": PolytopeJson::compact(&normalized),
                "generation_degree": generation_degree(&p, polylin::hom::RELATION_DEGREE_CAP).ok(),
            })
        }
        PolyCommand::Points { input } => {
            let p = s.polytope(input)?;
            json!({"count": p.num_lattice_points(), "points": p.lattice_points()})
        }
        PolyCommand::Facets { input } => {
            let p = s.polytope(input)?;
            let facets: Vec<FacetJson> = p.facets()?.iter().map(FacetJson::from).collect();
            json!({"count": facets.len(), "facets": facets})
        }
        PolyCommand::Columns { input } => {
            let p = s.polytope(input)?;
            let cols = column_vectors(&p)?;
            let facets = p.facet_list();
            let columns: Vec<Value> = cols
                .iter()
                .map(|c| json!({"v": c.v, "base_facet": c.base_facet, "facet": FacetJson::from(&facets[c.base_facet])}))
                .collect();
            json!({"count": columns.len(), "columns": columns})
        }
        PolyCommand::Symmetries { input } => {
            let p = s.polytope(input)?;
            let syms: Vec<Value> = symmetries(&p)
                .into_iter()
                .map(|g| json!({"map": g.map, "permutation": g.permutation}))
                .collect();
            json!({"count": syms.len(), "symmetries": syms})
        }
        PolyCommand::Hilbert { input, degree } => {
            let p = s.polytope(input)?;
            json!({"degree": degree, "value": hilbert(&p, *degree)})
        }
        PolyCommand::Relations {
            input,
            degree,
            check_up_to,
        } => {
            let p = s.polytope(input)?;
            let d = match degree {
                Some(d) => *d,
                None => s.relation_degree(&p)?,
            };
            let rels: Vec<_> = binomial_relations(&p, d).iter().map(|r| r.to_json(&p)).collect();
            let mut out = json!({"degree": d, "count": rels.len(), "relations": rels});
            if let Some(e) = check_up_to {
                out["generated"] = json!(is_generated_in_degree(&p, d, *e));
            }
            out
        }
        PolyCommand::Dilate { input, factor } => {
            let p = s.polytope(input)?;
            serde_json::to_value(PolytopeJson::described(&p.dilate(*factor)?)).expect("polytope json")
        }
        PolyCommand::Pyramid { input } => {
            let p = s.polytope(input)?;
            let pyramids: Vec<Value> = is_pyramid(&p)
                .into_iter()
                .map(|py| json!({"apex": py.apex, "base": py.base.as_ref().map(PolytopeJson::compact)}))
                .collect();
            json!({"count": pyramids.len(), "pyramids": pyramids})
        }
    })
}
