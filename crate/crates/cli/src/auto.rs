use clap::Subcommand;
use polylin::automorphism::{column_vectors, compose_normal_form, elementary, toric, NormalFormBlock};
use polylin::geometry::AffineLatticeMap;
use polylin::Error;
use serde::Deserialize;
use serde_json::Value;

use crate::session::{hom_json, parse_vector, CliError, CliResult, Session};

#[derive(Debug, Subcommand)]
pub enum AutoCommand {
    /// The elementary automorphism of a column vector.
    Elementary {
        #[arg(long = "in")]
        input: String,
        /// Column vector, e.g. `0,-1`.
        #[arg(long, allow_hyphen_values = true)]
        column: String,
        /// Base facet index; defaults to the first one admitting the column.
        #[arg(long)]
        facet: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// The toric automorphism scaling `(x, 1)` by `∏ ξ^{(x, 1)}`.
    Toric {
        #[arg(long = "in")]
        input: String,
        /// `dim + 1` comma-separated nonzero scalars.
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
    },
    /// `α_1 ∘ ⋯ ∘ α_r ∘ τ ∘ σ` from a normal-form description.
    NormalForm {
        #[arg(long = "in")]
        input: String,
        /// `{"symmetry": map, "toric": [..], "blocks": [{"facet", "lambdas": [{"v", "lambda"}]}]}`
        #[arg(long)]
        spec: String,
    },
}

#[derive(Debug, Deserialize)]
struct LambdaJson {
    v: Vec<i64>,
    lambda: String,
}

#[derive(Debug, Deserialize)]
struct BlockJson {
    facet: usize,
    #[serde(default)]
    lambdas: Vec<LambdaJson>,
}

#[derive(Debug, Deserialize)]
struct NormalFormJson {
    #[serde(default)]
    symmetry: Option<AffineLatticeMap>,
    #[serde(default)]
    toric: Option<Vec<String>>,
    #[serde(default)]
    blocks: Vec<BlockJson>,
}

pub fn run(cmd: &AutoCommand, s: &Session) -> CliResult<Value> {
    Ok(match cmd {
        AutoCommand::Elementary {
            input,
            column,
            facet,
            lambda,
        } => {
            let p = s.polytope(input)?;
            let v = parse_vector(column)?;
            let col = column_vectors(&p)?
                .into_iter()
                .find(|c| c.v == v && facet.is_none_or(|f| c.base_facet == f))
                .ok_or_else(|| CliError::Domain(Error::NotAColumn(format!("{v:?} on {p}"))))?;
            hom_json(&elementary(&p, &col, &s.scalar(lambda)?)?)
        }
        AutoCommand::Toric { input, xi } => {
            let p = s.polytope(input)?;
            hom_json(&toric(&p, &s.scalars(xi)?)?)
        }
        AutoCommand::NormalForm { input, spec } => {
            let p = s.polytope(input)?;
            let nf: NormalFormJson = s.read(spec)?;
            let tau = nf
                .toric
                .as_ref()
                .map(|xs| xs.iter().map(|x| s.scalar(x)).collect::<CliResult<Vec<_>>>())
                .transpose()?;
            let blocks = nf
                .blocks
                .iter()
                .map(|b| {
                    Ok(NormalFormBlock {
                        facet: b.facet,
                        lambdas: b
                            .lambdas
                            .iter()
                            .map(|l| Ok((l.v.clone(), s.scalar(&l.lambda)?)))
                            .collect::<CliResult<Vec<_>>>()?,
                    })
                })
                .collect::<CliResult<Vec<_>>>()?;
            hom_json(&compose_normal_form(&p, s.field, nf.symmetry.as_ref(), tau.as_deref(), &blocks)?)
        }
    })
}
