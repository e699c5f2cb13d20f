use clap::Subcommand;
use polylin::automorphism::predicted_gamma_dim;
use polylin::hom::{degree1_rank, hom_equations, is_homomorphism, is_idempotent, tangent_dim_with};
use serde_json::{json, Value};

use crate::session::{hom_json, CliResult, Session};

#[derive(Debug, Subcommand)]
pub enum HomCommand {
    /// Integer equations of Hom(k[P], k[Q]).
    Equations {
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
    /// Whether a matrix defines a homomorphism.
    Check {
        #[arg(long)]
        hom: String,
    },
    /// The composite outer ∘ inner.
    Compose {
        #[arg(long)]
        outer: String,
        #[arg(long)]
        inner: String,
    },
    /// Rank of the degree-one part.
    Rank {
        #[arg(long)]
        hom: String,
    },
    /// Tangent dimension of the automorphism group at the identity.
    TangentDim {
        #[arg(long = "in")]
        input: String,
    },
    /// Whether an endomorphism is idempotent.
    Idempotent {
        #[arg(long)]
        hom: String,
    },
}

pub fn run(cmd: &HomCommand, s: &Session) -> CliResult<Value> {
    Ok(match cmd {
        HomCommand::Equations { source, target } => {
            let p = s.polytope(source)?;
            let q = s.polytope(target)?;
            let d = s.relation_degree(&p)?;
            let eqs = hom_equations(&p, &q, d);
            let mut out = serde_json::to_value(eqs.to_json()).expect("equations json");
            out["degree"] = json!(d);
            out["count"] = json!(eqs.polys.len());
            out
        }
        HomCommand::Check { hom } => {
            let f = s.hom(hom)?;
            let d = s.relation_degree(f.source())?;
            json!({"homomorphism": is_homomorphism(&f, d), "degree": d})
        }
        HomCommand::Compose { outer, inner } => {
            let g = s.hom(outer)?;
            let f = s.hom(inner)?;
            hom_json(&g.compose(&f)?)
        }
        HomCommand::Rank { hom } => {
            let r = degree1_rank(&s.hom(hom)?);
            json!({"rank": r.rank, "injective": r.injective, "surjective": r.surjective})
        }
        HomCommand::TangentDim { input } => {
            let p = s.polytope(input)?;
            let d = s.relation_degree(&p)?;
            json!({"dim": tangent_dim_with(&p, d, s.field), "predicted": predicted_gamma_dim(&p)?})
        }
        HomCommand::Idempotent { hom } => {
            json!({"idempotent": is_idempotent(&s.hom(hom)?)?})
        }
    })
}
