use std::collections::BTreeMap;

use clap::Subcommand;
use polylin::arith::TermJson;
use polylin::hom::is_idempotent;
use polylin::tame::{
    base_inclusion, decompose_veronese, detect_segmental_fibrations, evaluate_recipe, face_inclusion, face_retraction,
    factor_affine, fibration_retraction, free_extension, homothetic_blowup, homothetic_blowup_with_bound,
    minkowski_star, polytope_change, veronese_recipe, Fibration, PolytopeChange, TameRecipe,
};
use polylin::LaurentPoly;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::session::{hom_json, parse_vector, CliResult, Session};

#[derive(Debug, Subcommand)]
pub enum TameCommand {
    /// Face retraction k[P] → k[F].
    Retract {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        face: String,
    },
    /// Face inclusion k[F] → k[P].
    Include {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        face: String,
    },
    /// Segmental lattice fibrations.
    Fibrations {
        #[arg(long = "in")]
        input: String,
    },
    /// Retraction of P onto the base of a fibration.
    FibRetract {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        fibration: String,
        /// Emit the idempotent ι∘ρ instead of ρ.
        #[arg(long)]
        idempotent: bool,
    },
    /// Homothetic blow-up f^(c).
    Blowup {
        #[arg(long)]
        hom: String,
        #[arg(long)]
        c: usize,
        /// Witness search bound; defaults to c·#L_P.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Minkowski star f ⋆ g.
    Star {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Free extension across a pyramid apex.
    Extend {
        /// Map on the base; omitted when P is a point.
        #[arg(long)]
        base: Option<String>,
        #[arg(long = "in")]
        input: String,
        #[arg(long, allow_hyphen_values = true)]
        apex: String,
        /// Target polytope; defaults to the target of the base map.
        #[arg(long)]
        target: Option<String>,
        /// Image of the apex as a list of `{"exponents", "coeff"}` terms.
        #[arg(long)]
        image: String,
    },
    /// Polytope change: restriction, enlargement and unimodular transport.
    Change {
        #[arg(long)]
        hom: String,
        /// `{"source", "target", "source_map", "target_map"}`, all optional.
        #[arg(long)]
        change: String,
    },
    /// Factor an integral affine map on cΔ_n as v + c·β.
    FactorAffine {
        #[arg(long)]
        c: usize,
        #[arg(long)]
        n: usize,
        /// List of `{"barycentric": [..], "value": [..]}`.
        #[arg(long)]
        alpha: String,
    },
    /// Decompose a map out of k[cΔ_n].
    Decompose {
        #[arg(long)]
        hom: String,
        /// Emit a tame recipe evaluating to the map.
        #[arg(long)]
        recipe: bool,
    },
    /// Evaluate a tame recipe.
    Recipe {
        #[arg(long)]
        recipe: String,
    },
}

#[derive(Debug, Deserialize)]
struct AlphaEntry {
    barycentric: Vec<usize>,
    value: Vec<i64>,
}

pub fn run(cmd: &TameCommand, s: &Session) -> CliResult<Value> {
    let field = s.field;
    Ok(match cmd {
        TameCommand::Retract { input, face } => {
            hom_json(&face_retraction(&s.polytope(input)?, &s.polytope(face)?, field)?)
        }
        TameCommand::Include { input, face } => {
            hom_json(&face_inclusion(&s.polytope(input)?, &s.polytope(face)?, field)?)
        }
        TameCommand::Fibrations { input } => {
            let fibs = detect_segmental_fibrations(&s.polytope(input)?)?;
            json!({"count": fibs.len(), "fibrations": fibs})
        }
        TameCommand::FibRetract {
            input,
            fibration,
            idempotent,
        } => {
            let p = s.polytope(input)?;
            let fib: Fibration = s.read(fibration)?;
            let rho = fibration_retraction(&p, &fib, field)?;
            if *idempotent {
                let e = base_inclusion(&p, &fib, field)?.compose(&rho)?;
                let mut out = hom_json(&e);
                out["idempotent"] = json!(is_idempotent(&e)?);
                out
            } else {
                hom_json(&rho)
            }
        }
        TameCommand::Blowup { hom, c, bound } => {
            let f = s.hom(hom)?;
            hom_json(&match bound {
                Some(b) => homothetic_blowup_with_bound(&f, *c, *b)?,
                None => homothetic_blowup(&f, *c)?,
            })
        }
        TameCommand::Star { f, g } => hom_json(&minkowski_star(&s.hom(f)?, &s.hom(g)?)?),
        TameCommand::Extend {
            base,
            input,
            apex,
            target,
            image,
        } => {
            let base = base.as_deref().map(|b| s.hom(b)).transpose()?;
            let p = s.polytope(input)?;
            let q = match (target, &base) {
                (Some(t), _) => s.polytope(t)?,
                (None, Some(f)) => f.target().clone(),
                (None, None) => {
                    return Err(crate::session::CliError::usage("UsageError", "--target is required without --base"))
                }
            };
            let terms: Vec<TermJson> = s.read(image)?;
            let img = LaurentPoly::from_json(field, q.ambient_dim(), &terms)?;
            hom_json(&free_extension(base.as_ref(), &p, &parse_vector(apex)?, &q, &img)?)
        }
        TameCommand::Change { hom, change } => {
            let c: PolytopeChange = s.read(change)?;
            hom_json(&polytope_change(&s.hom(hom)?, &c)?)
        }
        TameCommand::FactorAffine { c, n, alpha } => {
            let entries: Vec<AlphaEntry> = s.read(alpha)?;
            let alpha: BTreeMap<Vec<usize>, Vec<i64>> =
                entries.into_iter().map(|e| (e.barycentric, e.value)).collect();
            serde_json::to_value(factor_affine(*c, *n, &alpha)?).expect("factorization json")
        }
        TameCommand::Decompose { hom, recipe } => {
            let f = s.hom(hom)?;
            let dec = decompose_veronese(&f)?;
            if *recipe {
                serde_json::to_value(veronese_recipe(&f, &dec)?).expect("recipe json")
            } else {
                json!({
                    "c": dec.c,
                    "vertices": dec.vertices,
                    "psi": dec.psi.to_string(),
                    "eta": dec.eta.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "t": dec.t.iter().map(ToString::to_string).collect::<Vec<_>>(),
                })
            }
        }
        TameCommand::Recipe { recipe } => {
            let r: TameRecipe = s.read(recipe)?;
            hom_json(&evaluate_recipe(&r, field)?)
        }
    })
}
