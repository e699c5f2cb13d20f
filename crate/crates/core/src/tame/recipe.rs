use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{free_extension, homothetic_blowup, homothetic_blowup_with_bound, minkowski_star, polytope_change, PolytopeChange};
use crate::arith::{Field, LaurentPoly, TermJson};
use crate::error::{Error, Result};
use crate::geometry::LatticePolytope;
use crate::hom::{ensure_homomorphism, GradedHom};
use crate::json::GradedHomJson;

/// A tree of tame constructors, read as JSON `{"op", "args", "children"}`.
///
/// | op | args | children |
/// |---|---|---|
/// | `identity` | `polytope` (default: the point of `ℤ^0`) | none |
/// | `hom` | `map` | none |
/// | `free_extension` | `polytope`, `apex`, `image`, `target` (leaf only) | base map or none |
/// | `minkowski_star` | | `f`, `g` |
/// | `homothetic_blowup` | `c`, `bound` (optional) | `f` |
/// | `polytope_change` | `source`, `target`, `source_map`, `target_map` | `f` |
/// | `compose` | | `g`, `f`, … giving `g ∘ f ∘ …` |
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TameRecipe {
    pub op: String,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub args: Value,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<TameRecipe>,
}

impl TameRecipe {
    pub fn new(op: &str, args: Value, children: Vec<TameRecipe>) -> Self {
        TameRecipe {
            op: op.to_string(),
            args,
            children,
        }
    }

    /// The leaf holding an explicit map.
    pub fn hom(f: &GradedHom) -> Self {
        Self::new("hom", json!({ "map": GradedHomJson::from_hom(f) }), vec![])
    }

    pub fn identity(p: &LatticePolytope) -> Self {
        Self::new("identity", json!({ "polytope": p }), vec![])
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(TameRecipe::size).sum::<usize>()
    }
}

fn arg<T: serde::de::DeserializeOwned>(args: &Value, key: &str) -> Result<Option<T>> {
    match args.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => serde_json::from_value(v.clone())
            .map(Some)
            .map_err(|e| Error::InvalidRecipe(format!("argument {key:?}: {e}"))),
    }
}

fn required<T: serde::de::DeserializeOwned>(args: &Value, key: &str) -> Result<T> {
    arg(args, key)?.ok_or_else(|| Error::InvalidRecipe(format!("missing argument {key:?}")))
}

fn arity(r: &TameRecipe, allowed: &[usize]) -> Result<()> {
    if allowed.contains(&r.children.len()) {
        Ok(())
    } else {
        Err(Error::InvalidRecipe(format!(
            "{} takes {allowed:?} children, got {}",
            r.op,
            r.children.len()
        )))
    }
}

/// Evaluates the recipe over `field`. Every intermediate map must pass the
/// homomorphism check; failures carry the path of the offending node.
pub fn evaluate_recipe(r: &TameRecipe, field: Field) -> Result<GradedHom> {
    eval(r, field, &format!("/{}", r.op))
}

fn eval(r: &TameRecipe, field: Field, path: &str) -> Result<GradedHom> {
    let mut children = Vec::with_capacity(r.children.len());
    for (i, child) in r.children.iter().enumerate() {
        children.push(eval(child, field, &format!("{path}/{i}:{}", child.op))?);
    }
    let wrap = |e: Error| Error::Recipe {
        path: path.to_string(),
        source: Box::new(e),
    };
    let f = apply(r, field, &children).map_err(wrap)?;
    ensure_homomorphism(&f).map_err(wrap)?;
    Ok(f)
}

fn apply(r: &TameRecipe, field: Field, children: &[GradedHom]) -> Result<GradedHom> {
    let args = &r.args;
    match r.op.as_str() {
        "identity" => {
            arity(r, &[0])?;
            let p: LatticePolytope = match arg(args, "polytope")? {
                Some(p) => p,
                None => LatticePolytope::new(0, vec![vec![]])?,
            };
            Ok(GradedHom::identity(&p, field))
        }
        "hom" => {
            arity(r, &[0])?;
            required::<GradedHomJson>(args, "map")?.to_hom(field)
        }
        "free_extension" => {
            arity(r, &[0, 1])?;
            let p: LatticePolytope = required(args, "polytope")?;
            let apex: Vec<i64> = required(args, "apex")?;
            let target: LatticePolytope = match (children.first(), arg(args, "target")?) {
                (Some(f0), None) => f0.target().clone(),
                (_, Some(t)) => t,
                (None, None) => return Err(Error::InvalidRecipe("free_extension leaf needs a target".into())),
            };
            let terms: Vec<TermJson> = required(args, "image")?;
            let q = LaurentPoly::from_json(field, target.ambient_dim(), &terms)?;
            free_extension(children.first(), &p, &apex, &target, &q)
        }
        "minkowski_star" => {
            arity(r, &[2])?;
            minkowski_star(&children[0], &children[1])
        }
        "homothetic_blowup" => {
            arity(r, &[1])?;
            let c: usize = required(args, "c")?;
            match arg::<usize>(args, "bound")? {
                Some(b) => homothetic_blowup_with_bound(&children[0], c, b),
                None => homothetic_blowup(&children[0], c),
            }
        }
        "polytope_change" => {
            arity(r, &[1])?;
            let change: PolytopeChange = if args.is_null() {
                PolytopeChange::default()
            } else {
                serde_json::from_value(args.clone()).map_err(|e| Error::InvalidRecipe(e.to_string()))?
            };
            polytope_change(&children[0], &change)
        }
        "compose" => {
            if children.len() < 2 {
                return Err(Error::InvalidRecipe("compose takes at least two children".into()));
            }
            let mut acc = children.last().unwrap().clone();
            for g in children[..children.len() - 1].iter().rev() {
                acc = g.compose(&acc)?;
            }
            Ok(acc)
        }
        other => Err(Error::InvalidRecipe(format!("unknown op {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::catalog;

    #[test]
    fn identity_leaf_is_one_by_one() {
        let f = evaluate_recipe(&TameRecipe::new("identity", Value::Null, vec![]), Field::Rational).unwrap();
        assert_eq!(f.matrix().rows(), 1);
        assert_eq!(f.matrix().cols(), 1);
    }

    #[test]
    fn two_free_extensions_from_k() {
        let text = r#"{"op": "free_extension",
            "args": {"polytope": "D1", "apex": [1], "image": [{"exponents": [2], "coeff": "3"}]},
            "children": [{"op": "free_extension",
                "args": {"polytope": {"vertices": [[0]]}, "apex": [0], "target": "2D1",
                         "image": [{"exponents": [0], "coeff": "1"}, {"exponents": [1], "coeff": "1"}]}}]}"#;
        let r: TameRecipe = serde_json::from_str(text).unwrap();
        let f = evaluate_recipe(&r, Field::Rational).unwrap();
        assert_eq!(f.source(), &catalog::simplex(1));
        assert_eq!(f.matrix().to_strings(), vec![vec!["1", "0"], vec!["1", "0"], vec!["0", "3"]]);
    }

    #[test]
    fn errors_carry_the_node_path() {
        let r = TameRecipe::new(
            "homothetic_blowup",
            json!({"c": 2}),
            vec![TameRecipe::new("minkowski_star", Value::Null, vec![])],
        );
        let err = evaluate_recipe(&r, Field::Rational).unwrap_err();
        match &err {
            Error::Recipe { path, .. } => assert_eq!(path, "/homothetic_blowup/0:minkowski_star"),
            e => panic!("unexpected {e}"),
        }
        assert!(matches!(err.root(), Error::InvalidRecipe(_)));
    }

    #[test]
    fn non_homomorphic_leaf_is_rejected() {
        let sq = catalog::square();
        let m = crate::arith::ExactMatrix::from_i64_rows(
            Field::Rational,
            &[vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]],
        )
        .unwrap();
        let f = GradedHom::new(sq.clone(), sq, m).unwrap();
        let err = evaluate_recipe(&TameRecipe::hom(&f), Field::Rational).unwrap_err();
        assert!(matches!(err.root(), Error::NotAHomomorphism(_)));
    }
}
