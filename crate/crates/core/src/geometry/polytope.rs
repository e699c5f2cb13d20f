use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::arith::lattice;
use crate::arith::{ExactMatrix, Field, LaurentPoly, Scalar};
use crate::error::{Error, Result};

/// A facet inequality `normal · x ≥ offset` with a primitive inward normal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    /// `normal · x − offset`; nonnegative exactly on the polytope's side.
    pub fn slack(&self, x: &[i64]) -> i64 {
        dot(&self.normal, x) - self.offset
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.slack(x) == 0
    }
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A convex lattice polytope with eagerly derived facets and lattice points.
///
/// Vertices and lattice points are kept in lexicographic order; the lattice
/// point order fixes the degree-1 monomial basis of `k[P]` everywhere.
#[derive(Debug, Clone)]
pub struct LatticePolytope {
    name: String,
    ambient_dim: usize,
    dim: usize,
    vertices: Vec<Vec<i64>>,
    /// Affine hull: `normal · x = offset` for each entry.
    equations: Vec<(Vec<i64>, i64)>,
    facets: Vec<Facet>,
    lattice_points: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.vertices == other.vertices
    }
}

impl Eq for LatticePolytope {}

impl Hash for LatticePolytope {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient_dim.hash(state);
        self.vertices.hash(state);
    }
}

impl LatticePolytope {
    /// The convex hull of `points`; non-extreme points are discarded.
    pub fn new(ambient_dim: usize, points: Vec<Vec<i64>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidPolytope("no vertices".into()));
        }
        for p in &points {
            if p.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    got: p.len(),
                });
            }
        }
        let points: Vec<Vec<i64>> = points.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let x0 = points[0].clone();
        let diffs: Vec<Vec<i64>> = points.iter().map(|p| sub(p, &x0)).collect();
        let q = Field::Rational;
        let diff_matrix = ExactMatrix::from_i64_rows(q, &diffs)?;
        let (_, coords) = diff_matrix.rref();
        let dim = coords.len();

        let mut equations: Vec<(Vec<i64>, i64)> = diff_matrix
            .kernel_basis()
            .into_iter()
            .map(|u| {
                let normal = integer_direction(&u);
                let offset = dot(&normal, &x0);
                (normal, offset)
            })
            .collect();
        equations.sort();

        let (facets, vertices) = if dim == 0 {
            (Vec::new(), vec![x0.clone()])
        } else {
            hull_in_coordinates(&points, &coords)
        };

        let mut polytope = LatticePolytope {
            name: String::new(),
            ambient_dim,
            dim,
            vertices,
            equations,
            facets,
            lattice_points: Vec::new(),
            index: HashMap::new(),
        };
        polytope.lattice_points = polytope.scan_lattice_points();
        polytope.index = polytope
            .lattice_points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        Ok(polytope)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Affine dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn equations(&self) -> &[(Vec<i64>, i64)] {
        &self.equations
    }

    /// Facet inequalities; fails on a single point.
    pub fn facets(&self) -> Result<&[Facet]> {
        if self.dim == 0 {
            return Err(Error::Degenerate("a point has no facets".into()));
        }
        Ok(&self.facets)
    }

    /// Facet inequalities, empty for a point.
    pub fn facet_list(&self) -> &[Facet] {
        &self.facets
    }

    pub fn lattice_points(&self) -> &[Vec<i64>] {
        &self.lattice_points
    }

    pub fn num_lattice_points(&self) -> usize {
        self.lattice_points.len()
    }

    /// Position of `x` in the lex-ordered lattice point list.
    pub fn point_index(&self, x: &[i64]) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        x.len() == self.ambient_dim
            && self.equations.iter().all(|(n, c)| dot(n, x) == *c)
            && self.facets.iter().all(|f| f.slack(x) >= 0)
    }

    /// Membership of a rational point `num / den`.
    pub fn contains_rational(&self, num: &[i64], den: i64) -> bool {
        num.len() == self.ambient_dim
            && self.equations.iter().all(|(n, c)| dot(n, num) == c * den)
            && self.facets.iter().all(|f| dot(&f.normal, num) >= f.offset * den)
    }

    pub fn contains_polytope(&self, other: &LatticePolytope) -> bool {
        other.vertices.iter().all(|v| self.contains(v))
    }

    pub fn facet_lattice_points(&self, facet: usize) -> Vec<Vec<i64>> {
        let f = &self.facets[facet];
        self.lattice_points
            .iter()
            .filter(|x| f.contains(x))
            .cloned()
            .collect()
    }

    pub fn facet_polytope(&self, facet: usize) -> Result<LatticePolytope> {
        let f = &self.facets[facet];
        let verts = self.vertices.iter().filter(|v| f.contains(v)).cloned().collect();
        LatticePolytope::new(self.ambient_dim, verts)
    }

    fn scan_lattice_points(&self) -> Vec<Vec<i64>> {
        let d = self.ambient_dim;
        let lo: Vec<i64> = (0..d)
            .map(|i| self.vertices.iter().map(|v| v[i]).min().unwrap())
            .collect();
        let hi: Vec<i64> = (0..d)
            .map(|i| self.vertices.iter().map(|v| v[i]).max().unwrap())
            .collect();
        let mut pts: Vec<Vec<i64>> = (0..d)
            .map(|i| lo[i]..=hi[i])
            .multi_cartesian_product()
            .filter(|x| self.contains(x))
            .collect();
        if d == 0 && pts.is_empty() {
            pts.push(Vec::new());
        }
        pts
    }

    pub fn dilate(&self, c: i64) -> Result<LatticePolytope> {
        if c < 1 {
            return Err(Error::InvalidInput(format!("dilation factor {c} must be positive")));
        }
        let verts = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| c * x).collect())
            .collect();
        let name = if self.name.is_empty() {
            String::new()
        } else {
            format!("{c}{}", self.name)
        };
        Ok(LatticePolytope::new(self.ambient_dim, verts)?.with_name(name))
    }

    pub fn translate(&self, shift: &[i64]) -> Result<LatticePolytope> {
        if shift.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: shift.len(),
            });
        }
        let verts = self.vertices.iter().map(|v| add(v, shift)).collect();
        LatticePolytope::new(self.ambient_dim, verts)
    }

    pub fn minkowski_sum(&self, other: &LatticePolytope) -> Result<LatticePolytope> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: other.ambient_dim,
            });
        }
        let sums = self
            .vertices
            .iter()
            .cartesian_product(&other.vertices)
            .map(|(a, b)| add(a, b))
            .collect();
        LatticePolytope::new(self.ambient_dim, sums)
    }

    /// Convex hull of the union of two polytopes.
    pub fn hull_union(&self, other: &LatticePolytope) -> Result<LatticePolytope> {
        let mut pts = self.vertices.clone();
        pts.extend(other.vertices.iter().cloned());
        LatticePolytope::new(self.ambient_dim, pts)
    }

    /// The Cartesian product `self × other`.
    pub fn product(&self, other: &LatticePolytope) -> Result<LatticePolytope> {
        let verts = self
            .vertices
            .iter()
            .cartesian_product(&other.vertices)
            .map(|(a, b)| a.iter().chain(b).copied().collect())
            .collect();
        LatticePolytope::new(self.ambient_dim + other.ambient_dim, verts)
    }

    /// Lattice generated by the differences of lattice points, as an HNF basis.
    pub fn difference_lattice(&self) -> Vec<Vec<i64>> {
        let x0 = &self.lattice_points[0];
        let diffs: Vec<Vec<i64>> = self.lattice_points[1..].iter().map(|p| sub(p, x0)).collect();
        lattice::hermite_basis(&diffs)
    }

    /// True when the lattice points generate `aff(P) ∩ ℤ^d` affinely, i.e.
    /// `gp(S_P)` is the full lattice of the cone over `P`.
    pub fn is_lattice_normalized(&self) -> bool {
        let basis = self.difference_lattice();
        basis.len() == self.dim && lattice::saturation_index(&basis) == 1
    }

    /// Faces containing the given points: the smallest face is returned.
    pub fn smallest_face_containing(&self, points: &[Vec<i64>]) -> Result<LatticePolytope> {
        let verts: Vec<Vec<i64>> = self
            .vertices
            .iter()
            .filter(|v| {
                self.facets
                    .iter()
                    .filter(|f| points.iter().all(|p| f.contains(p)))
                    .all(|f| f.contains(v))
            })
            .cloned()
            .collect();
        LatticePolytope::new(self.ambient_dim, verts)
    }

    /// Whether `face` is a face of `self` (including `self`).
    pub fn is_face(&self, face: &LatticePolytope) -> bool {
        face.ambient_dim == self.ambient_dim
            && face.vertices.iter().all(|v| self.vertices.contains(v))
            && self
                .smallest_face_containing(&face.vertices)
                .is_ok_and(|f| f == *face)
    }

    /// All nonempty faces, ordered by dimension then vertex lists.
    pub fn faces(&self) -> Vec<LatticePolytope> {
        let all: BTreeSet<usize> = (0..self.vertices.len()).collect();
        let facet_sets: Vec<BTreeSet<usize>> = self
            .facets
            .iter()
            .map(|f| {
                (0..self.vertices.len())
                    .filter(|&i| f.contains(&self.vertices[i]))
                    .collect()
            })
            .collect();
        let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        found.insert(all);
        let mut frontier: Vec<BTreeSet<usize>> = found.iter().cloned().collect();
        while let Some(s) = frontier.pop() {
            for f in &facet_sets {
                let meet: BTreeSet<usize> = s.intersection(f).copied().collect();
                if !meet.is_empty() && found.insert(meet.clone()) {
                    frontier.push(meet);
                }
            }
        }
        let mut faces: Vec<LatticePolytope> = found
            .into_iter()
            .map(|s| {
                let verts = s.into_iter().map(|i| self.vertices[i].clone()).collect();
                LatticePolytope::new(self.ambient_dim, verts).expect("face of a polytope")
            })
            .collect();
        faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.vertices.cmp(&b.vertices)));
        faces
    }

    /// Newton polytope of a nonzero Laurent polynomial.
    pub fn newton_polytope(f: &LaurentPoly) -> Result<LatticePolytope> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial("Newton polytope of zero".into()));
        }
        LatticePolytope::new(f.dim(), f.support())
    }
}

/// Facets and vertices of a polytope of dimension `coords.len()`, computed in
/// the coordinate projection onto `coords` (injective on the affine hull).
fn hull_in_coordinates(points: &[Vec<i64>], coords: &[usize]) -> (Vec<Facet>, Vec<Vec<i64>>) {
    let k = coords.len();
    let d = points[0].len();
    let proj: Vec<Vec<i64>> = points
        .iter()
        .map(|p| coords.iter().map(|&c| p[c]).collect())
        .collect();
    let q = Field::Rational;
    let mut facets: BTreeSet<Facet> = BTreeSet::new();
    for subset in (0..proj.len()).combinations(k) {
        let base = &proj[subset[0]];
        let rows: Vec<Vec<i64>> = subset[1..].iter().map(|&i| sub(&proj[i], base)).collect();
        let kernel = if rows.is_empty() {
            vec![vec![q.one(); 1]]
        } else {
            let m = ExactMatrix::from_i64_rows(q, &rows).expect("rectangular");
            if m.rank() != k - 1 {
                continue;
            }
            m.kernel_basis()
        };
        if kernel.len() != 1 {
            continue;
        }
        let mut normal = integer_direction(&kernel[0]);
        let mut offset = dot(&normal, base);
        let values: Vec<i64> = proj.iter().map(|p| dot(&normal, p) - offset).collect();
        let below = values.iter().any(|&v| v < 0);
        let above = values.iter().any(|&v| v > 0);
        if below && above {
            continue;
        }
        if below {
            normal.iter_mut().for_each(|x| *x = -*x);
            offset = -offset;
        }
        let mut lifted = vec![0; d];
        for (i, &c) in coords.iter().enumerate() {
            lifted[c] = normal[i];
        }
        facets.insert(Facet {
            normal: lifted,
            offset,
        });
    }
    let facets: Vec<Facet> = facets.into_iter().collect();
    let vertices = points
        .iter()
        .filter(|p| {
            let tight: Vec<Vec<i64>> = facets
                .iter()
                .filter(|f| f.contains(p))
                .map(|f| coords.iter().map(|&c| f.normal[c]).collect())
                .collect();
            lattice::rank(&tight) == k
        })
        .cloned()
        .collect();
    (facets, vertices)
}

/// Scales a rational vector to the primitive integer vector on its ray.
pub(crate) fn integer_direction(v: &[Scalar]) -> Vec<i64> {
    let rationals: Vec<num_rational::BigRational> = v
        .iter()
        .map(|s| match s {
            Scalar::Rational(r) => r.clone(),
            Scalar::Prime { .. } => panic!("integer direction needs rational input"),
        })
        .collect();
    let lcm = rationals
        .iter()
        .fold(BigInt::from(1), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rationals
        .iter()
        .map(|r| (r * &lcm).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::from(0), |acc, x| acc.gcd(x));
    ints.iter()
        .map(|x| {
            let y = if g.is_positive() { x / &g } else { x.clone() };
            y.to_i64().expect("small integer direction")
        })
        .collect()
}

pub(crate) fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl fmt::Display for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.name.is_empty() {
            write!(f, "{} ", self.name)?;
        }
        write!(f, "conv{:?}", self.vertices)
    }
}
