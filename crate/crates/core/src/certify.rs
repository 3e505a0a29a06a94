//! The certification cascade: cheap support tests first, then separating
//! vectors, simplices, hyperplanes and enclosing slabs, stopping at the first
//! rule that yields a bound on the number of negative (or positive)
//! connected components.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::descartes::SignSequence;
use crate::linalg::{self, dot};
use crate::separation::{
    self, EnclosingSearch, EnclosingSearchOptions, EnclosingWitness, SeparationWitness, Strictness,
};
use crate::signomial::{Point, SignedSupport, Signomial};
use crate::simplex::{self, Hyperplane, SimplexWitness};
use crate::{Error, Tolerances};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum TargetSign {
    Negative,
    Positive,
}

/// Upper bound on the number of components of the target sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    Zero,
    One,
    Two,
    /// Only produced by the one-variable sign rule, for three or more.
    AtMost(usize),
    Unknown,
}

impl Bound {
    pub fn from_count(k: usize) -> Self {
        match k {
            0 => Bound::Zero,
            1 => Bound::One,
            2 => Bound::Two,
            k => Bound::AtMost(k),
        }
    }

    pub fn value(self) -> Option<usize> {
        match self {
            Bound::Zero => Some(0),
            Bound::One => Some(1),
            Bound::Two => Some(2),
            Bound::AtMost(k) => Some(k),
            Bound::Unknown => None,
        }
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Bound {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.value() {
            Some(k) => serializer.serialize_u64(k as u64),
            None => serializer.serialize_str("unknown"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Rule {
    /// No point of the target sign.
    EmptyNegative,
    /// Exactly one negative point: the negative set is log-convex.
    SingleNegativePoint,
    StrictSeparating,
    /// A simplex holding the negative points with the positive points in its
    /// negative vertex cones; the transformed signomial is convex.
    Convexification,
    /// The positive points lie on a hyperplane missing a negative point.
    PositiveHyperplane,
    /// At most `dim N(f)` positive points.
    FewPositivePoints,
    StrictEnclosing,
    /// Sign changes of the coefficient sequence (one variable only).
    Descartes,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum SimplexRoute {
    User,
    /// The Newton polytope is a simplex with every positive point a vertex.
    NewtonSimplex,
    NonStrictFamily,
    VeryStrict,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum Witness {
    None,
    Separation(SeparationWitness),
    Enclosing(EnclosingWitness),
    Simplex {
        route: SimplexRoute,
        simplex: SimplexWitness,
        /// Separating vectors the construction started from, if any.
        vectors: Vec<Point>,
    },
    Hyperplane(Hyperplane),
    Cardinality {
        positive_points: usize,
        newton_dimension: usize,
    },
    SignSequence {
        signs: String,
        sign_changes: usize,
        negative_bound: usize,
        positive_bound: usize,
    },
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Certificate {
    pub target: TargetSign,
    pub bound: Bound,
    pub rule: Rule,
    pub witness: Witness,
    /// What was tried and failed, truncation notes, and cross-checks.
    pub diagnostics: Vec<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CertifyOptions {
    pub tolerances: Tolerances,
    pub enclosing: EnclosingSearchOptions,
}

/// Support whose negative side is the target sign.
fn target_signomial(f: &Signomial, target: TargetSign) -> Signomial {
    match target {
        TargetSign::Negative => f.clone(),
        TargetSign::Positive => f.negated(),
    }
}

/// Bounds the number of connected components of the target sign. Positive
/// targets are handled by certifying `-f`. A supplied simplex is validated
/// up front; a simplex that fails is an error, not a fallback.
pub fn certify(
    f: &Signomial,
    target: TargetSign,
    user_simplex: Option<&SimplexWitness>,
    opts: &CertifyOptions,
) -> Result<Certificate, Error> {
    if f.is_empty() {
        return Err(Error::EmptySignomial);
    }
    let g = target_signomial(f, target);
    let s = g.signed_support();
    let tol = &opts.tolerances;
    if let Some(p) = user_simplex {
        p.check_support(&s, tol).map_err(Error::InvalidSimplex)?;
    }

    let mut cert = cascade(&s, target, user_simplex, opts)?;
    if s.dim == 1 {
        let d = univariate_certify(f, target)?;
        let better = match (d.bound.value(), cert.bound.value()) {
            (Some(a), Some(b)) => a < b,
            (Some(_), None) => true,
            _ => false,
        };
        if better {
            let mut d = d;
            d.diagnostics.extend(cert.diagnostics);
            d.diagnostics
                .push(format!("cascade gave {:?} by {:?}", cert.bound, cert.rule));
            cert = d;
        } else if let Some(k) = d.bound.value() {
            cert.diagnostics.push(format!("sign rule bound: {k}"));
        }
    }
    Ok(cert)
}

fn cascade(
    s: &SignedSupport,
    target: TargetSign,
    user_simplex: Option<&SimplexWitness>,
    opts: &CertifyOptions,
) -> Result<Certificate, Error> {
    let tol = &opts.tolerances;
    let n = s.dim;
    let mut diagnostics = Vec::new();
    let done = |bound, rule, witness, diagnostics| {
        Ok(Certificate {
            target,
            bound,
            rule,
            witness,
            diagnostics,
        })
    };

    if s.negative.is_empty() {
        return done(Bound::Zero, Rule::EmptyNegative, Witness::None, diagnostics);
    }
    if s.negative.len() == 1 {
        return done(Bound::One, Rule::SingleNegativePoint, Witness::None, diagnostics);
    }

    let separating = separation::find_separating_vector(s, tol)?;
    match &separating {
        Some(w) if w.strictness >= Strictness::Strict => {
            return done(
                Bound::One,
                Rule::StrictSeparating,
                Witness::Separation(w.clone()),
                diagnostics,
            );
        }
        Some(_) => diagnostics.push(String::from("separating: only non-strict vectors exist")),
        None => diagnostics.push(String::from("separating: no nonzero separating vector")),
    }

    if let Some(p) = user_simplex {
        return done(
            Bound::One,
            Rule::Convexification,
            Witness::Simplex {
                route: SimplexRoute::User,
                simplex: p.clone(),
                vectors: Vec::new(),
            },
            diagnostics,
        );
    }
    match newton_simplex(s, tol) {
        Ok(p) => {
            return done(
                Bound::One,
                Rule::Convexification,
                Witness::Simplex {
                    route: SimplexRoute::NewtonSimplex,
                    simplex: p,
                    vectors: Vec::new(),
                },
                diagnostics,
            )
        }
        Err(e) => diagnostics.push(format!("newton simplex: {e}")),
    }
    if separating.is_some() {
        let family = separation::independent_separating_vectors(s, n - 1, tol)?;
        if family.len() + 1 == n {
            match simplex::simplex_from_nonstrict_family(s, &family, tol) {
                Ok(p) => {
                    return done(
                        Bound::One,
                        Rule::Convexification,
                        Witness::Simplex {
                            route: SimplexRoute::NonStrictFamily,
                            simplex: p,
                            vectors: family,
                        },
                        diagnostics,
                    )
                }
                Err(e) => diagnostics.push(format!("non-strict family: {e}")),
            }
        } else {
            diagnostics.push(format!(
                "non-strict family: found {} independent separating vectors, need {}",
                family.len(),
                n - 1
            ));
        }
    } else if n == 1 {
        match simplex::simplex_from_nonstrict_family(s, &[], tol) {
            Ok(p) => {
                return done(
                    Bound::One,
                    Rule::Convexification,
                    Witness::Simplex {
                        route: SimplexRoute::NonStrictFamily,
                        simplex: p,
                        vectors: Vec::new(),
                    },
                    diagnostics,
                )
            }
            Err(e) => diagnostics.push(format!("non-strict family: {e}")),
        }
    }

    if let Some(h) = positive_hyperplane(s, tol) {
        return done(Bound::Two, Rule::PositiveHyperplane, Witness::Hyperplane(h), diagnostics);
    }
    diagnostics.push(String::from("positive points span the space or no hyperplane misses a negative point"));

    let all: Vec<Point> = s.all_points().cloned().collect();
    let newton_dimension = linalg::affine_dimension(&all, 1e-10).unwrap_or(0);
    if s.positive.len() <= newton_dimension {
        return done(
            Bound::Two,
            Rule::FewPositivePoints,
            Witness::Cardinality {
                positive_points: s.positive.len(),
                newton_dimension,
            },
            diagnostics,
        );
    }

    match separation::find_enclosing_vector(&s.swapped(), &opts.enclosing, tol)? {
        EnclosingSearch::Found(w) if w.strict => {
            return done(Bound::Two, Rule::StrictEnclosing, Witness::Enclosing(w), diagnostics);
        }
        EnclosingSearch::Found(_) => {
            diagnostics.push(String::from("enclosing: only non-strict vectors found"))
        }
        EnclosingSearch::NotFound => {
            diagnostics.push(String::from("enclosing: exhaustive search found no vector"))
        }
        EnclosingSearch::Truncated { directions_tried } => diagnostics.push(format!(
            "enclosing: truncated search, {directions_tried} directions sampled without a strict vector"
        )),
    }
    diagnostics.push(String::from(
        "no rule applies; this does not mean the region has more than two components",
    ));
    done(Bound::Unknown, Rule::None, Witness::None, diagnostics)
}

/// The Newton polytope as the simplex when it is one and every positive
/// point is a vertex; lower-dimensional simplices are padded with vertices
/// along the orthogonal complement.
fn newton_simplex(s: &SignedSupport, tol: &Tolerances) -> Result<SimplexWitness, Error> {
    let all: Vec<Point> = s.all_points().cloned().collect();
    let poly = crate::NewtonPolytope::of_points(&all)?;
    if !poly.is_simplex() {
        return Err(Error::Precondition(String::from("Newton polytope is not a simplex")));
    }
    if let Some(a) = s.positive.iter().find(|a| !poly.is_vertex(a)) {
        return Err(Error::Precondition(format!("positive point {a:?} is not a vertex")));
    }
    let mut vertices = poly.vertices.clone();
    let base = vertices[0].clone();
    let diffs: Vec<Point> = vertices[1..].iter().map(|v| linalg::sub(v, &base)).collect();
    let extent = s.coordinate_scale();
    for u in linalg::orthogonal_complement(&diffs, s.dim, 1e-10) {
        vertices.push(linalg::axpy(&base, extent, &u));
    }
    let p = SimplexWitness::from_vertices(vertices)?;
    p.check_support(s, tol).map_err(Error::InvalidSimplex)?;
    Ok(p)
}

/// A hyperplane through every positive point that misses some negative
/// point, from the normals of the positive points' affine hull.
fn positive_hyperplane(s: &SignedSupport, tol: &Tolerances) -> Option<Hyperplane> {
    let origin = s.positive.first()?;
    let diffs: Vec<Point> = s.positive[1..].iter().map(|a| linalg::sub(a, origin)).collect();
    let normals = if diffs.is_empty() {
        linalg::null_space(&[], s.dim, 1e-10)
    } else {
        linalg::null_space(&diffs, s.dim, 1e-10)
    };
    let threshold = 1e3 * tol.check * s.coordinate_scale();
    for v in normals {
        let v = linalg::scale(&v, 1.0 / linalg::norm(&v));
        let a = dot(&v, origin);
        if s.negative.iter().any(|b| libm::fabs(dot(&v, b) - a) > threshold) {
            return Some(Hyperplane { normal: v, offset: a });
        }
    }
    None
}

/// Bounds from the coefficient sign sequence of a one-variable signomial.
pub fn univariate_certify(f: &Signomial, target: TargetSign) -> Result<Certificate, Error> {
    if f.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: f.dim(),
        });
    }
    let mut terms: Vec<(f64, f64)> = f.terms().iter().map(|t| (t.exponent[0], t.coeff)).collect();
    terms.sort_by(|a, b| a.0.total_cmp(&b.0));
    let seq = SignSequence::from_coefficients(terms.iter().map(|t| t.1));
    let (neg, pos) = seq.signed_bounds().ok_or(Error::EmptySignomial)?;
    let bound = match target {
        TargetSign::Negative => neg,
        TargetSign::Positive => pos,
    };
    Ok(Certificate {
        target,
        bound: Bound::from_count(bound),
        rule: Rule::Descartes,
        witness: Witness::SignSequence {
            signs: seq.to_string(),
            sign_changes: seq.sign_changes(),
            negative_bound: neg,
            positive_bound: pos,
        },
        diagnostics: Vec::new(),
    })
}

/// If some negative vertex cone of `p` holds no positive point, the facet
/// opposite that vertex gives a separating vector (its negated normal).
/// Requires `p` to certify the support; returns the strongest such vector.
pub fn simplex_to_separating(
    s: &SignedSupport,
    p: &SimplexWitness,
    tol: &Tolerances,
) -> Option<SeparationWitness> {
    p.check_support(s, tol).ok()?;
    let occupied: Vec<usize> = s
        .positive
        .iter()
        .filter_map(|a| p.negative_cone_membership(a, tol.cone).map(|m| m.vertex))
        .collect();
    (0..=p.dim())
        .filter(|k| !occupied.contains(k))
        .map(|k| {
            let v = linalg::scale(&p.facets[k].normal, -1.0);
            SeparationWitness::for_vector(v, s, tol)
        })
        .filter(|w| w.strictness != Strictness::NotSeparating)
        .max_by_key(|w| w.strictness)
}

impl Certificate {
    /// Re-checks the witness against `f` by direct evaluation, independently
    /// of the search that produced it.
    pub fn revalidate(&self, f: &Signomial, tol: &Tolerances) -> Result<(), String> {
        let s = target_signomial(f, self.target).signed_support();
        let claimed = self.bound.value();
        let need = |ok: bool, what: &str| if ok { Ok(()) } else { Err(what.to_string()) };
        match (&self.rule, &self.witness) {
            (Rule::EmptyNegative, Witness::None) => {
                need(s.negative.is_empty(), "negative points present")?;
                need(claimed == Some(0), "bound must be 0")
            }
            (Rule::SingleNegativePoint, Witness::None) => {
                need(s.negative.len() == 1, "not exactly one negative point")?;
                need(claimed == Some(1), "bound must be 1")
            }
            (Rule::StrictSeparating, Witness::Separation(w)) => {
                w.revalidate(&s, tol)?;
                need(w.strictness >= Strictness::Strict, "separating vector is not strict")?;
                need(claimed == Some(1), "bound must be 1")
            }
            (Rule::Convexification, Witness::Simplex { simplex, .. }) => {
                simplex.revalidate(&s, tol)?;
                need(claimed == Some(1), "bound must be 1")
            }
            (Rule::PositiveHyperplane, Witness::Hyperplane(h)) => {
                let slack = 1e3 * tol.check * s.coordinate_scale() * linalg::norm(&h.normal);
                need(
                    s.positive.iter().all(|a| libm::fabs(h.signed_distance(a)) <= slack),
                    "a positive point is off the hyperplane",
                )?;
                need(
                    s.negative.iter().any(|b| libm::fabs(h.signed_distance(b)) > slack),
                    "every negative point is on the hyperplane",
                )?;
                need(claimed == Some(2), "bound must be 2")
            }
            (
                Rule::FewPositivePoints,
                Witness::Cardinality {
                    positive_points,
                    newton_dimension,
                },
            ) => {
                let all: Vec<Point> = s.all_points().cloned().collect();
                let dim = linalg::affine_dimension(&all, 1e-10).unwrap_or(0);
                need(
                    *positive_points == s.positive.len() && *newton_dimension == dim,
                    "recorded counts do not match the support",
                )?;
                need(s.positive.len() <= dim, "too many positive points")?;
                need(claimed == Some(2), "bound must be 2")
            }
            (Rule::StrictEnclosing, Witness::Enclosing(w)) => {
                w.revalidate(&s.swapped(), tol)?;
                need(w.strict, "enclosing vector is not strict")?;
                need(claimed == Some(2), "bound must be 2")
            }
            (Rule::Descartes, Witness::SignSequence { .. }) => {
                let fresh = univariate_certify(f, self.target).map_err(|e| format!("{e}"))?;
                need(fresh.witness == self.witness, "sign sequence does not match")?;
                need(fresh.bound == self.bound, "bound does not match")
            }
            (Rule::None, Witness::None) => need(self.bound == Bound::Unknown, "no rule but a bound"),
            (rule, witness) => Err(format!("witness {witness:?} does not fit rule {rule:?}")),
        }
    }
}
