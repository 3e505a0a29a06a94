//! Signomials on the positive orthant and the support-level operations on
//! them: signed supports, restriction, monomial changes of variables, the
//! one-variable signomials induced along log-rays, and Newton polytopes.

use alloc::vec;
use alloc::vec::Vec;

use crate::linalg;
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::Error;

/// An exponent vector.
pub type Point = Vec<f64>;

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Term {
    pub coeff: f64,
    pub exponent: Point,
}

/// `f(x) = sum c_mu x^mu` with nonzero coefficients and pairwise distinct
/// exponent vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Signomial {
    dim: usize,
    terms: Vec<Term>,
}

impl Signomial {
    /// Builds a signomial, merging terms with bitwise-equal exponents.
    ///
    /// Explicit zero coefficients are rejected; a merged coefficient that
    /// cancels to zero drops the term.
    pub fn new<I, E>(dim: usize, terms: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (f64, E)>,
        E: AsRef<[f64]>,
    {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut merged: Vec<Term> = Vec::new();
        for (index, (coeff, exponent)) in terms.into_iter().enumerate() {
            let exponent = exponent.as_ref();
            if exponent.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: exponent.len(),
                });
            }
            if !coeff.is_finite() {
                return Err(Error::NonFinite("coefficient"));
            }
            if exponent.iter().any(|e| !e.is_finite()) {
                return Err(Error::NonFinite("exponent"));
            }
            if coeff == 0.0 {
                return Err(Error::ZeroCoefficient { index });
            }
            match merged.iter_mut().find(|t| t.exponent == exponent) {
                Some(t) => t.coeff += coeff,
                None => merged.push(Term {
                    coeff,
                    exponent: exponent.to_vec(),
                }),
            }
        }
        merged.retain(|t| t.coeff != 0.0);
        Ok(Self { dim, terms: merged })
    }

    fn from_terms_unchecked(dim: usize, terms: Vec<Term>) -> Self {
        Self { dim, terms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> Vec<Point> {
        self.terms.iter().map(|t| t.exponent.clone()).collect()
    }

    pub fn coefficient(&self, exponent: &[f64]) -> Option<f64> {
        self.terms
            .iter()
            .find(|t| t.exponent == exponent)
            .map(|t| t.coeff)
    }

    /// `-f`
    pub fn negated(&self) -> Self {
        Self::from_terms_unchecked(
            self.dim,
            self.terms
                .iter()
                .map(|t| Term {
                    coeff: -t.coeff,
                    exponent: t.exponent.clone(),
                })
                .collect(),
        )
    }

    /// Same terms, ordered lexicographically by exponent.
    pub fn normalized(&self) -> Self {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| {
            a.exponent
                .iter()
                .zip(&b.exponent)
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(core::cmp::Ordering::Equal)
        });
        Self::from_terms_unchecked(self.dim, terms)
    }

    /// `f(x)` for strictly positive `x`, evaluated as `sum c exp(mu . log x)`.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64, Error> {
        self.check_point(x)?;
        let logs: Vec<f64> = x.iter().map(|v| libm::log(*v)).collect();
        self.evaluate_log(&logs)
    }

    /// `f(exp(xi))`, i.e. evaluation at log coordinates `xi`.
    pub fn evaluate_log(&self, xi: &[f64]) -> Result<f64, Error> {
        self.evaluate_log_with_scale(xi).map(|(v, _)| v)
    }

    /// Returns `(f(exp(xi)), max |term|)`; the second value scales sign dead-bands.
    pub fn evaluate_log_with_scale(&self, xi: &[f64]) -> Result<(f64, f64), Error> {
        if xi.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: xi.len(),
            });
        }
        let mut sum = 0.0;
        let mut largest = 0.0f64;
        for t in &self.terms {
            let value = t.coeff * monomial_log(&t.exponent, xi);
            if !value.is_finite() {
                return Err(Error::Overflow);
            }
            largest = largest.max(libm::fabs(value));
            sum += value;
        }
        if !sum.is_finite() {
            return Err(Error::Overflow);
        }
        Ok((sum, largest))
    }

    fn check_point(&self, x: &[f64]) -> Result<(), Error> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        match x.iter().position(|v| !(*v > 0.0) || !v.is_finite()) {
            Some(index) => Err(Error::NonPositivePoint {
                index,
                value: x[index],
            }),
            None => Ok(()),
        }
    }

    pub fn signed_support(&self) -> SignedSupport {
        let (pos, neg): (Vec<&Term>, Vec<&Term>) = self.terms.iter().partition(|t| t.coeff > 0.0);
        SignedSupport {
            dim: self.dim,
            positive: pos.into_iter().map(|t| t.exponent.clone()).collect(),
            negative: neg.into_iter().map(|t| t.exponent.clone()).collect(),
        }
    }

    /// `f` restricted to the exponents in `subset`, which must lie in the support.
    pub fn restrict(&self, subset: &[Point]) -> Result<Self, Error> {
        if subset.iter().any(|s| self.coefficient(s).is_none()) {
            return Err(Error::NotInSupport);
        }
        let terms = self
            .terms
            .iter()
            .filter(|t| subset.contains(&t.exponent))
            .cloned()
            .collect();
        Ok(Self::from_terms_unchecked(self.dim, terms))
    }

    /// `F(x) = x^shift f(h_M(x))`; exponent `mu` becomes `M mu + shift`.
    pub fn monomial_transform(&self, map: &AffineMap) -> Result<Self, Error> {
        if map.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: map.dim(),
            });
        }
        // M invertible keeps images distinct; going through `new` still merges
        // if rounding collapses two of them.
        Self::new(
            self.dim,
            self.terms
                .iter()
                .map(|t| (t.coeff, map.apply(&t.exponent))),
        )
    }

    /// The one-variable signomial `t -> f(t^v x)` (coefficients `c x^mu`,
    /// exponents `v . mu`). Exponents closer than `1e-12 * (1 + |e|)` merge.
    pub fn induced_univariate(&self, v: &[f64], x: &[f64]) -> Result<UnivariateSignomial, Error> {
        self.check_point(x)?;
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        let logs: Vec<f64> = x.iter().map(|val| libm::log(*val)).collect();
        let mut raw = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let c = t.coeff * monomial_log(&t.exponent, &logs);
            if !c.is_finite() {
                return Err(Error::Overflow);
            }
            raw.push((c, linalg::dot(v, &t.exponent)));
        }
        Ok(UnivariateSignomial::from_pairs_merging(raw, 1e-12))
    }

    /// Vertices and affine dimension of the convex hull of the support.
    pub fn newton_polytope(&self) -> Result<NewtonPolytope, Error> {
        NewtonPolytope::of_points(&self.support())
    }
}

fn monomial_log(exponent: &[f64], xi: &[f64]) -> f64 {
    libm::exp(linalg::dot(exponent, xi))
}

/// Exponent points split by coefficient sign.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SignedSupport {
    pub dim: usize,
    pub positive: Vec<Point>,
    pub negative: Vec<Point>,
}

impl SignedSupport {
    pub fn new(dim: usize, positive: Vec<Point>, negative: Vec<Point>) -> Self {
        Self {
            dim,
            positive,
            negative,
        }
    }

    /// Support of `-f`: the two sides swapped.
    pub fn swapped(&self) -> Self {
        Self {
            dim: self.dim,
            positive: self.negative.clone(),
            negative: self.positive.clone(),
        }
    }

    pub fn all_points(&self) -> impl Iterator<Item = &Point> {
        self.positive.iter().chain(self.negative.iter())
    }

    /// `1 + max |coordinate|` over all points.
    pub fn coordinate_scale(&self) -> f64 {
        1.0 + self
            .all_points()
            .flat_map(|p| p.iter())
            .fold(0.0f64, |acc, x| acc.max(libm::fabs(*x)))
    }
}

/// `mu -> M mu + shift` with `M` invertible.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AffineMap {
    matrix: Vec<Vec<f64>>,
    shift: Vec<f64>,
}

impl AffineMap {
    /// Rejects `|det M| <= 1e-12 * (max |M_ij|)^n`.
    pub fn new(matrix: Vec<Vec<f64>>, shift: Vec<f64>) -> Result<Self, Error> {
        let n = shift.len();
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        if matrix.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: matrix.len(),
            });
        }
        if let Some(row) = matrix.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: row.len(),
            });
        }
        if matrix.iter().flatten().chain(&shift).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("affine map"));
        }
        let det = linalg::determinant(&matrix);
        let scale = linalg::max_abs(&matrix);
        if !(libm::fabs(det) > 1e-12 * libm::pow(scale, n as f64)) || scale == 0.0 {
            return Err(Error::SingularMatrix { det });
        }
        Ok(Self { matrix, shift })
    }

    pub fn identity(n: usize) -> Self {
        let matrix = (0..n)
            .map(|i| {
                let mut row = vec![0.0; n];
                row[i] = 1.0;
                row
            })
            .collect();
        Self {
            matrix,
            shift: vec![0.0; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.shift.len()
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.matrix
    }

    pub fn shift(&self) -> &[f64] {
        &self.shift
    }

    pub fn apply(&self, mu: &[f64]) -> Point {
        linalg::add(&linalg::mat_vec(&self.matrix, mu), &self.shift)
    }

    /// The monomial change of variables `h_M(x)_j = prod_i x_i^{M_ij}`.
    pub fn monomial_map(&self, x: &[f64]) -> Vec<f64> {
        let logs: Vec<f64> = x.iter().map(|v| libm::log(*v)).collect();
        let n = self.dim();
        (0..n)
            .map(|j| libm::exp((0..n).map(|i| self.matrix[i][j] * logs[i]).sum()))
            .collect()
    }
}

/// `g(t) = sum a_k t^{e_k}` with strictly increasing exponents.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct UnivariateSignomial {
    terms: Vec<(f64, f64)>,
}

impl UnivariateSignomial {
    /// From `(coefficient, exponent)` pairs; equal exponents merge and zero
    /// coefficients are dropped.
    pub fn new(pairs: impl IntoIterator<Item = (f64, f64)>) -> Self {
        Self::from_pairs_merging(pairs.into_iter().collect(), 0.0)
    }

    fn from_pairs_merging(mut pairs: Vec<(f64, f64)>, rel_tol: f64) -> Self {
        pairs.sort_by(|a, b| a.1.total_cmp(&b.1));
        let mut terms: Vec<(f64, f64)> = Vec::with_capacity(pairs.len());
        for (c, e) in pairs {
            match terms.last_mut() {
                Some(last) if libm::fabs(e - last.1) <= rel_tol * (1.0 + libm::fabs(e)) => {
                    last.0 += c;
                }
                _ => terms.push((c, e)),
            }
        }
        terms.retain(|(c, _)| *c != 0.0);
        Self { terms }
    }

    /// `(coefficient, exponent)` in increasing exponent order.
    pub fn terms(&self) -> &[(f64, f64)] {
        &self.terms
    }

    pub fn evaluate(&self, t: f64) -> f64 {
        let lt = libm::log(t);
        self.terms
            .iter()
            .map(|(c, e)| c * libm::exp(e * lt))
            .sum()
    }

    pub fn leading_coefficient(&self) -> Option<f64> {
        self.terms.last().map(|t| t.0)
    }

    pub fn sign_sequence(&self) -> crate::descartes::SignSequence {
        crate::descartes::SignSequence::from_coefficients(self.terms.iter().map(|t| t.0))
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NewtonPolytope {
    pub vertices: Vec<Point>,
    pub dimension: usize,
}

impl NewtonPolytope {
    pub fn of_points(points: &[Point]) -> Result<Self, Error> {
        let dimension = linalg::affine_dimension(points, 1e-12).ok_or(Error::EmptySignomial)?;
        let n = points[0].len();
        let vertices = match (n, dimension) {
            (_, 0) => vec![points[0].clone()],
            (1, _) | (_, 1) => extreme_pair(points),
            (2, _) => monotone_chain(points),
            _ => points
                .iter()
                .enumerate()
                .filter(|(i, p)| !in_hull_of_others(points, *i, p))
                .map(|(_, p)| p.clone())
                .collect(),
        };
        Ok(Self {
            vertices,
            dimension,
        })
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.dimension + 1
    }

    pub fn is_vertex(&self, p: &[f64]) -> bool {
        self.vertices.iter().any(|v| v.as_slice() == p)
    }
}

/// Endpoints of a collinear point set.
fn extreme_pair(points: &[Point]) -> Vec<Point> {
    let first = &points[0];
    let dir = points
        .iter()
        .map(|p| linalg::sub(p, first))
        .max_by(|a, b| linalg::norm(a).total_cmp(&linalg::norm(b)))
        .unwrap();
    let key = |p: &Point| linalg::dot(&linalg::sub(p, first), &dir);
    let lo = points.iter().min_by(|a, b| key(a).total_cmp(&key(b))).unwrap();
    let hi = points.iter().max_by(|a, b| key(a).total_cmp(&key(b))).unwrap();
    vec![lo.clone(), hi.clone()]
}

fn cross(o: &[f64], a: &[f64], b: &[f64]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Andrew's monotone chain; collinear boundary points are not vertices.
fn monotone_chain(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<&Point> = points.iter().collect();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let scale = points
        .iter()
        .flat_map(|p| p.iter())
        .fold(1.0f64, |acc, x| acc.max(libm::fabs(*x)));
    let eps = 1e-12 * scale * scale;
    let mut hull: Vec<&Point> = Vec::with_capacity(pts.len() * 2);
    for pass in 0..2 {
        let start = hull.len();
        let iter: &mut dyn Iterator<Item = &&Point> = if pass == 0 {
            &mut pts.iter()
        } else {
            &mut pts.iter().rev()
        };
        for p in iter {
            while hull.len() >= start + 2
                && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= eps
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull.into_iter().cloned().collect()
}

/// Is `p` a convex combination of the other points? (LP feasibility)
fn in_hull_of_others(points: &[Point], skip: usize, p: &[f64]) -> bool {
    let others: Vec<&Point> = points
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != skip)
        .map(|(_, q)| q)
        .collect();
    in_convex_hull(&others, p, 1e-9)
}

/// LP membership test: `p = sum lambda_j q_j`, `lambda >= 0`, `sum lambda = 1`.
pub fn in_convex_hull(points: &[&Point], p: &[f64], tol: f64) -> bool {
    if points.is_empty() {
        return false;
    }
    let m = points.len();
    let mut lp = LinearProgram::new(m).with_tolerance(tol);
    for (k, &target) in p.iter().enumerate() {
        lp.add(points.iter().map(|q| q[k]).collect(), Relation::Eq, target);
    }
    lp.add(vec![1.0; m], Relation::Eq, 1.0);
    matches!(lp.solve(), Ok(LpOutcome::Optimal(_)))
}
