//! Simplices in exponent space, their negative vertex cones, and the two
//! constructions that produce a simplex `P` with every negative point in `P`
//! and every positive point in a negative vertex cone.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{self, dot};
use crate::separation::{self, Strictness};
use crate::signomial::{in_convex_hull, AffineMap, Point, SignedSupport, Signomial};
use crate::{Error, Tolerances};

/// `{x : normal . x = offset}`; the half-space `H^-` is `normal . x <= offset`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Hyperplane {
    pub normal: Point,
    pub offset: f64,
}

impl Hyperplane {
    pub fn new(normal: Point, offset: f64) -> Result<Self, Error> {
        if linalg::norm(&normal) == 0.0 {
            return Err(Error::Precondition(String::from("hyperplane normal is zero")));
        }
        if !offset.is_finite() || normal.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("hyperplane"));
        }
        Ok(Self { normal, offset })
    }

    /// `normal . x - offset`; non-positive on `H^-`.
    pub fn signed_distance(&self, x: &[f64]) -> f64 {
        dot(&self.normal, x) - self.offset
    }
}

/// An `n`-simplex with vertices `mu_0..mu_n`. Facet `i` is opposite vertex
/// `i` and `P` is the intersection of the facets' `H^-` sides.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SimplexWitness {
    pub vertices: Vec<Point>,
    pub facets: Vec<Hyperplane>,
    /// Inverse of the matrix with columns `(mu_i, 1)`; row `i` gives `lambda_i`.
    #[cfg_attr(feature = "serde", serde(skip))]
    inverse: Vec<Vec<f64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConeMembership {
    pub vertex: usize,
    /// Some coordinate other than `lambda_vertex` is within the tolerance of 0.
    pub marginal: bool,
}

fn vertex_scale(vertices: &[Point]) -> f64 {
    1.0 + vertices
        .iter()
        .flat_map(|v| v.iter())
        .fold(0.0f64, |m, x| m.max(libm::fabs(*x)))
}

impl SimplexWitness {
    pub fn from_vertices(vertices: Vec<Point>) -> Result<Self, Error> {
        let n = vertices.first().map_or(0, Vec::len);
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        if vertices.len() != n + 1 {
            return Err(Error::InvalidSimplex(format!(
                "{} vertices given for dimension {n}",
                vertices.len()
            )));
        }
        if let Some(v) = vertices.iter().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
        if vertices.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("simplex vertex"));
        }
        // columns (mu_i, 1)
        let mut b = vec![vec![0.0; n + 1]; n + 1];
        for (i, mu) in vertices.iter().enumerate() {
            for j in 0..n {
                b[j][i] = mu[j];
            }
            b[n][i] = 1.0;
        }
        let det = linalg::determinant(&b);
        let scale = vertex_scale(&vertices);
        if !(libm::fabs(det) > 1e-12 * libm::pow(scale, n as f64)) {
            return Err(Error::InvalidSimplex(format!(
                "vertices are affinely dependent (determinant {det:e})"
            )));
        }
        let inverse = linalg::inverse(&b).ok_or(Error::SingularMatrix { det })?;
        // lambda_i(x) = g_i . x + h_i >= 0  <=>  -g_i . x <= h_i
        let facets = inverse
            .iter()
            .map(|row| Hyperplane {
                normal: row[..n].iter().map(|g| -g).collect(),
                offset: row[n],
            })
            .collect();
        Ok(Self {
            vertices,
            facets,
            inverse,
        })
    }

    /// Builds the simplex `P = cap H^-(planes)`. Every `n` of the normals must
    /// be linearly independent, and the vertex cut out by each `n`-subset
    /// must lie strictly inside the remaining half-space.
    pub fn from_halfspaces(planes: Vec<Hyperplane>) -> Result<Self, Error> {
        let n = planes.first().map_or(0, |p| p.normal.len());
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        if planes.len() != n + 1 {
            return Err(Error::InvalidSimplex(format!(
                "{} half-spaces given for dimension {n}",
                planes.len()
            )));
        }
        if let Some(p) = planes.iter().find(|p| p.normal.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.normal.len(),
            });
        }
        let mut solved = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let others: Vec<usize> = (0..=n).filter(|&j| j != i).collect();
            let rows: Vec<Vec<f64>> = others.iter().map(|&j| planes[j].normal.clone()).collect();
            let rhs: Vec<f64> = others.iter().map(|&j| planes[j].offset).collect();
            let vertex = linalg::solve(&rows, &rhs).ok_or_else(|| {
                Error::InvalidSimplex(format!("normals of half-spaces {others:?} are linearly dependent"))
            })?;
            solved.push((others, vertex));
        }
        let mut vertices = Vec::with_capacity(n + 1);
        for (i, (others, vertex)) in solved.into_iter().enumerate() {
            let excluded = &planes[i];
            let margin = 1e-9 * linalg::norm(&excluded.normal) * vertex_scale(core::slice::from_ref(&vertex));
            if !(excluded.signed_distance(&vertex) < -margin) {
                return Err(Error::InvalidSimplex(format!(
                    "intersection of half-spaces {others:?} is not strictly inside half-space {i}"
                )));
            }
            vertices.push(vertex);
        }
        let mut simplex = Self::from_vertices(vertices)?;
        simplex.facets = planes;
        Ok(simplex)
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Barycentric coordinates: `sum lambda_i = 1`, `sum lambda_i mu_i = alpha`.
    pub fn barycentric(&self, alpha: &[f64]) -> Vec<f64> {
        let mut x = alpha.to_vec();
        x.push(1.0);
        linalg::mat_vec(&self.inverse, &x)
    }

    pub fn contains(&self, alpha: &[f64], tol: f64) -> bool {
        self.barycentric(alpha).iter().all(|l| *l >= -tol)
    }

    /// Vertex `k` with `alpha` in the negative vertex cone `P^{-,k}`, from the
    /// signs of the barycentric coordinates.
    pub fn negative_cone_membership(&self, alpha: &[f64], tol: f64) -> Option<ConeMembership> {
        cone_from_coordinates(&self.barycentric(alpha), tol)
    }

    /// Same test, read off the facets: `alpha` is in `P^{-,k}` iff it lies on
    /// the `H^+` side of every facet through `mu_k`.
    pub fn negative_cone_membership_by_facets(
        &self,
        alpha: &[f64],
        tol: f64,
    ) -> Option<ConeMembership> {
        // Normalize each facet by its value at the opposite vertex so the
        // quantity is comparable with a barycentric coordinate.
        let coords: Vec<f64> = self
            .facets
            .iter()
            .zip(&self.vertices)
            .map(|(h, mu)| h.signed_distance(alpha) / h.signed_distance(mu))
            .collect();
        cone_from_coordinates(&coords, tol)
    }

    /// Checks `negative ⊆ P` and `positive ⊆ P^-`.
    pub fn check_support(&self, s: &SignedSupport, tol: &Tolerances) -> Result<(), String> {
        if s.dim != self.dim() {
            return Err(format!("simplex has dimension {}, support {}", self.dim(), s.dim));
        }
        for beta in &s.negative {
            let l = self.barycentric(beta);
            if l.iter().any(|x| *x < -tol.cone) {
                return Err(format!("negative point {beta:?} is outside the simplex (coordinates {l:?})"));
            }
        }
        for alpha in &s.positive {
            if self.negative_cone_membership(alpha, tol.cone).is_none() {
                return Err(format!("positive point {alpha:?} is in no negative vertex cone"));
            }
            if self.negative_cone_membership_by_facets(alpha, tol.cone).is_none() {
                return Err(format!("facet test rejects positive point {alpha:?}"));
            }
        }
        Ok(())
    }

    /// Re-derives the simplex from its vertices and compares facet sides,
    /// then checks the support.
    pub fn revalidate(&self, s: &SignedSupport, tol: &Tolerances) -> Result<(), String> {
        let fresh = Self::from_vertices(self.vertices.clone()).map_err(|e| format!("{e}"))?;
        for (i, h) in self.facets.iter().enumerate() {
            let scale = linalg::norm(&h.normal) * vertex_scale(&self.vertices);
            for (j, mu) in self.vertices.iter().enumerate() {
                let d = h.signed_distance(mu);
                let ok = if i == j { d < -tol.check * scale } else { libm::fabs(d) <= 1e-7 * scale };
                if !ok {
                    return Err(format!("facet {i} is inconsistent with vertex {j}"));
                }
            }
        }
        fresh.check_support(s, tol)
    }
}

fn cone_from_coordinates(lambda: &[f64], tol: f64) -> Option<ConeMembership> {
    let k = (0..lambda.len()).max_by(|&i, &j| lambda[i].total_cmp(&lambda[j]))?;
    let mut marginal = false;
    for (i, l) in lambda.iter().enumerate() {
        if i == k {
            continue;
        }
        if *l > tol {
            return None;
        }
        marginal |= *l > -tol;
    }
    Some(ConeMembership { vertex: k, marginal })
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct VeryStrictSimplexOptions {
    /// Basis `v_1..v_n` with `v` in its open cone; a default is derived otherwise.
    pub seed_basis: Option<Vec<Point>>,
    /// Offset of the closing facet; must exceed `max w_0 . mu` over the support.
    pub a0: Option<f64>,
}

/// Simplex from a very strict separating vector `v`: the facets through the
/// negative points are the negated very strict basis, and the closing facet
/// has normal `-(sum of the others)`.
pub fn simplex_from_very_strict(
    s: &SignedSupport,
    v: &[f64],
    opts: &VeryStrictSimplexOptions,
    tol: &Tolerances,
) -> Result<SimplexWitness, Error> {
    let basis = separation::very_strict_basis(v, s, opts.seed_basis.as_deref(), tol)?;
    let n = s.dim;
    let mut planes = Vec::with_capacity(n + 1);
    let negated: Vec<Point> = basis.vectors.iter().map(|w| linalg::scale(w, -1.0)).collect();
    let mut closing = vec![0.0; n];
    for u in &negated {
        closing = linalg::sub(&closing, u);
    }
    let a0 = match opts.a0 {
        Some(a0) => a0,
        None => {
            let dots: Vec<f64> = s.all_points().map(|p| dot(&closing, p)).collect();
            let hi = dots.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let lo = dots.iter().copied().fold(f64::INFINITY, f64::min);
            hi + 1.0 + (hi - lo)
        }
    };
    planes.push(Hyperplane::new(closing, a0)?);
    for u in negated {
        planes.push(Hyperplane::new(u, -basis.offset)?);
    }
    let simplex = SimplexWitness::from_halfspaces(planes)?;
    simplex.check_support(s, tol).map_err(Error::InvalidSimplex)?;
    Ok(simplex)
}

/// Simplex from `n - 1` linearly independent non-strict separating vectors,
/// for supports with at least two negative points none of whose convex hull
/// contains a positive point. The negative points then lie on a line `L`
/// and the simplex has them on one edge.
pub fn simplex_from_nonstrict_family(
    s: &SignedSupport,
    family: &[Point],
    tol: &Tolerances,
) -> Result<SimplexWitness, Error> {
    let n = s.dim;
    if family.len() + 1 != n {
        return Err(Error::Precondition(format!(
            "expected {} separating vectors, got {}",
            n.saturating_sub(1),
            family.len()
        )));
    }
    if let Some(w) = family.iter().find(|w| w.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: w.len(),
        });
    }
    if linalg::rank(family, 1e-10) != family.len() {
        return Err(Error::Precondition(String::from("vectors are linearly dependent")));
    }
    for (i, w) in family.iter().enumerate() {
        let class = separation::classify_strictness(w, s, tol);
        if class != Strictness::NonStrict {
            return Err(Error::Precondition(format!("w_{} classifies as {class:?}, not non-strict", i + 1)));
        }
    }
    if s.negative.len() < 2 {
        return Err(Error::Precondition(String::from("need at least two negative points")));
    }
    if s.positive.is_empty() {
        return Err(Error::Precondition(String::from("need at least one positive point")));
    }
    let negatives: Vec<&Point> = s.negative.iter().collect();
    if let Some(alpha) = s.positive.iter().find(|a| in_convex_hull(&negatives, a, tol.lp)) {
        return Err(Error::Precondition(format!(
            "positive point {alpha:?} lies in the convex hull of the negative points"
        )));
    }

    let offsets: Vec<f64> = family.iter().map(|w| separation::canonical_offset(w, s)).collect();
    let mut v = vec![0.0; n];
    for w in family {
        v = linalg::add(&v, w);
    }
    let d: f64 = offsets.iter().sum();
    let band = tol.check * inf_norm(&v).max(1.0) * s.coordinate_scale();
    let k = s
        .positive
        .iter()
        .map(|a| dot(&v, a))
        .filter(|x| *x < d - band)
        .fold(f64::NEG_INFINITY, f64::max);
    let eps = d - k;

    let z = linalg::orthogonal_complement(family, n, 1e-10)
        .into_iter()
        .next()
        .ok_or_else(|| Error::Precondition(String::from("no direction completes the basis")))?;
    let zb: Vec<f64> = s.negative.iter().map(|b| dot(&z, b)).collect();
    let (i0, i1) = extreme_indices(&zb);
    let (zb0, zb1) = (zb[i0], zb[i1]);
    if !(zb1 - zb0 > 1e-12 * s.coordinate_scale()) {
        return Err(Error::Precondition(String::from(
            "negative points coincide along the completing direction",
        )));
    }
    let m = s
        .positive
        .iter()
        .map(|a| dot(&z, a))
        .fold(f64::NEG_INFINITY, f64::max);

    let cap = |zb: f64| {
        let denom = m - zb;
        if denom > 0.0 { eps / denom } else { f64::INFINITY }
    };
    let mut lambda = cap(zb0).min(1.0);
    let mut mu = (0.5 * lambda).min(cap(zb1));
    let mut last_err = None;
    for _ in 0..60 {
        let w0 = linalg::axpy(&v, lambda, &z);
        let a0 = d + lambda * zb0;
        let wn = linalg::scale(&linalg::axpy(&v, mu, &z), -1.0);
        let an = -d - mu * zb1;
        let mut planes = Vec::with_capacity(n + 1);
        planes.push(Hyperplane::new(linalg::scale(&w0, -1.0), -a0)?);
        for (w, a) in family.iter().zip(&offsets) {
            planes.push(Hyperplane::new(linalg::scale(w, -1.0), -a)?);
        }
        planes.push(Hyperplane::new(linalg::scale(&wn, -1.0), -an)?);
        match SimplexWitness::from_halfspaces(planes) {
            Ok(p) => match p.check_support(s, tol) {
                Ok(()) => return Ok(p),
                Err(e) => last_err = Some(Error::InvalidSimplex(e)),
            },
            Err(e) => last_err = Some(e),
        }
        lambda *= 0.5;
        mu *= 0.5;
    }
    Err(last_err.unwrap_or_else(|| Error::InvalidSimplex(String::from("construction failed"))))
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(libm::fabs(*x)))
}

fn extreme_indices(values: &[f64]) -> (usize, usize) {
    let mut lo = 0;
    let mut hi = 0;
    for (i, x) in values.iter().enumerate() {
        if *x < values[lo] {
            lo = i;
        }
        if *x > values[hi] {
            hi = i;
        }
    }
    (lo, hi)
}

/// Affine map sending the vertices of `p` to `0, e_1, .., e_n` in order.
/// Barycentric coordinates are preserved.
pub fn normalize_to_standard(p: &SimplexWitness) -> Result<AffineMap, Error> {
    let n = p.dim();
    let p0 = &p.vertices[0];
    // columns p_i - p_0
    let mut d = vec![vec![0.0; n]; n];
    for (i, pi) in p.vertices[1..].iter().enumerate() {
        for j in 0..n {
            d[j][i] = pi[j] - p0[j];
        }
    }
    let m = linalg::inverse(&d).ok_or(Error::SingularMatrix {
        det: linalg::determinant(&d),
    })?;
    let shift = linalg::scale(&linalg::mat_vec(&m, p0), -1.0);
    AffineMap::new(m, shift)
}

/// The standard simplex `Conv(0, e_1, .., e_n)`.
pub fn standard_simplex(n: usize) -> SimplexWitness {
    let mut vertices = vec![vec![0.0; n]];
    for i in 0..n {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        vertices.push(e);
    }
    SimplexWitness::from_vertices(vertices).expect("standard simplex is valid")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum TermRule {
    /// Positive term with all exponents `<= 0`.
    PositiveNonpositiveExponents,
    /// Positive term with one free exponent and coordinate sum `>= 1`.
    PositiveSingleLargeExponent { index: usize },
    /// Negative term with exponents `>= 0` summing to at most 1.
    NegativeInStandardSimplex,
    Violated,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConvexityReport {
    pub is_convex_by_rules: bool,
    /// One entry per term, in the signomial's term order.
    pub terms: Vec<(Point, TermRule)>,
}

/// Term-wise sufficient condition for convexity on the positive orthant.
pub fn convex_by_term_rules(f: &Signomial, tol: f64) -> ConvexityReport {
    let terms: Vec<(Point, TermRule)> = f
        .terms()
        .iter()
        .map(|t| (t.exponent.clone(), term_rule(t.coeff, &t.exponent, tol)))
        .collect();
    ConvexityReport {
        is_convex_by_rules: terms.iter().all(|(_, r)| *r != TermRule::Violated),
        terms,
    }
}

fn term_rule(coeff: f64, e: &[f64], tol: f64) -> TermRule {
    let sum: f64 = e.iter().sum();
    if coeff < 0.0 {
        if e.iter().all(|x| *x >= -tol) && sum <= 1.0 + tol {
            return TermRule::NegativeInStandardSimplex;
        }
        return TermRule::Violated;
    }
    if e.iter().all(|x| *x <= tol) {
        return TermRule::PositiveNonpositiveExponents;
    }
    let positive: Vec<usize> = (0..e.len()).filter(|&i| e[i] > tol).collect();
    if positive.len() == 1 && sum >= 1.0 - tol {
        return TermRule::PositiveSingleLargeExponent { index: positive[0] };
    }
    TermRule::Violated
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(p: &[[f64; 2]]) -> Vec<Point> {
        p.iter().map(|x| x.to_vec()).collect()
    }

    fn p4() -> SignedSupport {
        SignedSupport::new(
            2,
            pts(&[[5.0, 2.0], [1.0, 5.0], [1.0, 3.0], [0.0, 4.0], [0.0, 0.0]]),
            pts(&[[3.0, 2.0], [2.0, 2.0], [1.0, 1.0]]),
        )
    }

    fn p4_simplex() -> SimplexWitness {
        SimplexWitness::from_vertices(pts(&[[1.0, 1.0], [4.0, 2.0], [1.0, 3.0]])).unwrap()
    }

    #[test]
    fn barycentric_basics() {
        let p = p4_simplex();
        let l = p.barycentric(&[4.0, 2.0]);
        assert!((l[1] - 1.0).abs() < 1e-12 && l[0].abs() < 1e-12 && l[2].abs() < 1e-12);
        let c = p.barycentric(&[2.0, 2.0]);
        assert!(c.iter().all(|x| (x - 1.0 / 3.0).abs() < 1e-12));
        let o = p.barycentric(&[0.0, 0.0]);
        let sum: f64 = o.iter().sum();
        assert!((sum - 1.0).abs() < 1e-10);
        let back: Vec<f64> = (0..2)
            .map(|j| (0..3).map(|i| o[i] * p.vertices[i][j]).sum::<f64>())
            .collect();
        assert!(back.iter().all(|x| x.abs() < 1e-10));
    }

    #[test]
    fn p4_simplex_certifies() {
        let t = Tolerances::default();
        let p = p4_simplex();
        p.check_support(&p4(), &t).unwrap();
        p.revalidate(&p4(), &t).unwrap();
        assert_eq!(p.negative_cone_membership(&[1.0, 3.0], 1e-9).unwrap().vertex, 2);
        assert!(p.negative_cone_membership(&[2.0, 2.0], 1e-9).is_none());
    }

    #[test]
    fn halfspaces_of_standard_simplex() {
        let planes = vec![
            Hyperplane::new(vec![1.0, 1.0], 1.0).unwrap(),
            Hyperplane::new(vec![-1.0, 0.0], 0.0).unwrap(),
            Hyperplane::new(vec![0.0, -1.0], 0.0).unwrap(),
        ];
        let p = SimplexWitness::from_halfspaces(planes).unwrap();
        assert_eq!(p.vertices, pts(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]));
    }

    #[test]
    fn concurrent_lines_are_rejected() {
        let planes = vec![
            Hyperplane::new(vec![1.0, 0.0], 0.0).unwrap(),
            Hyperplane::new(vec![0.0, 1.0], 0.0).unwrap(),
            Hyperplane::new(vec![-1.0, -1.0], 0.0).unwrap(),
        ];
        let err = SimplexWitness::from_halfspaces(planes).unwrap_err();
        assert!(matches!(err, Error::InvalidSimplex(ref m) if m.contains("strictly inside")));
        let parallel = vec![
            Hyperplane::new(vec![1.0, 0.0], 0.0).unwrap(),
            Hyperplane::new(vec![2.0, 0.0], 1.0).unwrap(),
            Hyperplane::new(vec![-1.0, -1.0], 0.0).unwrap(),
        ];
        let err = SimplexWitness::from_halfspaces(parallel).unwrap_err();
        assert!(matches!(err, Error::InvalidSimplex(ref m) if m.contains("[0, 1]")));
    }

    #[test]
    fn normalization_maps_vertices() {
        let p = p4_simplex();
        let map = normalize_to_standard(&p).unwrap();
        let std = standard_simplex(2);
        for (mu, e) in p.vertices.iter().zip(&std.vertices) {
            let img = map.apply(mu);
            assert!(img.iter().zip(e).all(|(a, b)| (a - b).abs() < 1e-12));
        }
        let id = normalize_to_standard(&std).unwrap();
        assert_eq!(id.matrix(), &[vec![1.0, 0.0], vec![0.0, 1.0]][..]);
    }

    #[test]
    fn term_rules() {
        let f = Signomial::new(2, [(1.0, [1.0, 0.0]), (1.0, [0.0, 1.0]), (-1.0, [0.5, 0.0])]).unwrap();
        assert!(convex_by_term_rules(&f, 1e-12).is_convex_by_rules);
        let g = Signomial::new(2, [(1.0, [1.0, 0.0]), (-1.0, [2.0, 0.0])]).unwrap();
        let r = convex_by_term_rules(&g, 1e-12);
        assert!(!r.is_convex_by_rules);
        assert!(r.terms.iter().any(|(_, t)| *t == TermRule::Violated));
    }

    #[test]
    fn nonstrict_family_for_p5() {
        let t = Tolerances::default();
        let s = SignedSupport::new(
            2,
            pts(&[[4.0, 4.0], [2.0, 6.0], [2.0, 3.0], [1.0, 1.0], [0.0, 2.0]]),
            pts(&[[3.0, 3.0], [2.0, 2.0]]),
        );
        let p = simplex_from_nonstrict_family(&s, &[vec![1.0, -1.0]], &t).unwrap();
        p.revalidate(&s, &t).unwrap();
        let mut bad = s.clone();
        bad.positive.push(vec![2.5, 2.5]);
        assert!(matches!(
            simplex_from_nonstrict_family(&bad, &[vec![1.0, -1.0]], &t),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn very_strict_for_tilde_p2() {
        let t = Tolerances::default();
        let s = SignedSupport::new(
            2,
            pts(&[[3.0, 4.0], [1.0, 2.0], [0.0, 1.0]]),
            pts(&[[3.0, 2.0], [1.0, 1.0]]),
        );
        let opts = VeryStrictSimplexOptions {
            seed_basis: Some(pts(&[[1.0, 0.0], [0.0, -1.0]])),
            a0: Some(4.0),
        };
        let p = simplex_from_very_strict(&s, &[1.0, -1.0], &opts, &t).unwrap();
        p.revalidate(&s, &t).unwrap();
        let p = simplex_from_very_strict(&s, &[1.0, -1.0], &Default::default(), &t).unwrap();
        p.revalidate(&s, &t).unwrap();
    }

    #[test]
    fn very_strict_in_one_dimension() {
        let t = Tolerances::default();
        let s = SignedSupport::new(1, vec![vec![0.0], vec![5.0]], vec![vec![2.0]]);
        assert!(simplex_from_very_strict(&s, &[1.0], &Default::default(), &t).is_err());
        let s = SignedSupport::new(1, vec![vec![0.0]], vec![vec![2.0], vec![3.0]]);
        let p = simplex_from_very_strict(&s, &[1.0], &Default::default(), &t).unwrap();
        p.revalidate(&s, &t).unwrap();
    }
}
