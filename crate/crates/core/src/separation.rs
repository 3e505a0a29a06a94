//! Separating and enclosing vectors of a signed support.
//!
//! A vector `v` separates when every positive point lies on the `<=` side of
//! some hyperplane `v . mu = a` and every negative point on the `>=` side. It
//! encloses when the negative points fit in a slab `a <= v . mu <= b` that no
//! positive point enters. Both are found by small linear programs over the box
//! `|v_i| <= 1`; the systems are positively homogeneous, so the box only fixes
//! a scale.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{self, dot};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::signomial::{Point, SignedSupport};
use crate::{Error, Tolerances};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Strictness {
    NotSeparating,
    NonStrict,
    Strict,
    VeryStrict,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SeparationWitness {
    pub v: Point,
    pub a: f64,
    pub strictness: Strictness,
    /// The deciding slack was within two orders of magnitude of the tolerance.
    pub marginal: bool,
}

impl SeparationWitness {
    /// Wraps `v` with its canonical offset and direct classification.
    pub fn for_vector(v: Point, s: &SignedSupport, tol: &Tolerances) -> Self {
        witness_from(v, s, tol)
    }

    /// Re-checks `v . alpha <= a <= v . beta` and the recorded strictness by
    /// direct dot products.
    pub fn revalidate(&self, s: &SignedSupport, tol: &Tolerances) -> Result<(), String> {
        let slack = tol.check * scale_of(&self.v, s);
        for alpha in &s.positive {
            let d = dot(&self.v, alpha) - self.a;
            if d > slack {
                return Err(format!("positive point {alpha:?} is {d:e} above the hyperplane"));
            }
        }
        for beta in &s.negative {
            let d = self.a - dot(&self.v, beta);
            if d > slack {
                return Err(format!("negative point {beta:?} is {d:e} below the hyperplane"));
            }
        }
        let actual = classify_strictness(&self.v, s, tol);
        if actual != self.strictness {
            return Err(format!(
                "recorded strictness {:?} but direct check gives {actual:?}",
                self.strictness
            ));
        }
        Ok(())
    }
}

fn scale_of(v: &[f64], s: &SignedSupport) -> f64 {
    let vmax = v.iter().fold(0.0f64, |m, x| m.max(libm::fabs(*x)));
    vmax.max(f64::MIN_POSITIVE) * s.coordinate_scale()
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(libm::fabs(*x)))
}

/// Canonical offset `a = max_{alpha in positive} v . alpha` (`-inf` if empty).
pub fn canonical_offset(v: &[f64], s: &SignedSupport) -> f64 {
    s.positive
        .iter()
        .map(|p| dot(v, p))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Classifies `v` using the canonical offset. Slacks are normalized by
/// `max |v_i|` before comparison against `tol.strict`.
pub fn classify_strictness(v: &[f64], s: &SignedSupport, tol: &Tolerances) -> Strictness {
    classify_with_margin(v, s, tol).0
}

fn classify_with_margin(v: &[f64], s: &SignedSupport, tol: &Tolerances) -> (Strictness, f64) {
    let a = canonical_offset(v, s);
    if s.negative.is_empty() {
        return (Strictness::NonStrict, 0.0);
    }
    let dots: Vec<f64> = s.negative.iter().map(|b| dot(v, b)).collect();
    let lo = dots.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = dots.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if a == f64::NEG_INFINITY {
        return (Strictness::VeryStrict, f64::INFINITY);
    }
    let norm = inf_norm(v);
    if norm == 0.0 {
        return (Strictness::NonStrict, 0.0);
    }
    let gap = (lo - a) / norm;
    if gap < -tol.check * s.coordinate_scale() {
        return (Strictness::NotSeparating, gap);
    }
    if gap > tol.strict {
        return (Strictness::VeryStrict, gap);
    }
    let top = (hi - a) / norm;
    if top > tol.strict {
        (Strictness::Strict, top)
    } else {
        (Strictness::NonStrict, top)
    }
}

fn marginal(slack: f64, tol: &Tolerances) -> bool {
    slack.is_finite() && slack > tol.strict && slack <= 100.0 * tol.strict
}

fn unit(n: usize, i: usize) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[i] = 1.0;
    e
}

/// Bound on `|a|` (and `|b|`) large enough for any `v` in the unit box.
fn offset_bound(s: &SignedSupport) -> f64 {
    1.0 + s.dim as f64 * s.coordinate_scale()
}

/// Base LP over `[v (n), a]` with `v` in the unit box.
fn base_lp(s: &SignedSupport, extra: usize, tol: &Tolerances) -> LinearProgram {
    let n = s.dim;
    let mut lp = LinearProgram::new(n + 1 + extra).with_tolerance(tol.lp);
    for i in 0..n {
        lp.set_bounds(i, -1.0, 1.0);
    }
    let bound = offset_bound(s);
    lp.set_bounds(n, -bound, bound);
    lp
}

fn row(v_part: &[f64], a: f64, width: usize) -> Vec<f64> {
    let mut r = vec![0.0; width];
    r[..v_part.len()].copy_from_slice(v_part);
    r[v_part.len()] = a;
    r
}

fn witness_from(v: Vec<f64>, s: &SignedSupport, tol: &Tolerances) -> SeparationWitness {
    let (strictness, slack) = classify_with_margin(&v, s, tol);
    let a = canonical_offset(&v, s);
    let a = if a.is_finite() {
        a
    } else {
        s.negative.iter().map(|b| dot(&v, b)).fold(0.0f64, f64::min) - 1.0
    };
    SeparationWitness {
        v,
        a,
        strictness,
        marginal: marginal(slack, tol),
    }
}

/// Finds a nonzero separating vector of maximal strictness, or `None` when
/// the only solution of the feasibility system is `v = 0`.
pub fn find_separating_vector(
    s: &SignedSupport,
    tol: &Tolerances,
) -> Result<Option<SeparationWitness>, Error> {
    let n = s.dim;
    if s.positive.is_empty() || s.negative.is_empty() {
        return Ok(Some(witness_from(unit(n, 0), s, tol)));
    }

    // Very strict: maximize t with v.beta >= a + t for all negative points.
    let width = n + 2;
    let mut lp = base_lp(s, 1, tol);
    lp.set_bounds(n + 1, 0.0, 1.0);
    lp.maximize(unit(width, n + 1));
    for alpha in &s.positive {
        lp.add(row(alpha, -1.0, width), Relation::Le, 0.0);
    }
    for beta in &s.negative {
        let mut r = row(beta, -1.0, width);
        r[n + 1] = -1.0;
        lp.add(r, Relation::Ge, 0.0);
    }
    if let LpOutcome::Optimal(sol) = lp.solve()? {
        if sol.objective > tol.strict {
            let w = witness_from(sol.x[..n].to_vec(), s, tol);
            if w.strictness == Strictness::VeryStrict {
                return Ok(Some(w));
            }
        }
    } else {
        return Ok(None);
    }

    // Strict: maximize the total slack of the negative points.
    let m = s.negative.len();
    let width = n + 1 + m;
    let mut lp = base_lp(s, m, tol);
    let mut objective = vec![0.0; width];
    for (k, beta) in s.negative.iter().enumerate() {
        lp.set_bounds(n + 1 + k, 0.0, 1.0);
        objective[n + 1 + k] = 1.0;
        let mut r = row(beta, -1.0, width);
        r[n + 1 + k] = -1.0;
        lp.add(r, Relation::Ge, 0.0);
    }
    for alpha in &s.positive {
        lp.add(row(alpha, -1.0, width), Relation::Le, 0.0);
    }
    lp.maximize(objective);
    if let LpOutcome::Optimal(sol) = lp.solve()? {
        if sol.objective > tol.strict {
            let w = witness_from(sol.x[..n].to_vec(), s, tol);
            if w.strictness >= Strictness::Strict {
                return Ok(Some(w));
            }
        }
    }

    // Non-strict: look for any nonzero solution by pinning one coordinate.
    Ok(nonzero_separating(s, tol)?.map(|v| witness_from(v, s, tol)))
}

fn separation_lp(s: &SignedSupport, tol: &Tolerances) -> LinearProgram {
    let n = s.dim;
    let width = n + 1;
    let mut lp = base_lp(s, 0, tol);
    for alpha in &s.positive {
        lp.add(row(alpha, -1.0, width), Relation::Le, 0.0);
    }
    for beta in &s.negative {
        lp.add(row(beta, -1.0, width), Relation::Ge, 0.0);
    }
    lp
}

fn nonzero_separating(s: &SignedSupport, tol: &Tolerances) -> Result<Option<Vec<f64>>, Error> {
    let n = s.dim;
    for i in 0..n {
        for sign in [1.0, -1.0] {
            let mut lp = separation_lp(s, tol);
            lp.set_bounds(i, sign, sign);
            if let LpOutcome::Optimal(sol) = lp.solve()? {
                let v = sol.x[..n].to_vec();
                if classify_strictness(&v, s, tol) != Strictness::NotSeparating {
                    return Ok(Some(v));
                }
            }
        }
    }
    Ok(None)
}

/// Up to `count` linearly independent nonzero separating vectors, found by
/// pushing the solution out of the span of the ones already collected.
pub fn independent_separating_vectors(
    s: &SignedSupport,
    count: usize,
    tol: &Tolerances,
) -> Result<Vec<Point>, Error> {
    let n = s.dim;
    let mut found: Vec<Point> = Vec::new();
    while found.len() < count {
        let complement = linalg::orthogonal_complement(&found, n, 1e-9);
        let mut next = None;
        'search: for u in &complement {
            for sign in [1.0, -1.0] {
                let mut lp = separation_lp(s, tol);
                let mut obj = linalg::scale(u, sign);
                obj.push(0.0);
                lp.maximize(obj);
                if let LpOutcome::Optimal(sol) = lp.solve()? {
                    if sol.objective > tol.strict {
                        next = Some(sol.x[..n].to_vec());
                        break 'search;
                    }
                }
            }
        }
        match next {
            Some(v) => found.push(v),
            None => break,
        }
    }
    Ok(found)
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EnclosingWitness {
    pub v: Point,
    pub a: f64,
    pub b: f64,
    pub strict: bool,
    /// Outside points with `v . mu <= a`.
    pub lower: Vec<Point>,
    /// Outside points with `v . mu >= b`.
    pub upper: Vec<Point>,
}

impl EnclosingWitness {
    pub fn revalidate(&self, s: &SignedSupport, tol: &Tolerances) -> Result<(), String> {
        let slack = tol.check * scale_of(&self.v, s);
        if self.a > self.b + slack {
            return Err(format!("a = {} exceeds b = {}", self.a, self.b));
        }
        for beta in &s.negative {
            let d = dot(&self.v, beta);
            if d < self.a - slack || d > self.b + slack {
                return Err(format!("enclosed point {beta:?} leaves the slab"));
            }
        }
        for alpha in &s.positive {
            let d = dot(&self.v, alpha);
            if d > self.a + slack && d < self.b - slack {
                return Err(format!("outside point {alpha:?} is inside the open slab"));
            }
        }
        match classify_enclosing(&self.v, s, tol) {
            Some(w) if w.strict == self.strict => Ok(()),
            Some(w) => Err(format!(
                "recorded strict = {} but direct check gives {}",
                self.strict, w.strict
            )),
            None => Err(String::from("direct check rejects the vector")),
        }
    }
}

/// Checks `v` directly with `a = min`, `b = max` of `v` over the enclosed
/// (negative) points.
pub fn classify_enclosing(v: &[f64], s: &SignedSupport, tol: &Tolerances) -> Option<EnclosingWitness> {
    let norm = inf_norm(v);
    let slack = tol.check * scale_of(v, s);
    let outside: Vec<(f64, &Point)> = s.positive.iter().map(|p| (dot(v, p), p)).collect();
    let (a, b) = if s.negative.is_empty() {
        // No enclosed points: put a zero-width slab in the widest gap.
        let mut d: Vec<f64> = outside.iter().map(|o| o.0).collect();
        d.sort_by(f64::total_cmp);
        let mid = d
            .windows(2)
            .max_by(|x, y| (x[1] - x[0]).total_cmp(&(y[1] - y[0])))
            .map_or(d.first().copied().unwrap_or(0.0), |w| 0.5 * (w[0] + w[1]));
        (mid, mid)
    } else {
        let dots = s.negative.iter().map(|b| dot(v, b));
        (
            dots.clone().fold(f64::INFINITY, f64::min),
            dots.fold(f64::NEG_INFINITY, f64::max),
        )
    };
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    let mut strictly_below = false;
    let mut strictly_above = false;
    let strict_margin = tol.strict * norm;
    for (d, p) in outside {
        if d <= a + slack {
            strictly_below |= d < a - strict_margin;
            lower.push(p.clone());
        } else if d >= b - slack {
            strictly_above |= d > b + strict_margin;
            upper.push(p.clone());
        } else {
            return None;
        }
    }
    Some(EnclosingWitness {
        v: v.to_vec(),
        a,
        b,
        strict: norm > 0.0 && strictly_below && strictly_above,
        lower,
        upper,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum EnclosingSearch {
    Found(EnclosingWitness),
    /// Every partition was examined; no nonzero enclosing vector exists.
    NotFound,
    /// The partition count exceeded the cap and direction sampling found
    /// nothing. Says nothing about existence.
    Truncated { directions_tried: usize },
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EnclosingSearchOptions {
    /// Exhaustive partition search up to this many outside points.
    pub max_exhaustive: usize,
    /// Random unit directions tried beyond the cap.
    pub sample_directions: usize,
    pub seed: u64,
}

impl Default for EnclosingSearchOptions {
    fn default() -> Self {
        Self {
            max_exhaustive: 16,
            sample_directions: 512,
            seed: 0x5eed_cafe,
        }
    }
}

/// Searches for an enclosing vector of `s` (negative points enclosed,
/// positive points outside), preferring strict ones. To bound the negative
/// components of `f` pass the signed support of `-f`.
pub fn find_enclosing_vector(
    s: &SignedSupport,
    opts: &EnclosingSearchOptions,
    tol: &Tolerances,
) -> Result<EnclosingSearch, Error> {
    let n = s.dim;
    let k = s.positive.len();
    if k == 0 {
        return Ok(match classify_enclosing(&unit(n, 0), s, tol) {
            Some(w) => EnclosingSearch::Found(w),
            None => EnclosingSearch::NotFound,
        });
    }
    if k > opts.max_exhaustive {
        return Ok(sample_directions(s, opts, tol));
    }

    // Mirror symmetry (v, lower, upper) -> (-v, upper, lower): pin point 0 low.
    let masks = 1u64 << (k - 1);
    let mut fallback: Option<EnclosingWitness> = None;
    for mask in 0..masks {
        let upper: Vec<bool> = (0..k).map(|i| i > 0 && (mask >> (i - 1)) & 1 == 1).collect();
        match partition_lp(s, &upper, None, tol)? {
            Some(sol) if sol.1 > tol.strict => {
                if let Some(w) = classify_enclosing(&sol.0, s, tol) {
                    if w.strict {
                        return Ok(EnclosingSearch::Found(w));
                    }
                    if fallback.is_none() && inf_norm(&w.v) > 0.0 {
                        fallback = Some(w);
                    }
                }
            }
            _ => {}
        }
    }
    if let Some(w) = fallback {
        return Ok(EnclosingSearch::Found(w));
    }
    // No strict witness: any nonzero one, pinning a coordinate of v.
    for i in 0..n {
        let w = classify_enclosing(&unit(n, i), s, tol);
        if let Some(w) = w {
            return Ok(EnclosingSearch::Found(w));
        }
    }
    for mask in 0..masks {
        let upper: Vec<bool> = (0..k).map(|i| i > 0 && (mask >> (i - 1)) & 1 == 1).collect();
        for i in 0..n {
            for sign in [1.0, -1.0] {
                if let Some(sol) = partition_lp(s, &upper, Some((i, sign)), tol)? {
                    if let Some(w) = classify_enclosing(&sol.0, s, tol) {
                        return Ok(EnclosingSearch::Found(w));
                    }
                }
            }
        }
    }
    Ok(EnclosingSearch::NotFound)
}

/// Solves the slab system for one partition of the outside points; the
/// objective is the smaller of the total strict slacks below `a` and above
/// `b`. Returns `(v, objective)` when feasible.
fn partition_lp(
    s: &SignedSupport,
    upper: &[bool],
    pin: Option<(usize, f64)>,
    tol: &Tolerances,
) -> Result<Option<(Vec<f64>, f64)>, Error> {
    let n = s.dim;
    let k = s.positive.len();
    // columns: v (n), a, b, slacks (k), t
    let width = n + 2 + k + 1;
    let t = width - 1;
    let mut lp = LinearProgram::new(width).with_tolerance(tol.lp);
    for i in 0..n {
        lp.set_bounds(i, -1.0, 1.0);
    }
    let bound = offset_bound(s);
    lp.set_bounds(n, -bound, bound).set_bounds(n + 1, -bound, bound);
    for j in 0..k {
        lp.set_bounds(n + 2 + j, 0.0, 1.0);
    }
    lp.set_bounds(t, 0.0, 1.0);
    if let Some((i, sign)) = pin {
        lp.set_bounds(i, sign, sign);
    }
    let with = |mu: &[f64], a: f64, b: f64| {
        let mut r = vec![0.0; width];
        r[..n].copy_from_slice(mu);
        r[n] = a;
        r[n + 1] = b;
        r
    };
    for beta in &s.negative {
        lp.add(with(beta, -1.0, 0.0), Relation::Ge, 0.0);
        lp.add(with(beta, 0.0, -1.0), Relation::Le, 0.0);
    }
    if s.negative.is_empty() {
        let mut r = vec![0.0; width];
        r[n] = 1.0;
        r[n + 1] = -1.0;
        lp.add(r, Relation::Le, 0.0);
    }
    let mut sum_low = vec![0.0; width];
    let mut sum_high = vec![0.0; width];
    sum_low[t] = 1.0;
    sum_high[t] = 1.0;
    for (j, alpha) in s.positive.iter().enumerate() {
        let slack = n + 2 + j;
        if upper[j] {
            let mut r = with(alpha, 0.0, -1.0);
            r[slack] = -1.0;
            lp.add(r, Relation::Ge, 0.0);
            sum_high[slack] = -1.0;
        } else {
            let mut r = with(alpha, -1.0, 0.0);
            r[slack] = 1.0;
            lp.add(r, Relation::Le, 0.0);
            sum_low[slack] = -1.0;
        }
    }
    let both_sides = upper.iter().any(|u| *u) && upper.iter().any(|u| !*u);
    if both_sides {
        lp.add(sum_low, Relation::Le, 0.0);
        lp.add(sum_high, Relation::Le, 0.0);
    } else {
        lp.set_bounds(t, 0.0, 0.0);
    }
    lp.maximize(unit(width, t));
    Ok(lp
        .solve()?
        .solution()
        .map(|sol| (sol.x[..n].to_vec(), sol.objective)))
}

/// SplitMix64; only used to spread sample directions deterministically.
struct SplitMix(u64);

impl SplitMix {
    fn next_f64(&mut self) -> f64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^= z >> 31;
        (z >> 11) as f64 / (1u64 << 53) as f64
    }
}

fn sample_directions(
    s: &SignedSupport,
    opts: &EnclosingSearchOptions,
    tol: &Tolerances,
) -> EnclosingSearch {
    let n = s.dim;
    let mut dirs: Vec<Vec<f64>> = (0..n).map(|i| unit(n, i)).collect();
    let pts: Vec<&Point> = s.all_points().collect();
    if n == 2 {
        // Normals to pairwise differences bound every cone of directions
        // with a fixed ordering; add them and their angular neighbours.
        let mut angles = Vec::new();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let d = linalg::sub(pts[j], pts[i]);
                angles.push(libm::atan2(d[0], -d[1]));
            }
        }
        angles.sort_by(f64::total_cmp);
        for w in angles.windows(2) {
            let mid = 0.5 * (w[0] + w[1]);
            dirs.push(vec![libm::cos(mid), libm::sin(mid)]);
        }
        for a in &angles {
            dirs.push(vec![libm::cos(*a), libm::sin(*a)]);
        }
    }
    let mut rng = SplitMix(opts.seed);
    for _ in 0..opts.sample_directions {
        let d: Vec<f64> = (0..n).map(|_| 2.0 * rng.next_f64() - 1.0).collect();
        if linalg::norm(&d) > 1e-6 {
            dirs.push(d);
        }
    }
    let tried = dirs.len();
    let mut fallback = None;
    for d in dirs {
        for v in [d.clone(), linalg::scale(&d, -1.0)] {
            if let Some(w) = classify_enclosing(&v, s, tol) {
                if w.strict {
                    return EnclosingSearch::Found(w);
                }
                fallback.get_or_insert(w);
            }
        }
    }
    match fallback {
        Some(w) => EnclosingSearch::Found(w),
        None => EnclosingSearch::Truncated {
            directions_tried: tried,
        },
    }
}

/// A basis of very strict separating vectors sharing one offset, with `v`
/// in the interior of their cone.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct VeryStrictBasis {
    pub vectors: Vec<Point>,
    pub offset: f64,
    /// `v = sum coeff_i vectors_i`, all coefficients positive.
    pub cone_coefficients: Vec<f64>,
}

impl VeryStrictBasis {
    /// Wraps given vectors with the midpoint offset of `v` and checks them.
    pub fn from_vectors(
        vectors: Vec<Point>,
        v: &[f64],
        s: &SignedSupport,
        tol: &Tolerances,
    ) -> Result<Self, Error> {
        let offset = midpoint_offset(v, s)?;
        let cone_coefficients = cone_coordinates(&vectors, v)
            .ok_or_else(|| Error::Precondition(String::from("vectors are not a basis")))?;
        let basis = Self {
            vectors,
            offset,
            cone_coefficients,
        };
        basis.verify(v, s, tol).map_err(Error::Precondition)?;
        Ok(basis)
    }

    /// Rank, strict inclusion of every point on its side of each hyperplane,
    /// and positivity of the cone coefficients of `v`.
    pub fn verify(&self, v: &[f64], s: &SignedSupport, tol: &Tolerances) -> Result<(), String> {
        let n = s.dim;
        if self.vectors.len() != n || linalg::rank(&self.vectors, 1e-10) != n {
            return Err(String::from("vectors do not span the space"));
        }
        for (i, w) in self.vectors.iter().enumerate() {
            let margin = tol.strict * inf_norm(w);
            if let Some(b) = s.negative.iter().find(|b| dot(w, b) <= self.offset + margin) {
                return Err(format!("w_{i} leaves negative point {b:?} at or below the offset"));
            }
            if let Some(a) = s.positive.iter().find(|a| dot(w, a) >= self.offset - margin) {
                return Err(format!("w_{i} leaves positive point {a:?} at or above the offset"));
            }
            if classify_strictness(w, s, tol) != Strictness::VeryStrict {
                return Err(format!("w_{i} is not very strict"));
            }
        }
        let coeffs = cone_coordinates(&self.vectors, v)
            .ok_or_else(|| String::from("vectors are not a basis"))?;
        if coeffs.iter().any(|c| !(*c > 0.0)) {
            return Err(format!("v has cone coefficients {coeffs:?}, not all positive"));
        }
        Ok(())
    }
}

fn midpoint_offset(v: &[f64], s: &SignedSupport) -> Result<f64, Error> {
    if s.positive.is_empty() || s.negative.is_empty() {
        return Err(Error::Precondition(String::from(
            "both sides of the support must be non-empty",
        )));
    }
    let a = canonical_offset(v, s);
    let b = s
        .negative
        .iter()
        .map(|p| dot(v, p))
        .fold(f64::INFINITY, f64::min);
    Ok(0.5 * (a + b))
}

/// Coordinates of `v` in the basis `vectors` (columns).
fn cone_coordinates(vectors: &[Point], v: &[f64]) -> Option<Vec<f64>> {
    if vectors.len() != v.len() {
        return None;
    }
    let columns = linalg::transpose(vectors);
    linalg::solve(&columns, v)
}

/// Perturbs `v` along a basis `v_1..v_n` with `v` in its open cone:
/// `w_i = v + eps_i v_i`, shrinking `eps` until every `w_i` is very strict
/// with the shared offset `(a + b) / 2`.
///
/// `seed` fixes the `v_i`; otherwise they are `v + (|v|/2) H c_i`, with `c_i`
/// the centered standard basis and `H` the reflection taking the all-ones
/// direction to `v`.
pub fn very_strict_basis(
    v: &[f64],
    s: &SignedSupport,
    seed: Option<&[Point]>,
    tol: &Tolerances,
) -> Result<VeryStrictBasis, Error> {
    let n = s.dim;
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        });
    }
    if classify_strictness(v, s, tol) != Strictness::VeryStrict {
        return Err(Error::Precondition(String::from("v is not a very strict separating vector")));
    }
    let c = midpoint_offset(v, s)?;
    let a = canonical_offset(v, s);
    let b = 2.0 * c - a;

    let base: Vec<Point> = match seed {
        Some(seed) => seed.to_vec(),
        None => default_seed_basis(v),
    };
    let lambdas = cone_coordinates(&base, v)
        .ok_or_else(|| Error::Precondition(String::from("seed vectors are not a basis")))?;
    if lambdas.iter().any(|l| !(*l > 0.0)) {
        return Err(Error::Precondition(String::from(
            "v is not in the open cone of the seed vectors",
        )));
    }

    let points: Vec<&Point> = s.all_points().collect();
    let products: Vec<f64> = base
        .iter()
        .flat_map(|vi| points.iter().map(move |p| dot(vi, p)))
        .collect();
    let k = products.iter().copied().fold(f64::INFINITY, f64::min);
    let l = products.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut eps = 1.0f64;
    if k < 0.0 {
        eps = eps.min((a - b) / (2.0 * k));
    }
    if l > 0.0 {
        eps = eps.min((b - a) / (2.0 * l));
    }
    // strictly below the caps
    eps *= 0.5;

    for _ in 0..64 {
        let vectors: Vec<Point> = base.iter().map(|vi| linalg::axpy(v, eps, vi)).collect();
        // v = sum p_i/(P+1) w_i with p_i = lambda_i / eps
        let p: Vec<f64> = lambdas.iter().map(|l| l / eps).collect();
        let total: f64 = p.iter().sum::<f64>() + 1.0;
        let basis = VeryStrictBasis {
            vectors,
            offset: c,
            cone_coefficients: p.iter().map(|pi| pi / total).collect(),
        };
        if basis.verify(v, s, tol).is_ok() {
            return Ok(basis);
        }
        eps *= 0.5;
    }
    Err(Error::Precondition(String::from(
        "could not shrink the perturbation to a very strict basis",
    )))
}

fn default_seed_basis(v: &[f64]) -> Vec<Point> {
    let n = v.len();
    if n == 1 {
        return vec![v.to_vec()];
    }
    let norm = linalg::norm(v);
    let vhat = linalg::scale(v, 1.0 / norm);
    let ones = vec![1.0 / libm::sqrt(n as f64); n];
    let u = linalg::sub(&ones, &vhat);
    let uu = dot(&u, &u);
    let reflect = |x: &[f64]| -> Vec<f64> {
        if uu < 1e-24 {
            x.to_vec()
        } else {
            linalg::axpy(x, -2.0 * dot(&u, x) / uu, &u)
        }
    };
    let delta = 0.5 * norm;
    (0..n)
        .map(|i| {
            let centered: Vec<f64> = (0..n)
                .map(|j| if i == j { 1.0 } else { 0.0 } - 1.0 / n as f64)
                .collect();
            linalg::axpy(v, delta, &reflect(&centered))
        })
        .collect()
}
