//! Fixtures and independent checks shared by the integration tests. Nothing
//! here calls into the certifier's geometry; the point is to have a second
//! opinion.
#![allow(dead_code)]

use signcert_core::certify::Witness;
use signcert_core::{SignedSupport, Signomial};

pub fn sig(dim: usize, terms: &[(f64, &[f64])]) -> Signomial {
    Signomial::new(dim, terms.iter().map(|(c, e)| (*c, e.to_vec()))).unwrap()
}

pub fn p1() -> Signomial {
    sig(2, &[(1.0, &[2.5, 0.0]), (-2.0, &[0.5, 2.0]), (1.0, &[0.5, 0.0]), (-1.0, &[2.5, -2.0])])
}

pub fn p2() -> Signomial {
    sig(
        2,
        &[
            (-1.0, &[4.0, 5.0]),
            (3.0, &[3.0, 4.0]),
            (-1.0, &[3.0, 2.0]),
            (-1.0, &[2.0, 3.0]),
            (1.0, &[1.0, 2.0]),
            (-3.0, &[1.0, 1.0]),
            (1.0, &[0.0, 1.0]),
        ],
    )
}

/// `p2` without the terms at `(4,5)` and `(2,3)`.
pub fn tilde_p2() -> Signomial {
    sig(
        2,
        &[
            (3.0, &[3.0, 4.0]),
            (-1.0, &[3.0, 2.0]),
            (1.0, &[1.0, 2.0]),
            (-3.0, &[1.0, 1.0]),
            (1.0, &[0.0, 1.0]),
        ],
    )
}

pub fn p3() -> Signomial {
    sig(
        2,
        &[
            (1.0, &[3.0, 5.0]),
            (-1.0, &[2.0, 5.0]),
            (1.0, &[4.0, 2.0]),
            (1.0, &[3.0, 3.0]),
            (-1.0, &[5.0, 0.0]),
            (-1.0, &[1.0, 4.0]),
            (-1.0, &[3.0, 1.0]),
            (3.0, &[2.0, 2.0]),
            (-1.0, &[1.0, 3.0]),
            (1.0, &[1.0, 1.0]),
        ],
    )
}

pub fn p4() -> Signomial {
    sig(
        2,
        &[
            (1.0, &[5.0, 2.0]),
            (1.0, &[1.0, 5.0]),
            (-2.0, &[3.0, 2.0]),
            (-3.0, &[2.0, 2.0]),
            (1.0, &[1.0, 3.0]),
            (1.0, &[0.0, 4.0]),
            (-1.0, &[1.0, 1.0]),
            (1.0, &[0.0, 0.0]),
        ],
    )
}

pub fn p4_simplex_vertices() -> Vec<Vec<f64>> {
    vec![vec![1.0, 1.0], vec![4.0, 2.0], vec![1.0, 3.0]]
}

pub fn p5() -> Signomial {
    sig(
        2,
        &[
            (1.0, &[4.0, 4.0]),
            (1.0, &[2.0, 6.0]),
            (1.0, &[2.0, 3.0]),
            (-5.0, &[3.0, 3.0]),
            (-3.0, &[2.0, 2.0]),
            (1.0, &[1.0, 1.0]),
            (1.0, &[0.0, 2.0]),
        ],
    )
}

/// The four cubics `(coefficients by degree, negative count, positive count)`.
pub fn cubics() -> Vec<([f64; 4], usize, usize)> {
    vec![
        ([8.0, -12.0, 6.0, -1.0], 1, 1),
        ([9.0, -15.0, 7.0, -1.0], 2, 1),
        ([15.0, -23.0, 9.0, -1.0], 2, 2),
        ([3.0, -7.0, 5.0, -1.0], 1, 2),
    ]
}

/// Regular heptagon of radius 3 (positive) around a negative centre.
pub fn heptagon() -> Signomial {
    let mut terms: Vec<(f64, Vec<f64>)> = (0..7)
        .map(|k| {
            let a = 2.0 * std::f64::consts::PI * k as f64 / 7.0;
            (1.0, vec![3.0 * a.cos(), 3.0 * a.sin()])
        })
        .collect();
    terms.push((-10.0, vec![0.0, 0.0]));
    Signomial::new(2, terms).unwrap()
}

// ---- univariate sign components by root isolation ----

/// `sum c t^e` at `t = exp(s)`, scaled by the largest term so that huge `s`
/// cannot overflow. Returns `(scaled value, scaled sum of |terms|)`.
fn scaled(terms: &[(f64, f64)], s: f64) -> (f64, f64) {
    let m = terms.iter().map(|(_, e)| e * s).fold(f64::NEG_INFINITY, f64::max);
    terms.iter().fold((0.0, 0.0), |(v, a), (c, e)| {
        let w = (e * s - m).exp();
        (v + c * w, a + c.abs() * w)
    })
}

fn sign_at(terms: &[(f64, f64)], s: f64) -> i32 {
    let (v, a) = scaled(terms, s);
    if v.abs() <= 1e-12 * a {
        0
    } else if v > 0.0 {
        1
    } else {
        -1
    }
}

/// Derivative of `t^-emin f` with respect to `t`. Dividing by the lowest
/// monomial first leaves the positive roots alone and drops one term, so the
/// recursion terminates.
fn derivative(terms: &[(f64, f64)], emin: f64) -> Vec<(f64, f64)> {
    terms
        .iter()
        .map(|(c, e)| (*c, e - emin))
        .filter(|(_, e)| *e != 0.0)
        .map(|(c, e)| (c * e, e - 1.0))
        .collect()
}

fn merge(terms: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = Vec::new();
    for &(c, e) in terms {
        match out.iter_mut().find(|t| t.1 == e) {
            Some(t) => t.0 += c,
            None => out.push((c, e)),
        }
    }
    out.retain(|t| t.0 != 0.0);
    out
}

/// `ln t` of every real root of `sum c t^e` on `(0, inf)`, found by splitting
/// at the roots of the derivative (where the function is monotone between
/// them) and bisecting in `s = ln t`. A critical point where the function
/// vanishes is reported as a (multiple) root.
pub fn log_roots(terms: &[(f64, f64)]) -> Vec<f64> {
    let terms = merge(terms);
    if terms.len() <= 1 {
        return Vec::new();
    }
    // every root satisfies |s| <= bound (dominant-term argument)
    let emin = terms.iter().map(|t| t.1).fold(f64::INFINITY, f64::min);
    let emax = terms.iter().map(|t| t.1).fold(f64::NEG_INFINITY, f64::max);
    let mut exps: Vec<f64> = terms.iter().map(|t| t.1).collect();
    exps.sort_by(f64::total_cmp);
    let gap = exps.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    let total: f64 = terms.iter().map(|t| t.0.abs()).sum();
    let cmin = terms.iter().find(|t| t.1 == emin).unwrap().0.abs();
    let cmax = terms.iter().find(|t| t.1 == emax).unwrap().0.abs();
    let ratio = (total / cmin.min(cmax)).max(1.0);
    let bound = ratio.ln() / gap + 1.0;

    let mut critical = log_roots(&derivative(&terms, emin));
    critical.retain(|s| s.abs() < bound);
    let mut knots = vec![-bound];
    knots.extend(critical.iter().copied());
    knots.push(bound);

    let mut roots = Vec::new();
    for &c in &critical {
        if sign_at(&terms, c) == 0 {
            roots.push(c);
        }
    }
    for w in knots.windows(2) {
        let (mut lo, mut hi) = (w[0], w[1]);
        let (slo, shi) = (sign_at(&terms, lo), sign_at(&terms, hi));
        if slo * shi >= 0 {
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if sign_at(&terms, mid) == slo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        roots.push(0.5 * (lo + hi));
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-9 * (1.0 + b.abs()));
    roots
}

/// `(negative, positive)` connected components of `(0, inf)` minus the zero set.
pub fn univariate_components(terms: &[(f64, f64)]) -> (usize, usize) {
    let roots = log_roots(terms);
    let mut probes = Vec::new();
    if roots.is_empty() {
        probes.push(0.0);
    } else {
        probes.push(roots[0] - 1.0);
        for w in roots.windows(2) {
            probes.push(0.5 * (w[0] + w[1]));
        }
        probes.push(roots[roots.len() - 1] + 1.0);
    }
    let mut neg = 0;
    let mut pos = 0;
    for s in probes {
        match sign_at(terms, s) {
            1 => pos += 1,
            -1 => neg += 1,
            _ => {}
        }
    }
    (neg, pos)
}

// ---- direct witness checks ----

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Gaussian elimination with partial pivoting; `None` when singular.
pub fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[p][col].abs() < 1e-14 {
            return None;
        }
        a.swap(p, col);
        b.swap(p, col);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for k in col..n {
                a[r][k] -= f * a[col][k];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|k| a[i][k] * x[k]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    Some(x)
}

/// Barycentric coordinates of `p` with respect to `vertices`.
pub fn barycentric(vertices: &[Vec<f64>], p: &[f64]) -> Option<Vec<f64>> {
    let n = p.len();
    let mut a = vec![vec![0.0; n + 1]; n + 1];
    for (i, v) in vertices.iter().enumerate() {
        for j in 0..n {
            a[j][i] = v[j];
        }
        a[n][i] = 1.0;
    }
    let mut b = p.to_vec();
    b.push(1.0);
    solve(a, b)
}

/// `true` when `vertices` span a simplex holding every negative point, with
/// every positive point in a negative vertex cone, up to `slack`.
pub fn simplex_certifies(vertices: &[Vec<f64>], s: &SignedSupport, slack: f64) -> bool {
    let inside = s.negative.iter().all(|b| match barycentric(vertices, b) {
        Some(l) => l.iter().all(|x| *x >= -slack),
        None => false,
    });
    let cones = s.positive.iter().all(|a| match barycentric(vertices, a) {
        Some(l) => {
            let k = (0..l.len()).max_by(|&i, &j| l[i].total_cmp(&l[j])).unwrap();
            l.iter().enumerate().all(|(i, x)| i == k || *x <= slack)
        }
        None => false,
    });
    inside && cones
}

/// Checks a witness by direct inequality evaluation against the support of
/// the target (negative side = target sign). Errors say what failed.
pub fn check_witness(w: &Witness, s: &SignedSupport, slack: f64) -> Result<(), String> {
    match w {
        Witness::None | Witness::Cardinality { .. } | Witness::SignSequence { .. } => Ok(()),
        Witness::Separation(sep) => {
            for a in &s.positive {
                let d = sep.a - dot(&sep.v, a);
                if d < -slack {
                    return Err(format!("positive {a:?} above by {d:e}"));
                }
            }
            for b in &s.negative {
                let d = dot(&sep.v, b) - sep.a;
                if d < -slack {
                    return Err(format!("negative {b:?} below by {d:e}"));
                }
            }
            Ok(())
        }
        Witness::Enclosing(e) => {
            // enclosed: positive points of the target support
            for b in &s.positive {
                let d = dot(&e.v, b);
                if d - e.a < -slack || e.b - d < -slack {
                    return Err(format!("enclosed {b:?} outside the slab"));
                }
            }
            for a in &s.negative {
                let d = dot(&e.v, a);
                if (e.a - d).max(d - e.b) < -slack {
                    return Err(format!("outside point {a:?} inside the slab"));
                }
            }
            Ok(())
        }
        Witness::Simplex { simplex, .. } => {
            if simplex_certifies(&simplex.vertices, s, slack) {
                Ok(())
            } else {
                Err(String::from("simplex does not certify the support"))
            }
        }
        Witness::Hyperplane(h) => {
            let off = |p: &Vec<f64>| (dot(&h.normal, p) - h.offset).abs();
            if s.positive.iter().any(|a| off(a) > 1e-6) {
                return Err(String::from("positive point off the hyperplane"));
            }
            if !s.negative.iter().any(|b| off(b) > 1e-6) {
                return Err(String::from("no negative point off the hyperplane"));
            }
            Ok(())
        }
    }
}

/// Analytic Hessian of `f` at `x` is positive semidefinite (2 variables),
/// relative to the size of its entries.
pub fn hessian_psd_2d(f: &Signomial, x: &[f64]) -> bool {
    let mut h = [[0.0f64; 2]; 2];
    let mut scale = 0.0f64;
    for t in f.terms() {
        let m = t.coeff * x[0].powf(t.exponent[0]) * x[1].powf(t.exponent[1]);
        for i in 0..2 {
            for j in 0..2 {
                let d = if i == j { 1.0 } else { 0.0 };
                let v = m * t.exponent[i] * (t.exponent[j] - d) / (x[i] * x[j]);
                h[i][j] += v;
                scale = scale.max(v.abs());
            }
        }
    }
    let tol = 1e-9 * scale.max(1e-300);
    h[0][0] >= -tol && h[1][1] >= -tol && h[0][0] * h[1][1] - h[0][1] * h[1][0] >= -tol * scale
}
