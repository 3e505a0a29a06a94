use proptest::prelude::*;
use signcert_core::descartes::{Sign, SignSequence};
use signcert_core::separation::{self, Strictness, VeryStrictBasis};
use signcert_core::simplex::{self, SimplexWitness};
use signcert_core::{AffineMap, Point, SignedSupport, Signomial, Tolerances};

fn signomial_2d() -> impl Strategy<Value = Signomial> {
    prop::collection::vec(
        (
            prop_oneof![-3.0..-0.5f64, 0.5..3.0f64],
            (-3i32..=3, -3i32..=3),
        ),
        2..7,
    )
    .prop_filter_map("needs two terms", |terms| {
        let f = Signomial::new(2, terms.into_iter().map(|(c, (a, b))| (c, [a as f64, b as f64]))).ok()?;
        (f.len() >= 2).then_some(f)
    })
}

fn unimodular() -> impl Strategy<Value = AffineMap> {
    // products of elementary shears keep det = +-1
    (-2i32..=2, -2i32..=2, any::<bool>(), -2i32..=2, -2i32..=2).prop_map(|(a, b, flip, v0, v1)| {
        let (a, b) = (a as f64, b as f64);
        let mut m = vec![vec![1.0 + a * b, a], vec![b, 1.0]];
        if flip {
            m.swap(0, 1);
        }
        AffineMap::new(m, vec![v0 as f64, v1 as f64]).unwrap()
    })
}

fn triangle() -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec((-5.0..5.0f64, -5.0..5.0f64), 3)
        .prop_map(|v| v.into_iter().map(|(x, y)| vec![x, y]).collect::<Vec<_>>())
        .prop_filter("non-degenerate", |v| {
            let area = (v[1][0] - v[0][0]) * (v[2][1] - v[0][1]) - (v[2][0] - v[0][0]) * (v[1][1] - v[0][1]);
            area.abs() > 1.0
        })
}

fn sign_seq() -> impl Strategy<Value = Vec<Sign>> {
    prop::collection::vec(prop_oneof![Just(Sign::Positive), Just(Sign::Negative)], 1..12)
}

proptest! {
    #[test]
    fn identity_transform_is_noop(f in signomial_2d()) {
        let g = f.monomial_transform(&AffineMap::identity(2)).unwrap();
        prop_assert_eq!(f.normalized(), g.normalized());
    }

    #[test]
    fn transform_then_inverse_round_trips(f in signomial_2d(), map in unimodular()) {
        let m = map.matrix();
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let inv = [
            [m[1][1] / det, -m[0][1] / det],
            [-m[1][0] / det, m[0][0] / det],
        ];
        let v = map.shift();
        let back = AffineMap::new(
            inv.iter().map(|r| r.to_vec()).collect(),
            (0..2).map(|i| -(inv[i][0] * v[0] + inv[i][1] * v[1])).collect(),
        ).unwrap();
        let g = f.monomial_transform(&map).unwrap().monomial_transform(&back).unwrap();
        prop_assert_eq!(f.normalized(), g.normalized());
    }

    #[test]
    fn transform_preserves_coefficients(f in signomial_2d(), map in unimodular()) {
        let g = f.monomial_transform(&map).unwrap();
        prop_assert_eq!(g.len(), f.len());
        for t in f.terms() {
            prop_assert_eq!(g.coefficient(&map.apply(&t.exponent)), Some(t.coeff));
        }
    }

    #[test]
    fn restrict_composes(f in signomial_2d(), mask in prop::collection::vec(any::<bool>(), 6)) {
        let support = f.support();
        let outer: Vec<Point> = support.iter().enumerate().filter(|(i, _)| mask[*i % 6] || *i == 0).map(|(_, p)| p.clone()).collect();
        let inner: Vec<Point> = outer.iter().step_by(2).cloned().collect();
        let twice = f.restrict(&outer).unwrap().restrict(&inner).unwrap();
        prop_assert_eq!(twice.normalized(), f.restrict(&inner).unwrap().normalized());
    }

    #[test]
    fn barycentric_membership_matches_facets(tri in triangle(), x in -8.0..8.0f64, y in -8.0..8.0f64) {
        let p = SimplexWitness::from_vertices(tri).unwrap();
        let alpha = [x, y];
        let lambda = p.barycentric(&alpha);
        prop_assert!((lambda.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        let inside = lambda.iter().all(|l| *l >= 1e-7);
        let outside = lambda.iter().any(|l| *l <= -1e-7);
        let by_facets = p.facets.iter().all(|h| h.signed_distance(&alpha) <= 0.0);
        if inside { prop_assert!(by_facets); }
        if outside { prop_assert!(!by_facets); }
        let a = p.negative_cone_membership(&alpha, 1e-9).map(|c| c.vertex);
        let b = p.negative_cone_membership_by_facets(&alpha, 1e-9).map(|c| c.vertex);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn negative_vertex_cones_are_disjoint(tri in triangle(), x in -20.0..20.0f64, y in -20.0..20.0f64) {
        let p = SimplexWitness::from_vertices(tri).unwrap();
        let lambda = p.barycentric(&[x, y]);
        let cones = (0..3)
            .filter(|&i| lambda[i] > 1e-9 && (0..3).all(|j| j == i || lambda[j] <= -1e-9))
            .count();
        prop_assert!(cones <= 1);
    }

    #[test]
    fn normalization_preserves_barycentric(tri in triangle(), x in -8.0..8.0f64, y in -8.0..8.0f64) {
        let p = SimplexWitness::from_vertices(tri).unwrap();
        let map = simplex::normalize_to_standard(&p).unwrap();
        for (i, v) in p.vertices.iter().enumerate() {
            let image = map.apply(v);
            let target = simplex::standard_simplex(2).vertices[i].clone();
            prop_assert!((image[0] - target[0]).abs() < 1e-8 && (image[1] - target[1]).abs() < 1e-8);
        }
        let before = p.barycentric(&[x, y]);
        let after = simplex::standard_simplex(2).barycentric(&map.apply(&[x, y]));
        for (a, b) in before.iter().zip(&after) {
            prop_assert!((a - b).abs() < 1e-7 * (1.0 + a.abs()));
        }
    }

    #[test]
    fn sign_sequence_bounds(signs in sign_seq()) {
        let seq = SignSequence::new(signs.clone());
        let rho = seq.sign_changes();
        prop_assert_eq!(rho, signs.windows(2).filter(|w| w[0] != w[1]).count());
        let b = seq.component_bounds();
        prop_assert_eq!(b.max_with_leading_sign + b.max_with_opposite_sign, rho + 1);
        prop_assert!(b.max_with_leading_sign >= b.max_with_opposite_sign);
        prop_assert_eq!(seq.reversed().sign_changes(), rho);
        prop_assert_eq!(seq.negated().sign_changes(), rho);
        let (neg, pos) = seq.signed_bounds().unwrap();
        let (nneg, npos) = seq.negated().signed_bounds().unwrap();
        prop_assert_eq!((neg, pos), (npos, nneg));
    }

    #[test]
    fn found_separating_vectors_revalidate(f in signomial_2d()) {
        let tol = Tolerances::default();
        let s = f.signed_support();
        if let Some(w) = separation::find_separating_vector(&s, &tol).unwrap() {
            prop_assert!(w.revalidate(&s, &tol).is_ok());
            prop_assert!(w.strictness >= Strictness::NonStrict);
            for a in &s.positive {
                prop_assert!(w.a - w.v.iter().zip(a).map(|(x, y)| x * y).sum::<f64>() >= -1e-9);
            }
            for b in &s.negative {
                prop_assert!(w.v.iter().zip(b).map(|(x, y)| x * y).sum::<f64>() - w.a >= -1e-9);
            }
        }
    }

    #[test]
    fn very_strict_basis_verifies(f in signomial_2d()) {
        let tol = Tolerances::default();
        let s = f.signed_support();
        if s.positive.is_empty() || s.negative.is_empty() {
            return Ok(());
        }
        let Some(w) = separation::find_separating_vector(&s, &tol).unwrap() else { return Ok(()) };
        if w.strictness != Strictness::VeryStrict {
            return Ok(());
        }
        let basis = separation::very_strict_basis(&w.v, &s, None, &tol).unwrap();
        prop_assert!(basis.verify(&w.v, &s, &tol).is_ok());
        let again = VeryStrictBasis::from_vectors(basis.vectors.clone(), &w.v, &s, &tol).unwrap();
        prop_assert!(again.cone_coefficients.iter().all(|c| *c > 0.0));
        for u in &basis.vectors {
            prop_assert_eq!(separation::classify_strictness(u, &s, &tol), Strictness::VeryStrict);
        }
    }
}

#[test]
fn support_swap_is_involution() {
    let s = SignedSupport::new(2, vec![vec![0.0, 0.0], vec![1.0, 2.0]], vec![vec![3.0, 1.0]]);
    let t = s.swapped();
    assert_eq!(t.positive, s.negative);
    assert_eq!(t.swapped().positive, s.positive);
}
