use hermit_core::bounds::{sequence_bound, BoundMethod, SequenceKind};
use hermit_core::code::{classical_code, residue_code, shorten, SupportKind};
use hermit_core::oracle::{coset_min_weight, min_weight_exhaustive, DEFAULT_BUDGET};
use hermit_core::riemann_roch::{basis_divisor, Chart};
use hermit_core::{Curve, TwoPointDivisor};

#[test]
fn classical_dimensions_follow_riemann_roch() {
    for q in [2u32, 3, 4] {
        let curve = Curve::new(q).unwrap();
        let h = curve.herm();
        for a in 0..h.n_points() - 1 {
            let one = classical_code(&curve, SequenceKind::OnePoint, a).unwrap();
            let l = basis_divisor(TwoPointDivisor::new(a, 0), h, Chart::P).len();
            assert_eq!(one.k, l, "q={q} a={a}");
            let two = classical_code(&curve, SequenceKind::TwoPoint, a).unwrap();
            let l = basis_divisor(TwoPointDivisor::new(a, -2), h, Chart::P).len();
            assert_eq!(two.k, l, "q={q} a={a} two-point");
        }
    }
}

#[test]
fn coset_weights_respect_bounds_q2() {
    let curve = Curve::new(2).unwrap();
    let h = curve.herm();
    let cases = [
        (SequenceKind::OnePoint, SupportKind::OnePoint, 0, BoundMethod::Simple),
        (SequenceKind::TwoPoint, SupportKind::TwoPoint, 1, BoundMethod::Simple),
        (SequenceKind::TwoPoint, SupportKind::TwoPoint, 1, BoundMethod::Improved),
    ];
    for (kind, support, n, method) in cases {
        for i in -1..=h.duality_shift() {
            let sup = residue_code(&curve, support, TwoPointDivisor::new(i, n)).unwrap();
            let sub = residue_code(&curve, support, TwoPointDivisor::new(i + 1, n)).unwrap();
            let bound = sequence_bound(i, kind, method, h);
            let w = coset_min_weight(&sub, &sup, DEFAULT_BUDGET).unwrap();
            // near the length the sequence collapses: equal codes make the bound vacuous
            if bound == 0 {
                assert_eq!(w, 0, "{kind:?} i={i}: gap with a nonempty coset");
            } else if sub.k < sup.k {
                assert!(
                    w as i64 >= bound,
                    "{kind:?} {method:?} i={i}: weight {w} < bound {bound}"
                );
            }
        }
    }
}

#[test]
fn shortening_at_origin_keeps_distance() {
    let curve = Curve::new(2).unwrap();
    for a in 1..8 {
        let code = classical_code(&curve, SequenceKind::OnePoint, a).unwrap();
        let short = shorten(&code, curve.origin_index()).unwrap();
        assert_eq!(short.n, code.n - 1);
        assert_eq!(short.k, code.k - 1, "a={a}");
        let d = min_weight_exhaustive(&code, DEFAULT_BUDGET).unwrap();
        let ds = min_weight_exhaustive(&short, DEFAULT_BUDGET).unwrap();
        assert!(ds.is_none() || ds >= d, "a={a}: {ds:?} < {d:?}");
    }
}
