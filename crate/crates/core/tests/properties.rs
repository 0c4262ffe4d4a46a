use proptest::prelude::*;
use srd_core::atlas::{representative, spec};
use srd_core::codes::{emit_code, parse_code, CodeSpace, SrdCode};
use srd_core::gf::{make_field, Elem, FieldCtx};
use srd_core::invariants::{distributions, od0};
use srd_core::veronese::{det3, k_action, k_action_subspace, mat_mul, mat_vec, veronese, Coords6, Mat3};

fn field(q: u32) -> FieldCtx {
    let (p, h) = srd_core::gf::prime_power(q).unwrap();
    make_field(p, h).unwrap()
}

fn invertible(f: &FieldCtx, raw: [u32; 9]) -> Mat3 {
    let mut m: Mat3 = std::array::from_fn(|i| std::array::from_fn(|j| raw[3 * i + j] % f.q()));
    if det3(f, &m) == 0 {
        // Fall back to a unipotent matrix built from the same entries.
        m = [[1, m[0][1], m[0][2]], [0, 1, m[1][2]], [0, 0, 1]];
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(q in prop::sample::select(vec![2u32, 3, 4, 5, 7, 8, 9, 16, 25, 27]), a in 0u32..1000, b in 0u32..1000, c in 0u32..1000) {
        let f = field(q);
        let (a, b, c) = (a % q, b % q, c % q);
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        prop_assert_eq!(f.pow(a, q as u64), a);
    }

    #[test]
    fn action_is_functorial(q in prop::sample::select(vec![3u32, 4, 5, 8]), x in any::<[u32; 9]>(), y in any::<[u32; 9]>(), p in any::<[u32; 6]>(), u in any::<[u32; 3]>()) {
        let f = field(q);
        let (a, b) = (invertible(&f, x), invertible(&f, y));
        let pt: Coords6 = p.map(|e| e % q);
        let u: [Elem; 3] = u.map(|e| e % q);
        prop_assert_eq!(k_action(&f, &mat_mul(&f, &a, &b), &pt), k_action(&f, &a, &k_action(&f, &b, &pt)));
        prop_assert_eq!(veronese(&f, &mat_vec(&f, &a, &u)), k_action(&f, &a, &veronese(&f, &u)));
    }

    #[test]
    fn distributions_and_labels_are_invariant(q in prop::sample::select(vec![3u32, 4, 5]), x in any::<[u32; 9]>(), which in 0usize..3) {
        let f = field(q);
        let cs = CodeSpace::new(&f).unwrap();
        let ids = if f.is_even() { ["Omega_7", "Sigma_16", "Sigma_GF"] } else { ["Omega_8,2", "Omega_15,2", "Sigma_TF"] };
        let w = representative(spec(&f, ids[which]).unwrap(), &f).unwrap().subspace;
        let img = k_action_subspace(&f, &invertible(&f, x), &w).unwrap();
        prop_assert_eq!(distributions(cs.pg(), &w), distributions(cs.pg(), &img));
        prop_assert_eq!(cs.classify_subspace(&w).unwrap(), cs.classify_subspace(&img).unwrap());
    }

    #[test]
    fn extension_is_monotone_and_idempotent(q in prop::sample::select(vec![3u32, 4, 5]), entries in any::<[u32; 6]>()) {
        let f = field(q);
        let cs = CodeSpace::new(&f).unwrap();
        let y: Coords6 = entries.map(|e| e % q);
        prop_assume!(y.iter().any(|&e| e != 0));
        let m: Mat3 = srd_core::veronese::sym_matrix(&y);
        let c = SrdCode::new(&f, vec![m]).unwrap();
        let e = cs.extend_to_complete(&c);
        prop_assert!(e.subspace().contains_subspace(&f, c.subspace()));
        prop_assert!(cs.is_complete(&e));
        prop_assert_eq!(cs.min_distance(&e), cs.min_distance(&c));
        let again = cs.extend_to_complete(&e);
        prop_assert_eq!(again.subspace(), e.subspace());
    }

    #[test]
    fn code_json_round_trip(q in prop::sample::select(vec![2u32, 3, 4, 9]), rows in prop::collection::vec(any::<[u32; 6]>(), 1..4)) {
        let f = field(q);
        let basis: Vec<Mat3> = rows.iter().map(|r| srd_core::veronese::sym_matrix(&r.map(|e| e % q))).collect();
        if let Ok(c) = SrdCode::new(&f, basis) {
            let back = parse_code(&emit_code(&c)).unwrap();
            prop_assert_eq!(back.basis(), c.basis());
            prop_assert_eq!(od0(&srd_core::geometry::Pg5::new(&f).unwrap(), back.subspace()), od0(&srd_core::geometry::Pg5::new(&f).unwrap(), c.subspace()));
        }
    }
}
