use proptest::prelude::*;

use formalglue::fiber::{fiber_over_k, intersect_ideals};
use formalglue::local_ring::LocalRing;
use formalglue::oracle::intersection_matches;
use formalglue::poly::{mora_normal_form, std_basis, Monomial, Poly};
use formalglue::session::parse_session;
use formalglue::Field;

fn q() -> Field {
    Field::Rationals
}

fn ideal_gens() -> Vec<Vec<&'static str>> {
    vec![
        vec!["x*y"],
        vec!["x^2 - y^3"],
        vec!["x^2", "x*y"],
        vec!["x + y^2", "y^3"],
        vec!["x^2 + y^2", "x*y"],
        vec!["x - x^2*y", "y^4"],
        vec!["y^2 - x^3", "x*y^2"],
    ]
}

fn ring(gens: &[&str]) -> LocalRing {
    LocalRing::parse(&["x", "y"], gens, q()).unwrap()
}

/// Polynomials in `x, y` of degree at most `deg`, with small integer coefficients.
fn poly(min_deg: u32, deg: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..=deg, 0u32..=deg), -4i64..=4), 0..5).prop_map(move |terms| {
        let terms = terms
            .into_iter()
            .filter(|((a, b), _)| a + b >= min_deg && a + b <= deg)
            .map(|((a, b), c)| (Monomial::from_exponents(vec![a, b]), q().from_i64(c)));
        Poly::from_terms(2, q(), terms)
    })
}

fn is_member(r: &LocalRing, f: &Poly) -> bool {
    mora_normal_form(f, r.std_basis(), r.order()).is_zero()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn normal_form_is_idempotent(i in 0..7usize, f in poly(0, 4)) {
        let r = ring(&ideal_gens()[i]);
        let nf = mora_normal_form(&f, r.std_basis(), r.order());
        prop_assert_eq!(mora_normal_form(&nf, r.std_basis(), r.order()), nf);
    }

    #[test]
    fn unit_multiples_have_the_same_membership(i in 0..7usize, f in poly(1, 3), a in poly(0, 2), u in poly(1, 2)) {
        let r = ring(&ideal_gens()[i]);
        let unit = &r.one() + &u;
        prop_assert_eq!(is_member(&r, &(&unit * &f)), is_member(&r, &f));
        let member = &a * &r.gens()[0];
        prop_assert!(is_member(&r, &(&unit * &member)));
    }

    #[test]
    fn standard_basis_ignores_generator_order(i in 0..7usize, extra in poly(1, 3)) {
        let mut gens = ring(&ideal_gens()[i]).gens().to_vec();
        gens.push(&extra * &gens[0]);
        let forward = ring(&ideal_gens()[i]).with_gens(gens.clone()).unwrap();
        gens.reverse();
        let backward = ring(&ideal_gens()[i]).with_gens(gens).unwrap();
        prop_assert_eq!(forward.std_basis(), backward.std_basis());
        let sb = std_basis(forward.gens(), forward.order()).unwrap();
        prop_assert_eq!(sb.as_slice(), forward.std_basis());
    }

    #[test]
    fn fiber_over_k_is_symmetric(i in 0..7usize, j in 0..7usize) {
        let (r, s) = (ring(&ideal_gens()[i]), ring(&ideal_gens()[j]));
        let a = fiber_over_k(&r, &s).unwrap().presentation.unwrap();
        let b = fiber_over_k(&s, &r).unwrap().presentation.unwrap();
        prop_assert_eq!((a.krull_dim(), a.edim(), a.depth()), (b.krull_dim(), b.edim(), b.depth()));
        prop_assert_eq!(a.krull_dim(), r.krull_dim().max(s.krull_dim()));
        prop_assert_eq!(a.edim(), r.edim() + s.edim());
    }

    #[test]
    fn monomial_intersections_match_the_oracle(
        i in prop::collection::vec((0u32..4, 0u32..4), 1..3),
        j in prop::collection::vec((0u32..4, 0u32..4), 1..3),
    ) {
        let a = LocalRing::power_series(&["x", "y"], q());
        let to_polys = |v: &[(u32, u32)]| -> Vec<Poly> {
            v.iter()
                .filter(|(e, f)| e + f > 0)
                .map(|&(e, f)| Poly::monomial(Monomial::from_exponents(vec![e, f]), q().one(), q()))
                .collect()
        };
        let (i, j) = (to_polys(&i), to_polys(&j));
        prop_assume!(!i.is_empty() && !j.is_empty());
        let k = intersect_ideals(&a, &i, &j);
        prop_assert!(intersection_matches(2, q(), &i, &j, &k, 7));
    }

    #[test]
    fn session_documents_round_trip(gens in prop::collection::vec(poly(1, 3), 1..4), p in prop::sample::select(vec!["q", "F5", "F101"])) {
        let r = LocalRing::power_series(&["x", "y"], q());
        let gens: Vec<Poly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let ideal: Vec<String> = gens.iter().map(|g| r.format(g)).collect();
        let text = format!(
            "field {p}\nring R = k[[x, y]] / ({})\nring K = k\nmap e : R -> K = (0, 0)\nfiber F = R x R\n",
            ideal.join(", ")
        );
        let doc = parse_session(&text).unwrap();
        let printed = doc.to_string();
        let again = parse_session(&printed).unwrap();
        prop_assert_eq!(&again, &doc);
        prop_assert_eq!(again.to_string(), printed);
    }
}
