use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zipsections::corpus::{self, Catalog};
use zipsections::rootdata::RootDatum;
use zipsections::sections::*;

#[test]
fn r_delta_generation() {
    for q in [2u64, 3] {
        let report = corpus::r_delta_generators_check(q, 30).unwrap();
        assert!(report.passed(), "{report:?}");
        assert!(report.monomials > 0);
    }
}

#[test]
fn hasse_identity() {
    let r = corpus::hasse_invariant_check(2, 4, 60, 5).unwrap();
    assert!(r.passed(), "{r:?}");
    let r = corpus::hasse_invariant_check(3, 2, 30, 5).unwrap();
    assert!(r.passed(), "{r:?}");
}

#[test]
fn theta_identity() {
    for (n, q, d) in [(1, 2, 3), (2, 2, 4), (2, 3, 2), (3, 2, 2)] {
        let r = corpus::theta_sp2n_check(n, q, d, 20, 7).unwrap();
        assert!(r.passed(), "n={n} q={q} {r:?}");
    }
}

#[test]
fn property_p_matches_sections() {
    // property (P) forces H⁰ to be spanned by the weights passing the closed form
    for q in [2u64, 3] {
        let c = Catalog::load("sl2", q).unwrap();
        for n in 0..12 {
            let v = corpus::sl2_sym(q, n).unwrap();
            assert!(corpus::property_p(&v).unwrap());
            assert_eq!(corpus::property_p(&v).unwrap(), corpus::property_p_invariants(&v).unwrap());
            let h = h0(&v, &c.datum, &c.lphi).unwrap();
            assert_eq!(h.dim(), corpus::sl2_h0_closed_form(n, q).len());
        }
    }
}

#[test]
fn property_p_criteria_agree_on_random_breps() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for q in [2u64, 3] {
        for _ in 0..40 {
            let v = corpus::random_sl2_brep(q, 6, &mut rng).unwrap();
            if v.distinct_weights().len() == v.dim() {
                assert_eq!(corpus::property_p(&v).unwrap(), corpus::property_p_invariants(&v).unwrap(), "{:?}", v.weights());
            }
        }
    }
}

#[test]
fn u21_cone_consistency() {
    for q in [2u64, 3] {
        let bound = (q * (q * q - 1)) as i64;
        for l1 in -6..=6i64 {
            for l2 in -6..=l1 {
                for l3 in -6..=6i64 {
                    let lambda = [l1, l2, l3];
                    if !corpus::u21_h0_closed_form(lambda, q).is_empty() {
                        assert!(corpus::u21_cone(lambda, q), "{lambda:?}");
                    }
                    assert_eq!(corpus::u21_cone_witness(lambda, q, bound).is_some(), corpus::u21_cone(lambda, q), "{lambda:?}");
                }
            }
        }
    }
}

#[test]
fn catalog_constants() {
    use num_rational::Ratio;
    for q in [2i64, 3, 4, 5] {
        let u = corpus::u21(q as u64).unwrap();
        let pa = &u.per_alpha()[0];
        let d = q * q - 1;
        assert_eq!(pa.delta, vec![Ratio::new(-q, d), Ratio::new(q - 1, d), Ratio::new(1, d)]);
        assert_eq!(pa.r, vec![Ratio::new(q * q - q + 1, d), Ratio::new(-(q * q - q + 1), q * d)]);
        assert_eq!(pa.lambda, zipsections::exactmath::IntegerLattice::from_generators(3, &[vec![q, -(q + 1), 1]]).unwrap());
        let r = corpus::res_sl2(q as u64).unwrap();
        let pa = &r.per_alpha()[0];
        assert_eq!(pa.delta, vec![Ratio::new(-1, d), Ratio::new(-q, d)]);
        assert_eq!(pa.r, vec![Ratio::new(q * q + 1, d), Ratio::new(-(q * q + 1), q * d)]);
        let s = corpus::sl2(q as u64).unwrap();
        assert_eq!(s.per_alpha()[0].delta, vec![Ratio::new(-1, q - 1)]);
    }
}

#[test]
fn orbit_combinatorics() {
    let data: Vec<(RootDatum, Vec<i64>)> = vec![
        (corpus::sl2_datum(2).unwrap(), vec![1]),
        (corpus::u21_datum(2).unwrap(), vec![1, 1, 0]),
        (corpus::res_sl2_datum(2).unwrap(), vec![1, 0]),
        (corpus::sp2n_datum(2, 2).unwrap(), vec![1, 1]),
    ];
    for (rd, mu) in data {
        let zd = zipsections::zipdatum::ZipDatum::derive(rd, mu).unwrap();
        let rd = zd.root_datum();
        let poset = zd.orbit_poset();
        let wi = rd.parabolic_subgroup(zd.i_set()).len();
        assert_eq!(poset.orbits.len() * wi, rd.weyl_group().len());
        assert!(poset.open().is_some());
        assert_eq!(poset.codim_one().len(), zd.delta_p().len());
        for o in &poset.orbits {
            assert_eq!(o.dim, o.length + zd.dim_p());
        }
    }
}

#[test]
fn catalog_lphi_shapes() {
    let sl2 = Catalog::load("sl2", 5).unwrap();
    let lat = sl2.lphi.weight_congruence.as_ref().unwrap();
    assert!(lat.contains(&[4]).unwrap() && !lat.contains(&[2]).unwrap());
    let gl3 = Catalog::load("gl3", 3).unwrap();
    // (q−1) X*(T) for a split group
    let lat = gl3.lphi.weight_congruence.as_ref().unwrap();
    assert!(lat.contains(&[2, -2, 4]).unwrap() && !lat.contains(&[1, -1, 0]).unwrap());
    assert_eq!(gl3.lphi.group_elements.len(), 2);
    let u = Catalog::load("u21", 3).unwrap();
    assert_eq!(u.lphi.infinitesimal, vec![(vec![1, -1, 0], 3)]);
}
