use descent_forge::builtin::{builtin, SHIPPED};
use descent_forge::coring::{equalizer_rs, twist_comodule, Comodule};
use descent_forge::descent::{
    enumerate_subbimodules, gamma, gamma_prime, j_of, m_maps, subbimodule_product, Budgets, ComatrixDescent, Descent,
    Mutation, SubBimodule, DEFAULT_SUBSPACE_BUDGET,
};
use descent_forge::monoid::MonoidTable;
use descent_forge::subspace::unit_vector;
use descent_forge::{Extension, FiniteAlgebra, Matrix, PrimeField, Side, Subspace};

fn ext(name: &str) -> Extension {
    builtin(name).unwrap().extension
}

fn descent(name: &str) -> Descent {
    Descent::new(&ext(name), Budgets::default()).unwrap()
}

fn sub(e: &Extension, vs: &[&[u32]]) -> SubBimodule {
    SubBimodule::new(e, Subspace::span(e.field(), e.top().dim(), vs)).unwrap()
}

#[test]
fn lattice_sizes() {
    // every subspace when B is the prime field; spans of matrix units for
    // the diagonal
    for (name, n) in [
        ("id-ext(2)", 2),
        ("split2(2)", 5),
        ("split2(3)", 6),
        ("mat2(2)", 67),
        ("diag-mat2(2)", 16),
        ("diag-mat2(3)", 16),
    ] {
        let l = enumerate_subbimodules(&ext(name), DEFAULT_SUBSPACE_BUDGET).unwrap();
        assert_eq!(l.len(), n, "{name}");
    }
}

#[test]
fn enumeration_rejects_non_injective_maps() {
    let f2 = PrimeField::new(2).unwrap();
    let b = FiniteAlgebra::split(f2, 2);
    let s = FiniteAlgebra::prime_field(f2);
    let e = Extension::from_matrix(b, s, Matrix::from_rows(f2, &[vec![1, 0]]).unwrap()).unwrap();
    assert!(enumerate_subbimodules(&e, DEFAULT_SUBSPACE_BUDGET).is_err());
}

#[test]
fn enumeration_budget() {
    let err = enumerate_subbimodules(&ext("mat2(2)"), 10).unwrap_err();
    assert!(err.is_budget());
}

#[test]
fn products() {
    let e = ext("split2(3)");
    let i = sub(&e, &[&[1, 2]]);
    assert_eq!(subbimodule_product(&e, &i, &i), SubBimodule::base_image(&e));
    let d = ext("diag-mat2(2)");
    let off = sub(&d, &[&[0, 1, 0, 0], &[0, 0, 1, 0]]);
    assert_eq!(subbimodule_product(&d, &off, &off), SubBimodule::base_image(&d));
    let b = SubBimodule::base_image(&d);
    assert_eq!(subbimodule_product(&d, &off, &b), off);
    assert_eq!(subbimodule_product(&d, &b, &off), off);
}

#[test]
fn multiplication_maps() {
    let e = ext("split2(2)");
    let b = m_maps(&e, &SubBimodule::base_image(&e));
    assert!(b.left_invertible() && b.right_invertible());
    let half = m_maps(&e, &sub(&e, &[&[1, 0]]));
    assert_eq!(half.m_l.rank(), 1);
    assert!(!half.left_invertible());

    let m = ext("mat2(2)");
    // X = [[1,1],[0,1]] in the basis E11, E12, E21, E22
    let x = sub(&m, &[&[1, 1, 0, 1]]);
    let mm = m_maps(&m, &x);
    assert!(mm.left_invertible() && mm.right_invertible());
}

#[test]
fn gamma_of_the_base_is_the_identity() {
    for name in SHIPPED {
        let d = descent(name);
        let b = SubBimodule::base_image(d.extension());
        assert!(gamma(d.coring(), &b).unwrap().is_identity(), "{name}");
        assert!(gamma_prime(d.coring(), &b).unwrap().is_identity(), "{name}");
    }
}

#[test]
fn gamma_on_a_unit_of_split2_3() {
    // (m^l)^-1(1) = (1,2) (x) (1,2), so Gamma(I)(1 (x) 1) = (1,2) (x) (1,2)
    let d = descent("split2(3)");
    let e = d.extension();
    let i = sub(e, &[&[1, 2]]);
    let model = d.coring().sweedler().unwrap();
    let one = [1, 1];
    let u = [1, 2];
    let expect = model.tensor().pure(&u, &u);
    let g = gamma(d.coring(), &i).unwrap();
    assert_eq!(g.matrix().apply(&model.tensor().pure(&one, &one)), expect);
    let g2 = gamma_prime(d.coring(), &i).unwrap();
    assert_eq!(g2.matrix().apply(&model.tensor().pure(&one, &one)), expect);
    assert_eq!(j_of(d.coring(), &g, Side::Left).unwrap(), i);
}

#[test]
fn gamma_on_mat2_is_conjugation() {
    // Gamma(span X)(s (x) t) = s X^-1 (x) X t, Gamma'(span X)(s (x) t) = s X (x) X^-1 t
    let d = descent("mat2(2)");
    let e = d.extension();
    let s = e.top();
    let model = d.coring().sweedler().unwrap();
    let c = model.tensor();
    let x = vec![1, 1, 0, 1];
    let xinv = s.inverse(&x).unwrap();
    let i = sub(e, &[&x]);
    let g = gamma(d.coring(), &i).unwrap();
    let g2 = gamma_prime(d.coring(), &i).unwrap();
    for a in 0..4 {
        for b in 0..4 {
            let (ea, eb) = (unit_vector(4, a), unit_vector(4, b));
            let v = c.pure(&ea, &eb);
            assert_eq!(g.matrix().apply(&v), c.pure(&s.mul(&ea, &xinv), &s.mul(&x, &eb)));
            assert_eq!(g2.matrix().apply(&v), c.pure(&s.mul(&ea, &x), &s.mul(&xinv, &eb)));
        }
    }
}

#[test]
fn j_of_identity_is_the_base() {
    for name in SHIPPED {
        let d = descent(name);
        let id = d.coring().identity_morphism();
        let j = j_of(d.coring(), &id, Side::Left).unwrap();
        assert!(SubBimodule::base_image(d.extension()).subspace().is_subspace_of(j.subspace()));
    }
    let d = descent("split2(2)");
    let j = j_of(d.coring(), &d.coring().identity_morphism(), Side::Left).unwrap();
    assert_eq!(j, SubBimodule::base_image(d.extension()));
}

#[test]
fn gamma_is_a_monoid_isomorphism() {
    for (name, n) in [("split2(3)", 2), ("dual-numbers(2)", 2), ("mat2(2)", 6), ("id-ext(2)", 1)] {
        let d = descent(name);
        let w = d.gamma_witness();
        assert_eq!(w.domain.len(), n, "{name}");
        assert_eq!(w.targets.len(), n, "{name}");
        assert!(w.is_isomorphism(), "{name}: {:?}", w.counterexamples);
    }
    let w = descent("diag-mat2(2)").gamma_witness();
    assert!(w.domain.len() >= 2);
    assert!(w.is_isomorphism());
}

#[test]
fn mat2_endomorphisms_form_s3() {
    let d = descent("mat2(2)");
    let s3 = MonoidTable::symmetric_group(3);
    assert!(d.endos().table.is_isomorphic_to(&s3));
    let w = d.gamma_witness();
    let il = d.lattice().table.restrict(&w.domain).unwrap();
    assert!(il.is_isomorphic_to(&s3));
}

#[test]
fn gamma_prime_reverses_products() {
    for name in ["mat2(2)", "split2(3)", "dual-numbers(2)", "diag-mat2(2)"] {
        let w = descent(name).gamma_prime_witness();
        assert!(w.is_isomorphism(), "{name}: {:?}", w.counterexamples);
    }
}

#[test]
fn invertible_groups() {
    let d = descent("dual-numbers(2)");
    let inv = d.inv_group();
    assert_eq!(inv.members.len(), 2);
    assert!(inv.members.contains(&d.lattice().index_of(&sub(d.extension(), &[&[1, 1]])).unwrap()));
    assert!(inv.table.is_isomorphic_to(&MonoidTable::cyclic_group(2)));

    let d = descent("diag-mat2(2)");
    let inv = d.inv_group();
    let off = sub(d.extension(), &[&[0, 1, 0, 0], &[0, 0, 1, 0]]);
    let expect = [d.lattice().identity(), d.lattice().index_of(&off).unwrap()];
    let mut got = inv.members.clone();
    got.sort_unstable();
    let mut expect = expect.to_vec();
    expect.sort_unstable();
    assert_eq!(got, expect);
    assert!(inv.witness.is_isomorphism());

    let d = descent("id-ext(3)");
    assert_eq!(d.inv_group().members.len(), 1);
}

#[test]
fn inv_maps_onto_automorphisms() {
    for name in SHIPPED {
        let inv = descent(name).inv_group();
        assert!(inv.witness.is_isomorphism(), "{name}: {:?}", inv.witness.counterexamples);
        assert!(inv.table.is_group());
    }
}

#[test]
fn prop31_conditions_agree() {
    for name in SHIPPED {
        let d = descent(name);
        for r in d.prop31().unwrap() {
            assert!(r.agree(), "{name}: {r:?}");
            assert!(r.counit_equals_m_l, "{name}: {r:?}");
            assert!(r.equalizer_equals_j, "{name}: {r:?}");
        }
    }
}

#[test]
fn prop31_identity_on_split2() {
    let d = descent("split2(2)");
    let r = d.prop31().unwrap();
    assert_eq!(r.len(), 1);
    assert_eq!(r[0].conditions(), [true; 4]);
}

#[test]
fn equalizer_of_twisted_regular_comodule_is_j() {
    let d = descent("mat2(2)");
    let y = Comodule::left_regular(d.extension());
    for g in &d.endos().elements {
        let t = twist_comodule(d.coring(), g, &y).unwrap();
        let j = j_of(d.coring(), g, Side::Left).unwrap();
        assert_eq!(&equalizer_rs(&t).subspace, j.subspace());
    }
}

#[test]
fn embedding_hypothesis_holds_on_builtins() {
    for name in ["split2(2)", "dual-numbers(2)", "diag-mat2(2)", "mat2(2)"] {
        let r = descent(name).embedding_report();
        assert!(r.pairs_checked > 0);
        assert!(r.holds(), "{name}");
    }
}

#[test]
fn mutation_is_detected() {
    let d = descent("split2(3)").with_mutation(Some(Mutation::FlipGammaEntry));
    let w = d.gamma_witness();
    assert!(!w.is_isomorphism());
    assert!(!w.counterexamples.is_empty());
}

fn comatrix(name: &str) -> ComatrixDescent {
    ComatrixDescent::new(&builtin(name).unwrap().comatrix.unwrap(), Budgets::default()).unwrap()
}

#[test]
fn comatrix_diagonal_suite() {
    let c = comatrix("comatrix-diag-mat2(2)");
    assert!(c.sigma().end().xi_is_bijective());
    assert_eq!(c.sigma().coring().dim(), 2);
    let aut = c.sigma_endos().automorphisms();
    assert_eq!(aut.len(), 2);
    let hat = c.hat_report();
    assert!(hat.injective && hat.multiplicative, "{:?}", hat.counterexamples);
    assert!(c.triangle().commutes());
    let w = c.gamma0_group_witness();
    assert!(w.is_isomorphism(), "{:?}", w.counterexamples);
    assert!(c.gamma0_witness().is_isomorphism());
    assert!(c.gamma0_prime_witness().is_isomorphism());
}

#[test]
fn comatrix_gamma0_on_the_off_diagonal() {
    let c = comatrix("comatrix-diag-mat2(2)");
    let e = c.descent().extension();
    let off = sub(e, &[&[0, 1, 0, 0], &[0, 0, 1, 0]]);
    let g = c.gamma0(&off, Side::Left).unwrap();
    assert!(!g.is_identity());
    assert_eq!(g.compose(&g), c.sigma().coring().identity_morphism());
    let b = SubBimodule::base_image(e);
    assert!(c.gamma0(&b, Side::Left).unwrap().is_identity());
    assert!(c.gamma0(&b, Side::Right).unwrap().is_identity());
    let h = c.hat(&g).unwrap();
    assert_eq!(h, gamma(c.descent().coring(), &off).unwrap());
}

#[test]
fn comatrix_full_matrix_suite() {
    let c = comatrix("comatrix-mat2(2)");
    assert_eq!(c.sigma().coring().dim(), 4);
    let t = c.triangle();
    assert_eq!(t.checked, 6);
    assert!(t.commutes(), "{:?}", t.violations);
    assert!(c.gamma0_witness().is_isomorphism());
    assert!(c.gamma0_prime_witness().is_isomorphism());
}
