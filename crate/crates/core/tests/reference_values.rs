//! Values frozen from 25 to 40 digit mpmath evaluations (elliptic functions
//! via `ellipk`/`ellipe`/`ellipf`, double integrals via nested `quad`).

#![allow(clippy::excessive_precision)]

use hallint_core::device::{g_h0_4c, snr_3c};
use hallint_core::elliptic::{agm, complete_e, complete_k, incomplete_f, nome};
use hallint_core::integrals::{a_double, first_double_integral, i_direct, second_double_integral};
use hallint_core::{ModulusPair, ParamPair, Parameter};

const TOL: f64 = 1e-12;

const AGM_ONE_ROOT_HALF: f64 = 0.847_213_084_793_979_086_6;
const K_HALF: f64 = 1.854_074_677_301_371_918_4;
const E_HALF: f64 = 1.350_643_881_047_675_502_5;
const F_QUARTER_PI_HALF: f64 = 0.826_017_876_249_245_185_46;
const TWICE_CATALAN: f64 = 1.831_931_188_354_438_030_1;
const E_MINUS_PI: f64 = 0.043_213_918_263_772_249_774;

fn param(x: f64) -> Parameter {
    Parameter::new(x).unwrap()
}

#[test]
fn elliptic_constants() {
    assert!((agm(1.0, core::f64::consts::FRAC_1_SQRT_2).unwrap() - AGM_ONE_ROOT_HALF).abs() < 2e-16);
    assert!((complete_k(param(0.5)).unwrap() - K_HALF).abs() < 1e-15);
    assert!((complete_e(param(0.5)).unwrap() - E_HALF).abs() < 1e-15);
    let f = incomplete_f(core::f64::consts::FRAC_PI_4, param(0.5)).unwrap();
    assert!((f - F_QUARTER_PI_HALF).abs() < 1e-15);
    assert!((nome(param(0.5)).unwrap() - E_MINUS_PI).abs() < 1e-17);
}

#[test]
fn a_reference_points() {
    for (p, q, want) in [
        (0.3, 0.7, 4.368_810_792_722_321_513),
        (0.6, 0.8, 4.256_712_938_732_822_793),
        (0.8, 0.6, 4.256_712_938_732_822_793),
    ] {
        let got = a_double(ModulusPair::new(p, q).unwrap(), TOL).unwrap();
        assert!((got.value - want).abs() < 1e-11, "A({p}, {q}) = {got:?}");
    }
}

#[test]
fn i_reference_points() {
    // (alpha, beta, D1, D2)
    let cases = [
        (0.7, 0.2, 1.693_429_067_132_647_053, 0.751_662_725_784_989_326_9),
        (0.8, 0.3, 1.552_885_931_470_481_757, 0.611_119_590_122_824_030_5),
        (0.5, 0.3, 1.825_431_041_589_422_038, 1.280_206_249_305_319_786),
        (0.6, 0.2, 1.786_920_766_687_964_688, 0.946_712_327_586_749_087_3),
        (0.9, 0.1, 1.634_864_197_793_394_859, 0.353_760_194_846_044_269_1),
    ];
    for (a, b, d1, d2) in cases {
        let pair = ParamPair::new(a, b).unwrap();
        let got1 = first_double_integral(param(a), param(b), TOL).unwrap().value;
        let got2 = second_double_integral(pair, TOL).unwrap().value;
        let got = i_direct(pair, TOL).unwrap().value;
        assert!((got1 - d1).abs() < 1e-11, "D1({a}, {b}) = {got1}");
        assert!((got2 - d2).abs() < 1e-11, "D2({a}, {b}) = {got2}");
        assert!((got - (d1 - d2)).abs() < 1e-11, "I({a}, {b}) = {got}");
    }
}

#[test]
fn i_corner_value() {
    let got = i_direct(ParamPair::new(1.0, 0.0).unwrap(), TOL).unwrap();
    assert!((got.value - TWICE_CATALAN).abs() < 1e-11, "{got:?}");
}

#[test]
fn complementary_pair_shares_value() {
    let lhs = i_direct(ParamPair::new(0.7, 0.2).unwrap(), TOL).unwrap().value;
    let rhs = i_direct(ParamPair::new(0.8, 0.3).unwrap(), TOL).unwrap().value;
    assert!((lhs - 0.941_766_341_347_657_726_4).abs() < 1e-11);
    assert!((lhs - rhs).abs() < 1e-11);
    let s1 = snr_3c(ParamPair::new(0.7, 0.2).unwrap(), TOL).unwrap().value;
    let s2 = snr_3c(ParamPair::new(0.8, 0.3).unwrap(), TOL).unwrap().value;
    assert!((s1 - s2).abs() < 1e-11);
}

#[test]
fn four_contact_geometry_factor() {
    let got = g_h0_4c(0.3, 0.6, TOL).unwrap().value;
    assert!((got - 0.505_558_891_763_288_631_8).abs() < 1e-11);
}
