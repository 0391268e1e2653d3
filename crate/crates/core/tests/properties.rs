//! Property tests for the library-wide invariants: scaling laws, parity,
//! sign structure, and linearity in the fluid constants.

use proptest::prelude::*;

use phonon_casimir::boundaries::{
    casimir_force_per_area, cosmic_string, parallel_plates_closed, parallel_plates_image_sum,
    single_plate, wedge,
};
use phonon_casimir::freefield::{
    correlation, correlation_sign, equal_time_correlation, SignClass, SpacetimeSeparation, Variant,
};
use phonon_casimir::parabola::{angle_map, conjugate_angle, path_difference};
use phonon_casimir::scattering::{
    thermal_ratio, zp_cross_section, MaterialOptics, ScatteringKinematics,
};
use phonon_casimir::squeezed::{squeezed_average, squeezed_extrema, SqueezeState};
use phonon_casimir::{FluidSpec, UnitSystem};

fn natural() -> FluidSpec {
    FluidSpec::natural()
}

#[test]
fn types_are_shareable_across_threads() {
    fn check<T: Send + Sync>() {}
    check::<FluidSpec>();
    check::<phonon_casimir::GeometryResult>();
    check::<SqueezeState>();
    check::<SpacetimeSeparation>();
    check::<MaterialOptics>();
    check::<ScatteringKinematics>();
    check::<phonon_casimir::parabola::MirrorConfig>();
    check::<phonon_casimir::numerics::FockSqueezedState>();
}

proptest! {
    #[test]
    fn fluctuation_scale_quartic(len in 1e-3f64..1e3, lambda in 1e-2f64..1e2) {
        let spec = natural();
        let direct = spec.fluctuation_scale(lambda * len).unwrap();
        let scaled = spec.fluctuation_scale(len).unwrap() / lambda.powi(4);
        prop_assert!((direct - scaled).abs() <= 1e-14 * direct.abs());
    }

    #[test]
    fn equal_time_anticorrelated(dx in 1e-3f64..1e3) {
        prop_assert!(equal_time_correlation(&natural(), dx).unwrap() < 0.0);
    }

    #[test]
    fn correlation_even_in_dt(dx in 0.1f64..10.0, dt in 0.001f64..10.0) {
        let spec = natural();
        let fwd = SpacetimeSeparation::new(dx, dt).unwrap();
        let bwd = SpacetimeSeparation::new(dx, -dt).unwrap();
        for variant in [Variant::Standard, Variant::AsPrinted] {
            match (correlation(&spec, &fwd, variant), correlation(&spec, &bwd, variant)) {
                (Ok(a), Ok(b)) => prop_assert_eq!(a.to_bits(), b.to_bits()),
                (Err(_), Err(_)) => {}
                _ => prop_assert!(false, "parity broken by the singular guard"),
            }
        }
    }

    #[test]
    fn sign_matches_sound_cone(dx in 0.01f64..10.0, dt in 0.01f64..10.0) {
        let spec = natural();
        let sep = SpacetimeSeparation::new(dx, dt).unwrap();
        let class = correlation_sign(&spec, &sep, Variant::Standard);
        if dx > dt * 1.000001 {
            prop_assert_eq!(class, SignClass::Anticorrelated);
        } else if dt > dx * 1.000001 {
            prop_assert_eq!(class, SignClass::Correlated);
        }
        if let Ok(v) = correlation(&spec, &sep, Variant::Standard) {
            match class {
                SignClass::Anticorrelated => prop_assert!(v < 0.0),
                SignClass::Correlated => prop_assert!(v > 0.0),
                SignClass::OnCone => {}
            }
        }
    }

    #[test]
    fn boundary_shifts_negative_everywhere(
        z in 1e-2f64..1e2,
        gap_factor in 1.01f64..1e3,
        alpha_frac in 0.02f64..0.999,
        theta_frac in 0.02f64..0.98,
        r in 1e-2f64..1e2,
    ) {
        let spec = natural();
        prop_assert!(single_plate(&spec, z).unwrap().value < 0.0);
        let a = z * gap_factor;
        prop_assert!(parallel_plates_closed(&spec, a, z).unwrap().value < 0.0);
        prop_assert!(parallel_plates_image_sum(&spec, a, z, 50).unwrap().value < 0.0);
        let alpha = alpha_frac * std::f64::consts::TAU;
        let theta = theta_frac * alpha;
        prop_assert!(wedge(&spec, alpha, r, theta).unwrap().value < 0.0);
        if alpha_frac < 0.99 {
            prop_assert!(cosmic_string(&spec, alpha, r).unwrap().value < 0.0);
        }
    }

    #[test]
    fn boundary_shifts_scale_quartically(
        z in 1e-2f64..1e2,
        x in 0.05f64..0.95,
        alpha_frac in 0.05f64..0.95,
        theta_frac in 0.05f64..0.95,
    ) {
        let spec = natural();
        let plate1 = single_plate(&spec, z).unwrap().value;
        let plate2 = single_plate(&spec, 2.0 * z).unwrap().value;
        prop_assert!((plate2 - plate1 / 16.0).abs() <= 1e-13 * plate1.abs());

        let a = 1.7;
        let p1 = parallel_plates_closed(&spec, a, x * a).unwrap().value;
        let p2 = parallel_plates_closed(&spec, 2.0 * a, 2.0 * x * a).unwrap().value;
        prop_assert!((p2 - p1 / 16.0).abs() <= 1e-13 * p1.abs());

        let alpha = alpha_frac * std::f64::consts::TAU;
        let theta = theta_frac * alpha;
        let w1 = wedge(&spec, alpha, 1.0, theta).unwrap().value;
        let w2 = wedge(&spec, alpha, 2.0, theta).unwrap().value;
        prop_assert!((w2 - w1 / 16.0).abs() <= 1e-13 * w1.abs());

        let s1 = cosmic_string(&spec, alpha, 1.0).unwrap().value;
        let s2 = cosmic_string(&spec, alpha, 2.0).unwrap().value;
        prop_assert!((s2 - s1 / 16.0).abs() <= 1e-13 * s1.abs());
    }

    #[test]
    fn boundary_shifts_linear_in_constants(
        hbar in 0.1f64..10.0,
        rho0 in 0.1f64..10.0,
        c_s in 0.1f64..10.0,
        z in 0.1f64..10.0,
    ) {
        let base = FluidSpec::new(1.0, 1.0, 1.0, UnitSystem::Si).unwrap();
        let scaled = FluidSpec::new(hbar, rho0, c_s, UnitSystem::Si).unwrap();
        let v0 = single_plate(&base, z).unwrap().value;
        let v1 = single_plate(&scaled, z).unwrap().value;
        let expect = v0 * hbar * rho0 / c_s;
        prop_assert!((v1 - expect).abs() <= 1e-13 * expect.abs());
        // the force goes the other way: proportional to cS
        let f0 = casimir_force_per_area(&base, z).unwrap();
        let f1 = casimir_force_per_area(&scaled, z).unwrap();
        prop_assert!((f1 - f0 * hbar * c_s).abs() <= 1e-13 * (f0 * hbar * c_s).abs());
    }

    #[test]
    fn squeezed_average_dominates(r in 0.0f64..2.0, delta in 0.0f64..6.2) {
        let spec = natural();
        let state = SqueezeState::new(&spec, r, delta, 1.0, 1.0, 1.0).unwrap();
        let (lo, hi) = squeezed_extrema(&spec, &state);
        let avg = squeezed_average(&spec, &state);
        prop_assert!(avg >= 0.0);
        prop_assert!(lo >= -0.5 * state.prefactor(&spec) - 1e-15);
        prop_assert!((avg - 0.5 * (lo + hi)).abs() <= 1e-14 * avg.abs().max(1e-300));
    }

    #[test]
    fn conjugate_rays_share_the_incidence(
        gamma_off in -0.3f64..0.3,
        alpha_frac in 0.05f64..0.95,
    ) {
        let gamma = std::f64::consts::FRAC_PI_2 + gamma_off;
        let theta0 = 1.6;
        let alpha = alpha_frac * theta0;
        match conjugate_angle(gamma, alpha, theta0) {
            Ok(beta) => {
                prop_assert!((angle_map(gamma, beta) - angle_map(gamma, alpha)).abs() < 1e-12);
                let p = path_difference(1.0, gamma, alpha, beta);
                prop_assert!(p.dl.is_finite());
            }
            // single-reflection region: permitted outcome off right angle
            Err(phonon_casimir::Error::NoConjugateRay { .. }) => {}
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn zp_cross_section_scales(
        omega in 0.5f64..2.0,
        theta in 0.1f64..3.1,
        volume in 0.1f64..10.0,
    ) {
        let spec = natural();
        let mat = MaterialOptics::new("m", 1.2, 0.7, 1.0).unwrap();
        let kin = ScatteringKinematics::new(omega, theta, volume, 1.0).unwrap();
        let v = zp_cross_section(&spec, &mat, &kin);
        prop_assert!(v > 0.0);
        let kin2 = ScatteringKinematics::new(2.0 * omega, theta, volume, 1.0).unwrap();
        let v2 = zp_cross_section(&spec, &mat, &kin2);
        prop_assert!((v2 / v - 32.0).abs() < 1e-12 * 32.0);
        let r1 = thermal_ratio(&spec, &mat, &kin).unwrap();
        let r2 = thermal_ratio(&spec, &mat, &kin2).unwrap();
        prop_assert!((r2 / r1 - 2.0).abs() < 1e-12 * 2.0);
    }
}
