//! Closed forms derived independently of the library, checked against evolved states.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use darwin_core::analysis::{
    catalogue_zurek, mutual_information, phi_grid, symmetry_sweep, symmetry_sweep_literal, EnvSpec, InputStateSpec,
    TraceOrder,
};
use darwin_core::attractor::{asymptotic_project, Parity, Regime, StructuredSpace};
use darwin_core::channels::{zurek_evolve, ZurekAssignment};
use darwin_core::qstate::partial_trace;
use darwin_core::C64;

fn descending(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Spectrum of `S (x) E_L` for the minimal-regime output with `k = 1`, `rho_E = |0_n><0_n|`.
///
/// Outside a two-dimensional block the state is `p1 2^-L` on `2^L - 1` levels and
/// zero on the rest. The block holds `p0` and `p1 2^-L` on its diagonal and a
/// coherence of squared modulus `p0 p1 2^(L - 2n)`; at `L = n` it is singular.
fn joint_spectrum(p0: f64, p1: f64, n: usize, l: usize) -> Vec<f64> {
    let d = p1 * 2f64.powi(-(l as i32));
    let c2 = p0 * p1 * 2f64.powi(l as i32 - 2 * n as i32);
    let mid = 0.5 * (p0 + d);
    let root = (0.25 * (p0 - d).powi(2) + c2).sqrt();
    let mut v = vec![d; (1usize << l) - 1];
    v.extend([mid + root, mid - root]);
    v.resize(2 << l, 0.0);
    descending(v)
}

#[test]
fn minimal_regime_joint_spectrum() {
    let (a, b) = (0.6f64, 0.8f64);
    for n in [4, 6] {
        let input = InputStateSpec::qubit(n, a, b, EnvSpec::Registry { y: 0 }).unwrap();
        let rho = input.density(n + 1).unwrap();
        let space = StructuredSpace::new(rho.layout(), Regime::MinStrong, FRAC_PI_2).unwrap();
        let out = asymptotic_project(&rho, &space, Parity::Even).unwrap();
        for l in 1..=n {
            let keep: Vec<usize> = (0..=l).collect();
            let got = descending(partial_trace(&out, &keep).unwrap().matrix().hermitian_eigenvalues().unwrap());
            let want = joint_spectrum(a * a, b * b, n, l);
            assert_eq!(got.len(), want.len(), "n {n} L {l}");
            for (g, w) in got.iter().zip(&want) {
                assert!((g - w).abs() < 1e-9, "n {n} L {l}: {got:?} vs {want:?}");
            }
        }
    }
}

#[test]
fn joint_spectrum_is_normalized() {
    for (n, l) in [(3, 1), (5, 5), (8, 4)] {
        let s: f64 = joint_spectrum(0.36, 0.64, n, l).iter().sum();
        assert!((s - 1.0).abs() < 1e-12);
    }
}

#[test]
fn catalogue_matches_evolution() {
    let (a, b) = (0.6, 0.8);
    for row in 1..=6 {
        for n in 3..=9 {
            let c = catalogue_zurek(row, n, a, b).unwrap();
            let rho = c.spec.density_default_cap().unwrap();
            let out = zurek_evolve(&rho, &ZurekAssignment::contiguous(rho.layout()).unwrap()).unwrap();
            for l in 1..=n {
                let mi = mutual_information(&out, l, &TraceOrder::RightToLeft).unwrap();
                let want = c.derived_entropies(l).unwrap();
                let err = (mi.h_s - want.h_s).abs().max((mi.h_e - want.h_e).abs()).max((mi.h_se - want.h_se).abs());
                assert!(err < 1e-9, "row {row} n {n} L {l}: {mi:?} vs {want:?}");
            }
        }
    }
}

#[test]
fn gap_is_unique_zero_on_grid() {
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    let g = symmetry_sweep(&phi_grid(99), h, h).unwrap();
    assert!(g.iter().all(|x| x.gap >= -1e-12));
    let zeros: Vec<usize> = g.iter().enumerate().filter(|(_, x)| x.gap.abs() < 1e-9).map(|(i, _)| i).collect();
    assert_eq!(zeros, vec![49]);
}

#[test]
fn literal_records_are_always_orthogonal() {
    let g = symmetry_sweep_literal(&phi_grid(99), C64::new(0.6, 0.0), C64::new(0.8, 0.0)).unwrap();
    assert!(g.iter().all(|x| x.gap.abs() < 1e-12));
}
