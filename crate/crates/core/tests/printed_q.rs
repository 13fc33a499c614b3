//! Regression fixtures: the Kalman matrices produced by the
//! integer-normalized Jacobian, entry for entry.

use nalgebra::DMatrix;
use satctrl::controllability::{normalized_jacobian, KalmanMatrix};
use satctrl::model::{input_matrix, ThrusterConfig};

fn kalman(c: ThrusterConfig) -> DMatrix<f64> {
    KalmanMatrix::from_parts(&normalized_jacobian(), &input_matrix(c), c).q
}

#[test]
fn radial_thruster_q() {
    let expected = DMatrix::from_row_slice(
        6,
        6,
        &[
            0.0, 1.0, 0.0, -3.0, 0.0, 9.0, //
            1.0, 0.0, -3.0, 0.0, 9.0, 0.0, //
            0.0, 0.0, -2.0, 0.0, 6.0, 0.0, //
            0.0, -2.0, 0.0, 6.0, 0.0, -18.0, //
            0.0, 0.0, 0.0, 0.0, 0.0, 0.0, //
            0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
        ],
    );
    assert_eq!(kalman(ThrusterConfig::R), expected);
}

#[test]
fn transverse_thruster_q() {
    let expected = DMatrix::from_row_slice(
        6,
        6,
        &[
            0.0, 0.0, 2.0, 0.0, -6.0, 0.0, //
            0.0, 2.0, 0.0, -6.0, 0.0, 18.0, //
            0.0, 1.0, 0.0, -4.0, 0.0, 12.0, //
            1.0, 0.0, -4.0, 0.0, 12.0, 0.0, //
            0.0, 0.0, 0.0, 0.0, 0.0, 0.0, //
            0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
        ],
    );
    assert_eq!(kalman(ThrusterConfig::Theta), expected);
}

#[test]
fn axial_thruster_q() {
    let expected = DMatrix::from_row_slice(
        6,
        6,
        &[
            0.0, 0.0, 0.0, 0.0, 0.0, 0.0, //
            0.0, 0.0, 0.0, 0.0, 0.0, 0.0, //
            0.0, 0.0, 0.0, 0.0, 0.0, 0.0, //
            0.0, 0.0, 0.0, 0.0, 0.0, 0.0, //
            0.0, 1.0, 0.0, 0.0, 0.0, 0.0, //
            1.0, 0.0, 0.0, 0.0, 0.0, 0.0,
        ],
    );
    assert_eq!(kalman(ThrusterConfig::Z), expected);
}

#[test]
fn transverse_axial_q() {
    let expected = DMatrix::from_row_slice(
        6,
        12,
        &[
            0.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, -6.0, 0.0, 0.0, 0.0, //
            0.0, 0.0, 2.0, 0.0, 0.0, 0.0, -6.0, 0.0, 0.0, 0.0, 18.0, 0.0, //
            0.0, 0.0, 1.0, 0.0, 0.0, 0.0, -4.0, 0.0, 0.0, 0.0, 12.0, 0.0, //
            1.0, 0.0, 0.0, 0.0, -4.0, 0.0, 0.0, 0.0, 12.0, 0.0, 0.0, 0.0, //
            0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, //
            0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
        ],
    );
    assert_eq!(kalman(ThrusterConfig::ThetaZ), expected);
}

#[test]
fn all_thrusters_q() {
    let expected = DMatrix::from_row_slice(
        6,
        18,
        &[
            0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 2.0, 0.0, -3.0, 0.0, 0.0, 0.0, -6.0, 0.0,
            9.0, 0.0, 0.0, //
            1.0, 0.0, 0.0, 0.0, 2.0, 0.0, -3.0, 0.0, 0.0, 0.0, -6.0, 0.0, 9.0, 0.0, 0.0,
            0.0, 18.0, 0.0, //
            0.0, 0.0, 0.0, 0.0, 1.0, 0.0, -2.0, 0.0, 0.0, 0.0, -4.0, 0.0, 6.0, 0.0, 0.0,
            0.0, 12.0, 0.0, //
            0.0, 1.0, 0.0, -2.0, 0.0, 0.0, 0.0, -4.0, 0.0, 6.0, 0.0, 0.0, 0.0, 12.0, 0.0,
            -18.0, 0.0, 0.0, //
            0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
            0.0, 0.0, 0.0, //
            0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
            0.0, 0.0, 0.0,
        ],
    );
    assert_eq!(kalman(ThrusterConfig::RThetaZ), expected);
}
