//! Acceptance suite: one test per release criterion, each printing an
//! explicit pass/fail line (run with `--nocapture` to see them all).

use nalgebra::DMatrix;
use satctrl::controllability::{
    gramian, gramian_quadrature, normalized_jacobian, rank_table, rank_verdict, KalmanMatrix,
};
use satctrl::dynamics::rhs;
use satctrl::linearize::{analytic_jacobian, build_model, default_fd_step, fd_jacobian};
use satctrl::model::{input_matrix, ControlVec, PhysicalParams, StateVec, ThrusterConfig};
use satctrl::numkit::{expm, simpson_matrix};
use satctrl::simulate::{integrate_linear, rk4_convergence_probe};
use satctrl::steering::{synthesize, SteeringProblem};
use std::process::Command;

fn report(criterion: u32, name: &str, ok: bool, detail: &str) {
    println!(
        "criterion {criterion} ({name}): {}{}",
        if ok { "PASS" } else { "FAIL" },
        if detail.is_empty() { String::new() } else { format!(" [{detail}]") }
    );
    assert!(ok, "criterion {criterion} ({name}) failed: {detail}");
}

#[test]
fn criterion_1_jacobian_reproduction() {
    let a = analytic_jacobian(&PhysicalParams::paper());
    let e21 = (a[(1, 0)] - 1.000002542612694).abs();
    let e65 = (a[(5, 4)] - (-1.27311747e-6)).abs();
    let ok = e21 < 1e-9 && e65 < 1e-12 && a[(1, 3)] == 2.0 && a[(3, 1)] == -2.0;
    report(
        1,
        "jacobian reproduction",
        ok,
        &format!("|dA21| = {e21:.2e}, |dA65| = {e65:.2e}, A24 = {}, A42 = {}", a[(1, 3)], a[(3, 1)]),
    );
}

#[test]
fn criterion_2_rank_table_reproduction() {
    let expected = vec![3, 4, 2, 4, 5, 6, 6];
    let paper = rank_table(&PhysicalParams::paper()).ranks();
    let unit = rank_table(&PhysicalParams::unit()).ranks();
    let physical = rank_table(&PhysicalParams::paper().with_physical_omega()).ranks();
    let ok = paper == expected && unit == expected && physical == expected;
    report(
        2,
        "rank table reproduction",
        ok,
        &format!("paper {paper:?}, unit {unit:?}, physical {physical:?}"),
    );
}

#[test]
fn criterion_3_printed_q_regression() {
    let a = normalized_jacobian();
    let q_of = |c: ThrusterConfig| KalmanMatrix::from_parts(&a, &input_matrix(c), c).q;

    let q_r = DMatrix::from_row_slice(
        6,
        6,
        &[
            0.0, 1.0, 0.0, -3.0, 0.0, 9.0, 1.0, 0.0, -3.0, 0.0, 9.0, 0.0, 0.0, 0.0, -2.0, 0.0,
            6.0, 0.0, 0.0, -2.0, 0.0, 6.0, 0.0, -18.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
            0.0, 0.0, 0.0, 0.0,
        ],
    );
    let q_theta = DMatrix::from_row_slice(
        6,
        6,
        &[
            0.0, 0.0, 2.0, 0.0, -6.0, 0.0, 0.0, 2.0, 0.0, -6.0, 0.0, 18.0, 0.0, 1.0, 0.0, -4.0,
            0.0, 12.0, 1.0, 0.0, -4.0, 0.0, 12.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
            0.0, 0.0, 0.0, 0.0,
        ],
    );
    let q_z = DMatrix::from_row_slice(
        6,
        6,
        &[
            0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
            0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0,
            0.0, 0.0,
        ],
    );
    let q_thetaz = DMatrix::from_row_slice(
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
    let ok = q_of(ThrusterConfig::R) == q_r
        && q_of(ThrusterConfig::Theta) == q_theta
        && q_of(ThrusterConfig::Z) == q_z
        && q_of(ThrusterConfig::ThetaZ) == q_thetaz;
    report(3, "printed-Q regression", ok, "entrywise exact for r, theta, z, theta-z");
}

#[test]
fn criterion_4_steering_experiment() {
    let x0 = StateVec::new(1.0, 2.0, 3.0, 4.0, 5.0, 6.0);
    let x1 = StateVec::new(6.0, 5.0, 4.0, 3.0, 2.0, 1.0);
    let tol = 1e-6 * (1.0 + x1.norm());
    let p = PhysicalParams::paper();
    let mut ok = true;
    let mut detail = String::new();
    for c in [ThrusterConfig::ThetaZ, ThrusterConfig::RThetaZ] {
        let prob = SteeringProblem { model: build_model(&p, c), x0, x1, t0: 0.0, t1: 10.0 };
        let sol = synthesize(&prob).unwrap();
        let traj =
            integrate_linear(&prob.model, |t| sol.control_at(t).unwrap(), x0, 0.0, 10.0, 4096)
                .unwrap();
        let err = (traj.final_state() - x1).norm();
        ok &= err < tol;
        detail.push_str(&format!("{c}: {err:.2e} (tol {tol:.2e}); "));
    }
    report(4, "steering experiment", ok, detail.trim_end_matches("; "));
}

#[test]
fn criterion_5_gramian_cross_validation() {
    let p = PhysicalParams::unit();
    let mut ok = true;
    let mut worst = (0.0f64, ThrusterConfig::R);
    for c in ThrusterConfig::ALL {
        let model = build_model(&p, c);
        let w1 = gramian(&model, 0.0, 10.0).unwrap().w;
        let w2 = gramian_quadrature(&model, 0.0, 10.0, 256).unwrap().w;
        let rel = (w1 - w2).norm() / w1.norm();
        if rel > worst.0 {
            worst = (rel, c);
        }
        ok &= rel < 1e-8;

        let (k_rank, _) = rank_verdict(&model);
        for t1 in [1.0, 10.0] {
            let g_rank = gramian(&model, 0.0, t1).unwrap().rank();
            ok &= g_rank == k_rank;
        }
    }
    report(
        5,
        "gramian cross-validation",
        ok,
        &format!("worst Van Loan vs Simpson-256 relative gap {:.4e} at config {}", worst.0, worst.1),
    );
}

#[test]
fn criterion_6_energy_identity() {
    let x0 = StateVec::new(1.0, 2.0, 3.0, 4.0, 5.0, 6.0);
    let x1 = StateVec::new(6.0, 5.0, 4.0, 3.0, 2.0, 1.0);
    let p = PhysicalParams::paper();
    let mut ok = true;
    let mut detail = String::new();
    for c in [ThrusterConfig::ThetaZ, ThrusterConfig::RThetaZ] {
        let prob = SteeringProblem { model: build_model(&p, c), x0, x1, t0: 0.0, t1: 10.0 };
        let sol = synthesize(&prob).unwrap();
        let quad = simpson_matrix(
            |t| DMatrix::from_element(1, 1, sol.control_at(t).unwrap().norm_squared()),
            0.0,
            10.0,
            512,
        )
        .unwrap()[(0, 0)];
        let rel = (quad - sol.energy).abs() / sol.energy;
        ok &= rel < 1e-6;
        detail.push_str(&format!("{c}: {rel:.2e}; "));
    }
    report(6, "energy identity", ok, detail.trim_end_matches("; "));
}

#[test]
fn criterion_7_oracle_equivalence() {
    use rand::{rngs::StdRng, Rng, SeedableRng};
    let mut ok = true;

    for p in [PhysicalParams::paper(), PhysicalParams::unit()] {
        let a = analytic_jacobian(&p);
        let fd = fd_jacobian(&p, default_fd_step(&p)).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                ok &= (fd[(i, j)] - a[(i, j)]).abs() / (1.0 + a[(i, j)].abs()) < 1e-6;
            }
        }
    }

    let p = PhysicalParams::paper();
    let mut rng = StdRng::seed_from_u64(42);
    for _ in 0..1000 {
        let mut x = StateVec::from_fn(|_, _| rng.gen_range(-500.0..500.0));
        // equatorial invariance without a z thruster
        x[4] = 0.0;
        x[5] = 0.0;
        let c = ThrusterConfig::RTheta;
        let u = ControlVec::from_fn(2, |_, _| rng.gen_range(-1.0..1.0));
        let f = rhs(&x, &u, c, &p).unwrap();
        ok &= f[4] == 0.0 && f[5] == 0.0;

        // control additivity, exact up to one rounding of the f + u sum
        let mut y = StateVec::from_fn(|_, _| rng.gen_range(-500.0..500.0));
        y[0] = y[0].max(-0.5 * p.sigma);
        let c = ThrusterConfig::RThetaZ;
        let u = ControlVec::from_fn(3, |_, _| rng.gen_range(-1.0..1.0));
        let forced = rhs(&y, &u, c, &p).unwrap();
        let free = rhs(&y, &c.zero_control(), c, &p).unwrap();
        let bu = input_matrix(c) * &u;
        for i in 0..6 {
            ok &= (forced[i] - free[i] - bu[i]).abs() <= 1e-12 * (1.0 + free[i].abs());
        }
    }
    report(7, "oracle equivalence", ok, "fd jacobian + 1000-state dynamics invariants");
}

#[test]
fn criterion_8_numerics_suite() {
    let mut ok = true;
    let mut detail = String::new();

    // matrix exponential identities
    ok &= expm(&DMatrix::zeros(5, 5)).unwrap() == DMatrix::identity(5, 5);
    let m = DMatrix::from_row_slice(3, 3, &[0.1, -1.5, 0.4, 2.0, 0.3, -0.8, 0.5, 1.2, -0.6]);
    let prod = expm(&m).unwrap() * expm(&(-&m)).unwrap();
    let inv_gap = (&prod - DMatrix::identity(3, 3)).norm();
    ok &= inv_gap < 1e-10;
    let h = 1e-5;
    let fd = (expm(&(&m * (1.0 + h))).unwrap() - expm(&(&m * (1.0 - h))).unwrap()) / (2.0 * h);
    let exact = &m * expm(&m).unwrap();
    let deriv_rel = (&fd - &exact).norm() / exact.norm();
    ok &= deriv_rel < 1e-6;
    detail.push_str(&format!("expm inverse gap {inv_gap:.1e}, derivative rel {deriv_rel:.1e}; "));

    // RK4 observed order on the steering replay
    let p = PhysicalParams::paper();
    let prob = SteeringProblem {
        model: build_model(&p, ThrusterConfig::ThetaZ),
        x0: StateVec::new(1.0, 2.0, 3.0, 4.0, 5.0, 6.0),
        x1: StateVec::new(6.0, 5.0, 4.0, 3.0, 2.0, 1.0),
        t0: 0.0,
        t1: 10.0,
    };
    let sol = synthesize(&prob).unwrap();
    let order = rk4_convergence_probe(
        |n| {
            integrate_linear(&prob.model, |t| sol.control_at(t).unwrap(), prob.x0, 0.0, 10.0, n)
                .map(|t| t.final_state())
        },
        &[128, 256, 512],
    )
    .unwrap();
    ok &= order >= 3.8;
    detail.push_str(&format!("RK4 order {order:.2}; "));

    // Simpson fourth-order convergence on a smooth integrand
    let exact_int = 1f64.sin();
    let simpson_err = |steps| {
        (simpson_matrix(|t: f64| DMatrix::from_element(1, 1, t.cos()), 0.0, 1.0, steps).unwrap()
            [(0, 0)]
            - exact_int)
            .abs()
    };
    let ratio1 = simpson_err(8) / simpson_err(16);
    let ratio2 = simpson_err(16) / simpson_err(32);
    ok &= ratio1 > 12.0 && ratio2 > 12.0;
    detail.push_str(&format!("Simpson halving ratios {ratio1:.1}, {ratio2:.1}"));

    report(8, "numerics suite", ok, &detail);
}

#[test]
fn criterion_9_failure_path_contract() {
    use satctrl::Error;
    let expected_ranks = [
        (ThrusterConfig::R, 3usize),
        (ThrusterConfig::Theta, 4),
        (ThrusterConfig::Z, 2),
        (ThrusterConfig::RTheta, 4),
        (ThrusterConfig::RZ, 5),
    ];
    let p = PhysicalParams::paper();
    let mut ok = true;
    let mut detail = String::new();

    for (c, want_rank) in expected_ranks {
        let prob = SteeringProblem {
            model: build_model(&p, c),
            x0: StateVec::new(1.0, 2.0, 3.0, 4.0, 5.0, 6.0),
            x1: StateVec::new(6.0, 5.0, 4.0, 3.0, 2.0, 1.0),
            t0: 0.0,
            t1: 10.0,
        };
        match synthesize(&prob) {
            Err(Error::Uncontrollable { config, rank }) => {
                ok &= config == c && rank == want_rank;
            }
            _ => ok = false,
        }

        let output = Command::new(env!("CARGO_BIN_EXE_satctrl"))
            .args(["steer", "--config", &c.to_string()])
            .output()
            .expect("run satctrl");
        let code = output.status.code();
        let stderr = String::from_utf8_lossy(&output.stderr);
        ok &= code == Some(2) && stderr.contains(&format!("rank {want_rank}"));
        detail.push_str(&format!("{c}: exit {code:?} rank {want_rank}; "));
    }
    report(9, "failure-path contract", ok, detail.trim_end_matches("; "));
}
