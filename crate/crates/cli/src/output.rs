//! CSV and summary writers. Floats use Rust's shortest round-trip
//! formatting, so identical inputs give byte-identical files.

use std::fmt::Write as _;

use fullerene_gate::simulation::Evolution;
use fullerene_gate::{GateRun, Mode, ResonancePair};

pub const TRAJECTORY_HEADER: &str = "t_s,re_c1,im_c1,re_c2,im_c2,re_c3,im_c3,re_c4,im_c4,theta_rad,concurrence,norm";

pub fn trajectory_csv(ev: &Evolution) -> String {
    let traj = &ev.trajectory;
    let mut s = String::with_capacity(traj.len() * 200);
    s.push_str(TRAJECTORY_HEADER);
    s.push('\n');
    for k in 0..traj.len() {
        let _ = write!(s, "{:e}", traj.times[k]);
        for c in traj.states[k].amps {
            let _ = write!(s, ",{:e},{:e}", c.re, c.im);
        }
        let _ = writeln!(s, ",{:e},{:e},{:e}", ev.phases.theta[k], ev.concurrence[k], traj.norms[k]);
    }
    s
}

/// `key = value` summary of a gate run.
pub fn summary(run: &GateRun) -> String {
    let r = &run.result;
    let c = &r.correction_phases;
    let mut s = String::new();
    header(&mut s, run.config.mode, &run.resonances);
    let lines = [
        ("tau_s", format!("{:e}", r.tau)),
        ("target_rad", format!("{:e}", r.target)),
        ("theta_at_tau_rad", format!("{:e}", r.theta_at_tau)),
        ("concurrence_at_tau", format!("{:e}", r.concurrence_at_tau)),
        ("eof_at_tau", format!("{:e}", r.eof_at_tau)),
        ("T2_s", format!("{:e}", run.config.t2)),
        ("ops_budget", r.ops_budget.to_string()),
        ("phi00_rad", format!("{:e}", r.acquired_phases[0])),
        ("phi01_rad", format!("{:e}", r.acquired_phases[1])),
        ("phi10_rad", format!("{:e}", r.acquired_phases[2])),
        ("phi11_rad", format!("{:e}", r.acquired_phases[3])),
        ("s1_0_rad", format!("{:e}", c.s1_0)),
        ("s1_1_rad", format!("{:e}", c.s1_1)),
        ("s2_0_rad", format!("{:e}", c.s2_0)),
        ("s2_1_rad", format!("{:e}", c.s2_1)),
    ];
    for (k, v) in lines {
        let _ = writeln!(s, "{k} = {v}");
    }
    s
}

/// Summary for a run whose phase never reached ±π.
pub fn no_crossing_summary(ev: &Evolution) -> String {
    let mut s = String::new();
    header(&mut s, ev.config.mode, &ev.resonances);
    let _ = writeln!(s, "status = no_crossing");
    let _ = writeln!(s, "t_max_s = {:e}", ev.config.t_max);
    let _ = writeln!(s, "theta_at_t_max_rad = {:e}", ev.phases.theta.last().copied().unwrap_or(0.0));
    s
}

fn header(s: &mut String, mode: Mode, res: &ResonancePair) {
    let _ = writeln!(s, "mode = {mode}");
    let _ = writeln!(s, "omega1_rad_s = {:e}", res.omega1);
    let _ = writeln!(s, "omega2_rad_s = {:e}", res.omega2);
}

pub fn profile_csv(points: &[(f64, f64)]) -> String {
    let mut s = String::from("x_m,Bg_T\n");
    for (x, b) in points {
        let _ = writeln!(s, "{x:e},{b:e}");
    }
    s
}
