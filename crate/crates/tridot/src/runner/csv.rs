//! Deterministic CSV output: `#`-prefixed metadata lines, a fixed column
//! header, then one row per sample with 12-significant-digit values.

use super::{format_value, RunError, Trajectory};
use crate::model::InitialState;
use std::fmt::Write as _;
use std::path::Path;

const COLUMNS: &str = "t,re_b0,im_b0,re_b1,im_b1,re_b2,im_b2,re_b3,im_b3,p0,p1,p2,p3,p_ghz,p_ghz_max";

fn initial_state_text(s: InitialState) -> String {
    match s {
        InitialState::Vacuum => "vacuum".into(),
        InitialState::Single => "single".into(),
        InitialState::Bi => "bi".into(),
        InitialState::Tri => "tri".into(),
        InitialState::Custom(a) => format!(
            "custom: {}, {}, {}, {}, {}, {}, {}, {}",
            a[0].re, a[0].im, a[1].re, a[1].im, a[2].re, a[2].im, a[3].re, a[3].im
        ),
    }
}

/// Renders a trajectory to CSV text. There are no timestamps or other
/// run-to-run variance anywhere: identical inputs give identical bytes.
pub fn render_csv(traj: &Trajectory) -> String {
    let p = &traj.meta.params;
    let mut out = String::new();
    out.push_str("# tridot trajectory\n");
    let _ = writeln!(out, "# version = {}", traj.meta.version);
    let _ = writeln!(out, "# solver = {}", traj.meta.solver.as_str());
    let _ = writeln!(out, "# integrator = {}", traj.meta.integrator_method);
    let _ = writeln!(out, "# eta = {}", p.eta());
    let _ = writeln!(out, "# omega_rabi = {}", p.omega_rabi());
    let _ = writeln!(out, "# delta = {}", p.delta());
    let _ = writeln!(out, "# phi = {}", p.phi());
    let _ = writeln!(out, "# tau = {}", p.tau());
    let _ = writeln!(out, "# t_start = {}", p.t_start());
    let _ = writeln!(out, "# t_end = {}", p.t_end());
    let _ = writeln!(out, "# t_step = {}", p.t_step());
    let _ = writeln!(out, "# initial_state = {}", initial_state_text(p.initial_state()));
    if let Some((param, value)) = traj.meta.sweep {
        let _ = writeln!(out, "# sweep_value = {} = {}", param.as_str(), value);
    }
    if let Some(dev) = traj.meta.max_oracle_deviation {
        let _ = writeln!(out, "# max_oracle_deviation = {dev:e}");
    }
    out.push_str(COLUMNS);
    if traj.meta.emit_scaled_time {
        out.push_str(",omega_t");
    }
    out.push('\n');

    for row in &traj.rows {
        let mut fields: Vec<String> = Vec::with_capacity(16);
        fields.push(format_value(row.t));
        for k in 0..4 {
            let a = row.state.amplitude(k);
            fields.push(format_value(a.re));
            fields.push(format_value(a.im));
        }
        for pk in row.populations {
            fields.push(format_value(pk));
        }
        fields.push(format_value(row.p_ghz));
        fields.push(format_value(row.p_ghz_max));
        if traj.meta.emit_scaled_time {
            fields.push(format_value(p.omega_rabi() * row.t));
        }
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

/// Writes one trajectory as CSV.
pub fn emit_csv(traj: &Trajectory, path: &Path) -> Result<(), RunError> {
    assert!(!traj.rows.is_empty(), "refusing to emit an empty trajectory");
    std::fs::write(path, render_csv(traj)).map_err(|source| RunError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::runner::{parse_config, run_simulation};

    fn small_run() -> Vec<Trajectory> {
        let cfg =
            parse_config("eta = 0.1\nomega_rabi = 0.05\nt_end = 2\nt_step = 1").unwrap();
        run_simulation(&cfg).unwrap()
    }

    #[test]
    fn header_and_metadata_shape() {
        let text = render_csv(&small_run()[0]);
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "# tridot trajectory");
        let header = text
            .lines()
            .find(|l| !l.starts_with('#'))
            .unwrap();
        assert_eq!(header, COLUMNS);
        let data_rows: Vec<&str> = text
            .lines()
            .skip_while(|l| l.starts_with('#'))
            .skip(1)
            .collect();
        assert_eq!(data_rows.len(), 3);
        assert_eq!(data_rows[0].split(',').count(), 15);
    }

    #[test]
    fn single_row_trajectory_keeps_the_contract() {
        let mut trajs = small_run();
        trajs[0].rows.truncate(1);
        let text = render_csv(&trajs[0]);
        let data_rows: Vec<&str> = text
            .lines()
            .skip_while(|l| l.starts_with('#'))
            .skip(1)
            .collect();
        assert_eq!(data_rows.len(), 1);
    }

    #[test]
    fn reread_probability_matches_to_printed_precision() {
        let traj = &small_run()[0];
        let text = render_csv(traj);
        let data_rows: Vec<&str> = text
            .lines()
            .skip_while(|l| l.starts_with('#'))
            .skip(1)
            .collect();
        for (row, line) in traj.rows.iter().zip(data_rows) {
            let fields: Vec<f64> = line.split(',').map(|f| f.parse().unwrap()).collect();
            assert!((fields[13] - row.p_ghz).abs() <= 1e-11 * row.p_ghz.max(1.0));
            assert!((fields[0] - row.t).abs() <= 1e-11 * row.t.max(1.0));
        }
    }

    #[test]
    fn scaled_time_column_is_appended_on_request() {
        let cfg = parse_config(
            "eta = 0.1\nomega_rabi = 0.05\nt_end = 2\nt_step = 1\nemit_scaled_time = true",
        )
        .unwrap();
        let trajs = run_simulation(&cfg).unwrap();
        let text = render_csv(&trajs[0]);
        let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
        assert!(header.ends_with(",omega_t"));
        let last = text.lines().last().unwrap();
        let fields: Vec<&str> = last.split(',').collect();
        assert_eq!(fields.len(), 16);
        let omega_t: f64 = fields[15].parse().unwrap();
        assert!((omega_t - 0.05 * 2.0).abs() < 1e-12);
    }
}
