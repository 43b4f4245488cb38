//! SVG Gantt charts.

use std::fmt::Write;

use flowlag_core::model::{validate_schedule, Instance, MachineOrders, Schedule, Violation};

const CHART_WIDTH: f64 = 800.0;
const LEFT: f64 = 60.0;
const TOP: f64 = 20.0;
const BAND: f64 = 30.0;
const BAR: f64 = 20.0;
const PALETTE: [&str; 10] =
    ["#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"];

/// Renders a feasible schedule as an SVG document: one band per machine, one bar per operation labelled with its
/// job index. Machine orders are read off the start times. Infeasible schedules are refused with their violations.
///
/// Output is a pure function of the input; coordinates are printed with two decimals.
pub fn render_gantt(inst: &Instance, sched: &Schedule) -> Result<String, Vec<Violation>> {
    let m = inst.machines;
    if sched.jobs() != inst.jobs() || sched.start.iter().any(|row| row.len() != m) {
        let found = (sched.jobs(), sched.start.first().map_or(0, Vec::len));
        return Err(vec![Violation::Dimensions { expected: (inst.jobs(), m), found }]);
    }
    let orders = MachineOrders::from_start_times(sched, m);
    let violations = validate_schedule(inst, &orders, sched);
    if !violations.is_empty() {
        return Err(violations);
    }

    let horizon = sched.job_completions(inst).into_iter().max().unwrap_or(0).max(1);
    let scale = CHART_WIDTH / horizon as f64;
    let width = LEFT + CHART_WIDTH + 20.0;
    let height = TOP + BAND * m as f64 + 30.0;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.2}" height="{:.2}" viewBox="0 0 {:.2} {:.2}" font-family="monospace" font-size="11">"#,
        width, height, width, height
    );
    for machine in 0..m {
        let y = TOP + BAND * machine as f64;
        let _ = writeln!(
            out,
            r##"  <text x="4.00" y="{:.2}">M{}</text>"##,
            y + BAR * 0.75,
            machine
        );
        let _ = writeln!(out, r##"  <g class="machine" data-machine="{}">"##, machine);
        for &job in orders.machine(machine) {
            let start = sched.start[job][machine];
            let end = sched.completion(inst, job, machine);
            let x = LEFT + start as f64 * scale;
            let w = ((end - start) as f64 * scale).max(1.0);
            let _ = writeln!(
                out,
                r##"    <rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{}" stroke="#000" data-job="{}" data-machine="{}" data-start="{}" data-end="{}"/>"##,
                x,
                y,
                w,
                BAR,
                PALETTE[job % PALETTE.len()],
                job,
                machine,
                start,
                end
            );
            let _ = writeln!(
                out,
                r##"    <text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"##,
                x + w / 2.0,
                y + BAR * 0.75,
                job
            );
        }
        let _ = writeln!(out, "  </g>");
    }
    let axis_y = TOP + BAND * m as f64 + 5.0;
    let _ = writeln!(
        out,
        r##"  <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#000"/>"##,
        LEFT,
        axis_y,
        LEFT + CHART_WIDTH,
        axis_y
    );
    let _ = writeln!(out, r##"  <text x="{:.2}" y="{:.2}">0</text>"##, LEFT, axis_y + 15.0);
    let _ = writeln!(
        out,
        r##"  <text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"##,
        LEFT + CHART_WIDTH,
        axis_y + 15.0,
        horizon
    );
    out.push_str("</svg>\n");
    Ok(out)
}
