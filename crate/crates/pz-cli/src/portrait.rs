//! Global phase portrait on the projection disk.
//!
//! The plane maps onto the open unit disk by `(x, y) ↦ (x, y)/(1 + √(x²+y²))`,
//! so the equator points land on the boundary circle. Trajectories start from
//! a fixed 24-seed ring at disk radius 0.9 and run in both time directions;
//! the output is plain SVG 1.1 with fixed six-decimal coordinates, identical
//! bytes for identical inputs.

use std::fmt::Write as _;

use pz_core::equilibria::finite_equilibria;
use pz_core::infinity::{infinity_points, InfinityKind};
use pz_core::model::{eval_linear, LinearFamily};
use pz_core::numerics::{rk4, Trajectory};

const SEEDS: usize = 24;
const SEED_DISK_RADIUS: f64 = 0.9;
const T_END: f64 = 6.0;
const STEP: f64 = 1e-3;
/// Minimum on-disk distance between consecutive emitted polyline points.
const DECIMATION: f64 = 0.004;

fn disk(x: f64, y: f64) -> (f64, f64) {
    let r = (x * x + y * y).sqrt();
    (x / (1.0 + r), y / (1.0 + r))
}

fn svg_xy(x: f64, y: f64) -> (f64, f64) {
    let (px, py) = disk(x, y);
    (px, -py)
}

fn kind_color(kind: InfinityKind) -> &'static str {
    match kind {
        InfinityKind::Repulsor => "#d62728",
        InfinityKind::Attractor => "#1f77b4",
        InfinityKind::Saddle => "#2ca02c",
        InfinityKind::Degenerate => "#7f7f7f",
    }
}

fn stability_color(stability: pz_core::equilibria::Stability) -> &'static str {
    use pz_core::equilibria::Stability;
    match stability {
        Stability::Repulsor => "#d62728",
        Stability::Attractor => "#1f77b4",
        Stability::Saddle => "#2ca02c",
        Stability::Neutral => "#7f7f7f",
    }
}

/// The integrated seed orbits, in emission order.
pub fn seed_trajectories(fam: &LinearFamily) -> Vec<Trajectory<[f64; 2]>> {
    // Disk radius 0.9 corresponds to plane radius 0.9/(1-0.9).
    let plane_radius = SEED_DISK_RADIUS / (1.0 - SEED_DISK_RADIUS);
    let mut out = Vec::with_capacity(2 * SEEDS);
    for i in 0..SEEDS {
        let angle = 2.0 * std::f64::consts::PI * i as f64 / SEEDS as f64;
        let seed = [plane_radius * angle.cos(), plane_radius * angle.sin()];
        for time_sign in [1.0, -1.0] {
            out.push(rk4(
                |s: &[f64; 2]| {
                    let (xd, yd) = eval_linear(fam, s[0], s[1]);
                    [time_sign * xd, time_sign * yd]
                },
                seed,
                0.0,
                T_END,
                STEP,
            ));
        }
    }
    out
}

fn polyline_points(traj: &Trajectory<[f64; 2]>) -> String {
    let mut points = String::new();
    let mut last: Option<(f64, f64)> = None;
    let n = traj.states.len();
    for (idx, (_, s)) in traj.states.iter().enumerate() {
        let (px, py) = svg_xy(s[0], s[1]);
        let emit = match last {
            None => true,
            Some((lx, ly)) => {
                let d2 = (px - lx).powi(2) + (py - ly).powi(2);
                d2 >= DECIMATION * DECIMATION || idx + 1 == n
            }
        };
        if emit {
            if !points.is_empty() {
                points.push(' ');
            }
            let _ = write!(points, "{px:.6},{py:.6}");
            last = Some((px, py));
        }
    }
    points
}

/// Renders the portrait; the trajectories are returned alongside so the
/// caller can serialize them as CSV.
pub fn render(fam: &LinearFamily) -> (String, Vec<Trajectory<[f64; 2]>>) {
    let trajectories = seed_trajectories(fam);
    let mut svg = String::new();
    svg.push_str(concat!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" ",
        "viewBox=\"-1.1 -1.1 2.2 2.2\">\n"
    ));
    let _ = writeln!(
        svg,
        "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#000000\" stroke-width=\"0.01\"/>"
    );
    for traj in &trajectories {
        let points = polyline_points(traj);
        let _ = writeln!(
            svg,
            "<polyline fill=\"none\" stroke=\"#555555\" stroke-width=\"0.004\" points=\"{points}\"/>"
        );
    }
    if let Ok(reports) = finite_equilibria(fam) {
        for rep in &reports {
            let (cx, cy) = svg_xy(rep.location.0.to_f64(), rep.location.1.to_f64());
            let _ = writeln!(
                svg,
                "<circle cx=\"{cx:.6}\" cy=\"{cy:.6}\" r=\"0.02\" fill=\"{}\"/>",
                stability_color(rep.stability)
            );
        }
    }
    if let Ok(points) = infinity_points(fam) {
        for pt in &points {
            for (sign, kind) in [(1.0, pt.kind), (-1.0, pt.antipode_kind)] {
                let ex = sign * pt.equator_point[0];
                let ey = -sign * pt.equator_point[1];
                let color = kind_color(kind);
                // Radial tick through the boundary point.
                let _ = writeln!(
                    svg,
                    "<line x1=\"{:.6}\" y1=\"{:.6}\" x2=\"{:.6}\" y2=\"{:.6}\" stroke=\"{color}\" stroke-width=\"0.01\"/>",
                    0.96 * ex, 0.96 * ey, 1.04 * ex, 1.04 * ey
                );
                match kind {
                    InfinityKind::Saddle => {
                        // Diamond: rotated square around the boundary point.
                        let d = 0.025;
                        let _ = writeln!(
                            svg,
                            "<polygon points=\"{:.6},{:.6} {:.6},{:.6} {:.6},{:.6} {:.6},{:.6}\" fill=\"{color}\"/>",
                            ex + d, ey, ex, ey + d, ex - d, ey, ex, ey - d
                        );
                    }
                    InfinityKind::Degenerate => {
                        let d = 0.02;
                        let _ = writeln!(
                            svg,
                            "<rect x=\"{:.6}\" y=\"{:.6}\" width=\"{:.6}\" height=\"{:.6}\" fill=\"{color}\"/>",
                            ex - d, ey - d, 2.0 * d, 2.0 * d
                        );
                    }
                    _ => {
                        let _ = writeln!(
                            svg,
                            "<circle cx=\"{ex:.6}\" cy=\"{ey:.6}\" r=\"0.02\" fill=\"{color}\"/>"
                        );
                    }
                }
            }
        }
    }
    svg.push_str("</svg>\n");
    (svg, trajectories)
}

#[cfg(test)]
mod tests {
    use super::*;
    use pz_core::model::{reduce_to_linear, Params};

    fn f9(a: i64, b: i64, c: i64) -> LinearFamily {
        reduce_to_linear(&Params::from_ints(a, b, c, 1, 0))
            .unwrap()
            .remove(0)
    }

    #[test]
    fn renders_are_deterministic() {
        let fam = f9(1, 1, 1);
        let (svg1, _) = render(&fam);
        let (svg2, _) = render(&fam);
        assert_eq!(svg1, svg2);
    }

    #[test]
    fn boundary_glyph_counts_follow_the_trichotomy() {
        // Δ > 0: two boundary pairs; Δ = 0: one degenerate pair; Δ < 0: none.
        let count = |svg: &str| svg.matches("<line ").count();
        let (svg, _) = render(&f9(1, 1, 1));
        assert_eq!(count(&svg), 4);
        let (svg, _) = render(&f9(1, 1, 2));
        assert_eq!(count(&svg), 2);
        assert_eq!(svg.matches("<rect ").count(), 2);
        let (svg, _) = render(&f9(1, 1, 3));
        assert_eq!(count(&svg), 0);
    }

    #[test]
    fn viewbox_and_projection_stay_inside() {
        let (svg, trajectories) = render(&f9(1, 1, 3));
        assert!(svg.contains("viewBox=\"-1.1 -1.1 2.2 2.2\""));
        for traj in &trajectories {
            for (_, s) in &traj.states {
                let (px, py) = disk(s[0], s[1]);
                assert!(px * px + py * py < 1.0);
            }
        }
    }
}
