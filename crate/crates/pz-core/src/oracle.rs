//! Brute-force classification oracle: integrates a ring of seeds around an
//! equilibrium in both time directions and classifies by radial growth.
//!
//! This is deliberately independent of the eigenvalue path - it sees only the
//! flow - and is what the spectrum classification is checked against.

use crate::equilibria::EquilibriumKind;
use crate::model::{eval_linear, LinearFamily};
use crate::numerics::rk4;

/// What the flow around the point looks like.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowClass {
    /// All seeds move outward in forward time and inward in backward time.
    Grows,
    /// All seeds move inward in forward time and outward in backward time.
    Shrinks,
    /// Seeds escape in both time directions.
    Mixed,
    /// Radii stay bounded in both directions.
    Bounded,
    /// Growth too weak to call within the integration window.
    Inconclusive,
}

impl FlowClass {
    /// The flow class an equilibrium kind predicts.
    pub fn expected_for(kind: EquilibriumKind) -> FlowClass {
        match kind {
            EquilibriumKind::UnstableNode | EquilibriumKind::UnstableFocus => FlowClass::Grows,
            EquilibriumKind::StableNode | EquilibriumKind::StableFocus => FlowClass::Shrinks,
            EquilibriumKind::Saddle => FlowClass::Mixed,
            EquilibriumKind::Center => FlowClass::Bounded,
            EquilibriumKind::DegenerateZeroEigen => FlowClass::Inconclusive,
        }
    }
}

const SEEDS: usize = 16;
const SEED_RADIUS: f64 = 1e-3;
const T_END: f64 = 5.0;
// Growth classification only needs a qualitatively right orbit; 1e-2 keeps
// λh well inside the stability region for the parameter box and makes the
// 200-triple sweeps cheap.
const STEP: f64 = 1e-2;
const GROW_FACTOR: f64 = 4.0;
const SHRINK_FACTOR: f64 = 0.25;

/// Classifies the flow of `fam` around `(cx, cy)` from 16 seeds on a
/// radius-`1e−3` circle, integrated over `t ∈ [0, 5]` forward and backward.
///
/// A truncated (overflow-capped) trajectory counts as growth in that
/// direction. All-grow forward + all-shrink backward is `Grows`; the reverse
/// is `Shrinks`; growth in both directions is `Mixed` (a saddle escapes both
/// ways); staying within the growth/shrink factors both ways is `Bounded`.
pub fn classify_by_flow(fam: &LinearFamily, center: (f64, f64)) -> FlowClass {
    let mut fwd_all_grow = true;
    let mut fwd_any_grow = false;
    let mut fwd_all_shrink = true;
    let mut bwd_all_grow = true;
    let mut bwd_any_grow = false;
    let mut bwd_all_shrink = true;
    let mut bounded = true;

    for i in 0..SEEDS {
        let angle = 2.0 * std::f64::consts::PI * i as f64 / SEEDS as f64;
        let seed = [
            center.0 + SEED_RADIUS * angle.cos(),
            center.1 + SEED_RADIUS * angle.sin(),
        ];
        for (all_grow, any_grow, all_shrink, time_sign) in [
            (
                &mut fwd_all_grow,
                &mut fwd_any_grow,
                &mut fwd_all_shrink,
                1.0,
            ),
            (
                &mut bwd_all_grow,
                &mut bwd_any_grow,
                &mut bwd_all_shrink,
                -1.0,
            ),
        ] {
            let traj = rk4(
                |s: &[f64; 2]| {
                    let (xd, yd) = eval_linear(fam, s[0], s[1]);
                    [time_sign * xd, time_sign * yd]
                },
                seed,
                0.0,
                T_END,
                STEP,
            );
            let radius = |s: &[f64; 2]| {
                let dx = s[0] - center.0;
                let dy = s[1] - center.1;
                (dx * dx + dy * dy).sqrt()
            };
            let end_ratio = if traj.truncated {
                f64::INFINITY
            } else {
                radius(&traj.last_state()) / SEED_RADIUS
            };
            let max_ratio = traj
                .states
                .iter()
                .map(|(_, s)| radius(s) / SEED_RADIUS)
                .fold(0.0, f64::max);
            if end_ratio >= GROW_FACTOR {
                *any_grow = true;
            } else {
                *all_grow = false;
            }
            if end_ratio > SHRINK_FACTOR {
                *all_shrink = false;
            }
            if max_ratio > GROW_FACTOR {
                bounded = false;
            }
        }
    }

    // All-based verdicts first; the any-based saddle signature only fires
    // when neither uniform verdict does (a seed lying close to an
    // eigendirection keeps its transverse component, and thus its growth,
    // arbitrarily small).
    if fwd_all_grow && bwd_all_shrink {
        FlowClass::Grows
    } else if fwd_all_shrink && bwd_all_grow {
        FlowClass::Shrinks
    } else if fwd_any_grow && bwd_any_grow {
        FlowClass::Mixed
    } else if bounded {
        FlowClass::Bounded
    } else {
        FlowClass::Inconclusive
    }
}
