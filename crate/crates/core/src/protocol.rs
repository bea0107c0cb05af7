//! Sequential execution of one circuit layer through the single processing
//! qubit, and the decoherence each resonator accumulates during it.
//!
//! A gate between resonators `i` and `j` is `swap(i)`, `phase(j)`, `swap(i)`
//! with durations `T_s`, `2 T_s`, `T_s`. Information from `i` counts as held
//! in the qubit from the middle of the first swap to the middle of the second,
//! i.e. for `3 T_s`. The partner `j` and idle resonators are charged the
//! resonator rate throughout.
//!
//! Times are kept as integer ticks of `T_s / 2` so that residency bookkeeping
//! is exact.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{CoreError, Result};
use crate::params::swap_time;

/// Ticks per swap duration.
pub const TICKS_PER_SWAP: u64 = 2;
const GATE_TICKS: u64 = 4 * TICKS_PER_SWAP;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "snake_case"))]
pub enum GateKind {
    Swap,
    Phase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Segment {
    pub kind: GateKind,
    pub resonator: usize,
    pub start_ticks: u64,
    pub duration_ticks: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "snake_case"))]
pub enum Location {
    Resonator,
    Qubit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ResidencyInterval {
    pub location: Location,
    pub start_ticks: u64,
    pub end_ticks: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize),
    serde(rename_all = "snake_case", tag = "role")
)]
pub enum Role {
    /// Swapped into the qubit; `partner` receives the phase gate.
    Swapped {
        partner: usize,
    },
    Partner {
        swapped: usize,
    },
    Idle,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ScheduleTimeline {
    n_resonators: u32,
    swap_time: f64,
    pairs: Vec<(usize, usize)>,
    segments: Vec<Segment>,
    roles: Vec<Role>,
    residency: Vec<Vec<ResidencyInterval>>,
}

/// Lays out the gates for `pairs` back to back. In each pair `(i, j)`, `i`
/// is swapped into the qubit and `j` receives the phase gate.
pub fn build_step_schedule(n_resonators: u32, pairs: &[(usize, usize)], g: f64) -> Result<ScheduleTimeline> {
    let swap_time = swap_time(g)?;
    let n = n_resonators as usize;
    let mut roles = vec![Role::Idle; n];
    for &(i, j) in pairs {
        for idx in [i, j] {
            if idx >= n {
                return Err(CoreError::ResonatorOutOfRange {
                    index: idx,
                    n_resonators,
                });
            }
            if roles[idx] != Role::Idle {
                return Err(CoreError::OverlappingPairs { index: idx });
            }
        }
        if i == j {
            return Err(CoreError::OverlappingPairs { index: i });
        }
        roles[i] = Role::Swapped { partner: j };
        roles[j] = Role::Partner { swapped: i };
    }

    let total = GATE_TICKS * pairs.len() as u64;
    let mut segments = Vec::with_capacity(3 * pairs.len());
    let mut residency: Vec<Vec<ResidencyInterval>> = vec![Vec::new(); n];
    for (slot, &(i, j)) in pairs.iter().enumerate() {
        let t0 = GATE_TICKS * slot as u64;
        let s = TICKS_PER_SWAP;
        segments.push(Segment {
            kind: GateKind::Swap,
            resonator: i,
            start_ticks: t0,
            duration_ticks: s,
        });
        segments.push(Segment {
            kind: GateKind::Phase,
            resonator: j,
            start_ticks: t0 + s,
            duration_ticks: 2 * s,
        });
        segments.push(Segment {
            kind: GateKind::Swap,
            resonator: i,
            start_ticks: t0 + 3 * s,
            duration_ticks: s,
        });

        let enter = t0 + s / 2;
        let leave = t0 + 3 * s + s / 2;
        residency[i] = [
            (Location::Resonator, 0, enter),
            (Location::Qubit, enter, leave),
            (Location::Resonator, leave, total),
        ]
        .into_iter()
        .filter(|(_, a, b)| b > a)
        .map(|(location, start_ticks, end_ticks)| ResidencyInterval {
            location,
            start_ticks,
            end_ticks,
        })
        .collect();
    }
    for (idx, role) in roles.iter().enumerate() {
        if !matches!(role, Role::Swapped { .. }) && total > 0 {
            residency[idx] = vec![ResidencyInterval {
                location: Location::Resonator,
                start_ticks: 0,
                end_ticks: total,
            }];
        }
    }

    Ok(ScheduleTimeline {
        n_resonators,
        swap_time,
        pairs: pairs.to_vec(),
        segments,
        roles,
        residency,
    })
}

/// Pairs `(0, 1), (2, 3), ...`; an odd last resonator is left idle.
pub fn adjacent_pairing(n_resonators: u32) -> Vec<(usize, usize)> {
    (0..n_resonators as usize / 2).map(|k| (2 * k, 2 * k + 1)).collect()
}

impl ScheduleTimeline {
    pub fn n_resonators(&self) -> u32 {
        self.n_resonators
    }

    pub fn swap_time(&self) -> f64 {
        self.swap_time
    }

    pub fn tick(&self) -> f64 {
        self.swap_time / TICKS_PER_SWAP as f64
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn residency(&self, resonator: usize) -> &[ResidencyInterval] {
        &self.residency[resonator]
    }

    pub fn duration_ticks(&self) -> u64 {
        self.segments.last().map_or(0, |s| s.start_ticks + s.duration_ticks)
    }

    pub fn duration(&self) -> f64 {
        self.duration_ticks() as f64 * self.tick()
    }

    pub fn ticks_in(&self, resonator: usize, location: Location) -> u64 {
        self.residency[resonator]
            .iter()
            .filter(|r| r.location == location)
            .map(|r| r.end_ticks - r.start_ticks)
            .sum()
    }

    pub fn time_in(&self, resonator: usize, location: Location) -> f64 {
        self.ticks_in(resonator, location) as f64 * self.tick()
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DecoherenceTally {
    /// `Gamma_r * t_resonator + Gamma_q * t_qubit` for each resonator.
    pub per_resonator: Vec<f64>,
    /// Mean over the two members of each pair, in pair order.
    pub pair_averaged: Vec<f64>,
}

pub fn accumulate_decoherence(timeline: &ScheduleTimeline, gamma_q: f64, gamma_r: f64) -> DecoherenceTally {
    let per_resonator: Vec<f64> = (0..timeline.n_resonators as usize)
        .map(|k| gamma_r * timeline.time_in(k, Location::Resonator) + gamma_q * timeline.time_in(k, Location::Qubit))
        .collect();
    let pair_averaged = timeline
        .pairs
        .iter()
        .map(|&(i, j)| 0.5 * (per_resonator[i] + per_resonator[j]))
        .collect();
    DecoherenceTally {
        per_resonator,
        pair_averaged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error_model::{decoherence_error, DecoherenceForm};
    use crate::oracle::rel;
    use crate::params::{hz_to_angular, SystemParams};

    #[test]
    fn four_resonator_layer() {
        let g = 1.3e7;
        let t = build_step_schedule(4, &[(0, 1), (2, 3)], g).unwrap();
        let ts = swap_time(g).unwrap();
        assert_eq!(t.duration_ticks(), 16);
        assert!(rel(t.duration(), 8.0 * ts) < 1e-15);
        for k in [0, 2] {
            assert_eq!(t.ticks_in(k, Location::Qubit), 6);
            assert!(rel(t.time_in(k, Location::Qubit), 3.0 * ts) < 1e-15);
        }
        for k in [1, 3] {
            assert_eq!(t.ticks_in(k, Location::Qubit), 0);
            assert_eq!(t.ticks_in(k, Location::Resonator), 16);
        }
        let kinds: Vec<GateKind> = t.segments().iter().map(|s| s.kind).collect();
        assert_eq!(kinds, [GateKind::Swap, GateKind::Phase, GateKind::Swap].repeat(2));
    }

    #[test]
    fn two_resonators_and_empty() {
        let t = build_step_schedule(2, &[(0, 1)], 1.0).unwrap();
        assert!(rel(t.duration(), 4.0 * swap_time(1.0).unwrap()) < 1e-15);
        let e = build_step_schedule(6, &[], 1.0).unwrap();
        assert!(e.segments().is_empty());
        assert_eq!(e.duration(), 0.0);
    }

    #[test]
    fn rejects_bad_pairings() {
        assert_eq!(
            build_step_schedule(4, &[(0, 1), (1, 2)], 1.0),
            Err(CoreError::OverlappingPairs { index: 1 })
        );
        assert_eq!(
            build_step_schedule(4, &[(2, 2)], 1.0),
            Err(CoreError::OverlappingPairs { index: 2 })
        );
        assert!(matches!(
            build_step_schedule(4, &[(0, 4)], 1.0),
            Err(CoreError::ResonatorOutOfRange { index: 4, .. })
        ));
        assert!(build_step_schedule(4, &[(0, 1)], 0.0).is_err());
    }

    #[test]
    fn segments_do_not_overlap() {
        let t = build_step_schedule(9, &adjacent_pairing(9), 2.0).unwrap();
        for w in t.segments().windows(2) {
            assert_eq!(w[0].start_ticks + w[0].duration_ticks, w[1].start_ticks);
        }
        assert_eq!(t.roles()[8], Role::Idle);
    }

    #[test]
    fn residency_covers_timeline() {
        for n in 2..40u32 {
            let t = build_step_schedule(n, &adjacent_pairing(n), 1.0).unwrap();
            for k in 0..n as usize {
                assert_eq!(
                    t.ticks_in(k, Location::Resonator) + t.ticks_in(k, Location::Qubit),
                    t.duration_ticks()
                );
            }
        }
    }

    #[test]
    fn lossless_resonators_swapped_member() {
        let g = 5e6;
        let ts = swap_time(g).unwrap();
        let t = build_step_schedule(6, &adjacent_pairing(6), g).unwrap();
        let tally = accumulate_decoherence(&t, 2e4, 0.0);
        assert!(rel(tally.per_resonator[0], 3.0 * 2e4 * ts) < 1e-14);
        assert_eq!(tally.per_resonator[1], 0.0);
        assert!(rel(tally.pair_averaged[0], 1.5 * 2e4 * ts) < 1e-14);
    }

    #[test]
    fn uniform_rate_ignores_roles() {
        let g = 5e6;
        let n = 8;
        let t = build_step_schedule(n, &adjacent_pairing(n), g).unwrap();
        let tally = accumulate_decoherence(&t, 300.0, 300.0);
        let expect = 2.0 * f64::from(n) * 300.0 * swap_time(g).unwrap();
        for e in tally.per_resonator {
            assert!(rel(e, expect) < 1e-14);
        }
    }

    #[test]
    fn pair_average_matches_exact_decoherence_form() {
        let omega0 = hz_to_angular(4e9);
        for n in [2u32, 4, 10, 16, 50] {
            let p = SystemParams::new(omega0, 2e4, omega0 / 1e9, 1.0, n).unwrap();
            let g = 1.62e7;
            let t = build_step_schedule(n, &adjacent_pairing(n), g).unwrap();
            let tally = accumulate_decoherence(&t, p.gamma_q(), p.gamma_r());
            let exact = decoherence_error(&p, g, DecoherenceForm::Exact).unwrap();
            for avg in &tally.pair_averaged {
                assert!(rel(*avg, exact) < 1e-12, "N={n}: {avg} vs {exact}");
            }
        }
    }

    #[test]
    fn odd_register_leaves_one_idle() {
        let g = 2.0;
        let t = build_step_schedule(15, &adjacent_pairing(15), g).unwrap();
        assert_eq!(t.duration_ticks(), 7 * 8);
        let tally = accumulate_decoherence(&t, 0.0, 1.0);
        assert!(rel(tally.per_resonator[14], t.duration()) < 1e-15);
    }

    #[test]
    fn duration_linear_in_n() {
        let g = 1.0;
        let unit = build_step_schedule(2, &adjacent_pairing(2), g)
            .unwrap()
            .duration_ticks();
        for n in (2..100u32).step_by(2) {
            let d = build_step_schedule(n, &adjacent_pairing(n), g)
                .unwrap()
                .duration_ticks();
            assert_eq!(d, unit * u64::from(n) / 2);
        }
    }
}
