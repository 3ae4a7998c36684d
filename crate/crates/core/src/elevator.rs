//! Parametric elevator benchmark: an environment issuing requests and
//! tracking the cabin, and a system choosing how the cabin moves.

use std::fmt::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightScheme {
    /// Reward proportional to the distance of a served request.
    PerFloor,
    /// Flat reward `r` while the cabin is at a pending destination.
    Two { reward: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ElevatorParams {
    pub floors: u32,
    pub scheme: WeightScheme,
}

impl ElevatorParams {
    pub fn new(floors: u32, scheme: WeightScheme) -> Self {
        assert!(floors >= 2, "an elevator needs at least two floors");
        ElevatorParams { floors, scheme }
    }

    /// Two-weight scheme with the reward set to the largest distance,
    /// `floors - 1`. Smaller rewards stop being winnable as floors grow.
    pub fn two_adapted(floors: u32) -> Self {
        Self::new(floors, WeightScheme::Two { reward: adapted_reward(floors) })
    }

    pub fn spec(&self) -> String {
        elevator_spec(self.floors)
    }

    pub fn weights(&self) -> String {
        match self.scheme {
            WeightScheme::PerFloor => per_floor_weights(self.floors),
            WeightScheme::Two { reward } => two_weights(reward),
        }
    }
}

pub fn elevator_spec(floors: u32) -> String {
    let top = floors - 1;
    format!(
        "\
VARENV
  pending : boolean;
  src_floor : 0..{top};
  dest_floor : 0..{top};
  current_floor : 0..{top};
VAR
  move : {{UP, STOP, DOWN}};
DEFINE
  TOP := {top};
  THERE := current_floor = dest_floor;
ASSUMPTION
  # a new request starts at the cabin's floor
  G(!pending & next(pending) -> next(src_floor) = next(current_floor));
  # requests are latched while pending
  G(pending & next(pending) -> next(src_floor) = src_floor & next(dest_floor) = dest_floor);
  # requests are cleared at the destination, and only there
  G(pending & THERE -> !next(pending));
  G(pending & !THERE -> next(pending));
  # the cabin follows the move command
  G(move = UP & current_floor != TOP -> next(current_floor) = current_floor + 1);
  G(move = DOWN & current_floor != 0 -> next(current_floor) = current_floor - 1);
  G(move = STOP -> next(current_floor) = current_floor);
GUARANTEE
  G(!(current_floor = TOP & move = UP));
  G(!(current_floor = 0 & move = DOWN));
"
    )
}

/// `n - 1` distance rewards plus a penalty for every step away from the
/// destination: `n` entries defining the weights `-1..=n-1`.
pub fn per_floor_weights(floors: u32) -> String {
    let mut out = String::new();
    for k in 1..floors {
        writeln!(out, "WEIGHT {k} pending & abs(src_floor - dest_floor) = {k} & !next(pending);").unwrap();
    }
    writeln!(out, "WEIGHT -1 pending & !THERE;").unwrap();
    out
}

pub fn adapted_reward(floors: u32) -> i64 {
    floors as i64 - 1
}

pub fn two_weights(reward: i64) -> String {
    format!("WEIGHT {reward} pending & THERE;\nWEIGHT -1 pending & !THERE;\n")
}
