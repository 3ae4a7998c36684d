#![allow(dead_code)]

use energy_games::elevator::{ElevatorParams, WeightScheme};
use energy_games::pipeline::{GameInput, Instance};
use energy_games::synthetic::GameText;

pub fn elevator(floors: u32, scheme: WeightScheme) -> GameInput {
    let p = ElevatorParams::new(floors, scheme);
    GameInput::parse(&p.spec(), &p.weights()).expect("generated elevator parses")
}

pub fn wpf(floors: u32) -> GameInput {
    elevator(floors, WeightScheme::PerFloor)
}

pub fn wtwo(floors: u32, reward: i64) -> GameInput {
    elevator(floors, WeightScheme::Two { reward })
}

pub fn from_text(t: &GameText) -> GameInput {
    GameInput::parse(&t.spec, &t.weights).expect("generated game parses")
}

pub fn game(spec: &str, weights: &str) -> Instance {
    GameInput::parse(spec, weights).unwrap().instantiate()
}
