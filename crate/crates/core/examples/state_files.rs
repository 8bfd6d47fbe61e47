//! State files, operator files and the cubic grid picture.

use slocc::io::{operator_to_json, parse_operator, parse_state, state_to_json};
use slocc::state::{grid_parse, grid_render, random_ilo, to_matrix_pair};

const STATE: &str = r#"{
  "dims": [2, 3, 3],
  "entries": [
    {"i": 1, "j": 1, "k": 1, "re": "1"},
    {"i": 1, "j": 2, "k": 2, "re": "1/3"},
    {"i": 2, "j": 2, "k": 3, "re": "2", "im": "-1/2"},
    {"i": 2, "j": 3, "k": 3, "re": "1"}
  ]
}"#;

fn main() -> slocc::Result<()> {
    let state = parse_state(STATE)?;
    let pair = to_matrix_pair(&state);
    let grid = grid_render(&pair);
    print!("{grid}");
    assert_eq!(grid_parse(&grid)?, pair);

    let text = state_to_json(&state);
    assert_eq!(parse_state(&text)?, state);
    println!("state file round-trips ({} bytes)", text.len());

    let op = random_ilo(3, 1);
    assert_eq!(parse_operator(&operator_to_json(&op))?, op);
    println!("operator file round-trips");
    Ok(())
}
