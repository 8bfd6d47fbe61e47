//! Pencil invariants: ranks, singular points with Segre data, minimal
//! indices.

use slocc::linalg::DEFAULT_TOL;
use slocc::pencil::pencil_profile;
use slocc::state::MatrixPair;

fn main() -> slocc::Result<()> {
    let regular = MatrixPair::from_ints(
        &[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0]],
        &[[3, 1, 0, 0], [0, 3, 0, 0], [0, 0, 3, 0], [0, 0, 0, 1]],
    );
    let singular = MatrixPair::from_ints(
        &[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0]],
        &[[0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 1, 0, 0]],
    );
    for (name, pair) in [("regular", regular), ("singular", singular)] {
        let p = pencil_profile(&pair, DEFAULT_TOL)?;
        println!("{name}: generic rank {}, minimum rank {}", p.generic_rank, p.min_rank);
        for s in &p.points {
            println!("  point {} rank {} Segre {:?}", s.location, s.rank_at, s.segre);
        }
        if p.generic_rank < p.dim {
            println!("  column indices {:?}, row indices {:?}", p.column_indices, p.row_indices);
        }
    }
    Ok(())
}
