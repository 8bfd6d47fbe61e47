//! Normalizing decorated point configurations on the projective line.

use slocc::classify::moebius_normalize;
use slocc::linalg::GaussianRational as Q;
use slocc::moebius::{Mobius, ProjPoint};
use slocc::pencil::SingularPoint;

fn point(location: ProjPoint, segre: Vec<usize>) -> SingularPoint {
    let rank_at = 4 - segre.len();
    SingularPoint { location, rank_at, segre }
}

fn main() -> slocc::Result<()> {
    let config = vec![
        point(ProjPoint::int(2), vec![1]),
        point(ProjPoint::int(-1), vec![1]),
        point(ProjPoint::Infinity, vec![1]),
        point(ProjPoint::exact(Q::from_ratio(1, 2)), vec![1]),
    ];
    let norm = moebius_normalize(&config)?;
    println!("key {}  parameters {}", norm.key, norm.param_count);

    // Any fractional-linear image of the configuration has the same key.
    let m = Mobius::from_t(&slocc::linalg::ExactMatrix::from_ints(&[[1, 2], [3, -1]]));
    let moved: Vec<SingularPoint> = config.iter().map(|p| point(m.apply(&p.location), p.segre.clone())).collect();
    let again = moebius_normalize(&moved)?;
    println!("moved points {:?}", moved.iter().map(|p| p.location.to_string()).collect::<Vec<_>>());
    assert_eq!(again.key, norm.key);
    println!("same key after the map");
    Ok(())
}
