//! Class families for small N, as a Markdown atlas.

use std::collections::BTreeMap;

use slocc::enumerate::{enumerate_classes, family_table};
use slocc::io::atlas_to_markdown;
use slocc::linalg::DEFAULT_TOL;

fn main() -> slocc::Result<()> {
    for n in 2..=4 {
        let families = enumerate_classes(n, DEFAULT_TOL)?;
        let mut per_set: BTreeMap<String, usize> = BTreeMap::new();
        for f in &families {
            *per_set.entry(f.set_name()).or_default() += 1;
        }
        println!("N = {n}: {} families, admissible (n, l) {:?}", families.len(), family_table(n));
        println!("  per set: {per_set:?}");
        if n == 4 {
            print!("\n{}", atlas_to_markdown(&families));
        }
    }
    Ok(())
}
