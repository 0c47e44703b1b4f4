//! Small instances of each family, sized for repeated timing.

use algroot::bench::{generate, Family};
use algroot::extfield::AlgPoly;

/// `(label, instance)` pairs, one or two sizes per family.
pub fn desk_instances() -> Vec<(String, AlgPoly)> {
    let grid = [
        (Family::Random, 2, 10),
        (Family::Random, 3, 10),
        (Family::Laguerre, 2, 10),
        (Family::Laguerre, 3, 5),
        (Family::Wilkinson, 2, 5),
        (Family::Wilkinson, 3, 5),
        (Family::Mignotte, 3, 10),
        (Family::Mignotte, 5, 10),
    ];
    grid.iter()
        .map(|&(f, m, n)| {
            let b = generate(f, m, n, 10, 1).expect("valid family parameters");
            (format!("{}/m{m}n{n}", f.name()), b)
        })
        .collect()
}
