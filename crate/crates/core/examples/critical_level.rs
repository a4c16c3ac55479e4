//! Which level an update phase rebuilds for a few counter vectors.

use dyncover::engine::levels::{find_critical_level, is_critical};

fn main() {
    let cases: [(&[usize], &[usize], f64); 4] = [
        (&[1], &[1], 0.5),
        (&[4, 4], &[1, 3], 0.5),
        (&[2, 4, 2], &[2, 0, 2], 0.5),
        (&[8, 2, 0, 5], &[0, 1, 0, 4], 0.25),
    ];
    for (p, d, eps) in cases {
        let crit: Vec<usize> = (0..p.len()).filter(|&l| is_critical(p, d, eps, l)).collect();
        match find_critical_level(p, d, eps) {
            Ok(l) => println!("P {p:?} D {d:?} eps {eps}: rebuild up to level {l} (critical: {crit:?})"),
            Err(e) => println!("P {p:?} D {d:?} eps {eps}: {e}"),
        }
    }
    println!("{}", find_critical_level(&[4], &[1], 0.5).unwrap_err());
}
