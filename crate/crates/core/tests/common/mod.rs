#![allow(dead_code)]

pub mod classical;

use macvv::tableaux::{Filling, Partition, PeriodicLabel, PeriodicTableau};

pub fn part(p: &[usize]) -> Partition {
    Partition::new(p.to_vec()).unwrap()
}

pub fn fill(rows: &[&[u32]]) -> Filling {
    Filling::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

/// Parses `"17q7"` style labels.
pub fn label(s: &str) -> PeriodicLabel {
    let (i, b) = s.split_once('q').unwrap();
    PeriodicLabel::new(i.parse().unwrap(), b.parse().unwrap())
}

pub fn periodic(rows: &[&[&str]]) -> PeriodicTableau {
    PeriodicTableau::from_rows(rows.iter().map(|r| r.iter().map(|s| label(s)).collect()).collect()).unwrap()
}

/// Nonempty partitions with at most `max` boxes.
pub fn small_shapes(max: u32) -> Vec<Partition> {
    (1..=max)
        .flat_map(classical::partitions)
        .map(|p| Partition::new(p.into_iter().map(|x| x as usize).collect()).unwrap())
        .collect()
}
