//! Periodic cycles of Henon-like maps: exact counts and a numerical census.

pub mod count;
pub mod enumerate;

pub use count::{count_cycles, cycle_table, divisors, mobius, points_recursive, CycleCount};
pub use enumerate::{enumerate_periodic, group_cycles, Enumeration, PeriodicPoint, DEDUP_RADIUS};
