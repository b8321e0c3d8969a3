//! Core library for curriculum-based course timetabling.
//!
//! The crate is split along the solver pipeline:
//!
//! * [`model`] — problem instance, events and timetables
//! * [`eval`] — hard/soft constraint counting and incremental deltas
//! * [`graph`] — the course-to-room-period construction graph
//! * [`trail`] — pheromone matrix with min/max bounds
//! * [`select`] — probabilistic candidate selection
//! * [`construct`] — ant-colony construction of feasible timetables
//! * [`improve`] — greedy, trail-tie-broken swap improvement
//! * [`oracle`] — exhaustive enumeration for tiny instances
//!
//! The library is `no_std` (with `alloc`); wall-clock budgets, threads and
//! file formats live in the companion CLI crate, which drives the colonies
//! through their cycle-level API.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod construct;
pub mod eval;
pub mod graph;
pub mod improve;
pub mod model;
pub mod oracle;
pub mod params;
pub mod select;
pub mod stream;
pub mod trail;

pub use eval::{
    count_hard_violations, count_soft_violations, evaluate, quality, HardCounts, SoftCounts,
    ViolationReport,
};
pub use model::{Course, Curriculum, Event, Instance, Period, Room, RoomPeriod, Timetable};
pub use params::{AcoParams, CycleRecord, RewardVariant};
