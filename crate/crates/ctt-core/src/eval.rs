//! Hard/soft constraint counting and incremental delta evaluation.
//!
//! Full recounts ([`count_hard_violations`], [`count_soft_violations`]) are
//! pure functions of `(Instance, Timetable)` and accept arbitrary, possibly
//! broken timetables. The incremental paths ([`PlacementTallies`] for the
//! construction walk, [`SwapState`] for the swap neighborhood) carry running
//! tallies per (room, period), (teacher, period), (curriculum, period),
//! (course, day) and (course, room); they are contractually exact against
//! the full recount.

use alloc::vec;
use alloc::vec::Vec;

use crate::model::{Event, Instance, Period, RoomPeriod, SwapMove, Timetable};

/// Number of hard constraint kinds; also the ceiling of the construction
/// walk heuristic.
pub const HARD_CONSTRAINT_KINDS: u32 = 5;

/// Per-kind hard violation counts. All zero means hard-feasible.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HardCounts {
    /// HC1: missing or excess weekly lectures, summed over courses.
    pub lectures: u32,
    /// HC2: same-teacher collisions beyond the first per (teacher, period).
    pub teacher: u32,
    /// HC3: same-curriculum collisions beyond the first per (curriculum, period).
    pub curriculum: u32,
    /// HC4: room double-bookings beyond the first per (room, period).
    pub room: u32,
    /// HC5: lectures placed at a period the course is unavailable.
    pub availability: u32,
}

impl HardCounts {
    pub fn total(&self) -> u32 {
        self.lectures + self.teacher + self.curriculum + self.room + self.availability
    }

    pub fn is_feasible(&self) -> bool {
        self.total() == 0
    }

    pub fn as_array(&self) -> [u32; 5] {
        [
            self.lectures,
            self.teacher,
            self.curriculum,
            self.room,
            self.availability,
        ]
    }
}

/// Per-kind soft violation counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SoftCounts {
    /// SC1: students left without a seat, summed over lectures.
    pub room_capacity: u32,
    /// SC2: working days short of each course's minimum.
    pub min_working_days: u32,
    /// SC3: curriculum lectures with no same-curriculum lecture in an
    /// adjacent slot of the same day.
    pub isolated_lectures: u32,
    /// SC4: distinct rooms beyond the first used by each course.
    pub room_stability: u32,
}

impl SoftCounts {
    pub fn as_array(&self) -> [u32; 4] {
        [
            self.room_capacity,
            self.min_working_days,
            self.isolated_lectures,
            self.room_stability,
        ]
    }

    pub fn quality(&self) -> u32 {
        quality(self)
    }
}

/// Weighted sum of soft violations: capacity x1, working days x5,
/// isolation x2, room stability x1. Lower is better.
pub fn quality(sc: &SoftCounts) -> u32 {
    sc.room_capacity + 5 * sc.min_working_days + 2 * sc.isolated_lectures + sc.room_stability
}

/// Full evaluation result.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ViolationReport {
    pub hard: HardCounts,
    pub soft: SoftCounts,
    pub quality: u32,
}

impl ViolationReport {
    pub fn is_feasible(&self) -> bool {
        self.hard.is_feasible()
    }
}

/// A timetable event that does not resolve against the instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum MalformedTimetable {
    #[error("event {index} references course {course}, but the instance has {len} courses")]
    CourseOutOfRange { index: usize, course: usize, len: usize },
    #[error("event {index} references room {room}, but the instance has {len} rooms")]
    RoomOutOfRange { index: usize, room: usize, len: usize },
    #[error("event {index} references period ({day}, {slot}) outside the instance grid")]
    PeriodOutOfRange { index: usize, day: u32, slot: u32 },
}

fn check_events(instance: &Instance, timetable: &Timetable) -> Result<(), MalformedTimetable> {
    for (index, e) in timetable.events().iter().enumerate() {
        if e.course >= instance.courses().len() {
            return Err(MalformedTimetable::CourseOutOfRange {
                index,
                course: e.course,
                len: instance.courses().len(),
            });
        }
        if e.room >= instance.rooms().len() {
            return Err(MalformedTimetable::RoomOutOfRange {
                index,
                room: e.room,
                len: instance.rooms().len(),
            });
        }
        if !instance.contains_period(e.period) {
            return Err(MalformedTimetable::PeriodOutOfRange {
                index,
                day: e.period.day,
                slot: e.period.slot,
            });
        }
    }
    Ok(())
}

/// Counts all five hard constraint kinds.
pub fn count_hard_violations(
    instance: &Instance,
    timetable: &Timetable,
) -> Result<HardCounts, MalformedTimetable> {
    check_events(instance, timetable)?;

    let periods = instance.period_count();
    let mut teacher_period = vec![0u32; instance.teacher_count() * periods];
    let mut curriculum_period = vec![0u32; instance.curricula().len() * periods];
    let mut room_period = vec![0u32; instance.rooms().len() * periods];

    let mut counts = HardCounts::default();
    for e in timetable.events() {
        let p = instance.period_index(e.period);
        teacher_period[instance.teacher_of(e.course) * periods + p] += 1;
        for &q in instance.curricula_of(e.course) {
            curriculum_period[q * periods + p] += 1;
        }
        room_period[e.room * periods + p] += 1;
        if instance.is_unavailable(e.course, e.period) {
            counts.availability += 1;
        }
    }

    for (i, c) in instance.courses().iter().enumerate() {
        counts.lectures += c.lectures.abs_diff(timetable.scheduled_count(i));
    }
    counts.teacher = teacher_period.iter().map(|&k| k.saturating_sub(1)).sum();
    counts.curriculum = curriculum_period.iter().map(|&k| k.saturating_sub(1)).sum();
    counts.room = room_period.iter().map(|&k| k.saturating_sub(1)).sum();

    Ok(counts)
}

/// Counts all four soft constraint kinds.
pub fn count_soft_violations(
    instance: &Instance,
    timetable: &Timetable,
) -> Result<SoftCounts, MalformedTimetable> {
    check_events(instance, timetable)?;

    let days = instance.days() as usize;
    let ppd = instance.periods_per_day() as usize;
    let n_courses = instance.courses().len();
    let mut course_day = vec![0u32; n_courses * days];
    let mut course_room = vec![0u32; n_courses * instance.rooms().len()];
    let mut curriculum_period = vec![0u32; instance.curricula().len() * instance.period_count()];

    let mut counts = SoftCounts::default();
    for e in timetable.events() {
        let students = instance.courses()[e.course].students;
        counts.room_capacity += students.saturating_sub(instance.rooms()[e.room].capacity);
        course_day[e.course * days + e.period.day as usize] += 1;
        course_room[e.course * instance.rooms().len() + e.room] += 1;
        let p = instance.period_index(e.period);
        for &q in instance.curricula_of(e.course) {
            curriculum_period[q * instance.period_count() + p] += 1;
        }
    }

    for (i, c) in instance.courses().iter().enumerate() {
        let distinct_days =
            course_day[i * days..(i + 1) * days].iter().filter(|&&k| k > 0).count() as u32;
        counts.min_working_days += c.min_working_days.saturating_sub(distinct_days);
        let rooms_used = course_room[i * instance.rooms().len()..(i + 1) * instance.rooms().len()]
            .iter()
            .filter(|&&k| k > 0)
            .count() as u32;
        counts.room_stability += rooms_used.saturating_sub(1);
    }

    // A lecture is isolated when no lecture of the same curriculum sits in
    // an adjacent slot of the same day. Adjacency never wraps across days.
    for q in 0..instance.curricula().len() {
        for d in 0..days {
            let base = q * instance.period_count() + d * ppd;
            let slots = &curriculum_period[base..base + ppd];
            for s in 0..ppd {
                if slots[s] == 0 {
                    continue;
                }
                let left = s > 0 && slots[s - 1] > 0;
                let right = s + 1 < ppd && slots[s + 1] > 0;
                if !left && !right {
                    counts.isolated_lectures += slots[s];
                }
            }
        }
    }

    Ok(counts)
}

/// Full report: hard counts, soft counts, weighted quality.
pub fn evaluate(
    instance: &Instance,
    timetable: &Timetable,
) -> Result<ViolationReport, MalformedTimetable> {
    let hard = count_hard_violations(instance, timetable)?;
    let soft = count_soft_violations(instance, timetable)?;
    Ok(ViolationReport { hard, soft, quality: quality(&soft) })
}

/// Running collision tallies for a partial timetable under construction.
///
/// `hard_delta` answers, in O(curricula-of-course), how many additional
/// HC2+HC3+HC4+HC5 violations appending a candidate event would cause.
/// Lecture counts (HC1) are excluded: the walk satisfies them by
/// construction.
#[derive(Clone)]
pub struct PlacementTallies<'a> {
    instance: &'a Instance,
    teacher_period: Vec<u32>,
    curriculum_period: Vec<u32>,
    room_period: Vec<u32>,
}

impl<'a> PlacementTallies<'a> {
    pub fn new(instance: &'a Instance) -> Self {
        let periods = instance.period_count();
        PlacementTallies {
            instance,
            teacher_period: vec![0; instance.teacher_count() * periods],
            curriculum_period: vec![0; instance.curricula().len() * periods],
            room_period: vec![0; instance.rooms().len() * periods],
        }
    }

    /// Tallies of an existing timetable. Panics on out-of-range events.
    pub fn from_timetable(instance: &'a Instance, timetable: &Timetable) -> Self {
        let mut t = PlacementTallies::new(instance);
        for &e in timetable.events() {
            t.place(e);
        }
        t
    }

    /// Additional hard violations (HC2..HC5) caused by appending `e`.
    pub fn hard_delta(&self, e: Event) -> u32 {
        let periods = self.instance.period_count();
        let p = self.instance.period_index(e.period);
        let mut delta = 0;
        if self.teacher_period[self.instance.teacher_of(e.course) * periods + p] > 0 {
            delta += 1;
        }
        for &q in self.instance.curricula_of(e.course) {
            if self.curriculum_period[q * periods + p] > 0 {
                delta += 1;
            }
        }
        if self.room_period[e.room * periods + p] > 0 {
            delta += 1;
        }
        if self.instance.is_unavailable(e.course, e.period) {
            delta += 1;
        }
        delta
    }

    pub fn place(&mut self, e: Event) {
        let periods = self.instance.period_count();
        let p = self.instance.period_index(e.period);
        self.teacher_period[self.instance.teacher_of(e.course) * periods + p] += 1;
        for &q in self.instance.curricula_of(e.course) {
            self.curriculum_period[q * periods + p] += 1;
        }
        self.room_period[e.room * periods + p] += 1;
    }
}

/// Increase in HC2+HC3+HC4+HC5 if `candidate` is appended to `partial`.
///
/// Exactly equals the full recount difference. Panics if `partial` or
/// `candidate` reference out-of-range indices.
pub fn incremental_hard_delta(instance: &Instance, partial: &Timetable, candidate: Event) -> u32 {
    PlacementTallies::from_timetable(instance, partial).hard_delta(candidate)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum SwapError {
    #[error(transparent)]
    Malformed(#[from] MalformedTimetable),
    #[error("swap state requires a hard-feasible timetable")]
    InfeasibleTimetable,
    #[error("swap cell ({room}, {day}, {slot}) is outside the instance grid")]
    CellOutOfRange { room: usize, day: u32, slot: u32 },
    #[error("both swap cells are empty")]
    BothCellsEmpty,
    #[error("swap would violate a hard constraint")]
    InfeasibleMove,
}

/// Per-kind soft-count change of a swap; weighted by [`SoftDelta::quality`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct SoftDelta {
    room_capacity: i64,
    min_working_days: i64,
    isolated_lectures: i64,
    room_stability: i64,
}

impl SoftDelta {
    fn quality(&self) -> i64 {
        self.room_capacity
            + 5 * self.min_working_days
            + 2 * self.isolated_lectures
            + self.room_stability
    }
}

/// A swap with cell occupants resolved; `dst_event` is `None` for a
/// relocation into an empty cell.
struct ResolvedSwap {
    src_event: usize,
    dst_event: Option<usize>,
    dst_cell: RoomPeriod,
}

/// Incremental evaluator over the swap neighborhood of a feasible timetable.
///
/// Holds the cell occupancy grid and per-dimension tallies so that
/// [`SwapState::quality_delta`] runs without materializing the swapped
/// timetable. Deltas temporarily adjust the curriculum tallies and revert
/// them, so the methods take `&mut self` while being logically read-only.
pub struct SwapState<'a> {
    instance: &'a Instance,
    timetable: Timetable,
    /// Cell -> event index occupying it.
    grid: Vec<Option<usize>>,
    teacher_period: Vec<u32>,
    curriculum_period: Vec<u32>,
    course_day: Vec<u32>,
    course_room: Vec<u32>,
    course_distinct_days: Vec<u32>,
    course_distinct_rooms: Vec<u32>,
    soft: SoftCounts,
    quality: u32,
}

impl<'a> SwapState<'a> {
    /// Builds the tallies for a hard-feasible timetable.
    pub fn new(instance: &'a Instance, timetable: &Timetable) -> Result<Self, SwapError> {
        let hard = count_hard_violations(instance, timetable)?;
        if !hard.is_feasible() {
            return Err(SwapError::InfeasibleTimetable);
        }
        let soft = count_soft_violations(instance, timetable)?;

        let periods = instance.period_count();
        let days = instance.days() as usize;
        let n_rooms = instance.rooms().len();
        let n_courses = instance.courses().len();

        let mut grid = vec![None; instance.room_period_count()];
        let mut teacher_period = vec![0u32; instance.teacher_count() * periods];
        let mut curriculum_period = vec![0u32; instance.curricula().len() * periods];
        let mut course_day = vec![0u32; n_courses * days];
        let mut course_room = vec![0u32; n_courses * n_rooms];

        for (i, &e) in timetable.events().iter().enumerate() {
            let cell = instance.room_period_index(RoomPeriod { room: e.room, period: e.period });
            debug_assert!(grid[cell].is_none(), "feasible timetable double-books a cell");
            grid[cell] = Some(i);
            let p = instance.period_index(e.period);
            teacher_period[instance.teacher_of(e.course) * periods + p] += 1;
            for &q in instance.curricula_of(e.course) {
                curriculum_period[q * periods + p] += 1;
            }
            course_day[e.course * days + e.period.day as usize] += 1;
            course_room[e.course * n_rooms + e.room] += 1;
        }

        let course_distinct_days = (0..n_courses)
            .map(|c| course_day[c * days..(c + 1) * days].iter().filter(|&&k| k > 0).count() as u32)
            .collect();
        let course_distinct_rooms = (0..n_courses)
            .map(|c| {
                course_room[c * n_rooms..(c + 1) * n_rooms].iter().filter(|&&k| k > 0).count()
                    as u32
            })
            .collect();

        Ok(SwapState {
            instance,
            timetable: timetable.clone(),
            grid,
            teacher_period,
            curriculum_period,
            course_day,
            course_room,
            course_distinct_days,
            course_distinct_rooms,
            quality: quality(&soft),
            soft,
        })
    }

    pub fn instance(&self) -> &'a Instance {
        self.instance
    }

    pub fn timetable(&self) -> &Timetable {
        &self.timetable
    }

    pub fn quality(&self) -> u32 {
        self.quality
    }

    pub fn soft_counts(&self) -> SoftCounts {
        self.soft
    }

    /// Event index currently occupying `cell`, if any.
    pub fn occupant(&self, cell: RoomPeriod) -> Option<usize> {
        self.grid[self.instance.room_period_index(cell)]
    }

    fn check_cell(&self, cell: RoomPeriod) -> Result<(), SwapError> {
        if cell.room >= self.instance.rooms().len() || !self.instance.contains_period(cell.period)
        {
            return Err(SwapError::CellOutOfRange {
                room: cell.room,
                day: cell.period.day,
                slot: cell.period.slot,
            });
        }
        Ok(())
    }

    /// Normalizes a move so the source cell is occupied; `Ok(None)` means
    /// the exchange provably changes nothing (same cell, or two lectures of
    /// one course).
    fn resolve(&self, mv: SwapMove) -> Result<Option<ResolvedSwap>, SwapError> {
        self.check_cell(mv.a)?;
        self.check_cell(mv.b)?;
        if mv.a == mv.b {
            return Ok(None);
        }
        let occ_a = self.occupant(mv.a);
        let occ_b = self.occupant(mv.b);
        let (src_event, dst_event, dst_cell) = match (occ_a, occ_b) {
            (Some(ea), _) => (ea, occ_b, mv.b),
            (None, Some(eb)) => (eb, None, mv.a),
            (None, None) => return Err(SwapError::BothCellsEmpty),
        };
        if let Some(eb) = dst_event {
            if self.timetable.events()[src_event].course == self.timetable.events()[eb].course {
                return Ok(None);
            }
        }
        Ok(Some(ResolvedSwap { src_event, dst_event, dst_cell }))
    }

    /// True when placing `course` at `period` clashes with an event other
    /// than the ones being lifted out by the swap.
    fn placement_conflicts(
        &self,
        course: usize,
        period: Period,
        removed: &[(usize, Period)],
    ) -> bool {
        if self.instance.is_unavailable(course, period) {
            return true;
        }
        let periods = self.instance.period_count();
        let p = self.instance.period_index(period);

        let teacher = self.instance.teacher_of(course);
        let mut teacher_count = self.teacher_period[teacher * periods + p];
        for &(rc, rp) in removed {
            if rp == period && self.instance.teacher_of(rc) == teacher {
                teacher_count -= 1;
            }
        }
        if teacher_count > 0 {
            return true;
        }

        for &q in self.instance.curricula_of(course) {
            let mut count = self.curriculum_period[q * periods + p];
            for &(rc, rp) in removed {
                if rp == period && self.instance.curricula_of(rc).contains(&q) {
                    count -= 1;
                }
            }
            if count > 0 {
                return true;
            }
        }
        false
    }

    /// Isolation count of curriculum `q` on day `d` under the current
    /// curriculum-period tallies.
    fn isolation_on_day(&self, q: usize, d: u32) -> u32 {
        let ppd = self.instance.periods_per_day() as usize;
        let base = q * self.instance.period_count() + d as usize * ppd;
        let slots = &self.curriculum_period[base..base + ppd];
        let mut total = 0;
        for s in 0..ppd {
            if slots[s] == 0 {
                continue;
            }
            let left = s > 0 && slots[s - 1] > 0;
            let right = s + 1 < ppd && slots[s + 1] > 0;
            if !left && !right {
                total += slots[s];
            }
        }
        total
    }

    fn seat_excess(&self, course: usize, room: usize) -> i64 {
        self.instance.courses()[course]
            .students
            .saturating_sub(self.instance.rooms()[room].capacity) as i64
    }

    /// Change in the min-working-days penalty of `course` when one of its
    /// lectures moves from day `from` to day `to`.
    fn working_days_delta(&self, course: usize, from: u32, to: u32) -> i64 {
        if from == to {
            return 0;
        }
        let days = self.instance.days() as usize;
        let mwd = self.instance.courses()[course].min_working_days;
        let distinct = self.course_distinct_days[course];
        let lose = self.course_day[course * days + from as usize] == 1;
        let gain = self.course_day[course * days + to as usize] == 0;
        let after = distinct - lose as u32 + gain as u32;
        mwd.saturating_sub(after) as i64 - mwd.saturating_sub(distinct) as i64
    }

    /// Change in the room-stability penalty of `course` when one of its
    /// lectures moves from room `from` to room `to`.
    fn room_stability_delta(&self, course: usize, from: usize, to: usize) -> i64 {
        if from == to {
            return 0;
        }
        let n_rooms = self.instance.rooms().len();
        let distinct = self.course_distinct_rooms[course];
        let lose = self.course_room[course * n_rooms + from] == 1;
        let gain = self.course_room[course * n_rooms + to] == 0;
        let after = distinct - lose as u32 + gain as u32;
        after.saturating_sub(1) as i64 - distinct.saturating_sub(1) as i64
    }

    fn shift_curriculum(&mut self, course: usize, from: Period, to: Period, forward: bool) {
        let periods = self.instance.period_count();
        let (pf, pt) = if forward {
            (self.instance.period_index(from), self.instance.period_index(to))
        } else {
            (self.instance.period_index(to), self.instance.period_index(from))
        };
        for &q in self.instance.curricula_of(course) {
            self.curriculum_period[q * periods + pf] -= 1;
            self.curriculum_period[q * periods + pt] += 1;
        }
    }

    /// Per-kind deltas of a resolved swap; `Err(InfeasibleMove)` when the
    /// swap breaks a hard constraint. Leaves all tallies as found.
    fn component_deltas(&mut self, swap: &ResolvedSwap) -> Result<SoftDelta, SwapError> {
        let src = self.timetable.events()[swap.src_event];
        let mut delta = SoftDelta::default();

        match swap.dst_event {
            Some(dst_ev) => {
                let dst = self.timetable.events()[dst_ev];
                let (c1, c2) = (src.course, dst.course);
                let (p1, p2) = (src.period, dst.period);
                if p1 != p2 {
                    let removed = [(c1, p1), (c2, p2)];
                    if self.placement_conflicts(c2, p1, &removed)
                        || self.placement_conflicts(c1, p2, &removed)
                    {
                        return Err(SwapError::InfeasibleMove);
                    }
                }

                delta.room_capacity = self.seat_excess(c2, src.room)
                    + self.seat_excess(c1, dst.room)
                    - self.seat_excess(c1, src.room)
                    - self.seat_excess(c2, dst.room);
                delta.min_working_days = self.working_days_delta(c1, p1.day, p2.day)
                    + self.working_days_delta(c2, p2.day, p1.day);
                delta.room_stability = self.room_stability_delta(c1, src.room, dst.room)
                    + self.room_stability_delta(c2, dst.room, src.room);

                if p1 != p2 {
                    let mut pairs: Vec<(usize, u32)> = Vec::new();
                    for &c in &[c1, c2] {
                        for &q in self.instance.curricula_of(c) {
                            for &d in &[p1.day, p2.day] {
                                if !pairs.contains(&(q, d)) {
                                    pairs.push((q, d));
                                }
                            }
                        }
                    }
                    let before: i64 =
                        pairs.iter().map(|&(q, d)| self.isolation_on_day(q, d) as i64).sum();
                    self.shift_curriculum(c1, p1, p2, true);
                    self.shift_curriculum(c2, p2, p1, true);
                    let after: i64 =
                        pairs.iter().map(|&(q, d)| self.isolation_on_day(q, d) as i64).sum();
                    self.shift_curriculum(c1, p1, p2, false);
                    self.shift_curriculum(c2, p2, p1, false);
                    delta.isolated_lectures = after - before;
                }
            }
            None => {
                let c = src.course;
                let (p1, p2) = (src.period, swap.dst_cell.period);
                if p1 != p2 {
                    let removed = [(c, p1)];
                    if self.placement_conflicts(c, p2, &removed) {
                        return Err(SwapError::InfeasibleMove);
                    }
                }

                delta.room_capacity =
                    self.seat_excess(c, swap.dst_cell.room) - self.seat_excess(c, src.room);
                delta.min_working_days = self.working_days_delta(c, p1.day, p2.day);
                delta.room_stability = self.room_stability_delta(c, src.room, swap.dst_cell.room);

                if p1 != p2 {
                    let mut pairs: Vec<(usize, u32)> = Vec::new();
                    for &q in self.instance.curricula_of(c) {
                        for &d in &[p1.day, p2.day] {
                            if !pairs.contains(&(q, d)) {
                                pairs.push((q, d));
                            }
                        }
                    }
                    let before: i64 =
                        pairs.iter().map(|&(q, d)| self.isolation_on_day(q, d) as i64).sum();
                    self.shift_curriculum(c, p1, p2, true);
                    let after: i64 =
                        pairs.iter().map(|&(q, d)| self.isolation_on_day(q, d) as i64).sum();
                    self.shift_curriculum(c, p1, p2, false);
                    delta.isolated_lectures = after - before;
                }
            }
        }
        Ok(delta)
    }

    /// Quality change if `mv` were applied, without applying it.
    ///
    /// Exactly equals `quality(after) - quality(before)` by full recount.
    /// Moves that would break a hard constraint return
    /// [`SwapError::InfeasibleMove`] so callers can filter them.
    pub fn quality_delta(&mut self, mv: SwapMove) -> Result<i64, SwapError> {
        match self.resolve(mv)? {
            None => Ok(0),
            Some(swap) => Ok(self.component_deltas(&swap)?.quality()),
        }
    }

    /// Applies `mv`, updating the timetable and every tally; returns the
    /// quality delta.
    pub fn apply(&mut self, mv: SwapMove) -> Result<i64, SwapError> {
        let swap = match self.resolve(mv)? {
            None => return Ok(0),
            Some(s) => s,
        };
        let delta = self.component_deltas(&swap)?;
        let src = self.timetable.events()[swap.src_event];

        match swap.dst_event {
            Some(dst_ev) => {
                let dst = self.timetable.events()[dst_ev];
                let src_cell = RoomPeriod { room: src.room, period: src.period };
                let dst_cell = RoomPeriod { room: dst.room, period: dst.period };
                self.move_course_tallies(src.course, src_cell, dst_cell);
                self.move_course_tallies(dst.course, dst_cell, src_cell);
                self.timetable.swap_courses(swap.src_event, dst_ev);
            }
            None => {
                let src_cell = RoomPeriod { room: src.room, period: src.period };
                self.move_course_tallies(src.course, src_cell, swap.dst_cell);
                self.grid[self.instance.room_period_index(src_cell)] = None;
                self.grid[self.instance.room_period_index(swap.dst_cell)] = Some(swap.src_event);
                self.timetable.relocate(swap.src_event, swap.dst_cell);
            }
        }

        self.soft.room_capacity = (self.soft.room_capacity as i64 + delta.room_capacity) as u32;
        self.soft.min_working_days =
            (self.soft.min_working_days as i64 + delta.min_working_days) as u32;
        self.soft.isolated_lectures =
            (self.soft.isolated_lectures as i64 + delta.isolated_lectures) as u32;
        self.soft.room_stability = (self.soft.room_stability as i64 + delta.room_stability) as u32;
        let q = delta.quality();
        self.quality = (self.quality as i64 + q) as u32;
        Ok(q)
    }

    /// Moves one lecture of course `c` between cells in every tally.
    fn move_course_tallies(&mut self, c: usize, from: RoomPeriod, to: RoomPeriod) {
        let periods = self.instance.period_count();
        let days = self.instance.days() as usize;
        let n_rooms = self.instance.rooms().len();
        let pf = self.instance.period_index(from.period);
        let pt = self.instance.period_index(to.period);
        if pf != pt {
            let teacher = self.instance.teacher_of(c);
            self.teacher_period[teacher * periods + pf] -= 1;
            self.teacher_period[teacher * periods + pt] += 1;
            for &q in self.instance.curricula_of(c) {
                self.curriculum_period[q * periods + pf] -= 1;
                self.curriculum_period[q * periods + pt] += 1;
            }
        }
        if from.period.day != to.period.day {
            let fd = c * days + from.period.day as usize;
            let td = c * days + to.period.day as usize;
            self.course_day[fd] -= 1;
            if self.course_day[fd] == 0 {
                self.course_distinct_days[c] -= 1;
            }
            if self.course_day[td] == 0 {
                self.course_distinct_days[c] += 1;
            }
            self.course_day[td] += 1;
        }
        if from.room != to.room {
            let fr = c * n_rooms + from.room;
            let tr = c * n_rooms + to.room;
            self.course_room[fr] -= 1;
            if self.course_room[fr] == 0 {
                self.course_distinct_rooms[c] -= 1;
            }
            if self.course_room[tr] == 0 {
                self.course_distinct_rooms[c] += 1;
            }
            self.course_room[tr] += 1;
        }
    }
}

/// Quality change of applying `mv` to `timetable`, without materializing
/// the swapped timetable. See [`SwapState::quality_delta`].
pub fn swap_quality_delta(
    instance: &Instance,
    timetable: &Timetable,
    mv: SwapMove,
) -> Result<i64, SwapError> {
    SwapState::new(instance, timetable)?.quality_delta(mv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::*;

    #[test]
    fn empty_timetable_counts_missing_lectures() {
        // Total of 7 weekly lectures, nothing scheduled.
        let inst = instance(
            5,
            4,
            vec![course("a", "t1", 3, 1, 10), course("b", "t2", 4, 1, 10)],
            vec![room("r1", 20)],
            vec![],
            &[],
        );
        let hc = count_hard_violations(&inst, &Timetable::new(2)).unwrap();
        assert_eq!(hc.as_array(), [7, 0, 0, 0, 0]);
    }

    #[test]
    fn same_teacher_same_period_collides() {
        let inst = instance(
            1,
            2,
            vec![course("a", "t1", 1, 1, 10), course("b", "t1", 1, 1, 10)],
            vec![room("r1", 20), room("r2", 20)],
            vec![],
            &[],
        );
        let t = Timetable::from_events(2, vec![ev(0, 0, 0, 0), ev(1, 1, 0, 0)]);
        let hc = count_hard_violations(&inst, &t).unwrap();
        assert_eq!(hc.teacher, 1);
        assert_eq!(hc.as_array(), [0, 1, 0, 0, 0]);
    }

    #[test]
    fn collisions_count_beyond_the_first() {
        // Three same-teacher lectures in one period: 2 violations, not 3.
        let inst = instance(
            1,
            1,
            vec![
                course("a", "t1", 1, 1, 0),
                course("b", "t1", 1, 1, 0),
                course("c", "t1", 1, 1, 0),
            ],
            vec![room("r1", 9), room("r2", 9), room("r3", 9)],
            vec![],
            &[],
        );
        let t = Timetable::from_events(3, vec![ev(0, 0, 0, 0), ev(1, 1, 0, 0), ev(2, 2, 0, 0)]);
        let hc = count_hard_violations(&inst, &t).unwrap();
        assert_eq!(hc.teacher, 2);
    }

    #[test]
    fn complete_one_course_assignment_is_clean() {
        let inst = instance(
            1,
            1,
            vec![course("a", "t1", 1, 1, 10)],
            vec![room("r1", 20)],
            vec![curriculum("q", vec![0])],
            &[],
        );
        let t = Timetable::from_events(1, vec![ev(0, 0, 0, 0)]);
        let report = evaluate(&inst, &t).unwrap();
        assert_eq!(report.hard.as_array(), [0, 0, 0, 0, 0]);
        assert!(report.is_feasible());
    }

    #[test]
    fn unavailable_period_counts_hc5() {
        let inst = instance(
            1,
            2,
            vec![course("a", "t1", 1, 1, 10)],
            vec![room("r1", 20)],
            vec![],
            &[(0, Period { day: 0, slot: 1 })],
        );
        let t = Timetable::from_events(1, vec![ev(0, 0, 0, 1)]);
        assert_eq!(count_hard_violations(&inst, &t).unwrap().availability, 1);
    }

    #[test]
    fn seat_shortfall_counts_per_student() {
        // 30 students in a 25-seat room: 5 violations.
        let inst =
            instance(1, 1, vec![course("a", "t1", 1, 1, 30)], vec![room("r1", 25)], vec![], &[]);
        let t = Timetable::from_events(1, vec![ev(0, 0, 0, 0)]);
        assert_eq!(count_soft_violations(&inst, &t).unwrap().room_capacity, 5);
    }

    #[test]
    fn short_working_days_penalized_per_missing_day() {
        // min 3 working days, lectures on 2 distinct days.
        let inst = instance(
            5,
            2,
            vec![course("a", "t1", 3, 3, 10)],
            vec![room("r1", 20), room("r2", 20)],
            vec![],
            &[],
        );
        let t = Timetable::from_events(1, vec![ev(0, 0, 0, 0), ev(0, 0, 0, 1), ev(0, 0, 1, 0)]);
        assert_eq!(count_soft_violations(&inst, &t).unwrap().min_working_days, 1);
    }

    #[test]
    fn extra_rooms_penalized_beyond_first() {
        let inst = instance(
            2,
            2,
            vec![course("a", "t1", 2, 1, 10)],
            vec![room("r1", 20), room("r2", 20)],
            vec![],
            &[],
        );
        let t = Timetable::from_events(1, vec![ev(0, 0, 0, 0), ev(0, 1, 1, 0)]);
        assert_eq!(count_soft_violations(&inst, &t).unwrap().room_stability, 1);
    }

    #[test]
    fn isolated_lectures_counted_per_curriculum_day() {
        // Curriculum with lectures at slots 0 and 2 of one day: both isolated.
        // Adding slot 1 joins all three into a block with no isolation.
        let inst = instance(
            1,
            3,
            vec![
                course("a", "t1", 1, 1, 0),
                course("b", "t2", 1, 1, 0),
                course("c", "t3", 1, 1, 0),
            ],
            vec![room("r1", 9), room("r2", 9), room("r3", 9)],
            vec![curriculum("q", vec![0, 1, 2])],
            &[],
        );
        let gap = Timetable::from_events(3, vec![ev(0, 0, 0, 0), ev(1, 1, 0, 2)]);
        assert_eq!(count_soft_violations(&inst, &gap).unwrap().isolated_lectures, 2);
        let block =
            Timetable::from_events(3, vec![ev(0, 0, 0, 0), ev(1, 1, 0, 2), ev(2, 2, 0, 1)]);
        assert_eq!(count_soft_violations(&inst, &block).unwrap().isolated_lectures, 0);
    }

    #[test]
    fn quality_weights_fixed() {
        assert_eq!(quality(&SoftCounts::default()), 0);
        let sc = SoftCounts {
            room_capacity: 2,
            min_working_days: 1,
            isolated_lectures: 3,
            room_stability: 4,
        };
        assert_eq!(quality(&sc), 17);
        let sc = SoftCounts { isolated_lectures: 1, ..SoftCounts::default() };
        assert_eq!(quality(&sc), 2);
    }

    #[test]
    fn malformed_timetables_are_rejected() {
        let inst =
            instance(1, 1, vec![course("a", "t1", 1, 1, 0)], vec![room("r1", 9)], vec![], &[]);
        let bad_course = Timetable::from_events(2, vec![ev(1, 0, 0, 0)]);
        assert!(matches!(
            count_hard_violations(&inst, &bad_course),
            Err(MalformedTimetable::CourseOutOfRange { course: 1, .. })
        ));
        let bad_room = Timetable::from_events(1, vec![ev(0, 3, 0, 0)]);
        assert!(matches!(
            count_soft_violations(&inst, &bad_room),
            Err(MalformedTimetable::RoomOutOfRange { room: 3, .. })
        ));
        let bad_period = Timetable::from_events(1, vec![ev(0, 0, 4, 0)]);
        assert!(matches!(
            evaluate(&inst, &bad_period),
            Err(MalformedTimetable::PeriodOutOfRange { day: 4, .. })
        ));
    }

    #[test]
    fn evaluation_is_pure() {
        let (inst, t) = crowded_fixture();
        let a = evaluate(&inst, &t).unwrap();
        let b = evaluate(&inst, &t).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn hard_delta_on_empty_timetable_is_zero() {
        let (inst, _) = crowded_fixture();
        assert_eq!(incremental_hard_delta(&inst, &Timetable::new(4), ev(0, 0, 0, 0)), 0);
    }

    #[test]
    fn hard_delta_sees_room_collision() {
        let (inst, _) = crowded_fixture();
        let partial = Timetable::from_events(4, vec![ev(0, 0, 0, 0)]);
        // Same room and period, unrelated course: at least the HC4 clash.
        assert!(incremental_hard_delta(&inst, &partial, ev(3, 0, 0, 0)) >= 1);
    }

    #[test]
    fn hard_delta_matches_full_recount() {
        let (inst, t) = crowded_fixture();
        let base = count_hard_violations(&inst, &t).unwrap();
        for course in 0..4 {
            for room in 0..2 {
                for p in 0..inst.period_count() {
                    let e = Event { course, room, period: inst.period_at(p) };
                    let mut extended = t.clone();
                    extended.push(e);
                    let full = count_hard_violations(&inst, &extended).unwrap();
                    let expected = (full.teacher + full.curriculum + full.room + full.availability)
                        - (base.teacher + base.curriculum + base.room + base.availability);
                    assert_eq!(incremental_hard_delta(&inst, &t, e), expected);
                }
            }
        }
    }

    fn recompute_delta(inst: &Instance, t: &Timetable, mv: SwapMove) -> i64 {
        let after = crate::improve::apply_swap(t, mv);
        let before_q = evaluate(inst, t).unwrap().quality as i64;
        let after_q = evaluate(inst, &after).unwrap().quality as i64;
        after_q - before_q
    }

    #[test]
    fn swap_delta_identity_is_zero() {
        let (inst, t) = feasible_fixture();
        let cell = RoomPeriod { room: t.events()[0].room, period: t.events()[0].period };
        assert_eq!(swap_quality_delta(&inst, &t, SwapMove { a: cell, b: cell }).unwrap(), 0);
    }

    #[test]
    fn swap_delta_room_fix_recovers_capacity_violation() {
        // Course 0 (30 students) sits in the 25-seat room; moving it to the
        // empty 30-seat room at the same period removes exactly the SC1 part.
        let inst = instance(
            1,
            2,
            vec![course("a", "t1", 1, 1, 30)],
            vec![room("small", 25), room("big", 30)],
            vec![],
            &[],
        );
        let t = Timetable::from_events(1, vec![ev(0, 0, 0, 0)]);
        let mv = SwapMove {
            a: RoomPeriod { room: 0, period: Period { day: 0, slot: 0 } },
            b: RoomPeriod { room: 1, period: Period { day: 0, slot: 0 } },
        };
        assert_eq!(swap_quality_delta(&inst, &t, mv).unwrap(), -5);
    }

    #[test]
    fn swap_delta_flags_infeasible_moves() {
        // Moving course 0 next to its same-teacher sibling must be rejected.
        let inst = instance(
            1,
            2,
            vec![course("a", "t1", 1, 1, 0), course("b", "t1", 1, 1, 0)],
            vec![room("r1", 9), room("r2", 9)],
            vec![],
            &[],
        );
        let t = Timetable::from_events(2, vec![ev(0, 0, 0, 0), ev(1, 1, 0, 1)]);
        let mv = SwapMove {
            a: RoomPeriod { room: 0, period: Period { day: 0, slot: 0 } },
            b: RoomPeriod { room: 0, period: Period { day: 0, slot: 1 } },
        };
        assert_eq!(swap_quality_delta(&inst, &t, mv), Err(SwapError::InfeasibleMove));
    }

    #[test]
    fn swap_delta_rejects_empty_pair_and_bad_cells() {
        let (inst, t) = feasible_fixture();
        let empty = free_cell(&inst, &t);
        assert_eq!(
            swap_quality_delta(&inst, &t, SwapMove { a: empty, b: empty }),
            Ok(0),
            "same-cell queries are no-ops even on empty cells"
        );
        let far = RoomPeriod { room: 0, period: Period { day: 9, slot: 0 } };
        assert!(matches!(
            swap_quality_delta(&inst, &t, SwapMove { a: empty, b: far }),
            Err(SwapError::CellOutOfRange { .. })
        ));
    }

    #[test]
    fn swap_delta_matches_recompute_exhaustively() {
        let (inst, t) = feasible_fixture();
        let mut state = SwapState::new(&inst, &t).unwrap();
        let cells: Vec<RoomPeriod> =
            (0..inst.room_period_count()).map(|i| inst.room_period_at(i)).collect();
        let mut checked = 0;
        for &a in &cells {
            for &b in &cells {
                let mv = SwapMove { a, b };
                match state.quality_delta(mv) {
                    Ok(d) => {
                        if state.occupant(a).is_some() || state.occupant(b).is_some() {
                            assert_eq!(d, recompute_delta(&inst, &t, mv), "move {mv:?}");
                            checked += 1;
                        }
                    }
                    Err(SwapError::InfeasibleMove) => {
                        // The full recount must agree that the move breaks HC.
                        let after = crate::improve::apply_swap(&t, mv);
                        assert!(!count_hard_violations(&inst, &after).unwrap().is_feasible());
                    }
                    Err(SwapError::BothCellsEmpty) => {}
                    Err(e) => panic!("unexpected error {e:?}"),
                }
            }
        }
        assert!(checked > 50, "exercised only {checked} feasible swaps");
    }

    #[test]
    fn apply_tracks_full_recount() {
        let (inst, t) = feasible_fixture();
        let mut state = SwapState::new(&inst, &t).unwrap();
        // Apply whatever feasible moves come up and re-verify all tallies.
        let cells: Vec<RoomPeriod> =
            (0..inst.room_period_count()).map(|i| inst.room_period_at(i)).collect();
        let mut applied = 0;
        'outer: for &a in &cells {
            for &b in &cells {
                if a == b || (state.occupant(a).is_none() && state.occupant(b).is_none()) {
                    continue;
                }
                if state.apply(SwapMove { a, b }).is_ok() {
                    applied += 1;
                    let report = evaluate(&inst, state.timetable()).unwrap();
                    assert!(report.is_feasible());
                    assert_eq!(report.quality, state.quality());
                    assert_eq!(report.soft, state.soft_counts());
                    if applied >= 12 {
                        break 'outer;
                    }
                }
            }
        }
        assert!(applied >= 5, "too few applicable moves in fixture");
    }
}
