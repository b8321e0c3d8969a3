//! Domain types: problem instances, events and timetables.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

/// A course to be scheduled: a teacher gives `lectures` weekly lectures to
/// `students` students, spread over at least `min_working_days` days.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Course {
    pub id: String,
    pub teacher: String,
    pub lectures: u32,
    pub min_working_days: u32,
    pub students: u32,
}

/// A room with a seat capacity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Room {
    pub id: String,
    pub capacity: u32,
}

/// A timeslot, identified by day and within-day slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Period {
    pub day: u32,
    pub slot: u32,
}

/// A (room, period) cell; the construction graph's target vertices and the
/// coordinate space of swap moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RoomPeriod {
    pub room: usize,
    pub period: Period,
}

/// A named group of courses sharing students. Lectures of one curriculum
/// must not share a period and should run back-to-back within a day.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curriculum {
    pub id: String,
    /// Member courses, as indices into the owning instance's course list.
    pub courses: Vec<usize>,
}

/// One scheduled lecture: a course in a room at a period.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Event {
    pub course: usize,
    pub room: usize,
    pub period: Period,
}

/// A swap between the contents of two room-period cells.
///
/// Exchanging cell contents covers both neighborhood shapes: if both cells
/// hold a lecture the courses trade places; if one side is empty the
/// lecture relocates there. Applying the same move twice restores the
/// original timetable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SwapMove {
    pub a: RoomPeriod,
    pub b: RoomPeriod,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("instance needs at least one day")]
    ZeroDays,
    #[error("instance needs at least one period per day")]
    ZeroPeriodsPerDay,
    #[error("course {0} has zero weekly lectures")]
    ZeroLectures(String),
    #[error("course {0} has zero minimum working days")]
    ZeroMinWorkingDays(String),
    #[error("duplicate course id {0}")]
    DuplicateCourseId(String),
    #[error("duplicate room id {0}")]
    DuplicateRoomId(String),
    #[error("duplicate curriculum id {0}")]
    DuplicateCurriculumId(String),
    #[error("curriculum {curriculum} references course index {index} out of range")]
    CurriculumCourseOutOfRange { curriculum: String, index: usize },
    #[error("unavailability entry references course index {0} out of range")]
    UnavailabilityCourseOutOfRange(usize),
    #[error("unavailability entry for course {course} names period ({day}, {slot}) out of range")]
    UnavailabilityPeriodOutOfRange { course: String, day: u32, slot: u32 },
}

/// Immutable problem description. Built once, validated, then shared
/// read-only by every solver component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    name: String,
    days: u32,
    periods_per_day: u32,
    courses: Vec<Course>,
    rooms: Vec<Room>,
    curricula: Vec<Curriculum>,
    /// Dense availability bitmap, `courses x periods`.
    unavailable: Vec<bool>,
    /// Interned teacher index per course; equal tokens share an index.
    teacher_of: Vec<usize>,
    teacher_count: usize,
    /// Curricula containing each course.
    curricula_of: Vec<Vec<usize>>,
    total_lectures: u32,
}

impl Instance {
    pub fn new(
        name: impl Into<String>,
        days: u32,
        periods_per_day: u32,
        courses: Vec<Course>,
        rooms: Vec<Room>,
        mut curricula: Vec<Curriculum>,
        unavailability: &[(usize, Period)],
    ) -> Result<Self, ModelError> {
        if days == 0 {
            return Err(ModelError::ZeroDays);
        }
        if periods_per_day == 0 {
            return Err(ModelError::ZeroPeriodsPerDay);
        }

        let mut course_ids = BTreeMap::new();
        for (i, c) in courses.iter().enumerate() {
            if c.lectures == 0 {
                return Err(ModelError::ZeroLectures(c.id.clone()));
            }
            if c.min_working_days == 0 {
                return Err(ModelError::ZeroMinWorkingDays(c.id.clone()));
            }
            if course_ids.insert(c.id.clone(), i).is_some() {
                return Err(ModelError::DuplicateCourseId(c.id.clone()));
            }
        }
        let mut room_ids = BTreeMap::new();
        for (i, r) in rooms.iter().enumerate() {
            if room_ids.insert(r.id.clone(), i).is_some() {
                return Err(ModelError::DuplicateRoomId(r.id.clone()));
            }
        }
        let mut curriculum_ids = BTreeMap::new();
        for (i, q) in curricula.iter_mut().enumerate() {
            if curriculum_ids.insert(q.id.clone(), i).is_some() {
                return Err(ModelError::DuplicateCurriculumId(q.id.clone()));
            }
            for &c in &q.courses {
                if c >= courses.len() {
                    return Err(ModelError::CurriculumCourseOutOfRange {
                        curriculum: q.id.clone(),
                        index: c,
                    });
                }
            }
            // Exact duplicates add nothing to the constraint set.
            let mut seen = vec![false; courses.len()];
            q.courses.retain(|&c| !core::mem::replace(&mut seen[c], true));
        }

        let periods = (days as usize) * (periods_per_day as usize);
        let mut unavailable = vec![false; courses.len() * periods];
        for &(course, p) in unavailability {
            if course >= courses.len() {
                return Err(ModelError::UnavailabilityCourseOutOfRange(course));
            }
            if p.day >= days || p.slot >= periods_per_day {
                return Err(ModelError::UnavailabilityPeriodOutOfRange {
                    course: courses[course].id.clone(),
                    day: p.day,
                    slot: p.slot,
                });
            }
            let idx = (p.day as usize) * (periods_per_day as usize) + p.slot as usize;
            unavailable[course * periods + idx] = true;
        }

        let mut teacher_ids: BTreeMap<&str, usize> = BTreeMap::new();
        let mut teacher_of = Vec::with_capacity(courses.len());
        for c in &courses {
            let next = teacher_ids.len();
            teacher_of.push(*teacher_ids.entry(c.teacher.as_str()).or_insert(next));
        }
        let teacher_count = teacher_ids.len();

        let mut curricula_of = vec![Vec::new(); courses.len()];
        for (qi, q) in curricula.iter().enumerate() {
            for &c in &q.courses {
                curricula_of[c].push(qi);
            }
        }

        let total_lectures = courses.iter().map(|c| c.lectures).sum();

        Ok(Instance {
            name: name.into(),
            days,
            periods_per_day,
            courses,
            rooms,
            curricula,
            unavailable,
            teacher_of,
            teacher_count,
            curricula_of,
            total_lectures,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn days(&self) -> u32 {
        self.days
    }

    pub fn periods_per_day(&self) -> u32 {
        self.periods_per_day
    }

    pub fn courses(&self) -> &[Course] {
        &self.courses
    }

    pub fn rooms(&self) -> &[Room] {
        &self.rooms
    }

    pub fn curricula(&self) -> &[Curriculum] {
        &self.curricula
    }

    /// Total number of periods, `days * periods_per_day`.
    pub fn period_count(&self) -> usize {
        (self.days as usize) * (self.periods_per_day as usize)
    }

    /// Number of room-period cells, `rooms * periods`.
    pub fn room_period_count(&self) -> usize {
        self.rooms.len() * self.period_count()
    }

    pub fn contains_period(&self, p: Period) -> bool {
        p.day < self.days && p.slot < self.periods_per_day
    }

    /// Flat index of a period; bijective with (day, slot).
    pub fn period_index(&self, p: Period) -> usize {
        debug_assert!(self.contains_period(p));
        (p.day as usize) * (self.periods_per_day as usize) + p.slot as usize
    }

    pub fn period_at(&self, index: usize) -> Period {
        debug_assert!(index < self.period_count());
        Period {
            day: (index / self.periods_per_day as usize) as u32,
            slot: (index % self.periods_per_day as usize) as u32,
        }
    }

    /// Flat index of a room-period cell.
    pub fn room_period_index(&self, rp: RoomPeriod) -> usize {
        debug_assert!(rp.room < self.rooms.len());
        rp.room * self.period_count() + self.period_index(rp.period)
    }

    pub fn room_period_at(&self, index: usize) -> RoomPeriod {
        let periods = self.period_count();
        debug_assert!(index < self.room_period_count());
        RoomPeriod {
            room: index / periods,
            period: self.period_at(index % periods),
        }
    }

    pub fn is_unavailable(&self, course: usize, p: Period) -> bool {
        self.unavailable[course * self.period_count() + self.period_index(p)]
    }

    /// All forbidden (course, period) pairs, in (course, day, slot) order.
    pub fn unavailability_pairs(&self) -> impl Iterator<Item = (usize, Period)> + '_ {
        let periods = self.period_count();
        self.unavailable
            .iter()
            .enumerate()
            .filter(|(_, &u)| u)
            .map(move |(i, _)| (i / periods, self.period_at(i % periods)))
    }

    pub fn teacher_count(&self) -> usize {
        self.teacher_count
    }

    /// Interned teacher index of a course; equal teacher tokens compare equal.
    pub fn teacher_of(&self, course: usize) -> usize {
        self.teacher_of[course]
    }

    /// Indices of the curricula containing `course`.
    pub fn curricula_of(&self, course: usize) -> &[usize] {
        &self.curricula_of[course]
    }

    pub fn total_lectures(&self) -> u32 {
        self.total_lectures
    }

    pub fn course_index(&self, id: &str) -> Option<usize> {
        self.courses.iter().position(|c| c.id == id)
    }

    pub fn room_index(&self, id: &str) -> Option<usize> {
        self.rooms.iter().position(|r| r.id == id)
    }
}

/// A multiset of events plus the per-course lecture tally.
///
/// The container itself enforces nothing: feasibility and well-formedness
/// are judged by the evaluator against an [`Instance`]. Equality is
/// multiset equality of the events.
#[derive(Clone, Debug, Default)]
pub struct Timetable {
    events: Vec<Event>,
    per_course: Vec<u32>,
}

impl Timetable {
    /// An empty timetable with tallies sized for `course_count` courses.
    pub fn new(course_count: usize) -> Self {
        Timetable {
            events: Vec::new(),
            per_course: vec![0; course_count],
        }
    }

    pub fn from_events(course_count: usize, events: Vec<Event>) -> Self {
        let mut t = Timetable::new(course_count);
        for e in events {
            t.push(e);
        }
        t
    }

    pub fn push(&mut self, e: Event) {
        if e.course >= self.per_course.len() {
            self.per_course.resize(e.course + 1, 0);
        }
        self.per_course[e.course] += 1;
        self.events.push(e);
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Number of scheduled lectures of `course`.
    pub fn scheduled_count(&self, course: usize) -> u32 {
        self.per_course.get(course).copied().unwrap_or(0)
    }

    pub fn per_course_counts(&self) -> &[u32] {
        &self.per_course
    }

    /// Events sorted by (course, period, room); a canonical order for
    /// comparisons and deterministic output.
    pub fn sorted_events(&self) -> Vec<Event> {
        let mut v = self.events.clone();
        v.sort_unstable_by_key(|e| (e.course, e.period, e.room));
        v
    }

    /// Exchanges the courses of two events, keeping cells fixed.
    pub(crate) fn swap_courses(&mut self, i: usize, j: usize) {
        let (ci, cj) = (self.events[i].course, self.events[j].course);
        self.events[i].course = cj;
        self.events[j].course = ci;
    }

    /// Relocates event `i` to another cell, keeping its course.
    pub(crate) fn relocate(&mut self, i: usize, cell: RoomPeriod) {
        self.events[i].room = cell.room;
        self.events[i].period = cell.period;
    }
}

impl PartialEq for Timetable {
    fn eq(&self, other: &Self) -> bool {
        self.sorted_events() == other.sorted_events()
    }
}

impl Eq for Timetable {}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn course(id: &str, teacher: &str, lectures: u32, mwd: u32, students: u32) -> Course {
        Course {
            id: id.into(),
            teacher: teacher.into(),
            lectures,
            min_working_days: mwd,
            students,
        }
    }

    fn tiny_instance() -> Instance {
        Instance::new(
            "tiny",
            2,
            3,
            vec![course("c1", "t1", 2, 1, 10), course("c2", "t1", 1, 1, 20)],
            vec![
                Room { id: "r1".into(), capacity: 15 },
                Room { id: "r2".into(), capacity: 25 },
            ],
            vec![Curriculum { id: "q1".into(), courses: vec![0, 1] }],
            &[(0, Period { day: 1, slot: 2 })],
        )
        .unwrap()
    }

    #[test]
    fn period_flat_index_is_bijective() {
        let inst = tiny_instance();
        for i in 0..inst.period_count() {
            assert_eq!(inst.period_index(inst.period_at(i)), i);
        }
        for i in 0..inst.room_period_count() {
            assert_eq!(inst.room_period_index(inst.room_period_at(i)), i);
        }
    }

    #[test]
    fn interns_teachers_and_inverts_curricula() {
        let inst = tiny_instance();
        assert_eq!(inst.teacher_count(), 1);
        assert_eq!(inst.teacher_of(0), inst.teacher_of(1));
        assert_eq!(inst.curricula_of(0), &[0]);
        assert_eq!(inst.curricula_of(1), &[0]);
        assert_eq!(inst.total_lectures(), 3);
    }

    #[test]
    fn unavailability_lookup_and_iteration() {
        let inst = tiny_instance();
        assert!(inst.is_unavailable(0, Period { day: 1, slot: 2 }));
        assert!(!inst.is_unavailable(0, Period { day: 0, slot: 0 }));
        assert!(!inst.is_unavailable(1, Period { day: 1, slot: 2 }));
        let pairs: Vec<_> = inst.unavailability_pairs().collect();
        assert_eq!(pairs, vec![(0, Period { day: 1, slot: 2 })]);
    }

    #[test]
    fn rejects_duplicate_ids() {
        let err = Instance::new(
            "dup",
            1,
            1,
            vec![course("c1", "t1", 1, 1, 0), course("c1", "t2", 1, 1, 0)],
            vec![Room { id: "r1".into(), capacity: 1 }],
            vec![],
            &[],
        )
        .unwrap_err();
        assert_eq!(err, ModelError::DuplicateCourseId("c1".into()));
    }

    #[test]
    fn rejects_dangling_references() {
        let err = Instance::new(
            "dangling",
            1,
            1,
            vec![course("c1", "t1", 1, 1, 0)],
            vec![Room { id: "r1".into(), capacity: 1 }],
            vec![Curriculum { id: "q1".into(), courses: vec![3] }],
            &[],
        )
        .unwrap_err();
        assert!(matches!(err, ModelError::CurriculumCourseOutOfRange { index: 3, .. }));

        let err = Instance::new(
            "dangling",
            1,
            1,
            vec![course("c1", "t1", 1, 1, 0)],
            vec![Room { id: "r1".into(), capacity: 1 }],
            vec![],
            &[(0, Period { day: 5, slot: 0 })],
        )
        .unwrap_err();
        assert!(matches!(err, ModelError::UnavailabilityPeriodOutOfRange { .. }));
    }

    #[test]
    fn timetable_counts_follow_events() {
        let mut t = Timetable::new(2);
        assert!(t.is_empty());
        t.push(Event { course: 0, room: 0, period: Period { day: 0, slot: 0 } });
        t.push(Event { course: 0, room: 1, period: Period { day: 0, slot: 1 } });
        t.push(Event { course: 1, room: 0, period: Period { day: 0, slot: 1 } });
        assert_eq!(t.scheduled_count(0), 2);
        assert_eq!(t.scheduled_count(1), 1);
        assert_eq!(t.scheduled_count(9), 0);
        assert_eq!(t.len(), 3);
    }

    #[test]
    fn timetable_equality_ignores_event_order() {
        let e1 = Event { course: 0, room: 0, period: Period { day: 0, slot: 0 } };
        let e2 = Event { course: 1, room: 1, period: Period { day: 0, slot: 1 } };
        let a = Timetable::from_events(2, vec![e1, e2]);
        let b = Timetable::from_events(2, vec![e2, e1]);
        assert_eq!(a, b);
        let c = Timetable::from_events(2, vec![e1, e1]);
        assert_ne!(a, c);
    }
}
