//! Builders shared by the unit tests.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::model::{Course, Curriculum, Event, Instance, Period, Room, RoomPeriod, Timetable};

pub fn course(id: &str, teacher: &str, lectures: u32, mwd: u32, students: u32) -> Course {
    Course {
        id: String::from(id),
        teacher: String::from(teacher),
        lectures,
        min_working_days: mwd,
        students,
    }
}

pub fn room(id: &str, capacity: u32) -> Room {
    Room { id: String::from(id), capacity }
}

pub fn curriculum(id: &str, courses: Vec<usize>) -> Curriculum {
    Curriculum { id: String::from(id), courses }
}

pub fn instance(
    days: u32,
    periods_per_day: u32,
    courses: Vec<Course>,
    rooms: Vec<Room>,
    curricula: Vec<Curriculum>,
    unavailability: &[(usize, Period)],
) -> Instance {
    Instance::new("test", days, periods_per_day, courses, rooms, curricula, unavailability)
        .expect("test instance must validate")
}

pub fn ev(course: usize, room: usize, day: u32, slot: u32) -> Event {
    Event { course, room, period: Period { day, slot } }
}

/// Four courses, two rooms, shared teachers and curricula: enough overlap
/// that most placements collide with something.
pub fn crowded_fixture() -> (Instance, Timetable) {
    let inst = instance(
        2,
        3,
        vec![
            course("a", "t1", 2, 2, 30),
            course("b", "t1", 1, 1, 20),
            course("c", "t2", 2, 1, 25),
            course("d", "t3", 1, 1, 15),
        ],
        vec![room("r1", 25), room("r2", 30)],
        vec![curriculum("q1", vec![0, 2]), curriculum("q2", vec![1, 3])],
        &[(0, Period { day: 1, slot: 2 }), (3, Period { day: 0, slot: 0 })],
    );
    let t = Timetable::from_events(
        4,
        vec![
            ev(0, 1, 0, 0),
            ev(0, 1, 1, 0),
            ev(1, 0, 0, 1),
            ev(2, 0, 0, 0),
            ev(2, 1, 0, 1),
            ev(3, 0, 1, 1),
        ],
    );
    (inst, t)
}

/// A hard-feasible complete assignment of the crowded fixture, with soft
/// violations left to play with.
pub fn feasible_fixture() -> (Instance, Timetable) {
    let (inst, t) = crowded_fixture();
    debug_assert!(crate::eval::count_hard_violations(&inst, &t).unwrap().is_feasible());
    (inst, t)
}

/// Some cell not occupied by any event of `t`.
pub fn free_cell(inst: &Instance, t: &Timetable) -> RoomPeriod {
    for i in 0..inst.room_period_count() {
        let cell = inst.room_period_at(i);
        if !t.events().iter().any(|e| e.room == cell.room && e.period == cell.period) {
            return cell;
        }
    }
    panic!("no free cell in fixture");
}
