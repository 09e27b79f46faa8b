//! Local moves that lower the codegree of a floor diagram while keeping its
//! Newton polygon and genus.

use serde::{Deserialize, Serialize};

use super::FloorDiagram;
use crate::error::{Error, Result};

/// An edge of a diagram: an elevator by index, or one source or sink at a
/// floor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeRef {
    Elevator(usize),
    Source(usize),
    Sink(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OpKind {
    /// `e1` joins `v1 -> v2` and `e2` leaves `v1` without touching `v2`:
    /// `e2` is moved to leave `v2` and `e1` absorbs its weight.
    APlus { e1: usize, e2: EdgeRef },
    /// `e1` joins `v1 -> v2` and `e2` enters `v2` without touching `v1`:
    /// `e2` is moved to enter `v1` and `e1` absorbs its weight.
    AMinus { e1: usize, e2: EdgeRef },
    /// Swaps the left slopes of the ends of elevator `e` when the lower one
    /// is smaller.
    BLeft { e: usize },
    /// Swaps the right slopes of the ends of elevator `e` when the lower one
    /// is larger.
    BRight { e: usize },
}

fn not_applicable(msg: impl Into<String>) -> Error {
    Error::NotApplicable(msg.into())
}

pub(super) fn apply(d: &FloorDiagram, op: OpKind) -> Result<FloorDiagram> {
    let mut floors = d.floors.clone();
    let mut elevators = d.elevators.clone();
    let elevator = |i: usize| d.elevators.get(i).cloned().ok_or_else(|| not_applicable(format!("no elevator {i}")));
    match op {
        OpKind::APlus { e1, e2 } => {
            let base = elevator(e1)?;
            let (v1, v2) = (base.from, base.to);
            let moved = match e2 {
                EdgeRef::Elevator(k) if k != e1 => {
                    let e = elevator(k)?;
                    if e.from != v1 || e.to == v2 {
                        return Err(not_applicable("e2 must leave v1 and avoid v2"));
                    }
                    elevators[k].from = v2;
                    e.weight
                }
                EdgeRef::Sink(v) if v == v1 && floors[v1].sinks > 0 => {
                    floors[v1].sinks -= 1;
                    floors[v2].sinks += 1;
                    1
                }
                _ => return Err(not_applicable("e2 must be an edge leaving v1 other than e1")),
            };
            elevators[e1].weight += moved;
        }
        OpKind::AMinus { e1, e2 } => {
            let base = elevator(e1)?;
            let (v1, v2) = (base.from, base.to);
            let moved = match e2 {
                EdgeRef::Elevator(k) if k != e1 => {
                    let e = elevator(k)?;
                    if e.to != v2 || e.from == v1 {
                        return Err(not_applicable("e2 must enter v2 and avoid v1"));
                    }
                    elevators[k].to = v1;
                    e.weight
                }
                EdgeRef::Source(v) if v == v2 && floors[v2].sources > 0 => {
                    floors[v2].sources -= 1;
                    floors[v1].sources += 1;
                    1
                }
                _ => return Err(not_applicable("e2 must be an edge entering v2 other than e1")),
            };
            elevators[e1].weight += moved;
        }
        OpKind::BLeft { e } => {
            let base = elevator(e)?;
            let (l1, l2) = (floors[base.from].l, floors[base.to].l);
            if l1 >= l2 {
                return Err(not_applicable("B-left needs l(v1) < l(v2)"));
            }
            floors[base.from].l = l2;
            floors[base.to].l = l1;
            elevators[e].weight += (l2 - l1) as u64;
        }
        OpKind::BRight { e } => {
            let base = elevator(e)?;
            let (r1, r2) = (floors[base.from].r, floors[base.to].r);
            if r1 <= r2 {
                return Err(not_applicable("B-right needs r(v1) > r(v2)"));
            }
            floors[base.from].r = r2;
            floors[base.to].r = r1;
            elevators[e].weight += (r1 - r2) as u64;
        }
    }
    FloorDiagram::new(floors, elevators).map_err(|e| not_applicable(format!("result is not a diagram: {e}")))
}
