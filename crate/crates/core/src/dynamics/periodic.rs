use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::roots::rational_roots;
use crate::error::{Error, Result};
use crate::proj::map::RationalMap;
use crate::proj::point::ProjPointQ;

/// Refuse iterates whose fixed-point form would exceed this degree.
pub const MAX_ITERATE_DEGREE: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicPoints {
    /// Minimal period to the rational points of exactly that period.
    pub by_period: BTreeMap<usize, BTreeSet<ProjPointQ>>,
    /// False if some root search was incomplete or a period was skipped.
    pub complete: bool,
}

impl PeriodicPoints {
    pub fn all(&self) -> BTreeSet<ProjPointQ> {
        self.by_period.values().flatten().cloned().collect()
    }
}

/// Smallest `m ≥ 1` with `Φ^m(P) = P`, searching up to `limit`.
pub fn minimal_period(phi: &RationalMap, p: &ProjPointQ, limit: usize) -> Option<usize> {
    let mut q = p.clone();
    for m in 1..=limit {
        q = phi.evaluate(&q);
        if &q == p {
            return Some(m);
        }
    }
    None
}

pub fn periodic_points(phi: &RationalMap, n_max: usize) -> Result<PeriodicPoints> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let mut by_period = BTreeMap::new();
    let mut complete = true;
    let mut iterate = RationalMap::identity();
    for n in 1..=n_max {
        if iterate.degree().saturating_mul(phi.degree()) > MAX_ITERATE_DEGREE {
            complete = false;
            break;
        }
        iterate = phi.compose(&iterate);
        let search = rational_roots(&iterate.fixed_point_form())?;
        complete &= search.complete;
        let exact: BTreeSet<ProjPointQ> = search
            .roots
            .into_iter()
            .filter(|p| minimal_period(phi, p, n) == Some(n))
            .collect();
        by_period.insert(n, exact);
    }
    Ok(PeriodicPoints {
        by_period,
        complete,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PreperiodicPoints {
    pub points: BTreeSet<ProjPointQ>,
    pub periodic: PeriodicPoints,
    /// The backward closure stabilized within `depth_max` and every root
    /// search was complete.
    pub complete: bool,
    pub depth_reached: usize,
}

/// Backward closure of the rational periodic points of period `≤ n_max`.
pub fn preperiodic_points(
    phi: &RationalMap,
    n_max: usize,
    depth_max: usize,
) -> Result<PreperiodicPoints> {
    let periodic = periodic_points(phi, n_max)?;
    let mut points = periodic.all();
    let mut frontier: VecDeque<ProjPointQ> = points.iter().cloned().collect();
    let mut complete = periodic.complete;
    let mut depth = 0;
    while !frontier.is_empty() {
        if depth == depth_max {
            complete = false;
            break;
        }
        depth += 1;
        let mut next = VecDeque::new();
        for target in frontier {
            let search = rational_roots(&phi.preimage_form(&target))?;
            complete &= search.complete;
            for q in search.roots {
                if points.insert(q.clone()) {
                    next.push_back(q);
                }
            }
        }
        frontier = next;
    }
    Ok(PreperiodicPoints {
        points,
        periodic,
        complete,
        depth_reached: depth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&str]) -> BTreeSet<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn names(s: &BTreeSet<ProjPointQ>) -> BTreeSet<String> {
        s.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn square_map() {
        let sq = RationalMap::polynomial(&[0, 0, 1]).unwrap();
        let per = periodic_points(&sq, 2).unwrap();
        assert_eq!(names(&per.by_period[&1]), pts(&["0", "1", "inf"]));
        assert!(per.by_period[&2].is_empty());
        let pre = preperiodic_points(&sq, 2, 10).unwrap();
        assert_eq!(names(&pre.points), pts(&["0", "1", "-1", "inf"]));
        assert!(pre.complete);
    }

    #[test]
    fn two_cycle_and_irrational_fixed_points() {
        let m = RationalMap::polynomial(&[-1, 0, 1]).unwrap();
        let per = periodic_points(&m, 2).unwrap();
        assert_eq!(names(&per.by_period[&2]), pts(&["0", "-1"]));
        let shifted = RationalMap::polynomial(&[1, -2, 1]).unwrap();
        let per = periodic_points(&shifted, 1).unwrap();
        assert_eq!(names(&per.by_period[&1]), pts(&["inf"]));
    }
}
