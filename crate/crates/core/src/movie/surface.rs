//! Surface components, Euler characteristics and branch-point data.

use std::collections::{BTreeMap, BTreeSet};

use super::geometry::cross;
use super::model::{CircleId, Event, Movie, Still};

/// Sign of a crossing: positive when the under branch turns counterclockwise
/// from the over branch. Independent of orientation for self-crossings.
pub fn crossing_sign(still: &Still, crossing: u32) -> Option<i8> {
    let x = still.crossing(crossing)?;
    let c = cross(still.tangent(x.over)?, still.tangent(x.under)?);
    (c != 0.0).then_some(if c > 0.0 { 1 } else { -1 })
}

/// Branch sign implied by the kink geometry: the kink crossing's sign, negated
/// for annihilation.
pub fn derived_branch_sign(m: &Movie, event: usize) -> Option<i8> {
    match &m.events[event] {
        Event::R1Create { crossing, .. } => crossing_sign(&m.stills[m.after(event)], *crossing),
        Event::R1Annihilate { crossing, .. } => crossing_sign(&m.stills[event], *crossing).map(|s| -s),
        _ => None,
    }
}

/// R1 events whose declared sign disagrees with [`derived_branch_sign`].
pub fn branch_sign_mismatches(m: &Movie) -> Vec<usize> {
    (0..m.events.len())
        .filter(|&e| match &m.events[e] {
            Event::R1Create { sign, .. } | Event::R1Annihilate { sign, .. } => derived_branch_sign(m, e) != Some(*sign),
            _ => false,
        })
        .collect()
}

fn r1_label(m: &Movie, e: usize) -> Option<(CircleId, usize, i8)> {
    match &m.events[e] {
        Event::R1Create { circle, sign, .. } => Some((*circle, m.stills[m.after(e)].label_of(*circle)?, *sign)),
        Event::R1Annihilate { circle, sign, .. } => Some((*circle, m.stills[e].label_of(*circle)?, *sign)),
        _ => None,
    }
}

/// Normal Euler number per label: the sum of branch signs.
pub fn euler_numbers(m: &Movie) -> BTreeMap<usize, i64> {
    let mut out: BTreeMap<usize, i64> = (1..=m.n).map(|l| (l, 0)).collect();
    for e in 0..m.events.len() {
        if let Some((_, label, sign)) = r1_label(m, e) {
            *out.entry(label).or_default() += i64::from(sign);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceComponent {
    pub label: usize,
    pub circles: BTreeSet<CircleId>,
    pub births: usize,
    pub deaths: usize,
    pub saddles: usize,
    pub euler_characteristic: i64,
    /// Branch-sign sum over the component.
    pub euler_number: i64,
}

struct UnionFind(BTreeMap<CircleId, CircleId>);

impl UnionFind {
    fn find(&mut self, x: CircleId) -> CircleId {
        let p = *self.0.entry(x).or_insert(x);
        if p == x {
            return x;
        }
        let root = self.find(p);
        self.0.insert(x, root);
        root
    }

    fn union(&mut self, a: CircleId, b: CircleId) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0.insert(ra.max(rb), ra.min(rb));
        }
    }
}

/// Connected surface components traced through circle identities. Circle
/// identifiers are assumed not to be reused after a circle ends.
pub fn surface_components(m: &Movie) -> Vec<SurfaceComponent> {
    let mut uf = UnionFind(BTreeMap::new());
    let mut labels = BTreeMap::new();
    for s in &m.stills {
        for c in &s.circles {
            uf.find(c.id);
            labels.insert(c.id, c.label);
        }
    }
    for ev in &m.events {
        if let Event::Saddle { from, to } = ev {
            let first = from[0];
            for c in from.iter().chain(to) {
                uf.union(first, *c);
            }
        }
    }
    let ids: Vec<CircleId> = labels.keys().copied().collect();
    let mut comps: BTreeMap<CircleId, SurfaceComponent> = BTreeMap::new();
    for id in ids {
        let root = uf.find(id);
        let comp = comps.entry(root).or_insert_with(|| SurfaceComponent {
            label: labels[&id],
            circles: BTreeSet::new(),
            births: 0,
            deaths: 0,
            saddles: 0,
            euler_characteristic: 0,
            euler_number: 0,
        });
        comp.circles.insert(id);
    }
    for (e, ev) in m.events.iter().enumerate() {
        let (circle, field): (CircleId, fn(&mut SurfaceComponent)) = match ev {
            Event::Birth { circle } => (*circle, |c| c.births += 1),
            Event::Death { circle } => (*circle, |c| c.deaths += 1),
            Event::Saddle { from, .. } => (from[0], |c| c.saddles += 1),
            _ => {
                if let Some((circle, _, sign)) = r1_label(m, e) {
                    let root = uf.find(circle);
                    if let Some(c) = comps.get_mut(&root) {
                        c.euler_number += i64::from(sign);
                    }
                }
                continue;
            }
        };
        let root = uf.find(circle);
        if let Some(c) = comps.get_mut(&root) {
            field(c);
        }
    }
    comps
        .into_values()
        .map(|mut c| {
            c.euler_characteristic = c.births as i64 + c.deaths as i64 - c.saddles as i64;
            c
        })
        .collect()
}

/// Euler characteristic per surface component, in component order.
pub fn euler_characteristics(m: &Movie) -> Vec<(BTreeSet<CircleId>, i64)> {
    surface_components(m).into_iter().map(|c| (c.circles, c.euler_characteristic)).collect()
}

/// Components failing `e ≡ 2χ (mod 4)` or `|e| ≤ 4 − 2χ`, with a message.
pub fn whitney_violations(m: &Movie) -> Vec<(SurfaceComponent, String)> {
    let mut out = Vec::new();
    for c in surface_components(m) {
        let (e, chi) = (c.euler_number, c.euler_characteristic);
        if (e - 2 * chi).rem_euclid(4) != 0 {
            out.push((c.clone(), format!("e = {e} is not congruent to 2χ = {} mod 4", 2 * chi)));
        }
        if e.abs() > 4 - 2 * chi {
            out.push((c.clone(), format!("|e| = {} exceeds 4 - 2χ = {}", e.abs(), 4 - 2 * chi)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::movie::format::parse_movie;

    #[test]
    fn sphere_has_euler_characteristic_two() {
        let m = parse_movie(
            "movie 1\nn 1\nstills 3\nstill 0 time 0\nevent birth circle 1\n\
still 1 time 1\ncircle 1 label 1 points 1 0 0 1 -1 0 0 -1\nevent death circle 1\nstill 2 time 2\n",
        )
        .unwrap();
        let comps = surface_components(&m);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].euler_characteristic, 2);
        assert_eq!(euler_numbers(&m)[&1], 0);
        assert!(whitney_violations(&m).is_empty());
    }

    #[test]
    fn saddles_merge_components() {
        let text = "movie 1\nn 1\nstills 5\nstill 0 time 0\nevent birth circle 1\n\
still 1 time 1\ncircle 1 label 1 points 0 0 1 0 0 1\nevent birth circle 2\n\
still 2 time 2\ncircle 1 label 1 points 0 0 1 0 0 1\ncircle 2 label 1 points 5 0 6 0 5 1\nevent saddle from 1 2 to 3\n\
still 3 time 3\ncircle 3 label 1 points 0 0 6 0 0 1\nevent death circle 3\nstill 4 time 4\n";
        let m = parse_movie(text).unwrap();
        let comps = surface_components(&m);
        assert_eq!(comps.len(), 1);
        assert_eq!((comps[0].births, comps[0].deaths, comps[0].saddles), (2, 1, 1));
        assert_eq!(comps[0].euler_characteristic, 2);
    }
}
