use std::collections::BTreeMap;

use super::residue::{kappa, nu, Z2};
use super::shape::{canonical_pairs, canonical_triples};
use super::tuple::InvariantTuple;
use crate::error::{Error, Result};

/// A class of the oriented bordism group in its coordinates
/// `(D_ij in Z2, T_ijk in Z)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrientedClass {
    n: usize,
    d: BTreeMap<(usize, usize), Z2>,
    t: BTreeMap<(usize, usize, usize), i64>,
}

impl OrientedClass {
    pub fn zero(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidComponentCount(0));
        }
        Ok(Self {
            n,
            d: canonical_pairs(n).map(|k| (k, Z2::ZERO)).collect(),
            t: canonical_triples(n).map(|k| (k, 0)).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set_d(&mut self, i: usize, j: usize, v: Z2) -> Result<()> {
        let slot = self
            .d
            .get_mut(&(i, j))
            .ok_or_else(|| Error::BadCoordinates(format!("D({i},{j}) is not a canonical coordinate")))?;
        *slot = v;
        Ok(())
    }

    pub fn set_t(&mut self, i: usize, j: usize, k: usize, v: i64) -> Result<()> {
        let slot = self
            .t
            .get_mut(&(i, j, k))
            .ok_or_else(|| Error::BadCoordinates(format!("T({i},{j},{k}) is not a canonical coordinate")))?;
        *slot = v;
        Ok(())
    }

    pub fn d_entries(&self) -> impl Iterator<Item = ((usize, usize), Z2)> + '_ {
        self.d.iter().map(|(k, v)| (*k, *v))
    }

    pub fn t_entries(&self) -> impl Iterator<Item = ((usize, usize, usize), i64)> + '_ {
        self.t.iter().map(|(k, v)| (*k, *v))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::ShapeMismatch { left: self.n, right: other.n });
        }
        let mut out = self.clone();
        for (k, v) in out.d.iter_mut() {
            *v += other.d[k];
        }
        for (k, v) in out.t.iter_mut() {
            *v += other.t[k];
        }
        Ok(out)
    }
}

/// Forgets orientations: `e -> 0`, `d_ij = kappa(D_ij)`, `t_ijk = nu(T_ijk)`.
pub fn forgetful(o: &OrientedClass) -> InvariantTuple {
    let mut out = InvariantTuple::zero(o.n).expect("n >= 1 by construction");
    for ((i, j), v) in o.d_entries() {
        out.set_d(i, j, kappa(v)).expect("same canonical keys");
    }
    for ((i, j, k), v) in o.t_entries() {
        out.set_t(i, j, k, nu(v)).expect("same canonical keys");
    }
    out
}
