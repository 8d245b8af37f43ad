use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg};

use serde::{Deserialize, Serialize};

use super::residue::{lambda, Z2, Z4};
use super::shape::{canonical_pairs, canonical_triples, is_canonical_triple};
use crate::error::{Error, Result};

/// A point of the bordism group in its coordinates `(e_i, d_ij, t_ijk)`.
///
/// `e_i` is half the normal Euler number of component `i`. `d` is keyed by
/// `i < j`, and `t` by `i < j < k` or `i < k < j`; every canonical key is
/// always present.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TupleRecord", into = "TupleRecord")]
pub struct InvariantTuple {
    n: usize,
    e: Vec<i64>,
    d: BTreeMap<(usize, usize), Z4>,
    t: BTreeMap<(usize, usize, usize), Z2>,
}

impl InvariantTuple {
    pub fn zero(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidComponentCount(0));
        }
        Ok(Self {
            n,
            e: vec![0; n],
            d: canonical_pairs(n).map(|k| (k, Z4::ZERO)).collect(),
            t: canonical_triples(n).map(|k| (k, Z2::ZERO)).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check_label(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            Err(Error::LabelOutOfRange { label: i, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn e(&self, i: usize) -> Result<i64> {
        self.check_label(i)?;
        Ok(self.e[i - 1])
    }

    /// Full normal Euler number of component `i`, twice the stored coordinate.
    pub fn euler_number(&self, i: usize) -> Result<i64> {
        Ok(2 * self.e(i)?)
    }

    pub fn set_e(&mut self, i: usize, v: i64) -> Result<()> {
        self.check_label(i)?;
        self.e[i - 1] = v;
        Ok(())
    }

    /// Stored coordinate `d_ij`; `i < j` is required.
    pub fn d(&self, i: usize, j: usize) -> Result<Z4> {
        self.d
            .get(&(i, j))
            .copied()
            .ok_or_else(|| Error::BadCoordinates(format!("d({i},{j}) is not a canonical coordinate")))
    }

    pub fn set_d(&mut self, i: usize, j: usize, v: Z4) -> Result<()> {
        match self.d.get_mut(&(i, j)) {
            Some(slot) => {
                *slot = v;
                Ok(())
            }
            None => Err(Error::BadCoordinates(format!("d({i},{j}) is not a canonical coordinate"))),
        }
    }

    /// Stored coordinate `t_ijk` for a canonical triple.
    pub fn t(&self, i: usize, j: usize, k: usize) -> Result<Z2> {
        self.t
            .get(&(i, j, k))
            .copied()
            .ok_or_else(|| Error::BadCoordinates(format!("t({i},{j},{k}) is not a canonical coordinate")))
    }

    pub fn set_t(&mut self, i: usize, j: usize, k: usize, v: Z2) -> Result<()> {
        match self.t.get_mut(&(i, j, k)) {
            Some(slot) => {
                *slot = v;
                Ok(())
            }
            None => Err(Error::BadCoordinates(format!("t({i},{j},{k}) is not a canonical coordinate"))),
        }
    }

    pub fn e_values(&self) -> &[i64] {
        &self.e
    }

    pub fn d_entries(&self) -> impl Iterator<Item = ((usize, usize), Z4)> + '_ {
        self.d.iter().map(|(k, v)| (*k, *v))
    }

    pub fn t_entries(&self) -> impl Iterator<Item = ((usize, usize, usize), Z2)> + '_ {
        self.t.iter().map(|(k, v)| (*k, *v))
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|&v| v == 0) && self.d.values().all(|v| v.is_zero()) && self.t.values().all(|v| v.is_zero())
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            Err(Error::ShapeMismatch { left: self.n, right: other.n })
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (a, b) in out.e.iter_mut().zip(&other.e) {
            *a += b;
        }
        for (k, v) in out.d.iter_mut() {
            *v += other.d[k];
        }
        for (k, v) in out.t.iter_mut() {
            *v += other.t[k];
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self {
            n: self.n,
            e: self.e.iter().map(|v| -v).collect(),
            d: self.d.iter().map(|(k, v)| (*k, -*v)).collect(),
            t: self.t.iter().map(|(k, v)| (*k, -*v)).collect(),
        }
    }

    /// Coordinate comparison; errors on mismatched component counts.
    pub fn equal(&self, other: &Self) -> Result<bool> {
        self.same_shape(other)?;
        Ok(self == other)
    }

    /// Sum of `k` copies (negative `k` uses the inverse).
    pub fn scale(&self, k: i64) -> Self {
        Self {
            n: self.n,
            e: self.e.iter().map(|v| v * k).collect(),
            d: self.d.iter().map(|(key, v)| (*key, Z4::new(v.value() as i64 * k))).collect(),
            t: self.t.iter().map(|(key, v)| (*key, Z2::new(v.value() as i64 * k))).collect(),
        }
    }

    /// `d(F_i, F_j)` for any ordered pair of distinct labels.
    pub fn derived_d(&self, i: usize, j: usize) -> Result<Z4> {
        self.check_label(i)?;
        self.check_label(j)?;
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => Err(Error::DegeneratePair(i)),
            std::cmp::Ordering::Less => self.d(i, j),
            std::cmp::Ordering::Greater => Ok(-self.d(j, i)?),
        }
    }

    /// `t(F_i, F_j, F_k)` for any pattern with `i != j` and `j != k`.
    ///
    /// Non-canonical patterns reduce by `t_ijk = t_kji`, `t_iji = lambda(d_ij)`
    /// and `t_jik + t_ijk + t_ikj = 0`, in that order.
    pub fn derived_t(&self, i: usize, j: usize, k: usize) -> Result<Z2> {
        for l in [i, j, k] {
            self.check_label(l)?;
        }
        if i == j || j == k {
            return Err(Error::DegenerateTriple(i, j, k));
        }
        if is_canonical_triple(i, j, k) {
            return self.t(i, j, k);
        }
        if is_canonical_triple(k, j, i) {
            return self.t(k, j, i);
        }
        if i == k {
            return Ok(lambda(self.derived_d(i, j)?));
        }
        // j is the smallest label: t_ijk = t_jik + t_ikj = t_jik + t_jki.
        Ok(self.t(j, i, k)? + self.t(j, k, i)?)
    }

    /// The tuple of the relabeled link: component `i` becomes `perm[i - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n;
        let mut inverse = vec![0usize; n + 1];
        if perm.len() != n {
            return Err(Error::BadCoordinates(format!("permutation of length {} for n={n}", perm.len())));
        }
        for (i, &p) in perm.iter().enumerate() {
            if p == 0 || p > n || inverse[p] != 0 {
                return Err(Error::BadCoordinates(format!("{perm:?} is not a permutation of 1..={n}")));
            }
            inverse[p] = i + 1;
        }
        let mut out = Self::zero(n)?;
        for i in 1..=n {
            out.e[perm[i - 1] - 1] = self.e[i - 1];
        }
        for ((a, b), v) in out.d.iter_mut() {
            *v = self.derived_d(inverse[*a], inverse[*b])?;
        }
        for ((a, b, c), v) in out.t.iter_mut() {
            *v = self.derived_t(inverse[*a], inverse[*b], inverse[*c])?;
        }
        Ok(out)
    }

    /// Decides null-bordance; the coordinate map is injective.
    pub fn is_null_bordant(&self) -> bool {
        self.is_zero()
    }
}

impl Add for &InvariantTuple {
    type Output = InvariantTuple;
    fn add(self, rhs: Self) -> InvariantTuple {
        InvariantTuple::add(self, rhs).expect("component counts differ")
    }
}

impl Neg for &InvariantTuple {
    type Output = InvariantTuple;
    fn neg(self) -> InvariantTuple {
        InvariantTuple::neg(self)
    }
}

pub fn is_null_bordant(a: &InvariantTuple) -> bool {
    a.is_null_bordant()
}

impl fmt::Display for InvariantTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.e.iter().map(|v| v.to_string()).collect();
        write!(f, "e=({})", e.join(","))?;
        for ((i, j), v) in &self.d {
            write!(f, " d{i}{j}={v}")?;
        }
        for ((i, j, k), v) in &self.t {
            write!(f, " t{i}{j}{k}={v}")?;
        }
        Ok(())
    }
}

/// Machine-readable form: explicit keys so the record is self-describing.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TupleRecord {
    n: usize,
    e: Vec<i64>,
    d: Vec<(usize, usize, Z4)>,
    t: Vec<(usize, usize, usize, Z2)>,
}

impl From<InvariantTuple> for TupleRecord {
    fn from(a: InvariantTuple) -> Self {
        TupleRecord {
            n: a.n,
            e: a.e.clone(),
            d: a.d.iter().map(|((i, j), v)| (*i, *j, *v)).collect(),
            t: a.t.iter().map(|((i, j, k), v)| (*i, *j, *k, *v)).collect(),
        }
    }
}

impl TryFrom<TupleRecord> for InvariantTuple {
    type Error = Error;
    fn try_from(r: TupleRecord) -> Result<Self> {
        let mut out = InvariantTuple::zero(r.n)?;
        if r.e.len() != r.n {
            return Err(Error::BadCoordinates(format!("expected {} Euler entries, got {}", r.n, r.e.len())));
        }
        out.e = r.e;
        if r.d.len() != out.d.len() || r.t.len() != out.t.len() {
            return Err(Error::BadCoordinates("coordinate count does not match the group shape".into()));
        }
        let mut seen_d = std::collections::BTreeSet::new();
        for (i, j, v) in r.d {
            if !seen_d.insert((i, j)) {
                return Err(Error::BadCoordinates(format!("duplicate d({i},{j})")));
            }
            out.set_d(i, j, v)?;
        }
        let mut seen_t = std::collections::BTreeSet::new();
        for (i, j, k, v) in r.t {
            if !seen_t.insert((i, j, k)) {
                return Err(Error::BadCoordinates(format!("duplicate t({i},{j},{k})")));
            }
            out.set_t(i, j, k, v)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tuple2(d12: i64) -> InvariantTuple {
        let mut a = InvariantTuple::zero(2).unwrap();
        a.set_d(1, 2, Z4::new(d12)).unwrap();
        a
    }

    #[test]
    fn negation_is_mod_four() {
        assert_eq!(tuple2(1).neg(), tuple2(3));
        let x = tuple2(1);
        assert!(x.add(&x.neg()).unwrap().is_zero());
        assert_eq!(InvariantTuple::zero(2).unwrap().add(&x).unwrap(), x);
    }

    #[test]
    fn mismatched_shapes_rejected() {
        let a = InvariantTuple::zero(2).unwrap();
        let b = InvariantTuple::zero(3).unwrap();
        assert!(matches!(a.add(&b), Err(Error::ShapeMismatch { .. })));
        assert!(a.equal(&b).is_err());
    }

    #[test]
    fn derived_d_examples() {
        assert_eq!(tuple2(1).derived_d(2, 1).unwrap(), Z4::new(3));
        assert_eq!(tuple2(2).derived_d(2, 1).unwrap(), Z4::new(2));
        assert_eq!(tuple2(0).derived_d(2, 1).unwrap(), Z4::new(0));
        assert_eq!(tuple2(1).derived_d(1, 1), Err(Error::DegeneratePair(1)));
    }

    #[test]
    fn derived_t_examples() {
        assert_eq!(tuple2(3).derived_t(1, 2, 1).unwrap(), Z2::new(1));
        let mut a = InvariantTuple::zero(3).unwrap();
        a.set_t(1, 2, 3, Z2::new(1)).unwrap();
        assert_eq!(a.derived_t(2, 1, 3).unwrap(), Z2::new(1));
        assert_eq!(a.derived_t(3, 2, 1).unwrap(), Z2::new(1));
        assert!(a.derived_t(1, 1, 2).is_err());
        assert!(a.derived_t(1, 2, 2).is_err());
        assert!(a.derived_t(1, 2, 4).is_err());
    }

    #[test]
    fn null_bordance() {
        assert!(InvariantTuple::zero(3).unwrap().is_null_bordant());
        let mut a = InvariantTuple::zero(3).unwrap();
        a.set_e(1, 1).unwrap();
        assert!(!a.is_null_bordant());
        let mut b = InvariantTuple::zero(3).unwrap();
        b.set_d(1, 2, Z4::new(2)).unwrap();
        assert!(!is_null_bordant(&b));
    }

    #[test]
    fn json_record_round_trip_and_rejects_missing_keys() {
        let mut a = InvariantTuple::zero(3).unwrap();
        a.set_e(2, -5).unwrap();
        a.set_d(1, 3, Z4::new(3)).unwrap();
        a.set_t(1, 3, 2, Z2::new(1)).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        let b: InvariantTuple = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
        let bad = r#"{"n":2,"e":[0,0],"d":[],"t":[]}"#;
        assert!(serde_json::from_str::<InvariantTuple>(bad).is_err());
        let dup = r#"{"n":2,"e":[0,0],"d":[[2,1,0]],"t":[]}"#;
        assert!(serde_json::from_str::<InvariantTuple>(dup).is_err());
    }
}
