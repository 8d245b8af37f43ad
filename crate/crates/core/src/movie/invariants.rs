//! The invariant tuple of a movie, computed from its surface diagram.

use std::collections::BTreeMap;

use crate::algebra::{InvariantTuple, Z2, Z4};

use super::error::MovieError;
use super::linking::linking_number;
use super::model::Movie;
use super::pushoff::{push_off, Features, PushOffOptions};
use super::surface::euler_numbers;
use super::trace::{trace_double_curves, triple_point_census, DoubleCurve, Embedding};
use super::validate::validate_movie;

pub const DEFAULT_SEED: u64 = 0x5eed_1a7e;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinkingOptions {
    pub push_off: PushOffOptions,
    /// Seed for the projection direction of linking numbers.
    pub seed: u64,
}

impl Default for LinkingOptions {
    fn default() -> Self {
        LinkingOptions { push_off: PushOffOptions::default(), seed: DEFAULT_SEED }
    }
}

/// `Lk(C, C')` for each ordered pair of distinct labels, as an integer.
pub fn double_linking_numbers(m: &Movie, opts: LinkingOptions) -> Result<BTreeMap<(usize, usize), i64>, MovieError> {
    let curves = trace_double_curves(m)?;
    double_linking_from(m, &curves, opts)
}

fn double_linking_from(m: &Movie, curves: &[DoubleCurve], opts: LinkingOptions) -> Result<BTreeMap<(usize, usize), i64>, MovieError> {
    let emb = Embedding::of(m);
    let features = Features::new(m);
    let mut out = BTreeMap::new();
    for i in 1..=m.n {
        for j in 1..=m.n {
            if i == j {
                continue;
            }
            let mut c = Vec::new();
            let mut c_prime = Vec::new();
            for curve in curves.iter().filter(|c| c.closed && c.curve_type() == (i, j)) {
                let p = push_off(m, curve, &emb, &features, opts.push_off)?;
                c.push(p.curve);
                c_prime.extend(p.loops);
            }
            let lk = if c.is_empty() { 0 } else { linking_number(&c, &c_prime, opts.seed)? };
            out.insert((i, j), lk);
        }
    }
    Ok(out)
}

/// `d(F_i, F_j) = Lk(C, C') mod 4` for each ordered pair of distinct labels.
pub fn double_linking(m: &Movie, opts: LinkingOptions) -> Result<BTreeMap<(usize, usize), Z4>, MovieError> {
    Ok(double_linking_numbers(m, opts)?.into_iter().map(|(k, v)| (k, Z4::new(v))).collect())
}

/// Triple point counts, queried as residues mod 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleLinking {
    pub n: usize,
    pub counts: BTreeMap<(usize, usize, usize), u64>,
}

impl TripleLinking {
    pub fn count(&self, i: usize, j: usize, k: usize) -> Result<u64, MovieError> {
        for l in [i, j, k] {
            if l == 0 || l > self.n {
                return Err(MovieError::LabelOutOfRange { label: l, n: self.n });
            }
        }
        if i == j || j == k {
            return Err(MovieError::DegenerateTriple(i, j, k));
        }
        Ok(self.counts.get(&(i, j, k)).copied().unwrap_or(0))
    }

    pub fn residue(&self, i: usize, j: usize, k: usize) -> Result<Z2, MovieError> {
        Ok(Z2::new(self.count(i, j, k)? as i64))
    }

    /// Every admissible pattern with its residue.
    pub fn residues(&self) -> BTreeMap<(usize, usize, usize), Z2> {
        let mut out = BTreeMap::new();
        for i in 1..=self.n {
            for j in 1..=self.n {
                for k in 1..=self.n {
                    if i != j && j != k {
                        out.insert((i, j, k), self.residue(i, j, k).expect("admissible pattern"));
                    }
                }
            }
        }
        out
    }
}

pub fn triple_linking(m: &Movie) -> TripleLinking {
    TripleLinking { n: m.n, counts: triple_point_census(m) }
}

/// Every invariant computed directly from the movie, before packaging.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MovieReport {
    pub euler: BTreeMap<usize, i64>,
    pub double: BTreeMap<(usize, usize), i64>,
    pub triple: TripleLinking,
    pub curves: Vec<DoubleCurve>,
}

pub fn movie_report(m: &Movie, opts: LinkingOptions) -> Result<MovieReport, MovieError> {
    let report = validate_movie(m);
    if !report.is_valid() {
        return Err(MovieError::Invalid(report.to_string()));
    }
    let curves = trace_double_curves(m)?;
    for c in curves.iter().filter(|c| !c.closed) {
        if c.over_label != c.under_label || c.branch_events().len() != 2 {
            return Err(MovieError::Consistency(format!(
                "open double curve of type ({}, {}) with {} branch ends",
                c.over_label,
                c.under_label,
                c.branch_events().len()
            )));
        }
    }
    let double = double_linking_from(m, &curves, opts)?;
    Ok(MovieReport { euler: euler_numbers(m), double, triple: triple_linking(m), curves })
}

/// Packages halved Euler numbers, `d_ij` for `i < j` and canonical `t_ijk`,
/// then checks every derived coordinate against its direct computation.
pub fn movie_invariants(m: &Movie, opts: LinkingOptions) -> Result<InvariantTuple, MovieError> {
    let r = movie_report(m, opts)?;
    tuple_from_report(m.n, &r)
}

pub fn tuple_from_report(n: usize, r: &MovieReport) -> Result<InvariantTuple, MovieError> {
    let internal = |e: crate::Error| MovieError::Consistency(e.to_string());
    let mut tuple = InvariantTuple::zero(n).map_err(internal)?;
    for (&label, &e) in &r.euler {
        if e % 2 != 0 {
            return Err(MovieError::Consistency(format!("odd Euler number {e} on label {label}")));
        }
        tuple.set_e(label, e / 2).map_err(internal)?;
    }
    for (&(i, j), &lk) in &r.double {
        if i < j {
            tuple.set_d(i, j, Z4::new(lk)).map_err(internal)?;
        }
    }
    for ((i, j, k), v) in r.triple.residues() {
        if crate::algebra::is_canonical_triple(i, j, k) {
            tuple.set_t(i, j, k, v).map_err(internal)?;
        }
    }
    let mut mismatches = Vec::new();
    for (&(i, j), &lk) in &r.double {
        let derived = tuple.derived_d(i, j).map_err(internal)?;
        if derived != Z4::new(lk) {
            mismatches.push(format!("d({i},{j}) measured {} but derived {derived}", Z4::new(lk)));
        }
    }
    for ((i, j, k), v) in r.triple.residues() {
        let derived = tuple.derived_t(i, j, k).map_err(internal)?;
        if derived != v {
            mismatches.push(format!("t({i},{j},{k}) measured {v} but derived {derived}"));
        }
    }
    if mismatches.is_empty() {
        Ok(tuple)
    } else {
        Err(MovieError::Consistency(mismatches.join("; ")))
    }
}
