//! Enumeration of the factorization classes behind the map expansions of
//! `Wg^U_N` and `Wg^O_{N+1}`, with the resulting coefficients, censuses and
//! truncated series.
//!
//! Both searches assign one factor value at a time while tracking the
//! partial cycles (paths) of the two factors together with how many marked
//! labels each path holds. A branch dies as soon as a path would carry two
//! marked labels or a cycle closes without exactly one.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{BigRational, LaurentSeries};
use crate::combinatorics::{partitions, standard_images, Domain, Partition, Permutation};
use crate::error::{Result, WgError};

/// Largest label count `n + m` the unitary search accepts.
pub const UNITARY_MAX_LABELS: usize = 16;
/// Largest `n + m` the orthogonal search accepts (the domain has twice as many labels).
pub const ORTHOGONAL_MAX_LABELS: usize = 9;

const UNSET: usize = usize::MAX;

/// Partial permutation stored as vertex-disjoint paths and closed cycles.
#[derive(Clone)]
struct Paths {
    /// For a path end: the start of its path.
    start_of: Vec<usize>,
    /// For a path start: the end of its path.
    end_of: Vec<usize>,
    /// Marked labels on the path, stored at its start.
    marks: Vec<u8>,
}

enum Undo {
    Closed,
    Merged {
        s: usize,
        old_end: usize,
        e: usize,
        old_start: usize,
        old_marks: u8,
    },
}

impl Paths {
    fn new(marked: &[bool]) -> Self {
        let size = marked.len();
        Paths {
            start_of: (0..size).collect(),
            end_of: (0..size).collect(),
            marks: marked.iter().map(|&m| u8::from(m)).collect(),
        }
    }

    /// Adds the edge `u → v`, where `u` has no image yet and `v` no preimage.
    /// Returns `None` if the marking condition is violated.
    fn link(&mut self, u: usize, v: usize) -> Option<Undo> {
        let s = self.start_of[u];
        if s == v {
            return (self.marks[s] == 1).then_some(Undo::Closed);
        }
        let total = self.marks[s] + self.marks[v];
        if total > 1 {
            return None;
        }
        let e = self.end_of[v];
        let undo = Undo::Merged {
            s,
            old_end: self.end_of[s],
            e,
            old_start: self.start_of[e],
            old_marks: self.marks[s],
        };
        self.end_of[s] = e;
        self.start_of[e] = s;
        self.marks[s] = total;
        Some(undo)
    }

    fn unlink(&mut self, undo: Undo) {
        if let Undo::Merged {
            s,
            old_end,
            e,
            old_start,
            old_marks,
        } = undo
        {
            self.end_of[s] = old_end;
            self.start_of[e] = old_start;
            self.marks[s] = old_marks;
        }
    }
}

/// Standard fixed-point-free complements of size `m`.
fn complements(m: usize) -> Vec<Partition> {
    if m == 0 {
        return vec![Partition::empty()];
    }
    partitions(m, 2)
}

fn joined(alpha: &Partition, rho: &Partition) -> Vec<usize> {
    alpha.parts().iter().chain(rho.parts()).copied().collect()
}

/// `(m, ρ)` pairs with `ℓ(α) + ℓ(ρ) + n − m = χ`, using `m ≤ 2(n + ℓ(α) − χ)`.
fn complement_pairs(alpha: &Partition, chi: i64) -> Vec<(usize, Partition)> {
    let n = alpha.weight() as i64;
    let l = alpha.len() as i64;
    let m_max = 2 * (n + l - chi);
    if m_max < 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for m in 0..=m_max as usize {
        for rho in complements(m) {
            if l + rho.len() as i64 + n - m as i64 == chi {
                out.push((m, rho));
            }
        }
    }
    out
}

fn rational(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// A factorization `Π = τ₁τ₂` of `Π = πρ` in `S_{n+m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitaryFactorization {
    pub m: usize,
    pub rho: Partition,
    pub target: Permutation,
    pub tau1: Permutation,
    pub tau2: Permutation,
    pub chi: i64,
}

impl Serialize for UnitaryFactorization {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("UnitaryFactorization", 6)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("rho", &self.rho)?;
        st.serialize_field("Pi", &self.target)?;
        st.serialize_field("tau1", &self.tau1)?;
        st.serialize_field("tau2", &self.tau2)?;
        st.serialize_field("chi", &self.chi)?;
        st.end()
    }
}

impl UnitaryFactorization {
    /// Re-checks every defining condition from scratch.
    pub fn verify(&self, n: usize) -> bool {
        let size = n + self.m;
        let Ok(prod) = self.tau1.compose(&self.tau2) else {
            return false;
        };
        let one_mark = |p: &Permutation| {
            p.cycles()
                .iter()
                .all(|c| c.iter().filter(|&&x| x < n).count() == 1)
        };
        let rho_fpf = self.rho.parts().iter().all(|&p| p >= 2) && self.rho.weight() == self.m;
        let chi = self.target.num_cycles() as i64 - size as i64
            + self.tau1.num_cycles() as i64
            + self.tau2.num_cycles() as i64;
        prod == self.target
            && self.target.domain() == Domain::Plain(size)
            && one_mark(&self.tau1)
            && one_mark(&self.tau2)
            && rho_fpf
            && chi == self.chi
    }
}

/// Cycles of `Π` on plain labels and which of them the search has reached.
///
/// A label is offered as a fresh value only if it is the first label of the
/// first unreached cycle of its length; every other unreached label lies in
/// the same orbit of the centralizer of the unreached part, which acts freely
/// on complete configurations.
#[derive(Clone)]
struct Reach {
    cycle_of: Vec<usize>,
    first: Vec<usize>,
    len: Vec<usize>,
    reached: Vec<bool>,
}

impl Reach {
    fn new(target: &[usize], n: usize) -> Self {
        let size = target.len();
        let mut cycle_of = vec![UNSET; size];
        let (mut first, mut len, mut reached) = (Vec::new(), Vec::new(), Vec::new());
        for start in 0..size {
            if cycle_of[start] != UNSET {
                continue;
            }
            let c = first.len();
            let (mut x, mut l) = (start, 0);
            while cycle_of[x] == UNSET {
                cycle_of[x] = c;
                x = target[x];
                l += 1;
            }
            first.push(start);
            len.push(l);
            reached.push(start < n);
        }
        Reach {
            cycle_of,
            first,
            len,
            reached,
        }
    }

    fn is_reached(&self, x: usize) -> bool {
        self.reached[self.cycle_of[x]]
    }

    fn representative(&self, x: usize) -> bool {
        let c = self.cycle_of[x];
        self.reached[c]
            || (self.first[c] == x
                && (c == 0 || self.len[c - 1] != self.len[c] || self.reached[c - 1]))
    }

    /// Marks the cycle of `x`; returns whether it was new.
    fn reach(&mut self, x: usize) -> bool {
        let c = self.cycle_of[x];
        !std::mem::replace(&mut self.reached[c], true)
    }

    fn release(&mut self, x: usize) {
        self.reached[self.cycle_of[x]] = false;
    }
}

#[derive(Clone)]
struct UnitarySearch<'a> {
    target: &'a [usize],
    /// Only orbit representatives: leaves count maps rather than factorizations.
    orbits: bool,
    tau2: Vec<usize>,
    used: Vec<bool>,
    assigned: usize,
    reach: Reach,
    t1: Paths,
    t2: Paths,
}

impl UnitarySearch<'_> {
    /// The smallest reached label without a `τ₂` value.
    fn next(&self) -> Option<usize> {
        (0..self.target.len()).find(|&x| self.tau2[x] == UNSET && self.reach.is_reached(x))
    }

    fn candidates(&self) -> Vec<usize> {
        (0..self.target.len())
            .filter(|&y| !self.used[y] && (!self.orbits || self.reach.representative(y)))
            .collect()
    }

    fn run(&mut self, sink: &mut dyn FnMut(&[usize])) {
        if self.assigned == self.target.len() {
            sink(&self.tau2);
            return;
        }
        // An unreached remainder would be closed under both factors with no marked label.
        let Some(x) = self.next() else {
            return;
        };
        for y in self.candidates() {
            self.try_assign(x, y, sink);
        }
    }

    fn try_assign(&mut self, x: usize, y: usize, sink: &mut dyn FnMut(&[usize])) {
        let Some(u2) = self.t2.link(x, y) else {
            return;
        };
        // τ₁(y) = Π(x)
        if let Some(u1) = self.t1.link(y, self.target[x]) {
            let fresh = self.reach.reach(y);
            self.used[y] = true;
            self.tau2[x] = y;
            self.assigned += 1;
            self.run(sink);
            self.assigned -= 1;
            self.tau2[x] = UNSET;
            self.used[y] = false;
            if fresh {
                self.reach.release(y);
            }
            self.t1.unlink(u1);
        }
        self.t2.unlink(u2);
    }
}

fn unitary_search(target: &[usize], n: usize, orbits: bool) -> UnitarySearch<'_> {
    let marked: Vec<bool> = (0..target.len()).map(|x| x < n).collect();
    UnitarySearch {
        target,
        orbits,
        tau2: vec![UNSET; target.len()],
        used: vec![false; target.len()],
        assigned: 0,
        reach: Reach::new(target, n),
        t1: Paths::new(&marked),
        t2: Paths::new(&marked),
    }
}

/// Runs the unitary search for one complement, split over the value of
/// `τ₂(1)` so that branches run in parallel; `per_branch` folds each
/// branch, and results are returned in branch order.
fn unitary_branches<T: Send>(
    target: &[usize],
    n: usize,
    orbits: bool,
    per_branch: impl Fn(&mut UnitarySearch<'_>, usize) -> T + Sync,
) -> Vec<T> {
    let root = unitary_search(target, n, orbits);
    root.candidates()
        .into_par_iter()
        .map(|y| {
            let mut search = root.clone();
            per_branch(&mut search, y)
        })
        .collect()
}

fn check_unitary(alpha: &Partition, chi: i64) -> Result<()> {
    if alpha.is_empty() {
        return Err(WgError::InvalidPartition(
            "enumeration needs a non-empty partition".into(),
        ));
    }
    if chi.rem_euclid(2) != 0 {
        return Err(WgError::OddCharacteristic(chi));
    }
    if let Some((m, _)) = complement_pairs(alpha, chi).last() {
        let size = alpha.weight() + m;
        if size > UNITARY_MAX_LABELS {
            return Err(WgError::BoundExceeded {
                what: "unitary search labels n + m",
                value: size as i64,
                max: UNITARY_MAX_LABELS as i64,
            });
        }
    }
    Ok(())
}

/// All of `F(π, χ)` for `π` the standard permutation of cycletype `α`,
/// sorted by `(m, ρ, τ₁, τ₂)`.
pub fn enumerate_unitary(alpha: &Partition, chi: i64) -> Result<Vec<UnitaryFactorization>> {
    check_unitary(alpha, chi)?;
    let n = alpha.weight();
    let mut out = Vec::new();
    for (m, rho) in complement_pairs(alpha, chi) {
        let target = standard_images(&joined(alpha, &rho), 0);
        let domain = Domain::Plain(n + m);
        let pi_big = Permutation::from_images(domain, target.clone())?;
        let found: Vec<Vec<Vec<usize>>> = unitary_branches(&target, n, false, |search, y| {
            let mut v = Vec::new();
            search.try_assign(0, y, &mut |tau2| v.push(tau2.to_vec()));
            v
        });
        let mut records: Vec<UnitaryFactorization> = found
            .into_iter()
            .flatten()
            .map(|tau2| {
                let tau2 = Permutation::from_images(domain, tau2).expect("bijection");
                let tau1 = pi_big.compose(&tau2.inverse()).expect("same domain");
                UnitaryFactorization {
                    m,
                    rho: rho.clone(),
                    target: pi_big.clone(),
                    tau1,
                    tau2,
                    chi,
                }
            })
            .collect();
        records.sort_by(|a, b| {
            (a.tau1.images(), a.tau2.images()).cmp(&(b.tau1.images(), b.tau2.images()))
        });
        out.extend(records);
    }
    Ok(out)
}

/// Map counts of `F(π, χ)` grouped by complement type, without
/// materializing the factorizations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitarySummary {
    pub partition: Partition,
    pub chi: i64,
    /// Factorizations per complement cycletype divided by `z_ρ`.
    pub maps: BTreeMap<Partition, u64>,
}

impl UnitarySummary {
    /// Number of factorizations per complement cycletype.
    pub fn records(&self) -> BTreeMap<Partition, u64> {
        self.maps
            .iter()
            .map(|(rho, &c)| (rho.clone(), c * rho.z_u64()))
            .collect()
    }

    pub fn total_records(&self) -> u64 {
        self.records().values().sum()
    }

    /// `S_χ = Σ_f (-1)^{ℓ(ρ)} / z_ρ`.
    pub fn coefficient(&self) -> BigRational {
        let total: i64 = self
            .maps
            .iter()
            .map(|(rho, &c)| {
                if rho.len() % 2 == 0 {
                    c as i64
                } else {
                    -(c as i64)
                }
            })
            .sum();
        rational(total)
    }

    /// `Σ_f (-1)^{ℓ(Π)} / z_ρ = (-1)^{ℓ(α)} S_χ`.
    pub fn sum_rule_value(&self) -> BigRational {
        if self.partition.len().is_multiple_of(2) {
            self.coefficient()
        } else {
            -self.coefficient()
        }
    }
}

/// Divides per-complement record counts by `z_ρ`, failing if any is not a
/// multiple.
pub fn census_of(records: &BTreeMap<Partition, u64>) -> Result<BTreeMap<Partition, u64>> {
    records
        .iter()
        .filter(|(_, &c)| c > 0)
        .map(|(rho, &c)| {
            let z = rho.z_u64();
            if c % z != 0 {
                return Err(WgError::NonIntegerCensus {
                    complement: rho.to_string(),
                    count: c,
                    z,
                });
            }
            Ok((rho.clone(), c / z))
        })
        .collect()
}

pub fn unitary_summary(alpha: &Partition, chi: i64) -> Result<UnitarySummary> {
    check_unitary(alpha, chi)?;
    let n = alpha.weight();
    let mut maps = BTreeMap::new();
    for (_, rho) in complement_pairs(alpha, chi) {
        let target = standard_images(&joined(alpha, &rho), 0);
        let c: u64 = unitary_branches(&target, n, true, |search, y| {
            let mut c = 0u64;
            search.try_assign(0, y, &mut |_| c += 1);
            c
        })
        .into_iter()
        .sum();
        if c > 0 {
            maps.insert(rho, c);
        }
    }
    Ok(UnitarySummary {
        partition: alpha.clone(),
        chi,
        maps,
    })
}

/// `S_χ = Σ_{f ∈ F(π,χ)} (-1)^{ℓ(ρ)} / z_ρ`.
pub fn theorem2_coefficient(alpha: &Partition, chi: i64) -> Result<BigRational> {
    Ok(unitary_summary(alpha, chi)?.coefficient())
}

pub fn unitary_map_census(alpha: &Partition, chi: i64) -> Result<BTreeMap<Partition, u64>> {
    Ok(unitary_summary(alpha, chi)?.maps)
}

/// Largest Euler characteristic that can occur: `n + ℓ(α)` (at `m = 0`).
pub fn max_chi(alpha: &Partition) -> i64 {
    (alpha.weight() + alpha.len()) as i64
}

/// `(-1)^{ℓ(α)} N^{-(2n+ℓ(α))} Σ_{χ ≥ χ_min} N^χ Σ_f (-1)^{ℓ(Π)}/z_ρ`, which
/// is `N^{-(2n+ℓ(α))} Σ N^χ S_χ`, truncated at `N^{-(2n + ℓ(α) - χ_min)}`.
pub fn theorem1_series(alpha: &Partition, chi_min: i64) -> Result<LaurentSeries> {
    let base = (2 * alpha.weight() + alpha.len()) as i64;
    let mut terms = BTreeMap::new();
    let mut chi = max_chi(alpha);
    while chi >= chi_min {
        if chi.rem_euclid(2) == 0 {
            let s = theorem2_coefficient(alpha, chi)?;
            terms.insert(base - chi, s);
        }
        chi -= 1;
    }
    Ok(LaurentSeries::from_terms(&terms, base - chi_min))
}

/// A pair `(Π, θ)` of `NF(β, χ)` together with the derived factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalConfiguration {
    pub m: usize,
    pub rho: Partition,
    pub target: Permutation,
    pub theta: Permutation,
    pub f1: Permutation,
    pub f2: Permutation,
    /// `ℓ(Π) − (n+m) + (ℓ(f₁)+ℓ(f₂))/2`.
    pub chi: i64,
    /// `ℓ(Π) − m − n + ℓ(f₁) + ℓ(f₂)`, kept for comparison.
    pub chi_literal: i64,
}

impl Serialize for OrthogonalConfiguration {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("OrthogonalConfiguration", 8)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("rho", &self.rho)?;
        st.serialize_field("Pi", &self.target)?;
        st.serialize_field("theta", &self.theta)?;
        st.serialize_field("f1", &self.f1)?;
        st.serialize_field("f2", &self.f2)?;
        st.serialize_field("chi", &self.chi)?;
        st.serialize_field("chi_literal", &self.chi_literal)?;
        st.end()
    }
}

/// `p₁ = ∏_a (a â)` over `Domain::Hatted(size)`.
pub fn p1_images(size: usize) -> Vec<usize> {
    (0..2 * size)
        .map(|i| if i < size { i + size } else { i - size })
        .collect()
}

/// `p₂ = ∏_a (â Π(a))` over `Domain::Hatted(size)`, for `Π` on plain labels.
pub fn p2_images(pi_big: &[usize]) -> Vec<usize> {
    let size = pi_big.len();
    let mut p2 = vec![UNSET; 2 * size];
    for a in 0..size {
        p2[a + size] = pi_big[a];
        p2[pi_big[a]] = a + size;
    }
    p2
}

impl OrthogonalConfiguration {
    /// Re-checks every defining condition from scratch.
    pub fn verify(&self, n: usize) -> bool {
        let size = n + self.m;
        let domain = Domain::Hatted(size);
        let p1 = Permutation::from_images_unchecked(domain, p1_images(size));
        let p2 = Permutation::from_images_unchecked(domain, p2_images(self.target.images()));
        let Ok(pi_hat) = self.target.embed(domain).and_then(|t| t.compose(&t.hat()?)) else {
            return false;
        };
        let theta_ok = self
            .theta
            .compose(&self.theta)
            .map(|t| t.is_identity())
            .unwrap_or(false)
            && (0..2 * size).all(|i| self.theta.apply_index(i) != i);
        let marked = |x: usize| x < n || (x >= size && x < size + n);
        let one_mark = |p: &Permutation| {
            p.cycles()
                .iter()
                .all(|c| c.iter().filter(|&&x| marked(x)).count() == 1)
        };
        let f1_ok = self.theta.compose(&p1).ok() == Some(self.f1.clone());
        let f2_ok = p2.compose(&self.theta).ok() == Some(self.f2.clone());
        let prod_ok = self.f2.compose(&self.f1).ok() == Some(pi_hat.clone())
            && p2.compose(&p1).ok() == Some(pi_hat);
        let palindromic = self.f1.is_palindromic().unwrap_or(false);
        let rho_fpf = self.rho.parts().iter().all(|&p| p >= 2) && self.rho.weight() == self.m;
        let (l1, l2) = (self.f1.num_cycles() as i64, self.f2.num_cycles() as i64);
        let lp = self.target.num_cycles() as i64;
        let chi = lp - size as i64 + (l1 + l2) / 2;
        let literal = lp - self.m as i64 - n as i64 + l1 + l2;
        theta_ok
            && f1_ok
            && f2_ok
            && prod_ok
            && palindromic
            && one_mark(&self.f1)
            && one_mark(&self.f2)
            && rho_fpf
            && l1 == 2 * n as i64
            && l2 == 2 * n as i64
            && chi == self.chi
            && literal == self.chi_literal
    }
}

#[derive(Clone)]
struct OrthogonalSearch {
    size: usize,
    orbits: bool,
    p1: Vec<usize>,
    p2: Vec<usize>,
    theta: Vec<usize>,
    paired: usize,
    reach: Reach,
    f1: Paths,
    f2: Paths,
}

impl OrthogonalSearch {
    fn new(pi_big: &[usize], n: usize, orbits: bool) -> Self {
        let size = pi_big.len();
        let marked: Vec<bool> = (0..2 * size)
            .map(|x| x < n || (x >= size && x < size + n))
            .collect();
        OrthogonalSearch {
            size,
            orbits,
            p1: p1_images(size),
            p2: p2_images(pi_big),
            theta: vec![UNSET; 2 * size],
            paired: 0,
            reach: Reach::new(pi_big, n),
            f1: Paths::new(&marked),
            f2: Paths::new(&marked),
        }
    }

    fn base(&self, x: usize) -> usize {
        x % self.size
    }

    /// The smallest unpaired label whose `Π`-cycle has been reached.
    fn next(&self) -> Option<usize> {
        (0..2 * self.size).find(|&x| self.theta[x] == UNSET && self.reach.is_reached(self.base(x)))
    }

    fn candidates(&self, x: usize) -> Vec<usize> {
        (0..2 * self.size)
            .filter(|&y| {
                y != x
                    && self.theta[y] == UNSET
                    && (!self.orbits || self.reach.representative(self.base(y)))
            })
            .collect()
    }

    fn run(&mut self, sink: &mut dyn FnMut(&[usize])) {
        if self.paired == 2 * self.size {
            sink(&self.theta);
            return;
        }
        let Some(x) = self.next() else {
            return;
        };
        for y in self.candidates(x) {
            self.try_pair(x, y, sink);
        }
    }

    /// Sets `θ = ... (x y) ...`, which fixes `f₁(p₁x) = y`, `f₁(p₁y) = x`,
    /// `f₂(x) = p₂y` and `f₂(y) = p₂x`.
    fn try_pair(&mut self, x: usize, y: usize, sink: &mut dyn FnMut(&[usize])) {
        let (px, py) = (self.p1[x], self.p1[y]);
        let (qx, qy) = (self.p2[x], self.p2[y]);
        let mut undo1 = Vec::with_capacity(2);
        let mut undo2 = Vec::with_capacity(2);
        let ok = 'links: {
            for (u, v) in [(px, y), (py, x)] {
                match self.f1.link(u, v) {
                    Some(un) => undo1.push(un),
                    None => break 'links false,
                }
            }
            for (u, v) in [(x, qy), (y, qx)] {
                match self.f2.link(u, v) {
                    Some(un) => undo2.push(un),
                    None => break 'links false,
                }
            }
            true
        };
        if ok {
            let fresh = self.reach.reach(self.base(y));
            self.theta[x] = y;
            self.theta[y] = x;
            self.paired += 2;
            self.run(sink);
            self.paired -= 2;
            self.theta[x] = UNSET;
            self.theta[y] = UNSET;
            if fresh {
                self.reach.release(self.base(y));
            }
        }
        while let Some(u) = undo2.pop() {
            self.f2.unlink(u);
        }
        while let Some(u) = undo1.pop() {
            self.f1.unlink(u);
        }
    }
}

fn orthogonal_branches<T: Send>(
    pi_big: &[usize],
    n: usize,
    orbits: bool,
    per_branch: impl Fn(&mut OrthogonalSearch, usize) -> T + Sync,
) -> Vec<T> {
    let root = OrthogonalSearch::new(pi_big, n, orbits);
    root.candidates(0)
        .into_par_iter()
        .map(|y| {
            let mut search = root.clone();
            per_branch(&mut search, y)
        })
        .collect()
}

fn check_orthogonal(beta: &Partition, chi: i64) -> Result<()> {
    if beta.is_empty() {
        return Err(WgError::InvalidPartition(
            "enumeration needs a non-empty partition".into(),
        ));
    }
    if let Some((m, _)) = complement_pairs(beta, chi).last() {
        let size = beta.weight() + m;
        if size > ORTHOGONAL_MAX_LABELS {
            return Err(WgError::BoundExceeded {
                what: "orthogonal search labels n + m",
                value: size as i64,
                max: ORTHOGONAL_MAX_LABELS as i64,
            });
        }
    }
    Ok(())
}

/// All of `NF(β, χ)`, sorted by `(m, ρ, θ)`.
pub fn enumerate_orthogonal(beta: &Partition, chi: i64) -> Result<Vec<OrthogonalConfiguration>> {
    check_orthogonal(beta, chi)?;
    let n = beta.weight();
    let mut out = Vec::new();
    for (m, rho) in complement_pairs(beta, chi) {
        let size = n + m;
        let pi_plain = standard_images(&joined(beta, &rho), 0);
        let target = Permutation::from_images(Domain::Plain(size), pi_plain.clone())?;
        let domain = Domain::Hatted(size);
        let p1 = Permutation::from_images_unchecked(domain, p1_images(size));
        let p2 = Permutation::from_images_unchecked(domain, p2_images(&pi_plain));
        let found: Vec<Vec<Vec<usize>>> = orthogonal_branches(&pi_plain, n, false, |search, y| {
            let mut v = Vec::new();
            search.try_pair(0, y, &mut |theta| v.push(theta.to_vec()));
            v
        });
        let mut records: Vec<OrthogonalConfiguration> = found
            .into_iter()
            .flatten()
            .map(|theta| {
                let theta = Permutation::from_images_unchecked(domain, theta);
                let f1 = theta.compose(&p1).expect("same domain");
                let f2 = p2.compose(&theta).expect("same domain");
                let (l1, l2) = (f1.num_cycles() as i64, f2.num_cycles() as i64);
                let lp = target.num_cycles() as i64;
                OrthogonalConfiguration {
                    m,
                    rho: rho.clone(),
                    target: target.clone(),
                    theta,
                    chi: lp - size as i64 + (l1 + l2) / 2,
                    chi_literal: lp - m as i64 - n as i64 + l1 + l2,
                    f1,
                    f2,
                }
            })
            .collect();
        records.sort_by(|a, b| a.theta.images().cmp(b.theta.images()));
        out.extend(records);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrthogonalSummary {
    pub partition: Partition,
    pub chi: i64,
    /// `(Π, θ)` pairs per complement cycletype divided by `z_ρ`.
    pub maps: BTreeMap<Partition, u64>,
}

impl OrthogonalSummary {
    /// Number of `(Π, θ)` pairs per complement cycletype.
    pub fn records(&self) -> BTreeMap<Partition, u64> {
        self.maps
            .iter()
            .map(|(rho, &c)| (rho.clone(), c * rho.z_u64()))
            .collect()
    }

    pub fn total_records(&self) -> u64 {
        self.records().values().sum()
    }

    pub fn total_maps(&self) -> u64 {
        self.maps.values().sum()
    }

    /// Maps counted up to the local orientation of each internal vertex:
    /// `maps` divided further by `2^{ℓ(ρ)}`.
    pub fn vertex_flip_census(&self) -> Result<BTreeMap<Partition, u64>> {
        self.maps
            .iter()
            .map(|(rho, &c)| {
                let flips = 1u64 << rho.len();
                if c % flips != 0 {
                    return Err(WgError::NonIntegerCensus {
                        complement: rho.to_string(),
                        count: c * rho.z_u64(),
                        z: rho.z_u64() * flips,
                    });
                }
                Ok((rho.clone(), c / flips))
            })
            .collect()
    }

    /// `T_χ = Σ (1/z_ρ)(-1/2)^{ℓ(Π)}`.
    pub fn coefficient(&self) -> BigRational {
        let half = -BigRational::new(BigInt::one(), BigInt::from(2));
        self.maps
            .iter()
            .map(|(rho, &c)| {
                let l = self.partition.len() + rho.len();
                rational(c as i64) * num_traits::pow(half.clone(), l)
            })
            .fold(BigRational::zero(), |a, b| a + b)
    }
}

pub fn orthogonal_summary(beta: &Partition, chi: i64) -> Result<OrthogonalSummary> {
    check_orthogonal(beta, chi)?;
    let n = beta.weight();
    let mut maps = BTreeMap::new();
    for (_, rho) in complement_pairs(beta, chi) {
        let pi_plain = standard_images(&joined(beta, &rho), 0);
        let c: u64 = orthogonal_branches(&pi_plain, n, true, |search, y| {
            let mut c = 0u64;
            search.try_pair(0, y, &mut |_| c += 1);
            c
        })
        .into_iter()
        .sum();
        if c > 0 {
            maps.insert(rho, c);
        }
    }
    Ok(OrthogonalSummary {
        partition: beta.clone(),
        chi,
        maps,
    })
}

pub fn theorem4_coefficient(beta: &Partition, chi: i64) -> Result<BigRational> {
    Ok(orthogonal_summary(beta, chi)?.coefficient())
}

pub fn orthogonal_map_census(beta: &Partition, chi: i64) -> Result<BTreeMap<Partition, u64>> {
    Ok(orthogonal_summary(beta, chi)?.maps)
}

/// `(-2)^{ℓ(β)} N^{-(2n+ℓ(β))} Σ_{χ ≥ χ_min} N^χ T_χ`, truncated at
/// `N^{-(2n + ℓ(β) - χ_min)}`.
pub fn theorem3_series(beta: &Partition, chi_min: i64) -> Result<LaurentSeries> {
    let base = (2 * beta.weight() + beta.len()) as i64;
    let prefactor = num_traits::pow(rational(-2), beta.len());
    let mut terms = BTreeMap::new();
    let mut chi = max_chi(beta);
    while chi >= chi_min {
        terms.insert(base - chi, theorem4_coefficient(beta, chi)? * &prefactor);
        chi -= 1;
    }
    Ok(LaurentSeries::from_terms(&terms, base - chi_min))
}
