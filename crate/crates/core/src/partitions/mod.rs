//! Partition combinatorics: Littlewood-Richardson coefficients, tensor
//! products of unitary-group types, the Cauchy and Sym(∧²) decompositions,
//! GL(2s) -> Sp(2s) branching, induced-character K-type tables, and the Weyl
//! dimension formula. All coefficients are exact integers; the LR and
//! branching routines are memoized process-wide so the optional on-disk
//! cache can feed them.

mod branching;
pub mod cache;

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

pub use branching::gl_to_sp;

/// Integer partition: weakly decreasing positive parts, trailing zeros
/// trimmed away.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Partition(Vec<i64>);

impl TryFrom<Vec<i64>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<i64>) -> Result<Self, Error> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<i64> {
    fn from(p: Partition) -> Vec<i64> {
        p.0
    }
}

impl Partition {
    pub fn new(mut parts: Vec<i64>) -> Result<Self, Error> {
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.iter().any(|&p| p < 0) {
            return Err(Error::InvalidWeight(format!("{parts:?} is not a partition")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(vec![])
    }

    /// Reads a dominant non-negative weight as a partition; `None` when the
    /// coordinates increase somewhere or dip below zero.
    pub fn from_coords(coords: &[i64]) -> Option<Self> {
        Partition::new(coords.to_vec()).ok()
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn size(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part at `i`, zero past the end.
    pub fn part(&self, i: usize) -> i64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn padded(&self, n: usize) -> Vec<i64> {
        assert!(self.len() <= n, "partition {self} longer than pad width {n}");
        let mut v = self.0.clone();
        v.resize(n, 0);
        v
    }

    pub fn contains(&self, other: &Partition) -> bool {
        (0..other.len()).all(|i| self.part(i) >= other.part(i))
    }

    pub fn conjugate(&self) -> Partition {
        let rows = self.part(0);
        let cols: Vec<i64> =
            (0..rows).map(|c| self.0.iter().filter(|&&p| p > c).count() as i64).collect();
        Partition(cols)
    }

    /// Comma-separated text form used by the on-disk cache; the empty
    /// partition is the empty string.
    pub fn text(&self) -> String {
        self.0.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
    }

    pub fn from_text(s: &str) -> Result<Self, Error> {
        if s.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.text())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// All partitions of `d` with at most `max_len` parts, each at most
/// `max_part`.
pub fn partitions_of(d: i64, max_len: usize, max_part: i64) -> Vec<Partition> {
    fn rec(d: i64, slots: usize, cap: i64, buf: &mut Vec<i64>, out: &mut Vec<Partition>) {
        if d == 0 {
            out.push(Partition(buf.clone()));
            return;
        }
        if slots == 0 || cap == 0 {
            return;
        }
        let hi = cap.min(d);
        for p in (1..=hi).rev() {
            buf.push(p);
            rec(d - p, slots - 1, p, buf, out);
            buf.pop();
        }
    }
    let mut out = Vec::new();
    if d >= 0 {
        rec(d, max_len, max_part, &mut Vec::new(), &mut out);
    }
    out
}

type KostkaKey = (Vec<i64>, Vec<i64>);

thread_local! {
    static KOSTKA_MEMO: RefCell<HashMap<KostkaKey, i64>> = RefCell::new(HashMap::new());
}

/// Weight multiplicity of the GL irreducible with highest weight `lam` at a
/// weight with sorted content `mu`: the Kostka number K_{lam,mu}, computed by
/// peeling horizontal strips.
pub fn gl_weight_multiplicity(lam: &Partition, mu: &Partition) -> i64 {
    if lam.size() != mu.size() {
        return 0;
    }
    kostka_rec(lam.parts(), mu.parts())
}

fn kostka_rec(lam: &[i64], mu: &[i64]) -> i64 {
    if mu.is_empty() {
        return i64::from(lam.is_empty());
    }
    if lam.len() > mu.len() {
        return 0;
    }
    let key = (lam.to_vec(), mu.to_vec());
    if let Some(v) = KOSTKA_MEMO.with(|m| m.borrow().get(&key).copied()) {
        return v;
    }
    let strip = mu[mu.len() - 1];
    let rest = &mu[..mu.len() - 1];
    let mut total = 0;
    // kappa interleaves lam with |lam| - |kappa| = strip.
    let mut kappa: Vec<i64> = Vec::with_capacity(lam.len());
    fn strips(lam: &[i64], i: usize, left: i64, kappa: &mut Vec<i64>, rest: &[i64], tot: &mut i64) {
        if i == lam.len() {
            if left == 0 {
                let mut k = kappa.clone();
                while k.last() == Some(&0) {
                    k.pop();
                }
                *tot += kostka_rec(&k, rest);
            }
            return;
        }
        let lo = if i + 1 < lam.len() { lam[i + 1] } else { 0 };
        let hi = lam[i].min(if i == 0 { i64::MAX } else { kappa[i - 1] });
        for v in lo..=hi {
            let removed = lam[i] - v;
            if removed > left {
                continue;
            }
            kappa.push(v);
            strips(lam, i + 1, left - removed, kappa, rest, tot);
            kappa.pop();
        }
    }
    strips(lam, 0, strip, &mut kappa, rest, &mut total);
    KOSTKA_MEMO.with(|m| m.borrow_mut().insert(key, total));
    total
}

/// Littlewood-Richardson coefficient c^lam_{mu,nu}: the number of
/// semistandard lattice fillings of lam/mu with content nu. Zero when the
/// sizes do not add up.
pub fn lr_coeff(lam: &Partition, mu: &Partition, nu: &Partition) -> i64 {
    if lam.size() != mu.size() + nu.size() || !lam.contains(mu) {
        return 0;
    }
    if let Some(v) = cache::lr_lookup(lam, mu, nu) {
        return v;
    }
    let v = lr_count(lam, mu, nu);
    cache::lr_store(lam, mu, nu, v);
    v
}

fn lr_count(lam: &Partition, mu: &Partition, nu: &Partition) -> i64 {
    // Cells in reverse reading order: rows top to bottom, right to left, so
    // the lattice condition is a running prefix check.
    let rows = lam.len();
    let mut cells: Vec<(usize, i64)> = Vec::new();
    for row in 0..rows {
        for col in (mu.part(row)..lam.part(row)).rev() {
            cells.push((row, col));
        }
    }
    let values = nu.len();
    let mut grid: Vec<BTreeMap<i64, usize>> = vec![BTreeMap::new(); rows];
    let mut counts = vec![0i64; values + 1];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        cells: &[(usize, i64)],
        idx: usize,
        lam: &Partition,
        mu: &Partition,
        nu: &Partition,
        grid: &mut Vec<BTreeMap<i64, usize>>,
        counts: &mut Vec<i64>,
        values: usize,
    ) -> i64 {
        if idx == cells.len() {
            return 1;
        }
        let (row, col) = cells[idx];
        let right = if col + 1 < lam.part(row) { grid[row].get(&(col + 1)).copied() } else { None };
        let above = if row > 0 && col >= mu.part(row - 1) && col < lam.part(row - 1) {
            grid[row - 1].get(&col).copied()
        } else {
            None
        };
        let mut total = 0;
        let lo = above.map_or(1, |a| a + 1); // strictly larger than the cell above
        let hi = right.unwrap_or(values); // at most the cell to the right
        for v in lo..=hi.min(values) {
            if counts[v] + 1 > nu.part(v - 1) {
                continue;
            }
            if v >= 2 && counts[v] + 1 > counts[v - 1] {
                continue; // lattice word prefix
            }
            counts[v] += 1;
            grid[row].insert(col, v);
            total += rec(cells, idx + 1, lam, mu, nu, grid, counts, values);
            grid[row].remove(&col);
            counts[v] -= 1;
        }
        total
    }
    rec(&cells, 0, lam, mu, nu, &mut grid, &mut counts, values)
}

/// Decomposition of the U(k) tensor product E_{g1} ⊗ E_{g2} for polynomial
/// dominant weights with at most k rows: map from highest weight to
/// multiplicity, truncated to k rows.
///
/// Enumerates LR fillings by growing the shape one content value at a time
/// (horizontal strips constrained by the lattice prefix condition), so the
/// target shapes never have to be guessed in advance.
pub fn tensor_u(k: usize, g1: &Partition, g2: &Partition) -> BTreeMap<Partition, i64> {
    assert!(g1.len() <= k && g2.len() <= k, "tensor_u weights exceed {k} rows");
    let mut out = BTreeMap::new();
    let mut shape = g1.padded(k);
    grow(&mut shape, g2, 0, None, &mut out);
    out
}

fn grow(
    shape: &mut Vec<i64>,
    content: &Partition,
    v: usize,
    prev: Option<&[i64]>,
    out: &mut BTreeMap<Partition, i64>,
) {
    if v == content.len() {
        let p = Partition::new(shape.clone()).expect("grown shape is a partition");
        *out.entry(p).or_insert(0) += 1;
        return;
    }
    let k = shape.len();
    let before = shape.clone();
    let mut dist = vec![0i64; k];
    place(shape, &before, 0, content.part(v), prev, 0, 0, &mut dist, content, v, out);
}

/// Distribute `left` copies of the current value over rows `row..` as a
/// horizontal strip over `before`, keeping the lattice prefix condition
/// against the previous value's row distribution.
#[allow(clippy::too_many_arguments)]
fn place(
    shape: &mut Vec<i64>,
    before: &[i64],
    row: usize,
    left: i64,
    prev: Option<&[i64]>,
    prev_prefix: i64,
    cur_prefix: i64,
    dist: &mut Vec<i64>,
    content: &Partition,
    v: usize,
    out: &mut BTreeMap<Partition, i64>,
) {
    let k = shape.len();
    if row == k {
        if left == 0 {
            let snapshot = dist.clone();
            grow(shape, content, v + 1, Some(&snapshot), out);
        }
        return;
    }
    let cap_strip = if row == 0 { left } else { before[row - 1] - before[row] };
    let cap_lattice = match prev {
        None => left,
        Some(_) => prev_prefix - cur_prefix,
    };
    let hi = left.min(cap_strip).min(cap_lattice).max(-1);
    for m in 0..=hi {
        dist[row] = m;
        shape[row] = before[row] + m;
        place(
            shape,
            before,
            row + 1,
            left - m,
            prev,
            prev_prefix + prev.map_or(0, |p| p[row]),
            cur_prefix + m,
            dist,
            content,
            v,
            out,
        );
    }
    shape[row] = before[row];
    dist[row] = 0;
}

/// Cauchy decomposition of S^d(std_k ⊗ std_m): the partitions of d with at
/// most min(k,m) rows, each pairing (λ, λ) with multiplicity one.
pub fn sym_cauchy(d: i64, k: usize, m: usize) -> Vec<Partition> {
    partitions_of(d, k.min(m), d)
}

/// Decomposition of S^d(∧² std_k): partitions of 2d with at most k rows
/// whose conjugate has all parts even (rows pair up), multiplicity one.
pub fn sym_wedge2(d: i64, k: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    for mu in partitions_of(d, k / 2, d) {
        let mut doubled = Vec::with_capacity(2 * mu.len());
        for &p in mu.parts() {
            doubled.push(p);
            doubled.push(p);
        }
        out.push(Partition(doubled));
    }
    out.sort();
    out
}

/// Multiplicity of E_gamma in the U(k)-module induced from characters: the
/// iterated LR product of the rectangles (b'_i repeated k_i times). Zero
/// when |gamma| differs from Σ k_i b'_i.
pub fn ind_char_ktypes(blocks: &[(usize, i64)], gamma: &Partition) -> i64 {
    let k: usize = blocks.iter().map(|b| b.0).sum();
    if gamma.len() > k || gamma.size() != blocks.iter().map(|&(ki, bi)| ki as i64 * bi).sum::<i64>()
    {
        return 0;
    }
    rectangle_product(blocks, k).get(gamma).copied().unwrap_or(0)
}

/// Full K-type table of the induced-from-characters module: iterated tensor
/// of rectangles inside U(k).
pub fn rectangle_product(blocks: &[(usize, i64)], k: usize) -> BTreeMap<Partition, i64> {
    let mut table = BTreeMap::new();
    table.insert(Partition::empty(), 1i64);
    for &(ki, bi) in blocks {
        assert!(bi >= 0, "rectangle width must be non-negative");
        if bi == 0 {
            continue;
        }
        let rect = Partition(vec![bi; ki]);
        let mut next: BTreeMap<Partition, i64> = BTreeMap::new();
        for (gamma, mult) in &table {
            for (delta, c) in tensor_u(k, gamma, &rect) {
                *next.entry(delta).or_insert(0) += mult * c;
            }
        }
        table = next;
    }
    table
}

/// Classical group label for the dimension formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassicalGroup {
    /// GL(k, C); highest weights are weakly decreasing integer vectors.
    Gl(usize),
    /// Sp(2s, C) of rank s; highest weights are partitions with <= s parts.
    Sp(usize),
}

/// Weyl dimension formula, exact.
pub fn weyl_dim(group: ClassicalGroup, hw: &[i64]) -> i64 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    fn acc(num: &mut i128, den: &mut i128, n: i128, d: i128) {
        *num *= n;
        *den *= d;
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i128;
        *num /= g;
        *den /= g;
    }
    match group {
        ClassicalGroup::Gl(k) => {
            assert!(hw.len() <= k, "weight longer than GL rank");
            assert!(hw.windows(2).all(|w| w[0] >= w[1]), "weight not dominant");
            let l = |i: usize| *hw.get(i).unwrap_or(&0) as i128;
            for i in 0..k {
                for j in i + 1..k {
                    acc(&mut num, &mut den, l(i) - l(j) + j as i128 - i as i128, j as i128 - i as i128);
                }
            }
        }
        ClassicalGroup::Sp(s) => {
            assert!(hw.len() <= s, "weight longer than Sp rank");
            assert!(
                hw.windows(2).all(|w| w[0] >= w[1]) && hw.last().is_none_or(|&x| x >= 0),
                "weight not dominant"
            );
            let rho = |i: usize| (s - i) as i128;
            let l = |i: usize| *hw.get(i).unwrap_or(&0) as i128 + rho(i);
            for i in 0..s {
                for j in i + 1..s {
                    acc(&mut num, &mut den, l(i) - l(j), rho(i) - rho(j));
                    acc(&mut num, &mut den, l(i) + l(j), rho(i) + rho(j));
                }
                acc(&mut num, &mut den, l(i), rho(i));
            }
        }
    }
    assert_eq!(den.abs(), 1, "Weyl dimension did not reduce to an integer");
    i64::try_from(num * den.signum()).expect("dimension fits i64")
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

/// Table of L∩K-types: map from (U(k) weight, Sp(r) weight) to multiplicity.
/// Keys are stored padded to their full lengths so zero weights compare
/// consistently.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecompTable {
    entries: BTreeMap<(Vec<i64>, Vec<i64>), i64>,
}

impl DecompTable {
    pub fn new() -> Self {
        DecompTable { entries: BTreeMap::new() }
    }

    pub fn add(&mut self, u: Vec<i64>, sp: Vec<i64>, mult: i64) {
        assert!(mult >= 0);
        if mult != 0 {
            *self.entries.entry((u, sp)).or_insert(0) += mult;
        }
    }

    pub fn get(&self, u: &[i64], sp: &[i64]) -> i64 {
        self.entries.get(&(u.to_vec(), sp.to_vec())).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Vec<i64>, Vec<i64>), &i64)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
