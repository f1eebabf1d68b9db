//! The chain calculus: chains, linkage and interlacing, the dictionary
//! between chain sets and induced representations, enumeration of chain
//! decompositions of an infinitesimal character, and FS-scattered
//! enumeration.
//!
//! A chain [C, C-2, ..., c] records the infinitesimal character of one
//! induction factor: an s-chain stands for an A_q(lambda) module of
//! GL(k,H), the u-chain [2r-1, ..., 1] for the trivial representation of
//! GL(r,H).

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::weights::{InfChar, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainKind {
    S,
    U,
}

/// Descending step-2 sequence of positive integers, tagged s or u.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawChain")]
pub struct Chain {
    top: i64,
    bottom: i64,
    kind: ChainKind,
}

#[derive(Deserialize)]
struct RawChain {
    top: i64,
    bottom: i64,
    kind: ChainKind,
}

impl TryFrom<RawChain> for Chain {
    type Error = Error;

    fn try_from(raw: RawChain) -> Result<Self, Error> {
        Chain::new(raw.top, raw.bottom, raw.kind)
    }
}

impl Chain {
    pub fn new(top: i64, bottom: i64, kind: ChainKind) -> Result<Self, Error> {
        if bottom < 1 || top < bottom {
            return Err(Error::InvalidChain(format!(
                "need top >= bottom >= 1, got [{top}, ..., {bottom}]"
            )));
        }
        if (top - bottom) % 2 != 0 {
            return Err(Error::InvalidChain(format!(
                "top {top} and bottom {bottom} differ in parity"
            )));
        }
        match kind {
            // u-chains are unipotent infinitesimal characters: [2r-1,...,1]
            // in the GL(n,H) regime, or the even form [2k,...,2] which only
            // occurs in the third link rule.
            ChainKind::U if bottom > 2 => {
                return Err(Error::InvalidChain(format!(
                    "u-chain must end at 1 (or 2 for the even form), got bottom {bottom}"
                )))
            }
            ChainKind::S => {
                // b = bottom - 1 >= -k holds automatically for positive
                // chains; keep the assertion as a guard on the regime.
                let k = (top - bottom) / 2 + 1;
                assert!(bottom > -k, "s-chain parameter b below the weakly fair bound");
            }
            _ => {}
        }
        Ok(Chain { top, bottom, kind })
    }

    /// s-chain [top, top-2, ..., bottom].
    pub fn span_s(top: i64, bottom: i64) -> Result<Self, Error> {
        Chain::new(top, bottom, ChainKind::S)
    }

    /// The u-chain [2r-1, 2r-3, ..., 1] of the trivial representation of
    /// GL(r,H).
    pub fn unipotent(r: usize) -> Self {
        assert!(r >= 1, "u-chain needs r >= 1");
        Chain { top: 2 * r as i64 - 1, bottom: 1, kind: ChainKind::U }
    }

    /// The even unipotent chain [2k, ..., 4, 2] appearing in the third link
    /// rule (it never occurs in a GL(n,H) chain set).
    pub fn unipotent_even(k: usize) -> Self {
        assert!(k >= 1, "even u-chain needs k >= 1");
        Chain { top: 2 * k as i64, bottom: 2, kind: ChainKind::U }
    }

    pub fn top(&self) -> i64 {
        self.top
    }

    pub fn bottom(&self) -> i64 {
        self.bottom
    }

    pub fn kind(&self) -> ChainKind {
        self.kind
    }

    /// Number of entries; chains are never empty.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        ((self.top - self.bottom) / 2 + 1) as usize
    }

    pub fn entries(&self) -> impl Iterator<Item = i64> + '_ {
        (self.bottom..=self.top).rev().step_by(2)
    }

    pub fn contains(&self, x: i64) -> bool {
        x >= self.bottom && x <= self.top && (x - self.bottom) % 2 == 0
    }

    fn disjoint_from(&self, other: &Chain) -> bool {
        if (self.bottom - other.bottom) % 2 != 0 {
            return true;
        }
        self.top < other.bottom || other.top < self.bottom
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.entries().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]{}", match self.kind {
            ChainKind::S => "s",
            ChainKind::U => "u",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum LinkRule {
    /// A > B > a or B > A > b (partial overlap or nesting of ranges).
    Overlap,
    /// {[2k,...,4,2]_u, [1]_s}, which only occurs for GL(n,R).
    EvenUnipotent,
}

fn link_rule(c1: &Chain, c2: &Chain) -> Option<LinkRule> {
    if !c1.disjoint_from(c2) {
        return None;
    }
    let (a_top, a_bot) = (c1.top, c1.bottom);
    let (b_top, b_bot) = (c2.top, c2.bottom);
    if (a_top > b_top && b_top > a_bot) || (b_top > a_top && a_top > b_bot) {
        return Some(LinkRule::Overlap);
    }
    let special = |u: &Chain, s: &Chain| {
        u.kind == ChainKind::U && u.bottom == 2 && s.kind == ChainKind::S && s.top == 1
    };
    if special(c1, c2) || special(c2, c1) {
        return Some(LinkRule::EvenUnipotent);
    }
    None
}

/// Two chains are linked when their entries are disjoint and their ranges
/// overlap (A > B > a or B > A > b), or they form the special pair
/// {[2k,...,4,2]_u, [1]_s}.
pub fn linked(c1: &Chain, c2: &Chain) -> bool {
    link_rule(c1, c2).is_some()
}

/// A chain set encodes one Dirac-series representation: s-chains in
/// canonical order (descending by top, then bottom) plus at most one
/// u-chain, all entries pairwise disjoint.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawChainSet")]
pub struct ChainSet {
    schains: Vec<Chain>,
    uchain: Option<Chain>,
}

#[derive(Deserialize)]
struct RawChainSet {
    schains: Vec<Chain>,
    uchain: Option<Chain>,
}

impl TryFrom<RawChainSet> for ChainSet {
    type Error = Error;

    fn try_from(raw: RawChainSet) -> Result<Self, Error> {
        ChainSet::new(raw.schains, raw.uchain)
    }
}

impl ChainSet {
    pub fn new(mut schains: Vec<Chain>, uchain: Option<Chain>) -> Result<Self, Error> {
        if let Some(bad) = schains.iter().find(|c| c.kind != ChainKind::S) {
            return Err(Error::InvalidChainSet(format!("{bad} listed among s-chains")));
        }
        if let Some(u) = &uchain {
            if u.kind != ChainKind::U {
                return Err(Error::InvalidChainSet(format!("{u} is not a u-chain")));
            }
            if u.bottom != 1 {
                return Err(Error::InvalidChainSet(format!(
                    "u-chain must be [2r-1,...,1] in the GL(n,H) regime, got {u}"
                )));
            }
        }
        schains.sort_by(|a, b| b.top.cmp(&a.top).then(b.bottom.cmp(&a.bottom)));
        let all: Vec<&Chain> = schains.iter().chain(uchain.as_ref()).collect();
        let mut seen = BTreeSet::new();
        for c in &all {
            for e in c.entries() {
                if !seen.insert(e) {
                    return Err(Error::InvalidChainSet(format!(
                        "entry {e} appears in more than one chain"
                    )));
                }
            }
        }
        Ok(ChainSet { schains, uchain })
    }

    pub fn schains(&self) -> &[Chain] {
        &self.schains
    }

    pub fn uchain(&self) -> Option<&Chain> {
        self.uchain.as_ref()
    }

    pub fn chains(&self) -> impl Iterator<Item = &Chain> {
        self.schains.iter().chain(self.uchain.as_ref())
    }

    /// Total number of entries; the rank n of the group.
    pub fn rank(&self) -> usize {
        self.chains().map(Chain::len).sum()
    }

    /// All entries, sorted strictly descending: the infinitesimal character.
    pub fn infchar(&self) -> InfChar {
        let mut entries: Vec<i64> = self.chains().flat_map(|c| c.entries()).collect();
        entries.sort_unstable_by_key(|&x| -x);
        InfChar::new(Weight::new(entries)).expect("chain set entries form a regular character")
    }
}

impl fmt::Display for ChainSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for c in self.chains() {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

/// Whether the link graph on the chains is connected. A single chain (and
/// the empty set) counts as interlaced.
pub fn interlaced(cs: &ChainSet) -> bool {
    let all: Vec<&Chain> = cs.chains().collect();
    if all.len() <= 1 {
        return true;
    }
    let mut seen = vec![false; all.len()];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(i) = stack.pop() {
        for j in 0..all.len() {
            if !seen[j] {
                if let Some(rule) = link_rule(all[i], all[j]) {
                    // The even-unipotent rule cannot fire on GL(n,H) chain
                    // sets; assert rather than assume.
                    assert_ne!(
                        rule,
                        LinkRule::EvenUnipotent,
                        "even unipotent link inside a GL(n,H) chain set {cs}"
                    );
                    seen[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
    }
    count == all.len()
}

/// Interlaced with exactly one u-chain.
pub fn u_interlaced(cs: &ChainSet) -> bool {
    cs.uchain.is_some() && interlaced(cs)
}

/// Induction data for one Dirac-series representation: A_q(lambda) factors
/// (k_i, b_i) plus the rank r of the trivial factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawRepParams")]
pub struct RepParams {
    #[serde(rename = "aq")]
    pub aq_factors: Vec<AqFactor>,
    pub r: usize,
}

#[derive(Deserialize)]
struct RawRepParams {
    aq: Vec<AqFactor>,
    r: usize,
}

impl TryFrom<RawRepParams> for RepParams {
    type Error = Error;

    fn try_from(raw: RawRepParams) -> Result<Self, Error> {
        RepParams::new(raw.aq, raw.r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AqFactor {
    pub k: usize,
    pub b: i64,
}

impl RepParams {
    pub fn new(aq_factors: Vec<AqFactor>, r: usize) -> Result<Self, Error> {
        for f in &aq_factors {
            if f.k == 0 {
                return Err(Error::InvalidRepParams("factor with k = 0".into()));
            }
            if f.b < 0 {
                return Err(Error::InvalidRepParams(format!(
                    "factor (k={}, b={}) leaves the Dirac regime (b < 0)",
                    f.k, f.b
                )));
            }
        }
        Ok(RepParams { aq_factors, r })
    }

    /// Rank of the ambient group: sum of the k_i plus r.
    pub fn rank(&self) -> usize {
        self.aq_factors.iter().map(|f| f.k).sum::<usize>() + self.r
    }
}

/// Chains of an induced representation: A_i = [b_i + 2k_i - 1, ..., b_i+1]_s
/// per factor and U = [2r-1, ..., 1]_u for the trivial factor.
pub fn chains_of_rep(p: &RepParams) -> Result<ChainSet, Error> {
    let schains = p
        .aq_factors
        .iter()
        .map(|f| Chain::span_s(f.b + 2 * f.k as i64 - 1, f.b + 1))
        .collect::<Result<Vec<_>, _>>()?;
    let uchain = (p.r > 0).then(|| Chain::unipotent(p.r));
    ChainSet::new(schains, uchain)
}

/// Inverse dictionary: k_i from chain lengths, b_i from bottoms, r from the
/// u-chain.
pub fn rep_of_chains(cs: &ChainSet) -> RepParams {
    let aq_factors = cs
        .schains
        .iter()
        .map(|c| AqFactor { k: c.len(), b: c.bottom - 1 })
        .collect();
    let r = cs.uchain.as_ref().map_or(0, Chain::len);
    RepParams { aq_factors, r }
}

/// All partitions of the entries of `l` into chains, with at most one
/// u-chain (necessarily [2r-1, ..., 1]). Canonically ordered, duplicate-free.
pub fn decompositions(l: &InfChar) -> Vec<ChainSet> {
    let entries: Vec<i64> = l.restricted().coords().to_vec();
    let mut out = Vec::new();
    let mut open: Vec<(i64, i64)> = Vec::new();
    rec_decompose(&entries, 0, &mut open, &mut out);
    out.sort();
    debug_assert!(out.windows(2).all(|w| w[0] != w[1]));
    out
}

fn rec_decompose(entries: &[i64], i: usize, open: &mut Vec<(i64, i64)>, out: &mut Vec<ChainSet>) {
    if i == entries.len() {
        emit_kind_variants(open, out);
        return;
    }
    let e = entries[i];
    // Entries arrive strictly descending, so at most one open chain can be
    // extended by e (bottoms are distinct).
    if let Some(j) = open.iter().position(|c| c.1 == e + 2) {
        open[j].1 = e;
        rec_decompose(entries, i + 1, open, out);
        open[j].1 = e + 2;
    }
    open.push((e, e));
    rec_decompose(entries, i + 1, open, out);
    open.pop();
}

fn emit_kind_variants(parts: &[(i64, i64)], out: &mut Vec<ChainSet>) {
    let all_s: Vec<Chain> = parts
        .iter()
        .map(|&(top, bottom)| Chain::span_s(top, bottom).expect("runs are valid chains"))
        .collect();
    out.push(ChainSet::new(all_s.clone(), None).expect("partition entries are disjoint"));
    // The part ending at 1 is exactly [2r-1,...,1] and may serve as the
    // u-chain.
    if let Some(j) = parts.iter().position(|&(_, bottom)| bottom == 1) {
        let mut schains = all_s;
        let u = schains.remove(j);
        let uchain = Chain::unipotent(u.len());
        out.push(ChainSet::new(schains, Some(uchain)).expect("partition entries are disjoint"));
    }
}

/// All u-interlaced chain sets with `n` total entries: the FS-scattered
/// representations of GL(n,H). The search scans entry sets inside
/// {1, ..., 2n+1} and asserts that nothing enumerated tops 2n-1, turning the
/// bound into a checked fact on every run.
pub fn enumerate_fs_scattered(n: usize) -> Result<Vec<ChainSet>, Error> {
    if n < 2 {
        return Err(Error::Unsupported(format!(
            "FS-scattered enumeration needs n >= 2, got {n}"
        )));
    }
    let bound = 2 * n as i64 + 1;
    let mut out = Vec::new();
    // Any u-interlaced set contains the u-chain's lowest entry 1.
    let mut subset = vec![1i64];
    scan_entry_sets(2, bound, n, &mut subset, &mut out);
    for cs in &out {
        let top = cs.chains().map(Chain::top).max().unwrap_or(0);
        if top > 2 * n as i64 - 1 {
            return Err(Error::TheoremViolation(format!(
                "FS-scattered configuration {cs} exceeds the 2n-1 entry bound"
            )));
        }
    }
    out.sort();
    Ok(out)
}

fn scan_entry_sets(lo: i64, hi: i64, n: usize, subset: &mut Vec<i64>, out: &mut Vec<ChainSet>) {
    if subset.len() == n {
        let mut entries = subset.clone();
        entries.sort_unstable_by_key(|&x| -x);
        let l = InfChar::new(Weight::new(entries)).expect("distinct positive entries");
        out.extend(decompositions(&l).into_iter().filter(u_interlaced));
        return;
    }
    let need = (n - subset.len()) as i64;
    for v in lo..=hi - need + 1 {
        subset.push(v);
        scan_entry_sets(v + 1, hi, n, subset, out);
        subset.pop();
    }
}
