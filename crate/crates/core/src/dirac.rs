//! The headline computations: the HP condition, spin-lowest-K-type
//! candidates and selection, lowest K-types, the Dirac cohomology weight,
//! FS-scattered classification, and the exhaustive small-rank sweep that
//! checks uniqueness and multiplicity-one empirically.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::blattner;
use crate::chains::{self, ChainSet, RepParams};
use crate::error::Error;
use crate::weights::{is_ktype, prv, rho_c, rho_n, spin_norm_sq, InfChar, Weight};
use crate::weyl;

/// One Dirac-series representation: chain data, induction parameters, and
/// the cached infinitesimal character, mutually consistent by construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiracSeriesRep {
    chains: ChainSet,
    params: RepParams,
    infchar: InfChar,
}

impl DiracSeriesRep {
    pub fn from_chains(chains: ChainSet) -> Self {
        let params = chains::rep_of_chains(&chains);
        let infchar = chains.infchar();
        DiracSeriesRep { chains, params, infchar }
    }

    pub fn from_params(params: RepParams) -> Result<Self, Error> {
        let chains = chains::chains_of_rep(&params)?;
        let infchar = chains.infchar();
        Ok(DiracSeriesRep { chains, params, infchar })
    }

    pub fn chains(&self) -> &ChainSet {
        &self.chains
    }

    pub fn params(&self) -> &RepParams {
        &self.params
    }

    pub fn infchar(&self) -> &InfChar {
        &self.infchar
    }

    pub fn rank(&self) -> usize {
        self.params.rank()
    }
}

/// The combinatorial criterion for contributing to Dirac cohomology:
/// {tau - rho_n} = Lambda|_t - rho_c. Dominance collapses the Weyl-group
/// quantifier to an equality of dominant representatives.
pub fn hp_condition(tau: &Weight, l: &InfChar) -> bool {
    assert_eq!(tau.rank(), l.rank(), "hp_condition: rank mismatch");
    assert!(is_ktype(tau), "hp_condition: {tau} is not a K-type");
    prv(tau) == l.restricted().sub(&rho_c(l.rank()))
}

/// All dominant K-types tau whose PRV component {tau - rho_n} equals
/// Lambda|_t - rho_c: candidates for the spin lowest K-type. Enumerated by
/// signed-arrangement backtracking with prefix-dominance pruning; the output
/// is duplicate-free and sorted descending.
pub fn slkt_candidates(l: &InfChar) -> Vec<Weight> {
    let n = l.rank();
    let target = l.restricted().sub(&rho_c(n));
    let rn = rho_n(n);
    // Multiset of absolute values still to place.
    let mut pool: BTreeMap<i64, usize> = BTreeMap::new();
    for &x in target.coords() {
        *pool.entry(x.abs()).or_insert(0) += 1;
    }
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(n);
    backtrack(&mut pool, &rn, &mut buf, n, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    debug_assert!(out.windows(2).all(|w| w[0] != w[1]));
    out
}

fn backtrack(
    pool: &mut BTreeMap<i64, usize>,
    rn: &Weight,
    buf: &mut Vec<i64>,
    n: usize,
    out: &mut Vec<Weight>,
) {
    if buf.len() == n {
        out.push(Weight::new(buf.clone()));
        return;
    }
    let i = buf.len();
    let offset = rn.coords()[i];
    let cap = buf.last().copied().unwrap_or(i64::MAX);
    // Distinct signed values from the remaining multiset.
    let available: Vec<i64> = pool.iter().filter(|&(_, &c)| c > 0).map(|(&a, _)| a).collect();
    for a in available {
        let mut options = [a, -a];
        options.sort_unstable_by_key(|x| -x);
        let picks = if a == 0 { &options[..1] } else { &options[..] };
        for &v in picks {
            let entry = v + offset;
            if entry < 0 || entry > cap {
                continue;
            }
            *pool.get_mut(&a).unwrap() -= 1;
            buf.push(entry);
            backtrack(pool, rn, buf, n, out);
            buf.pop();
            *pool.get_mut(&a).unwrap() += 1;
        }
    }
}

/// Lowest K-type of the induced representation: b_i + k_i - 1 repeated k_i
/// times per factor, r zeros for the trivial factor, sorted to dominance.
pub fn lowest_ktype(p: &RepParams) -> Weight {
    let mut coords = Vec::with_capacity(p.rank());
    for f in &p.aq_factors {
        coords.extend(std::iter::repeat_n(f.b + f.k as i64 - 1, f.k));
    }
    coords.extend(std::iter::repeat_n(0, p.r));
    coords.sort_unstable_by_key(|&x| -x);
    Weight::new(coords)
}

/// The K~-type highest weight contributed to Dirac cohomology:
/// Lambda|_t - rho_c.
pub fn dirac_cohomology_weight(rep: &DiracSeriesRep) -> Weight {
    rep.infchar.restricted().sub(&rho_c(rep.rank()))
}

/// FS-scattered exactly when the chains are u-interlaced.
pub fn is_fs_scattered(rep: &DiracSeriesRep) -> bool {
    chains::u_interlaced(&rep.chains)
}

/// Spin lowest K-type report: the unique candidate surviving the Blattner
/// filter, its multiplicity, and how many candidates were examined.
#[derive(Clone, Debug, Serialize)]
pub struct SpinLktReport {
    pub rep: DiracSeriesRep,
    pub slkt: Weight,
    pub multiplicity: i64,
    pub candidates_examined: usize,
}

/// Selects the spin lowest K-type of `rep`: every candidate is run through
/// the Blattner formula (no early exit), and existence, uniqueness, and
/// multiplicity one are asserted on the result. Violations come back as
/// errors carrying the offending chain set.
pub fn slkt(rep: &DiracSeriesRep) -> Result<SpinLktReport, Error> {
    let candidates = slkt_candidates(&rep.infchar);
    let mults = candidates
        .par_iter()
        .map(|tau| blattner::ktype_multiplicity(&rep.params, tau))
        .collect::<Result<Vec<_>, _>>()?;
    let survivors: Vec<(&Weight, i64)> =
        candidates.iter().zip(&mults).filter(|&(_, &m)| m >= 1).map(|(t, &m)| (t, m)).collect();
    let describe = || {
        let list: Vec<String> =
            survivors.iter().map(|(t, m)| format!("{t} (multiplicity {m})")).collect();
        format!(
            "chain set {} with infinitesimal character {}: {} survivors among {} candidates [{}]",
            rep.chains,
            rep.infchar,
            survivors.len(),
            candidates.len(),
            list.join(", ")
        )
    };
    if survivors.len() != 1 {
        return Err(Error::TheoremViolation(format!("spin LKT not unique: {}", describe())));
    }
    let (tau, mult) = survivors[0];
    if mult != 1 {
        return Err(Error::TheoremViolation(format!(
            "spin LKT multiplicity {mult} != 1: {}",
            describe()
        )));
    }
    Ok(SpinLktReport {
        rep: rep.clone(),
        slkt: tau.clone(),
        multiplicity: mult,
        candidates_examined: candidates.len(),
    })
}

/// Options for the verification sweep.
#[derive(Clone, Copy, Debug, Default)]
pub struct SweepOptions {
    /// Also check spin-norm equality at the spin LKT and windowed
    /// minimality: no K-type with size <= |slkt| + window and smaller spin
    /// norm has positive multiplicity.
    pub spin_window: Option<i64>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepReport {
    pub n: usize,
    pub max_entry: i64,
    pub infchars: usize,
    pub reps_checked: usize,
    pub max_candidates: usize,
    pub window_types_checked: usize,
}

/// Exhaustive verification over every chain set with `n` total entries
/// drawn from {1..max_entry}: the spin LKT exists, is unique, has
/// multiplicity one, and satisfies the HP condition; optionally also the
/// spin-norm checks. Violations abort with the offending chain set
/// serialized in the error.
pub fn verify_uniqueness_sweep(
    n: usize,
    max_entry: i64,
    options: SweepOptions,
) -> Result<SweepReport, Error> {
    assert!(max_entry >= 0);
    let mut reps: Vec<DiracSeriesRep> = Vec::new();
    let mut infchars = 0usize;
    let mut subset = Vec::with_capacity(n);
    enumerate_infchars(1, max_entry, n, &mut subset, &mut |entries| {
        infchars += 1;
        let l = InfChar::new(Weight::new(entries.to_vec())).expect("strictly decreasing");
        for cs in chains::decompositions(&l) {
            reps.push(DiracSeriesRep::from_chains(cs));
        }
    });
    let outcomes: Vec<Result<(usize, usize), Error>> =
        reps.par_iter().map(|rep| check_rep(rep, options)).collect();
    let mut report = SweepReport {
        n,
        max_entry,
        infchars,
        reps_checked: reps.len(),
        max_candidates: 0,
        window_types_checked: 0,
    };
    // Surface the violation of the earliest representation in enumeration
    // order, so failures are deterministic under any parallelism.
    for outcome in outcomes {
        let (candidates, window_checked) = outcome?;
        report.max_candidates = report.max_candidates.max(candidates);
        report.window_types_checked += window_checked;
    }
    Ok(report)
}

fn enumerate_infchars(
    lo: i64,
    hi: i64,
    want: usize,
    buf: &mut Vec<i64>,
    f: &mut impl FnMut(&[i64]),
) {
    if buf.len() == want {
        // buf is ascending; reverse into the strictly decreasing form.
        let entries: Vec<i64> = buf.iter().rev().copied().collect();
        f(&entries);
        return;
    }
    let need = (want - buf.len()) as i64;
    for v in lo..=hi - need + 1 {
        buf.push(v);
        enumerate_infchars(v + 1, hi, want, buf, f);
        buf.pop();
    }
}

fn check_rep(rep: &DiracSeriesRep, options: SweepOptions) -> Result<(usize, usize), Error> {
    let report = slkt(rep)?;
    if !hp_condition(&report.slkt, &rep.infchar) {
        return Err(Error::TheoremViolation(format!(
            "spin LKT {} of {} fails the HP condition",
            report.slkt, rep.chains
        )));
    }
    let mut window_checked = 0usize;
    if let Some(window) = options.spin_window {
        let lambda_norm = rep.infchar.restricted().norm_sq();
        let slkt_norm = spin_norm_sq(&report.slkt);
        if slkt_norm != lambda_norm {
            return Err(Error::TheoremViolation(format!(
                "spin norm {} of {} differs from ||Lambda||^2 = {} for {}",
                slkt_norm, report.slkt, lambda_norm, rep.chains
            )));
        }
        let n = rep.rank();
        let cap = report.slkt.size() + window;
        let mut violation: Option<String> = None;
        enumerate_ktypes(n, cap, &mut |tau| {
            if violation.is_some() || spin_norm_sq(tau) >= slkt_norm {
                return;
            }
            window_checked += 1;
            match blattner::ktype_multiplicity(&rep.params, tau) {
                Ok(0) => {}
                Ok(m) => {
                    violation = Some(format!(
                        "K-type {tau} of {} has multiplicity {m} but spin norm below the minimum",
                        rep.chains
                    ));
                }
                Err(e) => violation = Some(e.to_string()),
            }
        });
        if let Some(msg) = violation {
            return Err(Error::TheoremViolation(msg));
        }
    }
    Ok((report.candidates_examined, window_checked))
}

/// All K-type weights of rank n with coordinate sum at most `cap`.
fn enumerate_ktypes(n: usize, cap: i64, f: &mut impl FnMut(&Weight)) {
    fn rec(buf: &mut Vec<i64>, n: usize, left: i64, f: &mut impl FnMut(&Weight)) {
        if buf.len() == n {
            f(&Weight::new(buf.clone()));
            return;
        }
        let hi = buf.last().copied().unwrap_or(left).min(left);
        for v in 0..=hi {
            buf.push(v);
            rec(buf, n, left - v, f);
            buf.pop();
        }
    }
    if cap >= 0 {
        rec(&mut Vec::with_capacity(n), n, cap, f);
    }
}

/// Convenience: the orbit-size bound the candidate enumerator never exceeds.
pub fn candidate_space_bound(l: &InfChar) -> u128 {
    weyl::orbit_size(&l.restricted().sub(&rho_c(l.rank())))
}
