//! Branching from GL(2s,C) to Sp(2s,C) by character subtraction on the exact
//! weight lattice: fold the GL weight multiplicities onto the Sp torus, then
//! repeatedly peel the highest surviving dominant Sp character. Sp weight
//! multiplicities come from Freudenthal's recursion. This route stays
//! correct for partitions longer than s, which show up inside S(u∩p)
//! whenever k > r.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{cache, gl_weight_multiplicity, partitions_of, Partition};
use crate::weights::Weight;
use crate::weyl;

/// Restriction multiplicities of the GL(2s,C) irreducible E_lam to
/// Sp(2s,C): map from dominant Sp weight (length s, padded) to multiplicity.
pub fn gl_to_sp(lam: &Partition, s: usize) -> BTreeMap<Vec<i64>, i64> {
    assert!(lam.len() <= 2 * s, "gl_to_sp: partition {lam} longer than 2s = {}", 2 * s);
    if s == 0 {
        let mut out = BTreeMap::new();
        out.insert(vec![], 1);
        return out;
    }
    if let Some(hit) = cache::br_lookup(lam, s) {
        return hit;
    }
    let mut folded = fold_gl_weights(lam, s);
    let mut out: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    while let Some((best, mult)) = take_highest(&folded) {
        assert!(mult > 0, "negative leading multiplicity while peeling {lam} to Sp({})", 2 * s);
        assert!(
            is_sp_dominant(&best),
            "leading surviving weight {best:?} is not Sp-dominant"
        );
        for (w, m) in sp_weight_function(&best, s).iter() {
            let slot = folded.entry(w.clone()).or_insert(0);
            *slot -= mult * m;
            if *slot == 0 {
                folded.remove(w);
            }
        }
        *out.entry(best).or_insert(0) += mult;
    }
    cache::br_store(lam, s, &out);
    out
}

/// GL weight multiplicities of E_lam pushed onto the Sp torus:
/// (w_1, ..., w_{2s}) maps to (w_1 - w_{2s}, ..., w_s - w_{s+1}).
fn fold_gl_weights(lam: &Partition, s: usize) -> BTreeMap<Vec<i64>, i64> {
    let n = 2 * s;
    let mut folded = BTreeMap::new();
    for content in partitions_of(lam.size(), n, lam.part(0)) {
        let kostka = gl_weight_multiplicity(lam, &content);
        if kostka == 0 {
            continue;
        }
        let mut arr = content.padded(n);
        arr.sort_unstable(); // ascending start for next_permutation order
        loop {
            let sp: Vec<i64> = (0..s).map(|i| arr[i] - arr[n - 1 - i]).collect();
            *folded.entry(sp).or_insert(0) += kostka;
            if !next_arrangement(&mut arr) {
                break;
            }
        }
    }
    folded
}

fn next_arrangement(a: &mut [i64]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Highest remaining weight by (coordinate sum, then lex); for a
/// W(C_s)-invariant table this is always a maximal element of the dominance
/// order, so peeling it is sound.
fn take_highest(table: &BTreeMap<Vec<i64>, i64>) -> Option<(Vec<i64>, i64)> {
    table
        .iter()
        .filter(|&(_, &m)| m != 0)
        .max_by(|(a, _), (b, _)| {
            let sa: i64 = a.iter().sum();
            let sb: i64 = b.iter().sum();
            sa.cmp(&sb).then_with(|| a.cmp(b))
        })
        .map(|(w, &m)| (w.clone(), m))
}

fn is_sp_dominant(w: &[i64]) -> bool {
    w.windows(2).all(|p| p[0] >= p[1]) && w.last().is_none_or(|&x| x >= 0)
}

type SpCharKey = (Vec<i64>, usize);
type SpCharTable = Arc<BTreeMap<Vec<i64>, i64>>;
type WeightPair = (Vec<i64>, Vec<i64>);

thread_local! {
    static SP_CHAR_MEMO: RefCell<HashMap<SpCharKey, SpCharTable>> =
        RefCell::new(HashMap::new());
    static FREUDENTHAL_MEMO: RefCell<HashMap<WeightPair, i64>> =
        RefCell::new(HashMap::new());
}

/// Full weight multiplicity function of the Sp(2s,C) irreducible with
/// highest weight `mu` (length s), as a map over the weight lattice.
pub fn sp_weight_function(mu: &[i64], s: usize) -> Arc<BTreeMap<Vec<i64>, i64>> {
    assert_eq!(mu.len(), s);
    let key = (mu.to_vec(), s);
    if let Some(hit) = SP_CHAR_MEMO.with(|m| m.borrow().get(&key).cloned()) {
        return hit;
    }
    let mut table = BTreeMap::new();
    let size: i64 = mu.iter().sum();
    // Dominant weights of the irrep lie under mu in the root order: same
    // parity of coordinate sum, non-negative prefix sums of the difference.
    for cand in partitions_of_bounded_len(size, s) {
        let nu = cand.padded(s);
        let m = freudenthal(mu, &nu);
        if m == 0 {
            continue;
        }
        for w in weyl::orbit(&Weight::new(nu.clone())) {
            table.insert(w.into_coords(), m);
        }
    }
    let arc = Arc::new(table);
    SP_CHAR_MEMO.with(|m| m.borrow_mut().insert(key, arc.clone()));
    arc
}

/// All dominant Sp weights nu with |nu| <= size, |nu| = size (mod 2) not
/// required here; the caller filters through `below_in_root_order`.
fn partitions_of_bounded_len(size: i64, s: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut d = size;
    while d >= 0 {
        out.extend(partitions_of(d, s, d));
        d -= 1;
    }
    out
}

/// nu <= mu in the root order of C_s: prefix sums of mu - nu non-negative
/// and the total difference even.
fn below_in_root_order(mu: &[i64], nu: &[i64]) -> bool {
    let mut run = 0;
    for i in 0..mu.len() {
        run += mu[i] - nu[i];
        if run < 0 {
            return false;
        }
    }
    run >= 0 && run % 2 == 0
}

/// Freudenthal's recursion for the multiplicity of the dominant weight `nu`
/// in the Sp irrep `mu` (both length s, padded).
fn freudenthal(mu: &[i64], nu: &[i64]) -> i64 {
    if nu == mu {
        return 1;
    }
    if !below_in_root_order(mu, nu) {
        return 0;
    }
    let key = (mu.to_vec(), nu.to_vec());
    if let Some(v) = FREUDENTHAL_MEMO.with(|m| m.borrow().get(&key).copied()) {
        return v;
    }
    let s = mu.len();
    let rho: Vec<i64> = (1..=s as i64).rev().collect();
    let dot = |a: &[i64], b: &[i64]| -> i64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    let shifted_norm = |w: &[i64]| -> i64 {
        let v: Vec<i64> = w.iter().zip(&rho).map(|(x, r)| x + r).collect();
        dot(&v, &v)
    };
    let denom = shifted_norm(mu) - shifted_norm(nu);
    assert!(denom > 0, "Freudenthal denominator vanished at {nu:?} under {mu:?}");
    let bound: i64 = mu.iter().sum();
    let mut numer = 0i64;
    for root in positive_roots_c(s) {
        let mut x: Vec<i64> = nu.to_vec();
        loop {
            for (xi, ri) in x.iter_mut().zip(&root) {
                *xi += ri;
            }
            if x.iter().map(|v| v.abs()).sum::<i64>() > bound {
                break;
            }
            let folded = {
                let mut f: Vec<i64> = x.iter().map(|v| v.abs()).collect();
                f.sort_unstable_by_key(|&v| -v);
                f
            };
            let m = freudenthal(mu, &folded);
            if m != 0 {
                numer += 2 * m * dot(&x, &root);
            }
        }
    }
    assert!(numer % denom == 0, "Freudenthal division not exact");
    let v = numer / denom;
    FREUDENTHAL_MEMO.with(|m| m.borrow_mut().insert(key, v));
    v
}

fn positive_roots_c(s: usize) -> Vec<Vec<i64>> {
    let mut roots = Vec::new();
    for i in 0..s {
        for j in i + 1..s {
            for ej in [-1i64, 1] {
                let mut r = vec![0i64; s];
                r[i] = 1;
                r[j] = ej;
                roots.push(r);
            }
        }
        let mut r = vec![0i64; s];
        r[i] = 2;
        roots.push(r);
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{weyl_dim, ClassicalGroup};

    fn p(parts: &[i64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn sp_weight_function_small() {
        // Standard module of Sp(2): weights +-1.
        let f = sp_weight_function(&[1], 1);
        assert_eq!(f.get(&vec![1]), Some(&1));
        assert_eq!(f.get(&vec![-1]), Some(&1));
        assert_eq!(f.len(), 2);

        // Adjoint of Sp(4) has highest weight (2,0), dimension 10.
        let f = sp_weight_function(&[2, 0], 2);
        let dim: i64 = f.values().sum();
        assert_eq!(dim, 10);
        assert_eq!(f.get(&vec![0, 0]), Some(&2));

        // Sp(4) fundamental (1,1): dimension 5.
        let f = sp_weight_function(&[1, 1], 2);
        assert_eq!(f.values().sum::<i64>(), 5);
        assert_eq!(f.get(&vec![0, 0]), Some(&1));
    }

    #[test]
    fn sp_weight_function_matches_weyl_dim() {
        for s in 1..=3usize {
            for d in 0..=4i64 {
                for mu in partitions_of(d, s, d) {
                    let f = sp_weight_function(&mu.padded(s), s);
                    assert_eq!(
                        f.values().sum::<i64>(),
                        weyl_dim(ClassicalGroup::Sp(s), mu.parts()),
                        "dimension mismatch for Sp({}) weight {mu}",
                        2 * s
                    );
                }
            }
        }
    }

    #[test]
    fn gl_to_sp_examples() {
        // The standard module restricts irreducibly.
        for s in 1..=3usize {
            let table = gl_to_sp(&p(&[1]), s);
            let mut expected = vec![0i64; s];
            expected[0] = 1;
            assert_eq!(table.len(), 1);
            assert_eq!(table.get(&expected), Some(&1));
        }

        // Lambda^2 C^2 under Sp(2) is the trivial module.
        let table = gl_to_sp(&p(&[1, 1]), 1);
        assert_eq!(table.len(), 1);
        assert_eq!(table.get(&vec![0]), Some(&1));

        // s=1, lambda=(a,b): top piece (a-b) with multiplicity 1, then a
        // descending step-2 string down to (a-b) mod 2.
        let table = gl_to_sp(&p(&[3, 1]), 1);
        assert_eq!(table.get(&vec![2]), Some(&1));
        let total: i64 = table
            .iter()
            .map(|(w, m)| m * weyl_dim(ClassicalGroup::Sp(1), w))
            .sum();
        assert_eq!(total, weyl_dim(ClassicalGroup::Gl(2), &[3, 1]));
    }

    #[test]
    fn gl_to_sp_dimension_conservation() {
        for s in 1..=2usize {
            for d in 0..=4i64 {
                for lam in partitions_of(d, 2 * s, d) {
                    let table = gl_to_sp(&lam, s);
                    let branched: i64 = table
                        .iter()
                        .map(|(w, m)| m * weyl_dim(ClassicalGroup::Sp(s), w))
                        .sum();
                    let mut hw = lam.parts().to_vec();
                    hw.resize(2 * s, 0);
                    assert_eq!(
                        branched,
                        weyl_dim(ClassicalGroup::Gl(2 * s), &hw),
                        "conservation failed for {lam} at Sp({})",
                        2 * s
                    );
                }
            }
        }
    }
}
