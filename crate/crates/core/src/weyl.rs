//! The Weyl group W(k,t) = W(g,t) of type C_n, realized as signed
//! permutations: action on weights, dominant representatives, orbit
//! enumeration, Coxeter length, and the minimal-length coset representatives
//! W^1 for the parabolic L∩K = U(k) x Sp(r) inside K = Sp(n).

use crate::error::Error;
use crate::weights::Weight;

/// Element of the hyperoctahedral group W(C_n). Acting on a weight v,
/// result position `i` receives `signs[i] * v[perm[i]]`; this convention is
/// used consistently everywhere.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Self {
        let n = perm.len();
        assert_eq!(signs.len(), n, "perm/sign length mismatch");
        assert!(signs.iter().all(|&s| s == 1 || s == -1), "signs must be +-1");
        let mut seen = vec![false; n];
        for &p in &perm {
            assert!(p < n && !seen[p], "perm is not a bijection");
            seen[p] = true;
        }
        SignedPermutation { perm, signs }
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation { perm: (0..n).collect(), signs: vec![1; n] }
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| p == i) && self.signs.iter().all(|&s| s == 1)
    }

    pub fn act(&self, v: &Weight) -> Weight {
        assert_eq!(self.rank(), v.rank(), "rank mismatch in Weyl action");
        Weight::new(self.act_raw(v.coords()))
    }

    fn act_raw(&self, v: &[i64]) -> Vec<i64> {
        (0..v.len()).map(|i| self.signs[i] as i64 * v[self.perm[i]]).collect()
    }

    /// Composition self ∘ other (other acts first).
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        assert_eq!(self.rank(), other.rank(), "rank mismatch in composition");
        let n = self.rank();
        let mut perm = vec![0; n];
        let mut signs = vec![1i8; n];
        for i in 0..n {
            perm[i] = other.perm[self.perm[i]];
            signs[i] = self.signs[i] * other.signs[self.perm[i]];
        }
        SignedPermutation { perm, signs }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let n = self.rank();
        let mut perm = vec![0; n];
        let mut signs = vec![1i8; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        SignedPermutation { perm, signs }
    }

    /// Coxeter length: number of positive roots of C_n sent to negatives.
    pub fn length(&self) -> usize {
        let n = self.rank();
        let mut count = 0;
        let mut root = vec![0i64; n];
        for i in 0..n {
            for j in i + 1..n {
                for &ej in &[-1i64, 1] {
                    root.iter_mut().for_each(|x| *x = 0);
                    root[i] = 1;
                    root[j] = ej;
                    if is_negative_root(&self.act_raw(&root)) {
                        count += 1;
                    }
                }
            }
            root.iter_mut().for_each(|x| *x = 0);
            root[i] = 2;
            if is_negative_root(&self.act_raw(&root)) {
                count += 1;
            }
        }
        count
    }
}

fn is_negative_root(v: &[i64]) -> bool {
    v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0)
}

/// Dominant representative of the W(C_n)-orbit of `v` (absolute values sorted
/// descending) together with a witness `w` such that `w.act(v)` is dominant.
/// The witness comes from a stable sort, so results are deterministic under
/// repeated entries.
pub fn dominant_rep(v: &Weight) -> (Weight, SignedPermutation) {
    let n = v.rank();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by_key(|&i| -v.coords()[i].abs());
    let perm = idx;
    let signs: Vec<i8> = perm.iter().map(|&p| if v.coords()[p] < 0 { -1 } else { 1 }).collect();
    let w = SignedPermutation { perm, signs };
    let dom = w.act(v);
    (dom, w)
}

/// Iterator over the distinct elements of the W(C_n)-orbit of a weight:
/// every arrangement of the multiset of absolute values, with free signs on
/// the nonzero entries. The full group of order 2^n n! is never materialized.
pub fn orbit(v: &Weight) -> Orbit {
    let mut abs: Vec<i64> = v.coords().iter().map(|x| x.abs()).collect();
    abs.sort_unstable();
    let nonzero = abs.iter().filter(|&&x| x != 0).count();
    assert!(nonzero < 63, "orbit sign masks exceed u64");
    Orbit { abs, mask: 0, nonzero, done: false, started: false, rank: v.rank() }
}

pub struct Orbit {
    abs: Vec<i64>,
    mask: u64,
    nonzero: usize,
    done: bool,
    started: bool,
    rank: usize,
}

impl Iterator for Orbit {
    type Item = Weight;

    fn next(&mut self) -> Option<Weight> {
        if self.done {
            return None;
        }
        if self.rank == 0 {
            self.done = true;
            return Some(Weight::new(vec![]));
        }
        if self.started && self.mask as u128 + 1 >= (1u128 << self.nonzero) {
            if !next_permutation(&mut self.abs) {
                self.done = true;
                return None;
            }
            self.mask = 0;
        } else if self.started {
            self.mask += 1;
        }
        self.started = true;
        let mut out = Vec::with_capacity(self.rank);
        let mut bit = 0;
        for &a in &self.abs {
            if a == 0 {
                out.push(0);
            } else {
                out.push(if self.mask >> bit & 1 == 1 { -a } else { a });
                bit += 1;
            }
        }
        Some(Weight::new(out))
    }
}

/// Lexicographic next permutation; yields each distinct arrangement of a
/// multiset exactly once when started from the sorted-ascending state.
fn next_permutation(a: &mut [i64]) -> bool {
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

/// Number of distinct elements in the orbit of `v`: 2^{nonzero} times the
/// multinomial count of arrangements of the absolute values.
pub fn orbit_size(v: &Weight) -> u128 {
    let mut abs: Vec<i64> = v.coords().iter().map(|x| x.abs()).collect();
    abs.sort_unstable();
    let mut size: u128 = 1;
    for i in 1..=abs.len() as u128 {
        size *= i;
    }
    let mut run = 1u128;
    let mut fact_run = 1u128;
    for i in 1..abs.len() {
        if abs[i] == abs[i - 1] {
            run += 1;
            fact_run *= run;
        } else {
            size /= fact_run;
            run = 1;
            fact_run = 1;
        }
    }
    size /= fact_run;
    size << abs.iter().filter(|&&x| x != 0).count()
}

/// Minimal-length coset representatives W^1 for W(L∩K)\W(K), L∩K = U(k) x
/// Sp(r): exactly the w with w·rho_c strictly dominant for Δ+(l∩k).
///
/// Generated directly: w·rho_c is determined by choosing which r of the
/// values {1..n} land (positively, sorted) in the Sp block and the signs on
/// the remaining k values (sorted descending after signing). The count is
/// 2^k C(n,k) = 2^n n! / (k! 2^r r!). Ranks above 12 are refused.
pub fn coset_reps_w1(k: usize, r: usize) -> Result<Vec<SignedPermutation>, Error> {
    let n = k + r;
    if n > 12 {
        return Err(Error::Unsupported(format!(
            "W^1 enumeration refused for rank {n} > 12"
        )));
    }
    let mut reps = Vec::with_capacity(choose(n, k) << k);
    let mut subset = Vec::with_capacity(r);
    gen_subsets(1, n as i64, r, &mut subset, &mut |sp_values: &[i64]| {
        let mut u_values: Vec<i64> = (1..=n as i64).filter(|v| !sp_values.contains(v)).collect();
        u_values.reverse();
        for mask in 0u64..1 << k {
            let mut signed: Vec<i64> = u_values
                .iter()
                .enumerate()
                .map(|(i, &v)| if mask >> i & 1 == 1 { -v } else { v })
                .collect();
            signed.sort_unstable_by_key(|&x| -x);
            // Target image u = w(rho_c): signed U(k) block, then the Sp block
            // descending. Recover w from rho_c = (n, ..., 1).
            let mut image = signed;
            image.extend(sp_values.iter().rev());
            let perm: Vec<usize> = image.iter().map(|&x| n - x.unsigned_abs() as usize).collect();
            let signs: Vec<i8> = image.iter().map(|&x| if x < 0 { -1 } else { 1 }).collect();
            reps.push(SignedPermutation { perm, signs });
        }
    });
    Ok(reps)
}

fn gen_subsets(lo: i64, hi: i64, want: usize, buf: &mut Vec<i64>, f: &mut impl FnMut(&[i64])) {
    if buf.len() == want {
        f(buf);
        return;
    }
    for v in lo..=hi - (want as i64 - buf.len() as i64 - 1) {
        buf.push(v);
        gen_subsets(v + 1, hi, want, buf, f);
        buf.pop();
    }
}

fn choose(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut num = 1usize;
    for i in 0..k.min(n - k) {
        num = num * (n - i) / (i + 1);
    }
    num
}

/// Order of W^1 from the closed formula 2^n n! / (k! 2^r r!).
pub fn w1_order(k: usize, r: usize) -> u128 {
    let fact = |m: usize| (1..=m as u128).product::<u128>();
    let n = k + r;
    (1u128 << n) * fact(n) / (fact(k) * (1u128 << r) * fact(r))
}

#[cfg(test)]
pub(crate) fn all_elements(n: usize) -> Vec<SignedPermutation> {
    let mut perms = vec![];
    let mut p: Vec<i64> = (0..n as i64).collect();
    loop {
        for mask in 0u64..1 << n {
            let perm: Vec<usize> = p.iter().map(|&x| x as usize).collect();
            let signs: Vec<i8> = (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            perms.push(SignedPermutation { perm, signs });
        }
        if !next_permutation(&mut p) {
            break;
        }
    }
    perms
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{is_ktype, rho_c};

    #[test]
    fn action_basics() {
        let v = Weight::new(vec![5, -2, 7]);
        assert_eq!(SignedPermutation::identity(3).act(&v), v);

        let flip = SignedPermutation::new(vec![0], vec![-1]);
        assert_eq!(flip.act(&Weight::new(vec![5])).coords(), &[-5]);
    }

    #[test]
    fn composition_matches_iterated_action() {
        let v = Weight::new(vec![3, -1, 4, 1]);
        for w1 in all_elements(3) {
            for w2 in all_elements(3) {
                let v3 = Weight::new(vec![3, -1, 4]);
                assert_eq!(w1.compose(&w2).act(&v3), w1.act(&w2.act(&v3)));
            }
        }
        let w = SignedPermutation::new(vec![2, 0, 3, 1], vec![-1, 1, 1, -1]);
        assert_eq!(w.compose(&w.inverse()).act(&v), v);
        assert_eq!(w.inverse().act(&w.act(&v)), v);
    }

    #[test]
    fn dominant_rep_examples() {
        let v = Weight::new(vec![3, 3, 1, 1, 2, 3, 3, 0, 0, -1, -1, 0]);
        let (dom, w) = dominant_rep(&v);
        assert_eq!(dom.coords(), &[3, 3, 3, 3, 2, 1, 1, 1, 1, 0, 0, 0]);
        assert_eq!(w.act(&v), dom);

        let already = Weight::new(vec![4, 2, 1]);
        let (dom, w) = dominant_rep(&already);
        assert_eq!(dom, already);
        assert!(w.is_identity());

        let (dom, w) = dominant_rep(&Weight::new(vec![-2, 5]));
        assert_eq!(dom.coords(), &[5, 2]);
        assert_eq!(w.act(&Weight::new(vec![-2, 5])), dom);
    }

    #[test]
    fn dominant_rep_is_orbit_invariant() {
        let v = Weight::new(vec![2, -1, 0]);
        let (dom, _) = dominant_rep(&v);
        for w in all_elements(3) {
            assert_eq!(dominant_rep(&w.act(&v)).0, dom);
        }
    }

    #[test]
    fn orbit_enumeration() {
        let o: Vec<Weight> = orbit(&Weight::zero(2)).collect();
        assert_eq!(o, vec![Weight::zero(2)]);

        let mut o: Vec<Weight> = orbit(&Weight::new(vec![1, 0])).collect();
        o.sort();
        let mut expected = vec![
            Weight::new(vec![1, 0]),
            Weight::new(vec![-1, 0]),
            Weight::new(vec![0, 1]),
            Weight::new(vec![0, -1]),
        ];
        expected.sort();
        assert_eq!(o, expected);

        assert_eq!(orbit(&Weight::new(vec![2, 1])).count(), 8);
        assert_eq!(orbit_size(&Weight::new(vec![2, 1])), 8);
    }

    #[test]
    fn orbit_is_distinct_and_matches_group_images() {
        for v in [
            Weight::new(vec![0, 0, 0]),
            Weight::new(vec![1, 1, 0]),
            Weight::new(vec![2, 1, 1]),
            Weight::new(vec![3, 2, 1]),
        ] {
            let listed: Vec<Weight> = orbit(&v).collect();
            let mut sorted = listed.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), listed.len(), "orbit repeated an element for {v}");
            let mut images: Vec<Weight> = all_elements(3).iter().map(|w| w.act(&v)).collect();
            images.sort();
            images.dedup();
            assert_eq!(sorted, images, "orbit mismatch for {v}");
            assert_eq!(orbit_size(&v) as usize, listed.len());
        }
    }

    #[test]
    fn lengths() {
        assert_eq!(SignedPermutation::identity(4).length(), 0);
        assert_eq!(SignedPermutation::new(vec![0], vec![-1]).length(), 1);
        // Longest element of W(C_2) negates everything; |Δ+(C_2)| = 4.
        let w0 = SignedPermutation::new(vec![0, 1], vec![-1, -1]);
        assert_eq!(w0.length(), 4);
    }

    #[test]
    fn length_symmetry_and_subadditivity() {
        for w in all_elements(3) {
            assert_eq!(w.length(), w.inverse().length());
        }
        let els = all_elements(2);
        for a in &els {
            for b in &els {
                assert!(a.compose(b).length() <= a.length() + b.length());
            }
        }
    }

    fn is_lk_dominant(v: &[i64], k: usize) -> bool {
        let strict_a = v[..k].windows(2).all(|p| p[0] > p[1]);
        let strict_c = v[k..].windows(2).all(|p| p[0] > p[1]);
        strict_a && strict_c && v[k..].last().is_none_or(|&x| x > 0)
    }

    #[test]
    fn w1_matches_bruteforce_filter() {
        for n in 1..=5 {
            for k in 0..=n {
                let r = n - k;
                let direct = coset_reps_w1(k, r).unwrap();
                let rc = rho_c(n);
                let brute: Vec<SignedPermutation> = all_elements(n)
                    .into_iter()
                    .filter(|w| is_lk_dominant(w.act(&rc).coords(), k))
                    .collect();
                assert_eq!(direct.len(), brute.len(), "count mismatch k={k} r={r}");
                let mut d: Vec<_> = direct.iter().map(|w| w.act(&rc)).collect();
                let mut b: Vec<_> = brute.iter().map(|w| w.act(&rc)).collect();
                d.sort();
                b.sort();
                assert_eq!(d, b, "image mismatch k={k} r={r}");
                for w in &direct {
                    assert!(is_lk_dominant(w.act(&rc).coords(), k));
                }
            }
        }
    }

    #[test]
    fn w1_counts() {
        assert_eq!(coset_reps_w1(0, 3).unwrap().len(), 1);
        assert!(coset_reps_w1(0, 3).unwrap()[0].is_identity());
        assert_eq!(coset_reps_w1(1, 1).unwrap().len(), 4);
        assert_eq!(w1_order(8, 4), 126720);
        assert_eq!(coset_reps_w1(8, 4).unwrap().len(), 126720);
        for n in 1..=8usize {
            for k in 0..=n {
                let r = n - k;
                // |W^1| * |W(L∩K)| = |W(C_n)|, exhaustively over k+r=n <= 8.
                let fact = |m: usize| (1..=m as u128).product::<u128>();
                assert_eq!(
                    w1_order(k, r) * fact(k) * (1u128 << r) * fact(r),
                    (1u128 << n) * fact(n)
                );
                if n <= 6 {
                    assert_eq!(coset_reps_w1(k, r).unwrap().len() as u128, w1_order(k, r));
                }
            }
        }
        assert!(coset_reps_w1(9, 4).is_err());
    }

    #[test]
    fn w1_sends_dominant_weights_to_lk_dominant_shifts() {
        // For w in W^1 and dominant K-type tau: w(tau + rho_c) - rho_c is
        // Δ+(l∩k)-dominant. Exhaustive for n <= 5 with entries <= 2.
        for n in 1..=5usize {
            let rc = rho_c(n);
            let mut taus = vec![];
            gen_doms(n, 2, &mut vec![], &mut taus);
            for k in 0..=n {
                let reps = coset_reps_w1(k, n - k).unwrap();
                for tau in &taus {
                    assert!(is_ktype(tau));
                    for w in &reps {
                        let shifted = w.act(&tau.add(&rc)).sub(&rc);
                        let v = shifted.coords();
                        let ok_a = v[..k].windows(2).all(|p| p[0] >= p[1]);
                        let ok_c = v[k..].windows(2).all(|p| p[0] >= p[1])
                            && v[k..].last().is_none_or(|&x| x >= 0);
                        assert!(ok_a && ok_c, "w({tau}+rho_c)-rho_c = {shifted} not dominant");
                    }
                }
            }
        }
    }

    fn gen_doms(n: usize, max: i64, buf: &mut Vec<i64>, out: &mut Vec<Weight>) {
        if buf.len() == n {
            out.push(Weight::new(buf.clone()));
            return;
        }
        let hi = buf.last().copied().unwrap_or(max);
        for v in (0..=hi).rev() {
            buf.push(v);
            gen_doms(n, max, buf, out);
            buf.pop();
        }
    }
}
