#![allow(dead_code)] // each test binary uses its own slice of the oracle

//! Brute-force character oracle, independent of the library's algorithms.
//!
//! Weight multiplicities come from direct semistandard-tableau enumeration
//! and monomial expansion of symmetric powers; irreducible contents are
//! recovered either by peeling with oracle characters or by Weyl-group
//! alternation. Nothing here calls the LR tableau counter, the Kostka
//! strip recursion, Freudenthal, or the production branching/peeling code.

use std::collections::BTreeMap;

pub type WeightMap = BTreeMap<Vec<i64>, i64>;

/// Weight multiplicities of the GL(n) irreducible with highest weight `lam`
/// (a partition), by enumerating all semistandard tableaux with entries in
/// 1..=n.
pub fn gl_char_weights(lam: &[i64], n: usize) -> WeightMap {
    let mut out = WeightMap::new();
    let rows = lam.len();
    if rows == 0 {
        out.insert(vec![0; n], 1);
        return out;
    }
    let mut tableau: Vec<Vec<usize>> = lam.iter().map(|&r| vec![0; r as usize]).collect();
    fn fill(
        t: &mut Vec<Vec<usize>>,
        row: usize,
        col: usize,
        n: usize,
        out: &mut WeightMap,
    ) {
        if row == t.len() {
            let mut content = vec![0i64; n];
            for r in t.iter() {
                for &e in r {
                    content[e - 1] += 1;
                }
            }
            *out.entry(content).or_insert(0) += 1;
            return;
        }
        if col == t[row].len() {
            fill(t, row + 1, 0, n, out);
            return;
        }
        let min_row = if col > 0 { t[row][col - 1] } else { 1 };
        let min_col = if row > 0 && col < t[row - 1].len() { t[row - 1][col] + 1 } else { 1 };
        for e in min_row.max(min_col)..=n {
            t[row][col] = e;
            fill(t, row, col + 1, n, out);
        }
        t[row][col] = 0;
    }
    fill(&mut tableau, 0, 0, n, &mut out);
    out
}

pub fn convolve(a: &WeightMap, b: &WeightMap) -> WeightMap {
    let mut out = WeightMap::new();
    for (wa, ma) in a {
        for (wb, mb) in b {
            let sum: Vec<i64> = wa.iter().zip(wb).map(|(x, y)| x + y).collect();
            *out.entry(sum).or_insert(0) += ma * mb;
        }
    }
    out
}

/// Decompose an S_n-invariant weight table into GL(n) irreducibles by
/// repeatedly peeling the lex-maximal surviving weight (necessarily
/// dominant) with its oracle character.
pub fn peel_gl(mut table: WeightMap, n: usize) -> BTreeMap<Vec<i64>, i64> {
    let mut out = BTreeMap::new();
    while let Some((top, mult)) = table
        .iter()
        .filter(|&(_, &m)| m != 0)
        .max_by(|a, b| a.0.cmp(b.0))
        .map(|(w, &m)| (w.clone(), m))
    {
        assert!(mult > 0, "negative leading multiplicity in GL peel at {top:?}");
        assert!(top.windows(2).all(|p| p[0] >= p[1]), "leading weight {top:?} not dominant");
        for (w, m) in gl_char_weights(&trim(&top), n) {
            *table.entry(w).or_insert(0) -= mult * m;
        }
        table.retain(|_, m| *m != 0);
        *out.entry(top).or_insert(0) += mult;
    }
    out
}

fn trim(w: &[i64]) -> Vec<i64> {
    let mut v = w.to_vec();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Tensor-product decomposition of two GL(n) polynomial irreducibles by
/// weight convolution and character peeling.
pub fn tensor_bruteforce(n: usize, lam: &[i64], mu: &[i64]) -> BTreeMap<Vec<i64>, i64> {
    peel_gl(convolve(&gl_char_weights(lam, n), &gl_char_weights(mu, n)), n)
}

/// LR coefficient through the weight-expansion oracle.
pub fn lr_bruteforce(lam: &[i64], mu: &[i64], nu: &[i64]) -> i64 {
    let n = (mu.len() + nu.len()).max(lam.len()).max(1);
    let mut key = lam.to_vec();
    key.resize(n, 0);
    tensor_bruteforce(n, mu, nu).get(&key).copied().unwrap_or(0)
}

/// Weight multiplicities of S^d of a space with the given basis weights:
/// monomial expansion over multisets of basis vectors.
pub fn sym_power_weights(basis: &[Vec<i64>], d: usize) -> WeightMap {
    let dim = basis.first().map_or(0, Vec::len);
    let mut out = WeightMap::new();
    fn rec(
        basis: &[Vec<i64>],
        i: usize,
        left: usize,
        acc: &mut Vec<i64>,
        out: &mut WeightMap,
    ) {
        if left == 0 {
            *out.entry(acc.clone()).or_insert(0) += 1;
            return;
        }
        if i == basis.len() {
            return;
        }
        // choose how many copies of basis[i]
        rec(basis, i + 1, left, acc, out);
        for copies in 1..=left {
            for (a, b) in acc.iter_mut().zip(&basis[i]) {
                *a += b;
            }
            rec(basis, i + 1, left - copies, acc, out);
        }
        for (a, b) in acc.iter_mut().zip(&basis[i]) {
            *a -= b * left as i64;
        }
    }
    let mut acc = vec![0i64; dim];
    if basis.is_empty() {
        if d == 0 {
            out.insert(vec![], 1);
        }
        return out;
    }
    rec(basis, 0, d, &mut acc, &mut out);
    out
}

/// Signed permutations of W(C_s) as (permutation, sign mask) pairs with the
/// sign of the group element.
fn hyperoctahedral(s: usize) -> Vec<(Vec<usize>, u32, i64)> {
    let mut perms = vec![];
    let mut p: Vec<usize> = (0..s).collect();
    loop {
        perms.push(p.clone());
        if !next_perm(&mut p) {
            break;
        }
    }
    let mut out = vec![];
    for perm in perms {
        let parity = perm_sign(&perm);
        for mask in 0u32..1 << s {
            let flips = mask.count_ones() as i64;
            let sign = parity * if flips % 2 == 0 { 1 } else { -1 };
            out.push((perm.clone(), mask, sign));
        }
    }
    out
}

fn next_perm(a: &mut [usize]) -> bool {
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

fn perm_sign(p: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Multiplicity of the Sp(2s) irreducible `mu` inside a W(C_s)-invariant
/// weight table, by Weyl alternation: sum of sgn(w) * M(w(mu+rho) - rho).
pub fn sp_extract_entry(table: &WeightMap, mu: &[i64], s: usize) -> i64 {
    let rho: Vec<i64> = (1..=s as i64).rev().collect();
    let shifted: Vec<i64> = mu.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let mut total = 0;
    for (perm, mask, sign) in hyperoctahedral(s) {
        let mut w: Vec<i64> = (0..s).map(|i| shifted[perm[i]]).collect();
        for (i, wi) in w.iter_mut().enumerate() {
            if mask >> i & 1 == 1 {
                *wi = -*wi;
            }
        }
        let probe: Vec<i64> = w.iter().zip(&rho).map(|(a, b)| a - b).collect();
        total += sign * table.get(&probe).copied().unwrap_or(0);
    }
    total
}

/// Full Sp-content of a W(C_s)-invariant weight table by alternation over
/// every dominant candidate present.
pub fn sp_extract(table: &WeightMap, s: usize) -> BTreeMap<Vec<i64>, i64> {
    let mut out = BTreeMap::new();
    for w in table.keys() {
        let dominant = w.windows(2).all(|p| p[0] >= p[1]) && w.last().is_none_or(|&x| x >= 0);
        if !dominant {
            continue;
        }
        let m = sp_extract_entry(table, w, s);
        assert!(m >= 0, "negative alternation multiplicity at {w:?}");
        if m > 0 {
            out.insert(w.clone(), m);
        }
    }
    out
}

/// GL(2s) -> Sp(2s) branching through the oracle: fold tableau weights onto
/// the Sp torus, then extract by alternation. No peeling, no Freudenthal.
pub fn gl_to_sp_bruteforce(lam: &[i64], s: usize) -> BTreeMap<Vec<i64>, i64> {
    let mut folded = WeightMap::new();
    for (w, m) in gl_char_weights(lam, 2 * s) {
        let sp: Vec<i64> = (0..s).map(|i| w[i] - w[2 * s - 1 - i]).collect();
        *folded.entry(sp).or_insert(0) += m;
    }
    sp_extract(&folded, s)
}

/// Basis weights of u∩p on the U(k) x Sp(r) lattice (length k + r):
/// std_k ⊗ std_{2r} plus wedge-squared of std_k.
pub fn up_basis(k: usize, r: usize) -> Vec<Vec<i64>> {
    let mut basis = vec![];
    for i in 0..k {
        for j in 0..r {
            for sign in [1i64, -1] {
                let mut w = vec![0i64; k + r];
                w[i] = 1;
                w[k + j] = sign;
                basis.push(w);
            }
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            let mut w = vec![0i64; k + r];
            w[i] = 1;
            w[j] = 1;
            basis.push(w);
        }
    }
    basis
}

/// Multiplicity of E^{U(k)}_gamma ⊠ E^{Sp(2r)}_mu inside a product-lattice
/// weight table, by double alternation over S_k x W(C_r).
pub fn product_extract_entry(table: &WeightMap, gamma: &[i64], mu: &[i64], k: usize, r: usize) -> i64 {
    let rho_u: Vec<i64> = (0..k as i64).rev().collect();
    let rho_sp: Vec<i64> = (1..=r as i64).rev().collect();
    let gamma_shift: Vec<i64> = gamma.iter().zip(&rho_u).map(|(a, b)| a + b).collect();
    let mu_shift: Vec<i64> = mu.iter().zip(&rho_sp).map(|(a, b)| a + b).collect();
    let mut perms = vec![];
    let mut p: Vec<usize> = (0..k).collect();
    loop {
        perms.push((p.clone(), perm_sign(&p)));
        if !next_perm(&mut p) {
            break;
        }
    }
    let mut total = 0;
    for (pu, su) in &perms {
        let probe_u: Vec<i64> =
            (0..k).map(|i| gamma_shift[pu[i]] - rho_u[i]).collect();
        for (psp, mask, ssp) in hyperoctahedral(r) {
            let mut w: Vec<i64> = (0..r).map(|i| mu_shift[psp[i]]).collect();
            for (i, wi) in w.iter_mut().enumerate() {
                if mask >> i & 1 == 1 {
                    *wi = -*wi;
                }
            }
            let probe_sp: Vec<i64> = w.iter().zip(&rho_sp).map(|(a, b)| a - b).collect();
            let mut key = probe_u.clone();
            key.extend(probe_sp);
            total += su * ssp * table.get(&key).copied().unwrap_or(0);
        }
    }
    total
}
