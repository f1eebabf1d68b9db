//! K-type multiplicities of induced Dirac-series representations through the
//! Blattner-type formula: Kostant's u∩k-cohomology over the minimal coset
//! representatives W^1, the graded L∩K = U(k) x Sp(r) decomposition of
//! S(u∩p), the K-type table of Z#, and the alternating sum.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::chains::RepParams;
use crate::error::Error;
use crate::partitions::{self, gl_to_sp, sym_cauchy, sym_wedge2, tensor_u, DecompTable, Partition};
use crate::weights::{is_ktype, rho_c, Weight};
use crate::weyl::{self, SignedPermutation};

/// Highest weight of an L∩K = U(k) x Sp(r) type: a weakly decreasing integer
/// vector on the U(k) side and a K-type weight on the Sp(r) side.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LkType {
    pub u_part: Vec<i64>,
    pub sp_part: Vec<i64>,
}

/// One Kostant summand of H^q(u∩k, E_tau): the L∩K-type w(tau+rho_c)-rho_c
/// in degree q = length(w), contributing with sign (-1)^q.
#[derive(Clone, Debug)]
pub struct CohomologyPiece {
    pub degree: usize,
    pub weight: LkType,
}

impl CohomologyPiece {
    pub fn sign(&self) -> i64 {
        if self.degree.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

type Memo<K, V> = RefCell<HashMap<K, V>>;
type ZsharpTable = Arc<Vec<(Partition, i64)>>;

thread_local! {
    static W1_MEMO: Memo<(usize, usize), Arc<Vec<SignedPermutation>>> =
        RefCell::new(HashMap::new());
    static SYM_UP_MEMO: Memo<(usize, usize, usize), Arc<DecompTable>> =
        RefCell::new(HashMap::new());
    static USLICE_MEMO: Memo<(i64, usize, usize), Arc<SpSlice>> =
        RefCell::new(HashMap::new());
    static ZSHARP_MEMO: Memo<Vec<(usize, i64)>, ZsharpTable> =
        RefCell::new(HashMap::new());
}

fn w1_reps(k: usize, r: usize) -> Result<Arc<Vec<SignedPermutation>>, Error> {
    if let Some(hit) = W1_MEMO.with(|m| m.borrow().get(&(k, r)).cloned()) {
        return Ok(hit);
    }
    let reps = Arc::new(weyl::coset_reps_w1(k, r)?);
    W1_MEMO.with(|m| m.borrow_mut().insert((k, r), reps.clone()));
    Ok(reps)
}

/// Kostant's theorem for the parabolic with Levi U(k) x Sp(r): one piece per
/// w in W^1, in degree length(w), with L∩K-highest weight w(tau+rho_c)-rho_c
/// split into the first k and last r coordinates.
pub fn kostant(tau: &Weight, k: usize, r: usize) -> Result<Vec<CohomologyPiece>, Error> {
    let n = k + r;
    assert_eq!(tau.rank(), n, "kostant: rank mismatch");
    assert!(is_ktype(tau), "kostant: {tau} is not a K-type");
    let reps = w1_reps(k, r)?;
    let rc = rho_c(n);
    let target = tau.add(&rc);
    let (ni, ki, ri) = (n as i64, k as i64, r as i64);
    let dim_u_cap_k = (ni * ni - ki * (ki - 1) / 2 - ri * ri) as usize;
    let mut pieces = Vec::with_capacity(reps.len());
    for w in reps.iter() {
        let shifted = w.act(&target).sub(&rc);
        let u_part = shifted.coords()[..k].to_vec();
        let sp_part = shifted.coords()[k..].to_vec();
        assert!(
            u_part.windows(2).all(|p| p[0] >= p[1]),
            "U(k) side of Kostant piece not dominant: {shifted}"
        );
        assert!(
            sp_part.windows(2).all(|p| p[0] >= p[1]) && sp_part.last().is_none_or(|&x| x >= 0),
            "Sp(r) side of Kostant piece has a negative entry: {shifted}"
        );
        let degree = w.length();
        assert!(degree <= dim_u_cap_k, "Kostant degree {degree} above dim u∩k = {dim_u_cap_k}");
        pieces.push(CohomologyPiece { degree, weight: LkType { u_part, sp_part } });
    }
    Ok(pieces)
}

/// L∩K-decomposition of S^d(u∩p), assembled from the two summands of u∩p:
/// S^{d1}(std_k ⊗ std_{2r}) through the Cauchy identity with the GL(2r) side
/// branched to Sp(r), times S^{d2}(∧² std_k), d1 + d2 = d, merged on the
/// U(k) side by tensor product.
pub fn sym_up(d: usize, k: usize, r: usize) -> Arc<DecompTable> {
    if let Some(hit) = SYM_UP_MEMO.with(|m| m.borrow().get(&(d, k, r)).cloned()) {
        return hit;
    }
    let mut out = DecompTable::new();
    for d2 in 0..=d {
        let d1 = d - d2;
        for nu in sym_wedge2(d2 as i64, k) {
            for lam in sym_cauchy(d1 as i64, k, 2 * r) {
                let sp_table = gl_to_sp(&lam, r);
                for (gamma, cu) in tensor_u(k, &lam, &nu) {
                    for (sp_w, csp) in &sp_table {
                        out.add(gamma.padded(k), sp_w.clone(), cu * csp);
                    }
                }
            }
        }
    }
    let arc = Arc::new(out);
    SYM_UP_MEMO.with(|m| m.borrow_mut().insert((d, k, r), arc.clone()));
    arc
}

/// Entries of the full S(u∩p) whose U(k)-size equals `u_size`, summed over
/// all symmetric degrees and grouped by Sp(r) weight. Only degrees d1 + 2 d2
/// = u_size contribute, which is what makes the Blattner degree sum finite.
type SpSlice = BTreeMap<Vec<i64>, Vec<(Partition, i64)>>;

fn sym_up_usize_slice(u_size: i64, k: usize, r: usize) -> Arc<SpSlice> {
    if let Some(hit) = USLICE_MEMO.with(|m| m.borrow().get(&(u_size, k, r)).cloned()) {
        return hit;
    }
    let mut flat: BTreeMap<(Vec<i64>, Partition), i64> = BTreeMap::new();
    let mut d2 = 0;
    while 2 * d2 <= u_size {
        let d1 = u_size - 2 * d2;
        for nu in sym_wedge2(d2, k) {
            for lam in sym_cauchy(d1, k, 2 * r) {
                let sp_table = gl_to_sp(&lam, r);
                for (gamma, cu) in tensor_u(k, &lam, &nu) {
                    for (sp_w, csp) in &sp_table {
                        *flat.entry((sp_w.clone(), gamma.clone())).or_insert(0) += cu * csp;
                    }
                }
            }
        }
        d2 += 1;
    }
    let mut out: SpSlice = BTreeMap::new();
    for ((sp_w, gamma), mult) in flat {
        out.entry(sp_w).or_default().push((gamma, mult));
    }
    let arc = Arc::new(out);
    USLICE_MEMO.with(|m| m.borrow_mut().insert((u_size, k, r), arc.clone()));
    arc
}

fn blocks_of(p: &RepParams) -> Vec<(usize, i64)> {
    p.aq_factors.iter().map(|f| (f.k, f.b + f.k as i64 - 1)).collect()
}

fn zsharp_table(blocks: &[(usize, i64)]) -> Arc<Vec<(Partition, i64)>> {
    let mut canonical = blocks.to_vec();
    canonical.sort_unstable_by(|a, b| b.cmp(a));
    if let Some(hit) = ZSHARP_MEMO.with(|m| m.borrow().get(&canonical).cloned()) {
        return hit;
    }
    let k: usize = canonical.iter().map(|b| b.0).sum();
    let table: Vec<(Partition, i64)> =
        partitions::rectangle_product(&canonical, k).into_iter().collect();
    let arc = Arc::new(table);
    ZSHARP_MEMO.with(|m| m.borrow_mut().insert(canonical, arc.clone()));
    arc
}

/// K-type support of Z# = Z ⊗ det^{k+2r-1}: the iterated LR product of the
/// rectangles (b_i + k_i - 1)^{k_i} inside U(k). Every key shares the size
/// Σ k_i (b_i + k_i - 1); keys are padded to length k.
pub fn zsharp_ktypes(p: &RepParams) -> BTreeMap<Vec<i64>, i64> {
    let k: usize = p.aq_factors.iter().map(|f| f.k).sum();
    zsharp_table(&blocks_of(p))
        .iter()
        .map(|(gamma, m)| (gamma.padded(k), *m))
        .collect()
}

/// Multiplicity [pi : E_tau] by the Blattner-type formula: the alternating
/// sum over Kostant pieces (gamma_w; mu_w) of
///   sum_{gamma_z, alpha} Z#[gamma_z] [S(u∩p) : (alpha; mu_w)]
///       c^{gamma_w}_{gamma_z, alpha},
/// where the U(k)-size constraint |alpha| = |gamma_w| - |gamma_z| bounds the
/// symmetric degree exactly. Pieces are filtered before any LR work: the
/// U(k) side must be a partition at least as large as the Z# size, and the
/// Sp side must fit inside the remaining size with matching parity.
pub fn ktype_multiplicity(p: &RepParams, tau: &Weight) -> Result<i64, Error> {
    let n = p.rank();
    assert_eq!(tau.rank(), n, "ktype_multiplicity: rank mismatch");
    assert!(is_ktype(tau), "ktype_multiplicity: {tau} is not a K-type");
    let k: usize = p.aq_factors.iter().map(|f| f.k).sum();
    let r = p.r;
    let blocks = blocks_of(p);
    let size_z: i64 = blocks.iter().map(|&(ki, bi)| ki as i64 * bi).sum();
    let zsh = zsharp_table(&blocks);
    let reps = w1_reps(k, r)?;
    let rc = rho_c(n);
    let target = tau.add(&rc);
    let rc_coords = rc.coords();

    let mut total: i64 = 0;
    for w in reps.iter() {
        let xi = w.act(&target);
        let xi = xi.coords();
        let mut u_sum = 0i64;
        let mut u_ok = true;
        for i in 0..k {
            let v = xi[i] - rc_coords[i];
            if v < 0 {
                u_ok = false;
                break;
            }
            u_sum += v;
        }
        if !u_ok {
            continue;
        }
        let delta = u_sum - size_z;
        if delta < 0 {
            continue;
        }
        let sp: Vec<i64> = (k..n).map(|i| xi[i] - rc_coords[i]).collect();
        debug_assert!(
            sp.windows(2).all(|p| p[0] >= p[1]) && sp.last().is_none_or(|&x| x >= 0),
            "Sp side of a W^1 shift must be dominant"
        );
        let sp_sum: i64 = sp.iter().sum();
        if sp_sum > delta || (delta - sp_sum) % 2 != 0 {
            continue;
        }
        let slice = sym_up_usize_slice(delta, k, r);
        let Some(alphas) = slice.get(&sp) else { continue };
        let gamma_w = Partition::from_coords(&xi[..k].iter().zip(rc_coords).map(|(a, b)| a - b).collect::<Vec<_>>())
            .expect("U(k) side of a W^1 shift is a partition here");
        let mut piece = 0i64;
        for (gamma_z, z_mult) in zsh.iter() {
            if !gamma_w.contains(gamma_z) {
                continue;
            }
            for (alpha, s_mult) in alphas {
                let c = partitions::lr_coeff(&gamma_w, gamma_z, alpha);
                if c != 0 {
                    piece += z_mult * s_mult * c;
                }
            }
        }
        if piece != 0 {
            total += if w.length() % 2 == 0 { piece } else { -piece };
        }
    }
    assert!(total >= 0, "Blattner sum went negative ({total}) for {tau} in {p:?}");
    Ok(total)
}

/// Reference evaluator: the literal alternating sum over Kostant pieces and
/// symmetric degrees, one degree table at a time, single-threaded, with no
/// size-based pruning beyond the exact truncation bound for the degree sum.
/// Must agree with `ktype_multiplicity` everywhere.
pub fn naive_ktype_multiplicity(p: &RepParams, tau: &Weight) -> Result<i64, Error> {
    let n = p.rank();
    assert_eq!(tau.rank(), n, "naive_ktype_multiplicity: rank mismatch");
    let k: usize = p.aq_factors.iter().map(|f| f.k).sum();
    let r = p.r;
    let blocks = blocks_of(p);
    let size_z: i64 = blocks.iter().map(|&(ki, bi)| ki as i64 * bi).sum();
    let zsh = zsharp_table(&blocks);
    let pieces = kostant(tau, k, r)?;
    let d_max = pieces
        .iter()
        .filter_map(|piece| {
            let s: i64 = piece.weight.u_part.iter().sum();
            let ok = piece.weight.u_part.iter().all(|&x| x >= 0) && s >= size_z;
            ok.then_some(s - size_z)
        })
        .max()
        .unwrap_or(-1);
    let mut total = 0i64;
    for piece in &pieces {
        let Some(gamma_w) = Partition::from_coords(&piece.weight.u_part) else { continue };
        // d_max = -1 means no piece can receive anything; the d = 0 pass
        // then contributes only zero LR coefficients.
        for d in 0..=d_max.max(0) as usize {
            let table = sym_up(d, k, r);
            for ((alpha_padded, mu), s_mult) in table.iter() {
                if *mu != piece.weight.sp_part {
                    continue;
                }
                let alpha = Partition::from_coords(alpha_padded).expect("table keys are partitions");
                for (gamma_z, z_mult) in zsh.iter() {
                    let c = partitions::lr_coeff(&gamma_w, gamma_z, &alpha);
                    if c != 0 {
                        total += piece.sign() * z_mult * s_mult * c;
                    }
                }
            }
        }
    }
    Ok(total)
}
