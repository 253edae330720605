//! Burnside-Dixon-Schneider character tables for enumerable GL(2, Z/M).
//!
//! Computes the full table of irreducible characters of a finite group by
//! simultaneous diagonalization of class matrices over a prime field F_ell,
//! ell = 1 mod exponent(G), then lifts eigenvalue multiplicities to exact
//! cyclotomic character values. The lifted values are exact elements of
//! Q(zeta_m), m = exponent(G); no floating point is involved anywhere.
//!
//! Used to resolve the wild 2-adic and 3-adic supercuspidal type families,
//! where the inducing data are ambiguous but dimension, level, central
//! character and vanishing pattern pin the irreducible constituent.

use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use std::collections::HashMap;

use crate::exactnum::{rat, Cyclotomic};
use crate::modgroup::{GroupData, GroupError};

/// Exact character table of GL(2, Z/M) (or SL for a special group handle).
pub struct CharTable {
    pub group: Arc<GroupData>,
    /// dimension of each irreducible
    pub dims: Vec<u32>,
    /// values\[t\]\[j\] = chi_t at class j
    pub values: Vec<Vec<Cyclotomic>>,
}

impl CharTable {
    /// chi_t evaluated at an arbitrary group element.
    pub fn value_at(&self, t: usize, g: &crate::modgroup::Mat2Mod) -> Cyclotomic {
        self.values[t][self.group.class_id(g) as usize].clone()
    }

    /// Exact inner product of rows s and t (1 iff s = t, by orthogonality).
    pub fn row_inner_product(&self, s: usize, t: usize) -> Cyclotomic {
        let g = &self.group;
        let mut sum = Cyclotomic::zero();
        for j in 0..g.num_classes() {
            let term = self.values[s][j]
                .mul(&self.values[t][j].conj())
                .scale(&rat(g.class_sizes[j] as i64, 1));
            sum = sum.add(&term);
        }
        sum.scale(&rat(1, g.order() as i64))
    }

    /// True when chi_t factors through GL(2, Z/(M/p)), i.e. is constant on
    /// cosets of the congruence kernel.
    pub fn factors_through(&self, t: usize, p: u32) -> bool {
        let g = &self.group;
        let m = g.modulus;
        assert!(m % p == 0);
        let lower = m / p;
        if lower == 1 {
            // factors through the trivial group iff the character is 1-dim
            // trivial; test against constancy
            return self.values[t].iter().all(|v| *v == self.values[t][0]);
        }
        // kernel generators 1 + lower * E_ij
        let mut kern = Vec::new();
        for (da, db, dc, dd) in [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)] {
            if let Ok(x) = crate::modgroup::Mat2Mod::new(
                m,
                1 + (da * lower) as i64,
                (db * lower) as i64,
                (dc * lower) as i64,
                1 + (dd * lower) as i64,
            ) {
                kern.push(x);
            }
        }
        for j in 0..g.num_classes() {
            let rep = g.class_reps[j];
            for x in &kern {
                let h = rep.mul(x);
                let jc = g.class_id(&h) as usize;
                if self.values[t][jc] != self.values[t][j] {
                    return false;
                }
            }
        }
        true
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn inv_mod64(a: u64, m: u64) -> u64 {
    pow_mod64(a, m - 2, m)
}

fn primitive_root(ell: u64) -> u64 {
    let phi = ell - 1;
    let mut factors = Vec::new();
    let mut x = phi;
    let mut p = 2;
    while p * p <= x {
        if x % p == 0 {
            factors.push(p);
            while x % p == 0 {
                x /= p;
            }
        }
        p += 1;
    }
    if x > 1 {
        factors.push(x);
    }
    'outer: for g in 2..ell {
        for &f in &factors {
            if pow_mod64(g, phi / f, ell) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!()
}

// Deterministic xorshift for eigen-splitting seeds.
struct Rng(u64);
impl Rng {
    fn next(&mut self, m: u64) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x % m
    }
}

// Row echelon form over F_ell; returns (echelon rows, pivot column of each row).
fn echelonize(mut rows: Vec<Vec<u64>>, ell: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r >= rows.len() {
            break;
        }
        if let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) {
            rows.swap(r, pr);
            let inv = inv_mod64(rows[r][c], ell);
            for x in rows[r].iter_mut() {
                *x = *x * inv % ell;
            }
            for i in 0..rows.len() {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for cc in 0..ncols {
                        rows[i][cc] = (rows[i][cc] + (ell - f) * rows[r][cc]) % ell;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

// Express v in the echelonized basis; panics if not in the span.
fn solve_in_span(ech: &[Vec<u64>], pivots: &[usize], v: &[u64], ell: u64) -> Vec<u64> {
    let mut v = v.to_vec();
    let mut coeffs = vec![0u64; ech.len()];
    for (i, &pc) in pivots.iter().enumerate() {
        let f = v[pc];
        if f != 0 {
            coeffs[i] = f;
            for c in 0..v.len() {
                v[c] = (v[c] + (ell - f) * ech[i][c]) % ell;
            }
        }
    }
    assert!(v.iter().all(|&x| x == 0), "vector not in subspace span");
    coeffs
}

// Kernel basis of a square matrix over F_ell.
fn kernel(mat: &[Vec<u64>], ell: u64) -> Vec<Vec<u64>> {
    let d = mat.len();
    let (ech, pivots) = echelonize(mat.to_vec(), ell);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..d {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; d];
        v[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = (ell - ech[i][free] % ell) % ell;
        }
        basis.push(v);
    }
    basis
}

pub fn character_table_arc(group: Arc<GroupData>) -> Arc<CharTable> {
    static CACHE: Lazy<Mutex<HashMap<(u32, bool), Arc<CharTable>>>> =
        Lazy::new(|| Mutex::new(HashMap::new()));
    let key = (group.modulus, group.special);
    if let Some(t) = CACHE.lock().unwrap().get(&key) {
        return t.clone();
    }
    let built = Arc::new(character_table(group));
    let mut cache = CACHE.lock().unwrap();
    cache.entry(key).or_insert(built).clone()
}

/// Shared character table of GL(2, Z/M).
pub fn gl_char_table(modulus: u32) -> Result<Arc<CharTable>, GroupError> {
    Ok(character_table_arc(GroupData::gl(modulus)?))
}

/// Full Dixon-Schneider run.
pub fn character_table(group: Arc<GroupData>) -> CharTable {
    let gd = &group;
    let k = gd.num_classes();
    let n = gd.order();

    // element orders per class and the group exponent
    let orders: Vec<u64> = gd.class_reps.iter().map(|g| g.order()).collect();
    let m = orders.iter().fold(1u64, |acc, &o| num_integer::lcm(acc, o));

    // prime ell = 1 mod m, large enough for unambiguous dimension lifting
    let isq = (n as f64).sqrt() as u64 + 2;
    let mut ell = m + 1;
    loop {
        if ell > 4 * isq && ell % m == 1 && is_prime(ell) {
            break;
        }
        ell += m;
    }
    let z = pow_mod64(primitive_root(ell), (ell - 1) / m, ell);

    // class power maps and inverse classes
    let power_class: Vec<Vec<u32>> = (0..k)
        .map(|j| {
            let rep = gd.class_reps[j];
            let mj = orders[j];
            let mut g = crate::modgroup::Mat2Mod::identity(gd.modulus);
            (0..mj)
                .map(|_| {
                    let c = gd.class_id(&g);
                    g = g.mul(&rep);
                    c
                })
                .collect()
        })
        .collect();
    let inv_class: Vec<usize> = (0..k)
        .map(|j| gd.class_id(&gd.class_reps[j].inv()) as usize)
        .collect();
    let id_class = gd.class_id(&crate::modgroup::Mat2Mod::identity(gd.modulus)) as usize;

    // class matrix of class i: A[l][j] = #{x in C_i : x^{-1} rep_l in C_j}
    let class_matrix = |i: usize| -> Vec<Vec<u64>> {
        let mut a = vec![vec![0u64; k]; k];
        let inverses: Vec<crate::modgroup::Mat2Mod> = gd.class_members[i]
            .iter()
            .map(|&xi| gd.elements[xi as usize].inv())
            .collect();
        for (l, row) in a.iter_mut().enumerate() {
            let zl = gd.class_reps[l];
            for xinv in &inverses {
                let j = gd.class_id(&xinv.mul(&zl)) as usize;
                row[j] += 1;
            }
        }
        a
    };

    // visit non-identity classes from smallest
    let mut order_idx: Vec<usize> = (0..k).collect();
    order_idx.sort_by_key(|&i| (gd.class_sizes[i], i));

    struct Space {
        rows: Vec<Vec<u64>>,
    }
    let mut spaces = vec![Space {
        rows: (0..k)
            .map(|i| {
                let mut v = vec![0u64; k];
                v[i] = 1;
                v
            })
            .collect(),
    }];
    let mut rng = Rng(0x9e3779b97f4a7c15);

    for &i in &order_idx {
        if spaces.iter().all(|s| s.rows.len() == 1) {
            break;
        }
        if i == id_class {
            continue;
        }
        let a = class_matrix(i);
        let matvec = |v: &[u64]| -> Vec<u64> {
            a.iter()
                .map(|row| {
                    let mut s: u64 = 0;
                    for (x, y) in row.iter().zip(v) {
                        if *x != 0 && *y != 0 {
                            s = (s + x * y) % ell;
                        }
                    }
                    s
                })
                .collect()
        };
        let mut next_spaces = Vec::new();
        for sp in spaces {
            let d = sp.rows.len();
            if d == 1 {
                next_spaces.push(sp);
                continue;
            }
            let (ech, pivots) = echelonize(sp.rows.clone(), ell);
            // R: action of A on the subspace, columns in the echelon basis
            let mut rmat = vec![vec![0u64; d]; d];
            for (c, b) in ech.iter().enumerate() {
                let y = matvec(b);
                let coeffs = solve_in_span(&ech, &pivots, &y, ell);
                for (r, coef) in coeffs.iter().enumerate() {
                    rmat[r][c] = *coef;
                }
            }
            // eigenvalues via Krylov minimal polynomials of random vectors
            let mut eigenvalues: Vec<u64> = Vec::new();
            let mut split_rows: Vec<Vec<Vec<u64>>> = Vec::new();
            let mut found_total = 0usize;
            for _attempt in 0..8 {
                let w: Vec<u64> = (0..d).map(|_| rng.next(ell)).collect();
                // Krylov sequence until dependence
                let mut krylov: Vec<Vec<u64>> = vec![w.clone()];
                let mut cur = w.clone();
                loop {
                    let nxt: Vec<u64> = (0..d)
                        .map(|r| {
                            let mut s = 0u64;
                            for c in 0..d {
                                s = (s + rmat[r][c] * cur[c]) % ell;
                            }
                            s
                        })
                        .collect();
                    krylov.push(nxt.clone());
                    cur = nxt;
                    let (e, _) = echelonize(krylov.clone(), ell);
                    if e.len() < krylov.len() {
                        break;
                    }
                }
                // minpoly coefficients: solve sum c_t R^t w = 0 with c_deg = 1
                let deg = krylov.len() - 1;
                let (ech_k, piv_k) = echelonize(krylov[..deg].to_vec(), ell);
                let coeffs = solve_in_span(&ech_k, &piv_k, &krylov[deg], ell);
                // basis change: coeffs express R^deg w over echelon of krylov;
                // we only need the roots of x^deg - sum(...) so recompute the
                // companion relation directly over the krylov basis instead:
                // solve in the (non-echelonized) krylov span by augmenting.
                let poly = minpoly_from_krylov(&krylov[..deg], &krylov[deg], ell);
                let _ = coeffs;
                // roots by scanning F_ell
                for lam in 0..ell {
                    // evaluate monic poly x^deg - sum poly[t] x^t at lam
                    let mut val = pow_mod64(lam, deg as u64, ell);
                    let mut pw = 1u64;
                    for t in 0..deg {
                        val = (val + ell * ell - poly[t] % ell * pw % ell) % ell;
                        pw = pw * lam % ell;
                    }
                    if val % ell == 0 && !eigenvalues.contains(&lam) {
                        eigenvalues.push(lam);
                        // kernel of (R - lam)
                        let mut shifted = rmat.clone();
                        for r in 0..d {
                            shifted[r][r] = (shifted[r][r] + ell - lam) % ell;
                        }
                        let kb = kernel(&shifted, ell);
                        found_total += kb.len();
                        // map back to ambient coordinates
                        let rows: Vec<Vec<u64>> = kb
                            .iter()
                            .map(|coef| {
                                let mut v = vec![0u64; k];
                                for (t, c) in coef.iter().enumerate() {
                                    if *c != 0 {
                                        for cc in 0..k {
                                            v[cc] = (v[cc] + c * ech[t][cc]) % ell;
                                        }
                                    }
                                }
                                v
                            })
                            .collect();
                        split_rows.push(rows);
                    }
                }
                if found_total == d {
                    break;
                }
            }
            assert_eq!(found_total, d, "class matrix failed to split subspace");
            for rows in split_rows {
                next_spaces.push(Space { rows });
            }
        }
        spaces = next_spaces;
    }
    assert!(
        spaces.iter().all(|s| s.rows.len() == 1),
        "character spaces not fully split"
    );
    assert_eq!(spaces.len(), k);

    // normalize eigenvectors and recover chi mod ell
    let mut dims = Vec::with_capacity(k);
    let mut values_mod: Vec<Vec<u64>> = Vec::with_capacity(k);
    for sp in &spaces {
        let v = &sp.rows[0];
        assert!(v[id_class] != 0, "eigenvector vanishes at identity class");
        let norm = inv_mod64(v[id_class], ell);
        let w: Vec<u64> = v.iter().map(|&x| x * norm % ell).collect();
        // chi(1)^2 = |G| / sum_j |C_j| w_j w_{j'}
        let mut s = 0u64;
        for j in 0..k {
            s = (s + gd.class_sizes[j] % ell * w[j] % ell * w[inv_class[j]]) % ell;
        }
        let chi1sq = n % ell * inv_mod64(s, ell) % ell;
        let bound = 2 * isq;
        let mut dim = 0u64;
        for dcand in 1..=bound {
            if dcand * dcand % ell == chi1sq {
                dim = dcand;
                break;
            }
        }
        assert!(dim > 0, "no dimension matches chi(1)^2 mod ell");
        dims.push(dim as u32);
        // chi(g_j) = chi(1) * w_{j'}
        let chim: Vec<u64> = (0..k).map(|j| dim % ell * w[inv_class[j]] % ell).collect();
        values_mod.push(chim);
    }
    assert_eq!(
        dims.iter().map(|&d| d as u64 * d as u64).sum::<u64>(),
        n,
        "sum of squared dimensions must be the group order"
    );

    // lift to exact cyclotomic values
    let mut values: Vec<Vec<Cyclotomic>> = Vec::with_capacity(k);
    for (t, chim) in values_mod.iter().enumerate() {
        let mut row = Vec::with_capacity(k);
        for j in 0..k {
            let mj = orders[j];
            let zj = pow_mod64(z, m / mj, ell);
            let mj_inv = inv_mod64(mj % ell, ell);
            let mut val = Cyclotomic::zero();
            for e in 0..mj {
                let mut acc = 0u64;
                for s in 0..mj {
                    let cls = power_class[j][s as usize] as usize;
                    let zexp = pow_mod64(zj, (s * e) % mj, ell);
                    // chi(g^s) * zj^{-se}
                    acc = (acc + chim[cls] * inv_mod64(zexp, ell)) % ell;
                }
                let ae = acc * mj_inv % ell;
                assert!(
                    ae <= dims[t] as u64,
                    "eigenvalue multiplicity exceeds the dimension"
                );
                if ae > 0 {
                    val = val.add(&Cyclotomic::root_of_unity(mj as u32, e as i64).scale(&rat(ae as i64, 1)));
                }
            }
            row.push(val.shrink());
        }
        values.push(row);
    }

    let table = CharTable {
        group: group.clone(),
        dims,
        values,
    };
    // verification: identity column and row orthonormality spot checks
    for t in 0..k {
        assert_eq!(
            table.values[t][id_class],
            Cyclotomic::from_int(table.dims[t] as i64)
        );
    }
    for t in 0..k.min(6) {
        assert_eq!(table.row_inner_product(t, t), Cyclotomic::one());
        if t + 1 < k {
            assert!(table.row_inner_product(t, t + 1).is_zero());
        }
    }
    table
}

// Monic minimal polynomial coefficients (low powers first, degree = len of
// `basis`) of the Krylov relation: R^deg w = sum_t poly[t] R^t w.
fn minpoly_from_krylov(basis: &[Vec<u64>], target: &[u64], ell: u64) -> Vec<u64> {
    let deg = basis.len();
    let kdim = target.len();
    // solve the kdim x deg system basis^T * c = target by elimination on the
    // augmented matrix whose columns are the Krylov vectors
    let mut aug: Vec<Vec<u64>> = (0..kdim)
        .map(|r| {
            let mut row: Vec<u64> = basis.iter().map(|b| b[r]).collect();
            row.push(target[r]);
            row
        })
        .collect();
    let ncols = deg + 1;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut rrow = 0;
    for c in 0..deg {
        if let Some(pr) = (rrow..kdim).find(|&i| aug[i][c] != 0) {
            aug.swap(rrow, pr);
            let inv = inv_mod64(aug[rrow][c], ell);
            for x in aug[rrow].iter_mut() {
                *x = *x * inv % ell;
            }
            for i in 0..kdim {
                if i != rrow && aug[i][c] != 0 {
                    let f = aug[i][c];
                    for cc in 0..ncols {
                        aug[i][cc] = (aug[i][cc] + (ell - f) * aug[rrow][cc]) % ell;
                    }
                }
            }
            pivots.push((rrow, c));
            rrow += 1;
        }
    }
    let mut poly = vec![0u64; deg];
    for &(r, c) in &pivots {
        poly[c] = aug[r][deg];
    }
    poly
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_f3_table() {
        let t = character_table_arc(GroupData::sl(3).unwrap());
        // SL(2, F_3) has 7 irreducibles of dims 1,1,1,2,2,2,3
        let mut dims = t.dims.clone();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 1, 1, 2, 2, 2, 3]);
    }

    #[test]
    fn gl2_f3_table() {
        let t = gl_char_table(3).unwrap();
        let mut dims = t.dims.clone();
        dims.sort_unstable();
        // GL(2, F_3): 1,1,2,2,2,3,3,4 (sum of squares 48)
        assert_eq!(dims, vec![1, 1, 2, 2, 2, 3, 3, 4]);
        // full orthonormality
        for s in 0..t.dims.len() {
            for u in 0..t.dims.len() {
                let ip = t.row_inner_product(s, u);
                if s == u {
                    assert_eq!(ip, Cyclotomic::one());
                } else {
                    assert!(ip.is_zero());
                }
            }
        }
    }

    #[test]
    fn gl2_z4_table_dimensions() {
        let t = gl_char_table(4).unwrap();
        let total: u64 = t.dims.iter().map(|&d| d as u64 * d as u64).sum();
        assert_eq!(total, 96);
    }
}
