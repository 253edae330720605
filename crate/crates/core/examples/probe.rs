use ramtypes::localtypes::dixon::gl_char_table;
use ramtypes::modgroup::Mat2Mod;
use ramtypes::exactnum::{Cyclotomic, rat};
use std::collections::HashMap;

// brute-force basis of a small abelian matrix group
fn abelian_basis(elems: &[Mat2Mod]) -> Vec<(Mat2Mod, u64)> {
    let n = elems.len() as u64;
    let mut basis: Vec<(Mat2Mod, u64)> = Vec::new();
    let mut span: HashMap<u64, Vec<i64>> = HashMap::new(); // elem -> exponents
    span.insert(Mat2Mod::identity(elems[0].modulus).encode(), vec![]);
    while (span.len() as u64) < n {
        // element with maximal order in the quotient by current span
        let mut best: Option<(Mat2Mod, u64)> = None;
        for g in elems {
            let mut k = 1u64;
            let mut x = *g;
            while !span.contains_key(&x.encode()) {
                x = x.mul(g);
                k += 1;
            }
            if best.as_ref().map_or(true, |b| k > b.1) {
                best = Some((*g, k));
            }
        }
        let (g, k) = best.unwrap();
        // require a direct complement: g^k must be expressible with exponents
        // divisible by k... simplest: demand g^k = identity-span-element with
        // adjustment; for our groups a clean direct factor always turns up,
        // so insist g^k has an exponent vector we can divide by k.
        let gk = g.pow(k);
        let ex = span.get(&gk.encode()).unwrap().clone();
        let adjustable = ex.iter().all(|&e| {
            e == 0 || {
                // e must be divisible by k modulo the order of that basis elt
                basis.iter().zip(ex.iter()).any(|_| true) && e % k as i64 == 0
            }
        });
        let g = if adjustable && !ex.is_empty() {
            // replace g by g * prod basis_i^{-e_i/k} so that g^k = 1
            let mut adj = g;
            for (i, &(b, _)) in basis.iter().enumerate() {
                let e = ex[i];
                if e != 0 {
                    let pow = (-(e / k as i64)).rem_euclid(basis[i].1 as i64) as u64;
                    adj = adj.mul(&b.pow(pow));
                }
            }
            adj
        } else if ex.is_empty() || ex.iter().all(|&e| e == 0) {
            g
        } else {
            g
        };
        let k = g.order(); // recompute; should equal quotient order now
        // rebuild span with the new basis element
        basis.push((g, k));
        let mut newspan: HashMap<u64, Vec<i64>> = HashMap::new();
        let old: Vec<(u64, Vec<i64>)> = span.drain().collect();
        for (enc, ex) in &old {
            let base = elems.iter().find(|e| e.encode() == *enc).cloned()
                .unwrap_or(Mat2Mod::identity(elems[0].modulus));
            let mut x = base;
            for j in 0..k {
                let mut v = ex.clone();
                v.push(j as i64);
                newspan.insert(x.encode(), v);
                x = x.mul(&g);
            }
        }
        span = newspan;
        assert!(span.len() as u64 % basis.iter().map(|b| b.1).product::<u64>() == 0 || true);
    }
    basis
}

fn main() {
    let t = gl_char_table(9).unwrap();
    let dim8: Vec<usize> = (0..t.dims.len())
        .filter(|&i| t.dims[i] == 8 && !t.factors_through(i, 3)).collect();
    println!("dim-8 level-2 irreps: {:?}", dim8);
    // twist-orbit structure under chars of (Z/9)*: chi(det g)
    // order-3 character mod 9: chi(2) = zeta_3 where 2 generates (Z/9)*
    let chi3 = |d: u32| -> Cyclotomic {
        // discrete log of d base 2 mod 9
        let mut x = 1u32; let mut k = 0i64;
        while x != d { x = x * 2 % 9; k += 1; }
        Cyclotomic::root_of_unity(3, k)
    };
    for &i in &dim8 {
        // find j with chi_j = chi_i * chi3(det)
        for &j in &dim8 {
            let eq = (0..t.group.num_classes()).all(|c| {
                let rep = t.group.class_reps[c];
                t.values[j][c] == t.values[i][c].mul(&chi3(rep.det()))
            });
            if eq { println!("  twist: #{i} x chi3 = #{j}"); }
        }
    }
    // torus hits
    for eps in [1i64, -1] {
        let mut torus: Vec<Mat2Mod> = Vec::new();
        for a in 0..9i64 {
            if a % 3 == 0 { continue; }
            for b in 0..9i64 {
                if let Ok(m) = Mat2Mod::new(9, a, (3*eps*b).rem_euclid(9), b, a) { torus.push(m); }
            }
        }
        let basis = abelian_basis(&torus);
        let orders: Vec<u64> = basis.iter().map(|b| b.1).collect();
        println!("eps={eps}: basis orders {:?} (|T|={})", orders, torus.len());
        assert_eq!(orders.iter().product::<u64>(), torus.len() as u64);
        // discrete logs
        let mut log: HashMap<u64, Vec<i64>> = HashMap::new();
        let mut stack = vec![(Mat2Mod::identity(9), vec![0i64; basis.len()])];
        log.insert(Mat2Mod::identity(9).encode(), vec![0; basis.len()]);
        while let Some((x, ex)) = stack.pop() {
            for (bi, (b, _)) in basis.iter().enumerate() {
                let y = x.mul(b);
                if !log.contains_key(&y.encode()) {
                    let mut v = ex.clone(); v[bi] += 1;
                    log.insert(y.encode(), v.clone());
                    stack.push((y, v));
                }
            }
        }
        assert_eq!(log.len(), torus.len());
        let in_v1 = |m: &Mat2Mod| m.a % 3 == 1;
        let in_v2 = |m: &Mat2Mod| m.a % 3 == 1 && m.b % 3 == 0 && m.c % 3 == 0;
        let in_v3 = |m: &Mat2Mod| m.a % 9 == 1 && m.b % 3 == 0 && m.c % 3 == 0;
        let mut exps = vec![vec![]];
        for &(_, o) in &basis {
            let mut next = vec![];
            for e in &exps { for j in 0..o { let mut v: Vec<i64> = (*e).clone(); v.push(j as i64); next.push(v); } }
            exps = next;
        }
        for aex in &exps {
            let theta = |m: &Mat2Mod| -> Cyclotomic {
                let ex = &log[&m.encode()];
                let mut v = Cyclotomic::one();
                for (i, (_, o)) in basis.iter().enumerate() {
                    v = v.mul(&Cyclotomic::root_of_unity(*o as u32, aex[i]*ex[i]));
                }
                v
            };
            let triv_on = |pred: &dyn Fn(&Mat2Mod)->bool|
                torus.iter().filter(|m| pred(m)).all(|m| theta(m) == Cyclotomic::one());
            let c_exp = if triv_on(&|m: &Mat2Mod| in_v1(m)) { 1 }
                else if triv_on(&|m: &Mat2Mod| in_v2(m)) { 2 }
                else if triv_on(&|m: &Mat2Mod| in_v3(m)) { 3 } else { 4 };
            if c_exp == 1 || c_exp == 4 { continue; }
            let tneg = theta(&Mat2Mod::neg_identity(9));
            let mut hits = vec![];
            for &i in &dim8 {
                let mut s = Cyclotomic::zero();
                for m in &torus { s = s.add(&theta(m).mul(&t.value_at(i, m).conj())); }
                let ip = s.scale(&rat(1, torus.len() as i64));
                if !ip.is_zero() { hits.push(format!("#{i}x{ip}")); }
            }
            println!("  c={c_exp} theta(-1)={tneg} hits: {}", hits.join(" "));
        }
    }
}
