//! Finite matrix groups GL(2, Z/M) and SL(2, Z/M).
//!
//! Provides exact 2x2 matrix arithmetic over Z/M, the standard subgroups
//! Z-bar, Gamma_rho-bar, Gamma_i-bar, Gamma_infinity-bar of SL(2, Z/N), the
//! projective line P^1(Z/p^c) with its fractional-linear action, CRT
//! splitting along prime powers, and (for enumerable moduli) full element
//! lists with conjugacy classes. Groups and subgroups are immutable after
//! construction; every query is pure.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("matrix determinant {det} is not a unit mod {modulus}")]
    NotInvertible { det: u32, modulus: u32 },
    #[error("prime powers {0:?} do not multiply to the modulus {1}")]
    BadFactorization(Vec<u32>, u32),
    #[error("group GL(2, Z/{0}) is too large to enumerate")]
    GroupTooLarge(u32),
    #[error("bad matrix literal {0:?}: expected \"a,b;c,d\"")]
    BadMatrixLiteral(String),
}

/// Largest GL(2, Z/M) the registry will enumerate (element count).
pub const MAX_ENUMERABLE: u64 = 550_000;

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// Modular inverse of `a` mod `m` for gcd(a, m) = 1.
pub fn mod_inverse(a: u32, m: u32) -> Option<u32> {
    let (mut r0, mut r1) = (m as i64, (a % m) as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i64) as u32)
}

/// An invertible 2x2 matrix over Z/M.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat2Mod {
    pub modulus: u32,
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl fmt::Debug for Mat2Mod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{},{};{},{}] mod {}",
            self.a, self.b, self.c, self.d, self.modulus
        )
    }
}

impl Mat2Mod {
    /// Construct, rejecting matrices whose determinant is not a unit.
    pub fn new(modulus: u32, a: i64, b: i64, c: i64, d: i64) -> Result<Self, GroupError> {
        assert!(modulus >= 1);
        let m = modulus as i64;
        let (a, b, c, d) = (
            a.rem_euclid(m) as u32,
            b.rem_euclid(m) as u32,
            c.rem_euclid(m) as u32,
            d.rem_euclid(m) as u32,
        );
        let g = Mat2Mod { modulus, a, b, c, d };
        let det = g.det();
        if modulus > 1 && gcd_u64(det as u64, modulus as u64) != 1 {
            return Err(GroupError::NotInvertible { det, modulus });
        }
        Ok(g)
    }

    /// Parse the CLI text form `"a,b;c,d"`.
    pub fn parse(modulus: u32, s: &str) -> Result<Self, GroupError> {
        let bad = || GroupError::BadMatrixLiteral(s.to_string());
        let mut rows = s.split(';');
        let mut next_row = || -> Result<(i64, i64), GroupError> {
            let row = rows.next().ok_or_else(bad)?;
            let mut it = row.split(',');
            let x = it
                .next()
                .and_then(|v| v.trim().parse::<i64>().ok())
                .ok_or_else(bad)?;
            let y = it
                .next()
                .and_then(|v| v.trim().parse::<i64>().ok())
                .ok_or_else(bad)?;
            if it.next().is_some() {
                return Err(bad());
            }
            Ok((x, y))
        };
        let (a, b) = next_row()?;
        let (c, d) = next_row()?;
        if rows.next().is_some() {
            return Err(bad());
        }
        Mat2Mod::new(modulus, a, b, c, d)
    }

    pub fn identity(modulus: u32) -> Self {
        Mat2Mod { modulus, a: 1 % modulus, b: 0, c: 0, d: 1 % modulus }
    }

    pub fn neg_identity(modulus: u32) -> Self {
        let m = modulus;
        Mat2Mod { modulus, a: (m - 1) % m, b: 0, c: 0, d: (m - 1) % m }
    }

    pub fn det(&self) -> u32 {
        let m = self.modulus as u64;
        let ad = (self.a as u64 * self.d as u64) % m;
        let bc = (self.b as u64 * self.c as u64) % m;
        ((ad + m - bc) % m) as u32
    }

    pub fn trace(&self) -> u32 {
        (self.a + self.d) % self.modulus
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2Mod::identity(self.modulus)
    }

    pub fn is_scalar(&self) -> bool {
        self.b == 0 && self.c == 0 && self.a == self.d
    }

    pub fn mul(&self, other: &Mat2Mod) -> Mat2Mod {
        debug_assert_eq!(self.modulus, other.modulus);
        let m = self.modulus as u64;
        let mv = |x: u64| (x % m) as u32;
        Mat2Mod {
            modulus: self.modulus,
            a: mv(self.a as u64 * other.a as u64 + self.b as u64 * other.c as u64),
            b: mv(self.a as u64 * other.b as u64 + self.b as u64 * other.d as u64),
            c: mv(self.c as u64 * other.a as u64 + self.d as u64 * other.c as u64),
            d: mv(self.c as u64 * other.b as u64 + self.d as u64 * other.d as u64),
        }
    }

    pub fn inv(&self) -> Mat2Mod {
        let m = self.modulus;
        if m == 1 {
            return *self;
        }
        let det_inv = mod_inverse(self.det(), m).expect("constructor guarantees a unit det") as u64;
        let mm = m as u64;
        let mv = |x: u64| ((x % mm) * det_inv % mm) as u32;
        Mat2Mod {
            modulus: m,
            a: mv(self.d as u64),
            b: mv((mm - self.b as u64 % mm) % mm),
            c: mv((mm - self.c as u64 % mm) % mm),
            d: mv(self.a as u64),
        }
    }

    pub fn pow(&self, e: u64) -> Mat2Mod {
        let mut result = Mat2Mod::identity(self.modulus);
        let mut base = *self;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    /// Least k >= 1 with g^k = 1.
    pub fn order(&self) -> u64 {
        let mut k = 1u64;
        let mut g = *self;
        let id = Mat2Mod::identity(self.modulus);
        while g != id {
            g = g.mul(self);
            k += 1;
            assert!(k < 1 << 40, "runaway element order");
        }
        k
    }

    pub fn conj_by(&self, x: &Mat2Mod) -> Mat2Mod {
        x.inv().mul(self).mul(x)
    }

    /// Componentwise reduction to a divisor modulus.
    pub fn reduce(&self, m2: u32) -> Mat2Mod {
        debug_assert!(self.modulus % m2 == 0);
        Mat2Mod {
            modulus: m2,
            a: self.a % m2,
            b: self.b % m2,
            c: self.c % m2,
            d: self.d % m2,
        }
    }

    /// Dense encoding for hashing; requires modulus < 2^16.
    pub fn encode(&self) -> u64 {
        debug_assert!(self.modulus < 1 << 16);
        ((self.a as u64) << 48) | ((self.b as u64) << 32) | ((self.c as u64) << 16) | self.d as u64
    }

    pub fn text(&self) -> String {
        format!("{},{};{},{}", self.a, self.b, self.c, self.d)
    }
}

/// |GL(2, Z/M)| or |SL(2, Z/M)|.
///
/// |GL| = M^4 prod_(p | M) (1 - 1/p)(1 - 1/p^2) and |SL| = |GL| / phi(M).
pub fn group_order(modulus: u32, special: bool) -> u64 {
    assert!(modulus >= 1);
    let mut order: u64 = (modulus as u64).pow(4);
    let mut m = modulus;
    let mut p = 2u64;
    while p * p <= m as u64 {
        if m as u64 % p == 0 {
            while m as u64 % p == 0 {
                m /= p as u32;
            }
            order = order / p * (p - 1);
            order = order / (p * p) * (p * p - 1);
        }
        p += 1;
    }
    if m > 1 {
        let p = m as u64;
        order = order / p * (p - 1);
        order = order / (p * p) * (p * p - 1);
    }
    if special {
        order / crate::exactnum::euler_phi(modulus) as u64
    } else {
        order
    }
}

/// Split along pairwise coprime prime powers multiplying to the modulus.
pub fn crt_split(g: &Mat2Mod, factors: &[u32]) -> Result<Vec<Mat2Mod>, GroupError> {
    let prod: u64 = factors.iter().map(|&q| q as u64).product();
    if prod != g.modulus as u64 {
        return Err(GroupError::BadFactorization(factors.to_vec(), g.modulus));
    }
    for (i, &qi) in factors.iter().enumerate() {
        for &qj in &factors[i + 1..] {
            if gcd_u64(qi as u64, qj as u64) != 1 {
                return Err(GroupError::BadFactorization(factors.to_vec(), g.modulus));
            }
        }
    }
    Ok(factors.iter().map(|&q| g.reduce(q)).collect())
}

/// Inverse of [`crt_split`]: lift componentwise by the Chinese remainder theorem.
pub fn crt_join(parts: &[Mat2Mod]) -> Result<Mat2Mod, GroupError> {
    assert!(!parts.is_empty());
    let modulus: u64 = parts.iter().map(|g| g.modulus as u64).product();
    assert!(modulus < 1 << 16);
    let lift = |entry: fn(&Mat2Mod) -> u32| -> i64 {
        let mut x: i64 = 0;
        let mut m: i64 = 1;
        for part in parts {
            let q = part.modulus as i64;
            let r = entry(part) as i64;
            // solve x' = x mod m, x' = r mod q
            let minv = mod_inverse((m % q).rem_euclid(q) as u32, q as u32)
                .expect("moduli must be pairwise coprime") as i64;
            let t = ((r - x).rem_euclid(q) * minv).rem_euclid(q);
            x += m * t;
            m *= q;
        }
        x
    };
    Mat2Mod::new(
        modulus as u32,
        lift(|g| g.a),
        lift(|g| g.b),
        lift(|g| g.c),
        lift(|g| g.d),
    )
}

/// A point of P^1(Z/p^c), stored as the canonical representative of its
/// unit-scaling class: (x, 1) when y is a unit (preferring y), else (1, y)
/// with y divisible by p.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ProjPoint {
    pub modulus: u32,
    pub prime: u32,
    pub x: u32,
    pub y: u32,
}

impl ProjPoint {
    pub fn new(modulus: u32, prime: u32, x: u32, y: u32) -> Self {
        let (x, y) = (x % modulus, y % modulus);
        if y % prime != 0 {
            let yi = mod_inverse(y, modulus).expect("y is a unit") as u64;
            ProjPoint {
                modulus,
                prime,
                x: ((x as u64 * yi) % modulus as u64) as u32,
                y: 1 % modulus,
            }
        } else {
            assert!(x % prime != 0, "not a projective point: gcd(x, y, p) > 1");
            let xi = mod_inverse(x, modulus).expect("x is a unit") as u64;
            ProjPoint {
                modulus,
                prime,
                x: 1 % modulus,
                y: ((y as u64 * xi) % modulus as u64) as u32,
            }
        }
    }

    /// All points, in a fixed order: [t : 1] for t = 0..q-1, then [1 : sp].
    pub fn enumerate(prime: u32, c: u32) -> Vec<ProjPoint> {
        let q = prime.pow(c);
        let mut pts = Vec::with_capacity((q + q / prime) as usize);
        for t in 0..q {
            pts.push(ProjPoint { modulus: q, prime, x: t, y: 1 % q });
        }
        for s in 0..q / prime {
            pts.push(ProjPoint { modulus: q, prime, x: 1 % q, y: (s * prime) % q });
        }
        pts
    }

    /// Fractional-linear action of g on column vectors: [x : y] -> [ax+by : cx+dy].
    pub fn act(&self, g: &Mat2Mod) -> ProjPoint {
        debug_assert_eq!(g.modulus, self.modulus);
        let m = self.modulus as u64;
        let nx = ((g.a as u64 * self.x as u64 + g.b as u64 * self.y as u64) % m) as u32;
        let ny = ((g.c as u64 * self.x as u64 + g.d as u64 * self.y as u64) % m) as u32;
        ProjPoint::new(self.modulus, self.prime, nx, ny)
    }

    /// An invertible matrix sending [1 : 0] to this point.
    pub fn coset_rep(&self) -> Mat2Mod {
        let m = self.modulus;
        if self.y == 1 % m {
            // [[x, -1], [1, 0]], det = 1
            Mat2Mod::new(m, self.x as i64, -1, 1, 0).unwrap()
        } else {
            // x = 1: [[1, 0], [y, 1]], det = 1
            Mat2Mod::new(m, 1, 0, self.y as i64, 1).unwrap()
        }
    }
}

/// All fixed points of g on P^1(Z/p^c), in enumeration order.
pub fn proj_fixed_points(g: &Mat2Mod, prime: u32) -> Vec<ProjPoint> {
    let c = {
        let mut c = 0;
        let mut q = g.modulus;
        while q > 1 {
            assert!(q % prime == 0, "modulus must be a power of {prime}");
            q /= prime;
            c += 1;
        }
        c
    };
    ProjPoint::enumerate(prime, c)
        .into_iter()
        .filter(|pt| pt.act(g) == *pt)
        .collect()
}

/// Labels for the standard subgroups of SL(2, Z/N).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SubgroupLabel {
    Center,
    GammaRho,
    GammaI,
    GammaInfinity,
    Custom,
}

/// A subgroup given by generators, with its full element list cached.
#[derive(Clone)]
pub struct SubgroupData {
    pub modulus: u32,
    pub generators: Vec<Mat2Mod>,
    pub elements: Vec<Mat2Mod>,
    pub label: SubgroupLabel,
}

impl SubgroupData {
    pub fn from_generators(
        modulus: u32,
        generators: Vec<Mat2Mod>,
        label: SubgroupLabel,
    ) -> SubgroupData {
        let mut elements = vec![Mat2Mod::identity(modulus)];
        let mut seen: HashMap<u64, ()> = HashMap::new();
        seen.insert(Mat2Mod::identity(modulus).encode(), ());
        let mut frontier = elements.clone();
        while let Some(g) = frontier.pop() {
            for gen in &generators {
                for h in [g.mul(gen), gen.mul(&g)] {
                    if seen.insert(h.encode(), ()).is_none() {
                        elements.push(h);
                        frontier.push(h);
                    }
                }
            }
        }
        elements.sort_by_key(|g| g.encode());
        SubgroupData { modulus, generators, elements, label }
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, g: &Mat2Mod) -> bool {
        self.elements.binary_search_by_key(&g.encode(), |h| h.encode()).is_ok()
    }

    /// Z-bar = {+-1} in SL(2, Z/N), N >= 3.
    pub fn center(n: u32) -> SubgroupData {
        assert!(n >= 3);
        SubgroupData::from_generators(
            n,
            vec![Mat2Mod::neg_identity(n)],
            SubgroupLabel::Center,
        )
    }

    /// Gamma_rho-bar, generated by [[0,-1],[1,1]] (order 6, cube = -1).
    pub fn gamma_rho(n: u32) -> SubgroupData {
        assert!(n >= 3);
        SubgroupData::from_generators(
            n,
            vec![Mat2Mod::new(n, 0, -1, 1, 1).unwrap()],
            SubgroupLabel::GammaRho,
        )
    }

    /// Gamma_i-bar, generated by [[0,-1],[1,0]] (order 4, square = -1).
    pub fn gamma_i(n: u32) -> SubgroupData {
        assert!(n >= 3);
        SubgroupData::from_generators(
            n,
            vec![Mat2Mod::new(n, 0, -1, 1, 0).unwrap()],
            SubgroupLabel::GammaI,
        )
    }

    /// Gamma_infinity-bar = <u, -1> with u = [[1,1],[0,1]] (order 2N for N > 2).
    pub fn gamma_infinity(n: u32) -> SubgroupData {
        assert!(n >= 3);
        SubgroupData::from_generators(
            n,
            vec![
                Mat2Mod::new(n, 1, 1, 0, 1).unwrap(),
                Mat2Mod::neg_identity(n),
            ],
            SubgroupLabel::GammaInfinity,
        )
    }
}

/// Generators of SL(2, Z/M) (the two elementary unipotents), plus diagonal
/// unit generators for GL(2, Z/M).
pub fn gl2_generators(m: u32) -> Vec<Mat2Mod> {
    let mut gens = vec![
        Mat2Mod::new(m, 1, 1, 0, 1).unwrap(),
        Mat2Mod::new(m, 1, 0, 1, 1).unwrap(),
    ];
    for u in unit_group_generators(m) {
        gens.push(Mat2Mod::new(m, 1, 0, 0, u as i64).unwrap());
    }
    gens
}

/// Generators of (Z/m)*; for composite m, CRT lifts of the prime-power
/// generators.
pub fn unit_group_generators(m: u32) -> Vec<u32> {
    if m <= 2 {
        return vec![];
    }
    // composite: combine prime-power generators through the CRT
    let factors = {
        let mut fs: Vec<u32> = Vec::new();
        let mut x = m;
        let mut p = 2;
        while p * p <= x {
            if x % p == 0 {
                let mut q = 1;
                while x % p == 0 {
                    q *= p;
                    x /= p;
                }
                fs.push(q);
            }
            p += 1;
        }
        if x > 1 {
            fs.push(x);
        }
        fs
    };
    if factors.len() > 1 {
        let mut gens = Vec::new();
        for (i, &q) in factors.iter().enumerate() {
            for g in unit_group_generators(q) {
                // lift: g mod q, 1 mod the complementary factor
                let rest: u64 = factors
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, &r)| r as u64)
                    .product();
                let rest = rest as u32;
                let inv_rest = mod_inverse(rest % q, q).expect("coprime factors") as u64;
                let inv_q = mod_inverse(q % rest.max(1), rest).unwrap_or(0) as u64;
                let lifted = (g as u64 * rest as u64 % m as u64 * inv_rest % m as u64
                    + 1 * q as u64 * inv_q % m as u64)
                    % m as u64;
                gens.push(lifted as u32);
            }
        }
        return gens;
    }
    if m % 2 == 0 {
        // 2^k: generated by -1 and 5
        if m == 4 {
            return vec![3];
        }
        return vec![m - 1, 5];
    }
    // odd prime power: cyclic; find the least primitive root
    let phi = crate::exactnum::euler_phi(m);
    let prime_factors: Vec<u32> = {
        let mut fs = Vec::new();
        let mut x = phi;
        let mut p = 2;
        while p * p <= x {
            if x % p == 0 {
                fs.push(p);
                while x % p == 0 {
                    x /= p;
                }
            }
            p += 1;
        }
        if x > 1 {
            fs.push(x);
        }
        fs
    };
    'outer: for g in 2..m {
        if gcd_u64(g as u64, m as u64) != 1 {
            continue;
        }
        for &p in &prime_factors {
            if pow_mod(g, (phi / p) as u64, m) == 1 {
                continue 'outer;
            }
        }
        return vec![g];
    }
    unreachable!("prime power unit group has a generator");
}

pub fn pow_mod(base: u32, mut e: u64, m: u32) -> u32 {
    let mut result = 1u64;
    let mut b = base as u64 % m as u64;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % m as u64;
        }
        b = b * b % m as u64;
        e >>= 1;
    }
    result as u32
}

/// Fully enumerated GL(2, Z/M) with conjugacy classes. Built lazily and
/// shared; construction is refused above [`MAX_ENUMERABLE`] elements.
pub struct GroupData {
    pub modulus: u32,
    pub special: bool,
    pub elements: Vec<Mat2Mod>,
    index: HashMap<u64, u32>,
    /// conjugacy class id of each element (parallel to `elements`)
    pub class_of: Vec<u32>,
    /// one representative per class (the first element found in it)
    pub class_reps: Vec<Mat2Mod>,
    pub class_sizes: Vec<u64>,
    /// element indices grouped by class
    pub class_members: Vec<Vec<u32>>,
}

impl GroupData {
    fn build(modulus: u32, special: bool) -> Result<GroupData, GroupError> {
        let order = group_order(modulus, special);
        if order > MAX_ENUMERABLE {
            return Err(GroupError::GroupTooLarge(modulus));
        }
        let m = modulus;
        let mut elements = Vec::with_capacity(order as usize);
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    for d in 0..m {
                        let g = Mat2Mod { modulus: m, a, b, c, d };
                        let det = g.det();
                        let ok = if special {
                            det == 1 % m
                        } else {
                            gcd_u64(det as u64, m as u64) == 1
                        };
                        if ok {
                            elements.push(g);
                        }
                    }
                }
            }
        }
        assert_eq!(elements.len() as u64, order);
        let index: HashMap<u64, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.encode(), i as u32))
            .collect();
        // conjugacy classes by orbit search under conjugation by generators
        let gens = if special {
            gl2_generators(m)[..2].to_vec()
        } else {
            gl2_generators(m)
        };
        let mut class_of = vec![u32::MAX; elements.len()];
        let mut class_reps = Vec::new();
        let mut class_sizes = Vec::new();
        let mut class_members = Vec::new();
        for start in 0..elements.len() {
            if class_of[start] != u32::MAX {
                continue;
            }
            let cid = class_reps.len() as u32;
            class_reps.push(elements[start]);
            let mut members = vec![start as u32];
            class_of[start] = cid;
            let mut stack = vec![start as u32];
            while let Some(i) = stack.pop() {
                let g = elements[i as usize];
                for x in &gens {
                    let h = g.conj_by(x);
                    let j = index[&h.encode()];
                    if class_of[j as usize] == u32::MAX {
                        class_of[j as usize] = cid;
                        members.push(j);
                        stack.push(j);
                    }
                }
            }
            class_sizes.push(members.len() as u64);
            class_members.push(members);
        }
        Ok(GroupData {
            modulus,
            special,
            elements,
            index,
            class_of,
            class_reps,
            class_sizes,
            class_members,
        })
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn num_classes(&self) -> usize {
        self.class_reps.len()
    }

    pub fn element_index(&self, g: &Mat2Mod) -> u32 {
        self.index[&g.encode()]
    }

    pub fn class_id(&self, g: &Mat2Mod) -> u32 {
        self.class_of[self.index[&g.encode()] as usize]
    }

    /// Shared handle to GL(2, Z/M).
    pub fn gl(modulus: u32) -> Result<Arc<GroupData>, GroupError> {
        registry_get(modulus, false)
    }

    /// Shared handle to SL(2, Z/M).
    pub fn sl(modulus: u32) -> Result<Arc<GroupData>, GroupError> {
        registry_get(modulus, true)
    }
}

static REGISTRY: Lazy<Mutex<HashMap<(u32, bool), Arc<GroupData>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn registry_get(modulus: u32, special: bool) -> Result<Arc<GroupData>, GroupError> {
    if let Some(gd) = REGISTRY.lock().unwrap().get(&(modulus, special)) {
        return Ok(gd.clone());
    }
    let built = Arc::new(GroupData::build(modulus, special)?);
    let mut reg = REGISTRY.lock().unwrap();
    Ok(reg.entry((modulus, special)).or_insert(built).clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders_match_enumeration() {
        // direct enumeration of invertible matrices mod 3
        let mut n_gl = 0u64;
        let mut n_sl = 0u64;
        for a in 0..3i64 {
            for b in 0..3i64 {
                for c in 0..3i64 {
                    for d in 0..3i64 {
                        let det = (a * d - b * c).rem_euclid(3);
                        if det != 0 {
                            n_gl += 1;
                        }
                        if det == 1 {
                            n_sl += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(group_order(3, false), n_gl);
        assert_eq!(group_order(3, false), 48);
        assert_eq!(group_order(3, true), n_sl);
        // |SL(2, F_7)| = 7 * 48
        assert_eq!(group_order(7, true), 336);
        assert_eq!(group_order(1, false), 1);
    }

    #[test]
    fn element_orders() {
        let rho = Mat2Mod::new(7, 0, -1, 1, 1).unwrap();
        assert_eq!(rho.order(), 6);
        let s = Mat2Mod::new(7, 0, -1, 1, 0).unwrap();
        assert_eq!(s.order(), 4);
        let u = Mat2Mod::new(5, 1, 1, 0, 1).unwrap();
        assert_eq!(u.order(), 5);
    }

    #[test]
    fn stabilizer_generator_relations_any_modulus() {
        for n in 3..40 {
            let rho = Mat2Mod::new(n, 0, -1, 1, 1).unwrap();
            assert_eq!(rho.order(), 6, "rho order at modulus {n}");
            assert_eq!(rho.pow(3), Mat2Mod::neg_identity(n));
            let s = Mat2Mod::new(n, 0, -1, 1, 0).unwrap();
            assert_eq!(s.order(), 4);
            assert_eq!(s.pow(2), Mat2Mod::neg_identity(n));
        }
    }

    #[test]
    fn gamma_infinity_order() {
        for n in 3..20 {
            let g = SubgroupData::gamma_infinity(n);
            assert_eq!(g.order(), 2 * n as u64);
        }
    }

    #[test]
    fn crt_split_and_join() {
        let g = Mat2Mod::new(12, 1, 1, 0, 1).unwrap();
        let parts = crt_split(&g, &[4, 3]).unwrap();
        assert_eq!(parts[0], Mat2Mod::new(4, 1, 1, 0, 1).unwrap());
        assert_eq!(parts[1], Mat2Mod::new(3, 1, 1, 0, 1).unwrap());
        let id = Mat2Mod::identity(45);
        let parts = crt_split(&id, &[9, 5]).unwrap();
        assert!(parts[0].is_identity() && parts[1].is_identity());
        // CRT lift of (2 mod 3, 1 mod 5) is 11 mod 15
        let j = crt_join(&[
            Mat2Mod::new(3, 2, 0, 0, 1).unwrap(),
            Mat2Mod::new(5, 1, 0, 0, 1).unwrap(),
        ])
        .unwrap();
        assert_eq!(j, Mat2Mod::new(15, 11, 0, 0, 1).unwrap());
        assert!(crt_split(&g, &[6, 2]).is_err());
    }

    #[test]
    fn crt_round_trip_exhaustive() {
        // exhaustive over GL(2, Z/M) for composite M up to 60
        for m in [12u32, 45, 60] {
            let factors: Vec<u32> = {
                let mut fs = Vec::new();
                let mut x = m;
                let mut p = 2;
                while p * p <= x {
                    if x % p == 0 {
                        let mut q = 1;
                        while x % p == 0 {
                            q *= p;
                            x /= p;
                        }
                        fs.push(q);
                    }
                    p += 1;
                }
                if x > 1 {
                    fs.push(x);
                }
                fs
            };
            let mut checked = 0u64;
            for a in 0..m {
                for b in 0..m {
                    for c in 0..m {
                        for d in 0..m {
                            let g = Mat2Mod { modulus: m, a, b, c, d };
                            if gcd_u64(g.det() as u64, m as u64) != 1 {
                                continue;
                            }
                            let back = crt_join(&crt_split(&g, &factors).unwrap()).unwrap();
                            assert_eq!(back, g);
                            checked += 1;
                        }
                    }
                }
            }
            assert_eq!(checked, group_order(m, false));
        }
    }

    #[test]
    fn projective_line_counts() {
        for p in [2u32, 3, 5, 7] {
            for c in 1..=3u32 {
                let q = p.pow(c);
                let pts = ProjPoint::enumerate(p, c);
                assert_eq!(pts.len() as u32, q + q / p, "p={p} c={c}");
                // canonical representatives are distinct
                let set: std::collections::HashSet<_> = pts.iter().collect();
                assert_eq!(set.len(), pts.len());
            }
        }
    }

    #[test]
    fn fixed_points_examples() {
        let id = Mat2Mod::identity(9);
        assert_eq!(proj_fixed_points(&id, 3).len(), 12);
        let s = Mat2Mod::new(3, 0, -1, 1, 0).unwrap();
        assert!(proj_fixed_points(&s, 3).is_empty());
        let diag = Mat2Mod::new(3, 2, 0, 0, 1).unwrap();
        let fps = proj_fixed_points(&diag, 3);
        assert_eq!(fps.len(), 2);
        assert!(fps.contains(&ProjPoint::new(3, 3, 0, 1)));
        assert!(fps.contains(&ProjPoint::new(3, 3, 1, 0)));
    }

    #[test]
    fn fixed_point_count_stabilizes_for_diagonal() {
        // diag(alpha, beta) with v_p(alpha - beta) = m has the same fixed
        // point count at every level c >= 2m + 1
        let p = 3u32;
        for m_val in 0..2u32 {
            let mut counts = Vec::new();
            for c in (2 * m_val + 1)..=(2 * m_val + 3) {
                let q = p.pow(c);
                let alpha = 1 + p.pow(m_val); // alpha - beta has valuation m
                let g = Mat2Mod::new(q, alpha as i64, 0, 0, 1).unwrap();
                counts.push(proj_fixed_points(&g, p).len());
            }
            assert!(counts.windows(2).all(|w| w[0] == w[1]), "counts {counts:?}");
        }
    }

    #[test]
    fn coset_reps_send_origin_to_point() {
        for pt in ProjPoint::enumerate(3, 2) {
            let origin = ProjPoint::new(9, 3, 1, 0);
            assert_eq!(origin.act(&pt.coset_rep()), pt);
        }
    }

    #[test]
    fn subgroup_closure_sizes() {
        let gd = GroupData::sl(7).unwrap();
        assert_eq!(gd.order(), 336);
        assert_eq!(SubgroupData::center(7).order(), 2);
        assert_eq!(SubgroupData::gamma_rho(7).order(), 6);
        assert_eq!(SubgroupData::gamma_i(7).order(), 4);
        for sub in [
            SubgroupData::center(7),
            SubgroupData::gamma_rho(7),
            SubgroupData::gamma_i(7),
            SubgroupData::gamma_infinity(7),
        ] {
            assert_eq!(336 % sub.order(), 0);
            // closed under product and inverse
            for g in &sub.elements {
                assert!(sub.contains(&g.inv()));
                for h in &sub.elements {
                    assert!(sub.contains(&g.mul(h)));
                }
            }
        }
    }

    #[test]
    fn class_partition_is_consistent() {
        let gd = GroupData::gl(9).unwrap();
        assert_eq!(gd.order(), 3888);
        let total: u64 = gd.class_sizes.iter().sum();
        assert_eq!(total, gd.order());
        // class function property: trace and det constant on classes
        for (cid, members) in gd.class_members.iter().enumerate() {
            let rep = gd.class_reps[cid];
            for &i in members {
                let g = gd.elements[i as usize];
                assert_eq!(g.trace(), rep.trace());
                assert_eq!(g.det(), rep.det());
            }
        }
    }

    #[test]
    fn too_large_groups_are_refused() {
        assert!(matches!(
            GroupData::gl(64),
            Err(GroupError::GroupTooLarge(_))
        ));
    }
}
