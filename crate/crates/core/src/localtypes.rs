//! Local inertial types of GL(2, Z_p) at bounded conductor.
//!
//! A local type is realized as an irreducible character of GL(2, Z/p^l)
//! (its level l is the least such), together with its dimension, conductor
//! exponent and central character. The authoritative trace source is Mackey
//! coset enumeration in the finite quotient group; the closed-form family
//! formulas act as cross-check oracles in the tests.
//!
//! Families:
//!
//! * one-dimensional types chi(det),
//! * (twisted) Steinberg: the q-dimensional constituent of the permutation
//!   representation on P^1(F_p),
//! * ramified principal series: induced from the character (a,b;c,d) -> chi(a)
//!   of Gamma_0(p^c) inside GL(2, Z/p^c),
//! * depth-zero supercuspidal: the (p-1)-dimensional virtual difference
//!   Ind_{ZU} (theta|_Z . psi) - Ind_T theta, with T the nonsplit torus,
//! * wild 2-adic and 3-adic supercuspidals (conductors 8, 16, 27, 64, 81,
//!   256): resolved by brute-force character theory ([`dixon`]) and selected
//!   by dimension, level, central character and torus-restriction data
//!   (see [`wild`]).

pub mod catalog;
pub mod dixon;
pub mod wild;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use thiserror::Error;

use crate::exactnum::{euler_phi, rat, Cyclotomic, Rational};
use crate::modgroup::{
    gl2_generators, pow_mod, unit_group_generators, GroupData, GroupError, Mat2Mod, ProjPoint,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TypeError {
    #[error("character must be ramified (conductor >= 1)")]
    UnramifiedCharacter,
    #[error("theta of order {0} equals its conjugate over F_{1}; not cuspidal")]
    NotCuspidal(u32, u32),
    #[error("unknown type descriptor {0:?}")]
    UnknownDescriptor(String),
    #[error("family {0:?} is not implemented")]
    Unimplemented(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

// ---------------------------------------------------------------------------
// characters of (Z/p^m)*
// ---------------------------------------------------------------------------

/// A character of the unit group (Z/q)*, q = p^m (q = 1 gives the trivial
/// character of the trivial group).
#[derive(Clone, Debug)]
pub struct UnitChar {
    pub modulus: u32,
    values: HashMap<u32, Cyclotomic>,
    pub order: u32,
    /// least f >= 0 such that the character is trivial on units = 1 mod p^f
    pub conductor_exp: u32,
}

impl UnitChar {
    fn from_values(modulus: u32, prime: u32, values: HashMap<u32, Cyclotomic>) -> UnitChar {
        let mut order = 1u32;
        for v in values.values() {
            let mut o = 1u32;
            let mut acc = v.clone();
            while acc != Cyclotomic::one() {
                acc = acc.mul(v);
                o += 1;
                assert!(o <= 4 * modulus, "character value is not a root of unity");
            }
            order = num_integer::lcm(order, o);
        }
        let mut conductor_exp = 0;
        if modulus > 1 {
            let mut f = 0u32;
            loop {
                let pf = prime.pow(f).min(modulus);
                let trivial_on = values
                    .iter()
                    .filter(|(u, _)| *u % pf == 1 % pf)
                    .all(|(_, v)| *v == Cyclotomic::one());
                if trivial_on {
                    conductor_exp = f;
                    break;
                }
                assert!(pf < modulus, "conductor loop must terminate");
                f += 1;
            }
        }
        UnitChar { modulus, values, order, conductor_exp }
    }

    pub fn trivial(modulus: u32) -> UnitChar {
        let prime = smallest_prime_factor(modulus);
        let values = (0..modulus.max(1))
            .filter(|&u| modulus <= 1 || num_integer::gcd(u, modulus) == 1)
            .map(|u| (u, Cyclotomic::one()))
            .collect();
        UnitChar::from_values(modulus.max(1), prime, values)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// All characters of (Z/q)*, q = p^m, in a fixed deterministic order.
    pub fn all(q: u32) -> Vec<UnitChar> {
        let p = smallest_prime_factor(q);
        if q <= 2 {
            return vec![UnitChar::trivial(q)];
        }
        let gens = unit_group_generators(q);
        let orders: Vec<u32> = gens.iter().map(|&g| unit_order(g, q)).collect();
        let mut exps = vec![vec![]];
        for &o in &orders {
            let mut next = Vec::new();
            for e in &exps {
                for j in 0..o {
                    let mut v: Vec<u32> = e.clone();
                    v.push(j);
                    next.push(v);
                }
            }
            exps = next;
        }
        let mut chars = Vec::new();
        for e in exps {
            let mut values = HashMap::new();
            let mut frontier = vec![(1u32, Cyclotomic::one())];
            values.insert(1, Cyclotomic::one());
            while let Some((u, val)) = frontier.pop() {
                for (i, &g) in gens.iter().enumerate() {
                    let nu = (u as u64 * g as u64 % q as u64) as u32;
                    if !values.contains_key(&nu) {
                        let nv = val.mul(&Cyclotomic::root_of_unity(orders[i], e[i] as i64));
                        values.insert(nu, nv.clone());
                        frontier.push((nu, nv));
                    }
                }
            }
            assert_eq!(values.len() as u32, euler_phi(q));
            chars.push(UnitChar::from_values(q, p, values));
        }
        chars.sort_by_key(|c| (c.conductor_exp, c.order, c.canonical_key()));
        chars
    }

    pub fn eval(&self, u: u32) -> Cyclotomic {
        if self.modulus == 1 {
            return Cyclotomic::one();
        }
        self.values[&(u % self.modulus)].clone()
    }

    /// chi(-1), as +1 or -1.
    pub fn parity(&self) -> i64 {
        if self.modulus <= 2 {
            return 1;
        }
        if self.eval(self.modulus - 1) == Cyclotomic::one() {
            1
        } else {
            -1
        }
    }

    pub fn mul(&self, other: &UnitChar) -> UnitChar {
        let q = self.modulus.max(other.modulus);
        let p = smallest_prime_factor(q);
        let values = (0..q.max(1))
            .filter(|&u| q <= 1 || num_integer::gcd(u, q) == 1)
            .map(|u| {
                (
                    u,
                    self.eval(u % self.modulus.max(1))
                        .mul(&other.eval(u % other.modulus.max(1))),
                )
            })
            .collect();
        UnitChar::from_values(q.max(1), p, values)
    }

    pub fn inverse(&self) -> UnitChar {
        let values = self.values.iter().map(|(&u, v)| (u, v.conj())).collect();
        UnitChar::from_values(self.modulus, smallest_prime_factor(self.modulus), values)
    }

    pub fn canonical_key(&self) -> String {
        let mut us: Vec<&u32> = self.values.keys().collect();
        us.sort();
        us.iter()
            .map(|u| self.values[u].canonical_key())
            .collect::<Vec<_>>()
            .join("|")
    }
}

fn smallest_prime_factor(n: u32) -> u32 {
    if n <= 1 {
        return 2;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            return p;
        }
        p += 1;
    }
    n
}

fn unit_order(g: u32, q: u32) -> u32 {
    let mut o = 1;
    let mut x = g % q;
    while x != 1 {
        x = (x as u64 * g as u64 % q as u64) as u32;
        o += 1;
    }
    o
}

// ---------------------------------------------------------------------------
// Mackey induction data
// ---------------------------------------------------------------------------

/// Membership test for the inducing subgroup.
pub enum Membership {
    /// Gamma_0(p^c): lower-left entry is 0 in Z/p^c
    LowerLeftZero,
    /// the whole ambient group
    All,
    Set(std::collections::HashSet<u64>),
}

/// The character (or small trace function) eta on the inducing subgroup.
pub enum EtaMap {
    /// (a, b; c, d) -> chi(a)
    UpperLeft(UnitChar),
    Const(Cyclotomic),
    Table(HashMap<u64, Cyclotomic>),
}

/// An induction datum (J, eta) inside GL(2, Z/p^l), with coset
/// representatives enumerated once. `eta` must be a class function on J.
pub struct InductionDatum {
    pub modulus: u32,
    pub coset_reps: Vec<Mat2Mod>,
    pub membership: Membership,
    pub eta: EtaMap,
}

impl InductionDatum {
    pub fn contains(&self, g: &Mat2Mod) -> bool {
        match &self.membership {
            Membership::LowerLeftZero => g.c == 0,
            Membership::All => true,
            Membership::Set(s) => s.contains(&g.encode()),
        }
    }

    pub fn eta_at(&self, g: &Mat2Mod) -> Cyclotomic {
        match &self.eta {
            EtaMap::UpperLeft(chi) => chi.eval(g.a),
            EtaMap::Const(c) => c.clone(),
            EtaMap::Table(t) => t[&g.encode()].clone(),
        }
    }

    /// Gamma_0(p^c) with the character (a,b;c,d) -> chi(a); coset
    /// representatives come from the projective line.
    pub fn gamma0(prime: u32, level: u32, chi: UnitChar) -> InductionDatum {
        let q = prime.pow(level);
        let coset_reps = ProjPoint::enumerate(prime, level)
            .into_iter()
            .map(|pt| pt.coset_rep())
            .collect();
        InductionDatum {
            modulus: q,
            coset_reps,
            membership: Membership::LowerLeftZero,
            eta: EtaMap::UpperLeft(chi),
        }
    }

    /// The whole group with its trivial character (one coset).
    pub fn whole_group(modulus: u32) -> InductionDatum {
        InductionDatum {
            modulus,
            coset_reps: vec![Mat2Mod::identity(modulus)],
            membership: Membership::All,
            eta: EtaMap::Const(Cyclotomic::one()),
        }
    }

    /// Generic subgroup given by its element list and an eta table; coset
    /// representatives are enumerated by breadth-first search over canonical
    /// coset keys, so the enumeration is deterministic.
    pub fn from_subgroup(
        modulus: u32,
        elements: &[Mat2Mod],
        eta: HashMap<u64, Cyclotomic>,
    ) -> InductionDatum {
        let subgroup: std::collections::HashSet<u64> =
            elements.iter().map(|g| g.encode()).collect();
        let coset_key =
            |y: &Mat2Mod| -> u64 { elements.iter().map(|h| y.mul(h).encode()).min().unwrap() };
        let gens = gl2_generators(modulus);
        let id = Mat2Mod::identity(modulus);
        let mut seen = std::collections::HashSet::new();
        seen.insert(coset_key(&id));
        let mut reps = vec![id];
        let mut frontier = vec![id];
        while let Some(y) = frontier.pop() {
            for g in &gens {
                for cand in [g.mul(&y), g.inv().mul(&y)] {
                    let key = coset_key(&cand);
                    if seen.insert(key) {
                        reps.push(cand);
                        frontier.push(cand);
                    }
                }
            }
        }
        InductionDatum {
            modulus,
            coset_reps: reps,
            membership: Membership::Set(subgroup),
            eta: EtaMap::Table(eta),
        }
    }
}

/// Trace of the induced representation at g by Mackey's formula: the sum of
/// eta(x^-1 g x) over cosets xJ fixed by g.
pub fn mackey_trace(datum: &InductionDatum, g: &Mat2Mod) -> Cyclotomic {
    debug_assert_eq!(g.modulus, datum.modulus);
    let mut total = Cyclotomic::zero();
    for x in &datum.coset_reps {
        let h = x.inv().mul(g).mul(x);
        if datum.contains(&h) {
            total = total.add(&datum.eta_at(&h));
        }
    }
    total
}

// ---------------------------------------------------------------------------
// the realized local type
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TypeKind {
    OneDim,
    PrincipalSeries,
    Special,
    ScDepthZero,
    ScWild,
}

enum Evaluator {
    DetChar(UnitChar),
    Mackey(Vec<(i64, Arc<InductionDatum>)>),
    ClassTable {
        group: Arc<GroupData>,
        values: Vec<Cyclotomic>,
    },
}

/// A realized local inertial type: level, dimension, conductor exponent,
/// kind, and an exact trace evaluator on GL(2, Z/p^level).
pub struct LocalTypeChar {
    pub prime: u32,
    pub level: u32,
    pub dim: u32,
    pub conductor_exp: u32,
    pub kind: TypeKind,
    /// canonical machine descriptor, e.g. "ST:3", "PS:9:3", "SC27:+3:+1"
    pub descriptor: String,
    /// display symbol, e.g. "SP_3", "PS_9", "SC_27(√3,1)"
    pub symbol: String,
    evaluator: Evaluator,
    twist: Option<UnitChar>,
}

impl LocalTypeChar {
    /// p^level (1 for level 0).
    pub fn modulus(&self) -> u32 {
        self.prime.pow(self.level)
    }

    /// Exact trace at g; the modulus of g must be divisible by p^level.
    pub fn trace(&self, g: &Mat2Mod) -> Cyclotomic {
        let m = self.modulus();
        if m == 1 {
            return Cyclotomic::one();
        }
        assert!(
            g.modulus % m == 0,
            "element modulus {} incompatible with type level {}",
            g.modulus,
            m
        );
        let g = g.reduce(m);
        let base = match &self.evaluator {
            Evaluator::DetChar(chi) => chi.eval(g.det()),
            Evaluator::Mackey(terms) => {
                let mut total = Cyclotomic::zero();
                for (coef, datum) in terms {
                    let t = mackey_trace(datum, &g);
                    total = total.add(&t.scale(&rat(*coef, 1)));
                }
                total
            }
            Evaluator::ClassTable { group, values } => values[group.class_id(&g) as usize].clone(),
        };
        match &self.twist {
            Some(chi) => base.mul(&chi.eval(g.det())),
            None => base,
        }
    }

    /// Central character at the unit z: trace(z*I) / dim.
    pub fn central_char(&self, z: i64) -> Cyclotomic {
        if self.level == 0 {
            return Cyclotomic::one();
        }
        let m = self.modulus();
        let zi = Mat2Mod::new(m, z, 0, 0, z).expect("central element must be a unit");
        self.trace(&zi).scale(&rat(1, self.dim as i64))
    }

    /// Sign of the central character at -1.
    pub fn central_sign(&self) -> i64 {
        if self.central_char(-1) == Cyclotomic::one() {
            1
        } else {
            -1
        }
    }

    /// d(tau): q - 1 for special types (any twist), dim otherwise.
    pub fn d_value(&self) -> u64 {
        match self.kind {
            TypeKind::Special => (self.prime - 1) as u64,
            _ => self.dim as u64,
        }
    }

    /// Pointwise twist by chi(det). Dimension and d-value are unchanged; the
    /// conductor exponent is updated by the standard twisting rule (exact
    /// when one side dominates, which covers every use in the library).
    pub fn twist(&self, chi: &UnitChar) -> Arc<LocalTypeChar> {
        let combined = match &self.twist {
            Some(t) => t.mul(chi),
            None => chi.clone(),
        };
        let base_cond = match self.kind {
            TypeKind::OneDim => 0,
            TypeKind::Special => 1,
            _ => self.conductor_exp,
        };
        let conductor_exp = match self.kind {
            TypeKind::OneDim => 2 * combined.conductor_exp,
            _ => base_cond.max(2 * combined.conductor_exp),
        };
        let level = self.base_level().max(combined.conductor_exp).max(
            if matches!(self.kind, TypeKind::OneDim) { 0 } else { 1 },
        );
        Arc::new(LocalTypeChar {
            prime: self.prime,
            level,
            dim: self.dim,
            conductor_exp,
            kind: self.kind,
            descriptor: format!("{}*tw{}", self.descriptor, combined.conductor_exp),
            symbol: format!("{}⊗χ", self.symbol),
            evaluator: self.share_evaluator(),
            twist: if combined.is_trivial() { None } else { Some(combined) },
        })
    }

    fn share_evaluator(&self) -> Evaluator {
        match &self.evaluator {
            Evaluator::DetChar(c) => Evaluator::DetChar(c.clone()),
            Evaluator::Mackey(terms) => Evaluator::Mackey(terms.clone()),
            Evaluator::ClassTable { group, values } => Evaluator::ClassTable {
                group: group.clone(),
                values: values.clone(),
            },
        }
    }

    // level of the untwisted evaluator
    fn base_level(&self) -> u32 {
        match &self.evaluator {
            Evaluator::DetChar(chi) => chi.conductor_exp,
            Evaluator::Mackey(terms) => terms
                .iter()
                .map(|(_, d)| {
                    let mut l = 0;
                    let mut m = d.modulus;
                    while m > 1 {
                        m /= self.prime;
                        l += 1;
                    }
                    l
                })
                .max()
                .unwrap_or(0),
            Evaluator::ClassTable { group, .. } => {
                let mut l = 0;
                let mut m = group.modulus;
                while m > 1 {
                    m /= self.prime;
                    l += 1;
                }
                l
            }
        }
    }

    /// The full trace table on conjugacy-class representatives of the
    /// ambient GL(2, Z/p^level); requires the ambient group to be enumerable.
    pub fn trace_table(&self) -> Result<Vec<(Mat2Mod, u64, Cyclotomic)>, GroupError> {
        let m = self.modulus();
        if m == 1 {
            return Ok(vec![(Mat2Mod::identity(1), 1, Cyclotomic::one())]);
        }
        let gd = GroupData::gl(m)?;
        Ok((0..gd.num_classes())
            .map(|j| {
                (
                    gd.class_reps[j],
                    gd.class_sizes[j],
                    self.trace(&gd.class_reps[j]),
                )
            })
            .collect())
    }

    /// Exact self-inner-product over the ambient group (1 for irreducible).
    pub fn self_inner_product(&self) -> Result<Rational, GroupError> {
        let table = self.trace_table()?;
        let order: u64 = table.iter().map(|(_, s, _)| s).sum();
        let mut sum = Cyclotomic::zero();
        for (_, size, v) in &table {
            sum = sum.add(&v.norm_squared().scale(&rat(*size as i64, 1)));
        }
        let total = sum.scale(&rat(1, order as i64));
        Ok(total.as_rational().expect("norm sum must be rational"))
    }

    /// Deterministic key of the trace table (used for deduplication).
    pub fn canonical_key(&self) -> String {
        match self.trace_table() {
            Ok(tab) => tab
                .iter()
                .map(|(rep, _, v)| format!("{}:{}", rep.text(), v.canonical_key()))
                .collect::<Vec<_>>()
                .join(";"),
            Err(_) => format!("desc:{}", self.descriptor),
        }
    }

    pub(crate) fn from_class_table(
        prime: u32,
        level: u32,
        dim: u32,
        conductor_exp: u32,
        kind: TypeKind,
        descriptor: String,
        symbol: String,
        group: Arc<GroupData>,
        values: Vec<Cyclotomic>,
    ) -> LocalTypeChar {
        LocalTypeChar {
            prime,
            level,
            dim,
            conductor_exp,
            kind,
            descriptor,
            symbol,
            evaluator: Evaluator::ClassTable { group, values },
            twist: None,
        }
    }

    /// For special (twisted Steinberg) types, the twisting character chi:
    /// the one-dimensional type of the inclusion-exclusion replacement is
    /// chi o det.
    pub fn special_twist_char(&self) -> Option<UnitChar> {
        match self.kind {
            TypeKind::Special => self.twist.clone(),
            _ => None,
        }
    }

    /// Class-table contents for cache serialization (wild types only).
    pub fn class_table_values(&self) -> Option<(&Arc<GroupData>, &[Cyclotomic])> {
        match &self.evaluator {
            Evaluator::ClassTable { group, values } => Some((group, values)),
            _ => None,
        }
    }
}

// ---------------------------------------------------------------------------
// family constructors
// ---------------------------------------------------------------------------

/// One-dimensional type g -> chi(det g). Conductor exponent 2*cond(chi).
pub fn build_onedim(prime: u32, chi: UnitChar) -> Arc<LocalTypeChar> {
    let level = chi.conductor_exp;
    let cond = 2 * chi.conductor_exp;
    let descriptor = if chi.is_trivial() {
        "1".to_string()
    } else {
        format!("CHAR:{}:{}:o{}p{}", prime, chi.conductor_exp, chi.order, (3 + chi.parity()) / 2)
    };
    Arc::new(LocalTypeChar {
        prime,
        level,
        dim: 1,
        conductor_exp: cond,
        kind: TypeKind::OneDim,
        descriptor,
        symbol: if chi.is_trivial() {
            "1".into()
        } else {
            format!("χ_{}", prime.pow(chi.conductor_exp))
        },
        evaluator: Evaluator::DetChar(chi),
        twist: None,
    })
}

/// The (twisted) Steinberg type: Ind_{Gamma_0(p)} 1 minus the trivial
/// character, inflated from GL(2, F_p) and twisted by chi(det).
pub fn build_special(prime: u32, chi: UnitChar) -> Arc<LocalTypeChar> {
    let datum_ps = Arc::new(InductionDatum::gamma0(prime, 1, UnitChar::trivial(prime)));
    let datum_triv = Arc::new(InductionDatum::whole_group(prime));
    let cond = (2 * chi.conductor_exp).max(1);
    let level = chi.conductor_exp.max(1);
    let tw = if chi.is_trivial() { None } else { Some(chi) };
    Arc::new(LocalTypeChar {
        prime,
        level,
        dim: prime,
        conductor_exp: cond,
        kind: TypeKind::Special,
        descriptor: format!("ST:{prime}"),
        symbol: format!("SP_{prime}"),
        evaluator: Evaluator::Mackey(vec![(1, datum_ps), (-1, datum_triv)]),
        twist: tw,
    })
}

/// Ramified principal series: induced from (a,b;c,d) -> chi(a) of
/// Gamma_0(p^c), c = cond(chi) >= 1. Dimension p^(c-1)(p+1), conductor
/// exponent c.
pub fn build_ps(
    prime: u32,
    chi: UnitChar,
    descriptor: String,
    symbol: String,
) -> Result<Arc<LocalTypeChar>, TypeError> {
    let c = chi.conductor_exp;
    if c == 0 {
        return Err(TypeError::UnramifiedCharacter);
    }
    let datum = Arc::new(InductionDatum::gamma0(prime, c, chi));
    let dim = prime.pow(c - 1) * (prime + 1);
    Ok(Arc::new(LocalTypeChar {
        prime,
        level: c,
        dim,
        conductor_exp: c,
        kind: TypeKind::PrincipalSeries,
        descriptor,
        symbol,
        evaluator: Evaluator::Mackey(vec![(1, datum)]),
        twist: None,
    }))
}

/// The nonsplit torus of GL(2, F_p): {a + bW}, W the companion matrix of a
/// fixed irreducible quadratic, together with a generator.
pub fn nonsplit_torus(prime: u32) -> (Vec<Mat2Mod>, Mat2Mod) {
    let w = nonsplit_companion(prime);
    let mut elements = Vec::new();
    for a in 0..prime {
        for b in 0..prime {
            if a == 0 && b == 0 {
                continue;
            }
            let m = scalar_plus(prime, a, b, &w);
            if num_integer::gcd(m.det(), prime) == 1 {
                elements.push(m);
            }
        }
    }
    assert_eq!(elements.len() as u32, prime * prime - 1);
    let gen = elements
        .iter()
        .find(|g| g.order() == (prime * prime - 1) as u64)
        .copied()
        .expect("the nonsplit torus is cyclic");
    (elements, gen)
}

fn nonsplit_companion(prime: u32) -> Mat2Mod {
    if prime == 2 {
        // x^2 + x + 1
        return Mat2Mod::new(2, 0, 1, 1, 1).unwrap();
    }
    // x^2 - D for the least quadratic nonresidue D
    let d = (2..prime)
        .find(|&d| pow_mod(d, (prime as u64 - 1) / 2, prime) != 1)
        .expect("odd primes have nonresidues");
    Mat2Mod::new(prime, 0, d as i64, 1, 0).unwrap()
}

fn scalar_plus(q: u32, a: u32, b: u32, w: &Mat2Mod) -> Mat2Mod {
    let m = q as u64;
    Mat2Mod {
        modulus: q,
        a: ((a as u64 + b as u64 * w.a as u64) % m) as u32,
        b: (b as u64 * w.b as u64 % m) as u32,
        c: (b as u64 * w.c as u64 % m) as u32,
        d: ((a as u64 + b as u64 * w.d as u64) % m) as u32,
    }
}

// shared induction data per (prime, n)
static DEPTH0_DATA: Lazy<Mutex<HashMap<(u32, u32), Arc<LocalTypeChar>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Depth-zero supercuspidal type: theta a character of F_{p^2}* of order n
/// with n | p^2-1 but n not dividing p-1 (so theta differs from its
/// p-conjugate). Realized as Ind_{ZU}(theta|_Z psi) - Ind_T theta; dimension
/// p-1, conductor exponent 2.
pub fn build_sc_depth0(prime: u32, n: u32) -> Result<Arc<LocalTypeChar>, TypeError> {
    if let Some(t) = DEPTH0_DATA.lock().unwrap().get(&(prime, n)) {
        return Ok(t.clone());
    }
    let q2 = prime * prime - 1;
    if n == 0 || q2 % n != 0 || (prime - 1) % n == 0 {
        return Err(TypeError::NotCuspidal(n, prime));
    }
    let (torus, gen) = nonsplit_torus(prime);
    let mut log = HashMap::new();
    let mut x = Mat2Mod::identity(prime);
    for k in 0..q2 {
        log.insert(x.encode(), k as i64);
        x = x.mul(&gen);
    }
    // theta = lambda^(q2/n) for lambda the dual generator
    let theta = |m: &Mat2Mod| -> Cyclotomic {
        Cyclotomic::root_of_unity(q2, log[&m.encode()] * (q2 as i64 / n as i64))
    };
    let torus_eta: HashMap<u64, Cyclotomic> =
        torus.iter().map(|m| (m.encode(), theta(m))).collect();
    let torus_datum = Arc::new(InductionDatum::from_subgroup(prime, &torus, torus_eta));
    // ZU = {z(1,b;0,1)}: eta(z u^b) = theta(z) psi(b), psi(b) = zeta_p^b
    let mut zu_elements = Vec::new();
    let mut zu_eta = HashMap::new();
    let w = nonsplit_companion(prime);
    for z in 1..prime {
        for b in 0..prime {
            let m = Mat2Mod::new(prime, z as i64, (z * b) as i64, 0, z as i64).unwrap();
            zu_elements.push(m);
            let val = theta(&scalar_plus(prime, z, 0, &w))
                .mul(&Cyclotomic::root_of_unity(prime, b as i64));
            zu_eta.insert(m.encode(), val);
        }
    }
    let zu_datum = Arc::new(InductionDatum::from_subgroup(prime, &zu_elements, zu_eta));
    let t = Arc::new(LocalTypeChar {
        prime,
        level: 1,
        dim: prime - 1,
        conductor_exp: 2,
        kind: TypeKind::ScDepthZero,
        descriptor: format!("SC:{prime}:{n}"),
        symbol: format!("SC_{prime}({n})"),
        evaluator: Evaluator::Mackey(vec![(1, zu_datum), (-1, torus_datum)]),
        twist: None,
    });
    DEPTH0_DATA.lock().unwrap().insert((prime, n), t.clone());
    Ok(t)
}

/// Closed-form depth-zero cuspidal character (test oracle): -(theta(a) +
/// theta(a^p)) on elliptic classes, 0 on split regular classes,
/// (p-1) theta(z) at central z, -theta(z) at nonsemisimple classes.
pub fn depth0_closed_form(prime: u32, n: u32, g: &Mat2Mod) -> Cyclotomic {
    let q2 = prime * prime - 1;
    let (torus, gen) = nonsplit_torus(prime);
    let mut log = HashMap::new();
    let mut x = Mat2Mod::identity(prime);
    for k in 0..q2 {
        log.insert(x.encode(), k as i64);
        x = x.mul(&gen);
    }
    let theta_of = |m: &Mat2Mod| -> Cyclotomic {
        Cyclotomic::root_of_unity(q2, log[&m.encode()] * (q2 as i64 / n as i64))
    };
    let w = nonsplit_companion(prime);
    let g = g.reduce(prime);
    let disc = ((g.trace() as u64 * g.trace() as u64 + 4 * prime as u64 * prime as u64
        - 4 * g.det() as u64)
        % prime as u64) as u32;
    if g.is_scalar() {
        return theta_of(&scalar_plus(prime, g.a, 0, &w)).scale(&rat(prime as i64 - 1, 1));
    }
    if disc == 0 {
        // nonsemisimple z*u, z the repeated eigenvalue (= trace/2; for p = 2
        // the trace is 0 and z = det^(1/2) = 1)
        let z = if prime == 2 {
            1
        } else {
            (g.trace() as u64 * crate::modgroup::mod_inverse(2, prime).unwrap() as u64
                % prime as u64) as u32
        };
        return theta_of(&scalar_plus(prime, z, 0, &w)).neg();
    }
    let split = prime != 2 && pow_mod(disc, (prime as u64 - 1) / 2, prime) == 1;
    if split {
        return Cyclotomic::zero();
    }
    if prime == 2 && !(g.trace() == 1 && g.det() == 1) {
        return Cyclotomic::zero();
    }
    for t in &torus {
        if t.trace() == g.trace() && t.det() == g.det() && !t.is_scalar() {
            return theta_of(t).add(&theta_of(&t.pow(prime as u64))).neg();
        }
    }
    unreachable!("elliptic element must match a torus element");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat_int;

    #[test]
    fn onedim_examples() {
        let t = build_onedim(3, UnitChar::trivial(3));
        assert_eq!(t.dim, 1);
        assert_eq!(t.conductor_exp, 0);
        assert_eq!(t.trace(&Mat2Mod::new(3, 1, 1, 0, 1).unwrap()), Cyclotomic::one());
        // order-2 character mod 3 kills unipotents through det
        let chi = UnitChar::all(3).into_iter().find(|c| c.order == 2).unwrap();
        let t = build_onedim(3, chi);
        assert_eq!(t.conductor_exp, 2);
        assert_eq!(t.trace(&Mat2Mod::new(3, 1, 1, 0, 1).unwrap()), Cyclotomic::one());
        // order-4 character mod 5 at diag(2,1): chi(2) is a primitive 4th root
        let chi4 = UnitChar::all(5).into_iter().find(|c| c.order == 4).unwrap();
        let t = build_onedim(5, chi4);
        let v = t.trace(&Mat2Mod::new(5, 2, 0, 0, 1).unwrap());
        assert_eq!(v.mul(&v), Cyclotomic::from_int(-1));
    }

    #[test]
    fn steinberg_traces() {
        let st3 = build_special(3, UnitChar::trivial(3));
        assert_eq!(st3.trace(&Mat2Mod::identity(3)), Cyclotomic::from_int(3));
        assert_eq!(
            st3.trace(&Mat2Mod::new(3, 0, -1, 1, 0).unwrap()),
            Cyclotomic::from_int(-1)
        );
        assert_eq!(st3.d_value(), 2);
        let st5 = build_special(5, UnitChar::trivial(5));
        assert_eq!(
            st5.trace(&Mat2Mod::new(5, 2, 0, 0, 1).unwrap()),
            Cyclotomic::one()
        );
        assert_eq!(st5.self_inner_product().unwrap(), rat_int(1));
    }

    #[test]
    fn ps_traces_and_dims() {
        // PS_3(2): dim p + 1 = 4
        let chi = UnitChar::all(3).into_iter().find(|c| c.order == 2).unwrap();
        let ps = build_ps(3, chi, "PS:3:2".into(), "PS_3(2)".into()).unwrap();
        assert_eq!(ps.dim, 4);
        assert_eq!(ps.trace(&Mat2Mod::identity(3)), Cyclotomic::from_int(4));
        assert_eq!(ps.self_inner_product().unwrap(), rat_int(1));
        // PS_5(2) at diag(2,1): Mackey over the two fixed points [1:0], [0:1]
        // gives chi(2) + chi(1) = -1 + 1 = 0 ...
        let chi5 = UnitChar::all(5).into_iter().find(|c| c.order == 2).unwrap();
        let ps5 = build_ps(5, chi5, "PS:5:2".into(), "PS_5(2)".into()).unwrap();
        assert!(ps5.trace(&Mat2Mod::new(5, 2, 0, 0, 1).unwrap()).is_zero());
        // ... and at diag(2, 2^-1) = diag(2,3): chi(2) + chi(3) = -2
        assert_eq!(
            ps5.trace(&Mat2Mod::new(5, 2, 0, 0, 3).unwrap()),
            Cyclotomic::from_int(-2)
        );
        assert_eq!(ps5.self_inner_product().unwrap(), rat_int(1));
    }

    #[test]
    fn depth0_dims_and_values() {
        let sc = build_sc_depth0(3, 4).unwrap();
        assert_eq!(sc.dim, 2);
        assert_eq!(sc.conductor_exp, 2);
        // [[0,-1],[1,0]] has eigenvalues of order 4 in F_9*; theta of order 4
        // gives trace -(-1 - 1) = 2
        assert_eq!(
            sc.trace(&Mat2Mod::new(3, 0, -1, 1, 0).unwrap()),
            Cyclotomic::from_int(2)
        );
        // split regular elements have trace 0
        assert!(sc.trace(&Mat2Mod::new(3, 2, 0, 0, 1).unwrap()).is_zero());
        assert_eq!(sc.self_inner_product().unwrap(), rat_int(1));
        assert!(build_sc_depth0(3, 2).is_err());
        assert!(build_sc_depth0(5, 4).is_err());
    }

    #[test]
    fn depth0_closed_form_matches_mackey_exhaustively() {
        for (p, ns) in [(3u32, vec![4u32, 8]), (5, vec![3, 6, 8, 12, 24])] {
            for n in ns {
                let sc = build_sc_depth0(p, n).unwrap();
                let gd = GroupData::gl(p).unwrap();
                for rep in &gd.class_reps {
                    assert_eq!(
                        sc.trace(rep),
                        depth0_closed_form(p, n, rep),
                        "p={p} n={n} at {rep:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn sc_2_3_is_the_sign_character() {
        let sc = build_sc_depth0(2, 3).unwrap();
        assert_eq!(sc.dim, 1);
        // GL(2,F_2) = S_3: 3-cycles map to +1, transpositions to -1
        let r = Mat2Mod::new(2, 0, 1, 1, 1).unwrap();
        assert_eq!(sc.trace(&r), Cyclotomic::one());
        let u = Mat2Mod::new(2, 1, 1, 0, 1).unwrap();
        assert_eq!(sc.trace(&u), Cyclotomic::from_int(-1));
        assert_eq!(sc.self_inner_product().unwrap(), rat_int(1));
    }

    #[test]
    fn twist_preserves_dim_and_d() {
        let st = build_special(3, UnitChar::trivial(3));
        let chi = UnitChar::all(3).into_iter().find(|c| c.order == 2).unwrap();
        let tw = st.twist(&chi);
        assert_eq!(tw.dim, 3);
        assert_eq!(tw.d_value(), 2);
        assert_eq!(tw.conductor_exp, 2);
        // central character of the twist at z picks up chi(z)^2
        let expected = st.central_char(2).mul(&chi.eval(2)).mul(&chi.eval(2));
        assert_eq!(tw.central_char(2), expected);
        // twisting by the trivial character changes nothing
        let same = st.twist(&UnitChar::trivial(3));
        let gd = GroupData::gl(3).unwrap();
        for rep in &gd.class_reps {
            assert_eq!(st.trace(rep), same.trace(rep));
        }
    }

    #[test]
    fn mackey_at_identity_is_index_times_dim() {
        let datum = InductionDatum::gamma0(3, 2, UnitChar::trivial(9));
        // |P^1(Z/9)| = 12 cosets, eta(1) = 1
        assert_eq!(
            mackey_trace(&datum, &Mat2Mod::identity(9)),
            Cyclotomic::from_int(12)
        );
        let whole = InductionDatum::whole_group(9);
        for g in [Mat2Mod::identity(9), Mat2Mod::new(9, 1, 1, 0, 1).unwrap()] {
            assert_eq!(mackey_trace(&whole, &g), Cyclotomic::one());
        }
    }

    #[test]
    fn unit_chars_enumerate_and_measure_conductor() {
        assert_eq!(UnitChar::all(9).len(), 6);
        let conds: Vec<u32> = UnitChar::all(9).iter().map(|c| c.conductor_exp).collect();
        assert_eq!(conds.iter().filter(|&&c| c == 2).count(), 4);
        assert_eq!(conds.iter().filter(|&&c| c == 1).count(), 1);
        let all8 = UnitChar::all(8);
        assert_eq!(all8.len(), 4);
        assert_eq!(all8.iter().filter(|c| c.conductor_exp == 3).count(), 2);
        // exactly one even primitive character mod 8
        assert_eq!(
            all8.iter()
                .filter(|c| c.conductor_exp == 3 && c.parity() == 1)
                .count(),
            1
        );
    }
}
