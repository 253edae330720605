//! Global inertial types over Q, their multiplicities in parabolic
//! cohomology, exact newform counts by inclusion-exclusion over the special
//! places, the vanishing-type search, and the leading-term estimator.
//!
//! A global type is a weight k >= 2 together with finitely many nontrivial
//! local components, subject to the parity gate: the product of the local
//! central characters takes the value (-1)^k at -1. The multiplicity is
//!
//!   mu(tau) = (1/2) < tau_f|_{SL(2, Z/N*)}, [H^1_P(Gamma(N*), V_k)] >
//!
//! at the working level N* (the least multiple of the level that is >= 3),
//! and the exact count of newforms with type tau is
//!
//!   #S(tau) = sum over subsets Y of the special places of
//!             (-1)^|Y| mu(tau^Y),
//!
//! where tau^Y replaces each special component in Y by the one-dimensional
//! type given by its central character.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::cohomology::{h1p_class, inner_product, CohomologyError};
use crate::exactnum::{rat, rational_string, Cyclotomic, Rational};
use crate::localtypes::catalog::{self, CatalogEntry};
use crate::localtypes::{build_onedim, LocalTypeChar, TypeError, TypeKind, UnitChar};
use crate::modgroup::Mat2Mod;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error("weight must be at least 2 (got {0})")]
    WeightTooSmall(u32),
    #[error("components at duplicate prime {0}")]
    DuplicatePrime(u32),
    #[error("parity violation: central character sign {sign} at -1, weight {weight} requires {required}")]
    ParityViolation { sign: i64, weight: u32, required: i64 },
    #[error("inner product for mu is negative or odd ({0}); internal inconsistency")]
    BadMultiplicity(i64),
    #[error("families {0:?} report different vanishing weights under one symbol")]
    FamilyMismatch(String),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Type(#[from] TypeError),
}

/// A validated global inertial type: weight plus sparse local components.
#[derive(Clone)]
pub struct GlobalTypeSpec {
    pub weight: u32,
    pub components: BTreeMap<u32, Arc<LocalTypeChar>>,
    /// N = product of p^(level of tau_p)
    pub level: u64,
    /// product of p^(conductor exponent of tau_p)
    pub conductor: u64,
    /// number of places with dim tau_p > 1
    pub nu: u32,
    /// number of special places
    pub n_sp: u32,
}

impl GlobalTypeSpec {
    /// d(tau) = (k-1) * product of the local d-values.
    pub fn d_tau(&self) -> u64 {
        let mut d = (self.weight - 1) as u64;
        for tc in self.components.values() {
            d *= tc.d_value();
        }
        d
    }

    /// Sign of the product central character at -1.
    pub fn central_sign(&self) -> i64 {
        self.components.values().map(|t| t.central_sign()).product()
    }
}

/// Validate and assemble a global type from distinct-prime components.
pub fn assemble(
    weight: u32,
    comps: Vec<Arc<LocalTypeChar>>,
) -> Result<GlobalTypeSpec, CountError> {
    if weight < 2 {
        return Err(CountError::WeightTooSmall(weight));
    }
    let mut components = BTreeMap::new();
    for tc in comps {
        // trivial components carry no data; drop them
        if tc.conductor_exp == 0 && tc.dim == 1 {
            continue;
        }
        if components.insert(tc.prime, tc.clone()).is_some() {
            return Err(CountError::DuplicatePrime(tc.prime));
        }
    }
    let spec = GlobalTypeSpec {
        weight,
        level: components
            .values()
            .map(|t| (t.prime as u64).pow(t.level))
            .product(),
        conductor: components
            .values()
            .map(|t| (t.prime as u64).pow(t.conductor_exp))
            .product(),
        nu: components.values().filter(|t| t.dim > 1).count() as u32,
        n_sp: components
            .values()
            .filter(|t| t.kind == TypeKind::Special)
            .count() as u32,
        components,
    };
    let sign = spec.central_sign();
    let required = if weight % 2 == 0 { 1 } else { -1 };
    if sign != required {
        return Err(CountError::ParityViolation { sign, weight, required });
    }
    Ok(spec)
}

/// The working level: the least multiple of the level N that is >= 3
/// (N for N >= 3, 3 for N = 1, 4 for N = 2).
pub fn working_level(spec: &GlobalTypeSpec) -> u32 {
    match spec.level {
        1 => 3,
        2 => 4,
        n => n.try_into().expect("level fits in u32"),
    }
}

/// Trace of the finite part at an element of SL(2, Z/M), M a multiple of
/// the level: the product of the local traces of the CRT components.
pub fn global_trace(spec: &GlobalTypeSpec, g: &Mat2Mod) -> Cyclotomic {
    let mut total = Cyclotomic::one();
    for tc in spec.components.values() {
        if tc.level == 0 {
            continue;
        }
        let pl = tc.prime.pow(tc.level);
        debug_assert!(g.modulus % pl == 0);
        let local = tc.trace(&g.reduce(pl));
        if local.is_zero() {
            return Cyclotomic::zero();
        }
        total = total.mul(&local);
    }
    total
}

/// mu(tau): half the inner product of the restricted finite part with the
/// parabolic cohomology class at the working level. The inner product must
/// be even and nonnegative.
pub fn mu(spec: &GlobalTypeSpec) -> Result<u64, CountError> {
    mu_at_level(spec, working_level(spec))
}

/// mu computed at a chosen multiple of the working level (used by the
/// inflation-invariance checks).
pub fn mu_at_level(spec: &GlobalTypeSpec, m: u32) -> Result<u64, CountError> {
    assert!(m as u64 % spec.level == 0 && m >= 3);
    let cls = h1p_class(m, spec.weight)?;
    let ip = inner_product(&|g| global_trace(spec, g), &cls)?;
    if ip < 0 || ip % 2 != 0 {
        return Err(CountError::BadMultiplicity(ip));
    }
    Ok((ip / 2) as u64)
}

/// An exact count report for one global type.
#[derive(Clone, Debug)]
pub struct CountReport {
    pub descriptors: Vec<String>,
    pub symbols: Vec<String>,
    pub weight: u32,
    pub conductor: u64,
    pub level: u64,
    pub working_level: u32,
    pub mu: u64,
    pub count: u64,
    pub estimate: Rational,
}

impl CountReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "components": self.descriptors,
            "symbols": self.symbols,
            "k": self.weight,
            "conductor": self.conductor,
            "level": self.level,
            "working_level": self.working_level,
            "mu": self.mu,
            "count": self.count,
            "estimate": rational_string(&self.estimate),
        })
    }
}

/// #S(tau) by inclusion-exclusion over subsets of the special places:
/// tau^Y replaces each special component in Y by the one-dimensional type
/// given by its central character.
pub fn count_s(spec: &GlobalTypeSpec) -> Result<CountReport, CountError> {
    let special_primes: Vec<u32> = spec
        .components
        .iter()
        .filter(|(_, t)| t.kind == TypeKind::Special)
        .map(|(p, _)| *p)
        .collect();
    let mut total: i64 = 0;
    let subsets = 1u32 << special_primes.len();
    for mask in 0..subsets {
        let mut comps: Vec<Arc<LocalTypeChar>> = Vec::new();
        for (p, tc) in &spec.components {
            let in_y = special_primes
                .iter()
                .position(|q| q == p)
                .is_some_and(|i| mask & (1 << i) != 0);
            if in_y {
                // the one-dimensional type chi o det, chi the twist
                // character of the special component (trivial Steinberg:
                // the trivial type)
                let chi = tc
                    .special_twist_char()
                    .unwrap_or_else(|| UnitChar::trivial(*p));
                comps.push(build_onedim(*p, chi));
            } else {
                comps.push(tc.clone());
            }
        }
        let sub = assemble(spec.weight, comps)?;
        let m = mu(&sub)? as i64;
        if mask.count_ones() % 2 == 0 {
            total += m;
        } else {
            total -= m;
        }
    }
    assert!(total >= 0, "inclusion-exclusion gave a negative count");
    Ok(CountReport {
        descriptors: spec
            .components
            .values()
            .map(|t| t.descriptor.clone())
            .collect(),
        symbols: spec.components.values().map(|t| t.symbol.clone()).collect(),
        weight: spec.weight,
        conductor: spec.conductor,
        level: spec.level,
        working_level: working_level(spec),
        mu: mu(spec)?,
        count: total as u64,
        estimate: asymptotic_estimate(spec.d_tau(), 1, 1, &rat(-1, 12)),
    })
}

/// The leading term 2^(1-n) |zeta_K(-1)| h d(tau) of the general asymptotic
/// count, with the field data supplied by the caller (for K = Q: n = 1,
/// h = 1, zeta_Q(-1) = -1/12).
pub fn asymptotic_estimate(d_tau: u64, n: u32, h: u32, zeta_minus1: &Rational) -> Rational {
    assert!(n >= 1);
    let two_pow = if n == 1 { rat(1, 1) } else { rat(1, 1i64 << (n - 1)) };
    let abs_zeta = if zeta_minus1 < &rat(0, 1) {
        -zeta_minus1.clone()
    } else {
        zeta_minus1.clone()
    };
    two_pow * abs_zeta * rat(h as i64, 1) * rat(d_tau as i64, 1)
}

// ---------------------------------------------------------------------------
// the vanishing-type search
// ---------------------------------------------------------------------------

/// One row of the search output: a conductor, the component symbols, and
/// the weights (within the window) at which no newform carries the type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchRow {
    pub conductor: u64,
    pub symbols: String,
    pub descriptors: Vec<String>,
    pub weights: Vec<u32>,
}

/// The search outcome: rows sorted by (conductor, symbol string), plus the
/// families that had to be skipped because they are not enumerable.
pub struct SearchOutcome {
    pub rows: Vec<SearchRow>,
    pub skipped: Vec<String>,
}

fn factorize(n: u64) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut c = 0;
            while m % p == 0 {
                m /= p;
                c += 1;
            }
            out.push((p as u32, c));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m as u32, 1));
    }
    out
}

/// Search the window conductor <= max_cond, 2 <= k <= max_k for global
/// types with no attached newform. Candidates are all sparse combinations
/// of minimal catalog families; weights respect the parity gate. Rows whose
/// families share a display symbol are merged; their vanishing sets must
/// agree (a mismatch is an error rather than a silent merge).
pub fn search(max_cond: u64, max_k: u32) -> Result<SearchOutcome, CountError> {
    let mut skipped: Vec<String> = Vec::new();
    let mut combos: Vec<(u64, Vec<CatalogEntry>)> = Vec::new();
    for n in 1..=max_cond {
        let mut lists: Vec<Vec<CatalogEntry>> = Vec::new();
        let mut ok = true;
        for (p, c) in factorize(n) {
            match catalog::families_at(p, c) {
                Ok(fams) if fams.is_empty() => {
                    ok = false;
                    break;
                }
                Ok(fams) => lists.push(fams),
                Err(TypeError::Unimplemented(msg)) => {
                    if !skipped.contains(&msg) {
                        skipped.push(msg);
                    }
                    ok = false;
                    break;
                }
                Err(e) => return Err(e.into()),
            }
        }
        if !ok {
            continue;
        }
        let mut acc: Vec<Vec<CatalogEntry>> = vec![vec![]];
        for list in lists {
            let mut next = Vec::new();
            for partial in &acc {
                for entry in &list {
                    let mut v = partial.clone();
                    v.push(entry.clone());
                    next.push(v);
                }
            }
            acc = next;
        }
        for entries in acc {
            combos.push((n, entries));
        }
    }
    // evaluate every candidate combo across the weight window
    let results: Result<Vec<Option<SearchRow>>, CountError> = combos
        .par_iter()
        .map(|(n, entries)| {
            let comps: Vec<Arc<LocalTypeChar>> = entries.iter().map(|e| e.tc.clone()).collect();
            let parity: i64 = comps.iter().map(|t| t.central_sign()).product();
            let mut weights = Vec::new();
            for k in 2..=max_k {
                let required = if k % 2 == 0 { 1 } else { -1 };
                if parity != required {
                    continue;
                }
                let spec = assemble(k, comps.clone())?;
                if count_s(&spec)?.count == 0 {
                    weights.push(k);
                }
            }
            if weights.is_empty() {
                return Ok(None);
            }
            let mut with_prime: Vec<(u32, String, String)> = entries
                .iter()
                .map(|e| (e.tc.prime, e.tc.symbol.clone(), e.tc.descriptor.clone()))
                .collect();
            with_prime.sort();
            Ok(Some(SearchRow {
                conductor: *n,
                symbols: with_prime
                    .iter()
                    .map(|(_, s, _)| s.clone())
                    .collect::<Vec<_>>()
                    .join(", "),
                descriptors: with_prime.iter().map(|(_, _, d)| d.clone()).collect(),
                weights,
            }))
        })
        .collect();
    let mut rows: Vec<SearchRow> = Vec::new();
    for row in results?.into_iter().flatten() {
        if let Some(existing) = rows
            .iter()
            .find(|r| r.conductor == row.conductor && r.symbols == row.symbols)
        {
            if existing.weights != row.weights {
                return Err(CountError::FamilyMismatch(format!(
                    "{} at conductor {}",
                    row.symbols, row.conductor
                )));
            }
            continue;
        }
        rows.push(row);
    }
    rows.sort_by(|a, b| (a.conductor, &a.symbols).cmp(&(b.conductor, &b.symbols)));
    skipped.sort();
    Ok(SearchOutcome { rows, skipped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localtypes::catalog::parse_descriptor;
    use crate::localtypes::{build_sc_depth0, build_special};

    fn st(p: u32) -> Arc<LocalTypeChar> {
        build_special(p, UnitChar::trivial(p))
    }

    #[test]
    fn assemble_and_parity_gate() {
        let spec = assemble(2, vec![st(11)]).unwrap();
        assert_eq!(spec.level, 11);
        assert_eq!(spec.conductor, 11);
        assert_eq!(spec.d_tau(), 10);
        assert_eq!(spec.n_sp, 1);
        // odd weight with trivial central character violates parity
        assert!(matches!(
            assemble(3, vec![st(2)]),
            Err(CountError::ParityViolation { .. })
        ));
        // PS_3(2) has odd central character: weight 3 is fine
        let ps32 = parse_descriptor("PS:3:2").unwrap()[0].tc.clone();
        assert!(assemble(3, vec![ps32]).is_ok());
    }

    #[test]
    fn working_levels() {
        assert_eq!(working_level(&assemble(2, vec![st(11)]).unwrap()), 11);
        assert_eq!(working_level(&assemble(12, vec![]).unwrap()), 3);
        assert_eq!(working_level(&assemble(2, vec![st(2)]).unwrap()), 4);
    }

    #[test]
    fn mu_spot_values() {
        // dim S_12(SL_2(Z)) = 1
        assert_eq!(mu(&assemble(12, vec![]).unwrap()).unwrap(), 1);
        // no weight-2 forms of conductor 1, and none special at 7
        assert_eq!(mu(&assemble(2, vec![]).unwrap()).unwrap(), 0);
        assert_eq!(mu(&assemble(2, vec![st(7)]).unwrap()).unwrap(), 0);
    }

    #[test]
    fn count_spot_values() {
        // one special weight-2 newform at 11 (the genus of X_0(11))
        assert_eq!(count_s(&assemble(2, vec![st(11)]).unwrap()).unwrap().count, 1);
        // dim S_12(SL_2(Z)) = 1
        assert_eq!(count_s(&assemble(12, vec![]).unwrap()).unwrap().count, 1);
        // dim S_8^new(Gamma_0(2)) = 1
        assert_eq!(count_s(&assemble(8, vec![st(2)]).unwrap()).unwrap().count, 1);
        // the depth-zero 3-adic type misses at weight 2
        let sc34 = build_sc_depth0(3, 4).unwrap();
        assert_eq!(count_s(&assemble(2, vec![sc34]).unwrap()).unwrap().count, 0);
        // trivial type at weight 2
        assert_eq!(count_s(&assemble(2, vec![]).unwrap()).unwrap().count, 0);
    }

    #[test]
    fn no_special_components_collapse() {
        let sc34 = build_sc_depth0(3, 4).unwrap();
        for k in [2u32, 4, 6] {
            let spec = assemble(k, vec![sc34.clone()]).unwrap();
            let r = count_s(&spec).unwrap();
            assert_eq!(r.mu, r.count, "k={k}");
        }
    }

    #[test]
    fn inflation_invariance_of_mu() {
        let mut checked = 0;
        let mut samples: Vec<(u32, GlobalTypeSpec)> = Vec::new();
        for k in [2u32, 3, 4, 5, 6, 7, 12] {
            for desc in ["1", "ST:3", "ST:5", "PS:3:2", "PS:5:2", "PS:5:4", "SC:3:4", "SC:3:8"] {
                let entry = &parse_descriptor(desc).unwrap()[0];
                if let Ok(spec) = assemble(k, vec![entry.tc.clone()]) {
                    let m = working_level(&spec);
                    samples.push((m, spec));
                }
            }
        }
        for (m, spec) in samples {
            let a = mu_at_level(&spec, m).unwrap();
            let b = mu_at_level(&spec, 2 * m).unwrap();
            assert_eq!(a, b, "inflation variance at k={}", spec.weight);
            checked += 1;
        }
        assert!(checked >= 20, "need at least 20 inflation samples, got {checked}");
    }

    #[test]
    fn estimate_arithmetic() {
        assert_eq!(asymptotic_estimate(11, 1, 1, &rat(-1, 12)), rat(11, 12));
        assert_eq!(asymptotic_estimate(1, 2, 1, &rat(1, 30)), rat(1, 60));
        assert_eq!(asymptotic_estimate(0, 1, 1, &rat(-1, 12)), rat(0, 1));
    }

    #[test]
    fn d_over_2nu_lower_bound() {
        // d(tau)/2^nu >= prod (p-1)/2 over the higher-dimensional places
        for descs in [vec!["SC:3:4"], vec!["ST:5"], vec!["SC:3:4", "PS:5:2"]] {
            let comps: Vec<Arc<LocalTypeChar>> = descs
                .iter()
                .map(|d| parse_descriptor(d).unwrap()[0].tc.clone())
                .collect();
            let k = if comps.iter().map(|t| t.central_sign()).product::<i64>() == 1 { 2 } else { 3 };
            let spec = assemble(k, comps).unwrap();
            let lhs = rat(spec.d_tau() as i64, 1 << spec.nu);
            let mut rhs = rat(1, 1);
            for t in spec.components.values() {
                if t.dim > 1 {
                    rhs *= rat((t.prime - 1) as i64, 2);
                }
            }
            assert!(lhs >= rhs);
        }
    }
}
