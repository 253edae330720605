//! The catalog of minimal local inertial types at bounded conductor, the
//! descriptor grammar, and the trace-table cache.
//!
//! Catalog convention: a family enters the candidate catalog only when its
//! conductor is minimal among its one-dimensional twists (the standard
//! minimal-type normalization). Consequently one-dimensional types other
//! than the trivial one, twisted Steinbergs, and det-twists of supercuspidal
//! types never appear: the types they would represent are twists of smaller
//! catalog entries and are counted there.
//!
//! Descriptors (the CLI surface):
//!
//! * `ST:p` (alias `SP:p`) - Steinberg at p
//! * `PS:p:n` - principal series of GL(2, Z/p), character of order n
//! * `PS:q:n[:+|:-]` - principal series at prime-power conductor q with a
//!   character of order n (sign of chi(-1) where both occur); aliases
//!   `PS4`, `PS8`, `PS9`
//! * `SC:p:n` - depth-zero supercuspidal, theta of order n
//! * `SC8[:k]`, `SC16[:k]` - wild 2-adic families at conductors 8 and 16
//! * `SC27:{+3|-3}:{+1|-1}` - ramified 3-adic supercuspidal, conductor 27
//! * `SC64:n`, `SC256:n` - unramified 2-adic supercuspidals (n = order of
//!   theta at the order-6 Teichmueller lift)
//! * `SC81` - the even-central conductor-81 family at p = 3

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

use crate::exactnum::Cyclotomic;
use crate::modgroup::{GroupData, Mat2Mod};

use super::wild::{p2_level2_families, sc27, sc81_families, sc_unramified_2adic, WildFamily};
use super::{build_onedim, build_ps, build_sc_depth0, build_special, LocalTypeChar, TypeError, UnitChar};

/// A catalog entry: one representative per family, plus the other concrete
/// members of the family (same symbol; used by tests and family reports).
#[derive(Clone)]
pub struct CatalogEntry {
    pub tc: Arc<LocalTypeChar>,
    pub members: Vec<Arc<LocalTypeChar>>,
}

impl CatalogEntry {
    fn single(tc: Arc<LocalTypeChar>) -> CatalogEntry {
        CatalogEntry { members: vec![tc.clone()], tc }
    }

    fn from_family(f: &WildFamily) -> CatalogEntry {
        CatalogEntry {
            tc: f.representative.clone(),
            members: f.members.clone(),
        }
    }
}

/// The trivial type (conductor 1).
pub fn trivial_entry() -> CatalogEntry {
    CatalogEntry::single(build_onedim(2, UnitChar::trivial(1)))
}

fn ps_symbol(prime: u32, c: u32, n: u32, parity: i64, ambiguous: bool) -> String {
    let q = prime.pow(c);
    if c == 1 {
        return format!("PS_{prime}({n})");
    }
    match (q, n, parity) {
        (4, 2, _) => "PS_4".to_string(),
        (8, 2, 1) => "PS_8".to_string(),
        (9, 3, _) => "PS_9".to_string(),
        _ => {
            if ambiguous {
                format!("PS_{q}({n};{})", if parity == 1 { "+" } else { "-" })
            } else {
                format!("PS_{q}({n})")
            }
        }
    }
}

// principal-series families at conductor p^c: characters of (Z/p^c)* of
// conductor exactly c, one entry per Galois class (order, and sign when the
// order does not determine the class)
fn ps_families(prime: u32, c: u32) -> Result<Vec<CatalogEntry>, TypeError> {
    let q = prime.pow(c);
    let mut by_class: Vec<((u32, i64), UnitChar)> = Vec::new();
    for chi in UnitChar::all(q) {
        if chi.conductor_exp != c {
            continue;
        }
        let key = (chi.order, chi.parity());
        if !by_class.iter().any(|(k, _)| *k == key) {
            by_class.push((key, chi));
        }
    }
    let mut out = Vec::new();
    for ((n, parity), chi) in by_class {
        let ambiguous = prime == 2 && c >= 3;
        let descriptor = if c == 1 {
            format!("PS:{prime}:{n}")
        } else if ambiguous {
            format!("PS:{q}:{n}:{}", if parity == 1 { "+" } else { "-" })
        } else {
            format!("PS:{q}:{n}")
        };
        let symbol = ps_symbol(prime, c, n, parity, ambiguous);
        out.push(CatalogEntry::single(build_ps(prime, chi, descriptor, symbol)?));
    }
    Ok(out)
}

// depth-zero supercuspidal families: theta of order n on F_{p^2}^*, n | p^2-1
// and n not dividing p-1; all order-n characters are Galois-conjugate
fn depth0_families(prime: u32) -> Result<Vec<CatalogEntry>, TypeError> {
    let q2 = prime * prime - 1;
    let mut out = Vec::new();
    for n in 2..=q2 {
        if q2 % n == 0 && (prime - 1) % n != 0 {
            out.push(CatalogEntry::single(build_sc_depth0(prime, n)?));
        }
    }
    Ok(out)
}

/// All catalog families at prime p with conductor exponent exactly c
/// (minimal types only). Errors with [`TypeError::Unimplemented`] where the
/// full family list is not enumerable.
pub fn families_at(prime: u32, c: u32) -> Result<Vec<CatalogEntry>, TypeError> {
    match (prime, c) {
        (_, 0) => Ok(vec![]),
        (_, 1) => {
            let mut out = vec![CatalogEntry::single(build_special(
                prime,
                UnitChar::trivial(prime),
            ))];
            out.extend(ps_families(prime, 1)?);
            Ok(out)
        }
        (_, 2) => {
            let mut out = depth0_families(prime)?;
            out.extend(ps_families(prime, 2)?);
            Ok(out)
        }
        (2, 3) => {
            let mut out: Vec<CatalogEntry> = cached_or_build("p2level2-sc8", || {
                Ok(p2_level2_families()?.0)
            })?
            .iter()
            .map(CatalogEntry::from_family)
            .collect();
            out.extend(ps_families(2, 3)?);
            Ok(out)
        }
        (2, 4) => {
            let mut out: Vec<CatalogEntry> = cached_or_build("p2level2-sc16", || {
                Ok(p2_level2_families()?.1)
            })?
            .iter()
            .map(CatalogEntry::from_family)
            .collect();
            out.extend(ps_families(2, 4)?);
            Ok(out)
        }
        (3, 3) => {
            let mut out = Vec::new();
            for eps in [1i64, -1] {
                for iota in [1i64, -1] {
                    let key = format!("sc27:{eps}:{iota}");
                    let fams = cached_or_build(&key, || {
                        let t = sc27(eps, iota)?;
                        Ok(vec![WildFamily {
                            descriptor: t.descriptor.clone(),
                            representative: t.clone(),
                            members: vec![t],
                        }])
                    })?;
                    out.extend(fams.iter().map(CatalogEntry::from_family));
                }
            }
            out.extend(ps_families(3, 3)?);
            Ok(out)
        }
        (3, 4) => {
            let mut out = Vec::new();
            for sign in [1i64, -1] {
                let key = format!("sc81:{sign}");
                let fams = cached_or_build(&key, || sc81_families(sign))?;
                out.extend(fams.iter().map(CatalogEntry::from_family));
            }
            out.extend(ps_families(3, 4)?);
            Ok(out)
        }
        (2, 5) => Err(TypeError::Unimplemented(
            "2-adic types of conductor 32 (extraordinary, odd conductor)".into(),
        )),
        (2, 6) => Err(TypeError::Unimplemented(
            "full conductor-64 family list at p = 2 (SC64:n is available via count)".into(),
        )),
        (p, c) => Err(TypeError::Unimplemented(format!(
            "local families of conductor {p}^{c}"
        ))),
    }
}

/// Largest conductor for which `search` windows are fully enumerable: the
/// first gap is the extraordinary 2-adic family at conductor 32.
pub const MAX_SEARCH_CONDUCTOR: u64 = 31;

/// Resolve a descriptor string to the concrete members of its family.
pub fn parse_descriptor(desc: &str) -> Result<Vec<CatalogEntry>, TypeError> {
    let unknown = || TypeError::UnknownDescriptor(desc.to_string());
    let parts: Vec<&str> = desc.split(':').collect();
    match parts.as_slice() {
        ["1"] | [""] => Ok(vec![trivial_entry()]),
        ["ST", p] | ["SP", p] => {
            let p: u32 = p.parse().map_err(|_| unknown())?;
            check_prime(p, desc)?;
            Ok(vec![CatalogEntry::single(build_special(
                p,
                UnitChar::trivial(p),
            ))])
        }
        ["PS4"] => pick_ps(2, 2, 2, None, desc),
        ["PS8"] => pick_ps(2, 3, 2, Some(1), desc),
        ["PS9"] => pick_ps(3, 2, 3, None, desc),
        ["PS", q, n] => {
            let q: u32 = q.parse().map_err(|_| unknown())?;
            let n: u32 = n.parse().map_err(|_| unknown())?;
            let (p, c) = prime_power(q).ok_or_else(unknown)?;
            check_prime(p, desc)?;
            pick_ps(p, c, n, None, desc)
        }
        ["PS", q, n, s] => {
            let q: u32 = q.parse().map_err(|_| unknown())?;
            let n: u32 = n.parse().map_err(|_| unknown())?;
            let parity = match *s {
                "+" | "+1" | "1" => 1,
                "-" | "-1" => -1,
                _ => return Err(unknown()),
            };
            let (p, c) = prime_power(q).ok_or_else(unknown)?;
            pick_ps(p, c, n, Some(parity), desc)
        }
        ["SC", p, n] => {
            let p: u32 = p.parse().map_err(|_| unknown())?;
            let n: u32 = n.parse().map_err(|_| unknown())?;
            check_prime(p, desc)?;
            Ok(vec![CatalogEntry::single(build_sc_depth0(p, n)?)])
        }
        ["SC8"] => Ok(families_at(2, 3)?
            .into_iter()
            .filter(|e| e.tc.descriptor.starts_with("SC8"))
            .collect()),
        ["SC8", k] => {
            let k: usize = k.parse().map_err(|_| unknown())?;
            families_at(2, 3)?
                .into_iter()
                .filter(|e| e.tc.descriptor.starts_with("SC8"))
                .nth(k.checked_sub(1).ok_or_else(unknown)?)
                .map(|e| vec![e])
                .ok_or_else(unknown)
        }
        ["SC16"] => Ok(families_at(2, 4)?
            .into_iter()
            .filter(|e| e.tc.descriptor.starts_with("SC16"))
            .collect()),
        ["SC16", k] => {
            let k: usize = k.parse().map_err(|_| unknown())?;
            families_at(2, 4)?
                .into_iter()
                .filter(|e| e.tc.descriptor.starts_with("SC16"))
                .nth(k.checked_sub(1).ok_or_else(unknown)?)
                .map(|e| vec![e])
                .ok_or_else(unknown)
        }
        ["SC27", fld, io] => {
            let eps = match *fld {
                "+3" | "p3" | "sqrt3" | "3" => 1,
                "-3" | "m3" | "sqrt-3" => -1,
                _ => return Err(unknown()),
            };
            let iota = match *io {
                "+1" | "1" | "+" => 1,
                "-1" | "-" => -1,
                _ => return Err(unknown()),
            };
            let key = format!("sc27:{eps}:{iota}");
            let fams = cached_or_build(&key, || {
                let t = sc27(eps, iota)?;
                Ok(vec![WildFamily {
                    descriptor: t.descriptor.clone(),
                    representative: t.clone(),
                    members: vec![t],
                }])
            })?;
            Ok(fams.iter().map(CatalogEntry::from_family).collect())
        }
        ["SC64", n] => {
            let n: u32 = n.parse().map_err(|_| unknown())?;
            let fams = cached_or_build(&format!("sc64:{n}"), || sc_unramified_2adic(3, n))?;
            Ok(fams.iter().map(CatalogEntry::from_family).collect())
        }
        ["SC256", n] => {
            let n: u32 = n.parse().map_err(|_| unknown())?;
            let fams = cached_or_build(&format!("sc256:{n}"), || sc_unramified_2adic(4, n))?;
            Ok(fams.iter().map(CatalogEntry::from_family).collect())
        }
        ["SC81"] => {
            let fams = cached_or_build("sc81:1", || sc81_families(1))?;
            Ok(fams.iter().map(CatalogEntry::from_family).collect())
        }
        _ => Err(unknown()),
    }
}

fn pick_ps(
    prime: u32,
    c: u32,
    n: u32,
    parity: Option<i64>,
    desc: &str,
) -> Result<Vec<CatalogEntry>, TypeError> {
    let all = ps_families(prime, c)?;
    let matches: Vec<CatalogEntry> = all
        .into_iter()
        .filter(|e| {
            let chi_ok = e.tc.dim == prime.pow(c - 1) * (prime + 1);
            let _ = chi_ok;
            ps_order_of(&e.tc) == Some(n)
                && parity.map_or(true, |p| e.tc.central_sign() == p)
        })
        .collect();
    if matches.is_empty() {
        return Err(TypeError::UnknownDescriptor(desc.to_string()));
    }
    Ok(matches)
}

// the order of the inducing character, recovered from the descriptor
fn ps_order_of(tc: &LocalTypeChar) -> Option<u32> {
    let parts: Vec<&str> = tc.descriptor.split(':').collect();
    if parts.len() >= 3 && parts[0] == "PS" {
        parts[2].parse().ok()
    } else {
        None
    }
}

fn check_prime(p: u32, desc: &str) -> Result<(), TypeError> {
    if p < 2 || (2..p).any(|d| d * d <= p && p % d == 0) {
        return Err(TypeError::UnknownDescriptor(desc.to_string()));
    }
    if p > 97 {
        return Err(TypeError::Unimplemented(format!(
            "primes above 97 (descriptor {desc:?})"
        )));
    }
    Ok(())
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = super::smallest_prime_factor(q);
    let mut c = 0;
    let mut m = q;
    while m > 1 {
        if m % p != 0 {
            return None;
        }
        m /= p;
        c += 1;
    }
    if c == 0 {
        None
    } else {
        Some((p, c))
    }
}

// ---------------------------------------------------------------------------
// trace-table cache (wild families only; everything else is cheap)
// ---------------------------------------------------------------------------

pub const CACHE_SCHEMA: u32 = 1;

#[derive(serde::Serialize, serde::Deserialize, Clone)]
pub struct CachedType {
    pub descriptor: String,
    pub symbol: String,
    pub prime: u32,
    pub level: u32,
    pub dim: u32,
    pub conductor_exp: u32,
    /// class representative (as "a,b;c,d") and exact trace value
    pub classes: Vec<(String, Cyclotomic)>,
}

#[derive(serde::Serialize, serde::Deserialize, Clone)]
pub struct CachedFamily {
    pub descriptor: String,
    pub members: Vec<CachedType>,
}

static WILD_REGISTRY: Lazy<Mutex<HashMap<String, Vec<CachedFamily>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn cached_or_build(
    key: &str,
    build: impl FnOnce() -> Result<Vec<WildFamily>, TypeError>,
) -> Result<Vec<WildFamily>, TypeError> {
    if let Some(cached) = WILD_REGISTRY.lock().unwrap().get(key) {
        let mut out = Vec::new();
        for fam in cached {
            let members: Result<Vec<Arc<LocalTypeChar>>, TypeError> =
                fam.members.iter().map(revive).collect();
            let members = members?;
            out.push(WildFamily {
                descriptor: fam.descriptor.clone(),
                representative: members[0].clone(),
                members,
            });
        }
        return Ok(out);
    }
    let built = build()?;
    let dump: Vec<CachedFamily> = built
        .iter()
        .map(|f| CachedFamily {
            descriptor: f.descriptor.clone(),
            members: f.members.iter().map(|m| freeze(m)).collect(),
        })
        .collect();
    WILD_REGISTRY.lock().unwrap().insert(key.to_string(), dump);
    Ok(built)
}

fn freeze(tc: &Arc<LocalTypeChar>) -> CachedType {
    let (group, values) = tc
        .class_table_values()
        .expect("wild types are class-table backed");
    CachedType {
        descriptor: tc.descriptor.clone(),
        symbol: tc.symbol.clone(),
        prime: tc.prime,
        level: tc.level,
        dim: tc.dim,
        conductor_exp: tc.conductor_exp,
        classes: group
            .class_reps
            .iter()
            .zip(values.iter())
            .map(|(rep, v)| (rep.text(), v.clone()))
            .collect(),
    }
}

fn revive(ct: &CachedType) -> Result<Arc<LocalTypeChar>, TypeError> {
    let modulus = ct.prime.pow(ct.level);
    let group = GroupData::gl(modulus)?;
    let mut values = vec![Cyclotomic::zero(); group.num_classes()];
    let mut seen = vec![false; group.num_classes()];
    for (text, v) in &ct.classes {
        let rep = Mat2Mod::parse(modulus, text)
            .map_err(|_| TypeError::UnknownDescriptor(format!("cache entry {text:?}")))?;
        let cid = group.class_id(&rep) as usize;
        values[cid] = v.clone();
        seen[cid] = true;
    }
    if !seen.iter().all(|&s| s) {
        return Err(TypeError::UnknownDescriptor(
            "cache entry missing classes".into(),
        ));
    }
    Ok(Arc::new(LocalTypeChar::from_class_table(
        ct.prime,
        ct.level,
        ct.dim,
        ct.conductor_exp,
        super::TypeKind::ScWild,
        ct.descriptor.clone(),
        ct.symbol.clone(),
        group,
        values,
    )))
}

/// Serialize the in-process wild-family registry (for the CLI cache file).
pub fn cache_dump() -> serde_json::Value {
    let reg = WILD_REGISTRY.lock().unwrap();
    let mut entries = serde_json::Map::new();
    for (k, v) in reg.iter() {
        entries.insert(k.clone(), serde_json::to_value(v).unwrap());
    }
    serde_json::json!({ "schema": CACHE_SCHEMA, "families": entries })
}

/// Load a cache file produced by [`cache_dump`]; silently ignores files with
/// a different schema version.
pub fn cache_load(value: &serde_json::Value) {
    let Some(schema) = value.get("schema").and_then(|s| s.as_u64()) else {
        return;
    };
    if schema != CACHE_SCHEMA as u64 {
        return;
    }
    let Some(families) = value.get("families").and_then(|f| f.as_object()) else {
        return;
    };
    let mut reg = WILD_REGISTRY.lock().unwrap();
    for (k, v) in families {
        if let Ok(parsed) = serde_json::from_value::<Vec<CachedFamily>>(v.clone()) {
            reg.entry(k.clone()).or_insert(parsed);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level1_families() {
        let fams = families_at(7, 1).unwrap();
        let symbols: Vec<&str> = fams.iter().map(|e| e.tc.symbol.as_str()).collect();
        assert!(symbols.contains(&"SP_7"));
        assert!(symbols.contains(&"PS_7(2)"));
        assert!(symbols.contains(&"PS_7(3)"));
        assert!(symbols.contains(&"PS_7(6)"));
        assert_eq!(fams.len(), 4);
        // p = 2 has no ramified principal series at level 1
        assert_eq!(families_at(2, 1).unwrap().len(), 1);
    }

    #[test]
    fn conductor2_families() {
        let fams = families_at(5, 2).unwrap();
        let symbols: Vec<&str> = fams.iter().map(|e| e.tc.symbol.as_str()).collect();
        for s in ["SC_5(3)", "SC_5(6)", "SC_5(8)", "SC_5(12)", "SC_5(24)"] {
            assert!(symbols.contains(&s), "missing {s} in {symbols:?}");
        }
        for s in ["PS_25(5)", "PS_25(10)", "PS_25(20)"] {
            assert!(symbols.contains(&s), "missing {s} in {symbols:?}");
        }
        assert_eq!(fams.len(), 8);
        let f4 = families_at(2, 2).unwrap();
        let symbols: Vec<&str> = f4.iter().map(|e| e.tc.symbol.as_str()).collect();
        assert_eq!(symbols, vec!["SC_2(3)", "PS_4"]);
    }

    #[test]
    fn parity_of_table_families() {
        // PS_4 is odd (chi_{-4}(-1) = -1), PS_8 is even, PS_9 is even
        let ps4 = &parse_descriptor("PS4").unwrap()[0];
        assert_eq!(ps4.tc.central_sign(), -1);
        let ps8 = &parse_descriptor("PS8").unwrap()[0];
        assert_eq!(ps8.tc.central_sign(), 1);
        assert_eq!(ps8.tc.dim, 12);
        let ps9 = &parse_descriptor("PS9").unwrap()[0];
        assert_eq!(ps9.tc.central_sign(), 1);
        assert_eq!(ps9.tc.dim, 12);
    }

    #[test]
    fn descriptor_round_trips() {
        for desc in ["ST:11", "PS:3:2", "SC:3:4", "PS4", "PS8", "PS9"] {
            let fams = parse_descriptor(desc).unwrap();
            assert!(!fams.is_empty(), "{desc}");
        }
        assert!(matches!(
            parse_descriptor("XX:3"),
            Err(TypeError::UnknownDescriptor(_))
        ));
        assert!(matches!(
            parse_descriptor("SC:3:2"),
            Err(TypeError::NotCuspidal(..))
        ));
    }

    #[test]
    fn unimplemented_windows_error() {
        assert!(matches!(
            families_at(2, 5),
            Err(TypeError::Unimplemented(_))
        ));
        assert!(matches!(
            families_at(5, 3),
            Err(TypeError::Unimplemented(_))
        ));
    }
}
