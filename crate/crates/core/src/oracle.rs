//! Independent verification paths: classical dimension formulas for
//! S_k(Gamma(N)) and brute-force class-function decompositions over fully
//! enumerated SL(2, Z/N). Used by tests and the `selftest` command, never by
//! the fast path.

use std::sync::Arc;

use crate::cohomology::SubgroupCharacter;
use crate::exactnum::{rat, Cyclotomic, Rational};
use crate::modgroup::{GroupData, GroupError, Mat2Mod};

/// dim S_k(Gamma(N)) for N >= 3 by the classical genus and cusp-count
/// formulas for the principal congruence subgroup: with d the index of the
/// image of Gamma(N) in PSL(2, Z) and c = d/N the cusp count,
///
/// ```text
/// g = 1 + d (N - 6) / (12 N)
/// dim S_2 = g
/// dim S_k = (k-1)(g-1) + (k/2 - 1) c     k >= 4 even
/// dim S_k = (k-1)(g-1) + (k-2) c / 2     k >= 3 odd
/// ```
///
/// (All cusps of Gamma(N), N >= 3, are regular, and there are no elliptic
/// points.)
pub fn dim_sk_full(n: u32, k: u32) -> u64 {
    assert!(n >= 3, "principal congruence level must be >= 3");
    assert!(k >= 2);
    // d = [PSL_2(Z) : image of Gamma(N)] = N^3 prod (1 - 1/p^2) / 2
    let mut d = rat(n as i64, 1) * rat(n as i64, 1) * rat(n as i64, 1);
    let mut m = n;
    let mut p = 2u32;
    while p * p <= m {
        if m % p == 0 {
            d *= rat((p * p - 1) as i64, (p * p) as i64);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        d *= rat((m as i64) * (m as i64) - 1, (m as i64) * (m as i64));
    }
    d /= rat(2, 1);
    let cusps = &d / rat(n as i64, 1);
    let genus = rat(1, 1) + &d * rat(n as i64 - 6, 12 * n as i64);
    assert!(genus.is_integer() && cusps.is_integer());
    let g: i64 = genus.to_integer().try_into().unwrap();
    let c: i64 = cusps.to_integer().try_into().unwrap();
    let dim: Rational = if k == 2 {
        rat(g, 1)
    } else if k % 2 == 0 {
        rat(k as i64 - 1, 1) * rat(g - 1, 1) + rat(k as i64 / 2 - 1, 1) * rat(c, 1)
    } else {
        rat(k as i64 - 1, 1) * rat(g - 1, 1) + rat(k as i64 - 2, 2) * rat(c, 1)
    };
    assert!(dim.is_integer(), "dimension formula must give an integer");
    let v: i64 = dim.to_integer().try_into().unwrap();
    assert!(v >= 0, "negative dimension from the formula");
    v as u64
}

/// A class function on a fully enumerated group, stored on conjugacy-class
/// representatives.
pub struct ClassFunction {
    pub group: Arc<GroupData>,
    pub values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn from_trace(group: Arc<GroupData>, trace: &dyn Fn(&Mat2Mod) -> Cyclotomic) -> Self {
        let values = group.class_reps.iter().map(trace).collect();
        ClassFunction { group, values }
    }

    pub fn value_at(&self, g: &Mat2Mod) -> Cyclotomic {
        self.values[self.group.class_id(g) as usize].clone()
    }
}

/// The complete induced character Ind_H^G chi as an explicit class function:
/// Ind chi(g) = (1/|H|) sum over x in G with x^-1 g x in H of chi(x^-1 g x).
pub fn induced_class_function(
    chi: &SubgroupCharacter,
    group: Arc<GroupData>,
) -> Result<ClassFunction, GroupError> {
    let h = &chi.subgroup;
    let values = group
        .class_reps
        .iter()
        .map(|rep| {
            let mut sum = Cyclotomic::zero();
            for x in &group.elements {
                let conj = rep.conj_by(x);
                if h.contains(&conj) {
                    sum = sum.add(&chi.value(&conj));
                }
            }
            sum.scale(&rat(1, h.order() as i64))
        })
        .collect();
    Ok(ClassFunction { group, values })
}

/// Exact inner product (1/|G|) sum |C| a(C) conj(b(C)).
pub fn brute_inner_product(a: &ClassFunction, b: &ClassFunction) -> Rational {
    assert_eq!(a.group.modulus, b.group.modulus);
    let g = &a.group;
    let mut sum = Cyclotomic::zero();
    for j in 0..g.num_classes() {
        let term = a.values[j]
            .mul(&b.values[j].conj())
            .scale(&rat(g.class_sizes[j] as i64, 1));
        sum = sum.add(&term);
    }
    sum.scale(&rat(1, g.order() as i64))
        .as_rational()
        .expect("inner products of symmetric class functions are rational")
}

/// Expand a virtual class into an explicit class function on SL(2, Z/N)
/// (the brute-force side of the oracle-vs-fast-path comparison).
pub fn expand_virtual_class(
    cls: &crate::cohomology::VirtualClass,
) -> Result<ClassFunction, GroupError> {
    let group = GroupData::sl(cls.modulus)?;
    let mut values = vec![Cyclotomic::zero(); group.num_classes()];
    for (coef, chi) in &cls.terms {
        let ind = induced_class_function(chi, group.clone())?;
        for (v, iv) in values.iter_mut().zip(ind.values.iter()) {
            *v = v.add(&iv.scale(&rat(*coef, 1)));
        }
    }
    if cls.scalar != 0 {
        for v in values.iter_mut() {
            *v = v.add(&Cyclotomic::from_int(cls.scalar));
        }
    }
    Ok(ClassFunction { group, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{h1p_class, inner_product};
    use crate::exactnum::rat_int;
    use crate::localtypes::{build_sc_depth0, build_special, UnitChar};
    use crate::modgroup::SubgroupData;

    #[test]
    fn dimension_formula_spot_values() {
        // genus of X(7) is 3 (the Klein quartic)
        assert_eq!(dim_sk_full(7, 2), 3);
        // genus of X(11): 1 + 660*5/132 = 26
        assert_eq!(dim_sk_full(11, 2), 26);
        // S_3(Gamma(7)): (k-1)(g-1) + (k-2)/2 * 24 = 4 + 12 = 16
        assert_eq!(dim_sk_full(7, 3), 16);
        assert_eq!(dim_sk_full(3, 2), 0);
        assert_eq!(dim_sk_full(4, 3), 1);
        assert_eq!(dim_sk_full(5, 4), 9);
        assert_eq!(dim_sk_full(8, 2), 5);
        assert_eq!(dim_sk_full(9, 2), 10);
        assert_eq!(dim_sk_full(13, 2), 50);
    }

    #[test]
    fn induced_from_trivial_subgroup_examples() {
        // Ind_Z^{SL(2,Z/7)} 1 has value [G:Z] = 168 at the identity
        let z = Arc::new(SubgroupData::center(7));
        let chi = SubgroupCharacter::trivial(z);
        let ind = induced_class_function(&chi, GroupData::sl(7).unwrap()).unwrap();
        assert_eq!(ind.value_at(&Mat2Mod::identity(7)), Cyclotomic::from_int(168));
        // self-inner-product of Ind_rho^{SL(2,Z/3)} 1 counts double cosets
        let rho = Arc::new(SubgroupData::gamma_rho(3));
        let chi = SubgroupCharacter::trivial(rho.clone());
        let ind = induced_class_function(&chi, GroupData::sl(3).unwrap()).unwrap();
        let ip = brute_inner_product(&ind, &ind);
        let gd = GroupData::sl(3).unwrap();
        let mut double_cosets = std::collections::HashSet::new();
        for g in &gd.elements {
            let key = rho
                .elements
                .iter()
                .flat_map(|h1| rho.elements.iter().map(move |h2| h1.mul(g).mul(h2).encode()))
                .min()
                .unwrap();
            double_cosets.insert(key);
        }
        assert_eq!(ip, rat_int(double_cosets.len() as i64));
    }

    #[test]
    fn brute_inner_products_of_characters() {
        // the Steinberg restriction to SL(2, Z/3) stays irreducible
        let st = build_special(3, UnitChar::trivial(3));
        let gd = GroupData::sl(3).unwrap();
        let cf = ClassFunction::from_trace(gd.clone(), &|g| st.trace(g));
        assert_eq!(brute_inner_product(&cf, &cf), rat_int(1));
        let one = ClassFunction::from_trace(gd, &|_| Cyclotomic::one());
        assert_eq!(brute_inner_product(&one, &one), rat_int(1));
    }

    #[test]
    fn symbolic_inner_products_match_brute_force() {
        // the Frobenius shortcut equals the full class-function computation
        for n in [3u32, 4, 5] {
            for k in [2u32, 3, 4] {
                let cls = h1p_class(n, k).unwrap();
                let expanded = expand_virtual_class(&cls).unwrap();
                let types: Vec<Arc<crate::localtypes::LocalTypeChar>> = match n {
                    3 => vec![
                        build_special(3, UnitChar::trivial(3)),
                        build_sc_depth0(3, 4).unwrap(),
                    ],
                    4 => vec![build_special(2, UnitChar::trivial(2))],
                    5 => vec![
                        build_special(5, UnitChar::trivial(5)),
                        build_sc_depth0(5, 8).unwrap(),
                    ],
                    _ => unreachable!(),
                };
                for tc in types {
                    let fast = inner_product(&|g| tc.trace(g), &cls).unwrap();
                    let slow_cf =
                        ClassFunction::from_trace(expanded.group.clone(), &|g| tc.trace(g));
                    let slow = brute_inner_product(&slow_cf, &expanded);
                    assert_eq!(
                        rat_int(fast),
                        slow,
                        "mismatch at N={n} k={k} type {}",
                        tc.descriptor
                    );
                }
            }
        }
    }
}
