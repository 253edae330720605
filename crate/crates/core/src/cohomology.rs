//! The class of parabolic cohomology of Gamma(N) in the Grothendieck group
//! of SL(2, Z/N), and Frobenius-reciprocity inner products against it.
//!
//! The class [H^1_P(Gamma(N), V_k)] is kept symbolic: an integer combination
//! of characters induced from the four standard subgroups Z-bar,
//! Gamma_rho-bar, Gamma_i-bar, Gamma_infinity-bar, plus an integer multiple
//! of the trivial character (the weight-2 correction). Frobenius reciprocity
//! then reduces every multiplicity computation to exact character sums over
//! subgroups of size at most 2N, except for the scalar term, which sums over
//! the full group by conjugacy classes.
//!
//! For weight 2:
//!   [H^1_P] = Ind_Z 1 - Ind_rho 1 - Ind_i 1 - Ind_inf 1 + 2 [1],
//! and for weight k > 2:
//!   [H^1_P] = f(k) Ind_Z sgn^k - Ind_rho eps_rho - Ind_i eps_i
//!             - Ind_inf sgn^k,
//! with f(k) = (k-1) - floor(k/3) - floor(k/2) and the eps error terms
//! periodic in k mod 6 and k mod 4.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use thiserror::Error;

use crate::exactnum::{rat, Cyclotomic};
use crate::modgroup::{GroupData, GroupError, Mat2Mod, SubgroupData, SubgroupLabel};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("level must be at least 3 (got {0})")]
    LevelTooSmall(u32),
    #[error("inner product {0} is not an integer; trace tables are inconsistent")]
    NonIntegral(String),
    #[error("inner product has a nonzero imaginary part")]
    NotReal,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A character of one of the standard subgroups, as an explicit value table.
#[derive(Clone)]
pub struct SubgroupCharacter {
    pub subgroup: Arc<SubgroupData>,
    values: HashMap<u64, Cyclotomic>,
}

impl SubgroupCharacter {
    pub fn new(subgroup: Arc<SubgroupData>, values: HashMap<u64, Cyclotomic>) -> Self {
        debug_assert_eq!(values.len(), subgroup.elements.len());
        SubgroupCharacter { subgroup, values }
    }

    pub fn trivial(subgroup: Arc<SubgroupData>) -> Self {
        let values = subgroup
            .elements
            .iter()
            .map(|g| (g.encode(), Cyclotomic::one()))
            .collect();
        SubgroupCharacter { subgroup, values }
    }

    /// The e-th power of the canonical generator character: the generator
    /// maps to zeta_6 on Gamma_rho-bar and to zeta_4 = i on Gamma_i-bar.
    pub fn generator_power(subgroup: Arc<SubgroupData>, e: i64) -> Self {
        let ord = match subgroup.label {
            SubgroupLabel::GammaRho => 6,
            SubgroupLabel::GammaI => 4,
            _ => panic!("generator_power needs a cyclic elliptic subgroup"),
        };
        let gen = subgroup.generators[0];
        let mut values = HashMap::new();
        let mut g = Mat2Mod::identity(subgroup.modulus);
        for j in 0..ord {
            values.insert(g.encode(), Cyclotomic::root_of_unity(ord as u32, e * j));
            g = g.mul(&gen);
        }
        assert_eq!(values.len(), subgroup.elements.len());
        SubgroupCharacter { subgroup, values }
    }

    /// sgn^k on Z-bar = {±1} or Gamma_infinity-bar = {±u^j}: sends -1 to
    /// (-1)^k and u to 1.
    pub fn sign_power(subgroup: Arc<SubgroupData>, k: u32) -> Self {
        let n = subgroup.modulus;
        let u = Mat2Mod::new(n, 1, 1, 0, 1).unwrap();
        let mut table = HashMap::new();
        for eps in [1i64, -1] {
            let base = if eps == 1 {
                Mat2Mod::identity(n)
            } else {
                Mat2Mod::neg_identity(n)
            };
            let sign = if eps == 1 || k % 2 == 0 {
                Cyclotomic::one()
            } else {
                Cyclotomic::from_int(-1)
            };
            let mut g = base;
            for _ in 0..n {
                table.insert(g.encode(), sign.clone());
                g = g.mul(&u);
            }
        }
        let values: HashMap<u64, Cyclotomic> = subgroup
            .elements
            .iter()
            .map(|g| (g.encode(), table[&g.encode()].clone()))
            .collect();
        SubgroupCharacter { subgroup, values }
    }

    pub fn value(&self, g: &Mat2Mod) -> Cyclotomic {
        self.values[&g.encode()].clone()
    }

    pub fn dimension(&self) -> Cyclotomic {
        self.value(&Mat2Mod::identity(self.subgroup.modulus))
    }

    pub fn add(&self, other: &SubgroupCharacter) -> SubgroupCharacter {
        let values = self
            .values
            .iter()
            .map(|(k, v)| (*k, v.add(&other.values[k])))
            .collect();
        SubgroupCharacter { subgroup: self.subgroup.clone(), values }
    }

    pub fn sub(&self, other: &SubgroupCharacter) -> SubgroupCharacter {
        let values = self
            .values
            .iter()
            .map(|(k, v)| (*k, v.sub(&other.values[k])))
            .collect();
        SubgroupCharacter { subgroup: self.subgroup.clone(), values }
    }

    pub fn scale(&self, c: i64) -> SubgroupCharacter {
        let values = self
            .values
            .iter()
            .map(|(k, v)| (*k, v.scale(&rat(c, 1))))
            .collect();
        SubgroupCharacter { subgroup: self.subgroup.clone(), values }
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(|v| v.is_zero())
    }
}

/// An integer combination of induced-from-standard-subgroup characters plus
/// an integer multiple of the trivial character of SL(2, Z/N).
pub struct VirtualClass {
    pub modulus: u32,
    pub terms: Vec<(i64, SubgroupCharacter)>,
    pub scalar: i64,
}

impl VirtualClass {
    /// Virtual dimension: sum of coeff * [S_N : H] * chi(1), plus the scalar.
    pub fn virtual_dimension(&self) -> i64 {
        let sl_order = crate::modgroup::group_order(self.modulus, true) as i64;
        let mut dim = rat(self.scalar, 1);
        for (coef, chi) in &self.terms {
            let index = rat(sl_order, chi.subgroup.order() as i64);
            let d = chi
                .dimension()
                .as_rational()
                .expect("character dimensions are rational");
            dim += rat(*coef, 1) * index * d;
        }
        assert!(dim.is_integer(), "virtual dimension must be an integer");
        dim.to_integer().try_into().expect("dimension fits in i64")
    }
}

/// f(k) = (k-1) - floor(k/3) - floor(k/2).
pub fn f_of_k(k: u32) -> i64 {
    assert!(k >= 2);
    (k as i64 - 1) - (k as i64 / 3) - (k as i64 / 2)
}

/// The periodic error terms: eps_rho as (coefficient, chi_rho exponent) per
/// k mod 6, and eps_i as (coefficient, chi_i exponent) per k mod 4. A zero
/// coefficient means the term vanishes.
pub fn eps_terms(k: u32) -> ((i64, i64), (i64, i64)) {
    assert!(k >= 2);
    let eps_rho = match k % 6 {
        0 => (-1, 0),
        1 => (0, 0),
        2 => (1, 0),
        3 => (-1, 3),
        4 => (0, 0),
        5 => (1, 3),
        _ => unreachable!(),
    };
    let eps_i = match k % 4 {
        0 => (-1, 0),
        1 => (0, 0),
        2 => (-1, 2),
        3 => (0, 0),
        _ => unreachable!(),
    };
    (eps_rho, eps_i)
}

/// The restriction of Sym^(k-2) of the standard representation to a cyclic
/// standard subgroup, as an explicit character-power multiset (eigenvalue
/// exponents k-2, k-4, ..., -(k-2)); on the center it is (k-1) copies of
/// sgn^k.
pub fn restrict_symk(subgroup: Arc<SubgroupData>, k: u32) -> SubgroupCharacter {
    assert!(k >= 2);
    match subgroup.label {
        SubgroupLabel::GammaRho | SubgroupLabel::GammaI => {
            let mut total: Option<SubgroupCharacter> = None;
            for t in 0..=(k - 2) as i64 {
                let e = (k as i64 - 2) - 2 * t;
                let ch = SubgroupCharacter::generator_power(subgroup.clone(), e);
                total = Some(match total {
                    None => ch,
                    Some(acc) => acc.add(&ch),
                });
            }
            total.unwrap()
        }
        SubgroupLabel::Center => SubgroupCharacter::sign_power(subgroup, k).scale(k as i64 - 1),
        _ => panic!("restrict_symk expects Z, Gamma_rho or Gamma_i"),
    }
}

/// Ind_Z^{Gamma_j} sgn^k as a character of the cyclic subgroup: the sum of
/// the generator-character powers of the parity of k.
pub fn induced_sign_from_center(subgroup: Arc<SubgroupData>, k: u32) -> SubgroupCharacter {
    let ord: i64 = match subgroup.label {
        SubgroupLabel::GammaRho => 6,
        SubgroupLabel::GammaI => 4,
        _ => panic!("expected an elliptic stabilizer"),
    };
    let mut total: Option<SubgroupCharacter> = None;
    let mut e = k as i64 % 2;
    while e < ord {
        let ch = SubgroupCharacter::generator_power(subgroup.clone(), e);
        total = Some(match total {
            None => ch,
            Some(acc) => acc.add(&ch),
        });
        e += 2;
    }
    total.unwrap()
}

static H1P_CACHE: Lazy<Mutex<HashMap<(u32, u32), Arc<VirtualClass>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// The class of H^1_P(Gamma(N), V_k) in the Grothendieck group of
/// SL(2, Z/N), N >= 3.
pub fn h1p_class(n: u32, k: u32) -> Result<Arc<VirtualClass>, CohomologyError> {
    if n < 3 {
        return Err(CohomologyError::LevelTooSmall(n));
    }
    assert!(k >= 2);
    if let Some(c) = H1P_CACHE.lock().unwrap().get(&(n, k)) {
        return Ok(c.clone());
    }
    let z = Arc::new(SubgroupData::center(n));
    let rho = Arc::new(SubgroupData::gamma_rho(n));
    let i = Arc::new(SubgroupData::gamma_i(n));
    let inf = Arc::new(SubgroupData::gamma_infinity(n));
    let cls = if k == 2 {
        VirtualClass {
            modulus: n,
            terms: vec![
                (1, SubgroupCharacter::trivial(z)),
                (-1, SubgroupCharacter::trivial(rho)),
                (-1, SubgroupCharacter::trivial(i)),
                (-1, SubgroupCharacter::trivial(inf)),
            ],
            scalar: 2,
        }
    } else {
        let mut terms = Vec::new();
        let f = f_of_k(k);
        if f != 0 {
            terms.push((f, SubgroupCharacter::sign_power(z, k)));
        }
        let ((c_rho, e_rho), (c_i, e_i)) = eps_terms(k);
        if c_rho != 0 {
            terms.push((-c_rho, SubgroupCharacter::generator_power(rho, e_rho)));
        }
        if c_i != 0 {
            terms.push((-c_i, SubgroupCharacter::generator_power(i, e_i)));
        }
        terms.push((-1, SubgroupCharacter::sign_power(inf, k)));
        VirtualClass { modulus: n, terms, scalar: 0 }
    };
    let cls = Arc::new(cls);
    H1P_CACHE.lock().unwrap().insert((n, k), cls.clone());
    Ok(cls)
}

/// The abstract Euler-characteristic class of a cocompact Fuchsian group
/// situation: (euler - r) Ind_Z V|_Z + sum_i Ind_{Gamma_i} V|_{Gamma_i}.
pub fn fuchsian_class(
    modulus: u32,
    euler_char: i64,
    fixed_data: Vec<SubgroupCharacter>,
    v_on_z: SubgroupCharacter,
) -> VirtualClass {
    let r = fixed_data.len() as i64;
    let mut terms = vec![(euler_char - r, v_on_z)];
    for chi in fixed_data {
        terms.push((1, chi));
    }
    VirtualClass { modulus, terms, scalar: 0 }
}

/// Exact Frobenius-reciprocity inner product of a trace function (the
/// restriction of a global type to SL(2, Z/N)) with a virtual class:
///
///   sum_j coeff_j (1/|H_j|) sum_{h in H_j} tr(h) conj(chi_j(h))
///   + scalar (1/|S_N|) sum_g tr(g).
///
/// The result must be a real integer; anything else signals a trace-table
/// bug and is reported as an error.
pub fn inner_product(
    trace: &dyn Fn(&Mat2Mod) -> Cyclotomic,
    cls: &VirtualClass,
) -> Result<i64, CohomologyError> {
    let mut total = Cyclotomic::zero();
    for (coef, chi) in &cls.terms {
        let mut sum = Cyclotomic::zero();
        for h in &chi.subgroup.elements {
            sum = sum.add(&trace(h).mul(&chi.value(h).conj()));
        }
        total = total.add(&sum.scale(&rat(*coef, chi.subgroup.order() as i64)));
    }
    if cls.scalar != 0 {
        let gd = GroupData::sl(cls.modulus)?;
        let mut sum = Cyclotomic::zero();
        for (j, rep) in gd.class_reps.iter().enumerate() {
            sum = sum.add(&trace(rep).scale(&rat(gd.class_sizes[j] as i64, 1)));
        }
        total = total.add(&sum.scale(&rat(cls.scalar, gd.order() as i64)));
    }
    let r = total.as_rational().ok_or(CohomologyError::NotReal)?;
    if !r.is_integer() {
        return Err(CohomologyError::NonIntegral(
            crate::exactnum::rational_string(&r),
        ));
    }
    Ok(r.to_integer().try_into().expect("inner product fits i64"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localtypes::{build_sc_depth0, build_special, UnitChar};
    use crate::oracle::dim_sk_full;

    #[test]
    fn f_values() {
        assert_eq!(f_of_k(2), 0);
        assert_eq!(f_of_k(12), 1);
        assert_eq!(f_of_k(7), 1);
    }

    #[test]
    fn eps_values() {
        // k = 12: both error terms are -[1]
        assert_eq!(eps_terms(12), ((-1, 0), (-1, 0)));
        // k = 7: both vanish
        assert_eq!(eps_terms(7), ((0, 0), (0, 0)));
        // k = 2: eps_rho = [1], eps_i = -[chi_i^2]
        assert_eq!(eps_terms(2), ((1, 0), (-1, 2)));
    }

    #[test]
    fn symk_restriction_identity() {
        // V_k|_H - floor(k/m) Ind_Z^H sgn^k = eps_H(k) for H = rho (m = 3)
        // and H = i (m = 2), across many weights
        for n in [5u32, 7] {
            let rho = Arc::new(SubgroupData::gamma_rho(n));
            let i_sub = Arc::new(SubgroupData::gamma_i(n));
            for k in 2..=30u32 {
                let lhs = restrict_symk(rho.clone(), k);
                let ind = induced_sign_from_center(rho.clone(), k).scale(k as i64 / 3);
                let ((c, e), _) = eps_terms(k);
                let expected = SubgroupCharacter::generator_power(rho.clone(), e).scale(c);
                assert!(lhs.sub(&ind).sub(&expected).is_zero(), "rho fails at k={k}");

                let lhs = restrict_symk(i_sub.clone(), k);
                let ind = induced_sign_from_center(i_sub.clone(), k).scale(k as i64 / 2);
                let (_, (c, e)) = eps_terms(k);
                let expected = SubgroupCharacter::generator_power(i_sub.clone(), e).scale(c);
                assert!(lhs.sub(&ind).sub(&expected).is_zero(), "i fails at k={k}");
            }
        }
    }

    #[test]
    fn sym2_restriction_to_rho() {
        // k = 4: eigenvalue exponents 2, 0, -2
        let rho = Arc::new(SubgroupData::gamma_rho(7));
        let v4 = restrict_symk(rho.clone(), 4);
        let expect = SubgroupCharacter::generator_power(rho.clone(), 2)
            .add(&SubgroupCharacter::generator_power(rho.clone(), 0))
            .add(&SubgroupCharacter::generator_power(rho, -2));
        assert!(v4.sub(&expect).is_zero());
    }

    #[test]
    fn h1p_virtual_dims_match_genus_and_dimension_formulas() {
        assert_eq!(h1p_class(7, 2).unwrap().virtual_dimension(), 6);
        assert_eq!(h1p_class(5, 2).unwrap().virtual_dimension(), 0);
        assert_eq!(h1p_class(7, 3).unwrap().virtual_dimension(), 32);
        for n in [3u32, 4, 5, 7, 8, 9, 11, 13] {
            assert_eq!(
                h1p_class(n, 2).unwrap().virtual_dimension(),
                2 * dim_sk_full(n, 2) as i64,
                "N={n} k=2"
            );
        }
        for n in [5u32, 7, 9, 11, 13] {
            for k in 3..=8 {
                assert_eq!(
                    h1p_class(n, k).unwrap().virtual_dimension(),
                    2 * dim_sk_full(n, k) as i64,
                    "N={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn fuchsian_class_examples() {
        // no fixed points: 2 Ind_Z 1
        let z = Arc::new(SubgroupData::center(7));
        let cls = fuchsian_class(7, 2, vec![], SubgroupCharacter::trivial(z));
        assert_eq!(cls.terms.len(), 1);
        assert_eq!(cls.virtual_dimension(), 2 * 168);
        // the weight-2 specialization (euler 1, elliptic orbits rho and i)
        // reproduces the h1p class up to the infinity and scalar terms
        let z = Arc::new(SubgroupData::center(7));
        let rho = Arc::new(SubgroupData::gamma_rho(7));
        let i = Arc::new(SubgroupData::gamma_i(7));
        let cls = fuchsian_class(
            7,
            1,
            vec![
                SubgroupCharacter::trivial(rho),
                SubgroupCharacter::trivial(i),
            ],
            SubgroupCharacter::trivial(z),
        );
        let dim = cls.virtual_dimension();
        let h1p = h1p_class(7, 2).unwrap().virtual_dimension();
        let inf_index = 336 / 14;
        assert_eq!(-dim - inf_index + 2, h1p);
    }

    #[test]
    fn inner_products_with_types() {
        // <trivial, h1p(7,2)> = 0: the invariants of H^1_P(X(7)) are two
        // copies of S_2(SL_2(Z)) = 0
        let one = |_: &Mat2Mod| Cyclotomic::one();
        assert_eq!(inner_product(&one, &h1p_class(7, 2).unwrap()).unwrap(), 0);
        assert_eq!(inner_product(&one, &h1p_class(11, 2).unwrap()).unwrap(), 0);
        // <ST_7 restricted, h1p(7,2)> = 0: no weight-2 special form at 7 and
        // no unramified interlopers
        let st7 = build_special(7, UnitChar::trivial(7));
        let tr = |g: &Mat2Mod| st7.trace(g);
        assert_eq!(inner_product(&tr, &h1p_class(7, 2).unwrap()).unwrap(), 0);
        // <trivial, h1p(3,12)> = 2 dim S_12(SL_2(Z)) = 2
        assert_eq!(inner_product(&one, &h1p_class(3, 12).unwrap()).unwrap(), 2);
        // depth-0 type against weight 2: even and nonnegative
        let sc = build_sc_depth0(3, 4).unwrap();
        let tr = |g: &Mat2Mod| sc.trace(g);
        let v = inner_product(&tr, &h1p_class(3, 2).unwrap()).unwrap();
        assert!(v >= 0 && v % 2 == 0);
    }

    #[test]
    fn level_too_small_rejected() {
        assert!(matches!(
            h1p_class(2, 2),
            Err(CohomologyError::LevelTooSmall(2))
        ));
    }
}
