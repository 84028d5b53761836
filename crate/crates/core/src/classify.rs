//! Birational classification of faithful diagonal representations of
//! diagonalizable groups through the top-degree wedge invariant: the
//! equivalence decision, explicit monomial witnesses, class counting,
//! the Katsylo-failure predicate, and counterexample searches for
//! semidirect-product and product actions.
//!
//! A diagonalizable group is represented purely by its character lattice;
//! a representation is the tuple of characters acting on the coordinate
//! lines. Equivalence of faithful d-dimensional representations is decided
//! by comparing the sign classes of the wedges of the character tuples.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::abelian::{dual, is_generating, Character, FinGenAbGroup, GroupAutomorphism};
use crate::error::{Error, Result};
use crate::exterior::{apply_power_map, class_of, glz_witness, wedge, WedgeClass};
use crate::matrix::IntMatrix;

/// A diagonal representation: the group via its character lattice, plus the
/// characters of the coordinate lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepSpec {
    group: FinGenAbGroup,
    chars: Vec<Character>,
}

impl RepSpec {
    pub fn new(group: FinGenAbGroup, chars: Vec<Character>) -> Result<Self> {
        let d = dual(&group);
        for c in &chars {
            if *c.group() != d {
                return Err(Error::GroupMismatch);
            }
        }
        Ok(RepSpec { group, chars })
    }

    pub fn group(&self) -> &FinGenAbGroup {
        &self.group
    }

    pub fn chars(&self) -> &[Character] {
        &self.chars
    }

    pub fn dim(&self) -> usize {
        self.chars.len()
    }

    /// Faithful iff the characters generate the dual group.
    pub fn is_faithful(&self) -> Result<bool> {
        is_generating(&self.chars, &dual(&self.group))
    }
}

/// One fixed point of the projectivized representation: its index, the
/// characters of the local chart, and the resulting wedge class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointReport {
    pub index: usize,
    pub local_chars: Vec<Character>,
    pub invariant: WedgeClass,
}

fn require_faithful_top(rep: &RepSpec) -> Result<()> {
    let r = rep.group.rank();
    if rep.dim() != r {
        return Err(Error::DimensionMismatch(format!(
            "need exactly rank = {r} characters, got {}",
            rep.dim()
        )));
    }
    if !rep.is_faithful()? {
        return Err(Error::NotGenerating);
    }
    Ok(())
}

/// The birational invariant of a faithful rank-dimensional representation:
/// the sign class of the wedge of its characters.
pub fn invariant_i(rep: &RepSpec) -> Result<WedgeClass> {
    require_faithful_top(rep)?;
    Ok(class_of(&wedge(&rep.chars)?))
}

/// The r+1 fixed points of the projectivized representation with their
/// chart characters; every report carries the same wedge class.
pub fn projective_fixed_points(rep: &RepSpec) -> Result<Vec<FixedPointReport>> {
    require_faithful_top(rep)?;
    let r = rep.dim();
    let mut reports = Vec::with_capacity(r + 1);
    for j in 0..=r {
        let local_chars: Vec<Character> = if j == 0 {
            rep.chars.to_vec()
        } else {
            // at x_j the chart characters are chi_j^{-1} in slot j and
            // chi_i * chi_j^{-1} elsewhere
            let inv = rep.chars[j - 1].neg();
            (0..r)
                .map(|i| {
                    if i == j - 1 {
                        inv.clone()
                    } else {
                        rep.chars[i].add(&inv).unwrap()
                    }
                })
                .collect()
        };
        let invariant = class_of(&wedge(&local_chars)?);
        reports.push(FixedPointReport { index: j, local_chars, invariant });
    }
    Ok(reports)
}

/// Push a wedge class through the dual of a group automorphism; in top
/// degree this is multiplication by det(phi) modulo n_1, so any automorphism
/// of determinant +-1 fixes every class.
pub fn conjugation_twist(w: &WedgeClass, phi: &GroupAutomorphism) -> Result<WedgeClass> {
    if phi.group() != w.representative().power().base() {
        return Err(Error::GroupMismatch);
    }
    Ok(class_of(&apply_power_map(w.representative(), phi.matrix())?))
}

/// The equivalence decision: two faithful representations of the same group
/// and dimension are birationally equivalent iff their wedge classes agree.
/// For d > rank the wedge group is zero and any two are equivalent.
pub fn birationally_equivalent(v: &RepSpec, w: &RepSpec) -> Result<bool> {
    if v.group != w.group {
        return Err(Error::GroupMismatch);
    }
    if v.dim() != w.dim() {
        return Err(Error::DimensionMismatch(format!(
            "dimensions differ: {} vs {}",
            v.dim(),
            w.dim()
        )));
    }
    if !v.is_faithful()? || !w.is_faithful()? {
        return Err(Error::NotGenerating);
    }
    Ok(class_of(&wedge(&v.chars)?) == class_of(&wedge(&w.chars)?))
}

/// Exponent matrix of an explicit monomial birational map between two
/// equivalent representations: unimodular `N` with
/// `eta_i = sum_j N[j][i] * chi_j` in the character lattice.
pub fn monomial_witness(v: &RepSpec, w: &RepSpec) -> Result<IntMatrix> {
    if !birationally_equivalent(v, w)? {
        return Err(Error::NotEquivalent);
    }
    // glz_witness uses the row convention eta_i = sum_j N[i][j] chi_j;
    // the monomial exponent matrix is its transpose
    Ok(glz_witness(&v.chars, &w.chars)?.transpose())
}

/// The classification count together with canonical representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCount {
    pub count: BigInt,
    pub representatives: Vec<Vec<Character>>,
}

/// Number of birational equivalence classes of faithful d-dimensional
/// representations of `g`: one class for d > rank or n_1 in {0, 2}, and
/// phi(n_1)/2 classes for d = rank with n_1 >= 3, with representatives
/// `(u e_1*, e_2*, ..., e_r*)` for units u up to sign.
pub fn count_classes(g: &FinGenAbGroup, d: usize) -> Result<ClassCount> {
    let r = g.rank();
    if d < r {
        return Err(Error::InvalidInput(format!(
            "no faithful representation in dimension {d} < rank {r}"
        )));
    }
    let gd = dual(g);
    let basis_tuple = |u: &BigInt| -> Vec<Character> {
        let mut t: Vec<Character> = (0..r).map(|i| gd.generator(i)).collect();
        if r > 0 {
            t[0] = t[0].scale(u);
        }
        t.extend(std::iter::repeat(gd.zero()).take(d - r));
        t
    };
    if d > r || r == 0 {
        return Ok(ClassCount {
            count: BigInt::one(),
            representatives: vec![basis_tuple(&BigInt::one())],
        });
    }
    let n1 = g.factors()[0].clone();
    if n1.is_zero() || n1 == BigInt::from(2) {
        return Ok(ClassCount {
            count: BigInt::one(),
            representatives: vec![basis_tuple(&BigInt::one())],
        });
    }
    // units modulo n_1 up to sign: 1 <= u < n_1/2, gcd(u, n_1) = 1
    let n = n1.to_u64().ok_or_else(|| {
        Error::InvalidInput("first invariant factor too large to enumerate units".into())
    })?;
    let units: Vec<BigInt> = (1..n)
        .filter(|&u| 2 * u < n && u.gcd(&n) == 1)
        .map(BigInt::from)
        .collect();
    Ok(ClassCount {
        count: BigInt::from(units.len()),
        representatives: units.iter().map(basis_tuple).collect(),
    })
}

/// True iff the no-name / stable rationality conjecture fails for the
/// group: n_1 = 5 or n_1 >= 7.
pub fn katsylo_fails(g: &FinGenAbGroup) -> bool {
    match g.factors().first() {
        None => false,
        Some(n1) => *n1 == BigInt::from(5) || *n1 >= BigInt::from(7),
    }
}

/// Smallest unit m modulo n with `m^r` not congruent to +-1, if any.
pub fn semidirect_counterexample(n: u64, r: u32) -> Result<Option<BigInt>> {
    if n < 2 || r < 1 {
        return Err(Error::InvalidInput("need n >= 2 and r >= 1".into()));
    }
    let nb = BigInt::from(n);
    for m in 2..n {
        if m.gcd(&n) != 1 {
            continue;
        }
        let p = BigInt::from(m).modpow(&BigInt::from(r), &nb);
        if !p.is_one() && p != &nb - 1u32 {
            return Ok(Some(BigInt::from(m)));
        }
    }
    Ok(None)
}

/// Fast sufficient criterion for a counterexample to exist: the exponent of
/// the unit group modulo n does not divide 2r.
pub fn semidirect_counterexample_sufficient(n: u64, r: u32) -> Result<bool> {
    if n < 2 || r < 1 {
        return Err(Error::InvalidInput("need n >= 2 and r >= 1".into()));
    }
    // exponent of U_n as the lcm of the orders of its elements
    let mut exp: u64 = 1;
    for m in 1..n {
        if m.gcd(&n) != 1 {
            continue;
        }
        let mut order = 1u64;
        let mut cur = m % n;
        while cur != 1 {
            cur = (cur as u128 * m as u128 % n as u128) as u64;
            order += 1;
        }
        exp = exp.lcm(&order);
    }
    Ok(!(2 * r as u64).is_multiple_of(exp))
}

/// `|{+-m^r mod n : m a unit}| / 2`: a lower bound for the number of
/// classes in the semidirect setting.
pub fn class_lower_bound_semidirect(n: u64, r: u32) -> Result<BigInt> {
    if n < 2 || r < 1 {
        return Err(Error::InvalidInput("need n >= 2 and r >= 1".into()));
    }
    let nb = BigInt::from(n);
    let mut set = std::collections::BTreeSet::new();
    for m in 1..n {
        if m.gcd(&n) != 1 {
            continue;
        }
        let p = BigInt::from(m).modpow(&BigInt::from(r), &nb);
        set.insert((&nb - &p).mod_floor(&nb));
        set.insert(p);
    }
    Ok(BigInt::from(set.len() / 2))
}

/// Witness exponents `(m_1, ..., m_s)`, units modulo n_1, with
/// `m_1^{r_1} ... m_s^{r_s}` not congruent to +-1 modulo n_1, if any.
/// The extra torus rank contributes nothing to the criterion and is only
/// validated.
pub fn product_counterexample(
    params: &[(u64, u32)],
    _torus_rank: usize,
) -> Result<Option<Vec<BigInt>>> {
    if params.is_empty() {
        return Err(Error::InvalidInput("need at least one factor".into()));
    }
    let n1 = params[0].0;
    if n1 < 2 {
        return Err(Error::InvalidInput("need n_1 >= 2".into()));
    }
    for w in params.windows(2) {
        if !w[1].0.is_multiple_of(w[0].0) {
            return Err(Error::InvalidInput(
                "moduli must form a divisibility chain".into(),
            ));
        }
    }
    let units: Vec<u64> = (1..n1).filter(|m| m.gcd(&n1) == 1).collect();
    let nb = BigInt::from(n1);
    let s = params.len();
    let mut idx = vec![0usize; s];
    loop {
        let mut prod = BigInt::one();
        for (k, &(_, rk)) in params.iter().enumerate() {
            prod = prod * BigInt::from(units[idx[k]]).modpow(&BigInt::from(rk), &nb) % &nb;
        }
        if !prod.is_one() && prod != &nb - 1u32 {
            return Ok(Some(idx.iter().map(|&i| BigInt::from(units[i])).collect()));
        }
        let mut p = s;
        loop {
            if p == 0 {
                return Ok(None);
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] < units.len() {
                break;
            }
            idx[p] = 0;
        }
    }
}

/// Two classes, computed as `count_classes((5,5,5), 3)`; the representatives
/// are the sign classes of 1 and 2 modulo 5.
pub fn e8_class_count() -> BigInt {
    count_classes(&FinGenAbGroup::from_ints(&[5, 5, 5]), 3)
        .expect("fixed well-formed input")
        .count
}
