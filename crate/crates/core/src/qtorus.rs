//! Quantum-torus isomorphism arithmetic: the product criterion for
//! k-isomorphism, Brauer equivalence, the reduction to the wedge criterion
//! on the group `H = A x A*`, and the Heisenberg representation of `H`
//! inside `PGL_n` over a prime field with its symplectic commutator form.
//!
//! Roots of unity are realized in the prime field `F_p` with
//! `p = 1 (mod exp A)`; the distinguished primitive root is the smallest
//! element of multiplicative order `exp(A)`. All verdicts are exact residue
//! arithmetic; no skew Laurent ring is ever materialized.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::abelian::{dual, pair, Character, FinGenAbGroup, GroupElement, QmodZ};
use crate::classify::{birationally_equivalent, RepSpec};
use crate::error::{Error, Result};

/// A quantum torus twist: degrees `(n_1, ..., n_r)` forming a divisibility
/// chain with `n_1 >= 2`, and exponents `(m_1, ..., m_r)` with
/// `gcd(m_i, n_i) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumTorusSpec {
    degrees: Vec<BigInt>,
    exponents: Vec<BigInt>,
}

impl QuantumTorusSpec {
    pub fn new(degrees: Vec<BigInt>, exponents: Vec<BigInt>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::InvalidInput("need at least one degree".into()));
        }
        if degrees[0] < BigInt::from(2) {
            return Err(Error::InvalidInput("degrees must satisfy n_1 >= 2".into()));
        }
        for w in degrees.windows(2) {
            if !w[1].mod_floor(&w[0]).is_zero() {
                return Err(Error::InvalidInput(
                    "degrees must form a divisibility chain".into(),
                ));
            }
        }
        if exponents.len() != degrees.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} degrees but {} exponents",
                degrees.len(),
                exponents.len()
            )));
        }
        for (m, n) in exponents.iter().zip(&degrees) {
            if !m.gcd(n).is_one() {
                return Err(Error::InvalidInput(format!(
                    "exponent {m} is not a unit modulo {n}"
                )));
            }
        }
        Ok(QuantumTorusSpec { degrees, exponents })
    }

    pub fn from_ints(degrees: &[i64], exponents: &[i64]) -> Result<Self> {
        QuantumTorusSpec::new(
            degrees.iter().map(|&n| BigInt::from(n)).collect(),
            exponents.iter().map(|&m| BigInt::from(m)).collect(),
        )
    }

    pub fn degrees(&self) -> &[BigInt] {
        &self.degrees
    }

    pub fn exponents(&self) -> &[BigInt] {
        &self.exponents
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    /// The group `H = A x A*` with interleaved generators
    /// `(a_1, chi_1, ..., a_r, chi_r)`.
    pub fn heisenberg_group(&self) -> FinGenAbGroup {
        interleaved_group(&self.degrees)
    }
}

fn interleaved_group(degrees: &[BigInt]) -> FinGenAbGroup {
    let mut factors = Vec::with_capacity(2 * degrees.len());
    for n in degrees {
        factors.push(n.clone());
        factors.push(n.clone());
    }
    FinGenAbGroup::new(factors).expect("interleaving preserves the divisibility chain")
}

/// The twisted and untwisted tori are k-isomorphic iff
/// `m_1 ... m_r = +-1 (mod n_1)`.
pub fn k_isomorphic(spec: &QuantumTorusSpec) -> bool {
    let n1 = &spec.degrees[0];
    let mut prod = BigInt::one();
    for m in &spec.exponents {
        prod = (prod * m).mod_floor(n1);
    }
    prod.is_one() || prod == n1 - 1u32
}

/// Brauer equivalent iff every `m_i = 1 (mod n_i)`.
pub fn brauer_equivalent(spec: &QuantumTorusSpec) -> bool {
    spec.exponents
        .iter()
        .zip(&spec.degrees)
        .all(|(m, n)| m.mod_floor(n).is_one())
}

/// Character 2r-tuples over `H = A x A*` for the untwisted torus `V` and the
/// twisted torus `W`: `V = (c(a_1), ..., c(a_r), -c(chi_1), ..., -c(chi_r))`
/// and `W` replaces `-c(chi_i)` by `-m_i c(chi_i)`.
pub fn rep_characters(spec: &QuantumTorusSpec) -> (Vec<Character>, Vec<Character>) {
    let h = spec.heisenberg_group();
    let hd = dual(&h);
    let r = spec.rank();
    let mut v = Vec::with_capacity(2 * r);
    let mut w = Vec::with_capacity(2 * r);
    for i in 0..r {
        v.push(hd.generator(2 * i));
        w.push(hd.generator(2 * i));
    }
    for (i, m) in spec.exponents.iter().enumerate() {
        let neg = hd.generator(2 * i + 1).neg();
        v.push(neg.clone());
        w.push(neg.scale(m));
    }
    (v, w)
}

/// The wedge criterion on `H`: the two character tuples are birationally
/// equivalent as representations of the diagonalizable group with character
/// lattice `H`. This recovers the product criterion.
pub fn wedge_criterion(spec: &QuantumTorusSpec) -> Result<bool> {
    let h = spec.heisenberg_group();
    let (v, w) = rep_characters(spec);
    birationally_equivalent(&RepSpec::new(h.clone(), v)?, &RepSpec::new(h, w)?)
}

/// Square matrix over a prime field, dense `u64` entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u64,
    n: usize,
    entries: Vec<u64>,
}

impl FpMatrix {
    fn zero(p: u64, n: usize) -> Self {
        FpMatrix { p, n, entries: vec![0; n * n] }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = FpMatrix::zero(p, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.n + j] = v % self.p;
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.n, other.n);
        assert_eq!(self.p, other.p);
        let n = self.n;
        let mut out = FpMatrix::zero(self.p, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = other.entries[k * n + j];
                    if b == 0 {
                        continue;
                    }
                    let cur = &mut out.entries[i * n + j];
                    *cur = ((*cur as u128 + a as u128 * b as u128) % self.p as u128) as u64;
                }
            }
        }
        out
    }

    pub fn scale(&self, s: u64) -> FpMatrix {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = ((*e as u128 * s as u128) % self.p as u128) as u64;
        }
        out
    }

    /// If the matrix is a nonzero scalar multiple of the identity, return
    /// the scalar.
    fn as_scalar(&self) -> Option<u64> {
        let s = self.entries[0];
        if s == 0 {
            return None;
        }
        for i in 0..self.n {
            for j in 0..self.n {
                let want = if i == j { s } else { 0 };
                if self.entries[i * self.n + j] != want {
                    return None;
                }
            }
        }
        Some(s)
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc: u64 = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
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

/// The Heisenberg representation of `H = A x A*` in `PGL_n(F_p)`: the
/// permutation matrices `P_a` and the diagonal matrices `D_chi` on the
/// group-ring basis, indexed by the canonical element enumerations of `A`
/// and its dual.
#[derive(Debug, Clone)]
pub struct HeisenbergRep {
    base: FinGenAbGroup,
    prime: u64,
    root: u64,
    elements: Vec<GroupElement>,
    perms: Vec<FpMatrix>,
    diags: Vec<FpMatrix>,
}

/// Smallest prime `p = 1 (mod exp A)`.
pub fn default_prime(base: &FinGenAbGroup) -> Result<u64> {
    let exp = base
        .exponent()
        .and_then(|e| e.to_u64())
        .ok_or_else(|| Error::InvalidInput("base group must be finite".into()))?;
    let mut p = 2;
    loop {
        if is_prime(p) && (p - 1) % exp == 0 {
            return Ok(p);
        }
        p += 1;
    }
}

/// Build the representation over `F_p`; `p` must be prime with
/// `p = 1 (mod exp A)`.
pub fn heisenberg(base: &FinGenAbGroup, p: u64) -> Result<HeisenbergRep> {
    let exp = base
        .exponent()
        .and_then(|e| e.to_u64())
        .ok_or_else(|| Error::InvalidInput("base group must be finite".into()))?;
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if (p - 1) % exp != 0 {
        return Err(Error::InvalidInput(format!(
            "{p} is not 1 modulo the group exponent {exp}"
        )));
    }
    // distinguished root: smallest element of multiplicative order exp(A)
    let root = (1..p)
        .find(|&g| {
            pow_mod(g, exp, p) == 1
                && (1..exp).filter(|&k| exp % k == 0).all(|k| pow_mod(g, k, p) != 1)
        })
        .ok_or_else(|| Error::Internal("no primitive root of the required order".into()))?;

    let elements = base.elements()?;
    let n = elements.len();
    let index: std::collections::HashMap<Vec<BigInt>, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.coords().to_vec(), i))
        .collect();
    let bd = dual(base);
    let duals = bd.elements()?;

    let mut perms = Vec::with_capacity(n);
    for a in &elements {
        let mut m = FpMatrix::zero(p, n);
        for (j, b) in elements.iter().enumerate() {
            let i = index[&a.add(b)?.coords().to_vec()];
            m.set(i, j, 1);
        }
        perms.push(m);
    }
    let mut diags = Vec::with_capacity(n);
    for chi in &duals {
        let mut m = FpMatrix::zero(p, n);
        for (j, b) in elements.iter().enumerate() {
            let v = pair(chi, b)?;
            // value in F_p: root^(num * exp / den)
            let num = v.num().mod_floor(v.den()).to_u64().ok_or_else(|| {
                Error::Internal("pairing numerator out of range".into())
            })?;
            let den = v.den().to_u64().ok_or_else(|| {
                Error::Internal("pairing denominator out of range".into())
            })?;
            m.set(j, j, pow_mod(root, num * (exp / den), p));
        }
        diags.push(m);
    }
    Ok(HeisenbergRep { base: base.clone(), prime: p, root, elements, perms, diags })
}

impl HeisenbergRep {
    pub fn base(&self) -> &FinGenAbGroup {
        &self.base
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn root(&self) -> u64 {
        self.root
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// `P_a` for the i-th element of the canonical enumeration of `A`.
    pub fn perm(&self, i: usize) -> &FpMatrix {
        &self.perms[i]
    }

    /// `D_chi` for the i-th element of the canonical enumeration of `A*`.
    pub fn diag(&self, i: usize) -> &FpMatrix {
        &self.diags[i]
    }

    fn index_of(&self, coords: &[BigInt]) -> usize {
        self.elements
            .iter()
            .position(|e| e.coords() == coords)
            .expect("element of the base group")
    }

    /// A lift of the image of `(a, chi) in H`, as `P_a D_chi`.
    fn lift(&self, a: &[BigInt], chi: &[BigInt]) -> FpMatrix {
        self.perms[self.index_of(a)].mul(&self.diags[self.index_of(chi)])
    }

    /// Scalar commutator `U V U^-1 V^-1` of the lifts of two elements of
    /// `H`, as a power of the distinguished root; independent of the lifts
    /// because the scalar ambiguity is central.
    fn scalar_commutator(&self, x: (&[BigInt], &[BigInt]), y: (&[BigInt], &[BigInt])) -> Result<u64> {
        let neg =
            |c: &[BigInt]| -> Vec<BigInt> { self.elements[self.index_of(c)].neg().coords().to_vec() };
        let u = self.lift(x.0, x.1);
        let v = self.lift(y.0, y.1);
        // (P_a D_chi)^-1 = D_{-chi} P_{-a}
        let u_inv = self.diags[self.index_of(&neg(x.1))].mul(&self.perms[self.index_of(&neg(x.0))]);
        let v_inv = self.diags[self.index_of(&neg(y.1))].mul(&self.perms[self.index_of(&neg(y.0))]);
        let c = u.mul(&v).mul(&u_inv).mul(&v_inv);
        c.as_scalar()
            .ok_or_else(|| Error::Internal("commutator of lifts is not scalar".into()))
    }
}

/// The n^2 products `P_a D_chi` span `Mat_n` over `F_p`: Gaussian rank of
/// the flattened matrices equals n^2.
pub fn span_check(h: &HeisenbergRep) -> bool {
    let n = h.order();
    let p = h.prime;
    let dim = n * n;
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(dim);
    for pa in &h.perms {
        for dc in &h.diags {
            let m = pa.mul(dc);
            rows.push((0..dim).map(|k| m.entries[k]).collect());
        }
    }
    // in-place Gaussian elimination modulo p
    let mut rank = 0;
    for col in 0..dim {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = pow_mod(rows[rank][col], p - 2, p);
        for k in col..dim {
            rows[rank][k] = ((rows[rank][k] as u128 * inv as u128) % p as u128) as u64;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                for k in col..dim {
                    let sub = (f as u128 * rows[rank][k] as u128) % p as u128;
                    rows[r][k] = ((rows[r][k] as u128 + p as u128 * p as u128 - sub)
                        % p as u128) as u64;
                }
            }
        }
        rank += 1;
        if rank == dim {
            break;
        }
    }
    rank == dim
}

/// The commutator form on `H = A x A*` in Q/Z, from the discrete logarithm
/// of the scalar commutators of lifted generators. With our conventions it
/// equals the negative of the standard symplectic Gram matrix; the sign is
/// a global convention and does not affect alternation, nondegeneracy, or
/// any determinant conclusion.
pub fn commutator_form(h: &HeisenbergRep) -> Result<crate::symplectic::BilinearForm> {
    let base = &h.base;
    let r = base.rank();
    let exp = base
        .exponent()
        .and_then(|e| e.to_u64())
        .ok_or_else(|| Error::Internal("finite base expected".into()))?;
    let total = interleaved_group(base.factors());
    let zero: Vec<BigInt> = vec![BigInt::zero(); r];
    // generator 2i of the total group is (e_i, 0); generator 2i+1 is (0, e_i)
    let gen_coords = |k: usize| -> (Vec<BigInt>, Vec<BigInt>) {
        let mut a = zero.clone();
        let mut chi = zero.clone();
        if k % 2 == 0 {
            a[k / 2] = BigInt::one();
        } else {
            chi[k / 2] = BigInt::one();
        }
        (a, chi)
    };
    let dlog = |s: u64| -> Result<u64> {
        (0..exp)
            .find(|&k| pow_mod(h.root, k, h.prime) == s)
            .ok_or_else(|| Error::Internal("commutator scalar outside the root subgroup".into()))
    };
    let mut gram = vec![vec![QmodZ::zero(); 2 * r]; 2 * r];
    for i in 0..2 * r {
        let (ai, ci) = gen_coords(i);
        for j in 0..2 * r {
            let (aj, cj) = gen_coords(j);
            let s = h.scalar_commutator((&ai, &ci), (&aj, &cj))?;
            let k = dlog(s)?;
            gram[i][j] = QmodZ::new(BigInt::from(k), BigInt::from(exp))?;
        }
    }
    crate::symplectic::BilinearForm::new(total, gram)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::is_generating;
    use crate::symplectic::{eval_form, is_symplectic, SymplecticSpace};

    fn spec(n: &[i64], m: &[i64]) -> QuantumTorusSpec {
        QuantumTorusSpec::from_ints(n, m).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(QuantumTorusSpec::from_ints(&[5], &[2]).is_ok());
        assert!(QuantumTorusSpec::from_ints(&[], &[]).is_err());
        assert!(QuantumTorusSpec::from_ints(&[1], &[1]).is_err());
        assert!(QuantumTorusSpec::from_ints(&[4, 6], &[1, 1]).is_err()); // chain
        assert!(QuantumTorusSpec::from_ints(&[4], &[2]).is_err()); // not a unit
        assert!(QuantumTorusSpec::from_ints(&[4], &[1, 1]).is_err()); // length
    }

    #[test]
    fn k_isomorphic_examples() {
        assert!(!k_isomorphic(&spec(&[5], &[2])));
        assert!(k_isomorphic(&spec(&[5], &[1])));
        assert!(k_isomorphic(&spec(&[3, 3], &[2, 2])));
        assert!(k_isomorphic(&spec(&[5], &[4])));
    }

    #[test]
    fn lorenz_specialization() {
        let iso: Vec<i64> = (1..5).filter(|&m| k_isomorphic(&spec(&[5], &[m]))).collect();
        assert_eq!(iso, vec![1, 4]);
        let iso7: Vec<i64> = (1..7).filter(|&m| k_isomorphic(&spec(&[7], &[m]))).collect();
        assert_eq!(iso7, vec![1, 6]);
    }

    #[test]
    fn brauer_examples() {
        assert!(brauer_equivalent(&spec(&[5], &[1])));
        let s = spec(&[2, 4], &[1, 3]);
        assert!(!brauer_equivalent(&s));
        assert!(k_isomorphic(&s));
        let s = spec(&[5], &[4]);
        assert!(!brauer_equivalent(&s));
        assert!(k_isomorphic(&s));
    }

    #[test]
    fn inverse_twist_invariance() {
        for n in [5i64, 7, 8, 12] {
            for m in 1..n {
                if num_integer::gcd(m, n) != 1 {
                    continue;
                }
                let inv = (1..n).find(|k| (k * m) % n == 1).unwrap();
                assert_eq!(
                    k_isomorphic(&spec(&[n], &[m])),
                    k_isomorphic(&spec(&[n], &[inv])),
                );
            }
        }
    }

    #[test]
    fn rep_characters_examples() {
        let s = spec(&[5], &[2]);
        let (v, w) = rep_characters(&s);
        let hd = dual(&s.heisenberg_group());
        assert_eq!(v[0], hd.generator(0));
        assert_eq!(v[1], hd.generator(1).neg());
        assert_eq!(w[0], hd.generator(0));
        assert_eq!(w[1], hd.generator(1).scale(&BigInt::from(-2)));

        let s1 = spec(&[3, 3], &[1, 1]);
        let (v, w) = rep_characters(&s1);
        assert_eq!(v, w);

        // both tuples are faithful
        for t in [&v, &w] {
            assert!(is_generating(t, &hd_of(&s1)).unwrap());
        }
    }

    fn hd_of(s: &QuantumTorusSpec) -> FinGenAbGroup {
        dual(&s.heisenberg_group())
    }

    #[test]
    fn wedge_criterion_agrees_with_product_criterion() {
        // exhaustive over unit exponents at small sizes
        for degrees in [vec![2i64], vec![3], vec![5], vec![2, 2], vec![2, 4], vec![3, 3]] {
            let unit_lists: Vec<Vec<i64>> = degrees
                .iter()
                .map(|&n| (1..n).filter(|&m| num_integer::gcd(m, n) == 1).collect())
                .collect();
            let mut idx = vec![0usize; degrees.len()];
            loop {
                let ms: Vec<i64> = idx.iter().zip(&unit_lists).map(|(&i, u)| u[i]).collect();
                let s = spec(&degrees, &ms);
                assert_eq!(
                    wedge_criterion(&s).unwrap(),
                    k_isomorphic(&s),
                    "degrees {degrees:?} exponents {ms:?}"
                );
                if brauer_equivalent(&s) {
                    assert!(k_isomorphic(&s));
                }
                let mut p = idx.len();
                let mut done = false;
                loop {
                    if p == 0 {
                        done = true;
                        break;
                    }
                    p -= 1;
                    idx[p] += 1;
                    if idx[p] < unit_lists[p].len() {
                        break;
                    }
                    idx[p] = 0;
                }
                if done {
                    break;
                }
            }
        }
    }

    #[test]
    fn default_primes() {
        assert_eq!(default_prime(&FinGenAbGroup::from_ints(&[2])).unwrap(), 3);
        assert_eq!(default_prime(&FinGenAbGroup::from_ints(&[3])).unwrap(), 7);
        assert_eq!(default_prime(&FinGenAbGroup::from_ints(&[2, 2])).unwrap(), 3);
        assert_eq!(default_prime(&FinGenAbGroup::from_ints(&[4])).unwrap(), 5);
        assert_eq!(default_prime(&FinGenAbGroup::from_ints(&[6])).unwrap(), 7);
    }

    #[test]
    fn heisenberg_small_example() {
        let a = FinGenAbGroup::from_ints(&[2]);
        let h = heisenberg(&a, 3).unwrap();
        assert_eq!(h.root(), 2); // -1 is the only element of order 2
        // P for the nonzero element is the swap
        assert_eq!(
            (h.perm(1).get(0, 1), h.perm(1).get(1, 0), h.perm(1).get(0, 0)),
            (1, 1, 0)
        );
        // D for the nonzero character is diag(1, -1)
        assert_eq!((h.diag(1).get(0, 0), h.diag(1).get(1, 1)), (1, 2));

        assert!(heisenberg(&a, 4).is_err()); // not prime
        assert!(heisenberg(&a, 5).is_ok()); // 5 = 1 mod 2, also admissible
    }

    #[test]
    fn heisenberg_admissibility() {
        let a = FinGenAbGroup::from_ints(&[3]);
        assert!(heisenberg(&a, 5).is_err()); // 4 % 3 != 0
        assert!(heisenberg(&a, 7).is_ok());
        assert!(heisenberg(&a, 13).is_ok());
    }

    #[test]
    fn commutation_identity() {
        // D_chi P_a = chi(a) P_a D_chi for all pairs
        for factors in [vec![2i64], vec![3], vec![2, 2]] {
            let a = FinGenAbGroup::from_ints(&factors);
            let p = default_prime(&a).unwrap();
            let h = heisenberg(&a, p).unwrap();
            let exp = a.exponent().unwrap().to_u64().unwrap();
            let elems = a.elements().unwrap();
            let duals = dual(&a).elements().unwrap();
            for (ci, chi) in duals.iter().enumerate() {
                for (ai, av) in elems.iter().enumerate() {
                    let lhs = h.diag(ci).mul(h.perm(ai));
                    let v = pair(chi, av).unwrap();
                    let num = v.num().to_u64().unwrap();
                    let den = v.den().to_u64().unwrap();
                    let scalar = pow_mod(h.root(), num * (exp / den), p);
                    let rhs = h.perm(ai).mul(h.diag(ci)).scale(scalar);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn span_check_examples() {
        for factors in [vec![2i64], vec![3], vec![2, 2]] {
            let a = FinGenAbGroup::from_ints(&factors);
            let p = default_prime(&a).unwrap();
            let h = heisenberg(&a, p).unwrap();
            assert!(span_check(&h), "base {factors:?}");
        }
        // also at a non-default admissible prime
        let a = FinGenAbGroup::from_ints(&[2, 2]);
        assert!(span_check(&heisenberg(&a, 5).unwrap()));
    }

    #[test]
    fn commutator_form_is_negative_standard_and_symplectic() {
        for factors in [vec![2i64], vec![3], vec![2, 2]] {
            let a = FinGenAbGroup::from_ints(&factors);
            let p = default_prime(&a).unwrap();
            let h = heisenberg(&a, p).unwrap();
            let form = commutator_form(&h).unwrap();
            assert!(is_symplectic(&form).unwrap(), "base {factors:?}");

            let s = SymplecticSpace::standard(&a).unwrap();
            for i in 0..2 * a.rank() {
                for j in 0..2 * a.rank() {
                    assert_eq!(form.gram()[i][j], s.form().gram()[i][j].neg());
                }
            }
            // pointwise alternating
            for x in form.group().elements().unwrap() {
                assert!(eval_form(&form, &x, &x).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn commutator_example_value() {
        let a = FinGenAbGroup::from_ints(&[2]);
        let h = heisenberg(&a, 3).unwrap();
        let form = commutator_form(&h).unwrap();
        // omega((a,0),(0,chi)) = 1/2 (equal to its own negative mod 1)
        assert_eq!(
            form.gram()[0][1],
            QmodZ::new(BigInt::one(), BigInt::from(2)).unwrap()
        );
    }

    #[test]
    fn scalar_commutator_is_lift_independent() {
        // scaling a lift by a central unit leaves the commutator unchanged:
        // (sU) V (sU)^-1 V^-1 = U V U^-1 V^-1 since (sU)^-1 = s^-1 U^-1
        let a = FinGenAbGroup::from_ints(&[3]);
        let p = 7u64;
        let h = heisenberg(&a, p).unwrap();
        let elems = a.elements().unwrap();
        let minus = |i: usize| -> usize {
            let c = elems[i].neg();
            elems.iter().position(|e| e == &c).unwrap()
        };
        let u = h.perm(1).mul(h.diag(1));
        let u_inv = h.diag(minus(1)).mul(h.perm(minus(1)));
        let v = h.perm(2).mul(h.diag(2));
        let v_inv = h.diag(minus(2)).mul(h.perm(minus(2)));
        assert_eq!(u.mul(&u_inv), FpMatrix::identity(p, elems.len()));
        let reference = u.mul(&v).mul(&u_inv).mul(&v_inv);
        for s in [2u64, 3, 5] {
            let s_inv = pow_mod(s, p - 2, p);
            let scaled = u.scale(s).mul(&v).mul(&u_inv.scale(s_inv)).mul(&v_inv);
            assert_eq!(scaled, reference);
        }
    }
}
