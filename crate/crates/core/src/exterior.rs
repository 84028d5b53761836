//! Exterior powers of finitely generated abelian groups, wedge products
//! of element tuples, sign-quotient classes, and the constructive
//! equivalences by elementary operations and GL_d(Z) witnesses.
//!
//! For a group with invariant factors `(n_1, ..., n_r)` the d-th exterior
//! power has one cyclic component per d-subset `i_1 < ... < i_d` of the
//! coordinate positions, of modulus `n_{i_1}` (0 meaning infinite cyclic).
//! The wedge of a d-tuple is computed componentwise by d x d minors of the
//! coordinate matrix; for d = r this is the classical identification of
//! `a_1 ^ ... ^ a_d` with `det(a_ij) mod n_1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::abelian::{is_generating, FinGenAbGroup, GroupElement};
use crate::error::{Error, Result};
use crate::matrix::{det, is_unimodular, snf, solve_linear, IntMatrix};

/// The structure of the d-th exterior power of a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgePower {
    base: FinGenAbGroup,
    degree: usize,
    components: Vec<WedgeComponent>,
}

/// One cyclic component of an exterior power: a strictly increasing index
/// subset and its modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeComponent {
    pub subset: Vec<usize>,
    pub modulus: BigInt,
}

impl WedgePower {
    pub fn base(&self) -> &FinGenAbGroup {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &[WedgeComponent] {
        &self.components
    }

    /// True when the power is the zero group (d > rank).
    pub fn is_zero_group(&self) -> bool {
        self.components.is_empty()
    }

    pub fn zero(&self) -> WedgeElement {
        WedgeElement {
            coords: vec![BigInt::zero(); self.components.len()],
            power: self.clone(),
        }
    }
}

/// An element of an exterior power: one residue per component, reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeElement {
    power: WedgePower,
    coords: Vec<BigInt>,
}

impl WedgeElement {
    pub fn power(&self) -> &WedgePower {
        &self.power
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn neg(&self) -> WedgeElement {
        let coords = self
            .coords
            .iter()
            .zip(&self.power.components)
            .map(|(c, comp)| reduce_mod(&-c, &comp.modulus))
            .collect();
        WedgeElement {
            power: self.power.clone(),
            coords,
        }
    }

    pub fn add(&self, other: &WedgeElement) -> Result<WedgeElement> {
        if self.power != other.power {
            return Err(Error::GroupMismatch);
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .zip(&self.power.components)
            .map(|((a, b), comp)| reduce_mod(&(a + b), &comp.modulus))
            .collect();
        Ok(WedgeElement {
            power: self.power.clone(),
            coords,
        })
    }

    pub fn scale(&self, k: &BigInt) -> WedgeElement {
        let coords = self
            .coords
            .iter()
            .zip(&self.power.components)
            .map(|(c, comp)| reduce_mod(&(c * k), &comp.modulus))
            .collect();
        WedgeElement {
            power: self.power.clone(),
            coords,
        }
    }
}

fn reduce_mod(v: &BigInt, modulus: &BigInt) -> BigInt {
    if modulus.is_zero() {
        v.clone()
    } else {
        v.mod_floor(modulus)
    }
}

/// A wedge element normalized under the global sign flip: of `w` and `-w`
/// the one with the lexicographically smaller coordinate sequence is kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeClass {
    rep: WedgeElement,
}

impl WedgeClass {
    pub fn representative(&self) -> &WedgeElement {
        &self.rep
    }
}

/// Replace `a_i` by `a_i + m * a_j` (i != j) in a tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryOp {
    pub target: usize,
    pub source: usize,
    pub mult: BigInt,
}

impl ElementaryOp {
    pub fn new(target: usize, source: usize, mult: BigInt) -> Result<Self> {
        if target == source {
            return Err(Error::InvalidInput(
                "elementary operation needs distinct indices".into(),
            ));
        }
        Ok(ElementaryOp { target, source, mult })
    }

    /// The inverse operation (same indices, negated multiplier).
    pub fn inverse(&self) -> ElementaryOp {
        ElementaryOp {
            target: self.target,
            source: self.source,
            mult: -&self.mult,
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// The d-th exterior power of `a`. Zero group when d > rank; for d = rank
/// a single component of modulus `n_1`.
pub fn wedge_power(a: &FinGenAbGroup, degree: usize) -> WedgePower {
    let r = a.rank();
    let components = if degree > r {
        vec![]
    } else {
        subsets(r, degree)
            .into_iter()
            .map(|subset| {
                let modulus = subset
                    .first()
                    .map(|&i| a.factors()[i].clone())
                    .unwrap_or_else(BigInt::zero);
                WedgeComponent { subset, modulus }
            })
            .collect()
    };
    WedgePower {
        base: a.clone(),
        degree,
        components,
    }
}

/// Wedge of a d-tuple of elements of one group, componentwise by minors.
pub fn wedge(tuple: &[GroupElement]) -> Result<WedgeElement> {
    let group = tuple
        .first()
        .map(|e| e.group().clone())
        .ok_or_else(|| Error::InvalidInput("cannot wedge an empty tuple".into()))?;
    for e in tuple {
        if *e.group() != group {
            return Err(Error::GroupMismatch);
        }
    }
    let d = tuple.len();
    let power = wedge_power(&group, d);
    let mut coords = Vec::with_capacity(power.components.len());
    for comp in &power.components {
        let entries: Vec<BigInt> = tuple
            .iter()
            .flat_map(|e| comp.subset.iter().map(|&j| e.coords()[j].clone()))
            .collect();
        let minor = det(&IntMatrix::new(d, d, entries)?)?;
        coords.push(reduce_mod(&minor, &comp.modulus));
    }
    Ok(WedgeElement { power, coords })
}

/// Canonical representative of `{w, -w}`.
pub fn class_of(w: &WedgeElement) -> WedgeClass {
    let n = w.neg();
    let rep = if n.coords < w.coords { n } else { w.clone() };
    WedgeClass { rep }
}

/// True iff `w` generates its exterior power as a group. In the
/// single-component case with modulus n this is `gcd(coord, n) = 1`
/// (with `gcd(x, 0) = |x|`).
pub fn is_generator(w: &WedgeElement) -> bool {
    if w.power.components.is_empty() {
        return true; // the zero group is generated by anything
    }
    let k = w.power.components.len();
    let mut rows: Vec<Vec<BigInt>> = vec![w.coords.clone()];
    for (i, comp) in w.power.components.iter().enumerate() {
        if !comp.modulus.is_zero() {
            let mut row = vec![BigInt::zero(); k];
            row[i] = comp.modulus.clone();
            rows.push(row);
        }
    }
    let m = IntMatrix::from_bigint_rows(&rows).expect("rectangular");
    let diag = snf(&m).diagonal();
    diag.len() >= k && diag.iter().take(k).all(|d| d.is_one())
}

/// Apply one elementary operation, returning the new tuple.
pub fn apply_elem_op(tuple: &[GroupElement], op: &ElementaryOp) -> Result<Vec<GroupElement>> {
    if op.target == op.source {
        return Err(Error::InvalidInput(
            "elementary operation needs distinct indices".into(),
        ));
    }
    if op.target >= tuple.len() || op.source >= tuple.len() {
        return Err(Error::InvalidInput("operation index out of range".into()));
    }
    let mut out = tuple.to_vec();
    out[op.target] = out[op.target].add(&out[op.source].scale(&op.mult))?;
    Ok(out)
}

/// Replay a sequence of elementary operations on a tuple.
pub fn replay(ops: &[ElementaryOp], tuple: &[GroupElement]) -> Result<Vec<GroupElement>> {
    let mut cur = tuple.to_vec();
    for op in ops {
        cur = apply_elem_op(&cur, op)?;
    }
    Ok(cur)
}

/// Produce a sequence of elementary operations carrying `a` to `b`.
///
/// Preconditions: `a` and `b` are generating d-tuples of the same group
/// with exactly equal wedges. The synthesis follows the classical
/// induction: Euclidean reduction of the last coordinate column to
/// `(0, ..., 0, 1)`, clearing the last row, then recursion on the
/// quotient by the last factor.
pub fn synthesize_elem_ops(
    a: &[GroupElement],
    b: &[GroupElement],
) -> Result<Vec<ElementaryOp>> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(
            "tuples have different lengths".into(),
        ));
    }
    if a.is_empty() {
        return Ok(vec![]);
    }
    let group = a[0].group().clone();
    if b[0].group() != &group {
        return Err(Error::GroupMismatch);
    }
    if !is_generating(a, &group)? || !is_generating(b, &group)? {
        return Err(Error::NotGenerating);
    }
    let wa = wedge(a)?;
    let wb = wedge(b)?;
    if wa != wb {
        return Err(Error::WedgeMismatch(format!(
            "{:?} != {:?}",
            wa.coords(),
            wb.coords()
        )));
    }
    let ops = synth_rec(a.to_vec(), b.to_vec())?;
    // end-to-end replay check
    if replay(&ops, a)? != b {
        return Err(Error::Internal("synthesized operations do not replay".into()));
    }
    Ok(ops)
}

fn synth_rec(a: Vec<GroupElement>, b: Vec<GroupElement>) -> Result<Vec<ElementaryOp>> {
    let d = a.len();
    let group = a[0].group().clone();
    let r = group.rank();
    if r == 0 {
        return Ok(vec![]);
    }
    if d == 1 {
        return if a == b {
            Ok(vec![])
        } else {
            Err(Error::Internal("singleton tuples differ in synthesis".into()))
        };
    }
    let mut a = a;
    let mut b = b;
    let ops_a = reduce_to_normal_form(&mut a)?;
    let ops_b = reduce_to_normal_form(&mut b)?;

    // project rows 0..d-1 onto the quotient by the last factor
    let quotient = FinGenAbGroup::new(group.factors()[..r - 1].to_vec())?;
    let project = |t: &[GroupElement]| -> Result<Vec<GroupElement>> {
        t[..d - 1]
            .iter()
            .map(|e| quotient.element(e.coords()[..r - 1].to_vec()))
            .collect()
    };
    let sub_ops = synth_rec(project(&a)?, project(&b)?)?;

    let mut ops = ops_a;
    ops.extend(sub_ops);
    ops.extend(ops_b.iter().rev().map(|op| op.inverse()));
    Ok(ops)
}

/// Bring the tuple to the normal form where the last coordinate column is
/// `(0, ..., 0, 1)` and the last row is `(0, ..., 0, 1)`; records and
/// applies the operations used.
fn reduce_to_normal_form(t: &mut Vec<GroupElement>) -> Result<Vec<ElementaryOp>> {
    let d = t.len();
    let group = t[0].group().clone();
    let r = group.rank();
    let last = r - 1;
    let n = group.factors()[last].clone();
    let mut ops: Vec<ElementaryOp> = Vec::new();

    let apply = |t: &mut Vec<GroupElement>, ops: &mut Vec<ElementaryOp>, i: usize, j: usize, m: BigInt| -> Result<()> {
        if m.is_zero() {
            return Ok(());
        }
        let op = ElementaryOp::new(i, j, m)?;
        *t = apply_elem_op(t, &op)?;
        ops.push(op);
        Ok(())
    };

    // Euclidean reduction of the last column to a single entry
    loop {
        let nonzero: Vec<usize> = (0..d).filter(|&i| !t[i].coords()[last].is_zero()).collect();
        if nonzero.len() <= 1 {
            break;
        }
        let &j = nonzero
            .iter()
            .min_by_key(|&&i| t[i].coords()[last].abs())
            .expect("nonempty");
        for &i in &nonzero {
            if i == j {
                continue;
            }
            let q = t[i].coords()[last].div_floor(&t[j].coords()[last]);
            apply(t, &mut ops, i, j, -q)?;
        }
    }

    let mut k = (0..d)
        .find(|&i| !t[i].coords()[last].is_zero())
        .ok_or_else(|| Error::Internal("last column vanished for a generating tuple".into()))?;
    let g = t[k].coords()[last].clone();

    if n.is_zero() {
        // free factor: entry is +-1 by generation
        if g == BigInt::from(-1) {
            let other = (k + 1) % d;
            apply(t, &mut ops, other, k, BigInt::from(-1))?;
            apply(t, &mut ops, k, other, BigInt::one())?;
            k = other;
        } else if !g.is_one() {
            return Err(Error::Internal(format!(
                "free pivot {g} is not a unit"
            )));
        }
    } else if !g.is_one() {
        // finite factor: gcd(g, n) = 1, fix the pivot to 1 using a second row
        let eg = g.extended_gcd(&n);
        if !eg.gcd.is_one() {
            return Err(Error::Internal("pivot not invertible for a generating tuple".into()));
        }
        let inv = eg.x.mod_floor(&n);
        let other = (k + 1) % d;
        apply(t, &mut ops, other, k, inv)?;
        apply(t, &mut ops, k, other, -g)?;
        k = other;
    }

    // move the pivot 1 to the last row
    if k != d - 1 {
        apply(t, &mut ops, d - 1, k, BigInt::one())?;
        apply(t, &mut ops, k, d - 1, BigInt::from(-1))?;
    }

    // clear the rest of the last row using the first d-1 rows
    if r >= 2 {
        let v: Vec<BigInt> = t[d - 1].coords()[..last].to_vec();
        if v.iter().any(|c| !c.is_zero()) {
            // solve sum_i c_i * X_i = v modulo the quotient relations
            let finite: Vec<usize> = (0..last)
                .filter(|&p| !group.factors()[p].is_zero())
                .collect();
            let mut bmat = IntMatrix::zero(last, d - 1 + finite.len());
            for i in 0..d - 1 {
                for p in 0..last {
                    bmat.set(p, i, t[i].coords()[p].clone());
                }
            }
            for (c, &p) in finite.iter().enumerate() {
                bmat.set(p, d - 1 + c, group.factors()[p].clone());
            }
            let sol = solve_linear(&bmat, &v)?
                .ok_or_else(|| Error::Internal("cannot clear last row".into()))?;
            for (i, c) in sol.iter().take(d - 1).enumerate() {
                apply(t, &mut ops, d - 1, i, -c)?;
            }
        }
        if t[d - 1].coords()[..last].iter().any(|c| !c.is_zero()) {
            return Err(Error::Internal("last row not cleared".into()));
        }
    }
    Ok(ops)
}

/// Unimodular witness `N` with `b_i = sum_j N[i][j] a_j`, built from the
/// elementary-operation synthesis; a sign flip on the first row absorbs a
/// wedge differing by -1.
pub fn glz_witness(a: &[GroupElement], b: &[GroupElement]) -> Result<IntMatrix> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(
            "tuples have different lengths".into(),
        ));
    }
    if a.is_empty() {
        return Ok(IntMatrix::identity(0));
    }
    let d = a.len();
    let wa = wedge(a)?;
    let wb = wedge(b)?;
    let (ops, flipped) = if wa == wb {
        (synthesize_elem_ops(a, b)?, false)
    } else if wa.neg() == wb {
        let mut a2 = a.to_vec();
        a2[0] = a2[0].neg();
        (synthesize_elem_ops(&a2, b)?, true)
    } else {
        return Err(Error::WedgeMismatch(
            "wedge classes differ; no witness exists".into(),
        ));
    };
    // compose elementary matrices; each op left-multiplies by I + m*e_{ts}
    let mut n = IntMatrix::identity(d);
    if flipped {
        n.set(0, 0, BigInt::from(-1));
    }
    let mut rows: Vec<Vec<BigInt>> = (0..d).map(|i| n.row(i)).collect();
    for op in &ops {
        let src = rows[op.source].clone();
        for (dst, s) in rows[op.target].iter_mut().zip(&src) {
            *dst += &op.mult * s;
        }
    }
    let n = IntMatrix::from_bigint_rows(&rows)?;
    if !is_unimodular(&n)? {
        return Err(Error::Internal("witness is not unimodular".into()));
    }
    // exact transport check
    for i in 0..d {
        let mut acc = a[0].group().zero();
        for (j, aj) in a.iter().enumerate() {
            acc = acc.add(&aj.scale(n.get(i, j)))?;
        }
        if acc != b[i] {
            return Err(Error::Internal("witness does not transport the tuple".into()));
        }
    }
    Ok(n)
}

/// Push a wedge element through the d-th exterior power of an integer
/// matrix acting on base coordinates: component `S` of the image is
/// `sum_T det(M[S, T]) * w_T`.
pub fn apply_power_map(w: &WedgeElement, m: &IntMatrix) -> Result<WedgeElement> {
    let r = w.power.base.rank();
    if m.rows() != r || m.cols() != r {
        return Err(Error::DimensionMismatch(format!(
            "matrix must be {r}x{r}"
        )));
    }
    let d = w.power.degree;
    let mut coords = Vec::with_capacity(w.power.components.len());
    for comp_s in &w.power.components {
        let mut acc = BigInt::zero();
        for (t_idx, comp_t) in w.power.components.iter().enumerate() {
            if w.coords[t_idx].is_zero() {
                continue;
            }
            let entries: Vec<BigInt> = comp_s
                .subset
                .iter()
                .flat_map(|&i| comp_t.subset.iter().map(move |&j| m.get(i, j).clone()))
                .collect();
            let minor = det(&IntMatrix::new(d, d, entries)?)?;
            acc += minor * &w.coords[t_idx];
        }
        coords.push(reduce_mod(&acc, &comp_s.modulus));
    }
    Ok(WedgeElement {
        power: w.power.clone(),
        coords,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FinGenAbGroup;
    use std::collections::{HashMap, HashSet, VecDeque};

    fn g24() -> FinGenAbGroup {
        FinGenAbGroup::from_ints(&[2, 4])
    }

    #[test]
    fn wedge_power_examples() {
        let p = wedge_power(&g24(), 2);
        assert_eq!(p.components().len(), 1);
        assert_eq!(p.components()[0].modulus, BigInt::from(2));

        let z = wedge_power(&g24(), 3);
        assert!(z.is_zero_group());

        let free = wedge_power(&FinGenAbGroup::from_ints(&[0, 0]), 2);
        assert_eq!(free.components().len(), 1);
        assert!(free.components()[0].modulus.is_zero());
    }

    #[test]
    fn wedge_examples() {
        let g = g24();
        let basis = vec![g.generator(0), g.generator(1)];
        let w = wedge(&basis).unwrap();
        assert_eq!(w.coords(), &[BigInt::one()]);

        let t = vec![g.element_from_ints(&[1, 1]), g.element_from_ints(&[1, 3])];
        // minor 1*3 - 1*1 = 2 = 0 mod 2
        assert!(wedge(&t).unwrap().is_zero());

        let rep = vec![g.generator(0), g.generator(0)];
        assert!(wedge(&rep).unwrap().is_zero());
    }

    #[test]
    fn class_of_examples() {
        let g5 = FinGenAbGroup::from_ints(&[5]);
        let w = wedge(&[g5.element_from_ints(&[2])]).unwrap();
        let c = class_of(&w);
        assert_eq!(c.representative().coords(), &[BigInt::from(2)]);
        // -2 = 3 normalizes to the same class
        let w3 = wedge(&[g5.element_from_ints(&[3])]).unwrap();
        assert_eq!(class_of(&w3), c);

        let z = wedge(&[g5.zero()]).unwrap();
        assert_eq!(class_of(&z).representative(), &z);
    }

    #[test]
    fn is_generator_examples() {
        let g5 = FinGenAbGroup::from_ints(&[5]);
        assert!(is_generator(&wedge(&[g5.element_from_ints(&[2])]).unwrap()));

        let g4 = FinGenAbGroup::from_ints(&[4]);
        assert!(!is_generator(&wedge(&[g4.element_from_ints(&[2])]).unwrap()));

        let z = FinGenAbGroup::from_ints(&[0]);
        assert!(is_generator(&wedge(&[z.element_from_ints(&[1])]).unwrap()));
        assert!(is_generator(&wedge(&[z.element_from_ints(&[-1])]).unwrap()));
        assert!(!is_generator(&wedge(&[z.element_from_ints(&[2])]).unwrap()));
    }

    #[test]
    fn elem_op_examples() {
        let g = FinGenAbGroup::from_ints(&[5, 5]);
        let t = vec![g.generator(0), g.generator(1)];
        let noop = ElementaryOp::new(0, 1, BigInt::zero()).unwrap();
        assert_eq!(apply_elem_op(&t, &noop).unwrap(), t);

        let op = ElementaryOp::new(0, 1, BigInt::one()).unwrap();
        let t2 = apply_elem_op(&t, &op).unwrap();
        assert_eq!(t2[0], g.element_from_ints(&[1, 1]));
        assert_eq!(t2[1], g.generator(1));

        assert!(ElementaryOp::new(1, 1, BigInt::one()).is_err());
        assert!(apply_elem_op(&t, &ElementaryOp { target: 5, source: 0, mult: BigInt::one() }).is_err());
    }

    #[test]
    fn elem_ops_preserve_wedge() {
        let g = g24();
        let elems = g.elements().unwrap();
        for a in &elems {
            for b in &elems {
                let t = vec![a.clone(), b.clone()];
                let w = wedge(&t).unwrap();
                for m in -3i64..=3 {
                    for (i, j) in [(0, 1), (1, 0)] {
                        let op = ElementaryOp::new(i, j, BigInt::from(m)).unwrap();
                        let t2 = apply_elem_op(&t, &op).unwrap();
                        assert_eq!(wedge(&t2).unwrap(), w);
                    }
                }
            }
        }
    }

    #[test]
    fn wedge_multilinear_and_alternating_seeded() {
        let mut state = 0xfeed_face_cafe_beefu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let groups = [
            FinGenAbGroup::from_ints(&[3, 3]),
            FinGenAbGroup::from_ints(&[2, 4]),
            FinGenAbGroup::from_ints(&[2, 4, 8]),
        ];
        for _ in 0..200 {
            let g = &groups[(next() % 3) as usize];
            let r = g.rank();
            let d = 2 + (next() % 2) as usize;
            let rand_elt = |next: &mut dyn FnMut() -> u64| {
                let coords: Vec<BigInt> = (0..r).map(|_| BigInt::from(next() % 8)).collect();
                g.element(coords).unwrap()
            };
            let mut t: Vec<GroupElement> = (0..d).map(|_| rand_elt(&mut next)).collect();
            let x = rand_elt(&mut next);
            let y = rand_elt(&mut next);
            let pos = (next() % d as u64) as usize;

            // multilinearity in position `pos`
            t[pos] = x.add(&y).unwrap();
            let w_sum = wedge(&t).unwrap();
            t[pos] = x.clone();
            let w_x = wedge(&t).unwrap();
            t[pos] = y.clone();
            let w_y = wedge(&t).unwrap();
            assert_eq!(w_sum, w_x.add(&w_y).unwrap());

            // swapping two entries negates; a repeat kills
            if d >= 2 {
                t[pos] = x.clone();
                let w = wedge(&t).unwrap();
                let other = (pos + 1) % d;
                t.swap(pos, other);
                assert_eq!(wedge(&t).unwrap(), w.neg());
                t[pos] = t[other].clone();
                assert!(wedge(&t).unwrap().is_zero());
            }
        }
    }

    fn generating_tuples(g: &FinGenAbGroup, d: usize) -> Vec<Vec<GroupElement>> {
        let elems = g.elements().unwrap();
        let mut out = Vec::new();
        let mut idx = vec![0usize; d];
        loop {
            let t: Vec<GroupElement> = idx.iter().map(|&i| elems[i].clone()).collect();
            if is_generating(&t, g).unwrap() {
                out.push(t);
            }
            let mut p = d;
            loop {
                if p == 0 {
                    return out;
                }
                p -= 1;
                idx[p] += 1;
                if idx[p] < elems.len() {
                    break;
                }
                idx[p] = 0;
            }
        }
    }

    /// BFS orbits under elementary operations, for the completeness check.
    fn orbit_partition(tuples: &[Vec<GroupElement>], g: &FinGenAbGroup, d: usize) -> Vec<usize> {
        let exp: i64 = i64::try_from(g.exponent().unwrap()).unwrap();
        let key = |t: &[GroupElement]| -> Vec<Vec<BigInt>> {
            t.iter().map(|e| e.coords().to_vec()).collect()
        };
        let index: HashMap<Vec<Vec<BigInt>>, usize> = tuples
            .iter()
            .enumerate()
            .map(|(i, t)| (key(t), i))
            .collect();
        let mut orbit = vec![usize::MAX; tuples.len()];
        let mut next_orbit = 0;
        for start in 0..tuples.len() {
            if orbit[start] != usize::MAX {
                continue;
            }
            let mut queue = VecDeque::from([start]);
            orbit[start] = next_orbit;
            while let Some(cur) = queue.pop_front() {
                for i in 0..d {
                    for j in 0..d {
                        if i == j {
                            continue;
                        }
                        for m in 0..exp {
                            let op = ElementaryOp::new(i, j, BigInt::from(m)).unwrap();
                            let t2 = apply_elem_op(&tuples[cur], &op).unwrap();
                            let nb = index[&key(&t2)];
                            if orbit[nb] == usize::MAX {
                                orbit[nb] = next_orbit;
                                queue.push_back(nb);
                            }
                        }
                    }
                }
            }
            next_orbit += 1;
        }
        orbit
    }

    #[test]
    fn orbits_equal_wedge_fibers_small() {
        // completeness of elementary operations at small scale
        for (factors, d) in [(vec![2i64, 2], 2usize), (vec![3, 3], 2), (vec![2, 4], 2)] {
            let g = FinGenAbGroup::from_ints(&factors);
            let tuples = generating_tuples(&g, d);
            let orbits = orbit_partition(&tuples, &g, d);
            let mut orbit_to_wedge: HashMap<usize, Vec<BigInt>> = HashMap::new();
            let mut wedge_to_orbit: HashMap<Vec<BigInt>, usize> = HashMap::new();
            for (t, &o) in tuples.iter().zip(&orbits) {
                let w = wedge(t).unwrap().coords().to_vec();
                assert_eq!(orbit_to_wedge.entry(o).or_insert_with(|| w.clone()), &w);
                assert_eq!(wedge_to_orbit.entry(w.clone()).or_insert(o), &o);
            }
        }
    }

    #[test]
    fn synthesize_examples() {
        let g = FinGenAbGroup::from_ints(&[5, 5]);
        let a = vec![g.generator(0), g.generator(1)];
        let b = vec![g.element_from_ints(&[1, 1]), g.generator(1)];
        let ops = synthesize_elem_ops(&a, &b).unwrap();
        assert_eq!(replay(&ops, &a).unwrap(), b);

        // a = b permits the empty sequence
        let ops = synthesize_elem_ops(&a, &a).unwrap();
        assert_eq!(replay(&ops, &a).unwrap(), a);

        // d = 1: wedges differ
        let g5 = FinGenAbGroup::from_ints(&[5]);
        let err = synthesize_elem_ops(
            &[g5.element_from_ints(&[1])],
            &[g5.element_from_ints(&[2])],
        );
        assert!(matches!(err, Err(Error::WedgeMismatch(_))));
    }

    #[test]
    fn synthesize_within_fibers_exhaustive_small() {
        for (factors, d) in [(vec![2i64, 2], 2usize), (vec![3, 3], 2), (vec![2, 4], 3)] {
            let g = FinGenAbGroup::from_ints(&factors);
            let tuples = generating_tuples(&g, d);
            let mut by_wedge: HashMap<Vec<BigInt>, Vec<usize>> = HashMap::new();
            for (i, t) in tuples.iter().enumerate() {
                by_wedge
                    .entry(wedge(t).unwrap().coords().to_vec())
                    .or_default()
                    .push(i);
            }
            let mut done = 0;
            for members in by_wedge.values() {
                for pair in members.windows(2) {
                    let a = &tuples[pair[0]];
                    let b = &tuples[pair[1]];
                    let ops = synthesize_elem_ops(a, b).unwrap();
                    assert_eq!(replay(&ops, a).unwrap(), *b);
                    done += 1;
                    if done > 60 {
                        break;
                    }
                }
                if done > 60 {
                    break;
                }
            }
            assert!(done > 0);
        }
    }

    #[test]
    fn synthesize_free_group() {
        let g = FinGenAbGroup::from_ints(&[0, 0]);
        let a = vec![g.generator(0), g.generator(1)];
        let b = vec![g.element_from_ints(&[1, 2]), g.element_from_ints(&[0, 1])];
        assert_eq!(wedge(&a).unwrap(), wedge(&b).unwrap());
        let ops = synthesize_elem_ops(&a, &b).unwrap();
        assert_eq!(replay(&ops, &a).unwrap(), b);
    }

    #[test]
    fn glz_witness_examples() {
        let g = FinGenAbGroup::from_ints(&[5, 5]);
        let a = vec![g.generator(0), g.generator(1)];

        let n = glz_witness(&a, &a).unwrap();
        assert!(is_unimodular(&n).unwrap());

        // swap: wedge flips sign, witness has det -1
        let b = vec![g.generator(1), g.generator(0)];
        let n = glz_witness(&a, &b).unwrap();
        assert!(is_unimodular(&n).unwrap());
        assert_eq!(det(&n).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn glz_witness_rejects_distinct_classes() {
        let g5 = FinGenAbGroup::from_ints(&[5]);
        let err = glz_witness(&[g5.element_from_ints(&[1])], &[g5.element_from_ints(&[2])]);
        assert!(matches!(err, Err(Error::WedgeMismatch(_))));
    }

    #[test]
    fn unimodular_action_scales_wedge_by_det() {
        // applying a unimodular matrix to a generating tuple scales the
        // wedge by det(N)
        let g = FinGenAbGroup::from_ints(&[3, 3]);
        let tuples = generating_tuples(&g, 2);
        let mats = [
            IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]),
            IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]),
            IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]),
            IntMatrix::from_rows(&[vec![-1, 0], vec![3, 1]]),
        ];
        let mut seen = HashSet::new();
        for t in tuples.iter().take(30) {
            for n in &mats {
                assert!(is_unimodular(n).unwrap());
                let mapped: Vec<GroupElement> = (0..2)
                    .map(|i| {
                        let mut acc = g.zero();
                        for (j, e) in t.iter().enumerate() {
                            acc = acc.add(&e.scale(n.get(i, j))).unwrap();
                        }
                        acc
                    })
                    .collect();
                let expect = wedge(t).unwrap().scale(&det(n).unwrap());
                assert_eq!(wedge(&mapped).unwrap(), expect);
                seen.insert(expect.coords().to_vec());
            }
        }
        assert!(!seen.is_empty());
    }

    #[test]
    fn apply_power_map_is_det_on_top_degree() {
        let g = FinGenAbGroup::from_ints(&[5, 5]);
        let w = wedge(&[g.generator(0), g.generator(1)]).unwrap();
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]);
        let out = apply_power_map(&w, &m).unwrap();
        assert_eq!(out.coords(), &[det(&m).unwrap().mod_floor(&BigInt::from(5))]);
    }
}
