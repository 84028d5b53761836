//! Finitely generated abelian groups in canonical invariant-factor form,
//! their elements, characters and duals.
//!
//! A group is a factor sequence `(n_1, ..., n_r)` where each `n_i` is 0
//! (an infinite cyclic factor) or >= 2, and `n_i` divides `n_{i+1}` with
//! the convention that every `d` divides 0. Trivial factors are never
//! stored.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{snf, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinGenAbGroup {
    factors: Vec<BigInt>,
}

impl FinGenAbGroup {
    pub fn new(factors: Vec<BigInt>) -> Result<Self> {
        for f in &factors {
            if f.is_one() || f.is_negative() || (*f != BigInt::zero() && *f < BigInt::from(2)) {
                return Err(Error::InvalidInput(format!(
                    "invalid invariant factor {f}: must be 0 or >= 2"
                )));
            }
        }
        for w in factors.windows(2) {
            let ok = if w[0].is_zero() {
                w[1].is_zero()
            } else {
                w[1].mod_floor(&w[0]).is_zero()
            };
            if !ok {
                return Err(Error::InvalidInput(format!(
                    "invariant factors {} and {} violate the divisibility chain",
                    w[0], w[1]
                )));
            }
        }
        Ok(FinGenAbGroup { factors })
    }

    pub fn from_ints(factors: &[i64]) -> Self {
        FinGenAbGroup::new(factors.iter().map(|&f| BigInt::from(f)).collect())
            .expect("invalid factors")
    }

    pub fn trivial() -> Self {
        FinGenAbGroup { factors: vec![] }
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.factors.iter().all(|f| !f.is_zero())
    }

    /// Order of the group; `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.is_finite() {
            Some(self.factors.iter().product())
        } else {
            None
        }
    }

    /// Exponent of a finite group (the largest invariant factor);
    /// 1 for the trivial group, `None` when the group is infinite.
    pub fn exponent(&self) -> Option<BigInt> {
        if !self.is_finite() {
            return None;
        }
        Some(self.factors.last().cloned().unwrap_or_else(BigInt::one))
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            group: self.clone(),
            coords: vec![BigInt::zero(); self.rank()],
        }
    }

    /// The i-th canonical generator.
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut coords = vec![BigInt::zero(); self.rank()];
        coords[i] = BigInt::one();
        GroupElement {
            group: self.clone(),
            coords,
        }
    }

    pub fn element(&self, coords: Vec<BigInt>) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "element has {} coordinates, group has rank {}",
                coords.len(),
                self.rank()
            )));
        }
        Ok(GroupElement {
            coords: reduce_coords(&self.factors, coords),
            group: self.clone(),
        })
    }

    pub fn element_from_ints(&self, coords: &[i64]) -> GroupElement {
        self.element(coords.iter().map(|&c| BigInt::from(c)).collect())
            .expect("bad coords")
    }

    /// All elements of a finite group, in mixed-radix order (last
    /// coordinate fastest).
    pub fn elements(&self) -> Result<Vec<GroupElement>> {
        let order = self
            .order()
            .ok_or_else(|| Error::InvalidInput("cannot enumerate an infinite group".into()))?;
        let order = usize::try_from(order)
            .map_err(|_| Error::InvalidInput("group too large to enumerate".into()))?;
        let mut out = Vec::with_capacity(order);
        let mut coords = vec![BigInt::zero(); self.rank()];
        loop {
            out.push(GroupElement {
                group: self.clone(),
                coords: coords.clone(),
            });
            let mut i = self.rank();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                coords[i] += 1;
                if coords[i] < self.factors[i] {
                    break;
                }
                coords[i] = BigInt::zero();
            }
        }
    }
}

fn reduce_coords(factors: &[BigInt], mut coords: Vec<BigInt>) -> Vec<BigInt> {
    for (c, f) in coords.iter_mut().zip(factors) {
        if !f.is_zero() {
            *c = c.mod_floor(f);
        }
    }
    coords
}

/// An element of a `FinGenAbGroup`, stored with reduced coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    group: FinGenAbGroup,
    coords: Vec<BigInt>,
}

/// A character is an element of the dual group; for the canonical
/// self-dual encoding both sides share the same coordinates.
pub type Character = GroupElement;

impl GroupElement {
    pub fn group(&self) -> &FinGenAbGroup {
        &self.group
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        self.group.element(coords)
    }

    pub fn neg(&self) -> GroupElement {
        let coords = self.coords.iter().map(|c| -c).collect();
        self.group.element(coords).expect("rank preserved")
    }

    pub fn sub(&self, other: &GroupElement) -> Result<GroupElement> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> GroupElement {
        let coords = self.coords.iter().map(|c| c * k).collect();
        self.group.element(coords).expect("rank preserved")
    }
}

/// A value in Q/Z: a reduced fraction with `0 <= num < den`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QmodZ {
    num: BigInt,
    den: BigInt,
}

impl QmodZ {
    pub fn new(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        let (num, den) = if den.is_negative() { (-num, -den) } else { (num, den) };
        let num = num.mod_floor(&den);
        let g = num.gcd(&den);
        Ok(QmodZ {
            num: &num / &g,
            den: &den / &g,
        })
    }

    pub fn zero() -> Self {
        QmodZ {
            num: BigInt::zero(),
            den: BigInt::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn add(&self, other: &QmodZ) -> QmodZ {
        QmodZ::new(&self.num * &other.den + &other.num * &self.den, &self.den * &other.den)
            .expect("nonzero denominator")
    }

    pub fn neg(&self) -> QmodZ {
        QmodZ::new(-&self.num, self.den.clone()).expect("nonzero denominator")
    }

    pub fn scale(&self, k: &BigInt) -> QmodZ {
        QmodZ::new(&self.num * k, self.den.clone()).expect("nonzero denominator")
    }
}

impl std::fmt::Display for QmodZ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Canonical form of the cokernel of a presentation matrix
/// (columns = generators, rows = relations). Trivial factors are dropped.
pub fn canonicalize(relations: &IntMatrix) -> FinGenAbGroup {
    let diag = snf(relations).diagonal();
    let gens = relations.cols();
    let mut factors = Vec::new();
    let mut zeros = Vec::new();
    for j in 0..gens {
        let d = diag.get(j).cloned().unwrap_or_else(BigInt::zero);
        if d.is_one() {
            continue;
        }
        if d.is_zero() {
            zeros.push(d);
        } else {
            factors.push(d);
        }
    }
    factors.extend(zeros);
    FinGenAbGroup::new(factors).expect("snf diagonal is a valid chain")
}

/// Dual group: finite factors are self-dual and the free/torus duality
/// also fixes the factor sequence.
pub fn dual(g: &FinGenAbGroup) -> FinGenAbGroup {
    g.clone()
}

/// Evaluate a character against a group element; the standard bilinear
/// pairing `sum c_i a_i / n_i` over the finite factors. A free factor
/// contributes nothing unless both sides are nonzero there, which is
/// rejected.
pub fn pair(chi: &Character, a: &GroupElement) -> Result<QmodZ> {
    if chi.group() != a.group() {
        return Err(Error::GroupMismatch);
    }
    let mut acc = QmodZ::zero();
    for ((c, x), n) in chi.coords().iter().zip(a.coords()).zip(a.group().factors()) {
        if n.is_zero() {
            if !c.is_zero() && !x.is_zero() {
                return Err(Error::InvalidInput(
                    "pairing of two free coordinates is not defined".into(),
                ));
            }
            continue;
        }
        acc = acc.add(&QmodZ::new(c * x, n.clone())?);
    }
    Ok(acc)
}

/// True iff the tuple generates the whole group. Implemented by stacking
/// the coordinate matrix over the relation matrix diag(factors) and
/// checking that the cokernel is trivial.
pub fn is_generating(tuple: &[GroupElement], g: &FinGenAbGroup) -> Result<bool> {
    for e in tuple {
        if e.group() != g {
            return Err(Error::GroupMismatch);
        }
    }
    let r = g.rank();
    if r == 0 {
        return Ok(true);
    }
    let mut rows: Vec<Vec<BigInt>> = tuple.iter().map(|e| e.coords().to_vec()).collect();
    for (i, f) in g.factors().iter().enumerate() {
        if !f.is_zero() {
            let mut row = vec![BigInt::zero(); r];
            row[i] = f.clone();
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Ok(false);
    }
    let m = IntMatrix::from_bigint_rows(&rows)?;
    let diag = snf(&m).diagonal();
    Ok(diag.len() >= r && diag.iter().take(r).all(|d| d.is_one()))
}

/// An automorphism of a group given by an integer matrix acting on
/// coordinate column vectors (so column j = image of the j-th generator).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAutomorphism {
    group: FinGenAbGroup,
    matrix: IntMatrix,
}

impl GroupAutomorphism {
    pub fn new(group: FinGenAbGroup, matrix: IntMatrix) -> Result<Self> {
        let r = group.rank();
        if matrix.rows() != r || matrix.cols() != r {
            return Err(Error::DimensionMismatch(format!(
                "automorphism matrix must be {r}x{r}"
            )));
        }
        let column = |j: usize| -> Vec<BigInt> { (0..r).map(|i| matrix.get(i, j).clone()).collect() };
        // well-defined: n_j * (image of generator j) = 0
        for j in 0..r {
            let img = group.element(column(j))?;
            let killed = img.scale(&group.factors()[j]);
            if !group.factors()[j].is_zero() && !killed.is_zero() {
                return Err(Error::InvalidInput(
                    "matrix does not define an endomorphism of the group".into(),
                ));
            }
        }
        // invertible: images of the generators must generate
        let images: Vec<GroupElement> = (0..r)
            .map(|j| group.element(column(j)))
            .collect::<Result<_>>()?;
        if !is_generating(&images, &group)? {
            return Err(Error::NotGenerating);
        }
        Ok(GroupAutomorphism { group, matrix })
    }

    pub fn group(&self) -> &FinGenAbGroup {
        &self.group
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn identity(group: FinGenAbGroup) -> Self {
        let r = group.rank();
        GroupAutomorphism {
            group,
            matrix: IntMatrix::identity(r),
        }
    }
}

/// Image of `a` under the automorphism: the coordinate column vector is
/// multiplied by the matrix and reduced.
pub fn apply_automorphism(phi: &GroupAutomorphism, a: &GroupElement) -> Result<GroupElement> {
    if phi.group() != a.group() {
        return Err(Error::GroupMismatch);
    }
    let coords = phi.matrix().mul_vec(a.coords())?;
    phi.group().element(coords)
}
