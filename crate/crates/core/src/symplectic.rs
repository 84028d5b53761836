//! Q/Z-valued bilinear forms on finite abelian groups, the standard
//! symplectic space `A_0 (+) A_0*`, form-preservation checks for integer
//! matrices, and the exhaustive verification that every form-preserving
//! automorphism has determinant 1 modulo the smallest invariant factor.
//!
//! Generators of the total group are interleaved `(e_1, f_1, ..., e_r, f_r)`
//! so the Gram matrix is the block diagonal with blocks
//! `[[0, 1/n_i], [-1/n_i, 0]]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::abelian::{FinGenAbGroup, GroupAutomorphism, GroupElement, QmodZ};
use crate::error::{Error, Result};
use crate::matrix::{det, IntMatrix, RatMatrix};

/// A Z-bilinear form with values in Q/Z on a finite abelian group, given by
/// its Gram matrix on the canonical generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearForm {
    group: FinGenAbGroup,
    gram: Vec<Vec<QmodZ>>,
}

impl BilinearForm {
    /// Entry (i, j) must have denominator dividing `gcd(n_i, n_j)` so the
    /// form is well defined on the quotients.
    pub fn new(group: FinGenAbGroup, gram: Vec<Vec<QmodZ>>) -> Result<Self> {
        if !group.is_finite() {
            return Err(Error::InvalidInput(
                "bilinear forms are only supported on finite groups".into(),
            ));
        }
        let r = group.rank();
        if gram.len() != r || gram.iter().any(|row| row.len() != r) {
            return Err(Error::DimensionMismatch(format!(
                "gram matrix must be {r}x{r}"
            )));
        }
        for (i, row) in gram.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let g = group.factors()[i].gcd(&group.factors()[j]);
                if !g.mod_floor(v.den()).is_zero() {
                    return Err(Error::InvalidInput(format!(
                        "gram entry ({i},{j}) has denominator {} not dividing gcd(n_{i}, n_{j}) = {g}",
                        v.den()
                    )));
                }
            }
        }
        Ok(BilinearForm { group, gram })
    }

    pub fn zero(group: FinGenAbGroup) -> Result<Self> {
        let r = group.rank();
        BilinearForm::new(group, vec![vec![QmodZ::zero(); r]; r])
    }

    pub fn group(&self) -> &FinGenAbGroup {
        &self.group
    }

    pub fn gram(&self) -> &[Vec<QmodZ>] {
        &self.gram
    }

    fn gram_rational(&self) -> RatMatrix {
        let r = self.group.rank();
        let mut m = RatMatrix::zero(r, r);
        for i in 0..r {
            for j in 0..r {
                let v = &self.gram[i][j];
                m.set(
                    i,
                    j,
                    num_rational::BigRational::new(v.num().clone(), v.den().clone()),
                );
            }
        }
        m
    }
}

/// The standard symplectic space on a finite base group `A_0`: the total
/// group is `A_0 (+) A_0*` with interleaved generators and the form
/// `omega((a, a*), (b, b*)) = a*(b) - b*(a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticSpace {
    base: FinGenAbGroup,
    total: FinGenAbGroup,
    form: BilinearForm,
}

impl SymplecticSpace {
    pub fn standard(base: &FinGenAbGroup) -> Result<Self> {
        if !base.is_finite() {
            return Err(Error::InvalidInput(
                "symplectic spaces are only supported on finite base groups".into(),
            ));
        }
        let r = base.rank();
        let mut factors = Vec::with_capacity(2 * r);
        for n in base.factors() {
            factors.push(n.clone());
            factors.push(n.clone());
        }
        let total = FinGenAbGroup::new(factors)?;
        let mut gram = vec![vec![QmodZ::zero(); 2 * r]; 2 * r];
        for (i, n) in base.factors().iter().enumerate() {
            gram[2 * i][2 * i + 1] = QmodZ::new(BigInt::one(), n.clone())?;
            gram[2 * i + 1][2 * i] = QmodZ::new(-BigInt::one(), n.clone())?;
        }
        let form = BilinearForm::new(total.clone(), gram)?;
        Ok(SymplecticSpace { base: base.clone(), total, form })
    }

    pub fn base(&self) -> &FinGenAbGroup {
        &self.base
    }

    pub fn total(&self) -> &FinGenAbGroup {
        &self.total
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }
}

/// `x^t . gram . y` in Q/Z.
pub fn eval_form(f: &BilinearForm, x: &GroupElement, y: &GroupElement) -> Result<QmodZ> {
    if x.group() != f.group() || y.group() != f.group() {
        return Err(Error::GroupMismatch);
    }
    let mut acc = QmodZ::zero();
    for (i, xi) in x.coords().iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.coords().iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            acc = acc.add(&f.gram[i][j].scale(xi).scale(yj));
        }
    }
    Ok(acc)
}

/// Pointwise alternation: `omega(a, a) = 0` for every a. On odd-order
/// groups a skew Gram matrix with zero diagonal settles it; with 2-torsion
/// the check runs over all elements (skewness alone is not enough there).
pub fn is_alternating(f: &BilinearForm) -> Result<bool> {
    let r = f.group.rank();
    let skew = (0..r).all(|i| {
        (0..r).all(|j| f.gram[i][j].add(&f.gram[j][i]).is_zero())
    });
    let two = BigInt::from(2);
    let has_even = f.group.factors().iter().any(|n| n.mod_floor(&two).is_zero());
    if !has_even {
        return Ok(skew && (0..r).all(|i| f.gram[i][i].is_zero()));
    }
    if !skew {
        return Ok(false);
    }
    for x in f.group.elements()? {
        if !eval_form(f, &x, &x)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exhaustive radical search: no nonzero element pairs to zero with every
/// generator.
pub fn is_nondegenerate(f: &BilinearForm) -> Result<bool> {
    let r = f.group.rank();
    let gens: Vec<GroupElement> = (0..r).map(|i| f.group.generator(i)).collect();
    for x in f.group.elements()? {
        if x.is_zero() {
            continue;
        }
        let mut all_zero = true;
        for g in &gens {
            if !eval_form(f, &x, g)?.is_zero() {
                all_zero = false;
                break;
            }
        }
        if all_zero {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_symplectic(f: &BilinearForm) -> Result<bool> {
    Ok(is_alternating(f)? && is_nondegenerate(f)?)
}

/// The matrix `c` acts by row images (`psi(e_i) = sum_j c_ij e_j`). It
/// preserves the standard form iff `c J c^t - J` is integral and `c`
/// induces an automorphism of the total group.
pub fn preserves_form(c: &IntMatrix, s: &SymplecticSpace) -> Result<bool> {
    let m = s.total.rank();
    if c.rows() != m || c.cols() != m {
        return Err(Error::DimensionMismatch(format!(
            "expected a {m}x{m} matrix, got {}x{}",
            c.rows(),
            c.cols()
        )));
    }
    let j = s.form.gram_rational();
    let cr = c.to_rational();
    let mut ct = RatMatrix::zero(m, m);
    for i in 0..m {
        for k in 0..m {
            ct.set(k, i, cr.get(i, k).clone());
        }
    }
    if !cr.mul(&j)?.mul(&ct)?.sub(&j)?.is_integral() {
        return Ok(false);
    }
    // row convention here, column convention in GroupAutomorphism
    Ok(GroupAutomorphism::new(s.total.clone(), c.transpose()).is_ok())
}

/// det(c) mod n_1 for a form-preserving c; the determinant lemma says this
/// is always 1. Errors if the form is not preserved.
pub fn det_mod_n1(c: &IntMatrix, s: &SymplecticSpace) -> Result<BigInt> {
    if !preserves_form(c, s)? {
        return Err(Error::InvalidInput(
            "matrix does not preserve the symplectic form".into(),
        ));
    }
    let d = det(c)?;
    match s.base.factors().first() {
        Some(n1) => Ok(d.mod_floor(n1)),
        None => Ok(BigInt::one()),
    }
}

/// All residue matrices (entry (i, j) reduced modulo the j-th factor of the
/// total group) inducing form-preserving automorphisms, in lexicographic
/// order of their rows with respect to the canonical element enumeration.
///
/// Rows are searched as generator images constrained to elements killed by
/// the generator's order, pruning on the pairwise form values before the
/// final automorphism check.
pub fn enumerate_form_automorphisms(s: &SymplecticSpace, bound: u64) -> Result<Vec<IntMatrix>> {
    let order = s
        .total
        .order()
        .ok_or_else(|| Error::InvalidInput("total group must be finite".into()))?;
    if order > BigInt::from(bound) {
        return Err(Error::InvalidInput(format!(
            "total group order {order} exceeds the cap {bound}"
        )));
    }
    let m = s.total.rank();
    if m == 0 {
        return Ok(vec![IntMatrix::identity(0)]);
    }
    let elements = s.total.elements()?;
    // candidate images per row: elements killed by the row generator's order
    let candidates: Vec<Vec<usize>> = (0..m)
        .map(|i| {
            let ni = &s.total.factors()[i];
            (0..elements.len())
                .filter(|&e| elements[e].scale(ni).is_zero())
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(m);
    search_rows(s, &elements, &candidates, &mut chosen, &mut out)?;
    Ok(out)
}

fn search_rows(
    s: &SymplecticSpace,
    elements: &[GroupElement],
    candidates: &[Vec<usize>],
    chosen: &mut Vec<usize>,
    out: &mut Vec<IntMatrix>,
) -> Result<()> {
    let m = s.total.rank();
    let i = chosen.len();
    if i == m {
        let rows: Vec<Vec<BigInt>> = chosen
            .iter()
            .map(|&e| elements[e].coords().to_vec())
            .collect();
        let mat = IntMatrix::from_bigint_rows(&rows)?;
        if GroupAutomorphism::new(s.total.clone(), mat.transpose()).is_ok() {
            out.push(mat);
        }
        return Ok(());
    }
    'cand: for &e in &candidates[i] {
        for (j, &prev) in chosen.iter().enumerate() {
            let want = &s.form.gram[j][i];
            if &eval_form(&s.form, &elements[prev], &elements[e])? != want {
                continue 'cand;
            }
        }
        chosen.push(e);
        search_rows(s, elements, candidates, chosen, out)?;
        chosen.pop();
    }
    Ok(())
}

/// The induced action on the dual group under the basis pairing
/// `e_i* (e_j) = delta_ij / n_i`: if `psi(e_i) = sum_j c_ij e_j` then
/// `psi*(e_j*) = sum_i (c_ij n_i / n_j) e_i*`. The result is the weighted
/// transpose, integral whenever `c` is well defined, with the same
/// determinant as `c`.
pub fn dual_action_matrix(c: &IntMatrix, s: &SymplecticSpace) -> Result<IntMatrix> {
    let m = s.total.rank();
    if c.rows() != m || c.cols() != m {
        return Err(Error::DimensionMismatch(format!(
            "expected a {m}x{m} matrix, got {}x{}",
            c.rows(),
            c.cols()
        )));
    }
    let factors = s.total.factors();
    let mut d = IntMatrix::zero(m, m);
    for j in 0..m {
        for i in 0..m {
            let prod = c.get(i, j) * &factors[i];
            let (q, r) = prod.div_mod_floor(&factors[j]);
            if !r.is_zero() {
                return Err(Error::InvalidInput(
                    "matrix does not induce a well-defined dual action".into(),
                ));
            }
            d.set(j, i, q.mod_floor(&factors[i]));
        }
    }
    Ok(d)
}
