//! Exhaustive oracle suites at bounded sizes, shared by the CLI `selftest`
//! subcommand and the acceptance tests: elementary-operation orbit
//! completeness, symplectic determinant enumeration, and the quantum-torus
//! criterion agreement. Every suite is deterministic.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::abelian::{is_generating, FinGenAbGroup, GroupElement};
use crate::error::{Error, Result};
use crate::exterior::{apply_elem_op, replay, synthesize_elem_ops, wedge, ElementaryOp};
use crate::matrix::pfaffian_congruence_check;
use crate::qtorus::{k_isomorphic, wedge_criterion, QuantumTorusSpec};
use crate::symplectic::{det_mod_n1, enumerate_form_automorphisms, SymplecticSpace};

/// Outcome of one suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub detail: String,
}

/// All generating d-tuples of a finite group, in lexicographic order of the
/// canonical element enumeration.
pub fn generating_tuples(g: &FinGenAbGroup, d: usize) -> Result<Vec<Vec<GroupElement>>> {
    let elems = g.elements()?;
    let mut out = Vec::new();
    let mut idx = vec![0usize; d];
    loop {
        let t: Vec<GroupElement> = idx.iter().map(|&i| elems[i].clone()).collect();
        if is_generating(&t, g)? {
            out.push(t);
        }
        let mut p = d;
        loop {
            if p == 0 {
                return Ok(out);
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

/// BFS orbit partition of the given tuples under all elementary operations
/// with multipliers modulo the group exponent. Returns one orbit id per
/// tuple.
pub fn orbit_partition(
    tuples: &[Vec<GroupElement>],
    g: &FinGenAbGroup,
    d: usize,
) -> Result<Vec<usize>> {
    let exp = g
        .exponent()
        .and_then(|e| e.to_i64())
        .ok_or_else(|| Error::InvalidInput("group must be finite".into()))?;
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
        orbit[start] = next_orbit;
        let mut queue = VecDeque::from([start]);
        while let Some(cur) = queue.pop_front() {
            for i in 0..d {
                for j in 0..d {
                    if i == j {
                        continue;
                    }
                    for m in 1..exp {
                        let op = ElementaryOp::new(i, j, BigInt::from(m))?;
                        let t2 = apply_elem_op(&tuples[cur], &op)?;
                        let nb = *index.get(&key(&t2)).ok_or_else(|| {
                            Error::Internal("operation left the generating set".into())
                        })?;
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
    Ok(orbit)
}

/// Check that elementary-operation orbits coincide exactly with fibers of
/// the wedge map, and replay synthesized operation sequences on up to
/// `max_pairs` within-fiber pairs. Returns (tuple count, orbit count,
/// replayed pair count).
pub fn orbit_fiber_check(
    g: &FinGenAbGroup,
    d: usize,
    max_pairs: usize,
) -> Result<(usize, usize, usize)> {
    let tuples = generating_tuples(g, d)?;
    let orbits = orbit_partition(&tuples, g, d)?;
    let mut orbit_to_wedge: HashMap<usize, Vec<BigInt>> = HashMap::new();
    let mut wedge_to_orbit: HashMap<Vec<BigInt>, usize> = HashMap::new();
    let mut fibers: HashMap<Vec<BigInt>, Vec<usize>> = HashMap::new();
    for (i, (t, &o)) in tuples.iter().zip(&orbits).enumerate() {
        let w = wedge(t)?.coords().to_vec();
        match orbit_to_wedge.get(&o) {
            None => {
                orbit_to_wedge.insert(o, w.clone());
            }
            Some(prev) if *prev == w => {}
            Some(prev) => {
                return Err(Error::Internal(format!(
                    "one orbit maps to two wedges: {prev:?} and {w:?}"
                )))
            }
        }
        match wedge_to_orbit.get(&w) {
            None => {
                wedge_to_orbit.insert(w.clone(), o);
            }
            Some(&prev) if prev == o => {}
            Some(_) => {
                return Err(Error::Internal(format!(
                    "wedge fiber {w:?} splits into several orbits"
                )))
            }
        }
        fibers.entry(w).or_default().push(i);
    }
    let orbit_count = orbit_to_wedge.len();
    // replay synthesized operations on within-fiber pairs
    let mut replayed = 0;
    'outer: for members in fibers.values() {
        for pair in members.windows(2) {
            let a = &tuples[pair[0]];
            let b = &tuples[pair[1]];
            let ops = synthesize_elem_ops(a, b)?;
            if replay(&ops, a)? != *b {
                return Err(Error::Internal("replay mismatch".into()));
            }
            replayed += 1;
            if replayed >= max_pairs {
                break 'outer;
            }
        }
    }
    Ok((tuples.len(), orbit_count, replayed))
}

/// Enumerate all form-preserving automorphisms of the standard symplectic
/// space on `base`; verify det = 1 (mod n_1) directly and along the
/// Pfaffian route on each. Returns the number of automorphisms.
pub fn symplectic_det_check(base: &FinGenAbGroup, cap: u64) -> Result<usize> {
    let s = SymplecticSpace::standard(base)?;
    let all = enumerate_form_automorphisms(&s, cap)?;
    let degrees = base.factors().to_vec();
    for c in &all {
        let d = det_mod_n1(c, &s)?;
        if !d.is_one() {
            return Err(Error::Internal(format!(
                "form-preserving automorphism with det = {d} (mod n_1): {c:?}"
            )));
        }
        if !degrees.is_empty() {
            let pf = pfaffian_congruence_check(c, &degrees)?;
            if pf != d {
                return Err(Error::Internal(
                    "pfaffian route disagrees with the determinant".into(),
                ));
            }
        }
    }
    Ok(all.len())
}

/// Exhaustively compare `wedge_criterion` with the product criterion for
/// every degree chain with at most `max_r` factors and last degree at most
/// `max_n`, over all unit exponent tuples. Returns the number of specs.
pub fn qtorus_agreement_check(max_r: usize, max_n: i64) -> Result<usize> {
    let mut checked = 0;
    let mut chains: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..max_r {
        let mut next = Vec::new();
        for c in &chains {
            let lo = *c.last().unwrap_or(&2);
            for n in lo..=max_n {
                if n % lo == 0 {
                    let mut c2 = c.clone();
                    c2.push(n);
                    next.push(c2);
                }
            }
        }
        for chain in &next {
            checked += qtorus_agreement_for_chain(chain)?;
        }
        chains = next;
    }
    Ok(checked)
}

fn qtorus_agreement_for_chain(degrees: &[i64]) -> Result<usize> {
    let unit_lists: Vec<Vec<i64>> = degrees
        .iter()
        .map(|&n| (1..n).filter(|&m| m.gcd(&n) == 1).collect())
        .collect();
    let mut idx = vec![0usize; degrees.len()];
    let mut checked = 0;
    loop {
        let ms: Vec<i64> = idx.iter().zip(&unit_lists).map(|(&i, u)| u[i]).collect();
        let spec = QuantumTorusSpec::from_ints(degrees, &ms)?;
        let product = k_isomorphic(&spec);
        let wedge = wedge_criterion(&spec)?;
        if product != wedge {
            return Err(Error::Internal(format!(
                "criteria disagree on degrees {degrees:?}, exponents {ms:?}: product {product}, wedge {wedge}"
            )));
        }
        checked += 1;
        let mut p = idx.len();
        loop {
            if p == 0 {
                return Ok(checked);
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] < unit_lists[p].len() {
                break;
            }
            idx[p] = 0;
        }
    }
}

/// Run the three suites with caps scaled by `bound` (a rough ceiling on
/// enumeration sizes; the default is 64).
pub fn run_selftest(bound: u64) -> Vec<SuiteReport> {
    let mut reports = Vec::new();

    let orbit_cases: &[(&[i64], usize)] = &[
        (&[2, 2], 2),
        (&[2, 2], 3),
        (&[3, 3], 2),
        (&[2, 4], 2),
        (&[3, 3], 3),
        (&[2, 4], 3),
    ];
    let mut cases = 0;
    let mut detail = String::new();
    let mut passed = true;
    for &(factors, d) in orbit_cases {
        let g = FinGenAbGroup::from_ints(factors);
        let size = g.order().and_then(|o| o.to_u64()).unwrap_or(u64::MAX);
        if size.saturating_pow(d as u32) > bound * bound {
            continue;
        }
        match orbit_fiber_check(&g, d, 50) {
            Ok((tuples, orbits, replayed)) => {
                cases += 1;
                detail.push_str(&format!(
                    "{factors:?} d={d}: {tuples} tuples, {orbits} orbits, {replayed} replays; "
                ));
            }
            Err(e) => {
                passed = false;
                detail.push_str(&format!("{factors:?} d={d}: FAILED: {e}; "));
            }
        }
    }
    reports.push(SuiteReport {
        name: "elemops-orbits".into(),
        passed,
        cases,
        detail: detail.trim_end_matches("; ").to_string(),
    });

    let sympl_cases: &[&[i64]] = &[&[2], &[3], &[4], &[2, 2], &[5], &[2, 4]];
    let mut cases = 0;
    let mut detail = String::new();
    let mut passed = true;
    for &base in sympl_cases {
        let g = FinGenAbGroup::from_ints(base);
        let total_order = g
            .order()
            .map(|o| o.pow(2))
            .and_then(|o| o.to_u64())
            .unwrap_or(u64::MAX);
        if total_order > bound {
            continue;
        }
        match symplectic_det_check(&g, bound) {
            Ok(count) => {
                cases += 1;
                detail.push_str(&format!("{base:?}: {count} automorphisms, all det=1; "));
            }
            Err(e) => {
                passed = false;
                detail.push_str(&format!("{base:?}: FAILED: {e}; "));
            }
        }
    }
    reports.push(SuiteReport {
        name: "symplectic-enumeration".into(),
        passed,
        cases,
        detail: detail.trim_end_matches("; ").to_string(),
    });

    let max_n = (bound as i64 / 8).clamp(2, 12);
    let report = match qtorus_agreement_check(2, max_n) {
        Ok(checked) => SuiteReport {
            name: "qtorus-agreement".into(),
            passed: true,
            cases: checked,
            detail: format!("r <= 2, n_r <= {max_n}: {checked} specs, criteria agree"),
        },
        Err(e) => SuiteReport {
            name: "qtorus-agreement".into(),
            passed: false,
            cases: 0,
            detail: format!("FAILED: {e}"),
        },
    };
    reports.push(report);
    reports
}
