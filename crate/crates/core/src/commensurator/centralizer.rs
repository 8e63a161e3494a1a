use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::SearchBound;
use crate::error::{Error, Result};
use crate::exact::lattice::{integer_kernel, saturate_and_complete};
use crate::exact::{IntMatrix, RatMatrix};
use crate::spectra::{is_finite_order, Cyclotomic};
use crate::vcyc::{classify, VCTag};

/// A pivot unknown expressed through free unknowns:
/// `denom * g[pivot] = sum(coef_f * g[f])`.
struct PivotRule {
    pivot: usize,
    denom: BigInt,
    terms: Vec<(usize, BigInt)>,
}

/// All `g` with `det g = 1`, `|g_ij| <= bound` and `A g = g C`.
///
/// The linear constraint is solved exactly first; only the free unknowns of
/// its solution space are enumerated, and each pivot unknown is checked for
/// integrality and size as soon as the free unknowns it depends on are set.
pub(crate) fn intertwiners(a: &IntMatrix, c: &IntMatrix, bound: u32) -> Result<Vec<IntMatrix>> {
    a.require_square()?;
    c.require_square()?;
    let n = a.dim();
    if c.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: c.dim() });
    }
    let var = |r: usize, s: usize| r * n + s;
    let mut system = RatMatrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let eq = var(i, j);
            for k in 0..n {
                let add = |m: &mut RatMatrix, v: usize, x: &BigInt| {
                    let cur = m.get(eq, v).clone();
                    m.set(eq, v, cur + BigRational::from_integer(x.clone()));
                };
                add(&mut system, var(k, j), a.get(i, k));
                add(&mut system, var(i, k), &-c.get(k, j));
            }
        }
    }
    let (rref, pivots) = system.rref();
    let free: Vec<usize> = (0..n * n).filter(|v| !pivots.contains(v)).collect();

    // rule r becomes checkable once all free unknowns up to `ready[r]` are set
    let mut rules_at: Vec<Vec<PivotRule>> = (0..=free.len()).map(|_| Vec::new()).collect();
    for (row, &p) in pivots.iter().enumerate() {
        let coefs: Vec<(usize, BigRational)> = free
            .iter()
            .enumerate()
            .filter(|(_, &f)| !rref.get(row, f).is_zero())
            .map(|(fi, &f)| (fi, -rref.get(row, f).clone()))
            .collect();
        let denom = coefs.iter().fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
        let depth = coefs.iter().map(|(fi, _)| fi + 1).max().unwrap_or(0);
        let terms = coefs
            .into_iter()
            .map(|(fi, q)| (fi, (q * BigRational::from_integer(denom.clone())).to_integer()))
            .collect();
        rules_at[depth].push(PivotRule { pivot: p, denom, terms });
    }

    let e = BigInt::from(bound);
    let mut values = vec![BigInt::zero(); n * n];
    let mut free_vals = vec![BigInt::zero(); free.len()];
    let mut out = Vec::new();
    search(0, &free, &rules_at, &e, &mut free_vals, &mut values, n, &mut out);
    out.sort_by(|x: &IntMatrix, y| x.entries().cmp(y.entries()));
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    depth: usize,
    free: &[usize],
    rules_at: &[Vec<PivotRule>],
    e: &BigInt,
    free_vals: &mut [BigInt],
    values: &mut [BigInt],
    n: usize,
    out: &mut Vec<IntMatrix>,
) {
    for rule in &rules_at[depth] {
        let num: BigInt = rule.terms.iter().map(|(fi, k)| k * &free_vals[*fi]).sum();
        let (q, r) = num.div_rem(&rule.denom);
        if !r.is_zero() || q.abs() > *e {
            return;
        }
        values[rule.pivot] = q;
    }
    if depth == free.len() {
        let g = IntMatrix::from_fn(n, n, |i, j| values[i * n + j].clone());
        if g.det().is_one() {
            out.push(g);
        }
        return;
    }
    let mut x = -e.clone();
    while x <= *e {
        free_vals[depth] = x.clone();
        values[free[depth]] = x.clone();
        search(depth + 1, free, rules_at, e, free_vals, values, n, out);
        x += 1;
    }
}

/// Every `B` in SL(n,Z) with entries bounded by `entry_bound` and `BA = AB`,
/// sorted and without duplicates.
pub fn centralizer_enum(a: &IntMatrix, bound: SearchBound) -> Result<Vec<IntMatrix>> {
    bound.validate()?;
    intertwiners(a, a, bound.entry_bound)
}

/// Bounded elements `g` with `g^{-1} A g = A^{-1}`.
pub fn inverting_enum(a: &IntMatrix, bound: SearchBound) -> Result<Vec<IntMatrix>> {
    bound.validate()?;
    intertwiners(a, &a.inverse_unimodular()?, bound.entry_bound)
}

/// Evidence about the abelian group generated by a set of commuting
/// matrices: a greedily chosen independent subset and the finite-order
/// elements seen.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankEvidence {
    /// Lower bound for the free rank, valid up to `power_bound`.
    pub rank_lower_bound: usize,
    pub independent: Vec<IntMatrix>,
    /// Non-identity elements of finite order.
    pub torsion: Vec<IntMatrix>,
    pub power_bound: u32,
}

impl RankEvidence {
    /// Splits `elements` (assumed pairwise commuting) into torsion and a
    /// greedily grown set with no relation `u^i = prod s_j^{e_j}` for
    /// `1 <= i <= K`, `|e_j| <= K`.
    pub fn from_commuting(elements: &[IntMatrix], power_bound: u32) -> Result<Self> {
        let mut torsion = Vec::new();
        let mut infinite = Vec::new();
        for g in elements {
            if is_finite_order(g) {
                if !g.is_identity() {
                    torsion.push(g.clone());
                }
            } else {
                infinite.push(g.clone());
            }
        }
        let independent = independent_units(&infinite, power_bound)?;
        Ok(RankEvidence { rank_lower_bound: independent.len(), independent, torsion, power_bound })
    }
}

/// Products `prod s_j^{e_j}`, `|e_j| <= k`, of commuting unimodular matrices.
fn power_products(gens: &[IntMatrix], k: i64) -> Result<HashSet<IntMatrix>> {
    let n = gens.first().map_or(0, IntMatrix::dim);
    let mut acc: HashSet<IntMatrix> = HashSet::from([IntMatrix::identity(n)]);
    for g in gens {
        let powers = (-k..=k).map(|e| g.pow(e)).collect::<Result<Vec<_>>>()?;
        acc = acc.iter().flat_map(|x| powers.iter().map(move |p| x * p)).collect();
    }
    Ok(acc)
}

/// Greedy selection of multiplicatively independent elements among pairwise
/// commuting infinite-order matrices, with relations searched up to
/// exponent `power_bound`.
pub fn independent_units(candidates: &[IntMatrix], power_bound: u32) -> Result<Vec<IntMatrix>> {
    let k = i64::from(power_bound);
    let mut chosen: Vec<IntMatrix> = Vec::new();
    let mut span = HashSet::new();
    for u in candidates {
        if chosen.is_empty() {
            chosen.push(u.clone());
            span = power_products(&chosen, k)?;
            continue;
        }
        let mut p = u.clone();
        let mut related = false;
        for _ in 1..=k {
            if span.contains(&p) {
                related = true;
                break;
            }
            p = &p * u;
        }
        if !related {
            chosen.push(u.clone());
            span = power_products(&chosen, k)?;
        }
    }
    Ok(chosen)
}

/// Generators of a finite-index subgroup of the centralizer of `A`, found by
/// structured search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralizerGenerators {
    pub class: VCTag,
    /// Independent infinite-order generators.
    pub free: Vec<IntMatrix>,
    /// Non-identity finite-order elements found.
    pub torsion: Vec<IntMatrix>,
    /// Every unit found, before the independence selection.
    pub units_found: Vec<IntMatrix>,
    pub bounds_used: SearchBound,
}

impl CentralizerGenerators {
    pub fn all(&self) -> Vec<IntMatrix> {
        self.free.iter().chain(&self.torsion).cloned().collect()
    }
}

fn sort_key(m: &IntMatrix) -> (BigInt, Vec<BigInt>) {
    (m.max_abs_entry(), m.entries().to_vec())
}

/// Units `aI + bA + cA^2` with determinant 1 and `|a|,|b|,|c| <= E`.
fn polynomial_units(a: &IntMatrix, e: i64) -> Vec<IntMatrix> {
    let id = IntMatrix::identity(3);
    let a2 = a * a;
    let mut out = Vec::new();
    for x in -e..=e {
        for y in -e..=e {
            for z in -e..=e {
                let u = &(&id.scale(&x.into()) + &a.scale(&y.into())) + &a2.scale(&z.into());
                if u.det().is_one() {
                    out.push(u);
                }
            }
        }
    }
    out
}

/// Unimodular `Q` with `Q^{-1} A Q = [[λ, r], [0, M]]`, where `λ = ±1` is the
/// unique root-of-unity eigenvalue of `A`.
pub(crate) fn eigen_frame(a: &IntMatrix, lambda: i64) -> Result<IntMatrix> {
    let shifted = a - &IntMatrix::identity(3).scale(&lambda.into());
    let v = integer_kernel(&shifted);
    if v.cols() != 1 {
        return Err(Error::WrongClass(format!("eigenvalue {lambda} is not simple")));
    }
    let (mut q, _) = saturate_and_complete(&v);
    if !q.det().is_one() {
        for i in 0..3 {
            let x = -q.get(i, 2).clone();
            q.set(i, 2, x);
        }
    }
    Ok(q)
}

/// The unique lift `[[ε, s], [0, N]]`, `ε = det N`, commuting with the block
/// form `[[λ, r], [0, M]]`, if it is integral. Solves
/// `(M^t - λ I) s^t = (N^t - ε I) r^t`.
pub(crate) fn lift_block(frame: &IntMatrix, n: &IntMatrix) -> Result<Option<IntMatrix>> {
    let lambda = frame.get(0, 0).clone();
    let m = frame.block(1, 3, 1, 3);
    let r: Vec<BigInt> = vec![frame.get(0, 1).clone(), frame.get(0, 2).clone()];
    let eps = n.det();
    let id2 = IntMatrix::identity(2);
    let lhs = (&m.transpose() - &id2.scale(&lambda)).to_rat();
    let rhs_m = &n.transpose() - &id2.scale(&eps);
    let rhs: Vec<BigInt> = (0..2).map(|i| (0..2).map(|j| rhs_m.get(i, j) * &r[j]).sum()).collect();
    let (_, inv) = lhs.det_inv();
    let inv = inv.ok_or(Error::Singular)?;
    let s: Vec<BigRational> = (0..2)
        .map(|i| (0..2).map(|j| inv.get(i, j) * BigRational::from_integer(rhs[j].clone())).sum())
        .collect();
    if s.iter().any(|x| !x.is_integer()) {
        return Ok(None);
    }
    let s: Vec<BigInt> = s.iter().map(BigRational::to_integer).collect();
    Ok(Some(IntMatrix::from_fn(3, 3, |i, j| match (i, j) {
        (0, 0) => eps.clone(),
        (0, _) => s[j - 1].clone(),
        (_, 0) => BigInt::zero(),
        _ => n.get(i - 1, j - 1).clone(),
    })))
}

/// Units `αI + βM` of the 2x2 block, `det = ±1`, `|α|,|β| <= E`.
fn block_units(m: &IntMatrix, e: i64) -> Vec<IntMatrix> {
    let id = IntMatrix::identity(2);
    let mut out = Vec::new();
    for x in -e..=e {
        for y in -e..=e {
            let u = &id.scale(&x.into()) + &m.scale(&y.into());
            if u.is_unimodular() {
                out.push(u);
            }
        }
    }
    out
}

/// Generators of a finite-index subgroup of `C(A)` for the semisimple
/// classes. For I1/I2 the units of `Z[A]` in a coefficient box; for I1t the
/// units of the 2x2 block lifted through the commutation system.
pub fn structured_centralizer(a: &IntMatrix, bound: SearchBound) -> Result<CentralizerGenerators> {
    bound.validate()?;
    let class = classify(a)?;
    let e = i64::from(bound.entry_bound);
    let mut units = match class.tag {
        VCTag::I1 | VCTag::I2 => polynomial_units(a, e),
        VCTag::I1t => {
            let lambda = if class.spectral.cyclotomic_factors.contains(&Cyclotomic::Phi1) { 1 } else { -1 };
            let q = eigen_frame(a, lambda)?;
            let q_inv = q.inverse_unimodular()?;
            let frame = &(&q_inv * a) * &q;
            let m = frame.block(1, 3, 1, 3);
            let mut lifted = Vec::new();
            for n in block_units(&m, e) {
                if let Some(b0) = lift_block(&frame, &n)? {
                    let b = &(&q * &b0) * &q_inv;
                    debug_assert!(b.commutes_with(a));
                    lifted.push(b);
                }
            }
            lifted
        }
        VCTag::I2t | VCTag::I3 => return Err(Error::WrongClass(class.tag.to_string())),
    };
    units.sort_by_key(sort_key);
    units.dedup();
    // prefer A itself as the first free generator
    if let Some(pos) = units.iter().position(|u| u == a) {
        let u = units.remove(pos);
        units.insert(0, u);
    }
    let evidence = RankEvidence::from_commuting(&units, bound.power_bound)?;
    if evidence.independent.is_empty() {
        return Err(Error::BoundExhausted(format!(
            "no infinite-order unit with entries/coefficients within {}",
            bound.entry_bound
        )));
    }
    Ok(CentralizerGenerators {
        class: class.tag,
        free: evidence.independent,
        torsion: evidence.torsion,
        units_found: units,
        bounds_used: bound,
    })
}

/// Free-rank evidence for the brute-force centralizer of `A`.
pub fn free_rank_evidence(a: &IntMatrix, bound: SearchBound) -> Result<RankEvidence> {
    let mut elems = centralizer_enum(a, bound)?;
    elems.sort_by_key(sort_key);
    if let Some(pos) = elems.iter().position(|u| u == a) {
        let u = elems.remove(pos);
        elems.insert(0, u);
    }
    RankEvidence::from_commuting(&elems, bound.power_bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{e12, e13, e23};

    fn b(e: u32) -> SearchBound {
        SearchBound { power_bound: 12, entry_bound: e }
    }

    /// Naive scan over every matrix with entries in [-1, 1].
    fn naive(a: &IntMatrix) -> Vec<IntMatrix> {
        let mut out = Vec::new();
        for code in 0..3usize.pow(9) {
            let mut c = code;
            let g = IntMatrix::from_fn(3, 3, |_, _| {
                let d = (c % 3) as i64 - 1;
                c /= 3;
                BigInt::from(d)
            });
            if g.det().is_one() && g.commutes_with(a) {
                out.push(g);
            }
        }
        out.sort_by(|x, y| x.entries().cmp(y.entries()));
        out
    }

    #[test]
    fn agrees_with_naive_scan() {
        for a in [e13(1), IntMatrix::lit([[1, 1, 0], [0, 1, 1], [0, 0, 1]]), IntMatrix::lit([[0, 0, 1], [1, 0, 1], [0, 1, 0]])] {
            assert_eq!(centralizer_enum(&a, b(1)).unwrap(), naive(&a));
        }
    }

    #[test]
    fn central_elementary_centralizer() {
        let c = centralizer_enum(&e13(1), b(1)).unwrap();
        assert!(c.contains(&IntMatrix::identity(3)));
        assert!(c.contains(&(&e12(1) * &e13(1))));
        assert!(c.contains(&IntMatrix::lit([[-1, 0, 0], [0, 1, 0], [0, 0, -1]])));
        assert!(c.contains(&e23(-1)));
        // shape [[c, x, z], [0, 1, y], [0, 0, c]], c = ±1
        assert_eq!(c.len(), 2 * 27);
        for g in &c {
            assert!(g.get(1, 0).is_zero() && g.get(2, 0).is_zero() && g.get(2, 1).is_zero());
            assert!(g.get(1, 1).is_one() && g.get(0, 0) == g.get(2, 2));
        }
    }

    #[test]
    fn regular_unipotent_centralizer() {
        let a = IntMatrix::lit([[1, 1, 0], [0, 1, 1], [0, 0, 1]]);
        let c = centralizer_enum(&a, b(2)).unwrap();
        assert_eq!(c.len(), 25);
        for g in &c {
            assert!(g.is_upper_unitriangular() && g.get(0, 1) == g.get(1, 2));
        }
    }

    #[test]
    fn cubic_units() {
        let a = IntMatrix::lit([[0, 0, 1], [1, 0, 1], [0, 1, 0]]);
        let g = structured_centralizer(&a, b(3)).unwrap();
        assert_eq!(g.free, vec![a.clone()]);
        assert!(g.torsion.is_empty());

        let a = IntMatrix::lit([[0, 0, 1], [1, 0, 3], [0, 1, 0]]);
        let g = structured_centralizer(&a, b(3)).unwrap();
        assert_eq!(g.free.len(), 2);
        assert_eq!(g.free[0], a);
        for u in &g.free {
            assert!(u.commutes_with(&a) && u.det().is_one());
        }
    }

    #[test]
    fn block_lifts() {
        let a = IntMatrix::lit([[1, 0, 0], [0, 2, 1], [0, 1, 1]]);
        let frame = a.clone();
        let m = frame.block(1, 3, 1, 3);
        assert_eq!(lift_block(&frame, &m).unwrap(), Some(a.clone()));
        let minus = IntMatrix::lit([[-1, 0], [0, -1]]);
        assert_eq!(lift_block(&frame, &minus).unwrap(), Some(IntMatrix::lit([[1, 0, 0], [0, -1, 0], [0, 0, -1]])));

        let g = structured_centralizer(&a, b(3)).unwrap();
        assert_eq!(g.free.len(), 1);
        assert!(g.torsion.contains(&IntMatrix::lit([[1, 0, 0], [0, -1, 0], [0, 0, -1]])));
    }

    #[test]
    fn block_lift_in_a_nontrivial_frame() {
        let a = IntMatrix::lit([[1, 0, 0], [0, 2, 1], [0, 1, 1]]).conjugate_by(&(&e12(2) * &e23(-1))).unwrap();
        let g = structured_centralizer(&a, b(3)).unwrap();
        for u in g.all() {
            assert!(u.commutes_with(&a) && u.det().is_one());
        }
        assert_eq!(g.free.len(), 1);
    }

    #[test]
    fn wrong_class() {
        assert!(matches!(structured_centralizer(&e13(1), b(3)), Err(Error::WrongClass(_))));
    }

    #[test]
    fn inverting_elements() {
        let a = IntMatrix::lit([[1, 1, 0], [0, 1, 1], [0, 0, 1]]);
        let inv = inverting_enum(&a, b(2)).unwrap();
        assert!(!inv.is_empty());
        let a_inv = a.pow(-1).unwrap();
        for g in &inv {
            assert_eq!(&(&g.pow(-1).unwrap() * &a) * g, a_inv);
        }
        let s = IntMatrix::lit([[0, 0, 1], [1, 0, 1], [0, 1, 0]]);
        assert!(inverting_enum(&s, b(2)).unwrap().is_empty());
    }
}
