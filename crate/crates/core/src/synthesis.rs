//! Constructing explicit voter profiles that realize a target majority.
//!
//! Unbalanced generators go through single-pair bias blocks: each support
//! entry of the bias certificate is mapped onto the requested pair by the
//! least relabeling and averaged over the pair's stabilizer, which leaves
//! exactly one entry of the induced matrix above 1/2. Balanced generators go
//! through directed-triangle averages fanned into cycle distributions, one
//! covering cycle per target edge. Either way the weighted profile is scaled
//! to integers and the result is re-verified before it is returned.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::balance::{cycle_through_edge, is_balanced, is_pseudo_balanced};
use crate::choice::{check_stabilizer_cap, sym_closure, ChoiceFunction, Permutation};
use crate::error::{Error, Result};
use crate::prob::ProbMatrix;
use crate::profile::{IntegerProfile, WeightedProfile};
use crate::rational::{frac, half, Rational};
use crate::realize::{bias_certificate, decide_membership, MembershipReason};
use crate::verify::verify_integer;

/// One synthesis stage: a labeled distribution and the matrix it induces.
#[derive(Clone, Debug)]
pub struct TraceStage {
    pub label: String,
    pub profile: WeightedProfile,
    pub matrix: ProbMatrix,
}

/// The audit trail of a synthesis run.
#[derive(Clone, Debug)]
pub struct SynthesisTrace {
    pub stages: Vec<TraceStage>,
    pub final_profile: IntegerProfile,
}

fn stage(label: String, profile: WeightedProfile) -> TraceStage {
    let matrix = profile.induced_matrix();
    TraceStage {
        label,
        profile,
        matrix,
    }
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product::<i64>().max(1)
}

/// A distribution over permuted copies of `d` whose induced matrix is above
/// 1/2 at the ordered pair `(x, y)` and exactly 1/2 everywhere else.
pub fn pair_bias_profile(d: &ChoiceFunction, x: usize, y: usize) -> Result<WeightedProfile> {
    if x == y {
        return Err(Error::SamePair);
    }
    let n = d.n();
    for &i in &[x, y] {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
    }
    let cert = bias_certificate(d)?.ok_or(Error::BalancedFamily)?;
    check_stabilizer_cap(n - 2)?;

    // the certificate biases (x', y') by its side-1 mass; when that mass is
    // below 1/2, playing the roles swapped turns it into a bias above 1/2 at
    // (x, y) without leaving the family
    let (xp, yp) = if cert.r1 > half() { (x, y) } else { (y, x) };

    let stabilizer = Permutation::fixing(n, &[xp, yp]);
    let per_voter = frac(1, factorial(n - 2));
    let mut acc: BTreeMap<ChoiceFunction, Rational> = BTreeMap::new();
    for (side, entries) in [(0usize, &cert.support0), (1usize, &cert.support1)] {
        for entry in entries {
            let (u, v) = entry.witness;
            debug_assert_eq!(d.winner(u, v), Some(if side == 1 { v } else { u }));
            let sigma = Permutation::least_mapping(n, &[u, v], &[xp, yp])?;
            let base = d.permuted(&sigma);
            let w = &entry.weight * &per_voter;
            for pi in &stabilizer {
                *acc.entry(base.permuted(pi)).or_insert_with(Rational::zero) += &w;
            }
        }
    }
    WeightedProfile::from_map(n, acc)
}

/// A distribution over permuted copies of a balanced full `d` inducing the
/// matrix that is 1 exactly on the directed triangle `(x, y), (y, z), (z, x)`
/// and 1/2 elsewhere: map a directed triangle of `d` onto the requested one
/// and average over the stabilizer of the three vertices.
pub fn triangle_profile(
    d: &ChoiceFunction,
    x: usize,
    y: usize,
    z: usize,
) -> Result<WeightedProfile> {
    let n = d.n();
    if x == y || y == z || x == z {
        return Err(Error::RepeatedVertex);
    }
    for &i in &[x, y, z] {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
    }
    if !d.is_full() {
        return Err(Error::NotFull);
    }
    if !is_balanced(d) {
        return Err(Error::NotBalanced);
    }
    check_stabilizer_cap(n.saturating_sub(3))?;

    let triangle = find_directed_triangle(d).ok_or(Error::BalancedTriangleMissing)?;
    let sigma = Permutation::least_mapping(n, &triangle, &[x, y, z])?;
    let base = d.permuted(&sigma);
    let stabilizer = Permutation::fixing(n, &[x, y, z]);
    let w = frac(1, stabilizer.len() as i64);
    let mut acc: BTreeMap<ChoiceFunction, Rational> = BTreeMap::new();
    for pi in &stabilizer {
        *acc.entry(base.permuted(pi)).or_insert_with(Rational::zero) += &w;
    }
    WeightedProfile::from_map(n, acc)
}

/// The lexicographically first directed triangle `(a, b, c)`:
/// `a` loses to `b`, `b` to `c`, `c` to `a`.
fn find_directed_triangle(d: &ChoiceFunction) -> Option<[usize; 3]> {
    let n = d.n();
    for a in 0..n {
        for b in 0..n {
            if b == a || d.winner(a, b) != Some(b) {
                continue;
            }
            for c in 0..n {
                if c == a || c == b {
                    continue;
                }
                if d.winner(b, c) == Some(c) && d.winner(c, a) == Some(a) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

/// The fan of triangle distributions along a simple cycle `x0, ..., xk`:
/// every cycle edge ends up at `1/2 + 1/(2(len - 2))`, every other pair at
/// exactly 1/2.
pub fn cycle_profile(d: &ChoiceFunction, cycle: &[usize]) -> Result<WeightedProfile> {
    if cycle.len() < 3 {
        return Err(Error::TooShort(cycle.len()));
    }
    let distinct: BTreeSet<usize> = cycle.iter().copied().collect();
    if distinct.len() != cycle.len() {
        return Err(Error::RepeatedVertex);
    }
    let fans: Vec<WeightedProfile> = (1..cycle.len() - 1)
        .map(|i| triangle_profile(d, cycle[0], cycle[i], cycle[i + 1]))
        .collect::<Result<_>>()?;
    let w = frac(1, fans.len() as i64);
    let parts: Vec<(Rational, &WeightedProfile)> = fans.iter().map(|p| (w.clone(), p)).collect();
    WeightedProfile::mix(&parts)
}

/// All permuted copies of a full `d`, with multiplicity `n! / |orbit|` each,
/// so every pair ties `n!/2` against `n!/2` exactly.
pub fn tie_profile(d: &ChoiceFunction) -> Result<IntegerProfile> {
    if !d.is_full() {
        return Err(Error::NotFull);
    }
    let orbit = sym_closure(d)?;
    let mult = BigUint::from(factorial(d.n()) as u64 / orbit.len() as u64);
    IntegerProfile::new(d.n(), orbit.into_iter().map(|c| (c, mult.clone())).collect())
}

/// Clear denominators of a distribution into integer multiplicities with the
/// identical majority relation.
pub fn rationalize(w: &WeightedProfile) -> IntegerProfile {
    w.rationalize()
}

fn verified(profile: IntegerProfile, target: &ChoiceFunction) -> Result<IntegerProfile> {
    let report = verify_integer(&profile, target)?;
    if !report.pass {
        return Err(Error::VerificationFailed(format!(
            "synthesized profile mismatches target on pairs {:?}",
            report.mismatches
        )));
    }
    Ok(profile)
}

/// Canonical rotation: start the cycle at its least vertex.
fn canonical_cycle(cycle: &[usize]) -> Vec<usize> {
    let pos = cycle
        .iter()
        .enumerate()
        .min_by_key(|&(_, v)| v)
        .map(|(i, _)| i)
        .expect("cycle is nonempty");
    let mut out = Vec::with_capacity(cycle.len());
    out.extend_from_slice(&cycle[pos..]);
    out.extend_from_slice(&cycle[..pos]);
    out
}

/// Realize a pseudo-balanced target over a balanced full generator: cover
/// every target edge by its shortest directed cycle inside the target and
/// mix the cycle distributions uniformly.
pub fn realize_balanced_target(d: &ChoiceFunction, c: &ChoiceFunction) -> Result<IntegerProfile> {
    if !d.is_full() {
        return Err(Error::NotFull);
    }
    if d.n() != c.n() {
        return Err(Error::DimensionMismatch(d.n(), c.n()));
    }
    if !is_balanced(d) {
        return Err(Error::NotBalanced);
    }
    if !is_pseudo_balanced(c) {
        return Err(Error::NotPseudoBalanced);
    }
    let (profile, _) = realize_balanced_staged(d, c)?;
    verified(profile, c)
}

fn realize_balanced_staged(
    d: &ChoiceFunction,
    c: &ChoiceFunction,
) -> Result<(IntegerProfile, Vec<TraceStage>)> {
    let edges = c.tor_edges();
    if edges.is_empty() {
        let profile = tie_profile(d)?;
        let stages = vec![stage("orbit tie".into(), profile.to_weighted())];
        return Ok((profile, stages));
    }
    let mut cycles: BTreeSet<Vec<usize>> = BTreeSet::new();
    for (u, v) in edges {
        let cycle = cycle_through_edge(c, u, v)
            .expect("every edge of a pseudo-balanced function lies on a cycle");
        cycles.insert(canonical_cycle(&cycle));
    }
    let mut stages = Vec::new();
    let mut parts = Vec::new();
    let w = frac(1, cycles.len() as i64);
    for cycle in &cycles {
        let p = cycle_profile(d, cycle)?;
        stages.push(stage(format!("cycle {cycle:?}"), p.clone()));
        parts.push((w.clone(), p));
    }
    let borrowed: Vec<(Rational, &WeightedProfile)> =
        parts.iter().map(|(w, p)| (w.clone(), p)).collect();
    let mixture = WeightedProfile::mix(&borrowed)?;
    stages.push(stage("mixture".into(), mixture.clone()));
    Ok((mixture.rationalize(), stages))
}

fn realize_unbalanced_staged(
    d: &ChoiceFunction,
    c: &ChoiceFunction,
) -> Result<(IntegerProfile, Vec<TraceStage>)> {
    let edges = c.tor_edges();
    debug_assert!(!edges.is_empty());
    let mut stages = Vec::new();
    let mut parts = Vec::new();
    let w = frac(1, edges.len() as i64);
    for &(u, v) in &edges {
        let p = pair_bias_profile(d, u, v)?;
        stages.push(stage(format!("bias ({u}, {v})"), p.clone()));
        parts.push((w.clone(), p));
    }
    let borrowed: Vec<(Rational, &WeightedProfile)> =
        parts.iter().map(|(w, p)| (w.clone(), p)).collect();
    let mixture = WeightedProfile::mix(&borrowed)?;
    stages.push(stage("mixture".into(), mixture.clone()));
    Ok((mixture.rationalize(), stages))
}

/// Realize `c` as the strict majority of an integer profile over the orbit
/// of the full generator `d`. Fails with `NotRealizable` exactly when the
/// membership decision is negative; the result is re-verified before return.
pub fn realize_target(d: &ChoiceFunction, c: &ChoiceFunction) -> Result<IntegerProfile> {
    Ok(realize_target_traced(d, c)?.0)
}

/// As `realize_target`, also returning the stage-by-stage audit trail.
pub fn realize_target_traced(
    d: &ChoiceFunction,
    c: &ChoiceFunction,
) -> Result<(IntegerProfile, SynthesisTrace)> {
    let answer = decide_membership(d, c)?;
    if !answer.member {
        return Err(Error::NotRealizable);
    }
    let (profile, stages) = if c.tor_edges().is_empty() {
        let profile = tie_profile(d)?;
        let stages = vec![stage("orbit tie".into(), profile.to_weighted())];
        (profile, stages)
    } else if answer.reason == MembershipReason::UnbalancedGenerator {
        realize_unbalanced_staged(d, c)?
    } else {
        realize_balanced_staged(d, c)?
    };
    let profile = verified(profile, c)?;
    let trace = SynthesisTrace {
        stages,
        final_profile: profile.clone(),
    };
    Ok((profile, trace))
}

/// The classical two-voters-per-pair construction over linear orders: for a
/// decided pair, one voter ranks the pair on top and everything else below,
/// the other reverses the tail, so their joint effect is a margin of exactly
/// 2 on that pair and exact ties elsewhere. Any target on `n` candidates
/// takes at most `n(n - 1)` voters.
pub fn mcgarvey_classic(n: usize, c: &ChoiceFunction) -> Result<IntegerProfile> {
    if c.n() != n {
        return Err(Error::DimensionMismatch(c.n(), n));
    }
    let order_voter = |ranking: &[usize]| -> ChoiceFunction {
        let mut rank = vec![0usize; n];
        for (i, &v) in ranking.iter().enumerate() {
            rank[v] = i;
        }
        let edges: Vec<(usize, usize)> = crate::choice::pairs(n)
            .map(|(x, y)| if rank[x] < rank[y] { (y, x) } else { (x, y) })
            .collect();
        ChoiceFunction::from_edges(n, &edges).expect("a ranking decides every pair")
    };
    let mut voters = Vec::new();
    for (x, y) in crate::choice::pairs(n) {
        let Some(winner) = c.winner(x, y) else {
            continue;
        };
        let loser = if winner == x { y } else { x };
        let rest: Vec<usize> = (0..n).filter(|&z| z != x && z != y).collect();
        let mut front = vec![winner, loser];
        front.extend(&rest);
        let mut back: Vec<usize> = rest.into_iter().rev().collect();
        back.extend([winner, loser]);
        voters.push((order_voter(&front), BigUint::from(1u32)));
        voters.push((order_voter(&back), BigUint::from(1u32)));
    }
    if voters.is_empty() {
        // a target with no decided pair: any order and its reverse tie everywhere
        let forward: Vec<usize> = (0..n).collect();
        let backward: Vec<usize> = (0..n).rev().collect();
        voters.push((order_voter(&forward), BigUint::from(1u32)));
        voters.push((order_voter(&backward), BigUint::from(1u32)));
    }
    let profile = IntegerProfile::new(n, voters)?.merged();
    verified(profile, c)
}
