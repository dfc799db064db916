//! The membership decision: which targets arise as strict majorities over
//! the orbit of a full generator.
//!
//! An unbalanced generator (some valency off `(n - 1) / 2`) majorizes every
//! target; a balanced one majorizes exactly the pseudo-balanced targets. The
//! unbalanced branch is witnessed constructively by a bias certificate: an
//! asymmetric convex split of the point `(n/2 - 1, n/2 - 1)` across the two
//! shifted valency point sets. The certificate's side-1 mass is exactly the
//! achievable bias at a single ordered pair, which is what synthesis
//! consumes. A brute-force oracle solving the distribution program over the
//! whole orbit provides ground truth for the test sweeps.

use num_traits::{Signed, Zero};

use crate::balance::{is_balanced, is_pseudo_balanced};
use crate::choice::{pairs, sym_closure, ChoiceFunction};
use crate::error::{Error, Result};
use crate::lp::{max_margin_feasible, solve, FarkasCertificate, LinearProgram, LpOutcome, Sense};
use crate::rational::{frac, half, one, Rational};
use crate::valency::{valency_signature, Point, ValencySignature};

/// One weighted support point of a bias certificate, with the ordered pair
/// of the generator that realizes it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportEntry {
    pub point: Point,
    pub witness: (usize, usize),
    pub weight: Rational,
}

/// Masses `r0 + r1 = 1`, `r1 != 1/2`, over weighted supports inside the two
/// shifted valency point sets, averaging to `(n/2 - 1, n/2 - 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiasCertificate {
    pub n: usize,
    pub r0: Rational,
    pub r1: Rational,
    pub support0: Vec<SupportEntry>,
    pub support1: Vec<SupportEntry>,
}

/// The point both certificate coordinates must hit.
pub fn certificate_target(n: usize) -> Point {
    (frac(n as i64 - 2, 2), frac(n as i64 - 2, 2))
}

impl BiasCertificate {
    /// Re-check every invariant arithmetically against the generator.
    pub fn validate(&self, d: &ChoiceFunction) -> Result<()> {
        let fail = |msg: &str| Err(Error::VerificationFailed(format!("certificate: {msg}")));
        if d.n() != self.n {
            return Err(Error::DimensionMismatch(d.n(), self.n));
        }
        if !d.is_full() {
            return Err(Error::NotFull);
        }
        let sum0: Rational = self.support0.iter().map(|e| e.weight.clone()).sum();
        let sum1: Rational = self.support1.iter().map(|e| e.weight.clone()).sum();
        if sum0 != self.r0 || sum1 != self.r1 {
            return fail("masses do not match supports");
        }
        if &self.r0 + &self.r1 != one() {
            return fail("masses do not sum to 1");
        }
        if self.r0 == half() {
            return fail("split is not asymmetric");
        }
        let target = certificate_target(self.n);
        let mut sx = Rational::zero();
        let mut sy = Rational::zero();
        for e in self.support0.iter().chain(&self.support1) {
            if !e.weight.is_positive() {
                return fail("support weight not positive");
            }
            sx += &e.weight * &e.point.0;
            sy += &e.weight * &e.point.1;
        }
        if (sx, sy) != target {
            return fail("supports do not average to the target point");
        }
        let val = crate::valency::valencies(d);
        for e in &self.support0 {
            let (u, v) = e.witness;
            if d.winner(u, v) != Some(u) {
                return fail("side-0 witness pair is not won by its first vertex");
            }
            if e.point != (val[u].clone(), &val[v] - one()) {
                return fail("side-0 witness valencies do not match the point");
            }
        }
        for e in &self.support1 {
            let (u, v) = e.witness;
            if d.winner(u, v) != Some(v) {
                return fail("side-1 witness pair is not won by its second vertex");
            }
            if e.point != (&val[u] - one(), val[v].clone()) {
                return fail("side-1 witness valencies do not match the point");
            }
        }
        Ok(())
    }
}

/// Some valency differs from `(n - 1) / 2`. Full generators only.
pub fn is_unbalanced(d: &ChoiceFunction) -> Result<bool> {
    if !d.is_full() {
        return Err(Error::NotFull);
    }
    Ok(!is_balanced(d))
}

/// The representation program: point masses over both shifted valency point
/// sets, total mass 1, averaging to `target`; the objective is the side-1
/// share. Exposed so infeasible variants can be built and their Farkas
/// witnesses checked.
pub fn certificate_program(sig: &ValencySignature, target: &Point, sense: Sense) -> LinearProgram {
    let pts0: Vec<&Point> = sig.v0star.points().collect();
    let pts1: Vec<&Point> = sig.v1star.points().collect();
    let nv = pts0.len() + pts1.len();
    let objective: Vec<Rational> = (0..nv)
        .map(|i| {
            if i >= pts0.len() {
                one()
            } else {
                Rational::zero()
            }
        })
        .collect();
    let mut lp = LinearProgram::new(sense, objective);
    lp.add_equality(vec![one(); nv], one());
    lp.add_equality(
        pts0.iter().chain(&pts1).map(|p| p.0.clone()).collect(),
        target.0.clone(),
    );
    lp.add_equality(
        pts0.iter().chain(&pts1).map(|p| p.1.clone()).collect(),
        target.1.clone(),
    );
    lp
}

pub(crate) enum CertOutcome {
    Found(BiasCertificate),
    /// The target is representable but only with an exactly even split.
    OnlyEvenSplit,
    /// The target is not representable at all.
    Infeasible(Option<FarkasCertificate>),
}

fn certificate_from_point(
    sig: &ValencySignature,
    point: &[Rational],
    r1: Rational,
    n: usize,
) -> BiasCertificate {
    let pts0: Vec<&Point> = sig.v0star.points().collect();
    let pts1: Vec<&Point> = sig.v1star.points().collect();
    let mut support0 = Vec::new();
    let mut support1 = Vec::new();
    for (i, w) in point.iter().enumerate() {
        if !w.is_positive() {
            continue;
        }
        if i < pts0.len() {
            let p = pts0[i].clone();
            let witness = sig.v0star.least_witness(&p).expect("point is in the set");
            support0.push(SupportEntry {
                point: p,
                witness,
                weight: w.clone(),
            });
        } else {
            let p = pts1[i - pts0.len()].clone();
            let witness = sig.v1star.least_witness(&p).expect("point is in the set");
            support1.push(SupportEntry {
                point: p,
                witness,
                weight: w.clone(),
            });
        }
    }
    BiasCertificate {
        n,
        r0: one() - &r1,
        r1,
        support0,
        support1,
    }
}

pub(crate) fn solve_certificate(d: &ChoiceFunction) -> Result<CertOutcome> {
    if !d.is_full() {
        return Err(Error::NotFull);
    }
    let n = d.n();
    let sig = valency_signature(d);
    let target = certificate_target(n);

    let lp_max = certificate_program(&sig, &target, Sense::Maximize);
    match solve(&lp_max)? {
        LpOutcome::Optimal { point, value } => {
            if value > half() {
                let cert = certificate_from_point(&sig, &point, value, n);
                cert.validate(d)?;
                return Ok(CertOutcome::Found(cert));
            }
        }
        LpOutcome::Infeasible { farkas } => return Ok(CertOutcome::Infeasible(farkas)),
        LpOutcome::Unbounded => unreachable!("mass is bounded by 1"),
    }

    let lp_min = certificate_program(&sig, &target, Sense::Minimize);
    match solve(&lp_min)? {
        LpOutcome::Optimal { point, value } => {
            if value < half() {
                let cert = certificate_from_point(&sig, &point, value, n);
                cert.validate(d)?;
                Ok(CertOutcome::Found(cert))
            } else {
                Ok(CertOutcome::OnlyEvenSplit)
            }
        }
        LpOutcome::Infeasible { farkas } => Ok(CertOutcome::Infeasible(farkas)),
        LpOutcome::Unbounded => unreachable!("mass is bounded by 1"),
    }
}

/// An asymmetric-split certificate for the generator, when one exists.
/// Existence coincides with the generator being unbalanced.
pub fn bias_certificate(d: &ChoiceFunction) -> Result<Option<BiasCertificate>> {
    Ok(match solve_certificate(d)? {
        CertOutcome::Found(cert) => Some(cert),
        CertOutcome::OnlyEvenSplit | CertOutcome::Infeasible(_) => None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MembershipReason {
    UnbalancedGenerator,
    PseudoBalancedTarget,
    NotPseudoBalanced,
}

#[derive(Clone, Debug)]
pub struct MembershipAnswer {
    pub member: bool,
    pub reason: MembershipReason,
    pub certificate: Option<BiasCertificate>,
    pub farkas: Option<FarkasCertificate>,
}

/// Decide whether `c` is the strict majority of some distribution over the
/// orbit of the full generator `d`.
pub fn decide_membership(d: &ChoiceFunction, c: &ChoiceFunction) -> Result<MembershipAnswer> {
    if !d.is_full() {
        return Err(Error::NotFull);
    }
    if d.n() != c.n() {
        return Err(Error::DimensionMismatch(d.n(), c.n()));
    }
    if is_unbalanced(d)? {
        let (certificate, farkas) = match solve_certificate(d)? {
            CertOutcome::Found(cert) => (Some(cert), None),
            CertOutcome::OnlyEvenSplit => {
                return Err(Error::VerificationFailed(
                    "unbalanced generator lacks a certificate".into(),
                ))
            }
            CertOutcome::Infeasible(farkas) => {
                return Err(Error::VerificationFailed(format!(
                    "certificate system infeasible for a full generator (farkas: {farkas:?})"
                )))
            }
        };
        return Ok(MembershipAnswer {
            member: true,
            reason: MembershipReason::UnbalancedGenerator,
            certificate,
            farkas,
        });
    }
    if is_pseudo_balanced(c) {
        Ok(MembershipAnswer {
            member: true,
            reason: MembershipReason::PseudoBalancedTarget,
            certificate: None,
            farkas: None,
        })
    } else {
        Ok(MembershipAnswer {
            member: false,
            reason: MembershipReason::NotPseudoBalanced,
            certificate: None,
            farkas: None,
        })
    }
}

/// Membership against a family listed by several generators: one unbalanced
/// member already majorizes everything, otherwise the balanced criterion
/// applies to the union of orbits exactly as it does to one.
pub fn decide_membership_multi(
    generators: &[ChoiceFunction],
    c: &ChoiceFunction,
) -> Result<MembershipAnswer> {
    let Some(first) = generators.first() else {
        return Err(Error::EmptyProfile);
    };
    for d in generators {
        if d.n() != first.n() {
            return Err(Error::DimensionMismatch(d.n(), first.n()));
        }
        if !d.is_full() {
            return Err(Error::NotFull);
        }
    }
    for d in generators {
        if is_unbalanced(d)? {
            return decide_membership(d, c);
        }
    }
    decide_membership(first, c)
}

/// Ground truth by brute force: maximize the strict margin of a distribution
/// over the whole orbit of `d`, with exact-tie rows for the undecided pairs
/// of `c`. Positive margin means membership.
pub fn oracle_membership(d: &ChoiceFunction, c: &ChoiceFunction) -> Result<bool> {
    if !d.is_full() {
        return Err(Error::NotFull);
    }
    if d.n() != c.n() {
        return Err(Error::DimensionMismatch(d.n(), c.n()));
    }
    let n = d.n();
    let orbit = sym_closure(d)?;
    let k = orbit.len();
    let decided: Vec<(usize, usize)> = pairs(n).filter(|&(x, y)| c.winner(x, y).is_some()).collect();
    let num_vars = k + decided.len() + 1; // orbit weights, slacks, margin

    let mut objective = vec![Rational::zero(); num_vars];
    objective[num_vars - 1] = one();
    let mut lp = LinearProgram::new(Sense::Maximize, objective);
    lp.upper[num_vars - 1] = Some(half());

    lp.add_equality(
        (0..num_vars)
            .map(|i| if i < k { one() } else { Rational::zero() })
            .collect(),
        one(),
    );
    // winner mass - margin - slack = 1/2 on decided pairs
    for (j, &(x, y)) in decided.iter().enumerate() {
        let w = c.winner(x, y).expect("pair is decided");
        let mut coeffs = vec![Rational::zero(); num_vars];
        for (i, e) in orbit.iter().enumerate() {
            if e.winner(x, y) == Some(w) {
                coeffs[i] = one();
            }
        }
        coeffs[k + j] = -one();
        coeffs[num_vars - 1] = -one();
        lp.add_equality(coeffs, half());
    }
    // exact ties on the undecided pairs
    for (x, y) in pairs(n) {
        if c.winner(x, y).is_none() {
            let mut coeffs = vec![Rational::zero(); num_vars];
            for (i, e) in orbit.iter().enumerate() {
                if e.winner(x, y) == Some(y) {
                    coeffs[i] = one();
                }
            }
            lp.add_equality(coeffs, half());
        }
    }
    let (feasible, _witness) = max_margin_feasible(&lp)?;
    Ok(feasible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::choice::{enumerate_all, enumerate_full, Permutation};
    use crate::generators;
    use crate::rational::rat;

    fn t3() -> ChoiceFunction {
        ChoiceFunction::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn c3() -> ChoiceFunction {
        ChoiceFunction::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn unbalanced_examples() {
        assert!(is_unbalanced(&t3()).unwrap());
        assert!(!is_unbalanced(&c3()).unwrap());
        for d in enumerate_full(4) {
            assert!(is_unbalanced(&d).unwrap());
        }
        let partial = ChoiceFunction::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(is_unbalanced(&partial), Err(Error::NotFull));
    }

    #[test]
    fn certificate_for_t3() {
        let cert = bias_certificate(&t3()).unwrap().unwrap();
        assert_eq!(cert.r1, one());
        assert_eq!(cert.r0, Rational::zero());
        assert!(cert.support0.is_empty());
        cert.validate(&t3()).unwrap();
        // the side-1 support realizes (1/2, 1/2)
        let sx: Rational = cert
            .support1
            .iter()
            .map(|e| &e.weight * &e.point.0)
            .sum();
        assert_eq!(sx, half());
    }

    #[test]
    fn no_certificate_for_balanced() {
        assert!(bias_certificate(&c3()).unwrap().is_none());
        assert!(bias_certificate(&generators::cyclic(5).unwrap())
            .unwrap()
            .is_none());
    }

    #[test]
    fn certificate_for_linear_order_four() {
        let l4 = generators::linear(4).unwrap();
        let cert = bias_certificate(&l4).unwrap().unwrap();
        assert_eq!(cert.r1, one());
        cert.validate(&l4).unwrap();
        // the target for n = 4 is (1, 1)
        assert_eq!(certificate_target(4), (rat(1), rat(1)));
    }

    #[test]
    fn certificate_exists_iff_unbalanced() {
        for n in [3usize, 4] {
            for d in enumerate_full(n) {
                let cert = bias_certificate(&d).unwrap();
                assert_eq!(cert.is_some(), is_unbalanced(&d).unwrap());
                if let Some(cert) = cert {
                    cert.validate(&d).unwrap();
                }
            }
        }
    }

    #[test]
    fn infeasible_target_yields_verified_farkas() {
        let sig = valency_signature(&c3());
        let lp = certificate_program(&sig, &(rat(5), rat(5)), Sense::Maximize);
        match solve(&lp).unwrap() {
            LpOutcome::Infeasible { farkas: Some(f) } => assert!(f.verify(&lp)),
            other => panic!("expected infeasible with farkas, got {other:?}"),
        }
    }

    #[test]
    fn decide_examples() {
        let ans = decide_membership(&c3(), &t3()).unwrap();
        assert!(!ans.member);
        assert_eq!(ans.reason, MembershipReason::NotPseudoBalanced);

        let ans = decide_membership(&t3(), &c3()).unwrap();
        assert!(ans.member);
        assert_eq!(ans.reason, MembershipReason::UnbalancedGenerator);
        assert!(ans.certificate.is_some());

        let ans = decide_membership(&c3(), &c3()).unwrap();
        assert!(ans.member);
        assert_eq!(ans.reason, MembershipReason::PseudoBalancedTarget);

        let empty = ChoiceFunction::empty(3).unwrap();
        let ans = decide_membership(&c3(), &empty).unwrap();
        assert!(ans.member);
        assert_eq!(ans.reason, MembershipReason::PseudoBalancedTarget);
    }

    #[test]
    fn decide_rejects_bad_inputs() {
        let partial = ChoiceFunction::from_edges(3, &[(0, 1)]).unwrap();
        assert!(matches!(
            decide_membership(&partial, &c3()),
            Err(Error::NotFull)
        ));
        let c4 = ChoiceFunction::empty(4).unwrap();
        assert!(matches!(
            decide_membership(&t3(), &c4),
            Err(Error::DimensionMismatch(3, 4))
        ));
    }

    #[test]
    fn oracle_examples() {
        assert!(!oracle_membership(&c3(), &t3()).unwrap());
        assert!(oracle_membership(&t3(), &c3()).unwrap());
        for d in enumerate_full(3) {
            assert!(oracle_membership(&d, &d).unwrap());
        }
    }

    #[test]
    fn decide_matches_oracle_on_three_candidates() {
        for d in enumerate_full(3) {
            for c in enumerate_all(3) {
                assert_eq!(
                    decide_membership(&d, &c).unwrap().member,
                    oracle_membership(&d, &c).unwrap(),
                    "generator {d:?} target {c:?}"
                );
            }
        }
    }

    #[test]
    fn decide_invariant_under_relabeling() {
        for p in Permutation::all(3) {
            for d in [t3(), c3()] {
                for c in [t3(), c3(), ChoiceFunction::empty(3).unwrap()] {
                    assert_eq!(
                        decide_membership(&d, &c).unwrap().member,
                        decide_membership(&d.permuted(&p), &c.permuted(&p))
                            .unwrap()
                            .member
                    );
                }
            }
        }
    }

    #[test]
    fn membership_is_self_dual() {
        for d in enumerate_full(3) {
            for c in enumerate_all(3) {
                assert_eq!(
                    decide_membership(&d, &c).unwrap().member,
                    decide_membership(&d.dual(), &c.dual()).unwrap().member
                );
            }
        }
        // spot-check the oracle route too
        assert_eq!(
            oracle_membership(&c3(), &t3()).unwrap(),
            oracle_membership(&c3().dual(), &t3().dual()).unwrap()
        );
    }

    #[test]
    fn multi_generator_families() {
        // a balanced plus an unbalanced generator majorize everything
        let ans = decide_membership_multi(&[c3(), t3()], &t3()).unwrap();
        assert!(ans.member);
        assert_eq!(ans.reason, MembershipReason::UnbalancedGenerator);
        // all-balanced family falls back to the pseudo-balance criterion
        let ans = decide_membership_multi(&[c3(), c3().dual()], &t3()).unwrap();
        assert!(!ans.member);
    }
}
