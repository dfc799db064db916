//! Ground-truth majority evaluation and exhaustive enumeration sweeps.

use std::fmt;

use num_traits::Zero;

use crate::balance::{is_pseudo_balanced, scc};
use crate::choice::{enumerate_all, enumerate_full, pairs, ChoiceFunction};
use crate::config;
use crate::error::{Error, Result};
use crate::generators;
use crate::profile::{IntegerProfile, WeightedProfile};
use crate::rational::{half, Rational};
use crate::realize::{decide_membership, oracle_membership};
use crate::synthesis::realize_target;

/// Outcome of one pair under a profile's majority.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairOutcome {
    Win(usize),
    Tie,
}

/// Per-pair tallies of a verification run. Masses include the half votes of
/// abstaining voters, so they are rationals even for integer profiles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairTally {
    pub pair: (usize, usize),
    /// Mass toward the larger-index candidate winning.
    pub mass_high: Rational,
    /// Mass toward the smaller-index candidate winning.
    pub mass_low: Rational,
    pub outcome: PairOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub pass: bool,
    pub per_pair: Vec<PairTally>,
    pub mismatches: Vec<(usize, usize)>,
}

fn tally<'a, I>(n: usize, voters: I) -> Vec<PairTally>
where
    I: Iterator<Item = (&'a ChoiceFunction, Rational)> + Clone,
{
    pairs(n)
        .map(|(x, y)| {
            let mut high = Rational::zero();
            let mut low = Rational::zero();
            for (c, w) in voters.clone() {
                match c.winner(x, y) {
                    Some(v) if v == y => high += &w,
                    Some(_) => low += &w,
                    None => {
                        let h = &w * half();
                        high += &h;
                        low += h;
                    }
                }
            }
            let outcome = if high > low {
                PairOutcome::Win(y)
            } else if low > high {
                PairOutcome::Win(x)
            } else {
                PairOutcome::Tie
            };
            PairTally {
                pair: (x, y),
                mass_high: high,
                mass_low: low,
                outcome,
            }
        })
        .collect()
}

fn majority_from_tallies(n: usize, tallies: &[PairTally]) -> ChoiceFunction {
    let edges: Vec<(usize, usize)> = tallies
        .iter()
        .filter_map(|t| match t.outcome {
            PairOutcome::Win(w) => {
                let (x, y) = t.pair;
                Some(if w == y { (x, y) } else { (y, x) })
            }
            PairOutcome::Tie => None,
        })
        .collect();
    ChoiceFunction::from_edges(n, &edges).expect("tallies come from valid pairs")
}

/// The strict pointwise majority of an integer profile; exact ties become
/// undecided pairs.
pub fn majority_of_integer(p: &IntegerProfile) -> ChoiceFunction {
    majority_of_weighted(&p.to_weighted())
}

/// The strict pointwise majority of a distribution.
pub fn majority_of_weighted(p: &WeightedProfile) -> ChoiceFunction {
    let voters = p.voters().iter().map(|(c, w)| (c, w.clone()));
    let tallies = tally(p.n(), voters);
    majority_from_tallies(p.n(), &tallies)
}

fn verify_tallies(n: usize, tallies: Vec<PairTally>, target: &ChoiceFunction) -> VerificationReport {
    let majority = majority_from_tallies(n, &tallies);
    let mismatches: Vec<(usize, usize)> = pairs(n)
        .filter(|&(x, y)| majority.winner(x, y) != target.winner(x, y))
        .collect();
    VerificationReport {
        pass: mismatches.is_empty(),
        per_pair: tallies,
        mismatches,
    }
}

/// Check an integer profile against a target, pair by pair; undecided target
/// pairs must tie exactly.
pub fn verify_integer(p: &IntegerProfile, target: &ChoiceFunction) -> Result<VerificationReport> {
    if p.n() != target.n() {
        return Err(Error::DimensionMismatch(p.n(), target.n()));
    }
    let weighted = p.to_weighted();
    let voters = weighted.voters().iter().map(|(c, w)| (c, w.clone()));
    Ok(verify_tallies(p.n(), tally(p.n(), voters), target))
}

/// As `verify_integer`, for distributions.
pub fn verify_weighted(p: &WeightedProfile, target: &ChoiceFunction) -> Result<VerificationReport> {
    if p.n() != target.n() {
        return Err(Error::DimensionMismatch(p.n(), target.n()));
    }
    let voters = p.voters().iter().map(|(c, w)| (c, w.clone()));
    Ok(verify_tallies(p.n(), tally(p.n(), voters), target))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumMode {
    DecideVsOracle,
    SynthesizeAll,
    ClassifyBalance,
}

impl std::str::FromStr for EnumMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "decide-vs-oracle" => Ok(EnumMode::DecideVsOracle),
            "synthesize-all" => Ok(EnumMode::SynthesizeAll),
            "classify" => Ok(EnumMode::ClassifyBalance),
            other => Err(Error::ParseError {
                line: 0,
                msg: format!("unknown mode '{other}'"),
            }),
        }
    }
}

/// A generator/target pair on which two routes disagreed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disagreement {
    pub generator: ChoiceFunction,
    pub target: ChoiceFunction,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationReport {
    pub n: usize,
    pub mode: EnumMode,
    pub families_tested: usize,
    pub targets_tested: usize,
    pub agreements: usize,
    pub disagreements: Vec<Disagreement>,
    pub realizable_count: usize,
    pub pseudo_balanced_count: usize,
    /// Classification tallies: (full functions, pseudo-balanced full,
    /// all partial functions, pseudo-balanced partial).
    pub classify: Option<(usize, usize, usize, usize)>,
}

impl fmt::Display for EnumerationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mode = match self.mode {
            EnumMode::DecideVsOracle => "decide-vs-oracle",
            EnumMode::SynthesizeAll => "synthesize-all",
            EnumMode::ClassifyBalance => "classify",
        };
        writeln!(f, "mode: {mode}")?;
        writeln!(f, "n: {}", self.n)?;
        if let Some((full, full_pseudo, partial, partial_pseudo)) = self.classify {
            writeln!(
                f,
                "full: {full}, pseudo-balanced: {full_pseudo}; partial: {partial}, pseudo-balanced: {partial_pseudo}"
            )?;
            writeln!(f, "strong tournaments: {full_pseudo}")?;
        } else {
            writeln!(f, "families tested: {}", self.families_tested)?;
            writeln!(f, "targets tested: {}", self.targets_tested)?;
            writeln!(f, "agreements: {}", self.agreements)?;
            writeln!(f, "disagreements: {}", self.disagreements.len())?;
            for d in &self.disagreements {
                writeln!(
                    f,
                    "  generator {:?} target {:?}: {}",
                    d.generator.tor_edges(),
                    d.target.tor_edges(),
                    d.detail
                )?;
            }
            writeln!(f, "realizable: {}", self.realizable_count)?;
            writeln!(f, "pseudo-balanced targets: {}", self.pseudo_balanced_count)?;
        }
        Ok(())
    }
}

fn check_scope(n: usize) -> Result<()> {
    if !(3..=config::ENUMERATION_CAP).contains(&n) {
        return Err(Error::ScopeTooLarge(n, config::ENUMERATION_CAP));
    }
    Ok(())
}

/// Deterministic sample for the `n = 5` sweeps: the first `count` full
/// tournaments in bitmap order that are strongly connected (or not).
pub fn sample_full(n: usize, count: usize, strong: bool) -> Vec<ChoiceFunction> {
    enumerate_full(n)
        .into_iter()
        .filter(|c| is_pseudo_balanced(c) == strong)
        .take(count)
        .collect()
}

fn decide_vs_oracle_scope(n: usize) -> (Vec<ChoiceFunction>, Vec<ChoiceFunction>) {
    match n {
        3 => (enumerate_full(3), enumerate_all(3)),
        4 => (enumerate_full(4), enumerate_full(4)),
        _ => {
            let generators = vec![
                generators::cyclic(5).expect("odd n"),
                generators::linear(5).expect("valid n"),
            ];
            let mut targets = vec![ChoiceFunction::empty(5).expect("n >= 3")];
            targets.extend(sample_full(5, 20, true));
            targets.extend(sample_full(5, 20, false));
            (generators, targets)
        }
    }
}

fn synthesize_scope(n: usize) -> (Vec<ChoiceFunction>, Vec<ChoiceFunction>) {
    match n {
        3 => (enumerate_full(3), enumerate_all(3)),
        4 => {
            // one transitive and one strongly connected generator
            let strong4 =
                ChoiceFunction::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)])
                    .expect("valid edges");
            debug_assert!(is_pseudo_balanced(&strong4));
            (
                vec![generators::linear(4).expect("valid n"), strong4],
                enumerate_full(4),
            )
        }
        _ => {
            let generators = vec![
                generators::cyclic(5).expect("odd n"),
                generators::linear(5).expect("valid n"),
            ];
            let mut targets = vec![ChoiceFunction::empty(5).expect("n >= 3")];
            targets.extend(sample_full(5, 20, true));
            (generators, targets)
        }
    }
}

/// Exhaustive (or documented-sample) sweeps over generators and targets.
pub fn enumerate_check(n: usize, mode: EnumMode) -> Result<EnumerationReport> {
    check_scope(n)?;
    match mode {
        EnumMode::ClassifyBalance => {
            let full = enumerate_full(n);
            let full_pseudo = full.iter().filter(|c| is_pseudo_balanced(c)).count();
            let all = enumerate_all(n);
            let partial_pseudo = all.iter().filter(|c| is_pseudo_balanced(c)).count();
            Ok(EnumerationReport {
                n,
                mode,
                families_tested: 0,
                targets_tested: all.len(),
                agreements: 0,
                disagreements: Vec::new(),
                realizable_count: 0,
                pseudo_balanced_count: partial_pseudo,
                classify: Some((full.len(), full_pseudo, all.len(), partial_pseudo)),
            })
        }
        EnumMode::DecideVsOracle => {
            let (gens, targets) = decide_vs_oracle_scope(n);
            let mut agreements = 0;
            let mut disagreements = Vec::new();
            let mut realizable = 0;
            for d in &gens {
                for c in &targets {
                    let decided = decide_membership(d, c)?.member;
                    let oracle = oracle_membership(d, c)?;
                    if decided == oracle {
                        agreements += 1;
                    } else {
                        disagreements.push(Disagreement {
                            generator: d.clone(),
                            target: c.clone(),
                            detail: format!("decide={decided} oracle={oracle}"),
                        });
                    }
                    if decided {
                        realizable += 1;
                    }
                }
            }
            debug_assert_eq!(agreements + disagreements.len(), gens.len() * targets.len());
            Ok(EnumerationReport {
                n,
                mode,
                families_tested: gens.len(),
                targets_tested: targets.len(),
                agreements,
                disagreements,
                realizable_count: realizable,
                pseudo_balanced_count: targets.iter().filter(|c| is_pseudo_balanced(c)).count(),
                classify: None,
            })
        }
        EnumMode::SynthesizeAll => {
            let (gens, targets) = synthesize_scope(n);
            let mut agreements = 0;
            let mut disagreements = Vec::new();
            let mut realizable = 0;
            for d in &gens {
                for c in &targets {
                    let member = decide_membership(d, c)?.member;
                    if !member {
                        match realize_target(d, c) {
                            Err(Error::NotRealizable) => agreements += 1,
                            other => disagreements.push(Disagreement {
                                generator: d.clone(),
                                target: c.clone(),
                                detail: format!(
                                    "non-member synthesis returned {:?}",
                                    other.map(|p| p.total())
                                ),
                            }),
                        }
                        continue;
                    }
                    realizable += 1;
                    match realize_target(d, c) {
                        Ok(profile) => {
                            let report = verify_integer(&profile, c)?;
                            if report.pass {
                                agreements += 1;
                            } else {
                                disagreements.push(Disagreement {
                                    generator: d.clone(),
                                    target: c.clone(),
                                    detail: format!(
                                        "profile mismatches on {:?}",
                                        report.mismatches
                                    ),
                                });
                            }
                        }
                        Err(e) => disagreements.push(Disagreement {
                            generator: d.clone(),
                            target: c.clone(),
                            detail: format!("synthesis failed: {e}"),
                        }),
                    }
                }
            }
            debug_assert_eq!(agreements + disagreements.len(), gens.len() * targets.len());
            Ok(EnumerationReport {
                n,
                mode,
                families_tested: gens.len(),
                targets_tested: targets.len(),
                agreements,
                disagreements,
                realizable_count: realizable,
                pseudo_balanced_count: targets.iter().filter(|c| is_pseudo_balanced(c)).count(),
                classify: None,
            })
        }
    }
}

/// Count strongly connected full tournaments, as an independent route to the
/// pseudo-balance tally on full functions.
pub fn count_strong_full(n: usize) -> usize {
    enumerate_full(n)
        .iter()
        .filter(|c| scc(c).components.len() == 1)
        .count()
}
