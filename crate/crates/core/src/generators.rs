//! Built-in generator tournaments: linear, rotational, seeded random.

use crate::choice::{pairs, ChoiceFunction};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Linear,
    Cyclic,
    Random,
}

impl std::str::FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(FamilyKind::Linear),
            "cyclic" => Ok(FamilyKind::Cyclic),
            "random" => Ok(FamilyKind::Random),
            other => Err(Error::ParseError {
                line: 0,
                msg: format!("unknown family kind '{other}'"),
            }),
        }
    }
}

/// The linear order: the larger index wins every pair.
pub fn linear(n: usize) -> Result<ChoiceFunction> {
    let edges: Vec<(usize, usize)> = pairs(n).collect();
    ChoiceFunction::from_edges(n, &edges)
}

/// The rotational tournament on odd `n`: `i` loses to `i + j (mod n)` for
/// `1 <= j <= (n - 1) / 2`. Balanced, every valency `(n - 1) / 2`.
pub fn cyclic(n: usize) -> Result<ChoiceFunction> {
    if n % 2 == 0 {
        return Err(Error::CyclicNeedsOddN(n));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 1..=(n - 1) / 2 {
            edges.push((i, (i + j) % n));
        }
    }
    ChoiceFunction::from_edges(n, &edges)
}

/// A full tournament with each pair decided by a seeded coin. Deterministic
/// for a fixed seed across platforms (splitmix64 stream).
pub fn random(n: usize, seed: u64) -> Result<ChoiceFunction> {
    let mut state = seed;
    let mut next = move || {
        state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    };
    let edges: Vec<(usize, usize)> = pairs(n)
        .map(|(x, y)| if next() & 1 == 0 { (x, y) } else { (y, x) })
        .collect();
    ChoiceFunction::from_edges(n, &edges)
}

pub fn generate_family(kind: FamilyKind, n: usize, seed: u64) -> Result<ChoiceFunction> {
    match kind {
        FamilyKind::Linear => linear(n),
        FamilyKind::Cyclic => cyclic(n),
        FamilyKind::Random => random(n, seed),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};
    use crate::valency::valencies;

    #[test]
    fn linear_valencies_descend() {
        let l4 = linear(4).unwrap();
        assert_eq!(valencies(&l4), vec![rat(3), rat(2), rat(1), rat(0)]);
    }

    #[test]
    fn cyclic_small_cases() {
        let c3 = cyclic(3).unwrap();
        assert_eq!(c3.tor_edges(), vec![(0, 1), (1, 2), (2, 0)]);
        let r5 = cyclic(5).unwrap();
        assert!(r5.is_full());
        assert!(valencies(&r5).iter().all(|v| *v == rat(2)));
        assert_eq!(cyclic(4), Err(Error::CyclicNeedsOddN(4)));
        assert_eq!(frac(4, 2), rat(2));
    }

    #[test]
    fn random_is_deterministic_and_full() {
        let a = random(6, 42).unwrap();
        let b = random(6, 42).unwrap();
        assert_eq!(a, b);
        assert!(a.is_full());
        assert_ne!(random(6, 1).unwrap(), random(6, 2).unwrap());
    }
}
