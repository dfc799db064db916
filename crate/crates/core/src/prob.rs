//! Pairwise probability matrices.
//!
//! An entry `t[x][y]` is the weight with which `y` beats `x`; the complement
//! `t[y][x] = 1 - t[x][y]` always holds exactly. A choice function embeds as
//! the 0/1 matrix with undecided pairs at 1/2, and the strict-majority reading
//! maps a matrix back to a choice function.

use std::fmt;

use num_traits::Zero;

use crate::choice::{pairs, ChoiceFunction, Permutation};
use crate::error::{Error, Result};
use crate::rational::{half, in_unit_interval, one, rat, Rational};

/// Rational pairwise weights with `t[x][y] + t[y][x] = 1` for `x != y`.
#[derive(Clone, PartialEq, Eq)]
pub struct ProbMatrix {
    n: usize,
    entries: Vec<Rational>, // row-major n*n, diagonal zero
}

impl ProbMatrix {
    /// The matrix with every off-diagonal entry 1/2.
    pub fn all_half(n: usize) -> Self {
        let mut m = ProbMatrix {
            n,
            entries: vec![Rational::zero(); n * n],
        };
        for (x, y) in pairs(n) {
            m.entries[x * n + y] = half();
            m.entries[y * n + x] = half();
        }
        m
    }

    /// Embed a choice function: winners get 1, losers 0, undecided pairs 1/2.
    pub fn of_choice(c: &ChoiceFunction) -> Self {
        let n = c.n();
        let mut m = ProbMatrix::all_half(n);
        for (x, y) in pairs(n) {
            if let Some(w) = c.winner(x, y) {
                let (tx, ty) = if w == y {
                    (one(), Rational::zero())
                } else {
                    (Rational::zero(), one())
                };
                m.entries[x * n + y] = tx;
                m.entries[y * n + x] = ty;
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: usize, y: usize) -> &Rational {
        assert!(x != y && x < self.n && y < self.n);
        &self.entries[x * self.n + y]
    }

    /// Set `t[x][y] = v` and its complement. `v` must lie in `[0, 1]`.
    pub fn set(&mut self, x: usize, y: usize, v: Rational) -> Result<()> {
        assert!(x != y && x < self.n && y < self.n);
        if !in_unit_interval(&v) {
            return Err(Error::OutOfUnitInterval(v.to_string()));
        }
        self.entries[y * self.n + x] = one() - &v;
        self.entries[x * self.n + y] = v;
        Ok(())
    }

    /// Entrywise complement; an involution.
    pub fn dual(&self) -> Self {
        let mut out = self.clone();
        for (x, y) in pairs(self.n) {
            out.entries[x * self.n + y] = one() - self.get(x, y);
            out.entries[y * self.n + x] = one() - self.get(y, x);
        }
        out
    }

    /// Push-forward under a relabeling: `result[p(x)][p(y)] = self[x][y]`.
    pub fn permuted(&self, p: &Permutation) -> Self {
        assert_eq!(p.n(), self.n);
        let mut out = ProbMatrix {
            n: self.n,
            entries: vec![Rational::zero(); self.n * self.n],
        };
        for (x, y) in pairs(self.n) {
            let (px, py) = (p.apply(x), p.apply(y));
            out.entries[px * self.n + py] = self.entries[x * self.n + y].clone();
            out.entries[py * self.n + px] = self.entries[y * self.n + x].clone();
        }
        out
    }

    /// Sum of row `x` over all `y != x`.
    pub fn row_sum(&self, x: usize) -> Rational {
        (0..self.n)
            .filter(|&y| y != x)
            .map(|y| self.get(x, y).clone())
            .sum()
    }

    /// Strict-majority reading: winner `y` on `{x, y}` iff `t[x][y] > 1/2`,
    /// undecided exactly at `t[x][y] = 1/2`.
    pub fn maj(&self) -> ChoiceFunction {
        let h = half();
        let mut edges = Vec::new();
        for (x, y) in pairs(self.n) {
            let t = self.get(x, y);
            if *t > h {
                edges.push((x, y));
            } else if *t < h {
                edges.push((y, x));
            }
        }
        ChoiceFunction::from_edges(self.n, &edges).expect("valid edges")
    }

    /// Exact entrywise convex combination. Weights must be positive and sum
    /// to 1; all matrices must share `n`.
    pub fn convex_combine(parts: &[(Rational, &ProbMatrix)]) -> Result<ProbMatrix> {
        let Some((_, first)) = parts.first() else {
            return Err(Error::EmptyProfile);
        };
        let n = first.n;
        let mut total = Rational::zero();
        for (w, m) in parts {
            if m.n != n {
                return Err(Error::DimensionMismatch(m.n, n));
            }
            if !w.is_positive() {
                return Err(Error::NonpositiveWeight);
            }
            total += w;
        }
        if total != one() {
            return Err(Error::WeightsDoNotSumToOne(total.to_string()));
        }
        let mut out = ProbMatrix {
            n,
            entries: vec![Rational::zero(); n * n],
        };
        for (x, y) in pairs(n) {
            let mut v = Rational::zero();
            for (w, m) in parts {
                v += w * m.get(x, y);
            }
            out.entries[y * n + x] = one() - &v;
            out.entries[x * n + y] = v;
        }
        Ok(out)
    }

    /// Every row sums to `(n - 1) / 2`.
    pub fn is_balanced(&self) -> bool {
        let target = rat(self.n as i64 - 1) / rat(2);
        (0..self.n).all(|x| self.row_sum(x) == target)
    }

    /// Every off-diagonal entry is exactly 1/2.
    pub fn is_super_balanced(&self) -> bool {
        let h = half();
        pairs(self.n).all(|(x, y)| *self.get(x, y) == h)
    }
}

use num_traits::Signed;

impl fmt::Debug for ProbMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ProbMatrix(n={})", self.n)?;
        for x in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|y| {
                    if x == y {
                        "-".to_string()
                    } else {
                        self.get(x, y).to_string()
                    }
                })
                .collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}
