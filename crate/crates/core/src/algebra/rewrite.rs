//! Word rewriting to normal form.
//!
//! Rules, with generators in declared order:
//!
//! - Jacobson: `x y -> 1`
//! - Weyl: `p q -> q p + 1`
//! - polynomials: `b a -> a b` whenever `b > a`
//! - matrices: `E_kl E_mn -> δ_lm E_kn`
//! - free: none
//!
//! Multiplication uses closed formulas; this engine reduces arbitrary letter
//! strings one redex at a time and exists so that the formulas can be checked
//! against the rules and the rules checked for confluence.

use num::BigInt;

use super::{Algebra, AlgebraElement, AlgebraKind};

/// Which redex to contract at each step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewriteStrategy {
    Leftmost,
    Rightmost,
    /// Pseudo-random choice driven by the seed.
    Seeded(u64),
}

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl Algebra {
    fn is_redex(&self, a: u32, b: u32) -> bool {
        match self.kind() {
            AlgebraKind::Free { .. } => false,
            AlgebraKind::Jacobson => a == 0 && b == 1,
            AlgebraKind::Weyl => a == 1 && b == 0,
            AlgebraKind::CommPoly { .. } => a > b,
            AlgebraKind::Matrix { .. } => true,
        }
    }

    /// Contract the redex at `pos..pos+2`.
    fn contract(&self, letters: &[u32], pos: usize) -> Vec<(BigInt, Vec<u32>)> {
        let (a, b) = (letters[pos], letters[pos + 1]);
        let splice = |mid: &[u32]| -> Vec<u32> {
            let mut out = letters[..pos].to_vec();
            out.extend_from_slice(mid);
            out.extend_from_slice(&letters[pos + 2..]);
            out
        };
        let one = BigInt::from(1);
        match self.kind() {
            AlgebraKind::Jacobson => vec![(one, splice(&[]))],
            AlgebraKind::Weyl => vec![(one.clone(), splice(&[0, 1])), (one, splice(&[]))],
            AlgebraKind::CommPoly { .. } => vec![(one, splice(&[b, a]))],
            AlgebraKind::Matrix { size } => {
                let size = size as u32;
                let (k, l) = (a / size, a % size);
                let (m, n) = (b / size, b % size);
                if l == m {
                    vec![(one, splice(&[k * size + n]))]
                } else {
                    Vec::new()
                }
            }
            AlgebraKind::Free { .. } => unreachable!("free algebras have no redexes"),
        }
    }

    /// Reduce the product of the given generator letters to normal form by
    /// repeated single-redex contraction.
    pub fn reduce_letters(&self, letters: &[u32], strategy: RewriteStrategy) -> AlgebraElement {
        let spec = self.spec();
        let mut state = match strategy {
            RewriteStrategy::Seeded(s) => s,
            _ => 0,
        };
        let mut out = AlgebraElement::zero(self);
        let mut pending: Vec<(BigInt, Vec<u32>)> = vec![(BigInt::from(1), letters.to_vec())];
        while let Some((coeff, word)) = pending.pop() {
            let redexes: Vec<usize> =
                (0..word.len().saturating_sub(1)).filter(|&i| self.is_redex(word[i], word[i + 1])).collect();
            if redexes.is_empty() {
                let c = spec.from_integer(&coeff);
                if word.is_empty() {
                    // For matrix algebras the empty product is the identity.
                    out = &out + &self.scalar(c);
                } else {
                    out.add_term(self.word(word), &c);
                }
                continue;
            }
            let pos = match strategy {
                RewriteStrategy::Leftmost => redexes[0],
                RewriteStrategy::Rightmost => *redexes.last().expect("nonempty"),
                RewriteStrategy::Seeded(_) => redexes[(splitmix(&mut state) % redexes.len() as u64) as usize],
            };
            for (c, w) in self.contract(&word, pos) {
                pending.push((&coeff * c, w));
            }
        }
        out
    }
}
