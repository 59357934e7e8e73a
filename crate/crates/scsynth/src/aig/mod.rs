//! And-inverter graph: the structural substrate every synthesis pass operates on.
//!
//! Variables are numbered densely: variable 0 is the constant-false node,
//! variables `1..=num_inputs` are the primary inputs, and AND nodes follow.
//! A [`Lit`] packs a variable index and a complement bit, AIGER-style.

mod aiger;
mod sim;

pub use aiger::{parse_aiger, serialize_aiger, AigerError};
pub use sim::{equivalent, EquivMode, Equivalence};

use std::collections::HashMap;
use thiserror::Error;

/// A literal: `2 * var + complement`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(pub u32);

impl Lit {
    pub const FALSE: Lit = Lit(0);
    pub const TRUE: Lit = Lit(1);

    pub fn new(var: u32, complement: bool) -> Lit {
        Lit(var << 1 | complement as u32)
    }

    pub fn var(self) -> u32 {
        self.0 >> 1
    }

    pub fn is_complement(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn is_const(self) -> bool {
        self.var() == 0
    }

    /// The complemented literal.
    pub fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }

    /// Complement iff `c` is true.
    pub fn xor(self, c: bool) -> Lit {
        Lit(self.0 ^ c as u32)
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

/// A two-input AND node. Fanin literals are stored canonically with
/// `lo <= hi` so the structural hash sees one key per unordered pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AndNode {
    pub lo: Lit,
    pub hi: Lit,
}

#[derive(Debug, Error)]
pub enum AigError {
    #[error("literal {0} references variable {1} which does not exist (max {2})")]
    LiteralOutOfRange(u32, u32, u32),
    #[error("expected {expected} input bits, got {got}")]
    InputWidthMismatch { expected: usize, got: usize },
    #[error("circuits differ in arity: {0} in / {1} out vs {2} in / {3} out")]
    ArityMismatch(usize, usize, usize, usize),
    #[error("exhaustive equivalence is capped at 16 inputs, circuit has {0}")]
    TooManyInputs(usize),
}

/// Size and shape counters for an [`Aig`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AigStats {
    pub and_count: usize,
    pub depth: usize,
    pub input_count: usize,
    pub output_count: usize,
}

/// A combinational and-inverter graph with structural hashing.
///
/// Values are conceptually immutable once fully constructed: synthesis
/// passes build a fresh `Aig` rather than mutating a shared one.
#[derive(Debug, Clone)]
pub struct Aig {
    num_inputs: usize,
    nodes: Vec<AndNode>,
    outputs: Vec<Lit>,
    strash: HashMap<(Lit, Lit), Lit>,
}

impl Aig {
    pub fn new(num_inputs: usize) -> Aig {
        Aig {
            num_inputs,
            nodes: Vec::new(),
            outputs: Vec::new(),
            strash: HashMap::new(),
        }
    }

    pub fn num_inputs(&self) -> usize {
        self.num_inputs
    }

    pub fn num_outputs(&self) -> usize {
        self.outputs.len()
    }

    /// Total variable count including the constant and the inputs.
    pub fn num_vars(&self) -> usize {
        1 + self.num_inputs + self.nodes.len()
    }

    pub fn and_count(&self) -> usize {
        self.nodes.len()
    }

    /// Literal for primary input `i` (0-based).
    pub fn input_lit(&self, i: usize) -> Lit {
        debug_assert!(i < self.num_inputs);
        Lit::new(1 + i as u32, false)
    }

    pub fn outputs(&self) -> &[Lit] {
        &self.outputs
    }

    pub fn nodes(&self) -> &[AndNode] {
        &self.nodes
    }

    /// The AND node driving `var`, or `None` for the constant and inputs.
    pub fn node_of(&self, var: u32) -> Option<AndNode> {
        let first_and = 1 + self.num_inputs as u32;
        if var >= first_and {
            Some(self.nodes[(var - first_and) as usize])
        } else {
            None
        }
    }

    pub fn is_input_var(&self, var: u32) -> bool {
        var >= 1 && var <= self.num_inputs as u32
    }

    fn check_lit(&self, l: Lit) -> Result<(), AigError> {
        if (l.var() as usize) < self.num_vars() {
            Ok(())
        } else {
            Err(AigError::LiteralOutOfRange(
                l.0,
                l.var(),
                self.num_vars() as u32 - 1,
            ))
        }
    }

    /// Add an AND of two literals, folding constants and hash-sharing
    /// structurally identical nodes.
    pub fn add_and(&mut self, a: Lit, b: Lit) -> Result<Lit, AigError> {
        self.check_lit(a)?;
        self.check_lit(b)?;
        Ok(self.add_and_unchecked(a, b))
    }

    pub(crate) fn add_and_unchecked(&mut self, a: Lit, b: Lit) -> Lit {
        // Constant and trivial folds.
        if a == Lit::FALSE || b == Lit::FALSE || a == b.not() {
            return Lit::FALSE;
        }
        if a == Lit::TRUE {
            return b;
        }
        if b == Lit::TRUE || a == b {
            return a;
        }
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if let Some(&l) = self.strash.get(&(lo, hi)) {
            return l;
        }
        let var = self.num_vars() as u32;
        self.nodes.push(AndNode { lo, hi });
        let l = Lit::new(var, false);
        self.strash.insert((lo, hi), l);
        l
    }

    /// OR via De Morgan.
    pub(crate) fn add_or(&mut self, a: Lit, b: Lit) -> Lit {
        !self.add_and_unchecked(!a, !b)
    }

    /// XOR as the canonical three-AND pattern.
    pub(crate) fn add_xor(&mut self, a: Lit, b: Lit) -> Lit {
        let p = self.add_and_unchecked(a, !b);
        let q = self.add_and_unchecked(!a, b);
        !self.add_and_unchecked(!p, !q)
    }

    /// MUX(sel, then, else): three ANDs in the general case.
    pub(crate) fn add_mux(&mut self, sel: Lit, t: Lit, e: Lit) -> Lit {
        if t == e {
            return t;
        }
        if t == e.not() {
            return self.add_xor(sel, e);
        }
        let p = self.add_and_unchecked(sel, t);
        let q = self.add_and_unchecked(!sel, e);
        !self.add_and_unchecked(!p, !q)
    }

    pub fn add_output(&mut self, l: Lit) -> Result<(), AigError> {
        self.check_lit(l)?;
        self.outputs.push(l);
        Ok(())
    }

    /// Logic depth of each variable, in AND levels.
    pub fn depths(&self) -> Vec<usize> {
        let first_and = 1 + self.num_inputs;
        let mut depth = vec![0usize; self.num_vars()];
        for (i, n) in self.nodes.iter().enumerate() {
            let v = first_and + i;
            depth[v] = 1 + depth[n.lo.var() as usize].max(depth[n.hi.var() as usize]);
        }
        depth
    }

    pub fn stats(&self) -> AigStats {
        let depth = self.depths();
        let d = self
            .outputs
            .iter()
            .map(|o| depth[o.var() as usize])
            .max()
            .unwrap_or(0);
        AigStats {
            and_count: self.nodes.len(),
            depth: d,
            input_count: self.num_inputs,
            output_count: self.outputs.len(),
        }
    }

    /// Fanout count per variable, counting output references.
    pub fn fanout_counts(&self) -> Vec<u32> {
        let mut refs = vec![0u32; self.num_vars()];
        for n in &self.nodes {
            refs[n.lo.var() as usize] += 1;
            refs[n.hi.var() as usize] += 1;
        }
        for o in &self.outputs {
            refs[o.var() as usize] += 1;
        }
        refs
    }

    /// Rebuild keeping only logic reachable from the outputs. Structural
    /// hashing on the rebuilt graph may merge nodes that became duplicates.
    pub fn compact(&self) -> Aig {
        let mut out = Aig::new(self.num_inputs);
        let mut map: Vec<Option<Lit>> = vec![None; self.num_vars()];
        map[0] = Some(Lit::FALSE);
        for i in 0..self.num_inputs {
            map[1 + i] = Some(out.input_lit(i));
        }
        // Iterative DFS per output cone.
        let mut stack: Vec<u32> = Vec::new();
        for o in &self.outputs {
            stack.push(o.var());
            while let Some(&v) = stack.last() {
                if map[v as usize].is_some() {
                    stack.pop();
                    continue;
                }
                let n = self.node_of(v).expect("non-terminal var must be an AND");
                let (ml, mh) = (map[n.lo.var() as usize], map[n.hi.var() as usize]);
                match (ml, mh) {
                    (Some(l), Some(h)) => {
                        let lit =
                            out.add_and_unchecked(l.xor(n.lo.is_complement()), h.xor(n.hi.is_complement()));
                        map[v as usize] = Some(lit);
                        stack.pop();
                    }
                    _ => {
                        if ml.is_none() {
                            stack.push(n.lo.var());
                        }
                        if mh.is_none() {
                            stack.push(n.hi.var());
                        }
                    }
                }
            }
        }
        for o in &self.outputs {
            let m = map[o.var() as usize].unwrap();
            out.outputs.push(m.xor(o.is_complement()));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn and2() -> Aig {
        let mut g = Aig::new(2);
        let a = g.input_lit(0);
        let b = g.input_lit(1);
        let y = g.add_and(a, b).unwrap();
        g.add_output(y).unwrap();
        g
    }

    #[test]
    fn add_and_folds() {
        let mut g = Aig::new(2);
        let x = g.input_lit(0);
        assert_eq!(g.add_and(x, Lit::TRUE).unwrap(), x);
        assert_eq!(g.add_and(x, Lit::FALSE).unwrap(), Lit::FALSE);
        assert_eq!(g.add_and(x, !x).unwrap(), Lit::FALSE);
        assert_eq!(g.add_and(x, x).unwrap(), x);
        assert_eq!(g.and_count(), 0);
    }

    #[test]
    fn add_and_hashes_unordered_pairs() {
        let mut g = Aig::new(2);
        let a = g.input_lit(0);
        let b = g.input_lit(1);
        let y1 = g.add_and(a, b).unwrap();
        let y2 = g.add_and(b, a).unwrap();
        assert_eq!(y1, y2);
        assert_eq!(g.and_count(), 1);
    }

    #[test]
    fn out_of_range_literal_rejected() {
        let mut g = Aig::new(1);
        let bogus = Lit::new(9, false);
        assert!(matches!(
            g.add_and(bogus, Lit::TRUE),
            Err(AigError::LiteralOutOfRange(..))
        ));
    }

    #[test]
    fn stats_identity_and_gate() {
        let mut buf = Aig::new(1);
        let x = buf.input_lit(0);
        buf.add_output(x).unwrap();
        let s = buf.stats();
        assert_eq!((s.and_count, s.depth), (0, 0));

        let s = and2().stats();
        assert_eq!((s.and_count, s.depth), (1, 1));
    }

    #[test]
    fn stats_depth_tree_vs_chain() {
        // Balanced: (a&b) & (c&d) -> depth 2; chain: ((a&b)&c)&d -> depth 3.
        let mut t = Aig::new(4);
        let (a, b, c, d) = (t.input_lit(0), t.input_lit(1), t.input_lit(2), t.input_lit(3));
        let ab = t.add_and(a, b).unwrap();
        let cd = t.add_and(c, d).unwrap();
        let y = t.add_and(ab, cd).unwrap();
        t.add_output(y).unwrap();
        assert_eq!(t.stats().depth, 2);

        let mut ch = Aig::new(4);
        let (a, b, c, d) = (ch.input_lit(0), ch.input_lit(1), ch.input_lit(2), ch.input_lit(3));
        let ab = ch.add_and(a, b).unwrap();
        let abc = ch.add_and(ab, c).unwrap();
        let y = ch.add_and(abc, d).unwrap();
        ch.add_output(y).unwrap();
        assert_eq!(ch.stats().depth, 3);
    }

    #[test]
    fn compact_drops_dead_nodes() {
        let mut g = Aig::new(3);
        let a = g.input_lit(0);
        let b = g.input_lit(1);
        let c = g.input_lit(2);
        let live = g.add_and(a, b).unwrap();
        let _dead = g.add_and(b, c).unwrap();
        g.add_output(live).unwrap();
        let h = g.compact();
        assert_eq!(h.and_count(), 1);
        assert_eq!(h.num_inputs(), 3);
    }
}
