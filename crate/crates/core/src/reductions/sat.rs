//! Balanced 3-SAT(4) to a degreewidth threshold instance.
//!
//! Vertex ids are laid out block by block in the order `A, B, C, D, X, Y, U, H`.
//! Inside `X` the pair of variable `i` is `(v_i, v'_i)` at consecutive ids,
//! `Y` holds `(q_l, q'_l)` likewise, and `U` holds
//! `u^1_i, u^2_i, ū^1_i, ū^2_i` for each variable in turn. Regular blocks are
//! rotational tournaments whose natural ordering is the id order.

use std::ops::Range;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tournament::{Ordering, Tournament};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Literal {
    /// 0-based variable id.
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Self {
            var,
            positive: true,
        }
    }

    pub fn neg(var: usize) -> Self {
        Self {
            var,
            positive: false,
        }
    }
}

/// A CNF formula with three literals per clause in which every variable
/// occurs twice positively and twice negatively. Variables that do not occur
/// at all are tolerated; they appear when parity is fixed by padding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Balanced3Sat4 {
    pub n_vars: usize,
    pub clauses: Vec<[Literal; 3]>,
}

impl Balanced3Sat4 {
    pub fn new(n_vars: usize, clauses: Vec<[Literal; 3]>) -> Result<Self> {
        let f = Self { n_vars, clauses };
        f.validate()?;
        Ok(f)
    }

    pub fn n(&self) -> usize {
        self.n_vars
    }

    pub fn m(&self) -> usize {
        self.clauses.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_vars == 0 {
            return Err(Error::InvalidFormula("no variables".into()));
        }
        let mut counts = vec![[0usize; 2]; self.n_vars];
        for (l, clause) in self.clauses.iter().enumerate() {
            for (a, lit) in clause.iter().enumerate() {
                if lit.var >= self.n_vars {
                    return Err(Error::InvalidFormula(format!(
                        "clause {} uses variable {} of {}",
                        l + 1,
                        lit.var + 1,
                        self.n_vars
                    )));
                }
                if clause[..a].iter().any(|other| other.var == lit.var) {
                    return Err(Error::InvalidFormula(format!(
                        "clause {} repeats variable {}",
                        l + 1,
                        lit.var + 1
                    )));
                }
                counts[lit.var][usize::from(!lit.positive)] += 1;
            }
        }
        for (var, [p, q]) in counts.into_iter().enumerate() {
            if (p, q) != (2, 2) && (p, q) != (0, 0) {
                return Err(Error::InvalidFormula(format!(
                    "variable {} occurs {p} times positively and {q} times negatively",
                    var + 1
                )));
            }
        }
        Ok(())
    }

    /// Two disjoint copies; the copy's variables are shifted by `n`.
    pub fn duplicated(&self) -> Self {
        let n = self.n_vars;
        let shifted = self.clauses.iter().map(|c| {
            c.map(|lit| Literal {
                var: lit.var + n,
                ..lit
            })
        });
        Self {
            n_vars: 2 * n,
            clauses: self.clauses.iter().copied().chain(shifted).collect(),
        }
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|lit| assignment[lit.var] == lit.positive))
    }

    /// Literals of clause `l` falsified by `assignment`.
    pub fn unsatisfied_literals(&self, l: usize, assignment: &[bool]) -> usize {
        self.clauses[l]
            .iter()
            .filter(|lit| assignment[lit.var] != lit.positive)
            .count()
    }

    /// Brute force over all assignments; `None` if unsatisfiable.
    pub fn find_satisfying(&self) -> Option<Vec<bool>> {
        assert!(self.n_vars < 32, "brute force limited to 31 variables");
        (0u32..1 << self.n_vars)
            .map(|mask| {
                (0..self.n_vars)
                    .map(|v| mask >> v & 1 == 1)
                    .collect::<Vec<_>>()
            })
            .find(|a| self.satisfied_by(a))
    }

    /// Polarity of variable `var` in clause `l`, if it occurs there.
    pub fn occurrence(&self, l: usize, var: usize) -> Option<bool> {
        self.clauses[l]
            .iter()
            .find(|lit| lit.var == var)
            .map(|lit| lit.positive)
    }
}

/// Brings a valid formula to an odd number of variables and an even number
/// of clauses, preserving satisfiability.
pub fn normalize_parity(f: &Balanced3Sat4) -> Result<Balanced3Sat4> {
    f.validate()?;
    let mut out = f.clone();
    // 3m = 4·(occurring variables) makes m a multiple of 4 once validated, so
    // in practice only the padding variable is ever added.
    if out.m() % 2 == 1 {
        out = out.duplicated();
    }
    if out.n_vars.is_multiple_of(2) {
        out.n_vars += 1;
    }
    Ok(out)
}

/// Least odd `W > n³ + m³` with `(W+1)/2 + m + n` odd.
pub fn choose_w(n: usize, m: usize) -> usize {
    let mut w = n.pow(3) + m.pow(3) + 1;
    loop {
        if w % 2 == 1 && (w.div_ceil(2) + m + n) % 2 == 1 {
            return w;
        }
        w += 1;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Block {
    A,
    B,
    C,
    D,
    X,
    Y,
    U,
    H,
}

impl Block {
    pub const ALL: [Block; 8] = [
        Block::A,
        Block::B,
        Block::C,
        Block::D,
        Block::X,
        Block::Y,
        Block::U,
        Block::H,
    ];
}

/// Sizes and id ranges of the blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SatLayout {
    pub n: usize,
    pub m: usize,
    pub w: usize,
}

impl SatLayout {
    pub fn size(&self, block: Block) -> usize {
        match block {
            Block::A | Block::D => self.w.div_ceil(2) + self.m + self.n,
            Block::B | Block::C => self.w,
            Block::X => 2 * self.n,
            Block::Y => 2 * self.m,
            Block::U => 4 * self.n,
            Block::H => 2,
        }
    }

    pub fn range(&self, block: Block) -> Range<usize> {
        let start: usize = Block::ALL
            .iter()
            .take_while(|&&b| b != block)
            .map(|&b| self.size(b))
            .sum();
        start..start + self.size(block)
    }

    pub fn total(&self) -> usize {
        Block::ALL.iter().map(|&b| self.size(b)).sum()
    }

    pub fn v(&self, i: usize) -> usize {
        self.range(Block::X).start + 2 * i
    }

    pub fn v_prime(&self, i: usize) -> usize {
        self.v(i) + 1
    }

    pub fn q(&self, l: usize) -> usize {
        self.range(Block::Y).start + 2 * l
    }

    pub fn q_prime(&self, l: usize) -> usize {
        self.q(l) + 1
    }

    /// `u^p_i` (`bar = false`) or `ū^p_i` (`bar = true`), `p ∈ {1, 2}`.
    pub fn u(&self, i: usize, p: usize, bar: bool) -> usize {
        debug_assert!(p == 1 || p == 2);
        self.range(Block::U).start + 4 * i + 2 * usize::from(bar) + (p - 1)
    }

    pub fn h(&self, p: usize) -> usize {
        debug_assert!(p == 1 || p == 2);
        self.range(Block::H).start + p - 1
    }

    pub fn block_of(&self, v: usize) -> Block {
        *Block::ALL
            .iter()
            .find(|&&b| self.range(b).contains(&v))
            .expect("vertex in range")
    }

    pub fn label(&self, v: usize) -> String {
        let block = self.block_of(v);
        let k = v - self.range(block).start;
        let prime = if k % 2 == 1 { "'" } else { "" };
        match block {
            Block::A => format!("a{}", k + 1),
            Block::B => format!("b{}", k + 1),
            Block::C => format!("c{}", k + 1),
            Block::D => format!("d{}", k + 1),
            Block::X => format!("v{}{prime}", k / 2 + 1),
            Block::Y => format!("q{}{prime}", k / 2 + 1),
            Block::U => {
                let bar = if k % 4 >= 2 { "ubar" } else { "u" };
                format!("{bar}{}_{}", k % 2 + 1, k / 4 + 1)
            }
            Block::H => format!("h{}", k + 1),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SatReductionInstance {
    pub formula: Balanced3Sat4,
    pub layout: SatLayout,
    pub w: usize,
    /// Degreewidth below this value is equivalent to satisfiability.
    pub threshold: usize,
    pub tournament: Tournament,
}

impl SatReductionInstance {
    pub fn labels(&self) -> Vec<String> {
        (0..self.layout.total())
            .map(|v| self.layout.label(v))
            .collect()
    }

    pub fn block_map(&self) -> Vec<Block> {
        (0..self.layout.total())
            .map(|v| self.layout.block_of(v))
            .collect()
    }
}

/// Pair matrix filled bullet by bullet; setting a pair twice is a bug.
struct Builder {
    n: usize,
    cells: Vec<u8>,
}

impl Builder {
    fn new(n: usize) -> Self {
        Self {
            n,
            cells: vec![0; n * n],
        }
    }

    fn arc(&mut self, u: usize, v: usize) {
        let (lo, hi) = (u.min(v), u.max(v));
        let cell = &mut self.cells[lo * self.n + hi];
        assert_eq!(*cell, 0, "pair {{{u}, {v}}} set twice");
        *cell = if u < v { 1 } else { 2 };
    }

    fn dominate(&mut self, from: &[Range<usize>], to: &[Range<usize>]) {
        for r in from {
            for u in r.clone() {
                for s in to {
                    for v in s.clone() {
                        self.arc(u, v);
                    }
                }
            }
        }
    }

    fn regular(&mut self, r: Range<usize>) {
        let k = (r.len() - 1) / 2;
        for i in r.clone() {
            for j in i + 1..r.end {
                if j - i <= k {
                    self.arc(i, j);
                } else {
                    self.arc(j, i);
                }
            }
        }
    }

    fn acyclic(&mut self, order: &[usize]) {
        for (a, &u) in order.iter().enumerate() {
            for &v in &order[a + 1..] {
                self.arc(u, v);
            }
        }
    }

    fn path(&mut self, a: usize, b: usize, c: usize) {
        self.arc(a, b);
        self.arc(b, c);
    }

    fn finish(self) -> Tournament {
        let n = self.n;
        let cells = self.cells;
        Tournament::from_fn(n, |u, v| match cells[u * n + v] {
            1 => true,
            2 => false,
            _ => panic!("pair {{{u}, {v}}} never set"),
        })
        .expect("non-empty")
    }
}

/// Builds the threshold instance. The formula must already have an odd
/// number of variables and an even number of clauses.
pub fn sat_to_degreewidth(f: &Balanced3Sat4) -> Result<SatReductionInstance> {
    f.validate()?;
    let (n, m) = (f.n(), f.m());
    if n % 2 == 0 || m % 2 == 1 {
        return Err(Error::InvalidFormula(format!(
            "need an odd number of variables and an even number of clauses, got n = {n}, m = {m}"
        )));
    }
    let w = choose_w(n, m);
    let layout = SatLayout { n, m, w };
    let r = |b| layout.range(b);
    let mut t = Builder::new(layout.total());

    for b in [Block::A, Block::B, Block::C, Block::D] {
        t.regular(r(b));
    }
    t.dominate(&[r(Block::D)], &[r(Block::A)]);
    t.dominate(&[r(Block::A)], &[r(Block::B), r(Block::C)]);
    t.dominate(&[r(Block::B)], &[r(Block::C)]);
    t.dominate(&[r(Block::B), r(Block::C)], &[r(Block::D)]);

    t.acyclic(&r(Block::X).collect::<Vec<_>>());
    t.dominate(&[r(Block::A), r(Block::C)], &[r(Block::X)]);
    t.dominate(&[r(Block::X)], &[r(Block::B), r(Block::D)]);

    t.acyclic(&r(Block::Y).collect::<Vec<_>>());
    t.dominate(&[r(Block::B), r(Block::D)], &[r(Block::Y)]);
    t.dominate(&[r(Block::Y)], &[r(Block::A), r(Block::C)]);

    for l in 0..m {
        let clause = [layout.q(l), layout.q_prime(l)];
        for i in 0..n {
            let pair = [layout.v(i), layout.v_prime(i)];
            match f.occurrence(l, i) {
                Some(true) => {
                    for x in pair {
                        for y in clause {
                            t.arc(x, y);
                        }
                    }
                }
                Some(false) => {
                    for x in pair {
                        for y in clause {
                            t.arc(y, x);
                        }
                    }
                }
                None => {
                    t.path(pair[0], clause[0], pair[1]);
                    t.path(pair[1], clause[1], pair[0]);
                }
            }
        }
    }

    t.acyclic(&r(Block::U).collect::<Vec<_>>());
    t.dominate(&[r(Block::U)], &[r(Block::A), r(Block::Y), r(Block::C)]);
    t.dominate(&[r(Block::B), r(Block::D)], &[r(Block::U)]);
    for i in 0..n {
        for k in 0..n {
            let (v, vp) = (layout.v(k), layout.v_prime(k));
            if k == i {
                t.path(v, layout.u(i, 1, false), vp);
                t.path(vp, layout.u(i, 2, false), v);
                t.path(v, layout.u(i, 1, true), vp);
                t.path(vp, layout.u(i, 2, true), v);
            } else {
                for p in [1, 2] {
                    t.path(v, layout.u(i, p, false), vp);
                    t.path(vp, layout.u(i, p, true), v);
                }
            }
        }
    }

    t.acyclic(&[layout.h(1), layout.h(2)]);
    t.dominate(
        &[
            r(Block::B),
            r(Block::C),
            r(Block::X),
            r(Block::Y),
            r(Block::D),
        ],
        &[r(Block::H)],
    );
    t.dominate(&[r(Block::H)], &[r(Block::U)]);
    // The only block pair left open; A beats H.
    t.dominate(&[r(Block::A)], &[r(Block::H)]);

    Ok(SatReductionInstance {
        formula: f.clone(),
        layout,
        w,
        threshold: w + 2 * m + 3 * n + 4,
        tournament: t.finish(),
    })
}

/// Re-derives the construction from the tournament and the layout and lists
/// every discrepancy. An empty list means the instance is exactly as specified.
pub fn audit_construction(inst: &SatReductionInstance) -> Vec<String> {
    let t = &inst.tournament;
    let l = &inst.layout;
    let mut issues = Vec::new();
    let (n, m, w) = (l.n, l.m, l.w);

    if t.n() != 3 * w + 4 * m + 8 * n + 3 {
        issues.push(format!("total {} != 3W+4m+8n+3", t.n()));
    }
    if w % 2 == 0 || w <= n.pow(3) + m.pow(3) || (w.div_ceil(2) + m + n) % 2 == 0 {
        issues.push(format!("W = {w} violates the weight rule"));
    }
    if w != choose_w(n, m) {
        issues.push(format!("W = {w} is not the least admissible weight"));
    }
    if inst.threshold != w + 2 * m + 3 * n + 4 {
        issues.push("threshold != W+2m+3n+4".into());
    }

    let block = |b: Block| l.range(b).collect::<Vec<_>>();
    let beats_all =
        |from: &[usize], to: &[usize]| from.iter().all(|&x| to.iter().all(|&y| t.has_arc(x, y)));

    for b in [Block::A, Block::B, Block::C, Block::D] {
        let vs = block(b);
        let half = (vs.len() - 1) / 2;
        if vs.len() % 2 == 0 {
            issues.push(format!("{b:?} has even order {}", vs.len()));
        }
        for &v in &vs {
            let inside = vs.iter().filter(|&&u| t.has_arc(u, v)).count();
            if inside != half {
                issues.push(format!(
                    "{b:?}: vertex {v} has in-degree {inside} inside the block"
                ));
            }
        }
        let natural = Ordering::identity(vs.len());
        let sub = t.induced(&vs).expect("non-empty block");
        let width = sub
            .tournament
            .backward_profile(&natural)
            .expect("same size")
            .width;
        if width != half {
            issues.push(format!("{b:?}: natural ordering has width {width}"));
        }
    }
    for b in [Block::X, Block::Y, Block::U, Block::H] {
        let vs = block(b);
        for (i, &x) in vs.iter().enumerate() {
            for &y in &vs[i + 1..] {
                if !t.has_arc(x, y) {
                    issues.push(format!("{b:?} not acyclic in id order at ({y}, {x})"));
                }
            }
        }
    }

    use Block::*;
    let relations: [(&[Block], &[Block]); 13] = [
        (&[D], &[A]),
        (&[A], &[B, C]),
        (&[B], &[C]),
        (&[B, C], &[D]),
        (&[A, C], &[X]),
        (&[X], &[B, D]),
        (&[B, D], &[Y]),
        (&[Y], &[A, C]),
        (&[U], &[A, Y, C]),
        (&[B, D], &[U]),
        (&[B, C, X, Y, D], &[H]),
        (&[H], &[U]),
        (&[A], &[H]),
    ];
    for (from, to) in relations {
        let f: Vec<usize> = from.iter().flat_map(|&b| block(b)).collect();
        let g: Vec<usize> = to.iter().flat_map(|&b| block(b)).collect();
        if !beats_all(&f, &g) {
            issues.push(format!("{from:?} does not dominate {to:?}"));
        }
    }

    for c in 0..m {
        let (q, qp) = (l.q(c), l.q_prime(c));
        for i in 0..n {
            let (v, vp) = (l.v(i), l.v_prime(i));
            let ok = match inst.formula.occurrence(c, i) {
                Some(true) => beats_all(&[v, vp], &[q, qp]),
                Some(false) => beats_all(&[q, qp], &[v, vp]),
                None => {
                    t.has_arc(v, q) && t.has_arc(q, vp) && t.has_arc(vp, qp) && t.has_arc(qp, v)
                }
            };
            if !ok {
                issues.push(format!(
                    "clause {} / variable {}: gadget arcs wrong",
                    c + 1,
                    i + 1
                ));
            }
        }
    }

    for i in 0..n {
        for k in 0..n {
            let (v, vp) = (l.v(k), l.v_prime(k));
            let expected: [(usize, bool); 4] = if k == i {
                [
                    (l.u(i, 1, false), true),
                    (l.u(i, 2, false), false),
                    (l.u(i, 1, true), true),
                    (l.u(i, 2, true), false),
                ]
            } else {
                [
                    (l.u(i, 1, false), true),
                    (l.u(i, 2, false), true),
                    (l.u(i, 1, true), false),
                    (l.u(i, 2, true), false),
                ]
            };
            // true: v -> u -> v', false: v' -> u -> v
            for (u, forward) in expected {
                let (a, b) = if forward { (v, vp) } else { (vp, v) };
                if !(t.has_arc(a, u) && t.has_arc(u, b)) {
                    issues.push(format!(
                        "path through {} for variable {} is wrong",
                        l.label(u),
                        k + 1
                    ));
                }
            }
        }
    }
    issues
}

/// The nice ordering whose variable pairs sit in the true zone exactly for
/// the variables set to true.
pub fn nice_ordering_from_assignment(
    inst: &SatReductionInstance,
    assignment: &[bool],
) -> Result<Ordering> {
    let l = &inst.layout;
    if assignment.len() != l.n {
        return Err(Error::IncompleteAssignment {
            expected: l.n,
            found: assignment.len(),
        });
    }
    let zone = |value: bool| {
        (0..l.n)
            .filter(move |&i| assignment[i] == value)
            .flat_map(|i| [l.v(i), l.v_prime(i)])
    };
    let mut perm = Vec::with_capacity(l.total());
    perm.extend(l.range(Block::A));
    perm.extend(zone(true));
    perm.extend(l.range(Block::B));
    perm.extend(l.range(Block::U));
    perm.extend(l.range(Block::Y));
    perm.extend(l.range(Block::C));
    perm.extend(zone(false));
    perm.extend(l.range(Block::D));
    perm.extend(l.range(Block::H));
    Ordering::new(perm)
}

/// Reads the assignment off a nice ordering of width below the threshold.
pub fn assignment_from_nice_ordering(
    inst: &SatReductionInstance,
    sigma: &Ordering,
) -> Result<Vec<bool>> {
    let t = &inst.tournament;
    let l = &inst.layout;
    if sigma.len() != t.n() {
        return Err(Error::SizeMismatch {
            expected: t.n(),
            found: sigma.len(),
        });
    }
    let span = |b: Block| {
        let positions = l.range(b).map(|v| sigma.pos(v));
        let (lo, hi) = positions.fold((usize::MAX, 0), |(lo, hi), p| (lo.min(p), hi.max(p)));
        (lo, hi)
    };
    let chain = [
        Block::A,
        Block::B,
        Block::U,
        Block::Y,
        Block::C,
        Block::D,
        Block::H,
    ];
    for pair in chain.windows(2) {
        if span(pair[0]).1 > span(pair[1]).0 {
            return Err(Error::NotNice(format!(
                "{:?} is not entirely before {:?}",
                pair[0], pair[1]
            )));
        }
    }
    for b in [Block::U, Block::Y] {
        let r = l.range(b);
        if r.clone()
            .zip(r.skip(1))
            .any(|(x, y)| sigma.pos(x) > sigma.pos(y))
        {
            return Err(Error::NotNice(format!("{b:?} is not in topological order")));
        }
    }
    for b in [Block::A, Block::B, Block::C, Block::D] {
        let vs: Vec<usize> = l.range(b).collect();
        let half = (vs.len() - 1) / 2;
        for &v in &vs {
            let inside = vs
                .iter()
                .filter(|&&u| u != v && (sigma.pos(u) < sigma.pos(v)) == t.has_arc(v, u))
                .count();
            if inside > half {
                return Err(Error::NotNice(format!(
                    "{b:?} is not laid out optimally ({} has {inside} backward arcs inside)",
                    l.label(v)
                )));
            }
        }
    }
    let (a_end, b_start) = (span(Block::A).1, span(Block::B).0);
    let (c_end, d_start) = (span(Block::C).1, span(Block::D).0);
    let mut assignment = Vec::with_capacity(l.n);
    for i in 0..l.n {
        let (p, pp) = (sigma.pos(l.v(i)), sigma.pos(l.v_prime(i)));
        if p > pp {
            return Err(Error::NotNice(format!(
                "v{} is placed after v{}'",
                i + 1,
                i + 1
            )));
        }
        if a_end < p && pp < b_start {
            assignment.push(true);
        } else if c_end < p && pp < d_start {
            assignment.push(false);
        } else {
            return Err(Error::NotNice(format!(
                "pair of variable {} is outside both zones",
                i + 1
            )));
        }
    }

    let profile = t.backward_profile(sigma)?;
    if let Some(vertex) = (0..t.n()).find(|&v| profile.per_vertex[v] >= inst.threshold) {
        return Err(Error::ThresholdReached {
            vertex,
            degree: profile.per_vertex[vertex],
            threshold: inst.threshold,
        });
    }
    assert!(
        inst.formula.satisfied_by(&assignment),
        "nice ordering below the threshold yielded a falsifying assignment"
    );
    Ok(assignment)
}
