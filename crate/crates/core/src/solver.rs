//! Coloring feasibility: can `S` be `c`-colored with no monochromatic
//! triangle having at most `s` interior points?
//!
//! The question is proper coloring of the forbidden-triangle hypergraph,
//! whose edges are the triples with interior count `<= s`. [`decide`] runs a
//! complete backtracking search over it; [`export_cnf`] writes the same
//! problem as DIMACS CNF for an external solver, and [`verify_model`] checks
//! any claimed solution independently of both.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use crate::chroma::Coloring;
use crate::error::{Error, Result};
use crate::geom::{InteriorTable, PointSet, Triangle};
use crate::random::Sampler;

/// Triples with interior count at most `threshold`, with per-point incidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenHypergraph {
    n: usize,
    threshold: Option<u32>,
    edges: Vec<Triangle>,
    incidence: Vec<Vec<usize>>,
}

impl ForbiddenHypergraph {
    /// Hypergraph on `n` vertices with the given edges, which must be in
    /// range.
    pub fn from_edges(n: usize, mut edges: Vec<Triangle>) -> Result<Self> {
        if let Some(&i) = edges.iter().flat_map(|t| t.vertices()).find(|&i| i >= n).as_ref() {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
        edges.sort_unstable();
        edges.dedup();
        let mut incidence = vec![Vec::new(); n];
        for (e, t) in edges.iter().enumerate() {
            for v in t.vertices() {
                incidence[v].push(e);
            }
        }
        Ok(ForbiddenHypergraph { n, threshold: None, edges, incidence })
    }

    pub fn num_points(&self) -> usize {
        self.n
    }

    pub fn threshold(&self) -> Option<u32> {
        self.threshold
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[Triangle] {
        &self.edges
    }

    /// Edge ids containing point `p`.
    pub fn incident(&self, p: usize) -> &[usize] {
        &self.incidence[p]
    }

    pub fn degree(&self, p: usize) -> usize {
        self.incidence[p].len()
    }

    /// Whether `colors` (1-based, one per point) leaves some edge
    /// monochromatic; returns the first such edge.
    pub fn first_monochromatic(&self, colors: &[u32]) -> Option<Triangle> {
        self.edges.iter().copied().find(|t| {
            let [a, b, c] = t.vertices();
            colors[a] == colors[b] && colors[b] == colors[c]
        })
    }
}

pub fn build_hypergraph(set: &PointSet, s: u32) -> ForbiddenHypergraph {
    hypergraph_from_table(&InteriorTable::new(set), s)
}

pub fn hypergraph_from_table(table: &InteriorTable, s: u32) -> ForbiddenHypergraph {
    let n = table.len();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if table.count(a, b, c) <= s {
                    edges.push(Triangle::from_sorted(a, b, c));
                }
            }
        }
    }
    let mut h = ForbiddenHypergraph::from_edges(n, edges).expect("indices come from the table");
    h.threshold = Some(s);
    h
}

/// Resource limits for a search. `None` means unlimited.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub time: Option<Duration>,
    pub nodes: Option<u64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn time(limit: Duration) -> Self {
        Budget { time: Some(limit), nodes: None }
    }

    pub fn nodes(limit: u64) -> Self {
        Budget { time: None, nodes: Some(limit) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// A coloring with no monochromatic edge, already verified.
    Feasible(Coloring),
    /// The search tree was exhausted.
    Infeasible,
    /// Not an answer: the budget ran out first.
    BudgetExceeded,
}

impl Verdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Verdict::Feasible(_))
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, Verdict::Infeasible)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Feasible(_) => "feasible",
            Verdict::Infeasible => "infeasible",
            Verdict::BudgetExceeded => "budget_exceeded",
        }
    }

    /// CLI exit code: 0 feasible, 1 infeasible, 3 budget exceeded.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Feasible(_) => 0,
            Verdict::Infeasible => 1,
            Verdict::BudgetExceeded => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Branching decisions tried.
    pub nodes: u64,
    /// Points colored by propagation rather than branching.
    pub forced: u64,
    pub elapsed: Duration,
    pub edges: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub verdict: Verdict,
    pub stats: SearchStats,
}

/// Search knobs. The defaults are what [`decide`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Restrict branching to colors `1..=used + 1`.
    pub symmetry_breaking: bool,
    /// Branch on the unassigned point with fewest remaining colors (ties by
    /// static order) instead of the static order alone.
    pub dynamic_order: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { symmetry_breaking: true, dynamic_order: false }
    }
}

struct Search<'a> {
    h: &'a ForbiddenHypergraph,
    c: u32,
    config: SearchConfig,
    order: Vec<usize>,
    color: Vec<u32>,
    domain: Vec<u64>,
    domain_trail: Vec<(usize, u64)>,
    assigned: Vec<usize>,
    used: u32,
    queue: Vec<(usize, u32)>,
    stats: SearchStats,
    start: Instant,
    budget: Budget,
    out_of_budget: bool,
}

enum Step {
    Found,
    Exhausted,
    Stopped,
}

impl<'a> Search<'a> {
    fn new(h: &'a ForbiddenHypergraph, c: u32, budget: Budget, config: SearchConfig) -> Self {
        let n = h.num_points();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&p| (std::cmp::Reverse(h.degree(p)), p));
        let full = if c == 64 { u64::MAX } else { (1u64 << c) - 1 };
        Search {
            h,
            c,
            config,
            order,
            color: vec![0; n],
            domain: vec![full; n],
            domain_trail: Vec::new(),
            assigned: Vec::new(),
            used: 0,
            queue: Vec::new(),
            stats: SearchStats { edges: h.edges().len(), ..Default::default() },
            start: Instant::now(),
            budget,
            out_of_budget: false,
        }
    }

    fn remove(&mut self, v: usize, k: u32) -> bool {
        let bit = 1u64 << (k - 1);
        let d = self.domain[v];
        if d & bit == 0 {
            return true;
        }
        self.domain_trail.push((v, d));
        let d = d & !bit;
        self.domain[v] = d;
        if d == 0 {
            return false;
        }
        if d.is_power_of_two() {
            self.queue.push((v, d.trailing_zeros() + 1));
        }
        true
    }

    /// Colors `p` with `k` and propagates; false on a conflict.
    fn assign(&mut self, p: usize, k: u32) -> bool {
        self.queue.clear();
        self.queue.push((p, k));
        let mut first = true;
        while let Some((p, k)) = self.queue.pop() {
            if self.color[p] != 0 {
                if self.color[p] == k {
                    continue;
                }
                return false;
            }
            if self.domain[p] & (1u64 << (k - 1)) == 0 {
                return false;
            }
            if !first {
                self.stats.forced += 1;
            }
            first = false;
            self.color[p] = k;
            self.assigned.push(p);
            self.used = self.used.max(k);
            let h = self.h;
            for &e in h.incident(p) {
                let [a, b, c] = h.edges()[e].vertices();
                let (u, v) = match p {
                    _ if p == a => (b, c),
                    _ if p == b => (a, c),
                    _ => (a, b),
                };
                let (cu, cv) = (self.color[u], self.color[v]);
                if cu == k && cv == k {
                    return false;
                }
                if cu == k && cv == 0 && !self.remove(v, k) {
                    return false;
                }
                if cv == k && cu == 0 && !self.remove(u, k) {
                    return false;
                }
            }
        }
        true
    }

    fn undo(&mut self, domain_mark: usize, assigned_mark: usize, used: u32) {
        while self.domain_trail.len() > domain_mark {
            let (v, d) = self.domain_trail.pop().unwrap();
            self.domain[v] = d;
        }
        while self.assigned.len() > assigned_mark {
            let p = self.assigned.pop().unwrap();
            self.color[p] = 0;
        }
        self.used = used;
    }

    fn next_point(&self) -> Option<usize> {
        let mut unassigned = self.order.iter().copied().filter(|&p| self.color[p] == 0);
        if !self.config.dynamic_order {
            return unassigned.next();
        }
        // unused colors are never pruned, so compare only the used ones
        let mask = if self.used >= 64 { u64::MAX } else { (1u64 << self.used) - 1 };
        unassigned.min_by_key(|&p| (self.domain[p] & mask).count_ones())
    }

    fn over_budget(&mut self) -> bool {
        if let Some(limit) = self.budget.nodes {
            if self.stats.nodes >= limit {
                self.out_of_budget = true;
            }
        }
        if let Some(limit) = self.budget.time {
            if self.stats.nodes.is_multiple_of(1024) && self.start.elapsed() >= limit {
                self.out_of_budget = true;
            }
        }
        self.out_of_budget
    }

    fn run(&mut self) -> Step {
        let Some(p) = self.next_point() else {
            return Step::Found;
        };
        let top = if self.config.symmetry_breaking {
            (self.used + 1).min(self.c)
        } else {
            self.c
        };
        for k in 1..=top {
            if self.domain[p] & (1u64 << (k - 1)) == 0 {
                continue;
            }
            if self.over_budget() {
                return Step::Stopped;
            }
            self.stats.nodes += 1;
            let marks = (self.domain_trail.len(), self.assigned.len(), self.used);
            if self.assign(p, k) {
                match self.run() {
                    Step::Exhausted => {}
                    other => return other,
                }
            }
            self.undo(marks.0, marks.1, marks.2);
        }
        Step::Exhausted
    }
}

/// Complete search on a prebuilt hypergraph.
pub fn decide_hypergraph(
    h: &ForbiddenHypergraph,
    c: u32,
    budget: Budget,
    config: SearchConfig,
) -> Result<SearchOutcome> {
    if c == 0 || c > 64 {
        return Err(Error::InvalidArgument(format!("color count {c} outside 1..=64")));
    }
    let mut search = Search::new(h, c, budget, config);
    let step = search.run();
    let mut stats = search.stats;
    stats.elapsed = search.start.elapsed();
    let verdict = match step {
        Step::Found => {
            let colors = search.color.clone();
            if let Some(t) = h.first_monochromatic(&colors) {
                unreachable!("search produced a monochromatic edge {t}");
            }
            Verdict::Feasible(Coloring::new(colors, c)?)
        }
        Step::Exhausted => Verdict::Infeasible,
        Step::Stopped => Verdict::BudgetExceeded,
    };
    Ok(SearchOutcome { verdict, stats })
}

/// Does some `c`-coloring of `set` avoid every monochromatic triangle with at
/// most `s` interior points?
///
/// Colorings need not use every color. A feasible answer carries a verified
/// witness; an infeasible answer means the whole tree was searched.
pub fn decide(set: &PointSet, c: u32, s: u32, budget: Budget) -> Result<SearchOutcome> {
    decide_hypergraph(&build_hypergraph(set, s), c, budget, SearchConfig::default())
}

/// A CNF formula with 1-based variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i64>>,
    pub comments: Vec<String>,
}

impl Cnf {
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            writeln!(out, "c {c}").unwrap();
        }
        writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len()).unwrap();
        for clause in &self.clauses {
            for lit in clause {
                write!(out, "{lit} ").unwrap();
            }
            out.push_str("0\n");
        }
        out
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|cl| {
            cl.iter().any(|&l| {
                let v = assignment[(l.unsigned_abs() - 1) as usize];
                if l > 0 {
                    v
                } else {
                    !v
                }
            })
        })
    }
}

/// Variable for 0-based point `p` taking 0-based color `i`.
pub fn cnf_var(p: usize, i: u32, c: u32) -> i64 {
    (p as i64) * c as i64 + i as i64 + 1
}

/// Exactly-one color per point plus, for each edge and color, a clause
/// forbidding the edge to be monochromatic in that color.
pub fn export_cnf(h: &ForbiddenHypergraph, c: u32) -> Cnf {
    let n = h.num_points();
    let mut clauses = Vec::new();
    for p in 0..n {
        clauses.push((0..c).map(|i| cnf_var(p, i, c)).collect());
    }
    for p in 0..n {
        for i in 0..c {
            for j in i + 1..c {
                clauses.push(vec![-cnf_var(p, i, c), -cnf_var(p, j, c)]);
            }
        }
    }
    for t in h.edges() {
        let [a, b, d] = t.vertices();
        for i in 0..c {
            clauses.push(vec![-cnf_var(a, i, c), -cnf_var(b, i, c), -cnf_var(d, i, c)]);
        }
    }
    let mut comments = vec![format!("points {n} colors {c} edges {}", h.edges().len())];
    if let Some(s) = h.threshold() {
        comments.push(format!("forbidden: monochromatic triangles with at most {s} interior points"));
    }
    comments.push("variable p*colors+i+1 means point p (0-based) has color i+1".into());
    Cnf { num_vars: n * c as usize, clauses, comments }
}

pub fn parse_dimacs(text: &str) -> Result<Cnf> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    let mut comments = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(c) = line.strip_prefix('c') {
            if c.is_empty() || c.starts_with(' ') {
                comments.push(c.trim().to_string());
                continue;
            }
        }
        if line.starts_with('p') {
            let f: Vec<&str> = line.split_whitespace().collect();
            match f.as_slice() {
                ["p", "cnf", v, c] => {
                    let parse = |s: &str| {
                        s.parse::<usize>().map_err(|_| Error::Parse {
                            line: i + 1,
                            message: "bad header".into(),
                        })
                    };
                    header = Some((parse(v)?, parse(c)?));
                }
                _ => {
                    return Err(Error::Parse { line: i + 1, message: "bad header".into() });
                }
            }
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(Error::Parse { line: i + 1, message: "clause before header".into() });
        };
        for tok in line.split_whitespace() {
            let lit: i64 = tok.parse().map_err(|_| Error::Parse {
                line: i + 1,
                message: format!("`{tok}` is not a literal"),
            })?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > vars {
                return Err(Error::Parse { line: i + 1, message: format!("literal {lit} out of range") });
            } else {
                current.push(lit);
            }
        }
    }
    let Some((num_vars, num_clauses)) = header else {
        return Err(Error::Parse { line: 0, message: "missing `p cnf` header".into() });
    };
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != num_clauses {
        return Err(Error::Parse {
            line: 0,
            message: format!("header promises {num_clauses} clauses, found {}", clauses.len()),
        });
    }
    Ok(Cnf { num_vars, clauses, comments })
}

/// What an external solver reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverAnswer {
    Unsatisfiable,
    Model(Vec<bool>),
    Unknown,
}

/// Reads competition-style solver output: an `s` status line and `v`
/// literal lines. Variables the model omits are false. Lines of bare
/// literals (no `v` prefix) are accepted too.
pub fn parse_solver_output(text: &str, num_vars: usize) -> Result<SolverAnswer> {
    let mut status: Option<&str> = None;
    let mut values: Vec<Option<bool>> = vec![None; num_vars];
    let mut saw_literals = false;
    for line in text.lines() {
        let line = line.trim();
        if let Some(s) = line.strip_prefix("s ") {
            status = Some(s.trim());
            continue;
        }
        let body = match line.strip_prefix('v') {
            Some(rest) => rest,
            None if line.starts_with(|ch: char| ch == '-' || ch.is_ascii_digit()) => line,
            None => continue,
        };
        for tok in body.split_whitespace() {
            let lit: i64 = tok
                .parse()
                .map_err(|_| Error::MalformedModel(format!("`{tok}` is not a literal")))?;
            if lit == 0 {
                continue;
            }
            saw_literals = true;
            let v = lit.unsigned_abs() as usize;
            if v > num_vars {
                return Err(Error::MalformedModel(format!("variable {v} exceeds {num_vars}")));
            }
            if values[v - 1].replace(lit > 0).is_some_and(|old| old != (lit > 0)) {
                return Err(Error::MalformedModel(format!("variable {v} assigned twice")));
            }
        }
    }
    match status {
        Some("UNSATISFIABLE") => Ok(SolverAnswer::Unsatisfiable),
        Some("SATISFIABLE") | None if saw_literals => Ok(SolverAnswer::Model(
            values.into_iter().map(|v| v.unwrap_or(false)).collect(),
        )),
        _ => Ok(SolverAnswer::Unknown),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelCheck {
    /// The decoded coloring.
    Ok(Coloring),
    NotExactlyOne { point: usize },
    Violated(Triangle),
}

impl ModelCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, ModelCheck::Ok(_))
    }
}

/// Checks an assignment of the `n * c` variables of [`export_cnf`]: exactly
/// one color per point and no monochromatic edge.
pub fn verify_model(h: &ForbiddenHypergraph, c: u32, assignment: &[bool]) -> Result<ModelCheck> {
    let n = h.num_points();
    if c == 0 || assignment.len() != n * c as usize {
        return Err(Error::MalformedModel(format!(
            "expected {} values for {n} points and {c} colors, got {}",
            n * c as usize,
            assignment.len()
        )));
    }
    let mut colors = Vec::with_capacity(n);
    for p in 0..n {
        let row = &assignment[p * c as usize..(p + 1) * c as usize];
        let mut on = row.iter().enumerate().filter(|(_, &b)| b);
        match (on.next(), on.next()) {
            (Some((i, _)), None) => colors.push(i as u32 + 1),
            _ => return Ok(ModelCheck::NotExactlyOne { point: p }),
        }
    }
    if let Some(t) = h.first_monochromatic(&colors) {
        return Ok(ModelCheck::Violated(t));
    }
    Ok(ModelCheck::Ok(Coloring::new(colors, c)?))
}

/// Encodes a coloring as an assignment of the [`export_cnf`] variables.
pub fn coloring_to_assignment(coloring: &Coloring) -> Vec<bool> {
    let c = coloring.num_colors() as usize;
    let mut a = vec![false; coloring.len() * c];
    for (p, &k) in coloring.colors().iter().enumerate() {
        a[p * c + (k - 1) as usize] = true;
    }
    a
}

/// Settings for [`witness_search`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessConfig {
    pub time: Duration,
    /// Perturbation steps per sampled starting set.
    pub climb_steps: usize,
    /// Node limit for each individual `decide` call.
    pub nodes_per_candidate: u64,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        WitnessConfig { time: Duration::from_secs(60), climb_steps: 200, nodes_per_candidate: 200_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessResult {
    Found { set: PointSet, coloring: Coloring, candidates: u64 },
    NotFound { candidates: u64 },
}

/// Hill-climbing score: fewer forbidden edges first, then smaller minimum
/// degree.
fn score(h: &ForbiddenHypergraph) -> (usize, usize) {
    let min_degree = (0..h.num_points()).map(|p| h.degree(p)).min().unwrap_or(0);
    (h.edges().len(), min_degree)
}

/// Looks for an `n`-point set with a feasible `c`-coloring at threshold
/// `s`: samples a start set, then repeatedly perturbs it, keeping moves that
/// do not worsen the score, and runs [`decide`] on every accepted set.
pub fn witness_search<S: Sampler>(
    sampler: &mut S,
    n: usize,
    c: u32,
    s: u32,
    config: WitnessConfig,
) -> Result<WitnessResult> {
    let start = Instant::now();
    let mut candidates = 0u64;
    let try_set = |h: &ForbiddenHypergraph, candidates: &mut u64| -> Result<Option<Coloring>> {
        *candidates += 1;
        let remaining = config.time.saturating_sub(start.elapsed());
        let budget = Budget { time: Some(remaining), nodes: Some(config.nodes_per_candidate) };
        let outcome = decide_hypergraph(h, c, budget, SearchConfig::default())?;
        Ok(match outcome.verdict {
            Verdict::Feasible(col) => Some(col),
            _ => None,
        })
    };
    while start.elapsed() < config.time {
        let mut set = sampler.sample(n)?;
        let mut h = build_hypergraph(&set, s);
        let mut best = score(&h);
        if let Some(coloring) = try_set(&h, &mut candidates)? {
            return Ok(WitnessResult::Found { set, coloring, candidates });
        }
        for _ in 0..config.climb_steps {
            if start.elapsed() >= config.time {
                break;
            }
            let next = sampler.perturb(&set);
            let nh = build_hypergraph(&next, s);
            let sc = score(&nh);
            if sc > best {
                continue;
            }
            let improved = sc < best;
            set = next;
            h = nh;
            best = sc;
            if improved || candidates.is_multiple_of(4) {
                if let Some(coloring) = try_set(&h, &mut candidates)? {
                    return Ok(WitnessResult::Found { set, coloring, candidates });
                }
            } else {
                candidates += 1;
            }
        }
    }
    Ok(WitnessResult::NotFound { candidates })
}
