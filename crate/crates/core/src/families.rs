//! Formula families with known prime implicates, reductions from QBF and
//! exact cover, and random or exhaustive formula generation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::parse::is_identifier;

/// Default cap on the family parameter.
pub const DEFAULT_CAP: usize = 4;
/// Largest distinguished set [`generate`] will build.
pub const MAX_DISTINGUISHED: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    /// `∧_i (□a_i_1 ∨ □a_i_2)`: one prime implicate with `2^n` boxes.
    Thm18 { n: usize },
    /// A chain formula whose consequence `∨_q □q_1…q_n c` ranges over all
    /// strings of modalities.
    Thm19 { n: usize },
    /// `∧_i ((◇a_i_1 ∧ □b_i_1) ∨ (◇a_i_2 ∧ □b_i_2))`: `n^(2^n)` prime
    /// implicates.
    Thm21 { n: usize },
    /// `□(a ∧ b)` with an implicate that is not prime under D4.
    Thm11 { k: usize },
    Random {
        vars: usize,
        depth: usize,
        length: usize,
        seed: u64,
    },
}

/// Variable names `a, b, …, z`, then `v26, v27, …`.
pub fn var_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("v{i}")
    }
}

fn v(name: &str) -> Formula {
    Formula::var(name)
}

fn a_ij(letter: char, i: usize, j: usize) -> Formula {
    v(&format!("{letter}_{i}_{j}"))
}

fn implies(l: Formula, r: Formula) -> Formula {
    Formula::or(Formula::not(l), r)
}

/// All tuples in `{1,2}^n`, first coordinate most significant.
fn choices(n: usize) -> Vec<Vec<usize>> {
    (0..1usize << n)
        .map(|m| (0..n).map(|i| 1 + (m >> (n - 1 - i) & 1)).collect())
        .collect()
}

pub fn generate(spec: FamilySpec) -> Result<(Formula, Vec<Formula>)> {
    generate_with_cap(spec, DEFAULT_CAP)
}

pub fn generate_with_cap(spec: FamilySpec, cap: usize) -> Result<(Formula, Vec<Formula>)> {
    match spec {
        FamilySpec::Thm18 { n } => {
            check_param("n", n, 1, cap)?;
            let f = Formula::conj(
                (1..=n).map(|i| Formula::or(Formula::boxed(a_ij('a', i, 1)), Formula::boxed(a_ij('a', i, 2)))),
            )
            .unwrap();
            let clause = Formula::disj(choices(n).into_iter().map(|js| {
                Formula::boxed(Formula::conj(js.iter().enumerate().map(|(i, &j)| a_ij('a', i + 1, j))).unwrap())
            }))
            .unwrap();
            Ok((f, vec![clause]))
        }
        FamilySpec::Thm21 { n } => {
            check_param("n", n, 1, cap)?;
            let terms = choices(n);
            let count = (n as u128).pow(terms.len() as u32);
            if count > MAX_DISTINGUISHED as u128 {
                return Err(Error::CapExceeded("distinguished clause count", MAX_DISTINGUISHED));
            }
            let f = Formula::conj((1..=n).map(|i| {
                let side = |j| Formula::and(Formula::dia(a_ij('a', i, j)), Formula::boxed(a_ij('b', i, j)));
                Formula::or(side(1), side(2))
            }))
            .unwrap();
            // D(T) for the term choosing side fs[i] of conjunct i
            let d_sets: Vec<Vec<Formula>> = terms
                .iter()
                .map(|fs| {
                    let beta = Formula::conj(fs.iter().enumerate().map(|(i, &j)| a_ij('b', i + 1, j))).unwrap();
                    (0..n)
                        .map(|i| Formula::dia(Formula::and(a_ij('a', i + 1, fs[i]), beta.clone())))
                        .collect()
                })
                .collect();
            let clauses = (0..count as usize)
                .map(|mut m| {
                    let mut picks = vec![0; d_sets.len()];
                    for k in (0..d_sets.len()).rev() {
                        picks[k] = m % n;
                        m /= n;
                    }
                    Formula::disj(d_sets.iter().zip(picks).map(|(d, p)| d[p].clone())).unwrap()
                })
                .collect();
            Ok((f, clauses))
        }
        FamilySpec::Thm19 { n } => {
            check_param("n", n, 1, 2)?;
            let b = |i: usize| v(&format!("b{i}"));
            let b01 = Formula::and(b(0), b(1));
            let mut parts = vec![Formula::or(
                Formula::boxed(Formula::dia(b01.clone())),
                Formula::boxed(Formula::boxed(b01)),
            )];
            for i in 2..=n {
                parts.push(Formula::or(
                    Formula::box_n(i, Formula::dia(b(i))),
                    Formula::box_n(i, Formula::boxed(b(i))),
                ));
            }
            for i in 1..n {
                parts.push(Formula::box_n(
                    i + 1,
                    implies(Formula::and(b(i - 1), b(i)), Formula::boxed(b(i))),
                ));
            }
            parts.push(Formula::box_n(n + 1, implies(Formula::and(b(n - 1), b(n)), v("c"))));
            let lambda = Formula::disj((0..1usize << n).map(|m| {
                let inner = (0..n).rev().fold(v("c"), |acc, k| {
                    if m >> (n - 1 - k) & 1 == 0 {
                        Formula::dia(acc)
                    } else {
                        Formula::boxed(acc)
                    }
                });
                Formula::boxed(inner)
            }))
            .unwrap();
            Ok((Formula::conj(parts).unwrap(), vec![lambda]))
        }
        FamilySpec::Thm11 { k } => {
            check_param("k", k, 1, 6)?;
            let lambda = Formula::or(
                Formula::boxed(Formula::dia_n(k, v("a"))),
                Formula::dia(Formula::and(
                    v("a"),
                    Formula::and(v("b"), Formula::box_n(k, Formula::not(v("a")))),
                )),
            );
            Ok((Formula::boxed(Formula::and(v("a"), v("b"))), vec![lambda]))
        }
        FamilySpec::Random {
            vars,
            depth,
            length,
            seed,
        } => {
            check_param("vars", vars, 1, 64)?;
            check_param("length", length, 1, MAX_RANDOM_LENGTH)?;
            Ok((random_formula(vars, depth, length, seed), Vec::new()))
        }
    }
}

fn check_param(name: &'static str, value: usize, min: usize, cap: usize) -> Result<()> {
    if value < min {
        return Err(Error::Malformed(format!("{name} must be at least {min}")));
    }
    if value > cap {
        return Err(Error::CapExceeded(name, cap));
    }
    Ok(())
}

/// Longest formula the counting tables support.
pub const MAX_RANDOM_LENGTH: usize = 40;

/// Counts of formulas by exact length and maximal modal depth, used to
/// sample uniformly and to enumerate exhaustively.
pub struct Shapes {
    vars: usize,
    depth: usize,
    /// `counts[l][d]`: formulas of length `l` and depth at most `d`.
    counts: Vec<Vec<u128>>,
}

impl Shapes {
    pub fn new(vars: usize, depth: usize, max_len: usize) -> Shapes {
        let mut counts = vec![vec![0u128; depth + 1]; max_len + 1];
        for l in 1..=max_len {
            for d in 0..=depth {
                counts[l][d] = if l == 1 {
                    vars as u128
                } else {
                    let mut c = counts[l - 1][d];
                    if d > 0 {
                        c = c.saturating_add(counts[l - 1][d - 1].saturating_mul(2));
                    }
                    for i in 1..l - 1 {
                        let pair = counts[i][d].saturating_mul(counts[l - 1 - i][d]);
                        c = c.saturating_add(pair.saturating_mul(2));
                    }
                    c
                };
            }
        }
        Shapes { vars, depth, counts }
    }

    /// Formulas of exactly length `l`.
    pub fn count(&self, l: usize) -> u128 {
        self.counts[l][self.depth]
    }

    /// Formulas of length at most `max_len`.
    pub fn total(&self, max_len: usize) -> u128 {
        (1..=max_len).fold(0u128, |acc, l| acc.saturating_add(self.count(l)))
    }

    /// The `idx`-th formula of length `l` and depth at most `d`.
    pub fn unrank(&self, l: usize, d: usize, mut idx: u128) -> Formula {
        if l == 1 {
            return v(&var_name(idx as usize % self.vars));
        }
        let c = self.counts[l - 1][d];
        if idx < c {
            return Formula::not(self.unrank(l - 1, d, idx));
        }
        idx -= c;
        if d > 0 {
            let c = self.counts[l - 1][d - 1];
            if idx < c {
                return Formula::boxed(self.unrank(l - 1, d - 1, idx));
            }
            idx -= c;
            if idx < c {
                return Formula::dia(self.unrank(l - 1, d - 1, idx));
            }
            idx -= c;
        }
        for conj in [true, false] {
            for i in 1..l - 1 {
                let right = self.counts[l - 1 - i][d];
                let c = self.counts[i][d] * right;
                if idx < c {
                    let a = self.unrank(i, d, idx / right);
                    let b = self.unrank(l - 1 - i, d, idx % right);
                    return if conj { Formula::and(a, b) } else { Formula::or(a, b) };
                }
                idx -= c;
            }
        }
        unreachable!("index out of range")
    }

    /// The `idx`-th formula of length at most `max_len`, shortest first.
    pub fn nth(&self, max_len: usize, mut idx: u128) -> Formula {
        for l in 1..=max_len {
            let c = self.count(l);
            if idx < c {
                return self.unrank(l, self.depth, idx);
            }
            idx -= c;
        }
        panic!("index out of range")
    }
}

/// A formula drawn uniformly from those over the first `vars` variable
/// names with length at most `length` and modal depth at most `depth`.
pub fn random_formula(vars: usize, depth: usize, length: usize, seed: u64) -> Formula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_formula_with(&mut rng, vars, depth, length)
}

pub fn random_formula_with<R: Rng>(rng: &mut R, vars: usize, depth: usize, length: usize) -> Formula {
    let length = length.min(MAX_RANDOM_LENGTH);
    let shapes = Shapes::new(vars, depth, length);
    let idx = rng.gen_range(0..shapes.total(length));
    shapes.nth(length, idx)
}

/// Every formula over the first `vars` variable names with modal depth at
/// most `depth` and length at most `max_len`.
pub fn enumerate_formulas(vars: usize, depth: usize, max_len: usize) -> impl Iterator<Item = Formula> {
    let shapes = Shapes::new(vars, depth, max_len);
    let total = shapes.total(max_len);
    (0..total).map(move |i| shapes.nth(max_len, i))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantifier {
    Forall,
    Exists,
}

/// A prenex QBF with a CNF matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QbfInstance {
    pub prefix: Vec<(Quantifier, String)>,
    /// Clauses of `(positive, variable)` literals.
    pub matrix: Vec<Vec<(bool, String)>>,
}

impl QbfInstance {
    fn validate(&self) -> Result<()> {
        for (i, (_, p)) in self.prefix.iter().enumerate() {
            if !is_identifier(p) {
                return Err(Error::Malformed(format!("`{p}` is not a variable name")));
            }
            if self.prefix[..i].iter().any(|(_, q)| q == p) {
                return Err(Error::Malformed(format!("`{p}` quantified twice")));
            }
        }
        if self.matrix.is_empty() || self.matrix.iter().any(|c| c.is_empty()) {
            return Err(Error::Malformed("matrix clauses must be nonempty".into()));
        }
        for (_, x) in self.matrix.iter().flatten() {
            if !self.prefix.iter().any(|(_, p)| p == x) {
                return Err(Error::Malformed(format!("`{x}` is not quantified")));
            }
        }
        Ok(())
    }

    /// Reads `a p` / `e p` prefix lines followed by clause lines such as
    /// `p -q 0`. Lines starting with `#` or `c ` are comments.
    pub fn parse(text: &str) -> Result<QbfInstance> {
        let mut q = QbfInstance {
            prefix: Vec::new(),
            matrix: Vec::new(),
        };
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with("c ") {
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            let bad = |msg: &str| Error::Malformed(format!("line {}: {msg}", n + 1));
            match words[0] {
                "a" | "e" if q.matrix.is_empty() => {
                    let quant = if words[0] == "a" {
                        Quantifier::Forall
                    } else {
                        Quantifier::Exists
                    };
                    if words.len() < 2 {
                        return Err(bad("missing variable"));
                    }
                    for w in &words[1..] {
                        q.prefix.push((quant, w.to_string()));
                    }
                }
                _ => {
                    let (last, lits) = words.split_last().expect("nonempty line");
                    if *last != "0" {
                        return Err(bad("clause must end with 0"));
                    }
                    let clause = lits
                        .iter()
                        .map(|w| match w.strip_prefix('-') {
                            Some(x) => (false, x.to_string()),
                            None => (true, w.trim_start_matches('+').to_string()),
                        })
                        .collect();
                    q.matrix.push(clause);
                }
            }
        }
        q.validate()?;
        Ok(q)
    }
}

pub const MAX_QBF_VARS: usize = 20;

/// Validity by expanding every quantifier.
pub fn qbf_valid_bruteforce(q: &QbfInstance) -> Result<bool> {
    q.validate()?;
    if q.prefix.len() > MAX_QBF_VARS {
        return Err(Error::CapExceeded("prefix length", MAX_QBF_VARS));
    }
    fn go(q: &QbfInstance, level: usize, assignment: &mut Vec<bool>) -> bool {
        if level == q.prefix.len() {
            return q.matrix.iter().all(|c| {
                c.iter().any(|(pos, x)| {
                    let k = q.prefix.iter().position(|(_, p)| p == x).unwrap();
                    assignment[k] == *pos
                })
            });
        }
        let mut branch = |val| {
            assignment.push(val);
            let r = go(q, level + 1, assignment);
            assignment.pop();
            r
        };
        match q.prefix[level].0 {
            Quantifier::Forall => branch(false) && branch(true),
            Quantifier::Exists => branch(false) || branch(true),
        }
    }
    Ok(go(q, 0, &mut Vec::new()))
}

/// A K formula that is satisfiable iff the QBF is valid. Worlds at depth
/// `i` are marked by `q{i}`; a universal `p_{i+1}` forces two successors of
/// each `q{i}` world, one for each value, and values persist downwards.
pub fn qbf_encode(q: &QbfInstance) -> Result<Formula> {
    q.validate()?;
    let m = q.prefix.len();
    let level = |i: usize| v(&format!("q{i}"));
    for (_, p) in &q.prefix {
        if (0..=m).any(|i| *p == format!("q{i}")) {
            return Err(Error::VariableCollision(p.clone()));
        }
    }
    let p = |i: usize| v(&q.prefix[i - 1].1);
    let not = Formula::not;
    let mut parts = vec![level(0)];
    for i in 0..=m {
        for j in i + 1..=m {
            for k in 0..=m {
                parts.push(Formula::box_n(k, Formula::or(not(level(i)), not(level(j)))));
            }
        }
    }
    for i in 0..m {
        for k in 0..=m {
            parts.push(Formula::box_n(
                k,
                Formula::or(not(level(i)), Formula::dia(level(i + 1))),
            ));
        }
    }
    for i in 0..m {
        if q.prefix[i].0 == Quantifier::Forall {
            for val in [p(i + 1), not(p(i + 1))] {
                parts.push(Formula::box_n(
                    i,
                    Formula::or(not(level(i)), Formula::dia(Formula::and(level(i + 1), val))),
                ));
            }
        }
    }
    for i in 1..m {
        for j in i..m {
            parts.push(Formula::box_n(j, Formula::or(not(p(i)), Formula::boxed(p(i)))));
            parts.push(Formula::box_n(j, Formula::or(p(i), Formula::boxed(not(p(i))))));
        }
    }
    for clause in &q.matrix {
        let theta = Formula::disj(clause.iter().map(|(pos, x)| if *pos { v(x) } else { not(v(x)) })).unwrap();
        parts.push(Formula::box_n(m, Formula::or(not(level(m)), theta)));
    }
    Ok(Formula::conj(parts).unwrap())
}

/// An exact cover instance: element names and subsets of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XcInstance {
    pub universe: Vec<String>,
    pub subsets: Vec<Vec<String>>,
}

impl XcInstance {
    fn validate(&self) -> Result<()> {
        if self.universe.is_empty() || self.subsets.is_empty() {
            return Err(Error::Malformed("universe and subset list must be nonempty".into()));
        }
        for s in &self.subsets {
            if let Some(x) = s.iter().find(|x| !self.universe.contains(x)) {
                return Err(Error::Malformed(format!("`{x}` is not in the universe")));
            }
        }
        Ok(())
    }

    /// Reads a `U: u1 u2` line and one `S: …` line per subset (possibly
    /// empty).
    pub fn parse(text: &str) -> Result<XcInstance> {
        let mut x = XcInstance {
            universe: Vec::new(),
            subsets: Vec::new(),
        };
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, rest) = line
                .split_once(':')
                .ok_or_else(|| Error::Malformed(format!("missing `:` in `{line}`")))?;
            let items = rest.split_whitespace().map(str::to_string).collect();
            match key.trim() {
                "U" => x.universe = items,
                "S" => x.subsets.push(items),
                other => return Err(Error::Malformed(format!("unknown key `{other}`"))),
            }
        }
        x.validate()?;
        Ok(x)
    }

    /// Whether some subfamily partitions the universe.
    pub fn has_exact_cover(&self) -> bool {
        let m = self.subsets.len();
        (0..1u64 << m).any(|mask| {
            self.universe.iter().all(|u| {
                (0..m)
                    .filter(|&j| mask >> j & 1 == 1 && self.subsets[j].contains(u))
                    .count()
                    == 1
            })
        })
    }
}

/// A K formula that is unsatisfiable iff the instance has an exact cover.
/// Subset `S_j` becomes a path of `2n` modalities ending in `a`, with `◇`
/// at positions `i` and `n + i` when `u_i ∈ S_j` and `□` elsewhere; the
/// conjunct `□^{2n}¬a` closes every path.
pub fn xc_encode(x: &XcInstance) -> Result<Formula> {
    x.validate()?;
    let n = x.universe.len();
    let mut parts: Vec<Formula> = x
        .subsets
        .iter()
        .map(|s| {
            (1..=2 * n).rev().fold(v("a"), |acc, i| {
                let u = &x.universe[if i <= n { i - 1 } else { i - n - 1 }];
                if s.contains(u) {
                    Formula::dia(acc)
                } else {
                    Formula::boxed(acc)
                }
            })
        })
        .collect();
    parts.push(Formula::box_n(2 * n, Formula::not(v("a"))));
    Ok(Formula::conj(parts).unwrap())
}
