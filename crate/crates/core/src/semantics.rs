//! Kripke models, the satisfaction relation, and a model-enumerating
//! satisfiability oracle that shares no code with the tableau in
//! [`crate::decision`].

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::formula::{nnf, Formula};

/// Default enumeration bound for [`sat_bruteforce`].
pub const DEFAULT_FUEL: u64 = 50_000_000;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KripkeModel {
    worlds: Vec<String>,
    arcs: BTreeSet<(usize, usize)>,
    /// `(world, variable)` pairs that are true; everything else is false.
    truths: HashSet<(usize, String)>,
}

impl KripkeModel {
    pub fn new<S: AsRef<str>>(worlds: &[S]) -> Result<KripkeModel> {
        if worlds.is_empty() {
            return Err(Error::Model {
                line: 0,
                msg: "no worlds".into(),
            });
        }
        Ok(KripkeModel {
            worlds: worlds.iter().map(|w| w.as_ref().to_string()).collect(),
            ..Default::default()
        })
    }

    fn index(&self, w: &str) -> Result<usize> {
        self.worlds
            .iter()
            .position(|x| x == w)
            .ok_or_else(|| Error::UnknownWorld(w.to_string()))
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn add_arc(&mut self, from: &str, to: &str) -> Result<()> {
        let (a, b) = (self.index(from)?, self.index(to)?);
        self.arcs.insert((a, b));
        Ok(())
    }

    pub fn set_true(&mut self, w: &str, var: &str) -> Result<()> {
        let i = self.index(w)?;
        self.truths.insert((i, var.to_string()));
        Ok(())
    }

    fn successors(&self, w: usize) -> impl Iterator<Item = usize> + '_ {
        self.arcs.range((w, 0)..(w + 1, 0)).map(|&(_, v)| v)
    }

    fn holds(&self, w: usize, f: &Formula) -> bool {
        match f {
            Formula::Var(v) => self.truths.contains(&(w, v.to_string())),
            Formula::Neg(x) => !self.holds(w, x),
            Formula::And(l, r) => self.holds(w, l) && self.holds(w, r),
            Formula::Or(l, r) => self.holds(w, l) || self.holds(w, r),
            Formula::Box(x) => self.successors(w).all(|v| self.holds(v, x)),
            Formula::Dia(x) => self.successors(w).any(|v| self.holds(v, x)),
        }
    }

    /// Truth of `f` at world `w`.
    pub fn eval(&self, w: &str, f: &Formula) -> Result<bool> {
        Ok(self.holds(self.index(w)?, f))
    }

    /// Reads the fixture format:
    ///
    /// ```text
    /// worlds: w1 w2
    /// arcs: w1>w2
    /// val: w2 a b
    /// ```
    ///
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse_fixture(text: &str) -> Result<KripkeModel> {
        let mut model: Option<KripkeModel> = None;
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: &str| Error::Model {
                line: n + 1,
                msg: msg.to_string(),
            };
            let (key, rest) = line.split_once(':').ok_or_else(|| bad("missing `:`"))?;
            let words: Vec<&str> = rest.split_whitespace().collect();
            match key.trim() {
                "worlds" => {
                    if model.is_some() {
                        return Err(bad("worlds declared twice"));
                    }
                    model = Some(KripkeModel::new(&words).map_err(|_| bad("no worlds"))?);
                }
                "arcs" => {
                    let m = model.as_mut().ok_or_else(|| bad("arcs before worlds"))?;
                    for arc in words {
                        let (a, b) = arc.split_once('>').ok_or_else(|| bad("arc needs `>`"))?;
                        m.add_arc(a, b)?;
                    }
                }
                "val" => {
                    let m = model.as_mut().ok_or_else(|| bad("val before worlds"))?;
                    let (w, vars) = words.split_first().ok_or_else(|| bad("val needs a world"))?;
                    for v in vars {
                        m.set_true(w, v)?;
                    }
                }
                _ => return Err(bad("unknown key")),
            }
        }
        model.ok_or(Error::Model {
            line: 0,
            msg: "no worlds".into(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Tree {
    val: u32,
    kids: Vec<Tree>,
}

fn trees(nvars: usize, depth: usize, branching: usize) -> Vec<Tree> {
    let vals = 1u32 << nvars;
    let smaller = if depth == 0 {
        Vec::new()
    } else {
        trees(nvars, depth - 1, branching)
    };
    // children as multisets: nondecreasing index sequences
    let mut kid_lists: Vec<Vec<usize>> = vec![Vec::new()];
    let mut frontier = kid_lists.clone();
    for _ in 0..branching {
        let mut next = Vec::new();
        for seq in &frontier {
            let from = seq.last().copied().unwrap_or(0);
            for i in from..smaller.len() {
                let mut s = seq.clone();
                s.push(i);
                next.push(s);
            }
        }
        kid_lists.extend(next.iter().cloned());
        frontier = next;
    }
    let mut out = Vec::new();
    for val in 0..vals {
        for ks in &kid_lists {
            out.push(Tree {
                val,
                kids: ks.iter().map(|&i| smaller[i].clone()).collect(),
            });
        }
    }
    out
}

/// Every tree model over `vars` of depth at most `depth` and branching at
/// most `branching`, rooted at world `w0`. Only usable for tiny parameters.
pub fn enumerate_tree_models(vars: &[&str], depth: usize, branching: usize) -> Vec<KripkeModel> {
    fn build(t: &Tree, vars: &[&str], m: &mut KripkeModel, me: usize) {
        for (k, v) in vars.iter().enumerate() {
            if t.val >> k & 1 == 1 {
                m.truths.insert((me, v.to_string()));
            }
        }
        for kid in &t.kids {
            let id = m.worlds.len();
            m.worlds.push(format!("w{id}"));
            m.arcs.insert((me, id));
            build(kid, vars, m, id);
        }
    }
    trees(vars.len(), depth, branching)
        .iter()
        .map(|t| {
            let mut m = KripkeModel {
                worlds: vec!["w0".into()],
                ..Default::default()
            };
            build(t, vars, &mut m, 0);
            m
        })
        .collect()
}

enum Node {
    Var(usize),
    Neg(usize),
    And(usize, usize),
    Or(usize, usize),
    Box(usize),
    Dia(usize),
}

struct Indexed {
    nodes: Vec<Node>,
    ids: HashMap<Formula, usize>,
    vars: Vec<String>,
}

impl Indexed {
    fn add(&mut self, f: &Formula) -> usize {
        if let Some(&i) = self.ids.get(f) {
            return i;
        }
        let node = match f {
            Formula::Var(v) => {
                let k = match self.vars.iter().position(|x| **x == **v) {
                    Some(k) => k,
                    None => {
                        self.vars.push(v.to_string());
                        self.vars.len() - 1
                    }
                };
                Node::Var(k)
            }
            Formula::Neg(x) => Node::Neg(self.add(x)),
            Formula::And(l, r) => Node::And(self.add(l), self.add(r)),
            Formula::Or(l, r) => Node::Or(self.add(l), self.add(r)),
            Formula::Box(x) => Node::Box(self.add(x)),
            Formula::Dia(x) => Node::Dia(self.add(x)),
        };
        self.nodes.push(node);
        self.ids.insert(f.clone(), self.nodes.len() - 1);
        self.nodes.len() - 1
    }
}

/// Satisfiability by enumerating tree models of depth `≤ depth(f)` whose
/// nodes have at most as many children as `nnf(f)` has diamonds.
///
/// Subtrees are enumerated bottom-up and identified when they agree on every
/// subformula of `f`, and a set of children is identified with the vector of
/// `(some child satisfies ψ, every child satisfies ψ)` over the modal bodies
/// ψ. Both identifications preserve the truth of `f` at the root, so no
/// satisfying tree is missed. `fuel` bounds the number of enumerated
/// child-set extensions plus world types.
pub fn sat_bruteforce(f: &Formula, fuel: u64) -> Result<bool> {
    let mut ix = Indexed {
        nodes: Vec::new(),
        ids: HashMap::new(),
        vars: Vec::new(),
    };
    let root = ix.add(f);
    let n = ix.nodes.len();
    let mut bodies: Vec<usize> = Vec::new();
    for node in &ix.nodes {
        if let Node::Box(i) | Node::Dia(i) = node {
            if !bodies.contains(i) {
                bodies.push(*i);
            }
        }
    }
    let body_pos: HashMap<usize, usize> = bodies.iter().enumerate().map(|(p, &b)| (b, p)).collect();
    let branching = nnf(f).count_dia();
    let nvals = 1u64 << ix.vars.len();
    let mut spent = 0u64;
    let mut spend = |k: u64| -> Result<()> {
        spent += k;
        if spent > fuel {
            Err(Error::FuelExceeded(fuel))
        } else {
            Ok(())
        }
    };

    // signature layout: [any_0, all_0, any_1, all_1, ...]
    let empty_sig: Vec<bool> = bodies.iter().flat_map(|_| [false, true]).collect();
    let mut prev: Vec<Vec<bool>> = Vec::new();
    for _level in 0..=f.depth() {
        let mut sigs: HashSet<Vec<bool>> = HashSet::from([empty_sig.clone()]);
        let mut frontier = vec![empty_sig.clone()];
        for _ in 0..branching {
            let mut next = Vec::new();
            for s in &frontier {
                for t in &prev {
                    spend(1)?;
                    let mut c = s.clone();
                    for (p, &b) in bodies.iter().enumerate() {
                        c[2 * p] |= t[b];
                        c[2 * p + 1] &= t[b];
                    }
                    if sigs.insert(c.clone()) {
                        next.push(c);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        let mut types: HashSet<Vec<bool>> = HashSet::new();
        for val in 0..nvals {
            for sig in &sigs {
                spend(1)?;
                let mut t = vec![false; n];
                for (i, node) in ix.nodes.iter().enumerate() {
                    t[i] = match *node {
                        Node::Var(k) => val >> k & 1 == 1,
                        Node::Neg(a) => !t[a],
                        Node::And(a, b) => t[a] && t[b],
                        Node::Or(a, b) => t[a] || t[b],
                        Node::Box(a) => sig[2 * body_pos[&a] + 1],
                        Node::Dia(a) => sig[2 * body_pos[&a]],
                    };
                }
                types.insert(t);
            }
        }
        prev = types.into_iter().collect();
        prev.sort();
    }
    Ok(prev.iter().any(|t| t[root]))
}
