use rustc_hash::FxHashMap as HashMap;

use super::{Circuit, Gate, GateId, Monomial, VarId};
use crate::field::{FieldSpec, Scalar};

/// Incremental circuit construction with hash-consing and local folding.
///
/// Identical gates are shared, constants are folded, scalar factors are
/// pulled to the outside of products and like terms of a sum are merged, so
/// `x - x` collapses to the zero constant. Every transformation pass builds
/// into one of these and calls [`CircuitBuilder::extract`], which also drops
/// dead gates.
#[derive(Debug, Clone)]
pub struct CircuitBuilder {
    field: FieldSpec,
    num_vars: usize,
    gates: Vec<Gate>,
    // Syntactic (min, max) degree per gate; `None` for the zero constant.
    ranges: Vec<Option<(usize, usize)>>,
    index: HashMap<Gate, GateId>,
}

impl CircuitBuilder {
    pub fn new(field: FieldSpec, num_vars: usize) -> Self {
        CircuitBuilder { field, num_vars, gates: Vec::new(), ranges: Vec::new(), index: HashMap::default() }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn ensure_vars(&mut self, n: usize) {
        self.num_vars = self.num_vars.max(n);
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn gate(&self, id: GateId) -> &Gate {
        &self.gates[id]
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Whether the gate computes a homogeneous polynomial, with its degree.
    /// The zero constant counts as homogeneous of every degree and yields `None`.
    pub fn homogeneous_degree(&self, id: GateId) -> Option<usize> {
        match self.ranges[id] {
            Some((lo, hi)) if lo == hi => Some(lo),
            _ => None,
        }
    }

    /// Syntactic degree range of a gate, `None` when it is the zero constant.
    pub fn degree_range(&self, id: GateId) -> Option<(usize, usize)> {
        self.ranges[id]
    }

    pub fn const_value(&self, id: GateId) -> Option<&Scalar> {
        match &self.gates[id] {
            Gate::Const(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_zero(&self, id: GateId) -> bool {
        self.ranges[id].is_none()
    }

    fn intern(&mut self, gate: Gate) -> GateId {
        if let Some(&id) = self.index.get(&gate) {
            return id;
        }
        let range = match &gate {
            Gate::Input(_) => Some((1, 1)),
            Gate::Const(s) => (!s.is_zero()).then_some((0, 0)),
            Gate::Mul(l, r) => match (self.ranges[*l], self.ranges[*r]) {
                (Some((a, b)), Some((c, d))) => Some((a + c, b + d)),
                _ => None,
            },
            Gate::Add(children) => {
                children.iter().filter_map(|&c| self.ranges[c]).fold(None, |acc, (lo, hi)| match acc {
                    None => Some((lo, hi)),
                    Some((a, b)) => Some((a.min(lo), b.max(hi))),
                })
            }
        };
        let id = self.gates.len();
        self.gates.push(gate.clone());
        self.ranges.push(range);
        self.index.insert(gate, id);
        id
    }

    pub fn constant(&mut self, s: Scalar) -> GateId {
        assert_eq!(s.field(), self.field, "constant from a different field");
        self.intern(Gate::Const(s))
    }

    pub fn zero(&mut self) -> GateId {
        self.constant(self.field.zero())
    }

    pub fn one(&mut self) -> GateId {
        self.constant(self.field.one())
    }

    pub fn var(&mut self, index: usize) -> GateId {
        self.ensure_vars(index);
        self.intern(Gate::Input(VarId::new(index)))
    }

    pub fn monomial(&mut self, m: &Monomial) -> GateId {
        match m {
            Monomial::Var(v) => self.var(v.index()),
            Monomial::Node(l, r) => {
                let a = self.monomial(l);
                let b = self.monomial(r);
                self.mul(a, b)
            }
        }
    }

    /// Splits `g` as `s · core` with the scalar pulled out.
    fn split_scalar(&self, g: GateId) -> (Scalar, GateId) {
        if let Gate::Mul(l, r) = &self.gates[g] {
            if let Gate::Const(s) = &self.gates[*l] {
                return (s.clone(), *r);
            }
        }
        (self.field.one(), g)
    }

    pub fn scale(&mut self, s: &Scalar, g: GateId) -> GateId {
        if s.is_zero() || self.is_zero(g) {
            return self.zero();
        }
        if s.is_one() {
            return g;
        }
        if let Some(c) = self.const_value(g) {
            let v = s * c;
            return self.constant(v);
        }
        let (a, core) = self.split_scalar(g);
        let t = s * &a;
        if t.is_one() {
            return core;
        }
        let k = self.constant(t);
        self.intern(Gate::Mul(k, core))
    }

    pub fn mul(&mut self, l: GateId, r: GateId) -> GateId {
        if self.is_zero(l) || self.is_zero(r) {
            return self.zero();
        }
        match (self.const_value(l).cloned(), self.const_value(r).cloned()) {
            (Some(a), Some(b)) => return self.constant(&a * &b),
            (Some(a), None) => return self.scale(&a, r),
            (None, Some(b)) => return self.scale(&b, l),
            (None, None) => {}
        }
        let (a, u) = self.split_scalar(l);
        let (b, v) = self.split_scalar(r);
        let core = self.intern(Gate::Mul(u, v));
        self.scale(&(&a * &b), core)
    }

    /// Sum with like terms merged: children that differ only by a scalar
    /// factor are combined and constants are added up.
    pub fn add<I: IntoIterator<Item = GateId>>(&mut self, children: I) -> GateId {
        let mut constant = self.field.zero();
        let mut terms: Vec<(GateId, Scalar)> = Vec::new();
        let mut slot: HashMap<GateId, usize> = HashMap::default();
        for c in children {
            if self.is_zero(c) {
                continue;
            }
            if let Some(s) = self.const_value(c) {
                constant = &constant + s;
                continue;
            }
            let (s, core) = self.split_scalar(c);
            match slot.get(&core) {
                Some(&i) => terms[i].1 = &terms[i].1 + &s,
                None => {
                    slot.insert(core, terms.len());
                    terms.push((core, s));
                }
            }
        }
        let mut kids: Vec<GateId> = Vec::with_capacity(terms.len() + 1);
        for (core, s) in terms {
            if !s.is_zero() {
                kids.push(self.scale(&s, core));
            }
        }
        if !constant.is_zero() {
            kids.push(self.constant(constant));
        }
        match kids.len() {
            0 => self.zero(),
            1 => kids[0],
            _ => {
                kids.sort_unstable();
                self.intern(Gate::Add(kids))
            }
        }
    }

    pub fn sub(&mut self, a: GateId, b: GateId) -> GateId {
        let nb = self.neg(b);
        self.add([a, nb])
    }

    pub fn neg(&mut self, a: GateId) -> GateId {
        let m1 = -self.field.one();
        self.scale(&m1, a)
    }

    /// Copies every gate of `c` into the builder; returns the new id of each.
    pub fn import_all(&mut self, c: &Circuit) -> Vec<GateId> {
        assert_eq!(c.field(), self.field, "importing a circuit over a different field");
        self.ensure_vars(c.num_vars());
        let mut map = Vec::with_capacity(c.size());
        for gate in c.gates() {
            let id = match gate {
                Gate::Input(v) => self.var(v.index()),
                Gate::Const(s) => self.constant(s.clone()),
                Gate::Mul(l, r) => self.mul(map[*l], map[*r]),
                Gate::Add(children) => {
                    let kids: Vec<GateId> = children.iter().map(|&k| map[k]).collect();
                    self.add(kids)
                }
            };
            map.push(id);
        }
        map
    }

    /// Imports `c` and returns the id of its output.
    pub fn import(&mut self, c: &Circuit) -> GateId {
        let map = self.import_all(c);
        map[c.output()]
    }

    /// Gates reachable from `roots`, renumbered densely in topological order,
    /// together with the new ids of the roots.
    pub fn extract_roots(&self, roots: &[GateId]) -> (Vec<Gate>, Vec<GateId>) {
        let Some(&top) = roots.iter().max() else {
            return (Vec::new(), Vec::new());
        };
        let mut live = vec![false; top + 1];
        for &r in roots {
            live[r] = true;
        }
        for id in (0..=top).rev() {
            if !live[id] {
                continue;
            }
            match &self.gates[id] {
                Gate::Mul(l, r) => {
                    live[*l] = true;
                    live[*r] = true;
                }
                Gate::Add(children) => children.iter().for_each(|&k| live[k] = true),
                _ => {}
            }
        }
        let mut renumber = vec![usize::MAX; top + 1];
        let mut gates = Vec::new();
        for id in 0..=top {
            if !live[id] {
                continue;
            }
            renumber[id] = gates.len();
            gates.push(match &self.gates[id] {
                Gate::Mul(l, r) => Gate::Mul(renumber[*l], renumber[*r]),
                Gate::Add(children) => {
                    let mut kids: Vec<GateId> = children.iter().map(|&k| renumber[k]).collect();
                    kids.sort_unstable();
                    Gate::Add(kids)
                }
                other => other.clone(),
            });
        }
        let ids = roots.iter().map(|&r| renumber[r]).collect();
        (gates, ids)
    }

    /// The circuit computing gate `root`, with dead gates removed and a degree
    /// annotation attached when the result is homogeneous.
    pub fn extract(&self, root: GateId) -> Circuit {
        let (gates, ids) = self.extract_roots(&[root]);
        Circuit::new(self.field, self.num_vars, gates, ids[0]).expect("builder output is valid").annotate_degrees()
    }
}
