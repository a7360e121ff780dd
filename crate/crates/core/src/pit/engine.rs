//! The layered coefficient-space engine behind identity testing.
//!
//! Gates computing homogeneous polynomials of degree `j` form layer `j`. A
//! monomial `m` of degree `j` is represented by the vector of its coefficients
//! in the layer's column gates. Every column gate is a linear combination of
//! *sources*: the variables for layer 1, and products of two positive-degree
//! operands above that. So a product monomial's vector is obtained from the
//! vectors of its two halves, and a basis of each layer's coefficient space
//! is built bottom-up from products of lower bases.

use std::collections::BTreeMap;

use super::echelon::{independent, Echelon};
use crate::circuit::{live_gates, Gate, GateId, Monomial};
use crate::field::{FieldSpec, Scalar};

/// Which gates of a layer get a coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum ColumnSet {
    /// Every sum gate, plus roots and product operands.
    Sums,
    /// Only roots and operands of products; the smallest sufficient set.
    Operands,
}

/// A product gate of positive-degree operands, seen from its layer.
#[derive(Debug, Clone)]
pub(crate) struct Source {
    /// Column of the left operand in its layer.
    pub u: usize,
    /// Column of the right operand in its layer.
    pub v: usize,
    /// Contribution to each column of this layer.
    pub col: Vec<(usize, Scalar)>,
}

#[derive(Debug, Clone, Default)]
pub(crate) struct Layer {
    pub gates: Vec<GateId>,
    /// Sources grouped by the degree of their left operand.
    pub sources: Vec<Vec<Source>>,
    /// Layer 1 only: the column contributions of each variable.
    pub var_cols: Vec<Vec<(usize, Scalar)>>,
}

#[derive(Debug, Clone)]
pub(crate) struct Member {
    pub monomial: Monomial,
    pub vector: Vec<Scalar>,
}

#[derive(Debug, Clone)]
pub(crate) enum RootValue {
    Zero,
    Constant(Scalar),
    Column { degree: usize, col: usize },
}

#[derive(Debug, Clone)]
pub(crate) struct Engine {
    field: FieldSpec,
    num_vars: usize,
    layers: Vec<Layer>,
    bases: Vec<Vec<Member>>,
    roots: Vec<RootValue>,
}

fn dense(field: FieldSpec, width: usize, sparse: &[(usize, Scalar)]) -> Vec<Scalar> {
    let mut v = vec![field.zero(); width];
    for (c, e) in sparse {
        v[*c] = &v[*c] + e;
    }
    v
}

fn dot(a: &[Scalar], b: &[Scalar], zero: &Scalar) -> Scalar {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).fold(zero.clone(), |acc, (x, y)| &acc + &(x * y))
}

impl Engine {
    /// Builds layers and bases for the sub-DAG under `roots`. `degree` must
    /// give the homogeneous degree of every live gate, `None` for gates known
    /// to compute zero.
    pub fn new(
        field: FieldSpec,
        num_vars: usize,
        gates: &[Gate],
        degree: impl Fn(GateId) -> Option<usize>,
        roots: &[GateId],
        columns: ColumnSet,
    ) -> Engine {
        let live = live_gates(gates, roots);
        let top = roots.iter().filter_map(|&r| degree(r)).max().unwrap_or(0);
        let zero = field.zero();

        let positive = |g: GateId| degree(g).is_some_and(|d| d >= 1);
        let mut is_col = vec![false; gates.len()];
        for &g in &live {
            match &gates[g] {
                Gate::Mul(l, r) if positive(*l) && positive(*r) => {
                    is_col[*l] = true;
                    is_col[*r] = true;
                }
                Gate::Add(_) if columns == ColumnSet::Sums && positive(g) => is_col[g] = true,
                _ => {}
            }
        }
        for &r in roots {
            if positive(r) {
                is_col[r] = true;
            }
        }

        let mut layers: Vec<Layer> = (0..=top)
            .map(|j| Layer {
                gates: Vec::new(),
                sources: vec![Vec::new(); j],
                var_cols: if j == 1 { vec![Vec::new(); num_vars] } else { Vec::new() },
            })
            .collect();
        let mut col_of = vec![usize::MAX; gates.len()];
        for &g in &live {
            if is_col[g] {
                let layer = &mut layers[degree(g).unwrap()];
                col_of[g] = layer.gates.len();
                layer.gates.push(g);
            }
        }

        // Each gate as a combination of its layer's sources: variable index
        // in layer 1, (left degree, position) above.
        let mut consts: Vec<Option<Scalar>> = vec![None; gates.len()];
        let mut exprs: Vec<Vec<((usize, usize), Scalar)>> = vec![Vec::new(); gates.len()];
        let c0 = |consts: &[Option<Scalar>], g: GateId| consts[g].clone().unwrap_or_else(|| zero.clone());
        for &g in &live {
            let Some(d) = degree(g) else { continue };
            if d == 0 {
                let value = match &gates[g] {
                    Gate::Const(s) => s.clone(),
                    Gate::Add(children) => children.iter().fold(zero.clone(), |acc, &k| &acc + &c0(&consts, k)),
                    Gate::Mul(l, r) => &c0(&consts, *l) * &c0(&consts, *r),
                    Gate::Input(_) => unreachable!("a variable has degree 1"),
                };
                consts[g] = Some(value);
                continue;
            }
            let expr = match &gates[g] {
                Gate::Input(v) => vec![((0, v.index() - 1), field.one())],
                Gate::Const(_) => unreachable!("a constant has degree 0"),
                Gate::Mul(l, r) => match (degree(*l), degree(*r)) {
                    (Some(0), Some(_)) => scaled(&c0(&consts, *l), &exprs[*r]),
                    (Some(_), Some(0)) => scaled(&c0(&consts, *r), &exprs[*l]),
                    (Some(dl), Some(_)) => {
                        let group = &mut layers[d].sources[dl];
                        group.push(Source { u: col_of[*l], v: col_of[*r], col: Vec::new() });
                        vec![((dl, group.len() - 1), field.one())]
                    }
                    _ => Vec::new(),
                },
                Gate::Add(children) => {
                    let mut acc: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
                    for &k in children {
                        if degree(k) != Some(d) {
                            continue;
                        }
                        for (key, e) in &exprs[k] {
                            let slot = acc.entry(*key).or_insert_with(|| zero.clone());
                            *slot = &*slot + e;
                        }
                    }
                    acc.into_iter().filter(|(_, e)| !e.is_zero()).collect()
                }
            };
            exprs[g] = expr;
        }

        for &g in &live {
            if !is_col[g] {
                continue;
            }
            let d = degree(g).unwrap();
            let col = col_of[g];
            let layer = &mut layers[d];
            for ((dl, idx), e) in &exprs[g] {
                if d == 1 {
                    layer.var_cols[*idx].push((col, e.clone()));
                } else {
                    layer.sources[*dl][*idx].col.push((col, e.clone()));
                }
            }
        }

        let root_values = roots
            .iter()
            .map(|&r| match degree(r) {
                None => RootValue::Zero,
                Some(0) => {
                    let s = c0(&consts, r);
                    if s.is_zero() {
                        RootValue::Zero
                    } else {
                        RootValue::Constant(s)
                    }
                }
                Some(d) => RootValue::Column { degree: d, col: col_of[r] },
            })
            .collect();

        let mut engine = Engine { field, num_vars, layers, bases: vec![Vec::new(); top + 1], roots: root_values };
        for j in 1..=top {
            engine.bases[j] = engine.build_basis(j);
        }
        engine
    }

    fn build_basis(&self, j: usize) -> Vec<Member> {
        let layer = &self.layers[j];
        let width = layer.gates.len();
        let mut out = Vec::new();
        if width == 0 {
            return out;
        }
        let mut ech = Echelon::new(width);
        if j == 1 {
            for (i, cols) in layer.var_cols.iter().enumerate() {
                let v = dense(self.field, width, cols);
                if ech.insert(&v) {
                    out.push(Member { monomial: Monomial::var(i + 1), vector: v });
                    if ech.is_full() {
                        break;
                    }
                }
            }
            return out;
        }
        for d1 in 1..j {
            let d2 = j - d1;
            if layer.sources[d1].is_empty() {
                continue;
            }
            let left = self.sorted_basis(d1);
            let right = self.sorted_basis(d2);
            for a in &left {
                for b in &right {
                    let v = self.combine(j, d1, &a.vector, &b.vector);
                    if ech.insert(&v) {
                        out.push(Member {
                            monomial: Monomial::product(a.monomial.clone(), b.monomial.clone()),
                            vector: v,
                        });
                        if ech.is_full() {
                            return out;
                        }
                    }
                }
            }
        }
        out
    }

    fn sorted_basis(&self, j: usize) -> Vec<&Member> {
        let mut members: Vec<&Member> = self.bases[j].iter().collect();
        members.sort_by(|a, b| a.monomial.cmp(&b.monomial));
        members
    }

    /// The layer-`j` vector of a product whose halves have vectors `a`
    /// (degree `d1`) and `b`.
    fn combine(&self, j: usize, d1: usize, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.layers[j].gates.len()];
        for src in &self.layers[j].sources[d1] {
            if a[src.u].is_zero() || b[src.v].is_zero() {
                continue;
            }
            let t = &a[src.u] * &b[src.v];
            for (c, e) in &src.col {
                out[*c] = &out[*c] + &(&t * e);
            }
        }
        out
    }

    pub fn top_degree(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn layer(&self, j: usize) -> &Layer {
        &self.layers[j]
    }

    pub fn basis(&self, j: usize) -> &[Member] {
        &self.bases[j]
    }

    pub fn is_zero(&self, i: usize) -> bool {
        match &self.roots[i] {
            RootValue::Zero => true,
            RootValue::Constant(_) => false,
            RootValue::Column { degree, col } => self.bases[*degree].iter().all(|m| m.vector[*col].is_zero()),
        }
    }

    /// The first basis monomial with a nonzero coefficient in root `i`, with
    /// that coefficient. A nonzero constant yields `(None, c)`.
    pub fn certificate(&self, i: usize) -> Option<(Option<Monomial>, Scalar)> {
        match &self.roots[i] {
            RootValue::Zero => None,
            RootValue::Constant(s) => Some((None, s.clone())),
            RootValue::Column { degree, col } => self.bases[*degree]
                .iter()
                .find(|m| !m.vector[*col].is_zero())
                .map(|m| (Some(m.monomial.clone()), m.vector[*col].clone())),
        }
    }

    /// Coefficients of `m` in the columns of its layer.
    pub fn vector_of(&self, m: &Monomial) -> Vec<Scalar> {
        match m {
            Monomial::Var(v) => dense(self.field, self.layers[1].gates.len(), &self.layers[1].var_cols[v.index() - 1]),
            Monomial::Node(a, b) => {
                let (da, db) = (a.degree(), b.degree());
                self.combine(da + db, da, &self.vector_of(a), &self.vector_of(b))
            }
        }
    }

    /// Coefficient of `m` in root `i`.
    pub fn coefficient(&self, i: usize, m: &Monomial) -> Scalar {
        match &self.roots[i] {
            RootValue::Column { degree, col } if *degree == m.degree() => self.vector_of(m)[*col].clone(),
            _ => self.field.zero(),
        }
    }

    /// The least monomial of root `i` in split order (see [`Engine::least_in`]),
    /// with its coefficient. A nonzero constant yields `(None, c)`.
    pub fn least_monomial(&self, i: usize) -> Option<(Option<Monomial>, Scalar)> {
        match &self.roots[i] {
            RootValue::Zero => None,
            RootValue::Constant(s) => Some((None, s.clone())),
            RootValue::Column { degree, col } => {
                let width = self.layers[*degree].gates.len();
                let mut e = vec![self.field.zero(); width];
                e[*col] = self.field.one();
                let m = self.least_in(*degree, vec![e])?;
                let c = self.vector_of(&m)[*col].clone();
                Some((Some(m), c))
            }
        }
    }

    /// Least degree-`j` monomial `m` such that some functional in `ts` is
    /// nonzero on its vector. Monomials are compared in split order: by the
    /// degree of the left half, then the left half, then the right half, with
    /// variables by index. Searching one split at a time keeps the number of
    /// recursive calls linear in the degree.
    pub fn least_in(&self, j: usize, ts: Vec<Vec<Scalar>>) -> Option<Monomial> {
        let zero = self.field.zero();
        let width = self.layers[j].gates.len();
        let ts = independent(ts, width);
        let hits = |v: &[Scalar]| ts.iter().any(|t| !dot(t, v, &zero).is_zero());
        if ts.is_empty() || !self.bases[j].iter().any(|b| hits(&b.vector)) {
            return None;
        }
        if j == 1 {
            let layer = &self.layers[1];
            return (0..self.num_vars)
                .find(|&i| hits(&dense(self.field, width, &layer.var_cols[i])))
                .map(|i| Monomial::var(i + 1));
        }
        for d1 in 1..j {
            let d2 = j - d1;
            let sources = &self.layers[j].sources[d1];
            if sources.is_empty() {
                continue;
            }
            let alphas: Vec<Vec<Scalar>> = ts
                .iter()
                .map(|t| {
                    sources
                        .iter()
                        .map(|s| {
                            s.col.iter().fold(
                                zero.clone(),
                                |acc, (c, e)| if t[*c].is_zero() { acc } else { &acc + &(&t[*c] * e) },
                            )
                        })
                        .collect()
                })
                .collect();
            let (w1, w2) = (self.layers[d1].gates.len(), self.layers[d2].gates.len());
            let mut left_ts = Vec::new();
            for alpha in &alphas {
                for b in &self.bases[d2] {
                    let mut w = vec![zero.clone(); w1];
                    for (s, a) in sources.iter().zip(alpha) {
                        if !a.is_zero() && !b.vector[s.v].is_zero() {
                            w[s.u] = &w[s.u] + &(a * &b.vector[s.v]);
                        }
                    }
                    left_ts.push(w);
                }
            }
            let Some(m1) = self.least_in(d1, left_ts) else { continue };
            let v1 = self.vector_of(&m1);
            let right_ts = alphas
                .iter()
                .map(|alpha| {
                    let mut w = vec![zero.clone(); w2];
                    for (s, a) in sources.iter().zip(alpha) {
                        if !a.is_zero() && !v1[s.u].is_zero() {
                            w[s.v] = &w[s.v] + &(a * &v1[s.u]);
                        }
                    }
                    w
                })
                .collect();
            let m2 = self.least_in(d2, right_ts).expect("a left half with a partner has a least partner");
            return Some(Monomial::product(m1, m2));
        }
        unreachable!("a nonzero functional on a layer is nonzero on some product")
    }
}

fn scaled(s: &Scalar, expr: &[((usize, usize), Scalar)]) -> Vec<((usize, usize), Scalar)> {
    if s.is_zero() {
        return Vec::new();
    }
    expr.iter().map(|(k, e)| (*k, s * e)).collect()
}
