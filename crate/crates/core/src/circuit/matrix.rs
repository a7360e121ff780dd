//! Evaluation of a circuit on square matrices, with `+` as matrix addition and
//! `×` as the ordered matrix product. Entries live in an [`EntryRing`]: plain
//! scalars, or gates of a circuit under construction.

use std::collections::{BTreeMap, HashMap};

use super::{Circuit, CircuitBuilder, Gate, GateId, VarId};
use crate::field::{FieldError, FieldSpec, Scalar};

/// The operations matrix evaluation needs from its entries.
pub trait EntryRing {
    type Entry: Clone;

    fn field(&self) -> FieldSpec;
    fn is_zero(&self, e: &Self::Entry) -> bool;
    fn scalar(&mut self, s: &Scalar) -> Self::Entry;
    fn add(&mut self, a: &Self::Entry, b: &Self::Entry) -> Self::Entry;
    fn mul(&mut self, a: &Self::Entry, b: &Self::Entry) -> Self::Entry;
}

/// Scalar entries.
#[derive(Debug, Clone, Copy)]
pub struct ScalarEntries(pub FieldSpec);

impl EntryRing for ScalarEntries {
    type Entry = Scalar;

    fn field(&self) -> FieldSpec {
        self.0
    }
    fn is_zero(&self, e: &Scalar) -> bool {
        e.is_zero()
    }
    fn scalar(&mut self, s: &Scalar) -> Scalar {
        s.clone()
    }
    fn add(&mut self, a: &Scalar, b: &Scalar) -> Scalar {
        a + b
    }
    fn mul(&mut self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }
}

/// Entries are gates of a circuit being built.
pub struct GateEntries<'a>(pub &'a mut CircuitBuilder);

impl EntryRing for GateEntries<'_> {
    type Entry = GateId;

    fn field(&self) -> FieldSpec {
        self.0.field()
    }
    fn is_zero(&self, e: &GateId) -> bool {
        self.0.is_zero(*e)
    }
    fn scalar(&mut self, s: &Scalar) -> GateId {
        self.0.constant(s.clone())
    }
    fn add(&mut self, a: &GateId, b: &GateId) -> GateId {
        self.0.add([*a, *b])
    }
    fn mul(&mut self, a: &GateId, b: &GateId) -> GateId {
        self.0.mul(*a, *b)
    }
}

/// A sparse `dim × dim` matrix; absent entries are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<E> {
    dim: usize,
    entries: BTreeMap<(usize, usize), E>,
}

impl<E: Clone> Matrix<E> {
    pub fn zero(dim: usize) -> Self {
        Matrix { dim, entries: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&E> {
        self.entries.get(&(i, j))
    }

    pub fn set(&mut self, i: usize, j: usize, e: E) {
        assert!(i < self.dim && j < self.dim, "entry ({i}, {j}) outside a {0}×{0} matrix", self.dim);
        self.entries.insert((i, j), e);
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &E)> {
        self.entries.iter().map(|(&(i, j), e)| (i, j, e))
    }

    fn scaled_identity<R: EntryRing<Entry = E>>(ring: &mut R, dim: usize, s: &Scalar) -> Self {
        let mut m = Matrix::zero(dim);
        if !s.is_zero() {
            let e = ring.scalar(s);
            for i in 0..dim {
                m.entries.insert((i, i), e.clone());
            }
        }
        m
    }

    fn sum<R: EntryRing<Entry = E>>(ring: &mut R, a: &Self, b: &Self) -> Self {
        let mut out = a.clone();
        for (&k, e) in &b.entries {
            let v = match out.entries.get(&k) {
                Some(x) => ring.add(x, e),
                None => e.clone(),
            };
            if ring.is_zero(&v) {
                out.entries.remove(&k);
            } else {
                out.entries.insert(k, v);
            }
        }
        out
    }

    fn product<R: EntryRing<Entry = E>>(ring: &mut R, a: &Self, b: &Self) -> Self {
        let mut acc: BTreeMap<(usize, usize), Vec<E>> = BTreeMap::new();
        for (&(i, k), x) in &a.entries {
            for (&(_, j), y) in b.entries.range((k, 0)..(k + 1, 0)) {
                let t = ring.mul(x, y);
                if !ring.is_zero(&t) {
                    acc.entry((i, j)).or_default().push(t);
                }
            }
        }
        let mut out = Matrix::zero(a.dim);
        for (k, terms) in acc {
            let mut v = terms[0].clone();
            for t in &terms[1..] {
                v = ring.add(&v, t);
            }
            if !ring.is_zero(&v) {
                out.entries.insert(k, v);
            }
        }
        out
    }
}

/// Evaluates `c` on matrices. Variables map to `assign(var)`, a constant `s`
/// becomes `s·I`, sums and products are matrix sums and ordered products.
pub fn eval_matrices<R, F>(c: &Circuit, ring: &mut R, dim: usize, mut assign: F) -> Result<Matrix<R::Entry>, FieldError>
where
    R: EntryRing,
    F: FnMut(&mut R, VarId) -> Matrix<R::Entry>,
{
    if ring.field() != c.field() {
        return Err(FieldError::FieldMismatch(ring.field(), c.field()));
    }
    let mut live = vec![false; c.size()];
    live[c.output()] = true;
    for id in (0..c.size()).rev() {
        if live[id] {
            for k in c.gate(id).children() {
                live[k] = true;
            }
        }
    }
    let mut vars: HashMap<VarId, Matrix<R::Entry>> = HashMap::new();
    let mut vals: Vec<Option<Matrix<R::Entry>>> = vec![None; c.size()];
    for (id, gate) in c.gates().iter().enumerate() {
        if !live[id] {
            continue;
        }
        let m = match gate {
            Gate::Input(v) => {
                if !vars.contains_key(v) {
                    let m = assign(ring, *v);
                    assert_eq!(m.dim, dim, "assignment for {v} has the wrong size");
                    vars.insert(*v, m);
                }
                vars[v].clone()
            }
            Gate::Const(s) => Matrix::scaled_identity(ring, dim, s),
            Gate::Mul(l, r) => {
                let (a, b) = (vals[*l].as_ref().unwrap(), vals[*r].as_ref().unwrap());
                Matrix::product(ring, a, b)
            }
            Gate::Add(children) => {
                let mut m = Matrix::zero(dim);
                for &k in children {
                    m = Matrix::sum(ring, &m, vals[k].as_ref().unwrap());
                }
                m
            }
        };
        vals[id] = Some(m);
    }
    Ok(vals[c.output()].take().unwrap())
}

/// Matrix evaluation whose entries are gates appended to `out`.
pub fn eval_gate_matrices(
    c: &Circuit,
    out: &mut CircuitBuilder,
    dim: usize,
    assign: &HashMap<VarId, Matrix<GateId>>,
) -> Result<Matrix<GateId>, FieldError> {
    let mut ring = GateEntries(out);
    eval_matrices(c, &mut ring, dim, |_, v| assign.get(&v).cloned().unwrap_or_else(|| Matrix::zero(dim)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::parse_circuit;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn dense(rows: &[[i64; 2]; 2]) -> Matrix<Scalar> {
        let mut m = Matrix::zero(2);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.set(i, j, q().from_i64(v));
                }
            }
        }
        m
    }

    #[test]
    fn variable_maps_to_its_matrix() {
        let c = parse_circuit("field Q\nvars 1\ng0 = var x1\noutput g0\n").unwrap();
        let m = dense(&[[1, 2], [3, 4]]);
        let got = eval_matrices(&c, &mut ScalarEntries(q()), 2, |_, _| m.clone()).unwrap();
        assert_eq!(got, m);
    }

    #[test]
    fn product_is_ordered() {
        let c = parse_circuit("field Q\nvars 2\na = var x1\nb = var x2\np = mul a b\noutput p\n").unwrap();
        let a = dense(&[[1, 2], [3, 4]]);
        let b = dense(&[[0, 1], [5, 7]]);
        let got =
            eval_matrices(&c, &mut ScalarEntries(q()), 2, |_, v| if v.index() == 1 { a.clone() } else { b.clone() })
                .unwrap();
        assert_eq!(got, dense(&[[10, 15], [20, 31]]));
    }

    #[test]
    fn constants_embed_as_scaled_identity() {
        let c = parse_circuit("field Q\nvars 1\na = const 3\nb = const 4\ns = add a b\noutput s\n").unwrap();
        let got = eval_matrices(&c, &mut ScalarEntries(q()), 2, |_, _| Matrix::zero(2)).unwrap();
        assert_eq!(got, dense(&[[7, 0], [0, 7]]));
    }

    #[test]
    fn field_mismatch_is_reported() {
        let c = parse_circuit("field Q\nvars 1\na = var x1\noutput a\n").unwrap();
        let f5 = FieldSpec::prime(5).unwrap();
        let err = eval_matrices(&c, &mut ScalarEntries(f5), 2, |_, _| Matrix::zero(2)).unwrap_err();
        assert!(matches!(err, FieldError::FieldMismatch(..)));
    }

    #[test]
    fn gate_entries_build_a_circuit() {
        let c = parse_circuit("field Q\nvars 2\na = var x1\nb = var x2\np = mul a b\noutput p\n").unwrap();
        let mut out = CircuitBuilder::new(q(), 2);
        let mut assign = HashMap::new();
        for v in 1..=2 {
            let g = out.var(v);
            let mut m = Matrix::zero(2);
            m.set(0, 1, g);
            m.set(1, 1, g);
            assign.insert(VarId::new(v), m);
        }
        let got = eval_gate_matrices(&c, &mut out, 2, &assign).unwrap();
        // [[0,x],[0,x]]·[[0,y],[0,y]] = [[0,xy],[0,xy]]
        let xy = got.get(0, 1).copied().unwrap();
        assert_eq!(got.get(1, 1).copied(), Some(xy));
        assert_eq!(
            out.extract(xy).to_string(),
            "field Q\nvars 2\ng0 = var x1\ng1 = var x2\ng2 = mul g0 g1\noutput g2\n"
        );
    }
}
