use super::brackets::{encode_brackets, encode_monomial, Letter};
use crate::circuit::{eval_matrices, live_gates, Circuit, Gate, GateId, Matrix, Monomial, ScalarEntries};
use crate::field::{FieldSpec, Scalar};

/// The coefficient of `m` in the polynomial computed by `c`.
///
/// Runs the word automaton for the bracket encoding of `m` over the encoded
/// circuit: letter `ℓ` becomes the 0/1 matrix with a one at `(i, i+1)` exactly
/// when the `i`-th letter of the word is `ℓ`, and the coefficient is the top
/// right entry of the evaluated matrix.
pub fn coefficient(c: &Circuit, m: &Monomial) -> Scalar {
    let field = c.field();
    if m.max_var() > c.num_vars() {
        return field.zero();
    }
    let n = c.num_vars();
    let word = encode_monomial(m).0;
    let len = word.len();
    let encoded = encode_brackets(c);
    let mut ring = ScalarEntries(field);
    let out = eval_matrices(&encoded, &mut ring, len + 1, |_, v| {
        let letter = Letter::from_index(v.index(), n);
        let mut mat = Matrix::zero(len + 1);
        for (i, l) in word.iter().enumerate() {
            if *l == letter {
                mat.set(i, i + 1, field.one());
            }
        }
        mat
    })
    .expect("encoded circuit shares the field");
    out.get(0, len).cloned().unwrap_or_else(|| field.zero())
}

/// Same value as [`coefficient`], computed by tracking the coefficient of
/// every subtree of `m` gate by gate. Much cheaper; used on hot paths.
pub fn coefficient_by_subtrees(c: &Circuit, m: &Monomial) -> Scalar {
    coefficient_in(c.gates(), c.field(), c.output(), m)
}

/// The constant term of the polynomial computed by `c`.
pub fn constant_term(c: &Circuit) -> Scalar {
    constant_term_in(c.gates(), c.field(), c.output())
}

pub(crate) fn constant_term_in(gates: &[Gate], field: FieldSpec, root: GateId) -> Scalar {
    let live = live_gates(gates, &[root]);
    let mut c0: Vec<Scalar> = Vec::with_capacity(live.len());
    let at = |live: &[GateId], g: GateId| live.binary_search(&g).expect("child is live");
    for &g in &live {
        let v = match &gates[g] {
            Gate::Input(_) => field.zero(),
            Gate::Const(s) => s.clone(),
            Gate::Mul(l, r) => &c0[at(&live, *l)] * &c0[at(&live, *r)],
            Gate::Add(children) => children.iter().fold(field.zero(), |acc, &k| &acc + &c0[at(&live, k)]),
        };
        c0.push(v);
    }
    c0.pop().unwrap_or_else(|| field.zero())
}

/// The distinct subtrees of a monomial with child links, for dynamic
/// programming over gates.
pub(crate) struct SubtreeIndex {
    pub subs: Vec<Monomial>,
    kids: Vec<Option<(usize, usize)>>,
}

impl SubtreeIndex {
    pub fn new(m: &Monomial) -> Self {
        let subs = m.subtrees();
        let kids = subs
            .iter()
            .map(|s| match s {
                Monomial::Var(_) => None,
                Monomial::Node(l, r) => {
                    Some((subs.iter().position(|t| t == &**l).unwrap(), subs.iter().position(|t| t == &**r).unwrap()))
                }
            })
            .collect();
        SubtreeIndex { subs, kids }
    }

    /// Index of the whole monomial.
    pub fn top(&self) -> usize {
        self.subs.len() - 1
    }

    pub fn input_row(&self, field: FieldSpec, var: usize) -> Vec<Scalar> {
        self.subs
            .iter()
            .map(|s| match s {
                Monomial::Var(v) if v.index() == var => field.one(),
                _ => field.zero(),
            })
            .collect()
    }

    /// Coefficients at a product gate from those of its operands and their
    /// constant terms.
    pub fn product_row(&self, field: FieldSpec, u0: &Scalar, u: &[Scalar], v0: &Scalar, v: &[Scalar]) -> Vec<Scalar> {
        let mut row = Vec::with_capacity(self.subs.len());
        for (p, kids) in self.kids.iter().enumerate() {
            let mut x = field.zero();
            if let Some((a, b)) = kids {
                x = &u[*a] * &v[*b];
            }
            if !u0.is_zero() {
                x = &x + &(u0 * &v[p]);
            }
            if !v0.is_zero() {
                x = &x + &(v0 * &u[p]);
            }
            row.push(x);
        }
        row
    }
}

/// Constant term and subtree coefficients for every live gate below `root`.
pub(crate) fn subtree_table(
    gates: &[Gate],
    field: FieldSpec,
    live: &[GateId],
    index: &SubtreeIndex,
) -> (Vec<Scalar>, Vec<Vec<Scalar>>) {
    let k = index.subs.len();
    let at = |g: GateId| live.binary_search(&g).expect("child is live");
    let mut c0: Vec<Scalar> = Vec::with_capacity(live.len());
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(live.len());
    for &g in live {
        let (z, row) = match &gates[g] {
            Gate::Input(v) => (field.zero(), index.input_row(field, v.index())),
            Gate::Const(s) => (s.clone(), vec![field.zero(); k]),
            Gate::Mul(l, r) => {
                let (a, b) = (at(*l), at(*r));
                let row = index.product_row(field, &c0[a], &rows[a], &c0[b], &rows[b]);
                (&c0[a] * &c0[b], row)
            }
            Gate::Add(children) => {
                let mut z = field.zero();
                let mut row = vec![field.zero(); k];
                for &ch in children {
                    let i = at(ch);
                    z = &z + &c0[i];
                    for (acc, x) in row.iter_mut().zip(&rows[i]) {
                        if !x.is_zero() {
                            *acc = &*acc + x;
                        }
                    }
                }
                (z, row)
            }
        };
        c0.push(z);
        rows.push(row);
    }
    (c0, rows)
}

pub(crate) fn coefficient_in(gates: &[Gate], field: FieldSpec, root: GateId, m: &Monomial) -> Scalar {
    let index = SubtreeIndex::new(m);
    let live = live_gates(gates, &[root]);
    let (_, rows) = subtree_table(gates, field, &live, &index);
    rows.last().map(|r| r[index.top()].clone()).unwrap_or_else(|| field.zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::parse_circuit;

    fn m(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    // 3·((x y) y) + 2·(x (y y))
    fn sample() -> Circuit {
        parse_circuit(
            "field Q\nvars 2\nx = var x1\ny = var x2\nxy = mul x y\nxyy = mul xy y\nyy = mul y y\nx_yy = mul x yy\n\
             a = const 3\nb = const 2\nt1 = mul a xyy\nt2 = mul b x_yy\ns = add t1 t2\noutput s\n",
        )
        .unwrap()
    }

    #[test]
    fn coefficient_of_present_and_absent_monomials() {
        let c = sample();
        let q = FieldSpec::Rationals;
        assert_eq!(coefficient(&c, &m("((x1 x2) x2)")), q.from_i64(3));
        assert_eq!(coefficient(&c, &m("(x1 (x2 x2))")), q.from_i64(2));
        assert_eq!(coefficient(&c, &m("((x2 x1) x2)")), q.zero());
        assert_eq!(coefficient(&c, &m("x1")), q.zero());
        assert_eq!(coefficient(&c, &m("(x3 x1)")), q.zero());
        for s in ["((x1 x2) x2)", "(x1 (x2 x2))", "(x1 x2)", "x2"] {
            assert_eq!(coefficient_by_subtrees(&c, &m(s)), coefficient(&c, &m(s)), "{s}");
        }
    }

    #[test]
    fn constants_do_not_create_brackets() {
        // (1 + x)·y = y + (x y)
        let c =
            parse_circuit("field Q\nvars 2\no = const 1\nx = var x1\ny = var x2\ns = add o x\np = mul s y\noutput p\n")
                .unwrap();
        let q = FieldSpec::Rationals;
        assert_eq!(coefficient(&c, &m("x2")), q.one());
        assert_eq!(coefficient(&c, &m("(x1 x2)")), q.one());
        assert_eq!(coefficient_by_subtrees(&c, &m("x2")), q.one());
        assert_eq!(constant_term(&c), q.zero());
    }
}
