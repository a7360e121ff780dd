use super::coefficient::{subtree_table, SubtreeIndex};
use super::TransformError;
use crate::circuit::{live_gates, Circuit, CircuitBuilder, Gate, GateId, Monomial};
use crate::field::Scalar;

/// Which end of a monomial a derivative strips.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// Left derivative: `c_m(f) + Σ c_(m m'')(f) · m''`, the sum of right
/// cofactors of the monomials whose left child is `m`. The monomial `m`
/// itself is read as `(m · 1)` and contributes its coefficient as the constant
/// term.
pub fn left_derivative(c: &Circuit, m: &Monomial) -> Result<Circuit, TransformError> {
    derivative(c, m, Side::Left)
}

/// Right derivative: `c_m(f) + Σ c_(m'' m)(f) · m''`.
pub fn right_derivative(c: &Circuit, m: &Monomial) -> Result<Circuit, TransformError> {
    derivative(c, m, Side::Right)
}

fn derivative(c: &Circuit, m: &Monomial, side: Side) -> Result<Circuit, TransformError> {
    if let Some(d) = c.homogeneous_degree() {
        if m.degree() >= d {
            return Err(TransformError::DegreeError { monomial: m.degree(), circuit: d });
        }
    }
    let mut b = CircuitBuilder::new(c.field(), c.num_vars());
    let root = b.import(c);
    let out = derivative_in(&mut b, root, m, side);
    Ok(b.extract(out))
}

/// Derivative of the polynomial at `root`, built into the same builder.
///
/// Bracket-encoded, a product `u·v` reads `( u v )`; once the outer brackets
/// are dropped, the left derivative by `m` keeps exactly the terms whose left
/// factor is `m`. Gate by gate, with `u = u₀ + u⁺` split into constant and
/// nonconstant parts:
///
/// ```text
/// D(u·v) = c_m(u)·v⁺ + u₀·D(v) + v₀·D(u)      (left)
/// D(u·v) = c_m(v)·u⁺ + u₀·D(v) + v₀·D(u)      (right)
/// ```
///
/// The coefficients `c_m(u)` come from the subtree table, so the result is
/// the same polynomial the automaton construction yields, without the
/// matrix blow-up.
pub(crate) fn derivative_in(b: &mut CircuitBuilder, root: GateId, m: &Monomial, side: Side) -> GateId {
    let (d, cm) = positive_derivative_in(b, root, m, side);
    let k = b.constant(cm);
    b.add([d, k])
}

/// The derivative without its constant term, and that constant term `c_m(f)`.
pub(crate) fn positive_derivative_in(
    b: &mut CircuitBuilder,
    root: GateId,
    m: &Monomial,
    side: Side,
) -> (GateId, Scalar) {
    let field = b.field();
    let index = SubtreeIndex::new(m);
    let top = index.top();
    let live = live_gates(b.gates(), &[root]);
    let (c0, rows) = subtree_table(b.gates(), field, &live, &index);
    let at = |g: GateId| live.binary_search(&g).expect("child is live");
    let zero = b.zero();
    let mut d: Vec<GateId> = Vec::with_capacity(live.len());
    for &g in &live {
        let v = match b.gate(g).clone() {
            Gate::Input(_) | Gate::Const(_) => zero,
            Gate::Add(children) => {
                let kids: Vec<GateId> = children.iter().map(|&k| d[at(k)]).collect();
                b.add(kids)
            }
            Gate::Mul(l, r) => {
                let (i, j) = (at(l), at(r));
                let (coef, other, other0) = match side {
                    Side::Left => (&rows[i][top], r, &c0[j]),
                    Side::Right => (&rows[j][top], l, &c0[i]),
                };
                let mut terms = Vec::with_capacity(3);
                if !coef.is_zero() {
                    let k = b.constant(-other0);
                    let plus = b.add([other, k]);
                    terms.push(b.scale(coef, plus));
                }
                terms.push(b.scale(&c0[i], d[j]));
                terms.push(b.scale(&c0[j], d[i]));
                b.add(terms)
            }
        };
        d.push(v);
    }
    let last = live.len() - 1;
    (d[last], rows[last][top].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::parse_circuit;
    use crate::field::FieldSpec;
    use crate::transform::coefficient;

    fn m(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    #[test]
    fn strips_a_single_prefix() {
        // (x (y y)) by x → (y y)
        let c =
            parse_circuit("field Q\nvars 2\nx = var x1\ny = var x2\nyy = mul y y\np = mul x yy\noutput p\n").unwrap();
        let d = left_derivative(&c, &m("x1")).unwrap();
        assert_eq!(coefficient(&d, &m("(x2 x2)")), FieldSpec::Rationals.one());
        assert_eq!(d.homogeneous_degree(), Some(2));
        let r = right_derivative(&c, &m("(x2 x2)")).unwrap();
        assert_eq!(coefficient(&r, &m("x1")), FieldSpec::Rationals.one());
    }

    #[test]
    fn different_top_split_is_ignored() {
        // 3·((x y) y) + 2·(x (y y)) by (x y) → 3·y
        let c = parse_circuit(
            "field Q\nvars 2\nx = var x1\ny = var x2\nxy = mul x y\nxyy = mul xy y\nyy = mul y y\nx_yy = mul x yy\n\
             a = const 3\nb = const 2\nt1 = mul a xyy\nt2 = mul b x_yy\ns = add t1 t2\noutput s\n",
        )
        .unwrap();
        let d = left_derivative(&c, &m("(x1 x2)")).unwrap();
        assert_eq!(d.to_string(), "field Q\nvars 2\ng0 = var x2\ng1 = const 3\ng2 = mul g1 g0\noutput g2\n");
    }

    #[test]
    fn degree_guard() {
        let c = parse_circuit("field Q\nvars 2\nx = var x1\ny = var x2\np = mul x y\noutput p\n").unwrap();
        assert_eq!(left_derivative(&c, &m("(x1 x2)")), Err(TransformError::DegreeError { monomial: 2, circuit: 2 }));
    }

    #[test]
    fn constant_factor_contributes_constant_term() {
        // (x + 2)·(y + 3) by x on the left → (y + 3)
        let c = parse_circuit(
            "field Q\nvars 2\nx = var x1\ny = var x2\na = const 2\nb = const 3\ns = add x a\nt = add y b\np = mul s t\noutput p\n",
        )
        .unwrap();
        let d = left_derivative(&c, &m("x1")).unwrap();
        let q = FieldSpec::Rationals;
        assert_eq!(coefficient(&d, &m("x2")), q.one());
        assert_eq!(crate::transform::constant_term(&d), q.from_i64(3));
    }
}
