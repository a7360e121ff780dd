use super::TransformError;
use crate::circuit::{is_alternating, live_gates, Circuit, CircuitBuilder, Gate, GateId};

/// The sum of the monomials of a homogeneous `c` whose root split has left
/// degree `left` and right degree `right`.
///
/// Products of the output sum are kept when their operand degrees match and
/// dropped otherwise. Products with a constant operand are scalings and are
/// looked through.
pub fn top_split_component(c: &Circuit, left: usize, right: usize) -> Result<Circuit, TransformError> {
    let degree = c.homogeneous_degree().ok_or(TransformError::NotHomogeneous)?;
    if !is_alternating(c) {
        return Err(TransformError::NotNormalized);
    }
    if left == 0 || right == 0 || left + right != degree {
        return Err(TransformError::BadSplit { left, right, degree });
    }
    let mut b = CircuitBuilder::new(c.field(), c.num_vars());
    let root = b.import(c);
    let out = top_split_in(&mut b, root, left, right);
    Ok(b.extract(out))
}

/// Split component of a homogeneous gate, built into the same builder.
pub(crate) fn top_split_in(b: &mut CircuitBuilder, root: GateId, left: usize, right: usize) -> GateId {
    let zero = b.zero();
    let Some(degree) = b.homogeneous_degree(root) else {
        assert!(b.is_zero(root), "split component of an inhomogeneous gate");
        return zero;
    };
    if degree != left + right {
        return zero;
    }
    // Only gates of the full degree can hold a root split; stop descending at
    // genuine products.
    let live = live_gates(b.gates(), &[root]);
    let mut comp: Vec<Option<GateId>> = vec![None; live.len()];
    let at = |g: GateId| live.binary_search(&g).expect("child is live");
    for (i, &g) in live.iter().enumerate() {
        if b.homogeneous_degree(g) != Some(degree) {
            continue;
        }
        let v = match b.gate(g).clone() {
            Gate::Input(_) | Gate::Const(_) => zero,
            Gate::Add(children) => {
                let kids: Vec<GateId> = children.iter().filter_map(|&k| comp[at(k)]).collect();
                b.add(kids)
            }
            Gate::Mul(l, r) => {
                let (dl, dr) = (b.homogeneous_degree(l), b.homogeneous_degree(r));
                if dl == Some(0) {
                    let s = b.const_value(l).expect("degree-0 gates fold to constants").clone();
                    let inner = comp[at(r)].unwrap_or(zero);
                    b.scale(&s, inner)
                } else if dr == Some(0) {
                    let s = b.const_value(r).expect("degree-0 gates fold to constants").clone();
                    let inner = comp[at(l)].unwrap_or(zero);
                    b.scale(&s, inner)
                } else if (dl, dr) == (Some(left), Some(right)) {
                    g
                } else {
                    zero
                }
            }
        };
        comp[i] = Some(v);
    }
    comp.last().copied().flatten().unwrap_or(zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{normalize_alternating, parse_circuit};
    use crate::transform::coefficient;

    fn sample() -> Circuit {
        // ((x y) y) + (x (y y))
        let c = parse_circuit(
            "field Q\nvars 2\nx = var x1\ny = var x2\nxy = mul x y\nxyy = mul xy y\nyy = mul y y\nx_yy = mul x yy\n\
             s = add xyy x_yy\noutput s\n",
        )
        .unwrap();
        normalize_alternating(&c)
    }

    #[test]
    fn filters_by_root_split() {
        let c = sample();
        let a = top_split_component(&c, 2, 1).unwrap();
        let b = top_split_component(&c, 1, 2).unwrap();
        let one = crate::field::FieldSpec::Rationals.one();
        let zero = crate::field::FieldSpec::Rationals.zero();
        assert_eq!(coefficient(&a, &"((x1 x2) x2)".parse().unwrap()), one);
        assert_eq!(coefficient(&a, &"(x1 (x2 x2))".parse().unwrap()), zero);
        assert_eq!(coefficient(&b, &"(x1 (x2 x2))".parse().unwrap()), one);
        assert_eq!(coefficient(&b, &"((x1 x2) x2)".parse().unwrap()), zero);
    }

    #[test]
    fn preconditions() {
        let raw = parse_circuit("field Q\nvars 2\nx = var x1\ny = var x2\np = mul x y\noutput p\n").unwrap();
        assert_eq!(top_split_component(&raw, 1, 1), Err(TransformError::NotNormalized));
        let inhom = parse_circuit("field Q\nvars 1\nx = var x1\nxx = mul x x\ns = add xx x\noutput s\n").unwrap();
        assert_eq!(top_split_component(&inhom, 1, 1), Err(TransformError::NotHomogeneous));
        let n = normalize_alternating(&raw);
        assert_eq!(top_split_component(&n, 1, 1).unwrap().simplified(), raw.simplified());
        assert!(matches!(top_split_component(&n, 2, 1), Err(TransformError::BadSplit { .. })));
    }
}
