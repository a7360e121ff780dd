use rustc_hash::FxHashMap as HashMap;

use super::{live_gates, Circuit, Gate, GateId};
use crate::field::FieldSpec;

/// Rewrites `c` so that sum and product gates alternate: every product
/// operand is a sum gate, sums have no sum children and the output is a sum.
///
/// Product operands get fan-in-1 sum wrappers. A sum child that is itself a
/// sum is inlined when nothing else uses it; otherwise it is routed through a
/// product with the constant 1, which keeps sharing intact. No folding is
/// performed, so the result mirrors the input structure.
pub fn normalize_alternating(c: &Circuit) -> Circuit {
    let (gates, roots) = normalize_gates(c.field(), c.gates(), &[c.output()]);
    Circuit::new(c.field(), c.num_vars(), gates, roots[0]).expect("normalization keeps validity").annotate_degrees()
}

/// Multi-root form of [`normalize_alternating`]: every root becomes a sum
/// gate and only gates reachable from the roots are kept.
pub(crate) fn normalize_gates(field: FieldSpec, gates: &[Gate], roots: &[GateId]) -> (Vec<Gate>, Vec<GateId>) {
    let mut fanout = vec![0usize; gates.len()];
    for gate in gates {
        for k in gate.children() {
            fanout[k] += 1;
        }
    }

    let mut out: Vec<Gate> = Vec::with_capacity(gates.len() * 2);
    let mut map: Vec<GateId> = Vec::with_capacity(gates.len());
    let mut wrapped: HashMap<GateId, GateId> = HashMap::default();
    let mut unit_sum: Option<GateId> = None;

    fn wrap(out: &mut Vec<Gate>, wrapped: &mut HashMap<GateId, GateId>, g: GateId) -> GateId {
        if matches!(out[g], Gate::Add(_)) {
            return g;
        }
        *wrapped.entry(g).or_insert_with(|| {
            out.push(Gate::Add(vec![g]));
            out.len() - 1
        })
    }

    for gate in gates {
        let id = match gate {
            Gate::Input(_) | Gate::Const(_) => {
                out.push(gate.clone());
                out.len() - 1
            }
            Gate::Mul(l, r) => {
                let a = wrap(&mut out, &mut wrapped, map[*l]);
                let b = wrap(&mut out, &mut wrapped, map[*r]);
                out.push(Gate::Mul(a, b));
                out.len() - 1
            }
            Gate::Add(children) => {
                let mut kids = Vec::with_capacity(children.len());
                for &k in children {
                    let nk = map[k];
                    match &out[nk] {
                        Gate::Add(inner) if fanout[k] <= 1 => kids.extend(inner.iter().copied()),
                        Gate::Add(_) => {
                            let one_sum = *unit_sum.get_or_insert_with(|| {
                                out.push(Gate::Const(field.one()));
                                out.push(Gate::Add(vec![out.len() - 1]));
                                out.len() - 1
                            });
                            out.push(Gate::Mul(one_sum, nk));
                            kids.push(out.len() - 1);
                        }
                        _ => kids.push(nk),
                    }
                }
                kids.sort_unstable();
                out.push(Gate::Add(kids));
                out.len() - 1
            }
        };
        map.push(id);
    }
    let new_roots: Vec<GateId> = roots.iter().map(|&r| wrap(&mut out, &mut wrapped, map[r])).collect();

    // Inlined sums are left behind unreferenced; drop them.
    let live = live_gates(&out, &new_roots);
    let mut renumber = vec![usize::MAX; out.len()];
    let mut kept = Vec::with_capacity(live.len());
    for &id in &live {
        renumber[id] = kept.len();
        kept.push(match &out[id] {
            Gate::Mul(l, r) => Gate::Mul(renumber[*l], renumber[*r]),
            Gate::Add(children) => Gate::Add(children.iter().map(|&k| renumber[k]).collect()),
            other => other.clone(),
        });
    }
    let roots = new_roots.iter().map(|&r| renumber[r]).collect();
    (kept, roots)
}

/// Whether `c` is already in the alternating form produced by
/// [`normalize_alternating`].
pub fn is_alternating(c: &Circuit) -> bool {
    let gates = c.gates();
    if !matches!(gates[c.output()], Gate::Add(_)) {
        return false;
    }
    gates.iter().all(|g| match g {
        Gate::Mul(l, r) => matches!(gates[*l], Gate::Add(_)) && matches!(gates[*r], Gate::Add(_)),
        Gate::Add(children) => children.iter().all(|&k| !matches!(gates[k], Gate::Add(_))),
        _ => true,
    })
}
