use crate::circuit::{live_gates, Circuit, CircuitBuilder, Gate, GateId};

/// The homogeneous parts `f_0 … f_d` of a circuit's polynomial, each as its
/// own degree-annotated circuit. A part is `None` when it is syntactically
/// zero after folding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousParts {
    pub parts: Vec<Option<Circuit>>,
}

impl HomogeneousParts {
    pub fn part(&self, j: usize) -> Option<&Circuit> {
        self.parts.get(j).and_then(|p| p.as_ref())
    }

    /// Largest `j` with a part present.
    pub fn top_degree(&self) -> Option<usize> {
        self.parts.iter().rposition(|p| p.is_some())
    }
}

pub fn homogenize(c: &Circuit) -> HomogeneousParts {
    let mut b = CircuitBuilder::new(c.field(), c.num_vars());
    let root = b.import(c);
    let roots = homogenize_in(&mut b, root);
    let parts = roots.into_iter().map(|r| (!b.is_zero(r)).then(|| b.extract(r))).collect();
    HomogeneousParts { parts }
}

/// Gate-splitting inside a builder: returns, for each degree `j` up to the
/// syntactic degree of `root`, a gate computing the degree-`j` part (the zero
/// constant when that part vanishes). Empty for the zero polynomial.
///
/// Homogeneous gates stand for themselves, so the pass is cheap on circuits
/// that are already mostly homogeneous.
pub(crate) fn homogenize_in(b: &mut CircuitBuilder, root: GateId) -> Vec<GateId> {
    let Some((lo, hi)) = b.degree_range(root) else {
        return Vec::new();
    };
    if lo == hi {
        let zero = b.zero();
        let mut parts = vec![zero; hi + 1];
        parts[hi] = root;
        return parts;
    }
    let live = live_gates(b.gates(), &[root]);
    let at = |g: GateId| live.binary_search(&g).expect("child is live");
    let zero = b.zero();
    // (lowest degree, gate per degree from there on)
    let mut split: Vec<(usize, Vec<GateId>)> = Vec::with_capacity(live.len());
    for &g in &live {
        let entry = match b.degree_range(g) {
            None => (0, Vec::new()),
            Some((lo, hi)) if lo == hi => (lo, vec![g]),
            Some((lo, hi)) => match b.gate(g).clone() {
                Gate::Add(children) => {
                    let mut parts = Vec::with_capacity(hi - lo + 1);
                    for j in lo..=hi {
                        let kids: Vec<GateId> = children.iter().filter_map(|&k| part(&split[at(k)], j)).collect();
                        parts.push(b.add(kids));
                    }
                    (lo, parts)
                }
                Gate::Mul(l, r) => {
                    let (u, v) = (split[at(l)].clone(), split[at(r)].clone());
                    let mut parts = Vec::with_capacity(hi - lo + 1);
                    for j in lo..=hi {
                        let mut terms = Vec::new();
                        for (a, &ua) in u.1.iter().enumerate() {
                            let a = a + u.0;
                            if a > j {
                                break;
                            }
                            if let Some(vb) = part(&v, j - a) {
                                terms.push(b.mul(ua, vb));
                            }
                        }
                        parts.push(b.add(terms));
                    }
                    (lo, parts)
                }
                Gate::Input(_) | Gate::Const(_) => unreachable!("leaves are homogeneous"),
            },
        };
        split.push(entry);
    }
    let top = split.pop().expect("root is live");
    (0..=hi).map(|j| part(&top, j).unwrap_or(zero)).collect()
}

fn part(entry: &(usize, Vec<GateId>), j: usize) -> Option<GateId> {
    j.checked_sub(entry.0).and_then(|i| entry.1.get(i)).copied()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::parse_circuit;

    #[test]
    fn splits_square_plus_linear() {
        let c = parse_circuit("field Q\nvars 1\nx = var x1\nxx = mul x x\ns = add xx x\noutput s\n").unwrap();
        let h = homogenize(&c);
        assert_eq!(h.parts.len(), 3);
        assert!(h.part(0).is_none());
        assert_eq!(h.part(1).unwrap().to_string(), "field Q\nvars 1\ng0 = var x1\noutput g0\n");
        assert_eq!(h.part(2).unwrap().homogeneous_degree(), Some(2));
        assert_eq!(h.top_degree(), Some(2));
    }

    #[test]
    fn homogeneous_input_is_its_own_top_part() {
        let c = parse_circuit("field Q\nvars 2\nx = var x1\ny = var x2\np = mul x y\noutput p\n").unwrap();
        let h = homogenize(&c);
        assert_eq!(h.part(2), Some(&c));
        assert!(h.part(1).is_none() && h.part(0).is_none());
        let again = homogenize(h.part(2).unwrap());
        assert_eq!(again.top_degree(), Some(2));
        assert_eq!(again.parts.iter().flatten().count(), 1);
    }

    #[test]
    fn product_of_inhomogeneous_factors() {
        // (x + 1)(x + 1) = (x x) + 2x + 1
        let c =
            parse_circuit("field Q\nvars 1\nx = var x1\no = const 1\ns = add x o\np = mul s s\noutput p\n").unwrap();
        let h = homogenize(&c);
        assert_eq!(h.part(0).unwrap().as_constant().unwrap().to_string(), "1");
        assert_eq!(crate::transform::coefficient(h.part(1).unwrap(), &"x1".parse().unwrap()).to_string(), "2");
        assert_eq!(h.part(2).unwrap().homogeneous_degree(), Some(2));
    }

    #[test]
    fn zero_circuit_has_no_parts() {
        let c = Circuit::zero(crate::field::FieldSpec::Rationals, 1);
        assert!(homogenize(&c).parts.is_empty());
    }
}
