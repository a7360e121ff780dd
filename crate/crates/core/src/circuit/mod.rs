//! The circuit data model: a DAG of variable, constant, ordered binary
//! product and n-ary sum gates with one designated output.

mod builder;
mod matrix;
mod monomial;
mod normalize;
mod text;

use thiserror::Error;

use crate::field::{FieldError, FieldSpec, Scalar};

pub use builder::CircuitBuilder;
pub use matrix::{eval_gate_matrices, eval_matrices, EntryRing, GateEntries, Matrix, ScalarEntries};
pub use monomial::{Monomial, MonomialError, VarId};
pub(crate) use normalize::normalize_gates;
pub use normalize::{is_alternating, normalize_alternating};
pub use text::parse_circuit;

/// Gates reachable from `roots`, ascending.
pub(crate) fn live_gates(gates: &[Gate], roots: &[GateId]) -> Vec<GateId> {
    let Some(&top) = roots.iter().max() else {
        return Vec::new();
    };
    let mut live = vec![false; top + 1];
    for &r in roots {
        live[r] = true;
    }
    for id in (0..=top).rev() {
        if live[id] {
            match &gates[id] {
                Gate::Mul(l, r) => {
                    live[*l] = true;
                    live[*r] = true;
                }
                Gate::Add(children) => children.iter().for_each(|&k| live[k] = true),
                _ => {}
            }
        }
    }
    (0..=top).filter(|&g| live[g]).collect()
}

/// Index of a gate inside its circuit. Gates only reference smaller ids.
pub type GateId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Gate {
    Input(VarId),
    Const(Scalar),
    /// Ordered product: left operand first.
    Mul(GateId, GateId),
    Add(Vec<GateId>),
}

impl Gate {
    /// Operand gates in order; empty for inputs and constants.
    pub fn children(&self) -> Vec<GateId> {
        match self {
            Gate::Input(_) | Gate::Const(_) => Vec::new(),
            Gate::Mul(l, r) => vec![*l, *r],
            Gate::Add(c) => c.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("circuit has no gates")]
    Empty,
    #[error("gate {gate} references gate {target}, which is not defined before it")]
    ForwardReference { gate: GateId, target: GateId },
    #[error("gate {gate} uses x{index} but only {num_vars} variables are declared")]
    VariableOutOfRange { gate: GateId, index: usize, num_vars: usize },
    #[error("add gate {0} has no inputs")]
    EmptyAdd(GateId),
    #[error("gate {gate} holds a constant over {found}, circuit is over {expected}")]
    FieldMismatch { gate: GateId, expected: FieldSpec, found: FieldSpec },
    #[error("output gate {0} does not exist")]
    MissingOutput(GateId),
    #[error("degree annotation is inconsistent at gate {0}")]
    BadDegreeAnnotation(GateId),
    #[error("line {line}: gate `{name}` is used before it is defined")]
    UndefinedGate { line: usize, name: String },
    #[error("line {line}: gate `{name}` is defined twice")]
    DuplicateGate { line: usize, name: String },
    #[error("line {line}: `{op}` expects {expected} operands, found {found}")]
    BadArity { line: usize, op: String, expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A validated circuit. Gates are stored in topological order and are never
/// mutated after construction; every transformation returns a new circuit.
///
/// When `degrees` is present the circuit is homogeneous and `degrees[g]` is
/// the degree of the polynomial computed at gate `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    field: FieldSpec,
    num_vars: usize,
    gates: Vec<Gate>,
    output: GateId,
    degrees: Option<Vec<usize>>,
}

impl Circuit {
    pub fn new(
        field: FieldSpec,
        num_vars: usize,
        mut gates: Vec<Gate>,
        output: GateId,
    ) -> Result<Self, ValidationError> {
        if gates.is_empty() {
            return Err(ValidationError::Empty);
        }
        for (id, gate) in gates.iter_mut().enumerate() {
            match gate {
                Gate::Input(v) => {
                    if v.index() > num_vars {
                        return Err(ValidationError::VariableOutOfRange { gate: id, index: v.index(), num_vars });
                    }
                }
                Gate::Const(s) => {
                    if s.field() != field {
                        return Err(ValidationError::FieldMismatch { gate: id, expected: field, found: s.field() });
                    }
                }
                Gate::Mul(l, r) => {
                    for &t in [*l, *r].iter() {
                        if t >= id {
                            return Err(ValidationError::ForwardReference { gate: id, target: t });
                        }
                    }
                }
                Gate::Add(children) => {
                    if children.is_empty() {
                        return Err(ValidationError::EmptyAdd(id));
                    }
                    if let Some(&t) = children.iter().find(|&&t| t >= id) {
                        return Err(ValidationError::ForwardReference { gate: id, target: t });
                    }
                    children.sort_unstable();
                }
            }
        }
        if output >= gates.len() {
            return Err(ValidationError::MissingOutput(output));
        }
        Ok(Circuit { field, num_vars, gates, output, degrees: None })
    }

    /// Attaches a degree annotation after checking it gate by gate.
    pub fn with_degrees(mut self, degrees: Vec<usize>) -> Result<Self, ValidationError> {
        if degrees.len() != self.gates.len() {
            return Err(ValidationError::BadDegreeAnnotation(degrees.len().min(self.gates.len())));
        }
        for (id, gate) in self.gates.iter().enumerate() {
            let ok = match gate {
                Gate::Input(_) => degrees[id] == 1,
                Gate::Const(_) => degrees[id] == 0,
                Gate::Mul(l, r) => degrees[id] == degrees[*l] + degrees[*r],
                Gate::Add(c) => c.iter().all(|&k| degrees[k] == degrees[id]),
            };
            if !ok {
                return Err(ValidationError::BadDegreeAnnotation(id));
            }
        }
        self.degrees = Some(degrees);
        Ok(self)
    }

    /// Computes gate degrees bottom-up and attaches them when every gate is
    /// homogeneous; otherwise returns the circuit unannotated.
    pub fn annotate_degrees(self) -> Self {
        match self.homogeneous_degrees() {
            Some(d) => Circuit { degrees: Some(d), ..self },
            None => self,
        }
    }

    /// Per-gate degrees if every gate computes a (syntactically) homogeneous
    /// polynomial.
    pub fn homogeneous_degrees(&self) -> Option<Vec<usize>> {
        let mut deg = Vec::with_capacity(self.gates.len());
        for gate in &self.gates {
            let d = match gate {
                Gate::Input(_) => 1,
                Gate::Const(_) => 0,
                Gate::Mul(l, r) => deg[*l] + deg[*r],
                Gate::Add(c) => {
                    let d = deg[c[0]];
                    if c.iter().any(|&k| deg[k] != d) {
                        return None;
                    }
                    d
                }
            };
            deg.push(d);
        }
        Some(deg)
    }

    pub fn zero(field: FieldSpec, num_vars: usize) -> Self {
        Self::constant(field, num_vars, field.zero())
    }

    pub fn constant(field: FieldSpec, num_vars: usize, value: Scalar) -> Self {
        Circuit::new(field, num_vars, vec![Gate::Const(value)], 0).expect("constant circuit").annotate_degrees()
    }

    pub fn variable(field: FieldSpec, num_vars: usize, index: usize) -> Self {
        Circuit::new(field, num_vars, vec![Gate::Input(VarId::new(index))], 0)
            .expect("variable within range")
            .annotate_degrees()
    }

    /// The circuit computing a single monomial with coefficient 1.
    pub fn from_monomial(field: FieldSpec, num_vars: usize, m: &Monomial) -> Self {
        let mut b = CircuitBuilder::new(field, num_vars.max(m.max_var()));
        let root = b.monomial(m);
        b.extract(root)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn gate(&self, id: GateId) -> &Gate {
        &self.gates[id]
    }

    pub fn output(&self) -> GateId {
        self.output
    }

    /// Number of gates.
    pub fn size(&self) -> usize {
        self.gates.len()
    }

    pub fn degrees(&self) -> Option<&[usize]> {
        self.degrees.as_deref()
    }

    /// Degree of the output when the circuit carries a degree annotation.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        self.degrees.as_ref().map(|d| d[self.output])
    }

    /// Upper bound on the degree of every gate, computed bottom-up.
    pub fn degree_bounds(&self) -> Vec<usize> {
        let mut deg: Vec<usize> = Vec::with_capacity(self.gates.len());
        for gate in &self.gates {
            let d = match gate {
                Gate::Input(_) => 1,
                Gate::Const(_) => 0,
                Gate::Mul(l, r) => deg[*l] + deg[*r],
                Gate::Add(c) => c.iter().map(|&k| deg[k]).max().unwrap_or(0),
            };
            deg.push(d);
        }
        deg
    }

    /// Syntactic degree of the output.
    pub fn degree_bound(&self) -> usize {
        self.degree_bounds()[self.output]
    }

    /// Whether the output is a literal constant gate.
    pub fn as_constant(&self) -> Option<&Scalar> {
        match &self.gates[self.output] {
            Gate::Const(s) => Some(s),
            _ => None,
        }
    }

    /// Same circuit with a larger variable count.
    pub fn widen(mut self, num_vars: usize) -> Self {
        self.num_vars = self.num_vars.max(num_vars);
        self
    }

    /// Dead-gate elimination and constant folding.
    pub fn simplified(&self) -> Circuit {
        let mut b = CircuitBuilder::new(self.field, self.num_vars);
        let root = b.import(self);
        b.extract(root)
    }

    /// Left and right children swapped at every product gate; computes the
    /// mirror image of every monomial.
    pub fn mirrored(&self) -> Circuit {
        let gates = self
            .gates
            .iter()
            .map(|g| match g {
                Gate::Mul(l, r) => Gate::Mul(*r, *l),
                other => other.clone(),
            })
            .collect();
        let c = Circuit::new(self.field, self.num_vars, gates, self.output).expect("mirror keeps validity");
        match &self.degrees {
            Some(d) => c.with_degrees(d.clone()).expect("mirror keeps degrees"),
            None => c,
        }
    }

    fn binary(&self, other: &Circuit, op: impl FnOnce(&mut CircuitBuilder, GateId, GateId) -> GateId) -> Circuit {
        assert_eq!(self.field, other.field, "circuits over different fields");
        let mut b = CircuitBuilder::new(self.field, self.num_vars.max(other.num_vars));
        let x = b.import(self);
        let y = b.import(other);
        let root = op(&mut b, x, y);
        b.extract(root)
    }

    /// The sum `self + other`.
    pub fn plus(&self, other: &Circuit) -> Circuit {
        self.binary(other, |b, x, y| b.add([x, y]))
    }

    /// The difference `self - other`.
    pub fn minus(&self, other: &Circuit) -> Circuit {
        self.binary(other, |b, x, y| b.sub(x, y))
    }

    /// The ordered product `(self · other)`.
    pub fn times(&self, other: &Circuit) -> Circuit {
        self.binary(other, |b, x, y| b.mul(x, y))
    }

    pub fn scaled(&self, s: &Scalar) -> Circuit {
        let mut b = CircuitBuilder::new(self.field, self.num_vars);
        let x = b.import(self);
        let root = b.scale(s, x);
        b.extract(root)
    }

    /// Evaluates the circuit at scalar points with the ordinary (commutative,
    /// associative) product of the field. Only a sanity helper.
    pub fn evaluate_scalar(&self, point: &[Scalar]) -> Scalar {
        let mut vals: Vec<Scalar> = Vec::with_capacity(self.gates.len());
        for gate in &self.gates {
            let v = match gate {
                Gate::Input(v) => point[v.index() - 1].clone(),
                Gate::Const(s) => s.clone(),
                Gate::Mul(l, r) => &vals[*l] * &vals[*r],
                Gate::Add(c) => c.iter().fold(self.field.zero(), |acc, &k| &acc + &vals[k]),
            };
            vals.push(v);
        }
        vals[self.output].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn validation_rejects_each_violation() {
        let x = || Gate::Input(VarId::new(1));
        assert_eq!(Circuit::new(q(), 1, vec![], 0), Err(ValidationError::Empty));
        assert_eq!(
            Circuit::new(q(), 1, vec![x(), Gate::Mul(0, 1)], 1),
            Err(ValidationError::ForwardReference { gate: 1, target: 1 })
        );
        assert_eq!(
            Circuit::new(q(), 1, vec![x(), Gate::Add(vec![0, 2])], 1),
            Err(ValidationError::ForwardReference { gate: 1, target: 2 })
        );
        assert_eq!(
            Circuit::new(q(), 1, vec![Gate::Input(VarId::new(2))], 0),
            Err(ValidationError::VariableOutOfRange { gate: 0, index: 2, num_vars: 1 })
        );
        assert_eq!(Circuit::new(q(), 1, vec![x(), Gate::Add(vec![])], 1), Err(ValidationError::EmptyAdd(1)));
        let f5 = FieldSpec::prime(5).unwrap();
        assert!(matches!(
            Circuit::new(q(), 1, vec![Gate::Const(f5.one())], 0),
            Err(ValidationError::FieldMismatch { .. })
        ));
        assert_eq!(Circuit::new(q(), 1, vec![x()], 3), Err(ValidationError::MissingOutput(3)));
    }

    #[test]
    fn degree_annotation_is_checked() {
        let c = Circuit::new(q(), 1, vec![Gate::Input(VarId::new(1)), Gate::Mul(0, 0)], 1).unwrap();
        assert!(c.clone().with_degrees(vec![1, 2]).is_ok());
        assert_eq!(c.clone().with_degrees(vec![1, 1]), Err(ValidationError::BadDegreeAnnotation(1)));
        assert_eq!(c.homogeneous_degrees(), Some(vec![1, 2]));
        let inhom =
            Circuit::new(q(), 1, vec![Gate::Input(VarId::new(1)), Gate::Mul(0, 0), Gate::Add(vec![0, 1])], 2).unwrap();
        assert_eq!(inhom.homogeneous_degrees(), None);
        assert_eq!(inhom.degree_bound(), 2);
    }

    #[test]
    fn add_children_are_sorted() {
        let c = Circuit::new(
            q(),
            2,
            vec![Gate::Input(VarId::new(1)), Gate::Input(VarId::new(2)), Gate::Add(vec![1, 0])],
            2,
        )
        .unwrap();
        assert_eq!(c.gate(2), &Gate::Add(vec![0, 1]));
    }
}
