//! The line-oriented circuit file format.
//!
//! ```text
//! field Q            # or: field Fp 5
//! vars 2
//! g0 = var x1
//! g1 = const 3/2
//! g2 = mul g0 g1
//! g3 = add g0 g2
//! output g3
//! ```

use std::collections::HashMap;
use std::fmt;

use super::{Circuit, CircuitError, Gate, GateId, ValidationError, VarId};
use crate::field::FieldSpec;

fn parse_err(line: usize, message: impl Into<String>) -> CircuitError {
    CircuitError::Parse { line, message: message.into() }
}

/// Parses and validates a circuit file.
pub fn parse_circuit(text: &str) -> Result<Circuit, CircuitError> {
    let mut field: Option<FieldSpec> = None;
    let mut num_vars: Option<usize> = None;
    let mut names: HashMap<String, GateId> = HashMap::new();
    let mut gates: Vec<Gate> = Vec::new();
    let mut output: Option<GateId> = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if output.is_some() {
            return Err(parse_err(line, "content after the output line"));
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        match words[0] {
            "field" => {
                if field.is_some() {
                    return Err(parse_err(line, "field declared twice"));
                }
                field = Some(match &words[1..] {
                    ["Q"] => FieldSpec::Rationals,
                    ["Fp", p] => {
                        let p: u64 = p.parse().map_err(|_| parse_err(line, format!("bad modulus `{p}`")))?;
                        FieldSpec::prime(p).map_err(|e| parse_err(line, e.to_string()))?
                    }
                    _ => return Err(parse_err(line, "expected `field Q` or `field Fp <p>`")),
                });
            }
            "vars" => {
                if field.is_none() {
                    return Err(parse_err(line, "`vars` must follow the field line"));
                }
                if num_vars.is_some() {
                    return Err(parse_err(line, "vars declared twice"));
                }
                let [_, n] = words[..] else {
                    return Err(parse_err(line, "expected `vars <n>`"));
                };
                num_vars = Some(n.parse().map_err(|_| parse_err(line, format!("bad variable count `{n}`")))?);
            }
            "output" => {
                let [_, name] = words[..] else {
                    return Err(parse_err(line, "expected `output <id>`"));
                };
                let id = lookup(&names, name, line)?;
                output = Some(id);
            }
            _ => {
                let (Some(f), Some(n)) = (field, num_vars) else {
                    return Err(parse_err(line, "gate before the field and vars lines"));
                };
                if words.len() < 3 || words[1] != "=" {
                    return Err(parse_err(line, format!("cannot parse `{content}`")));
                }
                let name = words[0];
                if names.contains_key(name) {
                    return Err(ValidationError::DuplicateGate { line, name: name.to_string() }.into());
                }
                let args = &words[3..];
                let gate = match words[2] {
                    "var" => {
                        let [v] = args else {
                            return Err(arity(line, "var", 1, args.len()));
                        };
                        let index: usize = v
                            .strip_prefix('x')
                            .and_then(|d| d.parse().ok())
                            .filter(|&i| i >= 1)
                            .ok_or_else(|| parse_err(line, format!("bad variable `{v}`")))?;
                        if index > n {
                            return Err(
                                ValidationError::VariableOutOfRange { gate: gates.len(), index, num_vars: n }.into()
                            );
                        }
                        Gate::Input(VarId::new(index))
                    }
                    "const" => {
                        let [s] = args else {
                            return Err(arity(line, "const", 1, args.len()));
                        };
                        Gate::Const(f.parse_scalar(s).map_err(|e| parse_err(line, e.to_string()))?)
                    }
                    "mul" => {
                        let [l, r] = args else {
                            return Err(arity(line, "mul", 2, args.len()));
                        };
                        Gate::Mul(lookup(&names, l, line)?, lookup(&names, r, line)?)
                    }
                    "add" => {
                        if args.is_empty() {
                            return Err(ValidationError::EmptyAdd(gates.len()).into());
                        }
                        let kids = args.iter().map(|a| lookup(&names, a, line)).collect::<Result<_, _>>()?;
                        Gate::Add(kids)
                    }
                    other => return Err(parse_err(line, format!("unknown gate kind `{other}`"))),
                };
                names.insert(name.to_string(), gates.len());
                gates.push(gate);
            }
        }
    }

    let field = field.ok_or_else(|| parse_err(last_line.max(1), "missing field line"))?;
    let num_vars = num_vars.ok_or_else(|| parse_err(last_line.max(1), "missing vars line"))?;
    let output = output.ok_or_else(|| parse_err(last_line.max(1), "missing output line"))?;
    Ok(Circuit::new(field, num_vars, gates, output)?.annotate_degrees())
}

fn lookup(names: &HashMap<String, GateId>, name: &str, line: usize) -> Result<GateId, CircuitError> {
    names.get(name).copied().ok_or_else(|| ValidationError::UndefinedGate { line, name: name.to_string() }.into())
}

fn arity(line: usize, op: &str, expected: usize, found: usize) -> CircuitError {
    ValidationError::BadArity { line, op: op.to_string(), expected, found }.into()
}

/// Canonical serialization: gates `g0, g1, …` in stored order.
impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field() {
            FieldSpec::Rationals => writeln!(f, "field Q")?,
            FieldSpec::PrimeField(p) => writeln!(f, "field Fp {p}")?,
        }
        writeln!(f, "vars {}", self.num_vars())?;
        for (id, gate) in self.gates().iter().enumerate() {
            match gate {
                Gate::Input(v) => writeln!(f, "g{id} = var {v}")?,
                Gate::Const(s) => writeln!(f, "g{id} = const {s}")?,
                Gate::Mul(l, r) => writeln!(f, "g{id} = mul g{l} g{r}")?,
                Gate::Add(children) => {
                    write!(f, "g{id} = add")?;
                    for k in children {
                        write!(f, " g{k}")?;
                    }
                    writeln!(f)?;
                }
            }
        }
        writeln!(f, "output g{}", self.output())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_square() {
        let c = parse_circuit("field Q\nvars 2\ng0 = var x1\ng1 = mul g0 g0\noutput g1\n").unwrap();
        assert_eq!(c.gates(), &[Gate::Input(VarId::new(1)), Gate::Mul(0, 0)]);
        assert_eq!(c.output(), 1);
        assert_eq!(c.homogeneous_degree(), Some(2));
    }

    #[test]
    fn self_reference_is_a_validation_error() {
        let err = parse_circuit("field Q\nvars 1\ng0 = var x1\ng1 = mul g1 g0\noutput g1\n").unwrap_err();
        assert!(matches!(err, CircuitError::Validation(ValidationError::UndefinedGate { line: 4, .. })));
    }

    #[test]
    fn constants_are_reduced() {
        let c = parse_circuit("field Fp 5\nvars 1\ng0 = const 7\noutput g0\n").unwrap();
        assert_eq!(c.as_constant().unwrap().to_string(), "2");
        let c = parse_circuit("field Fp 5\nvars 1\ng0 = const -1/2\noutput g0\n").unwrap();
        assert_eq!(c.as_constant().unwrap().to_string(), "2");
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# header\nfield Q   # rationals\n\nvars 1\nc = const 3/6\noutput c # done\n";
        let c = parse_circuit(text).unwrap();
        assert_eq!(c.to_string(), "field Q\nvars 1\ng0 = const 1/2\noutput g0\n");
    }

    #[test]
    fn errors_carry_lines() {
        let cases = [
            ("vars 1\n", 1),
            ("field R\n", 1),
            ("field Fp 6\n", 1),
            ("field Q\nvars 1\ng0 = var y1\noutput g0\n", 3),
            ("field Q\nvars 1\ng0 = const abc\noutput g0\n", 3),
            ("field Q\nvars 1\ng0 = foo\noutput g0\n", 3),
            ("field Q\nvars 1\ng0 = var x1\n", 3),
            ("field Q\nvars 1\ng0 = var x1\noutput g0\ng1 = var x1\n", 5),
        ];
        for (text, want) in cases {
            match parse_circuit(text) {
                Err(CircuitError::Parse { line, .. }) => assert_eq!(line, want, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn validation_failures() {
        let dup = parse_circuit("field Q\nvars 1\ng0 = var x1\ng0 = var x1\noutput g0\n");
        assert!(matches!(dup, Err(CircuitError::Validation(ValidationError::DuplicateGate { .. }))));
        let arity = parse_circuit("field Q\nvars 1\ng0 = var x1\ng1 = mul g0\noutput g1\n");
        assert!(matches!(arity, Err(CircuitError::Validation(ValidationError::BadArity { .. }))));
        let range = parse_circuit("field Q\nvars 1\ng0 = var x2\noutput g0\n");
        assert!(matches!(range, Err(CircuitError::Validation(ValidationError::VariableOutOfRange { .. }))));
        let empty = parse_circuit("field Q\nvars 1\ng0 = add\noutput g0\n");
        assert!(matches!(empty, Err(CircuitError::Validation(ValidationError::EmptyAdd(_)))));
    }

    #[test]
    fn printing_round_trips() {
        let text = "field Fp 5\nvars 2\ng0 = var x1\ng1 = var x2\ng2 = const 4\ng3 = mul g0 g1\ng4 = add g2 g3 g0\noutput g4\n";
        let c = parse_circuit(text).unwrap();
        let again = parse_circuit(&c.to_string()).unwrap();
        assert_eq!(c, again);
        assert_eq!(c.gate(4), &Gate::Add(vec![0, 2, 3]));
    }
}
