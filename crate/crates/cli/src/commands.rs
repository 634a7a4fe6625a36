//! Command dispatch and the exit-code contract.

use std::fmt;

use berline::{
    berezinian_class, characteristic_function, coboundary_solve_1, format_scalar,
    invertible_replacement, is_cocycle_1, modular_class_ruth, modular_class_vector,
    verify_chain_map, verify_complex, verify_line_rep, verify_ruth, verify_vector_rep, ArrowId,
    ClassReport, Cochain, FiniteGroupoid, Rational, RepUpToWeakHomotopy, Trivialization, VectorRep,
};

use crate::input::{InputDocument, Representation};
use crate::report::{raw_graded, Certificate, Obstruction, ReplacementOut, Report};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Validate,
    Cohomology,
    ModularClass,
    Berezinian { arrow: String },
    Replace { arrow: String },
    HomotopyCheck,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Cohomology => "cohomology",
            Command::ModularClass => "modular-class",
            Command::Berezinian { .. } => "berezinian",
            Command::Replace { .. } => "replace",
            Command::HomotopyCheck => "homotopy-check",
        }
    }

    fn arrow(&self) -> Option<&str> {
        match self {
            Command::Berezinian { arrow } | Command::Replace { arrow } => Some(arrow),
            _ => None,
        }
    }
}

/// Process exit status: 0 success, 1 a law or validation failure, 2 usage or schema error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    LawFailure = 1,
    Usage = 2,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}

/// The document lacks what the command needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn by_arrow(g: &FiniteGroupoid, c: &Cochain<Rational>) -> BTreeMap<String, String> {
    g.arrows()
        .map(|a| (g.arrow_name(a).to_string(), format_scalar(c.at_arrow(a))))
        .collect()
}

fn by_object(g: &FiniteGroupoid, c: &Cochain<Rational>) -> BTreeMap<String, String> {
    g.objects()
        .map(|x| (g.object_name(x).to_string(), format_scalar(c.at_object(x))))
        .collect()
}

fn record_class(report: &mut Report, g: &FiniteGroupoid, class: &ClassReport<Rational>) {
    report.cocycle = Some(by_arrow(g, &class.cocycle));
    report.class = Some(
        if class.is_coboundary {
            "trivial"
        } else {
            "nontrivial"
        }
        .into(),
    );
    report.witness = class.witness.as_ref().map(|w| by_object(g, w));
    report.invariant_rescaling = class.invariant_rescaling().map(|r| by_object(g, &r));
    report.obstructions = Some(
        class
            .obstructions
            .iter()
            .map(|(a, v)| Obstruction {
                arrow: g.arrow_name(*a).to_string(),
                value: format_scalar(v),
            })
            .collect(),
    );
}

/// Any representation, viewed on complexes: strict ones sit in degree 0.
fn on_complexes(rep: &Representation) -> RepUpToWeakHomotopy<Rational> {
    match rep {
        Representation::Homotopy(h) => h.clone(),
        Representation::Vector(v) => v.in_degree(0),
        Representation::Line(l) => {
            let g = l.groupoid().clone();
            let action = l
                .actions()
                .iter()
                .map(|v| berline::Matrix::scalar(1, v.clone()))
                .collect();
            VectorRep::new(g.clone(), vec![1; g.object_count()], action)
                .expect("one-dimensional")
                .in_degree(0)
        }
    }
}

fn require_rep<'a>(
    command: &Command,
    doc: &'a InputDocument,
) -> Result<&'a Representation, UsageError> {
    doc.rep.as_ref().ok_or_else(|| {
        UsageError(format!(
            "{} needs a rep section (present: {})",
            command.name(),
            doc.sections().into_iter().collect::<Vec<_>>().join(", ")
        ))
    })
}

fn require_arrow(doc: &InputDocument, name: &str) -> Result<ArrowId, UsageError> {
    doc.arrow(name)
        .ok_or_else(|| UsageError(format!("--arrow: unknown arrow {name:?}")))
}

/// Checks the groupoid, the fibers and the representation. Returns false on any violation.
fn validate_all(doc: &InputDocument, report: &mut Report) -> bool {
    report.absorb(&doc.groupoid.validate());
    if !report.valid {
        return false;
    }
    if let Some(fibers) = &doc.complex {
        for (x, c) in doc.groupoid.objects().zip(fibers) {
            for v in verify_complex(c).violations {
                report.violation(
                    "complex",
                    format!("object {}: {}", doc.groupoid.object_name(x), v.detail),
                );
            }
        }
    }
    if !report.valid {
        return false;
    }
    match &doc.rep {
        None => {}
        Some(Representation::Line(l)) => report.absorb(&verify_line_rep(l)),
        Some(Representation::Vector(v)) => report.absorb(&verify_vector_rep(v)),
        Some(Representation::Homotopy(h)) => report.absorb(&verify_ruth(h).report),
    }
    report.valid
}

fn sigma(doc: &InputDocument) -> Trivialization<Rational> {
    doc.sigma
        .clone()
        .unwrap_or_else(|| Trivialization::standard(doc.groupoid.object_count()))
}

fn exit_of(report: &Report) -> Exit {
    if report.valid {
        Exit::Success
    } else {
        Exit::LawFailure
    }
}

/// Runs one command. `input` is echoed into the report as given (callers pass the file's
/// base name so reports do not depend on where the file lives).
pub fn run(
    command: &Command,
    doc: &InputDocument,
    input: &str,
) -> Result<(Report, Exit), UsageError> {
    let mut report = Report::new(command.name(), input);
    report.arrow = command.arrow().map(str::to_string);
    report.representation = doc.rep.as_ref().map(|r| r.kind().to_string());
    let g = &doc.groupoid;

    match command {
        Command::Validate => {
            validate_all(doc, &mut report);
        }
        Command::Cohomology => {
            let phi = doc
                .cochain
                .as_ref()
                .ok_or_else(|| UsageError("cohomology needs a cochain section".into()))?;
            report.absorb(&g.validate());
            if report.valid {
                if !is_cocycle_1(g, phi) {
                    report.cocycle = Some(by_arrow(g, phi));
                    report.violation(
                        "cocycle",
                        "the supplied cochain is not closed under the coboundary",
                    );
                } else {
                    let class = coboundary_solve_1(g, phi).expect("closed cochain");
                    record_class(&mut report, g, &class);
                }
            }
        }
        Command::ModularClass => {
            let rep = require_rep(command, doc)?;
            if validate_all(doc, &mut report) {
                let sigma = sigma(doc);
                let class = match rep {
                    Representation::Line(l) => characteristic_function(l, &sigma)
                        .and_then(|phi| coboundary_solve_1(g, &phi)),
                    Representation::Vector(v) => modular_class_vector(v, &sigma),
                    Representation::Homotopy(h) => modular_class_ruth(h, &sigma),
                };
                match class {
                    Ok(class) => {
                        if matches!(rep, Representation::Homotopy(_)) {
                            report.berezinian = Some(by_arrow(g, &class.cocycle));
                        }
                        record_class(&mut report, g, &class);
                    }
                    Err(e) => report.violation("modular class", e.to_string()),
                }
            }
        }
        Command::Berezinian { arrow } | Command::Replace { arrow } => {
            let rep = require_rep(command, doc)?;
            let a = require_arrow(doc, arrow)?;
            report.absorb(&g.validate());
            if report.valid {
                let r = on_complexes(rep);
                let map = r.action(a);
                report.absorb(&verify_chain_map(map));
                if report.valid {
                    let sigma = sigma(doc);
                    let name = g.arrow_name(a).to_string();
                    if let Command::Berezinian { .. } = command {
                        match berezinian_class(
                            map,
                            &sigma.ber(g.source(a)),
                            &sigma.ber(g.target(a)),
                        ) {
                            Ok(v) => {
                                report.berezinian =
                                    Some(BTreeMap::from([(name, format_scalar(&v))]))
                            }
                            Err(e) => report.violation("berezinian", format!("arrow {name}: {e}")),
                        }
                    } else {
                        match invertible_replacement(map) {
                            Ok(rep) => {
                                report.replacement = Some(ReplacementOut {
                                    map: raw_graded(&rep.map.components()),
                                    homotopy: raw_graded(&rep.homotopy.components()),
                                })
                            }
                            Err(e) => report.violation("replacement", format!("arrow {name}: {e}")),
                        }
                    }
                }
            }
        }
        Command::HomotopyCheck => {
            let rep = require_rep(command, doc)?;
            report.absorb(&g.validate());
            if report.valid {
                let r = on_complexes(rep);
                let checked = verify_ruth(&r);
                report.absorb(&checked.report);
                report.certificates = Some(
                    checked
                        .certificates
                        .iter()
                        .map(|(&(a, b), omega)| Certificate {
                            pair: [g.arrow_name(a).to_string(), g.arrow_name(b).to_string()],
                            composite: g.arrow_name(g.mul(a, b)).to_string(),
                            homotopy: raw_graded(&omega.components()),
                        })
                        .collect(),
                );
            }
        }
    }
    let exit = exit_of(&report);
    Ok((report, exit))
}
