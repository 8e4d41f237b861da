//! Problem files, the demo catalog, and the commands behind the binary.

mod fuzz;
mod problem;
mod report;

use std::fmt;
use std::str::FromStr;

pub use fuzz::{corpus, run_fuzz, sample_q0};
pub use problem::ProblemFile;
pub use report::Report;

use crate::algebra::StructureAlgebra;
use crate::derlie::{dual_number_check, lie_algebra};
use crate::descent::{build_twisted_form, validate_cocycle};
use crate::dfield::{Field, RatFunc, RationalFunctions, Rationals};
use crate::error::{Error, Result};
use crate::exactla::affine_equal;
use crate::extend::{cross_validate, formula_extension_space, verify_derivation, ExtensionProblem};

/// Commands that act on a problem file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Lie,
    Validate,
    Twist,
    Extend,
    Crosscheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Lie => "lie",
            Command::Validate => "validate",
            Command::Twist => "twist",
            Command::Extend => "extend",
            Command::Crosscheck => "crosscheck",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "lie" => Command::Lie,
            "validate" => Command::Validate,
            "twist" => Command::Twist,
            "extend" => Command::Extend,
            "crosscheck" => Command::Crosscheck,
            _ => return Err(Error::Usage(format!("unknown command `{s}`"))),
        })
    }
}

const DEMOS: &[(&str, &str)] = &[
    ("etale-trivial", include_str!("../../demos/etale-trivial.twd")),
    ("etale-quadratic", include_str!("../../demos/etale-quadratic.twd")),
    ("matrix-trivial", include_str!("../../demos/matrix-trivial.twd")),
    ("quaternion-t-minus1", include_str!("../../demos/quaternion-t-minus1.twd")),
    ("dual-numbers", include_str!("../../demos/dual-numbers.twd")),
];

pub fn demo_names() -> impl Iterator<Item = &'static str> {
    DEMOS.iter().map(|(n, _)| *n)
}

pub fn demo_source(name: &str) -> Option<&'static str> {
    DEMOS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// A full invocation of the tool.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Invocation {
    Problem { command: Command, text: String },
    Demo(String),
    Fuzz { n: usize, seed: u64 },
}

/// Runs an invocation. `Err` means bad input (exit status 2); check
/// failures are report content (exit status 1).
pub fn run(inv: &Invocation) -> Result<Report> {
    match inv {
        Invocation::Problem { command, text } => {
            run_problem(*command, &ProblemFile::parse(text)?, Report::new(command.name()))
        }
        Invocation::Demo(name) => run_demo(name),
        Invocation::Fuzz { n, seed } => Ok(run_fuzz(*n, *seed)),
    }
}

pub fn run_demo(name: &str) -> Result<Report> {
    let text = demo_source(name).ok_or_else(|| {
        let known: Vec<_> = demo_names().collect();
        Error::Usage(format!("unknown demo `{name}` (known: {})", known.join(", ")))
    })?;
    let problem = ProblemFile::parse(text)?;
    run_problem(Command::Crosscheck, &problem, Report::new(format!("demo {name}")))
}

/// Errors that mean the data is well-formed but fails a mathematical check.
fn is_check_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidCocycle(_) | Error::NotInvariant(_) | Error::NonRational { .. } | Error::NotInvertible
    )
}

pub fn run_problem(command: Command, p: &ProblemFile, mut r: Report) -> Result<Report> {
    match command {
        Command::Lie => lie(p, &mut r)?,
        Command::Validate => validate(p, &mut r)?,
        Command::Twist => {
            let cd = p.cocycle()?;
            match build_twisted_form(p.algebra()?, &cd) {
                Ok(t) => twisted_constants(&t.algebra, &mut r),
                Err(e) if is_check_failure(&e) => {
                    r.line(format!("error: {e}"));
                    r.check("twisted form", false);
                }
                Err(e) => return Err(e),
            }
        }
        Command::Extend | Command::Crosscheck => {
            let problem = match ExtensionProblem::new(p.algebra()?.clone(), p.cocycle()?) {
                Ok(x) => x,
                Err(e) if is_check_failure(&e) => {
                    r.line(format!("error: {e}"));
                    r.check("twisted form", false);
                    return Ok(r);
                }
                Err(e) => return Err(e),
            };
            extend(&problem, command == Command::Crosscheck, &mut r);
        }
    }
    Ok(r)
}

fn lie(p: &ProblemFile, r: &mut Report) -> Result<()> {
    let q = Rationals;
    let a = p.algebra()?;
    r.line(format!("algebra dimension: {}", a.dim()));
    r.check("algebra axioms", a.validate(&q).passed());
    let g = lie_algebra(&q, a);
    r.space(&q, "lie algebra", &g);
    r.check(
        "basis passes dual-number check",
        g.basis().iter().all(|m| dual_number_check(&q, a, m)),
    );
    Ok(())
}

fn validate(p: &ProblemFile, r: &mut Report) -> Result<()> {
    let cd = p.cocycle()?;
    let a_e = p.algebra()?.scalar_extend(cd.field());
    let report = validate_cocycle(&a_e, &cd)?;
    r.line(format!("automorphisms: {}", cd.field().automorphisms().len()));
    for s in &report.non_automorphisms {
        r.line(format!("F_{s} is not an algebra automorphism"));
    }
    for (s, t) in &report.identity_failures {
        r.line(format!("cocycle identity fails for ({s}, {t})"));
    }
    r.check("F_sigma are algebra automorphisms", report.non_automorphisms.is_empty());
    r.check("cocycle identity", report.identity_failures.is_empty());
    r.check("F_id is the identity", report.identity_is_trivial);
    Ok(())
}

fn twisted_constants(b: &StructureAlgebra<RatFunc>, r: &mut Report) {
    let f = RationalFunctions;
    let n = b.dim();
    let vec = |v: &[RatFunc]| v.iter().map(|x| f.render(x)).collect::<Vec<_>>().join(", ");
    r.line("twisted form:");
    r.line(format!("  unit = [{}]", vec(b.unit())));
    for i in 0..n {
        for j in 0..n {
            let prod = b.product_of_basis(i, j);
            if prod.iter().any(|x| !f.is_zero(x)) {
                r.line(format!("  w{}*w{} = [{}]", i + 1, j + 1, vec(prod)));
            }
        }
    }
    r.check("twisted algebra axioms", b.validate(&f).passed());
}

fn extend(p: &ExtensionProblem, cross: bool, r: &mut Report) {
    let f = RationalFunctions;
    twisted_constants(p.twisted(), r);
    let (formula, direct) = if cross {
        let c = cross_validate(p);
        (c.formula, Some((c.direct, c.derivations_b)))
    } else {
        (formula_extension_space(p), None)
    };
    r.space(&f, "extending derivations (formula)", &formula);
    if !r.check("extending derivation exists", !formula.is_empty()) {
        r.line("violation: no extending derivation found; a valid twisted form always has one, so the input or a convention is wrong");
    }
    if let Some(point) = formula.point() {
        let b = p.twisted();
        r.check("point satisfies Leibniz", verify_derivation(b, point));
        r.check(
            "point + basis satisfy Leibniz",
            formula.basis().iter().all(|h| verify_derivation(b, &point.add(&f, h))),
        );
    }
    if let Some((direct, der_b)) = direct {
        r.space(&f, "extending derivations (direct)", &direct);
        r.check("formula space equals direct space", affine_equal(&f, &formula, &direct));
        r.check(
            "homogeneous part equals Der(B)",
            !formula.is_empty() && affine_equal(&f, &formula.homogeneous(&f), &der_b),
        );
    }
}
