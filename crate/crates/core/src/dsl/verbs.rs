//! Every command the DSL accepts, with the kinds of its arguments.

/// What a positional argument must refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArgKind {
    Poisson,
    /// A Poisson structure or a declared bivector.
    Bivector,
    /// A scalar name, a number or a parenthesized expression.
    Scalar,
    /// A scalar or a 1-form, by name or expression.
    Operand,
    /// Any declared scalar, form or multivector.
    Tensor,
    Form,
    /// A declared vector field (multivector of degree 1).
    Field,
    Map,
    Cobracket,
    RMatrix,
    /// A free word such as a suite name.
    Word,
    /// Any declared name.
    Declared,
}

pub struct VerbSig {
    pub name: &'static str,
    pub args: &'static [ArgKind],
    pub options: &'static [&'static str],
    pub required: &'static [&'static str],
    pub summary: &'static str,
}

use ArgKind::*;

const RUN_OPTS: &[&str] = &["seed", "trials", "dim", "degree"];

pub const VERBS: &[VerbSig] = &[
    VerbSig {
        name: "jacobi",
        args: &[Bivector],
        options: &[],
        required: &[],
        summary: "both Jacobi criteria, with a witness on failure",
    },
    VerbSig {
        name: "bracket",
        args: &[Poisson, Operand, Operand],
        options: &[],
        required: &[],
        summary: "bracket of two functions or two 1-forms",
    },
    VerbSig { name: "ham", args: &[Poisson, Scalar], options: &[], required: &[], summary: "Hamiltonian vector field" },
    VerbSig {
        name: "tangent-poisson",
        args: &[Poisson],
        options: &[],
        required: &[],
        summary: "tangent Poisson structure",
    },
    VerbSig {
        name: "casimir",
        args: &[Poisson, Scalar],
        options: &[],
        required: &[],
        summary: "Casimir test, with both lifts",
    },
    VerbSig {
        name: "rank",
        args: &[Poisson],
        options: &["at"],
        required: &["at"],
        summary: "rank at a rational point",
    },
    VerbSig {
        name: "linearize",
        args: &[Poisson],
        options: &["at"],
        required: &["at"],
        summary: "linear approximation at a singular point",
    },
    VerbSig {
        name: "canonical-field",
        args: &[Poisson, Field],
        options: &[],
        required: &[],
        summary: "whether a field's section is coisotropic",
    },
    VerbSig {
        name: "poisson-map",
        args: &[Map, Poisson, Poisson],
        options: &[],
        required: &[],
        summary: "whether a map is Poisson",
    },
    VerbSig { name: "dt", args: &[Tensor], options: &[], required: &[], summary: "tangent lift" },
    VerbSig { name: "vt", args: &[Tensor], options: &[], required: &[], summary: "vertical lift" },
    VerbSig { name: "it", args: &[Form], options: &[], required: &[], summary: "tangent contraction of a form" },
    VerbSig {
        name: "lift-complete",
        args: &[Field],
        options: &[],
        required: &[],
        summary: "complete lift of a vector field",
    },
    VerbSig {
        name: "lift-vertical",
        args: &[Field],
        options: &[],
        required: &[],
        summary: "vertical lift of a vector field",
    },
    VerbSig {
        name: "bialgebra validate",
        args: &[Cobracket],
        options: &[],
        required: &[],
        summary: "co-Jacobi and cocycle conditions",
    },
    VerbSig { name: "bialgebra dual", args: &[Cobracket], options: &[], required: &[], summary: "bracket on the dual" },
    VerbSig {
        name: "bialgebra tangent",
        args: &[Cobracket],
        options: &[],
        required: &[],
        summary: "tangent cobracket",
    },
    VerbSig {
        name: "rmatrix gybe",
        args: &[RMatrix],
        options: &[],
        required: &[],
        summary: "generalized Yang-Baxter condition",
    },
    VerbSig {
        name: "rmatrix lift",
        args: &[RMatrix],
        options: &[],
        required: &[],
        summary: "lift to the tangent algebra",
    },
    VerbSig {
        name: "rmatrix cobracket",
        args: &[RMatrix],
        options: &[],
        required: &[],
        summary: "coboundary cobracket",
    },
    VerbSig {
        name: "check-diagram",
        args: &[Word],
        options: RUN_OPTS,
        required: &[],
        summary: "one canonical-map diagram, randomized",
    },
    VerbSig {
        name: "verify",
        args: &[Word],
        options: RUN_OPTS,
        required: &[],
        summary: "a verification suite, or all",
    },
    VerbSig { name: "show", args: &[Declared], options: &[], required: &[], summary: "print a declared value" },
];

/// Verbs that other parts of the library advertise on the command line.
pub const ADVERTISED: &[&str] = &[
    "dt",
    "vt",
    "it",
    "lift-complete",
    "lift-vertical",
    "check-diagram",
    "jacobi",
    "bracket",
    "ham",
    "tangent-poisson",
    "casimir",
    "rank",
    "linearize",
    "canonical-field",
    "poisson-map",
    "bialgebra validate",
    "bialgebra dual",
    "bialgebra tangent",
    "rmatrix gybe",
    "rmatrix lift",
    "rmatrix cobracket",
    "verify",
];

pub fn lookup(name: &str) -> Option<&'static VerbSig> {
    VERBS.iter().find(|v| v.name == name)
}
