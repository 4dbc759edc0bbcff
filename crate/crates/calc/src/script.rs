//! Parsed scripts: resolved declarations and the command list.

use std::collections::BTreeMap;

use arthur_core::exms::ExtMultiSegment;
use arthur_core::gl::{DerivativeSymbol, Ladder};
use arthur_core::{ArthurParam, CuspidalLabel, EssSpeh, GroupKind, Segment, UEssMatrix};
use serde::Serialize;

/// A problem attached to a source position (1-based line and column).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: &'static str,
    pub line: usize,
    pub col: usize,
    pub message: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub expected: Vec<String>,
}

impl Diagnostic {
    pub fn error(line: usize, col: usize, message: impl Into<String>) -> Self {
        Diagnostic { severity: "error", line, col, message: message.into(), expected: Vec::new() }
    }
}

/// A command with every name resolved to its value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Validate(ExtMultiSegment),
    Standardize(ExtMultiSegment),
    Rep(ExtMultiSegment),
    Bruteforce(ExtMultiSegment),
    Atobe(ExtMultiSegment),
    Nec(ExtMultiSegment),
    Reorder(ExtMultiSegment, CuspidalLabel, usize),
    Connected(ExtMultiSegment, CuspidalLabel, usize, usize),
    Orbit(ExtMultiSegment, CuspidalLabel),
    Dual(ExtMultiSegment),
    Deform(ExtMultiSegment, CuspidalLabel, usize),
    Langlands(ExtMultiSegment),
    Packet(ArthurParam),
    Parity(ArthurParam),
    NuSet(ExtMultiSegment, EssSpeh),
    Induce(ExtMultiSegment, Vec<EssSpeh>),
    Adjacent(ExtMultiSegment, Vec<EssSpeh>),
    Irr(ExtMultiSegment, Vec<EssSpeh>, BTreeMap<usize, bool>),
    Tadic(EssSpeh, EssSpeh),
    Matrix(EssSpeh),
    Classify(EssSpeh),
    Contragredient(EssSpeh),
    FromMatrix(CuspidalLabel, UEssMatrix),
    Linked(Segment, Segment),
    Lcrc(Segment, Vec<Segment>),
    Z01(EssSpeh),
    Mstar(Ladder),
    Mustar(Ladder),
    MstarFull(Ladder),
    Deriv(Ladder, DerivativeSymbol),
    MDeriv(Ladder, DerivativeSymbol),
    Chain(Ladder, EssSpeh),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StatementKind {
    Declaration,
    Command(Command),
    /// A statement that failed to parse or resolve.
    Invalid(Diagnostic),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Statement {
    pub line: usize,
    pub col: usize,
    /// Source text of the statement with whitespace runs collapsed.
    pub text: String,
    pub kind: StatementKind,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub group: Option<GroupKind>,
    pub labels: BTreeMap<String, CuspidalLabel>,
    pub exms: BTreeMap<String, ExtMultiSegment>,
    pub spehs: BTreeMap<String, EssSpeh>,
    pub statements: Vec<Statement>,
}

impl Script {
    pub fn is_empty(&self) -> bool {
        self.group.is_none() && self.labels.is_empty() && self.statements.is_empty()
    }

    pub fn diagnostics(&self) -> impl Iterator<Item = &Diagnostic> {
        self.statements.iter().filter_map(|s| match &s.kind {
            StatementKind::Invalid(d) => Some(d),
            _ => None,
        })
    }

    pub fn commands(&self) -> impl Iterator<Item = &Command> {
        self.statements.iter().filter_map(|s| match &s.kind {
            StatementKind::Command(c) => Some(c),
            _ => None,
        })
    }
}
