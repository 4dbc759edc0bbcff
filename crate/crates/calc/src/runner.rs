//! Executes parsed scripts, one [`ResultDocument`] per command.

use arthur_core::exms::{self, ExtMultiSegment};
use arthur_core::gl::{self, DerivGrid, Derivative, Ladder};
use arthur_core::induction::{self, SpehFactor};
use arthur_core::{component_group_order, good_parity, EssSpeh, Error, FormalSum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::encode;
use crate::script::{Command, Diagnostic, Script, StatementKind};

/// Version tag carried by every result document.
pub const SCHEMA: &str = "arthur-calc/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

/// The outcome of one statement. Fields serialize in declaration order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultDocument {
    pub schema: &'static str,
    pub line: usize,
    pub command: String,
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<Diagnostic>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    /// State bound for the reorder searches.
    pub max_states: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { max_states: exms::DEFAULT_MAX_STATES }
    }
}

/// Runs every command of `script` in order. Invalid statements produce error
/// documents and do not stop later commands; declarations produce nothing.
pub fn run(script: &Script, opts: &RunOptions) -> Vec<ResultDocument> {
    let mut out = Vec::new();
    for st in &script.statements {
        let doc = |status, payload, diagnostics| ResultDocument {
            schema: SCHEMA,
            line: st.line,
            command: st.text.clone(),
            status,
            payload,
            diagnostics,
        };
        match &st.kind {
            StatementKind::Declaration => {}
            StatementKind::Invalid(d) => out.push(doc(Status::Error, Value::Null, vec![d.clone()])),
            StatementKind::Command(c) => match execute(c, opts) {
                Ok(payload) => out.push(doc(Status::Ok, payload, Vec::new())),
                Err(e) => {
                    let d = Diagnostic::error(st.line, st.col, e.to_string());
                    out.push(doc(Status::Error, Value::Null, vec![d]));
                }
            },
        }
    }
    out
}

pub fn has_errors(docs: &[ResultDocument]) -> bool {
    docs.iter().any(|d| d.status == Status::Error)
}

/// One document as pretty-printed JSON.
pub fn render(doc: &ResultDocument) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize")
}

/// All documents as a pretty-printed JSON array with a trailing newline.
pub fn render_all(docs: &[ResultDocument]) -> String {
    let mut s = serde_json::to_string_pretty(docs).expect("documents serialize");
    s.push('\n');
    s
}

/// One line per document: status, echo and compact payload or first diagnostic.
pub fn render_text(docs: &[ResultDocument]) -> String {
    let mut s = String::new();
    for d in docs {
        let body = match d.status {
            Status::Ok => d.payload.to_string(),
            Status::Error => d
                .diagnostics
                .first()
                .map(|x| format!("{}:{}: {}", x.line, x.col, x.message))
                .unwrap_or_default(),
        };
        let tag = if d.status == Status::Ok { "ok" } else { "error" };
        s.push_str(&format!("[{tag}] line {}: {}\n    {body}\n", d.line, d.command));
    }
    s
}

fn factor(u: &EssSpeh) -> Result<SpehFactor, Error> {
    if u.s() != 0 {
        return Err(Error::Precondition("induction needs unitary Speh factors (s = 0)"));
    }
    SpehFactor::new(u.rho().clone(), u.a(), u.b())
}

fn factors(us: &[EssSpeh]) -> Result<Vec<SpehFactor>, Error> {
    us.iter().map(factor).collect()
}

fn exms_list(list: &[ExtMultiSegment]) -> Value {
    Value::Array(list.iter().map(encode::exms).collect())
}

fn derivative(d: &Derivative) -> Value {
    json!({"k": d.k, "result": encode::ladder_sum(&d.result)})
}

fn execute(c: &Command, opts: &RunOptions) -> Result<Value, Error> {
    use Command as C;
    Ok(match c {
        C::Validate(s) => json!({"group": s.group.to_string(), "report": encode::validation(&s.validate())}),
        C::Standardize(s) => json!({"standard": encode::exms(&exms::standard_form(s)?)}),
        C::Rep(s) => json!({"inRep": exms::in_srep(s)?}),
        C::Bruteforce(s) => json!({"inRep": exms::in_rep_bruteforce(s, opts.max_states)?}),
        C::Atobe(s) => {
            let e = exms::to_atobe(s)?;
            json!({"symbol": encode::atobe(&e), "signCondition": exms::atobe_sign_condition(&e)})
        }
        C::Nec(s) => {
            let cases = match exms::nec_atobe_cases(s) {
                Ok(b) => json!(b),
                Err(Error::NegativeLowerEnd | Error::UncoveredConfiguration { .. }) => Value::Null,
                Err(e) => return Err(e),
            };
            json!({"necessary": exms::necessary_condition(s), "atobeCases": cases})
        }
        C::Reorder(s, rho, i) => json!({"result": encode::exms(&exms::reorder(s, rho, *i)?)}),
        C::Connected(s, rho, i, j) => {
            json!({"connected": exms::connected(s, rho, *i, *j)?, "delta": exms::delta(s, rho, *i, *j)?})
        }
        C::Orbit(s, rho) => {
            let orbit = exms::reorder_orbit(s, rho, opts.max_states)?;
            let states: Vec<Value> =
                orbit.into_iter().map(|p| encode::exms(&ExtMultiSegment::new(s.group).with_part(rho.clone(), p))).collect();
            json!({"size": states.len(), "states": states})
        }
        C::Dual(s) => {
            let literal = exms::aubert_dual_literal(s)?;
            json!({
                "dual": encode::exms(&exms::aubert_dual(s)?),
                "literal": encode::exms(&literal),
                "literalSignCondition": literal.validate().sign_condition,
            })
        }
        C::Deform(s, rho, k) => {
            let d = exms::deform(s, rho, *k)?;
            json!({"result": encode::exms(&d), "psi": encode::psi(&d.psi()?), "dimension": d.dimension()?})
        }
        C::Langlands(s) => encode::langlands(&exms::langlands_first_case(s)?),
        C::Packet(psi) => {
            let members = exms::enumerate_packet(psi)?;
            json!({"count": members.len(), "componentGroupOrder": component_group_order(psi)?, "members": exms_list(&members)})
        }
        C::Parity(psi) => {
            let order = component_group_order(psi).ok();
            json!({"goodParity": good_parity(psi), "componentGroupOrder": order, "dimension": psi.dimension()})
        }
        C::NuSet(s, u) => json!({"nu": induction::nu_set_single(&exms::standard_form(s)?, &factor(u)?)?}),
        C::Induce(s, us) => {
            let s = exms::standard_form(s)?;
            let fs = factors(us)?;
            let constituents = exms_list(&induction::decompose_multi(&s, &fs)?);
            if fs.len() == 1 {
                json!({"constituents": constituents, "nu": induction::nu_set_single(&s, &fs[0])?})
            } else {
                json!({"constituents": constituents, "tuples": induction::nu_tuples_multi(&s, &fs)?})
            }
        }
        C::Adjacent(s, us) => {
            json!({"adjacent": induction::adjacent_pair_exists(&exms::standard_form(s)?, &factors(us)?)?})
        }
        C::Irr(s, us, asserted) => {
            encode::irr_report(&induction::main_irreducibility(us, &exms::standard_form(s)?, asserted)?)
        }
        C::Tadic(u, v) => json!({"reducible": gl::tadic_reducible(u, v)}),
        C::Matrix(u) => json!({"matrix": encode::matrix(&u.to_matrix())}),
        C::Classify(u) => json!({"type": u.classify()?.to_string()}),
        C::Contragredient(u) => json!({"result": encode::speh(&u.contragredient())}),
        C::FromMatrix(rho, m) => json!({"result": encode::speh(&EssSpeh::from_matrix(rho.clone(), m)?)}),
        C::Linked(d1, d2) => json!({
            "linked": gl::linked(d1, d2),
            "firstPrecedesSecond": gl::precedes(d1, d2),
            "secondPrecedesFirst": gl::precedes(d2, d1),
        }),
        C::Lcrc(d, m) => json!({"lc": gl::lc(d, m), "rc": gl::rc(d, m), "irreducible": gl::lc_rc_irreducible(d, m)}),
        C::Z01(u) => {
            let m: Vec<Value> = gl::z01_first_block_dual(u)?.iter().map(encode::segment).collect();
            json!({"dualMultisegment": m, "irreducible": gl::z01_first_block_irreducible(u)?})
        }
        C::Mstar(l) => gl_terms(&gl::mstar_ladder(l), l),
        C::Mustar(l) => gl_terms(&gl::mu_star_gl_terms(l), l),
        C::MstarFull(l) => gl_terms(&gl::mstar_full(l), l),
        C::Deriv(l, sigma) => derivative(&gl::max_left_derivative(l, sigma)?),
        C::MDeriv(l, sigma) => derivative(&gl::max_m_derivative(l, sigma)?),
        C::Chain(l, u) => {
            let r = gl::derivative_chain(&FormalSum::single(l.clone()), &DerivGrid::for_speh(u)?)?;
            json!({"mults": r.mults, "result": encode::ladder_sum(&r.result)})
        }
    })
}

fn gl_terms(sum: &FormalSum<gl::GLTerm>, l: &Ladder) -> Value {
    let degrees_ok = sum.terms().all(|t| t.left_rank() + t.right.rank() == l.rank());
    json!({"terms": encode::gl_terms(sum), "count": sum.len(), "degreeConserved": degrees_ok})
}
