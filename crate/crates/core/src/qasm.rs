//! OpenQASM 2.0 subset reader and writer.
//!
//! Supported: the `OPENQASM 2.0;` header, optional `include` lines (ignored),
//! exactly one `qreg`, at most one `creg`, and `rz`/`sx`/`sxdg`/`x`/`cx`/
//! `barrier`/`measure` statements. Angle expressions may use literals, `pi`,
//! `+ - * /`, unary minus and parentheses. Anything else produces a
//! positioned diagnostic; the parser recovers at statement boundaries so one
//! pass reports every problem, and it never panics on arbitrary input.
//!
//! The writer emits angles with 17 significant digits so values survive a
//! round trip bit for bit. SX adjoints have no plain-QASM spelling: by
//! default they become the phase-equivalent triple `rz(pi); sx; rz(pi)`
//! preceded by a `// sxdg` marker comment that this parser folds back into a
//! single adjoint op (other tools simply run the triple); with
//! `extended_gates` they are written as `sxdg`.

use crate::circuit::{Circuit, GateKind, GateOp};
use std::f64::consts::PI;
use std::fmt;

/// A parse problem anchored to a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseDiagnostic {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, col {}: {}", self.line, self.col, self.message)
    }
}

/// Options for [`emit_qasm`].
#[derive(Clone, Copy, Debug, Default)]
pub struct EmitOptions {
    /// Emit `sxdg` directly instead of the marked `rz(pi); sx; rz(pi)`
    /// triple.
    pub extended_gates: bool,
}

// --- lexer -------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Number { value: f64, as_int: Option<u64> },
    Str(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Plus,
    Minus,
    Star,
    Slash,
    Arrow,
    /// The `// sxdg` marker comment.
    SxdgMarker,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str, diags: &mut Vec<ParseDiagnostic>) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);

    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else if c.is_some() {
                col += 1;
            }
            c
        }};
    }

    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                bump!();
            }
            '/' => {
                bump!();
                if chars.peek() == Some(&'/') {
                    bump!();
                    let mut comment = String::new();
                    while let Some(&c) = chars.peek() {
                        if c == '\n' {
                            break;
                        }
                        comment.push(c);
                        bump!();
                    }
                    if comment.trim() == "sxdg" {
                        tokens.push(Token { tok: Tok::SxdgMarker, line: tline, col: tcol });
                    }
                } else {
                    tokens.push(Token { tok: Tok::Slash, line: tline, col: tcol });
                }
            }
            '(' | ')' | '[' | ']' | ',' | ';' | '+' | '*' => {
                bump!();
                let tok = match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    ',' => Tok::Comma,
                    ';' => Tok::Semi,
                    '+' => Tok::Plus,
                    _ => Tok::Star,
                };
                tokens.push(Token { tok, line: tline, col: tcol });
            }
            '-' => {
                bump!();
                if chars.peek() == Some(&'>') {
                    bump!();
                    tokens.push(Token { tok: Tok::Arrow, line: tline, col: tcol });
                } else {
                    tokens.push(Token { tok: Tok::Minus, line: tline, col: tcol });
                }
            }
            '"' => {
                bump!();
                let mut s = String::new();
                let mut closed = false;
                while let Some(&c) = chars.peek() {
                    bump!();
                    if c == '"' {
                        closed = true;
                        break;
                    }
                    s.push(c);
                }
                if !closed {
                    diags.push(ParseDiagnostic {
                        line: tline,
                        col: tcol,
                        message: "unterminated string".into(),
                    });
                }
                tokens.push(Token { tok: Tok::Str(s), line: tline, col: tcol });
            }
            c if c.is_ascii_digit() || c == '.' => {
                let mut text = String::new();
                let mut integral = true;
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        text.push(c);
                        bump!();
                    } else if c == '.' {
                        integral = false;
                        text.push(c);
                        bump!();
                    } else if c == 'e' || c == 'E' {
                        integral = false;
                        text.push(c);
                        bump!();
                        if let Some(&s) = chars.peek() {
                            if s == '+' || s == '-' {
                                text.push(s);
                                bump!();
                            }
                        }
                    } else {
                        break;
                    }
                }
                match text.parse::<f64>() {
                    Ok(value) => {
                        let as_int = if integral { text.parse::<u64>().ok() } else { None };
                        tokens.push(Token {
                            tok: Tok::Number { value, as_int },
                            line: tline,
                            col: tcol,
                        });
                    }
                    Err(_) => diags.push(ParseDiagnostic {
                        line: tline,
                        col: tcol,
                        message: format!("malformed number `{text}`"),
                    }),
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        bump!();
                    } else {
                        break;
                    }
                }
                tokens.push(Token { tok: Tok::Ident(name), line: tline, col: tcol });
            }
            other => {
                bump!();
                diags.push(ParseDiagnostic {
                    line: tline,
                    col: tcol,
                    message: format!("unexpected character `{other}`"),
                });
            }
        }
    }
    tokens
}

// --- parser ------------------------------------------------------------------

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    diags: Vec<ParseDiagnostic>,
    qreg: Option<(String, usize)>,
    creg: Option<(String, usize)>,
    ops: Vec<GateOp>,
    op_positions: Vec<(usize, usize)>,
}

const MAX_EXPR_DEPTH: usize = 64;

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> (usize, usize) {
        match self.tokens.get(self.pos) {
            Some(t) => (t.line, t.col),
            None => self
                .tokens
                .last()
                .map(|t| (t.line, t.col + 1))
                .unwrap_or((1, 1)),
        }
    }

    fn diag_here(&mut self, message: impl Into<String>) {
        let (line, col) = self.here();
        self.diags.push(ParseDiagnostic { line, col, message: message.into() });
    }

    /// Skip ahead past the next semicolon (statement-level recovery).
    fn recover(&mut self) {
        while let Some(t) = self.next() {
            if t.tok == Tok::Semi {
                break;
            }
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> bool {
        if self.peek().map(|t| &t.tok) == Some(&tok) {
            self.pos += 1;
            true
        } else {
            self.diag_here(format!("expected {what}"));
            false
        }
    }

    fn expect_ident(&mut self, what: &str) -> Option<String> {
        match self.peek().map(|t| t.tok.clone()) {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Some(name)
            }
            _ => {
                self.diag_here(format!("expected {what}"));
                None
            }
        }
    }

    fn expect_uint(&mut self, what: &str) -> Option<u64> {
        match self.peek().map(|t| t.tok.clone()) {
            Some(Tok::Number { as_int: Some(v), .. }) => {
                self.pos += 1;
                Some(v)
            }
            _ => {
                self.diag_here(format!("expected {what}"));
                None
            }
        }
    }

    /// `name[index]` referencing the qreg; returns the qubit index.
    fn qubit_arg(&mut self) -> Option<usize> {
        let (line, col) = self.here();
        let name = self.expect_ident("a qubit argument like q[0]")?;
        let Some((qname, qsize)) = self.qreg.clone() else {
            self.diags.push(ParseDiagnostic {
                line,
                col,
                message: "no qreg declared yet".into(),
            });
            return None;
        };
        if name != qname {
            self.diags.push(ParseDiagnostic {
                line,
                col,
                message: format!("unknown register `{name}`"),
            });
            return None;
        }
        if !self.expect(Tok::LBracket, "`[` (gate arguments must be indexed)") {
            return None;
        }
        let idx = self.expect_uint("a qubit index")? as usize;
        if !self.expect(Tok::RBracket, "`]`") {
            return None;
        }
        if idx >= qsize {
            self.diags.push(ParseDiagnostic {
                line,
                col,
                message: format!("qubit index {idx} out of range for `{qname}[{qsize}]`"),
            });
            return None;
        }
        Some(idx)
    }

    fn angle_expr(&mut self, depth: usize) -> Option<f64> {
        if depth > MAX_EXPR_DEPTH {
            self.diag_here("angle expression nested too deeply");
            return None;
        }
        let mut value = self.angle_term(depth)?;
        loop {
            match self.peek().map(|t| &t.tok) {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    value += self.angle_term(depth)?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    value -= self.angle_term(depth)?;
                }
                _ => return Some(value),
            }
        }
    }

    fn angle_term(&mut self, depth: usize) -> Option<f64> {
        let mut value = self.angle_factor(depth)?;
        loop {
            match self.peek().map(|t| &t.tok) {
                Some(Tok::Star) => {
                    self.pos += 1;
                    value *= self.angle_factor(depth)?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    value /= self.angle_factor(depth)?;
                }
                _ => return Some(value),
            }
        }
    }

    fn angle_factor(&mut self, depth: usize) -> Option<f64> {
        if depth > MAX_EXPR_DEPTH {
            self.diag_here("angle expression nested too deeply");
            return None;
        }
        match self.peek().map(|t| t.tok.clone()) {
            Some(Tok::Minus) => {
                self.pos += 1;
                Some(-self.angle_factor(depth + 1)?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.angle_factor(depth + 1)
            }
            Some(Tok::Number { value, .. }) => {
                self.pos += 1;
                Some(value)
            }
            Some(Tok::Ident(name)) if name == "pi" => {
                self.pos += 1;
                Some(PI)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let v = self.angle_expr(depth + 1)?;
                if !self.expect(Tok::RParen, "`)`") {
                    return None;
                }
                Some(v)
            }
            _ => {
                self.diag_here("expected an angle expression");
                None
            }
        }
    }

    fn push_op(&mut self, op: GateOp, line: usize, col: usize) {
        self.ops.push(op);
        self.op_positions.push((line, col));
    }

    fn parse_header(&mut self) {
        let (line, col) = self.here();
        let ok = matches!(self.next().map(|t| t.tok), Some(Tok::Ident(s)) if s == "OPENQASM")
            && matches!(
                self.next().map(|t| t.tok),
                Some(Tok::Number { value, .. }) if value == 2.0
            )
            && matches!(self.next().map(|t| t.tok), Some(Tok::Semi));
        if !ok {
            self.diags.push(ParseDiagnostic {
                line,
                col,
                message: "expected `OPENQASM 2.0;` header".into(),
            });
            self.recover();
        }
    }

    fn parse_reg(&mut self, kind: &str) {
        let (line, col) = self.here();
        let Some(name) = self.expect_ident("a register name") else {
            return self.recover();
        };
        if !self.expect(Tok::LBracket, "`[`") {
            return self.recover();
        }
        let Some(size) = self.expect_uint("a register size") else {
            return self.recover();
        };
        if !self.expect(Tok::RBracket, "`]`") || !self.expect(Tok::Semi, "`;`") {
            return self.recover();
        }
        if size == 0 || size > 4096 {
            self.diags.push(ParseDiagnostic {
                line,
                col,
                message: format!("register size {size} out of range"),
            });
            return;
        }
        let slot = if kind == "qreg" { &mut self.qreg } else { &mut self.creg };
        if slot.is_some() {
            self.diags.push(ParseDiagnostic {
                line,
                col,
                message: format!("only one {kind} is supported"),
            });
        } else {
            *slot = Some((name, size as usize));
        }
    }

    fn parse_gate(&mut self, name: &str, line: usize, col: usize) {
        match name {
            "rz" => {
                if !self.expect(Tok::LParen, "`(`") {
                    return self.recover();
                }
                let Some(theta) = self.angle_expr(0) else {
                    return self.recover();
                };
                if !self.expect(Tok::RParen, "`)`") {
                    return self.recover();
                }
                let Some(q) = self.qubit_arg() else {
                    return self.recover();
                };
                if self.expect(Tok::Semi, "`;`") {
                    self.push_op(GateOp::rz(theta, q), line, col);
                }
            }
            "sx" | "sxdg" | "x" => {
                let Some(q) = self.qubit_arg() else {
                    return self.recover();
                };
                if self.expect(Tok::Semi, "`;`") {
                    let op = match name {
                        "sx" => GateOp::sx(q),
                        "sxdg" => GateOp::sx_adj(q),
                        _ => GateOp::x(q),
                    };
                    self.push_op(op, line, col);
                }
            }
            "cx" => {
                let Some(c) = self.qubit_arg() else {
                    return self.recover();
                };
                if !self.expect(Tok::Comma, "`,`") {
                    return self.recover();
                }
                let Some(t) = self.qubit_arg() else {
                    return self.recover();
                };
                if c == t {
                    self.diags.push(ParseDiagnostic {
                        line,
                        col,
                        message: "cx control and target must differ".into(),
                    });
                    return self.recover();
                }
                if self.expect(Tok::Semi, "`;`") {
                    self.push_op(GateOp::cx(c, t), line, col);
                }
            }
            _ => unreachable!(),
        }
    }

    fn parse_barrier(&mut self, line: usize, col: usize) {
        // Either `barrier q;` (whole register) or an indexed list.
        let whole_register = matches!(
            (self.peek().map(|t| t.tok.clone()), self.tokens.get(self.pos + 1).map(|t| &t.tok)),
            (Some(Tok::Ident(_)), Some(Tok::Semi))
        );
        if whole_register {
            let name = self.expect_ident("a register name").expect("peeked ident");
            match &self.qreg {
                Some((qname, qsize)) if *qname == name => {
                    let qubits: Vec<usize> = (0..*qsize).collect();
                    self.pos += 1; // consume `;`
                    self.push_op(GateOp::barrier(qubits), line, col);
                }
                _ => {
                    self.diags.push(ParseDiagnostic {
                        line,
                        col,
                        message: format!("unknown register `{name}`"),
                    });
                    self.recover();
                }
            }
            return;
        }
        let mut qubits = Vec::new();
        loop {
            let Some(q) = self.qubit_arg() else {
                return self.recover();
            };
            qubits.push(q);
            match self.peek().map(|t| t.tok.clone()) {
                Some(Tok::Comma) => {
                    self.pos += 1;
                }
                Some(Tok::Semi) => {
                    self.pos += 1;
                    break;
                }
                _ => {
                    self.diag_here("expected `,` or `;`");
                    return self.recover();
                }
            }
        }
        self.push_op(GateOp::barrier(qubits), line, col);
    }

    fn parse_measure(&mut self, line: usize, col: usize) {
        // `measure q[i] -> c[j];` or the whole-register broadcast
        // `measure q -> c;`.
        let broadcast = matches!(
            (self.peek().map(|t| t.tok.clone()), self.tokens.get(self.pos + 1).map(|t| &t.tok)),
            (Some(Tok::Ident(_)), Some(Tok::Arrow))
        );
        if broadcast {
            let qname = self.expect_ident("a register name").expect("peeked ident");
            self.pos += 1; // `->`
            let Some(cname) = self.expect_ident("a classical register") else {
                return self.recover();
            };
            if !self.expect(Tok::Semi, "`;`") {
                return self.recover();
            }
            let (Some((qn, qsize)), Some((cn, csize))) = (self.qreg.clone(), self.creg.clone())
            else {
                self.diags.push(ParseDiagnostic {
                    line,
                    col,
                    message: "measure needs a qreg and a creg".into(),
                });
                return;
            };
            if qname != qn || cname != cn {
                self.diags.push(ParseDiagnostic {
                    line,
                    col,
                    message: "unknown register in measure".into(),
                });
                return;
            }
            if csize < qsize {
                self.diags.push(ParseDiagnostic {
                    line,
                    col,
                    message: format!("creg `{cn}[{csize}]` too small for register measure"),
                });
                return;
            }
            for q in 0..qsize {
                self.push_op(GateOp::measure(q), line, col);
            }
            return;
        }
        let Some(q) = self.qubit_arg() else {
            return self.recover();
        };
        if !self.expect(Tok::Arrow, "`->`") {
            return self.recover();
        }
        let (cline, ccol) = self.here();
        let Some(cname) = self.expect_ident("a classical register") else {
            return self.recover();
        };
        if !self.expect(Tok::LBracket, "`[`") {
            return self.recover();
        }
        let Some(cidx) = self.expect_uint("a classical bit index") else {
            return self.recover();
        };
        if !self.expect(Tok::RBracket, "`]`") {
            return self.recover();
        }
        match &self.creg {
            Some((cn, csize)) if *cn == cname => {
                if cidx as usize >= *csize {
                    self.diags.push(ParseDiagnostic {
                        line: cline,
                        col: ccol,
                        message: format!("classical bit {cidx} out of range for `{cn}[{csize}]`"),
                    });
                    return self.recover();
                }
            }
            _ => {
                self.diags.push(ParseDiagnostic {
                    line: cline,
                    col: ccol,
                    message: format!("unknown classical register `{cname}`"),
                });
                return self.recover();
            }
        }
        if self.expect(Tok::Semi, "`;`") {
            // Outcomes are keyed by qubit order; the classical index is
            // validated but not stored.
            self.push_op(GateOp::measure(q), line, col);
        }
    }

    /// Attempt to fold a `// sxdg` marker plus `rz(pi); sx; rz(pi)` into a
    /// single adjoint op. Returns false (with the cursor restored past the
    /// marker) when the following ops do not match.
    fn try_sxdg_fusion(&mut self) -> bool {
        let start = self.pos; // at the marker
        self.pos += 1;
        let ops_before = self.ops.len();
        let diags_before = self.diags.len();
        let mut matched = false;
        'attempt: {
            for _ in 0..3 {
                let (line, col) = self.here();
                let Some(Tok::Ident(name)) = self.peek().map(|t| t.tok.clone()) else {
                    break 'attempt;
                };
                if name != "rz" && name != "sx" {
                    break 'attempt;
                }
                self.pos += 1;
                self.parse_gate(&name, line, col);
            }
            if self.diags.len() != diags_before || self.ops.len() != ops_before + 3 {
                break 'attempt;
            }
            let trio = &self.ops[ops_before..];
            let q = trio[1].qubits[0];
            matched = trio[0].kind == GateKind::Rz(PI)
                && trio[2].kind == GateKind::Rz(PI)
                && trio[1].kind == GateKind::Sx
                && !trio[1].adjoint
                && trio[0].qubits == [q]
                && trio[2].qubits == [q];
        }
        if matched {
            let q = self.ops[ops_before + 1].qubits[0];
            let (line, col) = self.op_positions[ops_before];
            self.ops.truncate(ops_before);
            self.op_positions.truncate(ops_before);
            self.push_op(GateOp::sx_adj(q), line, col);
            true
        } else {
            self.ops.truncate(ops_before);
            self.op_positions.truncate(ops_before);
            self.diags.truncate(diags_before);
            self.pos = start + 1;
            false
        }
    }

    fn run(&mut self) {
        self.parse_header();
        while self.pos < self.tokens.len() {
            let (line, col) = self.here();
            match self.next().map(|t| t.tok) {
                Some(Tok::SxdgMarker) => {
                    self.pos -= 1;
                    if !self.try_sxdg_fusion() {
                        // Marker ignored; statements reparse normally.
                    }
                }
                Some(Tok::Ident(name)) => match name.as_str() {
                    "include" => {
                        if !matches!(self.next().map(|t| t.tok), Some(Tok::Str(_)))
                            || !self.expect(Tok::Semi, "`;`")
                        {
                            self.diags.push(ParseDiagnostic {
                                line,
                                col,
                                message: "malformed include".into(),
                            });
                            self.recover();
                        }
                    }
                    "qreg" | "creg" => self.parse_reg(&name),
                    "rz" | "sx" | "sxdg" | "x" | "cx" => {
                        if self.qreg.is_none() {
                            self.diags.push(ParseDiagnostic {
                                line,
                                col,
                                message: "gate before qreg declaration".into(),
                            });
                            self.recover();
                        } else {
                            self.parse_gate(&name, line, col);
                        }
                    }
                    "barrier" => self.parse_barrier(line, col),
                    "measure" => self.parse_measure(line, col),
                    "OPENQASM" => {
                        self.diags.push(ParseDiagnostic {
                            line,
                            col,
                            message: "duplicate OPENQASM header".into(),
                        });
                        self.recover();
                    }
                    other => {
                        self.diags.push(ParseDiagnostic {
                            line,
                            col,
                            message: format!("unknown gate `{other}`"),
                        });
                        self.recover();
                    }
                },
                Some(_) => {
                    self.diags.push(ParseDiagnostic {
                        line,
                        col,
                        message: "expected a statement".into(),
                    });
                    self.recover();
                }
                None => break,
            }
        }
    }
}

/// Parse QASM source into a circuit. On any problem, returns every
/// diagnostic found (the parser recovers at `;` boundaries).
pub fn parse_qasm(src: &str) -> Result<Circuit, Vec<ParseDiagnostic>> {
    let mut diags = Vec::new();
    let tokens = lex(src, &mut diags);
    let mut parser = Parser {
        tokens,
        pos: 0,
        diags,
        qreg: None,
        creg: None,
        ops: Vec::new(),
        op_positions: Vec::new(),
    };
    parser.run();
    let mut diags = parser.diags;
    match &parser.qreg {
        None if diags.is_empty() => diags.push(ParseDiagnostic {
            line: 1,
            col: 1,
            message: "missing qreg declaration".into(),
        }),
        _ => {}
    }
    let num_qubits = parser.qreg.map(|(_, n)| n).unwrap_or(0);
    let circuit = Circuit { num_qubits, ops: parser.ops };
    if num_qubits > 0 {
        for v in circuit.validate() {
            let (line, col) = v
                .op_index
                .and_then(|i| parser.op_positions.get(i).copied())
                .unwrap_or((1, 1));
            diags.push(ParseDiagnostic { line, col, message: v.rule });
        }
    }
    if diags.is_empty() {
        Ok(circuit)
    } else {
        Err(diags)
    }
}

/// Format an angle with 17 significant digits (bit-exact round trip).
fn fmt_angle(theta: f64) -> String {
    format!("{theta:.16e}")
}

/// Serialize a circuit to QASM text. The default options produce plain
/// OpenQASM 2.0; see [`EmitOptions::extended_gates`] for `sxdg`.
pub fn emit_qasm(circuit: &Circuit, opts: EmitOptions) -> String {
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\n");
    out.push_str("include \"qelib1.inc\";\n");
    out.push_str(&format!("qreg q[{}];\n", circuit.num_qubits));
    if circuit.ops.iter().any(|op| op.kind == GateKind::Measure) {
        out.push_str(&format!("creg c[{}];\n", circuit.num_qubits));
    }
    for op in &circuit.ops {
        match op.kind {
            GateKind::Rz(theta) => {
                out.push_str(&format!("rz({}) q[{}];\n", fmt_angle(theta), op.qubits[0]));
            }
            GateKind::Sx if op.adjoint => {
                let q = op.qubits[0];
                if opts.extended_gates {
                    out.push_str(&format!("sxdg q[{q}];\n"));
                } else {
                    out.push_str("// sxdg\n");
                    out.push_str(&format!("rz(pi) q[{q}]; sx q[{q}]; rz(pi) q[{q}];\n"));
                }
            }
            GateKind::Sx => out.push_str(&format!("sx q[{}];\n", op.qubits[0])),
            GateKind::X => out.push_str(&format!("x q[{}];\n", op.qubits[0])),
            GateKind::Cx => {
                out.push_str(&format!("cx q[{}],q[{}];\n", op.qubits[0], op.qubits[1]));
            }
            GateKind::Barrier => {
                let args: Vec<String> =
                    op.qubits.iter().map(|q| format!("q[{q}]")).collect();
                out.push_str(&format!("barrier {};\n", args.join(",")));
            }
            GateKind::Measure => {
                let q = op.qubits[0];
                out.push_str(&format!("measure q[{q}] -> c[{q}];\n"));
            }
        }
    }
    out
}
