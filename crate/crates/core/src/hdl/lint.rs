// SPDX-License-Identifier: Apache-2.0
//! Textual lint for emitted Verilog.
//!
//! This is not a Verilog parser. It tokenizes the source, finds module
//! headers, `always` blocks, `assign` statements and `for` loops, and checks
//! rules that catch the usual ways hand- or machine-written Verilog goes
//! wrong:
//!
//! * SystemVerilog-only keywords (`enum`, `logic`, `always_ff`, ...)
//! * ports with more than one dimension
//! * unbalanced `begin`/`end`, `case`/`endcase`, `generate`/`endgenerate`,
//!   `module`/`endmodule`
//! * a register assigned from more than one process, or procedurally
//!   assigned without a `reg` declaration
//! * a loop variable reused by two loops in one module, or a generate loop
//!   whose variable is not a `genvar` or is unused in its body
//! * `initial` blocks
//! * a register not cleared to zero by the `if (rst)` branch of its block
//! * implicit nets left enabled (no `` `default_nettype none ``)

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LintRule {
    SystemVerilogToken,
    MultiDimensionalPort,
    UnbalancedBlock,
    MultipleDrivers,
    ProceduralAssignToNet,
    DuplicateLoopVariable,
    GenerateLoopIndex,
    InitialBlock,
    UnresetRegister,
    ImplicitNets,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LintViolation {
    pub file: String,
    pub line: usize,
    pub rule: LintRule,
    pub detail: String,
}

impl fmt::Display for LintViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: {:?}: {}",
            self.file, self.line, self.rule, self.detail
        )
    }
}

const SV_KEYWORDS: &[&str] = &[
    "enum",
    "logic",
    "typedef",
    "struct",
    "union",
    "always_ff",
    "always_comb",
    "always_latch",
    "interface",
    "modport",
    "unique",
    "priority",
    "bit",
    "int",
    "byte",
    "shortint",
    "longint",
];

const BLOCK_PAIRS: &[(&str, &str)] = &[
    ("begin", "end"),
    ("case", "endcase"),
    ("casez", "endcase"),
    ("casex", "endcase"),
    ("generate", "endgenerate"),
    ("module", "endmodule"),
    ("function", "endfunction"),
    ("task", "endtask"),
];

#[derive(Debug, Clone, PartialEq, Eq)]
struct Token<'a> {
    text: &'a str,
    line: usize,
}

fn strip_comments(src: &str) -> String {
    let mut out = String::with_capacity(src.len());
    let mut chars = src.chars().peekable();
    while let Some(c) = chars.next() {
        match (c, chars.peek()) {
            ('/', Some('/')) => {
                for c in chars.by_ref() {
                    if c == '\n' {
                        out.push('\n');
                        break;
                    }
                }
            }
            ('/', Some('*')) => {
                chars.next();
                let mut prev = ' ';
                for c in chars.by_ref() {
                    if c == '\n' {
                        out.push('\n');
                    }
                    if prev == '*' && c == '/' {
                        break;
                    }
                    prev = c;
                }
            }
            _ => out.push(c),
        }
    }
    out
}

fn tokenize(src: &str) -> Vec<Token<'_>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut line = 1;
    let mut i = 0;
    let ident = |b: u8| b.is_ascii_alphanumeric() || b == b'_' || b == b'$';
    while i < bytes.len() {
        let b = bytes[i];
        if b == b'\n' {
            line += 1;
            i += 1;
            continue;
        }
        if b.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if b.is_ascii_digit() {
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'_') {
                i += 1;
            }
            if i < bytes.len() && bytes[i] == b'\'' {
                i += 1;
                if i < bytes.len() && matches!(bytes[i], b's' | b'S') {
                    i += 1;
                }
                if i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                while i < bytes.len()
                    && (bytes[i].is_ascii_hexdigit()
                        || matches!(bytes[i], b'_' | b'x' | b'X' | b'z' | b'Z'))
                {
                    i += 1;
                }
            }
        } else if ident(b) || b == b'`' {
            i += 1;
            while i < bytes.len() && ident(bytes[i]) {
                i += 1;
            }
        } else {
            let two = bytes.get(i..i + 2);
            i += match two {
                Some(
                    b"<=" | b"==" | b"!=" | b">=" | b"+:" | b"-:" | b"&&" | b"||" | b"<<" | b">>",
                ) => 2,
                _ => 1,
            };
        }
        out.push(Token {
            text: &src[start..i],
            line,
        });
    }
    out
}

fn is_ident(t: &str) -> bool {
    t.chars()
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
}

fn is_zero_literal(t: &str) -> bool {
    let digits = match t.split_once('\'') {
        Some((_, rest)) => rest.trim_start_matches(['s', 'S']).get(1..).unwrap_or(""),
        None => t,
    };
    !digits.is_empty() && digits.chars().all(|c| c == '0' || c == '_')
}

/// Index of the token closing the bracket group opened at `open`.
fn matching(tokens: &[Token], open: usize, lhs: &str, rhs: &str) -> Option<usize> {
    let mut depth = 0usize;
    for (k, t) in tokens.iter().enumerate().skip(open) {
        if t.text == lhs {
            depth += 1;
        } else if t.text == rhs {
            depth = depth.checked_sub(1)?;
            if depth == 0 {
                return Some(k);
            }
        }
    }
    None
}

/// Procedural or continuous assignment targets in `tokens`: `(name, line,
/// index of the assignment operator)`.
fn assignment_targets<'a>(tokens: &[Token<'a>]) -> Vec<(&'a str, usize, usize)> {
    let mut out = Vec::new();
    let loop_headers: Vec<(usize, usize)> = tokens
        .iter()
        .enumerate()
        .filter(|(k, t)| t.text == "for" && tokens.get(k + 1).is_some_and(|p| p.text == "("))
        .filter_map(|(k, _)| Some((k, matching(tokens, k + 1, "(", ")")?)))
        .collect();
    for (k, t) in tokens.iter().enumerate() {
        if t.text != "<=" && t.text != "=" {
            continue;
        }
        if loop_headers.iter().any(|&(a, b)| a < k && k < b) {
            continue;
        }
        // walk back over index brackets to the target identifier
        let mut j = k;
        while j > 0 && tokens[j - 1].text == "]" {
            let mut depth = 0;
            while j > 0 {
                j -= 1;
                match tokens[j].text {
                    "]" => depth += 1,
                    "[" => {
                        depth -= 1;
                        if depth == 0 {
                            break;
                        }
                    }
                    _ => {}
                }
            }
        }
        if j == 0 || !is_ident(tokens[j - 1].text) {
            continue;
        }
        let name = tokens[j - 1].text;
        let before = if j >= 2 { tokens[j - 2].text } else { ";" };
        if matches!(
            before,
            ";" | "begin" | "end" | "else" | ")" | ":" | "default" | "assign"
        ) {
            out.push((name, tokens[j - 1].line, k));
        }
    }
    out
}

struct Module<'a> {
    name: &'a str,
    tokens: &'a [Token<'a>],
}

fn modules<'a>(tokens: &'a [Token<'a>]) -> Vec<Module<'a>> {
    let mut out = Vec::new();
    let mut k = 0;
    while k < tokens.len() {
        if tokens[k].text == "module" {
            let end = tokens[k..]
                .iter()
                .position(|t| t.text == "endmodule")
                .map_or(tokens.len(), |p| k + p + 1);
            out.push(Module {
                name: tokens.get(k + 1).map_or("?", |t| t.text),
                tokens: &tokens[k..end],
            });
            k = end;
        } else {
            k += 1;
        }
    }
    out
}

struct Linter<'a> {
    file: &'a str,
    out: Vec<LintViolation>,
}

impl Linter<'_> {
    fn report(&mut self, line: usize, rule: LintRule, detail: impl Into<String>) {
        self.out.push(LintViolation {
            file: self.file.to_string(),
            line,
            rule,
            detail: detail.into(),
        });
    }

    fn check_keywords(&mut self, tokens: &[Token]) {
        for t in tokens {
            if SV_KEYWORDS.contains(&t.text) {
                self.report(
                    t.line,
                    LintRule::SystemVerilogToken,
                    format!("`{}` is not Verilog-2005", t.text),
                );
            }
            if t.text == "initial" {
                self.report(
                    t.line,
                    LintRule::InitialBlock,
                    "initial blocks are not synthesizable",
                );
            }
        }
    }

    fn check_balance(&mut self, tokens: &[Token]) {
        for (open, close) in BLOCK_PAIRS {
            // endcase closes case/casez/casex together
            if *open != "case" && *close == "endcase" {
                continue;
            }
            let opens = tokens
                .iter()
                .filter(|t| {
                    t.text == *open || (*close == "endcase" && matches!(t.text, "casez" | "casex"))
                })
                .count();
            let closes = tokens.iter().filter(|t| t.text == *close).count();
            if opens != closes {
                let line = tokens.last().map_or(1, |t| t.line);
                self.report(
                    line,
                    LintRule::UnbalancedBlock,
                    format!("{opens} `{open}` vs {closes} `{close}`"),
                );
            }
        }
        let mut depth = 0i64;
        for t in tokens {
            match t.text {
                "begin" => depth += 1,
                "end" => {
                    depth -= 1;
                    if depth < 0 {
                        self.report(t.line, LintRule::UnbalancedBlock, "`end` without `begin`");
                        depth = 0;
                    }
                }
                _ => {}
            }
        }
    }

    fn check_ports(&mut self, m: &Module) {
        let Some(open) = m.tokens.iter().position(|t| t.text == "(") else {
            return;
        };
        let Some(close) = matching(m.tokens, open, "(", ")") else {
            return;
        };
        for decl in m.tokens[open + 1..close].split(|t| t.text == ",") {
            let Some(first) = decl.first() else { continue };
            let dims = decl.iter().filter(|t| t.text == "[").count();
            if dims > 1 {
                let name = decl
                    .iter()
                    .rev()
                    .find(|t| is_ident(t.text))
                    .map_or("?", |t| t.text);
                self.report(
                    first.line,
                    LintRule::MultiDimensionalPort,
                    format!("port `{name}` in `{}` has {dims} dimensions", m.name),
                );
            }
        }
    }

    fn check_drivers(&mut self, m: &Module) {
        let toks = m.tokens;
        let mut regs: BTreeSet<&str> = BTreeSet::new();
        for (k, t) in toks.iter().enumerate() {
            if matches!(t.text, "reg" | "integer") {
                // names follow until `;`, `,` separated; stop at `)` or `,` in port lists
                let mut j = k + 1;
                while j < toks.len() && !matches!(toks[j].text, ";" | ")") {
                    if toks[j].text == "[" {
                        j = matching(toks, j, "[", "]").unwrap_or(j) + 1;
                        continue;
                    }
                    if is_ident(toks[j].text) && !matches!(toks[j].text, "signed") {
                        regs.insert(toks[j].text);
                        if toks.get(j + 1).is_some_and(|n| n.text == ",")
                            && toks
                                .get(j + 2)
                                .is_some_and(|n| matches!(n.text, "input" | "output" | "inout"))
                        {
                            break;
                        }
                    }
                    j += 1;
                }
            }
        }

        // driver name -> list of (process label, line)
        let mut drivers: BTreeMap<&str, Vec<(String, usize)>> = BTreeMap::new();
        let mut k = 0;
        let mut block = 0;
        while k < toks.len() {
            match toks[k].text {
                "always" => {
                    block += 1;
                    let body_start = toks[k..]
                        .iter()
                        .position(|t| t.text == "begin")
                        .map(|p| k + p);
                    let Some(start) = body_start else { break };
                    let end = matching(toks, start, "begin", "end").unwrap_or(toks.len() - 1);
                    let body = &toks[start..=end];
                    let mut seen = BTreeSet::new();
                    for (name, line, _) in assignment_targets(body) {
                        if !regs.contains(name) {
                            self.report(
                                line,
                                LintRule::ProceduralAssignToNet,
                                format!(
                                    "`{name}` is assigned in an always block but not declared reg"
                                ),
                            );
                        }
                        if seen.insert(name) {
                            drivers
                                .entry(name)
                                .or_default()
                                .push((format!("always block {block}"), line));
                        }
                    }
                    self.check_reset(body, &seen);
                    k = end + 1;
                }
                "assign" => {
                    let end = toks[k..]
                        .iter()
                        .position(|t| t.text == ";")
                        .map_or(toks.len(), |p| k + p);
                    if let Some((name, line, _)) = assignment_targets(&toks[k..end]).first() {
                        drivers
                            .entry(name)
                            .or_default()
                            .push(("continuous assign".into(), *line));
                    }
                    k = end + 1;
                }
                _ => k += 1,
            }
        }
        for (name, ds) in drivers {
            if ds.len() > 1 {
                let list: Vec<_> = ds
                    .iter()
                    .map(|(what, line)| format!("{what} (line {line})"))
                    .collect();
                self.report(
                    ds[1].1,
                    LintRule::MultipleDrivers,
                    format!("`{name}` in `{}` is driven by {}", m.name, list.join(", ")),
                );
            }
        }
    }

    /// Every register written by the block must be cleared by its reset branch.
    fn check_reset(&mut self, body: &[Token], written: &BTreeSet<&str>) {
        let head = body.windows(5).position(|w| {
            w[0].text == "if"
                && w[1].text == "("
                && w[2].text == "rst"
                && w[3].text == ")"
                && w[4].text == "begin"
        });
        let line = body.first().map_or(1, |t| t.line);
        let Some(head) = head else {
            if !written.is_empty() {
                self.report(
                    line,
                    LintRule::UnresetRegister,
                    "always block has no `if (rst) begin` branch",
                );
            }
            return;
        };
        let start = head + 4;
        let end = matching(body, start, "begin", "end").unwrap_or(body.len() - 1);
        let branch = &body[start..=end];
        let cleared: BTreeSet<&str> = assignment_targets(branch)
            .into_iter()
            .filter(|(_, _, op)| {
                branch.get(op + 1).is_some_and(|t| is_zero_literal(t.text))
                    && branch.get(op + 2).is_some_and(|t| t.text == ";")
            })
            .map(|(name, _, _)| name)
            .collect();
        for name in written.difference(&cleared) {
            self.report(
                line,
                LintRule::UnresetRegister,
                format!("`{name}` is not cleared on reset"),
            );
        }
    }

    fn check_loops(&mut self, m: &Module) {
        let toks = m.tokens;
        let genvars: BTreeSet<&str> = toks
            .windows(2)
            .filter(|w| w[0].text == "genvar")
            .map(|w| w[1].text)
            .collect();
        let mut in_generate = false;
        let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
        for (k, t) in toks.iter().enumerate() {
            match t.text {
                "generate" => in_generate = true,
                "endgenerate" => in_generate = false,
                "for" => {
                    let Some(var) = toks
                        .get(k + 2)
                        .filter(|_| toks.get(k + 1).is_some_and(|p| p.text == "("))
                    else {
                        continue;
                    };
                    if let Some(first) = seen.insert(var.text, t.line) {
                        self.report(
                            t.line,
                            LintRule::DuplicateLoopVariable,
                            format!("loop variable `{}` in `{}` already used by the loop on line {first}", var.text, m.name),
                        );
                    }
                    if in_generate {
                        if !genvars.contains(var.text) {
                            self.report(
                                t.line,
                                LintRule::GenerateLoopIndex,
                                format!("generate loop variable `{}` is not a genvar", var.text),
                            );
                        }
                        let header_end = matching(toks, k + 1, "(", ")").unwrap_or(k + 1);
                        let body_end = match toks.get(header_end + 1).map(|t| t.text) {
                            Some("begin") => matching(toks, header_end + 1, "begin", "end")
                                .unwrap_or(toks.len() - 1),
                            _ => toks[header_end..]
                                .iter()
                                .position(|t| t.text == ";")
                                .map_or(toks.len() - 1, |p| header_end + p),
                        };
                        if !toks[header_end + 1..=body_end]
                            .iter()
                            .any(|t| t.text == var.text)
                        {
                            self.report(
                                t.line,
                                LintRule::GenerateLoopIndex,
                                format!("generate loop body never uses `{}`", var.text),
                            );
                        }
                    }
                }
                _ => {}
            }
        }
    }
}

/// Lints one Verilog source file.
pub fn lint_source(file: &str, src: &str) -> Vec<LintViolation> {
    let stripped = strip_comments(src);
    let tokens = tokenize(&stripped);
    let mut lint = Linter {
        file,
        out: Vec::new(),
    };

    let nettype_none = tokens
        .windows(2)
        .any(|w| w[0].text == "`default_nettype" && w[1].text == "none");
    if !nettype_none {
        lint.report(1, LintRule::ImplicitNets, "missing `default_nettype none");
    }
    lint.check_keywords(&tokens);
    lint.check_balance(&tokens);
    for m in modules(&tokens) {
        lint.check_ports(&m);
        lint.check_drivers(&m);
        lint.check_loops(&m);
    }
    lint.out
}

/// Lints every file of a bundle.
pub fn lint_bundle(bundle: &super::HdlBundle) -> Vec<LintViolation> {
    bundle
        .files
        .iter()
        .flat_map(|(name, text)| lint_source(name, text))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rules(src: &str) -> BTreeSet<LintRule> {
        let src = format!("`default_nettype none\n{src}");
        lint_source("t.v", &src)
            .into_iter()
            .map(|v| v.rule)
            .collect()
    }

    #[test]
    fn zero_literals() {
        for t in ["0", "1'b0", "8'd0", "72'd0", "16'h0000", "2'b00", "8'sd0"] {
            assert!(is_zero_literal(t), "{t}");
        }
        for t in ["1", "1'b1", "8'hFF", "refractory_period", "8'h10"] {
            assert!(!is_zero_literal(t), "{t}");
        }
    }

    #[test]
    fn tokenizer_keeps_sized_literals_whole() {
        let src = "a <= 8'hFF + w[(i*3 + j)*8 +: 8];";
        let texts: Vec<_> = tokenize(src).into_iter().map(|t| t.text).collect();
        assert!(texts.contains(&"8'hFF"));
        assert!(texts.contains(&"+:"));
        assert!(texts.contains(&"<="));
    }

    #[test]
    fn clean_module_passes() {
        let src = r#"
module m (input wire clk, input wire rst, input wire [7:0] d, output reg [7:0] q);
    always @(posedge clk) begin
        if (rst) begin
            q <= 8'd0;
        end else begin
            q <= d;
        end
    end
endmodule
"#;
        assert!(rules(src).is_empty(), "{:?}", rules(src));
    }

    #[test]
    fn output_driven_by_two_processes() {
        let src = r#"
module m (input wire clk, input wire rst, input wire a, output reg spike);
    always @(posedge clk) begin
        if (rst) begin
            spike <= 1'b0;
        end else begin
            spike <= a;
        end
    end
    always @(posedge clk) begin
        if (rst) begin
            spike <= 1'b0;
        end
    end
endmodule
"#;
        assert!(rules(src).contains(&LintRule::MultipleDrivers));
    }

    #[test]
    fn reg_also_continuously_assigned() {
        let src = r#"
module m (input wire clk, input wire rst, input wire a, output reg we);
    assign we = a;
    always @(posedge clk) begin
        if (rst) begin
            we <= 1'b0;
        end
    end
endmodule
"#;
        assert!(rules(src).contains(&LintRule::MultipleDrivers));
    }

    #[test]
    fn output_not_declared_reg() {
        let src = r#"
module m (input wire clk, input wire rst, output spike);
    always @(posedge clk) begin
        if (rst) begin
            spike <= 1'b0;
        end
    end
endmodule
"#;
        assert!(rules(src).contains(&LintRule::ProceduralAssignToNet));
    }

    #[test]
    fn two_dimensional_ports() {
        let src = r#"
module m (input wire [7:0] currents [2:0], input wire [2:0][7:0] w, output wire [2:0] s);
endmodule
"#;
        let found: Vec<_> = lint_source("t.v", &format!("`default_nettype none\n{src}"))
            .into_iter()
            .filter(|v| v.rule == LintRule::MultiDimensionalPort)
            .collect();
        assert_eq!(found.len(), 2);
    }

    #[test]
    fn systemverilog_enum_and_logic() {
        let src = r#"
module m (input logic clk);
    typedef enum {IDLE, RUN} state_t;
endmodule
"#;
        assert!(rules(src).contains(&LintRule::SystemVerilogToken));
    }

    #[test]
    fn reused_loop_variable() {
        let src = r#"
module m (input wire clk, input wire rst);
    integer i;
    reg [7:0] a [0:2];
    reg [7:0] b [0:2];
    always @(posedge clk) begin
        if (rst) begin
            for (i = 0; i < 3; i = i + 1) begin
                a[i] <= 8'd0;
            end
        end
    end
    always @(posedge clk) begin
        if (rst) begin
            for (i = 0; i < 3; i = i + 1) begin
                b[i] <= 8'd0;
            end
        end
    end
endmodule
"#;
        assert!(rules(src).contains(&LintRule::DuplicateLoopVariable));
    }

    #[test]
    fn generate_loop_must_use_its_genvar() {
        let src = r#"
module m (input wire [2:0] x, output wire [2:0] y);
    integer k;
    generate
        for (k = 0; k < 3; k = k + 1) begin : g
            assign y = x;
        end
    endgenerate
endmodule
"#;
        let r = rules(src);
        assert!(r.contains(&LintRule::GenerateLoopIndex));
    }

    #[test]
    fn initial_block_and_missing_reset() {
        let src = r#"
module m (input wire clk, input wire rst, input wire d);
    reg q;
    reg r;
    initial begin
        q = 1'b0;
    end
    always @(posedge clk) begin
        if (rst) begin
            q <= 1'b0;
        end else begin
            q <= d;
            r <= d;
        end
    end
endmodule
"#;
        let r = rules(src);
        assert!(r.contains(&LintRule::InitialBlock));
        assert!(r.contains(&LintRule::UnresetRegister));
    }

    #[test]
    fn unbalanced_begin() {
        let src = r#"
module m (input wire clk, input wire rst);
    reg q;
    always @(posedge clk) begin
        if (rst) begin
            q <= 1'b0;
        end
endmodule
"#;
        assert!(rules(src).contains(&LintRule::UnbalancedBlock));
    }

    #[test]
    fn implicit_nets() {
        let v = lint_source("t.v", "module m (input wire a);\nendmodule\n");
        assert!(v.iter().any(|v| v.rule == LintRule::ImplicitNets));
    }

    #[test]
    fn comments_are_ignored() {
        let src = "// enum logic initial\n/* always_ff\n typedef */\nmodule m (input wire a);\nendmodule\n";
        assert!(rules(src).is_empty());
    }
}
