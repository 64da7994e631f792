//! DIMACS import/export for CNF instances, with certificates carried in
//! `c cert ...` comment directives.
//!
//! Headers: `p cnf <vars> <clauses>` for unit weights, `p wcnf <vars>
//! <clauses>` with a leading weight per clause line otherwise. Certificate
//! directives:
//!
//! ```text
//! c cert modulator 1 3 7
//! c cert treedepth depth=2
//! c cert parent 4:0 5:4
//! c cert pathdecomp width=2
//! c cert bag 2 3
//! c cert hub sigma=2 delta=2
//! c cert backdoor horn 2 5
//! c cert backdoor 2sat 2 5
//! ```

use crate::instance::{BaseClass, Clause, CnfInstance, Literal, StructureCertificate, Var};
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

pub fn export_dimacs(cnf: &CnfInstance) -> String {
    let weighted = cnf.clauses.iter().any(|c| c.weight != 1);
    let mut out = String::new();
    if let Some(cert) = &cnf.certificate {
        export_cert(&mut out, cert);
    }
    let _ = writeln!(
        out,
        "p {} {} {}",
        if weighted { "wcnf" } else { "cnf" },
        cnf.num_vars,
        cnf.clauses.len()
    );
    for c in &cnf.clauses {
        if weighted {
            let _ = write!(out, "{} ", c.weight);
        }
        for l in &c.literals {
            let _ = write!(out, "{} ", l.to_dimacs());
        }
        let _ = writeln!(out, "0");
    }
    out
}

fn export_cert(out: &mut String, cert: &StructureCertificate) {
    let vars = |set: &BTreeSet<Var>| -> String {
        set.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
    };
    match cert {
        StructureCertificate::TreeDepthForest { modulator, parent, depth } => {
            let _ = writeln!(out, "c cert modulator {}", vars(modulator));
            let _ = writeln!(out, "c cert treedepth depth={depth}");
            // parents in chunks of ten pairs per line
            for chunk in parent.iter().collect::<Vec<_>>().chunks(10) {
                let pairs: Vec<String> =
                    chunk.iter().map(|(v, p)| format!("{}:{}", v, p.unwrap_or(0))).collect();
                let _ = writeln!(out, "c cert parent {}", pairs.join(" "));
            }
        }
        StructureCertificate::PathDecomposition { modulator, bags, width } => {
            let _ = writeln!(out, "c cert modulator {}", vars(modulator));
            let _ = writeln!(out, "c cert pathdecomp width={width}");
            for bag in bags {
                let _ = writeln!(out, "c cert bag {}", vars(bag));
            }
        }
        StructureCertificate::Hub { modulator, sigma, delta } => {
            let _ = writeln!(out, "c cert modulator {}", vars(modulator));
            let _ = writeln!(out, "c cert hub sigma={sigma} delta={delta}");
        }
        StructureCertificate::Backdoor { variables, base } => {
            let tag = match base {
                BaseClass::TwoSat => "2sat",
                BaseClass::Horn => "horn",
            };
            let _ = writeln!(out, "c cert backdoor {tag} {}", vars(variables));
        }
    }
}

#[derive(Default)]
struct CertDirectives {
    modulator: BTreeSet<Var>,
    treedepth: Option<u32>,
    parent: BTreeMap<Var, Option<Var>>,
    pathdecomp: Option<u32>,
    bags: Vec<BTreeSet<Var>>,
    hub: Option<(u32, u32)>,
    backdoor: Option<BaseClass>,
}

impl CertDirectives {
    fn build(self, line: usize) -> Result<Option<StructureCertificate>> {
        let kinds = [
            self.treedepth.is_some(),
            self.pathdecomp.is_some(),
            self.hub.is_some(),
            self.backdoor.is_some(),
        ]
        .iter()
        .filter(|&&b| b)
        .count();
        if kinds > 1 {
            return Err(Error::Parse { line, msg: "conflicting certificate kinds".into() });
        }
        if let Some(depth) = self.treedepth {
            return Ok(Some(StructureCertificate::TreeDepthForest {
                modulator: self.modulator,
                parent: self.parent,
                depth,
            }));
        }
        if let Some(width) = self.pathdecomp {
            return Ok(Some(StructureCertificate::PathDecomposition {
                modulator: self.modulator,
                bags: self.bags,
                width,
            }));
        }
        if let Some((sigma, delta)) = self.hub {
            return Ok(Some(StructureCertificate::Hub {
                modulator: self.modulator,
                sigma,
                delta,
            }));
        }
        if let Some(base) = self.backdoor {
            return Ok(Some(StructureCertificate::Backdoor {
                variables: self.modulator,
                base,
            }));
        }
        if !self.modulator.is_empty() || !self.parent.is_empty() || !self.bags.is_empty() {
            return Err(Error::Parse { line, msg: "incomplete certificate directives".into() });
        }
        Ok(None)
    }
}

pub fn import_dimacs(text: &str) -> Result<CnfInstance> {
    let mut num_vars: Option<u32> = None;
    let mut declared_clauses = 0usize;
    let mut weighted = false;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut cert = CertDirectives::default();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let parse_err = |msg: String| Error::Parse { line: line_no, msg };
        if let Some(rest) = line.strip_prefix("c") {
            let rest = rest.trim_start();
            if let Some(directive) = rest.strip_prefix("cert ") {
                parse_cert_directive(directive.trim(), &mut cert, line_no)?;
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix("p ") {
            let fields: Vec<&str> = rest.split_whitespace().collect();
            let [kind, vars, count] = fields.as_slice() else {
                return Err(parse_err("expected `p cnf <vars> <clauses>`".into()));
            };
            weighted = match *kind {
                "cnf" => false,
                "wcnf" => true,
                other => return Err(parse_err(format!("unknown format {other:?}"))),
            };
            num_vars =
                Some(vars.parse().map_err(|e| parse_err(format!("bad variable count: {e}")))?);
            declared_clauses =
                count.parse().map_err(|e| parse_err(format!("bad clause count: {e}")))?;
            continue;
        }
        if num_vars.is_none() {
            return Err(parse_err("clause before the problem line".into()));
        }
        let mut tokens = line.split_whitespace();
        let weight: u64 = if weighted {
            tokens
                .next()
                .ok_or_else(|| parse_err("missing weight".into()))?
                .parse()
                .map_err(|e| parse_err(format!("bad weight: {e}")))?
        } else {
            1
        };
        let mut lits = Vec::new();
        let mut terminated = false;
        for tok in tokens {
            let value: i64 = tok.parse().map_err(|e| parse_err(format!("bad literal: {e}")))?;
            if value == 0 {
                terminated = true;
                break;
            }
            lits.push(Literal::from_dimacs(value)?);
        }
        if !terminated {
            return Err(parse_err("clause not terminated by 0".into()));
        }
        clauses.push(Clause::with_weight(lits, weight));
    }
    let num_vars = num_vars.ok_or(Error::Parse { line: last_line, msg: "missing problem line".into() })?;
    if clauses.len() != declared_clauses {
        return Err(Error::Parse {
            line: last_line,
            msg: format!("declared {declared_clauses} clauses, found {}", clauses.len()),
        });
    }
    let certificate = cert.build(last_line)?;
    let out = CnfInstance { num_vars, clauses, certificate };
    out.validate()?;
    Ok(out)
}

fn parse_cert_directive(directive: &str, cert: &mut CertDirectives, line: usize) -> Result<()> {
    let parse_err = |msg: String| Error::Parse { line, msg };
    let mut tokens = directive.split_whitespace();
    let head = tokens.next().ok_or_else(|| parse_err("empty cert directive".into()))?;
    let kv = |tok: &str, key: &str| -> Result<u32> {
        tok.strip_prefix(key)
            .and_then(|s| s.strip_prefix('='))
            .ok_or_else(|| parse_err(format!("expected {key}=<n>, got {tok:?}")))?
            .parse()
            .map_err(|e| parse_err(format!("bad {key}: {e}")))
    };
    match head {
        "modulator" => {
            for tok in tokens {
                cert.modulator.insert(
                    tok.parse().map_err(|e| parse_err(format!("bad variable: {e}")))?,
                );
            }
        }
        "treedepth" => {
            let tok = tokens.next().ok_or_else(|| parse_err("missing depth".into()))?;
            cert.treedepth = Some(kv(tok, "depth")?);
        }
        "parent" => {
            for tok in tokens {
                let (v, p) = tok
                    .split_once(':')
                    .ok_or_else(|| parse_err(format!("expected v:p, got {tok:?}")))?;
                let v: Var = v.parse().map_err(|e| parse_err(format!("bad vertex: {e}")))?;
                let p: Var = p.parse().map_err(|e| parse_err(format!("bad parent: {e}")))?;
                cert.parent.insert(v, if p == 0 { None } else { Some(p) });
            }
        }
        "pathdecomp" => {
            let tok = tokens.next().ok_or_else(|| parse_err("missing width".into()))?;
            cert.pathdecomp = Some(kv(tok, "width")?);
        }
        "bag" => {
            let mut bag = BTreeSet::new();
            for tok in tokens {
                bag.insert(tok.parse().map_err(|e| parse_err(format!("bad variable: {e}")))?);
            }
            cert.bags.push(bag);
        }
        "hub" => {
            let sigma = kv(tokens.next().ok_or_else(|| parse_err("missing sigma".into()))?, "sigma")?;
            let delta = kv(tokens.next().ok_or_else(|| parse_err("missing delta".into()))?, "delta")?;
            cert.hub = Some((sigma, delta));
        }
        "backdoor" => {
            let base = match tokens.next() {
                Some("horn") => BaseClass::Horn,
                Some("2sat") => BaseClass::TwoSat,
                other => return Err(parse_err(format!("unknown base class {other:?}"))),
            };
            cert.backdoor = Some(base);
            for tok in tokens {
                cert.modulator.insert(
                    tok.parse().map_err(|e| parse_err(format!("bad variable: {e}")))?,
                );
            }
        }
        other => return Err(parse_err(format!("unknown cert directive {other:?}"))),
    }
    Ok(())
}
