//! Flow certificates: exact rational flow values on the reference
//! orientation of a network, their text format, and independent re-checking.

use crate::error::{Error, Result};
use crate::interval::{Rational, RationalMod};
use crate::network::{parse_rational, render_rational, Network};
use std::fmt::Write as _;

/// A modular flow: one exact value per edge in [0, r), on the reference
/// orientation (edge stored as (u, v) means the value flows u -> v).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowAssignment {
    pub r: Rational,
    pub values: Vec<Rational>,
}

impl FlowAssignment {
    /// Text format: header `cfcert <r> <edges>`, then one `<index> <value>`
    /// line per edge.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "cfcert {} {}", render_rational(self.r), self.values.len());
        for (i, v) in self.values.iter().enumerate() {
            let _ = writeln!(out, "{} {}", i, render_rational(*v));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Certificate("empty certificate".into()))?;
        let mut hp = header.split_whitespace();
        if hp.next() != Some("cfcert") {
            return Err(Error::Certificate("expected 'cfcert <r> <edges>' header".into()));
        }
        let r = parse_rational(
            hp.next().ok_or_else(|| Error::Certificate("missing r".into()))?,
        )?;
        let m: usize = hp
            .next()
            .ok_or_else(|| Error::Certificate("missing edge count".into()))?
            .parse()
            .map_err(|_| Error::Certificate("bad edge count".into()))?;
        let mut values: Vec<Option<Rational>> = vec![None; m];
        for line in lines {
            let mut parts = line.split_whitespace();
            let idx: usize = parts
                .next()
                .unwrap()
                .parse()
                .map_err(|_| Error::Certificate(format!("bad edge index in '{line}'")))?;
            let val = parse_rational(
                parts
                    .next()
                    .ok_or_else(|| Error::Certificate(format!("missing value in '{line}'")))?,
            )?;
            if idx >= m {
                return Err(Error::Certificate(format!("edge index {idx} out of range")));
            }
            if values[idx].replace(val).is_some() {
                return Err(Error::Certificate(format!("duplicate edge index {idx}")));
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::Certificate(format!("edge {i} has no value"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { r, values })
    }
}

/// Re-checks a certificate against a network from scratch: every value must
/// lie in its edge's capacity (scaled), and the signed sum at every vertex
/// must vanish modulo r, exactly over the rationals.
pub fn verify(net: &Network, cert: &FlowAssignment) -> Result<()> {
    if cert.values.len() != net.n_edges() {
        return Err(Error::Certificate(format!(
            "certificate covers {} edges, network has {}",
            cert.values.len(),
            net.n_edges()
        )));
    }
    if !net.all_simple() && net.r() != cert.r {
        return Err(Error::ContextMismatch(
            render_rational(cert.r),
            render_rational(net.r()),
        ));
    }
    let two = Rational::from_integer(2);
    if cert.r <= two {
        return Err(Error::UnsupportedModulus(render_rational(cert.r)));
    }
    let p = *cert.r.numer();
    let q = *cert.r.denom();
    let p_rat = Rational::from_integer(p);
    let scale = Rational::from_integer(q);
    let window = crate::interval::IntervalSet::interval(p as u32, q as u32, (p - q) as u32)?;
    for (i, e) in net.edges().iter().enumerate() {
        let scaled = (cert.values[i] * scale).mod_floor(&p_rat);
        let cap = match &e.kind {
            crate::network::EdgeKind::Simple => window,
            crate::network::EdgeKind::Abstract(set) => *set,
            crate::network::EdgeKind::Gadget(name) => {
                return Err(Error::UnknownGadget(format!(
                    "cannot verify against unresolved gadget edge '{name}'"
                )))
            }
        };
        if !cap.contains(scaled) {
            return Err(Error::Certificate(format!(
                "edge {i} value {} (scaled {}) lies outside its capacity {}",
                render_rational(cert.values[i]),
                render_rational(scaled),
                cap.render()
            )));
        }
    }
    for v in net.vertices() {
        let mut sum = Rational::from_integer(0);
        for (i, e) in net.edges().iter().enumerate() {
            if e.v == v {
                sum += cert.values[i];
            }
            if e.u == v {
                sum -= cert.values[i];
            }
        }
        if sum.mod_floor(&cert.r) != Rational::from_integer(0) {
            return Err(Error::Certificate(format!(
                "conservation fails at vertex {v}: signed sum {} is not 0 mod {}",
                render_rational(sum),
                render_rational(cert.r)
            )));
        }
    }
    Ok(())
}
