//! graph6 / sparse6 codecs (McKay's formats).
//!
//! graph6 encodes a simple graph as the upper triangle of its adjacency
//! matrix, column by column, packed into printable sextets.  sparse6 encodes
//! a multigraph as a bit stream of (b, x) items over k-bit vertex numbers,
//! where k is the smallest positive integer with 2^k >= n.
//!
//! Both codecs renumber vertices 0..n-1 in ascending id order on encoding and
//! ignore edge kinds: they describe the underlying (multi)graph only.
//! Decoding produces all-simple networks with the default modulus context 5.

use crate::error::{Error, Result};
use crate::network::Network;
use std::collections::BTreeMap;

const GRAPH6_HEADER: &str = ">>graph6<<";
const SPARSE6_HEADER: &str = ">>sparse6<<";

/// Decodes either format: a leading ':' (after an optional header) means sparse6.
pub fn decode_auto(text: &str) -> Result<Network> {
    let t = text.trim();
    let body = t.strip_prefix(GRAPH6_HEADER).or_else(|| t.strip_prefix(SPARSE6_HEADER)).unwrap_or(t);
    if body.starts_with(':') {
        decode_sparse6(t)
    } else {
        decode_graph6(t)
    }
}

/// Encodes a simple graph in graph6.  Parallel edges are rejected (use
/// sparse6), as are graphs on more than 258047 vertices (never needed here).
pub fn encode_graph6(g: &Network) -> Result<String> {
    let (n, index) = vertex_index(g);
    let mut adj = vec![false; n * n];
    for e in g.edges() {
        let (i, j) = (index[&e.u], index[&e.v]);
        if adj[i * n + j] {
            return Err(Error::Graph6("parallel edges require sparse6".into()));
        }
        adj[i * n + j] = true;
        adj[j * n + i] = true;
    }
    let mut out = String::new();
    push_n(n, &mut out)?;
    let mut bits = BitWriter::new();
    for j in 1..n {
        for i in 0..j {
            bits.push(adj[i * n + j]);
        }
    }
    bits.pad_with(false);
    out.push_str(&bits.into_chars());
    Ok(out)
}

/// Decodes graph6 (optional ">>graph6<<" header allowed).
pub fn decode_graph6(text: &str) -> Result<Network> {
    let t = text.trim();
    let t = t.strip_prefix(GRAPH6_HEADER).unwrap_or(t);
    let bytes = check_ascii(t)?;
    let (n, rest) = read_n(bytes)?;
    let need = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if rest.len() != need {
        return Err(Error::Graph6(format!(
            "expected {need} data characters for n={n}, got {}",
            rest.len()
        )));
    }
    let mut bits = BitReader::new(rest);
    let mut g = fresh_network(n)?;
    for j in 1..n {
        for i in 0..j {
            if bits.take(1).ok_or_else(|| Error::Graph6("truncated data".into()))? == 1 {
                g.add_simple(i as u32, j as u32)?;
            }
        }
    }
    Ok(g)
}

/// Encodes a multigraph in sparse6 (leading ':').
pub fn encode_sparse6(g: &Network) -> Result<String> {
    let (n, index) = vertex_index(g);
    let k = vertex_bits(n);
    let mut pairs: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (index[&e.u], index[&e.v]);
            (a.max(b), a.min(b))
        })
        .collect();
    pairs.sort_unstable();
    let mut out = String::from(":");
    push_n(n, &mut out)?;
    let mut bits = BitWriter::new();
    let mut curv = 0usize;
    for (v, u) in pairs {
        if v == curv {
            bits.push(false);
            bits.push_value(u, k);
        } else if v == curv + 1 {
            curv += 1;
            bits.push(true);
            bits.push_value(u, k);
        } else {
            curv = v;
            bits.push(true);
            bits.push_value(v, k);
            bits.push(false);
            bits.push_value(u, k);
        }
    }
    // Padding: all 1-bits, except that a short all-ones tail could be
    // misread as one extra item "b=1, x=ones" that increments the current
    // vertex to n-1 and then emits a spurious edge when n is an exact power
    // of two (x = 2^k - 1 = n - 1 is then a valid vertex number).  Guard by
    // starting the padding with a 0 in exactly that situation.
    let pad = bits.padding_needed();
    if k < 6 && n == (1 << k) && pad >= k && curv < n.saturating_sub(1) {
        bits.push(false);
    }
    bits.pad_with(true);
    out.push_str(&bits.into_chars());
    Ok(out)
}

/// Decodes sparse6 (optional ">>sparse6<<" header allowed).  Loop items are
/// rejected because networks have no self-loops.
pub fn decode_sparse6(text: &str) -> Result<Network> {
    let t = text.trim();
    let t = t.strip_prefix(SPARSE6_HEADER).unwrap_or(t);
    let t = t
        .strip_prefix(':')
        .ok_or_else(|| Error::Graph6("sparse6 must start with ':'".into()))?;
    let bytes = check_ascii(t)?;
    let (n, rest) = read_n(bytes)?;
    let k = vertex_bits(n);
    let mut bits = BitReader::new(rest);
    let mut g = fresh_network(n)?;
    let mut curv = 0usize;
    while let (Some(b), Some(x)) = (bits.take(1), bits.take(k)) {
        if b == 1 {
            curv += 1;
        }
        if x >= n as u64 || curv >= n {
            break;
        }
        let x = x as usize;
        if x > curv {
            curv = x;
        } else if x == curv {
            return Err(Error::Graph6("self-loops are not supported".into()));
        } else {
            g.add_simple(x as u32, curv as u32)?;
        }
    }
    Ok(g)
}

fn fresh_network(n: usize) -> Result<Network> {
    let mut g = Network::new_k5();
    for v in 0..n {
        g.add_vertex(v as u32);
    }
    Ok(g)
}

fn vertex_index(g: &Network) -> (usize, BTreeMap<u32, usize>) {
    let index: BTreeMap<u32, usize> =
        g.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    (index.len(), index)
}

/// Smallest k >= 1 with 2^k >= n.
fn vertex_bits(n: usize) -> usize {
    let mut k = 1;
    while (1usize << k) < n {
        k += 1;
    }
    k
}

fn push_n(n: usize, out: &mut String) -> Result<()> {
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else if n <= 258_047 {
        out.push(126 as char);
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + 63) as char);
        }
    } else {
        return Err(Error::Graph6(format!("graph too large to encode (n={n})")));
    }
    Ok(())
}

fn read_n(bytes: &[u8]) -> Result<(usize, &[u8])> {
    match bytes {
        [] => Err(Error::Graph6("empty input".into())),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Error::Graph6("truncated vertex count".into()));
            }
            Ok((sextets_value(&rest[..6]), &rest[6..]))
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::Graph6("truncated vertex count".into()));
            }
            Ok((sextets_value(&rest[..3]), &rest[3..]))
        }
        [b, rest @ ..] => Ok(((b - 63) as usize, rest)),
    }
}

fn sextets_value(bytes: &[u8]) -> usize {
    bytes.iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize)
}

fn check_ascii(t: &str) -> Result<&[u8]> {
    let bytes = t.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Graph6(format!("invalid character 0x{b:02x}")));
    }
    Ok(bytes)
}

struct BitWriter {
    bits: Vec<bool>,
}

impl BitWriter {
    fn new() -> Self {
        Self { bits: Vec::new() }
    }

    fn push(&mut self, b: bool) {
        self.bits.push(b);
    }

    /// Pushes the low `width` bits of `value`, most significant first.
    fn push_value(&mut self, value: usize, width: usize) {
        for i in (0..width).rev() {
            self.bits.push((value >> i) & 1 == 1);
        }
    }

    fn padding_needed(&self) -> usize {
        (6 - self.bits.len() % 6) % 6
    }

    fn pad_with(&mut self, b: bool) {
        while self.bits.len() % 6 != 0 {
            self.bits.push(b);
        }
    }

    fn into_chars(self) -> String {
        self.bits
            .chunks(6)
            .map(|c| {
                let v = c.iter().fold(0u8, |acc, &b| (acc << 1) | b as u8);
                (v + 63) as char
            })
            .collect()
    }
}

struct BitReader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> BitReader<'a> {
    fn new(data: &'a [u8]) -> Self {
        Self { data, pos: 0 }
    }

    /// Next `width` bits as an integer (MSB first); None if exhausted.
    fn take(&mut self, width: usize) -> Option<u64> {
        if self.pos + width > self.data.len() * 6 {
            return None;
        }
        let mut v = 0u64;
        for _ in 0..width {
            let byte = (self.data[self.pos / 6] - 63) as u64;
            let bit = (byte >> (5 - self.pos % 6)) & 1;
            v = (v << 1) | bit;
            self.pos += 1;
        }
        Some(v)
    }
}
