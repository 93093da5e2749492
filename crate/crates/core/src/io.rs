//! Instance text format.
//!
//! ```text
//! # comment lines start with '#'
//! n m k
//! 1 2        <- set 0
//!            <- set 1 (empty)
//! 2 3 4      <- set 2
//! ```

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::setsys::{ElementId, SetSystem};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Header of an instance file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Header {
    pub n: u32,
    pub m: usize,
    pub k: usize,
}

/// Reads the header, then yields the sets one line at a time. Each set is
/// returned sorted and duplicate-free.
pub struct InstanceReader<R> {
    lines: std::io::Lines<R>,
    line_no: usize,
    header: Header,
    read: usize,
    done: bool,
}

impl<R: BufRead> InstanceReader<R> {
    pub fn new(reader: R) -> Result<Self> {
        let mut lines = reader.lines();
        let mut line_no = 0;
        let header = loop {
            line_no += 1;
            let line = match lines.next() {
                Some(l) => l?,
                None => return Err(parse_err(line_no, "missing header `n m k`")),
            };
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            break parse_header(trimmed, line_no)?;
        };
        Ok(Self { lines, line_no, header, read: 0, done: false })
    }

    pub fn header(&self) -> Header {
        self.header
    }

    /// Line number of the most recently consumed line.
    pub fn line_no(&self) -> usize {
        self.line_no
    }

    fn next_set(&mut self) -> Result<Option<Vec<ElementId>>> {
        loop {
            self.line_no += 1;
            let line = match self.lines.next() {
                Some(l) => l?,
                None if self.read < self.header.m => {
                    return Err(parse_err(
                        self.line_no,
                        format!("expected {} sets, found {}", self.header.m, self.read),
                    ))
                }
                None => return Ok(None),
            };
            let trimmed = line.trim();
            if trimmed.starts_with('#') {
                continue;
            }
            if self.read == self.header.m {
                if trimmed.is_empty() {
                    continue;
                }
                return Err(parse_err(self.line_no, format!("unexpected content after {} sets", self.header.m)));
            }
            let mut set = Vec::new();
            for tok in trimmed.split_whitespace() {
                let x: ElementId = tok
                    .parse()
                    .map_err(|_| parse_err(self.line_no, format!("`{tok}` is not an element ID")))?;
                if x == 0 || x > self.header.n {
                    return Err(parse_err(
                        self.line_no,
                        format!("element {x} outside the universe [1, {}]", self.header.n),
                    ));
                }
                set.push(x);
            }
            set.sort_unstable();
            set.dedup();
            self.read += 1;
            return Ok(Some(set));
        }
    }
}

impl<R: BufRead> Iterator for InstanceReader<R> {
    type Item = Result<Vec<ElementId>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        match self.next_set() {
            Ok(Some(set)) => Some(Ok(set)),
            Ok(None) => {
                self.done = true;
                None
            }
            Err(e) => {
                self.done = true;
                Some(Err(e))
            }
        }
    }
}

fn parse_header(line: &str, line_no: usize) -> Result<Header> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(parse_err(line_no, "header must be `n m k`"));
    }
    let num = |s: &str, what: &str| -> Result<u64> {
        s.parse().map_err(|_| parse_err(line_no, format!("{what} `{s}` is not a non-negative integer")))
    };
    let n = num(fields[0], "n")?;
    let m = num(fields[1], "m")? as usize;
    let k = num(fields[2], "k")? as usize;
    if n > u32::MAX as u64 {
        return Err(parse_err(line_no, format!("n = {n} exceeds the element ID range")));
    }
    if k < 1 || k > m {
        return Err(parse_err(line_no, format!("k = {k} must satisfy 1 <= k <= m = {m}")));
    }
    Ok(Header { n: n as u32, m, k })
}

pub fn read_instance<R: BufRead>(reader: R) -> Result<SetSystem> {
    let rd = InstanceReader::new(reader)?;
    let h = rd.header();
    let sets = rd.collect::<Result<Vec<_>>>()?;
    SetSystem::new(h.n, sets, h.k)
}

pub fn parse_instance(text: &str) -> Result<SetSystem> {
    read_instance(text.as_bytes())
}

pub fn write_instance<W: Write>(mut w: W, sys: &SetSystem) -> std::io::Result<()> {
    writeln!(w, "{} {} {}", sys.n(), sys.m(), sys.k())?;
    for set in sys.sets() {
        let mut first = true;
        for x in set {
            if !first {
                w.write_all(b" ")?;
            }
            write!(w, "{x}")?;
            first = false;
        }
        w.write_all(b"\n")?;
    }
    Ok(())
}

pub fn instance_to_string(sys: &SetSystem) -> String {
    let mut buf = Vec::new();
    write_instance(&mut buf, sys).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}
