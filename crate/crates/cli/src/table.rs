use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};

use crate::{Format, Global};

pub fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(std::io::stdout().lock())),
    })
}

/// Command line that produced an output, as a comment row.
pub fn invocation_comment() -> String {
    let args: Vec<String> = std::env::args().skip(1).collect();
    format!("# uniqcov {}", args.join(" "))
}

pub fn join_ids(ids: &[usize]) -> String {
    ids.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

/// Writes comment rows, then a delimited header and rows.
pub fn write_table(global: &Global, comments: &[String], header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut out = open_output(global.out.as_deref())?;
    writeln!(out, "{}", invocation_comment())?;
    for c in comments {
        writeln!(out, "{c}")?;
    }
    let delimiter = match global.format {
        Format::Csv => b',',
        Format::Tsv => b'\t',
    };
    let mut w = csv::WriterBuilder::new().delimiter(delimiter).from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}
