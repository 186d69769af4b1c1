//! Binary cache for [`TermStats`].
//!
//! The format is internal and versioned: a magic tag, a format version,
//! a 32-byte content key, then the fields in little-endian length-prefixed
//! encoding. [`load`] returns `Ok(None)` when the file was written by a
//! different format version or for a different content key, so callers
//! can fall back to a fresh build.

use std::fs;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::Path;

use sha2::{Digest, Sha256};

use super::TermStats;
use crate::corpus::{Corpus, PreprocessConfig};
use crate::error::{Error, Result};

const MAGIC: &[u8; 4] = b"TCTS";
const VERSION: u32 = 1;

/// Content key of (corpus, preprocessing config). Statistics cached under
/// one key are valid only for an identical corpus and configuration.
pub fn cache_key(corpus: &Corpus, config: &PreprocessConfig) -> [u8; 32] {
    let mut h = Sha256::new();
    h.update(VERSION.to_le_bytes());
    for cat in corpus.categories() {
        h.update(cat.as_bytes());
        h.update([0]);
    }
    for doc in corpus.documents() {
        h.update(doc.id.as_bytes());
        h.update([0]);
        h.update(doc.label.as_bytes());
        h.update([0]);
        h.update([matches!(doc.split, crate::corpus::Split::Train) as u8]);
        for token in &doc.tokens {
            h.update(token.as_bytes());
            h.update([0]);
        }
        h.update([1]);
    }
    let mut stopwords: Vec<&String> = config.stopwords.iter().collect();
    stopwords.sort_unstable();
    for w in stopwords {
        h.update(w.as_bytes());
        h.update([0]);
    }
    h.update([
        config.stemming as u8,
        config.drop_numeric_tokens as u8,
        config.lowercase as u8,
    ]);
    h.update((config.min_token_length as u64).to_le_bytes());
    h.finalize().into()
}

/// Write `stats` to `path` under `key`.
pub fn save(path: &Path, stats: &TermStats, key: &[u8; 32]) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    write_stats(&mut w, stats, key).map_err(|e| Error::io(path, e))?;
    w.flush().map_err(|e| Error::io(path, e))
}

/// Read stats from `path` if it matches `key` and the current format
/// version; `Ok(None)` on mismatch, `Err` on a corrupt or unreadable file.
pub fn load(path: &Path, key: &[u8; 32]) -> Result<Option<TermStats>> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut r = BufReader::new(file);
    let mut magic = [0u8; 4];
    if r.read_exact(&mut magic).is_err() || &magic != MAGIC {
        return Ok(None);
    }
    let version = read_u32(&mut r).map_err(|e| Error::io(path, e))?;
    if version != VERSION {
        return Ok(None);
    }
    let mut stored_key = [0u8; 32];
    r.read_exact(&mut stored_key).map_err(|e| Error::io(path, e))?;
    if &stored_key != key {
        return Ok(None);
    }
    let stats = read_stats(&mut r).map_err(|e| Error::io(path, e))?;
    stats.validate()?;
    Ok(Some(stats))
}

fn write_stats<W: Write>(w: &mut W, stats: &TermStats, key: &[u8; 32]) -> io::Result<()> {
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(key)?;
    write_string_list(w, &stats.categories)?;
    write_u64(w, stats.n_docs as u64)?;
    write_u64_list(w, &stats.class_doc_counts.iter().map(|&c| c as u64).collect::<Vec<_>>())?;
    write_u32_list(w, &stats.doc_class)?;
    write_string_list(w, &stats.vocab)?;
    write_u64(w, stats.postings.len() as u64)?;
    for row in &stats.postings {
        write_u64(w, row.len() as u64)?;
        for &(doc, count) in row {
            w.write_all(&doc.to_le_bytes())?;
            w.write_all(&count.to_le_bytes())?;
        }
    }
    write_u32_list(w, &stats.df_global)?;
    write_u32_list(w, &stats.df_class)?;
    write_u64_list(w, &stats.tf_total)?;
    write_f64_list(w, &stats.tf_bar)?;
    write_f64_list(w, &stats.tf_bar_class)?;
    write_f64_list(w, &stats.s)?;
    Ok(())
}

fn read_stats<R: Read>(r: &mut R) -> io::Result<TermStats> {
    let categories = read_string_list(r)?;
    let n_docs = read_u64(r)? as usize;
    let class_doc_counts = read_u64_list(r)?.into_iter().map(|c| c as usize).collect();
    let doc_class = read_u32_list(r)?;
    let vocab = read_string_list(r)?;
    let n_rows = read_u64(r)? as usize;
    let mut postings = Vec::with_capacity(n_rows);
    for _ in 0..n_rows {
        let len = read_u64(r)? as usize;
        let mut row = Vec::with_capacity(len);
        for _ in 0..len {
            let doc = read_u32(r)?;
            let count = read_u32(r)?;
            row.push((doc, count));
        }
        postings.push(row);
    }
    let df_global = read_u32_list(r)?;
    let df_class = read_u32_list(r)?;
    let tf_total = read_u64_list(r)?;
    let tf_bar = read_f64_list(r)?;
    let tf_bar_class = read_f64_list(r)?;
    let s = read_f64_list(r)?;
    let index = vocab
        .iter()
        .enumerate()
        .map(|(i, t): (usize, &String)| (t.clone(), i as u32))
        .collect();
    Ok(TermStats {
        vocab,
        index,
        categories,
        n_docs,
        class_doc_counts,
        doc_class,
        postings,
        df_global,
        df_class,
        tf_total,
        tf_bar,
        tf_bar_class,
        s,
    })
}

fn write_u64<W: Write>(w: &mut W, v: u64) -> io::Result<()> {
    w.write_all(&v.to_le_bytes())
}

fn read_u64<R: Read>(r: &mut R) -> io::Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}

fn read_u32<R: Read>(r: &mut R) -> io::Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn write_string_list<W: Write>(w: &mut W, list: &[String]) -> io::Result<()> {
    write_u64(w, list.len() as u64)?;
    for s in list {
        write_u64(w, s.len() as u64)?;
        w.write_all(s.as_bytes())?;
    }
    Ok(())
}

fn read_string_list<R: Read>(r: &mut R) -> io::Result<Vec<String>> {
    let len = read_u64(r)? as usize;
    let mut out = Vec::with_capacity(len.min(1 << 20));
    for _ in 0..len {
        let slen = read_u64(r)? as usize;
        let mut buf = vec![0u8; slen];
        r.read_exact(&mut buf)?;
        out.push(String::from_utf8(buf).map_err(|e| {
            io::Error::new(io::ErrorKind::InvalidData, e)
        })?);
    }
    Ok(out)
}

fn write_u32_list<W: Write>(w: &mut W, list: &[u32]) -> io::Result<()> {
    write_u64(w, list.len() as u64)?;
    for &v in list {
        w.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

fn read_u32_list<R: Read>(r: &mut R) -> io::Result<Vec<u32>> {
    let len = read_u64(r)? as usize;
    let mut out = Vec::with_capacity(len.min(1 << 20));
    for _ in 0..len {
        out.push(read_u32(r)?);
    }
    Ok(out)
}

fn write_u64_list<W: Write>(w: &mut W, list: &[u64]) -> io::Result<()> {
    write_u64(w, list.len() as u64)?;
    for &v in list {
        write_u64(w, v)?;
    }
    Ok(())
}

fn read_u64_list<R: Read>(r: &mut R) -> io::Result<Vec<u64>> {
    let len = read_u64(r)? as usize;
    let mut out = Vec::with_capacity(len.min(1 << 20));
    for _ in 0..len {
        out.push(read_u64(r)?);
    }
    Ok(out)
}

fn write_f64_list<W: Write>(w: &mut W, list: &[f64]) -> io::Result<()> {
    write_u64(w, list.len() as u64)?;
    for &v in list {
        w.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

fn read_f64_list<R: Read>(r: &mut R) -> io::Result<Vec<f64>> {
    let len = read_u64(r)? as usize;
    let mut out = Vec::with_capacity(len.min(1 << 20));
    for _ in 0..len {
        let mut b = [0u8; 8];
        r.read_exact(&mut b)?;
        out.push(f64::from_le_bytes(b));
    }
    Ok(out)
}
