//! On-disk store of class-algebra structure constants.
//!
//! A cache file is JSON lines. The first line is the header
//! `{"format":"fixring-structure-constants","version":1}`; each later line
//! holds one product of class sums:
//! `{"n":4,"a":[2,1,1],"b":[2,1,1],"terms":[[[2,2],2],[[3,1],3],[[1,1,1,1],6]]}`
//! with `a <= b` in the crate's partition order.

use std::collections::{BTreeMap, HashMap};
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::combinatorics::Partition;
use crate::{Error, Result};

pub const CACHE_FORMAT: &str = "fixring-structure-constants";
pub const CACHE_VERSION: u32 = 1;
/// Environment variable naming the cache directory when none is given.
pub const CACHE_DIR_ENV: &str = "FIXRING_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Header {
    format: String,
    version: u32,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct Record {
    pub n: u32,
    pub a: Partition,
    pub b: Partition,
    pub terms: Vec<(Partition, u64)>,
}

pub(crate) type Table = HashMap<(Partition, Partition), BTreeMap<Partition, u64>>;

#[derive(Debug)]
pub(crate) struct StructureCache {
    path: PathBuf,
    writer: Mutex<()>,
}

impl StructureCache {
    pub fn open(dir: &Path, n: u32) -> Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(StructureCache {
            path: dir.join(format!("structure-constants-n{n}.jsonl")),
            writer: Mutex::new(()),
        })
    }

    pub fn load(&self, n: u32) -> Result<Table> {
        let mut table = Table::new();
        let file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(table),
            Err(e) => return Err(e.into()),
        };
        let mut lines = BufReader::new(file).lines();
        let header: Header = match lines.next() {
            Some(line) => serde_json::from_str(&line?)
                .map_err(|e| Error::Cache(format!("unreadable header: {e}")))?,
            None => return Ok(table),
        };
        if header.format != CACHE_FORMAT || header.version != CACHE_VERSION {
            return Err(Error::Cache(format!(
                "{} has format {:?} version {}, expected {CACHE_FORMAT:?} version {CACHE_VERSION}",
                self.path.display(),
                header.format,
                header.version
            )));
        }
        for line in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let rec: Record = serde_json::from_str(&line)
                .map_err(|e| Error::Cache(format!("bad record: {e}")))?;
            if rec.n != n || rec.a.weight() != n || rec.b.weight() != n {
                return Err(Error::Cache(format!("record for the wrong n in {}", self.path.display())));
            }
            table.insert((rec.a, rec.b), rec.terms.into_iter().collect());
        }
        Ok(table)
    }

    pub fn append(&self, records: &[Record]) -> Result<()> {
        if records.is_empty() {
            return Ok(());
        }
        let _guard = self.writer.lock().expect("cache writer lock");
        let fresh = !self.path.exists() || fs::metadata(&self.path)?.len() == 0;
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        let mut buf = String::new();
        if fresh {
            let header = Header { format: CACHE_FORMAT.into(), version: CACHE_VERSION };
            buf.push_str(&serde_json::to_string(&header)?);
            buf.push('\n');
        }
        for r in records {
            buf.push_str(&serde_json::to_string(r)?);
            buf.push('\n');
        }
        f.write_all(buf.as_bytes())?;
        Ok(())
    }
}
