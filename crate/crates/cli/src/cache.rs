//! On-disk cache of complete enumerations, keyed by `(n, k)` and a hash of the
//! solver version. Entries are re-verified when loaded.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use sigmaeq::SolutionSet;

use crate::render::EnumerateDoc;
use crate::CliError;

pub const ENV_VAR: &str = "SIGMAEQ_CACHE_DIR";
const DEFAULT_DIR: &str = ".sigmaeq-cache";
/// Bump when a solver change could alter results.
const SOLVER_REVISION: u32 = 1;

pub fn version_hash() -> String {
    let digest = Sha256::digest(format!(
        "sigmaeq {} solver r{SOLVER_REVISION}",
        sigmaeq::VERSION
    ));
    hex::encode(&digest[..8])
}

pub fn default_dir() -> PathBuf {
    std::env::var_os(ENV_VAR)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_DIR))
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(root: &Path) -> Self {
        Cache {
            dir: root.join(version_hash()),
        }
    }

    pub fn path(&self, n: usize, k: usize) -> PathBuf {
        self.dir.join(format!("solutions_n{n}_k{k}.json"))
    }

    /// A cached set, or `None` if absent or unreadable.
    pub fn load(&self, n: usize, k: usize) -> Option<SolutionSet> {
        let text = fs::read_to_string(self.path(n, k)).ok()?;
        let doc: EnumerateDoc = match serde_json::from_str(&text) {
            Ok(d) => d,
            Err(e) => {
                eprintln!("warning: ignoring unreadable cache entry: {e}");
                return None;
            }
        };
        match doc.into_set() {
            Ok(set) if set.n == n && set.k == k && set.complete => Some(set),
            Ok(_) => None,
            Err(e) => {
                eprintln!("warning: ignoring invalid cache entry: {e}");
                None
            }
        }
    }

    /// Writes to a temporary file and renames it into place.
    pub fn store(&self, set: &SolutionSet) -> Result<(), CliError> {
        fs::create_dir_all(&self.dir)?;
        let target = self.path(set.n, set.k);
        let tmp = self.dir.join(format!(
            ".solutions_n{}_k{}.{}.tmp",
            set.n,
            set.k,
            std::process::id()
        ));
        let mut f = fs::File::create(&tmp)?;
        f.write_all(serde_json::to_string(&EnumerateDoc::from_set(set))?.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, &target)?;
        Ok(())
    }
}
