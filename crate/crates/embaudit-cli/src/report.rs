//! Output helpers: every CSV (and generated word list) begins with a `#`
//! comment line carrying the tool version, the config hash and the seeds,
//! so a result file identifies the run that produced it.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::CliError;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut hex = String::with_capacity(64);
    for byte in digest {
        hex.push_str(&format!("{byte:02x}"));
    }
    hex
}

/// Open an output file with the standard comment header already written.
pub fn create_stamped(
    path: &Path,
    command: &str,
    config_hash: &str,
    metadata: &[(&str, String)],
) -> Result<BufWriter<File>, CliError> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)
            .map_err(|e| CliError::data(format!("cannot create {}: {e}", parent.display())))?;
    }
    let file = File::create(path)
        .map_err(|e| CliError::data(format!("cannot create {}: {e}", path.display())))?;
    let mut writer = BufWriter::new(file);
    let mut header = format!("# embaudit {TOOL_VERSION} command={command} config_sha256={config_hash}");
    for (name, value) in metadata {
        header.push_str(&format!(" {name}={value}"));
    }
    writeln!(writer, "{header}")
        .map_err(|e| CliError::data(format!("cannot write {}: {e}", path.display())))?;
    Ok(writer)
}
