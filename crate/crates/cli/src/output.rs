use std::fs;
use std::path::Path;

use crate::Failure;

/// Write `text` to `dir/name`, creating `dir` if needed.
pub fn write_file(dir: &Path, name: &str, text: &str) -> Result<(), Failure> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

pub fn pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("value serializes");
    s.push('\n');
    s
}

/// Print to stdout. A closed pipe (`ontic ... | head`) is not an error.
pub fn print(text: &str) -> Result<(), Failure> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}
