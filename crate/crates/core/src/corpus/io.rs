use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

use super::{
    parse_annotated_with_stats, serialize_annotated, Corpus, DuplicateId, ParseError, ParseStats,
};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: ParseError,
    },
    #[error("no .txt documents in {0}")]
    Empty(PathBuf),
    #[error(transparent)]
    DuplicateId(#[from] DuplicateId),
}

/// Replace CRLF (and lone CR) line endings with LF.
///
/// Returns the text and whether anything changed.
pub fn normalize_newlines(text: &str) -> (String, bool) {
    if !text.contains('\r') {
        return (text.to_string(), false);
    }
    (text.replace("\r\n", "\n").replace('\r', "\n"), true)
}

/// Load every `*.txt` file in `dir` as an annotated document, sorted by
/// file name. The file stem is the document id.
pub fn load_corpus_dir(dir: &Path) -> Result<(Corpus, ParseStats), CorpusError> {
    let io_err = |path: &Path| {
        let path = path.to_path_buf();
        move |source| CorpusError::Io { path, source }
    };
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io_err(dir))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|e| e == "txt"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(CorpusError::Empty(dir.to_path_buf()));
    }

    let mut stats = ParseStats::default();
    let mut docs = Vec::with_capacity(paths.len());
    for path in paths {
        let raw = fs::read_to_string(&path).map_err(io_err(&path))?;
        let (text, normalized) = normalize_newlines(&raw);
        let id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let doc = parse_annotated_with_stats(&id, &text, &mut stats)
            .map_err(|source| CorpusError::Parse { path, source })?;
        if normalized {
            stats.crlf_normalized_documents += 1;
        }
        docs.push(doc);
    }
    Ok((Corpus::new(docs)?, stats))
}

/// Write each document to `dir/<id>.txt` in the inline annotation format.
pub fn write_corpus_dir(corpus: &Corpus, dir: &Path) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    for doc in corpus.docs() {
        fs::write(
            dir.join(format!("{}.txt", doc.id())),
            serialize_annotated(doc),
        )?;
    }
    Ok(())
}
