//! Archive container: a deterministic tar of the manifest and every stream,
//! wrapped in a gzip, bzip2 or xz (LZMA) layer.

use std::collections::HashMap;
use std::io::{self, Read, Write};

use crate::config::{Backend, Config};
use crate::error::{Error, Result};
use crate::manifest::{ArchiveManifest, MANIFEST_NAME};
use crate::model::EncodedStream;

const GZIP_MAGIC: &[u8] = &[0x1f, 0x8b];
const BZIP2_MAGIC: &[u8] = b"BZh";
const XZ_MAGIC: &[u8] = &[0xfd, b'7', b'z', b'X', b'Z', 0x00];

pub fn detect_backend(archive: &[u8]) -> Option<Backend> {
    if archive.starts_with(XZ_MAGIC) {
        Some(Backend::Lzma)
    } else if archive.starts_with(BZIP2_MAGIC) {
        Some(Backend::Bzip2)
    } else if archive.starts_with(GZIP_MAGIC) {
        Some(Backend::Gzip)
    } else {
        None
    }
}

pub fn backend_compress(data: &[u8], backend: Backend, level: u32) -> Result<Vec<u8>> {
    let unavailable = |e: io::Error| Error::BackendUnavailable(format!("{backend}: {e}"));
    match backend {
        Backend::Gzip => {
            let mut enc = flate2::write::GzEncoder::new(Vec::new(), flate2::Compression::new(level));
            enc.write_all(data)?;
            enc.finish().map_err(unavailable)
        }
        Backend::Bzip2 => {
            let mut enc = bzip2::write::BzEncoder::new(Vec::new(), bzip2::Compression::new(level));
            enc.write_all(data)?;
            enc.finish().map_err(unavailable)
        }
        Backend::Lzma => {
            let mut enc = xz2::write::XzEncoder::new(Vec::new(), level);
            enc.write_all(data)?;
            enc.finish().map_err(unavailable)
        }
    }
}

/// Peels the outer compression layer, detected from its magic bytes.
pub fn backend_decompress(archive: &[u8]) -> Result<(Backend, Vec<u8>)> {
    let backend =
        detect_backend(archive).ok_or_else(|| Error::UnsupportedVersion("archive magic not recognised".into()))?;
    let mut out = Vec::new();
    let read = match backend {
        Backend::Gzip => flate2::read::GzDecoder::new(archive).read_to_end(&mut out),
        Backend::Bzip2 => bzip2::read::BzDecoder::new(archive).read_to_end(&mut out),
        Backend::Lzma => xz2::read::XzDecoder::new(archive).read_to_end(&mut out),
    };
    read.map_err(|e| Error::corrupt(format!("{backend} layer: {e}")))?;
    Ok((backend, out))
}

fn append(builder: &mut tar::Builder<Vec<u8>>, name: &str, data: &[u8]) -> Result<()> {
    let mut header = tar::Header::new_ustar();
    header.set_path(name)?;
    header.set_size(data.len() as u64);
    header.set_mode(0o644);
    header.set_mtime(0);
    header.set_uid(0);
    header.set_gid(0);
    header.set_entry_type(tar::EntryType::Regular);
    header.set_cksum();
    builder.append(&header, data)?;
    Ok(())
}

/// Inner container: manifest first, then streams in manifest order.
pub fn write_container(manifest: &ArchiveManifest, streams: &[EncodedStream]) -> Result<Vec<u8>> {
    let names: Vec<&str> = manifest.stream_names().collect();
    if names.len() != streams.len() || names.iter().zip(streams).any(|(n, s)| *n != s.name) {
        return Err(Error::inconsistent("manifest does not list exactly the packed streams"));
    }
    let mut builder = tar::Builder::new(Vec::new());
    append(&mut builder, MANIFEST_NAME, &manifest.to_bytes())?;
    for s in streams {
        append(&mut builder, &s.name, &s.payload)?;
    }
    Ok(builder.into_inner()?)
}

pub fn pack(chunks: &[Vec<EncodedStream>], manifest: &ArchiveManifest, cfg: &Config) -> Result<Vec<u8>> {
    let streams: Vec<EncodedStream> = chunks.iter().flatten().cloned().collect();
    let inner = write_container(manifest, &streams)?;
    backend_compress(&inner, cfg.backend, cfg.effective_level())
}

/// Reads the inner container and checks it against its manifest.
pub fn read_container(inner: &[u8]) -> Result<(ArchiveManifest, Vec<EncodedStream>)> {
    let corrupt = |e: io::Error| Error::corrupt(format!("container: {e}"));
    let mut archive = tar::Archive::new(inner);
    let mut members: Vec<(String, Vec<u8>)> = Vec::new();
    for entry in archive.entries().map_err(corrupt)? {
        let mut entry = entry.map_err(corrupt)?;
        let name = entry.path_bytes().iter().map(|&b| b as char).collect::<String>();
        let size = entry.header().size().map_err(corrupt)?;
        if size > inner.len() as u64 {
            return Err(Error::corrupt("member larger than the container"));
        }
        let mut data = Vec::with_capacity(size as usize);
        entry.read_to_end(&mut data).map_err(corrupt)?;
        if data.len() as u64 != size {
            return Err(Error::corrupt(format!("member {name} truncated")));
        }
        members.push((name, data));
    }
    let mut members = members.into_iter();
    let (first, manifest_bytes) = members.next().ok_or_else(|| Error::corrupt("empty container"))?;
    if first != MANIFEST_NAME {
        return Err(Error::corrupt("container does not start with the manifest"));
    }
    let manifest = ArchiveManifest::from_bytes(&manifest_bytes)?;
    let mut by_name: HashMap<String, Vec<u8>> = members.collect();
    let mut streams = Vec::new();
    for chunk in &manifest.chunks {
        for entry in &chunk.streams {
            let payload =
                by_name.remove(&entry.name).ok_or_else(|| Error::corrupt(format!("member {} missing", entry.name)))?;
            if payload.len() as u64 != entry.size {
                return Err(Error::corrupt(format!("member {} has the wrong size", entry.name)));
            }
            streams.push(EncodedStream { name: entry.name.clone(), kind: entry.kind, payload });
        }
    }
    if let Some(extra) = by_name.keys().next() {
        return Err(Error::corrupt(format!("member {extra} not in manifest")));
    }
    Ok((manifest, streams))
}

pub fn unpack(archive: &[u8]) -> Result<(ArchiveManifest, Vec<EncodedStream>)> {
    let (_, inner) = backend_decompress(archive)?;
    read_container(&inner)
}
