//! PGM (P5/P2) and PBM (P4/P1) readers and writers.
//!
//! Saving always emits the canonical binary form: `P5\n<w> <h>\n255\n` plus
//! raw bytes for images, `P4\n<w> <h>\n` plus packed rows for watermarks.
//! Loading accepts ASCII variants and `#` comments in headers. Parse errors
//! carry the byte offset where the problem was found. PBM convention 1 =
//! black is kept verbatim as Boolean `true`.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::image::{GrayImage, Watermark};

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
    path: &'a Path,
}

impl<'a> Cursor<'a> {
    fn new(data: &'a [u8], path: &'a Path) -> Self {
        Cursor { data, pos: 0, path }
    }

    fn malformed(&self, detail: impl Into<String>) -> Error {
        Error::Malformed {
            path: self.path.to_path_buf(),
            offset: self.pos,
            detail: detail.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.data.get(self.pos).copied()
    }

    /// Skips whitespace and `#` comments (comment runs to end of line).
    fn skip_separators(&mut self) {
        loop {
            match self.peek() {
                Some(b) if b.is_ascii_whitespace() => self.pos += 1,
                Some(b'#') => {
                    while let Some(b) = self.peek() {
                        self.pos += 1;
                        if b == b'\n' {
                            break;
                        }
                    }
                }
                _ => return,
            }
        }
    }

    fn read_uint(&mut self, what: &str) -> Result<u32> {
        self.skip_separators();
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(b) = self.peek() {
            if !b.is_ascii_digit() {
                break;
            }
            value = value * 10 + u64::from(b - b'0');
            if value > u64::from(u32::MAX) {
                return Err(self.malformed(format!("{what} out of range")));
            }
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.malformed(format!("expected {what}")));
        }
        Ok(value as u32)
    }

    /// Consumes the single whitespace byte that separates the header from a
    /// binary payload.
    fn expect_single_whitespace(&mut self) -> Result<()> {
        match self.peek() {
            Some(b) if b.is_ascii_whitespace() => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.malformed("expected whitespace before payload")),
        }
    }

    fn remaining(&self) -> &'a [u8] {
        &self.data[self.pos..]
    }
}

fn read_file(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::io(path, e))
}

fn read_magic(cur: &mut Cursor) -> Result<[u8; 2]> {
    if cur.data.len() < 2 {
        return Err(cur.malformed("missing magic number"));
    }
    let magic = [cur.data[0], cur.data[1]];
    cur.pos = 2;
    Ok(magic)
}

fn read_dims(cur: &mut Cursor) -> Result<(u32, u32)> {
    let width = cur.read_uint("width")?;
    let height = cur.read_uint("height")?;
    if width == 0 || height == 0 {
        return Err(cur.malformed("dimensions must be positive"));
    }
    Ok((width, height))
}

pub fn load_pgm(path: impl AsRef<Path>) -> Result<GrayImage> {
    let path = path.as_ref();
    let data = read_file(path)?;
    let mut cur = Cursor::new(&data, path);
    let magic = read_magic(&mut cur)?;
    match &magic {
        b"P5" => {
            let (width, height) = read_dims(&mut cur)?;
            let maxval = cur.read_uint("maxval")?;
            if maxval != 255 {
                return Err(Error::MaxvalUnsupported {
                    path: path.to_path_buf(),
                    maxval,
                });
            }
            cur.expect_single_whitespace()?;
            let expected = width as usize * height as usize;
            let payload = cur.remaining();
            if payload.len() < expected {
                return Err(Error::Truncated {
                    path: path.to_path_buf(),
                    offset: cur.pos,
                    expected,
                    found: payload.len(),
                });
            }
            GrayImage::new(width, height, payload[..expected].to_vec())
        }
        b"P2" => {
            let (width, height) = read_dims(&mut cur)?;
            let maxval = cur.read_uint("maxval")?;
            if maxval != 255 {
                return Err(Error::MaxvalUnsupported {
                    path: path.to_path_buf(),
                    maxval,
                });
            }
            let expected = width as usize * height as usize;
            let mut pixels = Vec::with_capacity(expected);
            for _ in 0..expected {
                let v = cur.read_uint("pixel value")?;
                if v > 255 {
                    return Err(cur.malformed(format!("pixel value {v} exceeds maxval 255")));
                }
                pixels.push(v as u8);
            }
            GrayImage::new(width, height, pixels)
        }
        _ => Err(cur.malformed("not a PGM file (expected P5 or P2 magic)")),
    }
}

pub fn save_pgm(image: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut out = format!("P5\n{} {}\n255\n", image.width(), image.height()).into_bytes();
    out.extend_from_slice(image.pixels());
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

pub fn load_pbm(path: impl AsRef<Path>) -> Result<Watermark> {
    let path = path.as_ref();
    let data = read_file(path)?;
    let mut cur = Cursor::new(&data, path);
    let magic = read_magic(&mut cur)?;
    match &magic {
        b"P4" => {
            let (width, height) = read_dims(&mut cur)?;
            cur.expect_single_whitespace()?;
            let row_bytes = (width as usize).div_ceil(8);
            let expected = row_bytes * height as usize;
            let payload = cur.remaining();
            if payload.len() < expected {
                return Err(Error::Truncated {
                    path: path.to_path_buf(),
                    offset: cur.pos,
                    expected,
                    found: payload.len(),
                });
            }
            let mut bits = Vec::with_capacity(width as usize * height as usize);
            for y in 0..height as usize {
                let row = &payload[y * row_bytes..(y + 1) * row_bytes];
                for x in 0..width as usize {
                    let byte = row[x / 8];
                    bits.push((byte >> (7 - x % 8)) & 1 == 1);
                }
            }
            Watermark::new(width, height, bits)
        }
        b"P1" => {
            let (width, height) = read_dims(&mut cur)?;
            let expected = width as usize * height as usize;
            let mut bits = Vec::with_capacity(expected);
            while bits.len() < expected {
                cur.skip_separators();
                match cur.peek() {
                    Some(b'0') => bits.push(false),
                    Some(b'1') => bits.push(true),
                    Some(_) => return Err(cur.malformed("expected 0 or 1")),
                    None => {
                        return Err(Error::Truncated {
                            path: path.to_path_buf(),
                            offset: cur.pos,
                            expected: expected - bits.len(),
                            found: 0,
                        })
                    }
                }
                cur.pos += 1;
            }
            Watermark::new(width, height, bits)
        }
        _ => Err(cur.malformed("not a PBM file (expected P4 or P1 magic)")),
    }
}

pub fn save_pbm(watermark: &Watermark, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let width = watermark.width() as usize;
    let row_bytes = width.div_ceil(8);
    let mut out = format!("P4\n{} {}\n", watermark.width(), watermark.height()).into_bytes();
    for row in watermark.bits().chunks(width) {
        let mut packed = vec![0u8; row_bytes];
        for (x, &bit) in row.iter().enumerate() {
            if bit {
                packed[x / 8] |= 1 << (7 - x % 8);
            }
        }
        out.extend_from_slice(&packed);
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}
