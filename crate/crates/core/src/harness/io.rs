//! Point CSV and image file formats.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{QcError, Result};
use crate::geometry::Point;
use crate::raster::RasterImage;

/// Formats `v` positionally with 17 significant digits, enough to round-trip any `f64`.
pub fn format_sig17(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.16e}", v.abs());
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i64 = exp.parse().expect("integer exponent");
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let sign = if v.is_sign_negative() && v != 0.0 { "-" } else { "" };
    let body = if exp >= 0 {
        let int_len = exp as usize + 1;
        if int_len >= digits.len() {
            format!("{digits}{}", "0".repeat(int_len - digits.len()))
        } else {
            format!("{}.{}", &digits[..int_len], &digits[int_len..])
        }
    } else {
        format!("0.{}{digits}", "0".repeat((-exp - 1) as usize))
    };
    format!("{sign}{body}")
}

pub fn write_points_csv(mut w: impl Write, points: &[Point]) -> Result<()> {
    writeln!(w, "x,y")?;
    for p in points {
        writeln!(w, "{},{}", format_sig17(p.x), format_sig17(p.y))?;
    }
    Ok(())
}

pub fn read_points_csv(r: impl Read) -> Result<Vec<Point>> {
    let mut reader = BufReader::new(r);
    let mut line = String::new();
    let mut offset = 0usize;
    let mut points = Vec::new();
    let mut first = true;
    loop {
        line.clear();
        let read = reader.read_line(&mut line)?;
        if read == 0 {
            break;
        }
        let text = line.trim_end_matches(['\n', '\r']);
        if first {
            if text != "x,y" {
                return Err(QcError::Parse { offset, message: format!("expected header 'x,y', found '{text}'") });
            }
            first = false;
        } else if !text.is_empty() {
            let parsed = text.split_once(',').and_then(|(x, y)| Some(Point::new(x.trim().parse().ok()?, y.trim().parse().ok()?)));
            match parsed {
                Some(p) if p.x.is_finite() && p.y.is_finite() => points.push(p),
                _ => return Err(QcError::Parse { offset, message: format!("malformed point row '{text}'") }),
            }
        }
        offset += read;
    }
    if first {
        return Err(QcError::Parse { offset: 0, message: "missing header 'x,y'".into() });
    }
    Ok(points)
}

pub fn save_points(path: &Path, points: &[Point]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_points_csv(&mut w, points)?;
    w.flush()?;
    Ok(())
}

pub fn load_points(path: &Path) -> Result<Vec<Point>> {
    read_points_csv(File::open(path)?)
}

/// Binary PPM (`P6`, maxval 255).
pub fn write_ppm(mut w: impl Write, img: &RasterImage) -> Result<()> {
    write!(w, "P6\n{} {}\n255\n", img.width, img.height)?;
    w.write_all(&img.as_bytes())?;
    Ok(())
}

struct HeaderScanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl HeaderScanner<'_> {
    fn skip_space_and_comments(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u32> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| QcError::Parse { offset: start, message: format!("expected {what}") })
    }
}

pub fn read_ppm(mut r: impl Read) -> Result<RasterImage> {
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    if !bytes.starts_with(b"P6") {
        return Err(QcError::Parse { offset: 0, message: "expected magic 'P6'".into() });
    }
    let mut sc = HeaderScanner { bytes: &bytes, pos: 2 };
    let width = sc.number("width")?;
    let height = sc.number("height")?;
    let maxval_at = sc.pos;
    let maxval = sc.number("maxval")?;
    if maxval != 255 {
        return Err(QcError::Parse { offset: maxval_at, message: format!("unsupported maxval {maxval}") });
    }
    if width == 0 || height == 0 {
        return Err(QcError::Parse { offset: 3, message: format!("empty image {width}x{height}") });
    }
    match bytes.get(sc.pos) {
        Some(c) if c.is_ascii_whitespace() => sc.pos += 1,
        _ => return Err(QcError::Parse { offset: sc.pos, message: "expected whitespace after maxval".into() }),
    }
    let need = width as usize * height as usize * 3;
    let payload = &bytes[sc.pos..];
    if payload.len() < need {
        return Err(QcError::Parse {
            offset: bytes.len(),
            message: format!("pixel data ends after {} of {need} bytes", payload.len()),
        });
    }
    let pixels = payload[..need].chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect();
    RasterImage::from_pixels(width, height, pixels)
}

fn is_png(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("png"))
}

/// Writes PPM, or PNG when the path ends in `.png` and the `png` feature is enabled.
pub fn save_image(path: &Path, img: &RasterImage) -> Result<()> {
    if is_png(path) {
        return png_io::save(path, img);
    }
    let mut w = BufWriter::new(File::create(path)?);
    write_ppm(&mut w, img)?;
    w.flush()?;
    Ok(())
}

pub fn load_image(path: &Path) -> Result<RasterImage> {
    if is_png(path) {
        return png_io::load(path);
    }
    read_ppm(BufReader::new(File::open(path)?))
}

#[cfg(feature = "png")]
mod png_io {
    use super::*;

    pub fn save(path: &Path, img: &RasterImage) -> Result<()> {
        let w = BufWriter::new(File::create(path)?);
        let mut enc = png::Encoder::new(w, img.width, img.height);
        enc.set_color(png::ColorType::Rgb);
        enc.set_depth(png::BitDepth::Eight);
        let mut writer = enc.write_header().map_err(|e| QcError::Io(e.to_string()))?;
        writer.write_image_data(&img.as_bytes()).map_err(|e| QcError::Io(e.to_string()))?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<RasterImage> {
        let mut dec = png::Decoder::new(File::open(path)?);
        dec.set_transformations(png::Transformations::EXPAND | png::Transformations::STRIP_16);
        let mut reader = dec.read_info().map_err(|e| QcError::Io(e.to_string()))?;
        let mut buf = vec![0; reader.output_buffer_size()];
        let info = reader.next_frame(&mut buf).map_err(|e| QcError::Io(e.to_string()))?;
        let step = match info.color_type {
            png::ColorType::Rgb => 3,
            png::ColorType::Rgba => 4,
            png::ColorType::Grayscale => 1,
            png::ColorType::GrayscaleAlpha => 2,
            png::ColorType::Indexed => return Err(QcError::Io("unexpanded palette image".into())),
        };
        let pixels = buf[..info.buffer_size()]
            .chunks_exact(step)
            .map(|c| if step < 3 { [c[0]; 3] } else { [c[0], c[1], c[2]] })
            .collect();
        RasterImage::from_pixels(info.width, info.height, pixels)
    }
}

#[cfg(not(feature = "png"))]
mod png_io {
    use super::*;

    fn unsupported() -> QcError {
        QcError::InvalidArgument("PNG support is disabled; rebuild with the 'png' feature or use .ppm".into())
    }

    pub fn save(_: &Path, _: &RasterImage) -> Result<()> {
        Err(unsupported())
    }

    pub fn load(_: &Path) -> Result<RasterImage> {
        Err(unsupported())
    }
}
