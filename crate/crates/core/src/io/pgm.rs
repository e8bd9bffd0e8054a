//! 8-bit grayscale PGM images, binary (P5) or ASCII (P2). No other
//! variants; the point is bit-exact reproducibility without codec
//! dependencies.

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    pub width: usize,
    pub height: usize,
    /// Row-major intensities in [0, 255].
    pub pixels: Vec<f64>,
}

impl GrayImage {
    #[inline]
    pub fn at(&self, x: usize, y: usize) -> f64 {
        self.pixels[y * self.width + x]
    }
}

/// Parse a P5 or P2 PGM with maxval <= 255.
pub fn parse_pgm(bytes: &[u8]) -> Result<GrayImage> {
    let mut cursor = 0usize;
    let magic = next_token(bytes, &mut cursor)?;
    let binary = match magic.as_slice() {
        b"P5" => true,
        b"P2" => false,
        other => {
            return Err(Error::Parse(format!(
                "unsupported PGM variant: magic {:?}",
                String::from_utf8_lossy(other)
            )))
        }
    };
    let width = parse_dim(bytes, &mut cursor, "width")?;
    let height = parse_dim(bytes, &mut cursor, "height")?;
    let maxval = parse_dim(bytes, &mut cursor, "maxval")?;
    if maxval == 0 || maxval > 255 {
        return Err(Error::Parse(format!(
            "unsupported PGM variant: maxval {maxval} (need 1..=255)"
        )));
    }
    let count = width * height;
    let mut pixels = Vec::with_capacity(count);
    if binary {
        // exactly one whitespace byte separates the header from raster
        if cursor >= bytes.len() {
            return Err(Error::Parse("PGM truncated before raster".into()));
        }
        cursor += 1;
        if bytes.len() < cursor + count {
            return Err(Error::Parse(format!(
                "PGM raster truncated: need {} bytes, have {}",
                count,
                bytes.len() - cursor
            )));
        }
        pixels.extend(bytes[cursor..cursor + count].iter().map(|&b| b as f64));
    } else {
        for _ in 0..count {
            let tok = next_token(bytes, &mut cursor)?;
            let v: u32 = std::str::from_utf8(&tok)
                .ok()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse("PGM: bad ASCII pixel".into()))?;
            if v as usize > maxval {
                return Err(Error::Parse(format!(
                    "PGM pixel {v} exceeds maxval {maxval}"
                )));
            }
            pixels.push(v as f64);
        }
    }
    Ok(GrayImage {
        width,
        height,
        pixels,
    })
}

fn parse_dim(bytes: &[u8], cursor: &mut usize, what: &str) -> Result<usize> {
    let tok = next_token(bytes, cursor)?;
    let v: usize = std::str::from_utf8(&tok)
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse(format!("PGM: bad {what}")))?;
    if v == 0 && what != "maxval" {
        return Err(Error::Parse(format!("PGM: zero {what}")));
    }
    Ok(v)
}

/// Next whitespace-delimited token, skipping `#` comments.
fn next_token(bytes: &[u8], cursor: &mut usize) -> Result<Vec<u8>> {
    let n = bytes.len();
    loop {
        while *cursor < n && bytes[*cursor].is_ascii_whitespace() {
            *cursor += 1;
        }
        if *cursor < n && bytes[*cursor] == b'#' {
            while *cursor < n && bytes[*cursor] != b'\n' {
                *cursor += 1;
            }
            continue;
        }
        break;
    }
    if *cursor >= n {
        return Err(Error::Parse("PGM header truncated".into()));
    }
    let start = *cursor;
    while *cursor < n && !bytes[*cursor].is_ascii_whitespace() {
        *cursor += 1;
    }
    Ok(bytes[start..*cursor].to_vec())
}

/// Render a P5 PGM from intensities; values are rounded and clamped to
/// [0, 255]. Used to build synthetic fixtures.
pub fn write_pgm_p5(width: usize, height: usize, pixels: &[f64]) -> Vec<u8> {
    let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
    out.extend(
        pixels
            .iter()
            .map(|&v| v.round().clamp(0.0, 255.0) as u8),
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p5_round_trip() {
        let pixels: Vec<f64> = (0..12).map(|i| (i * 20 % 256) as f64).collect();
        let bytes = write_pgm_p5(4, 3, &pixels);
        let img = parse_pgm(&bytes).unwrap();
        assert_eq!(img.width, 4);
        assert_eq!(img.height, 3);
        assert_eq!(img.pixels, pixels);
    }

    #[test]
    fn p2_with_comments() {
        let text = b"P2\n# a comment\n3 2\n255\n0 10 20\n30 40 50\n";
        let img = parse_pgm(text).unwrap();
        assert_eq!(img.width, 3);
        assert_eq!(img.at(2, 1), 50.0);
    }

    #[test]
    fn sixteen_bit_is_rejected() {
        let text = b"P5\n2 2\n65535\n\0\0\0\0\0\0\0\0";
        assert!(matches!(parse_pgm(text), Err(Error::Parse(_))));
    }

    #[test]
    fn other_magics_are_rejected() {
        assert!(parse_pgm(b"P6\n1 1\n255\n\0\0\0").is_err());
        assert!(parse_pgm(b"hello").is_err());
    }

    #[test]
    fn truncated_raster_is_rejected() {
        assert!(parse_pgm(b"P5\n4 4\n255\n\0\0").is_err());
    }
}
