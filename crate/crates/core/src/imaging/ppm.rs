//! Binary PPM (`P6`, maxval 255).

use std::path::Path;

use super::ImageRGB;
use crate::error::{Error, Result};

struct Header {
    width: usize,
    height: usize,
    payload_start: usize,
}

fn parse_header(bytes: &[u8]) -> Result<Header> {
    let mut pos = 0;
    let mut fields: Vec<String> = Vec::with_capacity(4);
    while fields.len() < 4 {
        match bytes.get(pos) {
            None => return Err(Error::MalformedHeader("header ends early".into())),
            Some(b'#') => {
                while bytes.get(pos).is_some_and(|&b| b != b'\n') {
                    pos += 1;
                }
            }
            Some(b) if b.is_ascii_whitespace() => pos += 1,
            Some(_) => {
                let start = pos;
                while bytes.get(pos).is_some_and(|b| !b.is_ascii_whitespace() && *b != b'#') {
                    pos += 1;
                }
                fields.push(String::from_utf8_lossy(&bytes[start..pos]).into_owned());
            }
        }
    }
    if fields[0] != "P6" {
        return Err(Error::MalformedHeader(format!(
            "magic must be P6, found `{}`",
            fields[0]
        )));
    }
    let num = |s: &str, what: &str| -> Result<usize> {
        s.parse::<usize>()
            .ok()
            .filter(|&v| v > 0)
            .ok_or_else(|| Error::MalformedHeader(format!("invalid {what} `{s}`")))
    };
    let width = num(&fields[1], "width")?;
    let height = num(&fields[2], "height")?;
    let maxval: u32 = fields[3]
        .parse()
        .map_err(|_| Error::MalformedHeader(format!("invalid maxval `{}`", fields[3])))?;
    if maxval != 255 {
        return Err(Error::UnsupportedMaxval(maxval));
    }
    // exactly one whitespace byte separates the header from the raster
    match bytes.get(pos) {
        Some(b) if b.is_ascii_whitespace() => pos += 1,
        _ => return Err(Error::MalformedHeader("missing separator after maxval".into())),
    }
    Ok(Header {
        width,
        height,
        payload_start: pos,
    })
}

pub fn decode_ppm(bytes: &[u8]) -> Result<ImageRGB> {
    let h = parse_header(bytes)?;
    let expected = h.width * h.height * 3;
    let payload = &bytes[h.payload_start..];
    if payload.len() < expected {
        return Err(Error::TruncatedPayload {
            expected,
            found: payload.len(),
        });
    }
    ImageRGB::new(h.width, h.height, payload[..expected].to_vec())
}

pub fn encode_ppm(img: &ImageRGB) -> Vec<u8> {
    let mut out = format!("P6\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend_from_slice(img.pixels());
    out
}

pub fn read_ppm(path: impl AsRef<Path>) -> Result<ImageRGB> {
    decode_ppm(&std::fs::read(path)?)
}

pub fn write_ppm(img: &ImageRGB, path: impl AsRef<Path>) -> Result<()> {
    Ok(std::fs::write(path, encode_ppm(img))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_white_pixel() {
        let img = decode_ppm(b"P6\n1 1\n255\n\xff\xff\xff").unwrap();
        assert_eq!(img.pixels(), &[255, 255, 255]);
    }

    #[test]
    fn comments_and_round_trip() {
        let raw = b"P6 # made by hand\n2 # width\n2\n255\n\x00\x10\x20\x30\x40\x50\x60\x70\x80\x90\xa0\xb0";
        let img = decode_ppm(raw).unwrap();
        assert_eq!((img.width(), img.height()), (2, 2));
        let bytes = encode_ppm(&img);
        assert_eq!(decode_ppm(&bytes).unwrap(), img);
        assert_eq!(encode_ppm(&decode_ppm(&bytes).unwrap()), bytes);
    }

    #[test]
    fn header_errors() {
        assert!(matches!(decode_ppm(b"P3\n1 1\n255\n"), Err(Error::MalformedHeader(_))));
        assert!(matches!(decode_ppm(b"P6\n1 1\n"), Err(Error::MalformedHeader(_))));
        assert!(matches!(decode_ppm(b"P6\n0 1\n255\n"), Err(Error::MalformedHeader(_))));
        assert!(matches!(
            decode_ppm(b"P6\n1 1\n65535\n\0\0\0\0\0\0"),
            Err(Error::UnsupportedMaxval(65535))
        ));
        assert!(matches!(
            decode_ppm(b"P6\n2 1\n255\n\0\0\0"),
            Err(Error::TruncatedPayload { expected: 6, found: 3 })
        ));
    }
}
