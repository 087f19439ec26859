use std::fs;
use std::io::{self, Write};

use serde::Serialize;

use crate::{Context, Failure, Format};

/// Writes either the text lines or the JSON value, depending on the format.
pub fn emit<T: Serialize>(ctx: &Context, text: &str, json: &T) -> Result<(), Failure> {
    let body = match ctx.format {
        Format::Text => text.to_string(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(json).map_err(io::Error::other)?;
            s.push('\n');
            s
        }
    };
    match &ctx.output {
        Some(path) => fs::write(path, body)?,
        None => {
            let mut out = io::stdout().lock();
            out.write_all(body.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

pub fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}
