use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileKind {
    Correlation,
    Spectrum,
    Weighted,
}

impl ProfileKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ProfileKind::Correlation => "correlation",
            ProfileKind::Spectrum => "spectrum",
            ProfileKind::Weighted => "weighted",
        }
    }
}

impl fmt::Display for ProfileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProfileKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "correlation" => Ok(ProfileKind::Correlation),
            "spectrum" => Ok(ProfileKind::Spectrum),
            "weighted" => Ok(ProfileKind::Weighted),
            other => Err(Error::Parse(format!("unknown profile kind `{other}`"))),
        }
    }
}

/// Index arithmetic for shifted products.
///
/// `Circular` wraps `n - l` modulo `N` so every lag sums exactly `N` terms;
/// `Truncated` keeps only `n ≥ l`. Both divide by `N`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    #[default]
    Circular,
    Truncated,
}

impl Boundary {
    pub fn as_str(self) -> &'static str {
        match self {
            Boundary::Circular => "circular",
            Boundary::Truncated => "truncated",
        }
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Boundary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "circular" => Ok(Boundary::Circular),
            "truncated" => Ok(Boundary::Truncated),
            other => Err(Error::Parse(format!("unknown boundary mode `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProfileMeta {
    pub mapping: String,
    /// Length of the sequence the profile was computed from.
    pub len: usize,
    /// `None` for operators without a boundary choice (the spectrum).
    pub boundary: Option<Boundary>,
}

/// Operator output on an integer grid of lags or frequencies.
#[derive(Clone, Debug, PartialEq)]
pub struct Profile {
    kind: ProfileKind,
    params: Vec<usize>,
    values: Vec<f64>,
    meta: ProfileMeta,
}

impl Profile {
    pub fn new(
        kind: ProfileKind,
        params: Vec<usize>,
        values: Vec<f64>,
        meta: ProfileMeta,
    ) -> Result<Self> {
        if params.len() != values.len() {
            return Err(Error::Parse(format!(
                "{} indices but {} values",
                params.len(),
                values.len()
            )));
        }
        if params.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse(
                "profile indices must be strictly increasing".into(),
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Parse("profile values must be finite".into()));
        }
        Ok(Self {
            kind,
            params,
            values,
            meta,
        })
    }

    /// Profile on the contiguous grid `0..values.len()`.
    pub(crate) fn contiguous(kind: ProfileKind, values: Vec<f64>, meta: ProfileMeta) -> Self {
        debug_assert!(values.iter().all(|v| v.is_finite()));
        Self {
            kind,
            params: (0..values.len()).collect(),
            values,
            meta,
        }
    }

    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    pub fn params(&self) -> &[usize] {
        &self.params
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn meta(&self) -> &ProfileMeta {
        &self.meta
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn with_mapping(mut self, mapping: impl Into<String>) -> Self {
        self.meta.mapping = mapping.into();
        self
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        let boundary = self.meta.boundary.map_or("none", Boundary::as_str);
        writeln!(
            w,
            "# kind={},N={},mapping={},boundary={}",
            self.kind, self.meta.len, self.meta.mapping, boundary
        )?;
        writeln!(w, "index,value")?;
        for (i, v) in self.params.iter().zip(&self.values) {
            writeln!(w, "{i},{v}")?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV output is ASCII")
    }

    pub fn read_csv<R: BufRead>(r: R) -> Result<Self> {
        let mut kind = None;
        let mut meta = ProfileMeta {
            mapping: String::new(),
            len: 0,
            boundary: None,
        };
        let mut header_seen = false;
        let mut params = Vec::new();
        let mut values = Vec::new();
        for line in r.lines() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                for field in comment.trim().split(',') {
                    let Some((key, value)) = field.split_once('=') else {
                        continue;
                    };
                    match key.trim() {
                        "kind" => kind = Some(value.parse()?),
                        "N" => {
                            meta.len = value
                                .parse()
                                .map_err(|_| Error::Parse(format!("bad N `{value}`")))?
                        }
                        "mapping" => meta.mapping = value.to_string(),
                        "boundary" if value == "none" => meta.boundary = None,
                        "boundary" => meta.boundary = Some(value.parse()?),
                        _ => {}
                    }
                }
                continue;
            }
            if !header_seen {
                if line != "index,value" {
                    return Err(Error::Parse(format!(
                        "expected `index,value`, got `{line}`"
                    )));
                }
                header_seen = true;
                continue;
            }
            let (i, v) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad profile row `{line}`")))?;
            params.push(
                i.parse()
                    .map_err(|_| Error::Parse(format!("bad index `{i}`")))?,
            );
            values.push(
                v.parse()
                    .map_err(|_| Error::Parse(format!("bad value `{v}`")))?,
            );
        }
        let kind = kind.ok_or_else(|| Error::Parse("missing `# kind=` line".into()))?;
        Profile::new(kind, params, values, meta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn meta() -> ProfileMeta {
        ProfileMeta {
            mapping: "voss".into(),
            len: 3,
            boundary: Some(Boundary::Circular),
        }
    }

    #[test]
    fn rejects_unsorted_or_nonfinite() {
        assert!(
            Profile::new(ProfileKind::Correlation, vec![0, 0], vec![1.0, 2.0], meta()).is_err()
        );
        assert!(Profile::new(ProfileKind::Correlation, vec![0, 1], vec![1.0], meta()).is_err());
        assert!(Profile::new(ProfileKind::Correlation, vec![0], vec![f64::NAN], meta()).is_err());
    }

    #[test]
    fn csv_layout() {
        let p = Profile::new(
            ProfileKind::Correlation,
            vec![0, 1, 2],
            vec![1.0, -0.5, 0.25],
            meta(),
        )
        .unwrap();
        let text = p.to_csv_string();
        assert_eq!(
            text,
            "# kind=correlation,N=3,mapping=voss,boundary=circular\nindex,value\n0,1\n1,-0.5\n2,0.25\n"
        );
        let back = Profile::read_csv(text.as_bytes()).unwrap();
        assert_eq!(back, p);
    }
}
