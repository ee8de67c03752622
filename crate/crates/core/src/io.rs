//! File formats. Elements and moduli are lowercase hex strings without a
//! prefix; parsers also accept `0x` and uppercase digits.
//!
//! * sets: `{"n": 8, "modulus": "11b", "elements": ["2", ...]}`
//! * lookup tables: `{"n": 8, "modulus": "11b", "lut": [...]}` with `2^n` entries
//! * hexanomial reports: see [`HexReport`]
//! * spectra: CSV `value,multiplicity`, ascending by value
//! * `N_{m,k}` table: CSV, row `m` lists `k = 1..=m`, no header

use std::fmt::Display;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::decomposition::ElemSet;
use crate::error::{Error, Result};
use crate::field::{check_field_params, max_degree, parse_hex_u64, Elem, FieldCtx};
use crate::hexanomial::HexReport;
use crate::vbf::{Spectrum, Vbf};

mod hex_u64 {
    use super::*;

    pub fn serialize<S: Serializer>(v: &u64, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{v:x}"))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<u64, D::Error> {
        let s = std::borrow::Cow::<str>::deserialize(d)?;
        parse_hex_u64(&s).map_err(serde::de::Error::custom)
    }
}

fn check_elems(n: u32, elems: &[Elem]) -> Result<()> {
    match elems.iter().find(|e| (e.bits() as u64) >> n != 0) {
        Some(e) => Err(Error::ElementOutOfRange {
            value: e.bits() as u64,
            n,
        }),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetFile {
    pub n: u32,
    #[serde(with = "hex_u64")]
    pub modulus: u64,
    pub elements: Vec<Elem>,
}

impl SetFile {
    pub fn new(ctx: &FieldCtx, set: &ElemSet) -> Self {
        SetFile {
            n: ctx.n(),
            modulus: ctx.modulus(),
            elements: set.as_slice().to_vec(),
        }
    }

    pub fn field(&self) -> Result<FieldCtx> {
        FieldCtx::with_modulus(self.n, self.modulus)
    }

    pub fn set(&self) -> ElemSet {
        ElemSet::from_unsorted(self.elements.clone())
    }
}

pub fn set_to_json(ctx: &FieldCtx, set: &ElemSet) -> String {
    serde_json::to_string(&SetFile::new(ctx, set)).expect("serializable")
}

/// Parses and validates a set file. Elements must be strictly ascending.
pub fn parse_set_json(s: &str) -> Result<SetFile> {
    let f: SetFile = serde_json::from_str(s)?;
    check_field_params(f.n, f.modulus)?;
    check_elems(f.n, &f.elements)?;
    if f.elements.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parse(
            "set elements must be strictly ascending".into(),
        ));
    }
    Ok(f)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VbfFile {
    pub n: u32,
    #[serde(with = "hex_u64")]
    pub modulus: u64,
    pub lut: Vec<Elem>,
}

impl VbfFile {
    pub fn new(f: &Vbf) -> Self {
        let ctx = f.ctx();
        VbfFile {
            n: ctx.n(),
            modulus: ctx.modulus(),
            lut: f.lut().to_vec(),
        }
    }

    pub fn into_vbf(self) -> Result<Vbf> {
        let ctx = Arc::new(FieldCtx::with_modulus(self.n, self.modulus)?);
        Vbf::new(ctx, self.lut)
    }
}

pub fn vbf_to_json(f: &Vbf) -> String {
    serde_json::to_string(&VbfFile::new(f)).expect("serializable")
}

pub fn parse_vbf_json(s: &str) -> Result<VbfFile> {
    let f: VbfFile = serde_json::from_str(s)?;
    check_field_params(f.n, f.modulus)?;
    let expected = 1usize << f.n;
    if f.lut.len() != expected {
        return Err(Error::LutLength {
            expected,
            got: f.lut.len(),
        });
    }
    check_elems(f.n, &f.lut)?;
    Ok(f)
}

pub fn hex_report_to_json(r: &HexReport) -> String {
    serde_json::to_string(r).expect("serializable")
}

/// Parses a report and checks its internal shape (not the counts themselves).
pub fn parse_hex_report_json(s: &str) -> Result<HexReport> {
    let r: HexReport = serde_json::from_str(s)?;
    let n = r.m.checked_mul(2).filter(|&n| n >= 2 && n <= max_degree());
    let Some(n) = n else {
        return Err(Error::DegreeOutOfRange {
            n: r.m.saturating_mul(2),
            max: max_degree(),
        });
    };
    if r.k == 0 || r.k >= n {
        return Err(Error::KOutOfRange { k: r.k, n });
    }
    check_elems(n, &r.coefficients)?;
    if r.coefficients.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parse(
            "coefficients must be strictly ascending".into(),
        ));
    }
    if r.n_enumerated != r.coefficients.len() as u64 {
        return Err(Error::Parse(format!(
            "count_enumerated = {} but {} coefficients listed",
            r.n_enumerated,
            r.coefficients.len()
        )));
    }
    Ok(r)
}

pub fn spectrum_to_csv<T: Ord + Copy + Display>(spec: &Spectrum<T>) -> String {
    let mut out = String::from("value,multiplicity\n");
    for (v, c) in spec.iter() {
        out.push_str(&format!("{v},{c}\n"));
    }
    out
}

fn parse_spectrum_csv<T: Ord + Copy>(
    s: &str,
    value: impl Fn(&str) -> Result<T>,
) -> Result<Spectrum<T>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(s.as_bytes());
    let headers = rdr.headers().map_err(csv_err)?;
    if headers.len() != 2 || &headers[0] != "value" || &headers[1] != "multiplicity" {
        return Err(Error::Parse("expected header value,multiplicity".into()));
    }
    let mut spec = Spectrum::default();
    let mut last: Option<T> = None;
    for rec in rdr.records() {
        let rec = rec.map_err(csv_err)?;
        if rec.len() != 2 {
            return Err(Error::Parse(format!(
                "expected 2 fields, got {}",
                rec.len()
            )));
        }
        let v = value(&rec[0])?;
        let c: u64 = rec[1]
            .parse()
            .map_err(|e| Error::Parse(format!("multiplicity {:?}: {e}", &rec[1])))?;
        if c == 0 {
            return Err(Error::Parse("zero multiplicity".into()));
        }
        if last.is_some_and(|l| l >= v) {
            return Err(Error::Parse("values must be strictly ascending".into()));
        }
        last = Some(v);
        spec.insert(v, c);
    }
    Ok(spec)
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn parse_walsh_csv(s: &str) -> Result<Spectrum<i64>> {
    parse_spectrum_csv(s, |v| {
        v.parse::<i64>()
            .map_err(|e| Error::Parse(format!("value {v:?}: {e}")))
    })
}

/// Hyperplane labels are hex elements; range is not checked here.
pub fn parse_hyperplane_csv(s: &str) -> Result<Spectrum<Elem>> {
    parse_spectrum_csv(s, |v| {
        let x = parse_hex_u64(v)?;
        u32::try_from(x)
            .map(Elem::from_bits)
            .map_err(|_| Error::Parse(format!("label {v:?} wider than 32 bits")))
    })
}

pub fn table3_to_csv(rows: &[Vec<u64>]) -> String {
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row.iter().map(u64::to_string).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::t1_set;
    use crate::field::build_field;
    use crate::hexanomial::table3;
    use crate::vbf::gold;

    #[test]
    fn set_round_trip() {
        let ctx = build_field(8).unwrap();
        let t1 = t1_set(&ctx);
        let json = set_to_json(&ctx, &t1);
        assert!(json.starts_with(r#"{"n":8,"modulus":"11b","elements":["#));
        let back = parse_set_json(&json).unwrap();
        assert_eq!(back.set(), t1);
        assert_eq!(back.field().unwrap().modulus(), 0x11b);
    }

    #[test]
    fn set_rejects_bad_input() {
        assert!(parse_set_json(r#"{"n":8,"modulus":"11c","elements":[]}"#).is_err());
        assert!(parse_set_json(r#"{"n":8,"modulus":"11d","elements":["100"]}"#).is_err());
        assert!(parse_set_json(r#"{"n":8,"modulus":"11d","elements":["3","2"]}"#).is_err());
        assert!(parse_set_json(r#"{"n":8,"modulus":"11d","elements":[],"x":1}"#).is_err());
        assert!(parse_set_json(r#"{"n":8,"modulus":"0x11D","elements":["0XA"]}"#).is_ok());
    }

    #[test]
    fn vbf_round_trip() {
        let ctx = Arc::new(build_field(6).unwrap());
        let f = gold(ctx, 1).unwrap();
        let back = parse_vbf_json(&vbf_to_json(&f))
            .unwrap()
            .into_vbf()
            .unwrap();
        assert_eq!(back.lut(), f.lut());
    }

    #[test]
    fn vbf_rejects_wrong_length() {
        let err = parse_vbf_json(r#"{"n":4,"modulus":"13","lut":["0"]}"#).unwrap_err();
        assert_eq!(
            err,
            Error::LutLength {
                expected: 16,
                got: 1
            }
        );
    }

    #[test]
    fn spectrum_csv_round_trip() {
        let spec: Spectrum<i64> = [-8i64, 0, 0, 8, 8, 8].into_iter().collect();
        let csv = spectrum_to_csv(&spec);
        assert_eq!(csv, "value,multiplicity\n-8,1\n0,2\n8,3\n");
        assert_eq!(parse_walsh_csv(&csv).unwrap(), spec);
        assert!(parse_walsh_csv("value,multiplicity\n8,1\n-8,1\n").is_err());
        assert!(parse_walsh_csv("v,m\n").is_err());
    }

    #[test]
    fn hyperplane_csv_round_trip() {
        let spec: Spectrum<Elem> = [Elem::from_bits(0xa), Elem::from_bits(3)]
            .into_iter()
            .collect();
        let csv = spectrum_to_csv(&spec);
        assert_eq!(csv, "value,multiplicity\n3,1\na,1\n");
        assert_eq!(parse_hyperplane_csv(&csv).unwrap(), spec);
    }

    #[test]
    fn table3_layout() {
        let csv = table3_to_csv(&table3(3));
        assert_eq!(csv, "0\n4,0\n18,18,0\n");
    }

    #[test]
    fn report_shape_checks() {
        let ok = r#"{"m":2,"k":1,"count_formula":4,"count_enumerated":1,"count_bruteforce":4,"coefficients":["2"]}"#;
        assert!(parse_hex_report_json(ok).is_ok());
        let bad_k = ok.replace(r#""k":1"#, r#""k":4"#);
        assert!(parse_hex_report_json(&bad_k).is_err());
        let bad_len = ok.replace(r#""count_enumerated":1"#, r#""count_enumerated":2"#);
        assert!(parse_hex_report_json(&bad_len).is_err());
    }
}
