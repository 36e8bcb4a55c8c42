use std::io::Write;

use serde::Serialize;

use super::record::ScanRecord;
use super::ScanError;
use crate::theorems::FilterReport;

/// Receives scan output in ascending order of m (or p).
pub trait ReportSink {
    fn record(&mut self, record: &ScanRecord) -> Result<(), ScanError>;
    fn filter_report(&mut self, report: &FilterReport) -> Result<(), ScanError>;
    fn finish(&mut self) -> Result<(), ScanError>;
}

/// Discards everything.
#[derive(Debug, Default)]
pub struct NullSink;

impl ReportSink for NullSink {
    fn record(&mut self, _: &ScanRecord) -> Result<(), ScanError> {
        Ok(())
    }

    fn filter_report(&mut self, _: &FilterReport) -> Result<(), ScanError> {
        Ok(())
    }

    fn finish(&mut self) -> Result<(), ScanError> {
        Ok(())
    }
}

/// Keeps everything in memory.
#[derive(Debug, Default)]
pub struct VecSink {
    pub records: Vec<ScanRecord>,
    pub filter_reports: Vec<FilterReport>,
}

impl ReportSink for VecSink {
    fn record(&mut self, record: &ScanRecord) -> Result<(), ScanError> {
        self.records.push(record.clone());
        Ok(())
    }

    fn filter_report(&mut self, report: &FilterReport) -> Result<(), ScanError> {
        self.filter_reports.push(report.clone());
        Ok(())
    }

    fn finish(&mut self) -> Result<(), ScanError> {
        Ok(())
    }
}

#[derive(Serialize)]
struct CsvRecordRow<'a> {
    m: u64,
    period: u64,
    ratio_num: u64,
    ratio_den: u64,
    method: &'a str,
    flags: String,
}

fn join<T: ToString>(values: &[T]) -> String {
    values
        .iter()
        .map(T::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

#[derive(Serialize)]
struct CsvFilterRow<'a> {
    prime: u64,
    filter: &'a str,
    bound: u64,
    all_divisors: String,
    surviving: String,
    paper_answer: String,
    true_period: u64,
    agrees: bool,
}

/// CSV with a header row; list-valued columns are joined with `;`.
pub struct CsvSink<W: Write> {
    writer: csv::Writer<W>,
}

impl<W: Write> CsvSink<W> {
    pub fn new(inner: W) -> Self {
        CsvSink {
            writer: csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(inner),
        }
    }

    pub fn into_inner(self) -> Result<W, ScanError> {
        self.writer
            .into_inner()
            .map_err(|e| ScanError::Io(e.into_error()))
    }
}

impl<W: Write> ReportSink for CsvSink<W> {
    fn record(&mut self, r: &ScanRecord) -> Result<(), ScanError> {
        self.writer.serialize(CsvRecordRow {
            m: r.m,
            period: r.period,
            ratio_num: r.ratio_num,
            ratio_den: r.ratio_den,
            method: r.method.as_str(),
            flags: r.flags_joined(),
        })?;
        Ok(())
    }

    fn filter_report(&mut self, r: &FilterReport) -> Result<(), ScanError> {
        self.writer.serialize(CsvFilterRow {
            prime: r.prime,
            filter: match r.filter {
                crate::theorems::Filter::Theorem1 => "theorem1",
                crate::theorems::Filter::Theorem2 => "theorem2",
            },
            bound: r.bound.bound,
            all_divisors: join(&r.all_divisors.divisors),
            surviving: join(&r.surviving),
            paper_answer: r.paper_answer.map(|d| d.to_string()).unwrap_or_default(),
            true_period: r.true_period,
            agrees: r.agrees,
        })?;
        Ok(())
    }

    fn finish(&mut self) -> Result<(), ScanError> {
        self.writer.flush()?;
        Ok(())
    }
}

/// A JSON array with one compact object per line.
pub struct JsonSink<W: Write> {
    out: W,
    items: u64,
}

impl<W: Write> JsonSink<W> {
    pub fn new(out: W) -> Self {
        JsonSink { out, items: 0 }
    }

    pub fn into_inner(self) -> W {
        self.out
    }

    fn item<T: Serialize>(&mut self, value: &T) -> Result<(), ScanError> {
        self.out
            .write_all(if self.items == 0 { b"[\n" } else { b",\n" })?;
        serde_json::to_writer(&mut self.out, value)?;
        self.items += 1;
        Ok(())
    }
}

impl<W: Write> ReportSink for JsonSink<W> {
    fn record(&mut self, record: &ScanRecord) -> Result<(), ScanError> {
        self.item(record)
    }

    fn filter_report(&mut self, report: &FilterReport) -> Result<(), ScanError> {
        self.item(report)
    }

    fn finish(&mut self) -> Result<(), ScanError> {
        self.out
            .write_all(if self.items == 0 { b"[]\n" } else { b"\n]\n" })?;
        self.out.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::record::Flag;
    use crate::fibmod::Method;

    fn sample() -> Vec<ScanRecord> {
        let mut a = ScanRecord::new(1, 1, Method::LcmComposition, vec![]);
        a.flags.push(Flag::NewMaximum);
        let mut b = ScanRecord::new(10, 60, Method::LcmComposition, vec![]);
        b.flags = vec![Flag::RatioSix, Flag::NewMaximum];
        vec![a, b]
    }

    #[test]
    fn csv_layout() {
        let mut sink = CsvSink::new(Vec::new());
        for r in sample() {
            sink.record(&r).unwrap();
        }
        sink.finish().unwrap();
        let text = String::from_utf8(sink.into_inner().unwrap()).unwrap();
        assert_eq!(
            text,
            "m,period,ratio_num,ratio_den,method,flags\n\
             1,1,1,1,lcm_composition,new_maximum\n\
             10,60,60,10,lcm_composition,ratio_six;new_maximum\n"
        );
    }

    #[test]
    fn json_layout_and_round_trip() {
        let mut sink = JsonSink::new(Vec::new());
        for r in sample() {
            sink.record(&r).unwrap();
        }
        sink.finish().unwrap();
        let text = String::from_utf8(sink.into_inner()).unwrap();
        assert_eq!(
            text,
            "[\n{\"m\":1,\"period\":1,\"ratio_num\":1,\"ratio_den\":1,\"method\":\"lcm_composition\",\"flags\":[\"new_maximum\"]},\n\
             {\"m\":10,\"period\":60,\"ratio_num\":60,\"ratio_den\":10,\"method\":\"lcm_composition\",\"flags\":[\"ratio_six\",\"new_maximum\"]}\n]\n"
        );
        let back: Vec<ScanRecord> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, sample());
    }

    #[test]
    fn empty_json_is_an_empty_array() {
        let mut sink = JsonSink::new(Vec::new());
        sink.finish().unwrap();
        assert_eq!(sink.into_inner(), b"[]\n");
    }
}
