//! Snapshot and trace CSV readers.

use std::io::Read;

use popalloc::{EventKind, EventTrace, SessionSnapshot, TraceEvent};

fn reader<R: Read>(src: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(src)
}

fn check_header<R: Read>(rdr: &mut csv::Reader<R>, want: &[&str]) -> Result<(), String> {
    let header = rdr.headers().map_err(|e| e.to_string())?;
    if header.iter().ne(want.iter().copied()) {
        return Err(format!(
            "expected header `{}`, found `{}`",
            want.join(","),
            header.iter().collect::<Vec<_>>().join(",")
        ));
    }
    Ok(())
}

/// `session_id,viewers`
pub fn read_snapshot<R: Read>(src: R) -> Result<Vec<SessionSnapshot>, String> {
    let mut rdr = reader(src);
    check_header(&mut rdr, &["session_id", "viewers"])?;
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| e.to_string())?;
        let row = i + 1;
        if rec.len() != 2 {
            return Err(format!("snapshot row {row}: expected 2 fields"));
        }
        let viewers = rec[1]
            .parse::<u64>()
            .map_err(|_| format!("snapshot row {row}: bad viewer count `{}`", &rec[1]))?;
        out.push(SessionSnapshot::new(&rec[0], viewers));
    }
    Ok(out)
}

/// `timestamp,event,session_id`
pub fn read_trace<R: Read>(src: R) -> Result<EventTrace, String> {
    let mut rdr = reader(src);
    check_header(&mut rdr, &["timestamp", "event", "session_id"])?;
    let mut events = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| e.to_string())?;
        let row = i + 1;
        if rec.len() != 3 {
            return Err(format!("trace row {row}: expected 3 fields"));
        }
        let ts = rec[0]
            .parse::<f64>()
            .map_err(|_| format!("trace row {row}: bad timestamp `{}`", &rec[0]))?;
        let kind: EventKind = rec[1]
            .parse()
            .map_err(|e| format!("trace row {row}: {e}"))?;
        events.push(TraceEvent::new(ts, kind, &rec[2]));
    }
    Ok(EventTrace::new(events))
}
