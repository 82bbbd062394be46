//! Parsing of raw GPS log files into validated, per-driver, time-sorted
//! sequences, plus optional bounding-box filtering.
//!
//! Two input layouts are supported: the T-Drive taxi line format
//! (`driver_id,YYYY-MM-DD HH:MM:SS,lon,lat`) and a generic CSV layout
//! described by a column-mapping config. Wall-clock times carry no zone
//! information, so they are interpreted at a fixed configurable UTC
//! offset (default +8). Only inter-sample deltas matter downstream, so a
//! fixed offset keeps those deltas exact.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use chrono::{DateTime, NaiveDateTime};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// Timestamp layout of T-Drive wall times.
const TDRIVE_TIME_FORMAT: &str = "%Y-%m-%d %H:%M:%S";

/// How many rejected-line diagnostics a load keeps verbatim.
const DIAGNOSTIC_CAP: usize = 100;

/// One timestamped geographic sample of one driver.
#[derive(Debug, Clone, PartialEq)]
pub struct GpsLog {
    /// Opaque driver identifier.
    pub driver_id: String,
    /// Seconds since the Unix epoch.
    pub timestamp: i64,
    /// Longitude in degrees, in `[-180, 180]`.
    pub longitude: f64,
    /// Latitude in degrees, in `[-90, 90]`.
    pub latitude: f64,
}

impl GpsLog {
    /// Build a log, validating coordinate ranges and the epoch bound.
    pub fn new(driver_id: impl Into<String>, timestamp: i64, longitude: f64, latitude: f64) -> Result<Self> {
        if !longitude.is_finite() || !(-180.0..=180.0).contains(&longitude) {
            return Err(Error::InvalidCoordinate(format!("longitude {longitude} not in [-180, 180]")));
        }
        if !latitude.is_finite() || !(-90.0..=90.0).contains(&latitude) {
            return Err(Error::InvalidCoordinate(format!("latitude {latitude} not in [-90, 90]")));
        }
        if timestamp < 0 {
            return Err(Error::InvalidCoordinate(format!("timestamp {timestamp} before Unix epoch")));
        }
        Ok(GpsLog { driver_id: driver_id.into(), timestamp, longitude, latitude })
    }
}

/// Axis-aligned geographic bounding box (a closed box on both axes).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub min_longitude: f64,
    pub max_longitude: f64,
    pub min_latitude: f64,
    pub max_latitude: f64,
}

impl Region {
    /// Build a region, requiring `min < max` on both axes.
    pub fn new(min_longitude: f64, max_longitude: f64, min_latitude: f64, max_latitude: f64) -> Result<Self> {
        if !(min_longitude < max_longitude) {
            return Err(Error::InvalidRegion(format!(
                "min_longitude {min_longitude} must be < max_longitude {max_longitude}"
            )));
        }
        if !(min_latitude < max_latitude) {
            return Err(Error::InvalidRegion(format!(
                "min_latitude {min_latitude} must be < max_latitude {max_latitude}"
            )));
        }
        Ok(Region { min_longitude, max_longitude, min_latitude, max_latitude })
    }

    /// Whether a log falls inside the closed box (boundaries included).
    pub fn contains(&self, log: &GpsLog) -> bool {
        log.longitude >= self.min_longitude
            && log.longitude <= self.max_longitude
            && log.latitude >= self.min_latitude
            && log.latitude <= self.max_latitude
    }
}

/// One driver's logs, sorted by timestamp (non-decreasing).
#[derive(Debug, Clone, PartialEq)]
pub struct DriverRecord {
    pub driver_id: String,
    pub logs: Vec<GpsLog>,
}

/// Column mapping for the generic CSV adapter.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CsvAdapterConfig {
    /// Zero-based column index of the driver id.
    pub driver_col: usize,
    /// Zero-based column index of the timestamp.
    pub time_col: usize,
    /// `chrono` format string for the timestamp column.
    pub time_format: String,
    /// Zero-based column index of the longitude.
    pub lon_col: usize,
    /// Zero-based column index of the latitude.
    pub lat_col: usize,
    /// Whether the first line of each file is a header to skip.
    pub has_header: bool,
}

/// Input layout selector for [`load_dataset`].
#[derive(Debug, Clone)]
pub enum InputFormat {
    /// T-Drive lines: `driver_id,YYYY-MM-DD HH:MM:SS,lon,lat`.
    TDrive {
        /// Fixed UTC offset of the wall times, in hours.
        utc_offset_hours: i32,
    },
    /// Generic CSV described by a column mapping.
    Csv {
        config: CsvAdapterConfig,
        /// Fixed UTC offset of the wall times, in hours.
        utc_offset_hours: i32,
    },
}

/// Result of loading a dataset: grouped records plus rejection counts.
#[derive(Debug, Clone)]
pub struct LoadReport {
    /// One record per driver id, driver ids in sorted order.
    pub records: Vec<DriverRecord>,
    /// Total lines read (excluding skipped headers).
    pub lines_read: usize,
    /// Lines rejected by per-line validation.
    pub skipped_lines: usize,
    /// Up to [`DIAGNOSTIC_CAP`] verbatim rejection diagnostics.
    pub diagnostics: Vec<String>,
}

fn wall_time_to_epoch(text: &str, format: &str, utc_offset_hours: i32) -> Result<i64> {
    let naive = NaiveDateTime::parse_from_str(text, format)
        .map_err(|e| Error::BadLogLine { reason: format!("unparsable datetime {text:?}: {e}") })?;
    Ok(naive.and_utc().timestamp() - i64::from(utc_offset_hours) * 3600)
}

fn epoch_to_wall_time(epoch: i64, utc_offset_hours: i32) -> String {
    let shifted = epoch + i64::from(utc_offset_hours) * 3600;
    let dt = DateTime::from_timestamp(shifted, 0).expect("local epoch seconds in chrono range");
    dt.naive_utc().format(TDRIVE_TIME_FORMAT).to_string()
}

/// Parse one T-Drive line: `driver_id,YYYY-MM-DD HH:MM:SS,lon,lat`.
pub fn parse_tdrive_line(line: &str, utc_offset_hours: i32) -> Result<GpsLog> {
    let fields: Vec<&str> = line.trim_end_matches(['\r', '\n']).split(',').collect();
    if fields.len() != 4 {
        return Err(Error::BadLogLine { reason: format!("expected 4 fields, got {}", fields.len()) });
    }
    let timestamp = wall_time_to_epoch(fields[1], TDRIVE_TIME_FORMAT, utc_offset_hours)?;
    let longitude: f64 = fields[2]
        .parse()
        .map_err(|_| Error::BadLogLine { reason: format!("unparsable longitude {:?}", fields[2]) })?;
    let latitude: f64 = fields[3]
        .parse()
        .map_err(|_| Error::BadLogLine { reason: format!("unparsable latitude {:?}", fields[3]) })?;
    GpsLog::new(fields[0], timestamp, longitude, latitude)
}

/// Render a log back into the T-Drive line format (6-decimal coordinates).
pub fn format_tdrive_line(log: &GpsLog, utc_offset_hours: i32) -> String {
    format!(
        "{},{},{:.6},{:.6}",
        log.driver_id,
        epoch_to_wall_time(log.timestamp, utc_offset_hours),
        log.longitude,
        log.latitude
    )
}

/// Parse one generic CSV line under a column-mapping config.
pub fn parse_csv_line(line: &str, config: &CsvAdapterConfig, utc_offset_hours: i32) -> Result<GpsLog> {
    let fields: Vec<&str> = line.trim_end_matches(['\r', '\n']).split(',').collect();
    let max_col = config
        .driver_col
        .max(config.time_col)
        .max(config.lon_col)
        .max(config.lat_col);
    if fields.len() <= max_col {
        return Err(Error::BadLogLine {
            reason: format!("expected at least {} fields, got {}", max_col + 1, fields.len()),
        });
    }
    let timestamp = wall_time_to_epoch(fields[config.time_col], &config.time_format, utc_offset_hours)?;
    let longitude: f64 = fields[config.lon_col]
        .parse()
        .map_err(|_| Error::BadLogLine { reason: format!("unparsable longitude {:?}", fields[config.lon_col]) })?;
    let latitude: f64 = fields[config.lat_col]
        .parse()
        .map_err(|_| Error::BadLogLine { reason: format!("unparsable latitude {:?}", fields[config.lat_col]) })?;
    GpsLog::new(fields[config.driver_col], timestamp, longitude, latitude)
}

/// Load every file, group logs by driver, and sort each group by time.
///
/// Rejected lines are counted and skipped; an unreadable file is fatal.
/// The per-driver sort is stable, so logs sharing a timestamp keep their
/// input order.
pub fn load_dataset<P: AsRef<Path>>(paths: &[P], format: &InputFormat) -> Result<LoadReport> {
    let mut by_driver: BTreeMap<String, Vec<GpsLog>> = BTreeMap::new();
    let mut lines_read = 0usize;
    let mut skipped_lines = 0usize;
    let mut diagnostics = Vec::new();

    for path in paths {
        let path = path.as_ref();
        let display = path.display().to_string();
        let file = File::open(path).map_err(|e| Error::io(&display, e))?;
        let reader = BufReader::new(file);
        for (line_no, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| Error::io(&display, e))?;
            if line_no == 0 {
                if let InputFormat::Csv { config, .. } = format {
                    if config.has_header {
                        continue;
                    }
                }
            }
            if line.is_empty() {
                continue;
            }
            lines_read += 1;
            let parsed = match format {
                InputFormat::TDrive { utc_offset_hours } => parse_tdrive_line(&line, *utc_offset_hours),
                InputFormat::Csv { config, utc_offset_hours } => {
                    parse_csv_line(&line, config, *utc_offset_hours)
                }
            };
            match parsed {
                Ok(log) => by_driver.entry(log.driver_id.clone()).or_default().push(log),
                Err(e) => {
                    skipped_lines += 1;
                    if diagnostics.len() < DIAGNOSTIC_CAP {
                        diagnostics.push(format!("{display}:{}: {e}", line_no + 1));
                    }
                }
            }
        }
    }

    let records = by_driver
        .into_iter()
        .map(|(driver_id, mut logs)| {
            logs.sort_by_key(|l| l.timestamp);
            DriverRecord { driver_id, logs }
        })
        .collect();

    Ok(LoadReport { records, lines_read, skipped_lines, diagnostics })
}

/// Keep exactly the logs inside the closed box, preserving order.
pub fn filter_region(record: &DriverRecord, region: &Region) -> DriverRecord {
    DriverRecord {
        driver_id: record.driver_id.clone(),
        logs: record.logs.iter().filter(|l| region.contains(l)).cloned().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn log(driver: &str, t: i64, lon: f64, lat: f64) -> GpsLog {
        GpsLog::new(driver, t, lon, lat).unwrap()
    }

    #[test]
    fn parses_tdrive_line_at_beijing_offset() {
        let parsed = parse_tdrive_line("1,2008-02-02 15:36:08,116.51172,39.92123", 8).unwrap();
        assert_eq!(parsed.driver_id, "1");
        assert_eq!(parsed.timestamp, 1_201_937_768);
        assert_eq!(parsed.longitude, 116.51172);
        assert_eq!(parsed.latitude, 39.92123);
    }

    #[test]
    fn origin_coordinates_are_legal() {
        let parsed = parse_tdrive_line("7,2008-02-02 00:00:00,0.0,0.0", 8).unwrap();
        assert_eq!(parsed.timestamp, 1_201_881_600);
        assert_eq!((parsed.longitude, parsed.latitude), (0.0, 0.0));
    }

    #[test]
    fn rejects_wrong_field_count() {
        assert!(matches!(
            parse_tdrive_line("7,2008-02-02,116.0", 8),
            Err(Error::BadLogLine { .. })
        ));
    }

    #[test]
    fn rejects_bad_datetime_and_out_of_range_coordinates() {
        assert!(parse_tdrive_line("7,2008-13-40 99:00:00,116.0,39.0", 8).is_err());
        assert!(parse_tdrive_line("7,2008-02-02 00:00:00,181.0,39.0", 8).is_err());
        assert!(parse_tdrive_line("7,2008-02-02 00:00:00,116.0,-91.0", 8).is_err());
        assert!(parse_tdrive_line("7,2008-02-02 00:00:00,nan,39.0", 8).is_err());
    }

    #[test]
    fn tdrive_round_trip_preserves_the_log() {
        let original = log("42", 1_201_937_768, 116.51172, 39.92123);
        let line = format_tdrive_line(&original, 8);
        assert_eq!(line, "42,2008-02-02 15:36:08,116.511720,39.921230");
        assert_eq!(parse_tdrive_line(&line, 8).unwrap(), original);
    }

    #[test]
    fn csv_adapter_maps_columns() {
        let config = CsvAdapterConfig {
            driver_col: 1,
            time_col: 0,
            time_format: "%Y/%m/%d %H:%M:%S".to_string(),
            lon_col: 3,
            lat_col: 2,
            has_header: true,
        };
        let parsed = parse_csv_line("2008/02/02 15:36:08,d9,39.92123,116.51172", &config, 8).unwrap();
        assert_eq!(parsed.driver_id, "d9");
        assert_eq!(parsed.timestamp, 1_201_937_768);
        assert_eq!(parsed.longitude, 116.51172);
        assert_eq!(parsed.latitude, 39.92123);
    }

    #[test]
    fn region_requires_min_below_max() {
        assert!(Region::new(116.0, 117.0, 39.0, 40.0).is_ok());
        assert!(Region::new(117.0, 116.0, 39.0, 40.0).is_err());
        assert!(Region::new(116.0, 117.0, 40.0, 40.0).is_err());
    }

    #[test]
    fn filter_region_keeps_inside_logs_in_order() {
        let region = Region::new(116.0, 117.0, 39.0, 40.0).unwrap();
        let record = DriverRecord {
            driver_id: "1".to_string(),
            logs: vec![
                log("1", 0, 115.5, 39.5),
                log("1", 1, 116.2, 39.5),
                log("1", 2, 116.9, 40.5),
                log("1", 3, 116.4, 39.9),
                log("1", 4, 118.0, 39.5),
            ],
        };
        let kept = filter_region(&record, &region);
        assert_eq!(kept.logs.len(), 2);
        assert_eq!(kept.logs[0].timestamp, 1);
        assert_eq!(kept.logs[1].timestamp, 3);

        // Closed box: boundary points stay.
        let boundary = DriverRecord { driver_id: "1".into(), logs: vec![log("1", 0, 116.0, 40.0)] };
        assert_eq!(filter_region(&boundary, &region).logs.len(), 1);

        // Idempotence and the all-in / all-out trivia.
        assert_eq!(filter_region(&kept, &region), kept);
        let outside = DriverRecord { driver_id: "1".into(), logs: vec![log("1", 0, 10.0, 10.0)] };
        assert!(filter_region(&outside, &region).logs.is_empty());
    }

    fn write_temp(dir: &std::path::Path, name: &str, contents: &str) -> std::path::PathBuf {
        let path = dir.join(name);
        let mut f = File::create(&path).unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        path
    }

    #[test]
    fn load_dataset_groups_and_sorts_across_files() {
        let dir = std::env::temp_dir().join("drivestyle_ingest_group");
        std::fs::create_dir_all(&dir).unwrap();
        let a = write_temp(&dir, "a.txt", "1,2008-02-02 15:36:10,116.2,39.2\n1,2008-02-02 15:36:00,116.1,39.1\n");
        let b = write_temp(&dir, "b.txt", "1,2008-02-02 15:36:05,116.3,39.3\n");
        let report = load_dataset(&[a, b], &InputFormat::TDrive { utc_offset_hours: 8 }).unwrap();
        assert_eq!(report.records.len(), 1);
        let times: Vec<i64> = report.records[0].logs.iter().map(|l| l.timestamp).collect();
        assert!(times.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(report.records[0].logs.len(), 3);
        assert_eq!(report.skipped_lines, 0);
    }

    #[test]
    fn load_dataset_counts_malformed_lines() {
        let dir = std::env::temp_dir().join("drivestyle_ingest_skip");
        std::fs::create_dir_all(&dir).unwrap();
        let path = write_temp(
            &dir,
            "c.txt",
            "1,2008-02-02 15:36:00,116.1,39.1\n1,2008-02-02 15:36:05,116.2,39.2\nbogus\n1,2008-02-02 15:36:10,116.3,39.3\n",
        );
        let report = load_dataset(&[path], &InputFormat::TDrive { utc_offset_hours: 8 }).unwrap();
        assert_eq!(report.records[0].logs.len(), 3);
        assert_eq!(report.skipped_lines, 1);
        assert_eq!(report.diagnostics.len(), 1);
    }

    #[test]
    fn load_dataset_of_empty_file_is_empty() {
        let dir = std::env::temp_dir().join("drivestyle_ingest_empty");
        std::fs::create_dir_all(&dir).unwrap();
        let path = write_temp(&dir, "e.txt", "");
        let report = load_dataset(&[path], &InputFormat::TDrive { utc_offset_hours: 8 }).unwrap();
        assert!(report.records.is_empty());
        assert_eq!(report.lines_read, 0);
    }

    #[test]
    fn load_dataset_names_unreadable_file() {
        let missing = std::path::Path::new("/definitely/not/here.txt");
        let err = load_dataset(&[missing], &InputFormat::TDrive { utc_offset_hours: 8 }).unwrap_err();
        assert!(err.to_string().contains("not/here.txt"));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        prop_compose! {
            fn grid_log()(
                driver in "[a-z0-9]{1,4}",
                t in 0i64..2_000_000_000,
                lon_u in -180_000_000i64..=180_000_000,
                lat_u in -90_000_000i64..=90_000_000,
            ) -> GpsLog {
                GpsLog::new(driver, t, lon_u as f64 * 1e-6, lat_u as f64 * 1e-6).unwrap()
            }
        }

        proptest! {
            #[test]
            fn tdrive_round_trip(log in grid_log()) {
                let line = format_tdrive_line(&log, 8);
                prop_assert_eq!(parse_tdrive_line(&line, 8).unwrap(), log);
            }

            #[test]
            fn loaded_records_are_sorted_and_uniform(
                logs in proptest::collection::vec(grid_log(), 0..40)
            ) {
                let dir = std::env::temp_dir().join(format!("drivestyle_prop_{}", std::process::id()));
                std::fs::create_dir_all(&dir).unwrap();
                let path = dir.join("fuzz.txt");
                let body: String = logs.iter()
                    .map(|l| format_tdrive_line(l, 8) + "\n")
                    .collect();
                std::fs::write(&path, body).unwrap();
                let report = load_dataset(&[&path], &InputFormat::TDrive { utc_offset_hours: 8 }).unwrap();
                for record in &report.records {
                    prop_assert!(record.logs.iter().all(|l| l.driver_id == record.driver_id));
                    prop_assert!(record.logs.windows(2).all(|w| w[0].timestamp <= w[1].timestamp));
                }
                let total: usize = report.records.iter().map(|r| r.logs.len()).sum();
                prop_assert_eq!(total, logs.len());
            }
        }
    }
}
