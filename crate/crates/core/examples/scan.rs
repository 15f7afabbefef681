//! A prime-range scan through the library, as `cubic3 scan` runs it.

use purecubic::cli::cache::Cache;
use purecubic::cli::report::write_csv;
use purecubic::cli::scan::{scan, ScanConfig};
use purecubic::pipelines::PipelineConfig;

fn main() -> purecubic::Result<()> {
    let cfg = ScanConfig { min: 5, max: 120, cases: Vec::new(), pipeline: PipelineConfig::default(), jobs: None };
    let rows = scan(&cfg, &Cache::new(None), None)?;
    write_csv(&rows, std::io::stdout().lock())
}
