#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace parscale {

// Ingestion of supercomputer-list CSV exports and per-machine derived
// metrics.  Benchmark figures are stored in flop/s regardless of the file's
// unit.

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MachineRecord {
  std::int64_t rank = 0;
  std::string name;
  std::int64_t cores = 0;
  double rmax = 0.0;   // flop/s
  double rpeak = 0.0;  // flop/s
  std::optional<double> hpcg;  // flop/s
  std::optional<int> year;
  std::optional<bool> accelerated;
};

struct ParseIssue {
  std::size_t line = 0;  // 1-based file line number
  std::string message;
};

struct ParseReport {
  std::vector<MachineRecord> records;
  std::vector<ParseIssue> issues;
};

struct CsvOptions {
  double unit_scale = 1e12;  // benchmark columns are in Tflop/s by default
};

/// Parses a comma-separated export with a mandatory header row.  Header
/// names match case-insensitively and unit suffixes like "Rmax [TFlop/s]"
/// are stripped; quoted fields are honored.  Rows violating the record
/// invariants are rejected with line-numbered diagnostics while the rest of
/// the file parses normally.  A missing mandatory column (rank, name,
/// cores, rmax, rpeak) raises DataError.
ParseReport parse_csv(std::istream& in, const CsvOptions& opts = {});
ParseReport parse_csv_string(const std::string& text, const CsvOptions& opts = {});
ParseReport parse_csv_file(const std::string& path, const CsvOptions& opts = {});

/// Writes records back to the same dialect (benchmark figures in the
/// configured unit).  parse(write(r)) reproduces r exactly.
std::string write_csv(const std::vector<MachineRecord>& records,
                      const CsvOptions& opts = {});

struct DerivedMetrics {
  double e_hpl = 0.0;                    // rmax / rpeak
  std::optional<double> e_hpcg;          // hpcg / rpeak
  std::optional<double> alpha_hpl;
  std::optional<double> alpha_hpcg;
  std::optional<double> one_minus_alpha_hpl;  // cancellation-free form
  std::optional<std::string> alpha_note;      // why alpha is absent
  double gain_hpl = 0.0;                 // e_hpl * cores
  std::optional<double> hpl_hpcg_ratio;  // e_hpl / e_hpcg
};

DerivedMetrics derive(const MachineRecord& r);

/// Tab-separated scatter rows (cores, e_hpl, e_hpcg, 1-alpha) sorted by
/// ascending core count, with a '#'-prefixed header.  Missing values are
/// emitted as empty fields, never as zeros.
std::string scatter_data(const std::vector<MachineRecord>& records);

}  // namespace parscale
