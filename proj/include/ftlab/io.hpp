#pragma once

#include <string>
#include <vector>

#include "ftlab/field.hpp"
#include "ftlab/solver.hpp"

namespace ftlab {

/// Field binary format "FTF1": magic 'F','T','F','1'; u8 d; u64 n; f64 L;
/// f64 offset[d]; f64 domain_side; f64 cutoff_width; n^d little-endian f64
/// values, row-major.
void write_field(const std::string& path, const RealField& f);
RealField read_field(const std::string& path);

/// 17-significant-digit decimal rendering used by every CSV column.
std::string format_float(double x);

/// CSV with a header row; every float rendered by format_float.
struct CsvWriter {
  explicit CsvWriter(const std::string& path, const std::vector<std::string>& header);
  ~CsvWriter();
  void row(const std::vector<std::string>& cells);
  std::string path;

 private:
  struct Impl;
  Impl* impl_;
};

std::vector<std::string> bound_report_csv_header();
std::vector<std::string> bound_report_csv_row(const BoundReport& r);

/// Solution path persistence: one FTF1 file per node plus a plain-text index
/// with lines "m t_m filename".
std::vector<std::string> write_time_path(const std::string& dir, const std::string& stem,
                                         const TimePath& p);

}  // namespace ftlab
