#include "ftlab/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "ftlab/dirichlet.hpp"

namespace ftlab {

namespace {

static_assert(sizeof(double) == 8);

void write_bytes(std::ofstream& out, const void* p, std::size_t count) {
  out.write(static_cast<const char*>(p), static_cast<std::streamsize>(count));
}

void read_bytes(std::ifstream& in, void* p, std::size_t count) {
  in.read(static_cast<char*>(p), static_cast<std::streamsize>(count));
  if (!in) throw std::runtime_error("field file truncated");
}

}  // namespace

void write_field(const std::string& path, const RealField& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  const char magic[4] = {'F', 'T', 'F', '1'};
  write_bytes(out, magic, 4);
  const std::uint8_t d = static_cast<std::uint8_t>(f.grid.dim);
  write_bytes(out, &d, 1);
  const std::uint64_t n = static_cast<std::uint64_t>(f.grid.n);
  write_bytes(out, &n, 8);
  write_bytes(out, &f.grid.side, 8);
  for (int a = 0; a < f.grid.dim; ++a)
    write_bytes(out, &f.grid.domain_offset[static_cast<std::size_t>(a)], 8);
  write_bytes(out, &f.grid.domain_side, 8);
  write_bytes(out, &f.grid.cutoff_width, 8);
  write_bytes(out, f.values.data(), sizeof(double) * static_cast<std::size_t>(f.values.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

RealField read_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  char magic[4];
  read_bytes(in, magic, 4);
  if (std::memcmp(magic, "FTF1", 4) != 0)
    throw std::runtime_error("not an FTF1 field file: " + path);
  std::uint8_t d = 0;
  read_bytes(in, &d, 1);
  std::uint64_t n = 0;
  read_bytes(in, &n, 8);
  double side = 0;
  read_bytes(in, &side, 8);
  std::array<double, 2> offset{0.0, 0.0};
  for (int a = 0; a < d; ++a) read_bytes(in, &offset[static_cast<std::size_t>(a)], 8);
  if (d == 1) offset[1] = offset[0];
  double domain_side = 0, cutoff_width = 0;
  read_bytes(in, &domain_side, 8);
  read_bytes(in, &cutoff_width, 8);
  Grid g(static_cast<int>(d), static_cast<int>(n), side, offset, domain_side, cutoff_width);
  RealField f(g);
  read_bytes(in, f.values.data(), sizeof(double) * static_cast<std::size_t>(f.values.size()));
  return f;
}

std::string format_float(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct CsvWriter::Impl {
  std::ofstream out;
};

CsvWriter::CsvWriter(const std::string& p, const std::vector<std::string>& header)
    : path(p), impl_(new Impl) {
  impl_->out.open(p);
  if (!impl_->out) throw std::runtime_error("cannot open for writing: " + p);
  row(header);
}

CsvWriter::~CsvWriter() { delete impl_; }

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) impl_->out << ",";
    impl_->out << cells[i];
  }
  impl_->out << "\n";
}

std::vector<std::string> bound_report_csv_header() {
  return {"name", "measured", "reference", "tolerance", "pass", "params"};
}

std::vector<std::string> bound_report_csv_row(const BoundReport& r) {
  return {r.name,        format_float(r.measured), format_float(r.reference),
          format_float(r.tolerance), r.pass ? "1" : "0",       r.params};
}

std::vector<std::string> write_time_path(const std::string& dir, const std::string& stem,
                                         const TimePath& p) {
  std::vector<std::string> written;
  std::ofstream index(dir + "/" + stem + "_index.txt");
  if (!index) throw std::runtime_error("cannot open path index for writing");
  for (Eigen::Index m = 0; m < p.nodes(); ++m) {
    char name[64];
    std::snprintf(name, sizeof name, "%s_%04d.ftf", stem.c_str(), static_cast<int>(m));
    const std::string file = dir + "/" + name;
    write_field(file, sine_synthesis(p.states[static_cast<std::size_t>(m)]));
    index << m << " " << format_float(p.times[m]) << " " << name << "\n";
    written.push_back(file);
  }
  written.push_back(dir + "/" + stem + "_index.txt");
  return written;
}

}  // namespace ftlab
