#include "lsattack/harness/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lsattack::harness {
namespace {

constexpr const char* kRecordsSchema = "# lsattack-campaign-csv v1";
constexpr const char* kRecordsHeader =
    "image_id,label,target,success,queries,final_f,vertex_fraction,"
    "failed_at_budget,white_box";
constexpr const char* kCumulativeSchema = "# lsattack-cumulative-csv v1";
constexpr const char* kHistogramSchema = "# lsattack-noise-hist-csv v1";

[[noreturn]] void fail(const std::string& path, int line,
                       const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  return out;
}

}  // namespace

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_records_csv(const std::string& path,
                       const std::vector<ImageRecord>& records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << kRecordsSchema << "\n" << kRecordsHeader << "\n";
  for (const auto& r : records) {
    out << r.image_id << ',' << r.label << ',' << r.target << ','
        << (r.success ? 1 : 0) << ',' << r.queries << ','
        << fmt_double(r.final_f) << ',' << fmt_double(r.vertex_fraction) << ','
        << (r.failed_at_budget ? 1 : 0) << ',' << (r.white_box ? 1 : 0)
        << "\n";
  }
  if (!out) throw std::runtime_error(path + ": write failed");
}

std::vector<ImageRecord> read_records_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  std::string line;
  int lineno = 0;
  if (!std::getline(in, line) || line != kRecordsSchema)
    fail(path, 1, "missing campaign csv schema line");
  ++lineno;
  if (!std::getline(in, line) || line != kRecordsHeader)
    fail(path, 2, "unexpected campaign csv header");
  ++lineno;

  std::vector<ImageRecord> records;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto fields = split_fields(line);
    if (fields.size() != 9) fail(path, lineno, "wrong field count");
    ImageRecord r;
    try {
      r.image_id = std::stoi(fields[0]);
      r.label = std::stoi(fields[1]);
      r.target = std::stoi(fields[2]);
      r.success = std::stoi(fields[3]) != 0;
      r.queries = std::stoull(fields[4]);
      r.final_f = std::stod(fields[5]);
      r.vertex_fraction = std::stod(fields[6]);
      r.failed_at_budget = std::stoi(fields[7]) != 0;
      r.white_box = std::stoi(fields[8]) != 0;
    } catch (const std::exception&) {
      fail(path, lineno, "malformed numeric field");
    }
    records.push_back(r);
  }
  return records;
}

void write_cumulative_csv(
    const std::string& path,
    const std::vector<std::pair<std::uint64_t, double>>& curve) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << kCumulativeSchema << "\nqueries,success_rate\n";
  for (const auto& [queries, rate] : curve)
    out << queries << ',' << fmt_double(rate) << "\n";
  if (!out) throw std::runtime_error(path + ": write failed");
}

void write_histogram_csv(const std::string& path, const Histogram& hist) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << kHistogramSchema << "\n";
  out << "# epsilon=" << fmt_double(hist.epsilon) << "\n";
  out << "bin_lo,bin_hi,count,fraction\n";
  const double total = static_cast<double>(hist.total());
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    double frac = total > 0 ? hist.counts[i] / total : 0.0;
    out << fmt_double(hist.bin_lo(i)) << ',' << fmt_double(hist.bin_hi(i))
        << ',' << hist.counts[i] << ',' << fmt_double(frac) << "\n";
  }
  if (!out) throw std::runtime_error(path + ": write failed");
}

Histogram read_histogram_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  std::string line;
  if (!std::getline(in, line) || line != kHistogramSchema)
    fail(path, 1, "missing histogram schema line");
  if (!std::getline(in, line) || line.rfind("# epsilon=", 0) != 0)
    fail(path, 2, "missing epsilon line");
  Histogram hist = Histogram::make(std::stod(line.substr(10)));
  if (!std::getline(in, line) || line != "bin_lo,bin_hi,count,fraction")
    fail(path, 3, "unexpected histogram header");
  int lineno = 3;
  std::size_t bin = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto fields = split_fields(line);
    if (fields.size() != 4) fail(path, lineno, "wrong field count");
    if (bin >= hist.counts.size()) fail(path, lineno, "too many bins");
    hist.counts[bin++] = std::stoull(fields[2]);
  }
  if (bin != hist.counts.size()) fail(path, lineno, "missing bins");
  return hist;
}

}  // namespace lsattack::harness
