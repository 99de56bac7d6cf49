// Versioned CSV emission and ingestion. Files start with a '#' schema
// comment, then a header row; numeric formatting is fixed so reruns with the
// same seed are byte-identical.
#pragma once

#include <string>
#include <vector>

#include "lsattack/harness/campaign.hpp"

namespace lsattack::harness {

std::string fmt_double(double v);  // %.17g

void write_records_csv(const std::string& path,
                       const std::vector<ImageRecord>& records);
std::vector<ImageRecord> read_records_csv(const std::string& path);

void write_cumulative_csv(
    const std::string& path,
    const std::vector<std::pair<std::uint64_t, double>>& curve);

void write_histogram_csv(const std::string& path, const Histogram& hist);
Histogram read_histogram_csv(const std::string& path);

}  // namespace lsattack::harness
