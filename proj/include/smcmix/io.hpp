#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "smcmix/kernels.hpp"
#include "smcmix/samplers.hpp"

namespace smcmix {

// All floating-point output uses 17 significant digits so that values
// round-trip exactly.
std::string format_double(double x);

// A CSV document with '#'-prefixed metadata comment lines before the header
// row. Every file carries enough metadata (version, schema, full config,
// master seed) to be reproduced exactly.
class CsvWriter {
 public:
  CsvWriter(std::string path, const nlohmann::json& metadata,
            const std::vector<std::string>& columns);

  void row(const std::vector<double>& values);
  void raw_row(const std::vector<std::string>& values);

  // Writes the file; throws IoError on failure.
  void save() const;

 private:
  std::string path_;
  std::string body_;
};

void write_text_file(const std::string& path, const std::string& content);
void write_json_file(const std::string& path, const nlohmann::json& doc);

// Schema: (segment_start, segment_end, tmrca).
void write_path_csv(const std::string& path, const PathSample& sample,
                    const nlohmann::json& metadata);

// Schema: (step, state).
void write_chain_csv(const std::string& path, const std::vector<Tmrca>& chain,
                     const nlohmann::json& metadata);

// Schema: (node, weight, density_value); atom in the metadata comments.
void write_kernel_csv(const std::string& path, const MixedMeasure& kernel,
                      const nlohmann::json& metadata);

}  // namespace smcmix
