#include "smcmix/io.hpp"

#include <cstdio>
#include <fstream>

#include "smcmix/errors.hpp"
#include "smcmix/version.hpp"

namespace smcmix {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

CsvWriter::CsvWriter(std::string path, const nlohmann::json& metadata,
                     const std::vector<std::string>& columns)
    : path_(std::move(path)) {
  body_ += "# smcmix csv schema=1 version=";
  body_ += kVersion;
  body_ += '\n';
  nlohmann::json meta = metadata;
  body_ += "# meta ";
  body_ += meta.dump();
  body_ += '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) body_ += ',';
    body_ += columns[i];
  }
  body_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) body_ += ',';
    body_ += format_double(values[i]);
  }
  body_ += '\n';
}

void CsvWriter::raw_row(const std::vector<std::string>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) body_ += ',';
    body_ += values[i];
  }
  body_ += '\n';
}

void CsvWriter::save() const { write_text_file(path_, body_); }

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

void write_json_file(const std::string& path, const nlohmann::json& doc) {
  write_text_file(path, doc.dump(2) + "\n");
}

void write_path_csv(const std::string& path, const PathSample& sample,
                    const nlohmann::json& metadata) {
  CsvWriter csv(path, metadata, {"segment_start", "segment_end", "tmrca"});
  for (std::size_t i = 0; i < sample.states.size(); ++i) {
    const double start = sample.jump_locations[i];
    const double end = i + 1 < sample.jump_locations.size()
                           ? sample.jump_locations[i + 1]
                           : sample.horizon;
    csv.row({start, end, sample.states[i]});
  }
  csv.save();
}

void write_chain_csv(const std::string& path, const std::vector<Tmrca>& chain,
                     const nlohmann::json& metadata) {
  CsvWriter csv(path, metadata, {"step", "state"});
  for (std::size_t i = 0; i < chain.size(); ++i) {
    csv.raw_row({std::to_string(i), format_double(chain[i])});
  }
  csv.save();
}

void write_kernel_csv(const std::string& path, const MixedMeasure& kernel,
                      const nlohmann::json& metadata) {
  nlohmann::json meta = metadata;
  meta["atom_location"] = kernel.atom_location;
  meta["atom_mass"] = kernel.atom_mass;
  meta["truncation_terms"] = kernel.truncation_terms;
  meta["truncation_tail"] = kernel.truncation_tail;
  CsvWriter csv(path, meta, {"node", "weight", "density_value"});
  for (std::size_t i = 0; i < kernel.density.values.size(); ++i) {
    csv.row({kernel.density.grid.nodes[i], kernel.density.grid.weights[i],
             kernel.density.values[i]});
  }
  csv.save();
}

}  // namespace smcmix
