#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace egl {

// Named, ordered list of strictly positive observations.
struct Dataset {
  std::string name;
  std::vector<double> values;
  std::string source;
};

// Built-in datasets: "bladder" (128 remission times) and "bank" (100 waiting times).
const Dataset& builtin_dataset(const std::string& name);

// One numeric value per line, or a delimited column; an optional single header
// row is detected by a non-numeric first token.
Dataset load_csv(const std::string& path);

// FNV-1a over the size and the sorted values' 17-digit decimal forms; stable
// fingerprint for report provenance.
std::uint64_t dataset_digest(const Dataset& d);

}  // namespace egl
