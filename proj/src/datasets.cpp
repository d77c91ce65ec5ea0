#include "egl/datasets.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "egl/errors.hpp"

namespace egl {

namespace {

// Remission times (months), 128 bladder cancer patients.
const Dataset kBladder{
    "bladder",
    {0.08,  2.09,  3.48,  4.87, 6.94,  8.66,  13.11, 23.63, 0.2,   2.23,  0.26,
     0.31,  0.73,  0.52,  4.98, 6.97,  9.02,  13.29, 0.4,   2.26,  3.57,  5.06,
     7.09,  11.98, 4.51,  2.07, 0.22,  13.8,  25.74, 0.5,   2.46,  3.64,  5.09,
     7.26,  9.47,  14.24, 19.13, 6.54, 3.36,  0.82,  0.51,  2.54,  3.7,   5.17,
     7.28,  9.74,  14.76, 26.31, 0.81, 1.76,  8.53,  6.93,  0.62,  3.82,  5.32,
     7.32,  10.06, 14.77, 32.15, 2.64, 3.88,  5.32,  3.25,  12.03, 8.65,  0.39,
     10.34, 14.83, 34.26, 0.9,  2.69,  4.18,  5.34,  7.59,  10.66, 4.5,   20.28,
     12.63, 0.96,  36.66, 1.05, 2.69,  4.23,  5.41,  7.62,  10.75, 16.62, 43.01,
     6.25,  2.02,  22.69, 0.19, 2.75,  4.26,  5.41,  7.63,  17.12, 46.12, 1.26,
     2.83,  4.33,  8.37,  3.36, 5.49,  0.66,  11.25, 17.14, 79.05, 1.35,  2.87,
     5.62,  7.87,  11.64, 17.36, 12.02, 6.76, 0.4,   3.02,  4.34,  5.71,  7.93,
     11.79, 18.1,  1.46,  4.4,  5.85,  2.02,  12.07},
    "builtin"};

// Waiting times (minutes), 100 bank customers.
const Dataset kBank{
    "bank",
    {0.8,  0.8,  1.3,  1.5,  1.8,  1.9,  1.9,  2.1,  2.6,  2.7,  2.9,  3.1,
     3.2,  3.3,  3.5,  3.6,  4.0,  4.1,  4.2,  4.2,  4.3,  4.3,  4.4,  4.4,
     4.6,  4.7,  4.7,  4.8,  4.9,  4.9,  5.0,  5.3,  5.5,  5.7,  5.7,  6.1,
     6.2,  6.2,  6.2,  6.3,  6.7,  6.9,  7.1,  7.1,  7.1,  7.1,  7.4,  7.6,
     7.7,  8.0,  8.2,  8.6,  8.6,  8.6,  8.8,  8.8,  8.9,  8.9,  9.5,  9.6,
     9.7,  9.8,  10.7, 10.9, 11.0, 11.0, 11.1, 11.2, 11.2, 11.5, 11.9, 12.4,
     12.5, 12.9, 13.0, 13.1, 13.3, 13.6, 13.7, 13.9, 14.1, 15.4, 15.4, 17.3,
     17.3, 18.1, 18.2, 18.4, 18.9, 19.0, 19.9, 20.6, 21.3, 21.4, 21.9, 23.0,
     27.0, 31.6, 33.1, 38.5},
    "builtin"};

bool parse_double(const std::string& tok, double& out) {
  const char* begin = tok.data();
  const char* end = begin + tok.size();
  auto res = std::from_chars(begin, end, out);
  return res.ec == std::errc() && res.ptr == end;
}

}  // namespace

const Dataset& builtin_dataset(const std::string& name) {
  if (name == "bladder") return kBladder;
  if (name == "bank") return kBank;
  throw InvalidDataError("unknown dataset: " + name);
}

Dataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  Dataset d{path, {}, path};
  std::string line;
  long line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    // Normalize delimiters to spaces.
    for (char& c : line) {
      if (c == ',' || c == ';' || c == '\t' || c == '\r') c = ' ';
    }
    std::istringstream row(line);
    std::string tok;
    bool row_empty = true;
    while (row >> tok) {
      double v;
      if (!parse_double(tok, v)) {
        if (first && row_empty) {
          // Header row: skip the rest of the line.
          break;
        }
        throw InvalidDataError("line " + std::to_string(line_no) +
                               ": not a number: " + tok);
      }
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw InvalidDataError("line " + std::to_string(line_no) +
                               ": values must be positive, got " + tok);
      }
      d.values.push_back(v);
      row_empty = false;
    }
    if (!row_empty || line_no > 1) first = false;
  }
  if (d.values.empty()) throw InvalidDataError(path + ": no data values");
  return d;
}

std::uint64_t dataset_digest(const Dataset& d) {
  std::vector<double> sorted = d.values;
  std::sort(sorted.begin(), sorted.end());
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const char* s, int len) {
    for (int i = 0; i < len; ++i) {
      h ^= static_cast<unsigned char>(s[i]);
      h *= 1099511628211ull;
    }
  };
  char buf[40];
  int len = std::snprintf(buf, sizeof buf, "%zu:", sorted.size());
  mix(buf, len);
  for (double v : sorted) {
    len = std::snprintf(buf, sizeof buf, "%.17g;", v);
    mix(buf, len);
  }
  return h;
}

}  // namespace egl
