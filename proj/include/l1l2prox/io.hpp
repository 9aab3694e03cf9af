#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "l1l2prox/errors.hpp"

namespace l1l2 {

enum class Format { csv, jsonl };

// One input vector with optional per-record parameter overrides (JSONL
// records may carry "mu" and "a"; CSV records never do).
struct Record {
  std::vector<double> y;
  std::optional<double> mu;
  std::optional<double> a;
};

// csv for .csv, jsonl for .jsonl/.json, nullopt otherwise.
std::optional<Format> format_from_path(const std::string& path);

// CSV: one vector per line, comma-separated numbers.
// JSONL: one JSON object per line, {"y": [...], "mu": m, "a": a} with mu
// and a optional.  Blank lines are skipped.  Throws ParseError (with the
// zero-based record index) on malformed records or empty input.
std::vector<Record> parse_records(std::istream& in, Format format);
std::vector<Record> read_records(const std::string& path, std::optional<Format> format);

}  // namespace l1l2
