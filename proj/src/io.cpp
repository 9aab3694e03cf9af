#include "l1l2prox/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

#include "json.hpp"

namespace l1l2 {

namespace {

std::string trimmed(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_number(const std::string& field, std::size_t record) {
  const std::string t = trimmed(field);
  if (t.empty()) throw ParseError(record, "empty field");
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) throw ParseError(record, "bad number '" + t + "'");
  return v;
}

Record parse_csv_line(const std::string& line, std::size_t record) {
  Record r;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) r.y.push_back(parse_number(field, record));
  if (r.y.empty()) throw ParseError(record, "no values");
  return r;
}

Record parse_jsonl_line(const std::string& line, std::size_t record) {
  const nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded()) throw ParseError(record, "invalid JSON");
  if (!j.is_object() || !j.contains("y") || !j["y"].is_array())
    throw ParseError(record, "expected an object with a \"y\" array");
  Record r;
  for (const auto& v : j["y"]) {
    if (!v.is_number()) throw ParseError(record, "\"y\" must contain numbers");
    r.y.push_back(v.get<double>());
  }
  if (j.contains("mu")) {
    if (!j["mu"].is_number()) throw ParseError(record, "\"mu\" must be a number");
    r.mu = j["mu"].get<double>();
  }
  if (j.contains("a")) {
    if (!j["a"].is_number()) throw ParseError(record, "\"a\" must be a number");
    r.a = j["a"].get<double>();
  }
  return r;
}

}  // namespace

std::optional<Format> format_from_path(const std::string& path) {
  const std::size_t dot = path.rfind('.');
  if (dot == std::string::npos) return std::nullopt;
  std::string ext = path.substr(dot);
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (ext == ".csv") return Format::csv;
  if (ext == ".jsonl" || ext == ".json") return Format::jsonl;
  return std::nullopt;
}

std::vector<Record> parse_records(std::istream& in, Format format) {
  std::vector<Record> out;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trimmed(line);
    if (t.empty()) continue;
    out.push_back(format == Format::csv ? parse_csv_line(t, out.size())
                                        : parse_jsonl_line(t, out.size()));
  }
  if (out.empty()) throw ParseError(0, "empty input");
  return out;
}

std::vector<Record> read_records(const std::string& path, std::optional<Format> format) {
  if (!format) format = format_from_path(path);
  if (!format)
    throw Error("cannot infer input format from '" + path + "'; pass --format");
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return parse_records(in, *format);
}

}  // namespace l1l2
