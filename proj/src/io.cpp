// Copyright 2026 The dismet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dismet/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace dismet {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream stream(line);
  while (std::getline(stream, cell, sep)) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == sep) cells.emplace_back();
  return cells;
}

[[noreturn]] void parse_error(std::size_t line, const std::string& message) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + message);
}

std::int64_t parse_int(const std::string& cell, std::size_t line) {
  std::int64_t value = 0;
  const char* begin = cell.data();
  const char* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (cell.empty() || ec != std::errc() || ptr != end) {
    parse_error(line, "'" + cell + "' is not an integer");
  }
  return value;
}

std::ifstream open_input(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ifstream in(path, mode);
  if (!in) throw Error(ErrorKind::IOFailure, "cannot open '" + path.string() + "'");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ofstream out(path, mode);
  if (!out) throw Error(ErrorKind::IOFailure, "cannot write '" + path.string() + "'");
  return out;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

std::uint64_t get_le(const std::vector<std::uint8_t>& in, std::size_t offset, int width) {
  std::uint64_t v = 0;
  for (int b = 0; b < width; ++b) {
    v |= static_cast<std::uint64_t>(in[offset + static_cast<std::size_t>(b)]) << (8 * b);
  }
  return v;
}

}  // namespace

DatasetSpec builtin_dataset(const std::string& name) {
  const std::string key = lower(name);
  for (auto& spec : builtin_datasets()) {
    if (lower(spec.name) == key) return spec;
  }
  throw Error(ErrorKind::IndexOutOfRange, "unknown dataset '" + name + "'");
}

std::vector<DatasetSpec> builtin_datasets() {
  std::vector<DatasetSpec> out;
  out.push_back({"dsprites",
                 {"shape", "scale", "orientation", "position_x", "position_y"},
                 {3, 6, 40, 32, 32}});
  out.push_back({"shapes3d",
                 {"floor_hue", "wall_hue", "object_hue", "scale", "orientation", "shape"},
                 {10, 10, 10, 8, 15, 4}});
  out.push_back({"cars3d", {"elevation", "azimuth", "object_id"}, {4, 24, 183}});
  out.push_back({"smallnorb", {"category", "elevation", "azimuth", "lighting"}, {10, 9, 18, 6}});
  DatasetSpec celeba{"celeba", {}, {}};
  for (const char* attr :
       {"5_o_Clock_Shadow", "Arched_Eyebrows", "Attractive", "Bags_Under_Eyes", "Bald",
        "Bangs", "Big_Lips", "Big_Nose", "Black_Hair", "Blond_Hair", "Blurry", "Brown_Hair",
        "Bushy_Eyebrows", "Chubby", "Double_Chin", "Eyeglasses", "Goatee", "Gray_Hair",
        "Heavy_Makeup", "High_Cheekbones", "Male", "Mouth_Slightly_Open", "Mustache",
        "Narrow_Eyes", "No_Beard", "Oval_Face", "Pale_Skin", "Pointy_Nose", "Receding_Hairline",
        "Rosy_Cheeks", "Sideburns", "Smiling", "Straight_Hair", "Wavy_Hair", "Wearing_Earrings",
        "Wearing_Hat", "Wearing_Lipstick", "Wearing_Necklace", "Wearing_Necktie", "Young"}) {
    celeba.factor_names.emplace_back(attr);
    celeba.cardinalities.push_back(2);
  }
  out.push_back(std::move(celeba));
  return out;
}

FactorTable parse_factors(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> names;
  std::vector<std::int32_t> cards;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) break;
  }
  if (trim(line).empty()) parse_error(line_no == 0 ? 1 : line_no, "missing header");
  for (const auto& cell : split(trim(line), ',')) {
    const auto colon = cell.rfind(':');
    if (colon == std::string::npos || colon == 0) {
      parse_error(line_no, "header cell '" + cell + "' is not name:cardinality");
    }
    const std::int64_t card = parse_int(trim(cell.substr(colon + 1)), line_no);
    if (card <= 0 || card > INT32_MAX) parse_error(line_no, "bad cardinality in '" + cell + "'");
    names.push_back(trim(cell.substr(0, colon)));
    cards.push_back(static_cast<std::int32_t>(card));
  }

  const std::size_t k = names.size();
  std::vector<std::vector<std::int32_t>> columns(k);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(trim(line), ',');
    if (cells.size() != k) {
      parse_error(line_no, "expected " + std::to_string(k) + " values, got " +
                               std::to_string(cells.size()));
    }
    for (std::size_t j = 0; j < k; ++j) {
      const std::int64_t v = parse_int(cells[j], line_no);
      if (v < 0 || v >= cards[j]) {
        throw Error(ErrorKind::FactorOutOfRange,
                    "line " + std::to_string(line_no) + ": factor '" + names[j] + "' value " +
                        std::to_string(v) + " outside [0, " + std::to_string(cards[j]) + ")");
      }
      columns[j].push_back(static_cast<std::int32_t>(v));
    }
    ++rows;
  }
  if (rows == 0) parse_error(line_no + 1, "no data rows");
  std::vector<std::int32_t> values;
  values.reserve(rows * k);
  for (auto& col : columns) values.insert(values.end(), col.begin(), col.end());
  return FactorTable(rows, std::move(values), std::move(names), std::move(cards));
}

FactorTable read_factors(const std::filesystem::path& path) {
  auto in = open_input(path, std::ios::in);
  return parse_factors(in);
}

void write_factors(const FactorTable& factors, std::ostream& out) {
  for (std::size_t j = 0; j < factors.num_factors(); ++j) {
    out << (j ? "," : "") << factors.names()[j] << ':' << factors.cardinality(j);
  }
  out << '\n';
  for (std::size_t n = 0; n < factors.rows(); ++n) {
    for (std::size_t j = 0; j < factors.num_factors(); ++j) {
      out << (j ? "," : "") << factors(n, j);
    }
    out << '\n';
  }
}

void write_factors(const FactorTable& factors, const std::filesystem::path& path) {
  auto out = open_output(path, std::ios::out | std::ios::trunc);
  write_factors(factors, out);
  if (!out) throw Error(ErrorKind::IOFailure, "failed writing '" + path.string() + "'");
}

std::vector<std::uint8_t> encode_reps(const RepresentationMatrix& reps) {
  std::vector<std::uint8_t> out;
  out.reserve(24 + reps.rows() * reps.dims() * 8);
  for (char c : {'D', 'R', 'E', 'P'}) out.push_back(static_cast<std::uint8_t>(c));
  put_u32(out, kDrepVersion);
  put_u64(out, reps.rows());
  put_u64(out, reps.dims());
  for (std::size_t n = 0; n < reps.rows(); ++n) {
    for (std::size_t i = 0; i < reps.dims(); ++i) {
      put_u64(out, std::bit_cast<std::uint64_t>(reps(n, i)));
    }
  }
  return out;
}

RepresentationMatrix decode_reps(const std::vector<std::uint8_t>& bytes) {
  constexpr std::size_t kHeader = 24;
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), "DREP", 4) != 0) {
    throw Error(ErrorKind::BadMagic, "byte 0: expected magic 'DREP'");
  }
  if (bytes.size() < kHeader) {
    throw Error(ErrorKind::TruncatedFile, "byte " + std::to_string(bytes.size()) +
                                              ": header needs 24 bytes");
  }
  const auto version = static_cast<std::uint32_t>(get_le(bytes, 4, 4));
  if (version != kDrepVersion) {
    throw Error(ErrorKind::VersionUnsupported, "byte 4: version " + std::to_string(version));
  }
  const std::uint64_t n = get_le(bytes, 8, 8);
  const std::uint64_t d = get_le(bytes, 16, 8);
  const std::uint64_t payload = bytes.size() - kHeader;
  if (d != 0 && n > payload / 8 / d) {
    throw Error(ErrorKind::TruncatedFile, "byte " + std::to_string(bytes.size()) + ": " +
                                              std::to_string(n) + "x" + std::to_string(d) +
                                              " values do not fit");
  }
  if (payload != n * d * 8) {
    throw Error(ErrorKind::ParseError, "byte " + std::to_string(kHeader + n * d * 8) +
                                           ": trailing data after payload");
  }
  Eigen::MatrixXd values(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  std::size_t offset = kHeader;
  for (std::uint64_t r = 0; r < n; ++r) {
    for (std::uint64_t i = 0; i < d; ++i, offset += 8) {
      values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) =
          std::bit_cast<double>(get_le(bytes, offset, 8));
    }
  }
  return RepresentationMatrix(std::move(values));
}

RepresentationMatrix read_reps(const std::filesystem::path& path) {
  auto in = open_input(path, std::ios::in | std::ios::binary);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_reps(bytes);
}

void write_reps(const RepresentationMatrix& reps, const std::filesystem::path& path) {
  const auto bytes = encode_reps(reps);
  auto out = open_output(path, std::ios::out | std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::IOFailure, "failed writing '" + path.string() + "'");
}

std::string display_string(const MetricReport& report) {
  // Natural-base MED can go below zero once K >= 3; the display clamps, the scores do not.
  const double shown = std::clamp(report.mean, 0.0, 1.0);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f (%.1f)", shown * 100.0, report.std * 100.0);
  return buf;
}

std::string reports_to_json(const std::vector<MetricReport>& reports) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json item;
    item["metric"] = r.metric;
    item["scores"] = r.scores;
    item["mean"] = r.mean;
    item["std"] = r.std;
    item["display"] = display_string(r);
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [key, value] : r.parameters) params[key] = value;
    item["parameters"] = std::move(params);
    doc.push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

std::vector<MetricReport> reports_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, "byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_array()) throw Error(ErrorKind::ParseError, "report must be a JSON array");
  std::vector<MetricReport> out;
  try {
    for (const auto& item : doc) {
      MetricReport r;
      r.metric = item.at("metric").get<std::string>();
      r.scores = item.at("scores").get<std::vector<double>>();
      r.mean = item.at("mean").get<double>();
      r.std = item.at("std").get<double>();
      r.parameters = item.at("parameters").get<std::map<std::string, std::string>>();
      out.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return out;
}

void write_report(const std::vector<MetricReport>& reports, const std::filesystem::path& path) {
  write_text(reports_to_json(reports), path);
}

std::vector<MetricReport> read_report(const std::filesystem::path& path) {
  auto in = open_input(path, std::ios::in);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return reports_from_json(buffer.str());
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string labeled_matrix_csv(const Eigen::MatrixXd& values,
                               const std::vector<std::string>& row_labels,
                               const std::vector<std::string>& column_labels) {
  std::string out = "factor";
  for (const auto& label : column_labels) out += "," + label;
  out += '\n';
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    out += row_labels.at(static_cast<std::size_t>(r));
    for (Eigen::Index c = 0; c < values.cols(); ++c) out += "," + format_double(values(r, c));
    out += '\n';
  }
  return out;
}

void write_text(const std::string& text, const std::filesystem::path& path) {
  auto out = open_output(path, std::ios::out | std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error(ErrorKind::IOFailure, "failed writing '" + path.string() + "'");
}

}  // namespace dismet
