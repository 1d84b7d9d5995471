// Copyright 2026 The hyperhit Authors
// SPDX-License-Identifier: Apache-2.0

#include "output.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <system_error>

#include "hyperhit/errors.hpp"
#include "hyperhit/vertex.hpp"

namespace hyperhit::cli {
namespace {

std::string cell(const nlohmann::json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_null()) return "inf";
  return value.dump();
}

}  // namespace

void Table::add(std::vector<nlohmann::json> row) {
  if (row.size() != columns_.size()) throw std::logic_error("Table: row width mismatch");
  for (auto& v : row) {
    // json stores non-finite doubles as null; keep the sign of infinities.
    if (v.is_number_float() && !std::isfinite(v.get<double>())) {
      const double d = v.get<double>();
      v = std::isnan(d) ? "nan" : (d > 0 ? "inf" : "-inf");
    }
  }
  rows_.push_back(std::move(row));
}

void Table::write(std::ostream& out, Format format) const {
  if (format == Format::kJson) {
    nlohmann::json doc = {{"schema", 1}, {"rows", nlohmann::json::array()}};
    for (const auto& row : rows_) {
      nlohmann::json object;
      for (std::size_t c = 0; c < columns_.size(); ++c) object[columns_[c]] = row[c];
      doc["rows"].push_back(std::move(object));
    }
    out << doc.dump(2) << '\n';
    return;
  }
  out << "# schema=1\n";
  for (std::size_t c = 0; c < columns_.size(); ++c) out << (c ? "," : "") << columns_[c];
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << cell(row[c]);
    out << '\n';
  }
}

std::filesystem::path Artifacts::prepare(const std::string& name) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw ResourceError("cannot create output directory " + dir_.string(), 0);
  return dir_ / name;
}

void Artifacts::write(const std::string& stem, const Table& table, Format format) {
  const auto path = prepare(stem + (format == Format::kJson ? ".json" : ".csv"));
  std::ofstream out(path);
  if (!out) throw ResourceError("cannot write " + path.string(), 0);
  written_.push_back(path);
  table.write(out, format);
}

void Artifacts::write_json(const std::string& name, const nlohmann::json& doc) {
  const auto path = prepare(name);
  std::ofstream out(path);
  if (!out) throw ResourceError("cannot write " + path.string(), 0);
  written_.push_back(path);
  out << doc.dump(2) << '\n';
}

void Artifacts::discard() {
  for (const auto& path : written_) {
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }
  written_.clear();
}

std::string hex(std::uint64_t bits) { return to_hex(Vertex{bits}); }

}  // namespace hyperhit::cli
