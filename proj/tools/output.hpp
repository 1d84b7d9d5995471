// Copyright 2026 The hyperhit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace hyperhit::cli {

enum class Format { kCsv, kJson };

/// Column-oriented result, rendered as CSV (with a `# schema=1` line) or as
/// a JSON array of row objects.
class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add(std::vector<nlohmann::json> row);
  void write(std::ostream& out, Format format) const;
  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<nlohmann::json>> rows_;
};

/// Files written under one output directory. discard() deletes everything
/// written so far.
class Artifacts {
 public:
  explicit Artifacts(std::filesystem::path dir) : dir_(std::move(dir)) {}

  void write(const std::string& stem, const Table& table, Format format);
  void write_json(const std::string& name, const nlohmann::json& doc);
  void discard();
  const std::vector<std::filesystem::path>& written() const { return written_; }

 private:
  std::filesystem::path prepare(const std::string& name);

  std::filesystem::path dir_;
  std::vector<std::filesystem::path> written_;
};

std::string hex(std::uint64_t bits);

}  // namespace hyperhit::cli
