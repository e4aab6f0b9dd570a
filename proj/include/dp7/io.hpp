#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace dp7 {

enum class OutputFormat { Csv, StructuredText };

std::string format_name(OutputFormat f);
OutputFormat parse_format(const std::string& name);  // throws std::invalid_argument

struct RunConfig {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::string output_path;
  OutputFormat format = OutputFormat::StructuredText;
  std::uint64_t seed = 0;

  bool operator==(const RunConfig&) const = default;
};

// Shortest stable decimal form that round-trips a double.
std::string format_double(double x);

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

// Artifact document: fixed header block (tool, version, command, format,
// seed, parameters, checksum) followed by flat key-value scalars and named
// tables. The CSV rendering carries the header and scalars as comment lines
// so that the data payload stays plain tables.
struct Document {
  RunConfig config;
  std::string version;
  std::vector<std::pair<std::string, std::string>> scalars;
  std::vector<Table> tables;

  void add_scalar(const std::string& key, const std::string& value);
  void add_scalar(const std::string& key, double value);
};

std::string render_document(const Document& doc);

// Parses either rendering back into a Document. Throws std::runtime_error
// when the content was not produced by this tool or its checksum does not
// match the body.
Document parse_document(const std::string& content);

// Whole-file write via temp file and rename, so readers never observe a
// partial artifact.
void write_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

// RFC-style CSV field handling.
std::string csv_escape(const std::string& field);
std::string csv_join(const std::vector<std::string>& fields);
std::vector<std::string> csv_split(const std::string& line);

}  // namespace dp7
