#include "dp7/io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "dp7/version.hpp"

namespace dp7 {

namespace {

constexpr const char* kMagic = "dp7-artifact v1";
constexpr const char* kChecksumPlaceholder = "0000000000000000";

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string checksum_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

void require_header_token(const std::string& token, const char* what) {
  if (token.find('\n') != std::string::npos || token.find('\r') != std::string::npos)
    throw std::invalid_argument(std::string("artifact header ") + what +
                                " must not contain line breaks");
}

std::vector<std::string> split_lines(const std::string& content) {
  std::vector<std::string> lines;
  std::string::size_type start = 0;
  while (start <= content.size()) {
    const auto pos = content.find('\n', start);
    if (pos == std::string::npos) {
      if (start < content.size()) lines.push_back(content.substr(start));
      break;
    }
    lines.push_back(content.substr(start, pos - start));
    start = pos + 1;
  }
  return lines;
}

bool strip_prefix(const std::string& line, const std::string& prefix,
                  std::string& rest) {
  if (line.rfind(prefix, 0) != 0) return false;
  rest = line.substr(prefix.size());
  return true;
}

}  // namespace

std::string format_name(OutputFormat f) {
  return f == OutputFormat::Csv ? "csv" : "structured-text";
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "structured-text") return OutputFormat::StructuredText;
  throw std::invalid_argument("unknown output format: " + name);
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  if (res.ec != std::errc())
    throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

void Document::add_scalar(const std::string& key, const std::string& value) {
  scalars.emplace_back(key, value);
}

void Document::add_scalar(const std::string& key, double value) {
  scalars.emplace_back(key, format_double(value));
}

std::string csv_escape(const std::string& field) {
  if (field.find('\n') != std::string::npos || field.find('\r') != std::string::npos)
    throw std::invalid_argument("csv field must not contain line breaks");
  if (field.find_first_of(",\"") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::string csv_join(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(fields[i]);
  }
  return out;
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          i += 2;
          continue;
        }
        quoted = false;
        ++i;
        continue;
      }
      cur += c;
      ++i;
      continue;
    }
    if (c == '"' && cur.empty()) {
      quoted = true;
      ++i;
      continue;
    }
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
      ++i;
      continue;
    }
    cur += c;
    ++i;
  }
  if (quoted) throw std::runtime_error("csv line has an unterminated quote");
  fields.push_back(cur);
  return fields;
}

std::string render_document(const Document& doc) {
  if (doc.config.command.empty())
    throw std::invalid_argument("render_document: command must be set");
  require_header_token(doc.config.command, "command");
  for (const auto& [k, v] : doc.config.parameters) {
    require_header_token(k, "parameter key");
    require_header_token(v, "parameter value");
    if (k.find(':') != std::string::npos)
      throw std::invalid_argument("artifact parameter key must not contain ':'");
  }
  for (const auto& [k, v] : doc.scalars) {
    require_header_token(k, "value key");
    require_header_token(v, "value");
    if (k.find(':') != std::string::npos)
      throw std::invalid_argument("artifact value key must not contain ':'");
  }

  const bool csv = doc.config.format == OutputFormat::Csv;
  const std::string pre = csv ? "# " : "";
  std::ostringstream out;
  out << pre << kMagic << '\n';
  out << pre << "tool: " << kToolName << '\n';
  out << pre << "version: "
      << (doc.version.empty() ? kToolVersion : doc.version.c_str()) << '\n';
  out << pre << "command: " << doc.config.command << '\n';
  out << pre << "format: " << format_name(doc.config.format) << '\n';
  out << pre << "seed: " << doc.config.seed << '\n';
  for (const auto& [k, v] : doc.config.parameters)
    out << pre << "param " << k << ": " << v << '\n';
  out << pre << "checksum: " << kChecksumPlaceholder << '\n';
  for (const auto& [k, v] : doc.scalars)
    out << pre << "value " << k << ": " << v << '\n';
  for (const Table& table : doc.tables) {
    require_header_token(table.name, "table name");
    if (csv) {
      out << pre << "table " << table.name << '\n';
      out << csv_join(table.columns) << '\n';
      for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
          throw std::invalid_argument("table row width mismatch in " + table.name);
        out << csv_join(row) << '\n';
      }
    } else {
      out << "table " << table.name << '\n';
      out << "columns: " << csv_join(table.columns) << '\n';
      for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
          throw std::invalid_argument("table row width mismatch in " + table.name);
        out << "row: " << csv_join(row) << '\n';
      }
      out << "end table" << '\n';
    }
  }

  std::string text = out.str();
  const std::string needle = std::string("checksum: ") + kChecksumPlaceholder;
  const auto pos = text.find(needle);
  const std::string digest = checksum_hex(fnv1a(text));
  text.replace(pos + std::string("checksum: ").size(),
               std::string(kChecksumPlaceholder).size(), digest);
  return text;
}

Document parse_document(const std::string& content) {
  std::vector<std::string> lines = split_lines(content);
  if (lines.empty())
    throw std::runtime_error("artifact rejected: empty file");
  bool csv = false;
  if (lines[0] == kMagic) {
    csv = false;
  } else if (lines[0] == std::string("# ") + kMagic) {
    csv = true;
  } else {
    throw std::runtime_error("artifact rejected: not produced by this tool");
  }

  // Verify the checksum against the content with the digest zeroed out.
  const std::string key = csv ? "# checksum: " : "checksum: ";
  const auto cpos = content.find(key);
  if (cpos == std::string::npos)
    throw std::runtime_error("artifact rejected: missing checksum");
  const auto vpos = cpos + key.size();
  if (vpos + 16 > content.size())
    throw std::runtime_error("artifact rejected: truncated checksum");
  const std::string stored = content.substr(vpos, 16);
  std::string canon = content;
  canon.replace(vpos, 16, kChecksumPlaceholder);
  if (checksum_hex(fnv1a(canon)) != stored)
    throw std::runtime_error("artifact rejected: checksum mismatch");

  Document doc;
  const std::string pre = csv ? "# " : "";
  std::string rest;
  std::size_t i = 1;
  bool tool_seen = false;
  for (; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (strip_prefix(line, pre + "tool: ", rest)) {
      if (rest != kToolName)
        throw std::runtime_error("artifact rejected: foreign tool name");
      tool_seen = true;
    } else if (strip_prefix(line, pre + "version: ", rest)) {
      doc.version = rest;
    } else if (strip_prefix(line, pre + "command: ", rest)) {
      doc.config.command = rest;
    } else if (strip_prefix(line, pre + "format: ", rest)) {
      doc.config.format = parse_format(rest);
    } else if (strip_prefix(line, pre + "seed: ", rest)) {
      doc.config.seed = std::stoull(rest);
    } else if (strip_prefix(line, pre + "param ", rest)) {
      const auto sep = rest.find(": ");
      if (sep == std::string::npos)
        throw std::runtime_error("artifact rejected: malformed parameter line");
      doc.config.parameters[rest.substr(0, sep)] = rest.substr(sep + 2);
    } else if (strip_prefix(line, pre + "checksum: ", rest)) {
      break;
    } else {
      throw std::runtime_error("artifact rejected: malformed header line");
    }
  }
  if (!tool_seen)
    throw std::runtime_error("artifact rejected: missing tool name");
  ++i;

  // Body: scalars then tables.
  while (i < lines.size()) {
    const std::string& line = lines[i];
    if (line.empty()) {
      ++i;
      continue;
    }
    if (strip_prefix(line, pre + "value ", rest)) {
      const auto sep = rest.find(": ");
      if (sep == std::string::npos)
        throw std::runtime_error("artifact rejected: malformed value line");
      doc.scalars.emplace_back(rest.substr(0, sep), rest.substr(sep + 2));
      ++i;
      continue;
    }
    if (strip_prefix(line, pre + "table ", rest)) {
      Table table;
      table.name = rest;
      ++i;
      if (csv) {
        if (i >= lines.size())
          throw std::runtime_error("artifact rejected: table without columns");
        table.columns = csv_split(lines[i]);
        ++i;
        while (i < lines.size() && !lines[i].empty() &&
               lines[i].rfind("# ", 0) != 0) {
          table.rows.push_back(csv_split(lines[i]));
          ++i;
        }
      } else {
        if (i >= lines.size() || !strip_prefix(lines[i], "columns: ", rest))
          throw std::runtime_error("artifact rejected: table without columns");
        table.columns = csv_split(rest);
        ++i;
        while (i < lines.size() && strip_prefix(lines[i], "row: ", rest)) {
          table.rows.push_back(csv_split(rest));
          ++i;
        }
        if (i >= lines.size() || lines[i] != "end table")
          throw std::runtime_error("artifact rejected: unterminated table");
        ++i;
      }
      for (const auto& row : table.rows)
        if (row.size() != table.columns.size())
          throw std::runtime_error("artifact rejected: ragged table " + table.name);
      doc.tables.push_back(std::move(table));
      continue;
    }
    throw std::runtime_error("artifact rejected: unrecognized body line");
  }
  return doc;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_atomic: cannot open " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write_atomic: write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("write_atomic: rename failed: " + ec.message());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace dp7
