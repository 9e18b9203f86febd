#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absorbtk/catalog.hpp"

namespace absorbtk::io {

/// One `key = value` line, or `key =` followed by a matrix block:
///   rows cols
///   re,im re,im ...   (row-major, one line per row)
struct Entry {
  std::string key;
  std::string value;
  std::optional<ComplexMatrix> matrix;
  int line = 0;
  int column = 0;
};

struct Section {
  std::string name;
  int line = 0;
  std::vector<Entry> entries;
};

struct Document {
  std::vector<Section> sections;
  const Section* find(std::string_view name) const;
};

/// Line-oriented sections; '#' starts a comment line. Throws ParseError.
Document parse_document(const std::string& text);

/// Shortest representation that parses back to the same bits.
std::string format_double(double v);
/// Whole-token parse; throws ParseError at (line, column).
double parse_double(std::string_view token, int line, int column);
long long parse_integer(std::string_view token, int line, int column);

/// [algebra] name, d, D0, basis k; [module] m, J, generator j k, scale j.
Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);
std::string serialize_instance(const ModulePresentation& pres);

std::string read_file(const std::string& path);

}  // namespace absorbtk::io
