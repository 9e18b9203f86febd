#include "absorbtk/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "absorbtk/errors.hpp"

namespace absorbtk::io {

const Section* Document::find(std::string_view name) const {
  for (const auto& s : sections)
    if (s.name == name) return &s;
  return nullptr;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view token, int line, int column) {
  double v = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || res.ec != std::errc() || res.ptr != token.data() + token.size())
    throw ParseError("malformed number '" + std::string(token) + "'", line, column);
  return v;
}

long long parse_integer(std::string_view token, int line, int column) {
  long long v = 0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || res.ec != std::errc() || res.ptr != token.data() + token.size())
    throw ParseError("malformed integer '" + std::string(token) + "'", line, column);
  return v;
}

namespace {

struct Token {
  std::string_view text;
  int column;
};

std::vector<Token> split(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back({line.substr(start, i - start), static_cast<int>(start + 1)});
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool blank_or_comment(std::string_view line) {
  const auto t = trim(line);
  return t.empty() || t.front() == '#';
}

}  // namespace

Document parse_document(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::istringstream in(text);
    std::string l;
    while (std::getline(in, l)) {
      if (!l.empty() && l.back() == '\r') l.pop_back();
      lines.push_back(l);
    }
  }
  Document doc;
  std::size_t i = 0;
  auto next_content = [&](std::size_t from) {
    while (from < lines.size() && blank_or_comment(lines[from])) ++from;
    return from;
  };
  while ((i = next_content(i)) < lines.size()) {
    const std::string_view raw = lines[i];
    const int lineno = static_cast<int>(i + 1);
    const auto first = raw.find_first_not_of(" \t");
    const std::string_view body = trim(raw);
    if (body.front() == '[') {
      if (body.back() != ']' || body.size() < 3)
        throw ParseError("malformed section header", lineno, static_cast<int>(first + 1));
      doc.sections.push_back({std::string(trim(body.substr(1, body.size() - 2))), lineno, {}});
      ++i;
      continue;
    }
    if (doc.sections.empty()) throw ParseError("entry outside of any section", lineno, static_cast<int>(first + 1));
    const auto eq = raw.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", lineno, static_cast<int>(first + 1));
    Entry e;
    e.key = std::string(trim(raw.substr(0, eq)));
    e.value = std::string(trim(raw.substr(eq + 1)));
    e.line = lineno;
    e.column = static_cast<int>(first + 1);
    if (e.key.empty()) throw ParseError("empty key", lineno, e.column);
    ++i;
    if (e.value.empty()) {
      // matrix block
      i = next_content(i);
      if (i >= lines.size()) throw ParseError("missing matrix header after '" + e.key + " ='", lineno, static_cast<int>(eq + 2));
      const auto header = split(lines[i]);
      const int hline = static_cast<int>(i + 1);
      if (header.size() != 2)
        throw ParseError("matrix header must be 'rows cols'", hline, header.empty() ? 1 : header[0].column);
      const long long rows = parse_integer(header[0].text, hline, header[0].column);
      const long long cols = parse_integer(header[1].text, hline, header[1].column);
      if (rows < 1 || cols < 1) throw ParseError("matrix dimensions must be positive", hline, header[0].column);
      ComplexMatrix m(rows, cols);
      ++i;
      for (long long r = 0; r < rows; ++r) {
        i = next_content(i);
        if (i >= lines.size()) throw ParseError("matrix ended early", static_cast<int>(lines.size()), 1);
        const int rline = static_cast<int>(i + 1);
        const auto toks = split(lines[i]);
        if (static_cast<long long>(toks.size()) != cols)
          throw ParseError("expected " + std::to_string(cols) + " entries in matrix row", rline,
                           toks.empty() ? 1 : toks.back().column);
        for (long long c = 0; c < cols; ++c) {
          const auto tok = toks[c].text;
          const auto comma = tok.find(',');
          if (comma == std::string_view::npos)
            throw ParseError("matrix entry must be 're,im'", rline, toks[c].column);
          const double re = parse_double(tok.substr(0, comma), rline, toks[c].column);
          const double im = parse_double(tok.substr(comma + 1), rline, toks[c].column + static_cast<int>(comma) + 1);
          m(r, c) = Complex(re, im);
        }
        ++i;
      }
      e.matrix = std::move(m);
    }
    doc.sections.back().entries.push_back(std::move(e));
  }
  return doc;
}

namespace {

const Entry& require(const Section& s, const std::string& key) {
  for (const auto& e : s.entries)
    if (e.key == key) return e;
  throw ParseError("missing key '" + key + "' in [" + s.name + "]", s.line, 1);
}

const ComplexMatrix& require_matrix(const Entry& e, Index rows, Index cols) {
  if (!e.matrix) throw ParseError("'" + e.key + "' must be a matrix block", e.line, e.column);
  if (e.matrix->rows() != rows || e.matrix->cols() != cols)
    throw ParseError("'" + e.key + "' must be " + std::to_string(rows) + " x " + std::to_string(cols), e.line,
                     e.column);
  return *e.matrix;
}

Index require_positive(const Entry& e) {
  const long long v = parse_integer(e.value, e.line, e.column);
  if (v < 1) throw ParseError("'" + e.key + "' must be >= 1", e.line, e.column);
  return static_cast<Index>(v);
}

// "basis 3" -> {3}; "generator 1 2" -> {1, 2}
std::vector<long long> key_indices(const Entry& e, const std::string& stem, std::size_t count) {
  const auto toks = split(e.key);
  if (toks.size() != count + 1 || toks[0].text != stem) return {};
  std::vector<long long> out;
  for (std::size_t k = 1; k < toks.size(); ++k)
    out.push_back(parse_integer(toks[k].text, e.line, e.column + toks[k].column - 1));
  return out;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  const Document doc = parse_document(text);
  const Section* alg = doc.find("algebra");
  const Section* mod = doc.find("module");
  if (!alg) throw ParseError("missing [algebra] section", 1, 1);
  if (!mod) throw ParseError("missing [module] section", 1, 1);
  for (const auto& s : doc.sections)
    if (s.name != "algebra" && s.name != "module") throw ParseError("unknown section [" + s.name + "]", s.line, 1);

  const std::string name = require(*alg, "name").value;
  const Index d = require_positive(require(*alg, "d"));
  const ComplexMatrix d0 = require_matrix(require(*alg, "D0"), d, d);
  std::map<long long, ComplexMatrix> basis_map;
  for (const auto& e : alg->entries) {
    if (e.key == "name" || e.key == "d" || e.key == "D0") continue;
    const auto idx = key_indices(e, "basis", 1);
    if (idx.empty()) throw ParseError("unknown key '" + e.key + "' in [algebra]", e.line, e.column);
    if (!basis_map.emplace(idx[0], require_matrix(e, d, d)).second)
      throw ParseError("duplicate '" + e.key + "'", e.line, e.column);
  }
  std::vector<ComplexMatrix> basis;
  for (long long k = 1; k <= static_cast<long long>(basis_map.size()); ++k) {
    auto it = basis_map.find(k);
    if (it == basis_map.end()) throw ParseError("basis indices must be 1..count", alg->line, 1);
    basis.push_back(it->second);
  }
  auto ctx = std::make_shared<const AlgebraContext>(name, std::move(basis), d0);

  ModulePresentation pres;
  pres.ctx = ctx;
  pres.m = require_positive(require(*mod, "m"));
  pres.J = require_positive(require(*mod, "J"));
  pres.generators.assign(pres.J, std::vector<ComplexMatrix>(pres.m));
  pres.scale.assign(pres.J, 1.0);
  std::vector<std::vector<bool>> seen(pres.J, std::vector<bool>(pres.m, false));
  for (const auto& e : mod->entries) {
    if (e.key == "m" || e.key == "J") continue;
    if (auto gi = key_indices(e, "generator", 2); !gi.empty()) {
      if (gi[0] < 1 || gi[0] > pres.J || gi[1] < 1 || gi[1] > pres.m)
        throw ParseError("generator index out of range", e.line, e.column);
      if (seen[gi[0] - 1][gi[1] - 1]) throw ParseError("duplicate '" + e.key + "'", e.line, e.column);
      seen[gi[0] - 1][gi[1] - 1] = true;
      pres.generators[gi[0] - 1][gi[1] - 1] = require_matrix(e, d, d);
    } else if (auto si = key_indices(e, "scale", 1); !si.empty()) {
      if (si[0] < 1 || si[0] > pres.J) throw ParseError("scale index out of range", e.line, e.column);
      pres.scale[si[0] - 1] = parse_double(e.value, e.line, e.column);
    } else {
      throw ParseError("unknown key '" + e.key + "' in [module]", e.line, e.column);
    }
  }
  for (Index j = 0; j < pres.J; ++j)
    for (Index k = 0; k < pres.m; ++k)
      if (!seen[j][k])
        throw ParseError("missing 'generator " + std::to_string(j + 1) + " " + std::to_string(k + 1) + "'",
                         mod->line, 1);
  validate(pres);
  return {ctx, std::move(pres)};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Instance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

namespace {

void write_matrix(std::ostringstream& out, const std::string& key, const ComplexMatrix& m) {
  out << key << " =\n" << m.rows() << ' ' << m.cols() << '\n';
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c)
      out << (c ? " " : "") << format_double(m(r, c).real()) << ',' << format_double(m(r, c).imag());
    out << '\n';
  }
}

}  // namespace

std::string serialize_instance(const ModulePresentation& pres) {
  const AlgebraContext& ctx = *pres.ctx;
  std::ostringstream out;
  out << "[algebra]\nname = " << ctx.name() << "\nd = " << ctx.d() << '\n';
  write_matrix(out, "D0", ctx.D0());
  for (std::size_t k = 0; k < ctx.basis().size(); ++k) write_matrix(out, "basis " + std::to_string(k + 1), ctx.basis()[k]);
  out << "\n[module]\nm = " << pres.m << "\nJ = " << pres.J << '\n';
  for (Index j = 0; j < pres.J; ++j) {
    for (Index k = 0; k < pres.m; ++k)
      write_matrix(out, "generator " + std::to_string(j + 1) + " " + std::to_string(k + 1), pres.generators[j][k]);
    if (pres.scale[j] != 1.0) out << "scale " << j + 1 << " = " << format_double(pres.scale[j]) << '\n';
  }
  return out.str();
}

}  // namespace absorbtk::io
