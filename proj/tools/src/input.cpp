#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "shadowlab/cli/cli.hpp"
#include "shadowlab/entangled.hpp"

namespace shadowlab::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (!t.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (t.empty() || ec != std::errc() || ptr != last) {
    throw ParseError("not a number: '" + text + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

ComplexMatrix hermitian_from_upper(std::size_t n, const std::vector<cplx>& upper) {
  std::vector<cplx> e(n * n);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const cplx v = i == j ? cplx(upper[idx].real()) : upper[idx];
      e[i * n + j] = v;
      e[j * n + i] = std::conj(v);
      ++idx;
    }
  return ComplexMatrix(n, std::move(e));
}

}  // namespace

cplx parse_complex(const std::string& text) {
  std::string t = trim(text);
  t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }),
          t.end());
  if (t.empty()) throw ParseError("empty matrix entry");
  if (t.back() != 'i' && t.back() != 'j') return parse_real(t);
  t.pop_back();
  // Split at the last sign that is not part of an exponent.
  std::size_t split_at = std::string::npos;
  for (std::size_t k = t.size(); k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      split_at = k;
      break;
    }
  }
  const std::string re = split_at == std::string::npos ? "" : t.substr(0, split_at);
  std::string im = split_at == std::string::npos ? t : t.substr(split_at);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return {re.empty() ? 0.0 : parse_real(re), parse_real(im)};
}

std::vector<std::string> fixture_names() {
  return {"tridiag4", "ent-A", "ent-B", "magicW", "herm4"};
}

ComplexMatrix fixture(const std::string& name) {
  using namespace std::complex_literals;
  if (name == "tridiag4") {
    return ComplexMatrix{{0.0, 1.0, 0.0, 0.0}, {1.0, 0.0, 1.0, 0.0}, {0.0, 1.0, 0.0, 1.0}, {0.0, 0.0, 1.0, 0.0}};
  }
  if (name == "ent-A") {
    return ComplexMatrix{{1.0, 0.0, 0.0, 1.0}, {0.0, 1i, 0.0, 1.0}, {0.0, 0.0, -1.0, 0.0}, {0.0, 0.0, 0.0, -1i}};
  }
  if (name == "ent-B") {
    return ComplexMatrix{{0.3 + 0.5i, -0.8 - 0.2i, 0.4 - 0.5i, 1.0},
                         {0.6 - 0.8i, -0.8 - 0.4i, -0.6 + 0.8i, -0.8 + 0.8i},
                         {0.7 - 0.8i, -0.5 - 0.4i, -0.8, 0.7 - 0.3i},
                         {0.4 + 0.6i, -1.0 - 0.8i, -0.4 - 0.4i, -0.7}};
  }
  if (name == "magicW") return IsometryPair::W();
  if (name == "herm4") {
    return hermitian_from_upper(4, {1.0, 0.5 - 0.2i, 0.3i, -0.4,
                                    -0.5, 0.7 + 0.1i, 0.2,
                                    0.8, -0.6i,
                                    -1.2});
  }
  throw ParseError("unknown fixture '" + name + "'");
}

ComplexMatrix parse_matrix(const std::string& spec) {
  if (spec.rfind("diag:", 0) == 0) {
    const auto parts = split(spec.substr(5), ',');
    if (parts.empty()) throw ParseError("diag: needs at least one value");
    std::vector<double> v;
    for (const auto& p : parts) v.push_back(parse_real(p));
    return ComplexMatrix::diagonal(v);
  }
  if (spec.rfind("fixture:", 0) == 0) return fixture(spec.substr(8));
  if (spec.rfind("file:", 0) == 0) {
    const std::string path = spec.substr(5);
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open matrix file '" + path + "'");
    std::vector<std::vector<cplx>> rows;
    std::string line;
    while (std::getline(in, line)) {
      line = trim(line);
      if (line.empty() || line[0] == '#') continue;
      std::vector<cplx> row;
      for (const auto& cell : split(line, ',')) row.push_back(parse_complex(cell));
      rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("matrix file is empty");
    const std::size_t n = rows.size();
    std::vector<cplx> e;
    for (const auto& r : rows) {
      if (r.size() != n) throw ParseError("matrix file must hold a square matrix");
      e.insert(e.end(), r.begin(), r.end());
    }
    return ComplexMatrix(n, std::move(e));
  }
  throw ParseError("matrix must be diag:..., file:... or fixture:...");
}

GridSpec parse_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw ParseError("grid must be lo:hi:points");
  GridSpec g;
  g.lo = parse_real(parts[0]);
  g.hi = parse_real(parts[1]);
  const std::string p = trim(parts[2]);
  unsigned long long points = 0;
  const auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), points);
  if (p.empty() || ec != std::errc() || ptr != p.data() + p.size()) {
    throw ParseError("grid point count must be an integer");
  }
  if (points < 2) throw ParseError("grid needs at least two points");
  if (!(g.lo < g.hi)) throw ParseError("grid needs lo < hi");
  g.points = static_cast<std::size_t>(points);
  return g;
}

std::uint64_t resolve_seed(const RunConfig& config) {
  if (config.seed) return *config.seed;
  if (const char* env = std::getenv("SHADOWLAB_SEED")) {
    const std::string s = trim(env);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      throw ParseError("SHADOWLAB_SEED must be an unsigned integer");
    }
    return v;
  }
  return kDefaultSeed;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

}  // namespace shadowlab::cli
