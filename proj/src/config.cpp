#include "zkrdtm/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace zkrdtm {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

struct Entry {
  std::string value;
  int line = 0;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"pde", {"a", "b", "k", "n"}},
      {"ic", {"family", "amplitude", "scale", "coefficient"}},
      {"solve", {"order", "backend"}},
      {"grid", {"x0", "y0", "dx", "dy", "nx", "ny", "accuracy", "precision", "refine", "region"}},
      {"eval", {"points", "x", "y", "t"}},
      {"output", {"path", "format", "plot"}},
  };
  return keys;
}

double parse_real(const Entry& e, const std::string& key) {
  const std::string_view s = trim(e.value);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError(e.line, "'" + key + "' expects a real number, got '" + e.value + "'");
  }
  return v;
}

double parse_real_token(std::string_view s, int line, const std::string& key) {
  return parse_real(Entry{std::string(s), line}, key);
}

long parse_int(const Entry& e, const std::string& key) {
  const std::string_view s = trim(e.value);
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError(e.line, "'" + key + "' expects an integer, got '" + e.value + "'");
  }
  return v;
}

Rational parse_rational(const Entry& e, const std::string& key) {
  try {
    return Rational::parse(e.value);
  } catch (const std::exception&) {
    throw ConfigError(e.line, "'" + key + "' expects a rational (p, p/q or decimal), got '" + e.value + "'");
  }
}

bool parse_bool(const Entry& e, const std::string& key) {
  if (e.value == "true" || e.value == "yes" || e.value == "1") return true;
  if (e.value == "false" || e.value == "no" || e.value == "0") return false;
  throw ConfigError(e.line, "'" + key + "' expects true or false, got '" + e.value + "'");
}

std::vector<double> parse_real_list(const Entry& e, const std::string& key) {
  std::vector<double> out;
  for (auto tok : split(e.value, ',')) out.push_back(parse_real_token(tok, e.line, key));
  return out;
}

std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

const Entry* find(const std::map<std::string, Section>& sections, const std::string& sec, const std::string& key) {
  const auto s = sections.find(sec);
  if (s == sections.end()) return nullptr;
  const auto k = s->second.find(key);
  return k == s->second.end() ? nullptr : &k->second;
}

const Entry& require(const std::map<std::string, Section>& sections, const std::string& sec, const std::string& key) {
  const Entry* e = find(sections, sec, key);
  if (e == nullptr) throw ConfigError(0, "missing required key '" + key + "' in [" + sec + "]");
  return *e;
}

int line_of(const std::map<std::string, Section>& sections, const std::string& sec, const std::string& key) {
  const Entry* e = find(sections, sec, key);
  return e == nullptr ? 0 : e->line;
}

}  // namespace

std::vector<EvalPoint> default_eval_points() {
  std::vector<EvalPoint> pts;
  for (double x : {0.0, 0.5, 1.0}) {
    for (double y : {0.0, 0.5, 1.0}) pts.push_back({x, y, 1e-3});
  }
  return pts;
}

Rational default_coefficient(std::string_view family) {
  if (family == "sinh") return Rational(3, 2);
  if (family == "cosh_squared") return Rational(-4, 3);
  if (family == "gaussian" || family == "sech_squared") return Rational(1);
  throw ConfigError(0, "unknown initial-condition family '" + std::string(family) + "'");
}

bool is_exact_family(std::string_view family) { return family == "sinh" || family == "cosh_squared"; }

HyperPoly exact_profile(const IcConfig& ic) {
  const Rational amp = ic.coefficient * ic.amplitude;
  if (ic.family == "sinh") return HyperPoly::sinh(ic.scale).scaled(amp);
  if (ic.family == "cosh_squared") return HyperPoly::monomial(ic.scale, 0, 2, amp);
  throw ConfigError(0, "initial-condition family '" + ic.family +
                           "' has no exact representation; use backend = grid");
}

RunConfig parse_config(std::string_view text) {
  std::map<std::string, Section> sections;
  std::string current;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, "malformed section header");
      current = std::string(trim(line.substr(1, line.size() - 2)));
      if (!known_keys().contains(current)) throw ConfigError(line_no, "unknown section [" + current + "]");
      if (sections.contains(current)) throw ConfigError(line_no, "duplicate section [" + current + "]");
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
    if (current.empty()) throw ConfigError(line_no, "key outside of any section");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError(line_no, "empty key");
    if (!known_keys().at(current).contains(key)) {
      throw ConfigError(line_no, "unknown key '" + key + "' in [" + current + "]");
    }
    if (value.empty()) throw ConfigError(line_no, "empty value for '" + key + "'");
    auto& sec = sections[current];
    if (sec.contains(key)) throw ConfigError(line_no, "duplicate key '" + key + "'");
    sec[key] = Entry{value, line_no};
  }

  RunConfig cfg;

  cfg.pde.a = parse_rational(require(sections, "pde", "a"), "a");
  cfg.pde.b = parse_rational(require(sections, "pde", "b"), "b");
  cfg.pde.k_coef = parse_rational(require(sections, "pde", "k"), "k");
  const long n = parse_int(require(sections, "pde", "n"), "n");
  if (n < 2 || n > 64) throw ConfigError(line_of(sections, "pde", "n"), "n must be an integer >= 2, got " + std::to_string(n));
  cfg.pde.n = static_cast<int>(n);
  if (cfg.pde.b.sign() <= 0) throw ConfigError(line_of(sections, "pde", "b"), "b must be > 0");
  if (cfg.pde.k_coef.sign() <= 0) throw ConfigError(line_of(sections, "pde", "k"), "k must be > 0");

  const Entry& family = require(sections, "ic", "family");
  cfg.ic.family = family.value;
  try {
    cfg.ic.coefficient = default_coefficient(cfg.ic.family);
  } catch (const ConfigError&) {
    throw ConfigError(family.line, "unknown initial-condition family '" + family.value + "'");
  }
  cfg.ic.amplitude = parse_rational(require(sections, "ic", "amplitude"), "amplitude");
  if (const Entry* e = find(sections, "ic", "scale")) cfg.ic.scale = parse_rational(*e, "scale");
  if (const Entry* e = find(sections, "ic", "coefficient")) cfg.ic.coefficient = parse_rational(*e, "coefficient");
  if (cfg.ic.scale.is_zero()) throw ConfigError(line_of(sections, "ic", "scale"), "scale must be nonzero");

  if (const Entry* e = find(sections, "solve", "order")) {
    const long K = parse_int(*e, "order");
    if (K < 0 || K > 64) throw ConfigError(e->line, "order must be in 0..64");
    cfg.order = static_cast<int>(K);
  }
  if (const Entry* e = find(sections, "solve", "backend")) {
    if (e->value == "exact") {
      cfg.backend = Backend::exact;
    } else if (e->value == "grid") {
      cfg.backend = Backend::grid;
    } else {
      throw ConfigError(e->line, "backend must be exact or grid, got '" + e->value + "'");
    }
  }

  if (sections.contains("grid")) {
    GridConfig g;
    g.geometry.x0 = parse_real(require(sections, "grid", "x0"), "x0");
    g.geometry.y0 = parse_real(require(sections, "grid", "y0"), "y0");
    g.geometry.dx = parse_real(require(sections, "grid", "dx"), "dx");
    g.geometry.dy = parse_real(require(sections, "grid", "dy"), "dy");
    const long nx = parse_int(require(sections, "grid", "nx"), "nx");
    const long ny = parse_int(require(sections, "grid", "ny"), "ny");
    if (!(g.geometry.dx > 0.0)) throw ConfigError(line_of(sections, "grid", "dx"), "dx must be > 0");
    if (!(g.geometry.dy > 0.0)) throw ConfigError(line_of(sections, "grid", "dy"), "dy must be > 0");
    if (nx < 3 || nx > 100000) throw ConfigError(line_of(sections, "grid", "nx"), "nx out of range");
    if (ny < 3 || ny > 100000) throw ConfigError(line_of(sections, "grid", "ny"), "ny out of range");
    g.geometry.nx = static_cast<int>(nx);
    g.geometry.ny = static_cast<int>(ny);
    if (const Entry* e = find(sections, "grid", "accuracy")) {
      const long p = parse_int(*e, "accuracy");
      if (p != 2 && p != 4 && p != 6 && p != 8) throw ConfigError(e->line, "accuracy must be 2, 4, 6 or 8");
      g.accuracy = static_cast<int>(p);
    }
    if (const Entry* e = find(sections, "grid", "precision")) {
      if (e->value == "binary64") {
        g.precision = Precision::binary64;
      } else if (e->value == "binary128") {
        g.precision = Precision::binary128;
      } else {
        throw ConfigError(e->line, "precision must be binary64 or binary128");
      }
    }
    if (const Entry* e = find(sections, "grid", "refine")) g.refine = parse_bool(*e, "refine");
    if (const Entry* e = find(sections, "grid", "region")) {
      g.region = parse_real(*e, "region");
      if (!(g.region > 0.0)) throw ConfigError(e->line, "region must be > 0");
    }
    cfg.grid = g;
  }
  if (cfg.backend == Backend::grid && !cfg.grid) throw ConfigError(0, "backend = grid requires a [grid] section");
  if (cfg.backend == Backend::exact && cfg.grid) {
    throw ConfigError(line_of(sections, "solve", "backend"), "[grid] section given but backend is exact");
  }
  if (cfg.backend == Backend::exact && !is_exact_family(cfg.ic.family)) {
    throw ConfigError(family.line, "family '" + cfg.ic.family + "' requires backend = grid");
  }

  const Entry* points = find(sections, "eval", "points");
  const Entry* xs = find(sections, "eval", "x");
  const Entry* ys = find(sections, "eval", "y");
  const Entry* ts = find(sections, "eval", "t");
  if (points != nullptr) {
    if (xs != nullptr || ys != nullptr || ts != nullptr) {
      throw ConfigError(points->line, "'points' cannot be combined with x/y/t lattice keys");
    }
    for (auto tok : split(points->value, ';')) {
      if (tok.empty()) continue;
      const auto parts = split(tok, ',');
      if (parts.size() != 3) throw ConfigError(points->line, "each point must be 'x, y, t'");
      cfg.points.push_back({parse_real_token(parts[0], points->line, "points"),
                            parse_real_token(parts[1], points->line, "points"),
                            parse_real_token(parts[2], points->line, "points")});
    }
    if (cfg.points.empty()) throw ConfigError(points->line, "no points given");
  } else if (xs != nullptr || ys != nullptr || ts != nullptr) {
    const std::vector<double> lx = xs ? parse_real_list(*xs, "x") : std::vector<double>{0.0, 0.5, 1.0};
    const std::vector<double> ly = ys ? parse_real_list(*ys, "y") : std::vector<double>{0.0, 0.5, 1.0};
    const std::vector<double> lt = ts ? parse_real_list(*ts, "t") : std::vector<double>{1e-3};
    for (double x : lx) {
      for (double y : ly) {
        for (double t : lt) cfg.points.push_back({x, y, t});
      }
    }
  } else {
    cfg.points = default_eval_points();
  }

  if (const Entry* e = find(sections, "output", "path")) cfg.output.path = e->value;
  if (const Entry* e = find(sections, "output", "format")) {
    if (e->value != "csv") throw ConfigError(e->line, "only format = csv is supported");
    cfg.output.format = e->value;
  }
  if (const Entry* e = find(sections, "output", "plot")) cfg.output.plot_path = e->value;
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void validate_config(const RunConfig& config) {
  try {
    config.pde.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(0, e.what());
  }
  if (config.order < 0) throw ConfigError(0, "order must be >= 0");
  if (config.backend == Backend::grid && !config.grid) throw ConfigError(0, "backend = grid requires a [grid] section");
  if (config.backend == Backend::exact && config.grid) throw ConfigError(0, "[grid] section given but backend is exact");
  if (config.backend == Backend::exact && !is_exact_family(config.ic.family)) {
    throw ConfigError(0, "family '" + config.ic.family + "' requires backend = grid");
  }
}

std::string render_config(const RunConfig& c) {
  std::ostringstream os;
  os << "[pde]\n";
  os << "a = " << c.pde.a.str() << "\n";
  os << "b = " << c.pde.b.str() << "\n";
  os << "k = " << c.pde.k_coef.str() << "\n";
  os << "n = " << c.pde.n << "\n\n";
  os << "[ic]\n";
  os << "family = " << c.ic.family << "\n";
  os << "amplitude = " << c.ic.amplitude.str() << "\n";
  os << "scale = " << c.ic.scale.str() << "\n";
  os << "coefficient = " << c.ic.coefficient.str() << "\n\n";
  os << "[solve]\n";
  os << "order = " << c.order << "\n";
  os << "backend = " << (c.backend == Backend::exact ? "exact" : "grid") << "\n\n";
  if (c.grid) {
    const auto& g = *c.grid;
    os << "[grid]\n";
    os << "x0 = " << format_real(g.geometry.x0) << "\n";
    os << "y0 = " << format_real(g.geometry.y0) << "\n";
    os << "dx = " << format_real(g.geometry.dx) << "\n";
    os << "dy = " << format_real(g.geometry.dy) << "\n";
    os << "nx = " << g.geometry.nx << "\n";
    os << "ny = " << g.geometry.ny << "\n";
    os << "accuracy = " << g.accuracy << "\n";
    os << "precision = " << (g.precision == Precision::binary64 ? "binary64" : "binary128") << "\n";
    os << "refine = " << (g.refine ? "true" : "false") << "\n";
    os << "region = " << format_real(g.region) << "\n\n";
  }
  os << "[eval]\n";
  os << "points = ";
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    if (i > 0) os << "; ";
    os << format_real(c.points[i].x) << ", " << format_real(c.points[i].y) << ", " << format_real(c.points[i].t);
  }
  os << "\n\n[output]\n";
  if (!c.output.path.empty()) os << "path = " << c.output.path << "\n";
  os << "format = " << c.output.format << "\n";
  if (!c.output.plot_path.empty()) os << "plot = " << c.output.plot_path << "\n";
  return os.str();
}

}  // namespace zkrdtm
