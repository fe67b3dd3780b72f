#include "ptwg/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "ptwg/errors.hpp"

namespace ptwg {

namespace {

[[noreturn]] void type_error(const std::string& key, const char* want) {
  throw ConfigError("config key '" + key + "' is not a " + want);
}

// ---------------------------------------------------------------------------
// Character-stream parser for the TOML subset.  Line-oriented at the top
// level (one key = value or [section] per line); arrays and inline tables
// may span lines.
// ---------------------------------------------------------------------------
class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  TomlTable parse() {
    TomlTable root;
    TomlTable* current = &root;
    for (;;) {
      skip_blank();
      if (eof()) break;
      if (peek() == '[') {
        current = open_section(root);
        continue;
      }
      std::string key = parse_key();
      skip_inline_ws();
      if (eof() || get() != '=') fail("expected '=' after key '" + key + "'");
      skip_inline_ws();
      TomlValue value = parse_value();
      if (!current->emplace(key, std::move(value)).second)
        fail("duplicate key '" + key + "'");
      expect_line_end();
    }
    return root;
  }

 private:
  const std::string& s_;
  size_t pos_ = 0;
  int line_ = 1;

  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  char get() {
    char c = s_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ConfigError("config parse error (line " + std::to_string(line_) +
                      "): " + msg);
  }

  void skip_inline_ws() {
    while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r'))
      ++pos_;
  }

  void skip_comment() {
    while (!eof() && peek() != '\n') ++pos_;
  }

  // Whitespace, newlines and comments between top-level statements.
  void skip_blank() {
    for (;;) {
      skip_inline_ws();
      if (eof()) return;
      if (peek() == '#') {
        skip_comment();
      } else if (peek() == '\n') {
        get();
      } else {
        return;
      }
    }
  }

  // Whitespace/newlines/comments inside arrays and inline tables.
  void skip_filler() { skip_blank(); }

  void expect_line_end() {
    skip_inline_ws();
    if (eof()) return;
    if (peek() == '#') skip_comment();
    if (eof()) return;
    if (peek() != '\n') fail("trailing characters after value");
    get();
  }

  static bool key_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  }

  std::string parse_key() {
    std::string key;
    while (!eof() && key_char(peek())) key.push_back(get());
    if (key.empty()) fail("expected a key");
    return key;
  }

  TomlTable* open_section(TomlTable& root) {
    get();  // '['
    skip_inline_ws();
    TomlTable* t = &root;
    for (;;) {
      std::string part = parse_key();
      auto it = t->find(part);
      if (it == t->end())
        it = t->emplace(part, TomlValue(TomlTable{})).first;
      t = &it->second.as_table(part);
      skip_inline_ws();
      if (!eof() && peek() == '.') {
        get();
        skip_inline_ws();
        continue;
      }
      break;
    }
    if (eof() || get() != ']') fail("unterminated [section] header");
    expect_line_end();
    return t;
  }

  TomlValue parse_value() {
    if (eof()) fail("expected a value");
    char c = peek();
    if (c == '"') return parse_string();
    if (c == '[') return parse_array();
    if (c == '{') return parse_inline_table();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_bool_word();
    return parse_number();
  }

  TomlValue parse_string() {
    get();  // opening quote
    std::string out;
    for (;;) {
      if (eof()) fail("unterminated string");
      char c = get();
      if (c == '"') break;
      if (c == '\n') fail("newline inside string");
      if (c == '\\') {
        if (eof()) fail("unterminated escape");
        char e = get();
        switch (e) {
          case '"': out.push_back('"'); break;
          case '\\': out.push_back('\\'); break;
          case 'n': out.push_back('\n'); break;
          case 't': out.push_back('\t'); break;
          default: fail(std::string("unsupported escape \\") + e);
        }
      } else {
        out.push_back(c);
      }
    }
    return TomlValue(std::move(out));
  }

  TomlValue parse_array() {
    get();  // '['
    TomlArray arr;
    for (;;) {
      skip_filler();
      if (eof()) fail("unterminated array");
      if (peek() == ']') {
        get();
        break;
      }
      arr.push_back(parse_value());
      skip_filler();
      if (eof()) fail("unterminated array");
      if (peek() == ',') {
        get();
      } else if (peek() != ']') {
        fail("expected ',' or ']' in array");
      }
    }
    return TomlValue(std::move(arr));
  }

  TomlValue parse_inline_table() {
    get();  // '{'
    TomlTable table;
    skip_filler();
    if (!eof() && peek() == '}') {
      get();
      return TomlValue(std::move(table));
    }
    for (;;) {
      skip_filler();
      std::string key = parse_key();
      skip_inline_ws();
      if (eof() || get() != '=') fail("expected '=' in inline table");
      skip_inline_ws();
      TomlValue value = parse_value();
      if (!table.emplace(key, std::move(value)).second)
        fail("duplicate key '" + key + "' in inline table");
      skip_filler();
      if (eof()) fail("unterminated inline table");
      char c = get();
      if (c == '}') break;
      if (c != ',') fail("expected ',' or '}' in inline table");
    }
    return TomlValue(std::move(table));
  }

  TomlValue parse_bool_word() {
    std::string word;
    while (!eof() && std::isalpha(static_cast<unsigned char>(peek())))
      word.push_back(get());
    if (word == "true") return TomlValue(true);
    if (word == "false") return TomlValue(false);
    if (word == "inf") return TomlValue(std::numeric_limits<double>::infinity());
    if (word == "nan")
      return TomlValue(std::numeric_limits<double>::quiet_NaN());
    fail("unrecognized word '" + word + "'");
  }

  TomlValue parse_number() {
    std::string tok;
    while (!eof()) {
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' ||
          c == '-' || c == '.' || c == 'e' || c == 'E' || c == '_') {
        if (c != '_') tok.push_back(c);
        get();
      } else {
        break;
      }
    }
    if (tok.empty()) fail("expected a number");
    char* end = nullptr;
    double v = std::strtod(tok.c_str(), &end);
    if (end == nullptr || *end != '\0')
      fail("malformed number '" + tok + "'");
    return TomlValue(v);
  }
};

// ---------------------------------------------------------------------------
// Config assembly
// ---------------------------------------------------------------------------

const TomlValue* find(const TomlTable& t, const std::string& key) {
  auto it = t.find(key);
  return it == t.end() ? nullptr : &it->second;
}

double number_or(const TomlTable& t, const std::string& key, double dflt) {
  const TomlValue* v = find(t, key);
  return v ? v->as_number(key) : dflt;
}

long long integer_or(const TomlTable& t, const std::string& key,
                     long long dflt) {
  const TomlValue* v = find(t, key);
  return v ? v->as_integer(key) : dflt;
}

bool bool_or(const TomlTable& t, const std::string& key, bool dflt) {
  const TomlValue* v = find(t, key);
  return v ? v->as_bool(key) : dflt;
}

Piece piece_from_table(const TomlTable& t) {
  Piece piece;
  const TomlValue* shape = find(t, "shape");
  if (!shape) throw ConfigError("beta piece is missing 'shape'");
  piece.shape = shape_from_tag(shape->as_string("shape"));
  piece.center = number_or(t, "center", 0.0);
  piece.halfwidth = number_or(t, "halfwidth", 1.0);
  piece.amplitude = number_or(t, "amplitude", 1.0);
  if (piece.halfwidth <= 0.0)
    throw ConfigError("beta piece halfwidth must be positive");
  if (const TomlValue* samples = find(t, "samples")) {
    for (const TomlValue& s : samples->as_array("samples"))
      piece.samples.push_back(s.as_number("samples"));
  }
  if (piece.shape == Shape::CustomSampled && piece.samples.size() < 4)
    throw ConfigError("sampled beta piece needs at least 4 samples");
  return piece;
}

}  // namespace

double TomlValue::as_number(const std::string& key) const {
  if (!is_number()) type_error(key, "number");
  return std::get<double>(v_);
}

long long TomlValue::as_integer(const std::string& key) const {
  double d = as_number(key);
  double r = std::nearbyint(d);
  if (std::abs(d - r) > 1e-9 || std::abs(d) > 9.0e15)
    throw ConfigError("config key '" + key + "' must be an integer");
  return static_cast<long long>(r);
}

bool TomlValue::as_bool(const std::string& key) const {
  if (!is_bool()) type_error(key, "boolean");
  return std::get<bool>(v_);
}

const std::string& TomlValue::as_string(const std::string& key) const {
  if (!is_string()) type_error(key, "string");
  return std::get<std::string>(v_);
}

const TomlArray& TomlValue::as_array(const std::string& key) const {
  if (!is_array()) type_error(key, "array");
  return std::get<TomlArray>(v_);
}

const TomlTable& TomlValue::as_table(const std::string& key) const {
  if (!is_table()) type_error(key, "table");
  return std::get<TomlTable>(v_);
}

TomlTable& TomlValue::as_table(const std::string& key) {
  if (!is_table()) type_error(key, "table");
  return std::get<TomlTable>(v_);
}

TomlTable parse_toml_text(const std::string& text) {
  return Parser(text).parse();
}

TomlTable parse_toml_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_toml_text(buf.str());
}

RunMode run_mode_from_name(const std::string& name) {
  if (name == "modes") return RunMode::Modes;
  if (name == "tau") return RunMode::Tau;
  if (name == "predict") return RunMode::Predict;
  if (name == "fd") return RunMode::Fd;
  if (name == "sweep") return RunMode::Sweep;
  if (name == "validate") return RunMode::Validate;
  throw ConfigError("unknown run mode '" + name + "'");
}

const char* run_mode_name(RunMode m) {
  switch (m) {
    case RunMode::Modes: return "modes";
    case RunMode::Tau: return "tau";
    case RunMode::Predict: return "predict";
    case RunMode::Fd: return "fd";
    case RunMode::Sweep: return "sweep";
    case RunMode::Validate: return "validate";
  }
  return "?";
}

ExperimentConfig config_from_table(const TomlTable& root) {
  ExperimentConfig cfg;

  if (const TomlValue* v = find(root, "mode"))
    cfg.mode = run_mode_from_name(v->as_string("mode"));

  cfg.params.d = number_or(root, "d", cfg.params.d);
  cfg.params.alpha0 = number_or(root, "alpha0", cfg.params.alpha0);
  if (cfg.params.d <= 0.0) throw ConfigError("d must be positive");

  cfg.J = static_cast<int>(integer_or(root, "J", cfg.J));
  if (cfg.J < 1) throw ConfigError("J must be >= 1");
  cfg.jobs = static_cast<int>(integer_or(root, "jobs", cfg.jobs));
  if (cfg.jobs < 1) throw ConfigError("jobs must be >= 1");
  if (const TomlValue* v = find(root, "out"))
    cfg.output = v->as_string("out");

  if (const TomlValue* v = find(root, "epsilons")) {
    for (const TomlValue& e : v->as_array("epsilons"))
      cfg.epsilons.push_back(e.as_number("epsilons"));
  } else if (const TomlValue* e = find(root, "epsilon")) {
    cfg.epsilons.push_back(e->as_number("epsilon"));
  }
  for (size_t i = 0; i < cfg.epsilons.size(); ++i) {
    if (cfg.epsilons[i] <= 0.0)
      throw ConfigError("epsilons must all be positive");
    if (i > 0 && cfg.epsilons[i] >= cfg.epsilons[i - 1])
      throw ConfigError("epsilons must be strictly decreasing");
  }

  if (const TomlValue* v = find(root, "beta")) {
    std::vector<Piece> pieces;
    for (const TomlValue& entry : v->as_array("beta"))
      pieces.push_back(piece_from_table(entry.as_table("beta[]")));
    cfg.beta = PerturbationProfile(std::move(pieces));
  }

  if (const TomlValue* v = find(root, "grid")) {
    const TomlTable& g = v->as_table("grid");
    cfg.grid.L = number_or(g, "L", cfg.grid.L);
    cfg.grid.N1 = static_cast<int>(integer_or(g, "N1", cfg.grid.N1));
    cfg.grid.N2 = static_cast<int>(integer_or(g, "N2", cfg.grid.N2));
    cfg.grid.h1 = number_or(g, "h1", cfg.grid.h1);
    cfg.grid.richardson = bool_or(g, "richardson", cfg.grid.richardson);
    if (cfg.grid.L < 0.0) throw ConfigError("grid.L must be >= 0");
    if (cfg.grid.N1 < 0) throw ConfigError("grid.N1 must be >= 0");
    if (cfg.grid.N2 < 3) throw ConfigError("grid.N2 must be >= 3");
    if (cfg.grid.h1 <= 0.0) throw ConfigError("grid.h1 must be positive");
  }

  if (const TomlValue* v = find(root, "fd")) {
    const TomlTable& f = v->as_table("fd");
    if (find(f, "sigma_re") || find(f, "sigma_im")) {
      cfg.fd.sigma = {number_or(f, "sigma_re", 0.0),
                      number_or(f, "sigma_im", 0.0)};
      cfg.fd.sigma_set = true;
    }
    cfg.fd.dump_field = bool_or(f, "dump_field", cfg.fd.dump_field);
    cfg.fd.tol = number_or(f, "tol", cfg.fd.tol);
    cfg.fd.max_iter = static_cast<int>(integer_or(f, "max_iter",
                                                  cfg.fd.max_iter));
    if (cfg.fd.tol <= 0.0) throw ConfigError("fd.tol must be positive");
    if (cfg.fd.max_iter < 1) throw ConfigError("fd.max_iter must be >= 1");
  }

  require_valid(cfg.params);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  return config_from_table(parse_toml_file(path));
}

StripGrid resolve_grid(const GridSpec& spec, const PerturbationProfile& beta,
                       double decay_hint) {
  StripGrid g;
  if (spec.L > 0.0) {
    g.L = spec.L;
  } else {
    // Long enough that the predicted mode decays by e^{-4} before the wall,
    // with 5% margin, and the support floor keeps the perturbation interior.
    double from_decay =
        decay_hint > 0.0 ? 4.0 / decay_hint * 1.05 : 0.0;
    double from_support =
        std::max(std::abs(beta.support_lo()), std::abs(beta.support_hi())) +
        4.0;
    g.L = std::max({from_decay, from_support, 8.0});
  }
  if (spec.N1 > 0) {
    g.N1 = spec.N1;
  } else {
    g.N1 = std::max(99, static_cast<int>(std::lround(2.0 * g.L / spec.h1)) - 1);
  }
  g.N2 = spec.N2;
  return g;
}

}  // namespace ptwg
