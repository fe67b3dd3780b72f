#pragma once

#include <complex>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "ptwg/grid.hpp"
#include "ptwg/params.hpp"
#include "ptwg/profile.hpp"

namespace ptwg {

// Value tree for the TOML subset the experiment configs use: numbers,
// booleans, strings, arrays (possibly of inline tables), [section] tables
// and # comments.  Everything numeric is stored as double.
class TomlValue;
using TomlArray = std::vector<TomlValue>;
using TomlTable = std::map<std::string, TomlValue>;

class TomlValue {
 public:
  TomlValue() : v_(0.0) {}
  explicit TomlValue(double d) : v_(d) {}
  explicit TomlValue(bool b) : v_(b) {}
  explicit TomlValue(std::string s) : v_(std::move(s)) {}
  explicit TomlValue(TomlArray a) : v_(std::move(a)) {}
  explicit TomlValue(TomlTable t) : v_(std::move(t)) {}

  bool is_number() const { return std::holds_alternative<double>(v_); }
  bool is_bool() const { return std::holds_alternative<bool>(v_); }
  bool is_string() const { return std::holds_alternative<std::string>(v_); }
  bool is_array() const { return std::holds_alternative<TomlArray>(v_); }
  bool is_table() const { return std::holds_alternative<TomlTable>(v_); }

  // Checked accessors; ConfigError on type mismatch.
  double as_number(const std::string& key) const;
  long long as_integer(const std::string& key) const;  // rejects fractions
  bool as_bool(const std::string& key) const;
  const std::string& as_string(const std::string& key) const;
  const TomlArray& as_array(const std::string& key) const;
  const TomlTable& as_table(const std::string& key) const;
  TomlTable& as_table(const std::string& key);

 private:
  std::variant<double, bool, std::string, TomlArray, TomlTable> v_;
};

TomlTable parse_toml_text(const std::string& text);
TomlTable parse_toml_file(const std::string& path);

enum class RunMode { Modes, Tau, Predict, Fd, Sweep, Validate };

RunMode run_mode_from_name(const std::string& name);
const char* run_mode_name(RunMode m);

// Grid request: zero entries are resolved per-epsilon from the predicted
// decay rate (L >= 4 / sqrt(mu0^2 - lambda_pred), padded 5%) and from the
// target longitudinal spacing h1.
struct GridSpec {
  double L = 0.0;   // 0 => auto
  int N1 = 0;       // 0 => auto from h1
  int N2 = 31;
  double h1 = 0.1;  // target coarse spacing when N1 == 0
  bool richardson = true;
};

struct FdOptions {
  std::complex<double> sigma{0.0, 0.0};
  bool sigma_set = false;  // false => seed at the predicted eigenvalue
  bool dump_field = false;
  double tol = 1e-8;
  int max_iter = 200;
};

struct ExperimentConfig {
  RunMode mode = RunMode::Predict;
  WaveguideParams params{3.141592653589793, -0.5};
  PerturbationProfile beta;
  std::vector<double> epsilons;  // strictly decreasing, all > 0
  GridSpec grid;
  FdOptions fd;
  int J = 128;
  int jobs = 1;
  std::string output;  // empty => stdout
};

ExperimentConfig config_from_table(const TomlTable& root);
ExperimentConfig load_config(const std::string& path);

// Resolves the auto-grid rule for one epsilon.  decay_hint is the predicted
// decay rate sqrt(mu0^2 - lambda_pred); pass 0 when no bound state is
// predicted (support-based floor only).
StripGrid resolve_grid(const GridSpec& spec, const PerturbationProfile& beta,
                       double decay_hint);

}  // namespace ptwg
