#include "ptwg/report.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ptwg/errors.hpp"

namespace ptwg {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  return out;
}

namespace {

std::string tau_json_body(const TauResult& t, const std::string& indent) {
  std::ostringstream os;
  os << "{\n"
     << indent << "  \"value\": " << fmt17(t.value) << ",\n"
     << indent << "  \"regime\": \"" << regime_name(t.regime) << "\",\n"
     << indent << "  \"J\": " << t.J << ",\n"
     << indent << "  \"tail_bound\": " << fmt17(t.tail_bound) << ",\n"
     << indent << "  \"converged\": " << (t.converged ? "true" : "false")
     << "\n"
     << indent << "}";
  return os.str();
}

}  // namespace

std::string tau_json(const TauResult& t) { return tau_json_body(t, "") + "\n"; }

std::string prediction_json(const Prediction& p) {
  std::ostringstream os;
  os << "{\n"
     << "  \"exists\": \"" << existence_name(p.exists) << "\",\n"
     << "  \"case_tag\": \"" << json_escape(p.case_tag) << "\",\n"
     << "  \"regime\": \"" << regime_name(p.regime) << "\",\n"
     << "  \"epsilon\": " << fmt17(p.epsilon) << ",\n"
     << "  \"mean\": " << fmt17(p.mean) << ",\n"
     << "  \"k_coeffs\": [" << fmt17(p.k_coeffs[0]) << ", "
     << fmt17(p.k_coeffs[1]) << "],\n"
     << "  \"lambda_coeffs\": [" << fmt17(p.lambda_coeffs[0]) << ", "
     << fmt17(p.lambda_coeffs[1]) << ", " << fmt17(p.lambda_coeffs[2]) << ", "
     << fmt17(p.lambda_coeffs[3]) << "],\n"
     << "  \"lambda_eps\": " << fmt17(p.lambda_of(p.epsilon)) << ",\n"
     << "  \"decay_rate\": " << fmt17(p.decay_rate(p.epsilon)) << ",\n"
     << "  \"tau\": " << tau_json_body(p.tau_result, "  ") << "\n"
     << "}\n";
  return os.str();
}

std::string modes_csv(const ModeBasis& basis) {
  std::ostringstream os;
  os << "j,mu,re_A,im_A\n";
  for (const TransverseMode& m : basis.modes) {
    os << m.j << ',' << fmt17(m.mu) << ',' << fmt17(m.A.real()) << ','
       << fmt17(m.A.imag()) << '\n';
  }
  return os.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "epsilon,re_pred,im_pred,re_fd,im_fd,abs_err,coeff_fit,decay_pred,"
        "decay_fd,runtime_ms\n";
  for (const SweepRow& r : rows) {
    os << fmt17(r.epsilon) << ',' << fmt17(r.lambda_pred.real()) << ','
       << fmt17(r.lambda_pred.imag()) << ',' << fmt17(r.lambda_fd.real())
       << ',' << fmt17(r.lambda_fd.imag()) << ',' << fmt17(r.abs_err) << ','
       << fmt17(r.coeff_fit) << ',' << fmt17(r.decay_pred) << ','
       << fmt17(r.decay_fd) << ',' << r.runtime_ms << '\n';
  }
  return os.str();
}

void write_field(std::ostream& out, const EigenPair& pair,
                 const StripGrid& grid, const WaveguideParams& p) {
  out << grid.N1 << ' ' << grid.N2 << ' ' << fmt17(grid.L) << ' '
      << fmt17(p.d) << '\n';
  const int rows = grid.rows();
  for (int i = 1; i <= grid.N1; ++i) {
    for (int j = 0; j < rows; ++j) {
      const cplx v = pair.psi[static_cast<size_t>(i - 1) * rows + j];
      out << i << ' ' << j << ' ' << fmt17(v.real()) << ' '
          << fmt17(v.imag()) << '\n';
    }
  }
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << content;
  if (!out) throw ConfigError("failed writing output file: " + path);
}

}  // namespace ptwg
