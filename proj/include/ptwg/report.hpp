#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ptwg/eigen.hpp"
#include "ptwg/predict.hpp"
#include "ptwg/transverse.hpp"

namespace ptwg {

// One epsilon of a prediction-vs-solver sweep.  "absent" rows (no bound
// state predicted) and non-converged solves keep their slots with NaN
// entries so the CSV stays aligned with the requested epsilon list.
struct SweepRow {
  double epsilon = 0.0;
  cplx lambda_pred{0.0, 0.0};
  cplx lambda_fd{0.0, 0.0};
  double abs_err = 0.0;
  double coeff_fit = 0.0;  // (mu0^2 - Re lambda_fd) / eps^order
  double decay_pred = 0.0;
  double decay_fd = 0.0;
  long long runtime_ms = 0;
  bool absent = false;
  bool converged = false;
};

// Shortest decimal string that round-trips a double (17 significant digits).
std::string fmt17(double v);
std::string json_escape(const std::string& s);

std::string tau_json(const TauResult& t);
std::string prediction_json(const Prediction& p);

// Header exactly: j,mu,re_A,im_A
std::string modes_csv(const ModeBasis& basis);

// Header exactly:
// epsilon,re_pred,im_pred,re_fd,im_fd,abs_err,coeff_fit,decay_pred,decay_fd,runtime_ms
std::string sweep_csv(const std::vector<SweepRow>& rows);

// Grid header "N1 N2 L d" then one "i j Re Im" line per unknown.
void write_field(std::ostream& out, const EigenPair& pair,
                 const StripGrid& grid, const WaveguideParams& p);

// Writes to the named file, or to stdout when path is empty.
void emit(const std::string& path, const std::string& content);

}  // namespace ptwg
