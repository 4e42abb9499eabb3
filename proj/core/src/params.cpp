#include "prabhakar/params.hpp"

#include <cmath>
#include <sstream>

#include "prabhakar/error.hpp"

namespace prabhakar {

namespace {

constexpr double kExcessSlack = 1e-12;

[[noreturn]] void reject(const std::string& inequality, const std::string& detail) {
  throw Error(ErrorKind::InvalidParam,
              "complete-monotonicity condition violated: " + inequality + " (" + detail + ")");
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

PrabhakarParams::PrabhakarParams(double alpha, double beta, double gamma, double omega)
    : alpha_(alpha), beta_(beta), gamma_(gamma), omega_(omega), excess_(0.0) {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma) ||
      !std::isfinite(omega)) {
    throw Error(ErrorKind::InvalidParam, "parameters must be finite");
  }
  if (!(omega < 0.0)) reject("omega < 0", "omega = " + num(omega));
  if (!(alpha > 0.0 && alpha <= 1.0)) reject("0 < alpha <= 1", "alpha = " + num(alpha));
  if (!(gamma > 0.0)) reject("0 < alpha*gamma", "gamma = " + num(gamma));
  if (!(beta <= 1.0)) reject("beta <= 1", "beta = " + num(beta));

  const double ag = alpha * gamma;
  const double excess = beta - ag;
  if (excess < -kExcessSlack * std::max(1.0, beta)) {
    reject("alpha*gamma <= beta", "alpha*gamma = " + num(ag) + " > beta = " + num(beta));
  }
  excess_ = std::abs(excess) <= kExcessSlack * std::max(1.0, beta) ? 0.0 : excess;
}

std::string PrabhakarParams::describe() const {
  return "alpha=" + num(alpha_) + ", beta=" + num(beta_) + ", gamma=" + num(gamma_) +
         ", omega=" + num(omega_);
}

}  // namespace prabhakar
