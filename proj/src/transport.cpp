#include "stratpol/transport.hpp"

#include <cmath>
#include <stdexcept>

#include "stratpol/detail/argmax.hpp"

namespace stratpol {

TransportPlan transport_plan(const Instance& inst, const Policy& pol, double tie_tol) {
  const std::size_t m = inst.size();
  if (pol.size() != m) throw std::invalid_argument("policy length differs from instance size");
  const std::vector<double> rw = inst.rewards();
  TransportPlan plan;
  plan.flow.assign(m * m, 0.0);
  detail::for_each_best_response(inst, pol.pi.data(), rw.data(), tie_tol,
                                 [&](std::size_t i, std::size_t t, double gain, bool) {
                                   plan.flow[i * m + t] = inst.p[i];
                                   plan.objective += inst.p[i] * gain;
                                 });
  return plan;
}

bool check_transport_consistency(const Instance& inst, const Policy& pol, double tol) {
  const std::size_t m = inst.size();
  const TransportPlan plan = transport_plan(inst, pol);
  const std::vector<double> induced = induced_distribution(inst, pol);
  for (std::size_t j = 0; j < m; ++j) {
    double column = 0.0;
    for (std::size_t i = 0; i < m; ++i) column += plan.flow[i * m + j];
    if (std::abs(column - induced[j]) > tol) return false;
  }
  return true;
}

}  // namespace stratpol
