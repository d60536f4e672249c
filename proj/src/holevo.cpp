#include "qce/holevo.hpp"

#include <cmath>

namespace qce {

HolevoQuantity holevo_chi(const Ensemble& ens, const KrausChannel& phi) {
  if (ens.dim() != phi.input_dim()) {
    throw std::invalid_argument("holevo_chi: ensemble dimension does not match channel input");
  }
  std::vector<DensityMatrix> outs;
  outs.reserve(ens.size());
  for (const auto& x : ens.states()) outs.push_back(phi.apply(x));
  DensityMatrix out_avg = phi.apply(ens.average());

  double diff = von_neumann_entropy(out_avg).bits();
  for (std::size_t j = 0; j < outs.size(); ++j) {
    diff -= ens.weights()[j] * von_neumann_entropy(outs[j]).bits();
  }

  double rel = 0.0;
  for (std::size_t j = 0; j < outs.size(); ++j) {
    EntropyValue s = relative_entropy(outs[j], out_avg);
    if (s.is_infinite()) {
      throw std::runtime_error("holevo_chi: member output escapes the average's support");
    }
    rel += ens.weights()[j] * s.bits();
  }

  if (std::abs(diff - rel) > 1e-8) {
    throw std::runtime_error("holevo_chi: entropy-difference and relative-entropy forms disagree");
  }
  if (diff < -1e-9) {
    throw std::runtime_error("holevo_chi: negative Holevo quantity beyond tolerance");
  }
  double chi = diff < 0.0 ? 0.0 : diff;
  double cap = std::log2(static_cast<double>(phi.output_dim()));
  if (chi > cap + 1e-9) {
    throw std::runtime_error("holevo_chi: value exceeds log2(output dimension)");
  }
  return HolevoQuantity{chi, diff, rel, ens, phi};
}

}  // namespace qce
