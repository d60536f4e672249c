#ifndef QCE_HOLEVO_HPP
#define QCE_HOLEVO_HPP

#include "qce/channel.hpp"
#include "qce/ensemble.hpp"
#include "qce/entropy.hpp"

namespace qce {

struct HolevoQuantity {
  double chi;                      // bits, >= 0
  double difference_form;          // S(Phi(avg)) - sum pi_j S(Phi(x_j))
  double relative_entropy_form;    // sum pi_j S(Phi(x_j) || Phi(avg))
  Ensemble ensemble;
  KrausChannel channel;
};

// Both forms are computed independently and must agree within 1e-8.
HolevoQuantity holevo_chi(const Ensemble& ens, const KrausChannel& phi);

}  // namespace qce

#endif
