// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "brg/fermion.hpp"

namespace brg {

FermionOperator build_hamiltonian(const IntegralSet& integrals, SpinLayout layout) {
  integrals.validate();
  const int m = integrals.n_spatial;
  FermionOperator raw(integrals.e_core);
  for (int sigma = 0; sigma < 2; ++sigma)
    for (int p = 0; p < m; ++p)
      for (int q = 0; q < m; ++q) {
        const double hpq = integrals.h(p, q);
        if (hpq == 0.0) continue;
        raw.add_term({create(spin_orbital(p, sigma, m, layout)), annihilate(spin_orbital(q, sigma, m, layout))}, hpq);
      }
  // 1/2 sum (pq|rs) a+_{p s} a+_{r t} a_{s t} a_{q s}
  for (int sigma = 0; sigma < 2; ++sigma)
    for (int tau = 0; tau < 2; ++tau)
      for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q)
          for (int r = 0; r < m; ++r)
            for (int s = 0; s < m; ++s) {
              const double v = integrals.v(p, q, r, s);
              if (std::abs(v) <= kPruneThreshold) continue;
              const int ps = spin_orbital(p, sigma, m, layout);
              const int qs = spin_orbital(q, sigma, m, layout);
              const int rt = spin_orbital(r, tau, m, layout);
              const int st = spin_orbital(s, tau, m, layout);
              if (ps == rt || qs == st) continue;  // a+a+ or aa on one mode vanishes
              raw.add_term({create(ps), create(rt), annihilate(st), annihilate(qs)}, 0.5 * v);
            }
  return normal_order(raw);
}

}  // namespace brg
