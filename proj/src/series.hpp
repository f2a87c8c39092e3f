#pragma once

#include "hypcount/engine.hpp"

namespace hypcount {

struct Engine::Series {
  UTuple tuple;
  Parity parity = Parity::Odd;
  QRat J;
  std::vector<QPoly> bhat;    // bhat[j] = b̂_j
  std::vector<QRat> values;   // values[g + 1] = u_g
  std::vector<bool> loaded;   // values[i] came from the persistent cache

  const QPoly& bhat_at(std::size_t j) {
    while (bhat.size() <= j) {
      const int next = static_cast<int>(bhat.size());
      QPoly b = bj_poly(tuple, next);
      if (!bhat.empty()) b += bhat.back();
      bhat.push_back(std::move(b));
    }
    return bhat[j];
  }
};

}  // namespace hypcount
