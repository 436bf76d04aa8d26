#include "qslice/random.hpp"

#include "qslice/linalg.hpp"

namespace qslice {

Matrix random_invertible(Rng& rng, std::size_t n, int bound) {
  for (;;) {
    Matrix m = rng.matrix(n, n, bound);
    if (rank(m) == n) return m;
  }
}

}  // namespace qslice
