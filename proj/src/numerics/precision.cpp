#include "exz/numerics/precision.hpp"

#include <atomic>
#include <string>

#include "exz/error.hpp"
#include "exz/parallel.hpp"

namespace exz {

namespace {
std::atomic<unsigned> g_max_threads{1};
}

unsigned max_threads() noexcept { return g_max_threads.load(); }
void set_max_threads(unsigned n) noexcept { g_max_threads.store(n == 0 ? 1 : n); }

namespace num {

void PrecisionContext::validate() const {
  if (precision_bits < 128)
    throw Error(Errc::BadInput, "precision_bits must be >= 128, got " + std::to_string(precision_bits));
  const long floor_bits = precision_bits / 2;
  if (effective_ortho_bits() > floor_bits || effective_eig_bits() > floor_bits)
    throw Error(Errc::BadInput, "tolerances must be >= 2^-" + std::to_string(floor_bits));
  if (quad_degree < 0) throw Error(Errc::BadInput, "quad_degree must be nonnegative");
}

}  // namespace num
}  // namespace exz
