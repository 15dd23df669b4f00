#include "ipad/synthetic.hpp"

#include "ipad/prox.hpp"
#include "ipad/rng.hpp"

#include <vector>

namespace ipad {

Matrix random_unit_dictionary(long n, long m, std::uint64_t seed) {
  Rng rng(seed);
  Matrix d(n, m);
  for (long j = 0; j < m; ++j) {
    for (long i = 0; i < n; ++i) d(i, j) = rng.next_normal();
  }
  return project_unit_columns(d);
}

SyntheticInstance gen_synthetic(const SyntheticSpec& spec) {
  if (spec.n < 1 || spec.m < 1 || spec.p < 1) {
    throw config_error("synthetic dims must be positive");
  }
  if (spec.k < 0 || spec.k > spec.m) {
    throw config_error("sparsity k must lie in [0, m]");
  }
  if (spec.noise_sigma < 0.0) {
    throw config_error("noise sigma must be nonnegative");
  }

  Rng rng(spec.seed);

  Matrix d_true(spec.n, spec.m);
  for (long j = 0; j < spec.m; ++j) {
    for (long i = 0; i < spec.n; ++i) d_true(i, j) = rng.next_normal();
  }
  d_true = project_unit_columns(d_true);

  // exactly k standard-normal nonzeros per row, positions drawn without
  // replacement by partial Fisher-Yates
  Matrix w_true = Matrix::Zero(spec.p, spec.m);
  std::vector<long> slots(static_cast<std::size_t>(spec.m));
  for (long row = 0; row < spec.p; ++row) {
    for (long j = 0; j < spec.m; ++j) slots[static_cast<std::size_t>(j)] = j;
    for (long pick = 0; pick < spec.k; ++pick) {
      const long swap_at =
          pick + static_cast<long>(rng.next_below(
                     static_cast<std::uint64_t>(spec.m - pick)));
      std::swap(slots[static_cast<std::size_t>(pick)],
                slots[static_cast<std::size_t>(swap_at)]);
      w_true(row, slots[static_cast<std::size_t>(pick)]) = rng.next_normal();
    }
  }

  Matrix data = d_true * w_true.transpose();
  if (spec.noise_sigma > 0.0) {
    for (long j = 0; j < spec.p; ++j) {
      for (long i = 0; i < spec.n; ++i) {
        data(i, j) += spec.noise_sigma * rng.next_normal();
      }
    }
  }

  SyntheticInstance out;
  out.instance = SdlInstance(std::move(data), spec.m, spec.lambda);
  out.d_true = std::move(d_true);
  out.w_true = std::move(w_true);
  return out;
}

}  // namespace ipad
