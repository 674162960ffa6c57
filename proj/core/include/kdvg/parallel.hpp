#pragma once
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace kdvg {

// Worker count for the multilinear sums. Results never depend on it.
void set_num_threads(int n);
int num_threads();

// Runs body(i) for i in [0, count) on the worker pool. Each index is handled by
// exactly one worker; no ordering guarantee between indices.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

// Fixed-shape pairwise tree over the input order.
std::complex<double> tree_sum(const std::vector<std::complex<double>>& parts);
long double tree_sum(const std::vector<long double>& parts);

}  // namespace kdvg
