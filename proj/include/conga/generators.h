#ifndef CONGA_GENERATORS_H_
#define CONGA_GENERATORS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "conga/graph.h"

namespace conga {

struct GenOptions {
  uint64_t seed = 1;
  int max_cap = 1;          // capacities drawn uniformly from [1, max_cap]
  double bridge_cap = 1.0;  // two-cliques only
  int extra_edges = -1;     // gnm only; -1 means n
};

// Families: gnm, grid, two-cliques, path, star, power-law. Throws InputError
// for an unknown family or n < 1.
Graph generate(const std::string& family, int n, const GenOptions& options = {});
const std::vector<std::string>& generator_families();

}  // namespace conga

#endif  // CONGA_GENERATORS_H_
