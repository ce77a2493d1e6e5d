#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "depthkit/convergence.hpp"

namespace depthkit::cli {

/// Runs the command line `args` (without the program name). Returns the
/// exit status: 0 success, 1 failed claim or verdict, 2 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Halfspace depth of seeded U([0, 1]) samples of each size against the
/// uniform law, sup-gap over a 0.001 grid on [0, 1]. Samples share the
/// seed, so smaller ones are prefixes of larger ones.
ConvergenceReport empirical_uniform_experiment(const std::vector<std::size_t>& sizes, std::uint64_t seed);

/// `a..b` or a comma-separated list.
std::vector<std::size_t> parse_n_list(const std::string& text);

}  // namespace depthkit::cli
