#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace hyperlab {

inline constexpr const char* kVerifySchema = "hyperlab/1";

struct SuiteConfig {
  std::uint64_t seed = 7;
  // Overrides the residual tolerance of the identity suites when set.
  std::optional<double> tol;
  int jobs = 1;
};

// Suites run by `all`, in order.
const std::vector<std::string>& default_suites();
// default_suites() plus the ones too slow or too specialized for `all`.
const std::vector<std::string>& known_suites();

// {schema, suite, seed, pass, checks: [{name, pass, ...}]}. Throws
// InvalidArgument for an unknown name.
nlohmann::json run_suite(const std::string& name, const SuiteConfig& config = {});

}  // namespace hyperlab
