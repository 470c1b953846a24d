#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "quadsum/summation.hpp"
#include "quadsum/test_function.hpp"

namespace quadsum {

using json = nlohmann::json;

json to_json(const QuadFamily& fam);
QuadFamily family_from_json(const json& j);

json to_json(const GaussianFunction& g);
GaussianFunction gaussian_from_json(const json& j);

json to_json(const TestFunction& tf);
TestFunction test_function_from_json(const json& j);

json to_json(const SideBreakdown& side);
json to_json(const VerificationReport& rep);
json to_json(const ScalingReport& rep);
json to_json(const CountReport& rep);
json to_json(const ThetaReport& rep);

// CSV with columns term_label, side, real, imag, abs_err_bound.
void write_verification_csv(std::ostream& os, const VerificationReport& rep);
void write_count_csv(std::ostream& os, const CountReport& rep);

}  // namespace quadsum
