#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "fano/certification.hpp"
#include "fano/system_builder.hpp"
#include "fano/tracker.hpp"

namespace fano {

using Json = nlohmann::json;

/// Malformed or inconsistent file contents.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);

// Exact data: Gaussian rationals as "a/b+c/di" strings, polynomials in the
// canonical text form.
Json to_json(const FormSystem& f);
FormSystem form_system_from_json(const Json& j);

Json to_json(const SquareSystem& g, const FanoType& t);
SquareSystem square_system_from_json(const Json& j);

Json to_json(const ExactVector& v);
ExactVector exact_vector_from_json(const Json& j);

// Floating data as hex-float strings: a complex number is [re, im], an
// interval [lo, hi], a complex interval [re_lo, re_hi, im_lo, im_hi].
Json to_json(const FloatPoint& x);
FloatPoint float_point_from_json(const Json& j);

Json to_json(const ComplexBox& b);
ComplexBox box_from_json(const Json& j);

Json to_json(const DoubleZeroCertificate& dz);
DoubleZeroCertificate double_zero_from_json(const Json& j);

/// Solver output: every path with its status plus the clustered solutions.
Json to_json(const SolveReport& rep, std::uint64_t seed);
std::vector<FloatPoint> solutions_from_json(const Json& j);

/// Self-contained certificate: the instance F, the optional double point,
/// the boxes and the verdict flags.
Json certificate_json(const FormSystem& f, const FiberResult& res);

}  // namespace fano
