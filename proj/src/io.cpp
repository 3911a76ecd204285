#include "fano/io.hpp"

#include <fstream>

namespace fano {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string str(const Json& j) {
  if (!j.is_string()) throw FormatError("expected a string, got " + j.dump());
  return j.get<std::string>();
}

Json complex_json(std::complex<double> z) { return Json::array({to_hex(z.real()), to_hex(z.imag())}); }

std::complex<double> complex_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw FormatError("expected [re, im], got " + j.dump());
  return {from_hex(str(j[0])), from_hex(str(j[1]))};
}

FanoType type_from(const Json& j) {
  try {
    return FanoType::parse(str(field(j, "type")));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

}  // namespace

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const Json& j) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << j.dump(1) << '\n';
}

Json to_json(const FormSystem& f) {
  Json forms = Json::array();
  for (const auto& p : f.forms()) forms.push_back(p.to_string());
  return {{"type", f.type().to_string()}, {"forms", forms}};
}

FormSystem form_system_from_json(const Json& j) {
  const FanoType t = type_from(j);
  std::vector<SparsePoly> forms;
  for (const auto& p : field(j, "forms")) {
    try {
      forms.push_back(SparsePoly::parse(str(p), static_cast<std::size_t>(t.n() + 1)));
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
  }
  return FormSystem(t, std::move(forms));
}

Json to_json(const SquareSystem& g, const FanoType& t) {
  Json polys = Json::array();
  for (const auto& p : g.polys()) polys.push_back(p.to_string());
  Json j{{"type", t.to_string()}, {"num_vars", g.num_vars()}, {"polys", polys}};
  if (g.provenance()) j["instance"] = to_json(*g.provenance());
  return j;
}

SquareSystem square_system_from_json(const Json& j) {
  const auto nv = field(j, "num_vars").get<std::size_t>();
  std::vector<SparsePoly> polys;
  for (const auto& p : field(j, "polys")) {
    try {
      polys.push_back(SparsePoly::parse(str(p), nv));
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
  }
  if (j.contains("instance")) {
    SquareSystem g = build_square_system(form_system_from_json(j.at("instance")));
    if (g.polys() != polys) throw FormatError("system does not match the instance it was built from");
    return g;
  }
  return SquareSystem(std::move(polys));
}

Json to_json(const ExactVector& v) {
  Json out = Json::array();
  for (const auto& c : v) out.push_back(c.to_string());
  return out;
}

ExactVector exact_vector_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("expected an array of exact numbers");
  ExactVector out;
  for (const auto& c : j) {
    try {
      out.push_back(GaussianRational::parse(str(c)));
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
  }
  return out;
}

Json to_json(const FloatPoint& x) {
  Json out = Json::array();
  for (const auto& z : x) out.push_back(complex_json(z));
  return out;
}

FloatPoint float_point_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("expected an array of complex numbers");
  FloatPoint out;
  for (const auto& z : j) out.push_back(complex_from(z));
  return out;
}

Json to_json(const ComplexBox& b) {
  Json out = Json::array();
  for (const auto& c : b.coords())
    out.push_back({to_hex(c.re.lo), to_hex(c.re.hi), to_hex(c.im.lo), to_hex(c.im.hi)});
  return out;
}

ComplexBox box_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("expected an array of complex intervals");
  std::vector<ComplexInterval> coords;
  for (const auto& c : j) {
    if (!c.is_array() || c.size() != 4) throw FormatError("expected [re_lo, re_hi, im_lo, im_hi]");
    ComplexInterval z;
    z.re.lo = from_hex(str(c[0]));
    z.re.hi = from_hex(str(c[1]));
    z.im.lo = from_hex(str(c[2]));
    z.im.hi = from_hex(str(c[3]));
    if (!(z.re.lo <= z.re.hi) || !(z.im.lo <= z.im.hi)) throw FormatError("inverted interval");
    coords.push_back(z);
  }
  return ComplexBox(std::move(coords));
}

Json to_json(const DoubleZeroCertificate& dz) {
  return {{"point", to_json(dz.point.coords)},
          {"kernel_vector", to_json(dz.kernel_vector.coords)},
          {"zero_value", dz.zero_value},
          {"kernel_dim_one", dz.kernel_dim_one},
          {"hessian_escape", dz.hessian_escape},
          {"valid", dz.valid()}};
}

DoubleZeroCertificate double_zero_from_json(const Json& j) {
  DoubleZeroCertificate dz;
  dz.point.coords = exact_vector_from_json(field(j, "point"));
  dz.kernel_vector.coords = exact_vector_from_json(field(j, "kernel_vector"));
  dz.zero_value = field(j, "zero_value").get<bool>();
  dz.kernel_dim_one = field(j, "kernel_dim_one").get<bool>();
  dz.hessian_escape = field(j, "hessian_escape").get<bool>();
  return dz;
}

Json to_json(const SolveReport& rep, std::uint64_t seed) {
  Json paths = Json::array();
  for (const auto& p : rep.paths)
    paths.push_back({{"start", p.start_index},
                     {"status", to_string(p.status)},
                     {"t", to_hex(p.t_reached)},
                     {"steps", p.steps},
                     {"endpoint", to_json(p.endpoint)}});
  Json sols = Json::array();
  for (const auto& x : rep.solutions) sols.push_back(to_json(x));
  return {{"seed", seed},
          {"gamma", complex_json(rep.gamma)},
          {"diverged", rep.diverged},
          {"failed", rep.failed},
          {"truncated", rep.truncated},
          {"paths", paths},
          {"solutions", sols}};
}

std::vector<FloatPoint> solutions_from_json(const Json& j) {
  std::vector<FloatPoint> out;
  for (const auto& x : field(j, "solutions")) out.push_back(float_point_from_json(x));
  return out;
}

Json certificate_json(const FormSystem& f, const FiberResult& res) {
  const CertifiedFiber& fib = res.fiber;
  Json boxes = Json::array();
  for (const auto& b : fib.boxes) boxes.push_back({{"center", to_json(b.center)}, {"box", to_json(b.box)}});
  return {{"kind", "certificate"},
          {"instance", to_json(f)},
          {"double_point", fib.double_point ? to_json(*fib.double_point) : Json(nullptr)},
          {"expected_degree", fib.expected_degree.get_str()},
          {"failed_candidates", fib.failed},
          {"status", to_string(res.status)},
          {"detail", res.detail},
          {"box_count", fib.boxes.size()},
          {"boxes", boxes}};
}

}  // namespace fano
