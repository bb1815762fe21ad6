#include <cmath>
#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "exz/cli/cli.hpp"

namespace exz::cli {

namespace {

using nlohmann::json;

template <class T>
void take(const json& j, const char* key, T& dst) {
  if (!j.contains(key)) return;
  try {
    dst = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(Errc::BadInput, std::string("config field '") + key + "': " + e.what());
  }
}

// Closest p/q with q <= 2^24 (continued fractions), so that printed weights like 1/3 come back exact.
Mass to_mass(double x) {
  if (!(x >= 0) || !std::isfinite(x)) throw Error(Errc::BadInput, "weights must be finite and nonnegative");
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    const double a = std::floor(r);
    if (a > 1e15) break;
    const auto ai = static_cast<std::int64_t>(a);
    const std::int64_t p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > (std::int64_t{1} << 24)) break;
    p0 = p1, q0 = q1, p1 = p2, q1 = q2;
    if (std::abs(static_cast<double>(p1) / static_cast<double>(q1) - x) <= 1e-15 * std::max(1.0, x)) break;
    if (r - a == 0) break;
    r = 1 / (r - a);
  }
  return q1 == 0 ? Mass(0) : Mass(p1, q1);
}

}  // namespace

void RunConfig::validate() const {
  if (precision_bits < 128) throw Error(Errc::BadInput, "precision_bits must be >= 128");
  if (n_max < 1) throw Error(Errc::BadInput, "n_max must be positive");
  for (std::size_t i = 0; i < n_list.size(); ++i)
    if (n_list[i] < 1 || (i > 0 && n_list[i] <= n_list[i - 1]))
      throw Error(Errc::BadInput, "n_list must be positive and increasing");
  if (leja_count < 2) throw Error(Errc::BadInput, "leja_count must be >= 2");
  if (wos_samples == 0 || wos_total == 0) throw Error(Errc::BadInput, "sample counts must be positive");
  if (!(wos_epsilon > 0 && wos_epsilon < 1e-2)) throw Error(Errc::BadInput, "wos_epsilon must lie in (0, 1e-2)");
  if (!(tv > 0) || !(hull_escape >= 0) || !(fit_tol > 0)) throw Error(Errc::BadInput, "thresholds must be positive");
  if (out_dir.empty()) throw Error(Errc::BadInput, "output directory is empty");
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::BadInput, "cannot read config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::BadInput, std::string("malformed config: ") + e.what());
  }
  if (!j.is_object()) throw Error(Errc::BadInput, "config must be a JSON object");
  RunConfig c;
  take(j, "precision_bits", c.precision_bits);
  take(j, "n_max", c.n_max);
  take(j, "n_list", c.n_list);
  take(j, "leja_count", c.leja_count);
  take(j, "leja_mesh", c.leja_mesh);
  take(j, "wos_samples", c.wos_samples);
  take(j, "wos_total", c.wos_total);
  take(j, "seed", c.seed);
  take(j, "wos_epsilon", c.wos_epsilon);
  take(j, "tv", c.tv);
  take(j, "hull_escape", c.hull_escape);
  take(j, "fit_tol", c.fit_tol);
  take(j, "out_dir", c.out_dir);
  take(j, "threads", c.threads);
  return c;
}

void apply_env(RunConfig& cfg) {
  const char* v = std::getenv("EXZ_PRECISION_BITS");
  if (!v || !*v) return;
  char* end = nullptr;
  const long bits = std::strtol(v, &end, 10);
  if (*end != '\0') throw Error(Errc::BadInput, std::string("EXZ_PRECISION_BITS is not an integer: ") + v);
  cfg.precision_bits = bits;
}

int exit_code(Errc code) {
  switch (code) {
    case Errc::BadInput:
    case Errc::SelfIntersecting:
    case Errc::ClockwiseInput:
    case Errc::OverlappingUnionParts:
    case Errc::DegenerateSector:
    case Errc::InvalidShape:
    case Errc::InsufficientSeriesTail:
    case Errc::MeshTooCoarse:
    case Errc::OutsideDomain:
    case Errc::RadiiOutsideDomain:
    case Errc::AtomOutsideDomain:
    case Errc::GeometryUnsupported:
    case Errc::EmptyRestriction:
      return 2;
    default:
      return 1;
  }
}

MeasureCloud read_cloud_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::BadInput, "cannot read " + path);
  MeasureCloud c;
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || (row == 1 && line.rfind("re", 0) == 0)) continue;
    std::stringstream ss(line);
    std::string re, im, w;
    if (!std::getline(ss, re, ',') || !std::getline(ss, im, ',') || !std::getline(ss, w))
      throw Error(Errc::BadInput, path + ":" + std::to_string(row) + ": expected re,im,weight");
    try {
      Mass m;
      if (auto slash = w.find('/'); slash != std::string::npos)
        m = Mass(std::stoll(w.substr(0, slash)), std::stoll(w.substr(slash + 1)));
      else
        m = to_mass(std::stod(w));
      c.add({std::stod(re), std::stod(im)}, m);
    } catch (const std::logic_error&) {
      throw Error(Errc::BadInput, path + ":" + std::to_string(row) + ": bad number");
    }
  }
  if (c.size() == 0) throw Error(Errc::BadInput, path + " holds no atoms");
  return c;
}

}  // namespace exz::cli
